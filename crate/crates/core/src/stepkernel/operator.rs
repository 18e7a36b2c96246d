//! Kernels as integral operators on `L^2[0,1]`.
//!
//! On step functions the operator of a step kernel acts as `f ↦ M D f`,
//! with `D = diag(measures)`. Under `u = D^{1/2} f` the `L^2` inner product
//! becomes the standard one, so the operator is unitarily equivalent to
//! `S = D^{1/2} M D^{1/2}` on `R^k` (and vanishes off step functions).

use super::{BidirectedStepPair, StepKernel};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::spectra::eigenvalues;

/// `||T_V||_{2->2}`: the top singular value of `D^{1/2} M D^{1/2}`.
pub fn op_norm_2to2(v: &StepKernel) -> Result<f64> {
    let k = v.k();
    let root: Vec<f64> = v.measures().iter().map(|m| m.sqrt()).collect();
    let s = Matrix::from_fn(k, k, |i, j| root[i] * v.value(i, j) * root[j]);
    let gram = s.transpose().mul(&s);
    // Eigenvalues of the symmetric Gram matrix are real; the sort puts the largest first.
    let top = eigenvalues(&gram)?[0].re;
    Ok(top.max(0.0).sqrt())
}

/// Kernel of the composition `T_V ∘ T_U`: values `M_V D M_U`.
///
/// The bound is `bound(V) * bound(U)`, which dominates every entry because
/// the measures sum to one.
pub fn compose_step(v: &StepKernel, u: &StepKernel) -> Result<StepKernel> {
    if !v.same_structure(u) {
        return Err(Error::Structure(format!(
            "cannot compose kernels on {} and {} blocks with different measures",
            v.k(),
            u.k()
        )));
    }
    let k = v.k();
    let m = v.measures();
    let values = Matrix::from_fn(k, k, |i, j| {
        (0..k).map(|l| v.value(i, l) * m[l] * u.value(l, j)).sum()
    });
    let bound = (v.bound() * u.bound()).max(values.max_abs());
    StepKernel::from_matrix(values, m.to_vec(), bound)
}

/// `(||(Wn - W) W||, ||(Wn - W) Wn||)` in operator norm.
pub fn nu_convergence_gaps(wn: &StepKernel, w: &StepKernel) -> Result<(f64, f64)> {
    if !wn.same_structure(w) {
        return Err(Error::Structure(
            "refine both kernels to a common structure first".into(),
        ));
    }
    let diff = wn.difference(w);
    Ok((
        op_norm_2to2(&compose_step(&diff, w)?)?,
        op_norm_2to2(&compose_step(&diff, wn)?)?,
    ))
}

/// `W1 + W2`, the kernel seen by digraphs without antiparallel pairs. It
/// need not be a digraphon.
pub fn collapse(p: &BidirectedStepPair) -> StepKernel {
    let k = p.k();
    let values = Matrix::from_fn(k, k, |i, j| p.w1(i, j) + p.w2(i, j));
    StepKernel::from_matrix(values, p.measures().to_vec(), 1.0).expect("entries lie in [0,1]")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn norms_of_constants() {
        assert!((op_norm_2to2(&StepKernel::constant(1.0).unwrap()).unwrap() - 1.0).abs() < 1e-15);
        let zero = StepKernel::uniform(vec![vec![0.0; 3]; 3]).unwrap();
        assert_eq!(op_norm_2to2(&zero).unwrap(), 0.0);
    }

    #[test]
    fn norm_of_rank_one() {
        // V(x,y) = a(x) b(y) has norm ||a||_2 ||b||_2.
        let (a, b) = ([1.0, -2.0], [0.5, 3.0]);
        let m = [0.25, 0.75];
        let v = StepKernel::new(
            (0..2)
                .map(|i| (0..2).map(|j| a[i] * b[j]).collect())
                .collect(),
            m.to_vec(),
        )
        .unwrap();
        let na: f64 = (0..2).map(|i| m[i] * a[i] * a[i]).sum::<f64>().sqrt();
        let nb: f64 = (0..2).map(|i| m[i] * b[i] * b[i]).sum::<f64>().sqrt();
        assert!((op_norm_2to2(&v).unwrap() - na * nb).abs() < 1e-12);
    }

    #[test]
    fn composition() {
        let a = StepKernel::constant(0.3).unwrap();
        let b = StepKernel::constant(-0.5).unwrap();
        let c = compose_step(&a, &b).unwrap();
        assert!((c.value(0, 0) + 0.15).abs() < 1e-16);
        let zero = StepKernel::uniform(vec![vec![0.0; 2]; 2]).unwrap();
        let v = StepKernel::uniform(vec![vec![0.1, 0.2], vec![0.3, 0.4]]).unwrap();
        assert_eq!(compose_step(&v, &zero).unwrap().values().max_abs(), 0.0);
        assert!(compose_step(&a, &v).is_err());
    }

    #[test]
    fn gaps() {
        let v = StepKernel::uniform(vec![vec![0.1, 0.2], vec![0.3, 0.4]]).unwrap();
        assert_eq!(nu_convergence_gaps(&v, &v).unwrap(), (0.0, 0.0));
        let zero = StepKernel::uniform(vec![vec![0.0; 2]; 2]).unwrap();
        assert_eq!(nu_convergence_gaps(&v, &zero).unwrap().0, 0.0);
    }

    #[test]
    fn collapsed_pairs_agree() {
        let a = collapse(&BidirectedStepPair::bipartite_bidirected());
        let b = collapse(&BidirectedStepPair::bipartite_oriented());
        assert_eq!(a, b);
        assert_eq!(a.values().to_rows(), vec![vec![0.0, 0.5], vec![0.5, 0.0]]);
    }
}
