//! Cut norm, cut metric, block refinement and the permutation bound on the
//! cut distance.

use serde::Serialize;

use super::{StepDigraphon, StepKernel, MEASURE_TOLERANCE};
use crate::combinatorics::for_each_permutation;
use crate::error::{Error, Result};
use crate::matrix::Matrix;

pub const CUT_NORM_MAX_BLOCKS: usize = 24;
pub const CUT_DISTANCE_MAX_BLOCKS: usize = 9;
pub const REFINEMENT_MAX_BLOCKS: usize = 10_000;

/// Breakpoints closer than this are treated as one.
const BREAKPOINT_TOLERANCE: f64 = 1e-11;

/// Cut norm together with one optimal pair of block sets.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CutNorm {
    pub value: f64,
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

/// `max_{S,T} |Σ_{i∈S, j∈T} m_i m_j v_ij|`, exact.
///
/// For fixed `S` the optimal `T` collects the columns whose partial sums
/// share one sign, so only the `2^k` row sets are enumerated (in Gray-code
/// order). Among optimal row sets the one with the smallest bitmask wins.
pub fn cut_norm(v: &StepKernel) -> Result<CutNorm> {
    let k = v.k();
    if k > CUT_NORM_MAX_BLOCKS {
        return Err(Error::Budget(format!(
            "cut norm enumeration over {k} blocks (limit {CUT_NORM_MAX_BLOCKS})"
        )));
    }
    let m = v.measures();
    let r = Matrix::from_fn(k, k, |i, j| m[i] * m[j] * v.value(i, j));

    let mut col = vec![0.0; k];
    let mut best = (0.0f64, 0u32);
    let mut gray = 0u32;
    for step in 1u32..(1u32 << k) {
        let bit = step.trailing_zeros() as usize;
        gray ^= 1 << bit;
        let sign = if gray & (1 << bit) != 0 { 1.0 } else { -1.0 };
        for (c, x) in col.iter_mut().zip(r.row(bit)) {
            *c += sign * x;
        }
        let (pos, neg) = col.iter().fold(
            (0.0, 0.0),
            |(p, n), &c| {
                if c > 0.0 {
                    (p + c, n)
                } else {
                    (p, n - c)
                }
            },
        );
        let value = pos.max(neg);
        if value > best.0 || (value == best.0 && value > 0.0 && gray < best.1) {
            best = (value, gray);
        }
    }

    let rows: Vec<usize> = (0..k).filter(|i| best.1 & (1 << i) != 0).collect();
    let exact: Vec<f64> = (0..k)
        .map(|j| rows.iter().map(|&i| r[(i, j)]).sum())
        .collect();
    let pos: f64 = exact.iter().filter(|&&c| c > 0.0).sum();
    let neg: f64 = -exact.iter().filter(|&&c| c < 0.0).sum::<f64>();
    let cols: Vec<usize> = if pos >= neg {
        (0..k).filter(|&j| exact[j] > 0.0).collect()
    } else {
        (0..k).filter(|&j| exact[j] < 0.0).collect()
    };
    if cols.is_empty() {
        return Ok(CutNorm {
            value: 0.0,
            rows: Vec::new(),
            cols: Vec::new(),
        });
    }
    Ok(CutNorm {
        value: pos.max(neg),
        rows,
        cols,
    })
}

fn require_same_structure(a: &StepKernel, b: &StepKernel) -> Result<()> {
    if !a.same_structure(b) {
        return Err(Error::Structure(format!(
            "{} blocks {:?} vs {} blocks {:?}; refine first",
            a.k(),
            a.measures(),
            b.k(),
            b.measures()
        )));
    }
    Ok(())
}

/// `||A - B||_cut` on a shared block structure.
pub fn cut_metric(a: &StepKernel, b: &StepKernel) -> Result<f64> {
    require_same_structure(a, b)?;
    Ok(cut_norm(&a.difference(b))?.value)
}

/// Both kernels re-expressed on the common refinement of their block
/// partitions of `[0,1]`.
pub fn common_refinement(a: &StepKernel, b: &StepKernel) -> Result<(StepKernel, StepKernel)> {
    if a.same_structure(b) {
        return Ok((a.clone(), b.clone()));
    }
    let cumulative = |m: &[f64]| -> Vec<f64> {
        m.iter()
            .scan(0.0, |acc, x| {
                *acc += x;
                Some(*acc)
            })
            .collect()
    };
    let (ca, cb) = (cumulative(a.measures()), cumulative(b.measures()));
    let (mut i, mut j) = (0, 0);
    let mut prev = 0.0;
    let mut pieces: Vec<(usize, usize, f64)> = Vec::new();
    while i < ca.len() && j < cb.len() {
        let (ea, eb) = (ca[i], cb[j]);
        let end = if (ea - eb).abs() <= BREAKPOINT_TOLERANCE {
            pieces.push((i, j, ea - prev));
            i += 1;
            j += 1;
            ea
        } else if ea < eb {
            pieces.push((i, j, ea - prev));
            i += 1;
            ea
        } else {
            pieces.push((i, j, eb - prev));
            j += 1;
            eb
        };
        prev = end;
        if pieces.len() > REFINEMENT_MAX_BLOCKS {
            return Err(Error::Budget(format!(
                "common refinement exceeds {REFINEMENT_MAX_BLOCKS} blocks"
            )));
        }
    }
    if i != ca.len() || j != cb.len() {
        return Err(Error::Structure(
            "block partitions do not end together".into(),
        ));
    }
    let measures: Vec<f64> = pieces.iter().map(|p| p.2).collect();
    let n = pieces.len();
    let lift = |w: &StepKernel, pick: fn(&(usize, usize, f64)) -> usize| {
        let values = Matrix::from_fn(n, n, |p, q| w.value(pick(&pieces[p]), pick(&pieces[q])));
        StepKernel::from_matrix(values, measures.clone(), w.bound())
    };
    Ok((lift(a, |p| p.0)?, lift(b, |p| p.1)?))
}

/// Upper bound on the cut distance from block permutations.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CutDistanceBound {
    pub value: f64,
    /// `W2` is compared as `W2(perm[i], perm[j])` against `W1(i, j)`.
    pub permutation: Vec<usize>,
}

/// `min_π ||W1 - W2^π||_cut` over block permutations of the common
/// refinement. This bounds the cut distance from above; it is not claimed
/// to equal it.
pub fn cut_distance_perm(w1: &StepDigraphon, w2: &StepDigraphon) -> Result<CutDistanceBound> {
    let (a, b) = common_refinement(w1, w2)?;
    let k = a.k();
    let equal = 1.0 / k as f64;
    if a.measures()
        .iter()
        .any(|m| (m - equal).abs() > MEASURE_TOLERANCE * k as f64)
    {
        return Err(Error::UnsupportedStructure(format!(
            "refinement has {k} blocks of unequal measure"
        )));
    }
    if k > CUT_DISTANCE_MAX_BLOCKS {
        return Err(Error::Budget(format!(
            "{k}! permutations (limit {CUT_DISTANCE_MAX_BLOCKS} blocks)"
        )));
    }
    let mut best: Option<CutDistanceBound> = None;
    let mut failure = None;
    for_each_permutation(k, |perm| {
        if failure.is_some() {
            return;
        }
        let mut permuted = b.permuted(perm);
        permuted.measures = a.measures().to_vec();
        match cut_norm(&a.difference(&permuted)) {
            Ok(c) if best.as_ref().is_none_or(|x| c.value < x.value) => {
                best = Some(CutDistanceBound {
                    value: c.value,
                    permutation: perm.to_vec(),
                });
            }
            Ok(_) => {}
            Err(e) => failure = Some(e),
        }
    });
    match failure {
        Some(e) => Err(e),
        None => Ok(best.expect("at least one permutation")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn uniform(v: Vec<Vec<f64>>) -> StepKernel {
        StepKernel::uniform(v).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(
            cut_norm(&uniform(vec![vec![0.0; 3]; 3])).unwrap().value,
            0.0
        );
        assert_eq!(
            cut_norm(&StepKernel::constant(-0.7).unwrap())
                .unwrap()
                .value,
            0.7
        );
        let c = cut_norm(&uniform(vec![vec![1.0, -1.0], vec![-1.0, 1.0]])).unwrap();
        assert!((c.value - 0.25).abs() < 1e-15);
        assert_eq!((c.rows, c.cols), (vec![0], vec![0]));
    }

    #[test]
    fn budget() {
        let big = uniform(vec![vec![0.0; 25]; 25]);
        assert!(matches!(cut_norm(&big), Err(Error::Budget(_))));
    }

    #[test]
    fn metric() {
        let half = StepKernel::constant(0.5).unwrap();
        let zero = StepKernel::constant(0.0).unwrap();
        assert_eq!(cut_metric(&half, &zero).unwrap(), 0.5);
        assert_eq!(cut_metric(&half, &half).unwrap(), 0.0);
        let two = uniform(vec![vec![0.0; 2]; 2]);
        assert!(matches!(cut_metric(&half, &two), Err(Error::Structure(_))));
    }

    #[test]
    fn refinement_of_constants() {
        let one = StepKernel::constant(0.3).unwrap();
        let two = uniform(vec![vec![0.3; 2]; 2]);
        let (a, b) = common_refinement(&one, &two).unwrap();
        assert_eq!(a.k(), 2);
        assert_eq!(a, b);
    }

    #[test]
    fn refinement_overlaps() {
        let a = StepKernel::new(vec![vec![1.0, 2.0], vec![3.0, 4.0]], vec![0.25, 0.75]).unwrap();
        let b = StepKernel::new(vec![vec![5.0, 6.0], vec![7.0, 8.0]], vec![0.5, 0.5]).unwrap();
        let (ra, rb) = common_refinement(&a, &b).unwrap();
        assert_eq!(ra.measures(), &[0.25, 0.25, 0.5]);
        assert_eq!(ra.values().to_rows()[0], vec![1.0, 2.0, 2.0]);
        assert_eq!(rb.values().to_rows()[1], vec![5.0, 5.0, 6.0]);
        for (x, y) in [(0.1, 0.9), (0.3, 0.6), (0.8, 0.2)] {
            assert_eq!(ra.eval(x, y), a.eval(x, y));
            assert_eq!(rb.eval(x, y), b.eval(x, y));
        }
    }

    #[test]
    fn permutation_distance() {
        let w = StepDigraphon::new(uniform(vec![
            vec![0.0, 1.0, 0.2],
            vec![0.0, 0.5, 0.4],
            vec![0.3, 0.1, 0.0],
        ]))
        .unwrap();
        let swapped = StepDigraphon::new(w.permuted(&[2, 0, 1])).unwrap();
        let d = cut_distance_perm(&w, &swapped).unwrap();
        assert!(d.value < 1e-15);
        assert_eq!(cut_distance_perm(&w, &w).unwrap().value, 0.0);

        let uneven = StepDigraphon::new(
            StepKernel::new(vec![vec![0.0, 0.5], vec![0.5, 0.0]], vec![0.3, 0.7]).unwrap(),
        )
        .unwrap();
        assert!(matches!(
            cut_distance_perm(&uneven, &uneven),
            Err(Error::UnsupportedStructure(_))
        ));
    }
}
