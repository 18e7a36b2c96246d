//! Cut norm, common refinement, cut metric and the permutation upper bound
//! on the cut distance.
//!
//! Run with `cargo run --example cut_norm_and_distance`.

use digraphon::stepkernel::{
    common_refinement, cut_distance_perm, cut_metric, cut_norm, StepDigraphon, StepKernel,
};

fn main() -> digraphon::Result<()> {
    let checker = StepKernel::uniform(vec![vec![1.0, -1.0], vec![-1.0, 1.0]])?;
    let c = cut_norm(&checker)?;
    println!(
        "cut norm of the 2x2 checkerboard: {} (rows {:?}, cols {:?})",
        c.value, c.rows, c.cols
    );

    let a = StepKernel::new(vec![vec![0.1, 0.6], vec![0.3, 0.2]], vec![0.25, 0.75])?;
    let b = StepKernel::uniform(vec![vec![0.5, 0.0], vec![0.2, 0.4]])?;
    let (ra, rb) = common_refinement(&a, &b)?;
    println!("common refinement measures: {:?}", ra.measures());
    println!(
        "cut norm before/after refining a: {} / {}",
        cut_norm(&a)?.value,
        cut_norm(&ra)?.value
    );
    println!("d_cut(a, b) = {:.6}", cut_metric(&ra, &rb)?);

    let w = StepDigraphon::new(StepKernel::uniform(vec![
        vec![0.0, 0.9, 0.1],
        vec![0.1, 0.2, 0.6],
        vec![0.3, 0.2, 0.4],
    ])?)?;
    let relabelled = StepDigraphon::new(StepKernel::uniform(
        [2, 0, 1]
            .iter()
            .map(|&i| [2, 0, 1].iter().map(|&j| w.value(i, j)).collect())
            .collect(),
    )?)?;
    let d = cut_distance_perm(&w, &relabelled)?;
    println!(
        "d_cut(W, W relabelled) = {:.3}, permutation bound = {:.3} via {:?}",
        cut_metric(&w, &relabelled)?,
        d.value,
        d.permutation
    );
    Ok(())
}
