//! Projection distances to simplicial models.

use std::io::Write;

use anyhow::Result;
use ndarray::{array, Array2};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use simplicial_oversampling::{distance_to_simplex, mean_model_distance, PointSet, SimplexDim};

const MINORITY_POINTS: usize = 40;
const QUERY_POINTS: usize = 200;
const DIM: usize = 3;

pub fn run<W: Write>(seed: u64, k: usize, out: &mut W) -> Result<()> {
    let origin = array![0.0, 0.0, 0.0];
    let edge = array![[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]];
    let triangle = array![[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
    writeln!(
        out,
        "origin to standard 1-simplex: d1 = {:.4}",
        distance_to_simplex(origin.view(), edge.view())?
    )?;
    writeln!(
        out,
        "origin to standard 2-simplex: d2 = {:.4}",
        distance_to_simplex(origin.view(), triangle.view())?
    )?;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let minority = PointSet::new(Array2::from_shape_fn((MINORITY_POINTS, DIM), |_| {
        rng.random_range(0.0..1.0)
    }))?;
    let queries = PointSet::new(Array2::from_shape_fn((QUERY_POINTS, DIM), |_| {
        rng.random_range(-0.25..1.25)
    }))?;
    writeln!(
        out,
        "\nmean distance of {QUERY_POINTS} query points to a {MINORITY_POINTS}-point model (d={DIM}, k={k}, seed={seed})"
    )?;
    writeln!(out, "{:>4}  {:>8}", "p", "distance")?;
    let dims = (1..=k)
        .map(SimplexDim::Finite)
        .chain(std::iter::once(SimplexDim::Maximal));
    for p in dims {
        let d = mean_model_distance(&queries, &minority, k, p)?;
        writeln!(out, "{:>4}  {:>8.4}", p.to_string(), d)?;
    }
    Ok(())
}
