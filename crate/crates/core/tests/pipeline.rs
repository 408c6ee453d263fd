//! Harness-level behavior: ranks, determinism, leakage, report shape.

mod common;

use common::*;
use ndarray::{array, Axis};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use simplicial_oversampling::eval::*;
use simplicial_oversampling::*;

/// Reference F1 cells for the synthetic benchmark, columns in the order
/// imbalanced, gaussian, random, global, smote, simplicial.
const REFERENCE_F1: [[f64; 6]; 4] = [
    [0.9511, 0.8830, 0.9485, 0.9348, 0.9694, 0.9694],
    [0.5317, 0.6673, 0.7168, 0.6774, 0.7208, 0.6823],
    [0.7129, 0.6750, 0.7089, 0.6542, 0.6937, 0.7269],
    [0.6541, 0.7060, 0.6777, 0.6356, 0.7005, 0.7139],
];

#[test]
fn reference_rank_row_is_reproduced() {
    let mut mean = [0.0; 6];
    for row in REFERENCE_F1 {
        for (m, r) in average_ranks(&row).into_iter().enumerate() {
            mean[m] += r / 4.0;
        }
    }
    assert_eq!(mean, [4.0, 4.5, 3.25, 5.25, 2.375, 1.625]);
}

#[test]
fn rank_methods_matches_average_ranks_on_a_report() {
    let datasets: Vec<(String, Dataset)> = [Shape::Moons, Shape::Circles]
        .iter()
        .map(|&s| (s.name().to_string(), generate_synthetic(&SyntheticSpec::new(s, 4))))
        .collect();
    let methods = [
        EvalMethod::Imbalanced,
        EvalMethod::Oversample(Method::Random),
        EvalMethod::Oversample(Method::Smote),
    ];
    let mut grid = GridConfig::synthetic(4);
    grid.repeats = 1;
    grid.k_grid = vec![3, 5];
    let report = grid_search_eval(&datasets, &methods, &grid).unwrap();
    assert_eq!(report.rows.len(), datasets.len() * methods.len());

    let ranks = rank_methods(&report, Metric::F1).unwrap();
    let mut expected = vec![0.0; methods.len()];
    for (name, _) in &datasets {
        let scores: Vec<f64> = methods
            .iter()
            .map(|&m| report.score(name, m, Metric::F1).unwrap())
            .collect();
        for (e, r) in expected.iter_mut().zip(average_ranks(&scores)) {
            *e += r / datasets.len() as f64;
        }
    }
    for ((m, r), e) in ranks.iter().zip(expected) {
        assert!((r - e).abs() < 1e-12, "{m}");
    }

    // hyperparameter-free methods evaluate a single configuration
    let random = report.cell("moons", EvalMethod::Oversample(Method::Random)).unwrap();
    assert_eq!((random.best_k, random.best_p), (None, None));
    assert!(report
        .cell("moons", EvalMethod::Oversample(Method::Smote))
        .unwrap()
        .best_k
        .is_some());
}

#[test]
fn grid_search_is_deterministic() {
    let datasets = vec![(
        "g_circle".to_string(),
        generate_synthetic(&SyntheticSpec::new(Shape::GaussianInCircle, 2)),
    )];
    let methods = [
        EvalMethod::Oversample(Method::Simplicial),
        EvalMethod::Oversample(Method::SimplicialAdasyn),
    ];
    let mut grid = GridConfig::synthetic(11);
    grid.repeats = 2;
    grid.k_grid = vec![3, 4];
    let a = grid_search_eval(&datasets, &methods, &grid).unwrap();
    let b = grid_search_eval(&datasets, &methods, &grid).unwrap();
    assert_eq!(a, b);
    assert_eq!(report::to_csv(&a).unwrap(), report::to_csv(&b).unwrap());
    assert_eq!(report::to_text(&a).unwrap(), report::to_text(&b).unwrap());
}

#[test]
fn standardization_ignores_test_rows() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let ds = overlapping_dataset(&mut rng, 20, 60, 3);
    let split = &stratified_cv(&ds, 4, 1, 0).unwrap()[0];
    let mut altered = ds.features().to_owned();
    for &i in &split.test {
        altered.row_mut(i).mapv_inplace(|v| v * 1e3 + 17.0);
    }
    let altered = Dataset::new(altered, ds.labels().to_vec()).unwrap();
    let fit = |d: &Dataset| Standardizer::fit(d.subset(&split.train).features());
    assert_eq!(fit(&ds), fit(&altered));

    // the scaler is applied to test rows, never fitted on them
    let scaler = fit(&ds);
    let test = ds.features().select(Axis(0), &split.test);
    let z = scaler.transform(test.view());
    assert_eq!(z.row(0).to_owned(), (&test.row(0) - &scaler.mean) / &scaler.scale);
}

#[test]
fn failing_sampler_is_recorded_not_fatal() {
    // a fully separated minority has no borderline points
    let mut x = Vec::new();
    let mut signs = Vec::new();
    for i in 0..12 {
        x.extend([i as f64 * 0.01, 0.0]);
        signs.push(1);
    }
    for i in 0..36 {
        x.extend([100.0 + i as f64 * 0.01, 0.0]);
        signs.push(-1);
    }
    let ds = Dataset::from_signs(ndarray::Array2::from_shape_vec((48, 2), x).unwrap(), &signs).unwrap();
    let mut grid = GridConfig::synthetic(0);
    grid.repeats = 1;
    grid.k_grid = vec![3];
    let report = grid_search_eval(
        &[("separated".to_string(), ds)],
        &[EvalMethod::Oversample(Method::Borderline)],
        &grid,
    )
    .unwrap();
    let row = &report.rows[0];
    assert_eq!(row.diagnostics.len(), 4);
    assert!(row.f1_mean.is_finite());
}

#[test]
fn safelevel_direction_and_moments() {
    // vertex 0 fully safe, vertex 1 half safe
    let ds = Dataset::from_signs(
        array![
            [0.0, 0.0],
            [1.0, 0.0],
            [-1.0, 0.0],
            [-0.5, 0.5],
            [2.0, 0.0],
            [1.5, 0.5],
            [9.0, 9.0],
            [9.5, 9.0]
        ],
        &[1, 1, 1, 1, -1, -1, -1, -1],
    )
    .unwrap();
    let safety = compute_safety(&ds, 2).unwrap();
    let edge = Simplex::new(vec![0, 1]).unwrap();
    assert_eq!((safety.delta_plus(0), safety.delta_plus(1)), (1.0, 0.5));
    let alpha = safelevel_alphas(&safety, &edge, SafeLevelFormula::Inverse);
    assert_eq!(alpha, vec![1.0, 2.0]);
    assert_eq!(
        safelevel_alphas(&safety, &edge, SafeLevelFormula::PlusOne),
        vec![2.0, 1.5]
    );

    let draws = 10_000;
    let (means, _) = dirichlet_moments(&alpha, draws, &mut ChaCha8Rng::seed_from_u64(1));
    let se = (2.0f64 / 9.0 / 4.0 / draws as f64).sqrt();
    assert!(
        (means[1] - 2.0 / 3.0).abs() < 3.0 * se,
        "mass moves toward the less safe vertex"
    );
}

#[test]
fn adasyn_example_weights() {
    // Δ⁻ means 0.2 and 0.6 normalize to (0.25, 0.75)
    let raw = [0.2, 0.6];
    let total: f64 = raw.iter().sum();
    let expected: Vec<f64> = raw.iter().map(|r| r / total).collect();
    assert!((expected[0] - 0.25).abs() < 1e-12 && (expected[1] - 0.75).abs() < 1e-12);

    // Realize those means with k = 5: vertices with 0, 2, 1 and 5 majority
    // neighbors give edge means (0 + 2)/10 = 0.2 and (1 + 5)/10 = 0.6.
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..200 {
        let ds = overlapping_dataset(&mut rng, 12, 30, 2);
        let safety = compute_safety(&ds, 5).unwrap();
        let by_majority = |n: usize| {
            safety
                .entries()
                .iter()
                .find(|e| e.majority_neighbors == n)
                .map(|e| e.row)
        };
        let (Some(a), Some(b), Some(c), Some(d)) = (by_majority(0), by_majority(2), by_majority(1), by_majority(5))
        else {
            continue;
        };
        let edges = [Simplex::new(vec![a, b]).unwrap(), Simplex::new(vec![c, d]).unwrap()];
        let w = adasyn_weights(&safety, &edges);
        assert!((w[0] - 0.25).abs() < 1e-12 && (w[1] - 0.75).abs() < 1e-12, "{w:?}");
        return;
    }
    panic!("no dataset realized the example");
}

#[test]
fn graph_and_simplicial_variants_share_safety() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let ds = overlapping_dataset(&mut rng, 25, 60, 3);
    for (graph, simplicial) in [
        (Method::Borderline, Method::SimplicialBorderline),
        (Method::SafeLevel, Method::SimplicialSafeLevel),
        (Method::Adasyn, Method::SimplicialAdasyn),
    ] {
        let g = oversample(&ds, &SamplerConfig::new(graph).with_k(5).with_seed(2)).unwrap();
        let s = oversample(
            &ds,
            &SamplerConfig::new(simplicial)
                .with_k(5)
                .with_p(SimplexDim::Finite(1))
                .with_seed(2),
        )
        .unwrap();
        assert_eq!(g.points, s.points, "{graph} with p = 1 equals {simplicial}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn safety_counts_partition_k(seed in any::<u64>(), n_pos in 3usize..30, extra in 1usize..40, k in 1usize..8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ds = overlapping_dataset(&mut rng, n_pos, n_pos + extra, 2);
        let safety = compute_safety(&ds, k).unwrap();
        prop_assert_eq!(safety.entries().len(), n_pos);
        for e in safety.entries() {
            prop_assert_eq!(e.minority_neighbors + e.majority_neighbors, k);
        }
        let border = borderline_subset(&ds, k).unwrap();
        for b in border {
            prop_assert_eq!(ds.labels()[b], Class::Minority);
            prop_assert!(safety.delta_plus(b) > 0.0);
        }
    }

    #[test]
    fn samplers_are_deterministic(seed in any::<u64>(), method_ix in 0usize..11, n_pos in 4usize..25) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ds = overlapping_dataset(&mut rng, n_pos, 2 * n_pos + 3, 3);
        let method = Method::ALL[method_ix];
        let cfg = SamplerConfig::new(method).with_k(4).with_seed(rng.random());
        let a = oversample(&ds, &cfg);
        let b = oversample(&ds, &cfg);
        match (a, b) {
            (Ok(a), Ok(b)) => {
                prop_assert_eq!(a.len(), n_pos + 3);
                prop_assert_eq!(a, b);
            }
            (Err(Error::EmptyBorderline), Err(Error::EmptyBorderline)) => {}
            (a, b) => prop_assert!(false, "{:?} / {:?}", a.err(), b.err()),
        }
    }
}
