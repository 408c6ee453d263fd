//! Grid search over sampler hyperparameters under repeated stratified CV,
//! and mean-rank aggregation across datasets.

use std::fmt;
use std::str::FromStr;

use crate::complex::SimplexDim;
use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::eval::classifier::{knn_classify, Standardizer, DEFAULT_K_CLF};
use crate::eval::cv::{stratified_cv, Split};
use crate::eval::metrics::{f1_score, mcc_score, ConfusionCounts};
use crate::neighborhood::Symmetrize;
use crate::oversample::{apply_batch, oversample, Method, SafeLevelFormula, SamplerConfig};
use crate::par;

/// A column of the evaluation table: no resampling, or one sampler.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EvalMethod {
    Imbalanced,
    Oversample(Method),
}

impl EvalMethod {
    pub fn name(self) -> &'static str {
        match self {
            EvalMethod::Imbalanced => "imbalanced",
            EvalMethod::Oversample(m) => m.name(),
        }
    }

    fn sampler(self) -> Option<Method> {
        match self {
            EvalMethod::Imbalanced => None,
            EvalMethod::Oversample(m) => Some(m),
        }
    }
}

impl fmt::Display for EvalMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EvalMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase();
        if key == "imbalanced" || key == "none" {
            return Ok(EvalMethod::Imbalanced);
        }
        key.parse().map(EvalMethod::Oversample)
    }
}

/// Methods of the synthetic benchmark table.
pub const BASELINE_METHODS: [EvalMethod; 6] = [
    EvalMethod::Imbalanced,
    EvalMethod::Oversample(Method::Gaussian),
    EvalMethod::Oversample(Method::Random),
    EvalMethod::Oversample(Method::Global),
    EvalMethod::Oversample(Method::Smote),
    EvalMethod::Oversample(Method::Simplicial),
];

/// Borderline, safe-level and ADASYN in both forms.
pub const VARIANT_METHODS: [EvalMethod; 6] = [
    EvalMethod::Oversample(Method::Borderline),
    EvalMethod::Oversample(Method::SimplicialBorderline),
    EvalMethod::Oversample(Method::SafeLevel),
    EvalMethod::Oversample(Method::SimplicialSafeLevel),
    EvalMethod::Oversample(Method::Adasyn),
    EvalMethod::Oversample(Method::SimplicialAdasyn),
];

/// Neighborhood sizes 3, 5, … up to ⌈∛n⁺ + ln d⌉ (at least `[3]`).
pub fn default_k_grid(n_minority: usize, dim: usize) -> Vec<usize> {
    let upper = ((n_minority as f64).cbrt() + (dim.max(1) as f64).ln()).ceil() as usize;
    let grid: Vec<usize> = (3..=upper.max(3)).step_by(2).collect();
    grid
}

/// Simplex dimensions 3..=k.
pub fn default_p_grid(k: usize) -> Vec<SimplexDim> {
    (3..=k).map(SimplexDim::Finite).collect()
}

/// One point of the search grid: (k, p), `None` where the method ignores it.
type Config = (Option<usize>, Option<SimplexDim>);

#[derive(Debug, Clone, PartialEq)]
pub struct GridConfig {
    pub k_grid: Vec<usize>,
    /// Candidate simplex dimensions; finite values above k are skipped.
    pub p_grid: Vec<SimplexDim>,
    pub folds: usize,
    pub repeats: usize,
    pub seed: u64,
    pub k_clf: usize,
    pub safelevel_formula: SafeLevelFormula,
    pub symmetrize: Symmetrize,
}

impl GridConfig {
    /// The small-study protocol: 5 repeats of 4-fold CV, k ∈ 3..=8, maximal p.
    pub fn synthetic(seed: u64) -> Self {
        Self {
            k_grid: (3..=8).collect(),
            p_grid: vec![SimplexDim::Maximal],
            folds: 4,
            repeats: 5,
            seed,
            k_clf: DEFAULT_K_CLF,
            safelevel_formula: SafeLevelFormula::Inverse,
            symmetrize: Symmetrize::Union,
        }
    }

    fn configs_for(&self, method: EvalMethod) -> Vec<Config> {
        let Some(m) = method.sampler() else {
            return vec![(None, None)];
        };
        if !m.uses_k() {
            return vec![(None, None)];
        }
        let mut out = Vec::new();
        for &k in &self.k_grid {
            if m.uses_p() {
                for &p in &self.p_grid {
                    if p.finite().is_none_or(|p| p >= 1 && p <= k) {
                        out.push((Some(k), Some(p)));
                    }
                }
            } else {
                out.push((Some(k), None));
            }
        }
        out
    }
}

/// Scores of one train/test split.
#[derive(Debug, Clone, PartialEq)]
pub struct FoldScore {
    pub f1: f64,
    pub mcc: f64,
    /// Set when the sampler failed and the fold was scored without resampling.
    pub diagnostic: Option<String>,
}

/// One (dataset, method) cell of the report.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub dataset: String,
    pub method: EvalMethod,
    pub f1_mean: f64,
    pub f1_std: f64,
    pub mcc_mean: f64,
    pub mcc_std: f64,
    pub best_k: Option<usize>,
    pub best_p: Option<SimplexDim>,
    pub diagnostics: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    F1,
    Mcc,
}

impl Metric {
    pub fn name(self) -> &'static str {
        match self {
            Metric::F1 => "f1",
            Metric::Mcc => "mcc",
        }
    }
}

/// Settings recorded alongside the scores.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportMeta {
    pub classifier: String,
    pub k_clf: usize,
    pub vote_tie: &'static str,
    pub folds: usize,
    pub repeats: usize,
    pub seed: u64,
    pub symmetrize: Symmetrize,
    pub selection: &'static str,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport {
    pub datasets: Vec<String>,
    pub methods: Vec<EvalMethod>,
    pub rows: Vec<ReportRow>,
    pub meta: ReportMeta,
}

impl EvalReport {
    pub fn cell(&self, dataset: &str, method: EvalMethod) -> Option<&ReportRow> {
        self.rows.iter().find(|r| r.dataset == dataset && r.method == method)
    }

    pub fn score(&self, dataset: &str, method: EvalMethod, metric: Metric) -> Option<f64> {
        self.cell(dataset, method).map(|r| match metric {
            Metric::F1 => r.f1_mean,
            Metric::Mcc => r.mcc_mean,
        })
    }
}

fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed for the sampler on one split, shared by every grid configuration.
pub fn fold_seed(master: u64, split: &Split) -> u64 {
    splitmix(splitmix(master) ^ ((split.repeat as u64) << 32 | split.fold as u64))
}

/// Standardize on the train fold, resample it, classify the test fold.
pub fn evaluate_split(
    ds: &Dataset,
    split: &Split,
    method: EvalMethod,
    k: Option<usize>,
    p: Option<SimplexDim>,
    grid: &GridConfig,
) -> FoldScore {
    let train = ds.subset(&split.train);
    let scaler = Standardizer::fit(train.features());
    let train = Dataset::new(scaler.transform(train.features()), train.labels().to_vec())
        .expect("standardized rows stay finite");
    let test_x = scaler.transform(ds.features().select(ndarray::Axis(0), &split.test).view());
    let truth: Vec<_> = split.test.iter().map(|&i| ds.labels()[i]).collect();

    let mut diagnostic = None;
    let fitted = match method.sampler() {
        None => train,
        Some(m) => {
            let cfg = SamplerConfig {
                method: m,
                k: k.unwrap_or(1),
                p: p.unwrap_or(SimplexDim::Maximal),
                seed: fold_seed(grid.seed, split),
                target_count: None,
                safelevel_formula: grid.safelevel_formula,
                symmetrize: grid.symmetrize,
                ..SamplerConfig::default()
            };
            match oversample(&train, &cfg).and_then(|b| apply_batch(&train, &b)) {
                Ok(resampled) => resampled,
                Err(e) => {
                    diagnostic = Some(format!(
                        "repeat {} fold {} ({m}, k={}, p={}): {e}; scored without resampling",
                        split.repeat, split.fold, cfg.k, cfg.p
                    ));
                    train
                }
            }
        }
    };
    let predicted = knn_classify(&fitted, test_x.view(), grid.k_clf);
    let counts = ConfusionCounts::from_predictions(&truth, &predicted);
    FoldScore {
        f1: f1_score(&counts),
        mcc: mcc_score(&counts),
        diagnostic,
    }
}

fn mean_std(xs: impl Iterator<Item = f64> + Clone) -> (f64, f64) {
    let n = xs.clone().count() as f64;
    let mean = xs.clone().sum::<f64>() / n;
    let var = xs.map(|x| (x - mean) * (x - mean)).sum::<f64>() / n;
    (mean, var.sqrt())
}

/// Runs every (dataset, method, configuration, split) evaluation and keeps,
/// per cell, the configuration with the best mean F1 over all splits. Ties go
/// to the earlier configuration in grid order.
pub fn grid_search_eval(
    datasets: &[(String, Dataset)],
    methods: &[EvalMethod],
    grid: &GridConfig,
) -> Result<EvalReport> {
    if grid.k_grid.is_empty() {
        return Err(Error::param("k_grid", "must not be empty"));
    }
    struct Task {
        cell: usize,
        config: usize,
        split: usize,
    }
    let splits: Vec<Vec<Split>> = datasets
        .iter()
        .map(|(_, ds)| stratified_cv(ds, grid.folds, grid.repeats, grid.seed))
        .collect::<Result<_>>()?;
    let cells: Vec<(usize, EvalMethod, Vec<Config>)> = (0..datasets.len())
        .flat_map(|d| methods.iter().map(move |&m| (d, m)))
        .map(|(d, m)| (d, m, grid.configs_for(m)))
        .collect();
    let mut tasks = Vec::new();
    for (c, (d, _, configs)) in cells.iter().enumerate() {
        for config in 0..configs.len() {
            for split in 0..splits[*d].len() {
                tasks.push(Task { cell: c, config, split });
            }
        }
    }
    let scores = par::map_slice(&tasks, |t| {
        let (d, method, configs) = &cells[t.cell];
        let (k, p) = configs[t.config];
        evaluate_split(&datasets[*d].1, &splits[*d][t.split], *method, k, p, grid)
    });

    let mut rows = Vec::with_capacity(cells.len());
    let mut cursor = 0;
    for (d, method, configs) in &cells {
        let n_splits = splits[*d].len();
        let per_config: Vec<&[FoldScore]> = (0..configs.len())
            .map(|i| &scores[cursor + i * n_splits..cursor + (i + 1) * n_splits])
            .collect();
        cursor += configs.len() * n_splits;
        let mut best = 0;
        let mut best_f1 = f64::NEG_INFINITY;
        for (i, fold_scores) in per_config.iter().enumerate() {
            let (f1, _) = mean_std(fold_scores.iter().map(|s| s.f1));
            if f1 > best_f1 {
                best_f1 = f1;
                best = i;
            }
        }
        let chosen = per_config[best];
        let (f1_mean, f1_std) = mean_std(chosen.iter().map(|s| s.f1));
        let (mcc_mean, mcc_std) = mean_std(chosen.iter().map(|s| s.mcc));
        let diagnostics = chosen.iter().filter_map(|s| s.diagnostic.clone()).collect();
        rows.push(ReportRow {
            dataset: datasets[*d].0.clone(),
            method: *method,
            f1_mean,
            f1_std,
            mcc_mean,
            mcc_std,
            best_k: configs[best].0,
            best_p: configs[best].1,
            diagnostics,
        });
    }

    Ok(EvalReport {
        datasets: datasets.iter().map(|(n, _)| n.clone()).collect(),
        methods: methods.to_vec(),
        rows,
        meta: ReportMeta {
            classifier: "knn".into(),
            k_clf: grid.k_clf,
            vote_tie: "minority",
            folds: grid.folds,
            repeats: grid.repeats,
            seed: grid.seed,
            symmetrize: grid.symmetrize,
            selection: "outer-mean-f1",
        },
    })
}

/// Average ranks (1 = best) of `scores`, higher scores ranking first.
pub fn average_ranks(scores: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]));
    let mut ranks = vec![0.0; scores.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && scores[order[j + 1]] == scores[order[i]] {
            j += 1;
        }
        let rank = (i + j) as f64 / 2.0 + 1.0;
        for &o in &order[i..=j] {
            ranks[o] = rank;
        }
        i = j + 1;
    }
    ranks
}

/// Mean rank of every method across the report's datasets.
pub fn rank_methods(report: &EvalReport, metric: Metric) -> Result<Vec<(EvalMethod, f64)>> {
    let mut totals = vec![0.0; report.methods.len()];
    for dataset in &report.datasets {
        let scores = report
            .methods
            .iter()
            .map(|&m| {
                report.score(dataset, m, metric).ok_or_else(|| Error::MissingCell {
                    dataset: dataset.clone(),
                    method: m.name().into(),
                })
            })
            .collect::<Result<Vec<f64>>>()?;
        for (t, r) in totals.iter_mut().zip(average_ranks(&scores)) {
            *t += r;
        }
    }
    let n = report.datasets.len().max(1) as f64;
    Ok(report
        .methods
        .iter()
        .copied()
        .zip(totals.into_iter().map(|t| t / n))
        .collect())
}
