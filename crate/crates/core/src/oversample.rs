//! Minority oversamplers: random duplication, global pair interpolation,
//! Gaussian fit, SMOTE and simplicial SMOTE.
//!
//! Every graph-based sampler follows the same pipeline: minority kNN graph,
//! maximal simplices of its clique complex (p-skeleton), simplex selection,
//! then a Dirichlet draw of barycentric coordinates on the chosen simplex.
//! Each synthetic point `i` draws from its own random stream (the ChaCha
//! stream id is `i`), so sequential and parallel generation agree bit for bit.

use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector};
use ndarray::{Array2, Axis};
use rand::distr::weighted::WeightedIndex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::complex::{p_skeleton_capped, Simplex, SimplexDim, DEFAULT_SUBDIVISION_CAP};
use crate::dataset::{Class, Dataset};
use crate::error::{Error, Result};
use crate::geometry::{barycentric_to_point, sample_dirichlet};
use crate::neighborhood::{knn_graph_with, Symmetrize};
use crate::par;

/// Oversampling method selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Random,
    Global,
    Gaussian,
    Smote,
    Simplicial,
    Borderline,
    SimplicialBorderline,
    SafeLevel,
    SimplicialSafeLevel,
    Adasyn,
    SimplicialAdasyn,
}

impl Method {
    pub const ALL: [Method; 11] = [
        Method::Random,
        Method::Global,
        Method::Gaussian,
        Method::Smote,
        Method::Simplicial,
        Method::Borderline,
        Method::SimplicialBorderline,
        Method::SafeLevel,
        Method::SimplicialSafeLevel,
        Method::Adasyn,
        Method::SimplicialAdasyn,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Random => "random",
            Method::Global => "global",
            Method::Gaussian => "gaussian",
            Method::Smote => "smote",
            Method::Simplicial => "simplicial",
            Method::Borderline => "borderline",
            Method::SimplicialBorderline => "s-borderline",
            Method::SafeLevel => "safelevel",
            Method::SimplicialSafeLevel => "s-safelevel",
            Method::Adasyn => "adasyn",
            Method::SimplicialAdasyn => "s-adasyn",
        }
    }

    /// Whether the method reads the neighborhood size `k`.
    pub fn uses_k(self) -> bool {
        !matches!(self, Method::Random | Method::Global | Method::Gaussian)
    }

    /// Whether the method reads the simplex dimension `p`.
    pub fn uses_p(self) -> bool {
        matches!(
            self,
            Method::Simplicial | Method::SimplicialBorderline | Method::SimplicialSafeLevel | Method::SimplicialAdasyn
        )
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('_', "-");
        Method::ALL.into_iter().find(|m| m.name() == key).ok_or_else(|| {
            let names: Vec<_> = Method::ALL.iter().map(|m| m.name()).collect();
            Error::param(
                "method",
                format!("unknown method {s:?}; expected one of {}", names.join(", ")),
            )
        })
    }
}

/// Dirichlet concentration rule for the safe-level samplers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SafeLevelFormula {
    /// αᵢ = 1 / max(Δ⁺(xᵢ), 1/k)
    #[default]
    Inverse,
    /// αᵢ = 1 + Δ⁺(xᵢ)
    PlusOne,
}

impl FromStr for SafeLevelFormula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "inverse" => Ok(SafeLevelFormula::Inverse),
            "plus-one" | "plus_one" | "plusone" => Ok(SafeLevelFormula::PlusOne),
            other => Err(Error::param(
                "safelevel-formula",
                format!("expected \"inverse\" or \"plus-one\", got {other:?}"),
            )),
        }
    }
}

/// Method plus hyperparameters.
#[derive(Debug, Clone, PartialEq)]
pub struct SamplerConfig {
    pub method: Method,
    pub k: usize,
    pub p: SimplexDim,
    pub seed: u64,
    /// Overrides the balancing count `n⁻ − n⁺`.
    pub target_count: Option<usize>,
    pub safelevel_formula: SafeLevelFormula,
    pub symmetrize: Symmetrize,
    pub subdivision_cap: usize,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        Self {
            method: Method::Simplicial,
            k: 5,
            p: SimplexDim::Maximal,
            seed: 0,
            target_count: None,
            safelevel_formula: SafeLevelFormula::Inverse,
            symmetrize: Symmetrize::Union,
            subdivision_cap: DEFAULT_SUBDIVISION_CAP,
        }
    }
}

impl SamplerConfig {
    pub fn new(method: Method) -> Self {
        Self {
            method,
            ..Self::default()
        }
    }

    pub fn with_k(mut self, k: usize) -> Self {
        self.k = k;
        self
    }

    pub fn with_p(mut self, p: SimplexDim) -> Self {
        self.p = p;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_target(mut self, m: usize) -> Self {
        self.target_count = Some(m);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.method.uses_k() && self.k < 1 {
            return Err(Error::param("k", "must be at least 1"));
        }
        if self.method.uses_p() {
            match self.p {
                SimplexDim::Finite(0) => {
                    return Err(Error::param("p", "must be at least 1 (or \"max\")"));
                }
                SimplexDim::Finite(p) if p > self.k => {
                    return Err(Error::param(
                        "p",
                        format!("p = {p} exceeds k = {}; need 1 <= p <= k", self.k),
                    ));
                }
                _ => {}
            }
        }
        Ok(())
    }

    /// The effective simplex bound: graph variants always sample edges.
    pub(crate) fn effective_p(&self) -> SimplexDim {
        if self.method.uses_p() {
            self.p
        } else {
            SimplexDim::Finite(1)
        }
    }
}

/// Where a synthetic point came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    /// Convex combination of dataset rows.
    Simplex,
    /// Draw from the fitted minority Gaussian.
    Gaussian,
}

/// Per-point record: the simplex (dataset row ids, ascending) and the
/// barycentric weights used. Empty for Gaussian draws.
#[derive(Debug, Clone, PartialEq)]
pub struct Provenance {
    pub source: Source,
    pub vertices: Vec<usize>,
    pub lambda: Vec<f64>,
}

/// Degenerate situations a sampler worked around.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fallback {
    /// Too few minority points for the method; rows were duplicated instead.
    RandomDuplication,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BatchNotes {
    pub method: Method,
    pub k_requested: usize,
    /// Neighborhood size actually used, after clamping to `n⁺ − 1`.
    pub k_used: Option<usize>,
    pub p: SimplexDim,
    pub symmetrize: Symmetrize,
    pub fallback: Option<Fallback>,
}

impl BatchNotes {
    pub fn k_clamped(&self) -> bool {
        self.k_used.is_some_and(|k| k < self.k_requested)
    }
}

/// Synthetic minority points with their provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticBatch {
    pub points: Array2<f64>,
    pub provenance: Vec<Provenance>,
    /// Sampleable simplices (dataset row ids) for the simplex-based samplers.
    pub candidates: Option<Vec<Simplex>>,
    pub notes: BatchNotes,
}

impl SyntheticBatch {
    pub fn len(&self) -> usize {
        self.provenance.len()
    }

    pub fn is_empty(&self) -> bool {
        self.provenance.is_empty()
    }
}

/// Random stream for synthetic point `index` under `seed`.
pub fn point_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

/// How simplices are picked for each synthetic point.
pub(crate) enum Selection {
    Uniform,
    Weighted(WeightedIndex<f64>),
}

/// Dirichlet concentrations per simplex.
pub(crate) enum Concentration {
    Ones,
    PerSimplex(Vec<Vec<f64>>),
}

/// Shared last stage of every simplex-based sampler.
pub(crate) struct SimplexSampler<'a> {
    pub ds: &'a Dataset,
    pub simplices: Vec<Simplex>,
    pub selection: Selection,
    pub concentration: Concentration,
}

impl SimplexSampler<'_> {
    pub fn draw(&self, m: usize, seed: u64) -> Result<(Array2<f64>, Vec<Provenance>)> {
        if m > 0 && self.simplices.is_empty() {
            return Err(Error::Data("no simplices to sample from".into()));
        }
        let ones: Vec<Vec<f64>> = match self.concentration {
            Concentration::Ones => {
                let max_len = self.simplices.iter().map(Simplex::len).max().unwrap_or(0);
                (0..=max_len).map(|l| vec![1.0; l]).collect()
            }
            Concentration::PerSimplex(_) => Vec::new(),
        };
        let results = par::map_range(m, |i| -> Result<(Vec<f64>, Provenance)> {
            let mut rng = point_rng(seed, i);
            let which = match &self.selection {
                Selection::Uniform => rng.random_range(0..self.simplices.len()),
                Selection::Weighted(w) => w.sample(&mut rng),
            };
            let simplex = &self.simplices[which];
            let alpha = match &self.concentration {
                Concentration::Ones => &ones[simplex.len()],
                Concentration::PerSimplex(a) => &a[which],
            };
            let lambda = sample_dirichlet(alpha, &mut rng)?.into_vec();
            let verts = self.ds.features().select(Axis(0), simplex.vertices());
            let point = barycentric_to_point(&lambda, verts.view())?;
            Ok((
                point.to_vec(),
                Provenance {
                    source: Source::Simplex,
                    vertices: simplex.vertices().to_vec(),
                    lambda,
                },
            ))
        });
        assemble(self.ds.dim(), results)
    }
}

fn assemble(d: usize, results: Vec<Result<(Vec<f64>, Provenance)>>) -> Result<(Array2<f64>, Vec<Provenance>)> {
    let mut flat = Vec::with_capacity(results.len() * d);
    let mut prov = Vec::with_capacity(results.len());
    for r in results {
        let (point, p) = r?;
        flat.extend(point);
        prov.push(p);
    }
    let points = Array2::from_shape_vec((prov.len(), d), flat).map_err(|e| Error::Data(e.to_string()))?;
    Ok((points, prov))
}

pub(crate) fn resolve_target(ds: &Dataset, cfg: &SamplerConfig) -> Result<usize> {
    match cfg.target_count {
        Some(m) => {
            if ds.n_minority() == 0 {
                return Err(Error::Data("dataset has no minority points".into()));
            }
            Ok(m)
        }
        None => ds.balancing_count(),
    }
}

/// Runs the sampler selected by `cfg.method`, producing `cfg.target_count`
/// points or `n⁻ − n⁺` by default.
pub fn oversample(ds: &Dataset, cfg: &SamplerConfig) -> Result<SyntheticBatch> {
    cfg.validate()?;
    let m = resolve_target(ds, cfg)?;
    let seed = cfg.seed;
    match cfg.method {
        Method::Random => oversample_random(ds, m, seed),
        Method::Global => oversample_global(ds, m, seed),
        Method::Gaussian => oversample_gaussian(ds, m, seed),
        Method::Smote | Method::Simplicial => oversample_simplicial_with(ds, cfg, m),
        Method::Borderline | Method::SimplicialBorderline => crate::variants::oversample_borderline_with(ds, cfg, m),
        Method::SafeLevel | Method::SimplicialSafeLevel => crate::variants::oversample_safelevel_with(ds, cfg, m),
        Method::Adasyn | Method::SimplicialAdasyn => crate::variants::oversample_adasyn_with(ds, cfg, m),
    }
}

/// Dataset with the batch appended as minority rows.
pub fn apply_batch(ds: &Dataset, batch: &SyntheticBatch) -> Result<Dataset> {
    ds.with_appended(batch.points.view(), Class::Minority)
}

fn notes(method: Method, k: usize, k_used: Option<usize>, p: SimplexDim, fallback: Option<Fallback>) -> BatchNotes {
    BatchNotes {
        method,
        k_requested: k,
        k_used,
        p,
        symmetrize: Symmetrize::Union,
        fallback,
    }
}

fn require_minority(ds: &Dataset) -> Result<Vec<usize>> {
    let minority = ds.minority_indices();
    if minority.is_empty() {
        return Err(Error::Data("dataset has no minority points".into()));
    }
    Ok(minority)
}

/// `m` uniform draws, with replacement, of minority rows.
pub fn oversample_random(ds: &Dataset, m: usize, seed: u64) -> Result<SyntheticBatch> {
    let mut batch = random_duplicates(ds, m, seed)?;
    batch.notes.method = Method::Random;
    batch.notes.fallback = None;
    Ok(batch)
}

fn random_duplicates(ds: &Dataset, m: usize, seed: u64) -> Result<SyntheticBatch> {
    let minority = require_minority(ds)?;
    let results = par::map_range(m, |i| {
        let mut rng = point_rng(seed, i);
        let row = minority[rng.random_range(0..minority.len())];
        Ok((
            ds.row(row).to_vec(),
            Provenance {
                source: Source::Simplex,
                vertices: vec![row],
                lambda: vec![1.0],
            },
        ))
    });
    let (points, provenance) = assemble(ds.dim(), results)?;
    Ok(SyntheticBatch {
        points,
        provenance,
        candidates: Some(minority.iter().map(|&v| Simplex::from_sorted(vec![v])).collect()),
        notes: notes(
            Method::Random,
            0,
            None,
            SimplexDim::Finite(0),
            Some(Fallback::RandomDuplication),
        ),
    })
}

/// Fallback used by samplers that need at least two minority points.
pub(crate) fn fallback_duplicates(ds: &Dataset, cfg: &SamplerConfig, m: usize) -> Result<SyntheticBatch> {
    log::warn!(
        "{}: only {} minority point(s); falling back to random duplication",
        cfg.method,
        ds.n_minority()
    );
    let mut batch = random_duplicates(ds, m, cfg.seed)?;
    batch.notes.method = cfg.method;
    batch.notes.k_requested = cfg.k;
    batch.notes.p = cfg.effective_p();
    batch.notes.symmetrize = cfg.symmetrize;
    Ok(batch)
}

/// Convex combinations of uniformly drawn distinct minority pairs.
pub fn oversample_global(ds: &Dataset, m: usize, seed: u64) -> Result<SyntheticBatch> {
    let minority = require_minority(ds)?;
    if minority.len() < 2 {
        let cfg = SamplerConfig::new(Method::Global).with_seed(seed);
        return fallback_duplicates(ds, &cfg, m);
    }
    let n = minority.len();
    let results = par::map_range(m, |i| {
        let mut rng = point_rng(seed, i);
        let a = rng.random_range(0..n);
        let mut b = rng.random_range(0..n - 1);
        if b >= a {
            b += 1;
        }
        let (u, v) = (minority[a.min(b)], minority[a.max(b)]);
        let lambda = sample_dirichlet(&[1.0, 1.0], &mut rng)?.into_vec();
        let verts = ds.features().select(Axis(0), &[u, v]);
        let point = barycentric_to_point(&lambda, verts.view())?;
        Ok((
            point.to_vec(),
            Provenance {
                source: Source::Simplex,
                vertices: vec![u, v],
                lambda,
            },
        ))
    });
    let (points, provenance) = assemble(ds.dim(), results)?;
    Ok(SyntheticBatch {
        points,
        provenance,
        candidates: None,
        notes: notes(Method::Global, 0, None, SimplexDim::Finite(1), None),
    })
}

/// Mean and (population) covariance of the minority rows.
pub fn fit_minority_gaussian(ds: &Dataset) -> Result<(DVector<f64>, DMatrix<f64>)> {
    let minority = require_minority(ds)?;
    let d = ds.dim();
    let n = minority.len() as f64;
    let mut mean = DVector::<f64>::zeros(d);
    for &i in &minority {
        for (j, v) in ds.row(i).iter().enumerate() {
            mean[j] += v;
        }
    }
    mean /= n;
    let mut cov = DMatrix::<f64>::zeros(d, d);
    for &i in &minority {
        let centered = DVector::from_iterator(d, ds.row(i).iter().copied()) - &mean;
        cov += &centered * centered.transpose();
    }
    cov /= n;
    Ok((mean, cov))
}

/// Draws from a Gaussian fitted to the minority class.
///
/// The covariance diagonal is ridged by `1e-6·trace/d + 1e-12` before the
/// Cholesky factorization, so singular fits never fail.
pub fn oversample_gaussian(ds: &Dataset, m: usize, seed: u64) -> Result<SyntheticBatch> {
    let (mean, mut cov) = fit_minority_gaussian(ds)?;
    let d = ds.dim();
    let ridge = 1e-6 * cov.trace() / d as f64 + 1e-12;
    for j in 0..d {
        cov[(j, j)] += ridge;
    }
    let chol = cov
        .clone()
        .cholesky()
        .ok_or_else(|| Error::Data("minority covariance is not positive definite after ridging".into()))?;
    let lower = chol.l();
    let results = par::map_range(m, |i| {
        let mut rng = point_rng(seed, i);
        let z = DVector::<f64>::from_iterator(d, (0..d).map(|_| StandardNormal.sample(&mut rng)));
        let x = &mean + &lower * z;
        Ok((
            x.iter().copied().collect(),
            Provenance {
                source: Source::Gaussian,
                vertices: Vec::new(),
                lambda: Vec::new(),
            },
        ))
    });
    let (points, provenance) = assemble(d, results)?;
    Ok(SyntheticBatch {
        points,
        provenance,
        candidates: None,
        notes: notes(Method::Gaussian, 0, None, SimplexDim::Finite(0), None),
    })
}

/// SMOTE as uniform sampling from the edges of the minority kNN graph.
pub fn oversample_smote(ds: &Dataset, k: usize, m: usize, seed: u64) -> Result<SyntheticBatch> {
    let cfg = SamplerConfig::new(Method::Smote).with_k(k).with_seed(seed);
    oversample_simplicial_with(ds, &cfg, m)
}

/// Uniform sampling from the maximal simplices of the p-skeleton of the
/// minority kNN clique complex.
pub fn oversample_simplicial(ds: &Dataset, k: usize, p: SimplexDim, m: usize, seed: u64) -> Result<SyntheticBatch> {
    let cfg = SamplerConfig::new(Method::Simplicial)
        .with_k(k)
        .with_p(p)
        .with_seed(seed);
    oversample_simplicial_with(ds, &cfg, m)
}

/// Minority complex of a configuration: the clamped k and the maximal
/// simplices in dataset row ids.
pub(crate) struct MinorityComplex {
    pub k_used: usize,
    pub simplices: Vec<Simplex>,
}

/// Builds the minority kNN graph (k clamped to `n⁺ − 1`) and returns it in
/// minority-local ids.
pub(crate) fn minority_graph(
    ds: &Dataset,
    cfg: &SamplerConfig,
) -> Result<(Vec<usize>, usize, crate::neighborhood::NeighborhoodGraph)> {
    let minority = require_minority(ds)?;
    let k_used = cfg.k.min(minority.len() - 1);
    if k_used < cfg.k {
        log::debug!("{}: clamping k from {} to {}", cfg.method, cfg.k, k_used);
    }
    let points = ds.points(&minority)?;
    let graph = knn_graph_with(&points, k_used, cfg.symmetrize)?;
    Ok((minority, k_used, graph))
}

pub(crate) fn to_global(simplex: &Simplex, ids: &[usize]) -> Simplex {
    // ids ascending, so the mapped list stays ascending
    Simplex::from_sorted(simplex.vertices().iter().map(|&v| ids[v]).collect())
}

pub(crate) fn minority_complex(ds: &Dataset, cfg: &SamplerConfig) -> Result<MinorityComplex> {
    let (minority, k_used, graph) = minority_graph(ds, cfg)?;
    let skeleton = p_skeleton_capped(&graph, cfg.effective_p(), cfg.subdivision_cap)?;
    let simplices = skeleton.simplices().iter().map(|s| to_global(s, &minority)).collect();
    Ok(MinorityComplex { k_used, simplices })
}

pub(crate) fn batch_notes(cfg: &SamplerConfig, k_used: usize) -> BatchNotes {
    BatchNotes {
        method: cfg.method,
        k_requested: cfg.k,
        k_used: Some(k_used),
        p: cfg.effective_p(),
        symmetrize: cfg.symmetrize,
        fallback: None,
    }
}

pub(crate) fn oversample_simplicial_with(ds: &Dataset, cfg: &SamplerConfig, m: usize) -> Result<SyntheticBatch> {
    cfg.validate()?;
    if ds.n_minority() < 2 {
        return fallback_duplicates(ds, cfg, m);
    }
    let complex = minority_complex(ds, cfg)?;
    let sampler = SimplexSampler {
        ds,
        simplices: complex.simplices,
        selection: Selection::Uniform,
        concentration: Concentration::Ones,
    };
    let (points, provenance) = sampler.draw(m, cfg.seed)?;
    Ok(SyntheticBatch {
        points,
        provenance,
        candidates: Some(sampler.simplices),
        notes: batch_notes(cfg, complex.k_used),
    })
}
