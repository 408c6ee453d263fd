//! Borderline, safe-level and ADASYN samplers in graph (edge) and simplicial
//! form. All three read the same neighborhood safety: the class mix among each
//! minority point's k nearest neighbors in the full dataset.

use rand::distr::weighted::WeightedIndex;

use crate::complex::{p_skeleton_capped, Simplex};
use crate::dataset::{Class, Dataset};
use crate::error::{Error, Result};
use crate::neighborhood::nearest_to;
use crate::oversample::{
    batch_notes, fallback_duplicates, minority_complex, minority_graph, to_global, Concentration, Method,
    SafeLevelFormula, SamplerConfig, Selection, SimplexSampler, SyntheticBatch,
};
use crate::par;

/// Class counts among one minority point's k nearest neighbors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SafetyEntry {
    /// Dataset row of the minority point.
    pub row: usize,
    pub minority_neighbors: usize,
    pub majority_neighbors: usize,
}

/// Safety of every minority point, computed on the full-dataset kNN relation.
#[derive(Debug, Clone, PartialEq)]
pub struct NeighborhoodSafety {
    k: usize,
    entries: Vec<SafetyEntry>,
}

impl NeighborhoodSafety {
    pub fn k(&self) -> usize {
        self.k
    }

    /// Entries in ascending row order.
    pub fn entries(&self) -> &[SafetyEntry] {
        &self.entries
    }

    pub fn entry(&self, row: usize) -> Option<&SafetyEntry> {
        self.entries
            .binary_search_by_key(&row, |e| e.row)
            .ok()
            .map(|i| &self.entries[i])
    }

    fn expect_entry(&self, row: usize) -> &SafetyEntry {
        self.entry(row)
            .unwrap_or_else(|| panic!("row {row} is not a minority point of this safety table"))
    }

    /// Δ⁺ = k⁺ / k. Panics if `row` is not a minority row.
    pub fn delta_plus(&self, row: usize) -> f64 {
        self.expect_entry(row).minority_neighbors as f64 / self.k as f64
    }

    /// Δ⁻ = k⁻ / k. Panics if `row` is not a minority row.
    pub fn delta_minus(&self, row: usize) -> f64 {
        self.expect_entry(row).majority_neighbors as f64 / self.k as f64
    }

    /// Safe-level ratio Δ⁺(a) / Δ⁺(b). Not used by any sampler; infinite or
    /// NaN when Δ⁺(b) is zero.
    pub fn safe_level_ratio(&self, a: usize, b: usize) -> f64 {
        self.delta_plus(a) / self.delta_plus(b)
    }
}

/// Counts minority and majority points among the `k` nearest neighbors (self
/// excluded) of every minority point.
pub fn compute_safety(ds: &Dataset, k: usize) -> Result<NeighborhoodSafety> {
    let n = ds.len();
    if k < 1 || k >= n {
        return Err(Error::param(
            "k",
            format!("safety needs 1 <= k <= n - 1 = {}, got {k}", n.saturating_sub(1)),
        ));
    }
    let all = ds.all_points()?;
    let minority = ds.minority_indices();
    let entries = par::map_slice(&minority, |&row| {
        let q = ds.row(row).to_vec();
        let neighbors = nearest_to(&all, &q, k, Some(row));
        let minority_neighbors = neighbors.iter().filter(|&&j| ds.labels()[j] == Class::Minority).count();
        SafetyEntry {
            row,
            minority_neighbors,
            majority_neighbors: neighbors.len() - minority_neighbors,
        }
    });
    Ok(NeighborhoodSafety { k, entries })
}

/// Minority rows whose neighborhood is majority dominated (Δ⁺ < 1/2) without
/// being pure noise (Δ⁺ > 0).
pub fn borderline_subset(ds: &Dataset, k: usize) -> Result<Vec<usize>> {
    let safety = compute_safety(ds, k)?;
    Ok(borderline_rows(&safety))
}

fn borderline_rows(safety: &NeighborhoodSafety) -> Vec<usize> {
    safety
        .entries
        .iter()
        .filter(|e| e.minority_neighbors != 0 && 2 * e.minority_neighbors < safety.k)
        .map(|e| e.row)
        .collect()
}

/// Dirichlet concentrations for the vertices of `simplex` (dataset rows).
/// Δ⁺ is clamped to at least 1/k under the inverse rule.
pub fn safelevel_alphas(safety: &NeighborhoodSafety, simplex: &Simplex, formula: SafeLevelFormula) -> Vec<f64> {
    let floor = 1.0 / safety.k as f64;
    simplex
        .vertices()
        .iter()
        .map(|&v| {
            let dp = safety.delta_plus(v);
            match formula {
                SafeLevelFormula::Inverse => 1.0 / dp.max(floor),
                SafeLevelFormula::PlusOne => 1.0 + dp,
            }
        })
        .collect()
}

/// Selection probabilities proportional to the mean Δ⁻ of each simplex's
/// vertices; uniform when every mean is zero.
pub fn adasyn_weights(safety: &NeighborhoodSafety, simplices: &[Simplex]) -> Vec<f64> {
    if simplices.is_empty() {
        return Vec::new();
    }
    let raw: Vec<f64> = simplices
        .iter()
        .map(|s| s.vertices().iter().map(|&v| safety.delta_minus(v)).sum::<f64>() / s.len() as f64)
        .collect();
    let total: f64 = raw.iter().sum();
    if total <= 0.0 {
        return vec![1.0 / simplices.len() as f64; simplices.len()];
    }
    raw.into_iter().map(|w| w / total).collect()
}

fn graph_or_simplicial(method: Method, simplicial: bool) -> Method {
    match (method, simplicial) {
        (Method::Borderline | Method::SimplicialBorderline, false) => Method::Borderline,
        (Method::Borderline | Method::SimplicialBorderline, true) => Method::SimplicialBorderline,
        (Method::SafeLevel | Method::SimplicialSafeLevel, false) => Method::SafeLevel,
        (Method::SafeLevel | Method::SimplicialSafeLevel, true) => Method::SimplicialSafeLevel,
        (Method::Adasyn | Method::SimplicialAdasyn, false) => Method::Adasyn,
        (Method::Adasyn | Method::SimplicialAdasyn, true) => Method::SimplicialAdasyn,
        (other, _) => other,
    }
}

/// Borderline sampler; `simplicial` selects the simplicial form over the
/// edge (p = 1) form. Every other setting comes from `cfg`.
pub fn oversample_borderline(ds: &Dataset, cfg: &SamplerConfig, m: usize, simplicial: bool) -> Result<SyntheticBatch> {
    let mut cfg = cfg.clone();
    cfg.method = graph_or_simplicial(Method::Borderline, simplicial);
    oversample_borderline_with(ds, &cfg, m)
}

pub fn oversample_safelevel(ds: &Dataset, cfg: &SamplerConfig, m: usize, simplicial: bool) -> Result<SyntheticBatch> {
    let mut cfg = cfg.clone();
    cfg.method = graph_or_simplicial(Method::SafeLevel, simplicial);
    oversample_safelevel_with(ds, &cfg, m)
}

pub fn oversample_adasyn(ds: &Dataset, cfg: &SamplerConfig, m: usize, simplicial: bool) -> Result<SyntheticBatch> {
    let mut cfg = cfg.clone();
    cfg.method = graph_or_simplicial(Method::Adasyn, simplicial);
    oversample_adasyn_with(ds, &cfg, m)
}

/// Complex over the borderline points and their minority neighbors, keeping
/// only simplices that touch a borderline point. Returns dataset row ids.
pub fn borderline_simplices(
    ds: &Dataset,
    cfg: &SamplerConfig,
    safety: &NeighborhoodSafety,
) -> Result<(usize, Vec<Simplex>)> {
    let border = borderline_rows(safety);
    if border.is_empty() {
        return Err(Error::EmptyBorderline);
    }
    let (minority, k_used, graph) = minority_graph(ds, cfg)?;
    let local_of = |row: usize| minority.binary_search(&row).expect("borderline rows are minority rows");
    let border_local: Vec<usize> = border.iter().map(|&r| local_of(r)).collect();
    let adj = graph.adjacency();
    let mut keep = vec![false; minority.len()];
    for &b in &border_local {
        keep[b] = true;
        for &w in &adj[b] {
            keep[w] = true;
        }
    }
    let vertices: Vec<usize> = (0..minority.len()).filter(|&v| keep[v]).collect();
    let sub = graph.induced(&vertices);
    let mut skeleton = p_skeleton_capped(&sub, cfg.effective_p(), cfg.subdivision_cap)?;
    let mut is_border = vec![false; vertices.len()];
    for b in border_local {
        is_border[vertices.binary_search(&b).expect("kept")] = true;
    }
    skeleton.retain(|s| s.vertices().iter().any(|&v| is_border[v]));
    let rows: Vec<usize> = vertices.iter().map(|&v| minority[v]).collect();
    Ok((
        k_used,
        skeleton.simplices().iter().map(|s| to_global(s, &rows)).collect(),
    ))
}

pub(crate) fn oversample_borderline_with(ds: &Dataset, cfg: &SamplerConfig, m: usize) -> Result<SyntheticBatch> {
    cfg.validate()?;
    let safety = compute_safety(ds, cfg.k)?;
    let (k_used, simplices) = borderline_simplices(ds, cfg, &safety)?;
    let sampler = SimplexSampler {
        ds,
        simplices,
        selection: Selection::Uniform,
        concentration: Concentration::Ones,
    };
    let (points, provenance) = sampler.draw(m, cfg.seed)?;
    Ok(SyntheticBatch {
        points,
        provenance,
        candidates: Some(sampler.simplices),
        notes: batch_notes(cfg, k_used),
    })
}

pub(crate) fn oversample_safelevel_with(ds: &Dataset, cfg: &SamplerConfig, m: usize) -> Result<SyntheticBatch> {
    cfg.validate()?;
    if ds.n_minority() < 2 {
        return fallback_duplicates(ds, cfg, m);
    }
    let safety = compute_safety(ds, cfg.k)?;
    let complex = minority_complex(ds, cfg)?;
    let alphas = complex
        .simplices
        .iter()
        .map(|s| safelevel_alphas(&safety, s, cfg.safelevel_formula))
        .collect();
    let sampler = SimplexSampler {
        ds,
        simplices: complex.simplices,
        selection: Selection::Uniform,
        concentration: Concentration::PerSimplex(alphas),
    };
    let (points, provenance) = sampler.draw(m, cfg.seed)?;
    Ok(SyntheticBatch {
        points,
        provenance,
        candidates: Some(sampler.simplices),
        notes: batch_notes(cfg, complex.k_used),
    })
}

pub(crate) fn oversample_adasyn_with(ds: &Dataset, cfg: &SamplerConfig, m: usize) -> Result<SyntheticBatch> {
    cfg.validate()?;
    if ds.n_minority() < 2 {
        return fallback_duplicates(ds, cfg, m);
    }
    let safety = compute_safety(ds, cfg.k)?;
    let complex = minority_complex(ds, cfg)?;
    let weights = adasyn_weights(&safety, &complex.simplices);
    let selection = if weights.windows(2).all(|w| w[0] == w[1]) {
        Selection::Uniform
    } else {
        Selection::Weighted(WeightedIndex::new(&weights).map_err(|e| Error::Data(format!("ADASYN weights: {e}")))?)
    };
    let sampler = SimplexSampler {
        ds,
        simplices: complex.simplices,
        selection,
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
