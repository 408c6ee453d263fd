//! Barycentric machinery: Dirichlet draws on the probability simplex, the map
//! from barycentric to Euclidean coordinates, and point-to-simplex distances.

use nalgebra::{DMatrix, DVector};
use ndarray::{Array1, ArrayView1, ArrayView2};
use rand::Rng;
use rand_distr::{Distribution, Gamma, Open01};

use crate::complex::{p_skeleton, SimplexDim};
use crate::error::{Error, Result};
use crate::neighborhood::{knn_graph, squared_distance, NeighborhoodGraph, PointSet};
use crate::par;

/// Barycentric coordinates: nonnegative weights summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct BarycentricSample(Vec<f64>);

impl BarycentricSample {
    /// Validates nonnegativity and unit sum (within 1e-12).
    pub fn new(lambda: Vec<f64>) -> Result<Self> {
        if lambda.is_empty() {
            return Err(Error::param("lambda", "needs at least one coordinate"));
        }
        if lambda.iter().any(|&l| !l.is_finite() || l < 0.0) {
            return Err(Error::param("lambda", "coordinates must be finite and nonnegative"));
        }
        let sum: f64 = lambda.iter().sum();
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::param("lambda", format!("coordinates sum to {sum}, expected 1")));
        }
        Ok(Self(lambda))
    }

    /// The `i`-th unit vector of length `len`.
    pub fn vertex(len: usize, i: usize) -> Self {
        let mut v = vec![0.0; len];
        v[i] = 1.0;
        Self(v)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }
}

/// Draws λ ~ Dir(α) by normalizing independent Gamma(αᵢ, 1) variates.
///
/// Shapes below one use the boost Gamma(αᵢ) = Gamma(αᵢ + 1)·U^{1/αᵢ}, carried
/// out in log space so tiny shapes cannot underflow the whole vector to zero.
pub fn sample_dirichlet<R: Rng + ?Sized>(alpha: &[f64], rng: &mut R) -> Result<BarycentricSample> {
    if alpha.is_empty() {
        return Err(Error::param("alpha", "needs at least one component"));
    }
    if let Some(a) = alpha.iter().find(|&&a| !a.is_finite() || a <= 0.0) {
        return Err(Error::param(
            "alpha",
            format!("components must be positive and finite, got {a}"),
        ));
    }
    if alpha.len() == 1 {
        return Ok(BarycentricSample(vec![1.0]));
    }

    let mut lambda = Vec::with_capacity(alpha.len());
    if alpha.iter().all(|&a| a >= 1.0) {
        for &a in alpha {
            let g = Gamma::new(a, 1.0).expect("validated shape");
            lambda.push(g.sample(rng));
        }
    } else {
        let mut logs = Vec::with_capacity(alpha.len());
        for &a in alpha {
            let log_g = if a >= 1.0 {
                Gamma::new(a, 1.0).expect("validated shape").sample(rng).ln()
            } else {
                let g = Gamma::new(a + 1.0, 1.0).expect("validated shape").sample(rng);
                let u: f64 = Open01.sample(rng);
                g.ln() + u.ln() / a
            };
            logs.push(log_g);
        }
        let max = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        lambda.extend(logs.iter().map(|l| (l - max).exp()));
    }

    let sum: f64 = lambda.iter().sum();
    for l in &mut lambda {
        *l /= sum;
    }
    // Pin the unit sum exactly onto the largest coordinate.
    let (imax, _) = lambda.iter().enumerate().fold(
        (0, f64::NEG_INFINITY),
        |acc, (i, &l)| if l > acc.1 { (i, l) } else { acc },
    );
    let rest: f64 = lambda
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != imax)
        .map(|(_, l)| l)
        .sum();
    lambda[imax] = (1.0 - rest).max(0.0);
    Ok(BarycentricSample(lambda))
}

/// Σ λᵢ·xᵢ over the rows of `vertices`.
pub fn barycentric_to_point(lambda: &[f64], vertices: ArrayView2<'_, f64>) -> Result<Array1<f64>> {
    if lambda.len() != vertices.nrows() {
        return Err(Error::param(
            "lambda",
            format!("{} coordinates for {} vertices", lambda.len(), vertices.nrows()),
        ));
    }
    let mut out = Array1::zeros(vertices.ncols());
    for (l, row) in lambda.iter().zip(vertices.rows()) {
        out.scaled_add(*l, &row);
    }
    Ok(out)
}

const WOLFE_TOL: f64 = 1e-12;

fn residual_sq(lambda: &[f64], vertices: ArrayView2<'_, f64>, q: ArrayView1<'_, f64>) -> f64 {
    let mut r = q.to_owned();
    for (l, row) in lambda.iter().zip(vertices.rows()) {
        r.scaled_add(-*l, &row);
    }
    r.dot(&r)
}

/// Barycentric weights of the point of aff{Pᵢ : i ∈ support} nearest the
/// origin, or `None` when the support is numerically affinely dependent.
fn affine_minimizer(gram: &ndarray::Array2<f64>, support: &[usize]) -> Option<Vec<f64>> {
    let s = support.len();
    let mut kkt = DMatrix::<f64>::zeros(s + 1, s + 1);
    let mut rhs = DVector::<f64>::zeros(s + 1);
    for (a, &i) in support.iter().enumerate() {
        for (c, &j) in support.iter().enumerate() {
            kkt[(a, c)] = gram[[i, j]];
        }
        kkt[(a, s)] = 1.0;
        kkt[(s, a)] = 1.0;
    }
    rhs[s] = 1.0;
    let sol = kkt.lu().solve(&rhs)?;
    let mu: Vec<f64> = sol.iter().take(s).copied().collect();
    mu.iter().all(|v| v.is_finite()).then_some(mu)
}

/// Minimizer over the probability simplex of ‖λᵀX − q‖, i.e. the barycentric
/// coordinates of the point of conv(X) nearest `q`. Uses Wolfe's
/// minimum-norm-point active-set method on the shifted points xᵢ − q, which
/// terminates finitely and copes with affinely dependent vertices.
pub fn project_onto_simplex(q: ArrayView1<'_, f64>, vertices: ArrayView2<'_, f64>) -> Result<Vec<f64>> {
    let m = vertices.nrows();
    if m == 0 {
        return Err(Error::param("vertices", "a simplex needs at least one vertex"));
    }
    if vertices.ncols() != q.len() {
        return Err(Error::param(
            "q",
            format!("point has dimension {}, simplex lives in {}", q.len(), vertices.ncols()),
        ));
    }
    if m == 1 {
        return Ok(vec![1.0]);
    }

    let shifted = &vertices - &q.insert_axis(ndarray::Axis(0));
    let gram = shifted.dot(&shifted.t());
    let scale = (0..m).map(|i| gram[[i, i]]).fold(0.0, f64::max).max(f64::MIN_POSITIVE);

    let first = (0..m)
        .min_by(|&a, &b| gram[[a, a]].total_cmp(&gram[[b, b]]))
        .unwrap_or(0);
    let mut support = vec![first];
    let mut lambda = vec![0.0; m];
    lambda[first] = 1.0;
    // ⟨x, Pⱼ⟩ for the current point x = Σ λᵢ Pᵢ
    let dots = |lambda: &[f64], j: usize| -> f64 { (0..m).map(|i| lambda[i] * gram[[i, j]]).sum() };

    for _ in 0..(50 * m + 50) {
        let xx: f64 = (0..m).map(|j| lambda[j] * dots(&lambda, j)).sum();
        let (j, xp) = (0..m)
            .map(|j| (j, dots(&lambda, j)))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("m >= 2");
        if xx - xp <= WOLFE_TOL * scale || support.contains(&j) {
            break;
        }
        support.push(j);

        loop {
            let Some(mu) = affine_minimizer(&gram, &support) else {
                support.pop();
                return Ok(lambda);
            };
            if mu.iter().all(|&v| v > WOLFE_TOL) {
                lambda.iter_mut().for_each(|l| *l = 0.0);
                for (&i, &v) in support.iter().zip(&mu) {
                    lambda[i] = v;
                }
                break;
            }
            // step from λ toward μ until a coordinate hits zero
            let theta = support
                .iter()
                .zip(&mu)
                .filter(|(_, &v)| v <= WOLFE_TOL)
                .map(|(&i, &v)| lambda[i] / (lambda[i] - v))
                .fold(1.0, f64::min)
                .clamp(0.0, 1.0);
            for (&i, &v) in support.iter().zip(&mu) {
                lambda[i] += theta * (v - lambda[i]);
            }
            support.retain(|&i| lambda[i] > WOLFE_TOL);
            for (i, l) in lambda.iter_mut().enumerate() {
                if !support.contains(&i) {
                    *l = 0.0;
                }
            }
            let total: f64 = lambda.iter().sum();
            lambda.iter_mut().for_each(|l| *l /= total);
            if support.len() <= 1 {
                break;
            }
        }
    }
    Ok(lambda)
}

/// Distance from `q` to the geometric simplex spanned by the rows of
/// `vertices`.
pub fn distance_to_simplex(q: ArrayView1<'_, f64>, vertices: ArrayView2<'_, f64>) -> Result<f64> {
    let lambda = project_onto_simplex(q, vertices)?;
    let nearest_vertex = vertices
        .rows()
        .into_iter()
        .map(|row| row.iter().zip(q.iter()).map(|(a, b)| (a - b) * (a - b)).sum::<f64>())
        .fold(f64::INFINITY, f64::min);
    Ok(residual_sq(&lambda, vertices, q).min(nearest_vertex).max(0.0).sqrt())
}

/// Mean, over `majority` points, of the distance to the nearest maximal simplex
/// of the p-skeleton built on `minority` with a k-nearest-neighbor graph.
pub fn mean_model_distance(majority: &PointSet, minority: &PointSet, k: usize, p: SimplexDim) -> Result<f64> {
    if majority.dim() != minority.dim() {
        return Err(Error::Data(format!(
            "majority points have dimension {}, minority points {}",
            majority.dim(),
            minority.dim()
        )));
    }
    let graph = if minority.len() == 1 {
        NeighborhoodGraph::empty(1)
    } else {
        knn_graph(minority, k)?
    };
    let skeleton = p_skeleton(&graph, p)?;
    // Each simplex lies inside the ball around its centroid reaching its
    // farthest vertex, which gives a cheap lower bound used for pruning.
    let models: Vec<(ndarray::Array2<f64>, Array1<f64>, f64)> = skeleton
        .simplices()
        .iter()
        .map(|s| {
            let v = minority.view().select(ndarray::Axis(0), s.vertices());
            let centroid = v.mean_axis(ndarray::Axis(0)).expect("nonempty simplex");
            let radius = v
                .rows()
                .into_iter()
                .map(|r| squared_distance(r, centroid.view()).sqrt())
                .fold(0.0, f64::max);
            (v, centroid, radius)
        })
        .collect();
    let distances = par::map_range(majority.len(), |i| {
        let q = majority.row(i);
        let mut order: Vec<(f64, usize)> = models
            .iter()
            .enumerate()
            .map(|(j, (_, c, r))| ((squared_distance(q, c.view()).sqrt() - r).max(0.0), j))
            .collect();
        order.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut best = f64::INFINITY;
        for (bound, j) in order {
            if bound >= best {
                break;
            }
            best = best.min(distance_to_simplex(q, models[j].0.view()).expect("dimensions checked"));
        }
        best
    });
    Ok(distances.iter().sum::<f64>() / distances.len() as f64)
}
