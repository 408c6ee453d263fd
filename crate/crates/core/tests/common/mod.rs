//! Brute-force reference implementations shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use ndarray::{Array1, Array2};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use simplicial_oversampling::{sample_dirichlet, Dataset, NeighborhoodGraph, PointSet};

pub fn random_points(rng: &mut ChaCha8Rng, n: usize, d: usize) -> PointSet {
    PointSet::new(Array2::from_shape_fn((n, d), |_| rng.random_range(-1.0..1.0))).unwrap()
}

pub fn grid_points(rng: &mut ChaCha8Rng, n: usize, d: usize) -> PointSet {
    PointSet::new(Array2::from_shape_fn((n, d), |_| rng.random_range(0..4) as f64)).unwrap()
}

/// Minority drawn around a shifted mean so the classes overlap.
pub fn overlapping_dataset(rng: &mut ChaCha8Rng, n_pos: usize, n_neg: usize, d: usize) -> Dataset {
    let normal = Normal::new(0.0, 1.0).unwrap();
    let x = Array2::from_shape_fn((n_pos + n_neg, d), |(i, _)| {
        let shift = if i < n_pos { 0.8 } else { 0.0 };
        shift + normal.sample(rng)
    });
    let signs: Vec<i8> = (0..n_pos + n_neg).map(|i| if i < n_pos { 1 } else { -1 }).collect();
    Dataset::from_signs(x, &signs).unwrap()
}

fn dist(ps: &PointSet, i: usize, j: usize) -> f64 {
    let (a, b) = (ps.row(i), ps.row(j));
    let mut s = 0.0;
    for c in 0..ps.dim() {
        s += (a[c] - b[c]) * (a[c] - b[c]);
    }
    s.sqrt()
}

/// Union-symmetrized kNN edges from a full sort of every row.
pub fn brute_knn_edges(ps: &PointSet, k: usize) -> BTreeSet<(usize, usize)> {
    let n = ps.len();
    let mut edges = BTreeSet::new();
    for i in 0..n {
        let mut others: Vec<usize> = (0..n).filter(|&j| j != i).collect();
        others.sort_by(|&a, &b| dist(ps, i, a).partial_cmp(&dist(ps, i, b)).unwrap().then(a.cmp(&b)));
        for &j in &others[..k] {
            edges.insert((i.min(j), i.max(j)));
        }
    }
    edges
}

pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, prob: f64) -> NeighborhoodGraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(prob) {
                edges.push((u, v));
            }
        }
    }
    NeighborhoodGraph::from_edges(n, edges).unwrap()
}

fn is_clique(g: &NeighborhoodGraph, mask: u32) -> bool {
    let vs: Vec<usize> = (0..32).filter(|&i| mask >> i & 1 == 1).collect();
    vs.iter()
        .enumerate()
        .all(|(i, &a)| vs[i + 1..].iter().all(|&b| g.has_edge(a, b)))
}

fn mask_to_vec(mask: u32) -> Vec<usize> {
    (0..32).filter(|&i| mask >> i & 1 == 1).collect()
}

/// All cliques with at most `max_size` vertices, as bitmasks.
fn cliques_up_to(g: &NeighborhoodGraph, max_size: u32) -> Vec<u32> {
    let n = g.n_vertices();
    (1u32..(1 << n))
        .filter(|&m| m.count_ones() <= max_size && is_clique(g, m))
        .collect()
}

pub fn brute_maximal_cliques(g: &NeighborhoodGraph) -> BTreeSet<Vec<usize>> {
    brute_skeleton(g, None)
}

/// Inclusion-maximal cliques among those of dimension at most `p`.
pub fn brute_skeleton(g: &NeighborhoodGraph, p: Option<usize>) -> BTreeSet<Vec<usize>> {
    let cap = p.map_or(u32::MAX, |p| p as u32 + 1);
    let all = cliques_up_to(g, cap);
    all.iter()
        .filter(|&&m| !all.iter().any(|&o| o != m && o & m == m))
        .map(|&m| mask_to_vec(m))
        .collect()
}

/// Solves a small dense linear system by Gaussian elimination with partial
/// pivoting. Returns `None` when singular.
#[allow(clippy::needless_range_loop)]
fn solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].abs().partial_cmp(&a[j][col].abs()).unwrap())?;
        if a[piv][col].abs() < 1e-12 {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            for c in col..n {
                a[row][c] -= f * a[col][c];
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let s: f64 = (row + 1..n).map(|c| a[row][c] * x[c]).sum();
        x[row] = (b[row] - s) / a[row][row];
    }
    Some(x)
}

/// Exact distance from `q` to conv(vertices): minimum over every face of the
/// orthogonal distance to its affine hull, taken only where the foot point
/// has nonnegative barycentric coordinates.
pub fn brute_distance_to_simplex(q: &Array1<f64>, verts: &Array2<f64>) -> f64 {
    let m = verts.nrows();
    let mut best = f64::INFINITY;
    for mask in 1u32..(1 << m) {
        let face = mask_to_vec(mask);
        let base = verts.row(face[0]);
        let dirs: Vec<Array1<f64>> = face[1..].iter().map(|&v| &verts.row(v) - &base).collect();
        let r = q - &base;
        let coeffs = if dirs.is_empty() {
            Some(vec![])
        } else {
            let gram: Vec<Vec<f64>> = dirs.iter().map(|a| dirs.iter().map(|b| a.dot(b)).collect()).collect();
            let rhs: Vec<f64> = dirs.iter().map(|a| a.dot(&r)).collect();
            solve(gram, rhs)
        };
        let Some(c) = coeffs else { continue };
        let lead = 1.0 - c.iter().sum::<f64>();
        if lead < -1e-12 || c.iter().any(|&x| x < -1e-12) {
            continue;
        }
        let mut foot = base.to_owned();
        for (ci, d) in c.iter().zip(&dirs) {
            foot = foot + d * *ci;
        }
        let dd = (q - &foot).mapv(|x| x * x).sum().sqrt();
        best = best.min(dd);
    }
    best
}

/// Andrew's monotone chain, counterclockwise.
pub fn convex_hull(pts: &[[f64; 2]]) -> Vec<[f64; 2]> {
    let mut p = pts.to_vec();
    p.sort_by(|a, b| a.partial_cmp(b).unwrap());
    p.dedup();
    if p.len() < 3 {
        return p;
    }
    let cross = |o: [f64; 2], a: [f64; 2], b: [f64; 2]| (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
    let mut hull: Vec<[f64; 2]> = Vec::new();
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &[f64; 2]>> = if pass == 0 {
            Box::new(p.iter())
        } else {
            Box::new(p.iter().rev())
        };
        for &pt in iter {
            while hull.len() >= start + 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], pt) <= 0.0 {
                hull.pop();
            }
            hull.push(pt);
        }
        hull.pop();
    }
    hull
}

pub fn in_convex_polygon(hull: &[[f64; 2]], q: [f64; 2], tol: f64) -> bool {
    match hull.len() {
        0 => false,
        1 => (hull[0][0] - q[0]).hypot(hull[0][1] - q[1]) <= tol,
        2 => {
            let (a, b) = (hull[0], hull[1]);
            let len = (b[0] - a[0]).hypot(b[1] - a[1]);
            let cross = (b[0] - a[0]) * (q[1] - a[1]) - (b[1] - a[1]) * (q[0] - a[0]);
            let t = ((q[0] - a[0]) * (b[0] - a[0]) + (q[1] - a[1]) * (b[1] - a[1])) / (len * len);
            (cross / len).abs() <= tol && (-tol..=1.0 + tol).contains(&t)
        }
        n => (0..n).all(|i| {
            let (a, b) = (hull[i], hull[(i + 1) % n]);
            let len = (b[0] - a[0]).hypot(b[1] - a[1]);
            (b[0] - a[0]) * (q[1] - a[1]) - (b[1] - a[1]) * (q[0] - a[0]) >= -tol * len
        }),
    }
}

pub fn dirichlet_moments(alpha: &[f64], draws: usize, rng: &mut ChaCha8Rng) -> (Vec<f64>, Vec<f64>) {
    let d = alpha.len();
    let mut sum = vec![0.0; d];
    let mut sq = vec![0.0; d];
    for _ in 0..draws {
        let s = sample_dirichlet(alpha, rng).unwrap();
        for (i, &v) in s.as_slice().iter().enumerate() {
            sum[i] += v;
            sq[i] += v * v;
        }
    }
    let n = draws as f64;
    let means: Vec<f64> = sum.iter().map(|s| s / n).collect();
    let vars = sq.iter().zip(&means).map(|(s, m)| s / n - m * m).collect();
    (means, vars)
}

/// F1 and MCC written out from their textbook definitions.
pub fn direct_f1_mcc(tp: u64, fp: u64, tn: u64, fn_: u64) -> (f64, f64) {
    let (tp, fp, tn, fn_) = (tp as f64, fp as f64, tn as f64, fn_ as f64);
    let precision = if tp + fp > 0.0 { tp / (tp + fp) } else { 0.0 };
    let recall = if tp + fn_ > 0.0 { tp / (tp + fn_) } else { 0.0 };
    let f1 = if precision + recall > 0.0 {
        2.0 * precision * recall / (precision + recall)
    } else {
        0.0
    };
    let den = ((tp + fp) * (tp + fn_) * (tn + fp) * (tn + fn_)).sqrt();
    let mcc = if den > 0.0 { (tp * tn - fp * fn_) / den } else { 0.0 };
    (f1, mcc)
}
