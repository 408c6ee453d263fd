//! Exact Euclidean neighborhood graphs: symmetrized k-nearest-neighbor and
//! ε-ball relations.
//!
//! Distance ties are always broken by ascending vertex index, so every graph
//! built here is a deterministic function of its input.

use std::cmp::Ordering;

use ndarray::{Array2, ArrayView1, ArrayView2};

use crate::error::{Error, Result};
use crate::par;

/// A finite point cloud: `n` rows of `d` finite coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    points: Array2<f64>,
}

impl PointSet {
    pub fn new(points: Array2<f64>) -> Result<Self> {
        let (n, d) = points.dim();
        if n == 0 || d == 0 {
            return Err(Error::Data(format!(
                "point set must have at least one row and one column, got {n}x{d}"
            )));
        }
        if let Some(((i, j), v)) = points.indexed_iter().find(|(_, v)| !v.is_finite()) {
            return Err(Error::Data(format!("non-finite coordinate {v} at row {i}, column {j}")));
        }
        Ok(Self { points })
    }

    /// Builds a point set from row vectors. All rows must share a length.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let d = rows.first().map_or(0, Vec::len);
        if let Some(i) = rows.iter().position(|r| r.len() != d) {
            return Err(Error::Data(format!(
                "row {i} has {} columns, expected {d}",
                rows[i].len()
            )));
        }
        let flat: Vec<f64> = rows.iter().flatten().copied().collect();
        let points = Array2::from_shape_vec((rows.len(), d), flat).map_err(|e| Error::Data(e.to_string()))?;
        Self::new(points)
    }

    pub fn len(&self) -> usize {
        self.points.nrows()
    }

    pub fn is_empty(&self) -> bool {
        self.points.nrows() == 0
    }

    pub fn dim(&self) -> usize {
        self.points.ncols()
    }

    pub fn row(&self, i: usize) -> ArrayView1<'_, f64> {
        self.points.row(i)
    }

    pub fn view(&self) -> ArrayView2<'_, f64> {
        self.points.view()
    }

    pub fn into_inner(self) -> Array2<f64> {
        self.points
    }
}

#[inline]
pub(crate) fn squared_distance(a: ArrayView1<'_, f64>, b: ArrayView1<'_, f64>) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y) * (x - y)).sum()
}

#[inline]
pub(crate) fn squared_distance_slice(a: ArrayView1<'_, f64>, b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Full Euclidean distance matrix. Rows are computed independently.
pub fn pairwise_distances(ps: &PointSet) -> Array2<f64> {
    let n = ps.len();
    let rows = par::map_range(n, |i| {
        (0..n)
            .map(|j| {
                if i == j {
                    0.0
                } else {
                    // Evaluate with the smaller index first so (i, j) and (j, i)
                    // are bit-identical.
                    let (a, b) = if i < j { (i, j) } else { (j, i) };
                    squared_distance(ps.row(a), ps.row(b)).sqrt()
                }
            })
            .collect::<Vec<_>>()
    });
    let flat: Vec<f64> = rows.into_iter().flatten().collect();
    Array2::from_shape_vec((n, n), flat).expect("square distance matrix")
}

/// How the directed k-nearest relation is turned into an undirected graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Symmetrize {
    /// Edge when either endpoint lists the other.
    #[default]
    Union,
    /// Edge only when both endpoints list each other.
    Mutual,
}

impl Symmetrize {
    pub fn as_str(self) -> &'static str {
        match self {
            Symmetrize::Union => "union",
            Symmetrize::Mutual => "mutual",
        }
    }
}

/// Undirected simple graph over `0..n_vertices`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeighborhoodGraph {
    n_vertices: usize,
    edges: Vec<(usize, usize)>,
}

impl NeighborhoodGraph {
    /// Normalizes `(u, v)` pairs to `u < v`, sorts and deduplicates them.
    /// Self-loops are rejected, as are endpoints outside `0..n_vertices`.
    pub fn from_edges<I>(n_vertices: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut out = Vec::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::Data(format!("self-loop on vertex {u}")));
            }
            if u >= n_vertices || v >= n_vertices {
                return Err(Error::Data(format!(
                    "edge ({u}, {v}) has an endpoint outside 0..{n_vertices}"
                )));
            }
            out.push((u.min(v), u.max(v)));
        }
        out.sort_unstable();
        out.dedup();
        Ok(Self { n_vertices, edges: out })
    }

    pub fn empty(n_vertices: usize) -> Self {
        Self {
            n_vertices,
            edges: Vec::new(),
        }
    }

    pub fn complete(n_vertices: usize) -> Self {
        let edges = (0..n_vertices)
            .flat_map(|u| (u + 1..n_vertices).map(move |v| (u, v)))
            .collect();
        Self { n_vertices, edges }
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    /// Edges as sorted `(u, v)` pairs with `u < v`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let key = (u.min(v), u.max(v));
        self.edges.binary_search(&key).is_ok()
    }

    /// Sorted neighbor lists.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n_vertices];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n_vertices];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    /// Subgraph induced by `vertices` (ascending, distinct), relabelled to
    /// `0..vertices.len()` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> NeighborhoodGraph {
        let mut local = vec![usize::MAX; self.n_vertices];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter_map(|&(u, v)| {
                let (a, b) = (local[u], local[v]);
                (a != usize::MAX && b != usize::MAX).then(|| (a.min(b), a.max(b)))
            })
            .collect::<Vec<_>>();
        let mut g = NeighborhoodGraph {
            n_vertices: vertices.len(),
            edges,
        };
        g.edges.sort_unstable();
        g
    }
}

#[inline]
fn by_distance_then_index(a: &(f64, usize), b: &(f64, usize)) -> Ordering {
    a.0.total_cmp(&b.0).then(a.1.cmp(&b.1))
}

/// Indices of the `k` points of `ps` closest to `query`, nearest first, ties by
/// lower index. `exclude` removes one index (the query itself) from the ranking.
pub fn nearest_to(ps: &PointSet, query: &[f64], k: usize, exclude: Option<usize>) -> Vec<usize> {
    let mut cand: Vec<(f64, usize)> = (0..ps.len())
        .filter(|&j| Some(j) != exclude)
        .map(|j| (squared_distance_slice(ps.row(j), query), j))
        .collect();
    let k = k.min(cand.len());
    if k == 0 {
        return Vec::new();
    }
    if k < cand.len() {
        cand.select_nth_unstable_by(k - 1, by_distance_then_index);
        cand.truncate(k);
    }
    cand.sort_unstable_by(by_distance_then_index);
    cand.into_iter().map(|(_, j)| j).collect()
}

/// Directed k-nearest-neighbor lists (self excluded), one per vertex.
pub fn knn_lists(ps: &PointSet, k: usize) -> Result<Vec<Vec<usize>>> {
    let n = ps.len();
    check_k(k, n)?;
    Ok(par::map_range(n, |i| {
        let q: Vec<f64> = ps.row(i).to_vec();
        nearest_to(ps, &q, k, Some(i))
    }))
}

fn check_k(k: usize, n: usize) -> Result<()> {
    if n < 2 || k < 1 || k > n - 1 {
        return Err(Error::param(
            "k",
            format!(
                "k = {k} outside the valid interval [1, {}] for {n} points",
                n.saturating_sub(1)
            ),
        ));
    }
    Ok(())
}

/// Symmetrized kNN graph with the default union rule.
pub fn knn_graph(ps: &PointSet, k: usize) -> Result<NeighborhoodGraph> {
    knn_graph_with(ps, k, Symmetrize::Union)
}

pub fn knn_graph_with(ps: &PointSet, k: usize, mode: Symmetrize) -> Result<NeighborhoodGraph> {
    let lists = knn_lists(ps, k)?;
    Ok(symmetrize(&lists, mode))
}

/// Turns directed neighbor lists into an undirected graph.
pub fn symmetrize(lists: &[Vec<usize>], mode: Symmetrize) -> NeighborhoodGraph {
    let n = lists.len();
    let mut edges = Vec::new();
    for (u, list) in lists.iter().enumerate() {
        for &v in list {
            match mode {
                Symmetrize::Union => edges.push((u.min(v), u.max(v))),
                Symmetrize::Mutual => {
                    if u < v && lists[v].contains(&u) {
                        edges.push((u, v));
                    }
                }
            }
        }
    }
    NeighborhoodGraph::from_edges(n, edges).expect("kNN lists hold valid, loop-free indices")
}

/// ε-ball graph: edge `(u, v)` iff `d(u, v) ≤ eps`.
pub fn epsilon_graph(ps: &PointSet, eps: f64) -> Result<NeighborhoodGraph> {
    if eps.is_nan() || eps < 0.0 {
        return Err(Error::param("eps", format!("must be a nonnegative number, got {eps}")));
    }
    let n = ps.len();
    let rows = par::map_range(n, |u| {
        (u + 1..n)
            .filter(|&v| squared_distance(ps.row(u), ps.row(v)).sqrt() <= eps)
            .map(|v| (u, v))
            .collect::<Vec<_>>()
    });
    Ok(NeighborhoodGraph {
        n_vertices: n,
        edges: rows.into_iter().flatten().collect(),
    })
}
