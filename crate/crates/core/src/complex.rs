//! Clique complexes of neighborhood graphs and their p-skeleta.
//!
//! Maximal cliques are enumerated with Bron–Kerbosch (Tomita pivoting) over a
//! degeneracy ordering. The p-skeleton is then obtained by splitting every
//! clique larger than `p + 1` vertices into its `(p + 1)`-subsets.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::neighborhood::NeighborhoodGraph;

/// Default upper bound on the number of simplices produced by subdivision.
pub const DEFAULT_SUBDIVISION_CAP: usize = 1_000_000;

/// An abstract simplex: a strictly ascending list of vertex ids.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Simplex(Vec<usize>);

impl Simplex {
    /// Sorts and deduplicates `vertices`. Fails on an empty list.
    pub fn new(mut vertices: Vec<usize>) -> Result<Self> {
        vertices.sort_unstable();
        vertices.dedup();
        if vertices.is_empty() {
            return Err(Error::Data("a simplex needs at least one vertex".into()));
        }
        Ok(Simplex(vertices))
    }

    pub(crate) fn from_sorted(vertices: Vec<usize>) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(!vertices.is_empty());
        Simplex(vertices)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn dimension(&self) -> usize {
        self.0.len() - 1
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// True when every vertex of `self` is a vertex of `other`.
    pub fn is_face_of(&self, other: &Simplex) -> bool {
        let mut it = other.0.iter();
        self.0.iter().all(|v| it.any(|w| w == v))
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.0.iter().join(","))
    }
}

/// Dimension bound of a skeleton.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SimplexDim {
    Finite(usize),
    /// No bound: the skeleton is the whole clique complex.
    #[default]
    Maximal,
}

impl SimplexDim {
    pub fn finite(self) -> Option<usize> {
        match self {
            SimplexDim::Finite(p) => Some(p),
            SimplexDim::Maximal => None,
        }
    }
}

impl fmt::Display for SimplexDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimplexDim::Finite(p) => write!(f, "{p}"),
            SimplexDim::Maximal => f.write_str("max"),
        }
    }
}

impl std::str::FromStr for SimplexDim {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.eq_ignore_ascii_case("max") || s.eq_ignore_ascii_case("maximal") {
            return Ok(SimplexDim::Maximal);
        }
        s.parse::<usize>()
            .map(SimplexDim::Finite)
            .map_err(|_| Error::param("p", format!("expected a positive integer or \"max\", got {s:?}")))
    }
}

/// The maximal simplices of a p-skeleton of a clique complex, sorted
/// lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Skeleton {
    n_vertices: usize,
    max_dim: SimplexDim,
    simplices: Vec<Simplex>,
}

impl Skeleton {
    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn max_dim(&self) -> SimplexDim {
        self.max_dim
    }

    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn into_simplices(self) -> Vec<Simplex> {
        self.simplices
    }

    /// Keeps only the simplices matching `keep`; maximality is preserved since
    /// no survivor can be a face of another survivor.
    pub fn retain(&mut self, keep: impl FnMut(&Simplex) -> bool) {
        self.simplices.retain(keep);
    }
}

/// Degeneracy (k-core) ordering: repeatedly remove a vertex of minimum
/// remaining degree, lowest index first.
fn degeneracy_order(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    let mut degree: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut queue: BTreeSet<(usize, usize)> = (0..n).map(|v| (degree[v], v)).collect();
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    while let Some((_, v)) = queue.pop_first() {
        removed[v] = true;
        order.push(v);
        for &w in &adj[v] {
            if !removed[w] {
                queue.remove(&(degree[w], w));
                degree[w] -= 1;
                queue.insert((degree[w], w));
            }
        }
    }
    order
}

fn intersect(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::with_capacity(a.len().min(b.len()));
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn intersect_count(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut c) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                c += 1;
                i += 1;
                j += 1;
            }
        }
    }
    c
}

struct BronKerbosch<'a> {
    adj: &'a [Vec<usize>],
    out: Vec<Simplex>,
}

impl BronKerbosch<'_> {
    fn expand(&mut self, r: &mut Vec<usize>, mut p: Vec<usize>, mut x: Vec<usize>) {
        if p.is_empty() {
            if x.is_empty() {
                let mut clique = r.clone();
                clique.sort_unstable();
                self.out.push(Simplex::from_sorted(clique));
            }
            return;
        }
        // pivot maximizing |P ∩ N(u)| over P ∪ X
        let pivot = p
            .iter()
            .chain(x.iter())
            .copied()
            .max_by_key(|&u| (intersect_count(&p, &self.adj[u]), std::cmp::Reverse(u)))
            .expect("P is nonempty");
        let candidates: Vec<usize> = p
            .iter()
            .copied()
            .filter(|v| self.adj[pivot].binary_search(v).is_err())
            .collect();
        for v in candidates {
            let nv = &self.adj[v];
            let new_p = intersect(&p, nv);
            let new_x = intersect(&x, nv);
            r.push(v);
            self.expand(r, new_p, new_x);
            r.pop();
            if let Ok(i) = p.binary_search(&v) {
                p.remove(i);
            }
            if let Err(i) = x.binary_search(&v) {
                x.insert(i, v);
            }
        }
    }
}

/// All inclusion-maximal cliques, sorted lexicographically. Isolated vertices
/// come back as 0-simplices.
pub fn maximal_cliques(g: &NeighborhoodGraph) -> Vec<Simplex> {
    let adj = g.adjacency();
    let order = degeneracy_order(&adj);
    let mut rank = vec![0; adj.len()];
    for (i, &v) in order.iter().enumerate() {
        rank[v] = i;
    }
    let mut bk = BronKerbosch {
        adj: &adj,
        out: Vec::new(),
    };
    for &v in &order {
        let (later, earlier): (Vec<usize>, Vec<usize>) = adj[v].iter().partition(|&&w| rank[w] > rank[v]);
        let mut r = vec![v];
        bk.expand(&mut r, later, earlier);
    }
    let mut cliques = bk.out;
    cliques.sort_unstable();
    cliques
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

/// Maximal simplices of the p-skeleton of the clique complex of `g`, with the
/// default subdivision cap.
pub fn p_skeleton(g: &NeighborhoodGraph, p: SimplexDim) -> Result<Skeleton> {
    p_skeleton_capped(g, p, DEFAULT_SUBDIVISION_CAP)
}

pub fn p_skeleton_capped(g: &NeighborhoodGraph, p: SimplexDim, cap: usize) -> Result<Skeleton> {
    if p == SimplexDim::Finite(0) {
        return Err(Error::param(
            "p",
            "p = 0 has no edges to sample from; use random oversampling instead",
        ));
    }
    let cliques = maximal_cliques(g);
    let simplices = match p {
        SimplexDim::Maximal => cliques,
        SimplexDim::Finite(p) => {
            let size = p + 1;
            let requested: u128 = cliques
                .iter()
                .filter(|c| c.len() > size)
                .map(|c| binomial(c.len(), size))
                .fold(0u128, u128::saturating_add);
            if requested > cap as u128 {
                return Err(Error::SubdivisionCap { requested, cap });
            }
            let mut set = BTreeSet::new();
            for clique in cliques {
                if clique.len() <= size {
                    set.insert(clique);
                } else {
                    for face in clique.vertices().iter().copied().combinations(size) {
                        set.insert(Simplex::from_sorted(face));
                    }
                }
            }
            // A kept clique is maximal in the graph, so it cannot be a face of
            // any (p+1)-subset of another clique, and all subsets share one
            // size. The set is therefore already maximal.
            set.into_iter().collect()
        }
    };
    Ok(Skeleton {
        n_vertices: g.n_vertices(),
        max_dim: p,
        simplices,
    })
}

/// Number of maximal simplices containing each vertex.
pub fn simplex_membership_stats(sk: &Skeleton) -> Vec<usize> {
    let mut counts = vec![0; sk.n_vertices];
    for s in &sk.simplices {
        for &v in s.vertices() {
            counts[v] += 1;
        }
    }
    counts
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> NeighborhoodGraph {
        NeighborhoodGraph::from_edges(n, edges.iter().copied()).unwrap()
    }

    fn s(v: &[usize]) -> Simplex {
        Simplex::new(v.to_vec()).unwrap()
    }

    #[test]
    fn triangle_is_one_clique() {
        let g = NeighborhoodGraph::complete(3);
        assert_eq!(maximal_cliques(&g), vec![s(&[0, 1, 2])]);
        let sk = p_skeleton(&g, SimplexDim::Maximal).unwrap();
        assert_eq!(sk.simplices(), &[s(&[0, 1, 2])]);
    }

    #[test]
    fn path_has_two_edges() {
        let g = graph(3, &[(0, 1), (1, 2)]);
        assert_eq!(maximal_cliques(&g), vec![s(&[0, 1]), s(&[1, 2])]);
        let sk = p_skeleton(&g, SimplexDim::Maximal).unwrap();
        assert_eq!(simplex_membership_stats(&sk), vec![1, 2, 1]);
    }

    #[test]
    fn k4_two_skeleton() {
        let g = NeighborhoodGraph::complete(4);
        let sk = p_skeleton(&g, SimplexDim::Finite(2)).unwrap();
        assert_eq!(
            sk.simplices(),
            &[s(&[0, 1, 2]), s(&[0, 1, 3]), s(&[0, 2, 3]), s(&[1, 2, 3])]
        );
        assert_eq!(simplex_membership_stats(&sk), vec![3, 3, 3, 3]);
    }

    #[test]
    fn one_skeleton_is_the_graph() {
        let g = graph(6, &[(0, 1), (0, 2), (1, 2), (2, 3), (3, 4)]);
        let sk = p_skeleton(&g, SimplexDim::Finite(1)).unwrap();
        let mut expected: Vec<Simplex> = g.edges().iter().map(|&(u, v)| s(&[u, v])).collect();
        expected.push(s(&[5]));
        expected.sort();
        assert_eq!(sk.simplices(), expected.as_slice());
    }

    #[test]
    fn isolated_vertex() {
        let g = NeighborhoodGraph::empty(1);
        let sk = p_skeleton(&g, SimplexDim::Finite(2)).unwrap();
        assert_eq!(sk.simplices(), &[s(&[0])]);
        assert_eq!(simplex_membership_stats(&sk), vec![1]);
    }

    #[test]
    fn p_zero_rejected() {
        let g = NeighborhoodGraph::complete(3);
        assert!(matches!(
            p_skeleton(&g, SimplexDim::Finite(0)),
            Err(Error::Parameter { name: "p", .. })
        ));
    }

    #[test]
    fn subdivision_cap() {
        let g = NeighborhoodGraph::complete(20);
        // C(20, 4) = 4845
        let err = p_skeleton_capped(&g, SimplexDim::Finite(3), 1000).unwrap_err();
        assert_eq!(
            err,
            Error::SubdivisionCap {
                requested: 4845,
                cap: 1000
            }
        );
        assert_eq!(p_skeleton_capped(&g, SimplexDim::Finite(3), 4845).unwrap().len(), 4845);
    }

    #[test]
    fn shared_faces_counted_once() {
        // two K4s sharing the triangle {1,2,3}
        let mut edges = Vec::new();
        for c in [[0, 1, 2, 3], [1, 2, 3, 4]] {
            for (a, b) in c.iter().copied().tuple_combinations() {
                edges.push((a, b));
            }
        }
        let g = graph(5, &edges);
        let sk = p_skeleton(&g, SimplexDim::Finite(2)).unwrap();
        assert_eq!(sk.len(), 7);
    }

    #[test]
    fn simplex_helpers() {
        assert!(Simplex::new(vec![]).is_err());
        let a = s(&[3, 1, 1]);
        assert_eq!(a.vertices(), &[1, 3]);
        assert_eq!(a.dimension(), 1);
        assert!(s(&[1]).is_face_of(&a));
        assert!(!s(&[2]).is_face_of(&a));
        assert_eq!(a.to_string(), "{1,3}");
        assert_eq!("max".parse::<SimplexDim>().unwrap(), SimplexDim::Maximal);
        assert_eq!("3".parse::<SimplexDim>().unwrap(), SimplexDim::Finite(3));
        assert!("x".parse::<SimplexDim>().is_err());
        assert_eq!(binomial(4, 3), 4);
        assert_eq!(binomial(3, 4), 0);
    }
}
