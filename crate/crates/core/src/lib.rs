//! Oversampling of binary imbalanced data from the simplices of a minority
//! neighborhood complex.
//!
//! The pipeline is: build a kNN graph over the minority class
//! ([`neighborhood`]), expand it into the maximal simplices of a p-skeleton of
//! its clique complex ([`complex`]), then draw synthetic points as Dirichlet
//! convex combinations of the vertices of uniformly chosen simplices
//! ([`oversample`]). With `p = 1` this is SMOTE. The borderline, safe-level and
//! ADASYN variants ([`variants`]) change which simplices are eligible, where on
//! a simplex points land, and how often each simplex is chosen.
//!
//! ```
//! use ndarray::array;
//! use simplicial_oversampling::{oversample, Dataset, Method, SamplerConfig, SimplexDim};
//!
//! let ds = Dataset::from_signs(
//!     array![[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [5.0, 5.0], [6.0, 5.0], [5.0, 6.0], [6.0, 6.0], [7.0, 7.0]],
//!     &[1, 1, 1, -1, -1, -1, -1, -1],
//! )
//! .unwrap();
//! let cfg = SamplerConfig::new(Method::Simplicial).with_k(2).with_p(SimplexDim::Maximal).with_seed(7);
//! let batch = oversample(&ds, &cfg).unwrap();
//! assert_eq!(batch.len(), 2); // n⁻ − n⁺
//! ```
//!
//! With the default `parallel` feature, distance rows, per-point sampling and
//! cross-validation folds run on rayon. Results are identical without it.

pub mod complex;
pub mod dataset;
pub mod error;
pub mod eval;
pub mod geometry;
pub mod neighborhood;
pub mod oversample;
pub mod par;
pub mod variants;

pub use complex::{
    maximal_cliques, p_skeleton, p_skeleton_capped, simplex_membership_stats, Simplex, SimplexDim, Skeleton,
};
pub use dataset::{Class, Dataset};
pub use error::{Error, Result};
pub use geometry::{
    barycentric_to_point, distance_to_simplex, mean_model_distance, sample_dirichlet, BarycentricSample,
};
pub use neighborhood::{
    epsilon_graph, knn_graph, knn_graph_with, pairwise_distances, NeighborhoodGraph, PointSet, Symmetrize,
};
pub use oversample::{
    apply_batch, oversample, oversample_gaussian, oversample_global, oversample_random, oversample_simplicial,
    oversample_smote, Method, Provenance, SafeLevelFormula, SamplerConfig, Source, SyntheticBatch,
};
pub use variants::{
    adasyn_weights, borderline_subset, compute_safety, oversample_adasyn, oversample_borderline, oversample_safelevel,
    safelevel_alphas, NeighborhoodSafety,
};
