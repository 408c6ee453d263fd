//! Benchmark harness: synthetic shapes, a kNN classifier, F1/MCC, repeated
//! stratified cross-validation with grid search, and rank aggregation.

pub mod classifier;
pub mod cv;
pub mod grid;
pub mod metrics;
pub mod report;
pub mod synthetic;

pub use classifier::{knn_classify, Standardizer, DEFAULT_K_CLF};
pub use cv::{stratified_cv, Split};
pub use grid::{
    average_ranks, default_k_grid, default_p_grid, grid_search_eval, rank_methods, EvalMethod, EvalReport, GridConfig,
    Metric, ReportRow, BASELINE_METHODS, VARIANT_METHODS,
};
pub use metrics::{f1_score, mcc_score, ConfusionCounts};
pub use synthetic::{generate_synthetic, Shape, SyntheticSpec};
