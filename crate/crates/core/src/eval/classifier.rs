//! k-nearest-neighbor classifier and train-fold standardization.

use ndarray::{Array1, Array2, ArrayView2, Axis};

use crate::dataset::{Class, Dataset};
use crate::neighborhood::{nearest_to, PointSet};
use crate::par;

/// Neighbors consulted by the classifier unless configured otherwise.
pub const DEFAULT_K_CLF: usize = 5;

/// Majority vote among the `k_clf` nearest training points. A tied vote goes
/// to the minority class; distance ties go to the lower training index.
pub fn knn_classify(train: &Dataset, test: ArrayView2<'_, f64>, k_clf: usize) -> Vec<Class> {
    assert!(!train.is_empty(), "training set is empty");
    assert_eq!(train.dim(), test.ncols(), "train/test dimension mismatch");
    let points = PointSet::new(train.features().to_owned()).expect("dataset rows are finite");
    let rows: Vec<Vec<f64>> = test.rows().into_iter().map(|r| r.to_vec()).collect();
    par::map_slice(&rows, |q| {
        let neighbors = nearest_to(&points, q, k_clf.max(1), None);
        let minority = neighbors
            .iter()
            .filter(|&&j| train.labels()[j] == Class::Minority)
            .count();
        if 2 * minority >= neighbors.len() {
            Class::Minority
        } else {
            Class::Majority
        }
    })
}

/// Per-column mean and standard deviation fitted on a training matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Standardizer {
    pub mean: Array1<f64>,
    pub scale: Array1<f64>,
}

impl Standardizer {
    /// Population statistics; zero-variance columns get scale 1.
    pub fn fit(x: ArrayView2<'_, f64>) -> Self {
        let mean = x.mean_axis(Axis(0)).expect("nonempty matrix");
        let var = x.var_axis(Axis(0), 0.0);
        let scale = var.mapv(|v| if v > 0.0 { v.sqrt() } else { 1.0 });
        Self { mean, scale }
    }

    pub fn transform(&self, x: ArrayView2<'_, f64>) -> Array2<f64> {
        (&x - &self.mean) / &self.scale
    }
}
