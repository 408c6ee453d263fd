use ndarray::{Array2, ArrayView1, ArrayView2, Axis};

use crate::error::{Error, Result};
use crate::neighborhood::PointSet;

/// Binary class label. Minority is the positive (+1) class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Class {
    Minority,
    Majority,
}

impl Class {
    /// +1 for minority, −1 for majority.
    pub fn sign(self) -> i8 {
        match self {
            Class::Minority => 1,
            Class::Majority => -1,
        }
    }

    pub fn from_sign(s: i8) -> Result<Self> {
        match s {
            1 => Ok(Class::Minority),
            -1 => Ok(Class::Majority),
            other => Err(Error::Data(format!("label must be +1 or -1, got {other}"))),
        }
    }
}

/// Labelled feature matrix of a binary problem.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    features: Array2<f64>,
    labels: Vec<Class>,
}

impl Dataset {
    pub fn new(features: Array2<f64>, labels: Vec<Class>) -> Result<Self> {
        if features.nrows() != labels.len() {
            return Err(Error::Data(format!(
                "{} feature rows but {} labels",
                features.nrows(),
                labels.len()
            )));
        }
        if features.ncols() == 0 {
            return Err(Error::Data("dataset has no feature columns".into()));
        }
        if let Some(((i, j), v)) = features.indexed_iter().find(|(_, v)| !v.is_finite()) {
            return Err(Error::Data(format!("non-finite feature {v} at row {i}, column {j}")));
        }
        Ok(Self { features, labels })
    }

    pub fn from_signs(features: Array2<f64>, signs: &[i8]) -> Result<Self> {
        let labels = signs.iter().map(|&s| Class::from_sign(s)).collect::<Result<_>>()?;
        Self::new(features, labels)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.features.ncols()
    }

    pub fn features(&self) -> ArrayView2<'_, f64> {
        self.features.view()
    }

    pub fn row(&self, i: usize) -> ArrayView1<'_, f64> {
        self.features.row(i)
    }

    pub fn labels(&self) -> &[Class] {
        &self.labels
    }

    pub fn n_minority(&self) -> usize {
        self.labels.iter().filter(|&&c| c == Class::Minority).count()
    }

    pub fn n_majority(&self) -> usize {
        self.len() - self.n_minority()
    }

    pub fn minority_indices(&self) -> Vec<usize> {
        self.indices_of(Class::Minority)
    }

    pub fn majority_indices(&self) -> Vec<usize> {
        self.indices_of(Class::Majority)
    }

    pub fn indices_of(&self, class: Class) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.labels[i] == class).collect()
    }

    /// Rows `indices` as a point set.
    pub fn points(&self, indices: &[usize]) -> Result<PointSet> {
        PointSet::new(self.features.select(Axis(0), indices))
    }

    pub fn all_points(&self) -> Result<PointSet> {
        PointSet::new(self.features.clone())
    }

    /// Sub-dataset of the given rows, in that order.
    pub fn subset(&self, indices: &[usize]) -> Dataset {
        Dataset {
            features: self.features.select(Axis(0), indices),
            labels: indices.iter().map(|&i| self.labels[i]).collect(),
        }
    }

    /// Number of synthetic points that balances the classes, `n⁻ − n⁺`.
    /// Requires at least one minority point and a strictly smaller minority.
    pub fn balancing_count(&self) -> Result<usize> {
        let (pos, neg) = (self.n_minority(), self.n_majority());
        if pos == 0 {
            return Err(Error::Data("dataset has no minority points".into()));
        }
        if pos >= neg {
            return Err(Error::Data(format!(
                "minority class ({pos}) must be strictly smaller than majority class ({neg})"
            )));
        }
        Ok(neg - pos)
    }

    /// Appends rows labelled `class`.
    pub fn with_appended(&self, rows: ArrayView2<'_, f64>, class: Class) -> Result<Dataset> {
        if rows.ncols() != self.dim() {
            return Err(Error::Data(format!(
                "appended rows have {} columns, expected {}",
                rows.ncols(),
                self.dim()
            )));
        }
        let features =
            ndarray::concatenate(Axis(0), &[self.features.view(), rows]).map_err(|e| Error::Data(e.to_string()))?;
        let mut labels = self.labels.clone();
        labels.extend(std::iter::repeat_n(class, rows.nrows()));
        Dataset::new(features, labels)
    }
}
