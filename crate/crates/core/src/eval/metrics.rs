//! Confusion counts with minority as the positive class, F1 and MCC.

use crate::dataset::Class;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ConfusionCounts {
    pub tp: u64,
    pub fp: u64,
    pub tn: u64,
    pub fn_: u64,
}

impl ConfusionCounts {
    pub fn new(tp: u64, fp: u64, tn: u64, fn_: u64) -> Self {
        Self { tp, fp, tn, fn_ }
    }

    pub fn from_predictions(truth: &[Class], predicted: &[Class]) -> Self {
        assert_eq!(truth.len(), predicted.len(), "label vectors differ in length");
        let mut c = Self::default();
        for (t, p) in truth.iter().zip(predicted) {
            match (t, p) {
                (Class::Minority, Class::Minority) => c.tp += 1,
                (Class::Majority, Class::Minority) => c.fp += 1,
                (Class::Majority, Class::Majority) => c.tn += 1,
                (Class::Minority, Class::Majority) => c.fn_ += 1,
            }
        }
        c
    }

    pub fn total(&self) -> u64 {
        self.tp + self.fp + self.tn + self.fn_
    }
}

/// 2tp / (2tp + fp + fn), or 0 when the denominator vanishes.
pub fn f1_score(c: &ConfusionCounts) -> f64 {
    let denom = 2 * c.tp + c.fp + c.fn_;
    if denom == 0 {
        return 0.0;
    }
    (2 * c.tp) as f64 / denom as f64
}

/// Matthews correlation coefficient, or 0 when any marginal is empty.
pub fn mcc_score(c: &ConfusionCounts) -> f64 {
    let (tp, fp, tn, fn_) = (c.tp as f64, c.fp as f64, c.tn as f64, c.fn_ as f64);
    let factors = [tp + fp, tp + fn_, tn + fp, tn + fn_];
    if factors.contains(&0.0) {
        return 0.0;
    }
    let denom = factors.iter().product::<f64>().sqrt();
    ((tp * tn - fp * fn_) / denom).clamp(-1.0, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f1_cases() {
        assert_eq!(f1_score(&ConfusionCounts::new(10, 0, 40, 0)), 1.0);
        assert_eq!(f1_score(&ConfusionCounts::new(0, 3, 40, 5)), 0.0);
        assert_eq!(f1_score(&ConfusionCounts::new(0, 0, 40, 0)), 0.0);
        assert!((f1_score(&ConfusionCounts::new(8, 2, 0, 4)) - 16.0 / 22.0).abs() < 1e-15);
    }

    #[test]
    fn mcc_cases() {
        assert_eq!(mcc_score(&ConfusionCounts::new(10, 0, 40, 0)), 1.0);
        assert_eq!(mcc_score(&ConfusionCounts::new(0, 0, 40, 10)), 0.0);
        let expected = 16.0 / (7.0f64 * 8.0 * 4.0 * 5.0).sqrt();
        assert!((mcc_score(&ConfusionCounts::new(6, 1, 3, 2)) - expected).abs() < 1e-12);
        assert!((expected - 0.4781).abs() < 1e-4);
        assert_eq!(mcc_score(&ConfusionCounts::new(0, 5, 0, 5)), -1.0);
    }

    #[test]
    fn counts_from_labels() {
        use Class::*;
        let c = ConfusionCounts::from_predictions(
            &[Minority, Minority, Majority, Majority, Majority],
            &[Minority, Majority, Minority, Majority, Majority],
        );
        assert_eq!(c, ConfusionCounts::new(1, 1, 2, 1));
        assert_eq!(c.total(), 5);
    }
}
