//! Repeated stratified k-fold splitting.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::dataset::{Class, Dataset};
use crate::error::{Error, Result};

/// One train/test split. Index lists are ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Split {
    pub repeat: usize,
    pub fold: usize,
    pub train: Vec<usize>,
    pub test: Vec<usize>,
}

/// `repeats` independent stratified partitions into `folds` test folds. Each
/// class is shuffled and dealt round-robin, so per-fold class counts differ by
/// at most one.
pub fn stratified_cv(ds: &Dataset, folds: usize, repeats: usize, seed: u64) -> Result<Vec<Split>> {
    stratified_cv_labels(ds.labels(), folds, repeats, seed)
}

pub fn stratified_cv_labels(labels: &[Class], folds: usize, repeats: usize, seed: u64) -> Result<Vec<Split>> {
    if folds < 2 {
        return Err(Error::param("folds", format!("need at least 2 folds, got {folds}")));
    }
    for class in [Class::Minority, Class::Majority] {
        let count = labels.iter().filter(|&&c| c == class).count();
        if count < folds {
            return Err(Error::param(
                "folds",
                format!("{class:?} class has {count} samples, fewer than {folds} folds"),
            ));
        }
    }
    let n = labels.len();
    let mut out = Vec::with_capacity(folds * repeats);
    for repeat in 0..repeats {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(repeat as u64);
        let mut fold_of = vec![0usize; n];
        // minority dealt first; majority continues the rotation so fold sizes
        // stay within one of each other overall
        let mut offset = 0;
        for class in [Class::Minority, Class::Majority] {
            let mut idx: Vec<usize> = (0..n).filter(|&i| labels[i] == class).collect();
            idx.shuffle(&mut rng);
            for (j, &i) in idx.iter().enumerate() {
                fold_of[i] = (offset + j) % folds;
            }
            offset = (offset + idx.len()) % folds;
        }
        for fold in 0..folds {
            let (test, train): (Vec<usize>, Vec<usize>) = (0..n).partition(|&i| fold_of[i] == fold);
            out.push(Split {
                repeat,
                fold,
                train,
                test,
            });
        }
    }
    Ok(out)
}
