//! Two-dimensional benchmark shapes with a 50 / 300 class split.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use ndarray::Array2;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::dataset::{Class, Dataset};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Shape {
    Moons,
    SwissRolls,
    GaussianInCircle,
    Circles,
}

impl Shape {
    pub const ALL: [Shape; 4] = [Shape::Moons, Shape::SwissRolls, Shape::GaussianInCircle, Shape::Circles];

    pub fn name(self) -> &'static str {
        match self {
            Shape::Moons => "moons",
            Shape::SwissRolls => "swiss_rolls",
            Shape::GaussianInCircle => "g_circle",
            Shape::Circles => "circles",
        }
    }

    /// Default noise scale of each shape.
    pub fn default_noise(self) -> f64 {
        match self {
            Shape::Moons => MOONS_NOISE,
            Shape::SwissRolls => SWISS_ROLL_JITTER,
            Shape::GaussianInCircle => G_CIRCLE_ANNULUS_WIDTH,
            Shape::Circles => CIRCLES_ANNULUS_WIDTH,
        }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Shape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().replace('-', "_").as_str() {
            "moons" => Ok(Shape::Moons),
            "swiss_rolls" | "swiss_roll" | "swiss" => Ok(Shape::SwissRolls),
            "g_circle" | "gaussian_in_circle" | "gaussian" => Ok(Shape::GaussianInCircle),
            "circles" => Ok(Shape::Circles),
            other => Err(Error::param(
                "datasets",
                format!("unknown dataset {other:?}; expected moons, swiss_rolls, g_circle or circles"),
            )),
        }
    }
}

/// Noise constants are calibrated so that a 5-NN classifier on the raw
/// imbalanced data scores roughly 0.95, 0.53, 0.71 and 0.65 F1 on moons,
/// swiss rolls, Gaussian-in-circle and circles respectively. Annulus widths
/// are the standard deviation of the radial noise.
pub const MOONS_NOISE: f64 = 0.15;
pub const SWISS_ROLL_JITTER: f64 = 0.5;
pub const G_CIRCLE_ANNULUS_WIDTH: f64 = 0.1;
pub const CIRCLES_ANNULUS_WIDTH: f64 = 0.2;
/// Standard deviation of the minority blob in the Gaussian-in-circle shape.
pub const G_CIRCLE_BLOB_SD: f64 = 0.5;
/// Inner circle radius relative to the outer one.
pub const CIRCLES_FACTOR: f64 = 0.55;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SyntheticSpec {
    pub shape: Shape,
    pub n_minority: usize,
    pub n_majority: usize,
    pub noise: f64,
    pub seed: u64,
}

impl SyntheticSpec {
    /// 50 minority and 300 majority points with the shape's default noise.
    pub fn new(shape: Shape, seed: u64) -> Self {
        Self {
            shape,
            n_minority: 50,
            n_majority: 300,
            noise: shape.default_noise(),
            seed,
        }
    }

    pub fn n_total(&self) -> usize {
        self.n_minority + self.n_majority
    }
}

/// Samples a dataset. Both classes are drawn from equally sized pools of
/// `n_majority` points and the minority pool is then subsampled, which keeps
/// the geometry of each class independent of the imbalance.
pub fn generate_synthetic(spec: &SyntheticSpec) -> Dataset {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let pool = spec.n_majority.max(spec.n_minority);
    let (mut minority, majority) = match spec.shape {
        Shape::Moons => moons(pool, spec.noise, &mut rng),
        Shape::SwissRolls => swiss_rolls(pool, spec.noise, &mut rng),
        Shape::GaussianInCircle => gaussian_in_circle(pool, spec.noise, &mut rng),
        Shape::Circles => circles(pool, spec.noise, &mut rng),
    };
    minority.shuffle(&mut rng);
    minority.truncate(spec.n_minority);
    let majority = &majority[..spec.n_majority];

    let flat: Vec<f64> = minority.iter().chain(majority).flat_map(|p| [p[0], p[1]]).collect();
    let features = Array2::from_shape_vec((spec.n_total(), 2), flat).expect("2-D rows");
    let mut labels = vec![Class::Minority; minority.len()];
    labels.extend(std::iter::repeat_n(Class::Majority, majority.len()));
    Dataset::new(features, labels).expect("generated points are finite")
}

type Points = Vec<[f64; 2]>;

fn jitter<R: Rng>(p: [f64; 2], sd: f64, rng: &mut R) -> [f64; 2] {
    if sd <= 0.0 {
        return p;
    }
    let n = Normal::new(0.0, sd).expect("positive sd");
    [p[0] + n.sample(rng), p[1] + n.sample(rng)]
}

fn linspace(n: usize, lo: f64, hi: f64) -> impl Iterator<Item = f64> {
    let step = if n > 1 { (hi - lo) / (n - 1) as f64 } else { 0.0 };
    (0..n).map(move |i| lo + step * i as f64)
}

/// Two interleaved half circles; the inner (lower) moon is the minority.
fn moons<R: Rng>(n: usize, noise: f64, rng: &mut R) -> (Points, Points) {
    let outer: Points = linspace(n, 0.0, PI)
        .map(|t| jitter([t.cos(), t.sin()], noise, rng))
        .collect();
    let inner: Points = linspace(n, 0.0, PI)
        .map(|t| jitter([1.0 - t.cos(), 0.5 - t.sin()], noise, rng))
        .collect();
    (inner, outer)
}

/// Two planar spiral arms, the second rotated by half a turn.
fn swiss_rolls<R: Rng>(n: usize, noise: f64, rng: &mut R) -> (Points, Points) {
    let arm = |sign: f64, rng: &mut R| -> Points {
        (0..n)
            .map(|_| {
                let t = 1.5 * PI * (1.0 + 2.0 * rng.random::<f64>());
                jitter([sign * t * t.cos(), sign * t * t.sin()], noise, rng)
            })
            .collect()
    };
    let minority = arm(1.0, rng);
    let majority = arm(-1.0, rng);
    (minority, majority)
}

/// Circle of the given radius with Gaussian radial noise of sd `width`.
fn ring<R: Rng>(n: usize, radius: f64, width: f64, rng: &mut R) -> Points {
    let radial = Normal::new(0.0, width.max(0.0)).expect("finite width");
    (0..n)
        .map(|_| {
            let theta = 2.0 * PI * rng.random::<f64>();
            let r = radius + radial.sample(rng);
            [r * theta.cos(), r * theta.sin()]
        })
        .collect()
}

/// Minority isotropic Gaussian centered inside a majority annulus.
fn gaussian_in_circle<R: Rng>(n: usize, width: f64, rng: &mut R) -> (Points, Points) {
    let minority = (0..n).map(|_| jitter([0.0, 0.0], G_CIRCLE_BLOB_SD, rng)).collect();
    let majority = ring(n, 1.0, width, rng);
    (minority, majority)
}

/// Minority annulus inside a majority annulus.
fn circles<R: Rng>(n: usize, width: f64, rng: &mut R) -> (Points, Points) {
    let minority = ring(n, CIRCLES_FACTOR, width, rng);
    let majority = ring(n, 1.0, width, rng);
    (minority, majority)
}
