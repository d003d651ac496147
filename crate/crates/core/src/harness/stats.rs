use crate::error::{Error, Result};

/// Two-sided 95% standard-normal quantile.
pub const Z_95: f64 = 1.959964;

/// Sample mean with a normal-approximation confidence interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub mean: f64,
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn half_width(&self) -> f64 {
        (self.hi - self.lo) / 2.0
    }

    /// Degenerate interval for a single observation.
    pub fn point(x: f64) -> Self {
        Interval { mean: x, lo: x, hi: x }
    }
}

pub fn mean(samples: &[f64]) -> f64 {
    samples.iter().sum::<f64>() / samples.len() as f64
}

/// Sample standard deviation (n - 1 denominator).
pub fn std_dev(samples: &[f64]) -> f64 {
    let m = mean(samples);
    let ss: f64 = samples.iter().map(|x| (x - m) * (x - m)).sum();
    (ss / (samples.len() as f64 - 1.0)).sqrt()
}

/// `mean ± z · s / √n`.
pub fn confidence_interval_z(samples: &[f64], z: f64) -> Result<Interval> {
    if samples.len() < 2 {
        return Err(Error::TooFewSamples(samples.len()));
    }
    let m = mean(samples);
    let half = z * std_dev(samples) / (samples.len() as f64).sqrt();
    Ok(Interval {
        mean: m,
        lo: m - half,
        hi: m + half,
    })
}

/// 95% two-sided interval under a Gaussian assumption.
pub fn confidence_interval(samples: &[f64]) -> Result<Interval> {
    confidence_interval_z(samples, Z_95)
}
