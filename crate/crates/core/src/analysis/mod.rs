//! Post-run statistics.
//!
//! Log-binned densities and power-law regression for ETV sizes and ages,
//! windowed record statistics, rank aggregation across designs and the
//! Mann-Whitney U test.

pub mod ranking;
pub mod stats;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Logarithmically binned density of positive integer samples.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Distribution {
    /// Inclusive lower and exclusive upper integer edge of each bin.
    pub edges: Vec<(u64, u64)>,
    pub counts: Vec<u64>,
    /// Count divided by sample total and bin width.
    pub density: Vec<f64>,
    pub samples: u64,
}

impl Distribution {
    /// Bins `samples` within `[lo, hi]` with edges `lo * base^k`.
    pub fn log_binned(samples: &[u64], lo: u64, hi: u64, base: f64) -> Result<Self> {
        if lo == 0 || hi < lo || !(base > 1.0) {
            return Err(Error::param(format!("invalid binning range [{lo}, {hi}] with base {base}")));
        }
        let mut edges = Vec::new();
        let mut a = lo;
        while a <= hi {
            let next = ((a as f64 * base).ceil() as u64).max(a + 1).min(hi + 1);
            edges.push((a, next));
            a = next;
        }
        let mut counts = vec![0u64; edges.len()];
        let mut total = 0u64;
        for &s in samples.iter().filter(|&&s| s >= lo && s <= hi) {
            let i = edges.partition_point(|&(_, e)| e <= s);
            counts[i] += 1;
            total += 1;
        }
        let density = edges
            .iter()
            .zip(&counts)
            .map(|(&(a, b), &c)| if total == 0 { 0.0 } else { c as f64 / total as f64 / (b - a) as f64 })
            .collect();
        Ok(Distribution { edges, counts, density, samples: total })
    }

    /// Representative value of each bin: geometric mean of its first and last integer.
    pub fn centers(&self) -> Vec<f64> {
        self.edges.iter().map(|&(a, b)| ((a * (b - 1)) as f64).sqrt()).collect()
    }

    /// Sum of density times width; 1 for any non-empty distribution.
    pub fn mass(&self) -> f64 {
        self.edges.iter().zip(&self.density).map(|(&(a, b), d)| d * (b - a) as f64).sum()
    }
}

/// `p(x) ∝ x^-exponent` fitted by least squares on log-log axes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerLawFit {
    pub exponent: f64,
    /// Log of the density prefactor.
    pub intercept: f64,
    pub x_min: u64,
    pub x_max: u64,
    pub r_squared: f64,
    pub bins_used: usize,
}

impl PowerLawFit {
    /// Fitted density at `x`.
    pub fn density(&self, x: f64) -> f64 {
        (self.intercept - self.exponent * x.ln()).exp()
    }
}

pub const MIN_FIT_SAMPLES: usize = 100;

pub fn fit_power_law(samples: &[u64], x_min: u64, x_max: u64) -> Result<PowerLawFit> {
    let in_range = samples.iter().filter(|&&s| s >= x_min && s <= x_max).count();
    if in_range < MIN_FIT_SAMPLES {
        return Err(Error::InsufficientData(format!("{in_range} samples in [{x_min}, {x_max}], need {MIN_FIT_SAMPLES}")));
    }
    let d = Distribution::log_binned(samples, x_min, x_max, 2.0)?;
    let (xs, ys): (Vec<f64>, Vec<f64>) =
        d.centers().iter().zip(&d.density).filter(|(_, &y)| y > 0.0).map(|(&x, &y)| (x.ln(), y.ln())).unzip();
    if xs.len() < 2 {
        return Err(Error::Degenerate("fewer than two occupied bins".into()));
    }
    let (slope, intercept, r2) = linear_fit(&xs, &ys).ok_or_else(|| Error::Degenerate("constant bin centers".into()))?;
    Ok(PowerLawFit { exponent: -slope, intercept, x_min, x_max, r_squared: r2, bins_used: xs.len() })
}

/// Least squares line `y = a x + b`; returns `(a, b, R^2)`.
pub fn linear_fit(x: &[f64], y: &[f64]) -> Option<(f64, f64, f64)> {
    let n = x.len() as f64;
    let slope = crate::topology::ls_slope(x, y)?;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let b = my - slope * mx;
    let ss_tot: f64 = y.iter().map(|v| (v - my).powi(2)).sum();
    let ss_res: f64 = x.iter().zip(y).map(|(a, v)| (v - (slope * a + b)).powi(2)).sum();
    let r2 = if ss_tot > 0.0 { 1.0 - ss_res / ss_tot } else { 1.0 };
    Some((slope, b, r2))
}

/// Largest value in each complete window of `window` consecutive events.
pub fn record_statistics(stream: &[u64], window: usize) -> Result<Vec<u64>> {
    if window == 0 {
        return Err(Error::param("window must be positive"));
    }
    if stream.len() < window {
        return Err(Error::InsufficientData(format!("{} events, window {window}", stream.len())));
    }
    Ok(stream.chunks_exact(window).map(|w| w.iter().copied().max().unwrap_or(0)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binning_conserves_mass() {
        let s: Vec<u64> = (1..=300).collect();
        let d = Distribution::log_binned(&s, 1, 300, 2.0).unwrap();
        assert!((d.mass() - 1.0).abs() < 1e-12);
        assert_eq!(d.edges[0], (1, 2));
        assert_eq!(*d.edges.last().unwrap(), (256, 301));
    }

    #[test]
    fn constant_samples_are_degenerate() {
        assert!(matches!(fit_power_law(&[5; 500], 1, 100), Err(Error::Degenerate(_))));
        assert!(matches!(fit_power_law(&[5; 50], 1, 100), Err(Error::InsufficientData(_))));
    }

    #[test]
    fn records() {
        let mut s = vec![1u64; 400];
        s[10] = 7;
        s[399] = 50;
        assert_eq!(record_statistics(&s, 200).unwrap(), vec![7, 50]);
        assert!(record_statistics(&s[..10], 200).is_err());
    }
}
