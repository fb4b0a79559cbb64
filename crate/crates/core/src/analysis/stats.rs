//! Rank statistics.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Midranks (1-based) of `values`; ties share the mean of their positions.
pub fn midranks(values: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; values.len()];
    let mut i = 0;
    while i < idx.len() {
        let mut j = i;
        while j + 1 < idx.len() && values[idx[j + 1]] == values[idx[i]] {
            j += 1;
        }
        let r = (i + j) as f64 / 2.0 + 1.0;
        for &k in &idx[i..=j] {
            ranks[k] = r;
        }
        i = j + 1;
    }
    ranks
}

pub fn normal_cdf(z: f64) -> f64 {
    0.5 * libm::erfc(-z / std::f64::consts::SQRT_2)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MannWhitney {
    /// Pairs `(a_i, b_j)` with `a_i > b_j`, ties counting one half.
    pub u: f64,
    /// One-sided p value for `a` tending to be smaller than `b`.
    pub p_less: f64,
    pub p_two_sided: f64,
    pub exact: bool,
}

/// Groups below this size use exact permutation enumeration.
pub const EXACT_BELOW: usize = 8;

pub fn mann_whitney_u(a: &[f64], b: &[f64]) -> Result<MannWhitney> {
    let (n1, n2) = (a.len(), b.len());
    if n1 == 0 || n2 == 0 {
        return Err(Error::InsufficientData("Mann-Whitney needs two non-empty samples".into()));
    }
    let all: Vec<f64> = a.iter().chain(b).copied().collect();
    let ranks = midranks(&all);
    let offset = (n1 * (n1 + 1)) as f64 / 2.0;
    let u = ranks[..n1].iter().sum::<f64>() - offset;
    if n1 < EXACT_BELOW || n2 < EXACT_BELOW {
        let (mut total, mut le, mut ge) = (0u64, 0u64, 0u64);
        let mut pick: Vec<usize> = (0..n1).collect();
        let n = n1 + n2;
        loop {
            let s = pick.iter().map(|&i| ranks[i]).sum::<f64>() - offset;
            total += 1;
            if s <= u + 1e-9 {
                le += 1;
            }
            if s >= u - 1e-9 {
                ge += 1;
            }
            // Next combination in lexicographic order.
            let mut k = n1;
            while k > 0 && pick[k - 1] == n - n1 + k - 1 {
                k -= 1;
            }
            if k == 0 {
                break;
            }
            pick[k - 1] += 1;
            for j in k..n1 {
                pick[j] = pick[j - 1] + 1;
            }
        }
        let p_less = le as f64 / total as f64;
        let p_two = (2.0 * le.min(ge) as f64 / total as f64).min(1.0);
        return Ok(MannWhitney { u, p_less, p_two_sided: p_two, exact: true });
    }
    let (f1, f2) = (n1 as f64, n2 as f64);
    let n = f1 + f2;
    let mu = f1 * f2 / 2.0;
    let mut tie_term = 0.0;
    let mut sorted = all.clone();
    sorted.sort_by(f64::total_cmp);
    let mut i = 0;
    while i < sorted.len() {
        let mut j = i;
        while j + 1 < sorted.len() && sorted[j + 1] == sorted[i] {
            j += 1;
        }
        let t = (j - i + 1) as f64;
        tie_term += t * t * t - t;
        i = j + 1;
    }
    let sigma = (f1 * f2 / 12.0 * ((n + 1.0) - tie_term / (n * (n - 1.0)))).sqrt();
    if !(sigma > 0.0) {
        return Ok(MannWhitney { u, p_less: 1.0, p_two_sided: 1.0, exact: false });
    }
    let p_less = normal_cdf((u - mu + 0.5) / sigma);
    let z_abs = ((u - mu).abs() - 0.5).max(0.0) / sigma;
    let p_two = (2.0 * (1.0 - normal_cdf(z_abs))).min(1.0);
    Ok(MannWhitney { u, p_less, p_two_sided: p_two, exact: false })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn midrank_ties() {
        assert_eq!(midranks(&[3.0, 1.0, 3.0, 2.0]), vec![3.5, 1.0, 3.5, 2.0]);
    }

    #[test]
    fn small_exact() {
        let r = mann_whitney_u(&[1.0, 2.0, 3.5], &[4.0, 5.0, 6.0, 7.0]).unwrap();
        assert!(r.exact);
        assert_eq!(r.u, 0.0);
        assert!((r.p_less - 1.0 / 35.0).abs() < 1e-15);
        assert!((r.p_two_sided - 2.0 / 35.0).abs() < 1e-15);
    }
}
