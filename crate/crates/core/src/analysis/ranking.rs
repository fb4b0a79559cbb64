//! Rank aggregation over designs sharing blocking seeds.
//!
//! Costs are minimized throughout. Nested slices are indexed
//! `[function][design][run]`, with an extra trailing generation index for
//! trajectories.

use super::stats::midranks;
use crate::error::{Error, Result};

pub fn median(values: &[f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    Some(if n % 2 == 1 { v[n / 2] } else { 0.5 * (v[n / 2 - 1] + v[n / 2]) })
}

/// For each design and grid point, the median rank of its runs among all
/// runs on the same function (1 = worst), averaged over functions.
pub fn rank_profile(functions: &[Vec<Vec<Vec<f64>>>]) -> Result<Vec<Vec<f64>>> {
    let first = functions.first().ok_or_else(|| Error::InsufficientData("no functions".into()))?;
    let designs = first.len();
    let grid = first.first().and_then(|d| d.first()).map(Vec::len).unwrap_or(0);
    if designs == 0 || grid == 0 {
        return Err(Error::InsufficientData("no designs or empty trajectories".into()));
    }
    for f in functions {
        if f.len() != designs || f.iter().any(|d| d.is_empty() || d.iter().any(|run| run.len() != grid)) {
            return Err(Error::param("ragged result set"));
        }
    }
    let mut profile = vec![vec![0.0; grid]; designs];
    for f in functions {
        for g in 0..grid {
            let values: Vec<f64> = f.iter().flat_map(|d| d.iter().map(|run| -run[g])).collect();
            let ranks = midranks(&values);
            let mut offset = 0;
            for (d, runs) in f.iter().enumerate() {
                let m = median(&ranks[offset..offset + runs.len()]).unwrap_or(0.0);
                profile[d][g] += m / functions.len() as f64;
                offset += runs.len();
            }
        }
    }
    Ok(profile)
}

/// Percentage of functions on which each design has the best median final
/// cost. Tied designs all receive credit.
pub fn best_design_share(finals: &[Vec<Vec<f64>>]) -> Vec<f64> {
    share(finals, |f| f.iter().map(|runs| median(runs).unwrap_or(f64::INFINITY)).collect())
}

/// Percentage of functions on which each design reached the best cost seen
/// in any run at least once.
pub fn found_best_share(finals: &[Vec<Vec<f64>>]) -> Vec<f64> {
    share(finals, |f| f.iter().map(|runs| runs.iter().copied().fold(f64::INFINITY, f64::min)).collect())
}

fn share(finals: &[Vec<Vec<f64>>], score: impl Fn(&Vec<Vec<f64>>) -> Vec<f64>) -> Vec<f64> {
    let designs = finals.first().map(Vec::len).unwrap_or(0);
    let mut wins = vec![0usize; designs];
    for f in finals {
        let s = score(f);
        let best = s.iter().copied().fold(f64::INFINITY, f64::min);
        for (d, &v) in s.iter().enumerate() {
            if v == best {
                wins[d] += 1;
            }
        }
    }
    wins.iter().map(|&w| 100.0 * w as f64 / finals.len().max(1) as f64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hand_profile() {
        let f = vec![vec![vec![1.0], vec![2.0]], vec![vec![3.0], vec![4.0]], vec![vec![5.0], vec![6.0]]];
        let p = rank_profile(&[f]).unwrap();
        assert_eq!(p, vec![vec![5.5], vec![3.5], vec![1.5]]);
    }

    #[test]
    fn ragged_rejected() {
        let f = vec![vec![vec![1.0, 2.0]], vec![vec![3.0]]];
        assert!(rank_profile(&[f]).is_err());
    }

    #[test]
    fn shares() {
        let finals = vec![vec![vec![1.0, 5.0, 6.0], vec![2.0, 3.0, 3.0]]];
        assert_eq!(best_design_share(&finals), vec![0.0, 100.0]);
        assert_eq!(found_best_share(&finals), vec![100.0, 0.0]);
    }
}
