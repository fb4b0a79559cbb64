//! Binary coded problems: tardy task scheduling, error correcting codes and
//! the massively multimodal deceptive problem.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MttpInstance {
    pub lengths: Vec<u64>,
    pub deadlines: Vec<u64>,
    pub weights: Vec<u64>,
}

const BASE_WEIGHTS: [u64; 5] = [60, 40, 7, 3, 50];

impl MttpInstance {
    /// Generates the scalable instance with `n` tasks (`n` a multiple of 5).
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n % 5 != 0 {
            return Err(Error::InvalidProblemParameter(format!("mttp size {n} is not a positive multiple of 5")));
        }
        let mut lengths = Vec::with_capacity(n);
        let mut deadlines = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        for j in 1..=n {
            if j <= 5 {
                lengths.push(3 * j as u64);
                deadlines.push(5 * j as u64);
                weights.push(BASE_WEIGHTS[j - 1]);
            } else {
                let i = (j % 5) + 1;
                let m = (j / 5) as u64;
                lengths.push(lengths[i - 1]);
                deadlines.push(deadlines[i - 1] + 24 * m);
                weights.push(weights[i - 1] * (m + 1));
            }
        }
        Ok(MttpInstance { lengths, deadlines, weights })
    }

    pub fn n(&self) -> usize {
        self.lengths.len()
    }

    /// Schedule cost before the `2n` offset.
    pub fn cost(&self, x: &[f64]) -> u64 {
        let mut t0 = 0u64;
        let mut cost = 0u64;
        let mut infeasible = false;
        for j in 0..self.n() {
            if x[j] == 1.0 {
                if t0 + self.lengths[j] < self.deadlines[j] {
                    t0 += self.lengths[j];
                } else {
                    infeasible = true;
                    cost += self.weights[j];
                }
            } else {
                cost += self.weights[j];
            }
        }
        if infeasible {
            cost += self.weights.iter().sum::<u64>();
        }
        cost
    }
}

/// `Cost - 2n`, minimized, optimum 0.
pub fn mttp_fitness(inst: &MttpInstance, x: &[f64]) -> f64 {
    inst.cost(x) as f64 - 2.0 * inst.n() as f64
}

/// Inverse of the summed inverse squared Hamming distances between code
/// words, maximized. Duplicate words give 0.
pub fn ecc_fitness(x: &[f64], words: usize, bits: usize) -> f64 {
    let word = |i: usize| &x[i * bits..(i + 1) * bits];
    let mut sum = 0.0;
    for i in 0..words {
        for j in (i + 1)..words {
            let d = word(i).iter().zip(word(j)).filter(|(a, b)| a != b).count();
            if d == 0 {
                return 0.0;
            }
            sum += 2.0 / (d * d) as f64;
        }
    }
    1.0 / sum
}

pub const MMDP_Y: [f64; 7] = [1.0, 0.0, 0.360384, 0.640576, 0.360384, 0.0, 1.0];

/// `k - sum of block scores`, minimized, optimum 0.
pub fn mmdp_fitness(x: &[f64], k: usize) -> f64 {
    let score: f64 = x
        .chunks(6)
        .take(k)
        .map(|block| MMDP_Y[block.iter().filter(|&&b| b == 1.0).count()])
        .sum();
    k as f64 - score
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mttp_generator_small() {
        let inst = MttpInstance::new(10).unwrap();
        assert_eq!(inst.lengths, vec![3, 6, 9, 12, 15, 6, 9, 12, 15, 3]);
        assert_eq!(inst.deadlines, vec![5, 10, 15, 20, 25, 34, 39, 44, 49, 53]);
        assert_eq!(inst.weights, vec![60, 40, 7, 3, 50, 80, 14, 6, 100, 180]);
    }

    #[test]
    fn ecc_two_words() {
        let f = ecc_fitness(&[0., 0., 0., 1., 1., 1.], 2, 3);
        assert!((f - 4.5).abs() < 1e-12);
        assert_eq!(ecc_fitness(&[1., 0., 1., 0.], 2, 2), 0.0);
    }
}
