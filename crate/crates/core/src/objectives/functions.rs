//! Continuous artificial test functions (all minimized).

use std::f64::consts::{E, PI};

pub const SCHWEFEL_ARGMIN: f64 = 420.968_746_359_982_0;
const SCHWEFEL_OFFSET: f64 = 418.9829;

pub const FM_TARGET: [f64; 6] = [1.0, 5.0, 1.5, 4.8, 2.0, 4.9];

/// Minimizer of the six-parameter Watson function to eight digits.
pub const WATSON_ARGMIN: [f64; 6] =
    [-0.015_725_08, 1.012_434_87, -0.232_991_62, 1.260_430_87, -1.513_728_92, 0.992_996_29];

pub fn sphere(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum()
}

pub fn rosenbrock(x: &[f64]) -> f64 {
    x.windows(2)
        .map(|w| {
            let a = w[1] - w[0] * w[0];
            let b = w[0] - 1.0;
            100.0 * a * a + b * b
        })
        .sum()
}

pub fn rastrigin(x: &[f64]) -> f64 {
    10.0 * x.len() as f64 + x.iter().map(|v| v * v - 10.0 * (2.0 * PI * v).cos()).sum::<f64>()
}

pub fn schwefel(x: &[f64]) -> f64 {
    SCHWEFEL_OFFSET * x.len() as f64 - x.iter().map(|v| v * v.abs().sqrt().sin()).sum::<f64>()
}

pub fn griewangk(x: &[f64]) -> f64 {
    let sum: f64 = x.iter().map(|v| v * v).sum::<f64>() / 4000.0;
    let prod: f64 = x.iter().enumerate().map(|(i, v)| (v / ((i + 1) as f64).sqrt()).cos()).product();
    sum - prod + 1.0
}

pub fn bohachevsky(x: &[f64]) -> f64 {
    let (a, b) = (x[0], x[1]);
    a * a + 2.0 * b * b - 0.3 * (3.0 * PI * a).cos() * (4.0 * PI * b).cos() + 0.3
}

pub fn watson(x: &[f64]) -> f64 {
    let mut total = 0.0;
    for i in 1..=30 {
        let a = (i - 1) as f64 / 29.0;
        let mut deriv = 0.0;
        let mut pow = 1.0;
        for j in 1..=5 {
            deriv += j as f64 * pow * x[j];
            pow *= a;
        }
        let mut poly = 0.0;
        pow = 1.0;
        for &xj in x.iter().take(6) {
            poly += pow * xj;
            pow *= a;
        }
        let r = deriv - poly * poly - 1.0;
        total += r * r;
    }
    total + x[0] * x[0]
}

pub fn colville(x: &[f64]) -> f64 {
    let (x1, x2, x3, x4) = (x[0], x[1], x[2], x[3]);
    100.0 * (x2 - x1 * x1).powi(2)
        + (1.0 - x1).powi(2)
        + 90.0 * (x4 - x3 * x3).powi(2)
        + (1.0 - x3).powi(2)
        + 10.1 * ((x2 - 1.0).powi(2) + (x4 - 1.0).powi(2))
        + 19.8 * (x2 - 1.0) * (x4 - 1.0)
}

pub const LINEAR_A: [[f64; 10]; 10] = [
    [5., 4., 5., 2., 9., 5., 4., 2., 3., 1.],
    [9., 7., 1., 1., 7., 2., 2., 6., 6., 9.],
    [3., 1., 8., 6., 9., 7., 4., 2., 1., 6.],
    [8., 3., 7., 3., 7., 5., 3., 9., 9., 5.],
    [9., 5., 1., 6., 3., 4., 2., 3., 3., 9.],
    [1., 2., 3., 1., 7., 6., 6., 3., 3., 3.],
    [1., 5., 7., 8., 1., 4., 7., 8., 4., 8.],
    [9., 3., 8., 6., 3., 4., 7., 1., 8., 1.],
    [8., 2., 8., 5., 3., 8., 7., 2., 7., 5.],
    [2., 1., 2., 2., 9., 8., 7., 4., 4., 1.],
];
pub const LINEAR_B: [f64; 10] = [40., 50., 47., 59., 45., 35., 53., 50., 55., 40.];

/// Sum of absolute residuals of `A x = b`.
pub fn linear_equations(x: &[f64]) -> f64 {
    LINEAR_A
        .iter()
        .zip(LINEAR_B)
        .map(|(row, b)| (row.iter().zip(x).map(|(a, v)| a * v).sum::<f64>() - b).abs())
        .sum()
}

pub fn ackley(x: &[f64]) -> f64 {
    let n = x.len() as f64;
    let sq = x.iter().map(|v| v * v).sum::<f64>() / n;
    let cs = x.iter().map(|v| (2.0 * PI * v).cos()).sum::<f64>() / n;
    -20.0 * (-0.2 * sq.sqrt()).exp() - cs.exp() + 20.0 + E
}

const NEUMAIER_B: [f64; 4] = [8.0, 18.0, 44.0, 114.0];

/// Cumulative power-sum variant of Neumaier's second function.
pub fn neumaier2(x: &[f64]) -> f64 {
    let n = x.len();
    let mut alpha = 0.0;
    let mut total = 0.0;
    for k in 1..=n {
        alpha += x.iter().map(|v| v.powi(k as i32)).sum::<f64>();
        let b = NEUMAIER_B.get(k - 1).copied().unwrap_or(0.0);
        total += (b - alpha).powi(2);
    }
    total
}

pub fn hyper_ellipsoid(x: &[f64]) -> f64 {
    x.iter().enumerate().map(|(i, v)| ((i + 1) * (i + 1)) as f64 * v * v).sum()
}

fn fm_signal(x: &[f64], t: f64) -> f64 {
    let theta = 2.0 * PI / 100.0;
    x[0] * (x[1] * t * theta + x[2] * (x[3] * t * theta + x[4] * (x[5] * t * theta).sin()).sin()).sin()
}

pub fn frequency_modulation(x: &[f64]) -> f64 {
    (0..=100)
        .map(|t| {
            let t = t as f64;
            let d = fm_signal(x, t) - fm_signal(&FM_TARGET, t);
            d * d
        })
        .sum()
}
