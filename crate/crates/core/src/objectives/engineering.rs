//! Constrained engineering design problems.

use super::Evaluation;

pub const ALKYLATION_BEST: [f64; 7] = [1698.18, 53.66, 3031.3, 90.11, 95.0, 10.5, 153.53];
pub const HEN_BEST: [f64; 5] = [579.19, 1360.13, 5109.92, 182.01, 295.60];
pub const PRESSURE_VESSEL_BEST: [f64; 4] = [38.8601, 221.365, 12.0, 6.0];
pub const WELDED_BEAM_BEST: [f64; 4] = [0.20572973978, 3.47048651338, 9.0366239103, 0.2057296397];
pub const SPRING_BEST: [f64; 3] = [0.051838, 0.360318, 11.081416];

/// Turbine power plant: minimize fuel use subject to the boiler limit.
pub fn turbine(x: &[f64]) -> Evaluation {
    let (x1, x2, x3, x4) = (x[0], x[1], x[2], x[3]);
    let g1 = 0.8008 + 0.2031 * x2 + 0.000916 * x2 * x2;
    let g2 = 0.7266 + 0.2256 * x2 + 0.000778 * x2 * x2;
    let f1 = 1.4609 + 0.15186 * x1 + 0.00145 * x1 * x1;
    let f2 = 1.5742 + 0.1631 * x1 + 0.001358 * x1 * x1;
    let bfg = (1.0 - x3) * f2 + (1.0 - x4) * g2;
    Evaluation::constrained(x3 * f1 + x4 * g1, vec![bfg - 10.0])
}

/// Alkylation process profit, maximized.
///
/// The polynomial is written as a cost; its negation is the profit.
pub fn alkylation(x: &[f64]) -> Evaluation {
    let (x1, x2, x3, x4, x5, x6, x7) = (x[0], x[1], x[2], x[3], x[4], x[5], x[6]);
    let cost = 1.715 * x1 + 0.035 * x1 * x6 + 4.0565 * x3 + 10.0 * x2 - 0.063 * x3 * x5;
    let g = vec![
        0.0059553571 * x6 * x6 * x1 + 0.88392857 * x3 - 0.1175625 * x6 * x1 - x1,
        1.1088 * x1 + 0.1303533 * x1 * x6 - 0.0066033 * x1 * x6 * x6 - x3,
        6.66173269 * x6 * x6 + 172.39878 * x5 - 56.596669 * x4 - 191.20592 * x6 - 10000.0,
        1.08702 * x6 + 0.32175 * x4 - 0.03762 * x6 * x6 - x5 + 56.85075,
        0.006198 * x7 * x4 * x3 + 2462.3121 * x2 - 25.125634 * x2 * x4 - x3 * x4,
        161.18996 * x4 * x3 + 5000.0 * x2 * x4 - 489510.0 * x2 - x3 * x4 * x7,
        0.33 * x7 - x5 + 44.333333,
        0.022556 * x5 - 0.007595 * x7 - 1.0,
        0.00061 * x3 - 0.0005 * x1 - 1.0,
        0.819672 * x1 - x3 + 0.819672,
        24500.0 * x2 - 250.0 * x2 * x4 - x3 * x4,
        1020.4082 * x4 * x2 + 1.2244898 * x3 * x4 - 100000.0 * x2,
        6.25 * x1 * x6 + 6.25 * x1 - 7.625 * x3 - 100000.0,
        1.22 * x3 - x6 * x1 - x1 + 1.0,
    ];
    Evaluation::constrained(-cost, g)
}

/// Heat exchanger network: minimize total exchange area.
pub fn heat_exchanger(x: &[f64]) -> Evaluation {
    let (x1, x2, x3, x4, x5) = (x[0], x[1], x[2], x[3], x[4]);
    let g = vec![
        100.0 * x1 - x1 * (400.0 - x4) + 833.33252 * x4 - 83333.333,
        x2 * x4 - x2 * (400.0 - x5 + x4) - 1250.0 * x4 + 1250.0 * x5,
        x3 * x5 - x3 * (100.0 + x5) - 2500.0 * x5 + 1250000.0,
    ];
    Evaluation::constrained(x1 + x2 + x3, g)
}

/// Pressure vessel cost. `x3` and `x4` count 0.0625 inch plates.
pub fn pressure_vessel(x: &[f64]) -> Evaluation {
    let (x1, x2) = (x[0], x[1]);
    let th = 0.0625 * x[2];
    let ts = 0.0625 * x[3];
    let f = 0.6224 * x1 * x2 * th + 1.7781 * x1 * x1 * ts + 3.1661 * x2 * th * th + 19.84 * x1 * th * th;
    let pi = std::f64::consts::PI;
    let g = vec![
        -th + 0.0193 * x1,
        -ts + 0.00954 * x1,
        -pi * x1 * x1 * x2 - 4.0 / 3.0 * pi * x1.powi(3) + 1_296_000.0,
        x2 - 240.0,
    ];
    Evaluation::constrained(f, g)
}

/// Welded beam fabrication cost.
pub fn welded_beam(x: &[f64]) -> Evaluation {
    const P: f64 = 6000.0;
    const L: f64 = 14.0;
    const E: f64 = 30e6;
    const G: f64 = 12e6;
    const TAU_MAX: f64 = 13600.0;
    const SIGMA_MAX: f64 = 30000.0;
    const DELTA_MAX: f64 = 0.25;
    let (x1, x2, x3, x4) = (x[0], x[1], x[2], x[3]);
    let f = 1.10471 * x1 * x1 * x2 + 0.04811 * x3 * x4 * (14.0 + x2);
    let tau_p = P / (std::f64::consts::SQRT_2 * x1 * x2);
    let m = P * (L + x2 / 2.0);
    let half = (x1 + x3) / 2.0;
    let r = (x2 * x2 / 4.0 + half * half).sqrt();
    let j = 2.0 * (std::f64::consts::SQRT_2 * x1 * x2 * (x2 * x2 / 12.0 + half * half));
    let tau_pp = m * r / j;
    let tau = (tau_p * tau_p + 2.0 * tau_p * tau_pp * x2 / (2.0 * r) + tau_pp * tau_pp).sqrt();
    let sigma = 6.0 * P * L / (x4 * x3 * x3);
    let delta = 4.0 * P * L.powi(3) / (E * x3.powi(3) * x4);
    let pc = 4.013 * E * (x3 * x3 * x4.powi(6) / 36.0).sqrt() / (L * L)
        * (1.0 - x3 / (2.0 * L) * (E / (4.0 * G)).sqrt());
    let g = vec![
        tau - TAU_MAX,
        sigma - SIGMA_MAX,
        x1 - x4,
        0.10471 * x1 * x1 + 0.04811 * x3 * x4 * (14.0 + x2) - 5.0,
        0.125 - x1,
        delta - DELTA_MAX,
        P - pc,
    ];
    Evaluation::constrained(f, g)
}

/// Tension/compression spring weight. `x = (d, D, N)`.
pub fn spring(x: &[f64]) -> Evaluation {
    let (d, dm, n) = (x[0], x[1], x[2]);
    let f = (n + 2.0) * dm * d * d;
    let g = vec![
        1.0 - dm.powi(3) * n / (71785.0 * d.powi(4)),
        (4.0 * dm * dm - d * dm) / (12566.0 * (dm * d.powi(3) - d.powi(4))) + 1.0 / (5108.0 * d * d) - 1.0,
        1.0 - 140.45 * d / (dm * dm * n),
        (dm + d) / 1.5 - 1.0,
    ];
    Evaluation::constrained(f, g)
}

/// Squared error of the gear ratio against 1/6.931.
pub fn gear_train(x: &[f64]) -> f64 {
    let r = 1.0 / 6.931 - (x[0] * x[1]) / (x[2] * x[3]);
    r * r
}
