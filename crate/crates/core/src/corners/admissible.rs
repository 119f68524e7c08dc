//! Numerics for boundary coordinate changes `T ↦ T′ = T + f(T)`.
//!
//! With `T = e^S` and `t = 1/S`, an admissible change makes `t′ − t` and its
//! `S`-derivatives decay like `e^{−σS}`. The coordinate `s = 1/T` is not a
//! good one: for `T′ = T + c` it gives `s′ = s/(1 + cs)`, whose second
//! derivative at `0` is `−2c`.

use std::fmt;

use serde::Serialize;

use crate::scalar::{format_rational, rational_to_f64, Rational};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CoordChange {
    Identity,
    /// `T′ = T + c`
    Shift(Rational),
    /// `T′ = T + a·e^{−bT}`
    ExpDecay { coeff: Rational, rate: Rational },
}

impl fmt::Display for CoordChange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoordChange::Identity => write!(f, "T' = T"),
            CoordChange::Shift(c) => write!(f, "T' = T + {}", format_rational(c)),
            CoordChange::ExpDecay { coeff, rate } => {
                write!(f, "T' = T + {}·exp(-{}·T)", format_rational(coeff), format_rational(rate))
            }
        }
    }
}

impl CoordChange {
    /// `S′ − S = log(1 + f(e^S)/e^S)`, computed without cancellation.
    fn delta(&self, s: f64) -> f64 {
        match self {
            CoordChange::Identity => 0.0,
            CoordChange::Shift(c) => (rational_to_f64(c) * (-s).exp()).ln_1p(),
            CoordChange::ExpDecay { coeff, rate } => {
                (rational_to_f64(coeff) * (-rational_to_f64(rate) * s.exp() - s).exp()).ln_1p()
            }
        }
    }

    /// `t′ − t` as a function of `S`.
    pub fn residual(&self, s: f64) -> f64 {
        let d = self.delta(s);
        if d == 0.0 {
            return 0.0;
        }
        -d / (s * (s + d))
    }

    /// `s′(s)` with `s = 1/T`, where it extends past `s = 0`.
    fn s_prime(&self, s: f64) -> Option<f64> {
        match self {
            CoordChange::Identity => Some(s),
            CoordChange::Shift(c) => Some(s / (1.0 + rational_to_f64(c) * s)),
            CoordChange::ExpDecay { .. } => None,
        }
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct AdmissibleOptions {
    pub s_min: f64,
    pub s_max: f64,
    pub points: usize,
    pub sigma: f64,
    pub bound: f64,
    pub max_order: usize,
    /// step of the `S`-differences
    pub step: f64,
    /// step of the central difference at `s = 0`
    pub s_step: f64,
}

impl Default for AdmissibleOptions {
    fn default() -> Self {
        AdmissibleOptions {
            s_min: 5.0,
            s_max: 40.0,
            points: 71,
            sigma: 0.5,
            bound: 1.0,
            max_order: 4,
            step: 0.125,
            s_step: 1e-4,
        }
    }
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct OrderResidual {
    pub order: usize,
    pub max_abs: f64,
    /// `max |D^m(t′ − t)|·e^{σS}` over the sweep
    pub max_scaled: f64,
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct AdmissibleReport {
    pub change: String,
    pub sigma: f64,
    pub bound: f64,
    pub orders: Vec<OrderResidual>,
    /// least-squares slope of `log|t′ − t|` against `S` where nonzero
    pub fitted_rate: Option<f64>,
    /// central-difference `d²s′/ds²` at `s = 0`, when `s′` extends past 0
    pub second_derivative_at_zero: Option<f64>,
}

impl AdmissibleReport {
    pub fn decays(&self) -> bool {
        self.orders.iter().all(|o| o.max_scaled <= self.bound)
    }

    pub fn all_zero(&self) -> bool {
        self.orders.iter().all(|o| o.max_abs == 0.0)
    }
}

fn binom(m: usize, j: usize) -> f64 {
    num_integer::binomial(m as u64, j as u64) as f64
}

/// Central `m`-th difference `δ_h^m g(x) / h^m`.
fn central_difference(g: impl Fn(f64) -> f64, x: f64, m: usize, h: f64) -> f64 {
    let mut acc = 0.0;
    for j in 0..=m {
        let sgn = if j % 2 == 0 { 1.0 } else { -1.0 };
        acc += sgn * binom(m, j) * g(x + (m as f64 / 2.0 - j as f64) * h);
    }
    acc / h.powi(m as i32)
}

pub fn admissible_coord_check(change: &CoordChange, opts: &AdmissibleOptions) -> AdmissibleReport {
    let grid: Vec<f64> = (0..opts.points)
        .map(|i| opts.s_min + (opts.s_max - opts.s_min) * i as f64 / (opts.points - 1).max(1) as f64)
        .collect();
    let g = |s: f64| change.residual(s);
    let orders = (0..=opts.max_order)
        .map(|m| {
            let mut r = OrderResidual {
                order: m,
                max_abs: 0.0,
                max_scaled: 0.0,
            };
            for &s in &grid {
                let v = if m == 0 { g(s) } else { central_difference(g, s, m, opts.step) }.abs();
                r.max_abs = r.max_abs.max(v);
                r.max_scaled = r.max_scaled.max(v * (opts.sigma * s).exp());
            }
            r
        })
        .collect();
    let logs: Vec<(f64, f64)> = grid
        .iter()
        .filter_map(|&s| {
            let v = g(s).abs();
            (v > 0.0).then(|| (s, v.ln()))
        })
        .collect();
    let fitted_rate = (logs.len() >= 2).then(|| {
        let n = logs.len() as f64;
        let mx = logs.iter().map(|p| p.0).sum::<f64>() / n;
        let my = logs.iter().map(|p| p.1).sum::<f64>() / n;
        let sxy: f64 = logs.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
        let sxx: f64 = logs.iter().map(|(x, _)| (x - mx) * (x - mx)).sum();
        sxy / sxx
    });
    let second_derivative_at_zero = change
        .s_prime(0.0)
        .map(|_| central_difference(|s| change.s_prime(s).unwrap_or(f64::NAN), 0.0, 2, opts.s_step));
    AdmissibleReport {
        change: change.to_string(),
        sigma: opts.sigma,
        bound: opts.bound,
        orders,
        fitted_rate,
        second_derivative_at_zero,
    }
}
