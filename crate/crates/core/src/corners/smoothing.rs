//! Homogeneous `Perm(k)`-equivariant homeomorphisms
//! `Φ_k : [0,∞)^k → ℝ^{k−1} × [0,∞)` for `k ≤ 3`.
//!
//! A unit vector `u` of the octant is written by its angle `α` from the
//! diagonal and its direction `w` in the sum-zero hyperplane. The octant
//! boundary in direction `w` sits at angle `α_max(w)`, and `u` goes to the
//! point of the upper hemisphere at polar angle `(π/2)·α/α_max(w)` in the
//! same direction. For `k = 2` this is `θ ↦ φ = 2θ − π/2`.
//!
//! `ℝ^{k−1}` is the sum-zero hyperplane of `ℝ^k` in the orthonormal basis
//! `e_j = (−1, …, −1, j, 0, …) / √(j(j+1))`, `j = 1..k−1`.

use std::f64::consts::FRAC_PI_2;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SmoothingMap {
    k: usize,
}

fn basis(k: usize) -> Vec<Vec<f64>> {
    (1..k)
        .map(|j| {
            let norm = ((j * (j + 1)) as f64).sqrt();
            (0..k)
                .map(|i| match i.cmp(&j) {
                    std::cmp::Ordering::Less => -1.0 / norm,
                    std::cmp::Ordering::Equal => j as f64 / norm,
                    std::cmp::Ordering::Greater => 0.0,
                })
                .collect()
        })
        .collect()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn max_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

impl SmoothingMap {
    pub fn new(k: usize) -> Result<Self> {
        if !(1..=3).contains(&k) {
            return Err(Error::Unsupported(format!("corner smoothing for k = {k}; only 1 ≤ k ≤ 3")));
        }
        Ok(SmoothingMap { k })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Sum-zero vector with coordinates `x`.
    pub fn embed(&self, x: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; self.k];
        for (c, e) in x.iter().zip(basis(self.k)) {
            for (yi, ei) in y.iter_mut().zip(e) {
                *yi += c * ei;
            }
        }
        y
    }

    /// Coordinates of the projection of `y` to the sum-zero hyperplane.
    pub fn coords(&self, y: &[f64]) -> Vec<f64> {
        basis(self.k).iter().map(|e| dot(e, y)).collect()
    }

    /// `Perm(k)` acting on `ℝ^{k−1}` by permuting sum-zero coordinates.
    /// `perm[i]` is the image of slot `i`.
    pub fn act(&self, perm: &[usize], x: &[f64]) -> Vec<f64> {
        self.coords(&permute(perm, &self.embed(x)))
    }

    fn alpha_max(&self, w: &[f64]) -> f64 {
        let sk = (self.k as f64).sqrt();
        w.iter()
            .filter(|wi| **wi < 0.0)
            .map(|wi| (1.0f64).atan2(sk * -wi))
            .fold(FRAC_PI_2, f64::min)
    }

    pub fn eval(&self, t: &[f64]) -> Result<(Vec<f64>, f64)> {
        if t.len() != self.k || t.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(Error::OutOfDomain(format!("point outside [0,∞)^{}", self.k)));
        }
        let zero = vec![0.0; self.k - 1];
        let r = norm(t);
        if r == 0.0 {
            return Ok((zero, 0.0));
        }
        if self.k == 1 {
            return Ok((zero, t[0]));
        }
        let u: Vec<f64> = t.iter().map(|v| v / r).collect();
        let c = 1.0 / (self.k as f64).sqrt();
        let along: f64 = u.iter().sum::<f64>() * c;
        let p: Vec<f64> = u.iter().map(|ui| ui - along * c).collect();
        let pn = norm(&p);
        if pn == 0.0 {
            return Ok((zero, r));
        }
        let w: Vec<f64> = p.iter().map(|v| v / pn).collect();
        let on_boundary = t.iter().any(|v| *v == 0.0);
        let polar = if on_boundary {
            FRAC_PI_2
        } else {
            (FRAC_PI_2 * pn.atan2(along) / self.alpha_max(&w)).min(FRAC_PI_2)
        };
        let x = self.coords(&w).iter().map(|v| r * polar.sin() * v).collect();
        let s = if on_boundary { 0.0 } else { r * polar.cos() };
        Ok((x, s))
    }

    pub fn inverse(&self, x: &[f64], s: f64) -> Result<Vec<f64>> {
        if x.len() + 1 != self.k || s < 0.0 {
            return Err(Error::OutOfDomain(format!("point outside ℝ^{} × [0,∞)", self.k - 1)));
        }
        let xn = norm(x);
        let r = (xn * xn + s * s).sqrt();
        let c = 1.0 / (self.k as f64).sqrt();
        if xn == 0.0 {
            return Ok(vec![r * c; self.k]);
        }
        let w: Vec<f64> = self.embed(x).iter().map(|v| v / xn).collect();
        let alpha = xn.atan2(s) * self.alpha_max(&w) / FRAC_PI_2;
        Ok(w.iter()
            .map(|wi| (r * (alpha.cos() * c + alpha.sin() * wi)).max(0.0))
            .collect())
    }
}

fn permute(perm: &[usize], y: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; y.len()];
    for (i, v) in y.iter().enumerate() {
        out[perm[i]] = *v;
    }
    out
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..k {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out
}

/// Radical inverse of `i` in `base`.
pub fn halton(mut i: u64, base: u64) -> f64 {
    let mut f = 1.0;
    let mut r = 0.0;
    while i > 0 {
        f /= base as f64;
        r += f * (i % base) as f64;
        i /= base;
    }
    r
}

const PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct SmoothingReport {
    pub k: usize,
    pub samples: usize,
    pub tol: f64,
    /// `|Φ(ct) − (x, ct)|` relative to `max(1, c|t|)`
    pub max_homogeneity: f64,
    /// `|Φ(σt) − σΦ(t)|` over all of `Perm(k)`
    pub max_equivariance: f64,
    /// `|s|` on points with a vanishing coordinate
    pub max_boundary: f64,
    /// `|Φ⁻¹Φ(t) − t|`, the sampled injectivity check
    pub max_inverse: f64,
    pub origin_fixed: bool,
}

impl SmoothingReport {
    pub fn max_violation(&self) -> f64 {
        [self.max_homogeneity, self.max_equivariance, self.max_boundary, self.max_inverse]
            .into_iter()
            .fold(0.0, f64::max)
    }

    pub fn passed(&self) -> bool {
        self.origin_fixed && self.max_violation() < self.tol
    }
}

/// Checks `Φ_k` on `samples` Halton points of `[0,2]^k` starting at index
/// `offset + 1`.
pub fn smoothing_property_check(k: usize, samples: usize, tol: f64, offset: u64) -> Result<SmoothingReport> {
    let phi = SmoothingMap::new(k)?;
    let perms = permutations(k);
    let mut rep = SmoothingReport {
        k,
        samples,
        tol,
        max_homogeneity: 0.0,
        max_equivariance: 0.0,
        max_boundary: 0.0,
        max_inverse: 0.0,
        origin_fixed: phi.eval(&vec![0.0; k])? == (vec![0.0; k - 1], 0.0),
    };
    for idx in 0..samples as u64 {
        let i = idx + offset + 1;
        let t: Vec<f64> = (0..k).map(|j| 2.0 * halton(i, PRIMES[j])).collect();
        let c = 2f64.powf(6.0 * halton(i, PRIMES[3]) - 3.0);
        let scale = norm(&t).max(1.0);
        let (x, s) = phi.eval(&t)?;

        let ct: Vec<f64> = t.iter().map(|v| c * v).collect();
        let (cx, cs) = phi.eval(&ct)?;
        let xs: Vec<f64> = x.iter().map(|v| c * v).collect();
        let h = max_dist(&cx, &xs).max((cs - c * s).abs()) / (c * scale).max(1.0);
        rep.max_homogeneity = rep.max_homogeneity.max(h);

        for p in &perms {
            let (px, ps) = phi.eval(&permute(p, &t))?;
            let e = max_dist(&px, &phi.act(p, &x)).max((ps - s).abs()) / scale;
            rep.max_equivariance = rep.max_equivariance.max(e);
        }

        let j = ((halton(i, PRIMES[4]) * k as f64) as usize).min(k - 1);
        let mut tb = t.clone();
        tb[j] = 0.0;
        let (_, sb) = phi.eval(&tb)?;
        rep.max_boundary = rep.max_boundary.max(sb.abs());

        let back = phi.inverse(&x, s)?;
        rep.max_inverse = rep.max_inverse.max(max_dist(&back, &t) / scale);
    }
    Ok(rep)
}
