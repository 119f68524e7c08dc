//! Double-boundary cancellation for the codimension-one boundary signs.
//!
//! Each stable `(k, β)` gets a free generator `M(k, β)` of dimension
//! `dim L + μ(β) + k − 2`. Its boundary is the signed sum of `M₁ ×_i M₂` over
//! the splittings. Applying the boundary twice, every codimension-two
//! configuration must occur exactly twice with opposite signs.
//!
//! Fiber-product conventions used when regrouping a double split:
//! - `∂(X ×_i Y) = ∂X ×_i Y + (−1)^{dim X + dim L} X ×_i ∂Y`;
//! - `(A ×_j B) ×_i C = (−1)^{(n+1)(j+1)} A ×_j (B ×_{i−j+1} C)` for an input
//!   of `B`;
//! - two pieces on inputs `p < q` of `A` commute past each other with
//!   `(−1)^{(dim B − n)(dim C − n) + k_B(n+1)(k_C+1)}`, where `C` sits at `p`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::novikov::{DiscreteSubmonoid, MonoidElement};
use crate::scalar::q;
use crate::trees::boundary_sign_eps;

type Module = (usize, MonoidElement);
type Key = (bool, Module, usize, Module, usize, Module);

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BarAuditReport {
    pub dim_l: i64,
    pub kmax: usize,
    /// number of codimension-two configurations examined
    pub checked: usize,
    pub failures: Vec<String>,
}

impl BarAuditReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for BarAuditReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "boundary sign audit (dim L = {}, k ≤ {}): {} configurations, {} unpaired",
            self.dim_l,
            self.kmax,
            self.checked,
            self.failures.len()
        )
    }
}

fn stable(m: &Module) -> bool {
    m.1.energy > Zero::zero() || m.0 >= 2
}

fn dim(n: i64, m: &Module) -> i64 {
    n + m.1.mu + m.0 as i64 - 2
}

struct Boundary<'a, F> {
    g: &'a DiscreteSubmonoid,
    n: i64,
    eps: &'a F,
}

impl<F: Fn(i64, i64, i64, i64, i64) -> i64> Boundary<'_, F> {
    /// `(sign exponent, M₁, i, M₂)` for the boundary of `m`.
    fn of(&self, m: &Module) -> Vec<(i64, Module, usize, Module)> {
        let (k, beta) = m;
        let mut out = Vec::new();
        for (b1, b2) in self.g.splittings(beta) {
            for k1 in 1..=k + 1 {
                let k2 = k + 1 - k1;
                let m1 = (k1, b1.clone());
                let m2 = (k2, b2.clone());
                if !stable(&m1) || !stable(&m2) {
                    continue;
                }
                for i in 1..=k1 {
                    let e = (self.eps)(k1 as i64, k2 as i64, i as i64, b2.mu, self.n);
                    out.push((e, m1.clone(), i, m2.clone()));
                }
            }
        }
        out
    }
}

/// The audit with the boundary sign formula from the tree module.
pub fn bar_sign_audit(dim_l: i64, kmax: usize) -> Result<BarAuditReport> {
    bar_sign_audit_with(dim_l, kmax, boundary_sign_eps)
}

/// The audit for an arbitrary sign exponent `eps(k₁, k₂, i, μ(β₂), dim L)`,
/// over `G = ⟨(1, 2)⟩` with `E(β) ≤ 2`.
pub fn bar_sign_audit_with<F>(dim_l: i64, kmax: usize, eps: F) -> Result<BarAuditReport>
where
    F: Fn(i64, i64, i64, i64, i64) -> i64,
{
    if kmax > 6 {
        return Err(Error::PreconditionFailed(vec![format!("kmax = {kmax} exceeds 6")]));
    }
    let g = DiscreteSubmonoid::new(vec![MonoidElement::new(q(1), 2)])?;
    let n = dim_l;
    let bd = Boundary { g: &g, n, eps: &eps };
    let mut checked = 0;
    let mut failures = Vec::new();
    for beta in g.below(&q(2)) {
        for k in 0..=kmax {
            let top = (k, beta.clone());
            if !stable(&top) {
                continue;
            }
            let mut terms: BTreeMap<Key, Vec<i64>> = BTreeMap::new();
            for (s, m1, i, m2) in bd.of(&top) {
                let (d1, d2) = (dim(n, &m1), dim(n, &m2));
                for (s2, a, j, b) in bd.of(&m1) {
                    let kb = b.0;
                    let (key, sg) = if j <= i && i < j + kb {
                        ((true, a, j, b, i - j + 1, m2.clone()), (n + 1) * (j as i64 + 1))
                    } else if i < j {
                        let sg = (dim(n, &b) - n) * (d2 - n) + kb as i64 * (n + 1) * (m2.0 as i64 + 1);
                        ((false, a, i, m2.clone(), j, b), sg)
                    } else {
                        ((false, a, j, b, i - kb + 1, m2.clone()), 0)
                    };
                    terms.entry(key).or_default().push(s + s2 + sg);
                }
                for (s2, b, l, c) in bd.of(&m2) {
                    terms
                        .entry((true, m1.clone(), i, b, l, c))
                        .or_default()
                        .push(s + s2 + d1 + n);
                }
            }
            for (key, v) in terms {
                checked += 1;
                let ok = v.len() == 2 && (v[0] - v[1]).rem_euclid(2) == 1;
                if !ok {
                    let (nest, a, p, b, r, c) = key;
                    let signs: Vec<char> = v.iter().map(|e| if e.rem_euclid(2) == 0 { '+' } else { '-' }).collect();
                    failures.push(format!(
                        "top (k={k}, β={beta}): {} A(k={}, {}) ×{p} B(k={}, {}) ×{r} C(k={}, {}) signs {signs:?}",
                        if nest { "nested" } else { "parallel" },
                        a.0,
                        a.1,
                        b.0,
                        b.1,
                        c.0,
                        c.1,
                    ));
                }
            }
        }
    }
    Ok(BarAuditReport {
        dim_l,
        kmax,
        checked,
        failures,
    })
}
