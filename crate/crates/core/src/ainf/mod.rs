//! Filtered A∞ operations on a finite graded-commutative DGA.
//!
//! Operations act on the shifted space: an element of degree `d` has shifted
//! degree `d − 1`. `𝔪_{k,β}` has shifted degree `1 − μ(β)`, so on unshifted
//! degrees `deg out = Σ deg in − k + 2 − μ(β)`.

mod audit;
mod isotopy;
mod multiop;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::gradecx::{CochainComplex, GradedSpace};
use crate::novikov::{DiscreteSubmonoid, MonoidElement};
use crate::scalar::{format_rational, sign, Rational, Ring};

pub use audit::{bar_sign_audit, bar_sign_audit_with, BarAuditReport};
pub use isotopy::{
    check_pseudoisotopy, collared_check, homotopy_limit_ainf, isotopy_defect, promote_via_isotopy,
    restrict_endpoint, AinfLimit, IsotopyPiece, IsotopyReport, LimitCertificate, PseudoIsotopy,
};
pub use multiop::MultiOp;

pub type OpKey = (MonoidElement, usize);
pub type Table<C> = BTreeMap<OpKey, MultiOp<C>>;

/// A cochain complex with a graded-commutative, associative product
/// satisfying the Leibniz rule.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Dga<S = Rational> {
    complex: CochainComplex<S>,
    product: MultiOp<S>,
}

impl<S: Ring> Dga<S> {
    pub fn new(complex: CochainComplex<S>, product: MultiOp<S>) -> Result<Self> {
        let dga = Dga { complex, product };
        let problems = dga.axiom_failures();
        if problems.is_empty() {
            Ok(dga)
        } else {
            Err(Error::PreconditionFailed(problems))
        }
    }

    /// Zero product.
    pub fn trivial_product(complex: CochainComplex<S>) -> Self {
        Dga {
            complex,
            product: MultiOp::zero(2),
        }
    }

    pub fn complex(&self) -> &CochainComplex<S> {
        &self.complex
    }

    pub fn space(&self) -> &GradedSpace {
        self.complex.space()
    }

    pub fn product(&self) -> &MultiOp<S> {
        &self.product
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.space().basis().iter().map(|(_, d)| *d).collect()
    }

    /// `d0` as an arity-one operation.
    pub fn differential(&self) -> MultiOp<S> {
        MultiOp::from_entries(
            1,
            self.complex
                .d0()
                .matrix()
                .entries()
                .map(|(i, j, v)| (vec![j], i, v.clone())),
        )
    }

    fn axiom_failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.product.arity() != 2 {
            out.push("product must be binary".into());
            return out;
        }
        let dim = self.space().dim();
        if self.product.entries().any(|(i, o, _)| o >= dim || i.iter().any(|&j| j >= dim)) {
            out.push("product refers to a basis index out of range".into());
            return out;
        }
        let deg = self.degrees();
        if let Some((i, o)) = self.product.degree_violation(&deg, 2) {
            out.push(format!("product {i:?} -> {o} is not degree preserving"));
        }
        for (i, o, c) in self.product.entries() {
            let s: S = sign(deg[i[0]] * deg[i[1]]);
            if self.product.get(&[i[1], i[0]], o) != c.clone() * s {
                out.push(format!("product is not graded commutative at {i:?}"));
                break;
            }
        }
        let p = &self.product;
        if p.insert_at(1, p, &deg, false) != p.insert_at(2, p, &deg, false) {
            out.push("product is not associative".into());
        }
        let d = self.differential();
        // d(xy) = dx·y + (−1)^{|x|} x·dy; the Koszul slot-2 sign is (−1)^{|x|−1}
        let leibniz = d
            .insert_at(1, p, &deg, false)
            .sub(&p.insert_at(1, &d, &deg, false))
            .add(&p.insert_at(2, &d, &deg, true));
        if !leibniz.is_zero() {
            out.push("Leibniz rule fails".into());
        }
        out
    }
}

/// Everything an operation table needs besides its entries.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AinfContext<S = Rational> {
    dga: Arc<Dga<S>>,
    dim_l: i64,
    monoid: DiscreteSubmonoid,
    cut: Rational,
    e0: Rational,
    keys: Vec<OpKey>,
}

impl<S: Ring> AinfContext<S> {
    pub fn new(dga: Arc<Dga<S>>, dim_l: i64, monoid: DiscreteSubmonoid, cut: Rational, e0: Rational) -> Result<Self> {
        if cut < Rational::zero() {
            return Err(Error::InvalidCutLevel(format_rational(&cut)));
        }
        let mut keys = monoid.gk_set(&cut, &e0)?;
        keys.sort_by(|a, b| level_order(&e0, a, b));
        Ok(AinfContext {
            dga,
            dim_l,
            monoid,
            cut,
            e0,
            keys,
        })
    }

    pub fn dga(&self) -> &Arc<Dga<S>> {
        &self.dga
    }

    pub fn dim_l(&self) -> i64 {
        self.dim_l
    }

    pub fn monoid(&self) -> &DiscreteSubmonoid {
        &self.monoid
    }

    pub fn cut(&self) -> &Rational {
        &self.cut
    }

    pub fn e0(&self) -> &Rational {
        &self.e0
    }

    /// The gk set, ordered by `E(β) + k·e0`, then `β`, then `k`.
    pub fn keys(&self) -> &[OpKey] {
        &self.keys
    }

    pub fn contains(&self, key: &OpKey) -> bool {
        self.keys.contains(key)
    }

    pub fn level(&self, key: &OpKey) -> Rational {
        level(&self.e0, key)
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.dga.degrees()
    }

    pub fn with_cut(&self, cut: Rational) -> Result<Self> {
        AinfContext::new(self.dga.clone(), self.dim_l, self.monoid.clone(), cut, self.e0.clone())
    }

    /// Same algebra, `dim L`, monoid and `e0`; cuts may differ.
    pub fn compatible(&self, other: &Self) -> bool {
        self.dga == other.dga && self.dim_l == other.dim_l && self.monoid == other.monoid && self.e0 == other.e0
    }

    /// `𝔪_{1,β₀}` and `𝔪_{2,β₀}` from the DGA, restricted to the gk set.
    pub fn base_ops(&self) -> Table<S> {
        let deg = self.degrees();
        let n = self.dim_l;
        let mut out = Table::new();
        let unit = MonoidElement::unit();
        if self.contains(&(unit.clone(), 1)) {
            let d = self.dga.differential();
            let m1 = MultiOp::from_entries(
                1,
                d.entries()
                    .map(|(i, o, c)| (i.to_vec(), o, c.clone() * sign::<S>(n + 1 + deg[i[0]]))),
            );
            out.insert((unit.clone(), 1), m1);
        }
        if self.contains(&(unit.clone(), 2)) {
            let p = self.dga.product();
            let m2 = MultiOp::from_entries(
                2,
                p.entries().map(|(i, o, c)| {
                    let (a, b) = (deg[i[0]], deg[i[1]]);
                    (i.to_vec(), o, c.clone() * sign::<S>(a * (b + 1)))
                }),
            );
            out.insert((unit, 2), m2);
        }
        out.retain(|_, op| !op.is_zero());
        out
    }

    /// Validates keys, arities, basis indices and degrees of a table whose
    /// entries have shifted degree `shift − μ(β)` in the sense of
    /// [`MultiOp::degree_violation`].
    pub(crate) fn validate_table<C: Ring>(&self, table: &Table<C>, shift: i64, what: &str) -> Result<()> {
        let deg = self.degrees();
        let dim = deg.len();
        for ((beta, k), op) in table {
            let at = format!("{what} at (k={k}, β={beta})");
            if !self.contains(&(beta.clone(), *k)) {
                return Err(Error::OutOfDomain(format!(
                    "{at}: E(β) + k·e0 exceeds the cut {}",
                    format_rational(&self.cut)
                )));
            }
            if op.arity() != *k {
                return Err(Error::SpaceMismatch(format!("{at}: arity {} ≠ k", op.arity())));
            }
            if op.entries().any(|(i, o, _)| o >= dim || i.iter().any(|&j| j >= dim)) {
                return Err(Error::SpaceMismatch(format!("{at}: basis index out of range")));
            }
            if let Some((i, o)) = op.degree_violation(&deg, shift - beta.mu) {
                let names: Vec<&str> = i.iter().map(|&j| self.dga.space().name(j)).collect();
                return Err(Error::DegreeError(format!(
                    "{at}: entry {names:?} -> {} has the wrong degree",
                    self.dga.space().name(o)
                )));
            }
        }
        Ok(())
    }
}

pub(crate) fn level(e0: &Rational, key: &OpKey) -> Rational {
    &key.0.energy + e0 * Rational::from_integer((key.1 as i64).into())
}

pub(crate) fn level_order(e0: &Rational, a: &OpKey, b: &OpKey) -> std::cmp::Ordering {
    level(e0, a).cmp(&level(e0, b)).then_with(|| a.cmp(b))
}

/// `Σ_{β₁+β₂=β} Σ_{k₁+k₂=k+1} Σ_i ± outer_{k₁,β₁}(…, inner_{k₂,β₂}(…), …)`.
pub(crate) fn composite<C: Ring>(
    ctx: &AinfContext<impl Ring>,
    outer: &Table<C>,
    inner: &Table<C>,
    beta: &MonoidElement,
    k: usize,
    koszul: bool,
) -> MultiOp<C> {
    let deg = ctx.degrees();
    let mut acc = MultiOp::zero(k);
    for (b1, b2) in ctx.monoid.splittings(beta) {
        for k2 in 0..=k {
            let k1 = k + 1 - k2;
            let (Some(o), Some(inn)) = (outer.get(&(b1.clone(), k1)), inner.get(&(b2.clone(), k2))) else {
                continue;
            };
            for i in 1..=k1 {
                acc = acc.add(&o.insert_at(i, inn, &deg, koszul));
            }
        }
    }
    acc
}

/// A partial filtered A∞ structure.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AinfOperations<S = Rational> {
    ctx: AinfContext<S>,
    ops: Table<S>,
}

impl<S: Ring> AinfOperations<S> {
    /// `ops` may omit the `β₀` operations; any that are given must agree
    /// with the ones determined by the DGA.
    pub fn new(ctx: AinfContext<S>, ops: Table<S>) -> Result<Self> {
        ctx.validate_table(&ops, 2, "operation")?;
        let base = ctx.base_ops();
        let mut table = Table::new();
        for (key, op) in ops {
            if key.0.is_unit() {
                let want = base.get(&key).cloned().unwrap_or_else(|| MultiOp::zero(key.1));
                if op != want {
                    return Err(Error::PreconditionFailed(vec![format!(
                        "operation at (k={}, β₀) differs from the one fixed by the DGA",
                        key.1
                    )]));
                }
            }
            if !op.is_zero() {
                table.insert(key, op);
            }
        }
        table.extend(base);
        Ok(AinfOperations { ctx, ops: table })
    }

    pub fn context(&self) -> &AinfContext<S> {
        &self.ctx
    }

    pub fn cut(&self) -> &Rational {
        self.ctx.cut()
    }

    pub fn ops(&self) -> &Table<S> {
        &self.ops
    }

    pub fn op(&self, beta: &MonoidElement, k: usize) -> Option<&MultiOp<S>> {
        self.ops.get(&(beta.clone(), k))
    }

    /// Operations with `E(β) > 0`.
    pub fn positive_ops(&self) -> impl Iterator<Item = (&OpKey, &MultiOp<S>)> {
        self.ops.iter().filter(|(k, _)| !k.0.is_unit())
    }

    pub fn energy_cut(&self, e: &Rational) -> Result<Self> {
        if e > self.cut() {
            return Err(Error::CutRaiseError {
                cut: format_rational(self.cut()),
                requested: format_rational(e),
            });
        }
        let ctx = self.ctx.with_cut(e.clone())?;
        let ops = self
            .ops
            .iter()
            .filter(|(k, _)| ctx.contains(k))
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect();
        Ok(AinfOperations { ctx, ops })
    }
}

/// Left-hand side of the A∞ relation at `(k, β)`, on all basis tuples.
pub fn ainf_defect<S: Ring>(a: &AinfOperations<S>, k: usize, beta: &MonoidElement) -> MultiOp<S> {
    composite(&a.ctx, &a.ops, &a.ops, beta, k, true)
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OpDefect<S = Rational> {
    pub beta: MonoidElement,
    pub k: usize,
    pub defect: MultiOp<S>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AinfReport<S = Rational> {
    pub relation: &'static str,
    pub defects: Vec<OpDefect<S>>,
}

impl<S> AinfReport<S> {
    pub fn passed(&self) -> bool {
        self.defects.is_empty()
    }
}

impl<S: Ring> fmt::Display for AinfReport<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return write!(f, "{}: pass", self.relation);
        }
        write!(f, "{}: {} defect(s)", self.relation, self.defects.len())?;
        for d in &self.defects {
            write!(f, "\n  at (k={}, β={}): {} nonzero entries", d.k, d.beta, d.defect.len())?;
        }
        Ok(())
    }
}

pub const AINF_RELATION: &str = "A-infinity relation";

/// The A∞ relation at every `(β, k)` with `E(β) + k·e0 ≤ E0`.
pub fn check_partial_ainf<S: Ring>(a: &AinfOperations<S>) -> AinfReport<S> {
    let defects = a
        .ctx
        .keys()
        .iter()
        .filter_map(|(beta, k)| {
            let d = ainf_defect(a, *k, beta);
            (!d.is_zero()).then(|| OpDefect {
                beta: beta.clone(),
                k: *k,
                defect: d,
            })
        })
        .collect();
    AinfReport {
        relation: AINF_RELATION,
        defects,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    fn exterior2() -> Dga<Rational> {
        // Λ(x, y): 1, x, y, xy
        let space = GradedSpace::new(vec![
            ("1".into(), 0),
            ("x".into(), 1),
            ("y".into(), 1),
            ("xy".into(), 2),
        ])
        .unwrap();
        let p = MultiOp::from_entries(
            2,
            [
                (vec![0, 0], 0, q(1)),
                (vec![0, 1], 1, q(1)),
                (vec![1, 0], 1, q(1)),
                (vec![0, 2], 2, q(1)),
                (vec![2, 0], 2, q(1)),
                (vec![0, 3], 3, q(1)),
                (vec![3, 0], 3, q(1)),
                (vec![1, 2], 3, q(1)),
                (vec![2, 1], 3, q(-1)),
            ],
        );
        Dga::new(CochainComplex::trivial(space), p).unwrap()
    }

    #[test]
    fn dga_axioms_are_checked() {
        let good = exterior2();
        let mut bad = good.product().clone();
        bad.remove(&[2, 1], 3);
        let err = Dga::new(good.complex().clone(), bad).unwrap_err();
        assert!(matches!(err, Error::PreconditionFailed(v) if v.iter().any(|m| m.contains("commutative"))));
    }

    #[test]
    fn classical_part_is_ainf() {
        for n in [2, 3] {
            let ctx = AinfContext::new(Arc::new(exterior2()), n, DiscreteSubmonoid::trivial(), q(3), q(1)).unwrap();
            let a = AinfOperations::new(ctx, Table::new()).unwrap();
            assert!(check_partial_ainf(&a).passed());
        }
    }
}
