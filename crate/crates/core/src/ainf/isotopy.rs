//! Pseudo-isotopies as piecewise-polynomial families in `t`.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::novikov::MonoidElement;
use crate::poly::Poly;
use crate::scalar::{format_rational, Rational, Scalar};

use super::{check_partial_ainf, composite, AinfContext, AinfOperations, MultiOp, OpKey, Table};

/// One polynomial piece of a family: `𝔪^t` and `𝔠^t` on `[breaks[p], breaks[p+1]]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IsotopyPiece<S> {
    pub m: Table<Poly<S>>,
    pub c: Table<Poly<S>>,
}

/// A family `(𝔪^t, 𝔠^t)` over `[a, b]`; `𝔠_{k,β}` has shifted degree `−μ(β)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PseudoIsotopy<S = Rational> {
    ctx: AinfContext<S>,
    breaks: Vec<S>,
    pieces: Vec<IsotopyPiece<S>>,
}

fn lift<S: Scalar>(op: &MultiOp<S>) -> MultiOp<Poly<S>> {
    op.map(|c| Poly::constant(c.clone()))
}

fn eval_op<S: Scalar>(op: &MultiOp<Poly<S>>, t: &S) -> MultiOp<S> {
    op.map(|p| p.eval(t))
}

fn eval_table<S: Scalar>(table: &Table<Poly<S>>, t: &S) -> Table<S> {
    table
        .iter()
        .map(|(k, op)| (k.clone(), eval_op(op, t)))
        .filter(|(_, op)| !op.is_zero())
        .collect()
}

impl<S: Scalar + PartialOrd> PseudoIsotopy<S> {
    /// Missing `β₀` parts of `𝔪^t` are filled in from the DGA; given ones
    /// must be the constant operations it determines.
    pub fn new(ctx: AinfContext<S>, breaks: Vec<S>, pieces: Vec<IsotopyPiece<S>>) -> Result<Self> {
        if breaks.len() < 2 || breaks.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::OutOfDomain("breakpoints must be strictly increasing, at least two".into()));
        }
        if pieces.len() + 1 != breaks.len() {
            return Err(Error::SpaceMismatch(format!(
                "{} pieces for {} breakpoints",
                pieces.len(),
                breaks.len()
            )));
        }
        let base: Table<Poly<S>> = ctx.base_ops().iter().map(|(k, v)| (k.clone(), lift(v))).collect();
        let mut out = Vec::with_capacity(pieces.len());
        for mut piece in pieces {
            ctx.validate_table(&piece.m, 2, "m^t")?;
            ctx.validate_table(&piece.c, 1, "c^t")?;
            piece.m.retain(|_, v| !v.is_zero());
            piece.c.retain(|_, v| !v.is_zero());
            for (key, op) in &piece.m {
                if key.0.is_unit() && base.get(key) != Some(op) {
                    return Err(Error::PreconditionFailed(vec![format!(
                        "m^t at (k={}, β₀) differs from the one fixed by the DGA",
                        key.1
                    )]));
                }
            }
            piece.m.extend(base.clone());
            out.push(piece);
        }
        Ok(PseudoIsotopy {
            ctx,
            breaks,
            pieces: out,
        })
    }

    /// `𝔪^t = a` for all `t`, `𝔠 = 0`.
    pub fn constant(a: &AinfOperations<S>, breaks: Vec<S>) -> Result<Self> {
        let m: Table<Poly<S>> = a.ops().iter().map(|(k, v)| (k.clone(), lift(v))).collect();
        let n = breaks.len().saturating_sub(1);
        let pieces = vec![
            IsotopyPiece {
                m,
                c: Table::new()
            };
            n
        ];
        PseudoIsotopy::new(a.context().clone(), breaks, pieces)
    }

    pub fn context(&self) -> &AinfContext<S> {
        &self.ctx
    }

    pub fn cut(&self) -> &Rational {
        self.ctx.cut()
    }

    pub fn breaks(&self) -> &[S] {
        &self.breaks
    }

    pub fn pieces(&self) -> &[IsotopyPiece<S>] {
        &self.pieces
    }

    pub fn domain(&self) -> (&S, &S) {
        (&self.breaks[0], &self.breaks[self.breaks.len() - 1])
    }

    /// Index of the first piece containing `t`.
    pub fn piece_of(&self, t: &S) -> Option<usize> {
        (0..self.pieces.len()).find(|&p| &self.breaks[p] <= t && t <= &self.breaks[p + 1])
    }

    pub fn energy_cut(&self, e: &Rational) -> Result<Self> {
        if e > self.cut() {
            return Err(Error::CutRaiseError {
                cut: format_rational(self.cut()),
                requested: format_rational(e),
            });
        }
        let ctx = self.ctx.with_cut(e.clone())?;
        let keep = |t: &Table<Poly<S>>| -> Table<Poly<S>> {
            t.iter()
                .filter(|(k, _)| ctx.contains(k))
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect()
        };
        let pieces = self
            .pieces
            .iter()
            .map(|p| IsotopyPiece {
                m: keep(&p.m),
                c: keep(&p.c),
            })
            .collect();
        Ok(PseudoIsotopy {
            ctx,
            breaks: self.breaks.clone(),
            pieces,
        })
    }
}

/// `d𝔪^t/dt + Σ(−1)^* 𝔠^t(…, 𝔪^t(…), …) − Σ 𝔪^t(…, 𝔠^t(…), …)` at `(k, β)`,
/// one polynomial family per piece.
pub fn isotopy_defect<S: Scalar + PartialOrd>(
    iso: &PseudoIsotopy<S>,
    k: usize,
    beta: &MonoidElement,
) -> Vec<MultiOp<Poly<S>>> {
    iso.pieces
        .iter()
        .map(|p| piece_residual(&iso.ctx, p, k, beta))
        .collect()
}

fn piece_residual<S: Scalar>(ctx: &AinfContext<S>, p: &IsotopyPiece<S>, k: usize, beta: &MonoidElement) -> MultiOp<Poly<S>> {
    let dm = p
        .m
        .get(&(beta.clone(), k))
        .map(|op| op.map(|q| q.derivative()))
        .unwrap_or_else(|| MultiOp::zero(k));
    dm.add(&composite(ctx, &p.c, &p.m, beta, k, true))
        .sub(&composite(ctx, &p.m, &p.c, beta, k, false))
}

/// Failures of a pseudo-isotopy check, each localized.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct IsotopyReport {
    /// `(piece, β, k)` where the A∞ relation fails for some `t` in the piece
    pub ainf: Vec<(usize, MonoidElement, usize)>,
    /// `(piece, β, k)` where the isotopy equation has a nonzero residual
    pub ode: Vec<(usize, MonoidElement, usize)>,
    /// `(β, k)` with `E(β) ≤ 0` and `𝔠 ≠ 0`
    pub c_at_zero_energy: Vec<(MonoidElement, usize)>,
    /// `(breakpoint index, family, β, k)` where the family jumps
    pub jumps: Vec<(usize, &'static str, MonoidElement, usize)>,
}

impl IsotopyReport {
    pub fn passed(&self) -> bool {
        self.ainf.is_empty() && self.ode.is_empty() && self.c_at_zero_energy.is_empty() && self.jumps.is_empty()
    }
}

impl fmt::Display for IsotopyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return write!(f, "pseudo-isotopy: pass");
        }
        write!(f, "pseudo-isotopy: fail")?;
        for (p, b, k) in &self.ainf {
            write!(f, "\n  A-infinity relation fails on piece {p} at (k={k}, β={b})")?;
        }
        for (p, b, k) in &self.ode {
            write!(f, "\n  isotopy equation fails on piece {p} at (k={k}, β={b})")?;
        }
        for (b, k) in &self.c_at_zero_energy {
            write!(f, "\n  c nonzero at zero energy (k={k}, β={b})")?;
        }
        for (j, fam, b, k) in &self.jumps {
            write!(f, "\n  {fam} jumps at breakpoint {j} (k={k}, β={b})")?;
        }
        Ok(())
    }
}

/// Per-`t` A∞ relation and the isotopy equation, both symbolically on each
/// piece, vanishing of `𝔠` at zero energy, and continuity at breakpoints.
pub fn check_pseudoisotopy<S: Scalar + PartialOrd>(iso: &PseudoIsotopy<S>) -> IsotopyReport {
    let mut rep = IsotopyReport::default();
    for (pi, p) in iso.pieces.iter().enumerate() {
        for (beta, k) in iso.ctx.keys() {
            if !composite(&iso.ctx, &p.m, &p.m, beta, *k, true).is_zero() {
                rep.ainf.push((pi, beta.clone(), *k));
            }
            if !piece_residual(&iso.ctx, p, *k, beta).is_zero() {
                rep.ode.push((pi, beta.clone(), *k));
            }
        }
    }
    let mut zero_c = BTreeSet::new();
    for p in &iso.pieces {
        for key in p.c.keys() {
            if key.0.energy <= Rational::from_integer(0.into()) {
                zero_c.insert(key.clone());
            }
        }
    }
    rep.c_at_zero_energy = zero_c.into_iter().collect();
    for j in 1..iso.pieces.len() {
        let t = &iso.breaks[j];
        let (l, r) = (&iso.pieces[j - 1], &iso.pieces[j]);
        for (fam, lt, rt) in [("m", &l.m, &r.m), ("c", &l.c, &r.c)] {
            if eval_table(lt, t) != eval_table(rt, t) {
                let keys: BTreeSet<&OpKey> = lt.keys().chain(rt.keys()).collect();
                for key in keys {
                    let a = lt.get(key).map(|o| eval_op(o, t)).unwrap_or_else(|| MultiOp::zero(key.1));
                    let b = rt.get(key).map(|o| eval_op(o, t)).unwrap_or_else(|| MultiOp::zero(key.1));
                    if a != b {
                        rep.jumps.push((j, fam, key.0.clone(), key.1));
                    }
                }
            }
        }
    }
    rep
}

/// `𝔪^{t*}` as a partial A∞ structure.
pub fn restrict_endpoint<S: Scalar + PartialOrd>(iso: &PseudoIsotopy<S>, t: &S) -> Result<AinfOperations<S>> {
    let p = iso.piece_of(t).ok_or_else(|| {
        let (a, b) = iso.domain();
        Error::OutOfDomain(format!("t = {t} outside [{a}, {b}]"))
    })?;
    AinfOperations::new(iso.ctx.clone(), eval_table(&iso.pieces[p].m, t))
}

/// Extends `m0` and `iso` from the cut of `iso` to the cut of `m1`.
///
/// For each new `(k, β)`, in increasing `E(β) + k·e0` and then `(β, k)`,
/// `𝔠_{k,β} = 0` and `𝔪^t_{k,β}` is integrated backward from
/// `𝔪^b_{k,β} = (m1)_{k,β}` at the right end `b` of the domain. The left end
/// of the promoted family is the promoted `m0`.
pub fn promote_via_isotopy<S: Scalar + PartialOrd>(
    m0: &AinfOperations<S>,
    m1: &AinfOperations<S>,
    iso: &PseudoIsotopy<S>,
) -> Result<(AinfOperations<S>, PseudoIsotopy<S>)> {
    let mut problems = Vec::new();
    if !m0.context().compatible(iso.context()) || !m1.context().compatible(iso.context()) {
        return Err(Error::SpaceMismatch(
            "structures and isotopy must share the algebra, dim L, monoid and e0".into(),
        ));
    }
    let e0 = iso.cut().clone();
    let e1 = m1.cut().clone();
    if m0.cut() != &e0 {
        problems.push(format!(
            "m0 has cut {} but the isotopy has cut {}",
            format_rational(m0.cut()),
            format_rational(&e0)
        ));
    }
    if e1 < e0 {
        return Err(Error::CutRaiseError {
            cut: format_rational(&e1),
            requested: format_rational(&e0),
        });
    }
    let rep = check_pseudoisotopy(iso);
    if !rep.passed() {
        problems.push(format!("input isotopy fails: {rep}"));
    }
    let m1_rep = check_partial_ainf(m1);
    if !m1_rep.passed() {
        problems.push(format!("m1 fails: {m1_rep}"));
    }
    let (a, b) = iso.domain();
    if problems.is_empty() {
        if &restrict_endpoint(iso, a)? != m0 {
            problems.push("the isotopy does not start at m0".into());
        }
        if restrict_endpoint(iso, b)? != m1.energy_cut(&e0)? {
            problems.push("the isotopy does not end at the energy cut of m1".into());
        }
    }
    if !problems.is_empty() {
        return Err(Error::PreconditionFailed(problems));
    }

    let ctx = iso.ctx.with_cut(e1)?;
    let mut pieces = iso.pieces.clone();
    let new_keys: Vec<OpKey> = ctx.keys().iter().filter(|k| !iso.ctx.contains(k)).cloned().collect();
    for key in &new_keys {
        if key.0.is_unit() {
            // β₀ operations are fixed by the DGA for all t
            if let Some(op) = ctx.base_ops().get(key) {
                for p in &mut pieces {
                    p.m.insert(key.clone(), lift(op));
                }
            }
            continue;
        }
        let (beta, k) = key;
        let mut value = m1.op(beta, *k).cloned().unwrap_or_else(|| MultiOp::zero(*k));
        for pi in (0..pieces.len()).rev() {
            let hi = iso.breaks[pi + 1].clone();
            let lo = iso.breaks[pi].clone();
            // d𝔪/dt = Σ 𝔪(…𝔠…) − Σ ±𝔠(…𝔪…), all terms already known
            let rhs = composite(&ctx, &pieces[pi].m, &pieces[pi].c, beta, *k, false)
                .sub(&composite(&ctx, &pieces[pi].c, &pieces[pi].m, beta, *k, true));
            let fam = lift(&value).add(&rhs.map(|p| p.integral_from(&hi)));
            value = eval_op(&fam, &lo);
            if !fam.is_zero() {
                pieces[pi].m.insert(key.clone(), fam);
            }
        }
    }
    let out = PseudoIsotopy {
        ctx,
        breaks: iso.breaks.clone(),
        pieces,
    };
    let m0p = restrict_endpoint(&out, a)?;
    Ok((m0p, out))
}

/// Whether `𝔠 ≡ 0` and `d𝔪/dt ≡ 0` on `[−τ, 0]` and `[1, 1 + τ]`.
pub fn collared_check<S: Scalar + PartialOrd>(iso: &PseudoIsotopy<S>, tau: &S) -> Result<bool> {
    let zero = S::zero();
    let one = S::one();
    if tau <= &zero {
        return Err(Error::OutOfDomain(format!("collar width {tau} must be positive")));
    }
    let lo = zero.clone() - tau.clone();
    let hi = one.clone() + tau.clone();
    let (a, b) = iso.domain();
    if a > &lo || b < &hi {
        return Err(Error::OutOfDomain(format!("domain [{a}, {b}] does not contain [{lo}, {hi}]")));
    }
    let collars = [(lo, zero), (one, hi)];
    for (pi, p) in iso.pieces.iter().enumerate() {
        let (s, e) = (&iso.breaks[pi], &iso.breaks[pi + 1]);
        // a polynomial vanishing on an interval of positive length vanishes identically
        let touches = collars.iter().any(|(cl, ch)| s < ch && e > cl);
        if !touches {
            continue;
        }
        if p.c.values().any(|op| !op.is_zero()) {
            return Ok(false);
        }
        if p.m.values().any(|op| op.entries().any(|(_, _, q)| !q.is_constant())) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Agreement of a promoted stage with an earlier version of itself.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LimitCertificate {
    pub stage: usize,
    pub lower_cut: Rational,
    pub upper_cut: Rational,
    pub agrees: bool,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AinfLimit<S = Rational> {
    /// the first stage promoted to the last cut
    pub structure: AinfOperations<S>,
    /// every stage promoted to the last cut
    pub stages: Vec<AinfOperations<S>>,
    /// the connecting isotopies promoted to the last cut
    pub isotopies: Vec<PseudoIsotopy<S>>,
    pub certificates: Vec<LimitCertificate>,
}

impl<S> AinfLimit<S> {
    pub fn all_agree(&self) -> bool {
        self.certificates.iter().all(|c| c.agrees)
    }
}

/// Tower `stages[n]` at increasing cuts `E^n`, with `isotopies[n]` at cut
/// `E^n` from `stages[n]` to the cut of `stages[n+1]`. Each round promotes all
/// earlier stages and isotopies to the next cut, from the top down.
pub fn homotopy_limit_ainf<S: Scalar + PartialOrd>(
    stages: &[AinfOperations<S>],
    isotopies: &[PseudoIsotopy<S>],
) -> Result<AinfLimit<S>> {
    if stages.is_empty() || isotopies.len() + 1 != stages.len() {
        return Err(Error::PreconditionFailed(vec![format!(
            "{} stages need {} isotopies, got {}",
            stages.len(),
            stages.len().saturating_sub(1),
            isotopies.len()
        )]));
    }
    if stages.windows(2).any(|w| w[0].cut() >= w[1].cut()) {
        return Err(Error::PreconditionFailed(vec!["cuts must increase strictly".into()]));
    }
    let mut history: Vec<Vec<AinfOperations<S>>> = vec![vec![stages[0].clone()]];
    let mut cur_iso: Vec<PseudoIsotopy<S>> = Vec::new();
    for n in 1..stages.len() {
        history.push(vec![stages[n].clone()]);
        let mut target = stages[n].clone();
        let mut next_iso = vec![None; n];
        for i in (0..n).rev() {
            let iso = if i == n - 1 { &isotopies[i] } else { &cur_iso[i] };
            let source = history[i].last().expect("nonempty history");
            let (m0p, isop) = promote_via_isotopy(source, &target, iso).map_err(|e| e.at_stage(i))?;
            history[i].push(m0p.clone());
            next_iso[i] = Some(isop);
            target = m0p;
        }
        cur_iso = next_iso.into_iter().map(|x| x.expect("filled")).collect();
    }
    let mut certificates = Vec::new();
    for (i, versions) in history.iter().enumerate() {
        for (a, lower) in versions.iter().enumerate() {
            for upper in &versions[a + 1..] {
                certificates.push(LimitCertificate {
                    stage: i,
                    lower_cut: lower.cut().clone(),
                    upper_cut: upper.cut().clone(),
                    agrees: upper.energy_cut(lower.cut())? == *lower,
                });
            }
        }
    }
    let last: Vec<AinfOperations<S>> = history.iter().map(|v| v.last().expect("nonempty").clone()).collect();
    Ok(AinfLimit {
        structure: last[0].clone(),
        stages: last,
        isotopies: cur_iso,
        certificates,
    })
}
