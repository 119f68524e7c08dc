//! Promotion of partial structures to a higher energy cut level.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::{Certificate, Error, Result};
use crate::gradecx::{hom_complex, hom_unflatten, hom_vector, solve_primitive, Primitive};
use crate::matrix::Matrix;
use num_traits::Zero;

use crate::scalar::{format_rational, Rational, Ring, Scalar};

use super::{
    check_cochain_map, check_homotopy, commutator_residual, compose_maps, gap, Blocks,
    CriticalData, FilteredMap, PartialComplex, PartialHomotopy, PartialMap,
};

/// How the free cocycle in a complex promotion is fixed.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum CocycleChoice {
    /// New connecting map conjugated from the target, new map entry zero.
    #[default]
    Minimal,
    /// Connecting map from a primitive of the obstruction first, then the map entry.
    Primitive,
}

enum Solved<S> {
    Exact(Matrix<S>),
    NotExact(Certificate),
}

/// Solves `δX = −r` in `Hom(total(s), total(t))`.
fn solve_entry<S: Scalar>(
    tgt: &CriticalData<S>,
    t: usize,
    src: &CriticalData<S>,
    s: usize,
    r: &Matrix<S>,
    what: &str,
) -> Result<Solved<S>> {
    if r.is_zero() {
        return Ok(Solved::Exact(Matrix::zeros(r.rows(), r.cols())));
    }
    let hom = hom_complex(&src.total_complex(s), &tgt.total_complex(t));
    let y = hom_vector(&-r);
    let p = solve_primitive(&hom, &y)?;
    Ok(match p {
        Primitive::Exact(x) => Solved::Exact(hom_unflatten(&x, r.rows(), r.cols())),
        Primitive::NotExact(_) => {
            let loc = format!(
                "{what} {} <- {} (gap {})",
                tgt.label(t).id,
                src.label(s).id,
                format_rational(&gap(tgt, t, src, s))
            );
            Solved::NotExact(p.certificate(hom.space(), &loc, &y).expect("not exact"))
        }
    })
}

fn obstructed(c: Certificate) -> Error {
    Error::PromotionObstructed {
        stage: None,
        certificate: Box::new(c),
    }
}

fn pairs_in<S: Ring>(tgt: &CriticalData<S>, src: &CriticalData<S>, lo: &Rational, hi: &Rational) -> Vec<(Rational, usize, usize)> {
    let mut v = Vec::new();
    for t in 0..tgt.len() {
        for s in 0..src.len() {
            let g = gap(tgt, t, src, s);
            if &g > lo && &g <= hi {
                v.push((g, t, s));
            }
        }
    }
    v.sort();
    v
}

fn block_entries<S: Ring>(b: &Blocks<S>, keep: impl Fn(usize, usize) -> bool) -> Vec<(usize, usize, Matrix<S>)> {
    b.iter()
        .filter(|((t, s), _)| keep(*t, *s))
        .map(|((t, s), m)| (*t, *s, m.clone()))
        .collect()
}

/// Extends `x1` to the cut of `x2` together with the unipotent map `psi: x1 → x2`.
pub fn promote_complex_with_map<S: Scalar>(
    x1: &PartialComplex<S>,
    x2: &PartialComplex<S>,
    psi: &PartialMap<S>,
    choice: CocycleChoice,
) -> Result<(PartialComplex<S>, PartialMap<S>)> {
    let cd = x1.critical().clone();
    if x2.critical() != &cd {
        return Err(Error::SpaceMismatch("complexes have different critical data".into()));
    }
    let mut failed = Vec::new();
    if !psi.is_unipotent() {
        failed.push("map is not unipotent of loss 0".to_string());
    }
    if psi.source().as_ref() != x1 || psi.cut() != x1.cut() {
        failed.push("map source is not the complex being promoted".to_string());
    }
    if psi.target().critical() != &cd || psi.target().energy_cut(psi.cut())? != x2.energy_cut(psi.cut())? {
        failed.push("map target does not agree with the reference complex".to_string());
    }
    if !failed.is_empty() {
        return Err(Error::PreconditionFailed(failed));
    }
    let (e1, e2) = (x1.cut().clone(), x2.cut().clone());
    if e2 < e1 {
        return Err(Error::InvalidCutLevel(format!(
            "target level {} below {}",
            format_rational(&e2),
            format_rational(&e1)
        )));
    }

    let d2 = x2.dhat();
    let mut d1 = x1.dhat();
    let mut pb = psi.blocks();
    for (_, t, s) in pairs_in(&cd, &cd, &e1, &e2) {
        let (rows, cols) = (cd.dim(t), cd.dim(s));
        // chain residual with both new entries zero: m² + b
        let c0 = commutator_residual(&d2, &pb, &d1, 0, None, t, s, rows, cols);
        let complex_res = |d: &Blocks<S>| d.product_at(d, t, s, rows, cols);

        let mut done = false;
        if choice == CocycleChoice::Minimal {
            let mut trial = d1.clone();
            trial.insert(t, s, c0.clone());
            if complex_res(&trial).is_zero() {
                d1 = trial;
                done = true;
            }
        }
        if done {
            continue;
        }
        let o = complex_res(&d1);
        let m = match solve_entry(&cd, t, &cd, s, &o, "complex obstruction at")? {
            Solved::Exact(m) => m,
            Solved::NotExact(c) => return Err(obstructed(c)),
        };
        let c = &c0 - &m;
        match solve_entry(&cd, t, &cd, s, &c, "map obstruction at")? {
            Solved::Exact(y) => {
                d1.insert(t, s, m);
                pb.insert(t, s, y);
            }
            Solved::NotExact(cert) => {
                let mut trial = d1.clone();
                trial.insert(t, s, c0.clone());
                if choice == CocycleChoice::Primitive && complex_res(&trial).is_zero() {
                    d1 = trial;
                } else {
                    return Err(obstructed(cert));
                }
            }
        }
    }

    let maps = block_entries(&d1, |p, m| p != m && gap(&cd, p, &cd, m) > Rational::zero());
    let x1p = Arc::new(PartialComplex::new(cd.clone(), e2.clone(), maps)?);
    let entries = block_entries(&pb, |t, s| gap(&cd, t, &cd, s) > Rational::zero());
    let psip = FilteredMap::new(x1p.clone(), Arc::new(x2.clone()), e2, Rational::zero(), 0, true, entries)?;
    Ok((x1p.as_ref().clone(), psip))
}

/// Homotopy-commutative square
///
/// ```text
///   F'1 --psi21_prime--> F'2
///    ^                    ^
///   psi1                 psi2
///    |                    |
///   F1  ----psi21----->  F2
/// ```
///
/// with `h` a homotopy from `psi21_prime ∘ psi1` to `psi2 ∘ psi21`.
#[derive(Clone, Debug)]
pub struct MapSquare<S = Rational> {
    pub psi21: PartialMap<S>,
    pub psi21_prime: PartialMap<S>,
    pub psi1: PartialMap<S>,
    pub psi2: PartialMap<S>,
    pub h: PartialHomotopy<S>,
}

fn same_complex<S: Scalar>(a: &PartialComplex<S>, b: &PartialComplex<S>) -> bool {
    a == b
}

impl<S: Scalar> MapSquare<S> {
    /// Conditions (i)–(iv) of the square; returns the failed ones.
    pub fn preconditions(&self) -> Vec<String> {
        let mut f = Vec::new();
        let e2 = self.psi2.cut();
        let e1 = self.psi1.cut();
        let c = self.psi1.loss();
        let structure = same_complex(self.psi21.source(), self.psi1.source())
            && same_complex(self.psi21.target(), self.psi2.source())
            && same_complex(self.psi1.target(), self.psi21_prime.source())
            && same_complex(self.psi2.target(), self.psi21_prime.target());
        if !structure {
            f.push("(structure) the four maps do not form a square".into());
            return f;
        }
        for x in [self.psi21.source(), self.psi21.target(), self.psi21_prime.source(), self.psi21_prime.target()] {
            if x.cut() != e2 {
                f.push("(structure) complexes are not at the level of the right-hand map".into());
                return f;
            }
        }
        let i_ok = [&self.psi21, &self.psi21_prime]
            .iter()
            .all(|m| m.is_unipotent() && m.cut() == e2 && check_cochain_map(m).passed());
        if !i_ok {
            f.push("(i) horizontal maps must be unipotent loss-0 cochain maps at the top level".into());
        }
        if self.psi2.loss() != c || self.psi2.degree() != 0 || !check_cochain_map(&self.psi2).passed() {
            f.push("(ii) right-hand map must be a cochain map with the same loss at the top level".into());
        }
        if e1 > e2 || self.psi1.degree() != 0 || !check_cochain_map(&self.psi1).passed() {
            f.push("(iii) left-hand map must be a cochain map below the top level".into());
        }
        let iv = (|| -> Result<bool> {
            let from = compose_maps(&self.psi1, &self.psi21_prime)?;
            let to = compose_maps(&self.psi21, &self.psi2)?.energy_cut(e1)?;
            Ok(self.h.cut() == e1
                && self.h.from_map().same_data(&from)
                && self.h.to_map().same_data(&to)
                && check_homotopy(&self.h).passed())
        })()
        .unwrap_or(false);
        if !iv {
            f.push("(iv) square must commute up to the given homotopy".into());
        }
        f
    }
}

/// Extends `psi1` and `h` of the square to the level of `psi2`.
pub fn promote_map<S: Scalar>(sq: &MapSquare<S>) -> Result<(PartialMap<S>, PartialHomotopy<S>)> {
    let failed = sq.preconditions();
    if !failed.is_empty() {
        return Err(Error::PreconditionFailed(failed));
    }
    let e1 = sq.psi1.cut().clone();
    let e2 = sq.psi2.cut().clone();
    let c = sq.psi1.loss().clone();
    if e1 == e2 {
        return Ok((sq.psi1.clone(), sq.h.clone()));
    }
    let f1 = sq.psi1.source().clone();
    let f1p = sq.psi1.target().clone();
    let f2p = sq.psi2.target().clone();
    let (c1, c1p, c2p) = (f1.critical().clone(), f1p.critical().clone(), f2p.critical().clone());
    let (d1, d1p, d2p) = (f1.dhat(), f1p.dhat(), f2p.dhat());
    let psi21p = sq.psi21_prime.blocks();
    let fixed = sq.psi2.blocks().compose(&sq.psi21.blocks());
    let mut p1 = sq.psi1.blocks();
    let mut hb = Blocks::new();
    for (&(t, s), gm) in sq.h.entries() {
        hb.insert(t, s, gm.matrix().clone());
    }

    let (lo, hi) = (&e1 - &c, &e2 - &c);
    let psi_pairs = pairs_in(&c1p, &c1, &lo, &hi);
    let h_pairs = pairs_in(&c2p, &c1, &lo, &hi);
    let levels: BTreeSet<Rational> = psi_pairs.iter().chain(&h_pairs).map(|(g, _, _)| g.clone()).collect();
    for g in levels {
        for (_, t, s) in psi_pairs.iter().filter(|p| p.0 == g) {
            let (t, s) = (*t, *s);
            let r = commutator_residual(&d1p, &p1, &d1, 0, None, t, s, c1p.dim(t), c1.dim(s));
            match solve_entry(&c1p, t, &c1, s, &r, "map obstruction at")? {
                Solved::Exact(x) => p1.insert(t, s, x),
                Solved::NotExact(cert) => return Err(obstructed(cert)),
            }
        }
        for (_, t, s) in h_pairs.iter().filter(|p| p.0 == g) {
            let (t, s) = (*t, *s);
            let (rows, cols) = (c2p.dim(t), c1.dim(s));
            let h_res = |p1: &Blocks<S>, hb: &Blocks<S>| {
                let rhs = &fixed.get(t, s).cloned().unwrap_or_else(|| Matrix::zeros(rows, cols))
                    - &psi21p.product_at(p1, t, s, rows, cols);
                commutator_residual(&d2p, hb, &d1, -1, Some(&rhs), t, s, rows, cols)
            };
            let r = h_res(&p1, &hb);
            match solve_entry(&c2p, t, &c1, s, &r, "homotopy obstruction at")? {
                Solved::Exact(x) => hb.insert(t, s, x),
                Solved::NotExact(cert) => {
                    // absorb the class into the map entry at the matching label
                    let cur = p1.get(t, s).cloned().unwrap_or_else(|| Matrix::zeros(rows, cols));
                    let mut trial = p1.clone();
                    trial.insert(t, s, &cur - &r);
                    let map_ok = commutator_residual(&d1p, &trial, &d1, 0, None, t, s, rows, cols).is_zero();
                    if !map_ok || !h_res(&trial, &hb).is_zero() {
                        return Err(obstructed(cert));
                    }
                    p1 = trial;
                }
            }
        }
    }

    let psi1 = FilteredMap::new(f1.clone(), f1p, e2.clone(), c.clone(), 0, false, block_entries(&p1, |_, _| true))?;
    let from = compose_maps(&psi1, &sq.psi21_prime)?;
    let to = compose_maps(&sq.psi21, &sq.psi2)?;
    let h = PartialHomotopy::new(Arc::new(from), Arc::new(to), block_entries(&hb, |_, _| true))?;
    Ok((psi1, h))
}

/// Data of a homotopy between homotopies across two levels.
///
/// `psi1: F1ⁱ → F1ⁱ⁺¹` and `psi2: F2ⁱ → F2ⁱ⁺¹` are unipotent; `n*: F1 → F2`;
/// `h_ab_*` go from `na_*` to `nb_*`; `h_a`, `h_b` go from `n*_next ∘ psi1`
/// to `psi2 ∘ n*_i`; `big_h: F1ⁱ → F2ⁱ⁺¹` has degree −2 and satisfies
/// `d̂H − Hd̂ = h_b − h_a + h_ab_next ∘ psi1 − psi2 ∘ h_ab_i`.
#[derive(Clone, Debug)]
pub struct HomotopySquare<S = Rational> {
    pub psi1: PartialMap<S>,
    pub psi2: PartialMap<S>,
    pub na_i: PartialMap<S>,
    pub nb_i: PartialMap<S>,
    pub na_next: PartialMap<S>,
    pub nb_next: PartialMap<S>,
    pub h_ab_i: PartialHomotopy<S>,
    pub h_ab_next: PartialHomotopy<S>,
    pub h_a: PartialHomotopy<S>,
    pub h_b: PartialHomotopy<S>,
    pub big_h: FilteredMap<S>,
}

fn homotopy_blocks<S: Scalar>(h: &PartialHomotopy<S>) -> Blocks<S> {
    h.body().blocks()
}

impl<S: Scalar> HomotopySquare<S> {
    fn big_h_rhs(&self, h_ab_i: &Blocks<S>) -> Blocks<S> {
        homotopy_blocks(&self.h_b)
            .sub(&homotopy_blocks(&self.h_a))
            .add(&homotopy_blocks(&self.h_ab_next).compose(&self.psi1.blocks()))
            .sub(&self.psi2.blocks().compose(h_ab_i))
    }

    /// Residual blocks of the relation for `big_h` on its relation domain.
    pub fn big_h_defects(&self) -> Vec<super::Defect<S>> {
        let rhs = self.big_h_rhs(&homotopy_blocks(&self.h_ab_i));
        let f = &self.big_h;
        let (sc, tc) = (f.source().critical(), f.target().critical());
        let (d2, d1, hb) = (f.target().dhat(), f.source().dhat(), f.blocks());
        let res = f
            .domain_pairs()
            .into_iter()
            .map(|(t, s)| {
                ((t, s), commutator_residual(&d2, &hb, &d1, -2, rhs.get(t, s), t, s, tc.dim(t), sc.dim(s)))
            })
            .collect();
        super::defect_list(tc, sc, res)
    }

    /// Conditions (1)–(4) of the situation plus the relation for `big_h`.
    pub fn preconditions(&self) -> Vec<String> {
        let mut f = Vec::new();
        let top = self.psi1.cut().clone();
        let low = self.h_ab_i.cut().clone();
        let c = self.na_i.loss().clone();
        let f1i = self.psi1.source();
        let f1n = self.psi1.target();
        let f2i = self.psi2.source();
        let f2n = self.psi2.target();
        let shape = [&self.na_i, &self.nb_i].iter().all(|n| n.source() == f1i && n.target() == f2i)
            && [&self.na_next, &self.nb_next].iter().all(|n| n.source() == f1n && n.target() == f2n)
            && self.big_h.source() == f1i
            && self.big_h.target() == f2n;
        if !shape {
            f.push("(structure) maps do not fit the two-level diagram".into());
            return f;
        }
        let ok1 = [&self.psi1, &self.psi2]
            .iter()
            .all(|p| p.is_unipotent() && p.cut() == &top && check_cochain_map(p).passed())
            && [f1i, f1n, f2i, f2n].iter().all(|x| x.cut() == &top);
        if !ok1 {
            f.push("(1) level maps must be unipotent loss-0 cochain maps at the top level".into());
        }
        let ok2 = [&self.na_i, &self.nb_i, &self.na_next, &self.nb_next]
            .iter()
            .all(|n| n.cut() == &top && n.loss() == &c && n.degree() == 0 && check_cochain_map(n).passed());
        if !ok2 {
            f.push("(2) vertical maps must be cochain maps with a common loss at the top level".into());
        }
        let ok3 = (|| -> Result<bool> {
            Ok(low <= top
                && self.h_ab_i.from_map().same_data(&self.na_i.energy_cut(&low)?)
                && self.h_ab_i.to_map().same_data(&self.nb_i.energy_cut(&low)?)
                && self.h_ab_next.cut() == &top
                && self.h_ab_next.from_map().same_data(&self.na_next)
                && self.h_ab_next.to_map().same_data(&self.nb_next)
                && check_homotopy(&self.h_ab_i).passed()
                && check_homotopy(&self.h_ab_next).passed())
        })()
        .unwrap_or(false);
        if !ok3 {
            f.push("(3) homotopies between the vertical maps are missing or wrong".into());
        }
        let ok4 = (|| -> Result<bool> {
            let mut ok = true;
            for (h, ni, nn) in [(&self.h_a, &self.na_i, &self.na_next), (&self.h_b, &self.nb_i, &self.nb_next)] {
                let from = compose_maps(&self.psi1, nn)?;
                let to = compose_maps(ni, &self.psi2)?;
                ok &= h.cut() == &top
                    && h.from_map().same_data(&from)
                    && h.to_map().same_data(&to)
                    && check_homotopy(h).passed();
            }
            Ok(ok)
        })()
        .unwrap_or(false);
        if !ok4 {
            f.push("(4) level homotopies for the vertical maps are missing or wrong".into());
        }
        if self.big_h.cut() != &low || self.big_h.degree() != -2 || !self.big_h_defects().is_empty() {
            f.push("(relation) homotopy of homotopies fails below the lower level".into());
        }
        f
    }
}

/// Extends `h_ab_i` and `big_h` of the data to the top level.
pub fn promote_homotopy<S: Scalar>(d: &HomotopySquare<S>) -> Result<(PartialHomotopy<S>, FilteredMap<S>)> {
    let failed = d.preconditions();
    if !failed.is_empty() {
        return Err(Error::PreconditionFailed(failed));
    }
    let low = d.h_ab_i.cut().clone();
    let top = d.psi1.cut().clone();
    if low == top {
        return Ok((d.h_ab_i.clone(), d.big_h.clone()));
    }
    let c = d.na_i.loss().clone();
    let f1i = d.psi1.source().clone();
    let f2i = d.psi2.source().clone();
    let f2n = d.psi2.target().clone();
    let (c1, c2) = (f1i.critical().clone(), f2i.critical().clone());
    let c2n = f2n.critical().clone();
    let (d1, d2i, d2n) = (f1i.dhat(), f2i.dhat(), f2n.dhat());
    let n_diff = d.nb_i.blocks().sub(&d.na_i.blocks());
    let psi2 = d.psi2.blocks();
    let h_fixed = homotopy_blocks(&d.h_b)
        .sub(&homotopy_blocks(&d.h_a))
        .add(&homotopy_blocks(&d.h_ab_next).compose(&d.psi1.blocks()));
    let mut hb = homotopy_blocks(&d.h_ab_i);
    let mut big = d.big_h.blocks();

    let (lo, hi) = (&low - &c, &top - &c);
    let h_pairs = pairs_in(&c2, &c1, &lo, &hi);
    let big_pairs = pairs_in(&c2n, &c1, &lo, &hi);
    let levels: BTreeSet<Rational> = h_pairs.iter().chain(&big_pairs).map(|(g, _, _)| g.clone()).collect();
    for g in levels {
        for (_, t, s) in h_pairs.iter().filter(|p| p.0 == g) {
            let (t, s) = (*t, *s);
            let r = commutator_residual(&d2i, &hb, &d1, -1, n_diff.get(t, s), t, s, c2.dim(t), c1.dim(s));
            match solve_entry(&c2, t, &c1, s, &r, "homotopy obstruction at")? {
                Solved::Exact(x) => hb.insert(t, s, x),
                Solved::NotExact(cert) => return Err(obstructed(cert)),
            }
        }
        for (_, t, s) in big_pairs.iter().filter(|p| p.0 == g) {
            let (t, s) = (*t, *s);
            let (rows, cols) = (c2n.dim(t), c1.dim(s));
            let big_res = |hb: &Blocks<S>, big: &Blocks<S>| {
                let rhs = &h_fixed.get(t, s).cloned().unwrap_or_else(|| Matrix::zeros(rows, cols))
                    - &psi2.product_at(hb, t, s, rows, cols);
                commutator_residual(&d2n, big, &d1, -2, Some(&rhs), t, s, rows, cols)
            };
            let r = big_res(&hb, &big);
            match solve_entry(&c2n, t, &c1, s, &r, "second homotopy obstruction at")? {
                Solved::Exact(y) => big.insert(t, s, y),
                Solved::NotExact(cert) => {
                    let cur = hb.get(t, s).cloned().unwrap_or_else(|| Matrix::zeros(rows, cols));
                    let mut trial = hb.clone();
                    trial.insert(t, s, &cur - &r);
                    let h_ok =
                        commutator_residual(&d2i, &trial, &d1, -1, n_diff.get(t, s), t, s, rows, cols).is_zero();
                    if !h_ok || !big_res(&trial, &big).is_zero() {
                        return Err(obstructed(cert));
                    }
                    hb = trial;
                }
            }
        }
    }

    let h_ab = PartialHomotopy::new(Arc::new(d.na_i.clone()), Arc::new(d.nb_i.clone()), block_entries(&hb, |_, _| true))?;
    let big_h = FilteredMap::new(f1i, f2n, top, c, -2, false, block_entries(&big, |_, _| true))?;
    Ok((h_ab, big_h))
}

/// Result of a homotopy limit with one agreement flag per stage.
#[derive(Clone, Debug)]
pub struct LimitOutput<S = Rational> {
    pub complex: PartialComplex<S>,
    pub stages: Vec<PartialComplex<S>>,
    /// `(stage, level, agrees)`: stage `k+1` cut to level `E_k` equals stage `k`
    pub certificates: Vec<(usize, Rational, bool)>,
}

impl<S> LimitOutput<S> {
    pub fn all_agree(&self) -> bool {
        self.certificates.iter().all(|c| c.2)
    }
}

/// Iterated promotion along a tower `X_1 → X_2 → …` of unipotent maps.
///
/// `maps[k]` goes from `complexes[k]` to `complexes[k+1]` at the cut of `complexes[k]`.
pub fn homotopy_limit<S: Scalar>(
    complexes: &[PartialComplex<S>],
    maps: &[PartialMap<S>],
    choice: CocycleChoice,
) -> Result<LimitOutput<S>> {
    if complexes.is_empty() {
        return Err(Error::PreconditionFailed(vec!["empty tower".into()]));
    }
    if maps.len() + 1 != complexes.len() {
        return Err(Error::PreconditionFailed(vec![format!(
            "{} complexes need {} maps, got {}",
            complexes.len(),
            complexes.len() - 1,
            maps.len()
        )]));
    }
    for w in complexes.windows(2) {
        if w[1].cut() < w[0].cut() {
            return Err(Error::InvalidCutLevel("tower levels must be non-decreasing".into()));
        }
    }
    let mut stages = vec![complexes[0].clone()];
    let mut certificates = Vec::new();
    let mut phi = maps[0].clone();
    for k in 1..complexes.len() {
        let y = stages.last().expect("nonempty").clone();
        let (yk, phik) = promote_complex_with_map(&y, &complexes[k], &phi, choice).map_err(|e| e.at_stage(k))?;
        let level = y.cut().clone();
        let agrees = yk.energy_cut(&level)? == y;
        certificates.push((k, level, agrees));
        if k < maps.len() {
            phi = compose_maps(&phik, &maps[k]).map_err(|e| e.at_stage(k))?;
        }
        stages.push(yk);
    }
    let complex = stages.last().expect("nonempty").clone();
    Ok(LimitOutput {
        complex,
        stages,
        certificates,
    })
}
