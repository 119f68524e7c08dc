//! Partial Floer-type cochain complexes over the Novikov filtration.
//!
//! Every operator is stored as blocks `(target label, source label)`. A block
//! between labels `a`, `b` implicitly carries the weight `T^{E(a)-E(b)}`, so
//! composition of blocks is plain matrix algebra.

mod blocks;
mod morse;
mod promote;
pub mod signs;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::gradecx::{CochainComplex, GradedMap, GradedSpace};
use crate::matrix::Matrix;
use crate::novikov::{DiscreteSubmonoid, MonoidElement, Novikov};
use crate::scalar::{format_rational, sign, Rational, Ring, Scalar};

pub use blocks::Blocks;
pub use morse::{morse_check, MorseKSystem, MorseReport};
pub use promote::{
    homotopy_limit, promote_complex_with_map, promote_homotopy, promote_map, CocycleChoice, HomotopySquare,
    LimitOutput, MapSquare,
};
pub use signs::{boundary_sign, fiber_swap_sign};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Label<S = Rational> {
    pub id: String,
    pub energy: Rational,
    pub mu: i64,
    pub dim_r: i64,
    pub complex: CochainComplex<S>,
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct CriticalData<S = Rational> {
    labels: Vec<Label<S>>,
}

impl<S: Ring> CriticalData<S> {
    pub fn new(labels: Vec<Label<S>>) -> Result<Self> {
        let mut ids = BTreeSet::new();
        for l in &labels {
            if !ids.insert(l.id.as_str()) {
                return Err(Error::Parse(format!("duplicate label {:?}", l.id)));
            }
            if l.dim_r < 0 {
                return Err(Error::Parse(format!("label {:?}: negative dimR", l.id)));
            }
            for (name, d) in l.complex.space().basis() {
                if *d < 0 || *d > l.dim_r {
                    return Err(Error::DegreeError(format!(
                        "label {:?}: basis {name:?} has degree {d} outside [0, {}]",
                        l.id, l.dim_r
                    )));
                }
            }
        }
        Ok(CriticalData { labels })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[Label<S>] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &Label<S> {
        &self.labels[i]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.labels.iter().position(|l| l.id == id)
    }

    pub fn space(&self, i: usize) -> &GradedSpace {
        self.labels[i].complex.space()
    }

    pub fn dim(&self, i: usize) -> usize {
        self.space(i).dim()
    }

    /// Signed differential `h ↦ (−1)^{dim R + μ + 1 + deg h} d h`.
    pub fn signed_differential(&self, i: usize) -> Matrix<S> {
        let l = &self.labels[i];
        let sp = l.complex.space();
        let mut m = Matrix::zeros(sp.dim(), sp.dim());
        for (r, c, v) in l.complex.d0().matrix().entries() {
            let s: S = sign(l.dim_r + l.mu + 1 + sp.degree(c));
            m.set(r, c, s * v.clone());
        }
        m
    }

    /// The label's complex in total degrees (form degree + μ) with the signed differential.
    pub fn total_complex(&self, i: usize) -> CochainComplex<S> {
        let sp = self.space(i).shifted(self.labels[i].mu);
        let d = self.signed_differential(i);
        CochainComplex::new(GradedMap::new(sp.clone(), sp, 1, d).expect("shift preserves degrees"))
            .expect("signed differential squares to zero")
    }
}

/// `E(target) − E(source)` for labels of two (possibly different) systems.
pub fn gap<S>(target: &CriticalData<S>, t: usize, source: &CriticalData<S>, s: usize) -> Rational {
    &target.labels[t].energy - &source.labels[s].energy
}

/// A nonzero residual of one relation at one label pair.
#[derive(Clone, PartialEq, Debug)]
pub struct Defect<S = Rational> {
    pub target: String,
    pub source: String,
    pub gap: Rational,
    pub residual: Matrix<S>,
}

#[derive(Clone, PartialEq, Debug)]
pub struct Report<S = Rational> {
    pub relation: &'static str,
    pub defects: Vec<Defect<S>>,
}

impl<S> Report<S> {
    pub fn passed(&self) -> bool {
        self.defects.is_empty()
    }
}

impl<S: Scalar> fmt::Display for Report<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return write!(f, "{}: pass", self.relation);
        }
        write!(f, "{}: {} defect(s)", self.relation, self.defects.len())?;
        for d in &self.defects {
            write!(f, "\n  {} <- {} (gap {}): {} nonzero entries", d.target, d.source, format_rational(&d.gap), d.residual.nnz())?;
        }
        Ok(())
    }
}

/// Partial cochain complex at an energy cut level.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PartialComplex<S = Rational> {
    critical: Arc<CriticalData<S>>,
    cut: Rational,
    maps: BTreeMap<(usize, usize), GradedMap<S>>,
}

impl<S: Ring> PartialComplex<S> {
    /// `maps` holds `(plus, minus, matrix)` with the matrix sending the `minus`
    /// complex to the `plus` complex.
    pub fn new(critical: Arc<CriticalData<S>>, cut: Rational, maps: Vec<(usize, usize, Matrix<S>)>) -> Result<Self> {
        if cut < Rational::zero() {
            return Err(Error::InvalidCutLevel(format_rational(&cut)));
        }
        let mut x = PartialComplex {
            critical,
            cut,
            maps: BTreeMap::new(),
        };
        for (p, m, mat) in maps {
            x.insert(p, m, mat)?;
        }
        Ok(x)
    }

    pub fn empty(critical: Arc<CriticalData<S>>, cut: Rational) -> Result<Self> {
        Self::new(critical, cut, Vec::new())
    }

    pub(crate) fn insert(&mut self, plus: usize, minus: usize, mat: Matrix<S>) -> Result<()> {
        let cd = &self.critical;
        if plus >= cd.len() || minus >= cd.len() {
            return Err(Error::Parse(format!("label index out of range in map {plus} <- {minus}")));
        }
        let g = gap(cd, plus, cd, minus);
        if g <= Rational::zero() || g > self.cut {
            return Err(Error::Parse(format!(
                "map {} <- {} has gap {} outside (0, {}]",
                cd.label(plus).id,
                cd.label(minus).id,
                format_rational(&g),
                format_rational(&self.cut)
            )));
        }
        let deg = 1 - cd.label(plus).mu + cd.label(minus).mu;
        let gm = GradedMap::new(cd.space(minus).clone(), cd.space(plus).clone(), deg, mat)?;
        if gm.is_zero() {
            self.maps.remove(&(plus, minus));
        } else {
            self.maps.insert((plus, minus), gm);
        }
        Ok(())
    }

    pub fn critical(&self) -> &Arc<CriticalData<S>> {
        &self.critical
    }

    pub fn cut(&self) -> &Rational {
        &self.cut
    }

    /// Connecting maps keyed by `(plus, minus)`.
    pub fn maps(&self) -> &BTreeMap<(usize, usize), GradedMap<S>> {
        &self.maps
    }

    pub fn map(&self, plus: usize, minus: usize) -> Option<&GradedMap<S>> {
        self.maps.get(&(plus, minus))
    }

    pub fn gap(&self, plus: usize, minus: usize) -> Rational {
        gap(&self.critical, plus, &self.critical, minus)
    }

    /// `d̂` as blocks: signed `d₀` on the diagonal plus the connecting maps.
    pub fn dhat(&self) -> Blocks<S> {
        let mut b = Blocks::new();
        for i in 0..self.critical.len() {
            b.insert(i, i, self.critical.signed_differential(i));
        }
        for (&(p, m), gm) in &self.maps {
            b.insert(p, m, gm.matrix().clone());
        }
        b
    }

    pub fn energy_cut(&self, e: &Rational) -> Result<Self> {
        check_cut(&self.cut, e)?;
        Ok(PartialComplex {
            critical: self.critical.clone(),
            cut: e.clone(),
            maps: self
                .maps
                .iter()
                .filter(|(&(p, m), _)| self.gap(p, m) <= *e)
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
        })
    }

    /// Pairs whose (gap, Δμ) is not an element of `g`.
    pub fn gapped_violations(&self, g: &DiscreteSubmonoid) -> Vec<(String, String)> {
        self.maps
            .keys()
            .filter(|&&(p, m)| {
                let b = MonoidElement::new(self.gap(p, m), self.critical.label(p).mu - self.critical.label(m).mu);
                !g.contains(&b)
            })
            .map(|&(p, m)| (self.critical.label(p).id.clone(), self.critical.label(m).id.clone()))
            .collect()
    }
}

fn check_cut(cut: &Rational, e: &Rational) -> Result<()> {
    if e > cut {
        return Err(Error::CutRaiseError {
            cut: format_rational(cut),
            requested: format_rational(e),
        });
    }
    if e < &Rational::zero() {
        return Err(Error::InvalidCutLevel(format_rational(e)));
    }
    Ok(())
}

/// Novikov-valued block of the assembled differential, keyed by `(plus, minus)`.
pub type NovikovBlocks<S> = BTreeMap<(usize, usize), Matrix<Novikov<S>>>;

/// `d = d₀ + Σ T^{E(α₊)−E(α₋)} e^{(μ(α₊)−μ(α₋))/2} m_{1;α₊,α₋}`.
pub fn assemble_differential<S: Ring>(x: &PartialComplex<S>) -> NovikovBlocks<S> {
    let cd = x.critical();
    let mut out = BTreeMap::new();
    for ((p, m), mat) in x.dhat().iter() {
        let weight_e = x.gap(*p, *m);
        let weight_mu = cd.label(*p).mu - cd.label(*m).mu;
        let nb = mat.map(|v| Novikov::monomial(v.clone(), weight_e.clone(), weight_mu));
        if !nb.is_zero() {
            out.insert((*p, *m), nb);
        }
    }
    out
}

/// Blocks of `d ∘ d` computed in Novikov coefficients, keeping energies `<= cut`.
pub fn assembled_square<S: Ring>(x: &PartialComplex<S>) -> NovikovBlocks<S> {
    let d = assemble_differential(x);
    let n = x.critical().len();
    let mut out = BTreeMap::new();
    for t in 0..n {
        for s in 0..n {
            let mut acc: Option<Matrix<Novikov<S>>> = None;
            for mid in 0..n {
                if let (Some(a), Some(b)) = (d.get(&(t, mid)), d.get(&(mid, s))) {
                    let prod = a * b;
                    acc = Some(match acc {
                        Some(x) => &x + &prod,
                        None => prod,
                    });
                }
            }
            if let Some(m) = acc {
                let m = m.map(|v| v.truncate_inclusive(x.cut()));
                if !m.is_zero() {
                    out.insert((t, s), m);
                }
            }
        }
    }
    out
}

/// Degree-homogeneous block map between two partial complexes with energy loss.
///
/// `degree` is the total degree (form degree shifted by Maslov indices). A
/// unipotent map has loss 0, equal critical data on both sides, identity on
/// the diagonal and zero on every other pair of equal energy; only its
/// positive-gap entries are stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FilteredMap<S = Rational> {
    source: Arc<PartialComplex<S>>,
    target: Arc<PartialComplex<S>>,
    cut: Rational,
    loss: Rational,
    degree: i64,
    unipotent: bool,
    entries: BTreeMap<(usize, usize), GradedMap<S>>,
}

pub type PartialMap<S = Rational> = FilteredMap<S>;

impl<S: Ring> FilteredMap<S> {
    pub fn new(
        source: Arc<PartialComplex<S>>,
        target: Arc<PartialComplex<S>>,
        cut: Rational,
        loss: Rational,
        degree: i64,
        unipotent: bool,
        entries: Vec<(usize, usize, Matrix<S>)>,
    ) -> Result<Self> {
        if loss < Rational::zero() {
            return Err(Error::Parse(format!("negative loss {}", format_rational(&loss))));
        }
        if cut < loss {
            return Err(Error::InvalidCutLevel(format!(
                "cut {} below loss {}",
                format_rational(&cut),
                format_rational(&loss)
            )));
        }
        if &cut > source.cut() || &cut > target.cut() {
            return Err(Error::InvalidCutLevel(format!(
                "map cut {} exceeds a complex cut ({}, {})",
                format_rational(&cut),
                format_rational(source.cut()),
                format_rational(target.cut())
            )));
        }
        if unipotent && (degree != 0 || !loss.is_zero() || source.critical() != target.critical()) {
            return Err(Error::Parse(
                "unipotent maps need degree 0, loss 0 and equal critical data".into(),
            ));
        }
        let mut f = FilteredMap {
            source,
            target,
            cut,
            loss,
            degree,
            unipotent,
            entries: BTreeMap::new(),
        };
        for (t, s, m) in entries {
            f.insert(t, s, m)?;
        }
        Ok(f)
    }

    /// Loss-0 unipotent cochain map with only the identity part.
    pub fn identity(x: Arc<PartialComplex<S>>, cut: Rational) -> Result<Self> {
        Self::new(x.clone(), x, cut, Rational::zero(), 0, true, Vec::new())
    }

    pub fn zero(
        source: Arc<PartialComplex<S>>,
        target: Arc<PartialComplex<S>>,
        cut: Rational,
        loss: Rational,
        degree: i64,
    ) -> Result<Self> {
        Self::new(source, target, cut, loss, degree, false, Vec::new())
    }

    pub fn in_domain(&self, g: &Rational) -> bool {
        let lo = if self.unipotent { Rational::zero() } else { -self.loss.clone() };
        let free_lo_ok = if self.unipotent { g > &lo } else { g >= &lo };
        free_lo_ok && g <= &(&self.cut - &self.loss)
    }

    /// Whether `(t, s)` is in the range where the relation of this map is imposed.
    pub fn relation_domain(&self, g: &Rational) -> bool {
        g >= &-self.loss.clone() && g <= &(&self.cut - &self.loss)
    }

    pub fn pair_gap(&self, t: usize, s: usize) -> Rational {
        gap(self.target.critical(), t, self.source.critical(), s)
    }

    pub(crate) fn insert(&mut self, t: usize, s: usize, m: Matrix<S>) -> Result<()> {
        let (sc, tc) = (self.source.critical().clone(), self.target.critical().clone());
        if t >= tc.len() || s >= sc.len() {
            return Err(Error::Parse(format!("label index out of range in entry {t} <- {s}")));
        }
        let g = self.pair_gap(t, s);
        if !self.in_domain(&g) {
            return Err(Error::Parse(format!(
                "entry {} <- {} with gap {} outside the domain of the map",
                tc.label(t).id,
                sc.label(s).id,
                format_rational(&g)
            )));
        }
        let form_deg = self.degree - tc.label(t).mu + sc.label(s).mu;
        let gm = GradedMap::new(sc.space(s).clone(), tc.space(t).clone(), form_deg, m)?;
        if gm.is_zero() {
            self.entries.remove(&(t, s));
        } else {
            self.entries.insert((t, s), gm);
        }
        Ok(())
    }

    pub fn source(&self) -> &Arc<PartialComplex<S>> {
        &self.source
    }

    pub fn target(&self) -> &Arc<PartialComplex<S>> {
        &self.target
    }

    pub fn cut(&self) -> &Rational {
        &self.cut
    }

    pub fn loss(&self) -> &Rational {
        &self.loss
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn is_unipotent(&self) -> bool {
        self.unipotent
    }

    /// Stored entries keyed by `(target label, source label)`.
    pub fn entries(&self) -> &BTreeMap<(usize, usize), GradedMap<S>> {
        &self.entries
    }

    pub fn entry(&self, t: usize, s: usize) -> Option<&GradedMap<S>> {
        self.entries.get(&(t, s))
    }

    /// Same entries, cut and loss (endpoints are not compared).
    pub fn same_data(&self, other: &Self) -> bool {
        self.entries == other.entries && self.cut == other.cut && self.loss == other.loss && self.degree == other.degree
    }

    /// Blocks including the implicit identity of a unipotent map.
    pub fn blocks(&self) -> Blocks<S> {
        let mut b = Blocks::new();
        if self.unipotent {
            for i in 0..self.source.critical().len() {
                b.insert(i, i, Matrix::identity(self.source.critical().dim(i)));
            }
        }
        for (&(t, s), gm) in &self.entries {
            b.insert(t, s, gm.matrix().clone());
        }
        b
    }

    pub fn energy_cut(&self, e: &Rational) -> Result<Self> {
        check_cut(&self.cut, e)?;
        if e < &self.loss {
            return Err(Error::InvalidCutLevel(format!(
                "cut {} below loss {}",
                format_rational(e),
                format_rational(&self.loss)
            )));
        }
        let bound = e - &self.loss;
        Ok(FilteredMap {
            cut: e.clone(),
            entries: self
                .entries
                .iter()
                .filter(|(&(t, s), _)| self.pair_gap(t, s) <= bound)
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
            ..self.clone()
        })
    }

    /// Pairs `(t, s)` of the relation domain, sorted by gap then labels.
    pub fn domain_pairs(&self) -> Vec<(usize, usize)> {
        let mut v: Vec<(Rational, usize, usize)> = Vec::new();
        for t in 0..self.target.critical().len() {
            for s in 0..self.source.critical().len() {
                let g = self.pair_gap(t, s);
                if self.relation_domain(&g) {
                    v.push((g, t, s));
                }
            }
        }
        v.sort();
        v.into_iter().map(|(_, t, s)| (t, s)).collect()
    }
}

/// Partial cochain homotopy from `from` to `to`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PartialHomotopy<S = Rational> {
    from: Arc<PartialMap<S>>,
    to: Arc<PartialMap<S>>,
    body: FilteredMap<S>,
}

impl<S: Ring> PartialHomotopy<S> {
    pub fn new(from: Arc<PartialMap<S>>, to: Arc<PartialMap<S>>, entries: Vec<(usize, usize, Matrix<S>)>) -> Result<Self> {
        if from.source() != to.source() || from.target() != to.target() {
            return Err(Error::SpaceMismatch("homotopy endpoints differ in source or target".into()));
        }
        if from.cut() != to.cut() || from.loss() != to.loss() || from.degree() != to.degree() {
            return Err(Error::SpaceMismatch("homotopy endpoints differ in cut, loss or degree".into()));
        }
        let body = FilteredMap::new(
            from.source().clone(),
            from.target().clone(),
            from.cut().clone(),
            from.loss().clone(),
            from.degree() - 1,
            false,
            entries,
        )?;
        Ok(PartialHomotopy { from, to, body })
    }

    pub fn zero(from: Arc<PartialMap<S>>, to: Arc<PartialMap<S>>) -> Result<Self> {
        Self::new(from, to, Vec::new())
    }

    pub fn from_map(&self) -> &Arc<PartialMap<S>> {
        &self.from
    }

    pub fn to_map(&self) -> &Arc<PartialMap<S>> {
        &self.to
    }

    pub fn body(&self) -> &FilteredMap<S> {
        &self.body
    }

    pub fn entries(&self) -> &BTreeMap<(usize, usize), GradedMap<S>> {
        self.body.entries()
    }

    pub fn cut(&self) -> &Rational {
        self.body.cut()
    }

    pub fn loss(&self) -> &Rational {
        self.body.loss()
    }

    pub fn energy_cut(&self, e: &Rational) -> Result<Self> {
        Ok(PartialHomotopy {
            from: Arc::new(self.from.energy_cut(e)?),
            to: Arc::new(self.to.energy_cut(e)?),
            body: self.body.energy_cut(e)?,
        })
    }

}

pub(crate) fn defect_list<S: Ring>(
    target: &CriticalData<S>,
    source: &CriticalData<S>,
    residual: Vec<((usize, usize), Matrix<S>)>,
) -> Vec<Defect<S>> {
    residual
        .into_iter()
        .filter(|(_, m)| !m.is_zero())
        .map(|((t, s), m)| Defect {
            target: target.label(t).id.clone(),
            source: source.label(s).id.clone(),
            gap: gap(target, t, source, s),
            residual: m,
        })
        .collect()
}

/// `d̂ ∘ d̂ = 0` at every pair with gap in `[0, cut]`.
pub fn check_partial_complex<S: Ring>(x: &PartialComplex<S>) -> Report<S> {
    let cd = x.critical();
    let d = x.dhat();
    let mut res = Vec::new();
    for p in 0..cd.len() {
        for m in 0..cd.len() {
            let g = x.gap(p, m);
            if g < Rational::zero() || &g > x.cut() {
                continue;
            }
            res.push(((p, m), d.product_at(&d, p, m, cd.dim(p), cd.dim(m))));
        }
    }
    Report {
        relation: "partial complex relation d∘d = 0",
        defects: defect_list(cd, cd, res),
    }
}

/// Residual `d̂₂ F − (−1)^{|F|} F d̂₁ − rhs` at one pair.
#[allow(clippy::too_many_arguments)]
pub(crate) fn commutator_residual<S: Ring>(
    d_target: &Blocks<S>,
    f: &Blocks<S>,
    d_source: &Blocks<S>,
    degree: i64,
    rhs: Option<&Matrix<S>>,
    t: usize,
    s: usize,
    rows: usize,
    cols: usize,
) -> Matrix<S> {
    let a = d_target.product_at(f, t, s, rows, cols);
    let b = f.product_at(d_source, t, s, rows, cols);
    let r = &a - &b.scale(&sign(degree));
    match rhs {
        Some(m) => &r - m,
        None => r,
    }
}

/// Cochain-map relation `d̂₂ ψ̂ − ψ̂ d̂₁ = 0` on the allowed range.
pub fn check_cochain_map<S: Ring>(psi: &PartialMap<S>) -> Report<S> {
    Report {
        relation: "cochain map relation",
        defects: filtered_map_defects(psi, None),
    }
}

fn filtered_map_defects<S: Ring>(f: &FilteredMap<S>, rhs: Option<&Blocks<S>>) -> Vec<Defect<S>> {
    let (sc, tc) = (f.source().critical(), f.target().critical());
    let d2 = f.target().dhat();
    let d1 = f.source().dhat();
    let fb = f.blocks();
    let res = f
        .domain_pairs()
        .into_iter()
        .map(|(t, s)| {
            (
                (t, s),
                commutator_residual(&d2, &fb, &d1, f.degree(), rhs.and_then(|b| b.get(t, s)), t, s, tc.dim(t), sc.dim(s)),
            )
        })
        .collect();
    defect_list(tc, sc, res)
}

/// `d̂₂ h + h d̂₁ = ψ̂_to − ψ̂_from` on the allowed range.
pub fn check_homotopy<S: Ring>(h: &PartialHomotopy<S>) -> Report<S> {
    let rhs = h.to.blocks().sub(&h.from.blocks());
    Report {
        relation: "cochain homotopy relation",
        defects: filtered_map_defects(&h.body, Some(&rhs)),
    }
}

/// `ψ₃₂ ∘ ψ₂₁`; losses add.
pub fn compose_maps<S: Ring>(psi21: &PartialMap<S>, psi32: &PartialMap<S>) -> Result<PartialMap<S>> {
    if psi21.target() != psi32.source() {
        return Err(Error::SpaceMismatch("first map's target is not the second map's source".into()));
    }
    let loss = psi21.loss() + psi32.loss();
    let cut = std::cmp::min(psi21.cut().clone(), psi32.cut() + psi21.loss());
    let unipotent = psi21.is_unipotent() && psi32.is_unipotent();
    let prod = psi32.blocks().compose(&psi21.blocks());
    let mut out = FilteredMap::new(
        psi21.source().clone(),
        psi32.target().clone(),
        cut,
        loss,
        psi21.degree() + psi32.degree(),
        unipotent,
        Vec::new(),
    )?;
    for ((t, s), m) in prod.iter() {
        let g = out.pair_gap(*t, *s);
        if out.in_domain(&g) {
            out.insert(*t, *s, m.clone())?;
        }
    }
    Ok(out)
}

/// Energy cut of any of the three kinds of partial structures.
pub trait EnergyCut: Sized {
    fn energy_cut(&self, e: &Rational) -> Result<Self>;
}

impl<S: Ring> EnergyCut for PartialComplex<S> {
    fn energy_cut(&self, e: &Rational) -> Result<Self> {
        PartialComplex::energy_cut(self, e)
    }
}

impl<S: Ring> EnergyCut for FilteredMap<S> {
    fn energy_cut(&self, e: &Rational) -> Result<Self> {
        FilteredMap::energy_cut(self, e)
    }
}

impl<S: Ring> EnergyCut for PartialHomotopy<S> {
    fn energy_cut(&self, e: &Rational) -> Result<Self> {
        PartialHomotopy::energy_cut(self, e)
    }
}

pub fn energy_cut<X: EnergyCut>(x: &X, e: &Rational) -> Result<X> {
    x.energy_cut(e)
}

