use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{sign, Rational, Ring};

use super::signs::{boundary_sign_exponent, connecting_dim};
use super::{CriticalData, PartialComplex};

/// Linear system whose critical complexes are points: all data is in the counts.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MorseKSystem<S = Rational> {
    pub critical: Arc<CriticalData<S>>,
    /// signed counts keyed by `(minus, plus)`, shape `dim(plus) x dim(minus)`
    pub counts: BTreeMap<(usize, usize), Matrix<S>>,
    /// formal dimensions keyed by `(minus, plus)`
    pub dims: BTreeMap<(usize, usize), i64>,
}

#[derive(Clone, PartialEq, Debug, Default)]
pub struct MorseReport {
    pub not_points: Vec<String>,
    pub counts_off_dimension: Vec<(String, String)>,
    pub dimension_mismatch: Vec<(String, String, i64, i64)>,
    pub energy_order: Vec<(String, String)>,
    /// `(minus, plus, nonzero entries of the signed sum)`
    pub d_squared: Vec<(String, String, usize)>,
}

impl MorseReport {
    pub fn passed(&self) -> bool {
        self.not_points.is_empty()
            && self.counts_off_dimension.is_empty()
            && self.dimension_mismatch.is_empty()
            && self.energy_order.is_empty()
            && self.d_squared.is_empty()
    }
}

impl<S: Ring> MorseKSystem<S> {
    pub fn formal_dim(&self, minus: usize, plus: usize) -> i64 {
        let (m, p) = (self.critical.label(minus), self.critical.label(plus));
        connecting_dim(m.mu, p.mu, p.dim_r)
    }

    /// The counts as connecting maps of a partial complex, dropping pairs beyond `cut`.
    pub fn to_partial_complex(&self, cut: Rational) -> Result<PartialComplex<S>> {
        let maps = self
            .counts
            .iter()
            .filter(|((m, p), _)| self.critical.label(*p).energy.clone() - self.critical.label(*m).energy.clone() <= cut)
            .map(|(&(m, p), mat)| (p, m, mat.clone()))
            .collect();
        PartialComplex::new(self.critical.clone(), cut, maps)
    }
}

pub fn morse_check<S: Ring>(k: &MorseKSystem<S>) -> MorseReport {
    let cd = &k.critical;
    let id = |i: usize| cd.label(i).id.clone();
    let mut r = MorseReport::default();
    for (i, l) in cd.labels().iter().enumerate() {
        let sp = l.complex.space();
        if (0..sp.dim()).any(|b| sp.degree(b) != 0) || !l.complex.d0().is_zero() {
            r.not_points.push(id(i));
        }
    }
    for (&(m, p), &d) in &k.dims {
        let f = k.formal_dim(m, p);
        if d != f {
            r.dimension_mismatch.push((id(m), id(p), d, f));
        }
    }
    let pairs: std::collections::BTreeSet<(usize, usize)> = k.counts.keys().chain(k.dims.keys()).copied().collect();
    for &(m, p) in &pairs {
        if cd.label(m).energy >= cd.label(p).energy {
            r.energy_order.push((id(m), id(p)));
        }
    }
    for (&(m, p), mat) in &k.counts {
        let d = k.dims.get(&(m, p)).copied().unwrap_or_else(|| k.formal_dim(m, p));
        if d != 0 && !mat.is_zero() {
            r.counts_off_dimension.push((id(m), id(p)));
        }
    }
    for m in 0..cd.len() {
        for p in 0..cd.len() {
            if k.formal_dim(m, p) != 1 || cd.label(m).energy >= cd.label(p).energy {
                continue;
            }
            let mut acc = Matrix::zeros(cd.dim(p), cd.dim(m));
            for a in 0..cd.len() {
                if let (Some(n_ap), Some(n_ma)) = (k.counts.get(&(a, p)), k.counts.get(&(m, a))) {
                    let (lm, la, lp) = (cd.label(m), cd.label(a), cd.label(p));
                    let sgn: S = sign(boundary_sign_exponent(lm.mu, la.mu, lp.mu, la.dim_r, lp.dim_r));
                    acc = &acc + &(n_ap * n_ma).scale(&sgn);
                }
            }
            if !acc.is_zero() {
                r.d_squared.push((id(m), id(p), acc.nnz()));
            }
        }
    }
    r
}

impl MorseReport {
    pub fn into_result(self) -> Result<()> {
        if self.passed() {
            Ok(())
        } else {
            Err(Error::PreconditionFailed(vec![format!("{self:?}")]))
        }
    }
}
