#![allow(dead_code)]

use std::sync::Arc;

use floerkit::floer::{Blocks, CriticalData, FilteredMap, Label, PartialComplex, PartialMap};
use floerkit::gradecx::{CochainComplex, GradedSpace};
use floerkit::matrix::Matrix;
use floerkit::scalar::{q, qf};
use floerkit::Rational;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn r(n: i64) -> Rational {
    q(n)
}

pub fn rf(n: i64, d: i64) -> Rational {
    qf(n, d)
}

pub fn point() -> CochainComplex {
    CochainComplex::trivial(GradedSpace::from_degrees("p", &[0]))
}

/// Cellular cochains of [0,1]: vertices x0, x1 and the edge e, `d x0 = -e`, `d x1 = e`.
pub fn interval() -> CochainComplex {
    let sp = GradedSpace::new(vec![("x0".into(), 0), ("x1".into(), 0), ("e".into(), 1)]).unwrap();
    CochainComplex::from_triplets(sp, vec![(2, 0, r(-1)), (2, 1, r(1))]).unwrap()
}

pub fn label(id: &str, e: Rational, mu: i64, dim_r: i64, complex: CochainComplex) -> Label {
    Label {
        id: id.into(),
        energy: e,
        mu,
        dim_r,
        complex,
    }
}

pub fn mat(rows: usize, cols: usize, t: &[(usize, usize, i64)]) -> Matrix<Rational> {
    Matrix::from_triplets(rows, cols, t.iter().map(|&(i, j, v)| (i, j, r(v))))
}

/// Random matrix of the given form degree between two label spaces.
pub fn random_graded(rng: &mut ChaCha8Rng, tgt: &GradedSpace, src: &GradedSpace, deg: i64, density: f64) -> Matrix<Rational> {
    let mut m = Matrix::zeros(tgt.dim(), src.dim());
    for i in 0..tgt.dim() {
        for j in 0..src.dim() {
            if tgt.degree(i) - src.degree(j) == deg && rng.gen_bool(density) {
                m.set(i, j, r(rng.gen_range(-2..=2)));
            }
        }
    }
    m
}

/// Identity plus random positive-gap blocks of total degree 0.
pub fn random_unipotent(rng: &mut ChaCha8Rng, cd: &CriticalData, cut: &Rational, density: f64) -> Blocks<Rational> {
    let mut b = Blocks::new();
    for t in 0..cd.len() {
        b.insert(t, t, Matrix::identity(cd.dim(t)));
        for s in 0..cd.len() {
            let g = &cd.label(t).energy - &cd.label(s).energy;
            if g > Rational::zero() && &g <= cut {
                let deg = -cd.label(t).mu + cd.label(s).mu;
                b.insert(t, s, random_graded(rng, cd.space(t), cd.space(s), deg, density));
            }
        }
    }
    b
}

/// Inverse of identity-plus-nilpotent blocks via the geometric series.
pub fn unipotent_inverse(b: &Blocks<Rational>, cd: &CriticalData) -> Blocks<Rational> {
    let mut id = Blocks::new();
    for i in 0..cd.len() {
        id.insert(i, i, Matrix::identity(cd.dim(i)));
    }
    let n = b.sub(&id);
    let neg_n = n.scale(&-Rational::one());
    let mut inv = id.clone();
    let mut pow = id;
    for _ in 0..=cd.len() {
        pow = pow.compose(&neg_n);
        if pow.is_empty() {
            break;
        }
        inv = inv.add(&pow);
    }
    inv
}

/// Partial complex whose `d̂` is `phi ∘ D ∘ phi⁻¹`, cut at `cut`.
pub fn conjugated_complex(cd: &Arc<CriticalData>, phi: &Blocks<Rational>, cut: &Rational) -> PartialComplex {
    let base = PartialComplex::empty(cd.clone(), cut.clone()).unwrap();
    let d = phi.compose(&base.dhat()).compose(&unipotent_inverse(phi, cd));
    let maps = d
        .iter()
        .filter(|((t, s), _)| {
            let g = &cd.label(*t).energy - &cd.label(*s).energy;
            g > Rational::zero() && &g <= cut
        })
        .map(|((t, s), m)| (*t, *s, m.clone()))
        .collect();
    PartialComplex::new(cd.clone(), cut.clone(), maps).unwrap()
}

pub fn unipotent_map(src: &PartialComplex, tgt: &PartialComplex, cut: &Rational, b: &Blocks<Rational>) -> PartialMap {
    let cd = src.critical();
    let entries = b
        .iter()
        .filter(|((t, s), _)| {
            let g = &cd.label(*t).energy - &cd.label(*s).energy;
            g > Rational::zero() && &g <= cut
        })
        .map(|((t, s), m)| (*t, *s, m.clone()))
        .collect();
    FilteredMap::new(Arc::new(src.clone()), Arc::new(tgt.clone()), cut.clone(), Rational::zero(), 0, true, entries).unwrap()
}

/// Dense `d̂` over the direct sum of all label spaces, independent of the block helpers.
pub fn dense_dhat(x: &PartialComplex) -> (Vec<usize>, Vec<Vec<Rational>>) {
    let cd = x.critical();
    let mut off = vec![0];
    for i in 0..cd.len() {
        off.push(off[i] + cd.dim(i));
    }
    let n = off[cd.len()];
    let mut d = vec![vec![Rational::zero(); n]; n];
    for i in 0..cd.len() {
        let l = cd.label(i);
        let sp = l.complex.space();
        for (a, b, v) in l.complex.d0().matrix().entries() {
            let e = l.dim_r + l.mu + 1 + sp.degree(b);
            let s = if e.rem_euclid(2) == 0 { v.clone() } else { -v.clone() };
            d[off[i] + a][off[i] + b] = s;
        }
    }
    for (&(p, m), gm) in x.maps() {
        for (a, b, v) in gm.matrix().entries() {
            d[off[p] + a][off[m] + b] = v.clone();
        }
    }
    (off, d)
}

/// Nonzero `(plus, minus)` blocks of `d̂ ∘ d̂` with gap in `[0, cut]`, by dense multiplication.
pub fn dense_square_defects(x: &PartialComplex) -> Vec<(usize, usize)> {
    let (off, d) = dense_dhat(x);
    let cd = x.critical();
    let n = d.len();
    let mut sq = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if d[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if !d[k][j].is_zero() {
                    sq[i][j] = &sq[i][j] + &(&d[i][k] * &d[k][j]);
                }
            }
        }
    }
    let mut bad = Vec::new();
    for p in 0..cd.len() {
        for m in 0..cd.len() {
            let g = &cd.label(p).energy - &cd.label(m).energy;
            if g < Rational::zero() || &g > x.cut() {
                continue;
            }
            let nz = (off[p]..off[p + 1]).any(|i| (off[m]..off[m + 1]).any(|j| !sq[i][j].is_zero()));
            if nz {
                bad.push((p, m));
            }
        }
    }
    bad
}

/// Six interval labels on three energy levels.
pub fn six_labels() -> Arc<CriticalData> {
    let table = [("a", 0, 0), ("b", 0, 1), ("c", 1, 1), ("d", 1, 2), ("e", 2, 1), ("f", 2, 3)];
    Arc::new(CriticalData::new(table.iter().map(|&(id, e, mu)| label(id, r(e), mu, 1, interval())).collect()).unwrap())
}
