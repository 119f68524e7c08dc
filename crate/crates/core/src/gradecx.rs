//! Finite graded spaces, homogeneous maps, cochain complexes and primitive solving.

use std::collections::BTreeSet;


use crate::error::{Certificate, Error, Result};
use crate::matrix::{solve, Matrix, Solution};
use crate::scalar::{sign, Rational, Ring, Scalar};

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct GradedSpace {
    basis: Vec<(String, i64)>,
}

impl GradedSpace {
    pub fn new(basis: Vec<(String, i64)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for (name, _) in &basis {
            if !seen.insert(name.as_str()) {
                return Err(Error::Parse(format!("duplicate basis name {name:?}")));
            }
        }
        Ok(GradedSpace { basis })
    }

    pub fn from_degrees(prefix: &str, degrees: &[i64]) -> Self {
        GradedSpace {
            basis: degrees
                .iter()
                .enumerate()
                .map(|(i, &d)| (format!("{prefix}{i}"), d))
                .collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[(String, i64)] {
        &self.basis
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.basis[i].1
    }

    pub fn name(&self, i: usize) -> &str {
        &self.basis[i].0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|(n, _)| n == name)
    }

    /// Same names with every degree moved by `shift`.
    pub fn shifted(&self, shift: i64) -> GradedSpace {
        GradedSpace {
            basis: self.basis.iter().map(|(n, d)| (n.clone(), d + shift)).collect(),
        }
    }

    /// Degree of a vector if it is homogeneous; `Ok(None)` for zero.
    pub fn homogeneous_degree<S: Ring>(&self, v: &[S]) -> Result<Option<i64>> {
        let degs: BTreeSet<i64> = v
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, _)| self.degree(i))
            .collect();
        match degs.len() {
            0 => Ok(None),
            1 => Ok(degs.into_iter().next()),
            _ => Err(Error::DegreeError(format!("vector mixes degrees {degs:?}"))),
        }
    }
}

/// Degree-homogeneous linear map; `matrix[(j, i)]` sends source `i` to target `j`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GradedMap<S = Rational> {
    source: GradedSpace,
    target: GradedSpace,
    degree: i64,
    matrix: Matrix<S>,
}

impl<S: Ring> GradedMap<S> {
    pub fn new(source: GradedSpace, target: GradedSpace, degree: i64, matrix: Matrix<S>) -> Result<Self> {
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::SpaceMismatch(format!(
                "{}x{} matrix for {} -> {}",
                matrix.rows(),
                matrix.cols(),
                source.dim(),
                target.dim()
            )));
        }
        for (j, i, _) in matrix.entries() {
            if target.degree(j) != source.degree(i) + degree {
                return Err(Error::DegreeError(format!(
                    "entry {} <- {} breaks degree {degree}",
                    target.name(j),
                    source.name(i)
                )));
            }
        }
        Ok(GradedMap {
            source,
            target,
            degree,
            matrix,
        })
    }

    pub fn zero(source: GradedSpace, target: GradedSpace, degree: i64) -> Self {
        let matrix = Matrix::zeros(target.dim(), source.dim());
        GradedMap {
            source,
            target,
            degree,
            matrix,
        }
    }

    pub fn identity(space: GradedSpace) -> Self {
        let matrix = Matrix::identity(space.dim());
        GradedMap {
            source: space.clone(),
            target: space,
            degree: 0,
            matrix,
        }
    }

    pub fn source(&self) -> &GradedSpace {
        &self.source
    }

    pub fn target(&self) -> &GradedSpace {
        &self.target
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn matrix(&self) -> &Matrix<S> {
        &self.matrix
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn apply(&self, x: &[S]) -> Vec<S> {
        self.matrix.apply(x)
    }

    pub fn scale(&self, c: &S) -> Self {
        GradedMap {
            matrix: self.matrix.scale(c),
            ..self.clone()
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-S::one())
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.source != other.source || self.target != other.target || self.degree != other.degree {
            return Err(Error::SpaceMismatch("maps differ in source, target or degree".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        Ok(GradedMap {
            matrix: &self.matrix + &other.matrix,
            ..self.clone()
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        Ok(GradedMap {
            matrix: &self.matrix - &other.matrix,
            ..self.clone()
        })
    }
}

/// `f ∘ g`.
pub fn compose<S: Ring>(f: &GradedMap<S>, g: &GradedMap<S>) -> Result<GradedMap<S>> {
    if g.target != f.source {
        return Err(Error::SpaceMismatch("g.target differs from f.source".into()));
    }
    Ok(GradedMap {
        source: g.source.clone(),
        target: f.target.clone(),
        degree: f.degree + g.degree,
        matrix: &f.matrix * &g.matrix,
    })
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CochainComplex<S = Rational> {
    d0: GradedMap<S>,
}

impl<S: Ring> CochainComplex<S> {
    pub fn new(d0: GradedMap<S>) -> Result<Self> {
        if d0.source != d0.target {
            return Err(Error::SpaceMismatch("differential must be an endomorphism".into()));
        }
        if d0.degree != 1 {
            return Err(Error::DegreeError(format!("differential has degree {}", d0.degree)));
        }
        if !compose(&d0, &d0)?.is_zero() {
            return Err(Error::Parse("d0 ∘ d0 ≠ 0".into()));
        }
        Ok(CochainComplex { d0 })
    }

    pub fn from_triplets(space: GradedSpace, triplets: Vec<(usize, usize, S)>) -> Result<Self> {
        let n = space.dim();
        let m = Matrix::from_triplets(n, n, triplets);
        CochainComplex::new(GradedMap::new(space.clone(), space, 1, m)?)
    }

    /// Zero differential.
    pub fn trivial(space: GradedSpace) -> Self {
        CochainComplex {
            d0: GradedMap::zero(space.clone(), space, 1),
        }
    }

    pub fn space(&self) -> &GradedSpace {
        self.d0.source()
    }

    pub fn d0(&self) -> &GradedMap<S> {
        &self.d0
    }

    pub fn dim(&self) -> usize {
        self.space().dim()
    }
}

/// Result of [`solve_primitive`].
#[derive(Clone, Debug, PartialEq)]
pub enum Primitive<S> {
    Exact(Vec<S>),
    /// a functional vanishing on the image of `d0` but not on `y`
    NotExact(Vec<S>),
}

impl<S: Scalar> Primitive<S> {
    pub fn certificate(&self, space: &GradedSpace, location: &str, y: &[S]) -> Option<Certificate> {
        let Primitive::NotExact(phi) = self else {
            return None;
        };
        let value = phi
            .iter()
            .zip(y)
            .fold(S::zero(), |a, (p, v)| a + p.clone() * v.clone());
        Some(Certificate {
            location: location.to_string(),
            functional: phi
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, v)| (space.name(i).to_string(), v.to_string()))
                .collect(),
            value: value.to_string(),
        })
    }
}

/// Finds `x` with `d0 x = y` for homogeneous `y`.
pub fn solve_primitive<S: Scalar>(c: &CochainComplex<S>, y: &[S]) -> Result<Primitive<S>> {
    let space = c.space();
    if y.len() != space.dim() {
        return Err(Error::SpaceMismatch(format!("vector of length {} for dim {}", y.len(), space.dim())));
    }
    let Some(d) = space.homogeneous_degree(y)? else {
        return Ok(Primitive::Exact(vec![S::zero(); space.dim()]));
    };
    let rows: Vec<usize> = (0..space.dim()).filter(|&i| space.degree(i) == d).collect();
    let cols: Vec<usize> = (0..space.dim()).filter(|&i| space.degree(i) == d - 1).collect();
    let m = c.d0.matrix();
    let sub = Matrix::from_triplets(
        rows.len(),
        cols.len(),
        rows.iter().enumerate().flat_map(|(a, &r)| {
            cols.iter()
                .enumerate()
                .map(move |(b, &cc)| (a, b, m.get(r, cc)))
        }),
    );
    let rhs: Vec<S> = rows.iter().map(|&r| y[r].clone()).collect();
    Ok(match solve(&sub, &rhs) {
        Solution::Solved(xs) => {
            let mut x = vec![S::zero(); space.dim()];
            for (b, &cc) in cols.iter().enumerate() {
                x[cc] = xs[b].clone();
            }
            Primitive::Exact(x)
        }
        Solution::Inconsistent(phi) => {
            let mut f = vec![S::zero(); space.dim()];
            for (a, &r) in rows.iter().enumerate() {
                f[r] = phi[a].clone();
            }
            Primitive::NotExact(f)
        }
    })
}

/// `d0 ∘ f − (−1)^{deg f} f ∘ d0 = 0` for an endomorphism `f`.
pub fn is_cocycle<S: Ring>(c: &CochainComplex<S>, f: &GradedMap<S>) -> Result<bool> {
    Ok(graded_commutator(c.d0(), c.d0(), f)?.is_zero())
}

/// `d2 ∘ f − (−1)^{deg f} f ∘ d1` for `f` from the complex of `d1` to that of `d2`.
pub fn graded_commutator<S: Ring>(d2: &GradedMap<S>, d1: &GradedMap<S>, f: &GradedMap<S>) -> Result<GradedMap<S>> {
    let a = compose(d2, f)?;
    let b = compose(f, d1)?;
    a.sub(&b.scale(&sign(f.degree())))
}

/// The complex `Hom(c1, c2)` with differential `δf = d2 f − (−1)^{|f|} f d1`.
///
/// Basis element `j<-i` sends source basis `i` to target basis `j`; its index is
/// `j * dim(c1) + i`.
pub fn hom_complex<S: Ring>(c1: &CochainComplex<S>, c2: &CochainComplex<S>) -> CochainComplex<S> {
    let (s, t) = (c1.space(), c2.space());
    let (n1, n2) = (s.dim(), t.dim());
    let idx = |j: usize, i: usize| j * n1 + i;
    let basis: Vec<(String, i64)> = (0..n2)
        .flat_map(|j| (0..n1).map(move |i| (j, i)))
        .map(|(j, i)| (format!("{}<-{}", t.name(j), s.name(i)), t.degree(j) - s.degree(i)))
        .collect();
    let space = GradedSpace { basis };
    let d1 = c1.d0().matrix();
    let d2 = c2.d0().matrix();
    let mut trip = Vec::new();
    for j in 0..n2 {
        for i in 0..n1 {
            let deg_f = t.degree(j) - s.degree(i);
            // d2 ∘ E_{j,i} = Σ_k d2[k,j] E_{k,i}
            for (k, jj, v) in d2.entries() {
                if jj == j {
                    trip.push((idx(k, i), idx(j, i), v.clone()));
                }
            }
            // E_{j,i} ∘ d1 = Σ_l d1[i,l] E_{j,l}
            let sg: S = sign(deg_f);
            for (ii, l, v) in d1.entries() {
                if ii == i {
                    trip.push((idx(j, l), idx(j, i), -(sg.clone() * v.clone())));
                }
            }
        }
    }
    let n = space.dim();
    CochainComplex {
        d0: GradedMap {
            source: space.clone(),
            target: space,
            degree: 1,
            matrix: Matrix::from_triplets(n, n, trip),
        },
    }
}

/// Flattens a map into a vector of [`hom_complex`].
pub fn hom_vector<S: Ring>(f: &Matrix<S>) -> Vec<S> {
    let n1 = f.cols();
    let mut v = vec![S::zero(); f.rows() * n1];
    for (j, i, x) in f.entries() {
        v[j * n1 + i] = x.clone();
    }
    v
}

pub fn hom_unflatten<S: Ring>(v: &[S], rows: usize, cols: usize) -> Matrix<S> {
    Matrix::from_triplets(
        rows,
        cols,
        v.iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(k, x)| (k / cols, k % cols, x.clone())),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use crate::scalar::q;

    fn interval() -> CochainComplex {
        let sp = GradedSpace::new(vec![("x".into(), 0), ("y".into(), 1)]).unwrap();
        CochainComplex::from_triplets(sp, vec![(1, 0, q(1))]).unwrap()
    }

    #[test]
    fn solve_examples() {
        let c = interval();
        assert_eq!(
            solve_primitive(&c, &[q(0), q(1)]).unwrap(),
            Primitive::Exact(vec![q(1), q(0)])
        );
        assert_eq!(
            solve_primitive(&c, &[q(0), q(0)]).unwrap(),
            Primitive::Exact(vec![q(0), q(0)])
        );
        assert!(matches!(solve_primitive(&c, &[q(1), q(1)]), Err(Error::DegreeError(_))));
        let circle = CochainComplex::<Rational>::trivial(
            GradedSpace::new(vec![("1".into(), 0), ("theta".into(), 1)]).unwrap(),
        );
        assert!(matches!(
            solve_primitive(&circle, &[q(0), q(3)]).unwrap(),
            Primitive::NotExact(_)
        ));
    }

    #[test]
    fn cocycle_examples() {
        let c = interval();
        assert!(is_cocycle(&c, c.d0()).unwrap());
        assert!(is_cocycle(&c, &GradedMap::identity(c.space().clone())).unwrap());
        let half = GradedMap::new(
            c.space().clone(),
            c.space().clone(),
            0,
            Matrix::from_triplets(2, 2, [(0, 0, q(1))]),
        )
        .unwrap();
        assert!(!is_cocycle(&c, &half).unwrap());
    }

    #[test]
    fn rejects_bad_maps() {
        let c = interval();
        let sp = c.space().clone();
        assert!(GradedMap::new(sp.clone(), sp.clone(), 0, Matrix::from_triplets(2, 2, [(1, 0, q(1))])).is_err());
        let other = GradedSpace::from_degrees("z", &[0]);
        let f = GradedMap::<Rational>::zero(other.clone(), other, 0);
        assert!(matches!(compose(&f, c.d0()), Err(Error::SpaceMismatch(_))));
        let one = GradedSpace::from_degrees("a", &[0]);
        let two = GradedMap::new(one.clone(), one.clone(), 0, Matrix::from_triplets(1, 1, [(0, 0, q(2))])).unwrap();
        let three = GradedMap::new(one.clone(), one, 0, Matrix::from_triplets(1, 1, [(0, 0, q(3))])).unwrap();
        assert_eq!(compose(&two, &three).unwrap().matrix().get(0, 0), q(6));
    }

    #[test]
    fn hom_complex_squares_to_zero() {
        let c = interval();
        let h = hom_complex(&c, &c);
        assert!(compose(h.d0(), h.d0()).unwrap().is_zero());
        // δ(id) = 0 and δ of the "x<-y" element is ±(id-ish)
        let id = hom_vector(&Matrix::<Rational>::identity(2));
        assert!(h.d0().apply(&id).iter().all(|v| v.is_zero()));
    }
}
