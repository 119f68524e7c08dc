//! Sparse matrices over a ring and an exact linear solver over a field.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::{Ring, Scalar};

/// Sparse `rows x cols` matrix; only nonzero entries are stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), S>,
}

impl<S: Ring> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, S::one());
        }
        m
    }

    pub fn from_triplets<I: IntoIterator<Item = (usize, usize, S)>>(
        rows: usize,
        cols: usize,
        triplets: I,
    ) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (i, j, v) in triplets {
            assert!(i < rows && j < cols, "entry ({i},{j}) outside {rows}x{cols}");
            let cur = m.get(i, j);
            m.set(i, j, cur + v);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> S {
        self.entries.get(&(i, j)).cloned().unwrap_or_else(S::zero)
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        if v.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), v);
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &S)> {
        self.entries.iter().map(|(&(i, j), v)| (i, j, v))
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut m = Self::zeros(self.rows, self.cols);
        for (i, j, v) in self.entries() {
            m.set(i, j, v.clone() * c.clone());
        }
        m
    }

    pub fn map<T: Ring>(&self, f: impl Fn(&S) -> T) -> Matrix<T> {
        let mut m = Matrix::zeros(self.rows, self.cols);
        for (i, j, v) in self.entries() {
            m.set(i, j, f(v));
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for (i, j, v) in self.entries() {
            m.set(j, i, v.clone());
        }
        m
    }

    pub fn apply(&self, x: &[S]) -> Vec<S> {
        assert_eq!(x.len(), self.cols);
        let mut y = vec![S::zero(); self.rows];
        for (i, j, v) in self.entries() {
            y[i] = y[i].clone() + v.clone() * x[j].clone();
        }
        y
    }

    pub fn to_dense(&self) -> Vec<Vec<S>> {
        let mut d = vec![vec![S::zero(); self.cols]; self.rows];
        for (i, j, v) in self.entries() {
            d[i][j] = v.clone();
        }
        d
    }

    pub fn column(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    fn zip(&self, rhs: &Self, f: impl Fn(S, S) -> S) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        let mut m = Self::zeros(self.rows, self.cols);
        let keys: std::collections::BTreeSet<_> =
            self.entries.keys().chain(rhs.entries.keys()).copied().collect();
        for (i, j) in keys {
            m.set(i, j, f(self.get(i, j), rhs.get(i, j)));
        }
        m
    }
}

impl<S: Ring> Add for &Matrix<S> {
    type Output = Matrix<S>;
    fn add(self, rhs: Self) -> Matrix<S> {
        self.zip(rhs, |a, b| a + b)
    }
}

impl<S: Ring> Sub for &Matrix<S> {
    type Output = Matrix<S>;
    fn sub(self, rhs: Self) -> Matrix<S> {
        self.zip(rhs, |a, b| a - b)
    }
}

impl<S: Ring> Neg for &Matrix<S> {
    type Output = Matrix<S>;
    fn neg(self) -> Matrix<S> {
        self.map(|v| -v.clone())
    }
}

impl<S: Ring> Mul for &Matrix<S> {
    type Output = Matrix<S>;
    fn mul(self, rhs: Self) -> Matrix<S> {
        assert_eq!(self.cols, rhs.rows, "inner dimension mismatch");
        let mut by_row: BTreeMap<usize, Vec<(usize, &S)>> = BTreeMap::new();
        for (k, j, v) in rhs.entries() {
            by_row.entry(k).or_default().push((j, v));
        }
        let mut acc: BTreeMap<(usize, usize), S> = BTreeMap::new();
        for (i, k, a) in self.entries() {
            if let Some(row) = by_row.get(&k) {
                for &(j, b) in row {
                    let slot = acc.entry((i, j)).or_insert_with(S::zero);
                    *slot = slot.clone() + a.clone() * b.clone();
                }
            }
        }
        Matrix {
            rows: self.rows,
            cols: rhs.cols,
            entries: acc.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
        }
    }
}

/// Outcome of solving `A x = b`.
#[derive(Clone, Debug, PartialEq)]
pub enum Solution<S> {
    Solved(Vec<S>),
    /// `phi` with `phi A = 0` and `phi b != 0`.
    Inconsistent(Vec<S>),
}

/// Gauss-Jordan elimination. Pivots are taken column by column, using the
/// first remaining row with a nonzero entry; free variables are set to zero.
pub fn solve<S: Scalar>(a: &Matrix<S>, b: &[S]) -> Solution<S> {
    let (m, n) = (a.rows(), a.cols());
    assert_eq!(b.len(), m);
    let mut rows: Vec<Vec<S>> = a.to_dense();
    // track row operations on an identity block
    let mut u: Vec<Vec<S>> = (0..m)
        .map(|i| (0..m).map(|j| if i == j { S::one() } else { S::zero() }).collect())
        .collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        u.swap(r, p);
        let inv = S::one() / rows[r][c].clone();
        for x in rows[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for x in u[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..m {
            if i == r || rows[i][c].is_zero() {
                continue;
            }
            let f = rows[i][c].clone();
            for j in 0..n {
                let v = rows[r][j].clone();
                if !v.is_zero() {
                    rows[i][j] = rows[i][j].clone() - f.clone() * v;
                }
            }
            for j in 0..m {
                let v = u[r][j].clone();
                if !v.is_zero() {
                    u[i][j] = u[i][j].clone() - f.clone() * v;
                }
            }
        }
        pivots.push((r, c));
        r += 1;
    }
    let dot = |row: &[S]| {
        row.iter()
            .zip(b)
            .fold(S::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
    };
    for row in u.iter().skip(r) {
        if !dot(row).is_zero() {
            return Solution::Inconsistent(row.clone());
        }
    }
    let mut x = vec![S::zero(); n];
    for &(pr, pc) in &pivots {
        x[pc] = dot(&u[pr]);
    }
    Solution::Solved(x)
}

/// Rank by the same elimination.
pub fn rank<S: Scalar>(a: &Matrix<S>) -> usize {
    let mut rows = a.to_dense();
    let (m, n) = (a.rows(), a.cols());
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        for i in (r + 1)..m {
            if rows[i][c].is_zero() {
                continue;
            }
            let f = rows[i][c].clone() / rows[r][c].clone();
            for j in c..n {
                let v = rows[r][j].clone();
                rows[i][j] = rows[i][j].clone() - f.clone() * v;
            }
        }
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, Rational};

    #[test]
    fn product_and_identity() {
        let a = Matrix::from_triplets(2, 3, [(0, 0, q(1)), (0, 2, q(2)), (1, 1, q(3))]);
        let i3 = Matrix::<Rational>::identity(3);
        assert_eq!(&a * &i3, a);
        let b = Matrix::from_triplets(3, 1, [(0, 0, q(1)), (2, 0, q(1))]);
        assert_eq!(&a * &b, Matrix::from_triplets(2, 1, [(0, 0, q(3))]));
    }

    #[test]
    fn solve_consistent_and_not() {
        let a = Matrix::from_triplets(3, 2, [(0, 0, q(1)), (1, 0, q(1)), (2, 1, q(2))]);
        match solve(&a, &[q(1), q(1), q(4)]) {
            Solution::Solved(x) => assert_eq!(a.apply(&x), vec![q(1), q(1), q(4)]),
            s => panic!("{s:?}"),
        }
        let b = [q(1), q(0), q(0)];
        match solve(&a, &b) {
            Solution::Inconsistent(phi) => {
                let at = a.transpose();
                assert!(at.apply(&phi).iter().all(|v| *v == q(0)));
                let pb: Rational = phi.iter().zip(&b).map(|(x, y)| x * y).sum();
                assert_ne!(pb, q(0));
            }
            s => panic!("{s:?}"),
        }
        assert_eq!(rank(&a), 2);
    }

    #[test]
    fn works_over_f64() {
        let a = Matrix::from_triplets(2, 2, [(0, 0, 2.0), (1, 1, 4.0)]);
        assert_eq!(solve(&a, &[1.0, 1.0]), Solution::Solved(vec![0.5, 0.25]));
    }
}
