//! Polynomials in one variable `t` and piecewise-polynomial partitions.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::scalar::{Ring, Scalar};

/// Dense polynomial, coefficients in ascending order, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly<S> {
    coeffs: Vec<S>,
}

impl<S: Ring> Poly<S> {
    pub fn new(mut coeffs: Vec<S>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant(c: S) -> Self {
        Poly::new(vec![c])
    }

    /// The polynomial `t`.
    pub fn t() -> Self {
        Poly::new(vec![S::zero(), S::one()])
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn eval(&self, t: &S) -> S {
        self.coeffs
            .iter()
            .rev()
            .fold(S::zero(), |acc, c| acc * t.clone() + c.clone())
    }

    pub fn scale(&self, c: &S) -> Self {
        Poly::new(self.coeffs.iter().map(|x| x.clone() * c.clone()).collect())
    }
}

impl<S: Scalar> Poly<S> {
    pub fn derivative(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * S::from_usize(i).expect("small index"))
                .collect(),
        )
    }

    /// Antiderivative with zero constant term.
    pub fn antiderivative(&self) -> Self {
        let mut out = vec![S::zero()];
        for (i, c) in self.coeffs.iter().enumerate() {
            out.push(c.clone() / S::from_usize(i + 1).expect("small index"));
        }
        Poly::new(out)
    }

    /// `∫_a^t p(s) ds`.
    pub fn integral_from(&self, a: &S) -> Self {
        let p = self.antiderivative();
        let pa = p.eval(a);
        p - Poly::constant(pa)
    }
}

impl<S: Ring> Zero for Poly<S> {
    fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<S: Ring> One for Poly<S> {
    fn one() -> Self {
        Poly::constant(S::one())
    }
}

impl<S: Ring> Add for Poly<S> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let get = |v: &Vec<S>, i: usize| v.get(i).cloned().unwrap_or_else(S::zero);
        Poly::new((0..n).map(|i| get(&self.coeffs, i) + get(&rhs.coeffs, i)).collect())
    }
}

impl<S: Ring> Neg for Poly<S> {
    type Output = Self;
    fn neg(self) -> Self {
        Poly {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl<S: Ring> Sub for Poly<S> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<S: Ring> Mul for Poly<S> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![S::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }
}
