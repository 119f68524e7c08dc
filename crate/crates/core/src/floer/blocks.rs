use std::collections::BTreeMap;

use crate::matrix::Matrix;
use crate::scalar::Ring;

/// Block operator keyed by `(target label, source label)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Blocks<S> {
    blocks: BTreeMap<(usize, usize), Matrix<S>>,
}

impl<S: Ring> Default for Blocks<S> {
    fn default() -> Self {
        Self::new()
    }
}

impl<S: Ring> Blocks<S> {
    pub fn new() -> Self {
        Blocks { blocks: BTreeMap::new() }
    }

    pub fn insert(&mut self, t: usize, s: usize, m: Matrix<S>) {
        if m.is_zero() {
            self.blocks.remove(&(t, s));
        } else {
            self.blocks.insert((t, s), m);
        }
    }

    pub fn get(&self, t: usize, s: usize) -> Option<&Matrix<S>> {
        self.blocks.get(&(t, s))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(usize, usize), &Matrix<S>)> {
        self.blocks.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// `(self ∘ other)` at `(t, s)`; `rows x cols` is the block shape.
    pub fn product_at(&self, other: &Blocks<S>, t: usize, s: usize, rows: usize, cols: usize) -> Matrix<S> {
        let mut acc = Matrix::zeros(rows, cols);
        for ((_, mid), a) in self.blocks.range((t, 0)..=(t, usize::MAX)) {
            if let Some(b) = other.blocks.get(&(*mid, s)) {
                acc = &acc + &(a * b);
            }
        }
        acc
    }

    pub fn compose(&self, other: &Blocks<S>) -> Blocks<S> {
        let mut out: BTreeMap<(usize, usize), Matrix<S>> = BTreeMap::new();
        for (&(t, mid), a) in &self.blocks {
            for ((_, s), b) in other.blocks.range((mid, 0)..=(mid, usize::MAX)) {
                let p = a * b;
                let e = out.entry((t, *s)).or_insert_with(|| Matrix::zeros(p.rows(), p.cols()));
                *e = &*e + &p;
            }
        }
        let mut r = Blocks::new();
        for ((t, s), m) in out {
            r.insert(t, s, m);
        }
        r
    }

    pub fn add(&self, other: &Blocks<S>) -> Blocks<S> {
        let mut r = self.clone();
        for (&(t, s), m) in &other.blocks {
            let v = match r.blocks.get(&(t, s)) {
                Some(a) => a + m,
                None => m.clone(),
            };
            r.insert(t, s, v);
        }
        r
    }

    pub fn scale(&self, c: &S) -> Blocks<S> {
        let mut r = Blocks::new();
        for (&(t, s), m) in &self.blocks {
            r.insert(t, s, m.scale(c));
        }
        r
    }

    pub fn sub(&self, other: &Blocks<S>) -> Blocks<S> {
        self.add(&other.scale(&-S::one()))
    }
}
