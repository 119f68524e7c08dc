use std::collections::BTreeMap;

use crate::scalar::{sign, Ring};

/// Sparse multilinear map `V^{⊗k} → V` on basis tuples.
///
/// Coefficients live in any ring, so the same type carries constant
/// operations and polynomial families in `t`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiOp<C> {
    arity: usize,
    entries: BTreeMap<(Vec<usize>, usize), C>,
}

impl<C: Ring> MultiOp<C> {
    pub fn zero(arity: usize) -> Self {
        MultiOp {
            arity,
            entries: BTreeMap::new(),
        }
    }

    /// Builds from `(inputs, output, coeff)`; repeated keys accumulate.
    pub fn from_entries<I: IntoIterator<Item = (Vec<usize>, usize, C)>>(arity: usize, it: I) -> Self {
        let mut op = MultiOp::zero(arity);
        for (i, o, c) in it {
            op.add_entry(i, o, c);
        }
        op
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn add_entry(&mut self, inputs: Vec<usize>, output: usize, c: C) {
        assert_eq!(inputs.len(), self.arity, "arity mismatch");
        let key = (inputs, output);
        let v = match self.entries.remove(&key) {
            Some(old) => old + c,
            None => c,
        };
        if !v.is_zero() {
            self.entries.insert(key, v);
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (&[usize], usize, &C)> {
        self.entries.iter().map(|((i, o), c)| (i.as_slice(), *o, c))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, inputs: &[usize], output: usize) -> C {
        self.entries
            .get(&(inputs.to_vec(), output))
            .cloned()
            .unwrap_or_else(C::zero)
    }

    pub fn remove(&mut self, inputs: &[usize], output: usize) -> Option<C> {
        self.entries.remove(&(inputs.to_vec(), output))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.arity, other.arity, "arity mismatch");
        let mut out = self.clone();
        for ((i, o), c) in &other.entries {
            out.add_entry(i.clone(), *o, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.map(|c| -c.clone())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &C) -> Self {
        self.map(|c| c.clone() * s.clone())
    }

    pub fn map<D: Ring>(&self, f: impl Fn(&C) -> D) -> MultiOp<D> {
        MultiOp::from_entries(
            self.arity,
            self.entries.iter().map(|((i, o), c)| (i.clone(), *o, f(c))),
        )
    }

    /// `self(h_1, …, inner(h_i, …), …)` with `i` 1-based. With `koszul` the
    /// term carries `(−1)^{deg′h_1+⋯+deg′h_{i−1}}`, where `deg′ = deg − 1`.
    pub fn insert_at(&self, i: usize, inner: &MultiOp<C>, degrees: &[i64], koszul: bool) -> MultiOp<C> {
        assert!(i >= 1 && i <= self.arity, "insertion slot out of range");
        let arity = self.arity - 1 + inner.arity;
        let mut by_slot: BTreeMap<usize, Vec<(&Vec<usize>, usize, &C)>> = BTreeMap::new();
        for ((inp, o), c) in &self.entries {
            by_slot.entry(inp[i - 1]).or_default().push((inp, *o, c));
        }
        let mut out = MultiOp::zero(arity);
        for ((inner_in, mid), a) in &inner.entries {
            let Some(outers) = by_slot.get(mid) else { continue };
            for (outer_in, o, b) in outers {
                let mut key = outer_in[..i - 1].to_vec();
                key.extend_from_slice(inner_in);
                key.extend_from_slice(&outer_in[i..]);
                let mut c = (*b).clone() * a.clone();
                if koszul {
                    let e: i64 = outer_in[..i - 1].iter().map(|&j| degrees[j] - 1).sum();
                    c = c * sign::<C>(e);
                }
                out.add_entry(key, *o, c);
            }
        }
        out
    }

    /// First entry violating `deg out = Σ deg in − k + shift`.
    pub fn degree_violation(&self, degrees: &[i64], shift: i64) -> Option<(Vec<usize>, usize)> {
        self.entries.keys().find_map(|(inp, o)| {
            let want: i64 = inp.iter().map(|&j| degrees[j]).sum::<i64>() - inp.len() as i64 + shift;
            (degrees[*o] != want).then(|| (inp.clone(), *o))
        })
    }
}
