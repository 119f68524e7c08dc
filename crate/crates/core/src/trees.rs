//! Decorated planar rooted trees indexing strata of the spaces of A∞ operations.

use std::collections::HashMap;
use std::fmt;

use num_integer::binomial;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::novikov::{DiscreteSubmonoid, MonoidElement};
use crate::scalar::Rational;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Child {
    Leaf,
    Node(Box<DecoratedTree>),
}

/// A decorated tree, given by its top interior vertex (the neighbour of the root leaf).
///
/// Children are in planar order; exterior leaves are numbered `1..=k` from left to right.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct DecoratedTree {
    pub beta: MonoidElement,
    pub children: Vec<Child>,
}

/// One interior vertex in preorder: decoration, number of inputs, parent position.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Vertex {
    pub beta: MonoidElement,
    pub inputs: usize,
    pub parent: Option<usize>,
}

impl DecoratedTree {
    pub fn corolla(beta: MonoidElement, k: usize) -> Self {
        DecoratedTree {
            beta,
            children: vec![Child::Leaf; k],
        }
    }

    pub fn leaves(&self) -> usize {
        self.children
            .iter()
            .map(|c| match c {
                Child::Leaf => 1,
                Child::Node(t) => t.leaves(),
            })
            .sum()
    }

    pub fn total_beta(&self) -> MonoidElement {
        self.children.iter().fold(self.beta.clone(), |acc, c| match c {
            Child::Leaf => acc,
            Child::Node(t) => &acc + &t.total_beta(),
        })
    }

    /// Interior vertices in preorder.
    pub fn vertices(&self) -> Vec<Vertex> {
        fn walk(t: &DecoratedTree, parent: Option<usize>, out: &mut Vec<Vertex>) {
            let me = out.len();
            out.push(Vertex {
                beta: t.beta.clone(),
                inputs: t.children.len(),
                parent,
            });
            for c in &t.children {
                if let Child::Node(s) = c {
                    walk(s, Some(me), out);
                }
            }
        }
        let mut v = Vec::new();
        walk(self, None, &mut v);
        v
    }

    /// Number of interior edges.
    pub fn corner_codim(&self) -> usize {
        self.vertices().len() - 1
    }

    pub fn is_stable(&self) -> bool {
        let ok = self.beta.energy > Rational::zero() || (self.beta.is_unit() && self.children.len() >= 2);
        ok && self.children.iter().all(|c| match c {
            Child::Leaf => true,
            Child::Node(t) => t.is_stable(),
        })
    }

    /// Canonical planar code, e.g. `[x,[E:1,mu:2|x]]`.
    pub fn code(&self) -> String {
        let mut s = String::from("[");
        if !self.beta.is_unit() {
            s.push_str(&self.beta.to_string());
            s.push('|');
        }
        let parts: Vec<String> = self
            .children
            .iter()
            .map(|c| match c {
                Child::Leaf => "x".to_string(),
                Child::Node(t) => t.code(),
            })
            .collect();
        s.push_str(&parts.join(","));
        s.push(']');
        s
    }

    /// Formal dimension `Σ_v (μ(β_v) + dimL + k_v − 2) − dimL · #interior edges`.
    pub fn dimension(&self, dim_l: i64) -> i64 {
        let vs = self.vertices();
        let sum: i64 = vs.iter().map(|v| v.beta.mu + dim_l + v.inputs as i64 - 2).sum();
        sum - dim_l * (vs.len() as i64 - 1)
    }

    /// Inserts `self` at input `i` (1-based) of `host`.
    pub fn graft_into(&self, host: &DecoratedTree, i: usize) -> Result<DecoratedTree> {
        graft(self, host, i)
    }

    /// Contracts the interior edges above the vertices with the given preorder indices.
    pub fn contract(&self, edges: &[usize]) -> DecoratedTree {
        fn go(t: &DecoratedTree, next: &mut usize, edges: &[usize]) -> DecoratedTree {
            *next += 1;
            let mut beta = t.beta.clone();
            let mut children = Vec::new();
            for c in &t.children {
                match c {
                    Child::Leaf => children.push(Child::Leaf),
                    Child::Node(s) => {
                        let idx = *next;
                        let sub = go(s, next, edges);
                        if edges.contains(&idx) {
                            beta = &beta + &sub.beta;
                            children.extend(sub.children);
                        } else {
                            children.push(Child::Node(Box::new(sub)));
                        }
                    }
                }
            }
            DecoratedTree { beta, children }
        }
        go(self, &mut 0, edges)
    }

    /// All ways of writing `self` as `graft(t1, t2, i)`: one per interior edge.
    pub fn splits(&self) -> Vec<(DecoratedTree, DecoratedTree, usize)> {
        let n = self.vertices().len();
        (1..n).map(|v| self.cut_at(v)).collect()
    }

    /// Removes the subtree at preorder vertex `v` (not the top vertex), leaving a leaf.
    fn cut_at(&self, v: usize) -> (DecoratedTree, DecoratedTree, usize) {
        fn go(t: &DecoratedTree, next: &mut usize, leaves_before: &mut usize, v: usize, found: &mut Option<(DecoratedTree, usize)>) -> DecoratedTree {
            *next += 1;
            let mut children = Vec::new();
            for c in &t.children {
                match c {
                    Child::Leaf => {
                        *leaves_before += 1;
                        children.push(Child::Leaf);
                    }
                    Child::Node(s) if *next == v && found.is_none() => {
                        *found = Some(((**s).clone(), *leaves_before + 1));
                        *leaves_before += 1;
                        *next += s.vertices().len();
                        children.push(Child::Leaf);
                    }
                    Child::Node(s) => {
                        let sub = go(s, next, leaves_before, v, found);
                        children.push(Child::Node(Box::new(sub)));
                    }
                }
            }
            DecoratedTree {
                beta: t.beta.clone(),
                children,
            }
        }
        let mut found = None;
        let host = go(self, &mut 0, &mut 0, v, &mut found);
        let (sub, i) = found.expect("vertex index in range");
        (sub, host, i)
    }
}

impl fmt::Display for DecoratedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.code())
    }
}

/// Replaces input `i` (1-based) of `host` by `t`.
pub fn graft(t: &DecoratedTree, host: &DecoratedTree, i: usize) -> Result<DecoratedTree> {
    fn go(host: &DecoratedTree, t: &DecoratedTree, i: usize, seen: &mut usize) -> DecoratedTree {
        let mut children = Vec::new();
        for c in &host.children {
            match c {
                Child::Leaf => {
                    *seen += 1;
                    if *seen == i {
                        children.push(Child::Node(Box::new(t.clone())));
                    } else {
                        children.push(Child::Leaf);
                    }
                }
                Child::Node(s) => children.push(Child::Node(Box::new(go(s, t, i, seen)))),
            }
        }
        DecoratedTree {
            beta: host.beta.clone(),
            children,
        }
    }
    let k = host.leaves();
    if i == 0 || i > k {
        return Err(Error::IndexOutOfRange { index: i, len: k });
    }
    Ok(go(host, t, i, &mut 0))
}

/// Memoized enumeration of stable decorated trees over one monoid.
pub struct TreeEnumerator<'a> {
    g: &'a DiscreteSubmonoid,
    trees: HashMap<(usize, MonoidElement), Vec<DecoratedTree>>,
    forests: HashMap<(usize, MonoidElement), Vec<Vec<Child>>>,
}

impl<'a> TreeEnumerator<'a> {
    pub fn new(g: &'a DiscreteSubmonoid) -> Self {
        TreeEnumerator {
            g,
            trees: HashMap::new(),
            forests: HashMap::new(),
        }
    }

    /// Stable trees with `k` inputs and total decoration `beta`, sorted by code.
    pub fn trees(&mut self, k: usize, beta: &MonoidElement) -> Vec<DecoratedTree> {
        if let Some(v) = self.trees.get(&(k, beta.clone())) {
            return v.clone();
        }
        let mut out = Vec::new();
        for (root, rest) in self.g.splittings(beta) {
            if root.is_unit() {
                // at least two children, so the first child is strictly smaller
                for (first, k1, b1) in self.children_of(k, &rest, true) {
                    let Some(b2) = rest.checked_sub(&b1) else { continue };
                    if k1 == k && b2.is_unit() {
                        continue;
                    }
                    for tail in self.forests(k - k1, &b2) {
                        if tail.is_empty() {
                            continue;
                        }
                        let mut children = vec![first.clone()];
                        children.extend(tail);
                        out.push(DecoratedTree {
                            beta: root.clone(),
                            children,
                        });
                    }
                }
            } else {
                for children in self.forests(k, &rest) {
                    out.push(DecoratedTree {
                        beta: root.clone(),
                        children,
                    });
                }
            }
        }
        out.sort_by_key(|t| t.code());
        self.trees.insert((k, beta.clone()), out.clone());
        out
    }

    /// Candidate first children within budget `(k, beta)`: leaf or stable subtree;
    /// `proper` excludes a subtree using the whole budget.
    fn children_of(&mut self, k: usize, beta: &MonoidElement, proper: bool) -> Vec<(Child, usize, MonoidElement)> {
        let mut out = Vec::new();
        if k >= 1 {
            out.push((Child::Leaf, 1, MonoidElement::unit()));
        }
        for b1 in self.g.below(&beta.energy) {
            if beta.checked_sub(&b1).map_or(true, |r| !self.g.contains(&r)) {
                continue;
            }
            for k1 in 0..=k {
                if b1.is_unit() && k1 < 2 {
                    continue;
                }
                if proper && k1 == k && &b1 == beta {
                    continue;
                }
                for t in self.trees(k1, &b1) {
                    out.push((Child::Node(Box::new(t)), k1, b1.clone()));
                }
            }
        }
        out
    }

    /// Ordered sequences of children with `k` leaves in total and decoration `beta`.
    fn forests(&mut self, k: usize, beta: &MonoidElement) -> Vec<Vec<Child>> {
        if let Some(v) = self.forests.get(&(k, beta.clone())) {
            return v.clone();
        }
        let mut out = Vec::new();
        if k == 0 && beta.is_unit() {
            out.push(Vec::new());
        }
        for (first, k1, b1) in self.children_of(k, beta, false) {
            let Some(b2) = beta.checked_sub(&b1) else { continue };
            for tail in self.forests(k - k1, &b2) {
                let mut f = vec![first.clone()];
                f.extend(tail);
                out.push(f);
            }
        }
        self.forests.insert((k, beta.clone()), out.clone());
        out
    }
}

pub fn enumerate_trees(g: &DiscreteSubmonoid, k: usize, beta: &MonoidElement) -> Vec<DecoratedTree> {
    TreeEnumerator::new(g).trees(k, beta)
}

pub fn corner_strata(g: &DiscreteSubmonoid, k: usize, beta: &MonoidElement, m: usize) -> Vec<DecoratedTree> {
    enumerate_trees(g, k, beta)
        .into_iter()
        .filter(|t| t.corner_codim() == m)
        .collect()
}

pub fn corner_codim(t: &DecoratedTree) -> usize {
    t.corner_codim()
}

/// `Σ_v (μ(β_v)+dimL+k_v−2) − dimL·#edges`; equal to `μ(β)+dimL+k−2−codim` for every tree.
pub fn tree_dimension(t: &DecoratedTree, dim_l: i64) -> i64 {
    let d = t.dimension(dim_l);
    debug_assert_eq!(
        d,
        t.total_beta().mu + dim_l + t.leaves() as i64 - 2 - t.corner_codim() as i64
    );
    d
}

/// Exponent `(k₁−1)(k₂−1) + dimL + k₁ + (i−1)(1 + (μ(β₂)+k₂)·dimL)`.
pub fn boundary_sign_eps(k1: i64, k2: i64, i: i64, mu2: i64, dim_l: i64) -> i64 {
    (k1 - 1) * (k2 - 1) + dim_l + k1 + (i - 1) * (1 + (mu2 + k2) * dim_l)
}

/// A codimension-one boundary component: the `(β₂, k₂)` piece sits at input `i` of the `(β₁, k₁)` piece.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BoundaryTerm {
    pub beta1: MonoidElement,
    pub k1: usize,
    pub beta2: MonoidElement,
    pub k2: usize,
    pub i: usize,
    pub sign: i64,
}

fn stable(k: usize, b: &MonoidElement) -> bool {
    b.energy > Rational::zero() || k >= 2
}

pub fn boundary_terms(g: &DiscreteSubmonoid, k: usize, beta: &MonoidElement, dim_l: i64) -> Vec<BoundaryTerm> {
    let mut out = Vec::new();
    for (b1, b2) in g.splittings(beta) {
        for k1 in 0..=k + 1 {
            let k2 = k + 1 - k1;
            if !stable(k1, &b1) || !stable(k2, &b2) {
                continue;
            }
            for i in 1..=k1 {
                let e = boundary_sign_eps(k1 as i64, k2 as i64, i as i64, b2.mu, dim_l);
                out.push(BoundaryTerm {
                    beta1: b1.clone(),
                    k1,
                    beta2: b2.clone(),
                    k2,
                    i,
                    sign: if e.rem_euclid(2) == 0 { 1 } else { -1 },
                });
            }
        }
    }
    out
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TowerCheck {
    pub ok: bool,
    pub flagged: usize,
    pub top_strata: usize,
    pub expected: usize,
}

fn subsets(n: usize, l: usize) -> Vec<Vec<usize>> {
    if l == 0 {
        return vec![Vec::new()];
    }
    if n < l {
        return Vec::new();
    }
    let mut out = subsets(n - 1, l);
    for mut s in subsets(n - 1, l - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Counts pairs (stratum of codim m+ℓ, choice of ℓ of its edges) whose contraction
/// is a stratum of codim m.
pub fn corner_tower_check(g: &DiscreteSubmonoid, k: usize, beta: &MonoidElement, m: usize, l: usize) -> TowerCheck {
    let all = enumerate_trees(g, k, beta);
    let lower: std::collections::HashSet<String> =
        all.iter().filter(|t| t.corner_codim() == m).map(|t| t.code()).collect();
    let top: Vec<&DecoratedTree> = all.iter().filter(|t| t.corner_codim() == m + l).collect();
    let mut flagged = 0;
    let mut ok = true;
    for t in &top {
        for s in subsets(m + l, l) {
            let edges: Vec<usize> = s.iter().map(|e| e + 1).collect();
            let c = t.contract(&edges);
            if lower.contains(&c.code()) {
                flagged += 1;
            } else {
                ok = false;
            }
        }
    }
    let expected = binomial(m + l, l) * top.len();
    TowerCheck {
        ok: ok && flagged == expected,
        flagged,
        top_strata: top.len(),
        expected,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    fn unit() -> MonoidElement {
        MonoidElement::unit()
    }

    #[test]
    fn small_counts() {
        let g = DiscreteSubmonoid::trivial();
        let n: Vec<usize> = (2..=5).map(|k| enumerate_trees(&g, k, &unit()).len()).collect();
        assert_eq!(n, vec![1, 3, 11, 45]);
        assert!(enumerate_trees(&g, 1, &unit()).is_empty());
        assert!(enumerate_trees(&g, 0, &unit()).is_empty());
    }

    #[test]
    fn graft_corollas() {
        let c = DecoratedTree::corolla(unit(), 2);
        assert_eq!(graft(&c, &c, 1).unwrap().code(), "[[x,x],x]");
        assert_eq!(graft(&c, &c, 2).unwrap().code(), "[x,[x,x]]");
        assert!(matches!(graft(&c, &c, 3), Err(Error::IndexOutOfRange { index: 3, len: 2 })));
    }

    #[test]
    fn energetic_vertices_may_have_few_inputs() {
        let g = DiscreteSubmonoid::new(vec![MonoidElement::new(q(1), 0)]).unwrap();
        let b = MonoidElement::new(q(1), 0);
        assert_eq!(enumerate_trees(&g, 0, &b).len(), 1);
        // [β|x], and a unit vertex carrying a leaf and a 0-input β vertex in either order
        assert_eq!(enumerate_trees(&g, 1, &b).len(), 3);
    }

    #[test]
    fn boundary_sign_example() {
        assert_eq!(boundary_sign_eps(2, 1, 1, 0, 2), 4);
    }
}
