//! Corner calculus on the cube model `[0,1]^n`.
//!
//! Every coordinate has a corner at each endpoint, so a codimension-`k`
//! corner component is a `k`-subset of coordinates with an endpoint per
//! coordinate. Nested corners `Ŝ_{k_r}(⋯Ŝ_{k_1}(X))` are stored layer by
//! layer, innermost first.

mod admissible;
mod smoothing;

pub use admissible::{admissible_coord_check, AdmissibleOptions, AdmissibleReport, CoordChange, OrderResidual};
pub use smoothing::{halton, smoothing_property_check, SmoothingMap, SmoothingReport};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_integer::binomial;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{format_rational, q, qf, Rational};

/// A corner component: frozen coordinates (1-based) and their endpoints.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct CornerComponent {
    pub sigma: BTreeMap<usize, u8>,
}

impl CornerComponent {
    pub fn codim(&self) -> usize {
        self.sigma.len()
    }

    /// Coordinates of the `(n − k)`-cube carried by the component.
    pub fn free_coords(&self, n: usize) -> Vec<usize> {
        (1..=n).filter(|i| !self.sigma.contains_key(i)).collect()
    }

    fn disjoint_union(&self, other: &CornerComponent) -> CornerComponent {
        let mut sigma = self.sigma.clone();
        for (i, s) in &other.sigma {
            let clash = sigma.insert(*i, *s);
            debug_assert!(clash.is_none());
        }
        CornerComponent { sigma }
    }
}

impl fmt::Display for CornerComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.sigma.iter().map(|(i, s)| format!("t{i}={s}")).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl Serialize for CornerComponent {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A component of an iterated normalized corner, innermost layer first.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub struct NestedCorner {
    pub layers: Vec<CornerComponent>,
}

impl NestedCorner {
    pub fn flatten(&self) -> CornerComponent {
        self.layers
            .iter()
            .fold(CornerComponent::default(), |acc, l| acc.disjoint_union(l))
    }

    /// Merges layers `i` and `i + 1`, which is the covering map applied at
    /// that depth.
    pub fn merge(&self, i: usize) -> NestedCorner {
        let mut layers = self.layers[..i].to_vec();
        layers.push(self.layers[i].disjoint_union(&self.layers[i + 1]));
        layers.extend_from_slice(&self.layers[i + 2..]);
        NestedCorner { layers }
    }
}

fn subsets(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if items.len() < k {
        return Vec::new();
    }
    let mut out = Vec::new();
    for mut s in subsets(&items[1..], k - 1) {
        s.insert(0, items[0]);
        out.push(s);
    }
    out.extend(subsets(&items[1..], k));
    out
}

fn corners_on(coords: &[usize], k: usize) -> Vec<CornerComponent> {
    let mut out = Vec::new();
    for a in subsets(coords, k) {
        for mask in 0..(1u32 << k) {
            let sigma = a
                .iter()
                .enumerate()
                .map(|(j, &i)| (i, ((mask >> j) & 1) as u8))
                .collect();
            out.push(CornerComponent { sigma });
        }
    }
    out
}

/// All `C(n,k)·2^k` components of `Ŝ_k([0,1]^n)`; empty if `k > n`.
pub fn normalized_corner(n: usize, k: usize) -> Vec<CornerComponent> {
    let all: Vec<usize> = (1..=n).collect();
    corners_on(&all, k)
}

/// Components of `Ŝ_{k_r}(⋯Ŝ_{k_1}([0,1]^n))` with `ks = [k_1, …, k_r]`.
pub fn nested_corners(n: usize, ks: &[usize]) -> Vec<NestedCorner> {
    let mut acc = vec![NestedCorner { layers: Vec::new() }];
    for &k in ks {
        let mut next = Vec::new();
        for nc in &acc {
            let free = nc.flatten().free_coords(n);
            for layer in corners_on(&free, k) {
                let mut layers = nc.layers.clone();
                layers.push(layer);
                next.push(NestedCorner { layers });
            }
        }
        acc = next;
    }
    acc
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CoveringMap {
    pub n: usize,
    pub l: usize,
    pub k: usize,
    /// source component of `Ŝ_l(Ŝ_k)` and its image in `Ŝ_{k+l}`
    pub table: Vec<(NestedCorner, CornerComponent)>,
    /// fiber size ↦ number of target components with that fiber size
    pub fiber_histogram: BTreeMap<usize, usize>,
    pub surjective: bool,
    pub expected_fiber: usize,
}

impl CoveringMap {
    pub fn fibers_ok(&self) -> bool {
        self.surjective && self.fiber_histogram.keys().all(|&s| s == self.expected_fiber)
    }
}

/// `π_{l,k} : Ŝ_l(Ŝ_k(X)) → Ŝ_{k+l}(X)`, `(A, B) ↦ A ⊔ B`.
pub fn covering_map(n: usize, l: usize, k: usize) -> CoveringMap {
    let table: Vec<_> = nested_corners(n, &[k, l])
        .into_iter()
        .map(|nc| {
            let img = nc.flatten();
            (nc, img)
        })
        .collect();
    let mut fibers: BTreeMap<&CornerComponent, usize> = BTreeMap::new();
    for (_, t) in &table {
        *fibers.entry(t).or_default() += 1;
    }
    let targets = normalized_corner(n, k + l);
    let surjective = targets.iter().all(|t| fibers.contains_key(t));
    let mut fiber_histogram = BTreeMap::new();
    for s in fibers.values() {
        *fiber_histogram.entry(*s).or_default() += 1;
    }
    CoveringMap {
        n,
        l,
        k,
        fiber_histogram,
        surjective,
        expected_fiber: binomial(k + l, l),
        table,
    }
}

/// Both routes `Ŝ_{k1}(Ŝ_{k2}(Ŝ_{k3})) → Ŝ_{k1+k2+k3}` agree on every
/// component.
pub fn covering_square_check(n: usize, k1: usize, k2: usize, k3: usize) -> bool {
    nested_corners(n, &[k3, k2, k1]).iter().all(|nc| {
        // top then right: π_{k1,k2} inside Ŝ_{k3}, then π_{k1+k2,k3}
        let right = nc.merge(1).merge(0);
        // left then bottom: Ŝ_{k1}(π_{k2,k3}), then π_{k1,k2+k3}
        let down = nc.merge(0).merge(0);
        right == down && right.layers.len() == 1
    })
}

/// Interval with independently open or closed ends.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Interval {
    pub fn closed(lo: Rational, hi: Rational) -> Self {
        Interval {
            lo,
            hi,
            lo_closed: true,
            hi_closed: true,
        }
    }

    pub fn length(&self) -> Rational {
        self.hi.clone() - self.lo.clone()
    }

    pub fn contains(&self, x: &Rational) -> bool {
        let above = if self.lo_closed { *x >= self.lo } else { *x > self.lo };
        let below = if self.hi_closed { *x <= self.hi } else { *x < self.hi };
        above && below
    }

    pub fn meets(&self, o: &Interval) -> bool {
        let (lo, lo_closed) = if self.lo > o.lo || (self.lo == o.lo && !self.lo_closed) {
            (&self.lo, self.lo_closed)
        } else {
            (&o.lo, o.lo_closed)
        };
        let (hi, hi_closed) = if self.hi < o.hi || (self.hi == o.hi && !self.hi_closed) {
            (&self.hi, self.hi_closed)
        } else {
            (&o.hi, o.hi_closed)
        };
        lo < hi || (lo == hi && lo_closed && hi_closed)
    }
}

pub type BoxRegion = Vec<Interval>;

fn box_volume(b: &BoxRegion) -> Rational {
    b.iter().fold(Rational::one(), |acc, i| acc * i.length())
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CollaredCube {
    n: usize,
    tau: Rational,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct PartitionCheck {
    pub strata: usize,
    pub volume: String,
    pub expected: String,
    pub disjoint: bool,
}

impl PartitionCheck {
    pub fn passed(&self) -> bool {
        self.disjoint && self.volume == self.expected
    }
}

impl CollaredCube {
    pub fn new(n: usize, tau: Rational) -> Result<Self> {
        if tau <= Rational::zero() {
            return Err(Error::PreconditionFailed(vec![format!(
                "collar width {} must be positive",
                format_rational(&tau)
            )]));
        }
        Ok(CollaredCube { n, tau })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn tau(&self) -> &Rational {
        &self.tau
    }

    fn check_point(&self, x: &[Rational]) -> Result<()> {
        let lo = -self.tau.clone();
        let hi = Rational::one() + self.tau.clone();
        if x.len() != self.n || x.iter().any(|v| *v < lo || *v > hi) {
            return Err(Error::OutOfDomain(format!(
                "point outside [-τ, 1+τ]^{} with τ = {}",
                self.n,
                format_rational(&self.tau)
            )));
        }
        Ok(())
    }

    /// Stratum of `x`: `k` is the number of coordinates outside `[0,1]`, and
    /// the component records on which side each one lies.
    pub fn classify_point(&self, x: &[Rational]) -> Result<(usize, CornerComponent)> {
        self.check_point(x)?;
        let mut sigma = BTreeMap::new();
        for (i, v) in x.iter().enumerate() {
            if *v < Rational::zero() {
                sigma.insert(i + 1, 0);
            } else if *v > Rational::one() {
                sigma.insert(i + 1, 1);
            }
        }
        Ok((sigma.len(), CornerComponent { sigma }))
    }

    /// The retraction `R`, clamping each coordinate to `[0,1]`.
    pub fn retract(&self, x: &[Rational]) -> Result<Vec<Rational>> {
        self.check_point(x)?;
        Ok(x.iter().map(|v| clamp(v, &q(0), &q(1))).collect())
    }

    /// Box of the stratum collared from `c`.
    pub fn stratum_box(&self, c: &CornerComponent) -> BoxRegion {
        (1..=self.n)
            .map(|i| match c.sigma.get(&i) {
                None => Interval::closed(q(0), q(1)),
                Some(0) => Interval {
                    lo: -self.tau.clone(),
                    hi: q(0),
                    lo_closed: true,
                    hi_closed: false,
                },
                Some(_) => Interval {
                    lo: q(1),
                    hi: q(1) + self.tau.clone(),
                    lo_closed: false,
                    hi_closed: true,
                },
            })
            .collect()
    }

    /// All strata `(component, box)` over every codimension.
    pub fn strata(&self) -> Vec<(CornerComponent, BoxRegion)> {
        (0..=self.n)
            .flat_map(|k| normalized_corner(self.n, k))
            .map(|c| {
                let b = self.stratum_box(&c);
                (c, b)
            })
            .collect()
    }

    /// Strata boxes are pairwise disjoint and their volumes sum to
    /// `(1 + 2τ)^n`.
    pub fn partition_check(&self) -> PartitionCheck {
        let strata = self.strata();
        let volume: Rational = strata.iter().map(|(_, b)| box_volume(b)).sum();
        let expected = (0..self.n).fold(Rational::one(), |acc, _| acc * (q(1) + q(2) * self.tau.clone()));
        let mut disjoint = true;
        for (i, (_, a)) in strata.iter().enumerate() {
            for (_, b) in &strata[i + 1..] {
                if a.iter().zip(b).all(|(x, y)| x.meets(y)) {
                    disjoint = false;
                }
            }
        }
        PartitionCheck {
            strata: strata.len(),
            volume: format_rational(&volume),
            expected: format_rational(&expected),
            disjoint,
        }
    }

    /// `R` is idempotent, fixes `[0,1]^n`, and each point's stratum matches
    /// the box containing it. Exact on a grid through every breakpoint.
    pub fn retraction_check(&self) -> bool {
        let t = &self.tau;
        let axis = vec![
            -t.clone(),
            -t.clone() / q(2),
            q(0),
            qf(1, 2),
            q(1),
            q(1) + t.clone() / q(2),
            q(1) + t.clone(),
        ];
        let strata = self.strata();
        grid(&vec![axis; self.n]).iter().all(|x| {
            let r = self.retract(x).expect("grid lies in the collared cube");
            let inside = x.iter().all(|v| *v >= q(0) && *v <= q(1));
            let (_, comp) = self.classify_point(x).expect("grid lies in the collared cube");
            let hits: Vec<_> = strata
                .iter()
                .filter(|(_, b)| b.iter().zip(x).all(|(i, v)| i.contains(v)))
                .collect();
            self.retract(&r).as_ref() == Ok(&r)
                && (!inside || r == *x)
                && hits.len() == 1
                && hits[0].0 == comp
        })
    }
}

fn clamp(v: &Rational, lo: &Rational, hi: &Rational) -> Rational {
    if v < lo {
        lo.clone()
    } else if v > hi {
        hi.clone()
    } else {
        v.clone()
    }
}

fn grid(axes: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let mut out = vec![Vec::new()];
    for axis in axes {
        out = out
            .into_iter()
            .flat_map(|p| {
                axis.iter().map(move |v| {
                    let mut p = p.clone();
                    p.push(v.clone());
                    p
                })
            })
            .collect();
    }
    out
}

/// A boundary face `t_coord = side` of the cube.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Face {
    pub coord: usize,
    pub side: u8,
}

/// An iterated partial collaring of `[0,1]^n`: the current box and the
/// boxes the successive retractions clamp onto.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PartialCollaring {
    region: Vec<(Rational, Rational)>,
    clamps: Vec<Vec<(Rational, Rational)>>,
}

impl PartialCollaring {
    pub fn cube(n: usize) -> Self {
        PartialCollaring {
            region: vec![(q(0), q(1)); n],
            clamps: Vec::new(),
        }
    }

    pub fn region(&self) -> &[(Rational, Rational)] {
        &self.region
    }

    /// Attaches a collar of width `tau` along `faces` of the current box.
    pub fn collar(&self, faces: &BTreeSet<Face>, tau: &Rational) -> Result<Self> {
        let n = self.region.len();
        let mut region = self.region.clone();
        for f in faces {
            if f.coord == 0 || f.coord > n || f.side > 1 {
                return Err(Error::OutOfDomain(format!("face t{}={} of a {n}-cube", f.coord, f.side)));
            }
            let (lo, hi) = &mut region[f.coord - 1];
            if f.side == 0 {
                *lo = lo.clone() - tau.clone();
            } else {
                *hi = hi.clone() + tau.clone();
            }
        }
        let mut clamps = self.clamps.clone();
        clamps.push(self.region.clone());
        Ok(PartialCollaring { region, clamps })
    }

    /// The composite retraction back to `[0,1]^n`.
    pub fn retract(&self, x: &[Rational]) -> Vec<Rational> {
        let mut y = x.to_vec();
        for b in self.clamps.iter().rev() {
            for (v, (lo, hi)) in y.iter_mut().zip(b) {
                *v = clamp(v, lo, hi);
            }
        }
        y
    }

    /// Coordinate `i` (0-based) of the retraction, which acts factorwise.
    pub fn retract_coord(&self, i: usize, v: &Rational) -> Rational {
        self.clamps
            .iter()
            .rev()
            .fold(v.clone(), |acc, b| clamp(&acc, &b[i].0, &b[i].1))
    }

    fn breakpoints(&self) -> Vec<BTreeSet<Rational>> {
        let n = self.region.len();
        let mut out = vec![BTreeSet::new(); n];
        for b in self.clamps.iter().chain(std::iter::once(&self.region)) {
            for (i, (lo, hi)) in b.iter().enumerate() {
                out[i].insert(lo.clone());
                out[i].insert(hi.clone());
            }
        }
        out
    }
}

/// `((X)^{c1⊞τ})^{c2⊞τ}`, `((X)^{c2⊞τ})^{c1⊞τ}` and `(X)^{(c1⊔c2)⊞τ}` have
/// equal regions and equal retractions.
pub fn partial_collar_commute(n: usize, c1: &BTreeSet<Face>, c2: &BTreeSet<Face>, tau: &Rational) -> Result<bool> {
    if *tau <= Rational::zero() {
        return Err(Error::PreconditionFailed(vec!["collar width must be positive".into()]));
    }
    if let Some(f) = c1.intersection(c2).next() {
        return Err(Error::InvalidPartition(format!("face t{}={} is in both sets", f.coord, f.side)));
    }
    let x = PartialCollaring::cube(n);
    let a = x.collar(c1, tau)?.collar(c2, tau)?;
    let b = x.collar(c2, tau)?.collar(c1, tau)?;
    let union: BTreeSet<Face> = c1.union(c2).copied().collect();
    let u = x.collar(&union, tau)?;
    if a.region != u.region || b.region != u.region {
        return Ok(false);
    }
    // the retractions are products of piecewise linear maps of one
    // variable, so checking each factor at breakpoints and midpoints decides
    for i in 0..n {
        let mut pts: BTreeSet<Rational> = BTreeSet::new();
        for c in [&a, &b, &u] {
            pts.extend(c.breakpoints()[i].iter().cloned());
        }
        let pts: Vec<Rational> = pts.into_iter().collect();
        let mids = pts.windows(2).map(|w| (w[0].clone() + w[1].clone()) / q(2));
        for v in pts.iter().cloned().chain(mids) {
            let r = u.retract_coord(i, &v);
            if a.retract_coord(i, &v) != r || b.retract_coord(i, &v) != r {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interval_meeting() {
        let a = Interval {
            lo: q(-1),
            hi: q(0),
            lo_closed: true,
            hi_closed: false,
        };
        let b = Interval::closed(q(0), q(1));
        assert!(!a.meets(&b));
        assert!(!b.meets(&a));
        assert!(Interval::closed(q(-1), q(0)).meets(&b));
        assert!(a.meets(&Interval::closed(qf(-1, 2), q(3))));
    }
}
