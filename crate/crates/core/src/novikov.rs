//! Universal Novikov ring and discrete energy monoids.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{format_rational, Rational, Ring, Scalar};

/// Finite sum of `c * T^energy * e^(mu/2)` in canonical order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Novikov<S = Rational> {
    terms: Vec<(Rational, i64, S)>,
}

impl<S: Ring> Novikov<S> {
    pub fn from_terms<I: IntoIterator<Item = (S, Rational, i64)>>(terms: I) -> Self {
        let mut acc: BTreeMap<(Rational, i64), S> = BTreeMap::new();
        for (c, en, mu) in terms {
            let slot = acc.entry((en, mu)).or_insert_with(S::zero);
            *slot = slot.clone() + c;
        }
        Novikov {
            terms: acc
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|((en, mu), c)| (en, mu, c))
                .collect(),
        }
    }

    pub fn monomial(c: S, energy: Rational, mu: i64) -> Self {
        Self::from_terms([(c, energy, mu)])
    }

    pub fn constant(c: S) -> Self {
        Self::monomial(c, Rational::zero(), 0)
    }

    /// (energy, mu, coeff), strictly increasing in (energy, mu).
    pub fn terms(&self) -> &[(Rational, i64, S)] {
        &self.terms
    }

    /// Smallest energy exponent; `None` stands for +infinity.
    pub fn valuation(&self) -> Option<Rational> {
        self.terms.first().map(|t| t.0.clone())
    }

    /// Residue modulo `T^e`: drops every term with energy >= e.
    pub fn truncate(&self, e: &Rational) -> Result<Self> {
        if e < &Rational::zero() {
            return Err(Error::InvalidCutLevel(format_rational(e)));
        }
        Ok(Novikov {
            terms: self.terms.iter().filter(|t| &t.0 < e).cloned().collect(),
        })
    }

    /// Keeps terms with energy <= e.
    pub fn truncate_inclusive(&self, e: &Rational) -> Self {
        Novikov {
            terms: self.terms.iter().filter(|t| &t.0 <= e).cloned().collect(),
        }
    }

    pub fn in_lambda0(&self) -> bool {
        self.terms.iter().all(|t| t.0 >= Rational::zero())
    }

    pub fn in_lambda_plus(&self) -> bool {
        self.terms.iter().all(|t| t.0 > Rational::zero())
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .map(|(en, mu, x)| (x.clone() * c.clone(), en.clone(), *mu)),
        )
    }
}

impl<S: Scalar> Novikov<S> {
    /// Inverse modulo `T^e` of a unit of the nonnegative-energy subring.
    ///
    /// The energy-zero part must be a single nonzero monomial.
    pub fn inverse_mod(&self, e: &Rational) -> Result<Self> {
        if !self.in_lambda0() {
            return Err(Error::OutOfDomain("negative energy".into()));
        }
        let lead: Vec<_> = self.terms.iter().filter(|t| t.0.is_zero()).collect();
        if lead.len() != 1 {
            return Err(Error::OutOfDomain("energy-zero part is not a monomial".into()));
        }
        let (_, mu0, c0) = lead[0].clone();
        let lead_inv = Novikov::monomial(S::one() / c0, Rational::zero(), -mu0);
        // self = lead * (1 + x), x has positive energies
        let x = (self.clone() * lead_inv.clone()) - Novikov::one();
        let minus_x = -x;
        let mut sum = Novikov::one();
        let mut power = Novikov::one();
        loop {
            power = (power * minus_x.clone()).truncate(e)?;
            if power.is_zero() {
                break;
            }
            sum = sum + power.clone();
        }
        (sum * lead_inv).truncate(e)
    }
}

impl<S: Ring> Zero for Novikov<S> {
    fn zero() -> Self {
        Novikov { terms: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<S: Ring> One for Novikov<S> {
    fn one() -> Self {
        Novikov::constant(S::one())
    }
}

impl<S: Ring> Add for Novikov<S> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::from_terms(
            self.terms
                .into_iter()
                .chain(rhs.terms)
                .map(|(en, mu, c)| (c, en, mu)),
        )
    }
}

impl<S: Ring> Neg for Novikov<S> {
    type Output = Self;
    fn neg(self) -> Self {
        Novikov {
            terms: self.terms.into_iter().map(|(en, mu, c)| (en, mu, -c)).collect(),
        }
    }
}

impl<S: Ring> Sub for Novikov<S> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<S: Ring> Mul for Novikov<S> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (e1, m1, c1) in &self.terms {
            for (e2, m2, c2) in &rhs.terms {
                out.push((c1.clone() * c2.clone(), e1 + e2, m1 + m2));
            }
        }
        Self::from_terms(out)
    }
}

impl<S: Ring + fmt::Display> fmt::Display for Novikov<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (en, mu, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})T^{}", format_rational(en))?;
            if *mu != 0 {
                write!(f, "e^{mu}/2")?;
            }
        }
        Ok(())
    }
}

/// An element of the monoid: (energy, Maslov index).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct MonoidElement {
    pub energy: Rational,
    pub mu: i64,
}

impl MonoidElement {
    pub fn new(energy: Rational, mu: i64) -> Self {
        MonoidElement { energy, mu }
    }

    pub fn unit() -> Self {
        MonoidElement::new(Rational::zero(), 0)
    }

    pub fn is_unit(&self) -> bool {
        self.energy.is_zero() && self.mu == 0
    }

    pub fn checked_sub(&self, other: &MonoidElement) -> Option<MonoidElement> {
        let e = &self.energy - &other.energy;
        if e < Rational::zero() {
            None
        } else {
            Some(MonoidElement::new(e, self.mu - other.mu))
        }
    }
}

impl Add for &MonoidElement {
    type Output = MonoidElement;
    fn add(self, rhs: Self) -> MonoidElement {
        MonoidElement::new(&self.energy + &rhs.energy, self.mu + rhs.mu)
    }
}

impl fmt::Display for MonoidElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "E:{},mu:{}", format_rational(&self.energy), self.mu)
    }
}

impl std::str::FromStr for MonoidElement {
    type Err = Error;

    /// Parses `E:p/q,mu:n`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("monoid element {s:?}, expected E:p/q,mu:n"));
        let (e, mu) = s.trim().split_once(',').ok_or_else(bad)?;
        let e = e.trim().strip_prefix("E:").ok_or_else(bad)?;
        let mu = mu.trim().strip_prefix("mu:").ok_or_else(bad)?;
        Ok(MonoidElement::new(
            crate::scalar::parse_rational(e)?,
            mu.trim().parse().map_err(|_| bad())?,
        ))
    }
}

/// Monoid generated by finitely many elements of positive energy and even index.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct DiscreteSubmonoid {
    generators: Vec<MonoidElement>,
}

impl DiscreteSubmonoid {
    pub fn new(generators: Vec<MonoidElement>) -> Result<Self> {
        for g in &generators {
            if g.energy <= Rational::zero() {
                return Err(Error::Parse(format!("generator {g} must have positive energy")));
            }
            if g.mu % 2 != 0 {
                return Err(Error::Parse(format!("generator {g} must have even mu")));
            }
        }
        Ok(DiscreteSubmonoid { generators })
    }

    pub fn trivial() -> Self {
        DiscreteSubmonoid::default()
    }

    pub fn generators(&self) -> &[MonoidElement] {
        &self.generators
    }

    /// All monoid elements with energy <= e0, sorted.
    pub fn below(&self, e0: &Rational) -> Vec<MonoidElement> {
        let mut seen = BTreeSet::new();
        let mut frontier = vec![MonoidElement::unit()];
        seen.insert(MonoidElement::unit());
        while let Some(x) = frontier.pop() {
            for g in &self.generators {
                let y = &x + g;
                if &y.energy <= e0 && seen.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        seen.into_iter().collect()
    }

    pub fn contains(&self, b: &MonoidElement) -> bool {
        if b.energy < Rational::zero() {
            return false;
        }
        self.below(&b.energy).contains(b)
    }

    /// Smallest positive energy, or 1 when there is none.
    pub fn e_min(&self) -> Rational {
        self.generators
            .iter()
            .map(|g| g.energy.clone())
            .min()
            .unwrap_or_else(Rational::one)
    }

    /// Pairs (beta, k) with E(beta) + k e0 <= E0, sorted by (beta, k).
    pub fn gk_set(&self, e0_cut: &Rational, e0: &Rational) -> Result<Vec<(MonoidElement, usize)>> {
        if e0 <= &Rational::zero() {
            return Err(Error::OutOfDomain(format!("e0 = {} must be positive", format_rational(e0))));
        }
        let em = self.e_min();
        if e0 > &em {
            return Err(Error::MinimalEnergyViolation {
                e0: format_rational(e0),
                e_min: format_rational(&em),
            });
        }
        let mut out = Vec::new();
        for b in self.below(e0_cut) {
            let mut k = 0usize;
            while &b.energy + e0 * Rational::from_integer((k as i64).into()) <= *e0_cut {
                out.push((b.clone(), k));
                k += 1;
            }
        }
        Ok(out)
    }

    /// Ordered splittings beta = b1 + b2 inside the monoid.
    pub fn splittings(&self, b: &MonoidElement) -> Vec<(MonoidElement, MonoidElement)> {
        let below = self.below(&b.energy);
        let set: BTreeSet<_> = below.iter().cloned().collect();
        below
            .iter()
            .filter_map(|b1| {
                let b2 = b.checked_sub(b1)?;
                set.contains(&b2).then(|| (b1.clone(), b2))
            })
            .collect()
    }
}

pub fn monoid_below(g: &DiscreteSubmonoid, e0: &Rational) -> Result<Vec<MonoidElement>> {
    if e0 < &Rational::zero() {
        return Err(Error::InvalidCutLevel(format_rational(e0)));
    }
    Ok(g.below(e0))
}
