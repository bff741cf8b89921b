//! Sparse exact-rational linear combinations over an ordered key space.
//!
//! `Linear<K>` is the storage behind every algebra element in the crate:
//! a `BTreeMap` from basis keys to nonzero `BigRational` coefficients.
//! Iteration order is the key order, so printed output is canonical.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational scalar.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rat_frac(p: i64, q: i64) -> Rational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// `(-1)^k` as a rational.
pub fn sign(k: usize) -> Rational {
    if k.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Linear<K: Ord> {
    terms: BTreeMap<K, Rational>,
}

impl<K: Ord> Default for Linear<K> {
    fn default() -> Self {
        Self { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> Linear<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(key: K) -> Self {
        Self::term(key, Rational::one())
    }

    pub fn term(key: K, coeff: Rational) -> Self {
        let mut out = Self::zero();
        out.add_term(key, coeff);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, key: &K) -> Rational {
        self.terms.get(key).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Rational)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    pub fn into_terms(self) -> BTreeMap<K, Rational> {
        self.terms
    }

    /// Adds `coeff * key`, dropping the entry if it cancels.
    pub fn add_term(&mut self, key: K, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Linear<K>, scale: &Rational) {
        if scale.is_zero() {
            return;
        }
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c * scale);
        }
    }

    pub fn add_assign_ref(&mut self, other: &Linear<K>) {
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c.clone());
        }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, s);
        out
    }

    /// Applies a linear map given on basis keys.
    pub fn map_linear<L: Ord + Clone>(&self, mut f: impl FnMut(&K) -> Linear<L>) -> Linear<L> {
        let mut out = Linear::zero();
        for (k, c) in &self.terms {
            out.add_scaled(&f(k), c);
        }
        out
    }

    /// Relabels keys; colliding images are summed.
    pub fn map_keys<L: Ord + Clone>(&self, mut f: impl FnMut(&K) -> L) -> Linear<L> {
        let mut out = Linear::zero();
        for (k, c) in &self.terms {
            out.add_term(f(k), c.clone());
        }
        out
    }

    /// Evaluates a linear functional given on basis keys.
    pub fn eval(&self, mut f: impl FnMut(&K) -> Rational) -> Rational {
        let mut acc = Rational::zero();
        for (k, c) in &self.terms {
            let v = f(k);
            if !v.is_zero() {
                acc += c * v;
            }
        }
        acc
    }

    /// Bilinear extension of a product given on basis keys.
    pub fn bilinear<L: Ord + Clone, R: Ord + Clone>(
        &self,
        other: &Linear<L>,
        mut f: impl FnMut(&K, &L) -> Linear<R>,
    ) -> Linear<R> {
        let mut out = Linear::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let c = ca * cb;
                out.add_scaled(&f(a, b), &c);
            }
        }
        out
    }

    /// Tensor product `self ⊗ other` as a combination of key pairs.
    pub fn tensor<L: Ord + Clone>(&self, other: &Linear<L>) -> Linear<(K, L)> {
        self.bilinear(other, |a, b| Linear::basis((a.clone(), b.clone())))
    }

    pub fn filter(&self, mut keep: impl FnMut(&K) -> bool) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| keep(k))
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }
}

impl<K: Ord + Clone, L: Ord + Clone> Linear<(K, L)> {
    /// Applies maps to each tensor factor independently.
    pub fn map_tensor<K2: Ord + Clone, L2: Ord + Clone>(
        &self,
        mut f: impl FnMut(&K) -> Linear<K2>,
        mut g: impl FnMut(&L) -> Linear<L2>,
    ) -> Linear<(K2, L2)> {
        let mut out = Linear::zero();
        for ((a, b), c) in self.iter() {
            out.add_scaled(&f(a).tensor(&g(b)), c);
        }
        out
    }
}

impl<K: Ord + Clone> FromIterator<(K, Rational)> for Linear<K> {
    fn from_iter<I: IntoIterator<Item = (K, Rational)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (k, c) in iter {
            out.add_term(k, c);
        }
        out
    }
}

impl<K: Ord + Clone> Add for Linear<K> {
    type Output = Linear<K>;
    fn add(mut self, rhs: Linear<K>) -> Linear<K> {
        for (k, c) in rhs.terms {
            self.add_term(k, c);
        }
        self
    }
}

impl<K: Ord + Clone> Sub for Linear<K> {
    type Output = Linear<K>;
    fn sub(self, rhs: Linear<K>) -> Linear<K> {
        self + (-rhs)
    }
}

impl<K: Ord + Clone> Neg for Linear<K> {
    type Output = Linear<K>;
    fn neg(mut self) -> Linear<K> {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl<K: Ord + fmt::Debug> fmt::Debug for Linear<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            write!(f, "{}·{:?}", c.abs(), k)?;
        }
        Ok(())
    }
}

/// Rank of a list of sparse vectors, by exact Gaussian elimination.
pub fn rank<K: Ord + Clone>(vectors: &[Linear<K>]) -> usize {
    // Rows reduced so far, each keyed by its pivot (smallest key).
    let mut pivots: BTreeMap<K, Linear<K>> = BTreeMap::new();
    for v in vectors {
        let mut row = v.clone();
        loop {
            let Some((lead, lead_coeff)) = row.iter().next().map(|(k, c)| (k.clone(), c.clone()))
            else {
                break;
            };
            match pivots.get(&lead) {
                Some(p) => {
                    let factor = -(lead_coeff / p.coeff(&lead));
                    row.add_scaled(p, &factor);
                }
                None => {
                    pivots.insert(lead, row);
                    break;
                }
            }
        }
    }
    pivots.len()
}
