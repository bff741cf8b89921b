//! Colored quasisymmetric functions in the monomial (M), fundamental (F)
//! and peak (K) bases.
//!
//! Equality of elements always goes through the M expansion, the only
//! representation that is unique for every tag.

use std::fmt;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::combinat::{integer_compositions, ColoredComposition, ColoredPermutation, Part};
use crate::error::{Error, Result};
use crate::hopf::{deconcatenate, quasi_shuffle, Tensor};
use crate::linear::{sign, Linear, Rational};
use crate::poset::ColoredPoset;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Basis {
    M,
    F,
    K,
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Basis::M => "M",
            Basis::F => "F",
            Basis::K => "K",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for Basis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Basis> {
        match s {
            "M" => Ok(Basis::M),
            "F" => Ok(Basis::F),
            "K" => Ok(Basis::K),
            _ => Err(Error::UnknownName(s.to_string())),
        }
    }
}

#[derive(Clone)]
pub struct QSymElement {
    m: u32,
    basis: Basis,
    terms: Linear<ColoredComposition>,
}

impl QSymElement {
    pub fn new(m: u32, basis: Basis, terms: Linear<ColoredComposition>) -> Result<Self> {
        if m == 0 {
            return Err(Error::NoColors);
        }
        for k in terms.keys() {
            if k.m() != m {
                return Err(Error::ColorCountMismatch(m, k.m()));
            }
            if basis == Basis::K && !k.is_peak_composition() {
                return Err(Error::NonPeakKey(k.to_string()));
            }
        }
        Ok(Self { m, basis, terms })
    }

    pub fn basis_element(basis: Basis, alpha: &ColoredComposition) -> Result<Self> {
        Self::new(alpha.m(), basis, Linear::basis(alpha.clone()))
    }

    pub fn one(m: u32, basis: Basis) -> Self {
        Self { m, basis, terms: Linear::basis(ColoredComposition::empty(m)) }
    }

    pub fn zero(m: u32, basis: Basis) -> Self {
        Self { m, basis, terms: Linear::zero() }
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn terms(&self) -> &Linear<ColoredComposition> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    fn expect_basis(&self, b: Basis) -> Result<()> {
        if self.basis == b {
            Ok(())
        } else {
            Err(Error::WrongBasis { expected: b, found: self.basis })
        }
    }

    fn same_m(&self, other: &QSymElement) -> Result<()> {
        if self.m == other.m {
            Ok(())
        } else {
            Err(Error::ColorCountMismatch(self.m, other.m))
        }
    }

    /// Expansion in the M basis.
    pub fn to_m(&self) -> QSymElement {
        let terms = match self.basis {
            Basis::M => self.terms.clone(),
            Basis::F => self.terms.map_linear(f_to_m_key),
            Basis::K => self.terms.map_linear(k_to_m_key),
        };
        Self { m: self.m, basis: Basis::M, terms }
    }

    /// Expansion in the F basis.
    pub fn to_f(&self) -> QSymElement {
        let terms = match self.basis {
            Basis::F => self.terms.clone(),
            _ => self.to_m().terms.map_linear(m_to_f_key),
        };
        Self { m: self.m, basis: Basis::F, terms }
    }

    pub fn add(&self, other: &QSymElement) -> Result<QSymElement> {
        self.same_m(other)?;
        if self.basis == other.basis {
            return Ok(Self { m: self.m, basis: self.basis, terms: self.terms.clone() + other.terms.clone() });
        }
        Ok(Self { m: self.m, basis: Basis::M, terms: self.to_m().terms + other.to_m().terms })
    }

    pub fn scale(&self, s: &Rational) -> QSymElement {
        Self { m: self.m, basis: self.basis, terms: self.terms.scale(s) }
    }

    /// Applies `F_α ↦ ...` style maps staying in one basis.
    fn map_same(&self, f: impl FnMut(&ColoredComposition) -> Linear<ColoredComposition>) -> QSymElement {
        Self { m: self.m, basis: self.basis, terms: self.terms.map_linear(f) }
    }
}

impl PartialEq for QSymElement {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m && self.to_m().terms == other.to_m().terms
    }
}

impl Eq for QSymElement {}

impl fmt::Debug for QSymElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{:?}]", self.basis, self.terms)
    }
}

/// Element of `QSym^(m) ⊗ QSym^(m)` with both factors in one basis.
#[derive(Clone)]
pub struct QSymTensor {
    pub m: u32,
    pub basis: Basis,
    pub terms: Tensor<ColoredComposition>,
}

impl QSymTensor {
    pub fn to_m(&self) -> QSymTensor {
        let terms = match self.basis {
            Basis::M => self.terms.clone(),
            Basis::F => self.terms.map_tensor(f_to_m_key, f_to_m_key),
            Basis::K => self.terms.map_tensor(k_to_m_key, k_to_m_key),
        };
        QSymTensor { m: self.m, basis: Basis::M, terms }
    }
}

impl PartialEq for QSymTensor {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m && self.to_m().terms == other.to_m().terms
    }
}

impl fmt::Debug for QSymTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}⊗{}[{:?}]", self.basis, self.basis, self.terms)
    }
}

/// `F_α = Σ_{α ≤ β} M_β`.
pub fn f_to_m_key(alpha: &ColoredComposition) -> Linear<ColoredComposition> {
    alpha
        .refinements()
        .into_iter()
        .map(|b| (b, Rational::one()))
        .collect()
}

/// `M_α = Σ_{α ≤ β} (-1)^{l(β)-l(α)} F_β`.
pub fn m_to_f_key(alpha: &ColoredComposition) -> Linear<ColoredComposition> {
    let l = alpha.len();
    alpha
        .refinements()
        .into_iter()
        .map(|b| {
            let s = sign(b.len() - l);
            (b, s)
        })
        .collect()
}

pub fn f_to_m(e: &QSymElement) -> Result<QSymElement> {
    e.expect_basis(Basis::F)?;
    Ok(e.to_m())
}

pub fn m_to_f(e: &QSymElement) -> Result<QSymElement> {
    e.expect_basis(Basis::M)?;
    Ok(e.to_f())
}

/// M expansion of `K_α` for any colored composition `α`: per rainbow block
/// `(α_(i), ε_i)`, sum over uncolored `β` of the block weight with
/// `α_(i) ≤ β*`, weighting `M_{ε₁β₁ ε₂β₂ ...}` by `2^{Σ l(βᵢ)}`.
pub fn k_to_m_key(alpha: &ColoredComposition) -> Linear<ColoredComposition> {
    let m = alpha.m();
    let mut acc: Vec<(Vec<Part>, usize)> = vec![(Vec::new(), 0)];
    for block in alpha.rainbow_decompose().blocks {
        let block_comp = ColoredComposition::from_parts_unchecked(
            m,
            block.sizes.iter().map(|&s| Part::new(s, 0)).collect(),
        );
        let weight: u32 = block.sizes.iter().sum();
        let choices: Vec<Vec<u32>> = integer_compositions(weight)
            .into_iter()
            .filter(|beta| {
                let b = ColoredComposition::from_parts_unchecked(m, beta.iter().map(|&s| Part::new(s, 0)).collect());
                b.star().refines(&block_comp)
            })
            .collect();
        let mut next = Vec::with_capacity(acc.len() * choices.len());
        for (prefix, len) in &acc {
            for beta in &choices {
                let mut parts = prefix.clone();
                parts.extend(beta.iter().map(|&s| Part::new(s, block.color)));
                next.push((parts, len + beta.len()));
            }
        }
        acc = next;
    }
    let mut out = Linear::zero();
    for (parts, len) in acc {
        let coeff = Rational::from_integer(num_bigint::BigInt::from(1u8) << len);
        out.add_term(ColoredComposition::from_parts_unchecked(m, parts), coeff);
    }
    out
}

pub fn k_to_m(alpha: &ColoredComposition) -> QSymElement {
    QSymElement { m: alpha.m(), basis: Basis::M, terms: k_to_m_key(alpha) }
}

/// `F_α F_β` as a sum over shuffles of representative words.
pub fn f_product_key(a: &ColoredComposition, b: &ColoredComposition) -> Linear<ColoredComposition> {
    let sigma = ColoredPermutation::descent_representative(a);
    let tau = ColoredPermutation::descent_representative(b).shifted(a.weight() as u32);
    sigma
        .shuffles(&tau)
        .expect("disjoint by construction")
        .into_iter()
        .map(|pi| (pi.descent_composition(), Rational::one()))
        .collect()
}

/// `K_α K_β` for peak compositions, as a sum over shuffles of
/// representative words.
pub fn k_product_key(a: &ColoredComposition, b: &ColoredComposition) -> Result<Linear<ColoredComposition>> {
    let sigma = ColoredPermutation::peak_representative(a)?;
    let tau = ColoredPermutation::peak_representative(b)?.shifted(a.weight() as u32);
    Ok(sigma
        .shuffles(&tau)?
        .into_iter()
        .map(|pi| (pi.peak_composition(), Rational::one()))
        .collect())
}

/// Product. Two K inputs multiply in K; two M inputs go through F and
/// come back to M; any other mix is computed and returned in F.
pub fn multiply(a: &QSymElement, b: &QSymElement) -> Result<QSymElement> {
    a.same_m(b)?;
    if a.basis == Basis::K && b.basis == Basis::K {
        let mut terms = Linear::zero();
        for (x, cx) in a.terms.iter() {
            for (y, cy) in b.terms.iter() {
                terms.add_scaled(&k_product_key(x, y)?, &(cx * cy));
            }
        }
        return QSymElement::new(a.m, Basis::K, terms);
    }
    let (fa, fb) = (a.to_f(), b.to_f());
    let terms = fa.terms.bilinear(&fb.terms, f_product_key);
    let f = QSymElement { m: a.m, basis: Basis::F, terms };
    Ok(if a.basis == Basis::M && b.basis == Basis::M { f.to_m() } else { f })
}

/// Product in the M basis by quasi-shuffles; independent of `multiply`.
pub fn multiply_quasi_shuffle(a: &QSymElement, b: &QSymElement) -> Result<QSymElement> {
    a.same_m(b)?;
    let terms = a.to_m().terms.bilinear(&b.to_m().terms, quasi_shuffle);
    Ok(QSymElement { m: a.m, basis: Basis::M, terms })
}

/// Splits the word at every position and applies `stat` to both halves.
fn split_word(
    pi: &ColoredPermutation,
    stat: impl Fn(&ColoredPermutation) -> ColoredComposition,
) -> Tensor<ColoredComposition> {
    (0..=pi.len())
        .map(|i| ((stat(&pi.slice(0, i)), stat(&pi.slice(i, pi.len()))), Rational::one()))
        .collect()
}

pub fn coproduct_f_key(alpha: &ColoredComposition) -> Tensor<ColoredComposition> {
    split_word(&ColoredPermutation::descent_representative(alpha), |w| w.descent_composition())
}

pub fn coproduct_k_key(alpha: &ColoredComposition) -> Result<Tensor<ColoredComposition>> {
    let rep = ColoredPermutation::peak_representative(alpha)?;
    Ok(split_word(&rep, |w| w.peak_composition()))
}

/// Coproduct, staying in the basis of the input.
pub fn coproduct(e: &QSymElement) -> Result<QSymTensor> {
    let terms = match e.basis {
        Basis::M => e.terms.map_linear(deconcatenate),
        Basis::F => e.terms.map_linear(coproduct_f_key),
        Basis::K => {
            let mut t = Linear::zero();
            for (k, c) in e.terms.iter() {
                t.add_scaled(&coproduct_k_key(k)?, c);
            }
            t
        }
    };
    Ok(QSymTensor { m: e.m, basis: e.basis, terms })
}

/// `S(M_α) = (-1)^{l(α)} Σ_{β ≤ α} M_{reverse(β)}`.
pub fn antipode_m_key(alpha: &ColoredComposition) -> Linear<ColoredComposition> {
    let s = sign(alpha.len());
    alpha
        .coarsenings()
        .into_iter()
        .map(|b| (b.reverse(), s.clone()))
        .collect()
}

/// `S(F_α) = (-1)^n F_{α̃}`.
pub fn antipode_f_key(alpha: &ColoredComposition) -> Linear<ColoredComposition> {
    Linear::term(alpha.conjugate(), sign(alpha.weight()))
}

/// `S(K_{Ĉ(π)}) = (-1)^n K_{Ĉ(reversed π)}`.
pub fn antipode_k_key(alpha: &ColoredComposition) -> Result<Linear<ColoredComposition>> {
    let rep = ColoredPermutation::peak_representative(alpha)?;
    Ok(Linear::term(rep.reversed().peak_composition(), sign(alpha.weight())))
}

pub fn antipode(e: &QSymElement) -> Result<QSymElement> {
    Ok(match e.basis {
        Basis::M => e.map_same(antipode_m_key),
        Basis::F => e.map_same(antipode_f_key),
        Basis::K => {
            let mut t = Linear::zero();
            for (k, c) in e.terms.iter() {
                t.add_scaled(&antipode_k_key(k)?, c);
            }
            QSymElement::new(e.m, Basis::K, t)?
        }
    })
}

/// `Θ(F_α) = K_{hat(α)}`. M inputs are converted to F first.
pub fn theta(e: &QSymElement) -> Result<QSymElement> {
    if e.basis == Basis::K {
        return Err(Error::WrongBasis { expected: Basis::F, found: Basis::K });
    }
    let f = e.to_f();
    let terms = f.terms.map_keys(|a| a.hat());
    QSymElement::new(e.m, Basis::K, terms)
}

/// `Γ(P) = Σ_{π ∈ L(P)} F_{C(π)}`.
pub fn gamma(p: &ColoredPoset) -> QSymElement {
    let mut terms = Linear::zero();
    p.for_each_extension(|w| {
        let pi = ColoredPermutation::from_letters_unchecked(p.m(), w.to_vec());
        terms.add_term(pi.descent_composition(), Rational::one());
    });
    QSymElement { m: p.m(), basis: Basis::F, terms }
}

/// `Λ(P) = Σ_{π ∈ L(P)} K_{Ĉ(π)}`.
pub fn lambda(p: &ColoredPoset) -> QSymElement {
    let mut terms = Linear::zero();
    p.for_each_extension(|w| {
        let pi = ColoredPermutation::from_letters_unchecked(p.m(), w.to_vec());
        terms.add_term(pi.peak_composition(), Rational::one());
    });
    QSymElement { m: p.m(), basis: Basis::K, terms }
}

/// Γ applied to a linear combination of posets.
pub fn gamma_linear(x: &Linear<ColoredPoset>, m: u32) -> QSymElement {
    let terms = x.map_linear(|p| gamma(p).terms);
    QSymElement { m, basis: Basis::F, terms }
}

pub fn lambda_linear(x: &Linear<ColoredPoset>, m: u32) -> QSymElement {
    let terms = x.map_linear(|p| lambda(p).terms);
    QSymElement { m, basis: Basis::K, terms }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::enumerate_compositions;
    use crate::linear::rat;

    fn c(m: u32, pairs: &[(u32, u32)]) -> ColoredComposition {
        ColoredComposition::from_pairs(m, pairs).unwrap()
    }

    fn el(basis: Basis, terms: &[(i64, ColoredComposition)]) -> QSymElement {
        let m = terms[0].1.m();
        QSymElement::new(m, basis, terms.iter().map(|(k, a)| (a.clone(), rat(*k))).collect()).unwrap()
    }

    #[test]
    fn f_to_m_examples() {
        let f = QSymElement::basis_element(Basis::F, &c(1, &[(2, 0), (1, 0)])).unwrap();
        assert_eq!(f.to_m().terms, el(Basis::M, &[(1, c(1, &[(2, 0), (1, 0)])), (1, c(1, &[(1, 0), (1, 0), (1, 0)]))]).terms);
        let f2 = QSymElement::basis_element(Basis::F, &c(2, &[(1, 0), (2, 1), (1, 1)])).unwrap();
        assert_eq!(
            f2.to_m().terms,
            el(
                Basis::M,
                &[(1, c(2, &[(1, 0), (2, 1), (1, 1)])), (1, c(2, &[(1, 0), (1, 1), (1, 1), (1, 1)]))]
            )
            .terms
        );
        let f3 = QSymElement::basis_element(Basis::F, &c(3, &[(2, 0), (1, 2), (2, 1)])).unwrap();
        assert_eq!(
            f3.to_m().terms,
            el(
                Basis::M,
                &[
                    (1, c(3, &[(2, 0), (1, 2), (2, 1)])),
                    (1, c(3, &[(1, 0), (1, 0), (1, 2), (2, 1)])),
                    (1, c(3, &[(2, 0), (1, 2), (1, 1), (1, 1)])),
                    (1, c(3, &[(1, 0), (1, 0), (1, 2), (1, 1), (1, 1)])),
                ]
            )
            .terms
        );
    }

    #[test]
    fn m_to_f_examples() {
        let m = QSymElement::basis_element(Basis::M, &c(1, &[(2, 0), (1, 0)])).unwrap();
        assert_eq!(
            m.to_f().terms,
            el(Basis::F, &[(1, c(1, &[(2, 0), (1, 0)])), (-1, c(1, &[(1, 0), (1, 0), (1, 0)]))]).terms
        );
        let e = QSymElement::one(2, Basis::M);
        assert_eq!(e.to_f().terms, QSymElement::one(2, Basis::F).terms);
        let x = QSymElement::basis_element(Basis::M, &c(2, &[(1, 0), (1, 1)])).unwrap();
        assert_eq!(x.to_f().terms, Linear::basis(c(2, &[(1, 0), (1, 1)])));
    }

    #[test]
    fn basis_round_trip() {
        for m in 1..=3 {
            for n in 0..=4 {
                for a in enumerate_compositions(m, n) {
                    let x = QSymElement::basis_element(Basis::M, &a).unwrap();
                    assert_eq!(x.to_f().to_m().terms, x.terms);
                }
            }
        }
    }

    #[test]
    fn k_to_m_examples() {
        let k = k_to_m(&c(2, &[(2, 0), (1, 0), (1, 1)]));
        assert_eq!(
            k.terms,
            el(
                Basis::M,
                &[
                    (8, c(2, &[(2, 0), (1, 0), (1, 1)])),
                    (8, c(2, &[(1, 0), (2, 0), (1, 1)])),
                    (16, c(2, &[(1, 0), (1, 0), (1, 0), (1, 1)])),
                ]
            )
            .terms
        );
        assert_eq!(k_to_m(&c(1, &[(1, 0)])).terms, Linear::term(c(1, &[(1, 0)]), rat(2)));
        assert_eq!(k_to_m(&c(2, &[])).terms, Linear::basis(c(2, &[])));
        // classical K_(2) = 2 M_2 + 4 M_11
        assert_eq!(
            k_to_m(&c(1, &[(2, 0)])).terms,
            el(Basis::M, &[(2, c(1, &[(2, 0)])), (4, c(1, &[(1, 0), (1, 0)]))]).terms
        );
    }

    #[test]
    fn k_keys_must_be_peak_compositions() {
        let bad = c(1, &[(1, 0), (2, 0)]);
        assert!(matches!(QSymElement::basis_element(Basis::K, &bad), Err(Error::NonPeakKey(_))));
    }

    #[test]
    fn product_examples() {
        let one = QSymElement::basis_element(Basis::F, &c(1, &[(1, 0)])).unwrap();
        let p = multiply(&one, &one).unwrap();
        assert_eq!(p.terms, el(Basis::F, &[(1, c(1, &[(2, 0)])), (1, c(1, &[(1, 0), (1, 0)]))]).terms);
        let a = QSymElement::basis_element(Basis::F, &c(2, &[(1, 0)])).unwrap();
        let b = QSymElement::basis_element(Basis::F, &c(2, &[(1, 1)])).unwrap();
        assert_eq!(
            multiply(&a, &b).unwrap().terms,
            el(Basis::F, &[(1, c(2, &[(1, 0), (1, 1)])), (1, c(2, &[(1, 1), (1, 0)]))]).terms
        );
        let x = QSymElement::basis_element(Basis::F, &c(2, &[(2, 1), (1, 0)])).unwrap();
        assert_eq!(multiply(&QSymElement::one(2, Basis::F), &x).unwrap().terms, x.terms);
        assert!(multiply(&one, &a).is_err());
    }

    #[test]
    fn products_agree_across_routes() {
        for m in 1..=2 {
            let small: Vec<_> = (0..=3).flat_map(|n| enumerate_compositions(m, n)).collect();
            for a in &small {
                for b in &small {
                    if a.weight() + b.weight() > 4 {
                        continue;
                    }
                    let x = QSymElement::basis_element(Basis::M, a).unwrap();
                    let y = QSymElement::basis_element(Basis::M, b).unwrap();
                    assert_eq!(multiply(&x, &y).unwrap(), multiply_quasi_shuffle(&x, &y).unwrap(), "{a} {b}");
                    if a.is_peak_composition() && b.is_peak_composition() {
                        let kx = QSymElement::basis_element(Basis::K, a).unwrap();
                        let ky = QSymElement::basis_element(Basis::K, b).unwrap();
                        let via_k = multiply(&kx, &ky).unwrap();
                        assert_eq!(via_k, multiply_quasi_shuffle(&kx, &ky).unwrap(), "{a} {b}");
                    }
                }
            }
        }
    }

    #[test]
    fn coproduct_examples() {
        let x = QSymElement::basis_element(Basis::M, &c(2, &[(2, 1), (1, 0)])).unwrap();
        let d = coproduct(&x).unwrap();
        let e = c(2, &[]);
        let want: Tensor<ColoredComposition> = [
            ((c(2, &[(2, 1), (1, 0)]), e.clone()), rat(1)),
            ((c(2, &[(2, 1)]), c(2, &[(1, 0)])), rat(1)),
            ((e.clone(), c(2, &[(2, 1), (1, 0)])), rat(1)),
        ]
        .into_iter()
        .collect();
        assert_eq!(d.terms, want);
        let f = QSymElement::basis_element(Basis::F, &c(1, &[(2, 0)])).unwrap();
        let e1 = c(1, &[]);
        let want: Tensor<ColoredComposition> = [
            ((e1.clone(), c(1, &[(2, 0)])), rat(1)),
            ((c(1, &[(1, 0)]), c(1, &[(1, 0)])), rat(1)),
            ((c(1, &[(2, 0)]), e1), rat(1)),
        ]
        .into_iter()
        .collect();
        assert_eq!(coproduct(&f).unwrap().terms, want);
    }

    #[test]
    fn coproducts_agree_across_bases() {
        for m in 1..=2 {
            for n in 0..=4 {
                for a in enumerate_compositions(m, n) {
                    let f = QSymElement::basis_element(Basis::F, &a).unwrap();
                    assert_eq!(coproduct(&f).unwrap(), coproduct(&f.to_m()).unwrap(), "{a}");
                    if a.is_peak_composition() {
                        let k = QSymElement::basis_element(Basis::K, &a).unwrap();
                        assert_eq!(coproduct(&k).unwrap(), coproduct(&k.to_m()).unwrap(), "{a}");
                    }
                }
            }
        }
    }

    #[test]
    fn antipode_examples() {
        let mn = QSymElement::basis_element(Basis::M, &c(1, &[(3, 0)])).unwrap();
        assert_eq!(antipode(&mn).unwrap().terms, mn.terms.scale(&rat(-1)));
        let m11 = QSymElement::basis_element(Basis::M, &c(1, &[(1, 0), (1, 0)])).unwrap();
        assert_eq!(
            antipode(&m11).unwrap().terms,
            el(Basis::M, &[(1, c(1, &[(1, 0), (1, 0)])), (1, c(1, &[(2, 0)]))]).terms
        );
    }

    #[test]
    fn antipodes_agree_across_bases() {
        for m in 1..=2 {
            for n in 0..=4 {
                for a in enumerate_compositions(m, n) {
                    let f = QSymElement::basis_element(Basis::F, &a).unwrap();
                    assert_eq!(antipode(&f).unwrap(), antipode(&f.to_m()).unwrap(), "{a}");
                    if a.is_peak_composition() {
                        let k = QSymElement::basis_element(Basis::K, &a).unwrap();
                        assert_eq!(antipode(&k).unwrap(), antipode(&k.to_m()).unwrap(), "{a}");
                    }
                }
            }
        }
    }

    #[test]
    fn theta_examples() {
        let f = QSymElement::basis_element(Basis::F, &c(1, &[(3, 0), (1, 0), (1, 0), (3, 0), (2, 0), (1, 0), (1, 0), (1, 0)])).unwrap();
        assert_eq!(theta(&f).unwrap().terms, Linear::basis(c(1, &[(3, 0), (5, 0), (2, 0), (3, 0)])));
        assert_eq!(theta(&QSymElement::one(1, Basis::F)).unwrap().terms, QSymElement::one(1, Basis::K).terms);
        let g = QSymElement::basis_element(
            Basis::F,
            &c(2, &[(3, 0), (1, 0), (1, 1), (3, 1), (2, 0), (1, 1), (1, 1), (1, 0)]),
        )
        .unwrap();
        assert_eq!(
            theta(&g).unwrap().terms,
            Linear::basis(c(2, &[(3, 0), (1, 0), (4, 1), (2, 0), (2, 1), (1, 0)]))
        );
    }

    #[test]
    fn gamma_and_lambda_examples() {
        let p = ColoredPoset::new(1, &[(1, 0), (4, 0), (5, 0)], &[(5, 1), (5, 4)]).unwrap();
        assert_eq!(gamma(&p).terms, el(Basis::F, &[(1, c(1, &[(1, 0), (1, 0), (1, 0)])), (1, c(1, &[(1, 0), (2, 0)]))]).terms);
        assert_eq!(lambda(&p).terms, Linear::term(c(1, &[(3, 0)]), rat(2)));
        assert_eq!(lambda(&p), theta(&gamma(&p)).unwrap());
        let v = ColoredPoset::antichain(3, &[(2, 2)]).unwrap();
        assert_eq!(gamma(&v).terms, Linear::basis(c(3, &[(1, 2)])));
        assert_eq!(lambda(&v).to_m().terms, Linear::term(c(3, &[(1, 2)]), rat(2)));
        let chain = ColoredPoset::chain(1, &[(1, 0), (2, 0)]).unwrap();
        assert_eq!(lambda(&chain).terms, Linear::basis(c(1, &[(2, 0)])));
    }

    #[test]
    fn peak_span_rank_matches_recurrence() {
        for m in 1..=2 {
            for n in 1..=5 {
                let ks: Vec<_> = enumerate_compositions(m, n)
                    .into_iter()
                    .filter(|a| a.is_peak_composition())
                    .map(|a| k_to_m_key(&a))
                    .collect();
                let f: usize = crate::combinat::count_peak_compositions(m, n).try_into().unwrap();
                assert_eq!(ks.len(), f);
                assert_eq!(crate::linear::rank(&ks), f);
            }
        }
    }
}
