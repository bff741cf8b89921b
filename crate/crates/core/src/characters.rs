//! Characters of graded connected Hopf algebras, their convolution group,
//! and the universal morphism into colored quasisymmetric functions.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::combinat::{ColoredComposition, Color, Part};
use crate::error::{Error, Result};
use crate::hopf::{HopfAlgebra, Memo, PosetHopf, QSymHopf};
use crate::linear::{rat, sign, Linear, Rational};
use crate::poset::ColoredPoset;
use crate::qsym::{Basis, QSymElement};

type Rule<K> = Arc<dyn Fn(&K) -> Rational + Send + Sync>;

/// A multiplicative functional on `H`, given by its values on basis keys
/// and memoized per key.
pub struct Character<H: HopfAlgebra> {
    alg: Arc<H>,
    name: String,
    rule: Rule<H::Key>,
    memo: Arc<Memo<H::Key, Rational>>,
}

impl<H: HopfAlgebra> Clone for Character<H> {
    fn clone(&self) -> Self {
        Self {
            alg: self.alg.clone(),
            name: self.name.clone(),
            rule: self.rule.clone(),
            memo: self.memo.clone(),
        }
    }
}

impl<H: HopfAlgebra> fmt::Debug for Character<H> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Character({})", self.name)
    }
}

impl<H: HopfAlgebra + 'static> Character<H> {
    pub fn new(
        alg: Arc<H>,
        name: impl Into<String>,
        rule: impl Fn(&H::Key) -> Rational + Send + Sync + 'static,
    ) -> Self {
        Self { alg, name: name.into(), rule: Arc::new(rule), memo: Arc::new(Memo::new()) }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn algebra(&self) -> &Arc<H> {
        &self.alg
    }

    pub fn eval_key(&self, key: &H::Key) -> Rational {
        self.memo.get_or(key, || (self.rule)(key))
    }

    pub fn eval(&self, x: &Linear<H::Key>) -> Rational {
        x.eval(|k| self.eval_key(k))
    }

    fn same_domain(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.alg, &other.alg) {
            Ok(())
        } else {
            Err(Error::DomainMismatch)
        }
    }

    /// The counit, unit of the convolution group.
    pub fn counit(alg: Arc<H>) -> Self {
        let unit = alg.unit_key();
        Self::new(alg, "counit", move |k| if *k == unit { Rational::one() } else { Rational::zero() })
    }

    /// `(φψ)(h) = Σ φ(h₁) ψ(h₂)`.
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        self.same_domain(other)?;
        let (a, b) = (self.clone(), other.clone());
        let alg = self.alg.clone();
        Ok(Self::new(self.alg.clone(), format!("({}*{})", self.name, other.name), move |k| {
            let mut acc = Rational::zero();
            for ((x, y), c) in alg.comul_key(k).iter() {
                let ax = a.eval_key(x);
                if ax.is_zero() {
                    continue;
                }
                acc += c * ax * b.eval_key(y);
            }
            acc
        }))
    }

    /// Convolution of a nonempty list, left to right.
    pub fn convolve_all(chars: &[Self]) -> Result<Self> {
        let (first, rest) = chars.split_first().ok_or(Error::TupleLength { expected: 1, found: 0 })?;
        rest.iter().try_fold(first.clone(), |acc, c| acc.convolve(c))
    }

    /// `φ⁻¹ = φ ∘ S`.
    pub fn inverse(&self) -> Self {
        let (a, alg) = (self.clone(), self.alg.clone());
        Self::new(self.alg.clone(), format!("{}^-1", self.name), move |k| {
            a.eval(&alg.antipode_key(k))
        })
    }

    /// `φ̄(h) = (-1)^{deg h} φ(h)`.
    pub fn bar(&self) -> Self {
        let (a, alg) = (self.clone(), self.alg.clone());
        Self::new(self.alg.clone(), format!("bar({})", self.name), move |k| {
            sign(alg.degree(k)) * a.eval_key(k)
        })
    }

    /// `ν = φ̄⁻¹ φ`.
    pub fn nu(&self) -> Self {
        let mut out = self.bar().inverse().convolve(self).expect("same domain");
        out.name = format!("nu({})", self.name);
        out
    }

    /// Evaluates both on every key of degree `≤ max_n` and reports the
    /// first disagreement.
    pub fn agrees_with(&self, other: &Self, max_n: usize) -> Option<H::Key> {
        (0..=max_n)
            .flat_map(|n| self.alg.basis(n))
            .find(|k| self.eval_key(k) != other.eval_key(k))
    }
}

/// An ordered `m`-tuple of characters on one algebra.
#[derive(Clone)]
pub struct CharacterTuple<H: HopfAlgebra> {
    chars: Vec<Character<H>>,
}

impl<H: HopfAlgebra> fmt::Debug for CharacterTuple<H> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.chars).finish()
    }
}

impl<H: HopfAlgebra + 'static> CharacterTuple<H> {
    pub fn new(chars: Vec<Character<H>>) -> Result<Self> {
        let first = chars.first().ok_or(Error::TupleLength { expected: 1, found: 0 })?;
        let m = first.alg.m() as usize;
        if chars.len() != m {
            return Err(Error::TupleLength { expected: m, found: chars.len() });
        }
        for c in &chars {
            first.same_domain(c)?;
        }
        Ok(Self { chars })
    }

    pub fn get(&self, j: Color) -> &Character<H> {
        &self.chars[j as usize]
    }

    pub fn chars(&self) -> &[Character<H>] {
        &self.chars
    }

    /// `φ⁽⁰⁾ φ⁽¹⁾ ⋯ φ⁽ᵐ⁻¹⁾`, in increasing color order.
    pub fn product(&self) -> Character<H> {
        Character::convolve_all(&self.chars).expect("validated tuple")
    }

    pub fn algebra(&self) -> &Arc<H> {
        &self.chars[0].alg
    }
}

/// The universal morphism `Ψ(h) = Σ_α φ_α(h) M_α` for a character tuple,
/// memoized per basis key.
pub struct Psi<H: HopfAlgebra> {
    tuple: CharacterTuple<H>,
    memo: Memo<H::Key, Linear<ColoredComposition>>,
}

impl<H: HopfAlgebra + 'static> Psi<H> {
    pub fn new(tuple: CharacterTuple<H>) -> Self {
        Self { tuple, memo: Memo::new() }
    }

    /// M-coefficients of `Ψ(key)`, peeling off the first part through one
    /// coproduct at a time.
    pub fn apply_key(&self, key: &H::Key) -> Linear<ColoredComposition> {
        self.memo.get_or(key, || {
            let alg = self.tuple.algebra();
            let m = alg.m();
            let mut out = Linear::zero();
            if alg.degree(key) == 0 {
                out.add_term(ColoredComposition::empty(m), self.tuple.get(0).eval_key(key));
                return out;
            }
            for ((a, b), c) in alg.comul_key(key).iter() {
                let d = alg.degree(a);
                if d == 0 {
                    continue;
                }
                let rest = self.apply_key(b);
                if rest.is_zero() {
                    continue;
                }
                for j in 0..m {
                    let v = self.tuple.get(j).eval_key(a);
                    if v.is_zero() {
                        continue;
                    }
                    let part = Part::new(d as u32, j);
                    let shifted = rest.map_keys(|alpha| alpha.cons(part));
                    out.add_scaled(&shifted, &(c * v));
                }
            }
            out
        })
    }

    pub fn apply(&self, x: &Linear<H::Key>) -> QSymElement {
        let m = self.tuple.algebra().m();
        QSymElement::new(m, Basis::M, x.map_linear(|k| self.apply_key(k))).expect("keys share m")
    }
}

fn indicator(b: bool) -> Rational {
    if b {
        Rational::one()
    } else {
        Rational::zero()
    }
}

/// `ζ^(j)_Q` on M keys: 1 on `()` and `(ω^j n)`, else 0.
pub fn zeta_q(alg: &Arc<QSymHopf>, j: Color) -> Character<QSymHopf> {
    Character::new(alg.clone(), format!("zetaQ:{j}"), move |a: &ColoredComposition| {
        indicator(zeta_q_m_closed(j, a))
    })
}

fn zeta_q_m_closed(j: Color, a: &ColoredComposition) -> bool {
    match a.parts() {
        [] => true,
        [p] => p.color == j,
        _ => false,
    }
}

/// Closed form of `ζ^(j)_Q` on a basis element of the given tag.
pub fn zeta_q_closed(j: Color, basis: Basis, a: &ColoredComposition) -> Rational {
    let hit = zeta_q_m_closed(j, a);
    match basis {
        Basis::M | Basis::F => indicator(hit),
        Basis::K => {
            if a.is_empty() {
                Rational::one()
            } else if hit {
                rat(2)
            } else {
                Rational::zero()
            }
        }
    }
}

/// Closed form of `ζ_Q = ζ⁽⁰⁾⋯ζ⁽ᵐ⁻¹⁾`: on M and F it is 1 when colors
/// strictly increase part to part; on K it is `2^{l(α)}` then.
pub fn zeta_q_full_closed(basis: Basis, a: &ColoredComposition) -> Rational {
    if !a.has_increasing_colors() {
        return Rational::zero();
    }
    match basis {
        Basis::M | Basis::F => Rational::one(),
        Basis::K => Rational::from_integer(num_bigint::BigInt::from(1u8) << a.len()),
    }
}

/// Evaluates a QSym character on an element of any tag via its M expansion.
pub fn eval_qsym(chi: &Character<QSymHopf>, e: &QSymElement) -> Rational {
    chi.eval(e.to_m().terms())
}

/// `ζ^(j)_P`: 1 on `j`-monochromatic naturally labeled posets.
pub fn zeta_p(alg: &Arc<PosetHopf>, j: Color) -> Character<PosetHopf> {
    Character::new(alg.clone(), format!("zetaP:{j}"), move |p: &ColoredPoset| {
        indicator(p.is_monochromatic(j) && p.is_naturally_labeled())
    })
}

pub fn zeta_q_tuple(alg: &Arc<QSymHopf>) -> CharacterTuple<QSymHopf> {
    CharacterTuple::new((0..alg.m()).map(|j| zeta_q(alg, j)).collect()).expect("m characters")
}

pub fn zeta_p_tuple(alg: &Arc<PosetHopf>) -> CharacterTuple<PosetHopf> {
    CharacterTuple::new((0..alg.m()).map(|j| zeta_p(alg, j)).collect()).expect("m characters")
}

/// `2 · #{π ∈ L(P) : Pe(π) = ∅, all colors j}` for nonempty `P`, and 1 on `∅`.
pub fn nu_p_count(j: Color, p: &ColoredPoset) -> Rational {
    if p.is_empty() {
        return Rational::one();
    }
    if !p.is_monochromatic(j) {
        return Rational::zero();
    }
    let mut count = 0i64;
    p.for_each_extension(|w| {
        if peak_free(w) {
            count += 1;
        }
    });
    rat(2 * count)
}

/// `2^k · #{π ∈ L(P) : Pe(π) = ∅, colors weakly increasing}`, `k` the
/// number of distinct colors of `P`.
pub fn nu_p_full_count(p: &ColoredPoset) -> Rational {
    let mut count = 0i64;
    p.for_each_extension(|w| {
        if w.windows(2).all(|x| x[0].color <= x[1].color) && peak_free(w) {
            count += 1;
        }
    });
    rat(count) * Rational::from_integer(num_bigint::BigInt::from(1u8) << p.color_count())
}

fn peak_free(w: &[crate::combinat::Letter]) -> bool {
    w.windows(3).all(|x| {
        !(x[0].color == x[1].color
            && x[1].color == x[2].color
            && x[0].value < x[1].value
            && x[1].value > x[2].value)
    })
}

/// Resolves a built-in character name on the poset algebra.
pub fn poset_character(alg: &Arc<PosetHopf>, name: &str) -> Result<Character<PosetHopf>> {
    let tuple = || zeta_p_tuple(alg);
    match split_name(name, alg.m())? {
        ("counit", None) => Ok(Character::counit(alg.clone())),
        ("zetaP", Some(j)) => Ok(zeta_p(alg, j)),
        ("zetaP", None) => Ok(tuple().product()),
        ("nuP", Some(j)) => Ok(zeta_p(alg, j).nu()),
        ("nuP", None) => nu_product(&tuple()),
        _ => Err(Error::UnknownName(name.to_string())),
    }
}

/// Resolves a built-in character name on `QSym^(m)`.
pub fn qsym_character(alg: &Arc<QSymHopf>, name: &str) -> Result<Character<QSymHopf>> {
    let tuple = || zeta_q_tuple(alg);
    match split_name(name, alg.m())? {
        ("counit", None) => Ok(Character::counit(alg.clone())),
        ("zetaQ", Some(j)) => Ok(zeta_q(alg, j)),
        ("zetaQ", None) => Ok(tuple().product()),
        ("nuQ", Some(j)) => Ok(zeta_q(alg, j).nu()),
        ("nuQ", None) => nu_product(&tuple()),
        _ => Err(Error::UnknownName(name.to_string())),
    }
}

/// `ν⁽⁰⁾ ν⁽¹⁾ ⋯ ν⁽ᵐ⁻¹⁾`.
pub fn nu_product<H: HopfAlgebra + 'static>(tuple: &CharacterTuple<H>) -> Result<Character<H>> {
    let nus: Vec<_> = tuple.chars().iter().map(|c| c.nu()).collect();
    Character::convolve_all(&nus)
}

/// Tuple named by a family (`zetaP`, `nuP`).
pub fn poset_tuple(alg: &Arc<PosetHopf>, family: &str) -> Result<CharacterTuple<PosetHopf>> {
    let chars = (0..alg.m())
        .map(|j| poset_character(alg, &format!("{family}:{j}")))
        .collect::<Result<Vec<_>>>()?;
    CharacterTuple::new(chars)
}

/// Tuple named by a family (`zetaQ`, `nuQ`).
pub fn qsym_tuple(alg: &Arc<QSymHopf>, family: &str) -> Result<CharacterTuple<QSymHopf>> {
    let chars = (0..alg.m())
        .map(|j| qsym_character(alg, &format!("{family}:{j}")))
        .collect::<Result<Vec<_>>>()?;
    CharacterTuple::new(chars)
}

fn split_name(name: &str, m: u32) -> Result<(&str, Option<Color>)> {
    match name.split_once(':') {
        None => Ok((name, None)),
        Some((base, j)) => {
            let j: Color = j.parse().map_err(|_| Error::UnknownName(name.to_string()))?;
            if j >= m {
                return Err(Error::ColorOutOfRange { color: j, m });
            }
            Ok((base, Some(j)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::enumerate_compositions;
    use crate::qsym::{antipode, gamma, lambda};

    fn c(m: u32, pairs: &[(u32, u32)]) -> ColoredComposition {
        ColoredComposition::from_pairs(m, pairs).unwrap()
    }

    #[test]
    fn zeta_q_examples() {
        let alg = Arc::new(QSymHopf::new(1));
        let z = zeta_q(&alg, 0);
        let f3 = QSymElement::basis_element(Basis::F, &c(1, &[(3, 0)])).unwrap();
        let f21 = QSymElement::basis_element(Basis::F, &c(1, &[(2, 0), (1, 0)])).unwrap();
        assert_eq!(eval_qsym(&z, &f3), rat(1));
        assert_eq!(eval_qsym(&z, &f21), rat(0));
        assert_eq!(z.eval_key(&c(1, &[])), rat(1));
        assert_eq!(z.bar().eval_key(&c(1, &[(3, 0)])), rat(-1));
    }

    #[test]
    fn zeta_q_closed_forms_match_m_route() {
        for m in 1..=3 {
            let alg = Arc::new(QSymHopf::new(m));
            let full = zeta_q_tuple(&alg).product();
            for n in 0..=4 {
                for a in enumerate_compositions(m, n) {
                    for basis in [Basis::M, Basis::F, Basis::K] {
                        if basis == Basis::K && !a.is_peak_composition() {
                            continue;
                        }
                        let e = QSymElement::basis_element(basis, &a).unwrap();
                        for j in 0..m {
                            assert_eq!(eval_qsym(&zeta_q(&alg, j), &e), zeta_q_closed(j, basis, &a));
                        }
                        assert_eq!(eval_qsym(&full, &e), zeta_q_full_closed(basis, &a), "{basis} {a}");
                    }
                }
            }
        }
    }

    #[test]
    fn convolution_group_axioms() {
        let alg = Arc::new(QSymHopf::new(2));
        let eps = Character::counit(alg.clone());
        let z0 = zeta_q(&alg, 0);
        let z1 = zeta_q(&alg, 1);
        assert_eq!(eps.convolve(&z0).unwrap().agrees_with(&z0, 4), None);
        assert_eq!(z0.inverse().convolve(&z0).unwrap().agrees_with(&eps, 3), None);
        assert_eq!(z0.convolve(&z0.inverse()).unwrap().agrees_with(&eps, 3), None);
        assert_eq!(z1.inverse().inverse().agrees_with(&z1, 4), None);
        assert_eq!(eps.inverse().agrees_with(&eps, 4), None);
        assert_eq!(z0.bar().bar().agrees_with(&z0, 4), None);
        let lhs = z0.convolve(&z1).unwrap().convolve(&z0.bar()).unwrap();
        let rhs = z0.convolve(&z1.convolve(&z0.bar()).unwrap()).unwrap();
        assert_eq!(lhs.agrees_with(&rhs, 4), None);
        let other = Arc::new(QSymHopf::new(2));
        assert!(matches!(z0.convolve(&zeta_q(&other, 0)), Err(Error::DomainMismatch)));
    }

    #[test]
    fn zeta_p_factors_through_gamma() {
        for m in 1..=2 {
            let palg = Arc::new(PosetHopf::new(m));
            let qalg = Arc::new(QSymHopf::new(m));
            for n in 0..=4 {
                for p in palg.basis(n) {
                    for j in 0..m {
                        assert_eq!(zeta_p(&palg, j).eval_key(&p), eval_qsym(&zeta_q(&qalg, j), &gamma(&p)), "{p}");
                    }
                }
            }
        }
    }

    #[test]
    fn nu_counting_and_oddness() {
        for m in 1..=2 {
            let palg = Arc::new(PosetHopf::new(m));
            let qalg = Arc::new(QSymHopf::new(m));
            let nup = poset_character(&palg, "nuP").unwrap();
            let zq = zeta_q_tuple(&qalg).product();
            for j in 0..m {
                let nu = zeta_p(&palg, j).nu();
                for n in 0..=4 {
                    for p in palg.basis(n) {
                        assert_eq!(nu.eval_key(&p), nu_p_count(j, &p), "{p}");
                        assert_eq!(nu.bar().eval_key(&p), nu.inverse().eval_key(&p), "{p}");
                    }
                }
            }
            for n in 0..=4 {
                for p in palg.basis(n) {
                    assert_eq!(nup.eval_key(&p), nu_p_full_count(&p), "{p}");
                    assert_eq!(nup.eval_key(&p), eval_qsym(&zq, &lambda(&p)), "{p}");
                }
            }
        }
    }

    #[test]
    fn nu_on_same_color_antichain() {
        let palg = Arc::new(PosetHopf::new(1));
        let p = palg.canonical(&ColoredPoset::antichain(1, &[(1, 0), (2, 0)]).unwrap());
        assert_eq!(poset_character(&palg, "nuP").unwrap().eval_key(&p), rat(4));
    }

    #[test]
    fn psi_reproduces_gamma() {
        for m in 1..=2 {
            let palg = Arc::new(PosetHopf::new(m));
            let psi = Psi::new(zeta_p_tuple(&palg));
            for n in 0..=4 {
                for p in palg.basis(n) {
                    assert_eq!(psi.apply(&Linear::basis(p.clone())), gamma(&p), "{p}");
                }
            }
            let v = palg.canonical(&ColoredPoset::antichain(m, &[(1, m - 1)]).unwrap());
            assert_eq!(psi.apply_key(&v), Linear::basis(c(m, &[(1, m - 1)])));
            assert_eq!(psi.apply_key(&palg.unit_key()), Linear::basis(c(m, &[])));
        }
    }

    #[test]
    fn psi_is_multiplicative() {
        let palg = Arc::new(PosetHopf::new(2));
        let psi = Psi::new(zeta_p_tuple(&palg));
        let small: Vec<_> = (1..=2).flat_map(|n| palg.basis(n)).collect();
        for a in &small {
            for b in &small {
                let lhs = psi.apply(&palg.mul_keys(a, b));
                let rhs = crate::qsym::multiply(&psi.apply(&Linear::basis(a.clone())), &psi.apply(&Linear::basis(b.clone()))).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn inverse_is_composition_with_antipode() {
        let alg = Arc::new(QSymHopf::new(2));
        let z = zeta_q(&alg, 1);
        for n in 0..=3 {
            for a in enumerate_compositions(2, n) {
                let e = QSymElement::basis_element(Basis::F, &a).unwrap();
                assert_eq!(eval_qsym(&z.inverse(), &e), eval_qsym(&z, &antipode(&e).unwrap()));
            }
        }
    }

    #[test]
    fn tuple_length_checked() {
        let alg = Arc::new(QSymHopf::new(2));
        assert_eq!(
            CharacterTuple::new(vec![zeta_q(&alg, 0)]).unwrap_err(),
            Error::TupleLength { expected: 2, found: 1 }
        );
        assert!(qsym_character(&alg, "zetaQ:5").is_err());
        assert!(qsym_character(&alg, "bogus").is_err());
    }
}
