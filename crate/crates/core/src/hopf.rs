//! Graded connected Hopf algebras given on a basis, and generic checks.

use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;
use std::sync::Mutex;

use num_traits::{One, Zero};

use crate::combinat::{enumerate_compositions, ColoredComposition};
use crate::linear::{Linear, Rational};
use crate::poset::{enumerate_canonical, ColoredPoset};

pub type Tensor<K> = Linear<(K, K)>;

/// A graded connected Hopf algebra over the rationals, specified on a basis.
pub trait HopfAlgebra: Send + Sync {
    type Key: Ord + Clone + Hash + Debug + Send + Sync;

    /// Number of colors.
    fn m(&self) -> u32;
    fn unit_key(&self) -> Self::Key;
    fn degree(&self, key: &Self::Key) -> usize;
    fn mul_keys(&self, a: &Self::Key, b: &Self::Key) -> Linear<Self::Key>;
    fn comul_key(&self, key: &Self::Key) -> Tensor<Self::Key>;
    /// All basis keys of degree `n`.
    fn basis(&self, n: usize) -> Vec<Self::Key>;

    /// Antipode on a basis key. Defaults to the inductive recursion.
    fn antipode_key(&self, key: &Self::Key) -> Linear<Self::Key> {
        inductive_antipode_key(self, key)
    }

    fn one(&self) -> Linear<Self::Key> {
        Linear::basis(self.unit_key())
    }

    fn mul(&self, a: &Linear<Self::Key>, b: &Linear<Self::Key>) -> Linear<Self::Key> {
        a.bilinear(b, |x, y| self.mul_keys(x, y))
    }

    fn comul(&self, a: &Linear<Self::Key>) -> Tensor<Self::Key> {
        a.map_linear(|k| self.comul_key(k))
    }

    fn antipode(&self, a: &Linear<Self::Key>) -> Linear<Self::Key> {
        a.map_linear(|k| self.antipode_key(k))
    }

    /// Coefficient of the unit.
    fn counit(&self, a: &Linear<Self::Key>) -> Rational {
        a.coeff(&self.unit_key())
    }

    /// Multiplication applied to a tensor.
    fn mul_tensor(&self, t: &Tensor<Self::Key>) -> Linear<Self::Key> {
        let mut out = Linear::zero();
        for ((a, b), c) in t.iter() {
            out.add_scaled(&self.mul_keys(a, b), c);
        }
        out
    }

    /// Componentwise product of tensors in `H ⊗ H`.
    fn mul_tensors(&self, s: &Tensor<Self::Key>, t: &Tensor<Self::Key>) -> Tensor<Self::Key> {
        s.bilinear(t, |(a1, a2), (b1, b2)| self.mul_keys(a1, b1).tensor(&self.mul_keys(a2, b2)))
    }
}

/// `S(h) = -h - Σ S(h₁) h₂` over the reduced coproduct (terms with `h₂ ≠ 1`
/// and `h₁ ≠ h`). Recurses through `antipode_key`, so an implementation
/// that memoizes there gets memoized recursion.
pub fn inductive_antipode_key<H: HopfAlgebra + ?Sized>(alg: &H, key: &H::Key) -> Linear<H::Key> {
    let unit = alg.unit_key();
    if *key == unit {
        return alg.one();
    }
    let n = alg.degree(key);
    let mut out = -Linear::basis(key.clone());
    for ((a, b), c) in alg.comul_key(key).iter() {
        let da = alg.degree(a);
        if da == 0 || da == n {
            continue;
        }
        let sa = alg.antipode_key(a);
        let prod = alg.mul(&sa, &Linear::basis(b.clone()));
        out.add_scaled(&prod, &-c.clone());
    }
    out
}

/// Failure of an identity, reported with the offending key.
#[derive(Clone, Debug)]
pub struct Violation {
    pub property: &'static str,
    pub input: String,
}

fn check<K: Debug>(property: &'static str, ok: bool, input: impl FnOnce() -> K) -> Option<Violation> {
    (!ok).then(|| Violation { property, input: format!("{:?}", input()) })
}

/// `(ε ⊗ id)Δ = id = (id ⊗ ε)Δ` on `key`.
pub fn check_counit<H: HopfAlgebra + ?Sized>(alg: &H, key: &H::Key) -> Option<Violation> {
    let d = alg.comul_key(key);
    let unit = alg.unit_key();
    let left: Linear<H::Key> = d
        .iter()
        .filter(|((a, _), _)| *a == unit)
        .map(|((_, b), c)| (b.clone(), c.clone()))
        .collect();
    let right: Linear<H::Key> = d
        .iter()
        .filter(|((_, b), _)| *b == unit)
        .map(|((a, _), c)| (a.clone(), c.clone()))
        .collect();
    let id = Linear::basis(key.clone());
    check("counit", left == id && right == id, || key.clone())
}

/// `(Δ ⊗ id)Δ = (id ⊗ Δ)Δ` on `key`.
pub fn check_coassociativity<H: HopfAlgebra + ?Sized>(alg: &H, key: &H::Key) -> Option<Violation> {
    let d = alg.comul_key(key);
    let mut left: Linear<(H::Key, H::Key, H::Key)> = Linear::zero();
    let mut right: Linear<(H::Key, H::Key, H::Key)> = Linear::zero();
    for ((a, b), c) in d.iter() {
        for ((a1, a2), c2) in alg.comul_key(a).iter() {
            left.add_term((a1.clone(), a2.clone(), b.clone()), c * c2);
        }
        for ((b1, b2), c2) in alg.comul_key(b).iter() {
            right.add_term((a.clone(), b1.clone(), b2.clone()), c * c2);
        }
    }
    check("coassociativity", left == right, || key.clone())
}

/// `Δ(ab) = Δ(a)Δ(b)`.
pub fn check_bialgebra<H: HopfAlgebra + ?Sized>(alg: &H, a: &H::Key, b: &H::Key) -> Option<Violation> {
    let lhs = alg.comul(&alg.mul_keys(a, b));
    let rhs = alg.mul_tensors(&alg.comul_key(a), &alg.comul_key(b));
    check("bialgebra", lhs == rhs, || (a.clone(), b.clone()))
}

/// `m(S ⊗ id)Δ = ηε` and `m(id ⊗ S)Δ = ηε` on `key`.
pub fn check_antipode<H: HopfAlgebra + ?Sized>(alg: &H, key: &H::Key) -> Vec<Violation> {
    let d = alg.comul_key(key);
    let expected = if *key == alg.unit_key() { alg.one() } else { Linear::zero() };
    let mut left = Linear::zero();
    let mut right = Linear::zero();
    for ((a, b), c) in d.iter() {
        left.add_scaled(&alg.mul(&alg.antipode_key(a), &Linear::basis(b.clone())), c);
        right.add_scaled(&alg.mul(&Linear::basis(a.clone()), &alg.antipode_key(b)), c);
    }
    let mut out = Vec::new();
    out.extend(check("antipode-left", left == expected, || key.clone()));
    out.extend(check("antipode-right", right == expected, || key.clone()));
    out
}

/// Shared memo tables for algebras with expensive structure maps.
pub(crate) struct Memo<K: Eq + Hash, V> {
    table: Mutex<HashMap<K, V>>,
}

impl<K: Eq + Hash + Clone, V: Clone> Memo<K, V> {
    pub(crate) fn new() -> Self {
        Self { table: Mutex::new(HashMap::new()) }
    }

    /// Looks up `key`, computing outside the lock on a miss. Concurrent
    /// misses compute the same deterministic value.
    pub(crate) fn get_or(&self, key: &K, f: impl FnOnce() -> V) -> V {
        if let Some(v) = self.table.lock().expect("memo poisoned").get(key) {
            return v.clone();
        }
        let v = f();
        self.table.lock().expect("memo poisoned").insert(key.clone(), v.clone());
        v
    }
}

/// Memo keyed on ordered pairs, looked up without cloning either key.
pub(crate) struct PairMemo<K: Eq + Hash, V> {
    table: Mutex<HashMap<K, HashMap<K, V>>>,
}

impl<K: Eq + Hash + Clone, V: Clone> PairMemo<K, V> {
    pub(crate) fn new() -> Self {
        Self { table: Mutex::new(HashMap::new()) }
    }

    pub(crate) fn get_or(&self, a: &K, b: &K, f: impl FnOnce() -> V) -> V {
        if let Some(v) = self.table.lock().expect("memo poisoned").get(a).and_then(|row| row.get(b)) {
            return v.clone();
        }
        let v = f();
        self.table
            .lock()
            .expect("memo poisoned")
            .entry(a.clone())
            .or_default()
            .insert(b.clone(), v.clone());
        v
    }
}

/// The colored poset Hopf algebra: disjoint union and ideal splitting on
/// canonical posets.
pub struct PosetHopf {
    m: u32,
    canon: Memo<ColoredPoset, ColoredPoset>,
    product: PairMemo<ColoredPoset, ColoredPoset>,
    comul: Memo<ColoredPoset, Tensor<ColoredPoset>>,
    antipode: Memo<ColoredPoset, Linear<ColoredPoset>>,
}

impl PosetHopf {
    pub fn new(m: u32) -> Self {
        Self { m, canon: Memo::new(), product: PairMemo::new(), comul: Memo::new(), antipode: Memo::new() }
    }

    pub fn canonical(&self, p: &ColoredPoset) -> ColoredPoset {
        self.canon.get_or(p, || p.canonical_form())
    }

    /// Element for a single poset, canonicalized.
    pub fn element(&self, p: &ColoredPoset) -> Linear<ColoredPoset> {
        Linear::basis(self.canonical(p))
    }

    /// Antipode as an alternating sum over strict chains of order ideals
    /// `∅ = I₀ ⊂ I₁ ⊂ ... ⊂ I_k = P` of the unions of consecutive differences.
    /// Enumerates chains explicitly; meant as an independent check.
    pub fn chain_antipode_key(&self, p: &ColoredPoset) -> Linear<ColoredPoset> {
        fn go(
            alg: &PosetHopf,
            p: &ColoredPoset,
            ideals: &[u64],
            cur: u64,
            acc: &ColoredPoset,
            sign: bool,
            out: &mut Linear<ColoredPoset>,
        ) {
            let full = ideals.last().copied().unwrap_or(0);
            if cur == full {
                let coeff = if sign { -Rational::one() } else { Rational::one() };
                out.add_term(alg.canonical(acc), coeff);
                return;
            }
            for &next in ideals {
                if next & cur == cur && next != cur {
                    let piece = p.induced(next & !cur);
                    let joined = acc.disjoint_union(&piece).expect("same m");
                    go(alg, p, ideals, next, &joined, !sign, out);
                }
            }
        }
        let mut ideals = p.ideal_masks();
        // sorted by size, so the whole poset comes last
        ideals.sort_unstable_by_key(|m| (m.count_ones(), *m));
        let mut out = Linear::zero();
        if p.is_empty() {
            out.add_term(p.clone(), Rational::one());
            return out;
        }
        go(self, p, &ideals, 0, &ColoredPoset::empty(p.m()), false, &mut out);
        out
    }
}

impl HopfAlgebra for PosetHopf {
    type Key = ColoredPoset;

    fn m(&self) -> u32 {
        self.m
    }

    fn unit_key(&self) -> ColoredPoset {
        ColoredPoset::empty(self.m)
    }

    fn degree(&self, key: &ColoredPoset) -> usize {
        key.len()
    }

    fn mul_keys(&self, a: &ColoredPoset, b: &ColoredPoset) -> Linear<ColoredPoset> {
        if a.is_empty() {
            return Linear::basis(self.canonical(b));
        }
        if b.is_empty() {
            return Linear::basis(self.canonical(a));
        }
        // the product is commutative, so memoize on the ordered pair
        let (x, y) = if a <= b { (a, b) } else { (b, a) };
        let u = self.product.get_or(x, y, || {
            x.disjoint_union(y).expect("keys share m").canonical_form()
        });
        Linear::basis(u)
    }

    fn comul_key(&self, key: &ColoredPoset) -> Tensor<ColoredPoset> {
        self.comul.get_or(key, || {
            let mut out = Linear::zero();
            for (i, rest) in key.ideal_splits() {
                out.add_term((self.canonical(&i), self.canonical(&rest)), Rational::one());
            }
            out
        })
    }

    fn basis(&self, n: usize) -> Vec<ColoredPoset> {
        enumerate_canonical(self.m, n).as_ref().clone()
    }

    fn antipode_key(&self, key: &ColoredPoset) -> Linear<ColoredPoset> {
        let key = self.canonical(key);
        self.antipode.get_or(&key, || inductive_antipode_key(self, &key))
    }
}

/// `QSym^(m)` in the monomial basis: quasi-shuffle product and
/// deconcatenation coproduct.
pub struct QSymHopf {
    m: u32,
    product: PairMemo<ColoredComposition, Linear<ColoredComposition>>,
    antipode: Memo<ColoredComposition, Linear<ColoredComposition>>,
}

impl QSymHopf {
    pub fn new(m: u32) -> Self {
        Self { m, product: PairMemo::new(), antipode: Memo::new() }
    }

    /// Antipode by the inductive recursion, bypassing the closed formula.
    pub fn inductive_antipode(&self, key: &ColoredComposition) -> Linear<ColoredComposition> {
        self.antipode.get_or(key, || {
            let unit = self.unit_key();
            if *key == unit {
                return self.one();
            }
            let n = key.weight();
            let mut out = -Linear::basis(key.clone());
            for ((a, b), c) in self.comul_key(key).iter() {
                let da = a.weight();
                if da == 0 || da == n {
                    continue;
                }
                let prod = self.mul(&self.inductive_antipode(a), &Linear::basis(b.clone()));
                out.add_scaled(&prod, &-c.clone());
            }
            out
        })
    }
}

/// Quasi-shuffles of two colored compositions: interleavings in which a
/// part of `a` may merge with an adjacent-in-time part of `b` of the same
/// color.
pub fn quasi_shuffle(a: &ColoredComposition, b: &ColoredComposition) -> Linear<ColoredComposition> {
    use crate::combinat::Part;
    fn go(a: &[Part], b: &[Part], prefix: &mut Vec<Part>, m: u32, out: &mut Linear<ColoredComposition>) {
        if a.is_empty() || b.is_empty() {
            let mut parts = prefix.clone();
            parts.extend_from_slice(a);
            parts.extend_from_slice(b);
            out.add_term(ColoredComposition::from_parts_unchecked(m, parts), Rational::one());
            return;
        }
        prefix.push(a[0]);
        go(&a[1..], b, prefix, m, out);
        prefix.pop();
        prefix.push(b[0]);
        go(a, &b[1..], prefix, m, out);
        prefix.pop();
        if a[0].color == b[0].color {
            prefix.push(Part::new(a[0].size + b[0].size, a[0].color));
            go(&a[1..], &b[1..], prefix, m, out);
            prefix.pop();
        }
    }
    let mut out = Linear::zero();
    go(a.parts(), b.parts(), &mut Vec::new(), a.m(), &mut out);
    out
}

/// Deconcatenation `Σ_{βγ = α} β ⊗ γ`.
pub fn deconcatenate(alpha: &ColoredComposition) -> Tensor<ColoredComposition> {
    let parts = alpha.parts();
    (0..=parts.len())
        .map(|i| {
            let left = ColoredComposition::from_parts_unchecked(alpha.m(), parts[..i].to_vec());
            let right = ColoredComposition::from_parts_unchecked(alpha.m(), parts[i..].to_vec());
            ((left, right), Rational::one())
        })
        .collect()
}

impl HopfAlgebra for QSymHopf {
    type Key = ColoredComposition;

    fn m(&self) -> u32 {
        self.m
    }

    fn unit_key(&self) -> ColoredComposition {
        ColoredComposition::empty(self.m)
    }

    fn degree(&self, key: &ColoredComposition) -> usize {
        key.weight()
    }

    fn mul_keys(&self, a: &ColoredComposition, b: &ColoredComposition) -> Linear<ColoredComposition> {
        if a.is_empty() {
            return Linear::basis(b.clone());
        }
        if b.is_empty() {
            return Linear::basis(a.clone());
        }
        self.product.get_or(a, b, || quasi_shuffle(a, b))
    }

    fn comul_key(&self, key: &ColoredComposition) -> Tensor<ColoredComposition> {
        deconcatenate(key)
    }

    fn basis(&self, n: usize) -> Vec<ColoredComposition> {
        enumerate_compositions(self.m, n as u32)
    }

    /// Closed form `(-1)^{l(α)} Σ_{β ≤ α} M_{reverse(β)}`.
    fn antipode_key(&self, key: &ColoredComposition) -> Linear<ColoredComposition> {
        crate::qsym::antipode_m_key(key)
    }
}

/// Sums a list of basis keys with unit coefficients.
pub fn sum_keys<K: Ord + Clone>(keys: impl IntoIterator<Item = K>) -> Linear<K> {
    let mut out = Linear::zero();
    for k in keys {
        out.add_term(k, Rational::one());
    }
    out
}

/// True when every coefficient is an integer.
pub fn is_integral<K: Ord + Clone>(x: &Linear<K>) -> bool {
    x.iter().all(|(_, c)| c.is_integer() && !c.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::rat;

    #[test]
    fn quasi_shuffle_small() {
        let one = ColoredComposition::uncolored(1, &[1]).unwrap();
        let p = quasi_shuffle(&one, &one);
        assert_eq!(p.coeff(&ColoredComposition::uncolored(1, &[1, 1]).unwrap()), rat(2));
        assert_eq!(p.coeff(&ColoredComposition::uncolored(1, &[2]).unwrap()), rat(1));
        let a = ColoredComposition::from_pairs(2, &[(1, 0)]).unwrap();
        let b = ColoredComposition::from_pairs(2, &[(1, 1)]).unwrap();
        assert_eq!(quasi_shuffle(&a, &b).len(), 2);
    }

    #[test]
    fn poset_structure_maps_small() {
        let alg = PosetHopf::new(2);
        let v = ColoredPoset::antichain(2, &[(4, 1)]).unwrap();
        let d = alg.comul_key(&alg.canonical(&v));
        assert_eq!(d.len(), 2);
        let chain = ColoredPoset::chain(2, &[(1, 0), (2, 0)]).unwrap();
        assert_eq!(alg.comul_key(&alg.canonical(&chain)).len(), 3);
        assert_eq!(alg.antipode_key(&v), -alg.element(&v));
        assert_eq!(alg.antipode_key(&alg.unit_key()), alg.one());
    }

    #[test]
    fn poset_antipode_routes_agree() {
        for m in 1..=2 {
            let alg = PosetHopf::new(m);
            for n in 0..=4 {
                for p in alg.basis(n) {
                    assert_eq!(alg.antipode_key(&p), alg.chain_antipode_key(&p), "{p}");
                }
            }
        }
    }

    #[test]
    fn poset_product_commutes_and_distributes() {
        let alg = PosetHopf::new(2);
        let small: Vec<ColoredPoset> = (0..=2).flat_map(|n| alg.basis(n)).collect();
        for a in &small {
            for b in &small {
                assert_eq!(alg.mul_keys(a, b), alg.mul_keys(b, a));
            }
        }
        let three = alg.basis(3);
        let (p, q, r) = (&three[0], &three[1], &three[2]);
        let lhs = alg.mul(&(Linear::basis(p.clone()) + Linear::basis(q.clone())), &Linear::basis(r.clone()));
        let rhs = alg.mul_keys(p, r) + alg.mul_keys(q, r);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn qsym_antipode_closed_form_matches_induction() {
        for m in 1..=2 {
            let alg = QSymHopf::new(m);
            for n in 0..=4 {
                for a in alg.basis(n) {
                    assert_eq!(alg.antipode_key(&a), alg.inductive_antipode(&a), "{a}");
                }
            }
        }
    }
}
