//! Brute-force generating functions of colored P-partitions and colored
//! enriched P-partitions over the truncated alphabet `[N]_m`.
//!
//! Nothing here touches the algebraic code paths: maps are enumerated
//! directly and checked against every relation of the transitive closure.

use std::collections::HashMap;

use num_traits::Zero;
use rayon::prelude::*;

use crate::combinat::Color;
use crate::linear::{rat, Linear, Rational};
use crate::poset::ColoredPoset;
use crate::qsym::QSymElement;

/// Polynomial in the variables `x_{i,j}`, `1 ≤ i ≤ N`, `0 ≤ j < m`,
/// stored as exponent vectors indexed by `(i-1)·m + j`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncatedPolynomial {
    pub n: u32,
    pub m: u32,
    pub terms: Linear<Vec<u32>>,
}

impl TruncatedPolynomial {
    pub fn zero(n: u32, m: u32) -> Self {
        Self { n, m, terms: Linear::zero() }
    }

    pub fn var_index(&self, i: u32, j: Color) -> usize {
        ((i - 1) * self.m + j) as usize
    }

    pub fn monomial(n: u32, m: u32, factors: &[(u32, Color, u32)]) -> Vec<u32> {
        let mut e = vec![0; (n * m) as usize];
        for &(i, j, k) in factors {
            e[((i - 1) * m + j) as usize] += k;
        }
        e
    }

    /// Sparse `(i, j, exponent)` triples of an exponent vector.
    pub fn factors(&self, exps: &[u32]) -> Vec<(u32, Color, u32)> {
        exps.iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(k, &e)| (k as u32 / self.m + 1, k as u32 % self.m, e))
            .collect()
    }

    pub fn coeff(&self, factors: &[(u32, Color, u32)]) -> Rational {
        self.terms.coeff(&Self::monomial(self.n, self.m, factors))
    }

    /// Sum of all coefficients.
    pub fn total(&self) -> Rational {
        self.terms.iter().fold(Rational::zero(), |acc, (_, c)| acc + c)
    }

    pub fn mul(&self, other: &TruncatedPolynomial) -> TruncatedPolynomial {
        assert_eq!((self.n, self.m), (other.n, other.m), "same alphabet");
        let terms = self.terms.bilinear(&other.terms, |a, b| {
            Linear::basis(a.iter().zip(b).map(|(x, y)| x + y).collect())
        });
        Self { n: self.n, m: self.m, terms }
    }

    /// Re-embeds into the alphabet `[n2]_m`, adding `offset` to every first
    /// index.
    pub fn embed(&self, n2: u32, offset: u32) -> TruncatedPolynomial {
        let terms = self.terms.map_keys(|e| {
            let mut out = vec![0; (n2 * self.m) as usize];
            for (k, &x) in e.iter().enumerate() {
                out[k + (offset * self.m) as usize] = x;
            }
            out
        });
        Self { n: n2, m: self.m, terms }
    }

    fn from_counts(n: u32, m: u32, counts: HashMap<Vec<u32>, u64>) -> Self {
        let terms = counts.into_iter().map(|(e, c)| (e, rat(c as i64))).collect();
        Self { n, m, terms }
    }
}

/// Position in `[N]_m` encoded as `(i, j)`; the order is lexicographic.
type Slot = (u32, Color);

/// Enumerates assignments along a topological order, pruning with
/// `allowed(f(a), f(b), value order of a and b)` for each related pair.
fn enumerate<V: Copy + Send + Sync>(
    p: &ColoredPoset,
    n: u32,
    choices: impl Fn(Color) -> Vec<V> + Sync,
    allowed: impl Fn(V, V, bool) -> bool + Sync,
    slot: impl Fn(V) -> Slot + Sync,
) -> TruncatedPolynomial {
    let m = p.m();
    let len = p.len();
    let mut order: Vec<usize> = (0..len).collect();
    order.sort_by_key(|&i| p.below_mask(i).count_ones());
    let opts: Vec<Vec<V>> = (0..len).map(|i| choices(p.elements()[i].color)).collect();

    struct Ctx<'a, V, A, S> {
        p: &'a ColoredPoset,
        order: &'a [usize],
        opts: &'a [Vec<V>],
        allowed: &'a A,
        slot: &'a S,
        n: u32,
        m: u32,
    }

    fn go<V: Copy, A: Fn(V, V, bool) -> bool, S: Fn(V) -> Slot>(
        ctx: &Ctx<'_, V, A, S>,
        k: usize,
        assigned: &mut Vec<Option<V>>,
        counts: &mut HashMap<Vec<u32>, u64>,
    ) {
        if k == ctx.order.len() {
            let mut e = vec![0u32; (ctx.n * ctx.m) as usize];
            for v in assigned.iter().flatten() {
                let (i, j) = (ctx.slot)(*v);
                e[((i - 1) * ctx.m + j) as usize] += 1;
            }
            *counts.entry(e).or_default() += 1;
            return;
        }
        let b = ctx.order[k];
        'next: for &v in &ctx.opts[b] {
            for (a, slot) in assigned.iter().enumerate() {
                if let Some(u) = *slot {
                    // index order is value order
                    if ctx.p.less(a, b) && !(ctx.allowed)(u, v, a < b) {
                        continue 'next;
                    }
                    if ctx.p.less(b, a) && !(ctx.allowed)(v, u, b < a) {
                        continue 'next;
                    }
                }
            }
            assigned[b] = Some(v);
            go(ctx, k + 1, assigned, counts);
            assigned[b] = None;
        }
    }

    let ctx = Ctx { p, order: &order, opts: &opts, allowed: &allowed, slot: &slot, n, m };
    if len == 0 {
        let mut counts = HashMap::new();
        counts.insert(vec![0u32; (n * m) as usize], 1);
        return TruncatedPolynomial::from_counts(n, m, counts);
    }
    // split the search on the first element's value
    let first = order[0];
    let partial: Vec<HashMap<Vec<u32>, u64>> = opts[first]
        .par_iter()
        .map(|&v| {
            let mut assigned = vec![None; len];
            assigned[first] = Some(v);
            let mut counts = HashMap::new();
            go(&ctx, 1, &mut assigned, &mut counts);
            counts
        })
        .collect();
    let mut counts: HashMap<Vec<u32>, u64> = HashMap::new();
    for part in partial {
        for (e, c) in part {
            *counts.entry(e).or_default() += c;
        }
    }
    TruncatedPolynomial::from_counts(n, m, counts)
}

/// Generating function of colored P-partitions `f: P → [N]_m`: colors are
/// kept, `f(a) ≤ f(b)` whenever `a <_P b`, strictly when the label of `a`
/// exceeds that of `b`.
pub fn enumerate_ppartitions(p: &ColoredPoset, n: u32) -> TruncatedPolynomial {
    enumerate(
        p,
        n,
        |j| (1..=n).map(|i| (i, j)).collect(),
        |fa: Slot, fb: Slot, natural| if natural { fa <= fb } else { fa < fb },
        |s| s,
    )
}

/// A signed letter `(i, j, positive)`; ordered with the negative copy first.
type Signed = (u32, Color, bool);

/// Generating function of colored enriched P-partitions into `[N]_m^±`,
/// recording `x_{|f(a)|}`.
pub fn enumerate_enriched(p: &ColoredPoset, n: u32) -> TruncatedPolynomial {
    enumerate(
        p,
        n,
        |j| (1..=n).flat_map(|i| [(i, j, false), (i, j, true)]).collect(),
        |s: Signed, t: Signed, natural| {
            // ≤⁺ admits equality at a positive letter, ≤⁻ at a negative one
            s < t || (s == t && s.2 == natural)
        },
        |(i, j, _)| (i, j),
    )
}

/// Restriction of an element to the variables with first index `≤ n`.
pub fn truncate(e: &QSymElement, n: u32) -> TruncatedPolynomial {
    let m = e.m();
    let mut out = TruncatedPolynomial::zero(n, m);
    for (alpha, c) in e.to_m().terms().iter() {
        let parts = alpha.parts();
        let mut stack: Vec<Slot> = Vec::new();
        fn go(
            parts: &[crate::combinat::Part],
            k: usize,
            n: u32,
            m: u32,
            stack: &mut Vec<Slot>,
            c: &Rational,
            out: &mut Linear<Vec<u32>>,
        ) {
            if k == parts.len() {
                let mut e = vec![0; (n * m) as usize];
                for (s, p) in stack.iter().zip(parts) {
                    e[((s.0 - 1) * m + s.1) as usize] += p.size;
                }
                out.add_term(e, c.clone());
                return;
            }
            let j = parts[k].color;
            for i in 1..=n {
                let slot = (i, j);
                if stack.last().is_some_and(|&prev| prev >= slot) {
                    continue;
                }
                stack.push(slot);
                go(parts, k + 1, n, m, stack, c, out);
                stack.pop();
            }
        }
        go(parts, 0, n, m, &mut stack, c, &mut out.terms);
    }
    out
}

/// Outcome of comparing both sides of the split-alphabet bijection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitCheck {
    pub direct_count: Rational,
    pub split_count: Rational,
    pub polynomials_equal: bool,
}

impl SplitCheck {
    pub fn holds(&self) -> bool {
        self.polynomials_equal && self.direct_count == self.split_count
    }
}

/// Colored P-partitions into `X` followed by `Y` (each a copy of `[N]_m`)
/// against `Σ_I A(I; X) · A(P∖I; Y)`.
pub fn split_alphabet_check(p: &ColoredPoset, n: u32) -> SplitCheck {
    let direct = enumerate_ppartitions(p, 2 * n);
    let mut split = TruncatedPolynomial::zero(2 * n, p.m());
    let mut split_count = Rational::zero();
    for (ideal, rest) in p.ideal_splits() {
        let a = enumerate_ppartitions(&ideal, n);
        let b = enumerate_ppartitions(&rest, n);
        split_count += a.total() * b.total();
        let prod = a.embed(2 * n, 0).mul(&b.embed(2 * n, n));
        split.terms.add_assign_ref(&prod.terms);
    }
    SplitCheck {
        direct_count: direct.total(),
        split_count,
        polynomials_equal: direct == split,
    }
}

/// True when every coefficient is a nonnegative integer.
pub fn is_counting(poly: &TruncatedPolynomial) -> bool {
    poly.terms.iter().all(|(_, c)| c.is_integer() && *c > Rational::zero())
}

/// Unit polynomial (the generating function of the empty poset).
pub fn one(n: u32, m: u32) -> TruncatedPolynomial {
    TruncatedPolynomial { n, m, terms: Linear::basis(vec![0; (n * m) as usize]) }
}

impl TruncatedPolynomial {
    pub fn is_one(&self) -> bool {
        self.terms == one(self.n, self.m).terms
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::ColoredComposition;
    use crate::qsym::{gamma, lambda, Basis};

    fn comp(m: u32, pairs: &[(u32, u32)]) -> ColoredComposition {
        ColoredComposition::from_pairs(m, pairs).unwrap()
    }

    #[test]
    fn single_element() {
        let p = ColoredPoset::antichain(2, &[(1, 1)]).unwrap();
        let poly = enumerate_ppartitions(&p, 2);
        assert_eq!(poly.terms.len(), 2);
        assert_eq!(poly.coeff(&[(1, 1, 1)]), rat(1));
        assert_eq!(poly.coeff(&[(2, 1, 1)]), rat(1));
        let e = enumerate_enriched(&p, 1);
        assert_eq!(e.terms, Linear::term(TruncatedPolynomial::monomial(1, 2, &[(1, 1, 1)]), rat(2)));
    }

    #[test]
    fn antichain_of_two() {
        let p = ColoredPoset::antichain(1, &[(1, 0), (2, 0)]).unwrap();
        let poly = enumerate_ppartitions(&p, 1);
        assert_eq!(poly.terms, Linear::basis(vec![2]));
    }

    #[test]
    fn vee_with_strict_edge() {
        // 3 > 2 < 1 with 2 at the bottom: f(2) ≤ f(3), f(2) < f(1)
        let p = ColoredPoset::new(1, &[(1, 0), (2, 0), (3, 0)], &[(2, 1), (2, 3)]).unwrap();
        let poly = enumerate_ppartitions(&p, 2);
        // maps into {1,2}: f(2)=1, f(1)=2, f(3) ∈ {1,2}
        assert_eq!(poly.coeff(&[(1, 0, 1), (2, 0, 2)]), rat(1));
        assert_eq!(poly.coeff(&[(1, 0, 2), (2, 0, 1)]), rat(1));
        assert_eq!(poly.total(), rat(2));
        assert_eq!(poly, truncate(&gamma(&p), 2));
    }

    #[test]
    fn enriched_two_chain_by_hand() {
        // f(1) ≤⁺ f(2) with both absolute values 1: (−1,+1) and (+1,+1).
        let p = ColoredPoset::chain(1, &[(1, 0), (2, 0)]).unwrap();
        let poly = enumerate_enriched(&p, 1);
        assert_eq!(poly.terms, Linear::term(vec![2], rat(2)));
        assert_eq!(poly, truncate(&lambda(&p), 1));
    }

    #[test]
    fn truncation_examples() {
        let m11 = QSymElement::basis_element(Basis::M, &comp(1, &[(1, 0), (1, 0)])).unwrap();
        assert_eq!(truncate(&m11, 2).terms, Linear::basis(vec![1, 1]));
        let x = QSymElement::basis_element(Basis::M, &comp(2, &[(2, 1), (1, 0)])).unwrap();
        let t = truncate(&x, 2);
        assert_eq!(t.terms, Linear::basis(TruncatedPolynomial::monomial(2, 2, &[(1, 1, 2), (2, 0, 1)])));
        for n in 1..=3 {
            let f = QSymElement::basis_element(Basis::F, &comp(1, &[(2, 0), (1, 0)])).unwrap();
            let m21 = QSymElement::basis_element(Basis::M, &comp(1, &[(2, 0), (1, 0)])).unwrap();
            let m111 = QSymElement::basis_element(Basis::M, &comp(1, &[(1, 0), (1, 0), (1, 0)])).unwrap();
            let sum = truncate(&m21, n).terms + truncate(&m111, n).terms;
            assert_eq!(truncate(&f, n).terms, sum);
        }
    }

    #[test]
    fn split_alphabet_small() {
        let v = ColoredPoset::antichain(1, &[(1, 0)]).unwrap();
        let r = split_alphabet_check(&v, 3);
        assert!(r.holds());
        assert_eq!(r.direct_count, rat(6));
        let chain = ColoredPoset::chain(1, &[(1, 0), (2, 0)]).unwrap();
        assert!(split_alphabet_check(&chain, 1).holds());
    }

    #[test]
    fn empty_poset_is_one() {
        let e = ColoredPoset::empty(2);
        assert!(enumerate_ppartitions(&e, 2).is_one());
        assert!(enumerate_enriched(&e, 2).is_one());
    }
}
