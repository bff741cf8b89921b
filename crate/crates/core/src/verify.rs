//! Named property suites run over exhaustive parameter grids.
//!
//! Each suite loops over `m = 1..=max_m` and all objects of size up to
//! `max_n`, counting checks and collecting counterexamples.

use std::sync::Arc;
use std::time::Instant;

use itertools::iproduct;
use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::characters::{self, Character, Psi};
use crate::combinat::{count_compositions, count_peak_compositions, enumerate_compositions, ColoredComposition};
use crate::error::{Error, Result};
use crate::hopf::{self, HopfAlgebra, PosetHopf, QSymHopf, Violation};
use crate::linear::{rank, Linear};
use crate::oracle;
use crate::poset::{enumerate_canonical_upto, ColoredPoset};
use crate::qsym::{self, Basis, QSymElement};

/// Every suite name accepted by [`run`].
pub const SUITES: &[&str] = &[
    "hopf-axioms",
    "gamma-morphism",
    "lambda-morphism",
    "theta-morphism",
    "antipode-consistency",
    "oracle-equivalence",
    "character-group",
    "nu-counting",
    "dimension-counts",
    "universality",
];

/// How many counterexamples a report keeps.
pub const MAX_COUNTEREXAMPLES: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Grid {
    pub max_m: u32,
    pub max_n: usize,
    #[serde(rename = "max_N")]
    pub max_big_n: u32,
    pub seed: u64,
}

impl Grid {
    /// Largest grid for `suite` that finishes in about a minute on one core.
    pub fn default_for(suite: &str) -> Grid {
        let (max_m, max_n, max_big_n) = match suite {
            "hopf-axioms" | "gamma-morphism" | "lambda-morphism" | "theta-morphism" => (2, 5, 3),
            "dimension-counts" => (3, 5, 3),
            _ => (2, 4, 3),
        };
        Grid { max_m, max_n, max_big_n, seed: 0 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub property: String,
    pub m: u32,
    pub input: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub suite: String,
    pub grid: Grid,
    pub passed: bool,
    pub checks: u64,
    pub failures: u64,
    pub counterexamples: Vec<Counterexample>,
    pub elapsed_ms: u128,
}

/// Running total of checks; merged across parallel workers.
#[derive(Default, Debug)]
struct Tally {
    checks: u64,
    failures: u64,
    examples: Vec<Counterexample>,
}

impl Tally {
    fn check(&mut self, property: &str, m: u32, ok: bool, input: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.fail(property, m, input());
        }
    }

    fn fail(&mut self, property: &str, m: u32, input: String) {
        self.failures += 1;
        if self.examples.len() < MAX_COUNTEREXAMPLES {
            self.examples.push(Counterexample { property: property.to_string(), m, input });
        }
    }

    fn violations(&mut self, m: u32, checks: u64, vs: impl IntoIterator<Item = Violation>) {
        self.checks += checks;
        for v in vs {
            self.fail(v.property, m, v.input);
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.checks += other.checks;
        self.failures += other.failures;
        for e in other.examples {
            if self.examples.len() < MAX_COUNTEREXAMPLES {
                self.examples.push(e);
            }
        }
        self
    }
}

/// Runs `f` on every item in parallel and merges the tallies.
fn par_tally<T: Sync>(items: &[T], f: impl Fn(&T, &mut Tally) + Sync + Send) -> Tally {
    items
        .par_iter()
        .fold(Tally::default, |mut t, x| {
            f(x, &mut t);
            t
        })
        .reduce(Tally::default, Tally::merge)
}

/// Runs the named suite.
pub fn run(suite: &str, grid: &Grid) -> Result<Report> {
    if grid.max_m == 0 {
        return Err(Error::NoColors);
    }
    let start = Instant::now();
    let mut tally = Tally::default();
    for m in 1..=grid.max_m {
        let t = match suite {
            "hopf-axioms" => hopf_axioms(m, grid),
            "gamma-morphism" => gamma_morphism(m, grid),
            "lambda-morphism" => lambda_morphism(m, grid),
            "theta-morphism" => theta_morphism(m, grid),
            "antipode-consistency" => antipode_consistency(m, grid),
            "oracle-equivalence" => oracle_equivalence(m, grid),
            "character-group" => character_group(m, grid),
            "nu-counting" => nu_counting(m, grid),
            "dimension-counts" => dimension_counts(m, grid),
            "universality" => universality(m, grid),
            _ => return Err(Error::UnknownName(suite.to_string())),
        };
        tally = tally.merge(t);
    }
    let mut counterexamples = tally.examples;
    counterexamples.sort_by(|a, b| (a.m, &a.property, &a.input).cmp(&(b.m, &b.property, &b.input)));
    Ok(Report {
        suite: suite.to_string(),
        grid: *grid,
        passed: tally.failures == 0,
        checks: tally.checks,
        failures: tally.failures,
        counterexamples,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

fn compositions_upto(m: u32, max_n: usize) -> Vec<ColoredComposition> {
    (0..=max_n as u32).flat_map(|n| enumerate_compositions(m, n)).collect()
}

/// Pairs `(a, b)` of nonempty keys with `|a| + |b| ≤ max_n`; with
/// `symmetric`, only one of `(a, b)` and `(b, a)` is kept.
fn product_pairs<K: Clone + Ord>(keys: &[K], size: impl Fn(&K) -> usize, max_n: usize, symmetric: bool) -> Vec<(K, K)> {
    iproduct!(keys.iter().enumerate(), keys.iter().enumerate())
        .filter(|((i, a), (j, b))| {
            let (sa, sb) = (size(a), size(b));
            sa > 0 && sb > 0 && sa + sb <= max_n && !(symmetric && j < i)
        })
        .map(|((_, a), (_, b))| (a.clone(), b.clone()))
        .collect()
}

fn axioms_on<H: HopfAlgebra + Sync>(alg: &H, keys: &[H::Key], pairs: &[(H::Key, H::Key)]) -> Tally
where
    H::Key: Send + Sync,
{
    let m = alg.m();
    let singles = par_tally(keys, |k, t| {
        t.violations(m, 1, hopf::check_counit(alg, k));
        t.violations(m, 1, hopf::check_coassociativity(alg, k));
        t.violations(m, 2, hopf::check_antipode(alg, k));
    });
    let doubles = par_tally(pairs, |(a, b), t| t.violations(m, 1, hopf::check_bialgebra(alg, a, b)));
    singles.merge(doubles)
}

fn hopf_axioms(m: u32, g: &Grid) -> Tally {
    let palg = PosetHopf::new(m);
    let posets = enumerate_canonical_upto(m, g.max_n);
    let ppairs = product_pairs(&posets, |p| p.len(), g.max_n, true);
    let qalg = QSymHopf::new(m);
    let comps = compositions_upto(m, g.max_n);
    let qpairs = product_pairs(&comps, |a| a.weight(), g.max_n, false);
    axioms_on(&palg, &posets, &ppairs).merge(axioms_on(&qalg, &comps, &qpairs))
}

fn union(p: &ColoredPoset, q: &ColoredPoset) -> ColoredPoset {
    p.disjoint_union(q).expect("same m")
}

/// Γ or Λ checked as an algebra and coalgebra morphism. Both sides are
/// compared coefficientwise in one basis (F or K over peak keys), which
/// is exact because each is a basis.
fn morphism_suite(m: u32, g: &Grid, map: fn(&ColoredPoset) -> QSymElement, name: &str) -> Tally {
    let posets = enumerate_canonical_upto(m, g.max_n);
    let pairs = product_pairs(&posets, |p| p.len(), g.max_n, false);
    let mut t = Tally::default();
    let unit = map(&ColoredPoset::empty(m));
    t.check(&format!("{name}-unit"), m, unit.terms() == QSymElement::one(m, unit.basis()).terms(), || "∅".into());
    let products = par_tally(&pairs, |(p, q), t| {
        let lhs = map(&union(p, q));
        let rhs = qsym::multiply(&map(p), &map(q)).expect("same basis");
        t.check(&format!("{name}-product"), m, lhs.terms() == rhs.terms(), || format!("{p:?} · {q:?}"));
    });
    let coproducts = par_tally(&posets, |p, t| {
        let lhs = qsym::coproduct(&map(p)).expect("valid basis");
        let mut rhs = Linear::zero();
        for (i, rest) in p.ideal_splits() {
            rhs.add_assign_ref(&map(&i).terms().tensor(map(&rest).terms()));
        }
        t.check(&format!("{name}-coproduct"), m, lhs.terms == rhs, || format!("{p:?}"));
    });
    t.merge(products).merge(coproducts)
}

/// A relabeling of `p` that keeps value order on comparable pairs: values
/// are drawn at random and assigned along a random topological order of
/// the value order restricted to comparable pairs.
fn random_relabel(p: &ColoredPoset, rng: &mut ChaCha8Rng) -> ColoredPoset {
    let n = p.len();
    let mut values: Vec<u32> = rand::seq::index::sample(rng, 4 * n + 1, n).into_iter().map(|v| v as u32 + 1).collect();
    values.sort_unstable();
    let comparable = |i: usize, j: usize| p.less(i, j) || p.less(j, i);
    // index order equals value order, so i < j constrains i before j
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        let ready: Vec<usize> = (0..n)
            .filter(|&j| !placed[j] && (0..j).all(|i| placed[i] || !comparable(i, j)))
            .collect();
        let &pick = ready.choose(rng).expect("acyclic");
        placed[pick] = true;
        order.push(pick);
    }
    let mut assigned = vec![0; n];
    for (slot, &i) in order.iter().enumerate() {
        assigned[i] = values[slot];
    }
    p.with_values(&assigned).expect("distinct values")
}

fn gamma_morphism(m: u32, g: &Grid) -> Tally {
    let base = morphism_suite(m, g, qsym::gamma, "gamma");
    let posets = enumerate_canonical_upto(m, g.max_n);
    let indexed: Vec<(usize, &ColoredPoset)> = posets.iter().enumerate().collect();
    let relabel = par_tally(&indexed, |&(i, p), t| {
        let mut rng = ChaCha8Rng::seed_from_u64(g.seed ^ ((m as u64) << 32) ^ i as u64);
        let q = random_relabel(p, &mut rng);
        let ok = q.canonical_form() == *p && qsym::gamma(&q).terms() == qsym::gamma(p).terms();
        t.check("gamma-relabel-invariance", m, ok, || format!("{p:?} ~ {q:?}"));
    });
    base.merge(relabel)
}

fn lambda_morphism(m: u32, g: &Grid) -> Tally {
    let base = morphism_suite(m, g, qsym::lambda, "lambda");
    let posets = enumerate_canonical_upto(m, g.max_n);
    let extra = par_tally(&posets, |p, t| {
        let gp = qsym::gamma(p);
        let theta_gamma = qsym::theta(&gp).expect("F input");
        t.check("lambda-equals-theta-gamma", m, theta_gamma.terms() == qsym::lambda(p).terms(), || format!("{p:?}"));
        let lhs = qsym::antipode(&theta_gamma).expect("K keys are peak");
        let rhs = qsym::theta(&qsym::antipode(&gp).expect("F")).expect("F input");
        t.check("antipode-commutes-with-theta", m, lhs.terms() == rhs.terms(), || format!("{p:?}"));
    });
    base.merge(extra)
}

fn theta_morphism(m: u32, g: &Grid) -> Tally {
    let comps = compositions_upto(m, g.max_n);
    let f = |a: &ColoredComposition| QSymElement::basis_element(Basis::F, a).expect("F accepts any key");
    let th = |e: &QSymElement| qsym::theta(e).expect("F input");
    let pairs = product_pairs(&comps, |a| a.weight(), g.max_n, false);
    let products = par_tally(&pairs, |(a, b), t| {
        let lhs = th(&qsym::multiply(&f(a), &f(b)).expect("F"));
        let rhs = qsym::multiply(&th(&f(a)), &th(&f(b))).expect("K");
        t.check("theta-product", m, lhs.terms() == rhs.terms(), || format!("{a:?} · {b:?}"));
    });
    let singles = par_tally(&comps, |a, t| {
        let img = th(&f(a));
        let lhs = qsym::coproduct(&img).expect("K");
        let rhs = qsym::coproduct_f_key(a).map_tensor(|x| th(&f(x)).terms().clone(), |y| th(&f(y)).terms().clone());
        t.check("theta-coproduct", m, lhs.terms == rhs, || format!("{a:?}"));
        let s1 = qsym::antipode(&img).expect("K");
        let s2 = th(&qsym::antipode(&f(a)).expect("F"));
        t.check("theta-antipode", m, s1.terms() == s2.terms(), || format!("{a:?}"));
        t.check("theta-hat", m, img.terms() == &Linear::basis(a.hat()), || format!("{a:?}"));
    });
    products.merge(singles)
}

fn antipode_consistency(m: u32, g: &Grid) -> Tally {
    let qalg = QSymHopf::new(m);
    let comps = compositions_upto(m, g.max_n);
    let singles = par_tally(&comps, |a, t| {
        let closed = qsym::antipode_m_key(a);
        t.check("antipode-m-closed-vs-inductive", m, closed == qalg.inductive_antipode(a), || format!("{a:?}"));
        let via_m = qsym::f_to_m_key(a).map_linear(qsym::antipode_m_key);
        let direct = qsym::antipode_f_key(a).map_linear(qsym::f_to_m_key);
        t.check("antipode-f-closed-vs-m", m, via_m == direct, || format!("{a:?}"));
        if a.is_peak_composition() {
            let via_m = qsym::k_to_m_key(a).map_linear(qsym::antipode_m_key);
            let direct = qsym::antipode_k_key(a).expect("peak key").map_linear(qsym::k_to_m_key);
            t.check("antipode-k-closed-vs-m", m, via_m == direct, || format!("{a:?}"));
        }
    });
    let palg = PosetHopf::new(m);
    let posets = enumerate_canonical_upto(m, g.max_n.min(4));
    let chains = par_tally(&posets, |p, t| {
        t.check("poset-antipode-inductive-vs-chains", m, palg.antipode_key(p) == palg.chain_antipode_key(p), || format!("{p:?}"));
    });
    singles.merge(chains)
}

fn oracle_equivalence(m: u32, g: &Grid) -> Tally {
    let posets = enumerate_canonical_upto(m, g.max_n);
    let pairs = product_pairs(&posets, |p| p.len(), g.max_n, true);
    let mut t = Tally::default();
    for big_n in 1..=g.max_big_n {
        let singles = par_tally(&posets, |p, t| {
            let pp = oracle::enumerate_ppartitions(p, big_n);
            t.check("ppartitions-vs-gamma", m, pp == oracle::truncate(&qsym::gamma(p), big_n), || format!("N={big_n} {p:?}"));
            let en = oracle::enumerate_enriched(p, big_n);
            t.check("enriched-vs-lambda", m, en == oracle::truncate(&qsym::lambda(p), big_n), || format!("N={big_n} {p:?}"));
            let split = oracle::split_alphabet_check(p, big_n);
            t.check("split-alphabet", m, split.holds(), || format!("N={big_n} {p:?}: {split:?}"));
            let mut by_extension = oracle::TruncatedPolynomial::zero(big_n, m);
            for pi in p.linear_extensions() {
                let part = oracle::enumerate_ppartitions(&ColoredPoset::from_permutation(&pi), big_n);
                by_extension.terms.add_assign_ref(&part.terms);
            }
            t.check("extension-disjointness", m, by_extension == pp, || format!("N={big_n} {p:?}"));
        });
        let products = par_tally(&pairs, |(p, q), t| {
            let u = union(p, q);
            let lhs = oracle::enumerate_ppartitions(&u, big_n);
            let rhs = oracle::enumerate_ppartitions(p, big_n).mul(&oracle::enumerate_ppartitions(q, big_n));
            t.check("ppartition-product", m, lhs == rhs, || format!("N={big_n} {p:?} · {q:?}"));
            let lhs = oracle::enumerate_enriched(&u, big_n);
            let rhs = oracle::enumerate_enriched(p, big_n).mul(&oracle::enumerate_enriched(q, big_n));
            t.check("enriched-product", m, lhs == rhs, || format!("N={big_n} {p:?} · {q:?}"));
        });
        t = t.merge(singles).merge(products);
    }
    t
}

fn inverse_checks<H: HopfAlgebra + Sync + 'static>(
    chi: &Character<H>,
    eps: &Character<H>,
    keys: &[H::Key],
    label: &str,
    t: &mut Tally,
) where
    H::Key: Send + Sync,
{
    let m = chi.algebra().m();
    let inv = chi.inverse();
    let left = inv.convolve(chi).expect("same domain");
    let right = chi.convolve(&inv).expect("same domain");
    let nu = chi.nu();
    let odd = nu.bar().convolve(&nu).expect("same domain");
    for k in keys {
        let e = eps.eval_key(k);
        t.check(&format!("{label}-inverse-left"), m, left.eval_key(k) == e, || format!("{k:?}"));
        t.check(&format!("{label}-inverse-right"), m, right.eval_key(k) == e, || format!("{k:?}"));
        t.check(&format!("{label}-nu-odd"), m, odd.eval_key(k) == e, || format!("{k:?}"));
    }
}

fn character_group(m: u32, g: &Grid) -> Tally {
    let palg = Arc::new(PosetHopf::new(m));
    let qalg = Arc::new(QSymHopf::new(m));
    let posets = enumerate_canonical_upto(m, g.max_n);
    let comps = compositions_upto(m, g.max_n);
    let zp = characters::zeta_p_tuple(&palg);
    let zq = characters::zeta_q_tuple(&qalg);
    let (zp_all, zq_all) = (zp.product(), zq.product());
    let mut t = par_tally(&posets, |p, t| {
        let gp = qsym::gamma(p);
        for j in 0..m {
            let lhs = zp.get(j).eval_key(p);
            let rhs = characters::eval_qsym(zq.get(j), &gp);
            t.check("zetaP-equals-zetaQ-gamma", m, lhs == rhs, || format!("j={j} {p:?}"));
        }
        let ok = zp_all.eval_key(p) == characters::eval_qsym(&zq_all, &gp);
        t.check("zetaP-product-equals-zetaQ-gamma", m, ok, || format!("{p:?}"));
    });
    let (peps, qeps) = (Character::counit(palg.clone()), Character::counit(qalg.clone()));
    for j in 0..m {
        inverse_checks(zp.get(j), &peps, &posets, "poset", &mut t);
        inverse_checks(zq.get(j), &qeps, &comps, "qsym", &mut t);
    }
    inverse_checks(&zp_all, &peps, &posets, "poset-product", &mut t);
    inverse_checks(&zq_all, &qeps, &comps, "qsym-product", &mut t);
    t
}

fn nu_counting(m: u32, g: &Grid) -> Tally {
    let palg = Arc::new(PosetHopf::new(m));
    let qalg = Arc::new(QSymHopf::new(m));
    let posets = enumerate_canonical_upto(m, g.max_n);
    let zp = characters::zeta_p_tuple(&palg);
    let nus: Vec<_> = zp.chars().iter().map(|c| c.nu()).collect();
    let nu_all = characters::nu_product(&zp).expect("valid tuple");
    let nu_q = characters::nu_product(&characters::zeta_q_tuple(&qalg)).expect("valid tuple");
    let mut t = Tally::default();
    for p in &posets {
        for (j, nu) in nus.iter().enumerate() {
            let j = j as u32;
            t.check("nuP-j-counting", m, nu.eval_key(p) == characters::nu_p_count(j, p), || format!("j={j} {p:?}"));
        }
        t.check("nuP-counting", m, nu_all.eval_key(p) == characters::nu_p_full_count(p), || format!("{p:?}"));
        let via_q = characters::eval_qsym(&nu_q, &qsym::gamma(p));
        t.check("nuP-equals-nuQ-gamma", m, nu_all.eval_key(p) == via_q, || format!("{p:?}"));
    }
    t
}

fn dimension_counts(m: u32, g: &Grid) -> Tally {
    let mut t = Tally::default();
    for n in 1..=g.max_n as u32 {
        let comps = enumerate_compositions(m, n);
        let closed = BigUint::from(m) * BigUint::from(m + 1).pow(n - 1);
        t.check("qsym-dimension", m, BigUint::from(comps.len()) == closed && count_compositions(m, n) == closed, || format!("n={n}"));
        let peaks: Vec<_> = comps.iter().filter(|a| a.is_peak_composition()).collect();
        let expected = count_peak_compositions(m, n);
        t.check("peak-count", m, BigUint::from(peaks.len()) == expected, || format!("n={n}"));
        let rows: Vec<Linear<ColoredComposition>> = peaks.iter().map(|a| qsym::k_to_m_key(a)).collect();
        t.check("peak-rank", m, BigUint::from(rank(&rows)) == expected, || format!("n={n}"));
    }
    t
}

fn universality(m: u32, g: &Grid) -> Tally {
    let palg = Arc::new(PosetHopf::new(m));
    let psi = Psi::new(characters::zeta_p_tuple(&palg));
    let posets = enumerate_canonical_upto(m, g.max_n);
    let mut t = Tally::default();
    for p in &posets {
        let lhs = psi.apply_key(p);
        let rhs = qsym::gamma(p).to_m();
        t.check("psi-zetaP-equals-gamma", m, &lhs == rhs.terms(), || format!("{p:?}"));
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_suite_passes_on_a_small_grid() {
        let g = Grid { max_m: 2, max_n: 3, max_big_n: 2, seed: 1 };
        for s in SUITES {
            let r = run(s, &g).unwrap();
            assert!(r.passed, "{s}: {:?}", r.counterexamples);
            assert!(r.checks > 0, "{s}");
        }
    }

    #[test]
    fn unknown_suite_is_rejected() {
        let g = Grid::default_for("x");
        assert!(matches!(run("no-such-suite", &g), Err(Error::UnknownName(_))));
    }

    #[test]
    fn a_wrong_map_is_caught() {
        // P ↦ F_(|P|) is neither multiplicative nor comultiplicative
        fn one_part(p: &ColoredPoset) -> QSymElement {
            let a = ColoredComposition::from_pairs(p.m(), &if p.is_empty() { vec![] } else { vec![(p.len() as u32, 0)] }).unwrap();
            QSymElement::basis_element(Basis::F, &a).unwrap()
        }
        let t = morphism_suite(1, &Grid { max_m: 1, max_n: 3, max_big_n: 1, seed: 0 }, one_part, "bogus");
        assert!(t.failures > 0);
        assert!(t.examples.iter().any(|e| e.property == "bogus-product"));
        assert!(t.examples.iter().any(|e| e.property == "bogus-coproduct"));
    }

    #[test]
    fn random_relabelings_stay_equivalent() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for p in enumerate_canonical_upto(2, 4) {
            for _ in 0..3 {
                let q = random_relabel(&p, &mut rng);
                assert!(q.is_equivalent(&p), "{p:?} vs {q:?}");
            }
        }
    }

    #[test]
    fn counterexamples_are_capped() {
        let mut t = Tally::default();
        for i in 0..100 {
            t.check("p", 1, false, || i.to_string());
        }
        assert_eq!(t.failures, 100);
        assert_eq!(t.examples.len(), MAX_COUNTEREXAMPLES);
    }

    #[test]
    fn reports_serialize_with_sorted_fields() {
        let r = run("dimension-counts", &Grid { max_m: 1, max_n: 2, max_big_n: 1, seed: 0 }).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["passed"], true);
        assert_eq!(v["grid"]["max_N"], 1);
    }
}
