//! Acceptance run: one PASS/FAIL line per criterion, with wall time.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use cqsym::combinat::{count_peak_compositions, enumerate_compositions, Cycloribbon};
use cqsym::linear::{rank, rat, Linear};
use cqsym::qsym::{self, Basis, QSymElement};
use cqsym::verify::{self, Grid};
use cqsym::{ColoredComposition, ColoredPoset};
use num_bigint::BigUint;

type Outcome = Result<String, String>;

fn c(m: u32, pairs: &[(u32, u32)]) -> ColoredComposition {
    ColoredComposition::from_pairs(m, pairs).expect("valid composition")
}

fn m_terms(m: u32, terms: &[(i64, &[(u32, u32)])]) -> Linear<ColoredComposition> {
    terms.iter().map(|(k, a)| (c(m, a), rat(*k))).collect()
}

fn ensure(ok: bool, what: &str) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what.to_string())
    }
}

/// Independent recurrence for the peak dimensions.
fn f_mn(m: u64, n: u32) -> u64 {
    let (mut a, mut b) = (m, m * m);
    match n {
        1 => a,
        2 => b,
        _ => {
            for _ in 3..=n {
                (a, b) = (b, m * b + a);
            }
            b
        }
    }
}

fn dimension_tables() -> Outcome {
    let published: [(u32, [u64; 5], [u64; 5]); 2] =
        [(1, [1, 2, 4, 8, 16], [1, 1, 2, 3, 5]), (2, [2, 6, 18, 54, 162], [2, 4, 10, 24, 58])];
    for (m, q, p) in published {
        for n in 1..=5u32 {
            ensure(enumerate_compositions(m, n).len() as u64 == q[n as usize - 1], &format!("QSym row m={m} n={n}"))?;
            ensure(f_mn(m as u64, n) == p[n as usize - 1], &format!("peak row m={m} n={n}"))?;
        }
    }
    for m in 1..=3u32 {
        for n in 1..=5u32 {
            let comps = enumerate_compositions(m, n);
            let closed = m as u64 * (m as u64 + 1).pow(n - 1);
            ensure(comps.len() as u64 == closed, &format!("compositions m={m} n={n}"))?;
            let f = f_mn(m as u64, n);
            ensure(count_peak_compositions(m, n) == BigUint::from(f), &format!("recurrence m={m} n={n}"))?;
            let rows: Vec<_> = comps.iter().filter(|a| a.is_peak_composition()).map(qsym::k_to_m_key).collect();
            ensure(rows.len() as u64 == f && rank(&rows) as u64 == f, &format!("rank m={m} n={n}"))?;
        }
    }
    Ok("m ≤ 3, n ≤ 5".into())
}

fn golden_examples() -> Outcome {
    let f = |a: ColoredComposition| QSymElement::basis_element(Basis::F, &a).expect("F key");
    ensure(
        f(c(1, &[(2, 0), (1, 0)])).to_m().terms() == &m_terms(1, &[(1, &[(2, 0), (1, 0)]), (1, &[(1, 0), (1, 0), (1, 0)])]),
        "F_21",
    )?;
    ensure(
        f(c(2, &[(1, 0), (2, 1), (1, 1)])).to_m().terms()
            == &m_terms(2, &[(1, &[(1, 0), (2, 1), (1, 1)]), (1, &[(1, 0), (1, 1), (1, 1), (1, 1)])]),
        "two-colored F expansion",
    )?;
    ensure(
        f(c(3, &[(2, 0), (1, 2), (2, 1)])).to_m().terms()
            == &m_terms(
                3,
                &[
                    (1, &[(2, 0), (1, 2), (2, 1)]),
                    (1, &[(1, 0), (1, 0), (1, 2), (2, 1)]),
                    (1, &[(2, 0), (1, 2), (1, 1), (1, 1)]),
                    (1, &[(1, 0), (1, 0), (1, 2), (1, 1), (1, 1)]),
                ],
            ),
        "three-colored F expansion",
    )?;
    let x = QSymElement::basis_element(Basis::M, &c(2, &[(2, 1), (1, 0)])).expect("M key");
    let want: Linear<(ColoredComposition, ColoredComposition)> = [
        ((c(2, &[(2, 1), (1, 0)]), c(2, &[])), rat(1)),
        ((c(2, &[(2, 1)]), c(2, &[(1, 0)])), rat(1)),
        ((c(2, &[]), c(2, &[(2, 1), (1, 0)])), rat(1)),
    ]
    .into_iter()
    .collect();
    ensure(qsym::coproduct(&x).map_err(|e| e.to_string())?.terms == want, "coproduct of M")?;
    ensure(
        qsym::k_to_m(&c(2, &[(2, 0), (1, 0), (1, 1)])).terms()
            == &m_terms(2, &[(8, &[(2, 0), (1, 0), (1, 1)]), (8, &[(1, 0), (2, 0), (1, 1)]), (16, &[(1, 0), (1, 0), (1, 0), (1, 1)])]),
        "colored K expansion",
    )?;
    ensure(
        c(1, &[(3, 0), (1, 0), (1, 0), (3, 0), (2, 0), (1, 0), (1, 0), (1, 0)]).hat() == c(1, &[(3, 0), (5, 0), (2, 0), (3, 0)]),
        "uncolored hat",
    )?;
    ensure(
        c(2, &[(3, 0), (1, 0), (1, 1), (3, 1), (2, 0), (1, 1), (1, 1), (1, 0)]).hat()
            == c(2, &[(3, 0), (1, 0), (4, 1), (2, 0), (2, 1), (1, 0)]),
        "colored hat",
    )?;
    let alpha = c(3, &[(1, 0), (1, 2), (2, 1), (3, 1), (1, 2), (2, 2), (4, 0)]);
    let conj = c(
        3,
        &[(1, 0), (1, 0), (1, 0), (1, 0), (1, 2), (2, 2), (1, 1), (1, 1), (2, 1), (1, 1), (1, 2), (1, 0)],
    );
    ensure(alpha.conjugate() == conj && conj.conjugate() == alpha, "conjugate pair")?;
    ensure(Cycloribbon::from_composition(&alpha).transpose().to_composition() == conj, "cycloribbon transpose")?;

    let six = ColoredPoset::new(
        3,
        &[(1, 1), (5, 1), (6, 0), (2, 1), (4, 2), (3, 0)],
        &[(5, 1), (1, 6), (5, 4), (4, 6), (3, 4), (6, 2)],
    )
    .map_err(|e| e.to_string())?;
    let relabel = |v: u32| match v {
        1 => 3,
        5 => 8,
        6 => 9,
        2 => 4,
        4 => 6,
        _ => 5,
    };
    let image = six
        .with_values(&six.elements().iter().map(|l| relabel(l.value)).collect::<Vec<_>>())
        .map_err(|e| e.to_string())?;
    ensure(six.is_equivalent(&image), "equivalent pair")?;
    let a = ColoredPoset::new(2, &[(1, 0), (2, 0), (3, 0)], &[(2, 1), (2, 3)]).map_err(|e| e.to_string())?;
    let b = ColoredPoset::new(2, &[(1, 0), (2, 0), (3, 1)], &[(2, 1), (2, 3)]).map_err(|e| e.to_string())?;
    ensure(!a.is_equivalent(&b), "inequivalent pair")?;

    let p = ColoredPoset::new(1, &[(1, 0), (4, 0), (5, 0)], &[(5, 1), (5, 4)]).map_err(|e| e.to_string())?;
    let ext: BTreeSet<Vec<u32>> =
        p.linear_extensions().iter().map(|w| w.letters().iter().map(|l| l.value).collect()).collect();
    ensure(ext == BTreeSet::from([vec![5, 4, 1], vec![5, 1, 4]]), "linear extensions")?;
    let q = ColoredPoset::new(1, &[(1, 0), (2, 0), (3, 0), (4, 0)], &[(1, 4), (3, 4), (4, 2)]).map_err(|e| e.to_string())?;
    let ideals: BTreeSet<Vec<u32>> =
        q.ideals().iter().map(|i| i.elements().iter().map(|l| l.value).collect()).collect();
    let want = BTreeSet::from([vec![], vec![1], vec![3], vec![1, 3], vec![1, 3, 4], vec![1, 2, 3, 4]]);
    ensure(ideals == want, "order ideals")?;
    Ok("all examples exact".into())
}

fn suites(names: &[&str], grid: Grid) -> Outcome {
    let mut checks = 0;
    for name in names {
        let report = verify::run(name, &grid).map_err(|e| e.to_string())?;
        if !report.passed {
            return Err(format!("{name}: {} failures, first {:?}", report.failures, report.counterexamples.first()));
        }
        checks += report.checks;
    }
    Ok(format!("{} ({checks} checks, m ≤ {}, n ≤ {})", names.join(", "), grid.max_m, grid.max_n))
}

fn grid(max_m: u32, max_n: usize, max_big_n: u32) -> Grid {
    Grid { max_m, max_n, max_big_n, seed: 7 }
}

fn main() -> ExitCode {
    type Criterion = (u32, &'static str, Option<u64>, Box<dyn Fn() -> Outcome>);
    let criteria: Vec<Criterion> = vec![
        (1, "dimension tables", Some(10), Box::new(dimension_tables)),
        (2, "golden examples", Some(1), Box::new(golden_examples)),
        (3, "Hopf axioms", Some(60), Box::new(|| suites(&["hopf-axioms"], grid(2, 5, 1)))),
        (
            4,
            "morphisms",
            Some(60),
            Box::new(|| suites(&["gamma-morphism", "lambda-morphism", "theta-morphism"], grid(2, 5, 1))),
        ),
        (5, "oracle differential", Some(120), Box::new(|| suites(&["oracle-equivalence"], grid(2, 4, 3)))),
        (6, "antipode formulas", None, Box::new(|| suites(&["antipode-consistency"], grid(2, 4, 1)))),
        (7, "characters", None, Box::new(|| suites(&["character-group", "nu-counting"], grid(2, 4, 1)))),
        (8, "universality", None, Box::new(|| suites(&["universality"], grid(2, 4, 1)))),
    ];
    let mut all = true;
    for (id, name, limit, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let in_time = limit.is_none_or(|s| took < Duration::from_secs(s));
        let ok = outcome.is_ok() && in_time;
        all &= ok;
        let limit_text = limit.map_or(String::new(), |s| format!(", limit {s}s"));
        let detail = match &outcome {
            Ok(d) => d.clone(),
            Err(e) => e.clone(),
        };
        println!(
            "{} criterion {id} {name}: {detail} [{:.2}s{limit_text}]",
            if ok { "PASS" } else { "FAIL" },
            took.as_secs_f64()
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
