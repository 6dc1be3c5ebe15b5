//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use tripletorb_core::arith::{binom_t, falling};
use tripletorb_core::characters::{census, char_closed, char_decomposed, ModuleLabel};
use tripletorb_core::ct::{
    lambda_2p, morris_ct, morris_formula, s_trp, verify_conjecture_const, Verdict,
};
use tripletorb_core::jack::partition_sum;
use tripletorb_core::laurent::{Base, Exponent, ExtractOptions, Integrand, Target};
use tripletorb_core::qseries::{dtheta_resummation, theta};
use tripletorb_core::span::{
    closure_basis, exact_rank, expected_closure_rank, membership, CoeffMatrix,
};
use tripletorb_core::zhu::{degree_bookkeeping, verify_coprime, verify_h_relation_roots};
use tripletorb_core::{int, pochhammer, rat, BigRat, MultiSeries, QExpansion, TPoly, TauVector};

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        detail: detail.into(),
    }
}

fn within(t: Duration, secs: u64) -> bool {
    t < Duration::from_secs(secs)
}

fn criterion_1() -> Outcome {
    let opts = ExtractOptions::default();
    let mut notes = Vec::new();
    let mut ok = true;
    for (m, p) in [(1, 2), (1, 3), (2, 2)] {
        let start = Instant::now();
        let got = morris_ct(m, p, &opts);
        let t = start.elapsed();
        match got {
            Ok(v) => {
                let want = morris_formula(m, p);
                let good = v.value == want && v.value != int(0) && within(t, 300);
                ok &= good;
                notes.push(format!(
                    "(m,p)=({m},{p}) residue {} formula {want} in {t:.1?}",
                    v.value
                ));
            }
            Err(e) => {
                ok = false;
                notes.push(format!("(m,p)=({m},{p}) error {e}"));
            }
        }
    }
    outcome(ok, notes.join("; "))
}

fn criterion_2() -> Outcome {
    let opts = ExtractOptions::default();
    let mut notes = Vec::new();
    let mut ok = true;
    for p in [2u32, 3, 4] {
        let start = Instant::now();
        let got = s_trp(2, p, &opts);
        let t = start.elapsed();
        let want = binom_t(i64::from(p), 4 * i64::from(p) - 1).scale(&lambda_2p(p));
        let good = matches!(&got, Ok(v) if v.value == want) && within(t, 120);
        ok &= good;
        notes.push(format!(
            "p={p} lambda={} {} in {t:.1?}",
            lambda_2p(p),
            if good { "equal" } else { "unequal" }
        ));
    }
    outcome(ok, notes.join("; "))
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    match verify_conjecture_const(2, &ExtractOptions::default()) {
        Ok(r) => {
            let t = start.elapsed();
            let a = r
                .constants
                .iter()
                .find(|(k, _)| k == "A_p")
                .map(|(_, v)| v.clone());
            let ok = r.verdict == Verdict::Equal
                && a.as_ref().is_some_and(|a| *a != int(0))
                && within(t, 600);
            let a = a.map_or("none".to_string(), |a| a.to_string());
            outcome(
                ok,
                format!(
                    "A_2 = {a}, (1+z) and (1-z) forms agree, verdict {} in {t:.1?}",
                    r.verdict.as_str()
                ),
            )
        }
        Err(e) => outcome(false, format!("error {e}")),
    }
}

fn criterion_4() -> Outcome {
    let b = partition_sum(2);
    let s = s_trp(3, 2, &ExtractOptions::default());
    match (b, s) {
        (Ok(b), Ok(s)) => outcome(
            b == s.value,
            format!(
                "partition sum and direct residue agree on all {} coefficients",
                s.value.coeffs().len()
            ),
        ),
        (b, s) => outcome(false, format!("errors {:?} {:?}", b.err(), s.err())),
    }
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let n = int(50);
    let mut checked = 0;
    let mut bad = Vec::new();
    for (p, m) in [(2, 2), (2, 3), (3, 2)] {
        for label in ModuleLabel::all(p, m).unwrap() {
            let a = char_decomposed(&label, &n).unwrap();
            let b = char_closed(&label, &n).unwrap();
            checked += 1;
            if let Some(e) = a.first_difference(&b) {
                bad.push(format!("{label} at q^{e}"));
            }
        }
    }
    let t = start.elapsed();
    outcome(
        bad.is_empty() && within(t, 120),
        format!("{checked} labels to N=50 in {t:.1?}; mismatches {bad:?}"),
    )
}

fn criterion_6() -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    for (p, m) in [(2u32, 2u32), (2, 3), (3, 2), (3, 3)] {
        let c = census(p, m).unwrap();
        let good = c.labels == (2 * m * m * p) as usize
            && c.distinct_x == ((m * m + 1) * p) as usize
            && c.distinct_rows == c.labels
            && c.curve_ok;
        ok &= good;
        notes.push(format!(
            "(p,m)=({p},{m}) labels {} weights {} curve {}",
            c.labels, c.distinct_x, c.curve_ok
        ));
    }
    outcome(ok, notes.join("; "))
}

fn criterion_7() -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    for (p, m) in [(2u32, 2u32), (2, 3), (3, 2)] {
        let start = Instant::now();
        let want = expected_closure_rank(p, m);
        let ranks: Vec<usize> = [80, 120]
            .iter()
            .map(|&n| {
                exact_rank(
                    &CoeffMatrix::from_vectors(&closure_basis(p, m, &int(n)).unwrap()).unwrap(),
                )
            })
            .collect();
        let basis = closure_basis(p, m, &int(80)).unwrap();
        let labels = ModuleLabel::all(p, m).unwrap();
        let members = labels
            .iter()
            .filter(|l| {
                let ch = TauVector::plain(char_closed(l, &int(80)).unwrap());
                membership(&ch, &basis).unwrap().is_member()
            })
            .count();
        let t = start.elapsed();
        let good = ranks.iter().all(|&r| r == want) && members == labels.len() && within(t, 300);
        ok &= good;
        notes.push(format!(
            "(p,m)=({p},{m}) rank N=80/120 {}/{} expected {want}, members {members}/{} in {t:.1?}",
            ranks[0],
            ranks[1],
            labels.len()
        ));
    }
    outcome(ok, notes.join("; "))
}

fn criterion_8() -> Outcome {
    let n = int(50);
    let mut ok = true;
    let mut literal_mismatch = 0;
    let mut cases = 0;
    for p in [2u32, 3] {
        for m in [2u32, 3] {
            for s in 1..i64::from(p) {
                let (l, r) = dtheta_resummation(s, p, m, &n, false);
                ok &= l.agrees_with(&r);
                cases += 1;
                let (l, r) = dtheta_resummation(s, p, m, &n, true);
                literal_mismatch += usize::from(!l.agrees_with(&r));
            }
        }
    }
    outcome(
        ok,
        format!(
            "{cases} cases with summands dTheta_{{sm+2pmj,pm^2}}; the index sm+2pj fails in {literal_mismatch}/{cases}"
        ),
    )
}

fn criterion_9() -> Outcome {
    let coprime: Vec<bool> = (2..=5).map(|p| verify_coprime(p).unwrap()).collect();
    let (roots, s_ok) = verify_h_relation_roots().unwrap();
    let degrees: Vec<(usize, bool)> = (2..=5).map(|p| degree_bookkeeping(p).unwrap()).collect();
    let ok = coprime.iter().all(|&c| c) && roots.ok() && s_ok && degrees.iter().all(|d| d.1);
    outcome(
        ok,
        format!(
            "coprime {coprime:?}; eight roots reproduced {}; deg g_2p {:?}",
            roots.ok(),
            degrees.iter().map(|d| d.0).collect::<Vec<_>>()
        ),
    )
}

const CASES: u32 = 256;

fn run_property<S: Strategy>(
    name: &str,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> (String, bool) {
    let mut runner = TestRunner::new(Config {
        cases: CASES,
        failure_persistence: None,
        ..Config::default()
    });
    let res = runner.run(&strategy, test);
    let ok = res.is_ok();
    let msg = match res {
        Ok(()) => format!("{name}: {CASES} cases"),
        Err(e) => format!("{name}: {e}"),
    };
    (msg, ok)
}

fn margin_integrand(a0: i64, b: i64, c: i64, ew: i32) -> Integrand {
    let mut ig = Integrand::new(&["w", "z"]);
    ig.push(
        Base::Binomial {
            sign: 1,
            num: Some(1),
            den: None,
        },
        Exponent::with_t(a0, 1),
    );
    ig.push(
        Base::Binomial {
            sign: -1,
            num: Some(0),
            den: Some(1),
        },
        Exponent::int(-b),
    );
    ig.push(Base::Monomial(1), Exponent::int(-c));
    ig.set_target(0, Target::Coefficient(ew));
    ig.set_target(1, Target::RESIDUE);
    ig
}

fn criterion_10() -> Outcome {
    let small = || (-30i64..30, 1i64..9).prop_map(|(n, d)| rat(n, d));
    let mut results = Vec::new();
    results.push(run_property(
        "window doubling",
        (-5i64..8, 1i64..5, 0i64..5, 0i32..4),
        |(a0, b, c, ew)| {
            let ig = margin_integrand(a0, b, c, ew);
            let base = ig.extract(&ExtractOptions::default()).unwrap();
            let width = base
                .windows
                .iter()
                .map(|(_, w)| i64::from(w.hi - w.lo) + 1)
                .max()
                .unwrap_or(1);
            let doubled = ig
                .extract(&ExtractOptions {
                    margin: width,
                    ..Default::default()
                })
                .unwrap();
            prop_assert_eq!(base.scalar().unwrap(), doubled.scalar().unwrap());
            Ok(())
        },
    ));
    results.push(run_property(
        "residue linearity",
        (
            prop::collection::vec((-4i32..4, -9i64..9), 0..8),
            prop::collection::vec((-4i32..4, -9i64..9), 0..8),
            small(),
            small(),
        ),
        |(ta, tb, s, u)| {
            let w = [tripletorb_core::laurent::Window::new(-5, 5)];
            let mk = |t: &[(i32, i64)]| {
                MultiSeries::from_terms(
                    &["x"],
                    &w,
                    false,
                    t.iter().map(|&(e, c)| (vec![e], TPoly::constant(int(c)))),
                )
                .unwrap()
            };
            let (a, b) = (mk(&ta), mk(&tb));
            let (s, u) = (TPoly::constant(s), TPoly::constant(u));
            let lhs = a.scale(&s).add(&b.scale(&u)).unwrap().residue("x").unwrap();
            let rhs = a
                .residue("x")
                .unwrap()
                .scale(&s)
                .add(&b.residue("x").unwrap().scale(&u))
                .unwrap();
            prop_assert_eq!(lhs, rhs);
            Ok(())
        },
    ));
    results.push(run_property(
        "grain unification",
        (1u64..10, 1u64..10, -10i64..10, 1u32..6),
        |(g1, g2, l, k)| {
            let t = theta(l, k, &int(12));
            let mut extra = QExpansion::zero(g1 * g2, &int(12));
            extra.add_term(&rat(1, (g1 * g2) as i64), int(1)).unwrap();
            let (a, b) = t.unify(&extra);
            prop_assert_eq!(a.grain(), b.grain());
            prop_assert_eq!(a.add(&b).sub(&extra), t.refine(a.grain()).unwrap());
            prop_assert_eq!(a.coarsen(), t.coarsen());
            Ok(())
        },
    ));
    results.push(run_property(
        "pochhammer/binomial identities",
        (small(), 0u32..10),
        |(x, n)| {
            let rising = pochhammer(&x, n);
            prop_assert_eq!(
                rising.clone(),
                falling(&(&x + int(i64::from(n)) - int(1)), n)
            );
            let neg = falling(&(-&x), n);
            let sign = if n % 2 == 0 { int(1) } else { int(-1) };
            prop_assert_eq!(neg, sign * rising);
            Ok(())
        },
    ));
    results.push(run_property(
        "rank under row scaling",
        (
            prop::collection::vec(prop::collection::vec(-3i64..4, 5), 1..6),
            prop::collection::vec(small(), 6),
        ),
        |(rows, scales)| {
            let base: Vec<Vec<BigRat>> = rows
                .iter()
                .map(|r| r.iter().map(|&x| int(x)).collect())
                .collect();
            let scaled: Vec<Vec<BigRat>> = base
                .iter()
                .zip(&scales)
                .map(|(r, s)| {
                    let s = if *s == int(0) { int(1) } else { s.clone() };
                    r.iter().map(|x| x * &s).collect()
                })
                .collect();
            let r0 = exact_rank(&CoeffMatrix::from_rows(base).unwrap());
            let r1 = exact_rank(&CoeffMatrix::from_rows(scaled).unwrap());
            prop_assert_eq!(r0, r1);
            Ok(())
        },
    ));
    let ok = results.iter().all(|r| r.1);
    outcome(
        ok,
        results
            .into_iter()
            .map(|r| r.0)
            .collect::<Vec<_>>()
            .join("; "),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 10] = [
        ("Morris constant term", criterion_1),
        ("S(t,2,p) closed form", criterion_2),
        ("S(t,3,2) divisibility and A_2", criterion_3),
        ("partition-sum oracle", criterion_4),
        ("character decompositions", criterion_5),
        ("module census", criterion_6),
        ("modular closure", criterion_7),
        ("dTheta resummation", criterion_8),
        ("Zhu data", criterion_9),
        ("property suites", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = f();
        let verdict = if o.ok { "PASS" } else { "FAIL" };
        failed += usize::from(!o.ok);
        println!(
            "criterion {:>2} {verdict} {name} ({:.1?}): {}",
            i + 1,
            start.elapsed(),
            o.detail
        );
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all 10 criteria passed");
}
