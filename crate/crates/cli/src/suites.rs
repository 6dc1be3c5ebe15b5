use std::time::{Duration, Instant};

use rayon::prelude::*;
use tripletorb_core::characters::{
    census, char_closed, char_closed_literal, char_decomposed, char_decomposed_with,
    m2_table_consistent, vacuum_closed, vacuum_displayed, vacuum_from_fixed_multiplicities, Module,
    ModuleLabel, PiMReading,
};
use tripletorb_core::ct::{
    c_mp_ratio, g_coefficient_one_minus_p, g_lowest_coefficient, lambda_2p, morris_ct,
    morris_formula, s_trp, verify_conjecture_const, verify_strp_shapes, CtValue, Verdict,
};
use tripletorb_core::jack::{
    alpha_coeff, alpha_two_row, alpha_two_row_literal, cauchy_check, kadell_ct,
    kadell_ct_factorial, kadell_ct_literal, kadell_direct_ct, partition_sum, Partition,
};
use tripletorb_core::laurent::{Budget, ExtractOptions};
use tripletorb_core::qseries::{dtheta_resummation, theta};
use tripletorb_core::span::{
    closure_basis, exact_rank, expected_closure_rank, membership, CoeffMatrix, Membership,
};
use tripletorb_core::zhu::{
    build_ell, build_h, degree_bookkeeping, g2p_root_profile, h_roots_in_m2_table,
    verify_commutator_roots, verify_coprime, verify_h_relation_roots, verify_reduced_relation,
};
use tripletorb_core::{arith::binom_t, frac_string, int, BigRat, Error as CoreError, TauVector};

use crate::report::{Check, Observation, Report, Status};
use crate::{CliError, RunConfig, Suite};

type CoreResult<T> = Result<T, CoreError>;
type JobFn = Box<dyn Fn(&ExtractOptions, Check) -> CoreResult<Check> + Send + Sync>;

struct Job {
    base: Check,
    run: JobFn,
}

fn job(
    base: Check,
    run: impl Fn(&ExtractOptions, Check) -> CoreResult<Check> + Send + Sync + 'static,
) -> Job {
    Job {
        base,
        run: Box::new(run),
    }
}

#[derive(Default)]
struct Plan {
    jobs: Vec<Job>,
    observations: Vec<Box<dyn Fn() -> CoreResult<Vec<Observation>> + Send + Sync>>,
    skipped: Vec<String>,
}

impl Plan {
    fn observe(&mut self, f: impl Fn() -> CoreResult<Vec<Observation>> + Send + Sync + 'static) {
        self.observations.push(Box::new(f));
    }

    fn extend(&mut self, other: Plan) {
        self.jobs.extend(other.jobs);
        self.observations.extend(other.observations);
        self.skipped.extend(other.skipped);
    }
}

fn obs(name: &str, detail: impl Into<String>) -> Observation {
    Observation {
        name: name.to_string(),
        detail: detail.into(),
    }
}

fn windows_of(ws: &[(String, tripletorb_core::laurent::Window)]) -> Vec<String> {
    ws.iter().map(|(v, w)| format!("{v}: {w}")).collect()
}

fn ct_plan(cfg: &RunConfig) -> Plan {
    let p = cfg.p.unwrap_or(2);
    let r = cfg.r.unwrap_or(3);
    let ms: Vec<u32> = match cfg.m {
        Some(m) => vec![m],
        None if p == 2 => vec![1, 2],
        None => vec![1],
    };
    let mut plan = Plan::default();
    for &m in &ms {
        plan.jobs.push(job(
            Check::new("morris-ct", "the Morris constant term identity")
                .param("m", m)
                .param("p", p),
            move |o, mut c: Check| {
                let start = Instant::now();
                let got = morris_ct(m, p, o)?;
                let want = morris_formula(m, p);
                c.value("residue", frac_string(&got.value));
                c.value("product_formula", frac_string(&want));
                c.value("peak_terms", got.peak_terms);
                c.windows = windows_of(&got.windows);
                c.pass_if(got.value == want && got.value != int(0));
                c.wall_ms = start.elapsed().as_millis() as u64;
                Ok(c)
            },
        ));
        plan.jobs.push(job(
            Check::new("c-mp-normalization", "C_{m,p} equals the Morris product")
                .param("m", m)
                .param("p", p),
            move |_, mut c: Check| {
                let ratio = c_mp_ratio(m, p);
                c.value("ratio", frac_string(&ratio));
                c.pass_if(ratio == int(1));
                Ok(c)
            },
        ));
        plan.jobs.push(job(
            Check::new(
                "g-lowest-coefficient",
                "lowest coefficient of g(x_0) is nonzero",
            )
            .param("m", m)
            .param("p", p),
            move |o, mut c: Check| {
                let start = Instant::now();
                let (e, v) = g_lowest_coefficient(m, p, o)?;
                c.value("exponent", e);
                c.value("coefficient", frac_string(&v));
                c.pass_if(
                    v == morris_formula(m, p)
                        && v != int(0)
                        && e == -2 * (m as i32) * (p as i32 - 1),
                );
                c.wall_ms = start.elapsed().as_millis() as u64;
                Ok(c)
            },
        ));
        plan.observe(move || {
            let o = ExtractOptions::default();
            let v = g_coefficient_one_minus_p(m, p, &o)?;
            Ok(vec![obs(
                "g-coefficient-x0^(1-p)",
                format!(
                    "m={m} p={p}: coefficient {} vs Morris value {}",
                    frac_string(&v),
                    frac_string(&morris_formula(m, p))
                ),
            )])
        });
    }
    plan.jobs.push(job(
        Check::new("strp-r2", "S(t,2,p) = lambda_{2,p} binom(t+p,4p-1)").param("p", p),
        move |o, mut c: Check| {
            let start = Instant::now();
            let got = s_trp(2, p, o)?;
            let want = binom_t(i64::from(p), 4 * i64::from(p) - 1).scale(&lambda_2p(p));
            c.value("lambda_2p", frac_string(&lambda_2p(p)));
            c.value("s_trp", &got.value);
            c.windows = windows_of(&got.windows);
            c.pass_if(got.value == want);
            c.wall_ms = start.elapsed().as_millis() as u64;
            Ok(c)
        },
    ));
    if r == 3 {
        if p == 2 || cfg.long {
            plan.jobs.push(job(
                Check::new(
                    "conjecture-const",
                    "A_p binom(t+2p,4p-1) binom(t,4p-1), A_p != 0",
                )
                .param("p", p)
                .param("r", 3),
                move |o, mut c: Check| {
                    let rep = verify_conjecture_const(p, o)?;
                    for (k, v) in &rep.constants {
                        c.value(k, frac_string(v));
                    }
                    if let CtValue::Poly(s) = &rep.computed {
                        c.value("s_trp", s);
                    }
                    c.value("verdict", rep.verdict.as_str());
                    c.windows = windows_of(&rep.windows);
                    c.pass_if(rep.verdict == Verdict::Equal);
                    c.wall_ms = rep.wall_time.as_millis() as u64;
                    Ok(c)
                },
            ));
        } else {
            plan.skipped
                .push(format!("conjecture-const p={p} (needs --long)"));
        }
    } else if cfg.long {
        plan.jobs.push(job(
            Check::new("strp-shapes", "S(t,r,p) = lambda binom products")
                .param("p", p)
                .param("r", r),
            move |o, mut c: Check| {
                let rep = verify_strp_shapes(r, p, o)?;
                for (k, v) in &rep.constants {
                    c.value(k, frac_string(v));
                }
                c.value("verdict", rep.verdict.as_str());
                c.windows = windows_of(&rep.windows);
                c.pass_if(rep.verdict == Verdict::Equal);
                c.wall_ms = rep.wall_time.as_millis() as u64;
                Ok(c)
            },
        ));
    } else {
        plan.skipped
            .push(format!("strp-shapes r={r} p={p} (needs --long)"));
    }
    plan
}

fn jack_plan(cfg: &RunConfig) -> Plan {
    let p = cfg.p.unwrap_or(2);
    let mut plan = Plan::default();
    if p <= 3 || cfg.long {
        plan.jobs.push(job(
            Check::new("partition-sum", "partition sum equals S(t,3,p)").param("p", p),
            move |o, mut c: Check| {
                let start = Instant::now();
                let b = partition_sum(p)?;
                let s = s_trp(3, p, o)?;
                c.value("degree", s.value.degree().map_or(-1, |d| d as i64));
                c.value("sum", &b);
                c.pass_if(b == s.value);
                c.wall_ms = start.elapsed().as_millis() as u64;
                Ok(c)
            },
        ));
    } else {
        plan.skipped
            .push(format!("partition-sum p={p} (needs --long)"));
    }
    plan.jobs.push(job(
        Check::new("kadell-forms", "factorial and binomial Kadell forms agree").param("p", p),
        move |_, mut c: Check| {
            let mut n = 0;
            let mut ok = true;
            for l1 in 0..2 * p {
                for l2 in 0..=l1 {
                    ok &= kadell_ct(l1, l2, p)? == kadell_ct_factorial(l1, l2, p)?;
                    n += 1;
                }
            }
            c.value("pairs", n);
            c.pass_if(ok);
            Ok(c)
        },
    ));
    plan.jobs.push(job(
        Check::new(
            "alpha-closed-form",
            "alpha^p_{l1,l2} equals the hook product",
        )
        .param("p", p),
        move |_, mut c: Check| {
            let mut ok = true;
            for l1 in 0..2 * p {
                for l2 in 0..=l1 {
                    ok &= alpha_two_row(l1, l2, p)? == alpha_coeff(&Partition::two_row(l1, l2)?, p);
                }
            }
            c.pass_if(ok);
            Ok(c)
        },
    ));
    if p == 2 || cfg.long {
        plan.jobs.push(job(
            Check::new("kadell-direct", "Kadell constant term by direct extraction").param("p", p),
            move |o, mut c: Check| {
                let start = Instant::now();
                let mut ok = true;
                for (l1, l2) in [(0, 0), (1, 0), (2, 1), (3, 3)] {
                    let lam = Partition::two_row(l1, l2)?;
                    let direct = kadell_direct_ct(&lam, p, o)?;
                    let closed = kadell_ct(l1, l2, p)?;
                    c.value(
                        &format!("lambda={lam}"),
                        if direct == closed { "equal" } else { "unequal" },
                    );
                    ok &= direct == closed;
                }
                c.pass_if(ok);
                c.wall_ms = start.elapsed().as_millis() as u64;
                Ok(c)
            },
        ));
    }
    for (n, k) in [(2usize, 1u32), (2, 2), (3, 2)] {
        plan.jobs.push(job(
            Check::new("cauchy", "Cauchy kernel expansion in Jack polynomials")
                .param("n", n)
                .param("k", k)
                .param("degree", 4),
            move |_, mut c: Check| {
                let bad = cauchy_check(n, k, 4)?;
                if let Some(e) = &bad {
                    c.value("first_mismatch", format!("{e:?}"));
                }
                c.pass_if(bad.is_none());
                Ok(c)
            },
        ));
    }
    plan.observe(move || {
        let mut out = Vec::new();
        let undefined: Vec<String> = (0..2 * p)
            .flat_map(|l1| (0..=l1).map(move |l2| (l1, l2)))
            .filter(|&(l1, l2)| matches!(alpha_two_row_literal(l1, l2, p), Ok(None)))
            .map(|(l1, l2)| format!("({l1},{l2})"))
            .collect();
        out.push(obs(
            "alpha-literal-f",
            format!(
                "p={p}: the descending f vanishes, leaving alpha undefined, at {}",
                undefined.join(" ")
            ),
        ));
        if p == 2 {
            let lit = kadell_ct_literal(0, 0, p)?;
            let asc = kadell_ct(0, 0, p)?;
            if let Some(q) = tripletorb_core::ct::constant_quotient(&lit, &asc) {
                out.push(obs(
                    "kadell-literal-f",
                    format!(
                        "p=2, lambda=0: descending f gives {} times the direct constant term",
                        frac_string(&q)
                    ),
                ));
            }
        }
        Ok(out)
    });
    plan
}

fn label_check(label: ModuleLabel, n: BigRat) -> Job {
    job(
        Check::new(
            "char-decomposition",
            "decomposition equals the theta closed form",
        )
        .param("label", label)
        .param("N", frac_string(&n)),
        move |_, mut c: Check| {
            let a = char_decomposed(&label, &n)?;
            let b = char_closed(&label, &n)?;
            c.value("terms", a.len());
            if let Some(e) = a.first_difference(&b) {
                c.value("first_difference", frac_string(&e));
            }
            c.pass_if(a.agrees_with(&b));
            Ok(c)
        },
    )
}

fn chars_plan(cfg: &RunConfig) -> Result<Plan, CliError> {
    let p = cfg.p.unwrap_or(2);
    let m = cfg.m.unwrap_or(2);
    let n = int(i64::from(cfg.order.unwrap_or(50)));
    let mut plan = Plan::default();
    for label in ModuleLabel::all(p, m)? {
        plan.jobs.push(label_check(label, n.clone()));
    }
    plan.jobs.push(job(
        Check::new("census", "contain 2m^2p non-isomorphic irreducible")
            .param("p", p)
            .param("m", m),
        move |_, mut c: Check| {
            let cs = census(p, m)?;
            c.value("labels", cs.labels);
            c.value("distinct_weights", cs.distinct_x);
            c.value("distinct_lowest_weights", cs.distinct_rows);
            c.value("curve_relation", cs.curve_ok);
            c.pass_if(
                cs.labels == (2 * m * m * p) as usize
                    && cs.distinct_x == ((m * m + 1) * p) as usize
                    && cs.distinct_rows == cs.labels
                    && cs.curve_ok,
            );
            Ok(c)
        },
    ));
    let nv = n.clone();
    plan.jobs.push(job(
        Check::new(
            "vacuum",
            "fixed-point multiplicities give the vacuum character",
        )
        .param("p", p)
        .param("m", m),
        move |_, mut c: Check| {
            let fixed = vacuum_from_fixed_multiplicities(p, m, &nv)?;
            let dec = char_decomposed(&ModuleLabel::new(p, m, Module::Lambda0 { i: 1 })?, &nv)?;
            let disp = vacuum_displayed(p, m, &nv)?;
            let closed = vacuum_closed(p, m, &nv);
            c.pass_if(
                fixed.agrees_with(&dec) && fixed.agrees_with(&disp) && fixed.agrees_with(&closed),
            );
            Ok(c)
        },
    ));
    if m == 2 {
        plan.jobs.push(job(
            Check::new("m2-table", "construction 8p irreducible modules").param("p", p),
            move |_, mut c: Check| {
                c.pass_if(m2_table_consistent(p)?);
                Ok(c)
            },
        ));
    }
    let no = n.clone();
    plan.observe(move || {
        let mut out = Vec::new();
        let cs = census(p, m)?;
        out.push(obs(
            "literal-weight-set",
            format!(
                "p={p} m={m}: literal S_m has {} elements, census has {}",
                cs.literal_set_size, cs.distinct_x
            ),
        ));
        for label in ModuleLabel::all(p, m)? {
            match label.module {
                Module::LambdaM { .. } | Module::PiM { .. } => {
                    if let Some(lit) = char_closed_literal(&label, &no)? {
                        let dec = char_decomposed(&label, &no)?;
                        out.push(obs(
                            "literal-closed-form",
                            format!(
                                "{label}: literal closed form matches decomposition: {}",
                                lit.agrees_with(&dec)
                            ),
                        ));
                    }
                    if let Module::PiM { .. } = label.module {
                        let closed = char_closed(&label, &no)?;
                        for reading in [
                            PiMReading::LiteralFirstIndexI,
                            PiMReading::LiteralFirstIndexPPlusI,
                        ] {
                            let d = char_decomposed_with(&label, &no, reading)?;
                            out.push(obs(
                                "literal-pi-decomposition",
                                format!(
                                    "{label} {reading:?}: matches closed form: {}",
                                    d.agrees_with(&closed)
                                ),
                            ));
                        }
                    }
                }
                _ => {}
            }
        }
        Ok(out)
    });
    Ok(plan)
}

fn closure_plan(cfg: &RunConfig) -> Result<Plan, CliError> {
    let p = cfg.p.unwrap_or(2);
    let m = cfg.m.unwrap_or(2);
    let order = cfg.order.unwrap_or(80);
    let mut plan = Plan::default();
    plan.jobs.push(job(
        Check::new("closure-rank", "m^2p+2p-1-dimensional")
            .param("p", p)
            .param("m", m),
        move |_, mut c: Check| {
            let want = expected_closure_rank(p, m);
            let n1 = int(i64::from(order));
            let n2 = int(i64::from(order) + 40);
            let b1 = closure_basis(p, m, &n1)?;
            let r1 = exact_rank(&CoeffMatrix::from_vectors(&b1)?);
            let r2 = exact_rank(&CoeffMatrix::from_vectors(&closure_basis(p, m, &n2)?)?);
            let k = (p * m * m) as usize;
            let theta_rank = exact_rank(&CoeffMatrix::from_vectors(&b1[..=k])?);
            let tau_rows = b1.iter().filter(|v| !v.b.is_zero()).count();
            c.value("basis_size", b1.len());
            c.value(&format!("rank_N{order}"), r1);
            c.value(&format!("rank_N{}", order + 40), r2);
            c.value("expected", want);
            c.value("theta_rank", theta_rank);
            c.value("tau_rows", tau_rows);
            c.pass_if(
                r1 == want && r2 == want && theta_rank == k + 1 && tau_rows == p as usize - 1,
            );
            Ok(c)
        },
    ));
    let n = int(i64::from(order));
    for label in ModuleLabel::all(p, m)? {
        let n = n.clone();
        plan.jobs.push(job(
            Check::new(
                "membership",
                "it lies in the span of irreducible characters (to order N)",
            )
            .param("label", label)
            .param("N", frac_string(&n)),
            move |_, mut c: Check| {
                let basis = closure_basis(p, m, &n)?;
                let ch = TauVector::plain(char_closed(&label, &n)?);
                let res = membership(&ch, &basis)?;
                match &res {
                    Membership::Member { coords } => {
                        for (i, x) in coords.iter().enumerate() {
                            if *x != int(0) {
                                c.value(&format!("coord[{i:02}]"), frac_string(x));
                            }
                        }
                    }
                    Membership::NotMember { part, exponent } => {
                        c.value(
                            "inconsistent_at",
                            format!("{part:?} q^{}", frac_string(exponent)),
                        );
                    }
                }
                c.pass_if(res.is_member());
                Ok(c)
            },
        ));
    }
    plan.jobs.push(job(
        Check::new(
            "theta-in-character-span",
            "Theta_{im,pm^2} in the span of characters",
        )
        .param("p", p)
        .param("m", m),
        move |_, mut c: Check| {
            let n = int(i64::from(order));
            let chars: Vec<TauVector> = ModuleLabel::all(p, m)?
                .iter()
                .filter(|l| l.family() != "R")
                .map(|l| char_closed(l, &n).map(TauVector::plain))
                .collect::<CoreResult<_>>()?;
            let mut ok = true;
            for i in 0..=i64::from(p) {
                let th = TauVector::plain(theta(i * i64::from(m), p * m * m, &n));
                let member = membership(&th, &chars)?.is_member();
                c.value(&format!("i={i}"), member);
                ok &= member;
            }
            c.pass_if(ok);
            Ok(c)
        },
    ));
    plan.jobs.push(job(
        Check::new(
            "dtheta-resummation",
            "(1/m) sum_j dTheta_{sm+2pmj,pm^2} = dTheta_{s,p}",
        )
        .param("p", p)
        .param("m", m),
        move |_, mut c: Check| {
            let n = int(i64::from(order.min(50)));
            let mut ok = true;
            for s in 1..i64::from(p) {
                let (l, r) = dtheta_resummation(s, p, m, &n, false);
                ok &= l.agrees_with(&r);
            }
            c.pass_if(ok);
            Ok(c)
        },
    ));
    plan.observe(move || {
        let n = int(50);
        let bad: Vec<String> = (1..i64::from(p))
            .filter(|&s| {
                let (l, r) = dtheta_resummation(s, p, m, &n, true);
                !l.agrees_with(&r)
            })
            .map(|s| s.to_string())
            .collect();
        Ok(vec![obs(
            "dtheta-literal-index",
            format!(
                "p={p} m={m}: summands dTheta_{{sm+2pj,pm^2}} fail for s in [{}]",
                bad.join(",")
            ),
        )])
    });
    Ok(plan)
}

fn zhu_plan(cfg: &RunConfig) -> Plan {
    let ps: Vec<u32> = cfg.p.map_or_else(|| (2..=5).collect(), |p| vec![p]);
    let mut plan = Plan::default();
    for p in ps {
        if (2..=5).contains(&p) {
            plan.jobs.push(job(
                Check::new("zhu-coprime", "They are relatively prime.").param("p", p),
                move |_, mut c: Check| {
                    c.pass_if(verify_coprime(p)?);
                    Ok(c)
                },
            ));
        } else {
            plan.skipped
                .push(format!("zhu-coprime p={p} (no table row)"));
        }
        plan.jobs.push(job(
            Check::new("zhu-degrees", "is 12p-1").param("p", p),
            move |_, mut c: Check| {
                let (d, ok) = degree_bookkeeping(p)?;
                let ell = build_ell(p)?.degree();
                let h = build_h(p)?.degree();
                c.value("deg_g2p", d);
                c.value("deg_ell", ell.unwrap_or(0));
                c.value("deg_h", h.unwrap_or(0));
                c.value("dimension", 2 * d + 1);
                c.pass_if(ok && ell == Some(p as usize) && h == Some(4 * p as usize));
                Ok(c)
            },
        ));
        plan.jobs.push(job(
            Check::new("zhu-h-roots", "roots of h(x) are m=2 lowest weights").param("p", p),
            move |_, mut c: Check| {
                c.pass_if(h_roots_in_m2_table(p)?);
                Ok(c)
            },
        ));
        plan.observe(move || {
            let prof = g2p_root_profile(p)?;
            let rep: Vec<String> = prof.repeated.iter().map(frac_string).collect();
            Ok(vec![obs(
                "g2p-roots",
                format!(
                    "p={p}: degree {}, {} distinct roots, double roots [{}]",
                    prof.degree,
                    prof.distinct,
                    rep.join(", ")
                ),
            )])
        });
        if p == 2 {
            plan.jobs.push(job(
                Check::new("zhu-h-relation", "(17 [omega] + 28) = 0").param("p", 2),
                |_, mut c: Check| {
                    let (roots, s_ok) = verify_h_relation_roots()?;
                    c.value(
                        "missing",
                        roots
                            .missing
                            .iter()
                            .map(frac_string)
                            .collect::<Vec<_>>()
                            .join(" "),
                    );
                    c.value(
                        "extra",
                        roots
                            .extra
                            .iter()
                            .map(frac_string)
                            .collect::<Vec<_>>()
                            .join(" "),
                    );
                    c.value("s_factor_matches", s_ok);
                    c.pass_if(roots.ok() && s_ok);
                    Ok(c)
                },
            ));
            plan.jobs.push(job(
                Check::new("zhu-reduced-relation", "relation with the s factor removed")
                    .param("p", 2),
                |_, mut c: Check| {
                    let r = verify_reduced_relation()?;
                    c.value("degree", r.degree);
                    c.value("r_at_s_root", frac_string(&r.r_at_s_root));
                    c.value("coprime", r.coprime);
                    c.pass_if(
                        r.roots_match && r.coprime && r.r_at_s_root != int(0) && r.degree == 8,
                    );
                    Ok(c)
                },
            ));
            plan.observe(|| {
                let c = verify_commutator_roots()?;
                Ok(vec![obs(
                    "commutator-relation-roots",
                    format!(
                        "tabulated list misses [{}], has extra [{}]",
                        c.missing
                            .iter()
                            .map(frac_string)
                            .collect::<Vec<_>>()
                            .join(", "),
                        c.extra
                            .iter()
                            .map(frac_string)
                            .collect::<Vec<_>>()
                            .join(", ")
                    ),
                )])
            });
        }
    }
    plan
}

fn plan_for(cfg: &RunConfig) -> Result<Plan, CliError> {
    let mut plan = match cfg.suite {
        Suite::Ct => ct_plan(cfg),
        Suite::Jack => jack_plan(cfg),
        Suite::Chars => chars_plan(cfg)?,
        Suite::Closure => closure_plan(cfg)?,
        Suite::Zhu => zhu_plan(cfg),
        Suite::All => {
            let mut plan = Plan::default();
            for s in [
                Suite::Ct,
                Suite::Jack,
                Suite::Chars,
                Suite::Closure,
                Suite::Zhu,
            ] {
                let mut sub = cfg.clone();
                sub.suite = s;
                plan.extend(plan_for(&sub)?);
            }
            plan
        }
    };
    for j in &mut plan.jobs {
        if j.base.suite.is_empty() {
            j.base.suite = cfg.suite.name().to_string();
        }
    }
    Ok(plan)
}

fn options(cfg: &RunConfig, start: Instant) -> ExtractOptions {
    ExtractOptions {
        margin: 0,
        budget: Budget {
            max_terms: cfg.budget.max_terms,
            deadline: cfg.budget.time_limit().map(|d| start + d),
        },
    }
}

fn run_job(
    j: &Job,
    opts: &ExtractOptions,
    limit: Option<Duration>,
    start: Instant,
) -> Result<Check, CliError> {
    let budget_stub = |msg: String| {
        let mut c = j.base.clone();
        c.status = Status::BudgetExceeded;
        c.value("reason", msg);
        c
    };
    if limit.is_some_and(|l| start.elapsed() > l) {
        return Ok(budget_stub("time limit reached before start".into()));
    }
    let t = Instant::now();
    match (j.run)(opts, j.base.clone()) {
        Ok(mut c) => {
            if c.wall_ms == 0 {
                c.wall_ms = t.elapsed().as_millis() as u64;
            }
            Ok(c)
        }
        Err(CoreError::BudgetExceeded(msg)) => Ok(budget_stub(msg)),
        Err(CoreError::InvalidParameter(msg)) => Err(CliError::Usage(msg)),
        Err(e) => {
            let mut c = j.base.clone();
            c.value("error", e.to_string());
            Ok(c)
        }
    }
}

/// Runs the configured suite. Checks run concurrently on `workers` threads;
/// the report lists them in a fixed order.
pub fn run_suite(cfg: &RunConfig) -> Result<Report, CliError> {
    cfg.validate()?;
    let plan = plan_for(cfg)?;
    let start = Instant::now();
    let opts = options(cfg, start);
    let limit = cfg.budget.time_limit();
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(w) = cfg.workers {
        builder = builder.num_threads(w);
    }
    let pool = builder
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start worker pool: {e}")))?;
    let (checks, observations) = pool.install(|| {
        let checks: Vec<Result<Check, CliError>> = plan
            .jobs
            .par_iter()
            .map(|j| run_job(j, &opts, limit, start))
            .collect();
        let observations: Vec<CoreResult<Vec<Observation>>> =
            plan.observations.par_iter().map(|f| f()).collect();
        (checks, observations)
    });
    let checks = checks.into_iter().collect::<Result<Vec<_>, _>>()?;
    let mut obs_out = Vec::new();
    for o in observations {
        match o {
            Ok(v) => obs_out.extend(v),
            Err(e) => obs_out.push(obs("observation-error", e.to_string())),
        }
    }
    Ok(Report::new(cfg.suite.name(), checks, obs_out, plan.skipped))
}
