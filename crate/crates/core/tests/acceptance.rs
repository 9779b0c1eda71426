//! One line per acceptance criterion. Exits nonzero if any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use eistwist::arith::{is_primitive_root, smallest_primitive_root, LogMap};
use eistwist::eisenstein::{alpha_check, g_p_modp, DEFAULT_N_MAX};
use eistwist::harness::cache::{load_context, save_context};
use eistwist::harness::{check_fixtures, sweep_even_on, sweep_odd_on, LevelData, SweepReport};
use eistwist::linalg::vec_is_zero;
use eistwist::modsym::{build_space, Sign};
use eistwist::quadfield::{
    class_number, fundamental_unit, is_fundamental, unit_criterion, unit_criterion_at,
    unit_residues, validate_discriminant, Discriminant, SplitPrime,
};
use eistwist::selmer::{equivalence_predicate, SelmerInput};
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};

use common::*;

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn level(n: u64, p: u64, sign: Sign) -> Result<LevelData, String> {
    LevelData::build(n, p, sign, DEFAULT_N_MAX).map_err(err)
}

fn fixture_table() -> Outcome {
    let start = Instant::now();
    let small = check_fixtures(false).map_err(err)?;
    let small_time = start.elapsed();
    for r in &small {
        check(
            r.passed(),
            format!("({}, {}) gave g_p = {}", r.n, r.p, r.found),
        )?;
    }
    check(
        small_time < Duration::from_secs(60),
        format!("small levels took {small_time:?}"),
    )?;
    let start = Instant::now();
    let mut large = Vec::new();
    for n in [1871u64, 4621, 9931] {
        let g = g_p_modp(n, 5).map_err(err)?;
        check(g == 2, format!("({n}, 5) gave g_p = {g}"))?;
        large.push(format!("{n}:{g}"));
    }
    let large_time = start.elapsed();
    check(
        large_time < Duration::from_secs(1800),
        format!("large levels took {large_time:?}"),
    )?;
    Ok(format!(
        "(11,5)->1 (31,5)->2 (211,5)->2 in {small_time:.2?}; {} in {large_time:.2?}",
        large.join(" ")
    ))
}

fn even_sweep_11(plus: &LevelData) -> Result<SweepReport, String> {
    sweep_even_on(plus, 1, 2999, None).map_err(err)
}

fn trivial_divisibility(rep: &SweepReport, elapsed: Duration) -> Outcome {
    let bad: Vec<i64> = rep
        .rows
        .iter()
        .filter(|r| !r.eis_valuation.at_least(1))
        .map(|r| r.d)
        .collect();
    check(bad.is_empty(), format!("valuation 0 at D = {bad:?}"))?;
    check(
        elapsed < Duration::from_secs(300),
        format!("sweep took {elapsed:?}"),
    )?;
    Ok(format!(
        "{} discriminants, all with valuation >= 1, {elapsed:.2?}",
        rep.rows.len()
    ))
}

fn main_equivalence(rep: &SweepReport) -> Outcome {
    let mut trues = 0;
    for r in &rep.rows {
        let uc = unit_criterion(r.d, r.n, r.p).map_err(err)?;
        check(
            r.eis_valuation.at_least(2) == uc,
            format!(
                "D = {}: valuation {} but criterion {uc}",
                r.d, r.eis_valuation
            ),
        )?;
        trues += usize::from(uc);
    }
    let falses = rep.rows.len() - trues;
    check(
        trues > 0 && falses > 0,
        format!("criterion true {trues}, false {falses}"),
    )?;
    Ok(format!(
        "{} rows, criterion true {trues} / false {falses}",
        rep.rows.len()
    ))
}

fn other_levels() -> Outcome {
    let start = Instant::now();
    let mut parts = Vec::new();
    for n in [31u64, 211] {
        let rep = sweep_even_on(&level(n, 5, Sign::Plus)?, 1, 499, None).map_err(err)?;
        if let Some(r) = rep.failures().next() {
            return Err(format!("N = {n}: {}", r.csv_line()));
        }
        parts.push(format!(
            "N={n}: {}/{}",
            rep.summary.passed, rep.summary.total
        ));
    }
    let t = start.elapsed();
    check(t < Duration::from_secs(600), format!("took {t:?}"))?;
    Ok(format!("{} in {t:.2?}", parts.join(", ")))
}

fn odd_twists() -> Outcome {
    let minus = level(11, 5, Sign::Minus)?;
    let rep = sweep_odd_on(&minus, -2999, -1, None).map_err(err)?;
    if let Some(r) = rep.failures().next() {
        return Err(r.csv_line());
    }
    let r47 = rep
        .rows
        .iter()
        .find(|r| r.d == -47)
        .ok_or("D = -47 missing")?;
    check(
        r47.h == 5 && r47.eis_valuation.at_least(1),
        "D = -47 not on the true side",
    )?;
    let trues = rep.rows.iter().filter(|r| r.criterion).count();
    Ok(format!(
        "{} rows consistent, {trues} with 5 | h",
        rep.rows.len()
    ))
}

fn alpha_map() -> Outcome {
    let mut rng = rand::rngs::StdRng::seed_from_u64(20240611);
    let mut parts = Vec::new();
    for (n, p) in [(11u64, 5u64), (31, 5), (211, 5)] {
        let plus = level(n, p, Sign::Plus)?;
        let inv = plus.ctx.p_part_invariants(1);
        check(inv == [1], format!("N = {n}: p-part invariants {inv:?}"))?;
        let mut samples = Vec::new();
        while samples.len() < 50 {
            let d: i64 = rng.gen_range(2..10_000);
            let b: i64 = rng.gen_range(-10_000..10_000);
            if num_integer::gcd(b, d) == 1 && d % n as i64 != 0 {
                samples.push((b, d));
            }
        }
        let ok = alpha_check(&plus.space, &plus.ctx, &plus.log, &samples).map_err(err)?;
        check(ok, format!("N = {n}: images not proportional to log"))?;
        parts.push(format!("N={n}"));
    }
    Ok(format!(
        "order p and 50 samples proportional at {}",
        parts.join(", ")
    ))
}

fn selmer_grid() -> Outcome {
    let start = Instant::now();
    let mut count = 0;
    for p_divides_h in [false, true] {
        for pic_zn_trivial in [false, true] {
            for log1_u in 0..5 {
                for log1_pi2 in 0..5 {
                    for g_p in [1, 2] {
                        let input = SelmerInput {
                            p_divides_h,
                            pic_zn_trivial,
                            log1_u,
                            log1_pi2,
                            g_p,
                        };
                        match equivalence_predicate(&input) {
                            Ok((a, b)) => check(a == b, format!("{input:?}"))?,
                            Err(_) => check(
                                !p_divides_h && !pic_zn_trivial,
                                format!("unexpected error at {input:?}"),
                            )?,
                        }
                        count += 1;
                    }
                }
            }
        }
    }
    let t = start.elapsed();
    check(t < Duration::from_secs(1), format!("took {t:?}"))?;
    Ok(format!("{count} inputs in {t:.2?}"))
}

fn structural(plus11: &LevelData) -> Outcome {
    let mut done = Vec::new();
    for n in [11u64, 31, 37] {
        let s = build_space(n).map_err(err)?;
        let ts: Vec<_> = [2u64, 3, 5, 7, n]
            .iter()
            .map(|&l| s.hecke(l).unwrap().matrix)
            .collect();
        for a in &ts {
            check(
                a.mul(s.star()) == s.star().mul(a),
                format!("star at N = {n}"),
            )?;
            for b in &ts {
                check(a.mul(b) == b.mul(a), format!("commutativity at N = {n}"))?;
            }
        }
        for d in (-300i64..300).filter(|&d| d.abs() > 1 && is_fundamental(d) && d % n as i64 != 0) {
            let t = s
                .theta_element(Discriminant::new(d).unwrap())
                .map_err(err)?;
            check(
                vec_is_zero(&s.boundary().apply(&t.rel_coords)),
                format!("boundary of theta {d}"),
            )?;
            let st = s.star().apply(&t.rel_coords);
            let sign = if d > 0 { 1 } else { -1 };
            check(
                st.iter().zip(&t.rel_coords).all(|(a, b)| *a == b * sign),
                format!("sign of theta {d}"),
            )?;
        }
    }
    done.push("hecke commutativity, star compatibility, theta boundary and sign");

    for (n, p) in [(11u64, 5u64), (31, 5), (211, 5)] {
        for d in (1..1000).filter(|&d| validate_discriminant(d, n, p, true)) {
            let a = unit_criterion_at(d, n, p, 1).map_err(err)?;
            let b = unit_criterion_at(d, n, p, 2).map_err(err)?;
            check(a == b, format!("root choice at D = {d}, N = {n}"))?;
        }
    }
    done.push("root-choice invariance");

    let g0 = smallest_primitive_root(11);
    let g1 = (g0 + 1..11).find(|&g| is_primitive_root(g, 11)).unwrap();
    let log_b = LogMap::with_generator(11, 5, g1).map_err(err)?;
    let mut other = plus11.clone();
    other.log = log_b;
    let base = sweep_even_on(plus11, 1, 600, None).map_err(err)?;
    let alt = sweep_even_on(&other, 1, 600, None).map_err(err)?;
    for (x, y) in base.rows.iter().zip(&alt.rows) {
        check(
            x.eis_valuation == y.eis_valuation && x.criterion == y.criterion,
            format!("log choice at D = {}", x.d),
        )?;
    }
    done.push("log-choice invariance");

    let serial = sweep_even_on(plus11, 1, 1500, Some(1)).map_err(err)?;
    let parallel = sweep_even_on(plus11, 1, 1500, Some(4)).map_err(err)?;
    check(serial == parallel, "parallel and serial reports differ")?;
    done.push("parallel/serial equality");

    let dir = tempfile::tempdir().map_err(err)?;
    let path = dir.path().join("ctx.json");
    save_context(&path, &plus11.space, &plus11.ctx).map_err(err)?;
    let ctx = load_context(&path, &plus11.space).map_err(err)?;
    check(
        ctx.w[1].basis() == plus11.ctx.w[1].basis(),
        "W_1 changed after reload",
    )?;
    let reloaded = LevelData::from_parts(plus11.space.clone(), ctx).map_err(err)?;
    check(
        sweep_even_on(&reloaded, 1, 1500, Some(1)).map_err(err)? == serial,
        "rows changed after reload",
    )?;
    done.push("cache round trip");
    Ok(done.join(", "))
}

fn oracles() -> Outcome {
    let mut count = 0;
    for d in (-200i64..=200).filter(|&d| d.abs() > 1 && is_fundamental(d)) {
        let h = class_number(Discriminant::new(d).unwrap());
        if d < 0 {
            check(
                h == brute_force_definite(d) && h == analytic_definite(d),
                format!("h({d})"),
            )?;
        } else {
            let (x, y, _) = pell_search(d, 5_000_000).ok_or(format!("no unit found for {d}"))?;
            let u = fundamental_unit(Discriminant::new(d).unwrap()).map_err(err)?;
            check(
                u.x.to_u128() == Some(x) && u.y.to_u128() == Some(y),
                format!("unit of {d}"),
            )?;
            let log_eps = ((x as f64) + (y as f64) * (d as f64).sqrt()).ln() - 2f64.ln();
            let ah = analytic_indefinite(d, log_eps);
            check(
                (ah - h as f64).abs() < 1e-6,
                format!("h({d}) = {h}, analytic {ah}"),
            )?;
        }
        count += 1;
    }
    let mut units = 0;
    for (n, p) in [(11u64, 5u64), (31, 5), (211, 5)] {
        for d in (1..=500).filter(|&d| validate_discriminant(d, n, p, true)) {
            let disc = Discriminant::new(d).unwrap();
            let res = unit_residues(disc, n).map_err(err)?;
            let u = fundamental_unit(disc).map_err(err)?;
            let sp = SplitPrime::new(disc, n).map_err(err)?;
            check(
                res.u_mod_n1 == u.reduce(sp.root(1), n) && res.u_mod_n2 == u.reduce(sp.root(2), n),
                format!("residues at D = {d}, N = {n}"),
            )?;
            units += 1;
        }
    }
    let s = build_space(11).map_err(err)?;
    for l in [2u64, 3] {
        check(
            s.hecke(l).map_err(err)?.matrix == coset_hecke(&s, l),
            format!("T_{l} at N = 11"),
        )?;
    }
    Ok(format!(
        "{count} class numbers, {units} unit residues, T_2 and T_3 at N = 11"
    ))
}

fn report(no: usize, name: &str, outcome: Outcome) -> bool {
    match outcome {
        Ok(msg) => {
            println!("criterion {no} PASS  {name}: {msg}");
            true
        }
        Err(msg) => {
            println!("criterion {no} FAIL  {name}: {msg}");
            false
        }
    }
}

fn main() -> ExitCode {
    let mut ok = true;
    ok &= report(1, "fixture table", fixture_table());
    let plus11 = level(11, 5, Sign::Plus);
    let start = Instant::now();
    let sweep = plus11
        .as_ref()
        .map_err(Clone::clone)
        .and_then(even_sweep_11);
    let elapsed = start.elapsed();
    ok &= report(
        2,
        "trivial divisibility",
        sweep
            .as_ref()
            .map_err(Clone::clone)
            .and_then(|r| trivial_divisibility(r, elapsed)),
    );
    ok &= report(
        3,
        "main equivalence at (11,5)",
        sweep
            .as_ref()
            .map_err(Clone::clone)
            .and_then(main_equivalence),
    );
    ok &= report(4, "equivalence at (31,5) and (211,5)", other_levels());
    ok &= report(5, "odd twists", odd_twists());
    ok &= report(6, "alpha map", alpha_map());
    ok &= report(7, "selmer grid", selmer_grid());
    ok &= report(
        8,
        "structural properties",
        plus11.as_ref().map_err(Clone::clone).and_then(structural),
    );
    ok &= report(9, "oracle equivalences", oracles());
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
