//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rho_core::lie::{build_sl_block, extract_weights, levi_decomposition, sp21_pair, BlockPattern, TorusMode};
use rho_core::scalar::dot;
use rho_core::temper::{check, check_with, run_scan, ScanFamily, ScanReport, Verdict};
use rho_core::verify::{distinct_hyperplanes, grid_oracle, is_nonnegative, recheck_certificate, CheckOptions, Evidence, GridResult};
use rho_core::wire::{to_json, VerdictDoc};
use rho_core::{LinearForm, QPL, QPair, Rational, Scalar, TorusSpace};
use rho_volume::{translate_suite, verify_decay, ConvexBody, DecayOptions, SplitMatrix};

type Outcome = Result<String, String>;

fn q(n: i64) -> Rational {
    Rational::from_frac(n, 1)
}

fn scan(families: &[ScanFamily], verdicts: &mut Vec<Verdict>) -> (usize, Vec<String>, Duration) {
    let start = Instant::now();
    let mut points = 0;
    let mut mismatches = Vec::new();
    for &f in families {
        let report: ScanReport = run_scan(f, CheckOptions::reduced()).expect("scan runs");
        points += report.points.len();
        mismatches.extend(report.mismatches.iter().cloned());
        verdicts.extend(report.points.into_iter().map(|p| p.verdict));
    }
    (points, mismatches, start.elapsed())
}

fn scan_outcome(families: &[ScanFamily], expected: Option<usize>, limit: Duration, verdicts: &mut Vec<Verdict>) -> Outcome {
    let (points, mismatches, took) = scan(families, verdicts);
    let detail = format!("{points} cases, {} mismatches, {:.1}s", mismatches.len(), took.as_secs_f64());
    if expected.is_some_and(|e| e != points) {
        return Err(format!("{detail}; expected {} cases", expected.unwrap()));
    }
    if took > limit {
        return Err(format!("{detail}; over the {}s budget", limit.as_secs()));
    }
    if mismatches.is_empty() {
        Ok(detail)
    } else {
        Err(format!("{detail}: {}", mismatches.join(", ")))
    }
}

fn criterion_1(v: &mut Vec<Verdict>) -> Outcome {
    scan_outcome(&[ScanFamily::Table1 { pmax: 6, qmax: 6 }], Some(144), Duration::from_secs(60), v)
}

fn criterion_2(v: &mut Vec<Verdict>) -> Outcome {
    scan_outcome(&[ScanFamily::Table2 { max: 4 }], Some(768), Duration::from_secs(600), v)
}

/// `e_k - (1/n)(1, ..., 1)`, the coordinate vector moved onto the trace-zero
/// torus (every weight is a difference of coordinates, so values agree with
/// those at `e_k`).
fn trace_free_direction(n: usize, k: usize) -> Vec<Rational> {
    (0..n)
        .map(|i| Rational::from_frac(if i == k { n as i64 - 1 } else { -1 }, n as i64))
        .collect()
}

/// Every permutation of `0..n` that keeps each block in place.
fn block_permutations(pattern: &BlockPattern) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut start = 0;
    for &s in pattern.sizes() {
        let mut local: Vec<Vec<usize>> = vec![Vec::new()];
        for _ in 0..s {
            let mut next = Vec::new();
            for p in &local {
                for x in (start..start + s).filter(|x| !p.contains(x)) {
                    let mut p = p.clone();
                    p.push(x);
                    next.push(p);
                }
            }
            local = next;
        }
        out = out
            .into_iter()
            .flat_map(|p| local.iter().map(move |l| [p.clone(), l.clone()].concat()))
            .collect();
        start += s;
    }
    out
}

/// Some image of `w` under block permutations and `-1` (all symmetries of an
/// even deficit) lies in a chamber whose closure contains `e`.
fn chamber_equivalent(f: &QPL, pattern: &BlockPattern, w: &[Rational], e: &[Rational]) -> bool {
    assert!(f.is_even());
    let hyperplanes = distinct_hyperplanes(f);
    let perms = block_permutations(pattern);
    let signed: Vec<(&Vec<usize>, Rational)> = perms.iter().flat_map(|p| [(p, q(1)), (p, q(-1))]).collect();
    signed.iter().any(|(perm, sign)| {
        let pw: Vec<Rational> = perm.iter().map(|&i| w[i].clone() * sign.clone()).collect();
        hyperplanes.iter().all(|h| {
            let a = h.eval(&pw).unwrap().sign();
            let b = h.eval(e).unwrap().sign();
            b == 0 || a == b
        })
    })
}

fn criterion_3(v: &mut Vec<Verdict>) -> Outcome {
    // the line through (2,1,2) along each coordinate crosses one boundary;
    // the violated inequality names the witness coordinate (1-based)
    let steps: [((usize, usize, usize), (usize, usize, usize), fn(usize, usize, usize) -> usize); 3] = [
        ((2, 1, 2), (3, 1, 2), |p, _, _| p),
        ((2, 5, 2), (2, 6, 2), |p, q, _| p + q),
        ((2, 1, 2), (2, 1, 3), |p, q, r| p + q + r),
    ];
    let mut notes = Vec::new();
    for (inside, outside, coordinate) in steps {
        for (point, want) in [(inside, true), (outside, false)] {
            let (p, q_, r) = point;
            let pattern = BlockPattern::table2("H11", p, q_, r).unwrap();
            let pair = build_sl_block(&pattern, TorusMode::Derived).unwrap();
            let verdict = check(&pair).unwrap();
            if verdict.tempered != want {
                return Err(format!("H11 {point:?}: tempered = {}", verdict.tempered));
            }
            if !want {
                // the named directions are not trace-free on each block, so
                // they live on the full trace-zero torus
                let full = build_sl_block(&pattern, TorusMode::Full).unwrap();
                let Evidence::Witness(w) = check_with(&full, CheckOptions::reduced()).unwrap().evidence else {
                    return Err(format!("H11 {point:?}: tempered on the full torus"));
                };
                let k = coordinate(p, q_, r) - 1;
                let e = trace_free_direction(pattern.n(), k);
                let f = full.deficit();
                let value = f.evaluate(&e).unwrap();
                if value >= q(0) {
                    return Err(format!("H11 {point:?}: deficit at e_{} is {value}", k + 1));
                }
                if w.value >= q(0) || f.evaluate(&w.direction).unwrap() != w.value {
                    return Err(format!("H11 {point:?}: witness value is not exactly negative"));
                }
                if !chamber_equivalent(&f, &pattern, &w.direction, &e) {
                    return Err(format!("H11 {point:?}: witness not chamber-equivalent to e_{}", k + 1));
                }
                notes.push(format!("{point:?}: e_{} -> {value}", k + 1));
            }
            v.push(verdict);
        }
    }
    Ok(format!("6 boundary points flip as predicted; {}", notes.join(", ")))
}

fn criterion_4(v: &mut Vec<Verdict>) -> Outcome {
    let fam = ScanFamily::Example51 {
        max_total: 6,
        max_m: 3,
        max_rank: 4,
    };
    scan_outcome(&[fam], None, Duration::from_secs(600), v)
}

fn criterion_5(v: &mut Vec<Verdict>) -> Outcome {
    let mut families: Vec<ScanFamily> = (2..=8).map(|n| ScanFamily::Example52Sl { n }).collect();
    families.extend((2..=4).map(|n| ScanFamily::Example52Sp { n }));
    families.push(ScanFamily::Example52So { total_max: 6 });
    scan_outcome(&families, None, Duration::from_secs(600), v)
}

fn criterion_6(v: &mut Vec<Verdict>) -> Outcome {
    let pair = extract_weights(&sp21_pair()).map_err(|e| e.to_string())?;
    if pair.space().dim() != 1 {
        return Err(format!("split torus has dimension {}", pair.space().dim()));
    }
    let rho_h = pair.h_module().rho_function();
    let rho_q = pair.g_module().rho_function();
    let ratio = Rational::from_frac(3, 2);
    if !rho_h.equals(&rho_q.scale(&ratio)) {
        return Err("rho_h is not 3/2 rho_{g/h}".into());
    }
    let verdict = check(&pair).unwrap();
    if verdict.tempered {
        return Err("verdict is tempered".into());
    }
    let c = rho_h.canonical();
    let d = rho_q.canonical();
    let detail = format!(
        "rho_h = {}|t|, rho_g/h = {}|t|, not tempered",
        c.abs_terms()[0].0,
        d.abs_terms()[0].0
    );
    v.push(verdict);
    Ok(detail)
}

fn criterion_7(v: &mut Vec<Verdict>) -> Outcome {
    let families: Vec<ScanFamily> = (2..=8).map(|n| ScanFamily::Prop59 { n }).collect();
    scan_outcome(&families, None, Duration::from_secs(600), v)
}

fn random_function(rng: &mut ChaCha8Rng) -> QPL {
    let n = rng.gen_range(1..=4);
    let constraints = if n >= 2 && rng.gen_bool(0.3) {
        vec![LinearForm::from_ints(&vec![1; n])]
    } else {
        vec![]
    };
    let space = TorusSpace::new(n, Vec::new(), constraints).unwrap();
    let form = |rng: &mut ChaCha8Rng| LinearForm::from_ints(&(0..n).map(|_| rng.gen_range(-2..=2)).collect::<Vec<_>>());
    let terms = (0..rng.gen_range(0..=6)).map(|_| (q(rng.gen_range(-3..=3)), form(rng))).collect();
    let lin = if rng.gen_bool(0.3) { form(rng) } else { LinearForm::zero(n) };
    QPL::new(space, terms, lin).unwrap()
}

fn criterion_8(_: &mut Vec<Verdict>) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let (mut certified, mut refuted, mut planted) = (0, 0, 0);
    for i in 0..500 {
        let f = random_function(&mut rng);
        let out = is_nonnegative(&f).map_err(|e| format!("instance {i}: {e}"))?;
        match &out.evidence {
            Evidence::Certificate(_) => {
                if grid_oracle(&f, 12).unwrap() != GridResult::NoViolation {
                    return Err(format!("instance {i}: certified but the grid finds a violation"));
                }
                certified += 1;
            }
            Evidence::Witness(w) => {
                if w.value >= q(0) || f.evaluate(&w.direction).unwrap() != w.value {
                    return Err(format!("instance {i}: witness value is not exact and negative"));
                }
                refuted += 1;
            }
        }
        // plant f(d) = -1 with a linear correction along d
        let n = f.space().ambient_dim();
        let raw: Vec<i64> = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
        let d: Vec<Rational> = if f.space().constraints().is_empty() {
            raw.iter().map(|&x| q(x)).collect()
        } else {
            let s: i64 = raw.iter().sum();
            raw.iter().map(|&x| q(n as i64 * x - s)).collect()
        };
        if d.iter().all(|x| *x == q(0)) {
            continue;
        }
        let s = -(f.evaluate(&d).unwrap() + q(1)) / dot(&d, &d);
        let lin = QPL::new(f.space().clone(), vec![], LinearForm::new(d.iter().map(|x| x.clone() * s.clone()).collect())).unwrap();
        let g = f.add(&lin).unwrap();
        let out = is_nonnegative(&g).map_err(|e| format!("planted {i}: {e}"))?;
        match out.witness() {
            Some(w) if w.value < q(0) && g.evaluate(&w.direction).unwrap() == w.value => planted += 1,
            _ => return Err(format!("planted instance {i}: no exact negative witness")),
        }
    }
    Ok(format!("500 functions: {certified} certified, {refuted} refuted, {planted} planted negatives found"))
}

fn criterion_9(_: &mut Vec<Verdict>) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut patterns = Vec::new();
    for p in 1..=3 {
        for q_ in 1..=3 {
            patterns.push(BlockPattern::table1("H2", p, q_).unwrap());
            for r in 1..=3 {
                patterns.push(BlockPattern::table2("H7", p, q_, r).unwrap());
            }
        }
    }
    let mut evaluations = 0;
    for pattern in &patterns {
        let pair: QPair = build_sl_block(pattern, TorusMode::Derived).unwrap();
        let lhs = pair.deficit();
        let rhs = levi_decomposition(pattern).unwrap().deficit().unwrap();
        if !lhs.equals(&rhs) {
            return Err(format!("{}: canonical forms differ", pattern.describe()));
        }
        let space = pair.space();
        for _ in 0..1000 {
            let z: Vec<Rational> = (0..space.dim())
                .map(|_| Rational::new(rng.gen_range(-50i64..=50).into(), rng.gen_range(1i64..=12).into()))
                .collect();
            let y = space.lift(&z);
            if lhs.evaluate(&y).unwrap() != rhs.evaluate(&y).unwrap() {
                return Err(format!("{}: values differ at {y:?}", pattern.describe()));
            }
            evaluations += 1;
        }
    }
    Ok(format!("{} patterns, 1000 random rational points each ({evaluations} evaluations)", patterns.len()))
}

fn criterion_10(_: &mut Vec<Verdict>) -> Outcome {
    let start = Instant::now();
    let matrices: [&[f64]; 5] = [
        &[1.0, -1.0],
        &[1.0, 0.0],
        &[1.0, 1.0, -2.0],
        &[2.0, -1.0, -1.0],
        &[1.5, -0.5, 0.5, -1.0],
    ];
    let opts = DecayOptions {
        samples: 100_000,
        tolerance: 0.1,
        ..DecayOptions::default()
    };
    let mut worst: f64 = 0.0;
    for e in matrices {
        let a = SplitMatrix::diagonal(e).map_err(|x| x.to_string())?;
        for body in [ConvexBody::cube(e.len()), ConvexBody::unit_ball(e.len())] {
            let fit = verify_decay(&a, &body, &opts).map_err(|x| format!("{e:?}: {x}"))?;
            worst = worst.max((fit.fitted_slope - fit.predicted_slope).abs());
            if !fit.pass {
                return Err(format!("{e:?} in {body:?}: slope {} vs {}", fit.fitted_slope, fit.predicted_slope));
            }
        }
    }
    let took = start.elapsed();
    if took > Duration::from_secs(120) {
        return Err(format!("took {:.1}s", took.as_secs_f64()));
    }
    Ok(format!("10 fits (box and ball), worst slope error {worst:.3}, {:.1}s", took.as_secs_f64()))
}

fn criterion_11(_: &mut Vec<Verdict>) -> Outcome {
    let mut trials = 0;
    let mut failures = 0;
    for (dim, n) in [(2, 34), (3, 33), (4, 33)] {
        let report = translate_suite(dim, n, 20_000, 100 + dim as u64).map_err(|e| e.to_string())?;
        trials += report.trials;
        failures += report.trials - report.passes;
    }
    if failures == 0 {
        Ok(format!("{trials} random pairs and shifts, 0 violations at 3 sigma"))
    } else {
        Err(format!("{failures} of {trials} trials violate the bound at 3 sigma"))
    }
}

fn criterion_12(verdicts: &[Verdict]) -> Outcome {
    use rayon::prelude::*;
    let tempered: Vec<&Verdict> = verdicts.iter().filter(|v| v.tempered).collect();
    let counts = tempered
        .par_iter()
        .map(|v| {
            let r = rhocheck::cmd_recheck(&to_json(&VerdictDoc::from_verdict(v)))
                .map_err(|f| format!("{}: {}", v.metadata, f.message))?;
            if r.code != 0 {
                return Err(format!("{}: recheck exit {}", v.metadata, r.code));
            }
            let Evidence::Certificate(c) = &v.evidence else {
                return Err(format!("{}: tempered without a certificate", v.metadata));
            };
            // every ray of small certificates, 12 spread-out rays of large ones
            let n = c.ray_values.len();
            let picks: Vec<usize> = if n <= 32 { (0..n).collect() } else { (0..12).map(|k| k * (n - 1) / 11).collect() };
            for &i in &picks {
                let mut bad = c.clone();
                bad.ray_values[i] = bad.ray_values[i].clone() + Rational::from_frac(1, 7);
                if recheck_certificate(&bad).is_ok() {
                    return Err(format!("{}: mutation of ray {i} not detected", v.metadata));
                }
            }
            Ok(picks.len())
        })
        .collect::<Result<Vec<usize>, String>>()?;
    let certificates = counts.len();
    let mutations: usize = counts.iter().sum();
    // and one mutation through the serialized path
    let v = verdicts
        .iter()
        .find(|v| v.tempered && v.stats.rays > 0)
        .ok_or("no tempered verdicts")?;
    let mut doc: serde_json::Value = serde_json::from_str(&to_json(&VerdictDoc::from_verdict(v))).unwrap();
    doc["evidence"]["ray_values"][0] = serde_json::Value::String("99/1".into());
    match rhocheck::cmd_recheck(&doc.to_string()) {
        Err(f) if f.code == 1 => {}
        other => return Err(format!("tampered file not rejected with exit 1: {other:?}")),
    }
    Ok(format!("{certificates} certificates recheck with exit 0; {mutations} single-ray mutations detected"))
}

fn main() {
    let mut verdicts = Vec::new();
    let criteria: [(&str, fn(&mut Vec<Verdict>) -> Outcome); 11] = [
        ("Table 1 reproduction", criterion_1),
        ("Table 2 reproduction", criterion_2),
        ("H11 boundary and witness directions", criterion_3),
        ("classical subalgebras of sl and complex pairs", criterion_4),
        ("block products in sl, sp, so", criterion_5),
        ("sp(1)+sp(1,1) in sp(2,1) ratio", criterion_6),
        ("tensor product dictionary, n <= 8", criterion_7),
        ("verifier vs grid oracle", criterion_8),
        ("Levi deficit identity", criterion_9),
        ("intersection volume decay", criterion_10),
        ("translate bound", criterion_11),
    ];
    let mut failed = 0;
    let mut report = |i: usize, name: &str, outcome: Outcome| {
        let (tag, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("criterion {i:>2} {tag}  {name}: {detail}");
    };
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = run(&mut verdicts);
        report(i + 1, name, outcome);
    }
    report(12, "certificate round trip", criterion_12(&verdicts));
    if failed > 0 {
        println!("{failed} of 12 criteria failed");
        std::process::exit(1);
    }
    println!("all 12 criteria passed");
}
