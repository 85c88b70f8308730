//! Acceptance criteria. Each criterion prints one PASS/FAIL line to stderr
//! (uncaptured) and the test fails if any criterion fails.

use std::io::Write;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use oddgirth::audit::{audit_graph, audit_sweep, graph_from_mask, AuditConfig, AuditReport, AuditSource, CheckId};
use oddgirth::bounds::{ball_lower_b, bn_table, bound_bb1, bound_sys, BoundId, BoundParams};
use oddgirth::canon::canonical_form;
use oddgirth::coloring::{ball_peel_coloring, peel_soundness_check};
use oddgirth::cycles::{girth, odd_girth, Length};
use oddgirth::families::{cycle, groetzsch, mycielski, petersen};
use oddgirth::invariants::chromatic::{chromatic_number, is_m_colorable, verify_coloring};
use oddgirth::tables::{parse_table_csv, winner_table, TableSpec};
use rayon::prelude::*;

struct Outcome {
    pass: bool,
    detail: String,
}

fn report(id: usize, title: &str, o: &Outcome) {
    let status = if o.pass { "PASS" } else { "FAIL" };
    let mut err = std::io::stderr();
    writeln!(err, "[{status}] criterion {id}: {title} :: {}", o.detail).unwrap();
}

/// Pascal's triangle, independent of the library's binomial.
fn pascal(rows: usize) -> Vec<Vec<BigInt>> {
    let mut t: Vec<Vec<BigInt>> = vec![vec![BigInt::from(1)]];
    for n in 1..=rows {
        let prev = &t[n - 1];
        let mut row = vec![BigInt::from(1); n + 1];
        for k in 1..n {
            row[k] = &prev[k - 1] + &prev[k];
        }
        t.push(row);
    }
    t
}

fn choose(t: &[Vec<BigInt>], n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        BigInt::from(0)
    } else {
        t[n as usize][k as usize].clone()
    }
}

fn full_suite() -> AuditConfig {
    let mandatory = CheckId::all()
        .into_iter()
        .filter(|c| *c != CheckId::Bound(BoundId::Mix3Printed))
        .collect();
    let mut config = AuditConfig::new(mandatory, [CheckId::Bound(BoundId::Mix3Printed)].into_iter().collect());
    config.max_listed = 5000;
    config
}

fn sweep_n7() -> (AuditReport, Duration) {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let start = Instant::now();
    let src = AuditSource::Enumerate {
        min: 0,
        max: 7,
        dedup: false,
    };
    let report = pool.install(|| audit_sweep(&src, &full_suite()).unwrap());
    (report, start.elapsed())
}

fn criterion1() -> Outcome {
    let start = Instant::now();
    let mut details = Vec::new();
    let mut pass = true;
    for (name, fixture) in [
        ("table1", include_str!("fixtures/table1.csv")),
        ("table2", include_str!("fixtures/table2.csv")),
    ] {
        let expected = parse_table_csv(fixture).unwrap();
        let got = parse_table_csv(&winner_table(&TableSpec::preset(name).unwrap()).to_csv()).unwrap();
        let matched = expected.iter().zip(&got).filter(|(a, b)| a == b).count();
        let mismatches: Vec<String> = expected
            .iter()
            .zip(&got)
            .filter(|(a, b)| a != b)
            .map(|(a, b)| format!("(chi={},k={}) expected {} got {}", a.0, a.1, a.2, b.2))
            .collect();
        pass &= expected.len() == 117 && got.len() == 117 && matched == 117;
        details.push(format!("{name} {matched}/117{}", if mismatches.is_empty() { String::new() } else { format!(" [{}]", mismatches.join("; ")) }));
    }
    let elapsed = start.elapsed();
    pass &= elapsed < Duration::from_secs(1);
    Outcome {
        pass,
        detail: format!("{}, {:.1} ms", details.join(", "), elapsed.as_secs_f64() * 1e3),
    }
}

fn criterion2(report: &AuditReport, elapsed: Duration) -> Outcome {
    let mut failing: Vec<String> = report
        .per_check
        .iter()
        .filter(|(_, t)| t.mandatory && t.violated > 0)
        .map(|(id, t)| format!("{id}={}", t.violated))
        .collect();
    failing.sort();
    let examples: Vec<String> = report
        .violations
        .iter()
        .take(4)
        .map(|r| {
            let ids: Vec<&str> = r.checks.iter().filter(|c| c.mandatory && !c.satisfied).map(|c| c.id.name()).collect();
            format!("{} (n={}, chi={}, k={:?}: {})", r.graph6, r.n, r.chi, r.k, ids.join("+"))
        })
        .collect();
    let within_budget = elapsed < Duration::from_secs(15 * 60);
    Outcome {
        pass: report.violation_count == 0 && within_budget,
        detail: format!(
            "{} graphs, {} violating graphs, violated checks [{}], e.g. {}; {:.1} s on 1 worker",
            report.total_graphs,
            report.violation_count,
            failing.join(", "),
            if examples.is_empty() { "none".to_string() } else { examples.join(", ") },
            elapsed.as_secs_f64()
        ),
    }
}

fn criterion3(report: &AuditReport) -> Outcome {
    let c5 = canonical_form(&cycle(5)).unwrap();
    let printed = CheckId::Bound(BoundId::Mix3Printed);
    let finding = report.report_only_findings.iter().find(|r| {
        r.n == 5
            && canonical_form(&oddgirth::parse_graph6(&r.graph6).unwrap()).unwrap() == c5
            && r.check(printed).is_some_and(|c| !c.satisfied && !c.mandatory && c.bound == 9 && c.observed == 5)
    });
    let tally = report.per_check.get(printed.name()).cloned().unwrap_or_default();
    let excluded = report
        .violations
        .iter()
        .all(|r| r.checks.iter().any(|c| c.mandatory && !c.satisfied));
    Outcome {
        pass: finding.is_some() && !tally.mandatory && tally.violated > 0 && excluded,
        detail: format!(
            "C_5 finding {}, MIX3_PRINTED report-only violations {}, not counted toward mandatory violations: {}",
            finding.map_or("missing".to_string(), |r| format!("{} bound 9 vs |V|=5", r.graph6)),
            tally.violated,
            excluded
        ),
    }
}

fn criterion4() -> Outcome {
    let config = full_suite();
    let mut bad = Vec::new();
    for k in 2..=10usize {
        let r = audit_graph(&cycle(2 * k + 1), &config);
        let c = r.check(CheckId::Bound(BoundId::Mix3Recursive)).unwrap();
        if !(c.bound == (2 * k + 1) as u64 && c.tight) {
            bad.push(format!("C_{} MIX3_RECURSIVE={}", 2 * k + 1, c.bound));
        }
    }
    let r = audit_graph(&cycle(5), &config);
    let get = |id| r.check(CheckId::Bound(id)).unwrap();
    let bb3 = get(BoundId::Bb3);
    if !(bb3.bound == 5 && bb3.tight) {
        bad.push(format!("BB3 on C_5 = {}", bb3.bound));
    }
    for id in [BoundId::Eq2, BoundId::BallA] {
        let c = get(id);
        if !(c.bound == 3 && c.observed == 3 && c.tight) {
            bad.push(format!("{id} on C_5 = {} vs {}", c.bound, c.observed));
        }
    }
    Outcome {
        pass: bad.is_empty(),
        detail: if bad.is_empty() {
            "MIX3_RECURSIVE = 2k+1 on C_{2k+1} for k=2..10; BB3 = 5 on C_5; EQ2 = BALL_A = 3 = max radius-1 ball of C_5".into()
        } else {
            bad.join("; ")
        },
    }
}

fn criterion5() -> Outcome {
    let t = pascal(80);
    let mut mismatches = 0;
    let mut cells = 0;
    for n in 1..=8i64 {
        for r in 0..=12i64 {
            let table = bn_table(n as u64, r as u64);
            for i in 0..=r {
                cells += 1;
                let closed = BigInt::from(2) * choose(&t, i + n - 1, n) + choose(&t, i + n - 1, n - 1);
                mismatches += (table.values[i as usize] != closed) as usize;
            }
            cells += 1;
            let closed = BigInt::from(2) * choose(&t, r + n, n) + choose(&t, r + n, n - 1) - 1;
            mismatches += (table.values[(r + 1) as usize] != closed) as usize;
        }
    }
    let mut sys_mismatch = 0;
    for chi in 3..=30 {
        for k in 1..=30 {
            let p = BoundParams::new(chi, k);
            sys_mismatch += (bound_sys(p).unwrap().raw != ball_lower_b(p).unwrap().raw) as usize;
        }
    }
    Outcome {
        pass: mismatches == 0 && sys_mismatch == 0,
        detail: format!(
            "b_n closed forms: {mismatches} mismatches in {cells} values (n<=8, r<=12); sys vs ball_lower_b: {sys_mismatch} mismatches over 28x30 grid"
        ),
    }
}

fn criterion6() -> Outcome {
    let mut graphs = 0u64;
    let mut failures = Vec::new();
    for n in 0..=7usize {
        let total = 1u64 << (n * n.saturating_sub(1) / 2);
        let (count, bad): (u64, Vec<String>) = (0..total)
            .into_par_iter()
            .filter_map(|m| {
                let g = graph_from_mask(n, m);
                let og = odd_girth(&g).finite()?;
                if og < 5 {
                    return None;
                }
                let k = (og - 1) / 2;
                let ok = match ball_peel_coloring(&g, k) {
                    Ok((c, trace)) => verify_coloring(&g, &c) && peel_soundness_check(&g, &trace).is_ok(),
                    Err(_) => false,
                };
                Some((1u64, if ok { Vec::new() } else { vec![oddgirth::to_graph6(&g).unwrap()] }))
            })
            .reduce(|| (0, Vec::new()), |a, b| (a.0 + b.0, [a.1, b.1].concat()));
        graphs += count;
        failures.extend(bad);
    }
    let p = petersen();
    let (c, trace) = ball_peel_coloring(&p, 2).unwrap();
    let petersen_ok = c.count == 3 && verify_coloring(&p, &c) && peel_soundness_check(&p, &trace).is_ok();
    Outcome {
        pass: failures.is_empty() && graphs > 0 && petersen_ok,
        detail: format!(
            "{graphs} labeled graphs with odd girth >= 5 on n<=7, {} failures; Petersen k=2 uses {} colors with {} peel(s)",
            failures.len(),
            c.count,
            trace.peels.len()
        ),
    }
}

fn criterion7() -> Outcome {
    let start = Instant::now();
    let config = full_suite();
    let mut parts = Vec::new();
    let mut pass = true;
    for (name, g, chi, og) in [
        ("Grötzsch", groetzsch(), 4, 5),
        ("Mycielski(Grötzsch)", mycielski(&groetzsch()), 5, 5),
    ] {
        let got_chi = chromatic_number(&g);
        let refuted = is_m_colorable(&g, chi - 1).is_none();
        let got_og = odd_girth(&g);
        let r = audit_graph(&g, &config);
        let unsatisfied: Vec<&str> = r.checks.iter().filter(|c| c.mandatory && !c.satisfied).map(|c| c.id.name()).collect();
        let max_bound = r
            .checks
            .iter()
            .filter(|c| c.mandatory && matches!(c.id, CheckId::Bound(_)))
            .map(|c| c.bound)
            .max()
            .unwrap_or(0);
        let ok = got_chi == chi && refuted && got_og == Length::Finite(og) && unsatisfied.is_empty() && max_bound <= g.n() as u64;
        pass &= ok;
        parts.push(format!(
            "{name}: n={}, chi={got_chi}, odd girth {got_og}, largest mandatory bound {max_bound}{}",
            g.n(),
            if unsatisfied.is_empty() { String::new() } else { format!(", unsatisfied {}", unsatisfied.join("+")) }
        ));
    }
    let p = petersen();
    let (pc, pg) = (chromatic_number(&p), girth(&p));
    pass &= pc == 3 && pg == Length::Finite(5);
    parts.push(format!("Petersen: chi={pc}, girth {pg}"));
    let elapsed = start.elapsed();
    pass &= elapsed < Duration::from_secs(60);
    Outcome {
        pass,
        detail: format!("{}; {:.2} s", parts.join("; "), elapsed.as_secs_f64()),
    }
}

fn criterion8() -> Outcome {
    let mut bad = Vec::new();
    let mut margins = Vec::new();
    for k in 3..=10u64 {
        let p = BoundParams::new(2 * k + 1, k);
        let (s, b) = (bound_sys(p).unwrap(), bound_bb1(p).unwrap());
        if s.raw <= b.raw {
            bad.push(format!("k={k}: sys {} <= BB1 {}", s.raw, b.raw));
        }
        margins.push(format!("k={k}: {} > {}", s.raw, b.ceil));
    }
    Outcome {
        pass: bad.is_empty(),
        detail: if bad.is_empty() {
            format!("sys > BB1 at chi=2k+1 for k=3..10 ({})", margins.join(", "))
        } else {
            bad.join("; ")
        },
    }
}

#[test]
fn acceptance_criteria() {
    let (sweep, elapsed) = sweep_n7();
    let outcomes = [
        (1, "table reproduction", criterion1()),
        (2, "exhaustive soundness n<=7, full mandatory suite", criterion2(&sweep, elapsed)),
        (3, "printed MIX-3 discrepancy surfaced as report-only", criterion3(&sweep)),
        (4, "tightness registry", criterion4()),
        (5, "b_n recursion closed forms and sys = ball_lower_b", criterion5()),
        (6, "ball-peeling coloring", criterion6()),
        (7, "extremal families", criterion7()),
        (8, "sys exceeds BB-1 at chi=2k+1", criterion8()),
    ];
    for (id, title, o) in &outcomes {
        report(*id, title, o);
    }
    let failed: Vec<usize> = outcomes.iter().filter(|(_, _, o)| !o.pass).map(|(id, _, _)| *id).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
