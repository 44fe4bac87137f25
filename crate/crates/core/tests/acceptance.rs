//! Acceptance criteria. Each criterion prints one line:
//! `criterion N: PASS|FAIL (<seconds>s) <detail>`; the process exits non-zero
//! if any criterion fails. All comparisons are exact (tolerance zero); the
//! time budget per criterion is 60 s.

use std::time::{Duration, Instant};

use num_traits::Zero;

use curvhomo::algebra::{int, rat};
use curvhomo::config::RunConfig;
use curvhomo::family::{alpha, crosscheck_fields, random_family, ClosedForms, EngineFamily, FamilySpec, PointCoords};
use curvhomo::invariants::{alpha_via_quotient, homogeneity_obstruction, HomogeneityVerdict};
use curvhomo::report::{Format, VerificationReport};
use curvhomo::suites::{run_selected, run_suites, SuiteId};
use curvhomo::{Polynomial, SeededSampler};

const BUDGET: Duration = Duration::from_secs(60);
const RANKS: [usize; 3] = [2, 3, 4];
const SEED: u64 = 20240;

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

/// First failing check of a report, or the pass count.
fn summarize(report: &VerificationReport) -> (bool, String) {
    let s = report.summary();
    match report.checks().find(|(_, st)| st.as_str() == "FAIL") {
        None => (true, format!("{}/{} checks", s.pass, s.total)),
        Some((item, _)) => (false, format!("{}.{} failed: {}", item.suite, item.name, item.detail)),
    }
}

fn config(s: usize, points: usize) -> RunConfig {
    let mut cfg = RunConfig::new(s);
    cfg.seed = SEED;
    cfg.samples = 100;
    let mut sampler = SeededSampler::new(SEED, cfg.bound).fork(1000 + s as u64);
    cfg.points = (0..points).map(|_| PointCoords::random(s, &mut sampler)).collect();
    cfg
}

/// Runs one suite for every rank and concatenates the per-rank verdicts.
fn suite_for_ranks(id: SuiteId, points: usize) -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for s in RANKS {
        let report = run_selected(&config(s, points), &[id]);
        let (pass, detail) = summarize(&report);
        ok &= pass;
        parts.push(format!("s={s}: {detail}"));
    }
    outcome(ok, parts.join("; "))
}

fn criterion_1() -> Outcome {
    let mut sampler = SeededSampler::new(SEED, 10).fork(1);
    let mut ok = true;
    let mut parts = Vec::new();
    for s in RANKS {
        let mut agreed = 0;
        let mut first_fail = None;
        for _ in 0..5 {
            let spec = match random_family(s, 5, &mut sampler) {
                Ok(spec) => spec,
                Err(e) => return outcome(false, format!("family generation: {e}")),
            };
            let engine = match EngineFamily::new(&spec, 1) {
                Ok(e) => e,
                Err(e) => return outcome(false, format!("engine: {e}")),
            };
            let (pass, detail) = summarize(&crosscheck_fields(&ClosedForms::new(&spec), &engine));
            if pass {
                agreed += 1;
            } else if first_fail.is_none() {
                first_fail = Some(detail);
            }
        }
        ok &= agreed == 5;
        parts.push(match first_fail {
            None => format!("s={s}: 5/5 families identical"),
            Some(d) => format!("s={s}: {agreed}/5, {d}"),
        });
    }
    outcome(ok, parts.join("; "))
}

fn criterion_2() -> Outcome {
    suite_for_ranks(SuiteId::Curvature, 2)
}

fn criterion_3() -> Outcome {
    suite_for_ranks(SuiteId::Homogeneity, 25)
}

fn criterion_4() -> Outcome {
    suite_for_ranks(SuiteId::Osserman, 1)
}

fn criterion_5() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for s in RANKS {
        let report = run_selected(&config(s, 1), &[SuiteId::HigherOsserman]);
        let (pass, detail) = summarize(&report);
        ok &= pass;
        let recorded: Vec<String> = (s + 2..=2 * s)
            .filter_map(|k| report.find("higher_osserman", &format!("timelike_rank_k{k}")).map(|n| format!("k={k} {}", n.detail)))
            .collect();
        parts.push(format!("s={s}: {detail} [{}]", recorded.join(", ")));
    }
    outcome(ok, parts.join("; "))
}

fn criterion_6() -> Outcome {
    suite_for_ranks(SuiteId::Quotients, 2)
}

fn criterion_7() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for s in RANKS {
        let spec = match FamilySpec::monomial(s, int(1), 3) {
            Ok(spec) => spec,
            Err(e) => return outcome(false, e.to_string()),
        };
        let mut sampler = SeededSampler::new(SEED, 10).fork(7);
        let mut matched = 0;
        let mut residual = None;
        for _ in 0..10 {
            let p = PointCoords::random(s, &mut sampler);
            let (q, a) = match (alpha_via_quotient(&spec, &p), alpha(&spec, &p)) {
                (Ok(q), Ok(a)) => (q, a),
                (Err(e), _) | (_, Err(e)) => return outcome(false, e.to_string()),
            };
            let expected = int(s as i64 - 1) * &a;
            if q == expected {
                matched += 1;
            } else if residual.is_none() {
                residual = Some(format!("quotient {q} vs (s-1)*alpha {expected}, residual {}", &q - &expected));
            }
        }
        ok &= matched == 10;
        parts.push(match residual {
            None => format!("s={s} factor: 10/10"),
            Some(r) => format!("s={s} factor: {matched}/10, {r}"),
        });
    }

    for s in RANKS {
        let spec = match FamilySpec::monomial(s, rat(-1, 6), 4) {
            Ok(spec) => spec,
            Err(e) => return outcome(false, e.to_string()),
        };
        let closed = ClosedForms::new(&spec);
        let nabla_zero = closed.nabla_curvature.is_zero();
        let mut sampler = SeededSampler::new(SEED, 10).fork(8);
        let alpha_zero = (0..10).all(|_| alpha(&spec, &PointCoords::random(s, &mut sampler)).map(|a| a.is_zero()).unwrap_or(false));
        ok &= nabla_zero && alpha_zero;
        parts.push(format!("s={s} quartic: nabla R == 0 {nabla_zero}, alpha == 0 {alpha_zero}"));
    }

    let cubic = match FamilySpec::new(2, vec![Polynomial::monomial(1, 0, 3, int(1)); 2]) {
        Ok(spec) => spec,
        Err(e) => return outcome(false, e.to_string()),
    };
    let p = PointCoords::from_i64(&[1, 2], &[0, 0], &[0, 0]);
    let o = PointCoords::origin(2);
    let values = (alpha(&cubic, &p), alpha(&cubic, &o));
    let verdict = homogeneity_obstruction(&cubic, &[p, o]);
    match (values, verdict) {
        ((Ok(ap), Ok(ao)), Ok(v)) => {
            let good = ap == int(296) && ao == int(72) && matches!(v, HomogeneityVerdict::NotLocallyHomogeneous { .. });
            ok &= good;
            parts.push(format!("cubic: alpha(1,2) = {ap}, alpha(0) = {ao}, {}", v.label()));
        }
        _ => return outcome(false, "cubic evaluation failed"),
    }
    outcome(ok, parts.join("; "))
}

fn criterion_8() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for s in RANKS {
        let mut cfg = RunConfig::new(s);
        cfg.seed = SEED;
        cfg.samples = 20;
        let a = run_suites(&cfg);
        let b = run_suites(&cfg);
        let same = a.emit(Format::Text) == b.emit(Format::Text) && a.emit(Format::Tsv) == b.emit(Format::Tsv);
        ok &= same;
        parts.push(format!("s={s}: {} items, identical {same}", a.items().len()));
    }
    outcome(ok, parts.join("; "))
}

fn main() {
    let criteria: [(usize, fn() -> Outcome); 8] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
    ];
    let only: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for (n, f) in criteria {
        if !only.is_empty() && !only.contains(&n) {
            continue;
        }
        let start = Instant::now();
        let out = f();
        let elapsed = start.elapsed();
        let ok = out.ok && elapsed <= BUDGET;
        if !ok {
            failed += 1;
        }
        println!("criterion {n}: {} ({:.1}s) {}", if ok { "PASS" } else { "FAIL" }, elapsed.as_secs_f64(), out.detail);
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
