//! The acceptance suite. Runs every criterion, prints one PASS/FAIL line per
//! criterion and exits non-zero if any failed.
//!
//! Run with `cargo test --release -p refocus-cli --test acceptance`; append
//! `-- <number or name>` to run a subset.

use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use refocus_core::context::{
    decompose_kc, iterate_kc_rb, iterate_kc_rf, probe_corr, recompose_io, recompose_oi, reduce_kc, refocus_property,
    DecompositionKC,
};
use refocus_core::cps::{reduce2, reduce3};
use refocus_core::direct::{fuel_for, iterate_reducer, normalize_d_with_fuel};
use refocus_core::harness::{bench_row, enumerate_contexts, enumerate_terms, standard_terms, EnumSpec};
use refocus_core::kk::{decompose_kk, iterate_kk_rb, iterate_kk_rf, reduce_kk, ValueOrDecompositionKK};
use refocus_core::machine::{machine_run, step_budget};
use refocus_core::parse::parse;
use refocus_core::suite::{check_all, check_indexed, Outcome};
use refocus_core::syntax::term_of_potential_redex;
use refocus_core::tower::normalize_all;
use refocus_core::Term;

struct Criterion {
    name: &'static str,
    limit: Option<Duration>,
    check: fn() -> Result<String, String>,
}

fn outcome(o: Outcome, unit: &str) -> Result<String, String> {
    match o.first_failure {
        None => Ok(format!("{} {unit}", o.cases)),
        Some(msg) => Err(format!("after {} {unit}: {msg}", o.cases)),
    }
}

fn reducible(terms: Vec<Term>) -> Vec<Term> {
    terms.into_iter().filter(|t| !t.is_literal()).collect()
}

fn golden_traces() -> Result<String, String> {
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    for (expr, file, code) in [
        ("(1 + 10) + (2 + 20)", "rb_sum.txt", 0),
        ("(1 - (5 + 5)) - (2 - 20)", "rb_underflow.txt", 1),
    ] {
        let want = std::fs::read_to_string(golden.join(file)).map_err(|e| format!("{file}: {e}"))?;
        let out = Command::new(env!("CARGO_BIN_EXE_refocus"))
            .args(["trace", expr, "--mode=rb"])
            .output()
            .map_err(|e| e.to_string())?;
        let got = String::from_utf8_lossy(&out.stdout);
        if got != want {
            return Err(format!("{expr}: expected {want:?}, got {got:?}"));
        }
        if out.status.code() != Some(code) {
            return Err(format!("{expr}: exit status {:?}, expected {code}", out.status.code()));
        }
    }
    Ok("2 traces".into())
}

fn tower_equivalence() -> Result<String, String> {
    outcome(
        check_all(standard_terms::<u64>(), |t| {
            let results = normalize_all(&t);
            let first = &results[0].1;
            match results.iter().find(|(_, r)| r.is_err() || r != first) {
                None => Ok(()),
                Some((s, r)) => Err(format!("{t}: {} gives {:?}, direct gives {:?}", s.name(), r, first)),
            }
        }),
        "terms",
    )
}

fn there_and_back() -> Result<String, String> {
    outcome(
        check_all(reducible(standard_terms()), |t| {
            match decompose_kc(&t) {
                DecompositionKC::Dec(pr, ctx) if recompose_io(&ctx, term_of_potential_redex(&pr)) == t => {}
                d => return Err(format!("{t}: first-order decomposition {d:?} does not recompose")),
            }
            match decompose_kk(&t) {
                ValueOrDecompositionKK::Dec(pr, _, kr) if kr(term_of_potential_redex(&pr)) == t => Ok(()),
                _ => Err(format!("{t}: higher-order decomposition does not recompose")),
            }
        }),
        "terms",
    )
}

fn refocus_inputs() -> (refocus_core::harness::ContextEnumeration<u64>, Vec<Term>) {
    (
        enumerate_contexts(&EnumSpec::contexts(3, 3)),
        enumerate_terms(&EnumSpec::terms(2, 3)),
    )
}

fn refocusing() -> Result<String, String> {
    let (contexts, terms) = refocus_inputs();
    let o = check_indexed(contexts.len(), |i| {
        let ctx = contexts.get(i).expect("index in range");
        match terms.iter().find(|t| !refocus_property(&ctx, t)) {
            None => Ok(()),
            Some(t) => Err(format!("C = {ctx}, t = {t}")),
        }
    });
    outcome(o, &format!("contexts x {} terms", terms.len()))
}

fn io_oi_reversal() -> Result<String, String> {
    let (contexts, terms) = refocus_inputs();
    let o = check_indexed(contexts.len(), |i| {
        let ctx = contexts.get(i).expect("index in range");
        let reversed = ctx.reversed();
        match terms
            .iter()
            .find(|t| recompose_oi(&ctx, (*t).clone()) != recompose_io(&reversed, (*t).clone()))
        {
            None => Ok(()),
            Some(t) => Err(format!("C = {ctx}, t = {t}")),
        }
    });
    outcome(o, &format!("contexts x {} terms", terms.len()))
}

fn defunctionalization() -> Result<String, String> {
    outcome(
        check_all(reducible(standard_terms()), |t| {
            if probe_corr(&t) {
                Ok(())
            } else {
                Err(format!("{t}"))
            }
        }),
        "terms",
    )
}

fn deforestation() -> Result<String, String> {
    let rows: Vec<_> = [16, 32, 64].into_iter().map(bench_row).collect();
    let mut detail = Vec::new();
    for row in &rows {
        if row.rf_recompose != 0 {
            return Err(format!("k = {}: rf_recompose = {}", row.k, row.rf_recompose));
        }
        detail.push(format!("k={} rb={} rf={}", row.k, row.rb_visits, row.rf_visits));
    }
    for pair in rows.windows(2) {
        let rb = pair[1].rb_visits as f64 / pair[0].rb_visits as f64;
        let rf = pair[1].rf_visits as f64 / pair[0].rf_visits as f64;
        if !(3.5..=4.5).contains(&rb) || !(1.8..=2.2).contains(&rf) {
            return Err(format!(
                "k = {} -> {}: rb ratio {rb:.3}, rf ratio {rf:.3}",
                pair[0].k, pair[1].k
            ));
        }
    }
    let last = &rows[2];
    let gap = last.rb_visits as f64 / last.rf_visits as f64;
    if gap < 8.0 {
        return Err(format!("k = 64: rb/rf = {gap:.2}"));
    }
    Ok(format!("{}, rb/rf at 64 = {gap:.2}", detail.join(", ")))
}

fn fuel_and_budget() -> Result<String, String> {
    outcome(
        check_all(standard_terms::<u64>(), |t| {
            let runs = [
                ("direct", normalize_d_with_fuel(&t, fuel_for(&t))),
                ("cps3", iterate_reducer(reduce3, &t, fuel_for(&t))),
                ("cps2", iterate_reducer(reduce2, &t, fuel_for(&t))),
                ("kk", iterate_reducer(reduce_kk, &t, fuel_for(&t))),
                ("kc", iterate_reducer(reduce_kc, &t, fuel_for(&t))),
                ("kk-rb", iterate_kk_rb(decompose_kk(&t), fuel_for(&t))),
                ("kk-rf", iterate_kk_rf(decompose_kk(&t), fuel_for(&t))),
                ("kc-rb", iterate_kc_rb(decompose_kc(&t), fuel_for(&t))),
                ("kc-rf", iterate_kc_rf(decompose_kc(&t), fuel_for(&t))),
            ];
            if let Some((name, Err(fault))) = runs.iter().find(|(_, r)| r.is_err()) {
                return Err(format!("{t}: {name}: {fault}"));
            }
            let run = machine_run(&t).map_err(|fault| format!("{t}: machine: {fault}"))?;
            if run.steps > step_budget(&t) {
                return Err(format!(
                    "{t}: machine took {} steps, budget {}",
                    run.steps,
                    step_budget(&t)
                ));
            }
            Ok(())
        }),
        "terms",
    )
}

fn round_trip() -> Result<String, String> {
    outcome(
        check_all(standard_terms::<u64>(), |t| match parse::<u64>(&t.to_string()) {
            Ok(back) if back == t => Ok(()),
            other => Err(format!("{t}: reparsed as {other:?}")),
        }),
        "terms",
    )
}

fn main() -> ExitCode {
    let secs = |s| Some(Duration::from_secs(s));
    let criteria = [
        Criterion {
            name: "golden traces",
            limit: secs(1),
            check: golden_traces,
        },
        Criterion {
            name: "tower equivalence",
            limit: secs(30),
            check: tower_equivalence,
        },
        Criterion {
            name: "there and back",
            limit: None,
            check: there_and_back,
        },
        Criterion {
            name: "refocusing",
            limit: secs(60),
            check: refocusing,
        },
        Criterion {
            name: "io/oi reversal",
            limit: None,
            check: io_oi_reversal,
        },
        Criterion {
            name: "defunctionalization",
            limit: None,
            check: defunctionalization,
        },
        Criterion {
            name: "deforestation",
            limit: None,
            check: deforestation,
        },
        Criterion {
            name: "fuel and step budget",
            limit: None,
            check: fuel_and_budget,
        },
        Criterion {
            name: "parse/print round trip",
            limit: None,
            check: round_trip,
        },
    ];
    // like libtest: positional arguments select criteria by number or name
    let filters: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let selected = |i: usize, name: &str| {
        filters.is_empty()
            || filters
                .iter()
                .any(|f| f == &(i + 1).to_string() || name.contains(f.as_str()))
    };
    let mut failed = 0;
    let mut ran = 0;
    for (i, c) in criteria.iter().enumerate() {
        if !selected(i, c.name) {
            continue;
        }
        ran += 1;
        let start = Instant::now();
        let result = (c.check)();
        let elapsed = start.elapsed();
        let verdict = match (&result, c.limit) {
            (Err(msg), _) => Err(msg.clone()),
            (Ok(detail), Some(limit)) if elapsed >= limit => Err(format!(
                "holds on {detail} but took {:.2}s, limit {}s",
                elapsed.as_secs_f64(),
                limit.as_secs()
            )),
            (Ok(detail), _) => Ok(detail.clone()),
        };
        let (tag, detail) = match verdict {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!(
            "{tag} {} {:<24} {:>8.2}s  {detail}",
            i + 1,
            c.name,
            elapsed.as_secs_f64()
        );
    }
    if failed == 0 {
        println!("{ran} of {} criteria run, all pass", criteria.len());
        ExitCode::SUCCESS
    } else {
        println!("{failed} of {ran} criteria failed");
        ExitCode::FAILURE
    }
}
