//! The oracle suite behind `refocus selftest`.
//!
//! Each property runs over a fixed input set and reports how many cases it
//! checked and the first failing case in enumeration order.

use std::time::{Duration, Instant};

use crate::context::{
    decompose_kc, normalize_kc_rb_counted, normalize_kc_rf_counted, probe_corr, recompose_io, recompose_oi,
    refocus_property, trace_kc_rb, trace_kc_rf, DecompositionKC,
};
use crate::cps::{reduce2, reduce2_c_counted, reduce3, reduce3_c_counted};
use crate::direct::{normalize_d, normalize_d_with_fuel, reduce_d, trace_d, ValueOrTermOrStuck};
use crate::fault::Fuel;
use crate::harness::{chain, enumerate_contexts, enumerate_terms, standard_terms, EnumSpec};
use crate::kk::{decompose_kk, reduce_kk, ValueOrDecompositionKK};
use crate::machine::{machine_run, machine_trace, step_budget};
use crate::parse::parse;
use crate::syntax::{NormalResult, Operator, PotentialRedex, Term, Value};
use crate::tower::normalize_all;

type T = Term<u64>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub cases: usize,
    pub first_failure: Option<String>,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }
}

#[derive(Clone, Debug)]
pub struct PropertyReport {
    pub name: &'static str,
    pub outcome: Outcome,
    pub elapsed: Duration,
}

pub struct Property {
    pub name: &'static str,
    pub check: fn() -> Outcome,
}

/// Checks `f` on every item, stopping at the first failure.
pub fn check_all<I, F>(items: I, mut f: F) -> Outcome
where
    I: IntoIterator,
    F: FnMut(I::Item) -> Result<(), String>,
{
    let mut cases = 0;
    for item in items {
        cases += 1;
        if let Err(msg) = f(item) {
            return Outcome {
                cases,
                first_failure: Some(msg),
            };
        }
    }
    Outcome {
        cases,
        first_failure: None,
    }
}

/// [`check_all`] over `0..len`, split into contiguous shards across the
/// available cores. The outcome is the one a sequential run would report.
pub fn check_indexed<F>(len: usize, f: F) -> Outcome
where
    F: Fn(usize) -> Result<(), String> + Sync,
{
    let shards = std::thread::available_parallelism()
        .map_or(1, |n| n.get())
        .min(len.max(1));
    if shards == 1 {
        return check_all(0..len, &f);
    }
    let chunk = len.div_ceil(shards);
    let failures: Vec<Option<(usize, String)>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..shards)
            .map(|s| {
                let f = &f;
                scope.spawn(move || (s * chunk..len.min((s + 1) * chunk)).find_map(|i| f(i).err().map(|msg| (i, msg))))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("shard panicked")).collect()
    });
    match failures.into_iter().flatten().next() {
        Some((i, msg)) => Outcome {
            cases: i + 1,
            first_failure: Some(msg),
        },
        None => Outcome {
            cases: len,
            first_failure: None,
        },
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// The potential redex contracted between `t` and its one-step reduct,
/// recovered by walking both terms to the single position where they differ.
pub fn redex_by_diff(t: &T, reduct: &T) -> Option<PotentialRedex<u64>> {
    match (t, reduct) {
        (Term::Opr(o), Term::Opr(o2)) if o.op == o2.op && (o.left == o2.left) != (o.right == o2.right) => {
            if o.left == o2.left {
                redex_by_diff(&o.right, &o2.right)
            } else {
                redex_by_diff(&o.left, &o2.left)
            }
        }
        (Term::Opr(o), _) => match (&o.left, &o.right) {
            (Term::Lit(a), Term::Lit(b)) => Some(PotentialRedex::new(o.op, Value(*a), Value(*b))),
            _ => None,
        },
        _ => None,
    }
}

fn refocus_inputs() -> (crate::harness::ContextEnumeration<u64>, Vec<T>) {
    (
        enumerate_contexts(&EnumSpec::contexts(3, 3)),
        enumerate_terms(&EnumSpec::terms(2, 3)),
    )
}

fn golden_traces() -> Outcome {
    let cases = [
        ("(1 + 10) + (2 + 20)", vec!["11 + (2 + 20)", "11 + 22", "33", "= 33"]),
        (
            "(1 - (5 + 5)) - (2 - 20)",
            vec!["(1 - 10) - (2 - 20)", "numerical underflow: -9"],
        ),
    ];
    check_all(cases, |(src, expected)| {
        let t: T = parse(src).map_err(|e| e.to_string())?;
        let (reducts, result) = trace_kc_rb(&t).map_err(|e| e.to_string())?;
        let mut lines: Vec<String> = reducts.iter().map(ToString::to_string).collect();
        lines.push(result.to_string());
        ensure(lines == expected, || format!("{src}: got {lines:?}"))
    })
}

fn round_trip() -> Outcome {
    check_all(standard_terms::<u64>(), |t| {
        let printed = t.to_string();
        ensure(parse::<u64>(&printed).as_ref() == Ok(&t), || printed.to_string())
    })
}

fn one_step_agreement() -> Outcome {
    check_all(standard_terms::<u64>(), |t| {
        let reference = reduce_d(&t);
        let others = [
            ("reduce3", reduce3(&t)),
            ("reduce2", reduce2(&t)),
            ("reduce_kk", reduce_kk(&t)),
            ("reduce_kc", crate::context::reduce_kc(&t)),
        ];
        for (name, r) in others {
            ensure(r == reference, || {
                format!("{t}: {name} gave {r:?}, reduce_d gave {reference:?}")
            })?;
        }
        Ok(())
    })
}

fn step_decrease() -> Outcome {
    check_all(standard_terms::<u64>(), |t| match reduce_d(&t) {
        ValueOrTermOrStuck::Nxt(next) => ensure(next.op_count() + 1 == t.op_count(), || format!("{t} -> {next}")),
        _ => Ok(()),
    })
}

fn tower_agreement() -> Outcome {
    check_all(standard_terms::<u64>(), |t| {
        let all = normalize_all(&t);
        let reference = &all[0].1;
        ensure(reference.is_ok(), || format!("{t}: direct faulted: {reference:?}"))?;
        for (s, r) in &all[1..] {
            ensure(r == reference, || {
                format!("{t}: {s} gave {r:?}, direct gave {reference:?}")
            })?;
        }
        Ok(())
    })
}

fn fuel_sufficiency() -> Outcome {
    check_all(standard_terms::<u64>(), |t| {
        let tight = normalize_d(&t).map_err(|e| format!("{t}: {e}"))?;
        let loose = normalize_d_with_fuel(&t, Fuel::new(t.op_count() + 10)).map_err(|e| format!("{t}: {e}"))?;
        ensure(tight == loose, || format!("{t}: extra fuel changed the result"))
    })
}

fn stuck_characterization() -> Outcome {
    check_all(standard_terms::<u64>(), |t| {
        let (reducts, result) = trace_d(&t).map_err(|e| e.to_string())?;
        let last = reducts.last().unwrap_or(&t);
        let underflows = match decompose_kc(last) {
            DecompositionKC::Dec(pr, _) => pr.op == Operator::Sub && pr.left.0 < pr.right.0,
            DecompositionKC::Val(_) => false,
        };
        ensure(underflows == matches!(result, NormalResult::Wrong(_)), || {
            format!("{t}: {result}")
        })
    })
}

fn discontinuity() -> Outcome {
    let stuck: Vec<T> = standard_terms::<u64>()
        .into_iter()
        .filter(|t| matches!(reduce_d(t), ValueOrTermOrStuck::Stuck(_)))
        .collect();
    check_all(stuck, |t| {
        let (_, undelimited) = reduce3_c_counted(&t, Box::new(|r| r));
        let (_, delimited) = reduce2_c_counted(&t, Box::new(ValueOrTermOrStuck::from));
        ensure(delimited < undelimited, || {
            format!("{t}: delimited applied {delimited}, undelimited {undelimited}")
        })
    })
}

fn there_and_back() -> Outcome {
    check_all(standard_terms::<u64>(), |t| {
        if let DecompositionKC::Dec(pr, ctx) = decompose_kc(&t) {
            ensure(recompose_io(&ctx, pr.to_term()) == t, || format!("{t}: context"))?;
        }
        if let ValueOrDecompositionKK::Dec(pr, _, kr) = decompose_kk(&t) {
            ensure(kr(pr.to_term()) == t, || format!("{t}: recomposing continuation"))?;
        }
        Ok(())
    })
}

fn leftmost_innermost() -> Outcome {
    check_all(standard_terms::<u64>(), |t| match (reduce_d(&t), decompose_kk(&t)) {
        (ValueOrTermOrStuck::Nxt(next), ValueOrDecompositionKK::Dec(pr, _, _)) => {
            let expected = redex_by_diff(&t, &next);
            ensure(expected.as_ref() == Some(&pr), || {
                format!("{t}: decomposed {pr}, reduced {expected:?}")
            })
        }
        (ValueOrTermOrStuck::Nxt(_), _) => Err(format!("{t}: reducible but no decomposition")),
        _ => Ok(()),
    })
}

fn refocusing() -> Outcome {
    let (contexts, terms) = refocus_inputs();
    check_indexed(contexts.len(), |i| {
        let ctx = contexts.get(i).expect("index in range");
        for t in &terms {
            ensure(refocus_property(&ctx, t), || format!("C = {ctx}, t = {t}"))?;
        }
        Ok(())
    })
}

fn io_oi_reversal() -> Outcome {
    let (contexts, terms) = refocus_inputs();
    check_indexed(contexts.len(), |i| {
        let ctx = contexts.get(i).expect("index in range");
        let reversed = ctx.reversed();
        for t in &terms {
            ensure(
                recompose_oi(&ctx, t.clone()) == recompose_io(&reversed, t.clone()),
                || format!("C = {ctx}, t = {t}"),
            )?;
        }
        Ok(())
    })
}

fn corr() -> Outcome {
    let reducible = enumerate_terms::<u64>(&EnumSpec::terms(3, 3))
        .into_iter()
        .filter(|t| matches!(decompose_kc(t), DecompositionKC::Dec(..)));
    check_all(reducible, |t| ensure(probe_corr(&t), || format!("{t}")))
}

fn rb_traces_match_direct() -> Outcome {
    check_all(standard_terms::<u64>(), |t| {
        let direct = trace_d(&t).map_err(|e| e.to_string())?;
        let rb = trace_kc_rb(&t).map_err(|e| e.to_string())?;
        ensure(direct == rb, || format!("{t}"))
    })
}

fn machine_bound() -> Outcome {
    check_all(standard_terms::<u64>(), |t| {
        let run = machine_run(&t).map_err(|e| format!("{t}: {e}"))?;
        ensure(run.steps <= step_budget(&t), || format!("{t}: {} steps", run.steps))
    })
}

fn fusion_fidelity() -> Outcome {
    check_all(standard_terms::<u64>(), |t| {
        let states = machine_trace(&t).map_err(|e| e.to_string())?;
        let fused: Vec<_> = states.iter().filter_map(|s| s.pending_redex()).collect();
        let (decompositions, _) = trace_kc_rf(&t).map_err(|e| e.to_string())?;
        let unfused: Vec<_> = decompositions.into_iter().map(|(pr, _)| pr).collect();
        ensure(fused == unfused, || format!("{t}"))
    })
}

fn deforestation() -> Outcome {
    let rows: Vec<_> = [16usize, 32, 64].into_iter().map(crate::harness::bench_row).collect();
    let mut checks: Vec<(String, bool)> = Vec::new();
    for row in &rows {
        checks.push((format!("k={} rf_recompose = 0", row.k), row.rf_recompose == 0));
    }
    for w in rows.windows(2) {
        let rb = w[1].rb_visits as f64 / w[0].rb_visits as f64;
        let rf = w[1].rf_visits as f64 / w[0].rf_visits as f64;
        checks.push((format!("k={} rb ratio {rb:.3}", w[1].k), (3.5..=4.5).contains(&rb)));
        checks.push((format!("k={} rf ratio {rf:.3}", w[1].k), (1.8..=2.2).contains(&rf)));
    }
    let last = &rows[2];
    let speedup = last.rb_visits as f64 / last.rf_visits as f64;
    checks.push((format!("k=64 rb/rf {speedup:.3}"), speedup >= 8.0));
    let chain_ok = normalize_d(&chain::<u64>(64)) == Ok(NormalResult::Val(Value(65)));
    checks.push(("chain(64) normalizes to 65".into(), chain_ok));
    check_all(checks, |(what, ok)| ensure(ok, || what))
}

fn counters_agree_with_results() -> Outcome {
    check_all(standard_terms::<u64>(), |t| {
        let (rb, _) = normalize_kc_rb_counted(&t).map_err(|e| e.to_string())?;
        let (rf, counter) = normalize_kc_rf_counted(&t).map_err(|e| e.to_string())?;
        ensure(rb == rf && counter.recompose_steps == 0, || format!("{t}"))
    })
}

pub fn properties() -> Vec<Property> {
    vec![
        Property {
            name: "golden traces",
            check: golden_traces,
        },
        Property {
            name: "parse/print round trip",
            check: round_trip,
        },
        Property {
            name: "one-step reducers agree",
            check: one_step_agreement,
        },
        Property {
            name: "step removes one operator",
            check: step_decrease,
        },
        Property {
            name: "tower equivalence",
            check: tower_agreement,
        },
        Property {
            name: "fuel sufficiency",
            check: fuel_sufficiency,
        },
        Property {
            name: "stuck characterization",
            check: stuck_characterization,
        },
        Property {
            name: "delimited short-circuit",
            check: discontinuity,
        },
        Property {
            name: "there and back",
            check: there_and_back,
        },
        Property {
            name: "leftmost-innermost redex",
            check: leftmost_innermost,
        },
        Property {
            name: "refocusing",
            check: refocusing,
        },
        Property {
            name: "io/oi reversal",
            check: io_oi_reversal,
        },
        Property {
            name: "corr",
            check: corr,
        },
        Property {
            name: "rb traces match direct",
            check: rb_traces_match_direct,
        },
        Property {
            name: "rf never recomposes",
            check: counters_agree_with_results,
        },
        Property {
            name: "machine step budget",
            check: machine_bound,
        },
        Property {
            name: "fusion fidelity",
            check: fusion_fidelity,
        },
        Property {
            name: "deforestation",
            check: deforestation,
        },
    ]
}

pub fn run(property: &Property) -> PropertyReport {
    let start = Instant::now();
    let outcome = (property.check)();
    PropertyReport {
        name: property.name,
        outcome,
        elapsed: start.elapsed(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(src: &str) -> T {
        parse(src).unwrap()
    }

    #[test]
    fn diff_recovers_the_contracted_redex() {
        let t = p("(1 + 10) + (2 + 20)");
        assert_eq!(
            redex_by_diff(&t, &p("11 + (2 + 20)")),
            Some(PotentialRedex::new(Operator::Add, Value(1), Value(10)))
        );
        assert_eq!(
            redex_by_diff(&p("11 + 22"), &p("33")),
            Some(PotentialRedex::new(Operator::Add, Value(11), Value(22)))
        );
        assert_eq!(
            redex_by_diff(&p("1 + (0 + 1)"), &p("1 + 1")),
            Some(PotentialRedex::new(Operator::Add, Value(0), Value(1)))
        );
    }

    #[test]
    fn check_all_reports_the_first_failure() {
        let out = check_all(0..10, |i| ensure(i < 3, || format!("{i}")));
        assert_eq!(
            out,
            Outcome {
                cases: 4,
                first_failure: Some("3".into())
            }
        );
    }

    #[test]
    fn cheap_properties_pass() {
        for prop in properties() {
            if matches!(prop.name, "refocusing" | "io/oi reversal") {
                continue;
            }
            let report = run(&prop);
            assert!(report.outcome.passed(), "{}: {:?}", prop.name, report.outcome);
        }
    }
}
