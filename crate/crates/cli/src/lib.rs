//! Command implementations for the `refocus` binary.
//!
//! Every command renders into an [`Output`] instead of printing, so the
//! golden and acceptance tests can diff the exact bytes.
//!
//! Exit codes: 0 value, 1 stuck (underflow), 2 parse error, 3 disagreement
//! between semantics or a failed self-test, 4 internal fault.

use std::fmt::Write as _;

use refocus_core::context::{trace_kc_rb, trace_kc_rf};
use refocus_core::harness::bench_row;
use refocus_core::machine::machine_trace;
use refocus_core::parse::parse_bounded;
use refocus_core::suite;
use refocus_core::tower::normalize_all;
use refocus_core::{Fault, Nat, NormalResult, Semantics, Term};

pub const EXIT_VALUE: i32 = 0;
pub const EXIT_STUCK: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_DISAGREE: i32 = 3;
pub const EXIT_FAULT: i32 = 4;

/// Literals above this are rejected at the command line.
pub const MAX_LITERAL: Nat = u32::MAX as Nat;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Output {
    fn line(&mut self, line: impl std::fmt::Display) {
        writeln!(self.stdout, "{line}").expect("writing to a String");
    }

    fn parse_error(err: refocus_core::ParseError) -> Self {
        Output {
            stderr: format!("parse error: {err}\n"),
            code: EXIT_PARSE,
            ..Output::default()
        }
    }

    fn fault(mut self, fault: Fault) -> Self {
        writeln!(self.stderr, "internal fault: {fault}").expect("writing to a String");
        self.code = EXIT_FAULT;
        self
    }

    /// Appends the evaluation line and sets the matching exit code.
    fn finish(mut self, result: &NormalResult) -> Self {
        self.line(result);
        self.code = exit_code(result);
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TraceMode {
    Rb,
    Rf,
    Machine,
}

impl std::str::FromStr for TraceMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "rb" => Ok(TraceMode::Rb),
            "rf" => Ok(TraceMode::Rf),
            "machine" => Ok(TraceMode::Machine),
            other => Err(format!("unknown trace mode {other:?} (expected rb, rf or machine)")),
        }
    }
}

pub fn exit_code(result: &NormalResult) -> i32 {
    match result {
        NormalResult::Val(_) => EXIT_VALUE,
        NormalResult::Wrong(_) => EXIT_STUCK,
    }
}

pub fn parse_expr(src: &str) -> Result<Term, refocus_core::ParseError> {
    parse_bounded(src, &MAX_LITERAL)
}

pub fn eval(src: &str, semantics: Semantics) -> Output {
    let t = match parse_expr(src) {
        Ok(t) => t,
        Err(e) => return Output::parse_error(e),
    };
    match semantics.normalize(&t) {
        Ok(result) => Output::default().finish(&result),
        Err(fault) => Output::default().fault(fault),
    }
}

pub fn trace(src: &str, mode: TraceMode) -> Output {
    let t = match parse_expr(src) {
        Ok(t) => t,
        Err(e) => return Output::parse_error(e),
    };
    let mut out = Output::default();
    match mode {
        TraceMode::Rb => match trace_kc_rb(&t) {
            Ok((reducts, result)) => {
                reducts.iter().for_each(|r| out.line(r));
                out.finish(&result)
            }
            Err(fault) => out.fault(fault),
        },
        TraceMode::Rf => match trace_kc_rf(&t) {
            Ok((steps, result)) => {
                for (pr, ctx) in &steps {
                    out.line(format_args!("{pr} @ {ctx}"));
                }
                out.finish(&result)
            }
            Err(fault) => out.fault(fault),
        },
        TraceMode::Machine => match machine_trace(&t) {
            Ok(states) => {
                // the final state prints as the evaluation line
                let (last, rest) = states.split_last().expect("a run has an initial state");
                rest.iter().for_each(|s| out.line(s));
                out.finish(&last.result().expect("runs end in a final state"))
            }
            Err(fault) => out.fault(fault),
        },
    }
}

pub fn compare(src: &str) -> Output {
    let t = match parse_expr(src) {
        Ok(t) => t,
        Err(e) => return Output::parse_error(e),
    };
    let mut out = Output::default();
    let results = normalize_all(&t);
    for (semantics, result) in &results {
        match result {
            Ok(r) => out.line(format_args!("{:<8} {r}", semantics.name())),
            Err(fault) => out.line(format_args!("{:<8} internal fault: {fault}", semantics.name())),
        }
    }
    let first = &results[0].1;
    let agree = first.is_ok() && results.iter().all(|(_, r)| r == first);
    if agree {
        out.line("AGREE");
        out.code = EXIT_VALUE;
    } else {
        out.line("DISAGREE");
        out.code = EXIT_DISAGREE;
    }
    out
}

pub fn bench(sizes: &[usize]) -> Output {
    let mut out = Output::default();
    out.line(format_args!(
        "{:>6} {:>10} {:>10} {:>12} {:>12} {:>13}",
        "k", "rb_visits", "rf_visits", "rb_recompose", "rf_recompose", "machine_steps"
    ));
    for &k in sizes {
        let row = bench_row(k);
        out.line(format_args!(
            "{:>6} {:>10} {:>10} {:>12} {:>12} {:>13}",
            row.k, row.rb_visits, row.rf_visits, row.rb_recompose, row.rf_recompose, row.machine_steps
        ));
    }
    out
}

/// Runs the oracle suite; `quick` skips the two properties that sweep the
/// full context enumeration.
pub fn selftest(quick: bool, mut progress: impl FnMut(&suite::PropertyReport)) -> Output {
    let mut out = Output::default();
    let mut failed = 0;
    for property in suite::properties() {
        if quick && matches!(property.name, "refocusing" | "io/oi reversal") {
            continue;
        }
        let report = suite::run(&property);
        progress(&report);
        let verdict = if report.outcome.passed() { "PASS" } else { "FAIL" };
        out.line(format_args!(
            "{verdict}  {:<28} {:>12} cases {:>9.2}s",
            report.name,
            report.outcome.cases,
            report.elapsed.as_secs_f64()
        ));
        if let Some(failure) = &report.outcome.first_failure {
            failed += 1;
            out.line(format_args!("      first failure: {failure}"));
        }
    }
    if failed == 0 {
        out.line("all properties hold");
    } else {
        out.line(format_args!("{failed} properties failed"));
        out.code = EXIT_DISAGREE;
    }
    out
}
