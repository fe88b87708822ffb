use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use refocus_cli::{Output, TraceMode};
use refocus_core::Semantics;

const EXIT_CODES: &str = "\
Exit status:
  0  the expression evaluated to a value
  1  evaluation got stuck on a numerical underflow
  2  the expression did not parse
  3  the semantics disagree, or a self-test property failed
  4  internal fault (fuel or step budget exhausted)";

/// Evaluate, trace and cross-check arithmetic expressions under a tower of
/// inter-derived semantics.
#[derive(Parser, Debug)]
#[command(name = "refocus", version, after_help = EXIT_CODES)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Normalize an expression and print `= <n>` or the error message.
    Eval {
        /// direct, cps3, cps2, kk-rb, kk-rf, kc-rb, kc-rf, machine or bigstep
        #[arg(long, default_value = "direct")]
        semantics: Semantics,
        /// The expression, or `-` to read it from stdin.
        expr: String,
    },
    /// Print every step of a normalization.
    Trace {
        /// rb: each reduct; rf: each redex and its context; machine: each state
        #[arg(long, default_value = "rb")]
        mode: TraceMode,
        /// The expression, or `-` to read it from stdin.
        expr: String,
    },
    /// Run all nine semantics and check that they agree.
    Compare {
        /// The expression, or `-` to read it from stdin.
        expr: String,
    },
    /// Count decomposition and recomposition work on left-nested chains.
    Bench {
        /// Only `chain` is available.
        #[arg(long, default_value = "chain", value_parser = ["chain"])]
        shape: String,
        /// Chain lengths. Reduction-based work grows quadratically, so sizes in
        /// the tens of thousands take minutes.
        #[arg(long, value_delimiter = ',', default_value = "16,32,64",
              value_parser = clap::value_parser!(u32).range(1..=100_000))]
        sizes: Vec<u32>,
    },
    /// Run the exhaustive oracle suite.
    Selftest {
        /// Skip the sweeps over all enumerated contexts.
        #[arg(long)]
        quick: bool,
    },
}

fn read_expr(expr: String) -> io::Result<String> {
    if expr == "-" {
        let mut buf = String::new();
        io::stdin().read_to_string(&mut buf)?;
        Ok(buf)
    } else {
        Ok(expr)
    }
}

fn emit(out: Output) -> ExitCode {
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    ExitCode::from(out.code as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let expr = |e: String| {
        read_expr(e).unwrap_or_else(|err| {
            eprintln!("cannot read stdin: {err}");
            std::process::exit(refocus_cli::EXIT_PARSE);
        })
    };
    match cli.command {
        Command::Eval { semantics, expr: e } => emit(refocus_cli::eval(&expr(e), semantics)),
        Command::Trace { mode, expr: e } => emit(refocus_cli::trace(&expr(e), mode)),
        Command::Compare { expr: e } => emit(refocus_cli::compare(&expr(e))),
        Command::Bench { shape: _, sizes } => {
            let sizes: Vec<usize> = sizes.into_iter().map(|k| k as usize).collect();
            emit(refocus_cli::bench(&sizes))
        }
        Command::Selftest { quick } => emit(refocus_cli::selftest(quick, |report| {
            let status = if report.outcome.passed() { "ok" } else { "FAILED" };
            eprintln!("{:<28} {status}", report.name);
            let _ = io::stderr().flush();
        })),
    }
}
