//! The eval/continue abstract machine, and the compositional evaluator it
//! agrees with.
//!
//! The transition function is the reduction-free loop fused with the two
//! modes of first-order decomposition, with contraction inlined: eval mode
//! is term mode, continue mode is context mode, and reaching a `RightOf`
//! frame performs the operation on the spot.

use std::fmt;
use std::sync::Arc;

use crate::context::{Context, ControlFrame};
use crate::fault::Fault;
use crate::natural::Natural;
use crate::syntax::{checked_sum, underflow_message, NormalResult, Operation, Operator, PotentialRedex, Term, Value};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MachineState<N> {
    Eval(Term<N>, Context<N>),
    Continue(Context<N>, Value<N>),
    FinalVal(Value<N>),
    FinalWrong(String),
}

impl<N: Natural> MachineState<N> {
    pub fn initial(t: Term<N>) -> Self {
        MachineState::Eval(t, Context::empty())
    }

    pub fn is_final(&self) -> bool {
        matches!(self, MachineState::FinalVal(_) | MachineState::FinalWrong(_))
    }

    pub fn result(&self) -> Option<NormalResult<N>> {
        match self {
            MachineState::FinalVal(v) => Some(NormalResult::Val(v.clone())),
            MachineState::FinalWrong(m) => Some(NormalResult::Wrong(m.clone())),
            _ => None,
        }
    }

    /// The potential redex this state contracts on its next step, if any.
    pub fn pending_redex(&self) -> Option<PotentialRedex<N>> {
        match self {
            MachineState::Continue(ctx, v) => match ctx.head() {
                Some(ControlFrame::RightOf { left, op }) => Some(PotentialRedex::new(*op, left.clone(), v.clone())),
                _ => None,
            },
            _ => None,
        }
    }
}

/// One line per state; final states print as the evaluation line.
impl<N: Natural> fmt::Display for MachineState<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MachineState::Eval(t, ctx) => write!(f, "eval {t} @ {ctx}"),
            MachineState::Continue(ctx, v) => write!(f, "continue {v} @ {ctx}"),
            MachineState::FinalVal(v) => write!(f, "= {v}"),
            MachineState::FinalWrong(m) => f.write_str(m),
        }
    }
}

pub fn machine_step<N: Natural>(state: MachineState<N>) -> Result<MachineState<N>, Fault> {
    use MachineState::*;
    Ok(match state {
        Eval(Term::Lit(n), ctx) => Continue(ctx, Value(n)),
        Eval(Term::Opr(o), mut ctx) => {
            let Operation { left, op, right } = Arc::unwrap_or_clone(o);
            ctx.push(ControlFrame::LeftOf { op, right });
            Eval(left, ctx)
        }
        Continue(mut ctx, v) => match ctx.pop() {
            None => FinalVal(v),
            Some(ControlFrame::LeftOf { op, right }) => {
                ctx.push(ControlFrame::RightOf { left: v, op });
                Eval(right, ctx)
            }
            Some(ControlFrame::RightOf { left, op }) => match op {
                Operator::Add => Continue(ctx, Value(checked_sum(&left.0, &v.0))),
                Operator::Sub => match left.0.checked_sub(&v.0) {
                    Some(d) => Continue(ctx, Value(d)),
                    None => FinalWrong(underflow_message(&(v.0 - left.0))),
                },
            },
        },
        FinalVal(_) | FinalWrong(_) => return Err(Fault::SteppedFinalState),
    })
}

/// A safe over-approximation of the steps needed to run `t`.
pub fn step_budget<N: Natural>(t: &Term<N>) -> usize {
    4 * t.op_count() + 3
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MachineRun<N> {
    pub result: NormalResult<N>,
    pub steps: usize,
}

/// Runs the machine from `Eval(t, [])` to a final state.
pub fn machine_run<N: Natural>(t: &Term<N>) -> Result<MachineRun<N>, Fault> {
    run_inspect(t, |_| {})
}

/// Every state of a run, initial and final included.
pub fn machine_trace<N: Natural>(t: &Term<N>) -> Result<Vec<MachineState<N>>, Fault> {
    let mut states = Vec::new();
    run_inspect(t, |s| states.push(s.clone()))?;
    Ok(states)
}

fn run_inspect<N: Natural>(t: &Term<N>, mut inspect: impl FnMut(&MachineState<N>)) -> Result<MachineRun<N>, Fault> {
    let budget = step_budget(t);
    let mut state = MachineState::initial(t.clone());
    inspect(&state);
    let mut steps = 0;
    while !state.is_final() {
        if steps == budget {
            return Err(Fault::StepBudgetExhausted { budget });
        }
        state = machine_step(state)?;
        steps += 1;
        inspect(&state);
    }
    Ok(MachineRun {
        result: state.result().expect("final state"),
        steps,
    })
}

/// The compositional evaluator: evaluate both operands left to right,
/// short-circuiting on the first error.
pub fn big_step_eval<N: Natural>(t: &Term<N>) -> NormalResult<N> {
    match t {
        Term::Lit(n) => NormalResult::Val(Value(n.clone())),
        Term::Opr(o) => {
            let (t1, op, t2) = (&o.left, o.op, &o.right);
            let v1 = match big_step_eval(t1) {
                NormalResult::Val(v) => v.0,
                wrong => return wrong,
            };
            let v2 = match big_step_eval(t2) {
                NormalResult::Val(v) => v.0,
                wrong => return wrong,
            };
            match op {
                Operator::Add => NormalResult::Val(Value(checked_sum(&v1, &v2))),
                Operator::Sub => match v1.checked_sub(&v2) {
                    Some(d) => NormalResult::Val(Value(d)),
                    None => NormalResult::Wrong(underflow_message(&(v2 - v1))),
                },
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;
    use crate::syntax::Operator::{Add, Sub};
    use MachineState::*;

    fn p(src: &str) -> Term<u64> {
        parse(src).unwrap()
    }

    fn one_frame(frame: ControlFrame<u64>) -> Context<u64> {
        Context::from_head_first([frame])
    }

    #[test]
    fn transitions() {
        assert_eq!(
            machine_step(Eval(p("5"), Context::empty())),
            Ok(Continue(Context::empty(), Value(5)))
        );
        assert_eq!(
            machine_step(Continue(one_frame(ControlFrame::right_of(Value(11), Add)), Value(22))),
            Ok(Continue(Context::empty(), Value(33)))
        );
        assert_eq!(
            machine_step(Continue(one_frame(ControlFrame::right_of(Value(1), Sub)), Value(10))),
            Ok(FinalWrong("numerical underflow: -9".into()))
        );
        assert_eq!(
            machine_step(Eval(p("1 + 2"), Context::empty())),
            Ok(Eval(p("1"), one_frame(ControlFrame::left_of(Add, p("2")))))
        );
        assert_eq!(
            machine_step(Continue(one_frame(ControlFrame::left_of(Add, p("2"))), Value(1))),
            Ok(Eval(p("2"), one_frame(ControlFrame::right_of(Value(1), Add))))
        );
    }

    #[test]
    fn final_states_do_not_step() {
        assert_eq!(machine_step(FinalVal(Value(1u64))), Err(Fault::SteppedFinalState));
        assert_eq!(
            machine_step(FinalWrong::<u64>("x".into())),
            Err(Fault::SteppedFinalState)
        );
    }

    #[test]
    fn runs() {
        assert_eq!(
            machine_run(&p("9")),
            Ok(MachineRun {
                result: NormalResult::Val(Value(9)),
                steps: 2
            })
        );
        assert_eq!(
            machine_run(&p("(1 + 10) + (2 + 20)")).unwrap().result,
            NormalResult::Val(Value(33))
        );
    }

    #[test]
    fn trace_rendering() {
        let lines: Vec<String> = machine_trace(&p("1 - 10"))
            .unwrap()
            .iter()
            .map(ToString::to_string)
            .collect();
        assert_eq!(
            lines,
            [
                "eval 1 - 10 @ []",
                "eval 1 @ [] - 10",
                "continue 1 @ [] - 10",
                "eval 10 @ 1 - []",
                "continue 10 @ 1 - []",
                "numerical underflow: -9",
            ]
        );
    }

    #[test]
    fn big_step_examples() {
        assert_eq!(big_step_eval(&p("4")), NormalResult::Val(Value(4)));
        assert_eq!(
            big_step_eval(&p("(1 - (5 + 5)) - (2 - 20)")),
            NormalResult::Wrong("numerical underflow: -9".into())
        );
        assert_eq!(big_step_eval(&p("(1 + 10) + (2 + 20)")), NormalResult::Val(Value(33)));
    }
}
