//! First-order reduction contexts.
//!
//! A [`Context`] is a list of [`ControlFrame`]s. Read inside-out, its head
//! is the innermost frame, which is the order decomposition accumulates
//! frames in. Read outside-in, its head is the outermost frame. The two
//! readings of the same hole are reverses of each other.
//!
//! Decomposition is an iterative two-mode traversal: term mode descends
//! into the leftmost unevaluated subterm, context mode dispatches on the
//! innermost frame once a value is known.

use std::fmt;

use smallvec::SmallVec;

use crate::direct::{fuel_for, ValueOrTermOrStuck};
use crate::fault::{Fault, Fuel};
use crate::natural::Natural;
use crate::syntax::{
    contract, fmt_operand, term_of_value, ContractumOrError, NormalResult, Operator, PotentialRedex, Term, Value,
};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ControlFrame<N> {
    /// `[] op right`: the left operand is being evaluated.
    LeftOf { op: Operator, right: Term<N> },
    /// `left op []`: the left operand is already a value.
    RightOf { left: Value<N>, op: Operator },
}

impl<N: Natural> ControlFrame<N> {
    pub fn left_of(op: Operator, right: Term<N>) -> Self {
        ControlFrame::LeftOf { op, right }
    }

    pub fn right_of(left: Value<N>, op: Operator) -> Self {
        ControlFrame::RightOf { left, op }
    }

    /// Fills the hole of this frame with `t`.
    pub fn plug(&self, t: Term<N>) -> Term<N> {
        match self {
            ControlFrame::LeftOf { op, right } => Term::opr(t, *op, right.clone()),
            ControlFrame::RightOf { left, op } => Term::opr(term_of_value(left), *op, t),
        }
    }
}

/// A list of control frames.
///
/// Frames are stored with the head of the list last, so pushing and popping
/// the head is O(1). [`Context::iter`] walks from the head.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Context<N> {
    stack: SmallVec<[ControlFrame<N>; 8]>,
}

impl<N: Natural> Context<N> {
    pub fn empty() -> Self {
        Context { stack: SmallVec::new() }
    }

    /// Builds a context from frames listed head first.
    pub fn from_head_first<I: IntoIterator<Item = ControlFrame<N>>>(frames: I) -> Self {
        let mut stack: SmallVec<_> = frames.into_iter().collect();
        stack.reverse();
        Context { stack }
    }

    pub fn len(&self) -> usize {
        self.stack.len()
    }

    pub fn is_empty(&self) -> bool {
        self.stack.is_empty()
    }

    pub fn head(&self) -> Option<&ControlFrame<N>> {
        self.stack.last()
    }

    pub fn push(&mut self, frame: ControlFrame<N>) {
        self.stack.push(frame);
    }

    pub fn pop(&mut self) -> Option<ControlFrame<N>> {
        self.stack.pop()
    }

    /// Frames from the head of the list onwards.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = &ControlFrame<N>> + ExactSizeIterator {
        self.stack.iter().rev()
    }

    pub fn reversed(&self) -> Self {
        let mut stack = self.stack.clone();
        stack.reverse();
        Context { stack }
    }
}

/// Renders an inside-out context as the term it denotes, with `[]` marking
/// the hole: `(1 - []) - (2 - 20)`.
impl<N: Natural> fmt::Display for Context<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        struct Operand<'a, N>(&'a Term<N>);
        impl<N: fmt::Display> fmt::Display for Operand<'_, N> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                fmt_operand(self.0, f)
            }
        }

        let mut acc = String::from("[]");
        for (i, frame) in self.iter().enumerate() {
            let inner = if i == 0 { acc } else { format!("({acc})") };
            acc = match frame {
                ControlFrame::LeftOf { op, right } => format!("{inner} {op} {}", Operand(right)),
                ControlFrame::RightOf { left, op } => format!("{left} {op} {inner}"),
            };
        }
        f.write_str(&acc)
    }
}

/// Work counters for one normalization run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct VisitCounter {
    /// Term nodes visited in term mode.
    pub decompose_visits: u64,
    /// Frames plugged during recomposition.
    pub recompose_steps: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum DecompositionKC<N> {
    Val(Value<N>),
    /// A potential redex and its inside-out context.
    Dec(PotentialRedex<N>, Context<N>),
}

/// Plugs `t` into an inside-out context, innermost frame first.
pub fn recompose_io<N: Natural>(ctx: &Context<N>, t: Term<N>) -> Term<N> {
    recompose_io_counted(ctx, t, &mut VisitCounter::default())
}

pub fn recompose_io_counted<N: Natural>(ctx: &Context<N>, t: Term<N>, counter: &mut VisitCounter) -> Term<N> {
    ctx.iter().fold(t, |acc, frame| {
        counter.recompose_steps += 1;
        frame.plug(acc)
    })
}

/// Plugs `t` into an outside-in context: the head frame goes around the
/// recomposition of the rest.
pub fn recompose_oi<N: Natural>(ctx: &Context<N>, t: Term<N>) -> Term<N> {
    fn go<N: Natural>(stack: &[ControlFrame<N>], t: Term<N>) -> Term<N> {
        match stack.split_last() {
            None => t,
            Some((head, rest)) => head.plug(go(rest, t)),
        }
    }
    go(&ctx.stack, t)
}

pub fn decompose_term_kc<N: Natural>(t: &Term<N>, ctx: Context<N>) -> DecompositionKC<N> {
    decompose_term_kc_counted(t, ctx, &mut VisitCounter::default())
}

pub fn decompose_term_kc_counted<N: Natural>(
    t: &Term<N>,
    mut ctx: Context<N>,
    counter: &mut VisitCounter,
) -> DecompositionKC<N> {
    // term mode: walk down the left spine, pushing a frame per operator
    fn descend<N: Natural>(mut t: &Term<N>, ctx: &mut Context<N>, counter: &mut VisitCounter) -> Value<N> {
        loop {
            counter.decompose_visits += 1;
            match t {
                Term::Lit(n) => return Value(n.clone()),
                Term::Opr(o) => match &o.left {
                    // a literal on the left is done at once: skip pushing the
                    // frame that context mode would pop straight away
                    Term::Lit(n) => {
                        counter.decompose_visits += 1;
                        ctx.push(ControlFrame::RightOf {
                            left: Value(n.clone()),
                            op: o.op,
                        });
                        t = &o.right;
                    }
                    _ => {
                        ctx.push(ControlFrame::LeftOf {
                            op: o.op,
                            right: o.right.clone(),
                        });
                        t = &o.left;
                    }
                },
            }
        }
    }

    let mut v = descend(t, &mut ctx, counter);
    // context mode: dispatch on the innermost frame
    loop {
        match ctx.pop() {
            None => return DecompositionKC::Val(v),
            Some(ControlFrame::LeftOf { op, right }) => {
                ctx.push(ControlFrame::RightOf { left: v, op });
                v = descend(&right, &mut ctx, counter);
            }
            Some(ControlFrame::RightOf { left, op }) => {
                return DecompositionKC::Dec(PotentialRedex::new(op, left, v), ctx);
            }
        }
    }
}

pub fn decompose_kc<N: Natural>(t: &Term<N>) -> DecompositionKC<N> {
    decompose_term_kc(t, Context::empty())
}

pub fn reduce_kc<N: Natural>(t: &Term<N>) -> ValueOrTermOrStuck<N> {
    match decompose_kc(t) {
        DecompositionKC::Val(v) => ValueOrTermOrStuck::Val(v),
        DecompositionKC::Dec(pr, ctx) => match contract(&pr) {
            ContractumOrError::Contractum(c) => ValueOrTermOrStuck::Nxt(recompose_io(&ctx, c)),
            ContractumOrError::Error(m) => ValueOrTermOrStuck::Stuck(m),
        },
    }
}

fn run_rb<N: Natural>(
    mut d: DecompositionKC<N>,
    mut fuel: Fuel,
    counter: &mut VisitCounter,
    mut on_reduct: impl FnMut(&Term<N>),
) -> Result<NormalResult<N>, Fault> {
    loop {
        fuel.consume()?;
        match d {
            DecompositionKC::Val(v) => return Ok(NormalResult::Val(v)),
            DecompositionKC::Dec(pr, ctx) => match contract(&pr) {
                ContractumOrError::Error(m) => return Ok(NormalResult::Wrong(m)),
                ContractumOrError::Contractum(c) => {
                    let reduct = recompose_io_counted(&ctx, c, counter);
                    on_reduct(&reduct);
                    d = decompose_term_kc_counted(&reduct, Context::empty(), counter);
                }
            },
        }
    }
}

fn run_rf<N: Natural>(
    mut d: DecompositionKC<N>,
    mut fuel: Fuel,
    counter: &mut VisitCounter,
    mut on_decomposition: impl FnMut(&PotentialRedex<N>, &Context<N>),
) -> Result<NormalResult<N>, Fault> {
    loop {
        fuel.consume()?;
        match d {
            DecompositionKC::Val(v) => return Ok(NormalResult::Val(v)),
            DecompositionKC::Dec(pr, ctx) => {
                on_decomposition(&pr, &ctx);
                match contract(&pr) {
                    ContractumOrError::Error(m) => return Ok(NormalResult::Wrong(m)),
                    ContractumOrError::Contractum(c) => d = decompose_term_kc_counted(&c, ctx, counter),
                }
            }
        }
    }
}

/// Decompose, contract, recompose, and decompose the reduct from its root.
pub fn iterate_kc_rb<N: Natural>(d: DecompositionKC<N>, fuel: Fuel) -> Result<NormalResult<N>, Fault> {
    run_rb(d, fuel, &mut VisitCounter::default(), |_| {})
}

/// Decompose, contract, and keep decomposing from the contractum in its
/// context, never building a reduct.
pub fn iterate_kc_rf<N: Natural>(d: DecompositionKC<N>, fuel: Fuel) -> Result<NormalResult<N>, Fault> {
    run_rf(d, fuel, &mut VisitCounter::default(), |_, _| {})
}

pub fn normalize_kc_rb<N: Natural>(t: &Term<N>) -> Result<NormalResult<N>, Fault> {
    Ok(normalize_kc_rb_counted(t)?.0)
}

pub fn normalize_kc_rf<N: Natural>(t: &Term<N>) -> Result<NormalResult<N>, Fault> {
    Ok(normalize_kc_rf_counted(t)?.0)
}

pub fn normalize_kc_rb_counted<N: Natural>(t: &Term<N>) -> Result<(NormalResult<N>, VisitCounter), Fault> {
    let mut counter = VisitCounter::default();
    let d = decompose_term_kc_counted(t, Context::empty(), &mut counter);
    let result = run_rb(d, fuel_for(t), &mut counter, |_| {})?;
    Ok((result, counter))
}

pub fn normalize_kc_rf_counted<N: Natural>(t: &Term<N>) -> Result<(NormalResult<N>, VisitCounter), Fault> {
    let mut counter = VisitCounter::default();
    let d = decompose_term_kc_counted(t, Context::empty(), &mut counter);
    let result = run_rf(d, fuel_for(t), &mut counter, |_, _| {})?;
    Ok((result, counter))
}

/// Every reduct of the reduction-based run, then its result.
pub fn trace_kc_rb<N: Natural>(t: &Term<N>) -> Result<(Vec<Term<N>>, NormalResult<N>), Fault> {
    let mut reducts = Vec::new();
    let result = run_rb(decompose_kc(t), fuel_for(t), &mut VisitCounter::default(), |r| {
        reducts.push(r.clone())
    })?;
    Ok((reducts, result))
}

/// Every decomposition of the reduction-free run, then its result.
#[allow(clippy::type_complexity)]
pub fn trace_kc_rf<N: Natural>(t: &Term<N>) -> Result<(Vec<(PotentialRedex<N>, Context<N>)>, NormalResult<N>), Fault> {
    let mut steps = Vec::new();
    let result = run_rf(decompose_kc(t), fuel_for(t), &mut VisitCounter::default(), |pr, ctx| {
        steps.push((pr.clone(), ctx.clone()))
    })?;
    Ok((steps, result))
}

/// Whether decomposing the recomposition of `t` in `ctx` from the root gives
/// the same result as decomposing `t` directly in `ctx`.
pub fn refocus_property<N: Natural>(ctx: &Context<N>, t: &Term<N>) -> bool {
    decompose_kc(&recompose_io(ctx, t.clone())) == decompose_term_kc(t, ctx.clone())
}

/// Probe terms for [`probe_corr`]: every term with at most one operator and
/// literals in `0..=2`.
pub fn corr_probes<N: Natural>() -> Vec<Term<N>> {
    crate::harness::enumerate_terms(&crate::harness::EnumSpec::terms(1, 2))
}

/// Checks that the higher-order and first-order decompositions of `t` agree:
/// same potential redex, and the recomposing continuation behaves like
/// recomposition in the context on every probe term.
pub fn probe_corr<N: Natural>(t: &Term<N>) -> bool {
    use crate::kk::{decompose_kk, ValueOrDecompositionKK};
    match (decompose_kk(t), decompose_kc(t)) {
        (ValueOrDecompositionKK::Val(v1), DecompositionKC::Val(v2)) => v1 == v2,
        (ValueOrDecompositionKK::Dec(pr1, _, kr), DecompositionKC::Dec(pr2, ctx)) => {
            pr1 == pr2
                && corr_probes()
                    .into_iter()
                    .all(|p| kr(p.clone()) == recompose_io(&ctx, p))
        }
        _ => false,
    }
}
