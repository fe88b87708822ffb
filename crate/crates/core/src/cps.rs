//! The one-step reducer in continuation-passing style, in two flavours.
//!
//! [`reduce3_c`] takes an undelimited continuation: its answer type is
//! chosen by the caller, and errors travel to it like any other outcome.
//! [`reduce2_c`] takes a delimited continuation whose answer type is fixed;
//! a failed contraction returns its error without applying the continuation.
//!
//! Both count continuation applications so that the short-circuit of the
//! delimited version is observable.

use std::cell::Cell;

use crate::direct::ValueOrTermOrStuck;
use crate::natural::Natural;
use crate::syntax::{contract, term_of_value, ContractumOrError, PotentialRedex, Term, Value};

/// The outcomes a delimited continuation is sent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ValueOrTerm<N> {
    Val(Value<N>),
    Nxt(Term<N>),
}

impl<N> From<ValueOrTerm<N>> for ValueOrTermOrStuck<N> {
    fn from(vt: ValueOrTerm<N>) -> Self {
        match vt {
            ValueOrTerm::Val(v) => ValueOrTermOrStuck::Val(v),
            ValueOrTerm::Nxt(t) => ValueOrTermOrStuck::Nxt(t),
        }
    }
}

/// Undelimited continuation with answer type `A`.
pub type Observer<'a, N, A> = Box<dyn FnOnce(ValueOrTermOrStuck<N>) -> A + 'a>;

/// Delimited continuation.
pub type DelimitedK<'a, N> = Box<dyn FnOnce(ValueOrTerm<N>) -> ValueOrTermOrStuck<N> + 'a>;

fn apply<X, A>(tally: &Cell<usize>, k: impl FnOnce(X) -> A, x: X) -> A {
    tally.set(tally.get() + 1);
    k(x)
}

pub fn reduce3_c<'a, N: Natural, A>(t: &'a Term<N>, k: Observer<'a, N, A>) -> A {
    reduce3_c_counted(t, k).0
}

/// [`reduce3_c`], also returning how many continuations were applied.
pub fn reduce3_c_counted<'a, N: Natural, A>(t: &'a Term<N>, k: Observer<'a, N, A>) -> (A, usize) {
    let tally = Cell::new(0);
    let answer = reduce3_go(t, k, &tally);
    (answer, tally.get())
}

fn reduce3_go<'b, N: Natural, A: 'b>(t: &'b Term<N>, k: Observer<'b, N, A>, tally: &'b Cell<usize>) -> A {
    use ValueOrTermOrStuck::*;
    match t {
        Term::Lit(n) => apply(tally, k, Val(Value(n.clone()))),
        Term::Opr(o) => {
            let (t1, op, t2) = (&o.left, o.op, &o.right);
            reduce3_go(
                t1,
                Box::new(move |r1| match r1 {
                    Stuck(m) => apply(tally, k, Stuck(m)),
                    Nxt(t1p) => apply(tally, k, Nxt(Term::opr(t1p, op, t2.clone()))),
                    Val(v1) => reduce3_go(
                        t2,
                        Box::new(move |r2| match r2 {
                            Stuck(m) => apply(tally, k, Stuck(m)),
                            Nxt(t2p) => apply(tally, k, Nxt(Term::opr(term_of_value(&v1), op, t2p))),
                            Val(v2) => match contract(&PotentialRedex::new(op, v1, v2)) {
                                ContractumOrError::Contractum(c) => apply(tally, k, Nxt(c)),
                                ContractumOrError::Error(m) => apply(tally, k, Stuck(m)),
                            },
                        }),
                        tally,
                    ),
                }),
                tally,
            )
        }
    }
}

/// [`reduce3_c`] at the identity observer.
pub fn reduce3<N: Natural>(t: &Term<N>) -> ValueOrTermOrStuck<N> {
    reduce3_c(t, Box::new(|r| r))
}

pub fn reduce2_c<'a, N: Natural>(t: &'a Term<N>, k: DelimitedK<'a, N>) -> ValueOrTermOrStuck<N> {
    reduce2_c_counted(t, k).0
}

/// [`reduce2_c`], also returning how many continuations were applied.
pub fn reduce2_c_counted<'a, N: Natural>(t: &'a Term<N>, k: DelimitedK<'a, N>) -> (ValueOrTermOrStuck<N>, usize) {
    let tally = Cell::new(0);
    let answer = reduce2_go(t, k, &tally);
    (answer, tally.get())
}

fn reduce2_go<'b, N: Natural>(t: &'b Term<N>, k: DelimitedK<'b, N>, tally: &'b Cell<usize>) -> ValueOrTermOrStuck<N> {
    use ValueOrTerm::*;
    match t {
        Term::Lit(n) => apply(tally, k, Val(Value(n.clone()))),
        Term::Opr(o) => {
            let (t1, op, t2) = (&o.left, o.op, &o.right);
            reduce2_go(
                t1,
                Box::new(move |r1| {
                    match r1 {
                        Nxt(t1p) => apply(tally, k, Nxt(Term::opr(t1p, op, t2.clone()))),
                        Val(v1) => reduce2_go(
                            t2,
                            Box::new(move |r2| {
                                match r2 {
                                    Nxt(t2p) => apply(tally, k, Nxt(Term::opr(term_of_value(&v1), op, t2p))),
                                    Val(v2) => match contract(&PotentialRedex::new(op, v1, v2)) {
                                        ContractumOrError::Contractum(c) => apply(tally, k, Nxt(c)),
                                        // the discontinuity: k is dropped
                                        ContractumOrError::Error(m) => ValueOrTermOrStuck::Stuck(m),
                                    },
                                }
                            }),
                            tally,
                        ),
                    }
                }),
                tally,
            )
        }
    }
}

/// [`reduce2_c`] at the injection of [`ValueOrTerm`] into [`ValueOrTermOrStuck`].
pub fn reduce2<N: Natural>(t: &Term<N>) -> ValueOrTermOrStuck<N> {
    reduce2_c(t, Box::new(ValueOrTermOrStuck::from))
}
