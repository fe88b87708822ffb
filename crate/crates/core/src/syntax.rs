//! The object language: terms, values, potential redexes and contraction.

use std::fmt;
use std::sync::Arc;

use crate::natural::Natural;

/// Binary operators. The derived order (`Add < Sub`) fixes enumeration order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Operator {
    Add,
    Sub,
}

impl Operator {
    pub const ALL: [Operator; 2] = [Operator::Add, Operator::Sub];

    pub fn symbol(self) -> char {
        match self {
            Operator::Add => '+',
            Operator::Sub => '-',
        }
    }
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// Arithmetic expressions over naturals.
///
/// Operator nodes are reference counted so that contexts and reducts can
/// share structure with the term they were built from. Cloning a term costs
/// at most one reference count bump.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term<N> {
    Lit(N),
    Opr(Arc<Operation<N>>),
}

/// The payload of an operator node.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Operation<N> {
    pub left: Term<N>,
    pub op: Operator,
    pub right: Term<N>,
}

impl<N: Natural> Term<N> {
    pub fn lit(n: N) -> Self {
        Term::Lit(n)
    }

    pub fn opr(left: Term<N>, op: Operator, right: Term<N>) -> Self {
        Term::Opr(Arc::new(Operation { left, op, right }))
    }

    pub fn plus(left: Term<N>, right: Term<N>) -> Self {
        Self::opr(left, Operator::Add, right)
    }

    pub fn minus(left: Term<N>, right: Term<N>) -> Self {
        Self::opr(left, Operator::Sub, right)
    }

    /// Number of operator nodes.
    pub fn op_count(&self) -> usize {
        match self {
            Term::Lit(_) => 0,
            Term::Opr(o) => 1 + o.left.op_count() + o.right.op_count(),
        }
    }

    pub fn is_literal(&self) -> bool {
        matches!(self, Term::Lit(_))
    }
}

/// Writes `t` as an operand: literals bare, compound terms parenthesised.
pub(crate) fn fmt_operand<N: fmt::Display>(t: &Term<N>, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match t {
        Term::Lit(n) => write!(f, "{n}"),
        Term::Opr(..) => write!(f, "({t})"),
    }
}

impl<N: fmt::Display> fmt::Display for Term<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Lit(n) => write!(f, "{n}"),
            Term::Opr(o) => {
                fmt_operand(&o.left, f)?;
                write!(f, " {} ", o.op.symbol())?;
                fmt_operand(&o.right, f)
            }
        }
    }
}

/// A fully reduced term.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Value<N>(pub N);

impl<N: Natural> Value<N> {
    pub fn to_term(&self) -> Term<N> {
        term_of_value(self)
    }
}

impl<N: fmt::Display> fmt::Display for Value<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// An operator applied to two values: the unit of contraction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PotentialRedex<N> {
    pub op: Operator,
    pub left: Value<N>,
    pub right: Value<N>,
}

impl<N: Natural> PotentialRedex<N> {
    pub fn new(op: Operator, left: Value<N>, right: Value<N>) -> Self {
        PotentialRedex { op, left, right }
    }

    pub fn to_term(&self) -> Term<N> {
        term_of_potential_redex(self)
    }
}

impl<N: fmt::Display> fmt::Display for PotentialRedex<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.left, self.op.symbol(), self.right)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ContractumOrError<N> {
    Contractum(Term<N>),
    Error(String),
}

/// The observable outcome of normalization.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum NormalResult<N> {
    Val(Value<N>),
    Wrong(String),
}

impl<N> NormalResult<N> {
    pub fn is_value(&self) -> bool {
        matches!(self, NormalResult::Val(_))
    }
}

/// Renders as the evaluation line: `= <n>` for a value, the bare message
/// otherwise.
impl<N: fmt::Display> fmt::Display for NormalResult<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormalResult::Val(v) => write!(f, "= {v}"),
            NormalResult::Wrong(msg) => f.write_str(msg),
        }
    }
}

/// `numerical underflow: -<gap>`
pub fn underflow_message<N: fmt::Display>(gap: &N) -> String {
    format!("numerical underflow: -{gap}")
}

pub fn term_of_value<N: Natural>(v: &Value<N>) -> Term<N> {
    Term::Lit(v.0.clone())
}

pub fn term_of_potential_redex<N: Natural>(pr: &PotentialRedex<N>) -> Term<N> {
    Term::opr(term_of_value(&pr.left), pr.op, term_of_value(&pr.right))
}

/// Adds two naturals. Overflow of a bounded scalar is a fault, not an error
/// result of the object language.
pub(crate) fn checked_sum<N: Natural>(a: &N, b: &N) -> N {
    a.checked_add(b)
        .unwrap_or_else(|| panic!("literal overflow: {a} + {b} exceeds the scalar width"))
}

/// Performs the operation a potential redex denotes.
///
/// Subtraction whose minuend is smaller than its subtrahend is not an actual
/// redex and yields the underflow message.
pub fn contract<N: Natural>(pr: &PotentialRedex<N>) -> ContractumOrError<N> {
    let (n1, n2) = (&pr.left.0, &pr.right.0);
    match pr.op {
        Operator::Add => ContractumOrError::Contractum(Term::Lit(checked_sum(n1, n2))),
        Operator::Sub => match n1.checked_sub(n2) {
            Some(d) => ContractumOrError::Contractum(Term::Lit(d)),
            None => ContractumOrError::Error(underflow_message(&(n2.clone() - n1.clone()))),
        },
    }
}
