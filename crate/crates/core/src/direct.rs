//! Direct-style structural operational semantics: the reference one-step
//! reducer and the fueled reduction-based normalizer built on it.

use crate::fault::{Fault, Fuel};
use crate::natural::Natural;
use crate::syntax::{contract, term_of_value, ContractumOrError, NormalResult, PotentialRedex, Term, Value};

/// Outcome of one reduction step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ValueOrTermOrStuck<N> {
    Val(Value<N>),
    Nxt(Term<N>),
    Stuck(String),
}

/// Enough fuel to normalize `t`: every step removes one operator, and the
/// final step observes a value.
pub fn fuel_for<N: Natural>(t: &Term<N>) -> Fuel {
    Fuel::new(t.op_count() + 1)
}

/// One leftmost-innermost reduction step.
pub fn reduce_d<N: Natural>(t: &Term<N>) -> ValueOrTermOrStuck<N> {
    use ValueOrTermOrStuck::*;
    match t {
        Term::Lit(n) => Val(Value(n.clone())),
        Term::Opr(o) => match reduce_d(&o.left) {
            Stuck(m) => Stuck(m),
            Nxt(t1p) => Nxt(Term::opr(t1p, o.op, o.right.clone())),
            Val(v1) => match reduce_d(&o.right) {
                Stuck(m) => Stuck(m),
                Nxt(t2p) => Nxt(Term::opr(term_of_value(&v1), o.op, t2p)),
                Val(v2) => match contract(&PotentialRedex::new(o.op, v1, v2)) {
                    ContractumOrError::Contractum(c) => Nxt(c),
                    ContractumOrError::Error(m) => Stuck(m),
                },
            },
        },
    }
}

/// Iterates a one-step reducer until it yields a value or gets stuck,
/// spending one unit of fuel per call to the reducer.
pub fn iterate_reducer<N, R>(reduce: R, t: &Term<N>, mut fuel: Fuel) -> Result<NormalResult<N>, Fault>
where
    N: Natural,
    R: Fn(&Term<N>) -> ValueOrTermOrStuck<N>,
{
    iterate_reducer_inspect(reduce, t, &mut fuel, |_| {})
}

fn iterate_reducer_inspect<N, R, F>(
    reduce: R,
    t: &Term<N>,
    fuel: &mut Fuel,
    mut on_reduct: F,
) -> Result<NormalResult<N>, Fault>
where
    N: Natural,
    R: Fn(&Term<N>) -> ValueOrTermOrStuck<N>,
    F: FnMut(&Term<N>),
{
    let mut current = t.clone();
    loop {
        fuel.consume()?;
        match reduce(&current) {
            ValueOrTermOrStuck::Val(v) => return Ok(NormalResult::Val(v)),
            ValueOrTermOrStuck::Stuck(m) => return Ok(NormalResult::Wrong(m)),
            ValueOrTermOrStuck::Nxt(next) => {
                on_reduct(&next);
                current = next;
            }
        }
    }
}

/// Reduction-based normalization with fuel `op_count + 1`.
pub fn normalize_d<N: Natural>(t: &Term<N>) -> Result<NormalResult<N>, Fault> {
    normalize_d_with_fuel(t, fuel_for(t))
}

pub fn normalize_d_with_fuel<N: Natural>(t: &Term<N>, fuel: Fuel) -> Result<NormalResult<N>, Fault> {
    iterate_reducer(reduce_d, t, fuel)
}

/// The reduction sequence of `t`: every reduct in order, then the result.
pub fn trace_d<N: Natural>(t: &Term<N>) -> Result<(Vec<Term<N>>, NormalResult<N>), Fault> {
    let mut reducts = Vec::new();
    let result = iterate_reducer_inspect(reduce_d, t, &mut fuel_for(t), |r| reducts.push(r.clone()))?;
    Ok((reducts, result))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;

    fn p(src: &str) -> Term<u64> {
        parse(src).unwrap()
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(
            reduce_d(&p("(1 + 10) + (2 + 20)")),
            ValueOrTermOrStuck::Nxt(p("11 + (2 + 20)"))
        );
        assert_eq!(
            reduce_d(&p("(1 - 10) - (2 - 20)")),
            ValueOrTermOrStuck::Stuck("numerical underflow: -9".into())
        );
        assert_eq!(reduce_d(&p("42")), ValueOrTermOrStuck::Val(Value(42)));
    }

    #[test]
    fn right_operand_reduces_after_left_is_a_value() {
        assert_eq!(reduce_d(&p("11 + (2 + 20)")), ValueOrTermOrStuck::Nxt(p("11 + 22")));
        assert_eq!(
            reduce_d(&p("3 - (0 - 1)")),
            ValueOrTermOrStuck::Stuck("numerical underflow: -1".into())
        );
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize_d(&p("(1 + 10) + (2 + 20)")), Ok(NormalResult::Val(Value(33))));
        assert_eq!(
            normalize_d(&p("(1 - (5 + 5)) - (2 - 20)")),
            Ok(NormalResult::Wrong("numerical underflow: -9".into()))
        );
        assert_eq!(normalize_d(&p("0")), Ok(NormalResult::Val(Value(0))));
    }

    #[test]
    fn fuel_of_op_count_plus_one_is_tight() {
        let t = p("(1 + 10) + (2 + 20)");
        assert!(normalize_d_with_fuel(&t, Fuel::new(4)).is_ok());
        assert_eq!(
            normalize_d_with_fuel(&t, Fuel::new(3)),
            Err(Fault::FuelExhausted { initial: 3 })
        );
    }

    #[test]
    fn trace_examples() {
        let (reducts, result) = trace_d(&p("(1 + 10) + (2 + 20)")).unwrap();
        let printed: Vec<String> = reducts.iter().map(ToString::to_string).collect();
        assert_eq!(printed, ["11 + (2 + 20)", "11 + 22", "33"]);
        assert_eq!(result, NormalResult::Val(Value(33)));

        let (reducts, result) = trace_d(&p("(1 - (5 + 5)) - (2 - 20)")).unwrap();
        let printed: Vec<String> = reducts.iter().map(ToString::to_string).collect();
        assert_eq!(printed, ["(1 - 10) - (2 - 20)"]);
        assert_eq!(result, NormalResult::Wrong("numerical underflow: -9".into()));

        assert_eq!(trace_d(&p("5")).unwrap(), (vec![], NormalResult::Val(Value(5))));
    }
}
