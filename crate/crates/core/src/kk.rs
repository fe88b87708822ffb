//! Decomposition with two continuations.
//!
//! The decomposing continuation receives the value of the subterm just
//! traversed and carries on looking for the next potential redex. The
//! recomposing continuation plugs a term into the reduction context of the
//! subterm. Both are opaque closures, so everything here is compared
//! extensionally.

use std::fmt;
use std::sync::Arc;

use crate::direct::{fuel_for, ValueOrTermOrStuck};
use crate::fault::{Fault, Fuel};
use crate::natural::Natural;
use crate::syntax::{contract, term_of_value, ContractumOrError, NormalResult, PotentialRedex, Term, Value};

pub type DecomposingK<N> = Arc<dyn Fn(Value<N>) -> ValueOrDecompositionKK<N> + Send + Sync>;
pub type RecomposingK<N> = Arc<dyn Fn(Term<N>) -> Term<N> + Send + Sync>;

pub enum ValueOrDecompositionKK<N> {
    Val(Value<N>),
    Dec(PotentialRedex<N>, DecomposingK<N>, RecomposingK<N>),
}

impl<N: fmt::Debug> fmt::Debug for ValueOrDecompositionKK<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValueOrDecompositionKK::Val(v) => f.debug_tuple("Val").field(v).finish(),
            ValueOrDecompositionKK::Dec(pr, _, _) => {
                f.debug_tuple("Dec").field(pr).field(&"<kd>").field(&"<kr>").finish()
            }
        }
    }
}

impl<N> Clone for ValueOrDecompositionKK<N>
where
    N: Clone,
{
    fn clone(&self) -> Self {
        match self {
            ValueOrDecompositionKK::Val(v) => ValueOrDecompositionKK::Val(v.clone()),
            ValueOrDecompositionKK::Dec(pr, kd, kr) => ValueOrDecompositionKK::Dec(pr.clone(), kd.clone(), kr.clone()),
        }
    }
}

pub fn decompose_term_kk<N: Natural>(
    t: &Term<N>,
    kd: DecomposingK<N>,
    kr: RecomposingK<N>,
) -> ValueOrDecompositionKK<N> {
    match t {
        Term::Lit(n) => kd(Value(n.clone())),
        Term::Opr(o) => {
            let (t1, op, t2) = (&o.left, o.op, &o.right);
            // [] op t2
            let kr_left: RecomposingK<N> = {
                let kr = kr.clone();
                let t2 = t2.clone();
                Arc::new(move |t1p| kr(Term::opr(t1p, op, t2.clone())))
            };
            let t2 = t2.clone();
            let kd_left: DecomposingK<N> = Arc::new(move |v1: Value<N>| {
                // v1 op []
                let kr_right: RecomposingK<N> = {
                    let kr = kr.clone();
                    let v1 = v1.clone();
                    Arc::new(move |t2p| kr(Term::opr(term_of_value(&v1), op, t2p)))
                };
                let kd_right: DecomposingK<N> = {
                    let (kd, kr) = (kd.clone(), kr.clone());
                    Arc::new(move |v2| {
                        ValueOrDecompositionKK::Dec(PotentialRedex::new(op, v1.clone(), v2), kd.clone(), kr.clone())
                    })
                };
                decompose_term_kk(&t2, kd_right, kr_right)
            });
            decompose_term_kk(t1, kd_left, kr_left)
        }
    }
}

pub fn decompose_kk<N: Natural>(t: &Term<N>) -> ValueOrDecompositionKK<N> {
    decompose_term_kk(t, Arc::new(ValueOrDecompositionKK::Val), Arc::new(|t| t))
}

pub fn reduce_kk<N: Natural>(t: &Term<N>) -> ValueOrTermOrStuck<N> {
    match decompose_kk(t) {
        ValueOrDecompositionKK::Val(v) => ValueOrTermOrStuck::Val(v),
        ValueOrDecompositionKK::Dec(pr, _, kr) => match contract(&pr) {
            ContractumOrError::Contractum(c) => ValueOrTermOrStuck::Nxt(kr(c)),
            ContractumOrError::Error(m) => ValueOrTermOrStuck::Stuck(m),
        },
    }
}

/// Reduction-based loop: recompose each reduct, then decompose it afresh.
pub fn iterate_kk_rb<N: Natural>(mut d: ValueOrDecompositionKK<N>, mut fuel: Fuel) -> Result<NormalResult<N>, Fault> {
    loop {
        fuel.consume()?;
        match d {
            ValueOrDecompositionKK::Val(v) => return Ok(NormalResult::Val(v)),
            ValueOrDecompositionKK::Dec(pr, _, kr) => match contract(&pr) {
                ContractumOrError::Error(m) => return Ok(NormalResult::Wrong(m)),
                ContractumOrError::Contractum(c) => d = decompose_kk(&kr(c)),
            },
        }
    }
}

/// Reduction-free loop: decompose the contractum in place.
pub fn iterate_kk_rf<N: Natural>(mut d: ValueOrDecompositionKK<N>, mut fuel: Fuel) -> Result<NormalResult<N>, Fault> {
    loop {
        fuel.consume()?;
        match d {
            ValueOrDecompositionKK::Val(v) => return Ok(NormalResult::Val(v)),
            ValueOrDecompositionKK::Dec(pr, kd, kr) => match contract(&pr) {
                ContractumOrError::Error(m) => return Ok(NormalResult::Wrong(m)),
                ContractumOrError::Contractum(c) => d = decompose_term_kk(&c, kd, kr),
            },
        }
    }
}

pub fn normalize_kk_rb<N: Natural>(t: &Term<N>) -> Result<NormalResult<N>, Fault> {
    iterate_kk_rb(decompose_kk(t), fuel_for(t))
}

pub fn normalize_kk_rf<N: Natural>(t: &Term<N>) -> Result<NormalResult<N>, Fault> {
    iterate_kk_rf(decompose_kk(t), fuel_for(t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;

    fn p(src: &str) -> Term<u64> {
        parse(src).unwrap()
    }

    fn expect_dec(d: ValueOrDecompositionKK<u64>) -> (PotentialRedex<u64>, DecomposingK<u64>, RecomposingK<u64>) {
        match d {
            ValueOrDecompositionKK::Dec(pr, kd, kr) => (pr, kd, kr),
            other => panic!("expected a decomposition, got {other:?}"),
        }
    }

    #[test]
    fn literals_decompose_to_values() {
        assert!(matches!(decompose_kk(&p("7")), ValueOrDecompositionKK::Val(Value(7))));
        assert!(matches!(decompose_kk(&p("0")), ValueOrDecompositionKK::Val(Value(0))));
    }

    #[test]
    fn first_redex_and_its_context() {
        let t = p("(1 + 10) + (2 + 20)");
        let (pr, _, kr) = expect_dec(decompose_kk(&t));
        assert_eq!(
            pr,
            PotentialRedex::new(crate::syntax::Operator::Add, Value(1), Value(10))
        );
        assert_eq!(kr(Term::Lit(11)), p("11 + (2 + 20)"));
        assert_eq!(kr(pr.to_term()), t);
    }

    #[test]
    fn top_level_redex_has_the_identity_context() {
        let (pr, _, kr) = expect_dec(decompose_kk(&p("1 - 10")));
        assert_eq!(pr.to_string(), "1 - 10");
        assert_eq!(kr(Term::Lit(99)), Term::Lit(99));
        let (pr, _, _) = expect_dec(decompose_kk(&p("11 + 22")));
        assert_eq!(pr.to_string(), "11 + 22");
    }

    #[test]
    fn decomposing_continuation_resumes_in_context() {
        // after 1 + 10 contracts, resuming with 11 finds the right operand's redex
        let (_, kd, _) = expect_dec(decompose_kk(&p("(1 + 10) + (2 + 20)")));
        let (pr, _, kr) = expect_dec(kd(Value(11)));
        assert_eq!(pr.to_string(), "2 + 20");
        assert_eq!(kr(Term::Lit(22)), p("11 + 22"));
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(reduce_kk(&p("3")), ValueOrTermOrStuck::Val(Value(3)));
        assert_eq!(
            reduce_kk(&p("(1 + 10) + (2 + 20)")),
            ValueOrTermOrStuck::Nxt(p("11 + (2 + 20)"))
        );
    }

    #[test]
    fn normalizers() {
        for iterate in [iterate_kk_rb::<u64>, iterate_kk_rf::<u64>] {
            let norm = |src: &str| {
                let t = p(src);
                iterate(decompose_kk(&t), fuel_for(&t)).unwrap()
            };
            assert_eq!(norm("9"), NormalResult::Val(Value(9)));
            assert_eq!(norm("(1 + 10) + (2 + 20)"), NormalResult::Val(Value(33)));
            assert_eq!(
                norm("(1 - (5 + 5)) - (2 - 20)"),
                NormalResult::Wrong("numerical underflow: -9".into())
            );
        }
        assert_eq!(normalize_kk_rb(&p("1")), Ok(NormalResult::Val(Value(1))));
        assert_eq!(
            normalize_kk_rf(&p("(1 - (5 + 5)) - (2 - 20)")),
            Ok(NormalResult::Wrong("numerical underflow: -9".into()))
        );
    }

    #[test]
    fn fuel_faults_are_reported() {
        let t = p("(1 + 10) + (2 + 20)");
        assert_eq!(
            iterate_kk_rf(decompose_kk(&t), Fuel::new(3)),
            Err(Fault::FuelExhausted { initial: 3 })
        );
    }
}
