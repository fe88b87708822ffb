//! The nine normalizers of the derivation, selectable by name.

use std::fmt;
use std::str::FromStr;

use crate::context::{normalize_kc_rb, normalize_kc_rf};
use crate::cps::{reduce2, reduce3};
use crate::direct::{fuel_for, iterate_reducer, normalize_d};
use crate::fault::Fault;
use crate::kk::{normalize_kk_rb, normalize_kk_rf};
use crate::machine::{big_step_eval, machine_run};
use crate::natural::Natural;
use crate::syntax::{NormalResult, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Semantics {
    Direct,
    Cps3,
    Cps2,
    KkRb,
    KkRf,
    KcRb,
    KcRf,
    Machine,
    BigStep,
}

impl Semantics {
    pub const ALL: [Semantics; 9] = [
        Semantics::Direct,
        Semantics::Cps3,
        Semantics::Cps2,
        Semantics::KkRb,
        Semantics::KkRf,
        Semantics::KcRb,
        Semantics::KcRf,
        Semantics::Machine,
        Semantics::BigStep,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Semantics::Direct => "direct",
            Semantics::Cps3 => "cps3",
            Semantics::Cps2 => "cps2",
            Semantics::KkRb => "kk-rb",
            Semantics::KkRf => "kk-rf",
            Semantics::KcRb => "kc-rb",
            Semantics::KcRf => "kc-rf",
            Semantics::Machine => "machine",
            Semantics::BigStep => "bigstep",
        }
    }

    pub fn normalize<N: Natural>(self, t: &Term<N>) -> Result<NormalResult<N>, Fault> {
        match self {
            Semantics::Direct => normalize_d(t),
            Semantics::Cps3 => iterate_reducer(reduce3, t, fuel_for(t)),
            Semantics::Cps2 => iterate_reducer(reduce2, t, fuel_for(t)),
            Semantics::KkRb => normalize_kk_rb(t),
            Semantics::KkRf => normalize_kk_rf(t),
            Semantics::KcRb => normalize_kc_rb(t),
            Semantics::KcRf => normalize_kc_rf(t),
            Semantics::Machine => machine_run(t).map(|run| run.result),
            Semantics::BigStep => Ok(big_step_eval(t)),
        }
    }
}

impl fmt::Display for Semantics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("unknown semantics {0:?}")]
pub struct UnknownSemantics(pub String);

impl FromStr for Semantics {
    type Err = UnknownSemantics;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Semantics::ALL
            .into_iter()
            .find(|sem| sem.name() == s)
            .ok_or_else(|| UnknownSemantics(s.to_string()))
    }
}

/// Runs every semantics on `t`, in [`Semantics::ALL`] order.
pub fn normalize_all<N: Natural>(t: &Term<N>) -> Vec<(Semantics, Result<NormalResult<N>, Fault>)> {
    Semantics::ALL.into_iter().map(|s| (s, s.normalize(t))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;
    use crate::syntax::Value;

    #[test]
    fn names_round_trip() {
        for s in Semantics::ALL {
            assert_eq!(s.name().parse::<Semantics>(), Ok(s));
        }
        assert!("cek".parse::<Semantics>().is_err());
    }

    #[test]
    fn all_agree_on_the_worked_examples() {
        let t: Term<u64> = parse("(1 + 10) + (2 + 20)").unwrap();
        for (s, r) in normalize_all(&t) {
            assert_eq!(r, Ok(NormalResult::Val(Value(33))), "{s}");
        }
        let t: Term<u64> = parse("0 - 1").unwrap();
        for (s, r) in normalize_all(&t) {
            assert_eq!(r, Ok(NormalResult::Wrong("numerical underflow: -1".into())), "{s}");
        }
    }
}
