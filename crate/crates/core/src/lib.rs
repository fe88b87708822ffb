//! A tower of inter-derived semantics for arithmetic expressions over
//! naturals with addition and subtraction, where subtraction may underflow.
//!
//! From bottom to top:
//!
//! * [`direct`]: the structural one-step reducer and its fueled iteration,
//!   the reference every other rung is checked against;
//! * [`cps`]: the reducer with an undelimited, then a delimited continuation;
//! * [`kk`]: decomposition with a decomposing and a recomposing continuation,
//!   and both reduction-based and reduction-free normalization over it;
//! * [`context`]: the first-order counterpart, where the recomposing
//!   continuation is a list of control frames;
//! * [`machine`]: the eval/continue abstract machine obtained by fusing the
//!   reduction-free loop with decomposition.
//!
//! Everything is generic over the literal type through [`Natural`]. The
//! aliases at the crate root fix it to `u64`; the [`big`] module fixes it to
//! an unbounded natural.

pub mod context;
pub mod cps;
pub mod direct;
pub mod fault;
pub mod harness;
pub mod kk;
pub mod machine;
pub mod natural;
pub mod parse;
pub mod suite;
pub mod syntax;
pub mod tower;

pub use fault::{Fault, Fuel};
pub use natural::Natural;
pub use parse::ParseError;
pub use syntax::Operator;
pub use tower::Semantics;

/// The default literal type.
pub type Nat = u64;

pub type Term = syntax::Term<Nat>;
pub type Value = syntax::Value<Nat>;
pub type PotentialRedex = syntax::PotentialRedex<Nat>;
pub type NormalResult = syntax::NormalResult<Nat>;
pub type ControlFrame = context::ControlFrame<Nat>;
pub type Context = context::Context<Nat>;
pub type DecompositionKC = context::DecompositionKC<Nat>;
pub type MachineState = machine::MachineState<Nat>;

/// The same types over unbounded naturals.
pub mod big {
    pub use num_bigint::BigUint as Nat;

    pub type Term = crate::syntax::Term<Nat>;
    pub type Value = crate::syntax::Value<Nat>;
    pub type PotentialRedex = crate::syntax::PotentialRedex<Nat>;
    pub type NormalResult = crate::syntax::NormalResult<Nat>;
    pub type ControlFrame = crate::context::ControlFrame<Nat>;
    pub type Context = crate::context::Context<Nat>;
    pub type DecompositionKC = crate::context::DecompositionKC<Nat>;
    pub type MachineState = crate::machine::MachineState<Nat>;
}
