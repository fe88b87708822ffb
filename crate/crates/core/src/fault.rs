use thiserror::Error;

/// Internal faults. None of these is an outcome of the object language;
/// each one means an invariant of the implementation was broken.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Fault {
    #[error("fuel exhausted after {initial} iterations with a reduct still pending")]
    FuelExhausted { initial: usize },
    #[error("abstract machine did not halt within {budget} steps")]
    StepBudgetExhausted { budget: usize },
    #[error("abstract machine stepped from a final state")]
    SteppedFinalState,
}

/// A budget of loop iterations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fuel {
    initial: usize,
    remaining: usize,
}

impl Fuel {
    pub fn new(n: usize) -> Self {
        Fuel {
            initial: n,
            remaining: n,
        }
    }

    pub fn remaining(&self) -> usize {
        self.remaining
    }

    /// Takes one unit, faulting if none is left.
    pub fn consume(&mut self) -> Result<(), Fault> {
        match self.remaining.checked_sub(1) {
            Some(r) => {
                self.remaining = r;
                Ok(())
            }
            None => Err(Fault::FuelExhausted { initial: self.initial }),
        }
    }
}
