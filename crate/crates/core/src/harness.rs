//! Test substrate: exhaustive enumeration of terms and contexts, seeded
//! random terms, and the benchmark shape.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::context::{normalize_kc_rb_counted, normalize_kc_rf_counted, Context, ControlFrame};
use crate::machine::machine_run;
use crate::natural::Natural;
use crate::syntax::{Operator, Term, Value};

/// Bounds for exhaustive enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumSpec {
    /// Maximum operator count of a term (of a frame's subterm, for contexts).
    pub max_ops: usize,
    /// Literals and frame values range over `0..=max_lit`.
    pub max_lit: u64,
    pub max_frames: usize,
}

impl EnumSpec {
    pub fn terms(max_ops: usize, max_lit: u64) -> Self {
        EnumSpec {
            max_ops,
            max_lit,
            max_frames: 0,
        }
    }

    /// Contexts of up to `max_frames` frames whose subterms have at most one
    /// operator.
    pub fn contexts(max_frames: usize, max_lit: u64) -> Self {
        EnumSpec {
            max_ops: 1,
            max_lit,
            max_frames,
        }
    }
}

fn literals<N: Natural>(max_lit: u64) -> impl Iterator<Item = N> {
    (0..=max_lit).map(N::from_small)
}

/// All terms within the bounds, each once, ordered by operator count and
/// then lexicographically by (left subterm, operator, right subterm).
pub fn enumerate_terms<N: Natural>(spec: &EnumSpec) -> Vec<Term<N>> {
    // by_size[n] holds the terms with exactly n operators, in order
    let mut by_size: Vec<Vec<Term<N>>> = vec![literals(spec.max_lit).map(Term::Lit).collect()];
    for n in 1..=spec.max_ops {
        let mut level = Vec::new();
        for left_ops in 0..n {
            let right_ops = n - 1 - left_ops;
            for left in &by_size[left_ops] {
                for op in Operator::ALL {
                    for right in &by_size[right_ops] {
                        level.push(Term::opr(left.clone(), op, right.clone()));
                    }
                }
            }
        }
        by_size.push(level);
    }
    by_size.into_iter().flatten().collect()
}

/// Every context within the bounds, addressable by index.
///
/// Contexts are ordered by length, then lexicographically by their frames
/// read head first. Frames are ordered `LeftOf` before `RightOf`; `LeftOf`
/// by operator then subterm, `RightOf` by value then operator.
#[derive(Clone, Debug)]
pub struct ContextEnumeration<N> {
    frames: Vec<ControlFrame<N>>,
    max_frames: usize,
    len: usize,
}

impl<N: Natural> ContextEnumeration<N> {
    pub fn new(spec: &EnumSpec) -> Self {
        let subterms = enumerate_terms::<N>(&EnumSpec::terms(spec.max_ops, spec.max_lit));
        let mut frames = Vec::new();
        for op in Operator::ALL {
            frames.extend(subterms.iter().map(|t| ControlFrame::left_of(op, t.clone())));
        }
        for v in literals::<N>(spec.max_lit) {
            for op in Operator::ALL {
                frames.push(ControlFrame::right_of(Value(v.clone()), op));
            }
        }
        let len = (0..=spec.max_frames).map(|k| frames.len().pow(k as u32)).sum();
        ContextEnumeration {
            frames,
            max_frames: spec.max_frames,
            len,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// The distinct frames contexts are built from.
    pub fn frames(&self) -> &[ControlFrame<N>] {
        &self.frames
    }

    pub fn get(&self, mut index: usize) -> Option<Context<N>> {
        let base = self.frames.len();
        for k in 0..=self.max_frames {
            let block = base.pow(k as u32);
            if index < block {
                // mixed radix, head first is most significant
                let mut digits = vec![0; k];
                for d in digits.iter_mut().rev() {
                    *d = index % base;
                    index /= base;
                }
                return Some(Context::from_head_first(
                    digits.into_iter().map(|d| self.frames[d].clone()),
                ));
            }
            index -= block;
        }
        None
    }

    pub fn iter(&self) -> impl Iterator<Item = Context<N>> + '_ {
        (0..self.len).map(|i| self.get(i).expect("index in range"))
    }
}

pub fn enumerate_contexts<N: Natural>(spec: &EnumSpec) -> ContextEnumeration<N> {
    ContextEnumeration::new(spec)
}

/// Parameters for seeded random generation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RandSpec {
    pub seed: u64,
    pub count: usize,
    pub max_ops: usize,
    pub max_lit: u64,
}

/// `count` random terms, reproducible from the seed.
///
/// With a remaining operator budget `b > 0`, a literal is chosen with
/// probability 1/2; otherwise an operation whose operands split the
/// remaining `b - 1` operators binomially.
pub fn random_terms<N: Natural>(spec: &RandSpec) -> Vec<Term<N>> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    (0..spec.count)
        .map(|_| random_term(&mut rng, spec.max_ops, spec.max_lit))
        .collect()
}

fn random_term<N: Natural, R: Rng>(rng: &mut R, budget: usize, max_lit: u64) -> Term<N> {
    if budget == 0 || rng.gen_bool(0.5) {
        return Term::Lit(N::from_small(rng.gen_range(0..=max_lit)));
    }
    let op = if rng.gen_bool(0.5) {
        Operator::Add
    } else {
        Operator::Sub
    };
    let rest = budget - 1;
    let left_budget = (0..rest).filter(|_| rng.gen_bool(0.5)).count();
    let left = random_term(rng, left_budget, max_lit);
    let right = random_term(rng, rest - left_budget, max_lit);
    Term::opr(left, op, right)
}

/// `((1 + 1) + 1) ... + 1` with `k` operators.
pub fn chain<N: Natural>(k: usize) -> Term<N> {
    let one = || Term::Lit(N::one());
    (0..k).fold(one(), |acc, _| Term::plus(acc, one()))
}

/// Work counts for one benchmark size.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BenchRow {
    pub k: usize,
    pub rb_visits: u64,
    pub rf_visits: u64,
    pub rb_recompose: u64,
    pub rf_recompose: u64,
    pub machine_steps: usize,
}

/// Measures reduction-based and reduction-free normalization of [`chain`]`(k)`.
pub fn bench_row(k: usize) -> BenchRow {
    let t = chain::<u64>(k);
    let fault = |e: crate::Fault| format!("chain({k}): {e}");
    let (_, rb) = normalize_kc_rb_counted(&t).map_err(fault).unwrap();
    let (_, rf) = normalize_kc_rf_counted(&t).map_err(fault).unwrap();
    let run = machine_run(&t).map_err(fault).unwrap();
    BenchRow {
        k,
        rb_visits: rb.decompose_visits,
        rf_visits: rf.decompose_visits,
        rb_recompose: rb.recompose_steps,
        rf_recompose: rf.recompose_steps,
        machine_steps: run.steps,
    }
}

/// The exhaustive term set (at most 3 operators, literals up to 3) followed
/// by 1,000 random terms (seed 42, at most 8 operators, literals up to 50).
pub fn standard_terms<N: Natural>() -> Vec<Term<N>> {
    let mut terms = enumerate_terms(&EnumSpec::terms(3, 3));
    terms.extend(random_terms(&RandSpec {
        seed: 42,
        count: 1000,
        max_ops: 8,
        max_lit: 50,
    }));
    terms
}
