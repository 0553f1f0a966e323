//! Signed sums over tuples of support sets satisfying a unit mixed-volume
//! criterion.
//!
//! For a support list `(J_k, w_k)` the engine computes
//! `Σ w_{k_1} ⋯ w_{k_L}` over ordered tuples `(k_1, …, k_L)` whose sets pass
//! the [`TupleCondition`]. The criterion only depends on the multiset of
//! sets, so tuples are enumerated as nondecreasing index sequences and
//! weighted by their multinomial count. The criterion is also hereditary
//! (a violating prefix cannot be completed), which allows pruning as soon as
//! some prefix fails.
//!
//! Hall-style pruning keeps, for the current prefix, the union of the
//! complements `[n]∖J` over every subset of prefix positions. Appending a set
//! only needs the subsets that contain the new position.

use std::thread;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::conditions::TupleCondition;
use crate::subset::SubsetMask;

/// One weighted support set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SupportTerm {
    pub set: SubsetMask,
    pub weight: i64,
}

/// Exact integer accumulator that stays in `i128` until it would overflow.
#[derive(Clone, Debug, Default)]
struct Accumulator {
    small: i128,
    big: BigInt,
}

impl Accumulator {
    fn add_small(&mut self, v: i128) {
        match self.small.checked_add(v) {
            Some(s) => self.small = s,
            None => {
                self.big += BigInt::from(self.small);
                self.small = v;
            }
        }
    }

    fn add_big(&mut self, v: BigInt) {
        self.big += v;
    }

    fn total(self) -> BigInt {
        self.big + BigInt::from(self.small)
    }
}

struct Worker<'a> {
    support: &'a [SupportTerm],
    complements: Vec<u32>,
    length: usize,
    slack: u32,
    /// unions[S] for every subset S of the current prefix positions.
    unions: Vec<u32>,
    chosen: Vec<usize>,
    /// `length!`; `length ≤ 20` keeps it inside `u64`.
    full_factorial: u64,
    acc: Accumulator,
    nodes: u64,
    popcnt: bool,
}

macro_rules! descend_fn {
    ($(#[$attr:meta])* [$($kw:tt)*] $name:ident) => {
        $(#[$attr])*
        $($kw)* $name(&mut self, depth: usize, start: usize, run: u64, denom: u64, prod: Option<i128>) {
            self.nodes += 1;
            for k in start..self.support.len() {
                if !self.push(depth, k) {
                    continue;
                }
                let m = if k == start { run + 1 } else { 1 };
                let denom = denom * m;
                let prod = prod.and_then(|p| p.checked_mul(self.support[k].weight as i128));
                self.chosen.push(k);
                if depth + 1 == self.length {
                    self.nodes += 1;
                    self.record_leaf(self.full_factorial / denom, prod);
                } else {
                    self.$name(depth + 1, k, m, denom, prod);
                }
                self.chosen.pop();
            }
        }
    };
}

impl<'a> Worker<'a> {
    fn new(support: &'a [SupportTerm], condition: TupleCondition, length: usize) -> Self {
        assert!(length <= 20, "tuple length {length} too large");
        let full = SubsetMask::full(condition.n);
        Worker {
            support,
            complements: support.iter().map(|t| full.difference(t.set).bits()).collect(),
            length,
            slack: condition.slack(),
            unions: vec![0; 1usize << length],
            chosen: Vec::with_capacity(length),
            full_factorial: (1..=length as u64).product(),
            acc: Accumulator::default(),
            nodes: 0,
            #[cfg(target_arch = "x86_64")]
            popcnt: std::arch::is_x86_feature_detected!("popcnt"),
            #[cfg(not(target_arch = "x86_64"))]
            popcnt: false,
        }
    }

    /// Tries to append support index `k` at position `depth`; fills the
    /// union table for the new position on success.
    #[inline(always)]
    fn push(&mut self, depth: usize, k: usize) -> bool {
        let b = self.complements[k];
        let half = 1usize << depth;
        for s in 0..half {
            let u = self.unions[s] | b;
            if u.count_ones() < s.count_ones() + 1 + self.slack {
                return false;
            }
            self.unions[half + s] = u;
        }
        true
    }

    descend_fn!(
        /// Extends a prefix of length `depth` whose last index is `start`
        /// (repeated `run` times). `denom = Π m_k!` over the prefix and
        /// `prod` is the weight product, `None` once it has left `i128`.
        [fn] descend
    );

    #[cfg(target_arch = "x86_64")]
    descend_fn!(
        /// [`Self::descend`] compiled with the hardware population count,
        /// which the union-table check is dominated by.
        #[target_feature(enable = "popcnt")]
        [unsafe fn] descend_popcnt
    );

    fn start_descent(&mut self, prod: Option<i128>, first: usize) {
        #[cfg(target_arch = "x86_64")]
        if self.popcnt {
            // SAFETY: the CPU supports popcnt (checked at construction).
            unsafe { self.descend_popcnt(1, first, 1, 1, prod) };
            return;
        }
        self.descend(1, first, 1, 1, prod);
    }

    #[inline]
    fn record_leaf(&mut self, count: u64, prod: Option<i128>) {
        match prod.and_then(|p| p.checked_mul(count as i128)) {
            Some(v) => self.acc.add_small(v),
            None => {
                let mut v = BigInt::from(count);
                for &k in &self.chosen {
                    v *= self.support[k].weight;
                }
                self.acc.add_big(v);
            }
        }
    }

    /// Sum over tuples whose first (smallest) index is `first`.
    fn run_first(&mut self, first: usize) -> BigInt {
        self.acc = Accumulator::default();
        if self.length == 0 {
            return BigInt::zero();
        }
        if self.push(0, first) {
            self.chosen.push(first);
            let prod = Some(self.support[first].weight as i128);
            if self.length == 1 {
                self.nodes += 1;
                self.record_leaf(1, prod);
            } else {
                self.start_descent(prod, first);
            }
            self.chosen.pop();
        }
        std::mem::take(&mut self.acc).total()
    }
}

/// `Σ` over ordered tuples of length `length` passing `condition` of the
/// product of weights. Work is split statically on the first tuple index
/// across `threads` workers; partial sums are combined in index order.
pub fn signed_tuple_sum(
    support: &[SupportTerm],
    condition: TupleCondition,
    length: usize,
    threads: usize,
) -> BigInt {
    if length == 0 {
        return BigInt::one();
    }
    let threads = threads.max(1).min(support.len().max(1));
    let partials: Vec<BigInt> = if threads == 1 {
        let mut w = Worker::new(support, condition, length);
        (0..support.len()).map(|f| w.run_first(f)).collect()
    } else {
        let mut slots: Vec<BigInt> = vec![BigInt::zero(); support.len()];
        let per_worker: Vec<Vec<(usize, BigInt)>> = thread::scope(|scope| {
            let handles: Vec<_> = (0..threads)
                .map(|t| {
                    scope.spawn(move || {
                        let mut w = Worker::new(support, condition, length);
                        (t..support.len())
                            .step_by(threads)
                            .map(|f| (f, w.run_first(f)))
                            .collect::<Vec<_>>()
                    })
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("worker panicked"))
                .collect()
        });
        for (f, v) in per_worker.into_iter().flatten() {
            slots[f] = v;
        }
        slots
    };
    partials.into_iter().fold(BigInt::zero(), |acc, v| acc + v)
}

/// A contributing ordered tuple and the product of its weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TupleTerm {
    pub sets: Vec<SubsetMask>,
    pub product: i64,
}

/// Every ordered tuple over `support` that passes `condition`, checked with
/// the matching-based predicate at the leaves and no pruning. Exponential in
/// `length`; meant for small instrumented runs and for validating
/// [`signed_tuple_sum`].
pub fn ordered_terms(
    support: &[SupportTerm],
    condition: TupleCondition,
    length: usize,
) -> Vec<TupleTerm> {
    let mut out = Vec::new();
    let mut idx = vec![0usize; length];
    if length > 0 && support.is_empty() {
        return out;
    }
    loop {
        let sets: Vec<SubsetMask> = idx.iter().map(|&k| support[k].set).collect();
        if condition.holds(&sets) {
            let product = idx.iter().map(|&k| support[k].weight).product();
            out.push(TupleTerm { sets, product });
        }
        // odometer increment
        let mut pos = length;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < support.len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// Number of search nodes visited by the pruned multiset enumeration.
pub fn search_nodes(support: &[SupportTerm], condition: TupleCondition, length: usize) -> u64 {
    let mut w = Worker::new(support, condition, length);
    for f in 0..support.len() {
        w.run_first(f);
    }
    w.nodes
}
