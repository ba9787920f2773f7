//! Brute-force ground truth: raw generator-image search for homomorphism
//! counts and a direct evaluation of lifts into an extension.
//!
//! Nothing here goes through Fox calculus or the cohomology solver, and
//! words are evaluated by a separate letter-by-letter loop.

mod lift;
mod matrix;

pub use lift::{brute_lift_accepted, brute_lift_check};
pub use matrix::{
    count_sources, count_targets, lift_sources, lift_targets, verify_counts, verify_lifts, CheckRow, CheckStatus,
};

use std::sync::atomic::{AtomicBool, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;
use solvquot::groups::FiniteGroupTable;
use solvquot::presentations::Presentation;

pub const DEFAULT_LETTER_OPS: u128 = 100_000_000;

/// Work limit for one oracle run. Letter-operations are tuples times total
/// relator length, so the same run costs the same everywhere.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct OracleBudget {
    pub max_letter_ops: u128,
    pub timeout: Option<Duration>,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget { max_letter_ops: DEFAULT_LETTER_OPS, timeout: None }
    }
}

impl OracleBudget {
    fn admits(&self, ops: u128) -> bool {
        ops <= self.max_letter_ops
    }
}

/// A count the oracle either finished or declined to produce.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "value", rename_all = "lowercase")]
pub enum Outcome<T> {
    Verified(T),
    Unverified(String),
}

impl<T> Outcome<T> {
    pub fn verified(self) -> Option<T> {
        match self {
            Outcome::Verified(x) => Some(x),
            Outcome::Unverified(_) => None,
        }
    }
}

/// Multiplies out a word under generator images, one letter at a time.
pub(crate) fn eval_word(t: &FiniteGroupTable, word: &solvquot::presentations::Word, imgs: &[u32]) -> u32 {
    let mut acc = 0;
    for l in word.letters() {
        let x = imgs[l.gen];
        acc = t.mul(acc, if l.exp > 0 { x } else { t.inv(x) });
    }
    acc
}

pub(crate) fn kills_relators(p: &Presentation, t: &FiniteGroupTable, imgs: &[u32]) -> bool {
    p.relators().iter().all(|r| eval_word(t, r, imgs) == 0)
}

/// Size of the subgroup generated by `gens`, by breadth-first multiplication.
pub(crate) fn span(t: &FiniteGroupTable, gens: &[u32]) -> usize {
    let mut seen = vec![false; t.order()];
    seen[0] = true;
    let mut queue = vec![0u32];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for &g in gens {
            let y = t.mul(x, g);
            if !seen[y as usize] {
                seen[y as usize] = true;
                queue.push(y);
            }
        }
    }
    queue.len()
}

fn letter_ops(p: &Presentation, tuples: u128) -> u128 {
    let len: usize = p.relators().iter().map(|r| r.len()).sum();
    tuples.saturating_mul(len.max(1) as u128)
}

pub(crate) fn tuple_count(base: usize, n: usize) -> u128 {
    (base as u128).checked_pow(n as u32).unwrap_or(u128::MAX)
}

/// Runs `visit` on every image tuple, split over the first generator's
/// image. Returns the per-tuple sums, or None on timeout.
pub(crate) fn for_each_tuple<F>(order: usize, n: usize, deadline: Option<Instant>, visit: F) -> Option<(u128, u128)>
where
    F: Fn(&[u32]) -> (u128, u128) + Sync,
{
    if n == 0 {
        return Some(visit(&[]));
    }
    let timed_out = AtomicBool::new(false);
    let parts: Vec<(u128, u128)> = (0..order as u32)
        .into_par_iter()
        .map(|first| {
            let mut imgs = vec![0u32; n];
            imgs[0] = first;
            let mut sum = (0, 0);
            let mut steps = 0u32;
            loop {
                let (a, b) = visit(&imgs);
                sum.0 += a;
                sum.1 += b;
                steps = steps.wrapping_add(1);
                if steps % 4096 == 0 && deadline.is_some_and(|d| Instant::now() >= d) {
                    timed_out.store(true, Ordering::Relaxed);
                    return sum;
                }
                // odometer over generators 1..n
                let mut j = 1;
                while j < n {
                    imgs[j] += 1;
                    if (imgs[j] as usize) < order {
                        break;
                    }
                    imgs[j] = 0;
                    j += 1;
                }
                if j == n {
                    return sum;
                }
            }
        })
        .collect();
    if timed_out.load(Ordering::Relaxed) {
        return None;
    }
    Some(parts.into_iter().fold((0, 0), |a, b| (a.0 + b.0, a.1 + b.1)))
}

/// (|Hom(G, T)|, |Epi(G, T)|) by trying every tuple of generator images.
pub fn brute_hom_epi(p: &Presentation, t: &FiniteGroupTable, budget: &OracleBudget) -> Outcome<(u128, u128)> {
    let n = p.num_generators();
    let tuples = tuple_count(t.order(), n);
    let ops = letter_ops(p, tuples);
    if !budget.admits(ops) {
        return Outcome::Unverified(format!("{ops} letter-operations exceed the budget of {}", budget.max_letter_ops));
    }
    let deadline = budget.timeout.map(|d| Instant::now() + d);
    let full = t.order();
    let res = for_each_tuple(full, n, deadline, |imgs| {
        if !kills_relators(p, t, imgs) {
            return (0, 0);
        }
        (1, (span(t, imgs) == full) as u128)
    });
    match res {
        Some(x) => Outcome::Verified(x),
        None => Outcome::Unverified("timed out".into()),
    }
}

pub fn brute_hom(p: &Presentation, t: &FiniteGroupTable, budget: &OracleBudget) -> Outcome<u128> {
    match brute_hom_epi(p, t, budget) {
        Outcome::Verified((h, _)) => Outcome::Verified(h),
        Outcome::Unverified(r) => Outcome::Unverified(r),
    }
}

pub fn brute_epi(p: &Presentation, t: &FiniteGroupTable, budget: &OracleBudget) -> Outcome<u128> {
    match brute_hom_epi(p, t, budget) {
        Outcome::Verified((_, e)) => Outcome::Verified(e),
        Outcome::Unverified(r) => Outcome::Unverified(r),
    }
}

/// Every homomorphism as its tuple of generator images, in odometer order
/// with the first generator varying slowest.
pub fn brute_homs(p: &Presentation, t: &FiniteGroupTable, budget: &OracleBudget) -> Outcome<Vec<Vec<u32>>> {
    let n = p.num_generators();
    let ops = letter_ops(p, tuple_count(t.order(), n));
    if !budget.admits(ops) {
        return Outcome::Unverified(format!("{ops} letter-operations exceed the budget of {}", budget.max_letter_ops));
    }
    let mut out = Vec::new();
    let mut imgs = vec![0u32; n];
    loop {
        if kills_relators(p, t, &imgs) {
            out.push(imgs.clone());
        }
        let mut j = n;
        loop {
            if j == 0 {
                return Outcome::Verified(out);
            }
            j -= 1;
            imgs[j] += 1;
            if (imgs[j] as usize) < t.order() {
                break;
            }
            imgs[j] = 0;
        }
    }
}
