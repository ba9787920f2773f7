//! Hom(G, S_k) by depth-first assignment of permutations to generators.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::presentations::{Presentation, Word};

pub const DEFAULT_MAX_K: usize = 8;
/// Candidate assignments allowed before giving up.
pub const DEFAULT_SEARCH_CAP: u128 = 20_000_000_000;

const MAXK: usize = 10;

/// A permutation of {0..k}, composed left to right: (ab)(i) = b(a(i)).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    img: [u8; MAXK],
    k: u8,
}

impl Perm {
    pub fn identity(k: usize) -> Self {
        let mut img = [0u8; MAXK];
        for (i, x) in img.iter_mut().enumerate().take(k) {
            *x = i as u8;
        }
        Perm { img, k: k as u8 }
    }

    pub fn from_images(images: &[u8]) -> Self {
        let mut p = Perm::identity(images.len());
        p.img[..images.len()].copy_from_slice(images);
        p
    }

    pub fn images(&self) -> &[u8] {
        &self.img[..self.k as usize]
    }

    pub fn then(&self, other: &Perm) -> Perm {
        let mut out = *self;
        for i in 0..self.k as usize {
            out.img[i] = other.img[self.img[i] as usize];
        }
        out
    }

    pub fn inverse(&self) -> Perm {
        let mut out = *self;
        for i in 0..self.k as usize {
            out.img[self.img[i] as usize] = i as u8;
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        (0..self.k as usize).all(|i| self.img[i] == i as u8)
    }

    /// Whether the group generated by `gens` acts transitively.
    pub fn transitive(gens: &[Perm], k: usize) -> bool {
        let mut seen = vec![false; k];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for g in gens {
                let y = g.img[x] as usize;
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen.iter().all(|&b| b)
    }
}

/// All k! permutations in lexicographic order.
pub fn all_perms(k: usize) -> Vec<Perm> {
    let mut cur: Vec<u8> = (0..k as u8).collect();
    let mut out = vec![Perm::from_images(&cur)];
    // next lexicographic permutation
    loop {
        let Some(i) = (1..k).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..k).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(Perm::from_images(&cur));
    }
}

fn factorial(k: usize) -> u128 {
    (1..=k as u128).product()
}

fn partitions(n: usize, max: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (1..=n.min(max)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// One permutation per conjugacy class of S_k, with the class size.
pub fn class_representatives(k: usize) -> Vec<(Perm, u128)> {
    partitions(k, k)
        .into_iter()
        .map(|shape| {
            let mut img = vec![0u8; k];
            let mut start = 0;
            let mut centralizer: u128 = 1;
            let mut mult = [0usize; MAXK + 1];
            for &len in &shape {
                for j in 0..len {
                    img[start + j] = (start + (j + 1) % len) as u8;
                }
                start += len;
                mult[len] += 1;
                centralizer *= len as u128;
            }
            for &m in &mult {
                centralizer *= factorial(m);
            }
            (Perm::from_images(&img), factorial(k) / centralizer)
        })
        .collect()
}

/// Generators that occur in relators, most occurrences first, and for each
/// relator the search depth at which all of its generators are assigned.
struct SearchPlan {
    order: Vec<usize>,
    ready: Vec<Vec<usize>>,
    free: usize,
}

fn plan(p: &Presentation) -> SearchPlan {
    let n = p.num_generators();
    let mut occ = vec![0usize; n];
    for r in p.relators() {
        for l in r.letters() {
            occ[l.gen] += 1;
        }
    }
    let mut order: Vec<usize> = (0..n).filter(|&g| occ[g] > 0).collect();
    order.sort_by_key(|&g| (std::cmp::Reverse(occ[g]), g));
    let mut pos = vec![usize::MAX; n];
    for (d, &g) in order.iter().enumerate() {
        pos[g] = d;
    }
    let mut ready = vec![Vec::new(); order.len()];
    for (ri, r) in p.relators().iter().enumerate() {
        let depth = r.letters().iter().map(|l| pos[l.gen]).max().unwrap();
        ready[depth].push(ri);
    }
    SearchPlan { free: n - order.len(), order, ready }
}

fn kills(r: &Word, imgs: &[Perm], invs: &[Perm], k: usize) -> bool {
    let mut acc = Perm::identity(k);
    for l in r.letters() {
        acc = acc.then(if l.exp > 0 { &imgs[l.gen] } else { &invs[l.gen] });
    }
    acc.is_identity()
}

struct Search<'a> {
    p: &'a Presentation,
    plan: &'a SearchPlan,
    perms: &'a [Perm],
    k: usize,
}

impl Search<'_> {
    /// Completions of the assignment to search depths below `depth`.
    fn count(&self, depth: usize, imgs: &mut [Perm], invs: &mut [Perm]) -> u128 {
        if depth == self.plan.order.len() {
            return 1;
        }
        let g = self.plan.order[depth];
        let mut total = 0;
        for x in self.perms {
            imgs[g] = *x;
            invs[g] = x.inverse();
            if self.plan.ready[depth].iter().all(|&ri| kills(&self.p.relators()[ri], imgs, invs, self.k)) {
                total += self.count(depth + 1, imgs, invs);
            }
        }
        total
    }
}

/// h_k(G) = |Hom(G, S_k)|.
pub fn hom_count_symmetric(p: &Presentation, k: usize) -> Result<u128> {
    hom_count_symmetric_with_caps(p, k, DEFAULT_MAX_K, DEFAULT_SEARCH_CAP)
}

pub fn hom_count_symmetric_with_caps(
    p: &Presentation,
    k: usize,
    max_k: usize,
    search_cap: u128,
) -> Result<u128> {
    if k == 0 {
        return Err(Error::BadParameter("k must be positive".into()));
    }
    if k > max_k.min(MAXK) {
        return Err(Error::cap("degree of the symmetric group", max_k.min(MAXK) as u128));
    }
    let plan = plan(p);
    let kf = factorial(k);
    let free_factor = kf
        .checked_pow(plan.free as u32)
        .ok_or_else(|| Error::cap("Hom count", u128::MAX))?;
    if plan.order.is_empty() {
        return Ok(free_factor);
    }
    let reps = class_representatives(k);
    let work = (reps.len() as u128).saturating_mul(kf.saturating_pow(plan.order.len() as u32 - 1));
    if work > search_cap {
        return Err(Error::cap("candidate permutation assignments", search_cap));
    }
    let perms = all_perms(k);
    let search = Search { p, plan: &plan, perms: &perms, k };
    let n = p.num_generators();
    // conjugation permutes the completions of the first generator's image, so
    // one representative per class suffices
    let first = plan.order[0];
    let total: u128 = reps
        .par_iter()
        .map(|&(rep, size)| {
            let mut imgs = vec![Perm::identity(k); n];
            let mut invs = imgs.clone();
            imgs[first] = rep;
            invs[first] = rep.inverse();
            if !plan.ready[0].iter().all(|&ri| kills(&p.relators()[ri], &imgs, &invs, k)) {
                return 0;
            }
            if plan.order.len() == 1 {
                return size;
            }
            let second = plan.order[1];
            let inner: u128 = perms
                .par_iter()
                .map(|x| {
                    let mut imgs = imgs.clone();
                    let mut invs = invs.clone();
                    imgs[second] = *x;
                    invs[second] = x.inverse();
                    if plan.ready[1].iter().all(|&ri| kills(&p.relators()[ri], &imgs, &invs, k)) {
                        search.count(2, &mut imgs, &mut invs)
                    } else {
                        0
                    }
                })
                .sum();
            size * inner
        })
        .sum();
    total
        .checked_mul(free_factor)
        .ok_or_else(|| Error::cap("Hom count", u128::MAX))
}
