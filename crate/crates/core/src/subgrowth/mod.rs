//! Subgroup growth: index-k subgroups through Hom(G, S_k) and Hall's
//! recursion, normal subgroups through Hall invariants.

mod invariants;
mod symmetric;

pub use invariants::{
    delta_abelian_closed, delta_small, low_index_via_deltas, AbelianShape, LowIndexReport,
    SmallGroup,
};
pub use symmetric::{
    all_perms, class_representatives, hom_count_symmetric, hom_count_symmetric_with_caps, Perm,
    DEFAULT_MAX_K, DEFAULT_SEARCH_CAP,
};

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::counting::{delta, CountConfig};
use crate::error::{Error, Result};
use crate::groups::{builtin_group, groups_of_order};
use crate::presentations::{builtin_presentation, Presentation};

pub const MAX_NORMAL_INDEX: u32 = 15;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GrowthConfig {
    pub max_k: usize,
    pub search_cap: u128,
}

impl Default for GrowthConfig {
    fn default() -> Self {
        GrowthConfig { max_k: DEFAULT_MAX_K, search_cap: DEFAULT_SEARCH_CAP }
    }
}

/// Entry k−1 of each sequence is the value at index k.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrowthReport {
    pub source: String,
    pub h: Vec<u128>,
    pub t: Vec<u128>,
    pub a: Vec<u128>,
    /// normal subgroups of index k, when requested
    pub normal: Option<Vec<u128>>,
    #[serde(skip)]
    pub timing: Vec<Duration>,
}

fn factorial(k: usize) -> i128 {
    (1..=k as i128).product()
}

/// a_k = h_k/(k−1)! − Σ_{l<k} h_{k−l}·a_l/(k−l)!, via
/// t_k = h_k − Σ_{l<k} (k−1)!/(k−l)!·h_{k−l}·a_l and a_k = t_k/(k−1)!.
pub fn hall_recursion(h: &[u128]) -> Result<(Vec<u128>, Vec<u128>)> {
    let overflow = || Error::cap("subgroup count", i128::MAX as u128);
    let mut a: Vec<u128> = Vec::with_capacity(h.len());
    let mut t: Vec<u128> = Vec::with_capacity(h.len());
    for k in 1..=h.len() {
        let mut tk = i128::try_from(h[k - 1]).map_err(|_| overflow())?;
        for l in 1..k {
            let coeff = factorial(k - 1) / factorial(k - l);
            let term = coeff
                .checked_mul(h[k - l - 1] as i128)
                .and_then(|x| x.checked_mul(a[l - 1] as i128))
                .ok_or_else(overflow)?;
            tk -= term;
        }
        let f = factorial(k - 1);
        if tk < 0 || tk % f != 0 {
            return Err(Error::Inconsistent(format!("t_{k} = {tk} is not a non-negative multiple of {f}")));
        }
        t.push(tk as u128);
        a.push((tk / f) as u128);
    }
    Ok((t, a))
}

/// h_k, t_k and a_k for k = 1..=kmax.
pub fn ak_sequence(p: &Presentation, kmax: usize, cfg: &GrowthConfig) -> Result<GrowthReport> {
    let mut h = Vec::with_capacity(kmax);
    let mut timing = Vec::with_capacity(kmax);
    for k in 1..=kmax {
        let start = Instant::now();
        h.push(hom_count_symmetric_with_caps(p, k, cfg.max_k, cfg.search_cap)?);
        timing.push(start.elapsed());
    }
    let (t, a) = hall_recursion(&h)?;
    Ok(GrowthReport { source: p.to_dsl(), h, t, a, normal: None, timing })
}

/// a_k^◁(G) = Σ_{|Γ| = k} δ_Γ(G).
pub fn ak_normal(p: &Presentation, k: u32, cfg: &CountConfig) -> Result<u128> {
    if k == 0 || k > MAX_NORMAL_INDEX {
        return Err(Error::BadParameter(format!("normal index must be in 1..={MAX_NORMAL_INDEX}, got {k}")));
    }
    if k == 1 {
        return Ok(1);
    }
    let mut total = 0;
    for spec in groups_of_order(k)? {
        total += delta(p, &builtin_group(spec)?, cfg)?;
    }
    Ok(total)
}

/// ak_sequence plus a_k^◁ for k up to min(kmax, 15).
pub fn growth_with_normal(
    p: &Presentation,
    kmax: usize,
    cfg: &GrowthConfig,
    count: &CountConfig,
) -> Result<GrowthReport> {
    let mut r = ak_sequence(p, kmax, cfg)?;
    let normal = (1..=kmax.min(MAX_NORMAL_INDEX as usize) as u32)
        .map(|k| ak_normal(p, k, count))
        .collect::<Result<_>>()?;
    r.normal = Some(normal);
    Ok(r)
}

/// One row of the low-index table for B_n; `None` marks entries that were
/// not reached within the caps or the time budget.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BraidRow {
    pub n: u32,
    pub a: Vec<Option<u128>>,
}

/// a_1..a_kmax of B_n for each n, stopping a row once a cap is hit or the
/// deadline has passed.
pub fn braid_table(
    ns: &[u32],
    kmax: usize,
    cfg: &GrowthConfig,
    deadline: Option<Instant>,
) -> Result<Vec<BraidRow>> {
    let mut rows = Vec::new();
    for &n in ns {
        let p = builtin_presentation(&format!("braid({n})"))?;
        let mut h = Vec::new();
        for k in 1..=kmax {
            if deadline.is_some_and(|d| Instant::now() >= d) {
                break;
            }
            match hom_count_symmetric_with_caps(&p, k, cfg.max_k, cfg.search_cap) {
                Ok(x) => h.push(x),
                Err(e) if e.is_cap() => break,
                Err(e) => return Err(e),
            }
        }
        let (_, a) = hall_recursion(&h)?;
        let mut a: Vec<Option<u128>> = a.into_iter().map(Some).collect();
        a.resize(kmax, None);
        rows.push(BraidRow { n, a });
    }
    Ok(rows)
}

/// Tab-separated rendering with `?` for unreached entries.
pub fn braid_table_tsv(rows: &[BraidRow], kmax: usize) -> String {
    let mut out = String::from("group");
    for k in 1..=kmax {
        out.push_str(&format!("\ta_{k}"));
    }
    out.push('\n');
    for r in rows {
        out.push_str(&format!("B_{}", r.n));
        for x in &r.a {
            match x {
                Some(v) => out.push_str(&format!("\t{v}")),
                None => out.push_str("\t?"),
            }
        }
        out.push('\n');
    }
    out
}
