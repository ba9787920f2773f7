use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::{all_subgroups, moebius, MoebiusTable, SubgroupLattice};
use crate::arith::{divisors, mobius_nt};
use crate::counting::{epi_total, hom_count, CountConfig};
use crate::error::{Error, Result};
use crate::groups::{builtin_group, chief_series, ExtensionTower};
use crate::linalg::bigint_pow;
use crate::presentations::Presentation;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HallReport {
    pub hom: u128,
    pub epi: u128,
    /// Σ_{H ≤ Γ} |Epi(G, H)|
    pub epi_sum: u128,
    /// Σ_{H ≤ Γ} μ(H)·|Hom(G, H)|
    pub moebius_sum: i128,
    pub balanced: bool,
}

fn subgroup_counts(
    p: &Presentation,
    l: &SubgroupLattice,
    cfg: &CountConfig,
) -> Result<Vec<(u128, u128)>> {
    (0..l.len())
        .into_par_iter()
        .map(|i| {
            let tw = chief_series(&l.subgroup_table(i))?;
            Ok((hom_count(p, &tw, cfg)?, epi_total(p, &tw, cfg)?))
        })
        .collect()
}

/// Checks |Hom(G,Γ)| = Σ_H |Epi(G,H)| and |Epi(G,Γ)| = Σ_H μ(H)|Hom(G,H)|,
/// with every count from the lifting engine on a chief series of H.
pub fn hall_identities(p: &Presentation, tower: &ExtensionTower, cfg: &CountConfig) -> Result<HallReport> {
    let l = all_subgroups(tower.table())?;
    let mu = moebius(&l);
    let counts = subgroup_counts(p, &l, cfg)?;
    let hom = hom_count(p, tower, cfg)?;
    let epi = epi_total(p, tower, cfg)?;
    let epi_sum = counts.iter().map(|c| c.1).sum();
    let moebius_sum = counts.iter().zip(&mu.values).map(|(c, &m)| m as i128 * c.0 as i128).sum();
    Ok(HallReport {
        hom,
        epi,
        epi_sum,
        moebius_sum,
        balanced: hom == epi_sum && moebius_sum == epi as i128,
    })
}

/// |Epi(G, Γ)| = Σ_H μ(H)·|Hom(G, H)|.
pub fn epi_via_moebius(p: &Presentation, tower: &ExtensionTower, cfg: &CountConfig) -> Result<u128> {
    let l = all_subgroups(tower.table())?;
    let mu = moebius(&l);
    let homs: Vec<u128> = (0..l.len())
        .into_par_iter()
        .map(|i| hom_count(p, &chief_series(&l.subgroup_table(i))?, cfg))
        .collect::<Result<_>>()?;
    let total: i128 = homs.iter().zip(&mu.values).map(|(&h, &m)| m as i128 * h as i128).sum();
    u128::try_from(total).map_err(|_| Error::Inconsistent(format!("Möbius sum is {total}")))
}

/// φ(Γ, n) = Σ_H μ(H)·|H|^n.
pub fn eulerian_via_moebius(l: &SubgroupLattice, mu: &MoebiusTable, n: u32) -> Result<u128> {
    let mut acc = BigInt::zero();
    for (s, &m) in l.subgroups().iter().zip(&mu.values) {
        acc += BigInt::from(m) * bigint_pow(s.order as u64, n as u64);
    }
    acc.to_u128().ok_or_else(|| Error::Inconsistent(format!("Eulerian sum is {acc}")))
}

/// |Epi(G, D_{2m})| = Σ_{l | m} (m/l)·μ(m/l)·(|Hom(G, D_{2l})| − |Hom(G, Z_l)|),
/// from μ(Z_l) = −(m/l)μ(m/l), μ(D_{2l}) = μ(m/l) and m/l conjugates of D_{2l}.
pub fn epi_dihedral_moebius(p: &Presentation, m: u64, cfg: &CountConfig) -> Result<u128> {
    let mut acc = BigInt::zero();
    for l in divisors(m) {
        let mu = mobius_nt(m / l);
        if mu == 0 {
            continue;
        }
        let hd = hom_count(p, &builtin_group(&format!("D({})", 2 * l))?, cfg)?;
        let hz = hom_count(p, &builtin_group(&format!("Z({l})"))?, cfg)?;
        acc += (BigInt::from(hd) - BigInt::from(hz)) * BigInt::from((m / l) as i64 * mu as i64);
    }
    acc.to_u128().ok_or_else(|| Error::Inconsistent(format!("dihedral Möbius sum is {acc}")))
}
