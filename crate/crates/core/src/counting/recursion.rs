//! Alternate drivers that sum per-map formulas over the epimorphisms onto the
//! previous level instead of subtracting complement counts.

use rayon::prelude::*;

use super::engine::{epi_lift, epi_maps, CountConfig, GeneratorImageMap};
use crate::cohomology::{build_system_unchecked, h1_dim, solve};
use crate::error::{Error, Result};
use crate::groups::{binary_dihedral_layers, builtin_group, dihedral_layers, ExtensionTower};
use crate::presentations::Presentation;

/// Per-map contribution at a level, given ε and d for that map.
type LevelRule<'a> = &'a (dyn Fn(usize, bool, u64) -> i128 + Sync);

fn run_rule(
    p: &Presentation,
    tower: &ExtensionTower,
    cfg: &CountConfig,
    rule: LevelRule,
) -> Result<u128> {
    let n = p.num_generators();
    let mut frontier = vec![GeneratorImageMap { images: vec![0; n], surjective: true }];
    for i in 0..tower.depth() {
        let layer = tower.layer(i);
        let q = layer.q as u64;
        let predicted: i128 = frontier
            .par_iter()
            .map(|rho| {
                let sys = build_system_unchecked(
                    p,
                    tower.level_table(i),
                    &rho.images,
                    layer,
                    cfg.convention,
                );
                let solved = solve(&sys);
                let d = solved.log_counts().get(&q).copied().unwrap_or(0);
                rule(i, solved.solvable(), d)
            })
            .sum();
        let predicted = u128::try_from(predicted).map_err(|_| {
            Error::Inconsistent(format!("level {i} of {}: negative recursion sum", tower.name()))
        })?;
        if i + 1 == tower.depth() {
            return Ok(predicted);
        }
        let next: Vec<Vec<GeneratorImageMap>> = frontier
            .par_iter()
            .map(|rho| epi_lift(p, tower, i, rho, cfg.convention))
            .collect::<Result<_>>()?;
        let mut next: Vec<GeneratorImageMap> = next.into_iter().flatten().collect();
        if next.len() as u128 != predicted {
            return Err(Error::Inconsistent(format!(
                "level {i} of {}: recursion gives {predicted}, lifting gives {}",
                tower.name(),
                next.len()
            )));
        }
        if predicted > cfg.frontier_cap {
            return Err(Error::cap(format!("epimorphisms at level {}", i + 1), cfg.frontier_cap));
        }
        next.sort();
        frontier = next;
    }
    Ok(1)
}

/// |Epi(G, D_{2m})| through D_2 < D_{2l} < ...: a new prime q contributes
/// q^d − q per map, a repeated one ε·q^d.
pub fn epi_dihedral_recursion(p: &Presentation, m: u64, cfg: &CountConfig) -> Result<u128> {
    let tower = ExtensionTower::build(format!("D({})", 2 * m), dihedral_layers(m)?)?;
    let orders: Vec<u64> = (0..=tower.depth()).map(|i| tower.level_table(i).order() as u64).collect();
    let primes: Vec<u64> = tower.layers().iter().map(|l| l.q as u64).collect();
    let rule = move |i: usize, eps: bool, d: u64| -> i128 {
        dihedral_rule(i, eps, d, primes[i], orders[i])
    };
    run_rule(p, &tower, cfg, &rule)
}

fn dihedral_rule(i: usize, eps: bool, d: u64, q: u64, base_order: u64) -> i128 {
    let qd = (q as i128).pow(d as u32);
    if i == 0 {
        // Z_2 over the trivial group: the trivial subgroup is the complement
        return qd - 1;
    }
    let l = base_order / 2;
    if l % q != 0 {
        qd - q as i128
    } else if eps {
        qd
    } else {
        0
    }
}

/// |Epi(G, Dstar_{4m})|: the dihedral steps for D_{2m}, then ε·2^d for the
/// central Z_2 on top.
pub fn epi_binary_dihedral_recursion(p: &Presentation, m: u64, cfg: &CountConfig) -> Result<u128> {
    let tower = ExtensionTower::build(format!("Dstar({})", 4 * m), binary_dihedral_layers(m)?)?;
    let top = tower.depth() - 1;
    let orders: Vec<u64> = (0..=tower.depth()).map(|i| tower.level_table(i).order() as u64).collect();
    let primes: Vec<u64> = tower.layers().iter().map(|l| l.q as u64).collect();
    let rule = move |i: usize, eps: bool, d: u64| -> i128 {
        if i == top {
            if eps {
                1i128 << d
            } else {
                0
            }
        } else {
            dihedral_rule(i, eps, d, primes[i], orders[i])
        }
    };
    run_rule(p, &tower, cfg, &rule)
}

/// q²·Σ_{ρ ∈ Epi(G, D_{2p})} (q^β − 1), β = dim H¹ with coefficients in the
/// Z_q² layer of V(q, p, r).
pub fn epi_count_q2p(p: &Presentation, q: u32, pr: u32, r: i64, cfg: &CountConfig) -> Result<u128> {
    let tower = builtin_group(&format!("V({q},{pr},{r})"))?;
    let top = tower.depth() - 1;
    let rhos = epi_maps(p, &tower, top, cfg)?;
    let base = tower.level_table(top);
    let layer = tower.layer(top);
    let sum: u128 = rhos
        .par_iter()
        .map(|rho| -> Result<u128> {
            let beta = h1_dim(p, base, rho, layer)?;
            Ok((q as u128).pow(beta as u32) - 1)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .sum();
    Ok((q as u128).pow(2) * sum)
}

/// δ_{S_4}(G) = (1/6)·Σ_{ρ ∈ Epi(G, S_3)} (2^β − 1).
pub fn delta_s4(p: &Presentation, cfg: &CountConfig) -> Result<u128> {
    let epi = epi_count_q2p(p, 2, 3, 1, cfg)?;
    super::engine::checked_delta(epi, 24)
}
