use rayon::prelude::*;
use serde::Serialize;

use crate::cohomology::{build_system_unchecked, check_homomorphism, solve, SignConvention};
use crate::error::{Error, Result};
use crate::groups::{ExtensionTower, FiniteGroupTable, GroupElement, DEFAULT_AUT_WORK};
use crate::presentations::{Presentation, Word};

pub const DEFAULT_HOM_CAP: u128 = 10_000_000;
pub const DEFAULT_FRONTIER_CAP: u128 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CountConfig {
    /// abort when the running Hom count at any level exceeds this
    pub hom_cap: u128,
    /// abort when a materialized level of epimorphisms exceeds this
    pub frontier_cap: u128,
    /// work budget for the brute-force automorphism search
    pub aut_work: u128,
    /// also compute |Hom| in epi_count
    pub with_hom: bool,
    #[serde(skip)]
    pub convention: SignConvention,
}

impl Default for CountConfig {
    fn default() -> Self {
        CountConfig {
            hom_cap: DEFAULT_HOM_CAP,
            frontier_cap: DEFAULT_FRONTIER_CAP,
            aut_work: DEFAULT_AUT_WORK,
            with_hom: true,
            convention: SignConvention::Twisted,
        }
    }
}

/// ρ: G -> Γ as the tower indices of the generator images.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GeneratorImageMap {
    pub images: Vec<u32>,
    pub surjective: bool,
}

impl GeneratorImageMap {
    /// Checks every relator against `table` and records surjectivity.
    pub fn new(p: &Presentation, table: &FiniteGroupTable, images: Vec<u32>) -> Result<Self> {
        if images.iter().any(|&x| x as usize >= table.order()) {
            return Err(Error::BadParameter("generator image out of range".into()));
        }
        check_homomorphism(p, table, &images)?;
        let surjective = table.generated_order(&images) == table.order();
        Ok(GeneratorImageMap { images, surjective })
    }

    pub fn elements(&self, tower: &ExtensionTower) -> Vec<GroupElement> {
        self.images.iter().map(|&x| tower.element(x)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelReport {
    pub q: u32,
    pub s: usize,
    pub zeta: bool,
    pub kappa: u32,
    pub alpha: u32,
    pub split: bool,
    pub epi_in: u128,
    pub epi_out: u128,
    /// Σ ε over the incoming epimorphisms
    pub liftable: u128,
    /// Σ ε·q^d, all lifts
    pub lifts: u128,
    /// lifts landing in a complement
    pub complements: u128,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountReport {
    pub source: String,
    pub target: String,
    pub hom: Option<u128>,
    pub epi: u128,
    pub aut: u128,
    pub delta: u128,
    pub levels: Vec<LevelReport>,
    pub provenance: Vec<String>,
}

/// Lifts of one ρ through level i; the surjective ones are kept only when asked.
struct LiftOutcome {
    epsilon: bool,
    lifts: u128,
    surjective: u128,
    kept: Vec<Vec<u32>>,
    d: u64,
}

fn lift_one(
    p: &Presentation,
    tower: &ExtensionTower,
    i: usize,
    rho: &[u32],
    convention: SignConvention,
    keep: bool,
) -> LiftOutcome {
    let layer = tower.layer(i);
    let base = tower.level_table(i);
    let top = tower.level_table(i + 1);
    let sys = build_system_unchecked(p, base, rho, layer, convention);
    let solved = solve(&sys);
    let q = layer.q as u64;
    let d = solved.log_counts().get(&q).copied().unwrap_or(0);
    let epsilon = solved.solvable();
    let mut out = LiftOutcome { epsilon, lifts: 0, surjective: 0, kept: Vec::new(), d };
    if !epsilon {
        return out;
    }
    out.lifts = (q as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
    let n = rho.len();
    let s = layer.s;
    let width = base.order() as u32;
    for a in solved.solutions() {
        let images: Vec<u32> = (0..n)
            .map(|j| {
                let mut enc = 0u64;
                for k in (0..s).rev() {
                    enc = enc * q + a[j * s + k];
                }
                rho[j] + width * enc as u32
            })
            .collect();
        if top.generated_order(&images) == top.order() {
            out.surjective += 1;
            if keep {
                out.kept.push(images);
            }
        }
    }
    out
}

/// Surjective lifts of ρ: G ↠ B_i to B_{i+1}. The direct surjectivity test is
/// reconciled with ε·q^d − c(B_{i+1}).
pub fn epi_lift(
    p: &Presentation,
    tower: &ExtensionTower,
    i: usize,
    rho: &GeneratorImageMap,
    convention: SignConvention,
) -> Result<Vec<GeneratorImageMap>> {
    if i >= tower.depth() {
        return Err(Error::BadParameter(format!("tower has no level {i}")));
    }
    check_homomorphism(p, tower.level_table(i), &rho.images)?;
    if !rho.surjective {
        return Err(Error::BadParameter("epi_lift needs a surjective map".into()));
    }
    let out = lift_one(p, tower, i, &rho.images, convention, true);
    reconcile(tower, i, &rho.images, &out)?;
    Ok(out
        .kept
        .into_iter()
        .map(|images| GeneratorImageMap { images, surjective: true })
        .collect())
}

fn reconcile(tower: &ExtensionTower, i: usize, rho: &[u32], out: &LiftOutcome) -> Result<()> {
    let c = tower.complement_count(i);
    let expected = if out.epsilon { out.lifts.checked_sub(c) } else { Some(0) };
    if expected != Some(out.surjective) || (!out.epsilon && c != 0) {
        return Err(Error::Inconsistent(format!(
            "level {i} of {}: {} surjective lifts of {rho:?}, expected {} lifts minus {c} complements",
            tower.name(),
            out.surjective,
            out.lifts
        )));
    }
    Ok(())
}

/// |Hom(G, Γ)| by lifting every homomorphism level by level.
pub fn hom_count(p: &Presentation, tower: &ExtensionTower, cfg: &CountConfig) -> Result<u128> {
    let n = p.num_generators();
    let mut frontier: Vec<Vec<u32>> = vec![vec![0; n]];
    for i in 0..tower.depth() {
        let last = i + 1 == tower.depth();
        let layer = tower.layer(i);
        let q = layer.q as u64;
        let s = layer.s;
        let width = tower.level_table(i).order() as u32;
        let results: Vec<(u128, Vec<Vec<u32>>)> = frontier
            .par_iter()
            .map(|rho| {
                let sys =
                    build_system_unchecked(p, tower.level_table(i), rho, layer, cfg.convention);
                let solved = solve(&sys);
                if !solved.solvable() {
                    return (0, Vec::new());
                }
                let d = solved.log_counts().get(&q).copied().unwrap_or(0);
                let count = (q as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
                if last || count > cfg.hom_cap {
                    return (count, Vec::new());
                }
                let lifts = solved
                    .solutions()
                    .into_iter()
                    .map(|a| {
                        (0..n)
                            .map(|j| {
                                let enc = (0..s).rev().fold(0u64, |e, k| e * q + a[j * s + k]);
                                rho[j] + width * enc as u32
                            })
                            .collect()
                    })
                    .collect();
                (count, lifts)
            })
            .collect();
        let total = results.iter().fold(0u128, |acc, r| acc.saturating_add(r.0));
        if total > cfg.hom_cap {
            return Err(Error::cap(format!("homomorphisms at level {}", i + 1), cfg.hom_cap));
        }
        if last {
            return Ok(total);
        }
        frontier = results.into_iter().flat_map(|r| r.1).collect();
    }
    Ok(1)
}

/// Surjective maps onto B_level, materialized and sorted.
pub fn epi_maps(
    p: &Presentation,
    tower: &ExtensionTower,
    level: usize,
    cfg: &CountConfig,
) -> Result<Vec<Vec<u32>>> {
    let (_, frontier) = sweep(p, tower, level, cfg, true)?;
    Ok(frontier)
}

/// Runs the lifting sweep up to `level`, returning the level tallies and,
/// if `materialize_last`, the epimorphisms onto B_level.
fn sweep(
    p: &Presentation,
    tower: &ExtensionTower,
    level: usize,
    cfg: &CountConfig,
    materialize_last: bool,
) -> Result<(Vec<LevelReport>, Vec<Vec<u32>>)> {
    if level > tower.depth() {
        return Err(Error::BadParameter(format!("tower has no level {level}")));
    }
    let n = p.num_generators();
    let mut frontier: Vec<Vec<u32>> = vec![vec![0; n]];
    let mut reports = Vec::with_capacity(level);
    for i in 0..level {
        let keep = materialize_last || i + 1 < level;
        let outcomes: Vec<LiftOutcome> = frontier
            .par_iter()
            .map(|rho| lift_one(p, tower, i, rho, cfg.convention, keep))
            .collect();
        for (rho, out) in frontier.iter().zip(&outcomes) {
            reconcile(tower, i, rho, out)?;
        }
        let c = tower.constants(i);
        let layer = tower.layer(i);
        let epi_out: u128 = outcomes.iter().map(|o| o.surjective).sum();
        let report = LevelReport {
            q: layer.q,
            s: layer.s,
            zeta: c.zeta,
            kappa: c.kappa,
            alpha: c.alpha,
            split: c.split,
            epi_in: frontier.len() as u128,
            epi_out,
            liftable: outcomes.iter().filter(|o| o.epsilon).count() as u128,
            lifts: outcomes.iter().map(|o| o.lifts).sum(),
            complements: outcomes.iter().map(|o| o.lifts - o.surjective).sum(),
        };
        let closed = level_arithmetic(tower, i, &outcomes)?;
        if closed != epi_out {
            return Err(Error::Inconsistent(format!(
                "level {i} of {}: enumerated {epi_out} epimorphisms, closed arithmetic gives {closed}",
                tower.name()
            )));
        }
        reports.push(report);
        if keep {
            if epi_out > cfg.frontier_cap {
                return Err(Error::cap(format!("epimorphisms at level {}", i + 1), cfg.frontier_cap));
            }
            let mut next: Vec<Vec<u32>> = outcomes.into_iter().flat_map(|o| o.kept).collect();
            next.par_sort_unstable();
            frontier = next;
        } else {
            frontier.clear();
        }
    }
    Ok((reports, frontier))
}

/// |E|^ζ Σ_ρ (ε·q^β − c_χ·q^{κ(α−1)}) with β = d − sζ.
fn level_arithmetic(tower: &ExtensionTower, i: usize, outcomes: &[LiftOutcome]) -> Result<u128> {
    let layer = tower.layer(i);
    let c = tower.constants(i);
    let q = layer.q as u128;
    let zs = if c.zeta { layer.s as u64 } else { 0 };
    let e_pow = q.pow(zs as u32);
    let comp = if c.split { q.pow(c.kappa * (c.alpha - 1)) } else { 0 };
    let mut total = 0u128;
    for o in outcomes {
        let lifted = if o.epsilon {
            let beta = o.d.checked_sub(zs).ok_or_else(|| {
                Error::Inconsistent(format!("level {i}: d = {} below s·ζ = {zs}", o.d))
            })?;
            q.pow(beta as u32)
        } else {
            0
        };
        let term = lifted.checked_sub(comp).ok_or_else(|| {
            Error::Inconsistent(format!("level {i}: negative per-map term"))
        })?;
        total += e_pow * term;
    }
    Ok(total)
}

/// Number of epimorphisms only, with the per-level checks.
pub fn epi_total(p: &Presentation, tower: &ExtensionTower, cfg: &CountConfig) -> Result<u128> {
    if tower.depth() == 0 {
        return Ok(1);
    }
    let (levels, _) = sweep(p, tower, tower.depth(), cfg, false)?;
    Ok(levels.last().map_or(1, |l| l.epi_out))
}

/// |Aut Γ|: brute force within the work budget, otherwise |Epi(P_Γ, Γ)| for
/// the multiplication-table presentation P_Γ.
pub fn aut_count(tower: &ExtensionTower, cfg: &CountConfig) -> Result<(u128, &'static str)> {
    match crate::groups::count_isomorphisms(tower.table(), tower.table(), u128::MAX, cfg.aut_work)
    {
        Ok(a) => Ok((a, "aut:search")),
        Err(e) if e.is_cap() => Ok((aut_via_lifting(tower, cfg)?, "aut:lifting")),
        Err(e) => Err(e),
    }
}

/// |Aut Γ| = |Epi(P_Γ, Γ)|.
pub fn aut_via_lifting(tower: &ExtensionTower, cfg: &CountConfig) -> Result<u128> {
    let p = table_presentation(tower.table())?;
    epi_total(&p, tower, cfg)
}

/// Presentation of a finite group on its greedy generators, one relator
/// w(x)·g·w(xg)⁻¹ per non-tree edge of the Cayley graph.
pub fn table_presentation(t: &FiniteGroupTable) -> Result<Presentation> {
    let gens = t.greedy_generators();
    let n = t.order();
    let mut words: Vec<Option<Word>> = vec![None; n];
    words[0] = Some(Word::empty());
    let mut queue = vec![0u32];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for (j, &g) in gens.iter().enumerate() {
            let y = t.mul(x, g);
            if words[y as usize].is_none() {
                words[y as usize] = Some(words[x as usize].as_ref().unwrap().mul(&Word::gen(j)));
                queue.push(y);
            }
        }
    }
    let words: Vec<Word> = words.into_iter().map(Option::unwrap).collect();
    let mut relators = Vec::new();
    for x in 0..n as u32 {
        for (j, &g) in gens.iter().enumerate() {
            let y = t.mul(x, g);
            let r = words[x as usize].mul(&Word::gen(j)).mul(&words[y as usize].inverse());
            if !r.is_empty() {
                relators.push(r);
            }
        }
    }
    relators.sort();
    relators.dedup();
    let names = (1..=gens.len()).map(|i| format!("g{i}")).collect();
    Presentation::new(names, relators)
}

/// Full report: Epi with level tallies, Aut, δ and optionally Hom.
pub fn epi_count(
    p: &Presentation,
    tower: &ExtensionTower,
    source: &str,
    cfg: &CountConfig,
) -> Result<CountReport> {
    let (levels, _) = sweep(p, tower, tower.depth(), cfg, false)?;
    let epi = levels.last().map_or(1, |l| l.epi_out);
    let (aut, aut_route) = aut_count(tower, cfg)?;
    let delta = checked_delta(epi, aut)?;
    let hom = if cfg.with_hom { Some(hom_count(p, tower, cfg)?) } else { None };
    if let Some(h) = hom {
        if epi > h {
            return Err(Error::Inconsistent(format!("|Epi| = {epi} exceeds |Hom| = {h}")));
        }
    }
    Ok(CountReport {
        source: source.to_string(),
        target: tower.name().to_string(),
        hom,
        epi,
        aut,
        delta,
        levels,
        provenance: vec!["epi:lifting".into(), "levels:closed-arithmetic".into(), aut_route.into()],
    })
}

pub(crate) fn checked_delta(epi: u128, aut: u128) -> Result<u128> {
    if aut == 0 || epi % aut != 0 {
        return Err(Error::Inconsistent(format!("|Epi| = {epi} is not a multiple of |Aut| = {aut}")));
    }
    Ok(epi / aut)
}

/// δ_Γ(G) = |Epi(G, Γ)| / |Aut Γ|.
pub fn delta(p: &Presentation, tower: &ExtensionTower, cfg: &CountConfig) -> Result<u128> {
    let epi = epi_total(p, tower, cfg)?;
    let (aut, _) = aut_count(tower, cfg)?;
    checked_delta(epi, aut)
}
