use rayon::prelude::*;
use serde::Serialize;
use solvquot::cohomology::{build_system, solve, SignConvention};
use solvquot::counting::{epi_total, hom_count, CountConfig};
use solvquot::groups::{builtin_group, SOLVABLE_CATALOG};
use solvquot::presentations::builtin_presentation;
use solvquot::Result;

use crate::{brute_hom_epi, brute_homs, brute_lift_accepted, OracleBudget, Outcome};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Unverified,
}

/// One engine-versus-oracle comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRow {
    pub check: String,
    pub source: String,
    pub target: String,
    pub engine: Option<String>,
    pub oracle: Option<String>,
    pub status: CheckStatus,
}

impl CheckRow {
    fn compare(check: String, source: &str, target: &str, engine: Option<String>, oracle: Option<String>) -> Self {
        let status = match (&engine, &oracle) {
            (Some(e), Some(o)) if e == o => CheckStatus::Pass,
            (Some(_), Some(_)) => CheckStatus::Fail,
            _ => CheckStatus::Unverified,
        };
        CheckRow { check, source: source.into(), target: target.into(), engine, oracle, status }
    }
}

pub fn count_sources() -> &'static [&'static str] {
    &[
        "free(2)",
        "bs(1,3)",
        "bs(2,4)",
        "bs(2,6)",
        "klein",
        "surface(2)",
        "braid(3)",
        "braid(4)",
        "parafree(1,3)",
        "parafree(2,4)",
    ]
}

/// Catalog groups of order at most 24.
pub fn count_targets() -> Vec<&'static str> {
    SOLVABLE_CATALOG
        .iter()
        .copied()
        .filter(|s| builtin_group(s).map(|g| g.order() <= 24).unwrap_or(false))
        .collect()
}

pub fn lift_sources() -> &'static [&'static str] {
    &["free(2)", "bs(1,3)", "bs(2,4)", "klein", "surface(2)", "braid(3)"]
}

pub fn lift_targets() -> &'static [&'static str] {
    &["D(8)", "Q(8)", "D(12)", "S(4)"]
}

/// hom and epi counts from the lifting engine against raw enumeration.
pub fn verify_counts(
    sources: &[&str],
    targets: &[&str],
    budget: &OracleBudget,
    cfg: &CountConfig,
) -> Result<Vec<CheckRow>> {
    let pairs: Vec<(&str, &str)> = sources.iter().flat_map(|s| targets.iter().map(move |t| (*s, *t))).collect();
    let rows: Vec<Vec<CheckRow>> = pairs
        .par_iter()
        .map(|&(s, t)| -> Result<Vec<CheckRow>> {
            let p = builtin_presentation(s)?;
            let tw = builtin_group(t)?;
            let engine_hom = hom_count(&p, &tw, cfg).ok().map(|x| x.to_string());
            let engine_epi = epi_total(&p, &tw, cfg).ok().map(|x| x.to_string());
            let (oracle_hom, oracle_epi) = match brute_hom_epi(&p, tw.table(), budget) {
                Outcome::Verified((h, e)) => (Some(h.to_string()), Some(e.to_string())),
                Outcome::Unverified(_) => (None, None),
            };
            Ok(vec![
                CheckRow::compare("hom".into(), s, t, engine_hom, oracle_hom),
                CheckRow::compare("epi".into(), s, t, engine_epi, oracle_epi),
            ])
        })
        .collect::<Result<_>>()?;
    Ok(rows.into_iter().flatten().collect())
}

/// For every layer of every target and every homomorphism ρ onto the level
/// below it, the cocycle system's solution set against the directly
/// evaluated lifts. Values are the total number of accepted lifts.
pub fn verify_lifts(sources: &[&str], targets: &[&str], budget: &OracleBudget) -> Result<Vec<CheckRow>> {
    let mut jobs = Vec::new();
    for &s in sources {
        for &t in targets {
            let depth = builtin_group(t)?.depth();
            jobs.extend((0..depth).map(|i| (s, t, i)));
        }
    }
    jobs.par_iter()
        .map(|&(s, t, i)| -> Result<CheckRow> {
            let p = builtin_presentation(s)?;
            let tw = builtin_group(t)?;
            let base = tw.level_table(i);
            let layer = tw.layer(i);
            let check = format!("lift layer {i}");
            let rhos = match brute_homs(&p, base, budget) {
                Outcome::Verified(r) => r,
                Outcome::Unverified(_) => return Ok(CheckRow::compare(check, s, t, None, None)),
            };
            let (mut engine_total, mut oracle_total, mut agree) = (0usize, 0usize, true);
            for rho in &rhos {
                let sys = build_system(&p, base, rho, layer, SignConvention::Twisted)?;
                let mut ours = solve(&sys).solutions();
                ours.sort();
                let theirs = match brute_lift_accepted(&p, base, rho, layer, budget) {
                    Outcome::Verified(v) => v,
                    Outcome::Unverified(_) => return Ok(CheckRow::compare(check, s, t, None, None)),
                };
                engine_total += ours.len();
                oracle_total += theirs.len();
                agree &= ours == theirs;
            }
            let mut row = CheckRow::compare(check, s, t, Some(engine_total.to_string()), Some(oracle_total.to_string()));
            if !agree {
                row.status = CheckStatus::Fail;
            }
            Ok(row)
        })
        .collect()
}
