use super::engine::{epi_total, CountConfig};
use super::eulerian::gaschutz_eulerian;
use crate::error::{Error, Result};
use crate::groups::ExtensionTower;
use crate::presentations::Presentation;

/// A way of computing |Epi(G, Γ)|, selectable by name.
pub trait EpiStrategy: Send + Sync {
    fn name(&self) -> &'static str;
    fn describe(&self) -> &'static str;
    fn epi(&self, p: &Presentation, tower: &ExtensionTower, cfg: &CountConfig) -> Result<u128>;
}

struct Lifting;
struct Moebius;
struct Gaschutz;

impl EpiStrategy for Lifting {
    fn name(&self) -> &'static str {
        "lifting"
    }
    fn describe(&self) -> &'static str {
        "lift epimorphisms through the chief series, checking every level"
    }
    fn epi(&self, p: &Presentation, tower: &ExtensionTower, cfg: &CountConfig) -> Result<u128> {
        epi_total(p, tower, cfg)
    }
}

impl EpiStrategy for Moebius {
    fn name(&self) -> &'static str {
        "moebius"
    }
    fn describe(&self) -> &'static str {
        "invert Hom counts of all subgroups over the subgroup lattice"
    }
    fn epi(&self, p: &Presentation, tower: &ExtensionTower, cfg: &CountConfig) -> Result<u128> {
        crate::lattice::epi_via_moebius(p, tower, cfg)
    }
}

impl EpiStrategy for Gaschutz {
    fn name(&self) -> &'static str {
        "gaschutz"
    }
    fn describe(&self) -> &'static str {
        "product formula over chief-factor module types (free sources only)"
    }
    fn epi(&self, p: &Presentation, tower: &ExtensionTower, _: &CountConfig) -> Result<u128> {
        if !p.relators().is_empty() {
            return Err(Error::BadParameter("the gaschutz strategy needs a free source".into()));
        }
        gaschutz_eulerian(tower, p.num_generators() as u32)
    }
}

static STRATEGIES: &[&dyn EpiStrategy] = &[&Lifting, &Moebius, &Gaschutz];

pub fn epi_strategies() -> &'static [&'static dyn EpiStrategy] {
    STRATEGIES
}

pub fn epi_strategy(name: &str) -> Result<&'static dyn EpiStrategy> {
    STRATEGIES
        .iter()
        .copied()
        .find(|s| s.name() == name)
        .ok_or_else(|| Error::UnknownFamily(name.to_string()))
}
