use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::ExtensionTower;
use crate::linalg::bigint_pow;

/// One isomorphism type of chief factor, as a module for the whole group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModuleType {
    pub q: u32,
    pub s: usize,
    pub zeta: bool,
    pub kappa: u32,
    /// complemented factors of this type
    pub complemented: u32,
    /// the others
    pub frattini: u32,
    /// tower levels carrying this type
    pub levels: Vec<usize>,
}

/// Groups the chief factors of a tower into module isomorphism types.
pub fn module_types(tower: &ExtensionTower) -> Vec<ModuleType> {
    let mut types: Vec<ModuleType> = Vec::new();
    for i in 0..tower.depth() {
        let l = tower.layer(i);
        let c = tower.constants(i);
        let found = types.iter_mut().find(|t| {
            let j = t.levels[0];
            t.q == l.q && t.s == l.s && tower.modules_isomorphic(j, i)
        });
        let t = match found {
            Some(t) => t,
            None => {
                types.push(ModuleType {
                    q: l.q,
                    s: l.s,
                    zeta: c.zeta,
                    kappa: c.kappa,
                    complemented: 0,
                    frattini: 0,
                    levels: Vec::new(),
                });
                types.last_mut().unwrap()
            }
        };
        t.levels.push(i);
        if c.split {
            t.complemented += 1;
        } else {
            t.frattini += 1;
        }
    }
    types
}

/// φ(Γ, n) = ∏ over types q^{s·v·n} ∏_{j<u} (q^{sn} − q^{sζ + jκ}).
pub fn gaschutz_eulerian(tower: &ExtensionTower, n: u32) -> Result<u128> {
    let mut acc = BigInt::one();
    for t in module_types(tower) {
        let q = t.q as u64;
        let sn = t.s as u64 * n as u64;
        acc *= bigint_pow(q, sn * t.frattini as u64);
        let zs = if t.zeta { t.s as u64 } else { 0 };
        for j in 0..t.complemented as u64 {
            acc *= bigint_pow(q, sn) - bigint_pow(q, zs + j * t.kappa as u64);
        }
    }
    acc.to_u128()
        .ok_or_else(|| Error::Inconsistent(format!("Eulerian function of {} is {acc}", tower.name())))
}
