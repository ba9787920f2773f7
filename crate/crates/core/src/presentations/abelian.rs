use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::Presentation;
use crate::arith::factorize;
use crate::linalg::smith_invariants;

/// Structure of H_1(G, Z) = Z^rank ⊕ torsion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    /// invariant factors greater than one, in divisibility order
    pub torsion: Vec<String>,
    /// prime -> multiplicities, entry i-1 counts summands Z_{p^i}
    pub primary: BTreeMap<u64, Vec<u32>>,
}

impl AbelianInvariants {
    pub fn multiplicities(&self, p: u64) -> Vec<u32> {
        self.primary.get(&p).cloned().unwrap_or_default()
    }

    /// Σ i·α_i
    pub fn alpha(&self, p: u64) -> u32 {
        self.multiplicities(p).iter().enumerate().map(|(i, &a)| (i as u32 + 1) * a).sum()
    }

    /// Σ α_i
    pub fn beta(&self, p: u64) -> u32 {
        self.multiplicities(p).iter().sum()
    }

    /// Σ_{i<s} i·α_i
    pub fn alpha_below(&self, p: u64, s: u32) -> u32 {
        self.multiplicities(p)
            .iter()
            .enumerate()
            .filter(|(i, _)| (*i as u32 + 1) < s)
            .map(|(i, &a)| (i as u32 + 1) * a)
            .sum()
    }

    /// Order of the torsion subgroup, if it fits.
    pub fn torsion_order(&self) -> BigInt {
        let mut t = BigInt::one();
        for (p, ms) in &self.primary {
            for (i, &a) in ms.iter().enumerate() {
                t *= num_traits::pow(BigInt::from(*p), (i + 1) * a as usize);
            }
        }
        t
    }
}

pub fn abelian_invariants(p: &Presentation) -> AbelianInvariants {
    let m: Vec<Vec<BigInt>> = p
        .exponent_matrix()
        .into_iter()
        .map(|row| row.into_iter().map(BigInt::from).collect())
        .collect();
    let diag = smith_invariants(m);
    let nonzero = diag.iter().filter(|d| !d.is_zero()).count();
    let free_rank = p.num_generators() - nonzero;
    let mut torsion = Vec::new();
    let mut primary: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
    for d in diag.iter().filter(|d| **d > BigInt::one()) {
        torsion.push(d.to_string());
        let d = d.to_u64().expect("torsion coefficient too large");
        for (q, e) in factorize(d) {
            let v = primary.entry(q).or_default();
            if v.len() < e as usize {
                v.resize(e as usize, 0);
            }
            v[e as usize - 1] += 1;
        }
    }
    AbelianInvariants { free_rank, torsion, primary }
}
