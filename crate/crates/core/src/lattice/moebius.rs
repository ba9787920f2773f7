use super::{Bits, SubgroupLattice};
use crate::arith::factorize;
use crate::error::{Error, Result};
use crate::groups::{ExtensionTower, FiniteGroupTable};

/// μ(H) = μ(H, Γ), one entry per lattice subgroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoebiusTable {
    pub values: Vec<i64>,
}

/// Top-down: μ(Γ) = 1 and Σ_{H ≤ K ≤ Γ} μ(K) = 0 for H < Γ.
pub fn moebius(l: &SubgroupLattice) -> MoebiusTable {
    let n = l.len();
    let mut values = vec![0i64; n];
    for h in (0..n).rev() {
        if h == l.top() {
            values[h] = 1;
            continue;
        }
        let above: i64 = (h + 1..n).filter(|&k| l.contains(k, h)).map(|k| values[k]).sum();
        values[h] = -above;
    }
    MoebiusTable { values }
}

/// μ(H) = (−1)^r h_1⋯h_{r−1} from the chief series of the tower, where
/// Γ = K_0 > K_1 > ... > K_r = H are the distinct terms Γ_i H and h_i counts
/// the X ≥ K_{i+1} with X ∩ K_i = K_{i+1} and ⟨X, K_i⟩ = Γ.
/// The lattice must be that of the tower's own table.
pub fn moebius_kt(l: &SubgroupLattice, tower: &ExtensionTower) -> Result<MoebiusTable> {
    if l.group() != tower.table() {
        return Err(Error::BadParameter("lattice and tower describe different tables".into()));
    }
    let n = tower.order();
    // Γ_i: kernel of the projection to level i
    let kernels: Vec<Vec<u32>> = (0..=tower.depth())
        .map(|i| {
            let w = tower.level_table(i).order() as u32;
            (0..n as u32).filter(|x| x % w == 0).collect()
        })
        .collect();
    let t = l.group();
    let mut values = Vec::with_capacity(l.len());
    for h in 0..l.len() {
        let sub = l.subgroup(h);
        let mut chain: Vec<usize> = Vec::new();
        for k in &kernels {
            let mut gens = sub.gens.clone();
            gens.extend(k);
            let bits = Bits::from_mask(&t.closure_mask(&gens));
            let idx = l.position(&bits).expect("products with normal subgroups are subgroups");
            if chain.last() != Some(&idx) {
                chain.push(idx);
            }
        }
        let r = chain.len() - 1;
        let mut mu: i64 = if r % 2 == 0 { 1 } else { -1 };
        for i in 1..r {
            let (mid, lower) = (chain[i], chain[i + 1]);
            let count = (0..l.len())
                .filter(|&x| l.contains(x, lower))
                .filter(|&x| l.meet(x, mid) == lower && l.join(x, mid) == l.top())
                .count();
            mu *= count as i64;
        }
        values.push(mu);
    }
    Ok(MoebiusTable { values })
}

/// Upper central series reaches the whole group.
pub fn is_nilpotent(t: &FiniteGroupTable) -> bool {
    let n = t.order();
    let mut z = vec![false; n];
    z[0] = true;
    loop {
        let next: Vec<bool> = (0..n as u32)
            .map(|x| {
                (0..n as u32).all(|g| {
                    let c = t.mul(t.mul(t.inv(x), t.inv(g)), t.mul(x, g));
                    z[c as usize]
                })
            })
            .collect();
        if next.iter().all(|&b| b) {
            return true;
        }
        if next == z {
            return false;
        }
        z = next;
    }
}

/// μ(H) = ∏ (−1)^{s} q^{s(s−1)/2} when H is normal with Γ/H a product of
/// elementary abelian groups, 0 otherwise.
pub fn moebius_weisner(l: &SubgroupLattice) -> Result<MoebiusTable> {
    let t = l.group();
    if !is_nilpotent(t) {
        return Err(Error::NotNilpotent);
    }
    let n = t.order();
    let values = (0..l.len())
        .map(|h| {
            let sub = &l.subgroup(h).bits;
            if !l.is_normal(h) {
                return 0;
            }
            // every coset has squarefree order and the quotient is abelian
            for x in 0..n as u32 {
                let mut k = 1u64;
                let mut y = x;
                while !sub.contains(y) {
                    y = t.mul(y, x);
                    k += 1;
                }
                if factorize(k).iter().any(|&(_, e)| e > 1) {
                    return 0;
                }
                for g in 0..n as u32 {
                    let c = t.mul(t.mul(t.inv(x), t.inv(g)), t.mul(x, g));
                    if !sub.contains(c) {
                        return 0;
                    }
                }
            }
            let index = (n / l.subgroup(h).order) as u64;
            factorize(index)
                .into_iter()
                .map(|(q, s)| {
                    let sign = if s % 2 == 0 { 1 } else { -1 };
                    sign * (q as i64).pow(s * (s - 1) / 2)
                })
                .product()
        })
        .collect();
    Ok(MoebiusTable { values })
}

/// A way of computing the Möbius function, selectable by name.
pub trait MoebiusVariant: Send + Sync {
    fn name(&self) -> &'static str;
    fn compute(&self, l: &SubgroupLattice, tower: &ExtensionTower) -> Result<MoebiusTable>;
}

struct Inductive;
struct KratzerThevenaz;
struct Weisner;

impl MoebiusVariant for Inductive {
    fn name(&self) -> &'static str {
        "inductive"
    }
    fn compute(&self, l: &SubgroupLattice, _: &ExtensionTower) -> Result<MoebiusTable> {
        Ok(moebius(l))
    }
}

impl MoebiusVariant for KratzerThevenaz {
    fn name(&self) -> &'static str {
        "kt"
    }
    fn compute(&self, l: &SubgroupLattice, tower: &ExtensionTower) -> Result<MoebiusTable> {
        moebius_kt(l, tower)
    }
}

impl MoebiusVariant for Weisner {
    fn name(&self) -> &'static str {
        "weisner"
    }
    fn compute(&self, l: &SubgroupLattice, _: &ExtensionTower) -> Result<MoebiusTable> {
        moebius_weisner(l)
    }
}

static VARIANTS: &[&dyn MoebiusVariant] = &[&Inductive, &KratzerThevenaz, &Weisner];

pub fn moebius_variants() -> &'static [&'static dyn MoebiusVariant] {
    VARIANTS
}
