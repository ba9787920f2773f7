//! Subgroup lattices, Möbius functions and Hall enumeration.

mod hall;
mod moebius;

pub use hall::{
    epi_dihedral_moebius, epi_via_moebius, eulerian_via_moebius, hall_identities, HallReport,
};
pub use moebius::{
    is_nilpotent, moebius, moebius_kt, moebius_variants, moebius_weisner, MoebiusTable,
    MoebiusVariant,
};

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::groups::FiniteGroupTable;

pub const DEFAULT_LATTICE_CAP: usize = 200;

/// Element set of a subgroup as a bitset over element indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bits(Vec<u64>);

impl Bits {
    pub fn empty(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }

    pub fn from_mask(mask: &[bool]) -> Self {
        let mut b = Bits::empty(mask.len());
        for (i, _) in mask.iter().enumerate().filter(|(_, &m)| m) {
            b.insert(i as u32);
        }
        b
    }

    pub fn insert(&mut self, x: u32) {
        self.0[x as usize / 64] |= 1 << (x % 64);
    }

    pub fn contains(&self, x: u32) -> bool {
        self.0[x as usize / 64] >> (x % 64) & 1 == 1
    }

    pub fn is_subset(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }

    pub fn intersect(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    pub fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn elements(&self) -> Vec<u32> {
        let mut out = Vec::new();
        for (k, &w) in self.0.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                let t = w.trailing_zeros();
                out.push(k as u32 * 64 + t);
                w &= w - 1;
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    pub bits: Bits,
    pub order: usize,
    /// generators that produced it
    pub gens: Vec<u32>,
}

/// All subgroups of a finite group, sorted by order and then by element set.
#[derive(Clone, Debug)]
pub struct SubgroupLattice {
    group: FiniteGroupTable,
    subgroups: Vec<Subgroup>,
}

/// Builds every subgroup by adjoining cyclic subgroups to known ones,
/// starting from the trivial group.
pub fn all_subgroups(t: &FiniteGroupTable) -> Result<SubgroupLattice> {
    all_subgroups_with_cap(t, DEFAULT_LATTICE_CAP)
}

pub fn all_subgroups_with_cap(t: &FiniteGroupTable, cap: usize) -> Result<SubgroupLattice> {
    let n = t.order();
    if n > cap {
        return Err(Error::cap("group order for the subgroup lattice", cap as u128));
    }
    // one generator per cyclic subgroup
    let mut cyclic_seen = HashSet::new();
    let mut cyclic_gens = Vec::new();
    for x in 1..n as u32 {
        if cyclic_seen.insert(Bits::from_mask(&t.closure_mask(&[x]))) {
            cyclic_gens.push(x);
        }
    }
    let trivial = Subgroup { bits: Bits::from_mask(&t.closure_mask(&[])), order: 1, gens: vec![] };
    let mut seen: HashSet<Bits> = HashSet::from([trivial.bits.clone()]);
    let mut subgroups = vec![trivial];
    let mut head = 0;
    while head < subgroups.len() {
        let h = subgroups[head].clone();
        head += 1;
        for &x in &cyclic_gens {
            if h.bits.contains(x) {
                continue;
            }
            let mut gens = h.gens.clone();
            gens.push(x);
            let bits = Bits::from_mask(&t.closure_mask(&gens));
            if seen.insert(bits.clone()) {
                let order = bits.count();
                subgroups.push(Subgroup { bits, order, gens });
            }
        }
    }
    subgroups.sort_by(|a, b| a.order.cmp(&b.order).then_with(|| a.bits.elements().cmp(&b.bits.elements())));
    Ok(SubgroupLattice { group: t.clone(), subgroups })
}

impl SubgroupLattice {
    pub fn group(&self) -> &FiniteGroupTable {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn subgroup(&self, i: usize) -> &Subgroup {
        &self.subgroups[i]
    }

    /// Index of the whole group.
    pub fn top(&self) -> usize {
        self.subgroups.len() - 1
    }

    pub fn contains(&self, big: usize, small: usize) -> bool {
        self.subgroups[small].bits.is_subset(&self.subgroups[big].bits)
    }

    pub fn position(&self, bits: &Bits) -> Option<usize> {
        let order = bits.count();
        let start = self.subgroups.partition_point(|s| s.order < order);
        self.subgroups[start..]
            .iter()
            .take_while(|s| s.order == order)
            .position(|s| &s.bits == bits)
            .map(|k| start + k)
    }

    /// Smallest subgroup containing both.
    pub fn join(&self, a: usize, b: usize) -> usize {
        let mut gens = self.subgroups[a].gens.clone();
        gens.extend(&self.subgroups[b].gens);
        let bits = Bits::from_mask(&self.group.closure_mask(&gens));
        self.position(&bits).expect("lattice is closed under joins")
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        let bits = self.subgroups[a].bits.intersect(&self.subgroups[b].bits);
        self.position(&bits).expect("lattice is closed under intersections")
    }

    pub fn is_normal(&self, i: usize) -> bool {
        let bits = &self.subgroups[i].bits;
        let mask: Vec<bool> = (0..self.group.order() as u32).map(|x| bits.contains(x)).collect();
        self.group.is_normal_mask(&mask)
    }

    /// Multiplication table of subgroup i on its sorted elements.
    pub fn subgroup_table(&self, i: usize) -> FiniteGroupTable {
        self.group.subgroup_table(&self.subgroups[i].bits.elements())
    }
}
