use super::matrix;
use super::table::FiniteGroupTable;
use super::tower::{ElementaryLayer, ExtensionTower};
use crate::arith::is_prime;
use crate::error::{Error, Result};

pub const DEFAULT_ORDER_CAP: usize = 512;

/// Decomposes a solvable group table into an extension tower whose top layer is a
/// minimal normal subgroup, recursively. Returns the tower together with the
/// isomorphism from table indices to tower indices.
pub fn chief_series_with_map(
    t: &FiniteGroupTable,
    cap: usize,
) -> Result<(ExtensionTower, Vec<u32>)> {
    if t.order() > cap {
        return Err(Error::cap("group order", cap as u128));
    }
    if !t.is_solvable() {
        return Err(Error::NotSolvable);
    }
    let (layers, phi) = decompose(t)?;
    let tower = ExtensionTower::build("table", layers)?;
    let top = tower.table();
    for a in 0..t.order() as u32 {
        for b in 0..t.order() as u32 {
            if phi[t.mul(a, b) as usize] != top.mul(phi[a as usize], phi[b as usize]) {
                return Err(Error::Inconsistent("chief series map is not a homomorphism".into()));
            }
        }
    }
    Ok((tower, phi))
}

pub fn chief_series(t: &FiniteGroupTable) -> Result<ExtensionTower> {
    chief_series_with_map(t, DEFAULT_ORDER_CAP).map(|r| r.0)
}

/// Smallest normal closure of a prime-order element of the last nontrivial
/// derived subgroup (ties broken by element index). Returns the mask and prime.
pub fn minimal_normal_subgroup(t: &FiniteGroupTable) -> Option<(Vec<bool>, u32)> {
    if t.order() == 1 {
        return None;
    }
    let mut elems: Vec<u32> = (0..t.order() as u32).collect();
    let mut sub = t.clone();
    loop {
        let d = sub.derived_subgroup();
        let next: Vec<u32> = (0..sub.order() as u32).filter(|&i| d[i as usize]).collect();
        if next.len() == 1 {
            break;
        }
        elems = next.iter().map(|&i| elems[i as usize]).collect();
        sub = sub.subgroup_table(&next);
    }
    let mut best: Option<(usize, Vec<bool>, u32)> = None;
    for &x in &elems {
        let o = t.element_order(x);
        if !is_prime(o as u64) {
            continue;
        }
        let mask = t.normal_closure(&[x]);
        let size = mask.iter().filter(|&&b| b).count();
        if best.as_ref().is_none_or(|(bs, _, _)| size < *bs) {
            best = Some((size, mask, o as u32));
        }
    }
    best.map(|(_, m, q)| (m, q))
}

fn decompose(t: &FiniteGroupTable) -> Result<(Vec<ElementaryLayer>, Vec<u32>)> {
    let n = t.order();
    if n == 1 {
        return Ok((Vec::new(), vec![0]));
    }
    let (mask, q) = minimal_normal_subgroup(t).ok_or(Error::NotSolvable)?;
    // basis of N as a vector space over Z_q
    let mut basis: Vec<u32> = Vec::new();
    let mut span = vec![false; n];
    span[0] = true;
    for x in 0..n as u32 {
        if mask[x as usize] && !span[x as usize] {
            basis.push(x);
            span = t.closure_mask(&basis);
        }
    }
    let s = basis.len();
    let ne = (q as usize).pow(s as u32);
    // coordinates of every element of N
    let mut coord: Vec<Option<usize>> = vec![None; n];
    for idx in 0..ne {
        let v = matrix::decode(idx, s, q);
        let mut e = 0;
        for (k, &c) in v.iter().enumerate() {
            e = t.mul(e, t.pow(basis[k], c as i64));
        }
        coord[e as usize] = Some(idx);
    }
    // cosets of N, labelled in order of their smallest element
    let mut coset = vec![u32::MAX; n];
    let mut reps = Vec::new();
    let nelems: Vec<u32> = (0..n as u32).filter(|&x| mask[x as usize]).collect();
    for x in 0..n as u32 {
        if coset[x as usize] == u32::MAX {
            let label = reps.len() as u32;
            reps.push(x);
            for &m in &nelems {
                coset[t.mul(m, x) as usize] = label;
            }
        }
    }
    let nq = reps.len();
    let mut qmul = Vec::with_capacity(nq * nq);
    for &a in &reps {
        for &b in &reps {
            qmul.push(coset[t.mul(a, b) as usize]);
        }
    }
    let quotient = FiniteGroupTable::from_parts(nq, qmul);
    let (mut layers, psi) = decompose(&quotient)?;
    // section over the tower's base: base index -> representative in t
    let mut section = vec![0u32; nq];
    for (label, &rep) in reps.iter().enumerate() {
        section[psi[label] as usize] = rep;
    }
    let sigma = |b: u32| {
        let g = section[b as usize];
        let mut m = vec![0u32; s * s];
        for (c, &e) in basis.iter().enumerate() {
            let img = t.mul(t.mul(g, e), t.inv(g));
            let v = matrix::decode(coord[img as usize].unwrap(), s, q);
            for r in 0..s {
                m[r * s + c] = v[r];
            }
        }
        m
    };
    let base_order = nq;
    let mut base_mul = vec![0u32; nq * nq];
    for a in 0..nq {
        for b in 0..nq {
            let x = coset[t.mul(section[a], section[b]) as usize];
            base_mul[a * nq + b] = psi[x as usize];
        }
    }
    let chi = |b1: u32, b2: u32| {
        let b12 = base_mul[b1 as usize * nq + b2 as usize];
        let prod = t.mul(section[b1 as usize], section[b2 as usize]);
        let k = t.mul(prod, t.inv(section[b12 as usize]));
        matrix::decode(coord[k as usize].unwrap(), s, q)
    };
    let layer = ElementaryLayer::from_fns(q, s, base_order, sigma, chi)?;
    layers.push(layer);
    let mut phi = vec![0u32; n];
    for x in 0..n as u32 {
        let b = psi[coset[x as usize] as usize];
        let a = t.mul(x, t.inv(section[b as usize]));
        let enc = coord[a as usize].unwrap();
        phi[x as usize] = (b as usize + base_order * enc) as u32;
    }
    Ok((layers, phi))
}
