use super::table::FiniteGroupTable;
use crate::error::{Error, Result};

/// Breadth-first spanning data for the subgroups generated by growing
/// prefixes of a generator list.
struct Spanning {
    /// for prefix k+1: elements of ⟨g_0..g_k⟩ in BFS order as (element, parent, gen)
    steps: Vec<Vec<(u32, u32, usize)>>,
    members: Vec<Vec<bool>>,
}

impl Spanning {
    fn new(t: &FiniteGroupTable, gens: &[u32]) -> Self {
        let mut steps = Vec::new();
        let mut members = Vec::new();
        for k in 1..=gens.len() {
            let mut seen = vec![false; t.order()];
            seen[0] = true;
            let mut order = vec![(0u32, 0u32, usize::MAX)];
            let mut head = 0;
            while head < order.len() {
                let x = order[head].0;
                head += 1;
                for (j, &g) in gens[..k].iter().enumerate() {
                    let y = t.mul(x, g);
                    if !seen[y as usize] {
                        seen[y as usize] = true;
                        order.push((y, x, j));
                    }
                }
            }
            steps.push(order);
            members.push(seen);
        }
        Spanning { steps, members }
    }
}

/// Number of injective homomorphisms src -> dst that are onto (isomorphisms),
/// stopping once `limit` have been found.
pub fn count_isomorphisms(
    src: &FiniteGroupTable,
    dst: &FiniteGroupTable,
    limit: u128,
    cap: u128,
) -> Result<u128> {
    if src.order() != dst.order() {
        return Ok(0);
    }
    let n = src.order();
    if n == 1 {
        return Ok(1);
    }
    let gens = src.greedy_generators();
    let span = Spanning::new(src, &gens);
    let dst_orders: Vec<usize> = (0..n as u32).map(|a| dst.element_order(a)).collect();
    let candidates: Vec<Vec<u32>> = gens
        .iter()
        .map(|&g| {
            let o = src.element_order(g);
            (0..n as u32).filter(|&h| dst_orders[h as usize] == o).collect()
        })
        .collect();
    let mut work: u128 = 0;
    let mut images = Vec::with_capacity(gens.len());
    let mut phi = vec![u32::MAX; n];
    let mut found = 0u128;
    search(
        src, dst, &gens, &span, &candidates, 0, &mut images, &mut phi, &mut found, limit, &mut work,
        cap,
    )?;
    Ok(found)
}

#[allow(clippy::too_many_arguments)]
fn search(
    src: &FiniteGroupTable,
    dst: &FiniteGroupTable,
    gens: &[u32],
    span: &Spanning,
    candidates: &[Vec<u32>],
    k: usize,
    images: &mut Vec<u32>,
    phi: &mut Vec<u32>,
    found: &mut u128,
    limit: u128,
    work: &mut u128,
    cap: u128,
) -> Result<()> {
    if k == gens.len() {
        // φ is a homomorphism on the whole group; it is onto iff injective
        let mut hit = vec![false; dst.order()];
        for &y in phi.iter() {
            if hit[y as usize] {
                return Ok(());
            }
            hit[y as usize] = true;
        }
        *found += 1;
        return Ok(());
    }
    for &h in &candidates[k] {
        if *found >= limit {
            return Ok(());
        }
        images.push(h);
        let steps = &span.steps[k];
        *work += steps.len() as u128 * (k as u128 + 1);
        if *work > cap {
            return Err(Error::cap("isomorphism search work", cap));
        }
        phi[0] = 0;
        for &(y, x, j) in &steps[1..] {
            phi[y as usize] = dst.mul(phi[x as usize], images[j]);
        }
        let members = &span.members[k];
        let consistent = steps.iter().all(|&(x, _, _)| {
            images.iter().enumerate().all(|(j, &img)| {
                let y = src.mul(x, gens[j]);
                members[y as usize] && phi[y as usize] == dst.mul(phi[x as usize], img)
            })
        });
        if consistent {
            search(src, dst, gens, span, candidates, k + 1, images, phi, found, limit, work, cap)?;
        }
        images.pop();
    }
    Ok(())
}

pub const DEFAULT_AUT_WORK: u128 = 2_000_000_000;

/// |Aut Γ| by generator-image search.
pub fn aut_order(t: &FiniteGroupTable) -> Result<u128> {
    count_isomorphisms(t, t, u128::MAX, DEFAULT_AUT_WORK)
}

pub fn is_isomorphic(a: &FiniteGroupTable, b: &FiniteGroupTable) -> Result<bool> {
    Ok(count_isomorphisms(a, b, 1, DEFAULT_AUT_WORK)? > 0)
}
