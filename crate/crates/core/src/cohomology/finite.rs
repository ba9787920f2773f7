use crate::error::{Error, Result};
use crate::groups::{matrix, FiniteGroupTable};

/// |Z^1_σ(B, Z_q^s)| for a finite group B, by enumerating the values of the
/// cocycle on a generating set, extending along a breadth-first spanning tree
/// with f(bg) = f(b) + σ_b f(g), and keeping the consistent assignments.
pub fn finite_source_z1(
    base: &FiniteGroupTable,
    sigma: &dyn Fn(u32) -> Vec<u32>,
    q: u32,
    s: usize,
    cap: u64,
) -> Result<u64> {
    let gens = base.greedy_generators();
    let ne = (q as u64).pow(s as u32);
    let total = ne.checked_pow(gens.len() as u32).unwrap_or(u64::MAX);
    if total > cap {
        return Err(Error::cap("cocycle candidates", cap as u128));
    }
    let n = base.order();
    // spanning tree: (element, parent, generator)
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut tree = vec![(0u32, 0u32, 0usize)];
    let mut head = 0;
    while head < tree.len() {
        let x = tree[head].0;
        head += 1;
        for (j, &g) in gens.iter().enumerate() {
            let y = base.mul(x, g);
            if !seen[y as usize] {
                seen[y as usize] = true;
                tree.push((y, x, j));
            }
        }
    }
    let sig: Vec<Vec<u32>> = (0..n as u32).map(sigma).collect();
    let mut count = 0;
    let mut f = vec![vec![0u32; s]; n];
    for idx in 0..total {
        let mut rest = idx;
        let vals: Vec<Vec<u32>> = gens
            .iter()
            .map(|_| {
                let v = matrix::decode((rest % ne) as usize, s, q);
                rest /= ne;
                v
            })
            .collect();
        for &(y, x, j) in &tree[1..] {
            let mut v = matrix::apply(&sig[x as usize], &vals[j], s, q);
            matrix::add_vec(&mut v, &f[x as usize], q);
            f[y as usize] = v;
        }
        let ok = (0..n as u32).all(|x| {
            gens.iter().enumerate().all(|(j, &g)| {
                let mut v = matrix::apply(&sig[x as usize], &vals[j], s, q);
                matrix::add_vec(&mut v, &f[x as usize], q);
                v == f[base.mul(x, g) as usize]
            })
        });
        if ok {
            count += 1;
        }
    }
    Ok(count)
}
