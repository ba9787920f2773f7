use solvquot::groups::{ElementaryLayer, FiniteGroupTable};
use solvquot::presentations::Presentation;

use crate::{tuple_count, OracleBudget, Outcome};

/// An element (a, b) of the extension E ×_χ B.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Pair {
    a: Vec<u64>,
    b: u32,
}

struct Ext<'a> {
    base: &'a FiniteGroupTable,
    layer: &'a ElementaryLayer,
    q: u64,
    s: usize,
}

impl Ext<'_> {
    fn act(&self, b: u32, v: &[u64]) -> Vec<u64> {
        let m = self.layer.sigma(b);
        (0..self.s)
            .map(|i| (0..self.s).map(|j| m[i * self.s + j] as u64 * v[j]).sum::<u64>() % self.q)
            .collect()
    }

    fn chi(&self, b1: u32, b2: u32) -> Vec<u64> {
        self.layer.chi(b1, b2).iter().map(|&x| x as u64).collect()
    }

    /// f(gh) = f(g) + σ_{ρg} f(h) + χ(ρg, ρh)
    fn mul(&self, x: &Pair, y: &Pair) -> Pair {
        let t = self.act(x.b, &y.a);
        let c = self.chi(x.b, y.b);
        let a = (0..self.s).map(|i| (x.a[i] + t[i] + c[i]) % self.q).collect();
        Pair { a, b: self.base.mul(x.b, y.b) }
    }

    /// From f(g g⁻¹) = 0: f(g⁻¹) = σ_{ρg⁻¹}(−f(g) − χ(ρg, ρg⁻¹)).
    fn inv(&self, x: &Pair) -> Pair {
        let bi = self.base.inv(x.b);
        let c = self.chi(x.b, bi);
        let neg: Vec<u64> = (0..self.s).map(|i| (2 * self.q - x.a[i] - c[i]) % self.q).collect();
        Pair { a: self.act(bi, &neg), b: bi }
    }
}

/// True iff x_j ↦ (values[j·s..(j+1)·s], ρ(x_j)) kills every relator of `p`
/// in the extension described by `layer` over `base`.
pub fn brute_lift_check(
    p: &Presentation,
    base: &FiniteGroupTable,
    rho: &[u32],
    layer: &ElementaryLayer,
    values: &[u64],
) -> bool {
    let ext = Ext { base, layer, q: layer.q as u64, s: layer.s };
    let gens: Vec<Pair> = (0..p.num_generators())
        .map(|j| Pair { a: values[j * ext.s..(j + 1) * ext.s].iter().map(|&v| v % ext.q).collect(), b: rho[j] })
        .collect();
    let one = Pair { a: vec![0; ext.s], b: 0 };
    p.relators().iter().all(|r| {
        let mut acc = one.clone();
        for l in r.letters() {
            let g = &gens[l.gen];
            acc = if l.exp > 0 { ext.mul(&acc, g) } else { ext.mul(&acc, &ext.inv(g)) };
        }
        acc == one
    })
}

/// Every candidate value vector accepted by `brute_lift_check`, in
/// lexicographic order.
pub fn brute_lift_accepted(
    p: &Presentation,
    base: &FiniteGroupTable,
    rho: &[u32],
    layer: &ElementaryLayer,
    budget: &OracleBudget,
) -> Outcome<Vec<Vec<u64>>> {
    let cols = p.num_generators() * layer.s;
    let q = layer.q as u64;
    let len: usize = p.relators().iter().map(|r| r.len()).sum();
    let ops = tuple_count(q as usize, cols).saturating_mul(len.max(1) as u128);
    if ops > budget.max_letter_ops {
        return Outcome::Unverified(format!("{ops} letter-operations exceed the budget of {}", budget.max_letter_ops));
    }
    let mut out = Vec::new();
    let mut v = vec![0u64; cols];
    loop {
        if brute_lift_check(p, base, rho, layer, &v) {
            out.push(v.clone());
        }
        let mut j = cols;
        loop {
            if j == 0 {
                return Outcome::Verified(out);
            }
            j -= 1;
            v[j] += 1;
            if v[j] < q {
                break;
            }
            v[j] = 0;
        }
    }
}
