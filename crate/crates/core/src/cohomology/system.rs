use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::Serialize;

use super::action::{evaluate_ring_element, AbelianTarget, TwistedAction};
use crate::error::{Error, Result};
use crate::groups::{matrix, ElementaryLayer, FiniteGroupTable};
use crate::linalg::{bigint_pow, pow_u64, Diagonalized};
use crate::presentations::Presentation;

/// Which constant term is used for inverse letters in the lifting equations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SignConvention {
    /// -σ_p χ(ρ_j^{-1}, ρ_j), where p is the image of the prefix; this is what
    /// evaluating λ(x_j)^{-1} in the extension produces
    #[default]
    Twisted,
    /// -χ(ρ_j^{-1}, ρ_j) with no twist; agrees with the twisted form whenever
    /// the layer is central or split
    Literal,
}

/// Linear system J a = b over A, one block row per relator and one block
/// column per source generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleSystem {
    pub target: AbelianTarget,
    pub relators: usize,
    pub generators: usize,
    /// (relators·dim) × (generators·dim)
    pub matrix: Vec<Vec<u64>>,
    pub rhs: Vec<u64>,
}

impl CocycleSystem {
    pub fn dim(&self) -> usize {
        self.target.dim()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.rhs.iter().all(|&x| x == 0)
    }

    pub fn homogeneous(&self) -> CocycleSystem {
        CocycleSystem { rhs: vec![0; self.rhs.len()], ..self.clone() }
    }

    /// Whether a tuple of generator values satisfies every equation.
    pub fn is_solution(&self, a: &[u64]) -> bool {
        self.matrix.iter().zip(&self.rhs).enumerate().all(|(row, (coeffs, &b))| {
            let m = self.target.modulus(row % self.dim());
            let mut acc = 0u64;
            for (c, x) in coeffs.iter().zip(a) {
                acc = (acc + crate::linalg::mul_mod(*c, *x, m)) % m;
            }
            acc == b % m
        })
    }
}

/// Evaluates each relator under ρ in B; errors unless all are trivial.
pub fn check_homomorphism(p: &Presentation, base: &FiniteGroupTable, rho: &[u32]) -> Result<()> {
    if rho.len() != p.num_generators() {
        return Err(Error::BadParameter(format!(
            "expected {} generator images, got {}",
            p.num_generators(),
            rho.len()
        )));
    }
    for r in p.relators() {
        let mut x = 0;
        for l in r.letters() {
            let g = rho[l.gen];
            x = base.mul(x, if l.exp > 0 { g } else { base.inv(g) });
        }
        if x != 0 {
            return Err(Error::NotHomomorphism);
        }
    }
    Ok(())
}

/// Builds the lifting system for ρ: G -> B through an elementary layer.
/// The homogeneous part is the twisted Fox Jacobian, accumulated letter by letter.
pub fn build_system(
    p: &Presentation,
    base: &FiniteGroupTable,
    rho: &[u32],
    layer: &ElementaryLayer,
    convention: SignConvention,
) -> Result<CocycleSystem> {
    check_homomorphism(p, base, rho)?;
    Ok(build_system_unchecked(p, base, rho, layer, convention))
}

pub(crate) fn build_system_unchecked(
    p: &Presentation,
    base: &FiniteGroupTable,
    rho: &[u32],
    layer: &ElementaryLayer,
    convention: SignConvention,
) -> CocycleSystem {
    let (q, s) = (layer.q, layer.s);
    let n = p.num_generators();
    let m = p.relators().len();
    let mut mat = vec![vec![0u64; n * s]; m * s];
    let mut rhs = vec![0u64; m * s];
    let qq = q as u64;
    for (k, r) in p.relators().iter().enumerate() {
        let mut pre = 0u32;
        let mut c = vec![0u32; s];
        for l in r.letters() {
            let j = l.gen;
            if l.exp > 0 {
                let sig = layer.sigma(pre);
                add_block(&mut mat, k, j, s, sig, false, q);
                matrix::add_vec(&mut c, layer.chi(pre, rho[j]), q);
                pre = base.mul(pre, rho[j]);
            } else {
                let g = base.inv(rho[j]);
                let pg = base.mul(pre, g);
                add_block(&mut mat, k, j, s, layer.sigma(pg), true, q);
                matrix::add_vec(&mut c, layer.chi(pre, g), q);
                let tail = match convention {
                    SignConvention::Twisted => layer.act(pre, layer.chi(g, rho[j])),
                    SignConvention::Literal => layer.chi(g, rho[j]).to_vec(),
                };
                matrix::add_vec(&mut c, &matrix::neg_vec(&tail, q), q);
                pre = pg;
            }
        }
        for i in 0..s {
            rhs[k * s + i] = (qq - c[i] as u64) % qq;
        }
    }
    CocycleSystem {
        target: AbelianTarget::elementary(qq, s),
        relators: m,
        generators: n,
        matrix: mat,
        rhs,
    }
}

fn add_block(mat: &mut [Vec<u64>], k: usize, j: usize, s: usize, sig: &[u32], neg: bool, q: u32) {
    let qq = q as u64;
    for r in 0..s {
        for c in 0..s {
            let x = &mut mat[k * s + r][j * s + c];
            let v = sig[r * s + c] as u64;
            *x = if neg { (*x + qq - v) % qq } else { (*x + v) % qq };
        }
    }
}

/// Homogeneous system J_G^{σρ} obtained by evaluating the symbolic Jacobian.
pub fn twisted_jacobian(p: &Presentation, act: &TwistedAction) -> CocycleSystem {
    let d = act.target.dim();
    let n = p.num_generators();
    let jac = p.symbolic_jacobian();
    let mut mat = vec![vec![0u64; n * d]; jac.len() * d];
    for (k, row) in jac.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            let blk = evaluate_ring_element(e, act);
            for r in 0..d {
                for c in 0..d {
                    mat[k * d + r][j * d + c] = blk.get(r, c);
                }
            }
        }
    }
    CocycleSystem {
        target: act.target.clone(),
        relators: jac.len(),
        generators: n,
        rhs: vec![0; jac.len() * d],
        matrix: mat,
    }
}

/// Per-prime diagonalization of a cocycle system. Within a prime, factors of
/// exponent r are embedded in Z_{q^R} by scaling each row by q^{R-r}; every
/// solution over Z_{q^r} then lifts in q^{R-r} ways per unknown.
#[derive(Clone, Debug)]
pub struct SolvedSystem {
    blocks: Vec<PrimeBlock>,
    cols: usize,
}

#[derive(Clone, Debug)]
struct PrimeBlock {
    q: u64,
    big_r: u32,
    cols: Vec<usize>,
    col_r: Vec<u32>,
    diag: Diagonalized,
}

impl PrimeBlock {
    fn log_count(&self) -> u64 {
        let lift: u64 = self.col_r.iter().map(|&r| (self.big_r - r) as u64).sum();
        self.diag.log_count() - lift
    }
}

pub fn solve(sys: &CocycleSystem) -> SolvedSystem {
    let d = sys.dim();
    let cols = sys.generators * d;
    let mut blocks = Vec::new();
    for q in sys.target.primes() {
        let coords: Vec<usize> = (0..d).filter(|&i| sys.target.factors[i].0 == q).collect();
        let big_r = coords.iter().map(|&i| sys.target.factors[i].1).max().unwrap();
        let bigm = pow_u64(q, big_r);
        let bcols: Vec<usize> =
            (0..sys.generators).flat_map(|j| coords.iter().map(move |&i| j * d + i)).collect();
        let col_r: Vec<u32> = bcols.iter().map(|&c| sys.target.factors[c % d].1).collect();
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for (ri, row) in sys.matrix.iter().enumerate() {
            let (rq, rr) = sys.target.factors[ri % d];
            if rq != q {
                continue;
            }
            let scale = pow_u64(q, big_r - rr);
            rows.push(bcols.iter().map(|&c| row[c] % bigm * scale % bigm).collect::<Vec<u64>>());
            rhs.push(sys.rhs[ri] % bigm * scale % bigm);
        }
        if rows.is_empty() {
            rows.push(vec![0; bcols.len()]);
            rhs.push(0);
        }
        let diag = Diagonalized::new(rows, Some(rhs), q, big_r);
        blocks.push(PrimeBlock { q, big_r, cols: bcols, col_r, diag });
    }
    SolvedSystem { blocks, cols }
}

impl SolvedSystem {
    /// d per prime: |Z^1| = ∏ q^d.
    pub fn log_counts(&self) -> BTreeMap<u64, u64> {
        self.blocks.iter().map(|b| (b.q, b.log_count())).collect()
    }

    pub fn homogeneous_count(&self) -> BigInt {
        self.blocks.iter().map(|b| bigint_pow(b.q, b.log_count())).product()
    }

    pub fn solvable(&self) -> bool {
        self.blocks.iter().all(|b| b.diag.solvable())
    }

    /// One solution with all free coordinates zero.
    pub fn witness(&self) -> Option<Vec<u64>> {
        let mut out = vec![0u64; self.cols];
        for b in &self.blocks {
            let w = b.diag.witness()?;
            for ((&c, &r), x) in b.cols.iter().zip(&b.col_r).zip(w) {
                out[c] = x % pow_u64(b.q, r);
            }
        }
        Some(out)
    }

    /// Every solution of the inhomogeneous system, deduplicated and sorted.
    pub fn solutions(&self) -> Vec<Vec<u64>> {
        let mut acc: Vec<Vec<u64>> = vec![vec![0; self.cols]];
        for b in &self.blocks {
            let mut sols: Vec<Vec<u64>> = b
                .diag
                .solutions()
                .into_iter()
                .map(|w| {
                    w.iter().zip(&b.col_r).map(|(&x, &r)| x % pow_u64(b.q, r)).collect()
                })
                .collect();
            sols.sort();
            sols.dedup();
            let mut next = Vec::with_capacity(acc.len() * sols.len());
            for a in &acc {
                for s in &sols {
                    let mut v = a.clone();
                    for (&c, &x) in b.cols.iter().zip(s) {
                        v[c] = x;
                    }
                    next.push(v);
                }
            }
            acc = next;
        }
        acc.sort();
        acc
    }
}

/// Per-prime exponents d of the homogeneous solution count.
pub fn homogeneous_count(sys: &CocycleSystem) -> BTreeMap<u64, u64> {
    solve(&sys.homogeneous()).log_counts()
}

/// ε = 1 iff the system is solvable, with the canonical witness.
pub fn epsilon_and_witness(sys: &CocycleSystem) -> (bool, Option<Vec<u64>>) {
    let solved = solve(sys);
    let w = solved.witness();
    (w.is_some(), w)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyReport {
    pub z1: String,
    pub d: BTreeMap<u64, u64>,
    pub b1: String,
    pub h1_dim: BTreeMap<u64, u64>,
    pub epsilon: bool,
    pub witness: Option<Vec<u64>>,
}

/// log_q of the fixed points of the image of ρ acting on E.
fn fixed_log(layer: &ElementaryLayer, rho: &[u32]) -> u64 {
    let (q, s) = (layer.q, layer.s);
    let mut rows = Vec::new();
    for &b in rho {
        let m = layer.sigma(b);
        for r in 0..s {
            rows.push(
                (0..s)
                    .map(|c| ((m[r * s + c] + q - u32::from(r == c)) % q) as u64)
                    .collect::<Vec<u64>>(),
            );
        }
    }
    if rows.is_empty() {
        return s as u64;
    }
    Diagonalized::new(rows, None, q as u64, 1).log_count()
}

pub fn cohomology_report(
    p: &Presentation,
    base: &FiniteGroupTable,
    rho: &[u32],
    layer: &ElementaryLayer,
) -> Result<CohomologyReport> {
    let sys = build_system(p, base, rho, layer, SignConvention::Twisted)?;
    let solved = solve(&sys);
    let d = solved.log_counts();
    let dq = d.get(&(layer.q as u64)).copied().unwrap_or(0);
    let b1_log = layer.s as u64 - fixed_log(layer, rho);
    let witness = solved.witness();
    Ok(CohomologyReport {
        z1: solved.homogeneous_count().to_string(),
        b1: bigint_pow(layer.q as u64, b1_log).to_string(),
        h1_dim: BTreeMap::from([(layer.q as u64, dq - b1_log)]),
        d,
        epsilon: witness.is_some(),
        witness,
    })
}

/// dim H^1_{σρ}(G, E) = d(σρ) - log_q |B^1|, with |B^1| = |E| / |E^{ρ(G)}|.
pub fn h1_dim(
    p: &Presentation,
    base: &FiniteGroupTable,
    rho: &[u32],
    layer: &ElementaryLayer,
) -> Result<u64> {
    check_homomorphism(p, base, rho)?;
    let sys = build_system_unchecked(p, base, rho, layer, SignConvention::Twisted);
    let d = solve(&sys.homogeneous()).log_counts()[&(layer.q as u64)];
    Ok(d - (layer.s as u64 - fixed_log(layer, rho)))
}
