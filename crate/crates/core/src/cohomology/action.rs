use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::groups::ElementaryLayer;
use crate::linalg::{mul_mod, pow_u64};
use crate::presentations::{FreeGroupRingElement, Word};

/// Finite abelian group ⊕ Z_{q^r}, one coordinate per cyclic factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianTarget {
    /// (prime, exponent) per coordinate
    pub factors: Vec<(u64, u32)>,
}

impl AbelianTarget {
    pub fn new(mut factors: Vec<(u64, u32)>) -> Result<Self> {
        factors.retain(|&(_, r)| r > 0);
        if factors.iter().any(|&(q, _)| !crate::arith::is_prime(q)) {
            return Err(Error::BadParameter("cyclic factors must be prime powers".into()));
        }
        Ok(AbelianTarget { factors })
    }

    pub fn elementary(q: u64, s: usize) -> Self {
        AbelianTarget { factors: vec![(q, 1); s] }
    }

    /// Z_n split into its primary cyclic factors.
    pub fn cyclic(n: u64) -> Self {
        AbelianTarget {
            factors: crate::arith::factorize(n).into_iter().map(|(p, e)| (p, e)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.factors.len()
    }

    pub fn modulus(&self, i: usize) -> u64 {
        let (q, r) = self.factors[i];
        pow_u64(q, r)
    }

    pub fn order(&self) -> u128 {
        (0..self.dim()).map(|i| self.modulus(i) as u128).product()
    }

    pub fn primes(&self) -> Vec<u64> {
        let mut ps: Vec<u64> = self.factors.iter().map(|f| f.0).collect();
        ps.sort_unstable();
        ps.dedup();
        ps
    }
}

/// Square integer matrix acting on an AbelianTarget; row i is reduced mod the
/// exponent of factor i.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndoMatrix {
    pub dim: usize,
    pub entries: Vec<u64>,
}

impl EndoMatrix {
    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![0; dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = 1;
        }
        EndoMatrix { dim, entries }
    }

    pub fn zero(dim: usize) -> Self {
        EndoMatrix { dim, entries: vec![0; dim * dim] }
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.dim + j]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0)
    }

    fn mul(&self, other: &Self, a: &AbelianTarget) -> Self {
        let d = self.dim;
        let mut out = vec![0; d * d];
        for i in 0..d {
            let m = a.modulus(i);
            for k in 0..d {
                let mut acc = 0u64;
                for j in 0..d {
                    acc = (acc + mul_mod(self.get(i, j), other.get(j, k), m)) % m;
                }
                out[i * d + k] = acc;
            }
        }
        EndoMatrix { dim: d, entries: out }
    }

    fn add_scaled(&mut self, other: &Self, c: &BigInt, a: &AbelianTarget) {
        for i in 0..self.dim {
            let m = a.modulus(i);
            let cm = c.mod_floor_u64(m);
            for j in 0..self.dim {
                let x = &mut self.entries[i * self.dim + j];
                *x = (*x + mul_mod(cm, other.get(i, j), m)) % m;
            }
        }
    }
}

trait ModFloor {
    fn mod_floor_u64(&self, m: u64) -> u64;
}

impl ModFloor for BigInt {
    fn mod_floor_u64(&self, m: u64) -> u64 {
        let r = self % BigInt::from(m);
        let r = if r.is_negative() { r + BigInt::from(m) } else { r };
        r.to_u64().unwrap()
    }
}

/// σρ: images of the source generators in Aut(A).
#[derive(Clone, Debug)]
pub struct TwistedAction {
    pub target: AbelianTarget,
    gens: Vec<EndoMatrix>,
    inverses: Vec<EndoMatrix>,
}

impl TwistedAction {
    pub fn new(target: AbelianTarget, gens: Vec<EndoMatrix>) -> Result<Self> {
        let mut inverses = Vec::with_capacity(gens.len());
        let d = target.dim();
        for (j, g) in gens.iter().enumerate() {
            if g.dim != d {
                return Err(Error::BadParameter(format!("action matrix {j} has the wrong size")));
            }
            // well defined: entry (i, k) must kill q^{r_k} modulo q^{r_i}
            for i in 0..d {
                for k in 0..d {
                    let (qi, _) = target.factors[i];
                    let (qk, _) = target.factors[k];
                    let v = g.get(i, k);
                    let ok = if qi != qk {
                        v == 0
                    } else {
                        mul_mod(v, target.modulus(k), target.modulus(i)) == 0
                    };
                    if !ok {
                        return Err(Error::BadParameter(format!(
                            "action matrix {j} is not an endomorphism at ({i}, {k})"
                        )));
                    }
                }
            }
            // inverse as the last power before the identity
            let id = EndoMatrix::identity(d);
            let mut p = g.clone();
            let mut prev = id.clone();
            let mut steps = 0;
            while p != id {
                prev = p.clone();
                p = p.mul(g, &target);
                steps += 1;
                if steps > 1_000_000 || p.is_zero() {
                    return Err(Error::BadParameter(format!("action matrix {j} is not invertible")));
                }
            }
            inverses.push(if steps == 0 { id } else { prev });
        }
        Ok(TwistedAction { target, gens, inverses })
    }

    /// Action of source generator j through σ(ρ_j) for an elementary layer.
    pub fn from_layer(layer: &ElementaryLayer, rho: &[u32]) -> Self {
        let s = layer.s;
        let target = AbelianTarget::elementary(layer.q as u64, s);
        let gens: Vec<EndoMatrix> = rho
            .iter()
            .map(|&b| EndoMatrix {
                dim: s,
                entries: layer.sigma(b).iter().map(|&x| x as u64).collect(),
            })
            .collect();
        Self::new(target, gens).expect("monodromy matrices are invertible")
    }

    pub fn num_generators(&self) -> usize {
        self.gens.len()
    }

    pub fn word_action(&self, w: &Word) -> EndoMatrix {
        let mut acc = EndoMatrix::identity(self.target.dim());
        for l in w.letters() {
            let m = if l.exp > 0 { &self.gens[l.gen] } else { &self.inverses[l.gen] };
            acc = acc.mul(m, &self.target);
        }
        acc
    }
}

/// Z-linear extension of the word action to the free group ring.
pub fn evaluate_ring_element(e: &FreeGroupRingElement, act: &TwistedAction) -> EndoMatrix {
    let mut out = EndoMatrix::zero(act.target.dim());
    for (w, c) in e.terms() {
        if c.is_zero() {
            continue;
        }
        out.add_scaled(&act.word_action(w), c, &act.target);
    }
    out
}
