//! Exact linear algebra: Smith form over the integers and diagonalization over Z/q^r.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Invariant factors of an integer matrix (the nonzero diagonal of its Smith form,
/// in divisibility order, all positive).
pub fn smith_invariants(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero()
                    && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        let mut dirty = false;
        for i in t + 1..rows {
            if !a[i][t].is_zero() {
                let f = a[i][t].div_floor(&a[t][t]);
                for j in t..cols {
                    let s = &f * &a[t][j];
                    a[i][j] -= s;
                }
                dirty |= !a[i][t].is_zero();
            }
        }
        for j in t + 1..cols {
            if !a[t][j].is_zero() {
                let f = a[t][j].div_floor(&a[t][t]);
                for i in t..rows {
                    let s = &f * &a[i][t];
                    a[i][j] -= s;
                }
                dirty |= !a[t][j].is_zero();
            }
        }
        if dirty {
            continue;
        }
        // pivot must divide the trailing block
        let mut bad = None;
        'outer: for i in t + 1..rows {
            for j in t + 1..cols {
                if !(&a[i][j] % &a[t][t]).is_zero() {
                    bad = Some(i);
                    break 'outer;
                }
            }
        }
        if let Some(i) = bad {
            for j in t..cols {
                let v = a[i][j].clone();
                a[t][j] += v;
            }
            continue;
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_u64(q: u64, e: u32) -> u64 {
    q.checked_pow(e).expect("modulus overflow")
}

/// Inverse of a unit modulo m.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let qt = r0 / r1;
        (r0, r1) = (r1, r0 - qt * r1);
        (s0, s1) = (s1, s0 - qt * s1);
    }
    if r0 != 1 {
        return None;
    }
    Some(s0.rem_euclid(m as i128) as u64)
}

/// q-adic valuation of `a` modulo q^r (r for zero).
pub fn valuation(mut a: u64, q: u64, r: u32) -> u32 {
    if a == 0 {
        return r;
    }
    let mut v = 0;
    while a % q == 0 && v < r {
        a /= q;
        v += 1;
    }
    v
}

/// Result of diagonalizing `A x = b` over Z/q^r by row and column operations,
/// pivoting on entries of minimal q-valuation.
#[derive(Clone, Debug)]
pub struct Diagonalized {
    pub q: u64,
    pub r: u32,
    pub modulus: u64,
    pub rows: usize,
    pub cols: usize,
    /// valuation of each diagonal pivot; the first `rank` diagonal entries are q^v
    pub pivots: Vec<u32>,
    /// column transform: x = V y
    v: Vec<Vec<u64>>,
    rhs: Vec<u64>,
}

impl Diagonalized {
    pub fn new(mut a: Vec<Vec<u64>>, rhs: Option<Vec<u64>>, q: u64, r: u32) -> Self {
        let m = pow_u64(q, r);
        let rows = a.len();
        let cols = a.first().map_or(0, |row| row.len());
        let mut b = rhs.unwrap_or_else(|| vec![0; rows]);
        assert_eq!(b.len(), rows);
        for row in a.iter_mut() {
            assert_eq!(row.len(), cols);
            for x in row.iter_mut() {
                *x %= m;
            }
        }
        for x in b.iter_mut() {
            *x %= m;
        }
        let mut v: Vec<Vec<u64>> = (0..cols)
            .map(|i| (0..cols).map(|j| u64::from(i == j)).collect())
            .collect();
        let mut pivots = Vec::new();
        let mut t = 0;
        while t < rows.min(cols) {
            let mut best: Option<(usize, usize, u32)> = None;
            'search: for (i, row) in a.iter().enumerate().skip(t) {
                for (j, &x) in row.iter().enumerate().skip(t) {
                    if x != 0 {
                        let val = valuation(x, q, r);
                        if best.is_none_or(|(_, _, bv)| val < bv) {
                            best = Some((i, j, val));
                            if val == 0 {
                                break 'search;
                            }
                        }
                    }
                }
            }
            let Some((pi, pj, val)) = best else { break };
            a.swap(t, pi);
            b.swap(t, pi);
            if pj != t {
                for row in a.iter_mut() {
                    row.swap(t, pj);
                }
                for row in v.iter_mut() {
                    row.swap(t, pj);
                }
            }
            // normalize the pivot to q^val
            let qv = pow_u64(q, val);
            let unit = a[t][t] / qv;
            let uinv = inv_mod(unit, m).expect("unit part must be invertible");
            for x in a[t].iter_mut() {
                *x = mul_mod(*x, uinv, m);
            }
            b[t] = mul_mod(b[t], uinv, m);
            // clear the pivot column
            for i in 0..rows {
                if i != t && a[i][t] != 0 {
                    let f = a[i][t] / qv;
                    let (head, tail) = if i < t {
                        let (h, tl) = a.split_at_mut(t);
                        (&mut h[i], &tl[0])
                    } else {
                        let (h, tl) = a.split_at_mut(i);
                        (&mut tl[0], &h[t])
                    };
                    for j in t..cols {
                        head[j] = (head[j] + m - mul_mod(f, tail[j], m)) % m;
                    }
                    b[i] = (b[i] + m - mul_mod(f, b[t], m)) % m;
                }
            }
            // clear the pivot row with column operations
            for j in t + 1..cols {
                if a[t][j] != 0 {
                    let f = a[t][j] / qv;
                    for row in a.iter_mut() {
                        let s = mul_mod(f, row[t], m);
                        row[j] = (row[j] + m - s) % m;
                    }
                    for row in v.iter_mut() {
                        let s = mul_mod(f, row[t], m);
                        row[j] = (row[j] + m - s) % m;
                    }
                }
            }
            pivots.push(val);
            t += 1;
        }
        Diagonalized { q, r, modulus: m, rows, cols, pivots, v, rhs: b }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// log_q of the number of solutions of the homogeneous system.
    pub fn log_count(&self) -> u64 {
        self.pivots.iter().map(|&v| v as u64).sum::<u64>()
            + (self.cols - self.rank()) as u64 * self.r as u64
    }

    pub fn solvable(&self) -> bool {
        let rank = self.rank();
        for (t, &val) in self.pivots.iter().enumerate() {
            if valuation(self.rhs[t], self.q, self.r) < val {
                return false;
            }
        }
        self.rhs[rank..].iter().all(|&x| x == 0)
    }

    /// Particular solution with free coordinates set to zero.
    pub fn witness(&self) -> Option<Vec<u64>> {
        if !self.solvable() {
            return None;
        }
        let mut y = vec![0u64; self.cols];
        for (t, &val) in self.pivots.iter().enumerate() {
            y[t] = self.rhs[t] / pow_u64(self.q, val);
        }
        Some(self.apply_v(&y))
    }

    fn apply_v(&self, y: &[u64]) -> Vec<u64> {
        let m = self.modulus;
        (0..self.cols)
            .map(|i| {
                let mut s = 0u64;
                for (j, &yj) in y.iter().enumerate() {
                    if yj != 0 {
                        s = (s + mul_mod(self.v[i][j], yj, m)) % m;
                    }
                }
                s
            })
            .collect()
    }

    /// Generators (with radices) of the homogeneous solution group: every
    /// solution is Σ k_t g_t with 0 ≤ k_t < radix_t, uniquely.
    pub fn kernel_generators(&self) -> Vec<(Vec<u64>, u64)> {
        let mut gens = Vec::new();
        for t in 0..self.cols {
            let (step, radix) = if t < self.rank() {
                let val = self.pivots[t];
                if val == 0 {
                    continue;
                }
                (pow_u64(self.q, self.r - val), pow_u64(self.q, val))
            } else {
                (1, self.modulus)
            };
            let mut y = vec![0u64; self.cols];
            y[t] = step;
            gens.push((self.apply_v(&y), radix));
        }
        gens
    }

    /// All solutions of the inhomogeneous system (empty when unsolvable).
    pub fn solutions(&self) -> Vec<Vec<u64>> {
        let Some(x0) = self.witness() else { return Vec::new() };
        let gens = self.kernel_generators();
        let m = self.modulus;
        let total: u64 = gens.iter().map(|g| g.1).product();
        let mut out = Vec::with_capacity(total as usize);
        let mut digits = vec![0u64; gens.len()];
        let mut cur = x0;
        loop {
            out.push(cur.clone());
            let mut i = 0;
            loop {
                if i == gens.len() {
                    return out;
                }
                for (c, g) in cur.iter_mut().zip(&gens[i].0) {
                    *c = (*c + g) % m;
                }
                digits[i] += 1;
                if digits[i] < gens[i].1 {
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
        }
    }
}

/// Rank of a matrix over the prime field Z/q.
pub fn rank_mod_p(a: Vec<Vec<u64>>, q: u64) -> usize {
    Diagonalized::new(a, None, q, 1).rank()
}

/// Determinant-free invertibility test over Z/q.
pub fn invertible_mod_p(a: &[Vec<u64>], q: u64) -> bool {
    let n = a.len();
    rank_mod_p(a.to_vec(), q) == n
}

pub fn bigint_pow(base: u64, e: u64) -> BigInt {
    num_traits::pow(BigInt::from(base), e as usize)
}

pub fn pow_mod(base: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    let mut b = base % m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}
