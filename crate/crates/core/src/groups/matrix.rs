//! Square matrices over Z/q stored flat in row-major order; they act on column vectors.

use crate::linalg::inv_mod;

pub fn identity(s: usize) -> Vec<u32> {
    let mut m = vec![0; s * s];
    for i in 0..s {
        m[i * s + i] = 1;
    }
    m
}

pub fn scalar(s: usize, c: u32) -> Vec<u32> {
    let mut m = vec![0; s * s];
    for i in 0..s {
        m[i * s + i] = c;
    }
    m
}

pub fn is_identity(m: &[u32], s: usize) -> bool {
    (0..s).all(|i| (0..s).all(|j| m[i * s + j] == u32::from(i == j)))
}

pub fn mul(a: &[u32], b: &[u32], s: usize, q: u32) -> Vec<u32> {
    let q = q as u64;
    let mut c = vec![0; s * s];
    for i in 0..s {
        for j in 0..s {
            let mut acc = 0u64;
            for k in 0..s {
                acc += a[i * s + k] as u64 * b[k * s + j] as u64;
            }
            c[i * s + j] = (acc % q) as u32;
        }
    }
    c
}

pub fn apply(m: &[u32], v: &[u32], s: usize, q: u32) -> Vec<u32> {
    let q = q as u64;
    (0..s)
        .map(|i| {
            let acc: u64 = (0..s).map(|j| m[i * s + j] as u64 * v[j] as u64).sum();
            (acc % q) as u32
        })
        .collect()
}

pub fn pow(m: &[u32], mut e: u64, s: usize, q: u32) -> Vec<u32> {
    let mut base = m.to_vec();
    let mut acc = identity(s);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(&acc, &base, s, q);
        }
        base = mul(&base, &base, s, q);
        e >>= 1;
    }
    acc
}

/// Inverse over the prime field Z/q by Gauss-Jordan; None if singular.
pub fn inverse(m: &[u32], s: usize, q: u32) -> Option<Vec<u32>> {
    let qq = q as u64;
    let w = 2 * s;
    let mut a = vec![0u64; s * w];
    for i in 0..s {
        for j in 0..s {
            a[i * w + j] = m[i * s + j] as u64 % qq;
        }
        a[i * w + s + i] = 1;
    }
    for col in 0..s {
        let piv = (col..s).find(|&r| a[r * w + col] != 0)?;
        for j in 0..w {
            a.swap(col * w + j, piv * w + j);
        }
        let inv = inv_mod(a[col * w + col], qq)?;
        for j in 0..w {
            a[col * w + j] = a[col * w + j] * inv % qq;
        }
        for r in 0..s {
            if r != col && a[r * w + col] != 0 {
                let f = a[r * w + col];
                for j in 0..w {
                    a[r * w + j] = (a[r * w + j] + qq * qq - f * a[col * w + j]) % qq;
                }
            }
        }
    }
    let mut out = vec![0; s * s];
    for i in 0..s {
        for j in 0..s {
            out[i * s + j] = a[i * w + s + j] as u32;
        }
    }
    Some(out)
}

pub fn add_vec(a: &mut [u32], b: &[u32], q: u32) {
    for (x, y) in a.iter_mut().zip(b) {
        *x = (*x + *y) % q;
    }
}

pub fn neg_vec(a: &[u32], q: u32) -> Vec<u32> {
    a.iter().map(|&x| (q - x) % q).collect()
}

/// Index of a vector in Z_q^s, little-endian base q.
pub fn encode(v: &[u32], q: u32) -> usize {
    v.iter().rev().fold(0usize, |acc, &x| acc * q as usize + x as usize)
}

pub fn decode(mut idx: usize, s: usize, q: u32) -> Vec<u32> {
    let mut v = Vec::with_capacity(s);
    for _ in 0..s {
        v.push((idx % q as usize) as u32);
        idx /= q as usize;
    }
    v
}
