//! Closed-form counts for dihedral-type targets and known Hall-invariant tables.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::primes_dividing;
use crate::error::{Error, Result};

/// Families with a closed formula for |Epi(G, Γ)|.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EulerianFamily {
    /// F_n onto D_{2m}
    Dihedral { m: u64, n: u32 },
    /// F_n onto Dstar_{4m}
    BinaryDihedral { m: u64, n: u32 },
    /// orientable surface group of genus g onto D_{2m}
    Surface { g: u32, m: u64 },
    /// nonorientable surface group of genus g onto D_{2m}
    Nonorientable { g: u32, m: u64 },
}

fn int(x: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// q^e for a possibly negative exponent.
fn rpow(q: u64, e: i64) -> BigRational {
    let p = BigRational::from_integer(BigInt::from(q).pow(e.unsigned_abs() as u32));
    if e >= 0 {
        p
    } else {
        p.recip()
    }
}

fn to_count(x: BigRational) -> Result<u128> {
    if !x.is_integer() || x.is_negative() {
        return Err(Error::Inconsistent(format!("closed form evaluated to {x}")));
    }
    x.to_integer()
        .to_u128()
        .ok_or_else(|| Error::Inconsistent("closed form overflows".into()))
}

pub fn closed_form_eulerian(f: EulerianFamily) -> Result<u128> {
    let v = match f {
        EulerianFamily::Dihedral { m, n } => {
            check_m(m, 1)?;
            let n = n as i64;
            let mut v = (rpow(2, n) - int(1)) * rpow(m, n);
            for q in primes_dividing(m) {
                v *= int(1) - rpow(q, 1 - n);
            }
            v
        }
        EulerianFamily::BinaryDihedral { m, n } => {
            check_m(m, 1)?;
            let n = n as i64;
            let mut v = (rpow(4, n) - rpow(2, n)) * rpow(m, n);
            for q in primes_dividing(m) {
                v *= int(1) - rpow(q, 1 - n);
            }
            v
        }
        EulerianFamily::Surface { g, m } => {
            check_m(m, 1)?;
            let g = g as i64;
            let mut v = rpow(m, 2 * g - 1) * (rpow(2, 2 * g) - int(1));
            for q in odd_primes(m) {
                v *= int(1) - rpow(q, 2 - 2 * g);
            }
            if m % 2 == 0 {
                v *= rpow(2, ((m / 2) % 2) as i64) - rpow(2, 2 - 2 * g);
            }
            v
        }
        EulerianFamily::Nonorientable { g, m } => {
            check_m(m, 1)?;
            let g = g as i64;
            let odd = odd_primes(m);
            let mut a = rpow(2, g) - int(2);
            let mut b = BigRational::one();
            for &q in &odd {
                a *= int(1) - rpow(q, 2 - g);
                b *= int(q) - rpow(q, 2 - g);
            }
            let mut v = rpow(m, g - 1) * (a + b);
            if m % 2 == 0 {
                v *= rpow(2, ((m / 2) % 2) as i64) - rpow(2, 2 - g);
            }
            v
        }
    };
    to_count(v)
}

fn check_m(m: u64, min: u64) -> Result<()> {
    if m < min {
        return Err(Error::BadParameter(format!("m must be at least {min}")));
    }
    Ok(())
}

fn odd_primes(m: u64) -> Vec<u64> {
    primes_dividing(m).into_iter().filter(|&q| q != 2).collect()
}

/// Families with a case table for δ_Γ(G).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeltaFamily {
    /// δ_{D_8}(BS(m, n))
    BsD8 { m: i64, n: i64 },
    /// δ_{Q_8}(BS(m, n))
    BsQ8 { m: i64, n: i64 },
    /// δ_{S_4}(P(m, n)) for the parafree groups
    ParafreeS4 { m: i64, n: i64 },
    /// non-cyclic metabelian quotients of B_3 and B_4, by type 1..=4:
    /// Z_3 ⋊ Z_k, Z_r ⋊ Z_k, Z_2² ⋊ Z_k, Z_r² ⋊ Z_k
    BraidMetabelian { kind: u8, r: u64, k: u64 },
    /// solvable Γ and B_n with n ≥ 5
    BraidSolvable { n: u64, cyclic: bool },
}

pub fn closed_form_delta(f: DeltaFamily) -> Result<u128> {
    match f {
        DeltaFamily::BsD8 { m, n } => {
            bs_params(m, n)?;
            let diff = (n - m).rem_euclid(4);
            Ok(match (m % 2 == 0, diff) {
                (true, 0) => 3,
                (true, 2) => 2,
                (false, 2) => 1,
                _ => 0,
            })
        }
        DeltaFamily::BsQ8 { m, n } => {
            bs_params(m, n)?;
            Ok(u128::from((n - m) % 2 == 0 && (m + n).rem_euclid(4) == 0))
        }
        DeltaFamily::ParafreeS4 { m, n } => {
            Ok(if m.rem_euclid(2) == 1 && (m - n).rem_euclid(4) == 2 { 17 } else { 9 })
        }
        DeltaFamily::BraidMetabelian { kind, r, k } => {
            let bad = || Error::BadParameter(format!("no metabelian quotient of type {kind} with r={r}, k={k}"));
            match kind {
                1 if r == 3 && (k % 6 == 2 || k % 6 == 4) => Ok(1),
                2 if r > 3 && k % 6 == 0 => Ok(2),
                3 if r == 2 && k % 6 == 3 => Ok(1),
                4 if r > 3 && k % 6 == 0 => Ok(1),
                _ => Err(bad()),
            }
        }
        DeltaFamily::BraidSolvable { n, cyclic } => {
            if n < 5 {
                return Err(Error::BadParameter("the braid table needs n >= 5".into()));
            }
            Ok(u128::from(cyclic))
        }
    }
}

fn bs_params(m: i64, n: i64) -> Result<()> {
    if m <= 0 || m > n.abs() {
        return Err(Error::BadParameter("BS(m,n) needs 0 < m <= |n|".into()));
    }
    Ok(())
}

/// Exact division; a remainder means an internal inconsistency.
pub(crate) fn exact_div(num: BigInt, den: BigInt) -> Result<BigInt> {
    if den.is_zero() || !(&num % &den).is_zero() {
        return Err(Error::Inconsistent(format!("{num} is not divisible by {den}")));
    }
    Ok(num / den)
}
