//! Hall invariants δ_Γ(G) from homological data: closed forms for abelian Γ
//! and per-epimorphism H¹ sums for the small non-abelian Γ.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;

use crate::cohomology::{build_system, h1_dim, solve, SignConvention};
use crate::counting::{delta_s4, epi_maps, CountConfig};
use crate::error::{Error, Result};
use crate::groups::builtin_group;
use crate::linalg::bigint_pow;
use crate::presentations::{abelian_invariants, AbelianInvariants, Presentation};

/// Abelian p-groups with a closed-form Hall invariant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum AbelianShape {
    /// Z_{p^s}
    Cyclic { p: u64, s: u32 },
    /// Z_p^s
    Elementary { p: u64, s: u32 },
    /// Z_p ⊕ Z_{p^s}, s ≥ 2
    Mixed { p: u64, s: u32 },
}

impl AbelianShape {
    pub fn group_spec(&self) -> String {
        match *self {
            AbelianShape::Cyclic { p, s } => format!("Z({})", p.pow(s)),
            AbelianShape::Elementary { p, s } => format!("Z({p})^{s}"),
            AbelianShape::Mixed { p, s } => format!("Z({p})*Z({})", p.pow(s)),
        }
    }
}

/// Σ min(i, cap)·α_i over the p-primary summands Z_{p^i}.
fn truncated_alpha(inv: &AbelianInvariants, p: u64, cap: u32) -> u64 {
    inv.multiplicities(p)
        .iter()
        .enumerate()
        .map(|(i, &a)| (i as u64 + 1).min(cap as u64) * a as u64)
        .sum()
}

fn exact(num: BigInt, den: BigInt) -> Result<u128> {
    crate::counting::exact_div(num, den)?
        .to_u128()
        .ok_or_else(|| Error::Inconsistent("Hall invariant overflows".into()))
}

/// δ for the three abelian shapes, from the rank n and p-torsion of H_1(G).
///
/// The torsion exponents enter truncated at s (resp. s − 1), i.e. through
/// |Hom(G, Z_{p^s})| = p^{sn + Σ min(i,s)α_i}.
pub fn delta_abelian_closed(inv: &AbelianInvariants, shape: AbelianShape) -> Result<u128> {
    let n = inv.free_rank as u64;
    let pw = |p: u64, e: u64| bigint_pow(p, e);
    // |Epi(G, Z_{p^s})|
    let cyclic_epi = |p: u64, s: u32| {
        let s64 = s as u64;
        pw(p, s64 * n + truncated_alpha(inv, p, s)) - pw(p, (s64 - 1) * n + truncated_alpha(inv, p, s - 1))
    };
    match shape {
        AbelianShape::Cyclic { p, s } => {
            check_shape(p, s, 1)?;
            exact(cyclic_epi(p, s), pw(p, s as u64) - pw(p, s as u64 - 1))
        }
        AbelianShape::Elementary { p, s } => {
            check_shape(p, s, 1)?;
            let d = n + inv.beta(p) as u64;
            let mut num = BigInt::one();
            let mut den = BigInt::one();
            for i in 0..s as u64 {
                num *= pw(p, d) - pw(p, i);
                den *= pw(p, s as u64) - pw(p, i);
            }
            exact(num, den)
        }
        AbelianShape::Mixed { p, s } => {
            check_shape(p, s, 2)?;
            let d = n + inv.beta(p) as u64;
            let num = cyclic_epi(p, s) * (pw(p, d) - BigInt::from(p));
            let den = pw(p, s as u64 + 1) * BigInt::from((p - 1) * (p - 1));
            exact(num, den)
        }
    }
}

fn check_shape(p: u64, s: u32, min_s: u32) -> Result<()> {
    if !crate::arith::is_prime(p) || s < min_s {
        return Err(Error::BadParameter(format!("need a prime p and s >= {min_s}, got p={p}, s={s}")));
    }
    Ok(())
}

/// Non-abelian groups of order at most 12 whose Hall invariant is a sum over
/// epimorphisms onto a quotient by an elementary layer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SmallGroup {
    /// Z_3 ⋊ Z_2 over Epi(G, Z_2)
    S3,
    /// central Z_2 over Epi(G, Z_2²)
    D8,
    /// central Z_2 over Epi(G, Z_2²)
    Q8,
    /// Z_3 ⋊ Z_2² over Epi(G, Z_2²)
    D12,
    /// Z_3 ⋊ Z_4 over Epi(G, Z_4)
    Dic12,
    /// Z_2² ⋊ Z_3 over Epi(G, Z_3)
    A4,
}

impl SmallGroup {
    pub const ALL: [SmallGroup; 6] =
        [SmallGroup::S3, SmallGroup::D8, SmallGroup::Q8, SmallGroup::D12, SmallGroup::Dic12, SmallGroup::A4];

    pub fn group_spec(&self) -> &'static str {
        match self {
            SmallGroup::S3 => "S(3)",
            SmallGroup::D8 => "D(8)",
            SmallGroup::Q8 => "Q(8)",
            SmallGroup::D12 => "D(12)",
            // Z_3 ⋊ Z_4 with the generator acting by inversion
            SmallGroup::Dic12 => "M(3,4,2)",
            SmallGroup::A4 => "A(4)",
        }
    }

    /// Order of the quotient, and the divisor in front of the sum.
    fn shape(&self) -> (usize, u64) {
        match self {
            SmallGroup::S3 => (2, 2),
            SmallGroup::D8 => (4, 8),
            SmallGroup::Q8 => (4, 24),
            SmallGroup::D12 => (4, 4),
            SmallGroup::Dic12 => (4, 4),
            SmallGroup::A4 => (3, 6),
        }
    }
}

/// δ_Γ(G) as (1/c)·Σ_ρ ε_χ(ρ)·q^{dim H¹} for a central top layer, or
/// (1/c)·Σ_ρ (q^{dim H¹} − 1) for a split one, ρ over Epi(G, Γ/E).
pub fn delta_small(p: &Presentation, gamma: SmallGroup, cfg: &CountConfig) -> Result<u128> {
    let tower = builtin_group(gamma.group_spec())?;
    let top = tower.depth() - 1;
    let layer = tower.layer(top);
    let base = tower.level_table(top);
    let (base_order, divisor) = gamma.shape();
    let central = layer.acts_trivially();
    // a central layer must carry a non-trivial cocycle, or Γ would not be generated
    if base.order() != base_order || (central && layer.cocycle_is_zero()) {
        return Err(Error::Inconsistent(format!("unexpected top layer in {}", tower.name())));
    }
    let q = layer.q as u64;
    let terms: Vec<BigInt> = epi_maps(p, &tower, top, cfg)?
        .par_iter()
        .map(|rho| -> Result<BigInt> {
            let h = h1_dim(p, base, rho, layer)?;
            if central {
                let sys = build_system(p, base, rho, layer, SignConvention::Twisted)?;
                Ok(if solve(&sys).solvable() { bigint_pow(q, h) } else { BigInt::from(0) })
            } else {
                Ok(bigint_pow(q, h) - 1)
            }
        })
        .collect::<Result<_>>()?;
    exact(terms.into_iter().sum(), BigInt::from(divisor))
}

/// a_2, a_3, a_4 from Hall invariants, with the invariants used.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LowIndexReport {
    pub a2: u128,
    pub a3: u128,
    pub a4: u128,
    pub deltas: BTreeMap<String, u128>,
}

/// a_2 = δ_{Z_2}, a_3 = δ_{Z_3} + 3δ_{S_3} and
/// a_4 = ½δ_{Z_2}(1 − δ_{Z_2}) + δ_{Z_4} + 4δ_{Z_2²} + 4δ_{D_8} + 4δ_{A_4} + 4δ_{S_4}.
pub fn low_index_via_deltas(p: &Presentation, cfg: &CountConfig) -> Result<LowIndexReport> {
    let inv = abelian_invariants(p);
    let z2 = delta_abelian_closed(&inv, AbelianShape::Cyclic { p: 2, s: 1 })?;
    let z3 = delta_abelian_closed(&inv, AbelianShape::Cyclic { p: 3, s: 1 })?;
    let z4 = delta_abelian_closed(&inv, AbelianShape::Cyclic { p: 2, s: 2 })?;
    let v4 = delta_abelian_closed(&inv, AbelianShape::Elementary { p: 2, s: 2 })?;
    let s3 = delta_small(p, SmallGroup::S3, cfg)?;
    let d8 = delta_small(p, SmallGroup::D8, cfg)?;
    let a4g = delta_small(p, SmallGroup::A4, cfg)?;
    let s4 = delta_s4(p, cfg)?;
    let a4 = (z2 as i128) * (1 - z2 as i128) / 2 + z4 as i128 + 4 * (v4 + d8 + a4g + s4) as i128;
    let a4 = u128::try_from(a4).map_err(|_| Error::Inconsistent(format!("a_4 evaluated to {a4}")))?;
    let deltas = BTreeMap::from([
        ("Z(2)".to_string(), z2),
        ("Z(3)".to_string(), z3),
        ("Z(4)".to_string(), z4),
        ("Z(2)^2".to_string(), v4),
        ("S(3)".to_string(), s3),
        ("D(8)".to_string(), d8),
        ("A(4)".to_string(), a4g),
        ("S(4)".to_string(), s4),
    ]);
    Ok(LowIndexReport { a2: z2, a3: z3 + 3 * s3, a4, deltas })
}
