use super::chief::{chief_series, DEFAULT_ORDER_CAP};
use super::matrix;
use super::table::FiniteGroupTable;
use super::tower::{ElementaryLayer, ExtensionTower};
use crate::arith::{factorize, gcd, is_prime, mult_order};
use crate::error::{Error, Result};
use crate::presentations::split_call;

/// A named family of target groups, selectable at runtime.
pub trait GroupFamily: Send + Sync {
    fn name(&self) -> &'static str;
    fn usage(&self) -> &'static str;
    /// Order of the group the parameters describe, after validating them.
    fn order(&self, params: &[i64]) -> Result<u64>;
    fn build(&self, params: &[i64]) -> Result<ExtensionTower>;
}

struct Family {
    name: &'static str,
    usage: &'static str,
    arity: usize,
    order: fn(&[i64]) -> Result<u64>,
    build: fn(&[i64]) -> Result<ExtensionTower>,
}

impl Family {
    fn check_arity(&self, params: &[i64]) -> Result<()> {
        if params.len() != self.arity {
            return Err(Error::BadParameter(format!(
                "{} takes {} parameter(s), got {}",
                self.usage,
                self.arity,
                params.len()
            )));
        }
        Ok(())
    }
}

impl GroupFamily for Family {
    fn name(&self) -> &'static str {
        self.name
    }

    fn usage(&self) -> &'static str {
        self.usage
    }

    fn order(&self, params: &[i64]) -> Result<u64> {
        self.check_arity(params)?;
        (self.order)(params)
    }

    fn build(&self, params: &[i64]) -> Result<ExtensionTower> {
        self.check_arity(params)?;
        (self.order)(params)?;
        (self.build)(params)
    }
}

fn positive(x: i64, what: &str) -> Result<u64> {
    if x < 1 {
        return Err(Error::BadParameter(format!("{what} must be positive, got {x}")));
    }
    Ok(x as u64)
}

fn ascending_primes(n: u64) -> Vec<u32> {
    let mut ps = Vec::new();
    for (p, e) in factorize(n) {
        for _ in 0..e {
            ps.push(p as u32);
        }
    }
    ps
}

/// Layers of Z_n: one layer per prime factor (ascending) with the carry cocycle,
/// so tower indices are the residues 0..n-1.
pub fn cyclic_layers(n: u64) -> Result<Vec<ElementaryLayer>> {
    let mut layers = Vec::new();
    let mut m = 1u32;
    for q in ascending_primes(n) {
        let base = m;
        layers.push(ElementaryLayer::from_fns(
            q,
            1,
            base as usize,
            |_| vec![1],
            |b1, b2| vec![u32::from(b1 + b2 >= base)],
        )?);
        m *= q;
    }
    Ok(layers)
}

/// Layers of D_{2m} through D_2 < D_{2l} < ..., element a^u b^v at index v + 2u.
pub fn dihedral_layers(m: u64) -> Result<Vec<ElementaryLayer>> {
    let mut layers = vec![ElementaryLayer::split(2, 1, 1, |_| vec![1])?];
    let mut l = 1i64;
    for q in ascending_primes(m) {
        let ql = q as i64 * l;
        let ll = l;
        layers.push(ElementaryLayer::from_fns(
            q,
            1,
            2 * l as usize,
            |x| vec![if x % 2 == 0 { 1 } else { q - 1 }],
            |x1, x2| {
                let (v, u) = (x1 as i64 % 2, x1 as i64 / 2);
                let s = x2 as i64 / 2;
                let w = (u + if v == 0 { s } else { -s }).rem_euclid(ql);
                vec![(w / ll) as u32]
            },
        )?);
        l = ql;
    }
    Ok(layers)
}

fn cyclic(p: &[i64]) -> Result<ExtensionTower> {
    let n = positive(p[0], "Z(n): n")?;
    ExtensionTower::build(format!("Z({n})"), cyclic_layers(n)?)
}

fn cyclic_order(p: &[i64]) -> Result<u64> {
    positive(p[0], "Z(n): n")
}

fn dihedral_order(p: &[i64]) -> Result<u64> {
    let n = positive(p[0], "D(n): n")?;
    if n % 2 != 0 {
        return Err(Error::BadParameter(format!("D(n) needs n even, got {n}")));
    }
    Ok(n)
}

fn dihedral(p: &[i64]) -> Result<ExtensionTower> {
    let n = dihedral_order(p)?;
    ExtensionTower::build(format!("D({n})"), dihedral_layers(n / 2)?)
}

fn binary_dihedral_order(p: &[i64]) -> Result<u64> {
    let n = positive(p[0], "Dstar(n): n")?;
    if n % 4 != 0 {
        return Err(Error::BadParameter(format!("Dstar(n) needs 4 | n, got {n}")));
    }
    Ok(n)
}

/// Dic_{4m}: the D_{2m} tower with a central Z_2 on top; a^m = b^2.
pub fn binary_dihedral_layers(m: u64) -> Result<Vec<ElementaryLayer>> {
    let mut layers = dihedral_layers(m)?;
    let mm = m as i64;
    layers.push(ElementaryLayer::from_fns(
        2,
        1,
        2 * m as usize,
        |_| vec![1],
        |x1, x2| {
            let (v, n) = (x1 as i64 % 2, x1 as i64 / 2);
            let (t, s) = (x2 as i64 % 2, x2 as i64 / 2);
            let w = (n + if v == 0 { s } else { -s }).rem_euclid(2 * mm);
            let k = w / mm;
            vec![((k + i64::from(v == 1 && t == 1)) % 2) as u32]
        },
    )?);
    Ok(layers)
}

fn binary_dihedral(p: &[i64]) -> Result<ExtensionTower> {
    let n = binary_dihedral_order(p)?;
    ExtensionTower::build(format!("Dstar({n})"), binary_dihedral_layers(n / 4)?)
}

fn quaternion_order(p: &[i64]) -> Result<u64> {
    let n = positive(p[0], "Q(n): n")?;
    if n < 8 || !n.is_power_of_two() {
        return Err(Error::BadParameter(format!("Q(n) needs a power of two >= 8, got {n}")));
    }
    Ok(n)
}

fn quaternion(p: &[i64]) -> Result<ExtensionTower> {
    let n = quaternion_order(p)?;
    ExtensionTower::build(format!("Q({n})"), binary_dihedral_layers(n / 4)?)
}

fn symmetric_order(p: &[i64]) -> Result<u64> {
    match p[0] {
        3 => Ok(6),
        4 => Ok(24),
        k => Err(Error::BadParameter(format!("S(n) is available for n = 3, 4, got {k}"))),
    }
}

fn symmetric(p: &[i64]) -> Result<ExtensionTower> {
    match p[0] {
        3 => Ok(dihedral(&[6])?.with_name("S(3)")),
        _ => Ok(v_group(&[2, 3, 1])?.with_name("S(4)")),
    }
}

fn alternating_order(p: &[i64]) -> Result<u64> {
    match p[0] {
        4 => Ok(12),
        k => Err(Error::BadParameter(format!("A(n) is available for n = 4, got {k}"))),
    }
}

fn alternating(_: &[i64]) -> Result<ExtensionTower> {
    let mut layers = cyclic_layers(3)?;
    let m = [1, 1, 1, 0];
    layers.push(ElementaryLayer::split(2, 2, 3, |x| matrix::pow(&m, x as u64, 2, 2))?);
    ExtensionTower::build("A(4)", layers)
}

fn metacyclic_order(p: &[i64]) -> Result<u64> {
    let s = positive(p[0], "M(s,r,u): s")?;
    let r = positive(p[1], "M(s,r,u): r")?;
    let u = p[2].rem_euclid(s as i64) as u64;
    if s < 2 || gcd(u, s) != 1 {
        return Err(Error::BadParameter("M(s,r,u) needs s >= 2 and u a unit mod s".into()));
    }
    let ord = mult_order(u, s).unwrap();
    if r % ord != 0 {
        return Err(Error::BadParameter(format!(
            "M(s,r,u) needs u^r = 1 mod s; {u} has order {ord} mod {s}"
        )));
    }
    Ok(s * r)
}

/// Z_s ⋊ Z_r with the generator of Z_r acting as multiplication by u;
/// a^x b^j sits at index j + r·x when s is prime.
fn metacyclic(p: &[i64]) -> Result<ExtensionTower> {
    metacyclic_order(p)?;
    let (s, r) = (p[0] as u64, p[1] as u64);
    let u = p[2].rem_euclid(s as i64) as u64;
    let name = format!("M({s},{r},{u})");
    if is_prime(s) {
        let mut layers = cyclic_layers(r)?;
        layers.push(ElementaryLayer::split(s as u32, 1, r as usize, |j| {
            vec![crate::linalg::pow_mod(u, j as u64, s) as u32]
        })?);
        return ExtensionTower::build(name, layers);
    }
    let n = (s * r) as usize;
    let table = FiniteGroupTable::from_fn(n, |x, y| {
        let (j, a) = (x as u64 % r, x as u64 / r);
        let (k, b) = (y as u64 % r, y as u64 / r);
        let c = (a + crate::linalg::pow_mod(u, j, s) * b) % s;
        ((j + k) % r + r * c) as u32
    })?;
    Ok(chief_series(&table)?.with_name(name))
}

fn v_order(p: &[i64]) -> Result<u64> {
    let q = positive(p[0], "V(q,p,r): q")?;
    let pp = positive(p[1], "V(q,p,r): p")?;
    if !is_prime(q) || !is_prime(pp) || pp == 2 {
        return Err(Error::BadParameter("V(q,p,r) needs q prime and p an odd prime".into()));
    }
    if mult_order(q, pp) != Some(2) {
        return Err(Error::BadParameter(format!("V(q,p,r): {q} does not have order 2 mod {pp}")));
    }
    let r = p[2].rem_euclid(q as i64) as u32;
    let rot = [r, 1, q as u32 - 1, 0];
    let rp = matrix::pow(&rot, pp, 2, q as u32);
    if !matrix::is_identity(&rp, 2) || matrix::is_identity(&rot, 2) {
        return Err(Error::BadParameter(format!(
            "V(q,p,r): [[{r},1],[-1,0]] does not have order {pp} over Z_{q}"
        )));
    }
    Ok(q * q * 2 * pp)
}

/// Z_q^2 ⋊ D_{2p} with rotation [[r,1],[-1,0]] and reflection [[0,1],[1,0]].
fn v_group(p: &[i64]) -> Result<ExtensionTower> {
    v_order(p)?;
    let (q, pp) = (p[0] as u32, p[1] as u64);
    let r = p[2].rem_euclid(q as i64) as u32;
    let rot = [r, 1, q - 1, 0];
    let refl = [0, 1, 1, 0];
    let mut layers = dihedral_layers(pp)?;
    layers.push(ElementaryLayer::split(q, 2, 2 * pp as usize, |x| {
        let (v, u) = (x % 2, x / 2);
        let m = matrix::pow(&rot, u as u64, 2, q);
        if v == 1 {
            matrix::mul(&m, &refl, 2, q)
        } else {
            m
        }
    })?);
    ExtensionTower::build(format!("V({q},{pp},{r})"), layers)
}

static FAMILIES: &[Family] = &[
    Family { name: "z", usage: "Z(n)", arity: 1, order: cyclic_order, build: cyclic },
    Family { name: "d", usage: "D(n)", arity: 1, order: dihedral_order, build: dihedral },
    Family {
        name: "dstar",
        usage: "Dstar(n)",
        arity: 1,
        order: binary_dihedral_order,
        build: binary_dihedral,
    },
    Family { name: "q", usage: "Q(n)", arity: 1, order: quaternion_order, build: quaternion },
    Family { name: "s", usage: "S(n)", arity: 1, order: symmetric_order, build: symmetric },
    Family { name: "a", usage: "A(n)", arity: 1, order: alternating_order, build: alternating },
    Family { name: "m", usage: "M(s,r,u)", arity: 3, order: metacyclic_order, build: metacyclic },
    Family { name: "v", usage: "V(q,p,r)", arity: 3, order: v_order, build: v_group },
];

pub fn group_families() -> Vec<&'static dyn GroupFamily> {
    FAMILIES.iter().map(|f| f as &dyn GroupFamily).collect()
}

fn find_family(name: &str) -> Result<&'static Family> {
    let lower = name.to_ascii_lowercase();
    FAMILIES
        .iter()
        .find(|f| f.name == lower)
        .ok_or_else(|| Error::UnknownFamily(name.to_string()))
}

/// Stacks the layers of `b` on top of `a`, giving a × b with index x + |a|·y.
pub fn direct_product(a: &ExtensionTower, b: &ExtensionTower) -> Result<ExtensionTower> {
    let k = a.order();
    let mut layers = a.layers().to_vec();
    for l in b.layers() {
        let (q, s) = (l.q, l.s);
        layers.push(ElementaryLayer::from_fns(
            q,
            s,
            k * l.base_order(),
            |x| l.sigma(x / k as u32).to_vec(),
            |x, y| l.chi(x / k as u32, y / k as u32).to_vec(),
        )?);
    }
    let name = match (a.order(), b.order()) {
        (1, _) => b.name().to_string(),
        (_, 1) => a.name().to_string(),
        _ => format!("{}*{}", a.name(), b.name()),
    };
    ExtensionTower::build(name, layers)
}

struct Factor {
    name: String,
    params: Vec<i64>,
    power: u32,
}

fn parse_factors(spec: &str) -> Result<Vec<Factor>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for part in spec.split('*') {
        let trimmed = part.trim();
        if trimmed.is_empty() {
            return Err(Error::Syntax { pos: offset, msg: "empty factor in group spec".into() });
        }
        let (call, power) = match trimmed.rfind('^') {
            Some(i) if trimmed[i + 1..].trim().chars().all(|c| c.is_ascii_digit()) => {
                let k: u32 = trimmed[i + 1..].trim().parse().map_err(|_| Error::Syntax {
                    pos: offset + i + 1,
                    msg: "expected a power after `^`".into(),
                })?;
                (&trimmed[..i], k)
            }
            Some(i) => {
                return Err(Error::Syntax {
                    pos: offset + i + 1,
                    msg: "expected a nonnegative integer power".into(),
                })
            }
            None => (trimmed, 1),
        };
        let (name, params) = split_call(call).map_err(|e| match e {
            Error::Syntax { pos, msg } => Error::Syntax { pos: pos + offset, msg },
            other => other,
        })?;
        out.push(Factor { name, params, power });
        offset += part.len() + 1;
    }
    Ok(out)
}

/// Order described by a group spec, without building it.
pub fn builtin_group_order(spec: &str) -> Result<u128> {
    let mut order = 1u128;
    for f in parse_factors(spec)? {
        let o = find_family(&f.name)?.order(&f.params)? as u128;
        order = order.saturating_mul(o.saturating_pow(f.power));
    }
    Ok(order)
}

/// Builds a tower from the group-spec DSL, e.g. `D(8)`, `Z(2)^3`, `Z(3)*S(4)`.
pub fn builtin_group_with_cap(spec: &str, cap: usize) -> Result<ExtensionTower> {
    let order = builtin_group_order(spec)?;
    if order > cap as u128 {
        return Err(Error::cap(format!("order of {}", spec.trim()), cap as u128));
    }
    let mut acc = ExtensionTower::trivial();
    for f in parse_factors(spec)? {
        let g = find_family(&f.name)?.build(&f.params)?;
        for _ in 0..f.power {
            acc = direct_product(&acc, &g)?;
        }
    }
    if acc.order() == 1 {
        acc = acc.with_name(spec.trim());
    }
    Ok(acc)
}

pub fn builtin_group(spec: &str) -> Result<ExtensionTower> {
    builtin_group_with_cap(spec, DEFAULT_ORDER_CAP)
}
