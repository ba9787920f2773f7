use std::collections::VecDeque;

use crate::error::{Error, Result};

/// Multiplication table of a finite group; element 0 is the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupTable {
    n: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
}

impl FiniteGroupTable {
    /// Validates the table: identity at 0, Latin square, associativity
    /// (exhaustive up to order 64, sampled above).
    pub fn new(n: usize, mul: Vec<u32>) -> Result<Self> {
        if n == 0 || mul.len() != n * n {
            return Err(Error::InvalidTable(format!("expected {} entries", n * n)));
        }
        if mul.iter().any(|&x| x as usize >= n) {
            return Err(Error::InvalidTable("entry out of range".into()));
        }
        for a in 0..n {
            if mul[a] as usize != a || mul[a * n] as usize != a {
                return Err(Error::InvalidTable("element 0 is not the identity".into()));
            }
        }
        let mut seen = vec![0u32; n];
        for a in 0..n {
            for b in 0..n {
                let c = mul[a * n + b] as usize;
                if seen[c] == a as u32 + 1 {
                    return Err(Error::InvalidTable(format!("row {a} repeats an entry")));
                }
                seen[c] = a as u32 + 1;
            }
        }
        let mut inv = vec![0u32; n];
        for a in 0..n {
            inv[a] = (0..n).find(|&b| mul[a * n + b] == 0).unwrap() as u32;
        }
        let t = FiniteGroupTable { n, mul, inv };
        let sample: Vec<usize> = if n <= 64 {
            (0..n).collect()
        } else {
            let step = (n / 16).max(1);
            (0..n).step_by(step).collect()
        };
        for a in 0..n {
            for b in 0..n {
                let ab = t.mul(a as u32, b as u32);
                for &c in &sample {
                    let c = c as u32;
                    if t.mul(ab, c) != t.mul(a as u32, t.mul(b as u32, c)) {
                        return Err(Error::InvalidTable(format!(
                            "not associative at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(t)
    }

    /// Trusted constructor for tables produced by verified constructions.
    pub(crate) fn from_parts(n: usize, mul: Vec<u32>) -> Self {
        let mut inv = vec![0u32; n];
        for a in 0..n {
            inv[a] = (0..n).find(|&b| mul[a * n + b] == 0).unwrap() as u32;
        }
        FiniteGroupTable { n, mul, inv }
    }

    pub fn trivial() -> Self {
        FiniteGroupTable { n: 1, mul: vec![0], inv: vec![0] }
    }

    pub fn cyclic(n: usize) -> Self {
        let mul = (0..n * n).map(|i| ((i / n + i % n) % n) as u32).collect();
        Self::from_parts(n, mul)
    }

    pub fn from_fn(n: usize, f: impl Fn(u32, u32) -> u32) -> Result<Self> {
        let mut mul = Vec::with_capacity(n * n);
        for a in 0..n as u32 {
            for b in 0..n as u32 {
                mul.push(f(a, b));
            }
        }
        Self::new(n, mul)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.n + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    pub fn raw(&self) -> &[u32] {
        &self.mul
    }

    /// x^-1 g x
    pub fn conj(&self, g: u32, x: u32) -> u32 {
        self.mul(self.mul(self.inv(x), g), x)
    }

    pub fn pow(&self, a: u32, k: i64) -> u32 {
        let base = if k < 0 { self.inv(a) } else { a };
        let mut r = 0;
        for _ in 0..k.unsigned_abs() {
            r = self.mul(r, base);
        }
        r
    }

    pub fn element_order(&self, a: u32) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Membership mask of the subgroup generated by `gens`.
    pub fn closure_mask(&self, gens: &[u32]) -> Vec<bool> {
        let mut mask = vec![false; self.n];
        mask[0] = true;
        let mut queue = VecDeque::from([0u32]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !mask[y as usize] {
                    mask[y as usize] = true;
                    queue.push_back(y);
                }
            }
        }
        mask
    }

    pub fn closure(&self, gens: &[u32]) -> Vec<u32> {
        let mask = self.closure_mask(gens);
        (0..self.n as u32).filter(|&i| mask[i as usize]).collect()
    }

    pub fn generated_order(&self, gens: &[u32]) -> usize {
        self.closure_mask(gens).iter().filter(|&&b| b).count()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n as u32).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_cyclic(&self) -> bool {
        (0..self.n as u32).any(|a| self.element_order(a) == self.n)
    }

    /// Small generating set: repeatedly add the element of largest order not yet
    /// generated (lowest index on ties).
    pub fn greedy_generators(&self) -> Vec<u32> {
        let mut gens = Vec::new();
        let mut mask = vec![false; self.n];
        mask[0] = true;
        let orders: Vec<usize> = (0..self.n as u32).map(|a| self.element_order(a)).collect();
        while mask.iter().any(|&b| !b) {
            let best = (0..self.n)
                .filter(|&i| !mask[i])
                .max_by(|&i, &j| orders[i].cmp(&orders[j]).then(j.cmp(&i)))
                .unwrap() as u32;
            gens.push(best);
            mask = self.closure_mask(&gens);
        }
        gens
    }

    pub fn is_normal_mask(&self, mask: &[bool]) -> bool {
        let gens = self.greedy_generators();
        (0..self.n as u32)
            .filter(|&h| mask[h as usize])
            .all(|h| gens.iter().all(|&x| mask[self.conj(h, x) as usize]))
    }

    /// Smallest normal subgroup containing `elems`.
    pub fn normal_closure(&self, elems: &[u32]) -> Vec<bool> {
        let mut gens: Vec<u32> = elems.to_vec();
        let xs = self.greedy_generators();
        loop {
            let mask = self.closure_mask(&gens);
            let missing = (0..self.n as u32)
                .filter(|&h| mask[h as usize])
                .flat_map(|h| xs.iter().map(move |&x| (h, x)))
                .map(|(h, x)| self.conj(h, x))
                .find(|&c| !mask[c as usize]);
            match missing {
                Some(c) => gens.push(c),
                None => return mask,
            }
        }
    }

    pub fn derived_subgroup(&self) -> Vec<bool> {
        let mut comms = Vec::new();
        for a in 0..self.n as u32 {
            for b in 0..self.n as u32 {
                let c = self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b));
                if c != 0 {
                    comms.push(c);
                }
            }
        }
        comms.sort_unstable();
        comms.dedup();
        self.normal_closure(&comms)
    }

    /// Restriction to a subgroup given by its sorted element list (which must
    /// start with the identity).
    pub fn subgroup_table(&self, elems: &[u32]) -> FiniteGroupTable {
        let m = elems.len();
        let mut pos = vec![u32::MAX; self.n];
        for (i, &e) in elems.iter().enumerate() {
            pos[e as usize] = i as u32;
        }
        let mut mul = Vec::with_capacity(m * m);
        for &a in elems {
            for &b in elems {
                mul.push(pos[self.mul(a, b) as usize]);
            }
        }
        Self::from_parts(m, mul)
    }

    pub fn is_solvable(&self) -> bool {
        let mut elems: Vec<u32> = (0..self.n as u32).collect();
        let mut t = self.clone();
        loop {
            if t.order() == 1 {
                return true;
            }
            let d = t.derived_subgroup();
            let sub: Vec<u32> = (0..t.order() as u32).filter(|&i| d[i as usize]).collect();
            if sub.len() == t.order() {
                return false;
            }
            elems = sub.iter().map(|&i| elems[i as usize]).collect();
            t = t.subgroup_table(&sub);
        }
    }

    pub fn direct_product(a: &Self, b: &Self) -> Self {
        // index = x + |A| y
        let (na, nb) = (a.order(), b.order());
        let n = na * nb;
        let mut mul = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let x = a.mul((i % na) as u32, (j % na) as u32);
                let y = b.mul((i / na) as u32, (j / na) as u32);
                mul.push(x + na as u32 * y);
            }
        }
        Self::from_parts(n, mul)
    }

    /// `order N` followed by N rows of N space-separated indices.
    pub fn to_text(&self) -> String {
        let mut s = format!("order {}\n", self.n);
        for a in 0..self.n {
            let row: Vec<String> =
                self.mul[a * self.n..(a + 1) * self.n].iter().map(|x| x.to_string()).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| Error::InvalidTable("empty table file".into()))?;
        let n: usize = header
            .strip_prefix("order")
            .and_then(|r| r.trim().parse().ok())
            .ok_or_else(|| Error::InvalidTable(format!("bad header `{header}`")))?;
        let mut mul = Vec::with_capacity(n * n);
        for (row, line) in lines.enumerate() {
            for tok in line.split_whitespace() {
                let v: u32 = tok.parse().map_err(|_| {
                    Error::InvalidTable(format!("bad entry `{tok}` on row {row}"))
                })?;
                mul.push(v);
            }
        }
        Self::new(n, mul)
    }
}
