use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::word::{Letter, Word};

/// Finite integer combination of reduced free-group words.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FreeGroupRingElement {
    terms: BTreeMap<Word, BigInt>,
}

impl FreeGroupRingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_word(Word::empty())
    }

    pub fn from_word(w: Word) -> Self {
        let mut e = Self::zero();
        e.add_term(w, BigInt::one());
        e
    }

    pub fn add_term(&mut self, w: Word, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let w = w.free_reduce();
        let entry = self.terms.entry(w.clone()).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &Word) -> BigInt {
        self.terms.get(&w.free_reduce()).cloned().unwrap_or_default()
    }

    /// Sum of coefficients.
    pub fn augmentation(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        FreeGroupRingElement {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.mul(v), a * b);
            }
        }
        out
    }

    /// Right multiplication by a single group word.
    pub fn mul_word(&self, w: &Word) -> Self {
        let mut out = Self::zero();
        for (u, a) in &self.terms {
            out.add_term(u.mul(w), a.clone());
        }
        out
    }
}

/// Fox derivative of `w` with respect to generator `j`, computed left to right
/// with an accumulated prefix.
pub fn fox_derivative(w: &Word, j: usize) -> FreeGroupRingElement {
    let mut out = FreeGroupRingElement::zero();
    let mut prefix = Word::empty();
    for &l in w.letters() {
        if l.gen == j {
            if l.exp > 0 {
                out.add_term(prefix.clone(), BigInt::one());
            } else {
                let mut p = prefix.clone();
                p.push_reduced(Letter::new(j, -1));
                out.add_term(p, -BigInt::one());
            }
        }
        prefix.push_reduced(l);
    }
    out
}
