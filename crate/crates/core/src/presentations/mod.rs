//! Finite presentations, Fox calculus and abelianization.

mod abelian;
mod builtin;
mod parse;
mod ring;
mod word;

use std::fmt;

pub use abelian::{abelian_invariants, AbelianInvariants};
pub use builtin::{builtin_presentation, presentation_families, PresentationFamily};
pub(crate) use builtin::split_call;
pub use parse::parse_presentation;
pub use ring::{fox_derivative, FreeGroupRingElement};
pub use word::{Letter, Word};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    names: Vec<String>,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(names: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        for r in &relators {
            if let Some(g) = r.max_gen() {
                if g >= names.len() {
                    return Err(Error::BadParameter(format!(
                        "relator uses generator {g} but only {} are declared",
                        names.len()
                    )));
                }
            }
        }
        let relators = relators
            .iter()
            .map(|r| r.free_reduce())
            .filter(|r| !r.is_empty())
            .collect();
        Ok(Presentation { names, relators })
    }

    pub fn free(n: usize) -> Self {
        Presentation { names: (1..=n).map(|i| format!("x{i}")).collect(), relators: Vec::new() }
    }

    pub fn num_generators(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// Row k, column j holds the Fox derivative of relator k by generator j.
    pub fn symbolic_jacobian(&self) -> Vec<Vec<FreeGroupRingElement>> {
        self.relators
            .iter()
            .map(|r| (0..self.num_generators()).map(|j| fox_derivative(r, j)).collect())
            .collect()
    }

    /// Exponent-sum matrix (abelianized Jacobian).
    pub fn exponent_matrix(&self) -> Vec<Vec<i64>> {
        self.relators
            .iter()
            .map(|r| (0..self.num_generators()).map(|j| r.exponent_sum(j)).collect())
            .collect()
    }

    /// Generators appearing in no relator.
    pub fn unconstrained_generators(&self) -> Vec<usize> {
        (0..self.num_generators())
            .filter(|&g| self.relators.iter().all(|r| r.letters().iter().all(|l| l.gen != g)))
            .collect()
    }

    pub fn to_dsl(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "< {} |", self.names.join(", "))?;
        for (i, r) in self.relators.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, " {}", r.display(&self.names))?;
        }
        write!(f, " >")
    }
}
