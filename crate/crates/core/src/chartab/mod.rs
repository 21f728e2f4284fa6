//! Character tables with integer values, as line-oriented text.
//!
//! ```text
//! group <name> <order>
//! class <name> <element-order> <size> [<fused>]
//! power <prime> <class> <class>
//! char <name> <degree> <v_1> ... <v_k>
//! alias <token> <class>
//! # comment
//! ```
//!
//! A class line with a fourth field describes the union of `fused` classes
//! that are algebraically conjugate (for instance the two classes of
//! 5-cycles in A5); `size` is then the size of the union. Characters must be
//! constant on such unions, so a `char` line over fused classes is a sum of
//! Galois-conjugate irreducibles. Its norm is recorded and used by the
//! structure-constant formulas.

mod classes;
mod parse;

pub use classes::{class_genus, class_product_count, class_triple_count, CharacterRep, ClassTuple};
pub use parse::parse_table;

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::modular::prime_factors_u64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChartabError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: {message}")]
    Inconsistent { line: usize, message: String },
    #[error("table {table}: {message}")]
    Invalid { table: String, message: String },
    #[error("unknown class `{0}`")]
    UnknownClass(String),
    #[error("unknown character `{0}`")]
    UnknownCharacter(String),
    #[error("the trivial character is not allowed here")]
    TrivialCharacter,
    #[error("unsupported table: {0}")]
    Unsupported(String),
    #[error("inconsistent character data: {0}")]
    NonIntegral(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassInfo {
    pub name: String,
    pub element_order: u64,
    /// Size of the class, or of the union when `fused > 1`.
    pub size: BigUint,
    pub fused: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    pub name: String,
    pub degree: i64,
    pub values: Vec<i64>,
    /// `<chi, chi>`: 1 for an irreducible, the orbit length for a Galois orbit sum.
    pub norm: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterTable {
    pub name: String,
    pub order: BigUint,
    pub classes: Vec<ClassInfo>,
    /// `(p, class) -> class of p-th powers`.
    pub power_maps: BTreeMap<(u64, usize), usize>,
    pub characters: Vec<Character>,
    pub aliases: BTreeMap<String, usize>,
}

impl CharacterTable {
    /// Class index by name or alias.
    pub fn class_index(&self, token: &str) -> Result<usize, ChartabError> {
        self.classes
            .iter()
            .position(|c| c.name == token)
            .or_else(|| self.aliases.get(token).copied())
            .ok_or_else(|| ChartabError::UnknownClass(token.to_string()))
    }

    pub fn character_index(&self, name: &str) -> Result<usize, ChartabError> {
        self.characters.iter().position(|c| c.name == name).ok_or_else(|| ChartabError::UnknownCharacter(name.to_string()))
    }

    pub fn character(&self, name: &str) -> Result<&Character, ChartabError> {
        Ok(&self.characters[self.character_index(name)?])
    }

    /// Number of underlying conjugacy classes, counting fused ones separately.
    pub fn conjugacy_class_count(&self) -> usize {
        self.classes.iter().map(|c| c.fused as usize).sum()
    }

    /// True if the characters span the class functions on the listed classes.
    pub fn is_complete(&self) -> bool {
        self.characters.len() == self.classes.len()
    }

    /// Class of `g^k` for `g` in class `c`, following power maps along the
    /// prime factorization of `gcd(k, ord)`. Exponents coprime to the order
    /// land in the same rational class, which is all integer characters see.
    pub fn power_class(&self, c: usize, k: u64) -> Option<usize> {
        let ord = self.classes[c].element_order;
        let mut d = k.gcd(&ord);
        let mut cur = c;
        for p in prime_factors_u64(d) {
            while d.is_multiple_of(p) {
                cur = *self.power_maps.get(&(p, cur))?;
                d /= p;
            }
        }
        Some(cur)
    }

    /// `(1/ord) sum_{k=0}^{ord-1} chi(g^k)` for `g` in class `c`: the dimension
    /// of the fixed space of `g` on a module with character `chi`.
    pub fn burnside_average(&self, chi: usize, c: usize) -> Result<BigRational, ChartabError> {
        let ord = self.classes[c].element_order;
        let values = &self.characters[chi].values;
        let mut sum = BigRational::zero();
        for d in divisors(ord) {
            let class = self.power_class(c, d).ok_or_else(|| ChartabError::Invalid {
                table: self.name.clone(),
                message: format!("missing power map below class {}", self.classes[c].name),
            })?;
            sum += BigRational::from_integer((euler_phi(ord / d) as i64 * values[class]).into());
        }
        Ok(sum / BigRational::from_integer((ord as i64).into()))
    }

    /// The Burnside average as a dimension, or an error if it is not an
    /// integer in `[0, degree]`.
    pub fn fixed_dim(&self, chi: usize, c: usize) -> Result<usize, ChartabError> {
        let avg = self.burnside_average(chi, c)?;
        let character = &self.characters[chi];
        if !avg.is_integer() {
            return Err(ChartabError::NonIntegral(format!(
                "{} on class {} averages to {avg} over powers",
                character.name, self.classes[c].name
            )));
        }
        let v = avg.to_integer().to_i64().unwrap_or(-1);
        if v < 0 || v > character.degree {
            return Err(ChartabError::NonIntegral(format!(
                "{} on class {} gives fixed dimension {v} outside [0, {}]",
                character.name, self.classes[c].name, character.degree
            )));
        }
        Ok(v as usize)
    }

    /// `(1/|G|) sum_K |K| a(K) b(K)`.
    pub fn inner_product(&self, a: &[i64], b: &[i64]) -> BigRational {
        let total = self
            .classes
            .iter()
            .zip(a.iter().zip(b))
            .fold(num_bigint::BigInt::zero(), |acc, (c, (x, y))| acc + num_bigint::BigInt::from(c.size.clone()) * (x * y));
        BigRational::new(total, self.order.clone().into())
    }
}

pub(crate) fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub(crate) fn euler_phi(n: u64) -> u64 {
    prime_factors_u64(n).into_iter().fold(n, |acc, p| acc / p * (p - 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_helpers() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(1), 1);
    }
}
