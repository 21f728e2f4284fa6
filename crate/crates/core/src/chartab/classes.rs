use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{CharacterTable, ChartabError};
use crate::repgenus::{genus_of_tuple, Check, GenusReport, ProductStatus, RepError, Representation};

/// The module with character `chi`, evaluated on classes of `table`.
pub struct CharacterRep {
    table: Arc<CharacterTable>,
    chi: usize,
    invariant_dim: usize,
}

impl CharacterRep {
    pub fn new(table: Arc<CharacterTable>, character: &str) -> Result<Self, ChartabError> {
        let chi = table.character_index(character)?;
        let c = &table.characters[chi];
        if c.degree == 1 && c.values.iter().all(|&v| v == 1) {
            return Err(ChartabError::TrivialCharacter);
        }
        let ones = vec![1; table.classes.len()];
        let inv = table.inner_product(&c.values, &ones);
        let invariant_dim = match inv.is_integer().then(|| inv.to_integer().to_usize()).flatten() {
            Some(d) => d,
            None => return Err(ChartabError::NonIntegral(format!("<{}, 1> = {inv}", c.name))),
        };
        Ok(CharacterRep { table, chi, invariant_dim })
    }

    pub fn table(&self) -> &Arc<CharacterTable> {
        &self.table
    }

    pub fn character_name(&self) -> &str {
        &self.table.characters[self.chi].name
    }
}

impl Representation for CharacterRep {
    type Element = usize;

    fn describe(&self) -> String {
        let c = &self.table.characters[self.chi];
        format!("character {} of {} (degree {})", c.name, self.table.name, c.degree)
    }

    fn dim(&self) -> usize {
        self.table.characters[self.chi].degree as usize
    }

    fn invariant_dim(&self) -> usize {
        self.invariant_dim
    }

    fn fixed_dim(&self, class: &usize) -> Result<usize, RepError> {
        if *class >= self.table.classes.len() {
            return Err(RepError::WrongElementKind);
        }
        Ok(self.table.fixed_dim(self.chi, *class)?)
    }

    fn label(&self, class: &usize) -> String {
        self.table.classes.get(*class).map_or_else(|| "?".into(), |c| c.name.clone())
    }

    /// With a complete table the number of product-one tuples from the given
    /// classes is computed; otherwise existence is taken on trust.
    fn product_status(&self, classes: &[usize]) -> ProductStatus {
        if !self.table.is_complete() {
            return ProductStatus::assumed("class data alone cannot exhibit elements with product one; taken from the literature");
        }
        match class_product_count(&self.table, classes) {
            Ok(n) if n.is_zero() => ProductStatus {
                check: Check::fail("no tuple from these classes has product one"),
                conventions: None,
                detected: None,
            },
            Ok(_) => ProductStatus { check: Check::Pass, conventions: None, detected: None },
            Err(e) => ProductStatus { check: Check::fail(e.to_string()), conventions: None, detected: None },
        }
    }

    fn generation(&self, _classes: &[usize]) -> Check {
        Check::Assumed { reason: "generation is not decidable from class data; assumed for class tuples".into() }
    }
}

/// Class names for a genus computation on character data. Tokens may be
/// aliases, for instance lifted class names; they are resolved on use.
#[derive(Clone, Debug)]
pub struct ClassTuple {
    pub table: Arc<CharacterTable>,
    pub character: String,
    pub classes: Vec<String>,
}

impl ClassTuple {
    pub fn new(table: Arc<CharacterTable>, character: &str, classes: &[&str]) -> Self {
        ClassTuple { table, character: character.to_string(), classes: classes.iter().map(|s| s.to_string()).collect() }
    }

    pub fn resolve(&self) -> Result<Vec<usize>, ChartabError> {
        self.classes.iter().map(|c| self.table.class_index(c)).collect()
    }
}

/// Genus of a class tuple, with `dim V^{g_i}` from Burnside averages. Entries
/// given through an alias are reported as `token=class`.
pub fn class_genus(ct: &ClassTuple) -> Result<GenusReport, RepError> {
    let rep = CharacterRep::new(ct.table.clone(), &ct.character)?;
    let idx = ct.resolve()?;
    let mut report = genus_of_tuple(&rep, &idx)?;
    for (entry, (token, &i)) in report.entries.iter_mut().zip(ct.classes.iter().zip(&idx)) {
        if *token != ct.table.classes[i].name {
            *entry = format!("{token}={}", ct.table.classes[i].name);
        }
    }
    Ok(report)
}

fn require_complete(table: &CharacterTable) -> Result<(), ChartabError> {
    if !table.is_complete() {
        return Err(ChartabError::Unsupported(format!(
            "{} has {} characters for {} classes",
            table.name,
            table.characters.len(),
            table.classes.len()
        )));
    }
    Ok(())
}

/// Number of tuples `(x_1, ..., x_n)` with `x_i` in class `classes[i]` and
/// `x_1 ... x_n = 1`, from a complete table:
///
/// ```text
/// (1/|G|) sum_psi prod|K_i| prod psi(K_i) / (<psi,psi> psi(1)^(n-2))
/// ```
///
/// where `psi` runs over the table's characters (Galois orbit sums when
/// classes are fused).
pub fn class_product_count(table: &CharacterTable, classes: &[usize]) -> Result<BigUint, ChartabError> {
    require_complete(table)?;
    let n = classes.len();
    if n == 0 {
        return Ok(BigUint::one());
    }
    if let Some(&bad) = classes.iter().find(|&&c| c >= table.classes.len()) {
        return Err(ChartabError::UnknownClass(bad.to_string()));
    }
    let sizes: BigInt = classes.iter().map(|&c| BigInt::from(table.classes[c].size.clone())).product();
    let mut sum = BigRational::zero();
    for psi in &table.characters {
        let num: BigInt = classes.iter().map(|&c| BigInt::from(psi.values[c])).product();
        let deg = BigInt::from(psi.degree);
        let den = BigInt::from(psi.norm) * num_traits::pow(deg.clone(), n.saturating_sub(2));
        let term = if n >= 2 { BigRational::new(num, den) } else { BigRational::new(num * deg, BigInt::from(psi.norm)) };
        sum += term;
    }
    let count = sum * BigRational::from_integer(sizes) / BigRational::from_integer(table.order.clone().into());
    if !count.is_integer() || count.is_negative() {
        return Err(ChartabError::NonIntegral(format!("product count {count} is not a non-negative integer")));
    }
    Ok(count.to_integer().to_biguint().expect("non-negative"))
}

/// For a fixed `z` in class `c3`, the number of pairs `(x, y)` in `c1 x c2`
/// with `x y z = 1`: the class multiplication coefficient.
pub fn class_triple_count(table: &CharacterTable, c1: &str, c2: &str, c3: &str) -> Result<BigUint, ChartabError> {
    let idx = [table.class_index(c1)?, table.class_index(c2)?, table.class_index(c3)?];
    let total = class_product_count(table, &idx)?;
    let size = &table.classes[idx[2]].size;
    if !(&total % size).is_zero() {
        return Err(ChartabError::NonIntegral(format!("{total} product-one triples is not a multiple of |{c3}| = {size}")));
    }
    Ok(total / size)
}
