use crate::exactlin::RationalMatrix;
use crate::permgroup::{tuple_product_check, Bsgs, Permutation, PermutationGroup, Tracked};

use super::perm::generation_check;
use super::{Check, ProductStatus, RepError, Representation};

/// A representation given by exact matrices for the generators of a
/// permutation group. Elements carry both their permutation and their matrix.
pub struct MatrixRep {
    group: PermutationGroup,
    generator_matrices: Vec<RationalMatrix>,
    dim: usize,
    invariant_dim: usize,
    chain: Option<Bsgs<Tracked<RationalMatrix>>>,
}

fn common_fixed_dim(dim: usize, matrices: &[RationalMatrix]) -> Result<usize, RepError> {
    if matrices.is_empty() {
        return Ok(dim);
    }
    let blocks = matrices.iter().map(RationalMatrix::minus_identity).collect::<Result<Vec<_>, _>>()?;
    Ok(RationalMatrix::stack(&blocks)?.kernel_dimension())
}

fn check_shapes(dim: usize, matrices: &[RationalMatrix]) -> Result<(), RepError> {
    for (index, m) in matrices.iter().enumerate() {
        if m.rows() != dim || m.cols() != dim {
            return Err(RepError::MatrixShape { index, rows: m.rows(), cols: m.cols(), dim });
        }
    }
    Ok(())
}

impl MatrixRep {
    /// Assigns `matrices[i]` to `generators[i]`. Building the stabilizer chain
    /// with the matrices attached checks every relation Schreier-Sims meets, so
    /// an assignment that is not a homomorphism is rejected.
    pub fn from_assignments(generators: Vec<Permutation>, matrices: Vec<RationalMatrix>) -> Result<Self, RepError> {
        if generators.len() != matrices.len() {
            return Err(RepError::MatrixCount { expected: generators.len(), got: matrices.len() });
        }
        let dim = matrices.first().map_or(0, RationalMatrix::rows);
        check_shapes(dim, &matrices)?;
        let tracked: Vec<_> =
            generators.iter().cloned().zip(matrices.iter().cloned()).map(|(perm, payload)| Tracked { perm, payload }).collect();
        let chain = Bsgs::try_build(tracked, None)?;
        let group = PermutationGroup::new(generators)?;
        let invariant_dim = common_fixed_dim(dim, &matrices)?;
        Ok(MatrixRep { group, generator_matrices: matrices, dim, invariant_dim, chain: Some(chain) })
    }

    /// Uses matrices already known to define a representation of `group`
    /// (one per generator of `group`); elements must be supplied as pairs.
    pub fn from_parts(group: PermutationGroup, matrices: Vec<RationalMatrix>) -> Result<Self, RepError> {
        if group.generators().len() != matrices.len() {
            return Err(RepError::MatrixCount { expected: group.generators().len(), got: matrices.len() });
        }
        let dim = matrices.first().map_or(0, RationalMatrix::rows);
        check_shapes(dim, &matrices)?;
        let invariant_dim = common_fixed_dim(dim, &matrices)?;
        Ok(MatrixRep { group, generator_matrices: matrices, dim, invariant_dim, chain: None })
    }

    pub fn group(&self) -> &PermutationGroup {
        &self.group
    }

    pub fn generator_matrices(&self) -> &[RationalMatrix] {
        &self.generator_matrices
    }

    /// The element over `g`, with its matrix expressed through the generators.
    pub fn lift(&self, g: &Permutation) -> Result<Tracked<RationalMatrix>, RepError> {
        let chain = self.chain.as_ref().ok_or_else(|| RepError::NotInGroup(g.to_string()))?;
        chain.lift(g).ok_or_else(|| RepError::NotInGroup(g.to_string()))
    }
}

impl Representation for MatrixRep {
    type Element = Tracked<RationalMatrix>;

    fn describe(&self) -> String {
        format!("exact rational matrices of size {}", self.dim)
    }

    fn dim(&self) -> usize {
        self.dim
    }

    fn invariant_dim(&self) -> usize {
        self.invariant_dim
    }

    fn fixed_dim(&self, g: &Self::Element) -> Result<usize, RepError> {
        Ok(g.payload.minus_identity()?.kernel_dimension())
    }

    fn label(&self, g: &Self::Element) -> String {
        g.perm.to_string()
    }

    fn product_status(&self, elements: &[Self::Element]) -> ProductStatus {
        ProductStatus::from_check(tuple_product_check(elements))
    }

    fn generation(&self, elements: &[Self::Element]) -> Check {
        let perms: Vec<Permutation> = elements.iter().map(|e| e.perm.clone()).collect();
        generation_check(&self.group, &perms)
    }
}
