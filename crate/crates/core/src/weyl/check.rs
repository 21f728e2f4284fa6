use num_bigint::BigUint;
use serde::Serialize;

use super::{CartanType, PathDecomposition, RootSystem, RotationReport, WeylError};
use crate::permgroup::PermutationGroup;
use crate::repgenus::{genus_of_tuple, GenusReport, MatrixRep, Representation};

/// Entries are labelled by simple reflections, `s1` to `sr`.
///
/// The full tuple over the reflection representation of `W`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FullTupleCheck {
    pub cartan_type: CartanType,
    #[serde(serialize_with = "crate::ser_display")]
    pub weyl_order: BigUint,
    #[serde(serialize_with = "crate::ser_display")]
    pub classical_order: BigUint,
    pub report: GenusReport,
    pub pass: bool,
}

/// The rotation tuple over `V` as a representation of `W ∩ SO(V)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RotationTupleCheck {
    pub cartan_type: CartanType,
    pub decomposition: PathDecomposition,
    pub decomposition_defects: Vec<String>,
    pub report: GenusReport,
    pub subgroup: RotationReport,
    /// Every entry fixes a subspace of codimension 2.
    pub codimension_two: bool,
    pub pass: bool,
}

pub fn check_full_tuple(rs: &RootSystem) -> Result<FullTupleCheck, WeylError> {
    let rep = rs.reflection_rep()?;
    let t = rs.full_tuple();
    let mut report = genus_of_tuple(&rep, &t.elements)?;
    report.entries = (1..=rs.rank()).chain([1]).flat_map(|i| [format!("s{i}"), format!("s{i}")]).collect();
    let weyl_order = rs.weyl_group().order();
    let classical_order = rs.cartan_type().weyl_order();
    if weyl_order != classical_order {
        report.witnesses.push(format!("order: stabilizer chain gives {weyl_order}, classical formula {classical_order}"));
    }
    let pass = report.has_genus(1) && weyl_order == classical_order;
    Ok(FullTupleCheck { cartan_type: rs.cartan_type(), weyl_order, classical_order, report, pass })
}

pub fn check_rotation_tuple(rs: &RootSystem) -> Result<RotationTupleCheck, WeylError> {
    let decomposition = rs.path_decomposition()?;
    let decomposition_defects = rs.decomposition_defects(&decomposition);
    let t = rs.rotation_tuple()?;
    let group = PermutationGroup::new(t.elements.iter().map(|e| e.perm.clone()).collect()).expect("equal degrees");
    let rep = MatrixRep::from_parts(group, t.elements.iter().map(|e| e.payload.clone()).collect())?;
    let mut report = genus_of_tuple(&rep, &t.elements)?;
    report.entries = [&decomposition.path1, &decomposition.path2]
        .into_iter()
        .flat_map(|p| (0..p.len()).map(move |k| format!("s{} s{}", p[k], p[(k + 1) % p.len()])))
        .collect();
    let subgroup = rs.verify_rotation_subgroup(&t);
    let r = rs.rank();
    let codimension_two = t.elements.iter().map(|e| rep.fixed_dim(e)).all(|d| matches!(d, Ok(d) if d + 2 == r));
    let pass = decomposition_defects.is_empty() && report.has_genus(1) && subgroup.passes() && codimension_two;
    Ok(RotationTupleCheck { cartan_type: rs.cartan_type(), decomposition, decomposition_defects, report, subgroup, codimension_two, pass })
}
