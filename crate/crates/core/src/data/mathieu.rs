use num_bigint::BigUint;
use serde::Serialize;

use super::{DataError, Expectation, DisplayRecord};
use crate::permgroup::{diagnose_product, Convention, PermutationGroup};
use crate::repgenus::{genus_of_tuple, GenusReport, PermutationRep};

/// The entry of a relation recomputed from the other two entries.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ImpliedEntry {
    pub index: usize,
    pub convention: Convention,
    pub implied: String,
    pub cycle_type: Vec<usize>,
    pub order: u64,
    pub agrees_with_display: bool,
    pub in_ambient_group: bool,
}

/// Result of checking one display.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DisplayVerification {
    pub display: String,
    #[serde(serialize_with = "crate::ser_display")]
    pub expected_order: BigUint,
    /// Order of the group the representation lives on.
    #[serde(serialize_with = "crate::ser_display")]
    pub ambient_order: BigUint,
    /// Where the ambient group comes from.
    pub ambient: String,
    pub report: GenusReport,
    pub order_ok: bool,
    pub passes: bool,
    pub expected_verification: Expectation,
    pub diagnosis: Vec<ImpliedEntry>,
}

impl DisplayVerification {
    /// Outcome matches the record's declared expectation.
    pub fn as_expected(&self) -> bool {
        self.passes == (self.expected_verification == Expectation::Passes)
    }
}

/// Checks a display: the product relation, that `(g1, g2, g3^-1)` generates a
/// group of the stated order, and its genus over the deleted permutation
/// module. The ambient group is generated by `g1, g2` of `ambient` when
/// given, else of the record itself.
pub fn verify_display(record: &DisplayRecord, ambient: Option<&DisplayRecord>) -> Result<DisplayVerification, DataError> {
    let parse_err = |r: &DisplayRecord, e: &dyn std::fmt::Display| DataError::Parse { path: format!("display {}", r.display), message: format!("{e}") };
    let source = ambient.unwrap_or(record);
    let [a1, a2, _] = source.parsed().map_err(|e| parse_err(source, &e))?;
    let group = PermutationGroup::new(vec![a1, a2]).map_err(|e| parse_err(source, &e))?;
    let ambient_order = group.order();
    let rep = PermutationRep::new(group).map_err(|e| parse_err(source, &e))?;
    let tuple = record.tuple().map_err(|e| parse_err(record, &e))?;
    let mut report = genus_of_tuple(&rep, &tuple).map_err(|e| parse_err(record, &e))?;
    let order_ok = ambient_order == record.group_order;
    if !order_ok {
        report.witnesses.push(format!("order: ambient group has order {ambient_order}, display states {}", record.group_order));
    }
    let passes = order_ok && report.has_genus(record.expected_genus);

    let mut diagnosis = Vec::new();
    if let Some(index) = record.diagnose.filter(|_| !passes) {
        let relation = record.parsed().map_err(|e| parse_err(record, &e))?;
        if let Some(g) = relation.get(index) {
            report.witnesses.push(format!(
                "entry: displayed g{} has cycle type {:?} and order {}",
                index + 1,
                g.cycle_type(),
                g.order()
            ));
        }
        for d in diagnose_product(&relation, index).map_err(|e| parse_err(record, &e))? {
            diagnosis.push(ImpliedEntry {
                index,
                convention: d.convention,
                implied: d.implied.to_string(),
                cycle_type: d.implied.cycle_type(),
                order: d.implied.order_u64().unwrap_or(u64::MAX),
                agrees_with_display: d.agrees,
                in_ambient_group: rep.group().contains(&d.implied),
            });
        }
    }
    Ok(DisplayVerification {
        display: record.display.clone(),
        expected_order: record.group_order.clone(),
        ambient_order,
        ambient: match (&record.ambient, ambient) {
            (Some((file, display)), Some(_)) => format!("{file} {display}"),
            (None, Some(r)) => r.display.clone(),
            (_, None) => "generated by g1, g2".to_string(),
        },
        report,
        order_ok,
        passes,
        expected_verification: record.expected_verification,
        diagnosis,
    })
}
