use crate::permgroup::{orbit, tuple_product_check, Permutation, PermutationGroup};

use super::{Check, ProductStatus, RepError, Representation};

/// The deleted permutation module of a transitive group: the complement of
/// the invariant line, of dimension `degree - 1`.
pub struct PermutationRep {
    group: PermutationGroup,
}

impl PermutationRep {
    pub fn new(group: PermutationGroup) -> Result<Self, RepError> {
        let degree = group.degree();
        let orb = orbit(group.generators().iter(), 0, degree).len();
        if orb != degree {
            return Err(RepError::Intransitive { orbit: orb, degree });
        }
        Ok(PermutationRep { group })
    }

    pub fn group(&self) -> &PermutationGroup {
        &self.group
    }
}

/// Every element lies in `group` and together they generate a group of the
/// same order.
pub(crate) fn generation_check(group: &PermutationGroup, perms: &[Permutation]) -> Check {
    if let Some((i, p)) = perms.iter().enumerate().find(|(_, p)| !group.contains(p)) {
        return Check::fail(format!("entry {} = {} is not in the group", i + 1, p));
    }
    let generated = match PermutationGroup::new(perms.to_vec()) {
        Ok(h) => h.order(),
        Err(e) => return Check::fail(e.to_string()),
    };
    let order = group.order();
    if generated == order {
        Check::Pass
    } else {
        Check::fail(format!("the entries generate a subgroup of order {generated}, the group has order {order}"))
    }
}

impl Representation for PermutationRep {
    type Element = Permutation;

    fn describe(&self) -> String {
        format!("deleted permutation module on {} points", self.group.degree())
    }

    fn dim(&self) -> usize {
        self.group.degree() - 1
    }

    fn invariant_dim(&self) -> usize {
        0
    }

    fn fixed_dim(&self, g: &Permutation) -> Result<usize, RepError> {
        if g.degree() != self.group.degree() {
            return Err(RepError::NotInGroup(g.to_string()));
        }
        Ok(g.cycle_count() - 1)
    }

    fn label(&self, g: &Permutation) -> String {
        g.to_string()
    }

    fn product_status(&self, elements: &[Permutation]) -> ProductStatus {
        ProductStatus::from_check(tuple_product_check(elements))
    }

    fn generation(&self, elements: &[Permutation]) -> Check {
        generation_check(&self.group, elements)
    }
}
