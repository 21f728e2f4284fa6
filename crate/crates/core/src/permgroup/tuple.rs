use serde::Serialize;

use super::{Convention, GroupElement, PermError};

/// An ordered tuple `(g_1, ..., g_n)` together with the convention under
/// which its product is read.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratingTuple<E> {
    pub elements: Vec<E>,
    pub convention: Convention,
}

impl<E: GroupElement> GeneratingTuple<E> {
    pub fn new(elements: Vec<E>, convention: Convention) -> Self {
        GeneratingTuple { elements, convention }
    }

    /// The tuple `(a_1, ..., a_k, c^-1)` for a relation `a_1 ... a_k = c`.
    pub fn from_relation(lhs: Vec<E>, rhs: &E, convention: Convention) -> Self {
        let mut elements = lhs;
        elements.push(rhs.inverse());
        GeneratingTuple { elements, convention }
    }

    /// Uses the first convention under which the product is trivial, falling
    /// back to left-to-right when neither is.
    pub fn detect(elements: Vec<E>) -> Self {
        let convention = tuple_product_check(&elements).detected().unwrap_or(Convention::LeftToRight);
        GeneratingTuple { elements, convention }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn product(&self) -> Option<E> {
        product_of(&self.elements, self.convention)
    }

    pub fn is_product_one(&self) -> bool {
        self.product().is_some_and(|p| p.is_identity())
    }
}

/// `g_1 g_2 ... g_n` read under `convention`.
pub fn product_of<E: GroupElement>(elements: &[E], convention: Convention) -> Option<E> {
    let mut it = elements.iter();
    let first = it.next()?.clone();
    Some(it.fold(first, |acc, g| E::product(&acc, g, convention)))
}

/// Which conventions make a tuple multiply to the identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ProductCheck {
    pub left_to_right: bool,
    pub right_to_left: bool,
}

impl ProductCheck {
    pub fn holds(&self) -> bool {
        self.left_to_right || self.right_to_left
    }

    pub fn holds_under(&self, c: Convention) -> bool {
        match c {
            Convention::LeftToRight => self.left_to_right,
            Convention::RightToLeft => self.right_to_left,
        }
    }

    pub fn detected(&self) -> Option<Convention> {
        Convention::BOTH.into_iter().find(|&c| self.holds_under(c))
    }
}

pub fn tuple_product_check<E: GroupElement>(elements: &[E]) -> ProductCheck {
    let one = |c| product_of(elements, c).is_some_and(|p| p.is_identity());
    ProductCheck { left_to_right: one(Convention::LeftToRight), right_to_left: one(Convention::RightToLeft) }
}

/// The value of one entry of a relation `g_1 g_2 = g_3` forced by the other two.
#[derive(Clone, Debug, PartialEq)]
pub struct Diagnosis<E> {
    pub index: usize,
    pub convention: Convention,
    pub implied: E,
    pub agrees: bool,
}

/// For a relation `g_1 g_2 = g_3`, computes the entry at `broken_index` implied
/// by the other two under each convention.
pub fn diagnose_product<E>(relation: &[E], broken_index: usize) -> Result<Vec<Diagnosis<E>>, PermError>
where
    E: GroupElement + PartialEq,
{
    let [g1, g2, g3] = relation else {
        return Err(PermError::NotARelation(relation.len()));
    };
    if broken_index > 2 {
        return Err(PermError::IndexOutOfRange { index: broken_index, len: 3 });
    }
    Ok(Convention::BOTH
        .into_iter()
        .map(|c| {
            let implied = match broken_index {
                0 => E::product(g3, &g2.inverse(), c),
                1 => E::product(&g1.inverse(), g3, c),
                _ => E::product(g1, g2, c),
            };
            let agrees = implied == relation[broken_index];
            Diagnosis { index: broken_index, convention: c, implied, agrees }
        })
        .collect())
}
