use std::collections::HashSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::par::{self, Execution};
use crate::permgroup::{Convention, GeneratingTuple, Permutation, PermutationGroup};

use super::report::lhs_of;
use super::Representation;

#[derive(Clone, Debug)]
pub struct SearchParams {
    /// Tuple length, at least 2.
    pub n: usize,
    pub target_genus: i64,
    /// Optional class representative per entry. Entries before the last are
    /// sampled as random conjugates of it; the last entry is forced by the
    /// product and must match its cycle type.
    pub constraints: Vec<Option<Permutation>>,
    pub seed: u64,
    /// Number of sampled tuples, and the cap on returned results.
    pub budget: usize,
}

fn attempt<R>(group: &PermutationGroup, rep: &R, p: &SearchParams, index: usize) -> Option<(Vec<Permutation>, Vec<Vec<usize>>)>
where
    R: Representation<Element = Permutation>,
{
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    rng.set_stream(index as u64);
    let constraint = |i: usize| p.constraints.get(i).and_then(Option::as_ref);
    let mut elements = Vec::with_capacity(p.n);
    let mut prod = Permutation::identity(group.degree());
    for i in 0..p.n - 1 {
        let g = match constraint(i) {
            Some(r) => {
                let x = group.random_element(&mut rng);
                x.inverse().then(r).then(&x)
            }
            None => group.random_element(&mut rng),
        };
        prod = prod.then(&g);
        elements.push(g);
    }
    let last = prod.inverse();
    if let Some(r) = constraint(p.n - 1) {
        if r.cycle_type() != last.cycle_type() {
            return None;
        }
    }
    elements.push(last);
    let fixed: Vec<usize> = elements.iter().map(|g| rep.fixed_dim(g)).collect::<Result<_, _>>().ok()?;
    if lhs_of(rep.dim(), rep.invariant_dim(), &fixed) != 2 * p.target_genus {
        return None;
    }
    if !rep.generation(&elements).is_pass() {
        return None;
    }
    let mut fingerprint: Vec<Vec<usize>> = elements.iter().map(Permutation::cycle_type).collect();
    fingerprint.sort();
    Some((elements, fingerprint))
}

/// Random search for generating product-one tuples of the requested genus.
///
/// Attempt `i` draws from its own ChaCha stream, so results depend only on the
/// seed and are identical under sequential and parallel execution. Hits are
/// deduplicated by the sorted list of cycle types and returned in attempt
/// order, at most `budget` of them, using the left-to-right convention.
pub fn search_tuples<R>(group: &PermutationGroup, rep: &R, params: &SearchParams, exec: Execution) -> Vec<GeneratingTuple<Permutation>>
where
    R: Representation<Element = Permutation>,
{
    if params.n < 2 || params.budget == 0 {
        return Vec::new();
    }
    let hits = par::filter_map_indexed(exec, params.budget, |i| attempt(group, rep, params, i));
    let mut seen = HashSet::new();
    hits.into_iter()
        .filter(|(_, fp)| seen.insert(fp.clone()))
        .map(|(elements, _)| GeneratingTuple::new(elements, Convention::LeftToRight))
        .take(params.budget)
        .collect()
}
