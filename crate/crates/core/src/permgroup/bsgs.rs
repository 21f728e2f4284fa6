//! Schreier-Sims with explicit transversals.
//!
//! Points act on the right: `x^(gh) = (x^g)^h`, which is [`GroupElement::then`].
//! Elements may carry a payload (see [`Tracked`]), in which case the chain
//! also records, for every transversal element, its image under the
//! homomorphism defined by the generator payloads.

use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::{GroupElement, PermError, Permutation};

/// A group element whose action on points is a [`Permutation`].
pub trait PermLike: GroupElement + Send + Sync {
    /// True when the element is nothing but its permutation, so equal
    /// permutations mean equal elements.
    const PURE: bool;
    fn perm(&self) -> &Permutation;
}

impl PermLike for Permutation {
    const PURE: bool = true;
    fn perm(&self) -> &Permutation {
        self
    }
}

/// A permutation paired with the image of the same word under another
/// representation.
#[derive(Clone, Debug, PartialEq)]
pub struct Tracked<H> {
    pub perm: Permutation,
    pub payload: H,
}

impl<H: GroupElement> GroupElement for Tracked<H> {
    fn then(&self, other: &Self) -> Self {
        Tracked { perm: self.perm.then(&other.perm), payload: self.payload.then(&other.payload) }
    }
    fn inverse(&self) -> Self {
        Tracked { perm: self.perm.inverse(), payload: self.payload.inverse() }
    }
    fn is_identity(&self) -> bool {
        self.perm.is_identity() && self.payload.is_identity()
    }
    fn identity_like(&self) -> Self {
        Tracked { perm: self.perm.identity_like(), payload: self.payload.identity_like() }
    }
}

impl<H: GroupElement + Send + Sync> PermLike for Tracked<H> {
    const PURE: bool = false;
    fn perm(&self) -> &Permutation {
        &self.perm
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TrackingError {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("generator images are not a homomorphism: a word equal to the identity permutation has a non-identity image")]
    Inconsistent,
    #[error("permutation is not in the group")]
    NotMember,
}

#[derive(Clone, Debug)]
struct Level<E> {
    point: usize,
    gens: Vec<usize>,
    orbit: Vec<usize>,
    transversal: Vec<Option<E>>,
    inverses: Vec<Option<E>>,
}

/// A base and strong generating set for the group generated by `generators`.
#[derive(Clone, Debug)]
pub struct Bsgs<E> {
    degree: usize,
    generators: Vec<E>,
    strong: Vec<E>,
    levels: Vec<Level<E>>,
}

/// A permutation group with its stabilizer chain.
pub type PermutationGroup = Bsgs<Permutation>;

impl PermutationGroup {
    /// Deterministic Schreier-Sims.
    pub fn new(generators: Vec<Permutation>) -> Result<Self, PermError> {
        Self::build(generators, None)
    }

    /// Seeded random Schreier-Sims followed by a deterministic completion pass,
    /// so the result is exact for every seed.
    pub fn with_seed(generators: Vec<Permutation>, seed: u64) -> Result<Self, PermError> {
        Self::build(generators, Some(seed))
    }

    fn build(generators: Vec<Permutation>, seed: Option<u64>) -> Result<Self, PermError> {
        Bsgs::try_build(generators, seed).map_err(|e| match e {
            TrackingError::Perm(p) => p,
            _ => unreachable!("plain permutations carry no payload"),
        })
    }
}

impl<E: PermLike> Bsgs<E> {
    /// Builds the chain, checking that payloads respect every relation the
    /// algorithm encounters. For [`Tracked`] elements this certifies that the
    /// payloads define a homomorphism on the generated permutation group.
    pub fn try_build(generators: Vec<E>, seed: Option<u64>) -> Result<Self, TrackingError> {
        let degree = generators.first().ok_or(PermError::NoGenerators)?.perm().degree();
        if let Some(bad) = generators.iter().find(|g| g.perm().degree() != degree) {
            return Err(PermError::DegreeMismatch(degree, bad.perm().degree()).into());
        }
        let mut chain = Bsgs { degree, generators: generators.clone(), strong: Vec::new(), levels: Vec::new() };
        for g in generators {
            if g.perm().is_identity() {
                if !g.is_identity() {
                    return Err(TrackingError::Inconsistent);
                }
                continue;
            }
            chain.add_strong(g, 0);
        }
        if let Some(seed) = seed {
            chain.random_phase(seed)?;
        }
        chain.complete()?;
        Ok(chain)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[E] {
        &self.generators
    }

    pub fn strong_generators(&self) -> &[E] {
        &self.strong
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.point).collect()
    }

    pub fn orbit_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    /// Product of the fundamental orbit sizes.
    pub fn order(&self) -> BigUint {
        self.levels.iter().fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.factor(g).is_some()
    }

    /// The element of the chain's representation lying over `g`.
    pub fn lift(&self, g: &Permutation) -> Option<E> {
        if g.degree() != self.degree {
            return None;
        }
        let factors = self.factor(g)?;
        let id = match self.strong.first() {
            Some(s) => s.identity_like(),
            None => return self.generators.first().map(|x| x.identity_like()),
        };
        Some(factors.into_iter().rev().fold(id, |acc, x| acc.then(x)))
    }

    /// Transversal factors `x_0, x_1, ...` with `g = x_{L-1} ... x_1 x_0`.
    fn factor<'a>(&'a self, g: &Permutation) -> Option<Vec<&'a E>> {
        let mut images: Vec<u32> = g.images().to_vec();
        let mut out = Vec::with_capacity(self.levels.len());
        for level in &self.levels {
            let beta = images[level.point] as usize;
            let u = level.transversal[beta].as_ref()?;
            let inv = level.inverses[beta].as_ref().expect("paired with transversal").perm();
            for x in images.iter_mut() {
                *x = inv.images()[*x as usize];
            }
            out.push(u);
        }
        images.iter().enumerate().all(|(i, &x)| i == x as usize).then_some(out)
    }

    pub fn is_transitive(&self) -> bool {
        orbit(self.generators.iter().map(PermLike::perm), 0, self.degree).len() == self.degree || self.degree <= 1
    }

    /// A uniformly distributed element.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> E {
        let mut acc: Option<E> = None;
        for level in self.levels.iter().rev() {
            let pt = level.orbit[rng.gen_range(0..level.orbit.len())];
            let u = level.transversal[pt].as_ref().expect("orbit point has a transversal");
            acc = Some(match acc {
                None => u.clone(),
                Some(a) => a.then(u),
            });
        }
        acc.unwrap_or_else(|| self.generators[0].identity_like())
    }

    fn sift(&self, mut g: E, start: usize) -> (E, usize) {
        for (i, level) in self.levels.iter().enumerate().skip(start) {
            let beta = g.perm().image(level.point);
            match &level.inverses[beta] {
                Some(inv) => g = g.then(inv),
                None => return (g, i),
            }
        }
        (g, self.levels.len())
    }

    /// Adds `g` (non-identity permutation fixing the first `from` base points)
    /// and returns the deepest level it was attached to.
    fn add_strong(&mut self, g: E, from: usize) -> usize {
        let mut depth = self.levels.len();
        for (i, level) in self.levels.iter().enumerate().skip(from) {
            if g.perm().image(level.point) != level.point {
                depth = i;
                break;
            }
        }
        if depth == self.levels.len() {
            let point = g.perm().first_moved().expect("non-identity");
            self.levels.push(Level {
                point,
                gens: Vec::new(),
                orbit: Vec::new(),
                transversal: Vec::new(),
                inverses: Vec::new(),
            });
        }
        let idx = self.strong.len();
        self.strong.push(g);
        for l in from..=depth {
            self.levels[l].gens.push(idx);
            self.rebuild_orbit(l);
        }
        depth
    }

    fn rebuild_orbit(&mut self, l: usize) {
        let n = self.degree;
        let point = self.levels[l].point;
        let mut transversal: Vec<Option<E>> = vec![None; n];
        let id = self.strong[self.levels[l].gens[0]].identity_like();
        transversal[point] = Some(id);
        let mut orbit = vec![point];
        let mut k = 0;
        while k < orbit.len() {
            let gamma = orbit[k];
            for &s in &self.levels[l].gens {
                let s = &self.strong[s];
                let delta = s.perm().image(gamma);
                if transversal[delta].is_none() {
                    let u = transversal[gamma].as_ref().unwrap().then(s);
                    transversal[delta] = Some(u);
                    orbit.push(delta);
                }
            }
            k += 1;
        }
        let inverses = transversal.iter().map(|t| t.as_ref().map(GroupElement::inverse)).collect();
        let level = &mut self.levels[l];
        level.orbit = orbit;
        level.transversal = transversal;
        level.inverses = inverses;
    }

    fn check_residue(&self, h: &E) -> Result<(), TrackingError> {
        if !E::PURE && !h.is_identity() {
            return Err(TrackingError::Inconsistent);
        }
        Ok(())
    }

    fn random_phase(&mut self, seed: u64) -> Result<(), TrackingError> {
        if self.strong.is_empty() {
            return Ok(());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut slots: Vec<E> = self.strong.clone();
        while slots.len() < 10 {
            let k = slots.len() % self.strong.len();
            slots.push(self.strong[k].clone());
        }
        let mut acc = slots[0].identity_like();
        let step = |slots: &mut Vec<E>, acc: &mut E, rng: &mut ChaCha8Rng| {
            let i = rng.gen_range(0..slots.len());
            let mut j = rng.gen_range(0..slots.len() - 1);
            if j >= i {
                j += 1;
            }
            slots[i] = if rng.gen_bool(0.5) { slots[i].then(&slots[j]) } else { slots[j].then(&slots[i]) };
            *acc = acc.then(&slots[i]);
        };
        for _ in 0..50 {
            step(&mut slots, &mut acc, &mut rng);
        }
        let mut quiet = 0;
        let mut tries = 0;
        while quiet < 30 && tries < 2000 {
            tries += 1;
            step(&mut slots, &mut acc, &mut rng);
            let (h, j) = self.sift(acc.clone(), 0);
            if j < self.levels.len() || !h.perm().is_identity() {
                self.add_strong(h, 0);
                quiet = 0;
            } else {
                self.check_residue(&h)?;
                quiet += 1;
            }
        }
        Ok(())
    }

    fn complete(&mut self) -> Result<(), TrackingError> {
        let mut i = self.levels.len();
        while i > 0 {
            let l = i - 1;
            let mut restart = None;
            'scan: for k in 0..self.levels[l].orbit.len() {
                let gamma = self.levels[l].orbit[k];
                for gi in 0..self.levels[l].gens.len() {
                    let level = &self.levels[l];
                    let s = &self.strong[level.gens[gi]];
                    let u = level.transversal[gamma].as_ref().unwrap();
                    let delta = s.perm().image(gamma);
                    let v = level.transversal[delta].as_ref().unwrap();
                    if E::PURE && (0..self.degree).all(|x| s.perm().image(u.perm().image(x)) == v.perm().image(x)) {
                        continue;
                    }
                    let schreier = u.then(s).then(level.inverses[delta].as_ref().unwrap());
                    let (h, j) = self.sift(schreier, l + 1);
                    if j < self.levels.len() || !h.perm().is_identity() {
                        let depth = self.add_strong(h, l + 1);
                        restart = Some(depth + 1);
                        break 'scan;
                    }
                    self.check_residue(&h)?;
                }
            }
            match restart {
                Some(r) => i = r,
                None => i -= 1,
            }
        }
        Ok(())
    }
}

/// Orbit of `point` under the permutations `gens`, in discovery order.
pub fn orbit<'a, I>(gens: I, point: usize, degree: usize) -> Vec<usize>
where
    I: IntoIterator<Item = &'a Permutation>,
{
    let gens: Vec<&Permutation> = gens.into_iter().collect();
    let mut seen = vec![false; degree];
    let mut out = vec![point];
    seen[point] = true;
    let mut k = 0;
    while k < out.len() {
        for g in &gens {
            let y = g.image(out[k]);
            if !std::mem::replace(&mut seen[y], true) {
                out.push(y);
            }
        }
        k += 1;
    }
    out
}
