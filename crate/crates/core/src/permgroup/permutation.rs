use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;

use super::{Convention, GroupElement, PermError};

/// Ordered display tokens for the points `0..degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Domain {
    tokens: Vec<String>,
    index: HashMap<String, usize>,
}

impl Domain {
    /// Builds a domain from pairwise-distinct tokens. Returns the first
    /// repeated token on failure.
    pub fn new<I, S>(tokens: I) -> Result<Self, String>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let tokens: Vec<String> = tokens.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(tokens.len());
        for (i, t) in tokens.iter().enumerate() {
            if index.insert(t.clone(), i).is_some() {
                return Err(t.clone());
            }
        }
        Ok(Domain { tokens, index })
    }

    /// Tokens `"1"`, `"2"`, ..., `"n"`.
    pub fn one_based(n: usize) -> Self {
        Domain::new((1..=n).map(|i| i.to_string())).expect("distinct")
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn token(&self, point: usize) -> &str {
        &self.tokens[point]
    }

    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    pub fn position(&self, token: &str) -> Option<usize> {
        self.index.get(token).copied()
    }

    /// True if every token is a single character, so cycles print without separators.
    pub fn single_char_tokens(&self) -> bool {
        self.tokens.iter().all(|t| t.chars().count() == 1)
    }
}

/// A bijection of `{0, ..., degree - 1}`, optionally carrying display labels.
///
/// Equality and hashing look at the images only.
#[derive(Clone)]
pub struct Permutation {
    images: Vec<u32>,
    domain: Option<Arc<Domain>>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation { images: (0..degree as u32).collect(), domain: None }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || std::mem::replace(&mut seen[x], true) {
                return Err(PermError::NotABijection(n));
            }
        }
        Ok(Permutation { images: images.into_iter().map(|x| x as u32).collect(), domain: None })
    }

    /// Builds a permutation from disjoint cycles over `0..degree`.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self, PermError> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (k, &x) in cycle.iter().enumerate() {
                if x >= degree || std::mem::replace(&mut touched[x], true) {
                    return Err(PermError::NotABijection(degree));
                }
                images[x] = cycle[(k + 1) % cycle.len()];
            }
        }
        Permutation::from_images(images)
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        Permutation { images, domain: None }
    }

    pub fn with_domain(mut self, domain: Arc<Domain>) -> Self {
        debug_assert_eq!(domain.len(), self.degree());
        self.domain = Some(domain);
        self
    }

    pub fn domain(&self) -> Option<&Arc<Domain>> {
        self.domain.as_ref()
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    fn relabel(&self, images: Vec<u32>) -> Self {
        Permutation { images, domain: self.domain.clone() }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        self.relabel(inv)
    }

    /// `x -> other(self(x))`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        let images = self.images.iter().map(|&x| other.images[x as usize]).collect();
        Permutation { images, domain: self.domain.clone().or_else(|| other.domain.clone()) }
    }

    /// Checked product `ab` under `convention`.
    pub fn compose(a: &Permutation, b: &Permutation, convention: Convention) -> Result<Permutation, PermError> {
        if a.degree() != b.degree() {
            return Err(PermError::DegreeMismatch(a.degree(), b.degree()));
        }
        Ok(<Permutation as GroupElement>::product(a, b, convention))
    }

    pub fn pow(&self, k: u64) -> Permutation {
        let mut result = Permutation::identity(self.degree()).with_domain_of(self);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.then(&base);
            }
            base = base.then(&base);
            k >>= 1;
        }
        result
    }

    fn with_domain_of(mut self, other: &Permutation) -> Self {
        self.domain = other.domain.clone();
        self
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// All cycles, fixed points included as 1-cycles, each starting at its
    /// smallest point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.image(x);
            }
            out.push(cycle);
        }
        out
    }

    /// Cycle lengths in non-increasing order, fixed points included.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    /// Number of cycles, counting fixed points.
    pub fn cycle_count(&self) -> usize {
        self.cycles().len()
    }

    pub fn fixed_points(&self) -> usize {
        self.images.iter().enumerate().filter(|&(i, &x)| i == x as usize).count()
    }

    /// Least common multiple of the cycle lengths.
    pub fn order(&self) -> BigUint {
        self.cycle_type().into_iter().fold(BigUint::one(), |acc, l| acc.lcm(&BigUint::from(l)))
    }

    /// The order as a machine integer, when it fits.
    pub fn order_u64(&self) -> Option<u64> {
        let mut acc: u64 = 1;
        for l in self.cycle_type() {
            acc = acc.checked_mul(l as u64 / acc.gcd(&(l as u64)))?;
        }
        Some(acc)
    }

    /// +1 for even permutations, -1 for odd ones.
    pub fn sign(&self) -> i32 {
        let even = self.cycles().iter().filter(|c| c.len() % 2 == 0).count();
        if even % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Smallest point moved, if any.
    pub fn first_moved(&self) -> Option<usize> {
        self.images.iter().enumerate().find(|&(i, &x)| i != x as usize).map(|(i, _)| i)
    }

    /// Cycle notation using the attached domain tokens when present, or
    /// comma-separated 1-based integers otherwise. The identity prints as `()`.
    pub fn to_cycle_string(&self) -> String {
        let fallback;
        let domain: &Domain = match &self.domain {
            Some(d) => d,
            None => {
                fallback = Domain::one_based(self.degree());
                &fallback
            }
        };
        let compact = self.domain.is_some() && domain.single_char_tokens();
        let mut s = String::new();
        for cycle in self.cycles() {
            if cycle.len() < 2 {
                continue;
            }
            s.push('(');
            for (k, &x) in cycle.iter().enumerate() {
                if k > 0 && !compact {
                    s.push(',');
                }
                s.push_str(domain.token(x));
            }
            s.push(')');
        }
        if s.is_empty() {
            s.push_str("()");
        }
        s
    }
}

impl PartialEq for Permutation {
    fn eq(&self, other: &Self) -> bool {
        self.images == other.images
    }
}

impl Eq for Permutation {}

impl Hash for Permutation {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.images.hash(state);
    }
}

impl PartialOrd for Permutation {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Permutation {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.images.cmp(&other.images)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({})", self.to_cycle_string())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_cycle_string())
    }
}

impl GroupElement for Permutation {
    fn then(&self, other: &Self) -> Self {
        Permutation::then(self, other)
    }

    fn inverse(&self) -> Self {
        Permutation::inverse(self)
    }

    fn is_identity(&self) -> bool {
        Permutation::is_identity(self)
    }

    fn identity_like(&self) -> Self {
        Permutation::identity(self.degree()).with_domain_of(self)
    }
}
