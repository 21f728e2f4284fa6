//! Root systems, Weyl groups and their reflection representations.
//!
//! Vertices are numbered as in Bourbaki's tables, starting at 1 in every
//! public report and at 0 internally:
//!
//! ```text
//! A_r  1-2-...-r            B_r  1-2-...-(r-1)=>r      C_r  1-2-...-(r-1)<=r
//! D_r  1-2-...-(r-2)-(r-1), (r-2)-r
//! E_r  1-3-4-5-...-r, 2-4   F_4  1-2=>3-4              G_2  1<=2 (triple bond)
//! ```
//!
//! The reflection representation is written in the basis of simple roots, so
//! `dim V = r` for every type. The Weyl group is realized as permutations of
//! the root list, and its elements carry both actions.

mod check;

pub use check::{check_full_tuple, check_rotation_tuple, FullTupleCheck, RotationTupleCheck};

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exactlin::RationalMatrix;
use crate::permgroup::{Convention, GeneratingTuple, GroupElement, Permutation, PermutationGroup, Tracked};
use crate::repgenus::{MatrixRep, RepError};

#[derive(Debug, Error)]
pub enum WeylError {
    #[error("no irreducible root system of type {family}{rank}")]
    InvalidType { family: char, rank: usize },
    #[error("cannot parse root system type `{0}`")]
    Unparsable(String),
    #[error("rank {0} is below 3: the diagram has fewer than two edges")]
    RankTooSmall(usize),
    #[error("permutation of degree {got} does not act on the {expected} roots")]
    WrongDegree { expected: usize, got: usize },
    #[error("permutation does not preserve the root system")]
    NotAWeylElement,
    #[error(transparent)]
    Rep(#[from] RepError),
}

/// A type label such as `E8`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CartanType {
    pub family: char,
    pub rank: usize,
}

impl CartanType {
    pub fn new(family: char, rank: usize) -> Result<Self, WeylError> {
        let family = family.to_ascii_uppercase();
        let ok = match family {
            'A' => rank >= 1,
            'B' => rank >= 2,
            'C' => rank >= 3,
            'D' => rank >= 4,
            'E' => (6..=8).contains(&rank),
            'F' => rank == 4,
            'G' => rank == 2,
            _ => false,
        };
        if ok {
            Ok(CartanType { family, rank })
        } else {
            Err(WeylError::InvalidType { family, rank })
        }
    }

    /// `|W|` from the classical formulas.
    pub fn weyl_order(&self) -> BigUint {
        let r = self.rank as u64;
        let fact = |n: u64| (1..=n).map(BigUint::from).product::<BigUint>();
        match (self.family, self.rank) {
            ('A', _) => fact(r + 1),
            ('B', _) | ('C', _) => (BigUint::one() << r) * fact(r),
            ('D', _) => (BigUint::one() << (r - 1)) * fact(r),
            ('E', 6) => BigUint::from(51_840u64),
            ('E', 7) => BigUint::from(2_903_040u64),
            ('E', 8) => BigUint::from(696_729_600u64),
            ('F', 4) => BigUint::from(1_152u64),
            ('G', 2) => BigUint::from(12u64),
            _ => unreachable!("validated in CartanType::new"),
        }
    }

    /// Number of roots from the classical formulas.
    pub fn root_count(&self) -> usize {
        let r = self.rank;
        match (self.family, r) {
            ('A', _) => r * (r + 1),
            ('B', _) | ('C', _) => 2 * r * r,
            ('D', _) => 2 * r * (r - 1),
            ('E', 6) => 72,
            ('E', 7) => 126,
            ('E', 8) => 240,
            ('F', 4) => 48,
            ('G', 2) => 12,
            _ => unreachable!("validated in CartanType::new"),
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

impl FromStr for CartanType {
    type Err = WeylError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = chars.next().ok_or_else(|| WeylError::Unparsable(s.into()))?;
        let rank = chars.as_str().parse().map_err(|_| WeylError::Unparsable(s.into()))?;
        CartanType::new(family, rank)
    }
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn ambient(dim: usize, terms: &[(usize, BigRational)]) -> Vec<BigRational> {
    let mut v = vec![BigRational::zero(); dim];
    for (i, c) in terms {
        v[*i] += c;
    }
    v
}

fn diff(dim: usize, i: usize, j: usize) -> Vec<BigRational> {
    ambient(dim, &[(i, rat(1, 1)), (j, rat(-1, 1))])
}

/// Simple roots in Bourbaki's ambient coordinates.
fn simple_roots(t: CartanType) -> Vec<Vec<BigRational>> {
    let r = t.rank;
    let ints = |dim: usize, terms: Vec<(usize, i64)>| {
        ambient(dim, &terms.into_iter().map(|(i, c)| (i, rat(c, 1))).collect::<Vec<_>>())
    };
    match t.family {
        'A' => (0..r).map(|i| diff(r + 1, i, i + 1)).collect(),
        'B' | 'C' | 'D' => {
            let mut v: Vec<_> = (0..r - 1).map(|i| diff(r, i, i + 1)).collect();
            v.push(match t.family {
                'B' => ints(r, vec![(r - 1, 1)]),
                'C' => ints(r, vec![(r - 1, 2)]),
                _ => ints(r, vec![(r - 2, 1), (r - 1, 1)]),
            });
            v
        }
        'E' => {
            let h = rat(1, 2);
            let mut first = vec![-h.clone(); 8];
            first[0] = h.clone();
            first[7] = h;
            let mut v = vec![first, ints(8, vec![(0, 1), (1, 1)])];
            v.extend((0..6).map(|i| diff(8, i + 1, i)));
            v.truncate(r);
            v
        }
        'F' => vec![
            diff(4, 1, 2),
            diff(4, 2, 3),
            ints(4, vec![(3, 1)]),
            (0..4).map(|i| if i == 0 { rat(1, 2) } else { rat(-1, 2) }).collect(),
        ],
        'G' => vec![ints(3, vec![(0, 1), (1, -1)]), ints(3, vec![(0, -2), (1, 1), (2, 1)])],
        _ => unreachable!("validated in CartanType::new"),
    }
}

fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// An irreducible root system with its Weyl group acting on the roots.
pub struct RootSystem {
    cartan_type: CartanType,
    simple_roots: Vec<Vec<BigRational>>,
    /// `cartan[i][j] = 2 (a_i, a_j) / (a_j, a_j)`.
    cartan: Vec<Vec<i64>>,
    /// Roots in simple-root coordinates; the first `r` are the simple roots.
    roots: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, usize>,
    reflections: Vec<Permutation>,
    reflection_matrices: Vec<RationalMatrix>,
    edges: Vec<(usize, usize)>,
    group: OnceLock<PermutationGroup>,
}

/// Two paths in the Dynkin diagram meeting in one vertex; vertices 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PathDecomposition {
    pub path1: Vec<usize>,
    pub path2: Vec<usize>,
}

impl RootSystem {
    pub fn new(cartan_type: CartanType) -> Self {
        let r = cartan_type.rank;
        let simple = simple_roots(cartan_type);
        let cartan: Vec<Vec<i64>> = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| {
                        let a = BigRational::from_integer(2.into()) * dot(&simple[i], &simple[j]) / dot(&simple[j], &simple[j]);
                        debug_assert!(a.is_integer());
                        a.to_integer().to_i64().expect("Cartan entries are small")
                    })
                    .collect()
            })
            .collect();

        let reflect = |beta: &[i64], i: usize| -> Vec<i64> {
            let pairing: i64 = (0..r).map(|j| beta[j] * cartan[j][i]).sum();
            let mut out = beta.to_vec();
            out[i] -= pairing;
            out
        };

        let mut roots: Vec<Vec<i64>> = (0..r).map(|i| (0..r).map(|j| i64::from(i == j)).collect()).collect();
        let mut index: HashMap<Vec<i64>, usize> = roots.iter().cloned().enumerate().map(|(k, v)| (v, k)).collect();
        let mut next = 0;
        while next < roots.len() {
            for i in 0..r {
                let img = reflect(&roots[next], i);
                if !index.contains_key(&img) {
                    index.insert(img.clone(), roots.len());
                    roots.push(img);
                }
            }
            next += 1;
        }

        let reflections = (0..r)
            .map(|i| Permutation::from_images_unchecked(roots.iter().map(|b| index[&reflect(b, i)] as u32).collect()))
            .collect();
        let reflection_matrices = (0..r)
            .map(|i| {
                let mut m = RationalMatrix::identity(r);
                for j in 0..r {
                    let v = if i == j { -1 } else { -cartan[j][i] };
                    m.set(i, j, BigRational::from_integer(v.into()));
                }
                m
            })
            .collect();
        let edges = (0..r).flat_map(|i| (i + 1..r).map(move |j| (i, j))).filter(|&(i, j)| cartan[i][j] != 0).collect();

        RootSystem {
            cartan_type,
            simple_roots: simple,
            cartan,
            roots,
            index,
            reflections,
            reflection_matrices,
            edges,
            group: OnceLock::new(),
        }
    }

    pub fn build(family: char, rank: usize) -> Result<Self, WeylError> {
        Ok(RootSystem::new(CartanType::new(family, rank)?))
    }

    pub fn cartan_type(&self) -> CartanType {
        self.cartan_type
    }

    pub fn rank(&self) -> usize {
        self.cartan_type.rank
    }

    /// Simple roots in the ambient Euclidean coordinates.
    pub fn simple_roots(&self) -> &[Vec<BigRational>] {
        &self.simple_roots
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// All roots in simple-root coordinates.
    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    /// Dynkin edges as 0-based vertex pairs `(i, j)` with `i < j`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    fn neighbours(&self, v: usize) -> Vec<usize> {
        self.edges.iter().filter_map(|&(a, b)| if a == v { Some(b) } else if b == v { Some(a) } else { None }).collect()
    }

    /// Simple reflections as permutations of the roots.
    pub fn reflection_permutations(&self) -> &[Permutation] {
        &self.reflections
    }

    /// Simple reflections in the simple-root basis.
    pub fn reflection_matrices(&self) -> &[RationalMatrix] {
        &self.reflection_matrices
    }

    /// `s_i` with both actions, `i` 0-based.
    pub fn simple(&self, i: usize) -> Tracked<RationalMatrix> {
        Tracked { perm: self.reflections[i].clone(), payload: self.reflection_matrices[i].clone() }
    }

    /// The Weyl group on the roots, built once.
    pub fn weyl_group(&self) -> &PermutationGroup {
        self.group.get_or_init(|| PermutationGroup::new(self.reflections.clone()).expect("reflections share a degree"))
    }

    pub fn reflection_rep(&self) -> Result<MatrixRep, WeylError> {
        Ok(MatrixRep::from_parts(self.weyl_group().clone(), self.reflection_matrices.clone())?)
    }

    /// Matrix of a root permutation: column `j` holds the image of the `j`-th
    /// simple root. Fails unless the permutation acts linearly on the roots.
    pub fn matrix_of(&self, w: &Permutation) -> Result<RationalMatrix, WeylError> {
        if w.degree() != self.roots.len() {
            return Err(WeylError::WrongDegree { expected: self.roots.len(), got: w.degree() });
        }
        let r = self.rank();
        let cols: Vec<&Vec<i64>> = (0..r).map(|j| &self.roots[w.image(j)]).collect();
        for (k, beta) in self.roots.iter().enumerate() {
            let img: Vec<i64> = (0..r).map(|i| (0..r).map(|j| cols[j][i] * beta[j]).sum()).collect();
            if self.index.get(&img) != Some(&w.image(k)) {
                return Err(WeylError::NotAWeylElement);
            }
        }
        let columns: Vec<Vec<BigRational>> =
            cols.iter().map(|c| c.iter().map(|&x| BigRational::from_integer(x.into())).collect()).collect();
        Ok(RationalMatrix::from_columns(&columns).expect("r columns of length r"))
    }

    /// The element over `w` with its matrix attached.
    pub fn element(&self, w: &Permutation) -> Result<Tracked<RationalMatrix>, WeylError> {
        Ok(Tracked { perm: w.clone(), payload: self.matrix_of(w)? })
    }

    /// `(s_1, s_1, s_2, s_2, ..., s_r, s_r, s_1, s_1)`.
    pub fn full_tuple(&self) -> GeneratingTuple<Tracked<RationalMatrix>> {
        let mut elements = Vec::with_capacity(2 * self.rank() + 2);
        for i in (0..self.rank()).chain([0]) {
            elements.push(self.simple(i));
            elements.push(self.simple(i));
        }
        GeneratingTuple::new(elements, Convention::LeftToRight)
    }

    /// Two paths covering the diagram that share exactly one vertex.
    ///
    /// A path diagram, walked from its lower-numbered end as `v_1, ..., v_r`,
    /// splits as `(v_1, v_2)` and `(v_2, ..., v_r)`. A diagram with branch
    /// vertex `b` has three arms, ordered by decreasing length and then by
    /// smallest vertex; the first path runs from the tip of arm one through
    /// `b` to the tip of arm two, the second from the tip of arm three to `b`.
    pub fn path_decomposition(&self) -> Result<PathDecomposition, WeylError> {
        let r = self.rank();
        if r < 3 {
            return Err(WeylError::RankTooSmall(r));
        }
        let walk = |start: usize, from: usize| {
            let mut arm = vec![start];
            let (mut prev, mut cur) = (from, start);
            while let Some(n) = self.neighbours(cur).into_iter().find(|&n| n != prev) {
                arm.push(n);
                prev = cur;
                cur = n;
            }
            arm
        };
        let one_based = |v: Vec<usize>| v.into_iter().map(|x| x + 1).collect::<Vec<_>>();
        let (path1, path2) = match (0..r).find(|&v| self.neighbours(v).len() == 3) {
            None => {
                let end = (0..r).find(|&v| self.neighbours(v).len() == 1).expect("a path has an end");
                let mut order = vec![end];
                order.extend(walk(self.neighbours(end)[0], end));
                (order[..2].to_vec(), order[1..].to_vec())
            }
            Some(b) => {
                let mut arms: Vec<Vec<usize>> = self.neighbours(b).into_iter().map(|n| walk(n, b)).collect();
                arms.sort_by_key(|a| (std::cmp::Reverse(a.len()), a.iter().copied().min()));
                let mut p1: Vec<usize> = arms[0].iter().rev().copied().collect();
                p1.push(b);
                p1.extend(&arms[1]);
                let mut p2: Vec<usize> = arms[2].iter().rev().copied().collect();
                p2.push(b);
                (p1, p2)
            }
        };
        Ok(PathDecomposition { path1: one_based(path1), path2: one_based(path2) })
    }

    /// Checks that `d` is a valid decomposition of this diagram; returns the
    /// violated conditions.
    pub fn decomposition_defects(&self, d: &PathDecomposition) -> Vec<String> {
        let r = self.rank();
        let mut defects = Vec::new();
        if d.path1.len() + d.path2.len() != r + 1 {
            defects.push(format!("p + q = {} instead of {}", d.path1.len() + d.path2.len(), r + 1));
        }
        let common: Vec<_> = d.path1.iter().filter(|v| d.path2.contains(v)).collect();
        if common.len() != 1 {
            defects.push(format!("paths share {} vertices", common.len()));
        }
        let mut all: Vec<usize> = d.path1.iter().chain(&d.path2).copied().collect();
        all.sort_unstable();
        all.dedup();
        if all != (1..=r).collect::<Vec<_>>() {
            defects.push("paths do not cover the diagram exactly".into());
        }
        for p in [&d.path1, &d.path2] {
            if p.len() < 2 {
                defects.push(format!("path {p:?} has fewer than two vertices"));
            }
            for w in p.windows(2) {
                let (a, b) = (w[0].min(w[1]) - 1, w[0].max(w[1]) - 1);
                if !self.edges.contains(&(a, b)) {
                    defects.push(format!("{} and {} are not adjacent", w[0], w[1]));
                }
            }
        }
        defects
    }

    /// `(s_{i1} s_{i2}, ..., s_{ip} s_{i1}, s_{j1} s_{j2}, ..., s_{jq} s_{j1})`
    /// from the canonical path decomposition, read left to right.
    pub fn rotation_tuple(&self) -> Result<GeneratingTuple<Tracked<RationalMatrix>>, WeylError> {
        let d = self.path_decomposition()?;
        let mut elements = Vec::with_capacity(self.rank() + 1);
        for path in [&d.path1, &d.path2] {
            for k in 0..path.len() {
                let a = path[k] - 1;
                let b = path[(k + 1) % path.len()] - 1;
                elements.push(self.simple(a).then(&self.simple(b)));
            }
        }
        Ok(GeneratingTuple::new(elements, Convention::LeftToRight))
    }

    /// Certifies that a tuple generates the rotation subgroup `W ∩ SO(V)`:
    /// every entry has determinant 1 and the generated group has index 2.
    pub fn verify_rotation_subgroup(&self, t: &GeneratingTuple<Tracked<RationalMatrix>>) -> RotationReport {
        let determinants: Vec<BigRational> =
            t.elements.iter().map(|e| e.payload.determinant().expect("square")).collect();
        let mut witnesses = Vec::new();
        for (i, d) in determinants.iter().enumerate() {
            if !d.is_one() {
                witnesses.push(format!("entry {} has determinant {d}", i + 1));
            }
        }
        let determinants_one = witnesses.is_empty();
        let weyl_order = self.weyl_group().order();
        let subgroup_order = if t.elements.is_empty() {
            BigUint::one()
        } else {
            PermutationGroup::new(t.elements.iter().map(|e| e.perm.clone()).collect()).expect("equal degrees").order()
        };
        let index_two = &subgroup_order * 2u32 == weyl_order;
        if !index_two {
            witnesses.push(format!("generated order {subgroup_order}, expected {}", &weyl_order / 2u32));
        }
        RotationReport {
            determinants_one,
            determinants: determinants.iter().map(ToString::to_string).collect(),
            weyl_order,
            subgroup_order,
            index_two,
            witnesses,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RotationReport {
    pub determinants: Vec<String>,
    pub determinants_one: bool,
    #[serde(serialize_with = "crate::ser_display")]
    pub weyl_order: BigUint,
    #[serde(serialize_with = "crate::ser_display")]
    pub subgroup_order: BigUint,
    pub index_two: bool,
    pub witnesses: Vec<String>,
}

impl RotationReport {
    pub fn passes(&self) -> bool {
        self.determinants_one && self.index_two
    }
}

/// Every type of rank at most `max_rank`, in the order A, B, C, D, E, F, G.
pub fn all_types(max_rank: usize) -> Vec<CartanType> {
    let mut out = Vec::new();
    for family in ['A', 'B', 'C', 'D', 'E', 'F', 'G'] {
        for rank in 1..=max_rank {
            if let Ok(t) = CartanType::new(family, rank) {
                out.push(t);
            }
        }
    }
    out
}
