//! Brute-force helpers shared by the integration tests.
#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};
use std::path::PathBuf;

use mwgenus::permgroup::{parse_group_file, GroupFile, Permutation};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn data(rel: &str) -> PathBuf {
    mwgenus::data::data_dir().join(rel)
}

pub fn read(rel: &str) -> String {
    std::fs::read_to_string(data(rel)).unwrap_or_else(|e| panic!("{rel}: {e}"))
}

pub fn group_file(name: &str) -> GroupFile {
    parse_group_file(&read(&format!("groups/{name}.grp"))).unwrap()
}

/// Every element of the group generated by `gens`, by breadth-first closure.
pub fn enumerate(gens: &[Permutation], degree: usize) -> Vec<Permutation> {
    let id = Permutation::identity(degree);
    let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    let mut out = Vec::new();
    while let Some(g) = queue.pop_front() {
        for s in gens {
            let h = g.then(s);
            if seen.insert(h.clone()) {
                queue.push_back(h);
            }
        }
        out.push(g);
    }
    out
}

pub fn random_perm<R: Rng>(rng: &mut R, degree: usize) -> Permutation {
    let mut images: Vec<usize> = (0..degree).collect();
    images.shuffle(rng);
    Permutation::from_images(images).unwrap()
}

/// Number of points fixed by `g`, counted directly.
pub fn fixed_points(g: &Permutation) -> usize {
    (0..g.degree()).filter(|&i| g.image(i) == i).count()
}

/// Orbits of `<g>` on points, counted by Burnside's lemma over the powers of `g`.
pub fn burnside_orbits(g: &Permutation) -> usize {
    let mut total = 0;
    let mut k = 0usize;
    let mut p = Permutation::identity(g.degree());
    loop {
        total += fixed_points(&p);
        k += 1;
        p = p.then(g);
        if p.is_identity() {
            break;
        }
    }
    assert_eq!(total % k, 0);
    total / k
}

/// Conjugacy class of `x` in the enumerated group `elements`.
pub fn conjugacy_class(x: &Permutation, elements: &[Permutation]) -> HashSet<Permutation> {
    elements.iter().map(|g| g.inverse().then(x).then(g)).collect()
}

/// Union of the classes of the generators of `<x>`.
pub fn rational_class(x: &Permutation, elements: &[Permutation]) -> HashSet<Permutation> {
    let ord = x.order_u64().unwrap();
    let mut out = HashSet::new();
    for k in 1..=ord {
        if num_gcd(k, ord) == 1 {
            out.extend(conjugacy_class(&x.pow(k), elements));
        }
    }
    out
}

pub fn num_gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
