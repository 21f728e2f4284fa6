mod common;

use std::collections::HashSet;

use mwgenus::data::load_bundle;
use mwgenus::exactlin::RationalMatrix;
use mwgenus::permgroup::{Convention, Permutation, PermutationGroup};
use mwgenus::repgenus::{genus_of_tuple, scott_check, search_tuples, MatrixRep, PermutationRep, Representation, SearchParams};
use mwgenus::weyl::RootSystem;
use mwgenus::Execution;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{burnside_orbits, enumerate, group_file, random_perm};

fn rep(name: &str) -> PermutationRep {
    PermutationRep::new(PermutationGroup::new(group_file(name).generators).unwrap()).unwrap()
}

fn close(mut elements: Vec<Permutation>) -> Vec<Permutation> {
    let p = elements.iter().skip(1).fold(elements[0].clone(), |acc, g| acc.then(g));
    elements.push(p.inverse());
    elements
}

fn perm_matrix(p: &Permutation) -> RationalMatrix {
    let n = p.degree();
    let mut e = vec![0i64; n * n];
    for j in 0..n {
        e[p.image(j) * n + j] = 1;
    }
    RationalMatrix::from_integers(n, n, &e).unwrap()
}

#[test]
fn a2_doubled_reflections() {
    let rs = RootSystem::build('A', 2).unwrap();
    let rep = rs.reflection_rep().unwrap();
    let (s1, s2) = (rs.simple(0), rs.simple(1));
    let t = vec![s1.clone(), s1.clone(), s2.clone(), s2, s1.clone(), s1];
    let r = genus_of_tuple(&rep, &t).unwrap();
    assert_eq!(r.fixed_dims, vec![1; 6]);
    assert_eq!(r.lhs, 2);
    assert!(r.has_genus(1));
    assert!(r.witnesses.is_empty());
}

#[test]
fn fixed_dims_of_display_entries() {
    let b = load_bundle("mathieu").unwrap();
    let dims = |name: &str| {
        let d = b.display(name).unwrap();
        let [g1, g2, _] = d.parsed().unwrap();
        let rep = PermutationRep::new(PermutationGroup::new(vec![g1, g2]).unwrap()).unwrap();
        let t = d.tuple().unwrap();
        let ids = rep.fixed_dim(&Permutation::identity(rep.group().degree())).unwrap();
        assert_eq!(ids, rep.dim());
        genus_of_tuple(&rep, &t).unwrap()
    };
    assert_eq!(dims("M11").fixed_dims[0], 0);
    let m12 = dims("M12");
    assert_eq!((m12.dim, m12.fixed_dims.clone(), m12.lhs, m12.genus), (11, vec![1, 3, 5], 2, Some(1)));
    assert_eq!(dims("M24").fixed_dims[2], 11);
}

/// Over at least 1000 random generating product-one tuples in groups of
/// degree at most 7, lhs is even, Scott slack is non-negative, and both
/// agree with a Riemann-Hurwitz count made from scratch.
#[test]
fn parity_and_scott_on_random_generating_tuples() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let names = ["S4", "A4", "D4", "A5", "S5", "S6", "A7", "S7"];
    let reps: Vec<_> = names.iter().map(|n| rep(n)).collect();
    let mut tested = 0;
    let mut attempts = 0;
    while tested < 1200 {
        attempts += 1;
        assert!(attempts < 100_000);
        let r = &reps[attempts % reps.len()];
        let k = rng.gen_range(2..=4);
        let t = close((0..k).map(|_| r.group().random_element(&mut rng)).collect());
        if !r.generation(&t).is_pass() {
            continue;
        }
        tested += 1;
        let report = genus_of_tuple(r, &t).unwrap();
        let n = r.group().degree() as i64;
        let manual = -2 * (n - 1) + t.iter().map(|g| n - burnside_orbits(g) as i64).sum::<i64>();
        assert_eq!(report.lhs, manual);
        assert!(report.parity_ok, "odd lhs for {t:?}");
        assert!(report.scott.ok && report.scott.precondition_met);
        assert!(report.passes());
        assert_eq!(scott_check(r, &t).unwrap().slack, report.lhs);
    }
}

#[test]
fn parity_and_scott_on_weyl_tuples() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for (family, rank) in [('A', 3), ('B', 3), ('D', 4), ('G', 2)] {
        let rs = RootSystem::build(family, rank).unwrap();
        let rep = rs.reflection_rep().unwrap();
        let mut tested = 0;
        while tested < 60 {
            let k = rng.gen_range(2..=4);
            let perms = close((0..k).map(|_| rs.weyl_group().random_element(&mut rng)).collect());
            let t: Vec<_> = perms.iter().map(|p| rs.element(p).unwrap()).collect();
            if !rep.generation(&t).is_pass() {
                continue;
            }
            tested += 1;
            let r = genus_of_tuple(&rep, &t).unwrap();
            assert!(r.parity_ok && r.scott.ok && r.product.check.is_pass(), "{family}{rank}: {:?}", r.witnesses);
        }
    }
}

#[test]
fn regular_s3_generating_triples() {
    let r = rep("S3-regular");
    let elements = enumerate(r.group().generators(), 6);
    assert_eq!(elements.len(), 6);
    let mut generating = 0;
    for x in &elements {
        for y in &elements {
            let t = close(vec![x.clone(), y.clone()]);
            if !r.generation(&t).is_pass() {
                continue;
            }
            generating += 1;
            let s = scott_check(&r, &t).unwrap();
            assert!(s.ok && s.precondition_met);
            // Every generating triple has two fixed-point-free involutions and a
            // product of two 3-cycles: 5 - 2, 5 - 2 and 5 - 1 against 2 * 5.
            assert_eq!(s.slack, 0);
        }
    }
    assert_eq!(generating, 18);
}

fn s6_tuple() -> impl Strategy<Value = (Vec<Vec<usize>>, Vec<usize>)> {
    let perm = || Just((0..6).collect::<Vec<usize>>()).prop_shuffle();
    (prop::collection::vec(perm(), 2..=3), perm())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn invariant_under_conjugation_and_convention((elements, c) in s6_tuple()) {
        let r = rep("S6");
        let t = close(elements.into_iter().map(|e| Permutation::from_images(e).unwrap()).collect());
        let c = Permutation::from_images(c).unwrap();
        let base = genus_of_tuple(&r, &t).unwrap();
        let conj: Vec<_> = t.iter().map(|g| c.inverse().then(g).then(&c)).collect();
        let rc = genus_of_tuple(&r, &conj).unwrap();
        prop_assert_eq!(&rc.fixed_dims, &base.fixed_dims);
        prop_assert_eq!(rc.generation.is_pass(), base.generation.is_pass());
        prop_assert_eq!(rc.product.detected, Some(Convention::LeftToRight));

        let reversed: Vec<_> = t.iter().rev().cloned().collect();
        let rr = genus_of_tuple(&r, &reversed).unwrap();
        prop_assert!(rr.product.conventions.unwrap().right_to_left);
        prop_assert_eq!(rr.lhs, base.lhs);
        prop_assert_eq!(rr.generation.is_pass(), base.generation.is_pass());
    }
}

/// The permutation matrices of S4 give the same lhs by kernels as the deleted
/// module does by cycle counts, the extra trivial summand cancelling.
#[test]
fn kernel_method_matches_cycle_counts() {
    let f = group_file("S4");
    let mats = f.generators.iter().map(perm_matrix).collect();
    let mrep = MatrixRep::from_assignments(f.generators.clone(), mats).unwrap();
    assert_eq!((mrep.dim(), mrep.invariant_dim()), (4, 1));
    let prep = rep("S4");
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..200 {
        let t = close((0..3).map(|_| random_perm(&mut rng, 4)).collect());
        let lifted: Vec<_> = t.iter().map(|g| mrep.lift(g).unwrap()).collect();
        for (g, m) in t.iter().zip(&lifted) {
            assert_eq!(m.payload, perm_matrix(g));
            assert_eq!(mrep.fixed_dim(m).unwrap(), g.cycle_count());
        }
        let a = genus_of_tuple(&mrep, &lifted).unwrap();
        let b = genus_of_tuple(&prep, &t).unwrap();
        assert_eq!(a.lhs, b.lhs);
        assert_eq!(a.generation.is_pass(), b.generation.is_pass());
    }
}

fn fingerprints_by_brute_force(name: &str, target: i64) -> HashSet<Vec<Vec<usize>>> {
    let r = rep(name);
    let n = r.group().degree();
    let elements = enumerate(r.group().generators(), n);
    let mut out = HashSet::new();
    for x in &elements {
        for y in &elements {
            let t = close(vec![x.clone(), y.clone()]);
            let report = genus_of_tuple(&r, &t).unwrap();
            if report.generation.is_pass() && report.genus == Some(target) {
                let mut f: Vec<_> = t.iter().map(Permutation::cycle_type).collect();
                f.sort();
                out.insert(f);
            }
        }
    }
    out
}

#[test]
fn s4_genus_zero_search_against_brute_force() {
    let r = rep("S4");
    let brute = fingerprints_by_brute_force("S4", 0);
    let wanted = vec![vec![2, 1, 1], vec![3, 1], vec![4]];
    assert!(brute.contains(&wanted));
    let params = SearchParams { n: 3, target_genus: 0, constraints: vec![], seed: 9, budget: 500 };
    let found = search_tuples(r.group(), &r, &params, Execution::Parallel);
    assert!(!found.is_empty());
    let mut prints = HashSet::new();
    for t in &found {
        assert!(t.is_product_one());
        let report = genus_of_tuple(&r, &t.elements).unwrap();
        assert!(report.has_genus(0));
        let mut f: Vec<_> = t.elements.iter().map(Permutation::cycle_type).collect();
        f.sort();
        assert!(brute.contains(&f));
        assert!(prints.insert(f), "duplicate fingerprint");
    }
    assert!(prints.contains(&wanted));
    assert_eq!(search_tuples(r.group(), &r, &params, Execution::Sequential), found);
}

#[test]
fn search_edge_cases() {
    let r = rep("S4");
    let p = |target, budget, n| SearchParams { n, target_genus: target, constraints: vec![], seed: 0, budget };
    assert!(search_tuples(r.group(), &r, &p(-1, 2000, 3), Execution::Parallel).is_empty());
    assert!(search_tuples(r.group(), &r, &p(0, 0, 3), Execution::Parallel).is_empty());
    assert!(search_tuples(r.group(), &r, &p(0, 100, 1), Execution::Parallel).is_empty());
}

#[test]
fn constrained_m11_search() {
    let d = load_bundle("mathieu").unwrap().display("M11").unwrap().clone();
    let [g1, g2, g3] = d.parsed().unwrap();
    let r = PermutationRep::new(PermutationGroup::new(vec![g1.clone(), g2.clone()]).unwrap()).unwrap();
    let free = SearchParams { n: 3, target_genus: 1, constraints: vec![], seed: 4, budget: 3000 };
    let found = search_tuples(r.group(), &r, &free, Execution::Parallel);
    assert!(!found.is_empty());
    let constrained = SearchParams { constraints: vec![Some(g1.clone()), Some(g2.clone()), None], ..free };
    for t in search_tuples(r.group(), &r, &constrained, Execution::Parallel) {
        assert_eq!(t.elements[0].cycle_type(), g1.cycle_type());
        assert_eq!(t.elements[1].cycle_type(), g2.cycle_type());
        assert!(genus_of_tuple(&r, &t.elements).unwrap().has_genus(1));
    }
    assert_eq!(g3.order_u64(), Some(2));
}
