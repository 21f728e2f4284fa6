use mwgenus::exactlin::RationalMatrix;
use mwgenus::permgroup::Permutation;
use mwgenus::repgenus::Representation;
use mwgenus::weyl::{all_types, check_full_tuple, check_rotation_tuple, CartanType, RootSystem};
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn factorial(n: u64) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

/// Orders from the classical formulas, written out independently.
fn classical(t: &CartanType) -> BigUint {
    let r = t.rank as u64;
    match t.family {
        'A' => factorial(r + 1),
        'B' | 'C' => factorial(r) << r,
        'D' => factorial(r) << (r - 1),
        'E' => BigUint::from(match r {
            6 => 51_840u64,
            7 => 2_903_040,
            8 => 696_729_600,
            _ => unreachable!(),
        }),
        'F' => BigUint::from(1152u32),
        'G' => BigUint::from(12u32),
        _ => unreachable!(),
    }
}

fn suite() -> Vec<CartanType> {
    let mut out: Vec<_> = all_types(8)
        .into_iter()
        .filter(|t| match t.family {
            'A' | 'B' => t.rank >= 2,
            'C' => t.rank >= 3,
            _ => true,
        })
        .collect();
    out.sort_by_key(|t| (t.family, t.rank));
    out
}

#[test]
fn suite_covers_every_listed_type() {
    let names: Vec<String> = suite().iter().map(ToString::to_string).collect();
    for expected in ["A2", "A8", "B2", "B8", "C3", "C8", "D4", "D8", "E6", "E7", "E8", "F4", "G2"] {
        assert!(names.contains(&expected.to_string()), "{expected}");
    }
    assert!(!names.contains(&"C2".to_string()));
    assert!(CartanType::new('D', 3).is_err());
    assert!(CartanType::new('E', 9).is_err());
    assert_eq!("E8".parse::<CartanType>().unwrap(), CartanType::new('E', 8).unwrap());
}

#[test]
fn full_tuples_have_genus_one() {
    for t in suite() {
        let rs = RootSystem::new(t);
        assert_eq!(rs.roots().len(), t.root_count());
        let c = check_full_tuple(&rs).unwrap();
        assert_eq!(c.weyl_order, classical(&t), "{t}");
        assert_eq!(c.classical_order, classical(&t), "{t}");
        assert_eq!(c.report.invariant_dim, 0, "{t}");
        assert_eq!(c.report.fixed_dims, vec![t.rank - 1; 2 * t.rank + 2], "{t}");
        assert!(c.pass && c.report.has_genus(1), "{t}: {:?}", c.report.witnesses);
        assert_eq!(c.report.scott.slack, 2);
    }
}

#[test]
fn rotation_tuples_have_genus_one() {
    for t in suite().into_iter().filter(|t| t.rank >= 3) {
        let rs = RootSystem::new(t);
        let c = check_rotation_tuple(&rs).unwrap();
        assert!(c.decomposition_defects.is_empty(), "{t}: {:?}", c.decomposition_defects);
        assert!(c.subgroup.determinants.iter().all(|d| d == "1"), "{t}");
        assert_eq!(c.subgroup.subgroup_order * 2u32, classical(&t), "{t}");
        assert!(c.codimension_two, "{t}");
        assert!(c.pass && c.report.has_genus(1), "{t}: {:?}", c.report.witnesses);
        let n = c.decomposition.path1.len() + c.decomposition.path2.len();
        assert_eq!(n, c.report.n);
    }
}

#[test]
fn named_orders() {
    for (t, order) in [("A3", 24u64), ("B3", 48), ("E6", 51_840), ("F4", 1152), ("G2", 12)] {
        let rs = RootSystem::new(t.parse().unwrap());
        assert_eq!(rs.weyl_group().order(), BigUint::from(order), "{t}");
    }
    // The rotation subgroups.
    for (t, order) in [("A3", 12u64), ("B3", 24), ("E6", 25_920)] {
        let rs = RootSystem::new(t.parse().unwrap());
        let c = check_rotation_tuple(&rs).unwrap();
        assert_eq!(c.subgroup.subgroup_order, BigUint::from(order), "{t}");
    }
}

fn matrix_order(m: &RationalMatrix) -> u64 {
    let mut p = m.clone();
    let mut k = 1;
    while !p.is_identity() {
        p = p.mul(m).unwrap();
        k += 1;
        assert!(k <= 1000);
    }
    k
}

/// `(1/ord) sum_k tr(M^k)`.
fn trace_average(m: &RationalMatrix, ord: u64) -> usize {
    let mut sum = BigRational::zero();
    let mut p = RationalMatrix::identity(m.rows());
    for _ in 0..ord {
        sum += p.trace().unwrap();
        p = p.mul(m).unwrap();
    }
    let avg = sum / BigRational::from_integer(ord.into());
    assert!(avg.is_integer());
    avg.to_integer().to_usize().unwrap()
}

#[test]
fn kernel_agrees_with_trace_average_on_random_elements() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let types = ["A4", "B4", "C5", "D5", "E6", "E7", "E8", "F4", "G2", "A7"];
    let mut checked = 0;
    for (i, name) in types.iter().cycle().take(500).enumerate() {
        let rs = RootSystem::new(name.parse().unwrap());
        let rep = rs.reflection_rep().unwrap();
        let w: Permutation = rs.weyl_group().random_element(&mut rng);
        let m = rs.matrix_of(&w).unwrap();
        let ord = w.order_u64().unwrap();
        assert_eq!(matrix_order(&m), ord, "{name} #{i}");
        let e = rs.element(&w).unwrap();
        assert_eq!(rep.fixed_dim(&e).unwrap(), trace_average(&m, ord), "{name} #{i}");
        checked += 1;
    }
    assert_eq!(checked, 500);
}

#[test]
fn matrices_act_on_roots() {
    let rs = RootSystem::new("D4".parse().unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..50 {
        let w = rs.weyl_group().random_element(&mut rng);
        let m = rs.matrix_of(&w).unwrap();
        for (j, root) in rs.roots().iter().enumerate() {
            let col: Vec<BigRational> = root.iter().map(|&x| BigRational::from_integer(x.into())).collect();
            let v = RationalMatrix::from_columns(&[col]).unwrap();
            let image = m.mul(&v).unwrap();
            let expected: Vec<i64> = rs.roots()[w.image(j)].clone();
            let got: Vec<i64> = (0..rs.rank()).map(|i| image.get(i, 0).to_integer().to_i64().unwrap()).collect();
            assert_eq!(got, expected);
        }
    }
}
