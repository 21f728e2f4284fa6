//! End-to-end acceptance run: one line per criterion, non-zero exit if any fails.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::collections::HashSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use mwgenus::chartab::{class_genus, class_product_count, class_triple_count, parse_table, ClassTuple};
use mwgenus::cremona::{parse_allcurves, parse_allcurves_str, ConductorStatus, CurveDatabase};
use mwgenus::data::{load_bundle, verify_display};
use mwgenus::exactlin::RationalMatrix;
use mwgenus::modular::{genus_zero_levels, sl2_order, steinberg_survey, x0_genus, x0_genus_table};
use mwgenus::permgroup::{parse_cycles, Permutation, PermutationGroup};
use mwgenus::repgenus::{genus_of_tuple, Check, PermutationRep, Representation};
use mwgenus::weyl::{check_full_tuple, check_rotation_tuple, CartanType, RootSystem};
use mwgenus::Execution;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn cli(args: &[&str]) -> (u8, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = mwgenus_cli::run(std::iter::once("mwgenus").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8_lossy(&out).into_owned())
}

fn data(rel: &str) -> String {
    common::data(rel).display().to_string()
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let t = start.elapsed();
    if t > limit {
        return Err(format!("{what} took {t:.2?}, limit {limit:?}"));
    }
    Ok(())
}

fn mathieu_verification() -> Verdict {
    let bundle = load_bundle("mathieu").map_err(|e| e.to_string())?;
    let mut notes = Vec::new();
    for (name, order) in [("M11", 7_920u64), ("M12", 95_040), ("M22", 443_520), ("M24", 244_823_040)] {
        let rec = bundle.display(name).ok_or(format!("{name} missing"))?;
        let start = Instant::now();
        let v = verify_display(rec, None).map_err(|e| e.to_string())?;
        within(start, Duration::from_secs(1), name)?;
        let r = &v.report;
        ensure!(r.product.check == Check::Pass, "{name}: product {:?}", r.product.check);
        ensure!(r.generation == Check::Pass, "{name}: generation {:?}", r.generation);
        ensure!(v.ambient_order == BigUint::from(order), "{name}: order {}", v.ambient_order);
        let cycles: Vec<usize> = rec.tuple().unwrap().iter().map(|g| g.cycle_count() - 1).collect();
        ensure!(r.fixed_dims == cycles, "{name}: dims {:?} vs cycle counts {cycles:?}", r.fixed_dims);
        ensure!(r.has_genus(1) && v.passes, "{name}: genus {:?}, witnesses {:?}", r.genus, r.witnesses);
        if name == "M12" {
            ensure!(r.fixed_dims == [1, 3, 5] && r.lhs == 2, "M12: dims {:?}, lhs {}", r.fixed_dims, r.lhs);
        }
        notes.push(format!("{name} {:?}", r.fixed_dims));
    }
    Ok(notes.join(", "))
}

fn m23_defect() -> Verdict {
    let (code, out) = cli(&["--format", "json", "verify-mathieu"]);
    ensure!(code == 1, "exit code {code}, expected 1");
    let v: Value = serde_json::from_str(&out).map_err(|e| e.to_string())?;
    let m23 = v["result"]["displays"]
        .as_array()
        .and_then(|a| a.iter().find(|d| d["display"] == "M23"))
        .ok_or("no M23 record in the report")?;
    let r = &m23["report"];
    ensure!(m23["passes"] == false, "M23 reported passing");
    ensure!(r["parity_ok"] == false && r["lhs"] == 1, "lhs {} parity {}", r["lhs"], r["parity_ok"]);
    let witnesses: Vec<&str> = r["witnesses"].as_array().ok_or("no witnesses")?.iter().filter_map(Value::as_str).collect();
    ensure!(witnesses.iter().any(|w| w.contains("order 22")), "no order-22 witness in {witnesses:?}");
    ensure!(witnesses.iter().any(|w| w.starts_with("parity")), "no parity witness");
    let diagnosis = m23["diagnosis"].as_array().ok_or("no diagnosis")?;
    ensure!(!diagnosis.is_empty() && diagnosis.iter().all(|d| d["index"] == 0), "diagnosis {diagnosis:?}");
    let implied: Vec<String> = diagnosis.iter().map(|d| format!("{} {}", d["convention"], d["implied"])).collect();
    Ok(format!("exit 1, lhs 1; implied g1: {}", implied.join(", ")))
}

fn classical_order(t: &CartanType) -> BigUint {
    let r = t.rank as u64;
    let fact = |n: u64| (1..=n).map(BigUint::from).product::<BigUint>();
    match (t.family, r) {
        ('A', _) => fact(r + 1),
        ('B' | 'C', _) => fact(r) << r,
        ('D', _) => fact(r) << (r - 1),
        ('E', 6) => BigUint::from(51_840u32),
        ('E', 7) => BigUint::from(2_903_040u32),
        ('E', 8) => BigUint::from(696_729_600u32),
        ('F', 4) => BigUint::from(1152u32),
        ('G', 2) => BigUint::from(12u32),
        _ => unreachable!(),
    }
}

fn weyl_suite() -> Verdict {
    let start = Instant::now();
    let mut types = Vec::new();
    for (family, ranks) in [('A', 2..=8), ('B', 2..=8), ('C', 3..=8), ('D', 4..=8), ('E', 6..=8)] {
        types.extend(ranks.map(|r| CartanType::new(family, r).unwrap()));
    }
    types.push(CartanType::new('F', 4).unwrap());
    types.push(CartanType::new('G', 2).unwrap());
    for &t in &types {
        let rs = RootSystem::new(t);
        let full = check_full_tuple(&rs).map_err(|e| format!("{t}: {e}"))?;
        ensure!(full.weyl_order == classical_order(&t), "{t}: |W| = {} by stabilizer chain", full.weyl_order);
        ensure!(full.pass && full.report.has_genus(1), "{t}: full tuple {:?}", full.report.witnesses);
        if t.rank >= 3 {
            let rot = check_rotation_tuple(&rs).map_err(|e| format!("{t}: {e}"))?;
            ensure!(rot.subgroup.determinants.iter().all(|d| d == "1"), "{t}: determinants {:?}", rot.subgroup.determinants);
            ensure!(rot.subgroup.subgroup_order.clone() * 2u32 == full.weyl_order, "{t}: rotation subgroup {}", rot.subgroup.subgroup_order);
            ensure!(rot.pass && rot.report.has_genus(1), "{t}: rotation tuple {:?}", rot.report.witnesses);
        }
    }
    within(start, Duration::from_secs(30), "Weyl suite")?;
    Ok(format!("{} types in {:.2?}", types.len(), start.elapsed()))
}

fn trace_average(m: &RationalMatrix, ord: u64) -> Option<usize> {
    let mut sum = BigRational::zero();
    let mut p = RationalMatrix::identity(m.rows());
    for _ in 0..ord {
        sum += p.trace().ok()?;
        p = p.mul(m).ok()?;
    }
    let avg = sum / BigRational::from_integer(ord.into());
    avg.is_integer().then(|| avg.to_integer().to_usize()).flatten()
}

fn fixed_dim_cross_validation() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let systems: Vec<RootSystem> = ["A5", "B4", "C4", "D5", "E6", "E7", "E8", "F4", "G2"].iter().map(|t| RootSystem::new(t.parse().unwrap())).collect();
    for i in 0..500 {
        let rs = &systems[i % systems.len()];
        let rep = rs.reflection_rep().map_err(|e| e.to_string())?;
        let w = rs.weyl_group().random_element(&mut rng);
        let ord = w.order_u64().ok_or("order overflow")?;
        let m = rs.matrix_of(&w).map_err(|e| e.to_string())?;
        let kernel = rep.fixed_dim(&rs.element(&w).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let averaged = trace_average(&m, ord);
        ensure!(Some(kernel) == averaged, "{}: kernel {kernel}, trace average {averaged:?}", rs.cartan_type());
    }
    for _ in 0..1000 {
        let n = rng.gen_range(1..=12);
        let g = common::random_perm(&mut rng, n);
        ensure!(g.cycle_count() == common::burnside_orbits(&g), "cycle count of {g:?}");
    }
    Ok("500 Weyl elements, 1000 permutations".into())
}

fn close(mut elements: Vec<Permutation>) -> Vec<Permutation> {
    let p = elements.iter().skip(1).fold(elements[0].clone(), |acc, g| acc.then(g));
    elements.push(p.inverse());
    elements
}

fn parity_and_scott() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let reps: Vec<PermutationRep> = ["S4", "A4", "D4", "A5", "S5", "S6", "A7", "S7"]
        .iter()
        .map(|n| PermutationRep::new(PermutationGroup::new(common::group_file(n).generators).unwrap()).unwrap())
        .collect();
    let (mut tested, mut attempts) = (0, 0);
    while tested < 1000 {
        attempts += 1;
        ensure!(attempts < 100_000, "only {tested} generating tuples in {attempts} attempts");
        let rep = &reps[attempts % reps.len()];
        let k = rng.gen_range(2..=4);
        let t = close((0..k).map(|_| rep.group().random_element(&mut rng)).collect());
        let r = genus_of_tuple(rep, &t).map_err(|e| e.to_string())?;
        if !r.generation.is_pass() {
            continue;
        }
        tested += 1;
        ensure!(r.parity_ok, "odd lhs {} for {t:?}", r.lhs);
        ensure!(r.scott.ok && r.scott.slack >= 0, "Scott slack {} for {t:?}", r.scott.slack);
    }
    Ok(format!("{tested} generating tuples over {} groups", reps.len()))
}

fn sporadic_rows() -> Verdict {
    let atlas = load_bundle("char-atlas").map_err(|e| e.to_string())?;
    let rows: [(&str, &str, i64, [&str; 3]); 7] = [
        ("HS", "chi2", 22, ["2B", "5B", "7A"]),
        ("McL", "chi2", 22, ["2A", "5A", "8A"]),
        ("Co3", "chi2", 23, ["2B", "3C", "11A"]),
        ("Co2", "chi2", 23, ["2B", "5A", "11A"]),
        ("Tits", "chi6", 78, ["2A", "3A", "13A"]),
        ("J2", "chi12", 160, ["2B", "3B", "7A"]),
        ("2.Co1", "chi102", 24, ["2A~", "7B~", "-13A"]),
    ];
    for (group, chi, degree, classes) in rows {
        let t = Arc::new(atlas.table(group).ok_or(format!("no table {group}"))?.clone());
        let c = t.character(chi).map_err(|e| e.to_string())?;
        ensure!(c.degree == degree, "{group} {chi} has degree {}", c.degree);
        let i = t.character_index(chi).unwrap();
        for k in 0..t.classes.len() {
            let avg = t.burnside_average(i, k).map_err(|e| e.to_string())?;
            ensure!(avg.is_integer(), "{group} {chi} averages to {avg} on {}", t.classes[k].name);
        }
        let r = class_genus(&ClassTuple::new(t, chi, &classes)).map_err(|e| format!("{group}: {e}"))?;
        ensure!(r.has_genus(1), "{group}: genus {:?}, {:?}", r.genus, r.witnesses);
    }
    Ok("7 rows".into())
}

const REPRESENTATIVES: [(&str, &[(&str, &str)]); 6] = [
    ("S3", &[("1A", "()"), ("2A", "(12)"), ("3A", "(123)")]),
    ("S4", &[("1A", "()"), ("2A", "(12)"), ("2B", "(12)(34)"), ("3A", "(123)"), ("4A", "(1234)")]),
    ("A4", &[("1A", "()"), ("2A", "(12)(34)"), ("3AB", "(123)")]),
    ("A5", &[("1A", "()"), ("2A", "(12)(34)"), ("3A", "(123)"), ("5AB", "(12345)")]),
    (
        "S5",
        &[("1A", "()"), ("2A", "(12)"), ("2B", "(12)(34)"), ("3A", "(123)"), ("4A", "(1234)"), ("5A", "(12345)"), ("6A", "(123)(45)")],
    ),
    ("D4", &[("1A", "()"), ("2A", "(13)(24)"), ("2B", "(24)"), ("2C", "(12)(34)"), ("4A", "(1234)")]),
];

fn triple_count_oracle() -> Verdict {
    let start = Instant::now();
    let mut triples = 0;
    for (name, reps) in REPRESENTATIVES {
        let table = parse_table(&common::read(&format!("chartab/small/{name}.tbl"))).map_err(|e| e.to_string())?;
        let f = common::group_file(name);
        let elements = common::enumerate(&f.generators, f.domain.len());
        let mut classes: Vec<HashSet<Permutation>> = vec![HashSet::new(); table.classes.len()];
        for (class, text) in reps {
            let g = parse_cycles(text, &f.domain).map_err(|e| e.to_string())?;
            classes[table.class_index(class).map_err(|e| e.to_string())?] = common::rational_class(&g, &elements);
        }
        for (c, k) in table.classes.iter().zip(&classes) {
            ensure!(BigUint::from(k.len()) == c.size, "{name} {}: {} elements, table says {}", c.name, k.len(), c.size);
        }
        let class_of = |g: &Permutation| classes.iter().position(|k| k.contains(g)).unwrap();
        let n = classes.len();
        for i in 0..n {
            for j in 0..n {
                let mut counts = vec![0usize; n];
                for x in &classes[i] {
                    for y in &classes[j] {
                        counts[class_of(&x.then(y).inverse())] += 1;
                    }
                }
                for (k, &brute) in counts.iter().enumerate() {
                    let total = class_product_count(&table, &[i, j, k]).map_err(|e| e.to_string())?;
                    let names = [i, j, k].map(|c| table.classes[c].name.as_str());
                    let per_z = class_triple_count(&table, names[0], names[1], names[2]).map_err(|e| e.to_string())?;
                    ensure!(total == BigUint::from(brute), "{name} {names:?}: formula {total}, enumeration {brute}");
                    ensure!(per_z * &table.classes[k].size == total, "{name} {names:?}: per-element count");
                    triples += 1;
                }
            }
        }
    }
    within(start, Duration::from_secs(10), "triple counts")?;
    Ok(format!("{triples} class triples over 6 groups"))
}

fn count_sl2(m: u64) -> u128 {
    let mut count = 0;
    for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                for d in 0..m {
                    if (a * d + m * m - b * c) % m == 1 % m {
                        count += 1;
                    }
                }
            }
        }
    }
    count
}

fn modular() -> Verdict {
    let levels = genus_zero_levels(100);
    ensure!(levels == [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 13, 16, 18, 25], "genus-zero levels {levels:?}");
    let g = |n| x0_genus(n).map(|x| x.genus).unwrap_or(-1);
    ensure!(g(11) == 1 && g(37) == 2, "genus(11) = {}, genus(37) = {}", g(11), g(37));
    for x in x0_genus_table(10_000, Execution::Parallel) {
        let lhs = 12 * (x.genus - 1) + 3 * x.nu2 as i64 + 4 * x.nu3 as i64 + 6 * x.nu_inf as i64;
        ensure!(lhs == x.mu as i64, "N = {}: {lhs} != {}", x.n, x.mu);
    }
    for m in 1..=12 {
        ensure!(sl2_order(m) == count_sl2(m), "sl2_order({m}) = {}, enumeration {}", sl2_order(m), count_sl2(m));
    }
    Ok("levels, genera, identity to 10^4, SL2 to 12".into())
}

fn survey() -> Verdict {
    let path = data("cremona-25000");
    let (code, out) = cli(&["--format", "json", "steinberg", "--all-below", "1000", "--cremona", &path]);
    ensure!(code == 0, "exit code {code}");
    let v: Value = serde_json::from_str(&out).map_err(|e| e.to_string())?;
    let r = &v["result"];
    ensure!(r["pass"] == true && r["primes"] == 168 && r["witnesses"] == 168, "primes {} witnesses {}", r["primes"], r["witnesses"]);

    let text = std::fs::read(&path).map_err(|e| e.to_string())?;
    let db: CurveDatabase = parse_allcurves(text.as_slice()).map_err(|e| e.to_string())?;
    let start = Instant::now();
    let report = steinberg_survey(1000, &db, Execution::Parallel);
    within(start, Duration::from_secs(10), "witness search")?;
    let elapsed = start.elapsed();
    ensure!(report.pass && report.witnesses == 168, "library run: {} witnesses", report.witnesses);
    for rec in r["results"].as_array().ok_or("no results")? {
        let p = rec["p"].as_u64().ok_or("bad p")?;
        let w = &rec["outcome"];
        let n = w["n"].as_u64().ok_or(format!("p = {p}: no witness"))?;
        let conductor = w["conductor"].as_u64().unwrap_or(0);
        ensure!(n % p != 0, "p = {p}: N = {n} not coprime");
        ensure!(g0(n), "p = {p}: X_0({n}) has positive genus");
        ensure!(conductor == p * n, "p = {p}: conductor {conductor}");
        ensure!(matches!(db.has_conductor(conductor), ConductorStatus::Present(_)), "p = {p}: no curve of conductor {conductor}");
    }
    Ok(format!("168 witnesses, search {elapsed:.2?} after parse"))
}

fn g0(n: u64) -> bool {
    x0_genus(n).is_ok_and(|x| x.genus == 0)
}

fn cremona_ingestion() -> Verdict {
    let text = common::read("cremona-25000");
    let db = parse_allcurves_str(&text).map_err(|e| e.to_string())?;
    for r in db.records() {
        let delta = r.discriminant();
        ensure!(!delta.is_zero(), "{}: singular", r.label());
        let (c4, c6) = (r.c4(), r.c6());
        ensure!(&c4 * &c4 * &c4 - &c6 * &c6 == BigInt::from(1728) * &delta, "{}: c4^3 - c6^2 != 1728 disc", r.label());
    }
    let again = parse_allcurves_str(&db.serialize()).map_err(|e| e.to_string())?;
    ensure!(again.records() == db.records(), "round trip changed the records");
    ensure!(again.coverage() == db.coverage(), "round trip changed the coverage");
    Ok(format!("{} records", db.len()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("Mathieu verification", mathieu_verification),
        ("M23 defect handling", m23_defect),
        ("Weyl suite", weyl_suite),
        ("fixed-space cross-validation", fixed_dim_cross_validation),
        ("parity and Scott", parity_and_scott),
        ("sporadic rows", sporadic_rows),
        ("triple-count oracle", triple_count_oracle),
        ("modular", modular),
        ("steinberg witnesses below 1000", survey),
        ("Cremona ingestion", cremona_ingestion),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let t = start.elapsed();
        match verdict {
            Ok(detail) => println!("PASS criterion {}: {name}: {detail} [{t:.2?}]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {why} [{t:.2?}]", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
