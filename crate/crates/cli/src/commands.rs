use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::sync::Arc;

use serde::Serialize;

use mwgenus::chartab::{class_genus, class_triple_count, parse_table, CharacterTable, ClassTuple};
use mwgenus::cremona::{parse_allcurves, CurveDatabase};
use mwgenus::data::{load_bundle_from, verify_display, verify_mathieu, DisplayVerification, FileDigest, BUNDLES};
use mwgenus::exactlin::parse_matrices;
use mwgenus::modular::{genus_zero_levels, steinberg_witness, steinberg_survey, x0_genus, WitnessOutcome};
use mwgenus::permgroup::{parse_cycles, parse_group_file, parse_tuple_file, GroupFile, Permutation, PermutationGroup};
use mwgenus::repgenus::{genus_of_tuple, search_tuples, GenusReport, MatrixRep, PermutationRep, SearchParams};
use mwgenus::weyl::{check_full_tuple, check_rotation_tuple, CartanType, FullTupleCheck, RootSystem, RotationTupleCheck};

use crate::{
    ClassGenusArgs, Command, GenusArgs, Outcome, RunConfig, SearchArgs, SteinbergArgs, TripleCountArgs, ValidateArgs, WeylArgs, X0Args,
};

type CmdResult = Result<Outcome, String>;

pub(crate) fn dispatch(command: &Command, config: &RunConfig) -> CmdResult {
    match command {
        Command::VerifyMathieu => verify_mathieu_cmd(config),
        Command::Weyl(a) => weyl(a),
        Command::Genus(a) => genus(a, config),
        Command::ClassGenus(a) => class_genus_cmd(a),
        Command::TripleCount(a) => triple_count(a),
        Command::Search(a) => search(a, config),
        Command::X0genus(a) => x0(a, config),
        Command::Steinberg(a) => steinberg(a, config),
        Command::Validate(a) => validate(a, config),
    }
}

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn read_group(path: &Path, seed: u64) -> Result<(GroupFile, PermutationGroup), String> {
    let file = parse_group_file(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))?;
    let group = PermutationGroup::with_seed(file.generators.clone(), seed).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok((file, group))
}

fn read_table(path: &Path) -> Result<CharacterTable, String> {
    parse_table(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn read_curves(path: &Path) -> Result<CurveDatabase, String> {
    let f = fs::File::open(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_allcurves(std::io::BufReader::new(f)).map_err(|e| format!("{}: {e}", path.display()))
}

fn split_list(s: &str) -> Vec<&str> {
    s.split(',').map(str::trim).filter(|t| !t.is_empty()).collect()
}

fn mark(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

#[derive(Serialize)]
struct BundleInfo {
    name: String,
    checksum: String,
    files: Vec<FileDigest>,
}

#[derive(Serialize)]
struct MathieuRun {
    displays: Vec<DisplayVerification>,
    repaired: Vec<DisplayVerification>,
    bundles: Vec<BundleInfo>,
}

fn display_line(out: &mut String, v: &DisplayVerification) {
    let r = &v.report;
    let genus = r.genus.map_or_else(|| "undefined".to_string(), |g| g.to_string());
    let conv = r.product.detected.map_or("none", |c| c.name());
    let _ = writeln!(
        out,
        "{:<4} order {} (stated {})  dim V^g = {}  lhs {}  genus {}  product {}  {}",
        v.display,
        v.ambient_order,
        v.expected_order,
        join(&r.fixed_dims),
        r.lhs,
        genus,
        conv,
        mark(v.passes)
    );
    for w in &r.witnesses {
        let _ = writeln!(out, "     witness: {w}");
    }
    for d in &v.diagnosis {
        let _ = writeln!(
            out,
            "     implied g{} ({}): {}  cycle type {:?}  order {}  in {}: {}",
            d.index + 1,
            d.convention.name(),
            d.implied,
            d.cycle_type,
            d.order,
            v.ambient,
            if d.in_ambient_group { "yes" } else { "no" }
        );
    }
}

fn verify_mathieu_cmd(config: &RunConfig) -> CmdResult {
    let verbatim = load_bundle_from(&config.data, "mathieu").map_err(|e| e.to_string())?;
    let corrected = load_bundle_from(&config.data, "mathieu-corrected").map_err(|e| e.to_string())?;
    let displays = verify_mathieu(&verbatim, &corrected).map_err(|e| e.to_string())?;
    let repaired = corrected
        .displays()
        .unwrap_or_default()
        .iter()
        .map(|r| verify_display(r, None))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    let pass = displays.iter().all(|d| d.passes);
    let mut human = String::from("verbatim displays\n");
    for d in &displays {
        display_line(&mut human, d);
    }
    human.push_str("repaired displays (not part of the verdict)\n");
    for d in &repaired {
        display_line(&mut human, d);
    }
    let bundles = [verbatim, corrected]
        .into_iter()
        .map(|b| BundleInfo { checksum: b.checksum(), name: b.name, files: b.files })
        .collect();
    Ok(Outcome::new(pass, human, &MathieuRun { displays, repaired, bundles }))
}

fn cartan_type(a: &WeylArgs) -> Result<CartanType, String> {
    let label = a.kind.trim();
    let t = if label.chars().skip(1).any(|c| c.is_ascii_digit()) {
        let t: CartanType = label.parse().map_err(|e: mwgenus::weyl::WeylError| e.to_string())?;
        if a.rank.is_some_and(|r| r != t.rank) {
            return Err(format!("--type {label} conflicts with --rank {}", a.rank.unwrap_or_default()));
        }
        t
    } else {
        let family = label.chars().next().filter(|_| label.len() == 1).ok_or_else(|| format!("bad type `{label}`"))?;
        let rank = a.rank.ok_or("--rank is required with a bare family letter")?;
        CartanType::new(family, rank).map_err(|e| e.to_string())?
    };
    Ok(t)
}

#[derive(Serialize)]
struct WeylRun {
    full: FullTupleCheck,
    rotation: Option<RotationTupleCheck>,
}

fn report_block(out: &mut String, r: &GenusReport) {
    for line in r.to_string().lines() {
        let _ = writeln!(out, "  {line}");
    }
}

fn weyl(a: &WeylArgs) -> CmdResult {
    let t = cartan_type(a)?;
    let rs = RootSystem::new(t);
    let full = check_full_tuple(&rs).map_err(|e| e.to_string())?;
    let rotation = if a.rotation { Some(check_rotation_tuple(&rs).map_err(|e| e.to_string())?) } else { None };
    let mut human = String::new();
    let _ = writeln!(human, "{t}: {} roots, |W| = {} (classical {})", rs.roots().len(), full.weyl_order, full.classical_order);
    let _ = writeln!(human, "full tuple: {}", mark(full.pass));
    report_block(&mut human, &full.report);
    if let Some(rot) = &rotation {
        let _ = writeln!(human, "rotation tuple: {}", mark(rot.pass));
        let _ = writeln!(human, "  paths {:?} and {:?}", rot.decomposition.path1, rot.decomposition.path2);
        let _ = writeln!(
            human,
            "  order of subgroup {} (|W|/2 = {}), determinants {}",
            rot.subgroup.subgroup_order,
            &rot.subgroup.weyl_order / 2u32,
            rot.subgroup.determinants.join(" ")
        );
        for d in rot.decomposition_defects.iter().chain(&rot.subgroup.witnesses) {
            let _ = writeln!(human, "  witness: {d}");
        }
        report_block(&mut human, &rot.report);
    }
    let pass = full.pass && rotation.as_ref().is_none_or(|r| r.pass);
    Ok(Outcome::new(pass, human, &WeylRun { full, rotation }))
}

fn genus(a: &GenusArgs, config: &RunConfig) -> CmdResult {
    let kind = a.rep[0].as_str();
    let source = a.rep.get(1);
    let report = match (kind, source) {
        ("perm", None) => {
            let path = a.group.as_ref().ok_or("--group is required for --rep perm")?;
            let (file, group) = read_group(path, config.seed)?;
            let tuple = parse_tuple_file(&read(&a.tuple)?, &file.domain).map_err(|e| format!("{}: {e}", a.tuple.display()))?;
            let rep = PermutationRep::new(group).map_err(|e| e.to_string())?;
            genus_of_tuple(&rep, &tuple).map_err(|e| e.to_string())?
        }
        ("matrix", Some(mfile)) => {
            let path = a.group.as_ref().ok_or("--group is required for --rep matrix")?;
            let (file, _) = read_group(path, config.seed)?;
            let mats = parse_matrices(&read(Path::new(mfile))?).map_err(|(l, m)| format!("{mfile}:{l}: {m}"))?;
            let tuple = parse_tuple_file(&read(&a.tuple)?, &file.domain).map_err(|e| format!("{}: {e}", a.tuple.display()))?;
            let rep = MatrixRep::from_assignments(file.generators, mats).map_err(|e| e.to_string())?;
            let elements = tuple.iter().map(|p| rep.lift(p)).collect::<Result<Vec<_>, _>>().map_err(|e| e.to_string())?;
            genus_of_tuple(&rep, &elements).map_err(|e| e.to_string())?
        }
        ("char", Some(spec)) => {
            let (tfile, chi) = spec.rsplit_once(':').ok_or("--rep char expects FILE:CHI")?;
            let table = Arc::new(read_table(Path::new(tfile))?);
            let text = read(&a.tuple)?;
            let classes: Vec<&str> = text
                .lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#'))
                .flat_map(split_list)
                .collect();
            class_genus(&ClassTuple::new(table, chi, &classes)).map_err(|e| e.to_string())?
        }
        _ => return Err("--rep must be `perm`, `matrix FILE` or `char FILE:CHI`".into()),
    };
    let pass = report.passes();
    Ok(Outcome::new(pass, report.to_string(), &report))
}

fn class_genus_cmd(a: &ClassGenusArgs) -> CmdResult {
    let table = Arc::new(read_table(&a.table)?);
    let classes = split_list(&a.classes);
    let report = class_genus(&ClassTuple::new(table, &a.chi, &classes)).map_err(|e| e.to_string())?;
    Ok(Outcome::new(report.passes(), report.to_string(), &report))
}

#[derive(Serialize)]
struct TripleCount {
    group: String,
    classes: Vec<String>,
    count: String,
}

fn triple_count(a: &TripleCountArgs) -> CmdResult {
    let table = read_table(&a.table)?;
    let classes = split_list(&a.classes);
    let [c1, c2, c3] = classes[..] else {
        return Err(format!("--classes needs exactly three names, got {}", classes.len()));
    };
    let count = class_triple_count(&table, c1, c2, c3).map_err(|e| e.to_string())?;
    let human = format!("{}: fixing z in {c3}, #{{(x, y) in {c1} x {c2} : x y z = 1}} = {count}\n", table.name);
    let res = TripleCount { group: table.name.clone(), classes: classes.iter().map(|s| s.to_string()).collect(), count: count.to_string() };
    Ok(Outcome::new(true, human, &res))
}

#[derive(Serialize)]
struct SearchRun {
    n: usize,
    target_genus: i64,
    seed: u64,
    budget: usize,
    found: Vec<GenusReport>,
}

fn search(a: &SearchArgs, config: &RunConfig) -> CmdResult {
    let (file, group) = read_group(&a.group, config.seed)?;
    let constraints = match &a.constraints {
        None => Vec::new(),
        Some(p) => read(p)?
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|l| if l == "*" { Ok(None) } else { parse_cycles(l, &file.domain).map(Some) })
            .collect::<Result<Vec<Option<Permutation>>, _>>()
            .map_err(|e| format!("{}: {e}", p.display()))?,
    };
    if a.n < 2 {
        return Err("--n must be at least 2".into());
    }
    if a.budget == 0 {
        return Err("--budget must be positive".into());
    }
    let rep = PermutationRep::new(group.clone()).map_err(|e| e.to_string())?;
    let params = SearchParams { n: a.n, target_genus: a.target, constraints, seed: config.seed, budget: a.budget };
    let found = search_tuples(&group, &rep, &params, config.exec);
    let reports = found.iter().map(|t| genus_of_tuple(&rep, &t.elements)).collect::<Result<Vec<_>, _>>().map_err(|e| e.to_string())?;
    let mut human = format!("{} tuple(s) of genus {} in {} attempts (seed {})\n", reports.len(), a.target, a.budget, config.seed);
    for r in &reports {
        let _ = writeln!(human, "  {}  dims {}", r.entries.join("  "), join(&r.fixed_dims));
    }
    let pass = reports.iter().all(|r| r.has_genus(a.target));
    Ok(Outcome::new(pass, human, &SearchRun { n: a.n, target_genus: a.target, seed: config.seed, budget: a.budget, found: reports }))
}

#[derive(Serialize)]
struct GenusZero {
    bound: u64,
    levels: Vec<u64>,
}

fn x0(a: &X0Args, _config: &RunConfig) -> CmdResult {
    if let Some(n) = a.n {
        let g = x0_genus(n).map_err(|e| e.to_string())?;
        let human = format!("X_0({n}): genus {}  (mu {}, nu2 {}, nu3 {}, nu_inf {})\n", g.genus, g.mu, g.nu2, g.nu3, g.nu_inf);
        return Ok(Outcome::new(g.defect() == 0, human, &g));
    }
    let bound = a.bound.ok_or("--bound is required with --genus-zero")?;
    if bound == 0 {
        return Err("--bound must be positive".into());
    }
    let levels = genus_zero_levels(bound);
    let human = format!("genus-zero levels up to {bound}: {}\n", join(&levels));
    Ok(Outcome::new(true, human, &GenusZero { bound, levels }))
}

fn curves(path: &Option<std::path::PathBuf>, config: &RunConfig) -> Result<CurveDatabase, String> {
    match path {
        Some(p) => read_curves(p),
        None => read_curves(&config.data.join("cremona-25000")),
    }
}

fn outcome_line(out: &mut String, p: u64, o: &WitnessOutcome) {
    let _ = match o {
        WitnessOutcome::Found(w) => writeln!(
            out,
            "p = {p:<4} N = {:<3} conductor {:<6} curve {}  [{}]",
            w.n,
            w.conductor,
            w.curve.label(),
            join(&w.curve.ainvs)
        ),
        WitnessOutcome::Absent => writeln!(out, "p = {p:<4} no witness"),
        WitnessOutcome::InsufficientData { uncovered } => {
            writeln!(out, "p = {p:<4} insufficient data: conductors {} not covered", join(uncovered))
        }
    };
}

fn steinberg(a: &SteinbergArgs, config: &RunConfig) -> CmdResult {
    let db = curves(&a.cremona, config)?;
    if let Some(p) = a.p {
        let o = steinberg_witness(p, &db).map_err(|e| e.to_string())?;
        let mut human = String::new();
        outcome_line(&mut human, p, &o);
        return Ok(Outcome::new(o.witness().is_some(), human, &o));
    }
    let bound = a.all_below.expect("clap enforces one mode");
    let report = steinberg_survey(bound, &db, config.exec);
    let mut human = String::new();
    for r in &report.results {
        outcome_line(&mut human, r.p, &r.outcome);
    }
    let cov = report.coverage.map_or_else(|| "none".to_string(), |(lo, hi)| format!("[{lo}, {hi}]"));
    let _ = writeln!(
        human,
        "{} of {} primes below {bound} have a witness (coverage {cov}): {}",
        report.witnesses,
        report.primes,
        mark(report.pass)
    );
    Ok(Outcome::new(report.pass, human, &report))
}

#[derive(Serialize)]
struct TableSummary {
    group: String,
    order: String,
    classes: usize,
    characters: usize,
    complete: bool,
}

#[derive(Serialize)]
struct CurveSummary {
    records: usize,
    conductors: usize,
    coverage: Option<(u64, u64)>,
    coverage_declared: bool,
}

fn validate(a: &ValidateArgs, config: &RunConfig) -> CmdResult {
    if let Some(p) = &a.table {
        let t = read_table(p)?;
        let s = TableSummary {
            group: t.name.clone(),
            order: t.order.to_string(),
            classes: t.classes.len(),
            characters: t.characters.len(),
            complete: t.is_complete(),
        };
        let human = format!("{}: order {}, {} classes, {} characters, valid\n", s.group, s.order, s.classes, s.characters);
        return Ok(Outcome::new(true, human, &s));
    }
    if let Some(p) = &a.cremona {
        let db = read_curves(p)?;
        let s = CurveSummary {
            records: db.len(),
            conductors: db.conductor_count(),
            coverage: db.coverage(),
            coverage_declared: db.coverage_is_declared(),
        };
        let human = format!("{} curves over {} conductors, coverage {:?}, valid\n", s.records, s.conductors, s.coverage);
        return Ok(Outcome::new(true, human, &s));
    }
    let mut infos = Vec::new();
    let mut human = String::new();
    for name in BUNDLES {
        let b = load_bundle_from(&config.data, name).map_err(|e| e.to_string())?;
        let _ = writeln!(human, "{name:<18} {} file(s)  {}", b.files.len(), b.checksum());
        infos.push(BundleInfo { checksum: b.checksum(), name: b.name, files: b.files });
    }
    Ok(Outcome::new(true, human, &infos))
}
