//! Cremona `allcurves` tables indexed by conductor.
//!
//! Each data line is `conductor class number a1 a2 a3 a4 a6 rank torsion`.
//! Lines starting with `#` are comments; a comment `# coverage: LO HI`
//! declares that the file lists every curve with conductor in `[LO, HI]`,
//! which matters for conductors that have no curves at all. Without it the
//! coverage is the observed conductor range.

use std::collections::BTreeMap;
use std::io::BufRead;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CremonaError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: singular curve (discriminant 0) at conductor {conductor}")]
    Singular { line: usize, conductor: u64 },
    #[error("line {line}: conductor {conductor} lies outside the declared coverage [{lo}, {hi}]")]
    OutsideDeclaredCoverage { line: usize, conductor: u64, lo: u64, hi: u64 },
    #[error("read error: {0}")]
    Io(#[from] std::io::Error),
}

/// An elliptic curve `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct EllipticCurveRecord {
    pub conductor: u64,
    pub class: String,
    pub number: u32,
    #[serde(serialize_with = "ser_ainvs")]
    pub ainvs: [BigInt; 5],
    pub rank: u32,
    pub torsion: u32,
}

fn ser_ainvs<S: serde::Serializer>(a: &[BigInt; 5], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(5))?;
    for x in a {
        seq.serialize_element(&x.to_string())?;
    }
    seq.end()
}

impl EllipticCurveRecord {
    /// Cremona label such as `11a1`.
    pub fn label(&self) -> String {
        format!("{}{}{}", self.conductor, self.class, self.number)
    }

    /// `(b2, b4, b6, b8)`.
    pub fn b_invariants(&self) -> (BigInt, BigInt, BigInt, BigInt) {
        let [a1, a2, a3, a4, a6] = &self.ainvs;
        let b2 = a1 * a1 + 4 * a2;
        let b4 = 2 * a4 + a1 * a3;
        let b6 = a3 * a3 + 4 * a6;
        let b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
        (b2, b4, b6, b8)
    }

    pub fn discriminant(&self) -> BigInt {
        let (b2, b4, b6, b8) = self.b_invariants();
        -(&b2 * &b2 * &b8) - 8 * &b4 * &b4 * &b4 - 27 * &b6 * &b6 + 9 * &b2 * &b4 * &b6
    }

    pub fn c4(&self) -> BigInt {
        let (b2, b4, _, _) = self.b_invariants();
        &b2 * &b2 - 24 * b4
    }

    pub fn c6(&self) -> BigInt {
        let (b2, b4, b6, _) = self.b_invariants();
        -(&b2 * &b2 * &b2) + 36 * &b2 * &b4 - 216 * b6
    }

    /// The line as it appears in an `allcurves` file.
    pub fn to_line(&self) -> String {
        let a: Vec<String> = self.ainvs.iter().map(ToString::to_string).collect();
        format!("{} {} {} {} {} {}", self.conductor, self.class, self.number, a.join(" "), self.rank, self.torsion)
    }
}

/// Result of asking whether curves of a conductor exist.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConductorStatus {
    /// This many curves are listed.
    Present(usize),
    /// Within coverage and no curve is listed: there is none.
    AbsentInCoverage,
    /// Beyond what the data covers: unknown.
    OutsideCoverage,
}

#[derive(Clone, Debug, Default)]
pub struct CurveDatabase {
    records: Vec<EllipticCurveRecord>,
    by_conductor: BTreeMap<u64, Vec<usize>>,
    coverage: Option<(u64, u64)>,
    declared_coverage: bool,
    header: Vec<String>,
}

fn parse_line(line: &str, no: usize) -> Result<EllipticCurveRecord, CremonaError> {
    let f: Vec<&str> = line.split_whitespace().collect();
    let bad = |m: String| CremonaError::Malformed { line: no, message: m };
    if f.len() != 10 {
        return Err(bad(format!("expected 10 fields, found {}", f.len())));
    }
    let conductor: u64 = f[0].parse().map_err(|_| bad(format!("bad conductor `{}`", f[0])))?;
    if conductor == 0 {
        return Err(bad("conductor must be positive".into()));
    }
    if !f[1].chars().all(|c| c.is_ascii_lowercase()) {
        return Err(bad(format!("bad isogeny class `{}`", f[1])));
    }
    let number: u32 = f[2].parse().map_err(|_| bad(format!("bad curve number `{}`", f[2])))?;
    let mut ainvs: [BigInt; 5] = Default::default();
    for (k, slot) in ainvs.iter_mut().enumerate() {
        *slot = f[3 + k].parse().map_err(|_| bad(format!("bad a-invariant `{}`", f[3 + k])))?;
    }
    let rank: u32 = f[8].parse().map_err(|_| bad(format!("bad rank `{}`", f[8])))?;
    let torsion: u32 = f[9].parse().map_err(|_| bad(format!("bad torsion order `{}`", f[9])))?;
    if torsion == 0 {
        return Err(bad("torsion order must be positive".into()));
    }
    let rec = EllipticCurveRecord { conductor, class: f[1].to_string(), number, ainvs, rank, torsion };
    if rec.discriminant().is_zero() {
        return Err(CremonaError::Singular { line: no, conductor });
    }
    Ok(rec)
}

fn parse_coverage(comment: &str, no: usize) -> Result<Option<(u64, u64)>, CremonaError> {
    let Some(rest) = comment.trim_start_matches('#').trim().strip_prefix("coverage:") else {
        return Ok(None);
    };
    let bad = || CremonaError::Malformed { line: no, message: format!("bad coverage directive `{comment}`") };
    let mut it = rest.split_whitespace().map(str::parse::<u64>);
    match (it.next(), it.next(), it.next()) {
        (Some(Ok(lo)), Some(Ok(hi)), None) if lo <= hi => Ok(Some((lo, hi))),
        _ => Err(bad()),
    }
}

/// Parses an `allcurves` stream, validating every record.
pub fn parse_allcurves<R: BufRead>(reader: R) -> Result<CurveDatabase, CremonaError> {
    let mut db = CurveDatabase::default();
    let mut declared = None;
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let no = i + 1;
        let t = line.trim();
        if t.is_empty() {
            continue;
        }
        if t.starts_with('#') {
            if let Some(c) = parse_coverage(t, no)? {
                declared = Some(c);
            }
            if db.records.is_empty() {
                db.header.push(t.to_string());
            }
            continue;
        }
        let rec = parse_line(t, no)?;
        if let Some((lo, hi)) = declared {
            if rec.conductor < lo || rec.conductor > hi {
                return Err(CremonaError::OutsideDeclaredCoverage { line: no, conductor: rec.conductor, lo, hi });
            }
        }
        db.by_conductor.entry(rec.conductor).or_default().push(db.records.len());
        db.records.push(rec);
    }
    db.declared_coverage = declared.is_some();
    db.coverage = declared.or_else(|| {
        let lo = *db.by_conductor.keys().next()?;
        let hi = *db.by_conductor.keys().next_back()?;
        Some((lo, hi))
    });
    Ok(db)
}

pub fn parse_allcurves_str(text: &str) -> Result<CurveDatabase, CremonaError> {
    parse_allcurves(text.as_bytes())
}

impl CurveDatabase {
    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn records(&self) -> &[EllipticCurveRecord] {
        &self.records
    }

    pub fn conductor_count(&self) -> usize {
        self.by_conductor.len()
    }

    /// Inclusive conductor range the data speaks for, if any.
    pub fn coverage(&self) -> Option<(u64, u64)> {
        self.coverage
    }

    pub fn coverage_is_declared(&self) -> bool {
        self.declared_coverage
    }

    pub fn header(&self) -> &[String] {
        &self.header
    }

    pub fn lookup(&self, conductor: u64) -> Vec<&EllipticCurveRecord> {
        self.by_conductor.get(&conductor).map_or_else(Vec::new, |v| v.iter().map(|&i| &self.records[i]).collect())
    }

    pub fn has_conductor(&self, conductor: u64) -> ConductorStatus {
        if let Some(v) = self.by_conductor.get(&conductor) {
            return ConductorStatus::Present(v.len());
        }
        match self.coverage {
            Some((lo, hi)) if (lo..=hi).contains(&conductor) => ConductorStatus::AbsentInCoverage,
            _ => ConductorStatus::OutsideCoverage,
        }
    }

    /// The database as an `allcurves` file: header comments, then records in
    /// input order.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        for h in &self.header {
            out.push_str(h);
            out.push('\n');
        }
        if let (Some((lo, hi)), true) = (self.coverage, self.declared_coverage) {
            if !self.header.iter().any(|h| parse_coverage(h, 0).ok().flatten().is_some()) {
                out.push_str(&format!("# coverage: {lo} {hi}\n"));
            }
        }
        for r in &self.records {
            out.push_str(&r.to_line());
            out.push('\n');
        }
        out
    }
}
