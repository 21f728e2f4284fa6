use std::sync::Arc;

use num_bigint::BigUint;
use serde::Serialize;

use super::DataError;
use crate::permgroup::{parse_cycles, Domain, NotationError, Permutation};

/// Whether a display is expected to survive verification.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Expectation {
    Passes,
    Fails,
}

/// One generating-pair display `g1 g2 = g3`, with the permutations kept as
/// the exact strings of the source.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DisplayRecord {
    pub display: String,
    #[serde(serialize_with = "crate::ser_display")]
    pub group_order: BigUint,
    pub domain: Vec<String>,
    /// `g1`, `g2`, `g3` verbatim.
    pub permutations: [String; 3],
    pub character: String,
    pub expected_genus: i64,
    pub expected_verification: Expectation,
    /// Entry to recompute from the other two when verification fails.
    pub diagnose: Option<usize>,
    /// `(file, display)` of the group to test membership against, when the
    /// display's own pair does not generate the intended group.
    pub ambient: Option<(String, String)>,
    /// `(display, field)` this record repairs.
    pub repair_of: Option<(String, String)>,
    pub line: usize,
}

impl DisplayRecord {
    pub fn domain(&self) -> Arc<Domain> {
        Arc::new(Domain::new(self.domain.iter().cloned()).expect("checked when parsed"))
    }

    /// `g1`, `g2`, `g3` as permutations of the display's domain.
    pub fn parsed(&self) -> Result<[Permutation; 3], NotationError> {
        let d = self.domain();
        let [a, b, c] = &self.permutations;
        Ok([parse_cycles(a, &d)?, parse_cycles(b, &d)?, parse_cycles(c, &d)?])
    }

    /// The tuple under test, `(g1, g2, g3^-1)`.
    pub fn tuple(&self) -> Result<Vec<Permutation>, NotationError> {
        let [a, b, c] = self.parsed()?;
        Ok(vec![a, b, c.inverse()])
    }
}

#[derive(Default)]
struct Draft {
    display: String,
    line: usize,
    group_order: Option<BigUint>,
    domain: Option<Vec<String>>,
    g: [Option<String>; 3],
    character: Option<String>,
    expected_genus: Option<i64>,
    expected_verification: Option<Expectation>,
    diagnose: Option<usize>,
    ambient: Option<(String, String)>,
    repair_of: Option<(String, String)>,
}

/// Parses `display NAME ... end` blocks.
pub fn parse_displays(text: &str, path: &str) -> Result<Vec<DisplayRecord>, DataError> {
    let bad = |line: usize, message: String| DataError::Malformed { path: path.to_string(), line, message };
    let mut out = Vec::new();
    let mut draft: Option<Draft> = None;
    for (i, raw) in text.lines().enumerate() {
        let no = i + 1;
        let l = raw.trim();
        if l.is_empty() || l.starts_with('#') {
            continue;
        }
        let (key, rest) = l.split_once(char::is_whitespace).map_or((l, ""), |(k, r)| (k, r.trim()));
        let Some(d) = draft.as_mut() else {
            if key != "display" || rest.is_empty() {
                return Err(bad(no, format!("expected `display NAME`, found `{l}`")));
            }
            draft = Some(Draft { display: rest.to_string(), line: no, ..Draft::default() });
            continue;
        };
        let pair = |s: &str| {
            let mut it = s.split_whitespace();
            match (it.next(), it.next(), it.next()) {
                (Some(a), Some(b), None) => Some((a.to_string(), b.to_string())),
                _ => None,
            }
        };
        match key {
            "group-order" => d.group_order = Some(rest.parse().map_err(|_| bad(no, format!("bad order `{rest}`")))?),
            "domain" => {
                let tokens: Vec<String> = rest.split_whitespace().map(String::from).collect();
                Domain::new(tokens.iter().cloned()).map_err(|t| bad(no, format!("duplicate domain token `{t}`")))?;
                d.domain = Some(tokens);
            }
            "g1" | "g2" | "g3" => d.g[key.as_bytes()[1] as usize - b'1' as usize] = Some(rest.to_string()),
            "character" => d.character = Some(rest.to_string()),
            "expected-genus" => d.expected_genus = Some(rest.parse().map_err(|_| bad(no, format!("bad genus `{rest}`")))?),
            "expected-verification" => {
                d.expected_verification = Some(match rest {
                    "passes" => Expectation::Passes,
                    "fails" => Expectation::Fails,
                    _ => return Err(bad(no, format!("expected `passes` or `fails`, found `{rest}`"))),
                })
            }
            "diagnose" => d.diagnose = Some(rest.parse().map_err(|_| bad(no, format!("bad index `{rest}`")))?),
            "ambient" => d.ambient = Some(pair(rest).ok_or_else(|| bad(no, "expected `ambient FILE DISPLAY`".into()))?),
            "repair-of" => d.repair_of = Some(pair(rest).ok_or_else(|| bad(no, "expected `repair-of DISPLAY FIELD`".into()))?),
            "end" => {
                let d = draft.take().expect("inside a block");
                let missing = |f: &str| bad(d.line, format!("display {} lacks `{f}`", d.display));
                let [g1, g2, g3] = d.g;
                let record = DisplayRecord {
                    group_order: d.group_order.ok_or_else(|| missing("group-order"))?,
                    domain: d.domain.ok_or_else(|| missing("domain"))?,
                    permutations: [
                        g1.ok_or_else(|| missing("g1"))?,
                        g2.ok_or_else(|| missing("g2"))?,
                        g3.ok_or_else(|| missing("g3"))?,
                    ],
                    character: d.character.ok_or_else(|| missing("character"))?,
                    expected_genus: d.expected_genus.ok_or_else(|| missing("expected-genus"))?,
                    expected_verification: d.expected_verification.ok_or_else(|| missing("expected-verification"))?,
                    diagnose: d.diagnose,
                    ambient: d.ambient,
                    repair_of: d.repair_of,
                    display: d.display,
                    line: d.line,
                };
                record.parsed().map_err(|e| bad(record.line, format!("display {}: {e}", record.display)))?;
                out.push(record);
            }
            _ => return Err(bad(no, format!("unknown field `{key}`"))),
        }
    }
    if let Some(d) = draft {
        return Err(bad(d.line, format!("display {} is not closed by `end`", d.display)));
    }
    Ok(out)
}
