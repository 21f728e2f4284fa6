//! Bundled datasets and their loaders.
//!
//! The data directory defaults to the workspace `data/` folder and can be
//! moved with the `MWGENUS_DATA` environment variable. Every bundle is
//! parsed by the module that owns its format, and the SHA-256 digest of
//! every file read is recorded with it.
//!
//! | bundle              | contents                                      |
//! |---------------------|-----------------------------------------------|
//! | `mathieu`           | the five Mathieu displays, verbatim            |
//! | `mathieu-corrected` | repaired displays, kept apart                  |
//! | `char-small`        | complete rational tables of small groups       |
//! | `char-atlas`        | partial tables of sporadic groups              |
//! | `groups-small`      | group files for oracle groups                  |
//! | `cremona-25000`     | elliptic curves of conductor at most 25000     |

mod displays;
mod mathieu;

pub use displays::{parse_displays, Expectation, DisplayRecord};
pub use mathieu::{verify_display, DisplayVerification, ImpliedEntry};

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::chartab::{parse_table, CharacterTable};
use crate::cremona::{parse_allcurves_str, CurveDatabase};
use crate::permgroup::{parse_group_file, GroupFile};

#[derive(Debug, Error)]
pub enum DataError {
    #[error("no bundle named `{0}`")]
    MissingBundle(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {message}")]
    Parse { path: String, message: String },
    #[error("{path}:{line}: {message}")]
    Malformed { path: String, line: usize, message: String },
}

pub const BUNDLES: [&str; 6] = ["mathieu", "mathieu-corrected", "char-small", "char-atlas", "groups-small", "cremona-25000"];

pub const DATA_ENV: &str = "MWGENUS_DATA";

/// `$MWGENUS_DATA`, or the `data/` directory of the source tree.
pub fn data_dir() -> PathBuf {
    std::env::var_os(DATA_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data"))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FileDigest {
    /// Path relative to the data directory.
    pub path: String,
    pub bytes: usize,
    pub sha256: String,
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex(&Sha256::digest(bytes))
}

/// A named group file.
#[derive(Clone, Debug)]
pub struct NamedGroup {
    pub name: String,
    pub file: GroupFile,
}

#[derive(Clone, Debug)]
pub enum Dataset {
    Displays(Vec<DisplayRecord>),
    Tables(Vec<CharacterTable>),
    Groups(Vec<NamedGroup>),
    Curves(CurveDatabase),
}

#[derive(Clone, Debug)]
pub struct Bundle {
    pub name: String,
    pub files: Vec<FileDigest>,
    pub dataset: Dataset,
}

impl Bundle {
    pub fn displays(&self) -> Option<&[DisplayRecord]> {
        match &self.dataset {
            Dataset::Displays(d) => Some(d),
            _ => None,
        }
    }

    pub fn tables(&self) -> Option<&[CharacterTable]> {
        match &self.dataset {
            Dataset::Tables(t) => Some(t),
            _ => None,
        }
    }

    pub fn groups(&self) -> Option<&[NamedGroup]> {
        match &self.dataset {
            Dataset::Groups(g) => Some(g),
            _ => None,
        }
    }

    pub fn curves(&self) -> Option<&CurveDatabase> {
        match &self.dataset {
            Dataset::Curves(c) => Some(c),
            _ => None,
        }
    }

    pub fn table(&self, name: &str) -> Option<&CharacterTable> {
        self.tables()?.iter().find(|t| t.name == name)
    }

    pub fn group(&self, name: &str) -> Option<&GroupFile> {
        self.groups()?.iter().find(|g| g.name == name).map(|g| &g.file)
    }

    pub fn display(&self, name: &str) -> Option<&DisplayRecord> {
        self.displays()?.iter().find(|d| d.display == name)
    }

    /// Digest over the file digests, in order.
    pub fn checksum(&self) -> String {
        let mut h = Sha256::new();
        for f in &self.files {
            h.update(f.path.as_bytes());
            h.update([0]);
            h.update(f.sha256.as_bytes());
            h.update(*b"\n");
        }
        hex(&h.finalize())
    }
}

struct Reader<'a> {
    root: &'a Path,
    files: Vec<FileDigest>,
}

impl Reader<'_> {
    fn read(&mut self, rel: &str) -> Result<String, DataError> {
        let path = self.root.join(rel);
        let bytes = fs::read(&path).map_err(|source| DataError::Io { path: path.display().to_string(), source })?;
        self.files.push(FileDigest { path: rel.to_string(), bytes: bytes.len(), sha256: sha256_hex(&bytes) });
        String::from_utf8(bytes).map_err(|e| DataError::Parse { path: rel.to_string(), message: e.to_string() })
    }

    /// Files with `ext` directly inside `dir`, sorted by name.
    fn list(&self, dir: &str, ext: &str) -> Result<Vec<String>, DataError> {
        let path = self.root.join(dir);
        let entries = fs::read_dir(&path).map_err(|source| DataError::Io { path: path.display().to_string(), source })?;
        let mut names: Vec<String> = entries
            .filter_map(Result::ok)
            .filter_map(|e| e.file_name().into_string().ok())
            .filter(|n| n.ends_with(ext))
            .collect();
        names.sort();
        Ok(names.into_iter().map(|n| format!("{dir}/{n}")).collect())
    }
}

fn parse_err(path: &str, e: impl std::fmt::Display) -> DataError {
    DataError::Parse { path: path.to_string(), message: e.to_string() }
}

fn tables(r: &mut Reader<'_>, dir: &str) -> Result<Dataset, DataError> {
    let mut out = Vec::new();
    for rel in r.list(dir, ".tbl")? {
        let text = r.read(&rel)?;
        out.push(parse_table(&text).map_err(|e| parse_err(&rel, e))?);
    }
    Ok(Dataset::Tables(out))
}

/// Loads a bundle from [`data_dir`].
pub fn load_bundle(name: &str) -> Result<Bundle, DataError> {
    load_bundle_from(&data_dir(), name)
}

pub fn load_bundle_from(root: &Path, name: &str) -> Result<Bundle, DataError> {
    let mut r = Reader { root, files: Vec::new() };
    let dataset = match name {
        "mathieu" | "mathieu-corrected" => {
            let rel = if name == "mathieu" { "mathieu/displays.txt" } else { "mathieu/corrected.txt" };
            let text = r.read(rel)?;
            Dataset::Displays(parse_displays(&text, rel)?)
        }
        "char-small" => tables(&mut r, "chartab/small")?,
        "char-atlas" => tables(&mut r, "chartab/atlas")?,
        "groups-small" => {
            let mut out = Vec::new();
            for rel in r.list("groups", ".grp")? {
                let text = r.read(&rel)?;
                let file = parse_group_file(&text).map_err(|e| parse_err(&rel, e))?;
                let name = rel.trim_start_matches("groups/").trim_end_matches(".grp").to_string();
                out.push(NamedGroup { name, file });
            }
            Dataset::Groups(out)
        }
        "cremona-25000" => {
            let text = r.read(name)?;
            Dataset::Curves(parse_allcurves_str(&text).map_err(|e| parse_err(name, e))?)
        }
        _ => return Err(DataError::MissingBundle(name.to_string())),
    };
    Ok(Bundle { name: name.to_string(), files: r.files, dataset })
}

/// Verifies every verbatim display, resolving `ambient` pointers against the
/// corrected bundle.
pub fn verify_mathieu(verbatim: &Bundle, corrected: &Bundle) -> Result<Vec<DisplayVerification>, DataError> {
    let records = verbatim.displays().ok_or_else(|| DataError::MissingBundle("mathieu".into()))?;
    records
        .iter()
        .map(|rec| {
            let ambient = match &rec.ambient {
                Some((file, display)) if file == "corrected" => Some(corrected.display(display).ok_or_else(|| {
                    DataError::Parse { path: format!("display {}", rec.display), message: format!("no corrected display {display}") }
                })?),
                Some((file, _)) => return Err(DataError::MissingBundle(file.clone())),
                None => None,
            };
            verify_display(rec, ambient)
        })
        .collect()
}
