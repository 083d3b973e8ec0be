//! Input formats: family files (JSON) and moment lists (one real per line).

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use msk_core::{Complex64, EigenvalueFamily, FamilyKind, FamilyMember, WeilMember};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Deserialize;

#[derive(Debug)]
pub enum InputError {
    Io { path: String, message: String },
    Parse { path: String, line: usize, column: usize, message: String },
    Invalid { path: String, message: String },
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InputError::Io { path, message } => write!(f, "{path}: {message}"),
            InputError::Parse { path, line, column, message } => {
                write!(f, "{path}:{line}:{column}: {message}")
            }
            InputError::Invalid { path, message } => write!(f, "{path}: {message}"),
        }
    }
}

impl std::error::Error for InputError {}

fn read(path: &Path) -> Result<String, InputError> {
    std::fs::read_to_string(path).map_err(|e| InputError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

/// Reads one real per line; blank lines and `#` comments are skipped.
pub fn read_moments(path: &Path) -> Result<Vec<f64>, InputError> {
    parse_moments(&read(path)?, &path.display().to_string())
}

pub fn parse_moments(text: &str, origin: &str) -> Result<Vec<f64>, InputError> {
    let mut values = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let column = raw.len() - raw.trim_start().len() + 1;
        let value: f64 = trimmed.parse().map_err(|_| InputError::Parse {
            path: origin.to_string(),
            line: i + 1,
            column,
            message: format!("expected a real number, found {trimmed:?}"),
        })?;
        if !value.is_finite() {
            return Err(InputError::Parse {
                path: origin.to_string(),
                line: i + 1,
                column,
                message: "moments must be finite".to_string(),
            });
        }
        values.push(value);
    }
    if values.is_empty() {
        return Err(InputError::Invalid { path: origin.to_string(), message: "no moments found".to_string() });
    }
    Ok(values)
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum KindTag {
    HermitianReal,
    ConstantModulus,
    General,
    Weil,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum ExactPart {
    Int(i64),
    Text(String),
}

impl ExactPart {
    fn to_rational(&self) -> Result<BigRational, String> {
        match self {
            ExactPart::Int(v) => Ok(BigRational::from_integer(BigInt::from(*v))),
            ExactPart::Text(s) => BigRational::from_str(s.trim()).map_err(|_| format!("not an exact rational: {s:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum EigenvalueEntry {
    Real(f64),
    Pair([f64; 2]),
    Exact { r: ExactPart, s: ExactPart, k: i64 },
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MemberEntry {
    pub n: usize,
    pub eigenvalues: Vec<EigenvalueEntry>,
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Metadata {
    pub c: Option<f64>,
    #[serde(rename = "M")]
    pub m: Option<f64>,
    pub q: Option<i64>,
    pub a: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyFile {
    pub version: u32,
    pub kind: KindTag,
    #[serde(default)]
    pub metadata: Metadata,
    pub members: Vec<MemberEntry>,
}

impl FamilyFile {
    pub fn read(path: &Path) -> Result<Self, InputError> {
        let origin = path.display().to_string();
        let file: FamilyFile = serde_json::from_str(&read(path)?).map_err(|e| InputError::Parse {
            path: origin.clone(),
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        file.validate().map_err(|message| InputError::Invalid { path: origin, message })?;
        Ok(file)
    }

    /// Format version, strictly increasing sizes, and list lengths.
    pub fn validate(&self) -> Result<(), String> {
        if self.version != 1 {
            return Err(format!("unsupported format version {} (expected 1)", self.version));
        }
        if self.members.is_empty() {
            return Err("the family has no members".to_string());
        }
        for (i, m) in self.members.iter().enumerate() {
            if m.n == 0 || (i > 0 && m.n <= self.members[i - 1].n) {
                return Err(format!("member {i}: sizes must be positive and strictly increasing"));
            }
            let expected = if self.kind == KindTag::Weil { 2 * m.n } else { m.n };
            if m.eigenvalues.len() != expected {
                return Err(format!(
                    "member {i}: expected {expected} eigenvalues for n = {}, found {}",
                    m.n,
                    m.eigenvalues.len()
                ));
            }
        }
        Ok(())
    }

    /// Eigenvalue family for the symbol and circle pipelines.
    pub fn family(&self) -> Result<EigenvalueFamily, String> {
        let kind = match self.kind {
            KindTag::HermitianReal => FamilyKind::HermitianReal,
            KindTag::ConstantModulus => FamilyKind::ConstantModulus,
            KindTag::General => FamilyKind::General,
            KindTag::Weil => return Err("weil families are analyzed with `msk weil analyze`".to_string()),
        };
        let members = self
            .members
            .iter()
            .map(|m| {
                let eigenvalues = m.eigenvalues.iter().map(to_complex).collect::<Result<Vec<_>, _>>()?;
                Ok(FamilyMember { n: m.n, eigenvalues })
            })
            .collect::<Result<Vec<_>, String>>()?;
        EigenvalueFamily::new(kind, members).map_err(|e| e.to_string())
    }

    /// Weil members with base `metadata.q` (or `metadata.a`); exact when
    /// every root of a member is given as an `{r, s, k}` triple.
    pub fn weil_members(&self) -> Result<Vec<WeilMember>, String> {
        if self.kind != KindTag::Weil {
            return Err("expected a family of kind \"weil\"".to_string());
        }
        let q = self.metadata.q.or(self.metadata.a).ok_or("weil families need metadata.q or metadata.a")?;
        self.members
            .iter()
            .map(|m| {
                let exact: Option<Vec<_>> = m
                    .eigenvalues
                    .iter()
                    .map(|e| match e {
                        EigenvalueEntry::Exact { r, s, k } => Some((r, s, *k)),
                        _ => None,
                    })
                    .collect();
                let member = match exact {
                    Some(triples) => {
                        let triples = triples
                            .into_iter()
                            .map(|(r, s, k)| Ok((r.to_rational()?, s.to_rational()?, k)))
                            .collect::<Result<Vec<_>, String>>()?;
                        WeilMember::exact(q, triples)
                    }
                    None => WeilMember::float(
                        q,
                        m.eigenvalues.iter().map(to_complex).collect::<Result<Vec<_>, _>>()?,
                    ),
                };
                member.map_err(|e| e.to_string())
            })
            .collect()
    }
}

fn to_complex(e: &EigenvalueEntry) -> Result<Complex64, String> {
    match e {
        EigenvalueEntry::Real(x) => Ok(Complex64::new(*x, 0.0)),
        EigenvalueEntry::Pair([re, im]) => Ok(Complex64::new(*re, *im)),
        EigenvalueEntry::Exact { r, s, k } => {
            let r = r.to_rational()?;
            let s = s.to_rational()?;
            let k = *k;
            Ok(msk_core::QuadElem::new(r, s).to_complex(k))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moment_parse_reports_position() {
        let err = parse_moments("1\n0.5\n  abc\n", "m.txt").unwrap_err();
        match err {
            InputError::Parse { line, column, .. } => assert_eq!((line, column), (3, 3)),
            other => panic!("{other}"),
        }
        assert_eq!(parse_moments("# header\n1\n\n0.5\n", "m").unwrap(), vec![1.0, 0.5]);
        assert!(parse_moments("\n", "m").is_err());
    }

    #[test]
    fn family_entries() {
        let text = r#"{"version": 1, "kind": "weil", "metadata": {"q": 3},
            "members": [{"n": 1, "eigenvalues": [{"r": 0, "s": 1, "k": 2}, {"r": "0", "s": "-1", "k": 2}]}]}"#;
        let file: FamilyFile = serde_json::from_str(text).unwrap();
        file.validate().unwrap();
        let members = file.weil_members().unwrap();
        assert!(members[0].is_exact());
        assert!(file.family().is_err());

        let text = r#"{"version": 1, "kind": "constant-modulus",
            "members": [{"n": 2, "eigenvalues": [[1.0, 0.0], -1.0]}]}"#;
        let file: FamilyFile = serde_json::from_str(text).unwrap();
        let fam = file.family().unwrap();
        assert_eq!(fam.members()[0].eigenvalues[1], Complex64::new(-1.0, 0.0));

        let bad = FamilyFile { version: 2, ..file.clone() };
        assert!(bad.validate().is_err());
        let short = FamilyFile {
            members: vec![MemberEntry { n: 3, eigenvalues: vec![EigenvalueEntry::Real(1.0)] }],
            ..file
        };
        assert!(short.validate().unwrap_err().contains("expected 3"));
    }
}
