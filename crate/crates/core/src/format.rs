//! The structure document format.
//!
//! A structure is a JSON object:
//!
//! ```text
//! document := "{" "carrier" ":" [label, ..]
//!               "," "zero" ":" label
//!               "," "table" ":" { "x,y" : [label, ..], .. }
//!             [ "," "mu" ":" { label : degree, .. } ] "}"
//! label    := JSON string, non-empty, without ','
//! degree   := JSON string "p/q" or "0" / "1" (decimal digits only)
//! ```
//!
//! The table must have exactly one key per ordered pair of carrier labels
//! and every cell must be non-empty. When `mu` is present it must assign a
//! degree in `[0,1]` to every label. Rendering lists cells row-major in
//! carrier order, so documents are stable under round trips.

use std::fmt;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::fuzzy::{FuzzyHyperBCK, FuzzyValue};
use crate::hyper::{Carrier, HyperBCK};
use crate::subset::{Subset, MAX_CARRIER};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureDocument {
    pub carrier: Vec<String>,
    pub zero: String,
    pub table: IndexMap<String, Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<IndexMap<String, String>>,
}

/// A parsed structure: crisp when the document has no `mu` block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Structure {
    Crisp(HyperBCK),
    Fuzzy(FuzzyHyperBCK),
}

impl Structure {
    pub fn alg(&self) -> &HyperBCK {
        match self {
            Structure::Crisp(a) => a,
            Structure::Fuzzy(f) => f.alg(),
        }
    }

    pub fn fuzzy(&self) -> Option<&FuzzyHyperBCK> {
        match self {
            Structure::Crisp(_) => None,
            Structure::Fuzzy(f) => Some(f),
        }
    }
}

impl From<HyperBCK> for Structure {
    fn from(a: HyperBCK) -> Self {
        Structure::Crisp(a)
    }
}

impl From<FuzzyHyperBCK> for Structure {
    fn from(f: FuzzyHyperBCK) -> Self {
        Structure::Fuzzy(f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FormatErrorCode {
    Syntax,
    EmptyCarrier,
    InvalidLabel,
    DuplicateLabel,
    UnknownLabel,
    BadKey,
    EmptyCell,
    NonTotalTable,
    BadDegree,
    DegreeOutOfRange,
    IncompleteMu,
}

impl FormatErrorCode {
    pub fn as_str(self) -> &'static str {
        match self {
            FormatErrorCode::Syntax => "syntax",
            FormatErrorCode::EmptyCarrier => "empty-carrier",
            FormatErrorCode::InvalidLabel => "invalid-label",
            FormatErrorCode::DuplicateLabel => "duplicate-label",
            FormatErrorCode::UnknownLabel => "unknown-label",
            FormatErrorCode::BadKey => "bad-pair-key",
            FormatErrorCode::EmptyCell => "empty-cell",
            FormatErrorCode::NonTotalTable => "non-total-table",
            FormatErrorCode::BadDegree => "bad-degree",
            FormatErrorCode::DegreeOutOfRange => "degree-out-of-range",
            FormatErrorCode::IncompleteMu => "incomplete-mu",
        }
    }
}

impl fmt::Display for FormatErrorCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A document error. `line` and `column` are 1-based; 0 means the position
/// is unknown (documents built in memory).
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{code} at {line}:{column}: {message}")]
pub struct FormatError {
    pub code: FormatErrorCode,
    pub line: usize,
    pub column: usize,
    pub message: String,
}

/// Finds the first occurrence of `needle` as a JSON string token.
fn locate(source: Option<&str>, needle: &str) -> (usize, usize) {
    let Some(text) = source else { return (0, 0) };
    let quoted = serde_json::to_string(needle).unwrap_or_default();
    match text.find(&quoted) {
        None => (0, 0),
        Some(at) => {
            let before = &text[..at];
            let line = before.matches('\n').count() + 1;
            let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
            (line, column)
        }
    }
}

struct Builder<'a> {
    source: Option<&'a str>,
}

impl Builder<'_> {
    fn err(&self, code: FormatErrorCode, near: &str, message: impl Into<String>) -> FormatError {
        let (line, column) = locate(self.source, near);
        FormatError { code, line, column, message: message.into() }
    }

    fn build(&self, doc: &StructureDocument) -> Result<Structure, FormatError> {
        use FormatErrorCode::*;
        if doc.carrier.is_empty() {
            return Err(self.err(EmptyCarrier, "carrier", "carrier must list at least one label"));
        }
        if doc.carrier.len() > MAX_CARRIER {
            return Err(self.err(
                InvalidLabel,
                "carrier",
                format!("at most {MAX_CARRIER} elements are supported"),
            ));
        }
        for (i, l) in doc.carrier.iter().enumerate() {
            if l.is_empty() || l.contains(',') {
                return Err(self.err(InvalidLabel, l, format!("label `{l}` is empty or contains ','")));
            }
            if doc.carrier[..i].contains(l) {
                return Err(self.err(DuplicateLabel, l, format!("label `{l}` declared twice")));
            }
        }
        let index = |l: &str, near: &str| -> Result<usize, FormatError> {
            doc.carrier
                .iter()
                .position(|c| c == l)
                .ok_or_else(|| self.err(UnknownLabel, near, format!("unknown label `{l}`")))
        };
        let zero = index(&doc.zero, "zero")?;
        let n = doc.carrier.len();
        let mut cells: Vec<Option<Subset>> = vec![None; n * n];
        for (key, value) in &doc.table {
            let Some((x, y)) = key.split_once(',') else {
                return Err(self.err(BadKey, key, format!("pair key `{key}` is not of the form `x,y`")));
            };
            let (x, y) = (index(x, key)?, index(y, key)?);
            if value.is_empty() {
                return Err(self.err(EmptyCell, key, format!("empty hyperoperation cell `{key}`")));
            }
            let mut cell = Subset::EMPTY;
            for l in value {
                cell.insert(index(l, key)?);
            }
            cells[x * n + y] = Some(cell);
        }
        if let Some(k) = cells.iter().position(Option::is_none) {
            let key = format!("{},{}", doc.carrier[k / n], doc.carrier[k % n]);
            return Err(self.err(NonTotalTable, "table", format!("missing cell `{key}`")));
        }
        let carrier = Carrier::new(doc.carrier.iter().cloned(), zero)
            .map_err(|e| self.err(InvalidLabel, "carrier", e.to_string()))?;
        let alg = HyperBCK::new(carrier, cells.into_iter().map(Option::unwrap).collect())
            .map_err(|e| self.err(EmptyCell, "table", e.to_string()))?;
        let Some(mu_doc) = &doc.mu else {
            return Ok(Structure::Crisp(alg));
        };
        let mut mu = vec![None; n];
        for (label, degree) in mu_doc {
            let i = index(label, "mu")?;
            mu[i] = Some(parse_degree(degree).map_err(|code| {
                self.err(code, degree, format!("degree `{degree}` for `{label}` is not a rational in [0,1]"))
            })?);
        }
        if let Some(i) = mu.iter().position(Option::is_none) {
            return Err(self.err(
                IncompleteMu,
                "mu",
                format!("no degree for `{}`", doc.carrier[i]),
            ));
        }
        let mu = mu.into_iter().map(Option::unwrap).collect();
        Ok(Structure::Fuzzy(FuzzyHyperBCK::new(alg, mu).expect("total membership")))
    }
}

fn parse_degree(s: &str) -> Result<FuzzyValue, FormatErrorCode> {
    let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
    let well_formed = match s.split_once('/') {
        Some((p, q)) => digits(p) && digits(q),
        None => digits(s),
    };
    if !well_formed {
        return Err(FormatErrorCode::BadDegree);
    }
    s.parse().map_err(|_| FormatErrorCode::DegreeOutOfRange)
}

impl StructureDocument {
    pub fn from_structure(s: &Structure) -> Self {
        let alg = s.alg();
        let c = alg.carrier();
        let labels = |set: Subset| set.iter().map(|i| c.label(i).to_string()).collect();
        let mut table = IndexMap::new();
        for x in 0..alg.len() {
            for y in 0..alg.len() {
                table.insert(format!("{},{}", c.label(x), c.label(y)), labels(alg.star(x, y)));
            }
        }
        let mu = s.fuzzy().map(|f| {
            (0..f.len()).map(|i| (c.label(i).to_string(), f.mu(i).to_string())).collect()
        });
        StructureDocument {
            carrier: c.labels().to_vec(),
            zero: c.label(alg.zero()).to_string(),
            table,
            mu,
        }
    }

    pub fn to_structure(&self) -> Result<Structure, FormatError> {
        Builder { source: None }.build(self)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents serialize");
        s.push('\n');
        s
    }
}

pub fn parse_document(text: &str) -> Result<StructureDocument, FormatError> {
    serde_json::from_str(text).map_err(|e| FormatError {
        code: FormatErrorCode::Syntax,
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

/// Parses and shape-checks a structure. Axioms are not validated here.
pub fn parse_structure(text: &str) -> Result<Structure, FormatError> {
    let doc = parse_document(text)?;
    Builder { source: Some(text) }.build(&doc)
}

pub fn render_structure(s: &Structure) -> String {
    StructureDocument::from_structure(s).to_json()
}

/// A morphism between two structure files: paths are resolved relative to
/// the morphism document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismDocument {
    pub source: String,
    pub target: String,
    pub map: IndexMap<String, String>,
}

pub fn parse_morphism(text: &str) -> Result<MorphismDocument, FormatError> {
    serde_json::from_str(text).map_err(|e| FormatError {
        code: FormatErrorCode::Syntax,
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::chain_example;

    #[test]
    fn trivial_round_trip() {
        let t = Structure::Crisp(HyperBCK::trivial("O").unwrap());
        let text = render_structure(&t);
        assert_eq!(parse_structure(&text).unwrap(), t);
        assert!(!text.contains("mu"));
    }

    #[test]
    fn chain_document_matches_generator() {
        let text = r#"{
  "carrier": ["1", "2", "3"],
  "zero": "1",
  "table": {
    "1,1": ["1"], "1,2": ["1"], "1,3": ["1"],
    "2,1": ["2"], "2,2": ["1", "2"], "2,3": ["1", "2"],
    "3,1": ["3"], "3,2": ["2"], "3,3": ["1", "2", "3"]
  },
  "mu": {"1": "1", "2": "1/2", "3": "1/3"}
}"#;
        let parsed = parse_structure(text).unwrap();
        assert_eq!(parsed, Structure::Fuzzy(chain_example(3).unwrap()));
        let rendered = render_structure(&parsed);
        assert_eq!(parse_document(&rendered).unwrap(), StructureDocument::from_structure(&parsed));
    }

    fn code_of(text: &str) -> FormatError {
        parse_structure(text).unwrap_err()
    }

    #[test]
    fn error_codes() {
        use FormatErrorCode::*;
        let e = code_of(r#"{"carrier": ["0", "a"], "zero": "0", "table": {"0,0": ["0"], "0,a": ["0"], "a,0": ["a"], "a,a": []}}"#);
        assert_eq!(e.code, EmptyCell);
        assert!(e.message.contains("empty hyperoperation cell"));
        assert_eq!((e.line, e.column), (1, 90));

        let e = code_of(r#"{"carrier": ["0"], "zero": "0", "table": {"0,0": ["x"]}}"#);
        assert_eq!(e.code, UnknownLabel);
        let e = code_of(r#"{"carrier": ["0", "a"], "zero": "0", "table": {"0,0": ["0"]}}"#);
        assert_eq!(e.code, NonTotalTable);
        let e = code_of(r#"{"carrier": ["0"], "zero": "0", "table": {"0,0": ["0"]}, "mu": {"0": "3/2"}}"#);
        assert_eq!(e.code, DegreeOutOfRange);
        let e = code_of(r#"{"carrier": ["0"], "zero": "0", "table": {"0,0": ["0"]}, "mu": {"0": "0.5"}}"#);
        assert_eq!(e.code, BadDegree);
        let e = code_of(r#"{"carrier": ["0", "a"], "zero": "0", "table": {"0,0": ["0"], "0,a": ["0"], "a,0": ["a"], "a,a": ["0"]}, "mu": {"0": "1"}}"#);
        assert_eq!(e.code, IncompleteMu);
        let e = code_of(r#"{"carrier": ["0"], "zero": "0", "table": {"00": ["0"]}}"#);
        assert_eq!(e.code, BadKey);
        let e = code_of(r#"{"carrier": ["0", "0"], "zero": "0", "table": {}}"#);
        assert_eq!(e.code, DuplicateLabel);
        let e = code_of(r#"{"carrier": [], "zero": "0", "table": {}}"#);
        assert_eq!(e.code, EmptyCarrier);
        let e = code_of(r#"{"carrier": ["0"], "zero": "z", "table": {"0,0": ["0"]}}"#);
        assert_eq!(e.code, UnknownLabel);
        let e = code_of("{\"carrier\": [\"0\"],\n \"zero\": }");
        assert_eq!(e.code, Syntax);
        assert_eq!(e.line, 2);
        let e = code_of(r#"{"carrier": ["0"], "zero": "0", "table": {"0,0": ["0"]}, "extra": 1}"#);
        assert_eq!(e.code, Syntax);
    }
}
