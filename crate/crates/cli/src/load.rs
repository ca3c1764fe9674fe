use std::fs;
use std::path::{Path, PathBuf};

use hyperbck::format::{parse_morphism, parse_structure, FormatError, Structure};
use hyperbck::{Error, FuzzyHom, FuzzyHyperBCK, FuzzyValue, Hom};

/// Anything that stops a command before it can compute: exit code 2.
#[derive(Debug)]
pub enum InputError {
    Io { path: PathBuf, message: String },
    Format { path: PathBuf, error: FormatError },
    Invalid { path: PathBuf, error: Error },
    Usage(String),
}

impl InputError {
    pub fn to_record(&self) -> serde_json::Value {
        use serde_json::json;
        match self {
            InputError::Io { path, message } => json!({
                "record": "error", "code": "io", "file": path.display().to_string(), "message": message,
            }),
            InputError::Format { path, error } => json!({
                "record": "error",
                "code": error.code.as_str(),
                "file": path.display().to_string(),
                "line": error.line,
                "column": error.column,
                "message": error.message,
            }),
            InputError::Invalid { path, error } => json!({
                "record": "error", "code": "invalid-input", "file": path.display().to_string(),
                "message": error.to_string(),
            }),
            InputError::Usage(message) => json!({"record": "error", "code": "usage", "message": message}),
        }
    }
}

fn read(path: &Path) -> Result<String, InputError> {
    fs::read_to_string(path)
        .map_err(|e| InputError::Io { path: path.to_path_buf(), message: e.to_string() })
}

pub fn structure(path: &Path) -> Result<Structure, InputError> {
    parse_structure(&read(path)?)
        .map_err(|error| InputError::Format { path: path.to_path_buf(), error })
}

pub fn fuzzy_structure(path: &Path) -> Result<FuzzyHyperBCK, InputError> {
    match structure(path)? {
        Structure::Fuzzy(f) => Ok(f),
        Structure::Crisp(_) => Err(InputError::Usage(format!(
            "{} has no `mu` block; this command needs a fuzzy structure",
            path.display()
        ))),
    }
}

/// Crisp structures take part in constructions with full membership.
pub fn as_fuzzy(s: Structure) -> FuzzyHyperBCK {
    match s {
        Structure::Fuzzy(f) => f,
        Structure::Crisp(a) => FuzzyHyperBCK::constant(a, FuzzyValue::ONE),
    }
}

pub struct LoadedMorphism {
    pub source: Structure,
    pub target: Structure,
    pub hom: Result<Hom, Error>,
}

pub fn morphism(path: &Path) -> Result<LoadedMorphism, InputError> {
    let doc = parse_morphism(&read(path)?)
        .map_err(|error| InputError::Format { path: path.to_path_buf(), error })?;
    let base = path.parent().unwrap_or(Path::new("."));
    let source = structure(&base.join(&doc.source))?;
    let target = structure(&base.join(&doc.target))?;
    let hom = Hom::from_labels(source.alg().clone(), target.alg().clone(), &doc.map);
    if let Err(e @ Error::UnknownLabel(_)) = &hom {
        return Err(InputError::Invalid { path: path.to_path_buf(), error: e.clone() });
    }
    Ok(LoadedMorphism { source, target, hom })
}

/// A morphism file that must describe a fuzzy homomorphism.
pub fn fuzzy_morphism(path: &Path) -> Result<FuzzyHom, InputError> {
    let m = morphism(path)?;
    let invalid = |error| InputError::Invalid { path: path.to_path_buf(), error };
    let hom = m.hom.map_err(invalid)?;
    FuzzyHom::new(hom, as_fuzzy(m.source), as_fuzzy(m.target)).map_err(invalid)
}
