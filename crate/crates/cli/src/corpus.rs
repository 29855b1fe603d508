//! Built-in documents, compiled into the binary so every command can run
//! without a checkout. Regenerate with the `export_corpus` example.

use std::path::{Path, PathBuf};

use crate::document::{parse_document, Document};

macro_rules! builtin {
    ($($name:literal),* $(,)?) => {
        &[$(($name, include_str!(concat!("../corpus/", $name, ".toml")))),*]
    };
}

/// `(name, text)` for every built-in document, in listing order.
pub const BUILTIN: &[(&str, &str)] = builtin![
    "terminal",
    "i0_C2",
    "i1_C2",
    "i0_Z3",
    "i0_ML",
    "i1_L",
    "i1_ML",
    "Poset2",
    "R_i0_C2",
    "trivial",
    "C2",
    "Z3",
    "L",
    "ML",
    "probes",
    "two_groups",
    "monoids",
];

pub fn builtin(name: &str) -> Option<&'static str> {
    BUILTIN.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("{0}: no such file or built-in document")]
    NotFound(String),
    #[error("{origin}: {source}")]
    Io {
        origin: String,
        source: std::io::Error,
    },
    #[error("{origin}: {source}")]
    Parse {
        origin: String,
        source: crate::document::Diagnostic,
    },
    #[error("{origin}: corpus documents cannot be nested")]
    Nested { origin: String },
}

/// Resolves a reference: a file path, the same path with `.toml` appended,
/// or the name of a built-in document, in that order.
pub fn load(reference: &str) -> Result<Document, LoadError> {
    load_from(reference).map(|(doc, _)| doc)
}

fn load_from(reference: &str) -> Result<(Document, Option<PathBuf>), LoadError> {
    let (origin, text, path) = read(reference)?;
    parse_document(&text)
        .map(|doc| (doc, path))
        .map_err(|source| LoadError::Parse { origin, source })
}

fn file_for(reference: &str) -> Option<PathBuf> {
    [
        PathBuf::from(reference),
        PathBuf::from(format!("{reference}.toml")),
    ]
    .into_iter()
    .find(|p| p.is_file())
}

fn read(reference: &str) -> Result<(String, String, Option<PathBuf>), LoadError> {
    if let Some(path) = file_for(reference) {
        let origin = path.display().to_string();
        return match std::fs::read_to_string(&path) {
            Ok(text) => Ok((origin, text, Some(path))),
            Err(source) => Err(LoadError::Io { origin, source }),
        };
    }
    builtin(reference)
        .map(|t| (format!("builtin:{reference}"), t.to_string(), None))
        .ok_or_else(|| LoadError::NotFound(reference.to_string()))
}

/// Loads a reference and, if it is a corpus, every member instead. Members
/// of a corpus file are looked up next to it before anywhere else.
pub fn load_all(reference: &str) -> Result<Vec<(String, Document)>, LoadError> {
    let (doc, path) = load_from(reference)?;
    let Document::Corpus { members, .. } = doc else {
        return Ok(vec![(reference.to_string(), doc)]);
    };
    let dir = path.as_deref().and_then(Path::parent);
    members
        .iter()
        .map(|member| {
            let local = dir
                .map(|d| d.join(member).display().to_string())
                .filter(|p| file_for(p).is_some());
            let doc = load(local.as_deref().unwrap_or(member))?;
            if let Document::Corpus { .. } = doc {
                return Err(LoadError::Nested {
                    origin: member.clone(),
                });
            }
            Ok((member.clone(), doc))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::document::to_toml;
    use purity_core::models;

    #[test]
    fn builtin_documents_match_models() {
        let monoidal: Vec<_> = models::corpus()
            .into_iter()
            .map(Document::Monoidal)
            .collect();
        let monoids: Vec<_> = models::monoids()
            .into_iter()
            .map(Document::Monoid)
            .collect();
        for expected in monoidal.iter().chain(&monoids) {
            let found = BUILTIN
                .iter()
                .map(|(_, text)| parse_document(text).unwrap())
                .find(|d| d.name() == expected.name())
                .unwrap_or_else(|| panic!("{} is not built in", expected.name()));
            assert_eq!(&found, expected);
        }
    }

    #[test]
    fn builtin_text_is_canonical() {
        for (name, text) in BUILTIN {
            let doc = parse_document(text).unwrap();
            assert_eq!(&to_toml(&doc), text, "{name} is not in canonical layout");
        }
    }

    #[test]
    fn corpora_expand() {
        assert_eq!(load_all("probes").unwrap().len(), 9);
        assert_eq!(load_all("i0_C2").unwrap().len(), 1);
        assert!(matches!(load("nonexistent"), Err(LoadError::NotFound(_))));
    }
}
