//! Regenerates the built-in corpus documents from the in-code models:
//! `cargo run -p purity-cli --example export_corpus`.

use std::path::Path;

use purity_cli::document::{to_toml, Document};
use purity_core::models;
use purity_core::twogroup::is_two_group;

fn file_stem(name: &str) -> String {
    match name {
        "1" => "trivial".into(),
        other => other
            .replace("))", "")
            .replace(['(', ')'], "_")
            .trim_end_matches('_')
            .to_string(),
    }
}

fn main() -> std::io::Result<()> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus");
    let write = |doc: &Document| -> std::io::Result<String> {
        let stem = file_stem(doc.name());
        std::fs::write(dir.join(format!("{stem}.toml")), to_toml(doc))?;
        Ok(stem)
    };
    let mut probes = Vec::new();
    let mut groups = Vec::new();
    for m in models::corpus() {
        let two_group = m.symmetric && is_two_group(&m).is_two_group;
        let stem = write(&Document::Monoidal(m))?;
        if two_group {
            groups.push(stem.clone());
        }
        probes.push(stem);
    }
    let mut monoids = Vec::new();
    for m in models::monoids() {
        monoids.push(write(&Document::Monoid(m))?);
    }
    for (name, members) in [
        ("probes", probes),
        ("two_groups", groups),
        ("monoids", monoids),
    ] {
        write(&Document::Corpus {
            name: name.into(),
            members,
        })?;
    }
    Ok(())
}
