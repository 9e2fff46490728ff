#![allow(dead_code)]

use std::path::PathBuf;

use hochlie_core::dsl::parse_presentation;
use hochlie_core::{build_algebra, AlgebraTable, FieldDescriptor, Presentation, Quiver, Relation};

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

pub fn corpus_names() -> Vec<String> {
    let mut names: Vec<String> = std::fs::read_dir(corpus_dir())
        .unwrap()
        .filter_map(|e| {
            let n = e.ok()?.file_name().into_string().ok()?;
            n.strip_suffix(".quiver").map(str::to_string)
        })
        .collect();
    names.sort();
    names
}

pub fn presentation(name: &str) -> Presentation {
    let text = std::fs::read_to_string(corpus_dir().join(format!("{name}.quiver"))).unwrap();
    parse_presentation(&text, None).unwrap()
}

pub fn algebra(name: &str) -> AlgebraTable {
    build_algebra(&presentation(name)).unwrap()
}

pub fn corpus() -> Vec<(String, AlgebraTable)> {
    corpus_names().into_iter().map(|n| (n.clone(), algebra(&n))).collect()
}

pub fn quiver(vs: &[&str], arrows: &[(&str, &str, &str)]) -> Quiver {
    Quiver::new(vs, arrows).unwrap()
}

/// Relations given as `(coefficient, "a*b*c")` terms.
pub fn relations(f: FieldDescriptor, rels: &[&[(i64, &str)]]) -> Vec<Relation> {
    rels.iter()
        .map(|terms| {
            Relation::new(terms.iter().map(|(c, p)| (f.from_i64(*c), p.split('*').map(String::from).collect())))
        })
        .collect()
}

pub fn build(vs: &[&str], arrows: &[(&str, &str, &str)], rels: &[&[(i64, &str)]]) -> AlgebraTable {
    let f = FieldDescriptor::Rationals;
    build_algebra(&Presentation::new(quiver(vs, arrows), relations(f, rels), f)).unwrap()
}
