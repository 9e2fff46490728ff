//! Fixture presentations shared by the benchmarks.

use std::path::PathBuf;

use hochlie_core::dsl::parse_presentation;
use hochlie_core::{FieldDescriptor, Presentation, Quiver, Relation};

/// A presentation from the shipped corpus, by file stem.
pub fn corpus(name: &str) -> Presentation {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(format!("{name}.quiver"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    parse_presentation(&text, None).expect("corpus presentation parses")
}

/// `k[x]/(x^n)`.
pub fn truncated_poly(n: usize) -> Presentation {
    let f = FieldDescriptor::Rationals;
    let q = Quiver::new(&["1"], &[("x", "1", "1")]).unwrap();
    Presentation::new(q, vec![Relation::new([(f.one(), vec!["x".to_string(); n])])], f)
}

/// `n` consecutive Kronecker pairs `a_i, b_i : i → i+1` with the skew
/// relations `a_i a_{i+1}`, `b_i b_{i+1}`, `a_i b_{i+1} + b_i a_{i+1}`.
pub fn kronecker_line(n: usize) -> Presentation {
    let f = FieldDescriptor::Rationals;
    let vs: Vec<String> = (0..=n).map(|i| i.to_string()).collect();
    let mut arrows = Vec::new();
    for i in 0..n {
        arrows.push((format!("a{i}"), vs[i].clone(), vs[i + 1].clone()));
        arrows.push((format!("b{i}"), vs[i].clone(), vs[i + 1].clone()));
    }
    let q = Quiver::new(&vs, &arrows).unwrap();
    let path = |x: &str, i: usize, y: &str| vec![format!("{x}{i}"), format!("{y}{}", i + 1)];
    let mut rels = Vec::new();
    for i in 0..n.saturating_sub(1) {
        rels.push(Relation::new([(f.one(), path("a", i, "a"))]));
        rels.push(Relation::new([(f.one(), path("b", i, "b"))]));
        rels.push(Relation::new([(f.one(), path("a", i, "b")), (f.one(), path("b", i, "a"))]));
    }
    Presentation::new(q, rels, f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use hochlie_core::{build_algebra, hh1};

    #[test]
    fn fixtures_build() {
        assert_eq!(build_algebra(&truncated_poly(6)).unwrap().dim(), 6);
        let a = build_algebra(&kronecker_line(3)).unwrap();
        assert_eq!(hh1(&a, false).dim(), 3);
        assert_eq!(build_algebra(&corpus("kronecker")).unwrap().dim(), 4);
    }
}
