//! Finite-dimensional quotients `kQ/I` as explicit multiplication tables.

pub mod groebner;
pub mod table;

use std::collections::HashMap;

use crate::error::AlgebraError;
use crate::field::{FieldDescriptor, Scalar};
use crate::linalg::{Span, Vector};
use crate::quiver::Quiver;

pub use groebner::{Poly, Word};
pub use table::MultTable;

pub const DEFAULT_MAX_LENGTH: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coef: Scalar,
    /// Arrow labels, composed left to right.
    pub path: Vec<String>,
}

/// A k-linear combination of parallel paths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub terms: Vec<Term>,
}

impl Relation {
    pub fn new(terms: impl IntoIterator<Item = (Scalar, Vec<String>)>) -> Self {
        Relation { terms: terms.into_iter().map(|(coef, path)| Term { coef, path }).collect() }
    }

    /// A single monomial relation given as arrow labels.
    pub fn monomial(field: FieldDescriptor, path: &[&str]) -> Self {
        Relation::new([(field.one(), path.iter().map(|s| s.to_string()).collect())])
    }

    pub fn scaled(&self, c: &Scalar) -> Relation {
        Relation { terms: self.terms.iter().map(|t| Term { coef: &t.coef * c, path: t.path.clone() }).collect() }
    }
}

/// Quiver, relations and ground field: the raw input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub quiver: Quiver,
    pub relations: Vec<Relation>,
    pub field: FieldDescriptor,
    pub max_length_cap: usize,
}

impl Presentation {
    pub fn new(quiver: Quiver, relations: Vec<Relation>, field: FieldDescriptor) -> Self {
        Presentation { quiver, relations, field, max_length_cap: DEFAULT_MAX_LENGTH }
    }

    /// The same algebra with arrows declared in a different order.
    pub fn with_arrow_order(&self, order: &[usize]) -> Presentation {
        Presentation { quiver: self.quiver.with_arrow_order(order), ..self.clone() }
    }

    /// Presentation of `A / rad(A)^2`: every path of length two becomes a relation.
    pub fn radical_square_zero(&self) -> Presentation {
        let q = &self.quiver;
        let mut relations = Vec::new();
        for a in q.arrows() {
            for b in q.arrows().iter().filter(|b| b.source == a.target) {
                relations.push(Relation::new([(self.field.one(), vec![a.label.clone(), b.label.clone()])]));
            }
        }
        Presentation { relations, ..self.clone() }
    }

    /// Resolves arrow labels to a path, checking composability.
    pub fn word(&self, labels: &[String]) -> Result<Word, AlgebraError> {
        let q = &self.quiver;
        let mut w = Vec::with_capacity(labels.len());
        for l in labels {
            w.push(q.arrow_by_label(l).ok_or_else(|| AlgebraError::InvalidArrow(l.clone()))?);
        }
        for pair in w.windows(2) {
            if q.arrow(pair[0]).target != q.arrow(pair[1]).source {
                return Err(AlgebraError::NotComposable(labels.join("*")));
            }
        }
        Ok(Word(w))
    }

    fn relation_poly(&self, rel: &Relation) -> Result<Poly, AlgebraError> {
        let q = &self.quiver;
        let mut poly = Poly::new();
        let mut ends: Option<(usize, usize)> = None;
        for t in &rel.terms {
            if t.coef.is_zero() {
                continue;
            }
            if t.path.len() < 2 {
                return Err(AlgebraError::NotAdmissible(format!(
                    "monomial `{}` has length {} < 2",
                    t.path.join("*"),
                    t.path.len()
                )));
            }
            let w = self.word(&t.path)?;
            let e = (q.arrow(w.0[0]).source, q.arrow(*w.0.last().unwrap()).target);
            match ends {
                None => ends = Some(e),
                Some(prev) if prev != e => {
                    return Err(AlgebraError::NotAdmissible(format!(
                        "terms of `{}` are not parallel",
                        t.path.join("*")
                    )))
                }
                _ => {}
            }
            groebner::add_term(&mut poly, w, t.coef.clone());
        }
        Ok(poly)
    }
}

/// A basis monomial: a trivial path `e_v` (empty word) or a normal path.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub source: usize,
    pub target: usize,
    pub word: Word,
}

impl Monomial {
    pub fn is_trivial(&self) -> bool {
        self.word.is_empty()
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }
}

/// Coefficient vector over an [`AlgebraTable`] basis.
pub type Element = Vector;

/// Certified finite-dimensional algebra `kQ/I` with its multiplication table.
#[derive(Clone, Debug)]
pub struct AlgebraTable {
    presentation: Presentation,
    basis: Vec<Monomial>,
    index: HashMap<Word, usize>,
    table: MultTable,
    groebner: Vec<Poly>,
    relation_polys: Vec<Poly>,
    radical: Vec<Span>,
    nil_length: usize,
}

/// Builds the algebra table of a presentation.
pub fn build_algebra(p: &Presentation) -> Result<AlgebraTable, AlgebraError> {
    AlgebraTable::build(p)
}

impl AlgebraTable {
    pub fn build(p: &Presentation) -> Result<Self, AlgebraError> {
        let q = &p.quiver;
        let relation_polys: Vec<Poly> =
            p.relations.iter().map(|r| p.relation_poly(r)).collect::<Result<Vec<_>, _>>()?;
        let cert = groebner::certify(relation_polys.clone(), q, p.max_length_cap)?;

        let mut basis: Vec<Monomial> =
            (0..q.vertex_count()).map(|v| Monomial { source: v, target: v, word: Word(vec![]) }).collect();
        for w in &cert.normal {
            basis.push(Monomial {
                source: q.arrow(w.0[0]).source,
                target: q.arrow(*w.0.last().unwrap()).target,
                word: w.clone(),
            });
        }
        let index: HashMap<Word, usize> =
            basis.iter().enumerate().filter(|(_, m)| !m.is_trivial()).map(|(i, m)| (m.word.clone(), i)).collect();
        for a in 0..q.arrow_count() {
            // admissibility keeps every arrow normal
            debug_assert!(index.contains_key(&Word(vec![a])));
        }

        let labels = basis.iter().map(|m| monomial_label(q, m)).collect();
        let mut alg = AlgebraTable {
            presentation: p.clone(),
            basis,
            index,
            table: MultTable {
                field: p.field,
                labels,
                products: Vec::new(),
                idempotents: (0..q.vertex_count()).collect(),
                table_only: false,
            },
            groebner: cert.basis,
            relation_polys,
            radical: Vec::new(),
            nil_length: cert.nil_length,
        };
        alg.table.products = alg.compute_products();
        alg.radical = alg.compute_radical();
        Ok(alg)
    }

    fn compute_products(&self) -> Vec<Vec<Vec<(usize, Scalar)>>> {
        let d = self.dim();
        let one = self.field().one();
        let mut products = vec![vec![Vec::new(); d]; d];
        for i in 0..d {
            for j in 0..d {
                let (x, y) = (&self.basis[i], &self.basis[j]);
                if x.target != y.source {
                    continue;
                }
                products[i][j] = if x.is_trivial() {
                    vec![(j, one.clone())]
                } else if y.is_trivial() {
                    vec![(i, one.clone())]
                } else {
                    self.reduce_word_sparse(&x.word.concat(&y.word.0))
                };
            }
        }
        products
    }

    fn reduce_word_sparse(&self, w: &Word) -> Vec<(usize, Scalar)> {
        let mut p = Poly::new();
        p.insert(w.clone(), self.field().one());
        let r = groebner::reduce(p, &self.groebner);
        let mut out: Vec<(usize, Scalar)> =
            r.into_iter().map(|(w, c)| (*self.index.get(&w).expect("normal word in basis"), c)).collect();
        out.sort_by_key(|x| x.0);
        out
    }

    fn compute_radical(&self) -> Vec<Span> {
        let d = self.dim();
        let f = self.field();
        let mut powers =
            vec![Span::from_vectors(f, d, &(0..d).map(|i| self.table.basis_vector(i)).collect::<Vec<_>>())];
        let rad1: Vec<Vector> = (self.vertex_count()..d).map(|i| self.table.basis_vector(i)).collect();
        powers.push(Span::from_vectors(f, d, &rad1));
        let arrows: Vec<usize> = (0..self.quiver().arrow_count()).map(|a| self.arrow_index(a)).collect();
        while powers.last().unwrap().dim() > 0 {
            let prev = powers.last().unwrap().basis();
            let mut next = Span::new(f, d);
            for v in &prev {
                for &a in &arrows {
                    next.insert(&self.table.mul_right_basis(v, a));
                }
            }
            powers.push(next);
        }
        powers
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn quiver(&self) -> &Quiver {
        &self.presentation.quiver
    }

    pub fn field(&self) -> FieldDescriptor {
        self.presentation.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.quiver().vertex_count()
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn table(&self) -> &MultTable {
        &self.table
    }

    /// Reduced Gröbner basis of the ideal of relations.
    pub fn groebner(&self) -> &[Poly] {
        &self.groebner
    }

    /// The declared relations as path polynomials.
    pub fn relation_polys(&self) -> &[Poly] {
        &self.relation_polys
    }

    /// Smallest `L` such that every path of length `L` vanishes.
    pub fn nil_length(&self) -> usize {
        self.nil_length
    }

    pub fn label(&self, i: usize) -> &str {
        &self.table.labels[i]
    }

    /// Basis index of the idempotent at vertex `v`.
    pub fn idempotent_index(&self, v: usize) -> usize {
        v
    }

    /// Basis index of arrow `a` (declaration index).
    pub fn arrow_index(&self, a: usize) -> usize {
        self.index[&Word(vec![a])]
    }

    pub fn word_index(&self, w: &Word) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn basis_vector(&self, i: usize) -> Element {
        self.table.basis_vector(i)
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Element {
        self.table.mul(x, y)
    }

    pub fn zero(&self) -> Element {
        self.table.zero()
    }

    /// Dimension sequence `dim rad^0 ⊇ rad^1 ⊇ … ⊇ 0`.
    pub fn rad_dims(&self) -> Vec<usize> {
        self.radical.iter().map(Span::dim).collect()
    }

    /// The subspace `rad(A)^n`.
    pub fn radical_power(&self, n: usize) -> &Span {
        let last = self.radical.len() - 1;
        &self.radical[n.min(last)]
    }

    /// Basis of `rad(A)^n`.
    pub fn radical_power_basis(&self, n: usize) -> Vec<Element> {
        self.radical_power(n).basis()
    }

    /// Normal form of a path given as arrow indices.
    pub fn normal_form_word(&self, w: &Word) -> Element {
        let mut v = self.zero();
        if let Some(&i) = self.index.get(w) {
            v[i] = self.field().one();
            return v;
        }
        for (i, c) in self.reduce_word_sparse(w) {
            v[i] = c;
        }
        v
    }

    /// Image in `A` of a combination of paths. A term with an empty path and
    /// vertex `v` stands for `e_v`.
    pub fn normal_form(&self, terms: &[(Scalar, Monomial)]) -> Element {
        let mut v = self.zero();
        for (c, m) in terms {
            let nf = if m.is_trivial() { self.basis_vector(m.source) } else { self.normal_form_word(&m.word) };
            crate::linalg::add_scaled(&mut v, c, &nf);
        }
        v
    }

    /// Normal form of a path given by arrow labels.
    pub fn normal_form_labels(&self, labels: &[&str]) -> Result<Element, AlgebraError> {
        let owned: Vec<String> = labels.iter().map(|s| s.to_string()).collect();
        let w = self.presentation.word(&owned)?;
        Ok(self.normal_form_word(&w))
    }

    /// Normal form of a declared relation (zero for every valid relation).
    pub fn normal_form_poly(&self, p: &Poly) -> Element {
        let mut v = self.zero();
        for (w, c) in p {
            crate::linalg::add_scaled(&mut v, c, &self.normal_form_word(w));
        }
        v
    }

    /// `eAe` for `e` the sum of idempotents at `vertices`, as a bare table.
    pub fn idempotent_subalgebra(&self, vertices: &[usize]) -> MultTable {
        let keep: Vec<usize> = (0..self.dim())
            .filter(|&i| vertices.contains(&self.basis[i].source) && vertices.contains(&self.basis[i].target))
            .collect();
        self.table.subtable(&keep)
    }

    /// Basis indices of `eAe` for the given vertex set, in basis order.
    pub fn corner_indices(&self, vertices: &[usize]) -> Vec<usize> {
        (0..self.dim())
            .filter(|&i| vertices.contains(&self.basis[i].source) && vertices.contains(&self.basis[i].target))
            .collect()
    }

    /// `A/J` with `J` generated by the basis paths visiting two distinct vertices.
    pub fn local_quotient(&self) -> MultTable {
        let q = self.quiver();
        let gens: Vec<Element> = (0..self.dim())
            .filter(|&i| {
                let m = &self.basis[i];
                !m.is_trivial()
                    && m.word.0.iter().any(|&a| q.arrow(a).source != m.source || q.arrow(a).target != m.source)
            })
            .map(|i| self.basis_vector(i))
            .collect();
        let ideal = self.table.ideal_closure(&gens);
        self.table.quotient(&ideal)
    }

    /// Human-readable label of a path given as arrow indices.
    pub fn word_label(&self, w: &Word) -> String {
        word_label(self.quiver(), w)
    }
}

fn word_label(q: &Quiver, w: &Word) -> String {
    let single = q.arrows().iter().all(|a| a.label.chars().count() == 1);
    let parts: Vec<&str> = w.0.iter().map(|&a| q.arrow(a).label.as_str()).collect();
    if single {
        parts.concat()
    } else {
        parts.join("*")
    }
}

fn monomial_label(q: &Quiver, m: &Monomial) -> String {
    if m.is_trivial() {
        format!("e{}", q.vertices()[m.source])
    } else {
        word_label(q, &m.word)
    }
}
