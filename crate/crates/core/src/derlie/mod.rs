//! Derivations vanishing on the vertex idempotents, inner derivations and the
//! Lie algebras `HH^1` and `HH^1_rad`.

pub mod delta;
pub mod lie;

use num_bigint::BigUint;
use serde::Serialize;

use crate::algebra::{AlgebraTable, Element, Word};
use crate::field::Scalar;
use crate::linalg::{add_scaled, is_zero_vector, Mat, Span, SparseEchelon, Vector};

pub use delta::{delta_coordinates, delta_defined, delta_map, DeltaImage, Sl2Element};
pub use lie::{DerivedSeries, LieAlgebra, LowerCentralSeries};

/// Coordinates for derivations: one unknown per arrow `a` and per basis
/// monomial of `e_{s(a)} A e_{t(a)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Slots {
    /// `(arrow, basis index)` per coordinate.
    pub entries: Vec<(usize, usize)>,
    /// Coordinate indices belonging to each arrow.
    pub by_arrow: Vec<Vec<usize>>,
}

impl Slots {
    pub fn new(a: &AlgebraTable) -> Self {
        let q = a.quiver();
        let mut entries = Vec::new();
        let mut by_arrow = vec![Vec::new(); q.arrow_count()];
        for (ai, arrow) in q.arrows().iter().enumerate() {
            for (j, m) in a.basis().iter().enumerate() {
                if m.source == arrow.source && m.target == arrow.target {
                    by_arrow[ai].push(entries.len());
                    entries.push((ai, j));
                }
            }
        }
        Slots { entries, by_arrow }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Index of the coordinate for `basis index j` inside `δ(arrow)`.
    pub fn find(&self, arrow: usize, j: usize) -> Option<usize> {
        self.by_arrow[arrow].iter().copied().find(|&s| self.entries[s].1 == j)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Flavor {
    All,
    RadicalPreserving,
    Inner,
}

/// A derivation given by the images of the arrows, in [`Slots`] coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub coords: Vector,
}

impl Derivation {
    /// `δ(a)` for every arrow, as elements of `A`.
    pub fn arrow_images(&self, a: &AlgebraTable, slots: &Slots) -> Vec<Element> {
        arrow_images(a, slots, &self.coords)
    }
}

#[derive(Clone, Debug)]
pub struct DerSpace {
    pub flavor: Flavor,
    pub slots: Slots,
    pub basis: Vec<Vector>,
}

impl DerSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn span(&self) -> Span {
        let field = self.basis.first().map(|v| v[0].field());
        match field {
            Some(f) => Span::from_vectors(f, self.slots.len(), &self.basis),
            None => Span::new(crate::field::FieldDescriptor::Rationals, self.slots.len()),
        }
    }

    pub fn derivations(&self) -> impl Iterator<Item = Derivation> + '_ {
        self.basis.iter().map(|c| Derivation { coords: c.clone() })
    }

    /// True when every basis vector of `self` lies in `other`.
    pub fn is_subspace_of(&self, other: &DerSpace) -> bool {
        let span = other.span();
        self.basis.iter().all(|v| span.contains(v))
    }
}

pub fn arrow_images(a: &AlgebraTable, slots: &Slots, coords: &[Scalar]) -> Vec<Element> {
    let mut out = vec![a.zero(); a.quiver().arrow_count()];
    for (s, &(arrow, j)) in slots.entries.iter().enumerate() {
        if !coords[s].is_zero() {
            out[arrow][j] += &coords[s];
        }
    }
    out
}

fn word_element(a: &AlgebraTable, w: &[usize]) -> Option<Element> {
    if w.is_empty() {
        None
    } else {
        Some(a.normal_form_word(&Word(w.to_vec())))
    }
}

/// `left · x · right`, with `None` standing for an identity factor.
fn sandwich(a: &AlgebraTable, left: &Option<Element>, x: &[Scalar], right: &Option<Element>) -> Element {
    let mut v = x.to_vec();
    if let Some(l) = left {
        v = a.mul(l, &v);
    }
    if let Some(r) = right {
        v = a.mul(&v, r);
    }
    v
}

/// Leibniz extension of the arrow images to a path.
pub fn apply_to_word(a: &AlgebraTable, images: &[Element], w: &Word) -> Element {
    let mut out = a.zero();
    for k in 0..w.len() {
        let img = &images[w.0[k]];
        if is_zero_vector(img) {
            continue;
        }
        let left = word_element(a, &w.0[..k]);
        let right = word_element(a, &w.0[k + 1..]);
        add_scaled(&mut out, &a.field().one(), &sandwich(a, &left, img, &right));
    }
    out
}

/// Full `d × d` matrix of a derivation, as the images of all basis elements.
pub fn derivation_matrix(a: &AlgebraTable, slots: &Slots, coords: &[Scalar]) -> Vec<Element> {
    let images = arrow_images(a, slots, coords);
    a.basis().iter().map(|m| if m.is_trivial() { a.zero() } else { apply_to_word(a, &images, &m.word) }).collect()
}

fn apply_matrix(a: &AlgebraTable, cols: &[Element], x: &[Scalar]) -> Element {
    let mut out = a.zero();
    for (i, c) in x.iter().enumerate() {
        if !c.is_zero() {
            add_scaled(&mut out, c, &cols[i]);
        }
    }
    out
}

/// First basis pair `(u, v)` with `δ(uv) ≠ δ(u)v + uδ(v)`, if any.
pub fn leibniz_failure(a: &AlgebraTable, cols: &[Element]) -> Option<(usize, usize)> {
    let t = a.table();
    let d = a.dim();
    for u in 0..d {
        for v in 0..d {
            let uv = t.dense_product(u, v);
            let lhs = apply_matrix(a, cols, &uv);
            let mut rhs = t.mul_right_basis(&cols[u], v);
            add_scaled(&mut rhs, &a.field().one(), &t.mul_left_basis(u, &cols[v]));
            if lhs != rhs {
                return Some((u, v));
            }
        }
    }
    None
}

/// Projects arrow images back to slot coordinates. Components outside
/// `e_{s(a)} A e_{t(a)}` must vanish.
pub fn to_slots(a: &AlgebraTable, slots: &Slots, images: &[Element]) -> Vector {
    let mut out = vec![a.field().zero(); slots.len()];
    for (s, &(arrow, j)) in slots.entries.iter().enumerate() {
        out[s] = images[arrow][j].clone();
    }
    out
}

/// Commutator `[δ, μ] = δ∘μ − μ∘δ` in slot coordinates.
pub fn bracket(a: &AlgebraTable, slots: &Slots, x: &[Scalar], y: &[Scalar]) -> Vector {
    let dx = derivation_matrix(a, slots, x);
    let dy = derivation_matrix(a, slots, y);
    let q = a.quiver();
    let images: Vec<Element> = (0..q.arrow_count())
        .map(|ar| {
            let e = a.basis_vector(a.arrow_index(ar));
            let mut v = apply_matrix(a, &dx, &apply_matrix(a, &dy, &e));
            let w = apply_matrix(a, &dy, &apply_matrix(a, &dx, &e));
            add_scaled(&mut v, &-a.field().one(), &w);
            v
        })
        .collect();
    to_slots(a, slots, &images)
}

/// All derivations with `δ(e_i) = 0`.
pub fn derivation_space(a: &AlgebraTable) -> DerSpace {
    let slots = Slots::new(a);
    let mut ech = SparseEchelon::new(a.field());
    for g in a.groebner() {
        // column per slot: δ(g) when δ(arrow) is the slot's basis monomial
        let mut cols: Vec<Element> = vec![a.zero(); slots.len()];
        for (w, c) in g {
            for k in 0..w.len() {
                let arrow = w.0[k];
                let left = word_element(a, &w.0[..k]);
                let right = word_element(a, &w.0[k + 1..]);
                for &s in &slots.by_arrow[arrow] {
                    let b = a.basis_vector(slots.entries[s].1);
                    add_scaled(&mut cols[s], c, &sandwich(a, &left, &b, &right));
                }
            }
        }
        for r in 0..a.dim() {
            let row: Vec<(usize, Scalar)> =
                (0..slots.len()).filter(|&s| !cols[s][r].is_zero()).map(|s| (s, cols[s][r].clone())).collect();
            if !row.is_empty() {
                ech.insert(row);
            }
        }
    }
    let basis = ech.kernel_basis(slots.len());
    DerSpace { flavor: Flavor::All, slots, basis }
}

/// Inner derivations `[u, −]` with `u ∈ ⊕ e_i A e_i`; these vanish on idempotents.
pub fn inner_space(a: &AlgebraTable) -> DerSpace {
    let slots = Slots::new(a);
    let mut span = Span::new(a.field(), slots.len());
    let q = a.quiver();
    for (ui, m) in a.basis().iter().enumerate() {
        if m.source != m.target {
            continue;
        }
        let images: Vec<Element> = (0..q.arrow_count())
            .map(|ar| {
                let ai = a.arrow_index(ar);
                let t = a.table();
                let mut v = t.dense_product(ui, ai);
                add_scaled(&mut v, &-a.field().one(), &t.dense_product(ai, ui));
                v
            })
            .collect();
        span.insert(&to_slots(a, &slots, &images));
    }
    DerSpace { flavor: Flavor::Inner, slots, basis: span.basis() }
}

/// Slot indices of the idempotent component of `δ(a)` for each loop `a`.
fn loop_idempotent_slots(a: &AlgebraTable, slots: &Slots) -> Vec<usize> {
    let q = a.quiver();
    (0..q.arrow_count())
        .filter(|&ar| q.is_loop(ar))
        .map(|ar| slots.find(ar, a.idempotent_index(q.arrow(ar).source)).expect("idempotent slot of a loop"))
        .collect()
}

/// Derivations of `d` mapping `rad(A)` into itself.
pub fn radical_filter(d: &DerSpace, a: &AlgebraTable) -> DerSpace {
    let conds = loop_idempotent_slots(a, &d.slots);
    let basis = if conds.is_empty() || d.basis.is_empty() {
        d.basis.clone()
    } else {
        let rows: Vec<Vector> = conds.iter().map(|&s| d.basis.iter().map(|v| v[s].clone()).collect()).collect();
        let m = Mat::from_rows(a.field(), d.basis.len(), &rows);
        m.kernel_basis()
            .into_iter()
            .map(|comb| {
                let mut v = vec![a.field().zero(); d.slots.len()];
                for (c, b) in comb.iter().zip(&d.basis) {
                    add_scaled(&mut v, c, b);
                }
                v
            })
            .collect()
    };
    DerSpace { flavor: Flavor::RadicalPreserving, slots: d.slots.clone(), basis }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LoopIndex {
    pub arrow: String,
    pub n: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LoopCriterion {
    pub loops: Vec<LoopIndex>,
    #[serde(serialize_with = "crate::report::ser_display")]
    pub product: BigUint,
    pub holds: bool,
}

/// For each loop `a`, the least `n` with `a^n ∈ rad^{n+1}`; the criterion
/// holds in characteristic 0 or when `p` divides none of them.
pub fn loop_criterion(a: &AlgebraTable) -> LoopCriterion {
    let q = a.quiver();
    let p = a.field().characteristic();
    let mut loops = Vec::new();
    let mut product = BigUint::from(1u32);
    for ar in (0..q.arrow_count()).filter(|&ar| q.is_loop(ar)) {
        let n = (1..)
            .find(|&n| {
                let pw = a.normal_form_word(&Word(vec![ar; n]));
                a.radical_power(n + 1).contains(&pw)
            })
            .expect("nilpotent loop");
        product *= BigUint::from(n);
        loops.push(LoopIndex { arrow: q.arrow(ar).label.clone(), n });
    }
    let holds = p == 0 || loops.iter().all(|l| !(l.n as u64).is_multiple_of(p));
    LoopCriterion { loops, product, holds }
}

/// `HH^1` (or `HH^1_rad`) with the derivation data it was built from.
#[derive(Clone, Debug)]
pub struct Hh1 {
    pub lie: LieAlgebra,
    pub der: DerSpace,
    pub inner: DerSpace,
    /// Coset representatives, in slot coordinates, one per Lie basis element.
    pub reps: Vec<Vector>,
    pub rad_only: bool,
    /// Matrix with columns `[inner basis | reps]`, used to read coordinates.
    frame: Mat,
}

impl Hh1 {
    pub fn dim(&self) -> usize {
        self.lie.dim()
    }

    pub fn slots(&self) -> &Slots {
        &self.der.slots
    }

    /// Coordinates of a derivation modulo inner ones, `None` when outside the space.
    pub fn coordinates(&self, coords: &[Scalar]) -> Option<Vector> {
        let n_inner = self.inner.dim();
        self.frame.solve(coords).map(|x| x[n_inner..].to_vec())
    }

    /// Representative of a class given in Lie coordinates.
    pub fn representative(&self, x: &[Scalar]) -> Vector {
        let f = self.frame.field();
        let mut v = vec![f.zero(); self.slots().len()];
        for (c, r) in x.iter().zip(&self.reps) {
            add_scaled(&mut v, c, r);
        }
        v
    }
}

/// Quotient of (radical-preserving) derivations by inner derivations.
pub fn hh1(a: &AlgebraTable, rad_only: bool) -> Hh1 {
    let all = derivation_space(a);
    let der = if rad_only { radical_filter(&all, a) } else { all };
    let inner = inner_space(a);
    hh1_from_spaces(a, der, inner, rad_only)
}

pub fn hh1_from_spaces(a: &AlgebraTable, der: DerSpace, inner: DerSpace, rad_only: bool) -> Hh1 {
    let f = a.field();
    let n = der.slots.len();
    let mut span = Span::from_vectors(f, n, &inner.basis);
    let mut reps = Vec::new();
    for v in &der.basis {
        if span.insert(v) {
            reps.push(v.clone());
        }
    }
    let mut cols = inner.basis.clone();
    cols.extend(reps.iter().cloned());
    let frame = Mat::from_columns(f, n, &cols);
    let k = reps.len();
    let n_inner = inner.dim();
    let mut brackets = vec![vec![vec![f.zero(); k]; k]; k];
    for i in 0..k {
        for j in (i + 1)..k {
            let b = bracket(a, &der.slots, &reps[i], &reps[j]);
            let x = frame.solve(&b).expect("derivations closed under the commutator");
            let c: Vector = x[n_inner..].to_vec();
            brackets[j][i] = c.iter().map(|s| -s).collect();
            brackets[i][j] = c;
        }
    }
    let labels = reps.iter().map(|r| derivation_label(a, &der.slots, r)).collect();
    Hh1 { lie: LieAlgebra::new(f, labels, brackets), der, inner, reps, rad_only, frame }
}

/// Short text form such as `a->b, b->-a+2b`.
pub fn derivation_label(a: &AlgebraTable, slots: &Slots, coords: &[Scalar]) -> String {
    let q = a.quiver();
    let mut parts = Vec::new();
    for (ar, idx) in slots.by_arrow.iter().enumerate() {
        let terms: Vec<(Scalar, usize)> =
            idx.iter().filter(|&&s| !coords[s].is_zero()).map(|&s| (coords[s].clone(), slots.entries[s].1)).collect();
        if terms.is_empty() {
            continue;
        }
        parts.push(format!("{}->{}", q.arrow(ar).label, render_combination(a, &terms)));
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(", ")
    }
}

pub fn render_combination(a: &AlgebraTable, terms: &[(Scalar, usize)]) -> String {
    let mut s = String::new();
    for (k, (c, j)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        let abs = if neg { -c } else { c.clone() };
        if k > 0 {
            s.push_str(if neg { "+-" } else { "+" });
        } else if neg {
            s.push('-');
        }
        if !abs.is_one() {
            s.push_str(&format!("{abs}"));
        }
        s.push_str(a.label(*j));
    }
    s.replace("+-", "-")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_algebra, Presentation, Relation};
    use crate::field::FieldDescriptor;
    use crate::quiver::Quiver;

    fn rels(f: FieldDescriptor, spec: &[&[(i64, &str)]]) -> Vec<Relation> {
        spec.iter()
            .map(|terms| {
                Relation::new(terms.iter().map(|(c, p)| (f.from_i64(*c), p.chars().map(String::from).collect())))
            })
            .collect()
    }

    fn kronecker() -> AlgebraTable {
        let q = Quiver::new(&["1", "2"], &[("a", "1", "2"), ("b", "1", "2")]).unwrap();
        build_algebra(&Presentation::new(q, vec![], FieldDescriptor::Rationals)).unwrap()
    }

    fn truncated(n: usize, f: FieldDescriptor) -> AlgebraTable {
        let q = Quiver::new(&["1"], &[("x", "1", "1")]).unwrap();
        let r = Relation::new([(f.one(), vec!["x".to_string(); n])]);
        build_algebra(&Presentation::new(q, vec![r], f)).unwrap()
    }

    #[test]
    fn kronecker_spaces() {
        let a = kronecker();
        assert_eq!(derivation_space(&a).dim(), 4);
        assert_eq!(inner_space(&a).dim(), 1);
        let h = hh1(&a, false);
        assert_eq!(h.dim(), 3);
        assert!(!h.lie.derived_series().solvable);
    }

    #[test]
    fn truncated_polynomial_derivations() {
        let a = truncated(3, FieldDescriptor::Rationals);
        let d = derivation_space(&a);
        assert_eq!(d.dim(), 2);
        assert_eq!(radical_filter(&d, &a).dim(), 2);
        assert_eq!(inner_space(&a).dim(), 0);
        let lc = loop_criterion(&a);
        assert!(lc.holds);
        assert_eq!(lc.loops[0].n, 3);
    }

    #[test]
    fn witt_case() {
        let f = FieldDescriptor::prime(3).unwrap();
        let a = truncated(3, f);
        let d = derivation_space(&a);
        assert_eq!(d.dim(), 3);
        assert_eq!(radical_filter(&d, &a).dim(), 2);
        let lc = loop_criterion(&a);
        assert!(!lc.holds);
        assert_eq!(lc.loops[0].n, 3);
        assert!(!hh1(&a, false).lie.derived_series().solvable);
        assert!(hh1(&a, true).lie.derived_series().solvable);
    }

    #[test]
    fn derivations_satisfy_leibniz() {
        let f = FieldDescriptor::Rationals;
        let q = Quiver::new(
            &["1", "2", "3", "4"],
            &[("a", "1", "2"), ("b", "1", "2"), ("c", "2", "3"), ("d", "2", "3"), ("e", "3", "4")],
        )
        .unwrap();
        let r = rels(f, &[&[(1, "ac")], &[(1, "bd")], &[(1, "ad"), (1, "bc")], &[(1, "ce")], &[(1, "de")]]);
        let a = build_algebra(&Presentation::new(q, r, f)).unwrap();
        let d = derivation_space(&a);
        for v in &d.basis {
            assert_eq!(leibniz_failure(&a, &derivation_matrix(&a, &d.slots, v)), None);
        }
        assert!(inner_space(&a).is_subspace_of(&d));
        assert_eq!(hh1(&a, false).dim(), 3);
    }
}
