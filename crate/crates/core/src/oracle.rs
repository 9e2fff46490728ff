//! Independent cross-checks working on the raw multiplication table:
//! `HH^1` from the Hochschild cochain complex, and a generic derivation solver.

use crate::algebra::{AlgebraTable, MultTable};
use crate::derlie::{derivation_matrix, Sl2Element, Slots};
use crate::error::OracleError;
use crate::field::Scalar;
use crate::linalg::{SparseEchelon, SparseRow, Vector};

pub const MAX_ORACLE_DIM: usize = 64;

/// Refuses dimensions above [`MAX_ORACLE_DIM`].
pub fn check_dim(d: usize) -> Result<(), OracleError> {
    if d > MAX_ORACLE_DIM {
        return Err(OracleError::TooLarge { dim: d, limit: MAX_ORACLE_DIM });
    }
    Ok(())
}

/// Low-degree part of the Hochschild cochain complex
/// `A → Hom(A, A) → Hom(A ⊗ A, A)`.
///
/// A 1-cochain `f` has coordinate `j·d + k` for the coefficient of `b_k` in `f(b_j)`.
#[derive(Clone, Debug)]
pub struct CochainProblem {
    pub dim: usize,
    /// Columns of `d⁰`, one per basis element `u`: the map `x ↦ x·u − u·x`.
    pub d0: Vec<SparseRow>,
    /// Rows of `d¹`, indexed by `(i, j, k)`:
    /// `(d¹f)(b_i, b_j) = b_i·f(b_j) − f(b_i b_j) + f(b_i)·b_j`.
    pub d1: Vec<SparseRow>,
}

fn leibniz_rows(t: &MultTable) -> Vec<SparseRow> {
    let d = t.dim();
    let var = |j: usize, k: usize| j * d + k;
    let mut rows = Vec::with_capacity(d * d * d);
    for i in 0..d {
        for j in 0..d {
            let mut by_k: Vec<SparseRow> = vec![Vec::new(); d];
            // b_i · f(b_j)
            for l in 0..d {
                for (k, c) in t.product_basis(i, l) {
                    by_k[*k].push((var(j, l), c.clone()));
                }
            }
            // − f(b_i b_j)
            for (m, c) in t.product_basis(i, j) {
                for (k, row) in by_k.iter_mut().enumerate() {
                    row.push((var(*m, k), -c));
                }
            }
            // f(b_i) · b_j
            for l in 0..d {
                for (k, c) in t.product_basis(l, j) {
                    by_k[*k].push((var(i, l), c.clone()));
                }
            }
            for row in by_k {
                rows.push(merge(t, row));
            }
        }
    }
    rows
}

fn merge(t: &MultTable, row: SparseRow) -> SparseRow {
    let mut acc: std::collections::BTreeMap<usize, Scalar> = std::collections::BTreeMap::new();
    for (c, v) in row {
        let e = acc.entry(c).or_insert_with(|| t.field.zero());
        *e += &v;
    }
    acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

impl CochainProblem {
    pub fn new(t: &MultTable) -> Result<Self, OracleError> {
        let d = t.dim();
        check_dim(d)?;
        let d0 = (0..d)
            .map(|u| {
                let mut col = Vec::new();
                for x in 0..d {
                    for (k, c) in t.product_basis(x, u) {
                        col.push((x * d + k, c.clone()));
                    }
                    for (k, c) in t.product_basis(u, x) {
                        col.push((x * d + k, -c));
                    }
                }
                merge(t, col)
            })
            .collect();
        Ok(CochainProblem { dim: d, d0, d1: leibniz_rows(t) })
    }

    /// Checks `d¹ ∘ d⁰ = 0` column by column.
    pub fn composite_vanishes(&self) -> bool {
        self.d0.iter().all(|col| {
            self.d1.iter().all(|row| {
                let mut s: Option<Scalar> = None;
                for (c, v) in row {
                    if let Some((_, w)) = col.iter().find(|(k, _)| k == c) {
                        let p = v * w;
                        s = Some(match s {
                            Some(acc) => &acc + &p,
                            None => p,
                        });
                    }
                }
                s.is_none_or(|x| x.is_zero())
            })
        })
    }

    pub fn rank_d0(&self) -> usize {
        let f = self.field();
        let mut e = SparseEchelon::new(f);
        for col in &self.d0 {
            e.insert(col.iter().cloned());
        }
        e.rank()
    }

    pub fn rank_d1(&self) -> usize {
        let mut e = SparseEchelon::new(self.field());
        for row in &self.d1 {
            if !row.is_empty() {
                e.insert(row.iter().cloned());
            }
        }
        e.rank()
    }

    fn field(&self) -> crate::field::FieldDescriptor {
        self.d1
            .iter()
            .chain(&self.d0)
            .find_map(|r| r.first().map(|(_, v)| v.field()))
            .unwrap_or(crate::field::FieldDescriptor::Rationals)
    }

    pub fn hh1_dim(&self) -> usize {
        let n = self.dim * self.dim;
        n - self.rank_d1() - self.rank_d0()
    }
}

/// `dim HH^1(A) = dim ker d¹ − rank d⁰`, without any normalization.
pub fn bar_hh1_dim(a: &AlgebraTable) -> Result<usize, OracleError> {
    bar_hh1_dim_table(a.table())
}

pub fn bar_hh1_dim_table(t: &MultTable) -> Result<usize, OracleError> {
    Ok(CochainProblem::new(t)?.hh1_dim())
}

/// All derivations of a bare table as `d × d` coordinate vectors (layout of
/// [`CochainProblem`]). With `normalize`, the supplied idempotents are sent to zero.
pub fn derivations_from_table(t: &MultTable, normalize: bool) -> Result<Vec<Vector>, OracleError> {
    let d = t.dim();
    check_dim(d)?;
    if let Some((i, j, k)) = t.associativity_failure() {
        return Err(OracleError::NotAssociative(i, j, k));
    }
    let mut e = SparseEchelon::new(t.field);
    for row in leibniz_rows(t) {
        if !row.is_empty() {
            e.insert(row);
        }
    }
    if normalize {
        for &i in &t.idempotents {
            for k in 0..d {
                e.insert([(i * d + k, t.field.one())]);
            }
        }
    }
    Ok(e.kernel_basis(d * d))
}

/// Image of `x` under a `d × d` cochain in the oracle layout.
pub fn apply_cochain(d: usize, f: &[Scalar], x: &[Scalar]) -> Vector {
    let field = f.first().map(|s| s.field()).unwrap_or(crate::field::FieldDescriptor::Rationals);
    let mut out = vec![field.zero(); d];
    for (j, xj) in x.iter().enumerate() {
        if xj.is_zero() {
            continue;
        }
        for k in 0..d {
            let c = &f[j * d + k];
            if !c.is_zero() {
                out[k] += &(xj * c);
            }
        }
    }
    out
}

/// Whether a cochain in the oracle layout satisfies the Leibniz rule on `t`.
pub fn is_derivation(t: &MultTable, f: &[Scalar]) -> bool {
    let d = t.dim();
    (0..d).all(|i| {
        (0..d).all(|j| {
            let lhs = apply_cochain(d, f, &t.dense_product(i, j));
            let fi = apply_cochain(d, f, &t.basis_vector(i));
            let fj = apply_cochain(d, f, &t.basis_vector(j));
            let mut rhs = t.mul_right_basis(&fi, j);
            let left = t.mul_left_basis(i, &fj);
            for (r, l) in rhs.iter_mut().zip(left) {
                *r += &l;
            }
            lhs == rhs
        })
    })
}

/// Restriction of a derivation (slot coordinates, vanishing on idempotents)
/// to `eAe`, in the oracle layout for [`AlgebraTable::idempotent_subalgebra`].
/// `None` when the restriction leaves `eAe`.
pub fn restrict_derivation(a: &AlgebraTable, slots: &Slots, coords: &[Scalar], vertices: &[usize]) -> Option<Vector> {
    let keep = a.corner_indices(vertices);
    let cols = derivation_matrix(a, slots, coords);
    let n = keep.len();
    let mut out = vec![a.field().zero(); n * n];
    for (jj, &j) in keep.iter().enumerate() {
        for (k, c) in cols[j].iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let kk = keep.iter().position(|&x| x == k)?;
            out[jj * n + kk] = c.clone();
        }
    }
    Some(out)
}

/// `(x, y, z)` read from a cochain on a table, for basis indices `ia`, `ib` of
/// two parallel arrows.
pub fn delta_on_table(t: &MultTable, f: &[Scalar], ia: usize, ib: usize) -> Sl2Element {
    let d = t.dim();
    let c = |j: usize, k: usize| f[j * d + k].clone();
    let half = t.field.from_i64(2).inv().expect("characteristic not 2");
    Sl2Element::new(&(&c(ia, ia) - &c(ib, ib)) * &half, c(ib, ia), c(ia, ib))
}
