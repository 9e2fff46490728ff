//! Bare structure-constant tables for finite-dimensional associative algebras.

use crate::field::{FieldDescriptor, Scalar};
use crate::linalg::{Span, SparseRow, Vector};

/// A finite-dimensional algebra given only by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultTable {
    pub field: FieldDescriptor,
    pub labels: Vec<String>,
    /// `products[i][j]` is the product of basis elements `i` and `j`.
    pub products: Vec<Vec<SparseRow>>,
    /// Indices of a complete set of orthogonal idempotents, when known.
    pub idempotents: Vec<usize>,
    /// Set when the basis does not come from a quiver presentation.
    pub table_only: bool,
}

impl MultTable {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn zero(&self) -> Vector {
        vec![self.field.zero(); self.dim()]
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        let mut v = self.zero();
        v[i] = self.field.one();
        v
    }

    pub fn product_basis(&self, i: usize, j: usize) -> &SparseRow {
        &self.products[i][j]
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let mut out = self.zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                for (k, v) in &self.products[i][j] {
                    out[*k] += &(&c * v);
                }
            }
        }
        out
    }

    /// `x · b_j`.
    pub fn mul_right_basis(&self, x: &[Scalar], j: usize) -> Vector {
        let mut out = self.zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (k, v) in &self.products[i][j] {
                out[*k] += &(xi * v);
            }
        }
        out
    }

    /// `b_i · y`.
    pub fn mul_left_basis(&self, i: usize, y: &[Scalar]) -> Vector {
        let mut out = self.zero();
        for (j, yj) in y.iter().enumerate() {
            if yj.is_zero() {
                continue;
            }
            for (k, v) in &self.products[i][j] {
                out[*k] += &(yj * v);
            }
        }
        out
    }

    pub fn unit(&self) -> Option<Vector> {
        if self.idempotents.is_empty() {
            return None;
        }
        let mut u = self.zero();
        for &e in &self.idempotents {
            u[e] = self.field.one();
        }
        Some(u)
    }

    /// Dense coefficient vector of the product of basis elements `i` and `j`.
    pub fn dense_product(&self, i: usize, j: usize) -> Vector {
        self.dense(&self.products[i][j])
    }

    fn dense(&self, row: &SparseRow) -> Vector {
        let mut v = self.zero();
        for (k, x) in row {
            v[*k] = x.clone();
        }
        v
    }

    /// First basis triple violating associativity, if any.
    pub fn associativity_failure(&self) -> Option<(usize, usize, usize)> {
        let d = self.dim();
        for i in 0..d {
            for j in 0..d {
                let ij = self.dense(&self.products[i][j]);
                for k in 0..d {
                    let left = self.mul_right_basis(&ij, k);
                    let jk = self.dense(&self.products[j][k]);
                    let right = self.mul_left_basis(i, &jk);
                    if left != right {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    pub fn is_commutative(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| (0..d).all(|j| self.dense(&self.products[i][j]) == self.dense(&self.products[j][i])))
    }

    /// Restriction to a set of basis indices that spans a subalgebra.
    pub fn subtable(&self, keep: &[usize]) -> MultTable {
        let pos = |k: usize| keep.iter().position(|&x| x == k);
        let products = keep
            .iter()
            .map(|&i| {
                keep.iter()
                    .map(|&j| {
                        self.products[i][j]
                            .iter()
                            .map(|(k, v)| (pos(*k).expect("subalgebra closed under products"), v.clone()))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        MultTable {
            field: self.field,
            labels: keep.iter().map(|&i| self.labels[i].clone()).collect(),
            products,
            idempotents: self.idempotents.iter().filter_map(|&e| pos(e)).collect(),
            table_only: true,
        }
    }

    /// Quotient by the two-sided ideal spanned by `ideal`. The quotient basis
    /// is the set of old basis elements that are not pivots of the ideal.
    pub fn quotient(&self, ideal: &Span) -> MultTable {
        let d = self.dim();
        let pivots: Vec<bool> = {
            let mut p = vec![false; d];
            for row in ideal.basis() {
                if let Some(i) = row.iter().position(|x| !x.is_zero()) {
                    p[i] = true;
                }
            }
            p
        };
        let keep: Vec<usize> = (0..d).filter(|&i| !pivots[i]).collect();
        let pos = |k: usize| keep.iter().position(|&x| x == k).expect("non-pivot index");
        let products = keep
            .iter()
            .map(|&i| {
                keep.iter()
                    .map(|&j| {
                        let r = ideal.reduce(&self.dense(&self.products[i][j]));
                        r.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(k, x)| (pos(k), x.clone())).collect()
                    })
                    .collect()
            })
            .collect();
        MultTable {
            field: self.field,
            labels: keep.iter().map(|&i| self.labels[i].clone()).collect(),
            products,
            idempotents: self.idempotents.iter().filter(|&&e| !pivots[e]).map(|&e| pos(e)).collect(),
            table_only: true,
        }
    }

    /// Two-sided ideal generated by the given elements.
    pub fn ideal_closure(&self, gens: &[Vector]) -> Span {
        let d = self.dim();
        let mut span = Span::new(self.field, d);
        let mut queue: Vec<Vector> = gens.to_vec();
        while let Some(v) = queue.pop() {
            if !span.insert(&v) {
                continue;
            }
            for i in 0..d {
                queue.push(self.mul_left_basis(i, &v));
                queue.push(self.mul_right_basis(&v, i));
            }
        }
        span
    }
}
