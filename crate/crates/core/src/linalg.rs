//! Dense exact linear algebra plus a sparse row-echelon accumulator for the
//! large, very sparse systems built by the cochain oracle.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::LinalgError;
use crate::field::{FieldDescriptor, Scalar};

pub type Vector = Vec<Scalar>;

#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    field: FieldDescriptor,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Mat {
    pub fn zeros(field: FieldDescriptor, rows: usize, cols: usize) -> Self {
        Mat { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: FieldDescriptor, n: usize) -> Self {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Builds a matrix from row vectors; all rows must have length `cols`.
    pub fn from_rows(field: FieldDescriptor, cols: usize, rows: &[Vector]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged row");
            data.extend(r.iter().cloned());
        }
        Mat { field, rows: rows.len(), cols, data }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(field: FieldDescriptor, rows: usize, cols: &[Vector]) -> Self {
        let mut m = Mat::zeros(field, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "ragged column");
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: Scalar) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vector {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows);
        let mut out = Mat::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Mat { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    /// Reduced row echelon form and the pivot column of each nonzero row.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let pv = m.get(r, j);
                    if !pv.is_zero() {
                        let v = m.get(i, j) - &(&f * pv);
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vector> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![None; self.cols];
        for (row, &c) in pivots.iter().enumerate() {
            is_pivot[c] = Some(row);
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| is_pivot[c].is_none()) {
            let mut v = vec![self.field.zero(); self.cols];
            v[free] = self.field.one();
            for (row, &pc) in pivots.iter().enumerate() {
                let x = r.get(row, free);
                if !x.is_zero() {
                    v[pc] = -x;
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Some solution of `self * x = rhs`, if one exists.
    pub fn solve(&self, rhs: &[Scalar]) -> Option<Vector> {
        assert_eq!(rhs.len(), self.rows);
        let mut aug = Mat::zeros(self.field, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, rhs[i].clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (row, &c) in pivots.iter().enumerate() {
            x[c] = r.get(row, self.cols).clone();
        }
        Some(x)
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} over {}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Right null space of `m`.
pub fn kernel_basis(m: &Mat) -> Vec<Vector> {
    m.kernel_basis()
}

pub fn is_zero_vector(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

pub fn add_scaled(acc: &mut [Scalar], coeff: &Scalar, v: &[Scalar]) {
    if coeff.is_zero() {
        return;
    }
    for (a, b) in acc.iter_mut().zip(v) {
        if !b.is_zero() {
            *a += &(coeff * b);
        }
    }
}

/// Incremental echelon basis of a subspace of `field^len`, supporting
/// membership tests and coordinates with respect to the inserted vectors.
#[derive(Clone, Debug)]
pub struct Span {
    field: FieldDescriptor,
    len: usize,
    /// Rows normalized to a leading 1 at `pivot`, reduced against earlier rows
    /// only at their pivot columns.
    rows: Vec<(usize, Vector)>,
}

impl Span {
    pub fn new(field: FieldDescriptor, len: usize) -> Self {
        Span { field, len, rows: Vec::new() }
    }

    pub fn from_vectors<'a>(field: FieldDescriptor, len: usize, vs: impl IntoIterator<Item = &'a Vector>) -> Self {
        let mut s = Span::new(field, len);
        for v in vs {
            s.insert(v);
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_len(&self) -> usize {
        self.len
    }

    /// Reduces `v` against the current rows; the result is zero iff `v` lies
    /// in the span.
    pub fn reduce(&self, v: &[Scalar]) -> Vector {
        assert_eq!(v.len(), self.len, "vector length");
        let mut w = v.to_vec();
        for (p, row) in &self.rows {
            let c = w[*p].clone();
            if !c.is_zero() {
                let neg = -&c;
                add_scaled(&mut w, &neg, row);
            }
        }
        w
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        is_zero_vector(&self.reduce(v))
    }

    /// Adds `v`; returns true if the dimension grew.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        let w = self.reduce(v);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = w[p].inv().expect("nonzero");
        let w: Vector = w.iter().map(|x| x * &inv).collect();
        self.rows.push((p, w));
        true
    }

    /// Echelon rows spanning the subspace.
    pub fn basis(&self) -> Vec<Vector> {
        self.rows.iter().map(|(_, r)| r.clone()).collect()
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }
}

/// Result of comparing two spans of equal-length vectors.
#[derive(Clone, Debug)]
pub struct SubspaceReport {
    pub dim_a: usize,
    pub dim_b: usize,
    pub dim_sum: usize,
    pub dim_intersection: usize,
    /// Coset representatives of `span_a / span_b`, present when requested.
    pub quotient_reps: Option<Vec<Vector>>,
}

/// Dimensions of `span_a`, `span_b`, their sum and intersection; when
/// `want_quotient` is set, also representatives for `span_a / span_b`.
pub fn subspace_ops(
    field: FieldDescriptor,
    span_a: &[Vector],
    span_b: &[Vector],
    want_quotient: bool,
) -> Result<SubspaceReport, LinalgError> {
    let len = span_a.first().or(span_b.first()).map_or(0, Vec::len);
    for v in span_a.iter().chain(span_b) {
        if v.len() != len {
            return Err(LinalgError::LengthMismatch(len, v.len()));
        }
    }
    let a = Span::from_vectors(field, len, span_a);
    let b = Span::from_vectors(field, len, span_b);
    let mut sum = b.clone();
    let mut reps = Vec::new();
    for v in span_a {
        if sum.insert(v) {
            reps.push(v.clone());
        }
    }
    for v in span_b {
        sum.insert(v);
    }
    let dim_sum = sum.dim();
    let dim_intersection = a.dim() + b.dim() - dim_sum;
    let quotient_reps = if want_quotient {
        if dim_intersection != b.dim() {
            return Err(LinalgError::QuotientUndefined);
        }
        Some(reps)
    } else {
        None
    };
    Ok(SubspaceReport { dim_a: a.dim(), dim_b: b.dim(), dim_sum, dim_intersection, quotient_reps })
}

pub type SparseRow = Vec<(usize, Scalar)>;

/// Row-echelon accumulator for sparse rows. Rows are reduced on insertion so
/// the stored set always has distinct pivots.
#[derive(Clone, Debug)]
pub struct SparseEchelon {
    field: FieldDescriptor,
    pivots: BTreeMap<usize, SparseRow>,
}

fn sparse_axpy(dst: &SparseRow, coeff: &Scalar, src: &SparseRow) -> SparseRow {
    // dst + coeff * src, both sorted by column
    let mut out = Vec::with_capacity(dst.len() + src.len());
    let (mut i, mut j) = (0, 0);
    while i < dst.len() || j < src.len() {
        let ci = dst.get(i).map(|x| x.0);
        let cj = src.get(j).map(|x| x.0);
        match (ci, cj) {
            (Some(a), Some(b)) if a == b => {
                let v = &dst[i].1 + &(coeff * &src[j].1);
                if !v.is_zero() {
                    out.push((a, v));
                }
                i += 1;
                j += 1;
            }
            (Some(a), Some(b)) if a < b => {
                out.push(dst[i].clone());
                i += 1;
            }
            (Some(_), None) => {
                out.push(dst[i].clone());
                i += 1;
            }
            (_, Some(b)) => {
                out.push((b, coeff * &src[j].1));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

impl SparseEchelon {
    pub fn new(field: FieldDescriptor) -> Self {
        SparseEchelon { field, pivots: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Inserts a row given as (column, value) pairs in any order with
    /// duplicates summed. Returns true if the rank grew.
    pub fn insert(&mut self, entries: impl IntoIterator<Item = (usize, Scalar)>) -> bool {
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (c, v) in entries {
            let e = acc.entry(c).or_insert_with(|| self.field.zero());
            *e += &v;
        }
        let mut row: SparseRow = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        loop {
            let Some((lead, val)) = row.first().cloned() else {
                return false;
            };
            match self.pivots.get(&lead) {
                Some(p) => {
                    let neg = -&val;
                    row = sparse_axpy(&row, &neg, p);
                }
                None => {
                    let inv = val.inv().expect("nonzero");
                    let row: SparseRow = row.into_iter().map(|(c, v)| (c, &v * &inv)).collect();
                    self.pivots.insert(lead, row);
                    return true;
                }
            }
        }
    }

    /// Kernel basis of the accumulated system in `ncols` unknowns.
    pub fn kernel_basis(&self, ncols: usize) -> Vec<Vector> {
        // back-substitute to reduced form, highest pivot first
        let mut reduced: BTreeMap<usize, SparseRow> = BTreeMap::new();
        for (&p, row) in self.pivots.iter().rev() {
            let mut r = row.clone();
            let mut k = 1;
            while k < r.len() {
                let (c, v) = r[k].clone();
                if let Some(q) = reduced.get(&c) {
                    let neg = -&v;
                    r = sparse_axpy(&r, &neg, q);
                    // the entry at c is now gone; stay at the same index
                } else {
                    k += 1;
                }
            }
            reduced.insert(p, r);
        }
        let mut basis = Vec::new();
        for free in (0..ncols).filter(|c| !reduced.contains_key(c)) {
            let mut v = vec![self.field.zero(); ncols];
            v[free] = self.field.one();
            for (&p, row) in &reduced {
                if let Some((_, x)) = row.iter().find(|(c, _)| *c == free) {
                    v[p] = -x;
                }
            }
            basis.push(v);
        }
        basis
    }
}
