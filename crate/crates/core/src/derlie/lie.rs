//! Finite-dimensional Lie algebras given by structure constants.

use serde::Serialize;

use crate::field::{FieldDescriptor, Scalar};
use crate::linalg::{add_scaled, Mat, Span, Vector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    pub field: FieldDescriptor,
    pub labels: Vec<String>,
    /// `brackets[i][j]` holds the coordinates of `[x_i, x_j]`.
    pub brackets: Vec<Vec<Vector>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DerivedSeries {
    pub dims: Vec<usize>,
    pub solvable: bool,
    pub stabilized_at: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LowerCentralSeries {
    pub dims: Vec<usize>,
    pub nilpotent: bool,
    pub stabilized_at: usize,
}

impl LieAlgebra {
    pub fn new(field: FieldDescriptor, labels: Vec<String>, brackets: Vec<Vec<Vector>>) -> Self {
        LieAlgebra { field, labels, brackets }
    }

    /// Abelian Lie algebra of dimension `d`.
    pub fn abelian(field: FieldDescriptor, d: usize) -> Self {
        let labels = (0..d).map(|i| format!("x{i}")).collect();
        LieAlgebra { field, labels, brackets: vec![vec![vec![field.zero(); d]; d]; d] }
    }

    /// `sl_2` in the basis `H, E, F`.
    pub fn sl2(field: FieldDescriptor) -> Self {
        let f = field;
        let v = |h: i64, e: i64, fv: i64| vec![f.from_i64(h), f.from_i64(e), f.from_i64(fv)];
        let z = v(0, 0, 0);
        let brackets = vec![
            vec![z.clone(), v(0, 2, 0), v(0, 0, -2)],
            vec![v(0, -2, 0), z.clone(), v(1, 0, 0)],
            vec![v(0, 0, 2), v(-1, 0, 0), z],
        ];
        LieAlgebra { field, labels: vec!["H".into(), "E".into(), "F".into()], brackets }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn zero(&self) -> Vector {
        vec![self.field.zero(); self.dim()]
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let mut out = self.zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                add_scaled(&mut out, &(xi * yj), &self.brackets[i][j]);
            }
        }
        out
    }

    pub fn is_antisymmetric(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| {
            self.brackets[i][i].iter().all(Scalar::is_zero)
                && (0..d).all(|j| self.brackets[i][j].iter().zip(&self.brackets[j][i]).all(|(a, b)| (a + b).is_zero()))
        })
    }

    /// First basis triple where the Jacobi identity fails.
    pub fn jacobi_failure(&self) -> Option<(usize, usize, usize)> {
        let d = self.dim();
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let mut s = self.bracket(&self.brackets[j][k], &basis(self.field, d, i));
                    add_scaled(
                        &mut s,
                        &self.field.one(),
                        &self.bracket(&self.brackets[k][i], &basis(self.field, d, j)),
                    );
                    add_scaled(
                        &mut s,
                        &self.field.one(),
                        &self.bracket(&self.brackets[i][j], &basis(self.field, d, k)),
                    );
                    if s.iter().any(|c| !c.is_zero()) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// Span of all `[x, y]` with `x ∈ a`, `y ∈ b`.
    pub fn commutator_span(&self, a: &[Vector], b: &[Vector]) -> Span {
        let mut s = Span::new(self.field, self.dim());
        for x in a {
            for y in b {
                s.insert(&self.bracket(x, y));
            }
        }
        s
    }

    fn full_basis(&self) -> Vec<Vector> {
        (0..self.dim()).map(|i| basis(self.field, self.dim(), i)).collect()
    }

    pub fn derived_series(&self) -> DerivedSeries {
        let mut current = self.full_basis();
        let mut dims = vec![current.len()];
        loop {
            let next = self.commutator_span(&current, &current).basis();
            let stable = next.len() == current.len();
            if !stable {
                dims.push(next.len());
            }
            if stable || next.is_empty() {
                let solvable = *dims.last().unwrap() == 0;
                let stabilized_at = dims.len() - 1;
                if stable && !solvable {
                    dims.push(next.len());
                }
                return DerivedSeries { dims, solvable, stabilized_at };
            }
            current = next;
        }
    }

    pub fn lower_central_series(&self) -> LowerCentralSeries {
        let all = self.full_basis();
        let mut current = all.clone();
        let mut dims = vec![current.len()];
        loop {
            let next = self.commutator_span(&all, &current).basis();
            let stable = next.len() == current.len();
            if !stable {
                dims.push(next.len());
            }
            if stable || next.is_empty() {
                let nilpotent = *dims.last().unwrap() == 0;
                let stabilized_at = dims.len() - 1;
                if stable && !nilpotent {
                    dims.push(next.len());
                }
                return LowerCentralSeries { dims, nilpotent, stabilized_at };
            }
            current = next;
        }
    }

    /// Lie subalgebra spanned by `gens` (must be closed under the bracket),
    /// with structure constants in the returned basis.
    pub fn subalgebra(&self, gens: &[Vector]) -> LieAlgebra {
        let span = Span::from_vectors(self.field, self.dim(), gens);
        let basis = span.basis();
        let k = basis.len();
        let frame = Mat::from_columns(self.field, self.dim(), &basis);
        let brackets = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| frame.solve(&self.bracket(&basis[i], &basis[j])).expect("subalgebra closed under bracket"))
                    .collect()
            })
            .collect();
        LieAlgebra { field: self.field, labels: (0..k).map(|i| format!("y{i}")).collect(), brackets }
    }

    /// Whether the span of `gens` is closed under the bracket.
    pub fn is_subalgebra(&self, gens: &[Vector]) -> bool {
        let span = Span::from_vectors(self.field, self.dim(), gens);
        let b = span.basis();
        b.iter().all(|x| b.iter().all(|y| span.contains(&self.bracket(x, y))))
    }
}

fn basis(f: FieldDescriptor, d: usize, i: usize) -> Vector {
    let mut v = vec![f.zero(); d];
    v[i] = f.one();
    v
}
