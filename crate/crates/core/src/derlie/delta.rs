//! The map from `HH^1_rad` to `sl_2` attached to a Kronecker pair of arrows.

use std::fmt;

use serde::Serialize;

use crate::algebra::AlgebraTable;
use crate::error::DeltaError;
use crate::field::{FieldDescriptor, Scalar};
use crate::linalg::{Mat, Vector};
use crate::quiver::Quiver;

use super::{Hh1, Slots};

/// `x H + y E + z F` with `[H,E] = 2E`, `[H,F] = −2F`, `[E,F] = H`.
#[derive(Clone, PartialEq, Eq, Serialize)]
pub struct Sl2Element {
    #[serde(serialize_with = "crate::report::ser_display")]
    pub x: Scalar,
    #[serde(serialize_with = "crate::report::ser_display")]
    pub y: Scalar,
    #[serde(serialize_with = "crate::report::ser_display")]
    pub z: Scalar,
}

impl Sl2Element {
    pub fn new(x: Scalar, y: Scalar, z: Scalar) -> Self {
        Sl2Element { x, y, z }
    }

    pub fn zero(f: FieldDescriptor) -> Self {
        Sl2Element { x: f.zero(), y: f.zero(), z: f.zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    pub fn to_vec(&self) -> Vector {
        vec![self.x.clone(), self.y.clone(), self.z.clone()]
    }

    pub fn bracket(&self, o: &Sl2Element) -> Sl2Element {
        let f = self.x.field();
        let two = f.from_i64(2);
        Sl2Element {
            x: &(&self.y * &o.z) - &(&self.z * &o.y),
            y: &two * &(&(&self.x * &o.y) - &(&self.y * &o.x)),
            z: -(&two * &(&(&self.x * &o.z) - &(&self.z * &o.x))),
        }
    }

    pub fn add(&self, o: &Sl2Element) -> Sl2Element {
        Sl2Element { x: &self.x + &o.x, y: &self.y + &o.y, z: &self.z + &o.z }
    }

    pub fn scale(&self, c: &Scalar) -> Sl2Element {
        Sl2Element { x: c * &self.x, y: c * &self.y, z: c * &self.z }
    }
}

impl fmt::Debug for Sl2Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

/// Checks that `a`, `b` are parallel and are the only arrows leaving their
/// source and the only arrows entering their target.
pub fn delta_defined(q: &Quiver, a: usize, b: usize) -> Result<(), DeltaError> {
    let (qa, qb) = (q.arrow(a), q.arrow(b));
    let fail = |reason: &str| DeltaError::DeltaUndefined {
        a: qa.label.clone(),
        b: qb.label.clone(),
        reason: reason.to_string(),
    };
    if a == b {
        return Err(fail("arrows coincide"));
    }
    if qa.source != qb.source || qa.target != qb.target {
        return Err(fail("arrows are not parallel"));
    }
    let leaving = q.arrows().iter().filter(|x| x.source == qa.source).count();
    let entering = q.arrows().iter().filter(|x| x.target == qa.target).count();
    if leaving != 2 || entering != 2 {
        return Err(fail("the separated arrows do not form a Kronecker component"));
    }
    Ok(())
}

/// `(x, y, z)` read off the coefficients of `a` and `b` in `δ(a)` and `δ(b)`.
pub fn delta_coordinates(alg: &AlgebraTable, slots: &Slots, a: usize, b: usize, coords: &[Scalar]) -> Sl2Element {
    let f = alg.field();
    let (ia, ib) = (alg.arrow_index(a), alg.arrow_index(b));
    let get = |arrow: usize, j: usize| slots.find(arrow, j).map_or_else(|| f.zero(), |s| coords[s].clone());
    let (caa, cab, cba, cbb) = (get(a, ia), get(a, ib), get(b, ia), get(b, ib));
    let half = f.from_i64(2).inv().expect("characteristic not 2");
    Sl2Element { x: &(&caa - &cbb) * &half, y: cba, z: cab }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeltaImage {
    pub images: Vec<Sl2Element>,
    pub image_dim: usize,
    pub surjective: bool,
    /// Basis of the kernel, in the coordinates of the given `HH^1_rad`.
    #[serde(serialize_with = "crate::report::ser_vectors")]
    pub kernel_basis: Vec<Vector>,
}

/// Evaluates the map on every basis class of `h`.
pub fn delta_map(alg: &AlgebraTable, pair: (usize, usize), h: &Hh1) -> Result<DeltaImage, DeltaError> {
    let f = alg.field();
    if f.characteristic() == 2 {
        return Err(DeltaError::UnsupportedCharacteristic(2));
    }
    delta_defined(alg.quiver(), pair.0, pair.1)?;
    let images: Vec<Sl2Element> = h.reps.iter().map(|r| delta_coordinates(alg, h.slots(), pair.0, pair.1, r)).collect();
    let rows: Vec<Vector> = (0..3).map(|k| images.iter().map(|s| s.to_vec()[k].clone()).collect()).collect();
    let m = Mat::from_rows(f, images.len(), &rows);
    let image_dim = m.rank();
    Ok(DeltaImage { images, image_dim, surjective: image_dim == 3, kernel_basis: m.kernel_basis() })
}
