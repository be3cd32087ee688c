//! Distances between single-qubit unitaries, SU(2) projection and quaternions.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::unitary::Unitary2;

/// Global-phase-invariant distance `sqrt(1 − |Tr(U₀U†)|/2)`, in `[0, 1]`.
///
/// Close to zero the radicand is evaluated as `s²/(1 + c)` with
/// `c = |Tr M|/2`, `M = U₀U†` and `s² = |det(M − (Tr M/2)·I)|`, which equals
/// `1 − c` for unitary `M` without the cancellation, so tiny distances keep
/// full relative precision instead of bottoming out near `1e-8`.
#[inline]
pub fn distance_phase_invariant(u0: &Unitary2, u: &Unitary2) -> f64 {
    let c = 0.5 * u0.trace_with_adjoint(u).norm();
    let r = 1.0 - c;
    if r > 1e-4 {
        return r.min(1.0).sqrt();
    }
    let m = *u0 * u.adjoint();
    let h = (m.m[0] - m.m[3]) * 0.5;
    let s2 = (h * h + m.m[1] * m.m[2]).norm();
    (s2 / (1.0 + c)).clamp(0.0, 1.0).sqrt()
}

/// Divides out `sqrt(det u)`, picking the sign that gives `Re Tr ≥ 0`.
///
/// When the trace is within 1e-12 of zero (π rotations) the sign is chosen so
/// that the first quaternion component `x, y, z` that is not near zero is positive.
pub fn to_su2(u: &Unitary2) -> Unitary2 {
    const TIE: f64 = 1e-12;
    let s = u.det().sqrt();
    let v = u.scale(s.inv());
    let [a, b, c, d] = v.m;
    let w = 0.5 * (a.re + d.re);
    let leading = if w.abs() > TIE {
        w
    } else {
        [
            -0.5 * (b.im + c.im),
            0.5 * (c.re - b.re),
            0.5 * (d.im - a.im),
        ]
        .into_iter()
        .find(|x| x.abs() > TIE)
        .unwrap_or(0.0)
    };
    if leading < 0.0 {
        v.scale(Complex64::new(-1.0, 0.0))
    } else {
        v
    }
}

/// Unit quaternion with `u = w·I − i(x·σx + y·σy + z·σz)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub fn dot(&self, other: &Quaternion) -> f64 {
        self.w * other.w + self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn to_matrix(&self) -> Unitary2 {
        let Quaternion { w, x, y, z } = *self;
        Unitary2::new(
            Complex64::new(w, -z),
            Complex64::new(-y, -x),
            Complex64::new(y, -x),
            Complex64::new(w, z),
        )
    }
}

/// Maps an SU(2) matrix to its unit quaternion. Fails when `|det u − 1| > 1e-9`,
/// which means the caller skipped [`to_su2`].
pub fn to_quaternion(u: &Unitary2) -> Result<Quaternion> {
    let det_err = (u.det() - Complex64::new(1.0, 0.0)).norm();
    if det_err > 1e-9 {
        return Err(Error::NotSpecialUnitary(det_err));
    }
    let [a, b, c, d] = u.m;
    let q = Quaternion {
        w: 0.5 * (a.re + d.re),
        x: -0.5 * (b.im + c.im),
        y: 0.5 * (c.re - b.re),
        z: 0.5 * (d.im - a.im),
    };
    let n = q.norm();
    Ok(Quaternion {
        w: q.w / n,
        x: q.x / n,
        y: q.y / n,
        z: q.z / n,
    })
}

/// `sqrt(1 − |⟨q_a, q_b⟩|)` on the SU(2) projections of both matrices.
///
/// The absolute value folds the `q ≡ −q` double cover.
pub fn distance_quaternion(a: &Unitary2, b: &Unitary2) -> f64 {
    let qa = to_quaternion(&to_su2(a)).expect("to_su2 output has unit determinant");
    let qb = to_quaternion(&to_su2(b)).expect("to_su2 output has unit determinant");
    (1.0 - qa.dot(&qb).abs()).clamp(0.0, 1.0).sqrt()
}

/// Which distance a report uses.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    #[default]
    PhaseInvariant,
    Quaternion,
}

impl Metric {
    pub fn distance(self, a: &Unitary2, b: &Unitary2) -> f64 {
        match self {
            Metric::PhaseInvariant => distance_phase_invariant(a, b),
            Metric::Quaternion => distance_quaternion(a, b),
        }
    }
}

/// Resolution of [`canonical_key`].
pub const KEY_RESOLUTION: f64 = 1e-9;

/// SU(2) projection with every real component rounded to [`KEY_RESOLUTION`].
///
/// Matrices equal up to global phase (and far from a rounding boundary) share a key.
pub fn canonical_key(u: &Unitary2) -> [i64; 8] {
    to_su2(u)
        .to_reals()
        .map(|x| (x / KEY_RESOLUTION).round() as i64)
}
