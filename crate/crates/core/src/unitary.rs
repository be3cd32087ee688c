//! Dense 2×2 complex matrices and the SU(2) rotation helpers built on them.

use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;

/// Tolerance for the unitarity check applied to user-supplied matrices.
pub const UNITARY_TOL: f64 = 1e-12;

/// A 2×2 complex matrix stored row-major as `[m00, m01, m10, m11]`.
///
/// Nothing in the type forces unitarity; products of unitaries stay unitary up
/// to rounding, and [`Unitary2::checked`] validates matrices coming from outside.
#[derive(Clone, Copy, PartialEq)]
pub struct Unitary2 {
    pub m: [Complex64; 4],
}

impl fmt::Debug for Unitary2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.m;
        write!(f, "[[{a:.6}, {b:.6}], [{c:.6}, {d:.6}]]")
    }
}

impl Default for Unitary2 {
    fn default() -> Self {
        Self::identity()
    }
}

impl Unitary2 {
    pub const fn new(m00: Complex64, m01: Complex64, m10: Complex64, m11: Complex64) -> Self {
        Self {
            m: [m00, m01, m10, m11],
        }
    }

    pub const fn identity() -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        Self::new(one, zero, zero, one)
    }

    pub fn diag(a: Complex64, d: Complex64) -> Self {
        Self::new(a, Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), d)
    }

    /// Builds a matrix from eight reals `[re00, im00, re01, im01, re10, im10, re11, im11]`.
    pub fn from_reals(r: [f64; 8]) -> Self {
        Self::new(
            Complex64::new(r[0], r[1]),
            Complex64::new(r[2], r[3]),
            Complex64::new(r[4], r[5]),
            Complex64::new(r[6], r[7]),
        )
    }

    pub fn to_reals(&self) -> [f64; 8] {
        let [a, b, c, d] = self.m;
        [a.re, a.im, b.re, b.im, c.re, c.im, d.re, d.im]
    }

    /// Like [`Unitary2::from_reals`], but rejects matrices that are not unitary
    /// within [`UNITARY_TOL`].
    pub fn checked(r: [f64; 8]) -> Option<Self> {
        let u = Self::from_reals(r);
        (u.unitarity_error() <= UNITARY_TOL && (u.det().norm() - 1.0).abs() <= UNITARY_TOL)
            .then_some(u)
    }

    pub fn adjoint(&self) -> Self {
        let [a, b, c, d] = self.m;
        Self::new(a.conj(), c.conj(), b.conj(), d.conj())
    }

    pub fn trace(&self) -> Complex64 {
        self.m[0] + self.m[3]
    }

    pub fn det(&self) -> Complex64 {
        self.m[0] * self.m[3] - self.m[1] * self.m[2]
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            m: self.m.map(|z| z * s),
        }
    }

    /// `Tr(self · other†)` without forming the product.
    #[inline]
    pub fn trace_with_adjoint(&self, other: &Self) -> Complex64 {
        self.m
            .iter()
            .zip(other.m.iter())
            .fold(Complex64::new(0.0, 0.0), |acc, (a, b)| acc + a * b.conj())
    }

    /// Largest entry-wise modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.m
            .iter()
            .zip(other.m.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Max entry-wise deviation of `U·U†` from the identity.
    pub fn unitarity_error(&self) -> f64 {
        (*self * self.adjoint()).max_abs_diff(&Self::identity())
    }

    /// Rotation `cos(θ/2)·I − i·sin(θ/2)·(n·σ)` for a unit axis `n`.
    pub fn rotation(axis: [f64; 3], angle: f64) -> Self {
        let (s, c) = (angle / 2.0).sin_cos();
        let [x, y, z] = axis;
        Self::new(
            Complex64::new(c, -s * z),
            Complex64::new(-s * y, -s * x),
            Complex64::new(s * y, -s * x),
            Complex64::new(c, s * z),
        )
    }

    /// Rotation angle in `[0, π]` and unit axis of an SU(2) matrix, taken
    /// modulo the `±U` sign. The axis defaults to `z` for the identity.
    pub fn axis_angle(&self) -> ([f64; 3], f64) {
        let [a, b, c, d] = self.m;
        let mut w = 0.5 * (a.re + d.re);
        let mut v = [
            -0.5 * (b.im + c.im),
            0.5 * (c.re - b.re),
            0.5 * (d.im - a.im),
        ];
        if w < 0.0 {
            w = -w;
            v = v.map(|x| -x);
        }
        let s = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        let angle = 2.0 * s.atan2(w);
        if s == 0.0 {
            return ([0.0, 0.0, 1.0], 0.0);
        }
        (v.map(|x| x / s), angle)
    }
}

impl Mul for Unitary2 {
    type Output = Unitary2;

    #[inline]
    fn mul(self, rhs: Unitary2) -> Unitary2 {
        let [a, b, c, d] = self.m;
        let [e, f, g, h] = rhs.m;
        Unitary2::new(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)
    }
}

impl Mul for &Unitary2 {
    type Output = Unitary2;

    #[inline]
    fn mul(self, rhs: &Unitary2) -> Unitary2 {
        *self * *rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_is_unitary() {
        assert_eq!(Unitary2::identity().unitarity_error(), 0.0);
        assert_eq!(Unitary2::identity().det(), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn rotation_axis_angle_roundtrip() {
        let n = [1.0 / 3f64.sqrt(); 3];
        let r = Unitary2::rotation(n, 0.7);
        let (axis, angle) = r.axis_angle();
        assert!((angle - 0.7).abs() < 1e-14);
        for (p, q) in axis.iter().zip(n.iter()) {
            assert!((p - q).abs() < 1e-14);
        }
        assert!(r.unitarity_error() < 1e-15);
        assert!((r.det() - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn checked_rejects_non_unitary() {
        assert!(Unitary2::checked([1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 2.0, 0.0]).is_none());
        assert!(Unitary2::checked([0.0, 0.0, 1.0, 0.0, 1.0, 0.0, 0.0, 0.0]).is_some());
    }

    #[test]
    fn trace_with_adjoint_matches_product() {
        let u = Unitary2::rotation([0.0, 1.0, 0.0], 0.3);
        let v = Unitary2::rotation([1.0, 0.0, 0.0], 1.1);
        let direct = (u * v.adjoint()).trace();
        assert!((direct - u.trace_with_adjoint(&v)).norm() < 1e-15);
    }
}
