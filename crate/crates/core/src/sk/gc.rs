//! Balanced group-commutator decomposition of near-identity rotations.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::metric::{distance_phase_invariant, to_su2};
use crate::unitary::Unitary2;

/// Largest `d(I, Δ)` accepted by [`gc_decompose`].
pub const MAX_DELTA_DISTANCE: f64 = 0.5;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GcPair {
    pub v: Unitary2,
    pub w: Unitary2,
}

impl GcPair {
    /// `V·W·V†·W†`.
    pub fn commutator(&self) -> Unitary2 {
        group_commutator(&self.v, &self.w)
    }
}

pub fn group_commutator(v: &Unitary2, w: &Unitary2) -> Unitary2 {
    *v * *w * v.adjoint() * w.adjoint()
}

/// Writes `delta` (up to global phase) as `V·W·V†·W†` with `V`, `W` rotations
/// by the same angle `φ`, about orthogonal axes.
///
/// `φ` solves `sin(θ/2) = 2 sin²(φ/2)·sqrt(1 − sin⁴(φ/2))` for the rotation
/// angle `θ` of `delta`. The commutator of x- and y-rotations by `φ` is a
/// rotation by `θ`; a similarity transform then moves its axis onto the axis of
/// `delta`.
pub fn gc_decompose(delta: &Unitary2) -> Result<GcPair> {
    let distance = distance_phase_invariant(&Unitary2::identity(), delta);
    if distance.is_nan() || distance >= MAX_DELTA_DISTANCE {
        return Err(Error::TooFarFromIdentity { distance });
    }
    let (axis, theta) = to_su2(delta).axis_angle();
    if theta == 0.0 {
        return Ok(GcPair {
            v: Unitary2::identity(),
            w: Unitary2::identity(),
        });
    }
    let phi = commutator_angle(theta);
    let v0 = Unitary2::rotation([1.0, 0.0, 0.0], phi);
    let w0 = Unitary2::rotation([0.0, 1.0, 0.0], phi);
    let (seed_axis, _) = group_commutator(&v0, &w0).axis_angle();
    let s = align(seed_axis, axis);
    let sd = s.adjoint();
    Ok(GcPair {
        v: s * v0 * sd,
        w: s * w0 * sd,
    })
}

fn commutator_residual(phi: f64, theta: f64) -> f64 {
    let s2 = (phi / 2.0).sin().powi(2);
    2.0 * s2 * (1.0 - s2 * s2).sqrt() - (theta / 2.0).sin()
}

/// Solves for `φ ∈ [0, π/2]`.
///
/// Squaring the defining relation gives `sin²(φ/2) = sin(θ/4)` on the small root.
/// Falls back to bisection if the closed form misses by more than 1e-14.
pub fn commutator_angle(theta: f64) -> f64 {
    let closed = 2.0 * (theta / 4.0).sin().max(0.0).sqrt().min(1.0).asin();
    if commutator_residual(closed, theta).abs() <= 1e-14 {
        return closed;
    }
    // residual is increasing in φ on [0, π/2]
    let (mut lo, mut hi) = (0.0_f64, std::f64::consts::FRAC_PI_2);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let r = commutator_residual(mid, theta);
        if r.abs() <= 1e-14 {
            return mid;
        }
        if r < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn norm(a: [f64; 3]) -> f64 {
    dot(a, a).sqrt()
}

/// SU(2) rotation taking unit vector `from` onto unit vector `to`.
pub fn align(from: [f64; 3], to: [f64; 3]) -> Unitary2 {
    const PARALLEL: f64 = 1e-12;
    let c = cross(from, to);
    let s = norm(c);
    let cos = dot(from, to);
    if s > PARALLEL {
        return Unitary2::rotation(c.map(|x| x / s), s.atan2(cos));
    }
    if cos > 0.0 {
        return Unitary2::identity();
    }
    // Antiparallel: half turn about the first coordinate axis crossed with `from`
    // that is not parallel to it.
    let perp = (0..3)
        .map(|k| {
            let mut e = [0.0; 3];
            e[k] = 1.0;
            cross(from, e)
        })
        .find(|p| norm(*p) > 1e-6)
        .expect("a unit vector is parallel to at most one coordinate axis");
    let n = norm(perp);
    Unitary2::rotation(perp.map(|x| x / n), std::f64::consts::PI)
}

/// Max entry-wise deviation between `a` and `b` after removing their relative
/// global phase.
pub fn phase_aligned_error(a: &Unitary2, b: &Unitary2) -> f64 {
    let t = a.trace_with_adjoint(b);
    let phase = if t.norm() > 0.0 {
        t / t.norm()
    } else {
        Complex64::new(1.0, 0.0)
    };
    a.max_abs_diff(&b.scale(phase))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_decomposes_to_identities() {
        let pair = gc_decompose(&Unitary2::identity()).unwrap();
        assert_eq!(pair.v, Unitary2::identity());
        assert_eq!(pair.w, Unitary2::identity());
    }

    #[test]
    fn z_rotation_reconstructs() {
        let delta = Unitary2::rotation([0.0, 0.0, 1.0], 0.2);
        let pair = gc_decompose(&delta).unwrap();
        assert!(phase_aligned_error(&delta, &pair.commutator()) < 1e-10);
        assert!(distance_phase_invariant(&delta, &pair.commutator()) < 1e-10);
    }

    #[test]
    fn far_delta_is_refused() {
        let delta = Unitary2::rotation([1.0, 0.0, 0.0], 3.0);
        assert!(matches!(
            gc_decompose(&delta),
            Err(Error::TooFarFromIdentity { .. })
        ));
    }

    #[test]
    fn commutator_angle_solves_relation() {
        for k in 0..=100 {
            let theta = std::f64::consts::PI * k as f64 / 100.0;
            let phi = commutator_angle(theta);
            assert!(
                commutator_residual(phi, theta).abs() <= 1e-14,
                "θ = {theta}"
            );
        }
    }

    #[test]
    fn align_handles_parallel_and_antiparallel() {
        let z = [0.0, 0.0, 1.0];
        for (from, to) in [
            ([1.0, 0.0, 0.0], [0.0, 1.0, 0.0]),
            (z, z),
            (z, [0.0, 0.0, -1.0]),
            ([1.0, 0.0, 0.0], [-1.0, 0.0, 0.0]),
        ] {
            let s = align(from, to);
            let moved = s * Unitary2::rotation(from, 0.4) * s.adjoint();
            let expect = Unitary2::rotation(to, 0.4);
            assert!(
                phase_aligned_error(&moved, &expect) < 1e-14,
                "{from:?} -> {to:?}"
            );
        }
    }
}
