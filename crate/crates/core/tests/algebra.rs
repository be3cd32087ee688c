mod common;

use anyon_core::metric::{canonical_key, to_quaternion, to_su2};
use anyon_core::{distance_phase_invariant, distance_quaternion, BraidWord, Generator, Unitary2};
use common::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn lib(m: &M2) -> Unitary2 {
    to_unitary(m)
}

#[test]
fn generators_match_closed_forms() {
    for g in Generator::ALL {
        let got = from_unitary(&g.matrix());
        assert!(max_diff(&got, &sigma(g.as_char())) < 1e-15, "{g:?}");
        assert!(g.matrix().unitarity_error() < 1e-12);
        assert!((g.matrix().det().norm() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn sigma2_columns_have_unit_norm() {
    let phi = anyon_core::braid::phi();
    assert!((phi * phi + phi - 1.0).abs() < 1e-15);
    let m = Generator::Sigma2.matrix().m;
    let col0 = m[0].norm_sqr() + m[2].norm_sqr();
    let col1 = m[1].norm_sqr() + m[3].norm_sqr();
    // φ² + φ for both columns
    assert!((col0 - 1.0).abs() < 1e-15);
    assert!((col1 - 1.0).abs() < 1e-15);
}

#[test]
fn yang_baxter() {
    let l: BraidWord = "ABA".parse().unwrap();
    let r: BraidWord = "BAB".parse().unwrap();
    assert!(l.evaluate().max_abs_diff(&r.evaluate()) < 1e-12);
    assert!(max_diff(&eval("ABA"), &eval("BAB")) < 1e-12);
    let li: BraidWord = "aba".parse().unwrap();
    let ri: BraidWord = "bab".parse().unwrap();
    assert!(li.evaluate().max_abs_diff(&ri.evaluate()) < 1e-12);
}

#[test]
fn tenth_powers_are_identity() {
    for l in ["A", "B", "a", "b"] {
        let w: BraidWord = l.repeat(10).parse().unwrap();
        assert!(
            w.evaluate().max_abs_diff(&Unitary2::identity()) < 1e-11,
            "{l}"
        );
    }
}

#[test]
fn evaluation_order_is_left_to_right() {
    for w in ["", "A", "aB", "BBaAb", "abABabAB"] {
        let word: BraidWord = w.parse().unwrap();
        assert!(
            max_diff(&from_unitary(&word.evaluate()), &eval(w)) < 1e-13,
            "{w}"
        );
    }
    // σ₁σ₂ ≠ σ₂σ₁, so the order is observable
    assert!(max_diff(&eval("AB"), &eval("BA")) > 0.1);
}

#[test]
fn phase_invariant_distance_matches_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..200 {
        let (a, b) = (random_u2(&mut rng), random_u2(&mut rng));
        assert!((distance_phase_invariant(&lib(&a), &lib(&b)) - distance(&a, &b)).abs() < 1e-12);
    }
    // Tr H = 0
    let d = distance_phase_invariant(&lib(&gate("H")), &Unitary2::identity());
    assert_eq!(d, 1.0);
}

/// Largest singular value of a 2×2 complex matrix.
fn spectral_norm(a: &M2) -> f64 {
    let h = mul(&adjoint(a), a);
    let tr = (h[0][0] + h[1][1]).re;
    let det = (h[0][0] * h[1][1] - h[0][1] * h[1][0]).re;
    let disc = (tr * tr - 4.0 * det).max(0.0).sqrt();
    (0.5 * (tr + disc)).max(0.0).sqrt()
}

fn frobenius(a: &M2) -> f64 {
    a.iter().flatten().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

fn min_over_phase(u: &M2, v: &M2, norm: fn(&M2) -> f64) -> f64 {
    let f = |alpha: f64| {
        let p = polar(alpha);
        let diff = [
            [u[0][0] - p * v[0][0], u[0][1] - p * v[0][1]],
            [u[1][0] - p * v[1][0], u[1][1] - p * v[1][1]],
        ];
        norm(&diff)
    };
    let steps = 3600;
    let h = std::f64::consts::TAU / steps as f64;
    let k = (0..steps)
        .min_by(|i, j| f(*i as f64 * h).total_cmp(&f(*j as f64 * h)))
        .unwrap();
    let (mut lo, mut hi) = ((k as f64 - 1.0) * h, (k as f64 + 1.0) * h);
    let g = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..100 {
        let m1 = hi - g * (hi - lo);
        let m2 = lo + g * (hi - lo);
        if f(m1) < f(m2) {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    f(0.5 * (lo + hi))
}

#[test]
fn norm_relation_uses_operator_two_norm() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut checked = 0;
    while checked < 200 {
        let u = random_su2(&mut rng);
        let eps = rng.gen_range(0.001..0.5);
        let v = mul(&u, &rotation(random_axis(&mut rng), eps));
        let d = distance_phase_invariant(&lib(&u), &lib(&v));
        if d >= 0.1 {
            continue;
        }
        checked += 1;
        let two = min_over_phase(&u, &v, spectral_norm);
        assert!(
            (two / (2f64.sqrt() * d) - 1.0).abs() < 0.01,
            "d = {d}, ‖·‖₂ = {two}"
        );
        // The Frobenius norm picks up an extra √2 from the two equal singular values.
        let fro = min_over_phase(&u, &v, frobenius);
        assert!(
            (fro / (2.0 * d) - 1.0).abs() < 0.01,
            "d = {d}, ‖·‖F = {fro}"
        );
    }
}

#[test]
fn quaternion_distance_matches_axis_angle() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..200 {
        let (u, v) = (random_u2(&mut rng), random_u2(&mut rng));
        // ⟨q_u, q_v⟩ = cos(θ/2) where θ is the rotation angle of u·v†
        let p = to_su2(&lib(&mul(&u, &adjoint(&v))));
        let (_, theta) = p.axis_angle();
        let expect = (1.0 - (theta / 2.0).cos().abs()).max(0.0).sqrt();
        let got = distance_quaternion(&lib(&u), &lib(&v));
        assert!((got - expect).abs() < 1e-7, "{got} vs {expect}");
    }
}

fn unitary_strategy() -> impl Strategy<Value = Unitary2> {
    (any::<u64>()).prop_map(|seed| lib(&random_u2(&mut ChaCha8Rng::seed_from_u64(seed))))
}

fn word_strategy(max: usize) -> impl Strategy<Value = BraidWord> {
    prop::collection::vec(0u8..4, 0..max).prop_map(|codes| {
        BraidWord::new(
            codes
                .into_iter()
                .map(|c| Generator::from_code(c).unwrap())
                .collect(),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn metric_axioms(u in unitary_strategy(), v in unitary_strategy(), w in unitary_strategy(), theta in 0.0..std::f64::consts::TAU) {
        let d = distance_phase_invariant;
        prop_assert_eq!(d(&v, &w), d(&w, &v));
        prop_assert!(d(&v, &w) <= d(&v, &u) + d(&u, &w) + 1e-12);
        prop_assert!(d(&u, &u.scale(polar(theta))) < 1e-12);
        let dv = d(&u, &v);
        prop_assert!((0.0..=1.0).contains(&dv));
    }

    #[test]
    fn quaternion_round_trip(u in unitary_strategy()) {
        let su = to_su2(&u);
        prop_assert!((su.det() - c(1.0, 0.0)).norm() < 1e-12);
        prop_assert!(su.trace().re >= -1e-12);
        let q = to_quaternion(&su).unwrap();
        prop_assert!((q.norm() - 1.0).abs() < 1e-12);
        prop_assert!(q.to_matrix().max_abs_diff(&su) < 1e-10);
    }

    #[test]
    fn canonical_key_ignores_phase(u in unitary_strategy(), theta in 0.0..std::f64::consts::TAU) {
        // Keys can differ only when a component sits on a rounding boundary.
        let a = canonical_key(&u);
        let b = canonical_key(&u.scale(polar(theta)));
        prop_assert!(a.iter().zip(&b).all(|(x, y)| (x - y).abs() <= 1));
    }

    #[test]
    fn simplify_preserves_value(w in word_strategy(40)) {
        let s = w.simplify();
        prop_assert!(s.len() <= w.len());
        prop_assert!(s.evaluate().max_abs_diff(&w.evaluate()) < 1e-12);
        prop_assert!(s.letters().windows(2).all(|p| p[1] != p[0].inverse()));
    }

    #[test]
    fn inverse_word_evaluates_to_adjoint(w in word_strategy(40)) {
        let inv = w.inverse();
        prop_assert_eq!(inv.len(), w.len());
        prop_assert!((w.evaluate() * inv.evaluate()).max_abs_diff(&Unitary2::identity()) < 1e-12);
        prop_assert!(inv.evaluate().max_abs_diff(&w.evaluate().adjoint()) < 1e-12);
    }

    #[test]
    fn text_format_round_trips(w in word_strategy(40)) {
        let text = w.to_string();
        prop_assert!(text.chars().all(|ch| "AaBb".contains(ch)));
        prop_assert_eq!(text.parse::<BraidWord>().unwrap(), w);
    }
}

#[test]
fn standard_gates() {
    let g = |n: &str| anyon_core::gate::standard_gate(n).unwrap().matrix;
    for n in ["X", "H", "T"] {
        assert!(max_diff(&from_unitary(&g(n)), &gate(n)) < 1e-15, "{n}");
    }
    assert!((g("H") * g("H")).max_abs_diff(&Unitary2::identity()) < 1e-15);
    let t4 = g("T") * g("T") * g("T") * g("T");
    let z = Unitary2::diag(c(1.0, 0.0), c(-1.0, 0.0));
    assert!(t4.max_abs_diff(&z) < 1e-15);
    assert!(anyon_core::gate::standard_gate("Y").is_err());
}
