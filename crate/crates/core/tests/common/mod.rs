//! Independent oracles shared by the integration tests. Nothing here goes
//! through the library's own matrix product or generator table.

#![allow(dead_code)]

use anyon_core::Unitary2;
use num_complex::Complex64;
use rand::Rng;
use std::f64::consts::PI;

pub type M2 = [[Complex64; 2]; 2];

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn polar(theta: f64) -> Complex64 {
    Complex64::from_polar(1.0, theta)
}

pub fn mul(a: &M2, b: &M2) -> M2 {
    let mut out = [[c(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

pub fn adjoint(a: &M2) -> M2 {
    [
        [a[0][0].conj(), a[1][0].conj()],
        [a[0][1].conj(), a[1][1].conj()],
    ]
}

pub fn eye() -> M2 {
    [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]]
}

/// Generator matrices written out from their closed forms.
pub fn sigma(letter: char) -> M2 {
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let s1 = [
        [polar(-4.0 * PI / 5.0), c(0.0, 0.0)],
        [c(0.0, 0.0), polar(3.0 * PI / 5.0)],
    ];
    let off = polar(-3.0 * PI / 5.0) * phi.sqrt();
    let s2 = [[-polar(-PI / 5.0) * phi, off], [off, c(-phi, 0.0)]];
    match letter {
        'A' => s1,
        'a' => adjoint(&s1),
        'B' => s2,
        'b' => adjoint(&s2),
        _ => panic!("bad letter {letter}"),
    }
}

pub fn eval(word: &str) -> M2 {
    word.chars().fold(eye(), |acc, l| mul(&acc, &sigma(l)))
}

pub fn to_unitary(m: &M2) -> Unitary2 {
    Unitary2::new(m[0][0], m[0][1], m[1][0], m[1][1])
}

pub fn from_unitary(u: &Unitary2) -> M2 {
    [[u.m[0], u.m[1]], [u.m[2], u.m[3]]]
}

/// `sqrt(1 − |Tr(a b†)|/2)` from scratch.
pub fn distance(a: &M2, b: &M2) -> f64 {
    let p = mul(a, &adjoint(b));
    (1.0 - 0.5 * (p[0][0] + p[1][1]).norm())
        .clamp(0.0, 1.0)
        .sqrt()
}

pub fn max_diff(a: &M2, b: &M2) -> f64 {
    let mut m: f64 = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            m = m.max((a[i][j] - b[i][j]).norm());
        }
    }
    m
}

/// Haar-random SU(2) from a normalised Gaussian quaternion.
pub fn random_su2<R: Rng>(rng: &mut R) -> M2 {
    let q: Vec<f64> = (0..4).map(|_| gaussian(rng)).collect();
    let n = q.iter().map(|x| x * x).sum::<f64>().sqrt();
    let (w, x, y, z) = (q[0] / n, q[1] / n, q[2] / n, q[3] / n);
    [[c(w, -z), c(-y, -x)], [c(y, -x), c(w, z)]]
}

/// Haar-random SU(2) times a uniform global phase.
pub fn random_u2<R: Rng>(rng: &mut R) -> M2 {
    let ph = polar(rng.gen_range(0.0..2.0 * PI));
    random_su2(rng).map(|row| row.map(|x| x * ph))
}

pub fn random_axis<R: Rng>(rng: &mut R) -> [f64; 3] {
    loop {
        let v = [gaussian(rng), gaussian(rng), gaussian(rng)];
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if n > 1e-6 {
            return v.map(|x| x / n);
        }
    }
}

/// `exp(−iθ n·σ/2)` written out.
pub fn rotation(axis: [f64; 3], theta: f64) -> M2 {
    let (s, co) = (theta / 2.0).sin_cos();
    let [x, y, z] = axis;
    [
        [c(co, -s * z), c(-s * y, -s * x)],
        [c(s * y, -s * x), c(co, s * z)],
    ]
}

fn gaussian<R: Rng>(rng: &mut R) -> f64 {
    let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (2.0 * PI * u2).cos()
}

/// All words of length `len` over `letters`, in the order given by `letters`.
pub fn all_words(letters: &str, len: usize) -> Vec<String> {
    let chars: Vec<char> = letters.chars().collect();
    let mut out = vec![String::new()];
    for _ in 0..len {
        out = out
            .iter()
            .flat_map(|p| chars.iter().map(move |ch| format!("{p}{ch}")))
            .collect();
    }
    out
}

/// Exhaustive minimum over words of length `len`, ties to the smallest word
/// in text order (`A < B < a < b`).
pub fn exhaustive_min(target: &M2, letters: &str, len: usize) -> (f64, String) {
    let mut sorted: Vec<char> = letters.chars().collect();
    sorted.sort_unstable();
    let sorted: String = sorted.into_iter().collect();
    let mut best = (f64::INFINITY, String::new());
    for w in all_words(&sorted, len) {
        let d = distance(target, &eval(&w));
        if d < best.0 {
            best = (d, w);
        }
    }
    best
}

pub fn gate(name: &str) -> M2 {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    match name {
        "I" => eye(),
        "X" => [[c(0.0, 0.0), c(1.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)]],
        "H" => [[c(r, 0.0), c(r, 0.0)], [c(r, 0.0), c(-r, 0.0)]],
        "T" => [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), polar(PI / 4.0)]],
        _ => panic!("unknown gate {name}"),
    }
}
