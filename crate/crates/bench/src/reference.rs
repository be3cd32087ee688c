//! Reference length/precision curve `L = 1.55·ln(1/ε)^1.6` for a learned braid
//! compiler, used only as a comparison column.

const SCALE: f64 = 1.55;
const EXPONENT: f64 = 1.6;

/// `ε` at word length `length`.
pub fn rl_reference_eps(length: f64) -> f64 {
    (-(length / SCALE).powf(1.0 / EXPONENT)).exp()
}

/// Word length needed for precision `eps`.
pub fn rl_reference_length(eps: f64) -> f64 {
    SCALE * (1.0 / eps).ln().powf(EXPONENT)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn curve_inverts() {
        for l in 20..=30 {
            let eps = rl_reference_eps(l as f64);
            assert!((rl_reference_length(eps) - l as f64).abs() < 1e-9);
        }
        // ln(1/ε) = (25/1.55)^(1/1.6) = 5.68532…
        assert!((rl_reference_eps(25.0) - 3.39543e-3).abs() < 1e-8);
        assert!(rl_reference_eps(30.0) < rl_reference_eps(20.0));
    }
}
