//! Special functions used by the Morse eigenfunctions.

/// Natural log of the gamma function.
pub fn ln_gamma(x: f64) -> f64 {
    statrs::function::gamma::ln_gamma(x)
}

/// Magnitude threshold above which the Laguerre recurrence rescales.
const RESCALE_AT: f64 = 1e100;

/// Generalised Laguerre polynomial `L_n^(alpha)(x)` as `(mantissa, ln_scale)`,
/// i.e. the value is `mantissa * exp(ln_scale)`. The three-term recurrence runs
/// in linear space and divides both carried terms by `1e100` whenever the
/// current one exceeds that magnitude.
pub fn laguerre_scaled(n: usize, alpha: f64, x: f64) -> (f64, f64) {
    let mut prev = 1.0;
    if n == 0 {
        return (prev, 0.0);
    }
    let mut cur = 1.0 + alpha - x;
    let mut ln_scale = 0.0;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + alpha - x) * cur - (kf + alpha) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
        if cur.abs() > RESCALE_AT {
            cur /= RESCALE_AT;
            prev /= RESCALE_AT;
            ln_scale += RESCALE_AT.ln();
        }
    }
    (cur, ln_scale)
}

/// Generalised Laguerre polynomial `L_n^(alpha)(x)`.
pub fn laguerre(n: usize, alpha: f64, x: f64) -> f64 {
    let (mantissa, ln_scale) = laguerre_scaled(n, alpha, x);
    mantissa * ln_scale.exp()
}
