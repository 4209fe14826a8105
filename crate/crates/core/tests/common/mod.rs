//! Reference computations that do not go through the library's code paths.
#![allow(dead_code)]

use std::f64::consts::PI;

/// One gain line as `(pump offset Hz, coupling-length product, rise time s)`.
pub type Line = (f64, f64, f64);

/// Coupling coefficients written straight from the two-wave-mixing formulas.
/// Also returns the summed term magnitudes, the error scale for each sum.
pub fn coupling(f: f64, lines: &[Line], angular: bool) -> (f64, f64, f64, f64) {
    let w = if angular { 2.0 * PI } else { 1.0 };
    let (mut gin, mut gph, mut abs_in, mut abs_ph) = (0.0, 0.0, 0.0, 0.0);
    for &(fp, gd, tau) in lines {
        let dw = w * (f - fp);
        let denom = 1.0 + dw * dw * tau * tau;
        let a = gd / 2.0 * (1.0 / denom);
        let b = gd / 2.0 * (dw * tau / denom);
        gin += a;
        gph += b;
        abs_in += a.abs();
        abs_ph += b.abs();
    }
    (gin, gph, abs_in, abs_ph)
}

/// Composite Simpson rule on `[a, b]` with `n` (even) panels.
pub fn simpson(a: f64, b: f64, n: usize, f: impl Fn(f64) -> f64) -> f64 {
    assert!(n % 2 == 0);
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for i in 1..n {
        let x = a + i as f64 * h;
        s += if i % 2 == 1 { 4.0 } else { 2.0 } * f(x);
    }
    s * h / 3.0
}

/// Continuous transform of `exp(-t²/t0²)`: `t0 √π exp(-(π f t0)²)`.
pub fn gaussian_spectrum(f: f64, t0: f64) -> f64 {
    t0 * PI.sqrt() * (-(PI * f * t0).powi(2)).exp()
}

/// Intensity-centroid delay of a Gaussian probe after the filter
/// `exp(gamma_in + i gamma_ph)`, by quadrature over the filtered spectrum:
/// `<t> = ∫ |S|² dφ/dω df / ∫ |S|² df`.
pub fn centroid_delay(t0: f64, lines: &[Line], angular: bool, f_max: f64) -> f64 {
    let h = 1e-5;
    let weight = |f: f64| {
        let (gin, _, _, _) = coupling(f, lines, angular);
        (gaussian_spectrum(f, t0) * gin.exp()).powi(2)
    };
    let phase_slope = |f: f64| {
        let p = coupling(f + h, lines, angular).1;
        let m = coupling(f - h, lines, angular).1;
        (p - m) / (2.0 * h) / (2.0 * PI)
    };
    let n = 400_000;
    let num = simpson(-f_max, f_max, n, |f| weight(f) * phase_slope(f));
    let den = simpson(-f_max, f_max, n, weight);
    num / den
}

/// Naive O(N²) DFT matching the library's centered-bin definition.
pub fn naive_forward(samples: &[(f64, f64)], dt: f64) -> Vec<(f64, f64)> {
    let n = samples.len();
    let df = 1.0 / (n as f64 * dt);
    (0..n)
        .map(|j| {
            let f = (j as f64 - (n / 2) as f64) * df;
            let (mut re, mut im) = (0.0, 0.0);
            for (k, &(xr, xi)) in samples.iter().enumerate() {
                let t = (k as f64 - (n / 2) as f64) * dt;
                let (s, c) = (2.0 * PI * f * t).sin_cos();
                re += xr * c - xi * s;
                im += xr * s + xi * c;
            }
            (re / n as f64, im / n as f64)
        })
        .collect()
}
