//! Independent reference formulas used only by tests.
#![allow(dead_code)]

use num_complex::Complex64;

/// Dressed susceptibility written directly from the closed form, for a
/// transition at detuning `x` with optical decay `ge` and ground decay `gg`.
pub fn dressed(alpha: f64, x: f64, pump: f64, ge: f64, gg: f64, g: f64) -> Complex64 {
    let i = Complex64::i();
    let optical = i * x - ge;
    let raman = i * (x - pump) - gg;
    alpha / 2.0 * (-i * raman) / (optical * raman + g * g)
}

/// d/dx of [`dressed`]: with D = O·R + G², the quotient rule collapses to
/// (α/2)(G² − R²)/D².
pub fn dressed_slope(alpha: f64, x: f64, pump: f64, ge: f64, gg: f64, g: f64) -> Complex64 {
    let i = Complex64::i();
    let optical = i * x - ge;
    let raman = i * (x - pump) - gg;
    let den = optical * raman + g * g;
    alpha / 2.0 * (g * g - raman * raman) / (den * den)
}

/// Plain O(N) quadrature of a(τ) = Σ A(ν) e^{−iντ} dν.
pub fn direct_synthesis(spectrum: &[Complex64], omegas: &[f64], domega: f64, tau: f64) -> Complex64 {
    spectrum
        .iter()
        .zip(omegas)
        .map(|(a, &w)| a * Complex64::new(0.0, -w * tau).exp())
        .sum::<Complex64>()
        * domega
}

pub fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

pub fn crel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}
