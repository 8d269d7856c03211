//! Central finite differences with one Richardson extrapolation step.
//!
//! The 5-point stencils are O(h⁴); combining step sizes h and 2h as
//! `(16·D(h) − D(2h)) / 15` cancels the leading error term.

use num_complex::Complex64;

/// Largest step in units of Γ: two decades below the narrowest EIT feature
/// of the reference drive (width G² = 2.25×10⁻²).
pub const DEFAULT_STEP: f64 = 1e-4;
/// Ratio between a feature's length scale and the step resolving it.
pub const STEPS_PER_FEATURE: f64 = 225.0;
const MIN_STEP: f64 = 1e-10;

/// Step for a function whose nearest singularity lies `scale` away:
/// `scale / 225`, capped at [`DEFAULT_STEP`].
pub fn adaptive_step(scale: f64) -> f64 {
    (scale / STEPS_PER_FEATURE).clamp(MIN_STEP, DEFAULT_STEP)
}

fn first_stencil<E>(
    f: &mut impl FnMut(f64) -> Result<Complex64, E>,
    x: f64,
    h: f64,
) -> Result<Complex64, E> {
    let fp1 = f(x + h)?;
    let fm1 = f(x - h)?;
    let fp2 = f(x + 2.0 * h)?;
    let fm2 = f(x - 2.0 * h)?;
    Ok((-fp2 + 8.0 * fp1 - 8.0 * fm1 + fm2) / (12.0 * h))
}

fn second_stencil<E>(
    f: &mut impl FnMut(f64) -> Result<Complex64, E>,
    x: f64,
    h: f64,
) -> Result<Complex64, E> {
    let f0 = f(x)?;
    let fp1 = f(x + h)?;
    let fm1 = f(x - h)?;
    let fp2 = f(x + 2.0 * h)?;
    let fm2 = f(x - 2.0 * h)?;
    Ok((-fp2 + 16.0 * fp1 - 30.0 * f0 + 16.0 * fm1 - fm2) / (12.0 * h * h))
}

/// f′(x) from 5-point central differences at h and 2h, Richardson-combined.
pub fn first_derivative<E>(
    mut f: impl FnMut(f64) -> Result<Complex64, E>,
    x: f64,
    h: f64,
) -> Result<Complex64, E> {
    let fine = first_stencil(&mut f, x, h)?;
    let coarse = first_stencil(&mut f, x, 2.0 * h)?;
    Ok((16.0 * fine - coarse) / 15.0)
}

/// f″(x), same scheme as [`first_derivative`].
pub fn second_derivative<E>(
    mut f: impl FnMut(f64) -> Result<Complex64, E>,
    x: f64,
    h: f64,
) -> Result<Complex64, E> {
    let fine = second_stencil(&mut f, x, h)?;
    let coarse = second_stencil(&mut f, x, 2.0 * h)?;
    Ok((16.0 * fine - coarse) / 15.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::convert::Infallible;

    fn ok(z: Complex64) -> Result<Complex64, Infallible> {
        Ok(z)
    }

    #[test]
    fn exact_on_low_order_polynomials() {
        // Richardson-combined 5-point stencils are exact through degree 6.
        let p = |x: f64| ok(Complex64::new(x.powi(5) - 3.0 * x * x, 2.0 * x.powi(6)));
        let x = 0.37;
        let d1 = first_derivative(p, x, 1e-2).unwrap();
        let e1 = Complex64::new(5.0 * x.powi(4) - 6.0 * x, 12.0 * x.powi(5));
        assert!((d1 - e1).norm() < 1e-11);
        let d2 = second_derivative(p, x, 1e-2).unwrap();
        let e2 = Complex64::new(20.0 * x.powi(3) - 6.0, 60.0 * x.powi(4));
        assert!((d2 - e2).norm() < 1e-8);
    }

    #[test]
    fn analytic_function() {
        let f = |x: f64| ok(Complex64::new(0.0, x).exp());
        let x = 1.1;
        let d1 = first_derivative(f, x, 1e-3).unwrap();
        let e1 = Complex64::i() * Complex64::new(0.0, x).exp();
        assert!((d1 - e1).norm() < 1e-12);
        let d2 = second_derivative(f, x, 1e-3).unwrap();
        assert!((d2 + Complex64::new(0.0, x).exp()).norm() < 1e-8);
    }

    #[test]
    fn step_is_capped() {
        assert_eq!(adaptive_step(1.0), DEFAULT_STEP);
        assert!((adaptive_step(0.0225) - 1e-4).abs() < 1e-18);
        assert!((adaptive_step(2.25e-3) - 1e-5).abs() < 1e-18);
        assert_eq!(adaptive_step(0.0), 1e-10);
    }

    #[test]
    fn errors_propagate() {
        let f = |x: f64| if x > 0.5 { Err("boom") } else { Ok(Complex64::new(x, 0.0)) };
        assert_eq!(first_derivative(f, 0.49, 0.01), Err("boom"));
    }
}
