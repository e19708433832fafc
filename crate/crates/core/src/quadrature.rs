//! Adaptive Simpson quadrature with interval bisection.

use crate::{Error, Result};

/// Hard cap on the number of subintervals in one run.
pub const MAX_INTERVALS: usize = 1 << 20;

/// Per-branch bisection cap, near the resolution of `f64` on a unit interval.
const MAX_DEPTH: u32 = 50;

/// Every branch is bisected at least this many times before the error test
/// is trusted, so symmetric integrands cannot fool the first comparison.
const MIN_DEPTH: u32 = 3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    /// Sum of the per-leaf Richardson error estimates.
    pub error: f64,
    pub intervals: usize,
}

struct Acc {
    value: f64,
    error: f64,
    intervals: usize,
    capped: bool,
}

/// Integrates `f` over `[a, b]` aiming at an absolute error of `tol`.
///
/// Errors from `f` are propagated unchanged. If some branch hits the depth or
/// interval cap with its local test unmet and the accumulated error exceeds `tol`,
/// [`Error::ToleranceNotMet`] carries the best estimate.
pub fn adaptive_simpson<F>(mut f: F, a: f64, b: f64, tol: f64) -> Result<Quadrature>
where
    F: FnMut(f64) -> Result<f64>,
{
    if !(tol > 0.0) || !a.is_finite() || !b.is_finite() {
        return Err(Error::Contract("quadrature needs finite bounds and tol > 0"));
    }
    if a == b {
        return Ok(Quadrature { value: 0.0, error: 0.0, intervals: 0 });
    }
    let fa = f(a)?;
    let fb = f(b)?;
    let m = 0.5 * (a + b);
    let fm = f(m)?;
    let whole = simpson(a, b, fa, fm, fb);
    let mut acc = Acc { value: 0.0, error: 0.0, intervals: 0, capped: false };
    refine(&mut f, a, b, fa, fm, fb, whole, tol, 0, &mut acc)?;
    if acc.capped && acc.error > tol {
        return Err(Error::ToleranceNotMet { estimate: acc.value, error: acc.error });
    }
    Ok(Quadrature { value: acc.value, error: acc.error, intervals: acc.intervals })
}

#[inline]
fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn refine<F>(
    f: &mut F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
    acc: &mut Acc,
) -> Result<()>
where
    F: FnMut(f64) -> Result<f64>,
{
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm)?;
    let frm = f(rm)?;
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    // Leaves whose halves agree to rounding level cannot be improved.
    let resolved = delta.abs() <= 15.0 * tol || delta.abs() <= 1e-14 * (left + right).abs();
    let converged = depth >= MIN_DEPTH && resolved;
    if converged || depth + 1 >= MAX_DEPTH || acc.intervals + 2 >= MAX_INTERVALS {
        acc.value += left + right + delta / 15.0;
        acc.error += delta.abs() / 15.0;
        acc.intervals += 2;
        acc.capped |= !converged;
        return Ok(());
    }
    refine(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1, acc)?;
    refine(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1, acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_is_exact() {
        let q = adaptive_simpson(|x| Ok(x * x * x - 2.0 * x), 0.0, 2.0, 1e-12).unwrap();
        assert!((q.value - 0.0).abs() < 1e-12);
    }

    #[test]
    fn log_singular_integrand() {
        // ∫_0^{t} dx/((1-x)(1+x)) = atanh t, steep near the endpoint.
        let t = 0.999_999;
        let q = adaptive_simpson(|x| Ok(1.0 / ((1.0 - x) * (1.0 + x))), 0.0, t, 1e-10).unwrap();
        assert!((q.value - libm::atanh(t)).abs() < 1e-9, "{}", q.value);
    }

    #[test]
    fn reversed_interval_changes_sign() {
        let fwd = adaptive_simpson(|x| Ok(libm::exp(x)), 0.0, 1.0, 1e-12).unwrap();
        let bwd = adaptive_simpson(|x| Ok(libm::exp(x)), 1.0, 0.0, 1e-12).unwrap();
        assert!((fwd.value + bwd.value).abs() < 1e-12);
    }

    #[test]
    fn cap_reports_best_estimate() {
        // A jump that can never be resolved to 1e-30.
        let err = adaptive_simpson(|x| Ok(if x < 0.3 { 0.0 } else { 1.0 }), 0.0, 1.0, 1e-30).unwrap_err();
        match err {
            Error::ToleranceNotMet { estimate, .. } => assert!((estimate - 0.7).abs() < 1e-5),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn integrand_errors_propagate() {
        let err = adaptive_simpson(
            |x| if x > 0.5 { Err(Error::DomainViolation { domain: "test" }) } else { Ok(x) },
            0.0,
            1.0,
            1e-6,
        )
        .unwrap_err();
        assert_eq!(err, Error::DomainViolation { domain: "test" });
    }
}
