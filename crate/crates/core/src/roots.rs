//! Approximate complex root finding by simultaneous Aberth–Ehrlich
//! iteration, and the numeric (non-certificate) open-half-plane check.
//!
//! Multiple roots are handled by exact square-free splitting first: the
//! solver runs on each square-free factor (where convergence is fast and
//! clean) and each root is reported with its multiplicity. Initialization is
//! deterministic: the degree-d factor starts from `r·exp(i(2πk/d + 1/4))`,
//! k = 0…d-1, with `r` the Cauchy root bound; the iteration cap is 200
//! sweeps. Residuals are measured against the original polynomial.

use num_complex::Complex64;
use num_traits::ToPrimitive;

use crate::certify::{CertifyError, IntPoly};
use crate::sturm::RatPoly;

/// Documented iteration cap per square-free factor.
pub const MAX_SWEEPS: u32 = 200;

/// One approximate root with its multiplicity and backward error.
#[derive(Clone, Copy, Debug)]
pub struct NumericRoot {
    pub value: Complex64,
    pub multiplicity: u32,
    /// `|p(value)|` on the original polynomial.
    pub residual: f64,
}

/// All approximate roots of a polynomial; `converged` is false when some
/// factor hit the iteration cap (partial results are still reported).
#[derive(Clone, Debug)]
pub struct RootReport {
    pub roots: Vec<NumericRoot>,
    pub converged: bool,
    pub sweeps: u32,
}

fn to_f64_coeffs(p: &RatPoly) -> Vec<f64> {
    p.coeffs()
        .iter()
        .map(|c| c.to_f64().unwrap_or(f64::NAN))
        .collect()
}

fn eval_complex(coeffs: &[f64], x: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

fn derivative_coeffs(coeffs: &[f64]) -> Vec<f64> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, &c)| c * k as f64)
        .collect()
}

/// Aberth–Ehrlich on a square-free real-coefficient polynomial (Jacobi-style
/// simultaneous corrections). Returns (roots, converged, sweeps).
fn aberth(coeffs: &[f64], tol: f64) -> (Vec<Complex64>, bool, u32) {
    let degree = coeffs.len() - 1;
    let lead = coeffs[degree];
    let radius = 1.0
        + coeffs[..degree]
            .iter()
            .map(|c| (c / lead).abs())
            .fold(0.0, f64::max);
    let offset = 0.25;
    let mut xs: Vec<Complex64> = (0..degree)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / degree as f64 + offset;
            Complex64::from_polar(radius, theta)
        })
        .collect();
    let deriv = derivative_coeffs(coeffs);

    for sweep in 1..=MAX_SWEEPS {
        let mut corrections = vec![Complex64::new(0.0, 0.0); degree];
        let mut max_correction = 0.0f64;
        for k in 0..degree {
            let pk = eval_complex(coeffs, xs[k]);
            if pk.norm() == 0.0 {
                continue;
            }
            let dk = eval_complex(&deriv, xs[k]);
            let newton = if dk.norm() == 0.0 {
                // A stalled derivative off a root: nudge deterministically.
                Complex64::new(tol, tol)
            } else {
                pk / dk
            };
            let mut repulsion = Complex64::new(0.0, 0.0);
            for j in 0..degree {
                if j != k {
                    let diff = xs[k] - xs[j];
                    if diff.norm() > 0.0 {
                        repulsion += diff.inv();
                    }
                }
            }
            let denom = Complex64::new(1.0, 0.0) - newton * repulsion;
            let correction = if denom.norm() < 1e-300 {
                newton
            } else {
                newton / denom
            };
            corrections[k] = correction;
            max_correction = max_correction.max(correction.norm());
        }
        for k in 0..degree {
            xs[k] -= corrections[k];
        }
        if max_correction < tol {
            return (xs, true, sweep);
        }
    }
    (xs, false, MAX_SWEEPS)
}

/// Degree-many root approximations of `p`, multiplicities resolved exactly
/// before the numeric stage.
pub fn numeric_roots(p: &IntPoly, tol: f64) -> Result<RootReport, CertifyError> {
    if p.is_zero() {
        return Err(CertifyError::ZeroPolynomial);
    }
    if p.degree() == Some(0) {
        return Err(CertifyError::DegreeTooSmall);
    }
    let p_f64 = to_f64_coeffs(&p.to_rat());
    let mut roots = Vec::new();
    let mut converged = true;
    let mut sweeps = 0;

    let k0 = p.zero_root_multiplicity();
    if k0 > 0 {
        roots.push(NumericRoot {
            value: Complex64::new(0.0, 0.0),
            multiplicity: k0 as u32,
            residual: eval_complex(&p_f64, Complex64::new(0.0, 0.0)).norm(),
        });
    }
    let q = RatPoly::from_bigints(&p.coeffs()[k0..]);
    for (i, factor) in q.yun().into_iter().enumerate() {
        if factor.degree().unwrap_or(0) == 0 {
            continue;
        }
        let coeffs = to_f64_coeffs(&factor);
        let (mut xs, ok, n) = aberth(&coeffs, tol);
        converged &= ok;
        sweeps = sweeps.max(n);
        xs.sort_by(|a, b| {
            (a.re, a.im)
                .partial_cmp(&(b.re, b.im))
                .unwrap_or(std::cmp::Ordering::Equal)
        });
        for x in xs {
            roots.push(NumericRoot {
                value: x,
                multiplicity: (i + 1) as u32,
                residual: eval_complex(&p_f64, x).norm(),
            });
        }
    }
    Ok(RootReport {
        roots,
        converged,
        sweeps,
    })
}

/// Numeric open-half-plane report: true iff every root has real part below
/// `-tol`. Explicitly not a certificate.
#[derive(Clone, Debug)]
pub struct HalfplaneReport {
    pub all_strictly_negative: bool,
    pub max_real_part: Option<f64>,
    pub roots: Vec<NumericRoot>,
    pub converged: bool,
}

pub fn check_halfplane_negative(p: &IntPoly, tol: f64) -> Result<HalfplaneReport, CertifyError> {
    if p.is_zero() {
        return Err(CertifyError::ZeroPolynomial);
    }
    if p.degree() == Some(0) {
        return Ok(HalfplaneReport {
            all_strictly_negative: true,
            max_real_part: None,
            roots: Vec::new(),
            converged: true,
        });
    }
    let report = numeric_roots(p, tol)?;
    let max_re = report
        .roots
        .iter()
        .map(|r| r.value.re)
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(HalfplaneReport {
        all_strictly_negative: report.converged && max_re < -tol,
        max_real_part: Some(max_re),
        roots: report.roots,
        converged: report.converged,
    })
}
