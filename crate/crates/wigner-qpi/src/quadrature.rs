//! Error-controlled integration: adaptive 1D rules on finite intervals and
//! 2D integration over origin-centered disks in polar factorization.
//!
//! The 1D kernel is the 15-point Kronrod extension of 7-point Gauss
//! quadrature, with the QUADPACK error rescaling; adaptive refinement splits
//! the segment with the largest error estimate until the global estimate
//! meets `max(abs_tol, rel_tol·|value|)` or the subdivision budget runs out.
//!
//! Disk integrals use plain Lebesgue measure `dq dp`. That choice is fixed by
//! the closed-form check `∬_{q²+p²≤a²} (1/π) e^{−q²−p²} dq dp = 1 − e^{−a²}`,
//! which is exactly the ground-state disk eigenvalue; the alternative
//! `dq dp/π` normalization would make the spectra module and the Wigner
//! oracle disagree by a factor of π.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use thiserror::Error;

/// Tolerances and subdivision budget for one adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
}

impl QuadratureSpec {
    pub fn new(abs_tol: f64, rel_tol: f64, max_subdivisions: usize) -> Self {
        assert!(abs_tol > 0.0, "abs_tol must be positive");
        assert!(rel_tol > 0.0, "rel_tol must be positive");
        assert!(max_subdivisions >= 1, "max_subdivisions must be >= 1");
        QuadratureSpec {
            abs_tol,
            rel_tol,
            max_subdivisions,
        }
    }

    /// Same tolerances for both absolute and relative targets.
    pub fn with_tol(tol: f64) -> Self {
        QuadratureSpec::new(tol, tol, 2000)
    }
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec::new(1e-10, 1e-10, 2000)
    }
}

/// Value, error estimate, and work counter of one integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub error_estimate: f64,
    pub subdivisions_used: usize,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadError {
    /// Subdivision budget exhausted before the tolerance was met; carries the
    /// best estimate reached.
    #[error("quadrature tolerance not reached after {} subdivisions (value {}, error {})",
            best.subdivisions_used, best.value, best.error_estimate)]
    ToleranceNotReached { best: QuadResult },
}

// 15-point Kronrod abscissae (positive half; the rule is symmetric) and
// weights, plus the embedded 7-point Gauss weights. QUADPACK dqk15 values.
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// QUADPACK-style error rescaling from the raw Gauss/Kronrod difference.
fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut scaled = err.abs();
    if res_asc != 0.0 && scaled != 0.0 {
        let scale = (200.0 * scaled / res_asc).powf(1.5);
        scaled = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        scaled = scaled.max(50.0 * f64::EPSILON * res_abs);
    }
    scaled
}

/// One G7/K15 panel on `[a, b]`: returns (value, error estimate).
fn gauss_kronrod_15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let f_center = f(center);

    let mut fv = [0.0f64; 15];
    fv[7] = f_center;
    let mut res_kronrod = WGK[7] * f_center;
    // the center is also the middle node of the embedded 7-point Gauss rule
    let mut res_gauss = WG[3] * f_center;
    let mut res_abs = res_kronrod.abs();

    for (i, &x) in XGK.iter().enumerate().take(7) {
        let dx = half * x;
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv[i] = f1;
        fv[14 - i] = f2;
        res_kronrod += WGK[i] * (f1 + f2);
        res_abs += WGK[i] * (f1.abs() + f2.abs());
        if i % 2 == 1 {
            // odd Kronrod indices are the embedded Gauss nodes
            res_gauss += WG[i / 2] * (f1 + f2);
        }
    }

    let mean = res_kronrod * 0.5;
    let mut res_asc = WGK[7] * (f_center - mean).abs();
    for i in 0..7 {
        res_asc += WGK[i] * ((fv[i] - mean).abs() + (fv[14 - i] - mean).abs());
    }

    let err = ((res_kronrod - res_gauss) * half).abs();
    (
        res_kronrod * half,
        rescale_error(err, res_abs * half.abs(), res_asc * half.abs()),
    )
}

#[derive(Debug)]
struct Segment {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// Adaptive integral of `f` over `[lo, hi]`.
///
/// Requires `lo ≤ hi`; the empty interval integrates to exactly zero.
pub fn integrate_1d<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    spec: &QuadratureSpec,
) -> Result<QuadResult, QuadError> {
    assert!(lo <= hi, "integrate_1d: lo must not exceed hi");
    if lo == hi {
        return Ok(QuadResult {
            value: 0.0,
            error_estimate: 0.0,
            subdivisions_used: 0,
        });
    }

    let (value, error) = gauss_kronrod_15(&f, lo, hi);
    let mut heap = BinaryHeap::new();
    heap.push(Segment {
        lo,
        hi,
        value,
        error,
    });
    let mut total_value = value;
    let mut total_error = error;
    let mut used = 0usize;

    loop {
        if total_error <= spec.abs_tol.max(spec.rel_tol * total_value.abs()) {
            return Ok(QuadResult {
                value: total_value,
                error_estimate: total_error,
                subdivisions_used: used,
            });
        }
        if used >= spec.max_subdivisions {
            return Err(QuadError::ToleranceNotReached {
                best: QuadResult {
                    value: total_value,
                    error_estimate: total_error,
                    subdivisions_used: used,
                },
            });
        }
        let worst = heap.pop().expect("heap cannot be empty while error > 0");
        let mid = 0.5 * (worst.lo + worst.hi);
        let (v1, e1) = gauss_kronrod_15(&f, worst.lo, mid);
        let (v2, e2) = gauss_kronrod_15(&f, mid, worst.hi);
        total_value += v1 + v2 - worst.value;
        total_error += e1 + e2 - worst.error;
        heap.push(Segment {
            lo: worst.lo,
            hi: mid,
            value: v1,
            error: e1,
        });
        heap.push(Segment {
            lo: mid,
            hi: worst.hi,
            value: v2,
            error: e2,
        });
        used += 1;
    }
}

/// Adaptive integral of `f(q, p)` over the disk `q² + p² ≤ radius²` with
/// plain `dq dp` measure, in polar factorization (adaptive radial rule
/// outside, adaptive angular rule inside).
pub fn integrate_disk<F: Fn(f64, f64) -> f64>(
    f: F,
    radius: f64,
    spec: &QuadratureSpec,
) -> Result<QuadResult, QuadError> {
    assert!(radius > 0.0, "integrate_disk: radius must be positive");

    // The angular integrals feed the radial integrand as r·∮ f dθ, so their
    // absolute error enters the total as at most ∫ r·δ dr = δ·R²/2. Tighten
    // the inner tolerance accordingly and account for it in the estimate.
    let inner_abs = (spec.abs_tol / (radius * radius)).min(spec.abs_tol);
    let inner_spec = QuadratureSpec {
        abs_tol: inner_abs,
        rel_tol: spec.rel_tol,
        max_subdivisions: spec.max_subdivisions,
    };

    let inner_failure = std::cell::Cell::new(false);
    let inner_error = std::cell::Cell::new(0.0f64);

    let radial = |r: f64| -> f64 {
        let angular = integrate_1d(
            |theta: f64| f(r * theta.cos(), r * theta.sin()),
            0.0,
            2.0 * std::f64::consts::PI,
            &inner_spec,
        );
        match angular {
            Ok(res) => {
                inner_error.set(inner_error.get().max(res.error_estimate));
                r * res.value
            }
            Err(QuadError::ToleranceNotReached { best }) => {
                inner_failure.set(true);
                inner_error.set(inner_error.get().max(best.error_estimate));
                r * best.value
            }
        }
    };

    let outer = integrate_1d(radial, 0.0, radius, spec);
    let inner_contribution = inner_error.get() * radius * radius / 2.0;
    match outer {
        Ok(res) => {
            let result = QuadResult {
                value: res.value,
                error_estimate: res.error_estimate + inner_contribution,
                subdivisions_used: res.subdivisions_used,
            };
            if inner_failure.get() {
                Err(QuadError::ToleranceNotReached { best: result })
            } else {
                Ok(result)
            }
        }
        Err(QuadError::ToleranceNotReached { best }) => Err(QuadError::ToleranceNotReached {
            best: QuadResult {
                value: best.value,
                error_estimate: best.error_estimate + inner_contribution,
                subdivisions_used: best.subdivisions_used,
            },
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    #[test]
    fn linear_function() {
        let r = integrate_1d(|x| x, 0.0, 1.0, &QuadratureSpec::default()).unwrap();
        assert_abs_diff_eq!(r.value, 0.5, epsilon = 1e-14);
        assert!(r.error_estimate <= 1e-10);
    }

    #[test]
    fn gaussian_antiderivative() {
        // ∫_0^a 2x e^{−x²} dx = 1 − e^{−a²}
        for &a in &[0.5, 1.0, 2.0, 3.0] {
            let r = integrate_1d(
                |x| 2.0 * x * (-x * x).exp(),
                0.0,
                a,
                &QuadratureSpec::default(),
            )
            .unwrap();
            assert_abs_diff_eq!(r.value, 1.0 - (-a * a).exp(), epsilon = 1e-12);
        }
    }

    #[test]
    fn empty_interval_is_zero() {
        let r = integrate_1d(|_| 1.0, 2.0, 2.0, &QuadratureSpec::default()).unwrap();
        assert_eq!(r.value, 0.0);
        assert_eq!(r.subdivisions_used, 0);
    }

    #[test]
    fn budget_exhaustion_reports_best_estimate() {
        let spec = QuadratureSpec::new(1e-300, 1e-300, 1);
        let err = integrate_1d(|x: f64| (40.0 * x).sin() / (x + 1e-3), 0.0, 1.0, &spec)
            .expect_err("cannot reach 1e-300");
        let QuadError::ToleranceNotReached { best } = err;
        assert!(best.value.is_finite());
        assert!(best.error_estimate > 0.0);
    }

    #[test]
    fn disk_area() {
        for &a in &[0.5, 1.0, 2.5] {
            let r = integrate_disk(|_, _| 1.0, a, &QuadratureSpec::default()).unwrap();
            assert_abs_diff_eq!(r.value, PI * a * a, epsilon = 1e-9);
        }
    }

    #[test]
    fn disk_gaussian_closed_form() {
        // ∬_{r≤1} e^{−q²−p²} = π (1 − e^{−1})
        let r = integrate_disk(
            |q, p| (-(q * q + p * p)).exp(),
            1.0,
            &QuadratureSpec::default(),
        )
        .unwrap();
        assert_abs_diff_eq!(r.value, PI * (1.0 - (-1.0f64).exp()), epsilon = 1e-10);
    }

    #[test]
    fn disk_odd_integrand_vanishes() {
        let r = integrate_disk(|q, _| q, 2.0, &QuadratureSpec::default()).unwrap();
        assert_abs_diff_eq!(r.value, 0.0, epsilon = 1e-10);
    }

    #[test]
    fn disk_matches_radial_reduction() {
        // For f = g(q²+p²): ∬ f = 2π ∫_0^a g(r²) r dr, any radially symmetric g.
        let g = |s: f64| (1.0 + s).ln() * (-s / 3.0).exp();
        let a = 1.7;
        let full = integrate_disk(|q, p| g(q * q + p * p), a, &QuadratureSpec::default()).unwrap();
        let reduced = integrate_1d(|r| g(r * r) * r, 0.0, a, &QuadratureSpec::default()).unwrap();
        assert_abs_diff_eq!(full.value, 2.0 * PI * reduced.value, epsilon = 1e-9);
    }

    proptest! {
        #[test]
        fn linearity_on_random_cubics(
            c0 in -2.0f64..2.0, c1 in -2.0f64..2.0, c2 in -2.0f64..2.0,
            d0 in -2.0f64..2.0, d1 in -2.0f64..2.0, d3 in -2.0f64..2.0,
            alpha in -3.0f64..3.0, beta in -3.0f64..3.0,
        ) {
            let spec = QuadratureSpec::default();
            let f = move |x: f64| c0 + c1 * x + c2 * x * x;
            let g = move |x: f64| d0 + d1 * x + d3 * x * x * x;
            let lhs = integrate_1d(|x| alpha * f(x) + beta * g(x), -1.0, 2.0, &spec).unwrap().value;
            let fi = integrate_1d(f, -1.0, 2.0, &spec).unwrap().value;
            let gi = integrate_1d(g, -1.0, 2.0, &spec).unwrap().value;
            prop_assert!((lhs - (alpha * fi + beta * gi)).abs() < 1e-9);
        }

        #[test]
        fn interval_additivity(b in 0.1f64..0.9) {
            let spec = QuadratureSpec::default();
            let f = |x: f64| (3.0 * x).cos() * (-x).exp();
            let whole = integrate_1d(f, 0.0, 1.0, &spec).unwrap().value;
            let left = integrate_1d(f, 0.0, b, &spec).unwrap().value;
            let right = integrate_1d(f, b, 1.0, &spec).unwrap().value;
            prop_assert!((whole - (left + right)).abs() < 1e-9);
        }
    }
}
