//! Orthogonal polynomials and related special functions.
//!
//! Everything downstream (spectra, basis functions, scaling coefficients)
//! reduces to four families evaluated here:
//!
//! * Laguerre polynomials `L_n^α(x)`, plain (`α = 0`) and associated, via the
//!   upward three-term recurrence
//!   `(n+1) L_{n+1}^α = (2n+1+α−x) L_n^α − (n+α) L_{n−1}^α`,
//!   which is stable for the degrees (`n ≲ 200`) and arguments (`x ≲ 100`)
//!   this crate needs.
//! * Hermite polynomials normalized so that `H_n(x) e^{−x²/2}` is an
//!   orthonormal family on the real line.
//! * The Pochhammer symbol `(α)_n = α(α+1)⋯(α+n−1)`.
//! * Meixner polynomials as terminating Gauss hypergeometric sums
//!   `₂F₁(−n, −m; β; z)`, with the argument convention (`z = 1−1/c` versus
//!   `z = 1−1/c²`) carried explicitly because the two appear interchangeably
//!   in the literature and only one reproduces the dilation matrix elements.
//!
//! All functions are pure and total on their stated domains; `meixner` is the
//! only fallible entry point (it rejects `c` outside `(0, 1)`).

use thiserror::Error;

/// Error type for the polynomial layer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum PolyError {
    /// Argument fell outside the function's domain.
    #[error("argument {value} of `{name}` outside domain {domain}")]
    OutOfDomain {
        name: &'static str,
        value: f64,
        domain: &'static str,
    },
}

/// Associated Laguerre polynomial `L_n^α(x)` by upward recurrence.
///
/// Plain Laguerre is `α = 0`. Exact at `x = 0` (`L_n^0(0) = 1` in floating
/// point as well, since the recurrence multiplies and subtracts integers).
pub fn laguerre(n: usize, alpha: f64, x: f64) -> f64 {
    match n {
        0 => 1.0,
        1 => 1.0 + alpha - x,
        _ => {
            let mut prev = 1.0;
            let mut cur = 1.0 + alpha - x;
            for j in 1..n {
                let jf = j as f64;
                let next = ((2.0 * jf + 1.0 + alpha - x) * cur - (jf + alpha) * prev) / (jf + 1.0);
                prev = cur;
                cur = next;
            }
            cur
        }
    }
}

/// All of `L_0^α(x) … L_nmax^α(x)` in one pass of the recurrence.
pub fn laguerre_all(nmax: usize, alpha: f64, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(nmax + 1);
    out.push(1.0);
    if nmax == 0 {
        return out;
    }
    out.push(1.0 + alpha - x);
    for j in 1..nmax {
        let jf = j as f64;
        let next = ((2.0 * jf + 1.0 + alpha - x) * out[j] - (jf + alpha) * out[j - 1]) / (jf + 1.0);
        out.push(next);
    }
    out
}

/// Derivative `d/dx L_n^α(x) = −L_{n−1}^{α+1}(x)`; zero for `n = 0`.
pub fn laguerre_derivative(n: usize, alpha: f64, x: f64) -> f64 {
    if n == 0 {
        0.0
    } else {
        -laguerre(n - 1, alpha + 1.0, x)
    }
}

/// Hermite polynomial `H_n(x)` normalized so that
/// `∫ (H_n(x) e^{−x²/2}) (H_m(x) e^{−x²/2}) dx = δ_{nm}`.
///
/// Equivalently `H_n = H_n^{phys} / √(2^n n! √π)`; the recurrence below is the
/// physicists' recurrence rescaled, `H_{n+1} = x√(2/(n+1)) H_n − √(n/(n+1)) H_{n−1}`,
/// which keeps every intermediate at the magnitude of the final value.
pub fn hermite_normalized(n: usize, x: f64) -> f64 {
    let h0 = std::f64::consts::PI.powf(-0.25);
    match n {
        0 => h0,
        _ => {
            let mut prev = h0;
            let mut cur = x * std::f64::consts::SQRT_2 * h0;
            for j in 1..n {
                let jf = j as f64;
                let next = x * (2.0 / (jf + 1.0)).sqrt() * cur - (jf / (jf + 1.0)).sqrt() * prev;
                prev = cur;
                cur = next;
            }
            cur
        }
    }
}

/// Pochhammer symbol `(α)_n = Γ(α+n)/Γ(α)` as the product `α(α+1)⋯(α+n−1)`.
///
/// Returns 1 for `n = 0` (empty product), including at `α = 0`.
pub fn pochhammer(alpha: f64, n: usize) -> f64 {
    (0..n).map(|j| alpha + j as f64).product()
}

/// `(−1)^n` as a float.
pub(crate) fn parity_sign(n: usize) -> f64 {
    if n % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Which argument the terminating `₂F₁` receives when a Meixner polynomial
/// `M_n(m, β; c²)` is evaluated at parameter `c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum MeixnerConvention {
    /// `z = 1 − 1/c`
    OneMinusInvC,
    /// `z = 1 − 1/c²`
    OneMinusInvCSquared,
}

impl MeixnerConvention {
    /// Hypergeometric argument for parameter value `c`.
    pub fn argument(self, c: f64) -> f64 {
        match self {
            MeixnerConvention::OneMinusInvC => 1.0 - 1.0 / c,
            MeixnerConvention::OneMinusInvCSquared => 1.0 - 1.0 / (c * c),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            MeixnerConvention::OneMinusInvC => "1 - 1/c",
            MeixnerConvention::OneMinusInvCSquared => "1 - 1/c^2",
        }
    }
}

/// Index pair, weight parameter and argument convention for a Meixner value.
///
/// `beta` plays the role of `2k` in the discrete-series weight `(2k)_n`; the
/// convention flag is mandatory so no call site silently assumes one of the
/// two competing argument forms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeixnerSpec {
    pub n: usize,
    pub m: usize,
    pub beta: f64,
    pub convention: MeixnerConvention,
}

/// Terminating Gauss hypergeometric sum
/// `₂F₁(−n, −m; β; z) = Σ_{j=0}^{min(n,m)} ((−n)_j (−m)_j)/((β)_j j!) z^j`.
///
/// The sum is a polynomial in `z`; terms are built by the ratio recurrence
/// `T_{j+1} = T_j · (j−n)(j−m) / ((β+j)(j+1)) · z`, so no factorials overflow.
pub(crate) fn hyp2f1_terminating(n: usize, m: usize, beta: f64, z: f64) -> f64 {
    let jmax = n.min(m);
    let (nf, mf) = (n as f64, m as f64);
    let mut term = 1.0;
    let mut sum = 1.0;
    for j in 0..jmax {
        let jf = j as f64;
        term *= (jf - nf) * (jf - mf) / ((beta + jf) * (jf + 1.0)) * z;
        sum += term;
    }
    sum
}

/// Meixner polynomial `M_n(m, β; c²)` for `0 < c < 1`.
pub fn meixner(spec: &MeixnerSpec, c: f64) -> Result<f64, PolyError> {
    if !(0.0 < c && c < 1.0) {
        return Err(PolyError::OutOfDomain {
            name: "meixner",
            value: c,
            domain: "(0, 1)",
        });
    }
    Ok(hyp2f1_terminating(
        spec.n,
        spec.m,
        spec.beta,
        spec.convention.argument(c),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use proptest::prelude::*;

    #[test]
    fn laguerre_low_orders() {
        // L_0 ≡ 1, L_1(x) = 1 − x, L_2(2) = 1 − 2·2 + 2²/2 = −1
        assert_eq!(laguerre(0, 0.0, 7.3), 1.0);
        assert_eq!(laguerre(1, 0.0, 2.0), -1.0);
        assert_abs_diff_eq!(laguerre(2, 0.0, 2.0), -1.0, epsilon = 1e-15);
    }

    #[test]
    fn laguerre_all_matches_scalar() {
        for &x in &[0.0, 1.0, 2.0, 17.5, 50.0] {
            let batch = laguerre_all(50, 0.0, x);
            for (n, &v) in batch.iter().enumerate() {
                let s = laguerre(n, 0.0, x);
                assert_relative_eq!(v, s, max_relative = 1e-13, epsilon = 1e-300);
            }
        }
        assert_eq!(laguerre_all(2, 0.0, 0.0), vec![1.0, 1.0, 1.0]);
        assert_eq!(laguerre_all(1, 0.0, 2.0), vec![1.0, -1.0]);
    }

    #[test]
    fn laguerre_derivative_finite_difference() {
        assert_eq!(laguerre_derivative(0, 0.0, 5.0), 0.0);
        assert_eq!(laguerre_derivative(1, 0.0, 3.0), -1.0);
        let h = 1e-6;
        let fd = (laguerre(4, 0.0, 0.7 + h) - laguerre(4, 0.0, 0.7 - h)) / (2.0 * h);
        assert_abs_diff_eq!(laguerre_derivative(4, 0.0, 0.7), fd, epsilon = 1e-6);
    }

    #[test]
    fn laguerre_uniform_bound() {
        // |L_n(x) e^{−x/2}| ≤ 1 on x ≥ 0 (classical bound); equality at x = 0.
        for n in 0..=50 {
            let mut x = 0.0;
            while x <= 100.0 {
                let v = laguerre(n, 0.0, x) * (-x / 2.0).exp();
                assert!(
                    v.abs() <= 1.0 + 1e-12,
                    "bound violated: n={n} x={x} value={v}"
                );
                x += 0.25;
            }
        }
    }

    #[test]
    fn hermite_ground_state_value() {
        assert_abs_diff_eq!(
            hermite_normalized(0, 0.0),
            std::f64::consts::PI.powf(-0.25),
            epsilon = 1e-16
        );
    }

    #[test]
    fn pochhammer_values() {
        assert_eq!(pochhammer(1.0, 4), 24.0); // (1)_n = n!
        assert_eq!(pochhammer(0.5, 0), 1.0);
        assert_eq!(pochhammer(3.0, 2), 12.0);
    }

    #[test]
    fn meixner_trivial_indices() {
        for convention in [
            MeixnerConvention::OneMinusInvC,
            MeixnerConvention::OneMinusInvCSquared,
        ] {
            let spec = MeixnerSpec {
                n: 0,
                m: 5,
                beta: 1.0,
                convention,
            };
            assert_eq!(meixner(&spec, 0.3).unwrap(), 1.0);
            let spec = MeixnerSpec {
                n: 3,
                m: 0,
                beta: 1.0,
                convention,
            };
            assert_eq!(meixner(&spec, 0.3).unwrap(), 1.0);
        }
    }

    #[test]
    fn meixner_against_term_by_term_sum() {
        // Independent oracle: accumulate ((−n)_j (−m)_j)/((β)_j j!) z^j from
        // explicit Pochhammer products rather than the ratio recurrence.
        let (n, m, beta, c) = (2usize, 3usize, 1.0, 0.5);
        for convention in [
            MeixnerConvention::OneMinusInvC,
            MeixnerConvention::OneMinusInvCSquared,
        ] {
            let z = convention.argument(c);
            let mut expected = 0.0;
            for j in 0..=n.min(m) {
                let num = pochhammer(-(n as f64), j) * pochhammer(-(m as f64), j);
                let den = pochhammer(beta, j) * pochhammer(1.0, j);
                expected += num / den * z.powi(j as i32);
            }
            let spec = MeixnerSpec {
                n,
                m,
                beta,
                convention,
            };
            assert_relative_eq!(meixner(&spec, c).unwrap(), expected, max_relative = 1e-14);
        }
    }

    #[test]
    fn meixner_rejects_bad_parameter() {
        let spec = MeixnerSpec {
            n: 1,
            m: 1,
            beta: 1.0,
            convention: MeixnerConvention::OneMinusInvC,
        };
        assert!(meixner(&spec, 0.0).is_err());
        assert!(meixner(&spec, 1.0).is_err());
        assert!(meixner(&spec, -0.5).is_err());
        assert!(meixner(&spec, 1.5).is_err());
    }

    proptest! {
        #[test]
        fn meixner_index_symmetry(n in 0usize..=20, m in 0usize..=20, c in 0.05f64..0.95) {
            for convention in [MeixnerConvention::OneMinusInvC, MeixnerConvention::OneMinusInvCSquared] {
                let a = meixner(&MeixnerSpec { n, m, beta: 1.0, convention }, c).unwrap();
                let b = meixner(&MeixnerSpec { n: m, m: n, beta: 1.0, convention }, c).unwrap();
                prop_assert!((a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1.0));
            }
        }

        #[test]
        fn hermite_recurrence_consistency(n in 2usize..=12, x in -6.0f64..6.0) {
            // x √(2/(n)) H_{n-1} = H_n + √((n-1)/n) H_{n-2}
            let lhs = x * (2.0 / n as f64).sqrt() * hermite_normalized(n - 1, x);
            let rhs = hermite_normalized(n, x)
                + ((n as f64 - 1.0) / n as f64).sqrt() * hermite_normalized(n - 2, x);
            prop_assert!((lhs - rhs).abs() < 1e-12 * (1.0 + lhs.abs() + rhs.abs()));
        }
    }
}
