//! Wigner functions of Fock states and real-coefficient pure states, plus
//! the brute-force quasiprobability oracle: direct 2D quadrature of the
//! Wigner function over a disk.
//!
//! Two evaluation routes coexist on purpose:
//!
//! * [`pure_state_wigner`] computes the defining integral
//!   `W_ψ(q,p) = (1/2π) ∫ ψ(q+x/2) ψ(q−x/2) e^{ipx} dx`
//!   by quadrature. It is slow and is used as the reference.
//! * [`HermiteState::wigner`] expands the same quantity in the closed-form
//!   Fock kernel `W_{nm}` (associated-Laguerre form) and is what grid scans
//!   use. The two routes are held together by tests.
//!
//! With plain `dq dp` integration these conventions make `∬ W = 1` and put
//! the classical bound at `|W| ≤ 1/π`.

use std::f64::consts::{FRAC_1_PI, PI, SQRT_2};

use num_complex::Complex64;
use thiserror::Error;

use crate::polyfn::{hermite_normalized, laguerre, pochhammer};
use crate::quadrature::{integrate_1d, integrate_disk, QuadError, QuadResult, QuadratureSpec};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WignerError {
    #[error("hermite state invalid: {0}")]
    InvalidState(String),
    #[error("wigner bound violated at (q={q}, p={p}): W = {value} (must lie in [-1/π, 1/π])")]
    BoundViolation { q: f64, p: f64, value: f64 },
    #[error("grid invalid: {0}")]
    InvalidGrid(String),
    #[error(transparent)]
    Quadrature(#[from] QuadError),
}

/// A normalized pure state given by real Hermite-basis coefficients
/// `ψ(x) = Σ_n c_n H_n(x) e^{−x²/2}` with `Σ c_n² = 1`.
///
/// Complex coefficients are out of scope: the QPI of a rotationally
/// symmetric region depends on the Fock diagonal `|c_n|²` only, so real
/// coefficients lose no generality for anything this crate computes.
#[derive(Debug, Clone, PartialEq)]
pub struct HermiteState {
    coeffs: Vec<f64>,
}

impl HermiteState {
    pub fn new(coeffs: Vec<f64>) -> Result<Self, WignerError> {
        if coeffs.is_empty() {
            return Err(WignerError::InvalidState("empty coefficient vector".into()));
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(WignerError::InvalidState("non-finite coefficient".into()));
        }
        let norm: f64 = coeffs.iter().map(|c| c * c).sum();
        if (norm - 1.0).abs() > 1e-10 {
            return Err(WignerError::InvalidState(format!(
                "squared coefficients sum to {norm}, expected 1 within 1e-10"
            )));
        }
        Ok(HermiteState { coeffs })
    }

    /// The `n`-th Fock state as a coefficient vector.
    pub fn fock(n: usize) -> Self {
        let mut coeffs = vec![0.0; n + 1];
        coeffs[n] = 1.0;
        HermiteState { coeffs }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn max_degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Position wavefunction `ψ(x)`.
    pub fn psi(&self, x: f64) -> f64 {
        let poly: f64 = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| c * hermite_normalized(n, x))
            .sum();
        poly * (-x * x / 2.0).exp()
    }

    /// Closed-form Wigner function of the state (Fock-kernel expansion).
    pub fn wigner(&self, q: f64, p: f64) -> f64 {
        let r2 = q * q + p * p;
        let damp = (-r2).exp();
        // z^j table for the off-diagonal angular factors, z = q − ip
        let maxdeg = self.max_degree();
        let z = Complex64::new(q, -p);
        let mut zpow = Vec::with_capacity(maxdeg + 1);
        zpow.push(Complex64::new(1.0, 0.0));
        for j in 1..=maxdeg {
            zpow.push(zpow[j - 1] * z);
        }

        let mut total = 0.0;
        for (n, &cn) in self.coeffs.iter().enumerate() {
            if cn == 0.0 {
                continue;
            }
            let sign_n = if n % 2 == 0 { 1.0 } else { -1.0 };
            total += cn * cn * sign_n * laguerre(n, 0.0, 2.0 * r2);
            for (m, &cm) in self.coeffs.iter().enumerate().skip(n + 1) {
                if cm == 0.0 {
                    continue;
                }
                let d = m - n;
                let ratio = (1.0 / pochhammer(n as f64 + 1.0, d)).sqrt(); // √(n!/m!)
                let angular = SQRT_2.powi(d as i32) * zpow[d].re;
                total += 2.0
                    * cn
                    * cm
                    * sign_n
                    * ratio
                    * angular
                    * laguerre(n, d as f64, 2.0 * r2);
            }
        }
        total * damp * FRAC_1_PI
    }
}

/// Wigner function of the `n`-th Fock state,
/// `W_n(q,p) = ((−1)^n/π) L_n(2(q²+p²)) e^{−(q²+p²)}`.
///
/// Attains the classical extremes at the origin: `+1/π` for even `n`,
/// `−1/π` for odd `n`.
pub fn fock_wigner(n: usize, q: f64, p: f64) -> f64 {
    let r2 = q * q + p * p;
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    sign * FRAC_1_PI * laguerre(n, 0.0, 2.0 * r2) * (-r2).exp()
}

/// Integration cutoff for the defining Wigner integral: the integrand decays
/// like `e^{−x²/4}` and the Hermite factors live within `|y| ≲ √(2·deg)`.
fn integration_cutoff(max_degree: usize) -> f64 {
    12.0 + 2.0 * (2.0 * max_degree as f64).sqrt()
}

/// Wigner function by direct quadrature of the defining integral.
///
/// Returns the real part; the imaginary part vanishes identically for real
/// coefficients (the product `ψ(q+x/2)ψ(q−x/2)` is even in `x`) and is
/// asserted below 1e-10 as a numerical self-check.
pub fn pure_state_wigner(
    state: &HermiteState,
    q: f64,
    p: f64,
    spec: &QuadratureSpec,
) -> Result<f64, QuadError> {
    let cutoff = integration_cutoff(state.max_degree());
    let product = |x: f64| state.psi(q + x / 2.0) * state.psi(q - x / 2.0);
    let real = integrate_1d(|x| product(x) * (p * x).cos(), -cutoff, cutoff, spec)?;
    let imag = integrate_1d(|x| product(x) * (p * x).sin(), -cutoff, cutoff, spec)?;
    assert!(
        imag.value.abs() < 1e-10,
        "imaginary part of Wigner integral did not vanish: {}",
        imag.value
    );
    Ok(real.value / (2.0 * PI))
}

/// Input to the disk oracle: a Fock state (closed-form Wigner function) or a
/// general pure state (Wigner function evaluated by its defining integral).
#[derive(Debug, Clone, Copy)]
pub enum WignerInput<'a> {
    Fock(usize),
    Pure(&'a HermiteState),
}

/// Brute-force QPI over the disk of given radius: `∬_{q²+p²≤a²} W dq dp`.
///
/// For `Fock(n)` this must reproduce the spectral value `λ_n^D(a)`; that
/// equivalence is the keystone cross-check between the spectra module and
/// the phase-space definition.
pub fn qpi_oracle_disk(
    input: WignerInput<'_>,
    radius: f64,
    spec: &QuadratureSpec,
) -> Result<QuadResult, QuadError> {
    match input {
        WignerInput::Fock(n) => integrate_disk(|q, p| fock_wigner(n, q, p), radius, spec),
        WignerInput::Pure(state) => {
            // Pointwise Wigner values come from the defining integral, a few
            // digits tighter than the outer tolerance so the 2D rule does not
            // chase integrand noise.
            let point_spec = QuadratureSpec {
                abs_tol: (spec.abs_tol / 100.0).max(1e-13),
                rel_tol: spec.rel_tol,
                max_subdivisions: spec.max_subdivisions,
            };
            let failed = std::cell::Cell::new(false);
            let result = integrate_disk(
                |q, p| match pure_state_wigner(state, q, p, &point_spec) {
                    Ok(w) => w,
                    Err(QuadError::ToleranceNotReached { best }) => {
                        failed.set(true);
                        best.value
                    }
                },
                radius,
                spec,
            )?;
            if failed.get() {
                Err(QuadError::ToleranceNotReached { best: result })
            } else {
                Ok(result)
            }
        }
    }
}

/// Rectangular evaluation grid for Wigner scans.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub q_min: f64,
    pub q_max: f64,
    pub p_min: f64,
    pub p_max: f64,
    pub step: f64,
}

impl GridSpec {
    fn axis(lo: f64, hi: f64, step: f64) -> Vec<f64> {
        let count = ((hi - lo) / step + 1e-9).floor() as usize + 1;
        (0..count).map(|i| lo + i as f64 * step).collect()
    }

    pub fn validate(&self) -> Result<(), WignerError> {
        if !(self.step > 0.0) {
            return Err(WignerError::InvalidGrid(format!(
                "step {} must be positive",
                self.step
            )));
        }
        if self.q_min > self.q_max || self.p_min > self.p_max {
            return Err(WignerError::InvalidGrid(
                "empty range: min exceeds max".into(),
            ));
        }
        Ok(())
    }
}

/// Wigner function sampled on a grid, with the classical bound enforced at
/// construction: every value must lie in `[−1/π − ε, 1/π + ε]`, `ε = 1e−12`.
#[derive(Debug, Clone, PartialEq)]
pub struct WignerGrid {
    pub q: Vec<f64>,
    pub p: Vec<f64>,
    pub step: f64,
    /// Row-major: `values[i][j] = W(q[i], p[j])`.
    pub values: Vec<Vec<f64>>,
    pub min: f64,
    pub max: f64,
}

const BOUND_SLACK: f64 = 1e-12;

impl WignerGrid {
    pub fn evaluate(state: &HermiteState, grid: &GridSpec) -> Result<WignerGrid, WignerError> {
        WignerGrid::evaluate_fn(|q, p| state.wigner(q, p), grid)
    }

    /// Evaluate an arbitrary Wigner-type function on the grid, enforcing the
    /// classical bound pointwise. Used for Fock-diagonal mixtures, whose
    /// Wigner function is the convex combination of the Fock ones.
    pub fn evaluate_fn<F: Fn(f64, f64) -> f64>(
        wigner: F,
        grid: &GridSpec,
    ) -> Result<WignerGrid, WignerError> {
        grid.validate()?;
        let q = GridSpec::axis(grid.q_min, grid.q_max, grid.step);
        let p = GridSpec::axis(grid.p_min, grid.p_max, grid.step);
        let mut values = Vec::with_capacity(q.len());
        let mut min = f64::INFINITY;
        let mut max = f64::NEG_INFINITY;
        for &qi in &q {
            let mut row = Vec::with_capacity(p.len());
            for &pj in &p {
                let w = wigner(qi, pj);
                if w.abs() > FRAC_1_PI + BOUND_SLACK {
                    return Err(WignerError::BoundViolation {
                        q: qi,
                        p: pj,
                        value: w,
                    });
                }
                min = min.min(w);
                max = max.max(w);
                row.push(w);
            }
            values.push(row);
        }
        Ok(WignerGrid {
            q,
            p,
            step: grid.step,
            values,
            min,
            max,
        })
    }

    /// CSV rendering with columns `q,p,w`, one row per grid point.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("q,p,w\n");
        for (i, &qi) in self.q.iter().enumerate() {
            for (j, &pj) in self.p.iter().enumerate() {
                out.push_str(&format!(
                    "{:.11e},{:.11e},{:.11e}\n",
                    qi, pj, self.values[i][j]
                ));
            }
        }
        out
    }
}

/// Extrema of the Wigner function over a grid, with the classical bound
/// checked at every point. A violation is an implementation bug, not a
/// property of the state: the bound is a theorem.
pub fn bound_scan(state: &HermiteState, grid: &GridSpec) -> Result<(f64, f64), WignerError> {
    let g = WignerGrid::evaluate(state, grid)?;
    Ok((g.min, g.max))
}
