//! Expansion of region/contour spectra at a scaled radius in the spectrum at
//! the original radius, with discrete Meixner polynomials as coefficients.
//!
//! The working identity, for the circle spectrum, is
//!
//! ```text
//! λ_m^C(ξa) = Σ_n t_n(m) λ_n^C(a),
//! t_n(m) = (−1)^m √(1−c²) c^{m+n} · ₂F₁(−n, −m; 1; z)
//! ```
//!
//! where `c` and `z` depend on two conventions that the literature leaves
//! ambiguous and which this module fixes *empirically* instead of by fiat:
//!
//! * **direction** — whether `c = (ξ²−1)/(ξ²+1)` (scale read as written) or
//!   `c = (1−ξ²)/(1+ξ²)` (scale read inverted, i.e. built from `1/ξ`);
//! * **Meixner argument** — whether `z = 1 − 1/c` or `z = 1 − 1/c²`.
//!
//! [`resolve_conventions`] evaluates the expansion for `m ∈ {0, 1}` under
//! all four combinations against closed-form circle eigenvalues at the
//! scaled radius and demands exactly one survivor. (The `m = 0` row alone
//! cannot separate the two argument conventions — every Meixner value with
//! one zero index is 1 — which is why the probe includes `m = 1`.) The
//! resolved pair is `(inverted, 1 − 1/c²)`; the `m = 0` instance of that
//! choice is equivalent, through the Laguerre generating function
//! `Σ (−c)^n L_n(2a²) = e^{2a²c/(1+c)}/(1+c)`, to the closed form
//! `λ_0^C(ξa)`, and the resolution report records the residuals of all four
//! candidates.
//!
//! Disk spectra obey the same expansion with one extra factor of the scale:
//! `λ_m^D(ξa) = ξ·Σ_n t_n(m) λ_n^D(a)`. The factor is the Jacobian of
//! moving the scale from the upper integration limit into the radial
//! integrand (`∫_0^{ξa} = ξ∫_0^a` after substitution), and the `m = 0`
//! closed forms pin it unambiguously: `Σ √(1−c²) c^n λ_n^D(a) =
//! (1 − e^{−ξ²a²})/ξ = λ_0^D(ξa)/ξ`.

use serde::Serialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::glbasis::{PiBasis, SigmaBasis};
use crate::polyfn::{hyp2f1_terminating, parity_sign, MeixnerConvention};
use crate::quadrature::{QuadError, QuadratureSpec};
use crate::spectra::{circle_eigenvalue, RegionKind, Spectrum};

/// Residual threshold a candidate convention must beat during resolution.
pub const RESOLUTION_THRESHOLD: f64 = 1e-8;

/// Geometric tail target for automatic truncation of the expansion.
const TAIL_TARGET: f64 = 1e-10;

/// Hard cap on automatic truncation.
const TRUNCATION_CAP: usize = 2000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScalingError {
    #[error("convention resolution did not single out one candidate; passing: {passing:?}")]
    AmbiguousConvention { passing: Vec<String> },
    #[error("scale factor 1 is a degenerate dilation; nothing to resolve or check")]
    DegenerateScale,
    #[error(transparent)]
    Quadrature(#[from] QuadError),
}

/// How the expansion parameter `c` is built from the scale factor `ξ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    /// `c = (ξ² − 1)/(ξ² + 1)`
    AsWritten,
    /// `c = (1 − ξ²)/(1 + ξ²)`, i.e. the formula applied to `1/ξ`
    Inverted,
}

impl Direction {
    pub fn label(self) -> &'static str {
        match self {
            Direction::AsWritten => "as-written",
            Direction::Inverted => "inverted",
        }
    }
}

/// Scale factor, dilation rapidity and expansion parameter for one dilation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalingParams {
    pub xi: f64,
    /// Rapidity `r = 2 ln ξ` of the dilation `a ↦ e^{r/2} a`.
    pub rapidity: f64,
    /// Expansion parameter; `|c| < 1` for every finite `ξ > 0`, `c = 0` iff `ξ = 1`.
    pub c: f64,
    pub direction: Direction,
    pub meixner: MeixnerConvention,
}

impl ScalingParams {
    pub fn new(xi: f64, direction: Direction, meixner: MeixnerConvention) -> Self {
        assert!(xi > 0.0 && xi.is_finite(), "scale factor must be positive");
        let c = match direction {
            Direction::AsWritten => (xi * xi - 1.0) / (xi * xi + 1.0),
            Direction::Inverted => (1.0 - xi * xi) / (1.0 + xi * xi),
        };
        ScalingParams {
            xi,
            rapidity: 2.0 * xi.ln(),
            c,
            direction,
            meixner,
        }
    }
}

/// One row of the dilation matrix: the coefficients `t_n(m)` multiplying
/// `λ_n(a)` in the expansion of `λ_m` at the scaled radius.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpansionCoefficients {
    pub m: usize,
    pub terms: Vec<f64>,
    pub truncation: usize,
    /// Geometric bound on the sum of the dropped `|t_n|`.
    pub tail_estimate: f64,
}

/// Meixner value `₂F₁(−n, −m; 1; z)` for signed parameter `c` under the
/// given argument convention. The terminating sum itself only sees `z`.
fn meixner_value(n: usize, m: usize, params: &ScalingParams) -> f64 {
    hyp2f1_terminating(n, m, 1.0, params.meixner.argument(params.c))
}

/// Coefficients `t_0 … t_trunc` of the expansion row for target index `m`.
///
/// `t_n = (−1)^m √(1−c²) c^{m+n} M_n(m)`; at `ξ = 1` (`c = 0`) the row
/// degenerates to the identity row `t_n = δ_{nm}`.
pub fn expansion_coefficients(
    m: usize,
    params: &ScalingParams,
    trunc: usize,
) -> ExpansionCoefficients {
    assert!(trunc >= m, "truncation must reach the target index");
    let c = params.c;
    if c == 0.0 {
        let mut terms = vec![0.0; trunc + 1];
        terms[m] = 1.0;
        return ExpansionCoefficients {
            m,
            terms,
            truncation: trunc,
            tail_estimate: 0.0,
        };
    }
    let phase = parity_sign(m);
    let norm = phase * (1.0 - c * c).sqrt() * c.powi(m as i32);
    let mut terms = Vec::with_capacity(trunc + 1);
    let mut max_meixner = 0.0f64;
    for n in 0..=trunc {
        let mv = meixner_value(n, m, params);
        max_meixner = max_meixner.max(mv.abs());
        terms.push(norm * c.powi(n as i32) * mv);
    }
    let tail_estimate =
        norm.abs() * c.abs().powi(trunc as i32 + 1) / (1.0 - c.abs()) * max_meixner;
    ExpansionCoefficients {
        m,
        terms,
        truncation: trunc,
        tail_estimate,
    }
}

/// Smallest truncation whose geometric tail bound drops below `1e−10`,
/// capped at 2000.
pub fn auto_truncation(m: usize, params: &ScalingParams) -> usize {
    let c = params.c.abs();
    if c == 0.0 {
        return m;
    }
    let norm = (1.0 - c * c).sqrt() * c.powi(m as i32);
    let mut max_meixner = 0.0f64;
    for n in 0..=TRUNCATION_CAP {
        max_meixner = max_meixner.max(meixner_value(n, m, params).abs());
        let tail = norm * c.powi(n as i32 + 1) / (1.0 - c) * max_meixner;
        if n >= m && tail < TAIL_TARGET {
            return n;
        }
    }
    TRUNCATION_CAP
}

// ---------------------------------------------------------------------------
// Convention resolution
// ---------------------------------------------------------------------------

/// Residual of one candidate convention against closed-form circle targets.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CandidateResidual {
    pub direction: Direction,
    pub meixner: MeixnerConvention,
    pub residual: f64,
}

/// Outcome of the empirical convention resolution. Obtainable only through
/// [`resolve_conventions`] (or [`ConventionResolution::assume`] in tests),
/// so a scaled-spectrum evaluation cannot run with unresolved conventions.
#[derive(Debug, Clone, PartialEq)]
pub struct ConventionResolution {
    pub direction: Direction,
    pub meixner: MeixnerConvention,
    pub candidates: Vec<CandidateResidual>,
    probe: (f64, f64, usize),
}

const ALL_CANDIDATES: [(Direction, MeixnerConvention); 4] = [
    (Direction::AsWritten, MeixnerConvention::OneMinusInvC),
    (Direction::AsWritten, MeixnerConvention::OneMinusInvCSquared),
    (Direction::Inverted, MeixnerConvention::OneMinusInvC),
    (Direction::Inverted, MeixnerConvention::OneMinusInvCSquared),
];

/// Circle-spectrum series `Σ_n t_n λ_n^C(a)` for one candidate, closed forms
/// throughout.
fn circle_series(m: usize, a: f64, params: &ScalingParams, trunc: usize) -> f64 {
    let coeffs = expansion_coefficients(m, params, trunc);
    coeffs
        .terms
        .iter()
        .enumerate()
        .map(|(n, t)| t * circle_eigenvalue(n, a))
        .sum()
}

/// Decide the direction and Meixner-argument conventions by evaluating the
/// `m = 0` and `m = 1` expansions against closed-form circle eigenvalues at
/// the scaled radius, for all four candidate combinations.
///
/// Exactly one combination must pass within [`RESOLUTION_THRESHOLD`];
/// anything else is reported as [`ScalingError::AmbiguousConvention`] because
/// it would indicate an implementation bug rather than a physics ambiguity.
pub fn resolve_conventions(
    a: f64,
    xi: f64,
    trunc: usize,
) -> Result<ConventionResolution, ScalingError> {
    assert!(a > 0.0, "probe radius must be positive");
    if xi == 1.0 {
        return Err(ScalingError::DegenerateScale);
    }
    let mut candidates = Vec::with_capacity(4);
    let mut passing = Vec::new();
    for (direction, meixner) in ALL_CANDIDATES {
        let params = ScalingParams::new(xi, direction, meixner);
        let mut residual = 0.0f64;
        for m in 0..=1usize {
            let series = circle_series(m, a, &params, trunc);
            let direct = circle_eigenvalue(m, xi * a);
            residual = residual.max((series - direct).abs());
        }
        candidates.push(CandidateResidual {
            direction,
            meixner,
            residual,
        });
        if residual < RESOLUTION_THRESHOLD {
            passing.push((direction, meixner));
        }
    }
    if passing.len() != 1 {
        return Err(ScalingError::AmbiguousConvention {
            passing: passing
                .iter()
                .map(|(d, f)| format!("{} / {}", d.label(), f.label()))
                .collect(),
        });
    }
    let (direction, meixner) = passing[0];
    Ok(ConventionResolution {
        direction,
        meixner,
        candidates,
        probe: (a, xi, trunc),
    })
}

impl ConventionResolution {
    /// Construct a resolution without running the probe. Intended for tests
    /// and for replaying a previously generated report.
    pub fn assume(direction: Direction, meixner: MeixnerConvention) -> Self {
        ConventionResolution {
            direction,
            meixner,
            candidates: Vec::new(),
            probe: (0.0, 0.0, 0),
        }
    }

    pub fn params(&self, xi: f64) -> ScalingParams {
        ScalingParams::new(xi, self.direction, self.meixner)
    }

    /// Plain-text convention report: resolved pair, candidate residuals, and
    /// the sign map tying the basis routes to the circle eigenvalues.
    pub fn report(&self) -> String {
        let mut out = String::new();
        out.push_str("dilation-expansion convention report\n");
        out.push_str(&format!(
            "probe: a = {}, xi = {}, truncation = {}, threshold = {:e}\n",
            self.probe.0, self.probe.1, self.probe.2, RESOLUTION_THRESHOLD
        ));
        for c in &self.candidates {
            out.push_str(&format!(
                "candidate direction={:<10} meixner-argument={:<9} residual = {:.3e}\n",
                c.direction.label(),
                c.meixner.label(),
                c.residual
            ));
        }
        out.push_str(&format!(
            "resolved: direction={} meixner-argument={}\n",
            self.direction.label(),
            self.meixner.label()
        ));
        out.push_str(
            "phase map: circle eigenvalue = sqrt(a)*u_n(a) exactly; \
             = (-1)^n * a^(3/2)*e_n(a) (alternating prefactor lives in the u-basis only)\n",
        );
        out.push_str("disk rule: lambda_m^D(xi*a) = xi * sum_n t_n(m) lambda_n^D(a)\n");
        out
    }

    /// SHA-256 of the report text, used to tie emitted payloads and golden
    /// fixtures to the convention state they were generated under.
    pub fn report_hash(&self) -> String {
        let mut hasher = Sha256::new();
        hasher.update(self.report().as_bytes());
        let digest = hasher.finalize();
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }
}

// ---------------------------------------------------------------------------
// Scaled eigenvalues
// ---------------------------------------------------------------------------

/// Series value for one scaled eigenvalue, with its truncation diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledEigenvalue {
    pub value: f64,
    pub truncation: usize,
    pub tail_estimate: f64,
}

/// `λ_m` at radius `ξa` reconstructed from the spectrum at radius `a` via
/// the Meixner expansion. `trunc = None` selects the automatic truncation.
///
/// Disk values carry the Jacobian factor `ξ` (see the module docs); circle
/// values do not.
pub fn scaled_eigenvalue(
    kind: RegionKind,
    m: usize,
    a: f64,
    xi: f64,
    resolution: &ConventionResolution,
    trunc: Option<usize>,
    quad: &QuadratureSpec,
) -> Result<ScaledEigenvalue, ScalingError> {
    let params = resolution.params(xi);
    let trunc = trunc.unwrap_or_else(|| auto_truncation(m, &params));
    let coeffs = expansion_coefficients(m, &params, trunc);
    let spectrum = Spectrum::compute(kind, a, trunc, quad)?;
    Ok(scaled_eigenvalue_from_spectrum(&spectrum, &coeffs, xi))
}

/// Same contraction against a precomputed spectrum (the spectrum must be at
/// least as long as the coefficient row).
pub fn scaled_eigenvalue_from_spectrum(
    spectrum: &Spectrum,
    coeffs: &ExpansionCoefficients,
    xi: f64,
) -> ScaledEigenvalue {
    assert!(
        spectrum.len() > coeffs.truncation,
        "spectrum shorter than the coefficient row"
    );
    let series: f64 = coeffs
        .terms
        .iter()
        .zip(&spectrum.values)
        .map(|(t, l)| t * l)
        .sum();
    let jacobian = match spectrum.kind {
        RegionKind::Circle => 1.0,
        RegionKind::Disk => xi,
    };
    ScaledEigenvalue {
        value: jacobian * series,
        truncation: coeffs.truncation,
        tail_estimate: coeffs.tail_estimate,
    }
}

/// One row of a scale-check table: Meixner-series value against the directly
/// computed eigenvalue at the scaled radius.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScaleCheckRow {
    pub m: usize,
    pub direct: f64,
    pub series: f64,
    pub discrepancy: f64,
    pub truncation: usize,
    pub tail_estimate: f64,
}

/// Verify the scaling identity for `m = 0 … mmax` for one region kind,
/// computing the base spectrum once.
pub fn scale_check_table(
    kind: RegionKind,
    a: f64,
    xi: f64,
    mmax: usize,
    resolution: &ConventionResolution,
    trunc: Option<usize>,
    quad: &QuadratureSpec,
) -> Result<Vec<ScaleCheckRow>, ScalingError> {
    if xi == 1.0 {
        return Err(ScalingError::DegenerateScale);
    }
    let params = resolution.params(xi);
    let trunc = trunc.unwrap_or_else(|| {
        (0..=mmax)
            .map(|m| auto_truncation(m, &params))
            .max()
            .unwrap_or(0)
    });
    let spectrum = Spectrum::compute(kind, a, trunc, quad)?;
    let mut rows = Vec::with_capacity(mmax + 1);
    for m in 0..=mmax {
        let coeffs = expansion_coefficients(m, &params, trunc);
        let scaled = scaled_eigenvalue_from_spectrum(&spectrum, &coeffs, xi);
        let direct = match kind {
            RegionKind::Circle => circle_eigenvalue(m, xi * a),
            RegionKind::Disk => crate::spectra::disk_eigenvalue(m, xi * a, quad)?,
        };
        rows.push(ScaleCheckRow {
            m,
            direct,
            series: scaled.value,
            discrepancy: (scaled.value - direct).abs(),
            truncation: scaled.truncation,
            tail_estimate: scaled.tail_estimate,
        });
    }
    Ok(rows)
}

/// Probe used for the canonical convention resolution backing reports and
/// command-line output: `a = 1`, `ξ = 2`, truncation 200.
pub const CANONICAL_PROBE: (f64, f64, usize) = (1.0, 2.0, 200);

/// Resolution at the canonical probe. The conventions are global facts about
/// the expansion, not per-invocation state, so every emitted report and hash
/// derives from this one probe.
pub fn canonical_resolution() -> Result<ConventionResolution, ScalingError> {
    resolve_conventions(CANONICAL_PROBE.0, CANONICAL_PROBE.1, CANONICAL_PROBE.2)
}

/// Consistency of the two dilation actions on the basis functions: the
/// π route `√(ξa)·u_{n,−1/2}^{(2)}(ξa)`, the σ route
/// `(−1)^n (ξa)^{3/2} e_n^{(1/2)}(ξa)`, and the closed-form circle
/// eigenvalue must coincide at the dilated radius `ξ = e^{r/2}`.
/// Returns the maximum pairwise discrepancy.
pub fn dilation_check(n: usize, a: f64, rapidity: f64) -> f64 {
    assert!(a > 0.0);
    let xi = (rapidity / 2.0).exp();
    let b = xi * a;
    let via_pi = b.sqrt() * PiBasis::new(2.0, n, -0.5).value(b);
    let via_sigma = parity_sign(n) * b * b.sqrt() * SigmaBasis::new(2.0, 0.5, n).value(b);
    let direct = circle_eigenvalue(n, b);
    (via_pi - via_sigma)
        .abs()
        .max((via_pi - direct).abs())
        .max((via_sigma - direct).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::disk_eigenvalue;
    use approx::assert_abs_diff_eq;

    fn resolved() -> ConventionResolution {
        resolve_conventions(1.0, 2.0, 200).expect("resolution must succeed")
    }

    #[test]
    fn resolution_is_unique_and_matches_the_derivation() {
        let r = resolved();
        assert_eq!(r.direction, Direction::Inverted);
        assert_eq!(r.meixner, MeixnerConvention::OneMinusInvCSquared);
        assert_eq!(r.candidates.len(), 4);
        let winner = r
            .candidates
            .iter()
            .find(|c| c.direction == r.direction && c.meixner == r.meixner)
            .unwrap();
        assert!(winner.residual < 1e-10);
        // the other three fail by a wide margin
        for c in &r.candidates {
            if c.direction != r.direction || c.meixner != r.meixner {
                assert!(c.residual > 1e-3, "spurious near-pass: {c:?}");
            }
        }
    }

    #[test]
    fn resolution_with_downscale_probe_agrees() {
        let r = resolve_conventions(1.0, 0.5, 200).unwrap();
        assert_eq!(r.direction, Direction::Inverted);
        assert_eq!(r.meixner, MeixnerConvention::OneMinusInvCSquared);
    }

    #[test]
    fn hopeless_truncation_fails_loudly() {
        assert!(matches!(
            resolve_conventions(1.0, 2.0, 1),
            Err(ScalingError::AmbiguousConvention { .. })
        ));
        assert!(matches!(
            resolve_conventions(1.0, 1.0, 100),
            Err(ScalingError::DegenerateScale)
        ));
    }

    #[test]
    fn ground_row_is_geometric() {
        // t_n(0) = √(1−c²) c^n
        let params = resolved().params(2.0);
        let coeffs = expansion_coefficients(0, &params, 10);
        let c = params.c;
        for (n, t) in coeffs.terms.iter().enumerate() {
            assert_abs_diff_eq!(
                *t,
                (1.0 - c * c).sqrt() * c.powi(n as i32),
                epsilon = 1e-14
            );
        }
    }

    #[test]
    fn unit_scale_gives_identity_row() {
        let params = ScalingParams::new(
            1.0,
            Direction::Inverted,
            MeixnerConvention::OneMinusInvCSquared,
        );
        assert_eq!(params.c, 0.0);
        let coeffs = expansion_coefficients(3, &params, 8);
        for (n, t) in coeffs.terms.iter().enumerate() {
            assert_eq!(*t, if n == 3 { 1.0 } else { 0.0 });
        }
    }

    #[test]
    fn circle_m1_matches_closed_form() {
        // λ_1^C(2) = 28 e^{−4}; derived by elementary evaluation of
        // 2(−1) L_1(8) e^{−4} · 2 and frozen here.
        let resolution = resolved();
        let quad = QuadratureSpec::default();
        let s = scaled_eigenvalue(
            RegionKind::Circle,
            1,
            1.0,
            2.0,
            &resolution,
            Some(250),
            &quad,
        )
        .unwrap();
        assert_abs_diff_eq!(s.value, 28.0 * (-4.0f64).exp(), epsilon = 1e-9);
    }

    #[test]
    fn disk_route_carries_the_jacobian() {
        // λ_1^D(2) = 1 − 9e^{−4}
        let resolution = resolved();
        let quad = QuadratureSpec::with_tol(1e-11);
        let s = scaled_eigenvalue(RegionKind::Disk, 1, 1.0, 2.0, &resolution, None, &quad).unwrap();
        assert_abs_diff_eq!(s.value, 1.0 - 9.0 * (-4.0f64).exp(), epsilon = 1e-8);
        let direct = disk_eigenvalue(1, 2.0, &quad).unwrap();
        assert_abs_diff_eq!(s.value / direct, 1.0, epsilon = 1e-7);
    }

    #[test]
    fn scale_check_table_covers_both_kinds() {
        let resolution = resolved();
        let quad = QuadratureSpec::default();
        for kind in [RegionKind::Circle, RegionKind::Disk] {
            for &xi in &[0.5, 2.0] {
                let rows = scale_check_table(kind, 1.0, xi, 4, &resolution, None, &quad).unwrap();
                for row in rows {
                    assert!(
                        row.discrepancy < 1e-7,
                        "kind={kind:?} xi={xi} m={} discrepancy={}",
                        row.m,
                        row.discrepancy
                    );
                    assert!(row.tail_estimate < 1e-9);
                }
            }
        }
    }

    #[test]
    fn scale_check_rejects_unit_scale() {
        let resolution = resolved();
        assert!(matches!(
            scale_check_table(
                RegionKind::Circle,
                1.0,
                1.0,
                2,
                &resolution,
                None,
                &QuadratureSpec::default()
            ),
            Err(ScalingError::DegenerateScale)
        ));
    }

    #[test]
    fn rows_are_orthonormal() {
        // |c| = 0.6 at ξ = 1/2 under the resolved direction
        let params = resolved().params(0.5);
        assert_abs_diff_eq!(params.c, 0.6, epsilon = 1e-15);
        let rows: Vec<_> = (0..=8)
            .map(|m| expansion_coefficients(m, &params, 500))
            .collect();
        for (i, ri) in rows.iter().enumerate() {
            for (j, rj) in rows.iter().enumerate() {
                let dot: f64 = ri.terms.iter().zip(&rj.terms).map(|(x, y)| x * y).sum();
                let expected = if i == j { 1.0 } else { 0.0 };
                assert_abs_diff_eq!(dot, expected, epsilon = 1e-8);
            }
        }
    }

    #[test]
    fn row_square_sum_stays_below_one() {
        let params = resolved().params(2.0);
        for m in 0..=6 {
            let coeffs = expansion_coefficients(m, &params, 400);
            let norm: f64 = coeffs.terms.iter().map(|t| t * t).sum();
            assert!(norm <= 1.0 + 1e-10);
        }
    }

    #[test]
    fn self_duality_phase_bookkeeping() {
        // O_{mn} = (−1)^{m+n} O_{nm} where O_{mn} = t_n(m)
        let params = resolved().params(2.0);
        let rows: Vec<_> = (0..=8)
            .map(|m| expansion_coefficients(m, &params, 8))
            .collect();
        for m in 0..=8usize {
            for n in 0..=8usize {
                assert_abs_diff_eq!(
                    rows[m].terms[n],
                    parity_sign(m + n) * rows[n].terms[m],
                    epsilon = 1e-12
                );
            }
        }
    }

    #[test]
    fn dilations_compose() {
        // row(ξ₁ξ₂) = row(ξ₁) · rows(ξ₂) within 1e−7
        let resolution = resolved();
        let (xi1, xi2) = (2.0, 1.5);
        let inner = 400usize;
        let p1 = resolution.params(xi1);
        let p2 = resolution.params(xi2);
        let p12 = resolution.params(xi1 * xi2);
        for m in 0..=6usize {
            let row1 = expansion_coefficients(m, &p1, inner);
            let direct = expansion_coefficients(m, &p12, 8);
            for j in 0..=8usize {
                let mut composed = 0.0;
                for (k, t1) in row1.terms.iter().enumerate() {
                    if t1.abs() < 1e-18 {
                        continue;
                    }
                    let row2k = expansion_coefficients(k, &p2, j.max(k));
                    composed += t1 * row2k.terms[j];
                }
                assert_abs_diff_eq!(composed, direct.terms[j], epsilon = 1e-7);
            }
        }
    }

    #[test]
    fn tail_estimate_bounds_the_dropped_terms() {
        let params = resolved().params(2.0);
        let short = expansion_coefficients(3, &params, 60);
        let long = expansion_coefficients(3, &params, 400);
        let dropped: f64 = long.terms[61..].iter().map(|t| t.abs()).sum();
        assert!(dropped <= short.tail_estimate * 1.5 + 1e-15);
    }

    #[test]
    fn auto_truncation_meets_target() {
        let params = resolved().params(2.0);
        for m in 0..=8 {
            let n = auto_truncation(m, &params);
            let coeffs = expansion_coefficients(m, &params, n);
            assert!(coeffs.tail_estimate < 1e-10);
            assert!(n >= m);
        }
    }

    #[test]
    fn dilation_actions_agree() {
        assert!(dilation_check(0, 1.0, 0.0) < 1e-12);
        // r = ln 4 dilates by ξ = 2
        assert!(dilation_check(0, 1.0, 4.0f64.ln()) < 1e-12);
        assert!(dilation_check(2, 0.7, -1.0) < 1e-10);
        for n in 0..=6 {
            assert!(dilation_check(n, 1.3, 0.8) < 1e-10);
        }
    }

    #[test]
    fn report_is_deterministic_and_hashed() {
        let r1 = resolved();
        let r2 = resolved();
        assert_eq!(r1.report(), r2.report());
        assert_eq!(r1.report_hash(), r2.report_hash());
        assert_eq!(r1.report_hash().len(), 64);
        assert!(r1.report().contains("direction=inverted"));
        assert!(r1.report().contains("1 - 1/c^2"));
    }
}
