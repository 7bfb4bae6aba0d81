//! Gauss–Laguerre basis functions carrying the su(1,1) positive discrete
//! series in two differential-operator realizations, with analytic generator
//! application.
//!
//! The π-realization acts on `L²([0,∞), dr)` with basis
//! `u_{k,l}^{(M)}(r) = (−1)^k (2√M k!/Γ(k+l+3/2))^{1/2} (√M r)^{l+1}
//!  e^{−Mr²/2} L_k^{l+1/2}(Mr²)`;
//! the σ-realization acts on `L²([0,∞), r^w dr)` with basis
//! `e_m^{(k)}(r) = 2^W (w m!/Γ(2k+m))^{1/2} e^{−r^w} (2r^w)^{k−W}
//!  L_m^{(2k−1)}(2r^w)`, `W = (w+1)/(2w)`.
//!
//! Generators are variable-coefficient differential operators of order ≤ 2
//! in `r`, held as explicit term lists (`coef · r^power · d^order/dr^order`).
//! Applying one to a basis element therefore needs the basis derivatives,
//! which are available in closed form through
//! `d/dx L_n^α(x) = −L_{n−1}^{α+1}(x)`; no finite differencing enters the
//! implementation (finite differences appear only as a test oracle).
//! Operator composition stays in term-list form, which is how the Casimir
//! (a fourth-order operator) is applied exactly.
//!
//! Two sign conventions deserve note. First, the alternating prefactor
//! `(−1)^k` lives in the π-basis only, so the bridge between the two
//! realizations is `a·e_m(a) = (−1)^m u_m(a)`, and the circle-spectrum
//! identification through the σ-basis carries the sign map `(−1)^n`; see
//! [`identify_circle_spectrum`]. Second, the σ-generator `J₁` is
//! `(1/2)(w^{−2} r^{2−w} p_r² + ξ r^{−w} − r^w)` — with a *plus* on the
//! centrifugal `ξ` term, equivalently `J₁ = J₀ − r^w` — which is the version
//! under which the lowest basis element is annihilated by `J₋`.

use statrs::function::gamma::gamma;

use crate::polyfn::{laguerre, parity_sign};
use crate::spectra::circle_eigenvalue;

/// Derivative stack `[f, f', f'', f''', f'''']` at one point.
pub(crate) type Derivs = [f64; 5];

/// Fixed abscissae for residual checks, chosen once so reported residuals
/// are reproducible.
pub const RESIDUAL_SAMPLE_POINTS: [f64; 5] = [0.2, 0.5, 1.0, 2.0, 4.0];

fn factorial(n: usize) -> f64 {
    (1..=n).map(|j| j as f64).product()
}

/// Falling factorial `s (s−1) ⋯ (s−p+1)`.
fn falling(s: f64, p: usize) -> f64 {
    (0..p).map(|j| s - j as f64).product()
}

fn binomial(n: usize, k: usize) -> f64 {
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// Derivatives of `r^s`.
fn power_derivs(s: f64, r: f64) -> Derivs {
    let mut out = [0.0; 5];
    for (j, slot) in out.iter_mut().enumerate() {
        *slot = falling(s, j) * r.powf(s - j as f64);
    }
    out
}

/// Faà di Bruno to fourth order: derivatives of `P(h(r))` from the outer
/// derivatives `p[j] = P^{(j)}(h(r))` and inner derivatives `h[j]`.
fn compose_derivs(p: Derivs, h: Derivs) -> Derivs {
    let (h1, h2, h3, h4) = (h[1], h[2], h[3], h[4]);
    [
        p[0],
        p[1] * h1,
        p[2] * h1 * h1 + p[1] * h2,
        p[3] * h1.powi(3) + 3.0 * p[2] * h1 * h2 + p[1] * h3,
        p[4] * h1.powi(4)
            + 6.0 * p[3] * h1 * h1 * h2
            + p[2] * (3.0 * h2 * h2 + 4.0 * h1 * h3)
            + p[1] * h4,
    ]
}

/// Derivatives of `e^{g(r)}` given the derivatives of `g`.
fn exp_derivs(g: Derivs) -> Derivs {
    let e = g[0].exp();
    compose_derivs([e, e, e, e, e], g)
}

/// Leibniz rule for a triple product.
fn product3_derivs(a: Derivs, b: Derivs, c: Derivs) -> Derivs {
    let mut out = [0.0; 5];
    for (j, slot) in out.iter_mut().enumerate() {
        let mut acc = 0.0;
        for p in 0..=j {
            for q in 0..=(j - p) {
                let s = j - p - q;
                let multi = binomial(j, p) * binomial(j - p, q);
                acc += multi * a[p] * b[q] * c[s];
            }
        }
        *slot = acc;
    }
    out
}

/// Derivatives of `L_n^α` at `x`: `d^j/dx^j L_n^α = (−1)^j L_{n−j}^{α+j}`.
fn laguerre_derivs(n: usize, alpha: f64, x: f64) -> Derivs {
    let mut out = [0.0; 5];
    for (j, slot) in out.iter_mut().enumerate() {
        if j <= n {
            *slot = parity_sign(j) * laguerre(n - j, alpha + j as f64, x);
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Differential operators as term lists
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy)]
struct OpTerm {
    coef: f64,
    power: f64,
    order: usize,
}

/// A variable-coefficient differential operator `Σ coef · r^power · D^order`.
#[derive(Debug, Clone, Default)]
pub(crate) struct RadialOp {
    terms: Vec<OpTerm>,
}

impl RadialOp {
    fn from_terms(terms: &[(f64, f64, usize)]) -> Self {
        RadialOp {
            terms: terms
                .iter()
                .map(|&(coef, power, order)| OpTerm { coef, power, order })
                .collect(),
        }
    }

    fn plus(mut self, other: &RadialOp) -> Self {
        self.terms.extend_from_slice(&other.terms);
        self
    }

    fn scaled(mut self, factor: f64) -> Self {
        for t in &mut self.terms {
            t.coef *= factor;
        }
        self
    }

    /// Operator composition `self ∘ inner` by the Leibniz rule:
    /// `r^s D^j (b r^t f^{(i)}) = b Σ_p C(j,p) (t)_p↓ r^{s+t−p} f^{(i+j−p)}`.
    fn compose(&self, inner: &RadialOp) -> RadialOp {
        let mut terms = Vec::new();
        for outer in &self.terms {
            for t in &inner.terms {
                for p in 0..=outer.order {
                    let coef =
                        outer.coef * t.coef * binomial(outer.order, p) * falling(t.power, p);
                    if coef == 0.0 {
                        continue;
                    }
                    terms.push(OpTerm {
                        coef,
                        power: outer.power + t.power - p as f64,
                        order: t.order + outer.order - p,
                    });
                }
            }
        }
        RadialOp { terms }
    }

    /// Pointwise value of `(self f)(r)` given the derivative stack of `f`.
    fn apply(&self, f: &Derivs, r: f64) -> f64 {
        self.terms
            .iter()
            .map(|t| t.coef * r.powf(t.power) * f[t.order])
            .sum()
    }
}

// ---------------------------------------------------------------------------
// π-realization
// ---------------------------------------------------------------------------

/// One basis element of the π-realization: scale `M > 0`, radial index `k`,
/// angular label `l ∈ {−1/2, 0, 1/2, 1, …}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PiBasis {
    pub scale: f64,
    pub k: usize,
    pub l: f64,
}

impl PiBasis {
    pub fn new(scale: f64, k: usize, l: f64) -> Self {
        assert!(scale > 0.0, "scale M must be positive for a real basis");
        assert!(
            k as f64 + l + 1.5 > 0.0,
            "Γ(k + l + 3/2) must be finite and positive"
        );
        PiBasis { scale, k, l }
    }

    /// Representation label `d = (l + 3/2)/2`; the Casimir eigenvalue is
    /// `d(d−1)` and `L₀ u_{k,l} = (d+k) u_{k,l}`.
    pub fn rep_label(&self) -> f64 {
        (self.l + 1.5) / 2.0
    }

    fn norm_constant(&self) -> f64 {
        let m = self.scale;
        parity_sign(self.k)
            * (2.0 * m.sqrt() * factorial(self.k) / gamma(self.k as f64 + self.l + 1.5)).sqrt()
            * m.powf((self.l + 1.0) / 2.0)
    }

    pub(crate) fn derivs(&self, r: f64) -> Derivs {
        assert!(r > 0.0, "basis functions are defined for r > 0");
        let m = self.scale;
        let radial_power = power_derivs(self.l + 1.0, r);
        // e^{−Mr²/2}
        let gaussian = exp_derivs([-m * r * r / 2.0, -m * r, -m, 0.0, 0.0]);
        // L_k^{l+1/2}(M r²)
        let arg = [m * r * r, 2.0 * m * r, 2.0 * m, 0.0, 0.0];
        let poly = compose_derivs(laguerre_derivs(self.k, self.l + 0.5, arg[0]), arg);
        let mut out = product3_derivs(radial_power, gaussian, poly);
        let c = self.norm_constant();
        for v in &mut out {
            *v *= c;
        }
        out
    }

    /// `u_{k,l}^{(M)}(r)`.
    pub fn value(&self, r: f64) -> f64 {
        self.derivs(r)[0]
    }

    /// Same element with radial index `k ± step`.
    fn shifted(&self, delta: isize) -> PiBasis {
        PiBasis {
            scale: self.scale,
            k: (self.k as isize + delta) as usize,
            l: self.l,
        }
    }
}

/// Generators of the π-realization as exposed operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PiGenerator {
    L0,
    Lplus,
    Lminus,
    L2,
}

fn pi_l0(m: f64, l: f64) -> RadialOp {
    RadialOp::from_terms(&[
        (-1.0 / (4.0 * m), 0.0, 2),
        (l * (l + 1.0) / (4.0 * m), -2.0, 0),
        (m / 4.0, 2.0, 0),
    ])
}

fn pi_l1(m: f64, l: f64) -> RadialOp {
    // L₁ = (M/2) r² − L₀
    RadialOp::from_terms(&[
        (1.0 / (4.0 * m), 0.0, 2),
        (-l * (l + 1.0) / (4.0 * m), -2.0, 0),
        (m / 4.0, 2.0, 0),
    ])
}

fn pi_l2() -> RadialOp {
    // L₂ = −(1/2)(r d/dr + 1/2), the dilation generator
    RadialOp::from_terms(&[(-0.5, 1.0, 1), (-0.25, 0.0, 0)])
}

pub(crate) fn pi_operator(which: PiGenerator, m: f64, l: f64) -> RadialOp {
    match which {
        PiGenerator::L0 => pi_l0(m, l),
        PiGenerator::L2 => pi_l2(),
        PiGenerator::Lplus => pi_l1(m, l).plus(&pi_l2()),
        PiGenerator::Lminus => pi_l1(m, l).plus(&pi_l2().scaled(-1.0)),
    }
}

/// Analytic image of a π-basis element under one generator, as a pointwise
/// evaluable function of `r`.
pub fn apply_pi_generator(which: PiGenerator, basis: &PiBasis) -> impl Fn(f64) -> f64 {
    let op = pi_operator(which, basis.scale, basis.l);
    let basis = *basis;
    move |r: f64| op.apply(&basis.derivs(r), r)
}

// ---------------------------------------------------------------------------
// σ-realization
// ---------------------------------------------------------------------------

/// One basis element of the σ-realization: deformation `w ≥ 1`,
/// representation label `k > 0`, index `m`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SigmaBasis {
    pub w: f64,
    pub k: f64,
    pub m: usize,
}

impl SigmaBasis {
    pub fn new(w: f64, k: f64, m: usize) -> Self {
        assert!(w >= 1.0, "deformation parameter w must be >= 1");
        assert!(k > 0.0, "representation label k must be positive");
        SigmaBasis { w, k, m }
    }

    /// Derived exponent `W = (w+1)/(2w)`.
    pub fn weight_exponent(&self) -> f64 {
        (self.w + 1.0) / (2.0 * self.w)
    }

    /// Centrifugal coefficient `ξ = k(k−1) − W(W−1)` of the generators.
    fn centrifugal(&self) -> f64 {
        let w_cap = self.weight_exponent();
        self.k * (self.k - 1.0) - w_cap * (w_cap - 1.0)
    }

    fn norm_constant(&self) -> f64 {
        let w_cap = self.weight_exponent();
        2f64.powf(w_cap)
            * (self.w * factorial(self.m) / gamma(2.0 * self.k + self.m as f64)).sqrt()
            * 2f64.powf(self.k - w_cap)
    }

    pub(crate) fn derivs(&self, r: f64) -> Derivs {
        assert!(r > 0.0, "basis functions are defined for r > 0");
        let w = self.w;
        let w_cap = self.weight_exponent();
        let radial_power = power_derivs(w * (self.k - w_cap), r);
        // e^{−r^w}
        let mut g = [0.0; 5];
        for (j, slot) in g.iter_mut().enumerate() {
            *slot = -falling(w, j) * r.powf(w - j as f64);
        }
        let damping = exp_derivs(g);
        // L_m^{2k−1}(2 r^w)
        let mut arg = [0.0; 5];
        for (j, slot) in arg.iter_mut().enumerate() {
            *slot = 2.0 * falling(w, j) * r.powf(w - j as f64);
        }
        let poly = compose_derivs(laguerre_derivs(self.m, 2.0 * self.k - 1.0, arg[0]), arg);
        let mut out = product3_derivs(radial_power, damping, poly);
        let c = self.norm_constant();
        for v in &mut out {
            *v *= c;
        }
        out
    }

    /// `e_m^{(k)}(r)`.
    pub fn value(&self, r: f64) -> f64 {
        self.derivs(r)[0]
    }

    fn shifted(&self, delta: isize) -> SigmaBasis {
        SigmaBasis {
            w: self.w,
            k: self.k,
            m: (self.m as isize + delta) as usize,
        }
    }
}

/// Generators of the σ-realization. `J2` denotes the real dilation form
/// `i·J₂ = (1/w)(r d/dr + (w+1)/2)`, which is what acts on real functions;
/// the ladder operators are `J_± = J₁ ± i·J₂`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SigmaGenerator {
    J0,
    J1,
    J2,
    Jplus,
    Jminus,
}

fn sigma_j0(w: f64, xi: f64) -> RadialOp {
    // (1/2)(w^{−2} r^{2−w} p_r² + ξ r^{−w} + r^w) with p_r² = −(D² + (2/r)D)
    RadialOp::from_terms(&[
        (-0.5 / (w * w), 2.0 - w, 2),
        (-1.0 / (w * w), 1.0 - w, 1),
        (xi / 2.0, -w, 0),
        (0.5, w, 0),
    ])
}

fn sigma_j1(w: f64, xi: f64) -> RadialOp {
    // J₁ = J₀ − r^w
    sigma_j0(w, xi).plus(&RadialOp::from_terms(&[(-1.0, w, 0)]))
}

fn sigma_j2(w: f64) -> RadialOp {
    RadialOp::from_terms(&[(1.0 / w, 1.0, 1), ((w + 1.0) / (2.0 * w), 0.0, 0)])
}

pub(crate) fn sigma_operator(which: SigmaGenerator, basis: &SigmaBasis) -> RadialOp {
    let (w, xi) = (basis.w, basis.centrifugal());
    match which {
        SigmaGenerator::J0 => sigma_j0(w, xi),
        SigmaGenerator::J1 => sigma_j1(w, xi),
        SigmaGenerator::J2 => sigma_j2(w),
        SigmaGenerator::Jplus => sigma_j1(w, xi).plus(&sigma_j2(w)),
        SigmaGenerator::Jminus => sigma_j1(w, xi).plus(&sigma_j2(w).scaled(-1.0)),
    }
}

/// Analytic image of a σ-basis element under one generator.
pub fn apply_sigma_generator(which: SigmaGenerator, basis: &SigmaBasis) -> impl Fn(f64) -> f64 {
    let op = sigma_operator(which, basis);
    let basis = *basis;
    move |r: f64| op.apply(&basis.derivs(r), r)
}

// ---------------------------------------------------------------------------
// Ladder coefficients, relation residuals, Casimir
// ---------------------------------------------------------------------------

/// Ladder matrix elements of a positive-discrete-series representation with
/// lowest weight `k`: `μ₋(n) = √(n(2k+n−1))`, `μ₊(n) = μ₋(n+1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LadderCoefficients {
    pub k: f64,
}

impl LadderCoefficients {
    pub fn mu_minus(&self, n: usize) -> f64 {
        let nf = n as f64;
        (nf * (2.0 * self.k + nf - 1.0)).sqrt()
    }

    pub fn mu_plus(&self, n: usize) -> f64 {
        self.mu_minus(n + 1)
    }
}

/// Largest residual, over the sample points, of the π eigen- and ladder
/// relations `L₀u = (d+k)u`, `L₊u = μ₊ u_{k+1}`, `L₋u = μ₋ u_{k−1}`.
pub fn pi_relation_residual(basis: &PiBasis, samples: &[f64]) -> f64 {
    let d = basis.rep_label();
    let mu = LadderCoefficients { k: d };
    let l0 = apply_pi_generator(PiGenerator::L0, basis);
    let raise = apply_pi_generator(PiGenerator::Lplus, basis);
    let lower = apply_pi_generator(PiGenerator::Lminus, basis);
    let up = basis.shifted(1);
    let mut worst = 0.0f64;
    for &r in samples {
        worst = worst.max((l0(r) - (d + basis.k as f64) * basis.value(r)).abs());
        worst = worst.max((raise(r) - mu.mu_plus(basis.k) * up.value(r)).abs());
        let expected_down = if basis.k == 0 {
            0.0
        } else {
            mu.mu_minus(basis.k) * basis.shifted(-1).value(r)
        };
        worst = worst.max((lower(r) - expected_down).abs());
    }
    worst
}

/// Same for the σ relations `J₀e = (m+k)e`, `J₊e = μ₊ e_{m+1}`,
/// `J₋e = μ₋ e_{m−1}`.
pub fn sigma_relation_residual(basis: &SigmaBasis, samples: &[f64]) -> f64 {
    let mu = LadderCoefficients { k: basis.k };
    let j0 = apply_sigma_generator(SigmaGenerator::J0, basis);
    let raise = apply_sigma_generator(SigmaGenerator::Jplus, basis);
    let lower = apply_sigma_generator(SigmaGenerator::Jminus, basis);
    let up = basis.shifted(1);
    let mut worst = 0.0f64;
    for &r in samples {
        worst = worst.max((j0(r) - (basis.k + basis.m as f64) * basis.value(r)).abs());
        worst = worst.max((raise(r) - mu.mu_plus(basis.m) * up.value(r)).abs());
        let expected_down = if basis.m == 0 {
            0.0
        } else {
            mu.mu_minus(basis.m) * basis.shifted(-1).value(r)
        };
        worst = worst.max((lower(r) - expected_down).abs());
    }
    worst
}

/// Largest residual of `(𝒞 − eigenvalue) u` over the sample points, where the
/// Casimir `𝒞 = S₀² − S₁² + S₂²` is applied as a composed fourth-order
/// operator and the eigenvalue is `d(d−1)`.
pub fn casimir_residual_pi(basis: &PiBasis, samples: &[f64]) -> f64 {
    let (m, l) = (basis.scale, basis.l);
    let l0 = pi_l0(m, l);
    let l1 = pi_l1(m, l);
    let l2 = pi_l2();
    let casimir = l0
        .compose(&l0)
        .plus(&l1.compose(&l1).scaled(-1.0))
        .plus(&l2.compose(&l2));
    let d = basis.rep_label();
    let eigenvalue = d * (d - 1.0);
    samples
        .iter()
        .map(|&r| (casimir.apply(&basis.derivs(r), r) - eigenvalue * basis.value(r)).abs())
        .fold(0.0, f64::max)
}

/// σ counterpart with eigenvalue `k(k−1)`.
pub fn casimir_residual_sigma(basis: &SigmaBasis, samples: &[f64]) -> f64 {
    let j0 = sigma_operator(SigmaGenerator::J0, basis);
    let j1 = sigma_operator(SigmaGenerator::J1, basis);
    let j2 = sigma_operator(SigmaGenerator::J2, basis);
    let casimir = j0
        .compose(&j0)
        .plus(&j1.compose(&j1).scaled(-1.0))
        .plus(&j2.compose(&j2));
    let eigenvalue = basis.k * (basis.k - 1.0);
    samples
        .iter()
        .map(|&r| (casimir.apply(&basis.derivs(r), r) - eigenvalue * basis.value(r)).abs())
        .fold(0.0, f64::max)
}

// ---------------------------------------------------------------------------
// Identification with the circle spectrum
// ---------------------------------------------------------------------------

/// The three routes to the circle eigenvalue at radius `a`: direct closed
/// form, through the σ-basis (`a√a · e_n^{(1/2)}(a)`), and through the
/// π-basis (`√a · u_{n,−1/2}^{(2)}(a)`).
///
/// All three agree in absolute value. The π route agrees in sign as well;
/// the σ route is off by `sigma_sign = (−1)^n` because the alternating
/// prefactor sits only in the π-basis normalization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircleIdentification {
    pub circle: f64,
    pub via_sigma: f64,
    pub via_pi: f64,
    pub sigma_sign: f64,
}

pub fn identify_circle_spectrum(n: usize, a: f64) -> CircleIdentification {
    assert!(a > 0.0);
    let sigma = SigmaBasis::new(2.0, 0.5, n);
    let pi = PiBasis::new(2.0, n, -0.5);
    CircleIdentification {
        circle: circle_eigenvalue(n, a),
        via_sigma: a * a.sqrt() * sigma.value(a),
        via_pi: a.sqrt() * pi.value(a),
        sigma_sign: parity_sign(n),
    }
}
