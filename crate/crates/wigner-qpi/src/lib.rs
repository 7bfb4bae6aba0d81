//! Spectra of phase-space region and contour operators, quasiprobability
//! integrals and their bounds, and the dilation identity connecting spectra
//! at proportional radii.
//!
//! The integral of a Wigner function over a region of the phase plane — a
//! quasiprobability integral (QPI) — equals the expectation value of a
//! self-adjoint region operator, and is bounded by that operator's extremal
//! eigenvalues rather than by `[0, 1]`. For disks and circles centered at
//! the origin the operators are diagonal in the Fock basis, so everything
//! reduces to eigenvalue sequences `λ_n(a)` in the radius `a`:
//!
//! * [`spectra`] — closed-form circle eigenvalues, quadrature disk
//!   eigenvalues, QPIs of Fock-diagonal states, and bound reports;
//! * [`wigner`] — explicit Wigner functions and the brute-force disk
//!   oracle that cross-validates the spectral route;
//! * [`glbasis`] — the Gauss–Laguerre bases carrying the su(1,1) discrete
//!   series whose ladder structure organizes those eigenvalue sequences;
//! * [`scaling`] — the Meixner-coefficient expansion of `λ_m(ξa)` in
//!   `{λ_n(a)}`, with empirical resolution of its sign/argument conventions;
//! * [`polyfn`], [`quadrature`] — the special-function and integration
//!   layers underneath;
//! * [`cli`] — deterministic JSON/CSV command payloads for the binary.
//!
//! Run `cargo run --example scaling_identity` (or any other example) for a
//! guided tour; the `acceptance` integration test drives every headline
//! property end to end.

pub mod cli;
pub mod glbasis;
pub mod polyfn;
pub mod quadrature;
pub mod scaling;
pub mod spectra;
pub mod wigner;

pub use quadrature::{QuadResult, QuadratureSpec};
pub use spectra::{
    bounds, circle_eigenvalue, disk_eigenvalue, qpi, BoundsReport, FockWeights, RegionKind,
    Spectrum,
};
pub use wigner::{fock_wigner, pure_state_wigner, qpi_oracle_disk, HermiteState, WignerInput};
