//! Pseudo-spectral simulation of the 2D stochastic Navier-Stokes vorticity
//! equation on the torus, driven by a degenerate pure-jump noise (Brownian
//! motion run on a subordinator clock), together with the variational stack
//! (tangent, adjoint, second variation), Malliavin-matrix diagnostics, the
//! noise-to-state coupling construction, and ergodicity probes.
//!
//! The crate is organised by subsystem:
//!
//! * [`spectral`]: real Fourier basis on the truncated lattice, Biot-Savart,
//!   the dealiased bilinear term, norms and projections.
//! * [`levy`]: subordinator sampling, subordinated Brownian increments, the
//!   forcing map `Q`, and Levy-measure validators.
//! * [`integrator`]: jump-adapted ETD2RK time stepping, trajectory records,
//!   energy diagnostics and the stopping-time clock.
//! * [`variational`]: tangent/adjoint/second-variation solves along a frozen
//!   trajectory and the Malliavin directional derivative.
//! * [`malliavin`]: the Gram matrix of the Malliavin operator on an observed
//!   subspace, resolvent cutoffs, and the non-degeneracy probe.
//! * [`coupling`]: the control construction, residual recursion, gradient
//!   and e-property experiments, and the weak-irreducibility probe.
//! * [`genset`]: combinatorial checks on the forcing mode set.
//!
//! Ensemble fan-out is data-parallel through [`fanout`] when the `parallel`
//! feature (default) is enabled, with a sequential fallback otherwise.

pub mod config;
pub mod coupling;
pub mod error;
pub mod fanout;
pub mod genset;
pub mod integrator;
pub mod levy;
pub mod malliavin;
pub mod rng;
pub mod spectral;
pub mod stats;
pub mod variational;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
