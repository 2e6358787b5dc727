//! Exact and spectral computations for model spaces `K_θ` and Toeplitz
//! kernels on the upper half-plane.
//!
//! Two backends share the same vocabulary:
//!
//! * the exact backend works with rational functions stored in factored form
//!   ([`FactoredRational`]) and their partial-fraction expansions
//!   ([`PartialFractions`]); kernel dimensions, Wiener–Hopf factors, maximal
//!   functions and decompositions are computed symbolically from root data;
//! * the spectral backend samples boundary values on a Cayley-mapped grid
//!   ([`BoundaryGrid`]) and realizes the Riesz projections through the FFT.
//!   Oscillating factors `e^{iμξ}` are carried as separate channels so that
//!   functions built from `e_λ` stay resolvable at moderate grid sizes.
//!
//! Conventions: `λ±(ξ) = ξ ± i`, `r = λ₋/λ₊`, `r_z = (ξ−z)/(ξ−z̄)`,
//! `e_λ(ξ) = e^{iλξ}`; `P⁺` keeps the part analytic in the upper half-plane.

pub mod boundedness;
pub mod error;
pub mod exp_rational;
pub mod inner_functions;
pub mod linalg;
pub mod model_space;
pub mod rational_algebra;
pub mod series;
pub mod spectral_backend;
pub mod toeplitz_kernels;

pub use error::{Error, Result};
pub use exp_rational::ExpRational;
pub use inner_functions::InnerFunction;
pub use rational_algebra::{FactoredRational, PartialFractions, WienerHopfFactorization};
pub use spectral_backend::{BoundaryGrid, GridFunction};

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex64;

/// Points of the extended complex plane are plain complex numbers.
pub type ComplexPoint = C64;

pub(crate) const I: C64 = C64::new(0.0, 1.0);
