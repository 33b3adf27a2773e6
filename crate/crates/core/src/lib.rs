//! Casimir interaction free energy of two concentric hyperspheres in `D` spatial
//! dimensions, for perfectly conducting and infinitely permeable boundaries.
//!
//! The crate is organised bottom-up:
//!
//! * [`specfun`]: log-scaled modified Bessel functions, uniform (Debye) asymptotics
//!   generated from exact rational recursions, Γ, ζ and Fermi-type integrals.
//! * [`modes`]: TE/TM degeneracies, the order map `ν = l + (D-2)/2` and the Robin
//!   coefficients of each boundary condition.
//! * [`energy`]: the exact Matsubara sum, the classical (`p = 0`) term, the
//!   zero-temperature integral, thermal corrections and forces.
//! * [`asymptotics`]: proximity-force approximations and the small-gap expansions
//!   used to cross-check the exact results.
//! * [`selftest`]: invariant suites shared by the CLI `selftest` mode and the
//!   acceptance tests.
//!
//! All quantities are in natural units (`ħ = c = k_B = 1`); lengths are usually
//! measured in units of the inner radius `a1`.

pub mod asymptotics;
pub mod energy;
pub mod error;
pub mod modes;
pub mod quadrature;
pub mod selftest;
pub mod specfun;
pub mod summation;

pub use error::{Error, Result};
pub use modes::{BoundaryCondition, BoundaryPair, ChannelSelection, Polarization};
