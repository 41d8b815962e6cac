//! Exact tau functions and verifiers for the supersymmetric Gardner equation
//!
//! ```text
//! Φ_t + Φ_xxx ± 3(DΦ)(ΦDΦ)_x ± 3σ(ΦDΦ)_x = 0,    D = ∂_θ + θ∂_x
//! ```
//!
//! (upper signs focusing, lower defocusing). Solutions are written as
//! `Φ = c·D log(g/f)` with `c = i` (focusing) or `c = 1` (defocusing), where
//! `g` and `f` are exponential polynomials with Grassmann coefficients.
//!
//! * [`grassmann`] – exterior algebra over ℂ generated by θ, ξ₁…ξ_N
//! * [`superpoly`] – exact exponential polynomials in `(X, T)`
//! * [`jet`] – truncated Taylor jets used for nonlinear residuals
//! * [`hirota`] – Hirota `D` and super-Hirota `S` operators, bilinear systems
//! * [`solitons`] – supersolitons, shocks, lumps and mixed solutions
//! * [`verify`] – bilinear, PDE, limit and asymptotic checks
//! * [`cli`] – the `susy-gardner` command line front end
//!
//! See the `examples/` directory of this crate for one runnable program per
//! capability.

pub mod cli;
pub mod error;
pub mod grassmann;
pub mod hirota;
pub mod jet;
pub mod solitons;
pub mod superpoly;
pub mod tau;
pub mod tolerances;
pub mod verify;

pub use error::{Error, Result};
pub use grassmann::{Grassmann, Parity, C64};
pub use hirota::{bilinear_system, hirota_d, super_s, BilinearEquation};
pub use jet::SuperJet;
pub use solitons::{
    build, build_mixed_rational_soliton_tau, build_mixed_shock_soliton_tau, build_rational_tau,
    build_shock_tau, build_soliton_tau, dispersion, Kind, SolitonEntry, SolitonSpec,
};
pub use superpoly::{Axis, Frame, SuperPoly};
pub use tau::{Prefactor, Regime, TauPair};
