//! Default verification thresholds.

/// Residuals of exact exponential-polynomial algebra (coefficients are O(1)).
pub const EXACT: f64 = 1e-10;

/// Nonlinear residuals assembled from jets at sample points.
pub const JET: f64 = 1e-8;

/// Relative agreement of jet derivatives with central differences.
pub const FINITE_DIFFERENCE: f64 = 1e-5;

/// Step for the central-difference cross-check of jet derivatives.
pub const FD_STEP: f64 = 1e-4;

/// Step for the finite-difference check of the classical reduction.
pub const GARDNER_FD_STEP: f64 = 1e-3;

/// Finite-difference residual bound for the classical reduction.
pub const GARDNER_FD: f64 = 1e-4;

/// A tau function whose body is smaller than this at a point is singular there.
pub const SINGULAR_BODY: f64 = 1e-8;

/// Imaginary parts of focusing components must stay below this.
pub const REALITY: f64 = 1e-10;

/// Interaction asymptotics, compared per Grassmann monomial.
pub const ASYMPTOTIC: f64 = 1e-6;
