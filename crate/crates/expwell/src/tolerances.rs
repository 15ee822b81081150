//! Pinned numeric tolerances, shared by the verification suites, the
//! acceptance tests and the CLI so a bound is never stated twice.

/// Absolute agreement (eV) between computed energies and the published
/// reference table.
pub const TABLE1_ABS_EV: f64 = 5e-3;

/// Absolute agreement (eV) between closed-form energies and the
/// Richardson-extrapolated grid eigensolver on the default grid.
pub const ORACLE_CROSS_EV: f64 = 2e-3;

/// Max scaled residual of the transformed radial-form equation over the
/// default grid, n = 0..5, analytic derivatives.
pub const ODE_RESIDUAL_MAX: f64 = 1e-8;

/// An eps perturbed by 0.1 must push the same residual above this.
pub const ODE_CONTROL_MIN: f64 = 1e-3;

/// |quadrature of |phi(x)|^2 - 1| for closed-form-normalized states.
pub const NORM_ABS: f64 = 1e-8;

/// Relative agreement between the closed-form squared norm and adaptive
/// quadrature of the same integrand.
pub const NORM_REL: f64 = 1e-8;

/// Relative spread among the three series routes (explicit sum,
/// confluent-hypergeometric form, Laguerre form).
pub const SERIES_REL: f64 = 1e-10;

/// Scaled residual of the transform-domain first-order equation with the
/// consistent coefficient 2 eps + 1.
pub const LAPLACE_RESIDUAL_MAX: f64 = 1e-10;

/// The printed coefficient eps + 1 must leave at least this much residual.
pub const LAPLACE_CONTROL_MIN: f64 = 1e-2;

/// Ground-state annihilation: max |lowering-core phi_0| / max |phi_0|.
pub const ANNIHILATION_MAX: f64 = 1e-12;

/// Relative error of measured step coefficients against n + 2 eps
/// (lowering) and n + 1 (raising).
pub const LADDER_COEFF_REL: f64 = 1e-10;

/// Relative error of the measured commutator eigenvalue against
/// -(2n + 2 eps + 1), and of the composed raise-then-lower coefficient
/// against (n + 1)(n + 1 + 2 eps).
pub const COMMUTATOR_REL: f64 = 1e-9;

/// Deviation of the measured eigenvalue-shift structure constants
/// from +2 (lowering) and -2 (raising).
pub const SHIFT_CONSTANT_ABS: f64 = 1e-9;

/// Relative error allowed on the particle-in-a-box self-test.
pub const BOX_REL: f64 = 1e-3;

/// The grid-halving error ratio must land within this distance of the
/// ideal O(h^2) value 4.
pub const CONVERGENCE_RATIO_HALF_WIDTH: f64 = 0.5;

/// Raising fit residual left by the published middle term away from the
/// coincidence point a1 = 1/2.
pub const PRINTED_MIDDLE_CONTROL_MIN: f64 = 1e-2;
