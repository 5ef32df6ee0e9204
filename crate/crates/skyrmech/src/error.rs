//! Error types shared across the library.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SkyrmechError {
    #[error("adaptive quadrature failed to converge: requested rel tol {requested:.3e}, achieved {achieved:.3e} on [{a}, {b}]")]
    NonConvergedQuadrature {
        requested: f64,
        achieved: f64,
        a: f64,
        b: f64,
    },

    #[error("charge-basis truncation not converged: lowest levels still shift by {shift:.3e} (relative) from s_max {s_max} to {s_max_plus}")]
    TruncationNotConverged {
        s_max: usize,
        s_max_plus: usize,
        shift: f64,
    },

    #[error("z' = {z_prime:.6e} m lies outside the magnetized slab [{lo:.6e}, {hi:.6e}] m")]
    OutOfSlab { z_prime: f64, lo: f64, hi: f64 },

    #[error("elliptic modulus out of range: q^2 = {q2}")]
    ModulusOutOfRange { q2: f64 },

    #[error("parametric drive unstable: |Omega_E| = {omega_e:.6e} >= |Delta_m| = {delta_m:.6e}")]
    SqueezeDiverges { omega_e: f64, delta_m: f64 },

    #[error("coupling-regime classification needs same-sign detunings, got Delta_q = {delta_q:.6e}, Delta_m_eff = {delta_m_eff:.6e}")]
    InvalidRegimeInput { delta_q: f64, delta_m_eff: f64 },

    #[error("two qubits placed on the same site (cell {cell}, sublattice {sublattice})")]
    PlacementCollision { cell: i64, sublattice: char },

    #[error("integrator step size underflow at t = {t:.6e} (dt = {dt:.3e})")]
    StepSizeUnderflow { t: f64, dt: f64 },

    #[error("density-matrix trace drifted to |tr rho - 1| = {drift:.3e} at t = {t:.6e}")]
    TraceDrift { t: f64, drift: f64 },

    #[error("Hamiltonian does not conserve the total excitation number (commutator norm {norm:.3e})")]
    NotExcitationConserving { norm: f64 },

    #[error("bound-state energy {e_bs:.6e} touches the phonon band (gap half-width {gap_half:.6e}, guard 0.95)")]
    EnergyInBand { e_bs: f64, gap_half: f64 },
}

pub type Result<T> = std::result::Result<T, SkyrmechError>;
