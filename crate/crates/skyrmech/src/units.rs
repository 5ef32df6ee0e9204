//! Physical constants (SI) and unit helpers.
//!
//! Library convention: every frequency-like quantity crossing a module
//! boundary is an *angular* frequency in rad/s (or dimensionless where a
//! scale like lambda-bar is factored out). Conversion from laboratory
//! units happens exactly once, at the input-type boundary.

use std::f64::consts::TAU;

/// Reduced Planck constant, J s.
pub const HBAR: f64 = 1.054_571_817e-34;

/// Bohr magneton, J/T.
pub const MU_B: f64 = 9.274_010_0783e-24;

/// Vacuum permittivity, F/m.
pub const EPS_0: f64 = 8.854_187_8128e-12;

/// One milli-electronvolt in joules.
pub const MEV: f64 = 1.602_176_634e-22;

/// Default Lande g-factor.
pub const LANDE_G: f64 = 2.0;

/// Angular frequency (rad/s) of an energy given in meV.
pub fn mev_to_angular(e_mev: f64) -> f64 {
    e_mev * MEV / HBAR
}

/// Ordinary frequency nu = omega / 2pi.
pub fn to_hz(omega: f64) -> f64 {
    omega / TAU
}

/// Angular frequency from an ordinary frequency in Hz.
pub fn from_hz(nu: f64) -> f64 {
    nu * TAU
}
