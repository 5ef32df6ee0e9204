//! Coupling budget of the hybrid device: mechanical mode, zero-point
//! motion, bare/dressed couplings, parametric squeezing, regime
//! classification, and capacitive phonon hopping.

use crate::error::{Result, SkyrmechError};
use crate::units::{EPS_0, HBAR, MU_B};

/// Rectangular cantilever.
#[derive(Debug, Clone, PartialEq)]
pub struct CantileverGeometry {
    /// Length, m.
    pub length_l: f64,
    /// Width, m.
    pub width_w: f64,
    /// Thickness, m.
    pub thickness_t: f64,
    /// Mass density, kg/m^3.
    pub density: f64,
    /// Young's modulus, Pa.
    pub youngs: f64,
    /// Fraction of the geometric mass acting as the mode mass
    /// (1.0 = plain rho*l*w*t; 0.25 = tip-normalized fundamental
    /// flexural mode).
    pub mode_mass_fraction: f64,
}

impl CantileverGeometry {
    /// Reference cantilever: (5.6, 0.05, 0.04) um silicon,
    /// rho = 2329 kg/m^3, E = 1.3e11 Pa, mode mass m/4.
    pub fn reference() -> Self {
        Self {
            length_l: 5.6e-6,
            width_w: 0.05e-6,
            thickness_t: 0.04e-6,
            density: 2329.0,
            youngs: 1.3e11,
            mode_mass_fraction: 0.25,
        }
    }

    pub fn validate(&self) -> bool {
        self.length_l > 0.0
            && self.width_w > 0.0
            && self.thickness_t > 0.0
            && self.density > 0.0
            && self.youngs > 0.0
            && self.mode_mass_fraction > 0.0
    }

    /// True when the thin-beam formula is trustworthy (l/t >= 10).
    pub fn is_thin_beam(&self) -> bool {
        self.length_l / self.thickness_t >= 10.0
    }

    /// Geometric mass rho*l*w*t, kg.
    pub fn geometric_mass(&self) -> f64 {
        self.density * self.length_l * self.width_w * self.thickness_t
    }

    /// Mode mass used in the coupling budget, kg.
    pub fn mode_mass(&self) -> f64 {
        self.mode_mass_fraction * self.geometric_mass()
    }
}

/// Fundamental flexural frequency f = 3.516 t sqrt(E/(12 rho)) / l^2, Hz.
pub fn cantilever_frequency(geom: &CantileverGeometry) -> f64 {
    3.516 * geom.thickness_t * (geom.youngs / (12.0 * geom.density)).sqrt()
        / (geom.length_l * geom.length_l)
}

/// Zero-point motion result.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroPointMotion {
    /// z0 = sqrt(hbar / (2 m omega_m)), m.
    pub z0: f64,
    /// The mass that entered, kg.
    pub mass: f64,
}

/// Zero-point motion with the plain geometric mass rho*l*w*t.
pub fn zero_point_motion(geom: &CantileverGeometry, omega_m: f64) -> ZeroPointMotion {
    assert!(omega_m > 0.0);
    zero_point_motion_for_mass(geom.geometric_mass(), omega_m)
}

/// Zero-point motion for an explicit mass (mode-mass conventions live at
/// the call site).
pub fn zero_point_motion_for_mass(mass: f64, omega_m: f64) -> ZeroPointMotion {
    ZeroPointMotion {
        z0: (HBAR / (2.0 * mass * omega_m)).sqrt(),
        mass,
    }
}

/// Bare tip-qubit coupling lambda_TS = g mu_B S-bar G z0 / hbar, rad/s.
pub fn bare_coupling(z0: f64, gradient: f64, sbar: f64, lande_g: f64) -> f64 {
    lande_g * MU_B * sbar * gradient * z0 / HBAR
}

/// Cooperativity 4 lambda^2 / (gamma_m gamma_sky); all angular frequencies
/// (the 2pi factors cancel).
pub fn cooperativity(lambda: f64, gamma_m: f64, gamma_sky: f64) -> f64 {
    assert!(gamma_m > 0.0 && gamma_sky > 0.0);
    4.0 * lambda * lambda / (gamma_m * gamma_sky)
}

/// Drive electrode under the cantilever.
#[derive(Debug, Clone, PartialEq)]
pub struct DriveElectrode {
    /// Effective plate area, m^2.
    pub area_s: f64,
    /// Plate gap, m.
    pub gap_d: f64,
    /// Relative permittivity.
    pub eps_r: f64,
    /// DC bias, V.
    pub v0: f64,
    /// Modulation amplitude, V.
    pub vp: f64,
    /// Drive frequency omega_E (the voltage oscillates at 2 omega_E), rad/s.
    pub omega_e: f64,
}

impl DriveElectrode {
    pub fn validate(&self) -> bool {
        self.area_s > 0.0 && self.gap_d > 0.0 && self.eps_r > 0.0
    }

    /// Stiffness modulation amplitude Delta k_E = 2 eps0 eps_r S V0 Vp / d^3.
    pub fn stiffness_modulation(&self) -> f64 {
        2.0 * EPS_0 * self.eps_r * self.area_s * self.v0 * self.vp / self.gap_d.powi(3)
    }
}

/// Two-phonon drive strength Omega_E = -Delta k_E z0^2 / hbar, rad/s.
pub fn parametric_drive_strength(electrode: &DriveElectrode, z0: f64) -> f64 {
    -electrode.stiffness_modulation() * z0 * z0 / HBAR
}

/// Squeezed (Bogoliubov) frame of the parametrically driven mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezeFrame {
    /// Squeeze parameter, tanh(2r) = Omega_E / Delta_m.
    pub r: f64,
    /// Mechanical detuning Delta_m = omega_m - omega_E.
    pub delta_m: f64,
    /// Delta_m / cosh(2r).
    pub delta_m_eff: f64,
    /// The drive strength Omega_E that entered.
    pub omega_drive: f64,
    /// lambda_eff = lambda-bar e^r / 2.
    pub lambda_eff: f64,
}

/// Build the squeezed frame from (Delta_m, Omega_E, lambda-bar).
pub fn squeeze_frame(delta_m: f64, omega_e_drive: f64, lambda_bar: f64) -> Result<SqueezeFrame> {
    if omega_e_drive.abs() >= delta_m.abs() {
        return Err(SkyrmechError::SqueezeDiverges {
            omega_e: omega_e_drive.abs(),
            delta_m: delta_m.abs(),
        });
    }
    let r = 0.5 * (omega_e_drive / delta_m).atanh();
    Ok(SqueezeFrame {
        r,
        delta_m,
        delta_m_eff: delta_m / (2.0 * r).cosh(),
        omega_drive: omega_e_drive,
        lambda_eff: lambda_bar * r.exp() / 2.0,
    })
}

/// Squeezed frame specified directly by r (the drive strength is implied
/// through tanh(2r) = Omega_E/Delta_m).
pub fn squeeze_frame_from_r(delta_m: f64, r: f64, lambda_bar: f64) -> SqueezeFrame {
    SqueezeFrame {
        r,
        delta_m,
        delta_m_eff: delta_m / (2.0 * r).cosh(),
        omega_drive: delta_m * (2.0 * r).tanh(),
        lambda_eff: lambda_bar * r.exp() / 2.0,
    }
}

/// Coupling-regime classification against g_c = sqrt(Delta_q Delta_m_eff).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CouplingRegime {
    /// lambda_eff / g_c < 0.1
    Sc,
    /// 0.1 <= lambda_eff / g_c <= 1
    Usc,
    /// lambda_eff / g_c > 1
    Dsc,
}

impl std::fmt::Display for CouplingRegime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CouplingRegime::Sc => write!(f, "SC"),
            CouplingRegime::Usc => write!(f, "USC"),
            CouplingRegime::Dsc => write!(f, "DSC"),
        }
    }
}

pub fn coupling_regime(lambda_eff: f64, delta_q: f64, delta_m_eff: f64) -> Result<CouplingRegime> {
    let prod = delta_q * delta_m_eff;
    if prod <= 0.0 {
        return Err(SkyrmechError::InvalidRegimeInput {
            delta_q,
            delta_m_eff,
        });
    }
    let ratio = lambda_eff.abs() / prod.sqrt();
    Ok(if ratio < 0.1 {
        CouplingRegime::Sc
    } else if ratio <= 1.0 {
        CouplingRegime::Usc
    } else {
        CouplingRegime::Dsc
    })
}

/// Capacitive link between neighbouring cantilevers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HoppingLink {
    /// Applied voltage, V.
    pub voltage_u: f64,
    /// Electrode capacitance, F.
    pub cap_c: f64,
    /// Wire self-capacitance C_W ~ eps0 * wire length, F.
    pub cap_w: f64,
    /// Electrode gap, m.
    pub gap_h: f64,
    /// Zero-point motion, m.
    pub z0: f64,
    /// Bare hopping g = z0^2 U^2 C^2 C_W^2 / [hbar h^2 (2C + C_W)^3], rad/s.
    pub bare_g: f64,
    /// Dressed hopping G = g e^{2r} / 2, rad/s.
    pub dressed_g: f64,
}

/// Hopping rate of the capacitive link; `squeeze_r` dresses it by e^{2r}/2.
pub fn hopping_rate(
    voltage_u: f64,
    cap_c: f64,
    cap_w: f64,
    gap_h: f64,
    z0: f64,
    squeeze_r: f64,
) -> HoppingLink {
    assert!(cap_c > 0.0 && cap_w >= 0.0 && gap_h > 0.0);
    let bare_g = z0 * z0 * voltage_u * voltage_u * cap_c * cap_c * cap_w * cap_w
        / (HBAR * gap_h * gap_h * (2.0 * cap_c + cap_w).powi(3));
    HoppingLink {
        voltage_u,
        cap_c,
        cap_w,
        gap_h,
        z0,
        bare_g,
        dressed_g: bare_g * (2.0 * squeeze_r).exp() / 2.0,
    }
}

/// Voltages implementing the dimerized chain: u1 = u0 sqrt(1+delta) e^{r0-r1},
/// u2 = u0 sqrt(1-delta) e^{r0-r2}.
pub fn ssh_voltages(u0: f64, delta: f64, r0: f64, r1: f64, r2: f64) -> (f64, f64) {
    assert!(delta.abs() < 1.0);
    (
        u0 * (1.0 + delta).sqrt() * (r0 - r1).exp(),
        u0 * (1.0 - delta).sqrt() * (r0 - r2).exp(),
    )
}
