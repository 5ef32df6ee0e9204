//! Skyrmion helicity-qubit spectrum: profile, charge-basis coefficients,
//! truncated diagonalization, two-level and microwave-dressed reductions.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Result, SkyrmechError};
use crate::quadrature;
use crate::units::{mev_to_angular, LANDE_G, MEV, MU_B};

/// Default dimensionless radial cutoff for the coefficient quadratures.
///
/// Large enough that exponentially localized profiles (see
/// [`SkyrmionMaterial::profile_exponent`]) have tails below 1e-12 of the
/// integrand peak.
pub const DEFAULT_PROFILE_CUTOFF: f64 = 250.0;

/// Default relative tolerance for the coefficient quadratures.
pub const DEFAULT_QUAD_REL_TOL: f64 = 1e-9;

/// Material parameters of a skyrmion in a frustrated magnet.
///
/// Laboratory units at this boundary; everything downstream is either
/// dimensionless (in units of the exchange J1) or an angular frequency.
#[derive(Debug, Clone, PartialEq)]
pub struct SkyrmionMaterial {
    /// Nearest-neighbour exchange J1, meV.
    pub j1_mev: f64,
    /// Competing exchange J2, meV.
    pub j2_mev: f64,
    /// Lattice spacing, m.
    pub lattice_a: f64,
    /// Out-of-plane magnetic field, T.
    pub field_h: f64,
    /// Easy-axis anisotropy K, meV.
    pub anisotropy_k_mev: f64,
    /// Effective spin per unit cell.
    pub spin_sbar: f64,
    /// Out-of-plane electric field, V/m.
    pub efield: f64,
    /// Electric polarization constant, C/m^2.
    pub polarization_pe: f64,
}

impl SkyrmionMaterial {
    /// Reference material of the feasibility analysis: J1 = 1 meV,
    /// a = 0.5 nm, K = 0.15 meV, B = 35 mT, S-bar = 20, P_E = 0.2 C/m^2,
    /// E = 80 V/m. J2 = 20 meV pins the profile radius near 3 nm.
    pub fn reference() -> Self {
        Self {
            j1_mev: 1.0,
            j2_mev: 20.0,
            lattice_a: 0.5e-9,
            field_h: 35e-3,
            anisotropy_k_mev: 0.15,
            spin_sbar: 20.0,
            efield: 80.0,
            polarization_pe: 0.2,
        }
    }

    pub fn validate(&self) -> bool {
        self.j1_mev > 0.0 && self.j2_mev > 0.0 && self.lattice_a > 0.0 && self.spin_sbar > 0.0
    }

    /// Zeeman energy g mu_B B in meV.
    pub fn zeeman_mev(&self) -> f64 {
        LANDE_G * MU_B * self.field_h / MEV
    }

    /// Dimensionless profile field h = (g mu_B B) / J1.
    pub fn dimensionless_h(&self) -> f64 {
        self.zeeman_mev() / self.j1_mev
    }

    /// Dimensionless profile anisotropy kappa_z = K / J1.
    pub fn dimensionless_kappa(&self) -> f64 {
        self.anisotropy_k_mev / self.j1_mev
    }

    /// Physical length per unit of dimensionless radius: l * a with
    /// l = sqrt(J2/J1).
    pub fn length_scale(&self) -> f64 {
        (self.j2_mev / self.j1_mev).sqrt() * self.lattice_a
    }

    /// Angular frequency of the energy unit J_Lambda = J1.
    pub fn j_lambda_angular(&self) -> f64 {
        mev_to_angular(self.j1_mev)
    }

    /// Same material with the magnetic field retuned so that
    /// h-bar_z = kappa-bar_z (the charge-state degeneracy point, the
    /// qubit working point). That needs g mu_B B = K.
    pub fn with_degeneracy_field(&self) -> Self {
        let mut m = self.clone();
        m.field_h = self.anisotropy_k_mev * MEV / (LANDE_G * MU_B);
        m
    }

    /// Complex decay exponent Y of the approximate profile,
    /// Y = sqrt(-1 + sqrt(1 - 4(h + kappa_z))) / sqrt(2), principal branches.
    pub fn profile_exponent(&self) -> Complex64 {
        let x = Complex64::new(1.0 - 4.0 * (self.dimensionless_h() + self.dimensionless_kappa()), 0.0);
        ((x.sqrt() - 1.0) / 2.0).sqrt()
    }

    /// Dimensionless bare coefficients (h-bar_z, kappa-bar_z, eps-bar_z)
    /// in units of J_Lambda.
    pub fn bare_coefficients(&self) -> (f64, f64, f64) {
        let hbar_z = self.zeeman_mev() * self.spin_sbar / self.j1_mev;
        let kappabar_z = self.anisotropy_k_mev * self.spin_sbar / self.j1_mev;
        let epsbar_z = self.lattice_a.powi(3) * self.efield * self.polarization_pe * self.spin_sbar
            / (self.j1_mev * MEV);
        (hbar_z, kappabar_z, epsbar_z)
    }
}

/// Polar angle Theta_0(rho) of the approximate skyrmion profile.
///
/// Real by construction: the complex exponent only enters through its real
/// and imaginary parts separately.
pub fn skyrmion_profile(material: &SkyrmionMaterial, rho: f64) -> f64 {
    debug_assert!(rho >= 0.0);
    let y = material.profile_exponent();
    std::f64::consts::PI / (rho * rho + 1.0).sqrt() * (-y.re * rho).exp() * (-y.im * rho).cos()
}

/// d Theta_0 / d rho, analytic.
pub fn skyrmion_profile_deriv(material: &SkyrmionMaterial, rho: f64) -> f64 {
    let y = material.profile_exponent();
    let s = (rho * rho + 1.0).sqrt();
    let damp = (-y.re * rho).exp();
    let (sin, cos) = (y.im * rho).sin_cos();
    std::f64::consts::PI * damp * (-rho / (s * s * s) * cos - y.re / s * cos - y.im / s * sin)
}

/// First radius (in metres) at which Theta_0 crosses pi/2.
pub fn skyrmion_radius(material: &SkyrmionMaterial) -> Option<f64> {
    let target = std::f64::consts::FRAC_PI_2;
    let mut prev = skyrmion_profile(material, 0.0) - target;
    let step = 1e-3;
    let mut rho = step;
    while rho < 100.0 {
        let cur = skyrmion_profile(material, rho) - target;
        if prev > 0.0 && cur <= 0.0 {
            // bisect within [rho - step, rho]
            let (mut lo, mut hi) = (rho - step, rho);
            for _ in 0..80 {
                let mid = 0.5 * (lo + hi);
                if skyrmion_profile(material, mid) - target > 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            return Some(0.5 * (lo + hi) * material.length_scale());
        }
        prev = cur;
        rho += step;
    }
    None
}

/// Normalization convention for the self-cancelling kappa coefficient.
///
/// The printed expression for the quartic coefficient is a ratio of two
/// identical integrals, i.e. identically kappa-bar_z; which normalization
/// was intended cannot be recovered, so all three readings are selectable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KappaConvention {
    /// kappa = kappa-bar_z exactly (the expression as printed). Default.
    Literal,
    /// kappa = kappa-bar_z * int (1-cos T)^2 dr / [int (1-cos T) dr]^2.
    SquaredDenominator,
    /// kappa supplied directly as a dimensionless number in J_Lambda units.
    User(f64),
}

/// Radial measure of the coefficient integrals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RadialMeasure {
    /// 2 pi rho d rho (planar area measure). Default.
    Area,
    /// plain d rho.
    Line,
}

/// Options for [`qubit_coefficients`].
#[derive(Debug, Clone, Copy)]
pub struct CoefficientOptions {
    pub cutoff: f64,
    pub rel_tol: f64,
    pub measure: RadialMeasure,
    pub kappa: KappaConvention,
}

impl Default for CoefficientOptions {
    fn default() -> Self {
        Self {
            cutoff: DEFAULT_PROFILE_CUTOFF,
            rel_tol: DEFAULT_QUAD_REL_TOL,
            measure: RadialMeasure::Area,
            kappa: KappaConvention::Literal,
        }
    }
}

/// Charge-basis coefficients of the helicity qubit, as angular frequencies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitCoefficients {
    /// Quartic (charging) coefficient, rad/s. Positive.
    pub kappa: f64,
    /// Linear (field) coefficient, rad/s.
    pub hz: f64,
    /// Cosine (electric) coefficient, rad/s.
    pub eps: f64,
}

impl QubitCoefficients {
    pub fn new(kappa: f64, hz: f64, eps: f64) -> Self {
        Self { kappa, hz, eps }
    }
}

fn measure_weight(measure: RadialMeasure, rho: f64) -> f64 {
    match measure {
        RadialMeasure::Area => std::f64::consts::TAU * rho,
        RadialMeasure::Line => 1.0,
    }
}

/// Compute the charge-basis coefficients from the material.
///
/// hz is algebraic (H S-bar / J_Lambda); eps integrates
/// d_rho Theta + sin(2 Theta)/(2 rho) with the rho -> 0 limit of the second
/// term (-pi Re Y) substituted analytically; kappa follows the selected
/// convention.
pub fn qubit_coefficients(
    material: &SkyrmionMaterial,
    opts: &CoefficientOptions,
) -> Result<QubitCoefficients> {
    let (hbar_z, kappabar_z, epsbar_z) = material.bare_coefficients();
    let scale = material.j_lambda_angular();
    let y_re = material.profile_exponent().re;

    let eps_integral = if epsbar_z == 0.0 {
        0.0
    } else {
        quadrature::integrate(
            |rho| {
                let correction = if rho < 1e-9 {
                    -std::f64::consts::PI * y_re
                } else {
                    (2.0 * skyrmion_profile(material, rho)).sin() / (2.0 * rho)
                };
                measure_weight(opts.measure, rho)
                    * (skyrmion_profile_deriv(material, rho) + correction)
            },
            0.0,
            opts.cutoff,
            opts.rel_tol,
            1e-300,
        )?
    };

    let kappa = match opts.kappa {
        KappaConvention::Literal => kappabar_z,
        KappaConvention::SquaredDenominator => {
            let num = quadrature::integrate(
                |rho| {
                    let p = 1.0 - skyrmion_profile(material, rho).cos();
                    measure_weight(opts.measure, rho) * p * p
                },
                0.0,
                opts.cutoff,
                opts.rel_tol,
                1e-300,
            )?;
            let den = quadrature::integrate(
                |rho| {
                    measure_weight(opts.measure, rho)
                        * (1.0 - skyrmion_profile(material, rho).cos())
                },
                0.0,
                opts.cutoff,
                opts.rel_tol,
                1e-300,
            )?;
            kappabar_z * num / (den * den)
        }
        KappaConvention::User(v) => v,
    };

    Ok(QubitCoefficients {
        kappa: kappa * scale,
        hz: hbar_z * scale,
        eps: epsbar_z * eps_integral * scale,
    })
}

/// Spectrum of the helicity qubit from charge-basis diagonalization.
#[derive(Debug, Clone)]
pub struct QubitSpectrum {
    /// Eigen-energies, ascending, rad/s.
    pub energies: Vec<f64>,
    /// Eigenvectors over the charge basis s in [-s_max, s_max], one column
    /// per energy, unit norm.
    pub states: DMatrix<f64>,
    pub s_max: usize,
    /// E1 - E0.
    pub omega_q: f64,
    /// E2 - E1.
    pub omega_ex: f64,
    /// |omega_ex - omega_q| > 0.2 omega_q.
    pub anharmonic: bool,
}

fn charge_basis_eigen(coeffs: &QubitCoefficients, s_max: usize) -> (Vec<f64>, DMatrix<f64>) {
    let dim = 2 * s_max + 1;
    let mut h = DMatrix::<f64>::zeros(dim, dim);
    for i in 0..dim {
        let s = i as f64 - s_max as f64;
        h[(i, i)] = coeffs.kappa * s * s - coeffs.hz * s;
        if i + 1 < dim {
            h[(i, i + 1)] = -coeffs.eps / 2.0;
            h[(i + 1, i)] = -coeffs.eps / 2.0;
        }
    }
    let eig = h.symmetric_eigen();
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let energies: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut states = DMatrix::<f64>::zeros(dim, dim);
    for (col, &i) in order.iter().enumerate() {
        states.set_column(col, &eig.eigenvectors.column(i));
    }
    (energies, states)
}

/// Diagonalize the charge-basis Hamiltonian on s in [-s_max, s_max].
///
/// Checks truncation convergence by re-diagonalizing at s_max + 5 and
/// comparing the three lowest energies.
pub fn diagonalize_qubit(coeffs: &QubitCoefficients, s_max: usize) -> Result<QubitSpectrum> {
    assert!(s_max >= 5, "s_max must be at least 5");
    let (energies, states) = charge_basis_eigen(coeffs, s_max);
    let (energies_big, _) = charge_basis_eigen(coeffs, s_max + 5);

    let scale = energies[..3]
        .iter()
        .chain(energies_big[..3].iter())
        .fold(coeffs.kappa.abs(), |m, &e| m.max(e.abs()));
    let shift = energies[..3]
        .iter()
        .zip(energies_big[..3].iter())
        .map(|(&a, &b)| (a - b).abs())
        .fold(0.0_f64, f64::max)
        / scale;
    if shift >= 1e-10 {
        return Err(SkyrmechError::TruncationNotConverged {
            s_max,
            s_max_plus: s_max + 5,
            shift,
        });
    }

    let omega_q = energies[1] - energies[0];
    let omega_ex = energies[2] - energies[1];
    let anharmonic = (omega_ex - omega_q).abs() > 0.2 * omega_q;
    Ok(QubitSpectrum {
        energies,
        states,
        s_max,
        omega_q,
        omega_ex,
        anharmonic,
    })
}

/// Two-level reduction of the helicity qubit.
#[derive(Debug, Clone, Copy)]
pub struct TwoLevelQubit {
    /// A0 = kappa - hz.
    pub a0: f64,
    /// B0 = eps.
    pub b0: f64,
    /// sqrt(A0^2 + B0^2).
    pub omega_q: f64,
    /// Mixing angle, tan(2 theta) = B0/A0; theta = pi/4 exactly at A0 = 0.
    pub theta: f64,
}

/// Truncate to the lowest two charge states.
pub fn two_level_reduction(coeffs: &QubitCoefficients) -> TwoLevelQubit {
    let a0 = coeffs.kappa - coeffs.hz;
    let b0 = coeffs.eps;
    TwoLevelQubit {
        a0,
        b0,
        omega_q: a0.hypot(b0),
        theta: 0.5 * f64::atan2(b0, a0),
    }
}

/// Microwave-dressed qubit frame.
#[derive(Debug, Clone, Copy)]
pub struct DressedQubit {
    pub omega_mw: f64,
    pub rabi_mw: f64,
    /// Detuning omega_q - omega_mw.
    pub delta_qmw: f64,
    /// Dressing angle, tan(2 beta) = rabi_mw / delta_qmw.
    pub beta: f64,
    /// Dressed splitting sqrt(delta_qmw^2 + rabi_mw^2).
    pub omega_tilde: f64,
    /// cos(2 beta); the bare coupling scales by this factor.
    pub coupling_scale: f64,
}

/// Dress the two-level qubit with a microwave drive of strength `rabi_mw`
/// at frequency `omega_mw` (both angular).
pub fn dressed_frame(qubit: &TwoLevelQubit, rabi_mw: f64, omega_mw: f64) -> DressedQubit {
    let delta_qmw = qubit.omega_q - omega_mw;
    let beta = 0.5 * f64::atan2(rabi_mw, delta_qmw);
    DressedQubit {
        omega_mw,
        rabi_mw,
        delta_qmw,
        beta,
        omega_tilde: delta_qmw.hypot(rabi_mw),
        coupling_scale: (2.0 * beta).cos(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use std::f64::consts::{FRAC_PI_4, FRAC_PI_8, PI};

    #[test]
    fn profile_at_origin_is_pi() {
        let m = SkyrmionMaterial::reference();
        assert_relative_eq!(skyrmion_profile(&m, 0.0), PI, max_relative = 1e-15);
    }

    #[test]
    fn profile_zero_field_zero_anisotropy_collapses() {
        // h + kappa_z = 0 -> Y = 0 -> Theta = pi / sqrt(rho^2 + 1).
        let mut m = SkyrmionMaterial::reference();
        m.field_h = 0.0;
        m.anisotropy_k_mev = 0.0;
        for &rho in &[0.0, 0.5, 1.0, 3.0, 10.0] {
            assert_relative_eq!(
                skyrmion_profile(&m, rho),
                PI / (rho * rho + 1.0).sqrt(),
                max_relative = 1e-14
            );
        }
    }

    #[test]
    fn profile_radius_near_3nm() {
        // Printed reference field (35 mT): radius where Theta = pi/2 should
        // land near 3 nm (paper-quoted scale), tolerance +-50%.
        let m = SkyrmionMaterial::reference();
        let r = skyrmion_radius(&m).unwrap();
        assert!(r > 1.5e-9 && r < 4.5e-9, "radius {r:.3e} outside [1.5, 4.5] nm");
    }

    #[test]
    fn profile_decays_at_cutoff() {
        // Exponential regimes: h + kappa_z < 0 and > 1/4.
        let mut easy_axis = SkyrmionMaterial::reference();
        easy_axis.anisotropy_k_mev = -0.15;
        easy_axis.field_h = 0.0;
        assert!(skyrmion_profile(&easy_axis, DEFAULT_PROFILE_CUTOFF).abs() < 1e-6);

        let tuned = SkyrmionMaterial::reference().with_degeneracy_field();
        assert!(
            tuned.dimensionless_h() + tuned.dimensionless_kappa() > 0.25,
            "degeneracy-tuned reference should sit in the damped-oscillatory regime"
        );
        assert!(skyrmion_profile(&tuned, DEFAULT_PROFILE_CUTOFF).abs() < 1e-6);
    }

    #[test]
    fn profile_deriv_matches_finite_difference() {
        let m = SkyrmionMaterial::reference().with_degeneracy_field();
        for &rho in &[0.1, 0.7, 2.0, 5.0, 9.3] {
            let h = 1e-6;
            let fd = (skyrmion_profile(&m, rho + h) - skyrmion_profile(&m, rho - h)) / (2.0 * h);
            assert_abs_diff_eq!(
                skyrmion_profile_deriv(&m, rho),
                fd,
                epsilon = 1e-7 * fd.abs().max(1.0)
            );
        }
    }

    #[test]
    fn coefficients_zero_efield_gives_zero_eps() {
        let mut m = SkyrmionMaterial::reference();
        m.efield = 0.0;
        let c = qubit_coefficients(&m, &CoefficientOptions::default()).unwrap();
        assert_eq!(c.eps, 0.0);
    }

    #[test]
    fn coefficients_literal_kappa_is_bare() {
        let m = SkyrmionMaterial::reference().with_degeneracy_field();
        let c = qubit_coefficients(&m, &CoefficientOptions::default()).unwrap();
        let (_, kappabar, _) = m.bare_coefficients();
        assert_relative_eq!(c.kappa, kappabar * m.j_lambda_angular(), max_relative = 1e-14);
    }

    #[test]
    fn coefficients_hz_is_algebraic() {
        let m = SkyrmionMaterial::reference();
        let c = qubit_coefficients(&m, &CoefficientOptions::default()).unwrap();
        let (hbar_z, _, _) = m.bare_coefficients();
        assert_relative_eq!(c.hz, hbar_z * m.j_lambda_angular(), max_relative = 1e-14);
    }

    #[test]
    fn coefficients_user_kappa() {
        let m = SkyrmionMaterial::reference();
        let opts = CoefficientOptions {
            kappa: KappaConvention::User(1.25),
            ..Default::default()
        };
        let c = qubit_coefficients(&m, &opts).unwrap();
        assert_relative_eq!(c.kappa, 1.25 * m.j_lambda_angular(), max_relative = 1e-14);
    }

    #[test]
    fn reference_qubit_frequency_near_2ghz() {
        // Degeneracy-tuned reference material: omega_q within a factor 2
        // of 2 GHz.
        let m = SkyrmionMaterial::reference().with_degeneracy_field();
        let c = qubit_coefficients(&m, &CoefficientOptions::default()).unwrap();
        let spec = diagonalize_qubit(&c, 20).unwrap();
        let f_ghz = crate::units::to_hz(spec.omega_q) / 1e9;
        assert!(
            (1.0..=4.0).contains(&f_ghz),
            "omega_q/2pi = {f_ghz} GHz not within factor 2 of 2 GHz"
        );
    }

    #[test]
    fn diagonal_limit_is_quadratic_ladder() {
        // eps = 0, hz = 0: energies kappa s^2, doubly degenerate for s != 0.
        let c = QubitCoefficients::new(1.0, 0.0, 0.0);
        let spec = diagonalize_qubit(&c, 10).unwrap();
        assert_abs_diff_eq!(spec.energies[0], 0.0, epsilon = 1e-14);
        assert_relative_eq!(spec.energies[1], 1.0, max_relative = 1e-12);
        assert_relative_eq!(spec.energies[2], 1.0, max_relative = 1e-12);
        assert_relative_eq!(spec.energies[3], 4.0, max_relative = 1e-12);
        assert_relative_eq!(spec.energies[4], 4.0, max_relative = 1e-12);
    }

    #[test]
    fn degeneracy_point_has_degenerate_ground_pair() {
        // eps = 0, hz = kappa: E(s=0) = E(s=1) = 0.
        let c = QubitCoefficients::new(1.0, 1.0, 0.0);
        let spec = diagonalize_qubit(&c, 10).unwrap();
        assert_abs_diff_eq!(spec.energies[0], 0.0, epsilon = 1e-13);
        assert_abs_diff_eq!(spec.energies[1], 0.0, epsilon = 1e-13);
        assert!(spec.omega_q.abs() < 1e-13);
    }

    #[test]
    fn two_level_matches_full_diagonalization_at_degeneracy() {
        // eps/kappa = 0.1 at hz = kappa: full omega_q vs two-level within 1%.
        let c = QubitCoefficients::new(1.0, 1.0, 0.1);
        let spec = diagonalize_qubit(&c, 40).unwrap();
        let tl = two_level_reduction(&c);
        assert!(
            (spec.omega_q - tl.omega_q).abs() / tl.omega_q < 0.01,
            "full {} vs two-level {}",
            spec.omega_q,
            tl.omega_q
        );
        assert!(spec.anharmonic);
    }

    #[test]
    fn gauge_shift_preserves_level_spacings() {
        // s -> s + n is equivalent to hz -> hz + 2 n kappa up to a constant:
        // energy differences must agree.
        let c = QubitCoefficients::new(1.0, 0.4, 0.3);
        let shifted = QubitCoefficients::new(1.0, 0.4 + 2.0, 0.3);
        let a = diagonalize_qubit(&c, 40).unwrap();
        let b = diagonalize_qubit(&shifted, 40).unwrap();
        for k in 0..5 {
            let da = a.energies[k + 1] - a.energies[k];
            let db = b.energies[k + 1] - b.energies[k];
            assert_abs_diff_eq!(da, db, epsilon = 1e-10 * c.kappa.max(1.0));
        }
    }

    #[test]
    fn omega_q_monotone_in_eps_near_degeneracy() {
        let mut last = 0.0;
        for i in 1..=20 {
            let eps = 0.02 * i as f64;
            let c = QubitCoefficients::new(1.0, 1.0, eps);
            let spec = diagonalize_qubit(&c, 30).unwrap();
            assert!(spec.omega_q > last, "omega_q not monotone at eps = {eps}");
            last = spec.omega_q;
        }
    }

    #[test]
    fn omega_q_linear_slope_one_in_eps() {
        // For eps -> 0 at the degeneracy point omega_q -> eps with slope 1.
        let c = QubitCoefficients::new(1.0, 1.0, 1e-4);
        let spec = diagonalize_qubit(&c, 20).unwrap();
        assert_relative_eq!(spec.omega_q, 1e-4, max_relative = 1e-5);
    }

    #[test]
    fn truncation_convergence_detects_failure() {
        // Huge eps vs kappa makes s_max = 5 badly unconverged.
        let c = QubitCoefficients::new(1e-6, 0.0, 1.0);
        assert!(matches!(
            diagonalize_qubit(&c, 5),
            Err(SkyrmechError::TruncationNotConverged { .. })
        ));
    }

    #[test]
    fn two_level_examples() {
        let degen = two_level_reduction(&QubitCoefficients::new(1.0, 1.0, 0.5));
        assert_abs_diff_eq!(degen.a0, 0.0);
        assert_relative_eq!(degen.omega_q, 0.5);
        assert_relative_eq!(degen.theta, FRAC_PI_4);

        let no_eps = two_level_reduction(&QubitCoefficients::new(1.0, 0.3, 0.0));
        assert_relative_eq!(no_eps.omega_q, 0.7, max_relative = 1e-14);
        assert_abs_diff_eq!(no_eps.theta, 0.0);

        let equal = two_level_reduction(&QubitCoefficients::new(2.0, 1.0, 1.0));
        assert_relative_eq!(equal.theta, FRAC_PI_8, max_relative = 1e-14);
        assert_relative_eq!(equal.omega_q, 2.0_f64.sqrt(), max_relative = 1e-14);
    }

    #[test]
    fn dressed_frame_examples() {
        let q = TwoLevelQubit {
            a0: 0.0,
            b0: 1.0,
            omega_q: 1.0,
            theta: FRAC_PI_4,
        };
        let undriven = dressed_frame(&q, 0.0, 0.4);
        assert_abs_diff_eq!(undriven.beta, 0.0);
        assert_relative_eq!(undriven.coupling_scale, 1.0);
        assert_relative_eq!(undriven.omega_tilde, 0.6, max_relative = 1e-14);

        let matched = dressed_frame(&q, 0.6, 0.4); // rabi = delta
        assert_relative_eq!(matched.beta, FRAC_PI_8, max_relative = 1e-14);
        assert_relative_eq!(
            matched.coupling_scale,
            FRAC_PI_4.cos(),
            max_relative = 1e-14
        );

        let resonant = dressed_frame(&q, 0.5, 1.0); // delta = 0
        assert_relative_eq!(resonant.beta, FRAC_PI_4, max_relative = 1e-14);
        assert_abs_diff_eq!(resonant.coupling_scale, 0.0, epsilon = 1e-16);
        assert_relative_eq!(resonant.omega_tilde, 0.5, max_relative = 1e-14);
    }
}
