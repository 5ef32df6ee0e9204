//! Magnetic field and gradient of a truncated-cone tip with a
//! non-magnetized cap layer.
//!
//! The tip occupies z' in [-h_tip - s_nm, -s_nm] (magnetized part) below the
//! z = 0 plane of its lower face plus cap; fields are evaluated at z > 0.

use crate::elliptic::{ellip_e, ellip_k};
use crate::error::{Result, SkyrmechError};
use crate::quadrature;

/// Default relative tolerance of the slab quadratures.
pub const FIELD_REL_TOL: f64 = 1e-9;
/// Absolute error floor, in tesla.
pub const FIELD_ABS_FLOOR: f64 = 1e-30;

/// Truncated-cone magnetic tip.
#[derive(Debug, Clone, PartialEq)]
pub struct TipGeometry {
    /// Upper-surface radius (closest to the sample), m.
    pub r_a: f64,
    /// Lower-surface radius, m.
    pub r_b: f64,
    /// Magnetized height, m.
    pub h_tip: f64,
    /// Non-magnetized cap thickness, m.
    pub s_nm: f64,
    /// mu0 * M_s, T.
    pub mu0_ms: f64,
}

impl TipGeometry {
    /// Reference tip: r_a = 40 nm, r_b = 160 nm, h_tip = 180 nm,
    /// s_nm = 10 nm, mu0 M_s = 2.4 T.
    pub fn reference() -> Self {
        Self {
            r_a: 40e-9,
            r_b: 160e-9,
            h_tip: 180e-9,
            s_nm: 10e-9,
            mu0_ms: 2.4,
        }
    }

    pub fn validate(&self) -> bool {
        self.r_a > 0.0
            && self.r_a <= self.r_b
            && self.h_tip > 0.0
            && self.s_nm >= 0.0
            && self.mu0_ms > 0.0
    }

    /// Magnetized slab bounds (lo, hi) on the z' axis.
    pub fn slab(&self) -> (f64, f64) {
        (-self.h_tip - self.s_nm, -self.s_nm)
    }
}

/// A field sample at (rho, z).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldSample {
    pub rho: f64,
    pub z: f64,
    pub bz: f64,
    pub dbz_dz: f64,
}

/// Cone radius R(z') at slab position z'.
pub fn tip_radius_at(geom: &TipGeometry, z_prime: f64) -> Result<f64> {
    let (lo, hi) = geom.slab();
    if !(lo..=hi).contains(&z_prime) {
        return Err(SkyrmechError::OutOfSlab {
            z_prime,
            lo,
            hi,
        });
    }
    Ok((geom.r_a - geom.r_b) / geom.h_tip * (z_prime + geom.s_nm) + geom.r_a)
}

fn radius_unchecked(geom: &TipGeometry, z_prime: f64) -> f64 {
    (geom.r_a - geom.r_b) / geom.h_tip * (z_prime + geom.s_nm) + geom.r_a
}

fn bz_on_axis_slab(geom: &TipGeometry, z: f64, lo: f64, hi: f64, rel_tol: f64) -> Result<f64> {
    let pref = geom.mu0_ms / (2.0 * std::f64::consts::PI);
    quadrature::integrate(
        |zp| {
            let r = radius_unchecked(geom, zp);
            let u = z - zp;
            let d2 = r * r + u * u;
            // f0_{Bz,1} * f0_{Bz,2} = pi R^2 / (R^2 + u^2)^{3/2}
            let f1 = 1.0 / d2.sqrt();
            let f2 = std::f64::consts::FRAC_PI_2 * ((r * r - u * u) / d2 + 1.0);
            pref * f1 * f2
        },
        lo,
        hi,
        rel_tol,
        FIELD_ABS_FLOOR,
    )
}

/// On-axis field B_z(0, z), tesla.
pub fn bz_on_axis(geom: &TipGeometry, z: f64) -> Result<f64> {
    bz_on_axis_with_tol(geom, z, FIELD_REL_TOL)
}

/// On-axis field with caller-chosen quadrature tolerance (used by the
/// finite-difference cross-checks, which need extra digits).
pub fn bz_on_axis_with_tol(geom: &TipGeometry, z: f64, rel_tol: f64) -> Result<f64> {
    assert!(z > 0.0, "field evaluated outside the tip body only");
    let (lo, hi) = geom.slab();
    bz_on_axis_slab(geom, z, lo, hi, rel_tol)
}

/// On-axis gradient dB_z/dz at (0, z), tesla per metre.
///
/// The integrand is the closed-form z-derivative of the on-axis kernel,
/// organized as the P/Q/R_z combination:
/// P = 2(R^2 - u^2)u/(R^2+u^2)^2 + 2u/(R^2+u^2), Q = [1 + (R^2-u^2)/(R^2+u^2)]u.
pub fn gradient_on_axis(geom: &TipGeometry, z: f64) -> Result<f64> {
    assert!(z > 0.0, "field evaluated outside the tip body only");
    let (lo, hi) = geom.slab();
    let pref = geom.mu0_ms / 4.0;
    quadrature::integrate(
        |zp| {
            let r = radius_unchecked(geom, zp);
            let u = z - zp;
            let r2 = r * r;
            let d2 = r2 + u * u;
            // P = 2(R^2-u^2)u/d^2 + 2u/d and Q = [1 + (R^2-u^2)/d] u
            // collapse to 4R^2 u/d^2 and 2R^2 u/d; the collapsed forms
            // avoid catastrophic far-field cancellation.
            let p = 4.0 * r2 * u / (d2 * d2);
            let q = 2.0 * r2 * u / d2;
            let rz_12 = d2.sqrt();
            let rz_32 = d2 * rz_12;
            pref * (-p / rz_12 - q / rz_32)
        },
        lo,
        hi,
        FIELD_REL_TOL,
        FIELD_ABS_FLOOR,
    )
}

/// Off-axis field B_z(rho, z) via complete elliptic integrals, tesla.
///
/// Loop-field modulus q^2 = 4 R rho / [(R + rho)^2 + (z - z')^2]; the
/// elliptic kernels are applied by shape: the 1/sqrt kernel (first kind)
/// multiplies nothing, the sqrt kernel (second kind) carries the
/// (R^2 - rho^2 - u^2)/((R - rho)^2 + u^2) prefactor.
pub fn bz_off_axis(geom: &TipGeometry, rho: f64, z: f64) -> Result<f64> {
    assert!(rho >= 0.0);
    assert!(z > 0.0, "field evaluated outside the tip body only");
    let (lo, hi) = geom.slab();
    let pref = geom.mu0_ms / (2.0 * std::f64::consts::PI);
    // Evaluate the elliptic pair inside the quadrature; modulus errors
    // abort the whole integral.
    let cell = std::cell::Cell::new(None::<SkyrmechError>);
    let value = quadrature::integrate(
        |zp| {
            let r = radius_unchecked(geom, zp);
            let u = z - zp;
            let denom_plus = (r + rho) * (r + rho) + u * u;
            let q2 = 4.0 * r * rho / denom_plus;
            let (k, e) = match (ellip_k(q2), ellip_e(q2)) {
                (Ok(k), Ok(e)) => (k, e),
                (Err(err), _) | (_, Err(err)) => {
                    cell.set(Some(err));
                    return 0.0;
                }
            };
            let denom_minus = (r - rho) * (r - rho) + u * u;
            let f1 = 1.0 / denom_plus.sqrt();
            let f2 = (r * r - rho * rho - u * u) / denom_minus * e + k;
            pref * f1 * f2
        },
        lo,
        hi,
        FIELD_REL_TOL,
        FIELD_ABS_FLOOR,
    )?;
    if let Some(err) = cell.take() {
        return Err(err);
    }
    Ok(value)
}

/// Field and gradient sample at (rho, z); the gradient is the on-axis one
/// (in-plane tip-field components are neglected throughout).
pub fn field_sample(geom: &TipGeometry, rho: f64, z: f64) -> Result<FieldSample> {
    let bz = if rho == 0.0 {
        bz_on_axis(geom, z)?
    } else {
        bz_off_axis(geom, rho, z)?
    };
    Ok(FieldSample {
        rho,
        z,
        bz,
        dbz_dz: gradient_on_axis(geom, z)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    /// Disc-stack oracle: the cone as a stack of uniformly magnetized
    /// cylinders, each with the exact on-axis closed form
    /// B = mu0 Ms / 2 [ u_lo/sqrt(R^2+u_lo^2) - u_hi/sqrt(R^2+u_hi^2) ].
    fn disc_stack_bz(geom: &TipGeometry, z: f64, n: usize) -> f64 {
        let (lo, hi) = geom.slab();
        let h = (hi - lo) / n as f64;
        let mut total = 0.0;
        for i in 0..n {
            let a = lo + i as f64 * h;
            let b = a + h;
            let r = radius_unchecked(geom, 0.5 * (a + b));
            let ua = z - a;
            let ub = z - b;
            total += 0.5
                * geom.mu0_ms
                * (ua / (r * r + ua * ua).sqrt() - ub / (r * r + ub * ub).sqrt());
        }
        total
    }

    /// Biot-Savart oracle: azimuthal surface current M_s dz' on the cone
    /// lateral surface, phi integral by periodic trapezoid.
    fn biot_savart_bz(geom: &TipGeometry, rho: f64, z: f64) -> f64 {
        let (lo, hi) = geom.slab();
        let pref = geom.mu0_ms / (4.0 * std::f64::consts::PI);
        quadrature::integrate(
            |zp| {
                let r = radius_unchecked(geom, zp);
                let u = z - zp;
                crate::quadrature::periodic_trapezoid(
                    |phi| {
                        let c = phi.cos();
                        let d2 = r * r + rho * rho + u * u - 2.0 * r * rho * c;
                        r * (r - rho * c) / (d2 * d2.sqrt())
                    },
                    2048,
                )
            },
            lo,
            hi,
            1e-10,
            1e-30,
        )
        .unwrap()
            * pref
    }

    #[test]
    fn radius_endpoints_and_midpoint() {
        let g = TipGeometry::reference();
        let (lo, hi) = g.slab();
        assert_relative_eq!(tip_radius_at(&g, hi).unwrap(), g.r_a, max_relative = 1e-14);
        assert_relative_eq!(tip_radius_at(&g, lo).unwrap(), g.r_b, max_relative = 1e-14);
        assert_relative_eq!(
            tip_radius_at(&g, 0.5 * (lo + hi)).unwrap(),
            0.5 * (g.r_a + g.r_b),
            max_relative = 1e-14
        );
        assert!(matches!(
            tip_radius_at(&g, 1e-9),
            Err(SkyrmechError::OutOfSlab { .. })
        ));
    }

    #[test]
    fn on_axis_matches_disc_stack_oracle() {
        let g = TipGeometry::reference();
        let z = 20e-9;
        let oracle = disc_stack_bz(&g, z, 200_000);
        let bz = bz_on_axis(&g, z).unwrap();
        assert_relative_eq!(bz, oracle, max_relative = 1e-6);
    }

    #[test]
    fn linearity_in_magnetization() {
        let g = TipGeometry::reference();
        let mut g2 = g.clone();
        g2.mu0_ms *= 2.0;
        let z = 35e-9;
        assert_relative_eq!(
            bz_on_axis(&g2, z).unwrap(),
            2.0 * bz_on_axis(&g, z).unwrap(),
            max_relative = 1e-14
        );
    }

    #[test]
    fn far_field_dipole_scaling() {
        let g = TipGeometry::reference();
        let z = 100e-6;
        let ratio = bz_on_axis(&g, z).unwrap() / bz_on_axis(&g, 2.0 * z).unwrap();
        assert!((ratio - 8.0).abs() < 0.08, "dipole ratio {ratio}");
        assert!(bz_on_axis(&g, 1.0).unwrap() < 1e-18);
    }

    #[test]
    fn superposition_of_sub_slabs() {
        let g = TipGeometry::reference();
        let (lo, hi) = g.slab();
        let mid = 0.5 * (lo + hi);
        let z = 20e-9;
        let full = bz_on_axis(&g, z).unwrap();
        let parts = bz_on_axis_slab(&g, z, lo, mid, FIELD_REL_TOL).unwrap()
            + bz_on_axis_slab(&g, z, mid, hi, FIELD_REL_TOL).unwrap();
        assert_relative_eq!(full, parts, max_relative = 1e-8);
    }

    #[test]
    fn reference_gradient_magnitude() {
        // |G| at z = 20 nm close to 1.74e7 T/m (tolerance +-10%).
        let g = TipGeometry::reference();
        let grad = gradient_on_axis(&g, 20e-9).unwrap();
        assert!(
            (grad.abs() / 1.74e7 - 1.0).abs() < 0.10,
            "gradient {grad:.4e}"
        );
        assert!(grad < 0.0, "field decreases away from the tip");
    }

    #[test]
    fn gradient_matches_finite_difference() {
        let g = TipGeometry::reference();
        for &z in &[20e-9, 50e-9, 120e-9] {
            let delta = 1e-4 * z;
            let fd = (bz_on_axis_with_tol(&g, z + delta, 1e-13).unwrap()
                - bz_on_axis_with_tol(&g, z - delta, 1e-13).unwrap())
                / (2.0 * delta);
            let an = gradient_on_axis(&g, z).unwrap();
            assert_relative_eq!(an, fd, max_relative = 1e-6);
        }
    }

    #[test]
    fn gradient_vanishes_far_away() {
        let g = TipGeometry::reference();
        assert!(gradient_on_axis(&g, 0.1).unwrap().abs() < 1e-12);
    }

    #[test]
    fn off_axis_reduces_to_on_axis() {
        let g = TipGeometry::reference();
        for &z in &[20e-9, 60e-9] {
            assert_relative_eq!(
                bz_off_axis(&g, 0.0, z).unwrap(),
                bz_on_axis(&g, z).unwrap(),
                max_relative = 1e-9
            );
        }
    }

    #[test]
    fn off_axis_matches_biot_savart_oracle() {
        let g = TipGeometry::reference();
        let (rho, z) = (g.r_a, 20e-9);
        let oracle = biot_savart_bz(&g, rho, z);
        let bz = bz_off_axis(&g, rho, z).unwrap();
        assert_relative_eq!(bz, oracle, max_relative = 1e-4);
    }

    #[test]
    fn off_axis_decays_radially() {
        let g = TipGeometry::reference();
        let z = 20e-9;
        let near = bz_off_axis(&g, 0.5 * g.r_a, z).unwrap();
        let far = bz_off_axis(&g, 100.0 * g.r_b, z).unwrap();
        assert!(far.abs() < 1e-6 * near.abs());
    }

    #[test]
    fn field_sample_populates_both_entries() {
        let g = TipGeometry::reference();
        let s = field_sample(&g, 0.0, 20e-9).unwrap();
        assert!(s.bz.is_finite() && s.dbz_dz < 0.0);
    }
}
