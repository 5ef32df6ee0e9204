//! Complete elliptic integrals of the first and second kind.
//!
//! Argument is the parameter m = k^2 (the modulus squared), matching the
//! m-convention of Abramowitz & Stegun 17.6 and scipy's `ellipk`/`ellipe`.
//! Both are evaluated with the arithmetic-geometric mean, which converges
//! quadratically to machine precision.

use crate::error::{Result, SkyrmechError};

/// K(m) = int_0^{pi/2} dtheta / sqrt(1 - m sin^2 theta), for 0 <= m < 1.
pub fn ellip_k(m: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&m) {
        return Err(SkyrmechError::ModulusOutOfRange { q2: m });
    }
    let mut a = 1.0_f64;
    let mut b = (1.0 - m).sqrt();
    while (a - b).abs() > f64::EPSILON * a {
        let an = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = an;
    }
    Ok(std::f64::consts::FRAC_PI_2 / a)
}

/// E(m) = int_0^{pi/2} sqrt(1 - m sin^2 theta) dtheta, for 0 <= m <= 1.
pub fn ellip_e(m: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&m) {
        return Err(SkyrmechError::ModulusOutOfRange { q2: m });
    }
    if m == 1.0 {
        return Ok(1.0);
    }
    let mut a = 1.0_f64;
    let mut b = (1.0 - m).sqrt();
    let mut c2_sum = 0.5 * m; // 2^{-1} c_0^2 with c_0 = sqrt(m)
    let mut pow2 = 0.5;
    while (a - b).abs() > f64::EPSILON * a {
        let c = 0.5 * (a - b);
        let an = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = an;
        pow2 *= 2.0;
        c2_sum += pow2 * c * c;
    }
    Ok(std::f64::consts::FRAC_PI_2 / a * (1.0 - c2_sum))
}
