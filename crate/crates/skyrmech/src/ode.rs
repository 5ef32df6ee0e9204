//! Adaptive Dormand-Prince 5(4) stepping for complex state vectors.
//!
//! Drives any right-hand side dy/dt = f(t, y) with embedded 4th/5th order
//! error control and a PI-style step controller; steps are clipped so the
//! integrator lands exactly on every requested sample time.

use num_complex::Complex64 as C64;

use crate::error::{Result, SkyrmechError};

// Dormand-Prince coefficients.
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
// 4th-order embedded weights.
const E1: f64 = 5179.0 / 57600.0;
const E3: f64 = 7571.0 / 16695.0;
const E4: f64 = 393.0 / 640.0;
const E5: f64 = -92097.0 / 339200.0;
const E6: f64 = 187.0 / 2100.0;
const E7: f64 = 1.0 / 40.0;
const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;

/// Integration tolerances.
#[derive(Debug, Clone, Copy)]
pub struct OdeTol {
    pub rtol: f64,
    pub atol: f64,
}

impl Default for OdeTol {
    fn default() -> Self {
        Self {
            rtol: 1e-9,
            atol: 1e-9,
        }
    }
}

fn lincomb(out: &mut [C64], y: &[C64], h: f64, terms: &[(f64, &[C64])]) {
    for i in 0..out.len() {
        let mut acc = y[i];
        for (w, k) in terms {
            acc += h * *w * k[i];
        }
        out[i] = acc;
    }
}

/// Integrate from `grid[0]` through every grid point, calling `observe`
/// with (index, t, y) at each one (including the initial point).
pub fn integrate_grid<F, O>(
    mut rhs: F,
    y0: &[C64],
    grid: &[f64],
    tol: OdeTol,
    mut observe: O,
) -> Result<()>
where
    F: FnMut(f64, &[C64], &mut [C64]),
    O: FnMut(usize, f64, &[C64]),
{
    assert!(grid.len() >= 2, "need at least two sample times");
    let n = y0.len();
    let mut y = y0.to_vec();
    let mut t = grid[0];
    observe(0, t, &y);

    let span = grid[grid.len() - 1] - grid[0];
    assert!(span > 0.0, "grid must be increasing");
    let min_step = span * 1e-14;

    let mut k1 = vec![C64::new(0.0, 0.0); n];
    let mut k2 = k1.clone();
    let mut k3 = k1.clone();
    let mut k4 = k1.clone();
    let mut k5 = k1.clone();
    let mut k6 = k1.clone();
    let mut k7 = k1.clone();
    let mut ytmp = k1.clone();
    let mut ynew = k1.clone();

    rhs(t, &y, &mut k1);
    // Initial step heuristic: resolve the fastest visible rate.
    let y_norm = y.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt().max(1e-30);
    let f_norm = k1.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
    let mut h = if f_norm > 0.0 {
        (0.01 * y_norm / f_norm).min(span / 100.0)
    } else {
        span / 100.0
    };

    // k1 is always fresh at the top of a step: seeded above, then kept
    // current by the FSAL swap after every accepted step.
    for (gi, &tg) in grid.iter().enumerate().skip(1) {
        while t < tg {
            let mut step = h.min(tg - t);
            loop {
                if step < min_step {
                    return Err(SkyrmechError::StepSizeUnderflow { t, dt: step });
                }
                lincomb(&mut ytmp, &y, step, &[(A21, &k1)]);
                rhs(t + C2 * step, &ytmp, &mut k2);
                lincomb(&mut ytmp, &y, step, &[(A31, &k1), (A32, &k2)]);
                rhs(t + C3 * step, &ytmp, &mut k3);
                lincomb(&mut ytmp, &y, step, &[(A41, &k1), (A42, &k2), (A43, &k3)]);
                rhs(t + C4 * step, &ytmp, &mut k4);
                lincomb(
                    &mut ytmp,
                    &y,
                    step,
                    &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)],
                );
                rhs(t + C5 * step, &ytmp, &mut k5);
                lincomb(
                    &mut ytmp,
                    &y,
                    step,
                    &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)],
                );
                rhs(t + step, &ytmp, &mut k6);
                lincomb(
                    &mut ynew,
                    &y,
                    step,
                    &[(B1, &k1), (B3, &k3), (B4, &k4), (B5, &k5), (B6, &k6)],
                );
                rhs(t + step, &ynew, &mut k7);

                // Scaled RMS error between the 5th and embedded 4th order.
                let mut err_sq = 0.0;
                for i in 0..n {
                    let y4 = y[i]
                        + step
                            * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i]
                                + E7 * k7[i]);
                    let e = (ynew[i] - y4).norm();
                    let sc = tol.atol + tol.rtol * y[i].norm().max(ynew[i].norm());
                    err_sq += (e / sc) * (e / sc);
                }
                let err = (err_sq / n as f64).sqrt();

                if err <= 1.0 {
                    t += step;
                    std::mem::swap(&mut y, &mut ynew);
                    std::mem::swap(&mut k1, &mut k7); // FSAL
                    let fac = if err == 0.0 {
                        5.0
                    } else {
                        (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
                    };
                    h = (step * fac).min(span);
                    break;
                }
                step *= (0.9 * err.powf(-0.2)).clamp(0.1, 0.9);
            }
        }
        observe(gi, t, &y);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn exponential_decay() {
        let grid: Vec<f64> = (0..=100).map(|i| i as f64 * 0.05).collect();
        let mut last = C64::new(0.0, 0.0);
        integrate_grid(
            |_t, y, dy| {
                dy[0] = -y[0];
            },
            &[C64::new(1.0, 0.0)],
            &grid,
            OdeTol::default(),
            |_, _, y| last = y[0],
        )
        .unwrap();
        assert_relative_eq!(last.re, (-5.0_f64).exp(), max_relative = 1e-8);
    }

    #[test]
    fn phase_rotation_stays_on_circle() {
        // dy/dt = i w y, |y| conserved, y(t) = e^{iwt}.
        let w = 7.0;
        let grid: Vec<f64> = (0..=200).map(|i| i as f64 * 0.01).collect();
        let mut last = C64::new(0.0, 0.0);
        integrate_grid(
            |_t, y, dy| {
                dy[0] = C64::new(0.0, w) * y[0];
            },
            &[C64::new(1.0, 0.0)],
            &grid,
            OdeTol {
                rtol: 1e-10,
                atol: 1e-12,
            },
            |_, _, y| last = y[0],
        )
        .unwrap();
        assert_relative_eq!(last.norm(), 1.0, max_relative = 1e-9);
        assert_relative_eq!(last.re, (2.0 * w).cos(), max_relative = 1e-7);
        assert_relative_eq!(last.im, (2.0 * w).sin(), max_relative = 1e-7);
    }

    #[test]
    fn grid_points_are_hit_exactly() {
        let grid = [0.0, 0.3, 1.0, 2.5];
        let mut seen = Vec::new();
        integrate_grid(
            |_t, y, dy| {
                dy[0] = y[0] * 0.1;
            },
            &[C64::new(1.0, 0.0)],
            &grid,
            OdeTol::default(),
            |i, t, _| seen.push((i, t)),
        )
        .unwrap();
        assert_eq!(seen.len(), 4);
        for (k, (i, t)) in seen.iter().enumerate() {
            assert_eq!(*i, k);
            assert_relative_eq!(*t, grid[k], epsilon = 1e-12);
        }
    }

    #[test]
    fn stiff_blowup_reports_underflow() {
        // A genuinely singular RHS (finite-time blowup) forces dt -> 0.
        let grid = [0.0, 2.0];
        let r = integrate_grid(
            |t, _y, dy| {
                dy[0] = C64::new(1.0 / (1.0 - t), 0.0);
            },
            &[C64::new(1.0, 0.0)],
            &grid,
            OdeTol {
                rtol: 1e-12,
                atol: 1e-12,
            },
            |_, _, _| {},
        );
        assert!(matches!(r, Err(SkyrmechError::StepSizeUnderflow { .. })));
    }
}
