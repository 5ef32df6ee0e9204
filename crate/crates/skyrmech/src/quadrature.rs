//! Adaptive Gauss-Kronrod quadrature (G7/K15) and a periodic trapezoid rule.
//!
//! The adaptive driver bisects the worst interval globally until the summed
//! error estimate satisfies `max(abs_floor, rel_tol * |I|)`. Integrands here
//! are smooth on their slabs, so plain |K15 - G7| is a safe (conservative)
//! per-interval error estimate.

use crate::error::{Result, SkyrmechError};

// 15-point Kronrod abscissae on [-1, 1] (positive half; rule is symmetric).
const XGK: [f64; 8] = [
    0.991_455_371_120_813,
    0.949_107_912_342_759,
    0.864_864_423_359_769,
    0.741_531_185_599_394,
    0.586_087_235_467_691,
    0.405_845_151_377_397,
    0.207_784_955_007_898,
    0.0,
];

// Kronrod weights matching XGK.
const WGK: [f64; 8] = [
    0.022_935_322_010_529,
    0.063_092_092_629_979,
    0.104_790_010_322_250,
    0.140_653_259_715_525,
    0.169_004_726_639_267,
    0.190_350_578_064_785,
    0.204_432_940_075_298,
    0.209_482_141_084_728,
];

// Embedded 7-point Gauss weights (odd Kronrod indices 1, 3, 5, 7).
const WG: [f64; 4] = [
    0.129_484_966_168_870,
    0.279_705_391_489_277,
    0.381_830_050_505_119,
    0.417_959_183_673_469,
];

/// One G7/K15 panel: returns (kronrod, |kronrod - gauss|).
fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for (i, (&x, &wk)) in XGK.iter().zip(WGK.iter()).enumerate().take(7) {
        let fsum = f(c - h * x) + f(c + h * x);
        kronrod += wk * fsum;
        if i % 2 == 1 {
            gauss += WG[i / 2] * fsum;
        }
    }
    (kronrod * h, (kronrod - gauss).abs() * h.abs())
}

#[derive(Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

/// Integrate `f` over `[a, b]` to relative tolerance `rel_tol` with an
/// absolute floor `abs_floor` on the target error.
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    rel_tol: f64,
    abs_floor: f64,
) -> Result<f64> {
    const MAX_PANELS: usize = 4000;
    let (value, error) = gk15(&f, a, b);
    let mut panels = vec![Panel { a, b, value, error }];
    loop {
        let total: f64 = panels.iter().map(|p| p.value).sum();
        let err: f64 = panels.iter().map(|p| p.error).sum();
        let target = abs_floor.max(rel_tol * total.abs());
        if err <= target {
            return Ok(total);
        }
        if panels.len() >= MAX_PANELS {
            return Err(SkyrmechError::NonConvergedQuadrature {
                requested: rel_tol,
                achieved: if total != 0.0 { err / total.abs() } else { err },
                a,
                b,
            });
        }
        // Bisect the worst panel.
        let (idx, _) = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .expect("panel list never empty");
        let p = panels.swap_remove(idx);
        let mid = 0.5 * (p.a + p.b);
        if mid <= p.a || mid >= p.b {
            return Err(SkyrmechError::NonConvergedQuadrature {
                requested: rel_tol,
                achieved: err,
                a,
                b,
            });
        }
        let (v1, e1) = gk15(&f, p.a, mid);
        let (v2, e2) = gk15(&f, mid, p.b);
        panels.push(Panel { a: p.a, b: mid, value: v1, error: e1 });
        panels.push(Panel { a: mid, b: p.b, value: v2, error: e2 });
    }
}

/// Uniform trapezoid rule for a periodic integrand over [-pi, pi).
///
/// Spectrally accurate for analytic periodic integrands; `n` is the number
/// of sample points.
pub fn periodic_trapezoid<F: Fn(f64) -> f64>(f: F, n: usize) -> f64 {
    let h = std::f64::consts::TAU / n as f64;
    let mut sum = 0.0;
    for i in 0..n {
        let k = -std::f64::consts::PI + i as f64 * h;
        sum += f(k);
    }
    sum * h
}
