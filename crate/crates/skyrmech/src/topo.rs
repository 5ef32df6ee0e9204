//! Dimerized (SSH) phonon chain analytics: dispersion, Bloch phase,
//! chiral qubit-phonon bound states, vacancy/edge-state mapping, and
//! Markovian chiral qubit-qubit couplings.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use crate::error::{Result, SkyrmechError};
use crate::operators::{self, OperatorMatrix};
use crate::quadrature::periodic_trapezoid;

/// Number of k-points of the bound-state trapezoid quadrature.
pub const BOUND_STATE_K_POINTS: usize = 1 << 12;

/// In-gap guard band: |E_BS| must stay below 0.95 * (half gap).
pub const GAP_GUARD: f64 = 0.95;

/// Sublattice label inside a unit cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sublattice {
    A,
    B,
}

impl Sublattice {
    pub fn letter(&self) -> char {
        match self {
            Sublattice::A => 'A',
            Sublattice::B => 'B',
        }
    }
}

/// Boundary condition of a finite chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Boundary {
    Periodic,
    Open,
}

/// Dimerized phonon chain with hopping G(1 +- delta).
#[derive(Debug, Clone, PartialEq)]
pub struct SSHChain {
    /// Number of unit cells.
    pub n_cells: usize,
    /// Mean hopping rate G, rad/s (or any consistent unit).
    pub hop_g: f64,
    /// Dimerization delta in (-1, 1).
    pub dimerization: f64,
    /// Site energy reference Omega_m; dispersion is quoted relative to it.
    pub omega_m_ref: f64,
    pub boundary: Boundary,
}

impl SSHChain {
    pub fn new(n_cells: usize, hop_g: f64, dimerization: f64) -> Self {
        assert!(hop_g > 0.0, "hopping rate must be positive");
        assert!(dimerization.abs() < 1.0, "|delta| < 1 required");
        Self {
            n_cells,
            hop_g,
            dimerization,
            omega_m_ref: 0.0,
            boundary: Boundary::Periodic,
        }
    }

    /// Intra-cell hopping G1 = G(1 + delta).
    pub fn g1(&self) -> f64 {
        self.hop_g * (1.0 + self.dimerization)
    }

    /// Inter-cell hopping G2 = G(1 - delta).
    pub fn g2(&self) -> f64 {
        self.hop_g * (1.0 - self.dimerization)
    }

    /// Band gap 4 G |delta|.
    pub fn gap(&self) -> f64 {
        4.0 * self.hop_g * self.dimerization.abs()
    }
}

/// Dispersion (Omega_plus, Omega_minus) at wavenumber k, relative to the
/// energy reference: Omega_pm = +-G sqrt(2(1+d^2) + 2(1-d^2) cos k).
pub fn dispersion(chain: &SSHChain, k: f64) -> (f64, f64) {
    let d2 = chain.dimerization * chain.dimerization;
    let w = chain.hop_g * (2.0 * (1.0 + d2) + 2.0 * (1.0 - d2) * k.cos()).max(0.0).sqrt();
    (w, -w)
}

/// f(k) = G1 + G2 e^{-ik}; |f| is the band energy, arg f the Bloch phase.
fn bloch_f(chain: &SSHChain, k: f64) -> C64 {
    C64::new(chain.g1(), 0.0) + C64::new(chain.g2(), 0.0) * C64::new(0.0, -k).exp()
}

/// Principal-value Bloch phase phi(k) = arg[G1 + G2 e^{-ik}].
pub fn bloch_phase(chain: &SSHChain, k: f64) -> f64 {
    bloch_f(chain, k).arg()
}

/// Continuous-branch phase along a k sweep (unwrapped).
pub fn bloch_phase_sweep(chain: &SSHChain, ks: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(ks.len());
    let mut offset = 0.0;
    let mut prev = None::<f64>;
    for &k in ks {
        let raw = bloch_phase(chain, k);
        if let Some(p) = prev {
            let mut d = raw + offset - p;
            while d > std::f64::consts::PI {
                offset -= std::f64::consts::TAU;
                d -= std::f64::consts::TAU;
            }
            while d < -std::f64::consts::PI {
                offset += std::f64::consts::TAU;
                d += std::f64::consts::TAU;
            }
        }
        let v = raw + offset;
        prev = Some(v);
        out.push(v);
    }
    out
}

/// Winding number of phi(k) over k in [-pi, pi].
pub fn winding_number(chain: &SSHChain, samples: usize) -> i32 {
    let ks: Vec<f64> = (0..=samples)
        .map(|i| -std::f64::consts::PI + std::f64::consts::TAU * i as f64 / samples as f64)
        .collect();
    let phases = bloch_phase_sweep(chain, &ks);
    ((phases[phases.len() - 1] - phases[0]) / std::f64::consts::TAU).round() as i32
}

/// One site amplitude of a bound state.
#[derive(Debug, Clone, Copy)]
pub struct SiteAmplitude {
    /// Cell index relative to the attachment cell.
    pub cell: i64,
    pub sublattice: Sublattice,
    pub amplitude: C64,
}

/// Qubit-phonon bound state.
#[derive(Debug, Clone)]
pub struct BoundState {
    /// Bound-state energy relative to the site reference.
    pub energy: f64,
    /// Qubit excited-state amplitude after normalization.
    pub qubit_amplitude: f64,
    /// Attachment point (cell, sublattice); cell is the j = 0 origin.
    pub attach: Sublattice,
    pub site_amplitudes: Vec<SiteAmplitude>,
    /// Signed weight imbalance (sum_{j>0} - sum_{j<0}) / sum_{j != 0} of
    /// site weights, attachment cell excluded.
    pub chirality: f64,
}

impl BoundState {
    /// Total phonon weight on cells j < 0 (or j > 0 for `forbidden` right).
    pub fn side_weight(&self, negative_side: bool) -> f64 {
        self.site_amplitudes
            .iter()
            .filter(|s| if negative_side { s.cell < 0 } else { s.cell > 0 })
            .map(|s| s.amplitude.norm_sqr())
            .sum()
    }

    fn compute_chirality(sites: &[SiteAmplitude]) -> f64 {
        let right: f64 = sites
            .iter()
            .filter(|s| s.cell > 0)
            .map(|s| s.amplitude.norm_sqr())
            .sum();
        let left: f64 = sites
            .iter()
            .filter(|s| s.cell < 0)
            .map(|s| s.amplitude.norm_sqr())
            .sum();
        let total = right + left;
        if total == 0.0 {
            0.0
        } else {
            (right - left) / total
        }
    }
}

fn normalize_bound_state(
    energy: f64,
    attach: Sublattice,
    per_ce: Vec<(i64, Sublattice, C64)>,
) -> BoundState {
    let weight: f64 = per_ce.iter().map(|(_, _, a)| a.norm_sqr()).sum();
    let ce = 1.0 / (1.0 + weight).sqrt();
    let site_amplitudes: Vec<SiteAmplitude> = per_ce
        .into_iter()
        .map(|(cell, sublattice, a)| SiteAmplitude {
            cell,
            sublattice,
            amplitude: a * ce,
        })
        .collect();
    let chirality = BoundState::compute_chirality(&site_amplitudes);
    BoundState {
        energy,
        qubit_amplitude: ce,
        attach,
        site_amplitudes,
        chirality,
    }
}

/// Bound state of a qubit (coupling `coupling_g`) attached to sublattice
/// `attach` at in-gap energy `e_bs`, via k-space quadrature.
///
/// Site amplitudes are returned for cells j in [-j_range, j_range].
pub fn bound_state_quadrature(
    chain: &SSHChain,
    coupling_g: f64,
    e_bs: f64,
    attach: Sublattice,
    j_range: usize,
) -> Result<BoundState> {
    let gap_half = 2.0 * chain.hop_g * chain.dimerization.abs();
    if e_bs.abs() >= GAP_GUARD * gap_half {
        return Err(SkyrmechError::EnergyInBand { e_bs, gap_half });
    }
    let mut per_ce = Vec::with_capacity(2 * (2 * j_range + 1));
    for j in -(j_range as i64)..=(j_range as i64) {
        // Same-sublattice amplitude: G C_e E/2pi * int e^{ikj}/(E^2 - W^2).
        let same = periodic_trapezoid(
            |k| {
                let w2 = bloch_f(chain, k).norm_sqr();
                (C64::new(0.0, k * j as f64).exp() / (e_bs * e_bs - w2)).re
            },
            BOUND_STATE_K_POINTS,
        ) * coupling_g
            * e_bs
            / std::f64::consts::TAU;
        // Opposite-sublattice amplitude: the W e^{-i phi} kernel is
        // conj(f) for attach A and f for attach B.
        let other = periodic_trapezoid(
            |k| {
                let f = bloch_f(chain, k);
                let kernel = match attach {
                    Sublattice::A => f.conj(),
                    Sublattice::B => f,
                };
                (kernel * C64::new(0.0, k * j as f64).exp() / (e_bs * e_bs - f.norm_sqr())).re
            },
            BOUND_STATE_K_POINTS,
        ) * coupling_g
            / std::f64::consts::TAU;
        match attach {
            Sublattice::A => {
                per_ce.push((j, Sublattice::A, C64::new(same, 0.0)));
                per_ce.push((j, Sublattice::B, C64::new(other, 0.0)));
            }
            Sublattice::B => {
                per_ce.push((j, Sublattice::A, C64::new(other, 0.0)));
                per_ce.push((j, Sublattice::B, C64::new(same, 0.0)));
            }
        }
    }
    Ok(normalize_bound_state(e_bs, attach, per_ce))
}

/// Zero-energy bound state in closed form:
/// C_B(j) = G C_e (-1)^j / (-G(1+delta)) ((1-delta)/(1+delta))^j for j >= 0
/// when attached to A (mirrored to j <= 0 on sublattice A for attach B).
pub fn bound_state_closed_form(
    chain: &SSHChain,
    coupling_g: f64,
    attach: Sublattice,
    j_range: usize,
) -> BoundState {
    let delta = chain.dimerization;
    let ratio = (1.0 - delta) / (1.0 + delta);
    let pref = coupling_g / (-chain.hop_g * (1.0 + delta));
    let mut per_ce = Vec::with_capacity(2 * (2 * j_range + 1));
    for j in -(j_range as i64)..=(j_range as i64) {
        let value = |jj: i64| -> C64 {
            let sign = if jj % 2 == 0 { 1.0 } else { -1.0 };
            C64::new(pref * sign * ratio.powi(jj as i32), 0.0)
        };
        let (a_amp, b_amp) = match attach {
            Sublattice::A => (
                C64::new(0.0, 0.0),
                if j >= 0 { value(j) } else { C64::new(0.0, 0.0) },
            ),
            Sublattice::B => (
                if j <= 0 { value(-j) } else { C64::new(0.0, 0.0) },
                C64::new(0.0, 0.0),
            ),
        };
        per_ce.push((j, Sublattice::A, a_amp));
        per_ce.push((j, Sublattice::B, b_amp));
    }
    normalize_bound_state(0.0, attach, per_ce)
}

/// Eigenmode of a finite open chain with one site removed.
#[derive(Debug, Clone)]
pub struct VacancyMode {
    /// Eigenvalue closest to zero.
    pub energy: f64,
    /// Amplitudes over the surviving (2N - 1) sites, chain order, unit norm.
    pub amplitudes: Vec<f64>,
    /// (cell, sublattice) labels matching `amplitudes` (1-based cells).
    pub labels: Vec<(usize, Sublattice)>,
    /// Participation ratio 1 / sum |psi_i|^4.
    pub participation_ratio: f64,
}

/// Hopping matrix of the bare open chain (2N sites, no vacancy).
fn open_chain_sites(chain: &SSHChain) -> (Vec<(usize, Sublattice)>, Vec<(usize, usize, f64)>) {
    let n = chain.n_cells;
    let mut labels = Vec::with_capacity(2 * n);
    for cell in 1..=n {
        labels.push((cell, Sublattice::A));
        labels.push((cell, Sublattice::B));
    }
    let mut bonds = Vec::new();
    for cell in 0..n {
        let a = 2 * cell;
        let b = 2 * cell + 1;
        bonds.push((a, b, chain.g1()));
        if cell + 1 < n {
            bonds.push((b, 2 * (cell + 1), chain.g2()));
        }
    }
    (labels, bonds)
}

/// Diagonalize the open chain with `vacancy` = (cell, sublattice) removed
/// and return the smallest-|energy| eigenmode.
pub fn vacancy_edge_state(chain: &SSHChain, vacancy: (usize, Sublattice)) -> VacancyMode {
    let (labels, bonds) = open_chain_sites(chain);
    let vac_idx = labels
        .iter()
        .position(|&l| l == vacancy)
        .expect("vacancy site must exist in the chain");
    let keep: Vec<usize> = (0..labels.len()).filter(|&i| i != vac_idx).collect();
    let remap: std::collections::HashMap<usize, usize> =
        keep.iter().enumerate().map(|(new, &old)| (old, new)).collect();
    let dim = keep.len();
    let mut h = DMatrix::<f64>::zeros(dim, dim);
    for (i, j, g) in bonds {
        if let (Some(&a), Some(&b)) = (remap.get(&i), remap.get(&j)) {
            h[(a, b)] = g;
            h[(b, a)] = g;
        }
    }
    let eig = h.symmetric_eigen();
    let mut best = 0;
    for i in 1..dim {
        if eig.eigenvalues[i].abs() < eig.eigenvalues[best].abs() {
            best = i;
        }
    }
    let col = eig.eigenvectors.column(best);
    let amplitudes: Vec<f64> = col.iter().copied().collect();
    let pr = 1.0 / amplitudes.iter().map(|a| a.powi(4)).sum::<f64>();
    VacancyMode {
        energy: eig.eigenvalues[best],
        amplitudes,
        labels: keep.into_iter().map(|i| labels[i]).collect(),
        participation_ratio: pr,
    }
}

/// A qubit placement on the chain: (cell index, sublattice).
pub type Placement = (i64, Sublattice);

/// Chiral effective qubit-qubit coupling G_{i,j} mediated by the zero-energy
/// bound state. AA and BB pairs vanish; AB pairs are directional.
///
/// For delta > 0 the printed formula applies (A strictly left of, or in the
/// same cell as, B); for delta < 0 the mirror formula (relabeled cells,
/// reflection symmetry) applies.
pub fn effective_coupling(
    chain: &SSHChain,
    coupling_g: f64,
    place_i: Placement,
    place_j: Placement,
) -> f64 {
    let (cell_a, cell_b) = match (place_i.1, place_j.1) {
        (Sublattice::A, Sublattice::B) => (place_i.0, place_j.0),
        (Sublattice::B, Sublattice::A) => (place_j.0, place_i.0),
        _ => return 0.0,
    };
    let delta = chain.dimerization;
    let (dp, x) = if delta >= 0.0 {
        (delta, cell_b - cell_a)
    } else {
        // Mirror: relabel A'_m = B_m, B'_m = A_{m+1}, delta' = -delta.
        (-delta, cell_a - 1 - cell_b)
    };
    if x < 0 {
        return 0.0;
    }
    let sign = if x % 2 == 0 { 1.0 } else { -1.0 };
    let ratio = (1.0 - dp) / (1.0 + dp);
    coupling_g * coupling_g * sign * ratio.powi(x as i32) / (chain.hop_g * (1.0 + dp))
}

/// Pairwise effective couplings for a set of placements.
#[derive(Debug, Clone)]
pub struct EffectiveCouplingMatrix {
    pub placements: Vec<Placement>,
    /// entries[(i, j)] = G_{i,j}; symmetric (the Hamiltonian carries +H.c.).
    pub entries: DMatrix<f64>,
}

pub fn effective_coupling_matrix(
    chain: &SSHChain,
    coupling_g: f64,
    placements: &[Placement],
) -> EffectiveCouplingMatrix {
    let n = placements.len();
    let mut entries = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            if i != j {
                entries[(i, j)] = effective_coupling(chain, coupling_g, placements[i], placements[j]);
            }
        }
    }
    EffectiveCouplingMatrix {
        placements: placements.to_vec(),
        entries,
    }
}

/// Exchange Hamiltonian H = -sum_{i<j} G_{i,j} (s+_i s-_j + H.c.) on the
/// 2^n qubit space.
pub fn effective_spin_hamiltonian(couplings: &EffectiveCouplingMatrix) -> OperatorMatrix {
    let n = couplings.placements.len();
    let dims: Vec<usize> = vec![2; n];
    let dim = 1usize << n;
    let mut h = DMatrix::<C64>::zeros(dim, dim);
    let sp = operators::sigma_plus();
    let sm = operators::sigma_minus();
    for i in 0..n {
        for j in (i + 1)..n {
            let g = couplings.entries[(i, j)].max(couplings.entries[(j, i)]).abs();
            let signed = if couplings.entries[(i, j)] != 0.0 {
                couplings.entries[(i, j)]
            } else {
                couplings.entries[(j, i)]
            };
            if g == 0.0 && signed == 0.0 {
                continue;
            }
            let term = operators::embed(&sp, i, &dims) * operators::embed(&sm, j, &dims);
            let hc = operators::embed(&sm, i, &dims) * operators::embed(&sp, j, &dims);
            h -= (term + hc) * C64::new(signed, 0.0);
        }
    }
    OperatorMatrix::new(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn chain(delta: f64) -> SSHChain {
        SSHChain::new(40, 1.0, delta)
    }

    #[test]
    fn dispersion_examples() {
        for &d in &[0.0, 0.25, -0.6, 0.9] {
            let c = chain(if d == 0.0 { 1e-12 } else { d });
            let (wp, _) = dispersion(&c, 0.0);
            assert_relative_eq!(wp, 2.0, max_relative = 1e-12);
            let (wpi, _) = dispersion(&c, std::f64::consts::PI);
            assert_relative_eq!(wpi, 2.0 * c.dimerization.abs(), epsilon = 1e-6);
        }
    }

    #[test]
    fn dispersion_symmetry_and_gap() {
        let c = chain(0.25);
        let mut min_wp = f64::INFINITY;
        for i in 0..10_000 {
            let k = -std::f64::consts::PI + std::f64::consts::TAU * i as f64 / 10_000.0;
            let (wp, wm) = dispersion(&c, k);
            assert_eq!(wp, -wm);
            let (wp_neg, _) = dispersion(&c, -k);
            assert_relative_eq!(wp, wp_neg, max_relative = 1e-13);
            min_wp = min_wp.min(wp);
        }
        assert_relative_eq!(min_wp, 0.5 * c.gap(), max_relative = 1e-9);
    }

    #[test]
    fn bloch_phase_examples() {
        let c = chain(0.25);
        assert_abs_diff_eq!(bloch_phase(&c, 0.0), 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(
            bloch_phase(&c, std::f64::consts::PI),
            0.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn winding_distinguishes_phases() {
        assert_eq!(winding_number(&chain(0.25), 2000), 0);
        assert_eq!(winding_number(&chain(-0.25), 2000).abs(), 1);
        assert_eq!(winding_number(&chain(-0.9), 2000).abs(), 1);
    }

    #[test]
    fn zero_energy_bound_state_is_odd_on_same_sublattice() {
        let c = chain(0.25);
        let bs = bound_state_quadrature(&c, 0.4, 0.0, Sublattice::A, 30).unwrap();
        for s in &bs.site_amplitudes {
            if s.sublattice == Sublattice::A {
                assert!(s.amplitude.norm() < 1e-12, "A amplitudes must vanish");
            }
        }
    }

    #[test]
    fn zero_energy_bound_state_ratio_and_chirality() {
        let c = chain(0.25);
        let bs = bound_state_quadrature(&c, 0.4, 0.0, Sublattice::A, 30).unwrap();
        let b_amp = |j: i64| {
            bs.site_amplitudes
                .iter()
                .find(|s| s.cell == j && s.sublattice == Sublattice::B)
                .unwrap()
                .amplitude
        };
        // consecutive-cell ratio -(1-d)/(1+d) = -0.6
        for j in 0..5 {
            let r = b_amp(j + 1).re / b_amp(j).re;
            assert_relative_eq!(r, -0.6, max_relative = 1e-9);
        }
        // amplitude in the attachment cell: |C/C_e| = 0.4/1.25 = 0.32
        assert_relative_eq!(
            b_amp(0).norm() / bs.qubit_amplitude,
            0.32,
            max_relative = 1e-9
        );
        // all weight to the right
        assert!(bs.side_weight(true) < 1e-8 * bs.side_weight(false));
        assert!(bs.chirality > 0.999999);
    }

    #[test]
    fn bound_state_mirror_for_b_attachment() {
        let c = chain(0.25);
        let bs = bound_state_quadrature(&c, 0.4, 0.0, Sublattice::B, 30).unwrap();
        assert!(bs.side_weight(false) < 1e-8 * bs.side_weight(true));
        assert!(bs.chirality < -0.999999);
    }

    #[test]
    fn closed_form_matches_quadrature() {
        let c = chain(0.25);
        let q = bound_state_quadrature(&c, 0.4, 0.0, Sublattice::A, 30).unwrap();
        let f = bound_state_closed_form(&c, 0.4, Sublattice::A, 30);
        assert_relative_eq!(q.qubit_amplitude, f.qubit_amplitude, max_relative = 1e-8);
        for (a, b) in q.site_amplitudes.iter().zip(f.site_amplitudes.iter()) {
            assert_eq!((a.cell, a.sublattice), (b.cell, b.sublattice));
            assert!(
                (a.amplitude - b.amplitude).norm() < 1e-6,
                "cell {} {:?}: {} vs {}",
                a.cell,
                a.sublattice,
                a.amplitude,
                b.amplitude
            );
        }
    }

    #[test]
    fn closed_form_examples() {
        let c = chain(0.25);
        let f = bound_state_closed_form(&c, 0.4, Sublattice::A, 20);
        let b0 = f
            .site_amplitudes
            .iter()
            .find(|s| s.cell == 0 && s.sublattice == Sublattice::B)
            .unwrap();
        assert_relative_eq!(
            b0.amplitude.norm() / f.qubit_amplitude,
            0.32,
            max_relative = 1e-12
        );

        // delta -> 1 confines the cloud to the attachment cell.
        let tight = SSHChain::new(40, 1.0, 0.999999);
        let ft = bound_state_closed_form(&tight, 0.4, Sublattice::A, 20);
        let w0 = ft
            .site_amplitudes
            .iter()
            .filter(|s| s.cell == 0)
            .map(|s| s.amplitude.norm_sqr())
            .sum::<f64>();
        let w_rest: f64 = ft
            .site_amplitudes
            .iter()
            .filter(|s| s.cell != 0)
            .map(|s| s.amplitude.norm_sqr())
            .sum();
        assert!(w_rest < 1e-10 * w0);
    }

    #[test]
    fn in_band_energy_is_rejected() {
        let c = chain(0.25); // gap half-width 0.5, guard band at 0.475
        assert!(matches!(
            bound_state_quadrature(&c, 0.4, 1.1, Sublattice::A, 10),
            Err(SkyrmechError::EnergyInBand { .. })
        ));
        assert!(matches!(
            bound_state_quadrature(&c, 0.4, 0.48, Sublattice::A, 10),
            Err(SkyrmechError::EnergyInBand { .. })
        ));
        assert!(bound_state_quadrature(&c, 0.4, -0.40, Sublattice::A, 40).is_ok());
    }

    #[test]
    fn vacancy_mode_matches_closed_form() {
        let c = chain(0.25);
        let vm = vacancy_edge_state(&c, (20, Sublattice::A));
        assert!(vm.energy.abs() < 1e-12);
        // Map: bound-state B_j (attach cell = 20) <-> vacancy mode site B_{20+j}.
        let bs = bound_state_closed_form(&c, 0.4, Sublattice::A, 19);
        // Normalize the bound state's phonon part alone.
        let phonon_norm: f64 = bs
            .site_amplitudes
            .iter()
            .map(|s| s.amplitude.norm_sqr())
            .sum::<f64>()
            .sqrt();
        // Align global sign on the attachment-cell amplitude.
        let b_at = |j: i64| {
            bs.site_amplitudes
                .iter()
                .find(|s| s.cell == j && s.sublattice == Sublattice::B)
                .map(|s| s.amplitude.re / phonon_norm)
                .unwrap_or(0.0)
        };
        let vm_at = |cell: usize, sub: Sublattice| {
            vm.labels
                .iter()
                .position(|&l| l == (cell, sub))
                .map(|i| vm.amplitudes[i])
                .unwrap_or(0.0)
        };
        let sign = if vm_at(20, Sublattice::B) * b_at(0) < 0.0 {
            -1.0
        } else {
            1.0
        };
        for j in 0..19i64 {
            let expected = b_at(j);
            let got = sign * vm_at((20 + j) as usize, Sublattice::B);
            assert!(
                (expected - got).abs() < 1e-3,
                "site B_{}: closed form {expected}, vacancy {got}",
                20 + j
            );
        }
        // decay ratio 0.6 per cell on the B sublattice
        let r = vm_at(22, Sublattice::B) / vm_at(21, Sublattice::B);
        assert_relative_eq!(r, -0.6, max_relative = 1e-6);
        // nothing to the left of the vacancy
        let left: f64 = vm
            .labels
            .iter()
            .zip(vm.amplitudes.iter())
            .filter(|((cell, _), _)| *cell < 20)
            .map(|(_, a)| a * a)
            .sum();
        assert!(left < 1e-12);
    }

    #[test]
    fn vacancy_on_b_localizes_left() {
        let c = chain(0.25);
        let vm = vacancy_edge_state(&c, (20, Sublattice::B));
        let left: f64 = vm
            .labels
            .iter()
            .zip(vm.amplitudes.iter())
            .filter(|((cell, _), _)| *cell <= 20)
            .map(|(_, a)| a * a)
            .sum();
        assert!(left > 0.999);
    }

    #[test]
    fn trivial_chain_mode_is_delocalized() {
        let mut c = chain(0.0);
        c.dimerization = 0.0;
        let vm = vacancy_edge_state(&c, (20, Sublattice::A));
        assert!(
            vm.participation_ratio > c.n_cells as f64 / 4.0,
            "participation ratio {} too small",
            vm.participation_ratio
        );
    }

    #[test]
    fn effective_coupling_examples() {
        let c = chain(0.25);
        // x = 0: G^2/(G(1+delta)), sign +
        let g0 = effective_coupling(&c, 1.0, (3, Sublattice::A), (3, Sublattice::B));
        assert_relative_eq!(g0, 1.0 / 1.25, max_relative = 1e-14);
        // x = 1: -0.48
        let g1 = effective_coupling(&c, 1.0, (3, Sublattice::A), (4, Sublattice::B));
        assert_relative_eq!(g1, -0.48, max_relative = 1e-14);
        // backwards pair vanishes
        assert_eq!(
            effective_coupling(&c, 1.0, (3, Sublattice::A), (2, Sublattice::B)),
            0.0
        );
        // AA/BB pairs vanish
        assert_eq!(
            effective_coupling(&c, 1.0, (3, Sublattice::A), (5, Sublattice::A)),
            0.0
        );
        assert_eq!(
            effective_coupling(&c, 1.0, (3, Sublattice::B), (5, Sublattice::B)),
            0.0
        );
        // argument order does not matter (the Hamiltonian carries +H.c.)
        assert_relative_eq!(
            effective_coupling(&c, 1.0, (4, Sublattice::B), (3, Sublattice::A)),
            g1,
            max_relative = 1e-14
        );
    }

    #[test]
    fn effective_coupling_mirror_under_delta_flip() {
        // delta < 0: nonzero pairs are (B_i, A_k) with k >= i + 1, and the
        // magnitudes mirror the delta > 0 values with relabeled cells.
        let pos = chain(0.25);
        let neg = chain(-0.25);
        let forward = effective_coupling(&pos, 1.0, (3, Sublattice::A), (4, Sublattice::B));
        let mirrored = effective_coupling(&neg, 1.0, (3, Sublattice::B), (5, Sublattice::A));
        assert_relative_eq!(forward, mirrored, max_relative = 1e-14);
        // the forward AB pair is dead for delta < 0
        assert_eq!(
            effective_coupling(&neg, 1.0, (3, Sublattice::A), (4, Sublattice::B)),
            0.0
        );
        // B_i -> A_{i+1} carries x' = 0
        let x0 = effective_coupling(&neg, 1.0, (3, Sublattice::B), (4, Sublattice::A));
        assert_relative_eq!(x0, 1.0 / 1.25, max_relative = 1e-14);
    }

    #[test]
    fn fig8_placements_couple_only_the_chiral_pair() {
        let c = chain(0.25);
        let placements = [
            (2, Sublattice::B),
            (3, Sublattice::A),
            (4, Sublattice::B),
        ];
        let m = effective_coupling_matrix(&c, 0.1, &placements);
        assert_eq!(m.entries[(0, 1)], 0.0, "Sky1-Sky2 dead");
        assert_eq!(m.entries[(0, 2)], 0.0, "Sky1-Sky3 dead (BB)");
        assert!(m.entries[(1, 2)] != 0.0, "Sky2-Sky3 alive");

        let neg = chain(-0.9);
        let m2 = effective_coupling_matrix(&neg, 0.1, &placements);
        assert!(m2.entries[(0, 1)] != 0.0, "Sky1-Sky2 alive at delta=-0.9");
        assert_eq!(m2.entries[(1, 2)], 0.0, "Sky2-Sky3 dead at delta=-0.9");
    }

    #[test]
    fn spin_hamiltonian_two_qubit_splitting() {
        let c = chain(0.25);
        let placements = [(3, Sublattice::A), (4, Sublattice::B)];
        let m = effective_coupling_matrix(&c, 1.0, &placements);
        let j = m.entries[(0, 1)];
        let h = effective_spin_hamiltonian(&m);
        let (vals, _) = h.eigen();
        // single-excitation doublet at -J, +J (with the -G_{ij} prefactor)
        let spread = vals[3] - vals[0];
        assert_relative_eq!(spread, 2.0 * j.abs(), max_relative = 1e-12);
    }
}
