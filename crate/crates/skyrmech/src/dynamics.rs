//! System Hamiltonians (single-qubit Rabi, two-qubit shared mode, qubit
//! array on a dimerized chain) and open/closed time evolution.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;

use crate::error::{Result, SkyrmechError};
use crate::ode::{integrate_grid, OdeTol};
use crate::operators::{
    annihilation, embed, expect_rho, expect_vec, identity, number, sigma_minus, sigma_plus,
    sigma_x, sigma_z, trace, CsMatrix, OperatorMatrix,
};
use crate::topo::{Placement, SSHChain, SiteAmplitude, Sublattice};

/// Hilbert-space restriction of a model.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Restriction {
    Full,
    SingleExcitation,
}

/// Shape of the model space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpaceSpec {
    pub n_qubits: usize,
    pub mode_dims: Vec<usize>,
    pub restriction: Restriction,
}

impl SpaceSpec {
    pub fn total_dim(&self) -> usize {
        match self.restriction {
            Restriction::Full => {
                (1usize << self.n_qubits) * self.mode_dims.iter().product::<usize>()
            }
            // shared vacuum + one excitation on any qubit or site
            Restriction::SingleExcitation => 1 + self.n_qubits + self.mode_dims.len(),
        }
    }
}

/// Lindblad problem: Hamiltonian plus (collapse operator, rate) pairs.
#[derive(Debug, Clone)]
pub struct LindbladSpec {
    pub hamiltonian: OperatorMatrix,
    pub collapse_ops: Vec<(OperatorMatrix, f64)>,
}

impl LindbladSpec {
    pub fn new(hamiltonian: OperatorMatrix, collapse_ops: Vec<(OperatorMatrix, f64)>) -> Self {
        assert!(
            collapse_ops.iter().all(|(_, rate)| *rate >= 0.0),
            "collapse rates must be non-negative"
        );
        Self {
            hamiltonian,
            collapse_ops,
        }
    }
}

/// Time grid plus named observable traces.
#[derive(Debug, Clone)]
pub struct EvolutionResult {
    pub times: Vec<f64>,
    pub traces: Vec<(String, Vec<f64>)>,
    pub trace_of_rho: Vec<f64>,
    /// Smallest density-matrix eigenvalue seen at the checked sample points
    /// (None when positivity checking was off or the run was pure-state).
    pub min_eigenvalue: Option<f64>,
}

impl EvolutionResult {
    pub fn trace_series(&self, name: &str) -> Option<&[f64]> {
        self.traces
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| v.as_slice())
    }
}

/// Default local tolerance of density-matrix stepping.
pub const DENSITY_TOL: OdeTol = OdeTol {
    rtol: 1e-9,
    atol: 1e-9,
};

/// Default local tolerance of pure-state stepping; tight enough that the
/// norm stays within 1e-10 over long grids.
pub const PURE_STATE_TOL: OdeTol = OdeTol {
    rtol: 1e-11,
    atol: 1e-13,
};

/// Evolution options.
#[derive(Debug, Clone, Copy, Default)]
pub struct EvolveOptions {
    /// Override the per-operation default local tolerance.
    pub tol: Option<OdeTol>,
    /// Check density-matrix positivity every k-th grid point.
    pub positivity_check_every: Option<usize>,
}

/// Rabi Hamiltonian on qubit x Fock(n_max):
/// H = delta_q/2 sz + delta_m_eff n + lambda_eff (b + b^dag) sx,
/// or the excitation-conserving lambda (b s+ + b^dag s-) form when `rwa`.
pub fn build_rabi_hamiltonian(
    delta_q: f64,
    delta_m_eff: f64,
    lambda_eff: f64,
    n_max: usize,
    rwa: bool,
) -> OperatorMatrix {
    assert!(n_max >= 2);
    let dims = [2usize, n_max];
    let b = annihilation(n_max);
    let bd = b.adjoint();
    let mut h = embed(&sigma_z(), 0, &dims) * C64::new(delta_q / 2.0, 0.0)
        + embed(&number(n_max), 1, &dims) * C64::new(delta_m_eff, 0.0);
    let lam = C64::new(lambda_eff, 0.0);
    if rwa {
        h += (sigma_plus().kronecker(&b) + sigma_minus().kronecker(&bd)) * lam;
    } else {
        h += sigma_x().kronecker(&(&b + &bd)) * lam;
    }
    OperatorMatrix::new(h)
}

/// Two qubits sharing one mode with opposite-sign couplings:
/// H = delta_q/2 (sz1 + sz2) + delta_m_eff n + lambda_eff (b+b^dag)(sx1 - sx2).
pub fn build_two_qubit_hamiltonian(
    delta_q: f64,
    delta_m_eff: f64,
    lambda_eff: f64,
    n_max: usize,
) -> OperatorMatrix {
    assert!(n_max >= 2);
    let dims = [2usize, 2, n_max];
    let b = annihilation(n_max);
    let x = &b + &b.adjoint();
    let sx_diff = embed(&sigma_x(), 0, &dims) - embed(&sigma_x(), 1, &dims);
    let h = (embed(&sigma_z(), 0, &dims) + embed(&sigma_z(), 1, &dims))
        * C64::new(delta_q / 2.0, 0.0)
        + embed(&number(n_max), 2, &dims) * C64::new(delta_m_eff, 0.0)
        + embed(&x, 2, &dims) * sx_diff * C64::new(lambda_eff, 0.0);
    OperatorMatrix::new(h)
}

/// Schrieffer-Wolff result for the shared-mode two-qubit model.
#[derive(Debug, Clone)]
pub struct SwEffective {
    /// Lambda_SS = lambda_eff^2 / delta_m_eff.
    pub lambda_ss: f64,
    /// 4x4 effective operator Lambda_SS (sx1 - sx2)^2.
    pub hamiltonian: OperatorMatrix,
}

/// Adiabatic elimination of the far-detuned mode. The warn threshold of
/// the perturbative regime is delta_m_eff / lambda_eff >= 5.
pub fn sw_effective_two_qubit(lambda_eff: f64, delta_m_eff: f64) -> SwEffective {
    let lambda_ss = lambda_eff * lambda_eff / delta_m_eff;
    let dims = [2usize, 2];
    let diff = embed(&sigma_x(), 0, &dims) - embed(&sigma_x(), 1, &dims);
    let h = &diff * &diff * C64::new(lambda_ss, 0.0);
    SwEffective {
        lambda_ss,
        hamiltonian: OperatorMatrix::new(h),
    }
}

/// Whether the SW elimination is inside its validity window.
pub fn sw_regime_ok(lambda_eff: f64, delta_m_eff: f64) -> bool {
    delta_m_eff.abs() >= 5.0 * lambda_eff.abs()
}

/// Qubit array coupled to a dimerized chain, single-excitation sector.
#[derive(Debug, Clone)]
pub struct ArraySystem {
    pub chain: SSHChain,
    pub placements: Vec<Placement>,
    /// Sector Hamiltonian: index 0 = shared vacuum, then one excited state
    /// per qubit, then one per chain site (cell-major, A before B).
    pub hamiltonian: OperatorMatrix,
    pub labels: Vec<String>,
    pub space: SpaceSpec,
}

impl ArraySystem {
    pub fn qubit_index(&self, qubit: usize) -> usize {
        1 + qubit
    }

    pub fn site_index(&self, cell: usize, sub: Sublattice) -> usize {
        debug_assert!((1..=self.chain.n_cells).contains(&cell));
        1 + self.placements.len()
            + 2 * (cell - 1)
            + match sub {
                Sublattice::A => 0,
                Sublattice::B => 1,
            }
    }
}

/// Build the excitation-conserving array Hamiltonian in the
/// single-excitation sector (energies relative to the shared vacuum).
pub fn build_array_hamiltonian(
    chain: &SSHChain,
    placements: &[Placement],
    coupling_g: f64,
    delta_q: f64,
) -> Result<ArraySystem> {
    let n = chain.n_cells;
    for (i, p) in placements.iter().enumerate() {
        if !(1..=n as i64).contains(&p.0) {
            panic!("placement cell {} outside 1..={n}", p.0);
        }
        if placements[..i].contains(p) {
            return Err(SkyrmechError::PlacementCollision {
                cell: p.0,
                sublattice: p.1.letter(),
            });
        }
    }
    let nq = placements.len();
    let dim = 1 + nq + 2 * n;
    let mut h = DMatrix::<C64>::zeros(dim, dim);
    let site = |cell: usize, sub: Sublattice| -> usize {
        1 + nq + 2 * (cell - 1) + if sub == Sublattice::A { 0 } else { 1 }
    };
    for q in 0..nq {
        h[(1 + q, 1 + q)] = C64::new(delta_q, 0.0);
    }
    for cell in 1..=n {
        for sub in [Sublattice::A, Sublattice::B] {
            let s = site(cell, sub);
            h[(s, s)] = C64::new(chain.omega_m_ref, 0.0);
        }
        let a = site(cell, Sublattice::A);
        let b = site(cell, Sublattice::B);
        h[(a, b)] += C64::new(chain.g1(), 0.0);
        h[(b, a)] += C64::new(chain.g1(), 0.0);
        let next = if cell == n {
            match chain.boundary {
                crate::topo::Boundary::Periodic => Some(1),
                crate::topo::Boundary::Open => None,
            }
        } else {
            Some(cell + 1)
        };
        if let Some(nc) = next {
            let an = site(nc, Sublattice::A);
            h[(b, an)] += C64::new(chain.g2(), 0.0);
            h[(an, b)] += C64::new(chain.g2(), 0.0);
        }
    }
    for (q, p) in placements.iter().enumerate() {
        let s = site(p.0 as usize, p.1);
        h[(1 + q, s)] += C64::new(coupling_g, 0.0);
        h[(s, 1 + q)] += C64::new(coupling_g, 0.0);
    }

    let mut labels = vec!["vac".to_string()];
    for q in 0..nq {
        labels.push(format!("sky{}", q + 1));
    }
    for cell in 1..=n {
        labels.push(format!("A{cell}"));
        labels.push(format!("B{cell}"));
    }
    Ok(ArraySystem {
        chain: chain.clone(),
        placements: placements.to_vec(),
        hamiltonian: OperatorMatrix::new(h),
        labels,
        space: SpaceSpec {
            n_qubits: nq,
            mode_dims: vec![2; 2 * n],
            restriction: Restriction::SingleExcitation,
        },
    })
}

/// Full-space array Hamiltonian (small chains only) together with the
/// total-excitation operator; used to verify excitation conservation.
pub fn build_array_hamiltonian_full(
    chain: &SSHChain,
    placements: &[Placement],
    coupling_g: f64,
    delta_q: f64,
    mode_dim: usize,
) -> Result<(OperatorMatrix, OperatorMatrix)> {
    let n = chain.n_cells;
    let nq = placements.len();
    let mut dims = vec![2usize; nq];
    dims.extend(std::iter::repeat(mode_dim).take(2 * n));
    let dim: usize = dims.iter().product();
    assert!(dim <= 4096, "full-space builder is for small chains");
    let site_slot = |cell: usize, sub: Sublattice| -> usize {
        nq + 2 * (cell - 1) + if sub == Sublattice::A { 0 } else { 1 }
    };
    let b = annihilation(mode_dim);
    let bd = b.adjoint();
    let nm = number(mode_dim);

    let mut h = DMatrix::<C64>::zeros(dim, dim);
    let mut n_exc = DMatrix::<C64>::zeros(dim, dim);
    for q in 0..nq {
        h += embed(&sigma_z(), q, &dims) * C64::new(delta_q / 2.0, 0.0);
        // sigma_+ sigma_- = (1 + sigma_z)/2
        n_exc += (identity(dim) + embed(&sigma_z(), q, &dims)) * C64::new(0.5, 0.0);
    }
    for cell in 1..=n {
        for sub in [Sublattice::A, Sublattice::B] {
            let s = site_slot(cell, sub);
            h += embed(&nm, s, &dims) * C64::new(chain.omega_m_ref, 0.0);
            n_exc += embed(&nm, s, &dims);
        }
        let a = site_slot(cell, Sublattice::A);
        let bsl = site_slot(cell, Sublattice::B);
        let hop1 = embed(&bd, a, &dims) * embed(&b, bsl, &dims);
        h += (&hop1 + hop1.adjoint()) * C64::new(chain.g1(), 0.0);
        let next = if cell == n {
            match chain.boundary {
                crate::topo::Boundary::Periodic => Some(1),
                crate::topo::Boundary::Open => None,
            }
        } else {
            Some(cell + 1)
        };
        if let Some(nc) = next {
            // skip the doubled bond of a periodic 2-cell ring
            if !(chain.boundary == crate::topo::Boundary::Periodic && n == 2 && cell == n) {
                let an = site_slot(nc, Sublattice::A);
                let hop2 = embed(&bd, bsl, &dims) * embed(&b, an, &dims);
                h += (&hop2 + hop2.adjoint()) * C64::new(chain.g2(), 0.0);
            }
        }
    }
    for (q, p) in placements.iter().enumerate() {
        let s = site_slot(p.0 as usize, p.1);
        let jc = embed(&b, s, &dims) * embed(&sigma_plus(), q, &dims);
        h += (&jc + jc.adjoint()) * C64::new(coupling_g, 0.0);
    }
    Ok((OperatorMatrix::new(h), OperatorMatrix::new(n_exc)))
}

/// Verify [H, N] = 0 to 1e-12 (scaled by the matrix norms).
pub fn check_excitation_conserving(h: &OperatorMatrix, n_exc: &OperatorMatrix) -> Result<()> {
    let comm = h.matrix() * n_exc.matrix() - n_exc.matrix() * h.matrix();
    let scale = h
        .matrix()
        .iter()
        .map(|v| v.norm())
        .fold(0.0_f64, f64::max)
        .max(1e-300);
    let norm = comm.iter().map(|v| v.norm()).fold(0.0_f64, f64::max) / scale;
    if norm > 1e-12 {
        return Err(SkyrmechError::NotExcitationConserving { norm });
    }
    Ok(())
}

/// Pure basis state |index> on a `dim`-dimensional space.
pub fn basis_state(index: usize, dim: usize) -> DVector<C64> {
    let mut v = DVector::<C64>::zeros(dim);
    v[index] = C64::new(1.0, 0.0);
    v
}

/// Density matrix |index><index|.
pub fn basis_density(index: usize, dim: usize) -> DMatrix<C64> {
    let mut m = DMatrix::<C64>::zeros(dim, dim);
    m[(index, index)] = C64::new(1.0, 0.0);
    m
}

/// Standard observables for the qubit x Fock space: excited-state
/// population and phonon number.
pub fn rabi_observables(n_max: usize) -> Vec<(String, OperatorMatrix)> {
    let dims = [2usize, n_max];
    vec![
        (
            "p_e".into(),
            OperatorMatrix::new(embed(&(sigma_plus() * sigma_minus()), 0, &dims)),
        ),
        (
            "n_phonon".into(),
            OperatorMatrix::new(embed(&number(n_max), 1, &dims)),
        ),
    ]
}

/// Observables for qubit x qubit x Fock.
pub fn two_qubit_observables(n_max: usize) -> Vec<(String, OperatorMatrix)> {
    let dims = [2usize, 2, n_max];
    vec![
        (
            "p_e1".into(),
            OperatorMatrix::new(embed(&(sigma_plus() * sigma_minus()), 0, &dims)),
        ),
        (
            "p_e2".into(),
            OperatorMatrix::new(embed(&(sigma_plus() * sigma_minus()), 1, &dims)),
        ),
        (
            "n_phonon".into(),
            OperatorMatrix::new(embed(&number(n_max), 2, &dims)),
        ),
    ]
}

fn purity(rho: &DMatrix<C64>) -> f64 {
    (rho * rho).diagonal().iter().map(|v| v.re).sum()
}

fn dominant_eigenvector(rho: &DMatrix<C64>) -> DVector<C64> {
    let eig = rho.clone().symmetric_eigen();
    let mut best = 0;
    for i in 1..eig.eigenvalues.len() {
        if eig.eigenvalues[i] > eig.eigenvalues[best] {
            best = i;
        }
    }
    let col = eig.eigenvectors.column(best).into_owned();
    let norm = col.norm();
    col / C64::new(norm, 0.0)
}

fn min_hermitian_eigenvalue(rho_flat: &[C64], n: usize) -> f64 {
    let m = DMatrix::<C64>::from_column_slice(n, n, rho_flat);
    let herm = (&m + m.adjoint()) * C64::new(0.5, 0.0);
    let eig = herm.symmetric_eigen();
    eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min)
}

/// Integrate the Lindblad master equation
/// d rho/dt = -i[H, rho] + sum_k gamma_k D[O_k] rho over `times`.
///
/// With an empty collapse list and a pure initial state the evolution
/// dispatches to state-vector stepping (same integrator, identical
/// observables, ~dim times cheaper).
pub fn lindblad_evolve(
    spec: &LindbladSpec,
    rho0: &DMatrix<C64>,
    times: &[f64],
    observables: &[(String, OperatorMatrix)],
    opts: &EvolveOptions,
) -> Result<EvolutionResult> {
    let n = spec.hamiltonian.dim();
    assert_eq!(rho0.nrows(), n, "state dimension mismatch");
    let tr0 = rho0.diagonal().iter().map(|v| v.re).sum::<f64>();
    assert!(
        (tr0 - 1.0).abs() < 1e-9,
        "initial state must be unit trace, got {tr0}"
    );

    let active: Vec<&(OperatorMatrix, f64)> = spec
        .collapse_ops
        .iter()
        .filter(|(_, rate)| *rate > 0.0)
        .collect();

    if active.is_empty() && (purity(rho0) - 1.0).abs() < 1e-10 {
        let psi0 = dominant_eigenvector(rho0);
        return unitary_evolve(&spec.hamiltonian, psi0.as_slice(), times, observables, opts);
    }

    let h_cs = spec.hamiltonian.to_csr();
    struct Channel {
        op: CsMatrix,
        op_dag: CsMatrix,
        op_dag_op: CsMatrix,
        rate: f64,
    }
    let channels: Vec<Channel> = active
        .iter()
        .map(|(op, rate)| {
            let m = op.matrix();
            Channel {
                op: CsMatrix::from_dense(m),
                op_dag: CsMatrix::from_dense(&m.adjoint()),
                op_dag_op: CsMatrix::from_dense(&(m.adjoint() * m)),
                rate: *rate,
            }
        })
        .collect();

    let obs_cs: Vec<(String, CsMatrix)> = observables
        .iter()
        .map(|(name, op)| (name.clone(), op.to_csr()))
        .collect();

    let mut traces: Vec<(String, Vec<f64>)> = obs_cs
        .iter()
        .map(|(name, _)| (name.clone(), Vec::with_capacity(times.len())))
        .collect();
    let mut trace_of_rho = Vec::with_capacity(times.len());
    let mut min_eig = f64::INFINITY;
    let mut drift_err: Option<SkyrmechError> = None;

    let scratch = std::cell::RefCell::new(vec![C64::new(0.0, 0.0); n * n]);
    let minus_i = C64::new(0.0, -1.0);
    let plus_i = C64::new(0.0, 1.0);

    {
        let rhs = |_t: f64, y: &[C64], dy: &mut [C64]| {
            dy.fill(C64::new(0.0, 0.0));
            h_cs.axpy_left(minus_i, y, dy);
            h_cs.axpy_right(plus_i, y, dy);
            let mut tmp = scratch.borrow_mut();
            for ch in &channels {
                tmp.fill(C64::new(0.0, 0.0));
                ch.op.axpy_left(C64::new(1.0, 0.0), y, &mut tmp);
                ch.op_dag.axpy_right(C64::new(ch.rate, 0.0), &tmp, dy);
                ch.op_dag_op.axpy_left(C64::new(-ch.rate / 2.0, 0.0), y, dy);
                ch.op_dag_op.axpy_right(C64::new(-ch.rate / 2.0, 0.0), y, dy);
            }
        };

        let check_every = opts.positivity_check_every;
        integrate_grid(
            rhs,
            rho0.as_slice(),
            times,
            opts.tol.unwrap_or(DENSITY_TOL),
            |gi, t, y| {
                let tr = trace(y, n);
                trace_of_rho.push(tr.re);
                if (tr.re - 1.0).abs() > 1e-6 && drift_err.is_none() {
                    drift_err = Some(SkyrmechError::TraceDrift {
                        t,
                        drift: (tr.re - 1.0).abs(),
                    });
                }
                for ((_, series), (_, op)) in traces.iter_mut().zip(obs_cs.iter()) {
                    series.push(expect_rho(op, y));
                }
                if let Some(k) = check_every {
                    if gi % k == 0 {
                        min_eig = min_eig.min(min_hermitian_eigenvalue(y, n));
                    }
                }
            },
        )?;
    }
    if let Some(e) = drift_err {
        return Err(e);
    }
    Ok(EvolutionResult {
        times: times.to_vec(),
        traces,
        trace_of_rho,
        min_eigenvalue: if opts.positivity_check_every.is_some() {
            Some(min_eig)
        } else {
            None
        },
    })
}

/// Unitary state-vector evolution under a (time-independent) Hamiltonian.
pub fn unitary_evolve(
    hamiltonian: &OperatorMatrix,
    psi0: &[C64],
    times: &[f64],
    observables: &[(String, OperatorMatrix)],
    opts: &EvolveOptions,
) -> Result<EvolutionResult> {
    let h_cs = hamiltonian.to_csr();
    let obs_cs: Vec<(String, CsMatrix)> = observables
        .iter()
        .map(|(name, op)| (name.clone(), op.to_csr()))
        .collect();
    let mut traces: Vec<(String, Vec<f64>)> = obs_cs
        .iter()
        .map(|(name, _)| (name.clone(), Vec::with_capacity(times.len())))
        .collect();
    let mut norms = Vec::with_capacity(times.len());
    let minus_i = C64::new(0.0, -1.0);
    integrate_grid(
        |_t, y, dy| {
            dy.fill(C64::new(0.0, 0.0));
            h_cs.axpy_vec(minus_i, y, dy);
        },
        psi0,
        times,
        opts.tol.unwrap_or(PURE_STATE_TOL),
        |_gi, _t, y| {
            norms.push(y.iter().map(|v| v.norm_sqr()).sum::<f64>());
            for ((_, series), (_, op)) in traces.iter_mut().zip(obs_cs.iter()) {
                series.push(expect_vec(op, y));
            }
        },
    )?;
    Ok(EvolutionResult {
        times: times.to_vec(),
        traces,
        trace_of_rho: norms,
        min_eigenvalue: None,
    })
}

/// Unitary evolution of a single-excitation array state. Emits one
/// population trace per labeled basis component; `trace_of_rho` carries the
/// conserved norm^2.
pub fn single_excitation_evolve(
    system: &ArraySystem,
    psi0: &[C64],
    times: &[f64],
    opts: &EvolveOptions,
) -> Result<EvolutionResult> {
    let h = system.hamiltonian.matrix();
    let n = h.nrows();
    assert_eq!(psi0.len(), n);
    // With the shared vacuum at index 0, excitation conservation in this
    // sector is exactly the statement that the vacuum is decoupled.
    let vac_coupling = (0..n)
        .map(|j| if j == 0 { 0.0 } else { h[(0, j)].norm() })
        .fold(0.0_f64, f64::max);
    if vac_coupling > 1e-12 {
        return Err(SkyrmechError::NotExcitationConserving {
            norm: vac_coupling,
        });
    }
    let h_cs = system.hamiltonian.to_csr();
    let mut traces: Vec<(String, Vec<f64>)> = system
        .labels
        .iter()
        .map(|l| (l.clone(), Vec::with_capacity(times.len())))
        .collect();
    let mut norms = Vec::with_capacity(times.len());
    let minus_i = C64::new(0.0, -1.0);
    integrate_grid(
        |_t, y, dy| {
            dy.fill(C64::new(0.0, 0.0));
            h_cs.axpy_vec(minus_i, y, dy);
        },
        psi0,
        times,
        opts.tol.unwrap_or(PURE_STATE_TOL),
        |_gi, _t, y| {
            norms.push(y.iter().map(|v| v.norm_sqr()).sum::<f64>());
            for (i, (_, series)) in traces.iter_mut().enumerate() {
                series.push(y[i].norm_sqr());
            }
        },
    )?;
    Ok(EvolutionResult {
        times: times.to_vec(),
        traces,
        trace_of_rho: norms,
        min_eigenvalue: None,
    })
}

/// Bound-state profile extracted from the finite-chain array Hamiltonian:
/// the eigenvector with maximal qubit weight, arranged by cell offset from
/// the attachment cell. Returns (energy, qubit weight, site amplitudes,
/// chirality with the attachment cell excluded).
pub fn finite_chain_bound_profile(
    system: &ArraySystem,
) -> (f64, f64, Vec<SiteAmplitude>, f64) {
    assert_eq!(system.placements.len(), 1, "single-qubit profile");
    let (vals, vecs) = system.hamiltonian.eigen();
    let qi = system.qubit_index(0);
    let mut best = 0;
    let mut best_w = 0.0;
    for i in 0..vals.len() {
        let w = vecs[(qi, i)].norm_sqr();
        if w > best_w {
            best_w = w;
            best = i;
        }
    }
    let n = system.chain.n_cells as i64;
    let attach_cell = system.placements[0].0;
    let mut sites = Vec::new();
    for cell in 1..=system.chain.n_cells {
        for sub in [Sublattice::A, Sublattice::B] {
            let idx = system.site_index(cell, sub);
            // shortest signed periodic offset from the attachment cell
            let mut j = cell as i64 - attach_cell;
            if j > n / 2 {
                j -= n;
            }
            if j < -n / 2 {
                j += n;
            }
            sites.push(SiteAmplitude {
                cell: j,
                sublattice: sub,
                amplitude: vecs[(idx, best)],
            });
        }
    }
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
    let chirality = if right + left > 0.0 {
        (right - left) / (right + left)
    } else {
        0.0
    };
    (vals[best], best_w, sites, chirality)
}
