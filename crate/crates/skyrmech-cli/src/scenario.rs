//! Named figure scenarios and parameter sweeps. Each runner is a pure
//! function Config -> files; writing and hashing happen in one place so
//! identical configs give byte-identical outputs.

use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;

use skyrmech::device::{
    bare_coupling, cantilever_frequency, cooperativity, hopping_rate, squeeze_frame_from_r,
    zero_point_motion, zero_point_motion_for_mass,
};
use skyrmech::dynamics::{
    basis_density, basis_state, build_array_hamiltonian, build_rabi_hamiltonian,
    build_two_qubit_hamiltonian, finite_chain_bound_profile, lindblad_evolve,
    rabi_observables, single_excitation_evolve, sw_effective_two_qubit, two_qubit_observables,
    EvolveOptions, LindbladSpec,
};
use skyrmech::operators::{embed, sigma_minus, sigma_z, OperatorMatrix};
use skyrmech::qubit::{diagonalize_qubit, qubit_coefficients, skyrmion_radius};
use skyrmech::tip::gradient_on_axis;
use skyrmech::topo::{
    bound_state_quadrature, dispersion, effective_coupling_matrix, SSHChain, Sublattice,
};
use skyrmech::units::{from_hz, to_hz, EPS_0, LANDE_G};

use crate::config::{Config, ConfigError};
use crate::csv::{CsvTable, CsvValue};
use crate::manifest::RunManifest;

/// One produced artifact: (filename, content).
pub type OutFile = (String, String);

/// Derived coupling budget of the reference device stack.
#[derive(Debug, Clone)]
pub struct Budget {
    pub f_m_hz: f64,
    pub omega_m: f64,
    pub z0_geometric: f64,
    pub z0_mode: f64,
    pub gradient: f64,
    pub lambda_ts: f64,
    pub cooperativity: f64,
    pub hopping_g: f64,
    pub omega_q: f64,
    pub omega_ex: f64,
    pub anharmonic: bool,
    pub energies: Vec<f64>,
    pub skyrmion_radius_m: Option<f64>,
}

/// Compute the full coupling budget from the configuration.
pub fn compute_budget(cfg: &Config) -> Result<Budget, ConfigError> {
    let geom = cfg.cantilever.geometry();
    let f_m_hz = cantilever_frequency(&geom);
    let omega_m = from_hz(f_m_hz);
    let z0_geometric = zero_point_motion(&geom, omega_m).z0;
    let z0_mode = zero_point_motion_for_mass(geom.mode_mass(), omega_m).z0;

    let tip = cfg.tip.geometry();
    let gradient = gradient_on_axis(&tip, cfg.tip.h_ts_nm * 1e-9)
        .map_err(|e| ConfigError(format!("tip gradient: {e}")))?;

    let material = cfg.skyrmion.material();
    let lambda_ts = bare_coupling(z0_mode, gradient.abs(), material.spin_sbar, LANDE_G);
    let coop = cooperativity(
        lambda_ts,
        from_hz(cfg.rates.gamma_m_eff_mhz * 1e6),
        from_hz(cfg.rates.gamma_sky_mhz * 1e6),
    );

    let link = hopping_rate(
        cfg.hopping.voltage_u_v,
        cfg.hopping.cap_c_ff * 1e-15,
        EPS_0 * cfg.hopping.wire_d_um * 1e-6,
        cfg.hopping.gap_h_nm * 1e-9,
        z0_mode,
        0.0,
    );

    let coeffs = qubit_coefficients(&material, &cfg.skyrmion.coefficient_options()?)
        .map_err(|e| ConfigError(format!("qubit coefficients: {e}")))?;
    let spectrum =
        diagonalize_qubit(&coeffs, 20).map_err(|e| ConfigError(format!("qubit spectrum: {e}")))?;

    Ok(Budget {
        f_m_hz,
        omega_m,
        z0_geometric,
        z0_mode,
        gradient,
        lambda_ts,
        cooperativity: coop,
        hopping_g: link.bare_g,
        omega_q: spectrum.omega_q,
        omega_ex: spectrum.omega_ex,
        anharmonic: spectrum.anharmonic,
        energies: spectrum.energies.iter().take(8).copied().collect(),
        skyrmion_radius_m: skyrmion_radius(&material),
    })
}

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    assert!(n >= 2);
    (0..n)
        .map(|i| a + (b - a) * i as f64 / (n - 1) as f64)
        .collect()
}

fn r_label(r: f64) -> String {
    format!("{r}").replace('.', "p").replace('-', "m")
}

// ---------------------------------------------------------------- budget

fn run_budget(cfg: &Config) -> Result<Vec<OutFile>, ConfigError> {
    let b = compute_budget(cfg)?;
    let mut t = CsvTable::new(&[
        ("quantity", "-"),
        ("value", "si"),
        ("unit", "-"),
        ("target", "-"),
    ]);
    let mut row = |q: &str, v: f64, u: &str, target: &str| {
        t.push_row(&[
            CsvValue::Text(q.into()),
            CsvValue::Float(v),
            CsvValue::Text(u.into()),
            CsvValue::Text(target.into()),
        ]);
    };
    row("f_m", b.f_m_hz / 1e6, "MHz", "9.7 (paper: ~10)");
    row("z0_geometric", b.z0_geometric, "m", "1.8e-13");
    row("z0_mode", b.z0_mode, "m", "-");
    row("gradient", b.gradient.abs(), "T/m", "1.74e7");
    row("lambda_ts", to_hz(b.lambda_ts) / 1e6, "MHz", "3.56");
    row("cooperativity", b.cooperativity, "-", "507");
    row("hopping_g_1v", to_hz(b.hopping_g) / 1e6, "MHz", "0.12");
    row("omega_q", to_hz(b.omega_q) / 1e9, "GHz", "2 (loose)");
    if let Some(r) = b.skyrmion_radius_m {
        row("skyrmion_radius", r / 1e-9, "nm", "3 (loose)");
    }
    let spectrum_json = serde_json::json!({
        "unit": "rad/s",
        "energies": b.energies,
        "omega_q": b.omega_q,
        "omega_ex": b.omega_ex,
        "anharmonic": b.anharmonic,
    });
    Ok(vec![
        ("budget.csv".into(), t.render()),
        (
            "qubit_spectrum.json".into(),
            serde_json::to_string_pretty(&spectrum_json).expect("json"),
        ),
    ])
}

// ------------------------------------------------------------------ fig2

/// One h_TS sweep row: coupling and cooperativity at this tip distance.
pub fn fig2_row(cfg: &Config) -> Result<(f64, f64, f64), ConfigError> {
    let geom = cfg.cantilever.geometry();
    let omega_m = from_hz(cantilever_frequency(&geom));
    let z0 = zero_point_motion_for_mass(geom.mode_mass(), omega_m).z0;
    let tip = cfg.tip.geometry();
    let g = gradient_on_axis(&tip, cfg.tip.h_ts_nm * 1e-9)
        .map_err(|e| ConfigError(format!("tip gradient: {e}")))?;
    let lambda = bare_coupling(z0, g.abs(), cfg.skyrmion.spin_sbar, LANDE_G);
    // Fig. 2 quotes the bare (unamplified) phonon linewidth.
    let coop = cooperativity(
        lambda,
        from_hz(cfg.rates.gamma_m_bare_khz * 1e3),
        from_hz(cfg.rates.gamma_sky_mhz * 1e6),
    );
    Ok((cfg.tip.h_ts_nm, to_hz(lambda), coop))
}

fn run_fig2(cfg: &Config) -> Result<Vec<OutFile>, ConfigError> {
    let mut a = CsvTable::new(&[
        ("h_ts_nm", "nm"),
        ("lambda_ts_hz", "Hz"),
        ("cooperativity", "-"),
    ]);
    for h in linspace(cfg.fig2.h_ts_min_nm, cfg.fig2.h_ts_max_nm, cfg.fig2.n_points) {
        let sub = cfg.with_override("tip.h_ts_nm", &format!("{h}"))?;
        let (h_ts, lam, coop) = fig2_row(&sub)?;
        a.push_row(&[
            CsvValue::Float(h_ts),
            CsvValue::Float(lam),
            CsvValue::Float(coop),
        ]);
    }

    let mut bc = CsvTable::new(&[
        ("r_a_nm", "nm"),
        ("h_tip_nm", "nm"),
        ("lambda_ts_hz", "Hz"),
    ]);
    for &ra in &cfg.fig2.r_a_values_nm {
        for &ht in &cfg.fig2.h_tip_values_nm {
            let sub = cfg
                .with_override("tip.r_a_nm", &format!("{ra}"))?
                .with_override("tip.h_tip_nm", &format!("{ht}"))?;
            let (_, lam, _) = fig2_row(&sub)?;
            bc.push_row(&[
                CsvValue::Float(ra),
                CsvValue::Float(ht),
                CsvValue::Float(lam),
            ]);
        }
    }
    Ok(vec![
        ("fig2a.csv".into(), a.render()),
        ("fig2bc.csv".into(), bc.render()),
    ])
}

// ------------------------------------------------------------------ fig3

/// Dynamics of the squeezed-frame Rabi model at squeeze parameter `r`, in
/// lambda-bar units. Returns (times, P_e, n_phonon).
pub fn fig3_dynamics(
    cfg: &Config,
    r: f64,
    n_max: usize,
) -> Result<(Vec<f64>, Vec<f64>, Vec<f64>), ConfigError> {
    let frame = squeeze_frame_from_r(cfg.fig3.delta_m_over_lambda, r, 1.0);
    let delta_q = frame.delta_m_eff;
    let rwa = cfg.fig3.rwa_at_r0 && r == 0.0;
    let h = build_rabi_hamiltonian(delta_q, frame.delta_m_eff, frame.lambda_eff, n_max, rwa);
    let times = linspace(0.0, cfg.fig3.t_max_lambda, cfg.fig3.n_samples + 1);
    let rho0 = basis_density(n_max, 2 * n_max); // |e, 0>
    let spec = LindbladSpec::new(h, vec![]);
    let res = lindblad_evolve(
        &spec,
        &rho0,
        &times,
        &rabi_observables(n_max),
        &EvolveOptions::default(),
    )
    .map_err(|e| ConfigError(format!("fig3 evolution: {e}")))?;
    Ok((
        res.times.clone(),
        res.trace_series("p_e").expect("p_e").to_vec(),
        res.trace_series("n_phonon").expect("n").to_vec(),
    ))
}

fn run_fig3(cfg: &Config) -> Result<Vec<OutFile>, ConfigError> {
    let mut files = Vec::new();

    let mut a = CsvTable::new(&[("r", "-"), ("lambda_eff_over_lambda_bar", "-")]);
    for r in linspace(0.0, cfg.fig3.r_sweep_max, cfg.fig3.r_sweep_points) {
        a.push_row(&[CsvValue::Float(r), CsvValue::Float(r.exp() / 2.0)]);
    }
    files.push(("fig3a.csv".into(), a.render()));

    let mut b = CsvTable::new(&[("omega_e_over_delta_m", "-"), ("r", "-")]);
    for x in linspace(-0.995, 0.995, 399) {
        b.push_row(&[CsvValue::Float(x), CsvValue::Float(0.5 * x.atanh())]);
    }
    files.push(("fig3b.csv".into(), b.render()));

    for (name, r) in [("fig3c.csv", 0.0), ("fig3d.csv", cfg.fig3.r_dynamics)] {
        let (times, p_e, n_ph) = fig3_dynamics(cfg, r, cfg.fig3.n_max)?;
        let mut t = CsvTable::new(&[
            ("t", "1/lambda_bar"),
            ("p_e", "-"),
            ("n_phonon", "-"),
        ]);
        for i in 0..times.len() {
            t.push_row(&[
                CsvValue::Float(times[i]),
                CsvValue::Float(p_e[i]),
                CsvValue::Float(n_ph[i]),
            ]);
        }
        files.push((name.into(), t.render()));
    }
    Ok(files)
}

// ------------------------------------------------------------------ fig4

/// Two-qubit transfer dynamics at squeeze parameter `r` in lambda-bar
/// units; the operating rule pins Delta_m_eff = ratio * lambda_eff.
/// Initial state |e, g, 0>. Returns (times, P_e1, P_e2, n_phonon).
pub fn fig4_dynamics(
    cfg: &Config,
    r: f64,
    t_max: f64,
    dephasing: bool,
) -> Result<(Vec<f64>, Vec<f64>, Vec<f64>, Vec<f64>), ConfigError> {
    let n_max = cfg.fig4.n_max;
    let lambda_eff = r.exp() / 2.0;
    let delta_m_eff = cfg.fig4.delta_m_eff_over_lambda_eff * lambda_eff;
    let h = build_two_qubit_hamiltonian(0.0, delta_m_eff, lambda_eff, n_max);
    let dims = [2usize, 2, n_max];
    let b_op = OperatorMatrix::new(embed(&skyrmech::operators::annihilation(n_max), 2, &dims));
    let mut collapse = vec![
        (b_op, cfg.fig4.gamma_m_over_lambda),
        (
            OperatorMatrix::new(embed(&sigma_minus(), 0, &dims)),
            cfg.fig4.gamma_sky_over_lambda,
        ),
        (
            OperatorMatrix::new(embed(&sigma_minus(), 1, &dims)),
            cfg.fig4.gamma_sky_over_lambda,
        ),
    ];
    if dephasing {
        collapse.push((
            OperatorMatrix::new(embed(&sigma_z(), 0, &dims)),
            cfg.fig4.gamma_sky_over_lambda,
        ));
        collapse.push((
            OperatorMatrix::new(embed(&sigma_z(), 1, &dims)),
            cfg.fig4.gamma_sky_over_lambda,
        ));
    }
    let spec = LindbladSpec::new(h, collapse);
    let rho0 = basis_density(2 * n_max, 4 * n_max); // |e, g, 0>
    let times = linspace(0.0, t_max, cfg.fig4.n_samples + 1);
    let res = lindblad_evolve(
        &spec,
        &rho0,
        &times,
        &two_qubit_observables(n_max),
        &EvolveOptions::default(),
    )
    .map_err(|e| ConfigError(format!("fig4 evolution: {e}")))?;
    Ok((
        res.times.clone(),
        res.trace_series("p_e1").expect("p_e1").to_vec(),
        res.trace_series("p_e2").expect("p_e2").to_vec(),
        res.trace_series("n_phonon").expect("n").to_vec(),
    ))
}

/// Shared comparison window: 2.5 transfer quarter-periods of the strongest
/// drive considered.
pub fn fig4_window(cfg: &Config) -> f64 {
    let lambda_eff = cfg.fig4.r_drive.exp() / 2.0;
    let lambda_ss = lambda_eff / cfg.fig4.delta_m_eff_over_lambda_eff;
    2.5 * std::f64::consts::PI / (4.0 * lambda_ss)
}

fn run_fig4(cfg: &Config) -> Result<Vec<OutFile>, ConfigError> {
    let mut files = Vec::new();

    let mut b = CsvTable::new(&[("r", "-"), ("lambda_ss_over_lambda_bar", "-")]);
    for r in linspace(0.0, cfg.fig4.r_sweep_max, cfg.fig4.r_sweep_points) {
        let lambda_eff = r.exp() / 2.0;
        b.push_row(&[
            CsvValue::Float(r),
            CsvValue::Float(lambda_eff / cfg.fig4.delta_m_eff_over_lambda_eff),
        ]);
    }
    files.push(("fig4b.csv".into(), b.render()));

    let t_max = fig4_window(cfg);
    let variants: Vec<(String, f64, bool)> = vec![
        ("fig4c.csv".into(), 0.0, cfg.fig4.with_dephasing),
        ("fig4d.csv".into(), cfg.fig4.r_drive, cfg.fig4.with_dephasing),
        ("fig4c_nodeph.csv".into(), 0.0, false),
        ("fig4d_nodeph.csv".into(), cfg.fig4.r_drive, false),
    ];
    for (name, r, deph) in variants {
        let (times, p1, p2, n_ph) = fig4_dynamics(cfg, r, t_max, deph)?;
        let mut t = CsvTable::new(&[
            ("t", "1/lambda_bar"),
            ("p_e1", "-"),
            ("p_e2", "-"),
            ("n_phonon", "-"),
        ]);
        for i in 0..times.len() {
            t.push_row(&[
                CsvValue::Float(times[i]),
                CsvValue::Float(p1[i]),
                CsvValue::Float(p2[i]),
                CsvValue::Float(n_ph[i]),
            ]);
        }
        files.push((name, t.render()));
    }
    Ok(files)
}

// ----------------------------------------------------------------- fig5b

/// One voltage sweep row: (U, g/2pi).
pub fn fig5b_row(cfg: &Config) -> Result<(f64, f64), ConfigError> {
    let geom = cfg.cantilever.geometry();
    let omega_m = from_hz(cantilever_frequency(&geom));
    let z0 = zero_point_motion_for_mass(geom.mode_mass(), omega_m).z0;
    let link = hopping_rate(
        cfg.hopping.voltage_u_v,
        cfg.hopping.cap_c_ff * 1e-15,
        EPS_0 * cfg.hopping.wire_d_um * 1e-6,
        cfg.hopping.gap_h_nm * 1e-9,
        z0,
        0.0,
    );
    Ok((cfg.hopping.voltage_u_v, to_hz(link.bare_g)))
}

fn run_fig5b(cfg: &Config) -> Result<Vec<OutFile>, ConfigError> {
    let mut t = CsvTable::new(&[("u_v", "V"), ("g_hz", "Hz")]);
    for u in linspace(cfg.fig5b.u_min_v, cfg.fig5b.u_max_v, cfg.fig5b.n_points) {
        let sub = cfg.with_override("hopping.voltage_u_v", &format!("{u}"))?;
        let (uv, g) = fig5b_row(&sub)?;
        t.push_row(&[CsvValue::Float(uv), CsvValue::Float(g)]);
    }
    Ok(vec![("fig5b.csv".into(), t.render())])
}

// ------------------------------------------------------------------ fig6

fn run_fig6(cfg: &Config) -> Result<Vec<OutFile>, ConfigError> {
    let chain = SSHChain::new(cfg.chain.n_cells, 1.0, cfg.chain.delta);
    let ks = linspace(-std::f64::consts::PI, std::f64::consts::PI, cfg.fig6.n_k_points);

    let mut a = CsvTable::new(&[
        ("k", "rad"),
        ("omega_plus_over_g", "-"),
        ("omega_minus_over_g", "-"),
    ]);
    for &k in &ks {
        let (wp, wm) = dispersion(&chain, k);
        a.push_row(&[
            CsvValue::Float(k),
            CsvValue::Float(wp),
            CsvValue::Float(wm),
        ]);
    }

    // Squeezing rescales the hopping by e^{2r}: the band gap grows.
    let mut cols: Vec<(String, String)> = vec![("k".into(), "rad".into())];
    for &r in &cfg.fig6.r_values {
        cols.push((format!("omega_plus_r{}", r_label(r)), "-".into()));
        cols.push((format!("omega_minus_r{}", r_label(r)), "-".into()));
    }
    let col_refs: Vec<(&str, &str)> = cols
        .iter()
        .map(|(a, b)| (a.as_str(), b.as_str()))
        .collect();
    let mut bt = CsvTable::new(&col_refs);
    for &k in &ks {
        let mut row = vec![CsvValue::Float(k)];
        for &r in &cfg.fig6.r_values {
            let scaled = SSHChain::new(chain.n_cells, (2.0 * r).exp(), cfg.chain.delta);
            let (wp, wm) = dispersion(&scaled, k);
            row.push(CsvValue::Float(wp));
            row.push(CsvValue::Float(wm));
        }
        bt.push_row(&row);
    }

    let g_coupling = cfg.fig6.coupling_g_over_g;
    let bs_a = bound_state_quadrature(&chain, g_coupling, 0.0, Sublattice::A, cfg.fig6.j_range)
        .map_err(|e| ConfigError(format!("fig6 bound state: {e}")))?;
    let bs_b = bound_state_quadrature(&chain, g_coupling, 0.0, Sublattice::B, cfg.fig6.j_range)
        .map_err(|e| ConfigError(format!("fig6 bound state: {e}")))?;
    let mut cd = CsvTable::new(&[
        ("j", "cell"),
        ("sublattice", "-"),
        ("c2_attach_a", "-"),
        ("c2_attach_b", "-"),
    ]);
    for (sa, sb) in bs_a.site_amplitudes.iter().zip(bs_b.site_amplitudes.iter()) {
        cd.push_row(&[
            CsvValue::Int(sa.cell),
            CsvValue::Text(sa.sublattice.letter().to_string()),
            CsvValue::Float(sa.amplitude.norm_sqr()),
            CsvValue::Float(sb.amplitude.norm_sqr()),
        ]);
    }

    Ok(vec![
        ("fig6a.csv".into(), a.render()),
        ("fig6b.csv".into(), bt.render()),
        ("fig6cd.csv".into(), cd.render()),
    ])
}

// ------------------------------------------------------------------ fig7

/// Finite-chain chirality at fixed physical bound-state energy: couplings
/// rescale as (G e^{2r}, script-G e^r) while e_bs stays put. Returns
/// (chirality, site weights) of the max-qubit-weight eigenvector.
pub fn fig7_profile(
    cfg: &Config,
    e_bs_over_g: f64,
    r: f64,
) -> Result<(f64, Vec<(i64, Sublattice, f64)>), ConfigError> {
    let hop = (2.0 * r).exp();
    let coupling = cfg.fig7.coupling_g_over_g * r.exp();
    let chain = SSHChain::new(cfg.fig7.n_cells, hop, cfg.chain.delta);
    let attach_cell = (cfg.fig7.n_cells / 2) as i64;
    let sys = build_array_hamiltonian(&chain, &[(attach_cell, Sublattice::A)], coupling, e_bs_over_g)
        .map_err(|e| ConfigError(format!("fig7 array: {e}")))?;
    let (_, _, sites, chirality) = finite_chain_bound_profile(&sys);
    Ok((
        chirality,
        sites
            .into_iter()
            .map(|s| (s.cell, s.sublattice, s.amplitude.norm_sqr()))
            .collect(),
    ))
}

fn run_fig7(cfg: &Config) -> Result<Vec<OutFile>, ConfigError> {
    let e = cfg.fig7.e_bs_over_g;
    let cases = [
        ("p", e, 0.0),
        ("p", e, cfg.fig7.r_restored),
        ("m", -e, 0.0),
        ("m", -e, cfg.fig7.r_restored),
    ];
    let mut profiles = Vec::new();
    let mut chir = CsvTable::new(&[("e_bs_over_g", "-"), ("r", "-"), ("chirality", "-")]);
    for (_, e_bs, r) in cases {
        let (c, sites) = fig7_profile(cfg, e_bs, r)?;
        chir.push_row(&[
            CsvValue::Float(e_bs),
            CsvValue::Float(r),
            CsvValue::Float(c),
        ]);
        profiles.push(sites);
    }
    let mut cols: Vec<(String, String)> =
        vec![("j".into(), "cell".into()), ("sublattice".into(), "-".into())];
    for (tag, _, r) in cases {
        cols.push((format!("c2_{}11_r{}", tag, r_label(r)), "-".into()));
    }
    let col_refs: Vec<(&str, &str)> = cols
        .iter()
        .map(|(a, b)| (a.as_str(), b.as_str()))
        .collect();
    let mut t = CsvTable::new(&col_refs);
    for i in 0..profiles[0].len() {
        let (j, sub, _) = profiles[0][i];
        let mut row = vec![
            CsvValue::Int(j),
            CsvValue::Text(sub.letter().to_string()),
        ];
        for p in &profiles {
            row.push(CsvValue::Float(p[i].2));
        }
        t.push_row(&row);
    }
    Ok(vec![
        ("fig7.csv".into(), t.render()),
        ("fig7_chirality.csv".into(), chir.render()),
    ])
}

// ------------------------------------------------------------------ fig8

/// Qubit placements of the two published cases.
pub fn fig8_placements(case: char) -> Vec<(i64, Sublattice)> {
    match case {
        'a' => vec![
            (2, Sublattice::B),
            (3, Sublattice::A),
            (4, Sublattice::B),
        ],
        'b' => vec![
            (2, Sublattice::A),
            (3, Sublattice::B),
            (4, Sublattice::A),
        ],
        other => panic!("fig8 case must be 'a' or 'b', got {other}"),
    }
}

/// Panel letter from (case, delta sign): (a,+)->c, (b,+)->d, (a,-)->e, (b,-)->f.
pub fn fig8_panel(case: char, delta: f64) -> char {
    match (case, delta >= 0.0) {
        ('a', true) => 'c',
        ('b', true) => 'd',
        ('a', false) => 'e',
        ('b', false) => 'f',
        _ => unreachable!(),
    }
}

/// Single-excitation dynamics of the three-qubit chain, initial state
/// |g e g>, times in 1/G. Returns (times, P_sky1, P_sky2, P_sky3).
pub fn fig8_dynamics(
    cfg: &Config,
    case: char,
) -> Result<(Vec<f64>, Vec<f64>, Vec<f64>, Vec<f64>), ConfigError> {
    let chain = SSHChain::new(cfg.chain.n_cells, 1.0, cfg.chain.delta);
    let placements = fig8_placements(case);
    let sys = build_array_hamiltonian(&chain, &placements, cfg.chain.coupling_g_over_g, 0.0)
        .map_err(|e| ConfigError(format!("fig8 array: {e}")))?;
    let dim = sys.hamiltonian.dim();
    let psi0 = basis_state(sys.qubit_index(1), dim); // |g e g>, vacuum chain
    let times = linspace(0.0, cfg.fig8.t_max_g, cfg.fig8.n_samples + 1);
    let res = single_excitation_evolve(&sys, psi0.as_slice(), &times, &EvolveOptions::default())
        .map_err(|e| ConfigError(format!("fig8 evolution: {e}")))?;
    Ok((
        res.times.clone(),
        res.trace_series("sky1").expect("sky1").to_vec(),
        res.trace_series("sky2").expect("sky2").to_vec(),
        res.trace_series("sky3").expect("sky3").to_vec(),
    ))
}

fn fig8_file(cfg: &Config, case: char) -> Result<OutFile, ConfigError> {
    let (times, p1, p2, p3) = fig8_dynamics(cfg, case)?;
    let mut t = CsvTable::new(&[
        ("t", "1/G"),
        ("p_sky1", "-"),
        ("p_sky2", "-"),
        ("p_sky3", "-"),
    ]);
    for i in 0..times.len() {
        t.push_row(&[
            CsvValue::Float(times[i]),
            CsvValue::Float(p1[i]),
            CsvValue::Float(p2[i]),
            CsvValue::Float(p3[i]),
        ]);
    }
    let panel = fig8_panel(case, cfg.chain.delta);
    Ok((format!("fig8{panel}.csv"), t.render()))
}

fn run_fig8(cfg: &Config, case: Option<char>) -> Result<Vec<OutFile>, ConfigError> {
    let mut files = Vec::new();
    match case {
        Some(c) => files.push(fig8_file(cfg, c)?),
        None => {
            // all four panels: both cases at the configured delta and its
            // published partner value
            let deltas = if cfg.chain.delta >= 0.0 {
                [cfg.chain.delta, -0.9]
            } else {
                [0.25, cfg.chain.delta]
            };
            for d in deltas {
                let sub = cfg.with_override("chain.delta", &format!("{d}"))?;
                for c in ['a', 'b'] {
                    files.push(fig8_file(&sub, c)?);
                }
            }
        }
    }

    // pairwise effective couplings for both cases at the active delta
    let chain = SSHChain::new(cfg.chain.n_cells, 1.0, cfg.chain.delta);
    let mut eff = CsvTable::new(&[
        ("case", "-"),
        ("qubit_i", "-"),
        ("qubit_j", "-"),
        ("g_ij_over_g", "-"),
    ]);
    for c in ['a', 'b'] {
        let placements = fig8_placements(c);
        let m = effective_coupling_matrix(&chain, cfg.chain.coupling_g_over_g, &placements);
        for i in 0..placements.len() {
            for j in (i + 1)..placements.len() {
                eff.push_row(&[
                    CsvValue::Text(c.to_string()),
                    CsvValue::Int(i as i64 + 1),
                    CsvValue::Int(j as i64 + 1),
                    CsvValue::Float(m.entries[(i, j)]),
                ]);
            }
        }
    }
    files.push(("fig8_effective.csv".into(), eff.render()));
    Ok(files)
}

// --------------------------------------------------------------- running

/// All known scenario names.
pub const SCENARIOS: &[&str] = &[
    "fig2", "fig3", "fig4", "fig5b", "fig6", "fig7", "fig8", "budget",
];

/// Produce the artifact set of a named scenario.
pub fn run_scenario(
    name: &str,
    cfg: &Config,
    fig8_case: Option<char>,
) -> Result<Vec<OutFile>, ConfigError> {
    match name {
        "budget" => run_budget(cfg),
        "fig2" => run_fig2(cfg),
        "fig3" => run_fig3(cfg),
        "fig4" => run_fig4(cfg),
        "fig5b" => run_fig5b(cfg),
        "fig6" => run_fig6(cfg),
        "fig7" => run_fig7(cfg),
        "fig8" => run_fig8(cfg, fig8_case),
        other => Err(ConfigError(format!(
            "unknown scenario '{other}' (expected one of {SCENARIOS:?} or 'sweep')"
        ))),
    }
}

/// Write scenario outputs plus the run manifest; returns the manifest.
pub fn write_outputs(
    dir: &Path,
    scenario: &str,
    cfg: &Config,
    files: &[OutFile],
    notes: Vec<String>,
    started: Instant,
) -> std::io::Result<RunManifest> {
    std::fs::create_dir_all(dir)?;
    let mut manifest = RunManifest::new(scenario, cfg);
    manifest.notes = notes;
    for (name, content) in files {
        std::fs::write(dir.join(name), content)?;
        manifest.record_output(name, content);
    }
    manifest.wall_ms = started.elapsed().as_millis();
    manifest.write(dir)?;
    Ok(manifest)
}

// ----------------------------------------------------------------- sweep

/// Parse an `a:b:n` linspace specification.
pub fn parse_values(spec: &str) -> Result<Vec<f64>, ConfigError> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(ConfigError(format!(
            "values spec '{spec}' must be start:stop:count"
        )));
    }
    let a: f64 = parts[0]
        .parse()
        .map_err(|_| ConfigError(format!("bad start '{}'", parts[0])))?;
    let b: f64 = parts[1]
        .parse()
        .map_err(|_| ConfigError(format!("bad stop '{}'", parts[1])))?;
    let n: usize = parts[2]
        .parse()
        .map_err(|_| ConfigError(format!("bad count '{}'", parts[2])))?;
    if n < 2 {
        return Err(ConfigError("count must be >= 2".into()));
    }
    Ok(linspace(a, b, n))
}

/// Sweep a numeric config key across `values` for the scenarios that
/// define a one-row summary; rows are computed in parallel but written in
/// input order.
pub fn run_sweep(
    scenario: &str,
    cfg: &Config,
    axis: &str,
    values: &[f64],
) -> Result<Vec<OutFile>, ConfigError> {
    cfg.numeric_at(axis)?; // reject non-numeric axes up front
    let configs: Result<Vec<Config>, ConfigError> = values
        .iter()
        .map(|v| cfg.with_override(axis, &format!("{v}")))
        .collect();
    let configs = configs?;

    match scenario {
        "fig2" => {
            let rows: Result<Vec<_>, ConfigError> =
                configs.par_iter().map(fig2_row).collect();
            let mut t = CsvTable::new(&[
                ("h_ts_nm", "nm"),
                ("lambda_ts_hz", "Hz"),
                ("cooperativity", "-"),
            ]);
            for (h, lam, coop) in rows? {
                t.push_row(&[
                    CsvValue::Float(h),
                    CsvValue::Float(lam),
                    CsvValue::Float(coop),
                ]);
            }
            Ok(vec![("fig2a.csv".into(), t.render())])
        }
        "fig5b" => {
            let rows: Result<Vec<_>, ConfigError> =
                configs.par_iter().map(fig5b_row).collect();
            let mut t = CsvTable::new(&[("u_v", "V"), ("g_hz", "Hz")]);
            for (u, g) in rows? {
                t.push_row(&[CsvValue::Float(u), CsvValue::Float(g)]);
            }
            Ok(vec![("fig5b.csv".into(), t.render())])
        }
        "fig4" => {
            // Lambda_SS^eff versus the swept axis (normally fig4.r_drive).
            let mut t = CsvTable::new(&[
                ("axis", axis),
                ("lambda_ss_over_lambda_bar", "-"),
            ]);
            for (v, sub) in values.iter().zip(configs.iter()) {
                let lambda_eff = sub.fig4.r_drive.exp() / 2.0;
                let sw = sw_effective_two_qubit(
                    lambda_eff,
                    sub.fig4.delta_m_eff_over_lambda_eff * lambda_eff,
                );
                t.push_row(&[CsvValue::Float(*v), CsvValue::Float(sw.lambda_ss)]);
            }
            Ok(vec![("fig4b.csv".into(), t.render())])
        }
        "budget" => {
            let rows: Result<Vec<_>, ConfigError> =
                configs.par_iter().map(compute_budget).collect();
            let mut t = CsvTable::new(&[
                ("axis", axis),
                ("f_m_hz", "Hz"),
                ("z0_mode_m", "m"),
                ("gradient_t_per_m", "T/m"),
                ("lambda_ts_hz", "Hz"),
                ("cooperativity", "-"),
            ]);
            for (v, b) in values.iter().zip(rows?) {
                t.push_row(&[
                    CsvValue::Float(*v),
                    CsvValue::Float(b.f_m_hz),
                    CsvValue::Float(b.z0_mode),
                    CsvValue::Float(b.gradient.abs()),
                    CsvValue::Float(to_hz(b.lambda_ts)),
                    CsvValue::Float(b.cooperativity),
                ]);
            }
            Ok(vec![("budget_sweep.csv".into(), t.render())])
        }
        other => Err(ConfigError(format!(
            "scenario '{other}' has no sweep summary (use fig2, fig5b, fig4 or budget)"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn budget_matches_reference_targets() {
        let b = compute_budget(&Config::default()).unwrap();
        assert!((b.f_m_hz / 9.7e6 - 1.0).abs() < 0.05);
        assert!((b.gradient.abs() / 1.74e7 - 1.0).abs() < 0.10);
        let lam_mhz = to_hz(b.lambda_ts) / 1e6;
        assert!(lam_mhz > 1.78 && lam_mhz < 7.12, "lambda {lam_mhz} MHz");
        let g_mhz = to_hz(b.hopping_g) / 1e6;
        assert!(g_mhz > 0.024 && g_mhz < 0.6, "hopping {g_mhz} MHz");
        let f_q_ghz = to_hz(b.omega_q) / 1e9;
        assert!(f_q_ghz > 1.0 && f_q_ghz < 4.0, "omega_q {f_q_ghz} GHz");
        assert!(b.anharmonic);
        let r_nm = b.skyrmion_radius_m.unwrap() / 1e-9;
        assert!(r_nm > 1.5 && r_nm < 4.5, "radius {r_nm} nm");
    }

    #[test]
    fn fig8_panel_mapping() {
        assert_eq!(fig8_panel('a', 0.25), 'c');
        assert_eq!(fig8_panel('b', 0.25), 'd');
        assert_eq!(fig8_panel('a', -0.9), 'e');
        assert_eq!(fig8_panel('b', -0.9), 'f');
    }

    #[test]
    fn values_spec_parsing() {
        let v = parse_values("1:10:10").unwrap();
        assert_eq!(v.len(), 10);
        assert_eq!(v[0], 1.0);
        assert_eq!(v[9], 10.0);
        assert!(parse_values("1:10").is_err());
        assert!(parse_values("a:b:3").is_err());
        assert!(parse_values("1:2:1").is_err());
    }

    #[test]
    fn sweep_rejects_bad_axis() {
        let cfg = Config::default();
        assert!(run_sweep("fig2", &cfg, "tip.nope", &[1.0, 2.0]).is_err());
        assert!(run_sweep("fig2", &cfg, "skyrmion.kappa_convention", &[1.0, 2.0]).is_err());
        assert!(run_sweep("fig3", &cfg, "tip.h_ts_nm", &[1.0, 2.0]).is_err());
    }

    #[test]
    fn fig5b_sweep_is_quadratic() {
        let cfg = Config::default();
        let files = run_sweep("fig5b", &cfg, "hopping.voltage_u_v", &[1.0, 10.0]).unwrap();
        let content = &files[0].1;
        let rows: Vec<&str> = content.lines().skip(2).collect();
        let g1: f64 = rows[0].split(',').nth(1).unwrap().parse().unwrap();
        let g10: f64 = rows[1].split(',').nth(1).unwrap().parse().unwrap();
        assert!((g10 / g1 - 100.0).abs() < 1e-10);
    }
}
