//! Global configuration: one TOML tree with sections per module, every
//! physical key carrying an explicit unit suffix. Unknown keys are
//! rejected; flat key-path overrides (`section.key=value`) are applied on
//! the TOML tree so that type errors and typos surface immediately.

use serde::{Deserialize, Serialize};
use skyrmech::qubit::{CoefficientOptions, KappaConvention, RadialMeasure, SkyrmionMaterial};
use skyrmech::tip::TipGeometry;

#[derive(Debug, Clone)]
pub struct ConfigError(pub String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "config error: {}", self.0)
    }
}

impl std::error::Error for ConfigError {}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SkyrmionSection {
    pub j1_mev: f64,
    pub j2_mev: f64,
    pub lattice_a_nm: f64,
    pub field_h_mt: f64,
    pub anisotropy_k_mev: f64,
    pub spin_sbar: f64,
    pub efield_v_per_m: f64,
    pub polarization_pe_c_per_m2: f64,
    /// "literal" | "squared_denominator" | "user"
    pub kappa_convention: String,
    pub kappa_user_value: f64,
    /// "area" (2 pi rho d rho) | "line" (d rho)
    pub radial_measure: String,
    pub quadrature_cutoff: f64,
    /// Retune the field to the charge-degeneracy working point before
    /// evaluating the qubit spectrum.
    pub tune_field_to_degeneracy: bool,
}

impl Default for SkyrmionSection {
    fn default() -> Self {
        Self {
            j1_mev: 1.0,
            j2_mev: 20.0,
            lattice_a_nm: 0.5,
            field_h_mt: 35.0,
            anisotropy_k_mev: 0.15,
            spin_sbar: 20.0,
            efield_v_per_m: 80.0,
            polarization_pe_c_per_m2: 0.2,
            kappa_convention: "literal".into(),
            kappa_user_value: 0.0,
            radial_measure: "area".into(),
            quadrature_cutoff: 250.0,
            tune_field_to_degeneracy: true,
        }
    }
}

impl SkyrmionSection {
    pub fn material(&self) -> SkyrmionMaterial {
        let m = SkyrmionMaterial {
            j1_mev: self.j1_mev,
            j2_mev: self.j2_mev,
            lattice_a: self.lattice_a_nm * 1e-9,
            field_h: self.field_h_mt * 1e-3,
            anisotropy_k_mev: self.anisotropy_k_mev,
            spin_sbar: self.spin_sbar,
            efield: self.efield_v_per_m,
            polarization_pe: self.polarization_pe_c_per_m2,
        };
        if self.tune_field_to_degeneracy {
            m.with_degeneracy_field()
        } else {
            m
        }
    }

    pub fn coefficient_options(&self) -> Result<CoefficientOptions, ConfigError> {
        let kappa = match self.kappa_convention.as_str() {
            "literal" => KappaConvention::Literal,
            "squared_denominator" => KappaConvention::SquaredDenominator,
            "user" => KappaConvention::User(self.kappa_user_value),
            other => {
                return Err(ConfigError(format!(
                    "unknown kappa_convention '{other}' (literal | squared_denominator | user)"
                )))
            }
        };
        let measure = match self.radial_measure.as_str() {
            "area" => RadialMeasure::Area,
            "line" => RadialMeasure::Line,
            other => {
                return Err(ConfigError(format!(
                    "unknown radial_measure '{other}' (area | line)"
                )))
            }
        };
        Ok(CoefficientOptions {
            cutoff: self.quadrature_cutoff,
            measure,
            kappa,
            ..Default::default()
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TipSection {
    pub r_a_nm: f64,
    pub r_b_nm: f64,
    pub h_tip_nm: f64,
    pub s_nm_nm: f64,
    pub mu0_ms_t: f64,
    /// Tip-to-qubit working distance.
    pub h_ts_nm: f64,
}

impl Default for TipSection {
    fn default() -> Self {
        Self {
            r_a_nm: 40.0,
            r_b_nm: 160.0,
            h_tip_nm: 180.0,
            s_nm_nm: 10.0,
            mu0_ms_t: 2.4,
            h_ts_nm: 20.0,
        }
    }
}

impl TipSection {
    pub fn geometry(&self) -> TipGeometry {
        TipGeometry {
            r_a: self.r_a_nm * 1e-9,
            r_b: self.r_b_nm * 1e-9,
            h_tip: self.h_tip_nm * 1e-9,
            s_nm: self.s_nm_nm * 1e-9,
            mu0_ms: self.mu0_ms_t,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CantileverSection {
    pub length_um: f64,
    pub width_um: f64,
    pub thickness_um: f64,
    pub density_kg_per_m3: f64,
    pub youngs_pa: f64,
    pub mode_mass_fraction: f64,
}

impl Default for CantileverSection {
    fn default() -> Self {
        Self {
            length_um: 5.6,
            width_um: 0.05,
            thickness_um: 0.04,
            density_kg_per_m3: 2329.0,
            youngs_pa: 1.3e11,
            mode_mass_fraction: 0.25,
        }
    }
}

impl CantileverSection {
    pub fn geometry(&self) -> skyrmech::device::CantileverGeometry {
        skyrmech::device::CantileverGeometry {
            length_l: self.length_um * 1e-6,
            width_w: self.width_um * 1e-6,
            thickness_t: self.thickness_um * 1e-6,
            density: self.density_kg_per_m3,
            youngs: self.youngs_pa,
            mode_mass_fraction: self.mode_mass_fraction,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ElectrodeSection {
    pub area_um2: f64,
    pub gap_d_nm: f64,
    pub eps_r: f64,
    pub v0_v: f64,
    pub vp_v: f64,
    pub omega_e_mhz: f64,
}

impl Default for ElectrodeSection {
    fn default() -> Self {
        Self {
            area_um2: 0.28,
            gap_d_nm: 100.0,
            eps_r: 1.0,
            v0_v: 5.0,
            vp_v: 0.1,
            omega_e_mhz: 9.0,
        }
    }
}

impl ElectrodeSection {
    pub fn electrode(&self) -> skyrmech::device::DriveElectrode {
        skyrmech::device::DriveElectrode {
            area_s: self.area_um2 * 1e-12,
            gap_d: self.gap_d_nm * 1e-9,
            eps_r: self.eps_r,
            v0: self.v0_v,
            vp: self.vp_v,
            omega_e: skyrmech::units::from_hz(self.omega_e_mhz * 1e6),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RatesSection {
    pub gamma_sky_mhz: f64,
    /// Bare phonon linewidth (used for the tip-sweep cooperativity).
    pub gamma_m_bare_khz: f64,
    /// Phonon linewidth including parametric amplification of dissipation
    /// (used in the coupling budget).
    pub gamma_m_eff_mhz: f64,
}

impl Default for RatesSection {
    fn default() -> Self {
        Self {
            gamma_sky_mhz: 1.0,
            gamma_m_bare_khz: 1.0,
            gamma_m_eff_mhz: 0.1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct HoppingSection {
    pub voltage_u_v: f64,
    pub cap_c_ff: f64,
    pub wire_d_um: f64,
    pub gap_h_nm: f64,
}

impl Default for HoppingSection {
    fn default() -> Self {
        Self {
            voltage_u_v: 1.0,
            cap_c_ff: 0.1,
            wire_d_um: 100.0,
            gap_h_nm: 100.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ChainSection {
    pub n_cells: usize,
    pub delta: f64,
    /// Qubit-site coupling as a fraction of the hopping rate G.
    pub coupling_g_over_g: f64,
}

impl Default for ChainSection {
    fn default() -> Self {
        Self {
            n_cells: 10,
            delta: 0.25,
            coupling_g_over_g: 0.1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Fig2Section {
    pub h_ts_min_nm: f64,
    pub h_ts_max_nm: f64,
    pub n_points: usize,
    pub r_a_values_nm: Vec<f64>,
    pub h_tip_values_nm: Vec<f64>,
}

impl Default for Fig2Section {
    fn default() -> Self {
        Self {
            h_ts_min_nm: 10.0,
            h_ts_max_nm: 100.0,
            n_points: 46,
            r_a_values_nm: vec![20.0, 40.0, 60.0, 80.0],
            h_tip_values_nm: vec![120.0, 180.0, 240.0],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Fig3Section {
    /// Detuning Delta_m in units of lambda-bar.
    pub delta_m_over_lambda: f64,
    pub r_dynamics: f64,
    pub n_max: usize,
    pub t_max_lambda: f64,
    pub n_samples: usize,
    pub r_sweep_max: f64,
    pub r_sweep_points: usize,
    /// Treat the r = 0 panel in the excitation-conserving (RWA) form.
    pub rwa_at_r0: bool,
}

impl Default for Fig3Section {
    fn default() -> Self {
        Self {
            delta_m_over_lambda: 20.0,
            r_dynamics: 1.5,
            n_max: 40,
            t_max_lambda: 20.0,
            n_samples: 400,
            r_sweep_max: 3.0,
            r_sweep_points: 61,
            rwa_at_r0: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Fig4Section {
    pub r_drive: f64,
    pub delta_m_eff_over_lambda_eff: f64,
    pub gamma_sky_over_lambda: f64,
    pub gamma_m_over_lambda: f64,
    pub n_max: usize,
    pub n_samples: usize,
    pub with_dephasing: bool,
    pub r_sweep_max: f64,
    pub r_sweep_points: usize,
}

impl Default for Fig4Section {
    fn default() -> Self {
        Self {
            r_drive: 4.0,
            delta_m_eff_over_lambda_eff: 10.0,
            gamma_sky_over_lambda: 0.5,
            gamma_m_over_lambda: 0.1,
            n_max: 8,
            n_samples: 300,
            with_dephasing: true,
            r_sweep_max: 4.0,
            r_sweep_points: 41,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Fig5bSection {
    pub u_min_v: f64,
    pub u_max_v: f64,
    pub n_points: usize,
}

impl Default for Fig5bSection {
    fn default() -> Self {
        Self {
            u_min_v: 1.0,
            u_max_v: 10.0,
            n_points: 19,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Fig6Section {
    pub n_k_points: usize,
    pub r_values: Vec<f64>,
    pub coupling_g_over_g: f64,
    pub j_range: usize,
}

impl Default for Fig6Section {
    fn default() -> Self {
        Self {
            n_k_points: 201,
            r_values: vec![0.0, 0.5, 1.0],
            coupling_g_over_g: 0.4,
            j_range: 12,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Fig7Section {
    pub e_bs_over_g: f64,
    pub r_restored: f64,
    pub n_cells: usize,
    pub coupling_g_over_g: f64,
}

impl Default for Fig7Section {
    fn default() -> Self {
        Self {
            e_bs_over_g: 1.1,
            r_restored: 2.0,
            n_cells: 40,
            coupling_g_over_g: 0.4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Fig8Section {
    pub t_max_g: f64,
    pub n_samples: usize,
}

impl Default for Fig8Section {
    fn default() -> Self {
        Self {
            t_max_g: 800.0,
            n_samples: 400,
        }
    }
}

/// The whole configuration tree.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub skyrmion: SkyrmionSection,
    pub tip: TipSection,
    pub cantilever: CantileverSection,
    pub electrode: ElectrodeSection,
    pub rates: RatesSection,
    pub hopping: HoppingSection,
    pub chain: ChainSection,
    pub fig2: Fig2Section,
    pub fig3: Fig3Section,
    pub fig4: Fig4Section,
    pub fig5b: Fig5bSection,
    pub fig6: Fig6Section,
    pub fig7: Fig7Section,
    pub fig8: Fig8Section,
}

impl Config {
    /// Parse a TOML string (missing keys fall back to defaults, unknown
    /// keys are rejected).
    pub fn from_toml(text: &str) -> Result<Self, ConfigError> {
        toml::from_str(text).map_err(|e| ConfigError(e.to_string()))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string_pretty(self).expect("config serializes")
    }

    /// Apply a flat `section.key=value` override.
    pub fn with_override(&self, path: &str, raw_value: &str) -> Result<Self, ConfigError> {
        let mut tree =
            toml::Value::try_from(self).map_err(|e| ConfigError(e.to_string()))?;
        let segments: Vec<&str> = path.split('.').collect();
        if segments.len() < 2 {
            return Err(ConfigError(format!(
                "override path '{path}' must be section.key"
            )));
        }
        let mut cursor = &mut tree;
        for seg in &segments[..segments.len() - 1] {
            cursor = cursor
                .get_mut(seg)
                .ok_or_else(|| ConfigError(format!("unknown config section '{seg}'")))?;
        }
        let leaf_name = segments[segments.len() - 1];
        let leaf = cursor
            .get_mut(leaf_name)
            .ok_or_else(|| ConfigError(format!("unknown config key '{path}'")))?;
        *leaf = parse_typed(leaf, raw_value, path)?;
        tree.try_into().map_err(|e: toml::de::Error| ConfigError(e.to_string()))
    }

    /// Resolve a flat key path to a numeric value (for sweep axes).
    pub fn numeric_at(&self, path: &str) -> Result<f64, ConfigError> {
        let tree = toml::Value::try_from(self).map_err(|e| ConfigError(e.to_string()))?;
        let mut cursor = &tree;
        for seg in path.split('.') {
            cursor = cursor
                .get(seg)
                .ok_or_else(|| ConfigError(format!("unknown config key '{path}'")))?;
        }
        match cursor {
            toml::Value::Float(v) => Ok(*v),
            toml::Value::Integer(v) => Ok(*v as f64),
            _ => Err(ConfigError(format!("config key '{path}' is not numeric"))),
        }
    }
}

fn parse_typed(
    current: &toml::Value,
    raw: &str,
    path: &str,
) -> Result<toml::Value, ConfigError> {
    let err = |what: &str| ConfigError(format!("cannot parse '{raw}' as {what} for '{path}'"));
    Ok(match current {
        toml::Value::Float(_) => {
            toml::Value::Float(raw.parse::<f64>().map_err(|_| err("a float"))?)
        }
        toml::Value::Integer(_) => {
            toml::Value::Integer(raw.parse::<i64>().map_err(|_| err("an integer"))?)
        }
        toml::Value::Boolean(_) => {
            toml::Value::Boolean(raw.parse::<bool>().map_err(|_| err("a bool"))?)
        }
        toml::Value::String(_) => toml::Value::String(raw.to_string()),
        toml::Value::Array(a) => {
            let parsed: Result<Vec<f64>, _> =
                raw.split(',').map(|s| s.trim().parse::<f64>()).collect();
            let values = parsed.map_err(|_| err("a comma-separated float list"))?;
            if !a.is_empty() && matches!(a[0], toml::Value::Integer(_)) {
                toml::Value::Array(
                    values
                        .into_iter()
                        .map(|v| toml::Value::Integer(v as i64))
                        .collect(),
                )
            } else {
                toml::Value::Array(values.into_iter().map(toml::Value::Float).collect())
            }
        }
        other => {
            return Err(ConfigError(format!(
                "config key '{path}' has unsupported type {other:?}"
            )))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_round_trip() {
        let c = Config::default();
        let s = c.to_toml();
        let back = Config::from_toml(&s).unwrap();
        assert_eq!(c, back);
    }

    #[test]
    fn unknown_key_rejected() {
        assert!(Config::from_toml("[tip]\nbogus_key = 1.0\n").is_err());
        assert!(Config::from_toml("[bogus_section]\nx = 1\n").is_err());
    }

    #[test]
    fn partial_file_fills_defaults() {
        let c = Config::from_toml("[tip]\nh_ts_nm = 35.0\n").unwrap();
        assert_eq!(c.tip.h_ts_nm, 35.0);
        assert_eq!(c.tip.r_a_nm, 40.0);
        assert_eq!(c.chain.delta, 0.25);
    }

    #[test]
    fn overrides() {
        let c = Config::default();
        let c2 = c.with_override("chain.delta", "-0.9").unwrap();
        assert_eq!(c2.chain.delta, -0.9);
        let c3 = c.with_override("fig3.n_max", "50").unwrap();
        assert_eq!(c3.fig3.n_max, 50);
        let c4 = c.with_override("skyrmion.kappa_convention", "user").unwrap();
        assert_eq!(c4.skyrmion.kappa_convention, "user");
        assert!(c.with_override("chain.bogus", "1").is_err());
        assert!(c.with_override("chain.delta", "notafloat").is_err());
        assert!(c.with_override("delta", "0.1").is_err());
    }

    #[test]
    fn numeric_axis_resolution() {
        let c = Config::default();
        assert_eq!(c.numeric_at("tip.h_ts_nm").unwrap(), 20.0);
        assert_eq!(c.numeric_at("fig3.n_max").unwrap(), 40.0);
        assert!(c.numeric_at("skyrmion.kappa_convention").is_err());
        assert!(c.numeric_at("tip.nope").is_err());
    }

    #[test]
    fn material_degeneracy_tuning() {
        let mut s = SkyrmionSection::default();
        s.tune_field_to_degeneracy = true;
        let m = s.material();
        let (h, k, _) = m.bare_coefficients();
        assert!((h - k).abs() < 1e-12 * k);
    }
}
