//! Flat `key = value` run configuration.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::closed_forms::SystemParams;
use crate::error::{Error, Result};
use crate::oracle::ValidationConfig;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl OutputFormat {
    pub fn extension(self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        }
    }
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::Config(format!(
                "unknown output format '{other}' (expected csv or json)"
            ))),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.extension())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub nu_ratio: f64,
    pub omega_a_ratio: f64,
    pub rabi_ratio: f64,
    pub eta: f64,
    pub alpha: f64,
    pub fock_dim: usize,

    pub eta_min: f64,
    pub eta_max: f64,
    pub eta_steps: usize,
    pub alpha_min: f64,
    pub alpha_max: f64,
    pub alpha_steps: usize,
    /// Resolution of the 1-D probability and concurrence curves.
    pub alpha_curve_steps: usize,
    pub k_list: Vec<u32>,

    pub steps_per_period: usize,
    pub periods: usize,
    pub convergence_steps: usize,

    pub validate_etas: Vec<f64>,
    pub validate_alphas: Vec<f64>,
    pub validate_ks: Vec<u32>,
    pub negative_control_rabi: f64,
    pub relation_steps: usize,

    pub output_dir: PathBuf,
    pub output_format: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        let v = ValidationConfig::default();
        let p = SystemParams::default();
        Self {
            nu_ratio: p.nu_ratio,
            omega_a_ratio: p.omega_a_ratio,
            rabi_ratio: p.rabi_ratio,
            eta: p.eta,
            alpha: p.alpha,
            fock_dim: p.fock_dim,
            eta_min: 0.0,
            eta_max: 1.0,
            eta_steps: 101,
            alpha_min: 0.0,
            alpha_max: 2.0,
            alpha_steps: 101,
            alpha_curve_steps: 2001,
            k_list: vec![0, 1, 2, 3],
            steps_per_period: v.steps_per_period,
            periods: v.periods,
            convergence_steps: v.convergence_steps,
            validate_etas: v.etas,
            validate_alphas: v.alphas,
            validate_ks: v.ks,
            negative_control_rabi: v.negative_control_rabi,
            relation_steps: v.relation_steps,
            output_dir: PathBuf::from("out"),
            output_format: OutputFormat::Csv,
        }
    }
}

fn parse_f64(key: &str, v: &str) -> Result<f64> {
    v.parse::<f64>()
        .map_err(|_| Error::Config(format!("{key}: '{v}' is not a number")))
}

fn parse_usize(key: &str, v: &str) -> Result<usize> {
    v.parse::<usize>()
        .map_err(|_| Error::Config(format!("{key}: '{v}' is not a non-negative integer")))
}

fn parse_list<T: FromStr>(key: &str, v: &str) -> Result<Vec<T>> {
    if v.trim().is_empty() {
        return Ok(Vec::new());
    }
    v.split(',')
        .map(|s| {
            let s = s.trim();
            s.parse::<T>()
                .map_err(|_| Error::Config(format!("{key}: list entry '{s}' is invalid")))
        })
        .collect()
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

impl RunConfig {
    /// Parses `key = value` lines on top of the defaults. Blank lines and
    /// `#` comments are skipped; unknown and repeated keys are errors.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = RunConfig::default();
        let mut seen = std::collections::BTreeSet::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected 'key = value', got '{line}'", lineno + 1)))?;
            let (key, value) = (key.trim(), value.trim());
            if !seen.insert(key.to_string()) {
                return Err(Error::Config(format!("line {}: duplicate key '{key}'", lineno + 1)));
            }
            cfg.set(key, value)
                .map_err(|e| Error::Config(format!("line {}: {}", lineno + 1, e.message())))?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text)
    }

    fn set(&mut self, key: &str, v: &str) -> Result<()> {
        match key {
            "nu_ratio" => self.nu_ratio = parse_f64(key, v)?,
            "omega_a_ratio" => self.omega_a_ratio = parse_f64(key, v)?,
            "rabi_ratio" => self.rabi_ratio = parse_f64(key, v)?,
            "eta" => self.eta = parse_f64(key, v)?,
            "alpha" => self.alpha = parse_f64(key, v)?,
            "fock_dim" => self.fock_dim = parse_usize(key, v)?,
            "eta_min" => self.eta_min = parse_f64(key, v)?,
            "eta_max" => self.eta_max = parse_f64(key, v)?,
            "eta_steps" => self.eta_steps = parse_usize(key, v)?,
            "alpha_min" => self.alpha_min = parse_f64(key, v)?,
            "alpha_max" => self.alpha_max = parse_f64(key, v)?,
            "alpha_steps" => self.alpha_steps = parse_usize(key, v)?,
            "alpha_curve_steps" => self.alpha_curve_steps = parse_usize(key, v)?,
            "k_list" => self.k_list = parse_list(key, v)?,
            "steps_per_period" => self.steps_per_period = parse_usize(key, v)?,
            "periods" => self.periods = parse_usize(key, v)?,
            "convergence_steps" => self.convergence_steps = parse_usize(key, v)?,
            "validate_etas" => self.validate_etas = parse_list(key, v)?,
            "validate_alphas" => self.validate_alphas = parse_list(key, v)?,
            "validate_ks" => self.validate_ks = parse_list(key, v)?,
            "negative_control_rabi" => self.negative_control_rabi = parse_f64(key, v)?,
            "relation_steps" => self.relation_steps = parse_usize(key, v)?,
            "output_dir" => self.output_dir = PathBuf::from(v),
            "output_format" => self.output_format = v.parse()?,
            _ => return Err(Error::Config(format!("unknown key '{key}'"))),
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        let cfg_err = |m: String| Err(Error::Config(m));
        self.params().validate().map_err(|e| Error::Config(e.message()))?;
        for (name, lo, hi, steps) in [
            ("eta", self.eta_min, self.eta_max, self.eta_steps),
            ("alpha", self.alpha_min, self.alpha_max, self.alpha_steps),
            ("alpha_curve", self.alpha_min, self.alpha_max, self.alpha_curve_steps),
        ] {
            if !(lo.is_finite() && hi.is_finite()) || lo < 0.0 {
                return cfg_err(format!("{name} bounds must be finite and >= 0"));
            }
            if lo >= hi {
                return cfg_err(format!("{name} bounds must increase, got [{lo}, {hi}]"));
            }
            if steps < 2 {
                return cfg_err(format!("{name} grid needs at least 2 steps, got {steps}"));
            }
        }
        if self.k_list.is_empty() {
            return cfg_err("k_list must not be empty".into());
        }
        if self.periods < 1 || self.steps_per_period < 1 || self.convergence_steps < 1 {
            return cfg_err("periods, steps_per_period and convergence_steps must be >= 1".into());
        }
        if self.validate_etas.is_empty() || self.validate_alphas.is_empty() || self.validate_ks.is_empty() {
            return cfg_err("validation grids must not be empty".into());
        }
        for &x in self
            .validate_etas
            .iter()
            .chain(&self.validate_alphas)
            .chain([&self.negative_control_rabi])
        {
            if !x.is_finite() || x < 0.0 {
                return cfg_err(format!("validation grid value {x} must be finite and >= 0"));
            }
        }
        if self.relation_steps < 2 {
            return cfg_err("relation_steps must be >= 2".into());
        }
        Ok(())
    }

    pub fn params(&self) -> SystemParams {
        SystemParams {
            nu_ratio: self.nu_ratio,
            omega_a_ratio: self.omega_a_ratio,
            rabi_ratio: self.rabi_ratio,
            eta: self.eta,
            alpha: self.alpha,
            fock_dim: self.fock_dim,
        }
    }

    pub fn validation(&self) -> ValidationConfig {
        ValidationConfig {
            base: self.params(),
            etas: self.validate_etas.clone(),
            alphas: self.validate_alphas.clone(),
            ks: self.validate_ks.clone(),
            negative_control_rabi: self.negative_control_rabi,
            dynamics_eta: self.eta,
            dynamics_alpha: self.alpha,
            periods: self.periods,
            steps_per_period: self.steps_per_period,
            convergence_steps: self.convergence_steps,
            relation_steps: self.relation_steps,
            reading_samples: self.alpha_curve_steps,
            ..ValidationConfig::default()
        }
    }

    /// Every key with its effective value, sorted by key. Output location
    /// and format are left out so they do not change file contents.
    pub fn echo(&self) -> BTreeMap<&'static str, String> {
        let mut m = BTreeMap::new();
        m.insert("nu_ratio", self.nu_ratio.to_string());
        m.insert("omega_a_ratio", self.omega_a_ratio.to_string());
        m.insert("rabi_ratio", self.rabi_ratio.to_string());
        m.insert("eta", self.eta.to_string());
        m.insert("alpha", self.alpha.to_string());
        m.insert("fock_dim", self.fock_dim.to_string());
        m.insert("eta_min", self.eta_min.to_string());
        m.insert("eta_max", self.eta_max.to_string());
        m.insert("eta_steps", self.eta_steps.to_string());
        m.insert("alpha_min", self.alpha_min.to_string());
        m.insert("alpha_max", self.alpha_max.to_string());
        m.insert("alpha_steps", self.alpha_steps.to_string());
        m.insert("alpha_curve_steps", self.alpha_curve_steps.to_string());
        m.insert("k_list", join(&self.k_list));
        m.insert("steps_per_period", self.steps_per_period.to_string());
        m.insert("periods", self.periods.to_string());
        m.insert("convergence_steps", self.convergence_steps.to_string());
        m.insert("validate_etas", join(&self.validate_etas));
        m.insert("validate_alphas", join(&self.validate_alphas));
        m.insert("validate_ks", join(&self.validate_ks));
        m.insert("negative_control_rabi", self.negative_control_rabi.to_string());
        m.insert("relation_steps", self.relation_steps.to_string());
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_text_gives_defaults() {
        assert_eq!(RunConfig::parse("# nothing\n\n").unwrap(), RunConfig::default());
    }

    #[test]
    fn parses_values_and_lists() {
        let cfg =
            RunConfig::parse("eta = 0.5 # trailing\nk_list = 1, 3\noutput_format = json\nfock_dim=120\n").unwrap();
        assert_eq!(cfg.eta, 0.5);
        assert_eq!(cfg.k_list, vec![1, 3]);
        assert_eq!(cfg.output_format, OutputFormat::Json);
        assert_eq!(cfg.fock_dim, 120);
    }

    #[test]
    fn rejects_unknown_duplicate_and_malformed() {
        for bad in [
            "etta = 0.1",
            "eta = 0.1\neta = 0.2",
            "eta 0.1",
            "eta = abc",
            "k_list =",
            "eta_min = 1\neta_max = 0.5",
            "alpha_steps = 1",
            "rabi_ratio = -1",
            "output_format = xml",
        ] {
            let err = RunConfig::parse(bad).unwrap_err();
            assert!(matches!(err, Error::Config(_)), "{bad}: {err}");
        }
    }

    #[test]
    fn echo_round_trips() {
        let cfg = RunConfig::parse("eta = 0.25\nvalidate_ks = 0,2\n").unwrap();
        let text: String = cfg.echo().iter().map(|(k, v)| format!("{k} = {v}\n")).collect();
        let again = RunConfig::parse(&text).unwrap();
        assert_eq!(again, cfg);
    }
}
