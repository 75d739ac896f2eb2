use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use sha2::{Digest, Sha256};
use thinex_core::spec_file::{MeasureSpec, SpecFile};

use crate::error::CliError;

/// Largest group a measure construction may allocate.
pub const MEASURE_CAP: usize = 1_000_000;
/// Largest group a certificate may be computed on.
pub const CERTIFICATE_CAP: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    FactorNorms,
    ProductMeasure,
    SeriesSweep,
    CircleMeasure,
    Saeki,
    Cutoffs,
    Certify,
    Induce,
    Symbol,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ToleranceProfile {
    Default,
    Strict,
}

#[derive(Debug, Parser)]
#[command(name = "thinex", version, about = "Thin invariant exhaustions and singular measures on finite models")]
pub struct Cli {
    pub command: Command,
    /// Measure spec file (flat key = value).
    #[arg(long)]
    pub spec: Option<PathBuf>,
    /// Report destination; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Exponent p, repeatable.
    #[arg(long = "p")]
    pub p_values: Vec<f64>,
    #[arg(long)]
    pub depth: Option<usize>,
    #[arg(long)]
    pub resolution: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = ToleranceProfile::Default)]
    pub tolerance_profile: ToleranceProfile,
    /// Spec keys given inline, e.g. `c=4 p=3`; they override the spec file.
    #[arg(value_name = "KEY=VALUE")]
    pub overrides: Vec<String>,
}

/// Comparison tolerances for one run.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct Tolerances {
    pub closed_form_rel: f64,
    pub product_norm_rel: f64,
    pub probability_abs: f64,
    pub saeki_rel: f64,
    pub telescoping_abs: f64,
    pub annihilation_abs: f64,
    pub refinement_factor: f64,
}

impl Tolerances {
    pub fn for_profile(profile: ToleranceProfile) -> Self {
        match profile {
            ToleranceProfile::Default => Tolerances {
                closed_form_rel: 1e-12,
                product_norm_rel: 1e-9,
                probability_abs: 1e-12,
                saeki_rel: 1e-12,
                telescoping_abs: 1e-10,
                annihilation_abs: 1e-10,
                refinement_factor: 2.0,
            },
            ToleranceProfile::Strict => Tolerances {
                closed_form_rel: 1e-14,
                product_norm_rel: 1e-11,
                probability_abs: 1e-14,
                saeki_rel: 1e-14,
                telescoping_abs: 1e-12,
                annihilation_abs: 1e-12,
                refinement_factor: 1.5,
            },
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub keys: SpecFile,
    pub spec_sha256: Option<String>,
    pub out: Option<PathBuf>,
    p_flag: Vec<f64>,
    pub depth: Option<usize>,
    pub resolution: Option<usize>,
    pub seed: u64,
    pub profile: ToleranceProfile,
    pub tol: Tolerances,
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self, CliError> {
        let (mut keys, spec_sha256) = match &cli.spec {
            Some(path) => {
                let bytes = std::fs::read(path)
                    .map_err(|e| CliError::Config(format!("--spec: cannot read {}: {e}", path.display())))?;
                let text = String::from_utf8(bytes.clone())
                    .map_err(|_| CliError::Config("--spec: file is not UTF-8".into()))?;
                let keys: SpecFile = text.parse().map_err(|e| CliError::Config(format!("--spec: {e}")))?;
                (keys, Some(hex::encode(Sha256::digest(&bytes))))
            }
            None => (SpecFile::default(), None),
        };
        for item in &cli.overrides {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| CliError::Config(format!("argument {item:?}: expected KEY=VALUE")))?;
            keys.set(k.trim(), v.trim());
        }
        let config = RunConfig {
            command: cli.command,
            keys,
            spec_sha256,
            out: cli.out,
            p_flag: cli.p_values,
            depth: cli.depth,
            resolution: cli.resolution,
            seed: cli.seed,
            profile: cli.tolerance_profile,
            tol: Tolerances::for_profile(cli.tolerance_profile),
        };
        if let Some(p) = config.p_flag.iter().find(|p| !(p.is_finite() && **p > 1.0)) {
            return Err(CliError::Config(format!("--p: {p} is not in (1, inf)")));
        }
        Ok(config)
    }

    /// `--p` values, else key `p`, else `default`; all must lie in `(1, ∞)`.
    pub fn p_values(&self, default: &[f64]) -> Result<Vec<f64>, CliError> {
        let values = if !self.p_flag.is_empty() {
            self.p_flag.clone()
        } else {
            self.keys.list::<f64>("p").map_err(CliError::config)?.unwrap_or_else(|| default.to_vec())
        };
        if values.is_empty() {
            return Err(CliError::Config("key p: empty list".into()));
        }
        if let Some(p) = values.iter().find(|p| !(p.is_finite() && **p > 1.0)) {
            return Err(CliError::Config(format!("key p: {p} is not in (1, inf)")));
        }
        let mut sorted = values;
        sorted.sort_by(f64::total_cmp);
        sorted.dedup();
        Ok(sorted)
    }

    /// The measure described by the keys, with `--depth` standing in for `J`
    /// and `--resolution` for `N`.
    pub fn measure(&self) -> Result<MeasureSpec, CliError> {
        let mut keys = self.keys.clone();
        if keys.get("kind").is_none() {
            keys.set("kind", "product");
        }
        if let Some(d) = self.depth {
            if keys.get("kind") == Some("product") && keys.get("blocks").is_none() {
                keys.set("J", &d.to_string());
            }
        }
        if let Some(n) = self.resolution {
            keys.set("N", &n.to_string());
        }
        keys.measure().map_err(CliError::config)
    }

    pub fn header(&self) -> String {
        let profile = match self.profile {
            ToleranceProfile::Default => "default",
            ToleranceProfile::Strict => "strict",
        };
        let command = self.command.to_possible_value().expect("no skipped variants").get_name().to_string();
        format!(
            "# thinex {command} seed={} tolerance_profile={profile} spec_sha256={}",
            self.seed,
            self.spec_sha256.as_deref().unwrap_or("none")
        )
    }
}
