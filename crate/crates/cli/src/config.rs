//! Flag and config-file handling.
//!
//! Every experiment shares one flat key space. A config file holds
//! `key = value` lines with `#` comments; command-line flags override file
//! values. Unknown keys are rejected.

use std::f64::consts::PI;
use std::fmt;
use std::path::PathBuf;

use clap::Args;
use fiqs_core::{CouplingModel, DecayKind, DecayLaw, PairForm};

/// Errors split by exit code: configuration problems exit 2, runtime or
/// numeric failures exit 1.
#[derive(Debug)]
pub enum CliError {
    Config(String),
    Runtime(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(msg) | CliError::Runtime(msg) => write!(f, "{msg}"),
        }
    }
}

impl From<fiqs_core::Error> for CliError {
    fn from(err: fiqs_core::Error) -> Self {
        CliError::Runtime(err.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// All experiment parameters; each experiment validates the subset it needs.
#[derive(Debug, Default, Clone, Args)]
pub struct RunConfig {
    /// Config file with `key = value` lines; flags override it.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Register size.
    #[arg(long)]
    pub l: Option<usize>,
    /// Plan mode: oracle | unit-yukawa | general | approx.
    #[arg(long)]
    pub mode: Option<String>,
    /// Transform direction: forward | inverse.
    #[arg(long)]
    pub direction: Option<String>,
    /// Poisson pulse rate.
    #[arg(long, allow_negative_numbers = true)]
    pub lambda: Option<f64>,
    /// Truncation threshold for approximate plans.
    #[arg(long, allow_negative_numbers = true)]
    pub threshold: Option<f64>,
    /// Seed count, or an explicit comma-separated seed list.
    #[arg(long)]
    pub seeds: Option<String>,
    /// First seed when `seeds` is a count.
    #[arg(long)]
    pub seed_base: Option<u64>,
    /// Separated pair, e.g. `3,1`.
    #[arg(long)]
    pub pair: Option<String>,
    /// Decoupling window length.
    #[arg(long, allow_negative_numbers = true)]
    pub duration: Option<f64>,
    /// Quadratic targets `j,k,c` separated by `;`.
    #[arg(long)]
    pub targets: Option<String>,
    /// Pair form: a | b.
    #[arg(long)]
    pub form: Option<String>,
    /// Form-A coupling strength.
    #[arg(long, allow_negative_numbers = true)]
    pub rho: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub rho1: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub rho2: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub rho3: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub rho4: Option<f64>,
    /// Decay law: yukawa2 | yukawa | power.
    #[arg(long)]
    pub decay: Option<String>,
    /// Coupling amplitude.
    #[arg(long, allow_negative_numbers = true)]
    pub rho0: Option<f64>,
    /// Natural-Yukawa exponent.
    #[arg(long, allow_negative_numbers = true)]
    pub b: Option<f64>,
    /// Power-law exponent.
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    /// Potential: free | linear | harmonic.
    #[arg(long)]
    pub potential: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    pub mass: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub omega: Option<f64>,
    /// Linear-potential slope (V = -f q).
    #[arg(long, allow_negative_numbers = true)]
    pub f: Option<f64>,
    /// Initial packet width.
    #[arg(long, allow_negative_numbers = true)]
    pub sigma: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub q0: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub p0: Option<f64>,
    /// Trotter step.
    #[arg(long, allow_negative_numbers = true)]
    pub dt: Option<f64>,
    /// Total evolution time.
    #[arg(long, allow_negative_numbers = true)]
    pub t: Option<f64>,
    /// Kinetic convention: centered | unsigned.
    #[arg(long)]
    pub convention: Option<String>,
    /// Transform backend: reference | pulse.
    #[arg(long)]
    pub backend: Option<String>,
    /// Times at which to dump the wavefunction, comma-separated.
    #[arg(long)]
    pub dump_times: Option<String>,
    /// Observable sampling stride in steps.
    #[arg(long)]
    pub sample_every: Option<usize>,
    /// Step sizes for the convergence study, comma-separated.
    #[arg(long)]
    pub dt_list: Option<String>,
    /// Output directory (default: env FIQS_OUT_DIR, then `.`).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl RunConfig {
    /// Loads the config file (when given) into unset fields.
    pub fn merge_file(&mut self) -> CliResult<()> {
        let Some(path) = self.config.clone() else {
            return Ok(());
        };
        let text = std::fs::read_to_string(&path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        for raw in text.lines() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::Config(format!("malformed line: {raw}")))?;
            self.set(key.trim(), value.trim())?;
        }
        Ok(())
    }

    fn set(&mut self, key: &str, value: &str) -> CliResult<()> {
        fn parse<T: std::str::FromStr>(key: &str, value: &str) -> CliResult<T> {
            value
                .parse()
                .map_err(|_| CliError::Config(format!("invalid value for {key}: {value}")))
        }
        macro_rules! fill {
            ($field:ident) => {
                if self.$field.is_none() {
                    self.$field = Some(parse(key, value)?);
                }
            };
        }
        match key {
            "l" => fill!(l),
            "mode" => fill!(mode),
            "direction" => fill!(direction),
            "lambda" => fill!(lambda),
            "threshold" => fill!(threshold),
            "seeds" => fill!(seeds),
            "seed-base" => fill!(seed_base),
            "pair" => fill!(pair),
            "duration" => fill!(duration),
            "targets" => fill!(targets),
            "form" => fill!(form),
            "rho" => fill!(rho),
            "rho1" => fill!(rho1),
            "rho2" => fill!(rho2),
            "rho3" => fill!(rho3),
            "rho4" => fill!(rho4),
            "decay" => fill!(decay),
            "rho0" => fill!(rho0),
            "b" => fill!(b),
            "alpha" => fill!(alpha),
            "potential" => fill!(potential),
            "mass" => fill!(mass),
            "omega" => fill!(omega),
            "f" => fill!(f),
            "sigma" => fill!(sigma),
            "q0" => fill!(q0),
            "p0" => fill!(p0),
            "dt" => fill!(dt),
            "t" => fill!(t),
            "convention" => fill!(convention),
            "backend" => fill!(backend),
            "dump-times" => fill!(dump_times),
            "sample-every" => fill!(sample_every),
            "dt-list" => fill!(dt_list),
            "out" => fill!(out),
            other => return Err(CliError::Config(format!("unknown key: {other}"))),
        }
        Ok(())
    }

    pub fn require<T: Clone>(field: &Option<T>, name: &str) -> CliResult<T> {
        field
            .clone()
            .ok_or_else(|| CliError::Config(format!("missing: {name}")))
    }

    /// Resolved seed list: either an explicit list or `seed-base..+count`.
    pub fn resolve_seeds(&self, default_count: u64) -> CliResult<Vec<u64>> {
        let base = self.seed_base.unwrap_or(0);
        match self.seeds.as_deref() {
            None => Ok((base..base + default_count).collect()),
            Some(s) if s.contains(',') => s
                .split(',')
                .map(|x| {
                    x.trim()
                        .parse()
                        .map_err(|_| CliError::Config(format!("invalid value for seeds: {x}")))
                })
                .collect(),
            Some(s) => {
                let count: u64 = s
                    .trim()
                    .parse()
                    .map_err(|_| CliError::Config(format!("invalid value for seeds: {s}")))?;
                Ok((base..base + count).collect())
            }
        }
    }

    /// Builds the coupling model from the coupling keys; defaults to the
    /// canonical base-2 Yukawa model at rho = rho0 = pi.
    pub fn build_model(&self) -> CliResult<CouplingModel> {
        let l = Self::require(&self.l, "l")?;
        let form = match self.form.as_deref().unwrap_or("a") {
            "a" => PairForm::FormA {
                rho: self.rho.unwrap_or(PI),
            },
            "b" => PairForm::FormB {
                rho: [
                    Self::require(&self.rho1, "rho1")?,
                    Self::require(&self.rho2, "rho2")?,
                    Self::require(&self.rho3, "rho3")?,
                    Self::require(&self.rho4, "rho4")?,
                ],
            },
            other => return Err(CliError::Config(format!("invalid value for form: {other}"))),
        };
        let kind = match self.decay.as_deref().unwrap_or("yukawa2") {
            "yukawa2" => DecayKind::YukawaBase2,
            "yukawa" => DecayKind::YukawaNatural {
                b: self.b.unwrap_or(1.0),
            },
            "power" => DecayKind::PowerLaw {
                alpha: self.alpha.unwrap_or(0.0),
            },
            other => {
                return Err(CliError::Config(format!("invalid value for decay: {other}")))
            }
        };
        let decay = DecayLaw {
            kind,
            rho0: self.rho0.unwrap_or(PI),
        };
        CouplingModel::new(l, form, decay).map_err(|e| CliError::Config(e.to_string()))
    }

    /// Output directory: flag, then FIQS_OUT_DIR, then the working directory.
    pub fn out_dir(&self) -> PathBuf {
        self.out
            .clone()
            .or_else(|| std::env::var_os("FIQS_OUT_DIR").map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from("."))
    }

    pub fn parse_pair(&self) -> CliResult<(usize, usize)> {
        let text = Self::require(&self.pair, "pair")?;
        let parts: Vec<&str> = text.split(',').map(str::trim).collect();
        if parts.len() != 2 {
            return Err(CliError::Config(format!("invalid value for pair: {text}")));
        }
        let j = parts[0]
            .parse()
            .map_err(|_| CliError::Config(format!("invalid value for pair: {text}")))?;
        let k = parts[1]
            .parse()
            .map_err(|_| CliError::Config(format!("invalid value for pair: {text}")))?;
        Ok((j, k))
    }

    /// Parses `j,k,c;j,k,c;...` target lists.
    pub fn parse_targets(&self) -> CliResult<Vec<(usize, usize, f64)>> {
        let text = Self::require(&self.targets, "targets")?;
        let mut out = Vec::new();
        for chunk in text.split(';') {
            let parts: Vec<&str> = chunk.split(',').map(str::trim).collect();
            if parts.len() != 3 {
                return Err(CliError::Config(format!("invalid value for targets: {chunk}")));
            }
            let j = parts[0]
                .parse()
                .map_err(|_| CliError::Config(format!("invalid value for targets: {chunk}")))?;
            let k = parts[1]
                .parse()
                .map_err(|_| CliError::Config(format!("invalid value for targets: {chunk}")))?;
            let c = parts[2]
                .parse()
                .map_err(|_| CliError::Config(format!("invalid value for targets: {chunk}")))?;
            out.push((j, k, c));
        }
        Ok(out)
    }

    pub fn parse_float_list(text: &str, key: &str) -> CliResult<Vec<f64>> {
        text.split(',')
            .map(|x| {
                x.trim()
                    .parse()
                    .map_err(|_| CliError::Config(format!("invalid value for {key}: {x}")))
            })
            .collect()
    }
}
