//! Experiment configuration: code specifications, stop rules, and the
//! per-experiment parameter blocks serialized into run manifests.

use crate::codes::{build_bicycle_code, build_peg_regular, ClassicalCode, StabilizerCode};
use crate::estimation::ProbeScheme;
use serde::{Deserialize, Serialize};

use super::SimError;

/// How a code is obtained: constructed from a family or loaded from disk.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum CodeSpec {
    Peg {
        n: usize,
        col_weight: usize,
        row_weight: usize,
        seed: u64,
    },
    Bicycle {
        n: usize,
        row_weight: usize,
        k_target: usize,
        seed: u64,
    },
    ClassicalFile {
        path: String,
    },
    StabilizerFile {
        path: String,
    },
}

impl CodeSpec {
    /// Parse the compact CLI form:
    /// `peg:N,wc,wr[,seed]`, `bicycle:N,wr,K[,seed]`,
    /// `file:path.alist`, `qfile:path.qalist`.
    pub fn parse(s: &str) -> Result<Self, SimError> {
        let bad = |reason: String| Err(SimError::Config { reason });
        let Some((kind, rest)) = s.split_once(':') else {
            return bad(format!("code spec '{s}' needs a 'family:params' form"));
        };
        match kind {
            "file" => Ok(CodeSpec::ClassicalFile { path: rest.to_string() }),
            "qfile" => Ok(CodeSpec::StabilizerFile { path: rest.to_string() }),
            "peg" | "bicycle" => {
                let nums: Vec<u64> = rest
                    .split(',')
                    .map(|t| t.trim().parse::<u64>())
                    .collect::<Result<_, _>>()
                    .map_err(|e| SimError::Config {
                        reason: format!("bad number in code spec '{s}': {e}"),
                    })?;
                if nums.len() < 3 || nums.len() > 4 {
                    return bad(format!("code spec '{s}' needs 3 or 4 numbers"));
                }
                let seed = nums.get(3).copied().unwrap_or(1);
                if kind == "peg" {
                    Ok(CodeSpec::Peg {
                        n: nums[0] as usize,
                        col_weight: nums[1] as usize,
                        row_weight: nums[2] as usize,
                        seed,
                    })
                } else {
                    Ok(CodeSpec::Bicycle {
                        n: nums[0] as usize,
                        row_weight: nums[1] as usize,
                        k_target: nums[2] as usize,
                        seed,
                    })
                }
            }
            other => bad(format!("unknown code family '{other}'")),
        }
    }

    pub fn build_classical(&self) -> Result<ClassicalCode, SimError> {
        match self {
            CodeSpec::Peg {
                n,
                col_weight,
                row_weight,
                seed,
            } => Ok(build_peg_regular(*n, *col_weight, *row_weight, *seed)?),
            CodeSpec::ClassicalFile { path } => {
                let text = std::fs::read_to_string(path)?;
                let h = crate::alist::parse_alist(&text)?;
                Ok(ClassicalCode::new(h)?)
            }
            other => Err(SimError::Config {
                reason: format!("{other:?} does not describe a classical code"),
            }),
        }
    }

    pub fn build_stabilizer(&self) -> Result<StabilizerCode, SimError> {
        match self {
            CodeSpec::Bicycle {
                n,
                row_weight,
                k_target,
                seed,
            } => Ok(build_bicycle_code(*n, *row_weight, *k_target, *seed)?),
            CodeSpec::StabilizerFile { path } => {
                let text = std::fs::read_to_string(path)?;
                let (_, _, a1, a2) = crate::alist::parse_paired_alist(&text)?;
                Ok(StabilizerCode::from_parts(a1, a2)?)
            }
            other => Err(SimError::Config {
                reason: format!("{other:?} does not describe a stabilizer code"),
            }),
        }
    }
}

/// Noise generation mode; fixed weight pins the error weight at
/// `round(p N)` per trial.
#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq, Eq, Default)]
#[serde(rename_all = "snake_case")]
pub enum NoiseMode {
    #[default]
    FixedWeight,
    Iid,
}

impl NoiseMode {
    pub fn parse(s: &str) -> Result<Self, SimError> {
        match s.trim().to_ascii_lowercase().as_str() {
            "fixed" | "fixed_weight" | "fixed-weight" => Ok(Self::FixedWeight),
            "iid" | "i.i.d." => Ok(Self::Iid),
            other => Err(SimError::Config {
                reason: format!("unknown noise mode '{other}'"),
            }),
        }
    }
}

/// Trial budget per grid point.
#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq, Eq)]
pub struct StopRule {
    pub target_block_errors: u64,
    pub max_trials: u64,
}

impl StopRule {
    pub fn validate(&self) -> Result<(), SimError> {
        if self.target_block_errors == 0 || self.max_trials == 0 {
            return Err(SimError::Config {
                reason: "stop rule must be positive".to_string(),
            });
        }
        Ok(())
    }
}

impl Default for StopRule {
    fn default() -> Self {
        Self {
            target_block_errors: 100,
            max_trials: 200_000,
        }
    }
}

fn default_max_iters() -> usize {
    200
}

/// Assumed-noise sweep for a classical code over the BSC.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ClassicalMismatchConfig {
    pub code: CodeSpec,
    pub p_true: f64,
    pub assumed_grid: Vec<f64>,
    #[serde(default)]
    pub noise: NoiseMode,
    #[serde(default)]
    pub stop: StopRule,
    #[serde(default = "default_max_iters")]
    pub max_iters: usize,
    pub master_seed: u64,
}

impl Default for ClassicalMismatchConfig {
    fn default() -> Self {
        Self {
            code: CodeSpec::Peg {
                n: 2040,
                col_weight: 3,
                row_weight: 6,
                seed: 1,
            },
            p_true: 0.07,
            assumed_grid: grid(0.02, 0.16, 0.01),
            noise: NoiseMode::FixedWeight,
            stop: StopRule::default(),
            max_iters: 200,
            master_seed: 1,
        }
    }
}

impl ClassicalMismatchConfig {
    pub fn validate(&self) -> Result<(), SimError> {
        self.stop.validate()?;
        if !(0.0..0.5).contains(&self.p_true) {
            return Err(SimError::Config {
                reason: format!("p_true {} outside [0, 1/2)", self.p_true),
            });
        }
        if self.assumed_grid.is_empty()
            || self
                .assumed_grid
                .iter()
                .any(|p| !(0.0 < *p && *p < 1.0))
        {
            return Err(SimError::Config {
                reason: "assumed grid must be non-empty with values in (0, 1)".to_string(),
            });
        }
        Ok(())
    }
}

/// Assumed-flip-probability sweep for a stabilizer code over the
/// depolarizing channel.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct QuantumMismatchConfig {
    pub code: CodeSpec,
    pub f_true: f64,
    pub assumed_grid: Vec<f64>,
    #[serde(default)]
    pub noise: NoiseMode,
    #[serde(default)]
    pub stop: StopRule,
    #[serde(default = "default_max_iters")]
    pub max_iters: usize,
    pub master_seed: u64,
}

impl Default for QuantumMismatchConfig {
    fn default() -> Self {
        Self {
            code: CodeSpec::Bicycle {
                n: 1034,
                row_weight: 8,
                k_target: 517,
                seed: 1,
            },
            f_true: 0.02,
            assumed_grid: grid(0.005, 0.06, 0.0025),
            noise: NoiseMode::FixedWeight,
            stop: StopRule::default(),
            max_iters: 200,
            master_seed: 1,
        }
    }
}

impl QuantumMismatchConfig {
    pub fn validate(&self) -> Result<(), SimError> {
        self.stop.validate()?;
        if !(0.0..=0.75).contains(&self.f_true) {
            return Err(SimError::Config {
                reason: format!("f_true {} outside [0, 3/4]", self.f_true),
            });
        }
        if self.assumed_grid.is_empty()
            || self
                .assumed_grid
                .iter()
                .any(|f| !(0.0 < *f && *f < 0.75))
        {
            return Err(SimError::Config {
                reason: "assumed grid must be non-empty with values in (0, 3/4)".to_string(),
            });
        }
        Ok(())
    }
}

/// Three-arm comparison (perfect knowledge / estimated / weighted
/// overestimate) over a grid of true flip probabilities.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ImprovedConfig {
    pub code: CodeSpec,
    pub f_true_grid: Vec<f64>,
    pub scheme: ProbeScheme,
    /// Number of independent probe measurements; `None` uses the block
    /// length.
    pub n_probes: Option<usize>,
    pub delta_ratio: f64,
    pub f_cap: f64,
    #[serde(default)]
    pub noise: NoiseMode,
    #[serde(default)]
    pub stop: StopRule,
    #[serde(default = "default_max_iters")]
    pub max_iters: usize,
    pub master_seed: u64,
}

impl Default for ImprovedConfig {
    fn default() -> Self {
        Self {
            code: CodeSpec::Bicycle {
                n: 1034,
                row_weight: 8,
                k_target: 517,
                seed: 1,
            },
            f_true_grid: vec![0.010, 0.015, 0.020, 0.025, 0.030],
            scheme: ProbeScheme::Entangled,
            n_probes: None,
            delta_ratio: 0.5,
            f_cap: 0.0417,
            noise: NoiseMode::FixedWeight,
            stop: StopRule::default(),
            max_iters: 200,
            master_seed: 1,
        }
    }
}

impl ImprovedConfig {
    pub fn validate(&self) -> Result<(), SimError> {
        self.stop.validate()?;
        if self.f_true_grid.is_empty()
            || self
                .f_true_grid
                .iter()
                .any(|f| !(0.0 < *f && *f < 0.75))
        {
            return Err(SimError::Config {
                reason: "f_true grid must be non-empty with values in (0, 3/4)".to_string(),
            });
        }
        if self.delta_ratio < 0.0 || !self.delta_ratio.is_finite() {
            return Err(SimError::Config {
                reason: format!("delta ratio {} must be finite and >= 0", self.delta_ratio),
            });
        }
        if !(0.0..=0.75).contains(&self.f_cap) {
            return Err(SimError::Config {
                reason: format!("f_cap {} outside [0, 3/4]", self.f_cap),
            });
        }
        Ok(())
    }
}

/// Cost-function scan over the overestimation ratio.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct FitDeltaConfig {
    pub base: ImprovedConfig,
    pub delta_grid: Vec<f64>,
}

impl Default for FitDeltaConfig {
    fn default() -> Self {
        Self {
            base: ImprovedConfig {
                f_true_grid: vec![0.02],
                ..ImprovedConfig::default()
            },
            delta_grid: vec![0.0, 0.2, 0.4, 0.6, 0.8, 1.0, 1.2],
        }
    }
}

impl FitDeltaConfig {
    pub fn validate(&self) -> Result<(), SimError> {
        self.base.validate()?;
        if self.delta_grid.len() < 5 {
            return Err(SimError::Config {
                reason: "delta grid needs at least 5 points".to_string(),
            });
        }
        if self.delta_grid.iter().any(|d| !(0.0..=1.2).contains(d)) {
            return Err(SimError::Config {
                reason: "delta grid values must lie in [0, 1.2]".to_string(),
            });
        }
        if self.base.f_true_grid.len() != 1 {
            return Err(SimError::Config {
                reason: "delta fit runs at a single fixed f_true".to_string(),
            });
        }
        Ok(())
    }
}

/// Tagged union of the run configurations, as stored in run manifests.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "experiment", rename_all = "snake_case")]
pub enum ExperimentConfig {
    ClassicalMismatch(ClassicalMismatchConfig),
    QuantumMismatch(QuantumMismatchConfig),
    ImprovedComparison(ImprovedConfig),
    FitDelta(FitDeltaConfig),
}

/// Inclusive float grid `start, start+step, ..., <= stop (+ tolerance)`.
pub fn grid(start: f64, stop: f64, step: f64) -> Vec<f64> {
    assert!(step > 0.0, "grid step must be positive");
    let mut out = Vec::new();
    let mut k = 0u32;
    loop {
        let v = start + f64::from(k) * step;
        if v > stop + step * 1e-9 {
            break;
        }
        out.push(v);
        k += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_endpoints_are_included() {
        let g = grid(0.02, 0.16, 0.01);
        assert_eq!(g.len(), 15);
        assert!((g[0] - 0.02).abs() < 1e-12);
        assert!((g[14] - 0.16).abs() < 1e-12);
        let g = grid(0.005, 0.06, 0.0025);
        assert_eq!(g.len(), 23);
        assert!((g[22] - 0.06).abs() < 1e-12);
        assert!(g.iter().any(|v| (v - 0.055).abs() < 1e-12));
    }

    #[test]
    fn code_spec_parsing() {
        assert_eq!(
            CodeSpec::parse("peg:2040,3,6").unwrap(),
            CodeSpec::Peg {
                n: 2040,
                col_weight: 3,
                row_weight: 6,
                seed: 1
            }
        );
        assert_eq!(
            CodeSpec::parse("bicycle:1034,8,517,9").unwrap(),
            CodeSpec::Bicycle {
                n: 1034,
                row_weight: 8,
                k_target: 517,
                seed: 9
            }
        );
        assert!(matches!(
            CodeSpec::parse("qfile:some/code.qalist").unwrap(),
            CodeSpec::StabilizerFile { .. }
        ));
        assert!(CodeSpec::parse("peg:2040,3").is_err());
        assert!(CodeSpec::parse("surface:3").is_err());
        assert!(CodeSpec::parse("2040,3,6").is_err());
    }

    #[test]
    fn validation_catches_bad_configs() {
        let cfg = QuantumMismatchConfig {
            assumed_grid: vec![0.8],
            ..QuantumMismatchConfig::default()
        };
        assert!(cfg.validate().is_err());
        let mut cfg = ClassicalMismatchConfig::default();
        cfg.stop.target_block_errors = 0;
        assert!(cfg.validate().is_err());
        let cfg = FitDeltaConfig {
            delta_grid: vec![0.0, 0.5],
            ..FitDeltaConfig::default()
        };
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn config_json_roundtrip() {
        let cfg = ExperimentConfig::ImprovedComparison(ImprovedConfig::default());
        let text = serde_json::to_string_pretty(&cfg).unwrap();
        let back: ExperimentConfig = serde_json::from_str(&text).unwrap();
        assert_eq!(back, cfg);
    }
}
