//! The experiments: classical and quantum assumed-noise sweeps, the
//! three-arm improved-decoder comparison, and the overestimation-ratio
//! cost fit.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;

use crate::channels::{shannon_limit_bsc, BscChannel, DepolarizingChannel};
use crate::codes::{ClassicalCode, StabilizerCode};
use crate::decoders::{
    classify_residual_with, BinaryTanner, BscDecoder, DepolarizingDecoder, PauliTanner,
    ResidualClass,
};
use crate::estimation::{improved_estimate, EstimatorModel, MismatchPolicy};
use crate::gf2::BinaryVector;
use crate::pauli::PauliVector;

use super::config::{
    ClassicalMismatchConfig, ExperimentConfig, FitDeltaConfig, ImprovedConfig, NoiseMode,
    QuantumMismatchConfig,
};
use super::engine::{run_point, run_point_arms};
use super::fit::{fit_quadratic_vertex, FitOutcome};
use super::seeding::{derive_rng, domain};
use super::stats::{CurveResult, PointSummary, TrialOutcome};
use super::SimError;

/// Decoder validity clamp for estimator draws: the quaternary decoder
/// needs an assumed flip probability strictly inside (0, 3/4).
const ASSUMED_MIN: f64 = 1e-6;
const ASSUMED_MAX: f64 = 0.75 - 1e-6;

fn clamp_assumed(f: f64) -> f64 {
    f.clamp(ASSUMED_MIN, ASSUMED_MAX)
}

/// A finished sweep: one or more labeled curves over a grid, plus the
/// metadata needed to reproduce it.
#[derive(Debug, Clone, Serialize)]
pub struct SweepResult {
    pub config: ExperimentConfig,
    /// Name of the swept quantity (`p_hat`, `f_hat`, or `f_true`).
    pub grid_label: String,
    pub block_length: usize,
    pub master_seed: u64,
    /// Content hash of the code matrices actually used.
    pub code_hash: String,
    pub annotations: BTreeMap<String, f64>,
    pub curves: Vec<CurveResult>,
    pub wall_time_ms: u128,
}

impl SweepResult {
    pub fn curve(&self, label: &str) -> Option<&CurveResult> {
        self.curves.iter().find(|c| c.label == label)
    }
}

fn stabilizer_hash(code: &StabilizerCode) -> String {
    let h = code.a1().content_hash() ^ code.a2().content_hash().rotate_left(17);
    format!("{h:016x}")
}

/// Block error probability of a classical code as a function of the
/// assumed BSC crossover probability, at a fixed true noise level.
pub fn run_classical_mismatch(
    cfg: &ClassicalMismatchConfig,
) -> Result<SweepResult, SimError> {
    cfg.validate()?;
    let start = Instant::now();
    let code: ClassicalCode = cfg.code.build_classical()?;
    let graph = BinaryTanner::new(code.h());
    let channel = BscChannel::new(cfg.p_true)?;
    let n = code.n();

    let mut points = Vec::with_capacity(cfg.assumed_grid.len());
    for &p_hat in &cfg.assumed_grid {
        // The assumed probability is decoder-side only, so every grid
        // point sees the same noise realizations: paired comparisons
        // across the sweep.
        let acc = run_point(&cfg.stop, |trial| {
            let mut rng = derive_rng(cfg.master_seed, &[domain::CLASSICAL_MISMATCH, trial]);
            let e = match cfg.noise {
                NoiseMode::FixedWeight => channel.sample_fixed_weight(n, &mut rng),
                NoiseMode::Iid => channel.sample_iid(n, &mut rng),
            };
            let s = code.syndrome(&e).expect("lengths agree");
            let mut decoder = BscDecoder::new(&graph, cfg.max_iters);
            let r = decoder.decode(p_hat, &s).expect("config validated");
            classical_outcome(&r.error_estimate, &e, r.converged, r.iterations_used)
        });
        points.push(PointSummary::from_accumulator(p_hat, None, n, &acc));
    }

    let mut annotations = BTreeMap::new();
    annotations.insert("p_true".to_string(), cfg.p_true);
    annotations.insert("code_rate".to_string(), code.rate());
    annotations.insert(
        "shannon_limit".to_string(),
        shannon_limit_bsc(code.rate())?,
    );
    if let Some(g) = code.girth() {
        annotations.insert("girth".to_string(), g as f64);
    }

    Ok(SweepResult {
        config: ExperimentConfig::ClassicalMismatch(cfg.clone()),
        grid_label: "p_hat".to_string(),
        block_length: n,
        master_seed: cfg.master_seed,
        code_hash: format!("{:016x}", code.h().content_hash()),
        annotations,
        curves: vec![CurveResult {
            label: "classical".to_string(),
            points,
        }],
        wall_time_ms: start.elapsed().as_millis(),
    })
}

fn classical_outcome(
    estimate: &BinaryVector,
    truth: &BinaryVector,
    converged: bool,
    iterations: usize,
) -> TrialOutcome {
    let block_error = !converged;
    TrialOutcome {
        block_error,
        logical_failure: converged && estimate != truth,
        residual_weight: if block_error {
            estimate.xor(truth).weight() as u64
        } else {
            0
        },
        iterations: iterations as u64,
    }
}

/// Block error probability of a stabilizer code as a function of the
/// assumed flip probability, at a fixed true flip probability.
pub fn run_quantum_mismatch(cfg: &QuantumMismatchConfig) -> Result<SweepResult, SimError> {
    cfg.validate()?;
    let start = Instant::now();
    let code = cfg.code.build_stabilizer()?;
    let graph = PauliTanner::new(&code);
    let generator_space = code.generator_row_space();
    let channel = DepolarizingChannel::from_flip_probability(cfg.f_true)?;
    let n = code.n();

    let mut points = Vec::with_capacity(cfg.assumed_grid.len());
    for &f_hat in &cfg.assumed_grid {
        // Same noise realizations at every assumed value, as in the
        // classical sweep.
        let acc = run_point(&cfg.stop, |trial| {
            let mut rng = derive_rng(cfg.master_seed, &[domain::QUANTUM_MISMATCH, trial]);
            let e = match cfg.noise {
                NoiseMode::FixedWeight => channel.sample_fixed_weight(n, &mut rng),
                NoiseMode::Iid => channel.sample_iid(n, &mut rng),
            };
            let s = code.syndrome(&e).expect("lengths agree");
            let mut decoder = DepolarizingDecoder::new(&graph, cfg.max_iters);
            let r = decoder.decode(f_hat, &s).expect("config validated");
            quantum_outcome(&code, &generator_space, &e, &r.error_estimate, r.converged, r.iterations_used)
        });
        points.push(PointSummary::from_accumulator(
            f_hat,
            Some(4.0 * f_hat / 3.0),
            n,
            &acc,
        ));
    }

    let mut annotations = BTreeMap::new();
    annotations.insert("f_true".to_string(), cfg.f_true);
    annotations.insert("f_true_fd".to_string(), 4.0 * cfg.f_true / 3.0);
    annotations.insert("quantum_rate".to_string(), code.rate());
    if let Some((h, _)) = code.css_blocks() {
        let sector_rate = (n - h.rows()) as f64 / n as f64;
        annotations.insert("sector_rate".to_string(), sector_rate);
        annotations.insert(
            "sector_shannon_limit".to_string(),
            shannon_limit_bsc(sector_rate)?,
        );
    }

    Ok(SweepResult {
        config: ExperimentConfig::QuantumMismatch(cfg.clone()),
        grid_label: "f_hat".to_string(),
        block_length: n,
        master_seed: cfg.master_seed,
        code_hash: stabilizer_hash(&code),
        annotations,
        curves: vec![CurveResult {
            label: "quantum".to_string(),
            points,
        }],
        wall_time_ms: start.elapsed().as_millis(),
    })
}

fn quantum_outcome(
    code: &StabilizerCode,
    generator_space: &crate::gf2::RowSpace,
    truth: &PauliVector,
    estimate: &PauliVector,
    converged: bool,
    iterations: usize,
) -> TrialOutcome {
    let block_error = !converged;
    let logical_failure = converged
        && matches!(
            classify_residual_with(code, generator_space, truth, estimate)
                .expect("converged estimate shares the syndrome"),
            ResidualClass::LogicalFailure
        );
    TrialOutcome {
        block_error,
        logical_failure,
        residual_weight: if block_error {
            truth.compose(estimate).expect("lengths agree").weight() as u64
        } else {
            0
        },
        iterations: iterations as u64,
    }
}

pub const CURVE_BASELINE: &str = "baseline";
pub const CURVE_NAIVE: &str = "naive";
pub const CURVE_IMPROVED: &str = "improved";

/// Three decoders against the same noise and the same estimator draw per
/// trial (common random numbers): perfect channel knowledge, the raw
/// estimate, and the weighted overestimate.
pub fn run_improved_comparison(cfg: &ImprovedConfig) -> Result<SweepResult, SimError> {
    cfg.validate()?;
    let start = Instant::now();
    let code = cfg.code.build_stabilizer()?;
    let graph = PauliTanner::new(&code);
    let generator_space = code.generator_row_space();
    let n = code.n();
    let policy = MismatchPolicy::new(cfg.delta_ratio, cfg.f_cap)?;
    let n_probes = cfg.n_probes.unwrap_or(n);

    let mut curves: [Vec<PointSummary>; 3] = [Vec::new(), Vec::new(), Vec::new()];
    for (pi, &f_true) in cfg.f_true_grid.iter().enumerate() {
        let channel = DepolarizingChannel::from_flip_probability(f_true)?;
        let model = EstimatorModel::new(cfg.scheme, f_true, n_probes)?;
        // The stop rule watches the improved arm, the rarest failer of the
        // two compared curves, so both reach the target error count.
        let accs = run_point_arms::<3, _>(&cfg.stop, 2, |trial| {
            let mut rng = derive_rng(
                cfg.master_seed,
                &[domain::IMPROVED_COMPARISON, pi as u64, trial],
            );
            let e = match cfg.noise {
                NoiseMode::FixedWeight => channel.sample_fixed_weight(n, &mut rng),
                NoiseMode::Iid => channel.sample_iid(n, &mut rng),
            };
            let s = code.syndrome(&e).expect("lengths agree");
            let f_hat = model.sample(&mut rng);
            let assumed = [
                f_true,
                clamp_assumed(f_hat),
                clamp_assumed(improved_estimate(f_hat, &policy)),
            ];
            assumed.map(|f_assumed| {
                let mut decoder = DepolarizingDecoder::new(&graph, cfg.max_iters);
                let r = decoder.decode(f_assumed, &s).expect("clamped into range");
                quantum_outcome(&code, &generator_space, &e, &r.error_estimate, r.converged, r.iterations_used)
            })
        });
        for (curve, acc) in curves.iter_mut().zip(&accs) {
            curve.push(PointSummary::from_accumulator(
                f_true,
                Some(4.0 * f_true / 3.0),
                n,
                acc,
            ));
        }
    }

    let mut annotations = BTreeMap::new();
    annotations.insert("n_probes".to_string(), n_probes as f64);
    annotations.insert("delta_ratio".to_string(), cfg.delta_ratio);
    annotations.insert("f_cap".to_string(), cfg.f_cap);
    annotations.insert("quantum_rate".to_string(), code.rate());

    let labels = [CURVE_BASELINE, CURVE_NAIVE, CURVE_IMPROVED];
    let curves = labels
        .iter()
        .zip(curves)
        .map(|(label, points)| CurveResult {
            label: (*label).to_string(),
            points,
        })
        .collect();

    Ok(SweepResult {
        config: ExperimentConfig::ImprovedComparison(cfg.clone()),
        grid_label: "f_true".to_string(),
        block_length: n,
        master_seed: cfg.master_seed,
        code_hash: stabilizer_hash(&code),
        annotations,
        curves,
        wall_time_ms: start.elapsed().as_millis(),
    })
}

/// Cost curve over the overestimation ratio and its fitted minimizer.
#[derive(Debug, Clone, Serialize)]
pub struct DeltaCostResult {
    pub config: FitDeltaConfig,
    /// Improved-arm block error rate per sampled ratio.
    pub cost_points: Vec<PointSummary>,
    pub outcome: FitOutcome,
    pub wall_time_ms: u128,
}

/// Re-run the improved comparison across `delta_grid` at a fixed f_true,
/// fit a quadratic to BLER(delta), and return the minimizing ratio.
///
/// All ratios see identical noise and estimator draws (the seed path does
/// not involve delta), so a ratio with no effect yields an exactly flat
/// cost curve.
pub fn fit_delta_cost(cfg: &FitDeltaConfig) -> Result<DeltaCostResult, SimError> {
    cfg.validate()?;
    let start = Instant::now();
    let mut cost_points = Vec::with_capacity(cfg.delta_grid.len());
    for &delta in &cfg.delta_grid {
        let mut run_cfg = cfg.base.clone();
        run_cfg.delta_ratio = delta;
        let sweep = run_improved_comparison(&run_cfg)?;
        let improved = sweep
            .curve(CURVE_IMPROVED)
            .expect("improved curve always present");
        let mut point = improved.points[0].clone();
        point.grid_value = delta;
        point.fd_value = None;
        cost_points.push(point);
    }
    let samples: Vec<(f64, f64)> = cost_points.iter().map(|p| (p.grid_value, p.bler)).collect();
    let outcome = fit_quadratic_vertex(&samples);
    Ok(DeltaCostResult {
        config: cfg.clone(),
        cost_points,
        outcome,
        wall_time_ms: start.elapsed().as_millis(),
    })
}
