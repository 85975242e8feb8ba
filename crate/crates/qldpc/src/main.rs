//! Command-line front end: code construction, single-shot decoding, the
//! mismatch sweeps, the improved-decoder comparison, the overestimation
//! cost fit, and Fisher-information tables.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use qldpc::alist;
use qldpc::decoders::{BinaryTanner, BscDecoder, DepolarizingDecoder, PauliTanner};
use qldpc::estimation::{cramer_rao_sd, qfi, qfi_closed_form, ProbeScheme};
use qldpc::gf2::BinaryVector;
use qldpc::sim::{
    emit_delta_cost, emit_results, fit_delta_cost, run_classical_mismatch,
    run_improved_comparison, run_quantum_mismatch, ClassicalMismatchConfig, CodeSpec,
    FitDeltaConfig, ImprovedConfig, NoiseMode, QuantumMismatchConfig, SimError,
};

#[derive(Parser)]
#[command(
    name = "qldpc",
    about = "Sum-product decoding of classical and quantum LDPC codes under misidentified channels",
    version
)]
struct Cli {
    /// Worker threads for Monte Carlo trials (0 keeps the rayon default).
    /// Results are independent of this setting.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct SweepArgs {
    /// JSON config file; command-line flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Code spec: peg:N,wc,wr[,seed] | bicycle:N,wr,K[,seed] |
    /// file:h.alist | qfile:code.qalist
    #[arg(long)]
    code: Option<String>,
    /// Master seed; reruns with the same seed are byte-identical.
    #[arg(long)]
    seed: Option<u64>,
    /// Stop a grid point after this many block errors.
    #[arg(long)]
    target_block_errors: Option<u64>,
    /// Hard cap on trials per grid point.
    #[arg(long)]
    max_trials: Option<u64>,
    /// Iteration budget per decode.
    #[arg(long)]
    max_iters: Option<usize>,
    /// Noise mode: fixed-weight | iid
    #[arg(long)]
    noise: Option<String>,
    /// Output directory for CSV/JSON (and SVG).
    #[arg(long, default_value = "out")]
    out_dir: PathBuf,
    /// Also write a log-scale SVG chart.
    #[arg(long)]
    svg: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a code and write it in (paired-)alist form.
    Construct {
        /// peg:N,wc,wr[,seed] or bicycle:N,wr,K[,seed]
        #[arg(long)]
        code: String,
        #[arg(long, default_value = "out")]
        out_dir: PathBuf,
    },
    /// Decode a single syndrome against a code file.
    Decode {
        /// Code file: .alist (classical) or .qalist (stabilizer).
        #[arg(long)]
        code: PathBuf,
        /// Syndrome as a 0/1 string of length M, or 0x-prefixed hex.
        #[arg(long)]
        syndrome: String,
        /// Assumed flip/crossover probability at the decoder.
        #[arg(long)]
        f_hat: f64,
        #[arg(long, default_value_t = 200)]
        max_iters: usize,
    },
    /// BLER of a classical code vs the assumed BSC crossover probability.
    SweepClassical {
        #[command(flatten)]
        common: SweepArgs,
        /// True crossover probability.
        #[arg(long)]
        p_true: Option<f64>,
        /// Assumed-probability grid: start:stop:step or v1,v2,...
        #[arg(long)]
        grid: Option<String>,
    },
    /// BLER of a stabilizer code vs the assumed flip probability.
    SweepQuantum {
        #[command(flatten)]
        common: SweepArgs,
        /// True flip probability.
        #[arg(long)]
        f_true: Option<f64>,
        /// Assumed-probability grid: start:stop:step or v1,v2,...
        #[arg(long)]
        grid: Option<String>,
    },
    /// Baseline / naive-estimate / improved-estimate comparison.
    Improved {
        #[command(flatten)]
        common: SweepArgs,
        /// Grid of true flip probabilities: start:stop:step or v1,v2,...
        #[arg(long)]
        f_true: Option<String>,
        /// Probing scheme: A (unentangled) or B (entangled).
        #[arg(long)]
        scheme: Option<String>,
        /// Independent probe measurements (defaults to the block length).
        #[arg(long)]
        probes: Option<usize>,
        /// Overestimation ratio added to each estimate.
        #[arg(long)]
        delta_ratio: Option<f64>,
        /// Clamp on the assumed flip probability.
        #[arg(long)]
        f_cap: Option<f64>,
    },
    /// Scan the overestimation ratio and fit the cost curve.
    FitDelta {
        #[command(flatten)]
        common: SweepArgs,
        /// Fixed true flip probability for the scan.
        #[arg(long)]
        f_true: Option<f64>,
        /// Ratio grid: start:stop:step or v1,v2,...
        #[arg(long)]
        delta_grid: Option<String>,
        #[arg(long)]
        scheme: Option<String>,
        #[arg(long)]
        probes: Option<usize>,
        #[arg(long)]
        f_cap: Option<f64>,
    },
    /// Tabulate Fisher information and estimator deviation as CSV.
    Fisher {
        /// f grid: start:stop:step or v1,v2,...
        #[arg(long, default_value = "0.01:0.74:0.01")]
        grid: String,
        /// Independent probe measurements for the deviation columns.
        #[arg(long, default_value_t = 1034)]
        probes: usize,
    },
}

fn main() {
    let cli = Cli::parse();
    if cli.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global()
            .expect("thread pool is configured once at startup");
    }
    if let Err(e) = run(cli.command) {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}

fn run(command: Command) -> Result<(), SimError> {
    match command {
        Command::Construct { code, out_dir } => construct(&code, &out_dir),
        Command::Decode {
            code,
            syndrome,
            f_hat,
            max_iters,
        } => decode(&code, &syndrome, f_hat, max_iters),
        Command::SweepClassical { common, p_true, grid } => {
            let mut cfg: ClassicalMismatchConfig = load_config(&common)?;
            apply_common(
                &mut cfg.code,
                &mut cfg.master_seed,
                &mut cfg.stop,
                &mut cfg.max_iters,
                &mut cfg.noise,
                &common,
            )?;
            if let Some(p) = p_true {
                cfg.p_true = p;
            }
            if let Some(g) = grid {
                cfg.assumed_grid = parse_grid(&g)?;
            }
            let result = run_classical_mismatch(&cfg)?;
            report(emit_results(&result, &common.out_dir, "sweep_classical", common.svg)?)
        }
        Command::SweepQuantum { common, f_true, grid } => {
            let mut cfg: QuantumMismatchConfig = load_config(&common)?;
            apply_common(
                &mut cfg.code,
                &mut cfg.master_seed,
                &mut cfg.stop,
                &mut cfg.max_iters,
                &mut cfg.noise,
                &common,
            )?;
            if let Some(f) = f_true {
                cfg.f_true = f;
            }
            if let Some(g) = grid {
                cfg.assumed_grid = parse_grid(&g)?;
            }
            let result = run_quantum_mismatch(&cfg)?;
            report(emit_results(&result, &common.out_dir, "sweep_quantum", common.svg)?)
        }
        Command::Improved {
            common,
            f_true,
            scheme,
            probes,
            delta_ratio,
            f_cap,
        } => {
            let mut cfg: ImprovedConfig = load_config(&common)?;
            apply_common(
                &mut cfg.code,
                &mut cfg.master_seed,
                &mut cfg.stop,
                &mut cfg.max_iters,
                &mut cfg.noise,
                &common,
            )?;
            if let Some(g) = f_true {
                cfg.f_true_grid = parse_grid(&g)?;
            }
            if let Some(s) = scheme {
                cfg.scheme = parse_scheme(&s)?;
            }
            if probes.is_some() {
                cfg.n_probes = probes;
            }
            if let Some(d) = delta_ratio {
                cfg.delta_ratio = d;
            }
            if let Some(c) = f_cap {
                cfg.f_cap = c;
            }
            let result = run_improved_comparison(&cfg)?;
            report(emit_results(&result, &common.out_dir, "improved", common.svg)?)
        }
        Command::FitDelta {
            common,
            f_true,
            delta_grid,
            scheme,
            probes,
            f_cap,
        } => {
            let mut cfg: FitDeltaConfig = load_config(&common)?;
            apply_common(
                &mut cfg.base.code,
                &mut cfg.base.master_seed,
                &mut cfg.base.stop,
                &mut cfg.base.max_iters,
                &mut cfg.base.noise,
                &common,
            )?;
            if let Some(f) = f_true {
                cfg.base.f_true_grid = vec![f];
            }
            if let Some(g) = delta_grid {
                cfg.delta_grid = parse_grid(&g)?;
            }
            if let Some(s) = scheme {
                cfg.base.scheme = parse_scheme(&s)?;
            }
            if probes.is_some() {
                cfg.base.n_probes = probes;
            }
            if let Some(c) = f_cap {
                cfg.base.f_cap = c;
            }
            let result = fit_delta_cost(&cfg)?;
            println!(
                "delta_star = {:.6} (interior minimum: {})",
                result.outcome.delta_star, result.outcome.interior_minimum
            );
            report(emit_delta_cost(&result, &common.out_dir, "fit_delta")?)
        }
        Command::Fisher { grid, probes } => fisher_table(&grid, probes),
    }
}

fn report(paths: Vec<PathBuf>) -> Result<(), SimError> {
    for p in paths {
        println!("wrote {}", p.display());
    }
    Ok(())
}

/// Load a config file when given; otherwise start from the defaults.
fn load_config<T: Default + serde::de::DeserializeOwned>(args: &SweepArgs) -> Result<T, SimError> {
    match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)?;
            Ok(serde_json::from_str(&text)?)
        }
        None => Ok(T::default()),
    }
}

fn apply_common(
    code: &mut CodeSpec,
    seed: &mut u64,
    stop: &mut qldpc::sim::StopRule,
    max_iters: &mut usize,
    noise: &mut NoiseMode,
    args: &SweepArgs,
) -> Result<(), SimError> {
    if let Some(spec) = &args.code {
        *code = CodeSpec::parse(spec)?;
    }
    if let Some(s) = args.seed {
        *seed = s;
    }
    if let Some(t) = args.target_block_errors {
        stop.target_block_errors = t;
    }
    if let Some(m) = args.max_trials {
        stop.max_trials = m;
    }
    if let Some(i) = args.max_iters {
        *max_iters = i;
    }
    if let Some(n) = &args.noise {
        *noise = NoiseMode::parse(n)?;
    }
    Ok(())
}

fn parse_scheme(s: &str) -> Result<ProbeScheme, SimError> {
    ProbeScheme::parse(s).ok_or_else(|| SimError::Config {
        reason: format!("unknown scheme '{s}', expected A or B"),
    })
}

/// Grid forms: `start:stop:step` or a comma-separated list.
fn parse_grid(s: &str) -> Result<Vec<f64>, SimError> {
    let bad = |reason: String| SimError::Config { reason };
    if s.contains(':') {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(bad(format!("grid '{s}' must be start:stop:step")));
        }
        let nums: Vec<f64> = parts
            .iter()
            .map(|p| p.trim().parse::<f64>())
            .collect::<Result<_, _>>()
            .map_err(|e| bad(format!("grid '{s}': {e}")))?;
        if nums[2] <= 0.0 || nums[1] < nums[0] {
            return Err(bad(format!("grid '{s}' is not increasing")));
        }
        Ok(qldpc::sim::grid(nums[0], nums[1], nums[2]))
    } else {
        let values: Vec<f64> = s
            .split(',')
            .map(|p| p.trim().parse::<f64>())
            .collect::<Result<_, _>>()
            .map_err(|e| bad(format!("grid '{s}': {e}")))?;
        if values.is_empty() {
            return Err(bad("empty grid".to_string()));
        }
        Ok(values)
    }
}

fn construct(spec: &str, out_dir: &Path) -> Result<(), SimError> {
    let spec = CodeSpec::parse(spec)?;
    std::fs::create_dir_all(out_dir)?;
    match &spec {
        CodeSpec::Peg { .. } | CodeSpec::ClassicalFile { .. } => {
            let code = spec.build_classical()?;
            let path = out_dir.join("code.alist");
            std::fs::write(&path, alist::write_alist(code.h()))?;
            println!(
                "wrote {} (N={}, M={}, rate={:.4}, girth={})",
                path.display(),
                code.n(),
                code.m(),
                code.rate(),
                code.girth().map_or("none".to_string(), |g| g.to_string()),
            );
        }
        CodeSpec::Bicycle { .. } | CodeSpec::StabilizerFile { .. } => {
            let code = spec.build_stabilizer()?;
            let path = out_dir.join("code.qalist");
            std::fs::write(
                &path,
                alist::write_paired_alist(code.n(), code.k(), code.a1(), code.a2()),
            )?;
            println!(
                "wrote {} (N={}, K={}, rate={:.4}, css={})",
                path.display(),
                code.n(),
                code.k(),
                code.rate(),
                code.is_css(),
            );
        }
    }
    Ok(())
}

fn decode(code_path: &Path, syndrome: &str, f_hat: f64, max_iters: usize) -> Result<(), SimError> {
    let text = std::fs::read_to_string(code_path)?;
    let is_stabilizer = code_path
        .extension()
        .is_some_and(|ext| ext.eq_ignore_ascii_case("qalist"));
    if is_stabilizer {
        let (_, _, a1, a2) = alist::parse_paired_alist(&text)?;
        let code = qldpc::StabilizerCode::from_parts(a1, a2)?;
        let s = parse_syndrome(syndrome, code.m())?;
        let graph = PauliTanner::new(&code);
        let mut decoder = DepolarizingDecoder::new(&graph, max_iters);
        let r = decoder.decode(f_hat, &s)?;
        println!(
            "{}",
            serde_json::json!({
                "converged": r.converged,
                "iterations_used": r.iterations_used,
                "syndrome_matched": r.syndrome_matched,
                "error_estimate": r.error_estimate.to_letter_string(),
                "weight": r.error_estimate.weight(),
            })
        );
    } else {
        let h = alist::parse_alist(&text)?;
        let code = qldpc::ClassicalCode::new(h)?;
        let s = parse_syndrome(syndrome, code.m())?;
        let graph = BinaryTanner::new(code.h());
        let mut decoder = BscDecoder::new(&graph, max_iters);
        let r = decoder.decode(f_hat, &s)?;
        println!(
            "{}",
            serde_json::json!({
                "converged": r.converged,
                "iterations_used": r.iterations_used,
                "syndrome_matched": r.syndrome_matched,
                "error_estimate": r.error_estimate.to_bit_string(),
                "weight": r.error_estimate.weight(),
            })
        );
    }
    Ok(())
}

/// Accepts a 0/1 string of length `m` or 0x-prefixed hex (bits MSB-first,
/// padded to a whole number of digits; pad bits must be zero).
fn parse_syndrome(s: &str, m: usize) -> Result<BinaryVector, SimError> {
    let bad = |reason: String| SimError::Config { reason };
    if let Some(hex) = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        let digits = m.div_ceil(4);
        if hex.len() != digits {
            return Err(bad(format!(
                "syndrome hex needs {digits} digits for {m} checks, got {}",
                hex.len()
            )));
        }
        let mut bits = Vec::with_capacity(4 * digits);
        for ch in hex.chars() {
            let v = ch
                .to_digit(16)
                .ok_or_else(|| bad(format!("bad hex digit '{ch}'")))?;
            for k in (0..4).rev() {
                bits.push(((v >> k) & 1) as u8);
            }
        }
        // The first (4*digits - m) bits are padding.
        let pad = 4 * digits - m;
        if bits[..pad].iter().any(|&b| b != 0) {
            return Err(bad("nonzero padding bits in hex syndrome".to_string()));
        }
        Ok(BinaryVector::from_bits(&bits[pad..]))
    } else {
        if s.len() != m || s.chars().any(|c| c != '0' && c != '1') {
            return Err(bad(format!(
                "syndrome must be {m} binary digits or 0x-prefixed hex"
            )));
        }
        let bits: Vec<u8> = s.chars().map(|c| u8::from(c == '1')).collect();
        Ok(BinaryVector::from_bits(&bits))
    }
}

fn fisher_table(grid: &str, probes: usize) -> Result<(), SimError> {
    let grid = parse_grid(grid)?;
    println!("f,J_A,J_B,sd_A,sd_B,J_A_closed,J_B_closed");
    for f in grid {
        let ja = qfi(ProbeScheme::Unentangled, f)?;
        let jb = qfi(ProbeScheme::Entangled, f)?;
        let sd_a = cramer_rao_sd(ProbeScheme::Unentangled, f, probes)?;
        let sd_b = cramer_rao_sd(ProbeScheme::Entangled, f, probes)?;
        println!(
            "{f},{ja},{jb},{sd_a},{sd_b},{},{}",
            qfi_closed_form(ProbeScheme::Unentangled, f),
            qfi_closed_form(ProbeScheme::Entangled, f)
        );
    }
    Ok(())
}
