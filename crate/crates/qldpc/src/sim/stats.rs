//! Trial bookkeeping: integer accumulators (order-independent by
//! construction) and the per-point summary statistics derived from them.

use serde::Serialize;

/// What one decoding trial contributed.
#[derive(Debug, Clone, Copy, Default)]
pub struct TrialOutcome {
    /// Decoder timed out: the block failure of the BLER definition.
    pub block_error: bool,
    /// Converged to a valid syndrome match whose residual acts
    /// non-trivially (wrong codeword classically, logical operator
    /// quantumly). Diagnostic only; not folded into BLER.
    pub logical_failure: bool,
    /// Non-identity positions of the residual for timed-out trials
    /// (tentative decision against the true error).
    pub residual_weight: u64,
    pub iterations: u64,
}

/// Integer counters for one grid point; merging is commutative so the
/// aggregate is independent of scheduling order.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PointAccumulator {
    pub trials: u64,
    pub block_errors: u64,
    pub logical_failures: u64,
    pub residual_weight_sum: u64,
    pub iterations_sum: u64,
}

impl PointAccumulator {
    pub fn absorb(&mut self, o: TrialOutcome) {
        self.trials += 1;
        self.block_errors += u64::from(o.block_error);
        self.logical_failures += u64::from(o.logical_failure);
        self.residual_weight_sum += o.residual_weight;
        self.iterations_sum += o.iterations;
    }

    pub fn merge(&mut self, other: &PointAccumulator) {
        self.trials += other.trials;
        self.block_errors += other.block_errors;
        self.logical_failures += other.logical_failures;
        self.residual_weight_sum += other.residual_weight_sum;
        self.iterations_sum += other.iterations_sum;
    }
}

/// Wilson 95% score interval for a binomial proportion.
pub fn wilson_interval(successes: u64, trials: u64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let z = 1.959963984540054_f64;
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = p + z2 / (2.0 * n);
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    (
        ((center - half) / denom).max(0.0),
        ((center + half) / denom).min(1.0),
    )
}

/// Finished statistics for one grid point of one curve.
#[derive(Debug, Clone, Serialize)]
pub struct PointSummary {
    /// Swept value (assumed probability or true flip probability).
    pub grid_value: f64,
    /// The depolarization-parameter reading of the grid value, when the
    /// sweep is over a flip probability.
    pub fd_value: Option<f64>,
    pub trials: u64,
    pub block_errors: u64,
    pub logical_failures: u64,
    pub bler: f64,
    pub bler_lo: f64,
    pub bler_hi: f64,
    pub qber: f64,
    pub mean_iters: f64,
}

impl PointSummary {
    pub fn from_accumulator(
        grid_value: f64,
        fd_value: Option<f64>,
        block_length: usize,
        acc: &PointAccumulator,
    ) -> Self {
        let trials = acc.trials;
        let bler = if trials == 0 {
            0.0
        } else {
            acc.block_errors as f64 / trials as f64
        };
        let (lo, hi) = wilson_interval(acc.block_errors, trials);
        let qber = if trials == 0 {
            0.0
        } else {
            acc.residual_weight_sum as f64 / (block_length as f64 * trials as f64)
        };
        let mean_iters = if trials == 0 {
            0.0
        } else {
            acc.iterations_sum as f64 / trials as f64
        };
        Self {
            grid_value,
            fd_value,
            trials,
            block_errors: acc.block_errors,
            logical_failures: acc.logical_failures,
            bler,
            bler_lo: lo,
            bler_hi: hi,
            qber,
            mean_iters,
        }
    }
}

/// One labeled curve of a sweep.
#[derive(Debug, Clone, Serialize)]
pub struct CurveResult {
    pub label: String,
    pub points: Vec<PointSummary>,
}

impl CurveResult {
    pub fn point_at(&self, grid_value: f64) -> Option<&PointSummary> {
        self.points
            .iter()
            .find(|p| (p.grid_value - grid_value).abs() < 1e-12)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wilson_brackets_the_estimate() {
        let (lo, hi) = wilson_interval(10, 100);
        assert!(lo < 0.1 && 0.1 < hi);
        assert!(lo > 0.04 && hi < 0.19);
        let (lo, hi) = wilson_interval(0, 50);
        assert!(lo < 1e-12);
        assert!(hi > 0.0 && hi < 0.1);
        let (lo, hi) = wilson_interval(50, 50);
        assert!(lo > 0.9);
        assert!(hi > 1.0 - 1e-12 && hi <= 1.0);
    }

    #[test]
    fn accumulator_merge_matches_absorb() {
        let outcomes = [
            TrialOutcome {
                block_error: true,
                logical_failure: false,
                residual_weight: 7,
                iterations: 200,
            },
            TrialOutcome {
                block_error: false,
                logical_failure: true,
                residual_weight: 0,
                iterations: 3,
            },
        ];
        let mut all = PointAccumulator::default();
        for o in outcomes {
            all.absorb(o);
        }
        let mut split_a = PointAccumulator::default();
        split_a.absorb(outcomes[0]);
        let mut split_b = PointAccumulator::default();
        split_b.absorb(outcomes[1]);
        split_a.merge(&split_b);
        assert_eq!(all, split_a);
        assert_eq!(all.trials, 2);
        assert_eq!(all.block_errors, 1);
    }

    #[test]
    fn qber_is_bounded_by_bler() {
        // Residual weight is at most N per failed block and zero otherwise.
        let mut acc = PointAccumulator::default();
        acc.absorb(TrialOutcome {
            block_error: true,
            logical_failure: false,
            residual_weight: 12,
            iterations: 200,
        });
        for _ in 0..9 {
            acc.absorb(TrialOutcome {
                block_error: false,
                logical_failure: false,
                residual_weight: 0,
                iterations: 5,
            });
        }
        let s = PointSummary::from_accumulator(0.02, None, 12, &acc);
        assert!(s.qber <= s.bler);
        assert!(s.qber <= 1.0);
        assert!((s.bler - 0.1).abs() < 1e-12);
    }
}
