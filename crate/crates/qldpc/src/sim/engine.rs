//! Deterministic parallel Monte Carlo driver.
//!
//! Trials are dispatched in fixed-size batches; each trial is a pure
//! function of its index, so results and stop decisions are identical at
//! any worker-thread count. Stop rules are evaluated at batch boundaries
//! on integer counters.

use super::config::StopRule;
use super::stats::{PointAccumulator, TrialOutcome};
use rayon::prelude::*;

const BATCH: u64 = 128;

/// Run trials for one grid point with `arms` coupled decodings per trial
/// (common random numbers). The stop rule watches the arm at `stop_arm`.
pub fn run_point_arms<const ARMS: usize, F>(
    stop: &StopRule,
    stop_arm: usize,
    trial_fn: F,
) -> [PointAccumulator; ARMS]
where
    F: Fn(u64) -> [TrialOutcome; ARMS] + Sync,
{
    assert!(stop_arm < ARMS);
    let mut accs = [PointAccumulator::default(); ARMS];
    let mut next_trial = 0u64;
    while accs[stop_arm].block_errors < stop.target_block_errors && next_trial < stop.max_trials {
        let size = BATCH.min(stop.max_trials - next_trial);
        let outcomes: Vec<[TrialOutcome; ARMS]> = (next_trial..next_trial + size)
            .into_par_iter()
            .map(&trial_fn)
            .collect();
        for arm_outcomes in outcomes {
            for (acc, o) in accs.iter_mut().zip(arm_outcomes) {
                acc.absorb(o);
            }
        }
        next_trial += size;
    }
    accs
}

/// Single-arm convenience wrapper.
pub fn run_point<F>(stop: &StopRule, trial_fn: F) -> PointAccumulator
where
    F: Fn(u64) -> TrialOutcome + Sync,
{
    let [acc] = run_point_arms::<1, _>(stop, 0, |t| [trial_fn(t)]);
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fake_trial(t: u64) -> TrialOutcome {
        TrialOutcome {
            block_error: t.is_multiple_of(10),
            logical_failure: false,
            residual_weight: u64::from(t.is_multiple_of(10)),
            iterations: 1 + t % 3,
        }
    }

    #[test]
    fn stop_rule_respects_target_at_batch_granularity() {
        let stop = StopRule {
            target_block_errors: 5,
            max_trials: 10_000,
        };
        let acc = run_point(&stop, fake_trial);
        assert!(acc.block_errors >= 5);
        assert_eq!(acc.trials % BATCH, 0);
        assert!(acc.trials <= 10_000);
    }

    #[test]
    fn max_trials_caps_the_run() {
        let stop = StopRule {
            target_block_errors: u64::MAX,
            max_trials: 300,
        };
        let acc = run_point(&stop, fake_trial);
        assert_eq!(acc.trials, 300);
    }

    #[test]
    fn results_are_independent_of_thread_count() {
        let stop = StopRule {
            target_block_errors: 17,
            max_trials: 5_000,
        };
        let single = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap()
            .install(|| run_point(&stop, fake_trial));
        let quad = rayon::ThreadPoolBuilder::new()
            .num_threads(4)
            .build()
            .unwrap()
            .install(|| run_point(&stop, fake_trial));
        assert_eq!(single, quad);
    }
}
