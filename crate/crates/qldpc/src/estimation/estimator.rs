//! The optimal-estimator model feeding the decoder a mismatched flip
//! probability, and the overestimation policy applied on top of it.

use super::fisher::{qfi, ProbeScheme};
use super::EstimationError;
use rand::Rng;
use rand_distr::{Distribution, Normal};

/// Channel-identification model: an unbiased estimator achieving the
/// Cramer-Rao variance `1 / (n_probes * J(f_true))`, sampled from a
/// normal distribution truncated to [0, 1].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimatorModel {
    scheme: ProbeScheme,
    f_true: f64,
    n_probes: usize,
    variance: f64,
}

impl EstimatorModel {
    pub fn new(scheme: ProbeScheme, f_true: f64, n_probes: usize) -> Result<Self, EstimationError> {
        let j = qfi(scheme, f_true)?;
        Ok(Self {
            scheme,
            f_true,
            n_probes,
            variance: ((n_probes as f64) * j).recip(),
        })
    }

    pub fn scheme(&self) -> ProbeScheme {
        self.scheme
    }

    pub fn f_true(&self) -> f64 {
        self.f_true
    }

    pub fn n_probes(&self) -> usize {
        self.n_probes
    }

    pub fn variance(&self) -> f64 {
        self.variance
    }

    pub fn sd(&self) -> f64 {
        self.variance.sqrt()
    }

    /// Draw one estimate: Normal(f_true, variance) truncated to [0, 1] by
    /// rejection. A degenerate (zero-variance) model returns f_true.
    pub fn sample<R: Rng>(&self, rng: &mut R) -> f64 {
        let sd = self.sd();
        if sd == 0.0 {
            return self.f_true;
        }
        let normal = Normal::new(self.f_true, sd).expect("finite mean and positive sd");
        loop {
            let draw = normal.sample(rng);
            if (0.0..=1.0).contains(&draw) {
                return draw;
            }
        }
    }
}

/// Decoder-side overestimation policy: scale the estimate up by
/// `delta_ratio` and clamp at `f_cap`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct MismatchPolicy {
    pub delta_ratio: f64,
    pub f_cap: f64,
}

impl MismatchPolicy {
    pub fn new(delta_ratio: f64, f_cap: f64) -> Result<Self, EstimationError> {
        if delta_ratio < 0.0 || !delta_ratio.is_finite() {
            return Err(EstimationError::InvalidPolicy {
                reason: format!("delta ratio {delta_ratio} must be finite and >= 0"),
            });
        }
        if !(0.0..=0.75).contains(&f_cap) {
            return Err(EstimationError::InvalidPolicy {
                reason: format!("cap {f_cap} outside [0, 3/4]"),
            });
        }
        Ok(Self { delta_ratio, f_cap })
    }
}

/// Weighted overestimate: `min(f_hat * (1 + delta_ratio), f_cap)`.
pub fn improved_estimate(f_hat: f64, policy: &MismatchPolicy) -> f64 {
    (f_hat * (1.0 + policy.delta_ratio)).min(policy.f_cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    #[test]
    fn improved_estimate_examples() {
        let policy = MismatchPolicy::new(0.5, 0.04).unwrap();
        assert!((improved_estimate(0.02, &policy) - 0.03).abs() < 1e-15);

        let identity = MismatchPolicy::new(0.0, 0.75).unwrap();
        assert_eq!(improved_estimate(0.1234, &identity), 0.1234);

        let capped = MismatchPolicy::new(0.5, 0.0417).unwrap();
        assert_eq!(improved_estimate(0.035, &capped), 0.0417);
    }

    #[test]
    fn policy_validation() {
        assert!(MismatchPolicy::new(-0.1, 0.04).is_err());
        assert!(MismatchPolicy::new(0.5, 0.8).is_err());
        assert!(MismatchPolicy::new(f64::NAN, 0.04).is_err());
    }

    #[test]
    fn estimator_sd_matches_hand_computation() {
        // J_B(0.02) = 1/(0.02 * 0.98) ~= 51.02; sd = sqrt(1/(1034 J)).
        let model = EstimatorModel::new(ProbeScheme::Entangled, 0.02, 1034).unwrap();
        let expected = (1034.0_f64 / (0.02 * 0.98)).recip().sqrt();
        assert!((model.sd() - expected).abs() < 1e-12);
        assert!((model.sd() - 4.36e-3).abs() < 5e-5, "sd = {}", model.sd());
    }

    #[test]
    fn sample_mean_tracks_f_true_when_truncation_is_mild() {
        let model = EstimatorModel::new(ProbeScheme::Entangled, 0.02, 1034).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(11);
        let n = 100_000;
        let mean: f64 = (0..n).map(|_| model.sample(&mut rng)).sum::<f64>() / n as f64;
        let se = model.sd() / (n as f64).sqrt();
        assert!(
            (mean - 0.02).abs() < 5.0 * se,
            "mean {mean} deviates from 0.02 by more than 5 standard errors"
        );
    }

    #[test]
    fn vanishing_variance_returns_f_true() {
        // Degenerate limit: enormous probe counts drive the deviation to
        // ~3e-11, so every draw sits on f_true.
        let model = EstimatorModel::new(ProbeScheme::Entangled, 0.02, usize::MAX).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(3);
        for _ in 0..200 {
            assert!((model.sample(&mut rng) - 0.02).abs() < 1e-7);
        }
    }

    #[test]
    fn heavy_truncation_biases_upward() {
        // One probe only: sd ~ 0.14, so the [0,1] truncation at zero skews
        // the mean above f_true.
        let model = EstimatorModel::new(ProbeScheme::Entangled, 0.02, 1).unwrap();
        assert!(model.sd() > 0.1);
        let mut rng = ChaCha12Rng::seed_from_u64(12);
        let n = 50_000;
        let mean: f64 = (0..n).map(|_| model.sample(&mut rng)).sum::<f64>() / n as f64;
        assert!(mean > 0.04, "truncated mean {mean} must sit well above 0.02");
    }

    proptest! {
        #[test]
        fn samples_stay_in_unit_interval(seed in 0u64..200) {
            let model = EstimatorModel::new(ProbeScheme::Unentangled, 0.05, 4).unwrap();
            let mut rng = ChaCha12Rng::seed_from_u64(seed);
            for _ in 0..100 {
                let draw = model.sample(&mut rng);
                prop_assert!((0.0..=1.0).contains(&draw));
            }
        }

        #[test]
        fn improved_estimate_is_monotone_and_capped(
            a in 0.0f64..0.75,
            b in 0.0f64..0.75,
            delta in 0.0f64..2.0,
            cap in 0.0f64..0.75,
        ) {
            let policy = MismatchPolicy::new(delta, cap).unwrap();
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            prop_assert!(improved_estimate(lo, &policy) <= improved_estimate(hi, &policy));
            prop_assert!(improved_estimate(hi, &policy) <= cap + 1e-15);
        }
    }
}
