//! Channel models and noise samplers: the depolarizing channel in both of
//! its parameterizations, the binary symmetric channel, and the BSC
//! capacity limit.

use crate::gf2::BinaryVector;
use crate::pauli::{Pauli, PauliVector};
use rand::seq::index::sample;
use rand::Rng;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ChannelError {
    #[error("flip probability {value} outside [0, 3/4]")]
    FlipProbabilityOutOfRange { value: f64 },
    #[error("depolarization parameter {value} outside [0, 1]")]
    DepolarizationOutOfRange { value: f64 },
    #[error("crossover probability {value} outside [0, 1/2)")]
    CrossoverOutOfRange { value: f64 },
    #[error("rate {value} outside (0, 1)")]
    RateOutOfRange { value: f64 },
}

/// The depolarizing channel, tracked in both parameterizations:
/// `f` is the total flip probability and `f_d` the depolarization
/// parameter, related by `f = (3/4) f_d`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DepolarizingChannel {
    f: f64,
    f_d: f64,
}

impl DepolarizingChannel {
    pub fn from_flip_probability(f: f64) -> Result<Self, ChannelError> {
        if !(0.0..=0.75).contains(&f) {
            return Err(ChannelError::FlipProbabilityOutOfRange { value: f });
        }
        Ok(Self { f, f_d: 4.0 * f / 3.0 })
    }

    pub fn from_depolarization_parameter(f_d: f64) -> Result<Self, ChannelError> {
        if !(0.0..=1.0).contains(&f_d) {
            return Err(ChannelError::DepolarizationOutOfRange { value: f_d });
        }
        Ok(Self { f: 0.75 * f_d, f_d })
    }

    /// Total flip probability: positions are disturbed with probability `f`,
    /// split evenly over X, Y and Z.
    pub fn flip_probability(&self) -> f64 {
        self.f
    }

    pub fn depolarization_parameter(&self) -> f64 {
        self.f_d
    }

    /// I.i.d. sampling: each position independently carries X, Y or Z with
    /// probability f/3 each.
    pub fn sample_iid<R: Rng>(&self, n: usize, rng: &mut R) -> PauliVector {
        let mut e = PauliVector::identity(n);
        for i in 0..n {
            if rng.random::<f64>() < self.f {
                e.set(i, random_flip(rng));
            }
        }
        e
    }

    /// Fixed-weight sampling: exactly `round(f * n)` positions (ties round
    /// up) chosen uniformly without replacement, each uniformly X/Y/Z.
    pub fn sample_fixed_weight<R: Rng>(&self, n: usize, rng: &mut R) -> PauliVector {
        let w = fixed_weight(self.f, n);
        let mut e = PauliVector::identity(n);
        for i in sample(rng, n, w) {
            e.set(i, random_flip(rng));
        }
        e
    }
}

fn random_flip<R: Rng>(rng: &mut R) -> Pauli {
    match rng.random_range(0..3u8) {
        0 => Pauli::X,
        1 => Pauli::Y,
        _ => Pauli::Z,
    }
}

/// Nearest integer to `p * n`, ties rounding up.
pub fn fixed_weight(p: f64, n: usize) -> usize {
    let w = (p * n as f64 + 0.5).floor() as usize;
    w.min(n)
}

/// The binary symmetric channel with crossover probability `p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BscChannel {
    p: f64,
}

impl BscChannel {
    pub fn new(p: f64) -> Result<Self, ChannelError> {
        if !(0.0..0.5).contains(&p) {
            return Err(ChannelError::CrossoverOutOfRange { value: p });
        }
        Ok(Self { p })
    }

    pub fn crossover(&self) -> f64 {
        self.p
    }

    pub fn sample_iid<R: Rng>(&self, n: usize, rng: &mut R) -> BinaryVector {
        let mut e = BinaryVector::zeros(n);
        for i in 0..n {
            if rng.random::<f64>() < self.p {
                e.set(i, true);
            }
        }
        e
    }

    /// Exactly `round(p * n)` flips at uniformly chosen positions.
    pub fn sample_fixed_weight<R: Rng>(&self, n: usize, rng: &mut R) -> BinaryVector {
        let w = fixed_weight(self.p, n);
        let mut e = BinaryVector::zeros(n);
        for i in sample(rng, n, w) {
            e.set(i, true);
        }
        e
    }
}

/// Binary entropy in bits.
pub fn binary_entropy(p: f64) -> f64 {
    if p <= 0.0 || p >= 1.0 {
        return 0.0;
    }
    -(p * p.log2() + (1.0 - p) * (1.0 - p).log2())
}

/// Largest BSC crossover probability supporting rate `r`: the solution of
/// `1 - H2(p) = r` on (0, 1/2), found by bisection to 1e-9 on p.
pub fn shannon_limit_bsc(r: f64) -> Result<f64, ChannelError> {
    if !(0.0 < r && r < 1.0) {
        return Err(ChannelError::RateOutOfRange { value: r });
    }
    let target = 1.0 - r; // H2(p*) = 1 - r
    let mut lo = 0.0f64;
    let mut hi = 0.5f64;
    while hi - lo > 1e-9 {
        let mid = 0.5 * (lo + hi);
        if binary_entropy(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    #[test]
    fn parameter_conversion_is_exact() {
        for i in 1..=74 {
            let f = i as f64 / 100.0;
            let ch = DepolarizingChannel::from_flip_probability(f).unwrap();
            assert_eq!(ch.depolarization_parameter(), 4.0 * f / 3.0);
            assert_eq!(ch.flip_probability(), f);
            let back = DepolarizingChannel::from_depolarization_parameter(
                ch.depolarization_parameter(),
            )
            .unwrap();
            assert_eq!(back.depolarization_parameter(), ch.depolarization_parameter());
        }
    }

    #[test]
    fn out_of_range_parameters_rejected() {
        assert!(DepolarizingChannel::from_flip_probability(0.76).is_err());
        assert!(DepolarizingChannel::from_flip_probability(-0.01).is_err());
        assert!(BscChannel::new(0.5).is_err());
        assert!(shannon_limit_bsc(0.0).is_err());
        assert!(shannon_limit_bsc(1.0).is_err());
    }

    #[test]
    fn zero_noise_samples_are_clean() {
        let mut rng = ChaCha12Rng::seed_from_u64(0);
        let dep = DepolarizingChannel::from_flip_probability(0.0).unwrap();
        assert!(dep.sample_iid(100, &mut rng).is_identity());
        assert!(dep.sample_fixed_weight(100, &mut rng).is_identity());
        let bsc = BscChannel::new(0.0).unwrap();
        assert!(bsc.sample_iid(100, &mut rng).is_zero());
    }

    #[test]
    fn full_depolarization_is_uniform_over_letters() {
        // f = 3/4: each of I, X, Y, Z with probability 1/4.
        let mut rng = ChaCha12Rng::seed_from_u64(1);
        let ch = DepolarizingChannel::from_flip_probability(0.75).unwrap();
        let n = 100_000;
        let e = ch.sample_iid(n, &mut rng);
        let mut counts = [0usize; 4];
        for i in 0..n {
            counts[match e.get(i) {
                Pauli::I => 0,
                Pauli::X => 1,
                Pauli::Y => 2,
                Pauli::Z => 3,
            }] += 1;
        }
        let expected = n as f64 / 4.0;
        let sigma = (n as f64 * 0.25 * 0.75).sqrt();
        for &c in &counts {
            assert!(
                (c as f64 - expected).abs() < 3.0 * sigma,
                "letter count {c} vs expected {expected}"
            );
        }
    }

    #[test]
    fn iid_weight_matches_binomial_mean() {
        let mut rng = ChaCha12Rng::seed_from_u64(2);
        let ch = DepolarizingChannel::from_flip_probability(0.03).unwrap();
        let n = 100_000;
        let w = ch.sample_iid(n, &mut rng).weight() as f64;
        let mean = 0.03 * n as f64;
        let sigma = (n as f64 * 0.03 * 0.97).sqrt();
        assert!((w - mean).abs() < 3.0 * sigma, "weight {w} vs mean {mean}");
    }

    #[test]
    fn fixed_weight_is_exact() {
        let mut rng = ChaCha12Rng::seed_from_u64(3);
        let ch = DepolarizingChannel::from_flip_probability(0.02).unwrap();
        // round(0.02 * 1034) = round(20.68) = 21
        for _ in 0..20 {
            assert_eq!(ch.sample_fixed_weight(1034, &mut rng).weight(), 21);
        }
        let bsc = BscChannel::new(0.07).unwrap();
        // round(0.07 * 2040) = round(142.8) = 143
        assert_eq!(bsc.sample_fixed_weight(2040, &mut rng).weight(), 143);
    }

    #[test]
    fn fixed_weight_positions_are_uniform() {
        // Marginal per-position rate must match w/n by hypergeometric symmetry.
        let mut rng = ChaCha12Rng::seed_from_u64(4);
        let ch = DepolarizingChannel::from_flip_probability(0.02).unwrap();
        let (n, draws) = (1034usize, 2000usize);
        let mut hits = vec![0usize; n];
        for _ in 0..draws {
            let e = ch.sample_fixed_weight(n, &mut rng);
            for (i, hit) in hits.iter_mut().enumerate() {
                if e.get(i) != Pauli::I {
                    *hit += 1;
                }
            }
        }
        let p = 21.0 / n as f64;
        let sigma = (draws as f64 * p * (1.0 - p)).sqrt();
        let worst = hits
            .iter()
            .map(|&h| (h as f64 - draws as f64 * p).abs())
            .fold(0.0f64, f64::max);
        // Bonferroni-ish slack across n positions.
        assert!(worst < 5.0 * sigma, "worst deviation {worst}, sigma {sigma}");
    }

    #[test]
    fn iid_weight_follows_the_binomial_law() {
        // Chi-square goodness of fit of the i.i.d. sample weights against
        // Binomial(n, f) at 1e5 draws, significance 1e-3.
        let mut rng = ChaCha12Rng::seed_from_u64(6);
        let (n, f, draws) = (200usize, 0.03f64, 100_000usize);
        let ch = DepolarizingChannel::from_flip_probability(f).unwrap();
        let max_weight = 20usize;
        let mut observed = vec![0usize; max_weight + 2]; // last bin = tail
        for _ in 0..draws {
            let w = ch.sample_iid(n, &mut rng).weight().min(max_weight + 1);
            observed[w] += 1;
        }
        // Binomial pmf by the multiplicative recurrence.
        let mut pmf = vec![0.0f64; max_weight + 2];
        let mut p = (1.0 - f).powi(n as i32);
        for (w, slot) in pmf.iter_mut().enumerate().take(max_weight + 1) {
            *slot = p;
            p *= (n - w) as f64 / (w + 1) as f64 * f / (1.0 - f);
        }
        pmf[max_weight + 1] = 1.0 - pmf[..=max_weight].iter().sum::<f64>();

        // Merge sparse bins (expected < 5) into the tail.
        let mut chi2 = 0.0;
        let mut df: i64 = -1;
        let mut tail_obs = 0.0;
        let mut tail_exp = 0.0;
        for (o, q) in observed.iter().zip(&pmf) {
            let expected = q * draws as f64;
            if expected < 5.0 {
                tail_obs += *o as f64;
                tail_exp += expected;
            } else {
                chi2 += (*o as f64 - expected).powi(2) / expected;
                df += 1;
            }
        }
        if tail_exp > 0.0 {
            chi2 += (tail_obs - tail_exp).powi(2) / tail_exp;
            df += 1;
        }
        // 0.999 quantiles of chi-square for the df range this setup hits.
        let critical = match df {
            10 => 29.59,
            11 => 31.26,
            12 => 32.91,
            13 => 34.53,
            14 => 36.12,
            15 => 37.70,
            16 => 39.25,
            17 => 40.79,
            18 => 42.31,
            19 => 43.82,
            20 => 45.31,
            _ => panic!("unexpected degrees of freedom {df}"),
        };
        assert!(
            chi2 < critical,
            "chi-square {chi2:.2} exceeds the 0.999 quantile {critical} at {df} df"
        );
    }

    #[test]
    fn bsc_half_is_symmetric() {
        let mut rng = ChaCha12Rng::seed_from_u64(5);
        let bsc = BscChannel::new(0.499_999_999).unwrap();
        let n = 100_000;
        let w = bsc.sample_iid(n, &mut rng).weight() as f64;
        let sigma = (n as f64 * 0.25).sqrt();
        assert!((w - n as f64 / 2.0).abs() < 3.0 * sigma);
    }

    #[test]
    fn shannon_limits_match_known_values() {
        let half = shannon_limit_bsc(0.5).unwrap();
        assert!((half - 0.110).abs() < 5e-4, "rate 1/2 limit {half}");
        let three_quarter = shannon_limit_bsc(0.75).unwrap();
        assert!((three_quarter - 0.0417).abs() < 2e-4, "rate 3/4 limit {three_quarter}");
        // Consistency: 1 - H2(p*) = r.
        for r in [0.1, 0.25, 0.5, 0.75, 0.9] {
            let p = shannon_limit_bsc(r).unwrap();
            assert!((1.0 - binary_entropy(p) - r).abs() < 1e-7);
        }
    }

    #[test]
    fn shannon_limit_is_strictly_decreasing() {
        let mut prev = f64::INFINITY;
        for i in 1..20 {
            let r = i as f64 / 20.0;
            let p = shannon_limit_bsc(r).unwrap();
            assert!(p < prev, "limit must decrease with rate");
            prev = p;
        }
        // r -> 1 drives p* -> 0.
        assert!(shannon_limit_bsc(0.999).unwrap() < 1e-3);
    }
}
