//! Random bit-polynomial models with exact model parameters.
//!
//! Five coefficient distributions over the integers, each characterized by
//! its bitsize `τ` (largest magnitude bound), weight `w` (maximum point
//! probability of the coefficients of `1` and `X^d`), and uniformity
//! `u = ln((1 + 2^(τ+1)) w)`:
//!
//! - `uniform`: coefficients uniform on `[-2^τ, 2^τ] ∩ Z` (u = 0);
//! - `support`: uniform coefficients restricted to an index set containing
//!   `0` and `d`, zero elsewhere (u = 0);
//! - `signs`: prescribed sign per coefficient, magnitude uniform on
//!   `[1, 2^τ]`;
//! - `exact_bitsize`: magnitude uniform on `[2^(τ-1), 2^τ - 1]`, sign fair;
//! - `smoothed`: a fixed base polynomial plus `σ` times a uniform draw.
//!
//! Sampling is deterministic given `(config, seed, draw index)`: the draw
//! index selects the ChaCha stream, so parallel workers can split a single
//! seed without coordination. Range draws use rejection sampling (via the
//! bigint uniform generator), keeping the point probabilities exactly flat.

use num_bigint::{BigInt, RandBigInt};
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;

use crate::poly::{log2_rational, IntPolynomial, Rational};

/// Which coefficient distribution to draw from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    Uniform,
    Support,
    Signs,
    ExactBitsize,
    Smoothed,
}

impl ModelKind {
    pub fn name(&self) -> &'static str {
        match self {
            ModelKind::Uniform => "uniform",
            ModelKind::Support => "support",
            ModelKind::Signs => "signs",
            ModelKind::ExactBitsize => "exact_bitsize",
            ModelKind::Smoothed => "smoothed",
        }
    }
}

/// Full specification of one random model.
#[derive(Debug, Clone)]
pub struct RandomModelConfig {
    pub kind: ModelKind,
    /// Nominal degree; the sampled leading coefficient may still be zero
    /// where the model allows it.
    pub d: usize,
    pub tau: u32,
    /// For `Support`: indices with nonzero coefficients (must contain 0
    /// and `d`).
    pub support_set: Option<Vec<usize>>,
    /// For `Signs`: `±1` per coefficient, length `d + 1`.
    pub sign_vector: Option<Vec<i8>>,
    /// For `Smoothed`: the fixed polynomial being perturbed.
    pub base_poly: Option<IntPolynomial>,
    /// For `Smoothed`: the (nonzero) perturbation scale.
    pub sigma: Option<BigInt>,
    pub seed: u64,
}

impl RandomModelConfig {
    pub fn uniform(d: usize, tau: u32, seed: u64) -> Self {
        RandomModelConfig {
            kind: ModelKind::Uniform,
            d,
            tau,
            support_set: None,
            sign_vector: None,
            base_poly: None,
            sigma: None,
            seed,
        }
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        match self.kind {
            ModelKind::Uniform => Ok(()),
            ModelKind::Support => {
                let set = self.support_set.as_ref().ok_or(ModelError::MissingField("support"))?;
                if !set.contains(&0) || !set.contains(&self.d) {
                    return Err(ModelError::SupportMustContainEnds);
                }
                if set.iter().any(|&i| i > self.d) {
                    return Err(ModelError::SupportIndexOutOfRange);
                }
                Ok(())
            }
            ModelKind::Signs => {
                let signs = self.sign_vector.as_ref().ok_or(ModelError::MissingField("signs"))?;
                if signs.len() != self.d + 1 {
                    return Err(ModelError::SignVectorLength { expected: self.d + 1 });
                }
                if signs.iter().any(|&s| s != 1 && s != -1) {
                    return Err(ModelError::SignVectorEntries);
                }
                if self.tau == 0 {
                    return Err(ModelError::TauTooSmall);
                }
                Ok(())
            }
            ModelKind::ExactBitsize => {
                if self.tau == 0 {
                    return Err(ModelError::TauTooSmall);
                }
                Ok(())
            }
            ModelKind::Smoothed => {
                let sigma = self.sigma.as_ref().ok_or(ModelError::MissingField("sigma"))?;
                if sigma.is_zero() {
                    return Err(ModelError::SigmaZero);
                }
                if self.base_poly.is_none() {
                    return Err(ModelError::MissingField("base_poly"));
                }
                Ok(())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error("model config is missing required field `{0}`")]
    MissingField(&'static str),
    #[error("support set must contain both 0 and the degree d")]
    SupportMustContainEnds,
    #[error("support set contains an index above the degree")]
    SupportIndexOutOfRange,
    #[error("sign vector must have exactly {expected} entries")]
    SignVectorLength { expected: usize },
    #[error("sign vector entries must be +1 or -1")]
    SignVectorEntries,
    #[error("this model needs tau >= 1")]
    TauTooSmall,
    #[error("smoothed model needs a nonzero sigma")]
    SigmaZero,
}

/// Exact model parameters.
#[derive(Debug, Clone)]
pub struct ModelStats {
    /// Minimal integer `t` with all coefficients bounded by `2^t` surely.
    pub tau_effective: u32,
    /// Max point probability of the coefficients of `1` and `X^d`.
    pub weight: Rational,
    /// `ln((1 + 2^(τ+1)) w)`, computed from the exact rational product.
    pub uniformity: f64,
}

/// Draws the sample with index 0. See [`sample_nth`].
pub fn sample(config: &RandomModelConfig) -> Result<IntPolynomial, ModelError> {
    sample_nth(config, 0)
}

/// Draws the `index`-th sample of the configured model: ChaCha12 seeded by
/// `config.seed` with the draw index as stream, so distinct indices give
/// independent deterministic draws.
pub fn sample_nth(config: &RandomModelConfig, index: u64) -> Result<IntPolynomial, ModelError> {
    config.validate()?;
    let mut rng = ChaCha12Rng::seed_from_u64(config.seed);
    rng.set_stream(index);
    let bound = BigInt::one() << config.tau;
    let coeffs: Vec<BigInt> = match config.kind {
        ModelKind::Uniform => (0..=config.d)
            .map(|_| rng.gen_bigint_range(&(-&bound), &(&bound + 1)))
            .collect(),
        ModelKind::Support => {
            let set = config.support_set.as_ref().unwrap();
            (0..=config.d)
                .map(|i| {
                    if set.contains(&i) {
                        rng.gen_bigint_range(&(-&bound), &(&bound + 1))
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        }
        ModelKind::Signs => {
            let signs = config.sign_vector.as_ref().unwrap();
            (0..=config.d)
                .map(|i| {
                    let mag = rng.gen_bigint_range(&BigInt::one(), &(&bound + 1));
                    if signs[i] > 0 {
                        mag
                    } else {
                        -mag
                    }
                })
                .collect()
        }
        ModelKind::ExactBitsize => {
            let lo = BigInt::one() << (config.tau - 1);
            (0..=config.d)
                .map(|_| {
                    let mag = rng.gen_bigint_range(&lo, &bound);
                    if rng.gen::<bool>() {
                        mag
                    } else {
                        -mag
                    }
                })
                .collect()
        }
        ModelKind::Smoothed => {
            let base = config.base_poly.as_ref().unwrap();
            let sigma = config.sigma.as_ref().unwrap();
            (0..=config.d)
                .map(|i| {
                    let noise = rng.gen_bigint_range(&(-&bound), &(&bound + 1));
                    base.coeff(i) + sigma * noise
                })
                .collect()
        }
    };
    Ok(IntPolynomial::new(coeffs))
}

/// Exact `(τ, w, u)` of the configured model.
pub fn model_stats(config: &RandomModelConfig) -> Result<ModelStats, ModelError> {
    config.validate()?;
    let pow = |t: u32| BigInt::one() << t;
    let (tau_effective, weight) = match config.kind {
        ModelKind::Uniform | ModelKind::Support => (
            config.tau,
            Rational::new(BigInt::one(), pow(config.tau + 1) + 1),
        ),
        ModelKind::Signs | ModelKind::ExactBitsize => {
            (config.tau, Rational::new(BigInt::one(), pow(config.tau)))
        }
        ModelKind::Smoothed => {
            let base = config.base_poly.as_ref().unwrap();
            let sigma = config.sigma.as_ref().unwrap();
            let max_base = base
                .coeffs()
                .iter()
                .map(|c| c.abs())
                .max()
                .unwrap_or_else(BigInt::zero);
            let max_val = max_base + sigma.abs() * pow(config.tau);
            (
                min_pow2_bound(&max_val),
                Rational::new(BigInt::one(), pow(config.tau + 1) + 1),
            )
        }
    };
    let product = Rational::from(pow(tau_effective + 1) + 1) * &weight;
    let uniformity = if product.is_one() {
        0.0
    } else {
        log2_rational(&product) * std::f64::consts::LN_2
    };
    Ok(ModelStats { tau_effective, weight, uniformity })
}

/// Minimal `t` with `v <= 2^t`.
fn min_pow2_bound(v: &BigInt) -> u32 {
    if v.is_zero() {
        return 0;
    }
    let bits = v.bits() as u32;
    if v == &(BigInt::one() << (bits - 1)) {
        bits - 1
    } else {
        bits
    }
}

/// Bit length of an integer, for the smoothed-model bitsize bound.
pub fn int_bitsize(a: &BigInt) -> u64 {
    a.bits()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashMap;

    #[test]
    fn uniform_range_and_determinism() {
        let cfg = RandomModelConfig::uniform(2, 1, 42);
        let f = sample(&cfg).unwrap();
        for i in 0..=2 {
            assert!(f.coeff(i).abs() <= BigInt::from(2));
        }
        assert_eq!(sample(&cfg).unwrap(), f);
        assert_ne!(sample_nth(&cfg, 1).unwrap(), f);
    }

    #[test]
    fn signs_model_range() {
        let cfg = RandomModelConfig {
            kind: ModelKind::Signs,
            d: 2,
            tau: 2,
            sign_vector: Some(vec![1, 1, 1]),
            support_set: None,
            base_poly: None,
            sigma: None,
            seed: 7,
        };
        for n in 0..50 {
            let f = sample_nth(&cfg, n).unwrap();
            for i in 0..=2 {
                let c = f.coeff(i);
                assert!(c >= BigInt::one() && c <= BigInt::from(4));
            }
        }
    }

    #[test]
    fn exact_bitsize_range() {
        let cfg = RandomModelConfig {
            kind: ModelKind::ExactBitsize,
            d: 3,
            tau: 4,
            sign_vector: None,
            support_set: None,
            base_poly: None,
            sigma: None,
            seed: 7,
        };
        for n in 0..50 {
            let f = sample_nth(&cfg, n).unwrap();
            for i in 0..=3 {
                let mag = f.coeff(i).abs();
                assert!(mag >= BigInt::from(8) && mag <= BigInt::from(15));
            }
        }
    }

    #[test]
    fn smoothed_model_values() {
        // base x^2, sigma 2, tau 1: leading coefficient in 1 + 2*{-2..2}
        let cfg = RandomModelConfig {
            kind: ModelKind::Smoothed,
            d: 2,
            tau: 1,
            sign_vector: None,
            support_set: None,
            base_poly: Some(IntPolynomial::from_i64_coeffs(&[0, 0, 1])),
            sigma: Some(BigInt::from(2)),
            seed: 3,
        };
        let allowed: Vec<BigInt> =
            [-3i64, -1, 1, 3, 5].iter().map(|&v| BigInt::from(v)).collect();
        for n in 0..50 {
            let f = sample_nth(&cfg, n).unwrap();
            assert!(allowed.contains(&f.coeff(2)));
        }
    }

    #[test]
    fn support_model_zeroes() {
        let cfg = RandomModelConfig {
            kind: ModelKind::Support,
            d: 5,
            tau: 8,
            support_set: Some(vec![0, 2, 5]),
            sign_vector: None,
            base_poly: None,
            sigma: None,
            seed: 11,
        };
        for n in 0..20 {
            let f = sample_nth(&cfg, n).unwrap();
            assert!(f.coeff(1).is_zero() && f.coeff(3).is_zero() && f.coeff(4).is_zero());
        }
    }

    #[test]
    fn invalid_configs_rejected() {
        let mut cfg = RandomModelConfig::uniform(4, 8, 0);
        cfg.kind = ModelKind::Support;
        cfg.support_set = Some(vec![0, 2]); // missing d
        assert_eq!(cfg.validate(), Err(ModelError::SupportMustContainEnds));
        cfg.kind = ModelKind::Smoothed;
        cfg.base_poly = Some(IntPolynomial::one());
        cfg.sigma = Some(BigInt::zero());
        assert_eq!(cfg.validate(), Err(ModelError::SigmaZero));
    }

    #[test]
    fn stats_uniform_has_zero_uniformity() {
        let cfg = RandomModelConfig::uniform(4, 8, 0);
        let st = model_stats(&cfg).unwrap();
        assert_eq!(st.weight, Rational::new(BigInt::one(), BigInt::from(513)));
        assert_eq!(st.uniformity, 0.0);
        assert_eq!(st.tau_effective, 8);
    }

    #[test]
    fn stats_signs_and_exact_bitsize() {
        let mut cfg = RandomModelConfig::uniform(4, 8, 0);
        cfg.kind = ModelKind::Signs;
        cfg.sign_vector = Some(vec![1; 5]);
        let st = model_stats(&cfg).unwrap();
        // (1 + 2^9) / 2^8 = 513/256: strictly above ln 2, below ln 3
        assert!((st.uniformity - (513f64 / 256.0).ln()).abs() < 1e-12);
        assert!(st.uniformity <= 3f64.ln());

        cfg.kind = ModelKind::ExactBitsize;
        let st2 = model_stats(&cfg).unwrap();
        assert_eq!(st2.weight, Rational::new(BigInt::one(), BigInt::from(256)));
        assert!(st2.uniformity <= 3f64.ln());
    }

    #[test]
    fn smoothed_bitsize_bound_holds_per_sample() {
        // τ(f_σ) <= 2 max{τ_base, τ + τ(σ) + 1}
        let base = IntPolynomial::from_i64_coeffs(&[9, -31, 0, 17]);
        let sigma = BigInt::from(5);
        let cfg = RandomModelConfig {
            kind: ModelKind::Smoothed,
            d: 3,
            tau: 4,
            support_set: None,
            sign_vector: None,
            base_poly: Some(base.clone()),
            sigma: Some(sigma.clone()),
            seed: 17,
        };
        let tau_base = base.bitsize();
        let bound = 2 * tau_base.max(4 + int_bitsize(&sigma) + 1);
        for n in 0..200 {
            let f = sample_nth(&cfg, n).unwrap();
            assert!(f.bitsize() <= bound);
        }
        let st = model_stats(&cfg).unwrap();
        assert!(st.uniformity >= 0.0);
    }

    #[test]
    fn empirical_weight_matches_w() {
        // 10^5 draws of the constant coefficient per model; the largest
        // empirical point mass must sit within 3 standard errors of w.
        let n = 100_000usize;
        let configs = vec![
            RandomModelConfig::uniform(2, 2, 5),
            RandomModelConfig {
                kind: ModelKind::Signs,
                sign_vector: Some(vec![-1, 1, 1]),
                ..RandomModelConfig::uniform(2, 3, 6)
            },
            RandomModelConfig {
                kind: ModelKind::ExactBitsize,
                ..RandomModelConfig::uniform(2, 4, 7)
            },
            RandomModelConfig {
                kind: ModelKind::Support,
                support_set: Some(vec![0, 2]),
                ..RandomModelConfig::uniform(2, 2, 8)
            },
            RandomModelConfig {
                kind: ModelKind::Smoothed,
                base_poly: Some(IntPolynomial::from_i64_coeffs(&[3, 0, 1])),
                sigma: Some(BigInt::from(3)),
                ..RandomModelConfig::uniform(2, 2, 9)
            },
        ];
        for cfg in configs {
            let w = crate::poly::rational_to_f64(&model_stats(&cfg).unwrap().weight);
            let mut counts: HashMap<BigInt, usize> = HashMap::new();
            for i in 0..n {
                let f = sample_nth(&cfg, i as u64).unwrap();
                *counts.entry(f.coeff(0)).or_default() += 1;
            }
            let max_mass = counts.values().copied().max().unwrap() as f64 / n as f64;
            let se = (w * (1.0 - w) / n as f64).sqrt();
            assert!(
                (max_mass - w).abs() <= 3.0 * se,
                "{:?}: max mass {max_mass} vs w {w} (se {se})",
                cfg.kind
            );
        }
    }
}
