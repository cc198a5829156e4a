//! Gaussian displacement-noise channel and the laboratory noise-budget
//! mapping.
//!
//! Timing jitter, dispersion, and technical noise shift a comb-referenced
//! photon in τ; seed, pump, and technical frequency noise shift it in Ω. Both
//! act as zero-mean Gaussian displacements with independent widths
//! (σ_τ, σ_Ω) — the anisotropic shift channel every decoding and correction
//! routine in this crate consumes.
//!
//! Sampling is bit-reproducible by contract: a [`RngStream`] is keyed by a
//! `(seed, stream_index)` pair on a ChaCha8 keystream, uniform doubles come
//! from a fixed bit manipulation of the raw output, and the Box–Muller
//! transform uses the pure-Rust `libm` functions rather than platform libm.
//! Identical `(seed, stream_index, model)` therefore reproduce the identical
//! sample sequence on any platform, and distinct stream indices yield
//! statistically independent sequences. Streams are single-owner mutable
//! state: hand each parallel task its own stream index, never share one.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::algebra::{CombParams, PhasePoint};
use crate::error::{Error, Result};

/// A seeded, indexed random stream with a platform-stable output sequence.
#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    stream_index: u64,
    rng: ChaCha8Rng,
    spare_normal: Option<f64>,
}

impl RngStream {
    pub fn new(seed: u64, stream_index: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream_index);
        RngStream {
            seed,
            stream_index,
            rng,
            spare_normal: None,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream_index(&self) -> u64 {
        self.stream_index
    }

    /// Uniform double in [0, 1): the top 53 bits of one keystream word.
    pub fn next_f64(&mut self) -> f64 {
        (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform double in (0, 1]: shifted so the logarithm below is finite.
    fn next_f64_open_zero(&mut self) -> f64 {
        ((self.rng.next_u64() >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Standard normal deviate via the Box–Muller transform.
    ///
    /// Each transform yields a pair; the second value is cached so consecutive
    /// calls consume the keystream at a fixed, schedule-independent rate.
    pub fn next_standard_normal(&mut self) -> f64 {
        if let Some(z) = self.spare_normal.take() {
            return z;
        }
        let u = self.next_f64_open_zero();
        let v = self.next_f64();
        let r = libm::sqrt(-2.0 * libm::log(u));
        let theta = 2.0 * std::f64::consts::PI * v;
        self.spare_normal = Some(r * libm::sin(theta));
        r * libm::cos(theta)
    }
}

/// Anisotropic Gaussian displacement-noise widths (dimensionless standard
/// deviations). `(0, 0)` is the noiseless channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseModel {
    sigma_tau: f64,
    sigma_omega: f64,
}

impl NoiseModel {
    pub fn new(sigma_tau: f64, sigma_omega: f64) -> Result<Self> {
        for (name, s) in [("sigma_tau", sigma_tau), ("sigma_omega", sigma_omega)] {
            if !s.is_finite() || s < 0.0 {
                return Err(Error::domain(format!(
                    "noise width {name} must be finite and >= 0, got {s}"
                )));
            }
        }
        Ok(NoiseModel {
            sigma_tau,
            sigma_omega,
        })
    }

    /// The noiseless channel.
    pub fn noiseless() -> Self {
        NoiseModel {
            sigma_tau: 0.0,
            sigma_omega: 0.0,
        }
    }

    pub fn sigma_tau(&self) -> f64 {
        self.sigma_tau
    }

    pub fn sigma_omega(&self) -> f64 {
        self.sigma_omega
    }

    /// Draw one random displacement: independent zero-mean Gaussians with the
    /// model widths. Always consumes exactly two normal deviates so stream
    /// positions stay aligned regardless of the widths.
    pub fn sample_displacement(&self, rng: &mut RngStream) -> PhasePoint {
        let z_tau = rng.next_standard_normal();
        let z_omega = rng.next_standard_normal();
        let dt = if self.sigma_tau == 0.0 {
            0.0
        } else {
            self.sigma_tau * z_tau
        };
        let dw = if self.sigma_omega == 0.0 {
            0.0
        } else {
            self.sigma_omega * z_omega
        };
        PhasePoint::raw(dt, dw)
    }
}

/// Laboratory noise budget: timing contributions in seconds, angular-frequency
/// contributions in rad/s. Components combine in quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LabNoiseBudget {
    pub t_jitter_s: f64,
    pub t_disp_s: f64,
    pub t_tech_s: f64,
    pub w_seed_rad_s: f64,
    pub w_pump_rad_s: f64,
    pub w_tech_rad_s: f64,
}

impl LabNoiseBudget {
    pub fn new(
        t_jitter_s: f64,
        t_disp_s: f64,
        t_tech_s: f64,
        w_seed_rad_s: f64,
        w_pump_rad_s: f64,
        w_tech_rad_s: f64,
    ) -> Result<Self> {
        let budget = LabNoiseBudget {
            t_jitter_s,
            t_disp_s,
            t_tech_s,
            w_seed_rad_s,
            w_pump_rad_s,
            w_tech_rad_s,
        };
        for (name, v) in [
            ("t_jitter_s", t_jitter_s),
            ("t_disp_s", t_disp_s),
            ("t_tech_s", t_tech_s),
            ("w_seed_rad_s", w_seed_rad_s),
            ("w_pump_rad_s", w_pump_rad_s),
            ("w_tech_rad_s", w_tech_rad_s),
        ] {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::domain(format!(
                    "budget component {name} must be finite and >= 0, got {v}"
                )));
            }
        }
        Ok(budget)
    }

    /// Root-sum-square timing noise in seconds.
    pub fn sigma_t_s(&self) -> f64 {
        rss3(self.t_jitter_s, self.t_disp_s, self.t_tech_s)
    }

    /// Root-sum-square angular-frequency noise in rad/s.
    pub fn sigma_w_rad_s(&self) -> f64 {
        rss3(self.w_seed_rad_s, self.w_pump_rad_s, self.w_tech_rad_s)
    }
}

fn rss3(a: f64, b: f64, c: f64) -> f64 {
    (a * a + b * b + c * c).sqrt()
}

/// Convert a laboratory budget to dimensionless channel widths:
/// `σ_τ = σ_t/T_r`, `σ_Ω = T_r·σ_ω`.
pub fn lab_to_dimensionless(budget: &LabNoiseBudget, comb: &CombParams) -> NoiseModel {
    let t_rep = comb.t_rep_s();
    NoiseModel {
        sigma_tau: budget.sigma_t_s() / t_rep,
        sigma_omega: budget.sigma_w_rad_s() * t_rep,
    }
}

/// On-disk JSON form of a lab budget, as accepted by the CLI. All components
/// default to zero so partial budgets are valid; the optional repetition rate
/// lets a budget file pin the comb it was measured against.
#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct LabBudgetConfig {
    #[serde(default)]
    pub t_jitter_s: f64,
    #[serde(default)]
    pub t_disp_s: f64,
    #[serde(default)]
    pub t_tech_s: f64,
    #[serde(default)]
    pub w_seed_rad_s: f64,
    #[serde(default)]
    pub w_pump_rad_s: f64,
    #[serde(default)]
    pub w_tech_rad_s: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f_rep_hz: Option<f64>,
}

impl LabBudgetConfig {
    pub fn to_budget(&self) -> Result<LabNoiseBudget> {
        LabNoiseBudget::new(
            self.t_jitter_s,
            self.t_disp_s,
            self.t_tech_s,
            self.w_seed_rad_s,
            self.w_pump_rad_s,
            self.w_tech_rad_s,
        )
    }
}
