//! Nearest-lattice decoding of displacement errors and the logical failure
//! probability, in closed form and by Monte Carlo.
//!
//! Two failure notions live here and are deliberately kept separate:
//!
//! * the **half-cell criterion** — a displacement counts as failed as soon as
//!   either component leaves the open half cell (−√π/2, √π/2). This is the
//!   criterion behind the closed form
//!   `P_fail = 1 − erf(√π/(2√2·σ_τ))·erf(√π/(2√2·σ_Ω))`
//!   and is what [`DecodeOutcome::paper_success`] and every failure-map number
//!   report;
//! * the strictly weaker **parity (logical) error** — only displacements whose
//!   nearest lattice multiple of √π is odd flip the logical state. This is
//!   what [`DecodeOutcome::logical_class`] reports and what the correction
//!   cycles track.
//!
//! A shift of, say, 2√π in τ is a half-cell failure but logically invisible;
//! example: decoding (0, 3.6) lands on the even multiple 2 and is class I even
//! though the half-cell criterion flags it.
//!
//! Boundary convention: residuals live in the half-open interval
//! [−√π/2, √π/2); a component exactly on +√π/2 belongs to the next cell.

use rayon::prelude::*;

use crate::algebra::{LatticeSpec, PhasePoint};
use crate::error::{Error, Result};
use crate::noise::{NoiseModel, RngStream};
use crate::special::erf;

/// Logical Pauli class of a lattice displacement: parity of the √π multiple
/// in τ gives a Z factor, parity in Ω gives an X factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LogicalClass {
    I,
    X,
    Z,
    Y,
}

impl LogicalClass {
    pub(crate) fn from_parities(tau_odd: bool, omega_odd: bool) -> Self {
        match (tau_odd, omega_odd) {
            (false, false) => LogicalClass::I,
            (false, true) => LogicalClass::X,
            (true, false) => LogicalClass::Z,
            (true, true) => LogicalClass::Y,
        }
    }

    fn parities(self) -> (bool, bool) {
        match self {
            LogicalClass::I => (false, false),
            LogicalClass::X => (false, true),
            LogicalClass::Z => (true, false),
            LogicalClass::Y => (true, true),
        }
    }

    /// Group composition (phase-free Pauli multiplication; each class is its
    /// own inverse).
    pub fn compose(self, other: Self) -> Self {
        let (a_t, a_o) = self.parities();
        let (b_t, b_o) = other.parities();
        LogicalClass::from_parities(a_t ^ b_t, a_o ^ b_o)
    }

    pub fn label(self) -> &'static str {
        match self {
            LogicalClass::I => "I",
            LogicalClass::X => "X",
            LogicalClass::Z => "Z",
            LogicalClass::Y => "Y",
        }
    }
}

impl std::ops::Mul for LogicalClass {
    type Output = LogicalClass;
    fn mul(self, rhs: LogicalClass) -> LogicalClass {
        self.compose(rhs)
    }
}

/// Reduce `x` to the half-open interval [−step/2, step/2) and return the
/// removed integer multiple. The floating-point guards keep the half-open
/// contract even when `x/step` rounds onto a representability edge.
pub(crate) fn reduce_mod_step(x: f64, step: f64) -> (f64, i64) {
    let k = (x / step + 0.5).floor();
    let mut ki = k as i64;
    let mut r = x - k * step;
    let half = 0.5 * step;
    if r >= half {
        ki += 1;
        r -= step;
    }
    if r < -half {
        ki -= 1;
        r += step;
    }
    (r, ki)
}

/// Result of nearest-lattice decoding of a single displacement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecodeOutcome {
    /// Displacement modulo √π, components in [−√π/2, √π/2).
    pub residual: PhasePoint,
    /// Parity class of the removed lattice vector.
    pub logical_class: LogicalClass,
    /// Half-cell criterion on the original displacement:
    /// true iff |τ| < √π/2 and |Ω| < √π/2.
    pub paper_success: bool,
}

/// Decode a displacement against the nearest √π lattice point.
pub fn decode(delta: PhasePoint) -> DecodeOutcome {
    let lattice = LatticeSpec::standard();
    let step = lattice.logical_period();
    let (r_tau, k_tau) = reduce_mod_step(delta.tau(), step);
    let (r_omega, k_omega) = reduce_mod_step(delta.omega(), step);
    let half = lattice.half_cell();
    DecodeOutcome {
        residual: PhasePoint::raw(r_tau, r_omega),
        logical_class: LogicalClass::from_parities(
            k_tau.rem_euclid(2) == 1,
            k_omega.rem_euclid(2) == 1,
        ),
        paper_success: delta.tau().abs() < half && delta.omega().abs() < half,
    }
}

/// Closed-form half-cell failure probability of the Gaussian displacement
/// channel. A zero width contributes its limiting erf factor of 1.
pub fn p_fail_analytic(model: &NoiseModel) -> f64 {
    let half = LatticeSpec::standard().half_cell();
    let factor = |sigma: f64| {
        if sigma == 0.0 {
            1.0
        } else {
            erf(half / (std::f64::consts::SQRT_2 * sigma))
        }
    };
    1.0 - factor(model.sigma_tau()) * factor(model.sigma_omega())
}

/// A Monte Carlo estimate with its binomial standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub estimate: f64,
    pub stderr: f64,
    pub trials: u64,
    pub seed: u64,
}

fn mc_failure_count(model: &NoiseModel, trials: u64, seed: u64, stream_base: u64) -> u64 {
    let half = LatticeSpec::standard().half_cell();
    (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = RngStream::new(seed, stream_base + trial);
            let d = model.sample_displacement(&mut rng);
            u64::from(d.tau().abs() >= half || d.omega().abs() >= half)
        })
        .sum()
}

/// Estimate the half-cell failure probability empirically. Trial `t` draws
/// from stream index `t`, so the estimate is independent of scheduling and
/// thread count.
pub fn p_fail_monte_carlo(model: &NoiseModel, trials: u64, seed: u64) -> Result<McEstimate> {
    p_fail_monte_carlo_streamed(model, trials, seed, 0)
}

/// Like [`p_fail_monte_carlo`] but drawing trial `t` from stream
/// `stream_base + t`, for callers embedding the estimate into a larger
/// deterministic layout (map cells, sweep lines) that must stay independent
/// across positions.
pub fn p_fail_monte_carlo_streamed(
    model: &NoiseModel,
    trials: u64,
    seed: u64,
    stream_base: u64,
) -> Result<McEstimate> {
    if trials == 0 {
        return Err(Error::domain("monte carlo requires at least one trial"));
    }
    let failures = mc_failure_count(model, trials, seed, stream_base);
    let p = failures as f64 / trials as f64;
    Ok(McEstimate {
        estimate: p,
        stderr: (p * (1.0 - p) / trials as f64).sqrt(),
        trials,
        seed,
    })
}

/// How to fill a failure map.
#[derive(Debug, Clone, Copy)]
pub enum MapMode {
    Analytic,
    MonteCarlo { trials: u64, seed: u64 },
}

/// Half-cell failure probability sampled on a grid of channel widths.
#[derive(Debug, Clone)]
pub struct FailureMap {
    sigma_tau_axis: Vec<f64>,
    sigma_omega_axis: Vec<f64>,
    /// Row-major: `p_fail[i * n_omega + j]` for widths
    /// `(sigma_tau_axis[i], sigma_omega_axis[j])`.
    p_fail: Vec<f64>,
}

impl FailureMap {
    pub fn sigma_tau_axis(&self) -> &[f64] {
        &self.sigma_tau_axis
    }

    pub fn sigma_omega_axis(&self) -> &[f64] {
        &self.sigma_omega_axis
    }

    pub fn get(&self, i_tau: usize, j_omega: usize) -> f64 {
        self.p_fail[i_tau * self.sigma_omega_axis.len() + j_omega]
    }

    pub fn n_cells(&self) -> usize {
        self.p_fail.len()
    }

    /// Cells in row-major order as `(sigma_tau, sigma_omega, p_fail)`.
    pub fn cells(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        let n_omega = self.sigma_omega_axis.len();
        self.p_fail.iter().enumerate().map(move |(idx, &p)| {
            (
                self.sigma_tau_axis[idx / n_omega],
                self.sigma_omega_axis[idx % n_omega],
                p,
            )
        })
    }

    pub fn min(&self) -> f64 {
        self.p_fail.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.p_fail
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

fn validate_axis(name: &str, axis: &[f64]) -> Result<()> {
    if axis.is_empty() {
        return Err(Error::domain(format!("{name} axis is empty")));
    }
    for &v in axis {
        if !v.is_finite() || v < 0.0 {
            return Err(Error::domain(format!(
                "{name} axis value must be >= 0, got {v}"
            )));
        }
    }
    if axis.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::domain(format!(
            "{name} axis must be strictly increasing"
        )));
    }
    Ok(())
}

/// Fill a failure map over the given width axes.
///
/// In Monte Carlo mode, the cell at flat index `c` draws its trials from
/// stream indices `c·trials .. (c+1)·trials`, so every cell is statistically
/// independent of the others and the result does not depend on evaluation
/// order or thread count.
pub fn failure_map(tau_axis: &[f64], omega_axis: &[f64], mode: MapMode) -> Result<FailureMap> {
    validate_axis("sigma_tau", tau_axis)?;
    validate_axis("sigma_omega", omega_axis)?;
    if let MapMode::MonteCarlo { trials, .. } = mode {
        if trials == 0 {
            return Err(Error::domain("monte carlo requires at least one trial"));
        }
    }
    let n_omega = omega_axis.len();
    let n_cells = tau_axis.len() * n_omega;
    let p_fail = (0..n_cells)
        .into_par_iter()
        .map(|cell| {
            let model = NoiseModel::new(tau_axis[cell / n_omega], omega_axis[cell % n_omega])
                .expect("axis values validated above");
            match mode {
                MapMode::Analytic => p_fail_analytic(&model),
                MapMode::MonteCarlo { trials, seed } => {
                    let failures = mc_failure_count(&model, trials, seed, cell as u64 * trials);
                    failures as f64 / trials as f64
                }
            }
        })
        .collect();
    Ok(FailureMap {
        sigma_tau_axis: tau_axis.to_vec(),
        sigma_omega_axis: omega_axis.to_vec(),
        p_fail,
    })
}
