//! Syndrome extraction and deterministic recovery, iterated over correction
//! cycles.
//!
//! The simulation tracks displacements only: the state of a logical qubit is
//! its accumulated displacement error plus a Pauli frame, never a
//! wavefunction. One cycle is
//!
//! 1. the channel adds a random displacement to the data mode,
//! 2. an ancilla grid state and interferometric mixing yield both quadrature
//!    syndromes — the displacement modulo √π, blurred by the ancilla
//!    measurement widths,
//! 3. the corrective displacement −syndrome is applied,
//! 4. the lattice vector removed in the process updates the Pauli frame.
//!
//! Ancilla finite energy, beam-splitter back-action and detector resolution
//! are absorbed into a single pair of effective measurement-noise widths
//! ([`AncillaModel`]); with an ideal ancilla every in-cell displacement
//! recovers exactly. Trial `t` of every Monte Carlo runner draws from stream
//! index `t`, so aggregates are independent of scheduling and thread count.

use rayon::prelude::*;

use crate::algebra::{LatticeSpec, PhasePoint};
use crate::decoder::{reduce_mod_step, LogicalClass};
use crate::error::{Error, Result};
use crate::noise::{NoiseModel, RngStream};

/// Effective syndrome measurement-noise widths (dimensionless). `(0, 0)` is
/// ideal syndrome extraction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AncillaModel {
    sigma_meas_tau: f64,
    sigma_meas_omega: f64,
}

impl AncillaModel {
    pub fn new(sigma_meas_tau: f64, sigma_meas_omega: f64) -> Result<Self> {
        for (name, s) in [
            ("sigma_meas_tau", sigma_meas_tau),
            ("sigma_meas_omega", sigma_meas_omega),
        ] {
            if !s.is_finite() || s < 0.0 {
                return Err(Error::domain(format!(
                    "ancilla width {name} must be finite and >= 0, got {s}"
                )));
            }
        }
        Ok(AncillaModel {
            sigma_meas_tau,
            sigma_meas_omega,
        })
    }

    /// Noiseless syndrome extraction.
    pub fn ideal() -> Self {
        AncillaModel {
            sigma_meas_tau: 0.0,
            sigma_meas_omega: 0.0,
        }
    }

    /// Default choice: the ancilla is built from the same sources as the data
    /// mode, so its measurement widths match the channel widths.
    pub fn matching(channel: &NoiseModel) -> Self {
        AncillaModel {
            sigma_meas_tau: channel.sigma_tau(),
            sigma_meas_omega: channel.sigma_omega(),
        }
    }

    pub fn sigma_meas_tau(&self) -> f64 {
        self.sigma_meas_tau
    }

    pub fn sigma_meas_omega(&self) -> f64 {
        self.sigma_meas_omega
    }
}

fn wrap_half_cell(x: f64) -> f64 {
    reduce_mod_step(x, LatticeSpec::standard().logical_period()).0
}

/// Measure both quadrature syndromes of a data displacement.
///
/// Returns the noisy displacement reduced modulo √π into [−√π/2, √π/2) per
/// component. A full logical shift of √π is syndrome-invisible. Two normal
/// deviates are always consumed, ideal ancilla or not, so stream positions do
/// not depend on the widths.
pub fn measure_syndrome(delta: PhasePoint, anc: &AncillaModel, rng: &mut RngStream) -> PhasePoint {
    let z_tau = rng.next_standard_normal();
    let z_omega = rng.next_standard_normal();
    let noisy_tau = delta.tau()
        + if anc.sigma_meas_tau == 0.0 {
            0.0
        } else {
            anc.sigma_meas_tau * z_tau
        };
    let noisy_omega = delta.omega()
        + if anc.sigma_meas_omega == 0.0 {
            0.0
        } else {
            anc.sigma_meas_omega * z_omega
        };
    PhasePoint::raw(wrap_half_cell(noisy_tau), wrap_half_cell(noisy_omega))
}

/// Apply the corrective displacement −syndrome and fold the removed lattice
/// vector into the Pauli frame.
///
/// Returns the residual displacement (reduced into the half cell for the next
/// cycle) and the frame increment — the parity class of the lattice vector
/// nearest to `delta − syndrome`. Errors if a syndrome component lies outside
/// [−√π/2, √π/2).
pub fn apply_recovery(
    delta: PhasePoint,
    syndrome: PhasePoint,
) -> Result<(PhasePoint, LogicalClass)> {
    let lattice = LatticeSpec::standard();
    let half = lattice.half_cell();
    for (name, s) in [("tau", syndrome.tau()), ("omega", syndrome.omega())] {
        if !(-half..half).contains(&s) {
            return Err(Error::domain(format!(
                "syndrome {name} component {s} outside [-sqrt(pi)/2, sqrt(pi)/2)"
            )));
        }
    }
    let step = lattice.logical_period();
    let (r_tau, k_tau) = reduce_mod_step(delta.tau() - syndrome.tau(), step);
    let (r_omega, k_omega) = reduce_mod_step(delta.omega() - syndrome.omega(), step);
    Ok((
        PhasePoint::raw(r_tau, r_omega),
        LogicalClass::from_parities(k_tau.rem_euclid(2) == 1, k_omega.rem_euclid(2) == 1),
    ))
}

/// State of one trial after one correction cycle.
#[derive(Debug, Clone, Copy)]
pub struct CycleRecord {
    /// Cycle number, starting at 1.
    pub cycle: usize,
    /// Measured syndrome, components in [−√π/2, √π/2).
    pub syndrome: PhasePoint,
    /// Residual displacement carried into the next cycle.
    pub residual_after: PhasePoint,
    /// Frame increment recorded at this cycle.
    pub increment: LogicalClass,
    /// Accumulated Pauli frame after this cycle.
    pub frame: LogicalClass,
}

/// Advance one trial by one cycle; returns the frame increment.
fn cycle_step(
    residual: &mut PhasePoint,
    frame: &mut LogicalClass,
    channel: &NoiseModel,
    anc: &AncillaModel,
    rng: &mut RngStream,
) -> (PhasePoint, LogicalClass) {
    let delta = *residual + channel.sample_displacement(rng);
    let syndrome = measure_syndrome(delta, anc, rng);
    let (next_residual, increment) =
        apply_recovery(delta, syndrome).expect("syndrome is in range by construction");
    *residual = next_residual;
    *frame = frame.compose(increment);
    (syndrome, increment)
}

/// Run a single trial and record every cycle — the detailed counterpart of
/// [`run_cycles`], drawing from the identical stream for the same
/// `(seed, trial)`.
pub fn run_trial_trajectory(
    channel: &NoiseModel,
    anc: &AncillaModel,
    n_cycles: usize,
    seed: u64,
    trial: u64,
) -> Result<Vec<CycleRecord>> {
    if n_cycles == 0 {
        return Err(Error::domain("need at least one cycle"));
    }
    let mut rng = RngStream::new(seed, trial);
    let mut residual = PhasePoint::ZERO;
    let mut frame = LogicalClass::I;
    let mut records = Vec::with_capacity(n_cycles);
    for cycle in 1..=n_cycles {
        let (syndrome, increment) = cycle_step(&mut residual, &mut frame, channel, anc, &mut rng);
        records.push(CycleRecord {
            cycle,
            syndrome,
            residual_after: residual,
            increment,
            frame,
        });
    }
    Ok(records)
}

/// Per-cycle aggregate statistics of the corrected chain.
#[derive(Debug, Clone, Copy)]
pub struct CycleStat {
    /// Cycle number, starting at 1.
    pub cycle: usize,
    /// Fraction of trials whose frame changed at this cycle.
    pub per_cycle_error: f64,
    /// Fraction of trials whose accumulated frame differs from I after this
    /// cycle.
    pub cumulative_error: f64,
    /// Binomial standard error of `cumulative_error`.
    pub stderr: f64,
}

/// Simulate repeated correction cycles over many independent trials.
pub fn run_cycles(
    channel: &NoiseModel,
    anc: &AncillaModel,
    n_cycles: usize,
    trials: u64,
    seed: u64,
) -> Result<Vec<CycleStat>> {
    if n_cycles == 0 {
        return Err(Error::domain("need at least one cycle"));
    }
    if trials == 0 {
        return Err(Error::domain("need at least one trial"));
    }
    // counts[2c] = frame changed at cycle c, counts[2c+1] = frame != I after c
    let counts = (0..trials)
        .into_par_iter()
        .fold(
            || vec![0u64; 2 * n_cycles],
            |mut acc, trial| {
                let mut rng = RngStream::new(seed, trial);
                let mut residual = PhasePoint::ZERO;
                let mut frame = LogicalClass::I;
                for cycle in 0..n_cycles {
                    let (_, increment) =
                        cycle_step(&mut residual, &mut frame, channel, anc, &mut rng);
                    acc[2 * cycle] += u64::from(increment != LogicalClass::I);
                    acc[2 * cycle + 1] += u64::from(frame != LogicalClass::I);
                }
                acc
            },
        )
        .reduce(
            || vec![0u64; 2 * n_cycles],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        );
    let nf = trials as f64;
    Ok((0..n_cycles)
        .map(|cycle| {
            let cumulative = counts[2 * cycle + 1] as f64 / nf;
            CycleStat {
                cycle: cycle + 1,
                per_cycle_error: counts[2 * cycle] as f64 / nf,
                cumulative_error: cumulative,
                stderr: (cumulative * (1.0 - cumulative) / nf).sqrt(),
            }
        })
        .collect())
}

/// Half-cell failure fraction of the freely accumulating (uncorrected)
/// channel after each cycle count.
#[derive(Debug, Clone, Copy)]
pub struct UncorrectedStat {
    /// Number of accumulated channel uses, starting at 1.
    pub cycle: usize,
    /// Fraction of trials whose summed displacement is outside the half cell
    /// after this many uses. Matches the closed form with widths scaled by
    /// √cycle.
    pub cumulative_failure: f64,
    /// Binomial standard error of `cumulative_failure`.
    pub stderr: f64,
}

/// Accumulate channel displacements without correction and report the
/// half-cell failure fraction after each cycle. At `n_cycles = 1` and the same
/// `(trials, seed)` this reproduces `p_fail_monte_carlo` bit for bit: trial
/// `t` draws from stream `t` in both.
pub fn run_uncorrected(
    channel: &NoiseModel,
    n_cycles: usize,
    trials: u64,
    seed: u64,
) -> Result<Vec<UncorrectedStat>> {
    if n_cycles == 0 {
        return Err(Error::domain("need at least one cycle"));
    }
    if trials == 0 {
        return Err(Error::domain("need at least one trial"));
    }
    let half = LatticeSpec::standard().half_cell();
    let counts = (0..trials)
        .into_par_iter()
        .fold(
            || vec![0u64; n_cycles],
            |mut acc, trial| {
                let mut rng = RngStream::new(seed, trial);
                let mut sum = PhasePoint::ZERO;
                for slot in acc.iter_mut() {
                    sum = sum + channel.sample_displacement(&mut rng);
                    *slot += u64::from(sum.tau().abs() >= half || sum.omega().abs() >= half);
                }
                acc
            },
        )
        .reduce(
            || vec![0u64; n_cycles],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        );
    let nf = trials as f64;
    Ok(counts
        .iter()
        .enumerate()
        .map(|(cycle, &c)| {
            let p = c as f64 / nf;
            UncorrectedStat {
                cycle: cycle + 1,
                cumulative_failure: p,
                stderr: (p * (1.0 - p) / nf).sqrt(),
            }
        })
        .collect())
}
