//! Finite-energy grid-state models: comb-of-Gaussians wavefunctions, their
//! exact Wigner functions, and the driven-supermode weight normalization.
//!
//! A logical basis state is a comb of Gaussian peaks of width `sigma_tau`
//! spaced by the stabilizer period 2√π, under a Gaussian envelope whose
//! τ-width is `1/sigma_omega`, centered on the grid offset (0 for bit 0,
//! √π for bit 1). Width convention, frozen here:
//!
//! * `sigma_tau` is the standard deviation of each peak in the |ψ(τ)|²
//!   density, so `ψ ∝ Σ_k c_k·exp(−(τ−μ_k)²/(4σ_τ²))`;
//! * `sigma_omega` enters as the inverse envelope width,
//!   `c_k ∝ exp(−(μ_k−offset)²·σ_Ω²/2)`, which makes the frequency-side
//!   peaks acquire width ≈ `sigma_omega`.
//!
//! The two widths are treated as independent knobs; the approximation is
//! clean while `sigma_tau·sigma_omega` is small (peaks in either variable
//! stay well separated), which the marginal tests check numerically.
//!
//! The Wigner function of a Gaussian comb is itself a finite double sum over
//! peak pairs: each pair (k, l) contributes a Gaussian centered at the pair
//! midpoint in τ, a shared Gaussian envelope in Ω, and an oscillation
//! `cos((μ_k−μ_l)·Ω)` — the interference fringes between lattice sites. This
//! closed form is exact for the model, so numeric quadrature of it doubles as
//! an independent cross-check of the wavefunction (and vice versa): the
//! Ω-integral of each pair term reproduces the |ψ(τ)|² cross term
//! analytically.
//!
//! Models are immutable once built; every evaluation is pure.

use num_complex::Complex64;

use crate::algebra::{sqrt_pi, PhasePoint};
use crate::error::{Error, Result};

/// Default number of comb peaks retained in a model.
pub const DEFAULT_N_PEAKS: usize = 7;

/// Relative envelope weight below which an outer peak is dropped. Bounds the
/// truncation error of every evaluated quantity at the same level.
pub const PEAK_TRUNCATION_RATIO: f64 = 1e-12;

/// Default peak width 0.2√π, used for both `sigma_tau` and `sigma_omega`.
pub fn default_peak_width() -> f64 {
    0.2 * sqrt_pi()
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Peak {
    center: f64,
    coeff: f64,
}

/// A finite-energy logical grid state.
#[derive(Debug, Clone, PartialEq)]
pub struct GridStateModel {
    logical_bit: u8,
    sigma_tau: f64,
    sigma_omega: f64,
    n_peaks: usize,
    offset: PhasePoint,
    peaks: Vec<Peak>,
}

/// Build the logical basis state `bit` ∈ {0, 1}.
///
/// Peaks sit at `offset + 2√π·k` for `k = −(n_peaks−1)/2 … +(n_peaks−1)/2`
/// with `offset = bit·√π`; outer peaks whose envelope weight falls below
/// [`PEAK_TRUNCATION_RATIO`] of the central one are dropped; coefficients are
/// then normalized so the wavefunction has unit L² norm (in closed form, so
/// the norm is exact up to rounding).
pub fn make_logical(
    bit: u8,
    sigma_tau: f64,
    sigma_omega: f64,
    n_peaks: usize,
) -> Result<GridStateModel> {
    if bit > 1 {
        return Err(Error::domain(format!(
            "logical bit must be 0 or 1, got {bit}"
        )));
    }
    for (name, s) in [("sigma_tau", sigma_tau), ("sigma_omega", sigma_omega)] {
        if !s.is_finite() || s <= 0.0 {
            return Err(Error::domain(format!(
                "{name} must be finite and > 0, got {s}"
            )));
        }
    }
    if n_peaks == 0 || n_peaks.is_multiple_of(2) {
        return Err(Error::domain(format!(
            "n_peaks must be odd and >= 1, got {n_peaks}"
        )));
    }
    let offset_tau = f64::from(bit) * sqrt_pi();
    let spacing = 2.0 * sqrt_pi();
    let half_extent = (n_peaks as i64 - 1) / 2;
    let mut peaks: Vec<Peak> = (-half_extent..=half_extent)
        .filter_map(|k| {
            let comb_pos = spacing * k as f64;
            let weight = (-0.5 * comb_pos * comb_pos * sigma_omega * sigma_omega).exp();
            (weight >= PEAK_TRUNCATION_RATIO).then_some(Peak {
                center: offset_tau + comb_pos,
                coeff: weight,
            })
        })
        .collect();

    let norm = norm_sq(&peaks, sigma_tau).sqrt();
    for p in &mut peaks {
        p.coeff /= norm;
    }
    Ok(GridStateModel {
        logical_bit: bit,
        sigma_tau,
        sigma_omega,
        n_peaks,
        offset: PhasePoint::raw(offset_tau, 0.0),
        peaks,
    })
}

/// Closed-form squared L² norm of a Gaussian comb:
/// `√(2π)·σ·Σ_{k,l} c_k c_l exp(−(μ_k−μ_l)²/(8σ²))`.
fn norm_sq(peaks: &[Peak], sigma_tau: f64) -> f64 {
    let mut total = 0.0;
    for a in peaks {
        for b in peaks {
            let gap = a.center - b.center;
            total += a.coeff * b.coeff * (-gap * gap / (8.0 * sigma_tau * sigma_tau)).exp();
        }
    }
    (2.0 * std::f64::consts::PI).sqrt() * sigma_tau * total
}

impl GridStateModel {
    pub fn logical_bit(&self) -> u8 {
        self.logical_bit
    }

    pub fn sigma_tau(&self) -> f64 {
        self.sigma_tau
    }

    pub fn sigma_omega(&self) -> f64 {
        self.sigma_omega
    }

    /// Requested comb size (before truncation).
    pub fn n_peaks(&self) -> usize {
        self.n_peaks
    }

    /// Grid offset relative to the bit-0 lattice.
    pub fn offset(&self) -> PhasePoint {
        self.offset
    }

    /// Retained peaks as `(center, coefficient)` pairs, normalized.
    pub fn peaks(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.peaks.iter().map(|p| (p.center, p.coeff))
    }

    /// Number of peaks kept after envelope truncation.
    pub fn retained_peaks(&self) -> usize {
        self.peaks.len()
    }

    /// Evaluate ψ(τ). Real for the canonical basis states (offset.Ω = 0);
    /// a nonzero Ω offset multiplies by the plane wave `exp(i·Ω₀·τ)`.
    pub fn wavefunction_tau(&self, tau: f64) -> Complex64 {
        let quarter_inv = 1.0 / (4.0 * self.sigma_tau * self.sigma_tau);
        let amplitude: f64 = self
            .peaks
            .iter()
            .map(|p| {
                let d = tau - p.center;
                p.coeff * (-d * d * quarter_inv).exp()
            })
            .sum();
        let omega0 = self.offset.omega();
        if omega0 == 0.0 {
            Complex64::new(amplitude, 0.0)
        } else {
            Complex64::from_polar(amplitude, omega0 * tau)
        }
    }

    /// Evaluate the Wigner function `W(τ, Ω)` in closed form.
    ///
    /// Exact for the comb-of-Gaussians model. Real by construction; bounded by
    /// 1/π in magnitude for any normalized model (saturated by a single peak).
    pub fn wigner(&self, tau: f64, omega: f64) -> f64 {
        let sigma = self.sigma_tau;
        let v = omega - self.offset.omega();
        let prefactor = sigma * (2.0 * std::f64::consts::PI).sqrt() / std::f64::consts::PI
            * (-2.0 * sigma * sigma * v * v).exp();
        if prefactor == 0.0 {
            return 0.0;
        }
        let half_inv = 1.0 / (2.0 * sigma * sigma);
        let mut sum = 0.0;
        for a in &self.peaks {
            for b in &self.peaks {
                let mid = tau - 0.5 * (a.center + b.center);
                let gap = a.center - b.center;
                sum += a.coeff * b.coeff * (-mid * mid * half_inv).exp() * (gap * v).cos();
            }
        }
        prefactor * sum
    }

    /// Probability-density samples of a marginal along one axis.
    ///
    /// The τ marginal is `|ψ(τ)|²`; the Ω marginal is `|ψ̃(Ω)|²` with ψ̃ the
    /// unitary Fourier transform of ψ. Both equal the corresponding integral
    /// of the Wigner function analytically. The grid must be strictly
    /// increasing.
    pub fn marginal(&self, axis: MarginalAxis, grid: &[f64]) -> Result<Vec<f64>> {
        if grid.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite("marginal grid"));
        }
        if grid.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::domain("marginal grid must be strictly increasing"));
        }
        Ok(match axis {
            MarginalAxis::Tau => grid
                .iter()
                .map(|&t| self.wavefunction_tau(t).norm_sqr())
                .collect(),
            MarginalAxis::Omega => grid.iter().map(|&w| self.omega_density(w)).collect(),
        })
    }

    /// `|ψ̃(Ω)|² = 2σ²·exp(−2σ²v²)·|Σ_k c_k·exp(−i·v·μ_k)|²`, v = Ω − Ω₀.
    fn omega_density(&self, omega: f64) -> f64 {
        let sigma = self.sigma_tau;
        let v = omega - self.offset.omega();
        let envelope = 2.0 * sigma * sigma * (-2.0 * sigma * sigma * v * v).exp();
        let phasor: Complex64 = self
            .peaks
            .iter()
            .map(|p| Complex64::from_polar(p.coeff, -v * p.center))
            .sum();
        envelope * phasor.norm_sqr()
    }
}

/// Which marginal of the phase-space density to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MarginalAxis {
    Tau,
    Omega,
}

/// Normalized weights of the pump-matched driven signal supermode.
#[derive(Debug, Clone, PartialEq)]
pub struct SupermodeWeights {
    weights: Vec<Complex64>,
    lambda: f64,
}

impl SupermodeWeights {
    /// Normalized mode weights `u_m = g_m/Λ`, with Σ|u_m|² = 1.
    pub fn weights(&self) -> &[Complex64] {
        &self.weights
    }

    /// Collective coupling `Λ = sqrt(Σ|g_m|²)`.
    pub fn lambda(&self) -> f64 {
        self.lambda
    }
}

/// Normalize a set of comb-mode couplings into supermode weights.
pub fn supermode_weights(couplings: &[Complex64]) -> Result<SupermodeWeights> {
    if couplings.is_empty() {
        return Err(Error::Degenerate("empty coupling vector"));
    }
    if couplings
        .iter()
        .any(|g| !g.re.is_finite() || !g.im.is_finite())
    {
        return Err(Error::NonFinite("supermode couplings"));
    }
    let lambda = couplings.iter().map(|g| g.norm_sqr()).sum::<f64>().sqrt();
    if lambda == 0.0 {
        return Err(Error::Degenerate("all-zero coupling vector"));
    }
    Ok(SupermodeWeights {
        weights: couplings.iter().map(|g| g / lambda).collect(),
        lambda,
    })
}
