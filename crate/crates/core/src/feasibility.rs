//! Hardware anchoring arithmetic: lattice scales in physical units, control
//! resolution and bandwidth margins, representative actuator responses, and
//! the multiplexed-qubit source plan.

use serde::Serialize;

use crate::algebra::{sqrt_pi, CombParams};
use crate::error::{Error, Result};

/// GKP lattice displacement scales in physical units for a given comb.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct LatticeScales {
    /// Stabilizer time period `2√π·T_r` (seconds).
    pub dt_stab_s: f64,
    /// Logical time step `√π·T_r` (seconds).
    pub dt_logical_s: f64,
    /// Stabilizer frequency period `2√π/T_r` (rad/s).
    pub dw_stab_rad_s: f64,
    /// Logical frequency step `√π/T_r` (rad/s).
    pub dw_logical_rad_s: f64,
}

/// Physical lattice scales for a comb: the dimensionless stabilizer and
/// logical periods mapped through `T_r`.
pub fn lattice_scales(comb: &CombParams) -> LatticeScales {
    let t_rep = comb.t_rep_s();
    let logical = sqrt_pi();
    LatticeScales {
        dt_stab_s: 2.0 * logical * t_rep,
        dt_logical_s: logical * t_rep,
        dw_stab_rad_s: 2.0 * logical / t_rep,
        dw_logical_rad_s: logical / t_rep,
    }
}

/// Result of checking a control resolution against the half cell.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ResolutionReport {
    /// res_τ/(√π/2)
    pub ratio_tau: f64,
    /// res_Ω/(√π/2)
    pub ratio_omega: f64,
    pub margin: f64,
    pub pass_tau: bool,
    pub pass_omega: bool,
}

/// Check dimensionless control resolutions against the half cell √π/2.
///
/// An axis passes when `res < (√π/2)/margin`; the margin factor
/// operationalizes "well below" (default 10 at the CLI).
pub fn resolution_check(res_tau: f64, res_omega: f64, margin: f64) -> Result<ResolutionReport> {
    for (name, v) in [("res_tau", res_tau), ("res_omega", res_omega)] {
        if !v.is_finite() || v < 0.0 {
            return Err(Error::domain(format!(
                "{name} must be finite and >= 0, got {v}"
            )));
        }
    }
    if !margin.is_finite() || margin <= 0.0 {
        return Err(Error::domain(format!(
            "margin must be finite and > 0, got {margin}"
        )));
    }
    let half_cell = 0.5 * sqrt_pi();
    Ok(ResolutionReport {
        ratio_tau: res_tau / half_cell,
        ratio_omega: res_omega / half_cell,
        margin,
        pass_tau: res_tau < half_cell / margin,
        pass_omega: res_omega < half_cell / margin,
    })
}

/// Result of comparing control bandwidth to the intended operation rate.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct BandwidthReport {
    pub f_ctrl_hz: f64,
    pub f_op_hz: f64,
    /// `f_ctrl/f_op`; ≥ 1 passes (inclusive boundary).
    pub margin: f64,
    pub pass: bool,
}

pub fn bandwidth_check(f_ctrl_hz: f64, f_op_hz: f64) -> Result<BandwidthReport> {
    for (name, v) in [("f_ctrl_hz", f_ctrl_hz), ("f_op_hz", f_op_hz)] {
        if !v.is_finite() || v <= 0.0 {
            return Err(Error::domain(format!(
                "{name} must be finite and > 0, got {v}"
            )));
        }
    }
    Ok(BandwidthReport {
        f_ctrl_hz,
        f_op_hz,
        margin: f_ctrl_hz / f_op_hz,
        pass: f_ctrl_hz >= f_op_hz,
    })
}

/// Actuation channel families with representative bandwidths.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ActuatorKind {
    Pzt,
    Aom,
    Eom,
}

/// A low-pass model `|T(f)| = (1 + (f/corner)²)^(−order/2)` for an actuation
/// channel. The default corner frequencies and orders are representative of
/// the hardware class, not measured device data.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ActuatorResponse {
    pub kind: ActuatorKind,
    pub corner_hz: f64,
    pub order: u32,
}

impl ActuatorResponse {
    pub fn new(kind: ActuatorKind, corner_hz: f64, order: u32) -> Result<Self> {
        if !corner_hz.is_finite() || corner_hz <= 0.0 {
            return Err(Error::domain(format!(
                "corner frequency must be finite and > 0, got {corner_hz}"
            )));
        }
        if order == 0 {
            return Err(Error::domain("filter order must be >= 1"));
        }
        Ok(ActuatorResponse {
            kind,
            corner_hz,
            order,
        })
    }

    /// Slow piezo path: 1 kHz corner, second order.
    pub fn default_pzt() -> Self {
        ActuatorResponse {
            kind: ActuatorKind::Pzt,
            corner_hz: 1e3,
            order: 2,
        }
    }

    /// Acousto-optic path: 1 MHz corner, first order.
    pub fn default_aom() -> Self {
        ActuatorResponse {
            kind: ActuatorKind::Aom,
            corner_hz: 1e6,
            order: 1,
        }
    }

    /// Electro-optic path: 100 MHz corner, first order.
    pub fn default_eom() -> Self {
        ActuatorResponse {
            kind: ActuatorKind::Eom,
            corner_hz: 1e8,
            order: 1,
        }
    }

    /// |T(f)| ∈ (0, 1]: unity at DC, `2^(−order/2)` at the corner,
    /// strictly decreasing beyond.
    pub fn response(&self, f_hz: f64) -> Result<f64> {
        if !f_hz.is_finite() || f_hz < 0.0 {
            return Err(Error::domain(format!(
                "frequency must be finite and >= 0, got {f_hz}"
            )));
        }
        let x = f_hz / self.corner_hz;
        Ok((1.0 + x * x).powf(-0.5 * f64::from(self.order)))
    }
}

/// Assignment of logical qubits to source pairs and comb channels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplexPlan {
    n_qubits: usize,
    /// `(qubit index, source pair index, comb channel index)`, all 1-based
    /// except the channel, which is caller-defined.
    assignments: Vec<(usize, usize, i64)>,
}

impl MultiplexPlan {
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn assignments(&self) -> &[(usize, usize, i64)] {
        &self.assignments
    }

    /// Source units consumed: two per qubit.
    pub fn units_consumed(&self) -> usize {
        2 * self.n_qubits
    }
}

/// Plan `n_qubits` parallel logical qubits: qubit `k` (1-based) uses source
/// pair `k` — units `2k−1` and `2k` — and the k-th lowest distinct available
/// comb channel.
pub fn multiplex_plan(n_qubits: usize, available_channels: &[i64]) -> Result<MultiplexPlan> {
    if n_qubits == 0 {
        return Err(Error::domain("need at least one qubit"));
    }
    let mut channels: Vec<i64> = available_channels.to_vec();
    channels.sort_unstable();
    channels.dedup();
    if channels.len() < n_qubits {
        return Err(Error::Capacity(format!(
            "{n_qubits} qubits need {n_qubits} distinct comb channels, have {}",
            channels.len()
        )));
    }
    Ok(MultiplexPlan {
        n_qubits,
        assignments: (1..=n_qubits).map(|k| (k, k, channels[k - 1])).collect(),
    })
}

/// Dimensionless sanity hook: the product of the stabilizer periods is the
/// unit-cell area squared ratio `(2√π)² = 4π` independent of the comb.
pub fn stabilizer_area_product(scales: &LatticeScales) -> f64 {
    scales.dt_stab_s * scales.dw_stab_rad_s
}
