//! Subcommand implementations. Every handler validates its inputs, computes
//! through the library, and emits one deterministic artifact (CSV or JSON):
//! identical flags and seed produce byte-identical output at any thread count.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::Serialize;

use tfgkp::algebra::CombParams;
use tfgkp::correction::{run_cycles, run_uncorrected, AncillaModel};
use tfgkp::decoder::{
    failure_map, p_fail_analytic, p_fail_monte_carlo, p_fail_monte_carlo_streamed, MapMode,
};
use tfgkp::feasibility::{
    bandwidth_check, lattice_scales, resolution_check, ActuatorKind, ActuatorResponse,
    BandwidthReport, LatticeScales, ResolutionReport,
};
use tfgkp::grid::{make_logical, supermode_weights, GridStateModel, MarginalAxis};
use tfgkp::noise::{lab_to_dimensionless, LabBudgetConfig, NoiseModel};

use crate::output::{csv_num, emit, to_json};
use crate::parse::Range;
use crate::CliError;

fn noise_model(sigma_tau: f64, sigma_omega: f64) -> Result<NoiseModel, CliError> {
    NoiseModel::new(sigma_tau, sigma_omega).map_err(CliError::from)
}

// --- failure-map -----------------------------------------------------------

pub enum MapSpec {
    /// Independent `sigma_tau` × `sigma_omega` axes.
    Axes { tau: Range, omega: Range },
    /// The anisotropic line `sigma_tau = factor·sigma_omega` along one sweep.
    Anisotropy { omega: Range, factor: f64 },
}

pub fn cmd_failure_map(spec: MapSpec, mode: MapMode, out: &Path) -> Result<(), CliError> {
    let mut csv = String::from("sigma_tau,sigma_omega,p_fail\n");
    let (cell_count, min, max) = match spec {
        MapSpec::Axes { tau, omega } => {
            let map = failure_map(&tau.values(), &omega.values(), mode)?;
            for (st, so, p) in map.cells() {
                writeln!(csv, "{},{},{}", csv_num(st), csv_num(so), csv_num(p))
                    .expect("string write");
            }
            (map.n_cells(), map.min(), map.max())
        }
        MapSpec::Anisotropy { omega, factor } => {
            if !factor.is_finite() || factor <= 0.0 {
                return Err(CliError::usage(format!(
                    "anisotropy factor must be > 0, got {factor}"
                )));
            }
            // a 1-D sweep along the line, one cell per omega point
            let omegas = omega.values();
            let mut min = f64::INFINITY;
            let mut max = f64::NEG_INFINITY;
            for (idx, &so) in omegas.iter().enumerate() {
                let st = factor * so;
                let p = match mode {
                    MapMode::Analytic => p_fail_analytic(&noise_model(st, so)?),
                    MapMode::MonteCarlo { trials, seed } => {
                        // distinct stream block per line point, like map cells
                        let model = noise_model(st, so)?;
                        p_fail_monte_carlo_streamed(&model, trials, seed, idx as u64 * trials)?
                            .estimate
                    }
                };
                min = min.min(p);
                max = max.max(p);
                writeln!(csv, "{},{},{}", csv_num(st), csv_num(so), csv_num(p))
                    .expect("string write");
            }
            (omegas.len(), min, max)
        }
    };
    emit(Some(out), &csv)?;
    println!("cells: {cell_count}, p_fail min: {min:.6e}, max: {max:.6e}");
    Ok(())
}

// --- mc-failure -------------------------------------------------------------

#[derive(Serialize)]
struct McFailureReport {
    estimate: f64,
    stderr: f64,
    trials: u64,
    seed: u64,
}

pub fn cmd_mc_failure(
    sigma_tau: f64,
    sigma_omega: f64,
    trials: u64,
    seed: u64,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let est = p_fail_monte_carlo(&noise_model(sigma_tau, sigma_omega)?, trials, seed)?;
    let report = McFailureReport {
        estimate: est.estimate,
        stderr: est.stderr,
        trials: est.trials,
        seed: est.seed,
    };
    emit(out, &to_json(&report)?)
}

// --- wigner ------------------------------------------------------------------

pub struct WignerArgs {
    pub state: u8,
    pub sigma_tau: f64,
    pub sigma_omega: f64,
    pub n_peaks: usize,
}

impl WignerArgs {
    fn build(&self) -> Result<GridStateModel, CliError> {
        make_logical(self.state, self.sigma_tau, self.sigma_omega, self.n_peaks)
            .map_err(CliError::from)
    }
}

pub fn cmd_wigner(args: &WignerArgs, tau: Range, omega: Range, out: &Path) -> Result<(), CliError> {
    let state = args.build()?;
    let taus = tau.values();
    let omegas = omega.values();
    let mut csv = String::from("tau,omega,w\n");
    let mut mass = 0.0;
    let mut negative_cells = 0usize;
    for &t in &taus {
        for &w in &omegas {
            let value = state.wigner(t, w);
            if value < 0.0 {
                negative_cells += 1;
            }
            mass += value;
            writeln!(csv, "{},{},{}", csv_num(t), csv_num(w), csv_num(value))
                .expect("string write");
        }
    }
    emit(Some(out), &csv)?;
    if taus.len() > 1 && omegas.len() > 1 {
        let dt = (tau.stop - tau.start) / (taus.len() - 1) as f64;
        let dw = (omega.stop - omega.start) / (omegas.len() - 1) as f64;
        println!(
            "cells: {}, grid Wigner mass: {:.6} (1 when the grid covers the state), negative cells: {}",
            taus.len() * omegas.len(),
            mass * dt * dw,
            negative_cells
        );
    } else {
        println!(
            "cells: {}, negative cells: {}",
            taus.len() * omegas.len(),
            negative_cells
        );
    }
    Ok(())
}

pub fn cmd_wigner_marginal(
    args: &WignerArgs,
    axis: MarginalAxis,
    grid: Range,
    out: &Path,
) -> Result<(), CliError> {
    let state = args.build()?;
    let points = grid.values();
    let density = state.marginal(axis, &points)?;
    let label = match axis {
        MarginalAxis::Tau => "tau",
        MarginalAxis::Omega => "omega",
    };
    let mut csv = format!("{label},density\n");
    for (x, rho) in points.iter().zip(&density) {
        writeln!(csv, "{},{}", csv_num(*x), csv_num(*rho)).expect("string write");
    }
    emit(Some(out), &csv)?;
    println!("points: {}", points.len());
    Ok(())
}

// --- cycles -------------------------------------------------------------------

#[allow(clippy::too_many_arguments)]
pub fn cmd_cycles(
    sigma_tau: f64,
    sigma_omega: f64,
    anc_sigma_tau: Option<f64>,
    anc_sigma_omega: Option<f64>,
    n_cycles: usize,
    trials: u64,
    seed: u64,
    with_uncorrected: bool,
    out: &Path,
) -> Result<(), CliError> {
    let channel = noise_model(sigma_tau, sigma_omega)?;
    // ancilla defaults to the channel widths (same source technology)
    let anc = AncillaModel::new(
        anc_sigma_tau.unwrap_or(sigma_tau),
        anc_sigma_omega.unwrap_or(sigma_omega),
    )?;
    let corrected = run_cycles(&channel, &anc, n_cycles, trials, seed)?;
    let uncorrected = if with_uncorrected {
        Some(run_uncorrected(&channel, n_cycles, trials, seed)?)
    } else {
        None
    };
    let mut csv = String::new();
    match &uncorrected {
        None => {
            csv.push_str("cycle,per_cycle_error,cumulative_error,stderr\n");
            for s in &corrected {
                writeln!(
                    csv,
                    "{},{},{},{}",
                    s.cycle,
                    csv_num(s.per_cycle_error),
                    csv_num(s.cumulative_error),
                    csv_num(s.stderr)
                )
                .expect("string write");
            }
        }
        Some(unc) => {
            csv.push_str(
                "cycle,per_cycle_error,cumulative_error,stderr,uncorrected_cumulative,uncorrected_stderr\n",
            );
            for (s, u) in corrected.iter().zip(unc) {
                writeln!(
                    csv,
                    "{},{},{},{},{},{}",
                    s.cycle,
                    csv_num(s.per_cycle_error),
                    csv_num(s.cumulative_error),
                    csv_num(s.stderr),
                    csv_num(u.cumulative_failure),
                    csv_num(u.stderr)
                )
                .expect("string write");
            }
        }
    }
    emit(Some(out), &csv)?;
    let last = corrected.last().expect("at least one cycle");
    println!(
        "cycles: {n_cycles}, trials: {trials}, final cumulative frame-error: {:.6e}",
        last.cumulative_error
    );
    Ok(())
}

// --- feasibility ----------------------------------------------------------------

pub struct FeasibilityInputs {
    pub f_rep_hz: f64,
    pub f_ceo_hz: f64,
    pub budget_path: Option<PathBuf>,
    pub res_tau: Option<f64>,
    pub res_omega: Option<f64>,
    pub margin: f64,
    pub f_ctrl_hz: Option<f64>,
    pub f_op_hz: Option<f64>,
    pub actuators: Vec<ActuatorResponse>,
}

#[derive(Serialize)]
struct ActuatorReport {
    kind: ActuatorKind,
    corner_hz: f64,
    order: u32,
    /// |T| evaluated at the requested operation rate.
    response_at_f_op: f64,
}

#[derive(Serialize)]
struct FeasibilityInputEcho {
    f_rep_hz: f64,
    f_ceo_hz: f64,
    budget: Option<LabBudgetConfig>,
    res_tau: Option<f64>,
    res_omega: Option<f64>,
    margin: f64,
    f_ctrl_hz: Option<f64>,
    f_op_hz: Option<f64>,
}

#[derive(Serialize)]
struct FeasibilityReport {
    inputs: FeasibilityInputEcho,
    lattice_scales: LatticeScales,
    #[serde(skip_serializing_if = "Option::is_none")]
    noise_model: Option<NoiseModelReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    p_fail_analytic: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    resolution_check: Option<ResolutionReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    bandwidth_check: Option<BandwidthReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    actuator_responses: Vec<ActuatorReport>,
}

#[derive(Serialize)]
struct NoiseModelReport {
    sigma_tau: f64,
    sigma_omega: f64,
}

pub fn cmd_feasibility(inputs: &FeasibilityInputs, out: Option<&Path>) -> Result<(), CliError> {
    let comb = CombParams::new(inputs.f_rep_hz, inputs.f_ceo_hz)?;

    let budget_config = match &inputs.budget_path {
        None => None,
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
            let config: LabBudgetConfig = serde_json::from_str(&text)
                .map_err(|e| CliError::usage(format!("bad budget file {}: {e}", path.display())))?;
            if let Some(file_f_rep) = config.f_rep_hz {
                let rel = (file_f_rep - inputs.f_rep_hz).abs() / inputs.f_rep_hz;
                if rel > 1e-9 {
                    return Err(CliError::usage(format!(
                        "budget file pins f_rep_hz = {file_f_rep}, flag says {}",
                        inputs.f_rep_hz
                    )));
                }
            }
            Some(config)
        }
    };

    let noise = budget_config
        .as_ref()
        .map(|cfg| cfg.to_budget().map(|b| lab_to_dimensionless(&b, &comb)))
        .transpose()?;

    let resolution = match (inputs.res_tau, inputs.res_omega) {
        (None, None) => None,
        (rt, ro) => Some(resolution_check(
            rt.unwrap_or(0.0),
            ro.unwrap_or(0.0),
            inputs.margin,
        )?),
    };

    let bandwidth = match (inputs.f_ctrl_hz, inputs.f_op_hz) {
        (Some(ctrl), Some(op)) => Some(bandwidth_check(ctrl, op)?),
        (None, None) => None,
        _ => {
            return Err(CliError::usage(
                "bandwidth check needs both --f-ctrl-hz and --f-op-hz".to_string(),
            ))
        }
    };

    let actuator_responses = if inputs.actuators.is_empty() {
        Vec::new()
    } else {
        let f_op = inputs.f_op_hz.ok_or_else(|| {
            CliError::usage("actuator responses need --f-op-hz to evaluate at".to_string())
        })?;
        inputs
            .actuators
            .iter()
            .map(|a| {
                Ok(ActuatorReport {
                    kind: a.kind,
                    corner_hz: a.corner_hz,
                    order: a.order,
                    response_at_f_op: a.response(f_op)?,
                })
            })
            .collect::<Result<Vec<_>, CliError>>()?
    };

    let report = FeasibilityReport {
        inputs: FeasibilityInputEcho {
            f_rep_hz: inputs.f_rep_hz,
            f_ceo_hz: inputs.f_ceo_hz,
            budget: budget_config,
            res_tau: inputs.res_tau,
            res_omega: inputs.res_omega,
            margin: inputs.margin,
            f_ctrl_hz: inputs.f_ctrl_hz,
            f_op_hz: inputs.f_op_hz,
        },
        lattice_scales: lattice_scales(&comb),
        p_fail_analytic: noise.as_ref().map(p_fail_analytic),
        noise_model: noise.map(|m| NoiseModelReport {
            sigma_tau: m.sigma_tau(),
            sigma_omega: m.sigma_omega(),
        }),
        resolution_check: resolution,
        bandwidth_check: bandwidth,
        actuator_responses,
    };
    emit(out, &to_json(&report)?)
}

/// Parse `kind[:corner_hz:order]` actuator descriptions.
pub fn parse_actuator(text: &str) -> Result<ActuatorResponse, CliError> {
    let parts: Vec<&str> = text.split(':').collect();
    let default = match parts[0].to_ascii_lowercase().as_str() {
        "pzt" => ActuatorResponse::default_pzt(),
        "aom" => ActuatorResponse::default_aom(),
        "eom" => ActuatorResponse::default_eom(),
        other => {
            return Err(CliError::usage(format!(
                "unknown actuator '{other}' (expected pzt, aom, or eom)"
            )))
        }
    };
    match parts.as_slice() {
        [_] => Ok(default),
        [_, corner, order] => {
            let corner_hz: f64 = corner
                .parse()
                .map_err(|_| CliError::usage(format!("bad corner frequency '{corner}'")))?;
            let order: u32 = order
                .parse()
                .map_err(|_| CliError::usage(format!("bad order '{order}'")))?;
            ActuatorResponse::new(default.kind, corner_hz, order).map_err(CliError::from)
        }
        _ => Err(CliError::usage(format!(
            "actuator must be kind or kind:corner_hz:order, got '{text}'"
        ))),
    }
}

// --- supermode -----------------------------------------------------------------

#[derive(Serialize)]
struct ComplexReport {
    re: f64,
    im: f64,
}

#[derive(Serialize)]
struct SupermodeReport {
    lambda: f64,
    weights: Vec<ComplexReport>,
}

pub fn cmd_supermode(couplings: &[Complex64], out: Option<&Path>) -> Result<(), CliError> {
    let sm = supermode_weights(couplings)?;
    let report = SupermodeReport {
        lambda: sm.lambda(),
        weights: sm
            .weights()
            .iter()
            .map(|u| ComplexReport { re: u.re, im: u.im })
            .collect(),
    };
    emit(out, &to_json(&report)?)
}
