//! Dimensionless time–frequency phase space and the Weyl displacement algebra.
//!
//! A single optical supermode referenced to a frequency comb carries a pair of
//! canonically conjugate variables: arrival time and angular frequency. Scaled
//! by the comb repetition period `T_r` they become the dimensionless pair
//! (τ, Ω) with `[τ̂, Ω̂] = i`, and every physical delay or frequency translation
//! is a Weyl displacement `D(τ,Ω) = exp[i(Ωτ̂ − τΩ̂)]` on that plane.
//!
//! Everything downstream (grid states, shift noise, decoding, correction)
//! lives on the square lattice generated by the commuting stabilizer
//! displacements `D(0, 2√π)` and `D(2√π, 0)`; the half-lattice translations
//! `D(√π, 0)` and `D(0, √π)` realize the logical Z and X operators.
//!
//! Composition convention: `a.compose(&b)` is the operator product `D(a)·D(b)`,
//! i.e. `b` acts first on a state. Under that convention
//! `D(a)D(b) = exp[i·ω(a,b)/2]·D(a+b)` with the symplectic form
//! `ω(a,b) = a.Ω·b.τ − a.τ·b.Ω`. The sign is fixed once here and checked
//! against a discretized-wavefunction oracle in the integration tests; the
//! absolute phase of a single displacement has no physical meaning (only
//! phase differences do), but a frozen convention makes equality testable.
//!
//! All types are immutable plain values; every operation is a pure function,
//! safe for unrestricted concurrent use. Finiteness is enforced at
//! construction so the operations themselves are infallible.

use crate::error::{Error, Result};

/// √π — the logical (half-lattice) period. Computed from the double-precision
/// π constant at call sites rather than stored as a decimal literal, so every
/// module shares bit-identical lattice scales.
#[inline]
pub fn sqrt_pi() -> f64 {
    std::f64::consts::PI.sqrt()
}

/// Default absolute tolerance for lattice classification, far below any
/// physically meaningful displacement and far above double-precision noise.
pub const DEFAULT_CLASSIFY_TOL: f64 = 1e-9;

#[inline]
fn two_pi() -> f64 {
    2.0 * std::f64::consts::PI
}

/// Reduce an angle to the half-open interval [0, 2π).
///
/// The seam is half-open: values that round onto 2π itself map to 0.
pub fn reduce_phase(phi: f64) -> f64 {
    let full = two_pi();
    let mut r = phi % full;
    if r < 0.0 {
        r += full;
    }
    if r >= full {
        r = 0.0;
    }
    r
}

/// Circular distance between two angles: the length of the shorter arc,
/// in [0, π]. This is the right metric for "equal mod 2π" assertions —
/// a phase of 2π − 1e-16 is at distance 1e-16 from 0, not 2π.
pub fn phase_distance(a: f64, b: f64) -> f64 {
    let d = reduce_phase(a - b);
    d.min(two_pi() - d)
}

/// A displacement vector (τ, Ω) in the dimensionless time–frequency phase
/// space: τ in units of `T_r`, Ω in units of `1/T_r`.
///
/// Both components are guaranteed finite; construction rejects NaN and
/// infinities so downstream operations never see them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhasePoint {
    tau: f64,
    omega: f64,
}

impl PhasePoint {
    /// The origin of phase space.
    pub const ZERO: PhasePoint = PhasePoint {
        tau: 0.0,
        omega: 0.0,
    };

    pub fn new(tau: f64, omega: f64) -> Result<Self> {
        if !tau.is_finite() || !omega.is_finite() {
            return Err(Error::NonFinite("phase-space components"));
        }
        Ok(PhasePoint { tau, omega })
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub(crate) fn raw(tau: f64, omega: f64) -> Self {
        debug_assert!(tau.is_finite() && omega.is_finite());
        PhasePoint { tau, omega }
    }
}

impl std::ops::Add for PhasePoint {
    type Output = PhasePoint;
    fn add(self, rhs: PhasePoint) -> PhasePoint {
        PhasePoint {
            tau: self.tau + rhs.tau,
            omega: self.omega + rhs.omega,
        }
    }
}

impl std::ops::Sub for PhasePoint {
    type Output = PhasePoint;
    fn sub(self, rhs: PhasePoint) -> PhasePoint {
        PhasePoint {
            tau: self.tau - rhs.tau,
            omega: self.omega - rhs.omega,
        }
    }
}

impl std::ops::Neg for PhasePoint {
    type Output = PhasePoint;
    fn neg(self) -> PhasePoint {
        PhasePoint {
            tau: -self.tau,
            omega: -self.omega,
        }
    }
}

/// Antisymmetric bilinear form ω(a,b) = a.Ω·b.τ − a.τ·b.Ω.
///
/// This is the phase that controls commutation of the corresponding Weyl
/// operators: `D(a)D(b) = exp[i·ω(a,b)]·D(b)D(a)`.
pub fn symplectic_form(a: PhasePoint, b: PhasePoint) -> f64 {
    a.omega * b.tau - a.tau * b.omega
}

/// The commutation phase ω(a,b) reduced to [0, 2π).
///
/// Zero means the displacements commute; π means they anticommute.
pub fn commutation_phase(a: PhasePoint, b: PhasePoint) -> f64 {
    reduce_phase(symplectic_form(a, b))
}

/// A Weyl displacement: a phase-space vector together with the scalar phase
/// accumulated under composition, stored reduced to [0, 2π).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeylDisplacement {
    vector: PhasePoint,
    phase: f64,
}

impl WeylDisplacement {
    /// A displacement with an explicit accumulated phase (reduced mod 2π).
    pub fn new(vector: PhasePoint, phase: f64) -> Result<Self> {
        if !phase.is_finite() {
            return Err(Error::NonFinite("displacement phase"));
        }
        Ok(WeylDisplacement {
            vector,
            phase: reduce_phase(phase),
        })
    }

    /// A pure displacement with zero accumulated phase.
    pub fn from_vector(vector: PhasePoint) -> Self {
        WeylDisplacement { vector, phase: 0.0 }
    }

    /// The group identity: zero vector, zero phase.
    pub fn identity() -> Self {
        WeylDisplacement {
            vector: PhasePoint::ZERO,
            phase: 0.0,
        }
    }

    pub fn vector(&self) -> PhasePoint {
        self.vector
    }

    /// Accumulated phase in [0, 2π).
    pub fn phase(&self) -> f64 {
        self.phase
    }

    /// Operator product `D(self)·D(other)` (so `other` acts first): vectors
    /// add, and the phase picks up half the symplectic form of the vectors.
    pub fn compose(&self, other: &WeylDisplacement) -> WeylDisplacement {
        let phase = self.phase + other.phase + 0.5 * symplectic_form(self.vector, other.vector);
        WeylDisplacement {
            vector: self.vector + other.vector,
            phase: reduce_phase(phase),
        }
    }

    /// The group inverse: `d.compose(&d.inverse())` is the identity, since
    /// ω(v, −v) = 0.
    pub fn inverse(&self) -> WeylDisplacement {
        WeylDisplacement {
            vector: -self.vector,
            phase: reduce_phase(-self.phase),
        }
    }
}

/// Classification of a phase-space displacement against the GKP lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DisplacementClass {
    /// Within tolerance of the origin.
    Identity,
    /// Both components on the stabilizer lattice (even multiples of √π),
    /// not the origin.
    Stabilizer,
    /// Ω component an odd multiple of √π, τ component even.
    LogicalX,
    /// τ component an odd multiple of √π, Ω component even.
    LogicalZ,
    /// Both components odd multiples of √π.
    LogicalY,
    /// Off-lattice.
    Generic,
}

/// Geometry of the square GKP lattice: stabilizer period 2√π, logical period
/// √π, half cell √π/2. The three scales are stored together so their exact
/// 4:2:1 ratios hold to the machine precision of the shared constant.
#[derive(Debug, Clone, Copy)]
pub struct LatticeSpec {
    stabilizer_period: f64,
    logical_period: f64,
    half_cell: f64,
}

impl LatticeSpec {
    /// The standard square lattice derived from √π.
    pub fn standard() -> Self {
        let logical = sqrt_pi();
        LatticeSpec {
            stabilizer_period: 2.0 * logical,
            logical_period: logical,
            half_cell: 0.5 * logical,
        }
    }

    /// 2√π: the displacement period of the stabilizer generators.
    pub fn stabilizer_period(&self) -> f64 {
        self.stabilizer_period
    }

    /// √π: the displacement period of the logical Pauli generators.
    pub fn logical_period(&self) -> f64 {
        self.logical_period
    }

    /// √π/2: the radius of the correctable region around each lattice site.
    pub fn half_cell(&self) -> f64 {
        self.half_cell
    }
}

impl Default for LatticeSpec {
    fn default() -> Self {
        LatticeSpec::standard()
    }
}

/// Classify a displacement by its position on the lattice of √π multiples.
///
/// A component "sits on the lattice" when it is within `tol` (absolute) of an
/// integer multiple of √π; the parities of the two multiples then decide the
/// class: both zero → `Identity`, both even → `Stabilizer`, odd τ → `LogicalZ`,
/// odd Ω → `LogicalX`, both odd → `LogicalY`. Anything off-lattice is
/// `Generic`.
pub fn classify_displacement(
    p: PhasePoint,
    lattice: &LatticeSpec,
    tol: f64,
) -> Result<DisplacementClass> {
    if !tol.is_finite() || tol < 0.0 {
        return Err(Error::domain(format!(
            "classification tolerance must be >= 0, got {tol}"
        )));
    }
    let step = lattice.logical_period();
    let near_multiple = |x: f64| -> Option<i64> {
        let k = (x / step).round();
        ((x - k * step).abs() <= tol).then_some(k as i64)
    };
    let (Some(k_tau), Some(k_omega)) = (near_multiple(p.tau()), near_multiple(p.omega())) else {
        return Ok(DisplacementClass::Generic);
    };
    let class = match (
        k_tau == 0 && k_omega == 0,
        k_tau.rem_euclid(2),
        k_omega.rem_euclid(2),
    ) {
        (true, _, _) => DisplacementClass::Identity,
        (false, 0, 0) => DisplacementClass::Stabilizer,
        (false, 1, 0) => DisplacementClass::LogicalZ,
        (false, 0, 1) => DisplacementClass::LogicalX,
        (false, _, _) => DisplacementClass::LogicalY,
    };
    Ok(class)
}

/// Stabilized frequency-comb parameters anchoring the dimensionless phase
/// space to laboratory units.
///
/// The repetition rate fixes the time scale `T_r = 1/f_rep` and the angular
/// comb spacing `ω_rep = 2π·f_rep`. The carrier-envelope offset frequency is
/// recorded for provenance only; it fixes a global phase reference that never
/// enters the lattice geometry.
#[derive(Debug, Clone, Copy)]
pub struct CombParams {
    f_rep_hz: f64,
    f_ceo_hz: f64,
    t_rep_s: f64,
    omega_rep_rad_s: f64,
}

impl CombParams {
    pub fn new(f_rep_hz: f64, f_ceo_hz: f64) -> Result<Self> {
        if !f_rep_hz.is_finite() || f_rep_hz <= 0.0 {
            return Err(Error::domain(format!(
                "repetition rate must be finite and positive, got {f_rep_hz}"
            )));
        }
        if !f_ceo_hz.is_finite() {
            return Err(Error::NonFinite("carrier-envelope offset frequency"));
        }
        Ok(CombParams {
            f_rep_hz,
            f_ceo_hz,
            t_rep_s: 1.0 / f_rep_hz,
            omega_rep_rad_s: 2.0 * std::f64::consts::PI * f_rep_hz,
        })
    }

    pub fn f_rep_hz(&self) -> f64 {
        self.f_rep_hz
    }

    pub fn f_ceo_hz(&self) -> f64 {
        self.f_ceo_hz
    }

    /// Repetition period `T_r` in seconds.
    pub fn t_rep_s(&self) -> f64 {
        self.t_rep_s
    }

    /// Angular comb spacing `2π·f_rep` in rad/s.
    pub fn omega_rep_rad_s(&self) -> f64 {
        self.omega_rep_rad_s
    }
}

/// Map a dimensionless displacement to physical units:
/// `Δt = τ·T_r` (seconds), `Δω = Ω/T_r` (rad/s).
pub fn to_physical(p: PhasePoint, comb: &CombParams) -> (f64, f64) {
    (p.tau() * comb.t_rep_s(), p.omega() / comb.t_rep_s())
}

/// Inverse of [`to_physical`]: `τ = Δt/T_r`, `Ω = Δω·T_r`.
pub fn from_physical(
    delta_t_s: f64,
    delta_omega_rad_s: f64,
    comb: &CombParams,
) -> Result<PhasePoint> {
    PhasePoint::new(
        delta_t_s / comb.t_rep_s(),
        delta_omega_rad_s * comb.t_rep_s(),
    )
}
