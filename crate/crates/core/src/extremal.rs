//! The adjoint (momentum) system for geodesics through the identity and its
//! closed-form solutions.
//!
//! Every timelike or isotropic geodesic from the unit is governed by a
//! first-order system: the covector ψ evolves by a quadratic ODE driven by
//! the structure constants, and the velocity is read off ψ through the frame.
//! With a = √2 φ0 and b = |(ψ1, ψ2)|, the transverse pair precesses as
//! (ψ1, ψ2) = b (-sin θ, cos θ) with θ' = b cos θ - a < 0, which integrates
//! to tan(θ/2) = -√α tan(ω (t - t0)/2), α = (a-b)/(a+b), ω = √(a² - b²).
//! Positions then come out in elementary functions; this module evaluates
//! them with a continuous arctan-tangent branch so curves are smooth on all
//! of ℝ and start exactly at the identity.

use crate::chart::Chart;
use crate::group::{left_translate_tangent, AlgebraVector, GroupElement};
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, SQRT_2};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

/// Below this b the curve is treated as a straight line.
pub const LINE_THRESHOLD: f64 = 1e-12;

/// Acceptance tolerance for covector normalization residuals.
pub const NORMALIZATION_TOL: f64 = 1e-9;

#[derive(Debug, Error, PartialEq)]
pub enum ExtremalError {
    #[error("covector must be future directed: psi0 = {0} is not positive")]
    NonPositivePsi0(f64),
    #[error("{class} normalization violated: residual {residual:.3e} exceeds {tol:.1e}")]
    Normalization {
        class: GeodesicClass,
        residual: f64,
        tol: f64,
    },
    #[error("timelike curves require phi0 >= 1, got {0}")]
    Phi0OutOfRange(f64),
    #[error("isotropic curves require phi0 = 1, got {0}")]
    IsotropicPhi0(f64),
    #[error("|phi3| = {phi3_abs} exceeds the {class} bound {bound}")]
    Phi3OutOfRange {
        class: GeodesicClass,
        phi3_abs: f64,
        bound: f64,
    },
    #[error("b = {b} is inconsistent with the normalization (expected {expected})")]
    InconsistentB { b: f64, expected: f64 },
    #[error("operation undefined for straight-line parameters (b = 0)")]
    DegenerateLine,
}

/// Causal class of a geodesic family. Spacelike curves are out of scope.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GeodesicClass {
    Timelike,
    Isotropic,
}

impl GeodesicClass {
    /// Squared norm of the control: 1 for timelike, 0 for isotropic.
    pub fn control_norm_sq(&self) -> f64 {
        match self {
            GeodesicClass::Timelike => 1.0,
            GeodesicClass::Isotropic => 0.0,
        }
    }
}

impl fmt::Display for GeodesicClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeodesicClass::Timelike => f.write_str("timelike"),
            GeodesicClass::Isotropic => f.write_str("isotropic"),
        }
    }
}

impl FromStr for GeodesicClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "timelike" => Ok(GeodesicClass::Timelike),
            "isotropic" => Ok(GeodesicClass::Isotropic),
            other => Err(format!(
                "unknown class {other:?}; expected timelike or isotropic"
            )),
        }
    }
}

/// The adjoint covector ψ = (ψ0, ψ1, ψ2, ψ3) in the orthonormal frame.
/// Future-directed flows keep ψ0 > 0; along the flow ψ0 and ψ3 are constant
/// and ψ1² + ψ2² is conserved.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AdjointState {
    pub psi0: f64,
    pub psi1: f64,
    pub psi2: f64,
    pub psi3: f64,
}

impl AdjointState {
    pub fn new(psi0: f64, psi1: f64, psi2: f64, psi3: f64) -> Self {
        AdjointState {
            psi0,
            psi1,
            psi2,
            psi3,
        }
    }

    pub fn components(&self) -> [f64; 4] {
        [self.psi0, self.psi1, self.psi2, self.psi3]
    }

    /// Lorentz square ψ0² - ψ1² - ψ2² - ψ3², which equals (u, u) of the
    /// associated control.
    pub fn lorentz_sq(&self) -> f64 {
        self.psi0 * self.psi0
            - self.psi1 * self.psi1
            - self.psi2 * self.psi2
            - self.psi3 * self.psi3
    }
}

/// Right-hand side of the adjoint system specialized to this group:
/// ψ0' = ψ3' = 0, ψ1' = ψ2 (√2 φ0 - ψ2), ψ2' = -ψ1 (√2 φ0 - ψ2).
pub fn adjoint_rhs(psi: &AdjointState, phi0: f64) -> AdjointState {
    let gate = SQRT_2 * phi0 - psi.psi2;
    AdjointState::new(0.0, psi.psi2 * gate, -psi.psi1 * gate, 0.0)
}

/// Control reconstruction u = ψ0 e0 - ψ1 e1 - ψ2 e2' - ψ3 e3 (orthonormal
/// frame). Rejects covectors that are not future directed.
pub fn control(psi: &AdjointState) -> Result<AlgebraVector, ExtremalError> {
    if psi.psi0 <= 0.0 {
        return Err(ExtremalError::NonPositivePsi0(psi.psi0));
    }
    Ok(AlgebraVector::orthonormal(
        psi.psi0, -psi.psi1, -psi.psi2, -psi.psi3,
    ))
}

/// Continuous strictly increasing extension of s ↦ arctan(β tan s).
///
/// Equals arctan(β tan s) on (-π/2, π/2), satisfies f(s + kπ) = f(s) + kπ
/// and takes the value π/2 + kπ at s = π/2 + kπ. Requires β > 0.
pub fn unwrapped_atan_tan(beta: f64, s: f64) -> f64 {
    assert!(beta > 0.0, "unwrapped_atan_tan requires beta > 0");
    let mut k = (s / PI + 0.5).floor();
    let mut r = s - k * PI;
    // rounding can push r a few ulps outside [-π/2, π/2), where tan flips
    // sign; move such points into the adjacent branch
    if r < -std::f64::consts::FRAC_PI_2 {
        k -= 1.0;
        r = s - k * PI;
    } else if r >= std::f64::consts::FRAC_PI_2 {
        k += 1.0;
        r = s - k * PI;
    }
    (beta * r.tan()).atan() + k * PI
}

/// Serializable flat form of [`GeodesicParams`]. Derived quantities are
/// recomputed on load, never stored.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ParamsRecord {
    pub class: GeodesicClass,
    pub phi0: f64,
    pub phi3: f64,
    pub b: f64,
    pub t0: f64,
}

/// Parameters of a geodesic through the identity.
///
/// `phi0` is the conserved ψ0; `phi3` is the slope of x3 (the constant e3
/// component of the control); `b` is the conserved transverse radius
/// √(ψ1² + ψ2²); `t0` is the phase at which θ crosses zero. The
/// normalization ties b to the rest: b² = φ0² - (u,u) - φ3².
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GeodesicParams {
    class: GeodesicClass,
    phi0: f64,
    phi3: f64,
    b: f64,
    t0: f64,
}

impl GeodesicParams {
    /// Build from (class, φ0, φ3, t0), deriving b from the normalization.
    pub fn new(class: GeodesicClass, phi0: f64, phi3: f64, t0: f64) -> Result<Self, ExtremalError> {
        match class {
            GeodesicClass::Isotropic => {
                if (phi0 - 1.0).abs() > 1e-12 {
                    return Err(ExtremalError::IsotropicPhi0(phi0));
                }
            }
            GeodesicClass::Timelike => {
                if phi0 < 1.0 {
                    return Err(ExtremalError::Phi0OutOfRange(phi0));
                }
            }
        }
        let b_sq = phi0 * phi0 - class.control_norm_sq() - phi3 * phi3;
        let cancellation = 1e-12 * (phi0 * phi0).max(1.0);
        if b_sq < -cancellation {
            let bound = (phi0 * phi0 - class.control_norm_sq()).max(0.0).sqrt();
            return Err(ExtremalError::Phi3OutOfRange {
                class,
                phi3_abs: phi3.abs(),
                bound,
            });
        }
        // b² at the line boundary is pure cancellation noise; snap it so
        // that φ3 = ±bound lands exactly on the straight-line branch.
        let b = if b_sq <= cancellation {
            0.0
        } else {
            b_sq.sqrt()
        };
        Ok(GeodesicParams {
            class,
            phi0: if class == GeodesicClass::Isotropic {
                1.0
            } else {
                phi0
            },
            phi3,
            b,
            t0: if b < LINE_THRESHOLD { 0.0 } else { t0 },
        })
    }

    /// Extract parameters from a normalized initial covector.
    ///
    /// The phase convention reads (ψ1, ψ2) = b (-sin θ0, cos θ0), so
    /// θ0 = atan2(-ψ1, ψ2) ∈ (-π, π], and t0 solves θ(0) = θ0 on the
    /// principal branch, t0 ∈ (-π/ω, π/ω]. The x3 slope is φ3 = -ψ3, the
    /// e3 component of the control.
    pub fn from_initial(class: GeodesicClass, psi: &AdjointState) -> Result<Self, ExtremalError> {
        if psi.psi0 <= 0.0 {
            return Err(ExtremalError::NonPositivePsi0(psi.psi0));
        }
        let residual = match class {
            GeodesicClass::Isotropic => {
                let r1 = (psi.psi0 - 1.0).abs();
                let r2 =
                    (psi.psi1 * psi.psi1 + psi.psi2 * psi.psi2 + psi.psi3 * psi.psi3 - 1.0).abs();
                r1.max(r2)
            }
            GeodesicClass::Timelike => (psi.lorentz_sq() - 1.0).abs(),
        };
        if residual > NORMALIZATION_TOL {
            return Err(ExtremalError::Normalization {
                class,
                residual,
                tol: NORMALIZATION_TOL,
            });
        }
        if class == GeodesicClass::Timelike && psi.psi0 < 1.0 {
            return Err(ExtremalError::Phi0OutOfRange(psi.psi0));
        }

        let phi0 = match class {
            GeodesicClass::Isotropic => 1.0,
            GeodesicClass::Timelike => psi.psi0,
        };
        let phi3 = if psi.psi3 == 0.0 { 0.0 } else { -psi.psi3 };
        let b = (psi.psi1 * psi.psi1 + psi.psi2 * psi.psi2).sqrt();
        if b < LINE_THRESHOLD {
            return Ok(GeodesicParams {
                class,
                phi0,
                phi3,
                b: 0.0,
                t0: 0.0,
            });
        }

        let a = SQRT_2 * phi0;
        let omega = (a * a - b * b).sqrt();
        let alpha = (a - b) / (a + b);
        let theta0 = (-psi.psi1).atan2(psi.psi2);
        let t0 = if (theta0 - PI).abs() < 1e-15 {
            PI / omega
        } else {
            (2.0 / omega) * ((theta0 / 2.0).tan() / alpha.sqrt()).atan()
        };
        Ok(GeodesicParams {
            class,
            phi0,
            phi3,
            b,
            t0,
        })
    }

    /// Rebuild from a flat record, revalidating the stored b.
    pub fn from_record(rec: &ParamsRecord) -> Result<Self, ExtremalError> {
        let params = GeodesicParams::new(rec.class, rec.phi0, rec.phi3, rec.t0)?;
        if (params.b - rec.b).abs() > 1e-9 {
            return Err(ExtremalError::InconsistentB {
                b: rec.b,
                expected: params.b,
            });
        }
        Ok(params)
    }

    pub fn record(&self) -> ParamsRecord {
        ParamsRecord {
            class: self.class,
            phi0: self.phi0,
            phi3: self.phi3,
            b: self.b,
            t0: self.t0,
        }
    }

    pub fn class(&self) -> GeodesicClass {
        self.class
    }

    pub fn phi0(&self) -> f64 {
        self.phi0
    }

    pub fn phi3(&self) -> f64 {
        self.phi3
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn t0(&self) -> f64 {
        self.t0
    }

    /// True for the degenerate straight-line members (b = 0).
    pub fn is_line(&self) -> bool {
        self.b < LINE_THRESHOLD
    }

    /// The drift coefficient a = √2 φ0 of the θ equation.
    pub fn a_coef(&self) -> f64 {
        SQRT_2 * self.phi0
    }

    /// α = (a - b)/(a + b) ∈ (0, 1]; α ≥ 3 - 2√2 with equality only for
    /// isotropic curves with φ3 = 0.
    pub fn alpha(&self) -> f64 {
        let a = self.a_coef();
        (a - self.b) / (a + self.b)
    }

    /// Angular frequency ω = √(a² - b²) = √(φ0² + (u,u) + φ3²) > 0.
    pub fn omega(&self) -> f64 {
        let a = self.a_coef();
        (a * a - self.b * self.b).sqrt()
    }

    /// Amplitude β = (√2 b/ω) [(1+α) + (1-α) cos(ω t0)] of the x2 wave.
    pub fn beta(&self) -> f64 {
        let n0 = self.envelope(self.omega() * self.t0);
        SQRT_2 * self.b / self.omega() * n0
    }

    /// N(τ) = (1+α) + (1-α) cos τ, the positive envelope in all closed forms.
    fn envelope(&self, tau: f64) -> f64 {
        let alpha = self.alpha();
        (1.0 + alpha) + (1.0 - alpha) * tau.cos()
    }

    /// The precession angle: continuous, strictly decreasing, θ(t0) = 0.
    /// Undefined for straight lines.
    pub fn theta(&self, t: f64) -> Result<f64, ExtremalError> {
        if self.is_line() {
            return Err(ExtremalError::DegenerateLine);
        }
        let omega = self.omega();
        let sqrt_alpha = self.alpha().sqrt();
        Ok(-2.0 * unwrapped_atan_tan(sqrt_alpha, omega * (t - self.t0) / 2.0))
    }

    /// The adjoint covector along the flow, reconstructed from θ(t).
    pub fn adjoint_at(&self, t: f64) -> AdjointState {
        if self.is_line() {
            return AdjointState::new(self.phi0, 0.0, 0.0, -self.phi3);
        }
        let theta = self.theta(t).expect("oscillatory branch");
        AdjointState::new(
            self.phi0,
            -self.b * theta.sin(),
            self.b * theta.cos(),
            -self.phi3,
        )
    }

    pub fn initial_adjoint(&self) -> AdjointState {
        self.adjoint_at(0.0)
    }

    /// The control u(t) in the orthonormal frame.
    pub fn control_at(&self, t: f64) -> AlgebraVector {
        control(&self.adjoint_at(t)).expect("phi0 >= 1 by construction")
    }

    /// Coordinate velocity (dx0, dx1, dx2, dx3) at γ(t).
    pub fn velocity(&self, t: f64) -> [f64; 4] {
        left_translate_tangent(&self.position(t), &self.control_at(t))
    }

    /// Position of the geodesic at parameter t. Curves start at the
    /// identity: every term is a difference between its values at
    /// ω(t - t0) and -ω t0.
    ///
    /// Line members are (φ0 t, 0, 0, φ3 t). Oscillatory members use
    /// x1 = ln N differenced, x2 = β sin τ/N differenced, and
    /// x0 = -φ0 t + 2√2 (unwrapped arctan √α tan) differenced. All
    /// coordinates are smooth in t.
    pub fn position(&self, t: f64) -> GroupElement {
        if self.is_line() {
            return GroupElement::new(self.phi0 * t, 0.0, 0.0, self.phi3 * t);
        }
        let omega = self.omega();
        let alpha = self.alpha();
        let sqrt_alpha = alpha.sqrt();
        let tau = omega * (t - self.t0);
        let s0 = omega * self.t0;

        let n_tau = self.envelope(tau);
        let n_s0 = self.envelope(s0);

        let atan_part =
            unwrapped_atan_tan(sqrt_alpha, tau / 2.0) - unwrapped_atan_tan(sqrt_alpha, -s0 / 2.0);
        let x0 = -self.phi0 * t + 2.0 * SQRT_2 * atan_part;
        let x1 = n_tau.ln() - n_s0.ln();
        let wave = tau.sin() / n_tau + s0.sin() / n_s0;
        let x2 = self.beta() * wave;
        let x3 = self.phi3 * t;
        GroupElement::new(x0, x1, x2, x3)
    }

    /// Uniformly sample the curve on [t_min, t_max] with `steps` intervals.
    pub fn sample(&self, t_min: f64, t_max: f64, steps: usize) -> SampledCurve {
        assert!(steps > 0 && t_max > t_min);
        let samples = (0..=steps)
            .map(|i| {
                let t = t_min + (t_max - t_min) * i as f64 / steps as f64;
                (t, self.position(t))
            })
            .collect();
        SampledCurve {
            chart: Chart::Cartesian,
            samples,
            source: CurveSource::Geodesic(self.record()),
        }
    }
}

/// Where a sampled curve came from.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub enum CurveSource {
    Geodesic(ParamsRecord),
    /// A coordinate circle t = const at fixed cylindrical radius.
    CoordinateCircle {
        r: f64,
    },
}

/// An ordered list of (parameter, position) samples.
#[derive(Clone, Debug)]
pub struct SampledCurve {
    pub chart: Chart,
    pub samples: Vec<(f64, GroupElement)>,
    pub source: CurveSource,
}

impl SampledCurve {
    /// Parameters must strictly increase.
    pub fn is_monotone(&self) -> bool {
        self.samples.windows(2).all(|w| w[0].0 < w[1].0)
    }
}

/// Residual report of the minimum-principle conditions at one time.
#[derive(Clone, Debug, Serialize)]
pub struct PmpReport {
    /// |ψ(t)(u(t)) - (u,u)| for the reconstructed pair.
    pub pairing_residual: f64,
    /// Minimum of the pairing over the control region (timelike only).
    pub min_value: Option<f64>,
    /// |min - 1| for the timelike minimization clause.
    pub min_residual: Option<f64>,
    /// Distance of the minimizer to u(t) in hyperboloid parameters
    /// (max of |Δχ| and the angle between spatial directions).
    pub argmin_distance: Option<f64>,
    /// max_j |ψ'(t)(e_j) - ψ(t)([u(t), e_j])| over the orthonormal basis.
    pub adjoint_identity_residual: f64,
}

/// Verify the minimum-principle conditions for `params` at time `t`:
/// the pairing identity ψ(u) = (u,u), the numerical minimization of the
/// pairing over the control region U = {u0 > 0, (u,u) ≥ 1} (timelike only),
/// and the adjoint identity ψ'(v) = ψ([u, v]) on the basis.
pub fn pmp_check(params: &GeodesicParams, t: f64) -> PmpReport {
    let psi = params.adjoint_at(t);
    let u = control(&psi).expect("valid params").to_orthonormal().c;

    // (i) pairing
    let pairing: f64 = psi
        .components()
        .iter()
        .zip(u.iter())
        .map(|(p, v)| p * v)
        .sum();
    let pairing_residual = (pairing - params.class().control_norm_sq()).abs();

    // (ii) minimization over the hyperboloid boundary of U (timelike only)
    let (min_value, min_residual, argmin_distance) = match params.class() {
        GeodesicClass::Timelike => {
            let (val, chi, dir) = minimize_pairing(&psi);
            let spatial = [psi.psi1, psi.psi2, psi.psi3];
            let norm = (spatial.iter().map(|x| x * x).sum::<f64>()).sqrt();
            let chi_exact = psi.psi0.acosh();
            let dist = if norm < 1e-12 {
                // direction unconstrained when the spatial part vanishes
                (chi - chi_exact).abs()
            } else {
                let exact_dir = [-spatial[0] / norm, -spatial[1] / norm, -spatial[2] / norm];
                let dot: f64 = dir.iter().zip(exact_dir.iter()).map(|(a, b)| a * b).sum();
                let angle = dot.clamp(-1.0, 1.0).acos();
                (chi - chi_exact).abs().max(angle)
            };
            (Some(val), Some((val - 1.0).abs()), Some(dist))
        }
        GeodesicClass::Isotropic => (None, None, None),
    };

    // (iii) adjoint identity on the orthonormal basis
    let rate = adjoint_rhs(&psi, params.phi0());
    let rate_c = rate.components();
    let psi_c = psi.components();
    let cons = crate::group::structure_constants();
    let mut adjoint_identity_residual: f64 = 0.0;
    for j in 0..4 {
        // [u, e_j] = Σ_{i,k} u_i C^k_{ij} e_k, paired with ψ
        let mut rhs = 0.0;
        for i in 0..4 {
            for k in 0..4 {
                rhs += u[i] * cons[k][i][j] * psi_c[k];
            }
        }
        adjoint_identity_residual = adjoint_identity_residual.max((rate_c[j] - rhs).abs());
    }

    PmpReport {
        pairing_residual,
        min_value,
        min_residual,
        argmin_distance,
        adjoint_identity_residual,
    }
}

/// Grid search with local refinement for min ψ(u) over the unit hyperboloid
/// u = (cosh χ, sinh χ n̂). Returns (value, χ, n̂). Deterministic.
fn minimize_pairing(psi: &AdjointState) -> (f64, f64, [f64; 3]) {
    let pairing = |chi: f64, polar: f64, azim: f64| -> (f64, [f64; 3]) {
        let n = [
            polar.sin() * azim.cos(),
            polar.sin() * azim.sin(),
            polar.cos(),
        ];
        let sh = chi.sinh();
        let val =
            psi.psi0 * chi.cosh() + sh * (psi.psi1 * n[0] + psi.psi2 * n[1] + psi.psi3 * n[2]);
        (val, n)
    };

    let mut lo = [0.0, 0.0, -PI];
    let mut hi = [4.0, PI, PI];
    let mut best = (f64::INFINITY, 0.0, [0.0, 0.0, 1.0], [0.0, 0.0, 0.0]);
    let counts = [33usize, 17, 33];
    for round in 0..12 {
        let n = if round == 0 { counts } else { [9, 9, 9] };
        for i in 0..n[0] {
            let chi = lo[0] + (hi[0] - lo[0]) * i as f64 / (n[0] - 1) as f64;
            for j in 0..n[1] {
                let polar = lo[1] + (hi[1] - lo[1]) * j as f64 / (n[1] - 1) as f64;
                for k in 0..n[2] {
                    let azim = lo[2] + (hi[2] - lo[2]) * k as f64 / (n[2] - 1) as f64;
                    let (val, dir) = pairing(chi, polar, azim);
                    if val < best.0 {
                        best = (val, chi, dir, [chi, polar, azim]);
                    }
                }
            }
        }
        // shrink around the current best point
        let center = best.3;
        for d in 0..3 {
            let width = (hi[d] - lo[d]) * 0.2;
            lo[d] = (center[d] - width).max(if d == 0 { 0.0 } else { lo[d] - width });
            hi[d] = center[d] + width;
        }
    }
    (best.0, best.1, best.2)
}
