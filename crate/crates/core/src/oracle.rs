//! An independent integrator for the first-order geodesic system on matrix
//! Lie algebras, driven purely by structure constants and a matrix
//! realization of the basis. Used to validate every closed form; also hosts
//! the deterministic grid-scan helper behind the bound checks.
//!
//! The covector obeys ψ'_j = Σ_k (C^k_{0j} ψ0 ψk - Σ_{i=1..r} C^k_{ij} ψi ψk)
//! and the group position obeys the matrix equation γ' = γ · u(t) with
//! u = ψ0 e0 - Σ_{i=1..r} ψi e_i and γ(0) = 1.

use crate::extremal::GeodesicParams;
use nalgebra::{DMatrix, DVector};
use serde::Deserialize;
use std::f64::consts::SQRT_2;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("covector has {got} components, spec dimension is {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid structure constants: {0}")]
    InvalidConstants(String),
    #[error("Jacobi identity residual {0:.3e} exceeds 1e-12")]
    JacobiViolation(f64),
    #[error("basis matrices inconsistent with structure constants: {0}")]
    BasisMismatch(String),
    #[error("spec has no matrix realization; group positions cannot be integrated")]
    MissingBasis,
    #[error("initial covector must have psi0 > 0, got {0}")]
    NonPositivePsi0(f64),
    #[error("adaptive integrator rejected {0} consecutive steps")]
    StepRejectionExhausted(usize),
    #[error("bad integrator configuration: {0}")]
    BadConfig(String),
    #[error("cannot parse spec: {0}")]
    Parse(String),
}

/// A Lie algebra given by structure constants over a basis
/// (e_0, ..., e_n), with the first `rank` spatial directions e_1..e_r
/// carrying the control, plus an optional matrix realization.
#[derive(Clone, Debug)]
pub struct LieAlgebraSpec {
    dim: usize,
    rank: usize,
    constants: Vec<f64>, // [k][i][j] flattened
    basis: Option<Vec<DMatrix<f64>>>,
}

impl LieAlgebraSpec {
    /// Build and validate a spec. `triples` lists nonzero C^k_{ij} entries
    /// explicitly, including the antisymmetric partners.
    pub fn new(
        dim: usize,
        rank: usize,
        triples: &[(usize, usize, usize, f64)],
        basis: Option<Vec<DMatrix<f64>>>,
    ) -> Result<Self, OracleError> {
        if dim == 0 || rank >= dim {
            return Err(OracleError::InvalidConstants(format!(
                "need 0 <= rank <= dim - 1, got dim = {dim}, rank = {rank}"
            )));
        }
        let mut constants = vec![0.0; dim * dim * dim];
        for &(k, i, j, v) in triples {
            if k >= dim || i >= dim || j >= dim {
                return Err(OracleError::InvalidConstants(format!(
                    "index ({k},{i},{j}) out of range for dimension {dim}"
                )));
            }
            constants[(k * dim + i) * dim + j] = v;
        }
        let spec = LieAlgebraSpec {
            dim,
            rank,
            constants,
            basis: None,
        };
        for k in 0..dim {
            for i in 0..dim {
                for j in 0..dim {
                    let sym = spec.c(k, i, j) + spec.c(k, j, i);
                    if sym.abs() > 1e-12 {
                        return Err(OracleError::InvalidConstants(format!(
                            "C^{k}_{{{i}{j}}} is not antisymmetric (sum {sym:.3e})"
                        )));
                    }
                }
            }
        }
        let jac = spec.jacobi_residual();
        if jac > 1e-12 {
            return Err(OracleError::JacobiViolation(jac));
        }
        if let Some(ref mats) = basis {
            if mats.len() != dim {
                return Err(OracleError::BasisMismatch(format!(
                    "{} matrices for dimension {dim}",
                    mats.len()
                )));
            }
            let size = mats[0].nrows();
            for (idx, m) in mats.iter().enumerate() {
                if m.nrows() != size || m.ncols() != size {
                    return Err(OracleError::BasisMismatch(format!(
                        "basis matrix {idx} is not {size}x{size}"
                    )));
                }
            }
            for i in 0..dim {
                for j in 0..dim {
                    let mut expected = DMatrix::zeros(size, size);
                    for k in 0..dim {
                        expected += &mats[k] * spec.c(k, i, j);
                    }
                    let comm = &mats[i] * &mats[j] - &mats[j] * &mats[i];
                    let err = (comm - expected)
                        .iter()
                        .map(|x| x.abs())
                        .fold(0.0, f64::max);
                    if err > 1e-12 {
                        return Err(OracleError::BasisMismatch(format!(
                            "[e{i}, e{j}] deviates from the constants by {err:.3e}"
                        )));
                    }
                }
            }
        }
        Ok(LieAlgebraSpec { basis, ..spec })
    }

    /// Parse from a structured text record (TOML): `dim`, `rank`, a list of
    /// `constants` entries {k, i, j, value}, and optional `basis` matrices
    /// given as row lists.
    pub fn from_toml_str(text: &str) -> Result<Self, OracleError> {
        #[derive(Deserialize)]
        struct ConstantEntry {
            k: usize,
            i: usize,
            j: usize,
            value: f64,
        }
        #[derive(Deserialize)]
        struct BasisEntry {
            rows: Vec<Vec<f64>>,
        }
        #[derive(Deserialize)]
        struct SpecFile {
            dim: usize,
            rank: usize,
            #[serde(default)]
            constants: Vec<ConstantEntry>,
            #[serde(default)]
            basis: Vec<BasisEntry>,
        }
        let parsed: SpecFile =
            toml::from_str(text).map_err(|e| OracleError::Parse(e.to_string()))?;
        let triples: Vec<(usize, usize, usize, f64)> = parsed
            .constants
            .iter()
            .map(|c| (c.k, c.i, c.j, c.value))
            .collect();
        let basis = if parsed.basis.is_empty() {
            None
        } else {
            let mats = parsed
                .basis
                .iter()
                .map(|b| {
                    let n = b.rows.len();
                    if b.rows.iter().any(|row| row.len() != n) {
                        return Err(OracleError::Parse("basis matrix is not square".into()));
                    }
                    Ok(DMatrix::from_fn(n, n, |r, c| b.rows[r][c]))
                })
                .collect::<Result<Vec<_>, _>>()?;
            Some(mats)
        };
        LieAlgebraSpec::new(parsed.dim, parsed.rank, &triples, basis)
    }

    /// The 4D algebra of the full isometry group in the orthonormal basis
    /// (e0, e1, e2', e3): C^0_{12} = √2, C^2_{12} = -1, e3 central. Basis
    /// realized as 6×6 block matrices, the central direction in a separate
    /// nilpotent block.
    pub fn godel() -> Self {
        let e = |r: usize, c: usize, v: f64| {
            let mut m = DMatrix::zeros(6, 6);
            m[(r, c)] = v;
            m
        };
        let b0 = e(2, 3, 1.0);
        let mut b1 = DMatrix::zeros(6, 6);
        b1[(0, 0)] = -1.0;
        b1[(1, 3)] = 1.0;
        let mut b2 = DMatrix::zeros(6, 6);
        b2[(2, 3)] = SQRT_2;
        b2[(0, 3)] = -SQRT_2;
        let b3 = e(4, 5, 1.0);
        LieAlgebraSpec::new(
            4,
            3,
            &[
                (0, 1, 2, SQRT_2),
                (0, 2, 1, -SQRT_2),
                (2, 1, 2, -1.0),
                (2, 2, 1, 1.0),
            ],
            Some(vec![b0, b1, b2, b3]),
        )
        .expect("built-in spec is valid")
    }

    /// The 3D subalgebra (e0, e1, e2') without the central factor,
    /// realized in the 4×4 model.
    pub fn godel_3d() -> Self {
        let b0 = {
            let mut m = DMatrix::zeros(4, 4);
            m[(2, 3)] = 1.0;
            m
        };
        let mut b1 = DMatrix::zeros(4, 4);
        b1[(0, 0)] = -1.0;
        b1[(1, 3)] = 1.0;
        let mut b2 = DMatrix::zeros(4, 4);
        b2[(2, 3)] = SQRT_2;
        b2[(0, 3)] = -SQRT_2;
        LieAlgebraSpec::new(
            3,
            2,
            &[
                (0, 1, 2, SQRT_2),
                (0, 2, 1, -SQRT_2),
                (2, 1, 2, -1.0),
                (2, 2, 1, 1.0),
            ],
            Some(vec![b0, b1, b2]),
        )
        .expect("built-in spec is valid")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn c(&self, k: usize, i: usize, j: usize) -> f64 {
        self.constants[(k * self.dim + i) * self.dim + j]
    }

    pub fn has_basis(&self) -> bool {
        self.basis.is_some()
    }

    /// Max residual of Σ_m (C^m_{ij} C^l_{mk} + C^m_{jk} C^l_{mi} + C^m_{ki} C^l_{mj}).
    pub fn jacobi_residual(&self) -> f64 {
        let n = self.dim;
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let mut s = 0.0;
                        for m in 0..n {
                            s += self.c(m, i, j) * self.c(l, m, k)
                                + self.c(m, j, k) * self.c(l, m, i)
                                + self.c(m, k, i) * self.c(l, m, j);
                        }
                        worst = worst.max(s.abs());
                    }
                }
            }
        }
        worst
    }

    /// ψ'_j = Σ_k (C^k_{0j} ψ0 ψk - Σ_{i=1..r} C^k_{ij} ψi ψk).
    pub fn adjoint_rhs(&self, psi: &[f64]) -> Result<Vec<f64>, OracleError> {
        if psi.len() != self.dim {
            return Err(OracleError::DimensionMismatch {
                expected: self.dim,
                got: psi.len(),
            });
        }
        let mut rate = vec![0.0; self.dim];
        for j in 0..self.dim {
            let mut s = 0.0;
            for k in 0..self.dim {
                s += self.c(k, 0, j) * psi[0] * psi[k];
                for i in 1..=self.rank {
                    s -= self.c(k, i, j) * psi[i] * psi[k];
                }
            }
            rate[j] = s;
        }
        Ok(rate)
    }

    /// Control components u_0 = ψ0, u_i = -ψ_i for i = 1..r, zero beyond.
    pub fn control(&self, psi: &[f64]) -> Vec<f64> {
        let mut u = vec![0.0; self.dim];
        u[0] = psi[0];
        for i in 1..=self.rank {
            u[i] = -psi[i];
        }
        u
    }

    /// Σ_j u_j B_j in the matrix realization.
    fn algebra_matrix(&self, u: &[f64]) -> Result<DMatrix<f64>, OracleError> {
        let basis = self.basis.as_ref().ok_or(OracleError::MissingBasis)?;
        let size = basis[0].nrows();
        let mut m = DMatrix::zeros(size, size);
        for (j, b) in basis.iter().enumerate() {
            if u[j] != 0.0 {
                m.zip_apply(b, |a, v| *a += u[j] * v);
            }
        }
        Ok(m)
    }
}

/// Integration method: fixed-step classical RK4 (default, reproducible) or
/// an embedded adaptive 5(4) pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Rk4Fixed,
    Rk45Adaptive,
}

#[derive(Clone, Copy, Debug)]
pub struct IntegratorConfig {
    pub method: Method,
    /// Fixed step (also the initial step of the adaptive method).
    pub step: f64,
    /// Error tolerance of the adaptive method (absolute and relative).
    pub tol: f64,
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        IntegratorConfig {
            method: Method::Rk4Fixed,
            step: 1e-3,
            tol: 1e-10,
        }
    }
}

impl IntegratorConfig {
    fn validate(&self) -> Result<(), OracleError> {
        if !(self.step > 0.0) {
            return Err(OracleError::BadConfig(format!(
                "step must be positive, got {}",
                self.step
            )));
        }
        if !(self.tol > 0.0) {
            return Err(OracleError::BadConfig(format!(
                "tolerance must be positive, got {}",
                self.tol
            )));
        }
        Ok(())
    }
}

/// One point of an integrated trajectory.
#[derive(Clone, Debug)]
pub struct TrajectorySample {
    pub t: f64,
    /// Group position in the matrix realization.
    pub gamma: DMatrix<f64>,
    pub psi: Vec<f64>,
    pub control: Vec<f64>,
    /// ψ(t)(u(t)) = ψ0² - Σ_{i=1..r} ψi², conserved along extremals.
    pub pairing: f64,
}

#[derive(Clone)]
struct FlowState {
    gamma: DMatrix<f64>,
    psi: DVector<f64>,
}

impl FlowState {
    fn shifted(&self, terms: &[(f64, &FlowState)]) -> FlowState {
        let mut gamma = self.gamma.clone();
        let mut psi = self.psi.clone();
        for (c, s) in terms {
            gamma.zip_apply(&s.gamma, |a, b| *a += c * b);
            psi.zip_apply(&s.psi, |a, b| *a += c * b);
        }
        FlowState { gamma, psi }
    }
}

struct Flow<'a> {
    spec: &'a LieAlgebraSpec,
}

impl Flow<'_> {
    fn rhs(&self, state: &FlowState) -> Result<FlowState, OracleError> {
        let psi = state.psi.as_slice();
        let psi_rate = self.spec.adjoint_rhs(psi)?;
        let u = self.spec.control(psi);
        let u_mat = self.spec.algebra_matrix(&u)?;
        Ok(FlowState {
            gamma: &state.gamma * u_mat,
            psi: DVector::from_vec(psi_rate),
        })
    }

    fn rk4_step(&self, state: &FlowState, h: f64) -> Result<FlowState, OracleError> {
        let k1 = self.rhs(state)?;
        let k2 = self.rhs(&state.shifted(&[(h / 2.0, &k1)]))?;
        let k3 = self.rhs(&state.shifted(&[(h / 2.0, &k2)]))?;
        let k4 = self.rhs(&state.shifted(&[(h, &k3)]))?;
        Ok(state.shifted(&[
            (h / 6.0, &k1),
            (h / 3.0, &k2),
            (h / 3.0, &k3),
            (h / 6.0, &k4),
        ]))
    }

    /// Dormand-Prince 5(4) step. Returns (candidate, scaled error norm).
    fn dp54_step(
        &self,
        state: &FlowState,
        h: f64,
        tol: f64,
    ) -> Result<(FlowState, f64), OracleError> {
        let k1 = self.rhs(state)?;
        let k2 = self.rhs(&state.shifted(&[(h / 5.0, &k1)]))?;
        let k3 = self.rhs(&state.shifted(&[(3.0 / 40.0 * h, &k1), (9.0 / 40.0 * h, &k2)]))?;
        let k4 = self.rhs(&state.shifted(&[
            (44.0 / 45.0 * h, &k1),
            (-56.0 / 15.0 * h, &k2),
            (32.0 / 9.0 * h, &k3),
        ]))?;
        let k5 = self.rhs(&state.shifted(&[
            (19372.0 / 6561.0 * h, &k1),
            (-25360.0 / 2187.0 * h, &k2),
            (64448.0 / 6561.0 * h, &k3),
            (-212.0 / 729.0 * h, &k4),
        ]))?;
        let k6 = self.rhs(&state.shifted(&[
            (9017.0 / 3168.0 * h, &k1),
            (-355.0 / 33.0 * h, &k2),
            (46732.0 / 5247.0 * h, &k3),
            (49.0 / 176.0 * h, &k4),
            (-5103.0 / 18656.0 * h, &k5),
        ]))?;
        let fifth = state.shifted(&[
            (35.0 / 384.0 * h, &k1),
            (500.0 / 1113.0 * h, &k3),
            (125.0 / 192.0 * h, &k4),
            (-2187.0 / 6784.0 * h, &k5),
            (11.0 / 84.0 * h, &k6),
        ]);
        let k7 = self.rhs(&fifth)?;
        // difference of the embedded orders
        let err_state = FlowState {
            gamma: DMatrix::zeros(state.gamma.nrows(), state.gamma.ncols()),
            psi: DVector::zeros(state.psi.len()),
        }
        .shifted(&[
            ((35.0 / 384.0 - 5179.0 / 57600.0) * h, &k1),
            ((500.0 / 1113.0 - 7571.0 / 16695.0) * h, &k3),
            ((125.0 / 192.0 - 393.0 / 640.0) * h, &k4),
            ((-2187.0 / 6784.0 + 92097.0 / 339200.0) * h, &k5),
            ((11.0 / 84.0 - 187.0 / 2100.0) * h, &k6),
            ((-1.0 / 40.0) * h, &k7),
        ]);
        let mut sum = 0.0;
        let mut count = 0usize;
        let mut add = |err: f64, y0: f64, y1: f64| {
            let scale = tol + tol * y0.abs().max(y1.abs());
            sum += (err / scale) * (err / scale);
            count += 1;
        };
        for ((e, a), b) in err_state
            .gamma
            .iter()
            .zip(state.gamma.iter())
            .zip(fifth.gamma.iter())
        {
            add(*e, *a, *b);
        }
        for ((e, a), b) in err_state
            .psi
            .iter()
            .zip(state.psi.iter())
            .zip(fifth.psi.iter())
        {
            add(*e, *a, *b);
        }
        Ok((fifth, (sum / count as f64).sqrt()))
    }
}

fn sample_from(spec: &LieAlgebraSpec, t: f64, state: &FlowState) -> TrajectorySample {
    let psi = state.psi.as_slice().to_vec();
    let control = spec.control(&psi);
    let pairing = psi
        .iter()
        .zip(control.iter())
        .map(|(p, u)| p * u)
        .sum::<f64>();
    TrajectorySample {
        t,
        gamma: state.gamma.clone(),
        psi,
        control,
        pairing,
    }
}

/// Integrate the system from the identity with initial covector `psi_init`
/// and return samples exactly at `times`. Times must move monotonically
/// away from 0 (either direction); a leading 0 is allowed.
pub fn integrate_at(
    spec: &LieAlgebraSpec,
    psi_init: &[f64],
    config: &IntegratorConfig,
    times: &[f64],
) -> Result<Vec<TrajectorySample>, OracleError> {
    config.validate()?;
    if psi_init.len() != spec.dim() {
        return Err(OracleError::DimensionMismatch {
            expected: spec.dim(),
            got: psi_init.len(),
        });
    }
    if psi_init[0] <= 0.0 {
        return Err(OracleError::NonPositivePsi0(psi_init[0]));
    }
    let basis = spec.basis.as_ref().ok_or(OracleError::MissingBasis)?;
    let size = basis[0].nrows();
    let flow = Flow { spec };

    let mut state = FlowState {
        gamma: DMatrix::identity(size, size),
        psi: DVector::from_column_slice(psi_init),
    };
    let mut t = 0.0;
    let mut out = Vec::with_capacity(times.len());
    let dir_of = |target: f64, from: f64| (target - from).signum();

    let mut h_adaptive = config.step;
    for &target in times {
        if (target - t).abs() <= 1e-15 {
            out.push(sample_from(spec, target, &state));
            t = target;
            continue;
        }
        let dir = dir_of(target, t);
        match config.method {
            Method::Rk4Fixed => {
                while (target - t) * dir > 1e-15 {
                    let h = dir * config.step.min((target - t).abs());
                    state = flow.rk4_step(&state, h)?;
                    t += h;
                }
            }
            Method::Rk45Adaptive => {
                let mut rejections = 0usize;
                while (target - t) * dir > 1e-15 {
                    let h = dir * h_adaptive.min((target - t).abs());
                    let (candidate, err) = flow.dp54_step(&state, h, config.tol)?;
                    if err <= 1.0 {
                        state = candidate;
                        t += h;
                        rejections = 0;
                        let factor = if err > 0.0 {
                            (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
                        } else {
                            5.0
                        };
                        h_adaptive = (h_adaptive * factor).min(1.0);
                    } else {
                        rejections += 1;
                        if rejections > 60 {
                            return Err(OracleError::StepRejectionExhausted(rejections));
                        }
                        h_adaptive *= (0.9 * err.powf(-0.2)).clamp(0.1, 0.9);
                    }
                }
            }
        }
        out.push(sample_from(spec, target, &state));
        t = target;
    }
    Ok(out)
}

/// Integrate over [0, T] (or [T, 0] for negative T) with uniform sampling
/// at every fixed step.
pub fn integrate(
    spec: &LieAlgebraSpec,
    psi_init: &[f64],
    config: &IntegratorConfig,
    t_end: f64,
) -> Result<Vec<TrajectorySample>, OracleError> {
    config.validate()?;
    let n = (t_end.abs() / config.step).ceil().max(1.0) as usize;
    let times: Vec<f64> = (0..=n).map(|i| t_end * i as f64 / n as f64).collect();
    integrate_at(spec, psi_init, config, &times)
}

/// Coordinates (x0, x1, x2, x3) from a 6×6 group matrix of the 4D model.
pub fn godel_coords(gamma: &DMatrix<f64>) -> [f64; 4] {
    [gamma[(2, 3)], gamma[(1, 3)], gamma[(0, 3)], gamma[(4, 5)]]
}

/// Coordinates (x0, x1, x2) from a 4×4 group matrix of the 3D model.
pub fn godel3_coords(gamma: &DMatrix<f64>) -> [f64; 3] {
    [gamma[(2, 3)], gamma[(1, 3)], gamma[(0, 3)]]
}

/// Conserved-quantity monitors of the 4D trajectories.
#[derive(Clone, Copy, Debug)]
pub struct GodelMonitors {
    pub psi0: f64,
    pub psi3: f64,
    pub transverse_sq: f64,
    pub control_sq: f64,
}

pub fn godel_monitors(sample: &TrajectorySample) -> GodelMonitors {
    GodelMonitors {
        psi0: sample.psi[0],
        psi3: sample.psi[3],
        transverse_sq: sample.psi[1] * sample.psi[1] + sample.psi[2] * sample.psi[2],
        control_sq: sample.pairing,
    }
}

/// Max drift per unit t of (ψ0, ψ3, ψ1²+ψ2², (u,u)) relative to the first
/// sample, over samples with |t| ≥ 0.25.
pub fn godel_monitor_drift_rate(samples: &[TrajectorySample]) -> [f64; 4] {
    let first = godel_monitors(&samples[0]);
    let base = [
        first.psi0,
        first.psi3,
        first.transverse_sq,
        first.control_sq,
    ];
    let mut rate = [0.0f64; 4];
    for s in samples {
        if s.t.abs() < 0.25 {
            continue;
        }
        let m = godel_monitors(s);
        let vals = [m.psi0, m.psi3, m.transverse_sq, m.control_sq];
        for i in 0..4 {
            rate[i] = rate[i].max((vals[i] - base[i]).abs() / s.t.abs());
        }
    }
    rate
}

/// Initial covector of the 4D system for the given parameters. The x3
/// slope enters with the opposite sign: ψ3(0) = -φ3.
pub fn godel_initial_psi(params: &GeodesicParams) -> [f64; 4] {
    params.initial_adjoint().components()
}

/// Integrate the 4D system from the covector of `params` and report the
/// largest componentwise deviation from the closed-form positions over
/// `n_samples` points of [t_min, t_max].
pub fn compare_to_closed_form(
    params: &GeodesicParams,
    config: &IntegratorConfig,
    t_min: f64,
    t_max: f64,
    n_samples: usize,
) -> Result<f64, OracleError> {
    assert!(t_min <= 0.0 && t_max >= 0.0 && n_samples >= 2);
    let spec = LieAlgebraSpec::godel();
    let psi0 = godel_initial_psi(params);
    let times: Vec<f64> = (0..n_samples)
        .map(|i| t_min + (t_max - t_min) * i as f64 / (n_samples - 1) as f64)
        .collect();
    let backward: Vec<f64> = times.iter().rev().cloned().filter(|t| *t < 0.0).collect();
    let forward: Vec<f64> = times.iter().cloned().filter(|t| *t >= 0.0).collect();

    let mut deviation: f64 = 0.0;
    for leg in [backward, forward] {
        if leg.is_empty() {
            continue;
        }
        for sample in integrate_at(&spec, &psi0, config, &leg)? {
            let numeric = godel_coords(&sample.gamma);
            let exact = params.position(sample.t).coords();
            for i in 0..4 {
                deviation = deviation.max((numeric[i] - exact[i]).abs());
            }
        }
    }
    Ok(deviation)
}

/// Deterministic min/max scan of `f` over a finite grid, reduced in grid
/// order; ties keep the earliest point.
#[derive(Clone, Debug)]
pub struct ScanResult<T> {
    pub min: f64,
    pub max: f64,
    pub argmin: T,
    pub argmax: T,
}

pub fn extremum_scan<T: Clone, F: Fn(&T) -> f64>(grid: &[T], f: F) -> Option<ScanResult<T>> {
    let first = grid.first()?;
    let v0 = f(first);
    let mut result = ScanResult {
        min: v0,
        max: v0,
        argmin: first.clone(),
        argmax: first.clone(),
    };
    for item in &grid[1..] {
        let v = f(item);
        if v < result.min {
            result.min = v;
            result.argmin = item.clone();
        }
        if v > result.max {
            result.max = v;
            result.argmax = item.clone();
        }
    }
    Some(result)
}
