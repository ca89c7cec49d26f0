//! Curvature of the cartesian-chart metric: Christoffel symbols, Ricci
//! tensor, scalar curvature, the field-equation residual with its negative
//! cosmological constant, and the vorticity of the matter flow.
//!
//! The metric depends on x1 alone, so all derivative assembly reduces to
//! exact x1-derivatives; the finite-difference route lives in the tests as
//! the independent oracle.

use crate::chart::Chart;
use crate::metric::{metric_cartesian, ChartPoint, MetricError};
use serde::Serialize;

/// Γ^k_{ij} indexed as `gamma[k][i][j]`, symmetric in (i, j).
pub type Gamma = [[[f64; 4]; 4]; 4];

fn require_cartesian(p: &ChartPoint) -> Result<(), MetricError> {
    if p.chart != Chart::Cartesian {
        return Err(MetricError::ChartMismatch {
            expected: Chart::Cartesian,
            got: p.chart,
        });
    }
    Ok(())
}

/// Christoffel symbols of the cartesian metric. Independent of the scale a
/// (which cancels between the metric and its inverse); the only coordinate
/// entering is x1 through E = e^{x1}.
pub fn christoffels(p: &ChartPoint, a: f64) -> Result<Gamma, MetricError> {
    require_cartesian(p)?;
    if a <= 0.0 {
        return Err(MetricError::NonPositiveScale(a));
    }
    let e = p.coords[1].exp();
    let mut g: Gamma = [[[0.0; 4]; 4]; 4];
    g[0][0][1] = 1.0;
    g[0][1][0] = 1.0;
    g[0][1][2] = e / 2.0;
    g[0][2][1] = e / 2.0;
    g[1][0][2] = e / 2.0;
    g[1][2][0] = e / 2.0;
    g[1][2][2] = e * e / 2.0;
    g[2][0][1] = -1.0 / e;
    g[2][1][0] = -1.0 / e;
    Ok(g)
}

/// Exact x1-derivatives ∂_1 Γ^k_{ij}.
fn christoffel_x1_derivatives(e: f64) -> Gamma {
    let mut d: Gamma = [[[0.0; 4]; 4]; 4];
    d[0][1][2] = e / 2.0;
    d[0][2][1] = e / 2.0;
    d[1][0][2] = e / 2.0;
    d[1][2][0] = e / 2.0;
    d[1][2][2] = e * e;
    d[2][0][1] = 1.0 / e;
    d[2][1][0] = 1.0 / e;
    d
}

/// Closed-form inverse metric at x1 (E = e^{x1}).
fn inverse_metric(e: f64, a: f64) -> [[f64; 4]; 4] {
    let ia2 = 1.0 / (a * a);
    let mut m = [[0.0; 4]; 4];
    m[0][0] = -ia2;
    m[0][2] = 2.0 * ia2 / e;
    m[2][0] = m[0][2];
    m[2][2] = -2.0 * ia2 / (e * e);
    m[1][1] = -ia2;
    m[3][3] = -ia2;
    m
}

/// Covector of the normalized matter 4-velocity, u_i = a (1, 0, e^{x1}, 0).
pub fn matter_covector(p: &ChartPoint, a: f64) -> [f64; 4] {
    [a, 0.0, a * p.coords[1].exp(), 0.0]
}

/// Ricci tensor and scalar curvature, assembled from the exact Christoffel
/// table and its x1-derivatives:
/// R_ij = ∂_k Γ^k_{ij} - ∂_j Γ^k_{ik} + Γ^k_{kl} Γ^l_{ij} - Γ^k_{jl} Γ^l_{ik}.
pub fn ricci_and_scalar(p: &ChartPoint, a: f64) -> Result<([[f64; 4]; 4], f64), MetricError> {
    let gamma = christoffels(p, a)?;
    let e = p.coords[1].exp();
    let dgamma = christoffel_x1_derivatives(e);

    let mut ricci = [[0.0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            // only the x1-direction carries derivatives
            let mut r = dgamma[1][i][j];
            if j == 1 {
                for k in 0..4 {
                    r -= dgamma[k][i][k];
                }
            }
            for k in 0..4 {
                for l in 0..4 {
                    r += gamma[k][k][l] * gamma[l][i][j] - gamma[k][j][l] * gamma[l][i][k];
                }
            }
            ricci[i][j] = r;
        }
    }

    let ginv = inverse_metric(e, a);
    let mut scalar = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            scalar += ginv[i][j] * ricci[i][j];
        }
    }
    Ok((ricci, scalar))
}

/// Residual of the field equations
/// R_ik - (R/2) g_ik = (8πκρ) u_i u_k + Λ g_ik with the stated constants.
pub fn einstein_residual_with(
    p: &ChartPoint,
    a: f64,
    lambda: f64,
    kappa_rho_8pi: f64,
) -> Result<f64, MetricError> {
    let (ricci, scalar) = ricci_and_scalar(p, a)?;
    let g = metric_cartesian(p, a)?;
    let u = matter_covector(p, a);
    let mut worst: f64 = 0.0;
    for i in 0..4 {
        for k in 0..4 {
            let lhs = ricci[i][k] - 0.5 * scalar * g.components[(i, k)];
            let rhs = kappa_rho_8pi * u[i] * u[k] + lambda * g.components[(i, k)];
            worst = worst.max((lhs - rhs).abs());
        }
    }
    Ok(worst)
}

/// Residual with the solution's own constants 8πκρ = 1/a², Λ = -1/(2a²).
pub fn einstein_residual(p: &ChartPoint, a: f64) -> Result<f64, MetricError> {
    let ia2 = 1.0 / (a * a);
    einstein_residual_with(p, a, -0.5 * ia2, ia2)
}

const FD_STEP: f64 = 1e-6;

/// Scalar vorticity of a unit covector field: the covariant derivative is
/// antisymmetrized, projected orthogonally to u, raised with the inverse
/// metric, and contracted as ω = √(ω_ij ω^ij / 2). Field derivatives are
/// taken by central differences so the routine accepts any smooth field.
pub fn vorticity_of_field<G, GI, C, U>(
    metric: G,
    metric_inv: GI,
    gamma: C,
    u_cov: U,
    p: &[f64; 4],
) -> f64
where
    G: Fn(&[f64; 4]) -> [[f64; 4]; 4],
    GI: Fn(&[f64; 4]) -> [[f64; 4]; 4],
    C: Fn(&[f64; 4]) -> Gamma,
    U: Fn(&[f64; 4]) -> [f64; 4],
{
    let _ = metric; // the computation only needs the inverse and Γ
    let u = u_cov(p);
    let ginv = metric_inv(p);
    let gam = gamma(p);

    // ∂_j u_i
    let mut du = [[0.0; 4]; 4];
    for j in 0..4 {
        let mut plus = *p;
        plus[j] += FD_STEP;
        let mut minus = *p;
        minus[j] -= FD_STEP;
        let up = u_cov(&plus);
        let um = u_cov(&minus);
        for i in 0..4 {
            du[i][j] = (up[i] - um[i]) / (2.0 * FD_STEP);
        }
    }

    // u_{i;j} and its antisymmetric part
    let mut om = [[0.0; 4]; 4];
    let mut cov = [[0.0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            let mut c = du[i][j];
            for k in 0..4 {
                c -= gam[k][i][j] * u[k];
            }
            cov[i][j] = c;
        }
    }
    for i in 0..4 {
        for j in 0..4 {
            om[i][j] = 0.5 * (cov[i][j] - cov[j][i]);
        }
    }

    // u^i and the projector P^k_i = δ^k_i - u^k u_i
    let mut u_up = [0.0; 4];
    for i in 0..4 {
        for j in 0..4 {
            u_up[i] += ginv[i][j] * u[j];
        }
    }
    let mut proj = [[0.0; 4]; 4];
    for k in 0..4 {
        for i in 0..4 {
            proj[k][i] = if k == i { 1.0 } else { 0.0 };
            proj[k][i] -= u_up[k] * u[i];
        }
    }
    let mut omp = [[0.0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            let mut s = 0.0;
            for k in 0..4 {
                for l in 0..4 {
                    s += proj[k][i] * proj[l][j] * om[k][l];
                }
            }
            omp[i][j] = s;
        }
    }

    // raise both indices and contract
    let mut total = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            let mut up = 0.0;
            for k in 0..4 {
                for l in 0..4 {
                    up += ginv[i][k] * ginv[j][l] * omp[k][l];
                }
            }
            total += omp[i][j] * up;
        }
    }
    (0.5 * total).max(0.0).sqrt()
}

/// Scalar vorticity of the matter field at a cartesian point, a = 1.
/// Homogeneity makes it a constant, 1/√2.
pub fn vorticity(p: &ChartPoint) -> Result<f64, MetricError> {
    require_cartesian(p)?;
    let metric = |x: &[f64; 4]| {
        let q = ChartPoint::cartesian(x[0], x[1], x[2], x[3]);
        let g = metric_cartesian(&q, 1.0).expect("cartesian point");
        let mut out = [[0.0; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                out[i][j] = g.components[(i, j)];
            }
        }
        out
    };
    let metric_inv = |x: &[f64; 4]| inverse_metric(x[1].exp(), 1.0);
    let gamma = |x: &[f64; 4]| {
        christoffels(&ChartPoint::cartesian(x[0], x[1], x[2], x[3]), 1.0).expect("cartesian point")
    };
    let u = |x: &[f64; 4]| [1.0, 0.0, x[1].exp(), 0.0];
    Ok(vorticity_of_field(metric, metric_inv, gamma, u, &p.coords))
}

/// Everything the field-equation verification needs at one point.
#[derive(Clone, Debug, Serialize)]
pub struct CurvatureReport {
    pub point: [f64; 4],
    pub a: f64,
    pub scalar: f64,
    pub ricci: Vec<Vec<f64>>,
    /// max |R_ik - (1/a²) u_i u_k|
    pub ricci_fluid_residual: f64,
    pub einstein_residual: f64,
    pub lambda: f64,
    pub kappa_rho_8pi: f64,
    pub vorticity: f64,
}

pub fn curvature_report(p: &ChartPoint, a: f64) -> Result<CurvatureReport, MetricError> {
    let (ricci, scalar) = ricci_and_scalar(p, a)?;
    let u = matter_covector(p, a);
    let ia2 = 1.0 / (a * a);
    let mut fluid_residual: f64 = 0.0;
    for i in 0..4 {
        for k in 0..4 {
            fluid_residual = fluid_residual.max((ricci[i][k] - ia2 * u[i] * u[k]).abs());
        }
    }
    Ok(CurvatureReport {
        point: p.coords,
        a,
        scalar,
        ricci: ricci.iter().map(|row| row.to_vec()).collect(),
        ricci_fluid_residual: fluid_residual,
        einstein_residual: einstein_residual(p, a)?,
        lambda: -0.5 * ia2,
        kappa_rho_8pi: ia2,
        vorticity: vorticity(p)?,
    })
}
