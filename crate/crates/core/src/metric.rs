//! The left-invariant Lorentz metric in three charts, causal classification,
//! chart transforms, the horizon radius and a closed-timelike-curve witness.
//!
//! Coordinate orders are fixed per chart and shared by metric components,
//! chart points and Jacobians: cartesian (x0, x1, x2, x3), cylindrical
//! (t, r, φ [, x3]), Kundt (t, x, y [, z]).

use crate::chart::Chart;
use crate::extremal::{unwrapped_atan_tan, CurveSource, SampledCurve};
use crate::group::{AlgebraVector, GroupElement};
use nalgebra::DMatrix;
use std::f64::consts::{PI, SQRT_2};
use thiserror::Error;

/// Classification tolerance on squared norms.
pub const CAUSAL_TOL: f64 = 1e-9;

#[derive(Debug, Error, PartialEq)]
pub enum MetricError {
    #[error("scale parameter must be positive, got a = {0}")]
    NonPositiveScale(f64),
    #[error("cylindrical radius must be nonnegative, got r = {0}")]
    NegativeRadius(f64),
    #[error("Kundt chart requires y > 0, got y = {0}")]
    KundtDomain(f64),
    #[error("expected a point in the {expected} chart, got {got}")]
    ChartMismatch { expected: Chart, got: Chart },
    #[error("circle at r = {r} is {kind:?}, not timelike (g_phiphi = {g_phiphi:.6e})")]
    CircleNotTimelike {
        r: f64,
        kind: CausalKind,
        g_phiphi: f64,
    },
}

/// A point in one of the charts. Coordinate storage follows the per-chart
/// order documented at module level.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChartPoint {
    pub chart: Chart,
    pub coords: [f64; 4],
}

impl ChartPoint {
    pub fn cartesian(x0: f64, x1: f64, x2: f64, x3: f64) -> Self {
        ChartPoint {
            chart: Chart::Cartesian,
            coords: [x0, x1, x2, x3],
        }
    }

    pub fn cylindrical(t: f64, r: f64, phi: f64, x3: f64) -> Result<Self, MetricError> {
        if r < 0.0 {
            return Err(MetricError::NegativeRadius(r));
        }
        Ok(ChartPoint {
            chart: Chart::Cylindrical,
            coords: [t, r, phi, x3],
        })
    }

    pub fn kundt(t: f64, x: f64, y: f64, z: f64) -> Result<Self, MetricError> {
        if y <= 0.0 {
            return Err(MetricError::KundtDomain(y));
        }
        Ok(ChartPoint {
            chart: Chart::Kundt,
            coords: [t, x, y, z],
        })
    }

    pub fn from_group(g: &GroupElement) -> Self {
        ChartPoint::cartesian(g.x0, g.x1, g.x2, g.x3)
    }
}

/// Symmetric metric components evaluated at a point of a tagged chart.
#[derive(Clone, Debug)]
pub struct MetricTensor {
    pub chart: Chart,
    pub a: f64,
    pub point: ChartPoint,
    pub components: DMatrix<f64>,
}

impl MetricTensor {
    pub fn dim(&self) -> usize {
        self.components.nrows()
    }

    pub fn inner(&self, v: &[f64], w: &[f64]) -> f64 {
        assert_eq!(v.len(), self.dim());
        assert_eq!(w.len(), self.dim());
        let mut s = 0.0;
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                s += self.components[(i, j)] * v[i] * w[j];
            }
        }
        s
    }

    /// Eigenvalue sign counts (positive, negative, zero) at tolerance `tol`.
    pub fn signature(&self, tol: f64) -> (usize, usize, usize) {
        let eig = self.components.clone().symmetric_eigenvalues();
        let mut counts = (0, 0, 0);
        for lam in eig.iter() {
            if *lam > tol {
                counts.0 += 1;
            } else if *lam < -tol {
                counts.1 += 1;
            } else {
                counts.2 += 1;
            }
        }
        counts
    }
}

/// The 4×4 metric in cartesian coordinates:
/// g00 = a², g02 = a² e^{x1}, g22 = a² e^{2 x1}/2, g11 = g33 = -a².
pub fn metric_cartesian(p: &ChartPoint, a: f64) -> Result<MetricTensor, MetricError> {
    if p.chart != Chart::Cartesian {
        return Err(MetricError::ChartMismatch {
            expected: Chart::Cartesian,
            got: p.chart,
        });
    }
    if a <= 0.0 {
        return Err(MetricError::NonPositiveScale(a));
    }
    let e = p.coords[1].exp();
    let a2 = a * a;
    let mut g = DMatrix::zeros(4, 4);
    g[(0, 0)] = a2;
    g[(0, 2)] = a2 * e;
    g[(2, 0)] = a2 * e;
    g[(2, 2)] = a2 * e * e / 2.0;
    g[(1, 1)] = -a2;
    g[(3, 3)] = -a2;
    Ok(MetricTensor {
        chart: Chart::Cartesian,
        a,
        point: *p,
        components: g,
    })
}

/// The 3×3 cylindrical metric in (t, r, φ) at scale a = 1:
/// g_tt = 4, g_rr = -4, g_φφ = 4 sinh²r (sinh²r - 1), g_tφ = 4√2 sinh²r.
pub fn metric_cylindrical(r: f64) -> Result<MetricTensor, MetricError> {
    if r < 0.0 {
        return Err(MetricError::NegativeRadius(r));
    }
    let s2 = r.sinh() * r.sinh();
    let mut g = DMatrix::zeros(3, 3);
    g[(0, 0)] = 4.0;
    g[(1, 1)] = -4.0;
    g[(2, 2)] = 4.0 * s2 * (s2 - 1.0);
    g[(0, 2)] = 4.0 * SQRT_2 * s2;
    g[(2, 0)] = g[(0, 2)];
    Ok(MetricTensor {
        chart: Chart::Cylindrical,
        a: 1.0,
        point: ChartPoint::cylindrical(0.0, r, 0.0, 0.0)?,
        components: g,
    })
}

/// The 4×4 Kundt metric in (t, x, y, z), y > 0:
/// g_tt = 1, g_tx = √2/y, g_xx = 1/y², g_yy = -1/y², g_zz = -1.
pub fn metric_kundt(p: &ChartPoint) -> Result<MetricTensor, MetricError> {
    if p.chart != Chart::Kundt {
        return Err(MetricError::ChartMismatch {
            expected: Chart::Kundt,
            got: p.chart,
        });
    }
    let y = p.coords[2];
    if y <= 0.0 {
        return Err(MetricError::KundtDomain(y));
    }
    let mut g = DMatrix::zeros(4, 4);
    g[(0, 0)] = 1.0;
    g[(0, 1)] = SQRT_2 / y;
    g[(1, 0)] = g[(0, 1)];
    g[(1, 1)] = 1.0 / (y * y);
    g[(2, 2)] = -1.0 / (y * y);
    g[(3, 3)] = -1.0;
    Ok(MetricTensor {
        chart: Chart::Kundt,
        a: 1.0,
        point: *p,
        components: g,
    })
}

/// The (t, x, y) block of [`metric_kundt`].
pub fn metric_kundt3(p: &ChartPoint) -> Result<MetricTensor, MetricError> {
    let full = metric_kundt(p)?;
    let block = full.components.view((0, 0), (3, 3)).into_owned();
    Ok(MetricTensor {
        components: block,
        ..full
    })
}

/// Causal kind of a tangent vector under the (+, -, -, -) signature.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CausalKind {
    Timelike,
    Null,
    Spacelike,
}

/// Classification of a squared norm, carrying the value and the tolerance.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CausalClass {
    pub kind: CausalKind,
    pub sq_norm: f64,
    pub tol: f64,
}

/// Classify a squared norm: null iff |(v,v)| ≤ εc, timelike above,
/// spacelike below.
pub fn classify(sq_norm: f64) -> CausalClass {
    classify_with_tol(sq_norm, CAUSAL_TOL)
}

pub fn classify_with_tol(sq_norm: f64, tol: f64) -> CausalClass {
    let kind = if sq_norm.abs() <= tol {
        CausalKind::Null
    } else if sq_norm > tol {
        CausalKind::Timelike
    } else {
        CausalKind::Spacelike
    };
    CausalClass { kind, sq_norm, tol }
}

/// Causal class of a Lie-algebra vector under the metric at the identity
/// (a = 1). In the orthonormal frame (v,v) = w0² - w1² - w2² - w3².
pub fn algebra_causal_class(v: &AlgebraVector) -> CausalClass {
    let w = v.to_orthonormal().c;
    classify(w[0] * w[0] - w[1] * w[1] - w[2] * w[2] - w[3] * w[3])
}

/// Causal class of a coordinate tangent at a cartesian point.
pub fn tangent_causal_class(
    p: &ChartPoint,
    dx: &[f64; 4],
    a: f64,
) -> Result<CausalClass, MetricError> {
    let g = metric_cartesian(p, a)?;
    Ok(classify(g.inner(dx, dx)))
}

/// Forward cylindrical chart map (r, φ, t) → (x0, x1, x2):
/// e^{x1} = cosh 2r + cos φ sinh 2r, x2 e^{x1} = √2 sin φ sinh 2r, and x0
/// solves the branch relation with |(x0 - 2t)/(2√2)| < π/2 via the
/// continuous arctan-tangent extension.
pub fn cyl_to_cartesian(r: f64, phi: f64, t: f64) -> [f64; 3] {
    let ch = (2.0 * r).cosh();
    let sh = (2.0 * r).sinh();
    let e_x1 = ch + phi.cos() * sh;
    let x1 = e_x1.ln();
    let x2 = SQRT_2 * phi.sin() * sh / e_x1;
    let beta = (-2.0 * r).exp();
    let x0 = 2.0 * t + 2.0 * SQRT_2 * (unwrapped_atan_tan(beta, phi / 2.0) - phi / 2.0);
    [x0, x1, x2]
}

/// Inverse of [`cyl_to_cartesian`] with r ≥ 0 and φ ∈ (-π, π]. On the axis
/// (x1 = x2 = 0) the angle is undefined; φ = 0 is returned and
/// [`CylCoords::on_axis`] is set.
#[derive(Clone, Copy, Debug)]
pub struct CylCoords {
    pub r: f64,
    pub phi: f64,
    pub t: f64,
    pub on_axis: bool,
}

pub fn cartesian_to_cyl(x0: f64, x1: f64, x2: f64) -> CylCoords {
    let u = x1.exp();
    let cosh2r = (u * (1.0 + x2 * x2 / 2.0) + (-x1).exp()) / 2.0;
    let arg = cosh2r.max(1.0);
    let r = arg.acosh() / 2.0;
    let sh = (2.0 * r).sinh();
    if sh < 1e-12 {
        return CylCoords {
            r: 0.0,
            phi: 0.0,
            t: x0 / 2.0,
            on_axis: true,
        };
    }
    let w = x2 * u / SQRT_2;
    let phi = w.atan2(u - arg);
    let beta = (-2.0 * r).exp();
    let t = (x0 - 2.0 * SQRT_2 * (unwrapped_atan_tan(beta, phi / 2.0) - phi / 2.0)) / 2.0;
    CylCoords {
        r,
        phi,
        t,
        on_axis: false,
    }
}

/// Kundt chart map (t, x, y, z) → (x0, x1, x2, x3) = (t, -ln y, √2 x, z).
pub fn kundt_to_cartesian(t: f64, x: f64, y: f64, z: f64) -> Result<[f64; 4], MetricError> {
    if y <= 0.0 {
        return Err(MetricError::KundtDomain(y));
    }
    Ok([t, -y.ln(), SQRT_2 * x, z])
}

/// Inverse of [`kundt_to_cartesian`]; total on cartesian coordinates.
pub fn cartesian_to_kundt(x0: f64, x1: f64, x2: f64, x3: f64) -> [f64; 4] {
    [x0, x2 / SQRT_2, (-x1).exp(), x3]
}

/// Result of a pullback consistency scan: the largest congruence residual
/// and the indices of points where the numerical Jacobian was singular.
#[derive(Clone, Debug)]
pub struct PullbackReport {
    pub max_residual: f64,
    pub singular_points: Vec<usize>,
}

const FD_STEP: f64 = 1e-6;

fn fd_jacobian<F>(f: F, p: &[f64], dim_out: usize) -> DMatrix<f64>
where
    F: Fn(&[f64]) -> Vec<f64>,
{
    let n = p.len();
    let mut j = DMatrix::zeros(dim_out, n);
    let mut work = p.to_vec();
    for col in 0..n {
        work[col] = p[col] + FD_STEP;
        let plus = f(&work);
        work[col] = p[col] - FD_STEP;
        let minus = f(&work);
        work[col] = p[col];
        for row in 0..dim_out {
            j[(row, col)] = (plus[row] - minus[row]) / (2.0 * FD_STEP);
        }
    }
    j
}

/// Max over `points` of ‖Jᵀ g_target J - g_source‖∞, where J is the
/// numerical Jacobian (central differences, step 1e-6) of the map from
/// `chart` into the cartesian chart. Points with singular Jacobians are
/// collected in the report rather than skipped.
pub fn pullback_residual(
    chart: Chart,
    points: &[ChartPoint],
) -> Result<PullbackReport, MetricError> {
    let mut max_residual: f64 = 0.0;
    let mut singular = Vec::new();
    for (idx, p) in points.iter().enumerate() {
        if p.chart != chart {
            return Err(MetricError::ChartMismatch {
                expected: chart,
                got: p.chart,
            });
        }
        let (j, source, target) = match chart {
            Chart::Cartesian => {
                // the transform is the identity; its Jacobian is exact
                let g = metric_cartesian(p, 1.0)?;
                (DMatrix::identity(4, 4), g.components.clone(), g.components)
            }
            Chart::Kundt => {
                let source = metric_kundt(p)?;
                let [t, x, y, z] = p.coords;
                let image = kundt_to_cartesian(t, x, y, z)?;
                let target = metric_cartesian(
                    &ChartPoint::cartesian(image[0], image[1], image[2], image[3]),
                    1.0,
                )?;
                let j = fd_jacobian(
                    |q| kundt_to_cartesian(q[0], q[1], q[2], q[3]).unwrap().to_vec(),
                    &p.coords,
                    4,
                );
                (j, source.components, target.components)
            }
            Chart::Cylindrical => {
                let [t, r, phi, _] = p.coords;
                let source = metric_cylindrical(r)?;
                let image = cyl_to_cartesian(r, phi, t);
                let g4 = metric_cartesian(
                    &ChartPoint::cartesian(image[0], image[1], image[2], 0.0),
                    1.0,
                )?;
                let target = g4.components.view((0, 0), (3, 3)).into_owned();
                let j = fd_jacobian(
                    |q| cyl_to_cartesian(q[1], q[2], q[0]).to_vec(),
                    &p.coords[..3],
                    3,
                );
                (j, source.components, target)
            }
        };
        if j.determinant().abs() < 1e-12 {
            singular.push(idx);
            continue;
        }
        let pulled = j.transpose() * target * &j;
        let residual = (pulled - source)
            .iter()
            .map(|x| x.abs())
            .fold(0.0, f64::max);
        max_residual = max_residual.max(residual);
    }
    Ok(PullbackReport {
        max_residual,
        singular_points: singular,
    })
}

/// Radius ln(1 + √2) at which coordinate circles become isotropic; circles
/// beyond it are closed timelike curves.
pub fn horizon_radius() -> f64 {
    (1.0 + SQRT_2).ln()
}

/// g_φφ of the cylindrical metric at radius r.
pub fn circle_norm_sq(r: f64) -> f64 {
    let s2 = r.sinh() * r.sinh();
    4.0 * s2 * (s2 - 1.0)
}

/// Causal class of the cartesian tangent ∂φ of the coordinate circle at
/// (r, φ), computed through the chart map and the cartesian metric.
pub fn circle_tangent_class(r: f64, phi: f64) -> Result<CausalClass, MetricError> {
    let h = FD_STEP;
    let plus = cyl_to_cartesian(r, phi + h, 0.0);
    let minus = cyl_to_cartesian(r, phi - h, 0.0);
    let dx = [
        (plus[0] - minus[0]) / (2.0 * h),
        (plus[1] - minus[1]) / (2.0 * h),
        (plus[2] - minus[2]) / (2.0 * h),
        0.0,
    ];
    let at = cyl_to_cartesian(r, phi, 0.0);
    tangent_causal_class(&ChartPoint::cartesian(at[0], at[1], at[2], 0.0), &dx, 1.0)
}

/// A closed t = const coordinate circle at radius r > ln(1 + √2), sampled at
/// n angles with the closing point repeated. Radii at or below the horizon
/// are rejected with the classification of the circle.
pub fn ctc_witness(r: f64, n: usize) -> Result<SampledCurve, MetricError> {
    if r < 0.0 {
        return Err(MetricError::NegativeRadius(r));
    }
    assert!(n >= 2, "need at least two samples");
    let g_phiphi = circle_norm_sq(r);
    let class = classify(g_phiphi);
    if class.kind != CausalKind::Timelike {
        return Err(MetricError::CircleNotTimelike {
            r,
            kind: class.kind,
            g_phiphi,
        });
    }
    let mut samples = Vec::with_capacity(n + 1);
    for i in 0..n {
        let phi = 2.0 * PI * i as f64 / n as f64;
        let [x0, x1, x2] = cyl_to_cartesian(r, phi, 0.0);
        samples.push((phi, GroupElement::new(x0, x1, x2, 0.0)));
    }
    // exact closure
    samples.push((2.0 * PI, samples[0].1));
    Ok(SampledCurve {
        chart: Chart::Cartesian,
        samples,
        source: CurveSource::CoordinateCircle { r },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::left_translate_tangent;
    use approx::assert_abs_diff_eq;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn cartesian_components() {
        let origin = ChartPoint::cartesian(0.0, 0.0, 0.0, 0.0);
        let g = metric_cartesian(&origin, 1.0).unwrap();
        assert_eq!(g.components[(0, 0)], 1.0);
        assert_eq!(g.components[(0, 2)], 1.0);
        assert_eq!(g.components[(2, 2)], 0.5);
        assert_eq!(g.components[(1, 1)], -1.0);
        assert_eq!(g.components[(3, 3)], -1.0);
        assert_eq!(g.components[(0, 1)], 0.0);

        let p = ChartPoint::cartesian(0.0, 2f64.ln(), 0.0, 0.0);
        let g = metric_cartesian(&p, 1.0).unwrap();
        assert_abs_diff_eq!(g.components[(0, 2)], 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(g.components[(2, 2)], 2.0, epsilon = 1e-15);

        let g1 = metric_cartesian(&p, 1.0).unwrap();
        let g2 = metric_cartesian(&p, 2.0).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert_abs_diff_eq!(
                    g2.components[(i, j)],
                    4.0 * g1.components[(i, j)],
                    epsilon = 1e-14
                );
            }
        }

        assert!(metric_cartesian(&origin, 0.0).is_err());
        assert!(metric_cartesian(&origin, -1.0).is_err());
    }

    #[test]
    fn cylindrical_components() {
        let g = metric_cylindrical(horizon_radius()).unwrap();
        assert_abs_diff_eq!(g.components[(2, 2)], 0.0, epsilon = 1e-12);

        let g = metric_cylindrical(0.0).unwrap();
        assert_eq!(g.components[(2, 2)], 0.0);
        assert_eq!(g.components[(0, 2)], 0.0);

        // at sinh r = 1 the twist term is 4√2
        let r = 1f64.asinh();
        let g = metric_cylindrical(r).unwrap();
        assert_abs_diff_eq!(g.components[(0, 2)], 4.0 * SQRT_2, epsilon = 1e-12);

        assert!(metric_cylindrical(-0.1).is_err());
    }

    #[test]
    fn kundt_components() {
        let p = ChartPoint::kundt(0.0, 0.0, 1.0, 0.0).unwrap();
        let g = metric_kundt(&p).unwrap();
        assert_eq!(g.components[(0, 0)], 1.0);
        assert_abs_diff_eq!(g.components[(0, 1)], SQRT_2, epsilon = 1e-15);
        assert_eq!(g.components[(1, 1)], 1.0);
        assert_eq!(g.components[(2, 2)], -1.0);

        assert!(ChartPoint::kundt(0.0, 0.0, 0.0, 0.0).is_err());
        assert!(ChartPoint::kundt(0.0, 0.0, -1.0, 0.0).is_err());
    }

    #[test]
    fn causal_classification_at_identity() {
        let e0 = AlgebraVector::orthonormal(1.0, 0.0, 0.0, 0.0);
        let c = algebra_causal_class(&e0);
        assert_eq!(c.kind, CausalKind::Timelike);
        assert_abs_diff_eq!(c.sq_norm, 1.0, epsilon = 1e-15);

        let null = AlgebraVector::orthonormal(1.0, 1.0, 0.0, 0.0);
        assert_eq!(algebra_causal_class(&null).kind, CausalKind::Null);

        let e1 = AlgebraVector::orthonormal(0.0, 1.0, 0.0, 0.0);
        let c = algebra_causal_class(&e1);
        assert_eq!(c.kind, CausalKind::Spacelike);
        assert_abs_diff_eq!(c.sq_norm, -1.0, epsilon = 1e-15);

        // the natural-frame e1 is the same vector
        let e1n = AlgebraVector::natural(0.0, 1.0, 0.0, 0.0);
        assert_eq!(algebra_causal_class(&e1n).kind, CausalKind::Spacelike);
    }

    #[test]
    fn cyl_map_special_angles() {
        for t in [-1.0, 0.0, 2.0] {
            let [x0, x1, x2] = cyl_to_cartesian(0.0, 1.3, t);
            assert_abs_diff_eq!(x0, 2.0 * t, epsilon = 1e-14);
            assert_abs_diff_eq!(x1, 0.0, epsilon = 1e-14);
            assert_abs_diff_eq!(x2, 0.0, epsilon = 1e-14);
        }
        for r in [0.2, 0.9, 1.7] {
            let [_, x1, x2] = cyl_to_cartesian(r, 0.0, 0.0);
            assert_abs_diff_eq!(x1, 2.0 * r, epsilon = 1e-12);
            assert_abs_diff_eq!(x2, 0.0, epsilon = 1e-14);
            let [_, x1, x2] = cyl_to_cartesian(r, PI, 0.0);
            assert_abs_diff_eq!(x1, -2.0 * r, epsilon = 1e-12);
            assert_abs_diff_eq!(x2, 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn cyl_roundtrip_on_strip() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let r = rng.random_range(0.05..2.0);
            let phi = rng.random_range(-PI + 1e-3..PI);
            let t = rng.random_range(-3.0..3.0);
            let [x0, x1, x2] = cyl_to_cartesian(r, phi, t);
            let back = cartesian_to_cyl(x0, x1, x2);
            assert!(!back.on_axis);
            assert_abs_diff_eq!(back.r, r, epsilon = 1e-8);
            assert_abs_diff_eq!(back.phi, phi, epsilon = 1e-8);
            assert_abs_diff_eq!(back.t, t, epsilon = 1e-8);
        }
        // the branch constraint holds on the output
        let [x0, _, _] = cyl_to_cartesian(0.8, 2.9, 1.1);
        let back = cartesian_to_cyl(
            x0,
            cyl_to_cartesian(0.8, 2.9, 1.1)[1],
            cyl_to_cartesian(0.8, 2.9, 1.1)[2],
        );
        assert!(((x0 - 2.0 * back.t) / (2.0 * SQRT_2)).abs() < PI / 2.0);
    }

    #[test]
    fn axis_points_flagged() {
        let c = cartesian_to_cyl(3.0, 0.0, 0.0);
        assert!(c.on_axis);
        assert_eq!(c.r, 0.0);
        assert_abs_diff_eq!(c.t, 1.5, epsilon = 1e-15);
    }

    #[test]
    fn kundt_roundtrip() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..100 {
            let p = [
                rng.random_range(-3.0..3.0),
                rng.random_range(-3.0..3.0),
                rng.random_range(0.1..5.0),
                rng.random_range(-3.0..3.0),
            ];
            let cart = kundt_to_cartesian(p[0], p[1], p[2], p[3]).unwrap();
            let back = cartesian_to_kundt(cart[0], cart[1], cart[2], cart[3]);
            for i in 0..4 {
                assert_abs_diff_eq!(back[i], p[i], epsilon = 1e-12);
            }
        }
        assert!(kundt_to_cartesian(0.0, 0.0, -0.5, 0.0).is_err());
    }

    #[test]
    fn pullback_kundt() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let pts: Vec<ChartPoint> = (0..100)
            .map(|_| {
                ChartPoint::kundt(
                    rng.random_range(-3.0..3.0),
                    rng.random_range(-3.0..3.0),
                    rng.random_range(0.2..5.0),
                    rng.random_range(-3.0..3.0),
                )
                .unwrap()
            })
            .collect();
        let rep = pullback_residual(Chart::Kundt, &pts).unwrap();
        assert!(rep.singular_points.is_empty());
        assert!(rep.max_residual <= 1e-8, "residual {}", rep.max_residual);
    }

    #[test]
    fn pullback_cylindrical() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let pts: Vec<ChartPoint> = (0..100)
            .map(|_| {
                ChartPoint::cylindrical(
                    rng.random_range(-3.0..3.0),
                    rng.random_range(0.1..2.0),
                    rng.random_range(-PI + 1e-2..PI),
                    0.0,
                )
                .unwrap()
            })
            .collect();
        let rep = pullback_residual(Chart::Cylindrical, &pts).unwrap();
        assert!(rep.singular_points.is_empty());
        assert!(rep.max_residual <= 1e-6, "residual {}", rep.max_residual);
    }

    #[test]
    fn pullback_identity_is_zero() {
        let pts = [
            ChartPoint::cartesian(0.3, -1.0, 2.0, 0.5),
            ChartPoint::cartesian(-2.0, 0.4, 0.0, 1.0),
        ];
        let rep = pullback_residual(Chart::Cartesian, &pts).unwrap();
        assert!(rep.max_residual < 1e-12);
    }

    #[test]
    fn pullback_reports_singular_jacobian() {
        let pts = [ChartPoint::cylindrical(0.0, 0.0, 0.5, 0.0).unwrap()];
        let rep = pullback_residual(Chart::Cylindrical, &pts).unwrap();
        assert_eq!(rep.singular_points, vec![0]);
    }

    #[test]
    fn horizon_values() {
        let rh = horizon_radius();
        assert_abs_diff_eq!(rh, 0.8813735870195430, epsilon = 1e-15);
        assert_abs_diff_eq!(circle_norm_sq(rh), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(rh.sinh(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn ctc_witness_accepts_and_rejects() {
        let curve = ctc_witness(1.0, 64).unwrap();
        assert_eq!(curve.samples.len(), 65);
        assert_eq!(curve.samples[0].1, curve.samples[64].1);
        let g = circle_norm_sq(1.0);
        assert_abs_diff_eq!(g, 2.1053, epsilon = 1e-3);
        for (phi, _) in &curve.samples {
            let class = circle_tangent_class(1.0, *phi).unwrap();
            assert_eq!(class.kind, CausalKind::Timelike);
        }

        match ctc_witness(0.5, 16) {
            Err(MetricError::CircleNotTimelike { kind, .. }) => {
                assert_eq!(kind, CausalKind::Spacelike)
            }
            other => panic!("expected rejection, got {other:?}"),
        }
        match ctc_witness(horizon_radius(), 16) {
            Err(MetricError::CircleNotTimelike { kind, .. }) => {
                assert_eq!(kind, CausalKind::Null)
            }
            other => panic!("expected rejection, got {other:?}"),
        }
    }

    #[test]
    fn circle_classification_monotone_in_r() {
        let rh = horizon_radius();
        let mut seen_timelike = false;
        let mut r = 1e-3;
        while r <= 2.0 {
            let class = classify(circle_norm_sq(r));
            match class.kind {
                CausalKind::Spacelike => {
                    assert!(r < rh, "spacelike circle above the horizon at r = {r}");
                    assert!(!seen_timelike);
                }
                CausalKind::Null => {
                    assert!((r - rh).abs() < 2e-5, "null circle away from horizon: {r}")
                }
                CausalKind::Timelike => {
                    assert!(r > rh);
                    seen_timelike = true;
                }
            }
            r += 1e-3;
        }
        assert!(seen_timelike);
    }

    #[test]
    fn signature_is_lorentzian_everywhere() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let p = ChartPoint::cartesian(
                rng.random_range(-3.0..3.0),
                rng.random_range(-3.0..3.0),
                rng.random_range(-3.0..3.0),
                rng.random_range(-3.0..3.0),
            );
            let g = metric_cartesian(&p, 1.0).unwrap();
            assert_eq!(g.signature(1e-10), (1, 3, 0));

            let k = ChartPoint::kundt(
                rng.random_range(-3.0..3.0),
                rng.random_range(-3.0..3.0),
                rng.random_range(0.2..5.0),
                0.0,
            )
            .unwrap();
            assert_eq!(metric_kundt(&k).unwrap().signature(1e-10), (1, 3, 0));

            let r = rng.random_range(1e-3..2.0);
            assert_eq!(metric_cylindrical(r).unwrap().signature(1e-10), (1, 2, 0));
        }
    }

    #[test]
    fn metric_is_left_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let id_metric = metric_cartesian(&ChartPoint::cartesian(0.0, 0.0, 0.0, 0.0), 1.0).unwrap();
        for _ in 0..50 {
            let g = GroupElement::new(
                rng.random_range(-2.0..2.0),
                rng.random_range(-2.0..2.0),
                rng.random_range(-2.0..2.0),
                rng.random_range(-2.0..2.0),
            );
            let v = AlgebraVector::natural(
                rng.random_range(-2.0..2.0),
                rng.random_range(-2.0..2.0),
                rng.random_range(-2.0..2.0),
                rng.random_range(-2.0..2.0),
            );
            let w = AlgebraVector::natural(
                rng.random_range(-2.0..2.0),
                rng.random_range(-2.0..2.0),
                rng.random_range(-2.0..2.0),
                rng.random_range(-2.0..2.0),
            );
            let at_id = id_metric.inner(&v.c, &w.c);
            let gv = left_translate_tangent(&g, &v);
            let gw = left_translate_tangent(&g, &w);
            let g_at = metric_cartesian(&ChartPoint::from_group(&g), 1.0).unwrap();
            let translated = g_at.inner(&gv, &gw);
            assert_abs_diff_eq!(at_id, translated, epsilon = 1e-10);
        }
    }

    /// Gauss curvature of a 2D metric [E F; F G] by the Brioschi formula
    /// with finite-difference partials. Test-only oracle.
    fn gauss_curvature<F>(metric2: F, u: f64, v: f64) -> f64
    where
        F: Fn(f64, f64) -> [f64; 3], // (E, F, G)
    {
        let h = 1e-4;
        let at = metric2(u, v);
        let (e, f, g) = (at[0], at[1], at[2]);
        let du = |i: usize| (metric2(u + h, v)[i] - metric2(u - h, v)[i]) / (2.0 * h);
        let dv = |i: usize| (metric2(u, v + h)[i] - metric2(u, v - h)[i]) / (2.0 * h);
        let dvv = |i: usize| {
            (metric2(u, v + h)[i] - 2.0 * metric2(u, v)[i] + metric2(u, v - h)[i]) / (h * h)
        };
        let duu = |i: usize| {
            (metric2(u + h, v)[i] - 2.0 * metric2(u, v)[i] + metric2(u - h, v)[i]) / (h * h)
        };
        let duv = |i: usize| {
            (metric2(u + h, v + h)[i] - metric2(u + h, v - h)[i] - metric2(u - h, v + h)[i]
                + metric2(u - h, v - h)[i])
                / (4.0 * h * h)
        };
        let m1 = nalgebra::Matrix3::new(
            -0.5 * dvv(0) + duv(1) - 0.5 * duu(2),
            0.5 * du(0),
            du(1) - 0.5 * dv(0),
            dv(1) - 0.5 * du(2),
            e,
            f,
            0.5 * dv(2),
            f,
            g,
        );
        let m2 = nalgebra::Matrix3::new(
            0.0,
            0.5 * dv(0),
            0.5 * du(2),
            0.5 * dv(0),
            e,
            f,
            0.5 * du(2),
            f,
            g,
        );
        (m1.determinant() - m2.determinant()) / (e * g - f * f).powi(2)
    }

    #[test]
    fn kundt_spatial_block_is_hyperbolic_plane() {
        let half_plane = |_x: f64, y: f64| [1.0 / (y * y), 0.0, 1.0 / (y * y)];
        for (x, y) in [(0.0, 1.0), (1.3, 0.4), (-2.0, 2.5), (0.7, 3.0)] {
            let k = gauss_curvature(half_plane, x, y);
            assert_abs_diff_eq!(k, -1.0, epsilon = 1e-5);
        }
    }
}
