//! Periods, per-period drift, the no-closed-causal-geodesic audit, the
//! drift quadrature identity, the α/frequency separation inequalities, and
//! bounding-box scans over parameter grids.

use crate::extremal::{ExtremalError, GeodesicParams, ParamsRecord};
use serde::Serialize;
use std::f64::consts::{PI, SQRT_2};

/// α of the isotropic φ3 = 0 family, the floor of α over all valid
/// parameters: 3 - 2√2.
pub const ALPHA_FLOOR: f64 = 3.0 - 2.0 * SQRT_2;

/// Common period 2π/ω of the transverse coordinates. Lines have none.
pub fn period(params: &GeodesicParams) -> Result<f64, ExtremalError> {
    if params.is_line() {
        return Err(ExtremalError::DegenerateLine);
    }
    Ok(2.0 * PI / params.omega())
}

/// Advance of x0 over one period: 2π (√2 - φ0/ω), positive for every valid
/// causal parameter set.
pub fn drift_per_period(params: &GeodesicParams) -> Result<f64, ExtremalError> {
    if params.is_line() {
        return Err(ExtremalError::DegenerateLine);
    }
    Ok(2.0 * PI * (SQRT_2 - params.phi0() / params.omega()))
}

/// Adaptive Simpson quadrature to absolute tolerance `tol`.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson(fa: f64, fm: f64, fb: f64, a: f64, b: f64) -> f64 {
        (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    }
    #[allow(clippy::too_many_arguments)]
    fn recurse<F: Fn(f64) -> f64>(
        f: &F,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: usize,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = simpson(fa, flm, fm, a, m);
        let right = simpson(fm, frm, fb, m, b);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            left + right + delta / 15.0
        } else {
            recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
                + recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
        }
    }
    let m = 0.5 * (a + b);
    let fa = f(a);
    let fm = f(m);
    let fb = f(b);
    recurse(f, a, b, fa, fm, fb, simpson(fa, fm, fb, a, b), tol, 48)
}

/// ∫₀^{2π} cos t / [(1+α) + (1-α) cos t] dt by adaptive quadrature.
/// At α = 3 - 2√2 the value is -π, which ties the per-period drift to the
/// closed form: -2√α × (-π) = 2π(√2 - 1).
pub fn x0_drift_integral(alpha: f64) -> f64 {
    adaptive_simpson(
        &|t: f64| t.cos() / ((1.0 + alpha) + (1.0 - alpha) * t.cos()),
        0.0,
        2.0 * PI,
        1e-10,
    )
}

/// Max over the grid of |x0(t + P) - x0(t) - drift|, the per-period shift
/// identity of the oscillatory members.
pub fn shift_residual(params: &GeodesicParams, t_grid: &[f64]) -> Result<f64, ExtremalError> {
    let p = period(params)?;
    let drift = drift_per_period(params)?;
    let mut worst: f64 = 0.0;
    for &t in t_grid {
        let delta = params.position(t + p).x0 - params.position(t).x0;
        worst = worst.max((delta - drift).abs());
    }
    Ok(worst)
}

/// How closure is excluded for one parameter set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClosureRoute {
    /// φ3 ≠ 0: x3 = φ3 t is strictly monotone.
    X3Monotone,
    /// b = 0: x0 = φ0 t is strictly monotone.
    X0Monotone,
    /// b > 0, φ3 = 0: simultaneous transverse returns happen only at
    /// period multiples, where x0 has advanced by a positive drift.
    TransversePeriod,
}

/// Audit record for one parameter set.
#[derive(Clone, Debug, Serialize)]
pub struct PeriodDriftReport {
    pub params: ParamsRecord,
    pub route: ClosureRoute,
    pub period: Option<f64>,
    pub drift: Option<f64>,
    /// |measured x0(P) - x0(0) - drift formula|
    pub drift_residual: Option<f64>,
    /// time of a simultaneous transverse return away from period multiples,
    /// if the scan found one (it never should)
    pub spurious_return: Option<f64>,
    /// max(|x1(P)|, |x2(P)|), the exact return at one period
    pub return_residual: Option<f64>,
    pub verdict: &'static str,
}

const SCAN_RESOLUTION: f64 = 1e-4;
const RETURN_THRESHOLD: f64 = 1e-8;

/// Scan one period for simultaneous zeros of (x1, x2) away from multiples
/// of the period; then verify the exact return and the positive drift.
fn audit_one(params: &GeodesicParams) -> PeriodDriftReport {
    let record = params.record();
    if params.phi3() != 0.0 {
        return PeriodDriftReport {
            params: record,
            route: ClosureRoute::X3Monotone,
            period: if params.is_line() {
                None
            } else {
                period(params).ok()
            },
            drift: if params.is_line() {
                None
            } else {
                drift_per_period(params).ok()
            },
            drift_residual: None,
            spurious_return: None,
            return_residual: None,
            verdict: "no closed causal geodesic",
        };
    }
    if params.is_line() {
        return PeriodDriftReport {
            params: record,
            route: ClosureRoute::X0Monotone,
            period: None,
            drift: None,
            drift_residual: None,
            spurious_return: None,
            return_residual: None,
            verdict: "no closed causal geodesic",
        };
    }

    let p = period(params).expect("oscillatory member");
    let drift = drift_per_period(params).expect("oscillatory member");
    let transverse_gap = |t: f64| {
        let g = params.position(t);
        g.x1.abs().max(g.x2.abs())
    };

    let mut spurious = None;
    let mut t = SCAN_RESOLUTION;
    while t < p - SCAN_RESOLUTION / 2.0 {
        if transverse_gap(t) < RETURN_THRESHOLD {
            // refine by ternary search before judging the location
            let mut lo = t - SCAN_RESOLUTION;
            let mut hi = t + SCAN_RESOLUTION;
            for _ in 0..80 {
                let m1 = lo + (hi - lo) / 3.0;
                let m2 = hi - (hi - lo) / 3.0;
                if transverse_gap(m1) < transverse_gap(m2) {
                    hi = m2;
                } else {
                    lo = m1;
                }
            }
            let t_star = 0.5 * (lo + hi);
            let distance_to_multiple = (t_star / p - (t_star / p).round()).abs() * p;
            if distance_to_multiple > 1e-3 {
                spurious = Some(t_star);
                break;
            }
        }
        t += SCAN_RESOLUTION;
    }

    let return_residual = transverse_gap(p).max(transverse_gap(2.0 * p));
    let measured = params.position(p).x0 - params.position(0.0).x0;
    PeriodDriftReport {
        params: record,
        route: ClosureRoute::TransversePeriod,
        period: Some(p),
        drift: Some(drift),
        drift_residual: Some((measured - drift).abs()),
        spurious_return: spurious,
        return_residual: Some(return_residual),
        verdict: if spurious.is_none() && drift > 0.0 {
            "no closed causal geodesic"
        } else {
            "audit failed"
        },
    }
}

/// Run [`audit_one`] over a grid, in grid order.
pub fn no_closed_geodesic_audit(grid: &[GeodesicParams]) -> Vec<PeriodDriftReport> {
    grid.iter().map(audit_one).collect()
}

/// α of the timelike φ3 = 0 family as a function of φ0 ≥ 1.
pub fn timelike_alpha(phi0: f64) -> f64 {
    let spread = (1.0 - 1.0 / (phi0 * phi0)).max(0.0).sqrt();
    (SQRT_2 - spread) / (SQRT_2 + spread)
}

#[derive(Clone, Debug, Serialize)]
pub struct AlphaFrequencyRow {
    pub phi0: f64,
    pub alpha: f64,
    /// α(φ0) - (3 - 2√2), strictly positive
    pub alpha_gap: f64,
    pub omega: f64,
    /// ω(φ0) - √2, strictly positive
    pub omega_gap: f64,
}

/// Separation of the timelike family from the isotropic limits: α stays
/// above the floor 3 - 2√2 (approached as φ0 → ∞) and ω = √(φ0² + 1) stays
/// above √2 (approached as φ0 → 1).
pub fn alpha_frequency_rows(phi0_grid: &[f64]) -> Vec<AlphaFrequencyRow> {
    phi0_grid
        .iter()
        .map(|&phi0| {
            let alpha = timelike_alpha(phi0);
            let omega = (phi0 * phi0 + 1.0).sqrt();
            AlphaFrequencyRow {
                phi0,
                alpha,
                alpha_gap: alpha - ALPHA_FLOOR,
                omega,
                omega_gap: omega - SQRT_2,
            }
        })
        .collect()
}

/// A located extremal sample.
#[derive(Clone, Debug, Serialize)]
pub struct BoundWitness {
    pub params: ParamsRecord,
    pub t: f64,
    pub value: f64,
}

/// Result of a bounding scan over a parameter grid.
#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub grid_size: usize,
    pub t_samples: usize,
    pub x1_inf: BoundWitness,
    pub x1_sup: BoundWitness,
    pub x2_inf: BoundWitness,
    pub x2_sup: BoundWitness,
    /// Aggregate derived bounds for the scanned grid (exact per-curve
    /// envelopes, maximized over the grid).
    pub derived_x1_lo: f64,
    pub derived_x1_hi: f64,
    pub derived_x2_amp: f64,
    /// The parameter-free box: x1 ∈ [ln(3-2√2), -ln(3-2√2)] for every
    /// valid parameter set.
    pub family_x1_lo: f64,
    pub family_x1_hi: f64,
    /// Empirical extremes stay inside the derived bounds (hard invariant).
    pub empirical_within_derived: bool,
    /// Containment in the reference box x1 ∈ [-1.03, 0.7],
    /// |x2| ≤ 2 + √2 — reported, not asserted.
    pub box_x1_ok: bool,
    pub box_x2_ok: bool,
    pub x1_above_limit: Option<BoundWitness>,
    pub x2_beyond_box: Option<BoundWitness>,
    /// Containment in the cone |x3| ≤ x0, x0 ≥ 0 — reported, not asserted.
    pub cone_ok: bool,
    pub cone_violation: Option<BoundWitness>,
}

/// Reference box of the bound comparison: x1 ∈ [-1.03, 0.7] and
/// |x2| ≤ 2 + √2.
pub const BOX_X1_LO: f64 = -1.03;
pub const BOX_X1_HI: f64 = 0.7;
pub const BOX_X2_ABS: f64 = 2.0 + SQRT_2;

/// Exact per-curve envelope of x1: [ln(2α) - ln N(ω t0), ln 2 - ln N(ω t0)].
pub fn x1_envelope(params: &GeodesicParams) -> (f64, f64) {
    if params.is_line() {
        return (0.0, 0.0);
    }
    let alpha = params.alpha();
    let n0 = (1.0 + alpha) + (1.0 - alpha) * (params.omega() * params.t0()).cos();
    ((2.0 * alpha / n0).ln(), (2.0 / n0).ln())
}

/// Exact per-curve sup of |x2|: (√2 b/ω) (N(ω t0)/(2√α) + |sin ω t0|).
pub fn x2_sup(params: &GeodesicParams) -> f64 {
    if params.is_line() {
        return 0.0;
    }
    let alpha = params.alpha();
    let s0 = params.omega() * params.t0();
    let n0 = (1.0 + alpha) + (1.0 - alpha) * s0.cos();
    SQRT_2 * params.b() / params.omega() * (n0 / (2.0 * alpha.sqrt()) + s0.sin().abs())
}

/// Sample each curve over two periods (uniform grid plus the analytic
/// extremizers of x1 and x2) and reduce empirical bounds, derived bounds
/// and containment comparisons over the grid.
pub fn bounding_scan(grid: &[GeodesicParams], t_samples: usize) -> BoundReport {
    assert!(!grid.is_empty() && t_samples >= 2);
    let mut x1_inf: Option<BoundWitness> = None;
    let mut x1_sup: Option<BoundWitness> = None;
    let mut x2_inf: Option<BoundWitness> = None;
    let mut x2_sup_w: Option<BoundWitness> = None;
    let mut derived_x1_lo = f64::INFINITY;
    let mut derived_x1_hi = f64::NEG_INFINITY;
    let mut derived_x2_amp: f64 = 0.0;
    let mut x1_above_limit: Option<BoundWitness> = None;
    let mut x2_beyond_box: Option<BoundWitness> = None;
    let mut cone_violation: Option<BoundWitness> = None;

    for params in grid {
        let span = if params.is_line() {
            4.0 * PI
        } else {
            2.0 * period(params).expect("oscillatory")
        };
        let mut times: Vec<f64> = (0..t_samples)
            .map(|i| span * i as f64 / (t_samples - 1) as f64)
            .collect();
        if !params.is_line() {
            let omega = params.omega();
            let alpha = params.alpha();
            let tau_c = (-(1.0 - alpha) / (1.0 + alpha)).acos();
            for k in 0..=4 {
                let base = params.t0() + (2.0 * PI * k as f64) / omega;
                for tau in [0.0, PI, tau_c, -tau_c] {
                    let t = base + tau / omega;
                    if (0.0..=span).contains(&t) {
                        times.push(t);
                    }
                }
            }
        }

        let (lo, hi) = x1_envelope(params);
        derived_x1_lo = derived_x1_lo.min(lo);
        derived_x1_hi = derived_x1_hi.max(hi);
        derived_x2_amp = derived_x2_amp.max(x2_sup(params));

        for &t in &times {
            let g = params.position(t);
            let witness = |value: f64| BoundWitness {
                params: params.record(),
                t,
                value,
            };
            if x1_inf.as_ref().is_none_or(|w| g.x1 < w.value) {
                x1_inf = Some(witness(g.x1));
            }
            if x1_sup.as_ref().is_none_or(|w| g.x1 > w.value) {
                x1_sup = Some(witness(g.x1));
            }
            if x2_inf.as_ref().is_none_or(|w| g.x2 < w.value) {
                x2_inf = Some(witness(g.x2));
            }
            if x2_sup_w.as_ref().is_none_or(|w| g.x2 > w.value) {
                x2_sup_w = Some(witness(g.x2));
            }
            if g.x1 > BOX_X1_HI && x1_above_limit.as_ref().is_none_or(|w| g.x1 > w.value) {
                x1_above_limit = Some(witness(g.x1));
            }
            if g.x2.abs() > BOX_X2_ABS + 1e-9
                && x2_beyond_box
                    .as_ref()
                    .is_none_or(|w| g.x2.abs() > w.value.abs())
            {
                x2_beyond_box = Some(witness(g.x2));
            }
            if (g.x0 < -1e-12 || g.x3.abs() > g.x0 + 1e-12) && cone_violation.is_none() {
                cone_violation = Some(witness(g.x0));
            }
        }
    }

    let x1_inf = x1_inf.expect("nonempty grid");
    let x1_sup = x1_sup.expect("nonempty grid");
    let x2_inf = x2_inf.expect("nonempty grid");
    let x2_sup_w = x2_sup_w.expect("nonempty grid");

    let empirical_within_derived = x1_inf.value >= derived_x1_lo - 1e-9
        && x1_sup.value <= derived_x1_hi + 1e-9
        && x2_inf.value >= -derived_x2_amp - 1e-9
        && x2_sup_w.value <= derived_x2_amp + 1e-9;
    let box_x1_ok = x1_inf.value >= BOX_X1_LO - 1e-9 && x1_sup.value <= BOX_X1_HI + 1e-9;
    let box_x2_ok = x2_beyond_box.is_none();

    BoundReport {
        grid_size: grid.len(),
        t_samples,
        x1_inf,
        x1_sup,
        x2_inf,
        x2_sup: x2_sup_w,
        derived_x1_lo,
        derived_x1_hi,
        derived_x2_amp,
        family_x1_lo: ALPHA_FLOOR.ln(),
        family_x1_hi: -ALPHA_FLOOR.ln(),
        empirical_within_derived,
        box_x1_ok,
        box_x2_ok,
        x1_above_limit,
        x2_beyond_box,
        cone_ok: cone_violation.is_none(),
        cone_violation,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extremal::GeodesicClass;
    use crate::oracle::{
        extremum_scan, godel_coords, godel_initial_psi, integrate_at, IntegratorConfig,
        LieAlgebraSpec,
    };
    use approx::assert_abs_diff_eq;

    fn iso(phi3: f64, t0: f64) -> GeodesicParams {
        GeodesicParams::new(GeodesicClass::Isotropic, 1.0, phi3, t0).unwrap()
    }

    fn tl(phi0: f64, phi3: f64, t0: f64) -> GeodesicParams {
        GeodesicParams::new(GeodesicClass::Timelike, phi0, phi3, t0).unwrap()
    }

    #[test]
    fn period_values() {
        assert_abs_diff_eq!(period(&iso(0.0, 0.0)).unwrap(), 2.0 * PI, epsilon = 1e-14);
        assert_abs_diff_eq!(
            period(&tl(3f64.sqrt(), 0.0, 0.0)).unwrap(),
            PI,
            epsilon = 1e-14
        );
        for phi0 in [1.2, 2.0, 4.5] {
            assert_abs_diff_eq!(
                period(&tl(phi0, 0.0, 0.0)).unwrap(),
                2.0 * PI / (phi0 * phi0 + 1.0).sqrt(),
                epsilon = 1e-13
            );
        }
        assert!(period(&tl(2.0, 3f64.sqrt(), 0.0)).is_err());
    }

    #[test]
    fn drift_values_and_positivity() {
        assert_abs_diff_eq!(
            drift_per_period(&iso(0.0, 0.0)).unwrap(),
            2.0 * PI * (SQRT_2 - 1.0),
            epsilon = 1e-14
        );
        assert_abs_diff_eq!(
            drift_per_period(&tl(3f64.sqrt(), 0.0, 0.0)).unwrap(),
            2.0 * PI * (SQRT_2 - 3f64.sqrt() / 2.0),
            epsilon = 1e-14
        );
        // positive across the family
        let mut phi0 = 1.0 + 1e-6;
        while phi0 < 50.0 {
            assert!(drift_per_period(&tl(phi0, 0.0, 0.0)).unwrap() > 0.0);
            phi0 *= 1.7;
        }
        // the closed form equals the sampled advance
        for p in [iso(0.0, 1.3), tl(1.9, 0.7, -0.4)] {
            let measured = p.position(period(&p).unwrap()).x0;
            assert_abs_diff_eq!(measured, drift_per_period(&p).unwrap(), epsilon = 1e-10);
        }
    }

    #[test]
    fn drift_integral_identities() {
        let value = x0_drift_integral(ALPHA_FLOOR);
        assert_abs_diff_eq!(value, -PI, epsilon = 1e-9);
        // -2√α × integral reproduces the drift
        let tied = -2.0 * ALPHA_FLOOR.sqrt() * value;
        assert_abs_diff_eq!(tied, 2.0 * PI * (SQRT_2 - 1.0), epsilon = 1e-9);
        // constant denominator integrates cos to zero
        assert_abs_diff_eq!(x0_drift_integral(1.0), 0.0, epsilon = 1e-10);
    }

    #[test]
    fn shift_identity_on_grid() {
        let p = iso(0.0, 0.0);
        let grid: Vec<f64> = (0..64).map(|i| 2.0 * PI * i as f64 / 64.0).collect();
        assert!(shift_residual(&p, &grid).unwrap() <= 1e-10);
        assert_abs_diff_eq!(
            p.position(2.0 * PI).x0,
            2.0 * (SQRT_2 - 1.0) * PI,
            epsilon = 1e-12
        );
    }

    #[test]
    fn shift_identity_against_oracle() {
        let p = iso(0.0, 0.0);
        let spec = LieAlgebraSpec::godel();
        let psi = godel_initial_psi(&p);
        let drift = 2.0 * PI * (SQRT_2 - 1.0);
        for t in [0.0, 1.0, 2.5] {
            let samples = integrate_at(
                &spec,
                &psi,
                &IntegratorConfig::default(),
                &[t, t + 2.0 * PI],
            )
            .unwrap();
            let x0_gap = godel_coords(&samples[1].gamma)[0] - godel_coords(&samples[0].gamma)[0];
            assert_abs_diff_eq!(x0_gap, drift, epsilon = 1e-8);
        }
    }

    #[test]
    fn audit_routes() {
        let reports = no_closed_geodesic_audit(&[
            iso(0.0, 0.0),
            tl(3f64.sqrt(), 0.0, 0.0),
            tl(2.0, 0.5, 0.0),
            tl(1.0, 0.0, 0.0),
        ]);
        assert!(reports
            .iter()
            .all(|r| r.verdict == "no closed causal geodesic"));
        assert_eq!(reports[0].route, ClosureRoute::TransversePeriod);
        assert_abs_diff_eq!(reports[0].period.unwrap(), 2.0 * PI, epsilon = 1e-13);
        assert!(reports[0].spurious_return.is_none());
        assert!(reports[0].return_residual.unwrap() <= 1e-10);
        assert!(reports[0].drift_residual.unwrap() <= 1e-10);

        assert_eq!(reports[1].route, ClosureRoute::TransversePeriod);
        assert_abs_diff_eq!(
            reports[1].drift.unwrap(),
            2.0 * PI * (SQRT_2 - 3f64.sqrt() / 2.0),
            epsilon = 1e-13
        );

        assert_eq!(reports[2].route, ClosureRoute::X3Monotone);
        assert_eq!(reports[3].route, ClosureRoute::X0Monotone);
    }

    #[test]
    fn audit_with_phase_offsets() {
        let reports =
            no_closed_geodesic_audit(&[iso(0.0, PI / 2.0), iso(0.0, PI), tl(1.2, 0.0, 0.9)]);
        for r in &reports {
            assert_eq!(r.verdict, "no closed causal geodesic");
            assert!(r.spurious_return.is_none());
            assert!(r.return_residual.unwrap() <= 1e-10);
        }
    }

    #[test]
    fn alpha_frequency_separation() {
        let rows = alpha_frequency_rows(&[1.0 + 1e-6, 1.5, 3f64.sqrt(), 10.0, 1e3]);
        for row in &rows {
            assert!(row.alpha_gap > 0.0, "alpha gap at phi0 = {}", row.phi0);
            assert!(row.omega_gap > 0.0, "omega gap at phi0 = {}", row.phi0);
        }
        // spot value: φ0 = √3 gives α = 2 - √3
        assert_abs_diff_eq!(rows[2].alpha, 2.0 - 3f64.sqrt(), epsilon = 1e-13);
        // the gaps collapse in the two limits
        assert!(rows[4].alpha_gap <= 1e-5);
        assert!(rows[0].omega_gap <= 1e-5);
        assert!(timelike_alpha(100.0) - ALPHA_FLOOR < 1e-3);
        assert!(timelike_alpha(1.0 + 1e-9) > 0.99);
    }

    #[test]
    fn x2_envelope_matches_scan() {
        // the analytic per-curve sup against a dense deterministic scan
        for p in [iso(0.0, 0.0), iso(0.0, PI / 2.0), tl(1.7, 0.0, 0.8)] {
            let span = 2.0 * period(&p).unwrap();
            let grid: Vec<f64> = (0..200_001).map(|i| span * i as f64 / 200_000.0).collect();
            let scan = extremum_scan(&grid, |t| p.position(*t).x2.abs()).unwrap();
            assert_abs_diff_eq!(scan.max, x2_sup(&p), epsilon = 1e-6);
        }
    }

    #[test]
    fn bounding_scan_isotropic_phases() {
        let grid = [iso(0.0, 0.0), iso(0.0, PI / 2.0), iso(0.0, PI)];
        let report = bounding_scan(&grid, 4096);
        assert!(report.empirical_within_derived);
        // the sup of |x2| is exactly 2 + √2 on these phases
        assert_abs_diff_eq!(report.x2_sup.value, BOX_X2_ABS, epsilon = 1e-9);
        assert!(report.box_x2_ok);
        // the phase t0 = π pushes x1 up to -ln(3-2√2) ≈ 1.7627, far above 0.7
        assert_abs_diff_eq!(report.x1_sup.value, -ALPHA_FLOOR.ln(), epsilon = 1e-9);
        assert!(!report.box_x1_ok);
        let witness = report.x1_above_limit.expect("recorded excursion");
        assert!(witness.value > BOX_X1_HI);
        // x0 dips below zero right after the start: cone violated
        assert!(!report.cone_ok);
        assert!(report.cone_violation.is_some());
    }

    #[test]
    fn bounding_scan_respects_family_box() {
        let grid = [
            iso(0.0, 0.0),
            iso(0.3, 0.7),
            tl(1.2, 0.0, 0.0),
            tl(2.0, 0.0, 0.0),
            tl(2.0, 0.9, 1.3),
        ];
        let report = bounding_scan(&grid, 2048);
        assert!(report.empirical_within_derived);
        assert!(report.x1_inf.value >= report.family_x1_lo - 1e-9);
        assert!(report.x1_sup.value <= report.family_x1_hi + 1e-9);
        // a timelike curve with x0'(0) < 0 violates the cone
        assert!(!report.cone_ok);
    }

    #[test]
    fn off_grid_phase_exceeds_reference_box() {
        // at t0 = π/4 the per-curve sup reaches 4, beyond 2 + √2: the
        // reference-box comparison reports rather than asserts
        let grid = [iso(0.0, PI / 4.0)];
        let report = bounding_scan(&grid, 8192);
        assert!(report.empirical_within_derived);
        assert!(!report.box_x2_ok);
        assert_abs_diff_eq!(report.x2_sup.value, 4.0, epsilon = 1e-9);
        assert_abs_diff_eq!(x2_sup(&grid[0]), 4.0, epsilon = 1e-12);
    }
}
