//! The verification battery: every check the project promises, with its
//! tolerance pinned, shared by the acceptance test suite and the CLI
//! `verify` command. Random samples use fixed seeds so reruns are
//! byte-identical.

use crate::analysis::{
    alpha_frequency_rows, bounding_scan, drift_per_period, no_closed_geodesic_audit,
    shift_residual, timelike_alpha, x0_drift_integral, ALPHA_FLOOR, BOX_X1_HI, BOX_X2_ABS,
};
use crate::chart::Chart;
use crate::curvature::curvature_report;
use crate::extremal::{pmp_check, GeodesicClass, GeodesicParams};
use crate::metric::{
    circle_norm_sq, circle_tangent_class, ctc_witness, horizon_radius, pullback_residual,
    CausalKind, ChartPoint, MetricError,
};
use crate::oracle::{
    compare_to_closed_form, godel_coords, godel_initial_psi, godel_monitor_drift_rate,
    integrate_at, IntegratorConfig, LieAlgebraSpec,
};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{PI, SQRT_2};

/// One measured check: passes when the residual is within the threshold.
#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: String,
    pub residual: f64,
    pub threshold: f64,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    fn new(name: &str, residual: f64, threshold: f64, detail: String) -> Self {
        CheckResult {
            name: name.to_string(),
            residual,
            threshold,
            passed: residual <= threshold,
            detail,
        }
    }

    /// A boolean fact encoded as a residual: 0 when satisfied, 1 otherwise.
    fn fact(name: &str, satisfied: bool, detail: String) -> Self {
        CheckResult::new(name, if satisfied { 0.0 } else { 1.0 }, 0.5, detail)
    }

    pub fn passes_at(&self, tol: f64) -> bool {
        self.residual <= tol
    }
}

#[derive(Clone, Debug)]
pub struct CriterionReport {
    pub name: &'static str,
    pub checks: Vec<CheckResult>,
    pub passed: bool,
}

impl CriterionReport {
    fn collect(name: &'static str, checks: Vec<CheckResult>) -> Self {
        let passed = checks.iter().all(|c| c.passed);
        CriterionReport {
            name,
            checks,
            passed,
        }
    }
}

/// The parameter grid used across the oracle/audit/bounds criteria: both
/// classes, transverse slopes 0, ±0.3 and ±0.7 of the class bound, and
/// phases at 0, a quarter period and a half period.
pub fn acceptance_grid() -> Vec<GeodesicParams> {
    let mut grid = Vec::new();
    let families: Vec<(GeodesicClass, f64)> = vec![
        (GeodesicClass::Isotropic, 1.0),
        (GeodesicClass::Timelike, 1.2),
        (GeodesicClass::Timelike, 3f64.sqrt()),
        (GeodesicClass::Timelike, 2.0),
    ];
    for (class, phi0) in families {
        let bound = (phi0 * phi0 - class.control_norm_sq()).sqrt();
        let phi3_values = [0.0, 0.3, -0.3, 0.7 * bound, -0.7 * bound];
        for phi3 in phi3_values {
            let base =
                GeodesicParams::new(class, phi0, phi3, 0.0).expect("grid parameters are valid");
            let omega = base.omega();
            for frac in [0.0, 0.25, 0.5] {
                let t0 = frac * 2.0 * PI / omega;
                grid.push(
                    GeodesicParams::new(class, phi0, phi3, t0).expect("grid parameters are valid"),
                );
            }
        }
    }
    grid
}

/// Closed forms against the fixed-step integrator over [-2π, 2π].
pub fn criterion_oracle_agreement() -> CriterionReport {
    let grid = acceptance_grid();
    let config = IntegratorConfig::default();
    let mut worst: f64 = 0.0;
    let mut worst_detail = String::new();
    for params in &grid {
        let dev = compare_to_closed_form(params, &config, -2.0 * PI, 2.0 * PI, 129)
            .expect("integration succeeds");
        if dev > worst {
            worst = dev;
            worst_detail = format!(
                "worst at class={} phi0={:.4} phi3={:.4} t0={:.4}",
                params.class(),
                params.phi0(),
                params.phi3(),
                params.t0()
            );
        }
    }
    CriterionReport::collect(
        "oracle-agreement",
        vec![CheckResult::new(
            &format!("max deviation over {} parameter sets", grid.len()),
            worst,
            1e-7,
            worst_detail,
        )],
    )
}

/// Conservation of ψ0, ψ3, ψ1²+ψ2² and (u,u) along every oracle trajectory.
pub fn criterion_conservation() -> CriterionReport {
    let grid = acceptance_grid();
    let spec = LieAlgebraSpec::godel();
    let config = IntegratorConfig::default();
    let names = ["psi0", "psi3", "psi1^2+psi2^2", "(u,u)"];
    let mut worst = [0.0f64; 4];
    for params in &grid {
        let psi = godel_initial_psi(params);
        for sign in [-1.0, 1.0] {
            let times: Vec<f64> = (0..=64)
                .map(|i| sign * 2.0 * PI * i as f64 / 64.0)
                .collect();
            let samples = integrate_at(&spec, &psi, &config, &times).expect("integrates");
            let rate = godel_monitor_drift_rate(&samples);
            for i in 0..4 {
                worst[i] = worst[i].max(rate[i]);
            }
        }
    }
    let checks = (0..4)
        .map(|i| {
            CheckResult::new(
                &format!("{} drift per unit t", names[i]),
                worst[i],
                1e-9,
                String::new(),
            )
        })
        .collect();
    CriterionReport::collect("conservation", checks)
}

/// The drift quadrature, the closed-form per-period advance and the shift
/// identity of the isotropic base member.
pub fn criterion_drift_identities() -> CriterionReport {
    let advance = 2.0 * (SQRT_2 - 1.0) * PI;
    let integral = x0_drift_integral(ALPHA_FLOOR);
    let iso = GeodesicParams::new(GeodesicClass::Isotropic, 1.0, 0.0, 0.0).unwrap();
    let drift = drift_per_period(&iso).unwrap();
    let endpoint = iso.position(2.0 * PI).x0;
    let grid: Vec<f64> = (0..64).map(|i| 2.0 * PI * i as f64 / 64.0).collect();
    let shift = shift_residual(&iso, &grid).unwrap();
    let checks = vec![
        CheckResult::new(
            "quadrature of the drift integrand vs -pi",
            (integral + PI).abs(),
            1e-9,
            format!("integral = {integral:.12}"),
        ),
        CheckResult::new(
            "closed-form drift vs 2(sqrt2-1)pi",
            (drift - advance).abs(),
            1e-12,
            format!("drift = {drift:.12}"),
        ),
        CheckResult::new(
            "x0 advance after one period",
            (endpoint - advance).abs(),
            1e-10,
            String::new(),
        ),
        CheckResult::new(
            "shift identity constant over a 64-point grid",
            shift,
            1e-10,
            String::new(),
        ),
        CheckResult::new(
            "-2 sqrt(alpha) x quadrature ties to the drift",
            (-2.0 * ALPHA_FLOOR.sqrt() * integral - advance).abs(),
            1e-9,
            String::new(),
        ),
    ];
    CriterionReport::collect("drift-identities", checks)
}

/// No closed causal geodesics: simultaneous transverse returns happen only
/// at period multiples and the per-period x0 drift is positive everywhere.
pub fn criterion_closure_audit() -> CriterionReport {
    let grid = acceptance_grid();
    let reports = no_closed_geodesic_audit(&grid);
    let spurious = reports
        .iter()
        .filter(|r| r.spurious_return.is_some())
        .count();
    let max_return = reports
        .iter()
        .filter_map(|r| r.return_residual)
        .fold(0.0f64, f64::max);
    let min_drift = reports
        .iter()
        .filter_map(|r| r.drift)
        .fold(f64::INFINITY, f64::min);
    let max_drift_residual = reports
        .iter()
        .filter_map(|r| r.drift_residual)
        .fold(0.0f64, f64::max);
    let all_excluded = reports
        .iter()
        .all(|r| r.verdict == "no closed causal geodesic");
    let checks = vec![
        CheckResult::new(
            "spurious simultaneous returns",
            spurious as f64,
            0.5,
            String::new(),
        ),
        CheckResult::new(
            "transverse return at the period",
            max_return,
            1e-8,
            String::new(),
        ),
        CheckResult::fact(
            "per-period drift positive",
            min_drift > 0.0,
            format!("min drift = {min_drift:.6}"),
        ),
        CheckResult::new(
            "measured drift vs closed form",
            max_drift_residual,
            1e-10,
            String::new(),
        ),
        CheckResult::fact(
            "verdict on every grid point",
            all_excluded,
            format!("{} parameter sets audited", reports.len()),
        ),
    ];
    CriterionReport::collect("closure-audit", checks)
}

/// Scalar curvature, the fluid form of the Ricci tensor, the field
/// equations and the vorticity at random points.
pub fn criterion_curvature() -> CriterionReport {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6f64656c);
    let mut worst_scalar: f64 = 0.0;
    let mut worst_fluid: f64 = 0.0;
    let mut worst_einstein: f64 = 0.0;
    let mut worst_vorticity: f64 = 0.0;
    for _ in 0..100 {
        let p = ChartPoint::cartesian(
            rng.random_range(-3.0..3.0),
            rng.random_range(-3.0..3.0),
            rng.random_range(-3.0..3.0),
            rng.random_range(-3.0..3.0),
        );
        let rep = curvature_report(&p, 1.0).expect("cartesian point");
        worst_scalar = worst_scalar.max((rep.scalar - 1.0).abs());
        worst_fluid = worst_fluid.max(rep.ricci_fluid_residual);
        worst_einstein = worst_einstein.max(rep.einstein_residual);
        worst_vorticity = worst_vorticity.max((rep.vorticity - 1.0 / SQRT_2).abs());
    }
    let checks = vec![
        CheckResult::new("scalar curvature vs 1", worst_scalar, 1e-8, String::new()),
        CheckResult::new("Ricci vs u_i u_k", worst_fluid, 1e-8, String::new()),
        CheckResult::new(
            "field-equation residual (Lambda = -1/2, 8 pi kappa rho = 1)",
            worst_einstein,
            1e-8,
            String::new(),
        ),
        CheckResult::new("vorticity vs 1/sqrt2", worst_vorticity, 1e-6, String::new()),
    ];
    CriterionReport::collect("curvature", checks)
}

/// The horizon radius and the closed-timelike-circle witness.
pub fn criterion_horizon_ctc() -> CriterionReport {
    let rh = horizon_radius();
    let horizon_norm = circle_norm_sq(rh).abs();
    let witness = ctc_witness(1.0, 1000).expect("circle above the horizon");
    let bad_samples = witness
        .samples
        .iter()
        .filter(|(phi, _)| {
            circle_tangent_class(1.0, *phi)
                .map(|c| c.kind != CausalKind::Timelike)
                .unwrap_or(true)
        })
        .count();
    let rejected_spacelike = matches!(
        ctc_witness(0.5, 16),
        Err(MetricError::CircleNotTimelike {
            kind: CausalKind::Spacelike,
            ..
        })
    );
    let checks = vec![
        CheckResult::new(
            "circle norm at the horizon radius",
            horizon_norm,
            1e-12,
            format!("r = {rh:.10}"),
        ),
        CheckResult::new(
            "non-timelike samples on the r = 1 circle",
            bad_samples as f64,
            0.5,
            format!("{} samples checked", witness.samples.len()),
        ),
        CheckResult::fact(
            "r = 0.5 circle rejected as spacelike",
            rejected_spacelike,
            String::new(),
        ),
    ];
    CriterionReport::collect("horizon-ctc", checks)
}

/// Jacobian-congruence residuals of the chart transforms.
pub fn criterion_chart_coherence() -> CriterionReport {
    let mut rng = ChaCha8Rng::seed_from_u64(0x63686172);
    let kundt_points: Vec<ChartPoint> = (0..100)
        .map(|_| {
            ChartPoint::kundt(
                rng.random_range(-3.0..3.0),
                rng.random_range(-3.0..3.0),
                rng.random_range(0.2..5.0),
                rng.random_range(-3.0..3.0),
            )
            .expect("y > 0")
        })
        .collect();
    let kundt = pullback_residual(Chart::Kundt, &kundt_points).expect("valid points");
    let cyl_points: Vec<ChartPoint> = (0..100)
        .map(|_| {
            ChartPoint::cylindrical(
                rng.random_range(-3.0..3.0),
                rng.random_range(0.1..2.0),
                rng.random_range(-PI + 1e-2..PI),
                0.0,
            )
            .expect("r >= 0")
        })
        .collect();
    let cyl = pullback_residual(Chart::Cylindrical, &cyl_points).expect("valid points");
    let checks = vec![
        CheckResult::new(
            "Kundt pullback residual (100 points)",
            kundt.max_residual,
            1e-8,
            format!("{} singular points", kundt.singular_points.len()),
        ),
        CheckResult::fact(
            "Kundt scan free of singular Jacobians",
            kundt.singular_points.is_empty(),
            String::new(),
        ),
        CheckResult::new(
            "cylindrical pullback residual (100 points)",
            cyl.max_residual,
            1e-6,
            format!("{} singular points", cyl.singular_points.len()),
        ),
        CheckResult::fact(
            "cylindrical scan free of singular Jacobians",
            cyl.singular_points.is_empty(),
            String::new(),
        ),
    ];
    CriterionReport::collect("chart-coherence", checks)
}

/// Bounding boxes over the acceptance grid, with the reference-box
/// discrepancies recorded as facts.
pub fn criterion_bounds() -> CriterionReport {
    let grid = acceptance_grid();
    let report = bounding_scan(&grid, 4096);
    let x1_excess = (report.x1_sup.value - report.family_x1_hi)
        .max(report.family_x1_lo - report.x1_inf.value)
        .max(0.0);
    let checks = vec![
        CheckResult::new(
            "sup |x2| attains 2+sqrt2",
            (BOX_X2_ABS - report.x2_sup.value.abs().max(report.x2_inf.value.abs())).max(0.0),
            1e-3,
            format!("sup = {:.12}", report.x2_sup.value),
        ),
        CheckResult::new(
            "sup |x2| within 2+sqrt2",
            (report.x2_sup.value.abs().max(report.x2_inf.value.abs()) - BOX_X2_ABS).max(0.0),
            1e-9,
            String::new(),
        ),
        CheckResult::new(
            "x1 within the family box [ln a2, -ln a2]",
            x1_excess,
            1e-9,
            format!(
                "x1 range [{:.6}, {:.6}]",
                report.x1_inf.value, report.x1_sup.value
            ),
        ),
        CheckResult::fact(
            "cone violation recorded",
            report.cone_violation.is_some(),
            report
                .cone_violation
                .as_ref()
                .map(|w| {
                    format!(
                        "x0 = {:.6} at t = {:.4}, class {} phi0 {:.3} t0 {:.3}",
                        w.value, w.t, w.params.class, w.params.phi0, w.params.t0
                    )
                })
                .unwrap_or_default(),
        ),
        CheckResult::fact(
            "x1 excursion above 0.7 recorded",
            report
                .x1_above_limit
                .as_ref()
                .is_some_and(|w| w.value > BOX_X1_HI),
            report
                .x1_above_limit
                .as_ref()
                .map(|w| {
                    format!(
                        "x1 = {:.6} at t = {:.4}, t0 = {:.4}",
                        w.value, w.t, w.params.t0
                    )
                })
                .unwrap_or_default(),
        ),
        CheckResult::fact(
            "empirical extremes inside derived envelopes",
            report.empirical_within_derived,
            String::new(),
        ),
    ];
    CriterionReport::collect("bounding-box", checks)
}

/// Separation of α and ω from their limit values across the timelike family.
pub fn criterion_alpha_frequency() -> CriterionReport {
    let grid = [1.0 + 1e-6, 1.5, 3f64.sqrt(), 10.0, 1e3];
    let rows = alpha_frequency_rows(&grid);
    let min_alpha_gap = rows
        .iter()
        .map(|r| r.alpha_gap)
        .fold(f64::INFINITY, f64::min);
    let min_omega_gap = rows
        .iter()
        .map(|r| r.omega_gap)
        .fold(f64::INFINITY, f64::min);
    let tail_gap = timelike_alpha(1e3) - ALPHA_FLOOR;
    let near_unit_omega = (1.0 + 1e-6f64).mul_add(1.0 + 1e-6, 1.0).sqrt() - SQRT_2;
    let checks = vec![
        CheckResult::fact(
            "alpha stays above 3-2sqrt2 on the grid",
            min_alpha_gap > 0.0,
            format!("min gap = {min_alpha_gap:.3e}"),
        ),
        CheckResult::new("alpha gap at phi0 = 1e3", tail_gap, 1e-5, String::new()),
        CheckResult::fact(
            "omega stays above sqrt2 on the grid",
            min_omega_gap > 0.0,
            format!("min gap = {min_omega_gap:.3e}"),
        ),
        CheckResult::new(
            "omega gap at phi0 = 1+1e-6",
            near_unit_omega,
            1e-5,
            String::new(),
        ),
    ];
    CriterionReport::collect("alpha-frequency", checks)
}

/// Spot values at a quarter period for the two base members, against both
/// the closed forms and the integrator.
pub fn criterion_golden_values() -> CriterionReport {
    let t = PI / 2.0;
    let iso = GeodesicParams::new(GeodesicClass::Isotropic, 1.0, 0.0, 0.0).unwrap();
    let iso_exact = [
        PI * (SQRT_2 - 2.0) / 4.0,
        (2.0 - SQRT_2).ln(),
        1.0 + SQRT_2,
        0.0,
    ];
    let tl = GeodesicParams::new(GeodesicClass::Timelike, 3f64.sqrt(), 0.0, 0.0).unwrap();
    let tl_exact = [
        PI * (SQRT_2 - 3f64.sqrt() / 2.0),
        (2.0 - 3f64.sqrt()).ln(),
        0.0,
        0.0,
    ];
    let spec = LieAlgebraSpec::godel();
    let config = IntegratorConfig::default();
    let deviation = |params: &GeodesicParams, exact: &[f64; 4]| {
        let closed = params.position(t).coords();
        let closed_dev = closed
            .iter()
            .zip(exact.iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0f64, f64::max);
        let samples =
            integrate_at(&spec, &godel_initial_psi(params), &config, &[t]).expect("integrates");
        let numeric = godel_coords(&samples[0].gamma);
        let numeric_dev = numeric
            .iter()
            .zip(exact.iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0f64, f64::max);
        (closed_dev, numeric_dev)
    };
    let (iso_closed, iso_numeric) = deviation(&iso, &iso_exact);
    let (tl_closed, tl_numeric) = deviation(&tl, &tl_exact);
    let checks = vec![
        CheckResult::new(
            "isotropic quarter-period closed form",
            iso_closed,
            1e-10,
            String::new(),
        ),
        CheckResult::new(
            "isotropic quarter-period integrator",
            iso_numeric,
            1e-7,
            String::new(),
        ),
        CheckResult::new(
            "timelike quarter-period closed form",
            tl_closed,
            1e-10,
            String::new(),
        ),
        CheckResult::new(
            "timelike quarter-period integrator",
            tl_numeric,
            1e-7,
            String::new(),
        ),
    ];
    CriterionReport::collect("golden-values", checks)
}

/// The minimization clause of the minimum principle on random timelike
/// members: the pairing over the control region bottoms out at 1, at u(t).
pub fn criterion_pmp_minimum() -> CriterionReport {
    let mut rng = ChaCha8Rng::seed_from_u64(0x706d70);
    let mut worst_min: f64 = 0.0;
    let mut worst_arg: f64 = 0.0;
    for _ in 0..20 {
        let phi0: f64 = rng.random_range(1.05..2.5);
        let bound = (phi0 * phi0 - 1.0).sqrt();
        let phi3 = rng.random_range(-0.8..0.8) * bound;
        let t0 = rng.random_range(-2.0..2.0);
        let params = GeodesicParams::new(GeodesicClass::Timelike, phi0, phi3, t0)
            .expect("valid random parameters");
        for t in [0.0, 1.0, 2.0] {
            let rep = pmp_check(&params, t);
            worst_min = worst_min.max(rep.min_residual.expect("timelike"));
            worst_arg = worst_arg.max(rep.argmin_distance.expect("timelike"));
        }
    }
    let checks = vec![
        CheckResult::new(
            "pairing minimum vs 1 (20 x 3 cases)",
            worst_min,
            1e-6,
            String::new(),
        ),
        CheckResult::new(
            "minimizer distance to u(t) in hyperboloid parameters",
            worst_arg,
            1e-4,
            String::new(),
        ),
    ];
    CriterionReport::collect("pmp-minimum", checks)
}

/// Run the whole battery in order.
pub fn run_all() -> Vec<CriterionReport> {
    vec![
        criterion_oracle_agreement(),
        criterion_conservation(),
        criterion_drift_identities(),
        criterion_closure_audit(),
        criterion_curvature(),
        criterion_horizon_ctc(),
        criterion_chart_coherence(),
        criterion_bounds(),
        criterion_alpha_frequency(),
        criterion_golden_values(),
        criterion_pmp_minimum(),
    ]
}
