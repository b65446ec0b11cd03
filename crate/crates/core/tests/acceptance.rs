//! Acceptance run: one line per criterion, all tolerances pinned here.
//!
//! Runs without the libtest harness: the criteria execute sequentially (so
//! the timing budgets are measured without other tests competing for the
//! CPU) and their lines are printed even when the run passes.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use graykit::algebra::{omega, Endo, Vector};
use graykit::deformation::{check_jet_consistency, params_to_jet, DeformationParams};
use graykit::report::VerificationReport;
use graykit::s6::{
    ambient_basis, verify_cl_identities, verify_gray_with, verify_linearized, verify_linearized_basis, verify_spectral,
    Chart, Defect, FiniteDiff, SphereDeformation,
};
use graykit::suite::{algebra_suite, check_names};
use graykit::{Mode, Rational, Scalar};

const TRIALS: usize = 1000;
const SEED: u64 = 0;
const EXACT_BUDGET: Duration = Duration::from_secs(60);
const FLOAT_TOL: f64 = 1e-12;
const STEP: f64 = 1e-3;
const S6_POINTS: usize = 50;
const CL_POINTS: usize = 30;
const GRAY_TOL: f64 = 1e-5;
const GRAY_BUDGET: Duration = Duration::from_secs(120);
const ORDER_RANGE: (f64, f64) = (1.8, 2.2);
const SPECTRAL_TOL: f64 = 1e-4;
const LINEARIZED_TOL: f64 = 1e-5;
const RANK_RATIO: f64 = 1e-3;
const CL_TOL: f64 = 1e-4;
const COCLOSED_TOL: f64 = 1e-6;
/// Below this a residual is rounding noise and has no observable order.
const ROUNDING: f64 = 1e-9;
const DEFECT_MIN: f64 = 1e-2;

/// Checks of the algebra suite that report structural quantities rather
/// than residuals.
const STRUCTURAL: [&str; 3] = ["algebra.iso_condition_number", "algebra.schur_witness", "algebra.schur_solution_space"];

struct Outcome {
    pass: bool,
    detail: String,
}

fn residual(report: &VerificationReport, name: &str) -> f64 {
    report.check(name).unwrap_or_else(|| panic!("{} has no check {name}", report.suite)).max_residual
}

fn order(report: &VerificationReport, name: &str) -> Option<f64> {
    report.check(name).unwrap_or_else(|| panic!("{} has no check {name}", report.suite)).conv_order
}

fn in_range(o: f64) -> bool {
    (ORDER_RANGE.0..=ORDER_RANGE.1).contains(&o)
}

fn show(order: Option<f64>) -> String {
    order.map_or("-".to_string(), |o| format!("{o:.3}"))
}

fn fd() -> FiniteDiff {
    FiniteDiff::new(STEP).unwrap()
}

fn exact_algebra(report: &VerificationReport, elapsed: Duration) -> Outcome {
    let residual_checks: Vec<_> = report.checks.iter().filter(|c| !STRUCTURAL.contains(&c.name.as_str())).collect();
    let registered = check_names().len();
    let nonzero: Vec<_> = residual_checks.iter().filter(|c| c.max_residual != 0.0).map(|c| c.name.as_str()).collect();
    let structural_ok = STRUCTURAL.iter().all(|n| report.check(n).is_some_and(|c| c.pass));
    Outcome {
        pass: nonzero.is_empty()
            && residual_checks.len() == registered
            && report.samples >= TRIALS
            && structural_ok
            && elapsed <= EXACT_BUDGET,
        detail: format!(
            "{} identities x {} trials, nonzero residuals {:?}, structural {}, {:.1}s <= {}s",
            residual_checks.len(),
            report.samples,
            nonzero,
            if structural_ok { "ok" } else { "FAILED" },
            elapsed.as_secs_f64(),
            EXACT_BUDGET.as_secs()
        ),
    }
}

fn float_algebra(report: &VerificationReport) -> Outcome {
    let residuals = report.checks.iter().filter(|c| !STRUCTURAL.contains(&c.name.as_str()));
    let (worst, name) =
        residuals.fold((0.0f64, ""), |(w, n), c| if c.max_residual > w { (c.max_residual, &c.name) } else { (w, n) });
    let projectors = ["algebra.projector_idempotent", "algebra.projector_complete", "algebra.projector_orthogonal"]
        .iter()
        .map(|n| residual(report, n))
        .fold(0.0f64, f64::max);
    Outcome {
        pass: worst <= FLOAT_TOL && projectors <= FLOAT_TOL && report.samples >= TRIALS,
        detail: format!("max residual {worst:.2e} ({name}), projectors {projectors:.2e}, tol {FLOAT_TOL:e}"),
    }
}

fn deformation(report: &VerificationReport) -> Outcome {
    let names = [
        "deformation.round_trip",
        "deformation.xi_coherence",
        "deformation.constraints",
        "deformation.orbit_jets",
        "deformation.scaling_curve",
        "deformation.linearity",
    ];
    let worst = names.iter().map(|n| residual(report, n)).fold(0.0f64, f64::max);
    Outcome {
        pass: worst == 0.0 && report.samples >= TRIALS,
        detail: format!("{} exact checks x {} trials, max residual {worst:e}", names.len(), report.samples),
    }
}

fn gray() -> Outcome {
    let start = Instant::now();
    let proj = verify_gray_with(S6_POINTS, fd(), SEED, Defect::None).unwrap();
    let geo = verify_gray_with(S6_POINTS, fd().with_chart(Chart::Geodesic), SEED, Defect::None).unwrap();
    let elapsed = start.elapsed();
    let names = ["gray.d_omega", "gray.d_psi_minus", "gray.nabla_omega", "gray.nabla_psi_plus"];
    let worst_proj = names.iter().map(|n| residual(&proj, n)).fold(0.0f64, f64::max);
    let worst_geo = names.iter().map(|n| residual(&geo, n)).fold(0.0f64, f64::max);
    // the projection chart hits the rounding floor, so orders come from the geodesic chart
    let orders: Vec<Option<f64>> = ["gray.d_omega", "gray.d_psi_minus"].iter().map(|n| order(&geo, n)).collect();
    let orders_ok = orders.iter().all(|o| o.is_some_and(in_range));
    Outcome {
        pass: worst_proj <= GRAY_TOL && worst_geo <= GRAY_TOL && orders_ok && elapsed <= GRAY_BUDGET,
        detail: format!(
            "{S6_POINTS} points h={STEP:e}: projection {worst_proj:.2e}, geodesic {worst_geo:.2e} <= {GRAY_TOL:e}; \
             orders dω {} dψ⁻ {} in [{}, {}]; {:.1}s <= {}s",
            show(orders[0]),
            show(orders[1]),
            ORDER_RANGE.0,
            ORDER_RANGE.1,
            elapsed.as_secs_f64(),
            GRAY_BUDGET.as_secs()
        ),
    }
}

fn spectral() -> Outcome {
    let r = verify_spectral(S6_POINTS, fd(), SEED).unwrap();
    let six = residual(&r, "spectral.linear_eigenvalue_6");
    let fourteen = residual(&r, "spectral.quadratic_eigenvalue_14");
    Outcome {
        pass: six <= SPECTRAL_TOL && fourteen <= SPECTRAL_TOL,
        detail: format!("relative error: eigenvalue 6 {six:.2e}, eigenvalue 14 {fourteen:.2e}, tol {SPECTRAL_TOL:e}"),
    }
}

fn linearized() -> Outcome {
    let r = verify_linearized_basis(S6_POINTS, fd(), SEED).unwrap();
    let mut worst = 0.0f64;
    for k in 1..=7 {
        for s in ["d_omega_dot", "d_psi_minus_dot", "mu_identity"] {
            worst = worst.max(residual(&r, &format!("linearized.e{k}.{s}")));
        }
    }
    let ratio = residual(&r, "linearized.rank.min_singular_ratio");
    Outcome {
        pass: worst <= LINEARIZED_TOL && ratio >= RANK_RATIO,
        detail: format!(
            "7 directions x {S6_POINTS} points: max residual {worst:.2e} <= {LINEARIZED_TOL:e}; \
             σmin/σmax {ratio:.3} >= {RANK_RATIO:e}"
        ),
    }
}

fn curvature() -> Outcome {
    let r = verify_cl_identities(CL_POINTS, fd(), SEED).unwrap();
    let identities = [
        "cl.lambda_d_phi",
        "cl.delta_h",
        "cl.delta_s_psi_plus",
        "cl.alpha_lambda_d_s_psi_minus",
        "cl.lambda_delta_s_psi_plus",
    ];
    let mut worst = 0.0f64;
    let mut orders_ok = true;
    let mut orders = Vec::new();
    for n in identities {
        let res = residual(&r, n);
        worst = worst.max(res);
        let o = order(&r, n);
        // a residual at the rounding floor has no order to observe
        orders_ok &= o.map_or(res <= ROUNDING, in_range);
        orders.push(show(o));
    }
    let delta_phi = residual(&r, "cl.coclosed.delta_phi");
    let conditions =
        ["cl.coclosed.d_phi_wedge_psi_plus", "cl.coclosed.d_phi_wedge_psi_minus", "cl.coclosed.d_phi_pairing"]
            .iter()
            .map(|n| residual(&r, n))
            .fold(0.0f64, f64::max);
    Outcome {
        pass: worst <= CL_TOL && orders_ok && delta_phi <= COCLOSED_TOL && conditions <= CL_TOL,
        detail: format!(
            "{CL_POINTS} points: identities {worst:.2e} <= {CL_TOL:e}, orders [{}]; |δφ| {delta_phi:.1e} <= \
             {COCLOSED_TOL:e}, conditions on dφ {conditions:.2e} <= {CL_TOL:e}",
            orders.join(", ")
        ),
    }
}

fn defects() -> Outcome {
    let flipped = residual(&verify_gray_with(S6_POINTS, fd(), SEED, Defect::FlipPsiMinus).unwrap(), "gray.d_psi_minus");
    let scaled = (0..7)
        .map(|k| {
            let def = SphereDeformation::new(ambient_basis(k)).with_psi_plus_dot_scale(2.0);
            let r = verify_linearized(&def, "a", S6_POINTS, fd(), SEED).unwrap();
            residual(&r, "linearized.a.d_omega_dot")
        })
        .fold(f64::INFINITY, f64::min);
    // exact jet with e1∧ω added to ψ̇⁺
    let p = DeformationParams { xi: Vector::basis(2), s: Endo::zero(), phi: omega(), mu: Rational::from_int(1) };
    let mut jet = params_to_jet::<Rational>(&p).unwrap();
    jet.psi_plus_dot = &jet.psi_plus_dot + &Vector::basis(0).to_form().wedge(&omega());
    let corrupted = check_jet_consistency(&jet).omega_wedge;
    Outcome {
        pass: flipped >= DEFECT_MIN && scaled >= DEFECT_MIN && corrupted >= DEFECT_MIN,
        detail: format!(
            "flipped ψ⁻ {flipped:.2e}, doubled ψ̇⁺ (min over e1..e7) {scaled:.2e}, corrupted exact jet {corrupted:.2e}; \
             each >= {DEFECT_MIN:e}"
        ),
    }
}

fn main() -> ExitCode {
    let mut results = Vec::new();
    let mut record = |n: usize, title: &str, f: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let o = f();
        println!(
            "criterion {n} [{}] {title}: {} ({:.1}s)",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail,
            start.elapsed().as_secs_f64()
        );
        results.push((n, o.pass));
    };

    let mut exact = None;
    record(1, "exact algebra suite", &mut || {
        let start = Instant::now();
        let report = algebra_suite(Mode::Exact, TRIALS, SEED).unwrap();
        let outcome = exact_algebra(&report, start.elapsed());
        exact = Some(report);
        outcome
    });
    let exact = exact.unwrap();
    record(2, "float algebra suite", &mut || float_algebra(&algebra_suite(Mode::Float, TRIALS, SEED).unwrap()));
    record(3, "deformation parametrisation", &mut || deformation(&exact));
    record(4, "Gray system on S6", &mut gray);
    record(5, "Laplace spectrum", &mut spectral);
    record(6, "explicit deformations", &mut linearized);
    record(7, "curvature identities", &mut curvature);
    record(8, "defect sensitivity", &mut defects);

    let failed: Vec<usize> = results.iter().filter(|(_, p)| !p).map(|(n, _)| *n).collect();
    if failed.is_empty() {
        println!("acceptance: all {} criteria pass", results.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failed:?}");
        ExitCode::FAILURE
    }
}
