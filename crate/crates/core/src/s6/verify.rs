//! Residual suites over seeded sample points, with convergence orders from
//! the steps h and h/2.

use super::ambient::{basis, random_unit, AmbientForm, AmbientVector};
use super::calculus::{codifferential, covariant_d, divergence, ext_d, laplacian_fn, FiniteDiff};
use super::deform::{xi_from_cross, SphereDeformation};
use super::field::{EndoFieldFn, Field, StructureField, StructureForm};
use super::frame::{form_from_components, structure_at, AdaptedFrame, SpherePoint};
use crate::algebra::form_to_sym_minus_with_tol;
use crate::algebra::{
    alpha_map, endo_act, lambda_contract, omega, project_component, psi_minus, psi_plus, random::seeded,
    two_form_to_sym_plus, type_project, volume, Component, Endo, Form, Vector, DIM,
};
use crate::deformation::{check_jet_consistency, linearized_gray_lhs};
use crate::error::Result;
use crate::report::{Check, VerificationReport};

/// Tolerance on finite-difference residuals of first-order identities.
pub const FD_TOL: f64 = 1e-5;
/// Tolerance on the curvature-identity suite.
pub const CL_TOL: f64 = 1e-4;
/// Relative tolerance for Laplace eigenvalues.
pub const SPECTRAL_TOL: f64 = 1e-4;
/// Tolerance on purely algebraic pointwise checks.
pub const POINTWISE_TOL: f64 = 1e-12;
/// Bound on |δφ| for a field to count as co-closed at a point.
pub const COCLOSED_TOL: f64 = 1e-6;
/// Residuals below this are rounding noise and carry no order information.
pub const ORDER_FLOOR: f64 = 1e-9;
/// Accepted half-width of the observed order around the scheme's order.
pub const ORDER_BAND: f64 = 0.2;
/// Smallest admissible σ_min/σ_max of the deformation probe matrix.
pub const RANK_RATIO_TOL: f64 = 1e-3;

/// Seeded, normalised-Gaussian sample points with their adapted frames.
pub fn sample_frames(samples: usize, seed: u64) -> Result<Vec<AdaptedFrame>> {
    let mut rng = seeded(seed);
    (0..samples).map(|_| AdaptedFrame::at(SpherePoint::new(random_unit(&mut rng))?)).collect()
}

type PointResidual<'a> = Box<dyn Fn(&AdaptedFrame, FiniteDiff) -> Result<(f64, f64)> + 'a>;

/// A residual evaluated at each sample point as `(error, scale)`.
struct Residual<'a> {
    name: String,
    tol: f64,
    /// Aggregate as max error / max scale rather than max error.
    relative: bool,
    /// Whether the residual is a finite-difference truncation error.
    differenced: bool,
    f: PointResidual<'a>,
}

impl<'a> Residual<'a> {
    fn fd(name: impl Into<String>, tol: f64, f: impl Fn(&AdaptedFrame, FiniteDiff) -> Result<f64> + 'a) -> Self {
        Residual {
            name: name.into(),
            tol,
            relative: false,
            differenced: true,
            f: Box::new(move |fr, fd| Ok((f(fr, fd)?, 1.0))),
        }
    }

    fn pointwise(name: impl Into<String>, tol: f64, f: impl Fn(&AdaptedFrame) -> Result<f64> + 'a) -> Self {
        Residual {
            name: name.into(),
            tol,
            relative: false,
            differenced: false,
            f: Box::new(move |fr, _| Ok((f(fr)?, 1.0))),
        }
    }

    /// Finite-difference quantity bounded without an order estimate.
    fn gate(name: impl Into<String>, tol: f64, f: impl Fn(&AdaptedFrame, FiniteDiff) -> Result<f64> + 'a) -> Self {
        Residual {
            name: name.into(),
            tol,
            relative: false,
            differenced: false,
            f: Box::new(move |fr, fd| Ok((f(fr, fd)?, 1.0))),
        }
    }

    fn relative(
        name: impl Into<String>,
        tol: f64,
        f: impl Fn(&AdaptedFrame, FiniteDiff) -> Result<(f64, f64)> + 'a,
    ) -> Self {
        Residual { name: name.into(), tol, relative: true, differenced: true, f: Box::new(f) }
    }

    fn aggregate(&self, frames: &[AdaptedFrame], fd: FiniteDiff) -> Result<f64> {
        let (mut err, mut scale) = (0.0f64, 0.0f64);
        for fr in frames {
            let (e, s) = (self.f)(fr, fd)?;
            err = err.max(e);
            scale = scale.max(s);
        }
        Ok(if self.relative {
            if scale > 0.0 {
                err / scale
            } else {
                err
            }
        } else {
            err
        })
    }

    fn check(&self, frames: &[AdaptedFrame], fd: FiniteDiff) -> Result<Check> {
        let r = self.aggregate(frames, fd)?;
        if !self.differenced {
            return Ok(Check::bounded(self.name.clone(), r, self.tol));
        }
        let order = if r > ORDER_FLOOR {
            let half = self.aggregate(frames, fd.halved())?;
            Some(if half > 0.0 { (r / half).log2() } else { f64::INFINITY })
        } else {
            None
        };
        let expected = if fd.richardson() { 4.0 } else { 2.0 };
        let order_ok = order.is_none_or(|o| (o - expected).abs() <= ORDER_BAND);
        Ok(Check::new(self.name.clone(), r, order.filter(|o| o.is_finite()), r <= self.tol && order_ok))
    }
}

fn run(
    suite: &str,
    residuals: Vec<Residual<'_>>,
    samples: usize,
    fd: FiniteDiff,
    seed: u64,
) -> Result<VerificationReport> {
    let frames = sample_frames(samples, seed)?;
    let checks = residuals.iter().map(|r| r.check(&frames, fd)).collect::<Result<Vec<_>>>()?;
    Ok(VerificationReport::new(suite, fd.h(), samples, seed, checks))
}

/// Deliberate defects demonstrating that the suites can fail.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum Defect {
    #[default]
    None,
    /// Sample −ψ⁻ in place of ψ⁻.
    FlipPsiMinus,
    /// Multiply ψ̇⁺ by the given factor.
    ScalePsiPlusDot(f64),
}

/// `dω = 3ψ⁺`, `dψ⁻ = −2ω∧ω`, `∇_Xω = X⌟ψ⁺`, `∇_Xψ⁺ = −X∧ω`, `d² = 0`, and
/// the pointwise normal form of the structure.
pub fn verify_gray(samples: usize, fd: FiniteDiff, seed: u64) -> Result<VerificationReport> {
    verify_gray_with(samples, fd, seed, Defect::None)
}

pub fn verify_gray_with(samples: usize, fd: FiniteDiff, seed: u64, defect: Defect) -> Result<VerificationReport> {
    let w = StructureField::new(StructureForm::Omega);
    let pp = StructureField::new(StructureForm::PsiPlus);
    let mut pm = StructureField::new(StructureForm::PsiMinus);
    if defect == Defect::FlipPsiMinus {
        pm.sign = -1.0;
    }
    let (w, pp, pm) = (&w, &pp, &pm);
    let residuals = vec![
        Residual::fd("gray.d_omega", FD_TOL, move |fr, fd| {
            Ok(ext_d(w, fr, fd)?.max_abs_diff(&structure_at(fr).psi_plus.scale(&3.0)))
        }),
        Residual::fd("gray.d_psi_minus", FD_TOL, move |fr, fd| {
            let s = structure_at(fr);
            Ok(ext_d(pm, fr, fd)?.max_abs_diff(&s.omega.wedge(&s.omega).scale(&-2.0)))
        }),
        Residual::fd("gray.nabla_omega", FD_TOL, move |fr, fd| {
            let s = structure_at(fr);
            (0..DIM).try_fold(0.0f64, |m, i| {
                let x = Vector::basis(i);
                Ok(m.max(covariant_d(w, &x, fr, fd)?.max_abs_diff(&s.psi_plus.interior(&x))))
            })
        }),
        Residual::fd("gray.nabla_psi_plus", FD_TOL, move |fr, fd| {
            let s = structure_at(fr);
            (0..DIM).try_fold(0.0f64, |m, i| {
                let x = Vector::basis(i);
                Ok(m.max(covariant_d(pp, &x, fr, fd)?.max_abs_diff(&-x.to_form().wedge(&s.omega))))
            })
        }),
        Residual::fd("gray.d_squared_omega", FD_TOL, move |fr, fd| {
            Ok(ext_d(&super::field::d(w, fd), fr, fd)?.max_abs())
        }),
        Residual::pointwise("gray.normal_form", POINTWISE_TOL, move |fr| {
            let s = structure_at(fr);
            let psi_m = pm.eval_form(fr)?;
            Ok(s.j
                .max_abs_diff(&Endo::complex_structure())
                .max(s.omega.max_abs_diff(&omega()))
                .max(s.psi_plus.max_abs_diff(&psi_plus()))
                .max(psi_m.max_abs_diff(&psi_minus())))
        }),
    ];
    run("gray", residuals, samples, fd, seed)
}

fn coordinate_field(i: usize) -> Field<'static> {
    Field::new(0, move |fr| Ok(Form::scalar(fr.point().position()[i])))
}

/// `Δxᵢ = 6xᵢ`, `Δ(x₁x₂) = 14x₁x₂`, `Δ1 = 0` and `∇_X dμ = −μX`.
pub fn verify_spectral(samples: usize, fd: FiniteDiff, seed: u64) -> Result<VerificationReport> {
    let coords: Vec<Field<'static>> = (0..7).map(coordinate_field).collect();
    let coords = &coords;
    let quad = Field::new(0, |fr| {
        let p = fr.point().position();
        Ok(Form::scalar(p[0] * p[1]))
    });
    let quad = &quad;
    let one = Field::new(0, |_| Ok(Form::scalar(1.0)));
    let one = &one;
    let a = AmbientVector::from_fn(|i, _| [0.5, -1.0, 0.25, 2.0, -0.75, 1.5, 1.0][i]);
    let def = SphereDeformation::new(a);
    let d_mu = def.d_mu_field();
    let d_mu = &d_mu;
    let residuals = vec![
        Residual::relative("spectral.linear_eigenvalue_6", SPECTRAL_TOL, move |fr, fd| {
            let p = fr.point().position();
            (0..7).try_fold((0.0f64, 0.0f64), |(e, s), i| {
                let lap = laplacian_fn(&coords[i], fr, fd)?;
                Ok((e.max((lap - 6.0 * p[i]).abs()), s.max((6.0 * p[i]).abs())))
            })
        }),
        Residual::relative("spectral.quadratic_eigenvalue_14", SPECTRAL_TOL, move |fr, fd| {
            let p = fr.point().position();
            let target = 14.0 * p[0] * p[1];
            Ok(((laplacian_fn(quad, fr, fd)? - target).abs(), target.abs()))
        }),
        Residual::fd("spectral.constant", FD_TOL, move |fr, fd| Ok(laplacian_fn(one, fr, fd)?.abs())),
        Residual::fd("spectral.hessian_first_harmonic", FD_TOL, move |fr, fd| {
            let mu = def.mu(fr);
            (0..DIM).try_fold(0.0f64, |m, i| {
                let x = Vector::basis(i);
                let target = x.to_form().scale(&-mu);
                Ok(m.max(covariant_d(d_mu, &x, fr, fd)?.max_abs_diff(&target)))
            })
        }),
    ];
    run("spectral", residuals, samples, fd, seed)
}

/// Residuals of the linearised Gray system and of `d(ξ∧ω²) = −12μ dv` for
/// one deformation; check names are prefixed by `linearized.{label}.`.
pub fn verify_linearized(
    def: &SphereDeformation,
    label: &str,
    samples: usize,
    fd: FiniteDiff,
    seed: u64,
) -> Result<VerificationReport> {
    let fields =
        [def.omega_dot_field(), def.psi_plus_dot_field(), def.psi_minus_dot_field(), def.xi_omega_squared_field()];
    let [w_dot, pp_dot, pm_dot, xi_w2] = &fields;
    let lhs = move |fr: &AdaptedFrame, fd: FiniteDiff| -> Result<(Form<f64>, Form<f64>)> {
        let mut jet = def.jet_at(fr)?;
        jet.psi_plus_dot = super::field::FormField::eval(pp_dot, fr)?;
        Ok(linearized_gray_lhs(&jet, &ext_d(w_dot, fr, fd)?, &ext_d(pm_dot, fr, fd)?))
    };
    let name = |s: &str| format!("linearized.{label}.{s}");
    let residuals = vec![
        Residual::fd(name("d_omega_dot"), FD_TOL, move |fr, fd| Ok(lhs(fr, fd)?.0.max_abs())),
        Residual::fd(name("d_psi_minus_dot"), FD_TOL, move |fr, fd| Ok(lhs(fr, fd)?.1.max_abs())),
        Residual::fd(name("mu_identity"), FD_TOL, move |fr, fd| {
            let target = volume::<f64>().scale(&(-12.0 * def.mu(fr)));
            Ok(ext_d(xi_w2, fr, fd)?.max_abs_diff(&target))
        }),
        Residual::pointwise(name("jet_consistency"), POINTWISE_TOL, move |fr| {
            let jet = def.jet_at(fr)?;
            let fields_agree = super::field::FormField::eval(w_dot, fr)?
                .max_abs_diff(&jet.omega_dot)
                .max(super::field::FormField::eval(pm_dot, fr)?.max_abs_diff(&jet.psi_minus_dot));
            Ok(check_jet_consistency(&jet).max().max(fields_agree).max(jet.g_dot.max_abs()))
        }),
        Residual::pointwise(name("xi_is_p_cross_a"), POINTWISE_TOL, move |fr| {
            Ok((&def.xi(fr) - &xi_from_cross(def.direction(), fr)).max_abs())
        }),
    ];
    run("linearized", residuals, samples, fd, seed)
}

/// Singular values of the matrix whose rows are `(μ, ξ)` of the basis
/// deformations `a = e₁…e₇` sampled at the probe points.
pub fn deformation_probe_singular_values(probes: &[AdaptedFrame]) -> Vec<f64> {
    let cols = probes.len() * (1 + DIM);
    let m = nalgebra::DMatrix::from_fn(7, cols, |k, c| {
        let def = SphereDeformation::new(basis(k));
        let fr = &probes[c / (1 + DIM)];
        match c % (1 + DIM) {
            0 => def.mu(fr),
            i => *def.xi(fr).get(i - 1),
        }
    });
    let mut sv: Vec<f64> = m.singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    sv
}

/// Linearised system for all seven basis deformations plus their rank.
pub fn verify_linearized_basis(samples: usize, fd: FiniteDiff, seed: u64) -> Result<VerificationReport> {
    let mut reports = Vec::new();
    for k in 0..7 {
        let def = SphereDeformation::new(basis(k));
        reports.push(verify_linearized(&def, &format!("e{}", k + 1), samples, fd, seed)?);
    }
    let probes = sample_frames(4, seed ^ 0x5eed)?;
    let sv = deformation_probe_singular_values(&probes);
    let ratio = sv[sv.len() - 1] / sv[0];
    // the "residual" here is σ_min/σ_max, which must stay *above* the bound
    let rank = Check::new("linearized.rank.min_singular_ratio", ratio, None, ratio >= RANK_RATIO_TOL);
    reports.push(VerificationReport::new("rank", fd.h(), samples, seed, vec![rank]));
    Ok(VerificationReport::merge("linearized", reports))
}

/// Test fields of the curvature identities: a `J`-invariant 2-form φ and a
/// section S of Sym⁻, both from seeded constant ambient forms.
pub struct ClFields {
    beta: AmbientForm,
    gamma: AmbientForm,
    /// Ambient 2-forms with linear coefficients `Σ_l x_l B_l`, whose primitive
    /// (1,1) parts are combined into fields co-closed at a given point.
    linear: Vec<Vec<AmbientForm>>,
}

/// Number of linear-coefficient primitive (1,1) fields: one base plus one
/// per component of δφ.
const LINEAR_FIELDS: usize = 1 + DIM;

impl ClFields {
    pub fn new(seed: u64) -> Self {
        let mut rng = seeded(seed ^ 0xc1);
        let beta = AmbientForm::random(&mut rng, 2);
        let gamma = AmbientForm::random(&mut rng, 3);
        let linear = (0..LINEAR_FIELDS).map(|_| (0..7).map(|_| AmbientForm::random(&mut rng, 2)).collect()).collect();
        ClFields { beta, gamma, linear }
    }

    pub fn zero() -> Self {
        let z = || AmbientForm::from_coefficients(2, &[0.0; 21]);
        ClFields {
            beta: z(),
            gamma: AmbientForm::from_coefficients(3, &[0.0; 35]),
            linear: (0..LINEAR_FIELDS).map(|_| (0..7).map(|_| z()).collect()).collect(),
        }
    }

    /// Primitive (1,1) part of the restriction of the k-th linear-coefficient 2-form.
    fn linear_field(&self, k: usize, fr: &AdaptedFrame) -> Result<Form<f64>> {
        let x = fr.point().position();
        let mut restricted = Form::zero();
        for (l, b) in self.linear[k].iter().enumerate() {
            restricted.add_scaled(&x[l], &Self::restrict(b, fr));
        }
        let p = type_project(&restricted, 1, 1)?;
        let c = p.inner(&omega()) / 3.0;
        let mut out = p;
        out.add_scaled(&-c, &omega());
        Ok(out)
    }

    /// A primitive (1,1) field `φ = φ₀ − Σ cₖ φₖ` whose codifferential
    /// (Richardson-extrapolated) vanishes at the point of `frame`.
    pub fn coclosed_at<'a>(&'a self, frame: &AdaptedFrame, fd: FiniteDiff) -> Result<Field<'a>> {
        let fd = fd.with_richardson(true);
        let deltas = (0..LINEAR_FIELDS)
            .map(|k| {
                let f = Field::new(2, move |fr| self.linear_field(k, fr));
                Ok(Vector::from_form(&codifferential(&f, frame, fd)?))
            })
            .collect::<Result<Vec<_>>>()?;
        let m = nalgebra::SMatrix::<f64, DIM, DIM>::from_fn(|i, k| *deltas[k + 1].get(i));
        let rhs = nalgebra::SVector::<f64, DIM>::from_fn(|i, _| *deltas[0].get(i));
        let c = m.lu().solve(&rhs).unwrap_or_else(nalgebra::SVector::zeros);
        let combine = move |fr: &AdaptedFrame| -> Result<Form<f64>> {
            let mut out = self.linear_field(0, fr)?;
            for k in 0..DIM {
                out.add_scaled(&-c[k], &self.linear_field(k + 1, fr)?);
            }
            Ok(out)
        };
        // the identities are homogeneous in φ; normalise to unit size at the point
        let size = combine(frame)?.max_abs();
        let scale = if size > 0.0 { 1.0 / size } else { 0.0 };
        Ok(Field::new(2, move |fr| Ok(combine(fr)?.scale(&scale))))
    }

    fn restrict(form: &AmbientForm, fr: &AdaptedFrame) -> Form<f64> {
        form_from_components(form.degree(), |ix| {
            let v: Vec<AmbientVector> = ix.iter().map(|&i| *fr.vector(i)).collect();
            form.eval(&v)
        })
    }

    /// φ = (1,1)-part of β|
    pub fn phi(&self, fr: &AdaptedFrame) -> Result<Form<f64>> {
        type_project(&Self::restrict(&self.beta, fr), 1, 1)
    }

    /// S with S⋆ψ⁺ the primitive (2,1)+(1,2) part of γ|
    pub fn s(&self, fr: &AdaptedFrame) -> Result<Endo<f64>> {
        let u = project_component(&Self::restrict(&self.gamma, fr), Component::PrimitiveTwoOne)?;
        form_to_sym_minus_with_tol(&u, 1e-9 * u.max_abs().max(1.0))
    }
}

/// The five curvature identities for `(1,1)`-forms φ and sections S of Sym⁻:
/// `Λdφ = δh + 2dλ`, `δh = −Jδφ`, `δ(S⋆ψ⁺) = −Λd(S⋆ψ⁻) − 2δS⌟ψ⁺`,
/// `αΛd(S⋆ψ⁻) = −2δS`, `Λδ(S⋆ψ⁺) = 0`.
pub fn verify_cl_identities(samples: usize, fd: FiniteDiff, seed: u64) -> Result<VerificationReport> {
    verify_cl_identities_for(&ClFields::new(seed), samples, fd, seed)
}

pub fn verify_cl_identities_for(
    fields: &ClFields,
    samples: usize,
    fd: FiniteDiff,
    seed: u64,
) -> Result<VerificationReport> {
    let phi = Field::new(2, move |fr| fields.phi(fr));
    let lambda = Field::new(0, move |fr| Ok(Form::scalar(two_form_to_sym_plus(&fields.phi(fr)?).trace() / 4.0)));
    let h = EndoFieldFn::new(move |fr| Ok(two_form_to_sym_plus(&fields.phi(fr)?)));
    let s = EndoFieldFn::new(move |fr| fields.s(fr));
    let s_psi_plus = Field::new(3, move |fr| Ok(endo_act(&fields.s(fr)?, &structure_at(fr).psi_plus)));
    let s_psi_minus = Field::new(3, move |fr| Ok(endo_act(&fields.s(fr)?, &structure_at(fr).psi_minus)));
    let (phi, lambda, h, s, spp, spm) = (&phi, &lambda, &h, &s, &s_psi_plus, &s_psi_minus);

    let residuals = vec![
        Residual::fd("cl.lambda_d_phi", CL_TOL, move |fr, fd| {
            let lhs = lambda_contract(&ext_d(phi, fr, fd)?);
            let rhs = &divergence(h, fr, fd)?.to_form() + &ext_d(lambda, fr, fd)?.scale(&2.0);
            Ok(lhs.max_abs_diff(&rhs))
        }),
        Residual::fd("cl.delta_h", CL_TOL, move |fr, fd| {
            let delta_phi = Vector::from_form(&codifferential(phi, fr, fd)?);
            let j = structure_at(fr).j;
            Ok((&divergence(h, fr, fd)? + &j.apply(&delta_phi)).max_abs())
        }),
        Residual::fd("cl.delta_s_psi_plus", CL_TOL, move |fr, fd| {
            let lhs = codifferential(spp, fr, fd)?;
            let mut rhs = -lambda_contract(&ext_d(spm, fr, fd)?);
            rhs.add_scaled(&-2.0, &structure_at(fr).psi_plus.interior(&divergence(s, fr, fd)?));
            Ok(lhs.max_abs_diff(&rhs))
        }),
        Residual::fd("cl.alpha_lambda_d_s_psi_minus", CL_TOL, move |fr, fd| {
            let lhs = alpha_map(&lambda_contract(&ext_d(spm, fr, fd)?))?;
            Ok((&lhs + &divergence(s, fr, fd)?.scale(&2.0)).max_abs())
        }),
        Residual::fd("cl.lambda_delta_s_psi_plus", CL_TOL, move |fr, fd| {
            Ok(lambda_contract(&codifferential(spp, fr, fd)?).max_abs())
        }),
        Residual::gate("cl.coclosed.delta_phi", COCLOSED_TOL, move |fr, fd| {
            let phi = fields.coclosed_at(fr, fd)?;
            Ok(codifferential(&phi, fr, fd.halved().with_richardson(true))?.max_abs())
        }),
        Residual::fd("cl.coclosed.d_phi_wedge_psi_plus", CL_TOL, move |fr, fd| {
            let d_phi = ext_d(&fields.coclosed_at(fr, fd)?, fr, fd)?;
            Ok(d_phi.wedge(&structure_at(fr).psi_plus).max_abs())
        }),
        Residual::fd("cl.coclosed.d_phi_wedge_psi_minus", CL_TOL, move |fr, fd| {
            let d_phi = ext_d(&fields.coclosed_at(fr, fd)?, fr, fd)?;
            Ok(d_phi.wedge(&structure_at(fr).psi_minus).max_abs())
        }),
        Residual::fd("cl.coclosed.d_phi_pairing", CL_TOL, move |fr, fd| {
            let d_phi = ext_d(&fields.coclosed_at(fr, fd)?, fr, fd)?;
            let w = structure_at(fr).omega;
            Ok((0..DIM).map(|i| d_phi.inner(&Vector::basis(i).to_form().wedge(&w)).abs()).fold(0.0, f64::max))
        }),
    ];
    run("cl", residuals, samples, fd, seed)
}
