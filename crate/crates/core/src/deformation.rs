//! Pointwise parametrisation of infinitesimal SU(3) deformations.
//!
//! A first-order variation `(ġ, J̇, ω̇, ψ̇⁺, ψ̇⁻)` of an SU(3) structure is
//! determined by `(ξ, S, φ, μ)` with `ξ ∈ V`, `S ∈ Sym⁻`, `φ` a `J`-invariant
//! 2-form and `μ ∈ R`:
//!
//! ```text
//! J̇  = JS + ψ⁺_ξ
//! ġ  = g((h + S)·, ·)            φ(·,·) = g(hJ·, ·),  λ = ¼ tr h
//! ω̇  = φ + ξ ⌟ ψ⁺
//! ψ̇⁺ = −ξ ∧ ω + λψ⁺ + μψ⁻ − ½ S⋆ψ⁺
//! ψ̇⁻ = −Jξ ∧ ω − μψ⁺ + λψ⁻ − ½ S⋆ψ⁻
//! ```

use crate::algebra::{
    alpha_map, decompose_anti_endo_with_tol, endo_act, lambda_contract, omega, psi_minus, psi_plus, psi_plus_endo,
    scaled_tol, sym_minus_to_form, two_form_entry, two_form_from_endo, two_form_to_sym_plus, type_project, Endo, Form,
    Psi, Vector, DIM,
};
use crate::error::{Error, Result};
use crate::scalar::{Mode, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub struct DeformationParams<T> {
    pub xi: Vector<T>,
    pub s: Endo<T>,
    pub phi: Form<T>,
    pub mu: T,
}

impl<T: Scalar> DeformationParams<T> {
    pub fn zero() -> Self {
        DeformationParams { xi: Vector::zero(), s: Endo::zero(), phi: Form::zero(), mu: T::zero() }
    }

    /// `h ∈ Sym⁺` with `φ(·,·) = g(hJ·, ·)`; always derived from `φ`.
    pub fn h(&self) -> Endo<T> {
        two_form_to_sym_plus(&self.phi)
    }

    /// `λ = ¼ tr h`
    pub fn lambda(&self) -> T {
        self.h().trace() / T::from_int(4)
    }

    pub fn validate(&self) -> Result<()> {
        let tol = scaled_tol(self.s.max_abs().max(self.phi.max_abs()));
        if !self.s.is_sym_minus(tol) {
            return Err(Error::NotInDomain {
                what: "S is not symmetric and J-anti-commuting",
                residual: self.s.symmetry_defect().max(self.s.j_anticommutator_defect()),
            });
        }
        self.phi.require_degree(2)?;
        let invariant = type_project(&self.phi, 1, 1)?;
        if !invariant.approx_eq(&self.phi, tol) {
            return Err(Error::NotInDomain {
                what: "φ is not J-invariant",
                residual: invariant.max_abs_diff(&self.phi),
            });
        }
        Ok(())
    }

    /// Coefficient-wise linear combination, used for superposition checks.
    pub fn combine(&self, a: &T, other: &Self, b: &T) -> Self {
        let mut phi = self.phi.scale(a);
        phi.add_scaled(b, &other.phi);
        DeformationParams {
            xi: &self.xi.scale(a) + &other.xi.scale(b),
            s: &self.s.scale(a) + &other.s.scale(b),
            phi,
            mu: self.mu.clone() * a + &(other.mu.clone() * b),
        }
    }
}

/// First-order jet `(ġ, J̇, ω̇, ψ̇⁺, ψ̇⁻)`; `ġ` is stored as the symmetric
/// endomorphism `ḟ` with `ġ = g(ḟ·, ·)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Su3Jet<T> {
    pub g_dot: Endo<T>,
    pub j_dot: Endo<T>,
    pub omega_dot: Form<T>,
    pub psi_plus_dot: Form<T>,
    pub psi_minus_dot: Form<T>,
}

impl<T: Scalar> Su3Jet<T> {
    pub fn zero() -> Self {
        Su3Jet {
            g_dot: Endo::zero(),
            j_dot: Endo::zero(),
            omega_dot: Form::zero(),
            psi_plus_dot: Form::zero(),
            psi_minus_dot: Form::zero(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        [
            self.g_dot.max_abs(),
            self.j_dot.max_abs(),
            self.omega_dot.max_abs(),
            self.psi_plus_dot.max_abs(),
            self.psi_minus_dot.max_abs(),
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        [
            self.g_dot.max_abs_diff(&other.g_dot),
            self.j_dot.max_abs_diff(&other.j_dot),
            self.omega_dot.max_abs_diff(&other.omega_dot),
            self.psi_plus_dot.max_abs_diff(&other.psi_plus_dot),
            self.psi_minus_dot.max_abs_diff(&other.psi_minus_dot),
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

pub fn params_to_jet<T: Scalar>(p: &DeformationParams<T>) -> Result<Su3Jet<T>> {
    p.validate()?;
    let j = Endo::complex_structure();
    let h = p.h();
    let lambda = h.trace() / T::from_int(4);
    let half = T::ratio(1, 2);
    let w = omega::<T>();

    let j_dot = &(&j * &p.s) + &psi_plus_endo(&p.xi);
    let g_dot = &h + &p.s;
    let omega_dot = &p.phi + &psi_plus::<T>().interior(&p.xi);

    let mut psi_plus_dot = -p.xi.to_form().wedge(&w);
    psi_plus_dot.add_scaled(&lambda, &psi_plus());
    psi_plus_dot.add_scaled(&p.mu, &psi_minus());
    psi_plus_dot.add_scaled(&-half.clone(), &sym_minus_to_form(&p.s, Psi::Plus));

    let mut psi_minus_dot = -p.xi.j().to_form().wedge(&w);
    psi_minus_dot.add_scaled(&-p.mu.clone(), &psi_plus());
    psi_minus_dot.add_scaled(&lambda, &psi_minus());
    psi_minus_dot.add_scaled(&-half, &sym_minus_to_form(&p.s, Psi::Minus));

    Ok(Su3Jet { g_dot, j_dot, omega_dot, psi_plus_dot, psi_minus_dot })
}

/// Residual magnitudes of the linearised SU(3) constraints on a jet.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct JetResiduals {
    /// `ψ̇⁺ ∧ ω + ψ⁺ ∧ ω̇`
    pub omega_wedge: f64,
    /// `⟨ḟ⋆ψ⁺, ψ⁺⟩ + 2⟨ψ̇⁺, ψ⁺⟩`, the derivative of `|ψ⁺|²_{g_t} = 4`
    pub norm: f64,
    /// `J̇J + JJ̇`
    pub j_anticommute: f64,
    /// `ḟ − ḟᵀ`
    pub g_symmetry: f64,
    /// `Λψ̇⁺ + α(ω̇)`
    pub rr_coherence: f64,
    /// derivative of `ψ⁺(JX, Y, Z) = ψ⁺(X, JY, Z)`
    pub type_condition: f64,
    /// derivative of `ω = g(J·, ·)`
    pub omega_compat: f64,
    /// derivative of `J⋆ψ⁺ = 3ψ⁻`
    pub psi_minus_compat: f64,
}

impl JetResiduals {
    pub fn named(&self) -> [(&'static str, f64); 8] {
        [
            ("omega_wedge", self.omega_wedge),
            ("norm", self.norm),
            ("j_anticommute", self.j_anticommute),
            ("g_symmetry", self.g_symmetry),
            ("rr_coherence", self.rr_coherence),
            ("type_condition", self.type_condition),
            ("omega_compat", self.omega_compat),
            ("psi_minus_compat", self.psi_minus_compat),
        ]
    }

    pub fn max(&self) -> f64 {
        self.named().iter().map(|(_, r)| *r).fold(0.0, f64::max)
    }
}

pub fn check_jet_consistency<T: Scalar>(jet: &Su3Jet<T>) -> JetResiduals {
    let j = Endo::<T>::complex_structure();
    let w = omega::<T>();
    let pp = psi_plus::<T>();

    let omega_wedge = (&jet.psi_plus_dot.wedge(&w) + &pp.wedge(&jet.omega_dot)).max_abs();

    let norm =
        (endo_act(&jet.g_dot, &pp).inner(&pp) + &(jet.psi_plus_dot.inner(&pp) * &T::from_int(2))).abs().to_f64_lossy();

    let j_anticommute = jet.j_dot.j_anticommutator_defect();
    let g_symmetry = jet.g_dot.symmetry_defect();

    let rr_coherence = match jet.omega_dot.require_degree(2) {
        Ok(()) => {
            let alpha = alpha_map(&jet.omega_dot).expect("degree checked").to_form();
            (&lambda_contract(&jet.psi_plus_dot) + &alpha).max_abs()
        }
        Err(_) => f64::INFINITY,
    };

    // F_a = Je_a ⌟ ψ̇⁺ + J̇e_a ⌟ ψ⁺; the condition is F_a(e_b, e_c) = −F_b(e_a, e_c)
    let slots: Vec<Form<T>> =
        (0..DIM).map(|a| &jet.psi_plus_dot.interior(&j.column(a)) + &pp.interior(&jet.j_dot.column(a))).collect();
    let mut type_condition = 0.0f64;
    for a in 0..DIM {
        for b in 0..DIM {
            for c in 0..DIM {
                let v = two_form_entry(&slots[a], b, c) + &two_form_entry(&slots[b], a, c);
                type_condition = type_condition.max(v.abs().to_f64_lossy());
            }
        }
    }

    let m = &(&jet.g_dot * &j) + &jet.j_dot;
    let omega_compat = m.skew_defect().max(two_form_from_endo(&m).max_abs_diff(&jet.omega_dot));

    let psi_minus_compat = (&(&endo_act(&jet.j_dot, &pp) + &endo_act(&j, &jet.psi_plus_dot))
        - &jet.psi_minus_dot.scale(&T::from_int(3)))
        .max_abs();

    JetResiduals {
        omega_wedge,
        norm,
        j_anticommute,
        g_symmetry,
        rr_coherence,
        type_condition,
        omega_compat,
        psi_minus_compat,
    }
}

fn accepts<T: Scalar>(residual: f64, tol: f64) -> bool {
    match T::MODE {
        Mode::Exact => residual == 0.0,
        Mode::Float => residual <= tol,
    }
}

/// Recovers `(ξ, S, φ, μ)` from a jet, failing with a diagnostic if the jet
/// violates any linearised constraint or is not of the parametrised form.
pub fn jet_to_params<T: Scalar>(jet: &Su3Jet<T>) -> Result<DeformationParams<T>> {
    let tol = 16.0 * scaled_tol(jet.max_abs());
    for deg in [(&jet.omega_dot, 2), (&jet.psi_plus_dot, 3), (&jet.psi_minus_dot, 3)] {
        deg.0.require_degree(deg.1)?;
    }
    let residuals = check_jet_consistency(jet);
    let broken: Vec<String> =
        residuals.named().iter().filter(|(_, r)| !accepts::<T>(*r, tol)).map(|(n, r)| format!("{n} = {r:e}")).collect();
    if !broken.is_empty() {
        return Err(Error::InconsistentJet(broken.join(", ")));
    }

    let (js, xi) = decompose_anti_endo_with_tol(&jet.j_dot, tol)?;
    // J̇ = JS + ψ⁺_ξ, so the symmetric part is JS and S = −J·(JS)
    let s = -&(&Endo::complex_structure() * &js);
    let half = T::ratio(1, 2);
    let xi_lambda = Vector::from_form(&lambda_contract(&jet.psi_plus_dot)).scale(&-half.clone());
    let xi_alpha = alpha_map(&jet.omega_dot)?.scale(&half);
    let spread = (&xi_lambda - &xi).max_abs().max((&xi_alpha - &xi).max_abs());
    if !accepts::<T>(spread, tol) {
        return Err(Error::InconsistentJet(format!("ξ extractions disagree: −½Λψ̇⁺, ½α(ω̇) and J̇ differ by {spread:e}")));
    }
    let mu = jet.psi_plus_dot.inner(&psi_minus()) / T::from_int(4);
    let phi = type_project(&jet.omega_dot, 1, 1)?;
    let params = DeformationParams { xi, s, phi, mu };

    let rebuilt = params_to_jet(&params)?;
    let diff = rebuilt.max_abs_diff(jet);
    if !accepts::<T>(diff, tol) {
        return Err(Error::InconsistentJet(format!(
            "jet is not generated by any (ξ, S, φ, μ): reconstruction differs by {diff:e}"
        )));
    }
    Ok(params)
}

/// `(dω̇ − 3ψ̇⁺, dψ̇⁻ + 4ω̇ ∧ ω)` for caller-supplied exterior derivatives.
pub fn linearized_gray_lhs<T: Scalar>(
    jet: &Su3Jet<T>,
    d_omega_dot: &Form<T>,
    d_psi_minus_dot: &Form<T>,
) -> (Form<T>, Form<T>) {
    let first = d_omega_dot - &jet.psi_plus_dot.scale(&T::from_int(3));
    let second = d_psi_minus_dot + &jet.omega_dot.wedge(&omega()).scale(&T::from_int(4));
    (first, second)
}

/// Velocity at `t = 0` of the curve `exp(tA)^*(g, J, ω, ψ⁺, ψ⁻)` for any
/// `A ∈ gl(6)`; such jets are infinitesimal SU(3) deformations by
/// construction, independently of the `(ξ, S, φ, μ)` formulas.
pub fn orbit_jet<T: Scalar>(a: &Endo<T>) -> Su3Jet<T> {
    // u ↦ Σ_k (row k of A) ∧ (e_k ⌟ u), the derivation induced by A
    let derive = |u: &Form<T>| {
        let mut out = Form::zero();
        for k in 0..DIM {
            let row = Vector::from_fn(|i| a.get(k, i).clone()).to_form();
            out = &out + &row.wedge(&u.interior_basis(k));
        }
        out
    };
    let j = Endo::<T>::complex_structure();
    Su3Jet {
        g_dot: a + &a.transpose(),
        j_dot: &(&j * a) - &(a * &j),
        omega_dot: derive(&omega()),
        psi_plus_dot: derive(&psi_plus()),
        psi_minus_dot: derive(&psi_minus()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{random, sym_minus_to_form};
    use crate::scalar::Rational;

    type Q = Rational;

    fn q(n: i64) -> Q {
        Q::from_int(n)
    }

    #[test]
    fn scaling_curve_matches_omega_direction() {
        // g_t = (1+t)g, ω_t = (1+t)ω, ψ±_t = (1+t)^{3/2}ψ±: derivatives at 0
        let p = DeformationParams { phi: omega::<Q>(), ..DeformationParams::zero() };
        let jet = params_to_jet(&p).unwrap();
        assert_eq!(jet.omega_dot, omega());
        assert_eq!(jet.psi_plus_dot, psi_plus::<Q>().scale(&Q::ratio(3, 2)));
        assert_eq!(jet.psi_minus_dot, psi_minus::<Q>().scale(&Q::ratio(3, 2)));
        assert_eq!(jet.g_dot, Endo::identity());
        assert!(jet.j_dot.is_zero());
    }

    #[test]
    fn pure_s_direction() {
        let mut rng = random::seeded(11);
        let s: Endo<Q> = random::sym_minus(&mut rng);
        let p = DeformationParams { s: s.clone(), ..DeformationParams::zero() };
        let jet = params_to_jet(&p).unwrap();
        assert_eq!(jet.psi_plus_dot, sym_minus_to_form(&s, Psi::Plus).scale(&Q::ratio(-1, 2)));
        assert_eq!(jet_to_params(&jet).unwrap().s, s);
    }

    #[test]
    fn phase_rotation() {
        let p = DeformationParams { mu: q(1), ..DeformationParams::zero() };
        let jet = params_to_jet(&p).unwrap();
        assert_eq!(jet.psi_plus_dot, psi_minus());
        assert_eq!(jet.psi_minus_dot, -psi_plus::<Q>());
        assert!(jet.omega_dot.is_zero());
    }

    #[test]
    fn xi_direction_extractions_agree() {
        let xi = Vector::<Q>::from_fn(|i| q([2, 0, -1, 4, 3, -5][i]));
        let p = DeformationParams { xi: xi.clone(), ..DeformationParams::zero() };
        let jet = params_to_jet(&p).unwrap();
        let lam = Vector::from_form(&lambda_contract(&jet.psi_plus_dot));
        assert_eq!(lam, xi.scale(&q(-2)));
        assert_eq!(alpha_map(&jet.omega_dot).unwrap(), xi.scale(&q(2)));
    }

    #[test]
    fn zero_jet_gives_zero_params() {
        assert_eq!(jet_to_params(&Su3Jet::<Q>::zero()).unwrap(), DeformationParams::zero());
    }

    #[test]
    fn injected_defect_breaks_omega_wedge_constraint() {
        let mut rng = random::seeded(12);
        let p = DeformationParams::<Q> {
            xi: random::vector(&mut rng),
            s: random::sym_minus(&mut rng),
            phi: random::one_one_form(&mut rng),
            mu: random::scalar(&mut rng),
        };
        let mut jet = params_to_jet(&p).unwrap();
        assert_eq!(check_jet_consistency(&jet).max(), 0.0);
        jet.psi_plus_dot = &jet.psi_plus_dot + &Form::from_int_terms(&[("e1", 1)]).wedge(&omega());
        assert!(check_jet_consistency(&jet).omega_wedge > 0.0);
        assert!(matches!(jet_to_params(&jet), Err(Error::InconsistentJet(_))));
    }

    #[test]
    fn invalid_params_are_rejected() {
        let p = DeformationParams { s: Endo::<Q>::identity(), ..DeformationParams::zero() };
        assert!(params_to_jet(&p).is_err());
        let p = DeformationParams { phi: psi_plus::<Q>().interior(&Vector::basis(0)), ..DeformationParams::zero() };
        assert!(params_to_jet(&p).is_err());
    }

    #[test]
    fn linearized_gray_lhs_of_zero_jet() {
        let (a, b) = linearized_gray_lhs(&Su3Jet::<Q>::zero(), &Form::zero(), &Form::zero());
        assert!(a.is_zero() && b.is_zero());
    }

    #[test]
    fn linearized_gray_lhs_detects_scaled_psi_plus_dot() {
        let mut rng = random::seeded(13);
        let p = DeformationParams { xi: random::vector(&mut rng), mu: q(2), ..DeformationParams::zero() };
        let mut jet = params_to_jet(&p).unwrap();
        let correct = jet.psi_plus_dot.scale(&q(3));
        jet.psi_plus_dot = jet.psi_plus_dot.scale(&q(2));
        let (first, _) = linearized_gray_lhs(&jet, &correct, &Form::zero());
        // dω̇ − 3·(2ψ̇⁺) = −3ψ̇⁺ for the original ψ̇⁺
        assert_eq!(first, correct.scale(&q(-1)));
        assert!(!first.is_zero());
    }

    /// Derivative at t = 0 of the pullback of the standard structure by exp(tA).
    #[test]
    fn general_linear_orbit_jets_are_parametrised() {
        let mut rng = random::seeded(14);
        for _ in 0..20 {
            let a: Endo<Q> = random::endo(&mut rng);
            let jet = orbit_jet(&a);
            assert_eq!(check_jet_consistency(&jet).max(), 0.0);
            let p = jet_to_params(&jet).unwrap();
            assert_eq!(params_to_jet(&p).unwrap(), jet);
        }
    }
}
