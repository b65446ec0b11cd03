//! The explicit infinitesimal Gray deformations of S⁶ generated by first
//! spherical harmonics `μ = ⟨a, ·⟩|_{S⁶}`.

use super::ambient::AmbientVector;
use super::field::Field;
use super::frame::{structure_at, AdaptedFrame};
use crate::algebra::{Form, Vector};
use crate::deformation::{params_to_jet, DeformationParams, Su3Jet};
use crate::error::Result;

/// Fields `(μ, ξ, ω̇, ψ̇⁺, ψ̇⁻)` with `ξ = Jdμ`, `ω̇ = ξ⌟ψ⁺`,
/// `ψ̇⁺ = −ξ∧ω + μψ⁻`, `ψ̇⁻ = −Jξ∧ω − μψ⁺`; ġ = 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphereDeformation {
    a: AmbientVector,
    /// Multiplies ψ̇⁺; anything but 1 is a deliberate defect.
    psi_plus_dot_scale: f64,
}

impl SphereDeformation {
    pub fn new(a: AmbientVector) -> Self {
        SphereDeformation { a, psi_plus_dot_scale: 1.0 }
    }

    pub fn with_psi_plus_dot_scale(self, c: f64) -> Self {
        SphereDeformation { psi_plus_dot_scale: c, ..self }
    }

    pub fn direction(&self) -> &AmbientVector {
        &self.a
    }

    pub fn scaled(&self, c: f64) -> Self {
        SphereDeformation { a: self.a * c, ..*self }
    }

    pub fn mu(&self, frame: &AdaptedFrame) -> f64 {
        self.a.dot(frame.point().position())
    }

    /// `dμ`, the tangential part of `a`.
    pub fn d_mu(&self, frame: &AdaptedFrame) -> Vector<f64> {
        Vector::new(frame.components(&self.a))
    }

    pub fn xi(&self, frame: &AdaptedFrame) -> Vector<f64> {
        structure_at(frame).j.apply(&self.d_mu(frame))
    }

    pub fn params_at(&self, frame: &AdaptedFrame) -> DeformationParams<f64> {
        DeformationParams { xi: self.xi(frame), mu: self.mu(frame), ..DeformationParams::zero() }
    }

    /// The jet at a point, via the pointwise parametrisation.
    pub fn jet_at(&self, frame: &AdaptedFrame) -> Result<Su3Jet<f64>> {
        params_to_jet(&self.params_at(frame))
    }

    pub fn mu_field(&self) -> Field<'static> {
        let me = *self;
        Field::new(0, move |fr| Ok(Form::scalar(me.mu(fr))))
    }

    pub fn xi_field(&self) -> Field<'static> {
        let me = *self;
        Field::new(1, move |fr| Ok(me.xi(fr).to_form()))
    }

    pub fn d_mu_field(&self) -> Field<'static> {
        let me = *self;
        Field::new(1, move |fr| Ok(me.d_mu(fr).to_form()))
    }

    pub fn omega_dot_field(&self) -> Field<'static> {
        let me = *self;
        Field::new(2, move |fr| Ok(structure_at(fr).psi_plus.interior(&me.xi(fr))))
    }

    pub fn psi_plus_dot_field(&self) -> Field<'static> {
        let me = *self;
        Field::new(3, move |fr| {
            let s = structure_at(fr);
            let mut out = -me.xi(fr).to_form().wedge(&s.omega);
            out.add_scaled(&me.mu(fr), &s.psi_minus);
            Ok(out.scale(&me.psi_plus_dot_scale))
        })
    }

    pub fn psi_minus_dot_field(&self) -> Field<'static> {
        let me = *self;
        Field::new(3, move |fr| {
            let s = structure_at(fr);
            let j_xi = s.j.apply(&me.xi(fr));
            let mut out = -j_xi.to_form().wedge(&s.omega);
            out.add_scaled(&-me.mu(fr), &s.psi_plus);
            Ok(out)
        })
    }

    /// `ξ ∧ ω²`
    pub fn xi_omega_squared_field(&self) -> Field<'static> {
        let me = *self;
        Field::new(5, move |fr| {
            let w = structure_at(fr).omega;
            Ok(me.xi(fr).to_form().wedge(&w.wedge(&w)))
        })
    }
}

/// `ξ = Jdμ` written directly in ambient terms: `p × a` projected to the frame.
pub fn xi_from_cross(a: &AmbientVector, frame: &AdaptedFrame) -> Vector<f64> {
    let pa = super::ambient::cross(frame.point().position(), a);
    Vector::from_fn(|i| frame.vector(i).dot(&pa))
}
