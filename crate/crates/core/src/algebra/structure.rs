//! The standard SU(3) structure on `R^6` and the identifications between
//! 2-forms and endomorphisms it induces.

use super::blade::{Blade, DIM};
use super::form::Form;
use super::linear::{Endo, Vector};
use crate::scalar::Scalar;

/// `ω = e12 + e34 + e56`
pub fn omega<T: Scalar>() -> Form<T> {
    Form::from_int_terms(&[("e12", 1), ("e34", 1), ("e56", 1)])
}

/// `ψ⁺ = e135 − e146 − e236 − e245`
pub fn psi_plus<T: Scalar>() -> Form<T> {
    Form::from_int_terms(&[("e135", 1), ("e146", -1), ("e236", -1), ("e245", -1)])
}

/// `ψ⁻ = e136 + e145 + e235 − e246`
pub fn psi_minus<T: Scalar>() -> Form<T> {
    Form::from_int_terms(&[("e136", 1), ("e145", 1), ("e235", 1), ("e246", -1)])
}

/// `dv = e123456`
pub fn volume<T: Scalar>() -> Form<T> {
    Form::basis(Blade::VOLUME)
}

/// Selects `ψ⁺` or `ψ⁻`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Psi {
    Plus,
    Minus,
}

impl Psi {
    pub fn form<T: Scalar>(self) -> Form<T> {
        match self {
            Psi::Plus => psi_plus(),
            Psi::Minus => psi_minus(),
        }
    }
}

/// The full tuple `(ω, ψ⁺, ψ⁻, J, dv)` in an adapted orthonormal basis.
#[derive(Debug, Clone, PartialEq)]
pub struct StandardStructure<T> {
    pub omega: Form<T>,
    pub psi_plus: Form<T>,
    pub psi_minus: Form<T>,
    pub j: Endo<T>,
    pub volume: Form<T>,
}

impl<T: Scalar> StandardStructure<T> {
    pub fn new() -> Self {
        StandardStructure {
            omega: omega(),
            psi_plus: psi_plus(),
            psi_minus: psi_minus(),
            j: Endo::complex_structure(),
            volume: volume(),
        }
    }
}

impl<T: Scalar> Default for StandardStructure<T> {
    fn default() -> Self {
        Self::new()
    }
}

/// Skew endomorphism `T` with `g(TX, Y) = τ(X, Y)`.
pub fn skew_endo_from_two_form<T: Scalar>(tau: &Form<T>) -> Endo<T> {
    Endo::from_fn(|b, a| two_form_entry(tau, a, b))
}

/// 2-form `τ(X, Y) = g(TX, Y)`; only the skew part of `T` survives.
pub fn two_form_from_endo<T: Scalar>(t: &Endo<T>) -> Form<T> {
    let mut f = Form::zero();
    for a in 0..DIM {
        for b in a + 1..DIM {
            // τ(e_a, e_b) = T[b][a]; the blade coefficient is the skew average
            let c = (t.get(b, a).clone() - t.get(a, b)) / T::from_int(2);
            f.set(Blade::from_indices(&[a, b]).unwrap(), c);
        }
    }
    f
}

/// `τ(e_a, e_b)` read off the blade coefficients.
pub fn two_form_entry<T: Scalar>(tau: &Form<T>, a: usize, b: usize) -> T {
    use std::cmp::Ordering::*;
    match a.cmp(&b) {
        Equal => T::zero(),
        Less => tau.coeff(Blade::from_indices(&[a, b]).unwrap()).clone(),
        Greater => -tau.coeff(Blade::from_indices(&[b, a]).unwrap()).clone(),
    }
}

/// `ψ⁺_ξ`: the skew endomorphism with `g(ψ⁺_ξ X, Y) = ψ⁺(ξ, X, Y)`.
pub fn psi_plus_endo<T: Scalar>(xi: &Vector<T>) -> Endo<T> {
    skew_endo_from_two_form(&psi_plus().interior(xi))
}

/// `φ(X, Y) = g(hJX, Y)`; maps `Sym⁺` onto the `J`-invariant 2-forms.
pub fn sym_plus_to_two_form<T: Scalar>(h: &Endo<T>) -> Form<T> {
    two_form_from_endo(&(h * &Endo::complex_structure()))
}

/// Inverse of [`sym_plus_to_two_form`] on `J`-invariant 2-forms.
pub fn two_form_to_sym_plus<T: Scalar>(phi: &Form<T>) -> Endo<T> {
    // hJ = Φ, Φ the skew endomorphism of φ, so h = −ΦJ
    -&(&skew_endo_from_two_form(phi) * &Endo::complex_structure())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    type Q = Rational;

    #[test]
    fn omega_is_g_of_j() {
        let j = Endo::<Q>::complex_structure();
        let w = omega::<Q>();
        for a in 0..DIM {
            for b in 0..DIM {
                let lhs = w.evaluate(&[Vector::basis(a), Vector::basis(b)]);
                let rhs = j.apply(&Vector::basis(a)).dot(&Vector::basis(b));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn identity_corresponds_to_omega() {
        assert_eq!(sym_plus_to_two_form(&Endo::<Q>::identity()), omega());
        assert_eq!(two_form_to_sym_plus(&omega::<Q>()), Endo::identity());
    }

    #[test]
    fn psi_endo_matches_trilinear_form() {
        let xi = Vector::<Q>::from_fn(|i| Q::from_int([3, -1, 2, 0, 5, -4][i]));
        let p = psi_endo_check(&xi);
        assert!(p);
    }

    fn psi_endo_check(xi: &Vector<Q>) -> bool {
        let t = psi_plus_endo(xi);
        let psi = psi_plus::<Q>();
        (0..DIM).all(|a| {
            (0..DIM).all(|b| {
                let lhs = t.apply(&Vector::basis(a)).dot(&Vector::basis(b));
                let rhs = psi.evaluate(&[xi.clone(), Vector::basis(a), Vector::basis(b)]);
                lhs == rhs
            })
        })
    }
}
