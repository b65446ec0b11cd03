//! Decompositions of 2-forms, 3-forms and `J`-anti-commuting endomorphisms
//! into their SU(3)-irreducible parts, and the isomorphism
//! `Sym⁻ ≅ Λ^{(2,1)+(1,2)}_0` given by `S ↦ S⋆ψ⁺`.

use std::sync::OnceLock;

use num_traits::Zero;

use super::blade::{Blade, DIM};
use super::form::Form;
use super::linear::{Endo, Vector};
use super::operators::{endo_act, lambda_contract};
use super::structure::{omega, psi_minus, psi_plus, psi_plus_endo, two_form_from_endo, Psi};
use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

/// Absolute tolerance for float-mode membership checks on unit-scale input.
pub const FLOAT_TOL: f64 = 1e-12;

/// Float tolerance scaled to the magnitude of the input.
pub(crate) fn scaled_tol(scale: f64) -> f64 {
    FLOAT_TOL * scale.max(1.0)
}

/// Metric adjoint of `X ↦ X ⌟ ψ⁺`: `⟨α(τ), X⟩ = ⟨τ, X ⌟ ψ⁺⟩`.
pub fn alpha_map<T: Scalar>(a: &Form<T>) -> Result<Vector<T>> {
    a.require_degree(2)?;
    let psi = psi_plus::<T>();
    Ok(Vector::from_fn(|i| a.inner(&psi.interior_basis(i))))
}

/// `a = φ₀ + c·ω + ξ ⌟ ψ⁺` with `φ₀` primitive of type (1,1).
#[derive(Debug, Clone, PartialEq)]
pub struct TwoFormParts<T> {
    pub phi0: Form<T>,
    pub c: T,
    pub xi: Vector<T>,
}

impl<T: Scalar> TwoFormParts<T> {
    pub fn recompose(&self) -> Form<T> {
        let mut f = self.phi0.clone();
        f.add_scaled(&self.c, &omega());
        &f + &psi_plus::<T>().interior(&self.xi)
    }
}

pub fn decompose_two_form<T: Scalar>(a: &Form<T>) -> Result<TwoFormParts<T>> {
    let xi = alpha_map(a)?.scale(&T::ratio(1, 2));
    let c = a.inner(&omega()) / T::from_int(3);
    let mut phi0 = a - &psi_plus::<T>().interior(&xi);
    phi0.add_scaled(&-c.clone(), &omega());
    Ok(TwoFormParts { phi0, c, xi })
}

/// `u = α ∧ ω + λψ⁺ + μψ⁻ + S⋆ψ⁺` with `S ∈ Sym⁻`.
#[derive(Debug, Clone, PartialEq)]
pub struct ThreeFormParts<T> {
    pub alpha: Vector<T>,
    pub lambda: T,
    pub mu: T,
    pub s: Endo<T>,
}

impl<T: Scalar> ThreeFormParts<T> {
    pub fn recompose(&self) -> Form<T> {
        let mut u = self.alpha.to_form().wedge(&omega());
        u.add_scaled(&self.lambda, &psi_plus());
        u.add_scaled(&self.mu, &psi_minus());
        &u + &sym_minus_to_form(&self.s, Psi::Plus)
    }
}

pub fn decompose_three_form<T: Scalar>(u: &Form<T>) -> Result<ThreeFormParts<T>> {
    decompose_three_form_with_tol(u, scaled_tol(u.max_abs()))
}

pub fn decompose_three_form_with_tol<T: Scalar>(u: &Form<T>, tol: f64) -> Result<ThreeFormParts<T>> {
    u.require_degree(3)?;
    let alpha = Vector::from_form(&lambda_contract(u)).scale(&T::ratio(1, 2));
    let four = T::from_int(4);
    let lambda = u.inner(&psi_plus()) / four.clone();
    let mu = u.inner(&psi_minus()) / four;
    let mut rest = u - &alpha.to_form().wedge(&omega());
    rest.add_scaled(&-lambda.clone(), &psi_plus());
    rest.add_scaled(&-mu.clone(), &psi_minus());
    let s = form_to_sym_minus_with_tol(&rest, tol)?;
    Ok(ThreeFormParts { alpha, lambda, mu, s })
}

/// `S⋆ψ⁺` or `S⋆ψ⁻`.
pub fn sym_minus_to_form<T: Scalar>(s: &Endo<T>, which: Psi) -> Form<T> {
    endo_act(s, &which.form())
}

/// A basis of `Sym⁻`: on each 2×2 block pattern of the adapted basis the
/// matrices `diag(1, −1)` and `[[0, 1], [1, 0]]`, symmetrised across the
/// diagonal. Orthogonal for the trace form.
pub fn sym_minus_basis<T: Scalar>() -> Vec<Endo<T>> {
    let mut out = Vec::with_capacity(12);
    for a in 0..3 {
        for b in a..3 {
            for pattern in 0..2 {
                out.push(Endo::from_fn(|i, j| {
                    let (bi, bj) = (i / 2, j / 2);
                    if !((bi == a && bj == b) || (bi == b && bj == a)) {
                        return T::zero();
                    }
                    let (r, c) = (i % 2, j % 2);
                    let v = match pattern {
                        0 if r == c => {
                            if r == 0 {
                                1
                            } else {
                                -1
                            }
                        }
                        1 if r != c => 1,
                        _ => 0,
                    };
                    T::from_int(v)
                }));
            }
        }
    }
    out
}

/// Coordinates of `S` in [`sym_minus_basis`] (`S` assumed in `Sym⁻`).
pub fn sym_minus_coords<T: Scalar>(s: &Endo<T>) -> Vec<T> {
    sym_minus_basis::<T>()
        .iter()
        .map(|b| {
            let mut num = T::zero();
            let mut den = T::zero();
            for i in 0..DIM {
                for j in 0..DIM {
                    num += &(b.get(i, j).clone() * s.get(i, j));
                    den += &(b.get(i, j).clone() * b.get(i, j));
                }
            }
            num / den
        })
        .collect()
}

pub fn sym_minus_from_coords<T: Scalar>(coords: &[T]) -> Endo<T> {
    let mut s = Endo::zero();
    for (c, b) in coords.iter().zip(sym_minus_basis::<T>()) {
        s = &s + &b.scale(c);
    }
    s
}

/// `20 × 12` matrix of `S ↦ S⋆ψ⁺` from [`sym_minus_basis`] to the degree-3
/// blades in lexicographic order.
pub fn sym_minus_iso_matrix<T: Scalar>() -> Vec<Vec<T>> {
    let blades = Blade::of_degree(3);
    let images: Vec<Form<T>> = sym_minus_basis::<T>().iter().map(|b| sym_minus_to_form(b, Psi::Plus)).collect();
    blades.iter().map(|bl| images.iter().map(|f| f.coeff(*bl).clone()).collect()).collect()
}

/// Left inverse `(MᵀM)⁻¹Mᵀ` of the isomorphism matrix, computed once in exact arithmetic.
fn left_inverse() -> &'static Vec<Vec<Rational>> {
    static CELL: OnceLock<Vec<Vec<Rational>>> = OnceLock::new();
    CELL.get_or_init(|| {
        let m = sym_minus_iso_matrix::<Rational>();
        let (rows, cols) = (m.len(), m[0].len());
        let gram: Vec<Vec<Rational>> = (0..cols)
            .map(|i| (0..cols).map(|j| (0..rows).fold(Rational::zero(), |acc, r| acc + &m[r][i] * &m[r][j])).collect())
            .collect();
        let mt: Vec<Vec<Rational>> = (0..cols).map(|i| (0..rows).map(|r| m[r][i].clone()).collect()).collect();
        solve(gram, mt).expect("S ↦ S⋆ψ⁺ is injective")
    })
}

fn left_inverse_float() -> &'static Vec<Vec<f64>> {
    static CELL: OnceLock<Vec<Vec<f64>>> = OnceLock::new();
    CELL.get_or_init(|| left_inverse().iter().map(|row| row.iter().map(Scalar::to_f64_lossy).collect()).collect())
}

/// Gauss–Jordan solve of `A X = B` for square `A`; `None` if singular.
#[allow(clippy::needless_range_loop)]
pub(crate) fn solve<T: Scalar>(mut a: Vec<Vec<T>>, mut b: Vec<Vec<T>>) -> Option<Vec<Vec<T>>> {
    let n = a.len();
    for col in 0..n {
        let pivot = (col..n)
            .filter(|&r| !a[r][col].is_zero())
            .max_by(|&x, &y| a[x][col].abs().partial_cmp(&a[y][col].abs()).unwrap_or(std::cmp::Ordering::Equal))?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = T::one() / a[col][col].clone();
        for v in a[col].iter_mut() {
            *v *= &inv;
        }
        for v in b[col].iter_mut() {
            *v *= &inv;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for c in 0..n {
                let t = a[col][c].clone() * &factor;
                a[r][c] -= &t;
            }
            for c in 0..b[r].len() {
                let t = b[col][c].clone() * &factor;
                b[r][c] -= &t;
            }
        }
    }
    Some(b)
}

/// Inverse of `S ↦ S⋆ψ⁺` on `Λ^{(2,1)+(1,2)}_0`.
pub fn form_to_sym_minus<T: Scalar>(u: &Form<T>) -> Result<Endo<T>> {
    form_to_sym_minus_with_tol(u, scaled_tol(u.max_abs()))
}

pub fn form_to_sym_minus_with_tol<T: Scalar>(u: &Form<T>, tol: f64) -> Result<Endo<T>> {
    u.require_degree(3)?;
    let blades = Blade::of_degree(3);
    let rhs: Vec<&T> = blades.iter().map(|b| u.coeff(*b)).collect();
    let coords: Vec<T> = match T::MODE {
        crate::scalar::Mode::Exact => apply_rows(left_inverse(), &rhs),
        crate::scalar::Mode::Float => apply_rows(left_inverse_float(), &rhs),
    };
    let s = sym_minus_from_coords(&coords);
    let defect = u - &sym_minus_to_form(&s, Psi::Plus);
    let residual = defect.max_abs();
    let ok = match T::MODE {
        crate::scalar::Mode::Exact => defect.is_zero(),
        crate::scalar::Mode::Float => residual <= tol,
    };
    if !ok {
        return Err(Error::NotInDomain { what: "3-form is not in the image of S ↦ S⋆ψ⁺", residual });
    }
    Ok(s)
}

fn apply_rows<T, R>(rows: &[Vec<R>], rhs: &[&T]) -> Vec<T>
where
    R: Clone,
    T: Scalar + FromCoeff<R>,
{
    rows.iter()
        .map(|row| {
            let mut acc = T::zero();
            for (r, x) in row.iter().zip(rhs) {
                if !x.is_zero() {
                    acc += &(T::from_coeff(r) * *x);
                }
            }
            acc
        })
        .collect()
}

/// Conversion of the cached inverse entries into the working scalar.
trait FromCoeff<R> {
    fn from_coeff(r: &R) -> Self;
}

impl<T: Scalar> FromCoeff<Rational> for T {
    fn from_coeff(r: &Rational) -> Self {
        T::from_rational(r)
    }
}

impl<T: Scalar> FromCoeff<f64> for T {
    fn from_coeff(r: &f64) -> Self {
        T::from_f64(*r).unwrap_or_else(T::zero)
    }
}

/// Splits `F` (anti-commuting with `J`) as `S + ψ⁺_ξ` with `S ∈ Sym⁻`.
pub fn decompose_anti_endo<T: Scalar>(f: &Endo<T>) -> Result<(Endo<T>, Vector<T>)> {
    decompose_anti_endo_with_tol(f, scaled_tol(f.max_abs()))
}

pub fn decompose_anti_endo_with_tol<T: Scalar>(f: &Endo<T>, tol: f64) -> Result<(Endo<T>, Vector<T>)> {
    if !f.anticommutes_with_j(tol) {
        return Err(Error::NotInDomain {
            what: "endomorphism does not anti-commute with J",
            residual: f.j_anticommutator_defect(),
        });
    }
    let half = T::ratio(1, 2);
    let ft = f.transpose();
    let s = (f + &ft).scale(&half);
    let skew = (f - &ft).scale(&half);
    let xi = alpha_map(&two_form_from_endo(&skew))?.scale(&half);
    debug_assert!(psi_plus_endo(&xi).approx_eq(&skew, tol.max(1e-9)));
    Ok((s, xi))
}

/// Gram matrix `MᵀM` of [`sym_minus_iso_matrix`]; its eigenvalues are the
/// squared singular values of the isomorphism.
pub fn sym_minus_gram<T: Scalar>() -> Vec<Vec<T>> {
    let m = sym_minus_iso_matrix::<T>();
    let cols = m[0].len();
    (0..cols)
        .map(|i| (0..cols).map(|j| m.iter().fold(T::zero(), |acc, row| acc + &(row[i].clone() * &row[j]))).collect())
        .collect()
}
