//! Dense graded forms on the 6-dimensional model space.

use std::ops::{Add, Neg, Sub};

use num_traits::Zero;

use super::blade::{Blade, BLADE_COUNT, DIM};
use super::linear::{Endo, Vector};
use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

/// An element of `Λ•V`, stored as 64 coefficients against ascending blades.
///
/// Forms may mix degrees; operations that need a single degree check it and
/// fail with [`Error::MixedDegree`] instead of projecting silently.
#[derive(Debug, Clone, PartialEq)]
pub struct Form<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Default for Form<T> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<T: Scalar> Form<T> {
    pub fn zero() -> Self {
        Form { coeffs: vec![T::zero(); BLADE_COUNT] }
    }

    pub fn scalar(c: T) -> Self {
        let mut f = Self::zero();
        f.coeffs[0] = c;
        f
    }

    pub fn basis(b: Blade) -> Self {
        Self::term(b, T::one())
    }

    pub fn term(b: Blade, c: T) -> Self {
        let mut f = Self::zero();
        f.coeffs[b.index()] = c;
        f
    }

    /// Sums the given terms; repeated blades accumulate.
    pub fn from_terms<I: IntoIterator<Item = (Blade, T)>>(terms: I) -> Self {
        let mut f = Self::zero();
        for (b, c) in terms {
            f.coeffs[b.index()] += &c;
        }
        f
    }

    /// Shorthand for small integer-coefficient forms: `[("e135", 1), ("e146", -1)]`.
    pub fn from_int_terms(terms: &[(&str, i64)]) -> Self {
        Self::from_terms(terms.iter().map(|(s, c)| {
            let b: Blade = s.parse().expect("valid blade literal");
            (b, T::from_int(*c))
        }))
    }

    #[inline]
    pub fn coeff(&self, b: Blade) -> &T {
        &self.coeffs[b.index()]
    }

    pub fn set(&mut self, b: Blade, c: T) {
        self.coeffs[b.index()] = c;
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Nonzero terms in mask order.
    pub fn terms(&self) -> impl Iterator<Item = (Blade, &T)> {
        Blade::all().zip(self.coeffs.iter()).filter(|(_, c)| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Sorted list of degrees carrying a nonzero coefficient.
    pub fn degrees(&self) -> Vec<usize> {
        let mut present = [false; DIM + 1];
        for (b, _) in self.terms() {
            present[b.degree()] = true;
        }
        (0..=DIM).filter(|&k| present[k]).collect()
    }

    /// `Ok(None)` for the zero form, `Ok(Some(k))` if homogeneous of degree `k`.
    pub fn degree(&self) -> Result<Option<usize>> {
        let degrees = self.degrees();
        match degrees.len() {
            0 => Ok(None),
            1 => Ok(Some(degrees[0])),
            _ => Err(Error::MixedDegree { degrees }),
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degrees().len() <= 1
    }

    /// Checks that the form is zero or homogeneous of degree `k`.
    pub fn require_degree(&self, k: usize) -> Result<()> {
        match self.degree()? {
            Some(found) if found != k => Err(Error::DegreeMismatch { expected: k, found }),
            _ => Ok(()),
        }
    }

    /// The degree-`k` component.
    pub fn grade(&self, k: usize) -> Self {
        let mut f = Self::zero();
        for b in Blade::all().filter(|b| b.degree() == k) {
            f.coeffs[b.index()] = self.coeffs[b.index()].clone();
        }
        f
    }

    pub fn scale(&self, c: &T) -> Self {
        Form { coeffs: self.coeffs.iter().map(|x| x.clone() * c).collect() }
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, c: &T, other: &Self) {
        for (x, y) in self.coeffs.iter_mut().zip(&other.coeffs) {
            if !y.is_zero() {
                *x += &(y.clone() * c);
            }
        }
    }

    pub fn wedge(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        let right: Vec<(Blade, &T)> = other.terms().collect();
        for (a, ca) in self.terms() {
            for &(b, cb) in &right {
                if let Some(sign) = Blade::wedge_sign(a, b) {
                    let slot = &mut out.coeffs[(a.mask() | b.mask()) as usize];
                    let prod = ca.clone() * cb;
                    if sign > 0 {
                        *slot += &prod;
                    } else {
                        *slot -= &prod;
                    }
                }
            }
        }
        out
    }

    /// Interior product `x ⌟ self`.
    pub fn interior(&self, x: &Vector<T>) -> Self {
        let mut out = Self::zero();
        for (i, xi) in x.components().iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (b, c) in self.terms() {
                if let Some((sign, rest)) = b.contract_sign(i) {
                    let prod = c.clone() * xi;
                    let slot = &mut out.coeffs[rest.index()];
                    if sign > 0 {
                        *slot += &prod;
                    } else {
                        *slot -= &prod;
                    }
                }
            }
        }
        out
    }

    /// Interior product with the basis vector `e_i`.
    pub fn interior_basis(&self, i: usize) -> Self {
        let mut out = Self::zero();
        for (b, c) in self.terms() {
            if let Some((sign, rest)) = b.contract_sign(i) {
                out.coeffs[rest.index()] = if sign > 0 { c.clone() } else { -c.clone() };
            }
        }
        out
    }

    /// Inner product making the ascending blades orthonormal; distinct
    /// degrees are orthogonal.
    pub fn inner(&self, other: &Self) -> T {
        let mut acc = T::zero();
        for (x, y) in self.coeffs.iter().zip(&other.coeffs) {
            if !x.is_zero() && !y.is_zero() {
                acc += &(x.clone() * y);
            }
        }
        acc
    }

    pub fn norm_sq(&self) -> T {
        self.inner(self)
    }

    /// Largest absolute coefficient, as `f64`.
    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.abs().to_f64_lossy()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (self - other).max_abs()
    }

    /// Coefficient-wise equality (exact mode) or max-norm within `tol` (float mode).
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.coeffs.iter().zip(&other.coeffs).all(|(x, y)| (x.clone() - y).is_negligible(tol))
    }

    /// Pullback along a linear map: `e^a ↦ Σ_i m[a][i] e^i`, extended multiplicatively.
    pub fn pullback(&self, m: &Endo<T>) -> Self {
        let ones: Vec<Form<T>> =
            (0..DIM).map(|a| Form::from_terms((0..DIM).map(|i| (Blade::basis(i), m.get(a, i).clone())))).collect();
        let mut out = Self::zero();
        for (b, c) in self.terms() {
            let mut pulled = Form::scalar(c.clone());
            for a in b.indices() {
                pulled = pulled.wedge(&ones[a]);
            }
            out.add_scaled(&T::one(), &pulled);
        }
        out
    }

    /// Evaluates a homogeneous `k`-form on `k` vectors with the determinant convention.
    pub fn evaluate(&self, vectors: &[Vector<T>]) -> T {
        let mut acc = Form::scalar(T::one());
        for v in vectors {
            acc = acc.wedge(&v.to_form());
        }
        // ⟨τ, v1 ∧ … ∧ vk⟩ = τ(v1, …, vk) for orthonormal blades
        self.grade(vectors.len()).inner(&acc)
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Form<U> {
        Form { coeffs: self.coeffs.iter().map(f).collect() }
    }

    pub fn to_float(&self) -> Form<f64> {
        self.map(Scalar::to_f64_lossy)
    }
}

impl Form<f64> {
    /// Exact image of a float form (every finite double is a dyadic rational).
    pub fn to_exact(&self) -> Form<Rational> {
        self.map(|x| Rational::from_float(*x).unwrap_or_default())
    }
}

impl<T: Scalar> Add for &Form<T> {
    type Output = Form<T>;
    fn add(self, rhs: &Form<T>) -> Form<T> {
        Form { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a.clone() + b).collect() }
    }
}

impl<T: Scalar> Sub for &Form<T> {
    type Output = Form<T>;
    fn sub(self, rhs: &Form<T>) -> Form<T> {
        Form { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a.clone() - b).collect() }
    }
}

impl<T: Scalar> Add for Form<T> {
    type Output = Form<T>;
    fn add(self, rhs: Form<T>) -> Form<T> {
        &self + &rhs
    }
}

impl<T: Scalar> Sub for Form<T> {
    type Output = Form<T>;
    fn sub(self, rhs: Form<T>) -> Form<T> {
        &self - &rhs
    }
}

impl<T: Scalar> Neg for &Form<T> {
    type Output = Form<T>;
    fn neg(self) -> Form<T> {
        Form { coeffs: self.coeffs.iter().map(|a| -a.clone()).collect() }
    }
}

impl<T: Scalar> Neg for Form<T> {
    type Output = Form<T>;
    fn neg(self) -> Form<T> {
        -&self
    }
}

/// `x ⌟ a`
pub fn contract<T: Scalar>(x: &Vector<T>, a: &Form<T>) -> Form<T> {
    a.interior(x)
}

pub fn wedge<T: Scalar>(a: &Form<T>, b: &Form<T>) -> Form<T> {
    a.wedge(b)
}

pub fn inner<T: Scalar>(a: &Form<T>, b: &Form<T>) -> T {
    a.inner(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    type Q = Form<Rational>;

    fn b(s: &str) -> Blade {
        s.parse().unwrap()
    }

    #[test]
    fn basis_wedge() {
        let e1 = Q::basis(b("e1"));
        let e2 = Q::basis(b("e2"));
        assert_eq!(e1.wedge(&e2), Q::basis(b("e12")));
        assert_eq!(e2.wedge(&e1), -Q::basis(b("e12")));
        assert!(e1.wedge(&e1).is_zero());
    }

    #[test]
    fn wedge_beyond_top_degree_vanishes() {
        let a = Q::from_int_terms(&[("e1234", 1)]);
        let c = Q::from_int_terms(&[("e356", 2)]);
        assert!(a.wedge(&c).is_zero());
    }

    #[test]
    fn interior_of_basis_blade() {
        let x = Vector::<Rational>::basis(0);
        assert_eq!(Q::basis(b("e12")).interior(&x), Q::basis(b("e2")));
        assert!(Q::scalar(Rational::from_int(3)).interior(&x).is_zero());
    }

    #[test]
    fn degree_queries() {
        let mixed = Q::from_int_terms(&[("e1", 1), ("e12", 1)]);
        assert_eq!(mixed.degree(), Err(Error::MixedDegree { degrees: vec![1, 2] }));
        assert_eq!(Q::zero().degree(), Ok(None));
        assert!(Q::zero().require_degree(4).is_ok());
        assert_eq!(Q::basis(b("e12")).require_degree(3), Err(Error::DegreeMismatch { expected: 3, found: 2 }));
    }

    #[test]
    fn evaluation_uses_determinant_convention() {
        let f = Q::basis(b("e12"));
        let e1 = Vector::basis(0);
        let e2 = Vector::basis(1);
        assert_eq!(f.evaluate(&[e1.clone(), e2.clone()]), Rational::from_int(1));
        assert_eq!(f.evaluate(&[e2, e1]), Rational::from_int(-1));
    }
}
