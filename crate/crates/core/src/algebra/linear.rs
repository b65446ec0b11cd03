//! Vectors and endomorphisms of the model space `V = R^6`.

use std::array;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use super::blade::{Blade, DIM};
use super::form::Form;
use crate::scalar::Scalar;

/// A vector of `V`, identified with a 1-form through the metric.
#[derive(Debug, Clone, PartialEq)]
pub struct Vector<T>([T; DIM]);

impl<T: Scalar> Vector<T> {
    pub fn new(components: [T; DIM]) -> Self {
        Vector(components)
    }

    pub fn zero() -> Self {
        Vector(array::from_fn(|_| T::zero()))
    }

    pub fn basis(i: usize) -> Self {
        Vector(array::from_fn(|k| if k == i { T::one() } else { T::zero() }))
    }

    pub fn from_fn(f: impl FnMut(usize) -> T) -> Self {
        Vector(array::from_fn(f))
    }

    pub fn components(&self) -> &[T; DIM] {
        &self.0
    }

    pub fn get(&self, i: usize) -> &T {
        &self.0[i]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn to_form(&self) -> Form<T> {
        Form::from_terms(self.0.iter().enumerate().map(|(i, c)| (Blade::basis(i), c.clone())))
    }

    /// Degree-one part of a form.
    pub fn from_form(f: &Form<T>) -> Self {
        Vector(array::from_fn(|i| f.coeff(Blade::basis(i)).clone()))
    }

    pub fn dot(&self, other: &Self) -> T {
        let mut acc = T::zero();
        for (a, b) in self.0.iter().zip(&other.0) {
            acc += &(a.clone() * b);
        }
        acc
    }

    pub fn scale(&self, c: &T) -> Self {
        Vector(array::from_fn(|i| self.0[i].clone() * c))
    }

    /// The standard complex structure: `J e_{2i-1} = e_{2i}`.
    pub fn j(&self) -> Self {
        Vector(array::from_fn(|i| if i % 2 == 0 { -self.0[i + 1].clone() } else { self.0[i - 1].clone() }))
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|c| c.abs().to_f64_lossy()).fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| (a.clone() - b).is_negligible(tol))
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Vector<U> {
        Vector(array::from_fn(|i| f(&self.0[i])))
    }
}

impl<T: Scalar> Add for &Vector<T> {
    type Output = Vector<T>;
    fn add(self, rhs: &Vector<T>) -> Vector<T> {
        Vector(array::from_fn(|i| self.0[i].clone() + &rhs.0[i]))
    }
}

impl<T: Scalar> Sub for &Vector<T> {
    type Output = Vector<T>;
    fn sub(self, rhs: &Vector<T>) -> Vector<T> {
        Vector(array::from_fn(|i| self.0[i].clone() - &rhs.0[i]))
    }
}

impl<T: Scalar> Neg for &Vector<T> {
    type Output = Vector<T>;
    fn neg(self) -> Vector<T> {
        Vector(array::from_fn(|i| -self.0[i].clone()))
    }
}

/// A linear map of `V`; `m[i][j]` is the `e_i` component of `A e_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct Endo<T> {
    m: [[T; DIM]; DIM],
}

impl<T: Scalar> Endo<T> {
    pub fn from_fn(mut f: impl FnMut(usize, usize) -> T) -> Self {
        Endo { m: array::from_fn(|i| array::from_fn(|j| f(i, j))) }
    }

    pub fn from_rows(m: [[T; DIM]; DIM]) -> Self {
        Endo { m }
    }

    pub fn zero() -> Self {
        Self::from_fn(|_, _| T::zero())
    }

    pub fn identity() -> Self {
        Self::from_fn(|i, j| if i == j { T::one() } else { T::zero() })
    }

    /// The standard complex structure `J`, with `J e_{2i-1} = e_{2i}`.
    pub fn complex_structure() -> Self {
        Self::from_fn(|i, j| {
            if i % 2 == 1 && j == i - 1 {
                T::one()
            } else if i % 2 == 0 && j == i + 1 {
                -T::one()
            } else {
                T::zero()
            }
        })
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.m[i][j]
    }

    pub fn rows(&self) -> &[[T; DIM]; DIM] {
        &self.m
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|i, j| self.m[j][i].clone())
    }

    pub fn apply(&self, v: &Vector<T>) -> Vector<T> {
        Vector::from_fn(|i| {
            let mut acc = T::zero();
            for j in 0..DIM {
                acc += &(self.m[i][j].clone() * v.get(j));
            }
            acc
        })
    }

    pub fn column(&self, j: usize) -> Vector<T> {
        Vector::from_fn(|i| self.m[i][j].clone())
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::from_fn(|i, j| self.m[i][j].clone() * c)
    }

    pub fn trace(&self) -> T {
        let mut acc = T::zero();
        for i in 0..DIM {
            acc += &self.m[i][i];
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.m.iter().flatten().all(Zero::is_zero)
    }

    pub fn max_abs(&self) -> f64 {
        self.m.iter().flatten().map(|c| c.abs().to_f64_lossy()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (self - other).max_abs()
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.m.iter().flatten().zip(other.m.iter().flatten()).all(|(a, b)| (a.clone() - b).is_negligible(tol))
    }

    /// `max |A - Aᵀ|`
    pub fn symmetry_defect(&self) -> f64 {
        self.max_abs_diff(&self.transpose())
    }

    /// `max |A + Aᵀ|`
    pub fn skew_defect(&self) -> f64 {
        (self + &self.transpose()).max_abs()
    }

    /// `max |AJ - JA|`
    pub fn j_commutator_defect(&self) -> f64 {
        let j = Self::complex_structure();
        (&(self * &j) - &(&j * self)).max_abs()
    }

    /// `max |AJ + JA|`
    pub fn j_anticommutator_defect(&self) -> f64 {
        let j = Self::complex_structure();
        (&(self * &j) + &(&j * self)).max_abs()
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        self.approx_eq(&self.transpose(), tol)
    }

    pub fn is_skew(&self, tol: f64) -> bool {
        (self + &self.transpose()).approx_eq(&Self::zero(), tol)
    }

    pub fn commutes_with_j(&self, tol: f64) -> bool {
        let j = Self::complex_structure();
        (self * &j).approx_eq(&(&j * self), tol)
    }

    pub fn anticommutes_with_j(&self, tol: f64) -> bool {
        let j = Self::complex_structure();
        (&(self * &j) + &(&j * self)).approx_eq(&Self::zero(), tol)
    }

    /// Symmetric and anti-commuting with `J`.
    pub fn is_sym_minus(&self, tol: f64) -> bool {
        self.is_symmetric(tol) && self.anticommutes_with_j(tol)
    }

    /// Symmetric and commuting with `J`.
    pub fn is_sym_plus(&self, tol: f64) -> bool {
        self.is_symmetric(tol) && self.commutes_with_j(tol)
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Endo<U> {
        Endo::from_fn(|i, j| f(&self.m[i][j]))
    }

    pub fn to_float(&self) -> Endo<f64> {
        self.map(Scalar::to_f64_lossy)
    }

    /// Row-major flattening.
    pub fn to_row_major(&self) -> Vec<T> {
        self.m.iter().flatten().cloned().collect()
    }

    pub fn from_row_major(values: &[T]) -> Option<Self> {
        (values.len() == DIM * DIM).then(|| Self::from_fn(|i, j| values[i * DIM + j].clone()))
    }
}

impl<T: Scalar> Add for &Endo<T> {
    type Output = Endo<T>;
    fn add(self, rhs: &Endo<T>) -> Endo<T> {
        Endo::from_fn(|i, j| self.m[i][j].clone() + &rhs.m[i][j])
    }
}

impl<T: Scalar> Sub for &Endo<T> {
    type Output = Endo<T>;
    fn sub(self, rhs: &Endo<T>) -> Endo<T> {
        Endo::from_fn(|i, j| self.m[i][j].clone() - &rhs.m[i][j])
    }
}

impl<T: Scalar> Neg for &Endo<T> {
    type Output = Endo<T>;
    fn neg(self) -> Endo<T> {
        Endo::from_fn(|i, j| -self.m[i][j].clone())
    }
}

impl<T: Scalar> Mul for &Endo<T> {
    type Output = Endo<T>;
    fn mul(self, rhs: &Endo<T>) -> Endo<T> {
        Endo::from_fn(|i, j| {
            let mut acc = T::zero();
            for k in 0..DIM {
                if !self.m[i][k].is_zero() && !rhs.m[k][j].is_zero() {
                    acc += &(self.m[i][k].clone() * &rhs.m[k][j]);
                }
            }
            acc
        })
    }
}
