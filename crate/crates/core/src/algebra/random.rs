//! Seeded random instances for property checks.
//!
//! Exact mode draws integers uniformly from `-9..=9`; float mode draws
//! standard normals. All generators take the RNG explicitly.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::blade::{Blade, DIM};
use super::decompose::sym_minus_from_coords;
use super::form::Form;
use super::linear::{Endo, Vector};
use super::structure::{psi_plus_endo, sym_plus_to_two_form};
use crate::scalar::{Mode, Scalar};

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn scalar<T: Scalar, R: Rng + ?Sized>(rng: &mut R) -> T {
    match T::MODE {
        Mode::Exact => T::from_int(rng.random_range(-9..=9)),
        Mode::Float => {
            let x: f64 = rng.sample(StandardNormal);
            T::from_f64(x).expect("finite normal sample")
        }
    }
}

pub fn form<T: Scalar, R: Rng + ?Sized>(rng: &mut R, degree: usize) -> Form<T> {
    Form::from_terms(Blade::of_degree(degree).into_iter().map(|b| (b, scalar(rng))))
}

/// Random coefficients on every degree.
pub fn mixed_form<T: Scalar, R: Rng + ?Sized>(rng: &mut R) -> Form<T> {
    Form::from_terms(Blade::all().map(|b| (b, scalar(rng))))
}

pub fn vector<T: Scalar, R: Rng + ?Sized>(rng: &mut R) -> Vector<T> {
    Vector::from_fn(|_| scalar(rng))
}

pub fn endo<T: Scalar, R: Rng + ?Sized>(rng: &mut R) -> Endo<T> {
    Endo::from_fn(|_, _| scalar(rng))
}

/// Random element of `Sym⁻` through its 12 basis coordinates.
pub fn sym_minus<T: Scalar, R: Rng + ?Sized>(rng: &mut R) -> Endo<T> {
    let coords: Vec<T> = (0..12).map(|_| scalar(rng)).collect();
    sym_minus_from_coords(&coords)
}

/// Random symmetric endomorphism commuting with `J`.
pub fn sym_plus<T: Scalar, R: Rng + ?Sized>(rng: &mut R) -> Endo<T> {
    let e: Endo<T> = endo(rng);
    let sym = &e + &e.transpose();
    let j = Endo::complex_structure();
    // E − JEJ commutes with J
    &sym - &(&(&j * &sym) * &j)
}

/// Random `J`-invariant 2-form.
pub fn one_one_form<T: Scalar, R: Rng + ?Sized>(rng: &mut R) -> Form<T> {
    sym_plus_to_two_form(&sym_plus(rng))
}

/// Random endomorphism anti-commuting with `J`.
pub fn anti_endo<T: Scalar, R: Rng + ?Sized>(rng: &mut R) -> Endo<T> {
    &sym_minus(rng) + &psi_plus_endo(&vector(rng))
}

/// Random element of SU(3) ⊂ SO(6): the exponential of a traceless
/// anti-Hermitian 3×3 matrix, embedded via `z_k = x_{2k-1} + i x_{2k}`.
pub fn su3<R: Rng + ?Sized>(rng: &mut R, scale: f64) -> Endo<f64> {
    let mut n = || -> f64 { scale * rng.sample::<f64, _>(StandardNormal) };
    // anti-Hermitian: diagonal purely imaginary, a_{kl} = −conj(a_{lk})
    let mut re = [[0.0; 3]; 3];
    let mut im = [[0.0; 3]; 3];
    for k in 0..3 {
        im[k][k] = n();
        for l in k + 1..3 {
            re[k][l] = n();
            im[k][l] = n();
            re[l][k] = -re[k][l];
            im[l][k] = im[k][l];
        }
    }
    let tr = (im[0][0] + im[1][1] + im[2][2]) / 3.0;
    for (k, row) in im.iter_mut().enumerate() {
        row[k] -= tr;
    }
    let gen = Endo::from_fn(|i, j| {
        let (k, l) = (i / 2, j / 2);
        let (a, b) = (re[k][l], im[k][l]);
        match (i % 2, j % 2) {
            (0, 0) | (1, 1) => a,
            (0, 1) => -b,
            _ => b,
        }
    });
    expm(&gen)
}

/// Matrix exponential by scaling and squaring of a Taylor series.
pub fn expm(a: &Endo<f64>) -> Endo<f64> {
    let norm = a.max_abs() * DIM as f64;
    let squarings = if norm > 0.5 { (norm / 0.5).log2().ceil() as u32 } else { 0 };
    let scaled = a.scale(&(0.5f64).powi(squarings as i32));
    let mut term = Endo::identity();
    let mut sum = Endo::identity();
    for k in 1..=24 {
        term = (&term * &scaled).scale(&(1.0 / k as f64));
        sum = &sum + &term;
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}
