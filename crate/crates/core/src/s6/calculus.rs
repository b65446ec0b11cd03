//! Second-order finite-difference calculus on S⁶.

use super::field::{star, EndoField, FormField};
use super::frame::{AdaptedFrame, Chart};
use crate::algebra::{hodge_star, Endo, Form, Vector, DIM};
use crate::error::{Error, Result};

/// Central-difference step with optional Richardson extrapolation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FiniteDiff {
    h: f64,
    richardson: bool,
    chart: Chart,
}

impl FiniteDiff {
    /// Steps at or below this lose too many digits to cancellation.
    pub const MIN_STEP: f64 = 1e-7;
    pub const MAX_STEP: f64 = 1e-1;
    pub const DEFAULT_STEP: f64 = 1e-3;

    pub fn new(h: f64) -> Result<Self> {
        if !(h > Self::MIN_STEP && h < Self::MAX_STEP) {
            return Err(Error::StepOutOfRange(h));
        }
        Ok(FiniteDiff { h, richardson: false, chart: Chart::default() })
    }

    pub fn with_chart(self, chart: Chart) -> Self {
        FiniteDiff { chart, ..self }
    }

    pub fn chart(&self) -> Chart {
        self.chart
    }

    pub fn with_richardson(self, on: bool) -> Self {
        FiniteDiff { richardson: on, ..self }
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn richardson(&self) -> bool {
        self.richardson
    }

    /// Same scheme at step h/2 (not range-checked: used for order estimates).
    pub fn halved(&self) -> Self {
        FiniteDiff { h: self.h / 2.0, ..*self }
    }

    /// Derivative at 0 of `g`.
    pub fn derivative<T: Linear>(&self, g: impl Fn(f64) -> Result<T>) -> Result<T> {
        let central = |h: f64| -> Result<T> { Ok(g(h)?.combine(0.5 / h, &g(-h)?, -0.5 / h)) };
        let coarse = central(self.h)?;
        if !self.richardson {
            return Ok(coarse);
        }
        Ok(central(self.h / 2.0)?.combine(4.0 / 3.0, &coarse, -1.0 / 3.0))
    }
}

impl Default for FiniteDiff {
    fn default() -> Self {
        FiniteDiff { h: Self::DEFAULT_STEP, richardson: false, chart: Chart::default() }
    }
}

/// Values that can be differenced.
pub trait Linear: Sized {
    /// `a·self + b·other`
    fn combine(&self, a: f64, other: &Self, b: f64) -> Self;
}

impl Linear for f64 {
    fn combine(&self, a: f64, other: &Self, b: f64) -> Self {
        a * self + b * other
    }
}

impl Linear for Form<f64> {
    fn combine(&self, a: f64, other: &Self, b: f64) -> Self {
        let mut out = self.scale(&a);
        out.add_scaled(&b, other);
        out
    }
}

impl Linear for Endo<f64> {
    fn combine(&self, a: f64, other: &Self, b: f64) -> Self {
        &self.scale(&a) + &other.scale(&b)
    }
}

impl Linear for Vector<f64> {
    fn combine(&self, a: f64, other: &Self, b: f64) -> Self {
        &self.scale(&a) + &other.scale(&b)
    }
}

fn axis(j: usize, t: f64) -> [f64; DIM] {
    let mut y = [0.0; DIM];
    y[j] = t;
    y
}

/// `(dF)_p`: F is pulled back to chart coordinates centred at `p` and
/// `dF = Σ e^j ∧ ∂_j F` is taken by central differences.
pub fn ext_d<F: FormField + ?Sized>(field: &F, frame: &AdaptedFrame, fd: FiniteDiff) -> Result<Form<f64>> {
    if field.degree() >= DIM {
        return Ok(Form::zero());
    }
    let mut out = Form::zero();
    for j in 0..DIM {
        let partial = fd.derivative(|t| {
            let y = axis(j, t);
            let moved = frame.moved_to(frame.chart(fd.chart, &y)?)?;
            Ok(field.eval(&moved)?.pullback(&moved.transfer(&frame.chart_tangents(fd.chart, &y))))
        })?;
        out = &out + &Form::basis(crate::algebra::Blade::basis(j)).wedge(&partial);
    }
    Ok(out)
}

fn along<T: Linear>(
    x: &Vector<f64>,
    frame: &AdaptedFrame,
    fd: FiniteDiff,
    sample: impl Fn(&AdaptedFrame, &Endo<f64>) -> Result<T>,
) -> Result<T> {
    fd.derivative(|t| {
        let y: [f64; DIM] = std::array::from_fn(|i| t * x.get(i));
        let moved = frame.moved_to(frame.chart(fd.chart, &y)?)?;
        sample(&moved, &moved.transfer(frame.vectors()))
    })
}

/// Levi-Civita derivative `∇_X F` at `p`: ambient derivative of the field
/// (transported by tangential projection) along a curve with velocity X.
pub fn covariant_d<F: FormField + ?Sized>(
    field: &F,
    x: &Vector<f64>,
    frame: &AdaptedFrame,
    fd: FiniteDiff,
) -> Result<Form<f64>> {
    along(x, frame, fd, |moved, a| Ok(field.eval(moved)?.pullback(a)))
}

pub fn covariant_d_endo<F: EndoField + ?Sized>(
    field: &F,
    x: &Vector<f64>,
    frame: &AdaptedFrame,
    fd: FiniteDiff,
) -> Result<Endo<f64>> {
    along(x, frame, fd, |moved, a| Ok(&(&a.transpose() * &field.eval(moved)?) * a))
}

/// `δF = −*d*F`
pub fn codifferential<F: FormField + ?Sized>(field: &F, frame: &AdaptedFrame, fd: FiniteDiff) -> Result<Form<f64>> {
    if field.degree() == 0 {
        return Ok(Form::zero());
    }
    let starred = star(field);
    Ok(-hodge_star(&ext_d(&starred, frame, fd)?)?)
}

/// Divergence `δS = −Σ (∇_{e_k} S) e_k` of an endomorphism field.
pub fn divergence<F: EndoField + ?Sized>(field: &F, frame: &AdaptedFrame, fd: FiniteDiff) -> Result<Vector<f64>> {
    let mut out = Vector::zero();
    for k in 0..DIM {
        let nabla = covariant_d_endo(field, &Vector::basis(k), frame, fd)?;
        out = &out - &nabla.column(k);
    }
    Ok(out)
}

/// `Δf = δdf`, non-negative on the sphere.
pub fn laplacian_fn<F: FormField + ?Sized>(f: &F, frame: &AdaptedFrame, fd: FiniteDiff) -> Result<f64> {
    if f.degree() != 0 {
        return Err(Error::DegreeMismatch { expected: 0, found: f.degree() });
    }
    let df = super::field::d(f, fd);
    Ok(*codifferential(&df, frame, fd)?.coeff(crate::algebra::Blade::SCALAR))
}
