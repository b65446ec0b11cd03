//! Forms and endomorphism fields on S⁶, sampled in adapted frames.

use super::calculus::{codifferential, ext_d, FiniteDiff};
use super::frame::{structure_at, AdaptedFrame};
use crate::algebra::{hodge_star, Endo, Form};
use crate::error::Result;

/// A differential form of fixed degree, given by its components in the
/// adapted frame at each point.
pub trait FormField: Send + Sync {
    fn degree(&self) -> usize;
    fn eval(&self, frame: &AdaptedFrame) -> Result<Form<f64>>;
}

/// A field of tangent endomorphisms, as matrices in the adapted frame.
pub trait EndoField: Send + Sync {
    fn eval(&self, frame: &AdaptedFrame) -> Result<Endo<f64>>;
}

type FormFn<'a> = dyn Fn(&AdaptedFrame) -> Result<Form<f64>> + Send + Sync + 'a;
type EndoFn<'a> = dyn Fn(&AdaptedFrame) -> Result<Endo<f64>> + Send + Sync + 'a;

/// Closure-backed form field.
pub struct Field<'a> {
    degree: usize,
    f: Box<FormFn<'a>>,
}

impl<'a> Field<'a> {
    pub fn new(degree: usize, f: impl Fn(&AdaptedFrame) -> Result<Form<f64>> + Send + Sync + 'a) -> Self {
        Field { degree, f: Box::new(f) }
    }

    pub fn zero(degree: usize) -> Self {
        Field::new(degree, |_| Ok(Form::zero()))
    }

    /// Pointwise image under an algebraic operation.
    pub fn map<F: FormField + ?Sized>(
        inner: &'a F,
        degree: usize,
        g: impl Fn(&AdaptedFrame, Form<f64>) -> Result<Form<f64>> + Send + Sync + 'a,
    ) -> Self {
        Field::new(degree, move |fr| g(fr, inner.eval(fr)?))
    }
}

impl FormField for Field<'_> {
    fn degree(&self) -> usize {
        self.degree
    }
    fn eval(&self, frame: &AdaptedFrame) -> Result<Form<f64>> {
        (self.f)(frame)
    }
}

impl<T: FormField + ?Sized> FormField for &T {
    fn degree(&self) -> usize {
        (**self).degree()
    }
    fn eval(&self, frame: &AdaptedFrame) -> Result<Form<f64>> {
        (**self).eval(frame)
    }
}

pub struct EndoFieldFn<'a>(Box<EndoFn<'a>>);

impl<'a> EndoFieldFn<'a> {
    pub fn new(f: impl Fn(&AdaptedFrame) -> Result<Endo<f64>> + Send + Sync + 'a) -> Self {
        EndoFieldFn(Box::new(f))
    }
}

impl EndoField for EndoFieldFn<'_> {
    fn eval(&self, frame: &AdaptedFrame) -> Result<Endo<f64>> {
        (self.0)(frame)
    }
}

/// `dF`, evaluated by finite differences wherever sampled.
pub fn d<'a, F: FormField + ?Sized>(inner: &'a F, fd: FiniteDiff) -> Field<'a> {
    Field::new(inner.degree() + 1, move |fr| ext_d(inner, fr, fd))
}

/// `δF = −*d*F`
pub fn delta<'a, F: FormField + ?Sized>(inner: &'a F, fd: FiniteDiff) -> Field<'a> {
    Field::new(inner.degree().saturating_sub(1), move |fr| codifferential(inner, fr, fd))
}

pub fn star<'a, F: FormField + ?Sized>(inner: &'a F) -> Field<'a> {
    Field::map(inner, 6 - inner.degree(), |_, f| hodge_star(&f))
}

/// Which structure form to sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StructureForm {
    Omega,
    PsiPlus,
    PsiMinus,
}

/// The nearly Kähler forms of S⁶; `sign` multiplies the sampled form and is
/// only ever −1 for defect injection.
pub struct StructureField {
    pub which: StructureForm,
    pub sign: f64,
}

impl StructureField {
    pub fn new(which: StructureForm) -> Self {
        StructureField { which, sign: 1.0 }
    }
}

impl StructureField {
    pub fn eval_form(&self, frame: &AdaptedFrame) -> Result<Form<f64>> {
        FormField::eval(self, frame)
    }
}

impl FormField for StructureField {
    fn degree(&self) -> usize {
        match self.which {
            StructureForm::Omega => 2,
            _ => 3,
        }
    }
    fn eval(&self, frame: &AdaptedFrame) -> Result<Form<f64>> {
        let s = structure_at(frame);
        let f = match self.which {
            StructureForm::Omega => s.omega,
            StructureForm::PsiPlus => s.psi_plus,
            StructureForm::PsiMinus => s.psi_minus,
        };
        Ok(if self.sign == 1.0 { f } else { f.scale(&self.sign) })
    }
}
