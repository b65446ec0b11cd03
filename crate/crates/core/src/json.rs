//! JSON encodings of forms, vectors, endomorphisms, deformation parameters
//! and jets.
//!
//! A form is `{"mode": "exact"|"float", "terms": [{"blade": "e135",
//! "coeff": …}, …]}`. Exact coefficients are strings `"p/q"` (plain
//! integers are also accepted on input); float coefficients are numbers.
//! Terms are written in ascending blade order with zero terms omitted, so
//! encoding is deterministic.

use serde_json::{json, Value};

use crate::algebra::{Blade, Endo, Form, ThreeFormParts, TwoFormParts, Vector, DIM};
use crate::deformation::{DeformationParams, Su3Jet};
use crate::error::{Error, Result};
use crate::scalar::{parse_rational, Mode, Rational, Scalar};

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

pub fn scalar_to_json<T: Scalar>(x: &T) -> Value {
    match T::MODE {
        Mode::Exact => Value::String(x.to_string()),
        Mode::Float => json!(x.to_f64_lossy()),
    }
}

pub fn scalar_from_json<T: Scalar>(v: &Value) -> Result<T> {
    match (T::MODE, v) {
        (Mode::Exact, Value::String(s)) => parse_rational(s)
            .map(|q| T::from_rational(&q))
            .ok_or_else(|| parse_err(format!("`{s}` is not a rational number"))),
        (Mode::Exact, Value::Number(n)) => n
            .as_i64()
            .map(T::from_int)
            .ok_or_else(|| parse_err(format!("exact coefficient {n} must be an integer or a \"p/q\" string"))),
        (Mode::Float, Value::Number(n)) => {
            n.as_f64().and_then(T::from_f64).ok_or_else(|| parse_err(format!("{n} is not a finite number")))
        }
        (Mode::Float, Value::String(s)) => {
            Err(parse_err(format!("float coefficient must be a number, got string `{s}`")))
        }
        (_, other) => Err(parse_err(format!("expected a coefficient, got {other}"))),
    }
}

fn mode_of(v: &Value) -> Result<Mode> {
    let s = v.get("mode").and_then(Value::as_str).ok_or_else(|| parse_err("form needs a string field `mode`"))?;
    s.parse().map_err(parse_err)
}

pub fn form_to_json<T: Scalar>(f: &Form<T>) -> Value {
    let terms: Vec<Value> =
        f.terms().map(|(b, c)| json!({"blade": b.to_string(), "coeff": scalar_to_json(c)})).collect();
    json!({"mode": T::MODE.as_str(), "terms": terms})
}

pub fn form_from_json<T: Scalar>(v: &Value) -> Result<Form<T>> {
    let mode = mode_of(v)?;
    if mode != T::MODE {
        return Err(Error::ModeMismatch { left: T::MODE, right: mode });
    }
    let terms =
        v.get("terms").and_then(Value::as_array).ok_or_else(|| parse_err("form needs an array field `terms`"))?;
    let mut out = Form::zero();
    let mut seen = [false; 1 << DIM];
    for t in terms {
        let blade: Blade = t
            .get("blade")
            .and_then(Value::as_str)
            .ok_or_else(|| parse_err("term needs a string field `blade`"))?
            .parse()?;
        if std::mem::replace(&mut seen[blade.index()], true) {
            return Err(parse_err(format!("blade {blade} listed twice")));
        }
        let coeff = t.get("coeff").ok_or_else(|| parse_err("term needs a field `coeff`"))?;
        out.set(blade, scalar_from_json(coeff)?);
    }
    Ok(out)
}

fn list_to_json<T: Scalar>(xs: &[T]) -> Value {
    Value::Array(xs.iter().map(scalar_to_json).collect())
}

fn list_from_json<T: Scalar>(v: &Value, len: usize, what: &str) -> Result<Vec<T>> {
    let arr = v.as_array().ok_or_else(|| parse_err(format!("{what} must be an array")))?;
    if arr.len() != len {
        return Err(parse_err(format!("{what} needs {len} entries, got {}", arr.len())));
    }
    arr.iter().map(scalar_from_json).collect()
}

pub fn vector_to_json<T: Scalar>(x: &Vector<T>) -> Value {
    list_to_json(x.components())
}

pub fn vector_from_json<T: Scalar>(v: &Value) -> Result<Vector<T>> {
    let xs: Vec<T> = list_from_json(v, DIM, "vector")?;
    Ok(Vector::from_fn(|i| xs[i].clone()))
}

/// Row-major, 36 entries.
pub fn endo_to_json<T: Scalar>(m: &Endo<T>) -> Value {
    list_to_json(&m.to_row_major())
}

pub fn endo_from_json<T: Scalar>(v: &Value) -> Result<Endo<T>> {
    let xs: Vec<T> = list_from_json(v, DIM * DIM, "endomorphism")?;
    Ok(Endo::from_row_major(&xs).expect("length checked"))
}

fn field<'a>(v: &'a Value, name: &str) -> Result<&'a Value> {
    v.get(name).ok_or_else(|| parse_err(format!("missing field `{name}`")))
}

pub fn params_to_json<T: Scalar>(p: &DeformationParams<T>) -> Value {
    json!({
        "xi": vector_to_json(&p.xi),
        "S": endo_to_json(&p.s),
        "phi": form_to_json(&p.phi),
        "mu": scalar_to_json(&p.mu),
    })
}

/// Parses and validates (`S ∈ Sym⁻`, `φ` a `J`-invariant 2-form).
pub fn params_from_json<T: Scalar>(v: &Value) -> Result<DeformationParams<T>> {
    let p = DeformationParams {
        xi: vector_from_json(field(v, "xi")?)?,
        s: endo_from_json(field(v, "S")?)?,
        phi: form_from_json(field(v, "phi")?)?,
        mu: scalar_from_json(field(v, "mu")?)?,
    };
    p.validate()?;
    Ok(p)
}

pub fn jet_to_json<T: Scalar>(j: &Su3Jet<T>) -> Value {
    json!({
        "gDot": endo_to_json(&j.g_dot),
        "JDot": endo_to_json(&j.j_dot),
        "omegaDot": form_to_json(&j.omega_dot),
        "psiPDot": form_to_json(&j.psi_plus_dot),
        "psiMDot": form_to_json(&j.psi_minus_dot),
    })
}

pub fn jet_from_json<T: Scalar>(v: &Value) -> Result<Su3Jet<T>> {
    Ok(Su3Jet {
        g_dot: endo_from_json(field(v, "gDot")?)?,
        j_dot: endo_from_json(field(v, "JDot")?)?,
        omega_dot: form_from_json(field(v, "omegaDot")?)?,
        psi_plus_dot: form_from_json(field(v, "psiPDot")?)?,
        psi_minus_dot: form_from_json(field(v, "psiMDot")?)?,
    })
}

pub fn two_form_parts_to_json<T: Scalar>(p: &TwoFormParts<T>, residual: f64) -> Value {
    json!({
        "phi0": form_to_json(&p.phi0),
        "c": scalar_to_json(&p.c),
        "xi": vector_to_json(&p.xi),
        "residual": residual,
    })
}

pub fn three_form_parts_to_json<T: Scalar>(p: &ThreeFormParts<T>, residual: f64) -> Value {
    json!({
        "alpha": vector_to_json(&p.alpha),
        "lambda": scalar_to_json(&p.lambda),
        "mu": scalar_to_json(&p.mu),
        "S": endo_to_json(&p.s),
        "residual": residual,
    })
}

pub fn anti_endo_parts_to_json<T: Scalar>(s: &Endo<T>, xi: &Vector<T>, residual: f64) -> Value {
    json!({"S": endo_to_json(s), "xi": vector_to_json(xi), "residual": residual})
}

/// A form whose numeric mode is known only at run time.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyForm {
    Exact(Form<Rational>),
    Float(Form<f64>),
}

impl AnyForm {
    pub fn mode(&self) -> Mode {
        match self {
            AnyForm::Exact(_) => Mode::Exact,
            AnyForm::Float(_) => Mode::Float,
        }
    }

    pub fn from_value(v: &Value) -> Result<Self> {
        match mode_of(v)? {
            Mode::Exact => form_from_json(v).map(AnyForm::Exact),
            Mode::Float => form_from_json(v).map(AnyForm::Float),
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(s).map_err(|e| parse_err(e.to_string()))?;
        AnyForm::from_value(&v)
    }

    pub fn to_value(&self) -> Value {
        match self {
            AnyForm::Exact(f) => form_to_json(f),
            AnyForm::Float(f) => form_to_json(f),
        }
    }

    pub fn to_json(&self) -> String {
        self.to_value().to_string()
    }

    /// Applies a binary operation to two forms of the same mode.
    pub fn zip_with(
        &self,
        other: &AnyForm,
        exact: impl FnOnce(&Form<Rational>, &Form<Rational>) -> Result<Form<Rational>>,
        float: impl FnOnce(&Form<f64>, &Form<f64>) -> Result<Form<f64>>,
    ) -> Result<AnyForm> {
        match (self, other) {
            (AnyForm::Exact(a), AnyForm::Exact(b)) => exact(a, b).map(AnyForm::Exact),
            (AnyForm::Float(a), AnyForm::Float(b)) => float(a, b).map(AnyForm::Float),
            (a, b) => Err(Error::ModeMismatch { left: a.mode(), right: b.mode() }),
        }
    }

    pub fn wedge(&self, other: &AnyForm) -> Result<AnyForm> {
        self.zip_with(other, |a, b| Ok(a.wedge(b)), |a, b| Ok(a.wedge(b)))
    }

    pub fn add(&self, other: &AnyForm) -> Result<AnyForm> {
        self.zip_with(other, |a, b| Ok(a + b), |a, b| Ok(a + b))
    }

    /// `⟨a, b⟩` as a float (exact values are converted after computing).
    pub fn inner(&self, other: &AnyForm) -> Result<f64> {
        match (self, other) {
            (AnyForm::Exact(a), AnyForm::Exact(b)) => Ok(a.inner(b).to_f64_lossy()),
            (AnyForm::Float(a), AnyForm::Float(b)) => Ok(a.inner(b)),
            (a, b) => Err(Error::ModeMismatch { left: a.mode(), right: b.mode() }),
        }
    }

    pub fn map(
        &self,
        exact: impl FnOnce(&Form<Rational>) -> Result<Form<Rational>>,
        float: impl FnOnce(&Form<f64>) -> Result<Form<f64>>,
    ) -> Result<AnyForm> {
        match self {
            AnyForm::Exact(f) => exact(f).map(AnyForm::Exact),
            AnyForm::Float(f) => float(f).map(AnyForm::Float),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{omega, psi_plus, random};
    use crate::deformation::params_to_jet;

    #[test]
    fn exact_form_round_trip() {
        let f = psi_plus::<Rational>().scale(&Rational::ratio(-3, 4));
        let v = form_to_json(&f);
        assert_eq!(v["terms"][0], json!({"blade": "e135", "coeff": "-3/4"}));
        assert_eq!(form_from_json::<Rational>(&v).unwrap(), f);
    }

    #[test]
    fn integer_numbers_are_exact_coefficients() {
        let v = json!({"mode": "exact", "terms": [{"blade": "e12", "coeff": 2}, {"blade": "e", "coeff": "1/3"}]});
        let f: Form<Rational> = form_from_json(&v).unwrap();
        assert_eq!(
            f,
            Form::from_terms([
                ("e12".parse().unwrap(), Rational::from_int(2)),
                ("e".parse().unwrap(), Rational::ratio(1, 3)),
            ])
        );
    }

    #[test]
    fn malformed_input_is_rejected() {
        for bad in [
            r#"{"mode":"exact","terms":[{"blade":"e17","coeff":"1"}]}"#,
            r#"{"mode":"exact","terms":[{"blade":"e21","coeff":"1"}]}"#,
            r#"{"mode":"exact","terms":[{"blade":"e12","coeff":"1/0"}]}"#,
            r#"{"mode":"exact","terms":[{"blade":"e12","coeff":0.5}]}"#,
            r#"{"mode":"float","terms":[{"blade":"e12","coeff":"1"}]}"#,
            r#"{"mode":"exact","terms":[{"blade":"e12","coeff":"1"},{"blade":"e12","coeff":"2"}]}"#,
            r#"{"mode":"complex","terms":[]}"#,
            r#"{"terms":[]}"#,
            r#"not json"#,
        ] {
            assert!(matches!(AnyForm::parse(bad), Err(Error::Parse(_))), "{bad}");
        }
    }

    #[test]
    fn mode_mismatch_is_reported() {
        let a = AnyForm::Exact(omega());
        let b = AnyForm::Float(omega());
        assert_eq!(a.wedge(&b), Err(Error::ModeMismatch { left: Mode::Exact, right: Mode::Float }));
        let v = form_to_json(&omega::<f64>());
        assert!(matches!(form_from_json::<Rational>(&v), Err(Error::ModeMismatch { .. })));
    }

    #[test]
    fn params_and_jets_round_trip() {
        let mut rng = random::seeded(8);
        let p = DeformationParams::<Rational> {
            xi: random::vector(&mut rng),
            s: random::sym_minus(&mut rng),
            phi: random::one_one_form(&mut rng),
            mu: Rational::ratio(5, 7),
        };
        let back: DeformationParams<Rational> = params_from_json(&params_to_json(&p)).unwrap();
        assert_eq!(back, p);
        let jet = params_to_jet(&p).unwrap();
        assert_eq!(jet_from_json::<Rational>(&jet_to_json(&jet)).unwrap(), jet);

        let pf = DeformationParams::<f64> {
            xi: random::vector(&mut rng),
            s: random::sym_minus(&mut rng),
            phi: random::one_one_form(&mut rng),
            mu: 0.25,
        };
        assert_eq!(params_from_json::<f64>(&params_to_json(&pf)).unwrap(), pf);
    }

    #[test]
    fn invalid_params_are_rejected() {
        let mut v = params_to_json(&DeformationParams::<f64>::zero());
        v["S"][0] = json!(1.0);
        assert!(matches!(params_from_json::<f64>(&v), Err(Error::NotInDomain { .. })));
    }
}
