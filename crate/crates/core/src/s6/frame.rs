//! Points, charts and J-adapted frames on the unit sphere S⁶ ⊂ R⁷.

use super::ambient::{associative, basis, cross, AmbientVector};
use crate::algebra::{Blade, Endo, Form, DIM};
use crate::error::{Error, Result};

/// Tangential norm below which a frame seed is considered degenerate.
const SEED_FLOOR: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpherePoint(AmbientVector);

impl SpherePoint {
    /// Normalises `v`; fails on (near) zero input.
    pub fn new(v: AmbientVector) -> Result<Self> {
        let n = v.norm();
        if !n.is_finite() || n < 1e-12 {
            return Err(Error::DegenerateFrame(format!("cannot normalise a vector of norm {n:e}")));
        }
        Ok(SpherePoint(v / n))
    }

    pub fn north_pole() -> Self {
        SpherePoint(basis(6))
    }

    pub fn position(&self) -> &AmbientVector {
        &self.0
    }

    /// Tangential part `v − ⟨v, p⟩ p`.
    pub fn project(&self, v: &AmbientVector) -> AmbientVector {
        v - self.0 * self.0.dot(v)
    }

    /// `J_p X = p × X`.
    pub fn j(&self, x: &AmbientVector) -> AmbientVector {
        cross(&self.0, x)
    }
}

/// Coordinate chart centred at a point, in adapted-frame coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Chart {
    /// `y ↦ √(1−|y|²) p + Σ yᵢ eᵢ`. Polynomial fields such as ω pull back
    /// to functions on which the central stencil is exact.
    #[default]
    Projection,
    /// Exponential map `y ↦ cos|y| p + sin|y|/|y| Σ yᵢ eᵢ`; truncation error
    /// is generically nonzero, so convergence orders are observable.
    Geodesic,
}

fn sinc(r: f64) -> f64 {
    if r < 1e-4 {
        1.0 - r * r / 6.0
    } else {
        r.sin() / r
    }
}

/// Orthonormal tangent frame at `p` with `e₂ = Je₁`, `e₄ = Je₃`, `e₆ = Je₅`.
///
/// The frame is a smooth function of the point for fixed seeds, which is what
/// finite differences across neighbouring points rely on.
#[derive(Debug, Clone, PartialEq)]
pub struct AdaptedFrame {
    point: SpherePoint,
    e: [AmbientVector; DIM],
    seeds: [AmbientVector; 2],
}

impl AdaptedFrame {
    /// Chooses seeds among the ambient basis vectors by largest tangential norm.
    pub fn at(point: SpherePoint) -> Result<Self> {
        let p = *point.position();
        let (i1, _) =
            (0..7)
                .map(|i| (i, point.project(&basis(i)).norm()))
                .fold((0, -1.0), |best, c| if c.1 > best.1 { c } else { best });
        let c1 = basis(i1);
        let e1 = point.project(&c1).normalize();
        let e2 = cross(&p, &e1);
        let (i3, _) = (0..7)
            .filter(|&i| i != i1)
            .map(|i| (i, Self::residual(&basis(i), &[p, e1, e2]).norm()))
            .fold((0, -1.0), |best, c| if c.1 > best.1 { c } else { best });
        Self::with_seeds(point, c1, basis(i3))
    }

    pub fn with_seeds(point: SpherePoint, c1: AmbientVector, c3: AmbientVector) -> Result<Self> {
        let p = *point.position();
        let v1 = point.project(&c1);
        if v1.norm() < SEED_FLOOR {
            return Err(Error::DegenerateFrame(format!("first seed nearly normal, |v₁| = {:e}", v1.norm())));
        }
        let e1 = v1.normalize();
        let e2 = cross(&p, &e1);
        let v3 = Self::residual(&c3, &[p, e1, e2]);
        if v3.norm() < SEED_FLOOR {
            return Err(Error::DegenerateFrame(format!("second seed degenerate, |v₃| = {:e}", v3.norm())));
        }
        let e3 = v3.normalize();
        let e4 = cross(&p, &e3);
        let e5 = cross(&e1, &e3);
        let e6 = cross(&p, &e5);
        Ok(AdaptedFrame { point, e: [e1, e2, e3, e4, e5, e6], seeds: [c1, c3] })
    }

    fn residual(v: &AmbientVector, against: &[AmbientVector]) -> AmbientVector {
        against.iter().fold(*v, |acc, u| acc - u * u.dot(&acc))
    }

    /// The frame at another point built from the same seeds.
    pub fn moved_to(&self, q: SpherePoint) -> Result<Self> {
        Self::with_seeds(q, self.seeds[0], self.seeds[1])
    }

    pub fn point(&self) -> &SpherePoint {
        &self.point
    }

    pub fn vectors(&self) -> &[AmbientVector; DIM] {
        &self.e
    }

    pub fn vector(&self, i: usize) -> &AmbientVector {
        &self.e[i]
    }

    /// Ambient vector with frame components `x`.
    pub fn to_ambient(&self, x: &[f64; DIM]) -> AmbientVector {
        (0..DIM).fold(AmbientVector::zeros(), |acc, i| acc + self.e[i] * x[i])
    }

    /// Frame components of the tangential part of `v`.
    pub fn components(&self, v: &AmbientVector) -> [f64; DIM] {
        std::array::from_fn(|i| self.e[i].dot(v))
    }

    /// Chart centred at this point, in frame coordinates; defined for |y| < 1.
    pub fn chart(&self, kind: Chart, y: &[f64; DIM]) -> Result<SpherePoint> {
        let r2: f64 = y.iter().map(|v| v * v).sum();
        if r2 >= 1.0 {
            return Err(Error::DegenerateFrame(format!("chart coordinates outside the unit ball, |y|² = {r2}")));
        }
        let p = self.point.position();
        let tangent = self.to_ambient(y);
        Ok(SpherePoint(match kind {
            Chart::Projection => (1.0 - r2).sqrt() * p + tangent,
            Chart::Geodesic => {
                let r = r2.sqrt();
                r.cos() * p + tangent * sinc(r)
            }
        }))
    }

    pub fn chart_inverse(&self, kind: Chart, q: &SpherePoint) -> [f64; DIM] {
        let y = self.components(q.position());
        match kind {
            Chart::Projection => y,
            Chart::Geodesic => {
                let s = y.iter().map(|v| v * v).sum::<f64>().sqrt();
                let r = s.atan2(q.position().dot(self.point.position()));
                let k = if s == 0.0 { 1.0 } else { r / s };
                y.map(|v| v * k)
            }
        }
    }

    /// Coordinate vectors `∂q/∂yᵢ` of the chart at `y`.
    pub fn chart_tangents(&self, kind: Chart, y: &[f64; DIM]) -> [AmbientVector; DIM] {
        let r2: f64 = y.iter().map(|v| v * v).sum();
        let p = self.point.position();
        match kind {
            Chart::Projection => {
                let s = (1.0 - r2).sqrt();
                std::array::from_fn(|i| self.e[i] - p * (y[i] / s))
            }
            Chart::Geodesic => {
                // q = cos r p + f(r) Y with f = sin r / r, g = f'(r) / r
                let r = r2.sqrt();
                let f = sinc(r);
                let g = if r < 0.05 {
                    -1.0 / 3.0 + r2 / 30.0 - r2 * r2 / 840.0
                } else {
                    (r * r.cos() - r.sin()) / (r2 * r)
                };
                let big_y = self.to_ambient(y);
                std::array::from_fn(|i| self.e[i] * f + big_y * (g * y[i]) - p * (f * y[i]))
            }
        }
    }

    /// `A[a][i] = ⟨eₐ(self), vᵢ⟩`: pulls frame coefficients back along `v`.
    pub fn transfer(&self, v: &[AmbientVector; DIM]) -> Endo<f64> {
        Endo::from_fn(|a, i| self.e[a].dot(&v[i]))
    }
}

/// `(J, ω, ψ⁺, ψ⁻)` at a point, in an adapted frame.
#[derive(Debug, Clone, PartialEq)]
pub struct PointStructure {
    pub j: Endo<f64>,
    pub omega: Form<f64>,
    pub psi_plus: Form<f64>,
    pub psi_minus: Form<f64>,
}

pub(crate) fn form_from_components(k: usize, f: impl Fn(&[usize]) -> f64) -> Form<f64> {
    Form::from_terms(Blade::of_degree(k).into_iter().map(|b| {
        let idx: Vec<usize> = b.indices().collect();
        (b, f(&idx))
    }))
}

/// Structure of the nearly Kähler S⁶ evaluated from the ambient cross product:
/// `J = p × ·`, `ω = g(J·,·)`, `ψ⁺ = φ|`, `ψ⁻(X,Y,Z) = −ψ⁺(JX,Y,Z)`.
pub fn structure_at(frame: &AdaptedFrame) -> PointStructure {
    let p = frame.point();
    let e = frame.vectors();
    let je: [AmbientVector; DIM] = std::array::from_fn(|i| p.j(&e[i]));
    PointStructure {
        j: Endo::from_fn(|i, k| e[i].dot(&je[k])),
        omega: form_from_components(2, |ix| je[ix[0]].dot(&e[ix[1]])),
        psi_plus: form_from_components(3, |ix| associative(&e[ix[0]], &e[ix[1]], &e[ix[2]])),
        psi_minus: form_from_components(3, |ix| -associative(&je[ix[0]], &e[ix[1]], &e[ix[2]])),
    }
}

#[cfg(test)]
mod tests {
    use super::super::ambient::random_unit;
    use super::*;
    use crate::algebra::{omega, psi_minus, psi_plus, random::seeded};

    #[test]
    fn frames_are_adapted_and_structure_is_normal() {
        let mut rng = seeded(3);
        for _ in 0..100 {
            let p = SpherePoint::new(random_unit(&mut rng)).unwrap();
            assert!((p.position().norm() - 1.0).abs() < 1e-14);
            let f = AdaptedFrame::at(p).unwrap();
            for i in 0..DIM {
                assert!(f.vector(i).dot(p.position()).abs() < 1e-13);
                for k in 0..DIM {
                    let want = if i == k { 1.0 } else { 0.0 };
                    assert!((f.vector(i).dot(f.vector(k)) - want).abs() < 1e-13);
                }
                // J² = −1
                assert!((p.j(&p.j(f.vector(i))) + f.vector(i)).norm() < 1e-13);
            }
            let s = structure_at(&f);
            assert!(s.j.approx_eq(&Endo::complex_structure(), 1e-13));
            assert!(s.omega.approx_eq(&omega(), 1e-12));
            assert!(s.psi_plus.approx_eq(&psi_plus(), 1e-12));
            assert!(s.psi_minus.approx_eq(&psi_minus(), 1e-12));
            assert!((s.psi_plus.norm_sq() - 4.0).abs() < 1e-12);
        }
    }

    #[test]
    fn chart_round_trip() {
        let mut rng = seeded(4);
        let f = AdaptedFrame::at(SpherePoint::new(random_unit(&mut rng)).unwrap()).unwrap();
        let y = [1e-3, -2e-3, 0.0, 5e-4, 3e-3, -1e-3];
        for kind in [Chart::Projection, Chart::Geodesic] {
            let q = f.chart(kind, &y).unwrap();
            assert!((q.position().norm() - 1.0).abs() < 1e-15);
            let back = f.chart_inverse(kind, &q);
            for i in 0..DIM {
                assert!((back[i] - y[i]).abs() < 1e-15);
            }
            assert!(f.chart(kind, &[1.0, 0.0, 0.0, 0.0, 0.0, 0.0]).is_err());
        }
    }

    #[test]
    fn chart_tangents_match_difference_quotients() {
        let mut rng = seeded(40);
        let f = AdaptedFrame::at(SpherePoint::new(random_unit(&mut rng)).unwrap()).unwrap();
        for kind in [Chart::Projection, Chart::Geodesic] {
            for y in [[0.0; DIM], [0.02, -0.01, 0.0, 0.03, 0.0, 0.01], [0.2, 0.1, -0.3, 0.0, 0.1, 0.0]] {
                let t = f.chart_tangents(kind, &y);
                for i in 0..DIM {
                    let eps = 1e-6;
                    let (mut a, mut b) = (y, y);
                    a[i] += eps;
                    b[i] -= eps;
                    let fd =
                        (f.chart(kind, &a).unwrap().position() - f.chart(kind, &b).unwrap().position()) / (2.0 * eps);
                    assert!((fd - t[i]).norm() < 1e-8, "{kind:?} {y:?} {i}");
                }
            }
        }
    }

    #[test]
    fn moved_frame_is_continuous() {
        let f = AdaptedFrame::at(SpherePoint::north_pole()).unwrap();
        let q = f.chart(Chart::Geodesic, &[1e-4, 0.0, 0.0, 0.0, 0.0, 0.0]).unwrap();
        let g = f.moved_to(q).unwrap();
        for i in 0..DIM {
            assert!((g.vector(i) - f.vector(i)).norm() < 1e-3);
        }
    }

    #[test]
    fn degenerate_input_is_rejected() {
        assert!(SpherePoint::new(AmbientVector::zeros()).is_err());
        let p = SpherePoint::north_pole();
        assert!(AdaptedFrame::with_seeds(p, basis(6), basis(0)).is_err());
    }
}
