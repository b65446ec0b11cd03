//! Hodge star, the contraction `Λ`, the induced action of endomorphisms on
//! forms, and the projectors onto the `J`-types `Λ^{(p,q)+(q,p)}`.

use super::blade::{Blade, DIM};
use super::form::Form;
use super::linear::{Endo, Vector};
use super::structure::omega;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Hodge star, defined by `a ∧ *b = ⟨a, b⟩ dv` with `dv = e123456`.
pub fn hodge_star<T: Scalar>(a: &Form<T>) -> Result<Form<T>> {
    a.degree()?;
    let mut out = Form::zero();
    for (b, c) in a.terms() {
        let comp = b.complement();
        let sign = Blade::wedge_sign(b, comp).expect("complement is disjoint");
        out.set(comp, if sign > 0 { c.clone() } else { -c.clone() });
    }
    Ok(out)
}

/// `L(a) = ω ∧ a`
pub fn lefschetz<T: Scalar>(a: &Form<T>) -> Form<T> {
    omega::<T>().wedge(a)
}

/// `Λ = ½ Σ_i Je_i ⌟ e_i ⌟`, the metric adjoint of [`lefschetz`].
pub fn lambda_contract<T: Scalar>(a: &Form<T>) -> Form<T> {
    let mut out = Form::zero();
    for i in 0..DIM {
        let inner = a.interior_basis(i);
        if inner.is_zero() {
            continue;
        }
        // J e_{2k-1} = e_{2k}, J e_{2k} = -e_{2k-1}
        let (partner, sign) = if i % 2 == 0 { (i + 1, 1) } else { (i - 1, -1) };
        out.add_scaled(&T::from_int(sign), &inner.interior_basis(partner));
    }
    out.scale(&T::ratio(1, 2))
}

/// `A⋆u = −Σ_i Aᵀ(e_i) ∧ (e_i ⌟ u)`: the derivation induced by `A`, with
/// `(A⋆u)(X_1, …, X_p) = −Σ u(…, A X_i, …)`.
pub fn endo_act<T: Scalar>(a: &Endo<T>, u: &Form<T>) -> Form<T> {
    let at = a.transpose();
    let mut out = Form::zero();
    for i in 0..DIM {
        let inner = u.interior_basis(i);
        if inner.is_zero() {
            continue;
        }
        let col = at.column(i);
        if col.is_zero() {
            continue;
        }
        out.add_scaled(&-T::one(), &col.to_form().wedge(&inner));
    }
    out
}

/// All bidegrees `(p, q)` with `p ≥ q` and `p + q = k` that occur in `Λ^k`.
pub fn bidegrees(k: usize) -> Vec<(usize, usize)> {
    (0..=k)
        .filter_map(|q| {
            let p = k.checked_sub(q)?;
            (p >= q && p <= 3).then_some((p, q))
        })
        .collect()
}

/// Eigenvalue `−(p−q)²` of `J⋆∘J⋆` on `Λ^{(p,q)+(q,p)}`. `J⋆` itself is
/// skew and acts there with eigenvalues `±i(p−q)`, e.g. `J⋆ψ⁺ = 3ψ⁻`.
pub fn j_eigenvalue(p: usize, q: usize) -> i64 {
    let d = p as i64 - q as i64;
    -d * d
}

fn validate_bidegree(p: usize, q: usize) -> Result<()> {
    if p > 3 || q > 3 || p + q > DIM {
        return Err(Error::InvalidBidegree { p, q });
    }
    Ok(())
}

/// Projection onto `Λ^{(p,q)+(q,p)}`, the `(J⋆)²` eigenspace for `−(p−q)²`.
///
/// Built as the Lagrange polynomial in `(J⋆)²` over the eigenvalues occurring
/// in degree `p + q`, so it is exact in rational mode.
pub fn type_project<T: Scalar>(a: &Form<T>, p: usize, q: usize) -> Result<Form<T>> {
    validate_bidegree(p, q)?;
    let k = p + q;
    a.require_degree(k)?;
    let target = j_eigenvalue(p, q);
    let j = Endo::<T>::complex_structure();
    let mut out = a.clone();
    for (pp, qq) in bidegrees(k) {
        let other = j_eigenvalue(pp, qq);
        if other == target {
            continue;
        }
        // out ← ((J⋆)² − other)·out / (target − other)
        let mut next = endo_act(&j, &endo_act(&j, &out));
        next.add_scaled(&T::from_int(-other), &out);
        out = next.scale(&T::ratio(1, target - other));
    }
    Ok(out)
}

/// Finer summands of `Λ²` and `Λ³` beyond the `J`-types.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Component {
    /// `Λ^{(1,1)}_0`, primitive `J`-invariant 2-forms.
    PrimitiveOneOne,
    /// `Rω`
    OmegaLine,
    /// `Λ^{(2,0)+(0,2)} = {ξ ⌟ ψ⁺}`
    XiPsi,
    /// `Λ^1 ∧ ω` in degree 3.
    AlphaOmega,
    /// `Λ^{(3,0)+(0,3)} = span{ψ⁺, ψ⁻}`
    PsiPlane,
    /// `Λ^{(2,1)+(1,2)}_0 = {S⋆ψ⁺ : S ∈ Sym⁻}`
    PrimitiveTwoOne,
}

impl Component {
    pub fn degree(self) -> usize {
        match self {
            Component::PrimitiveOneOne | Component::OmegaLine | Component::XiPsi => 2,
            _ => 3,
        }
    }

    pub const ALL_TWO: [Component; 3] = [Component::PrimitiveOneOne, Component::OmegaLine, Component::XiPsi];
    pub const ALL_THREE: [Component; 3] = [Component::AlphaOmega, Component::PsiPlane, Component::PrimitiveTwoOne];
}

/// Orthogonal projection onto one of the irreducible summands of `Λ²` or `Λ³`.
pub fn project_component<T: Scalar>(a: &Form<T>, which: Component) -> Result<Form<T>> {
    a.require_degree(which.degree())?;
    let w = omega::<T>();
    Ok(match which {
        Component::OmegaLine => w.scale(&(a.inner(&w) / T::from_int(3))),
        Component::PrimitiveOneOne => {
            let inv = type_project(a, 1, 1)?;
            &inv - &project_component(a, Component::OmegaLine)?
        }
        Component::XiPsi => type_project(a, 2, 0)?,
        Component::AlphaOmega => {
            let alpha = Vector::from_form(&lambda_contract(a)).scale(&T::ratio(1, 2));
            alpha.to_form().wedge(&w)
        }
        Component::PsiPlane => type_project(a, 3, 0)?,
        Component::PrimitiveTwoOne => {
            let mixed = type_project(a, 2, 1)?;
            &mixed - &project_component(a, Component::AlphaOmega)?
        }
    })
}
