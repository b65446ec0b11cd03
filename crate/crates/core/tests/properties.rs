//! Algebraic invariants as properties over small exact rationals.

use graykit::algebra::{
    bidegrees, decompose_anti_endo, decompose_three_form, decompose_two_form, endo_act, hodge_star, lambda_contract,
    lefschetz, omega, project_component, psi_plus_endo, sym_minus_from_coords, type_project, volume, Blade, Component,
    Endo, Form, Vector,
};
use graykit::deformation::{check_jet_consistency, jet_to_params, params_to_jet, DeformationParams};
use graykit::json::{form_from_json, form_to_json, jet_from_json, jet_to_json, params_from_json, params_to_json};
use graykit::{Rational, Scalar};
use proptest::prelude::*;

type Q = Rational;

fn rational() -> impl Strategy<Value = Q> {
    (-12i64..=12, 1i64..=6).prop_map(|(n, d)| Q::ratio(n, d))
}

fn form(k: usize) -> impl Strategy<Value = Form<Q>> {
    let blades = Blade::of_degree(k);
    prop::collection::vec(rational(), blades.len()).prop_map(move |c| Form::from_terms(blades.iter().copied().zip(c)))
}

fn vector() -> impl Strategy<Value = Vector<Q>> {
    prop::collection::vec(rational(), 6).prop_map(|c| Vector::from_fn(|i| c[i].clone()))
}

fn endo() -> impl Strategy<Value = Endo<Q>> {
    prop::collection::vec(rational(), 36).prop_map(|c| Endo::from_row_major(&c).unwrap())
}

fn sym_minus() -> impl Strategy<Value = Endo<Q>> {
    prop::collection::vec(rational(), 12).prop_map(|c| sym_minus_from_coords(&c))
}

fn params() -> impl Strategy<Value = DeformationParams<Q>> {
    (vector(), sym_minus(), form(2), rational()).prop_map(|(xi, s, raw, mu)| DeformationParams {
        xi,
        s,
        phi: type_project(&raw, 1, 1).unwrap(),
        mu,
    })
}

fn degree_and_form() -> impl Strategy<Value = (usize, Form<Q>)> {
    (0usize..=6).prop_flat_map(|k| form(k).prop_map(move |f| (k, f)))
}

fn sign(n: usize) -> Q {
    if n.is_multiple_of(2) {
        Q::from_int(1)
    } else {
        Q::from_int(-1)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn wedge_is_graded_commutative(((p, a), (q, b)) in (degree_and_form(), degree_and_form())) {
        prop_assert_eq!(a.wedge(&b), b.wedge(&a).scale(&sign(p * q)));
    }

    #[test]
    fn contraction_is_an_antiderivation(x in vector(), a in form(2), b in form(3)) {
        let lhs = a.wedge(&b).interior(&x);
        let rhs = &a.interior(&x).wedge(&b) + &a.wedge(&b.interior(&x));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn hodge_star_squares_to_sign_and_defines_inner((k, a) in degree_and_form()) {
        let star = hodge_star(&a).unwrap();
        prop_assert_eq!(hodge_star(&star).unwrap(), a.scale(&sign(k * (6 - k))));
        prop_assert_eq!(star.inner(&star), a.inner(&a));
        // a ∧ *a = |a|² dv
        prop_assert_eq!(a.wedge(&star), volume::<Q>().scale(&a.inner(&a)));
    }

    #[test]
    fn lambda_is_adjoint_to_lefschetz(a in form(2), b in form(4)) {
        prop_assert_eq!(lefschetz(&a).inner(&b), a.inner(&lambda_contract(&b)));
    }

    #[test]
    fn type_projectors_resolve_the_identity((k, a) in degree_and_form()) {
        let mut sum = Form::zero();
        for (p, q) in bidegrees(k) {
            let part = type_project(&a, p, q).unwrap();
            prop_assert_eq!(type_project(&part, p, q).unwrap(), part.clone());
            sum = &sum + &part;
        }
        prop_assert_eq!(sum, a);
    }

    #[test]
    fn irreducible_summands_are_orthogonal_and_complete(a in form(2), u in form(3)) {
        for (x, comps) in [(a, Component::ALL_TWO), (u, Component::ALL_THREE)] {
            let parts: Vec<_> = comps.iter().map(|&c| project_component(&x, c).unwrap()).collect();
            for (i, pi) in parts.iter().enumerate() {
                prop_assert_eq!(project_component(pi, comps[i]).unwrap(), pi.clone());
                for pj in &parts[i + 1..] {
                    prop_assert_eq!(pi.inner(pj), Q::from_int(0));
                }
            }
            let total = parts.iter().fold(Form::zero(), |s, p| &s + p);
            prop_assert_eq!(total, x);
        }
    }

    #[test]
    fn two_forms_recompose(a in form(2)) {
        let parts = decompose_two_form(&a).unwrap();
        prop_assert_eq!(parts.c.clone(), a.inner(&omega()) / Q::from_int(3));
        prop_assert!(lambda_contract(&parts.phi0).is_zero());
        prop_assert_eq!(parts.recompose(), a);
    }

    #[test]
    fn three_forms_recompose(u in form(3)) {
        let parts = decompose_three_form(&u).unwrap();
        prop_assert_eq!(parts.recompose(), u);
    }

    #[test]
    fn anti_commuting_endos_split(s in sym_minus(), xi in vector()) {
        let f = &s + &psi_plus_endo(&xi);
        prop_assert!(f.anticommutes_with_j(0.0));
        let (s2, xi2) = decompose_anti_endo(&f).unwrap();
        prop_assert_eq!(s2, s);
        prop_assert_eq!(xi2, xi);
    }

    #[test]
    fn endo_action_is_a_derivation(m in endo(), a in form(1), b in form(2)) {
        let lhs = endo_act(&m, &a.wedge(&b));
        let rhs = &endo_act(&m, &a).wedge(&b) + &a.wedge(&endo_act(&m, &b));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn params_and_jets_round_trip(p in params()) {
        let jet = params_to_jet(&p).unwrap();
        prop_assert!(jet.j_dot.anticommutes_with_j(0.0));
        prop_assert!(jet.g_dot.is_symmetric(0.0));
        prop_assert_eq!(check_jet_consistency(&jet).max(), 0.0);
        prop_assert_eq!(jet_to_params(&jet).unwrap(), p);
    }

    #[test]
    fn jets_are_linear_in_params(p in params(), q in params(), a in rational(), b in rational()) {
        let lhs = params_to_jet(&p.combine(&a, &q, &b)).unwrap();
        let (jp, jq) = (params_to_jet(&p).unwrap(), params_to_jet(&q).unwrap());
        let mut omega_dot = jp.omega_dot.scale(&a);
        omega_dot.add_scaled(&b, &jq.omega_dot);
        let mut psi_plus_dot = jp.psi_plus_dot.scale(&a);
        psi_plus_dot.add_scaled(&b, &jq.psi_plus_dot);
        prop_assert_eq!(lhs.omega_dot, omega_dot);
        prop_assert_eq!(lhs.psi_plus_dot, psi_plus_dot);
        prop_assert_eq!(lhs.j_dot, &jp.j_dot.scale(&a) + &jq.j_dot.scale(&b));
    }

    #[test]
    fn json_round_trips((_, a) in degree_and_form(), p in params()) {
        prop_assert_eq!(form_from_json::<Q>(&form_to_json(&a)).unwrap(), a);
        prop_assert_eq!(params_from_json::<Q>(&params_to_json(&p)).unwrap(), p.clone());
        let jet = params_to_jet(&p).unwrap();
        prop_assert_eq!(jet_from_json::<Q>(&jet_to_json(&jet)).unwrap(), jet);
    }
}
