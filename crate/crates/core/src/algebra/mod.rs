//! Exterior algebra of `R^6` with its standard SU(3) structure.

mod blade;
mod decompose;
mod form;
mod linear;
mod operators;
pub mod random;
mod structure;

pub use blade::{Blade, BLADE_COUNT, DIM};
pub(crate) use decompose::scaled_tol;
pub use decompose::{
    alpha_map, decompose_anti_endo, decompose_anti_endo_with_tol, decompose_three_form, decompose_three_form_with_tol,
    decompose_two_form, form_to_sym_minus, form_to_sym_minus_with_tol, sym_minus_basis, sym_minus_coords,
    sym_minus_from_coords, sym_minus_gram, sym_minus_iso_matrix, sym_minus_to_form, ThreeFormParts, TwoFormParts,
    FLOAT_TOL,
};
pub use form::{contract, inner, wedge, Form};
pub use linear::{Endo, Vector};
pub use operators::{
    bidegrees, endo_act, hodge_star, j_eigenvalue, lambda_contract, lefschetz, project_component, type_project,
    Component,
};
pub use structure::{
    omega, psi_minus, psi_plus, psi_plus_endo, skew_endo_from_two_form, sym_plus_to_two_form, two_form_entry,
    two_form_from_endo, two_form_to_sym_plus, volume, Psi, StandardStructure,
};
