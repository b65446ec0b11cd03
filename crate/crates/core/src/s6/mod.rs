//! The round unit S⁶ with its nearly Kähler structure from the octonionic
//! cross product, and finite-difference verification of the Gray system.

mod ambient;
mod calculus;
mod deform;
mod field;
mod frame;
mod verify;

pub use ambient::{associative, basis as ambient_basis, cross, random_unit, AmbientForm, AmbientVector};
pub use calculus::{
    codifferential, covariant_d, covariant_d_endo, divergence, ext_d, laplacian_fn, FiniteDiff, Linear,
};
pub use deform::{xi_from_cross, SphereDeformation};
pub use field::{d, delta, star, EndoField, EndoFieldFn, Field, FormField, StructureField, StructureForm};
pub use frame::{structure_at, AdaptedFrame, Chart, PointStructure, SpherePoint};
pub use verify::{
    deformation_probe_singular_values, sample_frames, verify_cl_identities, verify_cl_identities_for, verify_gray,
    verify_gray_with, verify_linearized, verify_linearized_basis, verify_spectral, ClFields, Defect, CL_TOL,
    COCLOSED_TOL, FD_TOL, ORDER_BAND, ORDER_FLOOR, POINTWISE_TOL, RANK_RATIO_TOL, SPECTRAL_TOL,
};
