//! Realizability of residues of meromorphic Abelian differentials.
//!
//! The crate decides whether a tuple of residues is attained in a stratum
//! `ΩM_g(a_1,…,a_n; -b_1,…,-b_p; (-1^s))`, builds explicit flat surfaces
//! witnessing positive answers and verifies them independently.

pub mod decide;
pub mod gauss;
pub mod graphs;
pub mod residues;
pub mod stratum;
pub mod surfaces;

pub use decide::{
    primitive_tuples,
    decide_cylinder_tuple, decide_realizable, enumerate_excluded_rays, BuilderHint, CircumferenceTuple, CylinderError,
    CylinderOutcome, DecideError, Reason, Verdict,
};
pub use gauss::GaussianRational;
pub use residues::{
    collinear_normal_form, validate_residues, CollinearClass, NormalFormError, PrimitiveRay, ResidueTuple,
    ResidueViolation,
};
pub use stratum::{validate_stratum, StratumSignature, StratumViolation};
pub use surfaces::{
    blow_up_zero, build_witness, build_witness_with_rotation, residue_of_piece, sew_handle, verify_certificate,
    verify_surface, ConstructionCertificate, FlatSurface, Piece, Profile, WitnessError,
};
