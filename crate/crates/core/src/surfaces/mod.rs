//! Flat surfaces built from polygons and pole parts, construction
//! certificates and their independent verification.

pub mod builders;
pub mod certificate;
pub mod draw;
pub mod geometry;
pub mod piece;
pub mod surface;
pub mod witness;

pub use certificate::{
    apply_surgery, blow_up_zero, rotation_number, sew_handle, verify_certificate, verify_stable, CertificateBase,
    CertificateError, ConstructionCertificate, GenusOneFamily, RotationClaim, StableGluing, Surgery,
};
pub use draw::render_svg;
pub use piece::{residue_of_piece, Piece, PieceError};
pub use surface::{
    verify_surface, vertex_orbits, FlatSurface, PoleRecord, Profile, SlotRef, SurfaceError, VertexOrbit, ANGLE_TOLERANCE,
};
pub use witness::{build_witness, build_witness_with_budget, build_witness_with_rotation, WitnessError};
