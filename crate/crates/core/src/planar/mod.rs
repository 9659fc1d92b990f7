//! Embedded maximal planar graphs: the rotation-system model, validation,
//! face tracing, reducibility and the document format.

mod document;
mod graph;
mod reduce;
mod validate;

pub use document::{load_rotation_system, parse_rotation_system, serialize, DocumentError};
pub use graph::{trace_faces, Face, PlanarTriangulation, RotationSystem, VertexId};
pub(crate) use reduce::eliminate;
pub use reduce::{reducibility_check, Reducibility};
pub use validate::{face_walks, validate_triangulation, Advisory, ValidationReport, Violation};
