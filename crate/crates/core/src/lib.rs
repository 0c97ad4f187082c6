//! Qubit group structure, chart embeddings of two-qubit registers and
//! density-matrix entanglement measures.

pub mod charts;
pub mod density;
pub mod error;
pub mod linalg;
pub mod qubit;
pub mod sampling;
pub mod sweep;

pub use charts::{
    bell_vector, canonical_chart, canonical_vector, phi, report, tensor_split, x_p_family,
    ChartEmbedding, ChartIndex, EntanglementReport, Quregister2, TensorSplit,
};
pub use density::{DensityMatrix, DensityMatrix2, DensityMatrix4, MixedState, Subsystem};
pub use error::{Error, Result};
pub use linalg::{c, cr, CMat, CMat2, CMat4, CVec, CVec2, CVec4, UnitComplex, C64};
pub use qubit::{embed_psi1, invert_psi1, Gate2, Qubit, SU2Matrix};
