//! Real Fourier representation of mean-zero scalar fields on the torus,
//! with Biot-Savart, the Navier-Stokes bilinear term, weighted norms and
//! spectral projections.

pub mod engine;
pub mod field;
pub mod lattice;
pub mod ops;

pub use engine::Workspace;
pub use field::{CoeffRow, FieldHeader, VelocityField, VorticityField};
pub use lattice::{is_plus, perp, Lattice, ModeSign, PlusMode};
pub use ops::{
    bilinear_b, biot_savart, linearized_b, project, with_workspace, KernelScratch, ProjectPart,
    StateGrids,
};
