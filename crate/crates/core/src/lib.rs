//! Information-flow analysis for measurement-based quantum computation on
//! stabilizer resource states: influence/gauge/correction matrices, gauge
//! transformations, plane flips, local complementation, closed-timelike-curve
//! removal and a small state-vector simulator for checking it all.
#![no_std]

extern crate alloc;

pub mod ctc;
pub mod flow;
pub mod gf2;
pub mod sim;
pub mod stabilizer;
pub mod transforms;

pub use gf2::{BitMatrix, BitVec, LinalgError};
pub use stabilizer::{
    Axis, GeneratorMatrix, Letter, MeasurementPlane, Pattern, PauliWord, Qubit, QubitSet, Source,
    StabilizerError,
};
