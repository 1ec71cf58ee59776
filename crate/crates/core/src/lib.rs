//! Exact computer algebra for vertex Lie algebras, their enveloping vertex
//! algebras, BRST reduction, torus-equivariant cohomology and operad
//! relation checking.

pub mod brst;
pub mod cli;
pub mod equivariant;
pub mod kernel;
pub mod operads;
pub mod vertex;
pub mod vla;
