//! Oriented graded posets, regular molecules in canonical form, and a
//! kernel for diagrammatic complexes with a small surface language.

pub mod bench;
pub mod dsl;
pub mod kernel;
pub mod lex;
pub mod molecule;
pub mod ogposet;
pub mod render;
