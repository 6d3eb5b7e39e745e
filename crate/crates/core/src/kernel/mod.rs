//! Diagrammatic complexes as contexts, labelled molecules as terms and
//! morphisms of complexes as substitutions. Every value is checked when
//! it is built, so a [`Diagram`] in hand is always well formed.

mod codec;
mod diagram;
mod diagset;
mod morphism;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::molecule::ShapeError;
use crate::ogposet::OgError;

pub use codec::{decode, encode};
pub use diagram::Diagram;
pub use diagset::{AmbientId, DiagSet, GeneratorDecl};
pub use morphism::Morphism;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error("the name {0} is already in use")]
    DuplicateName(String),
    #[error("not round: {0}")]
    NotRound(String),
    #[error("type mismatch: {0}")]
    TypeMismatch(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("diagrams live in different complexes")]
    AmbientMismatch,
    #[error("pasting dimension {k} out of range for dimensions {left} and {right}")]
    DimensionError { k: isize, left: isize, right: isize },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("no assignment for generator {0}")]
    MissingAssignment(String),
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
    #[error("ill-formed term: {0}")]
    IllFormedTerm(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Shape(ShapeError),
}

impl From<OgError> for KernelError {
    fn from(e: OgError) -> Self {
        KernelError::Shape(ShapeError::Og(e))
    }
}

impl From<ShapeError> for KernelError {
    fn from(e: ShapeError) -> Self {
        match e {
            ShapeError::NotRound(s) => KernelError::NotRound(s),
            ShapeError::BoundaryMismatch(s) => KernelError::TypeMismatch(s),
            ShapeError::DimensionMismatch { left, right } => {
                KernelError::TypeMismatch(format!("dimensions {left} and {right} differ"))
            }
            ShapeError::DimensionError { k, left, right } => KernelError::DimensionError { k, left, right },
            ShapeError::Unsupported(s) => KernelError::Unsupported(s),
            other => KernelError::Shape(other),
        }
    }
}

/// A generator name together with the dimension of its shape.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label {
    name: Arc<str>,
    dim: usize,
}

impl Label {
    pub(crate) fn new(name: Arc<str>, dim: usize) -> Self {
        Label { name, dim }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}
