//! Oriented graded posets and the operations that do not depend on any
//! special property of regular molecules: closed subsets, boundaries,
//! roundness, maps, pushouts of inclusions, and a brute-force isomorphism
//! search used as an oracle.

mod closed;
mod grset;
mod iso;
mod map;
mod poset;
mod pushout;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use closed::{Closed, RoundnessWitness};
pub use grset::GrSet;
pub use iso::{all_maps, brute_force_iso, digraph_incidence, search_maps};
pub use map::{check_map, OgMap};
pub use poset::{FaceData, FacePair, OgPoset};
pub use pushout::{pushout, Pushout};

/// An element of an oriented graded poset, addressed by dimension and by
/// position within its dimension. Ordered lexicographically by `(dim, pos)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct El {
    pub dim: usize,
    pub pos: usize,
}

impl El {
    pub const fn new(dim: usize, pos: usize) -> Self {
        El { dim, pos }
    }
}

impl fmt::Display for El {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.dim, self.pos)
    }
}

/// Orientation of a Hasse edge: input (`-`) or output (`+`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sign {
    Input,
    Output,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Input, Sign::Output];

    pub const fn index(self) -> usize {
        match self {
            Sign::Input => 0,
            Sign::Output => 1,
        }
    }

    pub const fn flip(self) -> Sign {
        match self {
            Sign::Input => Sign::Output,
            Sign::Output => Sign::Input,
        }
    }

    pub const fn symbol(self) -> char {
        match self {
            Sign::Input => '-',
            Sign::Output => '+',
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OgError {
    #[error("malformed face data: {0}")]
    MalformedData(String),
    #[error("element {0} has positive dimension but no faces")]
    NotGraded(El),
    #[error("element {0} is out of range")]
    OutOfRange(El),
    #[error("the subset is empty")]
    EmptySubset,
    #[error("not a map: boundary condition fails at {el} for n = {n}, sign {sign}")]
    NotAMap { el: El, n: usize, sign: Sign },
    #[error("not a map: defined at {el} but not at its face {face}")]
    UndefinedFace { el: El, face: El },
    #[error("target of the first map differs from the source of the second")]
    SourceTargetMismatch,
    #[error("expected a total injective map")]
    NotInclusion,
    #[error("the two maps of the span have different sources")]
    SourceMismatch,
    #[error("edge {0} is a loop")]
    LoopEdge(usize),
    #[error("invalid JSON shape: {0}")]
    Json(String),
}
