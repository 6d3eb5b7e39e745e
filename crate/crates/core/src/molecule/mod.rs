//! Regular molecules in canonical form: constructors, traversal,
//! isomorphism, boundary and pasting inclusions, and collapse maps.

mod build;
mod collapse;
mod expr;
mod random;
mod traverse;

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use thiserror::Error;

use crate::ogposet::{El, GrSet, OgError, OgMap, OgPoset, Sign};

pub use build::{paste_along, paste_along_with_inclusions, Side};
pub use collapse::{unit_collapse, unitor_map, UnitorSide};
pub use expr::{parse_shape, ShapeExpr};
pub use random::{random_molecule, shuffle};
pub use traverse::{traverse, traverse_instrumented, TraversalStats};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShapeError {
    #[error("not round: {0}")]
    NotRound(String),
    #[error("dimension mismatch: {left} and {right}")]
    DimensionMismatch { left: isize, right: isize },
    #[error("boundaries do not match: {0}")]
    BoundaryMismatch(String),
    #[error("pasting dimension {k} out of range for dimensions {left} and {right}")]
    DimensionError { k: isize, left: isize, right: isize },
    #[error("not traversable: {0}")]
    NotTraversable(String),
    #[error("element {0} is out of range")]
    OutOfRange(El),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Og(#[from] OgError),
    #[error("parse error at column {col}: {msg}")]
    Parse { col: usize, msg: String },
}

/// How a molecule was built. Kept for display only: equality of
/// molecules ignores it.
#[derive(Debug, Clone)]
pub enum Construction {
    Empty,
    Point,
    Atom(Molecule, Molecule),
    Paste(Molecule, Molecule, usize),
    Boundary(Molecule, Sign, usize),
    PasteAlong { target: Molecule, source: Molecule, side: Side, k: usize, positions: Vec<usize> },
    Imported,
}

/// A regular molecule, stored in traversal order.
#[derive(Debug, Clone)]
pub struct Molecule {
    poset: Arc<OgPoset>,
    construction: Arc<Construction>,
}

impl PartialEq for Molecule {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.poset, &other.poset) || self.poset == other.poset
    }
}

impl Eq for Molecule {}

impl Hash for Molecule {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.poset.hash(state);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapKind {
    BoundaryInclusion,
    PasteInclusion,
    Isomorphism,
    Collapse,
}

/// A map between molecules.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShapeMap {
    pub source: Molecule,
    pub target: Molecule,
    pub map: OgMap,
    pub kind: MapKind,
}

impl ShapeMap {
    fn new(source: &Molecule, target: &Molecule, mapping: Vec<Vec<Option<El>>>, kind: MapKind) -> Self {
        ShapeMap {
            source: source.clone(),
            target: target.clone(),
            map: OgMap::new_unchecked(source.poset.clone(), target.poset.clone(), mapping),
            kind,
        }
    }

    pub fn apply(&self, el: El) -> El {
        self.map.apply(el)
    }
}

/// Positions of a traversal order, per dimension: `perm[n][old] = new`.
fn ordering(poset: &OgPoset) -> Result<Vec<Vec<usize>>, ShapeError> {
    let grorder = traverse::traverse_graded(poset)?;
    Ok(grorder
        .iter()
        .map(|order| {
            let mut perm = vec![0; order.len()];
            for (new, &old) in order.iter().enumerate() {
                perm[old] = new;
            }
            perm
        })
        .collect())
}

/// Reorders a molecule by its traversal order. Returns the canonical
/// poset and the permutation `perm[n][old] = new` realizing it.
pub fn canonicalize(poset: &OgPoset) -> Result<(OgPoset, Vec<Vec<usize>>), ShapeError> {
    let perm = ordering(poset)?;
    Ok((poset.reorder(&perm)?, perm))
}

/// The unique isomorphism between two molecules given in any
/// representation, if they are isomorphic.
pub fn isomorphism(p: &OgPoset, q: &OgPoset) -> Result<Option<OgMap>, ShapeError> {
    let (cp, perm_p) = canonicalize(p)?;
    let (cq, perm_q) = canonicalize(q)?;
    if cp != cq {
        return Ok(None);
    }
    let inverse_q: Vec<Vec<usize>> = perm_q
        .iter()
        .map(|perm| {
            let mut inv = vec![0; perm.len()];
            for (old, &new) in perm.iter().enumerate() {
                inv[new] = old;
            }
            inv
        })
        .collect();
    let mapping = perm_p
        .iter()
        .enumerate()
        .map(|(n, perm)| perm.iter().map(|&new| Some(El::new(n, inverse_q[n][new]))).collect())
        .collect();
    Ok(Some(OgMap::new_unchecked(Arc::new(p.clone()), Arc::new(q.clone()), mapping)))
}

/// A closed subset of a poset, restricted and put in traversal order.
/// `to_ambient[n][i]` is the ambient position of the `i`-th element.
struct CanonicalPiece {
    poset: OgPoset,
    to_ambient: Vec<Vec<usize>>,
}

fn canonical_piece(ambient: &OgPoset, support: &GrSet) -> Result<CanonicalPiece, ShapeError> {
    let (sub, embedding) = ambient.restrict(support);
    let grorder = traverse::traverse_graded(&sub)?;
    let perm = grorder
        .iter()
        .map(|order| {
            let mut perm = vec![0; order.len()];
            for (new, &old) in order.iter().enumerate() {
                perm[old] = new;
            }
            perm
        })
        .collect::<Vec<_>>();
    let poset = sub.reorder(&perm)?;
    let to_ambient = grorder
        .iter()
        .enumerate()
        .map(|(n, order)| order.iter().map(|&old| embedding[n][old]).collect())
        .collect();
    Ok(CanonicalPiece { poset, to_ambient })
}

impl Molecule {
    fn from_canonical(poset: OgPoset, construction: Construction) -> Self {
        Molecule { poset: Arc::new(poset), construction: Arc::new(construction) }
    }

    pub fn point() -> Self {
        Molecule::from_canonical(OgPoset::point(), Construction::Point)
    }

    /// The empty molecule, the boundary in dimension −1.
    pub fn empty() -> Self {
        Molecule::from_canonical(OgPoset::empty(), Construction::Empty)
    }

    pub fn arrow() -> Self {
        Molecule::atom(&Molecule::point(), &Molecule::point()).expect("points are round")
    }

    pub fn globe() -> Self {
        let a = Molecule::arrow();
        Molecule::atom(&a, &a).expect("arrow is round")
    }

    pub fn binary() -> Self {
        let a = Molecule::arrow();
        Molecule::atom(&Molecule::paste(&a, &a, 0).unwrap(), &a).expect("binary is well formed")
    }

    pub fn cobinary() -> Self {
        let a = Molecule::arrow();
        Molecule::atom(&a, &Molecule::paste(&a, &a, 0).unwrap()).expect("cobinary is well formed")
    }

    /// Imports a poset in any representation, returning the molecule and
    /// the isomorphism from the input onto it. Fails with `NotTraversable`
    /// on inputs that are not molecules.
    pub fn from_poset(poset: &OgPoset) -> Result<(Molecule, OgMap), ShapeError> {
        let (canonical, perm) = canonicalize(poset)?;
        let molecule = Molecule::from_canonical(canonical, Construction::Imported);
        let iso = OgMap::from_permutation(Arc::new(poset.clone()), molecule.poset.clone(), &perm);
        Ok((molecule, iso))
    }

    pub fn from_json(text: &str) -> Result<Molecule, ShapeError> {
        let poset = OgPoset::from_json(text)?;
        Ok(Molecule::from_poset(&poset)?.0)
    }

    pub fn poset(&self) -> &OgPoset {
        &self.poset
    }

    pub fn poset_arc(&self) -> &Arc<OgPoset> {
        &self.poset
    }

    pub fn construction(&self) -> &Construction {
        &self.construction
    }

    pub fn dim(&self) -> isize {
        self.poset.dim()
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub fn size(&self) -> Vec<usize> {
        self.poset.size()
    }

    /// The greatest element, if the molecule is an atom.
    pub fn top(&self) -> Option<El> {
        let maximal = self.poset.whole().maximal();
        if maximal.len() == 1 {
            maximal.iter().next()
        } else {
            None
        }
    }

    pub fn is_atom(&self) -> bool {
        self.top().is_some()
    }

    pub fn is_round(&self) -> bool {
        !self.is_empty() && self.poset.whole().is_round().unwrap_or(false)
    }

    pub fn to_json(&self) -> String {
        self.poset.to_json()
    }

    pub fn is_isomorphic(&self, other: &Molecule) -> Option<ShapeMap> {
        (self == other).then(|| ShapeMap {
            source: self.clone(),
            target: other.clone(),
            map: OgMap::identity(self.poset.clone()),
            kind: MapKind::Isomorphism,
        })
    }

    pub fn identity(&self) -> ShapeMap {
        self.is_isomorphic(self).expect("equal to itself")
    }

    /// A shape expression describing how the molecule was built.
    pub fn expr(&self) -> String {
        match &*self.construction {
            Construction::Empty => "empty".into(),
            Construction::Point => "point".into(),
            Construction::Atom(u, v) => {
                let (u, v) = (u.expr(), v.expr());
                match (u.as_str(), v.as_str()) {
                    ("point", "point") => "arrow".into(),
                    ("arrow", "arrow") => "globe".into(),
                    ("paste(arrow, arrow, 0)", "arrow") => "binary".into(),
                    ("arrow", "paste(arrow, arrow, 0)") => "cobinary".into(),
                    _ => format!("atom({u}, {v})"),
                }
            }
            Construction::Paste(u, v, k) => format!("paste({}, {}, {k})", u.expr(), v.expr()),
            Construction::Boundary(u, sign, k) => format!("boundary({}, {sign}, {k})", u.expr()),
            Construction::PasteAlong { target, source, side, k, positions } => {
                let list: Vec<String> = positions.iter().map(|p| p.to_string()).collect();
                format!("paste_along({}, {}, {side}, {k}, [{}])", target.expr(), source.expr(), list.join(", "))
            }
            Construction::Imported => "imported".into(),
        }
    }
}

impl fmt::Display for Molecule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.expr())
    }
}
