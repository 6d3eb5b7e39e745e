use std::fmt;
use std::sync::Arc;

use crate::ogposet::{pushout, El, GrSet, OgMap, OgPoset, Pushout, Sign};

use super::{canonical_piece, canonicalize, Construction, MapKind, Molecule, ShapeError, ShapeMap};

/// Which boundary of the target a molecule is glued onto.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    /// Glue the output boundary of the source onto part of the input
    /// boundary of the target.
    Inputs,
    /// Glue the input boundary of the source onto part of the output
    /// boundary of the target.
    Outputs,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Inputs => "inputs",
            Side::Outputs => "outputs",
        })
    }
}

/// Matches two closed subsets by their canonical forms. Returns, for each
/// element of `u` in `su`, the corresponding position in `v`.
fn match_pieces(
    u: &OgPoset,
    su: &GrSet,
    v: &OgPoset,
    sv: &GrSet,
    what: &str,
) -> Result<Vec<Vec<Option<usize>>>, ShapeError> {
    let pu = canonical_piece(u, su)?;
    let pv = canonical_piece(v, sv)?;
    if pu.poset != pv.poset {
        return Err(ShapeError::BoundaryMismatch(what.into()));
    }
    let mut matching: Vec<Vec<Option<usize>>> = u.size().into_iter().map(|n| vec![None; n]).collect();
    for (n, (a, b)) in pu.to_ambient.iter().zip(&pv.to_ambient).enumerate() {
        for (&i, &j) in a.iter().zip(b) {
            matching[n][i] = Some(j);
        }
    }
    Ok(matching)
}

fn merge(into: &mut [Vec<Option<usize>>], from: &[Vec<Option<usize>>]) -> Result<(), ShapeError> {
    for (a, b) in into.iter_mut().zip(from) {
        for (x, y) in a.iter_mut().zip(b) {
            match (*x, *y) {
                (Some(p), Some(q)) if p != q => {
                    return Err(ShapeError::BoundaryMismatch("boundary isomorphisms disagree".into()))
                }
                (None, Some(_)) => *x = *y,
                _ => {}
            }
        }
    }
    Ok(())
}

/// Pushout of `support ⊆ u` against its image in `v` under `matching`.
fn glue(
    u: &Arc<OgPoset>,
    support: &GrSet,
    v: &Arc<OgPoset>,
    matching: &[Vec<Option<usize>>],
) -> Result<Pushout, ShapeError> {
    let (sub, embedding) = u.restrict(support);
    let sub = Arc::new(sub);
    let into_u = embedding
        .iter()
        .enumerate()
        .map(|(n, s)| s.iter().map(|&k| Some(El::new(n, k))).collect())
        .collect();
    let into_v = embedding
        .iter()
        .enumerate()
        .map(|(n, s)| s.iter().map(|&k| matching[n][k].map(|j| El::new(n, j))).collect())
        .collect();
    let m = OgMap::new_unchecked(sub.clone(), u.clone(), into_u);
    let n = OgMap::new_unchecked(sub, v.clone(), into_v);
    Ok(pushout(&m, &n)?)
}

/// Canonicalizes a glued poset and transports the legs along.
fn finish(
    glued: &OgPoset,
    construction: Construction,
    legs: [(&Molecule, &OgMap); 2],
    kind: MapKind,
) -> Result<(Molecule, ShapeMap, ShapeMap), ShapeError> {
    let (canonical, perm) = canonicalize(glued)?;
    let result = Molecule::from_canonical(canonical, construction);
    let [a, b] = legs.map(|(source, leg)| {
        let mapping = leg
            .mapping()
            .iter()
            .map(|s| s.iter().map(|e| e.map(|e| El::new(e.dim, perm[e.dim][e.pos]))).collect())
            .collect();
        ShapeMap::new(source, &result, mapping, kind)
    });
    Ok((result, a, b))
}

fn boundary_support(m: &Molecule, sign: Sign, k: usize) -> GrSet {
    m.poset().whole().boundary(Some(sign), Some(k as isize)).into_support()
}

impl Molecule {
    /// The atom with input boundary `u` and output boundary `v`.
    pub fn atom(u: &Molecule, v: &Molecule) -> Result<Molecule, ShapeError> {
        Ok(Molecule::atom_with_inclusions(u, v)?.0)
    }

    /// The atom `u ⇒ v` together with the inclusions of `u` and `v` as
    /// its input and output boundary.
    pub fn atom_with_inclusions(u: &Molecule, v: &Molecule) -> Result<(Molecule, ShapeMap, ShapeMap), ShapeError> {
        if u.dim() != v.dim() {
            return Err(ShapeError::DimensionMismatch { left: u.dim(), right: v.dim() });
        }
        for m in [u, v] {
            if !m.is_round() {
                return Err(ShapeError::NotRound(m.expr()));
            }
        }
        let n = u.dim() as usize;
        let mut matching: Vec<Vec<Option<usize>>> = u.size().into_iter().map(|s| vec![None; s]).collect();
        let mut sphere = GrSet::new();
        if n > 0 {
            for sign in Sign::BOTH {
                let su = boundary_support(u, sign, n - 1);
                let sv = boundary_support(v, sign, n - 1);
                let what = format!("{sign}-boundaries of {u} and {v}");
                merge(&mut matching, &match_pieces(u.poset(), &su, v.poset(), &sv, &what)?)?;
                sphere = sphere.union(&su);
            }
        }
        let glued = glue(u.poset_arc(), &sphere, v.poset_arc(), &matching)?;
        let mut faces = glued.poset.face_data().clone();
        let top = |leg: &OgMap, m: &Molecule| -> Vec<usize> {
            let mut list: Vec<usize> = (0..m.poset().stratum_len(n)).map(|k| leg.apply(El::new(n, k)).pos).collect();
            list.sort_unstable();
            list
        };
        faces.push(vec![[top(&glued.left, u), top(&glued.right, v)]]);
        let poset = OgPoset::from_face_data(faces)?;
        let left = OgMap::new_unchecked(u.poset_arc().clone(), Arc::new(poset.clone()), glued.left.mapping().to_vec());
        let right = OgMap::new_unchecked(v.poset_arc().clone(), Arc::new(poset.clone()), glued.right.mapping().to_vec());
        finish(
            &poset,
            Construction::Atom(u.clone(), v.clone()),
            [(u, &left), (v, &right)],
            MapKind::BoundaryInclusion,
        )
    }

    /// `u ∘ₖ v`.
    pub fn paste(u: &Molecule, v: &Molecule, k: usize) -> Result<Molecule, ShapeError> {
        Ok(Molecule::paste_with_inclusions(u, v, k)?.0)
    }

    /// `u ∘ₖ v` with `k = min(dim u, dim v) − 1`.
    pub fn paste_default(u: &Molecule, v: &Molecule) -> Result<Molecule, ShapeError> {
        let k = u.dim().min(v.dim()) - 1;
        let k = usize::try_from(k).map_err(|_| ShapeError::DimensionError { k, left: u.dim(), right: v.dim() })?;
        Molecule::paste(u, v, k)
    }

    pub fn paste_with_inclusions(
        u: &Molecule,
        v: &Molecule,
        k: usize,
    ) -> Result<(Molecule, ShapeMap, ShapeMap), ShapeError> {
        if k as isize >= u.dim().min(v.dim()) {
            return Err(ShapeError::DimensionError { k: k as isize, left: u.dim(), right: v.dim() });
        }
        let su = boundary_support(u, Sign::Output, k);
        let sv = boundary_support(v, Sign::Input, k);
        let what = format!("output {k}-boundary of {u} and input {k}-boundary of {v}");
        let matching = match_pieces(u.poset(), &su, v.poset(), &sv, &what)?;
        let glued = glue(u.poset_arc(), &su, v.poset_arc(), &matching)?;
        finish(
            &glued.poset,
            Construction::Paste(u.clone(), v.clone(), k),
            [(u, &glued.left), (v, &glued.right)],
            MapKind::PasteInclusion,
        )
    }

    /// The `k`-boundary of the given orientation, as a molecule.
    pub fn boundary(&self, sign: Sign, k: isize) -> Molecule {
        self.boundary_inclusion(sign, k).source
    }

    /// The `k`-boundary with its inclusion. `k ≤ −1` gives the empty
    /// molecule and `k ≥ dim` the molecule itself.
    pub fn boundary_inclusion(&self, sign: Sign, k: isize) -> ShapeMap {
        if k < 0 {
            let empty = Molecule::empty();
            return ShapeMap::new(&empty, self, Vec::new(), MapKind::BoundaryInclusion);
        }
        if k >= self.dim() {
            let mut id = self.identity();
            id.kind = MapKind::BoundaryInclusion;
            return id;
        }
        let support = boundary_support(self, sign, k as usize);
        let piece = canonical_piece(self.poset(), &support).expect("boundaries of molecules are molecules");
        let boundary = Molecule::from_canonical(piece.poset, Construction::Boundary(self.clone(), sign, k as usize));
        let mapping = piece
            .to_ambient
            .iter()
            .enumerate()
            .map(|(n, s)| s.iter().map(|&j| Some(El::new(n, j))).collect())
            .collect();
        ShapeMap::new(&boundary, self, mapping, MapKind::BoundaryInclusion)
    }

    /// Boundary of dimension `dim − 1`.
    pub fn input(&self) -> Molecule {
        self.boundary(Sign::Input, self.dim() - 1)
    }

    pub fn output(&self) -> Molecule {
        self.boundary(Sign::Output, self.dim() - 1)
    }
}

/// Glues `source` onto the closure of the given `k`-dimensional elements
/// of a boundary of `target`. With [`Side::Outputs`] the region must lie in
/// the output `k`-boundary of `target` and match the input `k`-boundary of
/// `source`; [`Side::Inputs`] is dual. `k` defaults to
/// `min(dim target, dim source) − 1`. Taking `k = dim target` below the
/// dimension of `source` glues onto the target itself, as in rewriting.
pub fn paste_along(
    target: &Molecule,
    positions: &[usize],
    source: &Molecule,
    side: Side,
    k: Option<usize>,
) -> Result<Molecule, ShapeError> {
    Ok(paste_along_with_inclusions(target, positions, source, side, k)?.0)
}

/// [`paste_along`] together with the inclusions of both pieces.
pub fn paste_along_with_inclusions(
    target: &Molecule,
    positions: &[usize],
    source: &Molecule,
    side: Side,
    k: Option<usize>,
) -> Result<(Molecule, ShapeMap, ShapeMap), ShapeError> {
    let low = target.dim().min(source.dim());
    let k = match k {
        Some(k) => k as isize,
        None => low - 1,
    };
    if k < 0 || k >= source.dim() || k > target.dim() {
        return Err(ShapeError::DimensionError { k, left: target.dim(), right: source.dim() });
    }
    let k = k as usize;
    let (t_sign, s_sign) = match side {
        Side::Outputs => (Sign::Output, Sign::Input),
        Side::Inputs => (Sign::Input, Sign::Output),
    };
    let region_boundary = boundary_support(target, t_sign, k);
    if positions.is_empty() {
        return Err(ShapeError::NotRound("empty region".into()));
    }
    let mut top = GrSet::new();
    for &pos in positions {
        let el = El::new(k, pos);
        if !region_boundary.contains(el) {
            return Err(ShapeError::OutOfRange(el));
        }
        top.insert(el);
    }
    let region = target.poset().closure(&top)?;
    let round = region.is_round()?;
    let region = region.into_support();
    if !round {
        return Err(ShapeError::NotRound(format!("region {region}")));
    }
    let s_boundary = boundary_support(source, s_sign, k);
    let what = format!("region and {}put {k}-boundary of {source}", if s_sign == Sign::Input { "in" } else { "out" });
    let matching = match match_pieces(target.poset(), &region, source.poset(), &s_boundary, &what) {
        Err(ShapeError::NotTraversable(_)) => return Err(ShapeError::NotRound(format!("region {region}"))),
        other => other?,
    };
    let glued = glue(target.poset_arc(), &region, source.poset_arc(), &matching)?;
    let construction =
        Construction::PasteAlong { target: target.clone(), source: source.clone(), side, k, positions: positions.to_vec() };
    finish(
        &glued.poset,
        construction,
        [(target, &glued.left), (source, &glued.right)],
        MapKind::PasteInclusion,
    )
}
