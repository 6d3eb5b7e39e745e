use serde::{Deserialize, Serialize};

use super::{Closed, El, GrSet, OgError, Sign};

/// Input and output adjacency of one element, indexed by [`Sign::index`].
pub type FacePair = [Vec<usize>; 2];

/// `data[n][k]` holds the adjacency of element `(n, k)`.
pub type FaceData = Vec<Vec<FacePair>>;

/// A finite oriented graded poset stored as face and coface adjacency lists
/// per dimension.
///
/// Faces of an `n`-dimensional element always live in dimension `n − 1`,
/// which makes every stored poset graded by construction. Construction
/// validates eagerly; there is no way to obtain an `OgPoset` with
/// inconsistent data.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "FaceDataRepr", into = "FaceDataRepr")]
pub struct OgPoset {
    faces: FaceData,
    cofaces: FaceData,
}

#[derive(Serialize, Deserialize)]
struct FaceDataRepr {
    face_data: FaceData,
}

impl TryFrom<FaceDataRepr> for OgPoset {
    type Error = OgError;

    fn try_from(repr: FaceDataRepr) -> Result<Self, Self::Error> {
        OgPoset::from_face_data(repr.face_data)
    }
}

impl From<OgPoset> for FaceDataRepr {
    fn from(p: OgPoset) -> Self {
        FaceDataRepr { face_data: p.faces }
    }
}

impl OgPoset {
    /// Validates `face_data` and computes the transposed coface data.
    pub fn from_face_data(face_data: FaceData) -> Result<Self, OgError> {
        if matches!(face_data.last(), Some(stratum) if stratum.is_empty()) {
            return Err(OgError::MalformedData("trailing empty stratum".into()));
        }
        for (n, stratum) in face_data.iter().enumerate() {
            let below = if n == 0 { 0 } else { face_data[n - 1].len() };
            for (k, pair) in stratum.iter().enumerate() {
                let el = El::new(n, k);
                for sign in Sign::BOTH {
                    let list = &pair[sign.index()];
                    if list.windows(2).any(|w| w[0] >= w[1]) {
                        return Err(OgError::MalformedData(format!(
                            "face list of {el} is not strictly sorted"
                        )));
                    }
                    if let Some(&j) = list.iter().find(|&&j| j >= below) {
                        return Err(OgError::MalformedData(format!(
                            "face {j} of {el} is out of range"
                        )));
                    }
                }
                if pair[0].iter().any(|j| pair[1].binary_search(j).is_ok()) {
                    return Err(OgError::MalformedData(format!(
                        "input and output faces of {el} overlap"
                    )));
                }
                if n > 0 && pair[0].is_empty() && pair[1].is_empty() {
                    return Err(OgError::NotGraded(el));
                }
            }
        }
        let cofaces = transpose(&face_data);
        Ok(OgPoset { faces: face_data, cofaces })
    }

    pub fn empty() -> Self {
        OgPoset { faces: Vec::new(), cofaces: Vec::new() }
    }

    pub fn point() -> Self {
        OgPoset::from_face_data(vec![vec![[vec![], vec![]]]]).expect("point is valid")
    }

    pub fn face_data(&self) -> &FaceData {
        &self.faces
    }

    pub fn coface_data(&self) -> &FaceData {
        &self.cofaces
    }

    pub fn into_face_data(self) -> FaceData {
        self.faces
    }

    /// −1 for the empty poset.
    pub fn dim(&self) -> isize {
        self.faces.len() as isize - 1
    }

    /// Number of elements in each dimension.
    pub fn size(&self) -> Vec<usize> {
        self.faces.iter().map(Vec::len).collect()
    }

    pub fn stratum_len(&self, dim: usize) -> usize {
        self.faces.get(dim).map_or(0, Vec::len)
    }

    pub fn len(&self) -> usize {
        self.faces.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    /// Number of Hasse edges between dimension `dim` and `dim − 1`.
    pub fn edges_in_dim(&self, dim: usize) -> usize {
        self.faces
            .get(dim)
            .map_or(0, |s| s.iter().map(|p| p[0].len() + p[1].len()).sum())
    }

    pub fn num_edges(&self) -> usize {
        (0..self.faces.len()).map(|n| self.edges_in_dim(n)).sum()
    }

    pub fn contains(&self, el: El) -> bool {
        el.pos < self.stratum_len(el.dim)
    }

    pub fn check_el(&self, el: El) -> Result<(), OgError> {
        if self.contains(el) {
            Ok(())
        } else {
            Err(OgError::OutOfRange(el))
        }
    }

    /// Positions of the faces of `el` with the given orientation.
    /// Panics if `el` is out of range.
    pub fn faces(&self, el: El, sign: Sign) -> &[usize] {
        &self.faces[el.dim][el.pos][sign.index()]
    }

    /// Positions of the cofaces of `el` with the given orientation.
    /// Panics if `el` is out of range.
    pub fn cofaces(&self, el: El, sign: Sign) -> &[usize] {
        &self.cofaces[el.dim][el.pos][sign.index()]
    }

    pub fn all_faces(&self, el: El) -> impl Iterator<Item = El> + '_ {
        let below = el.dim.wrapping_sub(1);
        Sign::BOTH
            .into_iter()
            .flat_map(move |s| self.faces(el, s).iter().map(move |&j| El::new(below, j)))
    }

    pub fn has_cofaces(&self, el: El) -> bool {
        let pair = &self.cofaces[el.dim][el.pos];
        !pair[0].is_empty() || !pair[1].is_empty()
    }

    /// All elements in ascending order.
    pub fn elements(&self) -> impl Iterator<Item = El> + '_ {
        self.faces
            .iter()
            .enumerate()
            .flat_map(|(n, s)| (0..s.len()).map(move |k| El::new(n, k)))
    }

    pub fn all(&self) -> GrSet {
        GrSet::from_strata(self.faces.iter().map(|s| (0..s.len()).collect()).collect())
    }

    /// The whole poset as a closed subset of itself.
    pub fn whole(&self) -> Closed<'_> {
        Closed::new_unchecked(self.all(), self)
    }

    /// The smallest closed subset containing `set`.
    pub fn closure(&self, set: &GrSet) -> Result<Closed<'_>, OgError> {
        if let Some(el) = set.iter().find(|&el| !self.contains(el)) {
            return Err(OgError::OutOfRange(el));
        }
        Ok(Closed::new_unchecked(self.closure_of(set), self))
    }

    pub fn closure_of_el(&self, el: El) -> Result<Closed<'_>, OgError> {
        self.closure(&GrSet::singleton(el))
    }

    /// Downward closure of an in-range set.
    pub(crate) fn closure_of(&self, set: &GrSet) -> GrSet {
        let Ok(top) = usize::try_from(set.dim()) else {
            return GrSet::new();
        };
        let mut strata: Vec<Vec<usize>> = set.strata().to_vec();
        for n in (1..=top).rev() {
            let mut below: Vec<usize> = strata[n]
                .iter()
                .flat_map(|&k| {
                    let pair = &self.faces[n][k];
                    pair[0].iter().chain(pair[1].iter()).copied()
                })
                .collect();
            below.extend_from_slice(&strata[n - 1]);
            below.sort_unstable();
            below.dedup();
            strata[n - 1] = below;
        }
        GrSet::from_strata(strata)
    }

    /// Whether `set` is downward closed.
    pub fn is_closed(&self, set: &GrSet) -> bool {
        set.iter()
            .filter(|el| el.dim > 0)
            .all(|el| self.all_faces(el).all(|f| set.contains(f)))
    }

    /// Renumbers elements: `perm[n][old] = new`. Each `perm[n]` must be a
    /// permutation of `0..|P_n|`.
    pub fn reorder(&self, perm: &[Vec<usize>]) -> Result<OgPoset, OgError> {
        if perm.len() != self.faces.len()
            || perm.iter().zip(&self.faces).any(|(p, s)| !is_permutation(p, s.len()))
        {
            return Err(OgError::MalformedData("reordering is not a permutation".into()));
        }
        let mut faces: FaceData = self
            .faces
            .iter()
            .map(|s| vec![[Vec::new(), Vec::new()]; s.len()])
            .collect();
        for (n, stratum) in self.faces.iter().enumerate() {
            for (k, pair) in stratum.iter().enumerate() {
                let target = &mut faces[n][perm[n][k]];
                for sign in Sign::BOTH {
                    let mut list: Vec<usize> =
                        pair[sign.index()].iter().map(|&j| perm[n - 1][j]).collect();
                    list.sort_unstable();
                    target[sign.index()] = list;
                }
            }
        }
        OgPoset::from_face_data(faces)
    }

    /// The sub-poset on a closed subset, with elements kept in ascending
    /// order. Returns the poset and, per dimension, the ambient position of
    /// each new position.
    pub fn restrict(&self, closed: &GrSet) -> (OgPoset, Vec<Vec<usize>>) {
        let embedding: Vec<Vec<usize>> = closed.strata().to_vec();
        let index = |n: usize, k: usize| -> usize {
            embedding[n].binary_search(&k).expect("subset is closed")
        };
        let faces: FaceData = embedding
            .iter()
            .enumerate()
            .map(|(n, positions)| {
                positions
                    .iter()
                    .map(|&k| {
                        let pair = &self.faces[n][k];
                        [
                            pair[0].iter().map(|&j| index(n - 1, j)).collect(),
                            pair[1].iter().map(|&j| index(n - 1, j)).collect(),
                        ]
                    })
                    .collect()
            })
            .collect();
        let cofaces = transpose(&faces);
        (OgPoset { faces, cofaces }, embedding)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("face data serializes")
    }

    pub fn from_json(text: &str) -> Result<OgPoset, OgError> {
        serde_json::from_str(text).map_err(|e| OgError::Json(e.to_string()))
    }
}

fn is_permutation(p: &[usize], n: usize) -> bool {
    if p.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    p.iter().all(|&i| i < n && !std::mem::replace(&mut seen[i], true))
}

fn transpose(faces: &FaceData) -> FaceData {
    let mut cofaces: FaceData = faces
        .iter()
        .map(|s| vec![[Vec::new(), Vec::new()]; s.len()])
        .collect();
    for (n, stratum) in faces.iter().enumerate().skip(1) {
        for (k, pair) in stratum.iter().enumerate() {
            for sign in Sign::BOTH {
                for &j in &pair[sign.index()] {
                    cofaces[n - 1][j][sign.index()].push(k);
                }
            }
        }
    }
    // positions are pushed in increasing k, so every list is already sorted
    cofaces
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(i: &[usize], o: &[usize]) -> FacePair {
        [i.to_vec(), o.to_vec()]
    }

    pub(crate) fn whisker() -> OgPoset {
        OgPoset::from_face_data(vec![
            vec![pair(&[], &[]); 4],
            vec![pair(&[0], &[1]), pair(&[1], &[2]), pair(&[2], &[3]), pair(&[0], &[2])],
            vec![pair(&[0, 1], &[3])],
        ])
        .unwrap()
    }

    #[test]
    fn whisker_cofaces_match_printed_table() {
        let w = whisker();
        let expected = vec![
            vec![pair(&[0, 3], &[]), pair(&[1], &[0]), pair(&[2], &[1, 3]), pair(&[], &[2])],
            vec![pair(&[0], &[]), pair(&[0], &[]), pair(&[], &[]), pair(&[], &[0])],
            vec![pair(&[], &[])],
        ];
        assert_eq!(w.coface_data(), &expected);
        assert_eq!(w.size(), vec![4, 4, 1]);
        assert_eq!(w.num_edges(), 11);
    }

    #[test]
    fn point_and_arrow() {
        let p = OgPoset::point();
        assert_eq!(p.dim(), 0);
        assert_eq!(p.len(), 1);
        let arrow =
            OgPoset::from_face_data(vec![vec![pair(&[], &[]); 2], vec![pair(&[0], &[1])]]).unwrap();
        assert_eq!(arrow.cofaces(El::new(0, 0), Sign::Input), &[0]);
        assert_eq!(arrow.cofaces(El::new(0, 1), Sign::Output), &[0]);
        assert!(arrow.cofaces(El::new(0, 0), Sign::Output).is_empty());
    }

    #[test]
    fn rejects_malformed_data() {
        let unsorted = vec![vec![pair(&[], &[]); 2], vec![pair(&[1, 0], &[])]];
        assert!(matches!(OgPoset::from_face_data(unsorted), Err(OgError::MalformedData(_))));
        let out_of_range = vec![vec![pair(&[], &[])], vec![pair(&[0], &[1])]];
        assert!(matches!(OgPoset::from_face_data(out_of_range), Err(OgError::MalformedData(_))));
        let overlap = vec![vec![pair(&[], &[])], vec![pair(&[0], &[0])]];
        assert!(matches!(OgPoset::from_face_data(overlap), Err(OgError::MalformedData(_))));
        let ungraded = vec![vec![pair(&[], &[])], vec![pair(&[], &[])]];
        assert_eq!(OgPoset::from_face_data(ungraded), Err(OgError::NotGraded(El::new(1, 0))));
        let point_with_face = vec![vec![pair(&[0], &[])]];
        assert!(OgPoset::from_face_data(point_with_face).is_err());
        let trailing = vec![vec![pair(&[], &[])], vec![]];
        assert!(OgPoset::from_face_data(trailing).is_err());
    }

    #[test]
    fn json_round_trip_and_rejection() {
        let w = whisker();
        let text = w.to_json();
        assert_eq!(
            text,
            r#"{"face_data":[[[[],[]],[[],[]],[[],[]],[[],[]]],[[[0],[1]],[[1],[2]],[[2],[3]],[[0],[2]]],[[[0,1],[3]]]]}"#
        );
        assert_eq!(OgPoset::from_json(&text).unwrap(), w);
        assert!(OgPoset::from_json(r#"{"face_data":[[[[],[]]],[[[0],[0]]]]}"#).is_err());
    }

    #[test]
    fn restrict_and_reorder() {
        let w = whisker();
        let cl = w.closure_of(&GrSet::singleton(El::new(2, 0)));
        let (sub, emb) = w.restrict(&cl);
        assert_eq!(sub.size(), vec![3, 3, 1]);
        assert_eq!(emb[1], vec![0, 1, 3]);
        let perm = vec![vec![3, 2, 1, 0], vec![1, 0, 3, 2], vec![0]];
        let r = w.reorder(&perm).unwrap();
        assert_eq!(r.size(), w.size());
        assert_ne!(r, w);
        assert!(w.reorder(&[vec![0, 0, 1, 2], vec![0, 1, 2, 3], vec![0]]).is_err());
    }
}
