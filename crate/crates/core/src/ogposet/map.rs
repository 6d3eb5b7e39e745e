use std::sync::Arc;

use super::{El, GrSet, OgError, OgPoset, Sign};

/// A (possibly partial) map of oriented graded posets.
///
/// `mapping[n][k]` is the image of `(n, k)`, or `None` where the map is
/// undefined. Values built through [`check_map`] satisfy the boundary
/// condition at every defined element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OgMap {
    source: Arc<OgPoset>,
    target: Arc<OgPoset>,
    mapping: Vec<Vec<Option<El>>>,
}

/// Validates `mapping` as a map `source → target`.
pub fn check_map(
    mapping: Vec<Vec<Option<El>>>,
    source: Arc<OgPoset>,
    target: Arc<OgPoset>,
) -> Result<OgMap, OgError> {
    let sizes = source.size();
    if mapping.len() != sizes.len() || mapping.iter().zip(&sizes).any(|(m, &s)| m.len() != s) {
        return Err(OgError::MalformedData("mapping does not match the source strata".into()));
    }
    let map = OgMap { source, target, mapping };
    for x in map.source.elements() {
        let Some(fx) = map.get(x) else { continue };
        map.target.check_el(fx)?;
        if let Some(face) = map.source.all_faces(x).find(|&f| map.get(f).is_none()) {
            return Err(OgError::UndefinedFace { el: x, face });
        }
        let source_cl = map.source.closure_of(&GrSet::singleton(x));
        let source_cl = super::Closed::new_unchecked(source_cl, &map.source);
        let target_cl = map.target.closure_of(&GrSet::singleton(fx));
        let target_cl = super::Closed::new_unchecked(target_cl, &map.target);
        for n in 0..=x.dim {
            for sign in Sign::BOTH {
                let lhs = target_cl.boundary(Some(sign), Some(n as isize));
                let rhs = map.image(source_cl.boundary(Some(sign), Some(n as isize)).support());
                if lhs.support() != &rhs {
                    return Err(OgError::NotAMap { el: x, n, sign });
                }
            }
        }
    }
    Ok(map)
}

impl OgMap {
    pub(crate) fn new_unchecked(
        source: Arc<OgPoset>,
        target: Arc<OgPoset>,
        mapping: Vec<Vec<Option<El>>>,
    ) -> Self {
        OgMap { source, target, mapping }
    }

    pub fn identity(poset: Arc<OgPoset>) -> Self {
        let mapping = poset
            .face_data()
            .iter()
            .enumerate()
            .map(|(n, s)| (0..s.len()).map(|k| Some(El::new(n, k))).collect())
            .collect();
        OgMap { source: poset.clone(), target: poset, mapping }
    }

    /// The map that renumbers positions by `perm[n][old] = new`, from
    /// `source` to `target`. Both posets are trusted to be related by the
    /// permutation.
    pub(crate) fn from_permutation(
        source: Arc<OgPoset>,
        target: Arc<OgPoset>,
        perm: &[Vec<usize>],
    ) -> Self {
        let mapping = perm
            .iter()
            .enumerate()
            .map(|(n, p)| p.iter().map(|&k| Some(El::new(n, k))).collect())
            .collect();
        OgMap { source, target, mapping }
    }

    pub fn source(&self) -> &Arc<OgPoset> {
        &self.source
    }

    pub fn target(&self) -> &Arc<OgPoset> {
        &self.target
    }

    pub fn mapping(&self) -> &[Vec<Option<El>>] {
        &self.mapping
    }

    pub fn get(&self, el: El) -> Option<El> {
        self.mapping.get(el.dim).and_then(|s| s.get(el.pos)).copied().flatten()
    }

    /// Image of a total map at an element of the source. Panics if undefined.
    pub fn apply(&self, el: El) -> El {
        self.get(el).unwrap_or_else(|| panic!("map undefined at {el}"))
    }

    pub fn is_total(&self) -> bool {
        self.mapping.iter().flatten().all(Option::is_some)
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = GrSet::new();
        self.mapping.iter().flatten().flatten().all(|&y| seen.insert(y))
    }

    pub fn is_surjective(&self) -> bool {
        let image: GrSet = self.mapping.iter().flatten().flatten().copied().collect();
        image.len() == self.target.len()
    }

    pub fn image(&self, set: &GrSet) -> GrSet {
        set.iter().filter_map(|el| self.get(el)).collect()
    }

    /// Composite "first `self`, then `g`".
    pub fn then(&self, g: &OgMap) -> Result<OgMap, OgError> {
        if !Arc::ptr_eq(&self.target, &g.source) && self.target != g.source {
            return Err(OgError::SourceTargetMismatch);
        }
        let mapping = self
            .mapping
            .iter()
            .map(|s| s.iter().map(|y| y.and_then(|y| g.get(y))).collect())
            .collect();
        Ok(OgMap { source: self.source.clone(), target: g.target.clone(), mapping })
    }

    /// Inverse of a bijective map.
    pub fn inverse(&self) -> Option<OgMap> {
        if !self.is_total() || !self.is_injective() || !self.is_surjective() {
            return None;
        }
        let mut mapping: Vec<Vec<Option<El>>> =
            self.target.size().into_iter().map(|n| vec![None; n]).collect();
        for x in self.source.elements() {
            let y = self.apply(x);
            if y.dim != x.dim {
                return None;
            }
            mapping[y.dim][y.pos] = Some(x);
        }
        Some(OgMap { source: self.target.clone(), target: self.source.clone(), mapping })
    }

    /// Re-runs the boundary check on this map.
    pub fn validate(&self) -> Result<(), OgError> {
        check_map(self.mapping.clone(), self.source.clone(), self.target.clone()).map(|_| ())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ogposet::FacePair;

    fn pair(i: &[usize], o: &[usize]) -> FacePair {
        [i.to_vec(), o.to_vec()]
    }

    fn arrow() -> Arc<OgPoset> {
        Arc::new(OgPoset::from_face_data(vec![vec![pair(&[], &[]); 2], vec![pair(&[0], &[1])]]).unwrap())
    }

    fn whisker() -> Arc<OgPoset> {
        Arc::new(
            OgPoset::from_face_data(vec![
                vec![pair(&[], &[]); 4],
                vec![pair(&[0], &[1]), pair(&[1], &[2]), pair(&[2], &[3]), pair(&[0], &[2])],
                vec![pair(&[0, 1], &[3])],
            ])
            .unwrap(),
        )
    }

    fn el(d: usize, p: usize) -> Option<El> {
        Some(El::new(d, p))
    }

    #[test]
    fn identity_is_a_bijective_map() {
        let w = whisker();
        let id = OgMap::identity(w.clone());
        let checked = check_map(id.mapping().to_vec(), w.clone(), w).unwrap();
        assert!(checked.is_total() && checked.is_injective() && checked.is_surjective());
    }

    #[test]
    fn collapse_arrow_onto_point() {
        let point = Arc::new(OgPoset::point());
        let m = vec![vec![el(0, 0), el(0, 0)], vec![el(0, 0)]];
        let tau = check_map(m, arrow(), point).unwrap();
        assert!(tau.is_surjective());
        assert!(!tau.is_injective());
    }

    #[test]
    fn edge_to_endpoint_is_not_a_map() {
        let a = arrow();
        let m = vec![vec![el(0, 0), el(0, 1)], vec![el(0, 0)]];
        assert_eq!(
            check_map(m, a.clone(), a),
            Err(OgError::NotAMap { el: El::new(1, 0), n: 0, sign: Sign::Output })
        );
    }

    #[test]
    fn partial_maps_need_defined_faces() {
        let a = arrow();
        let m = vec![vec![el(0, 0), None], vec![el(1, 0)]];
        assert!(matches!(check_map(m, a.clone(), a.clone()), Err(OgError::UndefinedFace { .. })));
        let partial = check_map(vec![vec![el(0, 1), None], vec![None]], a.clone(), a).unwrap();
        assert!(!partial.is_total());
    }

    #[test]
    fn composition() {
        let a = arrow();
        let point = Arc::new(OgPoset::point());
        let collapse = check_map(vec![vec![el(0, 0), el(0, 0)], vec![el(0, 0)]], a.clone(), point.clone()).unwrap();
        let source_incl = check_map(vec![vec![el(0, 0)]], point.clone(), a.clone()).unwrap();
        let constant = collapse.then(&source_incl).unwrap();
        assert_eq!(constant.mapping(), &[vec![el(0, 0), el(0, 0)], vec![el(0, 0)]]);
        assert!(constant.validate().is_ok());
        let id = OgMap::identity(point.clone());
        assert_eq!(collapse.then(&id).unwrap(), collapse);
        assert_eq!(collapse.then(&collapse), Err(OgError::SourceTargetMismatch));

        let w = whisker();
        let boundary = w.whole().boundary(Some(Sign::Input), None).as_map();
        let boundary = OgMap::new_unchecked(boundary.source().clone(), w.clone(), boundary.mapping().to_vec());
        assert_eq!(boundary.then(&OgMap::identity(w)).unwrap(), boundary);
    }

    #[test]
    fn inverse_of_a_permutation() {
        let w = whisker();
        let inv = OgMap::identity(w.clone()).inverse().unwrap();
        assert_eq!(inv, OgMap::identity(w));
        let point = Arc::new(OgPoset::point());
        let collapse = check_map(vec![vec![el(0, 0), el(0, 0)], vec![el(0, 0)]], arrow(), point).unwrap();
        assert!(collapse.inverse().is_none());
    }
}
