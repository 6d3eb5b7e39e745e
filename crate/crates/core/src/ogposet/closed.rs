use std::sync::Arc;

use super::{El, GrSet, OgError, OgMap, OgPoset, Sign};

/// A downward-closed subset of an oriented graded poset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Closed<'a> {
    support: GrSet,
    ambient: &'a OgPoset,
}

/// Evidence that a closed subset is not round: the first `k` at which
/// the intersection of the `k`-boundaries differs from the `(k−1)`-boundary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundnessWitness {
    pub k: usize,
    pub intersection: GrSet,
    pub lower_boundary: GrSet,
}

impl<'a> Closed<'a> {
    pub(crate) fn new_unchecked(support: GrSet, ambient: &'a OgPoset) -> Self {
        Closed { support, ambient }
    }

    /// Checks range and closedness.
    pub fn new(support: GrSet, ambient: &'a OgPoset) -> Result<Self, OgError> {
        if let Some(el) = support.iter().find(|&el| !ambient.contains(el)) {
            return Err(OgError::OutOfRange(el));
        }
        if !ambient.is_closed(&support) {
            return Err(OgError::MalformedData("subset is not closed".into()));
        }
        Ok(Closed { support, ambient })
    }

    pub fn support(&self) -> &GrSet {
        &self.support
    }

    pub fn into_support(self) -> GrSet {
        self.support
    }

    pub fn ambient(&self) -> &'a OgPoset {
        self.ambient
    }

    pub fn dim(&self) -> isize {
        self.support.dim()
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    pub fn contains(&self, el: El) -> bool {
        self.support.contains(el)
    }

    fn has_coface_in(&self, el: El, signs: &[Sign]) -> bool {
        signs.iter().any(|&s| {
            self.ambient
                .cofaces(el, s)
                .iter()
                .any(|&j| self.support.contains(El::new(el.dim + 1, j)))
        })
    }

    /// Elements not covered by any other element of the subset.
    pub fn maximal(&self) -> GrSet {
        self.support
            .iter()
            .filter(|&el| !self.has_coface_in(el, &Sign::BOTH))
            .collect()
    }

    /// The `n`-boundary with the given orientation, or the union of both
    /// orientations when `sign` is `None`. `n` defaults to `dim − 1`; any
    /// `n ≤ −1` gives the empty set.
    pub fn boundary(&self, sign: Option<Sign>, n: Option<isize>) -> Closed<'a> {
        let n = n.unwrap_or(self.dim() - 1);
        let support = match sign {
            Some(s) => self.boundary_support(s, n),
            None => self
                .boundary_support(Sign::Input, n)
                .union(&self.boundary_support(Sign::Output, n)),
        };
        Closed { support, ambient: self.ambient }
    }

    fn boundary_support(&self, sign: Sign, n: isize) -> GrSet {
        let Ok(n) = usize::try_from(n) else {
            return GrSet::new();
        };
        let opposite = [sign.flip()];
        let mut generators: Vec<El> = self
            .support
            .stratum(n)
            .iter()
            .map(|&k| El::new(n, k))
            .filter(|&el| !self.has_coface_in(el, &opposite))
            .collect();
        for k in 0..n.min(self.support.strata().len()) {
            generators.extend(
                self.support
                    .stratum(k)
                    .iter()
                    .map(|&j| El::new(k, j))
                    .filter(|&el| !self.has_coface_in(el, &Sign::BOTH)),
            );
        }
        self.ambient.closure_of(&generators.into_iter().collect())
    }

    /// Returns the first violation of roundness, if any.
    pub fn roundness_witness(&self) -> Result<Option<RoundnessWitness>, OgError> {
        if self.is_empty() {
            return Err(OgError::EmptySubset);
        }
        let dim = self.dim();
        for k in 0..dim {
            let input = self.boundary_support(Sign::Input, k);
            let output = self.boundary_support(Sign::Output, k);
            let intersection = input.intersection(&output);
            let lower_boundary = self
                .boundary_support(Sign::Input, k - 1)
                .union(&self.boundary_support(Sign::Output, k - 1));
            if intersection != lower_boundary {
                return Ok(Some(RoundnessWitness { k: k as usize, intersection, lower_boundary }));
            }
        }
        Ok(None)
    }

    pub fn is_round(&self) -> Result<bool, OgError> {
        Ok(self.roundness_witness()?.is_none())
    }

    /// The subset as an oriented graded poset in its own right, together
    /// with its inclusion into the ambient poset.
    pub fn as_map(&self) -> OgMap {
        let (sub, embedding) = self.ambient.restrict(&self.support);
        let mapping = embedding
            .iter()
            .enumerate()
            .map(|(n, ks)| ks.iter().map(|&k| Some(El::new(n, k))).collect())
            .collect();
        OgMap::new_unchecked(Arc::new(sub), Arc::new(self.ambient.clone()), mapping)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ogposet::FacePair;

    fn pair(i: &[usize], o: &[usize]) -> FacePair {
        [i.to_vec(), o.to_vec()]
    }

    fn whisker() -> OgPoset {
        OgPoset::from_face_data(vec![
            vec![pair(&[], &[]); 4],
            vec![pair(&[0], &[1]), pair(&[1], &[2]), pair(&[2], &[3]), pair(&[0], &[2])],
            vec![pair(&[0, 1], &[3])],
        ])
        .unwrap()
    }

    fn els(list: &[(usize, usize)]) -> GrSet {
        list.iter().map(|&(d, p)| El::new(d, p)).collect()
    }

    #[test]
    fn closure_of_the_two_cell() {
        let w = whisker();
        let cl = w.closure_of_el(El::new(2, 0)).unwrap();
        let expected = w.all().difference(&els(&[(0, 3), (1, 2)]));
        assert_eq!(cl.support(), &expected);
        // idempotent
        assert_eq!(w.closure(cl.support()).unwrap().support(), &expected);
        assert!(w.closure(&GrSet::new()).unwrap().is_empty());
        assert_eq!(w.closure(&GrSet::singleton(El::new(1, 9))), Err(OgError::OutOfRange(El::new(1, 9))));
    }

    #[test]
    fn whisker_boundaries() {
        let w = whisker();
        let u = w.whole();
        assert_eq!(
            u.boundary(Some(Sign::Input), Some(1)).support(),
            &els(&[(0, 0), (0, 1), (0, 2), (0, 3), (1, 0), (1, 1), (1, 2)])
        );
        assert_eq!(
            u.boundary(Some(Sign::Output), Some(1)).support(),
            &els(&[(0, 0), (0, 2), (0, 3), (1, 2), (1, 3)])
        );
        assert_eq!(u.boundary(Some(Sign::Input), Some(0)).support(), &els(&[(0, 0)]));
        assert_eq!(u.boundary(Some(Sign::Output), Some(0)).support(), &els(&[(0, 3)]));
        assert!(u.boundary(Some(Sign::Input), Some(-1)).is_empty());
        assert!(u.boundary(None, Some(-2)).is_empty());
        // default n is dim − 1
        assert_eq!(u.boundary(Some(Sign::Input), None), u.boundary(Some(Sign::Input), Some(1)));
        // n at or above the dimension gives the whole subset
        assert_eq!(u.boundary(Some(Sign::Output), Some(2)).support(), u.support());
    }

    #[test]
    fn maximal_elements() {
        let w = whisker();
        assert_eq!(w.whole().maximal(), els(&[(1, 2), (2, 0)]));
        let p = OgPoset::point();
        assert_eq!(p.whole().maximal(), els(&[(0, 0)]));
        for el in w.elements() {
            assert!(w.closure_of_el(el).unwrap().maximal().contains(el));
        }
    }

    #[test]
    fn whisker_is_not_round() {
        let w = whisker();
        let witness = w.whole().roundness_witness().unwrap().expect("not round");
        assert_eq!(witness.k, 1);
        assert_eq!(witness.lower_boundary, els(&[(0, 0), (0, 3)]));
        assert_eq!(witness.intersection.stratum(0), &[0, 2, 3]);
        assert!(witness.lower_boundary.is_subset(&witness.intersection));
        assert_eq!(OgPoset::point().whole().is_round(), Ok(true));
        assert_eq!(w.closure(&GrSet::new()).unwrap().is_round(), Err(OgError::EmptySubset));
    }

    #[test]
    fn inclusion_of_boundary() {
        let w = whisker();
        let b = w.whole().boundary(Some(Sign::Output), Some(1));
        let inc = b.as_map();
        assert_eq!(inc.source().size(), vec![3, 2]);
        assert!(inc.is_injective());
        assert!(crate::ogposet::check_map(inc.mapping().to_vec(), inc.source().clone(), inc.target().clone()).is_ok());
    }
}
