use std::sync::Arc;

use super::{El, FaceData, OgError, OgMap, OgPoset, Sign};

/// The pushout of a span of inclusions `U ← S → V`.
#[derive(Debug, Clone)]
pub struct Pushout {
    pub poset: Arc<OgPoset>,
    /// `U ↪ W`
    pub left: OgMap,
    /// `V ↪ W`
    pub right: OgMap,
}

/// Computes the pushout of two inclusions out of the same poset.
///
/// In every dimension the elements of `U` keep their positions and the
/// elements of `V` outside the image of `S` are appended in `V`'s order.
pub fn pushout(m: &OgMap, n: &OgMap) -> Result<Pushout, OgError> {
    if !Arc::ptr_eq(m.source(), n.source()) && m.source() != n.source() {
        return Err(OgError::SourceMismatch);
    }
    for f in [m, n] {
        if !f.is_total() || !f.is_injective() {
            return Err(OgError::NotInclusion);
        }
    }
    let u = m.target();
    let v = n.target();
    let top = u.dim().max(v.dim());
    let strata = usize::try_from(top + 1).unwrap_or(0);

    // where each element of V lands in W
    let mut v_to_w: Vec<Vec<Option<usize>>> = v.size().into_iter().map(|s| vec![None; s]).collect();
    for s in m.source().elements() {
        let (x, y) = (m.apply(s), n.apply(s));
        if x.dim != s.dim || y.dim != s.dim {
            return Err(OgError::NotInclusion);
        }
        v_to_w[y.dim][y.pos] = Some(x.pos);
    }
    let mut faces: FaceData = Vec::with_capacity(strata);
    for dim in 0..strata {
        let mut stratum = u.face_data().get(dim).cloned().unwrap_or_default();
        let mut next = stratum.len();
        for pos in 0..v.stratum_len(dim) {
            if v_to_w[dim][pos].is_some() {
                continue;
            }
            v_to_w[dim][pos] = Some(next);
            next += 1;
            let el = El::new(dim, pos);
            let translate = |sign: Sign| -> Vec<usize> {
                let mut list: Vec<usize> = v
                    .faces(el, sign)
                    .iter()
                    .map(|&j| v_to_w[dim - 1][j].expect("lower dimension already placed"))
                    .collect();
                list.sort_unstable();
                list
            };
            stratum.push([translate(Sign::Input), translate(Sign::Output)]);
        }
        faces.push(stratum);
    }
    let poset = Arc::new(OgPoset::from_face_data(faces)?);
    let left = OgMap::new_unchecked(
        u.clone(),
        poset.clone(),
        u.size()
            .into_iter()
            .enumerate()
            .map(|(d, s)| (0..s).map(|k| Some(El::new(d, k))).collect())
            .collect(),
    );
    let right = OgMap::new_unchecked(
        v.clone(),
        poset.clone(),
        v_to_w
            .iter()
            .enumerate()
            .map(|(d, s)| s.iter().map(|k| k.map(|k| El::new(d, k))).collect())
            .collect(),
    );
    Ok(Pushout { poset, left, right })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ogposet::{check_map, FacePair};

    fn pair(i: &[usize], o: &[usize]) -> FacePair {
        [i.to_vec(), o.to_vec()]
    }

    fn arrow() -> Arc<OgPoset> {
        Arc::new(OgPoset::from_face_data(vec![vec![pair(&[], &[]); 2], vec![pair(&[0], &[1])]]).unwrap())
    }

    #[test]
    fn composite_of_two_arrows() {
        let point = Arc::new(OgPoset::point());
        let a = arrow();
        let tgt = check_map(vec![vec![Some(El::new(0, 1))]], point.clone(), a.clone()).unwrap();
        let src = check_map(vec![vec![Some(El::new(0, 0))]], point, a).unwrap();
        let po = pushout(&tgt, &src).unwrap();
        assert_eq!(po.poset.size(), vec![3, 2]);
        assert_eq!(po.poset.faces(El::new(1, 1), Sign::Input), &[1]);
        assert_eq!(po.poset.faces(El::new(1, 1), Sign::Output), &[2]);
        // the square commutes
        assert_eq!(tgt.then(&po.left).unwrap().mapping(), src.then(&po.right).unwrap().mapping());
        assert!(po.left.validate().is_ok() && po.right.validate().is_ok());
    }

    #[test]
    fn coproduct_and_trivial_gluing() {
        let a = arrow();
        let empty = Arc::new(OgPoset::empty());
        let e = check_map(vec![], empty.clone(), a.clone()).unwrap();
        let po = pushout(&e, &e).unwrap();
        assert_eq!(po.poset.len(), 6);
        let id = OgMap::identity(a.clone());
        let po = pushout(&id, &id).unwrap();
        assert_eq!(&*po.poset, &*a);
    }

    #[test]
    fn rejects_non_inclusions() {
        let a = arrow();
        let point = Arc::new(OgPoset::point());
        let collapse =
            check_map(vec![vec![Some(El::new(0, 0)); 2], vec![Some(El::new(0, 0))]], a.clone(), point).unwrap();
        let id = OgMap::identity(a.clone());
        assert!(matches!(pushout(&collapse, &id), Err(OgError::SourceMismatch) | Err(OgError::NotInclusion)));
        let p = Arc::new(OgPoset::point());
        let inc = check_map(vec![vec![Some(El::new(0, 0))]], p, a.clone()).unwrap();
        assert_eq!(pushout(&inc, &id).err(), Some(OgError::SourceMismatch));
    }
}
