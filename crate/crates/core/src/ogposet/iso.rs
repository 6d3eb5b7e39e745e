use std::sync::Arc;

use super::{check_map, El, FaceData, OgError, OgMap, OgPoset, Sign};

/// Every isomorphism `p → q`, found by exhaustive search.
///
/// Only meant for small posets: the search is factorial in the size of
/// each stratum, with pruning on coface counts and on face sets.
pub fn brute_force_iso(p: &OgPoset, q: &OgPoset) -> Vec<OgMap> {
    if p.size() != q.size() {
        return Vec::new();
    }
    let order: Vec<El> = p.elements().collect();
    let mut forward: Vec<Vec<Option<usize>>> = p.size().into_iter().map(|n| vec![None; n]).collect();
    let mut used: Vec<Vec<bool>> = q.size().into_iter().map(|n| vec![false; n]).collect();
    let mut found = Vec::new();
    search(p, q, &order, 0, &mut forward, &mut used, &mut found);

    let (p, q) = (Arc::new(p.clone()), Arc::new(q.clone()));
    found
        .into_iter()
        .filter_map(|forward| {
            let mapping: Vec<Vec<Option<El>>> = forward
                .iter()
                .enumerate()
                .map(|(n, s)| s.iter().map(|&k| Some(El::new(n, k))).collect())
                .collect();
            let f = check_map(mapping, p.clone(), q.clone()).ok()?;
            let g = f.inverse()?;
            g.validate().ok()?;
            Some(f)
        })
        .collect()
}

fn search(
    p: &OgPoset,
    q: &OgPoset,
    order: &[El],
    i: usize,
    forward: &mut Vec<Vec<Option<usize>>>,
    used: &mut Vec<Vec<bool>>,
    found: &mut Vec<Vec<Vec<usize>>>,
) {
    let Some(&x) = order.get(i) else {
        found.push(forward.iter().map(|s| s.iter().map(|k| k.unwrap()).collect()).collect());
        return;
    };
    for pos in 0..q.stratum_len(x.dim) {
        if used[x.dim][pos] || !compatible(p, q, x, El::new(x.dim, pos), forward) {
            continue;
        }
        used[x.dim][pos] = true;
        forward[x.dim][x.pos] = Some(pos);
        search(p, q, order, i + 1, forward, used, found);
        forward[x.dim][x.pos] = None;
        used[x.dim][pos] = false;
    }
}

fn compatible(p: &OgPoset, q: &OgPoset, x: El, y: El, forward: &[Vec<Option<usize>>]) -> bool {
    for sign in Sign::BOTH {
        if p.cofaces(x, sign).len() != q.cofaces(y, sign).len() {
            return false;
        }
        if x.dim == 0 {
            continue;
        }
        let mut image: Vec<usize> = p
            .faces(x, sign)
            .iter()
            .map(|&j| forward[x.dim - 1][j].expect("faces are assigned first"))
            .collect();
        image.sort_unstable();
        if image != q.faces(y, sign) {
            return false;
        }
    }
    true
}

/// Every total map `source → target`, by exhaustive search. Test oracle
/// for tiny posets only.
pub fn all_maps(source: &Arc<OgPoset>, target: &Arc<OgPoset>) -> Vec<OgMap> {
    let mut out = Vec::new();
    search_maps(source, target, |_, _| true, |f| {
        out.push(f);
        true
    });
    out
}

/// Exhaustive search for total maps `source → target` sending each `x` to
/// some `y` with `allow(x, y)`. Each map found is passed to `visit`, which
/// returns whether to keep searching.
pub fn search_maps<A, V>(source: &Arc<OgPoset>, target: &Arc<OgPoset>, allow: A, mut visit: V)
where
    A: Fn(El, El) -> bool,
    V: FnMut(OgMap) -> bool,
{
    struct Search<'a, A, V> {
        order: Vec<El>,
        candidates: Vec<El>,
        mapping: Vec<Vec<Option<El>>>,
        source: &'a Arc<OgPoset>,
        target: &'a Arc<OgPoset>,
        allow: A,
        visit: V,
    }

    impl<A: Fn(El, El) -> bool, V: FnMut(OgMap) -> bool> Search<'_, A, V> {
        // false once the visitor asks to stop
        fn go(&mut self, i: usize) -> bool {
            let Some(&x) = self.order.get(i) else {
                return match check_map(self.mapping.clone(), self.source.clone(), self.target.clone()) {
                    Ok(f) => (self.visit)(f),
                    Err(_) => true,
                };
            };
            for j in 0..self.candidates.len() {
                let y = self.candidates[j];
                if y.dim > x.dim || !(self.allow)(x, y) {
                    continue;
                }
                self.mapping[x.dim][x.pos] = Some(y);
                // cheap prefix check: the image of each face sits below y
                let ok = x.dim == 0 || {
                    let below = self.target.closure_of(&super::GrSet::singleton(y));
                    self.source.all_faces(x).all(|f| below.contains(self.mapping[f.dim][f.pos].unwrap()))
                };
                if ok && !self.go(i + 1) {
                    self.mapping[x.dim][x.pos] = None;
                    return false;
                }
            }
            self.mapping[x.dim][x.pos] = None;
            true
        }
    }

    let mut search = Search {
        order: source.elements().collect(),
        candidates: target.elements().collect(),
        mapping: source.size().into_iter().map(|n| vec![None; n]).collect(),
        source,
        target,
        allow,
        visit: &mut visit,
    };
    search.go(0);
}

/// The oriented incidence poset of a directed graph: one point per vertex,
/// one edge per arc with its source as input face and its target as output.
pub fn digraph_incidence(vertices: usize, edges: &[(usize, usize)]) -> Result<OgPoset, OgError> {
    let mut faces: FaceData = Vec::new();
    if vertices > 0 {
        faces.push(vec![[Vec::new(), Vec::new()]; vertices]);
    }
    let mut arcs = Vec::with_capacity(edges.len());
    for (i, &(s, t)) in edges.iter().enumerate() {
        if s == t {
            return Err(OgError::LoopEdge(i));
        }
        for v in [s, t] {
            if v >= vertices {
                return Err(OgError::OutOfRange(El::new(0, v)));
            }
        }
        arcs.push([vec![s], vec![t]]);
    }
    if !arcs.is_empty() {
        faces.push(arcs);
    }
    OgPoset::from_face_data(faces)
}
