use std::collections::HashSet;

use crate::ogposet::{El, GrSet, OgPoset, Sign};

use super::ShapeError;

/// A closed set on the traversal stack, represented through its maximal
/// elements.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum StackSet {
    /// The input `k`-boundary of the whole poset.
    Whole(usize),
    /// A pure closed set: the closure of some elements of one dimension.
    Pure { dim: usize, top: Vec<usize> },
}

/// Counters collected by [`traverse_instrumented`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct TraversalStats {
    pub iterations: usize,
    pub pushes: usize,
    /// Sets pushed while an equal set had already been pushed before.
    pub repeated_pushes: usize,
}

struct Marks {
    order: Vec<El>,
    grorder: Vec<Vec<usize>>,
    marked: Vec<Vec<bool>>,
}

impl Marks {
    fn new(poset: &OgPoset) -> Self {
        let sizes = poset.size();
        Marks {
            order: Vec::with_capacity(poset.len()),
            grorder: vec![Vec::new(); sizes.len()],
            marked: sizes.into_iter().map(|n| vec![false; n]).collect(),
        }
    }

    fn is_marked(&self, el: El) -> bool {
        self.marked[el.dim][el.pos]
    }

    fn mark(&mut self, el: El) -> Result<(), ShapeError> {
        if self.is_marked(el) {
            return Err(ShapeError::NotTraversable(format!("element {el} reached twice")));
        }
        self.marked[el.dim][el.pos] = true;
        self.order.push(el);
        self.grorder[el.dim].push(el.pos);
        Ok(())
    }
}

struct Traversal<'a> {
    poset: &'a OgPoset,
    marks: Marks,
    stack: Vec<StackSet>,
    /// Maximal elements of each input boundary of the whole poset.
    whole: Vec<GrSet>,
}

impl<'a> Traversal<'a> {
    /// Maximal elements of a stack set, grouped by dimension.
    fn maximal(&self, set: &StackSet) -> GrSet {
        match set {
            StackSet::Pure { dim, top } => GrSet::from_stratum(*dim, top.clone()),
            StackSet::Whole(k) => self.whole[*k].clone(),
        }
    }

    fn whole_maximal(p: &OgPoset, k: usize) -> GrSet {
        let mut strata = vec![Vec::new(); k + 1];
        for pos in 0..p.stratum_len(k) {
            if p.cofaces(El::new(k, pos), Sign::Output).is_empty() {
                strata[k].push(pos);
            }
        }
        for (n, stratum) in strata.iter_mut().enumerate().take(k) {
            for pos in 0..p.stratum_len(n) {
                if !p.has_cofaces(El::new(n, pos)) {
                    stratum.push(pos);
                }
            }
        }
        GrSet::from_strata(strata)
    }

    fn fully_marked(&self, maximal: &GrSet) -> bool {
        maximal.iter().all(|el| self.marks.is_marked(el))
    }

    /// Input or output boundary of a pure set of dimension `dim ≥ 1`.
    fn pure_boundary(&self, dim: usize, top: &[usize], sign: Sign) -> Vec<usize> {
        let mut in_faces = Vec::new();
        let mut out_faces = Vec::new();
        for &pos in top {
            let el = El::new(dim, pos);
            in_faces.extend_from_slice(self.poset.faces(el, Sign::Input));
            out_faces.extend_from_slice(self.poset.faces(el, Sign::Output));
        }
        for list in [&mut in_faces, &mut out_faces] {
            list.sort_unstable();
            list.dedup();
        }
        let (keep, drop) = match sign {
            Sign::Input => (in_faces, out_faces),
            Sign::Output => (out_faces, in_faces),
        };
        keep.into_iter().filter(|y| drop.binary_search(y).is_err()).collect()
    }

    /// The input boundary of a focus, or `None` if it is empty.
    fn input_boundary(&self, set: &StackSet) -> Result<Option<StackSet>, ShapeError> {
        match set {
            StackSet::Whole(0) | StackSet::Pure { dim: 0, .. } => Ok(None),
            StackSet::Whole(k) => Ok(Some(StackSet::Whole(k - 1))),
            StackSet::Pure { dim, top } => {
                let faces = self.pure_boundary(*dim, top, Sign::Input);
                if faces.is_empty() {
                    return Err(ShapeError::NotTraversable("empty input boundary".into()));
                }
                Ok(Some(StackSet::Pure { dim: dim - 1, top: faces }))
            }
        }
    }
}

/// The traversal order of a regular molecule: every element exactly once.
pub fn traverse(poset: &OgPoset) -> Result<Vec<El>, ShapeError> {
    run(poset, None)
}

/// Like [`traverse`], additionally reporting loop statistics.
pub fn traverse_instrumented(poset: &OgPoset) -> Result<(Vec<El>, TraversalStats), ShapeError> {
    let mut stats = TraversalStats::default();
    let order = run(poset, Some(&mut stats))?;
    Ok((order, stats))
}

/// Traversal order split by dimension: `grorder[n][i]` is the position of
/// the `i`-th traversed element of dimension `n`.
pub(crate) fn traverse_graded(poset: &OgPoset) -> Result<Vec<Vec<usize>>, ShapeError> {
    let order = traverse(poset)?;
    let mut grorder = vec![Vec::new(); poset.size().len()];
    for el in order {
        grorder[el.dim].push(el.pos);
    }
    Ok(grorder)
}

fn run(poset: &OgPoset, mut stats: Option<&mut TraversalStats>) -> Result<Vec<El>, ShapeError> {
    let Ok(top) = usize::try_from(poset.dim()) else {
        return Ok(Vec::new());
    };
    let size = poset.len();
    let budget = (size + 1) * (size + 4 * top + 2) + 16;
    let whole = (0..=top).map(|k| Traversal::whole_maximal(poset, k)).collect();
    let mut t = Traversal { poset, marks: Marks::new(poset), stack: vec![StackSet::Whole(top)], whole };
    let mut seen: HashSet<StackSet> = HashSet::new();
    let mut iterations = 0;

    while let Some(mut focus) = t.stack.last().cloned() {
        iterations += 1;
        if iterations > budget {
            return Err(ShapeError::NotTraversable("iteration bound exceeded".into()));
        }
        let maximal = t.maximal(&focus);
        // a whole boundary with one maximal element is an atom
        if matches!(focus, StackSet::Whole(_)) && maximal.len() == 1 {
            let el = maximal.iter().next().unwrap();
            focus = StackSet::Pure { dim: el.dim, top: vec![el.pos] };
            *t.stack.last_mut().unwrap() = focus.clone();
        }
        if maximal.is_empty() {
            return Err(ShapeError::NotTraversable("empty focus".into()));
        }
        if t.fully_marked(&maximal) {
            t.stack.pop();
            continue;
        }
        let mut push = |t: &mut Traversal, set: StackSet| {
            if let Some(s) = stats.as_deref_mut() {
                s.pushes += 1;
                if !seen.insert(set.clone()) {
                    s.repeated_pushes += 1;
                }
            }
            t.stack.push(set);
        };
        if let Some(input) = t.input_boundary(&focus)? {
            if !t.fully_marked(&t.maximal(&input)) {
                push(&mut t, input);
                continue;
            }
        }
        let dim = maximal.dim() as usize;
        let top = maximal.stratum(dim).to_vec();
        if maximal.len() == 1 {
            let x = El::new(dim, top[0]);
            t.marks.mark(x)?;
            t.stack.pop();
            if dim > 0 {
                let output = t.pure_boundary(dim, &top, Sign::Output);
                let output = StackSet::Pure { dim: dim - 1, top: output };
                if !t.fully_marked(&t.maximal(&output)) {
                    push(&mut t, output);
                }
            }
            continue;
        }
        if dim == 0 {
            return Err(ShapeError::NotTraversable("disconnected points".into()));
        }
        // candidates: input faces of unmarked top elements, with their coface
        let mut candidates: Vec<(usize, usize)> = Vec::new();
        for &pos in &top {
            let x = El::new(dim, pos);
            if t.marks.is_marked(x) {
                continue;
            }
            candidates.extend(poset.faces(x, Sign::Input).iter().map(|&y| (y, pos)));
        }
        candidates.sort_unstable();
        if candidates.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(ShapeError::NotTraversable("input coface is not unique".into()));
        }
        let hit = t.marks.grorder[dim - 1]
            .iter()
            .find_map(|y| candidates.binary_search_by_key(y, |c| c.0).ok())
            .map(|i| candidates[i].1);
        let Some(x) = hit else {
            return Err(ShapeError::NotTraversable("no element can be reached".into()));
        };
        push(&mut t, StackSet::Pure { dim, top: vec![x] });
    }
    if t.marks.order.len() != size {
        return Err(ShapeError::NotTraversable("some elements were never reached".into()));
    }
    if let Some(s) = stats {
        s.iterations = iterations;
    }
    Ok(t.marks.order)
}
