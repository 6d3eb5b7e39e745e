use crate::ogposet::{check_map, El, Sign};

use super::{MapKind, Molecule, ShapeError, ShapeMap};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UnitorSide {
    Left,
    Right,
}

struct Assignment {
    mapping: Vec<Vec<Option<El>>>,
}

impl Assignment {
    fn new(source: &Molecule) -> Self {
        Assignment { mapping: source.size().into_iter().map(|n| vec![None; n]).collect() }
    }

    fn set(&mut self, from: El, to: El) -> Result<(), ShapeError> {
        let slot = &mut self.mapping[from.dim][from.pos];
        match slot {
            Some(prev) if *prev != to => {
                Err(ShapeError::Unsupported(format!("collapse is inconsistent at {from}")))
            }
            _ => {
                *slot = Some(to);
                Ok(())
            }
        }
    }

    fn finish(self, source: &Molecule, target: &Molecule) -> Result<ShapeMap, ShapeError> {
        let map = check_map(self.mapping, source.poset_arc().clone(), target.poset_arc().clone())?;
        if !map.is_total() {
            return Err(ShapeError::Unsupported("collapse is not total".into()));
        }
        Ok(ShapeMap { source: source.clone(), target: target.clone(), map, kind: MapKind::Collapse })
    }
}

fn elements(m: &Molecule) -> impl Iterator<Item = El> + '_ {
    m.poset().elements()
}

/// The collapse `(u ⇒ u) → u` of an atom: both boundary copies map onto
/// `u` identically, and the new greatest element maps to the old one.
pub fn unit_collapse(u: &Molecule) -> Result<ShapeMap, ShapeError> {
    let Some(top) = u.top() else {
        return Err(ShapeError::Unsupported(format!("unit of the non-atom {u}")));
    };
    let (unit, input, output) = Molecule::atom_with_inclusions(u, u)?;
    let mut a = Assignment::new(&unit);
    for e in elements(u) {
        a.set(input.apply(e), e)?;
        a.set(output.apply(e), e)?;
    }
    a.set(unit.top().expect("atoms have a greatest element"), top)?;
    a.finish(&unit, u)
}

/// The collapse onto an atom `u` of dimension `n ≥ 1` from
/// `((V ⇒ V) ∘ₙ₋₁ u) ⇒ u` (left) or `(u ∘ₙ₋₁ (V ⇒ V)) ⇒ u` (right), where
/// `V` is the input, respectively output, boundary of `u`, itself an atom.
pub fn unitor_map(u: &Molecule, side: UnitorSide) -> Result<ShapeMap, ShapeError> {
    let Some(u_top) = u.top() else {
        return Err(ShapeError::Unsupported(format!("unitor of the non-atom {u}")));
    };
    if u.dim() < 1 {
        return Err(ShapeError::Unsupported("unitor of a point".into()));
    }
    let n = u.dim() - 1;
    let sign = match side {
        UnitorSide::Left => Sign::Input,
        UnitorSide::Right => Sign::Output,
    };
    let v_incl = u.boundary_inclusion(sign, n);
    let v = &v_incl.source;
    let Some(v_top) = v.top() else {
        return Err(ShapeError::Unsupported(format!("unitor where the boundary {v} is not an atom")));
    };
    let (vv, vv_in, vv_out) = Molecule::atom_with_inclusions(v, v)?;
    let n = n as usize;
    let (pasted, vv_into, u_into) = match side {
        UnitorSide::Left => Molecule::paste_with_inclusions(&vv, u, n)?,
        UnitorSide::Right => {
            let (p, a, b) = Molecule::paste_with_inclusions(u, &vv, n)?;
            (p, b, a)
        }
    };
    let (whole, input, output) = Molecule::atom_with_inclusions(&pasted, u)?;
    let mut a = Assignment::new(&whole);
    for e in elements(v) {
        let image = v_incl.apply(e);
        a.set(input.apply(vv_into.apply(vv_in.apply(e))), image)?;
        a.set(input.apply(vv_into.apply(vv_out.apply(e))), image)?;
    }
    let vv_top = vv.top().expect("atoms have a greatest element");
    a.set(input.apply(vv_into.apply(vv_top)), v_incl.apply(v_top))?;
    for e in elements(u) {
        a.set(input.apply(u_into.apply(e)), e)?;
        a.set(output.apply(e), e)?;
    }
    a.set(whole.top().expect("atoms have a greatest element"), u_top)?;
    a.finish(&whole, u)
}
