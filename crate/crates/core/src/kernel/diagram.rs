use std::fmt;
use std::hash::{Hash, Hasher};

use crate::molecule::{paste_along_with_inclusions, unit_collapse, unitor_map, Molecule, ShapeMap, Side, UnitorSide};
use crate::ogposet::{El, Sign};

use super::{AmbientId, KernelError, Label};

/// A molecule labelled by generator names: the term `t: U → 𝕍`.
#[derive(Debug, Clone)]
pub struct Diagram {
    shape: Molecule,
    labels: Vec<Vec<Label>>,
    ambient: AmbientId,
}

impl PartialEq for Diagram {
    fn eq(&self, other: &Self) -> bool {
        self.shape == other.shape && self.labels == other.labels
    }
}

impl Eq for Diagram {}

impl Hash for Diagram {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.shape.hash(state);
        self.labels.hash(state);
    }
}

/// Partial labelling of a shape, filled in from several pieces.
pub(crate) struct LabelGrid {
    slots: Vec<Vec<Option<Label>>>,
}

impl LabelGrid {
    pub(crate) fn new(shape: &Molecule) -> Self {
        LabelGrid { slots: shape.size().into_iter().map(|n| vec![None; n]).collect() }
    }

    pub(crate) fn set(&mut self, el: El, label: &Label) -> Result<(), KernelError> {
        let slot = &mut self.slots[el.dim][el.pos];
        match slot {
            Some(prev) if prev != label => {
                Err(KernelError::TypeMismatch(format!("labels {prev} and {label} meet at {el}")))
            }
            _ => {
                *slot = Some(label.clone());
                Ok(())
            }
        }
    }

    /// Copies the labels of `d` along a map out of its shape.
    pub(crate) fn push(&mut self, map: &ShapeMap, d: &Diagram) -> Result<(), KernelError> {
        for el in d.shape.poset().elements() {
            self.set(map.apply(el), d.label(el))?;
        }
        Ok(())
    }

    pub(crate) fn finish(self) -> Vec<Vec<Label>> {
        self.slots
            .into_iter()
            .map(|s| s.into_iter().map(|l| l.expect("every element is covered")).collect())
            .collect()
    }
}

impl Diagram {
    pub(crate) fn new_unchecked(shape: Molecule, labels: Vec<Vec<Label>>, ambient: AmbientId) -> Self {
        Diagram { shape, labels, ambient }
    }

    pub fn shape(&self) -> &Molecule {
        &self.shape
    }

    pub fn labels(&self) -> &[Vec<Label>] {
        &self.labels
    }

    pub fn label(&self, el: El) -> &Label {
        &self.labels[el.dim][el.pos]
    }

    pub fn ambient(&self) -> AmbientId {
        self.ambient
    }

    pub fn dim(&self) -> isize {
        self.shape.dim()
    }

    /// Label names per dimension, in canonical order.
    pub fn label_names(&self) -> Vec<Vec<String>> {
        self.labels.iter().map(|s| s.iter().map(|l| l.name().to_string()).collect()).collect()
    }

    /// Whether the shape is an atom.
    pub fn is_cell(&self) -> bool {
        self.shape.is_atom()
    }

    /// The label of the greatest element, for cells.
    pub fn top_label(&self) -> Option<&Label> {
        self.shape.top().map(|el| self.label(el))
    }

    /// An element is degenerate when its label has lower dimension.
    pub fn is_degenerate(&self, el: El) -> bool {
        self.label(el).dim() < el.dim
    }

    fn check_ambient(&self, other: &Diagram) -> Result<(), KernelError> {
        if self.ambient == other.ambient {
            Ok(())
        } else {
            Err(KernelError::AmbientMismatch)
        }
    }

    /// `p;t`, the labels precomposed with a map into the shape.
    pub fn pullback(&self, p: &ShapeMap) -> Result<Diagram, KernelError> {
        if p.target != self.shape {
            return Err(KernelError::ShapeMismatch(format!("map into {} applied to a diagram of shape {}", p.target, self.shape)));
        }
        let labels = p
            .source
            .size()
            .into_iter()
            .enumerate()
            .map(|(n, len)| (0..len).map(|k| self.label(p.apply(El::new(n, k))).clone()).collect())
            .collect();
        Ok(Diagram { shape: p.source.clone(), labels, ambient: self.ambient })
    }

    /// The boundary diagram `∂ₖ^α t`; empty for `k ≤ −1`.
    pub fn boundary(&self, sign: Sign, k: isize) -> Diagram {
        self.pullback(&self.shape.boundary_inclusion(sign, k)).expect("a boundary inclusion into the shape")
    }

    pub fn input(&self) -> Diagram {
        self.boundary(Sign::Input, self.dim() - 1)
    }

    pub fn output(&self) -> Diagram {
        self.boundary(Sign::Output, self.dim() - 1)
    }

    /// The type `∂⁻t ⇒ ∂⁺t`, or `None` for points.
    pub fn type_of(&self) -> Option<(Diagram, Diagram)> {
        (self.dim() > 0).then(|| (self.input(), self.output()))
    }

    /// `t ∘ₖ s`.
    pub fn paste(&self, other: &Diagram, k: usize) -> Result<Diagram, KernelError> {
        self.check_ambient(other)?;
        let low = self.dim().min(other.dim());
        if k as isize >= low {
            return Err(KernelError::DimensionError { k: k as isize, left: self.dim(), right: other.dim() });
        }
        let ours = self.boundary(Sign::Output, k as isize);
        let theirs = other.boundary(Sign::Input, k as isize);
        if ours != theirs {
            return Err(KernelError::TypeMismatch(format!(
                "output {k}-boundary [{}] does not match input {k}-boundary [{}]",
                ours, theirs
            )));
        }
        let (shape, left, right) = Molecule::paste_with_inclusions(&self.shape, &other.shape, k)?;
        let mut grid = LabelGrid::new(&shape);
        grid.push(&left, self)?;
        grid.push(&right, other)?;
        Ok(Diagram { shape, labels: grid.finish(), ambient: self.ambient })
    }

    /// Pasting in dimension `min(dim t, dim s) − 1`.
    pub fn paste_default(&self, other: &Diagram) -> Result<Diagram, KernelError> {
        let k = self.dim().min(other.dim()) - 1;
        if k < 0 {
            return Err(KernelError::DimensionError { k, left: self.dim(), right: other.dim() });
        }
        self.paste(other, k as usize)
    }

    /// The unit `t ⇒ t` of a cell.
    pub fn unit(&self) -> Result<Diagram, KernelError> {
        self.pullback(&unit_collapse(&self.shape)?)
    }

    /// The left unitor `(unit(∂⁻t) ∘ t) ⇒ t` of a cell whose input
    /// boundary is itself an atom.
    pub fn lunitor(&self) -> Result<Diagram, KernelError> {
        self.pullback(&unitor_map(&self.shape, UnitorSide::Left)?)
    }

    /// The right unitor `(t ∘ unit(∂⁺t)) ⇒ t`.
    pub fn runitor(&self) -> Result<Diagram, KernelError> {
        self.pullback(&unitor_map(&self.shape, UnitorSide::Right)?)
    }

    /// Glues `s` onto the region of a boundary of `self` spanned by the
    /// given `k`-dimensional positions; see [`crate::molecule::paste_along`].
    pub fn paste_along(
        &self,
        positions: &[usize],
        s: &Diagram,
        side: Side,
        k: Option<usize>,
    ) -> Result<Diagram, KernelError> {
        self.check_ambient(s)?;
        let (shape, left, right) = paste_along_with_inclusions(&self.shape, positions, &s.shape, side, k)?;
        let mut grid = LabelGrid::new(&shape);
        grid.push(&left, self)?;
        grid.push(&right, s)?;
        Ok(Diagram { shape, labels: grid.finish(), ambient: self.ambient })
    }

    /// The same diagram with every label replaced.
    pub(crate) fn relabel(&self, ambient: AmbientId, mut f: impl FnMut(&Label) -> Label) -> Diagram {
        let labels = self.labels.iter().map(|s| s.iter().map(&mut f).collect()).collect();
        Diagram { shape: self.shape.clone(), labels, ambient }
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, stratum) in self.labels.iter().enumerate() {
            if n > 0 {
                f.write_str(" | ")?;
            }
            let names: Vec<&str> = stratum.iter().map(|l| l.name()).collect();
            f.write_str(&names.join(","))?;
        }
        Ok(())
    }
}
