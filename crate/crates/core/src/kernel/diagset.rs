use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use crate::molecule::Molecule;
use crate::ogposet::{search_maps, El, Sign};

use super::diagram::LabelGrid;
use super::{Diagram, KernelError, Label};

/// Identifies the complex a diagram belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AmbientId(u64);

impl AmbientId {
    fn fresh() -> Self {
        static NEXT: AtomicU64 = AtomicU64::new(0);
        AmbientId(NEXT.fetch_add(1, Ordering::Relaxed))
    }
}

#[derive(Debug, Clone)]
pub struct GeneratorDecl {
    name: Arc<str>,
    cell: Diagram,
    boundary: Option<(Diagram, Diagram)>,
}

impl GeneratorDecl {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.cell.dim() as usize
    }

    pub fn shape(&self) -> &Molecule {
        self.cell.shape()
    }

    /// The generating cell `x̂`.
    pub fn cell(&self) -> &Diagram {
        &self.cell
    }

    pub fn input(&self) -> Option<&Diagram> {
        self.boundary.as_ref().map(|b| &b.0)
    }

    pub fn output(&self) -> Option<&Diagram> {
        self.boundary.as_ref().map(|b| &b.1)
    }
}

/// A finite diagrammatic complex, grown one generator at a time.
#[derive(Debug)]
pub struct DiagSet {
    id: AmbientId,
    generators: Vec<GeneratorDecl>,
    index: HashMap<Arc<str>, usize>,
}

impl Default for DiagSet {
    fn default() -> Self {
        DiagSet::new()
    }
}

impl DiagSet {
    pub fn new() -> Self {
        DiagSet { id: AmbientId::fresh(), generators: Vec::new(), index: HashMap::new() }
    }

    pub fn id(&self) -> AmbientId {
        self.id
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Generators in declaration order.
    pub fn generators(&self) -> &[GeneratorDecl] {
        &self.generators
    }

    pub fn generator(&self, name: &str) -> Option<&GeneratorDecl> {
        self.index.get(name).map(|&i| &self.generators[i])
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    pub fn cell(&self, name: &str) -> Result<Diagram, KernelError> {
        self.generator(name).map(|g| g.cell.clone()).ok_or_else(|| KernelError::UnknownGenerator(name.into()))
    }

    pub fn label(&self, name: &str) -> Result<Label, KernelError> {
        self.generator(name)
            .map(|g| Label::new(g.name.clone(), g.dim()))
            .ok_or_else(|| KernelError::UnknownGenerator(name.into()))
    }

    fn check_fresh(&self, name: &str) -> Result<(), KernelError> {
        if self.contains(name) {
            Err(KernelError::DuplicateName(name.into()))
        } else {
            Ok(())
        }
    }

    fn check_ambient(&self, d: &Diagram) -> Result<(), KernelError> {
        if d.ambient() == self.id {
            Ok(())
        } else {
            Err(KernelError::AmbientMismatch)
        }
    }

    fn push(&mut self, decl: GeneratorDecl) -> Diagram {
        let cell = decl.cell.clone();
        self.index.insert(decl.name.clone(), self.generators.len());
        self.generators.push(decl);
        cell
    }

    /// Adds a 0-dimensional generator and returns its cell.
    pub fn add_point(&mut self, name: &str) -> Result<Diagram, KernelError> {
        self.check_fresh(name)?;
        let name: Arc<str> = name.into();
        let cell = Diagram::new_unchecked(Molecule::point(), vec![vec![Label::new(name.clone(), 0)]], self.id);
        Ok(self.push(GeneratorDecl { name, cell, boundary: None }))
    }

    /// Adds a generator `input ⇒ output` and returns its cell.
    pub fn add_gen(&mut self, name: &str, input: &Diagram, output: &Diagram) -> Result<Diagram, KernelError> {
        self.check_fresh(name)?;
        self.check_ambient(input)?;
        self.check_ambient(output)?;
        if input.dim() != output.dim() {
            return Err(KernelError::TypeMismatch(format!(
                "input has dimension {} but output has dimension {}",
                input.dim(),
                output.dim()
            )));
        }
        for d in [input, output] {
            if !d.shape().is_round() {
                return Err(KernelError::NotRound(format!("{} [{}]", d.shape(), d)));
            }
        }
        let n = input.dim();
        for sign in Sign::BOTH {
            let (a, b) = (input.boundary(sign, n - 1), output.boundary(sign, n - 1));
            if a != b {
                return Err(KernelError::TypeMismatch(format!(
                    "{sign}-boundaries [{a}] and [{b}] of input and output differ"
                )));
            }
        }
        let (shape, into_in, into_out) = Molecule::atom_with_inclusions(input.shape(), output.shape())?;
        let name: Arc<str> = name.into();
        let mut grid = LabelGrid::new(&shape);
        grid.push(&into_in, input)?;
        grid.push(&into_out, output)?;
        grid.set(shape.top().expect("atoms have a greatest element"), &Label::new(name.clone(), (n + 1) as usize))?;
        let cell = Diagram::new_unchecked(shape, grid.finish(), self.id);
        Ok(self.push(GeneratorDecl { name, cell, boundary: Some((input.clone(), output.clone())) }))
    }

    /// Builds a diagram from a labelling of a molecule, checking that it
    /// is a term: the labels on the closure of each element must be a
    /// generating cell pulled back along a surjective map.
    pub fn diagram(&self, shape: &Molecule, labels: &[Vec<String>]) -> Result<Diagram, KernelError> {
        if labels.len() != shape.size().len() || labels.iter().zip(shape.size()).any(|(l, n)| l.len() != n) {
            return Err(KernelError::IllFormedTerm(format!("labels do not fit the shape {shape}")));
        }
        let mut resolved = Vec::with_capacity(labels.len());
        for (n, stratum) in labels.iter().enumerate() {
            let mut row = Vec::with_capacity(stratum.len());
            for name in stratum {
                let label = self.label(name)?;
                if label.dim() > n {
                    return Err(KernelError::IllFormedTerm(format!(
                        "{name} has dimension {} but labels an element of dimension {n}",
                        label.dim()
                    )));
                }
                row.push(label);
            }
            resolved.push(row);
        }
        let d = Diagram::new_unchecked(shape.clone(), resolved, self.id);
        self.check_reconstruction(&d)?;
        Ok(d)
    }

    /// Checks that every element's labelled closure factors through the
    /// cell of its label by a surjective map. Exhaustive; meant for small
    /// diagrams.
    pub fn check_reconstruction(&self, d: &Diagram) -> Result<(), KernelError> {
        self.check_ambient(d)?;
        let poset = d.shape().poset();
        for el in poset.elements() {
            let support = poset.closure_of_el(el)?.into_support();
            let (sub, embedding) = poset.restrict(&support);
            let local = |e: El| d.label(El::new(e.dim, embedding[e.dim][e.pos]));
            let g = self.generator(d.label(el).name()).ok_or_else(|| KernelError::UnknownGenerator(d.label(el).name().into()))?;
            let target = g.cell.shape().poset_arc().clone();
            let mut found = false;
            search_maps(
                &Arc::new(sub.clone()),
                &target,
                |x, y| local(x) == g.cell.label(y),
                |f| {
                    found = f.is_surjective();
                    !found
                },
            );
            if !found {
                return Err(KernelError::IllFormedTerm(format!(
                    "the labels around {el} are not a degeneracy of {}",
                    g.name
                )));
            }
        }
        Ok(())
    }

    /// Generators sorted by dimension, keeping declaration order within a
    /// dimension. Every boundary refers only to earlier entries.
    pub fn normalized(&self) -> Vec<&GeneratorDecl> {
        let mut list: Vec<&GeneratorDecl> = self.generators.iter().collect();
        list.sort_by_key(|g| g.dim());
        list
    }
}

impl PartialEq for DiagSet {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = (self.normalized(), other.normalized());
        a.len() == b.len() && a.iter().zip(&b).all(|(g, h)| g.name == h.name && g.cell == h.cell)
    }
}

impl fmt::Display for DiagSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in &self.generators {
            match &g.boundary {
                None => writeln!(f, "{}: point", g.name)?,
                Some((i, o)) => writeln!(f, "{}: [{}] => [{}]", g.name, i, o)?,
            }
        }
        Ok(())
    }
}
