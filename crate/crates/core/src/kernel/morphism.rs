use std::collections::HashMap;
use std::sync::Arc;

use super::{AmbientId, DiagSet, Diagram, KernelError, Label};

/// A morphism of complexes, given by a cell of the target for each
/// generator of the source.
#[derive(Debug, Clone)]
pub struct Morphism {
    source: AmbientId,
    target: AmbientId,
    assignment: Vec<(Arc<str>, Diagram)>,
    sigma: HashMap<Arc<str>, Label>,
}

impl Morphism {
    /// Checks each assignment in declaration order: the assigned diagram
    /// must have the shape of the generator and the image of its type.
    pub fn new<'a, I>(source: &DiagSet, target: &DiagSet, assignment: I) -> Result<Morphism, KernelError>
    where
        I: IntoIterator<Item = (&'a str, Diagram)>,
    {
        let mut given: HashMap<String, Diagram> = HashMap::new();
        for (name, d) in assignment {
            if !source.contains(name) {
                return Err(KernelError::UnknownGenerator(name.into()));
            }
            if d.ambient() != target.id() {
                return Err(KernelError::AmbientMismatch);
            }
            if given.insert(name.to_string(), d).is_some() {
                return Err(KernelError::DuplicateName(name.into()));
            }
        }
        let mut f = Morphism { source: source.id(), target: target.id(), assignment: Vec::new(), sigma: HashMap::new() };
        for g in source.generators() {
            let t = given.remove(g.name()).ok_or_else(|| KernelError::MissingAssignment(g.name().into()))?;
            if t.shape() != g.shape() {
                return Err(KernelError::TypeMismatch(format!(
                    "{} has shape {} but is sent to a diagram of shape {}",
                    g.name(),
                    g.shape(),
                    t.shape()
                )));
            }
            if let (Some(input), Some(output)) = (g.input(), g.output()) {
                let (want_in, want_out) = (f.apply(input)?, f.apply(output)?);
                let (got_in, got_out) = t.type_of().expect("same shape as a generator of positive dimension");
                if got_in != want_in || got_out != want_out {
                    return Err(KernelError::TypeMismatch(format!(
                        "{} has type [{want_in}] => [{want_out}] after substitution, but is sent to [{got_in}] => [{got_out}]",
                        g.name()
                    )));
                }
            }
            let top = t.top_label().expect("generator shapes are atoms").clone();
            f.sigma.insert(g.name().into(), top);
            f.assignment.push((g.name().into(), t));
        }
        Ok(f)
    }

    /// Each generator sent to its own cell.
    pub fn identity(ds: &DiagSet) -> Morphism {
        Morphism::new(ds, ds, ds.generators().iter().map(|g| (g.name(), g.cell().clone())))
            .expect("cells have their own types")
    }

    pub fn source(&self) -> AmbientId {
        self.source
    }

    pub fn target(&self) -> AmbientId {
        self.target
    }

    /// The assigned diagram of each generator, in declaration order.
    pub fn assignment(&self) -> &[(Arc<str>, Diagram)] {
        &self.assignment
    }

    /// `t[σ]`: every label replaced by the top label of its image.
    pub fn apply(&self, t: &Diagram) -> Result<Diagram, KernelError> {
        if t.ambient() != self.source {
            return Err(KernelError::AmbientMismatch);
        }
        for stratum in t.labels() {
            for l in stratum {
                if !self.sigma.contains_key(l.name()) {
                    return Err(KernelError::MissingAssignment(l.name().into()));
                }
            }
        }
        Ok(t.relabel(self.target, |l| self.sigma[l.name()].clone()))
    }

    /// `self` followed by `g`.
    pub fn then(&self, g: &Morphism) -> Result<Morphism, KernelError> {
        if self.target != g.source {
            return Err(KernelError::AmbientMismatch);
        }
        let mut assignment = Vec::with_capacity(self.assignment.len());
        let mut sigma = HashMap::new();
        for (name, t) in &self.assignment {
            let image = g.apply(t)?;
            sigma.insert(name.clone(), image.top_label().expect("cells have a top label").clone());
            assignment.push((name.clone(), image));
        }
        Ok(Morphism { source: self.source, target: g.target, assignment, sigma })
    }
}
