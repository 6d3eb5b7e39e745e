//! A small language for complexes: `gen` declares generators, `let` names
//! diagrams and `draw` requests a rendering.
//!
//! ```text
//! gen x
//! gen a : x => x
//! gen m : a *0 a => a
//! let aaa = a * a * a
//! draw m view=string format=svg
//! ```

mod ast;
mod parse;

use std::collections::HashMap;

use thiserror::Error;

use crate::kernel::{DiagSet, Diagram, KernelError};

pub use ast::{DrawOptions, Expr, Format, Script, Stmt, StmtKind, View};
pub use parse::parse;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DslError {
    #[error("{line}:{col}: parse error: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("{line}:{col}: unknown name {name}")]
    UnknownName { name: String, line: usize, col: usize },
    #[error("{line}:{col}: {error}")]
    Kernel { error: KernelError, line: usize, col: usize },
}

impl DslError {
    pub fn line(&self) -> usize {
        match self {
            DslError::Parse { line, .. } | DslError::UnknownName { line, .. } | DslError::Kernel { line, .. } => *line,
        }
    }
}

#[derive(Debug, Clone)]
pub struct DrawRequest {
    pub name: String,
    pub diagram: Diagram,
    pub options: DrawOptions,
    pub line: usize,
}

/// The result of running a script.
#[derive(Debug)]
pub struct Elaborated {
    pub diagset: DiagSet,
    bindings: Vec<(String, Diagram)>,
    index: HashMap<String, usize>,
    pub draws: Vec<DrawRequest>,
}

impl Elaborated {
    /// Every named diagram, generators included, in order of definition.
    pub fn bindings(&self) -> &[(String, Diagram)] {
        &self.bindings
    }

    pub fn get(&self, name: &str) -> Option<&Diagram> {
        self.index.get(name).map(|&i| &self.bindings[i].1)
    }

    fn bind(&mut self, name: &str, d: Diagram) {
        self.index.insert(name.to_string(), self.bindings.len());
        self.bindings.push((name.to_string(), d));
    }

    fn eval(&self, e: &Expr, stmt: &Stmt) -> Result<Diagram, DslError> {
        let kernel = |error| DslError::Kernel { error, line: stmt.line, col: stmt.col };
        Ok(match e {
            Expr::Name(n) => self
                .get(n)
                .cloned()
                .ok_or_else(|| DslError::UnknownName { name: n.clone(), line: stmt.line, col: stmt.col })?,
            Expr::Paste(l, r, k) => {
                let (l, r) = (self.eval(l, stmt)?, self.eval(r, stmt)?);
                match k {
                    Some(k) => l.paste(&r, *k),
                    None => l.paste_default(&r),
                }
                .map_err(kernel)?
            }
            Expr::Unit(e) => self.eval(e, stmt)?.unit().map_err(kernel)?,
            Expr::Lunitor(e) => self.eval(e, stmt)?.lunitor().map_err(kernel)?,
            Expr::Runitor(e) => self.eval(e, stmt)?.runitor().map_err(kernel)?,
        })
    }
}

/// Runs each statement through the kernel in order.
pub fn elaborate(script: &Script) -> Result<Elaborated, DslError> {
    let mut out = Elaborated { diagset: DiagSet::new(), bindings: Vec::new(), index: HashMap::new(), draws: Vec::new() };
    for stmt in &script.stmts {
        let kernel = |error| DslError::Kernel { error, line: stmt.line, col: stmt.col };
        match &stmt.kind {
            StmtKind::Gen { name, .. } | StmtKind::Let { name, .. } if out.index.contains_key(name) => {
                return Err(kernel(KernelError::DuplicateName(name.clone())));
            }
            StmtKind::Gen { name, ty: None } => {
                let cell = out.diagset.add_point(name).map_err(kernel)?;
                out.bind(name, cell);
            }
            StmtKind::Gen { name, ty: Some((input, output)) } => {
                let input = out.eval(input, stmt)?;
                let output = out.eval(output, stmt)?;
                let cell = out.diagset.add_gen(name, &input, &output).map_err(kernel)?;
                out.bind(name, cell);
            }
            StmtKind::Let { name, expr } => {
                let d = out.eval(expr, stmt)?;
                out.bind(name, d);
            }
            StmtKind::Draw { name, options } => {
                let diagram = out
                    .get(name)
                    .cloned()
                    .ok_or_else(|| DslError::UnknownName { name: name.clone(), line: stmt.line, col: stmt.col })?;
                out.draws.push(DrawRequest { name: name.clone(), diagram, options: options.clone(), line: stmt.line });
            }
        }
    }
    Ok(out)
}

/// Parses and elaborates a script.
pub fn load(src: &str) -> Result<Elaborated, DslError> {
    elaborate(&parse(src)?)
}
