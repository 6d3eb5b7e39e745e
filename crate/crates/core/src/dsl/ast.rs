use std::fmt;

/// A diagram expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Name(String),
    /// `e1 *k e2`; no index means `min(dims) − 1`.
    Paste(Box<Expr>, Box<Expr>, Option<usize>),
    Unit(Box<Expr>),
    Lunitor(Box<Expr>),
    Runitor(Box<Expr>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum View {
    Hasse,
    String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Format {
    Tikz,
    Svg,
}

/// Options of a `draw` statement; unset fields take the renderer's defaults.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DrawOptions {
    pub view: Option<View>,
    pub format: Option<Format>,
    pub bg: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StmtKind {
    Gen { name: String, ty: Option<(Expr, Expr)> },
    Let { name: String, expr: Expr },
    Draw { name: String, options: DrawOptions },
}

/// A statement with the 1-based position of its first token.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stmt {
    pub kind: StmtKind,
    pub line: usize,
    pub col: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Script {
    pub stmts: Vec<Stmt>,
}

impl Script {
    /// The statements without positions, for comparing layouts.
    pub fn kinds(&self) -> Vec<&StmtKind> {
        self.stmts.iter().map(|s| &s.kind).collect()
    }
}

impl fmt::Display for View {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            View::Hasse => "hasse",
            View::String => "string",
        })
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Tikz => "tikz",
            Format::Svg => "svg",
        })
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Name(n) => f.write_str(n),
            Expr::Paste(l, r, k) => {
                // a chain with the same index associates to the left
                match &**l {
                    Expr::Paste(_, _, j) if j == k => write!(f, "{l}")?,
                    Expr::Paste(..) => write!(f, "({l})")?,
                    _ => write!(f, "{l}")?,
                }
                match k {
                    Some(k) => write!(f, " *{k} ")?,
                    None => f.write_str(" * ")?,
                }
                match &**r {
                    Expr::Paste(..) => write!(f, "({r})"),
                    _ => write!(f, "{r}"),
                }
            }
            Expr::Unit(e) => write!(f, "unit({e})"),
            Expr::Lunitor(e) => write!(f, "lunitor({e})"),
            Expr::Runitor(e) => write!(f, "runitor({e})"),
        }
    }
}

impl fmt::Display for StmtKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StmtKind::Gen { name, ty: None } => write!(f, "gen {name}"),
            StmtKind::Gen { name, ty: Some((i, o)) } => write!(f, "gen {name} : {i} => {o}"),
            StmtKind::Let { name, expr } => write!(f, "let {name} = {expr}"),
            StmtKind::Draw { name, options } => {
                write!(f, "draw {name}")?;
                if let Some(v) = options.view {
                    write!(f, " view={v}")?;
                }
                if let Some(x) = options.format {
                    write!(f, " format={x}")?;
                }
                if let Some(bg) = &options.bg {
                    write!(f, " bg=\"{bg}\"")?;
                }
                Ok(())
            }
        }
    }
}

/// One statement per line.
impl fmt::Display for Script {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.stmts {
            writeln!(f, "{}", s.kind)?;
        }
        Ok(())
    }
}
