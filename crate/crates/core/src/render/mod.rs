//! Deterministic pictures of molecules and diagrams: Hasse diagrams in any
//! dimension and string diagrams up to dimension 2, as TikZ or SVG.

mod emit;
mod hasse;
mod string;

use thiserror::Error;

use crate::dsl::DrawOptions;
use crate::kernel::Diagram;
use crate::molecule::Molecule;
use crate::ogposet::El;

pub use crate::dsl::{Format, View};
pub use emit::{emit, svg_color};
pub use hasse::hasse_layout;
pub use string::string_layout;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RenderError {
    #[error("string diagrams need dimension at most 2, found {0}")]
    DimensionTooHigh(isize),
}

/// What to draw: a bare shape, labelled by positions, or a diagram.
#[derive(Debug, Clone, Copy)]
pub struct Drawable<'a> {
    pub shape: &'a Molecule,
    pub diagram: Option<&'a Diagram>,
}

impl<'a> From<&'a Molecule> for Drawable<'a> {
    fn from(shape: &'a Molecule) -> Self {
        Drawable { shape, diagram: None }
    }
}

impl<'a> From<&'a Diagram> for Drawable<'a> {
    fn from(d: &'a Diagram) -> Self {
        Drawable { shape: d.shape(), diagram: Some(d) }
    }
}

impl Drawable<'_> {
    fn name(&self, el: El) -> Option<&str> {
        self.diagram.map(|d| d.label(el).name())
    }

    fn degenerate(&self, el: El) -> bool {
        self.diagram.is_some_and(|d| d.is_degenerate(el))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    fn lerp(self, other: Point, t: f64) -> Point {
        Point::new(self.x + (other.x - self.x) * t, self.y + (other.y - self.y) * t)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeClass {
    /// Hasse edge from an input face up to its coface.
    Input,
    /// Hasse edge from a coface down to an output face.
    Output,
    Wire,
}

/// A cubic curve; straight edges have their control points on the chord.
#[derive(Debug, Clone, PartialEq)]
pub struct Edge {
    pub from: Point,
    pub c1: Point,
    pub c2: Point,
    pub to: Point,
    pub class: EdgeClass,
    pub faded: bool,
    /// The element drawn, for wires; the coface for Hasse edges.
    pub el: El,
}

impl Edge {
    fn point_at(&self, t: f64) -> Point {
        let s = 1.0 - t;
        let (a, b, c, d) = (s * s * s, 3.0 * s * s * t, 3.0 * s * t * t, t * t * t);
        Point::new(
            a * self.from.x + b * self.c1.x + c * self.c2.x + d * self.to.x,
            a * self.from.y + b * self.c1.y + c * self.c2.y + d * self.to.y,
        )
    }

    pub fn is_straight(&self) -> bool {
        self.class != EdgeClass::Wire
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Node {
    pub el: El,
    pub at: Point,
    /// Hidden nodes are kept in the layout but not drawn.
    pub visible: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LabelClass {
    /// Text standing for an element of a Hasse diagram.
    Element,
    Wire,
    Node,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Label {
    pub text: String,
    pub at: Point,
    /// Shift in points from the anchor.
    pub offset: (f64, f64),
    pub class: LabelClass,
    pub faded: bool,
}

/// Colors and scales used when emitting.
#[derive(Debug, Clone, PartialEq)]
pub struct Style {
    pub input_color: String,
    pub output_color: String,
    pub bg: Option<String>,
    pub xscale: f64,
    pub yscale: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Layout {
    pub view: View,
    pub nodes: Vec<Node>,
    pub edges: Vec<Edge>,
    pub labels: Vec<Label>,
    pub style: Style,
}

pub(crate) const FADED_OPACITY: f64 = 0.25;

/// Lays out and emits in one step, applying the requested background.
/// Without options this draws a Hasse diagram as TikZ.
pub fn render<'a>(item: impl Into<Drawable<'a>>, options: &DrawOptions) -> Result<String, RenderError> {
    let mut layout = match options.view.unwrap_or(View::Hasse) {
        View::Hasse => hasse_layout(item),
        View::String => string_layout(item)?,
    };
    layout.style.bg.clone_from(&options.bg);
    Ok(emit(&layout, options.format.unwrap_or(Format::Tikz)))
}
