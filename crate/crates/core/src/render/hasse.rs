use crate::ogposet::{El, Sign};

use super::{Drawable, Edge, EdgeClass, Label, LabelClass, Layout, Node, Point, Style, View};

/// Rows by dimension from the bottom; input faces point up to their
/// cofaces and output faces are pointed at from above.
pub fn hasse_layout<'a>(item: impl Into<Drawable<'a>>) -> Layout {
    let item = item.into();
    let poset = item.shape.poset();
    let rows = (poset.dim() + 1).max(1) as f64;
    let at = |el: El| {
        let len = poset.stratum_len(el.dim) as f64;
        Point::new((el.pos as f64 + 0.5) / len, (el.dim as f64 + 0.5) / rows)
    };
    let mut nodes = Vec::new();
    let mut labels = Vec::new();
    for el in poset.elements() {
        nodes.push(Node { el, at: at(el), visible: true });
        let text = match item.name(el) {
            Some(name) => format!("{},{}", el.pos, name),
            None => el.pos.to_string(),
        };
        labels.push(Label { text, at: at(el), offset: (0.0, 0.0), class: LabelClass::Element, faded: false });
    }
    let mut edges = Vec::new();
    for el in poset.elements().filter(|e| e.dim > 0) {
        for sign in Sign::BOTH {
            for &k in poset.faces(el, sign) {
                let face = El::new(el.dim - 1, k);
                let (from, to, class) = match sign {
                    Sign::Input => (at(face), at(el), EdgeClass::Input),
                    Sign::Output => (at(el), at(face), EdgeClass::Output),
                };
                // leave room for the text at both ends
                let (from, to) = (from.lerp(to, 0.1), from.lerp(to, 0.9));
                edges.push(Edge { from, c1: from, c2: to, to, class, faded: false, el });
            }
        }
    }
    let style = Style {
        input_color: "magenta".into(),
        output_color: "blue".into(),
        bg: None,
        xscale: 4.0,
        yscale: (1.5 * rows).max(4.0),
    };
    Layout { view: View::Hasse, nodes, edges, labels, style }
}
