use crate::ogposet::{El, OgPoset, Sign};

use super::{Drawable, Edge, EdgeClass, Label, LabelClass, Layout, Node, Point, RenderError, Style, View};

/// Orders arrows along the path they form, falling back to position order
/// when they do not form one.
fn path_order(poset: &OgPoset, wires: &[usize]) -> Vec<usize> {
    let end = |w: usize, sign| poset.faces(El::new(1, w), sign).first().copied();
    let start = wires.iter().copied().find(|&w| !wires.iter().any(|&v| end(v, Sign::Output) == end(w, Sign::Input)));
    let mut out = Vec::with_capacity(wires.len());
    let mut cur = start;
    while let Some(w) = cur {
        out.push(w);
        cur = wires.iter().copied().find(|&v| !out.contains(&v) && end(v, Sign::Input) == end(w, Sign::Output));
    }
    if out.len() == wires.len() {
        out
    } else {
        let mut sorted = wires.to_vec();
        sorted.sort_unstable();
        sorted
    }
}

/// The slice after a node: its inputs replaced by its outputs, in place
/// when the inputs sit side by side.
fn rewrite(slice: &[usize], inputs: &[usize], outputs: &[usize]) -> Vec<usize> {
    let at = inputs.first().and_then(|w| slice.iter().position(|v| v == w));
    match at {
        Some(i) if slice[i..].starts_with(inputs) => {
            let mut next = slice[..i].to_vec();
            next.extend_from_slice(outputs);
            next.extend_from_slice(&slice[i + inputs.len()..]);
            next
        }
        _ => {
            let i = slice.iter().position(|v| inputs.contains(v)).unwrap_or(slice.len());
            let mut next: Vec<usize> = slice[..i].iter().copied().filter(|v| !inputs.contains(v)).collect();
            next.extend_from_slice(outputs);
            next.extend(slice[i..].iter().copied().filter(|v| !inputs.contains(v)));
            next
        }
    }
}

/// Nodes producing a wire come before the nodes consuming it, otherwise
/// lower positions first.
fn stacking_order(sides: &[(Vec<usize>, Vec<usize>)]) -> Vec<usize> {
    let feeds = |i: usize, j: usize| sides[i].1.iter().any(|w| sides[j].0.contains(w));
    let mut placed = vec![false; sides.len()];
    let mut order = Vec::with_capacity(sides.len());
    while order.len() < sides.len() {
        let ready = (0..sides.len()).filter(|&j| !placed[j]);
        let next = ready
            .clone()
            .find(|&j| (0..sides.len()).all(|i| placed[i] || i == j || !feeds(i, j)))
            .or_else(|| ready.min())
            .expect("an unplaced node");
        placed[next] = true;
        order.push(next);
    }
    order
}

/// 2-dimensional elements become nodes stacked in dependency order and
/// 1-dimensional elements become wires running from the node producing
/// them, or the bottom edge, to the node consuming them, or the top edge.
pub fn string_layout<'a>(item: impl Into<Drawable<'a>>) -> Result<Layout, RenderError> {
    let item = item.into();
    let poset = item.shape.poset();
    let dim = poset.dim();
    if dim > 2 {
        return Err(RenderError::DimensionTooHigh(dim));
    }
    let wires = if dim >= 1 { poset.stratum_len(1) } else { 0 };
    let count = if dim == 2 { poset.stratum_len(2) } else { 0 };
    let first: Vec<usize> = match dim {
        2 => {
            let input = poset.whole().boundary(Some(Sign::Input), Some(1)).into_support();
            path_order(poset, input.stratum(1))
        }
        1 => path_order(poset, &(0..wires).collect::<Vec<_>>()),
        _ => Vec::new(),
    };
    let sides: Vec<(Vec<usize>, Vec<usize>)> = (0..count)
        .map(|i| {
            let el = El::new(2, i);
            (path_order(poset, poset.faces(el, Sign::Input)), path_order(poset, poset.faces(el, Sign::Output)))
        })
        .collect();
    let order = stacking_order(&sides);
    let mut slices = vec![first];
    let mut created = vec![None; wires];
    let mut consumed = vec![None; wires];
    for (rank, &node) in order.iter().enumerate() {
        let (inputs, outputs) = &sides[node];
        for &w in inputs {
            consumed[w] = Some(rank);
        }
        for &w in outputs {
            created[w] = Some(rank);
        }
        let next = rewrite(slices.last().expect("at least one slice"), inputs, outputs);
        slices.push(next);
    }
    let slot = |j: usize, w: usize| {
        let slice = &slices[j];
        slice.iter().position(|&v| v == w).map(|i| (i as f64 + 1.0) / (slice.len() as f64 + 1.0))
    };
    let mut nodes = Vec::with_capacity(count);
    let mut labels = Vec::new();
    for (i, &node) in order.iter().enumerate() {
        let (inputs, outputs) = &sides[node];
        let xs: Vec<f64> = inputs
            .iter()
            .filter_map(|&w| slot(i, w))
            .chain(outputs.iter().filter_map(|&w| slot(i + 1, w)))
            .collect();
        let x = if xs.is_empty() { 0.5 } else { xs.iter().sum::<f64>() / xs.len() as f64 };
        let el = El::new(2, node);
        let at = Point::new(x, (i as f64 + 0.5) / count as f64);
        let visible = !item.degenerate(el);
        nodes.push(Node { el, at, visible });
    }
    let mut edges = Vec::with_capacity(wires);
    for w in 0..wires {
        let el = El::new(1, w);
        let first = created[w].map_or(0, |n| n + 1);
        let last = consumed[w].unwrap_or(count);
        let xa = slot(first, w).unwrap_or(0.5);
        let xb = slot(last, w).unwrap_or(xa);
        let from = created[w].map_or(Point::new(xa, 0.0), |n| nodes[n].at);
        let to = consumed[w].map_or(Point::new(xb, 1.0), |n| nodes[n].at);
        let dy = to.y - from.y;
        let edge = Edge {
            from,
            c1: Point::new(xa, from.y + dy / 3.0),
            c2: Point::new(xb, to.y - dy / 3.0),
            to,
            class: EdgeClass::Wire,
            faded: item.degenerate(el),
            el,
        };
        let text = item.name(el).map_or_else(|| w.to_string(), str::to_string);
        labels.push(Label { text, at: edge.point_at(0.5), offset: (4.0, 4.0), class: LabelClass::Wire, faded: edge.faded });
        edges.push(edge);
    }
    for node in nodes.iter().filter(|n| n.visible) {
        let text = item.name(node.el).map_or_else(|| node.el.pos.to_string(), str::to_string);
        labels.push(Label { text, at: node.at, offset: (4.0, 4.0), class: LabelClass::Node, faded: false });
    }
    let style =
        Style { input_color: "magenta".into(), output_color: "blue".into(), bg: None, xscale: 3.0, yscale: 3.0 };
    Ok(Layout { view: View::String, nodes, edges, labels, style })
}
