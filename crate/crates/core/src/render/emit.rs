use std::fmt::Write;

use super::{Edge, EdgeClass, Format, Label, LabelClass, Layout, Point, View, FADED_OPACITY};

/// Fixed six-decimal formatting, with no negative zero.
fn num(v: f64) -> String {
    let v = if v.abs() < 5e-7 { 0.0 } else { v };
    format!("{v:.6}")
}

fn pt(p: Point) -> String {
    format!("({}, {})", num(p.x), num(p.y))
}

pub fn emit(layout: &Layout, format: Format) -> String {
    match format {
        Format::Tikz => tikz(layout),
        Format::Svg => svg(layout),
    }
}

fn edge_color<'a>(layout: &'a Layout, e: &Edge) -> &'a str {
    match e.class {
        EdgeClass::Input => &layout.style.input_color,
        EdgeClass::Output => &layout.style.output_color,
        EdgeClass::Wire => "black",
    }
}

fn opacity(faded: bool) -> f64 {
    if faded {
        FADED_OPACITY
    } else {
        1.0
    }
}

fn tex_escape(s: &str) -> String {
    s.replace('_', "\\_")
}

fn tikz(layout: &Layout) -> String {
    let mut out = String::new();
    let style = &layout.style;
    writeln!(out, "\\begin{{tikzpicture}}[xscale={}, yscale={}]", num(style.xscale), num(style.yscale)).unwrap();
    if let Some(bg) = &style.bg {
        writeln!(out, "\\path[fill={bg}] {} rectangle {};", pt(Point::new(0.0, 0.0)), pt(Point::new(1.0, 1.0))).unwrap();
    }
    for e in &layout.edges {
        let color = edge_color(layout, e);
        if e.is_straight() {
            writeln!(out, "\\draw[->, draw={color}] {} -- {};", pt(e.from), pt(e.to)).unwrap();
        } else {
            writeln!(
                out,
                "\\draw[color={color}, opacity={}] {} .. controls {} and {} .. {};",
                num(opacity(e.faded)),
                pt(e.from),
                pt(e.c1),
                pt(e.c2),
                pt(e.to)
            )
            .unwrap();
        }
    }
    if layout.view == View::String {
        for n in layout.nodes.iter().filter(|n| n.visible) {
            writeln!(out, "\\node[circle, fill=black, draw=black, inner sep=1pt] at {} {{}};", pt(n.at)).unwrap();
        }
    }
    for l in &layout.labels {
        writeln!(
            out,
            "\\node[text=black, opacity={}, font={{\\scriptsize \\sffamily}}, xshift={}pt, yshift={}pt] at {} {{{}}};",
            num(opacity(l.faded)),
            num(l.offset.0),
            num(l.offset.1),
            pt(l.at),
            tex_escape(&l.text)
        )
        .unwrap();
    }
    out.push_str("\\end{tikzpicture}\n");
    out
}

const PX_PER_UNIT: f64 = 100.0;
const PX_PER_PT: f64 = 4.0 / 3.0;

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// An SVG color for a TikZ color expression. `name!p` mixes `p` percent of
/// a basic color with white; anything else is passed through.
pub fn svg_color(spec: &str) -> String {
    let rgb = |name: &str| -> Option<(f64, f64, f64)> {
        Some(match name {
            "black" => (0.0, 0.0, 0.0),
            "white" => (255.0, 255.0, 255.0),
            "gray" => (128.0, 128.0, 128.0),
            "red" => (255.0, 0.0, 0.0),
            "green" => (0.0, 255.0, 0.0),
            "blue" => (0.0, 0.0, 255.0),
            "magenta" => (255.0, 0.0, 255.0),
            "cyan" => (0.0, 255.0, 255.0),
            "yellow" => (255.0, 255.0, 0.0),
            _ => return None,
        })
    };
    let Some((name, pct)) = spec.split_once('!') else {
        return spec.to_string();
    };
    match (rgb(name), pct.parse::<f64>()) {
        (Some((r, g, b)), Ok(p)) if (0.0..=100.0).contains(&p) => {
            let mix = |c: f64| (255.0 - (255.0 - c) * p / 100.0).round() as u8;
            format!("#{:02x}{:02x}{:02x}", mix(r), mix(g), mix(b))
        }
        _ => spec.to_string(),
    }
}

fn svg(layout: &Layout) -> String {
    let style = &layout.style;
    let (w, h) = (style.xscale * PX_PER_UNIT, style.yscale * PX_PER_UNIT);
    let x = |p: Point| num(p.x * w);
    let y = |p: Point| num((1.0 - p.y) * h);
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n");
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\">",
        num(w),
        num(h)
    )
    .unwrap();
    if layout.view == View::Hasse {
        out.push_str("<defs>\n");
        for (id, color) in [("input", &style.input_color), ("output", &style.output_color)] {
            writeln!(
                out,
                "<marker id=\"head-{id}\" viewBox=\"0 0 10 10\" refX=\"10\" refY=\"5\" markerWidth=\"6\" markerHeight=\"6\" orient=\"auto\"><path d=\"M 0 0 L 10 5 L 0 10 z\" fill=\"{}\"/></marker>",
                xml_escape(&svg_color(color))
            )
            .unwrap();
        }
        out.push_str("</defs>\n");
    }
    if let Some(bg) = &style.bg {
        writeln!(out, "<rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"{}\"/>", num(w), num(h), xml_escape(&svg_color(bg)))
            .unwrap();
    }
    for e in &layout.edges {
        let color = xml_escape(&svg_color(edge_color(layout, e)));
        if e.is_straight() {
            let head = if e.class == EdgeClass::Input { "input" } else { "output" };
            writeln!(
                out,
                "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{color}\" marker-end=\"url(#head-{head})\"/>",
                x(e.from),
                y(e.from),
                x(e.to),
                y(e.to)
            )
            .unwrap();
        } else {
            writeln!(
                out,
                "<path d=\"M {} {} C {} {} {} {} {} {}\" fill=\"none\" stroke=\"{color}\" stroke-opacity=\"{}\"/>",
                x(e.from),
                y(e.from),
                x(e.c1),
                y(e.c1),
                x(e.c2),
                y(e.c2),
                x(e.to),
                y(e.to),
                num(opacity(e.faded))
            )
            .unwrap();
        }
    }
    if layout.view == View::String {
        for n in layout.nodes.iter().filter(|n| n.visible) {
            writeln!(out, "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"black\"/>", x(n.at), y(n.at), num(3.0)).unwrap();
        }
    }
    for l in &layout.labels {
        svg_label(&mut out, l, x(l.at), y(l.at));
    }
    out.push_str("</svg>\n");
    out
}

fn svg_label(out: &mut String, l: &Label, x: String, y: String) {
    let size = if l.class == LabelClass::Element { 11.0 } else { 10.0 };
    writeln!(
        out,
        "<text x=\"{x}\" y=\"{y}\" dx=\"{}\" dy=\"{}\" font-family=\"sans-serif\" font-size=\"{}\" fill=\"black\" fill-opacity=\"{}\" text-anchor=\"middle\" dominant-baseline=\"central\">{}</text>",
        num(l.offset.0 * PX_PER_PT),
        num(-l.offset.1 * PX_PER_PT),
        num(size),
        num(opacity(l.faded)),
        xml_escape(&l.text)
    )
    .unwrap();
}
