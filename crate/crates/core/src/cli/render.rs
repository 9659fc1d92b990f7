use std::fmt::Write as _;

use crate::coloring::{Color, Coloring};
use crate::planar::{PlanarTriangulation, VertexId};
use crate::spiral::SpiralDecomposition;

const SIZE: f64 = 800.0;
const MARGIN: f64 = 40.0;

/// Tutte barycentric layout: the outer triangle is pinned to an equilateral
/// triangle and every other vertex sits at the mean of its neighbours,
/// solved by Gauss-Seidel sweeps.
pub fn tutte_layout(g: &PlanarTriangulation) -> Vec<(f64, f64)> {
    let n = g.n();
    let mut pos = vec![(SIZE / 2.0, SIZE / 2.0); n];
    let mut pinned = vec![false; n];
    let side = SIZE - 2.0 * MARGIN;
    let h = side * 3f64.sqrt() / 2.0;
    let top = (SIZE - h) / 2.0;
    let corners = [(SIZE / 2.0, top), (MARGIN, top + h), (SIZE - MARGIN, top + h)];
    for (v, p) in g.outer().iter().zip(corners) {
        pos[v.index()] = p;
        pinned[v.index()] = true;
    }
    for _ in 0..20_000 {
        let mut moved = 0f64;
        for v in 0..n {
            if pinned[v] {
                continue;
            }
            let rot = g.rotation(VertexId(v as u32));
            let (sx, sy) = rot.iter().fold((0.0, 0.0), |(x, y), w| (x + pos[w.index()].0, y + pos[w.index()].1));
            let k = rot.len() as f64;
            let next = (sx / k, sy / k);
            moved = moved.max((next.0 - pos[v].0).abs() + (next.1 - pos[v].1).abs());
            pos[v] = next;
        }
        if moved < 1e-6 {
            break;
        }
    }
    pos
}

fn color_name(c: Option<Color>) -> &'static str {
    c.map_or("white", Color::name)
}

/// First vertex of every segment after the first one in each chain.
fn segment_starts(d: &SpiralDecomposition) -> Vec<VertexId> {
    d.segments.iter().flat_map(|segs| segs.iter().skip(1).map(|s| d.vertex(s.chain, s.start))).collect()
}

pub fn to_dot(g: &PlanarTriangulation, d: &SpiralDecomposition, coloring: Option<&Coloring>) -> String {
    let pos = tutte_layout(g);
    let starts = segment_starts(d);
    let mut out = String::from("graph spiral {\n  node [style=filled, fontsize=10];\n");
    for v in g.vertices() {
        let (x, y) = pos[v.index()];
        let shape = if starts.contains(&v) { "doublecircle" } else { "circle" };
        let fill = color_name(coloring.and_then(|c| c.get(v)));
        let _ = writeln!(out, "  {v} [pos=\"{x:.2},{:.2}!\", shape={shape}, fillcolor={fill}];", SIZE - y);
    }
    let on_chain = |u: VertexId, w: VertexId| {
        let ((cu, pu), (cw, pw)) = (d.locate(u), d.locate(w));
        cu == cw && pu.abs_diff(pw) == 1
    };
    for (u, w) in g.edges() {
        if on_chain(u, w) {
            let _ = writeln!(out, "  {u} -- {w} [penwidth=3, color=black];");
        } else {
            let _ = writeln!(out, "  {u} -- {w} [color=gray];");
        }
    }
    out.push_str("}\n");
    out
}

pub fn to_svg(g: &PlanarTriangulation, d: &SpiralDecomposition, coloring: Option<&Coloring>) -> String {
    let pos = tutte_layout(g);
    let starts = segment_starts(d);
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">"
    );
    out.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n<g stroke=\"#bbbbbb\" stroke-width=\"1\">\n");
    for (u, w) in g.edges() {
        let (a, b) = (pos[u.index()], pos[w.index()]);
        let _ = writeln!(out, "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\"/>", a.0, a.1, b.0, b.1);
    }
    out.push_str("</g>\n<g fill=\"none\" stroke=\"black\" stroke-width=\"3\" stroke-linejoin=\"round\">\n");
    for (i, c) in d.chains.iter().enumerate() {
        let pts: Vec<String> =
            c.vertices.iter().map(|v| format!("{:.2},{:.2}", pos[v.index()].0, pos[v.index()].1)).collect();
        let _ = writeln!(out, "<polyline class=\"chain\" data-chain=\"{i}\" points=\"{}\"/>", pts.join(" "));
    }
    out.push_str("</g>\n");
    for v in &starts {
        let (x, y) = pos[v.index()];
        let _ = writeln!(
            out,
            "<rect class=\"segment-start\" x=\"{:.2}\" y=\"{:.2}\" width=\"20\" height=\"20\" fill=\"none\" stroke=\"black\" stroke-width=\"2\"/>",
            x - 10.0,
            y - 10.0
        );
    }
    for v in g.vertices() {
        let (x, y) = pos[v.index()];
        let fill = color_name(coloring.and_then(|c| c.get(v)));
        let _ = writeln!(
            out,
            "<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"7\" fill=\"{fill}\" stroke=\"black\"/><text x=\"{:.2}\" y=\"{:.2}\" font-size=\"10\">{v}</text>",
            x + 8.0,
            y - 8.0
        );
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genlab::corpus_entry;

    #[test]
    fn k4_centre_at_the_centroid() {
        let g = corpus_entry("k4").unwrap().graph();
        let p = tutte_layout(&g);
        let cx = (p[0].0 + p[1].0 + p[2].0) / 3.0;
        let cy = (p[0].1 + p[1].1 + p[2].1) / 3.0;
        assert!((p[3].0 - cx).abs() < 1e-6 && (p[3].1 - cy).abs() < 1e-6);
    }

    #[test]
    fn interior_vertices_are_barycentres() {
        let g = corpus_entry("icosahedron").unwrap().graph();
        let p = tutte_layout(&g);
        for v in g.vertices().filter(|v| !g.outer().contains(v)) {
            let rot = g.rotation(v);
            let mx = rot.iter().map(|w| p[w.index()].0).sum::<f64>() / rot.len() as f64;
            assert!((p[v.index()].0 - mx).abs() < 1e-3);
        }
    }
}
