//! Text renderings: SVG and TikZ pictures of planar diagrams with broken
//! lines, DOT graphs of AR components and exchange graphs.
//!
//! Output depends only on the input, so identical data gives identical bytes.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

use num_traits::Signed;

use crate::brokenlines::BrokenLine;
use crate::cluster::TropicalSeed;
use crate::error::{Error, Result};
use crate::lattice::{LatticeVec, SkewForm};
use crate::laurent::LaurentPoly;
use crate::quiver::{ARComponent, Component};
use crate::scattering::plane::Point;
use crate::scattering::{ClusterComplex, ScatteringDiagram, Wall};

const PALETTE: [&str; 6] = [
    "#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
];
const SIZE: f64 = 640.0;

struct Scene {
    extent: f64,
    rays: Vec<((f64, f64), String)>,
    lines: Vec<Vec<((f64, f64), (f64, f64), String)>>,
    bends: Vec<Vec<(f64, f64)>>,
}

/// Short label for a wall function: the full polynomial when it has at most
/// three terms, otherwise its leading terms.
fn wall_label(w: &Wall, tex: bool) -> String {
    let p = w.func.poly();
    let fmt = |p: &LaurentPoly| if tex { tex_poly(p) } else { p.to_canonical() };
    if p.len() <= 3 {
        return fmt(p);
    }
    let head = LaurentPoly::from_terms(
        p.nvars(),
        p.terms().take(3).map(|(e, c)| (e.clone(), c.clone())),
    );
    format!("{} + {}", fmt(&head), if tex { r"\cdots" } else { "…" })
}

fn scene(d: &ScatteringDiagram, lines: &[BrokenLine], tex: bool) -> Result<Scene> {
    if d.rank() != 2 {
        return Err(Error::Unsupported(format!(
            "cannot draw a rank-{} diagram",
            d.rank()
        )));
    }
    let mut extent: f64 = 3.0;
    for l in lines {
        for p in l.bend_points().iter().chain([&l.endpoint]) {
            let (x, y) = p.to_f64();
            extent = extent.max(1.4 * x.abs().max(y.abs()));
        }
    }
    let to_edge = |v: (f64, f64)| {
        let s = extent / v.0.abs().max(v.1.abs());
        (v.0 * s, v.1 * s)
    };
    let mut rays = Vec::new();
    for w in &d.walls {
        for r in w.half_lines() {
            rays.push((to_edge(r.to_f64()), wall_label(w, tex)));
        }
    }
    let mut drawn = Vec::new();
    let mut bends = Vec::new();
    for l in lines {
        let mut pts: Vec<(f64, f64)> = l.bend_points().iter().map(Point::to_f64).collect();
        pts.push(l.endpoint.to_f64());
        let mu = Point::from_ints(l.initial[0], l.initial[1]).to_f64();
        let far = to_edge(mu);
        let start = (pts[0].0 + far.0, pts[0].1 + far.1);
        let mut segs = Vec::new();
        let mut prev = start;
        for (seg, p) in l.segments.iter().zip(&pts) {
            let mono = LaurentPoly::monomial(seg.coeff.clone(), seg.exponent.clone());
            segs.push((
                prev,
                *p,
                if tex {
                    tex_poly(&mono)
                } else {
                    mono.to_canonical()
                },
            ));
            prev = *p;
        }
        bends.push(pts[..pts.len() - 1].to_vec());
        drawn.push(segs);
    }
    Ok(Scene {
        extent,
        rays,
        lines: drawn,
        bends,
    })
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

/// An SVG picture: rays from the origin with function labels, and each
/// broken line as a coloured polyline with its segment monomials.
pub fn emit_svg(d: &ScatteringDiagram, lines: &[BrokenLine]) -> Result<String> {
    let sc = scene(d, lines, false)?;
    let k = (SIZE / 2.0 - 20.0) / sc.extent;
    let c = SIZE / 2.0;
    let px = |p: (f64, f64)| (c + p.0 * k, c - p.1 * k);
    let mut s = String::new();
    writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}" font-family="monospace" font-size="10">"#).unwrap();
    writeln!(s, r##"<rect width="100%" height="100%" fill="white"/>"##).unwrap();
    writeln!(s, r##"<g stroke="#bbbbbb" stroke-dasharray="3 3"><line x1="0" y1="{c}" x2="{SIZE}" y2="{c}"/><line x1="{c}" y1="0" x2="{c}" y2="{SIZE}"/></g>"##).unwrap();
    for ((x, y), label) in &sc.rays {
        let (ex, ey) = px((*x, *y));
        writeln!(s, r##"<line x1="{c:.2}" y1="{c:.2}" x2="{ex:.2}" y2="{ey:.2}" stroke="black" stroke-width="1.5"/>"##).unwrap();
        let (lx, ly) = px((x * 0.82, y * 0.82));
        writeln!(
            s,
            r#"<text x="{lx:.2}" y="{ly:.2}">{}</text>"#,
            xml_escape(label)
        )
        .unwrap();
    }
    for (i, (segs, bends)) in sc.lines.iter().zip(&sc.bends).enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        writeln!(s, r#"<g stroke="{color}" fill="{color}">"#).unwrap();
        for (a, b, label) in segs {
            let (ax, ay) = px(*a);
            let (bx, by) = px(*b);
            writeln!(
                s,
                r#"<line x1="{ax:.2}" y1="{ay:.2}" x2="{bx:.2}" y2="{by:.2}" stroke-width="2"/>"#
            )
            .unwrap();
            let (mx, my) = ((ax + bx) / 2.0, (ay + by) / 2.0);
            writeln!(
                s,
                r#"<text x="{mx:.2}" y="{:.2}" stroke="none">{}</text>"#,
                my - 4.0,
                xml_escape(label)
            )
            .unwrap();
        }
        for p in bends {
            let (x, y) = px(*p);
            writeln!(s, r#"<circle cx="{x:.2}" cy="{y:.2}" r="3"/>"#).unwrap();
        }
        writeln!(s, "</g>").unwrap();
    }
    s.push_str("</svg>\n");
    Ok(s)
}

/// The same picture as a TikZ environment.
pub fn emit_tikz(d: &ScatteringDiagram, lines: &[BrokenLine]) -> Result<String> {
    let sc = scene(d, lines, true)?;
    let scale = 4.0 / sc.extent;
    let mut s = String::new();
    writeln!(s, r"\begin{{tikzpicture}}[scale={scale:.4}]").unwrap();
    let e = sc.extent;
    writeln!(s, r"\draw[gray, dashed] ({:.3},0) -- ({e:.3},0);", -e).unwrap();
    writeln!(s, r"\draw[gray, dashed] (0,{:.3}) -- (0,{e:.3});", -e).unwrap();
    for ((x, y), label) in &sc.rays {
        writeln!(s, r"\draw[thick] (0,0) -- ({x:.3},{y:.3}) node[pos=0.85, sloped, above, font=\tiny] {{${label}$}};").unwrap();
    }
    for (i, (segs, bends)) in sc.lines.iter().zip(&sc.bends).enumerate() {
        let color = ["red", "blue", "green!60!black", "violet", "orange", "brown"][i % 6];
        for (a, b, label) in segs {
            writeln!(
                s,
                r"\draw[{color}, thick] ({:.3},{:.3}) -- ({:.3},{:.3}) node[midway, above, font=\tiny] {{${label}$}};",
                a.0, a.1, b.0, b.1
            )
            .unwrap();
        }
        for p in bends {
            writeln!(s, r"\fill[{color}] ({:.3},{:.3}) circle (1.5pt);", p.0, p.1).unwrap();
        }
    }
    s.push_str("\\end{tikzpicture}\n");
    Ok(s)
}

/// LaTeX form of a polynomial in `A_i, X_i`.
pub fn tex_poly(p: &LaurentPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let n = p.nvars() / 2;
    let names: Vec<String> = if p.nvars() % 2 == 0 {
        (1..=n)
            .map(|i| format!("A_{{{i}}}"))
            .chain((1..=n).map(|i| format!("X_{{{i}}}")))
            .collect()
    } else {
        (1..=p.nvars()).map(|i| format!("z_{{{i}}}")).collect()
    };
    let mut out = String::new();
    for (k, (e, c)) in p.terms().enumerate() {
        let vars: String =
            e.0.iter()
                .zip(&names)
                .filter(|(x, _)| **x != 0)
                .map(|(x, v)| {
                    if *x == 1 {
                        v.clone()
                    } else {
                        format!("{v}^{{{x}}}")
                    }
                })
                .collect();
        let mag = c.abs();
        let sign = if c.is_negative() {
            "-"
        } else if k > 0 {
            "+"
        } else {
            ""
        };
        let coeff = if mag == 1.into() && !vars.is_empty() {
            String::new()
        } else {
            mag.to_string()
        };
        if k > 0 {
            out.push(' ');
        }
        out.push_str(sign);
        if k > 0 {
            out.push(' ');
        }
        out.push_str(&coeff);
        out.push_str(&vars);
    }
    out
}

/// `P2`, `τ^-1 P2`, `I1`, … or the dimension vector for regular nodes.
pub fn node_name(c: Component, label: Option<(usize, u32)>, dim: &LatticeVec) -> String {
    match (c, label) {
        (Component::P, Some((a, 0))) => format!("P{}", a + 1),
        (Component::P, Some((a, t))) => format!("τ^-{t} P{}", a + 1),
        (Component::I, Some((a, 0))) => format!("I{}", a + 1),
        (Component::I, Some((a, t))) => format!("τ^{t} I{}", a + 1),
        _ => format!("{dim}"),
    }
}

/// A DOT digraph of an AR component; arrow multiplicities label the edges.
pub fn emit_dot(c: &ARComponent) -> String {
    let mut s =
        String::from("digraph ar {\n  rankdir=LR;\n  node [shape=box, fontname=\"monospace\"];\n");
    for (i, n) in c.nodes.iter().enumerate() {
        writeln!(
            s,
            "  n{i} [label=\"{}\\n{}\"];",
            node_name(n.component, n.label, &n.dim),
            n.dim
        )
        .unwrap();
    }
    for (a, b, m) in &c.edges {
        if *m > 1 {
            writeln!(s, "  n{a} -> n{b} [label=\"{m}\"];").unwrap();
        } else {
            writeln!(s, "  n{a} -> n{b};").unwrap();
        }
    }
    s.push_str("}\n");
    s
}

/// The exchange graph on the chambers of `cx`, one node per seed.
pub fn exchange_graph_dot(cx: &ClusterComplex) -> Result<String> {
    let key = |gs: &[LatticeVec]| gs.iter().cloned().collect::<BTreeSet<_>>();
    let index: BTreeMap<BTreeSet<LatticeVec>, usize> = cx
        .chambers
        .iter()
        .enumerate()
        .map(|(i, c)| (key(&c.generators), i))
        .collect();
    let mut s = String::from("graph exchange {\n  node [shape=box, fontname=\"monospace\"];\n");
    for (i, c) in cx.chambers.iter().enumerate() {
        let gs: Vec<String> = c.generators.iter().map(ToString::to_string).collect();
        writeln!(s, "  s{i} [label=\"{}\"];", gs.join(" ")).unwrap();
    }
    let mut edges = BTreeSet::new();
    for (i, c) in cx.chambers.iter().enumerate() {
        let seed = TropicalSeed::initial(cx.form.clone()).mutate_word(&c.word)?;
        for k in 1..=cx.form.rank() {
            let t = seed.mutate(k)?;
            if let Some(&j) = index.get(&key(t.g_vectors())) {
                if i < j {
                    edges.insert((i, j, k));
                }
            }
        }
    }
    for (i, j, k) in edges {
        writeln!(s, "  s{i} -- s{j} [label=\"{k}\"];").unwrap();
    }
    s.push_str("}\n");
    Ok(s)
}

/// DOT for the quiver of a skew form: `ε_ij > 0` arrows `i → j`.
pub fn quiver_dot(form: &SkewForm) -> String {
    let mut s = String::from("digraph quiver {\n");
    for i in 0..form.rank() {
        writeln!(s, "  v{} [label=\"{}\"];", i + 1, i + 1).unwrap();
    }
    for i in 0..form.rank() {
        for j in 0..form.rank() {
            let e = form.entry(i, j);
            if e > 0 {
                writeln!(s, "  v{} -> v{} [label=\"{e}\"];", i + 1, j + 1).unwrap();
            }
        }
    }
    s.push_str("}\n");
    s
}
