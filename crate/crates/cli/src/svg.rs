//! Radial shell layout.
//!
//! Shell `k` sits on a ring of radius `step * (k_max - k + 1)`, so the top
//! shell is innermost and shell 0 is the outer ring. Within a ring the
//! clusters occupy contiguous arcs in cluster order. Fill encodes the shell;
//! a border encodes membership: none for `C`, the guarantee level's colour
//! for `D`, and a white fill with a shell-coloured border for white nodes.

use std::f64::consts::PI;
use std::fmt::Write;

use coreconn::{Class, CoreDecomposition, Error, Graph, Membership, NodeId, Result};

/// Sequential palette, low shells first.
const PALETTE: [&str; 10] = [
    "#5e4fa2", "#3288bd", "#66c2a5", "#abdda4", "#e6f598", "#fee08b", "#fdae61", "#f46d43", "#d53e4f", "#9e0142",
];
const SHELL_ZERO: &str = "#bdbdbd";
const EDGE: &str = "#d0d0d0";

#[derive(Debug, Clone, Copy)]
pub struct SvgOptions {
    /// Width and height of the square canvas.
    pub size: f64,
    /// Draw at most this many edges.
    pub edge_cap: usize,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions {
            size: 800.0,
            edge_cap: 5_000,
        }
    }
}

fn level_colour(level: usize, k_max: usize) -> &'static str {
    if level == 0 {
        return SHELL_ZERO;
    }
    let last = PALETTE.len() - 1;
    let idx = if k_max <= 1 { last } else { (level - 1) * last / (k_max - 1) };
    PALETTE[idx.min(last)]
}

pub fn xml_escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for ch in text.chars() {
        match ch {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            _ => out.push(ch),
        }
    }
    out
}

/// Node positions and glyph radius.
struct Layout {
    pos: Vec<(f64, f64)>,
    ring: Vec<f64>,
    glyph: f64,
}

fn layout(d: &CoreDecomposition, opts: &SvgOptions) -> Layout {
    let k_max = d.k_max();
    let centre = opts.size / 2.0;
    let step = (opts.size / 2.0 - 20.0) / (k_max + 1) as f64;
    let mut pos = vec![(centre, centre); d.node_count()];
    let mut ring = vec![0.0; k_max + 1];
    let mut crowd = 0.0f64;
    for k in 0..=k_max {
        let radius = step * (k_max - k + 1) as f64;
        ring[k] = radius;
        let mut members: Vec<NodeId> = d.shell(k).to_vec();
        members.sort_by_key(|&v| (d.cluster_of(v).map(|c| c.ordinal), v));
        let count = members.len();
        if count == 0 {
            continue;
        }
        crowd = crowd.max(count as f64 / radius);
        for (i, v) in members.into_iter().enumerate() {
            let angle = 2.0 * PI * (i as f64 + 0.5) / count as f64 - PI / 2.0;
            pos[v] = (centre + radius * angle.cos(), centre + radius * angle.sin());
        }
    }
    // Keep neighbouring glyphs on the most crowded ring from overlapping.
    let glyph = (step * 0.3).min(0.8 * PI / crowd.max(f64::EPSILON)).clamp(0.5, 10.0);
    Layout { pos, ring, glyph }
}

/// Renders the membership as an SVG document. Fails when the graph has no
/// edges (`k_max = 0`).
pub fn render_svg(g: &Graph, d: &CoreDecomposition, m: &Membership, opts: &SvgOptions) -> Result<String> {
    let k_max = d.k_max();
    if k_max == 0 {
        return Err(Error::NoShells);
    }
    let Layout { pos, ring, glyph } = layout(d, opts);
    let size = opts.size;
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{size}\" height=\"{size}\" viewBox=\"0 0 {size} {size}\">"
    );
    let _ = writeln!(
        out,
        "<desc>mode={} k_max={k_max} nodes={} edges={}</desc>",
        m.mode(),
        g.node_count(),
        g.edge_count()
    );
    let _ = writeln!(out, "<rect width=\"{size}\" height=\"{size}\" fill=\"#ffffff\"/>");

    out.push_str("<g class=\"rings\" fill=\"none\" stroke=\"#eeeeee\">\n");
    for (k, r) in ring.iter().enumerate() {
        let _ = writeln!(
            out,
            "<circle class=\"ring\" data-shell=\"{k}\" cx=\"{:.2}\" cy=\"{:.2}\" r=\"{r:.2}\"/>",
            size / 2.0,
            size / 2.0
        );
    }
    out.push_str("</g>\n");

    let drawn = g.edge_count().min(opts.edge_cap);
    let _ = writeln!(
        out,
        "<g class=\"edges\" stroke=\"{EDGE}\" stroke-width=\"0.5\" data-drawn=\"{drawn}\" data-total=\"{}\">",
        g.edge_count()
    );
    for (u, v) in g.edges().take(drawn) {
        let ((x1, y1), (x2, y2)) = (pos[u], pos[v]);
        let _ = writeln!(out, "<line x1=\"{x1:.2}\" y1=\"{y1:.2}\" x2=\"{x2:.2}\" y2=\"{y2:.2}\"/>");
    }
    out.push_str("</g>\n");

    out.push_str("<g class=\"nodes\">\n");
    for v in g.nodes() {
        let shell = d.shell_index(v);
        let class = m.class(v);
        let fill = level_colour(shell, k_max);
        let (x, y) = pos[v];
        let style = match class {
            Class::C => format!("fill=\"{fill}\""),
            Class::D => format!(
                "fill=\"{fill}\" stroke=\"{}\" stroke-width=\"{:.2}\"",
                level_colour(m.guarantee(v), k_max),
                (glyph * 0.4).max(0.5)
            ),
            Class::White => format!(
                "fill=\"#ffffff\" stroke=\"{fill}\" stroke-width=\"{:.2}\"",
                (glyph * 0.4).max(0.5)
            ),
        };
        let label = xml_escape(&g.label(v).to_string());
        let _ = writeln!(
            out,
            "<circle class=\"node {class}\" data-shell=\"{shell}\" cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"{glyph:.2}\" {style}><title>{label} (shell {shell}, {class}, guarantee {})</title></circle>",
            m.guarantee(v)
        );
    }
    out.push_str("</g>\n</svg>\n");
    Ok(out)
}
