//! SVG pictures of the alcove tessellation.
//!
//! Every alcove is a `<polygon>` carrying `data-word` (its canonical word) and
//! either `data-region` (region pictures) or `data-state` (interval
//! pictures), so the output can be checked structurally. Walls are drawn once
//! each, colored by their generator: `s₀` blue, `s₁` green, `s₂` red.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write;

use crate::poset::Interval;
use crate::regions::{classify, RegionKind};
use crate::weyl::{alcove_coordinates, enumerate_up_to_length, Alcove, Element, Generator, LatticePoint};
use crate::Result;

const SCALE: f64 = 24.0;
const MARGIN: f64 = 12.0;

pub const IDENTITY_FILL: &str = "#ffd700";
pub const COATOM_FILL: &str = "#ff9ec7";
pub const MEMBER_FILL: &str = "#9a9a9a";
pub const OUTSIDE_FILL: &str = "#ffffff";

/// Gray for each region, lightest to darkest: X, Θ₁, Θ₂, Θ.
pub fn region_fill(kind: RegionKind) -> &'static str {
    match kind {
        RegionKind::Identity => IDENTITY_FILL,
        RegionKind::X => "#d9d9d9",
        RegionKind::Theta1 => "#b3b3b3",
        RegionKind::Theta2 => "#808080",
        RegionKind::Theta => "#4d4d4d",
    }
}

pub fn wall_color(s: Generator) -> &'static str {
    match s.index() {
        0 => "blue",
        1 => "green",
        _ => "red",
    }
}

/// Counts gathered while drawing.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RenderSummary {
    pub alcoves: usize,
    pub walls: usize,
    /// Alcoves per `data-region` or `data-state` value.
    pub counts: BTreeMap<String, usize>,
}

pub struct Rendered {
    pub svg: String,
    pub summary: RenderSummary,
}

struct Cell {
    word: String,
    alcove: Alcove,
    label: &'static str,
    fill: &'static str,
}

/// All alcoves of length at most `radius`, shaded by region.
pub fn render_regions(radius: u32) -> Result<Rendered> {
    let mut cells = Vec::new();
    for w in enumerate_up_to_length(radius as usize)? {
        let kind = classify(&w)?.kind;
        cells.push(cell(&w, kind.name(), region_fill(kind)));
    }
    Ok(draw(cells, "data-region"))
}

/// Alcoves of length at most `radius` (default `ℓ(y)`), with the members of
/// `[x, y]` shaded and the coatoms of `y` in pink. The identity is always
/// drawn yellow.
pub fn render_interval(x: &Element, y: &Element, radius: Option<u32>) -> Result<Rendered> {
    let iv = Interval::build(x, y)?;
    let coatoms = iv.coatoms();
    let radius = radius.unwrap_or(y.length());
    let mut cells = Vec::new();
    for w in enumerate_up_to_length(radius as usize)? {
        let (label, fill) = if w.is_identity() {
            ("identity", IDENTITY_FILL)
        } else if coatoms.contains(&w) {
            ("coatom", COATOM_FILL)
        } else if iv.contains(&w) {
            ("member", MEMBER_FILL)
        } else {
            ("outside", OUTSIDE_FILL)
        };
        cells.push(cell(&w, label, fill));
    }
    Ok(draw(cells, "data-state"))
}

fn cell(w: &Element, label: &'static str, fill: &'static str) -> Cell {
    Cell {
        word: w.to_string(),
        alcove: alcove_coordinates(w),
        label,
        fill,
    }
}

fn draw(cells: Vec<Cell>, attr: &str) -> Rendered {
    let mut walls: HashMap<[LatticePoint; 2], Generator> = HashMap::new();
    let (mut lo_x, mut lo_y, mut hi_x, mut hi_y) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    for c in &cells {
        for p in c.alcove.vertices {
            let (x, y) = Alcove::to_cartesian(p);
            lo_x = lo_x.min(x);
            hi_x = hi_x.max(x);
            lo_y = lo_y.min(y);
            hi_y = hi_y.max(y);
        }
        for s in Generator::ALL {
            let mut edge = c.alcove.wall(s);
            edge.sort();
            walls.entry(edge).or_insert(s);
        }
    }
    if cells.is_empty() {
        (lo_x, lo_y, hi_x, hi_y) = (0.0, 0.0, 0.0, 0.0);
    }
    let point = |p: LatticePoint| {
        let (x, y) = Alcove::to_cartesian(p);
        (MARGIN + (x - lo_x) * SCALE, MARGIN + (hi_y - y) * SCALE)
    };
    let width = 2.0 * MARGIN + (hi_x - lo_x) * SCALE;
    let height = 2.0 * MARGIN + (hi_y - lo_y) * SCALE;

    let mut svg = String::new();
    let mut summary = RenderSummary::default();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.1}" height="{height:.1}" viewBox="0 0 {width:.1} {height:.1}">"#
    );
    svg.push_str("<g class=\"alcoves\" stroke=\"none\">\n");
    for c in &cells {
        let pts: Vec<String> = c
            .alcove
            .vertices
            .iter()
            .map(|&p| {
                let (x, y) = point(p);
                format!("{x:.2},{y:.2}")
            })
            .collect();
        let _ = writeln!(
            svg,
            r#"<polygon class="alcove" data-word="{}" {attr}="{}" fill="{}" points="{}"/>"#,
            c.word,
            c.label,
            c.fill,
            pts.join(" ")
        );
        summary.alcoves += 1;
        *summary.counts.entry(c.label.to_string()).or_default() += 1;
    }
    svg.push_str("</g>\n<g class=\"walls\" stroke-width=\"1\">\n");
    let mut edges: Vec<_> = walls.into_iter().collect();
    edges.sort();
    for ([a, b], s) in edges {
        let ((x1, y1), (x2, y2)) = (point(a), point(b));
        let _ = writeln!(
            svg,
            r#"<line class="wall s{s}" stroke="{}" x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}"/>"#,
            wall_color(s)
        );
        summary.walls += 1;
    }
    svg.push_str("</g>\n</svg>\n");
    Rendered { svg, summary }
}
