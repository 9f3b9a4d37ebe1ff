//! Deterministic SVG figures of the two geometric constructions.
//!
//! Every figure is SVG 1.1 on a fixed `1000 × 1000` view box, drawn in four
//! layers in this order: `axes`, `lines`, `points`, `witnesses`. Coordinates
//! are printed with two decimals, so identical inputs give identical bytes.
//!
//! * `slope-cover`: the origin lines covering `A × A` (class `origin-line`),
//!   the grid points, and one marker per witness sum point (class
//!   `witness`) labelled with its provenance.
//! * `complex-mst`: the points of `A / A` (class `ratio-point`), the edges of
//!   their minimum spanning tree (class `mst-edge`) and the sampled outline
//!   of each edge's wedge region (class `region`).

use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exact::{GaussianRational, Rational, WedgeSpec};
use crate::geometry::complex::{euclidean_mst, region_outline, MobiusRegion};
use crate::geometry::slopes::{build_grid, slope_cover, thm1_witnesses};
use crate::geometry::{parse_witness_dump, Provenance};
use crate::sets::{ratio_set, FiniteSet, Limits, ScalarSet};

const SIZE: f64 = 1000.0;
const MARGIN: f64 = 60.0;
/// Samples per boundary ray of a region outline.
const OUTLINE_RESOLUTION: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FigureKind {
    SlopeCover,
    ComplexMst,
}

impl FromStr for FigureKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "slope-cover" => Ok(FigureKind::SlopeCover),
            "complex-mst" => Ok(FigureKind::ComplexMst),
            _ => Err(Error::InvalidConfig(format!(
                "unknown figure `{s}`; use slope-cover or complex-mst"
            ))),
        }
    }
}

/// Maps data coordinates onto the view box with equal scaling on both axes
/// and the y axis pointing up.
struct Frame {
    min: (f64, f64),
    max: (f64, f64),
    scale: f64,
    offset: (f64, f64),
}

impl Frame {
    /// Fits the given points, always including the origin.
    fn fit(points: impl IntoIterator<Item = (f64, f64)>) -> Frame {
        let (mut min, mut max) = ((0.0f64, 0.0f64), (0.0f64, 0.0f64));
        for (x, y) in points {
            min = (min.0.min(x), min.1.min(y));
            max = (max.0.max(x), max.1.max(y));
        }
        let span = (max.0 - min.0).max(max.1 - min.1).max(f64::MIN_POSITIVE);
        let scale = (SIZE - 2.0 * MARGIN) / span;
        // Centre the shorter side.
        let offset = (
            MARGIN + ((SIZE - 2.0 * MARGIN) - (max.0 - min.0) * scale) / 2.0,
            MARGIN + ((SIZE - 2.0 * MARGIN) - (max.1 - min.1) * scale) / 2.0,
        );
        Frame {
            min,
            max,
            scale,
            offset,
        }
    }

    fn map(&self, (x, y): (f64, f64)) -> (f64, f64) {
        (
            self.offset.0 + (x - self.min.0) * self.scale,
            SIZE - (self.offset.1 + (y - self.min.1) * self.scale),
        )
    }
}

struct Svg {
    out: String,
}

impl Svg {
    fn new(title: &str) -> Svg {
        let mut out = String::new();
        out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
        let _ = writeln!(
            out,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">"
        );
        let _ = writeln!(out, "<title>{}</title>", escape(title));
        out.push_str("<rect width=\"1000\" height=\"1000\" fill=\"white\"/>\n");
        Svg { out }
    }

    fn open_layer(&mut self, id: &str, style: &str) {
        let _ = writeln!(self.out, "<g id=\"{id}\" {style}>");
    }

    fn close_layer(&mut self) {
        self.out.push_str("</g>\n");
    }

    fn line(&mut self, class: &str, a: (f64, f64), b: (f64, f64)) {
        let _ = writeln!(
            self.out,
            "<line class=\"{class}\" x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\"/>",
            a.0, a.1, b.0, b.1
        );
    }

    fn circle(&mut self, class: &str, c: (f64, f64), r: f64, title: &str) {
        let _ = writeln!(
            self.out,
            "<circle class=\"{class}\" cx=\"{:.2}\" cy=\"{:.2}\" r=\"{r}\"><title>{}</title></circle>",
            c.0,
            c.1,
            escape(title)
        );
    }

    fn finish(mut self) -> String {
        self.out.push_str("</svg>\n");
        self.out
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Axes through the origin (which every frame contains).
fn draw_axes(svg: &mut Svg, frame: &Frame) {
    svg.open_layer("axes", "stroke=\"#888\" stroke-width=\"1\"");
    svg.line("axis", frame.map((frame.min.0, 0.0)), frame.map((frame.max.0, 0.0)));
    svg.line("axis", frame.map((0.0, frame.min.1)), frame.map((0.0, frame.max.1)));
    svg.close_layer();
}

/// The slope-cover figure for a set of positive reals. With `dump` (a
/// witness dump as written by the witness command) the listed witnesses are
/// drawn; otherwise they are constructed.
pub fn render_slope_cover(a: &FiniteSet<Rational>, dump: Option<&str>) -> Result<String> {
    let grid = build_grid(a)?;
    let cover = slope_cover(&grid)?;
    let witnesses: Vec<(String, Provenance)> = match dump {
        Some(text) => parse_witness_dump(text)?,
        None => thm1_witnesses(a)?
            .witnesses
            .into_iter()
            .map(|w| (w.ratio.to_string(), w.provenance))
            .collect(),
    };
    let mut sums = Vec::with_capacity(witnesses.len());
    for (ratio, provenance) in &witnesses {
        let p = cover.resolve(provenance).ok_or_else(|| {
            Error::Precondition(format!(
                "witness `{provenance}` does not refer to a point of this cover"
            ))
        })?;
        let slope = p.slope().map(|s| s.to_string());
        if slope.as_deref() != Some(ratio.as_str()) {
            return Err(Error::Precondition(format!(
                "witness `{provenance}` has ratio {ratio}, but its sum point {p} has a different slope"
            )));
        }
        sums.push(((p.x.to_f64(), p.y.to_f64()), ratio, provenance));
    }

    let grid_f: Vec<(f64, f64)> = cover
        .lines
        .iter()
        .flat_map(|l| l.points.iter().map(|p| (p.x.to_f64(), p.y.to_f64())))
        .collect();
    let frame = Frame::fit(grid_f.iter().copied().chain(sums.iter().map(|s| s.0)));

    let mut svg = Svg::new("slope cover of A × A with witness sums");
    draw_axes(&mut svg, &frame);

    svg.open_layer("lines", "stroke=\"#4a7bd0\" stroke-width=\"1.5\"");
    for line in &cover.lines {
        let m = line.slope.to_f64();
        let t = frame.max.0.min(frame.max.1 / m);
        svg.line("origin-line", frame.map((0.0, 0.0)), frame.map((t, m * t)));
    }
    svg.close_layer();

    svg.open_layer("points", "fill=\"#222\"");
    for line in &cover.lines {
        for p in &line.points {
            svg.circle(
                "grid-point",
                frame.map((p.x.to_f64(), p.y.to_f64())),
                4.0,
                &p.to_string(),
            );
        }
    }
    svg.close_layer();

    svg.open_layer(
        "witnesses",
        "fill=\"#d0452f\" font-family=\"monospace\" font-size=\"9\"",
    );
    for (xy, ratio, provenance) in &sums {
        let (x, y) = frame.map(*xy);
        let _ = writeln!(
            svg.out,
            "<g class=\"witness\" data-ratio=\"{ratio}\"><circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"3\"/><text x=\"{:.2}\" y=\"{:.2}\">{}</text></g>",
            x + 5.0,
            y - 5.0,
            escape(&provenance.to_string())
        );
    }
    svg.close_layer();
    Ok(svg.finish())
}

/// The spanning-tree figure for the ratio set `A / A` of a complex set.
pub fn render_complex_mst(a: &FiniteSet<GaussianRational>, wedge: &WedgeSpec, limits: &Limits) -> Result<String> {
    if a.is_empty() {
        return Err(Error::EmptyInput("complex-mst needs a nonempty set".into()));
    }
    let ratios = ratio_set(a, a, limits)?.set;
    let points: Vec<GaussianRational> = ratios.iter().cloned().collect();
    let mst = if points.len() >= 2 {
        Some(euclidean_mst(&points)?)
    } else {
        None
    };
    let mut outlines = Vec::new();
    if let Some(mst) = &mst {
        for e in 0..mst.edges.len() {
            let (h, t) = mst.endpoints(e);
            let region = MobiusRegion::new(h.clone(), t.clone(), wedge.clone())?;
            outlines.push(region_outline(&region, OUTLINE_RESOLUTION));
        }
    }
    let frame = Frame::fit(
        points
            .iter()
            .map(GaussianRational::to_f64_pair)
            .chain(outlines.iter().flatten().copied()),
    );

    let mut svg = Svg::new("minimum spanning tree of A / A with wedge regions");
    draw_axes(&mut svg, &frame);

    svg.open_layer("lines", "stroke-width=\"1.5\"");
    for outline in &outlines {
        let mut d = String::new();
        for (i, &p) in outline.iter().enumerate() {
            let (x, y) = frame.map(p);
            let _ = write!(d, "{}{x:.2},{y:.2} ", if i == 0 { "M" } else { "L" });
        }
        d.push('Z');
        let _ = writeln!(
            svg.out,
            "<path class=\"region\" d=\"{d}\" fill=\"#4a7bd0\" fill-opacity=\"0.15\" stroke=\"#4a7bd0\"/>"
        );
    }
    if let Some(mst) = &mst {
        for e in 0..mst.edges.len() {
            let (h, t) = mst.endpoints(e);
            svg.line("mst-edge", frame.map(h.to_f64_pair()), frame.map(t.to_f64_pair()));
        }
    }
    svg.close_layer();

    svg.open_layer("points", "fill=\"#222\" stroke=\"#222\"");
    for p in &points {
        svg.circle("ratio-point", frame.map(p.to_f64_pair()), 4.0, &p.to_string());
    }
    svg.close_layer();

    svg.open_layer("witnesses", "");
    svg.close_layer();
    Ok(svg.finish())
}

/// Renders either figure from a dynamically typed set. `slope-cover` needs a
/// real set; `complex-mst` accepts both and treats reals as complex.
pub fn render_figure(
    kind: FigureKind,
    set: &ScalarSet,
    dump: Option<&str>,
    wedge: &WedgeSpec,
    limits: &Limits,
) -> Result<String> {
    match kind {
        FigureKind::SlopeCover => render_slope_cover(set.as_real()?, dump),
        FigureKind::ComplexMst => render_complex_mst(&set.to_complex(), wedge, limits),
    }
}
