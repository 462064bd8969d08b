//! SVG drawings of construction traces.
//!
//! Each trace step becomes one `<g>` element: points are labelled circles,
//! lines are segments (dashed when drawn as a parallel). The trace itself
//! is embedded as JSON in `<metadata>` so a drawing can be re-verified.
//! Output depends only on the trace and the canvas size.

use std::fmt::Write;
use std::str::FromStr;

use crate::construct::{geo_add, geo_mul, Aux, Chart};
use crate::error::{Error, Result};
use crate::geometry::{Line, Point};
use crate::ratio::RatioContext;
use crate::scalar::{Model, Scalar};
use crate::trace::{ConstructionTrace, Object, Op};
use crate::transforms::PlaneMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FigureKind {
    Add,
    Mul,
    Ratio2,
    Ratio3,
    Pproj,
    Translation,
    Dilatation,
}

impl FigureKind {
    pub const ALL: [FigureKind; 7] = [
        FigureKind::Add,
        FigureKind::Mul,
        FigureKind::Ratio2,
        FigureKind::Ratio3,
        FigureKind::Pproj,
        FigureKind::Translation,
        FigureKind::Dilatation,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FigureKind::Add => "add",
            FigureKind::Mul => "mul",
            FigureKind::Ratio2 => "ratio2",
            FigureKind::Ratio3 => "ratio3",
            FigureKind::Pproj => "pproj",
            FigureKind::Translation => "translation",
            FigureKind::Dilatation => "dilatation",
        }
    }
}

impl FromStr for FigureKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FigureKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown figure kind `{s}`")))
    }
}

/// Inputs of a figure. Coordinates `a`, `b`, `c` are taken on the standard
/// chart (the x-axis with `O = (0,0)`, `I = (1,0)`); the optional map
/// parameters fall back to fixed defaults.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FigureSpec {
    pub kind: FigureKind,
    pub model: Model,
    pub a: Scalar,
    pub b: Scalar,
    pub c: Option<Scalar>,
    /// Translation vector, default `(1, 2)`.
    pub vector: Option<Point>,
    /// Dilatation centre, default `(0, 1)`.
    pub centre: Option<Point>,
    /// Dilatation factor, default `2`.
    pub factor: Option<Scalar>,
    /// Projection target, default the line through `(0,0)` and `(1,1)`.
    pub target: Option<Line>,
    /// Projection direction, default vertical.
    pub direction: Option<Line>,
    pub size: u32,
}

impl FigureSpec {
    pub fn new(kind: FigureKind, model: Model, a: Scalar, b: Scalar) -> Self {
        Self {
            kind,
            model,
            a,
            b,
            c: None,
            vector: None,
            centre: None,
            factor: None,
            target: None,
            direction: None,
            size: 480,
        }
    }
}

/// Builds the trace and renders it.
pub fn figure(spec: &FigureSpec) -> Result<String> {
    let trace = build_trace(spec)?;
    Ok(render(&trace, spec.kind.as_str(), spec.size))
}

pub fn build_trace(spec: &FigureSpec) -> Result<ConstructionTrace> {
    let m = spec.model;
    let chart = Chart::standard(m);
    let a = chart.point(&spec.a)?;
    let b = chart.point(&spec.b)?;
    let aux = Aux::Auto;
    match spec.kind {
        FigureKind::Add => Ok(geo_add(&chart, &a, &b, &aux)?.1),
        FigureKind::Mul => Ok(geo_mul(&chart, &a, &b, &aux)?.1),
        FigureKind::Ratio2 => Ok(RatioContext::new(chart).ratio2_traced(&a, &b)?.1),
        FigureKind::Ratio3 => {
            let c = spec
                .c
                .as_ref()
                .ok_or_else(|| Error::InvalidParameter("ratio3 figure needs a third coordinate".into()))?;
            let c = chart.point(c)?;
            Ok(RatioContext::new(chart).ratio3_traced(&a, &b, &c)?.1)
        }
        FigureKind::Pproj => {
            let target = match &spec.target {
                Some(l) => l.clone(),
                None => Line::new(Point::origin(m), Point::from_ints(m, 1, 1))?,
            };
            let direction = match &spec.direction {
                Some(l) => l.clone(),
                None => Line::new(Point::origin(m), Point::from_ints(m, 0, 1))?,
            };
            let map = PlaneMap::parallel_projection(chart.line().clone(), target.clone(), direction.clone())?;
            let (mut t, pts) = chart_scene(&chart, &a, &b);
            let ti = t.given_line("t", target);
            let di = t.given_line("d", direction);
            let mut last = 0;
            for (label, x) in pts {
                let through = t.parallel(format!("{label}||d"), di, x)?;
                last = t.meet(format!("{label}'"), through, ti)?;
                check_image(&map, &t, x, last)?;
            }
            t.set_output(last);
            Ok(t)
        }
        FigureKind::Translation => {
            let v = spec.vector.clone().unwrap_or_else(|| Point::from_ints(m, 1, 2));
            let map = PlaneMap::translation(v);
            let image_o = map.apply(chart.o())?;
            if chart.contains(&image_o)? {
                return Err(Error::InvalidParameter(
                    "translation vector must leave the chart line".into(),
                ));
            }
            let (mut t, pts) = chart_scene(&chart, &a, &b);
            let (oi, o) = (2, pts[0].1);
            let o2 = t.given_point("O'", image_o);
            let track = t.join("OO'", o, o2)?;
            let image_line = t.parallel("O'I'", oi, o2)?;
            let mut last = o2;
            for (label, x) in pts.into_iter().skip(1) {
                let through = t.parallel(format!("{label}||OO'"), track, x)?;
                last = t.meet(format!("{label}'"), through, image_line)?;
                check_image(&map, &t, x, last)?;
            }
            t.set_output(last);
            Ok(t)
        }
        FigureKind::Dilatation => {
            let centre = spec.centre.clone().unwrap_or_else(|| Point::from_ints(m, 0, 1));
            if chart.contains(&centre)? {
                return Err(Error::InvalidParameter("dilatation centre must be off the chart line".into()));
            }
            let factor = spec.factor.clone().unwrap_or_else(|| m.int(2));
            let map = PlaneMap::dilatation(centre.clone(), factor)?;
            let (mut t, pts) = chart_scene(&chart, &a, &b);
            let (oi, o) = (2, pts[0].1);
            let v = t.given_point("V", centre);
            let o2 = t.given_point("O'", map.apply(chart.o())?);
            t.join("VO", v, o)?;
            let image_line = t.parallel("O'I'", oi, o2)?;
            let mut last = o2;
            for (label, x) in pts.into_iter().skip(1) {
                let ray = t.join(format!("V{label}"), v, x)?;
                last = t.meet(format!("{label}'"), ray, image_line)?;
                check_image(&map, &t, x, last)?;
            }
            t.set_output(last);
            Ok(t)
        }
    }
}

/// `O`, `I`, the chart line and `A`, `B` as given steps.
fn chart_scene(chart: &Chart, a: &Point, b: &Point) -> (ConstructionTrace, Vec<(&'static str, usize)>) {
    let mut t = ConstructionTrace::new(chart.model());
    let o = t.given_point("O", chart.o().clone());
    let i = t.given_point("I", chart.i().clone());
    t.join("OI", o, i).expect("O != I");
    let ai = t.given_point("A", a.clone());
    let bi = t.given_point("B", b.clone());
    (t, vec![("O", o), ("I", i), ("A", ai), ("B", bi)])
}

fn check_image(map: &PlaneMap, t: &ConstructionTrace, x: usize, image: usize) -> Result<()> {
    if map.apply(t.point(x))? == *t.point(image) {
        Ok(())
    } else {
        Err(Error::MalformedTrace(format!("constructed image of {} disagrees with the map", t.label(x))))
    }
}

const MARGIN: f64 = 36.0;

/// Drawing coordinates of a point. Finite fields use their residues as a
/// lattice; other models use the real parts, shifted by the imaginary
/// parts so distinct quaternions rarely overlap.
fn project(p: &Point) -> (f64, f64) {
    let f = |s: &Scalar| s.approx_real() + 0.5 * s.approx_imag();
    (f(p.x()), f(p.y()))
}

struct Canvas {
    size: f64,
    min: (f64, f64),
    scale: f64,
}

impl Canvas {
    fn new(trace: &ConstructionTrace, size: u32) -> Self {
        let size = size as f64;
        let (min, max) = match trace.model() {
            Model::Gf(p) => ((0.0, 0.0), ((p - 1) as f64, (p - 1) as f64)),
            _ => {
                let pts: Vec<(f64, f64)> = trace
                    .steps()
                    .iter()
                    .filter_map(|s| match &s.object {
                        Object::Point(p) => Some(project(p)),
                        Object::Line(_) => None,
                    })
                    .collect();
                let lo = pts.iter().fold((0.0f64, 0.0f64), |a, p| (a.0.min(p.0), a.1.min(p.1)));
                let hi = pts.iter().fold((1.0f64, 1.0f64), |a, p| (a.0.max(p.0), a.1.max(p.1)));
                ((lo.0 - 0.5, lo.1 - 0.5), (hi.0 + 0.5, hi.1 + 0.5))
            }
        };
        let span = (max.0 - min.0).max(max.1 - min.1).max(1.0);
        Self {
            size,
            min,
            scale: (size - 2.0 * MARGIN) / span,
        }
    }

    fn to_px(&self, (x, y): (f64, f64)) -> (f64, f64) {
        (
            MARGIN + (x - self.min.0) * self.scale,
            self.size - MARGIN - (y - self.min.1) * self.scale,
        )
    }

    /// Segment of the line through two drawing points clipped to the
    /// visible square.
    fn clip(&self, a: (f64, f64), b: (f64, f64)) -> Option<((f64, f64), (f64, f64))> {
        let (dx, dy) = (b.0 - a.0, b.1 - a.1);
        if dx.abs() < 1e-12 && dy.abs() < 1e-12 {
            return None;
        }
        let span = (self.size - 2.0 * MARGIN) / self.scale;
        let lo = (self.min.0 - 0.25, self.min.1 - 0.25);
        let hi = (self.min.0 + span + 0.25, self.min.1 + span + 0.25);
        let (mut t0, mut t1) = (f64::NEG_INFINITY, f64::INFINITY);
        for (p, d, l, h) in [(a.0, dx, lo.0, hi.0), (a.1, dy, lo.1, hi.1)] {
            if d.abs() < 1e-12 {
                if p < l || p > h {
                    return None;
                }
            } else {
                let (u, v) = ((l - p) / d, (h - p) / d);
                t0 = t0.max(u.min(v));
                t1 = t1.min(u.max(v));
            }
        }
        (t0 < t1).then_some(((a.0 + t0 * dx, a.1 + t0 * dy), (a.0 + t1 * dx, a.1 + t1 * dy)))
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// Renders a trace. Identical traces give identical bytes.
pub fn render(trace: &ConstructionTrace, title: &str, size: u32) -> String {
    let canvas = Canvas::new(trace, size);
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{size}\" height=\"{size}\" viewBox=\"0 0 {size} {size}\">"
    );
    let _ = writeln!(svg, "<title>{}</title>", escape(title));
    let _ = writeln!(
        svg,
        "<metadata id=\"construction-trace\"><![CDATA[{}]]></metadata>",
        trace.to_json().replace("]]>", "]]]]><![CDATA[>")
    );
    let _ = writeln!(
        svg,
        "<style>line,polyline{{stroke:#555;stroke-width:1.2;fill:none}}.parallel{{stroke-dasharray:6 4}}\
         .given-line{{stroke:#999}}circle{{fill:#222}}.aux{{fill:#fff;stroke:#222}}.output{{fill:#c22}}\
         text{{font:12px sans-serif}}</style>"
    );
    let _ = writeln!(svg, "<rect width=\"{size}\" height=\"{size}\" fill=\"#fff\"/>");
    if let Model::Gf(p) = trace.model() {
        let _ = writeln!(svg, "<g class=\"lattice\">");
        for x in 0..p {
            for y in 0..p {
                let (px, py) = canvas.to_px((x as f64, y as f64));
                let _ = writeln!(svg, "<circle cx=\"{px:.2}\" cy=\"{py:.2}\" r=\"1.5\" fill=\"#ccc\"/>");
            }
        }
        let _ = writeln!(svg, "</g>");
    }

    let mut placed: Vec<(i64, i64)> = Vec::new();
    for (idx, step) in trace.steps().iter().enumerate() {
        let label = escape(&step.label);
        let _ = write!(svg, "<g class=\"step\" data-step=\"{idx}\" data-label=\"{label}\">");
        match &step.object {
            Object::Point(p) => {
                let (px, py) = canvas.to_px(project(p));
                let key = ((px * 10.0).round() as i64, (py * 10.0).round() as i64);
                let stacked = placed.iter().filter(|k| **k == key).count();
                placed.push(key);
                let class = match (&step.op, trace.output() == Some(idx)) {
                    (_, true) => " class=\"output\"",
                    (Op::Aux, _) => " class=\"aux\"",
                    _ => "",
                };
                let _ = write!(
                    svg,
                    "<circle cx=\"{px:.2}\" cy=\"{py:.2}\" r=\"4\"{class}/><text x=\"{:.2}\" y=\"{:.2}\">{label}</text>",
                    px + 6.0,
                    py - 6.0 - 13.0 * stacked as f64
                );
            }
            Object::Line(l) => {
                let class = match step.op {
                    Op::Parallel { .. } => "parallel",
                    Op::Given => "given-line",
                    _ => "join",
                };
                let _ = write!(svg, "{}", line_element(&canvas, trace.model(), l, class));
            }
        }
        let _ = writeln!(svg, "</g>");
    }
    svg.push_str("</svg>\n");
    svg
}

fn line_element(canvas: &Canvas, model: Model, l: &Line, class: &str) -> String {
    if let Some(pts) = l.points().filter(|_| matches!(model, Model::Gf(_))) {
        // the lattice points of the line in parameter order
        let coords: Vec<String> = pts
            .iter()
            .map(|p| {
                let (x, y) = canvas.to_px(project(p));
                format!("{x:.2},{y:.2}")
            })
            .collect();
        return format!("<polyline class=\"{class}\" points=\"{}\"/>", coords.join(" "));
    }
    let a = project(l.base());
    let b = l
        .base()
        .add(l.dir())
        .map(|q| project(&q))
        .unwrap_or(a);
    match canvas.clip(a, b) {
        Some((p, q)) => {
            let (p, q) = (canvas.to_px(p), canvas.to_px(q));
            format!(
                "<line class=\"{class}\" x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\"/>",
                p.0, p.1, q.0, q.1
            )
        }
        None => format!("<line class=\"{class}\" x1=\"0\" y1=\"0\" x2=\"0\" y2=\"0\" visibility=\"hidden\"/>"),
    }
}

/// Reads the embedded trace back out of a rendered figure.
pub fn trace_from_svg(svg: &str) -> Result<ConstructionTrace> {
    let start = svg
        .find("<metadata id=\"construction-trace\"><![CDATA[")
        .ok_or_else(|| Error::MalformedTrace("no embedded trace".into()))?;
    let body = &svg[start..];
    let open = body.find("<![CDATA[").expect("found above") + "<![CDATA[".len();
    let close = body
        .find("</metadata>")
        .ok_or_else(|| Error::MalformedTrace("unterminated metadata".into()))?;
    let json = body[open..close]
        .strip_suffix("]]>")
        .ok_or_else(|| Error::MalformedTrace("unterminated metadata".into()))?
        .replace("]]]]><![CDATA[>", "]]>");
    ConstructionTrace::from_json(&json)
}
