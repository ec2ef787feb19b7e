//! Deterministic SVG figures of a quadrangle and its homothetic
//! parallelograms.
//!
//! Geometry is kept exact until [`compute_viewbox`] and [`render_svg`] convert
//! to `f64`; every number in the output is printed with six fixed decimals so
//! identical inputs produce identical bytes on every platform.

use std::fmt::Write as _;

use thiserror::Error;

use crate::geom::{Line, Point};
use crate::homothety::{construct, construction_lines, DividingPoints, HomotheticResult};
use crate::quadrangle::Quadrangle;
use crate::scalar::{ratio, Rational, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RenderError {
    #[error("a scene needs at least one ratio")]
    NoRatios,
    #[error("width must be at least 64 px, got {0}")]
    WidthTooSmall(u32),
    #[error("margin fraction must lie strictly between 0 and 1/2")]
    MarginOutOfRange,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scene<T> {
    quad: Quadrangle<T>,
    lambdas: Vec<T>,
    pub show_construction_lines: bool,
    pub show_perspective_rays: bool,
    pub show_labels: bool,
}

impl<T: Scalar> Scene<T> {
    /// Duplicate ratios are dropped, keeping the first occurrence.
    pub fn new(quad: Quadrangle<T>, lambdas: &[T]) -> Result<Self, RenderError> {
        let mut unique: Vec<T> = Vec::with_capacity(lambdas.len());
        for l in lambdas {
            if !unique.contains(l) {
                unique.push(l.clone());
            }
        }
        if unique.is_empty() {
            return Err(RenderError::NoRatios);
        }
        Ok(Scene {
            quad,
            lambdas: unique,
            show_construction_lines: false,
            show_perspective_rays: false,
            show_labels: false,
        })
    }

    pub fn with_construction_lines(mut self, on: bool) -> Self {
        self.show_construction_lines = on;
        self
    }

    pub fn with_perspective_rays(mut self, on: bool) -> Self {
        self.show_perspective_rays = on;
        self
    }

    pub fn with_labels(mut self, on: bool) -> Self {
        self.show_labels = on;
        self
    }

    pub fn quad(&self) -> &Quadrangle<T> {
        &self.quad
    }

    pub fn lambdas(&self) -> &[T] {
        &self.lambdas
    }
}

pub const QUAD_COLOR: &str = "black";
pub const PARALLELOGRAM_COLORS: [&str; 6] = [
    "royalblue",
    "crimson",
    "seagreen",
    "darkorange",
    "purple",
    "teal",
];
pub const CONSTRUCTION_COLOR: &str = "silver";
pub const RAY_COLOR: &str = "gray";
pub const POINT_COLOR: &str = "black";

#[derive(Debug, Clone, PartialEq)]
pub struct RenderOptions {
    width_px: u32,
    margin_fraction: Rational,
}

impl RenderOptions {
    pub fn new(width_px: u32, margin_fraction: Rational) -> Result<Self, RenderError> {
        if width_px < 64 {
            return Err(RenderError::WidthTooSmall(width_px));
        }
        if margin_fraction <= ratio(0, 1) || margin_fraction >= ratio(1, 2) {
            return Err(RenderError::MarginOutOfRange);
        }
        Ok(RenderOptions {
            width_px,
            margin_fraction,
        })
    }

    pub fn width_px(&self) -> u32 {
        self.width_px
    }

    pub fn margin_fraction(&self) -> &Rational {
        &self.margin_fraction
    }
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            width_px: 800,
            margin_fraction: ratio(1, 10),
        }
    }
}

/// Axis-aligned drawing area in world coordinates (y up).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ViewBox {
    pub min_x: f64,
    pub min_y: f64,
    pub max_x: f64,
    pub max_y: f64,
}

impl ViewBox {
    pub fn width(&self) -> f64 {
        self.max_x - self.min_x
    }

    pub fn height(&self) -> f64 {
        self.max_y - self.min_y
    }

    pub fn diagonal(&self) -> f64 {
        self.width().hypot(self.height())
    }

    pub fn contains(&self, p: &Point<f64>) -> bool {
        p.x >= self.min_x && p.x <= self.max_x && p.y >= self.min_y && p.y <= self.max_y
    }

    /// Portion of `line` inside the box, if any.
    pub fn clip(&self, line: &Line<f64>) -> Option<(Point<f64>, Point<f64>)> {
        let (bx, by) = (line.base().x, line.base().y);
        let (dx, dy) = (line.dir().dx, line.dir().dy);
        let mut lo = f64::NEG_INFINITY;
        let mut hi = f64::INFINITY;
        for (d, base, min, max) in [
            (dx, bx, self.min_x, self.max_x),
            (dy, by, self.min_y, self.max_y),
        ] {
            if d == 0.0 {
                if base < min || base > max {
                    return None;
                }
            } else {
                let (t0, t1) = ((min - base) / d, (max - base) / d);
                lo = lo.max(t0.min(t1));
                hi = hi.min(t0.max(t1));
            }
        }
        (lo <= hi).then(|| {
            (
                Point::new(bx + lo * dx, by + lo * dy),
                Point::new(bx + hi * dx, by + hi * dy),
            )
        })
    }
}

/// Smallest box around the quadrangle, `O` and every parallelogram vertex,
/// padded by the margin fraction of its width and height.
pub fn compute_viewbox<T: Scalar>(scene: &Scene<T>, opts: &RenderOptions) -> ViewBox {
    let mut pts: Vec<Point<T>> = scene.quad.vertices().into_iter().cloned().collect();
    pts.push(scene.quad.diagonal_intersection());
    for l in &scene.lambdas {
        pts.extend(construct(&scene.quad, l).vertices());
    }
    let first = &pts[0];
    let (mut min_x, mut max_x) = (first.x.clone(), first.x.clone());
    let (mut min_y, mut max_y) = (first.y.clone(), first.y.clone());
    for p in &pts[1..] {
        if p.x < min_x {
            min_x = p.x.clone();
        }
        if p.x > max_x {
            max_x = p.x.clone();
        }
        if p.y < min_y {
            min_y = p.y.clone();
        }
        if p.y > max_y {
            max_y = p.y.clone();
        }
    }
    let margin = T::from_rational(&opts.margin_fraction);
    let mut w = max_x.clone() - min_x.clone();
    let mut h = max_y.clone() - min_y.clone();
    // A valid quadrangle is never flat, but keep the box two-dimensional anyway.
    if w.is_zero() {
        w = if h.is_zero() { T::one() } else { h.clone() };
    }
    if h.is_zero() {
        h = w.clone();
    }
    let pad_x = margin.clone() * w;
    let pad_y = margin * h;
    ViewBox {
        min_x: (min_x - pad_x.clone()).approx_f64(),
        min_y: (min_y - pad_y.clone()).approx_f64(),
        max_x: (max_x + pad_x).approx_f64(),
        max_y: (max_y + pad_y).approx_f64(),
    }
}

/// Fixed six-decimal formatting without exponent or negative zero.
pub fn fmt_coord(v: f64) -> String {
    let s = format!("{v:.6}");
    if s == "-0.000000" {
        "0.000000".to_string()
    } else {
        s
    }
}

fn points_attr(points: &[Point<f64>]) -> String {
    points
        .iter()
        .map(|p| format!("{},{}", fmt_coord(p.x), fmt_coord(p.y)))
        .collect::<Vec<_>>()
        .join(" ")
}

fn unit(dx: f64, dy: f64) -> (f64, f64) {
    let n = dx.hypot(dy);
    if n == 0.0 {
        (0.0, 0.0)
    } else {
        (dx / n, dy / n)
    }
}

/// Direction of the outward angle bisector at `poly[i]`.
fn outward_bisector(poly: &[Point<f64>], i: usize) -> (f64, f64) {
    let n = poly.len();
    let p = &poly[i];
    let prev = &poly[(i + n - 1) % n];
    let next = &poly[(i + 1) % n];
    let a = unit(p.x - prev.x, p.y - prev.y);
    let b = unit(p.x - next.x, p.y - next.y);
    let sum = unit(a.0 + b.0, a.1 + b.1);
    if sum == (0.0, 0.0) {
        // Straight angle: step off to the side of the edge.
        (-a.1, a.0)
    } else {
        sum
    }
}

struct Label {
    at: Point<f64>,
    text: String,
    sup: Option<String>,
}

/// Renders the scene as a standalone SVG 1.1 document. Layers, bottom to
/// top: quadrangle, construction lines, parallelograms in ratio order,
/// perspective rays, points, labels.
pub fn render_svg<T: Scalar>(scene: &Scene<T>, opts: &RenderOptions) -> String {
    let vb = compute_viewbox(scene, opts);
    let diag = vb.diagonal();
    let height_px = ((opts.width_px as f64) * vb.height() / vb.width())
        .round()
        .max(1.0) as u32;
    let quad: Vec<Point<f64>> = scene.quad.vertices().iter().map(|p| p.to_f64()).collect();
    let o = scene.quad.diagonal_intersection().to_f64();
    let results: Vec<HomotheticResult<T>> = scene
        .lambdas
        .iter()
        .map(|l| construct(&scene.quad, l))
        .collect();

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let [a, b, c, d] = scene.quad.vertices();
    let stamp_point = |p: &Point<T>| format!("({}, {})", p.x.to_text(), p.y.to_text());
    let _ = writeln!(
        out,
        "<!-- homquad: A={} B={} C={} D={} lambdas=[{}] -->",
        stamp_point(a),
        stamp_point(b),
        stamp_point(c),
        stamp_point(d),
        scene
            .lambdas
            .iter()
            .map(|l| l.to_text())
            .collect::<Vec<_>>()
            .join(", ")
    );
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"{} {} {} {}\">",
        opts.width_px,
        height_px,
        fmt_coord(vb.min_x),
        fmt_coord(-vb.max_y),
        fmt_coord(vb.width()),
        fmt_coord(vb.height()),
    );
    out.push_str("<rect x=\"0\" y=\"0\" width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    out.push_str(
        "<g id=\"geometry\" transform=\"scale(1,-1)\" fill=\"none\" stroke-linejoin=\"round\">\n",
    );

    let _ = writeln!(
        out,
        "<polygon id=\"quadrangle\" points=\"{}\" stroke=\"{QUAD_COLOR}\" stroke-width=\"2\" vector-effect=\"non-scaling-stroke\"/>",
        points_attr(&quad)
    );

    if scene.show_construction_lines {
        out.push_str("<g id=\"construction\">\n");
        for l in &scene.lambdas {
            for line in construction_lines(&scene.quad, l) {
                let fl = Line::new(
                    line.base().to_f64(),
                    crate::geom::Vec2::new(line.dir().dx.approx_f64(), line.dir().dy.approx_f64()),
                );
                if let Some((p, q)) = fl.and_then(|fl| vb.clip(&fl)) {
                    let _ = writeln!(
                        out,
                        "<line class=\"construction\" data-lambda=\"{}\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{CONSTRUCTION_COLOR}\" stroke-width=\"1\" stroke-dasharray=\"4 3\" vector-effect=\"non-scaling-stroke\"/>",
                        l.to_text(),
                        fmt_coord(p.x),
                        fmt_coord(p.y),
                        fmt_coord(q.x),
                        fmt_coord(q.y),
                    );
                }
            }
        }
        out.push_str("</g>\n");
    }

    for (i, (l, r)) in scene.lambdas.iter().zip(&results).enumerate() {
        if r.is_degenerate() {
            continue;
        }
        let verts: Vec<Point<f64>> = r.vertices().iter().map(|p| p.to_f64()).collect();
        let color = PARALLELOGRAM_COLORS[i % PARALLELOGRAM_COLORS.len()];
        let _ = writeln!(
            out,
            "<polygon class=\"parallelogram\" data-lambda=\"{}\" points=\"{}\" stroke=\"{color}\" stroke-width=\"1.5\" vector-effect=\"non-scaling-stroke\"/>",
            l.to_text(),
            points_attr(&verts)
        );
    }

    if scene.show_perspective_rays {
        out.push_str("<g id=\"rays\">\n");
        for family in 0..4 {
            let pts: Vec<Point<f64>> = results
                .iter()
                .filter(|r| !r.is_degenerate())
                .map(|r| r.vertices()[family].to_f64())
                .collect();
            let Some(dir) = pts
                .iter()
                .map(|p| (p.x - o.x, p.y - o.y))
                .find(|d| *d != (0.0, 0.0))
            else {
                continue;
            };
            let len_sq = dir.0 * dir.0 + dir.1 * dir.1;
            let ts = pts
                .iter()
                .map(|p| ((p.x - o.x) * dir.0 + (p.y - o.y) * dir.1) / len_sq);
            let (lo, hi) = ts.fold((0.0f64, 0.0f64), |(lo, hi), t| (lo.min(t), hi.max(t)));
            let _ = writeln!(
                out,
                "<line class=\"ray\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{RAY_COLOR}\" stroke-width=\"1\" vector-effect=\"non-scaling-stroke\"/>",
                fmt_coord(o.x + lo * dir.0),
                fmt_coord(o.y + lo * dir.1),
                fmt_coord(o.x + hi * dir.0),
                fmt_coord(o.y + hi * dir.1),
            );
        }
        out.push_str("</g>\n");
    }

    let r_big = fmt_coord(0.008 * diag);
    let r_small = fmt_coord(0.005 * diag);
    out.push_str(&format!(
        "<g id=\"points\" fill=\"{POINT_COLOR}\" stroke=\"none\">\n"
    ));
    for p in &quad {
        let _ = writeln!(
            out,
            "<circle class=\"vertex\" cx=\"{}\" cy=\"{}\" r=\"{r_big}\"/>",
            fmt_coord(p.x),
            fmt_coord(p.y)
        );
    }
    if scene.show_construction_lines {
        for l in &scene.lambdas {
            for (_, p) in DividingPoints::new(&scene.quad, l).labeled() {
                let p = p.to_f64();
                let _ = writeln!(
                    out,
                    "<circle class=\"dividing\" cx=\"{}\" cy=\"{}\" r=\"{r_small}\"/>",
                    fmt_coord(p.x),
                    fmt_coord(p.y)
                );
            }
        }
    }
    for (i, r) in results.iter().enumerate() {
        if r.is_degenerate() {
            continue;
        }
        let color = PARALLELOGRAM_COLORS[i % PARALLELOGRAM_COLORS.len()];
        for p in r.vertices() {
            let p = p.to_f64();
            let _ = writeln!(
                out,
                "<circle class=\"parallelogram-vertex\" cx=\"{}\" cy=\"{}\" r=\"{r_small}\" fill=\"{color}\"/>",
                fmt_coord(p.x),
                fmt_coord(p.y)
            );
        }
    }
    let _ = writeln!(
        out,
        "<circle id=\"O\" class=\"center\" cx=\"{}\" cy=\"{}\" r=\"{r_big}\"/>",
        fmt_coord(o.x),
        fmt_coord(o.y)
    );
    out.push_str("</g>\n</g>\n");

    if scene.show_labels {
        let offset = 0.02 * diag;
        let mut labels = Vec::new();
        for (i, name) in ["A", "B", "C", "D"].iter().enumerate() {
            let (ux, uy) = outward_bisector(&quad, i);
            labels.push(Label {
                at: Point::new(quad[i].x + ux * offset, quad[i].y + uy * offset),
                text: name.to_string(),
                sup: None,
            });
        }
        labels.push(Label {
            at: Point::new(o.x + offset, o.y + offset),
            text: "O".into(),
            sup: None,
        });
        for (l, r) in scene.lambdas.iter().zip(&results) {
            if r.is_degenerate() {
                continue;
            }
            let verts: Vec<Point<f64>> = r.vertices().iter().map(|p| p.to_f64()).collect();
            for (i, name) in ["K", "L", "M", "N"].iter().enumerate() {
                let (ux, uy) = outward_bisector(&verts, i);
                labels.push(Label {
                    at: Point::new(verts[i].x + ux * offset, verts[i].y + uy * offset),
                    text: name.to_string(),
                    sup: Some(l.to_text()),
                });
            }
        }
        let _ = writeln!(
            out,
            "<g id=\"labels\" font-family=\"serif\" font-style=\"italic\" font-size=\"{}\" text-anchor=\"middle\" dominant-baseline=\"middle\" fill=\"black\">",
            fmt_coord(0.035 * diag)
        );
        for label in labels {
            let sup = label
                .sup
                .map(|s| format!("<tspan baseline-shift=\"super\" font-size=\"60%\">{s}</tspan>"))
                .unwrap_or_default();
            let _ = writeln!(
                out,
                "<text x=\"{}\" y=\"{}\">{}{sup}</text>",
                fmt_coord(label.at.x),
                fmt_coord(-label.at.y),
                label.text
            );
        }
        out.push_str("</g>\n");
    }

    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pi(x: i64, y: i64) -> Point<Rational> {
        Point::new(ratio(x, 1), ratio(y, 1))
    }

    fn square() -> Quadrangle<Rational> {
        Quadrangle::new(pi(0, 0), pi(1, 0), pi(1, 1), pi(0, 1)).unwrap()
    }

    #[test]
    fn scene_dedups_and_rejects_empty() {
        let s = Scene::new(square(), &[ratio(1, 2), ratio(1, 3), ratio(2, 4)]).unwrap();
        assert_eq!(s.lambdas(), &[ratio(1, 2), ratio(1, 3)]);
        assert_eq!(Scene::new(square(), &[]), Err(RenderError::NoRatios));
    }

    #[test]
    fn options_are_validated() {
        assert_eq!(
            RenderOptions::new(63, ratio(1, 10)),
            Err(RenderError::WidthTooSmall(63))
        );
        assert_eq!(
            RenderOptions::new(64, ratio(1, 2)),
            Err(RenderError::MarginOutOfRange)
        );
        assert_eq!(
            RenderOptions::new(64, ratio(0, 1)),
            Err(RenderError::MarginOutOfRange)
        );
        assert!(RenderOptions::new(64, ratio(49, 100)).is_ok());
    }

    #[test]
    fn viewbox_examples() {
        let opts = RenderOptions::default();
        let vb = compute_viewbox(&Scene::new(square(), &[ratio(1, 2)]).unwrap(), &opts);
        assert_eq!(
            vb,
            ViewBox {
                min_x: -0.1,
                min_y: -0.1,
                max_x: 1.1,
                max_y: 1.1
            }
        );

        let vb = compute_viewbox(&Scene::new(square(), &[ratio(0, 1)]).unwrap(), &opts);
        assert_eq!(
            vb,
            ViewBox {
                min_x: -0.7,
                min_y: -0.7,
                max_x: 1.7,
                max_y: 1.7
            }
        );

        let vb = compute_viewbox(&Scene::new(square(), &[ratio(1, 1)]).unwrap(), &opts);
        assert!(vb.width() > 0.0 && vb.height() > 0.0);
        assert!(vb.contains(&Point::new(0.5, 0.5)));
    }

    #[test]
    fn clip_line_to_box() {
        let vb = ViewBox {
            min_x: 0.0,
            min_y: 0.0,
            max_x: 2.0,
            max_y: 1.0,
        };
        let diag = Line::new(Point::new(0.0, 0.0), crate::geom::Vec2::new(1.0, 1.0)).unwrap();
        assert_eq!(
            vb.clip(&diag),
            Some((Point::new(0.0, 0.0), Point::new(1.0, 1.0)))
        );
        let outside = Line::new(Point::new(0.0, 5.0), crate::geom::Vec2::new(1.0, 0.0)).unwrap();
        assert_eq!(vb.clip(&outside), None);
    }

    #[test]
    fn fixed_decimal_formatting() {
        assert_eq!(fmt_coord(-0.0), "0.000000");
        assert_eq!(fmt_coord(-1e-9), "0.000000");
        assert_eq!(fmt_coord(1e20), "100000000000000000000.000000");
        assert_eq!(fmt_coord(1.0 / 3.0), "0.333333");
    }

    #[test]
    fn degenerate_ratio_draws_no_polygon() {
        let scene = Scene::new(square(), &[ratio(1, 1)])
            .unwrap()
            .with_labels(true);
        let svg = render_svg(&scene, &RenderOptions::default());
        assert_eq!(svg.matches("<polygon").count(), 1);
        assert!(svg.contains("<circle id=\"O\""));
    }

    #[test]
    fn varignon_and_wittenbauer_layout() {
        let scene = Scene::new(square(), &[ratio(1, 2), ratio(1, 3)])
            .unwrap()
            .with_labels(true)
            .with_construction_lines(true)
            .with_perspective_rays(true);
        let svg = render_svg(&scene, &RenderOptions::default());
        assert_eq!(svg.matches("class=\"parallelogram\"").count(), 2);
        assert!(svg.contains("<polygon id=\"quadrangle\""));
        assert!(svg.contains(">O</text>"));
        assert_eq!(svg.matches("class=\"construction\"").count(), 8);
        assert_eq!(svg.matches("class=\"ray\"").count(), 4);
        assert!(svg
            .contains("<!-- homquad: A=(0, 0) B=(1, 0) C=(1, 1) D=(0, 1) lambdas=[1/2, 1/3] -->"));
        let order = [
            "id=\"quadrangle\"",
            "id=\"construction\"",
            "class=\"parallelogram\"",
            "id=\"rays\"",
            "id=\"points\"",
            "id=\"labels\"",
        ];
        let pos: Vec<usize> = order.iter().map(|s| svg.find(s).unwrap()).collect();
        assert!(pos.windows(2).all(|w| w[0] < w[1]), "{pos:?}");
    }
}
