//! Headless turtle graphics.
//!
//! The turtle starts at the origin facing +x with the pen down. Headings are
//! in degrees, counterclockwise positive, kept in `[0, 360)`. Strokes and
//! filled polygons are recorded in drawing order on a [`Canvas`] and rendered
//! to SVG with world +y pointing up.
//!
//! Geometry is generic over the floating-point scalar; the interpreter uses
//! `f64` (see the aliases at the crate root).

use std::fmt::{self, Write as _};

use num_traits::{Float, FloatConst};
use thiserror::Error;

/// Scalar types the turtle can compute in.
pub trait Scalar: Float + FloatConst + fmt::Debug + 'static {
    fn from_f64(v: f64) -> Self;
}

impl Scalar for f32 {
    fn from_f64(v: f64) -> Self {
        v as f32
    }
}

impl Scalar for f64 {
    fn from_f64(v: f64) -> Self {
        v
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point<T> {
    pub x: T,
    pub y: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Segment<T> {
    pub x0: T,
    pub y0: T,
    pub x1: T,
    pub y1: T,
    pub color: String,
}

impl<T: Scalar> Segment<T> {
    pub fn length(&self) -> T {
        (self.x1 - self.x0).hypot(self.y1 - self.y0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Polygon<T> {
    pub vertices: Vec<Point<T>>,
    pub fill: String,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Shape<T> {
    Segment(Segment<T>),
    Polygon(Polygon<T>),
}

/// Everything drawn so far, in paint order.
#[derive(Debug, Clone, PartialEq)]
pub struct Canvas<T> {
    shapes: Vec<Shape<T>>,
}

impl<T> Default for Canvas<T> {
    fn default() -> Self {
        Canvas { shapes: Vec::new() }
    }
}

impl<T: Scalar> Canvas<T> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn shapes(&self) -> &[Shape<T>] {
        &self.shapes
    }

    pub fn is_empty(&self) -> bool {
        self.shapes.is_empty()
    }

    pub fn segments(&self) -> impl Iterator<Item = &Segment<T>> {
        self.shapes.iter().filter_map(|s| match s {
            Shape::Segment(seg) => Some(seg),
            Shape::Polygon(_) => None,
        })
    }

    pub fn polygons(&self) -> impl Iterator<Item = &Polygon<T>> {
        self.shapes.iter().filter_map(|s| match s {
            Shape::Polygon(p) => Some(p),
            Shape::Segment(_) => None,
        })
    }

    fn points(&self) -> impl Iterator<Item = Point<T>> + '_ {
        self.shapes.iter().flat_map(|s| -> Vec<Point<T>> {
            match s {
                Shape::Segment(seg) => vec![
                    Point {
                        x: seg.x0,
                        y: seg.y0,
                    },
                    Point {
                        x: seg.x1,
                        y: seg.y1,
                    },
                ],
                Shape::Polygon(p) => p.vertices.clone(),
            }
        })
    }

    /// `(min_x, min_y, max_x, max_y)` over all recorded geometry.
    pub fn bounds(&self) -> Option<(T, T, T, T)> {
        self.points().fold(None, |acc, p| {
            Some(match acc {
                None => (p.x, p.y, p.x, p.y),
                Some((x0, y0, x1, y1)) => (x0.min(p.x), y0.min(p.y), x1.max(p.x), y1.max(p.y)),
            })
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TurtleError {
    #[error("end_fill called without a matching begin_fill")]
    FillNotStarted,
}

#[derive(Debug, Clone, PartialEq)]
struct Fill<T> {
    color: String,
    vertices: Vec<Point<T>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TurtleState<T> {
    pub x: T,
    pub y: T,
    heading: T,
    pub pen_down: bool,
    pub pen_color: String,
    fill: Option<Fill<T>>,
}

impl<T: Scalar> Default for TurtleState<T> {
    fn default() -> Self {
        TurtleState {
            x: T::zero(),
            y: T::zero(),
            heading: T::zero(),
            pen_down: true,
            pen_color: "black".to_owned(),
            fill: None,
        }
    }
}

fn normalize_degrees<T: Scalar>(deg: T) -> T {
    let full = T::from_f64(360.0);
    let mut h = deg % full;
    if h < T::zero() {
        h = h + full;
    }
    // -1e-20 + 360 rounds to 360.
    if h >= full {
        h = h - full;
    }
    h
}

/// Sine and cosine of an angle in degrees, exact at multiples of 90.
fn sin_cos_degrees<T: Scalar>(deg: T) -> (T, T) {
    let quarter = T::from_f64(90.0);
    if deg % quarter == T::zero() {
        let (zero, one) = (T::zero(), T::one());
        return match (normalize_degrees(deg) / quarter).to_u8() {
            Some(0) => (zero, one),
            Some(1) => (one, zero),
            Some(2) => (zero, -one),
            _ => (-one, zero),
        };
    }
    deg.to_radians().sin_cos()
}

impl<T: Scalar> TurtleState<T> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn heading(&self) -> T {
        self.heading
    }

    pub fn position(&self) -> Point<T> {
        Point {
            x: self.x,
            y: self.y,
        }
    }

    pub fn is_filling(&self) -> bool {
        self.fill.is_some()
    }

    fn move_to(&mut self, canvas: &mut Canvas<T>, x: T, y: T) {
        let moved = x != self.x || y != self.y;
        if self.pen_down && moved {
            canvas.shapes.push(Shape::Segment(Segment {
                x0: self.x,
                y0: self.y,
                x1: x,
                y1: y,
                color: self.pen_color.clone(),
            }));
        }
        self.x = x;
        self.y = y;
        if let Some(fill) = &mut self.fill {
            if moved {
                fill.vertices.push(Point { x, y });
            }
        }
    }

    pub fn forward(&mut self, canvas: &mut Canvas<T>, distance: T) {
        let (sin, cos) = sin_cos_degrees(self.heading);
        let x = self.x + distance * cos;
        let y = self.y + distance * sin;
        self.move_to(canvas, x, y);
    }

    pub fn backward(&mut self, canvas: &mut Canvas<T>, distance: T) {
        self.forward(canvas, -distance);
    }

    /// Turns clockwise.
    pub fn right(&mut self, degrees: T) {
        self.heading = normalize_degrees(self.heading - degrees);
    }

    /// Turns counterclockwise.
    pub fn left(&mut self, degrees: T) {
        self.heading = normalize_degrees(self.heading + degrees);
    }

    pub fn goto(&mut self, canvas: &mut Canvas<T>, x: T, y: T) {
        self.move_to(canvas, x, y);
    }

    /// Draws an arc of the given radius whose center lies `radius` units to
    /// the turtle's left (right for negative radii), approximated by a
    /// regular polyline.
    pub fn circle(&mut self, canvas: &mut Canvas<T>, radius: T, extent: T) {
        let f = |v: f64| T::from_f64(v);
        let frac = extent.abs() / f(360.0);
        let per_circle = (f(11.0) + radius.abs() / f(6.0)).min(f(59.0));
        let steps = 1 + (per_circle * frac).to_usize().unwrap_or(0);
        let mut step_angle = extent / T::from_f64(steps as f64);
        let mut half = step_angle / f(2.0);
        let mut chord = f(2.0) * radius * half.to_radians().sin();
        if radius < T::zero() {
            chord = -chord;
            step_angle = -step_angle;
            half = -half;
        }
        self.left(half);
        for _ in 0..steps {
            self.forward(canvas, chord);
            self.left(step_angle);
        }
        self.left(-half);
    }

    pub fn pen_up(&mut self) {
        self.pen_down = false;
    }

    pub fn put_pen_down(&mut self) {
        self.pen_down = true;
    }

    pub fn set_pen_color(&mut self, color: impl Into<String>) {
        self.pen_color = color.into();
    }

    /// Starts capturing a polygon at the current position. A fill already in
    /// progress is discarded.
    pub fn begin_fill(&mut self, color: impl Into<String>) {
        self.fill = Some(Fill {
            color: color.into(),
            vertices: vec![self.position()],
        });
    }

    /// Closes the captured polygon onto the canvas. The closing vertex is
    /// implicit; polygons with fewer than three distinct vertices are dropped.
    pub fn end_fill(&mut self, canvas: &mut Canvas<T>) -> Result<(), TurtleError> {
        let Fill {
            color,
            mut vertices,
        } = self.fill.take().ok_or(TurtleError::FillNotStarted)?;
        if vertices.len() > 1 {
            let (first, last) = (vertices[0], vertices[vertices.len() - 1]);
            let eps = T::from_f64(1e-9);
            if (first.x - last.x).abs() <= eps && (first.y - last.y).abs() <= eps {
                vertices.pop();
            }
        }
        if vertices.len() >= 3 {
            canvas.shapes.push(Shape::Polygon(Polygon {
                vertices,
                fill: color,
            }));
        }
        Ok(())
    }
}

/// Coordinate text: at most six fractional digits, trailing zeros trimmed.
fn coord(v: f64) -> String {
    let mut s = format!("{v:.6}");
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    if s == "-0" {
        s = "0".to_owned();
    }
    s
}

fn escape_attr(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

const PADDING: f64 = 10.0;

/// Renders a standalone SVG document. Equal canvases give identical bytes.
pub fn render_svg<T: Scalar>(canvas: &Canvas<T>) -> String {
    let to = |v: T| v.to_f64().unwrap_or(0.0);
    // Flip y so that world +y is up.
    let (min_x, min_y, max_x, max_y) = canvas
        .bounds()
        .map(|(x0, y0, x1, y1)| (to(x0), -to(y1), to(x1), -to(y0)))
        .unwrap_or((0.0, 0.0, 0.0, 0.0));
    let (vx, vy) = (min_x - PADDING, min_y - PADDING);
    let (vw, vh) = (max_x - min_x + 2.0 * PADDING, max_y - min_y + 2.0 * PADDING);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="{} {} {w} {h}">"#,
        coord(vx),
        coord(vy),
        w = coord(vw),
        h = coord(vh),
    );
    for shape in canvas.shapes() {
        match shape {
            Shape::Polygon(p) => {
                let points: Vec<String> = p
                    .vertices
                    .iter()
                    .map(|v| format!("{},{}", coord(to(v.x)), coord(-to(v.y))))
                    .collect();
                let _ = writeln!(
                    out,
                    r#"  <polygon points="{}" fill="{}" stroke="none"/>"#,
                    points.join(" "),
                    escape_attr(&p.fill)
                );
            }
            Shape::Segment(s) => {
                let _ = writeln!(
                    out,
                    r#"  <line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{}"/>"#,
                    coord(to(s.x0)),
                    coord(-to(s.y0)),
                    coord(to(s.x1)),
                    coord(-to(s.y1)),
                    escape_attr(&s.color)
                );
            }
        }
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    type T64 = TurtleState<f64>;

    fn square<T: Scalar>(t: &mut TurtleState<T>, c: &mut Canvas<T>) {
        for _ in 0..4 {
            t.forward(c, T::from_f64(90.0));
            t.right(T::from_f64(90.0));
        }
    }

    #[test]
    fn initial_pose() {
        let t = T64::new();
        assert_eq!((t.x, t.y, t.heading()), (0.0, 0.0, 0.0));
        assert!(t.pen_down);
        assert_eq!(t.pen_color, "black");
    }

    #[test]
    fn forward_from_origin() {
        let (mut t, mut c) = (T64::new(), Canvas::new());
        t.forward(&mut c, 90.0);
        assert_eq!((t.x, t.y), (90.0, 0.0));
        assert_eq!(c.segments().count(), 1);
    }

    #[test]
    fn zero_length_stroke_suppressed() {
        let (mut t, mut c) = (T64::new(), Canvas::new());
        t.forward(&mut c, 0.0);
        assert_eq!((t.x, t.y), (0.0, 0.0));
        assert!(c.is_empty());
    }

    #[test]
    fn axis_headings() {
        let (mut t, mut c) = (T64::new(), Canvas::new());
        t.left(90.0);
        t.forward(&mut c, 10.0);
        assert!((t.x - 0.0).abs() <= 1e-12 && (t.y - 10.0).abs() <= 1e-12);
    }

    #[test]
    fn right_turns() {
        let mut t = T64::new();
        t.right(90.0);
        assert_eq!(t.heading(), 270.0);
        let before = t.heading();
        t.right(360.0);
        assert_eq!(t.heading(), before);
        let mut t = T64::new();
        for _ in 0..4 {
            t.right(90.0);
        }
        assert_eq!(t.heading(), 0.0);
        t.left(-370.0);
        assert_eq!(t.heading(), 350.0);
    }

    #[test]
    fn square_closes() {
        let (mut t, mut c) = (T64::new(), Canvas::new());
        square(&mut t, &mut c);
        assert!(t.x.abs() <= 1e-9 && t.y.abs() <= 1e-9);
        assert_eq!(t.heading(), 0.0);
        let segs: Vec<_> = c.segments().collect();
        assert_eq!(segs.len(), 4);
        for s in segs {
            assert!((s.length() - 90.0).abs() <= 1e-9);
        }
        assert_eq!(c.bounds(), Some((0.0, -90.0, 90.0, 0.0)));
    }

    #[test]
    fn square_closes_in_single_precision() {
        let (mut t, mut c) = (TurtleState::<f32>::new(), Canvas::new());
        square(&mut t, &mut c);
        assert!(t.x.abs() <= 1e-4 && t.y.abs() <= 1e-4);
        assert_eq!(c.segments().count(), 4);
    }

    #[test]
    fn filled_square_polygon() {
        let (mut t, mut c) = (T64::new(), Canvas::new());
        t.begin_fill("red");
        square(&mut t, &mut c);
        t.end_fill(&mut c).unwrap();
        let polys: Vec<_> = c.polygons().collect();
        assert_eq!(polys.len(), 1);
        assert_eq!(polys[0].vertices.len(), 4);
        assert_eq!(polys[0].fill, "red");
        assert!(!t.is_filling());
    }

    #[test]
    fn end_fill_requires_begin() {
        let (mut t, mut c) = (T64::new(), Canvas::new());
        assert_eq!(t.end_fill(&mut c), Err(TurtleError::FillNotStarted));
    }

    #[test]
    fn pen_up_records_nothing() {
        let (mut t, mut c) = (T64::new(), Canvas::new());
        t.pen_up();
        t.forward(&mut c, 50.0);
        assert_eq!(c.segments().count(), 0);
        assert_eq!(t.x, 50.0);
    }

    #[test]
    fn pen_color_passes_through() {
        let (mut t, mut c) = (T64::new(), Canvas::new());
        t.set_pen_color("red");
        t.forward(&mut c, 1.0);
        assert_eq!(c.segments().next().unwrap().color, "red");
    }

    #[test]
    fn full_circle_returns_home() {
        let (mut t, mut c) = (T64::new(), Canvas::new());
        t.circle(&mut c, 50.0, 360.0);
        assert!(t.x.abs() < 1e-9 && t.y.abs() < 1e-9, "{:?}", t.position());
        assert!(t.heading().abs() < 1e-9 || (360.0 - t.heading()) < 1e-9);
        let (_, y0, _, y1) = c.bounds().unwrap();
        // Center is to the left: the circle spans y in [0, 100].
        assert!(y0.abs() < 1e-9 && (y1 - 100.0).abs() < 1.0);
    }

    #[test]
    fn svg_empty_canvas() {
        let svg = render_svg(&Canvas::<f64>::new());
        assert!(svg.contains(r#"viewBox="-10 -10 20 20""#), "{svg}");
        assert!(!svg.contains("<line") && !svg.contains("<polygon"));
    }

    #[test]
    fn svg_square() {
        let (mut t, mut c) = (T64::new(), Canvas::new());
        square(&mut t, &mut c);
        let svg = render_svg(&c);
        assert_eq!(svg.matches("<line").count(), 4);
        // 90x90 box padded by 10 on every side, y flipped.
        assert!(svg.contains(r#"viewBox="-10 -10 110 110""#), "{svg}");
        assert!(svg.contains(r#"<line x1="0" y1="0" x2="90" y2="0" stroke="black"/>"#));
        assert!(svg.contains(r#"<line x1="90" y1="0" x2="90" y2="90" stroke="black"/>"#));
    }

    #[test]
    fn svg_red_segment_and_escaping() {
        let (mut t, mut c) = (T64::new(), Canvas::new());
        t.set_pen_color("red");
        t.forward(&mut c, 1.0 / 3.0);
        let svg = render_svg(&c);
        assert_eq!(svg.matches("<line").count(), 1);
        assert!(svg.contains(r#"stroke="red""#));
        assert!(svg.contains(r#"x2="0.333333""#));

        t.set_pen_color("\"/><script>");
        t.forward(&mut c, 1.0);
        assert!(!render_svg(&c).contains("<script>"));
    }

    #[test]
    fn svg_paint_order_follows_insertion() {
        let (mut t, mut c) = (T64::new(), Canvas::new());
        t.begin_fill("blue");
        square(&mut t, &mut c);
        t.end_fill(&mut c).unwrap();
        t.forward(&mut c, 5.0);
        let svg = render_svg(&c);
        let poly = svg.find("<polygon").unwrap();
        let last_line = svg.rfind("<line").unwrap();
        let first_line = svg.find("<line").unwrap();
        assert!(first_line < poly && poly < last_line);
    }

    #[test]
    fn coord_formatting() {
        assert_eq!(coord(90.0), "90");
        assert_eq!(coord(-0.0000001), "0");
        assert_eq!(coord(1.5), "1.5");
        assert_eq!(coord(-2.25), "-2.25");
        assert_eq!(coord(1e-7 + 3.0), "3");
    }

    proptest! {
        #[test]
        fn closed_turn_sequences_restore_heading(
            turns in proptest::collection::vec(-720.0f64..720.0, 1..12),
            start in 0.0f64..360.0,
        ) {
            let mut t = T64::new();
            t.left(start);
            let h0 = t.heading();
            let total: f64 = turns.iter().sum();
            for d in &turns {
                t.right(*d);
            }
            // Top up to a multiple of 360.
            t.right(-total);
            let diff = (t.heading() - h0).abs();
            prop_assert!(diff <= 1e-9 || (360.0 - diff) <= 1e-9, "{} vs {}", t.heading(), h0);
            prop_assert!(t.heading() >= 0.0 && t.heading() < 360.0);
        }

        #[test]
        fn render_is_pure(steps in proptest::collection::vec((0.0f64..100.0, -180.0f64..180.0), 0..20)) {
            let (mut t, mut c) = (T64::new(), Canvas::new());
            for (d, a) in &steps {
                t.forward(&mut c, *d);
                t.right(*a);
            }
            let copy = c.clone();
            prop_assert_eq!(render_svg(&c), render_svg(&copy));
        }
    }
}
