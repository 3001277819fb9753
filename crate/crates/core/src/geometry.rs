//! Text geometry: character quads, the center-point list with its per-point
//! attributes, arc-length interpolation and resampling, and the symmetric
//! control points placed on either side of the center line.
//!
//! Coordinates follow the image convention: x grows to the right, y grows
//! downward. Angles are only ever carried as `(cos, sin)` pairs.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Distance below which two centers are considered the same point.
pub const COINCIDENT_EPS: f64 = 1e-9;

/// Norm below which an interpolated orientation pair is rejected.
pub const ORIENTATION_EPS: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn dist(self, other: Point2) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    pub fn midpoint(self, other: Point2) -> Point2 {
        Point2::new(0.5 * (self.x + other.x), 0.5 * (self.y + other.y))
    }

    pub fn lerp(self, other: Point2, u: f64) -> Point2 {
        Point2::new(
            self.x * (1.0 - u) + other.x * u,
            self.y * (1.0 - u) + other.y * u,
        )
    }

    /// `self + scale * (dx, dy)`
    pub fn offset(self, dx: f64, dy: f64, scale: f64) -> Point2 {
        Point2::new(self.x + scale * dx, self.y + scale * dy)
    }
}

/// A unit direction stored as its `(cos, sin)` pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Orientation {
    pub cos: f64,
    pub sin: f64,
}

impl Orientation {
    pub const RIGHT: Orientation = Orientation { cos: 1.0, sin: 0.0 };
    pub const DOWN: Orientation = Orientation { cos: 0.0, sin: 1.0 };

    /// Normalizes `(dx, dy)`; `None` when its norm is below `min_norm`.
    pub fn from_vector(dx: f64, dy: f64, min_norm: f64) -> Option<Self> {
        let n = dx.hypot(dy);
        if !n.is_finite() || n < min_norm {
            return None;
        }
        Some(Self {
            cos: dx / n,
            sin: dy / n,
        })
    }

    pub fn between(from: Point2, to: Point2) -> Option<Self> {
        Self::from_vector(to.x - from.x, to.y - from.y, COINCIDENT_EPS)
    }

    pub fn from_degrees(deg: f64) -> Self {
        let r = deg.to_radians();
        Self {
            cos: r.cos(),
            sin: r.sin(),
        }
    }

    /// Lerp of the two pairs followed by renormalization.
    pub fn lerp(self, other: Orientation, u: f64) -> Result<Orientation> {
        Self::from_vector(
            self.cos * (1.0 - u) + other.cos * u,
            self.sin * (1.0 - u) + other.sin * u,
            ORIENTATION_EPS,
        )
        .ok_or(Error::DegenerateOrientation)
    }

    /// Rotation by +90 degrees on screen: reading direction -> downward normal.
    pub fn normal(self) -> Orientation {
        Orientation {
            cos: -self.sin,
            sin: self.cos,
        }
    }

    pub fn dot(self, other: Orientation) -> f64 {
        self.cos * other.cos + self.sin * other.sin
    }

    pub fn reversed(self) -> Orientation {
        Orientation {
            cos: -self.cos,
            sin: -self.sin,
        }
    }

    pub fn norm_error(self) -> f64 {
        (self.cos * self.cos + self.sin * self.sin - 1.0).abs()
    }
}

/// Corners in the order top-left, top-right, bottom-right, bottom-left.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CharQuad {
    pub corners: [Point2; 4],
}

impl CharQuad {
    pub const fn new(tl: Point2, tr: Point2, br: Point2, bl: Point2) -> Self {
        Self {
            corners: [tl, tr, br, bl],
        }
    }

    /// Axis-aligned rectangle from its top-left corner and size.
    pub fn rect(x: f64, y: f64, w: f64, h: f64) -> Self {
        Self::new(
            Point2::new(x, y),
            Point2::new(x + w, y),
            Point2::new(x + w, y + h),
            Point2::new(x, y + h),
        )
    }

    pub fn tl(&self) -> Point2 {
        self.corners[0]
    }
    pub fn tr(&self) -> Point2 {
        self.corners[1]
    }
    pub fn br(&self) -> Point2 {
        self.corners[2]
    }
    pub fn bl(&self) -> Point2 {
        self.corners[3]
    }

    pub fn center(&self) -> Point2 {
        let (sx, sy) = self
            .corners
            .iter()
            .fold((0.0, 0.0), |(sx, sy), p| (sx + p.x, sy + p.y));
        Point2::new(sx / 4.0, sy / 4.0)
    }

    /// Shoelace area; positive for corners running clockwise on screen.
    pub fn signed_area(&self) -> f64 {
        let c = &self.corners;
        0.5 * (0..4)
            .map(|i| {
                let (a, b) = (c[i], c[(i + 1) % 4]);
                a.x * b.y - b.x * a.y
            })
            .sum::<f64>()
    }

    pub fn left_edge_len(&self) -> f64 {
        self.tl().dist(self.bl())
    }

    pub fn right_edge_len(&self) -> f64 {
        self.tr().dist(self.br())
    }

    /// Applies `f` to every corner.
    pub fn map(&self, f: impl Fn(Point2) -> Point2) -> CharQuad {
        CharQuad {
            corners: self.corners.map(f),
        }
    }

    pub fn validate(&self, index: usize) -> Result<()> {
        let bad = |reason| Err(Error::DegenerateQuad { index, reason });
        if !self.corners.iter().all(|p| p.is_finite()) {
            return bad("non-finite corner");
        }
        if self.left_edge_len() < COINCIDENT_EPS || self.right_edge_len() < COINCIDENT_EPS {
            return bad("zero-length vertical edge");
        }
        let c = &self.corners;
        if segments_intersect(c[0], c[1], c[2], c[3]) || segments_intersect(c[1], c[2], c[3], c[0])
        {
            return bad("self-intersecting");
        }
        if self.signed_area() <= 0.0 {
            return bad("non-positive signed area");
        }
        Ok(())
    }
}

fn cross(o: Point2, a: Point2, b: Point2) -> f64 {
    (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)
}

fn on_segment(a: Point2, b: Point2, p: Point2) -> bool {
    p.x >= a.x.min(b.x) && p.x <= a.x.max(b.x) && p.y >= a.y.min(b.y) && p.y <= a.y.max(b.y)
}

/// Closed-segment intersection test (touching counts).
pub fn segments_intersect(p1: Point2, p2: Point2, q1: Point2, q2: Point2) -> bool {
    let d1 = cross(q1, q2, p1);
    let d2 = cross(q1, q2, p2);
    let d3 = cross(p1, p2, q1);
    let d4 = cross(p1, p2, q2);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return true;
    }
    (d1 == 0.0 && on_segment(q1, q2, p1))
        || (d2 == 0.0 && on_segment(q1, q2, p2))
        || (d3 == 0.0 && on_segment(p1, p2, q1))
        || (d4 == 0.0 && on_segment(p1, p2, q2))
}

/// One word: character quads in reading order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TextInstance {
    pub chars: Vec<CharQuad>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transcript: Option<String>,
}

impl TextInstance {
    pub fn new(chars: Vec<CharQuad>) -> Self {
        Self {
            chars,
            transcript: None,
        }
    }

    pub fn with_transcript(mut self, transcript: impl Into<String>) -> Self {
        self.transcript = Some(transcript.into());
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.chars.is_empty() {
            return Err(Error::InvalidArgument(
                "text instance has no characters".into(),
            ));
        }
        self.chars
            .iter()
            .enumerate()
            .try_for_each(|(i, q)| q.validate(i))
    }

    pub fn map_points(&self, f: impl Fn(Point2) -> Point2 + Copy) -> TextInstance {
        TextInstance {
            chars: self.chars.iter().map(|q| q.map(f)).collect(),
            transcript: self.transcript.clone(),
        }
    }
}

/// A center-line point with its scale and two orientations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeoSample {
    pub center: Point2,
    /// Half the character height, in pixels.
    pub scale: f64,
    /// Text orientation: local reading direction.
    pub theta: Orientation,
    /// Character orientation: top-to-bottom direction of the glyph.
    pub phi: Orientation,
}

/// Ordered center points, head to tail.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CenterPolyline {
    samples: Vec<GeoSample>,
}

impl CenterPolyline {
    pub fn new(samples: Vec<GeoSample>) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::DegeneratePolyline {
                index: samples.len(),
            });
        }
        for (i, s) in samples.iter().enumerate() {
            if !s.center.is_finite() || !(s.scale > 0.0) || !s.scale.is_finite() {
                return Err(Error::DegeneratePolyline { index: i });
            }
        }
        for (i, w) in samples.windows(2).enumerate() {
            if w[0].center.dist(w[1].center) <= COINCIDENT_EPS {
                return Err(Error::DegeneratePolyline { index: i + 1 });
            }
        }
        Ok(Self { samples })
    }

    pub fn samples(&self) -> &[GeoSample] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn centers(&self) -> Vec<Point2> {
        self.samples.iter().map(|s| s.center).collect()
    }

    /// Cumulative arc length at each sample; first entry is 0.
    pub fn cumulative_lengths(&self) -> Vec<f64> {
        let mut acc = 0.0;
        let mut out = Vec::with_capacity(self.samples.len());
        out.push(0.0);
        for w in self.samples.windows(2) {
            acc += w[0].center.dist(w[1].center);
            out.push(acc);
        }
        out
    }

    pub fn arc_length(&self) -> f64 {
        *self.cumulative_lengths().last().unwrap()
    }

    /// Applies `f` to every sample and revalidates.
    pub fn map_samples(&self, f: impl Fn(&GeoSample) -> GeoSample) -> Result<CenterPolyline> {
        CenterPolyline::new(self.samples.iter().map(f).collect())
    }

    pub fn into_samples(self) -> Vec<GeoSample> {
        self.samples
    }
}

/// Builds the center-point list `head, c_1 .. c_m, tail` of one word.
///
/// Each character contributes its corner mean; the head and tail are the
/// midpoints of the first character's left edge and the last character's
/// right edge. Scale is half the mean of the two vertical edge lengths and
/// the character orientation runs from the top-edge midpoint to the
/// bottom-edge midpoint.
pub fn build_center_point_list(instance: &TextInstance) -> Result<CenterPolyline> {
    instance.validate()?;
    let chars = &instance.chars;
    let m = chars.len();

    let mut scales = Vec::with_capacity(m);
    let mut phis = Vec::with_capacity(m);
    for (i, q) in chars.iter().enumerate() {
        scales.push(0.25 * (q.left_edge_len() + q.right_edge_len()));
        let top = q.tl().midpoint(q.tr());
        let bottom = q.bl().midpoint(q.br());
        phis.push(Orientation::between(top, bottom).ok_or(Error::DegenerateQuad {
            index: i,
            reason: "top and bottom edge midpoints coincide",
        })?);
    }

    let head = chars[0].tl().midpoint(chars[0].bl());
    let tail = chars[m - 1].tr().midpoint(chars[m - 1].br());
    let mut points = Vec::with_capacity(m + 2);
    points.push(head);
    points.extend(chars.iter().map(CharQuad::center));
    points.push(tail);

    for (i, w) in points.windows(2).enumerate() {
        if w[0].dist(w[1]) <= COINCIDENT_EPS {
            return Err(Error::DegeneratePolyline { index: i + 1 });
        }
    }
    let dir = |a: usize, b: usize| Orientation::between(points[a], points[b]).unwrap();

    let mut samples = Vec::with_capacity(m + 2);
    samples.push(GeoSample {
        center: head,
        scale: scales[0],
        theta: dir(0, 1),
        phi: phis[0],
    });
    for i in 0..m {
        // points[i + 1] is c_i; the last character looks back unless it is
        // the only one, in which case it looks at the tail.
        let theta = if i + 1 < m {
            dir(i + 1, i + 2)
        } else if m >= 2 {
            dir(i, i + 1)
        } else {
            dir(1, 2)
        };
        samples.push(GeoSample {
            center: points[i + 1],
            scale: scales[i],
            theta,
            phi: phis[i],
        });
    }
    samples.push(GeoSample {
        center: tail,
        scale: scales[m - 1],
        theta: dir(m, m + 1),
        phi: phis[m - 1],
    });
    CenterPolyline::new(samples)
}

/// Attributes at arc-length fraction `t` along the polyline.
pub fn interpolate_attributes(polyline: &CenterPolyline, t: f64) -> Result<GeoSample> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::OutOfRange(t));
    }
    let samples = polyline.samples();
    if t == 0.0 {
        return Ok(samples[0]);
    }
    if t == 1.0 {
        return Ok(*samples.last().unwrap());
    }
    let cum = polyline.cumulative_lengths();
    let target = t * cum[cum.len() - 1];
    // first index whose cumulative length exceeds the target
    let hi = cum.partition_point(|&c| c <= target).clamp(1, cum.len() - 1);
    let lo = hi - 1;
    let seg = cum[hi] - cum[lo];
    let u = ((target - cum[lo]) / seg).clamp(0.0, 1.0);
    let (a, b) = (&samples[lo], &samples[hi]);
    Ok(GeoSample {
        center: a.center.lerp(b.center, u),
        scale: a.scale * (1.0 - u) + b.scale * u,
        theta: a.theta.lerp(b.theta, u)?,
        phi: a.phi.lerp(b.phi, u)?,
    })
}

/// `k` samples at equal arc-length spacing, endpoints included.
pub fn resample_equidistant(polyline: &CenterPolyline, k: usize) -> Result<CenterPolyline> {
    if k < 2 {
        return Err(Error::InvalidK(k));
    }
    let samples = (0..k)
        .map(|j| {
            let t = if j == k - 1 {
                1.0
            } else {
                j as f64 / (k - 1) as f64
            };
            interpolate_attributes(polyline, t)
        })
        .collect::<Result<Vec<_>>>()?;
    CenterPolyline::new(samples)
}

/// Fiducial points as `(top_i, bottom_i)` pairs, flattened.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ControlPoints {
    points: Vec<Point2>,
}

impl ControlPoints {
    pub fn from_points(points: Vec<Point2>) -> Result<Self> {
        if !points.len().is_multiple_of(2) {
            return Err(Error::InvalidArgument(format!(
                "control points must come in pairs, got {}",
                points.len()
            )));
        }
        Ok(Self { points })
    }

    pub fn points(&self) -> &[Point2] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `(top, bottom)` pairs in order.
    pub fn pairs(&self) -> impl Iterator<Item = (Point2, Point2)> + '_ {
        self.points.chunks_exact(2).map(|c| (c[0], c[1]))
    }
}

/// Which direction is used to push control points off the center line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrientationSource {
    /// The per-character orientation carried by each sample.
    #[default]
    Character,
    /// The normal of the text orientation, ignoring character tilt.
    CenterLineNormal,
}

/// Symmetric control points: `c - s*phi` above, `c + s*phi` below.
pub fn control_points(resampled: &CenterPolyline) -> ControlPoints {
    control_points_with(resampled, OrientationSource::Character)
}

pub fn control_points_with(resampled: &CenterPolyline, source: OrientationSource) -> ControlPoints {
    let mut points = Vec::with_capacity(2 * resampled.len());
    for s in resampled.samples() {
        let dir = match source {
            OrientationSource::Character => s.phi,
            OrientationSource::CenterLineNormal => s.theta.normal(),
        };
        points.push(s.center.offset(dir.cos, dir.sin, -s.scale));
        points.push(s.center.offset(dir.cos, dir.sin, s.scale));
    }
    ControlPoints { points }
}

/// Distance from `p` to the closest point of segment `a`-`b`, and the
/// segment parameter of that point.
pub fn project_on_segment(p: Point2, a: Point2, b: Point2) -> (f64, f64) {
    let (dx, dy) = (b.x - a.x, b.y - a.y);
    let len2 = dx * dx + dy * dy;
    let u = if len2 > 0.0 {
        (((p.x - a.x) * dx + (p.y - a.y) * dy) / len2).clamp(0.0, 1.0)
    } else {
        0.0
    };
    (p.dist(a.lerp(b, u)), u)
}

/// Distance from `p` to a polyline given by its vertices.
pub fn distance_to_polyline(p: Point2, line: &[Point2]) -> f64 {
    match line {
        [] => f64::INFINITY,
        [only] => p.dist(*only),
        _ => line
            .windows(2)
            .map(|w| project_on_segment(p, w[0], w[1]).0)
            .fold(f64::INFINITY, f64::min),
    }
}

fn densify(line: &[Point2], step: f64) -> Vec<Point2> {
    let mut out = Vec::new();
    for w in line.windows(2) {
        let n = ((w[0].dist(w[1]) / step).ceil() as usize).max(1);
        out.extend((0..n).map(|i| w[0].lerp(w[1], i as f64 / n as f64)));
    }
    out.extend(line.last().copied());
    out
}

/// Symmetric Hausdorff distance between two polylines, evaluated on
/// vertices densified to at most `step` spacing.
pub fn hausdorff_distance(a: &[Point2], b: &[Point2], step: f64) -> f64 {
    let directed = |from: &[Point2], to: &[Point2]| {
        densify(from, step)
            .into_iter()
            .map(|p| distance_to_polyline(p, to))
            .fold(0.0, f64::max)
    };
    directed(a, b).max(directed(b, a))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rotate_about(p: Point2, c: Point2, deg: f64) -> Point2 {
        let (s, co) = deg.to_radians().sin_cos();
        let (dx, dy) = (p.x - c.x, p.y - c.y);
        Point2::new(c.x + co * dx - s * dy, c.y + s * dx + co * dy)
    }

    fn sample(x: f64, y: f64, s: f64, theta: Orientation, phi: Orientation) -> GeoSample {
        GeoSample {
            center: Point2::new(x, y),
            scale: s,
            theta,
            phi,
        }
    }

    #[test]
    fn single_square_quad() {
        let inst = TextInstance::new(vec![CharQuad::rect(0.0, 0.0, 10.0, 10.0)]);
        let poly = build_center_point_list(&inst).unwrap();
        let c = poly.centers();
        assert_eq!(
            c,
            vec![
                Point2::new(0.0, 5.0),
                Point2::new(5.0, 5.0),
                Point2::new(10.0, 5.0)
            ]
        );
        for s in poly.samples() {
            assert_eq!(s.scale, 5.0);
            assert_eq!(s.theta, Orientation::RIGHT);
            assert_eq!(s.phi, Orientation::DOWN);
        }
    }

    #[test]
    fn two_unit_squares() {
        let inst = TextInstance::new(vec![
            CharQuad::rect(0.0, 0.0, 1.0, 1.0),
            CharQuad::rect(1.0, 0.0, 1.0, 1.0),
        ]);
        let poly = build_center_point_list(&inst).unwrap();
        let s = poly.samples();
        assert_eq!(s.len(), 4);
        assert_eq!(s[0].center, Point2::new(0.0, 0.5));
        assert_eq!(s[3].center, Point2::new(2.0, 0.5));
        assert_eq!(s[1].theta, Orientation::RIGHT);
        assert_eq!(s[2].theta, Orientation::RIGHT);
    }

    #[test]
    fn rotated_quad_orientation() {
        let c = Point2::new(20.0, 30.0);
        let q = CharQuad::rect(14.0, 22.0, 12.0, 16.0).map(|p| rotate_about(p, c, 30.0));
        let poly = build_center_point_list(&TextInstance::new(vec![q])).unwrap();
        // top/bottom edge midpoints computed by hand from the rotated corners
        let top = q.corners[0].midpoint(q.corners[1]);
        let bottom = q.corners[3].midpoint(q.corners[2]);
        let n = top.dist(bottom);
        let mid = &poly.samples()[1];
        assert!((mid.phi.cos - (bottom.x - top.x) / n).abs() < 1e-12);
        assert!((mid.phi.sin - (bottom.y - top.y) / n).abs() < 1e-12);
        let half = 30f64.to_radians();
        assert!((mid.phi.sin - half.cos()).abs() < 1e-12);
        assert!((mid.phi.cos + half.sin()).abs() < 1e-12);
        assert!((mid.scale - 8.0).abs() < 1e-12);
        assert!((mid.center.x - c.x).abs() < 1e-12 && (mid.center.y - c.y).abs() < 1e-12);
    }

    #[test]
    fn degenerate_quads_rejected() {
        let flat = CharQuad::new(
            Point2::new(0.0, 0.0),
            Point2::new(5.0, 0.0),
            Point2::new(5.0, 0.0),
            Point2::new(0.0, 0.0),
        );
        assert!(matches!(
            build_center_point_list(&TextInstance::new(vec![flat])),
            Err(Error::DegenerateQuad { index: 0, .. })
        ));
        let bowtie = CharQuad::new(
            Point2::new(0.0, 0.0),
            Point2::new(4.0, 4.0),
            Point2::new(4.0, 0.0),
            Point2::new(0.0, 4.0),
        );
        assert!(matches!(bowtie.validate(3), Err(Error::DegenerateQuad { index: 3, .. })));
        let ccw = CharQuad::new(
            Point2::new(0.0, 4.0),
            Point2::new(4.0, 4.0),
            Point2::new(4.0, 0.0),
            Point2::new(0.0, 0.0),
        );
        assert!(ccw.validate(0).is_err());
    }

    #[test]
    fn coincident_centers_rejected() {
        let q = CharQuad::rect(0.0, 0.0, 4.0, 4.0);
        let inst = TextInstance::new(vec![q, q]);
        assert!(matches!(
            build_center_point_list(&inst),
            Err(Error::DegeneratePolyline { .. })
        ));
    }

    #[test]
    fn interpolation_endpoints_and_midpoints() {
        let up = Orientation::from_degrees(90.0);
        let poly = CenterPolyline::new(vec![
            sample(0.0, 0.0, 2.0, Orientation::RIGHT, Orientation::DOWN),
            sample(10.0, 0.0, 6.0, up, Orientation::DOWN),
        ])
        .unwrap();
        assert_eq!(interpolate_attributes(&poly, 0.0).unwrap(), poly.samples()[0]);
        assert_eq!(interpolate_attributes(&poly, 1.0).unwrap(), poly.samples()[1]);
        let mid = interpolate_attributes(&poly, 0.5).unwrap();
        assert!((mid.scale - 4.0).abs() < 1e-12);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((mid.theta.cos - h).abs() < 1e-12 && (mid.theta.sin - h).abs() < 1e-12);
        assert_eq!(interpolate_attributes(&poly, 1.5), Err(Error::OutOfRange(1.5)));
        assert!(interpolate_attributes(&poly, -0.1).is_err());
    }

    #[test]
    fn antipodal_orientations_are_degenerate() {
        let poly = CenterPolyline::new(vec![
            sample(0.0, 0.0, 1.0, Orientation::RIGHT, Orientation::DOWN),
            sample(4.0, 0.0, 1.0, Orientation::RIGHT.reversed(), Orientation::DOWN),
        ])
        .unwrap();
        assert_eq!(
            interpolate_attributes(&poly, 0.5),
            Err(Error::DegenerateOrientation)
        );
    }

    #[test]
    fn resample_straight() {
        let poly = CenterPolyline::new(vec![
            sample(0.0, 0.0, 1.0, Orientation::RIGHT, Orientation::DOWN),
            sample(9.0, 0.0, 1.0, Orientation::RIGHT, Orientation::DOWN),
        ])
        .unwrap();
        let r = resample_equidistant(&poly, 4).unwrap();
        let xs: Vec<f64> = r.centers().iter().map(|p| p.x).collect();
        for (x, want) in xs.iter().zip([0.0, 3.0, 6.0, 9.0]) {
            assert!((x - want).abs() < 1e-12);
        }
        assert_eq!(resample_equidistant(&poly, 1), Err(Error::InvalidK(1)));
    }

    #[test]
    fn resample_quarter_circle_chords() {
        // dense polyline on a quarter circle; the oracle is a brute-force
        // arc-length table built independently of the implementation
        let r = 50.0;
        let n = 64;
        let pts: Vec<Point2> = (0..=n)
            .map(|i| {
                let a = std::f64::consts::FRAC_PI_2 * i as f64 / n as f64;
                Point2::new(r * a.cos(), r * a.sin())
            })
            .collect();
        let samples = pts
            .iter()
            .map(|p| sample(p.x, p.y, 1.0, Orientation::RIGHT, Orientation::DOWN))
            .collect();
        let poly = CenterPolyline::new(samples).unwrap();
        let res = resample_equidistant(&poly, 5).unwrap().centers();
        let chords: Vec<f64> = res.windows(2).map(|w| w[0].dist(w[1])).collect();
        let mean = chords.iter().sum::<f64>() / chords.len() as f64;
        for c in &chords {
            assert!((c - mean).abs() / mean < 0.01, "{chords:?}");
        }
        // every resampled point lies at the brute-force arc position
        let mut table = vec![0.0];
        for w in pts.windows(2) {
            table.push(table.last().unwrap() + w[0].dist(w[1]));
        }
        let total = *table.last().unwrap();
        for (j, p) in res.iter().enumerate() {
            let target = total * j as f64 / 4.0;
            let i = table.iter().rposition(|&c| c <= target).unwrap().min(n - 1);
            let u = (target - table[i]) / (table[i + 1] - table[i]);
            let want = pts[i].lerp(pts[i + 1], u);
            assert!(p.dist(want) < 1e-9);
        }
    }

    #[test]
    fn control_point_examples() {
        let poly = CenterPolyline::new(vec![
            sample(5.0, 5.0, 2.0, Orientation::RIGHT, Orientation::DOWN),
            sample(0.0, 0.0, 1.0, Orientation::DOWN, Orientation::RIGHT),
        ])
        .unwrap();
        let cp = control_points(&poly);
        assert_eq!(
            cp.points(),
            &[
                Point2::new(5.0, 3.0),
                Point2::new(5.0, 7.0),
                Point2::new(-1.0, 0.0),
                Point2::new(1.0, 0.0)
            ]
        );
    }

    #[test]
    fn normal_direction_control_points() {
        let poly = CenterPolyline::new(vec![
            sample(0.0, 0.0, 2.0, Orientation::RIGHT, Orientation::from_degrees(60.0)),
            sample(4.0, 0.0, 2.0, Orientation::RIGHT, Orientation::from_degrees(60.0)),
        ])
        .unwrap();
        let cp = control_points_with(&poly, OrientationSource::CenterLineNormal);
        assert!((cp.points()[0].y + 2.0).abs() < 1e-12);
        assert!((cp.points()[1].y - 2.0).abs() < 1e-12);
        assert!(cp.points()[0].x.abs() < 1e-12);
    }

    #[test]
    fn hausdorff_basics() {
        let a = [Point2::new(0.0, 0.0), Point2::new(10.0, 0.0)];
        let b = [Point2::new(0.0, 1.0), Point2::new(10.0, 1.0)];
        assert!((hausdorff_distance(&a, &b, 0.1) - 1.0).abs() < 1e-12);
        let c = [Point2::new(0.0, 0.0), Point2::new(12.0, 0.0)];
        assert!((hausdorff_distance(&a, &c, 0.1) - 2.0).abs() < 1e-12);
    }
}
