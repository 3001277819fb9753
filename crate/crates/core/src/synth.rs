//! Deterministic pseudo-text on straight, circular and cubic Bezier
//! baselines, with exact character quads and an upright reference rendering
//! of the same glyphs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::font::{self, CHARSET};
use crate::geometry::{build_center_point_list, CharQuad, Orientation, OrientationSource, Point2, TextInstance};
use crate::image::ImageBuffer;
use crate::rectify::{bilinear_sample, rectify_with, RectifyParams};
use crate::tps::SamplingGrid;

/// Glyph bitmaps sit inside a cell of this many font pixels (one pixel of
/// margin on every side).
const CELL_COLS: f64 = (font::GLYPH_COLS + 2) as f64;
const CELL_ROWS: f64 = (font::GLYPH_ROWS + 2) as f64;
const BEZIER_TABLE: usize = 4096;
/// Fraction of each axis used when scoring a rectification.
pub const CENTRAL_FRACTION: f64 = 0.8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CurveKind {
    Straight,
    /// Circular arc turning through `span_deg`; positive bends like the top
    /// of a circle, negative like the bottom.
    Arc { span_deg: f64 },
    /// Cubic Bezier control polygon, in pixels. Only its shape matters: the
    /// rendered word is re-centered on the canvas.
    CubicBezier { controls: [Point2; 4] },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurveSpec {
    pub kind: CurveKind,
    pub char_height: f64,
    pub char_width: f64,
    pub char_count: usize,
    /// Lean of each glyph's vertical axis away from the curve normal, in
    /// degrees; positive tips the top forward.
    pub tilt_deg: f64,
    pub seed: u64,
}

impl CurveSpec {
    pub fn new(kind: CurveKind, char_count: usize) -> Self {
        Self {
            kind,
            char_height: 27.0,
            char_width: 21.0,
            char_count,
            tilt_deg: 0.0,
            seed: 0,
        }
    }

    pub fn with_char_size(mut self, width: f64, height: f64) -> Self {
        self.char_width = width;
        self.char_height = height;
        self
    }

    pub fn with_tilt(mut self, deg: f64) -> Self {
        self.tilt_deg = deg;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn run_length(&self) -> f64 {
        self.char_count as f64 * self.char_width
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidArgument(m));
        if !(self.char_height > 0.0 && self.char_height.is_finite())
            || !(self.char_width > 0.0 && self.char_width.is_finite())
        {
            return bad(format!(
                "character size must be positive, got {}x{}",
                self.char_width, self.char_height
            ));
        }
        if self.char_count == 0 {
            return bad("character count must be >= 1".into());
        }
        if !(-45.0..=45.0).contains(&self.tilt_deg) {
            return bad(format!("tilt {} is outside [-45, 45]", self.tilt_deg));
        }
        match self.kind {
            CurveKind::Straight => {}
            CurveKind::Arc { span_deg } => {
                if !span_deg.is_finite() || span_deg.abs() >= 360.0 {
                    return bad(format!("arc span {span_deg} must be in (-360, 360)"));
                }
            }
            CurveKind::CubicBezier { controls } => {
                if controls.iter().any(|p| !p.is_finite()) {
                    return bad("non-finite Bezier control point".into());
                }
                let len = Path::new(self)?.length;
                if len < self.run_length() {
                    return bad(format!(
                        "curve length {len:.2} is shorter than the glyph run {:.2}",
                        self.run_length()
                    ));
                }
            }
        }
        Ok(())
    }

    /// Glyph sequence drawn from the seed.
    pub fn glyphs(&self) -> String {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let chars: Vec<char> = CHARSET.chars().collect();
        (0..self.char_count)
            .map(|_| chars[rng.random_range(0..chars.len())])
            .collect()
    }

    /// Rectified raster size that maps one working pixel to one output
    /// pixel on a straight baseline.
    pub fn native_out_dims(&self) -> (usize, usize) {
        (
            self.char_height.round() as usize + 1,
            self.run_length().round() as usize + 1,
        )
    }
}

/// Arc-length parameterized baseline starting at the origin.
enum PathShape {
    Straight,
    Arc { start: f64, curvature: f64 },
    Bezier { controls: [Point2; 4], table: Vec<f64> },
}

struct Path {
    shape: PathShape,
    length: f64,
}

fn bezier_point(c: &[Point2; 4], t: f64) -> Point2 {
    let u = 1.0 - t;
    let (a, b, cc, d) = (u * u * u, 3.0 * u * u * t, 3.0 * u * t * t, t * t * t);
    Point2::new(
        a * c[0].x + b * c[1].x + cc * c[2].x + d * c[3].x,
        a * c[0].y + b * c[1].y + cc * c[2].y + d * c[3].y,
    )
}

fn bezier_tangent(c: &[Point2; 4], t: f64) -> (f64, f64) {
    let u = 1.0 - t;
    let (a, b, cc) = (3.0 * u * u, 6.0 * u * t, 3.0 * t * t);
    (
        a * (c[1].x - c[0].x) + b * (c[2].x - c[1].x) + cc * (c[3].x - c[2].x),
        a * (c[1].y - c[0].y) + b * (c[2].y - c[1].y) + cc * (c[3].y - c[2].y),
    )
}

impl Path {
    fn new(spec: &CurveSpec) -> Result<Path> {
        let run = spec.run_length();
        Ok(match spec.kind {
            CurveKind::Straight => Path {
                shape: PathShape::Straight,
                length: run,
            },
            CurveKind::Arc { span_deg: 0.0 } => Path {
                shape: PathShape::Straight,
                length: run,
            },
            CurveKind::Arc { span_deg } => {
                let span = span_deg.to_radians();
                Path {
                    shape: PathShape::Arc {
                        start: -0.5 * span,
                        curvature: span / run,
                    },
                    length: run,
                }
            }
            CurveKind::CubicBezier { controls } => {
                let c0 = controls[0];
                let controls = controls.map(|p| Point2::new(p.x - c0.x, p.y - c0.y));
                let mut table = Vec::with_capacity(BEZIER_TABLE + 1);
                table.push(0.0);
                let mut prev = bezier_point(&controls, 0.0);
                for i in 1..=BEZIER_TABLE {
                    let p = bezier_point(&controls, i as f64 / BEZIER_TABLE as f64);
                    table.push(table[i - 1] + prev.dist(p));
                    prev = p;
                }
                let length = table[BEZIER_TABLE];
                Path {
                    shape: PathShape::Bezier { controls, table },
                    length,
                }
            }
        })
    }

    /// Position and unit tangent at arc length `s`.
    fn frame(&self, s: f64) -> Result<(Point2, Orientation)> {
        match &self.shape {
            PathShape::Straight => Ok((Point2::new(s, 0.0), Orientation::RIGHT)),
            PathShape::Arc { start, curvature } => {
                let g = start + curvature * s;
                let p = Point2::new(
                    (g.sin() - start.sin()) / curvature,
                    -(g.cos() - start.cos()) / curvature,
                );
                Ok((p, Orientation { cos: g.cos(), sin: g.sin() }))
            }
            PathShape::Bezier { controls, table } => {
                let i = table
                    .partition_point(|&c| c <= s)
                    .clamp(1, BEZIER_TABLE);
                let seg = table[i] - table[i - 1];
                let u = if seg > 0.0 { (s - table[i - 1]) / seg } else { 0.0 };
                let t = (i as f64 - 1.0 + u) / BEZIER_TABLE as f64;
                let (dx, dy) = bezier_tangent(controls, t);
                let dir = Orientation::from_vector(dx, dy, 1e-12).ok_or_else(|| {
                    Error::InvalidArgument("Bezier curve has a cusp under a glyph".into())
                })?;
                Ok((bezier_point(controls, t), dir))
            }
        }
    }
}

/// Affine placement of one glyph cell.
#[derive(Debug, Clone, Copy)]
struct GlyphFrame {
    center: Point2,
    along: Orientation,
    down: Orientation,
    width: f64,
    height: f64,
    bitmap: &'static [u8; font::GLYPH_ROWS],
}

impl GlyphFrame {
    fn quad(&self) -> CharQuad {
        let (hw, hh) = (0.5 * self.width, 0.5 * self.height);
        let (t, n) = (self.along, self.down);
        let at = |a: f64, b: f64| {
            Point2::new(
                self.center.x + a * t.cos + b * n.cos,
                self.center.y + a * t.sin + b * n.sin,
            )
        };
        CharQuad::new(at(-hw, -hh), at(hw, -hh), at(hw, hh), at(-hw, hh))
    }

    fn translate(mut self, dx: f64, dy: f64) -> Self {
        self.center = Point2::new(self.center.x + dx, self.center.y + dy);
        self
    }

    fn inked(&self, q: Point2) -> bool {
        let (t, n) = (self.along, self.down);
        let (qx, qy) = (q.x - self.center.x, q.y - self.center.y);
        let det = t.cos * n.sin - t.sin * n.cos;
        let u = (qx * n.sin - qy * n.cos) / det;
        let v = (t.cos * qy - t.sin * qx) / det;
        let col = ((u / self.width + 0.5) * CELL_COLS).floor() - 1.0;
        let row = ((v / self.height + 0.5) * CELL_ROWS).floor() - 1.0;
        if col < 0.0 || row < 0.0 {
            return false;
        }
        font::ink(self.bitmap, row as usize, col as usize)
    }
}

/// White glyphs on black, averaged over a 2x2 supersampling pattern.
fn render(frames: &[GlyphFrame], height: usize, width: usize) -> ImageBuffer {
    let mut img = ImageBuffer::new(height, width, 1).expect("canvas dims checked by caller");
    let boxes: Vec<(f64, f64, f64, f64)> = frames
        .iter()
        .map(|f| {
            let q = f.quad();
            q.corners.iter().fold(
                (f64::MAX, f64::MIN, f64::MAX, f64::MIN),
                |(x0, x1, y0, y1), p| (x0.min(p.x), x1.max(p.x), y0.min(p.y), y1.max(p.y)),
            )
        })
        .collect();
    const OFFSETS: [(f64, f64); 4] = [(-0.25, -0.25), (0.25, -0.25), (-0.25, 0.25), (0.25, 0.25)];
    for r in 0..height {
        for c in 0..width {
            let mut hits = 0;
            for (ox, oy) in OFFSETS {
                let q = Point2::new(c as f64 + ox, r as f64 + oy);
                let inked = frames.iter().zip(&boxes).any(|(f, b)| {
                    q.x >= b.0 && q.x <= b.1 && q.y >= b.2 && q.y <= b.3 && f.inked(q)
                });
                hits += inked as u32;
            }
            if hits > 0 {
                img.set(r, c, 0, hits as f64 / 4.0);
            }
        }
    }
    img
}

#[derive(Debug, Clone, PartialEq)]
pub struct SynthSample {
    pub image: ImageBuffer,
    pub instance: TextInstance,
    /// The same glyphs upright on a horizontal baseline; the text band
    /// occupies `[0, m * char_width] x [0, char_height]`.
    pub straight_reference: ImageBuffer,
}

fn glyph_frames(spec: &CurveSpec) -> Result<Vec<GlyphFrame>> {
    let path = Path::new(spec)?;
    let start = 0.5 * (path.length - spec.run_length());
    let tilt = spec.tilt_deg.to_radians();
    spec.glyphs()
        .chars()
        .enumerate()
        .map(|(i, ch)| {
            let (center, along) = path.frame(start + (i as f64 + 0.5) * spec.char_width)?;
            let n = along.normal();
            let down = Orientation {
                cos: tilt.cos() * n.cos - tilt.sin() * along.cos,
                sin: tilt.cos() * n.sin - tilt.sin() * along.sin,
            };
            Ok(GlyphFrame {
                center,
                along,
                down,
                width: spec.char_width,
                height: spec.char_height,
                bitmap: font::glyph(ch).expect("glyphs come from the font charset"),
            })
        })
        .collect()
}

fn bounds(quads: impl Iterator<Item = CharQuad>) -> (f64, f64, f64, f64) {
    quads.flat_map(|q| q.corners).fold(
        (f64::MAX, f64::MIN, f64::MAX, f64::MIN),
        |(x0, x1, y0, y1), p| (x0.min(p.x), x1.max(p.x), y0.min(p.y), y1.max(p.y)),
    )
}

/// Smallest canvas holding the warped word with `margin` pixels of border.
pub fn fitting_canvas(spec: &CurveSpec, margin: usize) -> Result<(usize, usize)> {
    spec.validate()?;
    let frames = glyph_frames(spec)?;
    let (x0, x1, y0, y1) = bounds(frames.iter().map(GlyphFrame::quad));
    let m = 2 * margin + 1;
    Ok((
        (y1 - y0).ceil() as usize + m,
        (x1 - x0).ceil() as usize + m,
    ))
}

/// Renders the warped word centered on an `image_height x image_width`
/// canvas.
pub fn generate(spec: &CurveSpec, image_height: usize, image_width: usize) -> Result<SynthSample> {
    spec.validate()?;
    if image_height == 0 || image_width == 0 {
        return Err(Error::InvalidArgument("canvas dims must be >= 1".into()));
    }
    let frames = glyph_frames(spec)?;
    let (x0, x1, y0, y1) = bounds(frames.iter().map(GlyphFrame::quad));
    // the bounding box's top-left corner lands on a whole pixel, which keeps
    // a straight word pixel-aligned with its reference
    let dx = (0.5 * (image_width as f64 - 1.0 - (x1 - x0))).round() - x0;
    let dy = (0.5 * (image_height as f64 - 1.0 - (y1 - y0))).round() - y0;
    let frames: Vec<GlyphFrame> = frames.into_iter().map(|f| f.translate(dx, dy)).collect();

    let (w, h) = ((image_width - 1) as f64, (image_height - 1) as f64);
    let quads: Vec<CharQuad> = frames.iter().map(GlyphFrame::quad).collect();
    for (i, q) in quads.iter().enumerate() {
        if q
            .corners
            .iter()
            .any(|p| p.x < 0.0 || p.y < 0.0 || p.x > w || p.y > h)
        {
            return Err(Error::DoesNotFit(format!(
                "character {i} leaves the {image_height}x{image_width} canvas"
            )));
        }
    }

    let image = render(&frames, image_height, image_width);
    let straight_reference = render_reference(spec, &frames);
    let instance = TextInstance::new(quads).with_transcript(spec.glyphs());
    Ok(SynthSample {
        image,
        instance,
        straight_reference,
    })
}

fn render_reference(spec: &CurveSpec, warped: &[GlyphFrame]) -> ImageBuffer {
    let frames: Vec<GlyphFrame> = warped
        .iter()
        .enumerate()
        .map(|(i, f)| GlyphFrame {
            center: Point2::new((i as f64 + 0.5) * spec.char_width, 0.5 * spec.char_height),
            along: Orientation::RIGHT,
            down: Orientation::DOWN,
            ..*f
        })
        .collect();
    let h = spec.char_height.ceil() as usize + 1;
    let w = spec.run_length().ceil() as usize + 1;
    render(&frames, h, w)
}

/// The reference band resampled so that its corners land on the corners of
/// an `out_height x out_width` raster.
pub fn reference_at(spec: &CurveSpec, sample: &SynthSample, out_height: usize, out_width: usize) -> ImageBuffer {
    let sx = spec.run_length() / (out_width.max(2) - 1) as f64;
    let sy = spec.char_height / (out_height.max(2) - 1) as f64;
    let coords = (0..out_height)
        .flat_map(|r| (0..out_width).map(move |c| Point2::new(c as f64 * sx, r as f64 * sy)))
        .collect();
    let grid = SamplingGrid::from_coords(out_height, out_width, coords).expect("finite grid");
    bilinear_sample(&sample.straight_reference, &grid)
}

/// Rectifies a generated sample from its ground-truth quads and scores it
/// against the upright reference over the central region.
pub fn round_trip_error_of(
    spec: &CurveSpec,
    sample: &SynthSample,
    params: &RectifyParams,
) -> Result<f64> {
    let poly = build_center_point_list(&sample.instance)?;
    let rectified = rectify_with(&sample.image, &poly, params)?;
    let reference = reference_at(spec, sample, params.out_height, params.out_width);
    rectified.central_mae(&reference, CENTRAL_FRACTION)
}

/// Generates `spec` on a fitting canvas, rectifies it with `k` control
/// pairs into `out_height x out_width` and returns the central-region MAE.
pub fn round_trip_error(
    spec: &CurveSpec,
    k: usize,
    out_height: usize,
    out_width: usize,
    orientation: OrientationSource,
) -> Result<f64> {
    let (h, w) = fitting_canvas(spec, 8)?;
    let sample = generate(spec, h, w)?;
    let params = RectifyParams::new(out_height, out_width)
        .with_k(k)
        .with_orientation(orientation);
    round_trip_error_of(spec, &sample, &params)
}
