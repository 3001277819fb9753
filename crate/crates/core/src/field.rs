//! Dense six-channel attribute maps over a downsampled grid.
//!
//! Channel order: TCL probability, scale (map pixels), cos/sin of the text
//! orientation, cos/sin of the character orientation. Map pixel `(c, r)`
//! corresponds to working-image point `(c * d, r * d)`.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::geometry::{
    build_center_point_list, interpolate_attributes, project_on_segment, CenterPolyline, GeoSample,
    Orientation, Point2, TextInstance,
};

pub const TCL: usize = 0;
pub const SCALE: usize = 1;
pub const COS_THETA: usize = 2;
pub const SIN_THETA: usize = 3;
pub const COS_PHI: usize = 4;
pub const SIN_PHI: usize = 5;
pub const NUM_CHANNELS: usize = 6;

pub const DEFAULT_THRESHOLD: f64 = 0.5;
pub const DEFAULT_DOWNSAMPLE: usize = 4;

/// Longest trace in either direction from the seed.
pub const MAX_STRIDES: usize = 64;
/// Sampling step used when marching to the mask boundary.
const CENTRALIZE_STEP: f64 = 0.25;
const NORM_EPS: f64 = 1e-6;
/// One pixel of dilation plus the half pixel covered by the last member.
const END_OVERHANG: f64 = 1.5;

#[derive(Debug, Clone, PartialEq)]
pub struct AttributeMaps {
    height: usize,
    width: usize,
    downsample: usize,
    channels: [Vec<f64>; NUM_CHANNELS],
}

impl AttributeMaps {
    pub fn zeros(height: usize, width: usize, downsample: usize) -> Result<Self> {
        if height == 0 || width == 0 || downsample == 0 {
            return Err(Error::InvalidArgument(format!(
                "map dims and downsample must be >= 1, got {height}x{width}, d={downsample}"
            )));
        }
        Ok(Self {
            height,
            width,
            downsample,
            channels: std::array::from_fn(|_| vec![0.0; height * width]),
        })
    }

    pub fn from_channels(
        height: usize,
        width: usize,
        downsample: usize,
        channels: [Vec<f64>; NUM_CHANNELS],
    ) -> Result<Self> {
        let mut maps = Self::zeros(height, width, downsample)?;
        for (i, ch) in channels.iter().enumerate() {
            if ch.len() != height * width {
                return Err(Error::ShapeMismatch(format!(
                    "channel {} has {} values, expected {}",
                    i + 1,
                    ch.len(),
                    height * width
                )));
            }
        }
        maps.channels = channels;
        Ok(maps)
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn downsample(&self) -> usize {
        self.downsample
    }

    pub fn channel(&self, ch: usize) -> &[f64] {
        &self.channels[ch]
    }

    pub fn channel_mut(&mut self, ch: usize) -> &mut [f64] {
        &mut self.channels[ch]
    }

    pub fn channels(&self) -> &[Vec<f64>; NUM_CHANNELS] {
        &self.channels
    }

    #[inline]
    pub fn get(&self, ch: usize, row: usize, col: usize) -> f64 {
        self.channels[ch][row * self.width + col]
    }

    #[inline]
    pub fn set(&mut self, ch: usize, row: usize, col: usize, v: f64) {
        self.channels[ch][row * self.width + col] = v;
    }

    /// All six values at one pixel.
    pub fn pixel(&self, row: usize, col: usize) -> [f64; NUM_CHANNELS] {
        std::array::from_fn(|ch| self.get(ch, row, col))
    }

    pub fn set_pixel(&mut self, row: usize, col: usize, values: [f64; NUM_CHANNELS]) {
        for (ch, v) in values.into_iter().enumerate() {
            self.set(ch, row, col, v);
        }
    }

    pub fn same_shape(&self, other: &AttributeMaps) -> bool {
        self.height == other.height && self.width == other.width
    }

    pub fn tcl_mask(&self, threshold: f64) -> TclMask {
        TclMask {
            height: self.height,
            width: self.width,
            data: self.channels[TCL].iter().map(|&p| p >= threshold).collect(),
        }
    }

    /// Checks the documented invariants: `f1` in `[0, 1]`, and on pixels with
    /// `f1 >= 0.5` unit orientation pairs (to `tol`) and positive scale.
    pub fn check_invariants(&self, tol: f64) -> Result<()> {
        for r in 0..self.height {
            for c in 0..self.width {
                let p = self.pixel(r, c);
                if !(0.0..=1.0).contains(&p[TCL]) {
                    return Err(Error::InvalidArgument(format!(
                        "f1 = {} at ({r}, {c}) is not a probability",
                        p[TCL]
                    )));
                }
                if p[TCL] >= 0.5 {
                    let nt = (p[COS_THETA].powi(2) + p[SIN_THETA].powi(2) - 1.0).abs();
                    let np = (p[COS_PHI].powi(2) + p[SIN_PHI].powi(2) - 1.0).abs();
                    if nt > tol || np > tol || !(p[SCALE] > 0.0) {
                        return Err(Error::InvalidArgument(format!(
                            "TCL pixel ({r}, {c}) has invalid attributes {p:?}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Boolean TCL membership per map pixel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TclMask {
    height: usize,
    width: usize,
    data: Vec<bool>,
}

impl TclMask {
    pub fn new(height: usize, width: usize, data: Vec<bool>) -> Result<Self> {
        if data.len() != height * width {
            return Err(Error::ShapeMismatch(format!(
                "mask of {height}x{width} needs {} cells, got {}",
                height * width,
                data.len()
            )));
        }
        Ok(Self {
            height,
            width,
            data,
        })
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn data(&self) -> &[bool] {
        &self.data
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        self.data[row * self.width + col]
    }

    pub fn count(&self) -> usize {
        self.data.iter().filter(|&&b| b).count()
    }
}

/// Integer points of an 8-connected line between two pixels.
fn bresenham(a: (i64, i64), b: (i64, i64)) -> Vec<(i64, i64)> {
    let (mut x, mut y) = a;
    let dx = (b.0 - a.0).abs();
    let dy = -(b.1 - a.1).abs();
    let sx = if a.0 < b.0 { 1 } else { -1 };
    let sy = if a.1 < b.1 { 1 } else { -1 };
    let mut err = dx + dy;
    let mut out = Vec::with_capacity((dx - dy + 1) as usize);
    loop {
        out.push((x, y));
        if (x, y) == b {
            break;
        }
        let e2 = 2 * err;
        if e2 >= dy {
            err += dy;
            x += sx;
        }
        if e2 <= dx {
            err += dx;
            y += sy;
        }
    }
    out
}

fn attribute_values(g: &GeoSample, downsample: f64) -> [f64; NUM_CHANNELS] {
    [
        1.0,
        g.scale / downsample,
        g.theta.cos,
        g.theta.sin,
        g.phi.cos,
        g.phi.sin,
    ]
}

/// Arc-length fraction of the point of `line` closest to `p`.
fn project_fraction(p: Point2, line: &[Point2]) -> f64 {
    let mut best = (f64::INFINITY, 0.0);
    let mut acc = 0.0;
    for w in line.windows(2) {
        let len = w[0].dist(w[1]);
        let (d, u) = project_on_segment(p, w[0], w[1]);
        if d < best.0 {
            best = (d, acc + u * len);
        }
        acc += len;
    }
    (best.1 / acc).clamp(0.0, 1.0)
}

/// Renders ground-truth attribute maps for a set of word instances.
///
/// The TCL is drawn as an 8-connected line through the downsampled centers,
/// attributes are taken from the polyline at each pixel's projection, and
/// the result is dilated by one pixel with dilated pixels copying the
/// nearest original TCL pixel. Later instances overwrite earlier ones.
pub fn render_gt_maps(
    instances: &[TextInstance],
    map_height: usize,
    map_width: usize,
    downsample: usize,
) -> Result<AttributeMaps> {
    let mut maps = AttributeMaps::zeros(map_height, map_width, downsample)?;
    let d = downsample as f64;
    for inst in instances {
        let poly = build_center_point_list(inst)?;
        let pts: Vec<Point2> = poly
            .centers()
            .iter()
            .map(|p| Point2::new(p.x / d, p.y / d))
            .collect();
        let mut grid_pts = Vec::with_capacity(pts.len());
        for p in &pts {
            let (c, r) = (p.x.round(), p.y.round());
            if c < 0.0 || r < 0.0 || c >= map_width as f64 || r >= map_height as f64 {
                return Err(Error::OutOfBounds {
                    x: p.x,
                    y: p.y,
                    width: map_width,
                    height: map_height,
                });
            }
            grid_pts.push((c as i64, r as i64));
        }

        let mut on_line = vec![false; map_height * map_width];
        let mut line_pixels: Vec<(usize, usize)> = Vec::new();
        for w in grid_pts.windows(2) {
            for (x, y) in bresenham(w[0], w[1]) {
                let idx = y as usize * map_width + x as usize;
                if !on_line[idx] {
                    on_line[idx] = true;
                    line_pixels.push((y as usize, x as usize));
                }
            }
        }

        let mut values = Vec::with_capacity(line_pixels.len());
        for &(r, c) in &line_pixels {
            let t = project_fraction(Point2::new(c as f64, r as f64), &pts);
            values.push(attribute_values(&interpolate_attributes(&poly, t)?, d));
        }

        for (&(r, c), v) in line_pixels.iter().zip(&values) {
            maps.set_pixel(r, c, *v);
        }

        // one-pixel expansion; ties go to the earliest line pixel
        let mut expanded = vec![false; map_height * map_width];
        for &(r, c) in &line_pixels {
            for (nr, nc) in neighbors8(r, c, map_height, map_width) {
                let idx = nr * map_width + nc;
                if on_line[idx] || expanded[idx] {
                    continue;
                }
                expanded[idx] = true;
                let nearest = line_pixels
                    .iter()
                    .enumerate()
                    .min_by(|(ia, a), (ib, b)| {
                        let da = sq_dist((nr, nc), **a);
                        let db = sq_dist((nr, nc), **b);
                        da.cmp(&db).then(ia.cmp(ib))
                    })
                    .map(|(i, _)| i)
                    .unwrap();
                maps.set_pixel(nr, nc, values[nearest]);
            }
        }
    }
    Ok(maps)
}

fn sq_dist(a: (usize, usize), b: (usize, usize)) -> usize {
    let dr = a.0.abs_diff(b.0);
    let dc = a.1.abs_diff(b.1);
    dr * dr + dc * dc
}

fn neighbors8(
    r: usize,
    c: usize,
    height: usize,
    width: usize,
) -> impl Iterator<Item = (usize, usize)> {
    (-1i64..=1)
        .flat_map(|dr| (-1i64..=1).map(move |dc| (dr, dc)))
        .filter(|&d| d != (0, 0))
        .filter_map(move |(dr, dc)| {
            let nr = r as i64 + dr;
            let nc = c as i64 + dc;
            (nr >= 0 && nc >= 0 && nr < height as i64 && nc < width as i64)
                .then_some((nr as usize, nc as usize))
        })
}

/// Pixels whose orientation pair was too small to normalize.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DegeneratePixels {
    pub theta: Vec<(usize, usize)>,
    pub phi: Vec<(usize, usize)>,
}

impl DegeneratePixels {
    pub fn is_empty(&self) -> bool {
        self.theta.is_empty() && self.phi.is_empty()
    }
}

/// Projects both orientation pairs onto the unit circle.
pub fn normalize_orientations(maps: &AttributeMaps) -> AttributeMaps {
    normalize_orientations_flagged(maps).0
}

/// Like [`normalize_orientations`], also reporting degenerate pixels. Those
/// are set to `(1, 0)` for the text orientation and `(0, 1)` for the
/// character orientation.
pub fn normalize_orientations_flagged(maps: &AttributeMaps) -> (AttributeMaps, DegeneratePixels) {
    let mut out = maps.clone();
    let mut flagged = DegeneratePixels::default();
    for r in 0..maps.height {
        for c in 0..maps.width {
            let pairs = [
                (COS_THETA, SIN_THETA, Orientation::RIGHT, &mut flagged.theta),
                (COS_PHI, SIN_PHI, Orientation::DOWN, &mut flagged.phi),
            ];
            for (ic, is, fallback, flags) in pairs {
                let (x, y) = (maps.get(ic, r, c), maps.get(is, r, c));
                let n = (x * x + y * y).sqrt();
                let (nx, ny) = if n.is_finite() && n >= NORM_EPS {
                    (x / n, y / n)
                } else {
                    flags.push((r, c));
                    (fallback.cos, fallback.sin)
                };
                out.set(ic, r, c, nx);
                out.set(is, r, c, ny);
            }
        }
    }
    (out, flagged)
}

/// Largest 8-connected component of the mask; ties go to the component
/// found first in raster order.
fn largest_component(mask: &TclMask) -> Vec<bool> {
    let (h, w) = (mask.height, mask.width);
    let mut label = vec![usize::MAX; h * w];
    let mut best: Option<(usize, usize)> = None; // (label, size)
    let mut next = 0;
    for start in 0..h * w {
        if !mask.data[start] || label[start] != usize::MAX {
            continue;
        }
        let mut size = 0;
        let mut queue = VecDeque::from([start]);
        label[start] = next;
        while let Some(idx) = queue.pop_front() {
            size += 1;
            for (nr, nc) in neighbors8(idx / w, idx % w, h, w) {
                let n = nr * w + nc;
                if mask.data[n] && label[n] == usize::MAX {
                    label[n] = next;
                    queue.push_back(n);
                }
            }
        }
        if best.is_none_or(|(_, s)| size > s) {
            best = Some((next, size));
        }
        next += 1;
    }
    match best {
        Some((l, _)) => label.iter().map(|&x| x == l).collect(),
        None => vec![false; h * w],
    }
}

/// Center-line tracer over one mask component.
struct Tracer<'a> {
    maps: &'a AttributeMaps,
    component: Vec<bool>,
}

#[derive(Debug, Clone, Copy)]
struct Attrs {
    scale: f64,
    theta: Orientation,
    phi: Orientation,
}

impl Tracer<'_> {
    fn inside(&self, p: Point2) -> bool {
        let (c, r) = (p.x.round(), p.y.round());
        if !(c >= 0.0 && r >= 0.0 && c < self.maps.width as f64 && r < self.maps.height as f64) {
            return false;
        }
        self.component[r as usize * self.maps.width + c as usize]
    }

    /// Bilinear read of the attribute channels restricted to component
    /// pixels, with weights renormalized over the pixels that count.
    fn attrs(&self, p: Point2) -> Option<Attrs> {
        let (w, h) = (self.maps.width as i64, self.maps.height as i64);
        let (x0, y0) = (p.x.floor(), p.y.floor());
        let (fx, fy) = (p.x - x0, p.y - y0);
        let mut acc = [0.0; NUM_CHANNELS];
        let mut wsum = 0.0;
        for (dx, dy, wt) in [
            (0, 0, (1.0 - fx) * (1.0 - fy)),
            (1, 0, fx * (1.0 - fy)),
            (0, 1, (1.0 - fx) * fy),
            (1, 1, fx * fy),
        ] {
            let (c, r) = (x0 as i64 + dx, y0 as i64 + dy);
            if wt <= 0.0 || c < 0 || r < 0 || c >= w || r >= h {
                continue;
            }
            let (r, c) = (r as usize, c as usize);
            if !self.component[r * self.maps.width + c] {
                continue;
            }
            wsum += wt;
            for (ch, a) in acc.iter_mut().enumerate() {
                *a += wt * self.maps.get(ch, r, c);
            }
        }
        if wsum <= 0.0 {
            if !self.inside(p) {
                return None;
            }
            acc = self.maps.pixel(p.y.round() as usize, p.x.round() as usize);
            wsum = 1.0;
        }
        let scale = acc[SCALE] / wsum;
        let theta = Orientation::from_vector(acc[COS_THETA], acc[SIN_THETA], NORM_EPS)?;
        let phi = Orientation::from_vector(acc[COS_PHI], acc[SIN_PHI], NORM_EPS)?;
        (scale > 0.0).then_some(Attrs { scale, theta, phi })
    }

    /// Moves `p` to the middle of the mask along the local normal. Test
    /// points sit at half-step offsets so the result is symmetric with
    /// respect to pixel boundaries.
    fn centralize(&self, p: Point2) -> Point2 {
        let Some(a) = self.attrs(p) else {
            return p;
        };
        let n = a.theta.normal();
        let limit = 4.0 * a.scale.max(1.0);
        let reach = |sign: f64| -> Option<f64> {
            let mut last = 0.0;
            let mut j = 0;
            loop {
                let dist = (j as f64 + 0.5) * CENTRALIZE_STEP;
                if dist > limit {
                    return None;
                }
                if !self.inside(p.offset(n.cos, n.sin, sign * dist)) {
                    return Some(last);
                }
                last = dist;
                j += 1;
            }
        };
        match (reach(1.0), reach(-1.0)) {
            (Some(plus), Some(minus)) => p.offset(n.cos, n.sin, 0.5 * (plus - minus)),
            _ => p,
        }
    }

    /// Partial stride toward the end of the region. The region extends
    /// `END_OVERHANG` pixels past the end of the center line it was drawn
    /// from, so strides stop that far short of its edge.
    fn last_stride(&self, p: Point2, dir: Orientation, step: f64) -> Option<Point2> {
        let mut last = 0.0;
        let mut dist = CENTRALIZE_STEP;
        while dist < step + END_OVERHANG && self.inside(p.offset(dir.cos, dir.sin, dist)) {
            last = dist;
            dist += CENTRALIZE_STEP;
        }
        let reach = last - END_OVERHANG;
        if reach <= CENTRALIZE_STEP {
            return None;
        }
        let q = self.centralize(p.offset(dir.cos, dir.sin, reach));
        self.inside(q).then_some(q)
    }

    /// Strides from `seed` along `sign * theta` until leaving the mask.
    fn trace(&self, seed: Point2, sign: f64) -> Vec<Point2> {
        let mut out = Vec::new();
        let Some(a0) = self.attrs(seed) else {
            return out;
        };
        let mut heading = if sign > 0.0 { a0.theta } else { a0.theta.reversed() };
        let mut p = seed;
        for _ in 0..MAX_STRIDES {
            let Some(a) = self.attrs(p) else { break };
            let mut dir = a.theta;
            if dir.dot(heading) < 0.0 {
                dir = dir.reversed();
            }
            let step = (0.5 * a.scale).max(1.0);
            let q = p.offset(dir.cos, dir.sin, step);
            let q = if self.inside(q) { self.centralize(q) } else { q };
            let ahead = self.attrs(q).map_or(dir, |b| {
                if b.theta.dot(dir) < 0.0 {
                    b.theta.reversed()
                } else {
                    b.theta
                }
            });
            if !self.inside(q) || !self.inside(q.offset(ahead.cos, ahead.sin, END_OVERHANG)) {
                if let Some(end) = self.last_stride(p, dir, step) {
                    out.push(end);
                }
                break;
            }
            out.push(q);
            heading = dir;
            p = q;
        }
        out
    }
}

/// Traces the center line of the dominant text region in `maps`.
///
/// Returned centers and scales are in working-image units.
pub fn extract_center_line(maps: &AttributeMaps, threshold: f64) -> Result<CenterPolyline> {
    if !(threshold > 0.0 && threshold < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "threshold {threshold} is not in (0, 1)"
        )));
    }
    let mask = maps.tcl_mask(threshold);
    if mask.count() == 0 {
        return Err(Error::NoText);
    }
    let component = largest_component(&mask);
    let (h, w) = (maps.height, maps.width);

    let members: Vec<(usize, usize)> = (0..h * w)
        .filter(|&i| component[i])
        .map(|i| (i / w, i % w))
        .collect();
    let n = members.len() as f64;
    let cy = members.iter().map(|m| m.0 as f64).sum::<f64>() / n;
    let cx = members.iter().map(|m| m.1 as f64).sum::<f64>() / n;
    let seed_px = members
        .iter()
        .min_by(|a, b| {
            let da = (a.0 as f64 - cy).powi(2) + (a.1 as f64 - cx).powi(2);
            let db = (b.0 as f64 - cy).powi(2) + (b.1 as f64 - cx).powi(2);
            da.total_cmp(&db)
        })
        .copied()
        .unwrap();

    let tracer = Tracer { maps, component };
    let mut seed = Point2::new(seed_px.1 as f64, seed_px.0 as f64);
    let centered = tracer.centralize(seed);
    if tracer.inside(centered) {
        seed = centered;
    }

    let mut points: Vec<Point2> = tracer.trace(seed, -1.0).into_iter().rev().collect();
    points.push(seed);
    points.extend(tracer.trace(seed, 1.0));

    let d = maps.downsample as f64;
    let mut samples: Vec<GeoSample> = Vec::with_capacity(points.len());
    for p in points {
        let Some(a) = tracer.attrs(p) else { continue };
        let center = Point2::new(p.x * d, p.y * d);
        if samples
            .last()
            .is_some_and(|s| s.center.dist(center) <= 1e-6)
        {
            continue;
        }
        samples.push(GeoSample {
            center,
            scale: a.scale * d,
            theta: a.theta,
            phi: a.phi,
        });
    }
    if samples.len() < 2 {
        return Err(Error::TooShort(samples.len()));
    }
    CenterPolyline::new(samples)
}
