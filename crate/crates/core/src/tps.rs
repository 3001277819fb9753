//! Thin-plate-spline transforms between the rectified raster and the source
//! image, plus the border anchors they are fitted against.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::geometry::{ControlPoints, Point2};

pub const DEFAULT_LAMBDA: f64 = 1e-6;

/// Relative pivot magnitude below which the system counts as singular.
const PIVOT_RTOL: f64 = 1e-13;

/// `r^2 log r^2` written in terms of `r^2`, with `U(0) = 0`.
#[inline]
pub fn tps_kernel(r2: f64) -> f64 {
    if r2 == 0.0 {
        0.0
    } else {
        r2 * r2.ln()
    }
}

/// `k` anchors evenly spaced on the top row and `k` on the bottom row,
/// interleaved as `(top_j, bottom_j)`.
pub fn anchor_points(k: usize, out_width: usize, out_height: usize) -> Result<ControlPoints> {
    if k < 2 {
        return Err(Error::InvalidK(k));
    }
    if out_width < 2 || out_height < 2 {
        return Err(Error::InvalidArgument(format!(
            "rectified raster must be at least 2x2, got {out_height}x{out_width}"
        )));
    }
    let span = (out_width - 1) as f64;
    let bottom = (out_height - 1) as f64;
    let mut pts = Vec::with_capacity(2 * k);
    for j in 0..k {
        let x = j as f64 * span / (k - 1) as f64;
        pts.push(Point2::new(x, 0.0));
        pts.push(Point2::new(x, bottom));
    }
    ControlPoints::from_points(pts)
}

/// Fitted mapping from rectified coordinates to source coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct TpsTransform {
    sites: Vec<Point2>,
    /// One `(wx, wy)` pair per site.
    kernel_weights: Vec<[f64; 2]>,
    /// Rows: constant, x, y; columns: output x, output y.
    affine: [[f64; 2]; 3],
    regularization: f64,
}

impl TpsTransform {
    pub fn sites(&self) -> &[Point2] {
        &self.sites
    }

    pub fn kernel_weights(&self) -> &[[f64; 2]] {
        &self.kernel_weights
    }

    pub fn affine_weights(&self) -> &[[f64; 2]; 3] {
        &self.affine
    }

    pub fn regularization(&self) -> f64 {
        self.regularization
    }

    pub fn max_kernel_weight(&self) -> f64 {
        self.kernel_weights
            .iter()
            .flat_map(|w| w.iter())
            .fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Largest violation of `sum w = 0`, `sum w x = 0`, `sum w y = 0`.
    pub fn side_condition_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for axis in 0..2 {
            let (mut s, mut sx, mut sy) = (0.0, 0.0, 0.0);
            for (w, p) in self.kernel_weights.iter().zip(&self.sites) {
                s += w[axis];
                sx += w[axis] * p.x;
                sy += w[axis] * p.y;
            }
            worst = worst.max(s.abs()).max(sx.abs()).max(sy.abs());
        }
        worst
    }

    pub fn apply(&self, p: Point2) -> Point2 {
        let a = &self.affine;
        let mut x = a[0][0] + a[1][0] * p.x + a[2][0] * p.y;
        let mut y = a[0][1] + a[1][1] * p.x + a[2][1] * p.y;
        for (w, s) in self.kernel_weights.iter().zip(&self.sites) {
            let (dx, dy) = (p.x - s.x, p.y - s.y);
            let u = tps_kernel(dx * dx + dy * dy);
            x += w[0] * u;
            y += w[1] * u;
        }
        Point2::new(x, y)
    }
}

pub fn tps_apply(t: &TpsTransform, p: Point2) -> Point2 {
    t.apply(p)
}

/// Twice the area of the largest triangle spanned by the points, relative
/// to the squared extent; zero for collinear sets.
fn collinearity(points: &[Point2]) -> f64 {
    let n = points.len();
    let (mut minx, mut maxx, mut miny, mut maxy) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for p in points {
        minx = minx.min(p.x);
        maxx = maxx.max(p.x);
        miny = miny.min(p.y);
        maxy = maxy.max(p.y);
    }
    let extent2 = (maxx - minx).powi(2) + (maxy - miny).powi(2);
    if extent2 == 0.0 {
        return 0.0;
    }
    // farthest pair, then the point farthest from their line
    let (mut a, mut b, mut best) = (0, 0, -1.0);
    for i in 0..n {
        for j in i + 1..n {
            let d = points[i].dist(points[j]);
            if d > best {
                (a, b, best) = (i, j, d);
            }
        }
    }
    let (pa, pb) = (points[a], points[b]);
    points
        .iter()
        .map(|p| ((pb.x - pa.x) * (p.y - pa.y) - (pb.y - pa.y) * (p.x - pa.x)).abs())
        .fold(0.0, f64::max)
        / extent2
}

/// Solves the thin-plate-spline interpolation system with sites at the
/// anchors (rectified space) and targets at the fiducials (source space).
///
/// `regularization` is added to the kernel-block diagonal; zero gives exact
/// interpolation.
pub fn tps_solve(
    anchors: &ControlPoints,
    fiducials: &ControlPoints,
    regularization: f64,
) -> Result<TpsTransform> {
    let sites = anchors.points();
    let targets = fiducials.points();
    if sites.len() != targets.len() {
        return Err(Error::LengthMismatch {
            anchors: sites.len(),
            fiducials: targets.len(),
        });
    }
    if sites.len() < 3 {
        return Err(Error::SingularSystem("fewer than three sites"));
    }
    if !(regularization >= 0.0 && regularization.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "regularization must be a finite non-negative number, got {regularization}"
        )));
    }
    if sites.iter().chain(targets).any(|p| !p.is_finite()) {
        return Err(Error::InvalidArgument("non-finite control point".into()));
    }
    if collinearity(sites) < 1e-12 {
        return Err(Error::SingularSystem("anchors are collinear"));
    }

    let n = sites.len();
    let dim = n + 3;
    let mut l = DMatrix::<f64>::zeros(dim, dim);
    for i in 0..n {
        for j in 0..n {
            let (dx, dy) = (sites[i].x - sites[j].x, sites[i].y - sites[j].y);
            l[(i, j)] = tps_kernel(dx * dx + dy * dy);
        }
        l[(i, i)] += regularization;
        let row = [1.0, sites[i].x, sites[i].y];
        for (c, v) in row.into_iter().enumerate() {
            l[(i, n + c)] = v;
            l[(n + c, i)] = v;
        }
    }

    let lu = l.lu();
    let pivots = lu.u().diagonal();
    let max_pivot = pivots.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let min_pivot = pivots.iter().fold(f64::INFINITY, |m, v| m.min(v.abs()));
    if !(min_pivot > PIVOT_RTOL * max_pivot) {
        return Err(Error::SingularSystem("rank-deficient TPS system"));
    }

    let solve_axis = |f: fn(&Point2) -> f64| -> Result<DVector<f64>> {
        let mut rhs = DVector::<f64>::zeros(dim);
        for (i, t) in targets.iter().enumerate() {
            rhs[i] = f(t);
        }
        let sol = lu
            .solve(&rhs)
            .ok_or(Error::SingularSystem("LU solve failed"))?;
        if sol.iter().any(|v| !v.is_finite()) {
            return Err(Error::SingularSystem("non-finite solution"));
        }
        Ok(sol)
    };
    let sx = solve_axis(|p| p.x)?;
    let sy = solve_axis(|p| p.y)?;

    Ok(TpsTransform {
        sites: sites.to_vec(),
        kernel_weights: (0..n).map(|i| [sx[i], sy[i]]).collect(),
        affine: [
            [sx[n], sy[n]],
            [sx[n + 1], sy[n + 1]],
            [sx[n + 2], sy[n + 2]],
        ],
        regularization,
    })
}

/// Source-space sampling position for every rectified pixel.
#[derive(Debug, Clone, PartialEq)]
pub struct SamplingGrid {
    height: usize,
    width: usize,
    coords: Vec<Point2>,
}

impl SamplingGrid {
    pub fn from_coords(height: usize, width: usize, coords: Vec<Point2>) -> Result<Self> {
        if height == 0 || width == 0 || coords.len() != height * width {
            return Err(Error::ShapeMismatch(format!(
                "grid {height}x{width} with {} coordinates",
                coords.len()
            )));
        }
        if coords.iter().any(|p| !p.is_finite()) {
            return Err(Error::InvalidArgument("non-finite grid coordinate".into()));
        }
        Ok(Self {
            height,
            width,
            coords,
        })
    }

    /// The grid that samples every pixel at its own location.
    pub fn identity(height: usize, width: usize) -> Self {
        let coords = (0..height)
            .flat_map(|r| (0..width).map(move |c| Point2::new(c as f64, r as f64)))
            .collect();
        Self {
            height,
            width,
            coords,
        }
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn get(&self, row: usize, col: usize) -> Point2 {
        self.coords[row * self.width + col]
    }

    pub fn coords(&self) -> &[Point2] {
        &self.coords
    }
}

pub fn make_grid(t: &TpsTransform, out_height: usize, out_width: usize) -> Result<SamplingGrid> {
    if out_height == 0 || out_width == 0 {
        return Err(Error::InvalidArgument("grid dims must be >= 1".into()));
    }
    let coords = (0..out_height)
        .flat_map(|r| (0..out_width).map(move |c| t.apply(Point2::new(c as f64, r as f64))))
        .collect();
    SamplingGrid::from_coords(out_height, out_width, coords)
}
