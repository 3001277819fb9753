//! Bilinear sampling and the full center-line driven rectification.

use crate::error::Result;
use crate::geometry::{control_points_with, resample_equidistant, CenterPolyline, OrientationSource};
use crate::image::ImageBuffer;
use crate::tps::{anchor_points, make_grid, tps_solve, SamplingGrid, DEFAULT_LAMBDA};

/// Number of resampled center points used to build the control points.
pub const DEFAULT_K: usize = 10;

/// Samples `src` at every grid position. Neighbors outside the image read
/// as zero.
pub fn bilinear_sample(src: &ImageBuffer, grid: &SamplingGrid) -> ImageBuffer {
    let (h, w, chans) = (src.height(), src.width(), src.channels());
    let mut out = ImageBuffer::new(grid.height(), grid.width(), chans)
        .expect("grid dims are validated at construction");
    let read = |r: i64, c: i64, ch: usize| -> f64 {
        if r < 0 || c < 0 || r >= h as i64 || c >= w as i64 {
            0.0
        } else {
            src.get(r as usize, c as usize, ch)
        }
    };
    for row in 0..grid.height() {
        for col in 0..grid.width() {
            let p = grid.get(row, col);
            let (x0, y0) = (p.x.floor(), p.y.floor());
            let (fx, fy) = (p.x - x0, p.y - y0);
            // far outside: skip the i64 conversion
            if x0 < -2.0 || y0 < -2.0 || x0 > w as f64 + 1.0 || y0 > h as f64 + 1.0 {
                continue;
            }
            let (c0, r0) = (x0 as i64, y0 as i64);
            for ch in 0..chans {
                let v = (1.0 - fx) * (1.0 - fy) * read(r0, c0, ch)
                    + fx * (1.0 - fy) * read(r0, c0 + 1, ch)
                    + (1.0 - fx) * fy * read(r0 + 1, c0, ch)
                    + fx * fy * read(r0 + 1, c0 + 1, ch);
                out.set(row, col, ch, v);
            }
        }
    }
    out
}

/// Parameters of one rectification call.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RectifyParams {
    pub k: usize,
    pub out_height: usize,
    pub out_width: usize,
    pub lambda: f64,
    pub orientation: OrientationSource,
}

impl RectifyParams {
    pub fn new(out_height: usize, out_width: usize) -> Self {
        Self {
            k: DEFAULT_K,
            out_height,
            out_width,
            lambda: DEFAULT_LAMBDA,
            orientation: OrientationSource::Character,
        }
    }

    pub fn with_k(mut self, k: usize) -> Self {
        self.k = k;
        self
    }

    pub fn with_lambda(mut self, lambda: f64) -> Self {
        self.lambda = lambda;
        self
    }

    pub fn with_orientation(mut self, orientation: OrientationSource) -> Self {
        self.orientation = orientation;
        self
    }
}

/// Source-space sampling grid for the rectified raster.
pub fn rectification_grid(polyline: &CenterPolyline, params: &RectifyParams) -> Result<SamplingGrid> {
    let resampled = resample_equidistant(polyline, params.k)?;
    let fiducials = control_points_with(&resampled, params.orientation);
    let anchors = anchor_points(params.k, params.out_width, params.out_height)?;
    let transform = tps_solve(&anchors, &fiducials, params.lambda)?;
    make_grid(&transform, params.out_height, params.out_width)
}

pub fn rectify_with(
    src: &ImageBuffer,
    polyline: &CenterPolyline,
    params: &RectifyParams,
) -> Result<ImageBuffer> {
    let grid = rectification_grid(polyline, params)?;
    Ok(bilinear_sample(src, &grid))
}

/// Warps the text band around `polyline` onto an upright
/// `out_height x out_width` raster.
pub fn rectify(
    src: &ImageBuffer,
    polyline: &CenterPolyline,
    k: usize,
    out_height: usize,
    out_width: usize,
    lambda: f64,
) -> Result<ImageBuffer> {
    let params = RectifyParams::new(out_height, out_width)
        .with_k(k)
        .with_lambda(lambda);
    rectify_with(src, polyline, &params)
}
