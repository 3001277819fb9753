//! Symmetry-constrained text rectification.
//!
//! A word is described by its text center line together with a scale and
//! two orientations at every center point. Control points placed
//! symmetrically about the center line drive a thin-plate-spline warp that
//! straightens the word into an upright raster.
//!
//! The crate covers the geometry ([`geometry`]), dense attribute maps and
//! center-line tracing ([`field`]), the TPS warp and sampling ([`tps`],
//! [`rectify`]), training objectives ([`losses`]), a synthetic curved-text
//! generator ([`synth`]), file formats ([`io`]) and the `scrn` command line
//! ([`cli`]).

// `!(x <= limit)` is how NaN gets rejected throughout.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod eval;
pub mod field;
pub mod font;
pub mod geometry;
pub mod image;
pub mod io;
pub mod losses;
pub mod rectify;
pub mod synth;
pub mod tps;

pub use error::{Error, Result};
pub use field::{
    extract_center_line, normalize_orientations, render_gt_maps, AttributeMaps, TclMask,
};
pub use geometry::{
    build_center_point_list, control_points, interpolate_attributes, resample_equidistant,
    CenterPolyline, CharQuad, ControlPoints, GeoSample, Orientation, OrientationSource, Point2,
    TextInstance,
};
pub use image::ImageBuffer;
pub use rectify::{bilinear_sample, rectify, rectify_with, RectifyParams, DEFAULT_K};
pub use tps::{anchor_points, make_grid, tps_apply, tps_solve, SamplingGrid, TpsTransform};
