//! Compares control points built from the character orientation against
//! ones built from the center-line normal on increasingly tilted glyphs.

use std::error::Error;

use scrn::synth::{round_trip_error, CurveKind, CurveSpec};
use scrn::OrientationSource;

fn main() -> Result<(), Box<dyn Error>> {
    println!("{:>6} {:>12} {:>12}", "tilt", "character", "normal");
    for tilt in [0.0, 10.0, 15.0, 20.0, 30.0, 40.0] {
        let spec = CurveSpec::new(CurveKind::Arc { span_deg: 80.0 }, 8)
            .with_tilt(tilt)
            .with_seed(5);
        let (h, w) = spec.native_out_dims();
        let ours = round_trip_error(&spec, 10, h, w, OrientationSource::Character)?;
        let normal = round_trip_error(&spec, 10, h, w, OrientationSource::CenterLineNormal)?;
        println!("{tilt:>6.1} {ours:>12.4} {normal:>12.4}");
    }
    Ok(())
}
