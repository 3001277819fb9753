//! Generates curved words, rectifies them from their character quads and
//! writes the warped input, the rectified output and the reference as PNGs.
//!
//! Usage: `cargo run --example rectify_synthetic [out_dir]`

use std::error::Error;
use std::path::PathBuf;

use scrn::io::write_image;
use scrn::synth::{fitting_canvas, generate, reference_at, round_trip_error_of, CurveKind, CurveSpec};
use scrn::{build_center_point_list, rectify_with, RectifyParams};

fn main() -> Result<(), Box<dyn Error>> {
    let out_dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("scrn-rectify"));
    std::fs::create_dir_all(&out_dir)?;

    let specs = [
        ("straight", CurveSpec::new(CurveKind::Straight, 6)),
        ("arc90", CurveSpec::new(CurveKind::Arc { span_deg: 90.0 }, 8).with_tilt(15.0)),
        ("arc-120", CurveSpec::new(CurveKind::Arc { span_deg: -120.0 }, 9)),
    ];
    for (name, spec) in specs {
        let spec = spec.with_seed(21);
        let (h, w) = fitting_canvas(&spec, 8)?;
        let sample = generate(&spec, h, w)?;
        let (oh, ow) = spec.native_out_dims();
        let params = RectifyParams::new(oh, ow);
        let line = build_center_point_list(&sample.instance)?;
        let rectified = rectify_with(&sample.image, &line, &params)?;
        let mae = round_trip_error_of(&spec, &sample, &params)?;

        std::fs::write(out_dir.join(format!("{name}_warped.png")), write_image(&sample.image))?;
        std::fs::write(out_dir.join(format!("{name}_rectified.png")), write_image(&rectified))?;
        std::fs::write(
            out_dir.join(format!("{name}_reference.png")),
            write_image(&reference_at(&spec, &sample, oh, ow)),
        )?;
        println!("{name:<9} {} -> {oh}x{ow}  central MAE {mae:.4}", spec.glyphs());
    }
    println!("images written to {}", out_dir.display());
    Ok(())
}
