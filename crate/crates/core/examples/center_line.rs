//! Builds the center-point list of a hand-written word, resamples it and
//! prints the symmetric control points.

use std::error::Error;

use scrn::geometry::control_points_with;
use scrn::{
    build_center_point_list, control_points, resample_equidistant, CharQuad, OrientationSource,
    Point2, TextInstance,
};

fn main() -> Result<(), Box<dyn Error>> {
    // three characters leaning forward on a rising baseline
    let lean = 6.0;
    let word = TextInstance::new(
        (0..3)
            .map(|i| {
                let (x, y) = (10.0 + 20.0 * i as f64, 40.0 - 4.0 * i as f64);
                CharQuad::new(
                    Point2::new(x + lean, y),
                    Point2::new(x + 18.0 + lean, y - 3.0),
                    Point2::new(x + 18.0, y + 21.0),
                    Point2::new(x, y + 24.0),
                )
            })
            .collect(),
    )
    .with_transcript("abc");

    let line = build_center_point_list(&word)?;
    println!("center-point list ({} points, arc length {:.2}):", line.len(), line.arc_length());
    for g in line.samples() {
        println!(
            "  ({:7.3}, {:7.3})  s {:6.3}  theta ({:+.3}, {:+.3})  phi ({:+.3}, {:+.3})",
            g.center.x, g.center.y, g.scale, g.theta.cos, g.theta.sin, g.phi.cos, g.phi.sin
        );
    }

    let k = 5;
    let resampled = resample_equidistant(&line, k)?;
    let tilted = control_points(&resampled);
    let upright = control_points_with(&resampled, OrientationSource::CenterLineNormal);
    println!("\n{k} control pairs (character orientation | center-line normal):");
    for ((top, bottom), (ntop, nbottom)) in tilted.pairs().zip(upright.pairs()) {
        println!(
            "  top ({:7.3}, {:7.3}) bottom ({:7.3}, {:7.3}) | top ({:7.3}, {:7.3}) bottom ({:7.3}, {:7.3})",
            top.x, top.y, bottom.x, bottom.y, ntop.x, ntop.y, nbottom.x, nbottom.y
        );
    }
    Ok(())
}
