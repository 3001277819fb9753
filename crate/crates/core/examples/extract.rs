//! Traces the center line back out of rendered attribute maps and compares
//! it with the annotated one.

use std::error::Error;

use scrn::geometry::hausdorff_distance;
use scrn::synth::{fitting_canvas, generate, CurveKind, CurveSpec};
use scrn::{build_center_point_list, extract_center_line, render_gt_maps, Point2};

fn main() -> Result<(), Box<dyn Error>> {
    let d = 4;
    let curves = [
        CurveKind::Straight,
        CurveKind::Arc { span_deg: 140.0 },
        CurveKind::CubicBezier {
            controls: [
                Point2::new(0.0, 0.0),
                Point2::new(60.0, -50.0),
                Point2::new(120.0, 50.0),
                Point2::new(190.0, 0.0),
            ],
        },
    ];
    for kind in curves {
        let spec = CurveSpec::new(kind, 7).with_seed(3);
        let (h, w) = fitting_canvas(&spec, 12)?;
        let sample = generate(&spec, h, w)?;
        let truth = build_center_point_list(&sample.instance)?;
        let maps = render_gt_maps(&[sample.instance], h / d, w / d, d)?;
        let found = extract_center_line(&maps, 0.5)?;
        let hd = hausdorff_distance(&found.centers(), &truth.centers(), 0.25);
        let mean_s = found.samples().iter().map(|g| g.scale).sum::<f64>() / found.len() as f64;
        println!(
            "{:<40} {:>3} points  Hausdorff {:5.2} px (limit {:.1})  mean s {:.2} (true {:.2})",
            format!("{kind:?}").chars().take(40).collect::<String>(),
            found.len(),
            hd,
            1.5 * d as f64,
            mean_s,
            0.5 * spec.char_height
        );
    }
    Ok(())
}
