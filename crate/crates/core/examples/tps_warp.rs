//! Fits a thin-plate spline between rectangle anchors and a bent band of
//! fiducials, then warps a checkerboard through it.

use std::error::Error;

use scrn::tps::{anchor_points, make_grid, tps_solve};
use scrn::{bilinear_sample, ControlPoints, ImageBuffer, Point2};

fn main() -> Result<(), Box<dyn Error>> {
    let (k, out_h, out_w) = (6, 24, 96);
    let anchors = anchor_points(k, out_w, out_h)?;
    // the same pairs pushed onto a parabola in a larger source image
    let fiducials = ControlPoints::from_points(
        anchors
            .points()
            .iter()
            .map(|p| {
                let u = p.x / (out_w - 1) as f64 - 0.5;
                Point2::new(16.0 + 1.2 * p.x, 20.0 + p.y + 40.0 * u * u)
            })
            .collect(),
    )?;
    let tps = tps_solve(&anchors, &fiducials, 0.0)?;
    let worst = anchors
        .points()
        .iter()
        .zip(fiducials.points())
        .map(|(a, f)| tps.apply(*a).dist(*f))
        .fold(0.0, f64::max);
    println!("max anchor residual {worst:.2e}, side conditions {:.2e}", tps.side_condition_residual());

    let (src_h, src_w) = (72, 150);
    let mut board = ImageBuffer::new(src_h, src_w, 1)?;
    for r in 0..src_h {
        for c in 0..src_w {
            board.set(r, c, 0, ((r / 6 + c / 6) % 2) as f64);
        }
    }
    let grid = make_grid(&tps, out_h, out_w)?;
    let out = bilinear_sample(&board, &grid);
    for r in (0..out_h).step_by(3) {
        let row: String = (0..out_w)
            .step_by(2)
            .map(|c| if out.get(r, c, 0) > 0.5 { '#' } else { ' ' })
            .collect();
        println!("|{row}|");
    }
    Ok(())
}
