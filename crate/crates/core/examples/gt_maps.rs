//! Renders ground-truth attribute maps for a generated word and prints the
//! TCL mask as text.

use std::error::Error;

use scrn::field::{COS_PHI, SCALE, SIN_PHI};
use scrn::synth::{fitting_canvas, generate, CurveKind, CurveSpec};
use scrn::render_gt_maps;

fn main() -> Result<(), Box<dyn Error>> {
    let spec = CurveSpec::new(CurveKind::Arc { span_deg: 70.0 }, 6)
        .with_tilt(20.0)
        .with_seed(11);
    let (h, w) = fitting_canvas(&spec, 8)?;
    let sample = generate(&spec, h, w)?;
    let d = 4;
    let maps = render_gt_maps(&[sample.instance], h / d, w / d, d)?;
    maps.check_invariants(1e-9)?;

    let mask = maps.tcl_mask(0.5);
    println!("{}x{} maps for a {h}x{w} image, {} TCL pixels", maps.height(), maps.width(), mask.count());
    for r in 0..maps.height() {
        let row: String = (0..maps.width())
            .map(|c| if mask.get(r, c) { '#' } else { '.' })
            .collect();
        println!("{row}");
    }

    let (r, c) = (0..maps.height() * maps.width())
        .map(|i| (i / maps.width(), i % maps.width()))
        .find(|&(r, c)| mask.get(r, c))
        .expect("the word draws a center line");
    println!(
        "\nfirst TCL pixel ({r}, {c}): s/d = {:.3}, phi = ({:+.3}, {:+.3})",
        maps.get(SCALE, r, c),
        maps.get(COS_PHI, r, c),
        maps.get(SIN_PHI, r, c)
    );
    Ok(())
}
