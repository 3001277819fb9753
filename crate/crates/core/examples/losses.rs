//! Geometry and recognition losses on a small hand-made example.

use std::error::Error;

use scrn::losses::{
    encode_transcript, geo_loss, recognition_nll, total_loss, GeoLossWeights,
    SymbolDistributionSequence, ALPHABET_SIZE,
};
use scrn::synth::{fitting_canvas, generate, CurveKind, CurveSpec};
use scrn::field::{COS_THETA, SCALE, TCL};
use scrn::render_gt_maps;

fn main() -> Result<(), Box<dyn Error>> {
    let spec = CurveSpec::new(CurveKind::Arc { span_deg: 60.0 }, 5).with_seed(8);
    let (h, w) = fitting_canvas(&spec, 8)?;
    let sample = generate(&spec, h, w)?;
    let gt = render_gt_maps(&[sample.instance], h / 4, w / 4, 4)?;
    let mask = gt.tcl_mask(0.5);

    // a slightly wrong prediction: soft TCL, scale off by 10%, rotated theta
    let mut pred = gt.clone();
    for v in pred.channel_mut(TCL) {
        *v = 0.2 + 0.6 * *v;
    }
    for v in pred.channel_mut(SCALE) {
        *v *= 1.1;
    }
    for v in pred.channel_mut(COS_THETA) {
        *v *= 0.95;
    }
    let geo = geo_loss(&pred, &gt, &mask, &GeoLossWeights::default())?;
    println!("geometry loss: {}", serde_json::to_string_pretty(&geo)?);

    let targets = encode_transcript(&spec.glyphs()).expect("font glyphs are in the alphabet");
    let steps = targets
        .iter()
        .map(|&t| {
            let mut p = vec![0.2 / (ALPHABET_SIZE - 1) as f64; ALPHABET_SIZE];
            p[t] = 0.8;
            p
        })
        .collect();
    let seq = SymbolDistributionSequence::new(steps, targets)?;
    let nll = recognition_nll(&seq)?;
    println!("recognition NLL {nll:.5} (= -ln 0.8 = {:.5})", -(0.8f64).ln());
    println!("total {:.5}", total_loss(Some(&geo), nll));
    Ok(())
}
