//! Training objectives, as plain functions over maps and distributions.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{AttributeMaps, TclMask, COS_PHI, COS_THETA, SCALE, SIN_PHI, SIN_THETA, TCL};

/// Probability clamp guarding the logarithms.
pub const PROB_CLAMP: f64 = 1e-7;

/// Recognized symbols: digits, upper and lower case letters, 32 ASCII
/// punctuation marks. The end-of-sequence symbol takes the last index.
pub const SYMBOLS: &str = "0123456789ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz!\"#$%&'()*+,-./:;<=>?@[\\]^_`{|}~";
pub const EOS_INDEX: usize = 94;
pub const ALPHABET_SIZE: usize = 95;

/// Index of a printable symbol in the recognition alphabet.
pub fn symbol_index(c: char) -> Option<usize> {
    SYMBOLS.chars().position(|s| s == c)
}

/// Encodes a transcript followed by the end-of-sequence symbol.
pub fn encode_transcript(text: &str) -> Option<Vec<usize>> {
    let mut out: Vec<usize> = text.chars().map(symbol_index).collect::<Option<_>>()?;
    out.push(EOS_INDEX);
    Some(out)
}

pub fn smoothed_l1(x: f64) -> f64 {
    let a = x.abs();
    if a < 1.0 {
        0.5 * x * x
    } else {
        a - 0.5
    }
}

/// Mean binary cross-entropy of the TCL probabilities against the mask.
pub fn tcl_loss(pred_f1: &[f64], gt_mask: &TclMask) -> Result<f64> {
    if pred_f1.len() != gt_mask.data().len() {
        return Err(Error::ShapeMismatch(format!(
            "prediction has {} pixels, mask has {}",
            pred_f1.len(),
            gt_mask.data().len()
        )));
    }
    if pred_f1.is_empty() {
        return Ok(0.0);
    }
    let sum: f64 = pred_f1
        .iter()
        .zip(gt_mask.data())
        .map(|(&p, &y)| {
            let p = p.clamp(PROB_CLAMP, 1.0 - PROB_CLAMP);
            if y {
                -p.ln()
            } else {
                -(1.0 - p).ln()
            }
        })
        .sum();
    Ok(sum / pred_f1.len() as f64)
}

/// Per-term weights, in the order tcl, s, sin theta, cos theta, sin phi,
/// cos phi.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeoLossWeights(pub [f64; 6]);

impl Default for GeoLossWeights {
    fn default() -> Self {
        Self([1.0; 6])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeoLossBreakdown {
    pub l_tcl: f64,
    pub l_s: f64,
    pub l_sin_theta: f64,
    pub l_cos_theta: f64,
    pub l_sin_phi: f64,
    pub l_cos_phi: f64,
    pub total: f64,
}

impl GeoLossBreakdown {
    pub fn terms(&self) -> [f64; 6] {
        [
            self.l_tcl,
            self.l_s,
            self.l_sin_theta,
            self.l_cos_theta,
            self.l_sin_phi,
            self.l_cos_phi,
        ]
    }

    pub fn attribute_terms(&self) -> [f64; 5] {
        [
            self.l_s,
            self.l_sin_theta,
            self.l_cos_theta,
            self.l_sin_phi,
            self.l_cos_phi,
        ]
    }
}

/// Geometry loss: TCL cross-entropy over all pixels plus smoothed-L1
/// attribute residuals averaged over the masked pixels only.
pub fn geo_loss(
    pred: &AttributeMaps,
    gt: &AttributeMaps,
    gt_mask: &TclMask,
    weights: &GeoLossWeights,
) -> Result<GeoLossBreakdown> {
    if !pred.same_shape(gt) || gt_mask.height() != gt.height() || gt_mask.width() != gt.width() {
        return Err(Error::ShapeMismatch(format!(
            "pred {}x{}, gt {}x{}, mask {}x{}",
            pred.height(),
            pred.width(),
            gt.height(),
            gt.width(),
            gt_mask.height(),
            gt_mask.width()
        )));
    }
    let l_tcl = tcl_loss(pred.channel(TCL), gt_mask)?;

    // s, sin theta, cos theta, sin phi, cos phi
    let mut sums = [0.0; 5];
    let mut count = 0usize;
    let w = gt.width();
    for (idx, _) in gt_mask.data().iter().enumerate().filter(|(_, &m)| m) {
        let (r, c) = (idx / w, idx % w);
        let s = gt.get(SCALE, r, c);
        if !(s > 0.0) {
            return Err(Error::NonPositiveScale {
                row: r,
                col: c,
                value: s,
            });
        }
        let residuals = [
            (pred.get(SCALE, r, c) - s) / s,
            pred.get(SIN_THETA, r, c) - gt.get(SIN_THETA, r, c),
            pred.get(COS_THETA, r, c) - gt.get(COS_THETA, r, c),
            pred.get(SIN_PHI, r, c) - gt.get(SIN_PHI, r, c),
            pred.get(COS_PHI, r, c) - gt.get(COS_PHI, r, c),
        ];
        for (acc, res) in sums.iter_mut().zip(residuals) {
            *acc += smoothed_l1(res);
        }
        count += 1;
    }
    let terms = if count == 0 {
        [0.0; 5]
    } else {
        sums.map(|s| s / count as f64)
    };

    let all = [l_tcl, terms[0], terms[1], terms[2], terms[3], terms[4]];
    let total = all.iter().zip(weights.0).map(|(t, w)| t * w).sum();
    Ok(GeoLossBreakdown {
        l_tcl,
        l_s: terms[0],
        l_sin_theta: terms[1],
        l_cos_theta: terms[2],
        l_sin_phi: terms[3],
        l_cos_phi: terms[4],
        total,
    })
}

/// Per-step symbol probabilities together with the target sequence.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymbolDistributionSequence {
    pub steps: Vec<Vec<f64>>,
    pub targets: Vec<usize>,
}

impl SymbolDistributionSequence {
    pub fn new(steps: Vec<Vec<f64>>, targets: Vec<usize>) -> Result<Self> {
        let seq = Self { steps, targets };
        seq.validate()?;
        Ok(seq)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |step, reason: String| Err(Error::InvalidDistribution { step, reason });
        if self.steps.is_empty() {
            return bad(0, "empty sequence".into());
        }
        if self.steps.len() != self.targets.len() {
            return bad(
                0,
                format!(
                    "{} steps but {} targets",
                    self.steps.len(),
                    self.targets.len()
                ),
            );
        }
        for (t, (probs, &target)) in self.steps.iter().zip(&self.targets).enumerate() {
            if probs.iter().any(|p| !(*p >= 0.0) || !p.is_finite()) {
                return bad(t, "negative or non-finite probability".into());
            }
            let sum: f64 = probs.iter().sum();
            if (sum - 1.0).abs() > 1e-6 {
                return bad(t, format!("probabilities sum to {sum}"));
            }
            if target >= probs.len() {
                return bad(
                    t,
                    format!("target {target} outside alphabet of {}", probs.len()),
                );
            }
        }
        Ok(())
    }
}

/// Mean negative log-likelihood of the target symbols.
pub fn recognition_nll(seq: &SymbolDistributionSequence) -> Result<f64> {
    seq.validate()?;
    let sum: f64 = seq
        .steps
        .iter()
        .zip(&seq.targets)
        .map(|(probs, &t)| -probs[t].max(f64::MIN_POSITIVE).ln())
        .sum();
    // -ln(1) is -0.0; report a clean zero
    Ok((sum / seq.steps.len() as f64) + 0.0)
}

/// Recognition loss plus the geometry loss when geometry labels exist.
pub fn total_loss(geo: Option<&GeoLossBreakdown>, recog: f64) -> f64 {
    match geo {
        Some(g) => recog + g.total,
        None => recog,
    }
}
