//! Seeded round-trip evaluation: generate warped words, rectify them from
//! their ground-truth quads with both control-point constructions, and
//! score each against its upright rendering.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::geometry::{OrientationSource, Point2};
use crate::rectify::RectifyParams;
use crate::synth::{fitting_canvas, generate, round_trip_error_of, CurveKind, CurveSpec};

/// Pass/fail limits. They travel with the report so a recalibration is a
/// data change.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalThresholds {
    /// Largest allowed central-region MAE for straight, untilted words,
    /// whose rectification is a pixel-aligned near-identity.
    pub straight_max_mae: f64,
    /// Largest allowed central-region MAE for every other word: curved,
    /// sheared, or both. These pay the resampling blur of the warp.
    pub curved_max_mae: f64,
    /// Tilt (degrees, absolute) from which character-orientation control
    /// points must beat normal-direction ones.
    pub ablation_min_tilt_deg: f64,
}

impl Default for EvalThresholds {
    fn default() -> Self {
        Self {
            straight_max_mae: 0.02,
            curved_max_mae: 0.10,
            ablation_min_tilt_deg: 15.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseResult {
    pub id: usize,
    pub spec: CurveSpec,
    pub mae_character: f64,
    pub mae_normal: f64,
    pub failures: Vec<String>,
}

impl CaseResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn is_identity_class(&self) -> bool {
        is_identity_class(&self.spec)
    }
}

/// Straight and untilted: the rectifying warp is a whole-pixel translation.
pub fn is_identity_class(spec: &CurveSpec) -> bool {
    let straight = match spec.kind {
        CurveKind::Straight => true,
        CurveKind::Arc { span_deg } => span_deg == 0.0,
        CurveKind::CubicBezier { .. } => false,
    };
    straight && spec.tilt_deg == 0.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Aggregate {
    pub mae_character_mean: f64,
    pub mae_normal_mean: f64,
    pub tilted_cases: usize,
    pub tilted_mae_character_mean: f64,
    pub tilted_mae_normal_mean: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub suite: String,
    pub seed: u64,
    pub k: usize,
    pub thresholds: EvalThresholds,
    pub cases: Vec<CaseResult>,
    pub aggregate: Aggregate,
    pub failing_cases: Vec<usize>,
    pub pass: bool,
}

/// Deterministic spread of straight, arc (up to 120 degrees) and Bezier
/// words crossed with tilts of 0, 15, 25 and 30 degrees.
pub fn roundtrip_cases(n: usize, seed: u64) -> Vec<CurveSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|i| {
            let m = rng.random_range(8..=10);
            // square font pixels: a 7x9 cell
            let cw = [21.0, 28.0][rng.random_range(0..2)];
            let ch = cw * 9.0 / 7.0;
            let sign = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
            let tilt = [0.0, 15.0, 25.0, 30.0][(i / 3) % 4] * sign;
            let run = m as f64 * cw;
            let kind = match i % 3 {
                0 => CurveKind::Straight,
                1 => {
                    let span = rng.random_range(30.0..=120.0);
                    let sign = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
                    CurveKind::Arc {
                        span_deg: sign * span,
                    }
                }
                _ => {
                    let len = 1.2 * run;
                    let a = rng.random_range(-0.3..=0.3) * run;
                    let b = rng.random_range(-0.3..=0.3) * run;
                    CurveKind::CubicBezier {
                        controls: [
                            Point2::new(0.0, 0.0),
                            Point2::new(len / 3.0, a),
                            Point2::new(2.0 * len / 3.0, b),
                            Point2::new(len, 0.0),
                        ],
                    }
                }
            };
            let glyph_seed = rng.random::<u64>();
            CurveSpec::new(kind, m)
                .with_char_size(cw, ch)
                .with_tilt(tilt)
                .with_seed(glyph_seed)
        })
        .collect()
}

/// Scores one spec with both control-point constructions.
pub fn evaluate_case(
    id: usize,
    spec: &CurveSpec,
    k: usize,
    thresholds: &EvalThresholds,
) -> Result<CaseResult> {
    let (h, w) = fitting_canvas(spec, 8)?;
    let sample = generate(spec, h, w)?;
    let (oh, ow) = spec.native_out_dims();
    let params = RectifyParams::new(oh, ow).with_k(k);
    let mae_character = round_trip_error_of(spec, &sample, &params)?;
    let mae_normal = round_trip_error_of(
        spec,
        &sample,
        &params.with_orientation(OrientationSource::CenterLineNormal),
    )?;

    let mut failures = Vec::new();
    let (limit, label) = if is_identity_class(spec) {
        (thresholds.straight_max_mae, "straight")
    } else {
        (thresholds.curved_max_mae, "warped")
    };
    if !(mae_character <= limit) {
        failures.push(format!("{label} MAE {mae_character:.4} > {limit}"));
    }
    if spec.tilt_deg.abs() >= thresholds.ablation_min_tilt_deg && !(mae_character < mae_normal) {
        failures.push(format!(
            "character-orientation MAE {mae_character:.4} does not beat normal-direction MAE {mae_normal:.4}"
        ));
    }
    Ok(CaseResult {
        id,
        spec: *spec,
        mae_character,
        mae_normal,
        failures,
    })
}

fn mean(values: impl Iterator<Item = f64>) -> f64 {
    let (sum, n) = values.fold((0.0, 0usize), |(s, n), v| (s + v, n + 1));
    if n == 0 {
        0.0
    } else {
        sum / n as f64
    }
}

pub fn run_roundtrip_suite(
    cases: usize,
    seed: u64,
    k: usize,
    thresholds: EvalThresholds,
) -> Result<EvalReport> {
    let results = roundtrip_cases(cases, seed)
        .iter()
        .enumerate()
        .map(|(i, spec)| evaluate_case(i, spec, k, &thresholds))
        .collect::<Result<Vec<_>>>()?;
    let tilted: Vec<&CaseResult> = results
        .iter()
        .filter(|c| c.spec.tilt_deg.abs() >= thresholds.ablation_min_tilt_deg)
        .collect();
    let aggregate = Aggregate {
        mae_character_mean: mean(results.iter().map(|c| c.mae_character)),
        mae_normal_mean: mean(results.iter().map(|c| c.mae_normal)),
        tilted_cases: tilted.len(),
        tilted_mae_character_mean: mean(tilted.iter().map(|c| c.mae_character)),
        tilted_mae_normal_mean: mean(tilted.iter().map(|c| c.mae_normal)),
    };
    let failing_cases: Vec<usize> = results
        .iter()
        .filter(|c| !c.passed())
        .map(|c| c.id)
        .collect();
    Ok(EvalReport {
        suite: "roundtrip".into(),
        seed,
        k,
        thresholds,
        pass: failing_cases.is_empty(),
        cases: results,
        aggregate,
        failing_cases,
    })
}
