//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use scrn::eval::{is_identity_class, EvalReport};
use scrn::field::{NUM_CHANNELS, SCALE, TCL};
use scrn::geometry::{
    control_points, hausdorff_distance, resample_equidistant, CenterPolyline, GeoSample,
};
use scrn::io::{read_annotation, read_image, read_maps, write_annotation, write_maps, AnnotationDoc};
use scrn::losses::{
    geo_loss, recognition_nll, smoothed_l1, GeoLossWeights, SymbolDistributionSequence,
    ALPHABET_SIZE,
};
use scrn::synth::{fitting_canvas, generate, round_trip_error, CurveKind, CurveSpec};
use scrn::tps::{anchor_points, tps_solve};
use scrn::{
    bilinear_sample, build_center_point_list, extract_center_line, normalize_orientations,
    render_gt_maps, AttributeMaps, CharQuad, ControlPoints, ImageBuffer, Orientation,
    OrientationSource, Point2, SamplingGrid, TextInstance,
};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn random_polyline(rng: &mut ChaCha8Rng) -> CenterPolyline {
    let n = rng.random_range(3..=12);
    let mut p = Point2::new(rng.random_range(-50.0..50.0), rng.random_range(-50.0..50.0));
    let mut heading: f64 = rng.random_range(0.0..std::f64::consts::TAU);
    let samples = (0..n)
        .map(|_| {
            heading += rng.random_range(-0.6..0.6);
            p = Point2::new(
                p.x + rng.random_range(1.0..20.0) * heading.cos(),
                p.y + rng.random_range(1.0..20.0) * heading.sin(),
            );
            let phi = heading + std::f64::consts::FRAC_PI_2 + rng.random_range(-0.7..0.7);
            GeoSample {
                center: p,
                scale: rng.random_range(0.5..30.0),
                theta: Orientation { cos: heading.cos(), sin: heading.sin() },
                phi: Orientation { cos: phi.cos(), sin: phi.sin() },
            }
        })
        .collect();
    CenterPolyline::new(samples).expect("consecutive centers are at least 1 apart")
}

fn symmetry_errors(poly: &CenterPolyline, cps: &ControlPoints) -> (f64, f64) {
    poly.samples()
        .iter()
        .zip(cps.pairs())
        .fold((0.0_f64, 0.0_f64), |(mid, sep), (g, (top, bottom))| {
            let m = top.midpoint(bottom);
            (
                mid.max(m.dist(g.center)),
                sep.max((top.dist(bottom) - 2.0 * g.scale).abs()),
            )
        })
}

fn c1_symmetry() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let (mut worst_mid, mut worst_sep) = (0.0_f64, 0.0_f64);
    for _ in 0..200 {
        let poly = random_polyline(&mut rng);
        let k = rng.random_range(2..=16);
        for p in [poly.clone(), resample_equidistant(&poly, k).map_err(|e| e.to_string())?] {
            let (mid, sep) = symmetry_errors(&p, &control_points(&p));
            worst_mid = worst_mid.max(mid);
            worst_sep = worst_sep.max(sep);
        }
    }
    ensure(worst_mid <= 1e-9 && worst_sep <= 1e-9, || {
        format!("midpoint error {worst_mid:e}, separation error {worst_sep:e}")
    })?;
    Ok(format!("200 polylines, max midpoint err {worst_mid:.1e}, max separation err {worst_sep:.1e}"))
}

fn c2_normalization() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let (mut worst_sum, mut worst_idem) = (0.0_f64, 0.0_f64);
    for _ in 0..50 {
        let (h, w) = (rng.random_range(1..12), rng.random_range(1..12));
        let mut maps = AttributeMaps::zeros(h, w, 4).unwrap();
        for ch in 0..NUM_CHANNELS {
            for v in maps.channel_mut(ch) {
                *v = rng.random_range(-3.0..3.0);
            }
        }
        let once = normalize_orientations(&maps);
        let twice = normalize_orientations(&once);
        for r in 0..h {
            for c in 0..w {
                let p = once.pixel(r, c);
                worst_sum = worst_sum
                    .max((p[2] * p[2] + p[3] * p[3] - 1.0).abs())
                    .max((p[4] * p[4] + p[5] * p[5] - 1.0).abs());
                for (a, b) in p.iter().zip(twice.pixel(r, c)) {
                    worst_idem = worst_idem.max((a - b).abs());
                }
            }
        }
    }
    ensure(worst_sum <= 1e-9 && worst_idem <= 1e-12, || {
        format!("unit-sum error {worst_sum:e}, idempotence error {worst_idem:e}")
    })?;
    Ok(format!("50 fields, max unit-sum err {worst_sum:.1e}, max idempotence err {worst_idem:.1e}"))
}

fn c3_tps() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut resid, mut kernel, mut side) = (0.0_f64, 0.0_f64, 0.0_f64);
    for _ in 0..100 {
        let k = rng.random_range(2..=12);
        let (w, h) = (rng.random_range(16..200), rng.random_range(8..64));
        let anchors = anchor_points(k, w, h).map_err(|e| e.to_string())?;
        let fiducials: Vec<Point2> = anchors
            .points()
            .iter()
            .map(|p| Point2::new(p.x * 1.3 + rng.random_range(-6.0..6.0), p.y + rng.random_range(-6.0..6.0)))
            .collect();
        let fid = ControlPoints::from_points(fiducials.clone()).unwrap();
        let t = tps_solve(&anchors, &fid, 0.0).map_err(|e| e.to_string())?;
        for (a, f) in anchors.points().iter().zip(&fiducials) {
            resid = resid.max(t.apply(*a).dist(*f));
        }
        side = side.max(t.side_condition_residual());

        let (m, b) = (
            [[rng.random_range(0.5..2.0), rng.random_range(-0.5..0.5)], [rng.random_range(-0.5..0.5), rng.random_range(0.5..2.0)]],
            [rng.random_range(-20.0..20.0), rng.random_range(-20.0..20.0)],
        );
        let affine: Vec<Point2> = anchors
            .points()
            .iter()
            .map(|p| Point2::new(m[0][0] * p.x + m[0][1] * p.y + b[0], m[1][0] * p.x + m[1][1] * p.y + b[1]))
            .collect();
        let t = tps_solve(&anchors, &ControlPoints::from_points(affine).unwrap(), 0.0)
            .map_err(|e| e.to_string())?;
        kernel = kernel.max(t.max_kernel_weight());
        side = side.max(t.side_condition_residual());
    }
    ensure(resid <= 1e-6 && kernel <= 1e-8 && side <= 1e-6, || {
        format!("residual {resid:e}, affine kernel weight {kernel:e}, side conditions {side:e}")
    })?;
    Ok(format!(
        "100 fits, max residual {resid:.1e}, max affine kernel weight {kernel:.1e}, max side condition {side:.1e}"
    ))
}

fn random_image(rng: &mut ChaCha8Rng, h: usize, w: usize, c: usize) -> ImageBuffer {
    let data = (0..h * w * c).map(|_| rng.random_range(0.0..1.0)).collect();
    ImageBuffer::from_vec(h, w, c, data).unwrap()
}

fn c4_sampling() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..20 {
        let (h, w, c) = (rng.random_range(1..20), rng.random_range(1..20), [1, 3][rng.random_range(0..2)]);
        let img = random_image(&mut rng, h, w, c);
        let out = bilinear_sample(&img, &SamplingGrid::identity(h, w));
        let same = out.data().iter().zip(img.data()).all(|(a, b)| a.to_bits() == b.to_bits());
        ensure(same, || format!("identity grid changed a {h}x{w}x{c} image"))?;
    }

    let pair = ImageBuffer::from_vec(1, 2, 1, vec![0.0, 1.0]).unwrap();
    let grid = SamplingGrid::from_coords(1, 1, vec![Point2::new(0.5, 0.0)]).unwrap();
    let mid = bilinear_sample(&pair, &grid).get(0, 0, 0);
    ensure(mid == 0.5, || format!("midpoint sample is {mid}"))?;

    let mut worst = 0.0_f64;
    for _ in 0..50 {
        let (h, w) = (rng.random_range(2..16), rng.random_range(2..16));
        let (a, b) = (random_image(&mut rng, h, w, 1), random_image(&mut rng, h, w, 1));
        let (alpha, beta) = (rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
        let combo: Vec<f64> = a.data().iter().zip(b.data()).map(|(x, y)| alpha * x + beta * y).collect();
        let combo = ImageBuffer::from_vec(h, w, 1, combo).unwrap();
        let (gh, gw) = (rng.random_range(1..10), rng.random_range(1..10));
        let coords = (0..gh * gw)
            .map(|_| Point2::new(rng.random_range(-2.0..w as f64 + 1.0), rng.random_range(-2.0..h as f64 + 1.0)))
            .collect();
        let grid = SamplingGrid::from_coords(gh, gw, coords).unwrap();
        let (sa, sb, sc) = (bilinear_sample(&a, &grid), bilinear_sample(&b, &grid), bilinear_sample(&combo, &grid));
        for i in 0..gh * gw {
            worst = worst.max((sc.data()[i] - alpha * sa.data()[i] - beta * sb.data()[i]).abs());
        }
    }
    ensure(worst <= 1e-9, || format!("linearity error {worst:e}"))?;
    Ok(format!("identity bitwise, midpoint 0.5, max linearity err {worst:.1e}"))
}

/// Scale of the true polyline at the point nearest `p`.
fn scale_at(poly: &CenterPolyline, p: Point2) -> f64 {
    let s = poly.samples();
    let mut best = (f64::INFINITY, s[0].scale);
    for w in s.windows(2) {
        let (a, b) = (w[0].center, w[1].center);
        let (dx, dy) = (b.x - a.x, b.y - a.y);
        let t = (((p.x - a.x) * dx + (p.y - a.y) * dy) / (dx * dx + dy * dy)).clamp(0.0, 1.0);
        let d = p.dist(a.lerp(b, t));
        if d < best.0 {
            best = (d, w[0].scale + t * (w[1].scale - w[0].scale));
        }
    }
    best.1
}

fn extraction_specs(n: usize, seed: u64) -> Vec<CurveSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|i| {
            let m = rng.random_range(3..=8);
            let cw = rng.random_range(14.0..30.0);
            let ch = cw * rng.random_range(1.1..1.6);
            let kind = match i % 3 {
                0 => CurveKind::Straight,
                1 => {
                    let span: f64 = rng.random_range(10.0..=150.0);
                    CurveKind::Arc { span_deg: if rng.random_bool(0.5) { span } else { -span } }
                }
                _ => {
                    let run = m as f64 * cw;
                    let len = 1.2 * run;
                    CurveKind::CubicBezier {
                        controls: [
                            Point2::new(0.0, 0.0),
                            Point2::new(len / 3.0, rng.random_range(-0.4..0.4) * run),
                            Point2::new(2.0 * len / 3.0, rng.random_range(-0.4..0.4) * run),
                            Point2::new(len, 0.0),
                        ],
                    }
                }
            };
            CurveSpec::new(kind, m)
                .with_char_size(cw, ch)
                .with_tilt(rng.random_range(-20.0..20.0))
                .with_seed(rng.random())
        })
        .collect()
}

fn c5_extraction() -> Outcome {
    const D: usize = 4;
    let (mut worst_h, mut worst_s) = (0.0_f64, 0.0_f64);
    let mut failures = Vec::new();
    for (i, spec) in extraction_specs(50, 5).iter().enumerate() {
        let (h, w) = fitting_canvas(spec, 12).map_err(|e| e.to_string())?;
        let sample = generate(spec, h, w).map_err(|e| e.to_string())?;
        let truth = build_center_point_list(&sample.instance).map_err(|e| e.to_string())?;
        let maps = render_gt_maps(std::slice::from_ref(&sample.instance), h / D, w / D, D).map_err(|e| e.to_string())?;
        let found = extract_center_line(&maps, 0.5).map_err(|e| format!("sample {i}: {e}"))?;
        let hd = hausdorff_distance(&found.centers(), &truth.centers(), 0.25);
        worst_h = worst_h.max(hd);
        for g in found.samples() {
            let s = scale_at(&truth, g.center);
            worst_s = worst_s.max((g.scale - s).abs() / s);
        }
        if hd > 1.5 * D as f64 {
            failures.push(format!("#{i} {hd:.2}"));
        }
    }
    ensure(failures.is_empty(), || format!("Hausdorff over {} px: {failures:?}", 1.5 * D as f64))?;
    ensure(worst_s <= 0.15, || format!("scale relative error {worst_s:.3}"))?;
    Ok(format!("50 samples, d=4, max Hausdorff {worst_h:.2} px, max scale rel err {:.1}%", 100.0 * worst_s))
}

fn c6_roundtrip() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let report_path = dir.path().join("report.json");
    let out = Command::new(env!("CARGO_BIN_EXE_scrn"))
        .args(["eval", "--suite", "roundtrip", "--cases", "30", "--seed", "6", "--k", "10", "--report"])
        .arg(&report_path)
        .output()
        .map_err(|e| e.to_string())?;
    let report: EvalReport = serde_json::from_slice(&std::fs::read(&report_path).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    ensure(report.thresholds.straight_max_mae == 0.02 && report.thresholds.curved_max_mae == 0.10, || {
        format!("unexpected thresholds {:?}", report.thresholds)
    })?;
    let (mut straight, mut warped, mut counts) = (0.0_f64, 0.0_f64, (0, 0));
    for c in &report.cases {
        if let CurveKind::Arc { span_deg } = c.spec.kind {
            ensure(span_deg.abs() <= 120.0, || format!("case {} arc span {span_deg}", c.id))?;
        }
        if is_identity_class(&c.spec) {
            straight = straight.max(c.mae_character);
            counts.0 += 1;
        } else {
            warped = warped.max(c.mae_character);
            counts.1 += 1;
        }
    }
    ensure(out.status.code() == Some(0) && report.pass, || {
        format!("eval exit {:?}, failing cases {:?}", out.status.code(), report.failing_cases)
    })?;
    ensure(straight <= 0.02 && warped <= 0.10, || format!("straight {straight:.4}, warped {warped:.4}"))?;
    Ok(format!(
        "eval exit 0; straight max MAE {straight:.4} over {} cases, curved/sheared max MAE {warped:.4} over {} cases",
        counts.0, counts.1
    ))
}

fn c7_ablation() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut wins = 0;
    let mut ratios = Vec::new();
    for i in 0..20 {
        let m = rng.random_range(5..=9);
        let kind = match i % 3 {
            0 => CurveKind::Straight,
            1 => CurveKind::Arc { span_deg: rng.random_range(-120.0..120.0) },
            _ => {
                let len = 1.2 * m as f64 * 21.0;
                CurveKind::CubicBezier {
                    controls: [
                        Point2::new(0.0, 0.0),
                        Point2::new(len / 3.0, rng.random_range(-0.3..0.3) * len),
                        Point2::new(2.0 * len / 3.0, rng.random_range(-0.3..0.3) * len),
                        Point2::new(len, 0.0),
                    ],
                }
            }
        };
        let tilt: f64 = rng.random_range(15.0..=35.0);
        let spec = CurveSpec::new(kind, m)
            .with_tilt(if rng.random_bool(0.5) { tilt } else { -tilt })
            .with_seed(rng.random());
        let (h, w) = spec.native_out_dims();
        let ours = round_trip_error(&spec, 10, h, w, OrientationSource::Character).map_err(|e| e.to_string())?;
        let normal = round_trip_error(&spec, 10, h, w, OrientationSource::CenterLineNormal).map_err(|e| e.to_string())?;
        if ours < normal {
            wins += 1;
        }
        ratios.push(ours / normal);
    }
    let worst = ratios.iter().cloned().fold(0.0, f64::max);
    ensure(wins == 20, || format!("character orientation won {wins}/20"))?;
    Ok(format!("character orientation won 20/20, worst MAE ratio {worst:.2}"))
}

fn c8_losses() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst = 0.0_f64;
    for _ in 0..10_000 {
        let x: f64 = rng.random_range(-4.0..4.0);
        let closed = if x.abs() < 1.0 { 0.5 * x * x } else { x.abs() - 0.5 };
        worst = worst.max((smoothed_l1(x) - closed).abs());
    }
    ensure(worst <= 1e-12, || format!("smoothed L1 error {worst:e}"))?;

    let (h, w) = (12, 20);
    let mut gt = AttributeMaps::zeros(h, w, 4).unwrap();
    for r in 4..8 {
        for c in 2..18 {
            let a: f64 = rng.random_range(0.0..std::f64::consts::TAU);
            gt.set_pixel(r, c, [1.0, rng.random_range(1.0..5.0), a.cos(), a.sin(), -a.sin(), a.cos()]);
        }
    }
    let mask = gt.tcl_mask(0.5);
    let weights = GeoLossWeights::default();
    let same = geo_loss(&gt, &gt, &mask, &weights).map_err(|e| e.to_string())?;
    ensure(same.attribute_terms().iter().all(|&t| t == 0.0), || format!("identical maps give {:?}", same.attribute_terms()))?;

    let mut pred = gt.clone();
    for r in 0..h {
        for c in 0..w {
            for ch in SCALE..NUM_CHANNELS {
                pred.set(ch, r, c, gt.get(ch, r, c) + rng.random_range(-0.5..0.5));
            }
        }
    }
    let base = geo_loss(&pred, &gt, &mask, &weights).map_err(|e| e.to_string())?;
    let mut moved = pred.clone();
    for r in 0..h {
        for c in 0..w {
            if !mask.get(r, c) {
                for ch in SCALE..NUM_CHANNELS {
                    moved.set(ch, r, c, rng.random_range(-100.0..100.0));
                }
            }
        }
    }
    let after = geo_loss(&moved, &gt, &mask, &weights).map_err(|e| e.to_string())?;
    ensure(base == after, || "off-mask attribute perturbation changed the loss".into())?;
    ensure(pred.channel(TCL) == moved.channel(TCL), || "tcl channel touched".into())?;

    let mut worst_nll = 0.0_f64;
    for _ in 0..200 {
        let t = rng.random_range(1..12);
        let mut steps = Vec::new();
        let mut targets = Vec::new();
        for _ in 0..t {
            let raw: Vec<f64> = (0..ALPHABET_SIZE).map(|_| rng.random_range(0.01..1.0)).collect();
            let z: f64 = raw.iter().sum();
            steps.push(raw.iter().map(|v| v / z).collect::<Vec<f64>>());
            targets.push(rng.random_range(0..ALPHABET_SIZE));
        }
        let product: f64 = steps.iter().zip(&targets).map(|(p, &i)| p[i]).product();
        let oracle = -product.ln() / t as f64;
        let seq = SymbolDistributionSequence::new(steps, targets).map_err(|e| e.to_string())?;
        worst_nll = worst_nll.max((recognition_nll(&seq).map_err(|e| e.to_string())? - oracle).abs());
    }
    ensure(worst_nll <= 1e-12, || format!("NLL error {worst_nll:e}"))?;
    ensure(weights.0 == [1.0; 6], || format!("default weights {:?}", weights.0))?;
    Ok(format!(
        "smoothed L1 max err {worst:.1e}, off-mask invariant, NLL max err {worst_nll:.1e}, default weights all 1"
    ))
}

fn c9_io() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..20 {
        let (h, w) = (rng.random_range(1..10), rng.random_range(1..10));
        let mut maps = AttributeMaps::zeros(h, w, rng.random_range(1..8)).unwrap();
        for ch in 0..NUM_CHANNELS {
            for v in maps.channel_mut(ch) {
                *v = rng.random_range(-5.0f32..5.0) as f64;
            }
        }
        let bytes = write_maps(&maps);
        let back = read_maps(&bytes).map_err(|e| e.to_string())?;
        ensure(back == maps && write_maps(&back) == bytes, || "SCRN round trip is not bitwise".into())?;
    }

    for _ in 0..20 {
        let instances = (0..rng.random_range(0..4))
            .map(|_| {
                let n = rng.random_range(1..5);
                let quads = (0..n)
                    .map(|i| CharQuad::rect(10.0 + 20.0 * i as f64 + rng.random_range(0.0..1.0), rng.random_range(5.0..20.0), rng.random_range(5.0..15.0), rng.random_range(5.0..25.0)))
                    .collect();
                let inst = TextInstance::new(quads);
                if rng.random_bool(0.5) { inst.with_transcript("Ab3") } else { inst }
            })
            .collect();
        let doc = AnnotationDoc { image: "x.png".into(), width: 200, height: 60, instances };
        let bytes = write_annotation(&doc);
        let back = read_annotation(&bytes).map_err(|e| e.to_string())?;
        let v1: serde_json::Value = serde_json::from_slice(&bytes).map_err(|e| e.to_string())?;
        let v2: serde_json::Value = serde_json::from_slice(&write_annotation(&back)).map_err(|e| e.to_string())?;
        ensure(back == doc && v1 == v2, || "annotation round trip changed values".into())?;
    }

    let seeds: Vec<Vec<u8>> = {
        let mut maps = AttributeMaps::zeros(2, 3, 4).unwrap();
        maps.set_pixel(1, 1, [1.0, 2.0, 1.0, 0.0, 0.0, 1.0]);
        let doc = AnnotationDoc {
            image: "a.png".into(),
            width: 40,
            height: 20,
            instances: vec![TextInstance::new(vec![CharQuad::rect(1.0, 1.0, 5.0, 8.0)])],
        };
        let img = ImageBuffer::from_vec(2, 2, 1, vec![0.0, 0.5, 1.0, 0.25]).unwrap();
        vec![write_maps(&maps), write_annotation(&doc), scrn::io::write_image(&img)]
    };
    let mut errors = 0usize;
    for i in 0..10_000 {
        let bytes: Vec<u8> = if i % 2 == 0 {
            let len = rng.random_range(0..128);
            (0..len).map(|_| rng.random()).collect()
        } else {
            let mut b = seeds[i % seeds.len()].clone();
            for _ in 0..rng.random_range(1..4) {
                let j = rng.random_range(0..b.len());
                b[j] = rng.random();
            }
            let keep = rng.random_range(0..=b.len());
            if rng.random_bool(0.3) {
                b.truncate(keep);
            }
            b
        };
        let run = catch_unwind(AssertUnwindSafe(|| {
            [read_maps(&bytes).is_err(), read_annotation(&bytes).is_err(), read_image(&bytes).is_err()]
        }));
        match run {
            Ok(r) => errors += r.iter().filter(|e| **e).count(),
            Err(_) => return Err(format!("reader panicked on input #{i}")),
        }
    }
    Ok(format!("SCRN bitwise, annotation value-identical, 10000 fuzz inputs ({errors} typed errors, 0 panics)"))
}

fn run_scrn(dir: &Path, args: &[&str]) -> Result<(i32, Vec<u8>), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_scrn"))
        .current_dir(dir)
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    Ok((out.status.code().unwrap_or(-1), out.stdout))
}

fn c10_determinism() -> Outcome {
    let mut snapshots = Vec::new();
    for _ in 0..2 {
        let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
        let p = dir.path();
        let commands: Vec<Vec<&str>> = vec![
            vec!["gen", "--curve", "arc:120", "--chars", "6", "--seed", "7", "--tilt", "20", "--out-image", "w.png", "--out-ann", "w.json", "--out-ref", "r.png"],
            vec!["gt", "--ann", "w.json", "--out-maps", "w.scrn"],
            vec!["rectify", "--image", "w.png", "--ann", "w.json", "--out-width", "128", "--out-height", "32", "--out", "ra.png"],
            vec!["rectify", "--image", "w.png", "--maps", "w.scrn", "--out-width", "128", "--out-height", "32", "--out", "rm.png"],
            vec!["extract", "--maps", "w.scrn", "--out-json", "line.json"],
            vec!["loss", "--pred-maps", "w.scrn", "--gt-maps", "w.scrn"],
            vec!["eval", "--cases", "6", "--seed", "1", "--report", "report.json"],
        ];
        let mut snap = Vec::new();
        for args in &commands {
            let (code, stdout) = run_scrn(p, args)?;
            ensure(code == 0, || format!("`scrn {}` exited {code}", args.join(" ")))?;
            snap.push((args[0].to_string(), stdout));
        }
        let mut names: Vec<_> = std::fs::read_dir(p).map_err(|e| e.to_string())?.map(|e| e.unwrap().file_name()).collect();
        names.sort();
        for n in names {
            snap.push((n.to_string_lossy().into_owned(), std::fs::read(p.join(&n)).map_err(|e| e.to_string())?));
        }
        snapshots.push(snap);
    }
    ensure(snapshots[0] == snapshots[1], || {
        let diff: Vec<_> = snapshots[0].iter().zip(&snapshots[1]).filter(|(a, b)| a != b).map(|(a, _)| a.0.clone()).collect();
        format!("outputs differ: {diff:?}")
    })?;
    Ok(format!("6 subcommands, {} outputs identical across runs", snapshots[0].len()))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 10] = [
        ("symmetry constraint", c1_symmetry),
        ("orientation normalization", c2_normalization),
        ("TPS exactness", c3_tps),
        ("sampling correctness", c4_sampling),
        ("GT/extraction round trip", c5_extraction),
        ("rectification round trip", c6_roundtrip),
        ("character-orientation ablation", c7_ablation),
        ("loss oracles", c8_losses),
        ("IO contract", c9_io),
        ("CLI determinism", c10_determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!("{}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
