//! The `scrn` command line.
//!
//! Exit codes: 0 success, 1 runtime or data error, 2 usage error,
//! 3 no text found. Machine-readable results go to stdout as JSON;
//! diagnostics go to stderr.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::builder::RangedU64ValueParser;
use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::Error;
use crate::eval::{run_roundtrip_suite, EvalThresholds};
use crate::field::{extract_center_line, render_gt_maps, DEFAULT_DOWNSAMPLE, DEFAULT_THRESHOLD};
use crate::geometry::{build_center_point_list, OrientationSource, Point2};
use crate::io::{read_annotation, read_image, read_maps, write_annotation, write_image, write_maps, AnnotationDoc};
use crate::losses::{geo_loss, GeoLossWeights};
use crate::rectify::{rectify_with, RectifyParams, DEFAULT_K};
use crate::synth::{generate, CurveKind, CurveSpec};
use crate::tps::DEFAULT_LAMBDA;

pub const EXIT_OK: i32 = 0;
pub const EXIT_RUNTIME: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NO_TEXT: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "scrn", version, about = "Center-line driven text rectification tools")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a synthetic warped word with its annotation.
    Gen(GenArgs),
    /// Render ground-truth attribute maps from an annotation.
    Gt(GtArgs),
    /// Rectify an image from an annotation or attribute maps.
    Rectify(RectifyArgs),
    /// Trace the center line out of attribute maps.
    Extract(ExtractArgs),
    /// Run a seeded evaluation suite.
    Eval(EvalArgs),
    /// Geometry loss between predicted and ground-truth maps.
    Loss(LossArgs),
}

#[derive(Debug, Args)]
pub struct GenArgs {
    /// `straight`, `arc:<span degrees>` or `bezier:x0,y0,x1,y1,x2,y2,x3,y3`
    #[arg(long, default_value = "straight", value_parser = parse_curve)]
    pub curve: CurveKind,
    #[arg(long, default_value_t = 6)]
    pub chars: usize,
    /// Character cell as `WIDTHxHEIGHT` pixels.
    #[arg(long, default_value = "21x27", value_parser = parse_size)]
    pub char_size: (f64, f64),
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub tilt: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Canvas width in pixels.
    #[arg(long, default_value_t = 256)]
    pub width: usize,
    /// Canvas height in pixels.
    #[arg(long, default_value_t = 64)]
    pub height: usize,
    #[arg(long)]
    pub out_image: PathBuf,
    #[arg(long)]
    pub out_ann: PathBuf,
    #[arg(long)]
    pub out_ref: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GtArgs {
    #[arg(long)]
    pub ann: PathBuf,
    /// Working-image width; defaults to the annotation's.
    #[arg(long)]
    pub width: Option<u32>,
    /// Working-image height; defaults to the annotation's.
    #[arg(long)]
    pub height: Option<u32>,
    #[arg(long, default_value_t = DEFAULT_DOWNSAMPLE as u32,
          value_parser = clap::value_parser!(u32).range(1..))]
    pub downsample: u32,
    #[arg(long)]
    pub out_maps: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OrientationArg {
    Character,
    Normal,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("source").required(true).args(["ann", "maps"])))]
pub struct RectifyArgs {
    #[arg(long)]
    pub image: PathBuf,
    #[arg(long)]
    pub ann: Option<PathBuf>,
    #[arg(long)]
    pub maps: Option<PathBuf>,
    /// Which annotated word to rectify.
    #[arg(long, default_value_t = 0, requires = "ann")]
    pub instance: usize,
    #[arg(long, default_value_t = DEFAULT_K,
          value_parser = RangedU64ValueParser::<usize>::new().range(2..))]
    pub k: usize,
    /// Defaults to the input image width.
    #[arg(long)]
    pub out_width: Option<usize>,
    /// Defaults to the input image height.
    #[arg(long)]
    pub out_height: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_LAMBDA)]
    pub lambda: f64,
    /// TCL threshold used with `--maps`.
    #[arg(long, default_value_t = DEFAULT_THRESHOLD)]
    pub threshold: f64,
    #[arg(long, value_enum, default_value_t = OrientationArg::Character)]
    pub orientation: OrientationArg,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct ExtractArgs {
    #[arg(long)]
    pub maps: PathBuf,
    #[arg(long, default_value_t = DEFAULT_THRESHOLD)]
    pub threshold: f64,
    #[arg(long)]
    pub out_json: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Roundtrip,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long, value_enum, default_value_t = Suite::Roundtrip)]
    pub suite: Suite,
    #[arg(long, default_value_t = 20)]
    pub cases: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_K,
          value_parser = RangedU64ValueParser::<usize>::new().range(2..))]
    pub k: usize,
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// JSON file overriding the pass/fail thresholds.
    #[arg(long)]
    pub thresholds: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct LossArgs {
    #[arg(long)]
    pub pred_maps: PathBuf,
    #[arg(long)]
    pub gt_maps: PathBuf,
    /// Six comma-separated weights: tcl, s, sin theta, cos theta, sin phi, cos phi.
    #[arg(long, default_value = "1,1,1,1,1,1", value_parser = parse_weights)]
    pub weights: GeoLossWeights,
    #[arg(long, default_value_t = DEFAULT_THRESHOLD)]
    pub threshold: f64,
}

fn parse_numbers(s: &str) -> Result<Vec<f64>, String> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| format!("`{t}` is not a finite number"))
        })
        .collect()
}

fn parse_curve(s: &str) -> Result<CurveKind, String> {
    let (name, rest) = s.split_once(':').unwrap_or((s, ""));
    match name {
        "straight" if rest.is_empty() => Ok(CurveKind::Straight),
        "arc" => {
            let span = rest
                .parse::<f64>()
                .map_err(|_| format!("arc needs a span in degrees, got `{rest}`"))?;
            Ok(CurveKind::Arc { span_deg: span })
        }
        "bezier" => {
            let v = parse_numbers(rest)?;
            if v.len() != 8 {
                return Err(format!("bezier needs 8 numbers, got {}", v.len()));
            }
            Ok(CurveKind::CubicBezier {
                controls: [
                    Point2::new(v[0], v[1]),
                    Point2::new(v[2], v[3]),
                    Point2::new(v[4], v[5]),
                    Point2::new(v[6], v[7]),
                ],
            })
        }
        _ => Err(format!("unknown curve `{s}`")),
    }
}

fn parse_size(s: &str) -> Result<(f64, f64), String> {
    let (w, h) = s
        .split_once('x')
        .ok_or_else(|| format!("expected WIDTHxHEIGHT, got `{s}`"))?;
    let parse = |t: &str| {
        t.parse::<f64>()
            .ok()
            .filter(|v| *v > 0.0 && v.is_finite())
            .ok_or_else(|| format!("`{t}` is not a positive size"))
    };
    Ok((parse(w)?, parse(h)?))
}

fn parse_weights(s: &str) -> Result<GeoLossWeights, String> {
    let v = parse_numbers(s)?;
    let arr: [f64; 6] = v
        .try_into()
        .map_err(|v: Vec<f64>| format!("expected 6 weights, got {}", v.len()))?;
    Ok(GeoLossWeights(arr))
}

/// Failure of one command, carrying its exit code.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Runtime(String),
    Data(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Data(e)
    }
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Data(Error::NoText) => EXIT_NO_TEXT,
            Failure::Data(_) | Failure::Runtime(_) => EXIT_RUNTIME,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) => format!("usage error: {m}"),
            Failure::Runtime(m) => m.clone(),
            Failure::Data(e) => e.to_string(),
        }
    }
}

type CmdResult = Result<(), Failure>;

fn read_file(path: &Path) -> Result<Vec<u8>, Failure> {
    fs::read(path).map_err(|e| Failure::Runtime(format!("cannot read {}: {e}", path.display())))
}

fn write_file(path: &Path, bytes: &[u8]) -> CmdResult {
    fs::write(path, bytes)
        .map_err(|e| Failure::Runtime(format!("cannot write {}: {e}", path.display())))
}

fn emit_json(out: &mut dyn Write, value: &impl Serialize) -> CmdResult {
    let text = serde_json::to_string_pretty(value).expect("results are serializable");
    writeln!(out, "{text}").map_err(|e| Failure::Runtime(format!("stdout: {e}")))
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(stderr, "{}", e.render());
                EXIT_USAGE
            } else {
                let _ = write!(stdout, "{}", e.render());
                EXIT_OK
            };
            return code;
        }
    };
    match execute(cli.command, stdout, stderr) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(stderr, "{}", f.message());
            f.code()
        }
    }
}

/// Entry point for the binary.
pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

fn execute(command: Command, stdout: &mut dyn Write, stderr: &mut dyn Write) -> CmdResult {
    match command {
        Command::Gen(a) => cmd_gen(a, stdout),
        Command::Gt(a) => cmd_gt(a, stdout),
        Command::Rectify(a) => cmd_rectify(a, stdout),
        Command::Extract(a) => cmd_extract(a, stdout),
        Command::Eval(a) => cmd_eval(a, stdout, stderr),
        Command::Loss(a) => cmd_loss(a, stdout),
    }
}

#[derive(Serialize)]
struct GenSummary {
    image: String,
    annotation: String,
    width: usize,
    height: usize,
    chars: usize,
    transcript: String,
}

fn cmd_gen(a: GenArgs, stdout: &mut dyn Write) -> CmdResult {
    let spec = CurveSpec::new(a.curve, a.chars)
        .with_char_size(a.char_size.0, a.char_size.1)
        .with_tilt(a.tilt)
        .with_seed(a.seed);
    spec.validate().map_err(|e| Failure::Usage(e.to_string()))?;
    if a.width == 0 || a.height == 0 {
        return Err(Failure::Usage("canvas dims must be >= 1".into()));
    }
    let sample = generate(&spec, a.height, a.width).map_err(|e| match e {
        Error::DoesNotFit(_) | Error::InvalidArgument(_) => Failure::Usage(e.to_string()),
        other => Failure::Data(other),
    })?;
    let image_name = a
        .out_image
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default();
    let doc = AnnotationDoc {
        image: image_name.clone(),
        width: a.width as u32,
        height: a.height as u32,
        instances: vec![sample.instance.clone()],
    };
    write_file(&a.out_image, &write_image(&sample.image))?;
    write_file(&a.out_ann, &write_annotation(&doc))?;
    if let Some(path) = &a.out_ref {
        write_file(path, &write_image(&sample.straight_reference))?;
    }
    emit_json(
        stdout,
        &GenSummary {
            image: image_name,
            annotation: a.out_ann.display().to_string(),
            width: a.width,
            height: a.height,
            chars: a.chars,
            transcript: spec.glyphs(),
        },
    )
}

#[derive(Serialize)]
struct GtSummary {
    height: usize,
    width: usize,
    downsample: usize,
    tcl_pixels: usize,
}

fn cmd_gt(a: GtArgs, stdout: &mut dyn Write) -> CmdResult {
    let doc = read_annotation(&read_file(&a.ann)?)?;
    let width = a.width.unwrap_or(doc.width) as usize;
    let height = a.height.unwrap_or(doc.height) as usize;
    let d = a.downsample as usize;
    let (mh, mw) = (height / d, width / d);
    if mh == 0 || mw == 0 {
        return Err(Failure::Usage(format!(
            "downsample {d} leaves an empty map for a {height}x{width} image"
        )));
    }
    let maps = render_gt_maps(&doc.instances, mh, mw, d)?;
    write_file(&a.out_maps, &write_maps(&maps))?;
    emit_json(
        stdout,
        &GtSummary {
            height: mh,
            width: mw,
            downsample: d,
            tcl_pixels: maps.tcl_mask(DEFAULT_THRESHOLD).count(),
        },
    )
}

fn check_threshold(t: f64) -> CmdResult {
    if t > 0.0 && t < 1.0 {
        Ok(())
    } else {
        Err(Failure::Usage(format!("threshold {t} is not in (0, 1)")))
    }
}

#[derive(Serialize)]
struct RectifySummary {
    output: String,
    height: usize,
    width: usize,
    k: usize,
    center_points: usize,
}

fn cmd_rectify(a: RectifyArgs, stdout: &mut dyn Write) -> CmdResult {
    check_threshold(a.threshold)?;
    if !(a.lambda >= 0.0 && a.lambda.is_finite()) {
        return Err(Failure::Usage(format!("lambda {} must be >= 0", a.lambda)));
    }
    let image = read_image(&read_file(&a.image)?)?;
    let polyline = match (&a.ann, &a.maps) {
        (Some(ann), None) => {
            let doc = read_annotation(&read_file(ann)?)?;
            let inst = doc.instances.get(a.instance).ok_or_else(|| {
                Failure::Runtime(format!(
                    "annotation has {} instance(s); --instance {} is out of range",
                    doc.instances.len(),
                    a.instance
                ))
            })?;
            build_center_point_list(inst)?
        }
        (None, Some(maps)) => extract_center_line(&read_maps(&read_file(maps)?)?, a.threshold)?,
        _ => return Err(Failure::Usage("exactly one of --ann and --maps is required".into())),
    };
    let out_h = a.out_height.unwrap_or(image.height());
    let out_w = a.out_width.unwrap_or(image.width());
    if out_h < 2 || out_w < 2 {
        return Err(Failure::Usage("output dims must be >= 2".into()));
    }
    let params = RectifyParams::new(out_h, out_w)
        .with_k(a.k)
        .with_lambda(a.lambda)
        .with_orientation(match a.orientation {
            OrientationArg::Character => OrientationSource::Character,
            OrientationArg::Normal => OrientationSource::CenterLineNormal,
        });
    let rectified = rectify_with(&image, &polyline, &params)?;
    write_file(&a.out, &write_image(&rectified))?;
    emit_json(
        stdout,
        &RectifySummary {
            output: a.out.display().to_string(),
            height: out_h,
            width: out_w,
            k: a.k,
            center_points: polyline.len(),
        },
    )
}

#[derive(Serialize)]
struct PolylineSample {
    x: f64,
    y: f64,
    s: f64,
    cos_theta: f64,
    sin_theta: f64,
    cos_phi: f64,
    sin_phi: f64,
}

#[derive(Serialize)]
struct ExtractOutput {
    samples: Vec<PolylineSample>,
}

fn cmd_extract(a: ExtractArgs, stdout: &mut dyn Write) -> CmdResult {
    check_threshold(a.threshold)?;
    let maps = read_maps(&read_file(&a.maps)?)?;
    let poly = extract_center_line(&maps, a.threshold)?;
    let out = ExtractOutput {
        samples: poly
            .samples()
            .iter()
            .map(|s| PolylineSample {
                x: s.center.x,
                y: s.center.y,
                s: s.scale,
                cos_theta: s.theta.cos,
                sin_theta: s.theta.sin,
                cos_phi: s.phi.cos,
                sin_phi: s.phi.sin,
            })
            .collect(),
    };
    if let Some(path) = &a.out_json {
        let mut text = serde_json::to_vec_pretty(&out).expect("serializable");
        text.push(b'\n');
        write_file(path, &text)?;
    }
    emit_json(stdout, &out)
}

fn cmd_eval(a: EvalArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> CmdResult {
    if a.cases == 0 {
        return Err(Failure::Usage("--cases must be >= 1".into()));
    }
    let thresholds = match &a.thresholds {
        Some(path) => serde_json::from_slice::<EvalThresholds>(&read_file(path)?)
            .map_err(|e| Failure::Runtime(format!("bad thresholds file: {e}")))?,
        None => EvalThresholds::default(),
    };
    let report = match a.suite {
        Suite::Roundtrip => run_roundtrip_suite(a.cases, a.seed, a.k, thresholds)?,
    };
    for c in &report.cases {
        let _ = writeln!(
            stderr,
            "case {:>3}  {:<12} tilt {:>6.1}  mae(character) {:.4}  mae(normal) {:.4}  {}",
            c.id,
            match c.spec.kind {
                CurveKind::Straight => "straight".to_string(),
                CurveKind::Arc { span_deg } => format!("arc {span_deg:.0}"),
                CurveKind::CubicBezier { .. } => "bezier".to_string(),
            },
            c.spec.tilt_deg,
            c.mae_character,
            c.mae_normal,
            if c.passed() { "ok" } else { "FAIL" }
        );
    }
    let _ = writeln!(
        stderr,
        "aggregate: mae(character) {:.4}  mae(normal) {:.4}  tilted: {:.4} vs {:.4} over {} case(s)",
        report.aggregate.mae_character_mean,
        report.aggregate.mae_normal_mean,
        report.aggregate.tilted_mae_character_mean,
        report.aggregate.tilted_mae_normal_mean,
        report.aggregate.tilted_cases
    );
    if let Some(path) = &a.report {
        let mut text = serde_json::to_vec_pretty(&report).expect("serializable");
        text.push(b'\n');
        write_file(path, &text)?;
    }
    emit_json(stdout, &report)?;
    if report.pass {
        Ok(())
    } else {
        Err(Failure::Runtime(format!(
            "threshold breach in case(s): {:?}",
            report.failing_cases
        )))
    }
}

fn cmd_loss(a: LossArgs, stdout: &mut dyn Write) -> CmdResult {
    check_threshold(a.threshold)?;
    let pred = read_maps(&read_file(&a.pred_maps)?)?;
    let gt = read_maps(&read_file(&a.gt_maps)?)?;
    let breakdown = geo_loss(&pred, &gt, &gt.tcl_mask(a.threshold), &a.weights)?;
    emit_json(stdout, &breakdown)
}
