//! `focuskit` command line: score, curve, synth, search, bench.
//!
//! Exit codes: 0 success, 2 I/O or decode failure, 3 invalid arguments or
//! inputs. Every command validates before writing any file.

use std::ffi::OsString;
use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bench::{self, TimingReport};
use crate::imageio::{decode_image, write_curve_csv, GrayImage};
use crate::metrics::{self, MetricConfig, MetricId};
use crate::search::{self, SearchError};
use crate::stack::{self, FocusStack, LoadError};
use crate::synth::{self, SceneKind, SceneSpec, StackSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 2;
pub const EXIT_INVALID: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "focuskit",
    version,
    about = "Focus measures and autofocus over grayscale focus stacks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct MetricFlags {
    /// Tenengrad keeps Sobel magnitudes strictly above this
    #[arg(long, default_value_t = 0.0)]
    tenengrad_threshold: f64,
    /// SML keeps modified-Laplacian values at or above this
    #[arg(long, default_value_t = 0.0)]
    sml_threshold: f64,
    /// SML pixel spacing
    #[arg(long, default_value_t = 1)]
    sml_step: usize,
}

impl MetricFlags {
    fn config(&self) -> Result<MetricConfig, CliError> {
        let config = MetricConfig {
            tenengrad_threshold: self.tenengrad_threshold,
            sml_threshold: self.sml_threshold,
            sml_step: self.sml_step,
        };
        config.validate().map_err(CliError::invalid)?;
        Ok(config)
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Strategy {
    Full,
    Coarse,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Scene {
    Checker,
    Texture,
    Lowdetail,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Score one image with one metric
    Score {
        image: PathBuf,
        #[arg(long)]
        metric: MetricId,
        #[command(flatten)]
        flags: MetricFlags,
    },
    /// Score every image of a stack and write the focus curve as CSV
    Curve {
        manifest: PathBuf,
        #[arg(long)]
        metric: MetricId,
        /// CSV output path
        #[arg(long)]
        out: PathBuf,
        /// Odd moving-average width used when counting curve maxima
        #[arg(long, default_value_t = 3)]
        smoothing: usize,
        #[command(flatten)]
        flags: MetricFlags,
    },
    /// Write a synthetic focus stack (PGM files and manifest.csv)
    Synth {
        /// Output directory
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 96)]
        positions: usize,
        #[arg(long, default_value_t = 40)]
        true_focus: usize,
        /// Blur sigma in pixels per millimetre of defocus
        #[arg(long, default_value_t = 0.15)]
        rate: f64,
        #[arg(long, default_value_t = 1.0)]
        step_mm: f64,
        #[arg(long, value_enum, default_value_t = Scene::Texture)]
        scene: Scene,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Checkerboard cell size in pixels
        #[arg(long, default_value_t = 8)]
        cell: usize,
        #[arg(long, default_value_t = 160)]
        width: usize,
        #[arg(long, default_value_t = 120)]
        height: usize,
    },
    /// Find the best-focus position of a stack
    Search {
        manifest: PathBuf,
        #[arg(long)]
        metric: MetricId,
        #[arg(long, value_enum, default_value_t = Strategy::Full)]
        strategy: Strategy,
        #[arg(long, default_value_t = 8)]
        coarse_step: usize,
        #[command(flatten)]
        flags: MetricFlags,
    },
    /// Time every metric on one image
    Bench {
        image: PathBuf,
        #[arg(long, default_value_t = bench::DEFAULT_REPETITIONS)]
        reps: usize,
        #[command(flatten)]
        flags: MetricFlags,
    },
}

#[derive(Debug)]
struct CliError {
    code: i32,
    message: String,
}

impl CliError {
    fn io(e: impl fmt::Display) -> Self {
        Self {
            code: EXIT_IO,
            message: e.to_string(),
        }
    }

    fn invalid(e: impl fmt::Display) -> Self {
        Self {
            code: EXIT_INVALID,
            message: e.to_string(),
        }
    }
}

impl From<LoadError> for CliError {
    fn from(e: LoadError) -> Self {
        match e {
            LoadError::Io { .. } | LoadError::Decode { .. } => Self::io(e),
            LoadError::Manifest(_) | LoadError::Stack(_) => Self::invalid(e),
        }
    }
}

fn read_image(path: &Path) -> Result<GrayImage, CliError> {
    let bytes = fs::read(path).map_err(|e| CliError::io(format!("{}: {e}", path.display())))?;
    decode_image(&bytes, None).map_err(|e| CliError::io(format!("{}: {e}", path.display())))
}

fn write_out(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    writeln!(out, "{text}").map_err(CliError::io)
}

fn cmd_score(
    out: &mut dyn Write,
    image: &Path,
    metric: MetricId,
    flags: &MetricFlags,
) -> Result<(), CliError> {
    let config = flags.config()?;
    let img = read_image(image)?;
    let s = metrics::score(&img, metric, &config).map_err(CliError::invalid)?;
    write_out(out, &format!("{metric},{s}"))
}

fn cmd_curve(
    out: &mut dyn Write,
    manifest: &Path,
    metric: MetricId,
    csv_path: &Path,
    smoothing: usize,
    flags: &MetricFlags,
) -> Result<(), CliError> {
    let config = flags.config()?;
    if smoothing == 0 || smoothing.is_multiple_of(2) {
        return Err(CliError::invalid(format!(
            "--smoothing must be odd and positive, got {smoothing}"
        )));
    }
    let stack = stack::load_stack(manifest)?;
    let curve = stack::compute_curve(&stack, metric, &config).map_err(CliError::invalid)?;
    let csv = write_curve_csv(&curve).map_err(CliError::invalid)?;
    let summary = if curve.len() >= 3 {
        let d = stack::diagnose(&curve, smoothing).map_err(CliError::invalid)?;
        format!(
            "best_position={} index={} unimodal={} maxima={} sharpness={}",
            d.best_position,
            d.best_index,
            d.is_unimodal,
            d.local_maxima_count,
            d.peak_sharpness_ratio
        )
    } else {
        let best = stack::best_focus(&curve).map_err(CliError::invalid)?;
        format!(
            "best_position={} index={} unimodal=n/a maxima=n/a sharpness=n/a",
            best.position, best.index
        )
    };
    fs::write(csv_path, csv).map_err(|e| CliError::io(format!("{}: {e}", csv_path.display())))?;
    write_out(out, &summary)
}

#[allow(clippy::too_many_arguments)]
fn cmd_synth(
    out: &mut dyn Write,
    dir: &Path,
    positions: usize,
    true_focus: usize,
    rate: f64,
    step_mm: f64,
    scene: Scene,
    seed: u64,
    cell: usize,
    width: usize,
    height: usize,
) -> Result<(), CliError> {
    let kind = match scene {
        Scene::Checker => SceneKind::Checkerboard { cell },
        Scene::Texture => SceneKind::RandomTexture { seed },
        Scene::Lowdetail => SceneKind::LowDetail { seed },
    };
    let spec = StackSpec {
        scene: SceneSpec {
            kind,
            width,
            height,
        },
        n_positions: positions,
        true_focus_index: true_focus,
        position_step: step_mm,
        blur_rate: rate,
    };
    spec.validate().map_err(CliError::invalid)?;
    let generated = synth::generate_stack(&spec).map_err(CliError::invalid)?;
    let manifest = stack::save_stack(&generated, dir)
        .map_err(|e| CliError::io(format!("{}: {e}", dir.display())))?;
    write_out(
        out,
        &format!(
            "wrote {} images and {}",
            generated.len(),
            manifest.display()
        ),
    )
}

fn cmd_search(
    out: &mut dyn Write,
    manifest: &Path,
    metric: MetricId,
    strategy: Strategy,
    coarse_step: usize,
    flags: &MetricFlags,
) -> Result<(), CliError> {
    let config = flags.config()?;
    let stack: FocusStack = stack::load_stack(manifest)?;
    let trace = match strategy {
        Strategy::Full => search::full_sweep(&stack, metric, &config),
        Strategy::Coarse => search::coarse_to_fine(&stack, metric, &config, coarse_step),
    }
    .map_err(|e: SearchError| CliError::invalid(e))?;
    let probed: Vec<String> = trace.probed_indices.iter().map(usize::to_string).collect();
    write_out(
        out,
        &format!(
            "chosen_index={}\nchosen_position={}\nevaluations={}\nprobed={}",
            trace.chosen_index,
            trace.chosen_position,
            trace.evaluations,
            probed.join(",")
        ),
    )
}

fn cmd_bench(
    out: &mut dyn Write,
    image: &Path,
    reps: usize,
    flags: &MetricFlags,
) -> Result<(), CliError> {
    let config = flags.config()?;
    if reps == 0 {
        return Err(CliError::invalid("--reps must be at least 1"));
    }
    let img = read_image(image)?;
    // check every metric's preconditions before timing anything
    for m in MetricId::ALL {
        metrics::score(&img, m, &config).map_err(CliError::invalid)?;
    }
    let reports = bench::time_all(&img, &config, reps).map_err(CliError::invalid)?;
    let mut text = String::from(TimingReport::CSV_HEADER);
    for r in &reports {
        text.push('\n');
        text.push_str(&r.csv_row());
    }
    write_out(out, &text)
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Score {
            image,
            metric,
            flags,
        } => cmd_score(out, &image, metric, &flags),
        Command::Curve {
            manifest,
            metric,
            out: csv,
            smoothing,
            flags,
        } => cmd_curve(out, &manifest, metric, &csv, smoothing, &flags),
        Command::Synth {
            out: dir,
            positions,
            true_focus,
            rate,
            step_mm,
            scene,
            seed,
            cell,
            width,
            height,
        } => cmd_synth(
            out, &dir, positions, true_focus, rate, step_mm, scene, seed, cell, width, height,
        ),
        Command::Search {
            manifest,
            metric,
            strategy,
            coarse_step,
            flags,
        } => cmd_search(out, &manifest, metric, strategy, coarse_step, &flags),
        Command::Bench { image, reps, flags } => cmd_bench(out, &image, reps, &flags),
    }
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_INVALID
                }
            };
        }
    };
    match dispatch(cli, out) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message);
            e.code
        }
    }
}
