use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use framedual_core::duality::{self, DualKind};
use framedual_core::gabor::{self, GaborLattice, GridSpec, Rational, SampledWindow};
use framedual_core::{frames, oplin, perturbation, Annihilator, Frame, LinearMap};

use crate::error::CliError;
use crate::export;
use crate::formats;
use crate::report::RunReport;

#[derive(Debug, Parser)]
#[command(name = "framedual", version, about = "Dual, approximately dual and g-dual frames")]
pub struct Cli {
    /// Also write the run report as JSON to this path.
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Dimension, count, optimal frame bounds and Riesz verdict of a frame.
    FrameInfo {
        frame: PathBuf,
        /// Write the eigenvalues of the frame operator as CSV.
        #[arg(long)]
        spectrum_csv: Option<PathBuf>,
    },
    /// Construct a canonical, approximately dual or g-dual frame.
    Dual(DualArgs),
    /// Classify a pair as dual, approx, gdual or none.
    Verify { phi: PathBuf, psi: PathBuf },
    /// Transfer an approximate dual (or g-dual) of PHI to the nearby frame PSI.
    Perturb(PerturbArgs),
    /// Gabor systems on a sampled periodic line.
    #[command(subcommand)]
    Gabor(GaborCommand),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum DualMode {
    Canonical,
    Approx,
    Gdual,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum OpKind {
    /// The operator is the mixed operator `A = T_Φ U_Ψ` (approx) or the
    /// corresponding operator (gdual).
    A,
    /// The operator is the factor `D` with `T_Φ U_Ψ = S^{1/2} D` (approx only).
    D,
}

#[derive(Debug, Args)]
pub struct DualArgs {
    pub frame: PathBuf,
    #[arg(long, value_enum, default_value = "canonical")]
    pub mode: DualMode,
    /// Operator JSON file for the approx and gdual modes.
    #[arg(long)]
    pub op_file: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "a")]
    pub op_kind: OpKind,
    /// `zero`, `random:SCALE` or `random:SEED:SCALE`.
    #[arg(long, default_value = "zero")]
    pub theta: String,
    /// Seed used when `--theta` does not name one.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct PerturbArgs {
    pub phi: PathBuf,
    pub psi: PathBuf,
    pub phi_ad: PathBuf,
    /// Treat the third frame as a g-dual rather than an approximate dual.
    #[arg(long)]
    pub gdual: bool,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args, Clone)]
pub struct GridArgs {
    /// Samples per unit.
    #[arg(long)]
    pub s: Option<usize>,
    /// Period in units.
    #[arg(long)]
    pub period: Option<usize>,
}

#[derive(Debug, Args, Clone)]
pub struct LatticeArgs {
    /// Time step as `p/q`.
    #[arg(long, default_value = "1")]
    pub a: String,
    /// Frequency step as `p/q`.
    #[arg(long)]
    pub b: Option<String>,
    /// Lattice JSON file, overriding `--a` and `--b`.
    #[arg(long)]
    pub lattice: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum CkMethod {
    Ck1,
    Ck2,
}

#[derive(Debug, Subcommand)]
pub enum GaborCommand {
    /// Sample a window: `bspline:N`, `char:c`, `gaussian:w` or
    /// `spline-quotient:N:d:c`.
    Window {
        #[arg(long)]
        window: String,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Dual window of a partition-of-unity window with support in [0, N].
    Dual {
        #[arg(long)]
        window: String,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        lattice: LatticeArgs,
        #[arg(long, value_enum, default_value = "ck1")]
        method: CkMethod,
        /// Support length N; inferred for `bspline:N`.
        #[arg(long)]
        order: Option<usize>,
        /// Comma-separated `a_{-N+1},...,a_{N-1}` for ck2, with `a_0 = b`
        /// and `a_n + a_{-n} = 2b`.
        #[arg(long)]
        coeffs: Option<String>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Approximately dual window `A^* S^{-1} g - g + S g^d`.
    ApproxDual {
        #[arg(long)]
        window: String,
        /// A dual window of `--window`.
        #[arg(long)]
        dual: String,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        lattice: LatticeArgs,
        /// Use `A = S_L / M_L` for the Gabor frame of this window.
        #[arg(long)]
        op_window: Option<String>,
        /// Use the operator in this JSON file.
        #[arg(long)]
        op_file: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Frame bounds, Janssen residual against a dual candidate and the
    /// painless-case check.
    Verify {
        #[arg(long)]
        window: String,
        #[arg(long)]
        dual: Option<String>,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        lattice: LatticeArgs,
        /// Run the painless-case check with support length N.
        #[arg(long)]
        painless: Option<usize>,
        #[arg(long)]
        residual_csv: Option<PathBuf>,
        #[arg(long)]
        weight_csv: Option<PathBuf>,
        #[arg(long)]
        spectrum_csv: Option<PathBuf>,
    },
    /// Parameter sweeps written as CSV.
    Sweep {
        /// Sweep `(c, c', a)` for characteristic windows with b = 1.
        #[arg(long, conflicts_with = "bspline")]
        char: bool,
        /// Sweep `b` for the first dual window of `B_N`.
        #[arg(long)]
        bspline: Option<usize>,
        /// Comma-separated `b` values for `--bspline`.
        #[arg(long)]
        b_values: Option<String>,
        /// Step of the `(c, c', a)` grid in (0, 1].
        #[arg(long, default_value = "1/4")]
        step: String,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long)]
        out: PathBuf,
    },
}

pub fn run(cli: &Cli) -> Result<RunReport, CliError> {
    let report = match &cli.command {
        Command::FrameInfo {
            frame,
            spectrum_csv,
        } => frame_info(frame, spectrum_csv.as_deref()),
        Command::Dual(args) => dual(args),
        Command::Verify { phi, psi } => verify(phi, psi),
        Command::Perturb(args) => perturb(args),
        Command::Gabor(cmd) => gabor_command(cmd),
    }?;
    Ok(report.finish())
}

fn frame_info(path: &Path, spectrum_csv: Option<&Path>) -> Result<RunReport, CliError> {
    let mut rep = RunReport::start("frame-info");
    rep.input(path.display());
    let phi = formats::load_frame(path)?;
    let bounds = frames::frame_bounds(&phi);
    rep.verdict("dim", phi.dim());
    rep.verdict("count", phi.count());
    rep.verdict("lower_bound", bounds.lower);
    rep.verdict("upper_bound", bounds.upper);
    rep.verdict("is_frame", bounds.is_frame());
    rep.verdict("riesz", frames::is_riesz(&phi));
    rep.verdict("condition", bounds.condition());
    if let Some(csv) = spectrum_csv {
        let s = frames::frame_operator(&phi);
        export::write_spectrum(csv, &oplin::herm_eigenvalues(&s)?)?;
        rep.artifact(csv.display());
    }
    Ok(rep)
}

fn parse_theta(phi: &Frame, text: &str, seed: Option<u64>) -> Result<Annihilator, CliError> {
    let bad = || CliError::Usage(format!("--theta `{text}`: expected zero, random:SCALE or random:SEED:SCALE"));
    let parts: Vec<&str> = text.split(':').collect();
    match parts.as_slice() {
        ["zero"] => Ok(Annihilator::zero(phi)),
        ["random", scale] => {
            let scale: f64 = scale.parse().map_err(|_| bad())?;
            Ok(frames::random_annihilator(phi, seed.unwrap_or(0), scale)?)
        }
        ["random", s, scale] => {
            let s: u64 = s.parse().map_err(|_| bad())?;
            let scale: f64 = scale.parse().map_err(|_| bad())?;
            Ok(frames::random_annihilator(phi, s, scale)?)
        }
        _ => Err(bad()),
    }
}

fn dual(args: &DualArgs) -> Result<RunReport, CliError> {
    let mut rep = RunReport::start("dual");
    rep.input(args.frame.display());
    let phi = formats::load_frame(&args.frame)?;
    let theta = parse_theta(&phi, &args.theta, args.seed)?;
    let op = match &args.op_file {
        Some(p) => {
            rep.input(p.display());
            Some(formats::load_operator(p)?)
        }
        None => None,
    };
    let need_op = || CliError::Usage("this mode needs --op-file".into());
    let id = LinearMap::identity(phi.dim());
    let (out, target) = match args.mode {
        DualMode::Canonical => {
            let out = if theta.norm() == 0.0 {
                frames::canonical_dual(&phi)?
            } else {
                duality::approx_dual_from_a(&phi, &id, &theta)?
            };
            (out, id)
        }
        DualMode::Approx => {
            let op = op.ok_or_else(need_op)?;
            match args.op_kind {
                OpKind::A => (duality::approx_dual_from_a(&phi, &op, &theta)?, op),
                OpKind::D => {
                    let roots = duality::FrameRoots::new(&phi)?;
                    let target = roots.sqrt.matmul(&op);
                    (duality::approx_dual_from_d(&phi, &op, &theta)?, target)
                }
            }
        }
        DualMode::Gdual => {
            let op = op.ok_or_else(need_op)?;
            let out = duality::gdual_from_a(&phi, &op, &theta)?;
            (out, oplin::inverse(&op)?)
        }
    };
    let mixed = frames::mixed_operator(&phi, &out)?;
    let kind = frames::classify_pair(&phi, &out)?.kind;
    rep.verdict("mode", format!("{:?}", args.mode).to_lowercase());
    rep.verdict("kind", kind.as_str());
    rep.verdict("rate", frames::rate_of(&mixed));
    rep.verdict("mixed_residual", oplin::operator_norm(&(&mixed - &target)));
    rep.verdict("theta_norm", theta.norm());
    formats::save_frame(&args.out, &out)?;
    rep.artifact(args.out.display());
    Ok(rep)
}

fn verify(phi_path: &Path, psi_path: &Path) -> Result<RunReport, CliError> {
    let mut rep = RunReport::start("verify");
    rep.input(phi_path.display());
    rep.input(psi_path.display());
    let phi = formats::load_frame(phi_path)?;
    let psi = formats::load_frame(psi_path)?;
    let r = duality::approx_factorization(&phi, &psi)?;
    let kind = if r.rate <= frames::DUAL_TOL { DualKind::Dual } else { r.kind };
    rep.verdict("kind", kind.as_str());
    rep.verdict("rate", r.rate);
    if let Some(f) = &r.factorization {
        rep.verdict("factor_residual", f.residual);
        rep.verdict("factor_rate", f.factor_rate);
        rep.verdict("d_invertible", f.d_invertible);
        rep.verdict("dd_star_max", f.dd_star_max);
        rep.verdict("bessel_bound_psi", f.bessel_bound);
        rep.verdict("dd_star_le_bessel_bound", f.bessel_check);
    }
    Ok(rep)
}

fn perturb(args: &PerturbArgs) -> Result<RunReport, CliError> {
    let mut rep = RunReport::start("perturb");
    for p in [&args.phi, &args.psi, &args.phi_ad] {
        rep.input(p.display());
    }
    let phi = formats::load_frame(&args.phi)?;
    let psi = formats::load_frame(&args.psi)?;
    let phi_ad = formats::load_frame(&args.phi_ad)?;
    let t = if args.gdual {
        perturbation::transfer_gdual(&phi, &psi, &phi_ad)?
    } else {
        perturbation::transfer_approx_dual(&phi, &psi, &phi_ad)?
    };
    rep.verdict("input_diff_bound", t.input_diff_bound);
    rep.verdict("theta_norm", t.theta_norm);
    rep.verdict("smallness", t.smallness);
    rep.verdict("predicted_diff_bound", t.predicted_diff_bound);
    rep.verdict("measured_diff_bound", t.measured_diff_bound);
    rep.verdict("bound_holds", t.measured_diff_bound <= t.predicted_diff_bound + 1e-9);
    rep.verdict("mixed_match_residual", t.mixed_match_residual);
    formats::save_frame(&args.out, &t.psi_ad)?;
    rep.artifact(args.out.display());
    Ok(rep)
}

/// A generated window or a window JSON file.
enum WindowSource {
    Bspline(usize),
    Char(Rational),
    Gaussian(f64),
    SplineQuotient(usize, f64, f64),
    File(PathBuf),
}

impl WindowSource {
    fn parse(text: &str) -> Result<Self, CliError> {
        let bad = |what: &str| CliError::Usage(format!("window `{text}`: {what}"));
        let parts: Vec<&str> = text.split(':').collect();
        Ok(match parts.as_slice() {
            ["bspline", n] => Self::Bspline(n.parse().map_err(|_| bad("order must be a positive integer"))?),
            ["char", c] => Self::Char(formats::parse_rational(c)?),
            ["gaussian", w] => Self::Gaussian(w.parse().map_err(|_| bad("width must be a number"))?),
            ["spline-quotient", n, d, c] => Self::SplineQuotient(
                n.parse().map_err(|_| bad("order must be a positive integer"))?,
                d.parse().map_err(|_| bad("dilation must be a number"))?,
                c.parse().map_err(|_| bad("scale must be a number"))?,
            ),
            _ => Self::File(PathBuf::from(text)),
        })
    }

    /// Support length `N` with `supp ⊆ [0, N]`, where it is known.
    fn order(&self) -> Option<usize> {
        match self {
            Self::Bspline(n) => Some(*n),
            Self::Char(c) => Some(c.ceil().to_integer().max(1) as usize),
            _ => None,
        }
    }
}

/// A window with its support length, where known.
type LoadedWindow = (SampledWindow, Option<usize>);

/// Loads the windows, taking the grid from the first file among them, or
/// from the flags (with the given defaults) if all are generated.
fn load_windows(
    specs: &[&str],
    grid: &GridArgs,
    defaults: (usize, usize),
    rep: &mut RunReport,
) -> Result<(Vec<LoadedWindow>, GridSpec), CliError> {
    let sources: Vec<WindowSource> = specs.iter().map(|s| WindowSource::parse(s)).collect::<Result<_, _>>()?;
    let mut loaded: Vec<Option<SampledWindow>> = Vec::new();
    for src in &sources {
        loaded.push(match src {
            WindowSource::File(p) => {
                rep.input(p.display());
                Some(formats::load_window(p)?)
            }
            _ => None,
        });
    }
    let grid = match loaded.iter().flatten().next() {
        Some(w) => w.grid(),
        None => GridSpec::new(grid.s.unwrap_or(defaults.0), grid.period.unwrap_or(defaults.1))?,
    };
    let mut out = Vec::new();
    for (src, file) in sources.iter().zip(loaded) {
        let w = match (src, file) {
            (_, Some(w)) => w,
            (WindowSource::Bspline(n), None) => gabor::sample_bspline(*n, grid)?,
            (WindowSource::Char(c), None) => gabor::sample_char(*c, grid)?,
            (WindowSource::Gaussian(w), None) => gabor::sample_gaussian(*w, grid),
            (WindowSource::SplineQuotient(n, d, c), None) => gabor::sample_normalized_spline(*n, *d, *c, grid),
            (WindowSource::File(_), None) => unreachable!("files are loaded above"),
        };
        out.push((w, src.order()));
    }
    Ok((out, grid))
}

fn resolve_lattice(args: &LatticeArgs, rep: &mut RunReport) -> Result<GaborLattice, CliError> {
    if let Some(p) = &args.lattice {
        rep.input(p.display());
        return formats::load_lattice(p);
    }
    let b = args
        .b
        .as_deref()
        .ok_or_else(|| CliError::Usage("give --b or --lattice".into()))?;
    Ok(GaborLattice::new(formats::parse_rational(&args.a)?, formats::parse_rational(b)?)?)
}

const GABOR_DEFAULT_GRID: (usize, usize) = (10, 20);

fn gabor_command(cmd: &GaborCommand) -> Result<RunReport, CliError> {
    match cmd {
        GaborCommand::Window { window, grid, out, csv } => {
            let mut rep = RunReport::start("gabor window");
            let (ws, grid) = load_windows(&[window], grid, GABOR_DEFAULT_GRID, &mut rep)?;
            let w = &ws[0].0;
            rep.verdict("samples_per_unit", grid.samples_per_unit());
            rep.verdict("period", grid.period());
            rep.verdict("max_abs", w.values().iter().map(|v| v.norm()).fold(0.0, f64::max));
            formats::save_window(out, w)?;
            rep.artifact(out.display());
            if let Some(csv) = csv {
                export::write_windows(csv, &[("g", w)])?;
                rep.artifact(csv.display());
            }
            Ok(rep)
        }
        GaborCommand::Dual {
            window,
            grid,
            lattice,
            method,
            order,
            coeffs,
            out,
            csv,
        } => {
            let mut rep = RunReport::start("gabor dual");
            let (ws, _) = load_windows(&[window], grid, GABOR_DEFAULT_GRID, &mut rep)?;
            let (g, inferred) = &ws[0];
            let lat = resolve_lattice(lattice, &mut rep)?;
            if lat.a != Rational::from_integer(1) {
                return Err(CliError::Usage("the dual generators use integer shifts: --a must be 1".into()));
            }
            let order = order
                .or(*inferred)
                .ok_or_else(|| CliError::Usage("give --order for this window".into()))?;
            let gd = match method {
                CkMethod::Ck1 => gabor::ck_dual1(g, order, lat.b)?,
                CkMethod::Ck2 => {
                    let list = coeffs
                        .as_deref()
                        .ok_or_else(|| CliError::Usage("ck2 needs --coeffs".into()))?;
                    let parsed: Vec<Rational> = list
                        .split(',')
                        .map(formats::parse_rational)
                        .collect::<Result<_, _>>()?;
                    gabor::ck_dual2(g, order, lat.b, &parsed)?
                }
            };
            let residual = gabor::janssen_residual(g, &gd, &lat)?;
            rep.verdict("method", format!("{method:?}").to_lowercase());
            rep.verdict("order", order);
            rep.verdict("b", lat.b.to_string());
            rep.verdict("janssen_residual", residual);
            rep.verdict("dual", residual <= gabor::JANSSEN_TOL);
            formats::save_window(out, &gd)?;
            rep.artifact(out.display());
            if let Some(csv) = csv {
                export::write_windows(csv, &[("g", g), ("dual", &gd)])?;
                rep.artifact(csv.display());
            }
            Ok(rep)
        }
        GaborCommand::ApproxDual {
            window,
            dual,
            grid,
            lattice,
            op_window,
            op_file,
            out,
            csv,
        } => {
            let mut rep = RunReport::start("gabor approx-dual");
            let mut specs = vec![window.as_str(), dual.as_str()];
            if let Some(l) = op_window {
                specs.push(l);
            }
            let (ws, grid) = load_windows(&specs, grid, GABOR_DEFAULT_GRID, &mut rep)?;
            let lat = resolve_lattice(lattice, &mut rep)?;
            let op = match (op_window, op_file) {
                (Some(_), None) => {
                    let scaled = gabor::scaled_gabor_operator(&ws[2].0, &lat)?;
                    rep.verdict("scaling_lower_bound", scaled.bounds.lower);
                    rep.verdict("scaling_upper_bound", scaled.bounds.upper);
                    scaled.op
                }
                (None, Some(p)) => {
                    rep.input(p.display());
                    formats::load_operator(p)?
                }
                (None, None) => LinearMap::identity(grid.total()),
                (Some(_), Some(_)) => {
                    return Err(CliError::Usage("give at most one of --op-window and --op-file".into()))
                }
            };
            let (g, gd) = (&ws[0].0, &ws[1].0);
            let ad = gabor::approx_dual_window(g, gd, &op, &lat)?;
            let mixed = gabor::mixed_operator(g, &ad, &lat)?;
            rep.verdict("rate", frames::rate_of(&mixed));
            rep.verdict("target_rate", frames::rate_of(&op));
            rep.verdict("mixed_residual", oplin::operator_norm(&(&mixed - &op)));
            formats::save_window(out, &ad)?;
            rep.artifact(out.display());
            if let Some(csv) = csv {
                export::write_windows(csv, &[("g", g), ("dual", gd), ("approx_dual", &ad)])?;
                rep.artifact(csv.display());
            }
            Ok(rep)
        }
        GaborCommand::Verify {
            window,
            dual,
            grid,
            lattice,
            painless,
            residual_csv,
            weight_csv,
            spectrum_csv,
        } => {
            let mut rep = RunReport::start("gabor verify");
            let mut specs = vec![window.as_str()];
            if let Some(d) = dual {
                specs.push(d);
            }
            let (ws, _) = load_windows(&specs, grid, GABOR_DEFAULT_GRID, &mut rep)?;
            let lat = resolve_lattice(lattice, &mut rep)?;
            let g = &ws[0].0;
            let s = gabor::frame_operator(g, &lat)?;
            let spectrum = oplin::herm_eigenvalues(&s)?;
            let bounds = frames::FrameBounds {
                lower: spectrum.first().copied().unwrap_or(0.0).max(0.0),
                upper: spectrum.last().copied().unwrap_or(0.0).max(0.0),
            };
            rep.verdict("lower_bound", bounds.lower);
            rep.verdict("upper_bound", bounds.upper);
            rep.verdict("is_frame", bounds.is_frame());
            if let Some(path) = spectrum_csv {
                export::write_spectrum(path, &spectrum)?;
                rep.artifact(path.display());
            }
            if let Some(path) = weight_csv {
                let w = gabor::walnut_weight(g, lat.a)?;
                export::write_windows(path, &[("G", &w)])?;
                rep.artifact(path.display());
            }
            if let Some(order) = painless {
                let p = gabor::painless_check(g, &lat, *order)?;
                rep.verdict("painless_off_diagonal", p.off_diagonal);
                rep.verdict("painless_residual_G_over_b", p.weight_over_b_residual);
                rep.verdict("painless_residual_b_over_G", p.b_over_weight_residual);
                rep.verdict(
                    "painless_matches",
                    match p.matched {
                        gabor::PainlessFormula::WeightOverB => "G/b",
                        gabor::PainlessFormula::BOverWeight => "b/G",
                        gabor::PainlessFormula::Neither => "neither",
                    },
                );
            }
            if let Some((h, _)) = ws.get(1) {
                let table = gabor::janssen_table(g, h, &lat)?;
                let residual = table.iter().copied().fold(0.0, f64::max);
                let rate = frames::rate_of(&gabor::mixed_operator(g, h, &lat)?);
                rep.verdict("janssen_residual", residual);
                rep.verdict("rate", rate);
                rep.verdict("dual", residual <= gabor::JANSSEN_TOL);
                if let Some(path) = residual_csv {
                    let rows: Vec<Vec<String>> = table
                        .iter()
                        .enumerate()
                        .map(|(n, r)| vec![n.to_string(), format!("{r:?}")])
                        .collect();
                    export::write_table(path, &["n", "residual"], &rows)?;
                    rep.artifact(path.display());
                }
            }
            Ok(rep)
        }
        GaborCommand::Sweep {
            char,
            bspline,
            b_values,
            step,
            grid,
            out,
        } => {
            if *char {
                char_sweep(step, grid, out)
            } else if let Some(order) = bspline {
                let list = b_values
                    .as_deref()
                    .ok_or_else(|| CliError::Usage("--bspline needs --b-values".into()))?;
                bspline_sweep(*order, list, grid, out)
            } else {
                Err(CliError::Usage("choose --char or --bspline".into()))
            }
        }
    }
}

fn lcm_up_to(n: i64) -> i64 {
    fn gcd(a: i64, b: i64) -> i64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    (1..=n).fold(1, |acc, k| acc / gcd(acc, k) * k)
}

fn char_sweep(step: &str, grid: &GridArgs, out: &Path) -> Result<RunReport, CliError> {
    let mut rep = RunReport::start("gabor sweep --char");
    let step = formats::parse_rational(step)?;
    if step <= Rational::from_integer(0) || step > Rational::from_integer(1) {
        return Err(CliError::Usage("--step must lie in (0, 1]".into()));
    }
    let q = *step.denom();
    let grid = GridSpec::new(
        grid.s.unwrap_or(q as usize),
        grid.period.unwrap_or(lcm_up_to(q) as usize),
    )?;
    let values: Vec<Rational> = (1..)
        .map(|k| step * Rational::from_integer(k))
        .take_while(|v| *v <= Rational::from_integer(1))
        .collect();
    let mut rows = Vec::new();
    let (mut agree, mut duals) = (0usize, 0usize);
    for &c in &values {
        for &c2 in &values {
            for &a in &values {
                let v = gabor::char_dual_check(c, c2, a, grid)?;
                agree += usize::from(v.dual == v.criterion);
                duals += usize::from(v.dual);
                rows.push(vec![
                    c.to_string(),
                    c2.to_string(),
                    a.to_string(),
                    format!("{:?}", v.residual),
                    v.dual.to_string(),
                    v.criterion.to_string(),
                ]);
            }
        }
    }
    export::write_table(out, &["c", "c_prime", "a", "janssen_residual", "dual", "criterion"], &rows)?;
    rep.verdict("samples_per_unit", grid.samples_per_unit());
    rep.verdict("period", grid.period());
    rep.verdict("cells", rows.len());
    rep.verdict("dual_cells", duals);
    rep.verdict("agreeing_cells", agree);
    rep.artifact(out.display());
    Ok(rep)
}

fn bspline_sweep(order: usize, list: &str, grid: &GridArgs, out: &Path) -> Result<RunReport, CliError> {
    let mut rep = RunReport::start("gabor sweep --bspline");
    let bs: Vec<Rational> = list.split(',').map(formats::parse_rational).collect::<Result<_, _>>()?;
    let grid = GridSpec::new(
        grid.s.unwrap_or(GABOR_DEFAULT_GRID.0),
        grid.period.unwrap_or(GABOR_DEFAULT_GRID.1),
    )?;
    let g = gabor::sample_bspline(order, grid)?;
    let mut rows = Vec::new();
    for b in bs {
        let lat = GaborLattice::new(Rational::from_integer(1), b)?;
        let bounds = gabor::frame_bounds(&g, &lat)?;
        let (residual, status) = match gabor::ck_dual1(&g, order, b) {
            Ok(d) => (gabor::janssen_residual(&g, &d, &lat)?, "ok".to_string()),
            Err(framedual_core::Error::HypothesisViolated { hypothesis, .. }) => (f64::NAN, hypothesis.to_string()),
            Err(e) => return Err(e.into()),
        };
        rows.push(vec![
            b.to_string(),
            format!("{:?}", bounds.lower),
            format!("{:?}", bounds.upper),
            status,
            format!("{residual:?}"),
            (residual <= gabor::JANSSEN_TOL).to_string(),
        ]);
    }
    export::write_table(
        out,
        &["b", "lower_bound", "upper_bound", "hypotheses", "janssen_residual", "dual"],
        &rows,
    )?;
    rep.verdict("order", order);
    rep.verdict("rows", rows.len());
    rep.artifact(out.display());
    Ok(rep)
}
