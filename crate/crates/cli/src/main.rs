use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use specball::campaign::{run_campaign, CampaignConfig, CampaignKind, ReportFormat};
use specball::extremal::{
    companion_nd, example_fd, key_example_grid, key_example_table, sample_sn, StructureTag, StructuredMatrix,
};
use specball::spectrum::{analyze, krylov_minpoly_oracle, DEFAULT_MINPOLY_TOL};
use specball::{CMatrix, Complex64, Error};

const EXIT_USAGE: u8 = 3;

#[derive(Parser)]
#[command(name = "specball", version, about = "Schwarz-type bounds on the spectral unit ball: checks, extremal maps, campaigns")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Two-point bound on random polynomial disc maps.
    VerifyThm1(CampaignArgs),
    /// Growth bound on random self-maps of the ball.
    VerifyThm2(CampaignArgs),
    /// One-point special case for disc maps vanishing at a point.
    VerifyGlobevnik(CampaignArgs),
    /// Origin-fixing self-maps (pulled back to the origin).
    VerifyRansfordWhite(CampaignArgs),
    /// Equality cases of both bounds.
    Sharpness(CampaignArgs),
    /// Failure of the naive growth bound next to the sharp one.
    Counterexample(CampaignArgs),
    /// Sub-mean-value property of the spectral radius on circles.
    Subharmonic(CampaignArgs),
    /// Radius table of the nilpotent-block key example.
    ReproExample(OutputArgs),
    /// Spectral structure of a matrix given as a JSON literal.
    Analyze {
        /// File with {"n": .., "re": [..], "im": [..]}.
        #[arg(long)]
        matrix: PathBuf,
        /// Relative rank tolerance.
        #[arg(long, default_value_t = DEFAULT_MINPOLY_TOL)]
        tol: f64,
    },
    /// Emit a structured test matrix with its structure tag.
    Fixture {
        #[arg(value_enum)]
        kind: FixtureKind,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        d: usize,
        /// Real part of the block parameter.
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        re: f64,
        /// Imaginary part of the block parameter.
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        im: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FixtureKind {
    /// N_d(ζ) ⊕ ζ I_{n-d}
    KeyExample,
    /// N_d(w)
    Companion,
    /// random element with a single eigenvalue
    Sn,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

impl From<Format> for ReportFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Json => ReportFormat::Json,
            Format::Csv => ReportFormat::Csv,
        }
    }
}

#[derive(Args)]
struct OutputArgs {
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// No summary on stderr and no report on stdout.
    #[arg(long)]
    quiet: bool,
}

#[derive(Args)]
struct CampaignArgs {
    /// Matrix dimension; drawn per trial when omitted.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Maximum degree of sampled disc maps.
    #[arg(long, default_value_t = 3)]
    degree: usize,
    /// Maximum depth of sampled self-maps.
    #[arg(long, default_value_t = 3)]
    depth: usize,
    /// Check tolerance: a check fails when slack < -tol.
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    #[command(flatten)]
    output: OutputArgs,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    let (kind, args) = match &cli.command {
        Command::VerifyThm1(a) => (CampaignKind::Thm1, a),
        Command::VerifyThm2(a) => (CampaignKind::Thm2, a),
        Command::VerifyGlobevnik(a) => (CampaignKind::Globevnik, a),
        Command::VerifyRansfordWhite(a) => (CampaignKind::RansfordWhite, a),
        Command::Sharpness(a) => (CampaignKind::Sharpness, a),
        Command::Counterexample(a) => (CampaignKind::Counterexample, a),
        Command::Subharmonic(a) => (CampaignKind::Subharmonic, a),
        Command::ReproExample(out) => return repro_example(out),
        Command::Analyze { matrix, tol } => return analyze_file(matrix, *tol),
        Command::Fixture { kind, n, d, re, im, seed } => return fixture(*kind, *n, *d, Complex64::new(*re, *im), *seed),
    };
    campaign(kind, args)
}

fn campaign(kind: CampaignKind, args: &CampaignArgs) -> Result<u8, Error> {
    let mut cfg = CampaignConfig::new(kind);
    cfg.n = args.n;
    cfg.trials = args.trials;
    cfg.seed = args.seed;
    cfg.degree = args.degree;
    cfg.depth = args.depth;
    cfg.tol_check = args.tol;
    let report = run_campaign(&cfg)?;
    emit(&report.render(args.output.format.into()), &args.output)?;
    if !args.output.quiet {
        let min = report.min_slack.map_or("none".to_string(), |m| format!("{m:.3e}"));
        eprintln!(
            "{}: {} trials, min slack {}, {} violations, {} generator failures, {} skipped, {:.2}s",
            serde_json::to_value(kind).unwrap().as_str().unwrap_or("campaign"),
            report.trials,
            min,
            report.violations.len(),
            report.generator_failures,
            report.skipped.len(),
            report.wall_time_s
        );
    }
    Ok(report.exit_code() as u8)
}

fn emit(text: &str, out: &OutputArgs) -> Result<(), Error> {
    match &out.out {
        Some(path) => std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display()))),
        None => {
            if !out.quiet {
                print_out(text);
            }
            Ok(())
        }
    }
}

/// Writes to stdout; a closed pipe (`| head`) is not an error.
fn print_out(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{}", text.trim_end());
}

fn repro_example(out: &OutputArgs) -> Result<u8, Error> {
    let rows = key_example_table(&[3, 4, 5], &key_example_grid(), DEFAULT_MINPOLY_TOL)?;
    let text = match out.format {
        Format::Json => serde_json::to_string_pretty(&rows).expect("rows serialize"),
        Format::Csv => {
            let mut s = String::from("n,d,zeta_re,zeta_im,radius,expected,abs_error,powers_exceed\n");
            for r in &rows {
                s.push_str(&format!(
                    "{},{},{},{},{:e},{:e},{:e},{}\n",
                    r.n, r.d, r.zeta.re, r.zeta.im, r.radius, r.expected, r.abs_error, r.powers_exceed
                ));
            }
            s
        }
    };
    emit(&text, out)?;
    let ok = rows.iter().all(|r| r.abs_error <= 1e-10 && r.powers_exceed);
    if !out.quiet {
        let worst = rows.iter().map(|r| r.abs_error).fold(0.0, f64::max);
        eprintln!("key example: {} rows, max |r - |z|^(1/d)| = {worst:.2e}, gaps strict: {ok}", rows.len());
    }
    Ok(if ok { 0 } else { 1 })
}

fn read_matrix(path: &Path) -> Result<CMatrix, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))
}

fn analyze_file(path: &Path, tol: f64) -> Result<u8, Error> {
    let a = read_matrix(path)?;
    let s = analyze(&a, tol)?;
    let out = serde_json::json!({
        "n": a.n(),
        "spectral_radius": s.radius(),
        "spectrum": s.spectrum.points,
        "minpoly": s.minpoly,
        "ambiguous": s.ambiguity.is_some(),
        "krylov_degree": krylov_minpoly_oracle(&a).ok().map(|p| p.degree),
        "digest": a.digest(),
    });
    print_out(&serde_json::to_string_pretty(&out).expect("json"));
    Ok(0)
}

fn fixture(kind: FixtureKind, n: usize, d: usize, param: Complex64, seed: u64) -> Result<u8, Error> {
    let fixture = match kind {
        FixtureKind::KeyExample => example_fd(n, d, param)?,
        FixtureKind::Companion => companion_nd(d, param)?,
        FixtureKind::Sn => {
            let matrix = sample_sn(n, seed)?;
            let index = analyze(&matrix, DEFAULT_MINPOLY_TOL)?.degree();
            let lambda = matrix.trace() / n as f64;
            StructuredMatrix { matrix, tag: StructureTag::ScalarPlusNilpotent { lambda, index } }
        }
    };
    print_out(&serde_json::to_string(&fixture).expect("fixture serializes"));
    Ok(0)
}
