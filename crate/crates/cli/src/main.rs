//! `sgenergy`: exact energy measures on the Sierpinski gasket from the command line.
//!
//! Exit codes: 0 success, 1 invariant failure, 2 argument error,
//! 3 internal cross-route disagreement.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use sg_energy::derivatives::{self, Dyadic};
use sg_energy::dynamics::{self, Arc, Histogram, SampledDensity};
use sg_energy::rational::{self, Rational};
use sg_energy::verify::{self, Suite};
use sg_energy::{bvectors, measures, report, BVector, Error, MeasureCoeffs, VertexAddress, Word};

const EXIT_INVARIANT: u8 = 1;
const EXIT_ARGUMENT: u8 = 2;
const EXIT_DISAGREEMENT: u8 = 3;

#[derive(Parser)]
#[command(
    name = "sgenergy",
    version,
    about = "Exact energy measures, Kusuoka derivatives and b-vector dynamics on the Sierpinski gasket",
    long_about = "Exact energy measures, Kusuoka derivatives and b-vector dynamics on the Sierpinski gasket.\n\n\
Formats:\n  word      string over 0,1,2; \"\" is the whole gasket\n  \
vertex    <word>:<corner>, e.g. 12:0 for F_1 F_2 (q_0)\n  \
coeffs    a0,a1,a2 rational literals (p, p/q or decimals) for a0 nu_0 + a1 nu_1 + a2 nu_2\n  \
rationals are printed reduced as p/q, or p when q = 1\n\n\
Exit codes: 0 success, 1 invariant failure, 2 argument error, 3 cross-route disagreement."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Measure of the cell F_w SG.
    Measure {
        #[arg(long)]
        coeffs: MeasureCoeffs,
        #[arg(long, default_value = "")]
        word: Word,
    },
    /// Radon-Nikodym derivative d nu_c / d nu at a vertex, by both closed forms.
    Derivative {
        #[arg(long)]
        coeffs: MeasureCoeffs,
        #[arg(long, allow_hyphen_values = true)]
        vertex: VertexAddress,
    },
    /// Weighted-average vector b^(w).
    Bvector {
        #[arg(long, default_value = "")]
        word: Word,
        #[arg(long, value_enum, default_value_t = Method::All)]
        method: Method,
    },
    /// b^(w) for every word of one level, CSV (word, b0..b2, float twins).
    Bscan {
        #[arg(long)]
        level: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Derivative values along an edge of F_w, ordered by dyadic position.
    EdgeProfile {
        #[arg(long)]
        coeffs: MeasureCoeffs,
        #[arg(long, default_value = "")]
        word: Word,
        /// Two distinct corners "j,k"; position 0 is F_w(q_j).
        #[arg(long, default_value = "1,2")]
        edge: Edge,
        #[arg(long, default_value_t = 6)]
        depth: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// b-vector IFS experiments: histograms of level clouds and boundary orbits.
    Ifs {
        #[command(subcommand)]
        experiment: Experiment,
    },
    /// Runs invariant suites; exits 1 if any check fails.
    Verify {
        #[arg(long, default_value = "all", value_parser = Suite::NAMES)]
        suite: String,
        #[arg(long, default_value_t = 4)]
        max_depth: usize,
    },
}

#[derive(Subcommand)]
enum Experiment {
    /// Angular distribution of the 3^m points b^(w), |w| = m (mean-one normalized).
    Angular {
        #[arg(long, default_value_t = 11)]
        level: usize,
        #[arg(long, default_value_t = 100)]
        slices: usize,
        #[arg(long, value_enum, default_value_t = ArcArg::Third)]
        arc: ArcArg,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Radial distribution over [0, 1/sqrt 6] (ratios of the cloud size).
    Radial {
        #[arg(long, default_value_t = 10)]
        level: usize,
        #[arg(long, default_value_t = 300)]
        bins: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Orbits of three boundary seeds under all words in g_0, g_1, g_2 (mean-one normalized).
    Orbit {
        #[arg(long, default_value_t = 14)]
        iters: usize,
        /// Bins on the whole circle; only bins inside the arc are reported.
        #[arg(long, default_value_t = 800)]
        bins: usize,
        #[arg(long, value_enum, default_value_t = ArcArg::Sixth)]
        arc: ArcArg,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Invariant-density residual of the level-m angular density against the uniform density.
    Residual {
        #[arg(long, default_value_t = 13)]
        level: usize,
        /// Bins on the whole circle (a multiple of 3 keeps the exact rotation symmetry).
        #[arg(long, default_value_t = 300)]
        bins: usize,
        #[arg(long)]
        threads: Option<usize>,
    },
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Worker threads for cloud enumeration (output does not depend on it).
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Svg,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Matrix,
    Recursion,
    Kusuoka,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum ArcArg {
    Full,
    Third,
    Sixth,
}

impl From<ArcArg> for Arc {
    fn from(a: ArcArg) -> Arc {
        match a {
            ArcArg::Full => Arc::Full,
            ArcArg::Third => Arc::Third,
            ArcArg::Sixth => Arc::Sixth,
        }
    }
}

#[derive(Clone, Copy)]
struct Edge(u8, u8);

impl std::str::FromStr for Edge {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let corner = |t: &str| match t.trim() {
            "0" => Ok(0),
            "1" => Ok(1),
            "2" => Ok(2),
            other => Err(format!("bad corner {other:?}")),
        };
        let (a, b) = s.split_once(',').ok_or("expected j,k")?;
        let (a, b) = (corner(a)?, corner(b)?);
        if a == b {
            return Err("corners must differ".into());
        }
        Ok(Edge(a, b))
    }
}

enum Failure {
    Argument(String),
    Invariant(String),
    Disagreement(String),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Argument(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut stdout = io::stdout().lock();
    match run(cli.command, &mut stdout) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let _ = stdout.flush();
            let (code, msg) = match f {
                Failure::Argument(m) => (EXIT_ARGUMENT, m),
                Failure::Invariant(m) => (EXIT_INVARIANT, m),
                Failure::Disagreement(m) => (EXIT_DISAGREEMENT, m),
                Failure::Io(e) => (EXIT_ARGUMENT, e.to_string()),
            };
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

fn exact_and_float(out: &mut impl Write, x: &Rational) -> io::Result<()> {
    writeln!(out, "{}", rational::format(x))?;
    writeln!(out, "float: {}", rational::to_f64(x))
}

fn run(command: Command, out: &mut impl Write) -> Result<(), Failure> {
    match command {
        Command::Measure { coeffs, word } => {
            exact_and_float(out, &measures::measure_of_cell(&coeffs, &word))?;
        }
        Command::Derivative { coeffs, vertex } => {
            let a = derivatives::rn_derivative(&coeffs, &vertex);
            let b = derivatives::rn_derivative_via_m(&coeffs, &vertex);
            if a != b {
                return Err(Failure::Disagreement(format!(
                    "limit-row route gives {a}, column route gives {b}"
                )));
            }
            exact_and_float(out, &a)?;
            writeln!(out, "routes: agree")?;
            writeln!(out, "vertex: {}", vertex.canonicalize())?;
        }
        Command::Bvector { word, method } => {
            let b = match method {
                Method::Matrix => bvectors::b_from_m(&word),
                Method::Recursion => bvectors::b_iterated(&word),
                Method::Kusuoka => bvectors::b_from_kusuoka(&word),
                Method::All => {
                    let m = bvectors::b_from_m(&word);
                    let r = bvectors::b_iterated(&word);
                    let k = bvectors::b_from_kusuoka(&word);
                    if m != r || m != k {
                        return Err(Failure::Disagreement(format!(
                            "matrix {m}, recursion {r}, kusuoka {k}"
                        )));
                    }
                    m
                }
            };
            print_bvector(out, &b)?;
        }
        Command::Bscan { level, out: o } => {
            with_threads(o.threads, || -> Result<(), Failure> {
                let rows = bvectors::level_scan(level)?;
                emit(&o, bvectors::level_scan_csv(&rows))
            })?;
        }
        Command::EdgeProfile {
            coeffs,
            word,
            edge,
            depth,
            out: o,
        } => {
            let rows = derivatives::edge_profile(&coeffs, &word, (edge.0, edge.1), depth)?;
            let svg = || {
                let pts: Vec<(f64, f64)> = rows
                    .iter()
                    .map(|(p, v)| (p.to_f64(), rational::to_f64(v)))
                    .collect();
                report::line_svg(&pts, &format!("edge {},{} of F_{}", edge.0, edge.1, word))
            };
            match o.format {
                Format::Csv => emit(&o, report::profile_csv(&rows))?,
                Format::Svg => emit(&o, svg())?,
                Format::Text => emit(&o, profile_text(&rows))?,
            }
        }
        Command::Ifs { experiment } => ifs(experiment, out)?,
        Command::Verify { suite, max_depth } => {
            let suite: Suite = suite.parse()?;
            let checks = verify::run(suite, max_depth)?;
            let mut failed = 0;
            for c in &checks {
                writeln!(out, "{c}")?;
                if !c.passed {
                    failed += 1;
                }
            }
            writeln!(out, "{} checks, {} failed", checks.len(), failed)?;
            if failed > 0 {
                return Err(Failure::Invariant(format!("{failed} invariant check(s) failed")));
            }
        }
    }
    Ok(())
}

fn print_bvector(out: &mut impl Write, b: &BVector) -> io::Result<()> {
    let f = b.to_f64();
    writeln!(out, "{b}")?;
    writeln!(out, "float: {},{},{}", f[0], f[1], f[2])
}

fn profile_text(rows: &[(Dyadic, Rational)]) -> String {
    rows.iter()
        .map(|(p, v)| format!("{p}\t{}\n", rational::format(v)))
        .collect()
}

fn histogram_text(h: &Histogram) -> String {
    h.counts
        .iter()
        .zip(h.normalized())
        .enumerate()
        .map(|(i, (c, v))| format!("[{:.6}, {:.6})\t{c}\t{v:.6}\n", h.edges[i], h.edges[i + 1]))
        .collect()
}

fn emit_histogram(o: &OutputArgs, h: &Histogram, title: &str) -> Result<(), Failure> {
    let body = match o.format {
        Format::Csv => report::histogram_csv(h),
        Format::Svg => report::histogram_svg(h, title),
        Format::Text => histogram_text(h),
    };
    emit(o, body)
}

fn emit(o: &OutputArgs, body: String) -> Result<(), Failure> {
    match &o.output {
        Some(path) => fs::write(path, body)?,
        None => io::stdout().lock().write_all(body.as_bytes())?,
    }
    Ok(())
}

fn with_threads<T: Send>(
    threads: Option<usize>,
    f: impl FnOnce() -> Result<T, Failure> + Send,
) -> Result<T, Failure> {
    match threads {
        None => f(),
        Some(0) => Err(Failure::Argument("--threads must be positive".into())),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Failure::Argument(e.to_string()))?;
            pool.install(f)
        }
    }
}

fn ifs(experiment: Experiment, out: &mut impl Write) -> Result<(), Failure> {
    match experiment {
        Experiment::Angular {
            level,
            slices,
            arc,
            out: o,
        } => {
            let h = with_threads(o.threads, || Ok(dynamics::angular_histogram(level, slices, arc.into())?))?;
            emit_histogram(&o, &h, &format!("angular distribution, level {level}"))?;
        }
        Experiment::Radial { level, bins, out: o } => {
            let h = with_threads(o.threads, || Ok(dynamics::radial_histogram(level, bins)?))?;
            emit_histogram(&o, &h, &format!("radial distribution, level {level}"))?;
        }
        Experiment::Orbit {
            iters,
            bins,
            arc,
            out: o,
        } => {
            let seeds = dynamics::default_orbit_seeds();
            let h = with_threads(o.threads, || {
                Ok(dynamics::boundary_orbit_histogram(&seeds, iters, bins, arc.into())?)
            })?;
            emit_histogram(&o, &h, &format!("boundary orbits, {iters} iterations"))?;
        }
        Experiment::Residual { level, bins, threads } => {
            let (uniform, cloud) = with_threads(threads, || {
                let h = dynamics::angular_histogram(level, bins, Arc::Full)?;
                let u = dynamics::invariant_density_residual(&SampledDensity::uniform(bins))?;
                let c = dynamics::invariant_density_residual(&h.density())?;
                Ok((u, c))
            })?;
            writeln!(out, "uniform_residual,{uniform:.12}")?;
            writeln!(out, "level_{level}_residual,{cloud:.12}")?;
        }
    }
    Ok(())
}
