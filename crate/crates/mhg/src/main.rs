//! Command-line front end: single evaluations, grid sweeps with CSV output,
//! distribution curves, and benchmarks.

use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mhg::jack::{jack_eval, jack_eval_c};
use mhg::stats::{
    lmax_cdf_laguerre, lmax_cdf_wishart, lmin_normalization, lmin_pdf_laguerre,
    sample_wishart_trace, EnsembleParams, TracePdfWishart,
};
use mhg::{hg_general, hg_identity, Error, Partition, SeriesParameters, TruncationResult};

#[derive(Parser)]
#[command(
    name = "mhg",
    version,
    about = "Truncated hypergeometric functions of a matrix argument",
    max_term_width = 100
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate pFq at X = diag(x), optionally with a second matrix argument
    Eval(EvalArgs),
    /// Evaluate pFq at X = xI_n (cost independent of n), single x or grid
    EvalIdentity(EvalIdentityArgs),
    /// Evaluate a single Jack function J_kappa (or C_kappa) at given eigenvalues
    Jack(JackArgs),
    /// C.d.f. of the largest eigenvalue (beta-Laguerre or Wishart)
    CdfLmax(CdfLmaxArgs),
    /// P.d.f. of the smallest eigenvalue of the beta-Laguerre ensemble
    PdfLmin(PdfLminArgs),
    /// P.d.f. of the trace of a Wishart matrix
    PdfTrace(PdfTraceArgs),
    /// Sample Wishart traces (diagonal covariance), one value per line
    SampleTrace(SampleTraceArgs),
    /// Time evaluations across a grid of matrix sizes or truncation degrees
    Bench(BenchArgs),
    /// Run quick internal consistency checks
    Selftest,
}

#[derive(Args)]
struct SeriesFlags {
    /// Truncation degree: sum over all partitions of weight at most m
    #[arg(long)]
    m: usize,
    /// Jack parameter alpha (2 = zonal, 1 = Schur)
    #[arg(long, default_value_t = 2.0, allow_hyphen_values = true)]
    alpha: f64,
    /// Numerator parameters, comma-separated; empty string for p = 0
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    a: String,
    /// Denominator parameters, comma-separated; empty string for q = 0
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    b: String,
}

impl SeriesFlags {
    fn build(&self) -> Result<SeriesParameters, Error> {
        SeriesParameters::new(self.alpha, parse_list(&self.a)?, parse_list(&self.b)?, self.m)
    }
}

#[derive(Args)]
struct OutputFlags {
    /// Write CSV to this path instead of printing to standard output
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Significant digits in printed values
    #[arg(long, default_value_t = 15, value_parser = clap::value_parser!(u32).range(1..=17))]
    digits: u32,
}

#[derive(Args)]
struct EvalArgs {
    #[command(flatten)]
    series: SeriesFlags,
    /// Eigenvalues of X: inline comma list or a path to a text file
    #[arg(long, allow_hyphen_values = true)]
    x: String,
    /// Eigenvalues of a second matrix argument Y
    #[arg(long, allow_hyphen_values = true)]
    two_arg_y: Option<String>,
    #[command(flatten)]
    out: OutputFlags,
}

#[derive(Args)]
struct EvalIdentityArgs {
    #[command(flatten)]
    series: SeriesFlags,
    /// Matrix size n in X = xI_n
    #[arg(long)]
    n: usize,
    /// Scalar x
    #[arg(long, allow_hyphen_values = true, conflicts_with = "grid")]
    x: Option<f64>,
    /// Grid start:end:step of x values, CSV output
    #[arg(long)]
    grid: Option<String>,
    #[command(flatten)]
    out: OutputFlags,
}

#[derive(Args)]
struct JackArgs {
    /// Partition kappa as a comma list of nonincreasing parts, e.g. 3,1
    #[arg(long)]
    kappa: String,
    #[arg(long, default_value_t = 2.0)]
    alpha: f64,
    /// Eigenvalues: inline comma list or a path to a text file
    #[arg(long, allow_hyphen_values = true)]
    x: String,
    /// Output the C normalization instead of J
    #[arg(long)]
    big_c: bool,
    #[command(flatten)]
    out: OutputFlags,
}

#[derive(Clone, Copy, ValueEnum)]
enum Ensemble {
    Laguerre,
    Wishart,
}

#[derive(Args)]
struct CdfLmaxArgs {
    #[arg(long, value_enum)]
    ensemble: Ensemble,
    /// Matrix size
    #[arg(long)]
    n: usize,
    /// Laguerre beta parameter
    #[arg(long, default_value_t = 2.0)]
    beta: f64,
    /// Laguerre parameter a (required for the Laguerre ensemble)
    #[arg(long)]
    a: Option<f64>,
    /// Wishart degrees of freedom (required for the Wishart ensemble)
    #[arg(long)]
    l: Option<usize>,
    /// Covariance eigenvalues for the Wishart ensemble; defaults to all ones
    #[arg(long)]
    sigma: Option<String>,
    /// Truncation degree of the inner 1F1
    #[arg(long)]
    m: usize,
    #[arg(long, conflicts_with = "grid")]
    x: Option<f64>,
    /// Grid start:end:step of x values, CSV output
    #[arg(long)]
    grid: Option<String>,
    #[command(flatten)]
    out: OutputFlags,
}

#[derive(Args)]
struct PdfLminArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 2.0)]
    beta: f64,
    #[arg(long)]
    a: f64,
    /// Divide by the quadrature-computed normalizing constant
    #[arg(long)]
    normalize: bool,
    #[arg(long, conflicts_with = "grid")]
    x: Option<f64>,
    #[arg(long)]
    grid: Option<String>,
    #[command(flatten)]
    out: OutputFlags,
}

#[derive(Args)]
struct PdfTraceArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    l: usize,
    /// Covariance eigenvalues, comma-separated
    #[arg(long)]
    sigma: String,
    #[arg(long)]
    m: usize,
    #[arg(long, conflicts_with = "grid")]
    u: Option<f64>,
    #[arg(long)]
    grid: Option<String>,
    #[command(flatten)]
    out: OutputFlags,
}

#[derive(Args)]
struct SampleTraceArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    l: usize,
    #[arg(long)]
    sigma: String,
    #[arg(long)]
    count: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    out: OutputFlags,
}

#[derive(Clone, Copy, ValueEnum)]
enum Sweep {
    /// Vary the matrix size at fixed truncation degree
    N,
    /// Vary the truncation degree at fixed matrix size
    M,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, value_enum)]
    sweep: Sweep,
    /// Sizes to time, comma-separated
    #[arg(long)]
    sizes: String,
    /// Truncation degree held fixed during an n-sweep
    #[arg(long, default_value_t = 20)]
    m: usize,
    /// Matrix size held fixed during an m-sweep
    #[arg(long, default_value_t = 5)]
    n: usize,
    #[arg(long, default_value_t = 2.0)]
    alpha: f64,
    #[command(flatten)]
    out: OutputFlags,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::InvalidArgument(_) => 2,
                Error::Pole { .. } => 3,
                Error::Resource(_) => 4,
            })
        }
    }
}

fn run(cmd: Cmd) -> Result<(), Error> {
    match cmd {
        Cmd::Eval(a) => eval(a),
        Cmd::EvalIdentity(a) => eval_identity(a),
        Cmd::Jack(a) => jack(a),
        Cmd::CdfLmax(a) => cdf_lmax(a),
        Cmd::PdfLmin(a) => pdf_lmin(a),
        Cmd::PdfTrace(a) => pdf_trace(a),
        Cmd::SampleTrace(a) => sample_trace(a),
        Cmd::Bench(a) => bench(a),
        Cmd::Selftest => selftest(),
    }
}

// --------------------------------------------------------------------------
// parsing and output helpers
// --------------------------------------------------------------------------

fn parse_list(spec: &str) -> Result<Vec<f64>, Error> {
    let spec = spec.trim();
    if spec.is_empty() {
        return Ok(Vec::new());
    }
    let body;
    let split: Vec<&str> = if std::path::Path::new(spec).is_file() {
        body = fs::read_to_string(spec)
            .map_err(|e| Error::InvalidArgument(format!("cannot read {spec}: {e}")))?;
        body.split_whitespace().collect()
    } else {
        spec.split(',').map(str::trim).collect()
    };
    split
        .iter()
        .map(|tok| {
            tok.parse::<f64>()
                .map_err(|_| Error::InvalidArgument(format!("not a number: {tok:?}")))
        })
        .collect()
}

fn parse_usize_list(spec: &str) -> Result<Vec<usize>, Error> {
    spec.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|tok| {
            tok.parse::<usize>()
                .map_err(|_| Error::InvalidArgument(format!("not an integer: {tok:?}")))
        })
        .collect()
}

fn parse_grid(spec: &str) -> Result<Vec<f64>, Error> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(Error::InvalidArgument(format!(
            "grid must be start:end:step, got {spec:?}"
        )));
    }
    let nums: Vec<f64> = parts
        .iter()
        .map(|tok| {
            tok.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidArgument(format!("not a number: {tok:?}")))
        })
        .collect::<Result<_, _>>()?;
    let (start, end, step) = (nums[0], nums[1], nums[2]);
    if step.is_nan() || step <= 0.0 || end < start {
        return Err(Error::InvalidArgument(format!(
            "grid needs end >= start and step > 0, got {spec:?}"
        )));
    }
    let count = ((end - start) / step + 0.5).floor() as usize;
    Ok((0..=count).map(|i| start + i as f64 * step).collect())
}

/// Formats with the given number of significant digits, locale-independent.
fn fmt_sig(v: f64, digits: u32) -> String {
    if v == 0.0 {
        return "0".into();
    }
    format!("{:.*e}", digits as usize - 1, v)
}

enum Sink {
    Stdout,
    File(std::io::BufWriter<fs::File>),
}

impl Sink {
    fn open(path: &Option<PathBuf>) -> Result<Self, Error> {
        match path {
            None => Ok(Sink::Stdout),
            Some(p) => {
                let f = fs::File::create(p).map_err(|e| {
                    Error::InvalidArgument(format!("cannot create {}: {e}", p.display()))
                })?;
                Ok(Sink::File(std::io::BufWriter::new(f)))
            }
        }
    }

    fn line(&mut self, s: &str) -> Result<(), Error> {
        let res = match self {
            Sink::Stdout => writeln!(std::io::stdout(), "{s}"),
            Sink::File(w) => writeln!(w, "{s}"),
        };
        match res {
            Ok(()) => Ok(()),
            // downstream closed the pipe (e.g. `| head`): stop quietly
            Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => std::process::exit(0),
            Err(e) => Err(Error::Resource(format!("write failed: {e}"))),
        }
    }
}

fn report_warnings(r: &TruncationResult) {
    for w in &r.warnings {
        eprintln!("warning: {w}");
    }
}

// --------------------------------------------------------------------------
// commands
// --------------------------------------------------------------------------

fn eval(args: EvalArgs) -> Result<(), Error> {
    let params = args.series.build()?;
    let x = parse_list(&args.x)?;
    let y = args.two_arg_y.as_deref().map(parse_list).transpose()?;
    let r = hg_general(&params, &x, y.as_deref())?;
    report_warnings(&r);
    let mut sink = Sink::open(&args.out.csv)?;
    sink.line(&fmt_sig(r.value, args.out.digits))?;
    Ok(())
}

fn eval_identity(args: EvalIdentityArgs) -> Result<(), Error> {
    let params = args.series.build()?;
    let mut sink = Sink::open(&args.out.csv)?;
    let d = args.out.digits;
    match (&args.grid, args.x) {
        (Some(grid), _) => {
            let xs = parse_grid(grid)?;
            let rs = hg_identity(&params, args.n, &xs)?;
            if let Some(r) = rs.first() {
                report_warnings(r);
            }
            sink.line("x,value,diagnostic")?;
            for (x, r) in xs.iter().zip(&rs) {
                sink.line(&format!(
                    "{},{},{}",
                    fmt_sig(*x, d),
                    fmt_sig(r.value, d),
                    fmt_sig(r.diagnostic(), d)
                ))?;
            }
        }
        (None, Some(x)) => {
            let r = hg_identity(&params, args.n, &[x])?.remove(0);
            report_warnings(&r);
            sink.line(&fmt_sig(r.value, d))?;
        }
        (None, None) => {
            return Err(Error::InvalidArgument("provide either --x or --grid".into()));
        }
    }
    Ok(())
}

fn jack(args: JackArgs) -> Result<(), Error> {
    let parts: Vec<usize> = args
        .kappa
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|tok| {
            tok.parse::<usize>()
                .map_err(|_| Error::InvalidArgument(format!("not a part: {tok:?}")))
        })
        .collect::<Result<_, _>>()?;
    let kappa = Partition::new(parts)?;
    let x = parse_list(&args.x)?;
    let v = if args.big_c {
        jack_eval_c(&kappa, &x, args.alpha)?
    } else {
        jack_eval(&kappa, &x, args.alpha)?
    };
    let mut sink = Sink::open(&args.out.csv)?;
    sink.line(&fmt_sig(v, args.out.digits))?;
    Ok(())
}

fn cdf_lmax(args: CdfLmaxArgs) -> Result<(), Error> {
    let (params, is_wishart) = match args.ensemble {
        Ensemble::Laguerre => {
            let a = args.a.ok_or_else(|| {
                Error::InvalidArgument("--a is required for the Laguerre ensemble".into())
            })?;
            (EnsembleParams::laguerre(args.n, args.beta, a)?, false)
        }
        Ensemble::Wishart => {
            let l = args.l.ok_or_else(|| {
                Error::InvalidArgument("--l is required for the Wishart ensemble".into())
            })?;
            let sigma = match &args.sigma {
                Some(s) => parse_list(s)?,
                None => vec![1.0; args.n],
            };
            (EnsembleParams::wishart(args.n, l, sigma)?, true)
        }
    };
    let cdf = |x: f64| -> Result<f64, Error> {
        if is_wishart {
            if x == 0.0 {
                Ok(0.0)
            } else {
                lmax_cdf_wishart(x, &params, args.m)
            }
        } else {
            lmax_cdf_laguerre(x, &params, args.m)
        }
    };
    emit_curve(&args.grid, args.x, &args.out, "x,value", &|x| {
        Ok((cdf(x)?, None))
    })
}

fn pdf_lmin(args: PdfLminArgs) -> Result<(), Error> {
    let params = EnsembleParams::laguerre(args.n, args.beta, args.a)?;
    let z = if args.normalize {
        lmin_normalization(&params)?
    } else {
        1.0
    };
    emit_curve(&args.grid, args.x, &args.out, "x,value", &|x| {
        Ok((lmin_pdf_laguerre(x, &params)? / z, None))
    })
}

fn pdf_trace(args: PdfTraceArgs) -> Result<(), Error> {
    let params = EnsembleParams::wishart(args.n, args.l, parse_list(&args.sigma)?)?;
    let pdf = TracePdfWishart::new(&params, args.m)?;
    emit_curve(&args.grid, args.u, &args.out, "x,value,diagnostic", &|u| {
        Ok((pdf.eval(u)?, Some(pdf.diagnostic(u)?)))
    })
}

/// Shared single-value / grid CSV plumbing for the distribution commands.
fn emit_curve(
    grid: &Option<String>,
    single: Option<f64>,
    out: &OutputFlags,
    header: &str,
    f: &dyn Fn(f64) -> Result<(f64, Option<f64>), Error>,
) -> Result<(), Error> {
    let mut sink = Sink::open(&out.csv)?;
    let d = out.digits;
    match (grid, single) {
        (Some(g), _) => {
            sink.line(header)?;
            for x in parse_grid(g)? {
                let (v, diag) = f(x)?;
                let mut row = format!("{},{}", fmt_sig(x, d), fmt_sig(v, d));
                if let Some(diag) = diag {
                    row.push(',');
                    row.push_str(&fmt_sig(diag, d));
                }
                sink.line(&row)?;
            }
        }
        (None, Some(x)) => {
            let (v, _) = f(x)?;
            sink.line(&fmt_sig(v, d))?;
        }
        (None, None) => {
            return Err(Error::InvalidArgument(
                "provide either a point or --grid".into(),
            ));
        }
    }
    Ok(())
}

fn sample_trace(args: SampleTraceArgs) -> Result<(), Error> {
    let params = EnsembleParams::wishart(args.n, args.l, parse_list(&args.sigma)?)?;
    let draws = sample_wishart_trace(&params, args.count, args.seed)?;
    let mut sink = Sink::open(&args.out.csv)?;
    for v in draws {
        sink.line(&fmt_sig(v, args.out.digits))?;
    }
    Ok(())
}

fn bench(args: BenchArgs) -> Result<(), Error> {
    let sizes = parse_usize_list(&args.sizes)?;
    let mut sink = Sink::open(&args.out.csv)?;
    sink.line("size,seconds")?;
    for &s in &sizes {
        let (m, n) = match args.sweep {
            Sweep::N => (args.m, s),
            Sweep::M => (s, args.n),
        };
        let x: Vec<f64> = (0..n).map(|i| 0.1 + 0.8 * i as f64 / n.max(1) as f64).collect();
        let params = SeriesParameters::new(args.alpha, vec![], vec![], m)?;
        let start = Instant::now();
        let r = hg_general(&params, &x, None)?;
        let secs = start.elapsed().as_secs_f64();
        std::hint::black_box(r.value);
        sink.line(&format!("{s},{}", fmt_sig(secs, 6)))?;
    }
    Ok(())
}

fn selftest() -> Result<(), Error> {
    let mut failures = 0usize;
    let mut check = |name: &str, ok: bool| {
        println!("{}: {name}", if ok { "pass" } else { "FAIL" });
        if !ok {
            failures += 1;
        }
    };

    let x: Vec<f64> = (1..=6).map(|i| 0.05 * i as f64).collect();
    let p = SeriesParameters::new(2.0, vec![], vec![], 25).unwrap();
    let v = hg_general(&p, &x, None)?.value;
    let want = x.iter().sum::<f64>().exp();
    check("exp identity", ((v - want) / want).abs() < 1e-12);

    let a = 1.3;
    let p = SeriesParameters::new(1.0, vec![a], vec![], 30).unwrap();
    let v = hg_general(&p, &x, None)?.value;
    let want: f64 = x.iter().map(|&xi| (1.0 - xi).powf(-a)).product();
    check("binomial identity", ((v - want) / want).abs() < 1e-8);

    let p = SeriesParameters::new(2.0, vec![1.1], vec![3.7], 15).unwrap();
    let two = hg_general(&p, &[0.3; 4], Some(&[0.5; 4]))?.value;
    let one = hg_identity(&p, 4, &[0.15])?[0].value;
    check("two-argument reduction", ((two - one) / one).abs() < 1e-12);

    let counts = mhg::partitions::count_partitions_bounded(20, 20)?
        - mhg::partitions::count_partitions_bounded(19, 20)?;
    check("degree-20 partition count", counts == 627);

    if failures == 0 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("{failures} selftest check(s) failed")))
    }
}
