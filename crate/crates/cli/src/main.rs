//! `stirpoly`: family tables, identity suites, series inversion and
//! binomial sequences from the command line.
//!
//! Exit status: 0 on success, 1 when an identity check fails, 2 on a usage
//! or input error.

mod catalog;
mod error;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use stirpoly::extended::{bell_ext, stirling_a_ext};
use stirpoly::families::invert_via_stirling;
use stirpoly::inversion::{
    binomial_identity_suite, knuth_pittel_via_bell, lambda_general, lambda_round_trip, BinomialSeq,
    SeriesForm,
};
use stirpoly::numbers::sign;
use stirpoly::series::parse_rational;
use stirpoly::suites::{run_suite, Suite, SuiteConfig, DEFAULT_SEED};
use stirpoly::{MultiPoly, PowerSeries, Rational};

use catalog::Family;
use error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Parser, Debug)]
#[command(
    name = "stirpoly",
    version,
    about = "Exact Bell/Stirling polynomial families and identities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// One polynomial of a family
    Family {
        name: String,
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
        #[arg(long, allow_negative_numbers = true)]
        k: Option<i64>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Evaluate with every indeterminate set to this rational
        #[arg(long, allow_negative_numbers = true)]
        unify: Option<String>,
        /// Compare against the independent routes
        #[arg(long)]
        check: bool,
    },
    /// The triangle 0 <= k <= n <= max-n of a family
    Table {
        name: String,
        #[arg(long)]
        max_n: i64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long, allow_negative_numbers = true)]
        unify: Option<String>,
        #[arg(long)]
        check: bool,
    },
    /// Compositional inverse of a series given as JSON
    Invert {
        #[arg(long)]
        series: PathBuf,
        #[arg(long)]
        order: Option<usize>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        check: bool,
    },
    /// Generalized Lagrange inversion polynomial for f = a (c ∘ φ), inv(f) = b (d ∘ ψ)
    Lagrange {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        phi: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long)]
        psi: PathBuf,
        #[arg(long)]
        n: i64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        check: bool,
    },
    /// Binomial sequence generated by an invertible series
    Binomial {
        #[arg(long)]
        phi: PathBuf,
        #[arg(long)]
        max_n: i64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        check: bool,
    },
    /// The tree polynomial t_n(t)
    KnuthPittel {
        #[arg(long)]
        n: i64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        check: bool,
    },
    /// Extended Bell polynomial for any integers n, k
    ExtBell {
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        check: bool,
    },
    /// Run an identity suite and report failures
    Verify {
        suite: String,
        #[arg(long, default_value_t = 6)]
        max_n: i64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 6)]
        range: i64,
        #[arg(long, default_value_t = 5)]
        deg: i64,
        #[arg(long, default_value_t = 6)]
        m: i64,
        #[arg(long, default_value_t = 4)]
        k: i64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Print the version
    Version,
}

/// Whether every identity checked along the way held.
type Outcome = Result<bool, CliError>;

fn emit(p: &MultiPoly, format: Format) -> String {
    match format {
        Format::Text => p.to_string(),
        Format::Json => p.to_json().to_string(),
        Format::Latex => p.to_latex(),
    }
}

fn emit_series(s: &PowerSeries, format: Format) -> String {
    match format {
        Format::Json => s.to_json().to_string(),
        _ => s.to_string(),
    }
}

fn parse_value(s: &str) -> Result<Rational, CliError> {
    parse_rational(s).ok_or_else(|| CliError::Usage(format!("not a rational number: {s}")))
}

fn read_series(path: &PathBuf) -> Result<PowerSeries, CliError> {
    let shown = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: shown.clone(),
        source,
    })?;
    let v: serde_json::Value = serde_json::from_str(&text).map_err(|source| CliError::Json {
        path: shown,
        source,
    })?;
    Ok(PowerSeries::from_json(&v)?)
}

fn non_negative(flag: &str, v: i64) -> Result<(), CliError> {
    if v < 0 {
        return Err(CliError::Usage(format!(
            "--{flag} must be non-negative, got {v}"
        )));
    }
    Ok(())
}

/// Runs the alternative routes and prints one line per route.
fn check_routes(fam: Family, n: i64, k: Option<i64>, value: &MultiPoly) -> Outcome {
    let mut ok = true;
    for (route, alt) in fam.alternatives(n, k)? {
        let same = &alt == value;
        ok &= same;
        if same {
            eprintln!("check {route}: ok");
        } else {
            eprintln!("check {route}: MISMATCH\n  default = {value}\n  {route} = {alt}");
        }
    }
    Ok(ok)
}

fn family(
    name: &str,
    n: i64,
    k: Option<i64>,
    format: Format,
    unify: Option<&str>,
    check: bool,
) -> Outcome {
    let fam = Family::parse(name)?;
    let p = fam.compute(n, k)?;
    match unify {
        Some(v) => {
            let value = p.unify(&parse_value(v)?)?;
            match format {
                Format::Json => println!(
                    "{}",
                    json!({"family": fam.name(), "n": n, "k": k, "value": value.to_string()})
                ),
                _ => println!("{value}"),
            }
        }
        None => match format {
            Format::Json => println!(
                "{}",
                json!({"family": fam.name(), "n": n, "k": k, "text": p.to_string(), "poly": p.to_json()})
            ),
            _ => println!("{}", emit(&p, format)),
        },
    }
    if check {
        return check_routes(fam, n, k, &p);
    }
    Ok(true)
}

fn table(name: &str, max_n: i64, format: Format, unify: Option<&str>, check: bool) -> Outcome {
    non_negative("max-n", max_n)?;
    let fam = Family::parse(name)?;
    let value = unify.map(parse_value).transpose()?;
    let mut rows = Vec::new();
    let mut ok = true;
    for n in 0..=max_n {
        let ks: Vec<Option<i64>> = if fam.two_indexed() {
            (0..=n).map(Some).collect()
        } else {
            vec![None]
        };
        for k in ks {
            let p = fam.compute(n, k)?;
            if check {
                ok &= check_routes(fam, n, k, &p)?;
            }
            let shown = match &value {
                Some(v) => p.unify(v)?.to_string(),
                None => emit(&p, format),
            };
            rows.push((n, k, p, shown));
        }
    }
    match format {
        Format::Json => {
            let items: Vec<_> = rows
                .iter()
                .map(|(n, k, p, shown)| match &value {
                    Some(_) => json!({"n": n, "k": k, "value": shown}),
                    None => json!({"n": n, "k": k, "text": p.to_string(), "poly": p.to_json()}),
                })
                .collect();
            println!("{}", json!({"family": fam.name(), "rows": items}));
        }
        Format::Latex => {
            for (n, k, _, shown) in &rows {
                match k {
                    Some(k) => println!("{}_{{{n},{k}}} &= {shown} \\\\", fam.name()),
                    None => println!("{}_{{{n}}} &= {shown} \\\\", fam.name()),
                }
            }
        }
        Format::Text => {
            for (n, k, _, shown) in &rows {
                match k {
                    Some(k) => println!("({n},{k}): {shown}"),
                    None => println!("({n}): {shown}"),
                }
            }
        }
    }
    Ok(ok)
}

fn invert(path: &PathBuf, order: Option<usize>, format: Format, check: bool) -> Outcome {
    let mut f = read_series(path)?;
    if let Some(o) = order {
        if o == 0 || o > f.order() {
            return Err(CliError::Usage(format!(
                "--order must lie in 1..={}, got {o}",
                f.order()
            )));
        }
        f = f.truncate(o);
    }
    if !f.is_invertible() {
        return Err(CliError::Usage(
            "series is not compositionally invertible (needs f(0) = 0, f'(0) != 0)".into(),
        ));
    }
    let g = f.invert()?;
    println!("{}", emit_series(&g, format));
    if !check {
        return Ok(true);
    }
    let id = PowerSeries::id(f.order());
    let round = f.compose(&g)? == id && g.compose(&f)? == id;
    let stirling = invert_via_stirling(&f)? == g;
    eprintln!(
        "check round trip: {}",
        if round { "ok" } else { "MISMATCH" }
    );
    eprintln!(
        "check companion route: {}",
        if stirling { "ok" } else { "MISMATCH" }
    );
    Ok(round && stirling)
}

struct LagrangeArgs<'a> {
    a: &'a PathBuf,
    phi: &'a PathBuf,
    b: &'a PathBuf,
    psi: &'a PathBuf,
    n: i64,
    format: Format,
    check: bool,
}

fn lagrange(args: LagrangeArgs<'_>) -> Outcome {
    non_negative("n", args.n)?;
    let from = SeriesForm::new(read_series(args.a)?, read_series(args.phi)?)?;
    let to = SeriesForm::new(read_series(args.b)?, read_series(args.psi)?)?;
    let p = lambda_general(args.n, &from, &to)?;
    println!("{}", emit(&p, args.format));
    if args.check {
        let ok = lambda_round_trip(&from, &to, args.n)?;
        eprintln!("check round trip: {}", if ok { "ok" } else { "MISMATCH" });
        return Ok(ok);
    }
    Ok(true)
}

fn binomial(path: &PathBuf, max_n: i64, format: Format, check: bool) -> Outcome {
    non_negative("max-n", max_n)?;
    let phi = read_series(path)?;
    if (phi.order() as i64) < max_n {
        return Err(CliError::Usage(format!(
            "series order {} is below --max-n {max_n}",
            phi.order()
        )));
    }
    let seq = BinomialSeq::from_phi(&phi, max_n as usize)?;
    match format {
        Format::Json => {
            let items: Vec<_> = seq
                .polys()
                .iter()
                .map(|p| json!({"text": p.to_string(), "poly": p.to_json()}))
                .collect();
            println!("{}", json!(items));
        }
        _ => {
            for (n, p) in seq.polys().iter().enumerate() {
                println!("f_{n} = {}", emit(p, format));
            }
        }
    }
    if !check {
        return Ok(true);
    }
    let mut ok = seq.is_binomial() && seq.satisfies_convolution();
    eprintln!(
        "check binomial type: {}",
        if ok { "ok" } else { "MISMATCH" }
    );
    let checks = binomial_identity_suite(&seq, max_n as usize)?;
    let failed: Vec<_> = checks.iter().filter(|c| !c.holds()).collect();
    for c in &failed {
        eprintln!(
            "check {} n={} k={:?}: MISMATCH\n  lhs = {}\n  rhs = {}",
            c.name, c.n, c.k, c.lhs, c.rhs
        );
    }
    eprintln!(
        "check substitution identities: {} run, {} failed",
        checks.len(),
        failed.len()
    );
    ok &= failed.is_empty();
    Ok(ok)
}

fn knuth_pittel_cmd(n: i64, format: Format, check: bool) -> Outcome {
    non_negative("n", n)?;
    family("knuth-pittel", n, None, format, None, false)?;
    if check {
        let p = stirpoly::inversion::knuth_pittel(n);
        let ok = knuth_pittel_via_bell(n) == p;
        eprintln!("check Bell route: {}", if ok { "ok" } else { "MISMATCH" });
        return Ok(ok);
    }
    Ok(true)
}

fn ext_bell(n: i64, k: i64, format: Format, check: bool) -> Outcome {
    let p = bell_ext(n, k);
    println!("{}", emit(&p, format));
    if check {
        let ok = stirling_a_ext(-k, -n).scale(&sign(n - k)) == p;
        eprintln!("check reciprocity: {}", if ok { "ok" } else { "MISMATCH" });
        return Ok(ok);
    }
    Ok(true)
}

fn verify(suite: &str, cfg: SuiteConfig, format: Format) -> Outcome {
    non_negative("max-n", cfg.max_n)?;
    non_negative("range", cfg.range)?;
    non_negative("deg", cfg.deg)?;
    if cfg.k < 1 || cfg.m < 0 {
        return Err(CliError::Usage(
            "--k must be at least 1 and --m non-negative".into(),
        ));
    }
    let suite: Suite = suite
        .parse()
        .map_err(|e: stirpoly::Error| CliError::Usage(e.to_string()))?;
    let report = run_suite(suite, &cfg);
    match format {
        Format::Json => println!("{}", report.to_json()),
        _ => println!("{report}"),
    }
    Ok(report.passed())
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Family {
            name,
            n,
            k,
            format,
            unify,
            check,
        } => family(&name, n, k, format, unify.as_deref(), check),
        Command::Table {
            name,
            max_n,
            format,
            unify,
            check,
        } => table(&name, max_n, format, unify.as_deref(), check),
        Command::Invert {
            series,
            order,
            format,
            check,
        } => invert(&series, order, format, check),
        Command::Lagrange {
            a,
            phi,
            b,
            psi,
            n,
            format,
            check,
        } => lagrange(LagrangeArgs {
            a: &a,
            phi: &phi,
            b: &b,
            psi: &psi,
            n,
            format,
            check,
        }),
        Command::Binomial {
            phi,
            max_n,
            format,
            check,
        } => binomial(&phi, max_n, format, check),
        Command::KnuthPittel { n, format, check } => knuth_pittel_cmd(n, format, check),
        Command::ExtBell {
            n,
            k,
            format,
            check,
        } => ext_bell(n, k, format, check),
        Command::Verify {
            suite,
            max_n,
            seed,
            range,
            deg,
            m,
            k,
            format,
        } => verify(
            &suite,
            SuiteConfig {
                max_n,
                seed,
                range,
                deg,
                m,
                k,
            },
            format,
        ),
        Command::Version => {
            println!("stirpoly {}", env!("CARGO_PKG_VERSION"));
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
