use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use mzv_harmonic::arith::fmt_rat;
use mzv_harmonic::combinatorics::identities::default_stirling_suite;
use mzv_harmonic::combinatorics::{stirling, StirlingKind};
use mzv_harmonic::identity::{
    bernoulli_omega, verify_appendix_b, verify_bachmann_exact, verify_bernoulli_omega, verify_main_identity,
    verify_solvable_case, PhiSource, PolynomialSpec,
};
use mzv_harmonic::omega::{
    g_k_omega_closed, g_s_omega_integral, verify_contour_independence, verify_depth_one, verify_g_omega,
    verify_omega_generating, verify_omega_limit, verify_three_term, OmegaContext, OmegaRow,
};
use mzv_harmonic::qeval::{table_q, verify_numeric, NumericIdentity, QContext, QRow};
use mzv_harmonic::report::Mismatch;
use mzv_harmonic::suite::criteria;
use mzv_harmonic::{Error, Status, VerificationReport};

const THREADS_ENV: &str = "MZV_THREADS";

#[derive(Parser, Debug)]
#[command(name = "mzv", version, about = "Exact and numerical checks of q- and omega-MZV identities")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Run the full acceptance suite (same as the `all` subcommand).
    #[arg(long)]
    all: bool,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Verify one identity.
    Verify(VerifyArgs),
    /// Tabulate both sides of the q or omega identities.
    Table(TableArgs),
    /// Print an exact Stirling number.
    Stirling {
        #[arg(long, value_parser = parse_kind)]
        kind: StirlingKind,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
    },
    /// Print B_2(w), ..., B_{2 nmax}(w).
    BernoulliOmega {
        #[arg(long, default_value_t = 4)]
        nmax: usize,
    },
    /// Run the full acceptance suite.
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum IdentityName {
    MainIdentity,
    Solvable,
    Bachmann,
    AppendixA,
    AppendixB,
    BernoulliOmega,
    BachmannQ,
    Kms,
    PhikG,
    SolvableQ,
    GOmega,
    ThreeTerm,
    Contour,
    DepthOne,
    OmegaGen,
    OmegaLimit,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(value_enum)]
    identity: IdentityName,
    /// The polynomial P, e.g. "z^3 - 2*z^2 + z".
    #[arg(long, default_value = "z^2 - z")]
    poly: String,
    #[arg(long = "L", default_value_t = 1)]
    l: usize,
    #[arg(long = "N", default_value_t = 2)]
    n: usize,
    #[arg(long)]
    order: Option<usize>,
    #[arg(long, default_value_t = 0.5)]
    q: f64,
    /// Comma-separated residues modulo N.
    #[arg(long = "S", value_delimiter = ',', default_value = "1")]
    s_set: Vec<usize>,
    #[arg(long, default_value_t = -1, allow_hyphen_values = true)]
    sign: i8,
    /// Highest coefficient index (numerical identities).
    #[arg(long)]
    rmax: Option<usize>,
    #[arg(long)]
    kmax: Option<usize>,
    #[arg(long)]
    nmax: Option<usize>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, default_value_t = 0.5)]
    omega: f64,
    #[arg(long, default_value_t = 2.5)]
    s: f64,
    /// Depth-one duality pairs `a:b`, comma-separated.
    #[arg(long, value_delimiter = ',', default_value = "0:1,1:2,2:3", value_parser = parse_pair)]
    pairs: Vec<(usize, usize)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TableName {
    Q,
    GOmega,
}

#[derive(Args, Debug)]
struct TableArgs {
    #[arg(value_enum)]
    table: TableName,
    #[arg(long, default_value_t = 0.5)]
    q: f64,
    #[arg(long, default_value_t = 0.7)]
    omega: f64,
    #[arg(long, default_value_t = 6)]
    kmax: usize,
    #[arg(long)]
    tol: Option<f64>,
}

fn parse_kind(s: &str) -> Result<StirlingKind, String> {
    s.parse()
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(':').ok_or_else(|| format!("expected a:b, got `{s}`"))?;
    let n = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("`{t}`: {e}"));
    Ok((n(a)?, n(b)?))
}

/// A failure before or during a run; the variant fixes the exit code.
#[derive(Debug)]
enum Failure {
    Invalid(String),
    Computation(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParameter(_)
            | Error::InvalidPolynomial(_)
            | Error::Parse(_)
            | Error::UnknownIdentity(_)
            | Error::NotAdmissible(_)
            | Error::UnsupportedWord(_) => Failure::Invalid(e.to_string()),
            _ => Failure::Computation(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Computation(e.to_string())
    }
}

#[derive(Serialize, Debug)]
struct SuiteRecord {
    criterion: u8,
    check: String,
    #[serde(flatten)]
    report: VerificationReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

#[derive(Serialize, Debug)]
struct BernoulliRecord {
    n: usize,
    name: String,
    poly: String,
}

#[derive(Serialize, Debug)]
struct StirlingRecord {
    kind: &'static str,
    m: usize,
    n: usize,
    value: String,
}

enum Output {
    Reports(Vec<VerificationReport>),
    Suite(Vec<SuiteRecord>),
    Q(Vec<QRow>, f64),
    Omega(Vec<OmegaRow>, f64),
    Bernoulli(Vec<BernoulliRecord>),
    Stirling(StirlingRecord),
}

impl Output {
    fn passed(&self) -> bool {
        match self {
            Output::Reports(r) => r.iter().all(VerificationReport::is_verified),
            Output::Suite(r) => r.iter().all(|x| x.error.is_none() && x.report.is_verified()),
            Output::Q(rows, tol) => rows.iter().all(|r| r.abs_err <= tol * r.rhs.abs().max(1.0)),
            Output::Omega(rows, tol) => rows.iter().all(|r| r.abs_err <= *tol),
            Output::Bernoulli(_) | Output::Stirling(_) => true,
        }
    }
}

fn check_order(order: usize) -> Result<usize, Failure> {
    if order == 0 {
        return Err(Failure::Invalid("order >= 1 violated".into()));
    }
    Ok(order)
}

fn qctx(args: &VerifyArgs, default_tol: f64) -> Result<QContext, Failure> {
    Ok(QContext::new(args.q)?.with_tol(args.tol.unwrap_or(default_tol))?)
}

fn wctx(omega: f64, tol: f64) -> Result<OmegaContext, Failure> {
    Ok(OmegaContext::new(omega)?.with_tol(tol)?)
}

fn verify(args: &VerifyArgs) -> Result<Vec<VerificationReport>, Failure> {
    use IdentityName::*;
    let order = |default: usize| check_order(args.order.unwrap_or(default));
    let rmax = |default: usize| check_order(args.rmax.or(args.order).unwrap_or(default));
    let report = match args.identity {
        MainIdentity => {
            let p = PolynomialSpec::parse(&args.poly)?;
            if args.l == 0 {
                return Err(Failure::Invalid("L >= 1 violated".into()));
            }
            verify_main_identity(&p, args.l, order(10)?)?
        }
        Solvable => verify_solvable_case(args.n, args.l, order(8)?)?,
        Bachmann => verify_bachmann_exact(order(10)?, &PhiSource::default())?,
        AppendixA => VerificationReport::new("appendix-a", "Stirling number identities", 0).merge(&default_stirling_suite()),
        AppendixB => verify_appendix_b(order(20)?)?,
        BernoulliOmega => verify_bernoulli_omega(check_order(args.nmax.unwrap_or(6))?, None)?,
        BachmannQ => verify_numeric(NumericIdentity::Bachmann, &qctx(args, 1e-8)?, rmax(4)?)?,
        Kms => {
            let ctx = qctx(args, 1e-7)?.with_kms(mzv_harmonic::qeval::Kms::new(args.n, args.s_set.clone(), args.sign)?);
            verify_numeric(NumericIdentity::Kms, &ctx, rmax(3)?)?
        }
        PhikG => verify_numeric(NumericIdentity::PhikG, &qctx(args, 1e-10)?, check_order(args.kmax.or(args.order).unwrap_or(6))?)?,
        SolvableQ => verify_numeric(NumericIdentity::SolvableQ { n: args.n, l: args.l }, &qctx(args, 1e-8)?, rmax(4)?)?,
        GOmega => verify_g_omega(args.kmax.unwrap_or(6), &wctx(args.omega, args.tol.unwrap_or(1e-5))?)?,
        ThreeTerm => verify_three_term(args.s, &wctx(args.omega, args.tol.unwrap_or(1e-5))?)?,
        Contour => verify_contour_independence(args.s, &wctx(args.omega, args.tol.unwrap_or(1e-6))?)?,
        DepthOne => verify_depth_one(&args.pairs, &wctx(args.omega, args.tol.unwrap_or(1e-6))?)?,
        OmegaGen => {
            if args.l == 0 {
                return Err(Failure::Invalid("L >= 1 violated".into()));
            }
            verify_omega_generating(args.l, rmax(4)?, &wctx(args.omega, args.tol.unwrap_or(1e-10))?)?
        }
        OmegaLimit => {
            let tol = args.tol.unwrap_or(1e-6);
            verify_omega_limit(rmax(3)?, tol, &wctx(args.omega, 1e-8)?)?
        }
    };
    Ok(vec![report])
}

fn table(args: &TableArgs) -> Result<Output, Failure> {
    match args.table {
        TableName::Q => {
            let tol = args.tol.unwrap_or(1e-10);
            let ctx = QContext::new(args.q)?.with_tol(tol)?;
            Ok(Output::Q(table_q(&ctx, check_order(args.kmax)?)?, tol))
        }
        TableName::GOmega => {
            if args.kmax < 2 {
                return Err(Failure::Invalid(format!("kmax >= 2 violated (got {})", args.kmax)));
            }
            let tol = args.tol.unwrap_or(1e-6);
            let ctx = wctx(args.omega, tol)?;
            let rows = (2..=args.kmax)
                .map(|k| {
                    let params = [("omega", args.omega.to_string()), ("k", k.to_string())];
                    Ok(OmegaRow::new("g-omega", &params, g_s_omega_integral(k as f64, &ctx)?, g_k_omega_closed(k, &ctx)?))
                })
                .collect::<Result<Vec<_>, Error>>()?;
            Ok(Output::Omega(rows, tol))
        }
    }
}

fn run_suite() -> Result<Vec<SuiteRecord>, Failure> {
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let n: usize = v
            .parse()
            .map_err(|_| Failure::Invalid(format!("{THREADS_ENV} must be a positive integer, got `{v}`")))?;
        pool = pool.num_threads(n);
    }
    let pool = pool.build().map_err(|e| Failure::Computation(e.to_string()))?;
    let crits = criteria();
    let jobs: Vec<_> = crits.iter().flat_map(|c| c.checks.iter().enumerate().map(move |(i, k)| (c.id, i, k))).collect();
    let mut done: Vec<_> = pool.install(|| jobs.par_iter().map(|&(id, i, check)| (id, i, check.run())).collect());
    done.sort_by_key(|&(id, i, _)| (id, i));
    let mut out = Vec::new();
    for (id, _, outcome) in done {
        if let Some(e) = outcome.error {
            let mut report = VerificationReport::new(outcome.name.clone(), "", 0);
            report.status = Status::Mismatch;
            out.push(SuiteRecord { criterion: id, check: outcome.name, report, error: Some(e) });
            continue;
        }
        for report in outcome.reports {
            out.push(SuiteRecord { criterion: id, check: outcome.name.clone(), report, error: None });
        }
    }
    Ok(out)
}

fn dispatch(cli: &Cli) -> Result<Output, Failure> {
    if cli.all {
        if cli.command.is_some() {
            return Err(Failure::Invalid("--all takes no subcommand".into()));
        }
        return Ok(Output::Suite(run_suite()?));
    }
    match &cli.command {
        None => Err(Failure::Invalid("a subcommand or --all is required".into())),
        Some(Command::All) => Ok(Output::Suite(run_suite()?)),
        Some(Command::Verify(a)) => Ok(Output::Reports(verify(a)?)),
        Some(Command::Table(a)) => table(a),
        Some(Command::Stirling { kind, m, n }) => Ok(Output::Stirling(StirlingRecord {
            kind: match kind {
                StirlingKind::First => "first",
                StirlingKind::Second => "second",
            },
            m: *m,
            n: *n,
            value: fmt_rat(&stirling(*kind, *m, *n)),
        })),
        Some(Command::BernoulliOmega { nmax }) => {
            let polys = bernoulli_omega(check_order(*nmax)?)?;
            Ok(Output::Bernoulli(
                polys
                    .iter()
                    .enumerate()
                    .map(|(i, p)| BernoulliRecord { n: 2 * (i + 1), name: format!("B_{}(w)", 2 * (i + 1)), poly: p.render("w") })
                    .collect(),
            ))
        }
    }
}

fn params_text(p: &std::collections::BTreeMap<String, String>) -> String {
    p.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" ")
}

fn mismatch_text(m: &Option<Mismatch>) -> String {
    match m {
        None => String::new(),
        Some(m) => {
            let loc = m.location.as_ref().map(|l| format!(" at {l}")).unwrap_or_default();
            format!("degree {}{loc}: {} vs {}", m.degree, m.lhs, m.rhs)
        }
    }
}

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map(ToString::to_string).unwrap_or_default()
}

fn status_text(s: Status) -> &'static str {
    match s {
        Status::Verified => "verified",
        Status::Mismatch => "mismatch",
    }
}

fn report_fields(r: &VerificationReport) -> Vec<String> {
    vec![
        r.identity.clone(),
        params_text(&r.params),
        r.order.to_string(),
        status_text(r.status).to_string(),
        mismatch_text(&r.first_mismatch),
        opt(&r.value),
        opt(&r.reference),
        opt(&r.abs_err),
    ]
}

const REPORT_HEADER: [&str; 8] = ["identity", "params", "order", "status", "first_mismatch", "value", "reference", "abs_err"];

fn json_lines<T: Serialize>(out: &mut dyn Write, items: &[T]) -> Result<(), Failure> {
    for item in items {
        serde_json::to_writer(&mut *out, item).map_err(|e| Failure::Computation(e.to_string()))?;
        writeln!(out)?;
    }
    Ok(())
}

fn csv_rows(out: &mut dyn Write, header: &[&str], rows: Vec<Vec<String>>) -> Result<(), Failure> {
    let mut w = csv::Writer::from_writer(out);
    let err = |e: csv::Error| Failure::Computation(e.to_string());
    w.write_record(header).map_err(err)?;
    for r in rows {
        w.write_record(&r).map_err(err)?;
    }
    w.flush()?;
    Ok(())
}

fn text_report(out: &mut dyn Write, r: &VerificationReport) -> io::Result<()> {
    write!(out, "[{}] {} order={}", status_text(r.status), r.identity, r.order)?;
    if !r.params.is_empty() {
        write!(out, " {}", params_text(&r.params))?;
    }
    if let Some(e) = r.abs_err {
        write!(out, " abs_err={e:.3e}")?;
    }
    writeln!(out)?;
    if r.first_mismatch.is_some() {
        writeln!(out, "    first mismatch {}", mismatch_text(&r.first_mismatch))?;
    }
    Ok(())
}

fn emit(out: &mut dyn Write, format: Format, output: &Output) -> Result<(), Failure> {
    match (output, format) {
        (Output::Reports(r), Format::Json) => json_lines(out, r)?,
        (Output::Suite(r), Format::Json) => json_lines(out, r)?,
        (Output::Q(r, _), Format::Json) => json_lines(out, r)?,
        (Output::Omega(r, _), Format::Json) => json_lines(out, r)?,
        (Output::Bernoulli(r), Format::Json) => json_lines(out, r)?,
        (Output::Stirling(r), Format::Json) => json_lines(out, std::slice::from_ref(r))?,

        (Output::Reports(r), Format::Csv) => csv_rows(out, &REPORT_HEADER, r.iter().map(report_fields).collect())?,
        (Output::Suite(r), Format::Csv) => {
            let mut header = vec!["criterion", "check"];
            header.extend(REPORT_HEADER);
            header.push("error");
            let rows = r
                .iter()
                .map(|x| {
                    let mut row = vec![x.criterion.to_string(), x.check.clone()];
                    row.extend(report_fields(&x.report));
                    row.push(opt(&x.error));
                    row
                })
                .collect();
            csv_rows(out, &header, rows)?
        }
        (Output::Q(r, _), Format::Csv) => csv_rows(
            out,
            &["name", "params", "lhs", "rhs", "abs_err"],
            r.iter()
                .map(|x| vec![x.name.clone(), params_text(&x.params), x.lhs.to_string(), x.rhs.to_string(), x.abs_err.to_string()])
                .collect(),
        )?,
        (Output::Omega(r, _), Format::Csv) => csv_rows(
            out,
            &["op", "params", "value_re", "value_im", "reference", "abs_err"],
            r.iter()
                .map(|x| {
                    vec![
                        x.op.clone(),
                        params_text(&x.params),
                        x.value_re.to_string(),
                        x.value_im.to_string(),
                        x.reference.to_string(),
                        x.abs_err.to_string(),
                    ]
                })
                .collect(),
        )?,
        (Output::Bernoulli(r), Format::Csv) => {
            csv_rows(out, &["n", "name", "poly"], r.iter().map(|x| vec![x.n.to_string(), x.name.clone(), x.poly.clone()]).collect())?
        }
        (Output::Stirling(x), Format::Csv) => csv_rows(
            out,
            &["kind", "m", "n", "value"],
            vec![vec![x.kind.to_string(), x.m.to_string(), x.n.to_string(), x.value.clone()]],
        )?,

        (Output::Reports(r), Format::Text) => {
            for x in r {
                text_report(out, x)?;
            }
        }
        (Output::Suite(r), Format::Text) => {
            for x in r {
                write!(out, "criterion {:2} / {}: ", x.criterion, x.check)?;
                match &x.error {
                    Some(e) => writeln!(out, "[error] {e}")?,
                    None => text_report(out, &x.report)?,
                }
            }
        }
        (Output::Q(r, _), Format::Text) => {
            for x in r {
                writeln!(out, "{} {}: lhs={:.15e} rhs={:.15e} abs_err={:.3e}", x.name, params_text(&x.params), x.lhs, x.rhs, x.abs_err)?;
            }
        }
        (Output::Omega(r, _), Format::Text) => {
            for x in r {
                writeln!(
                    out,
                    "{} {}: value={:.15e}{:+.15e}i reference={} abs_err={:.3e}",
                    x.op,
                    params_text(&x.params),
                    x.value_re,
                    x.value_im,
                    x.reference,
                    x.abs_err
                )?;
            }
        }
        (Output::Bernoulli(r), Format::Text) => {
            for x in r {
                writeln!(out, "{} = {}", x.name, x.poly)?;
            }
        }
        (Output::Stirling(x), Format::Text) => {
            let (l, r) = if x.kind == "first" { ('[', ']') } else { ('{', '}') };
            writeln!(out, "{l}{} {}{r} = {}", x.m, x.n, x.value)?;
        }
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<bool, Failure> {
    let output = dispatch(cli)?;
    let mut sink: Box<dyn Write> = match &cli.output {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    emit(&mut *sink, cli.format, &output)?;
    sink.flush()?;
    Ok(output.passed())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Computation(e)) => {
            eprintln!("mzv: computation failed: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Invalid(e)) => {
            eprintln!("mzv: invalid input: {e}");
            ExitCode::from(2)
        }
    }
}
