//! The `fano-ladder` command line.
//!
//! Exit codes: 0 on success, 1 when a hypothesis or precondition fails (or a
//! verification finds a failure), 2 on usage and parse errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

use crate::catalog::{bundled_catalog, crosscheck, load_catalog};
use crate::error::Error;
use crate::hilbert::{
    build, pk_poly, verify_duality, verify_identities, verify_pk, HilbertModel, IdentityReport,
};
use crate::invariants::{FanoInvariants, Polarization};
use crate::ladder::build_ladder;
use crate::ratpoly::{parse_rational, Poly, Rational};
use crate::surface::{
    lemma42_defect, prop41_case1, prop41_case2a, prop41_case2b, step2_numerology, NSClass,
    NVCertificate, RuledNS,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum OutputFormat {
    #[default]
    Table,
    Records,
}

#[derive(Debug, Parser)]
#[command(
    name = "fano-ladder",
    version,
    about = "Exact Hilbert polynomials and ladders of polarized log Fano varieties"
)]
struct Cli {
    #[arg(long, value_enum, global = true, default_value_t = OutputFormat::Table)]
    format: OutputFormat,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Hilbert polynomial and h0(H).
    H0(InvariantArgs),
    /// The ladder of general members down to dimension max(floor(r)-1, 1).
    Ladder(InvariantArgs),
    /// Nonvanishing certificates and ruled-surface numerology.
    #[command(subcommand)]
    Surface(SurfaceCommand),
    /// Exact identity suites.
    Verify(VerifyArgs),
    /// The catalog of classical Fano types.
    #[command(subcommand)]
    Catalog(CatalogCommand),
    /// The coindex-4 fourfold family.
    #[command(subcommand)]
    Coindex4(Coindex4Command),
}

fn rational(text: &str) -> Result<Rational, String> {
    parse_rational(text)
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("polarization").required(true).args(["r", "index"])))]
struct InvariantArgs {
    #[arg(long)]
    n: i64,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    d: Rational,
    /// Coindex n + 1 - index.
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    r: Option<Rational>,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    delta: Rational,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    index: Option<Rational>,
    /// h0(K + (n-2)H), needed when floor(r) >= 3.
    #[arg(long = "p-n2", allow_hyphen_values = true)]
    p_n2: Option<i64>,
    /// h0(K + (n-3)H), needed when floor(r) = 4.
    #[arg(long = "p-n3", allow_hyphen_values = true)]
    p_n3: Option<i64>,
}

impl InvariantArgs {
    fn model(&self) -> Result<HilbertModel, Error> {
        let polarization = match (&self.r, &self.index) {
            (Some(r), None) => Polarization::Coindex(r.clone()),
            (None, Some(index)) => Polarization::Index(index.clone()),
            _ => unreachable!("clap enforces exactly one of --r and --index"),
        };
        let inv = FanoInvariants::new(self.n, self.d.clone(), self.delta.clone(), polarization)?;
        HilbertModel::new(inv, self.p_n2, self.p_n3)
    }
}

#[derive(Debug, Subcommand)]
enum SurfaceCommand {
    /// chi(O_X) >= 0.
    Case1 {
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        dh: Rational,
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        db: Rational,
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        chi: Rational,
    },
    /// chi(O_X) < 0 with a = H.F.
    Case2a {
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        h2: Rational,
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        a: Rational,
    },
    /// chi(O_X) < 0 with H = cD and a = D.F.
    Case2b {
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        d2: Rational,
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        db: Rational,
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        c: Rational,
    },
    /// chi + (H^2 + H.K)/2 for H nef with H.F = 1.
    Lemma42 {
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        h2: Rational,
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        hk: Rational,
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        chi: Rational,
    },
    /// H = C0 + bF on the ruled surface of genus g and invariant e.
    Ruled {
        #[arg(long)]
        g: u32,
        #[arg(long, allow_hyphen_values = true)]
        e: i64,
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        b: Rational,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Identities,
    Duality,
    Pk,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    suite: Suite,
    /// Largest dimension (identities, duality) or largest k (pk).
    #[arg(long = "n-max")]
    n_max: Option<u32>,
    /// Sample values per variable for the identity suite.
    #[arg(long, default_value_t = 4)]
    samples: usize,
}

#[derive(Debug, Subcommand)]
enum CatalogCommand {
    /// Cross-check every entry; defaults to the bundled catalog.
    Check {
        #[arg(long)]
        file: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
enum Coindex4Command {
    /// p_k(t) = d/24 t(t+1)(t-1)(t+2) + k/2 t(t+1) + 1.
    Pk {
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        d: Rational,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
    },
}

/// Outcome of a command that ran to completion.
enum Outcome {
    Ok,
    /// Results were printed but some check failed.
    Failed,
}

type Fields = Vec<(&'static str, String)>;

struct Printer<'a, W: Write> {
    out: &'a mut W,
    format: OutputFormat,
}

impl<W: Write> Printer<'_, W> {
    /// A single result: `key=value` per line, or one `kind key=value ...` record.
    fn record(&mut self, kind: &str, fields: &Fields) -> std::io::Result<()> {
        match self.format {
            OutputFormat::Table => {
                for (k, v) in fields {
                    writeln!(self.out, "{k}={v}")?;
                }
                Ok(())
            }
            OutputFormat::Records => self.line(kind, fields),
        }
    }

    fn line(&mut self, kind: &str, fields: &Fields) -> std::io::Result<()> {
        let body: Vec<String> = fields.iter().map(|(k, v)| format!("{k}={v}")).collect();
        writeln!(self.out, "{kind} {}", body.join(" "))
    }

    /// Rows sharing one set of keys: an aligned table, or one record per row.
    fn rows(&mut self, kind: &str, rows: &[Fields]) -> std::io::Result<()> {
        if self.format == OutputFormat::Records {
            for row in rows {
                self.line(kind, row)?;
            }
            return Ok(());
        }
        let Some(first) = rows.first() else {
            return Ok(());
        };
        let mut widths: Vec<usize> = first.iter().map(|(k, _)| k.len()).collect();
        for row in rows {
            for (w, (_, v)) in widths.iter_mut().zip(row) {
                *w = (*w).max(v.len());
            }
        }
        let render = |cells: Vec<&str>| {
            let padded: Vec<String> = cells
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:<w$}"))
                .collect();
            padded.join("  ").trim_end().to_string()
        };
        writeln!(
            self.out,
            "{}",
            render(first.iter().map(|(k, _)| *k).collect())
        )?;
        for row in rows {
            writeln!(
                self.out,
                "{}",
                render(row.iter().map(|(_, v)| v.as_str()).collect())
            )?;
        }
        Ok(())
    }
}

fn coeffs(p: &Poly) -> String {
    p.coeffs()
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref()
        .map_or_else(|| "-".to_string(), ToString::to_string)
}

fn certificate_fields(cert: &NVCertificate) -> Fields {
    vec![
        ("case", cert.case.to_string()),
        ("verdict", cert.verdict.to_string()),
        ("bound", opt(&cert.bound)),
    ]
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Library(Error),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Library(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    let mut printer = Printer {
        out,
        format: cli.format,
    };
    match execute(cli.command, &mut printer) {
        Ok(Outcome::Ok) => 0,
        Ok(Outcome::Failed) => 1,
        Err(Failure::Usage(message)) => {
            let _ = writeln!(err, "error: {message}");
            2
        }
        Err(Failure::Library(e)) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::Parse { .. } | Error::Io(_) => 2,
                _ => 1,
            }
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn execute<W: Write>(command: Command, p: &mut Printer<'_, W>) -> Result<Outcome, Failure> {
    match command {
        Command::H0(args) => {
            let model = args.model()?;
            let result = build(&model)?;
            let mut fields: Fields = vec![
                ("case", result.case.to_string()),
                ("h0", result.h0.to_string()),
                ("dim", result.linear_system_dim().to_string()),
                ("coeffs", coeffs(&result.p)),
            ];
            if p.format == OutputFormat::Table {
                fields.push(("p(t)", result.p.to_string()));
            }
            p.record("hilbert", &fields)?;
        }
        Command::Ladder(args) => {
            let report = build_ladder(&args.model()?)?;
            let rows: Vec<Fields> = report
                .rungs
                .iter()
                .map(|rung| {
                    vec![
                        ("j", rung.j.to_string()),
                        ("index", rung.index.to_string()),
                        ("class", rung.class.to_string()),
                        ("h0", opt(&rung.h0)),
                        ("dim_bound", rung.dim_linear_system_bound.to_string()),
                    ]
                })
                .collect();
            p.rows("rung", &rows)?;
            let mut summary: Fields = vec![
                ("c", report.c.to_string()),
                ("nominal_c", report.nominal_c.to_string()),
                ("bsl_dim_bound", report.bsl_dim_bound.to_string()),
            ];
            if let Some(m) = &report.multiplicity {
                summary.push(("m_max", m.m_max.to_string()));
                summary.push((
                    "double_points",
                    m.canonical_double_point_possible.to_string(),
                ));
            }
            if p.format == OutputFormat::Table {
                writeln!(p.out)?;
            }
            p.record("ladder", &summary)?;
        }
        Command::Surface(cmd) => surface(cmd, p)?,
        Command::Verify(args) => return verify(args, p),
        Command::Catalog(CatalogCommand::Check { file }) => {
            let entries = match &file {
                Some(path) => load_catalog(path)?,
                None => bundled_catalog()?,
            };
            let report = crosscheck(&entries);
            let rows: Vec<Fields> = report
                .outcomes
                .iter()
                .map(|o| {
                    vec![
                        ("name", o.name.clone()),
                        ("h0", opt(&o.h0)),
                        ("expected", opt(&o.expected_h0)),
                        ("oracle", opt(&o.oracle_matches)),
                        (
                            "status",
                            if o.passed() { "pass" } else { "FAIL" }.to_string(),
                        ),
                    ]
                })
                .collect();
            p.rows("entry", &rows)?;
            for o in report.mismatches() {
                if let Some(e) = &o.error {
                    writeln!(p.out, "# {}: {e}", o.name)?;
                }
            }
            let mismatches = report.mismatches().len();
            if p.format == OutputFormat::Table {
                writeln!(p.out)?;
            }
            p.record(
                "catalog",
                &vec![
                    ("entries", report.outcomes.len().to_string()),
                    ("mismatches", mismatches.to_string()),
                ],
            )?;
            if mismatches > 0 {
                return Ok(Outcome::Failed);
            }
        }
        Command::Coindex4(Coindex4Command::Pk { d, k }) => {
            let poly = pk_poly(&d, k)?;
            let mut fields: Fields = vec![
                ("k", k.to_string()),
                ("coeffs", coeffs(&poly)),
                ("p_k(1)", poly.eval_int(1).to_string()),
            ];
            if p.format == OutputFormat::Table {
                fields.push(("p_k(t)", poly.to_string()));
            }
            p.record("pk", &fields)?;
        }
    }
    Ok(Outcome::Ok)
}

fn surface<W: Write>(cmd: SurfaceCommand, p: &mut Printer<'_, W>) -> Result<(), Failure> {
    match cmd {
        SurfaceCommand::Case1 { dh, db, chi } => {
            p.record(
                "certificate",
                &certificate_fields(&prop41_case1(&dh, &db, &chi)?),
            )?;
        }
        SurfaceCommand::Case2a { h2, a } => {
            p.record("certificate", &certificate_fields(&prop41_case2a(&h2, &a)?))?;
        }
        SurfaceCommand::Case2b { d2, db, a, c } => {
            p.record(
                "certificate",
                &certificate_fields(&prop41_case2b(&d2, &db, a, &c)?),
            )?;
        }
        SurfaceCommand::Lemma42 { h2, hk, chi } => {
            let defect = lemma42_defect(&h2, &hk, &chi);
            let holds = !num_traits::Signed::is_negative(&defect);
            p.record(
                "lemma42",
                &vec![
                    ("defect", defect.to_string()),
                    ("bound_holds", holds.to_string()),
                ],
            )?;
        }
        SurfaceCommand::Ruled { g, e, b } => {
            let s = RuledNS::new(g, e);
            let h = NSClass::new(Rational::from_integer(1.into()), b.clone());
            let h2 = s.intersect(&h, &h);
            let hk = s.intersect(&h, &s.canonical_class());
            let defect = lemma42_defect(&h2, &hk, &s.chi());
            let step2 = step2_numerology(g, e, &b);
            p.record(
                "ruled",
                &vec![
                    ("H^2", h2.to_string()),
                    ("HK", hk.to_string()),
                    ("chi", s.chi().to_string()),
                    ("defect", defect.to_string()),
                    ("DK", step2.dk.to_string()),
                    ("chi_D", step2.chi_d.to_string()),
                    ("consistent", step2.consistent.to_string()),
                    ("in_range", step2.in_range.to_string()),
                ],
            )?;
        }
    }
    Ok(())
}

fn verify<W: Write>(args: VerifyArgs, p: &mut Printer<'_, W>) -> Result<Outcome, Failure> {
    let report: IdentityReport = match args.suite {
        Suite::Identities => {
            let n_max = args.n_max.unwrap_or(10);
            if n_max < 3 {
                return Err(Failure::Usage(format!(
                    "--n-max must satisfy n-max >= 3 (got {n_max})"
                )));
            }
            verify_identities(3..=n_max, args.samples)?
        }
        Suite::Duality => verify_duality(args.n_max.unwrap_or(8))?,
        Suite::Pk => verify_pk(args.n_max.map_or(50, i64::from), &[1, 24, 120])?,
    };
    for failure in &report.failures {
        writeln!(p.out, "FAIL {failure}")?;
    }
    let fields: Fields = vec![
        ("models", report.models.to_string()),
        ("checks", report.checks.to_string()),
        ("failures", report.failures.len().to_string()),
    ];
    p.record("verify", &fields)?;
    if report.is_clean() {
        writeln!(p.out, "all identities verified")?;
        Ok(Outcome::Ok)
    } else {
        Ok(Outcome::Failed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("fano-ladder").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn h0_of_quadric_fourfold() {
        let (code, out, _) = run_args(&["h0", "--n", "4", "--d", "2", "--r", "1", "--delta", "0"]);
        assert_eq!(code, 0);
        assert!(out.lines().any(|l| l == "h0=6"), "{out}");
    }

    #[test]
    fn index_and_coindex_are_exclusive() {
        let (code, _, err) = run_args(&[
            "h0", "--n", "4", "--d", "2", "--r", "1", "--index", "4", "--delta", "0",
        ]);
        assert_eq!(code, 2, "{err}");
        let (code, _, _) = run_args(&["h0", "--n", "4", "--d", "2", "--delta", "0"]);
        assert_eq!(code, 2);
        let (code, out, _) =
            run_args(&["h0", "--n", "4", "--d", "2", "--index", "4", "--delta", "0"]);
        assert_eq!(code, 0);
        assert!(out.contains("h0=6"));
    }

    #[test]
    fn decimals_are_usage_errors() {
        let (code, _, _) = run_args(&["h0", "--n", "4", "--d", "2.0", "--r", "1", "--delta", "0"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn hypothesis_errors_exit_one() {
        let (code, _, err) = run_args(&[
            "ladder", "--n", "5", "--d", "4", "--r", "4", "--delta", "0", "--p-n2", "1", "--p-n3",
            "1",
        ]);
        assert_eq!(code, 1);
        assert!(err.contains("r<4"), "{err}");
    }

    #[test]
    fn negative_values_parse() {
        let (code, out, err) = run_args(&[
            "surface", "ruled", "--g", "2", "--e", "-2", "--b", "0", "--format", "records",
        ]);
        assert_eq!(code, 0, "{err}");
        assert!(out.contains("consistent=true"), "{out}");
    }
}
