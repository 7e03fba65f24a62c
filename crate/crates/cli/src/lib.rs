//! Command-line front end: graph ingestion, polynomial construction, the
//! contraction engine, exact certification, numeric roots, and reproducible
//! verification suites with machine-readable JSON reports.
//!
//! Exit codes: `0` all checks pass, `1` a property was refuted (a witness is
//! embedded in the output), `2` usage or input error.

pub mod suites;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use zerograph_core::{
    certify_deg2_bound, certify_purely_imaginary, certify_real_negative, check_bipartite,
    closed_form_oriented_unbranched, closed_form_oriented_unbranched_even, contract_graph,
    double, numeric_roots, parse_graph, poly_family, poly_undirected_unbranched, poly_v0,
    serialize_graph, AScheme, Certificate, CertificateJson, EvenClosedFormVariant,
    Family, IntPoly, MultiAffineJson, OrientedGraph, ParsedGraph, PolynomialJson,
    UndirectedGraph, UniGCPoly,
};

use suites::{run_suite, Suite, SuiteParams};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_REFUTED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser)]
#[command(
    name = "zerograph",
    about = "Graph-counting polynomials for oriented graphs: exact construction, contraction engine, and zero-location certificates",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate a graph, echoing its canonical JSON.
    Validate {
        /// Graph JSON file, or '-' for stdin.
        graph: String,
        #[command(flatten)]
        out: OutArg,
    },
    /// Replace each non-oriented edge by two antiparallel arcs.
    Double {
        /// Non-oriented graph JSON file, or '-' for stdin.
        graph: String,
        #[command(flatten)]
        out: OutArg,
    },
    /// Build a counting polynomial.
    Poly {
        #[arg(long, value_enum)]
        family: FamilyArg,
        /// Comma-separated vertex ids for the v0 family (may be empty).
        #[arg(long)]
        v0: Option<String>,
        /// Use the literal (2z)^k per-component factor in closed32 instead of
        /// the enumeration-confirmed 2·z^k.
        #[arg(long)]
        paper_literal: bool,
        graph: String,
        #[command(flatten)]
        out: OutArg,
    },
    /// Run the contraction engine and emit the multiaffine polynomial over
    /// arc variables.
    Engine {
        #[arg(long, value_enum)]
        scheme: SchemeArg,
        /// Comma-separated vertex ids for the v0 scheme (may be empty).
        #[arg(long)]
        v0: Option<String>,
        /// Comma-separated vertex ids whose factor becomes 1 + p_x.
        #[arg(long)]
        tilde: Option<String>,
        graph: String,
        #[command(flatten)]
        out: OutArg,
    },
    /// Certify a zero-location property of an integer polynomial.
    Certify {
        #[arg(long, value_enum)]
        property: PropertyArg,
        /// deg₂ of the source graph (required for --property deg2).
        #[arg(long)]
        d2: Option<u64>,
        /// Polynomial JSON file ({"coeffs": [...]}), or '-' for stdin.
        poly: String,
        #[command(flatten)]
        out: OutArg,
    },
    /// Approximate all complex roots.
    Roots {
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        poly: String,
        #[command(flatten)]
        out: OutArg,
    },
    /// Run a reproducible verification suite.
    Verify {
        #[arg(long, value_enum)]
        suite: SuiteArg,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        /// Cap on trial graph arcs/edges; defaults per suite.
        #[arg(long)]
        max_edges: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: OutArg,
    },
}

#[derive(Args)]
struct OutArg {
    /// Write the JSON output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Unbranched,
    Even,
    V0,
    Undirected,
    Closed31,
    Closed32,
}

#[derive(Clone, Copy, ValueEnum)]
enum SchemeArg {
    Ones,
    ZetaBipartite,
    V0,
}

#[derive(Clone, Copy, ValueEnum)]
enum PropertyArg {
    RealNegative,
    RealNonpositive,
    Imaginary,
    Deg2,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Prop21,
    Prop23,
    Remark22,
    Sec31,
    Sec32,
    EngineEquiv,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Prop21 => Suite::Prop21,
            SuiteArg::Prop23 => Suite::Prop23,
            SuiteArg::Remark22 => Suite::Remark22,
            SuiteArg::Sec31 => Suite::Sec31,
            SuiteArg::Sec32 => Suite::Sec32,
            SuiteArg::EngineEquiv => Suite::EngineEquiv,
        }
    }
}

/// Parses `argv` and runs the requested command, writing JSON output to
/// `stdout` (or the `--out` file). Returns the process exit code.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders its own help/usage text; --help and --version are
            // successful exits.
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli, stdout) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            EXIT_USAGE
        }
    }
}

fn dispatch(cli: Cli, stdout: &mut dyn Write) -> Result<i32> {
    match cli.command {
        Command::Validate { graph, out } => {
            let g = read_graph(&graph)?;
            emit(&out, stdout, serialize_graph(&g))?;
            Ok(EXIT_PASS)
        }
        Command::Double { graph, out } => {
            let g = read_undirected(&graph)?;
            let d = double(&g)?;
            emit(
                &out,
                stdout,
                serialize_graph(&ParsedGraph::Oriented(d.graph().clone())),
            )?;
            Ok(EXIT_PASS)
        }
        Command::Poly {
            family,
            v0,
            paper_literal,
            graph,
            out,
        } => {
            let poly = build_poly(family, v0.as_deref(), paper_literal, &graph)?;
            emit(&out, stdout, to_json(&PolynomialJson::from(&poly))?)?;
            Ok(EXIT_PASS)
        }
        Command::Engine {
            scheme,
            v0,
            tilde,
            graph,
            out,
        } => {
            let g = read_oriented(&graph)?;
            let mut a = match scheme {
                SchemeArg::Ones => AScheme::ones(&g),
                SchemeArg::ZetaBipartite => {
                    let bp = check_bipartite(&g).map_err(|e| anyhow!("{e}"))?;
                    AScheme::zeta_bipartite(&g, &bp)?
                }
                SchemeArg::V0 => {
                    let ids = id_list(v0.as_deref().ok_or_else(|| {
                        anyhow!("--v0 is required for the v0 scheme")
                    })?);
                    AScheme::v0(&g, ids.iter().map(String::as_str))?
                }
            };
            if let Some(tilde) = tilde {
                let ids = id_list(&tilde);
                a = a.with_tilde(&g, ids.iter().map(String::as_str))?;
            }
            let p = contract_graph(&g, &a)?;
            emit(&out, stdout, to_json(&MultiAffineJson::from(&p))?)?;
            Ok(EXIT_PASS)
        }
        Command::Certify {
            property,
            d2,
            poly,
            out,
        } => {
            let p = read_poly(&poly)?;
            let cert = build_certificate(property, d2, &p)?;
            emit(&out, stdout, to_json(&CertificateJson::from(&cert))?)?;
            Ok(if cert.is_proven() {
                EXIT_PASS
            } else {
                EXIT_REFUTED
            })
        }
        Command::Roots { tol, poly, out } => {
            if tol <= 0.0 || tol.is_nan() {
                bail!("--tol must be positive");
            }
            let p = read_poly(&poly)?;
            let report = numeric_roots(&p, tol)?;
            let roots: Vec<serde_json::Value> = report
                .roots
                .iter()
                .map(|r| {
                    serde_json::json!({
                        "re": r.value.re,
                        "im": r.value.im,
                        "multiplicity": r.multiplicity,
                        "residual": r.residual,
                    })
                })
                .collect();
            let doc = serde_json::json!({
                "roots": roots,
                "converged": report.converged,
                "sweeps": report.sweeps,
            });
            emit(&out, stdout, serde_json::to_string(&doc)?)?;
            Ok(EXIT_PASS)
        }
        Command::Verify {
            suite,
            trials,
            max_edges,
            seed,
            out,
        } => {
            let suite: Suite = suite.into();
            let params = SuiteParams {
                suite,
                trials,
                max_edges: max_edges.unwrap_or_else(|| suite.default_max_edges()),
                seed,
            };
            let started = Instant::now();
            let report = run_suite(&params);
            eprintln!(
                "suite {}: {} trials, {} passed, {} failed in {:.3}s",
                report.suite,
                params.trials,
                report.passed,
                report.failed,
                started.elapsed().as_secs_f64()
            );
            let all_pass = report.all_pass;
            emit(&out, stdout, report.to_json_string())?;
            Ok(if all_pass { EXIT_PASS } else { EXIT_REFUTED })
        }
    }
}

fn build_poly(
    family: FamilyArg,
    v0: Option<&str>,
    paper_literal: bool,
    graph: &str,
) -> Result<UniGCPoly> {
    match family {
        FamilyArg::Unbranched => {
            let g = read_oriented(graph)?;
            Ok(poly_family(&g, Family::Unbranched, None)?)
        }
        FamilyArg::Even => {
            let g = read_oriented(graph)?;
            let bp = check_bipartite(&g).map_err(|e| anyhow!("{e}"))?;
            Ok(poly_family(&g, Family::UnbranchedEven, Some(&bp))?)
        }
        FamilyArg::V0 => {
            let g = read_oriented(graph)?;
            let ids = id_list(v0.ok_or_else(|| anyhow!("--v0 is required for the v0 family"))?);
            let set: std::collections::BTreeSet<String> = ids.into_iter().collect();
            Ok(poly_v0(&g, &set)?.poly)
        }
        FamilyArg::Undirected => {
            let g = read_undirected(graph)?;
            Ok(poly_undirected_unbranched(&g)?)
        }
        FamilyArg::Closed31 => {
            let g = read_undirected(graph)?;
            Ok(closed_form_oriented_unbranched(&g)?)
        }
        FamilyArg::Closed32 => {
            let g = read_undirected(graph)?;
            let variant = if paper_literal {
                EvenClosedFormVariant::PaperLiteral
            } else {
                EvenClosedFormVariant::Corrected
            };
            Ok(closed_form_oriented_unbranched_even(&g, variant)?)
        }
    }
}

fn build_certificate(property: PropertyArg, d2: Option<u64>, p: &IntPoly) -> Result<Certificate> {
    Ok(match property {
        PropertyArg::RealNegative => certify_real_negative(p, false)?,
        PropertyArg::RealNonpositive => certify_real_negative(p, true)?,
        PropertyArg::Imaginary => certify_purely_imaginary(p)?,
        PropertyArg::Deg2 => {
            let d2 = d2.ok_or_else(|| anyhow!("--d2 is required for --property deg2"))?;
            certify_deg2_bound(p, d2)?
        }
    })
}

fn read_input(path: &str) -> Result<String> {
    if path == "-" {
        let mut buf = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut buf)
            .context("reading stdin")?;
        Ok(buf)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {path}"))
    }
}

fn read_graph(path: &str) -> Result<ParsedGraph> {
    Ok(parse_graph(&read_input(path)?)?)
}

fn read_oriented(path: &str) -> Result<OrientedGraph> {
    match read_graph(path)? {
        ParsedGraph::Oriented(g) => Ok(g),
        ParsedGraph::Undirected(_) => bail!("this operation needs a directed graph"),
    }
}

fn read_undirected(path: &str) -> Result<UndirectedGraph> {
    match read_graph(path)? {
        ParsedGraph::Undirected(g) => Ok(g),
        ParsedGraph::Oriented(_) => bail!("this operation needs a non-oriented graph"),
    }
}

fn read_poly(path: &str) -> Result<IntPoly> {
    let j: PolynomialJson =
        serde_json::from_str(&read_input(path)?).context("parsing polynomial JSON")?;
    IntPoly::try_from(j).map_err(|e| anyhow!(e))
}

/// Splits a comma-separated id list; an empty string is the empty list.
fn id_list(raw: &str) -> Vec<String> {
    raw.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(str::to_string)
        .collect()
}

fn to_json<T: serde::Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string(value)?)
}

fn emit(out: &OutArg, stdout: &mut dyn Write, body: String) -> Result<()> {
    match &out.out {
        Some(path) => {
            fs::write(path, body.as_bytes())
                .with_context(|| format!("writing {}", path.display()))?;
        }
        None => {
            writeln!(stdout, "{body}").context("writing stdout")?;
        }
    }
    Ok(())
}
