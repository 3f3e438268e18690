//! `clutch`: verification suites and emitters for the plumbing kernel.

use std::fs;
use std::io::{self, Write};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use clutch_core::diff::CohomClass;
use clutch_core::elliptic::{Tag, WpContext};
use clutch_core::emit::{self, Render};
use clutch_core::period::{genus1_ab, genus1_pi, pi_graded, swap_tau, GluingDatum};
use clutch_core::verify::{run_verify, Params, Suite, DEFAULT_SEED};
use clutch_core::{witt_bracket, Complex64, Laurent, NodeContext, Rational, Scalar};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "clutch", version, about = "Exact q-expansions at a separating node")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run an invariant suite and print a JSON report.
    Verify {
        #[arg(value_enum)]
        suite: SuiteArg,
        /// q-order N
        #[arg(short = 'N', long = "order")]
        order: Option<usize>,
        /// x-window K
        #[arg(short = 'K', long = "window")]
        window: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Also write the report to this file.
        #[arg(long)]
        out: Option<String>,
        /// Include wall time in the report (makes output run-dependent).
        #[arg(long)]
        timing: bool,
    },
    /// Serialize a computed object.
    Emit {
        #[arg(value_enum)]
        kind: Kind,
        #[arg(short = 'N', long = "order")]
        order: Option<usize>,
        #[arg(short = 'K', long = "window")]
        window: Option<i32>,
        /// Pole order n of f[−n] (fdiff).
        #[arg(long, default_value_t = 3)]
        pole: usize,
        /// Witt indices.
        #[arg(short = 'i', allow_hyphen_values = true, default_value_t = 1)]
        i: i32,
        #[arg(short = 'j', allow_hyphen_values = true, default_value_t = -1)]
        j: i32,
        /// Numeric lattice parameter `re,im` (wp, fdiff).
        #[arg(long)]
        tau: Option<String>,
        /// Genera `g1,g2` of symbolic curves (period); genus one elliptic when absent.
        #[arg(long)]
        genus: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Series,
    Node,
    Group,
    Elliptic,
    Basis,
    Periods,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Series => Suite::Series,
            SuiteArg::Node => Suite::Node,
            SuiteArg::Group => Suite::Group,
            SuiteArg::Elliptic => Suite::Elliptic,
            SuiteArg::Basis => Suite::Basis,
            SuiteArg::Periods => Suite::Periods,
            SuiteArg::All => Suite::All,
        }
    }
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Kind {
    Wp,
    Fdiff,
    Recursion,
    Period,
    Witt,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    Json,
    Latex,
    Text,
}

// A closed pipe (`clutch ... | head`) is not an error worth a panic.
fn emit_line(s: &str) {
    let _ = writeln!(io::stdout().lock(), "{s}");
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match cli.cmd {
        Cmd::Verify { suite, order, window, seed, out, timing } => {
            let start = Instant::now();
            let mut report = run_verify(suite.into(), Params { n: order, k: window, seed });
            if timing {
                report.wall_ms = Some(start.elapsed().as_secs_f64() * 1e3);
            }
            let text = pretty(&report.to_json());
            emit_line(&text);
            if let Some(path) = out {
                if let Err(e) = fs::write(&path, format!("{text}\n")) {
                    eprintln!("clutch: cannot write {path}: {e}");
                    return ExitCode::from(2);
                }
            }
            ExitCode::from(if report.passed() { 0 } else { 1 })
        }
        Cmd::Emit { kind, order, window, pole, i, j, tau, genus, format } => {
            match emit_doc(kind, order, window, pole, i, j, tau.as_deref(), genus.as_deref(), format) {
                Ok(doc) => {
                    emit_line(&doc);
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("clutch: {e}");
                    ExitCode::from(2)
                }
            }
        }
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("values serialize")
}

fn parse_pair<T: std::str::FromStr>(s: &str, what: &str) -> Result<(T, T), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("{what} must be `a,b`"))?;
    let p = |x: &str| x.trim().parse::<T>().map_err(|_| format!("bad {what} component {x:?}"));
    Ok((p(a)?, p(b)?))
}

fn series_doc<S: Render>(l: &Laurent<S>, name: &str, format: Format) -> String {
    match format {
        Format::Json => pretty(&emit::laurent_json(l)),
        Format::Latex => format!("{name} = {}", emit::laurent_latex(l)),
        Format::Text => format!("{} = {l}", name.replace('\\', "")),
    }
}

fn ell_series<S: Scalar + Render>(ctx: &WpContext<S>, kind: Kind, pole: usize, k: i32, format: Format) -> Result<String, String> {
    let (series, name) = match kind {
        Kind::Wp => (ctx.wp_series(k).map_err(|e| e.to_string())?, "\\wp(z)".to_string()),
        _ => (ctx.f_series(pole, k).map_err(|e| e.to_string())?.series, format!("f[-{pole}](z)")),
    };
    Ok(series_doc(&series, &name, format))
}

fn class_pair_json(a: &CohomClass<Rational>, b: &CohomClass<Rational>) -> Value {
    json!({ "C1": emit::cohom_json(a, false), "C2": emit::cohom_json(b, true) })
}

#[allow(clippy::too_many_arguments)]
fn emit_doc(
    kind: Kind,
    order: Option<usize>,
    window: Option<i32>,
    pole: usize,
    i: i32,
    j: i32,
    tau: Option<&str>,
    genus: Option<&str>,
    format: Format,
) -> Result<String, String> {
    match kind {
        Kind::Wp | Kind::Fdiff => {
            let k = window.unwrap_or(8);
            if k < 0 {
                return Err("window must be nonnegative".into());
            }
            if kind == Kind::Fdiff && pole < 2 {
                return Err("f[-n] needs n >= 2".into());
            }
            let need = k + pole as i32 + 2;
            match tau {
                Some(t) => {
                    let (re, im) = parse_pair::<f64>(t, "tau")?;
                    let ctx = WpContext::numeric(Complex64::new(re, im), need).map_err(|e| e.to_string())?;
                    ell_series(&ctx, kind, pole, k, format)
                }
                None => ell_series(&WpContext::<Rational>::symbolic(Tag::Tau1, need), kind, pole, k, format),
            }
        }
        Kind::Recursion => {
            let ab = genus1_ab::<Rational>(order.unwrap_or(12));
            Ok(match format {
                Format::Json => pretty(&emit::ab_json(&ab)),
                Format::Latex => emit::ab_latex(&ab),
                Format::Text => {
                    let rows = ab.a.iter().map(|(k, v)| format!("a{k} = {v}")).chain(ab.b.iter().map(|(k, v)| format!("b{k} = {v}")));
                    rows.collect::<Vec<_>>().join("\n")
                }
            })
        }
        Kind::Period => {
            let n = order.unwrap_or(11);
            if let Some(g) = genus {
                let (g1, g2) = parse_pair::<usize>(g, "genus")?;
                let d = GluingDatum::<Rational>::symbolic(g1, g2, n).map_err(|e| e.to_string())?;
                let pe = pi_graded(&d).map_err(|e| e.to_string())?;
                return Ok(match format {
                    Format::Json => pretty(&emit::period_json(&pe)),
                    Format::Latex => emit::period_latex(&pe),
                    Format::Text => (0..pe.rows.len())
                        .filter_map(|r| pe.row_classes(r).ok().map(|(a, b)| (r, a, b)))
                        .map(|(r, a, b)| {
                            let (s, l) = pe.rows[r];
                            format!("Π({}) = ({a}, {})", l.render(s.primed()), b.render(true))
                        })
                        .collect::<Vec<_>>()
                        .join("\n"),
                });
            }
            let (a, b) = genus1_pi::<Rational>(n).map_err(|e| e.to_string())?;
            let (sa, sb) = (b.substitute(&swap_tau), a.substitute(&swap_tau));
            Ok(match format {
                Format::Json => pretty(&json!({
                    "N": n,
                    "rows": [
                        { "seed": "dx1", "classes": class_pair_json(&a, &b) },
                        { "seed": "dx2", "classes": class_pair_json(&sa, &sb) },
                    ],
                })),
                Format::Latex => format!(
                    "\\begin{{aligned}}\n\\Pi(dx_1,0) &\\equiv {} \\\\\n\\Pi(0,dx_2) &\\equiv {}\n\\end{{aligned}} \\mod q^{{{}}}",
                    emit::pi_pair_latex(&a, &b, true),
                    emit::pi_pair_latex(&sa, &sb, true),
                    n + 1
                ),
                Format::Text => format!("Π(dx1,0) = ({a}, {})\nΠ(0,dx2) = ({sa}, {})", b.render(true), sb.render(true)),
            })
        }
        Kind::Witt => {
            let n = order.unwrap_or(3);
            let need = i.abs().max(j.abs()).max((i + j).abs()).max(n as i32).max(1);
            let k = window.unwrap_or(need);
            if k < 0 {
                return Err("window must be nonnegative".into());
            }
            let ctx = NodeContext::new(n, k as usize).map_err(|e| e.to_string())?;
            let w = witt_bracket::<Rational>(i, j, ctx).map_err(|e| e.to_string())?;
            Ok(match format {
                Format::Json => pretty(&json!({ "i": i, "j": j, "N": n, "bracket": emit::witt_json(&w) })),
                Format::Latex => format!("[M_{{{i}}}, M_{{{j}}}] = {}", emit::witt_latex(&w)),
                Format::Text => w.to_string(),
            })
        }
    }
}
