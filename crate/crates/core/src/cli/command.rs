use std::ffi::OsString;
use std::io::Write;
use std::path::Path;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value as Json};

use super::eval::{Context, Value};
use super::parser::{parse, ParseError};
use crate::counts::{
    lines_direct, lines_on_complete_intersection_direct, lines_residual, CountReport,
};
use crate::error::Error;
use crate::graded::RingSpec;
use crate::residual::contribution_coefficients;
use crate::varieties::grassmannian;

#[derive(Debug, Parser)]
#[command(
    name = "chowcalc",
    version,
    about = "Exact intersection numbers on Chow rings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Direct,
    Residual,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, clap::Args)]
struct RingArgs {
    /// Preset (`P3`, `P(3)`, `G(4,2)`, `point`) or path to a ring JSON file.
    #[arg(long)]
    ring: String,
    /// JSON file binding extra bundles by name.
    #[arg(long)]
    bundles: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    expr: String,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Count lines on a general hypersurface or complete intersection in P^n.
    Lines {
        #[arg(long)]
        n: u32,
        #[arg(long, required_unless_present = "ci")]
        d: Option<u32>,
        /// Degrees of a complete intersection (direct method only).
        #[arg(long, value_delimiter = ',', conflicts_with = "d")]
        ci: Option<Vec<u32>>,
        #[arg(long, value_enum, default_value_t = MethodArg::Both)]
        method: MethodArg,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Euler characteristic of Grass(M,K).
    Euler {
        #[arg(long, value_name = "M,K", value_delimiter = ',', num_args = 1)]
        grass: Vec<u32>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Contribution coefficients of identical components.
    Table {
        #[arg(long)]
        codim: u32,
        #[arg(long)]
        components: u32,
        #[arg(long)]
        max_degree: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Evaluate an expression.
    Eval(RingArgs),
    /// Evaluate `integrate(EXPR)`.
    Integrate(RingArgs),
}

enum Failure {
    Usage(String),
    Parse(ParseError, String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Syntax { .. } | Error::Config(_) => Failure::Usage(e.to_string()),
            e => Failure::Domain(e),
        }
    }
}

struct Output {
    text: String,
    json: Json,
}

/// Runs the command line `args` (program name first), writing results to
/// `out` and diagnostics to `err`. Returns the process exit code: 0 on
/// success, 1 on a mathematical error, 2 on bad usage or input syntax.
pub fn run_command<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let format = match &cli.command {
        Command::Lines { format, .. }
        | Command::Euler { format, .. }
        | Command::Table { format, .. } => *format,
        Command::Eval(a) | Command::Integrate(a) => a.format,
    };
    match dispatch(cli.command) {
        Ok(o) => {
            let _ = match format {
                Format::Text => writeln!(out, "{}", o.text),
                Format::Json => writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&o.json).expect("json")
                ),
            };
            0
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Parse(e, input)) => {
            let _ = writeln!(err, "error: {}", e.render(&input));
            2
        }
        Err(Failure::Domain(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn dispatch(command: Command) -> Result<Output, Failure> {
    match command {
        Command::Lines {
            n, d, ci, method, ..
        } => lines(n, d, ci, method),
        Command::Euler { grass, .. } => {
            let [m, k] = grass[..] else {
                return Err(Failure::Usage("--grass takes two values, M,K".into()));
            };
            let chi = grassmannian(m, k)?.euler_characteristic()?;
            Ok(Output {
                text: chi.to_string(),
                json: json!({
                    "command": "euler",
                    "inputs": {"m": m, "k": k},
                    "result": json_integer(&chi.to_string()),
                }),
            })
        }
        Command::Table {
            codim,
            components,
            max_degree,
            ..
        } => {
            if codim == 0 || components == 0 {
                return Err(Failure::Usage(
                    "--codim and --components must be positive".into(),
                ));
            }
            let c = contribution_coefficients(codim, components, max_degree);
            let terms: Vec<Json> = c
                .terms()
                .map(|(m, v)| json!({"monomial": c.ring().format_monomial(m), "coefficient": json_integer(&v.to_string())}))
                .collect();
            Ok(Output {
                text: c.to_string(),
                json: json!({
                    "command": "table",
                    "inputs": {"codim": codim, "components": components, "max_degree": max_degree},
                    "result": c.to_string(),
                    "breakdown": terms,
                }),
            })
        }
        Command::Eval(a) => evaluate("eval", a, false),
        Command::Integrate(a) => evaluate("integrate", a, true),
    }
}

/// JSON number when it fits in an `i64`, otherwise the decimal string.
fn json_integer(s: &str) -> Json {
    s.parse::<i64>()
        .map(Json::from)
        .unwrap_or_else(|_| Json::from(s))
}

fn lines(
    n: u32,
    d: Option<u32>,
    ci: Option<Vec<u32>>,
    method: MethodArg,
) -> Result<Output, Failure> {
    let mut reports: Vec<CountReport> = Vec::new();
    let inputs;
    if let Some(degrees) = ci {
        if method != MethodArg::Direct && method != MethodArg::Both {
            return Err(Failure::Usage(
                "complete intersections support only --method direct".into(),
            ));
        }
        inputs = json!({"n": n, "ci": degrees, "method": "direct"});
        reports.push(lines_on_complete_intersection_direct(n, &degrees)?);
    } else {
        let d = d.expect("clap requires --d without --ci");
        let name = match method {
            MethodArg::Direct => "direct",
            MethodArg::Residual => "residual",
            MethodArg::Both => "both",
        };
        inputs = json!({"n": n, "d": d, "method": name});
        if method != MethodArg::Residual {
            reports.push(lines_direct(n, d)?);
        }
        if method != MethodArg::Direct {
            reports.push(lines_residual(n, d)?);
        }
    }
    if reports.windows(2).any(|w| w[0].total != w[1].total) {
        return Err(Failure::Domain(Error::InvalidArgument(format!(
            "methods disagree: direct {} vs residual {}",
            reports[0].total, reports[1].total
        ))));
    }

    let mut text = String::new();
    let mut result = serde_json::Map::new();
    let mut breakdown = None;
    for r in &reports {
        text.push_str(&format!("{}: {}\n", r.method, r.total));
        result.insert(r.method.to_string(), json_integer(&r.total.to_string()));
        if !r.strata.is_empty() {
            for t in &r.strata {
                let sign = if t.sign > 0 { '+' } else { '-' };
                text.push_str(&format!(
                    "  {:<12} x{:<4} {}{:<10} = {}\n",
                    t.description, t.multiplicity, sign, t.integral, t.subtotal
                ));
            }
            breakdown = Some(serde_json::to_value(&r.strata).expect("strata serialize"));
        }
    }
    let mut json = json!({"command": "lines", "inputs": inputs, "result": Json::Object(result)});
    if let Some(b) = breakdown {
        json["breakdown"] = b;
    }
    Ok(Output {
        text: text.trim_end().to_string(),
        json,
    })
}

fn load_context(ring: &str, bundles: Option<&str>) -> Result<Context, Failure> {
    let read = |path: &str| {
        std::fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("cannot read `{path}`: {e}")))
    };
    let mut ctx = if Path::new(ring).is_file() {
        Context::new(RingSpec::from_json(&read(ring)?)?.build()?)
    } else {
        Context::preset(ring)?
    };
    if let Some(path) = bundles {
        ctx.bind_json(&read(path)?)?;
    }
    Ok(ctx)
}

fn evaluate(command: &str, args: RingArgs, integrate: bool) -> Result<Output, Failure> {
    let ctx = load_context(&args.ring, args.bundles.as_deref())?;
    let input = if integrate {
        format!("integrate({})", args.expr)
    } else {
        args.expr.clone()
    };
    let expr = match parse(&input) {
        Ok(e) => e,
        Err(mut e) => {
            // point back into the user's text rather than the wrapper
            if integrate {
                e.offset = e
                    .offset
                    .saturating_sub("integrate(".len())
                    .min(args.expr.len());
            }
            return Err(Failure::Parse(e, args.expr));
        }
    };
    let value = ctx.evaluate(&expr)?;
    let result = match &value {
        Value::Number(q) if q.is_integer() => json_integer(&q.to_string()),
        v => Json::from(v.to_string()),
    };
    Ok(Output {
        text: value.to_string(),
        json: json!({
            "command": command,
            "inputs": {"ring": args.ring, "bundles": args.bundles, "expr": args.expr},
            "result": result,
        }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("chowcalc").chain(args.iter().copied());
        let code = run_command(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn lines_both_text() {
        let (code, out, _) = run(&["lines", "--n", "4", "--d", "5", "--method", "both"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("direct: 2875\nresidual: 2875\n"), "{out}");
        assert!(out.contains("6375") && out.contains("-4400") && out.contains("= 900"));
    }

    #[test]
    fn lines_json() {
        let (code, out, _) = run(&["lines", "--n", "3", "--d", "3", "--format", "json"]);
        assert_eq!(code, 0);
        let v: Json = serde_json::from_str(&out).unwrap();
        assert_eq!(v["result"]["direct"], 27);
        assert_eq!(v["result"]["residual"], 27);
        assert_eq!(v["breakdown"][0]["subtotal"], 45);
        assert_eq!(v["breakdown"][1]["subtotal"], -18);
    }

    #[test]
    fn complete_intersection_flag() {
        let (code, out, _) = run(&["lines", "--n", "4", "--ci", "2,2", "--method", "direct"]);
        assert_eq!((code, out.trim()), (0, "direct: 16"));
        let (code, _, err) = run(&["lines", "--n", "4", "--ci", "2,2", "--method", "residual"]);
        assert_eq!(code, 2, "{err}");
    }

    #[test]
    fn dimension_mismatch_is_a_domain_error() {
        let (code, _, err) = run(&["lines", "--n", "3", "--d", "5"]);
        assert_eq!(code, 1);
        assert!(err.contains("rank 6 does not match dimension 4"), "{err}");
    }

    #[test]
    fn euler_and_table() {
        assert_eq!(run(&["euler", "--grass", "5,2"]).1.trim(), "10");
        assert_eq!(run(&["euler", "--grass", "5"]).0, 2);
        let (code, out, _) = run(&[
            "table",
            "--codim",
            "2",
            "--components",
            "3",
            "--max-degree",
            "1",
        ]);
        assert_eq!((code, out.trim()), (0, "90 + 630*s1"));
    }

    #[test]
    fn eval_and_integrate() {
        let (code, out, _) = run(&[
            "eval",
            "--ring",
            "G(4,2)",
            "integrate(chern(sym(5,Q)) * invert(chern(Q)))",
        ]);
        assert_eq!((code, out.trim()), (0, "1275"));
        let (code, out, _) = run(&["integrate", "--ring", "G(4,2)", "s2^2"]);
        assert_eq!((code, out.trim()), (0, "1"));
        let (code, out, _) = run(&["eval", "--ring", "P2", "(1+6*h+21*h^2)*(1-h)"]);
        assert_eq!((code, out.trim()), (0, "1 + 5*h + 15*h^2"));
    }

    #[test]
    fn parse_errors_exit_two_with_caret() {
        let (code, _, err) = run(&["eval", "--ring", "P2", "1+"]);
        assert_eq!(code, 2);
        assert!(err.contains("byte 2"), "{err}");
        assert!(err.contains("\n  1+\n    ^"), "{err}");
        let (code, _, err) = run(&["integrate", "--ring", "P2", "h^"]);
        assert_eq!(code, 2);
        assert!(err.contains("\n  h^\n    ^"), "{err}");
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run(&[]).0, 2);
        assert_eq!(run(&["lines", "--n", "x", "--d", "3"]).0, 2);
        assert_eq!(run(&["frobnicate"]).0, 2);
        assert_eq!(run(&["eval", "--ring", "Q7", "1"]).0, 1);
        assert_eq!(run(&["--help"]).0, 0);
    }

    #[test]
    fn unbound_symbol_is_a_domain_error() {
        let (code, _, err) = run(&["eval", "--ring", "P2", "chern(Q)"]);
        assert_eq!(code, 1);
        assert!(err.contains("unknown symbol `Q`"));
    }
}
