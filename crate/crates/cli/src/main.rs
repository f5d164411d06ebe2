//! Command-line front end: expression evaluation, suite execution and
//! report emission.

use clap::{Parser, Subcommand, ValueEnum};

use qdouble_core::braided;
use qdouble_core::double;
use qdouble_core::functionals::named_generator;
use qdouble_core::parse;
use qdouble_core::qmatrix;
use qdouble_core::report::SuiteReport;
use qdouble_core::suites::{self, SuiteParams, SUITE_NAMES};
use qdouble_core::QzContext;

#[derive(Parser)]
#[command(
    name = "qdouble",
    about = "Exact verification of quantum matrix algebra, quantum double and braided Hopf structure identities",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Form {
    Closed,
    General,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite (or `all`).
    Suite {
        /// Suite name from `list-suites`, or `all`.
        name: String,
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Degree bound for semantic functional equality.
        #[arg(long, default_value_t = 4)]
        degree: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Evaluate an expression over the element grammar.
    Eval {
        expr: String,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// List the available suites.
    ListSuites,
    /// Multiply two elements of the quantum double, `"<dual> (x) <element>"` each.
    Dmul {
        left: String,
        right: String,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Braided-structure operations with closed and general routes.
    Braided {
        /// One of: mul, comul, antipode, action, coaction.
        op: String,
        /// Operands: generators like `x[1,2]`; for `action` the first
        /// argument names a functional generator like `E[1]`.
        args: Vec<String>,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Form::Both)]
        form: Form,
    },
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    };
    std::process::exit(code);
}

fn configure_threads() {
    if let Ok(v) = std::env::var("QDOUBLE_THREADS") {
        if let Ok(k) = v.parse::<usize>() {
            if k >= 1 {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(k).build_global();
            }
        }
    }
}

fn run(cli: Cli) -> Result<i32, Box<dyn std::error::Error>> {
    match cli.command {
        Command::ListSuites => {
            for name in SUITE_NAMES {
                println!("{name}");
            }
            Ok(0)
        }
        Command::Suite {
            name,
            n,
            degree,
            seed,
            format,
        } => {
            configure_threads();
            let params = SuiteParams { n, degree, seed };
            let reports: Vec<SuiteReport> = if name == "all" {
                suites::run_all(&params)?
            } else {
                vec![suites::run_suite(&name, &params)?]
            };
            let all_pass = reports.iter().all(|r| r.passed());
            match format {
                Format::Text => {
                    for r in &reports {
                        print!("{}", r.to_text());
                    }
                }
                Format::Json => {
                    if reports.len() == 1 {
                        println!("{}", serde_json::to_string_pretty(&reports[0])?);
                    } else {
                        println!("{}", serde_json::to_string_pretty(&reports)?);
                    }
                }
            }
            Ok(if all_pass { 0 } else { 1 })
        }
        Command::Eval { expr, n, format } => {
            let ctx = QzContext::new(n)?;
            let out = parse::eval_expression(&ctx, &expr)?;
            match format {
                Format::Text => println!("{out}"),
                Format::Json => match out {
                    parse::EvalOutput::Scalar(v) => {
                        println!(
                            "{}",
                            serde_json::json!({"schema": 1, "kind": "scalar", "value": v.to_string()})
                        )
                    }
                    parse::EvalOutput::Element(e) => {
                        println!(
                            "{}",
                            serde_json::json!({"schema": 1, "kind": "element", "value": e.to_string()})
                        )
                    }
                },
            }
            Ok(0)
        }
        Command::Dmul {
            left,
            right,
            n,
            format,
        } => {
            let ctx = QzContext::new(n)?;
            let a = parse::parse_double(&ctx, &left)?;
            let b = parse::parse_double(&ctx, &right)?;
            let prod = double::d_mul(&ctx, &a, &b)?;
            match format {
                Format::Text => println!("{prod}"),
                Format::Json => {
                    let terms: Vec<serde_json::Value> = prod
                        .terms()
                        .map(|((w, m), c)| {
                            let word = w
                                .iter()
                                .map(|l| l.to_string())
                                .collect::<Vec<_>>()
                                .join(" ");
                            serde_json::json!({
                                "dual_word": word,
                                "monomial": m.to_string(),
                                "coefficient": c.to_string(),
                            })
                        })
                        .collect();
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&serde_json::json!({
                            "schema": 1,
                            "terms": terms,
                        }))?
                    );
                }
            }
            Ok(0)
        }
        Command::Braided { op, args, n, form } => {
            let ctx = QzContext::new(n)?;
            let (outputs, verdict) = braided_dispatch(&ctx, &op, &args, form)?;
            for (label, text) in &outputs {
                println!("{label}: {text}");
            }
            let mut verdict_ok = true;
            if let Some(agree) = verdict {
                verdict_ok = agree;
                println!("verdict: {}", if agree { "agree" } else { "DIFFER" });
            }
            Ok(if verdict_ok { 0 } else { 1 })
        }
    }
}

type Labeled = (String, String);

fn braided_dispatch(
    ctx: &QzContext,
    op: &str,
    args: &[String],
    form: Form,
) -> Result<(Vec<Labeled>, Option<bool>), Box<dyn std::error::Error>> {
    let want = |f: Form| form == Form::Both || form == f;
    let both = form == Form::Both;
    let mut out = Vec::new();
    let mut verdict = None;
    match op {
        "mul" => {
            let (a, b) = two_args(args)?;
            let x = parse::parse_qelement(ctx, a)?;
            let y = parse::parse_qelement(ctx, b)?;
            let closed = braided::closed_mul(ctx, &x, &y)?;
            let general = braided::braided_mul(ctx, &x, &y)?;
            if want(Form::Closed) {
                out.push(("closed".into(), closed.to_string()));
            }
            if want(Form::General) {
                out.push(("general".into(), general.to_string()));
            }
            if both {
                verdict = Some(qmatrix::gl_equal(ctx, &closed, &general));
            }
        }
        "comul" => {
            let a = one_arg(args)?;
            let x = parse::parse_qelement(ctx, a)?;
            let closed = braided::closed_comul(ctx, &x)?;
            let general = braided::braided_comul(ctx, &x)?;
            if want(Form::Closed) {
                out.push(("closed".into(), tensor_text(&closed)));
            }
            if want(Form::General) {
                out.push(("general".into(), tensor_text(&general)));
            }
            if both {
                verdict = Some(closed == general);
            }
        }
        "antipode" => {
            let a = one_arg(args)?;
            let x = parse::parse_qelement(ctx, a)?;
            let closed = braided::closed_antipode(ctx, &x)?;
            let general = braided::braided_antipode(ctx, &x)?;
            if want(Form::Closed) {
                out.push(("closed".into(), closed.to_string()));
            }
            if want(Form::General) {
                out.push(("general".into(), general.to_string()));
            }
            if both {
                verdict = Some(qmatrix::gl_equal(ctx, &closed, &general));
            }
        }
        "action" => {
            let (f, a) = two_args(args)?;
            let x = parse::parse_qelement(ctx, a)?;
            let kind = parse_action_generator(ctx, f)?;
            let closed = braided::closed_action(ctx, kind, &x)?;
            let func = named_generator(ctx, kind.named())?;
            let general = braided::yd_action(ctx, &func, &x)?;
            if want(Form::Closed) {
                out.push(("closed".into(), closed.to_string()));
            }
            if want(Form::General) {
                out.push(("general".into(), general.to_string()));
            }
            if both {
                verdict = Some(qmatrix::gl_equal(ctx, &closed, &general));
            }
        }
        "coaction" => {
            let a = one_arg(args)?;
            let x = parse::parse_qelement(ctx, a)?;
            let closed = braided::closed_coaction(ctx, &x)?;
            let general = braided::yd_coaction(ctx, &x)?;
            if want(Form::Closed) {
                out.push(("closed".into(), mono_dual_text(&closed)));
            }
            if want(Form::General) {
                out.push(("general".into(), mono_dual_text(&general)));
            }
            if both {
                // coaction dual legs are compared semantically
                verdict = Some(braided::mono_dual_equal_upto(ctx, &closed, &general, 3)?.is_none());
            }
        }
        _ => return Err(format!("unknown braided operation `{op}`").into()),
    }
    Ok((out, verdict))
}

fn one_arg(args: &[String]) -> Result<&str, Box<dyn std::error::Error>> {
    match args {
        [a] => Ok(a),
        _ => Err("expected one argument".into()),
    }
}

fn two_args(args: &[String]) -> Result<(&str, &str), Box<dyn std::error::Error>> {
    match args {
        [a, b] => Ok((a, b)),
        _ => Err("expected two arguments".into()),
    }
}

fn parse_action_generator(
    ctx: &QzContext,
    s: &str,
) -> Result<braided::ActionGenerator, Box<dyn std::error::Error>> {
    let s = s.trim();
    let (name, idx) = s
        .split_once('[')
        .ok_or_else(|| format!("expected a functional generator, got `{s}`"))?;
    let idx: usize = idx
        .trim_end_matches(']')
        .trim()
        .parse()
        .map_err(|_| format!("bad index in `{s}`"))?;
    let g = match name.trim() {
        "Khat" => braided::ActionGenerator::KHat(idx),
        "Khat_inv" => braided::ActionGenerator::KHatInv(idx),
        "E" => braided::ActionGenerator::E(idx),
        "F" => braided::ActionGenerator::F(idx),
        _ => return Err(format!("no closed action for `{s}`").into()),
    };
    // validate the index against the context
    named_generator(ctx, g.named())?;
    Ok(g)
}

fn tensor_text(t: &qmatrix::TensorElement) -> String {
    if t.is_empty() {
        return "0".into();
    }
    t.iter()
        .map(|((a, b), c)| format!("({c}) * {a} (x) {b}"))
        .collect::<Vec<_>>()
        .join(" + ")
}

fn mono_dual_text(t: &braided::MonoDual) -> String {
    if t.is_empty() {
        return "0".into();
    }
    t.iter()
        .map(|(m, f)| format!("[{f}] (x) {m}"))
        .collect::<Vec<_>>()
        .join(" + ")
}
