mod report;
mod select;
mod tables;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use lcentral::lseries::{completed_deriv, lambda_deriv_integral, lambda_deriv_sum, DerivativeRequest, LValueResult, Method};
use lcentral::qseries::{load_coefficients, write_coefficients, CoefficientSource, FormSpec};
use lcentral::{Error, PrecisionContext};

use report::{complex_text, ResultRecord};
use select::FormSelector;
use tables::{TableId, TableOutcome};

const OK: u8 = 0;
const USAGE: u8 = 1;
const NUMERIC: u8 = 2;

#[derive(Parser, Debug)]
#[command(name = "lcentral", version, about = "Central values and derivatives of L-functions of modular forms")]
struct Cli {
    /// Regenerate a published table; same as the `table` command.
    #[arg(long, value_enum)]
    reproduce: Option<TableId>,

    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    output: OutputFormat,

    /// Directory for cached coefficient tables (overrides LCENTRAL_CACHE_DIR).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute central values or derivatives.
    Compute(ComputeArgs),
    /// Recompute a published table and compare with it.
    Table {
        #[arg(value_enum)]
        table: TableId,
    },
    /// Print an exact q-expansion in the coefficient file format.
    Qexp {
        /// builtin:NAME, eta:EXPR, file:PATH or lmfdb:LABEL
        form: FormSelector,
        /// Print coefficients up to q^(order-1).
        #[arg(long, default_value_t = 10)]
        order: i64,
    },
    /// Fetch a newform's coefficients (bundled, cached or remote) and print them.
    Fetch {
        label: String,
        /// Minimum number of coefficients required.
        #[arg(long, default_value_t = 1)]
        order: i64,
    },
}

#[derive(clap::Args, Debug)]
struct ComputeArgs {
    /// builtin:NAME, file:PATH, lmfdb:LABEL or eta:EXPR
    #[arg(long)]
    form: FormSelector,
    /// Derivative order; repeat for several.
    #[arg(long = "derivative", default_value = "0")]
    derivatives: Vec<usize>,
    #[arg(long, value_enum, default_value_t = MethodArg::Both)]
    method: MethodArg,
    /// Working precision in bits.
    #[arg(long, default_value_t = 53, value_parser = clap::value_parser!(u32).range(24..=1000))]
    prec: u32,
    /// Fixed Gauss–Legendre degree instead of adaptive doubling.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..=65536))]
    quad_degree: Option<u64>,
    /// Number of terms generated for builtin and eta forms.
    #[arg(long)]
    order: Option<i64>,
    /// Fricke sign asserted for eta quotients.
    #[arg(long, default_value_t = 1, allow_hyphen_values = true, value_parser = parse_sign)]
    fricke: i8,
    /// Assert that all lower derivatives vanish, so the plain derivative is exact.
    #[arg(long)]
    assume_lower_vanish: bool,
}

fn parse_sign(s: &str) -> Result<i8, String> {
    match s {
        "1" | "+1" | "+" => Ok(1),
        "-1" | "-" => Ok(-1),
        _ => Err(format!("expected +1 or -1, got '{s}'")),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Integral,
    Sum,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

fn code_for(e: &Error) -> u8 {
    if e.is_usage() {
        USAGE
    } else {
        NUMERIC
    }
}

fn fail(e: &Error) -> u8 {
    eprintln!("error: {e}");
    code_for(e)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { USAGE } else { OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(dir) = &cli.cache_dir {
        std::env::set_var("LCENTRAL_CACHE_DIR", dir);
    }
    let code = match (&cli.command, cli.reproduce) {
        (Some(_), Some(_)) => {
            eprintln!("error: --reproduce cannot be combined with a subcommand");
            USAGE
        }
        (None, Some(t)) => cmd_table(t, cli.output),
        (Some(Command::Table { table }), None) => cmd_table(*table, cli.output),
        (Some(Command::Compute(args)), None) => cmd_compute(args, cli.output),
        (Some(Command::Qexp { form, order }), None) => cmd_qexp(form, *order),
        (Some(Command::Fetch { label, order }), None) => cmd_fetch(label, *order),
        (None, None) => {
            eprintln!("error: nothing to do; try --help");
            USAGE
        }
    };
    ExitCode::from(code)
}

fn print_json<T: serde::Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("records serialize"));
}

fn cmd_table(id: TableId, output: OutputFormat) -> u8 {
    let outcome: TableOutcome = match tables::run(id) {
        Ok(o) => o,
        Err(e) => return fail(&e),
    };
    match output {
        OutputFormat::Json => {
            let rows: Vec<serde_json::Value> = outcome
                .rows
                .iter()
                .map(|r| match r {
                    Ok(rec) => serde_json::to_value(rec).expect("records serialize"),
                    Err(e) => serde_json::json!({ "form": e.form, "derivative": e.derivative, "error": e.message }),
                })
                .collect();
            print_json(&serde_json::json!({ "title": outcome.title, "pass": outcome.all_pass(), "rows": rows }));
        }
        OutputFormat::Text => {
            println!("{}", outcome.title);
            for row in &outcome.rows {
                match row {
                    Ok(rec) => {
                        let r = &rec.result;
                        println!("{:<11} r={}  {}", r.form, r.derivative, complex_text(&r.value_re, &r.value_im));
                        println!("{:<16} published {}", "", complex_text(&rec.reference_re, &rec.reference_im));
                        let mut line = format!("{:<16} deviation {:.1e} (tolerance {:.0e})", "", rec.deviation, rec.tolerance);
                        if let Some(err) = rec.published_err {
                            line += &format!(", published err {err:.0e}");
                        }
                        if let Some(gap) = rec.published_gap {
                            line += &format!(", published vs our integral {gap:.1e}");
                        }
                        if let Some(gap) = rec.method_gap {
                            line += &format!(", |integral - sum| {gap:.1e}");
                        }
                        line += if rec.pass { "  PASS" } else { "  FAIL" };
                        println!("{line}");
                        eprintln!("timing: {} r={} {:.1} ms", r.form, r.derivative, r.wall_ms);
                    }
                    Err(e) => println!("{:<11} r={}  error: {}  FAIL", e.form, e.derivative, e.message),
                }
            }
        }
    }
    if outcome.all_pass() {
        OK
    } else {
        NUMERIC
    }
}

fn default_order(bits: u32) -> i64 {
    (2 * bits as i64).max(100)
}

/// Evaluates every requested derivative by every requested method.
fn evaluate(form: &FormSpec, args: &ComputeArgs, ctx: &PrecisionContext) -> lcentral::Result<Vec<LValueResult>> {
    let methods: &[Method] = match args.method {
        MethodArg::Integral => &[Method::Integral],
        MethodArg::Sum => &[Method::Sum],
        MethodArg::Both => &[Method::Integral, Method::Sum],
    };
    let mut out = Vec::new();
    for &m in &args.derivatives {
        let mut req = DerivativeRequest::new(form.clone(), m, ctx.clone()).with_quad_degree(args.quad_degree.map(|n| n as usize));
        req.assume_lower_vanish = args.assume_lower_vanish;
        for &method in methods {
            let v = if form.is_holomorphic() {
                completed_deriv(&req, method)?
            } else if method == Method::Sum {
                lambda_deriv_sum(&req)?
            } else {
                lambda_deriv_integral(&req)?
            };
            out.push(v);
        }
    }
    Ok(out)
}

fn cmd_compute(args: &ComputeArgs, output: OutputFormat) -> u8 {
    let ctx = match PrecisionContext::new(args.prec) {
        Ok(c) => c,
        Err(e) => return fail(&e),
    };
    let mut order = args.order.unwrap_or_else(|| default_order(args.prec));
    let started = Instant::now();
    let (form, values) = loop {
        let form = match args.form.load(order, args.fricke) {
            Ok(f) => f,
            Err(e) => return fail(&e),
        };
        match evaluate(&form, args, &ctx) {
            Ok(v) => break (form, v),
            Err(Error::InsufficientOrder { required, .. }) if args.form.is_generated() && args.order.is_none() && required >= order => {
                order = required + 16;
            }
            Err(e) => return fail(&e),
        }
    };
    let quantity = if form.is_holomorphic() { "completed" } else { "lambda" };
    let digits = ctx.digits() as usize;
    let records: Vec<ResultRecord> = values
        .iter()
        .zip(args.derivatives.iter().flat_map(|&m| std::iter::repeat(m).take(if args.method == MethodArg::Both { 2 } else { 1 })))
        .map(|(v, m)| ResultRecord::new(form.label(), quantity, m, v, digits))
        .collect();
    // pairs of (integral, sum) for the same derivative
    let mut disagree = false;
    let gaps: Vec<Option<f64>> = if args.method == MethodArg::Both {
        values
            .chunks(2)
            .map(|pair| {
                let d = (&pair[0].value - &pair[1].value).abs_f64();
                disagree |= d > pair[0].error_estimate + pair[1].error_estimate;
                Some(d)
            })
            .collect()
    } else {
        vec![None; args.derivatives.len()]
    };
    let centre = form.weight() / 2;
    match output {
        OutputFormat::Json => print_json(&records),
        OutputFormat::Text => {
            let kind = if form.is_holomorphic() { "cusp form" } else { "weakly holomorphic form" };
            println!(
                "form {}: weight {}, level {}, {kind}, coefficients through q^{}",
                form.label(),
                form.weight(),
                form.level(),
                form.expansion().n_max()
            );
            println!("Fricke sign {:+} (asserted by the source, not verified)", form.fricke());
            let per = records.len() / args.derivatives.len().max(1);
            for (chunk, gap) in records.chunks(per.max(1)).zip(&gaps) {
                for r in chunk {
                    println!("{}", r.text_line(centre));
                }
                if let Some(d) = gap {
                    println!("{:<16} {:<12} {:.1e}", "", "difference", d);
                }
                if let Some(line) = chunk.first().and_then(|r| r.plain_line(centre)) {
                    println!("{line}");
                }
            }
            for r in &records {
                eprintln!("timing: {} m={} {:.1} ms", r.method, r.derivative, r.wall_ms);
            }
            eprintln!("timing: total {:.1} ms", started.elapsed().as_secs_f64() * 1e3);
        }
    }
    if disagree {
        eprintln!("error: the integral and sum methods disagree beyond their error estimates");
        return NUMERIC;
    }
    OK
}

fn cmd_qexp(selector: &FormSelector, order: i64) -> u8 {
    if order < 1 {
        eprintln!("error: --order must be positive");
        return USAGE;
    }
    let form = match selector.load(order.max(4), 1) {
        Ok(f) => f,
        Err(e) => return fail(&e),
    };
    let e = form.expansion();
    let n_max = (order - 1).min(e.n_max());
    let truncated = match FormSpec::new(form.label(), form.weight(), form.level(), form.fricke(), e.truncate(n_max), Some(form.deligne_applicable())) {
        Ok(f) => f,
        Err(err) => return fail(&err),
    };
    print!("{}", write_coefficients(&truncated));
    OK
}

fn cmd_fetch(label: &str, order: i64) -> u8 {
    match load_coefficients(&CoefficientSource::Remote(label.into()), order) {
        Ok(f) => {
            eprintln!("{}: weight {}, level {}, {} coefficients", label, f.weight(), f.level(), f.expansion().n_max());
            print!("{}", write_coefficients(&f));
            OK
        }
        Err(e) => fail(&e),
    }
}
