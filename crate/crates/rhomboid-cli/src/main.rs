//! Batch command-line interface over the rhomboid library: graph export,
//! factored expression generation, oracle verification, and complexity
//! tables.
//!
//! Exit codes are a stable contract: 0 on success, 1 when a verification
//! or cross-check fails, 2 on invalid arguments.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use rhomboid_core::analysis::{
    closed_form_2vdm, crosscheck, emit_table, verify_expression, CrosscheckReport,
    EquivalenceKind, VerifyConfig,
};
use rhomboid_core::expr::{self, parse as parse_expr, render};
use rhomboid_core::graph::{build_fibonacci, build_fsr, build_sr, export_dot, StDag};
use rhomboid_core::vdm::{generate, RhomboidFamily, SubgraphSpec};
use rhomboid_core::{Method, ShapeClass};

/// Largest size `--check-generator` will actually generate expressions for.
const MAX_GENERATION_SIZE: u32 = 128;

#[derive(Parser)]
#[command(
    name = "rhomboid",
    version,
    about = "Square-rhomboid graphs, factored st-dag expressions, and their complexity tables"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Seed for all randomized operations (trial t uses seed + t).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Prime modulus for randomized equivalence.
    #[arg(long, global = true, default_value_t = expr::DEFAULT_MODULUS)]
    modulus: u64,

    /// Number of randomized-equivalence trials.
    #[arg(long, global = true, default_value_t = expr::DEFAULT_TRIALS)]
    trials: u32,

    /// Ceiling on exact-expansion work, in monomial symbols.
    #[arg(long, global = true, default_value_t = expr::DEFAULT_EXPANSION_BOUND)]
    expansion_bound: u64,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Build a graph family member and print it.
    Graph(GraphArgs),
    /// Generate the factored expression for a subgraph shape.
    Expr(ExprArgs),
    /// Verify a generated (or supplied) expression against the path oracle.
    Verify(VerifyArgs),
    /// Print complexity tables; optionally cross-check the generator.
    Table(TableArgs),
}

#[derive(Args)]
struct GraphArgs {
    #[arg(long, value_enum)]
    family: GraphFamilyArg,
    /// Size: basic-vertex count for fsr/sr, vertex count for fibonacci.
    #[arg(long)]
    n: u32,
    #[arg(long, value_enum, default_value_t = GraphFormat::Dot)]
    format: GraphFormat,
}

#[derive(Args)]
struct ExprArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    #[arg(long, value_enum)]
    shape: ShapeArg,
    #[arg(long)]
    n: u32,
    #[arg(long, value_enum)]
    method: MethodArg,
    #[arg(long, value_enum, default_value_t = TextFormat::Text)]
    format: TextFormat,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    #[arg(long, value_enum)]
    shape: ShapeArg,
    #[arg(long)]
    n: u32,
    #[arg(long, value_enum)]
    method: MethodArg,
    /// Verify this expression file instead of the generated expression.
    #[arg(long)]
    expr_file: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = TextFormat::Text)]
    format: TextFormat,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long, value_enum)]
    method: MethodArg,
    /// Comma list with ranges, e.g. "1-10,20,30,40,50,60".
    #[arg(long, value_parser = parse_sizes)]
    sizes: SizeList,
    #[arg(long, value_enum, default_value_t = TableFormat::Text)]
    format: TableFormat,
    /// Also generate every expression and fail on any count or
    /// equivalence mismatch.
    #[arg(long)]
    check_generator: bool,
    /// Add the closed-form columns (2vdm only; sizes must be powers of two).
    #[arg(long)]
    closed_form: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFamilyArg {
    Fsr,
    Sr,
    Fibonacci,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Fsr,
    Sr,
}

impl From<FamilyArg> for RhomboidFamily {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Fsr => RhomboidFamily::Fsr,
            FamilyArg::Sr => RhomboidFamily::Sr,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ShapeArg {
    Core,
    Leaf,
    Dipterous,
}

impl From<ShapeArg> for ShapeClass {
    fn from(s: ShapeArg) -> Self {
        match s {
            ShapeArg::Core => ShapeClass::Core,
            ShapeArg::Leaf => ShapeClass::Leaf,
            ShapeArg::Dipterous => ShapeClass::Dipterous,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    #[value(name = "2vdm")]
    TwoVdm,
    #[value(name = "1vdm")]
    OneVdm,
    Combined,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::TwoVdm => Method::TwoVdm,
            MethodArg::OneVdm => Method::OneVdm,
            MethodArg::Combined => Method::Combined,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GraphFormat {
    Dot,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TextFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    Text,
    Csv,
    Json,
}

/// Sizes parsed from one comma/range list, ascending and deduplicated.
#[derive(Clone)]
struct SizeList(Vec<u32>);

fn parse_sizes(s: &str) -> Result<SizeList, String> {
    let mut out = Vec::new();
    for part in s.split(',') {
        let part = part.trim();
        if part.is_empty() {
            return Err("empty size entry".into());
        }
        if let Some((a, b)) = part.split_once('-') {
            let a: u32 = a.trim().parse().map_err(|_| format!("invalid size '{part}'"))?;
            let b: u32 = b.trim().parse().map_err(|_| format!("invalid size '{part}'"))?;
            if a == 0 || b < a {
                return Err(format!("invalid size range '{part}'"));
            }
            out.extend(a..=b);
        } else {
            let v: u32 = part.parse().map_err(|_| format!("invalid size '{part}'"))?;
            if v == 0 {
                return Err("invalid size 0".into());
            }
            out.push(v);
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(SizeList(out))
}

/// Command outcome: rendered output plus whether a check failed (exit 1).
struct Outcome {
    output: String,
    check_failed: bool,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Outcome { output, check_failed: false }
    }
}

enum CliError {
    /// Bad arguments or unusable input files: exit 2.
    Usage(String),
}

impl CliError {
    fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match build_config(&cli) {
        Ok(cfg) => cfg,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let result = match &cli.command {
        Command::Graph(args) => cmd_graph(args),
        Command::Expr(args) => cmd_expr(args),
        Command::Verify(args) => cmd_verify(args, &cfg),
        Command::Table(args) => cmd_table(args, &cfg),
    };
    let outcome = match result {
        Ok(o) => o,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    if let Some(path) = &cli.output {
        if let Err(e) = std::fs::write(path, outcome.output.as_bytes()) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    } else {
        print!("{}", outcome.output);
    }
    if outcome.check_failed {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn build_config(cli: &Cli) -> Result<VerifyConfig, CliError> {
    if cli.trials < 1 {
        return Err(CliError::usage("--trials must be at least 1"));
    }
    if cli.expansion_bound < 1 {
        return Err(CliError::usage("--expansion-bound must be at least 1"));
    }
    if !is_prime_u64(cli.modulus) || cli.modulus < 3 {
        return Err(CliError::usage(format!("--modulus {} is not an odd prime", cli.modulus)));
    }
    Ok(VerifyConfig {
        expansion_bound: cli.expansion_bound,
        trials: cli.trials,
        seed: cli.seed,
        modulus: cli.modulus,
        check_equivalence: true,
    })
}

/// Deterministic Miller-Rabin for u64.
fn is_prime_u64(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for p in WITNESSES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut r = 0u32;
    while d.is_multiple_of(2) {
        d /= 2;
        r += 1;
    }
    let mul = |a: u64, b: u64| (a as u128 * b as u128 % n as u128) as u64;
    let pow = |mut base: u64, mut exp: u64| {
        let mut acc = 1u64;
        base %= n;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mul(acc, base);
            }
            base = mul(base, base);
            exp >>= 1;
        }
        acc
    };
    'witness: for a in WITNESSES {
        let mut x = pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

// ---------------------------------------------------------------------------
// graph
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct EdgeDto {
    label: String,
    from: String,
    to: String,
}

#[derive(Serialize)]
struct GraphDto {
    family: String,
    size: u32,
    vertices: Vec<String>,
    edges: Vec<EdgeDto>,
}

fn cmd_graph(args: &GraphArgs) -> Result<Outcome, CliError> {
    let g: StDag = match args.family {
        GraphFamilyArg::Fsr => build_fsr(args.n),
        GraphFamilyArg::Sr => build_sr(args.n),
        GraphFamilyArg::Fibonacci => build_fibonacci(args.n),
    }
    .map_err(|e| CliError::usage(e.to_string()))?;

    let output = match args.format {
        GraphFormat::Dot => export_dot(&g),
        GraphFormat::Json => {
            let dto = GraphDto {
                family: g.family().to_string(),
                size: g.size(),
                vertices: g.vertices().iter().map(|v| v.to_string()).collect(),
                edges: g
                    .edges()
                    .iter()
                    .map(|e| EdgeDto {
                        label: e.label.to_string(),
                        from: e.from.to_string(),
                        to: e.to.to_string(),
                    })
                    .collect(),
            };
            to_json(&dto)
        }
    };
    Ok(Outcome::ok(output))
}

// ---------------------------------------------------------------------------
// expr
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct ExprDto {
    family: String,
    shape: String,
    n: u32,
    method: String,
    literals: u64,
    expression: String,
}

fn spec_for(family: FamilyArg, shape: ShapeArg, n: u32) -> Result<SubgraphSpec, CliError> {
    SubgraphSpec::canonical(family.into(), shape.into(), n)
        .map_err(|_| CliError::usage(format!("invalid size {n}")))
}

fn cmd_expr(args: &ExprArgs) -> Result<Outcome, CliError> {
    let spec = spec_for(args.family, args.shape, args.n)?;
    let method: Method = args.method.into();
    let e = generate(&spec, method).map_err(|err| CliError::usage(err.to_string()))?;
    let text = render(&e);
    let literals = e.complexity();
    let output = match args.format {
        TextFormat::Text => format!("{text}\nliterals: {literals}\n"),
        TextFormat::Json => to_json(&ExprDto {
            family: spec.family().to_string(),
            shape: ShapeClass::from(args.shape).to_string(),
            n: args.n,
            method: method.to_string(),
            literals,
            expression: text,
        }),
    };
    Ok(Outcome::ok(output))
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct VerifyDto {
    family: String,
    shape: String,
    n: u32,
    method: String,
    mode: String,
    pass: bool,
    /// Present only when the exact check failed: the commutative-image
    /// verdict (true means reordered monomials, not miscounted ones).
    #[serde(skip_serializing_if = "Option::is_none")]
    commutative_pass: Option<bool>,
}

fn cmd_verify(args: &VerifyArgs, cfg: &VerifyConfig) -> Result<Outcome, CliError> {
    let spec = spec_for(args.family, args.shape, args.n)?;
    let method: Method = args.method.into();

    let (candidate, parse_failure) = match &args.expr_file {
        None => {
            let e = generate(&spec, method).map_err(|err| CliError::usage(err.to_string()))?;
            (Some(e), None)
        }
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
            match parse_expr(text.trim()) {
                Ok(e) => (Some(e), None),
                Err(err) => (None, Some(err.to_string())),
            }
        }
    };

    // A candidate that does not even parse fails verification.
    let (mode, pass, commutative, detail) = match candidate {
        None => (EquivalenceKind::Skipped, false, None, parse_failure),
        Some(e) => {
            let outcome = verify_expression(&spec, &e, cfg)
                .map_err(|err| CliError::usage(err.to_string()))?;
            (outcome.mode, outcome.pass, outcome.commutative_pass, None)
        }
    };

    let output = match args.format {
        TextFormat::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "spec: {spec}");
            let _ = writeln!(out, "method: {method}");
            let _ = writeln!(out, "mode: {mode}");
            if let Some(d) = &detail {
                let _ = writeln!(out, "detail: {d}");
            }
            match commutative {
                Some(true) => {
                    let _ = writeln!(
                        out,
                        "commutative image: pass (monomials reordered, not miscounted)"
                    );
                }
                Some(false) => {
                    let _ = writeln!(out, "commutative image: fail");
                }
                None => {}
            }
            let _ = writeln!(out, "result: {}", if pass { "pass" } else { "fail" });
            out
        }
        TextFormat::Json => to_json(&VerifyDto {
            family: spec.family().to_string(),
            shape: ShapeClass::from(args.shape).to_string(),
            n: args.n,
            method: method.to_string(),
            mode: mode.to_string(),
            pass,
            commutative_pass: commutative,
        }),
    };
    Ok(Outcome { output, check_failed: !pass })
}

// ---------------------------------------------------------------------------
// table
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct TableRowDto {
    n: u32,
    core: u64,
    leaf: u64,
    dipterous: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    closed: Option<ClosedDto>,
}

#[derive(Serialize)]
struct ClosedDto {
    core: u64,
    leaf: u64,
    dipterous: u64,
}

#[derive(Serialize)]
struct TableDto {
    method: String,
    rows: Vec<TableRowDto>,
    #[serde(skip_serializing_if = "Option::is_none")]
    crosscheck: Option<CrosscheckDto>,
}

#[derive(Serialize)]
struct CrosscheckDto {
    all_pass: bool,
    rows: Vec<CrosscheckRowDto>,
}

#[derive(Serialize)]
struct CrosscheckRowDto {
    method: String,
    n: u32,
    shape: String,
    predicted: u64,
    generated: u64,
    equivalence: String,
    pass: bool,
}

fn crosscheck_dto(report: &CrosscheckReport) -> CrosscheckDto {
    CrosscheckDto {
        all_pass: report.all_pass(),
        rows: report
            .rows
            .iter()
            .map(|r| CrosscheckRowDto {
                method: r.method.to_string(),
                n: r.n,
                shape: r.shape.to_string(),
                predicted: r.predicted,
                generated: r.generated,
                equivalence: r.equivalence.to_string(),
                pass: r.pass,
            })
            .collect(),
    }
}

fn cmd_table(args: &TableArgs, cfg: &VerifyConfig) -> Result<Outcome, CliError> {
    let method: Method = args.method.into();
    let sizes = &args.sizes.0;
    if sizes.is_empty() {
        return Err(CliError::usage("--sizes must name at least one size"));
    }

    if args.closed_form {
        if method != Method::TwoVdm {
            return Err(CliError::usage("--closed-form applies to --method 2vdm only"));
        }
        if let Some(&n) = sizes.iter().find(|&&n| !n.is_power_of_two() || n < 2) {
            return Err(CliError::usage(format!(
                "--closed-form requires power-of-two sizes, got {n}"
            )));
        }
    }

    let table =
        emit_table(method, sizes).map_err(|e| CliError::usage(e.to_string()))?;

    let closed: Option<Vec<ClosedDto>> = if args.closed_form {
        Some(
            sizes
                .iter()
                .map(|&n| {
                    let k = n.trailing_zeros();
                    let t = closed_form_2vdm(k).map_err(|e| CliError::usage(e.to_string()))?;
                    Ok(ClosedDto { core: t.core, leaf: t.leaf, dipterous: t.dipterous })
                })
                .collect::<Result<_, CliError>>()?,
        )
    } else {
        None
    };

    let report = if args.check_generator {
        if let Some(&n) = sizes.iter().find(|&&n| n > MAX_GENERATION_SIZE) {
            return Err(CliError::usage(format!(
                "--check-generator generates expressions and is capped at size \
                 {MAX_GENERATION_SIZE}, got {n}"
            )));
        }
        Some(crosscheck(method, sizes, cfg).map_err(|e| CliError::usage(e.to_string()))?)
    } else {
        None
    };
    let check_failed = report.as_ref().is_some_and(|r| !r.all_pass());

    let output = match args.format {
        TableFormat::Json => {
            let rows = table
                .rows
                .iter()
                .enumerate()
                .map(|(k, (n, t))| TableRowDto {
                    n: *n,
                    core: t.core,
                    leaf: t.leaf,
                    dipterous: t.dipterous,
                    closed: closed.as_ref().map(|c| ClosedDto {
                        core: c[k].core,
                        leaf: c[k].leaf,
                        dipterous: c[k].dipterous,
                    }),
                })
                .collect();
            to_json(&TableDto {
                method: method.to_string(),
                rows,
                crosscheck: report.as_ref().map(crosscheck_dto),
            })
        }
        TableFormat::Csv => {
            let mut out = String::new();
            if args.closed_form {
                out.push_str("method,shape,n,literals,closed_form\n");
            } else {
                out.push_str("method,shape,n,literals\n");
            }
            for (k, (n, t)) in table.rows.iter().enumerate() {
                let cells = [
                    (ShapeClass::Core, t.core),
                    (ShapeClass::Leaf, t.leaf),
                    (ShapeClass::Dipterous, t.dipterous),
                ];
                for (shape, v) in cells {
                    if let Some(c) = &closed {
                        let cv = match shape {
                            ShapeClass::Core => c[k].core,
                            ShapeClass::Leaf => c[k].leaf,
                            ShapeClass::Dipterous => c[k].dipterous,
                        };
                        let _ = writeln!(out, "{method},{shape},{n},{v},{cv}");
                    } else {
                        let _ = writeln!(out, "{method},{shape},{n},{v}");
                    }
                }
            }
            if let Some(r) = &report {
                out.push('\n');
                out.push_str("method,n,shape,predicted,generated,equivalence,pass\n");
                for row in &r.rows {
                    let _ = writeln!(
                        out,
                        "{},{},{},{},{},{},{}",
                        row.method, row.n, row.shape, row.predicted, row.generated,
                        row.equivalence, row.pass
                    );
                }
            }
            out
        }
        TableFormat::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "method: {method}");
            if args.closed_form {
                let _ = writeln!(
                    out,
                    "{:>6} {:>10} {:>10} {:>10} {:>10} {:>10} {:>10}",
                    "n", "core", "leaf", "dipterous", "cf-core", "cf-leaf", "cf-dip"
                );
            } else {
                let _ = writeln!(
                    out,
                    "{:>6} {:>10} {:>10} {:>10}",
                    "n", "core", "leaf", "dipterous"
                );
            }
            for (k, (n, t)) in table.rows.iter().enumerate() {
                if let Some(c) = &closed {
                    let _ = writeln!(
                        out,
                        "{:>6} {:>10} {:>10} {:>10} {:>10} {:>10} {:>10}",
                        n, t.core, t.leaf, t.dipterous, c[k].core, c[k].leaf, c[k].dipterous
                    );
                } else {
                    let _ = writeln!(
                        out,
                        "{:>6} {:>10} {:>10} {:>10}",
                        n, t.core, t.leaf, t.dipterous
                    );
                }
            }
            if let Some(r) = &report {
                let _ = writeln!(out);
                for row in &r.rows {
                    let _ = writeln!(
                        out,
                        "check n={} {}: predicted {} generated {} equivalence {} {}",
                        row.n,
                        row.shape,
                        row.predicted,
                        row.generated,
                        row.equivalence,
                        if row.pass { "pass" } else { "FAIL" }
                    );
                }
                let _ = writeln!(
                    out,
                    "crosscheck: {}",
                    if r.all_pass() { "all pass" } else { "FAILURES" }
                );
            }
            out
        }
    };

    Ok(Outcome { output, check_failed })
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}
