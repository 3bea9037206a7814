use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use voltops::analysis::{certify, find_lift, orbit_accounting, Verdict, DEFAULT_DIRECT_LIMIT};
use voltops::cosetenum::{coxeter_flag_graph, DEFAULT_CAP};
use voltops::coxword::parse_letters;
use voltops::format::{parse_pmx, parse_vop, read_pmx, read_vop, to_dot, write_pmx, write_vop};
use voltops::operators::{builtin, BUILTIN_NAMES};
use voltops::symmetry::{automorphisms, covers, is_isomorphic, stg};
use voltops::voltage::{compose, preserves_connectivity, product, Connectivity, VoltageOperator};
use voltops::{Error, Premaniplex};

#[derive(Parser)]
#[command(
    name = "voltops",
    version,
    about = "Voltage operations on premaniplexes"
)]
struct Cli {
    /// Output style for reports.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Check a .pmx or .vop file.
    Validate { file: PathBuf },
    /// Product X ⋊ Y.
    Apply {
        op: String,
        x: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Automorphism group order, orbit count and elements.
    Aut { x: PathBuf },
    /// Flag orbits under the automorphism group.
    Orbits { x: PathBuf },
    /// Symmetry type graph.
    Stg {
        x: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Whether X covers Z.
    Covers { x: PathBuf, z: PathBuf },
    /// Whether A and B are isomorphic.
    Iso { a: PathBuf, b: PathBuf },
    /// Orbit accounting and extra-symmetry certificate for X ⋊ Y.
    Analyze {
        op: String,
        x: PathBuf,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        /// Largest product compared by direct automorphism search.
        #[arg(long, default_value_t = DEFAULT_DIRECT_LIMIT)]
        direct_limit: usize,
    },
    /// Which automorphisms of Y lift to X ⋊ Y.
    Lifts { op: String, x: PathBuf },
    /// Composite operator: first OP1, then OP2.
    Compose {
        op1: String,
        op2: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Build premaniplexes.
    #[command(subcommand)]
    Build(Build),
    /// The operator zoo.
    #[command(subcommand)]
    Builtin(BuiltinCmd),
    /// DOT description of the colored flag graph.
    ExportDot {
        x: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum Build {
    /// Flag graph of a Schläfli symbol by coset enumeration.
    Coxeter {
        #[arg(required = true)]
        schlafli: Vec<usize>,
        /// Extra relator, e.g. `[0,1,2,0,1,2,0,1,2]`.
        #[arg(long = "relator")]
        relators: Vec<String>,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    Polygon {
        p: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    OneVertex {
        n: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Two flags; colors in the bracketed set are semi-edges.
    TwoFlag {
        n: usize,
        semi: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum BuiltinCmd {
    List,
    Export {
        name: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

enum Failure {
    Domain(Error),
    Inconclusive(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Capped { .. } => Failure::Inconclusive(e.to_string()),
            e => Failure::Domain(e),
        }
    }
}

type Outcome = Result<Report, Failure>;

/// What a command prints, and its exit status when it succeeded.
struct Report {
    text: String,
    json: Value,
    code: u8,
}

impl Report {
    fn ok(text: String, json: Value) -> Self {
        Report {
            text,
            json,
            code: 0,
        }
    }
}

fn read_text(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn load_pmx(path: &Path) -> Result<Premaniplex, Failure> {
    Ok(read_pmx(&read_text(path)?)?)
}

fn load_op(spec: &str) -> Result<VoltageOperator, Failure> {
    match spec.strip_prefix("builtin:") {
        Some(name) => Ok(builtin(name)?),
        None => Ok(read_vop(&read_text(Path::new(spec))?)?),
    }
}

/// Writes `body` to `output`, or returns it as the report when absent.
fn emit(body: String, output: Option<PathBuf>, what: &str, json: Value) -> Outcome {
    match output {
        Some(path) => {
            fs::write(&path, &body).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
            Ok(Report::ok(
                format!("wrote {what} to {}", path.display()),
                json,
            ))
        }
        None => {
            let mut json = json;
            json["content"] = Value::String(body.clone());
            Ok(Report::ok(body.trim_end().to_string(), json))
        }
    }
}

fn emit_pmx(p: &Premaniplex, output: Option<PathBuf>) -> Outcome {
    let json = json!({ "rank": p.rank(), "flags": p.flag_count() });
    emit(write_pmx(p), output, "premaniplex", json)
}

fn emit_vop(op: &VoltageOperator, output: Option<PathBuf>) -> Outcome {
    let json = json!({
        "source_rank": op.source_rank(),
        "rank": op.rank(),
        "flags": op.flag_count(),
    });
    emit(write_vop(op), output, "operator", json)
}

fn validate(path: &Path) -> Outcome {
    let text = read_text(path)?;
    let is_vop = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .is_some_and(|l| l.starts_with("vop"));
    let mut problems: Vec<String> = Vec::new();
    if is_vop {
        let data = parse_vop(&text)?;
        let (structure, darts) = data.validate();
        problems.extend(structure.violations.iter().map(|v| v.to_string()));
        if let Some(d) = darts {
            problems.extend(d.violations.iter().map(|v| v.to_string()));
        }
    } else {
        let data = parse_pmx(&text)?;
        problems.extend(data.validate().violations.iter().map(|v| v.to_string()));
    }
    let kind = if is_vop { "operator" } else { "premaniplex" };
    let valid = problems.is_empty();
    let text = if valid {
        format!("valid {kind}")
    } else {
        std::iter::once(format!("invalid {kind}"))
            .chain(problems.iter().cloned())
            .collect::<Vec<_>>()
            .join("\n")
    };
    Ok(Report {
        text,
        json: json!({ "kind": kind, "valid": valid, "violations": problems }),
        code: if valid { 0 } else { 1 },
    })
}

fn aut(path: &Path) -> Outcome {
    let x = load_pmx(path)?;
    let g = automorphisms(&x)?;
    let mut text = format!("order: {}\norbits: {}", g.order(), g.orbit_count());
    for e in &g.elements {
        text.push_str(&format!("\nelement: {}", join(e.images())));
    }
    let elements: Vec<&[usize]> = g.elements.iter().map(|e| e.images()).collect();
    Ok(Report::ok(
        text,
        json!({ "order": g.order(), "orbits": g.orbit_count(), "elements": elements }),
    ))
}

fn orbit_report(path: &Path) -> Outcome {
    let x = load_pmx(path)?;
    let g = automorphisms(&x)?;
    let sizes = g.orbit_sizes();
    let text = format!("k: {}\nsizes: {}", g.orbit_count(), join(&sizes));
    Ok(Report::ok(
        text,
        json!({ "k": g.orbit_count(), "sizes": sizes, "orbits": g.orbits }),
    ))
}

fn join(v: &[usize]) -> String {
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn analyze(spec: &str, path: &Path, cap: usize, direct_limit: usize) -> Outcome {
    let op = load_op(spec)?;
    let x = load_pmx(path)?;
    let connectivity = preserves_connectivity(&op, cap);
    let mut lines = vec![format!("preserves_connectivity: {connectivity}")];
    let mut json = json!({ "preserves_connectivity": connectivity });
    let p = product(&x, &op)?;
    if p.is_connected() {
        let account = orbit_accounting(&x, &op)?;
        lines.push(account.to_string());
        json["account"] = serde_json::to_value(&account).expect("serializable");
    } else {
        lines.push(format!(
            "product: disconnected ({} components)",
            p.components().len()
        ));
    }
    let mut code = 0;
    match connectivity {
        Connectivity::Yes => {
            let cert = certify(&x, &op, cap, direct_limit)?;
            if cert.verdict == Verdict::Inconclusive {
                code = 2;
            }
            lines.push(cert.to_string());
            json["certificate"] = serde_json::to_value(&cert).expect("serializable");
        }
        Connectivity::Inconclusive { .. } => code = 2,
        Connectivity::No { .. } => {}
    }
    Ok(Report {
        text: lines.join("\n"),
        json,
        code,
    })
}

fn lifts(spec: &str, path: &Path) -> Outcome {
    let op = load_op(spec)?;
    let x = load_pmx(path)?;
    let aut_y = automorphisms(op.premaniplex())?;
    let mut lines = Vec::new();
    let mut rows = Vec::new();
    for tau in &aut_y.elements {
        let lift = find_lift(&x, &op, tau)?;
        let preserving = (0..op.rank())
            .all(|i| (0..op.flag_count()).all(|y| op.voltage(tau.image(y), i) == op.voltage(y, i)));
        lines.push(format!(
            "tau: {} lifts={} preserves_voltages={}",
            join(tau.images()),
            yes_no(lift.is_some()),
            yes_no(preserving)
        ));
        rows.push(json!({
            "tau": tau.images(),
            "lifts": lift.is_some(),
            "preserves_voltages": preserving,
            "lift": lift.as_ref().map(|l| l.images().to_vec()),
        }));
    }
    Ok(Report::ok(lines.join("\n"), Value::Array(rows)))
}

fn build(cmd: Build) -> Outcome {
    match cmd {
        Build::Coxeter {
            schlafli,
            relators,
            cap,
            output,
        } => {
            let relators = relators
                .iter()
                .map(|r| parse_letters(r))
                .collect::<voltops::Result<Vec<_>>>()?;
            emit_pmx(&coxeter_flag_graph(&schlafli, &relators, cap)?, output)
        }
        Build::Polygon { p, output } => emit_pmx(&Premaniplex::polygon(p)?, output),
        Build::OneVertex { n, output } => emit_pmx(&Premaniplex::one_vertex(n)?, output),
        Build::TwoFlag { n, semi, output } => {
            emit_pmx(&Premaniplex::two_flag(n, &parse_letters(&semi)?)?, output)
        }
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Validate { file } => validate(&file),
        Command::Apply { op, x, output } => {
            let op = load_op(&op)?;
            let p = product(&load_pmx(&x)?, &op)?;
            emit_pmx(&p, output)
        }
        Command::Aut { x } => aut(&x),
        Command::Orbits { x } => orbit_report(&x),
        Command::Stg { x, output } => emit_pmx(&stg(&load_pmx(&x)?)?, output),
        Command::Covers { x, z } => {
            let w = covers(&load_pmx(&x)?, &load_pmx(&z)?)?;
            let text = match &w {
                Some(w) => format!("yes\nbase_image: {}", w.target_of_base),
                None => "no".to_string(),
            };
            Ok(Report::ok(
                text,
                json!({ "covers": w.is_some(), "witness": w }),
            ))
        }
        Command::Iso { a, b } => {
            let w = is_isomorphic(&load_pmx(&a)?, &load_pmx(&b)?)?;
            let text = match &w {
                Some(map) => format!("yes\nmap: {}", join(map)),
                None => "no".to_string(),
            };
            Ok(Report::ok(
                text,
                json!({ "isomorphic": w.is_some(), "map": w }),
            ))
        }
        Command::Analyze {
            op,
            x,
            cap,
            direct_limit,
        } => analyze(&op, &x, cap, direct_limit),
        Command::Lifts { op, x } => lifts(&op, &x),
        Command::Compose { op1, op2, output } => {
            emit_vop(&compose(&load_op(&op1)?, &load_op(&op2)?)?, output)
        }
        Command::Build(b) => build(b),
        Command::Builtin(BuiltinCmd::List) => {
            Ok(Report::ok(BUILTIN_NAMES.join("\n"), json!(BUILTIN_NAMES)))
        }
        Command::Builtin(BuiltinCmd::Export { name, output }) => emit_vop(&builtin(&name)?, output),
        Command::ExportDot { x, output } => {
            let p = load_pmx(&x)?;
            let json = json!({ "flags": p.flag_count() });
            emit(to_dot(&p), output, "graph", json)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let format = cli.format;
    let (message, code) = match run(cli) {
        Ok(report) => {
            let body = match format {
                Format::Text => report.text,
                Format::Json => serde_json::to_string_pretty(&report.json).expect("json"),
            };
            let _ = writeln!(std::io::stdout().lock(), "{body}");
            return ExitCode::from(report.code);
        }
        Err(Failure::Domain(e)) => (e.to_string(), 1),
        Err(Failure::Inconclusive(m)) => (m, 2),
        Err(Failure::Io(m)) => (m, 3),
    };
    eprintln!("error: {message}");
    ExitCode::from(code)
}
