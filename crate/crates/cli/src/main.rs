use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use liftkit::document::{cascade_to_json, parse_cascade, parse_matrix, CascadeDocument};
use liftkit::factorize::{dyadic_liftability, DyadicLiftability};
use liftkit::structures::{cascade_in_structure, dc_normalized, BaseSetSpec};
use liftkit::{
    equivalent_mod_rescaling, factor_generic, factor_in_structure_traced, fixtures, is_d_invariant,
    is_order_increasing, sampling, Cascade, EquivalenceVerdict, Error, GroupLiftingStructure, OrderIncrease,
    PolyMatrix, Scalar,
};
use serde_json::{json, Value};

const EXIT_PARSE: u8 = 2;
const EXIT_PRECONDITION: u8 = 3;
const EXIT_NOT_FACTORABLE: u8 = 4;
const EXIT_INEQUIVALENT: u8 = 5;

/// Exact lifting factorization toolkit.
#[derive(Parser)]
#[command(name = "liftkit", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct Output {
    /// Emit a JSON report (default).
    #[arg(long, global = true, conflicts_with = "pretty")]
    json: bool,
    /// Emit a human-readable summary instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Multiply out a cascade document.
    Multiply { file: PathBuf },
    /// Merge same-characteristic neighbours and drop identity steps.
    Reduce { file: PathBuf },
    /// Factor a matrix (or the product of a cascade document).
    Factor {
        file: PathBuf,
        /// ws, ws-reversible, hs, hs-reversible, elasf or generic.
        #[arg(long, default_value = "generic")]
        structure: String,
        /// Print each peel as a JSON line on stderr.
        #[arg(long)]
        verbose: bool,
    },
    /// Check membership, irreducibility and the order-increasing property.
    Check {
        file: PathBuf,
        #[arg(long)]
        structure: Option<String>,
        /// Also test 64 seeded random cascades of the structure.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Decide equivalence modulo rescaling of two cascades.
    Equiv {
        a: PathBuf,
        b: PathBuf,
        /// Reduce both cascades to irreducible form first.
        #[arg(long)]
        reduce: bool,
    },
    /// List or emit built-in example documents.
    Examples {
        name: Option<String>,
        #[arg(long, default_value = "2", allow_hyphen_values = true)]
        b: Scalar,
        #[arg(long, default_value = "3", allow_hyphen_values = true)]
        c: Scalar,
        /// Write each document to DIR/<label>.json.
        #[arg(long, value_name = "DIR")]
        write: Option<PathBuf>,
    },
}

struct Failure {
    code: u8,
    message: String,
    detail: Value,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure { code, message: message.into(), detail: Value::Null }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) => EXIT_PARSE,
            Error::NotFactorable(_) | Error::PeelFailed { .. } => EXIT_NOT_FACTORABLE,
            _ => EXIT_PRECONDITION,
        };
        Failure::new(code, e.to_string())
    }
}

/// A finished command: JSON report, text summary and exit status.
struct Report {
    json: Value,
    text: String,
    code: u8,
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {e}", path.display())))
}

fn load_cascade(path: &Path) -> Result<Cascade, Failure> {
    Ok(parse_cascade(&read(path)?)?)
}

fn structure(name: &str) -> Result<GroupLiftingStructure, Failure> {
    GroupLiftingStructure::by_name(name).ok_or_else(|| Failure::new(EXIT_PARSE, format!("unknown structure {name:?}")))
}

fn doc(c: &Cascade) -> Value {
    serde_json::to_value(CascadeDocument::from_cascade(c)).expect("documents serialize")
}

fn mat(m: &PolyMatrix) -> Value {
    serde_json::to_value(m).expect("matrices serialize")
}

fn order_json(o: &OrderIncrease) -> Value {
    serde_json::to_value(o).expect("serializes")
}

fn multiply(file: &Path) -> Result<Report, Failure> {
    let c = load_cascade(file)?;
    let p = c.product();
    let order = p.order().ok();
    let json = json!({
        "command": "multiply",
        "input": file,
        "product": mat(&p),
        "det": p.det(),
        "order": order,
        "is_unimodular": p.is_unimodular(),
        "is_ws": p.is_ws(),
        "is_hs": p.is_hs(),
        "dc_normalized": dc_normalized(&p),
    });
    let text = format!(
        "product = {p}\ndet = {}\norder = {}\nWS: {}  HS: {}  DC-normalized: {}",
        p.det(),
        order.map_or("undefined".into(), |o| o.to_string()),
        p.is_ws(),
        p.is_hs(),
        dc_normalized(&p)
    );
    Ok(Report { json, text, code: 0 })
}

fn reduce(file: &Path) -> Result<Report, Failure> {
    let c = load_cascade(file)?;
    let r = c.reduce_to_irreducible();
    let preserved = r.product() == c.product();
    if !preserved {
        return Err(Failure::new(EXIT_PRECONDITION, "reduction changed the product"));
    }
    let json = json!({
        "command": "reduce",
        "input": file,
        "cascade": doc(&r),
        "steps_before": c.len(),
        "steps_after": r.len(),
        "product_preserved": preserved,
    });
    let text = format!("{r}\n{} steps -> {} steps, product preserved", c.len(), r.len());
    Ok(Report { json, text, code: 0 })
}

fn factor(file: &Path, structure_name: &str, verbose: bool) -> Result<Report, Failure> {
    let h = parse_matrix(&read(file)?)?;
    if structure_name == "generic" {
        let c = factor_generic(&h)?;
        let ok = c.product() == h;
        let json = json!({
            "command": "factor",
            "input": file,
            "structure": "generic",
            "cascade": doc(&c),
            "verification": { "irreducible": c.is_irreducible(), "product_matches": ok },
        });
        return Ok(Report { json, text: format!("{c}\nproduct matches: {ok}"), code: 0 });
    }
    let s = structure(structure_name)?;
    let mut trace = Vec::new();
    let result = factor_in_structure_traced(&h, &s, &mut trace);
    if verbose {
        for rep in &trace {
            eprintln!("{}", serde_json::to_string(rep).expect("serializes"));
        }
    }
    let c = result.map_err(|e| Failure { detail: json!({ "peels": trace }), ..Failure::from(e) })?;
    let order = is_order_increasing(&c)?;
    let mut verification = json!({
        "in_structure": cascade_in_structure(&c, &s),
        "irreducible": c.is_irreducible(),
        "order_increasing": order.holds(),
        "product_matches": c.product() == h,
    });
    if s.bases == BaseSetSpec::ConcentricEqualLengthHSDyadicLiftable {
        let confirmed = matches!(dyadic_liftability(&c.base)?, DyadicLiftability::Confirmed(_));
        verification["dyadic_liftable"] = json!(if confirmed { "confirmed" } else { "not confirmed" });
    }
    let text = format!("{c}\nverification: {verification}");
    let json = json!({
        "command": "factor",
        "input": file,
        "structure": structure_name,
        "cascade": doc(&c),
        "verification": verification,
    });
    Ok(Report { json, text, code: 0 })
}

fn check(file: &Path, structure_name: Option<&str>, seed: Option<u64>) -> Result<Report, Failure> {
    let c = load_cascade(file)?;
    let mut json = json!({ "command": "check", "input": file, "irreducible": c.is_irreducible() });
    let mut text = vec![format!("irreducible: {}", c.is_irreducible())];
    match is_order_increasing(&c) {
        Ok(o) => {
            text.push(match &o {
                OrderIncrease::Increasing => "order-increasing: true".to_string(),
                OrderIncrease::NotIncreasing { index, before, after } => {
                    format!("order-increasing: false at n = {index} (order {before} -> {after})")
                }
            });
            json["order_increasing"] = order_json(&o);
        }
        Err(e) => {
            text.push(format!("order-increasing: {e}"));
            json["order_increasing"] = json!({ "result": "undefined", "reason": e.to_string() });
        }
    }
    if let Some(name) = structure_name {
        let s = structure(name)?;
        let member = cascade_in_structure(&c, &s);
        json["structure"] = json!(name);
        json["in_structure"] = json!(member);
        json["d_invariant"] = json!(is_d_invariant(&s));
        text.push(format!("in {name}: {member}"));
        text.push(format!("D-invariant: {}", is_d_invariant(&s)));
        if let Some(seed) = seed {
            let mut rng = sampling::rng(seed);
            let total = 64;
            let increasing = (0..total)
                .filter(|_| {
                    let r = sampling::irreducible_cascade(&mut rng, &s, 4, 4);
                    is_order_increasing(&r).map(|o| o.holds()).unwrap_or(false)
                })
                .count();
            json["sampled"] = json!({ "seed": seed, "cascades": total, "order_increasing": increasing });
            text.push(format!("sampled: {increasing}/{total} random cascades order-increasing (seed {seed})"));
        }
    } else if seed.is_some() {
        return Err(Failure::new(EXIT_PARSE, "--seed needs --structure"));
    }
    Ok(Report { json, text: text.join("\n"), code: 0 })
}

fn equiv(a: &Path, b: &Path, reduce: bool) -> Result<Report, Failure> {
    let (mut ca, mut cb) = (load_cascade(a)?, load_cascade(b)?);
    if reduce {
        ca = ca.reduce_to_irreducible();
        cb = cb.reduce_to_irreducible();
    }
    let verdict = equivalent_mod_rescaling(&ca, &cb)?;
    let mut json = json!({ "command": "equiv", "a": a, "b": b });
    let code = match &verdict {
        EquivalenceVerdict::Identical => {
            json["verdict"] = json!("identical");
            json["alpha"] = json!(Scalar::one());
            0
        }
        EquivalenceVerdict::EquivalentModuloRescaling { alpha } => {
            json["verdict"] = json!("equivalent_modulo_rescaling");
            json["alpha"] = json!(alpha);
            0
        }
        EquivalenceVerdict::Inequivalent { reason } => {
            json["verdict"] = json!("inequivalent");
            json["reason"] = json!(reason);
            EXIT_INEQUIVALENT
        }
    };
    Ok(Report { json, text: verdict.to_string(), code })
}

fn examples(name: Option<&str>, b: &Scalar, c: &Scalar, write: Option<&Path>) -> Result<Report, Failure> {
    let Some(name) = name else {
        let json = json!({ "command": "examples", "examples": fixtures::NAMES });
        return Ok(Report { json, text: fixtures::NAMES.join("\n"), code: 0 });
    };
    let docs: Vec<(String, Cascade)> = if name == "example1" {
        let ex = fixtures::example1(b, c)?;
        vec![("example1-A".into(), ex.first), ("example1-B".into(), ex.second)]
    } else {
        fixtures::by_name(name).ok_or_else(|| Failure::new(EXIT_PARSE, format!("unknown example {name:?}")))?
    };
    if let Some(dir) = write {
        std::fs::create_dir_all(dir).map_err(|e| Failure::new(EXIT_PRECONDITION, e.to_string()))?;
        for (label, cascade) in &docs {
            std::fs::write(dir.join(format!("{label}.json")), cascade_to_json(cascade))
                .map_err(|e| Failure::new(EXIT_PRECONDITION, e.to_string()))?;
        }
    }
    let text = docs.iter().map(|(l, c)| format!("{l}: {c}")).collect::<Vec<_>>().join("\n");
    let json = match docs.as_slice() {
        [(_, only)] => doc(only),
        _ => Value::Object(docs.iter().map(|(l, c)| (l.clone(), doc(c))).collect()),
    };
    Ok(Report { json, text, code: 0 })
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Multiply { .. } => "multiply",
        Command::Reduce { .. } => "reduce",
        Command::Factor { .. } => "factor",
        Command::Check { .. } => "check",
        Command::Equiv { .. } => "equiv",
        Command::Examples { .. } => "examples",
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match &cli.command {
        Command::Multiply { file } => multiply(file),
        Command::Reduce { file } => reduce(file),
        Command::Factor { file, structure, verbose } => factor(file, structure, *verbose),
        Command::Check { file, structure, seed } => check(file, structure.as_deref(), *seed),
        Command::Equiv { a, b, reduce } => equiv(a, b, *reduce),
        Command::Examples { name, b, c, write } => examples(name.as_deref(), b, c, write.as_deref()),
    };
    let report = result.unwrap_or_else(|f| {
        let mut json = json!({ "command": command_name(&cli.command), "error": f.message });
        if !f.detail.is_null() {
            json["detail"] = f.detail;
        }
        Report { json, text: format!("error: {}", f.message), code: f.code }
    });
    if cli.output.pretty && !cli.output.json {
        if report.json.get("error").is_some() {
            eprintln!("{}", report.text);
        } else {
            println!("{}", report.text);
        }
    } else {
        let mut json = report.json;
        if json.get("command").is_some() {
            json["exit"] = json!(report.code);
        }
        println!("{}", serde_json::to_string_pretty(&json).expect("serializes"));
    }
    ExitCode::from(report.code)
}
