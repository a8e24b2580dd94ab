//! The `kmf` command-line tool: one JSON job in, one deterministic document out.
//!
//! Exit codes: 0 on success, 1 on a domain error (the input is well formed but
//! violates a mathematical precondition), 2 on a schema or I/O error.

pub mod render;
pub mod schema;
pub mod selftest;

use clap::{Parser, Subcommand, ValueEnum};
use kmf::{
    beta, character, character_product, connected_transversal, leading_coefficient_closed_form,
    log_numerator, log_sum, numerator_u, peel_folded, peel_log_sum, recover_from_character_product,
    root_multiplicities, verify_equivalence, CartanMatrix, FactorizationResult, FoldContext, PvIndex, QSeries,
};
use serde_json::{json, Value};

#[derive(Debug, Parser)]
#[command(name = "kmf", version, about = "Characters and unique factorization for parabolic Verma modules")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Job file, or `-` for stdin.
    #[arg(long, global = true, default_value = "-")]
    pub input: String,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub output: Format,
    /// Truncation degree, overriding the job's `degree`.
    #[arg(long, global = true)]
    pub degree: Option<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Check a generalized Cartan matrix and print its symmetrizer.
    Validate,
    /// Normalized Weyl numerator U(lam, I).
    Numerator,
    /// Log-numerator L(lam, I) = -log U(lam, I).
    Logseries,
    /// Normalized character U(lam, I) / U(0, S).
    Character,
    /// Root multiplicities through the given degree.
    Multiplicities,
    /// Closed-form leading coefficient of L(lam, I).
    LeadingCoeff,
    /// Node classes of a partition or an automorphism group.
    Orbits,
    /// A connected transversal of the orbit partition.
    Transversal,
    /// Minimal and lean lifts of a class union K.
    LeanLifts,
    /// Recover factors from a sum of log-numerators or a character product.
    Factor,
    /// Recover factors from a folded sum of log-numerators.
    FactorFolded,
    /// Decide whether two factor lists give the same character product.
    Verify,
    /// Run the seeded round-trip suites.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        trials: usize,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("schema error at {pointer:?}: {message}")]
    Schema { pointer: String, message: String },
    #[error(transparent)]
    Domain(#[from] kmf::Error),
    #[error("factor {factor} has marker degree {degree} beyond the certified degree {cap}")]
    Uncertified { factor: String, degree: u32, cap: u32 },
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(_) | CliError::Uncertified { .. } => 1,
            CliError::Schema { .. } | CliError::Io(_) => 2,
        }
    }

    fn to_json(&self) -> Value {
        let kind = match self {
            CliError::Schema { .. } => "Schema".to_string(),
            CliError::Domain(e) => format!("{e:?}").chars().take_while(|c| c.is_alphanumeric()).collect(),
            CliError::Uncertified { .. } => "Uncertified".to_string(),
            CliError::Io(_) => "Io".to_string(),
        };
        let mut err = json!({ "kind": kind, "message": self.to_string() });
        if let CliError::Schema { pointer, .. } = self {
            err["pointer"] = json!(pointer);
        }
        json!({ "ok": false, "error": err })
    }
}

/// Everything a run writes: the document for stdout and the exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Response {
    pub stdout: String,
    pub code: i32,
}

struct Output {
    json: Value,
    text: String,
    code: i32,
}

impl Output {
    fn ok(json: Value, text: String) -> Self {
        Output { json, text, code: 0 }
    }
}

/// Run one job given as JSON text.
pub fn execute(cli: &Cli, input: &str) -> Response {
    let result = match &cli.command {
        Command::Selftest { seed, trials } => Ok(selftest_output(*seed, *trials)),
        cmd => serde_json::from_str::<Value>(input)
            .map_err(|e| CliError::Schema { pointer: String::new(), message: format!("invalid JSON: {e}") })
            .and_then(|doc| dispatch(cmd, &doc, cli.degree)),
    };
    match result {
        Ok(out) => Response { stdout: format_output(&out.json, &out.text, cli.output), code: out.code },
        Err(e) => {
            let text = format!("error: {e}");
            Response { stdout: format_output(&e.to_json(), &text, cli.output), code: e.exit_code() }
        }
    }
}

fn format_output(json: &Value, text: &str, format: Format) -> String {
    match format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(json).expect("values serialize")),
        Format::Text => format!("{text}\n"),
    }
}

fn with_ok(mut v: Value) -> Value {
    let mut out = serde_json::Map::new();
    out.insert("ok".into(), json!(true));
    if let Value::Object(m) = &mut v {
        out.extend(std::mem::take(m));
    }
    Value::Object(out)
}

fn dispatch(cmd: &Command, doc: &Value, degree: Option<u32>) -> schema::Result<Output> {
    let cm = schema::gcm(doc)?;
    match cmd {
        Command::Validate => {
            let sym: Vec<Value> = cm.symmetrizer().iter().map(render::rational).collect();
            let text = cm.symmetrizer().iter().map(kmf::render_rational).collect::<Vec<_>>().join(" ");
            Ok(Output::ok(with_ok(json!({ "symmetrizer": sym })), format!("ok, symmetrizer {text}")))
        }
        Command::Numerator | Command::Logseries => {
            let cap = schema::degree(doc, degree)?;
            let pv = schema::inline_pv(doc, &cm)?;
            let s: QSeries = if *cmd == Command::Numerator {
                numerator_u(&cm, &pv, cap)?
            } else {
                log_numerator(&cm, &pv, cap)?
            };
            Ok(Output::ok(with_ok(json!({ "series": render::series(&s) })), s.render("x")))
        }
        Command::Character => {
            let cap = schema::degree(doc, degree)?;
            let pv = schema::inline_pv(doc, &cm)?;
            let ch = character(&cm, &pv, schema::offset(doc, cm.n())?, cap)?;
            let text = format!("offset {:?}\n{}", ch.offset, ch.body.render("x"));
            Ok(Output::ok(with_ok(json!({ "offset": ch.offset, "body": render::series(&ch.body) })), text))
        }
        Command::Multiplicities => {
            let cap = schema::degree(doc, degree)?;
            let mult = root_multiplicities(&cm, cap)?;
            let rows: Vec<Value> = mult.iter().map(|(e, m)| json!([render::exponent(e), m])).collect();
            let text: Vec<String> = mult.iter().map(|(e, m)| format!("{} {m}", e.render("x"))).collect();
            Ok(Output::ok(with_ok(json!({ "degree": cap, "multiplicities": rows })), text.join("\n")))
        }
        Command::LeadingCoeff => {
            let obj = schema::object(doc, "")?;
            let nodes = schema::node_set(schema::required(obj, "", "I")?, "/I", &cm)?;
            let c = leading_coefficient_closed_form(&cm, &nodes)?;
            Ok(Output::ok(
                with_ok(json!({ "I": render::nodes(&nodes), "value": render::rational(&c) })),
                kmf::render_rational(&c),
            ))
        }
        Command::Orbits => {
            let part = schema::partition(doc, &cm)?;
            let classes: Vec<Value> = part.classes().iter().map(render::nodes).collect();
            let text: Vec<String> = part.classes().iter().map(|c| cm.render_set(c)).collect();
            Ok(Output::ok(with_ok(json!({ "classes": classes })), text.join(" ")))
        }
        Command::Transversal => {
            let part = schema::partition(doc, &cm)?;
            let t = connected_transversal(&cm, &part)?;
            Ok(Output::ok(with_ok(json!({ "transversal": render::nodes(&t) })), cm.render_set(&t)))
        }
        Command::LeanLifts => {
            let part = schema::partition(doc, &cm)?;
            let obj = schema::object(doc, "")?;
            let k = schema::node_set(schema::required(obj, "", "K")?, "/K", &cm)?;
            let data = FoldContext::new(cm.clone(), part)?.lean_lifts(&k)?;
            let sets = |v: &[kmf::NodeSet]| v.iter().map(render::nodes).collect::<Vec<_>>();
            let text = format!(
                "lifts {}\nlean {}\nequiconnected {}",
                data.lifts.iter().map(|s| cm.render_set(s)).collect::<Vec<_>>().join(" "),
                data.lean.iter().map(|s| cm.render_set(s)).collect::<Vec<_>>().join(" "),
                data.equiconnected
            );
            Ok(Output::ok(
                with_ok(json!({
                    "K": render::nodes(&k),
                    "lifts": sets(&data.lifts),
                    "lean": sets(&data.lean),
                    "equiconnected": data.equiconnected,
                    "lean_counts": data.lean_counts,
                })),
                text,
            ))
        }
        Command::Factor => factor(doc, &cm, degree),
        Command::FactorFolded => factor_folded(doc, cm, degree),
        Command::Verify => verify(doc, &cm, degree),
        Command::Selftest { .. } => unreachable!("handled before parsing"),
    }
}

fn certify(cm: &CartanMatrix, pv: &PvIndex, degree: u32, cap: u32) -> schema::Result<()> {
    if degree > cap {
        return Err(CliError::Uncertified { factor: render::pv_text(cm, pv), degree, cap });
    }
    Ok(())
}

fn factorization_output(cm: &CartanMatrix, res: &FactorizationResult) -> Output {
    let factors: Vec<Value> = res.factors.iter().map(render::pv).collect();
    let mut text: Vec<String> = res.factors.iter().map(|pv| render::pv_text(cm, pv)).collect();
    text.push(format!("empty_count {}", res.empty_count));
    text.push(format!("residual_zero {}", res.residual_zero));
    text.push(format!("certified_degree {}", res.certified_degree));
    Output::ok(
        with_ok(json!({
            "factors": factors,
            "empty_count": res.empty_count,
            "residual_zero": res.residual_zero,
            "certified_degree": res.certified_degree,
        })),
        text.join("\n"),
    )
}

fn factor(doc: &Value, cm: &CartanMatrix, degree: Option<u32>) -> schema::Result<Output> {
    let cap = schema::degree(doc, degree)?;
    let obj = schema::object(doc, "")?;
    let res = if obj.contains_key("log_sum_of") {
        let list = schema::pv_list(doc, "log_sum_of", cm)?;
        for pv in &list {
            certify(cm, pv, beta(cm, pv).degree(), cap)?;
        }
        peel_log_sum(cm, &log_sum(cm, &list, cap)?)?
    } else if obj.contains_key("character_product_of") {
        let list = schema::pv_list(doc, "character_product_of", cm)?;
        for pv in &list {
            certify(cm, pv, beta(cm, pv).degree(), cap)?;
        }
        recover_from_character_product(cm, &character_product(cm, &list, cap)?, list.len())?
    } else if let Some(s) = obj.get("series") {
        peel_log_sum(cm, &schema::series(s, "/series", cm.n(), cap)?)?
    } else if let Some(s) = obj.get("product") {
        let r = schema::uint(schema::required(obj, "", "r")?, "/r")? as usize;
        recover_from_character_product(cm, &schema::series(s, "/product", cm.n(), cap)?, r)?
    } else {
        return Err(CliError::Schema {
            pointer: String::new(),
            message: "expected `log_sum_of`, `character_product_of`, `series` or `product`".into(),
        });
    };
    Ok(factorization_output(cm, &res))
}

fn factor_folded(doc: &Value, cm: CartanMatrix, degree: Option<u32>) -> schema::Result<Output> {
    let cap = schema::degree(doc, degree)?;
    let part = schema::partition(doc, &cm)?;
    let ctx = FoldContext::new(cm.clone(), part)?;
    let obj = schema::object(doc, "")?;
    let total = if obj.contains_key("log_sum_of") {
        let list = schema::pv_list(doc, "log_sum_of", &cm)?;
        for pv in &list {
            ctx.check_folded_index(pv)?;
            certify(&cm, pv, ctx.beta_bar(pv)?.degree(), cap)?;
        }
        kmf::folded_log_sum(&ctx, &list, cap)?
    } else if let Some(s) = obj.get("series") {
        schema::series(s, "/series", ctx.partition().class_count(), cap)?
    } else {
        return Err(CliError::Schema { pointer: String::new(), message: "expected `log_sum_of` or `series`".into() });
    };
    Ok(factorization_output(&cm, &peel_folded(&ctx, &total)?))
}

fn verify(doc: &Value, cm: &CartanMatrix, degree: Option<u32>) -> schema::Result<Output> {
    let left = schema::pv_list(doc, "left", cm)?;
    let right = schema::pv_list(doc, "right", cm)?;
    let obj = schema::object(doc, "")?;
    let offsets = match (obj.get("left_offsets"), obj.get("right_offsets")) {
        (Some(a), Some(b)) => Some((schema::offsets(a, "/left_offsets")?, schema::offsets(b, "/right_offsets")?)),
        (None, None) => None,
        (Some(_), None) => {
            return Err(CliError::Schema { pointer: "/right_offsets".into(), message: "missing field".into() })
        }
        (None, Some(_)) => {
            return Err(CliError::Schema { pointer: "/left_offsets".into(), message: "missing field".into() })
        }
    };
    let eq = verify_equivalence(cm, &left, &right, offsets.as_ref().map(|(a, b)| (a.as_slice(), b.as_slice())))?;
    let mut out = json!({
        "equivalent": eq.is_some(),
        "permutation": eq.as_ref().map(|e| e.permutation.clone()),
        "split": eq.as_ref().map(|e| e.split),
    });
    let mut text = if eq.is_some() { "equivalent".to_string() } else { "not equivalent".to_string() };
    let cap = match degree {
        Some(d) => Some(d),
        None => obj.get("degree").map(|d| schema::uint(d, "/degree")).transpose()?,
    };
    if let Some(cap) = cap {
        let same = character_product(cm, &left, cap)? == character_product(cm, &right, cap)?;
        out["products_equal"] = json!(same);
        out["degree"] = json!(cap);
        text.push_str(&format!("\nproducts equal through degree {cap}: {same}"));
    }
    Ok(Output::ok(with_ok(out), text))
}

fn selftest_output(seed: u64, trials: usize) -> Output {
    let report = selftest::run(seed, trials);
    let ok = report.iter().all(|s| s.failed.is_empty());
    let suites: Vec<Value> = report
        .iter()
        .map(|s| json!({ "name": s.name, "trials": s.trials, "passed": s.trials - s.failed.len(), "failed": s.failed }))
        .collect();
    let text: Vec<String> = report
        .iter()
        .map(|s| format!("{} {}/{}", s.name, s.trials - s.failed.len(), s.trials))
        .collect();
    Output { json: json!({ "ok": ok, "seed": seed, "suites": suites }), text: text.join("\n"), code: if ok { 0 } else { 1 } }
}
