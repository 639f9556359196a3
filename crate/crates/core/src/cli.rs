//! Command-line driver. [`run`] does the work and returns the rendered
//! output with an exit code; `main` only prints it.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::elim::{buchberger_with, resultant, Algorithm, GbOptions};
use crate::error::{Error, Result};
use crate::groups::CayleyTable;
use crate::lame::{all_points, format_certificate, format_points, parse_certificate, parse_points, search_chain};
use crate::poly::{parse_expr_lines, Expr, MonomialOrder, OrderKind, PolyRing};
use crate::scalar::{CyclotomicField, Field, PrimeField, Rationals};
use crate::verify::{verify_alt4, verify_c2c4, verify_c3c3, Alt4Options, C3c3Part, SeedChoice, VerificationReport, DEFAULT_PRIMES};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "dualnet", version, about = "Exact verification of dual 3-net realizations")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the output here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run a verification task.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Gröbner basis of the polynomials in a file (one per line).
    Gb(GbArgs),
    /// Resultant of the two polynomials in a file.
    Resultant(ResultantArgs),
    /// Lamé configuration tools.
    #[command(subcommand)]
    Lame(LameCmd),
}

#[derive(Subcommand, Debug)]
pub enum VerifyCmd {
    /// C3×C3: the two lemmas and the theorem.
    C3c3 {
        #[arg(long, default_value = "all", value_parser = ["uv", "ab", "theorem", "all"])]
        part: String,
    },
    /// C2×C4: Lamé closure chain.
    C2c4 {
        /// `literal`, `corrected`, or a file with a point list or a certificate.
        #[arg(long, default_value = "corrected")]
        seed: String,
    },
    /// Alt4: ideal membership modulo primes.
    Alt4 {
        #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_PRIMES.to_vec())]
        primes: Vec<u64>,
        /// Wall-clock budget per prime.
        #[arg(long, default_value_t = 3600)]
        budget_secs: u64,
        /// Primes required to pass (default: all of them, at most 3).
        #[arg(long)]
        quorum: Option<usize>,
    },
}

#[derive(Args, Debug)]
pub struct GbArgs {
    pub file: PathBuf,
    /// `lex:v1,v2,...` or `degrevlex:v1,v2,...`, greatest variable first.
    #[arg(long)]
    pub order: String,
    #[arg(long)]
    pub extended: bool,
    /// Work modulo this prime.
    #[arg(long = "mod")]
    pub modulus: Option<u64>,
    #[arg(long)]
    pub budget_secs: Option<u64>,
    /// `auto` picks F4 modulo a prime without cofactors, Buchberger otherwise.
    #[arg(long, value_enum, default_value_t = GbAlgorithm::Auto)]
    pub algorithm: GbAlgorithm,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GbAlgorithm {
    Auto,
    Buchberger,
    F4,
}

#[derive(Args, Debug)]
pub struct ResultantArgs {
    pub file: PathBuf,
    #[arg(long)]
    pub var: String,
}

#[derive(Subcommand, Debug)]
pub enum LameCmd {
    /// Saturate a seed under all Lamé configurations of a table.
    Search {
        /// Cayley table grid file, or a builtin name (c3, c3c3, c2c4, alt4).
        table: String,
        #[arg(long)]
        seed: String,
    },
}

/// Rendered output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub code: i32,
}

pub fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::Parse { .. }
        | Error::Io(_)
        | Error::UnknownVariable(_)
        | Error::UnboundVariable(_)
        | Error::InvalidTable(_)
        | Error::InvalidLame(_)
        | Error::UnsupportedPrime(..)
        | Error::BadPrime(_) => EXIT_INPUT,
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        _ => EXIT_FAIL,
    }
}

fn read(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn report_outcome(r: &VerificationReport, format: Format) -> Outcome {
    let output = match format {
        Format::Text => r.to_text(),
        Format::Json => r.to_json(),
    };
    Outcome { output, code: r.exit_code() }
}

/// Executes a parsed command line. Errors are rendered into the output
/// with the matching exit code.
pub fn run(cli: &Cli) -> Outcome {
    let result = match &cli.command {
        Command::Verify(v) => run_verify(v).map(|r| report_outcome(&r, cli.format)),
        Command::Gb(a) => run_gb(a, cli.format),
        Command::Resultant(a) => run_resultant(a, cli.format),
        Command::Lame(LameCmd::Search { table, seed }) => run_lame_search(table, seed, cli.format),
    };
    let outcome = match result {
        Ok(o) => o,
        Err(e) => {
            let code = exit_code_for(&e);
            let output = match cli.format {
                Format::Text => format!("error: {e}"),
                Format::Json => serde_json::to_string_pretty(&json!({ "error": e.to_string(), "exit_code": code })).unwrap(),
            };
            Outcome { output, code }
        }
    };
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, format!("{}\n", outcome.output)) {
            return Outcome { output: format!("error: {}: {e}", path.display()), code: EXIT_INPUT };
        }
        return Outcome { output: String::new(), code: outcome.code };
    }
    outcome
}

fn run_verify(v: &VerifyCmd) -> Result<VerificationReport> {
    match v {
        VerifyCmd::C3c3 { part } => verify_c3c3(part.parse::<C3c3Part>()?),
        VerifyCmd::C2c4 { seed } => {
            let choice = match seed.as_str() {
                "literal" => SeedChoice::Literal,
                "corrected" => SeedChoice::Corrected,
                path => {
                    let text = read(&PathBuf::from(path))?;
                    if text.lines().any(|l| l.trim_start().starts_with("SEED") || l.trim_start().starts_with("LAME")) {
                        let (s, chain) = parse_certificate(&text)?;
                        let s = s.ok_or_else(|| Error::Parse { line: 1, col: 1, msg: "certificate has no SEED line".into() })?;
                        SeedChoice::Custom { seed: s, chain: (!chain.is_empty()).then_some(chain) }
                    } else {
                        let body: String = text.lines().map(|l| l.split('#').next().unwrap_or("")).collect::<Vec<_>>().join(",");
                        SeedChoice::Custom { seed: parse_points(&body)?, chain: None }
                    }
                }
            };
            verify_c2c4(&choice)
        }
        VerifyCmd::Alt4 { primes, budget_secs, quorum } => {
            let opts = Alt4Options {
                primes: primes.clone(),
                budget: Some(Duration::from_secs(*budget_secs)),
                quorum: quorum.unwrap_or(primes.len().min(3)),
            };
            verify_alt4(&opts)
        }
    }
}

/// `lex:a,b,c` into the kind and variable names.
pub fn parse_order_spec(spec: &str) -> Result<(OrderKind, Vec<String>)> {
    let bad = |msg: &str| Error::Parse { line: 1, col: 1, msg: format!("--order `{spec}`: {msg}") };
    let (kind, vars) = spec.split_once(':').ok_or_else(|| bad("expected kind:v1,v2,..."))?;
    let kind = match kind.trim() {
        "lex" | "plex" => OrderKind::Lex,
        "degrevlex" | "grevlex" | "tdeg" | "dp" => OrderKind::DegRevLex,
        _ => return Err(bad("kind must be lex or degrevlex")),
    };
    let vars: Vec<String> = vars.split(',').map(|v| v.trim().to_string()).filter(|v| !v.is_empty()).collect();
    if vars.is_empty() {
        return Err(bad("no variables"));
    }
    Ok((kind, vars))
}

fn uses_omega(exprs: &[(usize, Expr)]) -> bool {
    exprs.iter().any(|(_, e)| e.uses_omega())
}

fn run_gb(a: &GbArgs, format: Format) -> Result<Outcome> {
    let exprs = parse_expr_lines(&read(&a.file)?)?;
    if exprs.is_empty() {
        return Err(Error::Parse { line: 1, col: 1, msg: "no polynomials in file".into() });
    }
    let (kind, vars) = parse_order_spec(&a.order)?;
    let algorithm = match a.algorithm {
        GbAlgorithm::Auto if a.modulus.is_some() && !a.extended => Algorithm::F4,
        GbAlgorithm::Auto | GbAlgorithm::Buchberger => Algorithm::Buchberger,
        GbAlgorithm::F4 => Algorithm::F4,
    };
    let opts = GbOptions {
        extended: a.extended,
        budget: a.budget_secs.map(Duration::from_secs),
        algorithm,
        ..GbOptions::default()
    };
    match (a.modulus, uses_omega(&exprs)) {
        (None, false) => gb_over(Rationals, &vars, kind, &exprs, &opts, format),
        (None, true) => gb_over(CyclotomicField, &vars, kind, &exprs, &opts, format),
        (Some(p), false) => gb_over(PrimeField::new(p)?, &vars, kind, &exprs, &opts, format),
        (Some(p), true) => gb_over(PrimeField::with_omega(p)?, &vars, kind, &exprs, &opts, format),
    }
}

fn to_polys<F: Field>(ring: &Arc<PolyRing<F>>, exprs: &[(usize, Expr)]) -> Result<Vec<crate::poly::MultiPoly<F>>> {
    exprs.iter().map(|(line, e)| e.to_poly(ring, *line)).collect()
}

fn gb_over<F: Field>(
    field: F,
    vars: &[String],
    kind: OrderKind,
    exprs: &[(usize, Expr)],
    opts: &GbOptions,
    format: Format,
) -> Result<Outcome> {
    let ring = PolyRing::with_order(field, vars, MonomialOrder::new(kind, vars.len()))?;
    let polys = to_polys(&ring, exprs)?;
    let gb = buchberger_with(&polys, ring.order(), opts)?;
    let kind_name = match kind {
        OrderKind::Lex => "lex",
        OrderKind::DegRevLex => "degrevlex",
    };
    let gens: Vec<String> = gb.generators().iter().map(|g| g.to_string()).collect();
    let cof: Option<Vec<Vec<String>>> =
        gb.cofactors().map(|rows| rows.iter().map(|r| r.iter().map(|c| c.to_string()).collect()).collect());
    let cert = gb.certificate();
    let output = match format {
        Format::Json => serde_json::to_string_pretty(&json!({
            "task": "gb",
            "field": ring.field().name(),
            "order": format!("{kind_name}:{}", vars.join(",")),
            "algorithm": format!("{:?}", opts.algorithm).to_lowercase(),
            "generators": gens,
            "cofactors": cof,
            "stats": {
                "pairs_reduced": gb.stats().pairs_reduced,
                "zero_reductions": gb.stats().zero_reductions,
                "pairs_pruned": gb.stats().pairs_pruned,
                "elapsed_ms": gb.stats().elapsed_ms as u64,
            },
            "certificate": {
                "spairs_checked": cert.spairs_checked,
                "inputs_checked": cert.inputs_checked,
                "cofactor_rows_checked": cert.cofactor_rows_checked,
            },
        }))
        .unwrap(),
        Format::Text => {
            let mut s = format!(
                "# reduced Groebner basis over {}, {kind_name}({}), {} generators\n# certified: {} S-pairs and {} inputs reduce to 0\n",
                ring.field().name(),
                vars.join(","),
                gens.len(),
                cert.spairs_checked,
                cert.inputs_checked
            );
            for (j, g) in gens.iter().enumerate() {
                if let Some(rows) = &cof {
                    s.push_str(&format!("# g{} = {}\n", j + 1, combination(&rows[j])));
                }
                s.push_str(g);
                s.push('\n');
            }
            s.trim_end().to_string()
        }
    };
    Ok(Outcome { output, code: EXIT_PASS })
}

fn combination(row: &[String]) -> String {
    let parts: Vec<String> = row
        .iter()
        .enumerate()
        .filter(|(_, c)| c.as_str() != "0")
        .map(|(i, c)| format!("({c})*f{}", i + 1))
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

fn run_resultant(a: &ResultantArgs, format: Format) -> Result<Outcome> {
    let exprs = parse_expr_lines(&read(&a.file)?)?;
    if exprs.len() != 2 {
        return Err(Error::Parse { line: 1, col: 1, msg: format!("expected two polynomials, found {}", exprs.len()) });
    }
    let mut vars: Vec<String> = Vec::new();
    for (_, e) in &exprs {
        for v in e.variables() {
            if !vars.contains(&v) {
                vars.push(v);
            }
        }
    }
    if !vars.contains(&a.var) {
        return Err(Error::UnknownVariable(a.var.clone()));
    }
    let text = if uses_omega(&exprs) {
        resultant_over(CyclotomicField, &vars, &exprs, &a.var)?
    } else {
        resultant_over(Rationals, &vars, &exprs, &a.var)?
    };
    let output = match format {
        Format::Text => text,
        Format::Json => serde_json::to_string_pretty(&json!({ "task": "resultant", "var": a.var, "resultant": text })).unwrap(),
    };
    Ok(Outcome { output, code: EXIT_PASS })
}

fn resultant_over<F: Field>(field: F, vars: &[String], exprs: &[(usize, Expr)], v: &str) -> Result<String> {
    let ring = PolyRing::new(field, vars, OrderKind::Lex)?;
    let p = to_polys(&ring, exprs)?;
    Ok(resultant(&p[0], &p[1], ring.var_index(v)?)?.to_string())
}

fn load_table(spec: &str) -> Result<CayleyTable> {
    let path = PathBuf::from(spec);
    if path.exists() {
        let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or("table");
        CayleyTable::parse_grid(name, &read(&path)?)
    } else {
        CayleyTable::builtin(spec)
            .map_err(|_| Error::Io(format!("{spec}: no such file or builtin table")))
    }
}

fn run_lame_search(table: &str, seed: &str, format: Format) -> Result<Outcome> {
    let t = load_table(table)?;
    let seed: BTreeSet<_> = parse_points(seed)?;
    let goal = all_points(&t);
    let out = search_chain(&t, &seed, &goal)?;
    let code = if out.reached_goal { EXIT_PASS } else { EXIT_FAIL };
    let output = match format {
        Format::Json => serde_json::to_string_pretty(&json!({
            "task": "lame-search",
            "table": t.name(),
            "seed": format_points(&seed),
            "reached_goal": out.reached_goal,
            "rounds": out.rounds,
            "known": format_points(&out.known),
            "chain": out.chain.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        }))
        .unwrap(),
        Format::Text => format!(
            "# table {} ({} points); {} rounds; {} of {} points reached\n{}",
            t.name(),
            goal.len(),
            out.rounds,
            out.known.len(),
            goal.len(),
            format_certificate(Some(&seed), &out.chain).trim_end()
        ),
    };
    Ok(Outcome { output, code })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_specs() {
        assert_eq!(parse_order_spec("lex:x,y").unwrap(), (OrderKind::Lex, vec!["x".into(), "y".into()]));
        assert_eq!(parse_order_spec("degrevlex:a").unwrap().0, OrderKind::DegRevLex);
        assert!(parse_order_spec("lex").is_err());
        assert!(parse_order_spec("weird:x").is_err());
    }

    #[test]
    fn c2c4_via_cli() {
        let cli = Cli::try_parse_from(["dualnet", "verify", "c2c4", "--format", "json"]).unwrap();
        let out = run(&cli);
        assert_eq!(out.code, EXIT_PASS);
        let v: serde_json::Value = serde_json::from_str(&out.output).unwrap();
        assert_eq!(v["overall"], "pass");
        let cli = Cli::try_parse_from(["dualnet", "verify", "c2c4", "--seed", "literal"]).unwrap();
        assert_eq!(run(&cli).code, EXIT_FAIL);
        let cli = Cli::try_parse_from(["dualnet", "verify", "c2c4", "--seed", "/nonexistent/seed"]).unwrap();
        assert_eq!(run(&cli).code, EXIT_INPUT);
    }
}
