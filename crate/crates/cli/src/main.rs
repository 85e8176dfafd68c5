use std::collections::BTreeSet;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use itypes::assign::{parse_basis, SearchBudget, Searcher, Verdict};
use itypes::classify::adequacy_report;
use itypes::filter::{interpret_member, Env, FiniteFilter};
use itypes::laws::{law_atoms, run_all, LawConfig, ORACLE_BOUND};
use itypes::subtype::{leq_oracle, OracleAnswer, Subtyper, SubtypeError};
use itypes::syntax::{parse_term, parse_type, Term, Type};
use itypes::theory::{named_theory, NamedTheory, TheorySpec};

#[derive(Parser)]
#[command(name = "itypes", version, about = "Intersection type theories: subtyping, type assignment, filter models")]
struct Cli {
    /// ba, ehr, ao, bcd, or file:<path> (searched in ITYPES_THEORY_PATH)
    #[arg(long, global = true, default_value = "ba")]
    theory: String,
    /// Number of declared atoms for named theories.
    #[arg(long, global = true, default_value_t = 3)]
    atoms: usize,
    /// Largest candidate argument type tried by proof search.
    #[arg(long, global = true, default_value_t = 6)]
    budget_size: usize,
    #[arg(long, global = true, default_value_t = 64)]
    budget_depth: usize,
    #[arg(long, global = true, value_enum, default_value_t = Output::Text)]
    output: Output,
    /// Seed for randomized sampling in `laws`.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Decide LHS <= RHS.
    Leq { lhs: String, rhs: String },
    /// Decide CTX |- TERM : TYPE, with CTX as `x:A, y:B`.
    Check { ctx: String, term: String, ty: String },
    /// List the canonical types of TERM up to a size.
    Infer {
        ctx: String,
        term: String,
        #[arg(long, default_value_t = 3)]
        size: usize,
        /// Plain atoms to enumerate over (comma separated).
        #[arg(long)]
        with_atoms: Option<String>,
    },
    /// Decide whether TYPE belongs to the filter interpretation of TERM
    /// under ENV, written `x=A, y=empty`.
    Interp { env: String, term: String, ty: String },
    /// Print the adequacy classification of the theory.
    Classify,
    /// Run the law suites.
    Laws {
        #[arg(long, default_value_t = 5)]
        size: usize,
        #[arg(long, default_value_t = 2000)]
        samples: usize,
    },
}

/// Exit status 2: malformed input or unusable theory.
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn resolve_theory(name: &str, atoms: usize) -> Result<TheorySpec, Failure> {
    let spec = match name.strip_prefix("file:") {
        Some(path) => TheorySpec::load(path)?,
        None => named_theory(name.parse::<NamedTheory>()?, atoms),
    };
    spec.ensure_valid()?;
    Ok(spec)
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    let spec = resolve_theory(&cli.theory, cli.atoms)?;
    let budget = SearchBudget {
        max_candidate_type_size: cli.budget_size,
        max_depth: cli.budget_depth,
    };
    let json = cli.output == Output::Json;
    match &cli.command {
        Command::Leq { lhs, rhs } => cmd_leq(&spec, lhs, rhs, json),
        Command::Check { ctx, term, ty } => cmd_check(&spec, budget, ctx, term, ty, json),
        Command::Infer {
            ctx,
            term,
            size,
            with_atoms,
        } => cmd_infer(&spec, budget, ctx, term, *size, with_atoms.as_deref(), json),
        Command::Interp { env, term, ty } => cmd_interp(&spec, budget, env, term, ty, json),
        Command::Classify => cmd_classify(&spec, json),
        Command::Laws { size, samples } => {
            let cfg = LawConfig {
                size: *size,
                seed: cli.seed,
                samples: *samples,
                budget,
            };
            cmd_laws(&spec, &cfg, json)
        }
    }
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json value"));
}

fn cmd_leq(spec: &TheorySpec, lhs: &str, rhs: &str, json: bool) -> Result<u8, Failure> {
    let a = parse_type(lhs, spec)?;
    let b = parse_type(rhs, spec)?;
    match Subtyper::new(spec) {
        Ok(sub) => {
            let proof = sub.prove(&a, &b);
            let holds = proof.is_some();
            if json {
                print_json(&json!({
                    "theory": spec.display_name(),
                    "lhs": a.to_string(),
                    "rhs": b.to_string(),
                    "result": holds,
                    "proof": proof.map(|p| p.to_json()),
                }));
            } else {
                println!("{holds}");
            }
            Ok(if holds { 0 } else { 1 })
        }
        // theories outside Ba only get the bounded saturation oracle
        Err(SubtypeError::UnsupportedTheory(_)) => {
            let found = leq_oracle(spec, &a, &b, ORACLE_BOUND)? == OracleAnswer::Yes;
            let label = if found { "true" } else { "unknown" };
            if json {
                print_json(&json!({
                    "theory": spec.display_name(),
                    "lhs": a.to_string(),
                    "rhs": b.to_string(),
                    "result": label,
                    "oracle_bound": ORACLE_BOUND,
                }));
            } else {
                println!("{label}");
            }
            Ok(if found { 0 } else { 3 })
        }
        Err(e) => Err(e.into()),
    }
}

fn verdict_code(v: &Verdict) -> u8 {
    match v {
        Verdict::Yes(_) => 0,
        Verdict::No => 1,
        Verdict::Unknown => 3,
    }
}

fn print_verdict(spec: &TheorySpec, v: &Verdict, json: bool, extra: Value) {
    if json {
        let mut out = json!({
            "theory": spec.display_name(),
            "verdict": v.label(),
            "derivation": v.derivation().map(|d| d.to_json()),
        });
        if let (Value::Object(o), Value::Object(e)) = (&mut out, extra) {
            o.extend(e);
        }
        print_json(&out);
    } else {
        println!("{}", v.label());
    }
}

fn cmd_check(
    spec: &TheorySpec,
    budget: SearchBudget,
    ctx: &str,
    term: &str,
    ty: &str,
    json: bool,
) -> Result<u8, Failure> {
    let basis = parse_basis(ctx, spec)?;
    let m = parse_term(term)?;
    let a = parse_type(ty, spec)?;
    let searcher = Searcher::new(spec, budget)?;
    let v = searcher.derives(&basis, &m, &a);
    print_verdict(
        spec,
        &v,
        json,
        json!({ "term": m.to_string(), "type": a.to_string() }),
    );
    Ok(verdict_code(&v))
}

fn infer_atoms(spec: &TheorySpec, ctx_atoms: BTreeSet<String>, explicit: Option<&str>) -> Vec<String> {
    let mut atoms = ctx_atoms;
    match explicit {
        Some(list) => atoms.extend(
            list.split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(String::from),
        ),
        None if spec.fresh_atoms => {
            atoms.extend(["a", "b"].into_iter().filter(|a| !spec.atoms.contains(*a)).map(String::from))
        }
        None => atoms.extend(law_atoms(spec)),
    }
    for s in spec.specials() {
        atoms.remove(&s.to_string());
    }
    atoms.into_iter().collect()
}

fn cmd_infer(
    spec: &TheorySpec,
    budget: SearchBudget,
    ctx: &str,
    term: &str,
    size: usize,
    with_atoms: Option<&str>,
    json: bool,
) -> Result<u8, Failure> {
    let basis = parse_basis(ctx, spec)?;
    let m = parse_term(term)?;
    let ctx_atoms: BTreeSet<String> = basis.values().flat_map(Type::atoms).collect();
    let atoms = infer_atoms(spec, ctx_atoms, with_atoms);
    for a in &atoms {
        if !spec.admits_atom(a) {
            return Err(Failure(format!("atom `{a}` is not declared in {}", spec.display_name())));
        }
    }
    let searcher = Searcher::new(spec, budget)?;
    let r = searcher.infer_types(&basis, &m, size, &atoms)?;
    let show = |ts: &[Type]| ts.iter().map(Type::to_string).collect::<Vec<_>>();
    if json {
        print_json(&json!({
            "theory": spec.display_name(),
            "term": m.to_string(),
            "size": size,
            "atoms": atoms,
            "types": show(&r.derivable),
            "undetermined": show(&r.undetermined),
        }));
    } else {
        for t in &r.derivable {
            println!("{t}");
        }
        for t in &r.undetermined {
            println!("? {t}");
        }
    }
    Ok(0)
}

fn parse_env(src: &str, spec: &TheorySpec) -> Result<Env, Failure> {
    let mut env = Env::new();
    for entry in src.split(',').map(str::trim).filter(|e| !e.is_empty()) {
        let (x, t) = entry
            .split_once('=')
            .ok_or_else(|| Failure(format!("environment entry `{entry}` is not of the form `x=type`")))?;
        let x = x.trim();
        let valid = x.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
            && x.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !valid {
            return Err(Failure(format!("`{x}` is not a variable name")));
        }
        if env.insert(x.to_string(), FiniteFilter::parse(t, spec)?).is_some() {
            return Err(Failure(format!("variable `{x}` is bound twice")));
        }
    }
    Ok(env)
}

fn cmd_interp(
    spec: &TheorySpec,
    budget: SearchBudget,
    env: &str,
    term: &str,
    ty: &str,
    json: bool,
) -> Result<u8, Failure> {
    let env = parse_env(env, spec)?;
    let m: Term = parse_term(term)?;
    let a = parse_type(ty, spec)?;
    let searcher = Searcher::new(spec, budget)?;
    let v = interpret_member(&searcher, &m, &env, &a)?;
    let shown: serde_json::Map<String, Value> = env
        .iter()
        .map(|(x, f)| (x.clone(), Value::String(f.to_canonical_string(spec))))
        .collect();
    print_verdict(
        spec,
        &v,
        json,
        json!({ "term": m.to_string(), "type": a.to_string(), "env": shown }),
    );
    Ok(verdict_code(&v))
}

fn cmd_classify(spec: &TheorySpec, json: bool) -> Result<u8, Failure> {
    let r = adequacy_report(spec);
    if json {
        print_json(&serde_json::to_value(&r)?);
    } else {
        println!("theory: {}", r.theory);
        println!("strict: {}", r.strict);
        println!("natural: {}", r.natural);
        println!("inference_adequate: {}", r.inference_adequate);
        println!("simple_adequate: {}", r.simple_adequate);
        println!("f_type_theory: {}", r.f_type_theory);
        println!("f_adequate: {}", r.f_adequate);
        for n in &r.notes {
            println!("note: {n}");
        }
    }
    Ok(0)
}

fn cmd_laws(spec: &TheorySpec, cfg: &LawConfig, json: bool) -> Result<u8, Failure> {
    let s = run_all(spec, cfg).map_err(Failure)?;
    if json {
        print_json(&serde_json::to_value(&s)?);
    } else {
        for r in &s.results {
            let status = if r.passed() { "PASS" } else { "FAIL" };
            print!("{status} {}: {} ({} checked", r.suite, r.law, r.checked);
            if r.inconclusive > 0 {
                print!(", {} inconclusive", r.inconclusive);
            }
            println!(")");
            if let Some(e) = &r.example {
                println!("    counterexample: {e}");
            }
        }
        let total = s.results.len();
        let failed = s.results.iter().filter(|r| !r.passed()).count();
        println!("{} laws, {} passed, {} failed", total, total - failed, failed);
    }
    Ok(if s.passed() { 0 } else { 1 })
}
