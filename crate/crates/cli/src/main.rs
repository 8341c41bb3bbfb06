//! `endop`: command-line front end for the natural-operation computations.
//!
//! Every subcommand prints one JSON document
//! `{"command", "params", "result", "complete", "elapsed_ms"}`; `all` prints
//! a text summary unless `--json` is given. Exit status is 0 on success,
//! 1 on a computation error or a failing check, and 2 on a usage error.

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use clap::{ArgGroup, Args, CommandFactory, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use endop_core::checks::{self, fixture_monoids, CheckOptions};
use endop_core::linalg::{schur_weyl_full_group, schur_weyl_run};
use endop_core::naturality::{
    central_module, central_set_bruteforce, central_set_determined, finite_group_natural_maps, graded_central,
    graded_central_with_rank, monoid_reconstruction, FiniteGroup, FiniteMonoidTable, NaturalityReport,
};
use endop_core::operad::{
    check_operad_axioms, perm_compose, BuiltinOperad, PermElement, PermFault, PermOperad, TabulatedOperad,
    TrivialOperad,
};
use endop_core::qpoly::{
    characterize_multilinear, generated_submonomials, multilinearity_check, presentation_soundness, qpoly_compose,
    required_cap, satisfies_q_power_criterion, Polynomial, QPolyOperad, QPolynomial,
};
use endop_core::scalars::{Domain, FiniteField};
use endop_core::word::{
    free_reduce, group_eval, parse_letters, word_compose, word_count, word_enumerate, ReducedWord, WordFault,
    WordOperad,
};
use endop_core::{Error, Result};

#[derive(Parser)]
#[command(name = "endop", version, about = "Natural operations on forgetful functors, computed exactly")]
struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the output to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// For `all`: print the JSON document instead of the text summary.
    #[arg(long, global = true)]
    json: bool,
    /// Record wall-clock times (otherwise every `elapsed_ms` is null).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Natural maps [n]^n -> [n] on finite sets: exactly the projections
    /// π1..πn, so the operad of the identity functor of Set is Perm.
    CentralSet(CentralSetArgs),
    /// Natural maps (R^r)^{⊗n} -> R^r for R-modules: the scalars in arity
    /// one and zero in every other arity.
    CentralMod(CentralModArgs),
    /// Natural degree-0 maps on graded R-modules: independent scalars in
    /// each degree in arity one, zero otherwise.
    Graded(GradedArgs),
    /// Natural endomorphisms of the forgetful functor from M-sets: the
    /// left multiplications, forming a monoid isomorphic to M.
    Monoid(MonoidArgs),
    /// Natural maps G^n -> G against all endomorphisms of a finite group,
    /// compared with the maps given by words in the free group.
    GroupMaps(GroupMapsArgs),
    /// The operad of free-group words: arity n is the free group on n
    /// generators, composed by substitution.
    #[command(subcommand)]
    Word(WordCommand),
    /// The operad Perm of projections.
    #[command(subcommand)]
    Perm(PermCommand),
    /// The operad of q-polynomials: the multilinear natural operations on
    /// commutative F_q-algebras.
    #[command(subcommand)]
    Qpoly(QpolyCommand),
    /// GL_d-equivariant endomorphisms of the n-th tensor power: spanned by
    /// the n! permutation operators over Q when d ≥ n, larger over F_2.
    SchurWeyl(SchurWeylArgs),
    /// Exhaustive operad-axiom check (associativity, units, equivariance)
    /// for a built-in operad up to an arity bound.
    Axioms(AxiomsArgs),
    /// Run the numbered acceptance checks; nonzero exit if any fails.
    All(AllArgs),
}

#[derive(Args, Serialize)]
struct CentralSetArgs {
    /// Arity, which is also the size of the set [n].
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value_t = SetMethod::Auto)]
    method: SetMethod,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum SetMethod {
    /// Brute force for n ≤ 2, determination by the generic tuple otherwise.
    Auto,
    Bruteforce,
    Determined,
}

#[derive(Args, Serialize)]
struct CentralModArgs {
    /// Ring: `zmod:m`, or a finite field `p^k[:c0,..,ck]`.
    #[arg(long, visible_alias = "field", default_value = "2")]
    ring: String,
    #[arg(long, default_value_t = 2)]
    rank: usize,
    #[arg(long)]
    n: usize,
}

#[derive(Args, Serialize)]
struct GradedArgs {
    #[arg(long, visible_alias = "field", default_value = "zmod:2")]
    ring: String,
    /// Degrees -J..J are represented.
    #[arg(long, default_value_t = 1)]
    window: i64,
    #[arg(long)]
    n: usize,
    /// Rank in each degree (default max(n, 1)).
    #[arg(long)]
    rank: Option<usize>,
}

#[derive(Args, Serialize)]
#[command(group(ArgGroup::new("source").required(true).args(["preset", "table"])))]
struct MonoidArgs {
    /// trivial, cyclic:N, s3, klein, or fixture:K (the K-th monoid of order ≤ 3).
    #[arg(long)]
    preset: Option<String>,
    /// Multiplication table as JSON rows, e.g. `[[0,1],[1,0]]`.
    #[arg(long)]
    table: Option<String>,
    #[arg(long, default_value_t = 0)]
    unit: usize,
}

#[derive(Args, Serialize)]
struct GroupMapsArgs {
    /// trivial, cyclic:N, s3 or klein.
    #[arg(long, default_value = "s3")]
    group: String,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 3)]
    word_length: usize,
}

#[derive(Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
enum WordCommand {
    /// w1 ∘_i w2 with free reduction.
    Compose {
        #[arg(long)]
        w1: String,
        #[arg(long)]
        arity1: usize,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        w2: String,
        #[arg(long)]
        arity2: usize,
    },
    /// Free reduction of a letter sequence such as "x1 x2 x2^-1 x1".
    Reduce {
        #[arg(long)]
        letters: String,
        #[arg(long)]
        arity: usize,
    },
    /// Evaluate a word in a finite group.
    Eval {
        #[arg(long)]
        word: String,
        #[arg(long)]
        arity: usize,
        /// trivial, cyclic:N, s3 or klein.
        #[arg(long, default_value = "s3")]
        group: String,
        /// Comma-separated element indices.
        #[arg(long, default_value = "")]
        args: String,
    },
    /// All reduced words up to a length, by length then lexicographically.
    Enumerate {
        #[arg(long)]
        arity: usize,
        #[arg(long)]
        max_length: usize,
    },
}

#[derive(Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
enum PermCommand {
    /// π_i ∘_k π_j with π_i of arity m and π_j of arity n.
    Compose {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        j: usize,
    },
    /// Operad axioms for Perm up to an arity bound.
    Check {
        #[arg(long, default_value_t = 4)]
        arity_bound: usize,
    },
}

#[derive(Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
enum QpolyCommand {
    /// f ∘_i g, substituting g for X_i.
    Compose {
        #[arg(long, visible_alias = "q")]
        field: String,
        #[arg(long)]
        f: String,
        #[arg(long)]
        arity_f: usize,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        g: String,
        #[arg(long)]
        arity_g: usize,
    },
    /// Which monomials up to a total degree are multilinear natural
    /// operations; they are exactly those whose exponents are powers of q.
    Classify {
        #[arg(long, visible_alias = "q")]
        field: String,
        #[arg(long)]
        arity: usize,
        #[arg(long)]
        maxdeg: u64,
    },
    /// Multilinearity test for one polynomial in a truncated symmetric algebra.
    Check {
        #[arg(long, visible_alias = "q")]
        field: String,
        #[arg(long)]
        poly: String,
        #[arg(long)]
        nvars: usize,
        /// Truncation degree (default: the smallest admissible).
        #[arg(long)]
        cap: Option<u64>,
    },
    /// Monomials produced by the generators μ and P_q, with witnessing trees,
    /// and optionally a soundness check of the relations on small trees.
    Generate {
        #[arg(long, visible_alias = "q")]
        field: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        exp_bound: u64,
        /// Also rewrite every tree with at most this many internal nodes.
        #[arg(long)]
        relations_up_to: Option<usize>,
    },
}

#[derive(Args, Serialize)]
struct SchurWeylArgs {
    /// `Q`, a finite field `p^k`, or `zmod:m` (prime m).
    #[arg(long, visible_alias = "ring", default_value = "Q")]
    field: String,
    #[arg(long)]
    d: usize,
    #[arg(long)]
    n: usize,
    /// Number of random invertible generators (Q also gets a prime diagonal).
    #[arg(long, default_value_t = 8)]
    generators: usize,
    /// Use every element of GL_d (finite fields only).
    #[arg(long)]
    full_group: bool,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum OperadChoice {
    Perm,
    Word,
    Qpoly,
    Trivial,
    End,
}

#[derive(Args, Serialize)]
struct AxiomsArgs {
    #[arg(long, value_enum)]
    operad: OperadChoice,
    /// Field for `qpoly`, ring for `trivial`.
    #[arg(long, visible_alias = "ring", default_value = "2")]
    field: String,
    /// Carrier size for `end`.
    #[arg(long, default_value_t = 2)]
    carrier: usize,
    #[arg(long, default_value_t = 3)]
    arity_bound: usize,
    /// Per-arity enumeration bound (word length, exponent level, table count).
    #[arg(long, default_value_t = 3)]
    size_bound: usize,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Fault {
    Perm,
    Word,
}

#[derive(Args, Serialize)]
struct AllArgs {
    /// Run a single criterion.
    #[arg(long)]
    criterion: Option<u8>,
    /// Negative control: corrupt Perm composition or word reduction.
    #[arg(long, value_enum, hide = true)]
    inject_fault: Option<Fault>,
}

/// What a subcommand produced.
struct Outcome {
    result: Value,
    complete: bool,
    /// Whether the exit status should be 0.
    ok: bool,
    /// Replaces the JSON document when `--json` is absent.
    text: Option<String>,
}

impl Outcome {
    fn value(result: impl Serialize) -> Self {
        Self::with_complete(result, true)
    }

    fn with_complete(result: impl Serialize, complete: bool) -> Self {
        Self {
            result: serde_json::to_value(result).unwrap_or(Value::Null),
            complete,
            ok: true,
            text: None,
        }
    }

    fn report(r: NaturalityReport) -> Self {
        let complete = r.complete;
        Self::with_complete(r, complete)
    }
}

fn usage_error(msg: String) -> ! {
    Cli::command().error(clap::error::ErrorKind::InvalidValue, msg).exit()
}

fn field(spec: &str) -> Result<Arc<FiniteField>> {
    match Domain::parse_spec(spec)? {
        Domain::Finite(f) => Ok(f),
        other => Err(Error::UnsupportedDomain(format!("{other} is not a finite field"))),
    }
}

fn group_preset(name: &str) -> Result<FiniteMonoidTable> {
    match name {
        "trivial" => Ok(FiniteMonoidTable::trivial()),
        "s3" => FiniteMonoidTable::symmetric_group(3),
        "klein" => FiniteMonoidTable::from_fn(4, 0, |a, b| a ^ b),
        _ => match name.strip_prefix("cyclic:").and_then(|n| n.parse().ok()) {
            Some(n) => FiniteMonoidTable::cyclic(n),
            None => usage_error(format!("unknown group '{name}' (trivial, cyclic:N, s3, klein)")),
        },
    }
}

fn monoid_from(args: &MonoidArgs) -> Result<FiniteMonoidTable> {
    if let Some(t) = &args.table {
        let rows: Vec<Vec<usize>> =
            serde_json::from_str(t).unwrap_or_else(|e| usage_error(format!("--table is not a JSON matrix: {e}")));
        return FiniteMonoidTable::new(rows, args.unit);
    }
    let preset = args.preset.as_deref().unwrap_or_default();
    if let Some(k) = preset.strip_prefix("fixture:") {
        let k: usize = k.parse().unwrap_or_else(|_| usage_error(format!("bad fixture index in '{preset}'")));
        let all = fixture_monoids()?;
        let n = all.len();
        return all.into_iter().nth(k).ok_or(Error::IndexOutOfRange { index: k, arity: n });
    }
    group_preset(preset)
}

fn parse_args_list(s: &str) -> Vec<usize> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().unwrap_or_else(|_| usage_error(format!("bad element index '{t}'"))))
        .collect()
}

fn run(cli: &Cli) -> Result<Outcome> {
    Ok(match &cli.command {
        Command::CentralSet(a) => {
            let brute = match a.method {
                SetMethod::Auto => a.n <= 2,
                SetMethod::Bruteforce => true,
                SetMethod::Determined => false,
            };
            let r = if brute { central_set_bruteforce(a.n)? } else { central_set_determined(a.n)? };
            Outcome::report(r)
        }
        Command::CentralMod(a) => Outcome::report(central_module(&Domain::parse_spec(&a.ring)?, a.rank, a.n)?),
        Command::Graded(a) => {
            let domain = Domain::parse_spec(&a.ring)?;
            Outcome::report(match a.rank {
                Some(r) => graded_central_with_rank(&domain, a.window, a.n, r)?,
                None => graded_central(&domain, a.window, a.n)?,
            })
        }
        Command::Monoid(a) => {
            let m = monoid_from(a)?;
            let r = monoid_reconstruction(&m)?;
            let complete = r.report.complete;
            Outcome::with_complete(r, complete)
        }
        Command::GroupMaps(a) => {
            let g = FiniteGroup::new(group_preset(&a.group)?)?;
            let r = finite_group_natural_maps(&g, a.n, a.word_length)?;
            let complete = r.report.complete;
            Outcome::with_complete(r, complete)
        }
        Command::Word(w) => run_word(w)?,
        Command::Perm(PermCommand::Compose { m, i, k, n, j }) => {
            let r = perm_compose(&PermElement::new(*m, *i)?, *k, &PermElement::new(*n, *j)?)?;
            Outcome::value(json!({ "arity": r.arity(), "index": r.index(), "display": r.to_string() }))
        }
        Command::Perm(PermCommand::Check { arity_bound }) => {
            let report = check_operad_axioms(&PermOperad::new(), *arity_bound, 1);
            let ok = report.pass();
            Outcome { ok, ..Outcome::value(report) }
        }
        Command::Qpoly(q) => run_qpoly(q)?,
        Command::SchurWeyl(a) => {
            let domain = Domain::parse_spec(&a.field)?;
            let run = if a.full_group {
                schur_weyl_full_group(&domain, a.d, a.n)?
            } else {
                schur_weyl_run(&domain, a.d, a.n, a.generators, cli.seed)?
            };
            Outcome::value(run)
        }
        Command::Axioms(a) => {
            let op = match a.operad {
                OperadChoice::Perm => BuiltinOperad::Perm(PermOperad::new()),
                OperadChoice::Word => BuiltinOperad::Word(WordOperad::new()),
                OperadChoice::Qpoly => BuiltinOperad::QPoly(QPolyOperad::new(field(&a.field)?)),
                OperadChoice::Trivial => BuiltinOperad::Trivial(TrivialOperad::new(Domain::parse_spec(&a.field)?)),
                OperadChoice::End => BuiltinOperad::Tabulated(TabulatedOperad { carrier: a.carrier }),
            };
            let report = check_operad_axioms(&op, a.arity_bound, a.size_bound);
            let ok = report.pass();
            Outcome { ok, ..Outcome::value(report) }
        }
        Command::All(a) => {
            let opts = CheckOptions {
                perm_fault: match a.inject_fault {
                    Some(Fault::Perm) => PermFault::ShiftOffByOne,
                    _ => PermFault::None,
                },
                word_fault: match a.inject_fault {
                    Some(Fault::Word) => WordFault::SinglePassReduction,
                    _ => WordFault::None,
                },
                seed: cli.seed,
            };
            let mut summary = match a.criterion {
                Some(id) => {
                    let c = checks::run_criterion(id, &opts)?;
                    let pass = c.pass;
                    checks::SuiteSummary { criteria: vec![c], pass }
                }
                None => checks::run_all_checks(&opts),
            };
            let text = summary_text(&summary, cli.timing);
            if !cli.timing {
                summary = summary.without_timing();
            }
            Outcome { ok: summary.pass, text: Some(text), ..Outcome::value(&summary) }
        }
    })
}

fn summary_text(s: &checks::SuiteSummary, timing: bool) -> String {
    let mut out = String::new();
    for c in &s.criteria {
        let status = if c.pass { "PASS" } else { "FAIL" };
        out.push_str(&format!("{status} {}: {}", c.id, c.name));
        if let (true, Some(t)) = (timing, c.elapsed_ms) {
            out.push_str(&format!(" ({t} ms, limit {} ms)", c.time_limit_ms));
        }
        out.push('\n');
        for w in &c.witness {
            out.push_str(&format!("    {w}\n"));
        }
        for f in &c.failures {
            out.push_str(&format!("    counterexample: {f}\n"));
        }
    }
    out.push_str(if s.pass { "all checks passed\n" } else { "some checks failed\n" });
    out
}

fn run_word(w: &WordCommand) -> Result<Outcome> {
    Ok(match w {
        WordCommand::Compose { w1, arity1, i, w2, arity2 } => {
            let r = word_compose(&ReducedWord::parse(w1, *arity1)?, *i, &ReducedWord::parse(w2, *arity2)?)?;
            Outcome::value(json!({ "word": r.to_string(), "arity": r.arity() }))
        }
        WordCommand::Reduce { letters, arity } => {
            let r = free_reduce(&parse_letters(letters)?, *arity)?;
            Outcome::value(json!({ "word": r.to_string(), "arity": r.arity(), "length": r.len() }))
        }
        WordCommand::Eval { word, arity, group, args } => {
            let g = FiniteGroup::new(group_preset(group)?)?;
            let w = ReducedWord::parse(word, *arity)?;
            let v = group_eval(&w, &g, &parse_args_list(args))?;
            Outcome::value(json!({ "word": w.to_string(), "value": v }))
        }
        WordCommand::Enumerate { arity, max_length } => {
            let words: Vec<String> = word_enumerate(*arity, *max_length).iter().map(ToString::to_string).collect();
            Outcome::value(json!({ "count": words.len(), "expected_count": word_count(*arity, *max_length), "words": words }))
        }
    })
}

fn run_qpoly(q: &QpolyCommand) -> Result<Outcome> {
    Ok(match q {
        QpolyCommand::Compose { field: spec, f, arity_f, i, g, arity_g } => {
            let k = field(spec)?;
            let f = QPolynomial::parse(f, k.clone(), *arity_f)?;
            let g = QPolynomial::parse(g, k, *arity_g)?;
            let r = qpoly_compose(&f, *i, &g)?;
            Outcome::value(json!({ "polynomial": r.to_string(), "arity": r.arity() }))
        }
        QpolyCommand::Classify { field: spec, arity, maxdeg } => {
            let c = characterize_multilinear(*arity, *maxdeg, field(spec)?)?;
            let ok = c.agrees_with_criterion;
            Outcome { ok, ..Outcome::value(c) }
        }
        QpolyCommand::Check { field: spec, poly, nvars, cap } => {
            let p = Polynomial::parse(poly, field(spec)?, *nvars)?;
            let cap = cap.unwrap_or_else(|| required_cap(&p));
            let verdict = multilinearity_check(&p, cap)?;
            Outcome::value(json!({
                "polynomial": p.to_string(),
                "cap": cap,
                "verdict": verdict,
                "q_power_criterion": satisfies_q_power_criterion(&p),
            }))
        }
        QpolyCommand::Generate { field: spec, n, exp_bound, relations_up_to } => {
            let k = field(spec)?;
            let monomials = generated_submonomials(*n, *exp_bound, k.clone())?;
            let relations = relations_up_to.map(|m| presentation_soundness(k, m)).transpose()?;
            let ok = relations.as_ref().is_none_or(|r| r.pass());
            Outcome { ok, ..Outcome::value(json!({ "monomials": monomials, "relations": relations })) }
        }
    })
}

/// Sets every `elapsed_ms` field to null.
fn strip_timing(v: &mut Value) {
    match v {
        Value::Object(map) => {
            for (k, x) in map.iter_mut() {
                if k == "elapsed_ms" {
                    *x = Value::Null;
                } else {
                    strip_timing(x);
                }
            }
        }
        Value::Array(xs) => xs.iter_mut().for_each(strip_timing),
        _ => {}
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::CentralSet(_) => "central-set",
        Command::CentralMod(_) => "central-mod",
        Command::Graded(_) => "graded",
        Command::Monoid(_) => "monoid",
        Command::GroupMaps(_) => "group-maps",
        Command::Word(WordCommand::Compose { .. }) => "word compose",
        Command::Word(WordCommand::Reduce { .. }) => "word reduce",
        Command::Word(WordCommand::Eval { .. }) => "word eval",
        Command::Word(WordCommand::Enumerate { .. }) => "word enumerate",
        Command::Perm(PermCommand::Compose { .. }) => "perm compose",
        Command::Perm(PermCommand::Check { .. }) => "perm check",
        Command::Qpoly(QpolyCommand::Compose { .. }) => "qpoly compose",
        Command::Qpoly(QpolyCommand::Classify { .. }) => "qpoly classify",
        Command::Qpoly(QpolyCommand::Check { .. }) => "qpoly check",
        Command::Qpoly(QpolyCommand::Generate { .. }) => "qpoly generate",
        Command::SchurWeyl(_) => "schur-weyl",
        Command::Axioms(_) => "axioms",
        Command::All(_) => "all",
    }
}

fn params(c: &Command, seed: u64) -> Value {
    let mut v = match c {
        Command::CentralSet(a) => serde_json::to_value(a),
        Command::CentralMod(a) => serde_json::to_value(a),
        Command::Graded(a) => serde_json::to_value(a),
        Command::Monoid(a) => serde_json::to_value(a),
        Command::GroupMaps(a) => serde_json::to_value(a),
        Command::Word(a) => serde_json::to_value(a),
        Command::Perm(a) => serde_json::to_value(a),
        Command::Qpoly(a) => serde_json::to_value(a),
        Command::SchurWeyl(a) => serde_json::to_value(a),
        Command::Axioms(a) => serde_json::to_value(a),
        Command::All(a) => serde_json::to_value(a),
    }
    .unwrap_or(Value::Null);
    // Subcommand groups serialize as {"variant": {...}}; keep the fields only.
    if let Value::Object(map) = &v {
        if map.len() == 1 && matches!(c, Command::Word(_) | Command::Perm(_) | Command::Qpoly(_)) {
            v = map.values().next().cloned().unwrap_or(Value::Null);
        }
    }
    if let Value::Object(map) = &mut v {
        map.insert("seed".into(), json!(seed));
    }
    v
}

fn emit(cli: &Cli, text: &str) -> std::io::Result<()> {
    match &cli.output {
        Some(path) => std::fs::write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {}: {e}", e.name());
            return ExitCode::from(1);
        }
    };
    let elapsed = cli.timing.then(|| start.elapsed().as_millis() as u64);
    let mut result = outcome.result;
    if !cli.timing {
        strip_timing(&mut result);
    }
    let doc = json!({
        "command": command_name(&cli.command),
        "params": params(&cli.command, cli.seed),
        "result": result,
        "complete": outcome.complete,
        "elapsed_ms": elapsed,
    });
    let text = match (&outcome.text, cli.json) {
        (Some(t), false) => t.clone(),
        _ => serde_json::to_string_pretty(&doc).unwrap_or_default() + "\n",
    };
    if let Err(e) = emit(&cli, &text) {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(1);
    }
    if outcome.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
