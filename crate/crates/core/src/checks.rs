//! The acceptance suite: nine numbered checks, each recomputing a result
//! from scratch and comparing it with its expected value.

use std::sync::Arc;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finite::{FiniteGroup, FiniteMonoidTable};
use crate::linalg::{schur_weyl_full_group, schur_weyl_run, ExactMatrix};
use crate::naturality::{
    central_module, central_set_bruteforce, central_set_determined, component_on, graded_central,
    monoid_reconstruction, projection_index, NaturalityReport, Survivors,
};
use crate::operad::{check_operad_axioms, Operad, PermElement, PermFault, PermOperad, TabulatedOperad};
use crate::qpoly::{characterize_multilinear, satisfies_q_power_criterion, Polynomial, QPolynomial};
use crate::scalars::{Domain, FieldDescriptor, FiniteField};
use crate::word::{free_reduce, group_eval, word_enumerate, Letter, ReducedWord, WordFault, WordOperad};

/// Dimension of the `GL_2(F_2)`-equivariant endomorphisms of `(F_2^2)^{⊗2}`,
/// confirmed by brute force over all 4×4 matrices in the oracle tests.
pub const F2_GL2_TENSOR_SQUARE_DIM: usize = 3;

/// Monoids of order at most 3, one per isomorphism class.
pub const MONOID_FIXTURE: &str = include_str!("../fixtures/monoids_order_le_3.json");

#[derive(Deserialize)]
struct Fixture {
    monoids: Vec<FiniteMonoidTable>,
}

/// Parses [`MONOID_FIXTURE`].
pub fn fixture_monoids() -> Result<Vec<FiniteMonoidTable>> {
    let f: Fixture = serde_json::from_str(MONOID_FIXTURE).map_err(|e| Error::Parse(e.to_string()))?;
    Ok(f.monoids)
}

/// Faults to inject and the seed for randomized steps.
#[derive(Clone, Copy, Debug, Default, Serialize)]
pub struct CheckOptions {
    pub perm_fault: PermFault,
    pub word_fault: WordFault,
    pub seed: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: String,
    pub pass: bool,
    /// The computed values the verdict rests on.
    pub witness: Vec<String>,
    /// Every mismatch found, in the order checked.
    pub failures: Vec<String>,
    pub time_limit_ms: u64,
    pub elapsed_ms: Option<u64>,
}

impl CriterionResult {
    pub fn within_time_limit(&self) -> Option<bool> {
        self.elapsed_ms.map(|t| t < self.time_limit_ms)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteSummary {
    pub criteria: Vec<CriterionResult>,
    pub pass: bool,
}

impl SuiteSummary {
    pub fn without_timing(mut self) -> Self {
        for c in &mut self.criteria {
            c.elapsed_ms = None;
        }
        self
    }
}

/// `(id, name, time limit in ms)`.
pub const CRITERIA: [(u8, &str, u64); 9] = [
    (1, "central operad of finite sets is Perm", 1_000),
    (2, "Perm relations and operad axioms", 1_000),
    (3, "central operad of modules is concentrated in arity one", 5_000),
    (4, "graded central operad acts degree-wise", 2_000),
    (5, "monoid reconstruction from M-sets", 5_000),
    (6, "word operad of groups", 10_000),
    (7, "q-polynomial operad", 10_000),
    (8, "tensor-power equivariants", 20_000),
    (9, "negative controls", 1_000),
];

/// Collects witnesses and failures for one criterion.
#[derive(Default)]
struct Log {
    witness: Vec<String>,
    failures: Vec<String>,
}

impl Log {
    fn note(&mut self, s: impl Into<String>) {
        self.witness.push(s.into());
    }

    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    fn expect_eq<T: PartialEq + std::fmt::Debug>(&mut self, what: &str, got: T, want: T) {
        if got != want {
            self.failures.push(format!("{what}: got {got:?}, expected {want:?}"));
        }
    }

    fn record_err<T>(&mut self, what: &str, r: Result<T>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.failures.push(format!("{what}: {} ({e})", e.name()));
                None
            }
        }
    }
}

/// Runs one criterion by number.
pub fn run_criterion(id: u8, opts: &CheckOptions) -> Result<CriterionResult> {
    let &(_, name, limit) = CRITERIA
        .iter()
        .find(|c| c.0 == id)
        .ok_or_else(|| Error::IndexOutOfRange { index: id as usize, arity: CRITERIA.len() })?;
    let start = Instant::now();
    let mut log = Log::default();
    match id {
        1 => central_sets(opts, &mut log),
        2 => perm_relations(opts, &mut log),
        3 => central_modules(&mut log),
        4 => graded(&mut log),
        5 => monoids(&mut log),
        6 => words(opts, &mut log),
        7 => qpolys(&mut log),
        8 => schur_weyl(opts, &mut log),
        _ => negative_controls(&mut log),
    }
    Ok(CriterionResult {
        id,
        name: name.to_string(),
        pass: log.failures.is_empty(),
        witness: log.witness,
        failures: log.failures,
        time_limit_ms: limit,
        elapsed_ms: Some(start.elapsed().as_millis() as u64),
    })
}

/// Runs every criterion in order.
pub fn run_all_checks(opts: &CheckOptions) -> SuiteSummary {
    let criteria: Vec<CriterionResult> = CRITERIA
        .iter()
        .map(|c| run_criterion(c.0, opts).expect("known criterion"))
        .collect();
    let pass = criteria.iter().all(|c| c.pass);
    SuiteSummary { criteria, pass }
}

fn central_sets(opts: &CheckOptions, log: &mut Log) {
    let expected: [&[&str]; 3] = [&[], &["id"], &["π1", "π2"]];
    for (n, want) in expected.iter().enumerate() {
        if let Some(r) = log.record_err("central_set_bruteforce", central_set_bruteforce(n)) {
            log.note(format!("brute force n={n}: {{{}}}", r.labels.join(", ")));
            log.expect_eq(&format!("brute force n={n}"), r.labels.as_slice(), &want.iter().map(|s| s.to_string()).collect::<Vec<_>>()[..]);
            log.expect(r.reverified, || format!("brute force n={n} survivors failed re-verification"));
        }
    }
    let mut survivors = vec![Vec::new()];
    for n in 1..=3 {
        let Some(r) = log.record_err("central_set_determined", central_set_determined(n)) else {
            return;
        };
        if n == 3 {
            log.note(format!("determined n=3: {{{}}}", r.labels.join(", ")));
            log.expect_eq("determined n=3", r.labels.clone(), vec!["π1".to_string(), "π2".into(), "π3".into()]);
        }
        survivors.push(r.survivors.functions().unwrap_or_default().to_vec());
    }
    let perm = PermOperad::with_fault(opts.perm_fault);
    let mut pairs = 0;
    for m in 1..=3 {
        for n in 1..=3 {
            let x = m + n - 1;
            let end = TabulatedOperad { carrier: x };
            for phi in &survivors[m] {
                for psi in &survivors[n] {
                    for k in 1..=m {
                        pairs += 1;
                        let got = component_on(phi, m, x)
                            .and_then(|a| component_on(psi, n, x).map(|b| (a, b)))
                            .and_then(|(a, b)| end.compose_at(&a, k, &b));
                        let pi = PermElement::new(m, projection_index(phi, m, m).unwrap_or(0));
                        let pj = PermElement::new(n, projection_index(psi, n, n).unwrap_or(0));
                        let want = pi
                            .and_then(|pi| pj.map(|pj| (pi, pj)))
                            .and_then(|(pi, pj)| perm.compose_at(&pi, k, &pj).map(|c| (pi, pj, c)));
                        match (got, want) {
                            (Ok(got), Ok((pi, pj, c))) => {
                                if c.tabulate(x).ok().as_ref() != Some(&got) {
                                    log.failures.push(format!(
                                        "{pi} ∘_{k} {pj}: survivors compose to π{} but composition gives {c}",
                                        got.eval(&(0..x).collect::<Vec<_>>()) + 1
                                    ));
                                }
                            }
                            (Err(e), _) | (_, Err(e)) => log.failures.push(format!("composition m={m} n={n} k={k}: {}", e.name())),
                        }
                    }
                }
            }
        }
    }
    log.note(format!("{pairs} composable survivor pairs (arity ≤ 3) compared with projection composition"));
}

fn perm_relations(opts: &CheckOptions, log: &mut Log) {
    let perm = PermOperad::with_fault(opts.perm_fault);
    let p1 = PermElement::new(1, 1).expect("valid");
    let p2 = PermElement::new(2, 1).expect("valid");
    let q2 = PermElement::new(2, 2).expect("valid");
    // Binary product π₁ ∈ Perm(2) composed with itself in each slot.
    let forms = [(p2, 1, p2), (p2, 2, p2), (p2, 2, q2)];
    let results: Vec<Option<PermElement>> = forms
        .iter()
        .map(|(a, k, b)| log.record_err("perm compose", perm.compose_at(a, *k, b)))
        .collect();
    log.note(format!(
        "π1∘1π1 = {}, π1∘2π1 = {}, π1∘2π2 = {}",
        fmt_opt(&results[0]),
        fmt_opt(&results[1]),
        fmt_opt(&results[2])
    ));
    let want = PermElement::new(3, 1).ok();
    for (r, (a, k, b)) in results.iter().zip(forms) {
        log.expect(*r == want, || format!("{a} ∘_{k} {b} = {} instead of π1/3", fmt_opt(r)));
    }
    log.expect(perm.compose_at(&p2, 1, &p1).ok() == Some(p2), || "unit on the right".into());
    let counts: Vec<usize> = (0..=4).map(|n| perm.enumerate(n, 1).len()).collect();
    log.expect_eq("|Perm(n)| for n = 0..4", counts, vec![0, 1, 2, 3, 4]);
    let report = check_operad_axioms(&perm, 4, 1);
    axioms_into_log(&report, log, true);
}

fn fmt_opt<T: std::fmt::Display>(x: &Option<T>) -> String {
    x.as_ref().map_or_else(|| "error".into(), T::to_string)
}

fn axioms_into_log(report: &crate::operad::AxiomReport, log: &mut Log, expect_pass: bool) {
    let instances: usize = report.checks.iter().map(|c| c.instances).sum();
    log.note(format!("{}: {} axiom instances, pass = {}", report.operad, instances, report.pass()));
    if expect_pass {
        for c in report.checks.iter().filter(|c| !c.pass) {
            log.failures.push(format!("{}: {}", c.name, c.witness.clone().unwrap_or_default()));
        }
    }
}

fn is_scalar_matrix(m: &ExactMatrix) -> bool {
    m.is_square()
        && (0..m.rows()).all(|i| (0..m.cols()).all(|j| if i == j { m.get(i, j) == m.get(0, 0) } else { m.get(i, j).is_zero() }))
}

fn all_zero(s: &Survivors) -> bool {
    s.matrices().is_some_and(|v| v.iter().all(ExactMatrix::is_zero))
}

fn central_modules(log: &mut Log) {
    for spec in ["2", "3", "zmod:4"] {
        let Some(domain) = log.record_err("ring", Domain::parse_spec(spec)) else {
            continue;
        };
        let size = domain.size().unwrap_or(0) as u128;
        let reports: Vec<Option<NaturalityReport>> =
            (0..=2).map(|n| log.record_err("central_module", central_module(&domain, 2, n))).collect();
        let [Some(r0), Some(r1), Some(r2)] = &reports[..] else {
            continue;
        };
        log.note(format!(
            "{domain}, rank 2: arity 0 count {}, arity 1 count {} ({}), arity 2 count {}",
            fmt_opt(&r0.count),
            fmt_opt(&r1.count),
            r1.method,
            fmt_opt(&r2.count)
        ));
        for (n, r) in [(0, r0), (2, r2)] {
            log.expect(r.count == Some(1) && all_zero(&r.survivors), || {
                format!("{domain} arity {n}: expected only 0, got count {}", fmt_opt(&r.count))
            });
        }
        log.expect_eq(&format!("{domain} arity 1 count"), r1.count, Some(size));
        let scalars = r1.survivors.matrices().is_some_and(|v| v.iter().all(is_scalar_matrix));
        log.expect(scalars, || format!("{domain} arity 1: a survivor is not a scalar matrix"));
        for r in [r0, r1, r2] {
            log.expect(r.complete && r.reverified, || format!("{domain} arity {}: incomplete or unverified", r.arity));
        }
    }
}

fn graded(log: &mut Log) {
    let domain = Domain::Zmod(2);
    for n in 0..=2 {
        let Some(r) = log.record_err("graded_central", graded_central(&domain, 1, n)) else {
            continue;
        };
        log.note(format!("Z/2, degrees -1..1, arity {n}: count {}", fmt_opt(&r.count)));
        log.expect(r.complete && r.reverified, || format!("arity {n}: incomplete or unverified"));
        let Survivors::Graded(components) = &r.survivors else {
            log.failures.push(format!("arity {n}: not graded"));
            continue;
        };
        if n == 1 {
            log.expect_eq("arity 1 count", r.count, Some(8));
            log.expect_eq("arity 1 components", components.len(), 3);
            for c in components {
                let ok = c.count == Some(2)
                    && c.source_degrees == [c.target_degree]
                    && c.survivors.matrices().is_some_and(|v| v.iter().all(is_scalar_matrix));
                log.expect(ok, || format!("degree {}: not exactly the scalars", c.target_degree));
            }
        } else {
            log.expect_eq(&format!("arity {n} count"), r.count, Some(1));
            log.expect(components.iter().all(|c| all_zero(&c.survivors)), || format!("arity {n}: nonzero survivor"));
        }
    }
}

/// Groups of order at most 6 up to isomorphism.
pub fn small_groups() -> Vec<(String, FiniteMonoidTable)> {
    let mut out: Vec<(String, FiniteMonoidTable)> =
        (1..=6).map(|n| (format!("Z/{n}"), FiniteMonoidTable::cyclic(n).expect("cyclic"))).collect();
    out.push(("Z/2 x Z/2".into(), FiniteMonoidTable::from_fn(4, 0, |a, b| a ^ b).expect("Klein four")));
    out.push(("S3".into(), FiniteMonoidTable::symmetric_group(3).expect("S3")));
    out
}

fn monoids(log: &mut Log) {
    let Some(fixture) = log.record_err("fixture", fixture_monoids()) else {
        return;
    };
    let named = fixture
        .into_iter()
        .enumerate()
        .map(|(k, m)| (format!("fixture #{k} (order {})", m.order()), m))
        .chain(small_groups());
    let mut checked = 0;
    for (name, m) in named {
        let Some(r) = log.record_err(&name, monoid_reconstruction(&m)) else {
            continue;
        };
        checked += 1;
        log.expect(r.isomorphic && r.report.reverified, || {
            format!(
                "{name}: {} natural maps, bijective = {}, multiplicative = {}",
                r.report.survivors.len(),
                r.bijective,
                r.multiplicative
            )
        });
    }
    log.note(format!("{checked} monoids reconstructed: fixture of order ≤ 3 plus all groups of order ≤ 6"));
}

fn words(opts: &CheckOptions, log: &mut Log) {
    let words = WordOperad::with_fault(opts.word_fault);
    let report = check_operad_axioms(&words, 3, 3);
    axioms_into_log(&report, log, true);

    let Ok(s3) = FiniteGroup::new(FiniteMonoidTable::symmetric_group(3).expect("S3")) else {
        log.failures.push("S3 is not a group".into());
        return;
    };
    let endos = s3.monoid().endomorphisms().unwrap_or_default();
    log.expect_eq("endomorphisms of S3", endos.len(), 10);
    let mut evaluations = 0usize;
    'outer: for n in 0..=3 {
        let tuples = 6usize.pow(n as u32);
        for w in word_enumerate(n, 3) {
            for code in 0..tuples {
                let args = crate::operad::decode_tuple(6, n, code);
                let Ok(v) = group_eval(&w, &s3, &args) else {
                    log.failures.push(format!("evaluation of {w} failed"));
                    break 'outer;
                };
                for f in &endos {
                    evaluations += 1;
                    let fa: Vec<usize> = args.iter().map(|&a| f.apply(a)).collect();
                    if group_eval(&w, &s3, &fa).ok() != Some(f.apply(v)) {
                        log.failures.push(format!("{w} does not commute with S3 endomorphism {:?} at {args:?}", f.table()));
                        break 'outer;
                    }
                }
            }
        }
    }
    log.note(format!("{evaluations} evaluations on S3 commute with all endomorphisms"));

    let x = |g, inv| Letter::new(g, inv);
    let reductions = [
        (vec![x(1, false), x(1, true)], 1, "e"),
        (vec![x(1, false), x(2, false), x(2, true), x(1, false)], 2, "x1 x1"),
        (vec![x(1, false), x(2, true)], 2, "x1 x2^-1"),
    ];
    for (letters, n, want) in reductions {
        let got = free_reduce(&letters, n).map(|w| w.to_string());
        log.expect(got.as_deref().ok() == Some(want), || format!("reduce to {want}: got {}", fmt_res(&got)));
    }
    let parse = |s: &str, n| ReducedWord::parse(s, n);
    let compositions = [
        ("x1 x2", 1, "x1^-1", 1, "x1^-1 x2"),
        ("x1 x2 x1^-1", 2, "e", 0, "e"),
        ("x1 x2^-1", 2, "x1", 1, "x1 x2^-1"),
        ("x1", 1, "x2 x1^-1", 2, "x2 x1^-1"),
    ];
    for (a, i, b, nb, want) in compositions {
        let na = if a == "x1" { 1 } else { 2 };
        let got = parse(a, na)
            .and_then(|w1| parse(b, nb).and_then(|w2| words.compose_at(&w1, i, &w2)))
            .map(|w| w.to_string());
        log.note(format!("({a}) ∘_{i} ({b}) = {}", fmt_res(&got)));
        log.expect(got.as_deref().ok() == Some(want), || format!("({a}) ∘_{i} ({b}): got {}, expected {want}", fmt_res(&got)));
    }
}

fn fmt_res(r: &Result<String>) -> String {
    match r {
        Ok(s) => s.clone(),
        Err(e) => e.name().to_string(),
    }
}

fn field(p: u64, k: usize) -> Result<Arc<FiniteField>> {
    Ok(FiniteField::new(FieldDescriptor::builtin(p, k)?))
}

fn qpolys(log: &mut Log) {
    for (p, k) in [(2, 1), (3, 1), (2, 2)] {
        let Some(f) = log.record_err("field", field(p, k)) else {
            continue;
        };
        let q = f.q();
        let x1 = Polynomial::variable(f.clone(), 2, 1).expect("in range");
        let x2 = Polynomial::variable(f.clone(), 2, 2).expect("in range");
        let lhs = x1.mul(&x2).map(|m| m.pow(q));
        let rhs = x1.pow(q).mul(&x2.pow(q));
        log.expect(matches!((&lhs, &rhs), (Ok(a), Ok(b)) if a == b), || format!("(X1*X2)^{q} != X1^{q}*X2^{q}"));
        // The same relation inside the operad: P_q ∘₁ μ = μ ∘ (P_q, P_q).
        let mu = QPolynomial::monomial(f.clone(), &[0, 0]);
        let pq = QPolynomial::monomial(f.clone(), &[1]);
        let both = QPolynomial::monomial(f.clone(), &[1, 1]);
        let via_ops = pq.as_ref().ok().zip(mu.as_ref().ok()).map(|(pq, mu)| pq.compose(1, mu));
        let ok = matches!((via_ops, &both), (Some(Ok(a)), Ok(b)) if a == *b);
        log.expect(ok, || format!("P_{q} ∘1 μ differs from X1^{q}*X2^{q}"));
        log.note(format!("q = {q}: (X1*X2)^{q} = X1^{q}*X2^{q}"));
    }

    for (p, k, n, deg) in [(2, 1, 1, 4), (3, 1, 1, 9), (2, 2, 1, 4), (2, 1, 2, 4)] {
        let Some(f) = log.record_err("field", field(p, k)) else {
            continue;
        };
        let q = f.q();
        let Some(c) = log.record_err("characterize_multilinear", characterize_multilinear(n, deg, f)) else {
            continue;
        };
        log.note(format!("q = {q}, arity {n}, degree ≤ {deg}: multilinear {{{}}}", c.multilinear.join(", ")));
        log.expect(c.agrees_with_criterion, || {
            let bad: Vec<&str> =
                c.details.iter().filter(|d| d.verdict.is_multilinear() != d.q_power_criterion).map(|d| d.monomial.as_str()).collect();
            format!("q = {q}, arity {n}: criterion disagrees on {}", bad.join(", "))
        });
        let has = |m: &str| c.multilinear.iter().any(|x| x == m);
        match (q, n) {
            (2, 1) => {
                log.expect(has("X1^2"), || "X1^2 should be multilinear over F_2".into());
                log.expect(!has("X1^3"), || "X1^3 should fail over F_2".into());
            }
            (4, 1) => log.expect(!has("X1^2"), || "X1^2 should fail over F_4".into()),
            _ => {}
        }
    }

    let mut pairs = 0;
    for (p, k) in [(2, 1), (3, 1), (2, 2)] {
        let Some(f) = log.record_err("field", field(p, k)) else {
            continue;
        };
        let monomials: Vec<QPolynomial> = crate::qpoly::level_vectors(1, 2)
            .into_iter()
            .chain(crate::qpoly::level_vectors(2, 2))
            .filter_map(|l| QPolynomial::monomial(f.clone(), &l).ok())
            .collect();
        for a in &monomials {
            for b in &monomials {
                for i in 1..=a.arity() {
                    pairs += 1;
                    match a.compose(i, b) {
                        Ok(c) if satisfies_q_power_criterion(c.as_polynomial()) && c.arity() == a.arity() + b.arity() - 1 => {}
                        Ok(c) => log.failures.push(format!("({a}) ∘_{i} ({b}) = {c} is not a q-polynomial")),
                        Err(e) => log.failures.push(format!("({a}) ∘_{i} ({b}): {}", e.name())),
                    }
                }
            }
        }
    }
    log.note(format!("{pairs} monomial compositions (exponents ≤ q², arity ≤ 2) stay q-polynomials"));
}

fn schur_weyl(opts: &CheckOptions, log: &mut Log) {
    for n in 1..=3 {
        let Some(run) = log.record_err("schur_weyl_run", schur_weyl_run(&Domain::Rational, n, n, 8, opts.seed)) else {
            continue;
        };
        log.note(format!(
            "Q, d = n = {n}: dim {} with {} generators, {} with {}",
            run.dimension, run.generator_count, run.doubled_dimension, run.doubled_generator_count
        ));
        log.expect_eq(&format!("Q, n = {n} dimension"), run.dimension, run.factorial);
        log.expect(run.stable, || format!("Q, n = {n}: dimension changed when doubling generators"));
        log.expect(run.contains_permutations, || format!("Q, n = {n}: permutation operators not in the solution space"));
    }
    let Some(f2) = log.record_err("field", FieldDescriptor::builtin(2, 1).map(Domain::finite)) else {
        return;
    };
    if let Some(run) = log.record_err("schur_weyl_full_group", schur_weyl_full_group(&f2, 2, 2)) {
        log.note(format!(
            "F_2, all {} elements of GL_2: dim {} (permutation span {})",
            run.generator_count, run.dimension, run.permutation_span_dim
        ));
        log.expect(run.dimension > 2, || format!("F_2: dimension {} does not exceed 2", run.dimension));
        log.expect_eq("F_2 dimension", run.dimension, F2_GL2_TENSOR_SQUARE_DIM);
    }
}

fn negative_controls(log: &mut Log) {
    let perm = check_operad_axioms(&PermOperad::with_fault(PermFault::ShiftOffByOne), 4, 1);
    let words = check_operad_axioms(&WordOperad::with_fault(WordFault::SinglePassReduction), 3, 3);
    for report in [perm, words] {
        match report.first_failure() {
            Some(c) => log.note(format!("{}: {}: {}", report.operad, c.name, c.witness.clone().unwrap_or_default())),
            None => log.failures.push(format!("{}: no counterexample found", report.operad)),
        }
        log.expect(report.first_failure().is_some_and(|c| c.witness.is_some()), || {
            format!("{}: failure without a witness", report.operad)
        });
    }
}
