use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;
use symbreak::csp::{oracle_dc, propagate_fixpoint, propagate_from, Stats};
use symbreak::lex::{
    audit_completeness, doublelex_complete_check, lex_leader_from_generators, lexchain_propagate, AuditReport,
    OrbitWitness,
};
use symbreak::perm::{closure, is_irredundant, is_member, schreier_sims, PermError};
use symbreak::reduction::{build_gadget1, build_instance, verify_equivalence};
use symbreak::{
    ChainOrder, Constraint, Domain, GeneratingSet, MatrixCell, MatrixModel, Model, Outcome, Permutation, SearchConfig,
    Status, SymmetryKind, Value, VarId, Wipeout,
};

use crate::formula::parse_formula;
use crate::instance_io::{grid_cells, instance_doc, status_name, verify_doc};
use crate::model_io::{value_set, ModelDoc, SCHEMA_VERSION};
use crate::{
    read_input, AuditArgs, BreakArgs, Engine, Failure, GroupArgs, Output, PropagateArgs, ReduceArgs, SolveArgs,
    SymmetryArgs, EXIT_BUDGET, EXIT_NEGATIVE, EXIT_OK,
};

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn perm_failure(what: &str, e: PermError) -> Failure {
    match e {
        PermError::ClosureCap { .. } => Failure::budget(format!("{what}: {e}")),
        _ => Failure::usage(format!("{what}: {e}")),
    }
}

/// `{(1 2),(2 3)}`, generators sorted by their cycles.
fn perm_set(perms: &[Permutation]) -> String {
    let mut sorted: Vec<&Permutation> = perms.iter().collect();
    sorted.sort_by_key(|p| p.cycles());
    let body: Vec<String> = sorted.iter().map(|p| p.to_string()).collect();
    format!("{{{}}}", body.join(","))
}

/// `0101` when every value is a digit, `1,10,2` otherwise.
fn tuple(t: &[Value]) -> String {
    let parts: Vec<String> = t.iter().map(Value::to_string).collect();
    if t.iter().all(|&v| v < 10) {
        parts.concat()
    } else {
        parts.join(",")
    }
}

pub fn group(a: &GroupArgs, json: bool) -> Result<Output, Failure> {
    let g = GeneratingSet::parse(&a.gens, a.degree).map_err(|e| perm_failure("--gens", e))?;
    if a.degree.is_some_and(|d| d < g.degree()) {
        return Err(Failure::usage(format!(
            "--gens mentions point {} beyond --degree",
            g.degree()
        )));
    }
    let n = g.degree();
    let show_all = !a.order && !a.irredundant && a.sgs_base.is_none() && a.members.is_empty() && !a.elements;
    let natural: Vec<usize> = (1..=n).collect();
    let chain = schreier_sims(&g, &natural).map_err(|e| perm_failure("group", e))?;

    let mut text = String::new();
    let mut doc = serde_json::Map::new();
    doc.insert("schema_version".into(), json!(SCHEMA_VERSION));
    doc.insert("degree".into(), json!(n));
    if a.order || show_all {
        writeln!(text, "order: {}", chain.order()).unwrap();
        // u128 does not fit every JSON reader; the order goes out as a string
        doc.insert("order".into(), json!(chain.order().to_string()));
    }
    if a.irredundant || show_all {
        let irr = is_irredundant(&g);
        writeln!(text, "irredundant: {irr}").unwrap();
        doc.insert("irredundant".into(), json!(irr));
    }
    if let Some(base) = &a.sgs_base {
        let c = schreier_sims(&g, base).map_err(|e| perm_failure("--sgs-base", e))?;
        let sgs = perm_set(c.strong_generators());
        let base_text: Vec<String> = c.base().iter().map(usize::to_string).collect();
        writeln!(text, "base: {}", base_text.join(",")).unwrap();
        writeln!(text, "sgs: {sgs}").unwrap();
        doc.insert("base".into(), json!(c.base()));
        doc.insert("sgs".into(), json!(sgs));
        doc.insert(
            "levels".into(),
            json!(c
                .levels()
                .iter()
                .map(|l| json!({"base_point": l.base_point(), "orbit": l.orbit()}))
                .collect::<Vec<_>>()),
        );
    }
    if !a.members.is_empty() {
        let mut answers = Vec::new();
        for text_p in &a.members {
            let p = Permutation::parse_with_degree(text_p, Some(n)).map_err(|e| perm_failure("--member", e))?;
            let m = is_member(&chain, &p);
            writeln!(text, "member {p}: {m}").unwrap();
            answers.push(json!({"perm": p.to_string(), "member": m}));
        }
        doc.insert("members".into(), json!(answers));
    }
    if a.elements {
        let mut all = closure(&g, a.closure_cap).map_err(|e| perm_failure("group", e))?;
        all.sort_by_key(|p| p.cycles());
        for p in &all {
            writeln!(text, "{p}").unwrap();
        }
        doc.insert(
            "elements".into(),
            json!(all.iter().map(|p| p.to_string()).collect::<Vec<_>>()),
        );
    }
    Ok(Output::ok(if json { to_json(&doc) } else { text }))
}

fn load_model(path: &std::path::Path) -> Result<Model, Failure> {
    let text = read_input(path)?;
    ModelDoc::parse(&text)
        .and_then(|d| d.to_model())
        .map_err(Failure::usage)
}

/// The model, the variables the symmetry acts on and its generators.
fn symmetry(a: &SymmetryArgs) -> Result<(Model, Vec<VarId>, GeneratingSet), Failure> {
    let model = load_model(&a.model)?;
    let vars: Vec<VarId> = match &a.vars {
        None => (0..model.num_vars()).collect(),
        Some(names) => names
            .iter()
            .map(|n| {
                model
                    .names()
                    .iter()
                    .position(|m| m == n)
                    .ok_or_else(|| Failure::usage(format!("--vars: unknown variable `{n}`")))
            })
            .collect::<Result<_, _>>()?,
    };
    // a value symmetry fixes every value it does not mention
    let min_degree = match a.kind {
        crate::Kind::Variable => vars.len(),
        crate::Kind::Value => vars
            .iter()
            .filter_map(|&v| model.domains()[v].max())
            .max()
            .map_or(0, |m| m as usize),
    };
    let g = GeneratingSet::parse(&a.gens, Some(min_degree)).map_err(|e| perm_failure("--gens", e))?;
    if a.kind == crate::Kind::Variable && !g.is_empty() && g.degree() != vars.len() {
        return Err(Failure::usage(format!(
            "--gens has degree {} but the symmetry acts on {} variables",
            g.degree(),
            vars.len()
        )));
    }
    Ok((model, vars, g))
}

fn breaking(g: &GeneratingSet, kind: SymmetryKind, vars: &[VarId]) -> Result<Vec<Constraint>, Failure> {
    lex_leader_from_generators(g, kind, vars).map_err(|e| Failure::usage(e.to_string()))
}

pub fn break_symmetry(a: &BreakArgs) -> Result<Output, Failure> {
    let (mut model, vars, g) = symmetry(&a.sym)?;
    let added = breaking(&g, a.sym.kind.into(), &vars)?;
    model.post_all(added).map_err(|e| Failure::usage(e.to_string()))?;
    let mut text = ModelDoc::from_model(&model).to_json();
    text.push('\n');
    Ok(Output::ok(text))
}

#[derive(Serialize)]
struct AuditDoc<'a> {
    schema_version: u32,
    complete: bool,
    total_solutions: usize,
    surviving_solutions: usize,
    orbit_count: usize,
    orbits_with_multiple_survivors: Vec<WitnessDoc<'a>>,
    orbits_without_survivor: Vec<WitnessDoc<'a>>,
}

#[derive(Serialize)]
struct WitnessDoc<'a> {
    leader: &'a [Value],
    size: usize,
    survivors: &'a [Vec<Value>],
}

fn witnesses(ws: &[OrbitWitness]) -> Vec<WitnessDoc<'_>> {
    ws.iter()
        .map(|w| WitnessDoc {
            leader: &w.leader,
            size: w.size,
            survivors: &w.survivors,
        })
        .collect()
}

fn audit_text(r: &AuditReport) -> String {
    let mut text = format!(
        "complete: {}\nsolutions: {}\nsurviving: {}\norbits: {}\n",
        r.complete, r.total_solutions, r.surviving_solutions, r.orbit_count
    );
    for w in &r.orbits_with_multiple_survivors {
        let s: Vec<String> = w.survivors.iter().map(|t| tuple(t)).collect();
        writeln!(
            text,
            "orbit {} (size {}) keeps {}",
            tuple(&w.leader),
            w.size,
            s.join(" ")
        )
        .unwrap();
    }
    for w in &r.orbits_without_survivor {
        writeln!(text, "orbit {} (size {}) keeps nothing", tuple(&w.leader), w.size).unwrap();
    }
    text
}

pub fn audit(a: &AuditArgs, json: bool) -> Result<Output, Failure> {
    let (model, vars, g) = symmetry(&a.sym)?;
    let kind: SymmetryKind = a.sym.kind.into();
    if kind == SymmetryKind::Variable && vars.len() != model.num_vars() {
        return Err(Failure::usage(
            "audit acts on whole solutions: a variable symmetry must cover every variable",
        ));
    }
    let by = match &a.break_gens {
        None => g.clone(),
        Some(text) => {
            let min = if kind == SymmetryKind::Variable {
                vars.len()
            } else {
                g.degree()
            };
            GeneratingSet::parse(text, Some(min)).map_err(|e| perm_failure("--break-gens", e))?
        }
    };
    let cs = breaking(&by, kind, &vars)?;
    let r = audit_completeness(&model, &g, kind, &cs, a.audit_cap).map_err(|e| match e {
        symbreak::lex::LexError::SolutionCap { .. } => Failure::budget(e.to_string()),
        _ => Failure::usage(e.to_string()),
    })?;
    let text = if json {
        to_json(&AuditDoc {
            schema_version: SCHEMA_VERSION,
            complete: r.complete,
            total_solutions: r.total_solutions,
            surviving_solutions: r.surviving_solutions,
            orbit_count: r.orbit_count,
            orbits_with_multiple_survivors: witnesses(&r.orbits_with_multiple_survivors),
            orbits_without_survivor: witnesses(&r.orbits_without_survivor),
        })
    } else {
        audit_text(&r)
    };
    Ok(Output::ok(text))
}

pub fn solve(a: &SolveArgs, json: bool) -> Result<Output, Failure> {
    let model = load_model(&a.model)?;
    let mut config = if a.all {
        SearchConfig::all()
    } else {
        SearchConfig::first()
    };
    if let Some(l) = a.limit {
        config = config.with_limit(l);
    }
    if let Some(b) = a.budget {
        config = config.with_budget(b);
    }
    let r = symbreak::csp::solve(&model, &config);
    let code = match r.status {
        _ if r.budget_exhausted => EXIT_BUDGET,
        Status::Satisfiable => EXIT_OK,
        Status::Unsatisfiable => EXIT_NEGATIVE,
        Status::Unknown => EXIT_BUDGET,
    };
    let text = if json {
        to_json(&json!({
            "schema_version": SCHEMA_VERSION,
            "status": status_name(r.status),
            "budget_exhausted": r.budget_exhausted,
            "nodes": r.stats.nodes,
            "variables": model.names(),
            "solutions": r.solutions,
        }))
    } else {
        let mut text = format!("status: {}\nsolutions: {}\n", status_name(r.status), r.solutions.len());
        if r.budget_exhausted {
            text.push_str("search budget exhausted\n");
        }
        for s in &r.solutions {
            let parts: Vec<String> = model.names().iter().zip(s).map(|(n, v)| format!("{n}={v}")).collect();
            writeln!(text, "{}", parts.join(" ")).unwrap();
        }
        text
    };
    Ok(Output { text, code })
}

/// Result of one engine run: pruned domains, plus values a budget left undecided.
struct Pruned {
    outcome: Outcome,
    unknown: Vec<(VarId, Value)>,
}

fn chain_pass(model: &Model) -> Outcome {
    let mut d = model.domains().to_vec();
    let run = |d: &mut Vec<Domain>| -> Result<(), Wipeout> {
        if d.iter().any(|x| x.is_empty()) {
            return Err(Wipeout);
        }
        for c in model.constraints() {
            match c {
                Constraint::DoubleLex(m) => {
                    *d = lexchain_propagate(m.row_terms(), m.row_order(), d).unwrap_or_wipeout()?;
                    *d = lexchain_propagate(m.col_terms(), m.col_order(), d).unwrap_or_wipeout()?;
                }
                other => {
                    other.propagate(d)?;
                }
            }
        }
        Ok(())
    };
    run(&mut d).map(|_| d).into()
}

trait OutcomeExt {
    fn unwrap_or_wipeout(self) -> Result<Vec<Domain>, Wipeout>;
}

impl OutcomeExt for Outcome {
    fn unwrap_or_wipeout(self) -> Result<Vec<Domain>, Wipeout> {
        match self {
            Outcome::Consistent(d) => Ok(d),
            Outcome::Wipeout => Err(Wipeout),
        }
    }
}

fn complete(model: &Model, budget: u64) -> Pruned {
    let mut d = model.domains().to_vec();
    let mut unknown = Vec::new();
    loop {
        if propagate_from(model, &mut d, &mut Stats::default()).is_err() {
            return Pruned {
                outcome: Outcome::Wipeout,
                unknown,
            };
        }
        let mut changed = false;
        for c in model.constraints() {
            let Constraint::DoubleLex(m) = c else { continue };
            let check = doublelex_complete_check(m, &d, budget);
            for u in check.unknown {
                if !unknown.contains(&u) {
                    unknown.push(u);
                }
            }
            match check.outcome {
                Outcome::Wipeout => {
                    return Pruned {
                        outcome: Outcome::Wipeout,
                        unknown,
                    }
                }
                Outcome::Consistent(next) => {
                    changed |= next != d;
                    d = next;
                }
            }
        }
        if !changed {
            unknown.retain(|&(v, x)| d[v].contains(x));
            unknown.sort_unstable();
            return Pruned {
                outcome: Outcome::Consistent(d),
                unknown,
            };
        }
    }
}

fn run_engine(model: &Model, engine: Engine, budget: u64, oracle_cap: u128) -> Result<Pruned, Failure> {
    let outcome = match engine {
        Engine::Chain => chain_pass(model),
        Engine::Double => propagate_fixpoint(model),
        Engine::Complete => return Ok(complete(model, budget)),
        Engine::Oracle => oracle_dc(model, oracle_cap).map_err(|e| Failure::budget(e.to_string()))?,
    };
    Ok(Pruned {
        outcome,
        unknown: Vec::new(),
    })
}

fn engine_name(e: Engine) -> &'static str {
    match e {
        Engine::Chain => "chain",
        Engine::Double => "double",
        Engine::Complete => "complete",
        Engine::Oracle => "oracle",
    }
}

pub fn propagate(a: &PropagateArgs, json: bool) -> Result<Output, Failure> {
    if let Some(trials) = a.trials {
        return random_suite(a, trials, json);
    }
    let model = load_model(a.model.as_deref().expect("clap requires --model without --trials"))?;
    let p = run_engine(&model, a.engine, a.budget, a.oracle_cap)?;
    let names = model.names();
    let before = model.domains();
    let code = match (&p.outcome, p.unknown.is_empty()) {
        (Outcome::Wipeout, _) => EXIT_NEGATIVE,
        (_, false) => EXIT_BUDGET,
        _ => EXIT_OK,
    };
    let removed: Vec<(usize, Vec<Value>)> = match &p.outcome {
        Outcome::Wipeout => Vec::new(),
        Outcome::Consistent(after) => before
            .iter()
            .zip(after)
            .enumerate()
            .filter(|(_, (b, a))| b != a)
            .map(|(i, (b, a))| (i, b.without(*a).to_vec()))
            .collect(),
    };
    let text = if json {
        to_json(&json!({
            "schema_version": SCHEMA_VERSION,
            "engine": engine_name(a.engine),
            "status": if p.outcome.is_wipeout() { "wipeout" } else { "consistent" },
            "removed": removed.iter().map(|(i, vs)| json!({"var": names[*i], "values": vs})).collect::<Vec<_>>(),
            "domains": p.outcome.domains().map(|d| d.iter().zip(names).map(|(d, n)| json!({"var": n, "domain": d.to_vec()})).collect::<Vec<_>>()),
            "undecided": p.unknown.iter().map(|&(v, x)| json!({"var": names[v], "value": x})).collect::<Vec<_>>(),
        }))
    } else {
        let mut text = String::new();
        if p.outcome.is_wipeout() {
            text.push_str("wipeout\n");
        } else if removed.is_empty() {
            text.push_str("no removals\n");
        }
        for (i, vs) in &removed {
            writeln!(text, "{}: removed {}", names[*i], value_set(vs)).unwrap();
        }
        if !p.unknown.is_empty() {
            let u: Vec<String> = p.unknown.iter().map(|&(v, x)| format!("{}={x}", names[v])).collect();
            writeln!(
                text,
                "inconclusive: support search budget exhausted for {}",
                u.join(" ")
            )
            .unwrap();
        }
        text
    };
    Ok(Output { text, code })
}

fn pointwise_subset(a: &Outcome, b: &Outcome) -> bool {
    match (a, b) {
        (Outcome::Wipeout, _) => true,
        (Outcome::Consistent(_), Outcome::Wipeout) => false,
        (Outcome::Consistent(x), Outcome::Consistent(y)) => x.iter().zip(y).all(|(p, q)| p.is_subset(*q)),
    }
}

/// A random Boolean matrix with about half its cells free, under a DoubleLex constraint.
fn random_matrix(rng: &mut ChaCha8Rng, max_rows: usize, max_cols: usize) -> Model {
    let rows = rng.gen_range(1..=max_rows.max(1));
    let cols = rng.gen_range(1..=max_cols.max(1));
    let mut next = 0;
    let cells = (0..rows * cols)
        .map(|_| match rng.gen_range(0..4) {
            0 => MatrixCell::Zero,
            1 => MatrixCell::One,
            _ => {
                next += 1;
                MatrixCell::Free(next - 1)
            }
        })
        .collect();
    let m = MatrixModel::new(rows, cols, cells, ChainOrder::Lex, ChainOrder::Lex).expect("distinct cells");
    let mut model = Model::new();
    for r in 1..=rows {
        for c in 1..=cols {
            if let MatrixCell::Free(_) = m.cell(r, c) {
                model.add_var(format!("X{r}_{c}"), Domain::BOOL).expect("non-empty");
            }
        }
    }
    model.post(m).expect("valid matrix");
    model
}

/// Every engine must keep all oracle values and the chain pass must keep all
/// fixpoint values; the complete engine must equal the oracle.
fn random_suite(a: &PropagateArgs, trials: usize, json: bool) -> Result<Output, Failure> {
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let mut discrepancies = Vec::new();
    let mut weaker = 0;
    let mut undecided = 0;
    for trial in 0..trials {
        let model = random_matrix(&mut rng, a.max_rows, a.max_cols);
        let oracle = run_engine(&model, Engine::Oracle, a.budget, a.oracle_cap)?.outcome;
        let chain = chain_pass(&model);
        let double = propagate_fixpoint(&model);
        let full = complete(&model, a.budget);
        if !full.unknown.is_empty() {
            undecided += 1;
        }
        let mut fail = |what: &str| {
            discrepancies.push(json!({"trial": trial, "check": what, "model": ModelDoc::from_model(&model)}))
        };
        if !pointwise_subset(&oracle, &double) {
            fail("double pruned a supported value");
        }
        if !pointwise_subset(&double, &chain) {
            fail("chain pruned more than double");
        }
        if full.unknown.is_empty() && full.outcome != oracle {
            fail("complete differs from oracle");
        }
        if !pointwise_subset(&oracle, &full.outcome) {
            fail("complete pruned a supported value");
        }
        weaker += (double != oracle) as usize;
    }
    let code = if discrepancies.is_empty() {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    };
    let text = if json {
        to_json(&json!({
            "schema_version": SCHEMA_VERSION,
            "seed": a.seed,
            "trials": trials,
            "double_weaker_than_oracle": weaker,
            "complete_undecided": undecided,
            "discrepancies": discrepancies,
        }))
    } else {
        let mut text = format!(
            "seed: {}\ntrials: {trials}\ndouble weaker than oracle: {weaker}\ncomplete undecided: {undecided}\ndiscrepancies: {}\n",
            a.seed,
            discrepancies.len()
        );
        for d in &discrepancies {
            writeln!(
                text,
                "trial {}: {}",
                d["trial"],
                d["check"].as_str().unwrap_or_default()
            )
            .unwrap();
        }
        text
    };
    Ok(Output { text, code })
}

pub fn reduce(a: &ReduceArgs, json: bool) -> Result<Output, Failure> {
    if let Some(p) = a.gadget {
        let g = build_gadget1(1, p, a.padding).map_err(|e| Failure::usage(e.to_string()))?;
        let text = if a.ascii {
            g.grid.render()
        } else {
            to_json(&json!({
                "schema_version": SCHEMA_VERSION,
                "rows": g.grid.rows(),
                "cols": g.grid.cols(),
                "cells": grid_cells(&g.grid),
            }))
        };
        return Ok(Output::ok(text));
    }
    let path = a.formula.as_deref().expect("clap requires a formula without --gadget");
    let f = parse_formula(&read_input(path)?).map_err(|e| Failure::usage(e.to_string()))?;
    let inst = build_instance(&f).map_err(|e| Failure::usage(e.to_string()))?;
    let mut text = String::new();
    if a.ascii {
        text.push_str(&inst.grid.render());
    }
    if !a.verify {
        if a.emit_model {
            let mut model = Model::new();
            for v in 0..inst.plan.num_vars() {
                model.add_var(format!("x{v}"), Domain::BOOL).expect("non-empty");
            }
            model.post(inst.matrix.clone()).expect("valid matrix");
            text.push_str(&ModelDoc::from_model(&model).to_json());
            text.push('\n');
        } else if !a.ascii {
            text.push_str(&to_json(&instance_doc(&f, &inst)));
        }
        return Ok(Output::ok(text));
    }
    let r = verify_equivalence(&f, a.budget).map_err(|e| Failure::usage(e.to_string()))?;
    let doc = verify_doc(&f, &inst, &r);
    if json {
        text.push_str(&to_json(&doc));
    } else {
        let decoded = doc.decoded.as_ref().map_or("none".to_string(), |d| {
            d.iter().map(|&b| if b { '1' } else { '0' }).collect::<String>()
        });
        let verdict = match doc.agree {
            Some(true) => "verified",
            Some(false) => "MISMATCH",
            None => "inconclusive",
        };
        write!(
            text,
            "formula: n={} m={} models={}\nmatrix: {}x{} free={} status={} nodes={}\ndecoded: {decoded} (model: {})\n{verdict}\n",
            doc.n,
            doc.m,
            doc.model_count,
            doc.rows,
            doc.cols,
            doc.free_cells,
            doc.matrix_status,
            doc.nodes,
            doc.decoded_is_model
        )
        .unwrap();
    }
    let code = match doc.agree {
        Some(true) => EXIT_OK,
        Some(false) => EXIT_NEGATIVE,
        None => EXIT_BUDGET,
    };
    Ok(Output { text, code })
}
