//! Replayable derivations.
//!
//! A script names a start diagram, a list of rule applications and the
//! diagram the chain must end on:
//!
//! ```json
//! {"name": "TR10", "derives": "TR10",
//!  "start": "X(0,1;4) ; Z(1,2;0) ; (T * T) ; Z(2,1;0)",
//!  "steps": [{"rule": "TR12", "dir": "lr"}, {"rule": "TR3", "dir": "lr"}],
//!  "expected_end": "Z(0,1;0) * (Z(0,1;0) ; X(1,0;0))",
//!  "equality": "iso"}
//! ```
//!
//! Steps may carry `anchors` (host node ids that must lie in the matched
//! region), `via` (host node ids beyond the pattern's boundary wires, in
//! boundary order),
//! `params` (bindings for the rule's parameters) and `flip`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{apply, find_matches, Match};
use crate::diagram::{iso_equal, parse, Diagram, NodeId, Port};
use crate::rules::{Bindings, Catalog, Plan, RuleError, RuleInstance, RuleSchema};
use crate::semantics::interpret;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Dir {
    Lr,
    Rl,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Equality {
    #[default]
    Iso,
    Semantic,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Step {
    pub rule: String,
    pub dir: Dir,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub anchors: Vec<NodeId>,
    /// Host nodes beyond the pattern's boundary wires, in boundary order
    /// (inputs first); may be shorter than the boundary.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub via: Vec<NodeId>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flip: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Script {
    pub name: String,
    /// Derived rule this script establishes, if any.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub derives: Option<String>,
    pub start: String,
    pub steps: Vec<Step>,
    pub expected_end: String,
    #[serde(default)]
    pub equality: Equality,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScriptError {
    #[error("script is not valid JSON: {0}")]
    Json(String),
    #[error("cannot parse {what}: {msg}")]
    Parse { what: String, msg: String },
    #[error("step {step}: unknown rule `{rule}`")]
    UnknownRule { step: usize, rule: String },
    #[error("step {step}: rule `{rule}` is derived and its own script has not passed")]
    Locked { step: usize, rule: String },
    #[error("step {step}: {msg}")]
    Params { step: usize, msg: String },
    #[error("step {step}: no match for {rule}")]
    NoMatch { step: usize, rule: String },
    #[error("step {step}: {count} distinct matches for {rule}; add anchors")]
    Ambiguous { step: usize, rule: String, count: usize },
    #[error("step {step}: interpretation changed after {rule}")]
    Drift { step: usize, rule: String },
    #[error("step {step}: {msg}")]
    Semantics { step: usize, msg: String },
    #[error("final diagram `{got}` does not match `{want}`")]
    EndMismatch { got: String, want: String },
}

#[derive(Debug, Clone, Serialize)]
pub struct StepTrace {
    pub index: usize,
    pub rule: String,
    pub dir: Dir,
    pub region: Vec<NodeId>,
    pub result: String,
    pub nodes: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Trace {
    pub name: String,
    pub start: String,
    pub steps: Vec<StepTrace>,
    pub end: String,
}

impl fmt::Display for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: {}", self.name, self.start)?;
        for s in &self.steps {
            let dir = if s.dir == Dir::Lr { "->" } else { "<-" };
            writeln!(f, "  {:>2}. {dir} {:<28} at {:?}", s.index, s.rule, s.region)?;
            writeln!(f, "      = {}", s.result)?;
        }
        write!(f, "  ok: {}", self.end)
    }
}

impl Script {
    pub fn from_json(src: &str) -> Result<Script, ScriptError> {
        serde_json::from_str(src).map_err(|e| ScriptError::Json(e.to_string()))
    }
}

fn parse_diagram(what: &str, text: &str) -> Result<Diagram, ScriptError> {
    parse(text).map_err(|e| ScriptError::Parse { what: what.into(), msg: e.to_string() })
}

/// Looks a rule up among the axioms, then among derived rules already proved.
fn lookup<'a>(catalog: &'a Catalog, unlocked: &BTreeSet<String>, step: usize, name: &str) -> Result<&'a RuleSchema, ScriptError> {
    if let Some(r) = catalog.get(name) {
        return Ok(r);
    }
    match catalog.get_derived(name) {
        Some(r) if unlocked.contains(name) => Ok(r),
        Some(_) => Err(ScriptError::Locked { step, rule: name.into() }),
        None => Err(ScriptError::UnknownRule { step, rule: name.into() }),
    }
}

/// Rule instances a step may use: given bindings, with the rest ranging
/// over the default plan.
fn candidates(schema: &RuleSchema, step: &Step, index: usize) -> Result<Vec<RuleInstance>, ScriptError> {
    let mut fixed = Bindings::new();
    for (k, v) in &step.params {
        if !schema.params.iter().any(|p| &p.name == k) {
            return Err(ScriptError::Params { step: index, msg: format!("{} has no parameter `{k}`", schema.name) });
        }
        let d = v.parse().map_err(|_| ScriptError::Params { step: index, msg: format!("bad value `{v}` for `{k}`") })?;
        fixed.insert(k.clone(), d);
    }
    let flips: &[bool] = match step.flip {
        Some(f) => {
            if f {
                &[true]
            } else {
                &[false]
            }
        }
        None => &[false, true],
    };
    let mut open = schema.clone();
    open.params.retain(|p| !fixed.contains_key(&p.name));
    let mut out = Vec::new();
    for mut b in open.assignments(&Plan::default()) {
        b.extend(fixed.clone());
        for &flipped in flips {
            match schema.instantiate(&b, flipped) {
                Ok(r) => out.push(if step.dir == Dir::Rl { r.reversed() } else { r }),
                Err(RuleError::Unsatisfiable { .. }) => {}
                Err(e) => return Err(ScriptError::Params { step: index, msg: e.to_string() }),
            }
        }
    }
    Ok(out)
}

/// Every distinct result (up to isomorphism) of one application of a step,
/// with the instance label.
pub fn apply_all(host: &Diagram, catalog: &Catalog, unlocked: &BTreeSet<String>, step: &Step) -> Result<Vec<(String, Diagram)>, ScriptError> {
    let schema = lookup(catalog, unlocked, 1, &step.rule)?;
    Ok(distinct_results(host, schema, step, 1)?.into_iter().map(|(d, inst, _)| (inst.label(), d)).collect())
}

fn admits(step: &Step, m: &Match) -> bool {
    let image = m.image();
    step.anchors.iter().all(|a| image.contains(a))
        && step.via.len() <= m.frontier.len()
        && step.via.iter().zip(&m.frontier).all(|(v, p)| matches!(p, Port::Node(id, _) if id == v))
}

fn distinct_results(host: &Diagram, schema: &RuleSchema, step: &Step, index: usize) -> Result<Vec<(Diagram, RuleInstance, Vec<NodeId>)>, ScriptError> {
    let mut results: Vec<(Diagram, RuleInstance, Vec<NodeId>)> = Vec::new();
    for inst in candidates(schema, step, index)? {
        for m in find_matches(&inst, host) {
            if !admits(step, &m) {
                continue;
            }
            let image = m.image();
            let out = apply(host, &inst, &m);
            if !results.iter().any(|(d, ..)| iso_equal(d, &out)) {
                results.push((out, inst.clone(), image.into_iter().collect()));
            }
        }
    }
    Ok(results)
}

/// Applies one step, insisting that every admissible match gives the same
/// diagram up to isomorphism.
pub fn apply_step(host: &Diagram, schema: &RuleSchema, step: &Step, index: usize) -> Result<(Diagram, RuleInstance, Vec<NodeId>), ScriptError> {
    let mut results = distinct_results(host, schema, step, index)?;
    match results.len() {
        0 => Err(ScriptError::NoMatch { step: index, rule: step.rule.clone() }),
        1 => Ok(results.pop().unwrap()),
        n => Err(ScriptError::Ambiguous { step: index, rule: step.rule.clone(), count: n }),
    }
}

pub fn run_script(script: &Script, catalog: &Catalog, unlocked: &BTreeSet<String>) -> Result<Trace, ScriptError> {
    let mut d = parse_diagram("start", &script.start)?;
    let want = parse_diagram("expected_end", &script.expected_end)?;
    let mut sem = interpret(&d).map_err(|e| ScriptError::Semantics { step: 0, msg: e.to_string() })?;
    let mut steps = Vec::new();
    for (i, step) in script.steps.iter().enumerate() {
        let index = i + 1;
        let schema = lookup(catalog, unlocked, index, &step.rule)?;
        let (next, inst, region) = apply_step(&d, schema, step, index)?;
        let next_sem = interpret(&next).map_err(|e| ScriptError::Semantics { step: index, msg: e.to_string() })?;
        if next_sem != sem {
            return Err(ScriptError::Drift { step: index, rule: inst.label() });
        }
        sem = next_sem;
        steps.push(StepTrace { index, rule: inst.label(), dir: step.dir, region, result: next.to_string(), nodes: next.node_count() });
        d = next;
    }
    let ok = match script.equality {
        Equality::Iso => iso_equal(&d, &want),
        Equality::Semantic => interpret(&want).is_ok_and(|w| w == sem),
    };
    if !ok {
        return Err(ScriptError::EndMismatch { got: d.to_string(), want: script.expected_end.clone() });
    }
    Ok(Trace { name: script.name.clone(), start: script.start.clone(), steps, end: d.to_string() })
}

/// Runs scripts in order; a derived rule becomes usable once the script
/// that derives it has passed.
pub fn run_all(scripts: &[Script], catalog: &Catalog) -> Vec<(String, Result<Trace, ScriptError>)> {
    let mut unlocked = BTreeSet::new();
    let mut out = Vec::new();
    for s in scripts {
        let r = run_script(s, catalog, &unlocked);
        if let (Ok(_), Some(name)) = (&r, &s.derives) {
            unlocked.insert(name.clone());
        }
        out.push((s.name.clone(), r));
    }
    out
}

/// Every match of a step's rule, across the instances it admits. Derived
/// rules are all available here.
pub fn matches_for_step(host: &Diagram, catalog: &Catalog, step: &Step) -> Result<Vec<(RuleInstance, super::Match)>, ScriptError> {
    let all: BTreeSet<String> = catalog.derived.iter().map(|r| r.name.clone()).collect();
    let schema = lookup(catalog, &all, 1, &step.rule)?;
    let mut out = Vec::new();
    for inst in candidates(schema, step, 1)? {
        for m in find_matches(&inst, host) {
            if admits(step, &m) {
                out.push((inst.clone(), m));
            }
        }
    }
    Ok(out)
}

/// Applies a single step outside a script.
pub fn rewrite_once(host: &Diagram, catalog: &Catalog, step: &Step) -> Result<Diagram, ScriptError> {
    let all: BTreeSet<String> = catalog.derived.iter().map(|r| r.name.clone()).collect();
    let schema = lookup(catalog, &all, 1, &step.rule)?;
    let (d, ..) = apply_step(host, schema, step, 1)?;
    Ok(d)
}

/// Derived rules whose bundled scripts pass.
pub fn proved_derived(catalog: &Catalog) -> BTreeSet<String> {
    let scripts = builtin_scripts();
    run_all(&scripts, catalog).into_iter().zip(&scripts).filter_map(|((_, r), s)| r.ok().and(s.derives.clone())).collect()
}

macro_rules! scripts {
    ($($stem:literal),* $(,)?) => {
        &[$(include_str!(concat!("../../scripts/", $stem, ".json"))),*]
    };
}

const BUILTIN: &[&str] = scripts!("TR4", "TR10", "TR11", "TR5", "EMPTY", "ADD1", "ADD2", "ADDC");

/// The bundled derivations, in dependency order.
pub fn builtin_scripts() -> Vec<Script> {
    BUILTIN.iter().map(|s| Script::from_json(s).unwrap_or_else(|e| panic!("{e}"))).collect()
}
