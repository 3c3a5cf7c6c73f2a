//! Rule catalog and soundness verification.
//!
//! Rules live in `rules/*.rule` fixture files:
//!
//! ```text
//! NAME K2
//! LHS  (X(1,1;4) ; Z(1,1;$a)) * (Z(0,1;0) ; X(1,0;0))
//! RHS  (Z(1,1;$(-a)) ; X(1,1;4)) * (Z(0,1;$a) ; X(1,0;4))
//! PARAMS a:phase
//! ```
//!
//! Other directives: `LEGS n` (drop instances with a node of degree above
//! `n`), `SIDE polar(l1,a,l2,b) -> l,g` (bind `l`, `g` so that
//! `l·w^g = l1·w^a + l2·w^b`), and `#` comments.

pub mod template;

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

use crate::diagram::{parse, Diagram};
use crate::linalg::Matrix;
use crate::par;
use crate::ring::{Dyadic, PhaseK, RingElt};
use crate::semantics::{interpret, SemanticsError};
use template::Env;

/// The rule names of the fragment calculus, in catalog order.
pub const RULE_NAMES: [&str; 30] = [
    "S1", "S2", "S3", "H2", "H3", "H", "B1", "B2", "EU", "K2", "TR1", "TR2", "TR3", "TR4'", "TR5'", "TR6", "TR7", "TR8", "TR9", "TR10'", "TR12", "TR13",
    "TR14", "IV'", "L1", "AD", "L2", "L3", "L4", "L5",
];

/// Fixture file stem for a rule name (`'` is spelled `p`).
pub fn file_stem(name: &str) -> String {
    name.replace('\'', "p")
}

macro_rules! fixtures {
    ($($stem:literal),* $(,)?) => {
        &[$(($stem, include_str!(concat!("../../rules/", $stem, ".rule")))),*]
    };
}

const BUILTIN: &[(&str, &str)] = fixtures!(
    "S1", "S2", "S3", "H2", "H3", "H", "B1", "B2", "EU", "K2", "TR1", "TR2", "TR3", "TR4p", "TR5p", "TR6", "TR7", "TR8", "TR9", "TR10p", "TR12", "TR13",
    "TR14", "IVp", "L1", "AD", "L2", "L3", "L4", "L5",
);

const BUILTIN_DERIVED: &[(&str, &str)] =
    fixtures!("derived/TR4", "derived/TR10", "derived/TR11", "derived/TR5", "derived/EMPTY", "derived/ADD1", "derived/ADD2", "derived/ADDC",);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RuleError {
    #[error("fixture {file}: {msg}")]
    Fixture { file: String, msg: String },
    #[error("rule {rule}: parameter {param}: {msg}")]
    Domain { rule: String, param: String, msg: String },
    #[error("rule {rule}: side condition unsatisfiable for {detail}")]
    Unsatisfiable { rule: String, detail: String },
    #[error("rule {rule}: {side} does not parse: {msg}")]
    Template { rule: String, side: &'static str, msg: String },
    #[error("rule {rule}: sides disagree on arity ({lhs:?} vs {rhs:?})")]
    Arity { rule: String, lhs: (usize, usize), rhs: (usize, usize) },
    #[error("unknown rule `{0}`")]
    Unknown(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Domain {
    Phase,
    Lambda,
    Arity(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Param {
    pub name: String,
    pub domain: Domain,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SideCondition {
    /// `out_l · w^out_g = l1 · w^a + l2 · w^b`.
    Polar { l1: String, a: String, l2: String, b: String, out_l: String, out_g: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleSchema {
    pub name: String,
    pub lhs: String,
    pub rhs: String,
    pub params: Vec<Param>,
    pub side: Option<SideCondition>,
    pub leg_bound: Option<usize>,
}

pub type Bindings = BTreeMap<String, Dyadic>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleInstance {
    pub schema: String,
    pub flipped: bool,
    pub bindings: Bindings,
    pub lhs: Diagram,
    pub rhs: Diagram,
}

impl RuleInstance {
    pub fn label(&self) -> String {
        let flip = if self.flipped { " (flipped)" } else { "" };
        if self.bindings.is_empty() {
            format!("{}{flip}", self.schema)
        } else {
            let b: Vec<String> = self.bindings.iter().map(|(k, v)| format!("{k}={v}")).collect();
            format!("{}{flip} [{}]", self.schema, b.join(", "))
        }
    }

    /// The same rule read right to left.
    pub fn reversed(&self) -> RuleInstance {
        RuleInstance { lhs: self.rhs.clone(), rhs: self.lhs.clone(), ..self.clone() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub row: usize,
    pub col: usize,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub sound: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl Verdict {
    pub fn sound() -> Self {
        Verdict { sound: true, counterexample: None, error: None }
    }
}

/// First entry where two same-shaped matrices differ.
pub fn first_difference(a: &Matrix, b: &Matrix) -> Option<Counterexample> {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return Some(Counterexample { row: usize::MAX, col: usize::MAX, lhs: format!("{}x{}", a.rows(), a.cols()), rhs: format!("{}x{}", b.rows(), b.cols()) });
    }
    for r in 0..a.rows() {
        for c in 0..a.cols() {
            if a.get(r, c) != b.get(r, c) {
                return Some(Counterexample { row: r, col: c, lhs: a.get(r, c).to_string(), rhs: b.get(r, c).to_string() });
            }
        }
    }
    None
}

/// Soundness: exact equality of the two interpretations, scalars included.
pub fn verify_rule(r: &RuleInstance) -> Verdict {
    let eval = |d: &Diagram| -> Result<Matrix, SemanticsError> { interpret(d) };
    match (eval(&r.lhs), eval(&r.rhs)) {
        (Ok(a), Ok(b)) => match first_difference(&a, &b) {
            None => Verdict::sound(),
            Some(cx) => Verdict { sound: false, counterexample: Some(cx), error: None },
        },
        (Err(e), _) | (_, Err(e)) => Verdict { sound: false, counterexample: None, error: Some(e.to_string()) },
    }
}

impl RuleSchema {
    pub fn parse(file: &str, src: &str) -> Result<RuleSchema, RuleError> {
        let err = |msg: String| RuleError::Fixture { file: file.to_string(), msg };
        let mut name = None;
        let mut lhs = None;
        let mut rhs = None;
        let mut params = Vec::new();
        let mut side = None;
        let mut leg_bound = None;
        for line in src.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            let rest = rest.trim();
            match key {
                "NAME" => name = Some(rest.to_string()),
                "LHS" => lhs = Some(rest.to_string()),
                "RHS" => rhs = Some(rest.to_string()),
                "LEGS" => leg_bound = Some(rest.parse::<usize>().map_err(|_| err(format!("bad LEGS `{rest}`")))?),
                "PARAMS" => {
                    for p in rest.split_whitespace() {
                        let (n, d) = p.split_once(':').ok_or_else(|| err(format!("bad parameter `{p}`")))?;
                        let domain = match d {
                            "phase" => Domain::Phase,
                            "lambda" => Domain::Lambda,
                            _ if d.starts_with("arity(") && d.ends_with(')') => {
                                let r = &d[6..d.len() - 1];
                                let (lo, hi) = r.split_once("..").ok_or_else(|| err(format!("bad range `{r}`")))?;
                                let lo = lo.parse().map_err(|_| err(format!("bad range `{r}`")))?;
                                let hi = hi.parse().map_err(|_| err(format!("bad range `{r}`")))?;
                                Domain::Arity(lo, hi)
                            }
                            _ => return Err(err(format!("unknown domain `{d}`"))),
                        };
                        params.push(Param { name: n.to_string(), domain });
                    }
                }
                "SIDE" => {
                    let (call, out) = rest.split_once("->").ok_or_else(|| err("SIDE needs `->`".into()))?;
                    let call = call.trim();
                    let args = call.strip_prefix("polar(").and_then(|s| s.strip_suffix(')')).ok_or_else(|| err(format!("unknown side condition `{call}`")))?;
                    let a: Vec<String> = args.split(',').map(|s| s.trim().to_string()).collect();
                    let o: Vec<String> = out.split(',').map(|s| s.trim().to_string()).collect();
                    if a.len() != 4 || o.len() != 2 {
                        return Err(err("polar takes four arguments and binds two".into()));
                    }
                    side = Some(SideCondition::Polar {
                        l1: a[0].clone(),
                        a: a[1].clone(),
                        l2: a[2].clone(),
                        b: a[3].clone(),
                        out_l: o[0].clone(),
                        out_g: o[1].clone(),
                    });
                }
                _ => return Err(err(format!("unknown directive `{key}`"))),
            }
        }
        let schema = RuleSchema {
            name: name.ok_or_else(|| err("missing NAME".into()))?,
            lhs: lhs.ok_or_else(|| err("missing LHS".into()))?,
            rhs: rhs.ok_or_else(|| err("missing RHS".into()))?,
            params,
            side,
            leg_bound,
        };
        schema.check_params().map_err(err)?;
        Ok(schema)
    }

    /// Every `$name` used by a side is a parameter or a side-condition output.
    fn check_params(&self) -> Result<(), String> {
        let mut known: Vec<&str> = self.params.iter().map(|p| p.name.as_str()).collect();
        if let Some(SideCondition::Polar { out_l, out_g, .. }) = &self.side {
            known.push(out_l);
            known.push(out_g);
        }
        for text in [&self.lhs, &self.rhs] {
            for word in template_words(text) {
                if !known.contains(&word.as_str()) && !is_atom_name(&word) {
                    return Err(format!("`{word}` is not a declared parameter"));
                }
            }
        }
        Ok(())
    }

    /// The values each parameter ranges over under a sampling plan.
    fn domain_values(&self, p: &Param, plan: &Plan) -> Vec<Dyadic> {
        match &p.domain {
            Domain::Phase => plan.phases.iter().map(|k| Dyadic::from_int(i64::from(k.k()))).collect(),
            Domain::Lambda => plan.lambdas.clone(),
            Domain::Arity(lo, hi) => (*lo..=*hi).map(|n| Dyadic::from_int(n as i64)).collect(),
        }
    }

    /// All parameter assignments under a plan, in lexicographic order.
    pub fn assignments(&self, plan: &Plan) -> Vec<Bindings> {
        let mut out = vec![Bindings::new()];
        for p in &self.params {
            let vals = self.domain_values(p, plan);
            out = out
                .into_iter()
                .flat_map(|b| {
                    vals.iter().map(move |v| {
                        let mut b2 = b.clone();
                        b2.insert(p.name.clone(), v.clone());
                        b2
                    })
                })
                .collect();
        }
        out
    }

    /// Binds parameters, resolves the side condition, and builds both sides.
    pub fn instantiate(&self, bindings: &Bindings, flipped: bool) -> Result<RuleInstance, RuleError> {
        let dom = |param: &str, msg: String| RuleError::Domain { rule: self.name.clone(), param: param.into(), msg };
        let mut env: Env = Env::new();
        for p in &self.params {
            let v = bindings.get(&p.name).ok_or_else(|| dom(&p.name, "unbound".into()))?;
            match p.domain {
                Domain::Phase if !v.is_integer() => return Err(dom(&p.name, format!("phase index {v} is not an integer"))),
                Domain::Lambda if v.is_negative() => return Err(dom(&p.name, format!("lambda {v} is negative"))),
                Domain::Arity(lo, hi) => {
                    let n = v.to_i64().filter(|n| *n >= lo as i64 && *n <= hi as i64);
                    if n.is_none() {
                        return Err(dom(&p.name, format!("arity {v} outside {lo}..{hi}")));
                    }
                }
                _ => {}
            }
            env.insert(p.name.clone(), v.clone());
        }
        let mut shown = bindings.clone();
        if let Some(SideCondition::Polar { l1, a, l2, b, out_l, out_g }) = &self.side {
            let get = |n: &str| env.get(n).cloned().ok_or_else(|| dom(n, "unbound".into()));
            let phase = |d: Dyadic| PhaseK::new(d.to_i64().unwrap_or(0));
            let sum = RingElt::from_dyadic(get(l1)?).mul_phase(phase(get(a)?)) + RingElt::from_dyadic(get(l2)?).mul_phase(phase(get(b)?));
            let (l, g) = sum.polar_in_fragment().ok_or_else(|| RuleError::Unsatisfiable {
                rule: self.name.clone(),
                detail: format!("{l1}={}, {a}={}, {l2}={}, {b}={}", env[l1], env[a], env[l2], env[b]),
            })?;
            let g = Dyadic::from_int(i64::from(g.k()));
            env.insert(out_l.clone(), l.clone());
            env.insert(out_g.clone(), g.clone());
            shown.insert(out_l.clone(), l);
            shown.insert(out_g.clone(), g);
        }
        let build = |text: &str, side: &'static str| -> Result<Diagram, RuleError> {
            let t = template::substitute(text, &env).map_err(|msg| RuleError::Template { rule: self.name.clone(), side, msg })?;
            parse(&t).map_err(|e| RuleError::Template { rule: self.name.clone(), side, msg: format!("`{t}`: {e}") })
        };
        let mut lhs = build(&self.lhs, "LHS")?;
        let mut rhs = build(&self.rhs, "RHS")?;
        if (lhs.n_inputs, lhs.n_outputs) != (rhs.n_inputs, rhs.n_outputs) {
            return Err(RuleError::Arity { rule: self.name.clone(), lhs: (lhs.n_inputs, lhs.n_outputs), rhs: (rhs.n_inputs, rhs.n_outputs) });
        }
        if flipped {
            lhs = lhs.flip_vertical();
            rhs = rhs.flip_vertical();
        }
        Ok(RuleInstance { schema: self.name.clone(), flipped, bindings: shown, lhs, rhs })
    }

    /// Whether an instance respects the schema's leg bound.
    pub fn within_leg_bound(&self, r: &RuleInstance) -> bool {
        match self.leg_bound {
            None => true,
            Some(b) => r.lhs.nodes.values().chain(r.rhs.nodes.values()).all(|n| n.degree() <= b),
        }
    }

    /// Every instance under a plan (both orientations), dropping those
    /// outside the leg bound or with an unsatisfiable side condition.
    pub fn instances(&self, plan: &Plan) -> (Vec<RuleInstance>, usize) {
        let mut out = Vec::new();
        let mut skipped = 0;
        for b in self.assignments(plan) {
            for flipped in [false, true] {
                if flipped && !plan.flips {
                    continue;
                }
                match self.instantiate(&b, flipped) {
                    Ok(r) if self.within_leg_bound(&r) => out.push(r),
                    Ok(_) => {}
                    Err(RuleError::Unsatisfiable { .. }) => skipped += 1,
                    Err(e) => panic!("{e}"),
                }
            }
        }
        (out, skipped)
    }
}

/// Identifiers referenced through `$` in a template.
fn template_words(text: &str) -> Vec<String> {
    let chars: Vec<char> = text.chars().collect();
    let ident = |from: usize| {
        let mut j = from;
        while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_') {
            j += 1;
        }
        (chars[from..j].iter().collect::<String>(), j)
    };
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        if chars[i] != '$' {
            i += 1;
            continue;
        }
        i += 1;
        match chars.get(i) {
            Some(&open @ ('(' | '[')) => {
                let close = if open == '(' { ')' } else { ']' };
                let mut depth = 0;
                while i < chars.len() {
                    if chars[i] == open {
                        depth += 1;
                    } else if chars[i] == close {
                        depth -= 1;
                        if depth == 0 {
                            break;
                        }
                    } else if chars[i].is_ascii_alphabetic() && !chars[i - 1].is_ascii_alphanumeric() {
                        let (w, j) = ident(i);
                        out.push(w);
                        i = j;
                        continue;
                    }
                    i += 1;
                }
            }
            _ => {
                let (w, j) = ident(i);
                out.push(w);
                i = j;
            }
        }
    }
    out
}

fn is_atom_name(w: &str) -> bool {
    matches!(
        w,
        "Z" | "X"
            | "Zbox"
            | "Xbox"
            | "H"
            | "T"
            | "Tinv"
            | "Tt"
            | "Tinvt"
            | "L"
            | "id"
            | "swap"
            | "cap"
            | "cup"
            | "empty"
            | "wcopy"
            | "wadd"
            | "perm"
            | "W"
            | "bpi"
            | "cross"
            | "wnode"
    )
}

/// A collection of rule schemas.
#[derive(Debug, Clone)]
pub struct Catalog {
    pub rules: Vec<RuleSchema>,
    pub derived: Vec<RuleSchema>,
}

impl Catalog {
    /// The fixtures compiled into the library.
    pub fn builtin() -> Catalog {
        let load = |set: &[(&str, &str)]| -> Vec<RuleSchema> { set.iter().map(|(f, s)| RuleSchema::parse(f, s).unwrap_or_else(|e| panic!("{e}"))).collect() };
        Catalog { rules: load(BUILTIN), derived: load(BUILTIN_DERIVED) }
    }

    /// Fixtures read from a directory with the same layout as the built-in
    /// set (`<dir>/<stem>.rule`, `<dir>/derived/<stem>.rule`).
    pub fn from_dir(dir: &Path) -> Result<Catalog, RuleError> {
        let read = |stem: &str| -> Result<RuleSchema, RuleError> {
            let path = dir.join(format!("{stem}.rule"));
            let src = std::fs::read_to_string(&path).map_err(|e| RuleError::Fixture { file: path.display().to_string(), msg: e.to_string() })?;
            RuleSchema::parse(&path.display().to_string(), &src)
        };
        let rules = BUILTIN.iter().map(|(s, _)| read(s)).collect::<Result<_, _>>()?;
        let derived = BUILTIN_DERIVED.iter().map(|(s, _)| read(s)).collect::<Result<_, _>>()?;
        Ok(Catalog { rules, derived })
    }

    pub fn get(&self, name: &str) -> Option<&RuleSchema> {
        self.rules.iter().find(|r| r.name == name)
    }

    pub fn get_derived(&self, name: &str) -> Option<&RuleSchema> {
        self.derived.iter().find(|r| r.name == name)
    }

    pub fn names(&self) -> Vec<&str> {
        self.rules.iter().map(|r| r.name.as_str()).collect()
    }
}

/// Which parameter values a sweep covers.
#[derive(Debug, Clone)]
pub struct Plan {
    pub phases: Vec<PhaseK>,
    pub lambdas: Vec<Dyadic>,
    pub flips: bool,
    pub only: Option<String>,
}

impl Default for Plan {
    fn default() -> Self {
        Plan { phases: PhaseK::all().collect(), lambdas: default_lambdas(), flips: true, only: None }
    }
}

pub fn default_lambdas() -> Vec<Dyadic> {
    ["0", "1/2", "1", "3/2", "2", "5/4", "7/8"].iter().map(|s| s.parse().unwrap()).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct Failure {
    pub instance: String,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, Serialize)]
pub struct RuleReport {
    pub rule: String,
    pub instances: usize,
    pub sound: usize,
    pub skipped: usize,
    pub failures: Vec<Failure>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub rules: Vec<RuleReport>,
    pub instances: usize,
    pub failures: usize,
    pub skipped: usize,
    pub passed: bool,
    #[serde(skip)]
    pub elapsed_ms: u128,
}

/// Checks every instance of every schema under `plan`.
pub fn verify_all(catalog: &Catalog, plan: &Plan) -> Report {
    let start = Instant::now();
    let schemas: Vec<&RuleSchema> = catalog.rules.iter().filter(|r| plan.only.as_deref().is_none_or(|n| n == r.name)).collect();
    let mut jobs: Vec<(usize, RuleInstance)> = Vec::new();
    let mut skipped = vec![0usize; schemas.len()];
    for (k, s) in schemas.iter().enumerate() {
        let (inst, sk) = s.instances(plan);
        skipped[k] = sk;
        jobs.extend(inst.into_iter().map(|r| (k, r)));
    }
    let verdicts = par::map(&jobs, |(_, r)| verify_rule(r));
    let mut rules: Vec<RuleReport> =
        schemas.iter().zip(&skipped).map(|(s, &sk)| RuleReport { rule: s.name.clone(), instances: 0, sound: 0, skipped: sk, failures: Vec::new() }).collect();
    for ((k, r), v) in jobs.iter().zip(verdicts) {
        let rep = &mut rules[*k];
        rep.instances += 1;
        if v.sound {
            rep.sound += 1;
        } else {
            rep.failures.push(Failure { instance: r.label(), verdict: v });
        }
    }
    let instances = rules.iter().map(|r| r.instances).sum();
    let failures = rules.iter().map(|r| r.failures.len()).sum();
    Report {
        instances,
        failures,
        skipped: rules.iter().map(|r| r.skipped).sum(),
        passed: failures == 0 && instances > 0,
        rules,
        elapsed_ms: start.elapsed().as_millis(),
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:<8} {:>9} {:>7} {:>8} {:>7}", "rule", "instances", "sound", "skipped", "failed")?;
        for r in &self.rules {
            writeln!(f, "{:<8} {:>9} {:>7} {:>8} {:>7}", r.rule, r.instances, r.sound, r.skipped, r.failures.len())?;
            for fl in r.failures.iter().take(3) {
                writeln!(f, "    {}: {:?}", fl.instance, fl.verdict)?;
            }
        }
        write!(f, "{} instances, {} failures, {} skipped: {}", self.instances, self.failures, self.skipped, if self.passed { "PASS" } else { "FAIL" })
    }
}

impl RuleSchema {
    /// The schema written back in fixture syntax.
    pub fn to_fixture(&self) -> String {
        let mut s = format!("NAME {}\nLHS {}\nRHS {}\n", self.name, self.lhs, self.rhs);
        if !self.params.is_empty() {
            let ps: Vec<String> = self
                .params
                .iter()
                .map(|p| match &p.domain {
                    Domain::Phase => format!("{}:phase", p.name),
                    Domain::Lambda => format!("{}:lambda", p.name),
                    Domain::Arity(lo, hi) => format!("{}:arity({lo}..{hi})", p.name),
                })
                .collect();
            s.push_str(&format!("PARAMS {}\n", ps.join(" ")));
        }
        if let Some(b) = self.leg_bound {
            s.push_str(&format!("LEGS {b}\n"));
        }
        if let Some(SideCondition::Polar { l1, a, l2, b, out_l, out_g }) = &self.side {
            s.push_str(&format!("SIDE polar({l1},{a},{l2},{b}) -> {out_l},{out_g}\n"));
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_has_thirty_rules() {
        let c = Catalog::builtin();
        assert_eq!(c.rules.len(), 30);
        assert_eq!(c.names(), RULE_NAMES.to_vec());
        assert!(c.get("TR10'").is_some());
        assert!(c.get("TR10").is_none());
        assert!(c.get("IV'").is_some());
        assert!(c.get("IV").is_none());
    }

    #[test]
    fn fixture_parse_errors() {
        assert!(RuleSchema::parse("x", "LHS H\nRHS H").is_err());
        assert!(RuleSchema::parse("x", "NAME X\nLHS Z(1,1;$q)\nRHS id").is_err());
        assert!(RuleSchema::parse("x", "NAME X\nLHS Z(1,1;$a)\nRHS Z(1,1;$(a+0))\nPARAMS a:phase").is_ok());
    }

    fn bind(pairs: &[(&str, &str)]) -> Bindings {
        pairs.iter().map(|(k, v)| (k.to_string(), v.parse().unwrap())).collect()
    }

    #[test]
    fn addition_side_condition() {
        let c = Catalog::builtin();
        let ad = c.get("AD").unwrap();
        let r = ad.instantiate(&bind(&[("l1", "1"), ("a", "0"), ("l2", "1"), ("b", "4")]), false).unwrap();
        assert_eq!(r.bindings["l"], Dyadic::from_int(0));
        assert_eq!(r.bindings["g"], Dyadic::from_int(0));
        let e = ad.instantiate(&bind(&[("l1", "1"), ("a", "0"), ("l2", "1"), ("b", "2")]), false);
        assert!(matches!(e, Err(RuleError::Unsatisfiable { .. })));
        let r = ad.instantiate(&bind(&[("l1", "1"), ("a", "1"), ("l2", "1"), ("b", "1")]), false).unwrap();
        assert_eq!(r.bindings["l"], Dyadic::from_int(2));
        assert_eq!(r.bindings["g"], Dyadic::from_int(1));
    }

    #[test]
    fn spot_checks() {
        let c = Catalog::builtin();
        let k2 = c.get("K2").unwrap().instantiate(&bind(&[("a", "1")]), false).unwrap();
        assert!(verify_rule(&k2).sound);
        let tr7 = c.get("TR7").unwrap().instantiate(&Bindings::new(), false).unwrap();
        assert!(verify_rule(&tr7).sound);
        // the triangle replaced by a plain wire
        let mutated = RuleSchema::parse("m", &c.get("TR7").unwrap().to_fixture().replace("T ", "id ")).unwrap();
        let v = verify_rule(&mutated.instantiate(&Bindings::new(), false).unwrap());
        assert!(!v.sound);
        assert!(v.counterexample.is_some());
    }

    #[test]
    fn lambda_domain_rejects_negative() {
        let c = Catalog::builtin();
        let e = c.get("L4").unwrap().instantiate(&bind(&[("l1", "-1"), ("l2", "1")]), false);
        assert!(matches!(e, Err(RuleError::Domain { .. })));
    }
}
