//! Named constructions and identity checks, runnable as one suite, plus the
//! seeded random corpus used by the translation and property tests.

use std::fmt;

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::diagram::{parse, Calculus, Diagram, NodeKind};
use crate::gadgets;
use crate::linalg::{ring_inverse, Matrix};
use crate::par;
use crate::ring::{Dyadic, PhaseK, RingElt};
use crate::rules::{first_difference, Counterexample};
use crate::semantics::interpret;
use crate::translate::zw_to_zx;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Proportional,
    Target,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub mode: Mode,
    pub status: Status,
    /// For proportional checks, `rhs = scalar · lhs`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scalar: Option<String>,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

impl CheckResult {
    fn skipped(id: String, mode: Mode, why: &str) -> Self {
        CheckResult { id, mode, status: Status::Skipped, scalar: None, detail: why.into(), counterexample: None }
    }

    fn error(id: String, mode: Mode, msg: String) -> Self {
        CheckResult { id, mode, status: Status::Fail, scalar: None, detail: msg, counterexample: None }
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

fn eval(d: &Diagram) -> Result<Matrix, String> {
    interpret(d).map_err(|e| e.to_string())
}

fn show(m: &Matrix) -> String {
    m.to_string_rows().iter().map(|r| format!("[{}]", r.join(", "))).collect::<Vec<_>>().join(" ")
}

/// Exact equality of two interpretations.
pub fn exact(id: impl Into<String>, lhs: &Diagram, rhs: &Diagram) -> CheckResult {
    let id = id.into();
    match (eval(lhs), eval(rhs)) {
        (Ok(a), Ok(b)) => target_result(id, Mode::Exact, &a, &b),
        (Err(e), _) | (_, Err(e)) => CheckResult::error(id, Mode::Exact, e),
    }
}

/// Exact equality of an interpretation with a given matrix.
pub fn matches_target(id: impl Into<String>, d: &Diagram, target: &Matrix) -> CheckResult {
    let id = id.into();
    match eval(d) {
        Ok(a) => target_result(id, Mode::Target, &a, target),
        Err(e) => CheckResult::error(id, Mode::Target, e),
    }
}

fn target_result(id: String, mode: Mode, a: &Matrix, b: &Matrix) -> CheckResult {
    match first_difference(a, b) {
        None => CheckResult { id, mode, status: Status::Pass, scalar: None, detail: String::new(), counterexample: None },
        Some(cx) => {
            CheckResult { id, mode, status: Status::Fail, scalar: None, detail: format!("lhs {} / rhs {}", show(a), show(b)), counterexample: Some(cx) }
        }
    }
}

/// Proportionality up to a nonzero scalar; records `s` with `rhs = s·lhs`
/// when it lies in the ring.
pub fn proportional(id: impl Into<String>, lhs: &Matrix, rhs: &Matrix) -> CheckResult {
    let id = id.into();
    let fail = |detail: String| CheckResult { id: id.clone(), mode: Mode::Proportional, status: Status::Fail, scalar: None, detail, counterexample: None };
    match Matrix::proportional(lhs, rhs) {
        Ok(Some(_)) => {
            let scalar = Matrix::scalar_multiple(lhs, rhs).map(|s| s.to_string());
            CheckResult { id, mode: Mode::Proportional, status: Status::Pass, scalar, detail: String::new(), counterexample: None }
        }
        Ok(None) => fail(format!("not proportional: lhs {} / rhs {}", show(lhs), show(rhs))),
        Err(e) => fail(e.to_string()),
    }
}

fn proportional_diagrams(id: impl Into<String>, lhs: &Diagram, rhs: &Diagram) -> CheckResult {
    let id = id.into();
    match (eval(lhs), eval(rhs)) {
        (Ok(a), Ok(b)) => proportional(id, &a, &b),
        (Err(e), _) | (_, Err(e)) => CheckResult::error(id, Mode::Proportional, e),
    }
}

fn zx(src: &str) -> Diagram {
    parse(src).expect("fixed fixture parses")
}

fn seq(parts: &[Diagram]) -> Diagram {
    Diagram::compose_all(parts).expect("fixture arities agree")
}

fn par(parts: &[Diagram]) -> Diagram {
    Diagram::tensor_all(Calculus::Zx, parts).expect("same calculus")
}

fn id(n: usize) -> Diagram {
    Diagram::identity(Calculus::Zx, n)
}

fn zbox(n: usize, m: usize, a: &RingElt) -> Diagram {
    Diagram::node(NodeKind::GreenBox(a.clone()), n, m)
}

fn xbox(n: usize, m: usize, a: &RingElt) -> Diagram {
    Diagram::node(NodeKind::RedBox(a.clone()), n, m)
}

fn hs(n: usize) -> Diagram {
    par(&vec![zx("H"); n])
}

// ---------------------------------------------------------------- Toffoli

/// Three-wire Toffoli: both controls are copied, their AND (two triangles
/// into a green node, then an inverse triangle) is XORed onto the target.
pub const TOFFOLI: &str = "(Z(1,2;0) * Z(1,2;0) * id) ; (id * swap * id * id) ; \
     (id * id * ((T * T) ; Z(2,1;0) ; Tinv) * id) ; (id * id * X(2,1;0))";

/// `⟦TOFFOLI⟧ = TOFFOLI_SCALAR · Toffoli`; the XOR node carries 1/√2.
pub fn toffoli_scalar() -> RingElt {
    RingElt::inv_sqrt2()
}

pub fn toffoli_matrix() -> Matrix {
    Matrix::from_fn(8, 8, |r, c| {
        let t = if c >= 6 { c ^ 1 } else { c };
        if r == t {
            RingElt::one()
        } else {
            RingElt::zero()
        }
    })
}

pub fn toffoli_check() -> CheckResult {
    let mut r = match eval(&zx(TOFFOLI)) {
        Ok(m) => proportional("toffoli", &toffoli_matrix(), &m),
        Err(e) => return CheckResult::error("toffoli".into(), Mode::Proportional, e),
    };
    if r.status == Status::Pass && r.scalar.as_deref() != Some(toffoli_scalar().to_string().as_str()) {
        r.status = Status::Fail;
        r.detail = format!("scalar differs from the recorded {}", toffoli_scalar());
    }
    r
}

// ------------------------------------------------------- supplementarity

/// Both sides of the merge of `n` branches whose phases `α + 2πj/n` split
/// the circle evenly. Each branch is a triangle into a green phase effect,
/// worth `1 + x·e^{iθ}` on input `x`; the product collapses to one branch
/// with phase `nα + (n+1)π`, attached by `n` parallel wires.
pub fn supplementarity_sides(n: usize, k: PhaseK) -> Option<(Diagram, Diagram)> {
    if n == 0 || 8 % n != 0 {
        return None;
    }
    let step = 8 / n as i64;
    let branches: Vec<Diagram> = (0..n as i64).map(|j| seq(&[zx("T"), Diagram::z(1, 0, k.k() as i64 + j * step)])).collect();
    let lhs = seq(&[Diagram::z(1, n, 0), par(&branches)]);
    let merged = (n as i64) * (k.k() as i64) + 4 * (n as i64 + 1);
    let rhs = seq(&[Diagram::z(1, n, 0), Diagram::z(n, 1, 0), zx("T"), Diagram::z(1, 0, merged)]);
    Some((lhs, rhs))
}

pub fn supplementarity_check(n: usize, k: PhaseK) -> CheckResult {
    let id = format!("supplementarity/n={n}/k={}", k.k());
    match supplementarity_sides(n, k) {
        Some((l, r)) => proportional_diagrams(id, &l, &r),
        None => CheckResult::skipped(id, Mode::Proportional, "outside fragment"),
    }
}

// --------------------------------------------------- generalised identities

/// Ring parameters sampled by the generalised-phase checks.
pub fn sample_params() -> Vec<RingElt> {
    let w = RingElt::omega();
    let d = |s: &str| RingElt::from_dyadic(s.parse().unwrap());
    vec![
        RingElt::one(),
        w.clone(),
        RingElt::from_int(2),
        d("1/2"),
        RingElt::from_int(-1),
        &RingElt::one() + &w,
        RingElt::from_phase(PhaseK::new(3)),
        RingElt::zero(),
        half_root_two_minus_one(),
        RingElt::sqrt2(),
    ]
}

/// `(√2 − 2)/2 = −1 + ½ω − ½ω³`.
pub fn half_root_two_minus_one() -> RingElt {
    RingElt::new([Dyadic::from_int(-1), Dyadic::half(), Dyadic::zero(), -Dyadic::half()])
}

pub fn generalized_identity_checks() -> Vec<CheckResult> {
    let mut out = Vec::new();
    let params = sample_params();
    for (i, a) in params.iter().enumerate() {
        out.push(matches_target(format!("box/diagonal/{i}"), &zbox(1, 1, a), &Matrix::diag(&[RingElt::one(), a.clone()])));
        for (j, b) in params.iter().enumerate() {
            let fused = seq(&[zbox(1, 1, a), zbox(1, 2, b)]);
            out.push(exact(format!("box/fusion/{i}-{j}"), &fused, &zbox(1, 2, &(a * b))));
        }
        let colour = seq(&[hs(1), zbox(1, 2, a), hs(2)]);
        out.push(exact(format!("box/colour-change/{i}"), &colour, &xbox(1, 2, a)));

        let id_copy = format!("box/pi-copy/{i}");
        if a.is_one() {
            out.push(CheckResult::skipped(id_copy, Mode::Proportional, "side condition a != 1"));
        } else if let Some(inv) = ring_inverse(a) {
            let lhs = seq(&[Diagram::x(1, 1, 4), zbox(1, 2, a)]);
            let rhs = seq(&[zbox(1, 2, &inv), par(&[Diagram::x(1, 1, 4), Diagram::x(1, 1, 4)])]);
            out.push(proportional_diagrams(id_copy, &lhs, &rhs));
        } else {
            out.push(CheckResult::skipped(id_copy, Mode::Proportional, "parameter not invertible in the ring"));
        }

        let odd = seq(&[zbox(1, 3, a), Diagram::x(3, 1, 0)]);
        out.push(proportional_diagrams(format!("box/parity-odd/n=3/{i}"), &odd, &zbox(1, 1, a)));
        let even = seq(&[zbox(1, 2, a), Diagram::x(2, 1, 0)]);
        out.push(proportional_diagrams(format!("box/parity-even/n=2/{i}"), &even, &par(&[zbox(1, 0, a), Diagram::x(0, 1, 0)])));
        let copy = seq(&[Diagram::x(0, 1, 0), zbox(1, 3, a)]);
        out.push(proportional_diagrams(format!("box/red-copy/{i}"), &copy, &par(&vec![Diagram::x(0, 1, 0); 3])));
    }
    // the π phase itself, copied by the ordinary rule
    let lhs = seq(&[Diagram::x(1, 1, 4), Diagram::z(1, 2, 4)]);
    let rhs = seq(&[Diagram::z(1, 2, 4), par(&[Diagram::x(1, 1, 4), Diagram::x(1, 1, 4)])]);
    out.push(proportional_diagrams("box/pi-copy/alpha=pi", &lhs, &rhs));
    out
}

// ---------------------------------------------------------------- ZW rules

fn wz(n: usize, m: usize, r: &RingElt) -> Diagram {
    Diagram::node(NodeKind::ZwWhite(r.clone()), n, m)
}

fn ww(n: usize, m: usize) -> Diagram {
    Diagram::node(NodeKind::ZwW, n, m)
}

fn zw_seq(parts: &[Diagram]) -> Diagram {
    Diagram::compose_all(parts).expect("fixture arities agree")
}

fn zw_par(parts: &[Diagram]) -> Diagram {
    Diagram::tensor_all(Calculus::Zw, parts).expect("same calculus")
}

/// The five ZW rules as (name, lhs, rhs).
pub fn zw_rules(r: &RingElt, s: &RingElt) -> Vec<(&'static str, Diagram, Diagram)> {
    let wid = Diagram::identity(Calculus::Zw, 1);
    vec![
        ("nat_c", zw_seq(&[wz(1, 1, r), ww(1, 2)]), zw_seq(&[ww(1, 2), zw_par(&[wz(1, 1, r), wz(1, 1, r)])])),
        ("nat_ec", zw_seq(&[wz(1, 1, r), ww(1, 0)]), ww(1, 0)),
        ("rng_plus", zw_seq(&[ww(1, 2), zw_par(&[wz(1, 1, r), wz(1, 1, s)]), ww(2, 1)]), wz(1, 1, &(r + s))),
        ("rng_times", zw_seq(&[wz(1, 1, r), wz(1, 1, s)]), wz(1, 1, &(r * s))),
        ("ph", zw_seq(&[wz(1, 2, &RingElt::one()), zw_par(&[wz(1, 1, r), wid])]), wz(1, 2, r)),
    ]
}

/// Random ring element with coordinates drawn from `{−2, −1, −½, 0, ½, 1, 2}`.
pub fn random_coeff_elt(rng: &mut impl Rng) -> RingElt {
    const C: [&str; 7] = ["-2", "-1", "-1/2", "0", "1/2", "1", "2"];
    RingElt::new(std::array::from_fn(|_| C.choose(rng).unwrap().parse().unwrap()))
}

pub fn zw_rule_check(name: &str, r: &RingElt, s: &RingElt, tag: &str) -> Vec<CheckResult> {
    zw_rules(r, s)
        .into_iter()
        .filter(|(n, ..)| name == "*" || *n == name)
        .map(|(n, l, rh)| {
            let id = format!("zw/{n}/{tag}");
            match (zw_to_zx(&l), zw_to_zx(&rh)) {
                (Ok(a), Ok(b)) => exact(id, &a, &b),
                (Err(e), _) | (_, Err(e)) => CheckResult::error(id, Mode::Exact, e.to_string()),
            }
        })
        .collect()
}

pub fn zw_rule_checks(pairs: usize, seed: u64) -> Vec<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cases: Vec<(RingElt, RingElt, String)> = vec![
        (RingElt::one(), RingElt::zero(), "r=1,s=0".into()),
        (RingElt::omega(), RingElt::from_phase(PhaseK::new(3)), "r=w,s=w3".into()),
        (half_root_two_minus_one(), RingElt::one(), "r=(sqrt2-2)/2".into()),
    ];
    for i in 0..pairs {
        cases.push((random_coeff_elt(&mut rng), random_coeff_elt(&mut rng), format!("random{i}")));
    }
    let results = par::map(&cases, |(r, s, tag)| zw_rule_check("*", r, s, tag));
    results.into_iter().flatten().collect()
}

// ------------------------------------------------------------- addition

/// `wcopy ; ((L(l1);Z(a)) * (L(l2);Z(b))) ; wadd`.
pub fn addition_gadget(l1: &Dyadic, a: PhaseK, l2: &Dyadic, b: PhaseK) -> Diagram {
    let branch = |l: &Dyadic, k: PhaseK| seq(&[Diagram::node(NodeKind::LambdaBox(l.clone()), 1, 1), Diagram::z(1, 1, k.k() as i64)]);
    seq(&[gadgets::w_copy(), par(&[branch(l1, a), branch(l2, b)]), gadgets::w_add()])
}

pub fn addition_gadget_check(l1: &Dyadic, a: PhaseK, l2: &Dyadic, b: PhaseK) -> Vec<CheckResult> {
    let tag = format!("{l1},{},{l2},{}", a.k(), b.k());
    let sum = RingElt::from_dyadic(l1.clone()).mul_phase(a) + RingElt::from_dyadic(l2.clone()).mul_phase(b);
    let lhs = addition_gadget(l1, a, l2, b);
    let mut out = vec![matches_target(format!("addition/sum/{tag}"), &lhs, &Matrix::diag(&[RingElt::one(), sum.clone()]))];
    match sum.polar_in_fragment() {
        Some((l, g)) => {
            let rhs = seq(&[Diagram::node(NodeKind::LambdaBox(l), 1, 1), Diagram::z(1, 1, g.k() as i64)]);
            out.push(exact(format!("addition/polar/{tag}"), &lhs, &rhs));
        }
        None => out.push(CheckResult::skipped(format!("addition/polar/{tag}"), Mode::Exact, "sum has no polar form in the fragment")),
    }
    out.push(exact(format!("addition/swap/{tag}"), &lhs, &addition_gadget(l2, b, l1, a)));
    out
}

fn addition_samples() -> Vec<(Dyadic, PhaseK, Dyadic, PhaseK)> {
    let ls: Vec<Dyadic> = ["0", "1/2", "1", "3/4", "2"].iter().map(|s| s.parse().unwrap()).collect();
    let mut v = Vec::new();
    for l1 in &ls {
        for l2 in &ls {
            for a in [0, 1, 4] {
                for b in [0, 3, 4] {
                    v.push((l1.clone(), PhaseK::new(a), l2.clone(), PhaseK::new(b)));
                }
            }
        }
    }
    v
}

// ------------------------------------------------------------------ suite

/// Every named check, sorted by id.
pub fn run_all() -> Vec<CheckResult> {
    let mut out = vec![toffoli_check()];
    let t_inv = seq(&[zx("T"), zx("Tinv")]);
    out.push(exact("toffoli/triangle-inverse", &t_inv, &id(1)));
    for n in [1, 2, 3, 4, 8] {
        for k in PhaseK::all() {
            out.push(supplementarity_check(n, k));
        }
    }
    out.extend(generalized_identity_checks());
    out.extend(zw_rule_checks(50, 7));
    let samples = addition_samples();
    out.extend(par::map(&samples, |(l1, a, l2, b)| addition_gadget_check(l1, *a, l2, *b)).into_iter().flatten());
    out.sort_by(|a, b| a.id.cmp(&b.id));
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub results: Vec<CheckResult>,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

impl Report {
    pub fn new(results: Vec<CheckResult>) -> Self {
        let count = |s: Status| results.iter().filter(|r| r.status == s).count();
        let (passed, failed, skipped) = (count(Status::Pass), count(Status::Fail), count(Status::Skipped));
        Report { results, passed, failed, skipped }
    }

    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.results {
            let status = match r.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Skipped => "skip",
            };
            write!(f, "{status:<5} {:<40} {:?}", r.id, r.mode)?;
            if let Some(s) = &r.scalar {
                write!(f, "  scalar {s}")?;
            }
            if !r.detail.is_empty() {
                write!(f, "  {}", r.detail)?;
            }
            if let Some(cx) = &r.counterexample {
                write!(f, "  first difference at ({}, {}): {} vs {}", cx.row, cx.col, cx.lhs, cx.rhs)?;
            }
            writeln!(f)?;
        }
        write!(f, "{} passed, {} failed, {} skipped", self.passed, self.failed, self.skipped)
    }
}

/// The suite filtered by an id glob (`*` and `?` wildcards).
pub fn cli_check(glob: Option<&str>) -> Report {
    let all = run_all();
    let results = match glob {
        Some(g) => {
            let pat = wildmatch::WildMatch::new(g);
            all.into_iter().filter(|r| pat.matches(&r.id)).collect()
        }
        None => all,
    };
    Report::new(results)
}

// ----------------------------------------------------------------- corpus

fn pick_lambda(rng: &mut impl Rng) -> Dyadic {
    ["0", "1/2", "1", "3/2", "1/4", "2"].choose(rng).unwrap().parse().unwrap()
}

/// One random ZX generator with at most `max_in` inputs.
fn random_zx_generator(rng: &mut impl Rng, max_in: usize) -> Diagram {
    loop {
        let k = rng.gen_range(0..8i64);
        let (n, m) = (rng.gen_range(0..=2usize), rng.gen_range(0..=2usize));
        let d = match rng.gen_range(0..11) {
            0 | 1 => Diagram::z(n, m, k),
            2 | 3 => Diagram::x(n, m, k),
            4 => zx("H"),
            5 => zx("T"),
            6 => zx("Tt"),
            7 => zx("Tinv"),
            8 => Diagram::node(NodeKind::LambdaBox(pick_lambda(rng)), 1, 1),
            9 => [zx("swap"), zx("cap"), zx("cup")].choose(rng).unwrap().clone(),
            _ => zbox(n.min(1), m.max(1), &random_coeff_elt(rng)),
        };
        if d.n_inputs <= max_in {
            return d;
        }
    }
}

fn random_zw_generator(rng: &mut impl Rng, max_in: usize) -> Diagram {
    loop {
        let (n, m) = (rng.gen_range(0..=2usize), rng.gen_range(0..=2usize));
        let d = match rng.gen_range(0..6) {
            0 | 1 => wz(n, m, &random_coeff_elt(rng)),
            2 => Diagram::node(NodeKind::ZwBlackPi, 1, 1),
            3 => Diagram::node(NodeKind::ZwCross, 2, 2),
            4 => ww(n, m),
            _ => [Diagram::swap(Calculus::Zw), Diagram::cap(Calculus::Zw), Diagram::cup(Calculus::Zw)].choose(rng).unwrap().clone(),
        };
        if d.n_inputs <= max_in {
            return d;
        }
    }
}

/// Stacks random generators in layers, each padded with identity wires,
/// keeping at most `max_width` open wires and `max_nodes` nodes.
fn random_layers(
    rng: &mut impl Rng,
    calculus: Calculus,
    max_nodes: usize,
    max_width: usize,
    gen: impl Fn(&mut dyn rand::RngCore, usize) -> Diagram,
) -> Diagram {
    let width = rng.gen_range(0..=2usize);
    let mut d = Diagram::identity(calculus, width);
    let layers = rng.gen_range(1..=max_nodes);
    for _ in 0..layers {
        let w = d.n_outputs;
        let g = gen(rng, w);
        if d.node_count() + g.node_count() > max_nodes || w - g.n_inputs + g.n_outputs > max_width {
            continue;
        }
        let before = rng.gen_range(0..=w - g.n_inputs);
        let after = w - g.n_inputs - before;
        let layer = Diagram::tensor_all(calculus, &[Diagram::identity(calculus, before), g, Diagram::identity(calculus, after)]).unwrap();
        d = Diagram::compose(&d, &layer).unwrap();
    }
    d
}

pub fn random_zx(rng: &mut impl Rng, max_nodes: usize) -> Diagram {
    random_layers(rng, Calculus::Zx, max_nodes, 4, |r, w| random_zx_generator(&mut ChaCha8Rng::seed_from_u64(r.next_u64()), w))
}

pub fn random_zw(rng: &mut impl Rng, max_nodes: usize) -> Diagram {
    random_layers(rng, Calculus::Zw, max_nodes, 4, |r, w| random_zw_generator(&mut ChaCha8Rng::seed_from_u64(r.next_u64()), w))
}

/// `count` seeded random ZX diagrams with at most `max_nodes` nodes.
pub fn zx_corpus(seed: u64, count: usize, max_nodes: usize) -> Vec<Diagram> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_zx(&mut rng, max_nodes)).collect()
}

pub fn zw_corpus(seed: u64, count: usize, max_nodes: usize) -> Vec<Diagram> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_zw(&mut rng, max_nodes)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn toffoli_is_a_permutation_swapping_last_pair() {
        let t = toffoli_matrix();
        assert_eq!(t.get(7, 6), &RingElt::one());
        assert_eq!(t.get(6, 7), &RingElt::one());
        assert_eq!(t.get(5, 5), &RingElt::one());
        assert_eq!(toffoli_check().status, Status::Pass);
    }

    #[test]
    fn supplementarity_cases() {
        assert_eq!(supplementarity_check(2, PhaseK::new(1)).status, Status::Pass);
        assert_eq!(supplementarity_check(4, PhaseK::new(0)).status, Status::Pass);
        assert_eq!(supplementarity_check(3, PhaseK::new(0)).status, Status::Skipped);
        let (l, r) = supplementarity_sides(1, PhaseK::new(5)).unwrap();
        assert_eq!(interpret(&l).unwrap(), interpret(&r).unwrap());
    }

    #[test]
    fn addition_examples() {
        let d = |s: &str| s.parse::<Dyadic>().unwrap();
        let diag_of = |l1: &str, a: i64, l2: &str, b: i64| interpret(&addition_gadget(&d(l1), PhaseK::new(a), &d(l2), PhaseK::new(b))).unwrap();
        assert_eq!(diag_of("1", 0, "1", 0), Matrix::diag(&[RingElt::one(), RingElt::from_int(2)]));
        assert_eq!(diag_of("1", 0, "1", 4), Matrix::diag(&[RingElt::one(), RingElt::zero()]));
        assert_eq!(RingElt::omega().polar_in_fragment(), Some((Dyadic::one(), PhaseK::new(1))));
        let r = addition_gadget_check(&d("1/2"), PhaseK::new(1), &d("1/2"), PhaseK::new(1));
        assert!(r.iter().all(|c| c.status == Status::Pass), "{r:?}");
    }

    #[test]
    fn zw_rule_examples() {
        assert!(zw_rule_check("rng_plus", &RingElt::one(), &RingElt::zero(), "t").iter().all(|c| c.status == Status::Pass));
        let w3 = RingElt::from_phase(PhaseK::new(3));
        assert_eq!(&RingElt::omega() * &w3, RingElt::from_int(-1));
        assert!(zw_rule_check("rng_times", &RingElt::omega(), &w3, "t").iter().all(|c| c.status == Status::Pass));
        assert!(zw_rule_check("nat_c", &half_root_two_minus_one(), &RingElt::one(), "t").iter().all(|c| c.status == Status::Pass));
    }

    #[test]
    fn whole_suite_passes() {
        let rep = cli_check(None);
        assert!(rep.ok(), "{rep}");
        assert!(cli_check(Some("toffoli*")).results.len() == 2);
    }

    #[test]
    fn corpus_is_bounded_and_seeded() {
        let a = zx_corpus(3, 30, 6);
        assert_eq!(a, zx_corpus(3, 30, 6));
        assert!(a.iter().all(|d| d.node_count() <= 6 && d.is_valid()));
        assert!(zw_corpus(3, 30, 6).iter().all(|d| d.node_count() <= 6 && d.is_valid() && d.calculus == Calculus::Zw));
    }
}
