//! Acceptance suite: one line per criterion, non-zero exit on any failure.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use zxct::catalog::{generalized_identity_checks, random_zx, supplementarity_check, toffoli_check, zw_corpus, zw_rule_checks, zx_corpus, Status};
use zxct::diagram::{parse, Calculus, Diagram, NodeKind};
use zxct::linalg::{ring_inverse, Matrix};
use zxct::rewrite::script::{builtin_scripts, run_all};
use zxct::rewrite::{brute_force_matches, find_pattern};
use zxct::rules::{verify_all, Catalog, Plan};
use zxct::semantics::{interpret, scalar_value};
use zxct::translate::{lambda_box_construct, triangle_construct, triangle_construct_scalar, zw_to_zx, zx_to_zw};
use zxct::{Dyadic, PhaseK, RingElt};

const SWEEP_BUDGET: Duration = Duration::from_secs(60);
const RING_CASES: u32 = 1000;
const DIAGRAM_PAIRS: u32 = 200;
const MATCHER_CASES: u32 = 100;
const MATCHER_HOST_NODES: usize = 8;
const CORPUS_SIZE: usize = 200;
const CORPUS_NODES: usize = 6;
const ZW_PAIRS: usize = 50;
const LAMBDAS: [&str; 6] = ["0", "1/2", "1", "3/2", "11/4", "7/8"];

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn sem(d: &Diagram) -> Result<Matrix, String> {
    interpret(d).map_err(|e| format!("{d}: {e}"))
}

fn rule_sweep() -> Outcome {
    let cat = Catalog::builtin();
    ensure(cat.rules.len() == 30, || format!("{} schemas, expected 30", cat.rules.len()))?;
    let t = Instant::now();
    let rep = verify_all(&cat, &Plan::default());
    let elapsed = t.elapsed();
    ensure(rep.rules.len() == 30, || format!("{} rules swept", rep.rules.len()))?;
    ensure(rep.passed && rep.failures == 0, || format!("{} unsound instances", rep.failures))?;
    ensure(elapsed < SWEEP_BUDGET, || format!("sweep took {elapsed:?}"))?;
    Ok(format!("{} instances sound in {:.1}s", rep.instances, elapsed.as_secs_f64()))
}

fn derivations() -> Outcome {
    let scripts = builtin_scripts();
    let results = run_all(&scripts, &Catalog::builtin());
    for (name, r) in &results {
        r.as_ref().map_err(|e| format!("{name}: {e}"))?;
    }
    for want in ["TR4", "TR10", "TR11", "TR5"] {
        ensure(results.iter().any(|(n, r)| n == want && r.is_ok()), || format!("no passing {want} script"))?;
    }
    let tr4 = scripts.iter().find(|s| s.name == "TR4").unwrap();
    let used: BTreeSet<&str> = tr4.steps.iter().map(|s| s.rule.as_str()).collect();
    ensure(used == BTreeSet::from(["TR3", "TR6", "TR2"]), || format!("TR4 uses {used:?}"))?;
    let steps: usize = results.iter().filter_map(|(_, r)| r.as_ref().ok()).map(|t| t.steps.len()).sum();
    Ok(format!("{} scripts, {steps} steps, TR4 via {{TR2, TR3, TR6}}", results.len()))
}

fn empty_rule() -> Outcome {
    let scripts = builtin_scripts();
    let s = scripts.iter().find(|s| s.name == "EMPTY").ok_or("no EMPTY script")?;
    let results = run_all(&scripts, &Catalog::builtin());
    let trace = results.iter().find(|(n, _)| n == "EMPTY").unwrap().1.as_ref().map_err(|e| e.to_string())?;
    for src in [&s.start, &trace.end] {
        let d = parse(src).map_err(|e| e.to_string())?;
        let v = scalar_value(&d).map_err(|e| e.to_string())?;
        ensure(v.is_one(), || format!("scalar of `{src}` is {v}"))?;
    }
    Ok(format!("{} steps to the empty diagram, scalar exactly 1", trace.steps.len()))
}

fn constructions() -> Outcome {
    for l in LAMBDAS {
        let lam: Dyadic = l.parse().unwrap();
        let d = lambda_box_construct(&lam).map_err(|e| e.to_string())?;
        ensure(!d.nodes.values().any(|n| matches!(n.kind, NodeKind::LambdaBox(_))), || format!("λ={l} uses a λ-box"))?;
        let m = sem(&d)?;
        ensure(m == Matrix::diag(&[RingElt::one(), RingElt::from_dyadic(lam)]), || format!("λ={l}: {m}"))?;
    }
    let t = triangle_construct();
    ensure(!t.nodes.values().any(|n| matches!(n.kind, NodeKind::Triangle | NodeKind::TriangleInv)), || "uses a triangle".into())?;
    let target = Matrix::from_int_rows(&[&[1, 1], &[0, 1]]);
    let m = sem(&t)?;
    let s = Matrix::scalar_multiple(&target, &m).filter(|s| !s.is_zero()).ok_or_else(|| format!("triangle not proportional: {m}"))?;
    ensure(ring_inverse(&s).is_some(), || format!("scalar {s} is not a unit"))?;
    ensure(s == triangle_construct_scalar(), || format!("scalar {s} differs from recorded"))?;
    Ok(format!("λ ∈ {{{}}} exact; triangle scalar {s}", LAMBDAS.join(", ")))
}

fn toffoli() -> Outcome {
    let r = toffoli_check();
    ensure(r.status == Status::Pass, || format!("{}: {}", r.id, r.detail))?;
    Ok(format!("proportional, scalar {}", r.scalar.unwrap_or_default()))
}

fn supplementarity() -> Outcome {
    let mut cases: Vec<(usize, PhaseK)> = PhaseK::all().map(|k| (2, k)).collect();
    cases.extend([(4, PhaseK::new(0)), (4, PhaseK::new(1))]);
    for (n, k) in &cases {
        let r = supplementarity_check(*n, *k);
        ensure(r.status == Status::Pass, || format!("{}: {}", r.id, r.detail))?;
    }
    let parity: Vec<_> =
        generalized_identity_checks().into_iter().filter(|r| r.id.starts_with("box/parity-odd/n=3") || r.id.starts_with("box/parity-even/n=2")).collect();
    ensure(!parity.is_empty(), || "no parity checks".into())?;
    for r in &parity {
        ensure(r.status == Status::Pass, || format!("{}: {}", r.id, r.detail))?;
    }
    Ok(format!("{} supplementarity cases, {} parity cases", cases.len(), parity.len()))
}

fn zx_generators() -> Vec<Diagram> {
    let mut v: Vec<Diagram> = ["H", "T", "Tt", "Tinv", "id", "swap", "cap", "cup", "L(0)", "L(3/4)", "L(5/2)", "Zbox(1,2;1/2*w - 2*w^3)", "Xbox(2,1;1 + w^2)"]
        .iter()
        .map(|s| parse(s).unwrap())
        .collect();
    for k in [0, 1, 4, 7] {
        for (n, m) in [(0, 0), (0, 1), (1, 1), (2, 1), (1, 3)] {
            v.push(Diagram::z(n, m, k));
            v.push(Diagram::x(n, m, k));
        }
    }
    v
}

fn zw_generators() -> Vec<Diagram> {
    let mut v = vec![
        Diagram::node(NodeKind::ZwBlackPi, 1, 1),
        Diagram::node(NodeKind::ZwCross, 2, 2),
        Diagram::swap(Calculus::Zw),
        Diagram::cap(Calculus::Zw),
        Diagram::cup(Calculus::Zw),
    ];
    for (n, m) in [(0, 0), (0, 1), (1, 0), (1, 1), (1, 2), (2, 1), (2, 2), (0, 3)] {
        v.push(Diagram::node(NodeKind::ZwW, n, m));
        for r in ["1", "0", "w", "-1/2 + 2*w^2", "-1 + 1/2*w - 1/2*w^3"] {
            v.push(Diagram::node(NodeKind::ZwWhite(r.parse().unwrap()), n, m));
        }
    }
    v
}

fn translations() -> Outcome {
    let zx: Vec<Diagram> = zx_generators().into_iter().chain(zx_corpus(11, CORPUS_SIZE, CORPUS_NODES)).collect();
    let zw: Vec<Diagram> = zw_generators().into_iter().chain(zw_corpus(12, CORPUS_SIZE, CORPUS_NODES)).collect();
    for d in &zx {
        let want = sem(d)?;
        let w = zx_to_zw(d).map_err(|e| e.to_string())?;
        ensure(sem(&w)? == want, || format!("ZX→ZW changes ⟦{d}⟧"))?;
        let back = zw_to_zx(&w).map_err(|e| e.to_string())?;
        ensure(sem(&back)? == want, || format!("round trip changes ⟦{d}⟧"))?;
    }
    for d in &zw {
        let x = zw_to_zx(d).map_err(|e| e.to_string())?;
        ensure(sem(&x)? == sem(d)?, || format!("ZW→ZX changes ⟦{d}⟧"))?;
    }
    Ok(format!("{} ZX and {} ZW diagrams exact, round trip exact", zx.len(), zw.len()))
}

fn zw_rules() -> Outcome {
    let rs = zw_rule_checks(ZW_PAIRS, 7);
    ensure(rs.iter().any(|r| r.id.ends_with("r=(sqrt2-2)/2")), || "missing (√2−2)/2 case".into())?;
    let printed = RingElt::new(["-1", "1/2", "0", "-1/2"].map(|s| s.parse().unwrap()));
    ensure(&(&printed * &printed) + &(&printed * &RingElt::from_int(2)) == RingElt::from_dyadic("-1/2".parse().unwrap()), || {
        "(−1, ½, 0, −½) is not (√2−2)/2".into()
    })?;
    for r in &rs {
        ensure(r.status == Status::Pass, || format!("{}: {}", r.id, r.detail))?;
    }
    Ok(format!("{} rule instances over {} (r, s) pairs", rs.len(), ZW_PAIRS + 3))
}

fn ring_validity() -> Outcome {
    let mut entries = 0usize;
    for d in zx_corpus(21, CORPUS_SIZE, CORPUS_NODES) {
        for e in sem(&d)?.entries() {
            for c in e.coeffs() {
                let normal = c.exponent() == 0 || !(c.numerator() % 2u32).is_zero();
                ensure(normal && !(c.is_zero() && c.exponent() != 0), || format!("{c:?} not in normal form"))?;
            }
            entries += 1;
        }
    }
    Ok(format!("{entries} entries over {CORPUS_SIZE} diagrams are normal-form ring elements"))
}

fn dyadic() -> impl Strategy<Value = Dyadic> {
    (-64i64..=64, 0u32..4).prop_map(|(n, k)| Dyadic::new(n, k))
}

fn ring() -> impl Strategy<Value = RingElt> {
    [dyadic(), dyadic(), dyadic(), dyadic()].prop_map(RingElt::new)
}

fn seeded<T: std::fmt::Debug>(make: impl Fn(&mut ChaCha8Rng) -> T) -> impl Strategy<Value = T> {
    any::<u64>().prop_map(move |s| make(&mut ChaCha8Rng::seed_from_u64(s)))
}

fn runner(cases: u32) -> TestRunner {
    TestRunner::new(Config { cases, failure_persistence: None, ..Config::default() })
}

fn id_zx(n: usize) -> Diagram {
    Diagram::identity(Calculus::Zx, n)
}

/// Threads wire `w` of an `n`-wire bundle through a cap and a cup.
fn snake(n: usize, w: usize) -> Diagram {
    let bend = parse("(id * cap) ; (cup * id)").unwrap();
    Diagram::tensor_all(Calculus::Zx, &[id_zx(w), bend, id_zx(n - w - 1)]).unwrap()
}

fn properties() -> Outcome {
    let one = RingElt::one();
    let w = RingElt::omega();
    runner(RING_CASES)
        .run(&(ring(), ring(), ring()), |(a, b, c)| {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &one, a.clone());
            prop_assert_eq!(&a + &(-&a), RingElt::zero());
            prop_assert_eq!(&(&(&w * &w) * &(&w * &w)) * &a, -&a);
            Ok(())
        })
        .map_err(|e| format!("ring axioms: {e}"))?;

    let pair = seeded(|rng| {
        let a = random_zx(rng, CORPUS_NODES);
        let b = loop {
            let b = random_zx(rng, CORPUS_NODES);
            if b.n_inputs <= a.n_outputs {
                break Diagram::tensor(&b, &id_zx(a.n_outputs - b.n_inputs)).unwrap();
            }
        };
        let c = random_zx(rng, CORPUS_NODES);
        (a, b, c)
    });
    runner(DIAGRAM_PAIRS)
        .run(&pair, |(a, b, c)| {
            let (ma, mb, mc) = (interpret(&a).unwrap(), interpret(&b).unwrap(), interpret(&c).unwrap());
            let ab = Diagram::compose(&a, &b).unwrap();
            prop_assert_eq!(interpret(&ab).unwrap(), Matrix::matmul(&mb, &ma).unwrap());
            let ac = Diagram::tensor(&a, &c).unwrap();
            prop_assert_eq!(interpret(&ac).unwrap(), ma.kron(&mc));
            if a.n_outputs > 0 {
                let bent = Diagram::compose(&a, &snake(a.n_outputs, a.n_outputs - 1)).unwrap();
                prop_assert_eq!(interpret(&bent).unwrap(), ma.clone());
            }
            prop_assert_eq!(interpret(&a.compacted()).unwrap(), ma.clone());
            let flipped = interpret(&a.flip_vertical()).unwrap();
            prop_assert_eq!(flipped.rows(), ma.cols());
            Ok(())
        })
        .map_err(|e| format!("functoriality/topology: {e}"))?;

    let hosts = seeded(|rng| {
        let pat = loop {
            let p = random_zx(rng, 2);
            if p.node_count() > 0 {
                break p;
            }
        };
        let host = loop {
            let h = random_zx(rng, MATCHER_HOST_NODES - pat.node_count());
            let h = if rng.gen_bool(0.5) { Diagram::tensor(&pat, &h).unwrap() } else { h };
            if h.node_count() <= MATCHER_HOST_NODES {
                break h;
            }
        };
        (pat, host)
    });
    let matched = std::cell::Cell::new(0usize);
    runner(MATCHER_CASES)
        .run(&hosts, |(pat, host)| {
            let fast: BTreeSet<_> = find_pattern(&pat, &host).into_iter().map(|m| (m.nodes, m.frontier)).collect();
            let slow: BTreeSet<_> = brute_force_matches(&pat, &host).into_iter().collect();
            prop_assert_eq!(&fast, &slow);
            matched.set(matched.get() + usize::from(!fast.is_empty()));
            Ok(())
        })
        .map_err(|e| format!("matcher: {e}"))?;
    ensure(matched.get() > 0, || "no host contained its pattern".into())?;
    Ok(format!("ring {RING_CASES}, diagram pairs {DIAGRAM_PAIRS}, matcher {MATCHER_CASES} ({} with matches)", matched.get()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("rule soundness sweep", rule_sweep),
        ("derivation scripts", derivations),
        ("empty rule scalar", empty_rule),
        ("λ-box and triangle constructions", constructions),
        ("Toffoli", toffoli),
        ("supplementarity and parity", supplementarity),
        ("ZX/ZW translations", translations),
        ("ZW rules under translation", zw_rules),
        ("interpreted entries lie in the ring", ring_validity),
        ("property suites", properties),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let out = std::panic::catch_unwind(check)
            .unwrap_or_else(|p| Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default()));
        let secs = t.elapsed().as_secs_f64();
        match out {
            Ok(msg) => println!("PASS  {:>2}. {name}: {msg} ({secs:.1}s)", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL  {:>2}. {name}: {msg} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
