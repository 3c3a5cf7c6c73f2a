//! Translations between the ZX and ZW calculi, plus the gadgets that
//! express triangles, λ boxes and ring-valued phases with plainer
//! generators.
//!
//! Both translations are generator-by-generator substitutions, so they
//! commute with `;` and `*` by construction.

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::diagram::{resolve_junctions, Calculus, Diagram, End, Node, NodeId, NodeKind, Port};
use crate::gadgets;
use crate::ring::{Dyadic, PhaseK, RingElt};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TranslateError {
    #[error("expected a {expected} diagram, found {found}")]
    Calculus { expected: Calculus, found: Calculus },
    #[error("lambda must be non-negative, got {0}")]
    NegativeLambda(Dyadic),
}

/// Coordinates of a ring element over `1, ω, ω², ω³`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RPhaseDecomposition {
    pub a0: Dyadic,
    pub a1: Dyadic,
    pub a2: Dyadic,
    pub a3: Dyadic,
}

impl RPhaseDecomposition {
    pub fn of(r: &RingElt) -> Self {
        let [a0, a1, a2, a3] = r.coeffs().clone();
        RPhaseDecomposition { a0, a1, a2, a3 }
    }

    pub fn coeffs(&self) -> [&Dyadic; 4] {
        [&self.a0, &self.a1, &self.a2, &self.a3]
    }

    pub fn value(&self) -> RingElt {
        RingElt::new([self.a0.clone(), self.a1.clone(), self.a2.clone(), self.a3.clone()])
    }
}

/// Replaces every node by the diagram `f` gives for it. The gadget's
/// inputs stand for the node's input ports and its outputs for the rest.
fn substitute(d: &Diagram, calculus: Calculus, f: impl Fn(&Node) -> Diagram) -> Diagram {
    let mut out = Diagram::empty(calculus);
    out.n_inputs = d.n_inputs;
    out.n_outputs = d.n_outputs;
    out.loops = d.loops;
    let mut slot: std::collections::BTreeMap<(NodeId, usize), usize> = Default::default();
    let mut junction = |id: NodeId, k: usize| {
        let n = slot.len();
        *slot.entry((id, k)).or_insert(n)
    };
    let mut raw: Vec<(End, End)> = Vec::new();
    let mut next: NodeId = 0;
    for (&id, node) in &d.nodes {
        let g = f(node);
        debug_assert_eq!((g.n_inputs, g.n_outputs), (node.n_in, node.n_out));
        let base = next;
        let width = g.nodes.keys().next_back().map_or(0, |m| m + 1);
        for (&gid, gn) in &g.nodes {
            out.nodes.insert(base + gid, gn.clone());
        }
        next += width;
        out.loops += g.loops;
        for &(a, b) in &g.edges {
            let mut map = |p: Port| match p {
                Port::Input(i) => End::Junction(junction(id, i)),
                Port::Output(j) => End::Junction(junction(id, node.n_in + j)),
                Port::Node(gid, k) => End::Real(Port::Node(base + gid, k)),
            };
            let (ea, eb) = (map(a), map(b));
            raw.push((ea, eb));
        }
    }
    for &(a, b) in &d.edges {
        let mut map = |p: Port| match p {
            Port::Node(id, k) => End::Junction(junction(id, k)),
            p => End::Real(p),
        };
        let (ea, eb) = (map(a), map(b));
        raw.push((ea, eb));
    }
    let (edges, loops) = resolve_junctions(raw);
    out.edges = edges;
    out.loops += loops;
    out
}

fn seq(parts: &[Diagram]) -> Diagram {
    Diagram::compose_all(parts).expect("gadget arities agree")
}

fn par(calculus: Calculus, parts: &[Diagram]) -> Diagram {
    Diagram::tensor_all(calculus, parts).expect("same calculus")
}

fn copies(d: &Diagram, n: usize) -> Diagram {
    par(d.calculus, &vec![d.clone(); n])
}

fn white(n: usize, m: usize, r: RingElt) -> Diagram {
    Diagram::node(NodeKind::ZwWhite(r), n, m)
}

fn wnode(n: usize, m: usize) -> Diagram {
    Diagram::node(NodeKind::ZwW, n, m)
}

/// Scalar `c` as a ZW diagram.
fn zw_scalar(c: RingElt) -> Diagram {
    white(0, 0, c - RingElt::one())
}

/// `[[1,1],[0,1]]` in ZW: copy through a W node and discard one branch.
pub fn zw_triangle() -> Diagram {
    let id = Diagram::identity(Calculus::Zw, 1);
    seq(&[wnode(1, 2), par(Calculus::Zw, &[id, white(1, 0, RingElt::one())])])
}

pub fn zw_triangle_inv() -> Diagram {
    let id = Diagram::identity(Calculus::Zw, 1);
    seq(&[wnode(1, 2), par(Calculus::Zw, &[id, white(1, 0, RingElt::from_int(-1))])])
}

/// Hadamard in ZW as `Tᵗ · diag(1,-2) · T / √2`.
pub fn zw_hadamard() -> Diagram {
    let body = seq(&[zw_triangle(), white(1, 1, RingElt::from_int(-2)), zw_triangle().flip_vertical()]);
    par(Calculus::Zw, &[body, zw_scalar(RingElt::inv_sqrt2())])
}

fn zx_gadget_zw(node: &Node) -> Diagram {
    let (n, m) = (node.n_in, node.n_out);
    let h_sides = |r: RingElt| seq(&[copies(&zw_hadamard(), n), white(n, m, r), copies(&zw_hadamard(), m)]);
    match &node.kind {
        NodeKind::ZSpider(k) => white(n, m, RingElt::from_phase(*k)),
        NodeKind::GreenBox(a) => white(n, m, a.clone()),
        NodeKind::XSpider(k) => h_sides(RingElt::from_phase(*k)),
        NodeKind::RedBox(a) => h_sides(a.clone()),
        NodeKind::Hadamard => zw_hadamard(),
        NodeKind::Triangle => zw_triangle(),
        NodeKind::TriangleInv => zw_triangle_inv(),
        NodeKind::LambdaBox(l) => white(1, 1, RingElt::from_dyadic(l.clone())),
        k => unreachable!("{k:?} is not a ZX generator"),
    }
}

/// ZX to ZW, generator by generator.
pub fn zx_to_zw(d: &Diagram) -> Result<Diagram, TranslateError> {
    if d.calculus != Calculus::Zx {
        return Err(TranslateError::Calculus { expected: Calculus::Zx, found: d.calculus });
    }
    Ok(substitute(d, Calculus::Zw, zx_gadget_zw))
}

fn zx(src: &str) -> Diagram {
    crate::diagram::parse(src).expect("fixed gadget parses")
}

/// `diag(1, a+b)` from `diag(1,a)` and `diag(1,b)`.
fn add(a: Diagram, b: Diagram) -> Diagram {
    seq(&[gadgets::w_copy(), par(Calculus::Zx, &[a, b]), gadgets::w_add()])
}

/// `diag(1, r)` as a sum of λ-box branches, one per nonzero coordinate of
/// `r`; a negative coordinate becomes its absolute value with a π phase.
pub fn decompose_rphase(r: &RingElt) -> Diagram {
    let parts = RPhaseDecomposition::of(r);
    let branches: Vec<Diagram> = parts
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, a)| !a.is_zero())
        .map(|(j, a)| {
            let k = if a.is_negative() { j as i64 + 4 } else { j as i64 };
            let l = Diagram::node(NodeKind::LambdaBox(a.abs()), 1, 1);
            if l_is_one(a) && k == 0 {
                Diagram::identity(Calculus::Zx, 1)
            } else if l_is_one(a) {
                Diagram::z(1, 1, k)
            } else if k == 0 {
                l
            } else {
                seq(&[l, Diagram::z(1, 1, k)])
            }
        })
        .collect();
    branches.into_iter().reduce(add).unwrap_or_else(|| Diagram::node(NodeKind::LambdaBox(Dyadic::zero()), 1, 1))
}

fn l_is_one(a: &Dyadic) -> bool {
    a.abs().is_one()
}

/// The scalar 1/√2 built from spiders, a Hadamard and triangles.
pub const PLAIN_INV_SQRT2: &str = "(Z(0,1;0) ; Tt ; H ; T ; Z(1,0;0))";

/// `diag(1, 1/2)` with no λ box: `diag(2,1)` from a copied wire and a
/// discarded transposed triangle, scaled by 1/2.
pub const HALF_BOX: &str = "(Z(1,2;0) ; (id * (Tt ; Z(1,0;0)))) * (Z(0,1;0) ; Tt ; H ; T ; Z(1,0;0)) * (Z(0,1;0) ; Tt ; H ; T ; Z(1,0;0))";

/// `diag(1, λ)` built from spiders, triangles and the addition gadget.
///
/// Whole units are summed one at a time; a fractional part `r` is
/// `diag(1, 2r)` followed by the half box.
pub fn lambda_box_construct(lam: &Dyadic) -> Result<Diagram, TranslateError> {
    if lam.is_negative() {
        return Err(TranslateError::NegativeLambda(lam.clone()));
    }
    Ok(build_lambda(lam))
}

fn build_lambda(lam: &Dyadic) -> Diagram {
    let one = Dyadic::one();
    if lam.is_zero() {
        return zx("(Z(1,2;0) ; (id * X(1,0;0))) * (Z(0,1;0) ; Tt ; H ; T ; Z(1,0;0))");
    }
    if lam.is_one() {
        return Diagram::identity(Calculus::Zx, 1);
    }
    if lam.is_integer() {
        return add(build_lambda(&(lam - &one)), Diagram::identity(Calculus::Zx, 1));
    }
    if lam > &one {
        let whole = Dyadic::new(lam.floor_nonneg().expect("non-negative"), 0);
        return add(build_lambda(&whole), build_lambda(&(lam - &whole)));
    }
    let twice = lam + lam;
    seq(&[build_lambda(&twice), zx(HALF_BOX)])
}

/// The triangle with no triangle node.
///
/// With `x` the input and `y` the output, `T[y][x] = ½ Σ_z (-1)^{z·y·¬x}`.
/// The cubic sign is spread over π/4 phase gadgets using
/// `4abc = a + b + c - (a⊕b) - (a⊕c) - (b⊕c) + (a⊕b⊕c)`.
pub fn triangle_construct() -> Diagram {
    let mut d = Diagram::empty(Calculus::Zx);
    d.n_inputs = 1;
    d.n_outputs = 1;
    let add_node = |d: &mut Diagram, kind: NodeKind, n_in: usize, n_out: usize| -> NodeId {
        let id = d.nodes.len() as NodeId;
        d.nodes.insert(id, Node::new(kind, n_in, n_out));
        id
    };
    let z = |k: i64| NodeKind::ZSpider(PhaseK::new(k));
    let x = |k: i64| NodeKind::XSpider(PhaseK::new(k));
    let not = add_node(&mut d, x(4), 1, 1);
    let a = add_node(&mut d, z(1), 1, 3);
    let b = add_node(&mut d, z(1), 0, 4);
    let c = add_node(&mut d, z(1), 0, 3);
    d.edges.push((Port::Input(0), Port::Node(not, 0)));
    d.edges.push((Port::Node(not, 1), Port::Node(a, 0)));
    d.edges.push((Port::Node(b, 0), Port::Output(0)));
    // next free leg on each variable spider
    let mut free = [1usize, 1, 0];
    let vars = [a, b, c];
    for (members, k) in [(&[0usize, 1][..], 7i64), (&[0, 2], 7), (&[1, 2], 7), (&[0, 1, 2], 1)] {
        let g = add_node(&mut d, x(0), members.len(), 1);
        let leaf = add_node(&mut d, z(k), 1, 0);
        for (i, &v) in members.iter().enumerate() {
            d.edges.push((Port::Node(vars[v], free[v]), Port::Node(g, i)));
            free[v] += 1;
        }
        d.edges.push((Port::Node(g, members.len()), Port::Node(leaf, 0)));
    }
    d
}

/// `⟦triangle_construct()⟧ = s · ⟦T⟧`. The pair gadgets give 1/√2 each,
/// the triple gadget ½, and the sum over `z` is twice the triangle, so
/// `s = 1/(2√2)`.
pub fn triangle_construct_scalar() -> RingElt {
    RingElt::from_dyadic(Dyadic::half()) * RingElt::inv_sqrt2()
}

fn zw_gadget_zx(node: &Node) -> Diagram {
    let (n, m) = (node.n_in, node.n_out);
    match &node.kind {
        NodeKind::ZwWhite(r) => match r.polar_in_fragment() {
            Some((l, k)) if l.is_one() => Diagram::z(n, m, k.k() as i64),
            _ if n == 1 && m == 1 => decompose_rphase(r),
            _ => seq(&[Diagram::z(n, 1, 0), decompose_rphase(r), Diagram::z(1, m, 0)]),
        },
        NodeKind::ZwBlackPi => Diagram::x(1, 1, 4),
        NodeKind::ZwCross => zx("swap ; (((Z(1,2;0) * Z(1,2;0)) ; (id * ((H * id) ; cup) * id)) * (Z(0,1;0) ; X(1,0;0)))"),
        NodeKind::ZwW => seq(&[w_gather(n), w_gather(m).flip_vertical()]),
        k => unreachable!("{k:?} is not a ZW generator"),
    }
}

/// The ZW node `wnode(n, 1)` in ZX, as a chain of two-input W gadgets.
fn w_gather(n: usize) -> Diagram {
    match n {
        0 => zx(&format!("X(0,1;0) * {}", gadgets::INV_SQRT2)),
        1 => Diagram::identity(Calculus::Zx, 1),
        _ => seq(&[par(Calculus::Zx, &[w_gather(n - 1), Diagram::identity(Calculus::Zx, 1)]), gadgets::w_add()]),
    }
}

/// ZW to ZX, generator by generator; white phases outside `ω^k` go through
/// [`decompose_rphase`].
pub fn zw_to_zx(d: &Diagram) -> Result<Diagram, TranslateError> {
    if d.calculus != Calculus::Zw {
        return Err(TranslateError::Calculus { expected: Calculus::Zw, found: d.calculus });
    }
    Ok(substitute(d, Calculus::Zx, zw_gadget_zx))
}
