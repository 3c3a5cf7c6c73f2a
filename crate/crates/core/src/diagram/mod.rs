//! Open-graph representation shared by ZX and ZW diagrams.
//!
//! A diagram is a set of nodes with numbered ports, a perfect matching of
//! ports (the edges), and two ordered boundaries. Caps, cups and plain wires
//! are edges whose endpoints are boundary ports, so "only topology matters"
//! holds by construction. Closed wire loops with no endpoints are counted in
//! `loops`.

pub(crate) mod iso;
mod json;
mod parse;
mod print;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ring::{Dyadic, PhaseK, RingElt};

pub use iso::iso_equal;
pub use json::{from_json, to_json, JsonDiagram};
pub use parse::{parse, ParseError};
pub use print::print;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Calculus {
    Zx,
    Zw,
}

impl fmt::Display for Calculus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Calculus::Zx => write!(f, "zx"),
            Calculus::Zw => write!(f, "zw"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum NodeKind {
    ZSpider(PhaseK),
    XSpider(PhaseK),
    Hadamard,
    Triangle,
    TriangleInv,
    LambdaBox(Dyadic),
    GreenBox(RingElt),
    RedBox(RingElt),
    ZwWhite(RingElt),
    ZwBlackPi,
    ZwCross,
    ZwW,
}

/// How a node's ports may be permuted without changing its tensor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PortSymmetry {
    /// Every leg is interchangeable.
    Full,
    /// Inputs are interchangeable among themselves, outputs likewise.
    Sides,
    /// Each port is distinguished.
    None,
}

impl NodeKind {
    pub fn calculus(&self) -> Calculus {
        match self {
            NodeKind::ZwWhite(_) | NodeKind::ZwBlackPi | NodeKind::ZwCross | NodeKind::ZwW => Calculus::Zw,
            _ => Calculus::Zx,
        }
    }

    pub fn symmetry(&self) -> PortSymmetry {
        match self {
            NodeKind::Triangle | NodeKind::TriangleInv | NodeKind::ZwW => PortSymmetry::Sides,
            NodeKind::ZwCross => PortSymmetry::None,
            _ => PortSymmetry::Full,
        }
    }

    /// Fixed `(inputs, outputs)` arity, if the kind has one.
    pub fn fixed_arity(&self) -> Option<(usize, usize)> {
        match self {
            NodeKind::Hadamard | NodeKind::Triangle | NodeKind::TriangleInv | NodeKind::LambdaBox(_) | NodeKind::ZwBlackPi => Some((1, 1)),
            NodeKind::ZwCross => Some((2, 2)),
            _ => None,
        }
    }

    /// Whether the kind's tensor is unchanged when inputs and outputs swap
    /// roles. Only the triangles fail this.
    pub fn flip_invariant(&self) -> bool {
        !matches!(self, NodeKind::Triangle | NodeKind::TriangleInv)
    }

    /// Short tag used for ordering and diagnostics.
    pub fn tag(&self) -> &'static str {
        match self {
            NodeKind::ZSpider(_) => "Z",
            NodeKind::XSpider(_) => "X",
            NodeKind::Hadamard => "H",
            NodeKind::Triangle => "T",
            NodeKind::TriangleInv => "Tinv",
            NodeKind::LambdaBox(_) => "L",
            NodeKind::GreenBox(_) => "Zbox",
            NodeKind::RedBox(_) => "Xbox",
            NodeKind::ZwWhite(_) => "W",
            NodeKind::ZwBlackPi => "bpi",
            NodeKind::ZwCross => "cross",
            NodeKind::ZwW => "wnode",
        }
    }

    /// Parameter rendered as text, if any.
    pub fn param_text(&self) -> Option<String> {
        match self {
            NodeKind::ZSpider(k) | NodeKind::XSpider(k) => Some(k.to_string()),
            NodeKind::LambdaBox(l) => Some(l.to_string()),
            NodeKind::GreenBox(a) | NodeKind::RedBox(a) | NodeKind::ZwWhite(a) => Some(a.to_string()),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Node {
    pub kind: NodeKind,
    pub n_in: usize,
    pub n_out: usize,
}

impl Node {
    pub fn new(kind: NodeKind, n_in: usize, n_out: usize) -> Self {
        Node { kind, n_in, n_out }
    }

    pub fn degree(&self) -> usize {
        self.n_in + self.n_out
    }

    /// Port class for matching: ports in the same class are interchangeable.
    pub fn port_class(&self, port: usize) -> usize {
        match self.kind.symmetry() {
            PortSymmetry::Full => 0,
            PortSymmetry::Sides => usize::from(port >= self.n_in),
            PortSymmetry::None => port,
        }
    }
}

pub type NodeId = u32;

/// An edge endpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Port {
    Input(usize),
    Output(usize),
    /// Port `index` of a node: `0..n_in` are inputs, `n_in..` outputs.
    Node(NodeId, usize),
}

impl Port {
    pub fn node(&self) -> Option<NodeId> {
        match self {
            Port::Node(n, _) => Some(*n),
            _ => None,
        }
    }

    pub fn is_boundary(&self) -> bool {
        !matches!(self, Port::Node(..))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("arity mismatch: {0} outputs composed onto {1} inputs")]
    Arity(usize, usize),
    #[error("cannot combine a {0} diagram with a {1} diagram")]
    Calculus(Calculus, Calculus),
    #[error("invalid diagram: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Arity { node: NodeId, expected: (usize, usize), found: (usize, usize) },
    Calculus { node: NodeId, kind: Calculus },
    UnusedPort(Port),
    ReusedPort(Port),
    UnknownPort(Port),
    NegativeLambda(NodeId),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Arity { node, expected, found } => {
                write!(f, "node {node}: arity {found:?}, expected {expected:?}")
            }
            Violation::Calculus { node, kind } => write!(f, "node {node}: {kind} node in foreign diagram"),
            Violation::UnusedPort(p) => write!(f, "dangling port {p:?}"),
            Violation::ReusedPort(p) => write!(f, "port {p:?} used more than once"),
            Violation::UnknownPort(p) => write!(f, "edge refers to unknown port {p:?}"),
            Violation::NegativeLambda(n) => write!(f, "node {n}: negative lambda"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagram {
    pub calculus: Calculus,
    pub nodes: BTreeMap<NodeId, Node>,
    pub edges: Vec<(Port, Port)>,
    pub n_inputs: usize,
    pub n_outputs: usize,
    /// Closed wire loops, each worth a factor of 2.
    pub loops: usize,
}

impl Diagram {
    pub fn empty(calculus: Calculus) -> Self {
        Diagram { calculus, nodes: BTreeMap::new(), edges: Vec::new(), n_inputs: 0, n_outputs: 0, loops: 0 }
    }

    pub fn identity(calculus: Calculus, n: usize) -> Self {
        let mut d = Diagram::empty(calculus);
        d.n_inputs = n;
        d.n_outputs = n;
        d.edges = (0..n).map(|i| (Port::Input(i), Port::Output(i))).collect();
        d
    }

    /// A single node with its ports wired to the boundary in order.
    pub fn node(kind: NodeKind, n_in: usize, n_out: usize) -> Self {
        let mut d = Diagram::empty(kind.calculus());
        d.nodes.insert(0, Node::new(kind, n_in, n_out));
        d.n_inputs = n_in;
        d.n_outputs = n_out;
        d.edges.extend((0..n_in).map(|i| (Port::Input(i), Port::Node(0, i))));
        d.edges.extend((0..n_out).map(|j| (Port::Node(0, n_in + j), Port::Output(j))));
        d
    }

    pub fn swap(calculus: Calculus) -> Self {
        let mut d = Diagram::empty(calculus);
        d.n_inputs = 2;
        d.n_outputs = 2;
        d.edges = vec![(Port::Input(0), Port::Output(1)), (Port::Input(1), Port::Output(0))];
        d
    }

    /// Wire `i` at the top goes to position `perm[i]` at the bottom.
    pub fn permutation(calculus: Calculus, perm: &[usize]) -> Self {
        let mut d = Diagram::empty(calculus);
        d.n_inputs = perm.len();
        d.n_outputs = perm.len();
        d.edges = perm.iter().enumerate().map(|(i, &p)| (Port::Input(i), Port::Output(p))).collect();
        d
    }

    pub fn cap(calculus: Calculus) -> Self {
        let mut d = Diagram::empty(calculus);
        d.n_outputs = 2;
        d.edges = vec![(Port::Output(0), Port::Output(1))];
        d
    }

    pub fn cup(calculus: Calculus) -> Self {
        let mut d = Diagram::empty(calculus);
        d.n_inputs = 2;
        d.edges = vec![(Port::Input(0), Port::Input(1))];
        d
    }

    pub fn z(n: usize, m: usize, k: i64) -> Self {
        Diagram::node(NodeKind::ZSpider(PhaseK::new(k)), n, m)
    }

    pub fn x(n: usize, m: usize, k: i64) -> Self {
        Diagram::node(NodeKind::XSpider(PhaseK::new(k)), n, m)
    }

    pub fn is_scalar(&self) -> bool {
        self.n_inputs == 0 && self.n_outputs == 0
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Boundary wires plus node legs.
    pub fn wire_count(&self) -> usize {
        self.edges.len()
    }

    fn compatible(&self, other: &Diagram) -> Result<Calculus, DiagramError> {
        if self.calculus == other.calculus || other.nodes.is_empty() {
            Ok(self.calculus)
        } else if self.nodes.is_empty() {
            Ok(other.calculus)
        } else {
            Err(DiagramError::Calculus(self.calculus, other.calculus))
        }
    }

    fn next_id(&self) -> NodeId {
        self.nodes.keys().next_back().map_or(0, |k| k + 1)
    }

    /// Sequential composition: `first` on top, `second` below.
    pub fn compose(first: &Diagram, second: &Diagram) -> Result<Diagram, DiagramError> {
        if first.n_outputs != second.n_inputs {
            return Err(DiagramError::Arity(first.n_outputs, second.n_inputs));
        }
        let calculus = first.compatible(second)?;
        let offset = first.next_id();
        let mut nodes = first.nodes.clone();
        for (id, n) in &second.nodes {
            nodes.insert(id + offset, n.clone());
        }
        // first's outputs and second's inputs become junctions
        let mut raw: Vec<(End, End)> = Vec::with_capacity(first.edges.len() + second.edges.len());
        for &(a, b) in &first.edges {
            let map = |p: Port| match p {
                Port::Output(j) => End::Junction(j),
                other => End::Real(other),
            };
            raw.push((map(a), map(b)));
        }
        for &(a, b) in &second.edges {
            let map = |p: Port| match p {
                Port::Input(i) => End::Junction(i),
                Port::Node(n, k) => End::Real(Port::Node(n + offset, k)),
                other => End::Real(other),
            };
            raw.push((map(a), map(b)));
        }
        let (edges, loops) = resolve_junctions(raw);
        Ok(Diagram { calculus, nodes, edges, n_inputs: first.n_inputs, n_outputs: second.n_outputs, loops: first.loops + second.loops + loops })
    }

    /// Parallel composition, `left` occupying the first boundary positions.
    pub fn tensor(left: &Diagram, right: &Diagram) -> Result<Diagram, DiagramError> {
        let calculus = left.compatible(right)?;
        let offset = left.next_id();
        let mut nodes = left.nodes.clone();
        for (id, n) in &right.nodes {
            nodes.insert(id + offset, n.clone());
        }
        let shift = |p: Port| match p {
            Port::Input(i) => Port::Input(i + left.n_inputs),
            Port::Output(j) => Port::Output(j + left.n_outputs),
            Port::Node(n, k) => Port::Node(n + offset, k),
        };
        let mut edges = left.edges.clone();
        edges.extend(right.edges.iter().map(|&(a, b)| (shift(a), shift(b))));
        Ok(Diagram {
            calculus,
            nodes,
            edges,
            n_inputs: left.n_inputs + right.n_inputs,
            n_outputs: left.n_outputs + right.n_outputs,
            loops: left.loops + right.loops,
        })
    }

    /// Tensor of many diagrams; the empty list gives the empty diagram.
    pub fn tensor_all<'a>(calculus: Calculus, parts: impl IntoIterator<Item = &'a Diagram>) -> Result<Diagram, DiagramError> {
        parts.into_iter().try_fold(Diagram::empty(calculus), |acc, d| Diagram::tensor(&acc, d))
    }

    /// Composition of many diagrams in order, top to bottom.
    pub fn compose_all<'a>(parts: impl IntoIterator<Item = &'a Diagram>) -> Result<Diagram, DiagramError> {
        let mut it = parts.into_iter();
        let first = it.next().cloned().ok_or_else(|| DiagramError::Invalid("nothing to compose".into()))?;
        it.try_fold(first, |acc, d| Diagram::compose(&acc, d))
    }

    /// Upside-down diagram: inputs and outputs exchange roles. Nodes whose
    /// tensors are symmetric under the exchange are re-oriented; triangles
    /// keep their physical ports, so their orientation flips relative to
    /// the new boundary.
    pub fn flip_vertical(&self) -> Diagram {
        let nodes: BTreeMap<NodeId, Node> = self
            .nodes
            .iter()
            .map(|(&id, n)| {
                let n2 = if n.kind.flip_invariant() { Node::new(n.kind.clone(), n.n_out, n.n_in) } else { n.clone() };
                (id, n2)
            })
            .collect();
        let remap = |p: Port| match p {
            Port::Input(i) => Port::Output(i),
            Port::Output(j) => Port::Input(j),
            Port::Node(id, k) => {
                let n = &self.nodes[&id];
                if n.kind.flip_invariant() {
                    // old outputs become the first ports
                    let k2 = if k >= n.n_in { k - n.n_in } else { n.n_out + k };
                    Port::Node(id, k2)
                } else {
                    Port::Node(id, k)
                }
            }
        };
        Diagram {
            calculus: self.calculus,
            nodes,
            edges: self.edges.iter().map(|&(a, b)| (remap(a), remap(b))).collect(),
            n_inputs: self.n_outputs,
            n_outputs: self.n_inputs,
            loops: self.loops,
        }
    }

    /// Node ids renumbered to `0..n` in their current order.
    pub fn compacted(&self) -> Diagram {
        let map: BTreeMap<NodeId, NodeId> = self.nodes.keys().enumerate().map(|(i, &k)| (k, i as NodeId)).collect();
        let remap = |p: Port| match p {
            Port::Node(n, k) => Port::Node(map[&n], k),
            other => other,
        };
        let mut edges: Vec<(Port, Port)> = self
            .edges
            .iter()
            .map(|&(a, b)| {
                let (a, b) = (remap(a), remap(b));
                if a <= b {
                    (a, b)
                } else {
                    (b, a)
                }
            })
            .collect();
        edges.sort();
        Diagram {
            calculus: self.calculus,
            nodes: self.nodes.values().cloned().enumerate().map(|(i, n)| (i as NodeId, n)).collect(),
            edges,
            n_inputs: self.n_inputs,
            n_outputs: self.n_outputs,
            loops: self.loops,
        }
    }

    /// The partner of every port, or an error when the edge set is not a
    /// perfect matching.
    pub fn partner_map(&self) -> Result<BTreeMap<Port, Port>, Vec<Violation>> {
        let mut map = BTreeMap::new();
        let mut errs = Vec::new();
        for &(a, b) in &self.edges {
            for (p, q) in [(a, b), (b, a)] {
                if map.insert(p, q).is_some() {
                    errs.push(Violation::ReusedPort(p));
                }
            }
        }
        if errs.is_empty() {
            Ok(map)
        } else {
            Err(errs)
        }
    }

    /// Structural invariants; an empty list means the diagram is valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for (&id, n) in &self.nodes {
            if let Some(expected) = n.kind.fixed_arity() {
                let ok = (n.n_in, n.n_out) == expected || (n.kind.flip_invariant() && (n.n_out, n.n_in) == expected);
                if !ok {
                    out.push(Violation::Arity { node: id, expected, found: (n.n_in, n.n_out) });
                }
            }
            if n.kind.calculus() != self.calculus {
                out.push(Violation::Calculus { node: id, kind: n.kind.calculus() });
            }
            if let NodeKind::LambdaBox(l) = &n.kind {
                if l.is_negative() {
                    out.push(Violation::NegativeLambda(id));
                }
            }
        }
        let mut seen: BTreeMap<Port, usize> = BTreeMap::new();
        for &(a, b) in &self.edges {
            for p in [a, b] {
                let known = match p {
                    Port::Input(i) => i < self.n_inputs,
                    Port::Output(j) => j < self.n_outputs,
                    Port::Node(n, k) => self.nodes.get(&n).is_some_and(|node| k < node.degree()),
                };
                if !known {
                    out.push(Violation::UnknownPort(p));
                }
                *seen.entry(p).or_default() += 1;
            }
        }
        for (&p, &c) in &seen {
            if c > 1 {
                out.push(Violation::ReusedPort(p));
            }
        }
        let all_ports = (0..self.n_inputs)
            .map(Port::Input)
            .chain((0..self.n_outputs).map(Port::Output))
            .chain(self.nodes.iter().flat_map(|(&id, n)| (0..n.degree()).map(move |k| Port::Node(id, k))));
        for p in all_ports {
            if !seen.contains_key(&p) {
                out.push(Violation::UnusedPort(p));
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }
}

/// Edge endpoint during gluing: a real port or a temporary junction that
/// will be spliced out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) enum End {
    Real(Port),
    Junction(usize),
}

/// Splices out junctions (each appearing exactly twice). Returns the edges
/// between real ports and the number of closed cycles made only of
/// junctions.
pub(crate) fn resolve_junctions(raw: Vec<(End, End)>) -> (Vec<(Port, Port)>, usize) {
    use std::collections::HashMap;
    let mut at: HashMap<usize, Vec<(usize, usize)>> = HashMap::new();
    for (e, &(a, b)) in raw.iter().enumerate() {
        if let End::Junction(j) = a {
            at.entry(j).or_default().push((e, 0));
        }
        if let End::Junction(j) = b {
            at.entry(j).or_default().push((e, 1));
        }
    }
    let end_of = |e: usize, side: usize| if side == 0 { raw[e].0 } else { raw[e].1 };
    let mut used = vec![false; raw.len()];
    let mut edges = Vec::new();

    // walk from edge `e`, leaving through `side`, until a real port
    let walk = |mut e: usize, mut side: usize, used: &mut Vec<bool>| -> Option<Port> {
        loop {
            match end_of(e, side) {
                End::Real(p) => return Some(p),
                End::Junction(j) => {
                    let next = at[&j].iter().copied().find(|&(e2, s2)| !(e2 == e && s2 == side))?;
                    let (e2, s2) = next;
                    if used[e2] {
                        return None;
                    }
                    used[e2] = true;
                    e = e2;
                    side = 1 - s2;
                }
            }
        }
    };

    for e in 0..raw.len() {
        if used[e] {
            continue;
        }
        let (a, b) = raw[e];
        match (a, b) {
            (End::Real(p), End::Real(q)) => {
                used[e] = true;
                edges.push((p, q));
            }
            (End::Real(p), End::Junction(_)) => {
                used[e] = true;
                if let Some(q) = walk(e, 1, &mut used) {
                    edges.push((p, q));
                }
            }
            (End::Junction(_), End::Real(q)) => {
                used[e] = true;
                if let Some(p) = walk(e, 0, &mut used) {
                    edges.push((p, q));
                }
            }
            _ => {}
        }
    }
    // remaining edges form pure junction cycles
    let mut loops = 0;
    for e in 0..raw.len() {
        if used[e] {
            continue;
        }
        loops += 1;
        used[e] = true;
        let _ = walk(e, 1, &mut used);
    }
    (edges, loops)
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", print(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cap_then_cup_is_a_loop() {
        let d = Diagram::compose(&Diagram::cap(Calculus::Zx), &Diagram::cup(Calculus::Zx)).unwrap();
        assert!(d.is_scalar());
        assert_eq!(d.loops, 1);
        assert!(d.edges.is_empty());
    }

    #[test]
    fn compose_spiders_connects_them() {
        let d = Diagram::compose(&Diagram::z(1, 1, 1), &Diagram::z(1, 1, 2)).unwrap();
        assert_eq!(d.node_count(), 2);
        assert!(d.edges.contains(&(Port::Node(0, 1), Port::Node(1, 0))));
        assert!(d.is_valid());
    }

    #[test]
    fn compose_arity_and_calculus_errors() {
        let e = Diagram::compose(&Diagram::z(1, 2, 0), &Diagram::z(1, 1, 0));
        assert_eq!(e, Err(DiagramError::Arity(2, 1)));
        let w = Diagram::node(NodeKind::ZwBlackPi, 1, 1);
        assert!(matches!(Diagram::compose(&Diagram::z(1, 1, 0), &w), Err(DiagramError::Calculus(..))));
        // a bare wire adopts the other calculus
        assert!(Diagram::compose(&Diagram::identity(Calculus::Zx, 1), &w).is_ok());
    }

    #[test]
    fn tensor_orders_boundary() {
        let d = Diagram::tensor(&Diagram::z(1, 0, 0), &Diagram::z(2, 1, 0)).unwrap();
        assert_eq!(d.n_inputs, 3);
        assert!(d.edges.contains(&(Port::Input(1), Port::Node(1, 0))));
    }

    #[test]
    fn validate_reports_violations() {
        let h3 = Diagram::node(NodeKind::Hadamard, 1, 2);
        assert!(matches!(h3.validate()[0], Violation::Arity { .. }));
        let mut mixed = Diagram::z(1, 1, 0);
        mixed.nodes.insert(5, Node::new(NodeKind::ZwW, 0, 0));
        assert!(mixed.validate().iter().any(|v| matches!(v, Violation::Calculus { .. })));
        assert!(Diagram::z(2, 3, 1).validate().is_empty());
        let mut dangling = Diagram::z(1, 1, 0);
        dangling.edges.pop();
        assert!(dangling.validate().iter().any(|v| matches!(v, Violation::UnusedPort(_))));
    }

    #[test]
    fn flip_swaps_boundaries() {
        let cap = Diagram::cap(Calculus::Zx);
        assert_eq!(cap.flip_vertical(), Diagram::cup(Calculus::Zx));
        let z = Diagram::z(2, 1, 3).flip_vertical();
        assert_eq!((z.n_inputs, z.n_outputs), (1, 2));
        assert_eq!(z.nodes[&0].n_in, 1);
        assert!(z.is_valid());
    }
}
