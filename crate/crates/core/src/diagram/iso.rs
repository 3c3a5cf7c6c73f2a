//! Labelled open-graph isomorphism with the boundary held fixed.

use std::collections::{BTreeMap, HashMap, HashSet};

use super::{Diagram, NodeId, NodeKind, Port, PortSymmetry};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) enum Vtx {
    In(usize),
    Out(usize),
    N(NodeId),
}

pub(crate) type Signature = (NodeKind, Vec<usize>);

/// Per-node view of a diagram with ports collapsed to classes.
pub(crate) struct Shape {
    pub adj: BTreeMap<NodeId, Vec<(usize, Vtx, usize)>>,
    pub sig: BTreeMap<NodeId, Signature>,
    pub bare: Vec<(Vtx, Vtx)>,
}

pub(crate) fn endpoint(d: &Diagram, p: Port) -> (Vtx, usize) {
    match p {
        Port::Input(i) => (Vtx::In(i), 0),
        Port::Output(j) => (Vtx::Out(j), 0),
        Port::Node(n, k) => (Vtx::N(n), d.nodes[&n].port_class(k)),
    }
}

pub(crate) fn signature(d: &Diagram, id: NodeId) -> Signature {
    let n = &d.nodes[&id];
    let counts = match n.kind.symmetry() {
        PortSymmetry::Full => vec![n.degree()],
        PortSymmetry::Sides => vec![n.n_in, n.n_out],
        PortSymmetry::None => vec![1; n.degree()],
    };
    (n.kind.clone(), counts)
}

impl Shape {
    pub fn of(d: &Diagram) -> Shape {
        let mut adj: BTreeMap<NodeId, Vec<(usize, Vtx, usize)>> = d.nodes.keys().map(|&k| (k, Vec::new())).collect();
        let mut bare = Vec::new();
        for &(a, b) in &d.edges {
            let (va, ca) = endpoint(d, a);
            let (vb, cb) = endpoint(d, b);
            if let Vtx::N(n) = va {
                adj.get_mut(&n).unwrap().push((ca, vb, cb));
            }
            if let Vtx::N(n) = vb {
                adj.get_mut(&n).unwrap().push((cb, va, ca));
            }
            if a.is_boundary() && b.is_boundary() {
                bare.push(if va <= vb { (va, vb) } else { (vb, va) });
            }
        }
        bare.sort();
        let sig = d.nodes.keys().map(|&k| (k, signature(d, k))).collect();
        Shape { adj, sig, bare }
    }
}

/// True when the two diagrams are the same labelled open graph up to a
/// renaming of nodes and of interchangeable ports.
pub fn iso_equal(a: &Diagram, b: &Diagram) -> bool {
    if a.n_inputs != b.n_inputs || a.n_outputs != b.n_outputs || a.loops != b.loops || a.nodes.len() != b.nodes.len() || a.edges.len() != b.edges.len() {
        return false;
    }
    let sa = Shape::of(a);
    let sb = Shape::of(b);
    if sa.bare != sb.bare {
        return false;
    }
    let mut count_a: HashMap<&Signature, usize> = HashMap::new();
    for s in sa.sig.values() {
        *count_a.entry(s).or_default() += 1;
    }
    for s in sb.sig.values() {
        match count_a.get_mut(s) {
            Some(c) if *c > 0 => *c -= 1,
            _ => return false,
        }
    }
    let order = search_order(&sa);
    let mut st = State { a: &sa, b: &sb, fwd: HashMap::new(), used: HashSet::new() };
    st.extend(&order, 0)
}

/// Nodes in breadth-first order from the boundary, so each new node tends
/// to have an already-placed neighbour.
fn search_order(s: &Shape) -> Vec<NodeId> {
    let mut order = Vec::new();
    let mut seen = HashSet::new();
    let mut queue = std::collections::VecDeque::new();
    let mut seeds: Vec<NodeId> = s.adj.iter().filter(|(_, es)| es.iter().any(|e| !matches!(e.1, Vtx::N(_)))).map(|(&k, _)| k).collect();
    seeds.extend(s.adj.keys().copied());
    for seed in seeds {
        if !seen.insert(seed) {
            continue;
        }
        queue.push_back(seed);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for &(_, v, _) in &s.adj[&u] {
                if let Vtx::N(w) = v {
                    if seen.insert(w) {
                        queue.push_back(w);
                    }
                }
            }
        }
    }
    order
}

struct State<'a> {
    a: &'a Shape,
    b: &'a Shape,
    fwd: HashMap<NodeId, NodeId>,
    used: HashSet<NodeId>,
}

impl State<'_> {
    fn extend(&mut self, order: &[NodeId], i: usize) -> bool {
        let Some(&u) = order.get(i) else { return true };
        let candidates: Vec<NodeId> = self.candidates(u);
        for v in candidates {
            if self.consistent(u, v) {
                self.fwd.insert(u, v);
                self.used.insert(v);
                if self.extend(order, i + 1) {
                    return true;
                }
                self.fwd.remove(&u);
                self.used.remove(&v);
            }
        }
        false
    }

    fn candidates(&self, u: NodeId) -> Vec<NodeId> {
        let sig = &self.a.sig[&u];
        let ok = |v: &NodeId| !self.used.contains(v) && &self.b.sig[v] == sig;
        // neighbours of an already-mapped neighbour, or of a boundary vertex
        for &(_, w, _) in &self.a.adj[&u] {
            let anchor = match w {
                Vtx::N(x) => self.fwd.get(&x).map(|&y| Vtx::N(y)),
                other => Some(other),
            };
            if let Some(anchor) = anchor {
                let mut out: Vec<NodeId> = match anchor {
                    Vtx::N(y) => self.b.adj[&y].iter().filter_map(|e| if let Vtx::N(z) = e.1 { Some(z) } else { None }).collect(),
                    bv => self.b.adj.iter().filter(|(_, es)| es.iter().any(|e| e.1 == bv)).map(|(&k, _)| k).collect(),
                };
                out.sort_unstable();
                out.dedup();
                out.retain(ok);
                return out;
            }
        }
        self.b.sig.keys().copied().filter(ok).collect()
    }

    fn consistent(&self, u: NodeId, v: NodeId) -> bool {
        let mut want: HashMap<(usize, Vtx, usize), isize> = HashMap::new();
        for &(cu, w, cw) in &self.a.adj[&u] {
            let t = match w {
                Vtx::N(x) if x == u => Some(Vtx::N(v)),
                Vtx::N(x) => self.fwd.get(&x).map(|&y| Vtx::N(y)),
                other => Some(other),
            };
            if let Some(t) = t {
                *want.entry((cu, t, cw)).or_default() += 1;
            }
        }
        for &(cv, w, cw) in &self.b.adj[&v] {
            let placed = match w {
                Vtx::N(y) => y == v || self.used.contains(&y),
                _ => true,
            };
            if placed {
                *want.entry((cv, w, cw)).or_default() -= 1;
            }
        }
        want.values().all(|&c| c == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse;

    fn p(s: &str) -> Diagram {
        parse(s).unwrap()
    }

    #[test]
    fn flip_of_spider_matches_parsed() {
        assert!(iso_equal(&p("Z(2,1;3)").flip_vertical(), &p("Z(1,2;3)")));
        assert!(iso_equal(&p("H ; Z(1,1;1)").flip_vertical(), &p("Z(1,1;1) ; H")));
    }

    #[test]
    fn symmetric_legs_ignore_order() {
        assert!(iso_equal(&p("swap ; Z(2,1;1)"), &p("Z(2,1;1)")));
        assert!(!iso_equal(&p("swap ; (T * id) ; Z(2,1;1)"), &p("(T * id) ; Z(2,1;1)")));
        assert!(iso_equal(&p("swap ; (T * id) ; Z(2,1;1)"), &p("(id * T) ; Z(2,1;1)")));
    }

    #[test]
    fn triangles_have_orientation() {
        assert!(!iso_equal(&p("T"), &p("Tt")));
        assert!(iso_equal(&p("Tt").flip_vertical(), &p("T")));
    }

    #[test]
    fn phases_and_wires_distinguish() {
        assert!(!iso_equal(&p("Z(1,1;1)"), &p("Z(1,1;2)")));
        assert!(!iso_equal(&p("swap"), &p("id * id")));
        assert!(!iso_equal(&p("cap ; cup"), &p("empty")));
        assert!(iso_equal(&p("cap ; cup"), &p("cap ; swap ; cup")));
    }

    #[test]
    fn wire_through_chain() {
        let a = p("Z(1,2;0) ; (Z(1,1;1) * Z(1,1;2)) ; Z(2,1;0)");
        let b = p("Z(1,2;0) ; (Z(1,1;2) * Z(1,1;1)) ; Z(2,1;0)");
        assert!(iso_equal(&a, &b));
    }
}
