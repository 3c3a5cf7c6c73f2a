//! Matching rule left-hand sides inside host diagrams and replacing them.
//!
//! A match maps every pattern node to a distinct host node of the same
//! kind, and every pattern port to a host port of the same class, so that
//! pattern edges land on host edges. Pattern nodes have the same degree as
//! their images, so no host wire can enter the matched region unnoticed:
//! every image port is either an internal pattern edge or a boundary slot
//! of the pattern (the frontier).

pub mod script;
pub mod search;

use std::collections::{BTreeMap, BTreeSet};

use crate::diagram::{iso::signature, resolve_junctions, Diagram, End, NodeId, Port};
use crate::rules::RuleInstance;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Match {
    /// Pattern node to host node.
    pub nodes: BTreeMap<NodeId, NodeId>,
    /// Pattern node port to host node port.
    pub ports: BTreeMap<Port, Port>,
    /// For each pattern boundary slot (inputs, then outputs) the host port
    /// on the far side of the frontier edge.
    pub frontier: Vec<Port>,
}

impl Match {
    pub fn image(&self) -> BTreeSet<NodeId> {
        self.nodes.values().copied().collect()
    }
}

/// Host port opposite each port.
fn partners(d: &Diagram) -> BTreeMap<Port, Port> {
    let mut m = BTreeMap::new();
    for &(a, b) in &d.edges {
        m.insert(a, b);
        m.insert(b, a);
    }
    m
}

/// Pattern-side boundary slot index of a boundary port.
fn slot(p: &Diagram, port: Port) -> Option<usize> {
    match port {
        Port::Input(i) => Some(i),
        Port::Output(j) => Some(p.n_inputs + j),
        Port::Node(..) => None,
    }
}

fn matchable(pattern: &Diagram) -> bool {
    !pattern.nodes.is_empty() && pattern.edges.iter().all(|(a, b)| !(a.is_boundary() && b.is_boundary()))
}

struct Search<'a> {
    pat: &'a Diagram,
    host: &'a Diagram,
    pp: BTreeMap<Port, Port>,
    hp: BTreeMap<Port, Port>,
    order: Vec<NodeId>,
    nodes: BTreeMap<NodeId, NodeId>,
    used: BTreeSet<NodeId>,
    ports: BTreeMap<Port, Port>,
    out: BTreeSet<Match>,
}

impl Search<'_> {
    fn run(&mut self, i: usize) {
        let Some(&u) = self.order.get(i) else {
            self.finish();
            return;
        };
        let sig = signature(self.pat, u);
        let forced = self.forced_image(u);
        let candidates: Vec<NodeId> = match forced {
            Some(v) => vec![v],
            None => self.host.nodes.keys().copied().collect(),
        };
        for v in candidates {
            if self.used.contains(&v) || signature(self.host, v) != sig {
                continue;
            }
            self.nodes.insert(u, v);
            self.used.insert(v);
            self.assign_ports(u, v, 0, i);
            self.nodes.remove(&u);
            self.used.remove(&v);
        }
    }

    /// The host node a pattern node must map to, if a mapped neighbour fixes it.
    fn forced_image(&self, u: NodeId) -> Option<NodeId> {
        let deg = self.pat.nodes[&u].degree();
        for k in 0..deg {
            let other = self.pp[&Port::Node(u, k)];
            if let Port::Node(w, _) = other {
                if w != u {
                    if let Some(hport) = self.ports.get(&other) {
                        return self.hp[hport].node();
                    }
                }
            }
        }
        None
    }

    fn assign_ports(&mut self, u: NodeId, v: NodeId, k: usize, i: usize) {
        let pnode = &self.pat.nodes[&u];
        if k == pnode.degree() {
            self.run(i + 1);
            return;
        }
        let hnode = &self.host.nodes[&v];
        let pport = Port::Node(u, k);
        let class = pnode.port_class(k);
        for hk in 0..hnode.degree() {
            let hport = Port::Node(v, hk);
            if hnode.port_class(hk) != class || self.ports.values().any(|p| *p == hport) {
                continue;
            }
            // an edge to an already-placed pattern port must land on the host edge
            let other = self.pp[&pport];
            let ok = match other {
                Port::Node(w, _) if self.ports.contains_key(&other) || (w == u && other < pport) => {
                    self.ports.get(&other).is_some_and(|ho| self.hp[ho] == hport)
                }
                Port::Node(w, _) if w == u => true,
                Port::Node(..) => true,
                _ => true,
            };
            if !ok {
                continue;
            }
            self.ports.insert(pport, hport);
            self.assign_ports(u, v, k + 1, i);
            self.ports.remove(&pport);
        }
    }

    fn finish(&mut self) {
        // every internal pattern edge must be a host edge
        for &(a, b) in &self.pat.edges {
            if let (Some(ha), Some(hb)) = (self.ports.get(&a), self.ports.get(&b)) {
                if self.hp[ha] != *hb {
                    return;
                }
            }
        }
        let mut frontier = vec![Port::Input(usize::MAX); self.pat.n_inputs + self.pat.n_outputs];
        for &(a, b) in &self.pat.edges {
            for (x, y) in [(a, b), (b, a)] {
                if let (Some(s), Port::Node(..)) = (slot(self.pat, x), y) {
                    frontier[s] = self.hp[&self.ports[&y]];
                }
            }
        }
        self.out.insert(Match { nodes: self.nodes.clone(), ports: self.ports.clone(), frontier });
    }
}

/// Pattern nodes in an order where each node after the first of its
/// component is adjacent to an earlier one.
fn pattern_order(pat: &Diagram, pp: &BTreeMap<Port, Port>) -> Vec<NodeId> {
    let mut order = Vec::new();
    let mut seen = BTreeSet::new();
    for &start in pat.nodes.keys() {
        if !seen.insert(start) {
            continue;
        }
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for k in 0..pat.nodes[&u].degree() {
                if let Port::Node(w, _) = pp[&Port::Node(u, k)] {
                    if seen.insert(w) {
                        queue.push_back(w);
                    }
                }
            }
        }
    }
    order
}

/// All embeddings of `pattern` into `host`, in a deterministic order.
pub fn find_pattern(pattern: &Diagram, host: &Diagram) -> Vec<Match> {
    if !matchable(pattern) || host.loops < pattern.loops {
        return Vec::new();
    }
    let pp = partners(pattern);
    let mut s = Search {
        pat: pattern,
        host,
        hp: partners(host),
        order: pattern_order(pattern, &pp),
        pp,
        nodes: BTreeMap::new(),
        used: BTreeSet::new(),
        ports: BTreeMap::new(),
        out: BTreeSet::new(),
    };
    s.run(0);
    let mut v: Vec<Match> = s.out.into_iter().collect();
    v.sort_by(|a, b| (a.image(), &a.nodes, &a.frontier).cmp(&(b.image(), &b.nodes, &b.frontier)));
    dedup_by_frontier(v)
}

/// Port assignments that give the same node map and frontier are the same
/// embedding for rewriting purposes.
fn dedup_by_frontier(v: Vec<Match>) -> Vec<Match> {
    let mut seen = BTreeSet::new();
    v.into_iter().filter(|m| seen.insert((m.nodes.clone(), m.frontier.clone()))).collect()
}

pub fn find_matches(rule: &RuleInstance, host: &Diagram) -> Vec<Match> {
    if rule.lhs.calculus != host.calculus && !rule.lhs.nodes.is_empty() && !host.nodes.is_empty() {
        return Vec::new();
    }
    find_pattern(&rule.lhs, host)
}

/// Replaces the matched region of `host` by `replacement`, which must have
/// the pattern's boundary.
pub fn apply_replacement(host: &Diagram, pattern: &Diagram, m: &Match, replacement: &Diagram) -> Diagram {
    let image = m.image();
    // image port -> pattern slot, for ports facing the frontier
    let mut slot_of: BTreeMap<Port, usize> = BTreeMap::new();
    let pp = partners(pattern);
    for (pport, hport) in &m.ports {
        if let Some(s) = slot(pattern, pp[pport]) {
            slot_of.insert(*hport, s);
        }
    }
    let in_image = |p: &Port| p.node().is_some_and(|n| image.contains(&n));
    let offset = host.nodes.keys().next_back().map_or(0, |k| k + 1);
    let mut raw: Vec<(End, End)> = Vec::new();
    for &(a, b) in &host.edges {
        match (in_image(&a), in_image(&b)) {
            (false, false) => raw.push((End::Real(a), End::Real(b))),
            _ => {
                let map = |p: Port| match slot_of.get(&p) {
                    Some(&s) => Some(End::Junction(s)),
                    None if in_image(&p) => None,
                    None => Some(End::Real(p)),
                };
                if let (Some(x), Some(y)) = (map(a), map(b)) {
                    raw.push((x, y));
                }
            }
        }
    }
    let n_in = replacement.n_inputs;
    for &(a, b) in &replacement.edges {
        let map = |p: Port| match p {
            Port::Input(i) => End::Junction(i),
            Port::Output(j) => End::Junction(n_in + j),
            Port::Node(n, k) => End::Real(Port::Node(n + offset, k)),
        };
        raw.push((map(a), map(b)));
    }
    let (edges, loops) = resolve_junctions(raw);
    let mut nodes = host.nodes.clone();
    for n in &image {
        nodes.remove(n);
    }
    for (id, n) in &replacement.nodes {
        nodes.insert(id + offset, n.clone());
    }
    let calculus = if nodes.is_empty() { host.calculus } else { nodes.values().next().unwrap().kind.calculus() };
    Diagram { calculus, nodes, edges, n_inputs: host.n_inputs, n_outputs: host.n_outputs, loops: host.loops - pattern.loops + replacement.loops + loops }
}

pub fn apply(host: &Diagram, rule: &RuleInstance, m: &Match) -> Diagram {
    apply_replacement(host, &rule.lhs, m, &rule.rhs)
}

/// Exhaustive oracle: tries every injective node map and every port
/// bijection. Only for small hosts.
pub fn brute_force_matches(pattern: &Diagram, host: &Diagram) -> Vec<(BTreeMap<NodeId, NodeId>, Vec<Port>)> {
    if !matchable(pattern) || host.loops < pattern.loops {
        return Vec::new();
    }
    let pnodes: Vec<NodeId> = pattern.nodes.keys().copied().collect();
    let hnodes: Vec<NodeId> = host.nodes.keys().copied().collect();
    let pp = partners(pattern);
    let hp = partners(host);
    let mut found = BTreeSet::new();
    let mut map: Vec<NodeId> = Vec::new();
    fn perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in perms(n - 1) {
            for i in 0..=p.len() {
                let mut q = p.clone();
                q.insert(i, n - 1);
                out.push(q);
            }
        }
        out
    }
    fn node_maps(k: usize, pn: &[NodeId], hn: &[NodeId], map: &mut Vec<NodeId>, out: &mut Vec<Vec<NodeId>>) {
        if k == pn.len() {
            out.push(map.clone());
            return;
        }
        for &h in hn {
            if !map.contains(&h) {
                map.push(h);
                node_maps(k + 1, pn, hn, map, out);
                map.pop();
            }
        }
    }
    let mut all_maps = Vec::new();
    node_maps(0, &pnodes, &hnodes, &mut map, &mut all_maps);
    for nm in all_maps {
        let ok = pnodes.iter().zip(&nm).all(|(&u, &v)| {
            let (a, b) = (&pattern.nodes[&u], &host.nodes[&v]);
            a.kind == b.kind && a.degree() == b.degree()
        });
        if !ok {
            continue;
        }
        // product of per-node port permutations
        let choices: Vec<Vec<Vec<usize>>> = pnodes.iter().map(|u| perms(pattern.nodes[u].degree())).collect();
        let mut idx = vec![0usize; pnodes.len()];
        'outer: loop {
            let mut ports = BTreeMap::new();
            let mut valid = true;
            for (t, (&u, &v)) in pnodes.iter().zip(&nm).enumerate() {
                let perm = &choices[t][idx[t]];
                for (k, &hk) in perm.iter().enumerate() {
                    if pattern.nodes[&u].port_class(k) != host.nodes[&v].port_class(hk) {
                        valid = false;
                    }
                    ports.insert(Port::Node(u, k), Port::Node(v, hk));
                }
            }
            if valid {
                let edges_ok = pattern.edges.iter().all(|(a, b)| match (ports.get(a), ports.get(b)) {
                    (Some(x), Some(y)) => hp[x] == *y,
                    _ => true,
                });
                if edges_ok {
                    let mut frontier = vec![Port::Input(usize::MAX); pattern.n_inputs + pattern.n_outputs];
                    for (pport, hport) in &ports {
                        if let Some(s) = slot(pattern, pp[pport]) {
                            frontier[s] = hp[hport];
                        }
                    }
                    let node_map: BTreeMap<NodeId, NodeId> = pnodes.iter().copied().zip(nm.iter().copied()).collect();
                    found.insert((node_map, frontier));
                }
            }
            // next combination
            let mut t = 0;
            loop {
                if t == idx.len() {
                    break 'outer;
                }
                idx[t] += 1;
                if idx[t] < choices[t].len() {
                    break;
                }
                idx[t] = 0;
                t += 1;
            }
        }
    }
    found.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{iso_equal, parse};
    use crate::rules::{Bindings, Catalog};
    use crate::semantics::interpret;

    fn bind(pairs: &[(&str, i64)]) -> Bindings {
        pairs.iter().map(|(k, v)| (k.to_string(), crate::ring::Dyadic::from_int(*v))).collect()
    }

    fn s1(a: i64, b: i64) -> RuleInstance {
        let c = Catalog::builtin();
        c.get("S1").unwrap().instantiate(&bind(&[("n", 1), ("m", 0), ("p", 0), ("q", 1), ("a", a), ("b", b)]), false).unwrap()
    }

    #[test]
    fn fusion_match_and_apply() {
        let host = parse("Z(1,1;1) ; Z(1,1;2)").unwrap();
        let r = s1(1, 2);
        let ms = find_matches(&r, &host);
        assert_eq!(ms.len(), 1);
        let out = apply(&host, &r, &ms[0]);
        assert!(out.is_valid());
        assert!(iso_equal(&out, &parse("Z(1,1;3)").unwrap()));
        assert_eq!(interpret(&out).unwrap(), interpret(&host).unwrap());
        assert!(find_matches(&r, &parse("H ; H").unwrap()).is_empty());
    }

    #[test]
    fn disjoint_occurrences() {
        let host = parse("(Z(1,1;1) ; Z(1,1;2)) * (Z(1,1;1) ; Z(1,1;2))").unwrap();
        assert_eq!(find_matches(&s1(1, 2), &host).len(), 2);
    }

    #[test]
    fn inverse_application_restores() {
        let host = parse("H ; Z(1,1;1) ; Z(1,1;2) ; X(1,2;3)").unwrap();
        let r = s1(1, 2);
        let m = &find_matches(&r, &host)[0];
        let mid = apply(&host, &r, m);
        let back = r.reversed();
        // the fused spider's legs can be swapped, which orders the phases
        let ms = find_matches(&back, &mid);
        assert_eq!(ms.len(), 2);
        let outs: Vec<Diagram> = ms.iter().map(|m| apply(&mid, &back, m)).collect();
        assert_eq!(outs.iter().filter(|d| iso_equal(d, &host)).count(), 1);
        for d in &outs {
            assert_eq!(interpret(d).unwrap(), interpret(&host).unwrap());
        }
    }

    #[test]
    fn agrees_with_brute_force() {
        let pat = parse("Z(1,2;0) ; (T * id) ; Z(2,1;0)").unwrap();
        for host in ["Z(1,2;0) ; (T * id) ; Z(2,1;0)", "Z(1,2;0) ; (id * T) ; Z(2,1;0) ; H", "(Z(1,2;0) ; (T * T) ; Z(2,1;0)) * T"] {
            let h = parse(host).unwrap();
            let fast: BTreeSet<_> = find_pattern(&pat, &h).into_iter().map(|m| (m.nodes, m.frontier)).collect();
            let slow: BTreeSet<_> = brute_force_matches(&pat, &h).into_iter().collect();
            assert_eq!(fast, slow, "{host}");
        }
    }

    #[test]
    fn frontier_wired_to_itself() {
        // pattern boundary slots joined by a host wire
        let pat = parse("Z(1,1;0)").unwrap();
        let host = parse("cap ; (Z(1,1;0) * id) ; cup").unwrap();
        let ms = find_pattern(&pat, &host);
        assert_eq!(ms.len(), 2);
        for m in &ms {
            let out = apply_replacement(&host, &pat, m, &parse("id").unwrap());
            assert_eq!(out.loops, 1);
            assert!(out.nodes.is_empty());
        }
    }
}
