//! Layered text rendering: caps, a permutation, one layer holding every
//! node, a permutation, cups. The output parses back to an isomorphic
//! diagram.

use std::collections::BTreeMap;

use super::{Diagram, Node, NodeId, NodeKind, Port};

pub fn atom_text(n: &Node) -> String {
    let (a, b) = (n.n_in, n.n_out);
    match &n.kind {
        NodeKind::ZSpider(k) => format!("Z({a},{b};{k})"),
        NodeKind::XSpider(k) => format!("X({a},{b};{k})"),
        NodeKind::GreenBox(r) => format!("Zbox({a},{b};{r})"),
        NodeKind::RedBox(r) => format!("Xbox({a},{b};{r})"),
        NodeKind::ZwWhite(r) => format!("W({a},{b};{r})"),
        NodeKind::ZwW => format!("wnode({a},{b})"),
        NodeKind::LambdaBox(l) => format!("L({l})"),
        NodeKind::Hadamard => "H".into(),
        NodeKind::Triangle => "T".into(),
        NodeKind::TriangleInv => "Tinv".into(),
        NodeKind::ZwBlackPi => "bpi".into(),
        NodeKind::ZwCross => "cross".into(),
    }
}

struct Layout {
    n_in: usize,
    n_out: usize,
    caps: usize,
    cups: usize,
    /// top slot -> slot above the node layer
    p1: BTreeMap<usize, usize>,
    /// slot below the node layer -> bottom slot
    p2: BTreeMap<usize, usize>,
    pass: usize,
    in_slots: usize,
    out_slots: usize,
}

impl Layout {
    fn cap(&mut self) -> (usize, usize) {
        let base = self.n_in + 2 * self.caps;
        self.caps += 1;
        (base, base + 1)
    }
    fn cup(&mut self) -> (usize, usize) {
        let base = self.n_out + 2 * self.cups;
        self.cups += 1;
        (base, base + 1)
    }
    /// A pass-through wire; returns its slot above and below the node layer.
    fn pass(&mut self) -> (usize, usize) {
        let k = self.pass;
        self.pass += 1;
        (self.in_slots + k, self.out_slots + k)
    }
}

pub fn print(d: &Diagram) -> String {
    let mut in_off: BTreeMap<NodeId, usize> = BTreeMap::new();
    let mut out_off: BTreeMap<NodeId, usize> = BTreeMap::new();
    let (mut ai, mut ao) = (0, 0);
    for (&id, n) in &d.nodes {
        in_off.insert(id, ai);
        out_off.insert(id, ao);
        ai += n.n_in;
        ao += n.n_out;
    }
    let mut l =
        Layout { n_in: d.n_inputs, n_out: d.n_outputs, caps: 0, cups: 0, p1: BTreeMap::new(), p2: BTreeMap::new(), pass: 0, in_slots: ai, out_slots: ao };
    enum E {
        I(usize),
        O(usize),
        NI(usize),
        NO(usize),
    }
    let classify = |p: Port| match p {
        Port::Input(i) => E::I(i),
        Port::Output(j) => E::O(j),
        Port::Node(id, k) => {
            let n = &d.nodes[&id];
            if k < n.n_in {
                E::NI(in_off[&id] + k)
            } else {
                E::NO(out_off[&id] + k - n.n_in)
            }
        }
    };
    for &(a, b) in &d.edges {
        let (a, b) = (classify(a), classify(b));
        // order the pair so fewer cases need handling
        let rank = |e: &E| match e {
            E::I(_) => 0,
            E::O(_) => 1,
            E::NI(_) => 2,
            E::NO(_) => 3,
        };
        let (a, b) = if rank(&a) <= rank(&b) { (a, b) } else { (b, a) };
        match (a, b) {
            (E::I(i), E::NI(x)) => {
                l.p1.insert(i, x);
            }
            (E::I(i), E::O(j)) => {
                let (u, v) = l.pass();
                l.p1.insert(i, u);
                l.p2.insert(v, j);
            }
            (E::I(i), E::NO(x)) => {
                let (u, v) = l.pass();
                let (c0, c1) = l.cup();
                l.p1.insert(i, u);
                l.p2.insert(v, c0);
                l.p2.insert(x, c1);
            }
            (E::I(i), E::I(i2)) => {
                let (u, v) = l.pass();
                let (u2, v2) = l.pass();
                let (c0, c1) = l.cup();
                l.p1.insert(i, u);
                l.p1.insert(i2, u2);
                l.p2.insert(v, c0);
                l.p2.insert(v2, c1);
            }
            (E::O(j), E::O(j2)) => {
                let (t0, t1) = l.cap();
                let (u, v) = l.pass();
                let (u2, v2) = l.pass();
                l.p1.insert(t0, u);
                l.p1.insert(t1, u2);
                l.p2.insert(v, j);
                l.p2.insert(v2, j2);
            }
            (E::O(j), E::NI(x)) => {
                let (t0, t1) = l.cap();
                let (u, v) = l.pass();
                l.p1.insert(t0, x);
                l.p1.insert(t1, u);
                l.p2.insert(v, j);
            }
            (E::O(j), E::NO(x)) => {
                l.p2.insert(x, j);
            }
            (E::NI(x), E::NI(y)) => {
                let (t0, t1) = l.cap();
                l.p1.insert(t0, x);
                l.p1.insert(t1, y);
            }
            (E::NI(x), E::NO(y)) => {
                let (t0, t1) = l.cap();
                let (u, v) = l.pass();
                let (c0, c1) = l.cup();
                l.p1.insert(t0, x);
                l.p1.insert(t1, u);
                l.p2.insert(v, c0);
                l.p2.insert(y, c1);
            }
            (E::NO(x), E::NO(y)) => {
                let (c0, c1) = l.cup();
                l.p2.insert(x, c0);
                l.p2.insert(y, c1);
            }
            _ => unreachable!("pairs are ordered by rank"),
        }
    }

    let mut parts: Vec<String> = Vec::new();
    let caps_text = |n: usize, caps: usize, word: &str| {
        let mut v = Vec::new();
        if n > 0 {
            v.push(if n == 1 { "id".to_string() } else { format!("id({n})") });
        }
        v.extend(std::iter::repeat_n(word.to_string(), caps));
        v.join(" * ")
    };
    if l.caps > 0 {
        parts.push(caps_text(d.n_inputs, l.caps, "cap"));
    } else if d.n_inputs == 0 {
        parts.push("empty".into());
    }
    let perm_text = |m: &BTreeMap<usize, usize>| {
        let ident = m.iter().all(|(a, b)| a == b);
        if ident {
            None
        } else {
            let v: Vec<String> = m.values().map(|x| x.to_string()).collect();
            Some(format!("perm({})", v.join(",")))
        }
    };
    if let Some(t) = perm_text(&l.p1) {
        parts.push(t);
    }
    let mut layer: Vec<String> = d.nodes.values().map(atom_text).collect();
    layer.extend(std::iter::repeat_n("(cap ; cup)".to_string(), d.loops));
    if !layer.is_empty() {
        if l.pass > 0 {
            layer.push(if l.pass == 1 { "id".into() } else { format!("id({})", l.pass) });
        }
        parts.push(layer.join(" * "));
    }
    if let Some(t) = perm_text(&l.p2) {
        parts.push(t);
    }
    if l.cups > 0 {
        let v = caps_text(d.n_outputs, l.cups, "cup");
        parts.push(v);
    }
    // drop a leading `empty` when something follows that starts from zero wires
    if parts.len() > 1 && parts[0] == "empty" {
        parts.remove(0);
    }
    if parts.is_empty() {
        return match d.n_inputs {
            0 => "empty".into(),
            1 => "id".into(),
            n => format!("id({n})"),
        };
    }
    parts.join(" ; ")
}

#[cfg(test)]
mod tests {
    use crate::diagram::{iso_equal, parse, print};

    fn round(s: &str) {
        let d = parse(s).unwrap();
        let text = print(&d);
        let back = parse(&text).unwrap_or_else(|e| panic!("{s} -> {text}: {e}"));
        assert!(iso_equal(&d, &back), "{s} -> {text}");
    }

    #[test]
    fn round_trips() {
        for s in [
            "Z(1,1;2)",
            "H ; H",
            "swap",
            "cap",
            "cup",
            "empty",
            "cap ; cup",
            "id * cap",
            "Z(0,1;0) ; X(1,0;0)",
            "Z(2,1;1) ; T ; Tinv",
            "Tt ; Z(1,2;3)",
            "cap ; (H * Z(1,1;2)) ; cup",
            "(id * cap) ; (Z(2,1;1) * id) ; swap",
            "W(1,2;1 + w) ; (bpi * wnode(1,1)) ; cross",
            "Zbox(2,2;1/2*w - 1/2*w^3) ; Xbox(2,0;-1)",
            "L(3/4) ; X(1,3;4) ; (id * cup)",
            "id(3) ; perm(2,0,1)",
        ] {
            round(s);
        }
    }

    #[test]
    fn node_only_text_is_plain() {
        assert_eq!(print(&parse("Z(1,1;2)").unwrap()), "Z(1,1;2)");
        assert_eq!(print(&parse("empty").unwrap()), "empty");
        assert_eq!(print(&parse("id(2)").unwrap()), "id(2)");
    }
}
