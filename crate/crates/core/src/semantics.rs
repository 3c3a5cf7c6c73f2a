//! Standard interpretation of ZX and ZW diagrams as exact matrices.
//!
//! Every edge is a summed index; each node contributes its generator tensor
//! and the network is contracted greedily, cheapest pair first.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::diagram::{Calculus, Diagram, Node, NodeKind, Port};
use crate::linalg::Matrix;
use crate::ring::{Dyadic, RingElt};

/// Default bound on boundary wires (inputs plus outputs).
pub const DEFAULT_WIRE_CAP: usize = 12;

/// Largest number of open indices an intermediate tensor may carry.
const MAX_OPEN: usize = 26;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemanticsError {
    #[error("{wires} boundary wires exceed the cap of {cap}")]
    WireCap { wires: usize, cap: usize },
    #[error("contraction needs a tensor with {0} open wires")]
    TooWide(usize),
    #[error("expected a {expected} diagram, found {found}")]
    Calculus { expected: Calculus, found: Calculus },
    #[error("diagram is not a scalar ({0} inputs, {1} outputs)")]
    NotScalar(usize, usize),
    #[error("invalid diagram: {0}")]
    Invalid(String),
}

/// Dense tensor; `vars[0]` is the most significant bit of the index.
#[derive(Debug, Clone)]
struct Tensor {
    vars: Vec<usize>,
    data: Vec<RingElt>,
}

fn inv_sqrt2_pow(n: usize) -> RingElt {
    // (1/√2)^2 = 1/2
    let half = Dyadic::new(1, (n / 2) as u32);
    let base = RingElt::from_dyadic(half);
    if n % 2 == 1 {
        base * RingElt::inv_sqrt2()
    } else {
        base
    }
}

/// The generator tensor of a node over its ports in index order.
pub fn node_tensor(node: &Node) -> Vec<RingElt> {
    let deg = node.degree();
    let size = 1usize << deg;
    let n_in = node.n_in;
    let bit = |idx: usize, port: usize| (idx >> (deg - 1 - port)) & 1;
    let ones = |idx: usize| idx.count_ones() as usize;
    let all_ones = size - 1;
    let spider = |a: &RingElt| -> Vec<RingElt> {
        let mut v = vec![RingElt::zero(); size];
        if deg == 0 {
            v[0] = RingElt::one() + a.clone();
        } else {
            v[0] = RingElt::one();
            v[all_ones] = a.clone();
        }
        v
    };
    let xspider = |a: &RingElt| -> Vec<RingElt> {
        let s = inv_sqrt2_pow(deg);
        let plus = &s + &(&s * a);
        let minus = &s - &(&s * a);
        (0..size).map(|i| if ones(i) % 2 == 0 { plus.clone() } else { minus.clone() }).collect()
    };
    match &node.kind {
        NodeKind::ZSpider(k) => spider(&RingElt::from_phase(*k)),
        NodeKind::GreenBox(a) | NodeKind::ZwWhite(a) => spider(a),
        NodeKind::XSpider(k) => xspider(&RingElt::from_phase(*k)),
        NodeKind::RedBox(a) => xspider(a),
        NodeKind::Hadamard => {
            let h = RingElt::inv_sqrt2();
            (0..size).map(|i| if i == 3 { -h.clone() } else { h.clone() }).collect()
        }
        NodeKind::Triangle | NodeKind::TriangleInv => {
            // index = (in, out)
            let off = if node.kind == NodeKind::Triangle { 1 } else { -1 };
            vec![RingElt::one(), RingElt::zero(), RingElt::from_int(off), RingElt::one()]
        }
        NodeKind::LambdaBox(l) => vec![RingElt::one(), RingElt::zero(), RingElt::zero(), RingElt::from_dyadic(l.clone())],
        NodeKind::ZwBlackPi => vec![RingElt::zero(), RingElt::one(), RingElt::one(), RingElt::zero()],
        NodeKind::ZwCross => (0..size)
            .map(|i| {
                let (a, b, c, d) = (bit(i, 0), bit(i, 1), bit(i, 2), bit(i, 3));
                if c == b && d == a {
                    RingElt::from_int(if a & b == 1 { -1 } else { 1 })
                } else {
                    RingElt::zero()
                }
            })
            .collect(),
        NodeKind::ZwW => (0..size)
            .map(|i| {
                let x = ones(i >> (deg - n_in));
                let y = ones(i & ((1 << (deg - n_in)) - 1));
                if x == y && x <= 1 {
                    RingElt::one()
                } else {
                    RingElt::zero()
                }
            })
            .collect(),
    }
}

impl Tensor {
    fn scalar(x: RingElt) -> Tensor {
        Tensor { vars: Vec::new(), data: vec![x] }
    }

    /// Sums over repeated variables (self-loops).
    fn trace_repeats(mut self) -> Tensor {
        loop {
            let n = self.vars.len();
            let rep = (0..n).find_map(|i| (i + 1..n).find(|&j| self.vars[j] == self.vars[i]).map(|j| (i, j)));
            let Some((i, j)) = rep else { return self };
            let keep: Vec<usize> = (0..n).filter(|&k| k != i && k != j).collect();
            let mut data = vec![RingElt::zero(); 1 << keep.len()];
            for (idx, v) in self.data.iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                let b = |p: usize| (idx >> (n - 1 - p)) & 1;
                if b(i) != b(j) {
                    continue;
                }
                let out = keep.iter().fold(0, |acc, &p| (acc << 1) | b(p));
                data[out] += v;
            }
            self = Tensor { vars: keep.iter().map(|&k| self.vars[k]).collect(), data };
        }
    }

    fn contract(&self, other: &Tensor) -> Tensor {
        let shared: Vec<usize> = self.vars.iter().copied().filter(|v| other.vars.contains(v)).collect();
        let a_free: Vec<usize> = (0..self.vars.len()).filter(|&i| !shared.contains(&self.vars[i])).collect();
        let b_free: Vec<usize> = (0..other.vars.len()).filter(|&i| !shared.contains(&other.vars[i])).collect();
        let na = self.vars.len();
        let nb = other.vars.len();
        let out_vars: Vec<usize> = a_free.iter().map(|&i| self.vars[i]).chain(b_free.iter().map(|&i| other.vars[i])).collect();
        // position of each shared var inside other
        let b_shared_pos: Vec<usize> = shared.iter().map(|v| other.vars.iter().position(|w| w == v).unwrap()).collect();
        let a_shared_pos: Vec<usize> = shared.iter().map(|v| self.vars.iter().position(|w| w == v).unwrap()).collect();
        let nbf = b_free.len();
        let mut data = vec![RingElt::zero(); 1 << out_vars.len()];
        // index of other for each (shared assignment, free assignment)
        let b_index = |s: usize, f: usize| -> usize {
            let mut idx = 0;
            for (k, &p) in b_shared_pos.iter().enumerate() {
                idx |= ((s >> (shared.len() - 1 - k)) & 1) << (nb - 1 - p);
            }
            for (k, &p) in b_free.iter().enumerate() {
                idx |= ((f >> (nbf - 1 - k)) & 1) << (nb - 1 - p);
            }
            idx
        };
        for (ai, av) in self.data.iter().enumerate() {
            if av.is_zero() {
                continue;
            }
            let bit = |p: usize| (ai >> (na - 1 - p)) & 1;
            let s = a_shared_pos.iter().fold(0, |acc, &p| (acc << 1) | bit(p));
            let fa = a_free.iter().fold(0, |acc, &p| (acc << 1) | bit(p));
            for fb in 0..(1usize << nbf) {
                let bv = &other.data[b_index(s, fb)];
                if bv.is_zero() {
                    continue;
                }
                data[(fa << nbf) | fb] += &(av * bv);
            }
        }
        Tensor { vars: out_vars, data }
    }
}

fn union_len(a: &[usize], b: &[usize]) -> (usize, usize) {
    let shared = a.iter().filter(|v| b.contains(v)).count();
    (a.len() + b.len() - 2 * shared, shared)
}

fn contract_all(mut ts: Vec<Tensor>) -> Result<Tensor, SemanticsError> {
    if ts.is_empty() {
        return Ok(Tensor::scalar(RingElt::one()));
    }
    while ts.len() > 1 {
        // cheapest connected pair, else the two smallest tensors
        let mut best: Option<(usize, usize, usize, usize)> = None;
        for i in 0..ts.len() {
            for j in i + 1..ts.len() {
                let (out, shared) = union_len(&ts[i].vars, &ts[j].vars);
                if shared == 0 {
                    continue;
                }
                let cost = ts[i].vars.len() + ts[j].vars.len() - shared;
                let key = (out, cost);
                if best.is_none_or(|(_, _, o, c)| key < (o, c)) {
                    best = Some((i, j, out, cost));
                }
            }
        }
        let (i, j) = match best {
            Some((i, j, _, _)) => (i, j),
            None => {
                let mut order: Vec<usize> = (0..ts.len()).collect();
                order.sort_by_key(|&k| ts[k].vars.len());
                (order[0].min(order[1]), order[0].max(order[1]))
            }
        };
        let (out, _) = union_len(&ts[i].vars, &ts[j].vars);
        if out > MAX_OPEN {
            return Err(SemanticsError::TooWide(out));
        }
        let b = ts.swap_remove(j);
        let a = ts.swap_remove(i);
        ts.push(a.contract(&b));
    }
    Ok(ts.pop().unwrap())
}

/// Interprets a diagram of either calculus with the given boundary cap.
pub fn interpret_with_cap(d: &Diagram, cap: usize) -> Result<Matrix, SemanticsError> {
    let wires = d.n_inputs + d.n_outputs;
    if wires > cap {
        return Err(SemanticsError::WireCap { wires, cap });
    }
    if let Some(v) = d.validate().first() {
        return Err(SemanticsError::Invalid(v.to_string()));
    }
    let mut var_of: BTreeMap<Port, usize> = BTreeMap::new();
    for (e, &(a, b)) in d.edges.iter().enumerate() {
        var_of.insert(a, e);
        var_of.insert(b, e);
    }
    let mut ts = Vec::with_capacity(d.nodes.len());
    for (&id, n) in &d.nodes {
        let vars = (0..n.degree()).map(|k| var_of[&Port::Node(id, k)]).collect();
        ts.push(Tensor { vars, data: node_tensor(n) }.trace_repeats());
    }
    let t = contract_all(ts)?;
    let loop_factor = (0..d.loops).fold(RingElt::one(), |acc, _| acc * RingElt::from_int(2));
    let slots: Vec<usize> = (0..d.n_inputs).map(|i| var_of[&Port::Input(i)]).chain((0..d.n_outputs).map(|j| var_of[&Port::Output(j)])).collect();
    let pos: Vec<Option<usize>> = t.vars.iter().map(|v| slots.iter().position(|s| s == v)).collect();
    debug_assert!(pos.iter().all(Option::is_some));
    let (n, m) = (d.n_inputs, d.n_outputs);
    let nv = t.vars.len();
    Ok(Matrix::from_fn(1 << m, 1 << n, |row, col| {
        let slot_bit = |s: usize| if s < n { (col >> (n - 1 - s)) & 1 } else { (row >> (m - 1 - (s - n))) & 1 };
        // slots sharing a variable must agree
        let mut assign: BTreeMap<usize, usize> = BTreeMap::new();
        for (s, &v) in slots.iter().enumerate() {
            let b = slot_bit(s);
            if *assign.entry(v).or_insert(b) != b {
                return RingElt::zero();
            }
        }
        let idx = t.vars.iter().enumerate().fold(0, |acc, (k, v)| acc | (assign[v] << (nv - 1 - k)));
        &t.data[idx] * &loop_factor
    }))
}

fn check_calculus(d: &Diagram, expected: Calculus) -> Result<(), SemanticsError> {
    match d.nodes.values().map(|n| n.kind.calculus()).find(|c| *c != expected) {
        Some(found) => Err(SemanticsError::Calculus { expected, found }),
        None => Ok(()),
    }
}

pub fn interpret_zx(d: &Diagram) -> Result<Matrix, SemanticsError> {
    check_calculus(d, Calculus::Zx)?;
    interpret_with_cap(d, DEFAULT_WIRE_CAP)
}

pub fn interpret_zw(d: &Diagram) -> Result<Matrix, SemanticsError> {
    check_calculus(d, Calculus::Zw)?;
    interpret_with_cap(d, DEFAULT_WIRE_CAP)
}

/// Interprets according to the diagram's own calculus.
pub fn interpret(d: &Diagram) -> Result<Matrix, SemanticsError> {
    match d.calculus {
        Calculus::Zx => interpret_zx(d),
        Calculus::Zw => interpret_zw(d),
    }
}

pub fn scalar_value(d: &Diagram) -> Result<RingElt, SemanticsError> {
    if !d.is_scalar() {
        return Err(SemanticsError::NotScalar(d.n_inputs, d.n_outputs));
    }
    Ok(interpret(d)?.get(0, 0).clone())
}
