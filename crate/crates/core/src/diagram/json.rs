//! JSON graph documents.
//!
//! Boundary ports are numbered inputs first (`0..n`) then outputs
//! (`n..n+m`).

use serde::{Deserialize, Serialize};

use super::{Calculus, Diagram, Node, NodeId, NodeKind, Port};
use crate::ring::{Dyadic, PhaseK, RingElt};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum JsonNodeRef {
    Id(NodeId),
    Boundary(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonPort {
    pub node: JsonNodeRef,
    pub index: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct JsonParams {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub phase: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub lambda: Option<Dyadic>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub value: Option<RingElt>,
    pub n_in: usize,
    pub n_out: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonNode {
    pub id: NodeId,
    pub kind: String,
    pub params: JsonParams,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonDiagram {
    pub calculus: Calculus,
    pub nodes: Vec<JsonNode>,
    pub edges: Vec<[JsonPort; 2]>,
    pub inputs: Vec<JsonPort>,
    pub outputs: Vec<JsonPort>,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub loops: usize,
}

fn is_zero(n: &usize) -> bool {
    *n == 0
}

const BOUNDARY: &str = "boundary";

fn kind_name(k: &NodeKind) -> &'static str {
    match k {
        NodeKind::ZSpider(_) => "ZSpider",
        NodeKind::XSpider(_) => "XSpider",
        NodeKind::Hadamard => "Hadamard",
        NodeKind::Triangle => "Triangle",
        NodeKind::TriangleInv => "TriangleInv",
        NodeKind::LambdaBox(_) => "LambdaBox",
        NodeKind::GreenBox(_) => "GreenBox",
        NodeKind::RedBox(_) => "RedBox",
        NodeKind::ZwWhite(_) => "ZWWhite",
        NodeKind::ZwBlackPi => "ZWBlackPi",
        NodeKind::ZwCross => "ZWCross",
        NodeKind::ZwW => "ZWWNode",
    }
}

pub fn to_json(d: &Diagram) -> JsonDiagram {
    let port = |p: Port| match p {
        Port::Input(i) => JsonPort { node: JsonNodeRef::Boundary(BOUNDARY.into()), index: i },
        Port::Output(j) => JsonPort { node: JsonNodeRef::Boundary(BOUNDARY.into()), index: d.n_inputs + j },
        Port::Node(n, k) => JsonPort { node: JsonNodeRef::Id(n), index: k },
    };
    let nodes = d
        .nodes
        .iter()
        .map(|(&id, n)| {
            let mut params = JsonParams { n_in: n.n_in, n_out: n.n_out, ..Default::default() };
            match &n.kind {
                NodeKind::ZSpider(k) | NodeKind::XSpider(k) => params.phase = Some(i64::from(k.k())),
                NodeKind::LambdaBox(l) => params.lambda = Some(l.clone()),
                NodeKind::GreenBox(a) | NodeKind::RedBox(a) | NodeKind::ZwWhite(a) => params.value = Some(a.clone()),
                _ => {}
            }
            JsonNode { id, kind: kind_name(&n.kind).into(), params }
        })
        .collect();
    JsonDiagram {
        calculus: d.calculus,
        nodes,
        edges: d.edges.iter().map(|&(a, b)| [port(a), port(b)]).collect(),
        inputs: (0..d.n_inputs).map(|i| port(Port::Input(i))).collect(),
        outputs: (0..d.n_outputs).map(|j| port(Port::Output(j))).collect(),
        loops: d.loops,
    }
}

pub fn from_json(j: &JsonDiagram) -> Result<Diagram, String> {
    let mut d = Diagram::empty(j.calculus);
    d.n_inputs = j.inputs.len();
    d.n_outputs = j.outputs.len();
    d.loops = j.loops;
    for n in &j.nodes {
        let p = &n.params;
        let need = |o: Option<RingElt>| o.ok_or_else(|| format!("node {}: missing value", n.id));
        let kind = match n.kind.as_str() {
            "ZSpider" => NodeKind::ZSpider(PhaseK::new(p.phase.unwrap_or(0))),
            "XSpider" => NodeKind::XSpider(PhaseK::new(p.phase.unwrap_or(0))),
            "Hadamard" => NodeKind::Hadamard,
            "Triangle" => NodeKind::Triangle,
            "TriangleInv" => NodeKind::TriangleInv,
            "LambdaBox" => NodeKind::LambdaBox(p.lambda.clone().ok_or_else(|| format!("node {}: missing lambda", n.id))?),
            "GreenBox" => NodeKind::GreenBox(need(p.value.clone())?),
            "RedBox" => NodeKind::RedBox(need(p.value.clone())?),
            "ZWWhite" => NodeKind::ZwWhite(need(p.value.clone())?),
            "ZWBlackPi" => NodeKind::ZwBlackPi,
            "ZWCross" => NodeKind::ZwCross,
            "ZWWNode" => NodeKind::ZwW,
            other => return Err(format!("unknown node kind `{other}`")),
        };
        if d.nodes.insert(n.id, Node::new(kind, p.n_in, p.n_out)).is_some() {
            return Err(format!("duplicate node id {}", n.id));
        }
    }
    let port = |p: &JsonPort| -> Result<Port, String> {
        match &p.node {
            JsonNodeRef::Id(n) => Ok(Port::Node(*n, p.index)),
            JsonNodeRef::Boundary(s) if s == BOUNDARY => {
                if p.index < d.n_inputs {
                    Ok(Port::Input(p.index))
                } else {
                    Ok(Port::Output(p.index - d.n_inputs))
                }
            }
            JsonNodeRef::Boundary(s) => Err(format!("bad node reference `{s}`")),
        }
    };
    let edges = j.edges.iter().map(|[a, b]| Ok((port(a)?, port(b)?))).collect::<Result<Vec<_>, String>>()?;
    d.edges = edges;
    if let Some(v) = d.validate().first() {
        return Err(v.to_string());
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{iso_equal, parse};

    #[test]
    fn json_round_trip() {
        for s in ["Z(2,1;3) ; T", "cap ; (H * L(3/4)) ; cup", "W(1,2;w) ; cross", "Zbox(1,1;1 + w) * swap", "empty"] {
            let d = parse(s).unwrap();
            let text = serde_json::to_string(&to_json(&d)).unwrap();
            let back: JsonDiagram = serde_json::from_str(&text).unwrap();
            let e = from_json(&back).unwrap();
            assert!(iso_equal(&d, &e), "{s}");
            assert_eq!(d, e);
        }
    }

    #[test]
    fn boundary_numbering() {
        let d = parse("swap").unwrap();
        let j = to_json(&d);
        assert_eq!(j.outputs[0].index, 2);
        let v = serde_json::to_value(&j).unwrap();
        assert_eq!(v["inputs"][1]["node"], "boundary");
    }
}
