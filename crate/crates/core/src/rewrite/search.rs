//! Breadth-first search for rewrite chains between two diagrams.

use std::collections::{BTreeSet, VecDeque};

use super::script::{apply_all, Dir, Step};
use crate::diagram::{iso_equal, Diagram};
use crate::rules::Catalog;

#[derive(Debug, Clone)]
pub struct ChainStep {
    pub step: Step,
    pub label: String,
    pub result: Diagram,
}

/// Every diagram one application of `rule` (in direction `dir`) away,
/// one per isomorphism class.
pub fn successors(host: &Diagram, catalog: &Catalog, rule: &str, dir: Dir) -> Vec<(String, Diagram)> {
    let step = Step { rule: rule.into(), dir, anchors: vec![], via: vec![], params: Default::default(), flip: None };
    let all: BTreeSet<String> = catalog.derived.iter().map(|r| r.name.clone()).collect();
    apply_all(host, catalog, &all, &step).unwrap_or_default()
}

/// Shortest chain from `start` to a diagram isomorphic to `goal` using the
/// given rules in either direction, up to `depth` steps.
pub fn find_chain(start: &Diagram, goal: &Diagram, catalog: &Catalog, rules: &[&str], depth: usize, max_nodes: usize) -> Option<Vec<ChainStep>> {
    let mut seen: Vec<Diagram> = vec![start.clone()];
    let mut queue: VecDeque<(Diagram, Vec<ChainStep>)> = VecDeque::from([(start.clone(), vec![])]);
    while let Some((d, path)) = queue.pop_front() {
        if iso_equal(&d, goal) {
            return Some(path);
        }
        if path.len() == depth {
            continue;
        }
        for rule in rules {
            for dir in [Dir::Lr, Dir::Rl] {
                for (label, next) in successors(&d, catalog, rule, dir) {
                    if next.node_count() > max_nodes || seen.iter().any(|s| iso_equal(s, &next)) {
                        continue;
                    }
                    seen.push(next.clone());
                    let mut p = path.clone();
                    let step = Step { rule: rule.to_string(), dir, anchors: vec![], via: vec![], params: Default::default(), flip: None };
                    p.push(ChainStep { step, label, result: next.clone() });
                    queue.push_back((next, p));
                }
            }
        }
    }
    None
}
