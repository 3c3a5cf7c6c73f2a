//! Exact-arithmetic engine for the Clifford+T fragment of the ZX-calculus
//! and its translation to and from the ZW-calculus.

pub mod catalog;
pub mod diagram;
pub mod gadgets;
pub mod linalg;
pub mod par;
pub mod rewrite;
pub mod ring;
pub mod rules;
pub mod semantics;
pub mod translate;

pub use diagram::{Calculus, Diagram, NodeKind, Port};
pub use linalg::Matrix;
pub use ring::{Dyadic, PhaseK, RingElt};
