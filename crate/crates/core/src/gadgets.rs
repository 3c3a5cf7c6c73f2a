//! Fixed ZX sub-diagrams reused by the parser, the rules and the
//! translations.

use crate::diagram::{parse, Diagram};

/// √2 as a closed ZX diagram.
pub const SQRT2: &str = "(Z(0,1;0) ; X(1,0;0))";

/// 1/√2 as a closed ZX diagram.
pub const INV_SQRT2: &str = "(Z(0,1;0) ; L(1/2) ; X(1,0;4))";

/// Two-to-one W node: `|00> -> |0>`, `|01>, |10> -> |1>`, `|11> -> 0`.
///
/// Each input is copied; one copy of each meets an XOR, the other pair is
/// fed to an effect worth `1 - ab` that kills `|11>`.
pub const W_ADD: &str = "(Z(1,2;0) * Z(1,2;0)) ; (id * swap * id) ; \
     (X(2,1;0) * ((T * T) ; Z(2,0;4)) * (Z(0,1;0) ; X(1,0;0)))";

pub fn w_add() -> Diagram {
    parse(W_ADD).expect("fixed gadget parses")
}

/// One-to-two W node, the transpose of [`w_add`].
pub fn w_copy() -> Diagram {
    w_add().flip_vertical()
}

pub fn sqrt2() -> Diagram {
    parse(SQRT2).expect("fixed gadget parses")
}

pub fn inv_sqrt2() -> Diagram {
    parse(INV_SQRT2).expect("fixed gadget parses")
}
