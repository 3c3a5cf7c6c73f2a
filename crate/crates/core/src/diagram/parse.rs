//! Text syntax for diagrams.
//!
//! ```text
//! diagram := seq
//! seq     := par (';' par)*        top-to-bottom composition
//! par     := atom ('*' atom)*      left-to-right tensor
//! atom    := NAME | NAME '(' args ')' | '(' seq ')'
//! ```
//!
//! ZX atoms: `Z(n,m;k)`, `X(n,m;k)` (phase `kπ/4`, `;k` optional),
//! `Zbox(n,m;r)`, `Xbox(n,m;r)`, `H`, `T`, `Tinv`, `Tt`, `Tinvt`
//! (transposed triangles), `L(λ)`, `wcopy`, `wadd`. ZW atoms:
//! `W(n,m;r)`, `bpi`, `cross`, `wnode(n,m)`. Shared: `id`, `id(n)`,
//! `swap`, `perm(p0,..)`, `cap`, `cup`, `empty`.

use thiserror::Error;

use super::{Calculus, Diagram, NodeKind};
use crate::ring::{Dyadic, PhaseK, RingElt};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("lexical error at {pos}: {msg}")]
    Lexical { pos: usize, msg: String },
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("arity mismatch at {pos}: {msg}")]
    Arity { pos: usize, msg: String },
    #[error("mixed calculus at {pos}: {msg}")]
    Calculus { pos: usize, msg: String },
    #[error("dangling port: {0}")]
    Dangling(String),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Name(String, Option<String>),
    Semi,
    Star,
    LParen,
    RParen,
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        match c {
            ';' => out.push((i, Tok::Semi)),
            '*' => out.push((i, Tok::Star)),
            '(' => out.push((i, Tok::LParen)),
            ')' => out.push((i, Tok::RParen)),
            _ if c.is_ascii_alphabetic() => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let name: String = chars[start..i].iter().collect();
                // arguments directly attached to a name
                let mut args = None;
                if i < chars.len() && chars[i] == '(' {
                    let mut depth = 0;
                    let arg_start = i + 1;
                    loop {
                        if i >= chars.len() {
                            return Err(ParseError::Lexical { pos: start, msg: format!("unclosed arguments of `{name}`") });
                        }
                        match chars[i] {
                            '(' => depth += 1,
                            ')' => {
                                depth -= 1;
                                if depth == 0 {
                                    break;
                                }
                            }
                            _ => {}
                        }
                        i += 1;
                    }
                    args = Some(chars[arg_start..i].iter().collect());
                    i += 1;
                }
                out.push((start, Tok::Name(name, args)));
                continue;
            }
            _ => return Err(ParseError::Lexical { pos: i, msg: format!("unexpected character `{c}`") }),
        }
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    zx_macros: MacroCache,
}

#[derive(Default)]
struct MacroCache {
    wcopy: Option<Diagram>,
    wadd: Option<Diagram>,
}

/// Parses a diagram, inferring the calculus from its atoms.
pub fn parse(src: &str) -> Result<Diagram, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser { toks, pos: 0, end: src.len(), zx_macros: MacroCache::default() };
    if p.toks.is_empty() {
        return Err(ParseError::Syntax { pos: 0, msg: "empty input".into() });
    }
    let d = p.seq()?;
    if p.pos < p.toks.len() {
        let (pos, _) = p.toks[p.pos];
        return Err(ParseError::Syntax { pos, msg: "trailing input".into() });
    }
    let violations = d.validate();
    if let Some(v) = violations.first() {
        return Err(ParseError::Dangling(v.to_string()));
    }
    Ok(d)
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn seq(&mut self) -> Result<Diagram, ParseError> {
        let mut acc = self.par()?;
        while self.peek() == Some(&Tok::Semi) {
            let pos = self.here();
            self.pos += 1;
            let rhs = self.par()?;
            acc = Diagram::compose(&acc, &rhs).map_err(|e| lift(e, pos))?;
        }
        Ok(acc)
    }

    fn par(&mut self) -> Result<Diagram, ParseError> {
        let mut acc = self.atom()?;
        while self.peek() == Some(&Tok::Star) {
            let pos = self.here();
            self.pos += 1;
            let rhs = self.atom()?;
            acc = Diagram::tensor(&acc, &rhs).map_err(|e| lift(e, pos))?;
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Diagram, ParseError> {
        let pos = self.here();
        let tok = self.toks.get(self.pos).cloned().map(|(_, t)| t);
        match tok {
            Some(Tok::LParen) => {
                self.pos += 1;
                let d = self.seq()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(ParseError::Syntax { pos: self.here(), msg: "expected `)`".into() });
                }
                self.pos += 1;
                Ok(d)
            }
            Some(Tok::Name(name, args)) => {
                self.pos += 1;
                self.named(&name, args.as_deref(), pos)
            }
            Some(t) => Err(ParseError::Syntax { pos, msg: format!("unexpected {t:?}") }),
            None => Err(ParseError::Syntax { pos, msg: "unexpected end of input".into() }),
        }
    }

    fn named(&mut self, name: &str, args: Option<&str>, pos: usize) -> Result<Diagram, ParseError> {
        let syn = |msg: String| ParseError::Syntax { pos, msg };
        let no_args = |d: Diagram| if args.is_some() { Err(syn(format!("`{name}` takes no arguments"))) } else { Ok(d) };
        let zx = Calculus::Zx;
        match name {
            "Z" | "X" | "Zbox" | "Xbox" | "W" => {
                let args = args.ok_or_else(|| syn(format!("`{name}` needs arguments")))?;
                let (n, m, param) = arity_and_param(args).map_err(&syn)?;
                let kind = match name {
                    "Z" | "X" => {
                        let k: PhaseK = match param {
                            None => PhaseK::ZERO,
                            Some(s) => s.parse().map_err(|_| syn(format!("bad phase `{s}`")))?,
                        };
                        if name == "Z" {
                            NodeKind::ZSpider(k)
                        } else {
                            NodeKind::XSpider(k)
                        }
                    }
                    _ => {
                        let r: RingElt = match param {
                            None => RingElt::from_int(1),
                            Some(s) => s.parse().map_err(|_| syn(format!("bad ring element `{s}`")))?,
                        };
                        match name {
                            "Zbox" => NodeKind::GreenBox(r),
                            "Xbox" => NodeKind::RedBox(r),
                            _ => NodeKind::ZwWhite(r),
                        }
                    }
                };
                Ok(Diagram::node(kind, n, m))
            }
            "wnode" => {
                let args = args.ok_or_else(|| syn("`wnode` needs arguments".into()))?;
                let (n, m, param) = arity_and_param(args).map_err(&syn)?;
                if param.is_some() {
                    return Err(syn("`wnode` takes no parameter".into()));
                }
                Ok(Diagram::node(NodeKind::ZwW, n, m))
            }
            "L" => {
                let args = args.ok_or_else(|| syn("`L` needs a dyadic argument".into()))?;
                let l: Dyadic = args.parse().map_err(|_| syn(format!("bad dyadic `{args}`")))?;
                if l.is_negative() {
                    return Err(syn("lambda must be non-negative".into()));
                }
                Ok(Diagram::node(NodeKind::LambdaBox(l), 1, 1))
            }
            "H" => no_args(Diagram::node(NodeKind::Hadamard, 1, 1)),
            "T" => no_args(Diagram::node(NodeKind::Triangle, 1, 1)),
            "Tinv" => no_args(Diagram::node(NodeKind::TriangleInv, 1, 1)),
            "Tt" => no_args(Diagram::node(NodeKind::Triangle, 1, 1).flip_vertical()),
            "Tinvt" => no_args(Diagram::node(NodeKind::TriangleInv, 1, 1).flip_vertical()),
            "bpi" => no_args(Diagram::node(NodeKind::ZwBlackPi, 1, 1)),
            "cross" => no_args(Diagram::node(NodeKind::ZwCross, 2, 2)),
            "id" => match args {
                None => Ok(Diagram::identity(zx, 1)),
                Some(a) => {
                    let n: usize = a.trim().parse().map_err(|_| syn(format!("bad wire count `{a}`")))?;
                    Ok(Diagram::identity(zx, n))
                }
            },
            "perm" => {
                let a = args.ok_or_else(|| syn("`perm` needs arguments".into()))?;
                let perm: Vec<usize> = if a.trim().is_empty() {
                    Vec::new()
                } else {
                    a.split(',').map(|s| s.trim().parse::<usize>()).collect::<Result<_, _>>().map_err(|_| syn(format!("bad permutation `{a}`")))?
                };
                let mut seen = vec![false; perm.len()];
                for &p in &perm {
                    if p >= perm.len() || std::mem::replace(&mut seen[p], true) {
                        return Err(syn(format!("not a permutation `{a}`")));
                    }
                }
                Ok(Diagram::permutation(zx, &perm))
            }
            "swap" => no_args(Diagram::swap(zx)),
            "cap" => no_args(Diagram::cap(zx)),
            "cup" => no_args(Diagram::cup(zx)),
            "empty" => no_args(Diagram::empty(zx)),
            "wcopy" => {
                let d = self.zx_macros.wcopy.get_or_insert_with(crate::gadgets::w_copy).clone();
                no_args(d)
            }
            "wadd" => {
                let d = self.zx_macros.wadd.get_or_insert_with(crate::gadgets::w_add).clone();
                no_args(d)
            }
            _ => Err(ParseError::Lexical { pos, msg: format!("unknown atom `{name}`") }),
        }
    }
}

fn lift(e: super::DiagramError, pos: usize) -> ParseError {
    match e {
        super::DiagramError::Arity(..) => ParseError::Arity { pos, msg: e.to_string() },
        super::DiagramError::Calculus(..) => ParseError::Calculus { pos, msg: e.to_string() },
        super::DiagramError::Invalid(m) => ParseError::Syntax { pos, msg: m },
    }
}

fn arity_and_param(args: &str) -> Result<(usize, usize, Option<&str>), String> {
    let (ar, param) = match args.split_once(';') {
        Some((a, p)) => (a, Some(p.trim())),
        None => (args, None),
    };
    let (n, m) = ar.split_once(',').ok_or_else(|| format!("expected `n,m` in `{args}`"))?;
    let n = n.trim().parse::<usize>().map_err(|_| format!("bad arity `{n}`"))?;
    let m = m.trim().parse::<usize>().map_err(|_| format!("bad arity `{m}`"))?;
    Ok((n, m, param))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::iso_equal;

    #[test]
    fn parses_spider() {
        let d = parse("Z(1,1;2)").unwrap();
        assert_eq!(d.node_count(), 1);
        assert_eq!((d.n_inputs, d.n_outputs), (1, 1));
        assert_eq!(d.nodes[&0].kind, NodeKind::ZSpider(PhaseK::new(2)));
    }

    #[test]
    fn parses_sequence() {
        let d = parse("H ; H").unwrap();
        assert_eq!(d.node_count(), 2);
        assert!(d.nodes.values().all(|n| n.kind == NodeKind::Hadamard));
    }

    #[test]
    fn spider_cap_is_not_the_wire_cap() {
        let a = parse("Z(0,2;0)").unwrap();
        let b = parse("cap").unwrap();
        assert!(a.is_valid() && b.is_valid());
        assert!(!iso_equal(&a, &b));
    }

    #[test]
    fn precedence_and_grouping() {
        let a = parse("Z(1,1) * H ; swap").unwrap();
        let b = parse("(Z(1,1) * H) ; swap").unwrap();
        assert!(iso_equal(&a, &b));
        assert_eq!((a.n_inputs, a.n_outputs), (2, 2));
    }

    #[test]
    fn errors_carry_positions() {
        assert!(matches!(parse("Z(1,1;0) ; Q"), Err(ParseError::Lexical { pos: 11, .. })));
        assert!(matches!(parse("Z(1,2;0) ; H"), Err(ParseError::Arity { pos: 9, .. })));
        assert!(matches!(parse("Z(1,1) ; bpi"), Err(ParseError::Calculus { .. })));
        assert!(matches!(parse("H(1,2)"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse("Z(1,1;0"), Err(ParseError::Lexical { .. })));
    }

    #[test]
    fn ring_parameters() {
        let d = parse("Zbox(1,1;1/2*w - 1/2*w^3)").unwrap();
        assert_eq!(d.nodes[&0].kind, NodeKind::GreenBox(RingElt::inv_sqrt2()));
        let w = parse("W(1,2;-1 + 1/2^1*w + 0*w^2 + -1/2^1*w^3) ; wnode(2,1)").unwrap();
        assert_eq!(w.calculus, Calculus::Zw);
    }
}
