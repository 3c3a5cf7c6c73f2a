//! Parameter substitution for rule templates.
//!
//! `$name` inserts a bound value, `$(expr)` an arithmetic expression over
//! bound values (`+ - *`, parentheses, dyadic literals) and `$[atom^expr]`
//! the tensor of `expr` copies of `atom` (`id(0)` when zero).

use std::collections::BTreeMap;

use crate::ring::Dyadic;

pub type Env = BTreeMap<String, Dyadic>;

pub fn substitute(src: &str, env: &Env) -> Result<String, String> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = String::new();
    let mut i = 0;
    while i < chars.len() {
        if chars[i] != '$' {
            out.push(chars[i]);
            i += 1;
            continue;
        }
        i += 1;
        match chars.get(i) {
            Some('(') => {
                let end = matching(&chars, i, '(', ')')?;
                let expr: String = chars[i + 1..end].iter().collect();
                out.push_str(&render(&eval(&expr, env)?));
                i = end + 1;
            }
            Some('[') => {
                let end = matching(&chars, i, '[', ']')?;
                let body: String = chars[i + 1..end].iter().collect();
                let (atom, count) = body.rsplit_once('^').ok_or_else(|| format!("bad repetition `{body}`"))?;
                let n = eval(count, env)?.to_i64().filter(|n| *n >= 0).ok_or_else(|| format!("bad count `{count}`"))?;
                if n == 0 {
                    out.push_str("id(0)");
                } else {
                    let parts: Vec<&str> = std::iter::repeat_n(atom.trim(), n as usize).collect();
                    out.push('(');
                    out.push_str(&parts.join(" * "));
                    out.push(')');
                }
                i = end + 1;
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let name: String = chars[start..i].iter().collect();
                let v = env.get(&name).ok_or_else(|| format!("unbound parameter `{name}`"))?;
                out.push_str(&render(v));
            }
            _ => return Err("dangling `$`".into()),
        }
    }
    Ok(out)
}

fn matching(chars: &[char], open_at: usize, open: char, close: char) -> Result<usize, String> {
    let mut depth = 0;
    for (k, &c) in chars.iter().enumerate().skip(open_at) {
        if c == open {
            depth += 1;
        } else if c == close {
            depth -= 1;
            if depth == 0 {
                return Ok(k);
            }
        }
    }
    Err(format!("unclosed `{open}`"))
}

fn render(d: &Dyadic) -> String {
    d.to_string()
}

/// Evaluates an arithmetic expression over dyadics.
pub fn eval(src: &str, env: &Env) -> Result<Dyadic, String> {
    let toks = tokens(src)?;
    let mut p = 0;
    let v = sum(&toks, &mut p, env)?;
    if p != toks.len() {
        return Err(format!("trailing input in `{src}`"));
    }
    Ok(v)
}

#[derive(Debug, Clone, PartialEq)]
enum T {
    Num(Dyadic),
    Var(String),
    Op(char),
}

fn tokens(src: &str) -> Result<Vec<T>, String> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '/' || chars[i] == '^') {
                i += 1;
            }
            let lit: String = chars[start..i].iter().collect();
            out.push(T::Num(lit.parse().map_err(|_| format!("bad literal `{lit}`"))?));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(T::Var(chars[start..i].iter().collect()));
        } else if "+-*()".contains(c) {
            out.push(T::Op(c));
            i += 1;
        } else {
            return Err(format!("unexpected `{c}` in expression"));
        }
    }
    Ok(out)
}

fn sum(t: &[T], p: &mut usize, env: &Env) -> Result<Dyadic, String> {
    let mut acc = product(t, p, env)?;
    while let Some(T::Op(c @ ('+' | '-'))) = t.get(*p) {
        *p += 1;
        let rhs = product(t, p, env)?;
        acc = if *c == '+' { acc + rhs } else { acc - rhs };
    }
    Ok(acc)
}

fn product(t: &[T], p: &mut usize, env: &Env) -> Result<Dyadic, String> {
    let mut acc = unary(t, p, env)?;
    while let Some(T::Op('*')) = t.get(*p) {
        *p += 1;
        acc = acc * unary(t, p, env)?;
    }
    Ok(acc)
}

fn unary(t: &[T], p: &mut usize, env: &Env) -> Result<Dyadic, String> {
    match t.get(*p) {
        Some(T::Op('-')) => {
            *p += 1;
            Ok(-unary(t, p, env)?)
        }
        Some(T::Op('(')) => {
            *p += 1;
            let v = sum(t, p, env)?;
            if t.get(*p) != Some(&T::Op(')')) {
                return Err("expected `)`".into());
            }
            *p += 1;
            Ok(v)
        }
        Some(T::Num(n)) => {
            *p += 1;
            Ok(n.clone())
        }
        Some(T::Var(v)) => {
            *p += 1;
            env.get(v).cloned().ok_or_else(|| format!("unbound parameter `{v}`"))
        }
        other => Err(format!("unexpected {other:?}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn env(pairs: &[(&str, &str)]) -> Env {
        pairs.iter().map(|(k, v)| (k.to_string(), v.parse().unwrap())).collect()
    }

    #[test]
    fn substitutes() {
        let e = env(&[("a", "3"), ("b", "6"), ("l", "3/4"), ("n", "2")]);
        assert_eq!(substitute("Z(1,1;$a)", &e).unwrap(), "Z(1,1;3)");
        assert_eq!(substitute("Z(1,1;$(a+b))", &e).unwrap(), "Z(1,1;9)");
        assert_eq!(substitute("Z(1,1;$(-a))", &e).unwrap(), "Z(1,1;-3)");
        assert_eq!(substitute("L($(l*l))", &e).unwrap(), "L(9/2^4)");
        assert_eq!(substitute("$[H^n] ; $[H^(n-2)]", &e).unwrap(), "(H * H) ; id(0)");
        assert!(substitute("$q", &e).is_err());
    }
}
