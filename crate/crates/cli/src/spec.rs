//! Parsers for the three declarative input formats:
//! `.gpd` (groupoid constructor expression or explicit listing),
//! `.smd` (symmetroid: base groupoid plus declared cells),
//! `.fun` (algebra element: arrow label → complex coefficient).
//!
//! Grammar summary (comments start with `#`, blank lines ignored):
//!
//! ```text
//! # .gpd, constructor form — a single expression:
//! pair(3)
//! group(Z4) | group(klein) | group(S3)
//! product(pair(2), group(Z2))
//! named(C2_4)
//! swap_base                # G(Ω₂)×G(Ω₂) with factor labels 1_±, α, α^-1
//! action(Z4; 0 1 2 3; 1 2 3 0; 2 3 0 1; 3 0 1 2)
//!
//! # .gpd, explicit listing:
//! objects: a b
//! arrow 1_a: a -> a
//! arrow f: a -> b
//! unit a = 1_a
//! compose f 1_a = f      # f ∘ 1_a
//!
//! # .smd:
//! groupoid: swap_base
//! cell s1: (α,1_+) => (1_+,α) +
//!
//! # .fun:
//! 1_+ = 1
//! α_1 = 0.5 -0.25        # re [im]
//! ```

use num_complex::Complex64;

use groupoids::algebra::GroupoidFunction;
use groupoids::group::FiniteGroup;
use groupoids::groupoid::{
    action_groupoid, c2_4, direct_product, group_groupoid, pair_groupoid, FiniteGroupoid,
};
use groupoids::symmetroid::{user_symmetroid, Parity, TwoGroupoid};
use groupoids::Limits;

#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct ParseError(pub String);

type Result<T> = std::result::Result<T, ParseError>;

fn err<T>(msg: impl Into<String>) -> Result<T> {
    Err(ParseError(msg.into()))
}

fn logical_lines(text: &str) -> Vec<(usize, String)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| {
            let body = l.split('#').next().unwrap_or("").trim();
            (i + 1, body.to_string())
        })
        .filter(|(_, l)| !l.is_empty())
        .collect()
}

/// Splits `args` at top-level commas, respecting parenthesis nesting.
fn split_top(args: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut cur = String::new();
    for c in args.chars() {
        match c {
            '(' => {
                depth += 1;
                cur.push(c);
            }
            ')' => {
                depth = depth.saturating_sub(1);
                cur.push(c);
            }
            ',' if depth == 0 => {
                out.push(cur.trim().to_string());
                cur.clear();
            }
            _ => cur.push(c),
        }
    }
    if !cur.trim().is_empty() {
        out.push(cur.trim().to_string());
    }
    out
}

fn parse_group(name: &str) -> Result<FiniteGroup> {
    let name = name.trim();
    if let Some(n) = name.strip_prefix('Z').and_then(|s| s.parse::<usize>().ok()) {
        if n == 0 {
            return err("group order must be positive");
        }
        return Ok(FiniteGroup::cyclic(n));
    }
    if let Some(n) = name.strip_prefix('S').and_then(|s| s.parse::<usize>().ok()) {
        if n == 0 || n > 5 {
            return err("symmetric group degree must be 1..=5");
        }
        return Ok(FiniteGroup::symmetric(n));
    }
    if name.eq_ignore_ascii_case("klein") {
        return Ok(FiniteGroup::klein());
    }
    err(format!(
        "unknown group '{name}' (expected Zn, Sn, or klein)"
    ))
}

/// The base groupoid of the factor-swap example: G(Ω₂)×G(Ω₂) with the first
/// factor labeled +, − and arrows 1_+, α: − → +, α^-1, 1_-.
pub fn swap_base_groupoid() -> FiniteGroupoid {
    let mut p2 = pair_groupoid(2).expect("two objects");
    p2.set_labels(
        vec!["+".into(), "-".into()],
        vec!["1_+".into(), "α".into(), "α^-1".into(), "1_-".into()],
    );
    direct_product(&p2, &p2)
}

fn parse_expr(expr: &str) -> Result<FiniteGroupoid> {
    let expr = expr.trim();
    let call = |name: &str| -> Option<&str> {
        expr.strip_prefix(name)
            .and_then(|rest| rest.trim().strip_prefix('('))
            .and_then(|rest| rest.strip_suffix(')'))
    };
    if let Some(args) = call("pair") {
        let n: usize = args
            .trim()
            .parse()
            .map_err(|_| ParseError(format!("pair expects an object count, got '{args}'")))?;
        return pair_groupoid(n).map_err(|e| ParseError(e.to_string()));
    }
    if let Some(args) = call("group") {
        return Ok(group_groupoid(&parse_group(args)?));
    }
    if let Some(args) = call("product") {
        let parts = split_top(args);
        if parts.len() != 2 {
            return err("product expects exactly two arguments");
        }
        return Ok(direct_product(
            &parse_expr(&parts[0])?,
            &parse_expr(&parts[1])?,
        ));
    }
    if let Some(args) = call("named") {
        let name = args.trim();
        if name.eq_ignore_ascii_case("c2_4") {
            return Ok(c2_4());
        }
        return err(format!("unknown named groupoid '{name}'"));
    }
    if let Some(args) = call("action") {
        let mut parts = args.split(';');
        let group = parse_group(parts.next().unwrap_or(""))?;
        let table: Vec<Vec<usize>> = parts
            .map(|row| {
                row.split_whitespace()
                    .map(|t| {
                        t.parse::<usize>()
                            .map_err(|_| ParseError(format!("bad action entry '{t}'")))
                    })
                    .collect()
            })
            .collect::<Result<_>>()?;
        return action_groupoid(&group, &table).map_err(|e| ParseError(e.to_string()));
    }
    if expr.eq_ignore_ascii_case("c2_4") {
        return Ok(c2_4());
    }
    if expr.eq_ignore_ascii_case("swap_base") {
        return Ok(swap_base_groupoid());
    }
    err(format!("unrecognized groupoid expression '{expr}'"))
}

fn parse_explicit(lines: &[(usize, String)]) -> Result<FiniteGroupoid> {
    let mut objects: Vec<String> = Vec::new();
    let mut arrows: Vec<(String, usize, usize)> = Vec::new(); // label, source, target
    let mut units: Vec<Option<usize>> = Vec::new();
    let mut compositions: Vec<(usize, usize, usize, usize)> = Vec::new(); // line, f, g, f∘g

    let object_index = |objects: &[String], name: &str, line: usize| -> Result<usize> {
        objects
            .iter()
            .position(|o| o == name)
            .ok_or_else(|| ParseError(format!("line {line}: unknown object '{name}'")))
    };
    let arrow_index =
        |arrows: &[(String, usize, usize)], name: &str, line: usize| -> Result<usize> {
            arrows
                .iter()
                .position(|a| a.0 == name)
                .ok_or_else(|| ParseError(format!("line {line}: unknown arrow '{name}'")))
        };

    for (line, text) in lines {
        let line = *line;
        if let Some(rest) = text.strip_prefix("objects:") {
            objects = rest.split_whitespace().map(String::from).collect();
            units = vec![None; objects.len()];
        } else if let Some(rest) = text.strip_prefix("arrow ") {
            let (name, sig) = rest
                .split_once(':')
                .ok_or_else(|| ParseError(format!("line {line}: expected 'arrow name: x -> y'")))?;
            let (src, tgt) = sig
                .split_once("->")
                .ok_or_else(|| ParseError(format!("line {line}: expected 'x -> y'")))?;
            let s = object_index(&objects, src.trim(), line)?;
            let t = object_index(&objects, tgt.trim(), line)?;
            arrows.push((name.trim().to_string(), s, t));
        } else if let Some(rest) = text.strip_prefix("unit ") {
            let (obj, arr) = rest
                .split_once('=')
                .ok_or_else(|| ParseError(format!("line {line}: expected 'unit x = 1_x'")))?;
            let x = object_index(&objects, obj.trim(), line)?;
            units[x] = Some(arrow_index(&arrows, arr.trim(), line)?);
        } else if let Some(rest) = text.strip_prefix("compose ") {
            let (pair, result) = rest
                .split_once('=')
                .ok_or_else(|| ParseError(format!("line {line}: expected 'compose f g = h'")))?;
            let mut it = pair.split_whitespace();
            let (f, g) = (it.next().unwrap_or(""), it.next().unwrap_or(""));
            compositions.push((
                line,
                arrow_index(&arrows, f, line)?,
                arrow_index(&arrows, g, line)?,
                arrow_index(&arrows, result.trim(), line)?,
            ));
        } else {
            return err(format!("line {line}: unrecognized directive '{text}'"));
        }
    }
    if objects.is_empty() {
        return err("explicit listing has no objects");
    }
    let n_arrows = arrows.len();
    let unit: Vec<usize> = units
        .iter()
        .enumerate()
        .map(|(x, u)| u.ok_or_else(|| ParseError(format!("object '{}' has no unit", objects[x]))))
        .collect::<Result<_>>()?;
    let mut compose = vec![None; n_arrows * n_arrows];
    for (line, f, g, h) in compositions {
        let slot = &mut compose[f * n_arrows + g];
        if slot.is_some() {
            return err(format!("line {line}: duplicate composition entry"));
        }
        *slot = Some(h);
    }
    // inverses are determined: g is inverse to f when both composites are units
    let inverse: Vec<usize> = (0..n_arrows)
        .map(|f| {
            (0..n_arrows)
                .find(|&g| {
                    compose[g * n_arrows + f] == Some(unit[arrows[f].1])
                        && compose[f * n_arrows + g] == Some(unit[arrows[f].2])
                })
                .ok_or_else(|| ParseError(format!("arrow '{}' has no inverse", arrows[f].0)))
        })
        .collect::<Result<_>>()?;
    FiniteGroupoid::from_tables(
        objects.len(),
        arrows.iter().map(|a| a.1).collect(),
        arrows.iter().map(|a| a.2).collect(),
        unit,
        compose,
        inverse,
        Some(objects),
        Some(arrows.iter().map(|a| a.0.clone()).collect()),
    )
    .map_err(|e| ParseError(e.to_string()))
}

pub fn parse_groupoid(text: &str) -> Result<FiniteGroupoid> {
    let lines = logical_lines(text);
    if lines.is_empty() {
        return err("empty groupoid spec");
    }
    if lines.iter().any(|(_, l)| l.starts_with("objects:")) {
        parse_explicit(&lines)
    } else if lines.len() == 1 {
        parse_expr(&lines[0].1)
    } else {
        err("constructor form must be a single expression")
    }
}

pub fn parse_symmetroid(text: &str, limits: &Limits) -> Result<TwoGroupoid> {
    let lines = logical_lines(text);
    let mut groupoid: Option<FiniteGroupoid> = None;
    let mut cells = Vec::new();
    for (line, text) in &lines {
        if let Some(rest) = text.strip_prefix("groupoid:") {
            groupoid = Some(parse_expr(rest)?);
        } else if let Some(rest) = text.strip_prefix("cell ") {
            let g = groupoid
                .as_ref()
                .ok_or_else(|| ParseError(format!("line {line}: cell before groupoid")))?;
            let (name, body) = rest
                .split_once(':')
                .ok_or_else(|| ParseError(format!("line {line}: expected 'cell name: a => b'")))?;
            let (src, rest) = body
                .split_once("=>")
                .ok_or_else(|| ParseError(format!("line {line}: expected 'a => b'")))?;
            let mut it = rest.split_whitespace();
            let tgt = it.next().unwrap_or("");
            let parity = match it.next() {
                None | Some("+") => Parity::Plus,
                Some("-") => Parity::Minus,
                Some(tok) => return err(format!("line {line}: bad parity '{tok}'")),
            };
            let arrow = |label: &str| {
                g.arrow_by_label(label.trim())
                    .ok_or_else(|| ParseError(format!("line {line}: unknown arrow '{label}'")))
            };
            cells.push((name.trim().to_string(), arrow(src)?, arrow(tgt)?, parity));
        } else {
            return err(format!("line {line}: unrecognized directive '{text}'"));
        }
    }
    let g = groupoid.ok_or_else(|| ParseError("no 'groupoid:' line".into()))?;
    user_symmetroid(g, cells, true, limits).map_err(|e| ParseError(e.to_string()))
}

pub fn parse_function(text: &str, g: &FiniteGroupoid) -> Result<GroupoidFunction> {
    let mut f = GroupoidFunction::zero(g);
    for (line, text) in logical_lines(text) {
        let (label, value) = text
            .split_once('=')
            .ok_or_else(|| ParseError(format!("line {line}: expected 'label = re [im]'")))?;
        let a = g
            .arrow_by_label(label.trim())
            .ok_or_else(|| ParseError(format!("line {line}: unknown arrow '{}'", label.trim())))?;
        let mut parts = value.split_whitespace();
        let re: f64 = parts
            .next()
            .unwrap_or("")
            .parse()
            .map_err(|_| ParseError(format!("line {line}: bad real part")))?;
        let im: f64 = match parts.next() {
            Some(tok) => tok
                .parse()
                .map_err(|_| ParseError(format!("line {line}: bad imaginary part")))?,
            None => 0.0,
        };
        f.set(a, Complex64::new(re, im));
    }
    Ok(f)
}
