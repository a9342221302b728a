//! Line-based text formats: machine files, system files, meta sidecars,
//! development dumps, polynomial dumps. All ASCII, ids decimal, `#` starts
//! a comment in machine and polynomial files.

use std::fmt::Write as _;

use anyhow::{anyhow, bail, Context, Result};
use carpet_core::dynsys::{Diagonal, DynamicalSystem, Letter, LetterId, Role, RuleTable};
use carpet_core::fieldpoly::Poly2;
use carpet_core::turing::{Move, StateId, SymbolId, Transition, TuringMachine};

fn role_to_string(role: Role) -> String {
    format!("{}", role)
}

fn parse_role(s: &str) -> Result<Role> {
    Ok(match s {
        "one" => Role::One,
        "zero" => Role::Zero,
        "bottom" => Role::Bottom,
        "bootstrap" => Role::Bootstrap,
        "type0" => Role::Type0,
        _ => {
            let lv = s
                .strip_prefix("pair")
                .and_then(|t| t.parse::<u8>().ok())
                .ok_or_else(|| anyhow!("unknown letter role {:?}", s))?;
            Role::Pair(lv)
        }
    })
}

pub fn system_to_string(sys: &DynamicalSystem) -> Result<String> {
    let mut out = String::new();
    writeln!(out, "letters {}", sys.letters.len())?;
    for l in &sys.letters {
        if l.name.is_empty() || l.name.chars().any(|c| c.is_whitespace()) {
            bail!("letter {} has an unserializable name {:?}", l.id.0, l.name);
        }
        writeln!(out, "L {} {} {}", l.id.0, l.name, role_to_string(l.role))?;
    }
    writeln!(out, "zero {}", sys.zero.0)?;
    writeln!(out, "one {}", sys.one.0)?;
    if let Some(b) = sys.bottom {
        writeln!(out, "bottom {}", b.0)?;
    }
    writeln!(out, "symmetric {}", if sys.symmetric { 1 } else { 0 })?;
    for (a, b, c) in sys.table.iter_defined() {
        writeln!(out, "R {} {} {}", a.0, b.0, c.0)?;
    }
    Ok(out)
}

pub fn parse_system(text: &str) -> Result<DynamicalSystem> {
    let mut letters: Vec<Letter> = Vec::new();
    let mut count: Option<usize> = None;
    let mut zero: Option<u32> = None;
    let mut one: Option<u32> = None;
    let mut bottom: Option<u32> = None;
    let mut symmetric = false;
    let mut rules: Vec<(u32, u32, u32)> = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let ctx = || format!("system file line {}", ln + 1);
        let mut it = line.split_whitespace();
        let key = it.next().unwrap();
        let num = |it: &mut dyn Iterator<Item = &str>| -> Result<u32> {
            it.next()
                .ok_or_else(|| anyhow!("missing field"))
                .and_then(|t| t.parse::<u32>().map_err(|e| anyhow!("{}", e)))
                .with_context(ctx)
        };
        match key {
            "letters" => count = Some(num(&mut it)? as usize),
            "L" => {
                let id = num(&mut it)?;
                let name = it.next().ok_or_else(|| anyhow!("missing name")).with_context(ctx)?;
                let role = it.next().ok_or_else(|| anyhow!("missing role")).with_context(ctx)?;
                letters.push(Letter {
                    id: LetterId(id),
                    name: name.to_string(),
                    role: parse_role(role).with_context(ctx)?,
                });
            }
            "zero" => zero = Some(num(&mut it)?),
            "one" => one = Some(num(&mut it)?),
            "bottom" => bottom = Some(num(&mut it)?),
            "symmetric" => symmetric = num(&mut it)? != 0,
            "R" => {
                let a = num(&mut it)?;
                let b = num(&mut it)?;
                let c = num(&mut it)?;
                rules.push((a, b, c));
            }
            _ => bail!("{}: unknown record {:?}", ctx(), key),
        }
        if it.next().is_some() {
            bail!("{}: trailing fields", ctx());
        }
    }
    let count = count.ok_or_else(|| anyhow!("system file has no letters header"))?;
    if letters.len() != count {
        bail!("system file declares {} letters but lists {}", count, letters.len());
    }
    let size = letters.len() as u32;
    for l in &letters {
        if l.id.0 >= size {
            bail!("letter id {} out of range", l.id.0);
        }
    }
    let zero = LetterId(zero.ok_or_else(|| anyhow!("system file has no zero line"))?);
    let one = LetterId(one.ok_or_else(|| anyhow!("system file has no one line"))?);
    let bottom = bottom.map(LetterId);
    let mut table = RuleTable::new(size, bottom);
    for (a, b, c) in rules {
        if a >= size || b >= size || c >= size {
            bail!("rule ({}, {}) -> {} uses an id out of range", a, b, c);
        }
        table
            .set(LetterId(a), LetterId(b), LetterId(c))
            .map_err(|e| anyhow!("{}", e))?;
    }
    Ok(DynamicalSystem { letters, table, zero, one, bottom, symmetric })
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

pub fn parse_machine(text: &str) -> Result<TuringMachine> {
    let mut symbols: Vec<String> = Vec::new();
    let mut states: Vec<String> = Vec::new();
    let mut start: Option<String> = None;
    let mut halt: Option<String> = None;
    let mut rule_lines: Vec<(usize, String)> = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = strip_comment(raw).trim();
        if line.is_empty() {
            continue;
        }
        let (key, rest) = line
            .split_once(':')
            .ok_or_else(|| anyhow!("machine file line {}: expected `key: ...`", ln + 1))?;
        let rest = rest.trim();
        match key.trim() {
            "alphabet" => symbols = rest.split_whitespace().map(String::from).collect(),
            "states" => states = rest.split_whitespace().map(String::from).collect(),
            "start" => start = Some(rest.to_string()),
            "halt" => halt = Some(rest.to_string()),
            "rule" => rule_lines.push((ln + 1, rest.to_string())),
            other => bail!("machine file line {}: unknown record {:?}", ln + 1, other),
        }
    }
    if symbols.is_empty() {
        bail!("machine file has no alphabet line");
    }
    if states.is_empty() {
        bail!("machine file has no states line");
    }
    let sym_id = |name: &str| -> Result<SymbolId> {
        symbols
            .iter()
            .position(|s| s == name)
            .map(|i| SymbolId(i as u16))
            .ok_or_else(|| anyhow!("unknown symbol {:?}", name))
    };
    let state_id = |name: &str| -> Result<StateId> {
        states
            .iter()
            .position(|s| s == name)
            .map(|i| StateId(i as u16))
            .ok_or_else(|| anyhow!("unknown state {:?}", name))
    };
    let start = state_id(&start.ok_or_else(|| anyhow!("machine file has no start line"))?)?;
    let halt = state_id(&halt.ok_or_else(|| anyhow!("machine file has no halt line"))?)?;
    let mut rules: Vec<(StateId, SymbolId, Transition)> = Vec::new();
    for (ln, rest) in rule_lines {
        let ctx = || format!("machine file line {}", ln);
        let (lhs, rhs) = rest
            .split_once("->")
            .ok_or_else(|| anyhow!("rule has no `->`"))
            .with_context(ctx)?;
        let lhs: Vec<&str> = lhs.split_whitespace().collect();
        let rhs: Vec<&str> = rhs.split_whitespace().collect();
        if lhs.len() != 2 || rhs.len() != 3 {
            bail!("{}: rule shape is `<state> <sym> -> <state> <sym> <R|L|S>`", ctx());
        }
        let mv = match rhs[2] {
            "R" => Move::Right,
            "L" => Move::Left,
            "S" => Move::Stay,
            other => bail!("{}: unknown move {:?}", ctx(), other),
        };
        rules.push((
            state_id(lhs[0]).with_context(ctx)?,
            sym_id(lhs[1]).with_context(ctx)?,
            Transition {
                write: sym_id(rhs[1]).with_context(ctx)?,
                next: state_id(rhs[0]).with_context(ctx)?,
                mv,
            },
        ));
    }
    TuringMachine::new(symbols, states, start, halt, &rules).map_err(|e| anyhow!("{}", e))
}

/// Input word as whitespace-separated symbol names; empty means the empty
/// word.
pub fn parse_word(m: &TuringMachine, text: &str) -> Result<Vec<SymbolId>> {
    text.split_whitespace()
        .map(|name| {
            m.symbols
                .iter()
                .position(|s| s == name)
                .map(|i| SymbolId(i as u16))
                .ok_or_else(|| anyhow!("unknown symbol {:?} in input word", name))
        })
        .collect()
}

pub fn dump_diagonals(diags: &[Diagonal]) -> String {
    let mut out = String::new();
    for d in diags {
        out.push_str(&format!("D {}:", d.n));
        for c in &d.cells {
            out.push_str(&format!(" {}", c.0));
        }
        out.push('\n');
    }
    out
}

pub fn meta_to_string(pairs: &[(&str, String)]) -> String {
    let mut out = String::new();
    for (k, v) in pairs {
        out.push_str(&format!("meta {} {}\n", k, v));
    }
    out
}

pub fn poly_to_string(poly: &Poly2) -> String {
    let mut out = format!("p {}\n", poly.p);
    for (i, j, c) in poly.nonzero_coeffs() {
        out.push_str(&format!("C {} {} {}\n", i, j, c));
    }
    out
}

pub fn parse_poly(text: &str) -> Result<Poly2> {
    let mut p: Option<u64> = None;
    let mut coeffs: Vec<Vec<u64>> = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = strip_comment(raw).trim();
        if line.is_empty() {
            continue;
        }
        let ctx = || format!("polynomial file line {}", ln + 1);
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields[0] {
            "p" => {
                if fields.len() != 2 || p.is_some() {
                    bail!("{}: malformed modulus line", ctx());
                }
                let m: u64 = fields[1].parse().with_context(ctx)?;
                coeffs = vec![vec![0; m as usize]; m as usize];
                p = Some(m);
            }
            "C" => {
                let m = p.ok_or_else(|| anyhow!("{}: coefficient before modulus", ctx()))?;
                if fields.len() != 4 {
                    bail!("{}: malformed coefficient line", ctx());
                }
                let i: usize = fields[1].parse().with_context(ctx)?;
                let j: usize = fields[2].parse().with_context(ctx)?;
                let v: u64 = fields[3].parse().with_context(ctx)?;
                if i >= m as usize || j >= m as usize || v >= m {
                    bail!("{}: coefficient out of range", ctx());
                }
                coeffs[i][j] = v;
            }
            other => bail!("{}: unknown record {:?}", ctx(), other),
        }
    }
    let p = p.ok_or_else(|| anyhow!("polynomial file has no modulus line"))?;
    Ok(Poly2 { p, coeffs })
}
