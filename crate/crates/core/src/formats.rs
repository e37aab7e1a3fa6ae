// SPDX-License-Identifier: Apache-2.0

//! Text formats for programmable arrays and multi-output function files.
//!
//! PLA files:
//!
//! ```text
//! # majority
//! .i 3
//! .o 1
//! .p 3
//! 11- 1
//! 1-1 1
//! -11 1
//! .e
//! ```
//!
//! `.p` is the term capacity; when omitted it equals the number of terms. A
//! PAL file replaces `.p` with `.pal k`, the per-output term budget, and each
//! of its term lines sets exactly one output bit.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::expr::{parse, Expr, VarOrder};
use crate::minimize::Cube;
use crate::techmap::{PalProgram, PlaProgram, PlaTerm};

/// A parsed array file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Device {
    Pla(PlaProgram),
    Pal(PalProgram),
}

impl Device {
    pub fn inputs(&self) -> usize {
        match self {
            Device::Pla(p) => p.inputs(),
            Device::Pal(p) => p.inputs(),
        }
    }

    pub fn outputs(&self) -> usize {
        match self {
            Device::Pla(p) => p.outputs(),
            Device::Pal(p) => p.outputs().len(),
        }
    }

    pub fn eval(&self, row: u32) -> Vec<bool> {
        match self {
            Device::Pla(p) => p.eval(row),
            Device::Pal(p) => p.eval(row),
        }
    }

    /// Terms feeding output `j`, in file order.
    pub fn output_cubes(&self, j: usize) -> Vec<Cube> {
        match self {
            Device::Pla(p) => p
                .terms()
                .iter()
                .filter(|t| t.outputs[j])
                .map(|t| t.cube)
                .collect(),
            Device::Pal(p) => p.outputs()[j].clone(),
        }
    }

    pub fn to_text(&self) -> String {
        match self {
            Device::Pla(p) => emit_pla(p),
            Device::Pal(p) => emit_pal(p),
        }
    }
}

fn bits(v: &[bool]) -> String {
    v.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

/// A term line; zero-input arrays write only the output part.
fn term_line(s: &mut String, cube: &Cube, n: usize, outputs: &[bool]) {
    if n > 0 {
        write!(s, "{} ", cube.pattern(n)).unwrap();
    }
    writeln!(s, "{}", bits(outputs)).unwrap();
}

pub fn emit_pla(p: &PlaProgram) -> String {
    let mut s = String::new();
    writeln!(s, ".i {}\n.o {}\n.p {}", p.inputs(), p.outputs(), p.capacity()).unwrap();
    for t in p.terms() {
        term_line(&mut s, &t.cube, p.inputs(), &t.outputs);
    }
    s.push_str(".e\n");
    s
}

pub fn emit_pal(p: &PalProgram) -> String {
    let m = p.outputs().len();
    let mut s = String::new();
    writeln!(s, ".i {}\n.o {m}\n.pal {}", p.inputs(), p.budget()).unwrap();
    for (j, terms) in p.outputs().iter().enumerate() {
        let mut row = vec![false; m];
        row[j] = true;
        for c in terms {
            term_line(&mut s, c, p.inputs(), &row);
        }
    }
    s.push_str(".e\n");
    s
}

pub fn parse_pla(text: &str) -> Result<PlaProgram> {
    match parse_device(text)? {
        Device::Pla(p) => Ok(p),
        Device::Pal(_) => Err(Error::format(1, "expected a PLA file, found `.pal`")),
    }
}

pub fn parse_pal(text: &str) -> Result<PalProgram> {
    match parse_device(text)? {
        Device::Pal(p) => Ok(p),
        Device::Pla(_) => Err(Error::format(1, "expected a PAL file with `.pal`")),
    }
}

/// Parses a PLA or PAL file. Directives other than `.i`, `.o`, `.p`, `.pal`
/// and `.e` are rejected.
pub fn parse_device(text: &str) -> Result<Device> {
    let mut n: Option<usize> = None;
    let mut m: Option<usize> = None;
    let mut cap: Option<usize> = None;
    let mut pal: Option<usize> = None;
    let mut terms: Vec<(usize, PlaTerm)> = Vec::new();
    let mut ended = false;
    let mut last = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last = line;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        if ended {
            return Err(Error::format(line, "content after `.e`"));
        }
        let toks: Vec<&str> = body.split_whitespace().collect();
        if let Some(directive) = toks[0].strip_prefix('.') {
            let number = |slot: &mut Option<usize>| -> Result<()> {
                if !terms.is_empty() {
                    return Err(Error::format(line, format!("`.{directive}` after term lines")));
                }
                if slot.is_some() {
                    return Err(Error::format(line, format!("duplicate `.{directive}`")));
                }
                let [_, v] = toks.as_slice() else {
                    return Err(Error::format(line, format!("`.{directive}` takes one number")));
                };
                *slot = Some(v.parse().map_err(|_| {
                    Error::format(line, format!("`.{directive}` value `{v}` is not a number"))
                })?);
                Ok(())
            };
            match directive {
                "i" => number(&mut n)?,
                "o" => {
                    number(&mut m)?;
                    if m == Some(0) {
                        return Err(Error::format(line, "`.o` must be at least 1"));
                    }
                }
                "p" => number(&mut cap)?,
                "pal" => number(&mut pal)?,
                "e" if toks.len() == 1 => ended = true,
                _ => return Err(Error::format(line, format!("unsupported directive `{body}`"))),
            }
            continue;
        }
        let (Some(n), Some(m)) = (n, m) else {
            return Err(Error::format(line, "term line before `.i` and `.o`"));
        };
        let (ins, outs) = match toks.as_slice() {
            [outs] if n == 0 => ("", *outs),
            [ins, outs] => (*ins, *outs),
            _ => return Err(Error::format(line, "expected `<inputs> <outputs>`")),
        };
        if ins.len() != n {
            return Err(Error::format(
                line,
                format!("input part `{ins}` has {} characters, expected {n}", ins.len()),
            ));
        }
        let cube = Cube::parse_pattern(ins)
            .ok_or_else(|| Error::format(line, format!("input part `{ins}` must use 0, 1 or -")))?;
        if outs.len() != m || !outs.chars().all(|c| c == '0' || c == '1') {
            return Err(Error::format(
                line,
                format!("output part `{outs}` must be {m} characters of 0 or 1"),
            ));
        }
        let outputs = outs.chars().map(|c| c == '1').collect();
        terms.push((line, PlaTerm { cube, outputs }));
    }
    let (Some(n), Some(m)) = (n, m) else {
        return Err(Error::format(last.max(1), "missing `.i` or `.o`"));
    };
    let at = |e: Error| Error::format(last.max(1), e.to_string());
    match pal {
        None => {
            let cap = cap.unwrap_or(terms.len());
            let terms = terms.into_iter().map(|(_, t)| t).collect();
            PlaProgram::new(n, m, cap, terms).map_err(at).map(Device::Pla)
        }
        Some(k) => {
            if cap.is_some() {
                return Err(Error::format(1, "`.p` and `.pal` cannot be combined"));
            }
            let mut outputs = vec![Vec::new(); m];
            for (line, t) in terms {
                let mut set = t.outputs.iter().enumerate().filter(|(_, b)| **b);
                match (set.next(), set.next()) {
                    (Some((j, _)), None) => outputs[j].push(t.cube),
                    _ => {
                        return Err(Error::format(
                            line,
                            "PAL terms must feed exactly one output",
                        ))
                    }
                }
            }
            PalProgram::new(n, k, outputs).map_err(at).map(Device::Pal)
        }
    }
}

/// Parses `name = expr` lines. Blank lines and `#` comments are skipped.
pub fn parse_functions(text: &str, alphabet: Option<&VarOrder>) -> Result<Vec<(String, Expr)>> {
    let mut out: Vec<(String, Expr)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let Some((name, rhs)) = body.split_once('=') else {
            return Err(Error::format(line, "expected `name = expression`"));
        };
        let name = name.trim();
        VarOrder::new([name]).map_err(|_| Error::format(line, format!("bad output name `{name}`")))?;
        if out.iter().any(|(n, _)| n == name) {
            return Err(Error::format(line, format!("output `{name}` defined twice")));
        }
        let e = parse(rhs, alphabet).map_err(|e| Error::format(line, e.to_string()))?;
        out.push((name.to_string(), e));
    }
    if out.is_empty() {
        return Err(Error::format(1, "no functions defined"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    const MAJORITY: &str = "# majority\n.i 3\n.o 1\n.p 3\n11- 1\n1-1 1\n-11 1\n.e\n";

    #[test]
    fn pla_round_trip() {
        let p = parse_pla(MAJORITY).unwrap();
        assert_eq!(p.terms().len(), 3);
        assert_eq!(p.capacity(), 3);
        assert_eq!(emit_pla(&p), MAJORITY.trim_start_matches("# majority\n"));
        assert_eq!(parse_pla(&emit_pla(&p)).unwrap(), p);
        assert_eq!(p.eval(0b011), [true]);
        assert_eq!(p.eval(0b100), [false]);
    }

    #[test]
    fn pla_capacity_defaults_to_term_count() {
        let p = parse_pla(".i 2\n.o 2\n1- 10\n-1 11\n").unwrap();
        assert_eq!(p.capacity(), 2);
        let over = parse_pla(".i 2\n.o 1\n.p 1\n1- 1\n-1 1\n.e\n");
        assert!(matches!(over, Err(Error::Format { .. })));
    }

    #[test]
    fn pla_strictness() {
        let cases = [
            (".i 2\n.o 1\n.ilb A B\n", 3),
            (".i 2\n.o 1\n1 1\n", 3),
            (".i 2\n.o 1\n1x 1\n", 3),
            (".i 2\n.o 1\n11 -\n", 3),
            ("11 1\n", 1),
            (".i 2\n.o 1\n11 1\n.e\n00 1\n", 5),
            (".i 2\n.o 1\n11 1\n.p 4\n", 4),
        ];
        for (text, line) in cases {
            match parse_device(text) {
                Err(Error::Format { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?} gave {other:?}"),
            }
        }
    }

    #[test]
    fn pal_round_trip() {
        let text = ".i 3\n.o 2\n.pal 3\n11- 10\n-11 01\n1-1 01\n.e\n";
        let p = parse_pal(text).unwrap();
        assert_eq!(p.budget(), 3);
        assert_eq!(p.outputs()[1].len(), 2);
        assert_eq!(emit_pal(&p), text);
        assert!(parse_pal(".i 1\n.o 2\n.pal 1\n1 11\n").is_err());
        assert!(parse_pal(".i 1\n.o 1\n.pal 1\n1 1\n0 1\n").is_err());
        assert!(parse_pla(text).is_err());
    }

    #[test]
    fn function_files() {
        let fs = parse_functions("# outputs\nsum = A ^ B\ncarry = AB\n\n", None).unwrap();
        assert_eq!(fs.len(), 2);
        assert_eq!(fs[1].0, "carry");
        assert!(matches!(
            parse_functions("x = A\nx = B\n", None),
            Err(Error::Format { line: 2, .. })
        ));
        assert!(parse_functions("A + B\n", None).is_err());
        assert!(parse_functions("f = A +\n", None).is_err());
    }
}
