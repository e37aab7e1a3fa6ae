// SPDX-License-Identifier: Apache-2.0

//! Boolean expressions over named variables.
//!
//! Surface syntax, from loosest to tightest binding:
//!
//! ```text
//! or      := xor ( '+' xor )*
//! xor     := and ( ('^' | '⊕') and )*
//! and     := postfix ( '.'? postfix )*          juxtaposition or '.' is AND
//! postfix := primary '\''*                      apostrophe is NOT
//! primary := variable | '0' | '1' | '(' or ')'
//!          | '@nand(' or (',' or)* ')' | '@nor(' ... ')' | '@xnor(' ... ')'
//! ```
//!
//! Without an alphabet every variable is a single ASCII letter. With an
//! alphabet, variables are matched longest-first against its names, so
//! `Qa'QbQc` reads as three variables when the alphabet is `Qa,Qb,Qc`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{Error, Result};

/// An ordered list of distinct variable names. Position 0 is the most
/// significant bit of a truth-table row index.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct VarOrder(Vec<String>);

impl VarOrder {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, name) in names.iter().enumerate() {
            if !is_identifier(name) {
                return Err(Error::InvalidOrder(format!(
                    "`{name}` is not a valid variable name"
                )));
            }
            if names[..i].contains(name) {
                return Err(Error::InvalidOrder(format!("`{name}` appears twice")));
            }
        }
        Ok(VarOrder(names))
    }

    /// `A, B, C, ...` for `n` variables.
    pub fn letters(n: usize) -> Result<Self> {
        if n > 26 {
            return Err(Error::TooManyVariables {
                count: n,
                limit: 26,
            });
        }
        Ok(VarOrder(
            (0..n).map(|i| char::from(b'A' + i as u8).to_string()).collect(),
        ))
    }

    /// Parses a comma- or whitespace-separated list such as `A,B,C`.
    pub fn parse_list(s: &str) -> Result<Self> {
        VarOrder::new(
            s.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty()),
        )
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index_of(name).is_some()
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.0.iter().map(String::as_str)
    }

    /// True when no name is a proper prefix of another, which makes
    /// juxtaposed products unambiguous under longest-match lexing.
    pub fn is_prefix_free(&self) -> bool {
        self.0.iter().all(|a| {
            self.0
                .iter()
                .all(|b| a == b || !b.starts_with(a.as_str()))
        })
    }

    /// Appends the names of `other` that are not already present.
    pub fn union(&self, other: &VarOrder) -> VarOrder {
        let mut names = self.0.clone();
        for n in &other.0 {
            if !names.contains(n) {
                names.push(n.clone());
            }
        }
        VarOrder(names)
    }

    /// The assignment encoded by `row`: variable `k` takes bit `n-1-k`.
    pub fn assignment(&self, row: u32) -> BTreeMap<String, bool> {
        let n = self.len();
        self.0
            .iter()
            .enumerate()
            .map(|(k, name)| (name.clone(), row >> (n - 1 - k) & 1 == 1))
            .collect()
    }
}

impl fmt::Display for VarOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.join(","))
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Boolean expression tree. The n-ary variants hold at least two children.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Expr {
    Const(bool),
    Var(String),
    Not(Box<Expr>),
    And(Vec<Expr>),
    Or(Vec<Expr>),
    Xor(Vec<Expr>),
    Xnor(Vec<Expr>),
    Nand(Vec<Expr>),
    Nor(Vec<Expr>),
}

/// Source of variable values for [`Expr::evaluate`].
pub trait Assignment {
    fn value(&self, var: &str) -> Option<bool>;
}

impl<S: std::borrow::Borrow<str> + Ord> Assignment for BTreeMap<S, bool> {
    fn value(&self, var: &str) -> Option<bool> {
        self.get(var).copied()
    }
}

impl<S: std::borrow::Borrow<str> + Eq + std::hash::Hash> Assignment for HashMap<S, bool> {
    fn value(&self, var: &str) -> Option<bool> {
        self.get(var).copied()
    }
}

impl Assignment for [(&str, bool)] {
    fn value(&self, var: &str) -> Option<bool> {
        self.iter().find(|(n, _)| *n == var).map(|&(_, v)| v)
    }
}

impl<const N: usize> Assignment for [(&str, bool); N] {
    fn value(&self, var: &str) -> Option<bool> {
        self.as_slice().value(var)
    }
}

impl Expr {
    pub fn var(name: impl Into<String>) -> Expr {
        Expr::Var(name.into())
    }

    /// A variable, complemented when `positive` is false.
    pub fn literal(name: impl Into<String>, positive: bool) -> Expr {
        let v = Expr::var(name);
        if positive {
            v
        } else {
            Expr::not(v)
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(e: Expr) -> Expr {
        Expr::Not(Box::new(e))
    }

    /// Product of `terms`; the empty product is `1`, a single term is itself.
    pub fn and(mut terms: Vec<Expr>) -> Expr {
        match terms.len() {
            0 => Expr::Const(true),
            1 => terms.pop().unwrap(),
            _ => Expr::And(terms),
        }
    }

    /// Sum of `terms`; the empty sum is `0`, a single term is itself.
    pub fn or(mut terms: Vec<Expr>) -> Expr {
        match terms.len() {
            0 => Expr::Const(false),
            1 => terms.pop().unwrap(),
            _ => Expr::Or(terms),
        }
    }

    pub fn children(&self) -> &[Expr] {
        match self {
            Expr::Const(_) | Expr::Var(_) => &[],
            Expr::Not(e) => std::slice::from_ref(e),
            Expr::And(c)
            | Expr::Or(c)
            | Expr::Xor(c)
            | Expr::Xnor(c)
            | Expr::Nand(c)
            | Expr::Nor(c) => c,
        }
    }

    /// Checks the arity invariant of every node and the names of every leaf.
    pub fn validate(&self) -> Result<()> {
        match self {
            Expr::Const(_) => Ok(()),
            Expr::Var(name) if is_identifier(name) => Ok(()),
            Expr::Var(name) => Err(Error::InvalidOrder(format!(
                "`{name}` is not a valid variable name"
            ))),
            Expr::Not(e) => e.validate(),
            _ if self.children().len() < 2 => Err(Error::Invariant(format!(
                "{} node with {} operand(s)",
                self.op_name(),
                self.children().len()
            ))),
            _ => self.children().iter().try_for_each(Expr::validate),
        }
    }

    fn op_name(&self) -> &'static str {
        match self {
            Expr::Const(_) => "constant",
            Expr::Var(_) => "variable",
            Expr::Not(_) => "NOT",
            Expr::And(_) => "AND",
            Expr::Or(_) => "OR",
            Expr::Xor(_) => "XOR",
            Expr::Xnor(_) => "XNOR",
            Expr::Nand(_) => "NAND",
            Expr::Nor(_) => "NOR",
        }
    }

    /// Distinct variables in order of first appearance.
    pub fn variables(&self) -> VarOrder {
        fn walk(e: &Expr, out: &mut Vec<String>) {
            match e {
                Expr::Var(n) => {
                    if !out.contains(n) {
                        out.push(n.clone());
                    }
                }
                _ => e.children().iter().for_each(|c| walk(c, out)),
            }
        }
        let mut names = Vec::new();
        walk(self, &mut names);
        VarOrder(names)
    }

    pub fn evaluate<A: Assignment + ?Sized>(&self, assignment: &A) -> Result<bool> {
        Ok(match self {
            Expr::Const(b) => *b,
            Expr::Var(n) => assignment
                .value(n)
                .ok_or_else(|| Error::MissingVariable(n.clone()))?,
            Expr::Not(e) => !e.evaluate(assignment)?,
            Expr::And(c) => all(c, assignment)?,
            Expr::Nand(c) => !all(c, assignment)?,
            Expr::Or(c) => any(c, assignment)?,
            Expr::Nor(c) => !any(c, assignment)?,
            Expr::Xor(c) => parity(c, assignment)?,
            Expr::Xnor(c) => !parity(c, assignment)?,
        })
    }

    /// Merges directly nested AND-in-AND, OR-in-OR and XOR-in-XOR nodes.
    pub fn flatten(&self) -> Expr {
        fn merge(children: &[Expr], same: fn(&Expr) -> Option<&Vec<Expr>>) -> Vec<Expr> {
            let mut out = Vec::new();
            for c in children {
                let c = c.flatten();
                match same(&c) {
                    Some(inner) => out.extend(inner.iter().cloned()),
                    None => out.push(c),
                }
            }
            out
        }
        match self {
            Expr::Const(_) | Expr::Var(_) => self.clone(),
            Expr::Not(e) => Expr::not(e.flatten()),
            Expr::And(c) => Expr::And(merge(c, |e| match e {
                Expr::And(v) => Some(v),
                _ => None,
            })),
            Expr::Or(c) => Expr::Or(merge(c, |e| match e {
                Expr::Or(v) => Some(v),
                _ => None,
            })),
            Expr::Xor(c) => Expr::Xor(merge(c, |e| match e {
                Expr::Xor(v) => Some(v),
                _ => None,
            })),
            Expr::Xnor(c) => Expr::Xnor(c.iter().map(Expr::flatten).collect()),
            Expr::Nand(c) => Expr::Nand(c.iter().map(Expr::flatten).collect()),
            Expr::Nor(c) => Expr::Nor(c.iter().map(Expr::flatten).collect()),
        }
    }

    /// Compiles against `order` for fast row-indexed evaluation.
    pub(crate) fn compile(&self, order: &VarOrder) -> Result<Compiled> {
        let n = order.len();
        Ok(match self {
            Expr::Const(b) => Compiled::Const(*b),
            Expr::Var(name) => {
                let k = order
                    .index_of(name)
                    .ok_or_else(|| Error::MissingVariable(name.clone()))?;
                Compiled::Bit((n - 1 - k) as u32)
            }
            Expr::Not(e) => Compiled::Not(Box::new(e.compile(order)?)),
            _ => {
                let kids = self
                    .children()
                    .iter()
                    .map(|c| c.compile(order))
                    .collect::<Result<Vec<_>>>()?;
                let (op, negate) = match self {
                    Expr::And(_) => (NaryOp::And, false),
                    Expr::Nand(_) => (NaryOp::And, true),
                    Expr::Or(_) => (NaryOp::Or, false),
                    Expr::Nor(_) => (NaryOp::Or, true),
                    Expr::Xor(_) => (NaryOp::Xor, false),
                    _ => (NaryOp::Xor, true),
                };
                Compiled::Nary(op, negate, kids)
            }
        })
    }
}

fn all<A: Assignment + ?Sized>(c: &[Expr], a: &A) -> Result<bool> {
    let mut acc = true;
    for e in c {
        acc &= e.evaluate(a)?;
    }
    Ok(acc)
}

fn any<A: Assignment + ?Sized>(c: &[Expr], a: &A) -> Result<bool> {
    let mut acc = false;
    for e in c {
        acc |= e.evaluate(a)?;
    }
    Ok(acc)
}

fn parity<A: Assignment + ?Sized>(c: &[Expr], a: &A) -> Result<bool> {
    let mut acc = false;
    for e in c {
        acc ^= e.evaluate(a)?;
    }
    Ok(acc)
}

#[derive(Debug, Clone, Copy)]
pub(crate) enum NaryOp {
    And,
    Or,
    Xor,
}

/// An expression with variables resolved to row-index bit positions.
#[derive(Debug, Clone)]
pub(crate) enum Compiled {
    Const(bool),
    Bit(u32),
    Not(Box<Compiled>),
    Nary(NaryOp, bool, Vec<Compiled>),
}

impl Compiled {
    pub(crate) fn eval(&self, row: u32) -> bool {
        match self {
            Compiled::Const(b) => *b,
            Compiled::Bit(b) => row >> b & 1 == 1,
            Compiled::Not(e) => !e.eval(row),
            Compiled::Nary(op, negate, kids) => {
                let v = match op {
                    NaryOp::And => kids.iter().all(|k| k.eval(row)),
                    NaryOp::Or => kids.iter().any(|k| k.eval(row)),
                    NaryOp::Xor => kids.iter().fold(false, |acc, k| acc ^ k.eval(row)),
                };
                v ^ negate
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Rendering

const PREC_OR: u8 = 1;
const PREC_XOR: u8 = 2;
const PREC_AND: u8 = 3;
const PREC_ATOM: u8 = 4;

fn precedence(e: &Expr) -> u8 {
    match e {
        Expr::Or(_) => PREC_OR,
        Expr::Xor(_) => PREC_XOR,
        Expr::And(_) => PREC_AND,
        _ => PREC_ATOM,
    }
}

/// Renders `e` in the surface syntax. Products are juxtaposed when the
/// variable names allow unambiguous reading and joined with `.` otherwise.
pub fn render(e: &Expr) -> String {
    let juxtapose = e.variables().is_prefix_free();
    let mut out = String::new();
    write_expr(e, juxtapose, &mut out);
    out
}

/// Renders a product of sums with every factor parenthesized, e.g.
/// `(A + B')(A' + C)`. Constants and non-product expressions render as usual
/// except that a lone sum or literal is also wrapped: `(A')`.
pub fn render_pos(e: &Expr) -> String {
    match e {
        Expr::Const(_) => render(e),
        Expr::And(factors) => {
            let juxtapose = e.variables().is_prefix_free();
            let mut out = String::new();
            for (i, f) in factors.iter().enumerate() {
                if i > 0 && !juxtapose {
                    out.push('.');
                }
                out.push('(');
                write_expr(f, juxtapose, &mut out);
                out.push(')');
            }
            out
        }
        _ => format!("({})", render(e)),
    }
}

fn write_child(e: &Expr, min_prec: u8, juxtapose: bool, out: &mut String) {
    if precedence(e) < min_prec {
        out.push('(');
        write_expr(e, juxtapose, out);
        out.push(')');
    } else {
        write_expr(e, juxtapose, out);
    }
}

fn write_expr(e: &Expr, juxtapose: bool, out: &mut String) {
    match e {
        Expr::Const(b) => out.push(if *b { '1' } else { '0' }),
        Expr::Var(n) => out.push_str(n),
        Expr::Not(inner) => {
            write_child(inner, PREC_ATOM, juxtapose, out);
            out.push('\'');
        }
        Expr::And(c) => {
            for (i, k) in c.iter().enumerate() {
                if i > 0 && !juxtapose {
                    out.push('.');
                }
                write_child(k, PREC_AND, juxtapose, out);
            }
        }
        Expr::Xor(c) => {
            for (i, k) in c.iter().enumerate() {
                if i > 0 {
                    out.push_str(" ^ ");
                }
                write_child(k, PREC_AND, juxtapose, out);
            }
        }
        Expr::Or(c) => {
            for (i, k) in c.iter().enumerate() {
                if i > 0 {
                    out.push_str(" + ");
                }
                write_child(k, PREC_XOR, juxtapose, out);
            }
        }
        Expr::Xnor(c) | Expr::Nand(c) | Expr::Nor(c) => {
            let kw = match e {
                Expr::Xnor(_) => "@xnor(",
                Expr::Nand(_) => "@nand(",
                _ => "@nor(",
            };
            out.push_str(kw);
            for (i, k) in c.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write_expr(k, juxtapose, out);
            }
            out.push(')');
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self))
    }
}

// ---------------------------------------------------------------------------
// Parsing

/// Parses `text`. When `alphabet` is given, every variable must be one of
/// its names.
pub fn parse(text: &str, alphabet: Option<&VarOrder>) -> Result<Expr> {
    let mut p = Parser {
        chars: text.chars().collect(),
        pos: 0,
        alphabet,
    };
    p.skip_ws();
    if p.at_end() {
        return Err(p.error("empty expression"));
    }
    let e = p.parse_or()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.error(format!("unexpected `{}`", p.chars[p.pos])));
    }
    Ok(e)
}

impl std::str::FromStr for Expr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse(s, None)
    }
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    alphabet: Option<&'a VarOrder>,
}

impl Parser<'_> {
    fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        Error::Syntax {
            pos: self.pos + 1,
            msg: msg.into(),
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(match self.peek() {
                Some(found) => format!("expected `{c}`, found `{found}`"),
                None => format!("expected `{c}`, found end of input"),
            }))
        }
    }

    fn parse_or(&mut self) -> Result<Expr> {
        let mut terms = vec![self.parse_xor()?];
        loop {
            self.skip_ws();
            if self.peek() != Some('+') {
                break;
            }
            self.pos += 1;
            terms.push(self.parse_xor()?);
        }
        Ok(Expr::or(terms))
    }

    fn parse_xor(&mut self) -> Result<Expr> {
        let mut terms = vec![self.parse_and()?];
        loop {
            self.skip_ws();
            if !matches!(self.peek(), Some('^' | '⊕')) {
                break;
            }
            self.pos += 1;
            terms.push(self.parse_and()?);
        }
        Ok(if terms.len() == 1 {
            terms.pop().unwrap()
        } else {
            Expr::Xor(terms)
        })
    }

    fn parse_and(&mut self) -> Result<Expr> {
        let mut factors = vec![self.parse_postfix()?];
        loop {
            self.skip_ws();
            match self.peek() {
                Some('.') => {
                    self.pos += 1;
                    factors.push(self.parse_postfix()?);
                }
                Some(c) if starts_primary(c) => factors.push(self.parse_postfix()?),
                _ => break,
            }
        }
        Ok(Expr::and(factors))
    }

    fn parse_postfix(&mut self) -> Result<Expr> {
        let mut e = self.parse_primary()?;
        loop {
            self.skip_ws();
            if self.peek() != Some('\'') {
                break;
            }
            self.pos += 1;
            e = Expr::not(e);
        }
        Ok(e)
    }

    fn parse_primary(&mut self) -> Result<Expr> {
        self.skip_ws();
        let Some(c) = self.peek() else {
            return Err(self.error("unexpected end of input"));
        };
        match c {
            '(' => {
                self.pos += 1;
                let e = self.parse_or()?;
                self.expect(')')?;
                Ok(e)
            }
            '0' | '1' => {
                self.pos += 1;
                Ok(Expr::Const(c == '1'))
            }
            '@' => self.parse_call(),
            c if c.is_ascii_alphabetic() => self.parse_variable(),
            _ => Err(self.error(format!("unexpected `{c}`"))),
        }
    }

    fn parse_call(&mut self) -> Result<Expr> {
        let start = self.pos;
        self.pos += 1;
        let mut kw = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_alphabetic) {
            kw.push(c.to_ascii_lowercase());
            self.pos += 1;
        }
        let ctor: fn(Vec<Expr>) -> Expr = match kw.as_str() {
            "nand" => Expr::Nand,
            "nor" => Expr::Nor,
            "xnor" => Expr::Xnor,
            _ => {
                self.pos = start;
                return Err(self.error(format!("unknown operator `@{kw}`")));
            }
        };
        self.expect('(')?;
        let mut args = vec![self.parse_or()?];
        loop {
            self.skip_ws();
            if self.peek() == Some(',') {
                self.pos += 1;
                args.push(self.parse_or()?);
            } else {
                break;
            }
        }
        self.expect(')')?;
        if args.len() < 2 {
            self.pos = start;
            return Err(self.error(format!("@{kw} needs at least two operands")));
        }
        Ok(ctor(args))
    }

    fn parse_variable(&mut self) -> Result<Expr> {
        let start = self.pos;
        let Some(alphabet) = self.alphabet else {
            self.pos += 1;
            return Ok(Expr::Var(self.chars[start].to_string()));
        };
        let rest: String = self.chars[start..].iter().collect();
        let best = alphabet
            .iter()
            .filter(|name| rest.starts_with(name))
            .max_by_key(|name| name.len());
        match best {
            Some(name) => {
                self.pos += name.chars().count();
                Ok(Expr::Var(name.to_string()))
            }
            None => {
                let word: String = rest
                    .chars()
                    .take_while(|c| c.is_ascii_alphanumeric() || *c == '_')
                    .collect();
                Err(Error::UnknownVariable {
                    name: word,
                    pos: start + 1,
                })
            }
        }
    }
}

fn starts_primary(c: char) -> bool {
    c.is_ascii_alphabetic() || matches!(c, '(' | '0' | '1' | '@')
}
