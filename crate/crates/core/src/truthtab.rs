// SPDX-License-Identifier: Apache-2.0

//! Single-output truth tables, canonical SOP/POS forms, K-map layout and
//! exhaustive equivalence checking.
//!
//! Row `i` of an `n`-variable table assigns variable `k` the bit `n-1-k` of
//! `i`, so the first variable is the most significant bit.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::expr::{Expr, VarOrder};

/// Largest number of variables a table may have.
pub const MAX_VARS: usize = 24;

/// Default variable bound for [`equivalent`].
pub const DEFAULT_EQUIV_BOUND: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Value {
    Zero,
    One,
    DontCare,
}

impl Value {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Value::One
        } else {
            Value::Zero
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Value::Zero => '0',
            Value::One => '1',
            Value::DontCare => '-',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            '0' => Some(Value::Zero),
            '1' => Some(Value::One),
            '-' => Some(Value::DontCare),
            _ => None,
        }
    }

    /// Swaps 0 and 1; don't-care stays.
    pub fn complement(self) -> Self {
        match self {
            Value::Zero => Value::One,
            Value::One => Value::Zero,
            Value::DontCare => Value::DontCare,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruthTable {
    order: VarOrder,
    outputs: Vec<Value>,
}

fn check_width(n: usize) -> Result<()> {
    if n > MAX_VARS {
        Err(Error::TooManyVariables {
            count: n,
            limit: MAX_VARS,
        })
    } else {
        Ok(())
    }
}

impl TruthTable {
    pub fn new(order: VarOrder, outputs: Vec<Value>) -> Result<Self> {
        check_width(order.len())?;
        let expected = 1usize << order.len();
        if outputs.len() != expected {
            return Err(Error::TableSize {
                expected,
                found: outputs.len(),
            });
        }
        Ok(TruthTable { order, outputs })
    }

    pub fn from_fn(order: VarOrder, f: impl FnMut(u32) -> Value) -> Result<Self> {
        check_width(order.len())?;
        let outputs = (0..1u32 << order.len()).map(f).collect();
        Ok(TruthTable { order, outputs })
    }

    /// Table with 1 on `ones`, don't-care on `dont_cares`, 0 elsewhere.
    pub fn from_minterms(order: VarOrder, ones: &[u32], dont_cares: &[u32]) -> Result<Self> {
        check_width(order.len())?;
        let rows = 1u32 << order.len();
        let mut outputs = vec![Value::Zero; rows as usize];
        for (&r, v) in ones
            .iter()
            .map(|r| (r, Value::One))
            .chain(dont_cares.iter().map(|r| (r, Value::DontCare)))
        {
            if r >= rows {
                return Err(Error::TableSize {
                    expected: rows as usize,
                    found: r as usize + 1,
                });
            }
            outputs[r as usize] = v;
        }
        Ok(TruthTable { order, outputs })
    }

    /// Evaluates `e` on every row of `order`.
    pub fn from_expr(e: &Expr, order: &VarOrder) -> Result<Self> {
        check_width(order.len())?;
        let compiled = e.compile(order)?;
        TruthTable::from_fn(order.clone(), |row| Value::from_bool(compiled.eval(row)))
    }

    pub fn order(&self) -> &VarOrder {
        &self.order
    }

    pub fn num_vars(&self) -> usize {
        self.order.len()
    }

    pub fn num_rows(&self) -> usize {
        self.outputs.len()
    }

    pub fn outputs(&self) -> &[Value] {
        &self.outputs
    }

    pub fn get(&self, row: u32) -> Value {
        self.outputs[row as usize]
    }

    pub fn rows_with(&self, value: Value) -> impl Iterator<Item = u32> + '_ {
        self.outputs
            .iter()
            .enumerate()
            .filter(move |(_, v)| **v == value)
            .map(|(i, _)| i as u32)
    }

    pub fn ones(&self) -> Vec<u32> {
        self.rows_with(Value::One).collect()
    }

    pub fn zeros(&self) -> Vec<u32> {
        self.rows_with(Value::Zero).collect()
    }

    pub fn dont_cares(&self) -> Vec<u32> {
        self.rows_with(Value::DontCare).collect()
    }

    pub fn has_dont_cares(&self) -> bool {
        self.outputs.contains(&Value::DontCare)
    }

    pub fn complement(&self) -> TruthTable {
        TruthTable {
            order: self.order.clone(),
            outputs: self.outputs.iter().map(|v| v.complement()).collect(),
        }
    }

    /// Same function over a renamed variable list of equal length.
    pub fn with_order(&self, order: VarOrder) -> Result<TruthTable> {
        if order.len() != self.order.len() {
            return Err(Error::InvalidOrder(format!(
                "expected {} names, got {}",
                self.order.len(),
                order.len()
            )));
        }
        Ok(TruthTable {
            order,
            outputs: self.outputs.clone(),
        })
    }

    /// Same function with its variables listed in `order`, a permutation of
    /// the current names.
    pub fn permuted(&self, order: &VarOrder) -> Result<TruthTable> {
        let n = self.order.len();
        let pos = order
            .iter()
            .map(|v| self.order.index_of(v))
            .collect::<Option<Vec<_>>>()
            .filter(|p| p.len() == n && order.len() == n)
            .ok_or_else(|| {
                Error::InvalidOrder(format!("{order} is not a permutation of {}", self.order))
            })?;
        TruthTable::from_fn(order.clone(), |row| {
            let mut old = 0u32;
            for (k, &p) in pos.iter().enumerate() {
                if row >> (n - 1 - k) & 1 == 1 {
                    old |= 1 << (n - 1 - p);
                }
            }
            self.outputs[old as usize]
        })
    }

    /// True when `f` matches every row that is not a don't-care.
    pub fn agrees_with(&self, mut f: impl FnMut(u32) -> bool) -> bool {
        self.outputs.iter().enumerate().all(|(i, v)| match v {
            Value::DontCare => true,
            v => *v == Value::from_bool(f(i as u32)),
        })
    }

    /// The assignment of `row` as `(name, bit)` pairs.
    pub fn assignment(&self, row: u32) -> BTreeMap<String, bool> {
        self.order.assignment(row)
    }

    fn literal(&self, k: usize, row: u32, positive_when_one: bool) -> Expr {
        let n = self.num_vars();
        let bit = row >> (n - 1 - k) & 1 == 1;
        Expr::literal(self.order.names()[k].clone(), bit == positive_when_one)
    }

    /// Sum of one minterm per 1-row, ascending. An empty sum is `0`.
    pub fn canonical_sop(&self) -> Result<Expr> {
        if self.has_dont_cares() {
            return Err(Error::DontCarePresent);
        }
        let terms = self
            .rows_with(Value::One)
            .map(|row| Expr::and((0..self.num_vars()).map(|k| self.literal(k, row, true)).collect()))
            .collect();
        Ok(Expr::or(terms))
    }

    /// Product of one maxterm per 0-row, ascending. A variable appears
    /// uncomplemented in the maxterm of row `i` iff its bit in `i` is 0.
    pub fn canonical_pos(&self) -> Result<Expr> {
        if self.has_dont_cares() {
            return Err(Error::DontCarePresent);
        }
        let factors = self
            .rows_with(Value::Zero)
            .map(|row| Expr::or((0..self.num_vars()).map(|k| self.literal(k, row, false)).collect()))
            .collect();
        Ok(Expr::and(factors))
    }

    pub fn kmap(&self) -> Result<KmapGrid> {
        KmapGrid::new(self)
    }

    /// Text listing: a header of variable names (`-` when there are none),
    /// then one `bits value` line per row in index order.
    pub fn to_text(&self) -> String {
        let n = self.num_vars();
        let mut out = String::new();
        if n == 0 {
            out.push('-');
        } else {
            out.push_str(&self.order.names().join(" "));
        }
        out.push('\n');
        for (row, v) in self.outputs.iter().enumerate() {
            if n > 0 {
                out.push_str(&format!("{:0width$b} ", row, width = n));
            }
            out.push(v.as_char());
            out.push('\n');
        }
        out
    }

    /// Parses the format written by [`TruthTable::to_text`]. Rows may come
    /// in any order but each must appear exactly once; `#` starts a comment.
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hline, header) = lines
            .next()
            .ok_or_else(|| Error::format(1, "missing header line"))?;
        let order = if header == "-" {
            VarOrder::default()
        } else {
            VarOrder::new(header.split_whitespace())
                .map_err(|e| Error::format(hline, e.to_string()))?
        };
        let n = order.len();
        check_width(n)?;
        let mut outputs: Vec<Option<Value>> = vec![None; 1 << n];
        for (lineno, line) in lines {
            let fields: Vec<&str> = line.split_whitespace().collect();
            let (bits, value) = match (n, fields.as_slice()) {
                (0, [v]) => ("", *v),
                (_, [b, v]) if n > 0 => (*b, *v),
                _ => return Err(Error::format(lineno, "expected `<bits> <value>`")),
            };
            if bits.len() != n || !bits.chars().all(|c| c == '0' || c == '1') {
                return Err(Error::format(
                    lineno,
                    format!("row `{bits}` must be {n} binary digits"),
                ));
            }
            let row = if n == 0 {
                0
            } else {
                usize::from_str_radix(bits, 2).expect("checked binary digits")
            };
            let mut chars = value.chars();
            let v = match (chars.next().and_then(Value::from_char), chars.next()) {
                (Some(v), None) => v,
                _ => {
                    return Err(Error::format(
                        lineno,
                        format!("value `{value}` must be 0, 1 or -"),
                    ))
                }
            };
            if outputs[row].replace(v).is_some() {
                return Err(Error::format(lineno, format!("row `{bits}` listed twice")));
            }
        }
        let outputs = outputs
            .into_iter()
            .enumerate()
            .map(|(row, v)| {
                v.ok_or_else(|| {
                    Error::format(0, format!("row {row:0width$b} missing", width = n.max(1)))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        TruthTable::new(order, outputs)
    }
}

impl fmt::Display for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for TruthTable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TruthTable::parse_text(s)
    }
}

/// Reflected binary Gray sequence of `bits` bits.
pub fn gray_sequence(bits: usize) -> Vec<u32> {
    (0..1u32 << bits).map(|i| i ^ (i >> 1)).collect()
}

/// K-map cell layout. Rows are indexed by the leading variables and columns
/// by the trailing ones, both in Gray order:
///
/// * 2 variables: rows `A`, columns `B`
/// * 3 variables: rows `A`, columns `BC` = 00, 01, 11, 10
/// * 4 variables: rows `AB`, columns `CD`, both 00, 01, 11, 10
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KmapGrid {
    pub row_vars: Vec<String>,
    pub col_vars: Vec<String>,
    pub row_codes: Vec<u32>,
    pub col_codes: Vec<u32>,
    pub cells: Vec<Vec<Value>>,
}

impl KmapGrid {
    pub fn new(t: &TruthTable) -> Result<Self> {
        let n = t.num_vars();
        let row_bits = match n {
            2 | 3 => 1,
            4 => 2,
            _ => return Err(Error::KmapSize(n)),
        };
        let col_bits = n - row_bits;
        let names = t.order().names();
        let row_codes = gray_sequence(row_bits);
        let col_codes = gray_sequence(col_bits);
        let cells = row_codes
            .iter()
            .map(|&r| {
                col_codes
                    .iter()
                    .map(|&c| t.get(r << col_bits | c))
                    .collect()
            })
            .collect();
        Ok(KmapGrid {
            row_vars: names[..row_bits].to_vec(),
            col_vars: names[row_bits..].to_vec(),
            row_codes,
            col_codes,
            cells,
        })
    }

    /// The truth-table row shown in cell `(r, c)`.
    pub fn table_row(&self, r: usize, c: usize) -> u32 {
        self.row_codes[r] << self.col_vars.len() | self.col_codes[c]
    }

    pub fn rows(&self) -> usize {
        self.row_codes.len()
    }

    pub fn cols(&self) -> usize {
        self.col_codes.len()
    }
}

impl fmt::Display for KmapGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rb = self.row_vars.len();
        let cb = self.col_vars.len();
        let corner = format!("{}\\{}", self.row_vars.concat(), self.col_vars.concat());
        let w = corner.len().max(rb);
        let cw = cb.max(1);
        write!(f, "{corner:>w$} |")?;
        for c in &self.col_codes {
            write!(f, " {:0cw$b}", c)?;
        }
        writeln!(f)?;
        writeln!(f, "{}-+{}", "-".repeat(w), "-".repeat((cw + 1) * self.cols()))?;
        for (r, code) in self.row_codes.iter().enumerate() {
            write!(f, "{:>w$} |", format!("{:0rb$b}", code))?;
            for v in &self.cells[r] {
                write!(f, " {:>cw$}", v.as_char())?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// A row where two expressions differ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub order: VarOrder,
    pub row: u32,
    pub left: bool,
    pub right: bool,
}

impl Counterexample {
    pub fn assignment(&self) -> BTreeMap<String, bool> {
        self.order.assignment(self.row)
    }
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.order.len();
        let parts: Vec<String> = self
            .order
            .iter()
            .enumerate()
            .map(|(k, name)| format!("{name}={}", self.row >> (n - 1 - k) & 1))
            .collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Exhaustively compares `a` and `b` over the union of their variables.
/// When they differ, a row where `a` holds and `b` does not is preferred;
/// ties go to the smallest row index.
pub fn counterexample(a: &Expr, b: &Expr, bound: usize) -> Result<Option<Counterexample>> {
    let order = a.variables().union(&b.variables());
    if order.len() > bound.min(31) {
        return Err(Error::TooManyVariables {
            count: order.len(),
            limit: bound,
        });
    }
    let ca = a.compile(&order)?;
    let cb = b.compile(&order)?;
    let mut reverse = None;
    for row in 0..1u32 << order.len() {
        let (va, vb) = (ca.eval(row), cb.eval(row));
        if va != vb {
            if va {
                return Ok(Some(Counterexample {
                    order,
                    row,
                    left: va,
                    right: vb,
                }));
            }
            reverse.get_or_insert(row);
        }
    }
    Ok(reverse.map(|row| Counterexample {
        order,
        row,
        left: false,
        right: true,
    }))
}

/// True iff `a` and `b` agree on every assignment of their variables.
pub fn equivalent(a: &Expr, b: &Expr) -> Result<bool> {
    equivalent_within(a, b, DEFAULT_EQUIV_BOUND)
}

pub fn equivalent_within(a: &Expr, b: &Expr, bound: usize) -> Result<bool> {
    Ok(counterexample(a, b, bound)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{parse, render, render_pos};

    fn abc() -> VarOrder {
        VarOrder::letters(3).unwrap()
    }

    fn table(s: &str) -> TruthTable {
        let e = parse(s, None).unwrap();
        TruthTable::from_expr(&e, &e.variables()).unwrap()
    }

    fn majority() -> TruthTable {
        table("A'BC + AB'C + ABC' + ABC")
    }

    #[test]
    fn from_expr_rows() {
        use Value::*;
        assert_eq!(
            majority().outputs(),
            [Zero, Zero, Zero, One, Zero, One, One, One]
        );
        assert_eq!(table("ABC + A'BC + AB'C'").ones(), vec![3, 4, 7]);
        let zero = TruthTable::from_expr(&Expr::Const(false), &VarOrder::letters(1).unwrap())
            .unwrap();
        assert_eq!(zero.outputs(), [Zero, Zero]);
        let missing = TruthTable::from_expr(&parse("AD", None).unwrap(), &abc());
        assert_eq!(missing, Err(Error::MissingVariable("D".into())));
    }

    #[test]
    fn size_checks() {
        assert!(matches!(
            TruthTable::new(abc(), vec![Value::Zero; 7]),
            Err(Error::TableSize { expected: 8, found: 7 })
        ));
        let wide = VarOrder::new((0..25).map(|i| format!("x{i}"))).unwrap();
        assert!(matches!(
            TruthTable::from_fn(wide, |_| Value::Zero),
            Err(Error::TooManyVariables { .. })
        ));
    }

    #[test]
    fn canonical_sop_forms() {
        assert_eq!(
            render(&majority().canonical_sop().unwrap()),
            "A'BC + AB'C + ABC' + ABC"
        );
        let zeros = TruthTable::from_minterms(abc(), &[], &[]).unwrap();
        assert_eq!(render(&zeros.canonical_sop().unwrap()), "0");
        let ones1 = TruthTable::from_minterms(VarOrder::letters(1).unwrap(), &[0, 1], &[]).unwrap();
        assert_eq!(render(&ones1.canonical_sop().unwrap()), "A' + A");
        let dc = TruthTable::from_minterms(abc(), &[1], &[2]).unwrap();
        assert_eq!(dc.canonical_sop(), Err(Error::DontCarePresent));
        assert_eq!(dc.canonical_pos(), Err(Error::DontCarePresent));
    }

    #[test]
    fn canonical_pos_forms() {
        let single = TruthTable::from_fn(abc(), |r| Value::from_bool(r != 0b010)).unwrap();
        assert_eq!(render_pos(&single.canonical_pos().unwrap()), "(A + B' + C)");
        let ones = TruthTable::from_fn(abc(), |_| Value::One).unwrap();
        assert_eq!(render(&ones.canonical_pos().unwrap()), "1");
        assert_eq!(
            render_pos(&majority().canonical_pos().unwrap()),
            "(A + B + C)(A + B + C')(A + B' + C)(A' + B + C)"
        );
    }

    #[test]
    fn zero_variable_tables() {
        let one = table("1");
        assert_eq!(one.num_rows(), 1);
        assert_eq!(render(&one.canonical_sop().unwrap()), "1");
        assert_eq!(render(&table("0").canonical_pos().unwrap()), "0");
        assert_eq!(one.to_text(), "-\n1\n");
        assert_eq!(TruthTable::parse_text("-\n1\n").unwrap(), one);
    }

    #[test]
    fn kmap_layouts() {
        let ab = VarOrder::letters(4).unwrap();
        let t = TruthTable::from_fn(ab, |_| Value::Zero).unwrap();
        let g = t.kmap().unwrap();
        assert_eq!(g.col_codes, [0b00, 0b01, 0b11, 0b10]);
        assert_eq!(g.row_codes, [0b00, 0b01, 0b11, 0b10]);
        assert_eq!(g.row_vars, ["A", "B"]);
        assert_eq!(g.col_vars, ["C", "D"]);

        let and = table("AB").kmap().unwrap();
        let ones: Vec<_> = (0..2)
            .flat_map(|r| (0..2).map(move |c| (r, c)))
            .filter(|&(r, c)| and.cells[r][c] == Value::One)
            .collect();
        assert_eq!(ones, [(1, 1)]);

        assert_eq!(table("A").kmap(), Err(Error::KmapSize(1)));
    }

    #[test]
    fn kmap_majority_cells() {
        // 1-rows 3, 5, 6, 7 placed on rows A, columns BC = 00 01 11 10
        let g = majority().kmap().unwrap();
        let ones: Vec<_> = (0..2)
            .flat_map(|r| (0..4).map(move |c| (r, c)))
            .filter(|&(r, c)| g.cells[r][c] == Value::One)
            .collect();
        assert_eq!(ones, [(0, 2), (1, 1), (1, 2), (1, 3)]);
        let text = g.to_string();
        assert_eq!(
            text,
            "A\\BC | 00 01 11 10\n-----+------------\n   0 |  0  0  1  0\n   1 |  0  1  1  1\n"
        );
    }

    #[test]
    fn equivalence_oracle() {
        let maj = majority().canonical_sop().unwrap();
        assert!(equivalent(&parse("AB + AC + BC", None).unwrap(), &maj).unwrap());
        assert!(!equivalent(&parse("A", None).unwrap(), &parse("A'", None).unwrap()).unwrap());
        assert!(equivalent(
            &parse("A ^ B", None).unwrap(),
            &parse("AB' + A'B", None).unwrap()
        )
        .unwrap());
        let cex = counterexample(&parse("A", None).unwrap(), &parse("B", None).unwrap(), 24)
            .unwrap()
            .unwrap();
        assert_eq!(cex.to_string(), "A=1,B=0");
        let wide: Vec<String> = (0..25).map(|i| format!("x{i}")).collect();
        let alpha = VarOrder::new(wide.clone()).unwrap();
        let big = parse(&wide.join(" + "), Some(&alpha)).unwrap();
        assert!(matches!(
            equivalent(&big, &big),
            Err(Error::TooManyVariables { count: 25, limit: 24 })
        ));
    }

    #[test]
    fn text_format_errors() {
        assert!(TruthTable::parse_text("A B\n00 1\n01 0\n10 1\n").is_err());
        assert!(TruthTable::parse_text("A B\n00 1\n00 0\n10 1\n11 1\n").is_err());
        assert!(matches!(
            TruthTable::parse_text("A\n0 2\n1 1\n"),
            Err(Error::Format { line: 2, .. })
        ));
        let t = TruthTable::parse_text("# comment\nA B\n11 1 # last\n10 -\n01 0\n00 0\n").unwrap();
        assert_eq!(t.outputs(), [Value::Zero, Value::Zero, Value::DontCare, Value::One]);
    }
}
