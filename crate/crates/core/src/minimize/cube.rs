// SPDX-License-Identifier: Apache-2.0

use std::cmp::Ordering;
use std::fmt;

use crate::expr::{Expr, VarOrder};

/// State of one variable inside a cube.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Literal {
    Neg,
    Pos,
    Absent,
}

/// A product term as a `(mask, value)` pair over row-index bits: variable
/// `k` of `n` lives at bit `n-1-k`; a set mask bit means the variable is
/// present with the polarity given by the value bit.
///
/// Cubes order by their literal sequence read from the first variable, with
/// `Neg < Pos < Absent`; this fixes every tie-break in cover selection and
/// the term order of printed covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Cube {
    mask: u32,
    value: u32,
}

impl Cube {
    pub const UNIVERSE: Cube = Cube { mask: 0, value: 0 };

    pub fn new(mask: u32, value: u32) -> Cube {
        Cube {
            mask,
            value: value & mask,
        }
    }

    /// The cube covering only `row` of an `n`-variable space.
    pub fn minterm(row: u32, n: usize) -> Cube {
        Cube::new(full_mask(n), row)
    }

    pub fn from_literals(lits: &[Literal]) -> Cube {
        let n = lits.len();
        let mut c = Cube::UNIVERSE;
        for (k, lit) in lits.iter().enumerate() {
            let bit = 1 << (n - 1 - k);
            match lit {
                Literal::Absent => {}
                Literal::Neg => c.mask |= bit,
                Literal::Pos => {
                    c.mask |= bit;
                    c.value |= bit;
                }
            }
        }
        c
    }

    pub fn mask(&self) -> u32 {
        self.mask
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn literal(&self, k: usize, n: usize) -> Literal {
        state_at(*self, n - 1 - k)
    }

    pub fn literals(&self, n: usize) -> Vec<Literal> {
        (0..n).map(|k| self.literal(k, n)).collect()
    }

    pub fn covers(&self, row: u32) -> bool {
        row & self.mask == self.value
    }

    /// True when every row of `other` is a row of `self`.
    pub fn contains(&self, other: &Cube) -> bool {
        other.mask & self.mask == self.mask && other.value & self.mask == self.value
    }

    pub fn literal_count(&self) -> u32 {
        self.mask.count_ones()
    }

    /// Number of rows covered in an `n`-variable space.
    pub fn size(&self, n: usize) -> u64 {
        1u64 << (n as u32 - self.literal_count())
    }

    /// Rows covered in an `n`-variable space, ascending.
    pub fn rows(&self, n: usize) -> impl Iterator<Item = u32> {
        let free = full_mask(n) & !self.mask;
        let value = self.value;
        // enumerate subsets of `free` in increasing order
        let mut sub = Some(0u32);
        std::iter::from_fn(move || {
            let s = sub?;
            sub = if s == free {
                None
            } else {
                Some((s | !free).wrapping_add(1) & free)
            };
            Some(value | s)
        })
    }

    /// Merges two cubes that share a mask and differ in exactly one value bit.
    pub fn merge(&self, other: &Cube) -> Option<Cube> {
        let diff = self.value ^ other.value;
        (self.mask == other.mask && diff.count_ones() == 1).then_some(Cube {
            mask: self.mask & !diff,
            value: self.value & !diff,
        })
    }

    /// The cube with variable at bit `bit` removed.
    pub fn without_bit(&self, bit: u32) -> Cube {
        Cube::new(self.mask & !(1 << bit), self.value)
    }

    /// `0`/`1`/`-` string, first variable leftmost.
    pub fn pattern(&self, n: usize) -> String {
        self.literals(n)
            .into_iter()
            .map(|l| match l {
                Literal::Neg => '0',
                Literal::Pos => '1',
                Literal::Absent => '-',
            })
            .collect()
    }

    pub fn parse_pattern(s: &str) -> Option<Cube> {
        let lits = s
            .chars()
            .map(|c| match c {
                '0' => Some(Literal::Neg),
                '1' => Some(Literal::Pos),
                '-' => Some(Literal::Absent),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()?;
        (lits.len() <= 32).then(|| Cube::from_literals(&lits))
    }

    /// The product of this cube's literals; the universal cube is `1`.
    pub fn to_product(&self, order: &VarOrder) -> Expr {
        let n = order.len();
        Expr::and(
            order
                .iter()
                .enumerate()
                .filter_map(|(k, name)| match self.literal(k, n) {
                    Literal::Absent => None,
                    l => Some(Expr::literal(name, l == Literal::Pos)),
                })
                .collect(),
        )
    }

    /// The sum term that is 0 exactly on this cube's rows (De Morgan dual of
    /// the product); the universal cube gives `0`.
    pub fn to_sum(&self, order: &VarOrder) -> Expr {
        let n = order.len();
        Expr::or(
            order
                .iter()
                .enumerate()
                .filter_map(|(k, name)| match self.literal(k, n) {
                    Literal::Absent => None,
                    l => Some(Expr::literal(name, l == Literal::Neg)),
                })
                .collect(),
        )
    }
}

pub(crate) fn full_mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

fn state_at(c: Cube, bit: usize) -> Literal {
    if c.mask >> bit & 1 == 0 {
        Literal::Absent
    } else if c.value >> bit & 1 == 1 {
        Literal::Pos
    } else {
        Literal::Neg
    }
}

impl Ord for Cube {
    fn cmp(&self, other: &Self) -> Ordering {
        let diff = (self.mask ^ other.mask) | (self.value ^ other.value);
        if diff == 0 {
            return Ordering::Equal;
        }
        let bit = 31 - diff.leading_zeros() as usize;
        state_at(*self, bit).cmp(&state_at(*other, bit))
    }
}

impl PartialOrd for Cube {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Cube {
    /// Pattern over the lowest significant bits that are in use; prefer
    /// [`Cube::pattern`] when the variable count is known.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = 32 - self.mask.leading_zeros() as usize;
        write!(f, "{}", self.pattern(n.max(1)))
    }
}

/// Product term of cube `c` over `order`.
pub fn derive_term(c: &Cube, order: &VarOrder) -> Expr {
    c.to_product(order)
}
