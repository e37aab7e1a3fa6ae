// SPDX-License-Identifier: Apache-2.0

//! Exact two-level minimization.
//!
//! A function given as a [`TruthTable`] is minimized by generating all of its
//! prime implicants ([`prime_implicants`]) and then choosing a cover of the
//! 1-rows ([`select_cover`]). Don't-care rows may be absorbed into cubes but
//! never have to be covered. POS results come from minimizing the complement
//! and dualizing each cube into a sum term.

mod cube;
mod primes;
mod select;

use std::fmt;

pub use cube::{derive_term, Cube, Literal};
pub use primes::prime_implicants;
pub use select::select_cover;

use crate::error::Result;
use crate::expr::{render, render_pos, Expr, VarOrder};
use crate::truthtab::{TruthTable, Value};

/// Above this many variables `Exact` falls back to `Greedy`.
pub const EXACT_VAR_LIMIT: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Strategy {
    #[default]
    Exact,
    Greedy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Form {
    #[default]
    Sop,
    Pos,
}

/// A two-level realization of a function.
///
/// For `Sop` each cube is a product term and the function is their OR. For
/// `Pos` each cube is an implicant of the OFF-set: its sum term is the De
/// Morgan dual of the cube, and the function is the AND of the sum terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cover {
    form: Form,
    order: VarOrder,
    cubes: Vec<Cube>,
}

impl Cover {
    pub fn new(form: Form, order: VarOrder, cubes: Vec<Cube>) -> Cover {
        Cover { form, order, cubes }
    }

    pub fn sop(order: VarOrder, cubes: Vec<Cube>) -> Cover {
        Cover::new(Form::Sop, order, cubes)
    }

    pub fn form(&self) -> Form {
        self.form
    }

    pub fn order(&self) -> &VarOrder {
        &self.order
    }

    pub fn cubes(&self) -> &[Cube] {
        &self.cubes
    }

    pub fn len(&self) -> usize {
        self.cubes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cubes.is_empty()
    }

    pub fn literal_count(&self) -> u32 {
        self.cubes.iter().map(Cube::literal_count).sum()
    }

    /// Constant value when the cover realizes 0 or 1.
    pub fn constant(&self) -> Option<bool> {
        let has_universe = self.cubes.contains(&Cube::UNIVERSE);
        match self.form {
            Form::Sop if self.cubes.is_empty() => Some(false),
            Form::Sop if has_universe => Some(true),
            Form::Pos if self.cubes.is_empty() => Some(true),
            Form::Pos if has_universe => Some(false),
            _ => None,
        }
    }

    pub fn eval(&self, row: u32) -> bool {
        let hit = self.cubes.iter().any(|c| c.covers(row));
        match self.form {
            Form::Sop => hit,
            Form::Pos => !hit,
        }
    }

    pub fn to_table(&self) -> TruthTable {
        TruthTable::from_fn(self.order.clone(), |row| Value::from_bool(self.eval(row)))
            .expect("cover order within table limits")
    }

    pub fn to_expr(&self) -> Expr {
        if let Some(b) = self.constant() {
            return Expr::Const(b);
        }
        match self.form {
            Form::Sop => Expr::or(
                self.cubes
                    .iter()
                    .map(|c| derive_term(c, &self.order))
                    .collect(),
            ),
            Form::Pos => Expr::and(self.cubes.iter().map(|c| c.to_sum(&self.order)).collect()),
        }
    }
}

impl fmt::Display for Cover {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = self.to_expr();
        match self.form {
            Form::Sop => f.write_str(&render(&e)),
            Form::Pos => f.write_str(&render_pos(&e)),
        }
    }
}

fn effective(strategy: Strategy, n: usize) -> Strategy {
    if strategy == Strategy::Exact && n > EXACT_VAR_LIMIT {
        log::warn!(
            "{n} variables exceeds the exact limit of {EXACT_VAR_LIMIT}; using greedy cover selection"
        );
        Strategy::Greedy
    } else {
        strategy
    }
}

/// Minimized cover of `t` in the requested form.
pub fn minimize_cover(t: &TruthTable, form: Form, strategy: Strategy) -> Result<Cover> {
    let strategy = effective(strategy, t.num_vars());
    let target = match form {
        Form::Sop => t.clone(),
        Form::Pos => t.complement(),
    };
    let primes = prime_implicants(&target);
    let cubes = select_cover(&primes, &target, strategy)?;
    // a cover of every row collapses to the universal cube
    let cubes = if cubes.contains(&Cube::UNIVERSE) {
        vec![Cube::UNIVERSE]
    } else {
        cubes
    };
    Ok(Cover::new(form, t.order().clone(), cubes))
}

pub fn minimize_sop(t: &TruthTable, strategy: Strategy) -> Result<Expr> {
    Ok(minimize_cover(t, Form::Sop, strategy)?.to_expr())
}

pub fn minimize_pos(t: &TruthTable, strategy: Strategy) -> Result<Expr> {
    Ok(minimize_cover(t, Form::Pos, strategy)?.to_expr())
}
