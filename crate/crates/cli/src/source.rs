// SPDX-License-Identifier: Apache-2.0

//! Loading functions from the command line: an expression, or a file holding
//! a truth table, a PLA/PAL array, `name = expr` lines, or one expression.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use karno::expr::parse;
use karno::formats::{parse_device, parse_functions};
use karno::truthtab::MAX_VARS;
use karno::{Expr, TruthTable, VarOrder};

/// Named tables over one variable order.
pub struct Functions {
    pub tables: Vec<(String, TruthTable)>,
}

impl Functions {
    pub fn single(self) -> Result<(String, TruthTable)> {
        if self.tables.len() != 1 {
            bail!("expected one function, found {}", self.tables.len());
        }
        Ok(self.tables.into_iter().next().unwrap())
    }
}

fn output_names(m: usize) -> Vec<String> {
    if m == 1 {
        vec!["F".to_string()]
    } else {
        (0..m).map(|j| format!("F{j}")).collect()
    }
}

fn first_line(text: &str) -> Option<&str> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
}

pub fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

/// Parses one expression, using `order` as the alphabet when given.
pub fn expression(text: &str, order: Option<&VarOrder>) -> Result<Expr> {
    Ok(parse(text, order)?)
}

/// An argument naming an existing file is read; anything else is an
/// expression.
pub fn load(arg: &str, order: Option<&VarOrder>) -> Result<Functions> {
    let path = Path::new(arg);
    if !path.is_file() {
        let e = expression(arg, order)?;
        return from_exprs(vec![("F".to_string(), e)], order);
    }
    let text = read(path)?;
    let ctx = || format!("in {}", path.display());
    let Some(first) = first_line(&text) else {
        bail!("{} is empty", path.display());
    };
    if first.starts_with('.') {
        let device = parse_device(&text).with_context(ctx)?;
        let order = match order {
            Some(o) if o.len() == device.inputs() => o.clone(),
            Some(o) => bail!(
                "--order names {} variables but the array has {} inputs",
                o.len(),
                device.inputs()
            ),
            None => VarOrder::letters(device.inputs()).with_context(ctx)?,
        };
        let tables = output_names(device.outputs())
            .into_iter()
            .enumerate()
            .map(|(j, name)| {
                let t = TruthTable::from_fn(order.clone(), |row| karno::Value::from_bool(device.eval(row)[j]))?;
                Ok((name, t))
            })
            .collect::<Result<_>>()?;
        return Ok(Functions { tables });
    }
    if let Ok(t) = TruthTable::parse_text(&text) {
        let t = match order {
            Some(o) => t.permuted(o).with_context(ctx)?,
            None => t,
        };
        return Ok(Functions {
            tables: vec![("F".to_string(), t)],
        });
    }
    let body: Vec<&str> = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .collect();
    if body.iter().all(|l| l.contains('=')) {
        let fs = parse_functions(&text, order).with_context(ctx)?;
        return from_exprs(fs, order);
    }
    let e = expression(&body.join(" "), order).with_context(ctx)?;
    from_exprs(vec![("F".to_string(), e)], order)
}

fn from_exprs(exprs: Vec<(String, Expr)>, order: Option<&VarOrder>) -> Result<Functions> {
    let order = match order {
        Some(o) => o.clone(),
        None => exprs
            .iter()
            .fold(VarOrder::default(), |acc, (_, e)| acc.union(&e.variables())),
    };
    if order.len() > MAX_VARS {
        bail!(karno::Error::TooManyVariables {
            count: order.len(),
            limit: MAX_VARS
        });
    }
    let tables = exprs
        .into_iter()
        .map(|(name, e)| Ok((name, TruthTable::from_expr(&e, &order)?)))
        .collect::<Result<_>>()?;
    Ok(Functions { tables })
}
