// SPDX-License-Identifier: Apache-2.0

//! Mapping covers onto programmable arrays and multiplexer trees.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::expr::VarOrder;
use crate::minimize::{Cover, Cube, Form};
use crate::netlist::{GateKind, Netlist, NetlistBuilder};
use crate::truthtab::{TruthTable, Value, MAX_VARS};

/// Product terms per output of a PAL when none is given.
pub const PAL_DEFAULT_TERMS: usize = 3;

/// One AND-plane row and the outputs it feeds.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PlaTerm {
    pub cube: Cube,
    pub outputs: Vec<bool>,
}

/// Programmable AND plane feeding a programmable OR plane.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PlaProgram {
    inputs: usize,
    outputs: usize,
    capacity: usize,
    terms: Vec<PlaTerm>,
}

impl PlaProgram {
    pub fn new(inputs: usize, outputs: usize, capacity: usize, terms: Vec<PlaTerm>) -> Result<Self> {
        check_inputs(inputs)?;
        if terms.len() > capacity {
            return Err(Error::PlaCapacity {
                required: terms.len(),
                available: capacity,
            });
        }
        for t in &terms {
            check_cube(&t.cube, inputs)?;
            if t.outputs.len() != outputs {
                return Err(Error::CoverMismatch(format!(
                    "term feeds {} outputs, expected {outputs}",
                    t.outputs.len()
                )));
            }
        }
        Ok(PlaProgram {
            inputs,
            outputs,
            capacity,
            terms,
        })
    }

    pub fn inputs(&self) -> usize {
        self.inputs
    }

    pub fn outputs(&self) -> usize {
        self.outputs
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn terms(&self) -> &[PlaTerm] {
        &self.terms
    }

    pub fn eval(&self, row: u32) -> Vec<bool> {
        let mut out = vec![false; self.outputs];
        for t in self.terms.iter().filter(|t| t.cube.covers(row)) {
            for (o, &bit) in out.iter_mut().zip(&t.outputs) {
                *o |= bit;
            }
        }
        out
    }

    /// Output `j` as an SOP cover over `order`.
    pub fn output_cover(&self, j: usize, order: &VarOrder) -> Cover {
        let mut cubes: Vec<Cube> = self
            .terms
            .iter()
            .filter(|t| t.outputs[j])
            .map(|t| t.cube)
            .collect();
        cubes.sort_unstable();
        cubes.dedup();
        Cover::sop(order.clone(), cubes)
    }

    /// Output `j` as a table over `order`.
    pub fn output_table(&self, j: usize, order: &VarOrder) -> Result<TruthTable> {
        if order.len() != self.inputs {
            return Err(Error::InvalidOrder(format!(
                "{} names for a {}-input array",
                order.len(),
                self.inputs
            )));
        }
        TruthTable::from_fn(order.clone(), |row| Value::from_bool(self.eval(row)[j]))
    }
}

/// Programmable AND plane with a fixed number of terms per output.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PalProgram {
    inputs: usize,
    budget: usize,
    outputs: Vec<Vec<Cube>>,
}

impl PalProgram {
    pub fn new(inputs: usize, budget: usize, outputs: Vec<Vec<Cube>>) -> Result<Self> {
        check_inputs(inputs)?;
        for (j, terms) in outputs.iter().enumerate() {
            if terms.len() > budget {
                return Err(Error::PalBudget {
                    output: j,
                    required: terms.len(),
                    budget,
                });
            }
            for c in terms {
                check_cube(c, inputs)?;
            }
        }
        Ok(PalProgram {
            inputs,
            budget,
            outputs,
        })
    }

    pub fn inputs(&self) -> usize {
        self.inputs
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn outputs(&self) -> &[Vec<Cube>] {
        &self.outputs
    }

    pub fn eval(&self, row: u32) -> Vec<bool> {
        self.outputs
            .iter()
            .map(|terms| terms.iter().any(|c| c.covers(row)))
            .collect()
    }
}

fn check_inputs(n: usize) -> Result<()> {
    if n > MAX_VARS {
        Err(Error::TooManyVariables {
            count: n,
            limit: MAX_VARS,
        })
    } else {
        Ok(())
    }
}

fn check_cube(c: &Cube, n: usize) -> Result<()> {
    let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    if c.mask() & !full != 0 {
        return Err(Error::CoverMismatch(format!(
            "cube {c} uses more than {n} inputs"
        )));
    }
    Ok(())
}

fn common_order(functions: &[Cover]) -> Result<usize> {
    let Some(first) = functions.first() else {
        return Ok(0);
    };
    for (j, c) in functions.iter().enumerate() {
        if c.form() != Form::Sop {
            return Err(Error::CoverMismatch(format!("output {j} is not a SOP cover")));
        }
        if c.order() != first.order() {
            return Err(Error::CoverMismatch(format!(
                "output {j} is over {} but output 0 is over {}",
                c.order(),
                first.order()
            )));
        }
    }
    Ok(first.order().len())
}

/// Places the terms of every cover in one AND plane, sharing identical
/// cubes. Terms appear in order of first use.
pub fn map_pla(functions: &[Cover], capacity: usize) -> Result<PlaProgram> {
    let n = common_order(functions)?;
    let m = functions.len();
    let mut terms: Vec<PlaTerm> = Vec::new();
    let mut index: HashMap<Cube, usize> = HashMap::new();
    for (j, cover) in functions.iter().enumerate() {
        for &cube in cover.cubes() {
            let t = *index.entry(cube).or_insert_with(|| {
                terms.push(PlaTerm {
                    cube,
                    outputs: vec![false; m],
                });
                terms.len() - 1
            });
            terms[t].outputs[j] = true;
        }
    }
    PlaProgram::new(n, m, capacity, terms)
}

/// Gives every output its own terms, at most `per_output_terms` each.
pub fn map_pal(functions: &[Cover], per_output_terms: usize) -> Result<PalProgram> {
    let n = common_order(functions)?;
    let outputs = functions.iter().map(|c| c.cubes().to_vec()).collect();
    PalProgram::new(n, per_output_terms, outputs)
}

enum Leaf {
    Const(bool),
    Net(String),
}

struct MuxTree<'a> {
    order: &'a VarOrder,
    b: NetlistBuilder,
    memo: HashMap<(usize, Vec<Value>), String>,
}

impl MuxTree<'_> {
    /// Realizes the subfunction `values` of the select variables from
    /// `depth` on. `name` names the net when a gate is created for it.
    fn build(&mut self, depth: usize, values: &[Value], name: Option<&str>) -> Leaf {
        if values.iter().all(|v| *v != Value::One) {
            return Leaf::Const(false);
        }
        if values.iter().all(|v| *v != Value::Zero) {
            return Leaf::Const(true);
        }
        let key = (depth, values.to_vec());
        if let Some(net) = self.memo.get(&key) {
            return Leaf::Net(net.clone());
        }
        let (lo, hi) = values.split_at(values.len() / 2);
        if lo == hi {
            return self.build(depth + 1, lo, name);
        }
        let s = self.order.names()[depth].clone();
        let d0 = self.build(depth + 1, lo, None);
        let d1 = self.build(depth + 1, hi, None);
        let net = match (d0, d1) {
            (Leaf::Const(false), Leaf::Const(true)) => return Leaf::Net(s),
            (Leaf::Const(true), Leaf::Const(false)) => match name {
                Some(n) => self.b.gate(GateKind::Not, vec![s], Some(n)),
                None => self.b.inverter(&s),
            },
            (Leaf::Const(false), Leaf::Net(d1)) => self.b.gate(GateKind::And, vec![s, d1], name),
            (Leaf::Const(true), Leaf::Net(d1)) => {
                let sn = self.b.inverter(&s);
                self.b.gate(GateKind::Or, vec![sn, d1], name)
            }
            (Leaf::Net(d0), Leaf::Const(false)) => {
                let sn = self.b.inverter(&s);
                self.b.gate(GateKind::And, vec![sn, d0], name)
            }
            (Leaf::Net(d0), Leaf::Const(true)) => self.b.gate(GateKind::Or, vec![s, d0], name),
            (d0, d1) => {
                let d0 = self.net(d0);
                let d1 = self.net(d1);
                let sn = self.b.inverter(&s);
                let a0 = self.b.gate(GateKind::And, vec![sn, d0], None);
                let a1 = self.b.gate(GateKind::And, vec![s, d1], None);
                self.b.gate(GateKind::Or, vec![a0, a1], name)
            }
        };
        self.memo.insert(key, net.clone());
        Leaf::Net(net)
    }

    fn net(&mut self, leaf: Leaf) -> String {
        match leaf {
            Leaf::Const(v) => self.b.constant(v),
            Leaf::Net(n) => n,
        }
    }
}

/// Shannon expansion of `t` into 2-to-1 multiplexers, the first select
/// variable at the root. Each cell is `S'd0 + S d1` in gates. Cells with
/// constant data inputs fold: `0,1` to a wire, `1,0` to an inverter, one
/// constant to a single AND or OR. Identical subtrees are shared and a
/// select the subfunction ignores is skipped.
/// Don't-care rows are resolved toward constant leaves. The output is `F`
/// unless the function is a single variable, which is wired straight out.
pub fn map_mux(t: &TruthTable, select_order: &VarOrder) -> Result<Netlist> {
    let t = t.permuted(select_order)?;
    let mut tree = MuxTree {
        order: select_order,
        b: NetlistBuilder::new(),
        memo: HashMap::new(),
    };
    for v in select_order.iter() {
        tree.b.input(v);
    }
    let out = match tree.build(0, t.outputs(), Some("F")) {
        Leaf::Const(v) => {
            let kind = if v { GateKind::Const1 } else { GateKind::Const0 };
            tree.b.gate(kind, vec![], Some("F"))
        }
        Leaf::Net(n) => n,
    };
    tree.b.output(out);
    tree.b.build()
}

/// One 2-to-1 multiplexer: inputs `S, d0, d1`, output `O = S'd0 + S d1`.
pub fn mux2_cell() -> Netlist {
    let mut b = NetlistBuilder::new();
    b.input("S").input("d0").input("d1");
    let sn = b.inverter("S");
    let a0 = b.gate(GateKind::And, vec![sn, "d0".into()], None);
    let a1 = b.gate(GateKind::And, vec!["S".into(), "d1".into()], None);
    b.gate(GateKind::Or, vec![a0, a1], Some("O"));
    b.output("O");
    b.build().expect("fixed structure")
}

/// Inputs `A, B`; outputs `sum = A xor B` and `carry = A and B`.
pub fn half_adder() -> Netlist {
    let mut b = NetlistBuilder::new();
    b.input("A").input("B");
    b.gate(GateKind::Xor, vec!["A".into(), "B".into()], Some("sum"));
    b.gate(GateKind::And, vec!["A".into(), "B".into()], Some("carry"));
    b.output("sum").output("carry");
    b.build().expect("fixed structure")
}
