// SPDX-License-Identifier: Apache-2.0

//! Gate-level netlists.
//!
//! A [`Netlist`] is validated on construction: every net has exactly one
//! driver (a primary input, a gate output or a flip-flop output), every read
//! net is driven, and the gates form an acyclic graph once flip-flop outputs
//! are treated as sources. Evaluation is zero-delay in topological order.
//!
//! Text format, one item per line, `#` starts a comment:
//!
//! ```text
//! input A
//! output F
//! gate g0 NOT A -> g0_o
//! gate g1 AND g0_o B -> F
//! dff ff0 D F -> Q [Qbar]
//! ```

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt::{self, Write as _};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::logic::Logic;
use crate::minimize::{Cover, Form, Literal};
use crate::seq::FlipFlopKind;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GateKind {
    And,
    Or,
    Not,
    Nand,
    Nor,
    Xor,
    Xnor,
    /// Constant-driver pseudo-gates with no inputs.
    Const0,
    Const1,
}

impl GateKind {
    pub const ALL: [GateKind; 9] = [
        GateKind::And,
        GateKind::Or,
        GateKind::Not,
        GateKind::Nand,
        GateKind::Nor,
        GateKind::Xor,
        GateKind::Xnor,
        GateKind::Const0,
        GateKind::Const1,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GateKind::And => "AND",
            GateKind::Or => "OR",
            GateKind::Not => "NOT",
            GateKind::Nand => "NAND",
            GateKind::Nor => "NOR",
            GateKind::Xor => "XOR",
            GateKind::Xnor => "XNOR",
            GateKind::Const0 => "CONST0",
            GateKind::Const1 => "CONST1",
        }
    }

    fn arity_ok(self, n: usize) -> bool {
        match self {
            GateKind::Not => n == 1,
            GateKind::Const0 | GateKind::Const1 => n == 0,
            _ => n >= 2,
        }
    }

    /// Three-valued evaluation: an unknown input yields X unless the known
    /// inputs already decide the result (a 0 into AND, a 1 into OR).
    pub fn eval(self, inputs: &[Logic]) -> Logic {
        let and = || {
            if inputs.contains(&Logic::Zero) {
                Logic::Zero
            } else if inputs.contains(&Logic::X) {
                Logic::X
            } else {
                Logic::One
            }
        };
        let or = || {
            if inputs.contains(&Logic::One) {
                Logic::One
            } else if inputs.contains(&Logic::X) {
                Logic::X
            } else {
                Logic::Zero
            }
        };
        let xor = || {
            if inputs.contains(&Logic::X) {
                Logic::X
            } else {
                Logic::from_bool(inputs.iter().filter(|v| **v == Logic::One).count() % 2 == 1)
            }
        };
        match self {
            GateKind::And => and(),
            GateKind::Nand => !and(),
            GateKind::Or => or(),
            GateKind::Nor => !or(),
            GateKind::Xor => xor(),
            GateKind::Xnor => !xor(),
            GateKind::Not => !inputs[0],
            GateKind::Const0 => Logic::Zero,
            GateKind::Const1 => Logic::One,
        }
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GateKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GateKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Netlist(format!("unknown gate kind `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Gate {
    pub id: String,
    pub kind: GateKind,
    pub inputs: Vec<String>,
    pub output: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FlipFlop {
    pub id: String,
    pub kind: FlipFlopKind,
    pub inputs: Vec<String>,
    pub q: String,
    pub qbar: Option<String>,
}

#[derive(Debug, Clone)]
pub struct Netlist {
    inputs: Vec<String>,
    outputs: Vec<String>,
    gates: Vec<Gate>,
    flops: Vec<FlipFlop>,
    // resolved connectivity
    nets: Vec<String>,
    net_ids: HashMap<String, usize>,
    gate_pins: Vec<(Vec<usize>, usize)>,
    topo: Vec<usize>,
}

impl PartialEq for Netlist {
    fn eq(&self, other: &Self) -> bool {
        self.inputs == other.inputs
            && self.outputs == other.outputs
            && self.gates == other.gates
            && self.flops == other.flops
    }
}

impl Eq for Netlist {}

fn valid_net_name(s: &str) -> bool {
    !s.is_empty() && s != "->" && !s.starts_with('#') && !s.chars().any(char::is_whitespace)
}

impl Netlist {
    pub fn new(
        inputs: Vec<String>,
        outputs: Vec<String>,
        gates: Vec<Gate>,
        flops: Vec<FlipFlop>,
    ) -> Result<Netlist> {
        let mut nets: Vec<String> = Vec::new();
        let mut net_ids: HashMap<String, usize> = HashMap::new();
        let mut intern = |name: &str| -> Result<usize> {
            if !valid_net_name(name) {
                return Err(Error::Netlist(format!("invalid net name `{name}`")));
            }
            Ok(*net_ids.entry(name.to_string()).or_insert_with(|| {
                nets.push(name.to_string());
                nets.len() - 1
            }))
        };

        // drivers: None = undriven, Some(desc)
        let mut drivers: HashMap<usize, String> = HashMap::new();
        let mut drive = |id: usize, name: &str, by: String| -> Result<()> {
            if let Some(prev) = drivers.insert(id, by.clone()) {
                return Err(Error::Netlist(format!(
                    "net `{name}` has two drivers: {prev} and {by}"
                )));
            }
            Ok(())
        };

        for i in &inputs {
            let id = intern(i)?;
            drive(id, i, format!("input `{i}`"))?;
        }
        let mut ids: HashMap<&str, ()> = HashMap::new();
        let mut gate_pins = Vec::with_capacity(gates.len());
        for g in &gates {
            if ids.insert(&g.id, ()).is_some() {
                return Err(Error::Netlist(format!("duplicate instance id `{}`", g.id)));
            }
            if !g.kind.arity_ok(g.inputs.len()) {
                return Err(Error::Netlist(format!(
                    "gate `{}`: {} cannot take {} input(s)",
                    g.id,
                    g.kind,
                    g.inputs.len()
                )));
            }
            let ins = g.inputs.iter().map(|n| intern(n)).collect::<Result<Vec<_>>>()?;
            let out = intern(&g.output)?;
            drive(out, &g.output, format!("gate `{}`", g.id))?;
            gate_pins.push((ins, out));
        }
        for ff in &flops {
            if ids.insert(&ff.id, ()).is_some() {
                return Err(Error::Netlist(format!("duplicate instance id `{}`", ff.id)));
            }
            if ff.inputs.len() != ff.kind.arity() {
                return Err(Error::Arity {
                    kind: ff.kind.name(),
                    expected: ff.kind.arity(),
                    found: ff.inputs.len(),
                });
            }
            for n in &ff.inputs {
                intern(n)?;
            }
            let q = intern(&ff.q)?;
            drive(q, &ff.q, format!("flip-flop `{}`", ff.id))?;
            if let Some(qb) = &ff.qbar {
                let id = intern(qb)?;
                drive(id, qb, format!("flip-flop `{}`", ff.id))?;
            }
        }
        for o in &outputs {
            intern(o)?;
        }
        if let Some((_, name)) = nets
            .iter()
            .enumerate()
            .find(|(id, _)| !drivers.contains_key(id))
        {
            return Err(Error::Netlist(format!("net `{name}` has no driver")));
        }

        let topo = topological_order(&nets, &gate_pins)?;
        Ok(Netlist {
            inputs,
            outputs,
            gates,
            flops,
            nets,
            net_ids,
            gate_pins,
            topo,
        })
    }

    pub fn inputs(&self) -> &[String] {
        &self.inputs
    }

    pub fn outputs(&self) -> &[String] {
        &self.outputs
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn flops(&self) -> &[FlipFlop] {
        &self.flops
    }

    pub fn nets(&self) -> &[String] {
        &self.nets
    }

    pub(crate) fn net_id(&self, name: &str) -> Option<usize> {
        self.net_ids.get(name).copied()
    }

    /// Evaluates every gate in topological order. Source nets (inputs and
    /// flip-flop outputs) must already hold their values.
    pub(crate) fn propagate(&self, values: &mut [Logic]) {
        let mut scratch = Vec::new();
        for &gi in &self.topo {
            let (ins, out) = &self.gate_pins[gi];
            scratch.clear();
            scratch.extend(ins.iter().map(|&i| values[i]));
            values[*out] = self.gates[gi].kind.eval(&scratch);
        }
    }

    /// Zero-delay evaluation of a netlist without flip-flops.
    pub fn eval_comb<S>(&self, inputs: &HashMap<S, bool>) -> Result<BTreeMap<String, bool>>
    where
        S: std::borrow::Borrow<str> + Eq + std::hash::Hash,
    {
        if !self.flops.is_empty() {
            return Err(Error::Netlist(
                "combinational evaluation of a netlist with flip-flops".into(),
            ));
        }
        let mut values = vec![Logic::X; self.nets.len()];
        for name in &self.inputs {
            let v = inputs
                .get(name.as_str())
                .ok_or_else(|| Error::MissingInput(name.clone()))?;
            values[self.net_ids[name]] = Logic::from_bool(*v);
        }
        self.propagate(&mut values);
        self.outputs
            .iter()
            .map(|o| {
                values[self.net_ids[o]]
                    .to_bool()
                    .map(|b| (o.clone(), b))
                    .ok_or_else(|| Error::Invariant(format!("output `{o}` evaluated to X")))
            })
            .collect()
    }

    /// Evaluates with inputs taken from `row` over the primary input order
    /// (first input is the most significant bit). Returns outputs in order.
    pub fn eval_row(&self, row: u32) -> Result<Vec<bool>> {
        let n = self.inputs.len();
        let map: HashMap<&str, bool> = self
            .inputs
            .iter()
            .enumerate()
            .map(|(k, name)| (name.as_str(), row >> (n - 1 - k) & 1 == 1))
            .collect();
        let out = self.eval_comb(&map)?;
        Ok(self.outputs.iter().map(|o| out[o]).collect())
    }

    pub fn stats(&self) -> GateStats {
        let mut counts = BTreeMap::new();
        for g in &self.gates {
            *counts.entry(g.kind).or_insert(0) += 1;
        }
        let mut level = vec![0usize; self.nets.len()];
        let mut depth = 0;
        for &gi in &self.topo {
            let (ins, out) = &self.gate_pins[gi];
            let l = ins.iter().map(|&i| level[i]).max().unwrap_or(0) + 1;
            level[*out] = l;
            depth = depth.max(l);
        }

        let mut literal_net = vec![false; self.nets.len()];
        for n in &self.inputs {
            literal_net[self.net_ids[n]] = true;
        }
        for ff in &self.flops {
            literal_net[self.net_ids[&ff.q]] = true;
            if let Some(qb) = &ff.qbar {
                literal_net[self.net_ids[qb]] = true;
            }
        }
        let sources = literal_net.clone();
        for (g, (ins, out)) in self.gates.iter().zip(&self.gate_pins) {
            if g.kind == GateKind::Not && sources[ins[0]] {
                literal_net[*out] = true;
            }
        }
        let literals = self
            .gates
            .iter()
            .zip(&self.gate_pins)
            .filter(|(g, _)| g.kind != GateKind::Not)
            .map(|(_, (ins, _))| ins.iter().filter(|&&i| literal_net[i]).count())
            .sum();
        GateStats {
            counts,
            depth,
            literals,
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for i in &self.inputs {
            writeln!(s, "input {i}").unwrap();
        }
        for o in &self.outputs {
            writeln!(s, "output {o}").unwrap();
        }
        for g in &self.gates {
            write!(s, "gate {} {}", g.id, g.kind).unwrap();
            for i in &g.inputs {
                write!(s, " {i}").unwrap();
            }
            writeln!(s, " -> {}", g.output).unwrap();
        }
        for ff in &self.flops {
            write!(s, "dff {} {}", ff.id, ff.kind.name()).unwrap();
            for i in &ff.inputs {
                write!(s, " {i}").unwrap();
            }
            write!(s, " -> {}", ff.q).unwrap();
            if let Some(qb) = &ff.qbar {
                write!(s, " {qb}").unwrap();
            }
            s.push('\n');
        }
        s
    }

    pub fn parse_text(text: &str) -> Result<Netlist> {
        let mut inputs = Vec::new();
        let mut outputs = Vec::new();
        let mut gates = Vec::new();
        let mut flops = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let toks: Vec<&str> = raw
                .split('#')
                .next()
                .unwrap_or("")
                .split_whitespace()
                .collect();
            let Some((&head, rest)) = toks.split_first() else {
                continue;
            };
            match head {
                "input" | "output" => {
                    let [name] = rest else {
                        return Err(Error::format(line, format!("`{head}` takes one net name")));
                    };
                    if head == "input" {
                        inputs.push(name.to_string());
                    } else {
                        outputs.push(name.to_string());
                    }
                }
                "gate" | "dff" => {
                    let arrow = rest
                        .iter()
                        .position(|t| *t == "->")
                        .ok_or_else(|| Error::format(line, "missing `->`"))?;
                    let (lhs, rhs) = (&rest[..arrow], &rest[arrow + 1..]);
                    let [id, kind, ins @ ..] = lhs else {
                        return Err(Error::format(line, format!("`{head}` needs an id and a kind")));
                    };
                    let ins: Vec<String> = ins.iter().map(|s| s.to_string()).collect();
                    if head == "gate" {
                        let [out] = rhs else {
                            return Err(Error::format(line, "gate drives exactly one net"));
                        };
                        let kind = kind
                            .parse::<GateKind>()
                            .map_err(|e| Error::format(line, e.to_string()))?;
                        gates.push(Gate {
                            id: id.to_string(),
                            kind,
                            inputs: ins,
                            output: out.to_string(),
                        });
                    } else {
                        let (q, qbar) = match rhs {
                            [q] => (q, None),
                            [q, qb] => (q, Some(qb.to_string())),
                            _ => {
                                return Err(Error::format(line, "flip-flop drives Q and optionally Q'"))
                            }
                        };
                        let kind = kind
                            .parse::<FlipFlopKind>()
                            .map_err(|e| Error::format(line, e.to_string()))?;
                        flops.push(FlipFlop {
                            id: id.to_string(),
                            kind,
                            inputs: ins,
                            q: q.to_string(),
                            qbar,
                        });
                    }
                }
                other => {
                    return Err(Error::format(line, format!("unknown statement `{other}`")));
                }
            }
        }
        Netlist::new(inputs, outputs, gates, flops)
    }

    /// Graphviz rendering for documentation.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph netlist {\n  rankdir=LR;\n");
        let q = |n: &str| format!("\"{}\"", n.replace('"', "\\\""));
        for i in &self.inputs {
            writeln!(s, "  {} [shape=plaintext];", q(&format!("in:{i}"))).unwrap();
        }
        for o in &self.outputs {
            writeln!(s, "  {} [shape=plaintext label={}];", q(&format!("out:{o}")), q(o)).unwrap();
        }
        for g in &self.gates {
            writeln!(s, "  {} [shape=box label={}];", q(&g.id), q(g.kind.name())).unwrap();
        }
        for ff in &self.flops {
            writeln!(
                s,
                "  {} [shape=box3d label={}];",
                q(&ff.id),
                q(&format!("{} {}", ff.kind.name(), ff.id))
            )
            .unwrap();
        }
        // driver node of every net
        let mut driver: HashMap<&str, String> = HashMap::new();
        for i in &self.inputs {
            driver.insert(i, format!("in:{i}"));
        }
        for g in &self.gates {
            driver.insert(&g.output, g.id.clone());
        }
        for ff in &self.flops {
            driver.insert(&ff.q, ff.id.clone());
            if let Some(qb) = &ff.qbar {
                driver.insert(qb, ff.id.clone());
            }
        }
        let sinks = self
            .gates
            .iter()
            .map(|g| (&g.id, &g.inputs))
            .chain(self.flops.iter().map(|f| (&f.id, &f.inputs)));
        for (id, ins) in sinks {
            for n in ins {
                writeln!(s, "  {} -> {} [label={}];", q(&driver[n.as_str()]), q(id), q(n)).unwrap();
            }
        }
        for o in &self.outputs {
            writeln!(s, "  {} -> {};", q(&driver[o.as_str()]), q(&format!("out:{o}"))).unwrap();
        }
        s.push_str("}\n");
        s
    }
}

impl fmt::Display for Netlist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for Netlist {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Netlist::parse_text(s)
    }
}

/// Kahn's algorithm; ties resolved by gate list position.
fn topological_order(nets: &[String], pins: &[(Vec<usize>, usize)]) -> Result<Vec<usize>> {
    let mut driver_gate = vec![usize::MAX; nets.len()];
    for (gi, (_, out)) in pins.iter().enumerate() {
        driver_gate[*out] = gi;
    }
    let mut fanout: Vec<Vec<usize>> = vec![Vec::new(); pins.len()];
    let mut pending = vec![0usize; pins.len()];
    for (gi, (ins, _)) in pins.iter().enumerate() {
        for &n in ins {
            let d = driver_gate[n];
            if d != usize::MAX {
                fanout[d].push(gi);
                pending[gi] += 1;
            }
        }
    }
    let mut queue: VecDeque<usize> = (0..pins.len()).filter(|&g| pending[g] == 0).collect();
    let mut order = Vec::with_capacity(pins.len());
    while let Some(g) = queue.pop_front() {
        order.push(g);
        for &h in &fanout[g] {
            pending[h] -= 1;
            if pending[h] == 0 {
                queue.push_back(h);
            }
        }
    }
    if order.len() < pins.len() {
        let stuck = (0..pins.len()).find(|&g| pending[g] > 0).unwrap();
        return Err(Error::Cycle(nets[pins[stuck].1].clone()));
    }
    Ok(order)
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GateStats {
    pub counts: BTreeMap<GateKind, usize>,
    /// Gates on the longest input-to-output path.
    pub depth: usize,
    /// Gate input pins fed by a variable or its complement.
    pub literals: usize,
}

impl GateStats {
    pub fn count(&self, kind: GateKind) -> usize {
        self.counts.get(&kind).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }
}

impl fmt::Display for GateStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in &self.counts {
            write!(f, "{k}:{c} ")?;
        }
        write!(f, "depth:{} literals:{}", self.depth, self.literals)
    }
}

/// Incremental netlist construction with shared inverters and constants.
/// Gate ids are `g0, g1, ...`; internal nets are `<id>_o`.
#[derive(Debug, Default)]
pub struct NetlistBuilder {
    inputs: Vec<String>,
    outputs: Vec<String>,
    gates: Vec<Gate>,
    flops: Vec<FlipFlop>,
    inverters: HashMap<String, String>,
    constants: [Option<String>; 2],
}

impl NetlistBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn input(&mut self, name: impl Into<String>) -> &mut Self {
        self.inputs.push(name.into());
        self
    }

    pub fn output(&mut self, net: impl Into<String>) -> &mut Self {
        self.outputs.push(net.into());
        self
    }

    /// Adds a gate and returns its output net.
    pub fn gate(&mut self, kind: GateKind, inputs: Vec<String>, output: Option<&str>) -> String {
        let id = format!("g{}", self.gates.len());
        let output = output.map_or_else(|| format!("{id}_o"), str::to_string);
        self.gates.push(Gate {
            id,
            kind,
            inputs,
            output: output.clone(),
        });
        output
    }

    /// The complement of `net`, one inverter per net.
    pub fn inverter(&mut self, net: &str) -> String {
        self.inverter_named(net, None)
    }

    fn inverter_named(&mut self, net: &str, name: Option<&str>) -> String {
        if let Some(out) = self.inverters.get(net) {
            return out.clone();
        }
        let out = self.gate(GateKind::Not, vec![net.to_string()], name);
        self.inverters.insert(net.to_string(), out.clone());
        out
    }

    /// Shared constant driver.
    pub fn constant(&mut self, value: bool) -> String {
        if let Some(net) = &self.constants[value as usize] {
            return net.clone();
        }
        let kind = if value { GateKind::Const1 } else { GateKind::Const0 };
        let net = self.gate(kind, vec![], None);
        self.constants[value as usize] = Some(net.clone());
        net
    }

    pub fn flop(
        &mut self,
        id: impl Into<String>,
        kind: FlipFlopKind,
        inputs: Vec<String>,
        q: impl Into<String>,
    ) -> &mut Self {
        self.flops.push(FlipFlop {
            id: id.into(),
            kind,
            inputs,
            q: q.into(),
            qbar: None,
        });
        self
    }

    /// Realizes `cover` as two-level AND-OR (SOP) or OR-AND (POS) logic over
    /// nets named by its variables, returning the net carrying the function.
    /// `name` names the final gate's output when one is created. Complemented
    /// literals share one inverter per variable; a single-literal term is
    /// wired directly; a constant cover gets a constant driver.
    pub fn add_cover(&mut self, cover: &Cover, name: Option<&str>) -> String {
        if let Some(b) = cover.constant() {
            return match name {
                Some(n) => {
                    let kind = if b { GateKind::Const1 } else { GateKind::Const0 };
                    self.gate(kind, vec![], Some(n))
                }
                None => self.constant(b),
            };
        }
        let order = cover.order();
        let n = order.len();
        let (term_kind, join_kind, positive) = match cover.form() {
            Form::Sop => (GateKind::And, GateKind::Or, Literal::Pos),
            Form::Pos => (GateKind::Or, GateKind::And, Literal::Neg),
        };
        let single = cover.len() == 1;

        // inverters first, in variable order
        let mut complemented = vec![false; n];
        for c in cover.cubes() {
            for (k, flag) in complemented.iter_mut().enumerate() {
                let l = c.literal(k, n);
                *flag |= l != Literal::Absent && l != positive;
            }
        }
        let lone_literal = single && cover.cubes()[0].literal_count() == 1;
        for (k, var) in order.iter().enumerate() {
            if complemented[k] {
                let as_output = if lone_literal { name } else { None };
                self.inverter_named(var, as_output);
            }
        }

        let mut terms = Vec::with_capacity(cover.len());
        for c in cover.cubes() {
            let lits: Vec<String> = order
                .iter()
                .enumerate()
                .filter_map(|(k, var)| match c.literal(k, n) {
                    Literal::Absent => None,
                    l if l == positive => Some(var.to_string()),
                    _ => Some(self.inverters[var].clone()),
                })
                .collect();
            if lits.len() == 1 {
                terms.push(lits.into_iter().next().unwrap());
            } else {
                let out = if single { name } else { None };
                terms.push(self.gate(term_kind, lits, out));
            }
        }
        if single {
            terms.pop().unwrap()
        } else {
            self.gate(join_kind, terms, name)
        }
    }

    pub fn build(self) -> Result<Netlist> {
        Netlist::new(self.inputs, self.outputs, self.gates, self.flops)
    }
}

/// AND-OR-inverter realization of a non-constant cover with output `F`
/// (or the variable itself when the cover is one positive literal).
pub fn synth_aoi(cover: &Cover) -> Result<Netlist> {
    if cover.constant().is_some() {
        return Err(Error::DegenerateCover);
    }
    synth_aoi_multi(&[("F".to_string(), cover.clone())])
}

/// Several named covers over one variable order sharing inverters; constant
/// covers get constant drivers.
pub fn synth_aoi_multi(functions: &[(String, Cover)]) -> Result<Netlist> {
    let mut b = NetlistBuilder::new();
    let Some((_, first)) = functions.first() else {
        return b.build();
    };
    for var in first.order().iter() {
        b.input(var);
    }
    for (name, cover) in functions {
        if cover.order() != first.order() {
            return Err(Error::CoverMismatch(format!(
                "`{name}` is over {} but expected {}",
                cover.order(),
                first.order()
            )));
        }
        let net = b.add_cover(cover, Some(name));
        b.output(net);
    }
    b.build()
}
