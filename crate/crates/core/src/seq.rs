// SPDX-License-Identifier: Apache-2.0

//! Storage elements, synchronous state machine synthesis and clocked
//! simulation.
//!
//! Simulation is cycle based. Each cycle applies that cycle's stimuli,
//! evaluates the combinational logic from the current flip-flop outputs, then
//! updates every flip-flop at once on the rising clock edge. Watched nets are
//! sampled after the edge.

use std::collections::HashMap;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::expr::VarOrder;
use crate::logic::Logic;
use crate::minimize::{minimize_cover, Cover, Form, Strategy};
use crate::netlist::{Netlist, NetlistBuilder};
use crate::truthtab::{TruthTable, Value};

/// Largest state register handled by FSM synthesis.
pub const MAX_STATE_BITS: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FlipFlopKind {
    /// Cross-coupled NAND latch, inputs `S R`, both active low.
    SrLatch,
    /// Clocked RS flip-flop, inputs `S R`, active high.
    Rs,
    Jk,
    D,
}

/// Next-state behaviour selected by a flip-flop's inputs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NextState {
    Zero,
    One,
    Hold,
    Toggle,
    Invalid,
}

impl FlipFlopKind {
    pub fn name(self) -> &'static str {
        match self {
            FlipFlopKind::SrLatch => "SR",
            FlipFlopKind::Rs => "RS",
            FlipFlopKind::Jk => "JK",
            FlipFlopKind::D => "D",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            FlipFlopKind::D => 1,
            _ => 2,
        }
    }

    /// Characteristic table lookup.
    pub fn characteristic(self, inputs: &[bool]) -> Result<NextState> {
        self.check_arity(inputs.len())?;
        use NextState::*;
        Ok(match (self, inputs) {
            (FlipFlopKind::D, [d]) => {
                if *d {
                    One
                } else {
                    Zero
                }
            }
            (FlipFlopKind::SrLatch, [s, r]) => match (s, r) {
                (false, true) => One,
                (true, false) => Zero,
                (true, true) => Hold,
                (false, false) => Invalid,
            },
            (FlipFlopKind::Rs, [s, r]) => match (s, r) {
                (false, false) => Hold,
                (false, true) => Zero,
                (true, false) => One,
                (true, true) => Invalid,
            },
            (FlipFlopKind::Jk, [j, k]) => match (j, k) {
                (false, false) => Hold,
                (false, true) => Zero,
                (true, false) => One,
                (true, true) => Toggle,
            },
            _ => unreachable!("arity checked"),
        })
    }

    fn check_arity(self, found: usize) -> Result<()> {
        if found == self.arity() {
            Ok(())
        } else {
            Err(Error::Arity {
                kind: self.name(),
                expected: self.arity(),
                found,
            })
        }
    }
}

impl fmt::Display for FlipFlopKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FlipFlopKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "SR" => Ok(FlipFlopKind::SrLatch),
            "RS" => Ok(FlipFlopKind::Rs),
            "JK" => Ok(FlipFlopKind::Jk),
            "D" => Ok(FlipFlopKind::D),
            _ => Err(Error::Netlist(format!("unknown flip-flop kind `{s}`"))),
        }
    }
}

/// Next value of a flip-flop holding `q`. Hold keeps `q`, toggle inverts it,
/// and invalid inputs give X. Unknown inputs give X unless every way of
/// resolving them leads to the same known value.
pub fn ff_next(kind: FlipFlopKind, inputs: &[Logic], q: Logic) -> Result<Logic> {
    kind.check_arity(inputs.len())?;
    let unknown: Vec<usize> = (0..inputs.len()).filter(|&i| !inputs[i].is_known()).collect();
    let mut result: Option<Logic> = None;
    for combo in 0..1u32 << unknown.len() {
        let bits: Vec<bool> = inputs
            .iter()
            .enumerate()
            .map(|(i, v)| match v.to_bool() {
                Some(b) => b,
                None => {
                    let slot = unknown.iter().position(|&u| u == i).unwrap();
                    combo >> slot & 1 == 1
                }
            })
            .collect();
        let next = match kind.characteristic(&bits)? {
            NextState::Zero => Logic::Zero,
            NextState::One => Logic::One,
            NextState::Hold => q,
            NextState::Toggle => !q,
            NextState::Invalid => Logic::X,
        };
        match result {
            None => result = Some(next),
            Some(prev) if prev != next => return Ok(Logic::X),
            _ => {}
        }
    }
    Ok(result.unwrap_or(Logic::X))
}

/// Name of state bit `i`: `Qa`, `Qb`, ...
pub fn state_bit_name(i: usize) -> String {
    format!("Q{}", char::from(b'a' + i as u8))
}

fn suffix(i: usize) -> char {
    char::from(b'a' + i as u8)
}

/// Input-free synchronous state table. Row `s` holds the next state of
/// present state `s`, one value per bit; bit 0 (`Qa`) is the most significant.
/// Unlisted present states are all don't-care.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateTable {
    width: usize,
    next: Vec<Vec<Value>>,
    reset: Option<u32>,
}

impl StateTable {
    pub fn new(width: usize) -> Result<Self> {
        if width == 0 || width > MAX_STATE_BITS {
            return Err(Error::StateTable(format!(
                "state width must be 1..={MAX_STATE_BITS}, got {width}"
            )));
        }
        Ok(StateTable {
            width,
            next: vec![vec![Value::DontCare; width]; 1 << width],
            reset: None,
        })
    }

    pub fn from_transitions(width: usize, transitions: &[(u32, u32)]) -> Result<Self> {
        let mut st = StateTable::new(width)?;
        for &(from, to) in transitions {
            st.set(from, to)?;
        }
        Ok(st)
    }

    fn check_state(&self, s: u32) -> Result<()> {
        if (s as usize) < self.next.len() {
            Ok(())
        } else {
            Err(Error::StateTable(format!(
                "state {s} does not fit in {} bits",
                self.width
            )))
        }
    }

    /// Sets a fully specified transition.
    pub fn set(&mut self, from: u32, to: u32) -> Result<()> {
        self.check_state(from)?;
        self.check_state(to)?;
        let w = self.width;
        let row = (0..w)
            .map(|k| Value::from_bool(to >> (w - 1 - k) & 1 == 1))
            .collect();
        self.set_row(from, row)
    }

    /// Sets a row that may contain don't-care bits.
    pub fn set_row(&mut self, from: u32, row: Vec<Value>) -> Result<()> {
        self.check_state(from)?;
        if row.len() != self.width {
            return Err(Error::StateTable(format!(
                "next state has {} bits, expected {}",
                row.len(),
                self.width
            )));
        }
        if self.is_specified(from) {
            return Err(Error::StateTable(format!(
                "present state {from:0w$b} listed twice",
                w = self.width
            )));
        }
        self.next[from as usize] = row;
        Ok(())
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn num_states(&self) -> usize {
        self.next.len()
    }

    pub fn reset(&self) -> Option<u32> {
        self.reset
    }

    pub fn set_reset(&mut self, reset: Option<u32>) -> Result<()> {
        if let Some(r) = reset {
            self.check_state(r)?;
        }
        self.reset = reset;
        Ok(())
    }

    pub fn row(&self, s: u32) -> &[Value] {
        &self.next[s as usize]
    }

    /// True when any bit of the row is specified.
    pub fn is_specified(&self, s: u32) -> bool {
        self.next[s as usize].iter().any(|v| *v != Value::DontCare)
    }

    /// Next state when every bit of the row is specified.
    pub fn next_state(&self, s: u32) -> Option<u32> {
        self.next[s as usize].iter().try_fold(0u32, |acc, v| match v {
            Value::Zero => Some(acc << 1),
            Value::One => Some(acc << 1 | 1),
            Value::DontCare => None,
        })
    }

    /// `Qa, Qb, ...` for the state bits.
    pub fn state_vars(&self) -> VarOrder {
        VarOrder::new((0..self.width).map(state_bit_name)).expect("distinct names")
    }

    /// Next-state bit `i` as a function of the present state.
    pub fn next_bit_table(&self, i: usize) -> TruthTable {
        TruthTable::from_fn(self.state_vars(), |s| self.next[s as usize][i])
            .expect("width within limits")
    }

    pub fn to_text(&self) -> String {
        let w = self.width;
        let mut s = format!("states {w}\n");
        if let Some(r) = self.reset {
            writeln!(s, "reset {r:0w$b}").unwrap();
        }
        for st in 0..self.next.len() as u32 {
            if self.is_specified(st) {
                let row: String = self.next[st as usize].iter().map(|v| v.as_char()).collect();
                writeln!(s, "{st:0w$b} -> {row}").unwrap();
            }
        }
        s
    }

    /// Parses `states <w>`, an optional `reset <bits>`, then `bits -> bits`
    /// rows. `-` marks a don't-care next-state bit; `#` starts a comment.
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut table: Option<StateTable> = None;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let toks: Vec<&str> = raw
                .split('#')
                .next()
                .unwrap_or("")
                .split_whitespace()
                .collect();
            if toks.is_empty() {
                continue;
            }
            let Some(st) = table.as_mut() else {
                match toks.as_slice() {
                    ["states", w] => {
                        let w: usize = w
                            .parse()
                            .map_err(|_| Error::format(line, format!("bad width `{w}`")))?;
                        table = Some(StateTable::new(w).map_err(|e| Error::format(line, e.to_string()))?);
                        continue;
                    }
                    _ => return Err(Error::format(line, "expected `states <width>` header")),
                }
            };
            let w = st.width;
            let parse_code = |bits: &str| -> Result<u32> {
                if bits.len() != w || !bits.chars().all(|c| c == '0' || c == '1') {
                    return Err(Error::format(
                        line,
                        format!("`{bits}` must be {w} binary digits"),
                    ));
                }
                Ok(u32::from_str_radix(bits, 2).unwrap())
            };
            match toks.as_slice() {
                ["reset", bits] => {
                    let r = parse_code(bits)?;
                    st.reset = Some(r);
                }
                [present, "->", next] => {
                    let from = parse_code(present)?;
                    if next.len() != w {
                        return Err(Error::format(
                            line,
                            format!("next state `{next}` must have {w} bits"),
                        ));
                    }
                    let row = next
                        .chars()
                        .map(Value::from_char)
                        .collect::<Option<Vec<_>>>()
                        .ok_or_else(|| {
                            Error::format(line, format!("next state `{next}` must use 0, 1 or -"))
                        })?;
                    st.set_row(from, row)
                        .map_err(|e| Error::format(line, e.to_string()))?;
                }
                [_, _, _, ..] if toks.contains(&"->") => {
                    return Err(Error::format(
                        line,
                        "input-dependent state tables are not supported",
                    ));
                }
                _ => return Err(Error::format(line, "expected `<bits> -> <bits>`")),
            }
        }
        table.ok_or_else(|| Error::format(1, "empty state table"))
    }
}

impl fmt::Display for StateTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for StateTable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        StateTable::parse_text(s)
    }
}

/// Named states with exactly one successor each.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateDiagram {
    states: Vec<String>,
    next: Vec<usize>,
}

impl StateDiagram {
    pub fn new<S: Into<String>>(states: Vec<S>, transitions: &[(&str, &str)]) -> Result<Self> {
        let states: Vec<String> = states.into_iter().map(Into::into).collect();
        if states.is_empty() {
            return Err(Error::StateTable("diagram has no states".into()));
        }
        let index = |name: &str| {
            states
                .iter()
                .position(|s| s == name)
                .ok_or_else(|| Error::StateTable(format!("unknown state `{name}`")))
        };
        let mut next = vec![None; states.len()];
        for (from, to) in transitions {
            let (f, t) = (index(from)?, index(to)?);
            if next[f].replace(t).is_some() {
                return Err(Error::StateTable(format!(
                    "state `{from}` has more than one transition"
                )));
            }
        }
        let next = next
            .into_iter()
            .enumerate()
            .map(|(i, t)| {
                t.ok_or_else(|| Error::StateTable(format!("state `{}` has no transition", states[i])))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(StateDiagram { states, next })
    }

    /// Modulo-`n` up counter with states `0..n`.
    pub fn counter(n: usize) -> Result<Self> {
        let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let pairs: Vec<(String, String)> = (0..n)
            .map(|i| (names[i].clone(), names[(i + 1) % n].clone()))
            .collect();
        let refs: Vec<(&str, &str)> = pairs.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        StateDiagram::new(names, &refs)
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn successor(&self, i: usize) -> usize {
        self.next[i]
    }
}

/// Binary state assignment in declaration order, using the fewest bits
/// (at least one). Unused codes are don't-care rows.
pub fn encode_states(d: &StateDiagram) -> Result<StateTable> {
    let n = d.states.len();
    let width = (usize::BITS - (n.max(2) - 1).leading_zeros()) as usize;
    let transitions: Vec<(u32, u32)> = (0..n).map(|i| (i as u32, d.next[i] as u32)).collect();
    StateTable::from_transitions(width, &transitions)
}

/// One flip-flop input as a function of the present state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Excitation {
    pub name: String,
    pub table: TruthTable,
}

/// Flip-flop input tables realizing `st`. D inputs copy the next-state bit;
/// JK and RS use the usual excitation tables. Don't-care rows stay
/// don't-care. Inputs are ordered per flip-flop: `Da`, or `Ja Ka`, or `Sa Ra`.
pub fn excitation_equations(st: &StateTable, kind: FlipFlopKind) -> Result<Vec<Excitation>> {
    use Value::{DontCare as X, One as I, Zero as O};
    let vars = st.state_vars();
    let w = st.width;
    let mut out = Vec::new();
    for i in 0..w {
        let present = |s: u32| s >> (w - 1 - i) & 1 == 1;
        let next = |s: u32| st.next[s as usize][i];
        let mut make = |prefix: char, f: &dyn Fn(bool, Value) -> Value| {
            let table = TruthTable::from_fn(vars.clone(), |s| f(present(s), next(s)))
                .expect("width within limits");
            out.push(Excitation {
                name: format!("{prefix}{}", suffix(i)),
                table,
            });
        };
        match kind {
            FlipFlopKind::D => make('D', &|_, n| n),
            FlipFlopKind::Jk => {
                make('J', &|q, n| match (q, n) {
                    (_, X) => X,
                    (false, n) => n,
                    (true, _) => X,
                });
                make('K', &|q, n| match (q, n) {
                    (_, X) => X,
                    (false, _) => X,
                    (true, n) => n.complement(),
                });
            }
            FlipFlopKind::Rs => {
                make('S', &|q, n| match (q, n) {
                    (_, X) => X,
                    (false, n) => n,
                    (true, I) => X,
                    (true, _) => O,
                });
                make('R', &|q, n| match (q, n) {
                    (_, X) => X,
                    (false, I) => O,
                    (false, _) => X,
                    (true, n) => n.complement(),
                });
            }
            FlipFlopKind::SrLatch => {
                return Err(Error::StateTable(
                    "FSM synthesis supports D, JK and RS flip-flops".into(),
                ))
            }
        }
    }
    Ok(out)
}

/// Exactly minimized SOP cover of every flip-flop input.
pub fn fsm_equations(st: &StateTable, kind: FlipFlopKind) -> Result<Vec<(String, Cover)>> {
    excitation_equations(st, kind)?
        .into_iter()
        .map(|e| Ok((e.name, minimize_cover(&e.table, Form::Sop, Strategy::Exact)?)))
        .collect()
}

/// Flip-flops of `kind` named `ff_a, ff_b, ...` with outputs `Qa, Qb, ...`
/// fed by AND-OR logic for the minimized input equations. The state bits are
/// the primary outputs.
pub fn synth_fsm(st: &StateTable, kind: FlipFlopKind) -> Result<Netlist> {
    let equations = fsm_equations(st, kind)?;
    let mut b = NetlistBuilder::new();
    let mut nets = equations
        .iter()
        .map(|(name, cover)| b.add_cover(cover, Some(name)))
        .collect::<Vec<_>>()
        .into_iter();
    for i in 0..st.width {
        let ins: Vec<String> = nets.by_ref().take(kind.arity()).collect();
        let q = state_bit_name(i);
        b.flop(format!("ff_{}", suffix(i)), kind, ins, q.clone());
        b.output(q);
    }
    b.build()
}

/// Initial flip-flop contents.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum Reset {
    #[default]
    Zeros,
    /// Every flip-flop starts unknown.
    Unknown,
    /// One value per flip-flop in netlist order.
    Values(Vec<Logic>),
}

#[derive(Debug, Clone, Default)]
pub struct SimConfig {
    pub cycles: usize,
    pub reset: Reset,
    /// Per-cycle primary input values; needed when the netlist has inputs.
    pub stimuli: Vec<HashMap<String, Logic>>,
    /// Nets to record; defaults to the primary outputs, or the flip-flop
    /// outputs when there are none.
    pub watch: Option<Vec<String>>,
}

/// Stepwise simulation of one netlist.
pub struct Simulator<'a> {
    nl: &'a Netlist,
    values: Vec<Logic>,
    state: Vec<Logic>,
    q_ids: Vec<(usize, Option<usize>)>,
    d_ids: Vec<Vec<usize>>,
    input_ids: Vec<usize>,
}

impl<'a> Simulator<'a> {
    pub fn new(nl: &'a Netlist, reset: &Reset) -> Result<Self> {
        let nf = nl.flops().len();
        let state = match reset {
            Reset::Zeros => vec![Logic::Zero; nf],
            Reset::Unknown => vec![Logic::X; nf],
            Reset::Values(v) if v.len() == nf => v.clone(),
            Reset::Values(v) => {
                return Err(Error::StateTable(format!(
                    "reset has {} values but the netlist has {nf} flip-flops",
                    v.len()
                )))
            }
        };
        let id = |n: &str| nl.net_id(n).expect("validated netlist");
        let q_ids = nl
            .flops()
            .iter()
            .map(|f| (id(&f.q), f.qbar.as_deref().map(id)))
            .collect();
        let d_ids = nl
            .flops()
            .iter()
            .map(|f| f.inputs.iter().map(|n| id(n)).collect())
            .collect();
        let input_ids = nl.inputs().iter().map(|n| id(n)).collect();
        Ok(Simulator {
            nl,
            values: vec![Logic::X; nl.nets().len()],
            state,
            q_ids,
            d_ids,
            input_ids,
        })
    }

    /// Current flip-flop contents in netlist order.
    pub fn state(&self) -> &[Logic] {
        &self.state
    }

    pub fn value(&self, net: &str) -> Option<Logic> {
        self.nl.net_id(net).map(|i| self.values[i])
    }

    fn settle(&mut self, stimulus: &HashMap<String, Logic>) -> Result<()> {
        for (name, &id) in self.nl.inputs().iter().zip(&self.input_ids) {
            self.values[id] = *stimulus
                .get(name)
                .ok_or_else(|| Error::MissingInput(name.clone()))?;
        }
        for (&(q, qb), &s) in self.q_ids.iter().zip(&self.state) {
            self.values[q] = s;
            if let Some(qb) = qb {
                self.values[qb] = !s;
            }
        }
        self.nl.propagate(&mut self.values);
        Ok(())
    }

    /// One clock cycle: settle with `stimulus`, clock every flip-flop, then
    /// settle again so net values reflect the new state.
    pub fn step(&mut self, stimulus: &HashMap<String, Logic>) -> Result<()> {
        self.settle(stimulus)?;
        let next = self
            .nl
            .flops()
            .iter()
            .zip(&self.d_ids)
            .zip(&self.state)
            .map(|((f, ins), &q)| {
                let ins: Vec<Logic> = ins.iter().map(|&i| self.values[i]).collect();
                ff_next(f.kind, &ins, q)
            })
            .collect::<Result<Vec<_>>>()?;
        self.state = next;
        self.settle(stimulus)
    }
}

pub fn simulate(nl: &Netlist, cfg: &SimConfig) -> Result<Waveform> {
    let watch = match &cfg.watch {
        Some(w) => w.clone(),
        None if !nl.outputs().is_empty() => nl.outputs().to_vec(),
        None => nl.flops().iter().map(|f| f.q.clone()).collect(),
    };
    if let Some(bad) = watch.iter().find(|n| nl.net_id(n).is_none()) {
        return Err(Error::Netlist(format!("no net named `{bad}`")));
    }
    let mut sim = Simulator::new(nl, &cfg.reset)?;
    let empty = HashMap::new();
    let mut wave = Waveform::new(watch);
    for cycle in 0..cfg.cycles {
        let stimulus = match cfg.stimuli.get(cycle) {
            Some(s) => s,
            None if nl.inputs().is_empty() => &empty,
            None => return Err(Error::MissingInput(nl.inputs()[0].clone())),
        };
        sim.step(stimulus)?;
        let row: Vec<Logic> = wave
            .nets
            .iter()
            .map(|n| sim.value(n).expect("checked above"))
            .collect();
        wave.push(row);
    }
    Ok(wave)
}

/// Sampled values per watched net, one sample per clock cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Waveform {
    nets: Vec<String>,
    samples: Vec<Vec<Logic>>,
}

impl Waveform {
    pub fn new(nets: Vec<String>) -> Self {
        let samples = vec![Vec::new(); nets.len()];
        Waveform { nets, samples }
    }

    fn push(&mut self, row: Vec<Logic>) {
        for (s, v) in self.samples.iter_mut().zip(row) {
            s.push(v);
        }
    }

    pub fn nets(&self) -> &[String] {
        &self.nets
    }

    pub fn cycles(&self) -> usize {
        self.samples.first().map_or(0, Vec::len)
    }

    pub fn get(&self, net: &str) -> Option<&[Logic]> {
        let i = self.nets.iter().position(|n| n == net)?;
        Some(&self.samples[i])
    }

    /// Values of all watched nets at `cycle`.
    pub fn row(&self, cycle: usize) -> Vec<Logic> {
        self.samples.iter().map(|s| s[cycle]).collect()
    }

    /// Watched values at `cycle` read as a binary number, first net most
    /// significant; `None` if any is X.
    pub fn word(&self, cycle: usize) -> Option<u32> {
        self.row(cycle)
            .into_iter()
            .try_fold(0u32, |acc, v| v.to_bool().map(|b| acc << 1 | b as u32))
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.nets).expect("in-memory write");
        for c in 0..self.cycles() {
            w.write_record(self.row(c).iter().map(|v| v.as_char().to_string()))
                .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii output")
    }
}

/// Reads per-cycle stimuli: a CSV header of input names, then one row per
/// cycle of `0`, `1` or `X`. Lines starting with `#` are ignored.
pub fn parse_stimuli(text: &str) -> Result<Vec<HashMap<String, Logic>>> {
    let mut rdr = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let headers: Vec<String> = rdr
        .headers()
        .map_err(|e| Error::format(1, e.to_string()))?
        .iter()
        .map(str::to_string)
        .collect();
    let mut rows = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line() as usize);
            Error::format(line, e.to_string())
        })?;
        let line = rec.position().map_or(0, |p| p.line() as usize);
        let mut row = HashMap::new();
        for (name, field) in headers.iter().zip(rec.iter()) {
            let mut chars = field.chars();
            let v = match (chars.next().and_then(Logic::from_char), chars.next()) {
                (Some(v), None) => v,
                _ => {
                    return Err(Error::format(
                        line,
                        format!("`{field}` for `{name}` must be 0, 1 or X"),
                    ))
                }
            };
            row.insert(name.clone(), v);
        }
        rows.push(row);
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::render;
    use Logic::{One, Zero, X};

    fn counter_table() -> StateTable {
        StateTable::from_transitions(3, &(0..8).map(|s| (s, (s + 1) % 8)).collect::<Vec<_>>())
            .unwrap()
    }

    #[test]
    fn characteristic_tables() {
        use FlipFlopKind::*;
        assert_eq!(ff_next(Jk, &[One, One], Zero).unwrap(), One);
        assert_eq!(ff_next(Rs, &[Zero, Zero], One).unwrap(), One);
        for q in [Zero, One, X] {
            assert_eq!(ff_next(D, &[One], q).unwrap(), One);
        }
        assert_eq!(ff_next(Rs, &[One, One], Zero).unwrap(), X);
        assert_eq!(ff_next(SrLatch, &[Zero, Zero], One).unwrap(), X);
        assert_eq!(ff_next(SrLatch, &[One, One], One).unwrap(), One);
        assert!(matches!(
            ff_next(D, &[One, One], Zero),
            Err(Error::Arity { expected: 1, found: 2, .. })
        ));
    }

    #[test]
    fn unknown_inputs_resolve_when_forced() {
        use FlipFlopKind::*;
        // J=1, K=X from Q=0: set or toggle, both give 1
        assert_eq!(ff_next(Jk, &[One, X], Zero).unwrap(), One);
        assert_eq!(ff_next(Jk, &[One, X], One).unwrap(), X);
        assert_eq!(ff_next(D, &[X], One).unwrap(), X);
        assert_eq!(ff_next(Jk, &[Zero, Zero], X).unwrap(), X);
    }

    #[test]
    fn state_encoding() {
        let st = encode_states(&StateDiagram::counter(8).unwrap()).unwrap();
        assert_eq!(st.width(), 3);
        assert_eq!(st, counter_table());
        let five = encode_states(&StateDiagram::counter(5).unwrap()).unwrap();
        assert_eq!(five.width(), 3);
        assert!((5..8).all(|s| !five.is_specified(s)));
        assert_eq!(encode_states(&StateDiagram::counter(2).unwrap()).unwrap().width(), 1);
        assert_eq!(encode_states(&StateDiagram::counter(1).unwrap()).unwrap().width(), 1);
        assert!(StateDiagram::new(vec!["a", "b"], &[("a", "b")]).is_err());
        assert!(StateDiagram::new(vec!["a"], &[("a", "a"), ("a", "a")]).is_err());
    }

    #[test]
    fn counter_d_equations() {
        let eqs = fsm_equations(&counter_table(), FlipFlopKind::D).unwrap();
        let text: Vec<(String, String)> =
            eqs.iter().map(|(n, c)| (n.clone(), c.to_string())).collect();
        assert_eq!(
            text,
            [
                ("Da".to_string(), "Qa'QbQc + QaQb' + QaQc'".to_string()),
                ("Db".to_string(), "Qb'Qc + QbQc'".to_string()),
                ("Dc".to_string(), "Qc'".to_string()),
            ]
        );
    }

    #[test]
    fn toggler_jk_is_constant_one() {
        let st = encode_states(&StateDiagram::counter(2).unwrap()).unwrap();
        let eqs = fsm_equations(&st, FlipFlopKind::Jk).unwrap();
        let text: Vec<String> = eqs.iter().map(|(n, c)| format!("{n} = {c}")).collect();
        assert_eq!(text, ["Ja = 1", "Ka = 1"]);
        let nl = synth_fsm(&st, FlipFlopKind::Jk).unwrap();
        let wave = simulate(
            &nl,
            &SimConfig {
                cycles: 4,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(wave.get("Qa").unwrap(), [One, Zero, One, Zero]);
    }

    #[test]
    fn single_state_holds_its_code() {
        let st = encode_states(&StateDiagram::counter(1).unwrap()).unwrap();
        let eqs = fsm_equations(&st, FlipFlopKind::D).unwrap();
        assert_eq!(render(&eqs[0].1.to_expr()), "0");
        let nl = synth_fsm(&st, FlipFlopKind::D).unwrap();
        assert_eq!(nl.flops().len(), 1);
        let wave = simulate(&nl, &SimConfig { cycles: 3, ..Default::default() }).unwrap();
        assert_eq!(wave.get("Qa").unwrap(), [Zero, Zero, Zero]);
    }

    #[test]
    fn counter_simulation() {
        let nl = synth_fsm(&counter_table(), FlipFlopKind::D).unwrap();
        assert_eq!(nl.flops().len(), 3);
        let wave = simulate(&nl, &SimConfig { cycles: 11, ..Default::default() }).unwrap();
        let words: Vec<u32> = (0..8).map(|c| wave.word(c).unwrap()).collect();
        assert_eq!(words, [1, 2, 3, 4, 5, 6, 7, 0]);
        assert_eq!(wave.word(10), Some(0b011));
        let csv = wave.to_csv();
        assert!(csv.starts_with("Qa,Qb,Qc\n0,0,1\n0,1,0\n"));
        let empty = simulate(&nl, &SimConfig::default()).unwrap();
        assert_eq!(empty.to_csv(), "Qa,Qb,Qc\n");
    }

    #[test]
    fn jk_counter_matches_d_counter() {
        for kind in [FlipFlopKind::Jk, FlipFlopKind::Rs] {
            let nl = synth_fsm(&counter_table(), kind).unwrap();
            let wave = simulate(&nl, &SimConfig { cycles: 16, ..Default::default() }).unwrap();
            for c in 0..16 {
                assert_eq!(wave.word(c), Some((c as u32 + 1) % 8), "{kind} cycle {c}");
            }
        }
    }

    #[test]
    fn rs_invalid_goes_unknown() {
        let nl = Netlist::parse_text("input S\ninput R\noutput Q\ndff f0 RS S R -> Q\n").unwrap();
        let stim = vec![HashMap::from([("S".to_string(), One), ("R".to_string(), One)])];
        let wave = simulate(
            &nl,
            &SimConfig {
                cycles: 1,
                stimuli: stim,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(wave.get("Q").unwrap(), [X]);
        let missing = simulate(&nl, &SimConfig { cycles: 1, ..Default::default() });
        assert!(matches!(missing, Err(Error::MissingInput(_))));
    }

    #[test]
    fn reset_variants() {
        let nl = synth_fsm(&counter_table(), FlipFlopKind::D).unwrap();
        let unknown = simulate(
            &nl,
            &SimConfig {
                cycles: 2,
                reset: Reset::Unknown,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(unknown.word(1), None);
        let from5 = simulate(
            &nl,
            &SimConfig {
                cycles: 1,
                reset: Reset::Values(vec![One, Zero, One]),
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(from5.word(0), Some(6));
        assert!(Simulator::new(&nl, &Reset::Values(vec![One])).is_err());
    }

    #[test]
    fn state_table_text() {
        let mut st = counter_table();
        st.set_reset(Some(0)).unwrap();
        let text = st.to_text();
        assert!(text.starts_with("states 3\nreset 000\n000 -> 001\n"));
        assert_eq!(StateTable::parse_text(&text).unwrap(), st);

        let partial = StateTable::parse_text("states 2\n00 -> 01\n01 -> 1-  # dc bit\n").unwrap();
        assert_eq!(partial.next_state(0), Some(1));
        assert_eq!(partial.next_state(1), None);
        assert!(!partial.is_specified(3));

        let bad_width = StateTable::parse_text("states 3\n000 -> 001\n01 -> 010\n");
        assert!(matches!(bad_width, Err(Error::Format { line: 3, .. })));
        let dup = StateTable::parse_text("states 1\n0 -> 1\n0 -> 0\n");
        assert!(matches!(dup, Err(Error::Format { line: 3, .. })));
        let mealy = StateTable::parse_text("states 1\n0 1 -> 1\n");
        assert!(matches!(mealy, Err(Error::Format { line: 2, .. })));
        assert!(StateTable::parse_text("00 -> 01\n").is_err());
    }

    #[test]
    fn stimuli_csv() {
        let rows = parse_stimuli("S,R\n1,0\n# hold\n0, 0\nX,1\n").unwrap();
        assert_eq!(rows.len(), 3);
        assert_eq!(rows[2]["S"], X);
        assert!(parse_stimuli("S\n2\n").is_err());
    }
}
