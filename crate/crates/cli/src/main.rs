// SPDX-License-Identifier: Apache-2.0

//! `karno`: two-level logic synthesis from the command line.

mod source;

use std::collections::HashMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use karno::expr::render;
use karno::formats::{emit_pal, emit_pla};
use karno::minimize::minimize_cover;
use karno::netlist::synth_aoi_multi;
use karno::seq::{fsm_equations, parse_stimuli, simulate, synth_fsm, Reset, SimConfig};
use karno::techmap::{map_mux, map_pal, map_pla, PAL_DEFAULT_TERMS};
use karno::truthtab::{counterexample, DEFAULT_EQUIV_BOUND};
use karno::{Cover, Error, FlipFlopKind, Form, Logic, Netlist, StateTable, Strategy, VarOrder};

use crate::source::Functions;

#[derive(Parser, Debug)]
#[command(name = "karno", version, about = "Two-level logic synthesis toolkit")]
struct Cli {
    /// Variable order, comma separated (first variable is the most significant bit)
    #[arg(long, global = true, value_name = "A,B,...")]
    order: Option<String>,

    /// Write the main result to this file instead of stdout
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,

    /// Also write a Graphviz diagram of the produced netlist
    #[arg(long, global = true, value_name = "FILE")]
    dot: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse an expression and print it in normal form
    Parse { expr: String },
    /// Print the truth table of a function
    Table { source: String },
    /// Print the Karnaugh map of a 2 to 4 variable function
    Kmap { source: String },
    /// Minimize a function or every output of a file
    Minimize {
        source: String,
        #[arg(long, value_enum, default_value_t = FormArg::Sop)]
        form: FormArg,
        #[arg(long, value_enum, default_value_t = StrategyArg::Exact)]
        strategy: StrategyArg,
    },
    /// Check two expressions for equivalence
    Check { left: String, right: String },
    /// Map minimized functions onto gates or programmable arrays
    Synth {
        source: String,
        #[arg(long, value_enum, default_value_t = Target::Aoi)]
        target: Target,
        #[arg(long, value_enum, default_value_t = FormArg::Sop)]
        form: FormArg,
        #[arg(long, value_enum, default_value_t = StrategyArg::Exact)]
        strategy: StrategyArg,
        /// PLA product-term capacity (default: exactly the terms needed)
        #[arg(long, value_name = "P")]
        pla_terms: Option<usize>,
        /// PAL terms per output
        #[arg(long, value_name = "K", default_value_t = PAL_DEFAULT_TERMS)]
        pal_terms: usize,
    },
    /// Derive flip-flop input equations and a netlist from a state table
    Fsm {
        file: PathBuf,
        #[arg(long = "ff", value_enum, default_value_t = FfArg::D)]
        ff: FfArg,
    },
    /// Simulate a netlist under a clock and print a waveform CSV
    Sim {
        file: PathBuf,
        #[arg(long, default_value_t = 8)]
        cycles: usize,
        /// Initial flip-flop values as bits (0, 1, X), or `x` for all unknown
        #[arg(long)]
        reset: Option<String>,
        /// CSV of primary input values, one row per cycle
        #[arg(long, value_name = "FILE")]
        stimuli: Option<PathBuf>,
        /// Nets to record, comma separated
        #[arg(long, value_name = "NETS")]
        watch: Option<String>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormArg {
    Sop,
    Pos,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum StrategyArg {
    Exact,
    Greedy,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Target {
    Aoi,
    Pla,
    Pal,
    Mux,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FfArg {
    D,
    Jk,
    Rs,
}

impl From<FormArg> for Form {
    fn from(f: FormArg) -> Form {
        match f {
            FormArg::Sop => Form::Sop,
            FormArg::Pos => Form::Pos,
        }
    }
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Strategy {
        match s {
            StrategyArg::Exact => Strategy::Exact,
            StrategyArg::Greedy => Strategy::Greedy,
        }
    }
}

impl From<FfArg> for FlipFlopKind {
    fn from(f: FfArg) -> FlipFlopKind {
        match f {
            FfArg::D => FlipFlopKind::D,
            FfArg::Jk => FlipFlopKind::Jk,
            FfArg::Rs => FlipFlopKind::Rs,
        }
    }
}

/// What a command produced: the main text and an optional netlist for
/// `--dot`.
struct Output {
    text: String,
    /// Printed on stdout when the main text goes to `--out`.
    report: String,
    netlist: Option<Netlist>,
}

impl Output {
    fn text(text: String) -> Self {
        Output {
            text,
            report: String::new(),
            netlist: None,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .format_timestamp(None)
        .init();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            match e.downcast_ref::<Error>() {
                Some(Error::Invariant(_)) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}

fn run(cli: &Cli) -> Result<()> {
    let order = cli
        .order
        .as_deref()
        .map(VarOrder::parse_list)
        .transpose()
        .context("bad --order")?;
    let order = order.as_ref();
    let out = match &cli.command {
        Command::Parse { expr } => {
            let e = source::expression(expr, order)?;
            Output::text(format!("{}\n", render(&e)))
        }
        Command::Table { source } => {
            let (_, t) = source::load(source, order)?.single()?;
            Output::text(t.to_text())
        }
        Command::Kmap { source } => {
            let (_, t) = source::load(source, order)?.single()?;
            Output::text(t.kmap()?.to_string())
        }
        Command::Minimize {
            source,
            form,
            strategy,
        } => minimize_cmd(source::load(source, order)?, (*form).into(), (*strategy).into())?,
        Command::Check { left, right } => check_cmd(left, right, order)?,
        Command::Synth {
            source,
            target,
            form,
            strategy,
            pla_terms,
            pal_terms,
        } => {
            let fs = source::load(source, order)?;
            let form: Form = (*form).into();
            if form == Form::Pos && matches!(target, Target::Pla | Target::Pal) {
                bail!("programmable arrays take SOP covers; drop --form pos");
            }
            let strategy: Strategy = (*strategy).into();
            match target {
                Target::Aoi => synth_aoi_cmd(&fs, form, strategy)?,
                Target::Pla => {
                    let covers = covers(&fs, Form::Sop, strategy)?;
                    let covers: Vec<Cover> = covers.into_iter().map(|(_, c)| c).collect();
                    let needed = map_pla(&covers, usize::MAX)?.terms().len();
                    let p = map_pla(&covers, pla_terms.unwrap_or(needed))?;
                    verify_rows(&fs, |row| Ok(p.eval(row)))?;
                    Output::text(emit_pla(&p))
                }
                Target::Pal => {
                    let covers = covers(&fs, Form::Sop, strategy)?;
                    let covers: Vec<Cover> = covers.into_iter().map(|(_, c)| c).collect();
                    let p = map_pal(&covers, *pal_terms)?;
                    verify_rows(&fs, |row| Ok(p.eval(row)))?;
                    Output::text(emit_pal(&p))
                }
                Target::Mux => {
                    if fs.tables.len() != 1 {
                        bail!("a MUX tree realizes one function, found {}", fs.tables.len());
                    }
                    let t = &fs.tables[0].1;
                    let nl = map_mux(t, t.order())?;
                    verify_rows(&fs, |row| Ok(nl.eval_row(row)?))?;
                    netlist_output(nl)
                }
            }
        }
        Command::Fsm { file, ff } => fsm_cmd(file, (*ff).into())?,
        Command::Sim {
            file,
            cycles,
            reset,
            stimuli,
            watch,
        } => sim_cmd(file, *cycles, reset.as_deref(), stimuli.as_deref(), watch.as_deref())?,
    };

    if let Some(path) = &cli.dot {
        let Some(nl) = &out.netlist else {
            bail!("--dot needs a command that produces a netlist (synth, fsm, sim)");
        };
        write_file(path, &nl.to_dot())?;
    }
    match &cli.out {
        Some(path) => {
            write_file(path, &out.text)?;
            print!("{}", out.report);
        }
        None => print!("{}", out.text),
    }
    Ok(())
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

fn covers(fs: &Functions, form: Form, strategy: Strategy) -> Result<Vec<(String, Cover)>> {
    fs.tables
        .iter()
        .map(|(name, t)| Ok((name.clone(), minimize_cover(t, form, strategy)?)))
        .collect()
}

/// Checks a realization against every specified row of every output.
fn verify_rows(fs: &Functions, eval: impl Fn(u32) -> Result<Vec<bool>>) -> Result<()> {
    let rows = (0..fs.tables.first().map_or(0, |(_, t)| t.num_rows()) as u32)
        .map(eval)
        .collect::<Result<Vec<_>>>()?;
    for (j, (name, t)) in fs.tables.iter().enumerate() {
        if !t.agrees_with(|row| rows[row as usize][j]) {
            bail!(Error::Invariant(format!(
                "realization of `{name}` differs from its table"
            )));
        }
    }
    Ok(())
}

fn minimize_cmd(fs: Functions, form: Form, strategy: Strategy) -> Result<Output> {
    let covers = covers(&fs, form, strategy)?;
    verify_rows(&fs, |row| Ok(covers.iter().map(|(_, c)| c.eval(row)).collect()))?;
    let mut s = String::new();
    let named = covers.len() > 1;
    for (name, c) in &covers {
        if named {
            writeln!(s, "{name} = {c}")?;
        } else {
            writeln!(s, "{c}")?;
        }
    }
    for (name, c) in &covers {
        let label = if named { format!("{name}: ") } else { String::new() };
        let plural = |k: usize, word: &str| {
            if k == 1 {
                format!("{k} {word}")
            } else {
                format!("{k} {word}s")
            }
        };
        writeln!(
            s,
            "# {label}{}, {}",
            plural(c.len(), "term"),
            plural(c.literal_count() as usize, "literal")
        )?;
    }
    Ok(Output::text(s))
}

fn check_cmd(left: &str, right: &str, order: Option<&VarOrder>) -> Result<Output> {
    let a = source::expression(left, order)?;
    let b = source::expression(right, order)?;
    let text = match counterexample(&a, &b, DEFAULT_EQUIV_BOUND)? {
        None => "equivalent\n".to_string(),
        Some(cx) => format!("not equivalent: {cx}\n"),
    };
    Ok(Output::text(text))
}

fn netlist_output(nl: Netlist) -> Output {
    let text = nl.to_text();
    let report = format!("# {}\n", nl.stats());
    Output {
        text,
        report,
        netlist: Some(nl),
    }
}

fn synth_aoi_cmd(fs: &Functions, form: Form, strategy: Strategy) -> Result<Output> {
    let covers = covers(fs, form, strategy)?;
    let nl = synth_aoi_multi(&covers)?;
    verify_rows(fs, |row| Ok(nl.eval_row(row)?))?;
    Ok(netlist_output(nl))
}

fn fsm_cmd(file: &Path, kind: FlipFlopKind) -> Result<Output> {
    let text = source::read(file)?;
    let st = StateTable::parse_text(&text).with_context(|| format!("in {}", file.display()))?;
    let equations = fsm_equations(&st, kind)?;
    let nl = synth_fsm(&st, kind)?;
    verify_fsm(&st, &nl)?;
    let mut report = String::new();
    for (name, cover) in &equations {
        writeln!(report, "{name} = {cover}")?;
    }
    let mut netlist = String::new();
    for line in report.lines() {
        writeln!(netlist, "# {line}")?;
    }
    netlist.push_str(&nl.to_text());
    Ok(Output {
        text: netlist,
        report,
        netlist: Some(nl),
    })
}

/// One clock from every fully specified state must reach its listed successor.
fn verify_fsm(st: &StateTable, nl: &Netlist) -> Result<()> {
    let w = st.width();
    for s in 0..st.num_states() as u32 {
        let Some(next) = st.next_state(s) else { continue };
        let bits = (0..w).map(|k| Logic::from_bool(s >> (w - 1 - k) & 1 == 1)).collect();
        let wave = simulate(
            nl,
            &SimConfig {
                cycles: 1,
                reset: Reset::Values(bits),
                ..Default::default()
            },
        )?;
        if wave.word(0) != Some(next) {
            bail!(Error::Invariant(format!(
                "synthesized machine leaves state {s:0w$b} for {:?}, expected {next:0w$b}",
                wave.word(0)
            )));
        }
    }
    Ok(())
}

fn sim_cmd(
    file: &Path,
    cycles: usize,
    reset: Option<&str>,
    stimuli: Option<&Path>,
    watch: Option<&str>,
) -> Result<Output> {
    let text = source::read(file)?;
    let nl = Netlist::parse_text(&text).with_context(|| format!("in {}", file.display()))?;
    let reset = match reset {
        None => Reset::Zeros,
        Some(r) if r.eq_ignore_ascii_case("x") && nl.flops().len() != 1 => Reset::Unknown,
        Some(r) => {
            let bits = karno::logic::parse_bits(r)
                .with_context(|| format!("--reset `{r}` must be bits of 0, 1 or X"))?;
            if bits.len() != nl.flops().len() {
                bail!(
                    "--reset has {} bits but the netlist has {} flip-flops",
                    bits.len(),
                    nl.flops().len()
                );
            }
            Reset::Values(bits)
        }
    };
    let stimuli: Vec<HashMap<String, Logic>> = match stimuli {
        Some(p) => parse_stimuli(&source::read(p)?).with_context(|| format!("in {}", p.display()))?,
        None => Vec::new(),
    };
    let watch = watch.map(|w| w.split(',').map(|n| n.trim().to_string()).collect());
    let wave = simulate(
        &nl,
        &SimConfig {
            cycles,
            reset,
            stimuli,
            watch,
        },
    )?;
    Ok(Output {
        text: wave.to_csv(),
        report: String::new(),
        netlist: Some(nl),
    })
}
