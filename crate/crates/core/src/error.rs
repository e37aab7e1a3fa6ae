// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at column {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown variable `{name}` at column {pos}")]
    UnknownVariable { name: String, pos: usize },

    #[error("invalid variable order: {0}")]
    InvalidOrder(String),

    #[error("no value assigned to variable `{0}`")]
    MissingVariable(String),

    #[error("too many variables: {count} exceeds the limit of {limit}")]
    TooManyVariables { count: usize, limit: usize },

    #[error("truth table has {found} rows, expected {expected}")]
    TableSize { expected: usize, found: usize },

    #[error("operation requires a table without don't-care rows")]
    DontCarePresent,

    #[error("K-map rendering supports 2 to 4 variables, got {0}")]
    KmapSize(usize),

    #[error("row {0} cannot be covered by the supplied prime implicants")]
    Uncoverable(u32),

    #[error("covers disagree: {0}")]
    CoverMismatch(String),

    #[error("degenerate cover (constant function) has no AND-OR realization")]
    DegenerateCover,

    #[error("invalid netlist: {0}")]
    Netlist(String),

    #[error("no value for primary input `{0}`")]
    MissingInput(String),

    #[error("combinational cycle through net `{0}`")]
    Cycle(String),

    #[error("PLA needs {required} product terms but only {available} are available")]
    PlaCapacity { required: usize, available: usize },

    #[error("output {output} needs {required} product terms but the PAL allows {budget}")]
    PalBudget {
        output: usize,
        required: usize,
        budget: usize,
    },

    #[error("{kind} flip-flop takes {expected} inputs, got {found}")]
    Arity {
        kind: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("invalid state table: {0}")]
    StateTable(String),

    #[error("line {line}: {msg}")]
    Format { line: usize, msg: String },

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub(crate) fn format(line: usize, msg: impl Into<String>) -> Self {
        Error::Format {
            line,
            msg: msg.into(),
        }
    }
}
