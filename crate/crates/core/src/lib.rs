// SPDX-License-Identifier: Apache-2.0

//! Two-level logic synthesis: Boolean expressions, truth tables and K-maps,
//! exact Quine-McCluskey minimization, gate netlists, PLA/PAL/MUX mapping,
//! and clocked finite state machine synthesis and simulation.
//!
//! The usual pipeline is
//!
//! ```
//! use karno::{expr, truthtab::TruthTable, minimize::{self, Strategy}};
//!
//! let f = expr::parse("A'B'C' + A'B'C + ABC' + AB'C'", None).unwrap();
//! let table = TruthTable::from_expr(&f, &f.variables()).unwrap();
//! let min = minimize::minimize_sop(&table, Strategy::Exact).unwrap();
//! assert_eq!(min.to_string(), "A'B' + AC'");
//! ```

pub mod error;
pub mod expr;
pub mod formats;
pub mod logic;
pub mod minimize;
pub mod netlist;
pub mod seq;
pub mod techmap;
pub mod truthtab;

pub use error::{Error, Result};
pub use expr::{Expr, VarOrder};
pub use logic::Logic;
pub use minimize::{Cover, Cube, Form, Strategy};
pub use netlist::{GateKind, Netlist};
pub use seq::{FlipFlopKind, StateTable, Waveform};
pub use techmap::{PalProgram, PlaProgram};
pub use truthtab::{TruthTable, Value};
