// SPDX-License-Identifier: Apache-2.0

//! Benchmarks for the karno toolkit; see `benches/`.
