// SPDX-License-Identifier: Apache-2.0

use std::collections::HashSet;

use super::cube::Cube;
use crate::truthtab::{TruthTable, Value};

/// All prime implicants of the function whose ON-set is the 1-rows of `t`
/// and whose don't-care rows may be absorbed.
///
/// Quine-McCluskey: starting from the minterms of 1- and DC-rows, each
/// generation merges every pair of cubes that differ in one specified
/// variable. Cubes that never merge are prime. Returned in cube order.
pub fn prime_implicants(t: &TruthTable) -> Vec<Cube> {
    let n = t.num_vars();
    let mut current: HashSet<Cube> = t
        .outputs()
        .iter()
        .enumerate()
        .filter(|(_, v)| **v != Value::Zero)
        .map(|(row, _)| Cube::minterm(row as u32, n))
        .collect();
    let mut primes = Vec::new();
    while !current.is_empty() {
        let mut next = HashSet::new();
        let mut merged = HashSet::new();
        for c in &current {
            // pair each cube with its partner that has one more 1-bit
            let mut zeros = c.mask() & !c.value();
            while zeros != 0 {
                let bit = zeros & zeros.wrapping_neg();
                zeros &= zeros - 1;
                let partner = Cube::new(c.mask(), c.value() | bit);
                if current.contains(&partner) {
                    next.insert(Cube::new(c.mask() & !bit, c.value()));
                    merged.insert(*c);
                    merged.insert(partner);
                }
            }
        }
        primes.extend(current.iter().filter(|c| !merged.contains(c)).copied());
        current = next;
    }
    primes.sort_unstable();
    primes
}
