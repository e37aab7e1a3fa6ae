// SPDX-License-Identifier: Apache-2.0

//! Brute-force oracles and random generators shared by the integration tests.

#![allow(dead_code)]

use karno::minimize::Cube;
use karno::techmap::{PalProgram, PlaProgram, PlaTerm};
use karno::{StateTable, TruthTable, Value, VarOrder};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Every cube over `n` variables (3^n of them).
pub fn all_cubes(n: usize) -> Vec<Cube> {
    let mut out = Vec::new();
    for mask in 0..1u32 << n {
        // every submask of mask as the value
        let mut value = mask;
        loop {
            out.push(Cube::new(mask, value));
            if value == 0 {
                break;
            }
            value = (value - 1) & mask;
        }
    }
    out
}

/// Implicant of the ON- and DC-rows: covers no 0-row.
pub fn is_implicant(c: &Cube, t: &TruthTable) -> bool {
    c.rows(t.num_vars()).all(|r| t.get(r) != Value::Zero)
}

/// No literal can be dropped without hitting a 0-row.
pub fn is_prime(c: &Cube, t: &TruthTable) -> bool {
    is_implicant(c, t)
        && (0..t.num_vars())
            .map(|k| 1u32 << k)
            .filter(|bit| c.mask() & bit != 0)
            .all(|bit| !is_implicant(&Cube::new(c.mask() & !bit, c.value() & !bit), t))
}

/// Prime implicants by enumerating all 3^n cubes, sorted.
pub fn brute_primes(t: &TruthTable) -> Vec<Cube> {
    let mut v: Vec<Cube> = all_cubes(t.num_vars())
        .into_iter()
        .filter(|c| is_prime(c, t))
        .collect();
    v.sort();
    v
}

pub fn covers_ones(cubes: &[Cube], t: &TruthTable) -> bool {
    t.ones().iter().all(|&r| cubes.iter().any(|c| c.covers(r)))
}

/// Smallest number of primes covering every 1-row, and the fewest literals
/// among covers of that size, by trying every subset.
pub fn brute_min_cover(t: &TruthTable) -> (usize, u32) {
    let primes: Vec<Cube> = brute_primes(t)
        .into_iter()
        .filter(|c| t.ones().iter().any(|&r| c.covers(r)))
        .collect();
    assert!(primes.len() <= 22, "subset oracle is exponential");
    let ones = t.ones();
    let row_bits: Vec<u64> = primes
        .iter()
        .map(|c| {
            ones.iter()
                .enumerate()
                .filter(|(_, &r)| c.covers(r))
                .fold(0u64, |acc, (i, _)| acc | 1 << i)
        })
        .collect();
    let full = if ones.len() == 64 { u64::MAX } else { (1u64 << ones.len()) - 1 };
    let mut best: Option<(usize, u32)> = None;
    for subset in 0u32..1 << primes.len() {
        let size = subset.count_ones() as usize;
        if best.is_some_and(|(s, _)| size > s) {
            continue;
        }
        let mut covered = 0u64;
        let mut literals = 0;
        for (i, bits) in row_bits.iter().enumerate() {
            if subset >> i & 1 == 1 {
                covered |= bits;
                literals += primes[i].literal_count();
            }
        }
        if covered == full && best.is_none_or(|b| (size, literals) < b) {
            best = Some((size, literals));
        }
    }
    best.expect("primes always cover the ON-set")
}

/// Removing any one cube leaves a 1-row uncovered.
pub fn is_irredundant(cubes: &[Cube], t: &TruthTable) -> bool {
    (0..cubes.len()).all(|i| {
        let rest: Vec<Cube> = cubes
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, c)| *c)
            .collect();
        !covers_ones(&rest, t)
    })
}

/// Exhaustive comparison on every specified row.
pub fn agrees(t: &TruthTable, f: impl Fn(u32) -> bool) -> bool {
    (0..t.num_rows() as u32).all(|r| match t.get(r) {
        Value::DontCare => true,
        v => v == Value::from_bool(f(r)),
    })
}

pub fn random_table(rng: &mut impl Rng, n: usize, dc_rate: f64) -> TruthTable {
    TruthTable::from_fn(VarOrder::letters(n).unwrap(), |_| {
        if rng.gen_bool(dc_rate) {
            Value::DontCare
        } else {
            Value::from_bool(rng.gen_bool(0.5))
        }
    })
    .unwrap()
}

pub fn random_cube(rng: &mut impl Rng, n: usize) -> Cube {
    let mask = rng.gen_range(0..1u32 << n);
    Cube::new(mask, rng.gen_range(0..1u32 << n) & mask)
}

/// Input-free state table; about a fifth of the present states are
/// unspecified.
pub fn random_state_table(rng: &mut impl Rng, width: usize) -> StateTable {
    let mut st = StateTable::new(width).unwrap();
    let states = 1u32 << width;
    for s in 0..states {
        if rng.gen_bool(0.8) {
            st.set(s, rng.gen_range(0..states)).unwrap();
        }
    }
    st
}

pub fn random_pla(rng: &mut impl Rng) -> PlaProgram {
    let n = rng.gen_range(0..=8);
    let m = rng.gen_range(1..=4);
    let count = rng.gen_range(0..=10);
    let terms = (0..count)
        .map(|_| PlaTerm {
            cube: random_cube(rng, n),
            outputs: (0..m).map(|_| rng.gen_bool(0.5)).collect(),
        })
        .collect();
    PlaProgram::new(n, m, count + rng.gen_range(0..4), terms).unwrap()
}

pub fn random_pal(rng: &mut impl Rng) -> PalProgram {
    let n = rng.gen_range(0..=8);
    let k = rng.gen_range(1..=4);
    let outputs = (0..rng.gen_range(1..=4))
        .map(|_| (0..rng.gen_range(0..=k)).map(|_| random_cube(rng, n)).collect())
        .collect();
    PalProgram::new(n, k, outputs).unwrap()
}
