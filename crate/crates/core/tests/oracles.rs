// SPDX-License-Identifier: Apache-2.0

//! The minimizer checked against brute-force enumeration.

mod common;

use common::*;
use karno::minimize::{minimize_cover, prime_implicants, select_cover, Cube};
use karno::{Form, Strategy, TruthTable, VarOrder};

fn three_var(f: u32) -> TruthTable {
    TruthTable::from_minterms(
        VarOrder::letters(3).unwrap(),
        &(0..8).filter(|r| f >> r & 1 == 1).collect::<Vec<_>>(),
        &[],
    )
    .unwrap()
}

#[test]
fn oracle_self_check() {
    assert_eq!(all_cubes(3).len(), 27);
    assert_eq!(all_cubes(0), [Cube::UNIVERSE]);
    let maj = three_var(0b1110_1000);
    let p: Vec<String> = brute_primes(&maj).iter().map(|c| c.pattern(3)).collect();
    assert_eq!(p, ["11-", "1-1", "-11"]);
    assert_eq!(brute_min_cover(&maj), (3, 6));
    // parity has only minterm primes
    assert_eq!(brute_min_cover(&three_var(0b1001_0110)), (4, 12));
}

#[test]
fn all_three_variable_functions() {
    let mut total_primes = 0;
    let mut total_terms = 0;
    let mut total_literals = 0;
    for f in 0..256 {
        let t = three_var(f);
        let primes = prime_implicants(&t);
        assert_eq!(primes, brute_primes(&t), "primes of {f:08b}");
        let cover = select_cover(&primes, &t, Strategy::Exact).unwrap();
        let (size, literals) = brute_min_cover(&t);
        assert_eq!(cover.len(), size, "size of {f:08b}");
        assert_eq!(
            cover.iter().map(Cube::literal_count).sum::<u32>(),
            literals,
            "literals of {f:08b}"
        );
        total_primes += primes.len();
        total_terms += size;
        total_literals += literals;
    }
    // frozen from the brute-force enumeration
    assert_eq!((total_primes, total_terms, total_literals), (651, 591, 1218));
}

#[test]
fn random_four_and_five_variable_functions() {
    let mut rng = rng(0x5eed_0001);
    for i in 0..300 {
        let n = 4 + i % 2;
        let t = random_table(&mut rng, n, 0.15);
        let primes = prime_implicants(&t);
        assert_eq!(primes, brute_primes(&t));
        let exact = minimize_cover(&t, Form::Sop, Strategy::Exact).unwrap();
        let greedy = minimize_cover(&t, Form::Sop, Strategy::Greedy).unwrap();
        assert!(agrees(&t, |r| exact.eval(r)));
        assert!(agrees(&t, |r| greedy.eval(r)));
        assert!(greedy.len() >= exact.len());
        let useful = primes
            .iter()
            .filter(|c| t.ones().iter().any(|&r| c.covers(r)))
            .count();
        if useful <= 22 {
            assert_eq!(
                (exact.len(), exact.literal_count()),
                brute_min_cover(&t),
                "{}",
                t
            );
        }
    }
}

#[test]
fn pos_covers_match_the_complement_oracle() {
    let mut rng = rng(0x5eed_0002);
    for _ in 0..100 {
        let t = random_table(&mut rng, 4, 0.1);
        let pos = minimize_cover(&t, Form::Pos, Strategy::Exact).unwrap();
        assert!(agrees(&t, |r| pos.eval(r)));
        if pos.constant().is_none() {
            assert_eq!(pos.len(), brute_min_cover(&t.complement()).0);
        }
    }
}
