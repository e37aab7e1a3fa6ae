// SPDX-License-Identifier: Apache-2.0

//! Choosing a cover of the 1-rows from a set of prime implicants.

use fixedbitset::FixedBitSet;

use super::cube::Cube;
use super::Strategy;
use crate::error::{Error, Result};
use crate::truthtab::TruthTable;

/// Coverage matrix: which required row each candidate cube covers.
struct Matrix<'a> {
    cubes: &'a [Cube],
    /// required rows, ascending
    rows: Vec<u32>,
    /// per cube, the required-row indices it covers
    cube_rows: Vec<FixedBitSet>,
    /// per required row, the cubes covering it
    row_cubes: Vec<Vec<usize>>,
}

impl<'a> Matrix<'a> {
    fn new(cubes: &'a [Cube], t: &TruthTable) -> Result<Self> {
        let n = t.num_vars();
        let rows = t.ones();
        let mut index = vec![u32::MAX; t.num_rows()];
        for (i, &r) in rows.iter().enumerate() {
            index[r as usize] = i as u32;
        }
        let mut cube_rows = Vec::with_capacity(cubes.len());
        let mut row_cubes = vec![Vec::new(); rows.len()];
        for (ci, c) in cubes.iter().enumerate() {
            let mut set = FixedBitSet::with_capacity(rows.len());
            for r in c.rows(n) {
                let i = index[r as usize];
                if i != u32::MAX {
                    set.insert(i as usize);
                    row_cubes[i as usize].push(ci);
                }
            }
            cube_rows.push(set);
        }
        if let Some(i) = row_cubes.iter().position(Vec::is_empty) {
            return Err(Error::Uncoverable(rows[i]));
        }
        Ok(Matrix {
            cubes,
            rows,
            cube_rows,
            row_cubes,
        })
    }

    fn literals(&self, ci: usize) -> u32 {
        self.cubes[ci].literal_count()
    }

    fn essentials(&self) -> Vec<usize> {
        let mut ess: Vec<usize> = self
            .row_cubes
            .iter()
            .filter(|cs| cs.len() == 1)
            .map(|cs| cs[0])
            .collect();
        ess.sort_unstable();
        ess.dedup();
        ess
    }

    fn covered_by(&self, chosen: &[usize]) -> FixedBitSet {
        let mut covered = FixedBitSet::with_capacity(self.rows.len());
        for &ci in chosen {
            covered.union_with(&self.cube_rows[ci]);
        }
        covered
    }

    fn sorted_cubes(&self, chosen: &[usize]) -> Vec<Cube> {
        let mut v: Vec<Cube> = chosen.iter().map(|&ci| self.cubes[ci]).collect();
        v.sort_unstable();
        v
    }
}

/// Picks a subset of `primes` covering every 1-row of `t`.
///
/// `Exact` returns a minimum-size cover, breaking ties by fewest literals and
/// then by the smallest sorted cube list. `Greedy` takes the essential
/// primes, then repeatedly the prime covering the most uncovered rows, and
/// finally drops redundant picks. The result is sorted.
pub fn select_cover(primes: &[Cube], t: &TruthTable, strategy: Strategy) -> Result<Vec<Cube>> {
    let m = Matrix::new(primes, t)?;
    if m.rows.is_empty() {
        return Ok(Vec::new());
    }
    let chosen = match strategy {
        Strategy::Exact => exact(&m),
        Strategy::Greedy => greedy(&m),
    };
    Ok(m.sorted_cubes(&chosen))
}

fn greedy(m: &Matrix) -> Vec<usize> {
    let essentials = m.essentials();
    let mut chosen = essentials.clone();
    let mut covered = m.covered_by(&chosen);
    while covered.count_ones(..) < m.rows.len() {
        let best = (0..m.cubes.len())
            .filter(|ci| !chosen.contains(ci))
            .map(|ci| (m.cube_rows[ci].difference(&covered).count(), ci))
            .filter(|&(gain, _)| gain > 0)
            .min_by(|&(ga, a), &(gb, b)| {
                gb.cmp(&ga)
                    .then(m.literals(a).cmp(&m.literals(b)))
                    .then(m.cubes[a].cmp(&m.cubes[b]))
            })
            .map(|(_, ci)| ci)
            .expect("matrix guarantees every row is coverable");
        covered.union_with(&m.cube_rows[best]);
        chosen.push(best);
    }
    // drop later picks first; essentials are never redundant
    for i in (essentials.len()..chosen.len()).rev() {
        let mut rest = chosen.clone();
        rest.remove(i);
        if m.covered_by(&rest).count_ones(..) == m.rows.len() {
            chosen = rest;
        }
    }
    chosen
}

#[derive(Clone)]
struct Best {
    count: usize,
    literals: u32,
    cubes: Vec<Cube>,
}

struct Search<'m, 'a> {
    m: &'m Matrix<'a>,
    min_literals: u32,
    best: Option<Best>,
}

fn exact(m: &Matrix) -> Vec<usize> {
    let essentials = m.essentials();
    let covered = m.covered_by(&essentials);
    let mut search = Search {
        m,
        min_literals: (0..m.cubes.len()).map(|ci| m.literals(ci)).min().unwrap_or(0),
        best: None,
    };
    let literals = essentials.iter().map(|&ci| m.literals(ci)).sum();
    let mut chosen = essentials;
    search.branch(&mut chosen, &covered, literals);
    let best = search.best.expect("a cover always exists");
    best.cubes
        .iter()
        .map(|c| m.cubes.iter().position(|p| p == c).unwrap())
        .collect()
}

impl Search<'_, '_> {
    /// Size of a set of uncovered rows no two of which share a covering
    /// cube; every cover needs at least this many more cubes.
    fn lower_bound(&self, covered: &FixedBitSet) -> usize {
        let mut used = FixedBitSet::with_capacity(self.m.cubes.len());
        let mut bound = 0;
        for r in 0..self.m.rows.len() {
            if covered.contains(r) {
                continue;
            }
            let cs = &self.m.row_cubes[r];
            if cs.iter().all(|&ci| !used.contains(ci)) {
                bound += 1;
                cs.iter().for_each(|&ci| used.insert(ci));
            }
        }
        bound
    }

    fn branch(&mut self, chosen: &mut Vec<usize>, covered: &FixedBitSet, literals: u32) {
        let m = self.m;
        let Some(row) = (0..m.rows.len())
            .filter(|&r| !covered.contains(r))
            .min_by_key(|&r| m.row_cubes[r].len())
        else {
            let candidate = Best {
                count: chosen.len(),
                literals,
                cubes: m.sorted_cubes(chosen),
            };
            let better = match &self.best {
                None => true,
                Some(b) => {
                    (candidate.count, candidate.literals, &candidate.cubes)
                        < (b.count, b.literals, &b.cubes)
                }
            };
            if better {
                self.best = Some(candidate);
            }
            return;
        };

        if let Some(b) = &self.best {
            let more = self.lower_bound(covered);
            let bound = (chosen.len() + more, literals + more as u32 * self.min_literals);
            if bound > (b.count, b.literals) {
                return;
            }
        }

        let mut options = m.row_cubes[row].clone();
        options.sort_by(|&a, &b| {
            let ga = m.cube_rows[a].difference(covered).count();
            let gb = m.cube_rows[b].difference(covered).count();
            gb.cmp(&ga)
                .then(m.literals(a).cmp(&m.literals(b)))
                .then(m.cubes[a].cmp(&m.cubes[b]))
        });
        for ci in options {
            let mut next = covered.clone();
            next.union_with(&m.cube_rows[ci]);
            chosen.push(ci);
            self.branch(chosen, &next, literals + m.literals(ci));
            chosen.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::VarOrder;
    use crate::minimize::prime_implicants;

    fn cover(n: usize, ones: &[u32], dcs: &[u32], s: Strategy) -> Vec<String> {
        let t = TruthTable::from_minterms(VarOrder::letters(n).unwrap(), ones, dcs).unwrap();
        let primes = prime_implicants(&t);
        select_cover(&primes, &t, s)
            .unwrap()
            .iter()
            .map(|c| c.pattern(n))
            .collect()
    }

    #[test]
    fn three_variable_cover() {
        for s in [Strategy::Exact, Strategy::Greedy] {
            assert_eq!(cover(3, &[0, 1, 4, 6], &[], s), ["00-", "1-0"]);
        }
    }

    #[test]
    fn majority_all_essential() {
        assert_eq!(
            cover(3, &[3, 5, 6, 7], &[], Strategy::Exact),
            ["11-", "1-1", "-11"]
        );
    }

    #[test]
    fn four_variable_cover() {
        let g = cover(4, &[0, 1, 2, 3, 7, 8, 10, 11, 15], &[], Strategy::Exact);
        assert_eq!(g, ["00--", "-0-0", "--11"]);
    }

    #[test]
    fn cyclic_core_needs_search() {
        // classic cyclic function: no essentials, minimum cover has 3 cubes
        let ones = [0, 1, 2, 5, 6, 7];
        assert_eq!(cover(3, &ones, &[], Strategy::Exact).len(), 3);
        assert_eq!(cover(3, &ones, &[], Strategy::Exact), ["00-", "1-1", "-10"]);
    }

    #[test]
    fn dont_care_rows_need_no_cover() {
        assert!(cover(3, &[], &[1, 2], Strategy::Exact).is_empty());
        assert_eq!(cover(2, &[1], &[3], Strategy::Exact), ["-1"]);
    }

    #[test]
    fn uncoverable_row_is_reported() {
        let t = TruthTable::from_minterms(VarOrder::letters(2).unwrap(), &[0, 3], &[]).unwrap();
        let primes = [Cube::minterm(0, 2)];
        assert_eq!(
            select_cover(&primes, &t, Strategy::Exact),
            Err(Error::Uncoverable(3))
        );
    }
}
