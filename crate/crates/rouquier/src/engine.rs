//! Rouquier blocks from stored tables (union rule) or from Schur elements
//! (the specialization heuristic).

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use num_rational::Ratio;

use crate::datum::{check_arity, DatumError, GroupDatum, Hyperplane, HyperplaneTable};
use crate::group_blocks::{p_blocks, TableError};
use crate::lattice::IntVector;
use crate::partition::{Partition, PartitionError};
use crate::schur::{a_and_a, bad_primes, essential_monomials, specialize, xi_divisible, SchurElement, SchurError};

/// Largest box half-width tried by the specialization search.
pub const SEARCH_BOUND: i64 = 64;
/// Minimum number of specializations in the a+A refinement.
pub const MIN_ROUNDS: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EngineError {
    #[error("missing payload: {0}")]
    Missing(&'static str),
    #[error("no admissible specialization with entries in [-{SEARCH_BOUND}, {SEARCH_BOUND}]")]
    NoSpecialization,
    #[error(transparent)]
    Schur(#[from] SchurError),
    #[error(transparent)]
    Table(#[from] TableError),
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error(transparent)]
    Datum(#[from] DatumError),
}

/// Output of the heuristic. `confirmed` is set when a stored table agrees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Candidate {
    pub blocks: Partition,
    pub confirmed: bool,
}

pub fn meet(a: &Partition, b: &Partition) -> Result<Partition, EngineError> {
    Ok(a.meet(b)?)
}

pub fn join(n: usize, ps: &[Partition]) -> Result<Partition, EngineError> {
    Ok(Partition::join_all(n, ps)?)
}

/// Hyperplane tables whose normal is orthogonal to `n`.
pub fn hyperplanes_containing<'a>(tables: &'a [HyperplaneTable], n: &[i64]) -> Vec<&'a HyperplaneTable> {
    tables.iter().filter(|t| t.hyperplane.as_ref().is_some_and(|h| h.contains(n))).collect()
}

/// Baseline joined with every stored table containing `n`.
pub fn rouquier_from_tables(g: &GroupDatum, n: &[i64]) -> Result<Partition, EngineError> {
    check_arity(&g.orbits, n)?;
    if g.tables.is_empty() {
        return Err(EngineError::Missing("hyperplane tables"));
    }
    let k = g.characters.len();
    let base = g.baseline().map(|t| t.blocks.clone()).unwrap_or_else(|| Partition::singletons(k));
    let mut parts = vec![base];
    parts.extend(hyperplanes_containing(&g.tables, n).into_iter().map(|t| t.blocks.clone()));
    join(k, &parts)
}

/// Lexicographic walk through `[-b, b]^m` for `b = 1, 2, 4, …`, skipping vectors
/// already seen in a smaller box.
struct BoxSearch {
    m: usize,
    bound: i64,
    prev: i64,
    cur: Option<IntVector>,
}

impl BoxSearch {
    fn new(m: usize) -> Self {
        BoxSearch { m, bound: 1, prev: 0, cur: Some(vec![-1; m]) }
    }
}

impl Iterator for BoxSearch {
    type Item = IntVector;

    fn next(&mut self) -> Option<IntVector> {
        loop {
            let Some(v) = self.cur.clone() else {
                if self.bound >= SEARCH_BOUND || self.m == 0 {
                    return None;
                }
                self.prev = self.bound;
                self.bound *= 2;
                self.cur = Some(vec![-self.bound; self.m]);
                continue;
            };
            // odometer step
            let mut nxt = v.clone();
            let mut i = self.m;
            self.cur = loop {
                if i == 0 {
                    break None;
                }
                i -= 1;
                if nxt[i] < self.bound {
                    nxt[i] += 1;
                    break Some(nxt);
                }
                nxt[i] = -self.bound;
            };
            if v.iter().any(|x| x.abs() > self.prev) {
                return Some(v);
            }
        }
    }
}

fn full_payload(g: &GroupDatum) -> Result<Vec<&SchurElement>, EngineError> {
    if !g.has_full_schur() {
        return Err(EngineError::Missing("Schur elements for every character"));
    }
    if g.character_table.is_none() {
        return Err(EngineError::Missing("character table"));
    }
    Ok(g.schur.iter().flatten().map(|e| &e.v).collect())
}

fn all_essential(schur: &[&SchurElement], p: u64) -> BTreeSet<IntVector> {
    schur.iter().flat_map(|s| essential_monomials(s, p)).collect()
}

fn selected(k: usize, pick: impl Fn(usize) -> bool) -> Result<Partition, EngineError> {
    let part: Vec<usize> = (0..k).filter(|&i| pick(i)).collect();
    let parts = if part.is_empty() { Vec::new() } else { vec![part] };
    Ok(Partition::with_singletons(k, parts)?)
}

/// Refines `start` by equal `a + A` over admissible specializations.
fn refine_by_a_plus_a(
    g: &GroupDatum,
    schur: &[&SchurElement],
    start: Partition,
    admissible: impl Fn(&[i64]) -> bool,
) -> Result<Partition, EngineError> {
    let mut cur = start;
    let mut rounds = 0;
    for n in BoxSearch::new(g.slot_count()).filter(|n| admissible(n)) {
        let keys: Vec<Ratio<i64>> = schur
            .iter()
            .map(|s| {
                let (a, big_a) = a_and_a(g.mu_order, &specialize(s, &n));
                a + big_a
            })
            .collect();
        let next = cur.meet(&Partition::from_labels(&keys))?;
        rounds += 1;
        let stable = next == cur;
        cur = next;
        if rounds >= MIN_ROUNDS && stable {
            return Ok(cur);
        }
    }
    Err(EngineError::NoSpecialization)
}

fn confirm(g: &GroupDatum, h: Option<&Hyperplane>, p: u64, blocks: &Partition) -> bool {
    g.tables.iter().filter(|t| t.hyperplane.as_ref() == h).any(|t| match t.per_prime.iter().find(|(q, _)| *q == p) {
        Some((_, stored)) => stored == blocks,
        None => t.primes == [p] && t.blocks == *blocks,
    })
}

/// Blocks of the algebra localized at a prime above `p`, off every essential hyperplane.
pub fn blocks_no_hyperplane(g: &GroupDatum, p: u64) -> Result<Candidate, EngineError> {
    let schur = full_payload(g)?;
    let k = schur.len();
    let lambda1 = selected(k, |i| xi_divisible(schur[i], p))?;
    let table = g.character_table.as_ref().expect("checked by full_payload");
    let lambda2 = lambda1.meet(&p_blocks(table, p)?)?;
    let blocks = if lambda2.nontrivial().next().is_none() {
        lambda2
    } else {
        let ess = all_essential(&schur, p);
        refine_by_a_plus_a(g, &schur, lambda2, |n| ess.iter().all(|m| !Hyperplane::dot_is_zero(m, n)))?
    };
    let confirmed = confirm(g, None, p, &blocks);
    Ok(Candidate { blocks, confirmed })
}

/// Blocks on the generic point of `h`. Falls back to the off-hyperplane blocks
/// when `h` is essential for no character.
pub fn blocks_one_hyperplane(g: &GroupDatum, p: u64, h: &Hyperplane) -> Result<Candidate, EngineError> {
    let schur = full_payload(g)?;
    check_arity(&g.orbits, h.normal())?;
    let k = schur.len();
    let base = blocks_no_hyperplane(g, p)?;
    let hit: Vec<bool> = schur.iter().map(|s| essential_monomials(s, p).contains(h.normal())).collect();
    if !hit.iter().any(|&b| b) {
        return Ok(base);
    }
    let lambda1 = selected(k, |i| hit[i])?;
    let table = g.character_table.as_ref().expect("checked by full_payload");
    let lambda2 = lambda1.meet(&p_blocks(table, p)?)?;
    let lambda3 = if lambda2.nontrivial().next().is_none() {
        lambda2
    } else {
        let others: Vec<IntVector> = all_essential(&schur, p).into_iter().filter(|m| m != h.normal()).collect();
        refine_by_a_plus_a(g, &schur, lambda2, |n| {
            h.contains(n) && others.iter().all(|m| !Hyperplane::dot_is_zero(m, n))
        })?
    };
    let blocks = lambda3.join(&base.blocks)?;
    let confirmed = confirm(g, Some(h), p, &blocks);
    Ok(Candidate { blocks, confirmed })
}

/// Join over the bad primes of `n` of the blocks at every essential hyperplane containing `n`.
pub fn rouquier_from_schur(g: &GroupDatum, n: &[i64]) -> Result<Candidate, EngineError> {
    let schur = full_payload(g)?;
    check_arity(&g.orbits, n)?;
    let k = schur.len();
    let mut parts = vec![Partition::singletons(k)];
    for p in bad_primes(g, n)? {
        parts.push(blocks_no_hyperplane(g, p)?.blocks);
        let ess = all_essential(&schur, p);
        for m in ess.iter().filter(|m| Hyperplane::dot_is_zero(m, n)) {
            let h = g.hyperplane(m)?;
            parts.push(blocks_one_hyperplane(g, p, &h)?.blocks);
        }
    }
    let blocks = join(k, &parts)?;
    let confirmed = !g.tables.is_empty() && rouquier_from_tables(g, n).is_ok_and(|t| t == blocks);
    Ok(Candidate { blocks, confirmed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::{CycInt, KCyclotomic, RootOfUnity};
    use crate::datum::{CharLabel, Orbit};
    use crate::group_blocks::CharacterTable;
    use crate::schur::{SchurEntry, SchurFactorV};

    fn i(n: i64) -> CycInt {
        CycInt::from_int(1, n)
    }

    // S3 with characters ordered (2-dim, trivial, sign)
    fn s3_table() -> CharacterTable {
        CharacterTable::new(
            vec![1, 3, 2],
            vec![vec![i(2), i(0), i(-1)], vec![i(1), i(1), i(1)], vec![i(1), i(-1), i(1)]],
            1,
        )
        .unwrap()
    }

    fn phi2(mono: &[i64]) -> SchurFactorV {
        SchurFactorV { monomial: mono.to_vec(), psi: KCyclotomic::new(1, RootOfUnity::new(2, 1)).unwrap(), mult: 1 }
    }

    fn fixture(xi: [i64; 3], factors: [Vec<SchurFactorV>; 3]) -> GroupDatum {
        let labels = [CharLabel::new(2, 1, 0), CharLabel::new(1, 0, 0), CharLabel::new(1, 3, 0)];
        let mut g = GroupDatum::new("T", 1, 2, 6, vec![Orbit { letter: 'a', order: 2 }], labels.to_vec());
        g.character_table = Some(s3_table());
        g.schur = (0..3)
            .map(|j| {
                Some(SchurEntry {
                    x: None,
                    v: SchurElement { char: labels[j], xi: i(xi[j]), lead: vec![0, 0], factors: factors[j].clone() },
                })
            })
            .collect();
        g
    }

    #[test]
    fn search_is_lexicographic_and_skips_inner_box() {
        let first: Vec<IntVector> = BoxSearch::new(2).take(10).collect();
        assert_eq!(first[0], vec![-1, -1]);
        // the zero vector lies on every hyperplane and is never produced
        assert!(!first.contains(&vec![0, 0]));
        assert_eq!(first[7], vec![1, 1]);
        assert_eq!(first[8], vec![-2, -2]);
        let inner = BoxSearch::new(2).skip(8).take(25).filter(|v| v.iter().all(|x| x.abs() <= 1)).count();
        assert_eq!(inner, 0);
        assert_eq!(BoxSearch::new(1).count(), 128);
    }

    #[test]
    fn coprime_prime_gives_singletons() {
        let g = fixture([1, 2, 2], [vec![], vec![phi2(&[1, -1])], vec![phi2(&[1, -1])]]);
        assert_eq!(blocks_no_hyperplane(&g, 5).unwrap().blocks, Partition::singletons(3));
    }

    #[test]
    fn synthetic_no_hyperplane() {
        let g = fixture([1, 2, 2], [vec![], vec![phi2(&[1, -1])], vec![phi2(&[1, -1])]]);
        let c = blocks_no_hyperplane(&g, 2).unwrap();
        assert_eq!(c.blocks, Partition::with_singletons(3, vec![vec![1, 2]]).unwrap());
        assert!(!c.confirmed);
        // different a+A splits the pair
        let g = fixture([1, 2, 2], [vec![], vec![phi2(&[1, -1])], vec![]]);
        assert_eq!(blocks_no_hyperplane(&g, 2).unwrap().blocks, Partition::singletons(3));
    }

    #[test]
    fn synthetic_one_hyperplane() {
        let g = fixture([1, 1, 1], [vec![], vec![phi2(&[1, -1])], vec![phi2(&[1, -1])]]);
        let h = g.hyperplane(&[1, -1]).unwrap();
        assert_eq!(blocks_no_hyperplane(&g, 2).unwrap().blocks, Partition::singletons(3));
        let on = blocks_one_hyperplane(&g, 2, &h).unwrap();
        assert_eq!(on.blocks, Partition::with_singletons(3, vec![vec![1, 2]]).unwrap());
        // not essential for any character: same as off the hyperplane
        let g2 = fixture([1, 1, 1], [vec![], vec![], vec![]]);
        assert_eq!(blocks_one_hyperplane(&g2, 2, &h).unwrap(), blocks_no_hyperplane(&g2, 2).unwrap());
    }

    #[test]
    fn schur_path_is_scale_invariant() {
        let mut g = fixture([1, 1, 1], [vec![], vec![phi2(&[1, -1])], vec![phi2(&[1, -1])]]);
        for n in [[0i64, 0], [1, 1], [0, 1], [3, -2]] {
            let a = rouquier_from_schur(&g, &n).unwrap();
            let b = rouquier_from_schur(&g, &[2 * n[0], 2 * n[1]]).unwrap();
            assert_eq!(a, b);
        }
        assert_eq!(rouquier_from_schur(&g, &[0, 1]).unwrap().blocks, Partition::singletons(3));
        assert_eq!(
            rouquier_from_schur(&g, &[1, 1]).unwrap().blocks,
            Partition::with_singletons(3, vec![vec![1, 2]]).unwrap()
        );
        // with matching tables the result is confirmed
        g.tables = vec![
            HyperplaneTable { hyperplane: None, blocks: Partition::singletons(3), primes: vec![], per_prime: vec![] },
            HyperplaneTable {
                hyperplane: Some(g.hyperplane(&[1, -1]).unwrap()),
                blocks: Partition::with_singletons(3, vec![vec![1, 2]]).unwrap(),
                primes: vec![2],
                per_prime: vec![],
            },
        ];
        assert!(rouquier_from_schur(&g, &[1, 1]).unwrap().confirmed);
        assert!(blocks_one_hyperplane(&g, 2, &g.hyperplane(&[1, -1]).unwrap()).unwrap().confirmed);
    }

    #[test]
    fn tables_path() {
        let g = fixture([1, 1, 1], [vec![], vec![], vec![]]);
        assert_eq!(rouquier_from_tables(&g, &[0, 1]), Err(EngineError::Missing("hyperplane tables")));
        assert!(matches!(rouquier_from_tables(&g, &[0]), Err(EngineError::Datum(_))));
    }
}
