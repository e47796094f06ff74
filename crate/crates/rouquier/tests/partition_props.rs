//! Join and meet of character partitions, checked against a pairwise relation
//! computed by brute force.

use proptest::prelude::*;
use rouquier::partition::Partition;

fn partition(n: usize) -> impl Strategy<Value = Partition> {
    prop::collection::vec(0usize..n.max(1), n).prop_map(|labels| Partition::from_labels(&labels))
}

fn three() -> impl Strategy<Value = (Partition, Partition, Partition)> {
    (1usize..=10).prop_flat_map(|n| (partition(n), partition(n), partition(n)))
}

fn relation(p: &Partition) -> Vec<Vec<bool>> {
    let n = p.len();
    (0..n).map(|i| (0..n).map(|j| p.same_part(i, j)).collect()).collect()
}

/// Transitive closure of the union of two equivalence relations.
fn closure(a: &[Vec<bool>], b: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let n = a.len();
    let mut r: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| a[i][j] || b[i][j]).collect()).collect();
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                r[i][j] = r[i][j] || (r[i][k] && r[k][j]);
            }
        }
    }
    r
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn join_and_meet_match_brute_force((a, b, _c) in three()) {
        let ra = relation(&a);
        let rb = relation(&b);
        let meet = a.meet(&b).unwrap();
        let join = a.join(&b).unwrap();
        let n = a.len();
        for i in 0..n {
            for j in 0..n {
                prop_assert_eq!(meet.same_part(i, j), ra[i][j] && rb[i][j]);
            }
        }
        prop_assert_eq!(relation(&join), closure(&ra, &rb));
    }

    #[test]
    fn lattice_laws((a, b, c) in three()) {
        prop_assert_eq!(a.join(&a).unwrap(), a.clone());
        prop_assert_eq!(a.meet(&a).unwrap(), a.clone());
        prop_assert_eq!(a.join(&b).unwrap(), b.join(&a).unwrap());
        prop_assert_eq!(a.meet(&b).unwrap(), b.meet(&a).unwrap());
        prop_assert_eq!(a.join(&b).unwrap().join(&c).unwrap(), a.join(&b.join(&c).unwrap()).unwrap());
        prop_assert_eq!(a.meet(&b).unwrap().meet(&c).unwrap(), a.meet(&b.meet(&c).unwrap()).unwrap());
        // absorption
        prop_assert_eq!(a.join(&a.meet(&b).unwrap()).unwrap(), a.clone());
        prop_assert_eq!(a.meet(&a.join(&b).unwrap()).unwrap(), a.clone());
        let m = a.meet(&b).unwrap();
        let j = a.join(&b).unwrap();
        prop_assert!(m.refines(&a) && m.refines(&b));
        prop_assert!(a.refines(&j) && b.refines(&j));
        prop_assert!(Partition::singletons(a.len()).refines(&a));
        prop_assert!(a.refines(&Partition::single_block(a.len())));
    }

    #[test]
    fn join_all_is_iterated_join((a, b, c) in three()) {
        let all = Partition::join_all(a.len(), [&a, &b, &c]).unwrap();
        prop_assert_eq!(all, a.join(&b).unwrap().join(&c).unwrap());
    }
}

#[test]
fn mismatched_sizes_are_rejected() {
    let a = Partition::singletons(3);
    let b = Partition::singletons(4);
    assert!(a.join(&b).is_err());
    assert!(a.meet(&b).is_err());
}
