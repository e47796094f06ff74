//! Invariants of the shipped groups: Schur elements, block tables, the G4
//! character table and the Clifford links between them.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::OnceLock;

use num_rational::Ratio;
use proptest::prelude::*;
use rouquier::clifford::{descend_hyperplanes, transport_blocks};
use rouquier::cyclo::CycInt;
use rouquier::datum::GroupDatum;
use rouquier::engine::{hyperplanes_containing, rouquier_from_tables};
use rouquier::group_blocks::{galois_close, p_blocks};
use rouquier::lattice::primitive_part;
use rouquier::partition::Partition;
use rouquier::schur::{a_and_a, essential_monomials, specialize, validate, value_at_one, SchurElement};
use rouquier_store::db::{collect_files, load};

fn data() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data")
}

fn groups() -> &'static BTreeMap<String, GroupDatum> {
    static CELL: OnceLock<BTreeMap<String, GroupDatum>> = OnceLock::new();
    CELL.get_or_init(|| {
        collect_files(&[data()]).unwrap().iter().map(|f| load(f).unwrap()).map(|g| (g.name.clone(), g)).collect()
    })
}

fn group(name: &str) -> &'static GroupDatum {
    &groups()[name]
}

/// Every stored element, with its group.
fn elements() -> Vec<(&'static GroupDatum, &'static SchurElement)> {
    groups().values().flat_map(|g| g.schur.iter().flatten().map(move |e| (g, &e.v))).collect()
}

fn orbit_sums(g: &GroupDatum, m: &[i64]) -> Vec<i64> {
    let mut out = Vec::new();
    let mut at = 0;
    for o in &g.orbits {
        out.push(m[at..at + o.order as usize].iter().sum());
        at += o.order as usize;
    }
    out
}

fn content(m: &[i64]) -> i64 {
    m.iter().fold(0i64, |g, &x| num_integer::gcd(g, x))
}

#[test]
fn stored_elements_validate() {
    let all = elements();
    assert!(all.len() >= 40, "{} elements", all.len());
    for (g, s) in all {
        assert!(validate(g, s).is_empty(), "{} {}: {:?}", g.name, s.char, validate(g, s));
        let want = (g.group_order / s.char.degree as u64) as i64;
        assert_eq!(value_at_one(s), CycInt::from_int(1, want), "{} {}", g.name, s.char);
    }
}

#[test]
fn essential_monomials_are_primitive_orbit_free_and_sign_blind() {
    for (g, s) in elements() {
        let mut negated = s.clone();
        for f in &mut negated.factors {
            f.monomial = f.monomial.iter().map(|x| -x).collect();
        }
        for p in [2u64, 3, 5, 7] {
            let ms = essential_monomials(s, p);
            for m in &ms {
                assert!(orbit_sums(g, m).iter().all(|&x| x == 0), "{} {}: {m:?}", g.name, s.char);
                assert_eq!(content(m), 1);
                assert!(m.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0));
            }
            assert_eq!(essential_monomials(&negated, p), ms);
        }
    }
}

// --- a dense expansion over a prime field, as the oracle for (a, A) ---

const ROOTS: u64 = 120;

fn pow_mod(mut b: u64, mut e: u64, q: u64) -> u64 {
    let mut r = 1u64;
    b %= q;
    while e > 0 {
        if e & 1 == 1 {
            r = (r as u128 * b as u128 % q as u128) as u64;
        }
        b = (b as u128 * b as u128 % q as u128) as u64;
        e >>= 1;
    }
    r
}

/// A prime `q ≡ 1 (mod 120)` and an element of order exactly 120.
fn field() -> (u64, u64) {
    let prime = |n: u64| n > 1 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d));
    let q = (1u64 << 31..).find(|&q| q % ROOTS == 1 && prime(q)).unwrap();
    let z = (2..)
        .map(|a| pow_mod(a, (q - 1) / ROOTS, q))
        .find(|&z| [2, 3, 5].iter().all(|r| pow_mod(z, ROOTS / r, q) != 1))
        .unwrap();
    (q, z)
}

fn image(c: &CycInt, q: u64, z: u64) -> u64 {
    let n = c.conductor();
    assert_eq!(ROOTS % n, 0);
    let step = ROOTS / n;
    c.coeffs().iter().enumerate().fold(0u64, |acc, (k, &v)| {
        let t = pow_mod(z, step * k as u64, q);
        let v = v.rem_euclid(q as i64) as u64;
        ((acc as u128 + v as u128 * t as u128) % q as u128) as u64
    })
}

/// Lowest and highest exponent of `s(y)` after `v_s ↦ y^{n_s}`, read off a
/// dense product.
fn extreme_exponents(s: &SchurElement, n: &[i64], q: u64, z: u64) -> (i64, i64) {
    let dot = |m: &[i64]| m.iter().zip(n).map(|(a, b)| a * b).sum::<i64>();
    let mut lo = dot(&s.lead);
    let mut poly = vec![image(&s.xi, q, z)];
    for f in &s.factors {
        let c: Vec<u64> = f.psi.poly().iter().map(|c| image(c, q, z)).collect();
        let d = dot(&f.monomial);
        for _ in 0..f.mult {
            if d == 0 {
                let v = c.iter().fold(0u64, |a, &x| (a + x) % q);
                poly.iter_mut().for_each(|p| *p = (*p as u128 * v as u128 % q as u128) as u64);
                continue;
            }
            let deg = c.len() as i64 - 1;
            let shift = if d < 0 { deg * d } else { 0 };
            let mut next = vec![0u64; poly.len() + (deg * d.abs()) as usize];
            for (i, &p) in poly.iter().enumerate() {
                if p == 0 {
                    continue;
                }
                for (k, &ck) in c.iter().enumerate() {
                    let at = (i as i64 + k as i64 * d - shift) as usize;
                    next[at] = ((next[at] as u128 + p as u128 * ck as u128) % q as u128) as u64;
                }
            }
            lo += shift;
            poly = next;
        }
    }
    let first = poly.iter().position(|&x| x != 0).expect("nonzero product") as i64;
    let last = poly.iter().rposition(|&x| x != 0).unwrap() as i64;
    (lo + first, lo + last)
}

fn small_vector(len: usize, bound: i64) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-bound..=bound, len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn valuation_and_degree_match_expansion(pick in 0usize..1000, seed in prop::collection::vec(-2i64..=2, 12)) {
        let all = elements();
        let (g, s) = all[pick % all.len()];
        let bound = if g.mu_order > 12 { 1 } else { 2 };
        let n: Vec<i64> = seed.iter().cycle().take(g.slot_count()).map(|&x| x.clamp(-bound, bound)).collect();
        let (q, z) = field();
        let (lo, hi) = extreme_exponents(s, &n, q, z);
        let (a, big_a) = a_and_a(g.mu_order, &specialize(s, &n));
        let mu = g.mu_order as i64;
        prop_assert_eq!(a, Ratio::new(lo, mu), "{} {} n={:?}", g.name, s.char, n);
        prop_assert_eq!(big_a, Ratio::new(hi, mu));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn specialization_is_linear(pick in 0usize..1000, u in small_vector(16, 20), w in small_vector(16, 20), k in 1i64..=5) {
        let all = elements();
        let (g, s) = all[pick % all.len()];
        let m = g.slot_count();
        let (u, w) = (&u[..m], &w[..m]);
        let sum: Vec<i64> = u.iter().zip(w).map(|(a, b)| a + b).collect();
        let su = specialize(s, u);
        let sw = specialize(s, w);
        prop_assert_eq!(specialize(s, &sum).y_power, su.y_power + sw.y_power);
        // v ↦ y^{kn} is y ↦ y^k after v ↦ y^n; v ↦ y^{-n} swaps the ends
        let scaled: Vec<i64> = u.iter().map(|x| k * x).collect();
        let neg: Vec<i64> = u.iter().map(|x| -x).collect();
        let (a, big_a) = a_and_a(g.mu_order, &su);
        prop_assert!(a <= big_a);
        let (ka, kb) = a_and_a(g.mu_order, &specialize(s, &scaled));
        prop_assert_eq!((ka, kb), (a * k, big_a * k));
        let (na, nb) = a_and_a(g.mu_order, &specialize(s, &neg));
        prop_assert_eq!((na, nb), (-big_a, -a));
    }

    #[test]
    fn table_blocks_are_scale_invariant(gi in 0usize..2, n in small_vector(8, 3), alpha in 2i64..=7) {
        let g = group(["G6", "G7"][gi]);
        let n = &n[..g.slot_count()];
        let scaled: Vec<i64> = n.iter().map(|x| alpha * x).collect();
        prop_assert_eq!(rouquier_from_tables(g, n).unwrap(), rouquier_from_tables(g, &scaled).unwrap());
    }

    #[test]
    fn table_blocks_grow_with_the_hyperplanes(gi in 0usize..3, n1 in small_vector(8, 2), n2 in small_vector(8, 2)) {
        let g = group(["G4", "G6", "G7"][gi]);
        let m = g.slot_count();
        let (n1, n2) = (&n1[..m], &n2[..m]);
        let h1: Vec<_> = hyperplanes_containing(&g.tables, n1).iter().map(|t| t.hyperplane.clone()).collect();
        let h2: Vec<_> = hyperplanes_containing(&g.tables, n2).iter().map(|t| t.hyperplane.clone()).collect();
        let b1 = rouquier_from_tables(g, n1).unwrap();
        let b2 = rouquier_from_tables(g, n2).unwrap();
        if h1.iter().all(|h| h2.contains(h)) {
            prop_assert!(b1.refines(&b2));
        }
        if let Some(base) = g.baseline() {
            prop_assert!(base.blocks.refines(&b1));
        }
    }

    #[test]
    fn transport_is_monotone(picks in prop::collection::vec(any::<bool>(), 16), more in prop::collection::vec(any::<bool>(), 16)) {
        // parent tables grouped by the child hyperplane they restrict to; each
        // group is stable under the cyclic dual group, single tables are not
        let (parent, child) = (group("G7"), group("G6"));
        let link = parent.links.iter().find(|l| l.child == "G6").unwrap();
        let k = parent.characters.len();
        let mut zero = Partition::singletons(k);
        let mut by_normal: BTreeMap<Vec<i64>, Partition> = BTreeMap::new();
        for t in &parent.tables {
            let r = t.hyperplane.as_ref().map(|h| primitive_part(&link.restrict_normal(child, h.normal())));
            match r {
                Some((v, c)) if c != 0 => {
                    let key = child.hyperplane(&v).unwrap().normal().to_vec();
                    let e = by_normal.entry(key).or_insert_with(|| Partition::singletons(k));
                    *e = e.join(&t.blocks).unwrap();
                }
                _ => zero = zero.join(&t.blocks).unwrap(),
            }
        }
        let groups: Vec<&Partition> = by_normal.values().collect();
        let chosen = |mask: &[bool]| -> Partition {
            let ps = groups.iter().zip(mask).filter(|(_, &b)| b).map(|(p, _)| *p).chain([&zero]);
            Partition::join_all(k, ps).unwrap()
        };
        let union: Vec<bool> = picks.iter().zip(&more).map(|(a, b)| *a || *b).collect();
        let fine = chosen(&picks);
        let coarse = chosen(&union);
        prop_assert!(fine.refines(&coarse));
        let tf = transport_blocks(link, parent, child, &fine).unwrap();
        let tc = transport_blocks(link, parent, child, &coarse).unwrap();
        prop_assert!(tf.refines(&tc));
    }
}

#[test]
fn descent_from_g7_agrees_with_g6() {
    // G6 has hyperplanes of its own; every descended one must match its table
    let (parent, child) = (group("G7"), group("G6"));
    let link = parent.links.iter().find(|l| l.child == "G6").unwrap();
    let got = descend_hyperplanes(link, parent, child, &parent.tables).unwrap();
    assert!(got.len() >= 10, "{} tables", got.len());
    for t in &got {
        let stored = child.tables.iter().find(|s| s.hyperplane == t.hyperplane);
        let stored = stored.unwrap_or_else(|| panic!("no G6 table for {:?}", t.hyperplane));
        assert_eq!(t.blocks, stored.blocks, "{:?}", t.hyperplane);
    }
}

// --- the G4 character table ---

fn g4_table() -> &'static rouquier::group_blocks::CharacterTable {
    group("G4").character_table.as_ref().unwrap()
}

/// Blocks grouped by degree class: the centre of SL(2,3) separates the
/// degree-2 characters, and degree 3 has defect zero at 3.
fn expected_g4_blocks(p: u64) -> Partition {
    let g = group("G4");
    match p {
        2 => Partition::single_block(g.characters.len()),
        3 => Partition::from_labels(&g.characters.iter().map(|c| c.degree).collect::<Vec<_>>()),
        _ => Partition::singletons(g.characters.len()),
    }
}

#[test]
fn g4_blocks_from_the_character_table() {
    let t = g4_table();
    for p in [2u64, 3, 5, 7] {
        let b = p_blocks(t, p).unwrap();
        assert_eq!(b, expected_g4_blocks(p), "p={p}");
        assert_eq!(galois_close(t, &b).unwrap(), b);
    }
}

#[test]
fn congruent_central_characters_share_a_block() {
    let t = g4_table();
    let k = t.values.len();
    for p in [2u64, 3] {
        let b = p_blocks(t, p).unwrap();
        let h = rouquier::cyclo::prime_handle(p, t.conductor);
        for i in 0..k {
            for j in 0..k {
                let congruent = (0..t.class_sizes.len()).all(|c| {
                    let a = t.central_character(i, c).unwrap().lift(t.conductor);
                    let d = t.central_character(j, c).unwrap().lift(t.conductor);
                    rouquier::cyclo::in_prime_ideal(&(&a - &d), &h)
                });
                if congruent {
                    assert!(b.same_part(i, j), "p={p} {i} {j}");
                }
            }
        }
    }
}
