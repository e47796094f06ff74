//! Transport between the Hecke algebra of a group and a subalgebra of finite
//! cyclic index, as used for the G7 → G6 → G4 style chains.
//!
//! A link fixes some parent parameters to roots of unity and identifies the rest
//! with child parameters. Induction rows `Ind(χ̄) = Σ χ` are stored data.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::cyclo::{CycInt, RootOfUnity};
use crate::datum::{CharLabel, DatumError, GroupDatum, HyperplaneTable};
use crate::lattice::{primitive_part, IntVector};
use crate::partition::{Partition, PartitionError, UnionFind};
use crate::schur::{normalize_x_to_v, value_at_one, SchurElement, SchurError, SchurFactorX, SchurX};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CliffordError {
    #[error("link {0}: {1}")]
    Invalid(String, String),
    #[error("parent block {block} splits the induction row of {row} unevenly")]
    UnevenSplit { row: CharLabel, block: String },
    #[error("slot {0} is mapped onto a child slot with a different radical branch")]
    BranchMismatch(usize),
    #[error(transparent)]
    Datum(#[from] DatumError),
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error(transparent)]
    Schur(#[from] SchurError),
}

/// Image of one parent parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParamImage {
    Child(usize),
    Fixed(RootOfUnity),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InductionRow {
    pub child: CharLabel,
    pub parent: Vec<CharLabel>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliffordLink {
    pub parent: String,
    pub child: String,
    pub cyclic_order: u64,
    /// One entry per parent slot.
    pub parameter_spec: Vec<ParamImage>,
    pub induction: Vec<InductionRow>,
}

impl CliffordLink {
    fn name(&self) -> String {
        format!("{} -> {}", self.parent, self.child)
    }

    fn err(&self, msg: String) -> CliffordError {
        CliffordError::Invalid(self.name(), msg)
    }

    /// Structural problems with the link against both groups.
    pub fn validate(&self, parent: &GroupDatum, child: &GroupDatum) -> Vec<String> {
        let mut out = Vec::new();
        let name = self.name();
        if self.parameter_spec.len() != parent.slot_count() {
            out.push(format!(
                "{name}: {} parameter images for {} slots",
                self.parameter_spec.len(),
                parent.slot_count()
            ));
        }
        for (s, p) in self.parameter_spec.iter().enumerate() {
            if let ParamImage::Child(t) = p {
                if *t >= child.slot_count() {
                    out.push(format!("{name}: slot {s} maps to missing child slot {t}"));
                }
            }
        }
        let mut seen_parent: BTreeMap<CharLabel, CharLabel> = BTreeMap::new();
        let mut seen_child = Vec::new();
        for row in &self.induction {
            let r = row.child;
            let Some(ci) = child.char_index(&r) else {
                out.push(format!("{name}: unknown child character {r}"));
                continue;
            };
            if seen_child.contains(&r) {
                out.push(format!("{name}: two rows for {r}"));
            }
            seen_child.push(r);
            if row.parent.is_empty() || !self.cyclic_order.is_multiple_of(row.parent.len() as u64) {
                out.push(format!(
                    "{name}: row {r} has {} constituents, not a divisor of {}",
                    row.parent.len(),
                    self.cyclic_order
                ));
            }
            let mut deg = 0u64;
            for p in &row.parent {
                if parent.char_index(p).is_none() {
                    out.push(format!("{name}: row {r} names unknown parent character {p}"));
                }
                if let Some(prev) = seen_parent.insert(*p, r) {
                    out.push(format!("{name}: {p} appears in the rows of {prev} and {r}"));
                }
                deg += p.degree as u64;
            }
            let want = self.cyclic_order * child.characters[ci].degree as u64;
            if deg != want {
                out.push(format!("{name}: row {r} induces to degree {deg}, expected {want}"));
            }
        }
        out
    }

    fn rows_indexed(&self, parent: &GroupDatum, child: &GroupDatum) -> Result<Vec<(usize, Vec<usize>)>, CliffordError> {
        self.induction
            .iter()
            .map(|row| {
                let c = child
                    .char_index(&row.child)
                    .ok_or_else(|| self.err(format!("unknown child character {}", row.child)))?;
                let ps = row
                    .parent
                    .iter()
                    .map(|p| parent.char_index(p).ok_or_else(|| self.err(format!("unknown parent character {p}"))))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok((c, ps))
            })
            .collect()
    }

    /// Child normal obtained by summing parent coordinates onto their child slots.
    pub fn restrict_normal(&self, child: &GroupDatum, n: &[i64]) -> IntVector {
        let mut out = alloc::vec![0; child.slot_count()];
        for (s, p) in self.parameter_spec.iter().enumerate() {
            if let (ParamImage::Child(t), Some(&c)) = (p, n.get(s)) {
                out[*t] += c;
            }
        }
        out
    }
}

/// Child blocks: `χ̄ ~ ψ̄` iff one parent block meets both induction rows.
pub fn transport_blocks(
    link: &CliffordLink,
    parent: &GroupDatum,
    child: &GroupDatum,
    parent_blocks: &Partition,
) -> Result<Partition, CliffordError> {
    if parent_blocks.len() != parent.characters.len() {
        return Err(PartitionError::Mismatch(parent.characters.len(), parent_blocks.len()).into());
    }
    let rows = link.rows_indexed(parent, child)?;
    let labels = parent_blocks.labels();
    let sizes: Vec<usize> = parent_blocks.parts().iter().map(Vec::len).collect();
    for (ri, (_, ps)) in rows.iter().enumerate() {
        // the cyclic dual group permutes blocks, so a row meets every block it touches equally
        let mut hits: BTreeMap<usize, usize> = BTreeMap::new();
        for &p in ps {
            *hits.entry(labels[p]).or_default() += 1;
        }
        let counts: Vec<usize> = hits.values().copied().collect();
        let block_sizes: Vec<usize> = hits.keys().map(|&b| sizes[b]).collect();
        if counts.windows(2).any(|w| w[0] != w[1]) || block_sizes.windows(2).any(|w| w[0] != w[1]) {
            let b = *hits.keys().next().expect("row is non-empty");
            let block = parent_blocks.parts()[b]
                .iter()
                .map(|&i| format!("{}", parent.characters[i]))
                .collect::<Vec<_>>()
                .join(", ");
            return Err(CliffordError::UnevenSplit { row: link.induction[ri].child, block });
        }
    }
    let mut owner: Vec<Option<usize>> = alloc::vec![None; parent_blocks.parts().len()];
    let mut uf = UnionFind::new(child.characters.len());
    for (c, ps) in &rows {
        for &p in ps {
            match owner[labels[p]] {
                Some(o) => uf.union(o, *c),
                None => owner[labels[p]] = Some(*c),
            }
        }
    }
    Ok(uf.into_partition())
}

/// Child tables from parent tables.
///
/// The specialized parent lies on every parent hyperplane whose normal restricts
/// to zero, so those tables are joined with the parent baseline before anything
/// is transported. The result is the child baseline; each child hyperplane gets
/// the transport of that join together with every parent table restricting to it.
pub fn descend_hyperplanes(
    link: &CliffordLink,
    parent: &GroupDatum,
    child: &GroupDatum,
    parent_tables: &[HyperplaneTable],
) -> Result<Vec<HyperplaneTable>, CliffordError> {
    let m = parent.characters.len();
    let mut zero = Partition::singletons(m);
    let mut by_normal: BTreeMap<IntVector, (Partition, Vec<u64>)> = BTreeMap::new();
    for t in parent_tables {
        let restricted = t.hyperplane.as_ref().map(|h| link.restrict_normal(child, h.normal()));
        match restricted {
            Some(r) if primitive_part(&r).1 != 0 => {
                let h = child.hyperplane(&r)?;
                let entry =
                    by_normal.entry(h.normal().to_vec()).or_insert_with(|| (Partition::singletons(m), Vec::new()));
                entry.0 = entry.0.join(&t.blocks)?;
                for &p in &t.primes {
                    if !entry.1.contains(&p) {
                        entry.1.push(p);
                    }
                }
            }
            _ => zero = zero.join(&t.blocks)?,
        }
    }
    let baseline = transport_blocks(link, parent, child, &zero)?;
    let mut out = Vec::with_capacity(by_normal.len() + 1);
    out.push(HyperplaneTable { hyperplane: None, blocks: baseline, primes: Vec::new(), per_prime: Vec::new() });
    for (normal, (blocks, mut primes)) in by_normal {
        primes.sort_unstable();
        out.push(HyperplaneTable {
            hyperplane: Some(child.hyperplane(&normal)?),
            blocks: transport_blocks(link, parent, child, &blocks.join(&zero)?)?,
            primes,
            per_prime: Vec::new(),
        });
    }
    Ok(out)
}

fn map_monomial(
    link: &CliffordLink,
    parent: &GroupDatum,
    child: &GroupDatum,
    num: &[i64],
    den: u64,
) -> Result<(RootOfUnity, IntVector), CliffordError> {
    if num.len() != link.parameter_spec.len() {
        return Err(DatumError::Arity { got: num.len(), want: link.parameter_spec.len() }.into());
    }
    let ps = parent.slots();
    let cs = child.slots();
    let mut root = RootOfUnity::one();
    let mut out = alloc::vec![0; child.slot_count()];
    for (s, (&a, img)) in num.iter().zip(&link.parameter_spec).enumerate() {
        if a == 0 {
            continue;
        }
        match img {
            ParamImage::Child(t) => {
                let (pc, pj) = ps[s];
                let (cc, cj) = cs[*t];
                if den > 1 && (parent.orbits[pc].order != child.orbits[cc].order || pj != cj) {
                    return Err(CliffordError::BranchMismatch(s));
                }
                out[*t] += a;
            }
            // (ζ_d^k)^{a/q} = ζ_{dq}^{ka}
            ParamImage::Fixed(z) => {
                root = root.mul(&RootOfUnity::new(z.order() * den, z.exponent() as i64 * a));
            }
        }
    }
    Ok((root, out))
}

/// Rewrites a parent x-form in the child's parameters.
pub fn specialize_x(
    link: &CliffordLink,
    parent: &GroupDatum,
    child: &GroupDatum,
    x: &SchurX,
) -> Result<SchurX, CliffordError> {
    let (root, lead_num) = map_monomial(link, parent, child, &x.lead_num, x.lead_den)?;
    let coeff = &x.coeff * &root.to_cycint();
    let factors = x
        .factors
        .iter()
        .map(|f| {
            let (r, num) = map_monomial(link, parent, child, &f.num, f.den)?;
            Ok(SchurFactorX { cyc_index: f.cyc_index, twist: f.twist.mul(&r), num, den: f.den, mult: f.mult })
        })
        .collect::<Result<Vec<_>, CliffordError>>()?;
    Ok(SchurX { coeff, lead_num, lead_den: x.lead_den, factors })
}

/// Specialized parent Schur element divided by `|Ω|`, normalized for the child.
pub fn descend_schur(
    link: &CliffordLink,
    parent: &GroupDatum,
    child: &GroupDatum,
    parent_char: CharLabel,
    x: &SchurX,
) -> Result<SchurElement, CliffordError> {
    let row = link
        .induction
        .iter()
        .find(|r| r.parent.contains(&parent_char))
        .ok_or_else(|| link.err(format!("{parent_char} is in no induction row")))?;
    let omega = row.parent.len() as i64;
    let sx = specialize_x(link, parent, child, x)?;
    let mut s = normalize_x_to_v(child, row.child, &sx)?;
    if s.xi.coeffs().iter().any(|c| c % omega != 0) {
        return Err(link.err(format!("coefficient of the specialized {parent_char} is not divisible by {omega}")));
    }
    let q: Vec<i64> = s.xi.coeffs().iter().map(|c| c / omega).collect();
    s.xi = CycInt::from_coeffs(s.xi.conductor(), q).expect("same length");
    Ok(s)
}

/// Checks `s_χ = |Ω| s_χ̄` after specialization. Without a child element, the
/// value at one and divisibility by `|Ω|` are checked instead.
pub fn validate_schur_scaling(
    link: &CliffordLink,
    parent: &GroupDatum,
    child: &GroupDatum,
    parent_char: CharLabel,
    parent_x: &SchurX,
    child_schur: Option<&SchurElement>,
) -> Vec<String> {
    let name = link.name();
    let got = match descend_schur(link, parent, child, parent_char, parent_x) {
        Ok(s) => s,
        Err(e) => return alloc::vec![format!("{name}: {parent_char}: {e}")],
    };
    let mut out = Vec::new();
    match child_schur {
        Some(c) => {
            if c.char != got.char {
                out.push(format!("{name}: {parent_char} lies over {}, not {}", got.char, c.char));
            }
            if c.xi != got.xi {
                out.push(format!("{name}: {parent_char}: coefficient {} against {} for {}", got.xi, c.xi, c.char));
            }
            if c.lead != got.lead {
                out.push(format!("{name}: {parent_char}: leading monomial {:?} against {:?}", got.lead, c.lead));
            }
            if c.factors != got.factors {
                out.push(format!("{name}: {parent_char}: cyclotomic factors differ from those of {}", c.char));
            }
        }
        None => {
            let want = CycInt::from_int(1, (child.group_order / got.char.degree as u64) as i64);
            let v = value_at_one(&got);
            if v != want {
                out.push(format!("{name}: {parent_char}: descended value at one is {v}, expected {want}"));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datum::Orbit;
    use alloc::vec;

    fn l(d: u32, b: u32, m: u8) -> CharLabel {
        CharLabel::new(d, b, m)
    }

    // Z/2 acting on a rank-one datum: parent has orbits a(2) c(2), child only c(2)
    fn pair() -> (GroupDatum, GroupDatum, CliffordLink) {
        let parent = GroupDatum::new(
            "P",
            4,
            4,
            8,
            vec![Orbit { letter: 'a', order: 2 }, Orbit { letter: 'c', order: 2 }],
            vec![l(1, 0, 0), l(1, 1, 0), l(1, 2, 0), l(1, 3, 0), l(2, 1, 0)],
        );
        let child = GroupDatum::new(
            "C",
            4,
            4,
            4,
            vec![Orbit { letter: 'c', order: 2 }],
            vec![l(1, 0, 0), l(1, 1, 0), l(1, 2, 0)],
        );
        let link = CliffordLink {
            parent: "P".into(),
            child: "C".into(),
            cyclic_order: 2,
            parameter_spec: vec![
                ParamImage::Fixed(RootOfUnity::one()),
                ParamImage::Fixed(RootOfUnity::new(2, 1)),
                ParamImage::Child(0),
                ParamImage::Child(1),
            ],
            induction: vec![
                InductionRow { child: l(1, 0, 0), parent: vec![l(1, 0, 0), l(1, 1, 0)] },
                InductionRow { child: l(1, 1, 0), parent: vec![l(1, 2, 0), l(1, 3, 0)] },
                InductionRow { child: l(1, 2, 0), parent: vec![l(2, 1, 0)] },
            ],
        };
        (parent, child, link)
    }

    #[test]
    fn link_validates() {
        let (p, c, link) = pair();
        assert!(link.validate(&p, &c).is_empty());
        let mut bad = link.clone();
        bad.induction[2].parent.push(l(1, 0, 0));
        let errs = bad.validate(&p, &c);
        assert!(errs.iter().any(|e| e.contains("appears in the rows")));
        assert!(errs.iter().any(|e| e.contains("induces to degree 3")));
        bad.induction[2].parent.push(l(1, 1, 0));
        assert!(bad.validate(&p, &c).iter().any(|e| e.contains("not a divisor")));
    }

    #[test]
    fn transport_examples() {
        let (p, c, link) = pair();
        let t = transport_blocks(&link, &p, &c, &Partition::singletons(5)).unwrap();
        assert_eq!(t, Partition::singletons(3));
        let coarse = Partition::with_singletons(5, vec![vec![0, 2], vec![1, 3]]).unwrap();
        let t = transport_blocks(&link, &p, &c, &coarse).unwrap();
        assert_eq!(t, Partition::with_singletons(3, vec![vec![0, 1]]).unwrap());
        let t = transport_blocks(&link, &p, &c, &Partition::with_singletons(5, vec![vec![4, 2, 3]]).unwrap()).unwrap();
        assert_eq!(t, Partition::with_singletons(3, vec![vec![1, 2]]).unwrap());
    }

    #[test]
    fn uneven_split_is_rejected() {
        let (p, c, link) = pair();
        // row {0,1} meets a block of size 2 and a block of size 1
        let bad = Partition::with_singletons(5, vec![vec![0, 4]]).unwrap();
        assert!(matches!(transport_blocks(&link, &p, &c, &bad), Err(CliffordError::UnevenSplit { .. })));
    }

    #[test]
    fn transport_is_monotone() {
        let (p, c, link) = pair();
        let fine = Partition::with_singletons(5, vec![vec![0, 2], vec![1, 3]]).unwrap();
        let coarse = Partition::with_singletons(5, vec![vec![0, 2, 1, 3]]).unwrap();
        let a = transport_blocks(&link, &p, &c, &fine).unwrap();
        let b = transport_blocks(&link, &p, &c, &coarse).unwrap();
        assert!(a.refines(&b));
    }

    #[test]
    fn descent_routes_zero_restrictions_to_baseline() {
        let (p, c, link) = pair();
        let table = |v: Option<Vec<i64>>, parts: Vec<Vec<usize>>| HyperplaneTable {
            hyperplane: v.map(|v| p.hyperplane(&v).unwrap()),
            blocks: Partition::with_singletons(5, parts).unwrap(),
            primes: vec![2],
            per_prime: Vec::new(),
        };
        let tables = vec![
            table(None, vec![]),
            table(Some(vec![1, -1, 0, 0]), vec![vec![0, 2], vec![1, 3]]),
            table(Some(vec![0, 0, 1, -1]), vec![vec![2, 3, 4]]),
            table(Some(vec![0, 0, 2, -2]), vec![vec![0, 1, 4]]),
            table(Some(vec![1, -1, 1, -1]), vec![vec![0, 4]]),
        ];
        let out = descend_hyperplanes(&link, &p, &c, &tables).unwrap();
        assert_eq!(out.len(), 2);
        assert_eq!(out[0].blocks, Partition::with_singletons(3, vec![vec![0, 1]]).unwrap());
        assert_eq!(out[1].hyperplane.as_ref().unwrap().normal(), &[1, -1]);
        assert_eq!(out[1].blocks, Partition::single_block(3));
        // without the a-difference table, {0, 4} meets the row {0, 1} unevenly
        let bad = [tables[0].clone(), tables[4].clone()];
        assert!(matches!(descend_hyperplanes(&link, &p, &c, &bad), Err(CliffordError::UnevenSplit { .. })));
    }

    fn sx(coeff: i64, factors: Vec<SchurFactorX>, n: usize) -> SchurX {
        SchurX { coeff: CycInt::from_int(1, coeff), lead_num: vec![0; n], lead_den: 1, factors }
    }

    #[test]
    fn fixed_radicals_take_the_principal_branch() {
        let (p, c, link) = pair();
        // x_{a,1}^{1/2} with x_{a,1} = -1 becomes ζ_4
        let (r, v) = map_monomial(&link, &p, &c, &[0, 1, 1, 0], 2).unwrap();
        assert_eq!(r, RootOfUnity::new(4, 1));
        assert_eq!(v, vec![1, 0]);
        // c_j keeps its index, so the child branch matches
        assert!(map_monomial(&link, &p, &c, &[0, 0, 1, -1], 2).is_ok());
        let mut swapped = link.clone();
        swapped.parameter_spec[2] = ParamImage::Child(1);
        assert_eq!(map_monomial(&swapped, &p, &c, &[0, 0, 1, 0], 2), Err(CliffordError::BranchMismatch(2)));
    }

    #[test]
    fn scaling_checks() {
        let (p, c, link) = pair();
        // |Ω| = 1 row: parent element of φ2,1 equals the child element of φ1,2
        let px = sx(1, vec![SchurFactorX::phi1(vec![0, 0, 1, -1]), SchurFactorX::phi1(vec![0, 0, -1, 1])], 4);
        let cx = sx(1, vec![SchurFactorX::phi1(vec![1, -1]), SchurFactorX::phi1(vec![-1, 1])], 2);
        let cv = normalize_x_to_v(&c, l(1, 2, 0), &cx).unwrap();
        assert!(validate_schur_scaling(&link, &p, &c, l(2, 1, 0), &px, Some(&cv)).is_empty());
        assert!(validate_schur_scaling(&link, &p, &c, l(2, 1, 0), &px, None).is_empty());
        // corrupted child coefficient
        let mut bad = cv.clone();
        bad.xi = CycInt::from_int(1, 3);
        assert!(!validate_schur_scaling(&link, &p, &c, l(2, 1, 0), &px, Some(&bad)).is_empty());
        // |Ω| = 2: the parent element is twice the child one
        let px2 = sx(2, vec![SchurFactorX::phi1(vec![0, 0, 1, -1]), SchurFactorX::phi1(vec![0, 0, -1, 1])], 4);
        let cv2 = normalize_x_to_v(&c, l(1, 0, 0), &cx).unwrap();
        assert!(validate_schur_scaling(&link, &p, &c, l(1, 1, 0), &px2, Some(&cv2)).is_empty());
        let odd = sx(3, vec![], 4);
        assert!(!validate_schur_scaling(&link, &p, &c, l(1, 1, 0), &odd, None).is_empty());
    }
}
