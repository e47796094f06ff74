//! Per-group data: parameter orbits, character labels, hyperplanes and the
//! payloads attached to a group.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::clifford::CliffordLink;
use crate::group_blocks::CharacterTable;
use crate::lattice::{primitive_part, IntVector};
use crate::partition::Partition;
use crate::schur::SchurEntry;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DatumError {
    #[error("cannot parse character label {0:?}")]
    BadLabel(String),
    #[error("vector has length {got}, the group has {want} parameter slots")]
    Arity { got: usize, want: usize },
    #[error("zero vector is not a hyperplane normal")]
    ZeroNormal,
    #[error("normal {0:?} does not sum to zero on orbit {1}")]
    OrbitSum(IntVector, char),
    #[error("normal {0:?} is not primitive")]
    NotPrimitive(IntVector),
    #[error("unknown character {0}")]
    UnknownCharacter(String),
}

/// A class of reflecting hyperplanes with its parameters `letter_0 … letter_{e-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Orbit {
    pub letter: char,
    pub order: u32,
}

/// `φ_{d,b}` with up to three prime marks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CharLabel {
    pub degree: u32,
    pub b: u32,
    pub marks: u8,
}

impl CharLabel {
    pub fn new(degree: u32, b: u32, marks: u8) -> Self {
        CharLabel { degree, b, marks }
    }
}

impl fmt::Display for CharLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "phi{{{},{}}}", self.degree, self.b)?;
        for _ in 0..self.marks {
            f.write_str("'")?;
        }
        Ok(())
    }
}

impl FromStr for CharLabel {
    type Err = DatumError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || DatumError::BadLabel(s.into());
        let rest = s.trim().strip_prefix("phi{").ok_or_else(bad)?;
        let (inner, marks) = rest.split_once('}').ok_or_else(bad)?;
        let (d, b) = inner.split_once(',').ok_or_else(bad)?;
        if marks.len() > 3 || marks.chars().any(|c| c != '\'') {
            return Err(bad());
        }
        Ok(CharLabel {
            degree: d.trim().parse().map_err(|_| bad())?,
            b: b.trim().parse().map_err(|_| bad())?,
            marks: marks.len() as u8,
        })
    }
}

/// Primitive normal with zero sum on every orbit and first nonzero entry positive.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Hyperplane {
    normal: IntVector,
}

impl Hyperplane {
    /// Primitivizes and fixes the sign; rejects zero and bad orbit sums.
    pub fn canonical(orbits: &[Orbit], v: &[i64]) -> Result<Self, DatumError> {
        check_arity(orbits, v)?;
        let (mut p, c) = primitive_part(v);
        if c == 0 {
            return Err(DatumError::ZeroNormal);
        }
        if let Some(letter) = bad_orbit_sum(orbits, &p) {
            return Err(DatumError::OrbitSum(v.to_vec(), letter));
        }
        if p.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
            p.iter_mut().for_each(|x| *x = -*x);
        }
        Ok(Hyperplane { normal: p })
    }

    /// Strict variant: the input must already be canonical.
    pub fn strict(orbits: &[Orbit], v: &[i64]) -> Result<Self, DatumError> {
        let h = Self::canonical(orbits, v)?;
        if primitive_part(v).1 != 1 {
            return Err(DatumError::NotPrimitive(v.to_vec()));
        }
        Ok(h)
    }

    pub fn normal(&self) -> &[i64] {
        &self.normal
    }

    pub fn contains(&self, n: &[i64]) -> bool {
        Self::dot_is_zero(&self.normal, n)
    }

    pub fn dot_is_zero(m: &[i64], n: &[i64]) -> bool {
        m.iter().zip(n).map(|(&a, &b)| a as i128 * b as i128).sum::<i128>() == 0
    }
}

pub(crate) fn check_arity(orbits: &[Orbit], v: &[i64]) -> Result<(), DatumError> {
    let want = orbits.iter().map(|o| o.order as usize).sum();
    if v.len() != want {
        return Err(DatumError::Arity { got: v.len(), want });
    }
    Ok(())
}

pub(crate) fn bad_orbit_sum(orbits: &[Orbit], v: &[i64]) -> Option<char> {
    let mut at = 0;
    for o in orbits {
        let e = o.order as usize;
        if v[at..at + e].iter().sum::<i64>() != 0 {
            return Some(o.letter);
        }
        at += e;
    }
    None
}

/// Blocks attached to one essential hyperplane, or the baseline when `hyperplane` is `None`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HyperplaneTable {
    pub hyperplane: Option<Hyperplane>,
    pub blocks: Partition,
    /// Primes for which the hyperplane is essential (empty when unknown).
    pub primes: Vec<u64>,
    /// Optional blocks for individual primes.
    pub per_prime: Vec<(u64, Partition)>,
}

/// Everything known about one group.
#[derive(Debug, Clone)]
pub struct GroupDatum {
    pub name: String,
    pub field_conductor: u64,
    pub mu_order: u64,
    pub group_order: u64,
    pub orbits: Vec<Orbit>,
    pub characters: Vec<CharLabel>,
    /// Aligned with `characters`; empty when no Schur data is stored.
    pub schur: Vec<Option<SchurEntry>>,
    pub character_table: Option<CharacterTable>,
    /// Baseline first (if stored), then hyperplane tables in stored order.
    pub tables: Vec<HyperplaneTable>,
    /// Tables known to be incomplete or partly reconstructed.
    pub partial: bool,
    /// Links in which this group is the parent.
    pub links: Vec<CliffordLink>,
}

impl GroupDatum {
    pub fn new(
        name: &str,
        field_conductor: u64,
        mu_order: u64,
        group_order: u64,
        orbits: Vec<Orbit>,
        characters: Vec<CharLabel>,
    ) -> Self {
        GroupDatum {
            name: name.into(),
            field_conductor,
            mu_order,
            group_order,
            orbits,
            characters,
            schur: Vec::new(),
            character_table: None,
            tables: Vec::new(),
            partial: false,
            links: Vec::new(),
        }
    }

    pub fn slot_count(&self) -> usize {
        self.orbits.iter().map(|o| o.order as usize).sum()
    }

    /// `(orbit index, j)` of every slot, in slot order.
    pub fn slots(&self) -> Vec<(usize, u32)> {
        let mut out = Vec::new();
        for (c, o) in self.orbits.iter().enumerate() {
            for j in 0..o.order {
                out.push((c, j));
            }
        }
        out
    }

    pub fn slot_name(&self, s: usize) -> String {
        let (c, j) = self.slots()[s];
        format!("{}_{}", self.orbits[c].letter, j)
    }

    pub fn char_index(&self, label: &CharLabel) -> Option<usize> {
        self.characters.iter().position(|c| c == label)
    }

    pub fn find_char(&self, name: &str) -> Result<usize, DatumError> {
        let label: CharLabel = name.parse()?;
        self.char_index(&label).ok_or_else(|| DatumError::UnknownCharacter(name.into()))
    }

    pub fn hyperplane(&self, v: &[i64]) -> Result<Hyperplane, DatumError> {
        Hyperplane::canonical(&self.orbits, v)
    }

    pub fn baseline(&self) -> Option<&HyperplaneTable> {
        self.tables.iter().find(|t| t.hyperplane.is_none())
    }

    pub fn hyperplane_tables(&self) -> impl Iterator<Item = &HyperplaneTable> {
        self.tables.iter().filter(|t| t.hyperplane.is_some())
    }

    /// True when every character carries a Schur element.
    pub fn has_full_schur(&self) -> bool {
        !self.characters.is_empty()
            && self.schur.len() == self.characters.len()
            && self.schur.iter().all(Option::is_some)
    }

    /// Renders a normal as `a_0-a_1+2c_0-c_1-c_2=0`.
    pub fn render_hyperplane(&self, h: &Hyperplane) -> String {
        let mut out = String::new();
        for (s, &c) in h.normal().iter().enumerate() {
            if c == 0 {
                continue;
            }
            if c < 0 {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            if c.abs() != 1 {
                out.push_str(&format!("{}", c.abs()));
            }
            out.push_str(&self.slot_name(s));
        }
        out.push_str("=0");
        out
    }

    /// Parts as label lists.
    pub fn render_partition_names(&self, p: &Partition) -> String {
        let mut out = String::from("[");
        for (k, part) in p.parts().iter().enumerate() {
            if k > 0 {
                out.push_str(", ");
            }
            out.push('[');
            for (j, &i) in part.iter().enumerate() {
                if j > 0 {
                    out.push_str(", ");
                }
                out.push_str(&format!("{}", self.characters[i]));
            }
            out.push(']');
        }
        out.push(']');
        out
    }
}
