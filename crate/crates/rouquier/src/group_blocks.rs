//! p-blocks of a finite group from its character table.
//!
//! Two characters lie in the same block at a prime `𝔭` iff their central characters
//! `ω_χ(C) = |C| χ(g_C) / χ(1)` agree modulo `𝔭` on every class. One handle per
//! rational prime is used and the result is closed under Galois conjugation.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::cyclo::{gcd, in_prime_ideal, prime_handle, CycInt};
use crate::partition::{Partition, PartitionError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TableError {
    #[error("{0}")]
    Corrupt(String),
    #[error(transparent)]
    Partition(#[from] PartitionError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterTable {
    pub class_sizes: Vec<u64>,
    pub class_orders: Option<Vec<u64>>,
    /// Rows follow the group's character order, columns the classes.
    pub values: Vec<Vec<CycInt>>,
    pub conductor: u64,
}

impl CharacterTable {
    pub fn new(class_sizes: Vec<u64>, values: Vec<Vec<CycInt>>, conductor: u64) -> Result<Self, TableError> {
        let t = CharacterTable { class_sizes, class_orders: None, values, conductor };
        t.shape()?;
        Ok(t)
    }

    fn shape(&self) -> Result<(), TableError> {
        let k = self.class_sizes.len();
        if self.values.iter().any(|r| r.len() != k) {
            return Err(TableError::Corrupt("ragged character table".into()));
        }
        if self.values.iter().flatten().any(|v| !self.conductor.is_multiple_of(v.conductor())) {
            return Err(TableError::Corrupt(format!("value outside Q(ζ_{})", self.conductor)));
        }
        Ok(())
    }

    pub fn degree(&self, i: usize) -> Option<i64> {
        self.values[i][0].as_integer()
    }

    /// Structural checks against the group order and the character degrees.
    pub fn validate(&self, group_order: u64, degrees: &[u32]) -> Vec<String> {
        let mut out = Vec::new();
        if let Err(e) = self.shape() {
            out.push(format!("{e}"));
            return out;
        }
        if self.values.len() != degrees.len() {
            out.push(format!("{} rows for {} characters", self.values.len(), degrees.len()));
            return out;
        }
        if self.values.len() != self.class_sizes.len() {
            out.push("table is not square".into());
        }
        if self.class_sizes.iter().sum::<u64>() != group_order {
            out.push(format!("class sizes sum to {}, expected {group_order}", self.class_sizes.iter().sum::<u64>()));
        }
        let one = CycInt::one(1);
        if !self.values.iter().any(|r| r.iter().all(|v| *v == one)) {
            out.push("no trivial row".into());
        }
        for (i, &d) in degrees.iter().enumerate() {
            if self.degree(i) != Some(d as i64) {
                out.push(format!("row {} has degree {:?}, expected {d}", i + 1, self.degree(i)));
            }
        }
        // orthogonality: Σ |C| χ_i(g) conj(χ_j(g)) = |G| δ_ij
        let n = self.conductor;
        let bar = if n <= 2 { 1 } else { n - 1 };
        for i in 0..self.values.len() {
            for j in i..self.values.len() {
                let mut acc = CycInt::zero(n);
                for (c, &size) in self.class_sizes.iter().enumerate() {
                    let conj = self.values[j][c].lift(n).galois(bar);
                    let term = &self.values[i][c] * &conj;
                    acc = &acc + &(&CycInt::from_int(n, size as i64) * &term);
                }
                let want = if i == j { group_order as i64 } else { 0 };
                if acc != CycInt::from_int(1, want) {
                    out.push(format!("rows {} and {} fail orthogonality", i + 1, j + 1));
                }
            }
        }
        out
    }

    /// `|C| χ(g) / χ(1)`, checked to be an algebraic integer.
    pub fn central_character(&self, chi: usize, class: usize) -> Result<CycInt, TableError> {
        let d = self
            .degree(chi)
            .filter(|&d| d > 0)
            .ok_or_else(|| TableError::Corrupt(format!("row {} has no positive degree", chi + 1)))?;
        let v = &CycInt::from_int(1, self.class_sizes[class] as i64) * &self.values[chi][class];
        if v.coeffs().iter().any(|c| c % d != 0) {
            return Err(TableError::Corrupt(format!(
                "central character of row {} is not integral at class {}",
                chi + 1,
                class + 1
            )));
        }
        let q: Vec<i64> = v.coeffs().iter().map(|c| c / d).collect();
        Ok(CycInt::from_coeffs(v.conductor(), q).expect("same length"))
    }

    /// Row permutation induced by `ζ ↦ ζ^t`.
    pub fn galois_permutation(&self, t: u64) -> Result<Vec<usize>, TableError> {
        let n = self.conductor;
        let rows: Vec<Vec<CycInt>> =
            self.values.iter().map(|r| r.iter().map(|v| v.lift(n).galois(t)).collect()).collect();
        rows.iter()
            .enumerate()
            .map(|(i, r)| {
                self.values
                    .iter()
                    .position(|s| s == r)
                    .ok_or_else(|| TableError::Corrupt(format!("Galois image of row {} is not a row", i + 1)))
            })
            .collect()
    }
}

/// Join of `σ(π)` over all `σ ∈ Gal(Q(ζ_N)/Q)`.
pub fn galois_close(t: &CharacterTable, pi: &Partition) -> Result<Partition, TableError> {
    let n = t.conductor;
    let mut images = Vec::new();
    for s in (1..=n).filter(|&s| gcd(s, n) == 1) {
        let perm = t.galois_permutation(s)?;
        let parts = pi.parts().iter().map(|p| p.iter().map(|&i| perm[i]).collect()).collect();
        images.push(Partition::exact(pi.len(), parts)?);
    }
    images.push(pi.clone());
    Ok(Partition::join_all(pi.len(), images.iter())?)
}

/// p-blocks of the group.
pub fn p_blocks(t: &CharacterTable, p: u64) -> Result<Partition, TableError> {
    let h = prime_handle(p, t.conductor);
    let k = t.values.len();
    let omegas: Vec<Vec<CycInt>> = (0..k)
        .map(|i| (0..t.class_sizes.len()).map(|c| t.central_character(i, c).map(|w| w.lift(t.conductor))).collect())
        .collect::<Result<_, _>>()?;
    let mut uf = crate::partition::UnionFind::new(k);
    for i in 0..k {
        for j in i + 1..k {
            let congruent = omegas[i].iter().zip(&omegas[j]).all(|(a, b)| in_prime_ideal(&(a - b), &h));
            if congruent {
                uf.union(i, j);
            }
        }
    }
    galois_close(t, &uf.into_partition())
}
