//! Set partitions of a character index set `0..n`.
//!
//! Indices are 0-based here; anything user facing adds 1.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PartitionError {
    #[error("index {index} is out of range for {n} characters")]
    OutOfRange { index: usize, n: usize },
    #[error("index {index} lies in two parts: {first:?} and {second:?}")]
    Overlap { index: usize, first: Vec<usize>, second: Vec<usize> },
    #[error("empty part")]
    EmptyPart,
    #[error("index {0} is not covered")]
    Uncovered(usize),
    #[error("partitions live on different index sets ({0} vs {1})")]
    Mismatch(usize, usize),
}

/// Canonical form: parts sorted internally and ordered by their least element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    n: usize,
    parts: Vec<Vec<usize>>,
}

impl Partition {
    /// Checks the given parts and fills the rest with singletons.
    pub fn with_singletons(n: usize, parts: Vec<Vec<usize>>) -> Result<Self, PartitionError> {
        let mut owner: Vec<Option<usize>> = vec![None; n];
        for (pi, part) in parts.iter().enumerate() {
            if part.is_empty() {
                return Err(PartitionError::EmptyPart);
            }
            for &i in part {
                if i >= n {
                    return Err(PartitionError::OutOfRange { index: i, n });
                }
                if let Some(prev) = owner[i] {
                    let mut first = parts[prev].clone();
                    let mut second = part.clone();
                    first.sort_unstable();
                    second.sort_unstable();
                    return Err(PartitionError::Overlap { index: i, first, second });
                }
                owner[i] = Some(pi);
            }
        }
        let mut all = parts;
        for (i, o) in owner.iter().enumerate() {
            if o.is_none() {
                all.push(vec![i]);
            }
        }
        Ok(Self::canonical(n, all))
    }

    /// Exact partition: the parts must cover `0..n` without overlap.
    pub fn exact(n: usize, parts: Vec<Vec<usize>>) -> Result<Self, PartitionError> {
        let mut seen = vec![false; n];
        for &i in parts.iter().flatten() {
            if i < n {
                seen[i] = true;
            }
        }
        let p = Self::with_singletons(n, parts)?;
        match seen.iter().position(|&s| !s) {
            Some(i) => Err(PartitionError::Uncovered(i)),
            None => Ok(p),
        }
    }

    fn canonical(n: usize, mut parts: Vec<Vec<usize>>) -> Self {
        for p in parts.iter_mut() {
            p.sort_unstable();
            p.dedup();
        }
        parts.retain(|p| !p.is_empty());
        parts.sort_by_key(|p| p[0]);
        Partition { n, parts }
    }

    pub fn singletons(n: usize) -> Self {
        Partition { n, parts: (0..n).map(|i| vec![i]).collect() }
    }

    pub fn single_block(n: usize) -> Self {
        if n == 0 {
            return Partition { n, parts: Vec::new() };
        }
        Partition { n, parts: vec![(0..n).collect()] }
    }

    /// Groups indices by equal keys.
    pub fn from_labels<K: PartialEq>(keys: &[K]) -> Self {
        let mut parts: Vec<Vec<usize>> = Vec::new();
        let mut reps: Vec<usize> = Vec::new();
        for (i, k) in keys.iter().enumerate() {
            match reps.iter().position(|&r| keys[r] == *k) {
                Some(pi) => parts[pi].push(i),
                None => {
                    reps.push(i);
                    parts.push(vec![i]);
                }
            }
        }
        Self::canonical(keys.len(), parts)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    /// Parts with more than one element.
    pub fn nontrivial(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.parts.iter().filter(|p| p.len() > 1)
    }

    /// Part number of every index.
    pub fn labels(&self) -> Vec<usize> {
        let mut out = vec![0; self.n];
        for (pi, p) in self.parts.iter().enumerate() {
            for &i in p {
                out[i] = pi;
            }
        }
        out
    }

    pub fn same_part(&self, i: usize, j: usize) -> bool {
        let l = self.labels();
        l[i] == l[j]
    }

    pub fn part_of(&self, i: usize) -> &[usize] {
        self.parts.iter().find(|p| p.contains(&i)).map(Vec::as_slice).unwrap_or(&[])
    }

    /// True when every part of `self` sits inside a part of `other`.
    pub fn refines(&self, other: &Partition) -> bool {
        if self.n != other.n {
            return false;
        }
        let l = other.labels();
        self.parts.iter().all(|p| p.iter().all(|&i| l[i] == l[p[0]]))
    }

    /// Common refinement.
    pub fn meet(&self, other: &Partition) -> Result<Partition, PartitionError> {
        if self.n != other.n {
            return Err(PartitionError::Mismatch(self.n, other.n));
        }
        let a = self.labels();
        let b = other.labels();
        let keys: Vec<(usize, usize)> = a.into_iter().zip(b).collect();
        Ok(Self::from_labels(&keys))
    }

    /// Finest common coarsening of any number of partitions.
    pub fn join_all<'a, I>(n: usize, ps: I) -> Result<Partition, PartitionError>
    where
        I: IntoIterator<Item = &'a Partition>,
    {
        let mut uf = UnionFind::new(n);
        for p in ps {
            if p.n != n {
                return Err(PartitionError::Mismatch(n, p.n));
            }
            for part in &p.parts {
                for &i in &part[1..] {
                    uf.union(part[0], i);
                }
            }
        }
        Ok(uf.into_partition())
    }

    pub fn join(&self, other: &Partition) -> Result<Partition, PartitionError> {
        Self::join_all(self.n, [self, other])
    }
}

impl fmt::Display for Partition {
    /// 1-based index lists, e.g. `[[1],[2,5,7],[3]]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, p) in self.parts.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            f.write_str("[")?;
            for (j, i) in p.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", i + 1)?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

/// Disjoint-set forest with path halving.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // keep the smaller root for stable output
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }

    pub fn into_partition(mut self) -> Partition {
        let n = self.parent.len();
        let roots: Vec<usize> = (0..n).map(|i| self.find(i)).collect();
        Partition::from_labels(&roots)
    }
}
