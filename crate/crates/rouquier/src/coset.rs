//! Todd–Coxeter coset enumeration, used to certify group orders from a
//! presentation.
//!
//! Words are written with letters `±(i + 1)` for generator `i` and its inverse.

use alloc::vec;
use alloc::vec::Vec;

const NONE: usize = usize::MAX;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CosetError {
    #[error("letter {0} names no generator")]
    BadLetter(i32),
    #[error("more than {0} cosets defined")]
    TooManyCosets(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub generators: usize,
    pub relators: Vec<Vec<i32>>,
}

impl Presentation {
    /// `G4 = <s, t | sts = tst, s^3 = t^3 = 1>`.
    pub fn g4() -> Self {
        Presentation { generators: 2, relators: vec![vec![1, 1, 1], vec![2, 2, 2], vec![1, 2, 1, -2, -1, -2]] }
    }

    /// `G7 = <s, t, u | s^2 = t^3 = u^3 = 1, stu = tus = ust>`.
    pub fn g7() -> Self {
        Presentation {
            generators: 3,
            relators: vec![
                vec![1, 1],
                vec![2, 2, 2],
                vec![3, 3, 3],
                vec![1, 2, 3, -1, -3, -2],
                vec![2, 3, 1, -2, -1, -3],
            ],
        }
    }
}

struct Table {
    rows: Vec<Vec<usize>>,
    parent: Vec<usize>,
    limit: usize,
}

impl Table {
    fn define(&mut self, c: usize, x: usize) -> Result<(), CosetError> {
        if self.rows.len() >= self.limit {
            return Err(CosetError::TooManyCosets(self.limit));
        }
        let n = self.rows.len();
        self.rows.push(vec![NONE; self.rows[0].len()]);
        self.parent.push(n);
        self.rows[c][x] = n;
        self.rows[n][x ^ 1] = c;
        Ok(())
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut r = c;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut c = c;
        while self.parent[c] != r {
            let next = self.parent[c];
            self.parent[c] = r;
            c = next;
        }
        r
    }

    fn merge(&mut self, k: usize, l: usize, queue: &mut Vec<usize>) {
        let (k, l) = (self.rep(k), self.rep(l));
        if k != l {
            let (lo, hi) = if k < l { (k, l) } else { (l, k) };
            self.parent[hi] = lo;
            queue.push(hi);
        }
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        let mut queue = Vec::new();
        self.merge(a, b, &mut queue);
        let mut i = 0;
        while i < queue.len() {
            let e = queue[i];
            i += 1;
            for x in 0..self.rows[e].len() {
                let f = self.rows[e][x];
                if f == NONE {
                    continue;
                }
                self.rows[f][x ^ 1] = NONE;
                let (e1, f1) = (self.rep(e), self.rep(f));
                if self.rows[e1][x] != NONE {
                    let t = self.rows[e1][x];
                    self.merge(f1, t, &mut queue);
                } else if self.rows[f1][x ^ 1] != NONE {
                    let t = self.rows[f1][x ^ 1];
                    self.merge(e1, t, &mut queue);
                } else {
                    self.rows[e1][x] = f1;
                    self.rows[f1][x ^ 1] = e1;
                }
            }
        }
    }

    fn scan_and_fill(&mut self, a: usize, w: &[usize]) -> Result<(), CosetError> {
        let (mut f, mut b) = (a, a);
        let (mut i, mut j) = (0isize, w.len() as isize - 1);
        loop {
            while i <= j && self.rows[f][w[i as usize]] != NONE {
                f = self.rows[f][w[i as usize]];
                i += 1;
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i && self.rows[b][w[j as usize] ^ 1] != NONE {
                b = self.rows[b][w[j as usize] ^ 1];
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return Ok(());
            }
            if i == j {
                // one gap left: a deduction
                self.rows[f][w[i as usize]] = b;
                self.rows[b][w[i as usize] ^ 1] = f;
                return Ok(());
            }
            self.define(f, w[i as usize])?;
        }
    }
}

fn columns(p: &Presentation, w: &[i32]) -> Result<Vec<usize>, CosetError> {
    w.iter()
        .map(|&l| {
            let g = l.unsigned_abs() as usize;
            if l == 0 || g > p.generators {
                return Err(CosetError::BadLetter(l));
            }
            Ok(2 * (g - 1) + usize::from(l < 0))
        })
        .collect()
}

/// Index of the subgroup generated by `subgroup` (HLT strategy).
pub fn index(p: &Presentation, subgroup: &[Vec<i32>], limit: usize) -> Result<usize, CosetError> {
    let relators = p.relators.iter().map(|r| columns(p, r)).collect::<Result<Vec<_>, _>>()?;
    let gens = subgroup.iter().map(|w| columns(p, w)).collect::<Result<Vec<_>, _>>()?;
    let mut t = Table { rows: vec![vec![NONE; 2 * p.generators]], parent: vec![0], limit };
    for w in &gens {
        t.scan_and_fill(0, w)?;
    }
    let mut a = 0;
    while a < t.rows.len() {
        for r in &relators {
            if t.parent[a] != a {
                break;
            }
            t.scan_and_fill(a, r)?;
        }
        if t.parent[a] == a {
            for x in 0..2 * p.generators {
                if t.rows[a][x] == NONE {
                    t.define(a, x)?;
                }
            }
        }
        a += 1;
    }
    Ok((0..t.rows.len()).filter(|&c| t.parent[c] == c).count())
}

/// Order of the group, as the index of the trivial subgroup.
pub fn order(p: &Presentation, limit: usize) -> Result<usize, CosetError> {
    index(p, &[], limit)
}
