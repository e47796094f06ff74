//! Exponent lattices: primitive vectors, morphisms associated with a monomial,
//! adapted composites and the decomposition of cyclotomic specializations.
//!
//! A morphism `Z^n -> Z^r` is stored as an `r x n` integer matrix acting on
//! column vectors, so a monomial with exponent vector `x` maps to `matrix * x`.

use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;

pub type IntVector = Vec<i64>;
pub type Matrix = Vec<Vec<i64>>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("vector is zero")]
    Zero,
    #[error("vector is not primitive (content {0})")]
    NotPrimitive(u64),
    #[error("shape mismatch: {0}")]
    Shape(&'static str),
    #[error("matrix is not surjective onto Z^{0}")]
    NotSurjective(usize),
    #[error("the morphism does not annihilate the given vector")]
    NotInKernel,
    #[error("integer overflow")]
    Overflow,
    #[error("the given vectors do not split the lattice")]
    BadSplitting,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MorphismKind {
    Associated,
    Adapted,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeMorphism {
    matrix: Matrix,
    kind: MorphismKind,
    kernel: Option<IntVector>,
}

impl LatticeMorphism {
    /// Wraps a matrix after checking surjectivity.
    pub fn adapted(matrix: Matrix) -> Result<Self, LatticeError> {
        check_rect(&matrix)?;
        if !is_surjective(&matrix) {
            return Err(LatticeError::NotSurjective(matrix.len()));
        }
        Ok(LatticeMorphism { matrix, kind: MorphismKind::Adapted, kernel: None })
    }

    pub fn identity(n: usize) -> Self {
        let matrix = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        LatticeMorphism { matrix, kind: MorphismKind::Adapted, kernel: None }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn kind(&self) -> MorphismKind {
        self.kind
    }

    pub fn kernel_generator(&self) -> Option<&IntVector> {
        self.kernel.as_ref()
    }

    pub fn rows(&self) -> usize {
        self.matrix.len()
    }

    pub fn cols(&self) -> usize {
        self.matrix.first().map_or(0, Vec::len)
    }

    /// Image of an exponent vector.
    pub fn apply(&self, v: &[i64]) -> Result<IntVector, LatticeError> {
        if v.len() != self.cols() {
            return Err(LatticeError::Shape("vector length differs from column count"));
        }
        self.matrix.iter().map(|row| dot(row, v)).collect()
    }

    /// Checks the contract: surjective, and for associated morphisms the kernel.
    pub fn validate(&self) -> Result<(), LatticeError> {
        check_rect(&self.matrix)?;
        if !is_surjective(&self.matrix) {
            return Err(LatticeError::NotSurjective(self.rows()));
        }
        if let Some(k) = &self.kernel {
            if primitive_part(k).1 != 1 {
                return Err(LatticeError::NotPrimitive(primitive_part(k).1));
            }
            if self.apply(k)?.iter().any(|&x| x != 0) || self.rows() + 1 != self.cols() {
                return Err(LatticeError::NotInKernel);
            }
        }
        Ok(())
    }
}

fn check_rect(m: &Matrix) -> Result<(), LatticeError> {
    let c = m.first().map_or(0, Vec::len);
    if m.iter().any(|r| r.len() != c) {
        return Err(LatticeError::Shape("ragged matrix"));
    }
    Ok(())
}

fn narrow(x: i128) -> Result<i64, LatticeError> {
    i64::try_from(x).map_err(|_| LatticeError::Overflow)
}

pub fn dot(a: &[i64], b: &[i64]) -> Result<i64, LatticeError> {
    let s: i128 = a.iter().zip(b).map(|(&x, &y)| x as i128 * y as i128).sum();
    narrow(s)
}

/// `(v / content, content)`; the zero vector has content 0 and is returned as is.
pub fn primitive_part(v: &[i64]) -> (IntVector, u64) {
    let g = v.iter().fold(0u64, |g, &x| g.gcd(&x.unsigned_abs()));
    if g == 0 {
        return (v.to_vec(), 0);
    }
    (v.iter().map(|&x| x / g as i64).collect(), g)
}

/// `(g, s, t)` with `s*a + t*b = g >= 0`.
fn egcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        // truncating quotient, as in the textbook fold
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// Cofactors `u` with `<u, v> = 1`, by an extended-gcd fold in index order.
pub fn bezout_cofactors(v: &[i64]) -> Result<IntVector, LatticeError> {
    let (_, c) = primitive_part(v);
    match c {
        0 => return Err(LatticeError::Zero),
        1 => {}
        c => return Err(LatticeError::NotPrimitive(c)),
    }
    let mut g = 0i128;
    let mut u = vec![0i128; v.len()];
    for (i, &x) in v.iter().enumerate() {
        let (g2, s, t) = egcd(g, x as i128);
        for ui in u.iter_mut().take(i) {
            *ui *= s;
        }
        u[i] = t;
        g = g2;
    }
    debug_assert_eq!(g, 1);
    u.into_iter().map(narrow).collect()
}

/// A morphism associated with the primitive vector `m`: surjective onto
/// `Z^{n-1}` with kernel `Z m`. Also returns a section `B` (`n x (n-1)`,
/// `F B = I`) spanning the complement `ker u` of the Bezout cofactors.
///
/// The rows of `F` are a reduced basis of `m^⊥`; with `u` reduced against them,
/// `[u; F]` is unimodular and `B` is the tail of its inverse.
pub fn associated_with_section(m: &[i64]) -> Result<(LatticeMorphism, Matrix), LatticeError> {
    let n = m.len();
    let u = bezout_cofactors(m)?;
    let f = kernel_basis(&vec![m.to_vec()])?;
    let mut u: Vec<i128> = u.iter().map(|&x| x as i128).collect();
    let rows: Vec<Vec<i128>> = f.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    while let Some((q, k)) = rows.iter().find_map(|k| shrink_step(&u, k).map(|q| (q, k))) {
        for (a, b) in u.iter_mut().zip(k) {
            *a -= q * b;
        }
    }
    let mut full = vec![u.into_iter().map(narrow).collect::<Result<Vec<_>, _>>()?];
    full.extend(f.iter().cloned());
    let inv = invert_unimodular(&full)?;
    let b = inv.iter().map(|row| row[1..n].to_vec()).collect();
    let phi = LatticeMorphism { matrix: f, kind: MorphismKind::Associated, kernel: Some(m.to_vec()) };
    Ok((phi, b))
}

fn norm2(v: &[i128]) -> i128 {
    v.iter().map(|x| x * x).sum()
}

/// The multiple `q != 0` of `k` whose subtraction strictly shortens `v`, if any.
fn shrink_step(v: &[i128], k: &[i128]) -> Option<i128> {
    let kk = norm2(k);
    if kk == 0 {
        return None;
    }
    let d: i128 = v.iter().zip(k).map(|(a, b)| a * b).sum();
    // nearest integer to d / kk
    let q = (2 * d + kk).div_euclid(2 * kk);
    if q == 0 {
        return None;
    }
    let shorter: Vec<i128> = v.iter().zip(k).map(|(a, b)| a - q * b).collect();
    (norm2(&shorter) < norm2(v)).then_some(q)
}

/// Pairwise size reduction: subtracts multiples of one vector from another while
/// that shortens it. Each step lowers a positive integer norm, so it terminates,
/// and the lattice spanned is unchanged.
fn reduce_basis(mut vs: Vec<Vec<i128>>) -> Vec<Vec<i128>> {
    loop {
        let mut changed = false;
        for i in 0..vs.len() {
            for j in 0..vs.len() {
                if i == j {
                    continue;
                }
                if let Some(q) = shrink_step(&vs[i], &vs[j]) {
                    let bj = vs[j].clone();
                    for (a, b) in vs[i].iter_mut().zip(bj) {
                        *a -= q * b;
                    }
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    vs.sort_by_key(|v| norm2(v));
    vs
}

pub fn associated_morphism(m: &[i64]) -> Result<LatticeMorphism, LatticeError> {
    associated_with_section(m).map(|(phi, _)| phi)
}

/// The morphism attached to an explicit splitting `Z^n = Z m ⊕ N`: `u` has
/// `<u, m> = 1` and `kernel_basis` spans `N = ker u`. A vector `y` maps to the
/// coordinates of `y - <u, y> m` in that basis.
pub fn associated_with_splitting(
    m: &[i64],
    u: &[i64],
    kernel_basis: &[IntVector],
) -> Result<LatticeMorphism, LatticeError> {
    let n = m.len();
    if u.len() != n || kernel_basis.len() + 1 != n || kernel_basis.iter().any(|k| k.len() != n) {
        return Err(LatticeError::Shape("splitting data has the wrong shape"));
    }
    if dot(u, m)? != 1 || kernel_basis.iter().any(|k| dot(u, k) != Ok(0)) {
        return Err(LatticeError::BadSplitting);
    }
    // columns (m, k_1, …) must form a unimodular matrix; invert it
    let mut cols = vec![m.to_vec()];
    cols.extend(kernel_basis.iter().cloned());
    let basis: Matrix = (0..n).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
    let inv = invert_unimodular(&basis)?;
    let mut f = Vec::with_capacity(n - 1);
    for row in inv.iter().skip(1) {
        f.push(row.clone());
    }
    let phi = LatticeMorphism { matrix: f, kind: MorphismKind::Associated, kernel: Some(m.to_vec()) };
    phi.validate()?;
    Ok(phi)
}

fn invert_unimodular(a: &Matrix) -> Result<Matrix, LatticeError> {
    let n = a.len();
    let mut m: Vec<Vec<i128>> = a.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut inv: Vec<Vec<i128>> = (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect()).collect();
    for col in 0..n {
        // Euclid on rows col.. to bring gcd to the diagonal
        loop {
            let Some(p) = (col..n).filter(|&r| m[r][col] != 0).min_by_key(|&r| m[r][col].unsigned_abs()) else {
                return Err(LatticeError::BadSplitting);
            };
            m.swap(col, p);
            inv.swap(col, p);
            let mut clean = true;
            for r in col + 1..n {
                if m[r][col] != 0 {
                    let q = m[r][col].div_euclid(m[col][col]);
                    for c in 0..n {
                        m[r][c] -= q * m[col][c];
                        inv[r][c] -= q * inv[col][c];
                    }
                    clean &= m[r][col] == 0;
                }
            }
            if clean {
                break;
            }
        }
        if m[col][col].abs() != 1 {
            return Err(LatticeError::BadSplitting);
        }
    }
    for col in (0..n).rev() {
        let s = m[col][col];
        for c in 0..n {
            m[col][c] *= s;
            inv[col][c] *= s;
        }
        for r in 0..col {
            let q = m[r][col];
            if q != 0 {
                for c in 0..n {
                    m[r][c] -= q * m[col][c];
                    inv[r][c] -= q * inv[col][c];
                }
            }
        }
    }
    inv.into_iter().map(|r| r.into_iter().map(narrow).collect()).collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Result<Matrix, LatticeError> {
    let inner = a.first().map_or(0, Vec::len);
    if inner != b.len() {
        return Err(LatticeError::Shape("inner dimensions differ"));
    }
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols).map(|j| narrow(row.iter().zip(b).map(|(&x, brow)| x as i128 * brow[j] as i128).sum())).collect()
        })
        .collect()
}

/// `φ2 ∘ φ1`, validated as an adapted morphism.
pub fn compose(phi2: &LatticeMorphism, phi1: &LatticeMorphism) -> Result<LatticeMorphism, LatticeError> {
    if phi2.cols() != phi1.rows() {
        return Err(LatticeError::Shape("column count of the outer map differs from row count of the inner"));
    }
    LatticeMorphism::adapted(mat_mul(&phi2.matrix, &phi1.matrix)?)
}

/// Smith diagonal of an integer matrix (nonzero invariant factors).
pub(crate) fn smith_diagonal(a: &Matrix) -> Vec<i128> {
    let mut m: Vec<Vec<i128>> = a.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pr, pc)) = (t..rows)
            .flat_map(|r| (t..cols).map(move |c| (r, c)))
            .filter(|&(r, c)| m[r][c] != 0)
            .min_by_key(|&(r, c)| m[r][c].unsigned_abs())
        else {
            break;
        };
        m.swap(t, pr);
        for row in m.iter_mut() {
            row.swap(t, pc);
        }
        let mut clean = true;
        for r in t + 1..rows {
            let q = m[r][t].div_euclid(m[t][t]);
            if q != 0 {
                let pivot = m[t].clone();
                for (x, pv) in m[r].iter_mut().zip(&pivot).skip(t) {
                    *x -= q * pv;
                }
            }
            clean &= m[r][t] == 0;
        }
        for c in t + 1..cols {
            let q = m[t][c].div_euclid(m[t][t]);
            if q != 0 {
                for row in m.iter_mut().skip(t) {
                    row[c] -= q * row[t];
                }
            }
            clean &= m[t][c] == 0;
        }
        if !clean {
            continue;
        }
        // pivot must divide the remaining block
        let p = m[t][t];
        if let Some(r) = (t + 1..rows).find(|&r| (t + 1..cols).any(|c| m[r][c] % p != 0)) {
            let below = m[r].clone();
            for (x, b) in m[t].iter_mut().zip(&below).skip(t) {
                *x += b;
            }
            continue;
        }
        diag.push(p.abs());
        t += 1;
    }
    diag
}

pub(crate) fn is_surjective(a: &Matrix) -> bool {
    let d = smith_diagonal(a);
    d.len() == a.len() && d.iter().all(|&x| x == 1)
}

/// A basis of the integer kernel of `a` (as column vectors).
pub fn kernel_basis(a: &Matrix) -> Result<Vec<IntVector>, LatticeError> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<i128>> = a.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut u: Vec<Vec<i128>> = (0..cols).map(|i| (0..cols).map(|j| i128::from(i == j)).collect()).collect();
    let mut lead = 0;
    for r in 0..rows {
        if lead == cols {
            break;
        }
        while let Some(p) = (lead..cols).filter(|&c| m[r][c] != 0).min_by_key(|&c| m[r][c].unsigned_abs()) {
            for row in m.iter_mut() {
                row.swap(lead, p);
            }
            for row in u.iter_mut() {
                row.swap(lead, p);
            }
            let mut clean = true;
            for c in lead + 1..cols {
                if m[r][c] != 0 {
                    let q = m[r][c].div_euclid(m[r][lead]);
                    for row in m.iter_mut() {
                        row[c] -= q * row[lead];
                    }
                    for row in u.iter_mut() {
                        row[c] -= q * row[lead];
                    }
                    clean &= m[r][c] == 0;
                }
            }
            if clean {
                lead += 1;
                break;
            }
        }
    }
    let basis: Vec<Vec<i128>> = (lead..cols).map(|c| u.iter().map(|row| row[c]).collect()).collect();
    reduce_basis(basis).into_iter().map(|v| v.into_iter().map(narrow).collect()).collect()
}

/// Rewrites an adapted `φ` with `φ m = 0` as a chain of associated morphisms whose
/// first step is associated with the primitive part of `m`.
///
/// The chain is returned in application order: `chain[0]` acts first, and the
/// product `chain[k-1] * … * chain[0]` equals `φ`.
pub fn refactor_adapted(phi: &LatticeMorphism, m: &[i64]) -> Result<Vec<LatticeMorphism>, LatticeError> {
    if m.len() != phi.cols() {
        return Err(LatticeError::Shape("vector length differs from column count"));
    }
    let (m0, c) = primitive_part(m);
    if c == 0 {
        return Err(LatticeError::Zero);
    }
    if phi.apply(&m0)?.iter().any(|&x| x != 0) {
        return Err(LatticeError::NotInKernel);
    }
    if !is_surjective(&phi.matrix) {
        return Err(LatticeError::NotSurjective(phi.rows()));
    }
    let (f1, section) = associated_with_section(&m0)?;
    let rest = mat_mul(&phi.matrix, &section)?;
    if phi.rows() + 1 == phi.cols() {
        // rest is square unimodular; fold it into the single associated step
        let matrix = mat_mul(&rest, &f1.matrix)?;
        return Ok(vec![LatticeMorphism { matrix, kind: MorphismKind::Associated, kernel: Some(m0) }]);
    }
    let rest = LatticeMorphism { matrix: rest, kind: MorphismKind::Adapted, kernel: None };
    let next = kernel_basis(&rest.matrix)?.into_iter().next().ok_or(LatticeError::Shape("no kernel left to factor"))?;
    let mut chain = vec![f1];
    chain.extend(refactor_adapted(&rest, &primitive_part(&next).0)?);
    Ok(chain)
}

/// `n = alpha * reduced` with `alpha` the content and `reduced` primitive.
pub fn decompose_specialization(n: &[i64]) -> Result<(u64, IntVector), LatticeError> {
    match primitive_part(n) {
        (_, 0) => Err(LatticeError::Zero),
        (v, a) => Ok((a, v)),
    }
}
