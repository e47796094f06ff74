//! Exact arithmetic in `Z[ζ_N]`.
//!
//! Elements are kept in the power basis `1, ζ, …, ζ^{φ(N)-1}` reduced modulo the
//! monic cyclotomic polynomial `Φ_N`. Mixed conductors are lifted to their lcm.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::fp;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CycloError {
    #[error("root of unity of order 1 is not allowed here")]
    TrivialRoot,
    #[error("conductor must be positive")]
    ZeroConductor,
    #[error("exponent {k} is not a unit modulo {d}")]
    NotPrimitive { d: u64, k: i64 },
    #[error("coefficient vector has length {got}, expected {want}")]
    BadLength { got: usize, want: usize },
}

// ---------------------------------------------------------------------------
// small number theory

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

/// Prime factors of `n` with multiplicity, ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == [(n, 1)]
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n).iter().fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

fn mobius(n: u64) -> i32 {
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// If `n` is a power `p^k` with `k >= 1`, returns `p`.
pub fn prime_power_base(n: u64) -> Option<u64> {
    match factorize(n).as_slice() {
        [(p, _)] => Some(*p),
        _ => None,
    }
}

/// Multiplicative order of `a` modulo `n` (`gcd(a, n) = 1`).
pub fn mult_order(a: u64, n: u64) -> u64 {
    if n == 1 {
        return 1;
    }
    let mut x = a % n;
    let mut k = 1;
    while x != 1 {
        x = x * a % n;
        k += 1;
    }
    k
}

pub fn modulo(a: i64, n: u64) -> u64 {
    a.rem_euclid(n as i64) as u64
}

// ---------------------------------------------------------------------------
// integer polynomials (coefficients low to high)

/// The cyclotomic polynomial `Φ_n`, via `∏_{d | n} (T^d - 1)^{μ(n/d)}`.
pub fn cyclotomic_poly(n: u64) -> Vec<i64> {
    assert!(n >= 1);
    let mut num = vec![1i64];
    let mut dens = Vec::new();
    for d in divisors(n) {
        match mobius(n / d) {
            1 => num = poly_mul(&num, &binomial(d)),
            -1 => dens.push(d),
            _ => {}
        }
    }
    for d in dens {
        num = poly_div_exact(&num, &binomial(d));
    }
    // for n = 1 the product is T - 1, for n >= 2 the sign works out already
    num
}

fn binomial(d: u64) -> Vec<i64> {
    let mut v = vec![0i64; d as usize + 1];
    v[0] = -1;
    v[d as usize] = 1;
    v
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact division by a monic polynomial.
fn poly_div_exact(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let dq = r.len() - 1 - db;
    let mut q = vec![0i64; dq + 1];
    for i in (0..=dq).rev() {
        let c = r[i + db];
        q[i] = c;
        if c != 0 {
            for (j, &bj) in b.iter().enumerate() {
                r[i + j] -= c * bj;
            }
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0));
    q
}

/// Φ_n(1).
pub fn cyclotomic_value_at_one(n: u64) -> u64 {
    assert!(n >= 2, "cyclotomic_value_at_one needs n >= 2");
    prime_power_base(n).unwrap_or(1)
}

// ---------------------------------------------------------------------------
// CycInt

/// An element of `Z[ζ_N]`.
#[derive(Clone, Debug)]
pub struct CycInt {
    conductor: u64,
    coeffs: Vec<i64>,
}

impl CycInt {
    /// Builds from power-basis coefficients; the vector may be any length and is reduced.
    pub fn from_poly(conductor: u64, poly: &[i64]) -> Self {
        assert!(conductor >= 1);
        let n = conductor as usize;
        let mut wrapped = vec![0i128; n];
        for (i, &c) in poly.iter().enumerate() {
            wrapped[i % n] += c as i128;
        }
        Self::reduce_wrapped(conductor, wrapped)
    }

    /// Builds from canonical coefficients, checking the length.
    pub fn from_coeffs(conductor: u64, coeffs: Vec<i64>) -> Result<Self, CycloError> {
        if conductor == 0 {
            return Err(CycloError::ZeroConductor);
        }
        let want = euler_phi(conductor) as usize;
        if coeffs.len() != want {
            return Err(CycloError::BadLength { got: coeffs.len(), want });
        }
        Ok(CycInt { conductor, coeffs })
    }

    fn reduce_wrapped(conductor: u64, mut w: Vec<i128>) -> Self {
        let phi = cyclotomic_poly(conductor);
        let deg = phi.len() - 1;
        for i in (deg..w.len()).rev() {
            let c = w[i];
            if c != 0 {
                for (j, &pj) in phi.iter().enumerate() {
                    w[i - deg + j] -= c * pj as i128;
                }
            }
        }
        w.truncate(deg);
        let coeffs = w.into_iter().map(|c| i64::try_from(c).expect("cyclotomic coefficient overflow")).collect();
        CycInt { conductor, coeffs }
    }

    pub fn from_int(conductor: u64, r: i64) -> Self {
        Self::from_poly(conductor, &[r])
    }

    pub fn zero(conductor: u64) -> Self {
        Self::from_int(conductor, 0)
    }

    pub fn one(conductor: u64) -> Self {
        Self::from_int(conductor, 1)
    }

    /// `ζ_d^k` as an element of conductor `d`.
    pub fn root_of_unity(d: u64, k: i64) -> Self {
        let mut v = vec![0i64; d as usize];
        v[modulo(k, d) as usize] = 1;
        Self::from_poly(d, &v)
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Re-embeds into `Z[ζ_M]` for a multiple `M` of the conductor.
    pub fn lift(&self, m: u64) -> Self {
        assert!(m.is_multiple_of(self.conductor), "lift target must be a multiple of the conductor");
        if m == self.conductor {
            return self.clone();
        }
        let step = (m / self.conductor) as usize;
        let mut w = vec![0i128; m as usize];
        for (i, &c) in self.coeffs.iter().enumerate() {
            w[i * step] += c as i128;
        }
        Self::reduce_wrapped(m, w)
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        let l = lcm(a.conductor, b.conductor);
        (a.lift(l), b.lift(l))
    }

    /// Applies `ζ ↦ ζ^t` for `t` coprime to the conductor.
    pub fn galois(&self, t: u64) -> Self {
        let n = self.conductor;
        assert_eq!(gcd(t, n), 1, "galois exponent must be a unit");
        let mut w = vec![0i128; n as usize];
        for (i, &c) in self.coeffs.iter().enumerate() {
            w[((i as u64 * t) % n) as usize] += c as i128;
        }
        Self::reduce_wrapped(n, w)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.conductor);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Field norm `N_{Q(ζ_N)/Q}`, the determinant of multiplication by `self`.
    pub fn norm(&self) -> BigInt {
        let n = self.conductor;
        let deg = self.coeffs.len();
        let zeta = Self::root_of_unity(n, 1);
        let mut col = self.clone();
        let mut m: Vec<Vec<BigInt>> = vec![Vec::with_capacity(deg); deg];
        for _ in 0..deg {
            for (r, row) in m.iter_mut().enumerate() {
                row.push(BigInt::from(col.coeffs[r]));
            }
            col = &col * &zeta;
        }
        bareiss_det(m)
    }

    /// Rewrites in `Z[ζ_m]` when the value lies there.
    pub fn descend(&self, m: u64) -> Option<Self> {
        let l = lcm(self.conductor, m);
        let a = self.lift(l);
        let dm = euler_phi(m) as usize;
        let dl = a.coeffs.len();
        // columns: ζ_m^i lifted to conductor l
        let cols: Vec<Self> = (0..dm).map(|i| Self::root_of_unity(m, i as i64).lift(l)).collect();
        let mut rows: Vec<Vec<BigRational>> = (0..dl)
            .map(|r| {
                let mut row: Vec<BigRational> =
                    cols.iter().map(|c| BigRational::from_integer(BigInt::from(c.coeffs[r]))).collect();
                row.push(BigRational::from_integer(BigInt::from(a.coeffs[r])));
                row
            })
            .collect();
        let sol = solve_exact(&mut rows, dm)?;
        let mut coeffs = Vec::with_capacity(dm);
        for x in sol {
            if !x.is_integer() {
                return None;
            }
            coeffs.push(x.to_integer().to_i64()?);
        }
        Some(CycInt { conductor: m, coeffs })
    }

    /// The rational integer represented, if any.
    pub fn as_integer(&self) -> Option<i64> {
        self.descend(1).map(|c| c.coeffs[0])
    }

    /// Smallest conductor over which the value is defined.
    pub fn minimal(&self) -> Self {
        let n = self.conductor;
        for d in divisors(n) {
            if let Some(x) = self.descend(d) {
                return x;
            }
        }
        self.clone()
    }
}

impl PartialEq for CycInt {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = Self::common(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CycInt {}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str(if c < 0 { " - " } else { " + " })?;
            } else if c < 0 {
                f.write_str("-")?;
            }
            first = false;
            let a = c.unsigned_abs();
            match (i, a) {
                (0, _) => write!(f, "{a}")?,
                (_, 1) => write!(f, "z{}^{i}", self.conductor)?,
                _ => write!(f, "{a}*z{}^{i}", self.conductor)?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl<'a> Add<&'a CycInt> for &'a CycInt {
    type Output = CycInt;
    fn add(self, rhs: &CycInt) -> CycInt {
        let (a, b) = CycInt::common(self, rhs);
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
        CycInt { conductor: a.conductor, coeffs }
    }
}

impl<'a> Sub<&'a CycInt> for &'a CycInt {
    type Output = CycInt;
    fn sub(self, rhs: &CycInt) -> CycInt {
        self + &(-rhs)
    }
}

impl Neg for &CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        CycInt { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl<'a> Mul<&'a CycInt> for &'a CycInt {
    type Output = CycInt;
    fn mul(self, rhs: &CycInt) -> CycInt {
        let (a, b) = CycInt::common(self, rhs);
        let n = a.conductor as usize;
        let mut w = vec![0i128; n];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                w[(i + j) % n] += x as i128 * y as i128;
            }
        }
        CycInt::reduce_wrapped(a.conductor, w)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for CycInt {
            type Output = CycInt;
            fn $m(self, rhs: CycInt) -> CycInt {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        -&self
    }
}

fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Solves an augmented system with `unknowns` columns; `None` when inconsistent.
fn solve_exact(rows: &mut [Vec<BigRational>], unknowns: usize) -> Option<Vec<BigRational>> {
    let mut pivot_row = 0;
    let mut pivots = Vec::new();
    for col in 0..unknowns {
        let Some(r) = (pivot_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(pivot_row, r);
        let inv = rows[pivot_row][col].recip();
        for x in rows[pivot_row].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..rows.len() {
            if r != pivot_row && !rows[r][col].is_zero() {
                let f = rows[r][col].clone();
                let pivot = rows[pivot_row].clone();
                for (x, pv) in rows[r].iter_mut().zip(&pivot).take(unknowns + 1) {
                    *x = &*x - &(pv * &f);
                }
            }
        }
        pivots.push(col);
        pivot_row += 1;
    }
    if rows[pivot_row..].iter().any(|row| !row[unknowns].is_zero()) {
        return None;
    }
    let mut sol = vec![BigRational::zero(); unknowns];
    for (i, &col) in pivots.iter().enumerate() {
        sol[col] = rows[i][unknowns].clone();
    }
    Some(sol)
}

// ---------------------------------------------------------------------------
// roots of unity and K-cyclotomic polynomials

/// `ζ_d^k` with `gcd(k, d) = 1` and `0 <= k < d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RootOfUnity {
    order: u64,
    exponent: u64,
}

impl RootOfUnity {
    /// `ζ_d^k` reduced to its exact order.
    pub fn new(d: u64, k: i64) -> Self {
        assert!(d >= 1);
        let k = modulo(k, d);
        let g = gcd(k, d);
        let order = d / g;
        RootOfUnity { order, exponent: if order == 1 { 0 } else { k / g } }
    }

    /// Strict constructor for already primitive data.
    pub fn primitive(d: u64, k: i64) -> Result<Self, CycloError> {
        if d == 0 {
            return Err(CycloError::ZeroConductor);
        }
        if gcd(modulo(k, d), d) != 1 && d != 1 {
            return Err(CycloError::NotPrimitive { d, k });
        }
        Ok(Self::new(d, k))
    }

    pub fn one() -> Self {
        RootOfUnity { order: 1, exponent: 0 }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    /// The exponent of this root as a power of `ζ_n` (`order` must divide `n`).
    pub fn exponent_in(&self, n: u64) -> u64 {
        assert!(n.is_multiple_of(self.order));
        self.exponent * (n / self.order)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let l = lcm(self.order, other.order);
        Self::new(l, (self.exponent_in(l) + other.exponent_in(l)) as i64)
    }

    pub fn pow(&self, e: i64) -> Self {
        Self::new(self.order, self.exponent as i64 * e)
    }

    pub fn inverse(&self) -> Self {
        self.pow(-1)
    }

    pub fn to_cycint(&self) -> CycInt {
        CycInt::root_of_unity(self.order, self.exponent as i64)
    }
}

/// Minimal polynomial over `Q(ζ_m)` of a root of unity of order at least 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KCyclotomic {
    field_conductor: u64,
    root: RootOfUnity,
}

impl KCyclotomic {
    /// Canonicalizes the root to the least exponent of its orbit.
    pub fn new(field_conductor: u64, root: RootOfUnity) -> Result<Self, CycloError> {
        if field_conductor == 0 {
            return Err(CycloError::ZeroConductor);
        }
        if root.order < 2 {
            return Err(CycloError::TrivialRoot);
        }
        let orbit = orbit_exponents(field_conductor, root);
        let k = orbit[0];
        Ok(KCyclotomic { field_conductor, root: RootOfUnity { order: root.order, exponent: k } })
    }

    pub fn field_conductor(&self) -> u64 {
        self.field_conductor
    }

    pub fn root(&self) -> RootOfUnity {
        self.root
    }

    /// Exponents `s` (mod d) of the roots `ζ_d^s`, ascending.
    pub fn orbit(&self) -> Vec<u64> {
        orbit_exponents(self.field_conductor, self.root)
    }

    pub fn degree(&self) -> usize {
        self.orbit().len()
    }

    /// `Ψ(1) = ∏ (1 - ζ_d^s)` in `Z[ζ_m]`.
    pub fn value_at_one(&self) -> CycInt {
        let d = self.root.order;
        let l = lcm(self.field_conductor, d);
        let mut acc = CycInt::one(l);
        for s in self.orbit() {
            let term = &CycInt::one(l) - &CycInt::root_of_unity(d, s as i64).lift(l);
            acc = &acc * &term;
        }
        acc.descend(self.field_conductor).expect("orbit product is Galois invariant")
    }

    /// Coefficients of `Ψ(T)` (low to high) in `Z[ζ_m]`.
    pub fn poly(&self) -> Vec<CycInt> {
        let d = self.root.order;
        let l = lcm(self.field_conductor, d);
        let mut acc = vec![CycInt::one(l)];
        for s in self.orbit() {
            let r = CycInt::root_of_unity(d, s as i64).lift(l);
            let mut next = vec![CycInt::zero(l); acc.len() + 1];
            for (i, c) in acc.iter().enumerate() {
                next[i + 1] = &next[i + 1] + c;
                next[i] = &next[i] - &(c * &r);
            }
            acc = next;
        }
        acc.into_iter().map(|c| c.descend(self.field_conductor).expect("coefficients lie in K")).collect()
    }

    /// Fast path: `p | N(Ψ(1))` exactly when the root order is a power of `p`.
    pub fn is_p_essential(&self, p: u64) -> bool {
        prime_power_base(self.root.order) == Some(p)
    }

    /// The same question answered through the norm.
    pub fn is_p_essential_by_norm(&self, p: u64) -> bool {
        let n = self.value_at_one().norm();
        (n.abs() % BigInt::from(p)).is_zero()
    }
}

fn orbit_exponents(m: u64, root: RootOfUnity) -> Vec<u64> {
    let d = root.order;
    let l = lcm(m, d);
    let mut out: Vec<u64> =
        (1..=l).filter(|&t| gcd(t, l) == 1 && t % m == 1 % m).map(|t| root.exponent * t % d).collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// All K-cyclotomic factors of `Φ_d` over `Q(ζ_m)`.
pub fn k_factors(m: u64, d: u64) -> Vec<KCyclotomic> {
    let mut seen = Vec::new();
    let mut out = Vec::new();
    for k in 1..d {
        if gcd(k, d) != 1 || seen.contains(&k) {
            continue;
        }
        let f = KCyclotomic::new(m, RootOfUnity::new(d, k as i64)).expect("d >= 2");
        seen.extend(f.orbit());
        out.push(f);
    }
    out
}

// ---------------------------------------------------------------------------
// prime ideals

/// One prime of `Z[ζ_N]` above `p`, as `(p, h(ζ))` with `h` irreducible mod `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeIdealHandle {
    pub rational_prime: u64,
    pub conductor: u64,
    /// Monic, coefficients low to high in `[0, p)`.
    pub local_factor: Vec<u64>,
}

/// Picks the factor of `Φ_N mod p` with the least coefficient vector, compared from
/// the constant term upwards.
pub fn prime_handle(p: u64, conductor: u64) -> PrimeIdealHandle {
    assert!(is_prime(p), "prime_handle needs a prime");
    assert!(conductor >= 1);
    let local_factor = if conductor == 1 {
        vec![0, 1]
    } else {
        let mut n = conductor;
        while n.is_multiple_of(p) {
            n /= p;
        }
        let phi: Vec<u64> = cyclotomic_poly(n).iter().map(|&c| modulo(c, p)).collect();
        let f = mult_order(p % n.max(1), n) as usize;
        let mut factors = fp::equal_degree_factors(&phi, f, p);
        factors.sort();
        factors.into_iter().next().expect("at least one factor")
    };
    PrimeIdealHandle { rational_prime: p, conductor, local_factor }
}

pub fn in_prime_ideal(a: &CycInt, h: &PrimeIdealHandle) -> bool {
    let a = a.lift(lcm(a.conductor(), h.conductor));
    assert_eq!(a.conductor(), h.conductor, "lift the element to the handle's conductor");
    let p = h.rational_prime;
    let poly: Vec<u64> = a.coeffs().iter().map(|&c| modulo(c, p)).collect();
    fp::rem(&poly, &h.local_factor, p).iter().all(|&c| c == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64, k: i64) -> CycInt {
        CycInt::root_of_unity(n, k)
    }

    #[test]
    fn small_cyclotomic_polys() {
        assert_eq!(cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(cyclotomic_poly(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_poly(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_poly(9), vec![1, 0, 0, 1, 0, 0, 1]);
        assert_eq!(cyclotomic_poly(12), vec![1, 0, -1, 0, 1]);
        // Φ105 is the first with a coefficient of absolute value 2
        assert!(cyclotomic_poly(105).contains(&-2));
    }

    #[test]
    fn ring_examples() {
        let one = CycInt::one(3);
        let p = &(&one - &z(3, 1)) * &(&one - &z(3, 2));
        assert_eq!(p, CycInt::from_int(1, 3));
        let a = z(5, 2);
        assert_eq!(&a + &CycInt::zero(5), a);
        let one12 = CycInt::one(12);
        let lhs = &(&one12 + &z(12, 1)) * &(&one12 - &z(12, 1));
        assert_eq!(lhs, &one12 - &z(12, 2));
    }

    #[test]
    fn norms() {
        assert_eq!((&CycInt::one(3) - &z(3, 1)).norm(), BigInt::from(3));
        assert_eq!(z(8, 1).norm(), BigInt::from(1));
        assert_eq!((&CycInt::from_int(5, 2) + &z(5, 1)).norm(), BigInt::from(11));
        assert_eq!(CycInt::from_int(12, 3).norm(), BigInt::from(81));
    }

    #[test]
    fn mixed_conductors_lift() {
        let a = z(4, 1);
        let b = z(3, 1);
        let c = &a * &b;
        assert_eq!(c.conductor(), 12);
        assert_eq!(c, z(12, 7));
        assert_eq!(z(6, 2), z(3, 1));
        assert_eq!(z(2, 1), CycInt::from_int(1, -1));
    }

    #[test]
    fn descend_and_minimal() {
        // ζ12^3 = i
        assert_eq!(z(12, 3).descend(4), Some(z(4, 1)));
        assert_eq!(z(12, 1).descend(4), None);
        let s = &z(8, 1) + &z(8, 7); // √2
        assert!(s.descend(4).is_none());
        assert_eq!(s.minimal().conductor(), 8);
        assert_eq!((&z(5, 1) + &z(5, 4)).descend(1), None);
        assert_eq!(CycInt::from_int(7, 6).as_integer(), Some(6));
    }

    #[test]
    fn value_at_one_examples() {
        assert_eq!(cyclotomic_value_at_one(4), 2);
        assert_eq!(cyclotomic_value_at_one(9), 3);
        assert_eq!(cyclotomic_value_at_one(6), 1);
    }

    #[test]
    fn kcyc_examples() {
        let f = KCyclotomic::new(1, RootOfUnity::new(3, 1)).unwrap();
        assert_eq!(f.degree(), 2);
        assert_eq!(f.value_at_one(), CycInt::from_int(1, 3));
        let f = KCyclotomic::new(3, RootOfUnity::new(3, 1)).unwrap();
        assert_eq!(f.degree(), 1);
        assert_eq!(f.value_at_one(), &CycInt::one(3) - &z(3, 1));
        let f = KCyclotomic::new(12, RootOfUnity::new(8, 1)).unwrap();
        assert_eq!(f.degree(), 2);
        let n = f.value_at_one().norm().abs();
        assert!(n > BigInt::one());
        let mut m = n.clone();
        while (&m % 2u32).is_zero() {
            m /= 2u32;
        }
        assert!(m.is_one());
        assert!(KCyclotomic::new(5, RootOfUnity::one()).is_err());
    }

    #[test]
    fn kcyc_poly_matches_roots() {
        let f = KCyclotomic::new(3, RootOfUnity::new(9, 2)).unwrap();
        let poly = f.poly();
        assert_eq!(poly.len(), f.degree() + 1);
        for s in f.orbit() {
            let r = z(9, s as i64);
            let mut acc = CycInt::zero(9);
            for c in poly.iter().rev() {
                acc = &(&acc * &r) + c;
            }
            assert!(acc.is_zero());
        }
    }

    #[test]
    fn essential_fast_path_examples() {
        for m in [1, 3, 12] {
            for f in k_factors(m, 8) {
                assert!(f.is_p_essential(2) && f.is_p_essential_by_norm(2));
                assert!(!f.is_p_essential(3) && !f.is_p_essential_by_norm(3));
            }
            for f in k_factors(m, 9) {
                assert!(f.is_p_essential_by_norm(3));
                assert!(!f.is_p_essential_by_norm(2));
            }
            for f in k_factors(m, 6) {
                for p in [2, 3, 5] {
                    assert!(!f.is_p_essential(p) && !f.is_p_essential_by_norm(p));
                }
            }
        }
    }

    #[test]
    fn prime_handles() {
        assert_eq!(prime_handle(3, 3).local_factor, vec![2, 1]);
        assert_eq!(prime_handle(2, 3).local_factor, vec![1, 1, 1]);
        assert_eq!(prime_handle(5, 1).local_factor, vec![0, 1]);
        // 13 splits completely in Q(ζ12); roots of T^4 - T^2 + 1 mod 13 are 2, 6, 7, 11
        assert_eq!(prime_handle(13, 12).local_factor, vec![2, 1]);
        let h = prime_handle(3, 3);
        assert!(in_prime_ideal(&(&CycInt::one(3) - &z(3, 1)), &h));
        assert!(!in_prime_ideal(&CycInt::one(3), &h));
        assert!(in_prime_ideal(&CycInt::from_poly(3, &[0, 3]), &h));
        let h = prime_handle(7, 1);
        assert!(in_prime_ideal(&CycInt::from_int(1, 14), &h));
        assert!(!in_prime_ideal(&CycInt::from_int(1, 15), &h));
    }

    #[test]
    fn roots_of_unity_reduce() {
        let r = RootOfUnity::new(12, 8);
        assert_eq!((r.order(), r.exponent()), (3, 2));
        assert_eq!(RootOfUnity::new(4, 4), RootOfUnity::one());
        assert_eq!(RootOfUnity::new(4, 1).mul(&RootOfUnity::new(4, 1)), RootOfUnity::new(2, 1));
        assert!(RootOfUnity::primitive(6, 2).is_err());
    }
}
