//! Dense polynomials over the prime field `F_p`, coefficients low to high.

use alloc::vec;
use alloc::vec::Vec;

fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn inv(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(out)
}

pub fn add(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let out = (0..n).map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p).collect();
    trim(out)
}

pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

/// Quotient and remainder; `b` must be nonzero.
pub fn divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let b = trim(b.to_vec());
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut r = trim(a.to_vec());
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lead_inv = inv(*b.last().unwrap(), p);
    let db = b.len() - 1;
    let mut q = vec![0u64; r.len() - db];
    for i in (0..q.len()).rev() {
        let c = r[i + db] * lead_inv % p;
        q[i] = c;
        if c != 0 {
            for (j, &bj) in b.iter().enumerate() {
                r[i + j] = (r[i + j] + p - c * bj % p) % p;
            }
        }
    }
    r.truncate(db);
    (trim(q), trim(r))
}

pub fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    divrem(a, b, p).1
}

fn monic(a: Vec<u64>, p: u64) -> Vec<u64> {
    match a.last() {
        None => a,
        Some(&l) => {
            let li = inv(l, p);
            a.into_iter().map(|c| c * li % p).collect()
        }
    }
}

pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    monic(a, p)
}

fn mulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    rem(&mul(a, b, p), f, p)
}

fn powmod(a: &[u64], mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
    let mut r = rem(&[1], f, p);
    let mut b = rem(a, f, p);
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(&r, &b, f, p);
        }
        b = mulmod(&b, &b, f, p);
        e >>= 1;
    }
    r
}

/// The `i`-th trial polynomial; enumerates every nonconstant polynomial eventually.
fn trial(i: u64, p: u64) -> Vec<u64> {
    // digits of i + p in base p, so that the result has degree >= 1
    let mut n = i + p;
    let mut out = Vec::new();
    while n > 0 {
        out.push(n % p);
        n /= p;
    }
    trim(out)
}

/// Splitting map whose gcd with `f` is a proper factor with positive probability.
fn splitter(a: &[u64], deg: usize, f: &[u64], p: u64) -> Vec<u64> {
    if p == 2 {
        // trace a + a^2 + ... + a^{2^{deg-1}}
        let mut acc = Vec::new();
        let mut t = rem(a, f, p);
        for _ in 0..deg {
            acc = add(&acc, &t, p);
            t = mulmod(&t, &t, f, p);
        }
        acc
    } else {
        // a^{(p^deg - 1)/2} = (a^{1 + p + ... + p^{deg-1}})^{(p-1)/2}
        let mut normish = rem(&[1], f, p);
        let mut t = rem(a, f, p);
        for _ in 0..deg {
            normish = mulmod(&normish, &t, f, p);
            t = powmod(&t, p, f, p);
        }
        let b = powmod(&normish, (p - 1) / 2, f, p);
        sub(&b, &[1], p)
    }
}

/// Splits a squarefree monic `f` whose irreducible factors all have degree `deg`.
pub fn equal_degree_factors(f: &[u64], deg: usize, p: u64) -> Vec<Vec<u64>> {
    let f = monic(trim(f.to_vec()), p);
    let n = f.len() - 1;
    if n == deg {
        return vec![f];
    }
    let mut i = 0;
    loop {
        let a = trial(i, p);
        i += 1;
        if a.len() > n {
            continue;
        }
        let g = gcd(&f, &splitter(&a, deg, &f, p), p);
        let dg = g.len().saturating_sub(1);
        if dg > 0 && dg < n {
            let (h, r) = divrem(&f, &g, p);
            debug_assert!(r.is_empty());
            let mut out = equal_degree_factors(&g, deg, p);
            out.extend(equal_degree_factors(&h, deg, p));
            return out;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_roundtrip() {
        let a = vec![1, 2, 0, 4, 1];
        let b = vec![3, 1, 1];
        let (q, r) = divrem(&a, &b, 5);
        assert_eq!(add(&mul(&q, &b, 5), &r, 5), a);
    }

    #[test]
    fn splits_phi7_mod_2() {
        // Φ7 = (T^3 + T + 1)(T^3 + T^2 + 1) over F_2
        let mut fs = equal_degree_factors(&[1, 1, 1, 1, 1, 1, 1], 3, 2);
        fs.sort();
        assert_eq!(fs, vec![vec![1, 0, 1, 1], vec![1, 1, 0, 1]]);
    }

    #[test]
    fn splits_into_linears() {
        // T^2 - 1 over F_5
        let mut fs = equal_degree_factors(&[4, 0, 1], 1, 5);
        fs.sort();
        assert_eq!(fs, vec![vec![1, 1], vec![4, 1]]);
    }
}
