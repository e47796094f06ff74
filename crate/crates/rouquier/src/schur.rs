//! Factorized Schur elements.
//!
//! Data is entered in the *x-form*, a product of `Φ_n(ρ · ∏ x_s^{a_s/q})`, and
//! normalized to the *v-form* `ξ · V^lead · ∏ Ψ_i(V^{M_i})^{n_i}` over `K = Q(ζ_m)`
//! through `x_{C,j} = ζ_{e_C}^j v_{C,j}^{|μ(K)|}`. Radicals take the principal
//! branch `x_{C,j}^{a/q} = ζ_{e_C q}^{j a} v_{C,j}^{|μ(K)| a / q}`; any other branch
//! is entered as an explicit twist.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::cyclo::{self, euler_phi, is_prime, lcm, CycInt, KCyclotomic, RootOfUnity};
use crate::datum::{bad_orbit_sum, check_arity, CharLabel, DatumError, GroupDatum, Hyperplane};
use crate::lattice::{primitive_part, IntVector};

/// Verbatim message for a prime not dividing the group order.
pub const NOT_DIVIDING: &str = "The number p should divide the order of the group";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SchurError {
    #[error("exponent of slot {slot} times {mu} is not divisible by {den}")]
    NonIntegral { slot: usize, mu: u64, den: u64 },
    #[error("factor {0} produces a first cyclotomic polynomial, which never appears in a Schur element")]
    TrivialRoot(usize),
    #[error("roots of factor {0} are not a union of Galois orbits over the field of definition")]
    NotOrbitUnion(usize),
    #[error("factor {0} vanishes identically")]
    ZeroFactor(usize),
    #[error("coefficient does not lie in Z[ζ_{0}]")]
    OutsideField(u64),
    #[error("{0}")]
    NotDividing(&'static str),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("missing payload: {0}")]
    Missing(&'static str),
    #[error(transparent)]
    Datum(#[from] DatumError),
}

/// One x-form factor `Φ_n(ρ · ∏ x_s^{num_s/den})^mult`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchurFactorX {
    pub cyc_index: u64,
    pub twist: RootOfUnity,
    pub num: IntVector,
    pub den: u64,
    pub mult: u32,
}

impl SchurFactorX {
    /// `Φ_1(∏ x_s^{num_s})`, the common shape.
    pub fn phi1(num: IntVector) -> Self {
        SchurFactorX { cyc_index: 1, twist: RootOfUnity::one(), num, den: 1, mult: 1 }
    }
}

/// A Schur element as entered: `coeff · x^{lead_num/lead_den} · ∏ factors`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchurX {
    pub coeff: CycInt,
    pub lead_num: IntVector,
    pub lead_den: u64,
    pub factors: Vec<SchurFactorX>,
}

/// `Ψ(V^monomial)^mult` with `monomial` primitive and sign-canonical.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SchurFactorV {
    pub monomial: IntVector,
    pub psi: KCyclotomic,
    pub mult: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchurElement {
    pub char: CharLabel,
    pub xi: CycInt,
    pub lead: IntVector,
    pub factors: Vec<SchurFactorV>,
}

/// Stored Schur data: the canonical form, plus the entry form when known.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchurEntry {
    pub x: Option<SchurX>,
    pub v: SchurElement,
}

/// `ψ · y^{y_power} · ∏ Ψ(y^δ)^mult` after a cyclotomic specialization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecializedSchur {
    pub psi_coeff: CycInt,
    pub y_power: i64,
    pub terms: Vec<(KCyclotomic, i64, u32)>,
}

fn eval_cyclotomic(n: u64, at: &CycInt) -> CycInt {
    let mut acc = CycInt::zero(at.conductor());
    for &c in cyclo::cyclotomic_poly(n).iter().rev() {
        acc = &(&acc * at) + &CycInt::from_int(at.conductor(), c);
    }
    acc
}

/// The root of unity and v-exponents of `∏ x_s^{num_s/den}` (principal branch).
pub fn x_monomial_to_v(g: &GroupDatum, num: &[i64], den: u64) -> Result<(RootOfUnity, IntVector), SchurError> {
    check_arity(&g.orbits, num)?;
    let mu = g.mu_order;
    let mut zeta = RootOfUnity::one();
    let mut w = Vec::with_capacity(num.len());
    for (s, (&a, (c, j))) in num.iter().zip(g.slots()).enumerate() {
        let top = a as i128 * mu as i128;
        if top % den as i128 != 0 {
            return Err(SchurError::NonIntegral { slot: s, mu, den });
        }
        w.push((top / den as i128) as i64);
        let e = g.orbits[c].order as u64;
        zeta = zeta.mul(&RootOfUnity::new(e * den, j as i64 * a));
    }
    Ok((zeta, w))
}

fn canonical_sign(v: &[i64]) -> bool {
    v.iter().find(|&&x| x != 0).is_none_or(|&x| x > 0)
}

/// Converts an x-form entry into the canonical v-form.
pub fn normalize_x_to_v(g: &GroupDatum, char: CharLabel, x: &SchurX) -> Result<SchurElement, SchurError> {
    let m = g.field_conductor;
    let (zl, mut lead) = x_monomial_to_v(g, &x.lead_num, x.lead_den)?;
    let mut xi = &x.coeff * &zl.to_cycint();
    let mut raw: Vec<SchurFactorV> = Vec::new();

    for (fi, f) in x.factors.iter().enumerate() {
        let (zf, w) = x_monomial_to_v(g, &f.num, f.den)?;
        let rho = f.twist.mul(&zf);
        let (mono, content) = primitive_part(&w);
        if content == 0 {
            let c = eval_cyclotomic(f.cyc_index, &rho.to_cycint());
            if c.is_zero() {
                return Err(SchurError::ZeroFactor(fi));
            }
            xi = &xi * &c.pow(f.mult);
            continue;
        }
        let n = f.cyc_index;
        let big_l = lcm(content * lcm(rho.order(), n), m);
        let rho_e = rho.exponent_in(big_l);
        let roots: Vec<u64> =
            (0..big_l).filter(|&s| RootOfUnity::new(big_l, (content * s + rho_e) as i64).order() == n).collect();
        debug_assert_eq!(roots.len() as u64, content * euler_phi(n));
        let units: Vec<u64> = (1..=big_l).filter(|&t| cyclo::gcd(t, big_l) == 1 && t % m == 1 % m).collect();
        let mut seen: BTreeSet<u64> = BTreeSet::new();
        for &s in &roots {
            if seen.contains(&s) {
                continue;
            }
            let orbit: BTreeSet<u64> = units.iter().map(|&t| s * t % big_l).collect();
            if !orbit.iter().all(|o| roots.binary_search(o).is_ok()) {
                return Err(SchurError::NotOrbitUnion(fi));
            }
            seen.extend(orbit.iter().copied());
            let root = RootOfUnity::new(big_l, s as i64);
            if root.order() == 1 {
                return Err(SchurError::TrivialRoot(fi));
            }
            let psi = KCyclotomic::new(m, root).map_err(|_| SchurError::TrivialRoot(fi))?;
            if canonical_sign(&mono) {
                raw.push(SchurFactorV { monomial: mono.clone(), psi, mult: f.mult });
            } else {
                // Ψ_O(1/S) = ∏(-τ) · S^{-|O|} · Ψ_{O^{-1}}(S)
                let size = orbit.len() as i64;
                let mut unit = RootOfUnity::new(2, size);
                for &o in &orbit {
                    unit = unit.mul(&RootOfUnity::new(big_l, o as i64));
                }
                xi = &xi * &unit.pow(f.mult as i64).to_cycint();
                for (l, &mc) in lead.iter_mut().zip(&mono) {
                    *l += f.mult as i64 * size * mc;
                }
                let flipped: IntVector = mono.iter().map(|&c| -c).collect();
                let psi = KCyclotomic::new(m, root.inverse()).map_err(|_| SchurError::TrivialRoot(fi))?;
                raw.push(SchurFactorV { monomial: flipped, psi, mult: f.mult });
            }
        }
        xi = &xi * &rho.pow((euler_phi(n) * f.mult as u64) as i64).to_cycint();
    }

    raw.sort();
    let mut factors: Vec<SchurFactorV> = Vec::new();
    for f in raw {
        match factors.last_mut() {
            Some(last) if last.monomial == f.monomial && last.psi == f.psi => last.mult += f.mult,
            _ => factors.push(f),
        }
    }
    let xi = xi.descend(m).ok_or(SchurError::OutsideField(m))?;
    Ok(SchurElement { char, xi, lead, factors })
}

/// `ξ · ∏ Ψ(1)^mult`, the value at `v = 1`.
pub fn value_at_one(s: &SchurElement) -> CycInt {
    let mut acc = s.xi.clone();
    for f in &s.factors {
        acc = &acc * &f.psi.value_at_one().pow(f.mult);
    }
    acc
}

/// All violated invariants, as readable lines.
pub fn validate(g: &GroupDatum, s: &SchurElement) -> Vec<String> {
    let mut out = Vec::new();
    let name = format!("{}", s.char);
    if let Err(e) = check_arity(&g.orbits, &s.lead) {
        out.push(format!("{name}: lead: {e}"));
        return out;
    }
    if let Some(c) = bad_orbit_sum(&g.orbits, &s.lead) {
        out.push(format!("{name}: lead {:?} does not sum to zero on orbit {c}", s.lead));
    }
    if s.xi.descend(g.field_conductor).is_none() {
        out.push(format!("{name}: coefficient outside Z[ζ_{}]", g.field_conductor));
    }
    for f in &s.factors {
        if let Err(e) = check_arity(&g.orbits, &f.monomial) {
            out.push(format!("{name}: factor: {e}"));
            continue;
        }
        let c = primitive_part(&f.monomial).1;
        if c != 1 {
            out.push(format!("{name}: monomial {:?} is not primitive (content {c})", f.monomial));
        }
        if let Some(l) = bad_orbit_sum(&g.orbits, &f.monomial) {
            out.push(format!("{name}: monomial {:?} does not sum to zero on orbit {l}", f.monomial));
        }
        if !canonical_sign(&f.monomial) {
            out.push(format!("{name}: monomial {:?} is not sign-canonical", f.monomial));
        }
        if f.psi.root().order() < 2 {
            out.push(format!("{name}: a first cyclotomic polynomial never appears in a Schur element"));
        }
        if f.psi.field_conductor() != g.field_conductor {
            out.push(format!("{name}: factor defined over the wrong field"));
        }
        if f.mult == 0 {
            out.push(format!("{name}: zero multiplicity"));
        }
    }
    if s.char.degree == 0 || !g.group_order.is_multiple_of(s.char.degree as u64) {
        out.push(format!("{name}: degree does not divide the group order"));
    } else {
        let want = CycInt::from_int(1, (g.group_order / s.char.degree as u64) as i64);
        let got = value_at_one(s);
        if got != want {
            out.push(format!("{name}: value at v=1 is {got}, expected {want}"));
        }
    }
    out
}

/// Applies `v_s ↦ y^{n_s}`.
pub fn specialize(s: &SchurElement, n: &[i64]) -> SpecializedSchur {
    let dot = |a: &[i64]| a.iter().zip(n).map(|(&x, &y)| x * y).sum::<i64>();
    let mut psi_coeff = s.xi.clone();
    let mut terms = Vec::new();
    for f in &s.factors {
        let d = dot(&f.monomial);
        if d == 0 {
            psi_coeff = &psi_coeff * &f.psi.value_at_one().pow(f.mult);
        } else {
            terms.push((f.psi, d, f.mult));
        }
    }
    SpecializedSchur { psi_coeff, y_power: dot(&s.lead), terms }
}

/// `(a, A)`: valuation and degree in `x = y^{|μ(K)|}`.
pub fn a_and_a(mu_order: u64, sp: &SpecializedSchur) -> (Ratio<i64>, Ratio<i64>) {
    let mut val = sp.y_power;
    let mut deg = sp.y_power;
    for (psi, d, mult) in &sp.terms {
        let w = *mult as i64 * psi.degree() as i64 * d;
        if *d < 0 {
            val += w;
        } else {
            deg += w;
        }
    }
    let mu = mu_order as i64;
    (Ratio::new(val, mu), Ratio::new(deg, mu))
}

/// Sign-canonical monomials `M` with a factor `Ψ(M)` such that `p | N(Ψ(1))`.
pub fn essential_monomials(s: &SchurElement, p: u64) -> BTreeSet<IntVector> {
    s.factors
        .iter()
        .filter(|f| f.psi.is_p_essential(p))
        .map(|f| if canonical_sign(&f.monomial) { f.monomial.clone() } else { f.monomial.iter().map(|x| -x).collect() })
        .collect()
}

fn check_prime(g: &GroupDatum, p: u64) -> Result<(), SchurError> {
    if !is_prime(p) {
        return Err(SchurError::NotPrime(p));
    }
    if !g.group_order.is_multiple_of(p) {
        return Err(SchurError::NotDividing(NOT_DIVIDING));
    }
    Ok(())
}

pub fn group_primes(g: &GroupDatum) -> Vec<u64> {
    cyclo::factorize(g.group_order).into_iter().map(|(p, _)| p).collect()
}

/// Essential hyperplanes for `p` (or for every prime when `p = 0`), in ascending
/// lexicographic order of normals. Uses Schur data when every character has it,
/// stored tables otherwise.
pub fn essential_hyperplanes(g: &GroupDatum, p: u64) -> Result<Vec<Hyperplane>, SchurError> {
    let primes = if p == 0 {
        group_primes(g)
    } else {
        check_prime(g, p)?;
        vec![p]
    };
    let mut set: BTreeSet<Hyperplane> = BTreeSet::new();
    if g.has_full_schur() {
        for e in g.schur.iter().flatten() {
            for &q in &primes {
                for m in essential_monomials(&e.v, q) {
                    set.insert(g.hyperplane(&m)?);
                }
            }
        }
    } else if g.hyperplane_tables().next().is_some() {
        for t in g.hyperplane_tables() {
            let h = t.hyperplane.clone().expect("hyperplane table");
            if p == 0 || t.primes.contains(&p) {
                set.insert(h);
            }
        }
    } else {
        return Err(SchurError::Missing("Schur elements or hyperplane tables"));
    }
    Ok(set.into_iter().collect())
}

fn prime_divisors(n: &BigInt) -> Vec<u64> {
    let mut n = n.abs();
    let mut out = Vec::new();
    if n.is_zero() {
        return out;
    }
    let mut p = 2u64;
    while BigInt::from(p) * BigInt::from(p) <= n {
        let bp = BigInt::from(p);
        if (&n % &bp).is_zero() {
            out.push(p);
            while (&n % &bp).is_zero() {
                n /= &bp;
            }
        }
        p += 1;
    }
    if n > BigInt::one() {
        out.push(n.to_u64().expect("prime factor fits in u64"));
    }
    out
}

/// Primes dividing the norm of some specialized coefficient.
pub fn bad_primes(g: &GroupDatum, n: &[i64]) -> Result<Vec<u64>, SchurError> {
    if !g.has_full_schur() {
        return Err(SchurError::Missing("full Schur payload"));
    }
    check_arity(&g.orbits, n)?;
    let mut set = BTreeSet::new();
    for e in g.schur.iter().flatten() {
        let sp = specialize(&e.v, n);
        set.extend(prime_divisors(&sp.psi_coeff.norm()));
    }
    Ok(set.into_iter().collect())
}

/// Whether `p` divides the norm of `ξ`.
pub fn xi_divisible(s: &SchurElement, p: u64) -> bool {
    (s.xi.norm() % BigInt::from(p)).is_zero()
}

/// Whether the character is a block by itself for `p`, off every hyperplane or
/// generically on `h`.
pub fn generic_singleton(s: &SchurElement, p: u64, h: Option<&Hyperplane>) -> bool {
    if xi_divisible(s, p) {
        return false;
    }
    match h {
        None => true,
        Some(h) => !essential_monomials(s, p).contains(h.normal()),
    }
}
