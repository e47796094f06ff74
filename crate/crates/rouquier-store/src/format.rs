//! On-disk JSON documents, one per group.
//!
//! These mirror the core types field for field but keep everything in plain
//! serializable shapes: characters as `phi{d,b}'` strings, vectors in slot order,
//! cyclotomic integers as `{"conductor": N, "coeffs": [...]}`.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupFile {
    pub name: String,
    pub field_conductor: u64,
    pub mu_order: u64,
    pub group_order: u64,
    pub orbits: Vec<OrbitDoc>,
    pub characters: Vec<String>,
    #[serde(default)]
    pub partial: bool,
    #[serde(default)]
    pub schur: Vec<SchurDoc>,
    #[serde(default)]
    pub character_table: Option<CharacterTableDoc>,
    #[serde(default)]
    pub tables: Vec<TableDoc>,
    #[serde(default)]
    pub links: Vec<LinkDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrbitDoc {
    pub letter: char,
    pub order: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CycDoc {
    pub conductor: u64,
    pub coeffs: Vec<i64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RootDoc {
    pub order: u64,
    pub exponent: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchurDoc {
    pub char: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<SchurXDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v: Option<SchurVDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonomialDoc {
    pub num: Vec<i64>,
    pub den: u64,
}

/// `coeff · x^lead · ∏ Φ_cyc(twist · x^{num/den})^mult`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchurXDoc {
    pub coeff: CycDoc,
    pub lead: MonomialDoc,
    pub factors: Vec<FactorXDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorXDoc {
    pub cyc: u64,
    pub twist: RootDoc,
    pub num: Vec<i64>,
    pub den: u64,
    pub mult: u32,
}

/// Canonical form: `xi · V^lead · ∏ Ψ_root(V^monomial)^mult`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchurVDoc {
    pub xi: CycDoc,
    pub lead: Vec<i64>,
    pub factors: Vec<FactorVDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorVDoc {
    pub monomial: Vec<i64>,
    pub root: RootDoc,
    pub mult: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CharacterTableDoc {
    pub conductor: u64,
    pub class_sizes: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class_orders: Option<Vec<u64>>,
    pub values: Vec<Vec<CycDoc>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableDoc {
    /// `null` for the table without essential hyperplane.
    pub hyperplane: Option<Vec<i64>>,
    /// Non-trivial parts; characters not listed are singletons.
    pub blocks: Vec<Vec<String>>,
    #[serde(default)]
    pub primes: Vec<u64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub per_prime: Vec<PerPrimeDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PerPrimeDoc {
    pub prime: u64,
    pub blocks: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinkDoc {
    pub child: String,
    pub cyclic_order: u64,
    pub parameter_spec: Vec<ParamDoc>,
    #[serde(default)]
    pub induction: Vec<InductionDoc>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ParamDoc {
    Child(usize),
    Fixed(RootDoc),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InductionDoc {
    pub child: String,
    pub parent: Vec<String>,
}
