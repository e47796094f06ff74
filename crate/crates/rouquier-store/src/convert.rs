//! Mapping between JSON documents and core types.
//!
//! Decoding rejects anything that cannot be represented (unknown labels,
//! overlapping parts, non-canonical normals, bad radicals). Semantic checks on a
//! decoded group live in [`crate::check`].

use rouquier::clifford::{CliffordLink, InductionRow, ParamImage};
use rouquier::cyclo::{CycInt, KCyclotomic, RootOfUnity};
use rouquier::datum::{CharLabel, GroupDatum, Hyperplane, HyperplaneTable, Orbit};
use rouquier::group_blocks::CharacterTable;
use rouquier::partition::Partition;
use rouquier::schur::{normalize_x_to_v, SchurElement, SchurEntry, SchurFactorV, SchurFactorX, SchurX};

use crate::format::*;
use crate::StoreError;

struct Ctx<'a> {
    group: &'a str,
}

impl Ctx<'_> {
    fn err(&self, field: impl Into<String>, msg: impl ToString) -> StoreError {
        StoreError::Field { group: self.group.into(), field: field.into(), msg: msg.to_string() }
    }
}

fn label(cx: &Ctx, field: &str, s: &str) -> Result<CharLabel, StoreError> {
    s.parse().map_err(|e| cx.err(field, e))
}

fn cyc(cx: &Ctx, field: &str, d: &CycDoc) -> Result<CycInt, StoreError> {
    if d.conductor == 0 {
        return Err(cx.err(field, "conductor 0"));
    }
    Ok(CycInt::from_poly(d.conductor, &d.coeffs))
}

fn cyc_doc(c: &CycInt) -> CycDoc {
    CycDoc { conductor: c.conductor(), coeffs: c.coeffs().to_vec() }
}

fn root(cx: &Ctx, field: &str, d: RootDoc) -> Result<RootOfUnity, StoreError> {
    if d.order == 0 {
        return Err(cx.err(field, "root of unity of order 0"));
    }
    Ok(RootOfUnity::new(d.order, d.exponent))
}

fn root_doc(r: RootOfUnity) -> RootDoc {
    RootDoc { order: r.order(), exponent: r.exponent() as i64 }
}

fn partition(cx: &Ctx, field: &str, g: &GroupDatum, parts: &[Vec<String>]) -> Result<Partition, StoreError> {
    let n = g.characters.len();
    let mut owner: Vec<Option<usize>> = vec![None; n];
    let mut idx = Vec::with_capacity(parts.len());
    for (k, part) in parts.iter().enumerate() {
        let mut p = Vec::with_capacity(part.len());
        for name in part {
            let i = g.find_char(name).map_err(|e| cx.err(field, e))?;
            if let Some(other) = owner[i] {
                let msg = if other == k {
                    format!("{name} is listed twice in {part:?}")
                } else {
                    format!("parts {:?} and {:?} overlap in {name}", parts[other], part)
                };
                return Err(cx.err(field, msg));
            }
            owner[i] = Some(k);
            p.push(i);
        }
        idx.push(p);
    }
    Partition::with_singletons(n, idx).map_err(|e| cx.err(field, e))
}

fn partition_doc(g: &GroupDatum, p: &Partition) -> Vec<Vec<String>> {
    p.nontrivial().map(|part| part.iter().map(|&i| g.characters[i].to_string()).collect()).collect()
}

fn schur_x(cx: &Ctx, field: &str, d: &SchurXDoc) -> Result<SchurX, StoreError> {
    let factors = d
        .factors
        .iter()
        .enumerate()
        .map(|(k, f)| {
            Ok(SchurFactorX {
                cyc_index: f.cyc,
                twist: root(cx, &format!("{field}.factors[{k}].twist"), f.twist)?,
                num: f.num.clone(),
                den: f.den,
                mult: f.mult,
            })
        })
        .collect::<Result<Vec<_>, StoreError>>()?;
    Ok(SchurX { coeff: cyc(cx, field, &d.coeff)?, lead_num: d.lead.num.clone(), lead_den: d.lead.den, factors })
}

fn schur_x_doc(x: &SchurX) -> SchurXDoc {
    SchurXDoc {
        coeff: cyc_doc(&x.coeff),
        lead: MonomialDoc { num: x.lead_num.clone(), den: x.lead_den },
        factors: x
            .factors
            .iter()
            .map(|f| FactorXDoc {
                cyc: f.cyc_index,
                twist: root_doc(f.twist),
                num: f.num.clone(),
                den: f.den,
                mult: f.mult,
            })
            .collect(),
    }
}

fn schur_v(cx: &Ctx, field: &str, g: &GroupDatum, char: CharLabel, d: &SchurVDoc) -> Result<SchurElement, StoreError> {
    let factors = d
        .factors
        .iter()
        .enumerate()
        .map(|(k, f)| {
            let f_field = format!("{field}.factors[{k}]");
            let psi =
                KCyclotomic::new(g.field_conductor, root(cx, &f_field, f.root)?).map_err(|e| cx.err(&f_field, e))?;
            Ok(SchurFactorV { monomial: f.monomial.clone(), psi, mult: f.mult })
        })
        .collect::<Result<Vec<_>, StoreError>>()?;
    Ok(SchurElement { char, xi: cyc(cx, field, &d.xi)?, lead: d.lead.clone(), factors })
}

fn schur_v_doc(v: &SchurElement) -> SchurVDoc {
    SchurVDoc {
        xi: cyc_doc(&v.xi),
        lead: v.lead.clone(),
        factors: v
            .factors
            .iter()
            .map(|f| FactorVDoc { monomial: f.monomial.clone(), root: root_doc(f.psi.root()), mult: f.mult })
            .collect(),
    }
}

fn table(cx: &Ctx, k: usize, g: &GroupDatum, d: &TableDoc) -> Result<HyperplaneTable, StoreError> {
    let field = format!("tables[{k}]");
    let hyperplane = match &d.hyperplane {
        None => None,
        Some(v) => Some(Hyperplane::strict(&g.orbits, v).map_err(|e| cx.err(&field, e))?),
    };
    let per_prime = d
        .per_prime
        .iter()
        .map(|pp| Ok((pp.prime, partition(cx, &format!("{field}.per_prime"), g, &pp.blocks)?)))
        .collect::<Result<Vec<_>, StoreError>>()?;
    Ok(HyperplaneTable {
        hyperplane,
        blocks: partition(cx, &field, g, &d.blocks)?,
        primes: d.primes.clone(),
        per_prime,
    })
}

fn link(cx: &Ctx, k: usize, g: &GroupDatum, d: &LinkDoc) -> Result<CliffordLink, StoreError> {
    let field = format!("links[{k}]");
    let parameter_spec = d
        .parameter_spec
        .iter()
        .map(|p| match *p {
            ParamDoc::Child(t) => Ok(ParamImage::Child(t)),
            ParamDoc::Fixed(r) => Ok(ParamImage::Fixed(root(cx, &field, r)?)),
        })
        .collect::<Result<Vec<_>, StoreError>>()?;
    let induction = d
        .induction
        .iter()
        .map(|row| {
            Ok(InductionRow {
                child: label(cx, &field, &row.child)?,
                parent: row.parent.iter().map(|p| label(cx, &field, p)).collect::<Result<_, _>>()?,
            })
        })
        .collect::<Result<Vec<_>, StoreError>>()?;
    Ok(CliffordLink {
        parent: g.name.clone(),
        child: d.child.clone(),
        cyclic_order: d.cyclic_order,
        parameter_spec,
        induction,
    })
}

/// Builds a [`GroupDatum`] from its document.
pub fn decode(doc: &GroupFile) -> Result<GroupDatum, StoreError> {
    let cx = Ctx { group: &doc.name };
    let orbits: Vec<Orbit> = doc.orbits.iter().map(|o| Orbit { letter: o.letter, order: o.order }).collect();
    if orbits.is_empty() || orbits.iter().any(|o| o.order == 0) {
        return Err(cx.err("orbits", "every orbit needs a positive order"));
    }
    let characters = doc.characters.iter().map(|c| label(&cx, "characters", c)).collect::<Result<Vec<_>, _>>()?;
    for (i, c) in characters.iter().enumerate() {
        if characters[..i].contains(c) {
            return Err(cx.err("characters", format!("{c} is listed twice")));
        }
    }
    if doc.field_conductor == 0 || doc.mu_order == 0 || doc.group_order == 0 {
        return Err(cx.err("header", "conductor, mu_order and group_order must be positive"));
    }
    let mut g = GroupDatum::new(&doc.name, doc.field_conductor, doc.mu_order, doc.group_order, orbits, characters);
    g.partial = doc.partial;

    if !doc.schur.is_empty() {
        let mut schur: Vec<Option<SchurEntry>> = vec![None; g.characters.len()];
        for (k, s) in doc.schur.iter().enumerate() {
            let field = format!("schur[{k}]");
            let i = g.find_char(&s.char).map_err(|e| cx.err(&field, e))?;
            if schur[i].is_some() {
                return Err(cx.err(&field, format!("second Schur element for {}", s.char)));
            }
            let char = g.characters[i];
            let x = s.x.as_ref().map(|x| schur_x(&cx, &field, x)).transpose()?;
            let from_x =
                x.as_ref().map(|x| normalize_x_to_v(&g, char, x).map_err(|e| cx.err(&field, e))).transpose()?;
            let from_v = s.v.as_ref().map(|v| schur_v(&cx, &field, &g, char, v)).transpose()?;
            let v = match (from_x, from_v) {
                (Some(a), Some(b)) if a != b => return Err(cx.err(&field, "x-form and v-form disagree")),
                (Some(a), _) => a,
                (None, Some(b)) => b,
                (None, None) => return Err(cx.err(&field, "needs an x-form or a v-form")),
            };
            schur[i] = Some(SchurEntry { x, v });
        }
        g.schur = schur;
    }

    if let Some(t) = &doc.character_table {
        let values = t
            .values
            .iter()
            .map(|row| row.iter().map(|v| cyc(&cx, "character_table", v)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        if values.len() != g.characters.len() {
            return Err(
                cx.err("character_table", format!("{} rows for {} characters", values.len(), g.characters.len()))
            );
        }
        let mut ct = CharacterTable::new(t.class_sizes.clone(), values, t.conductor)
            .map_err(|e| cx.err("character_table", e))?;
        ct.class_orders = t.class_orders.clone();
        g.character_table = Some(ct);
    }

    let tables = doc.tables.iter().enumerate().map(|(k, t)| table(&cx, k, &g, t)).collect::<Result<Vec<_>, _>>()?;
    g.tables = tables;
    let links = doc.links.iter().enumerate().map(|(k, l)| link(&cx, k, &g, l)).collect::<Result<Vec<_>, _>>()?;
    g.links = links;
    Ok(g)
}

/// Inverse of [`decode`] up to canonical forms.
pub fn encode(g: &GroupDatum) -> GroupFile {
    GroupFile {
        name: g.name.clone(),
        field_conductor: g.field_conductor,
        mu_order: g.mu_order,
        group_order: g.group_order,
        orbits: g.orbits.iter().map(|o| OrbitDoc { letter: o.letter, order: o.order }).collect(),
        characters: g.characters.iter().map(ToString::to_string).collect(),
        partial: g.partial,
        schur: g
            .schur
            .iter()
            .flatten()
            .map(|e| SchurDoc {
                char: e.v.char.to_string(),
                x: e.x.as_ref().map(schur_x_doc),
                v: if e.x.is_none() { Some(schur_v_doc(&e.v)) } else { None },
            })
            .collect(),
        character_table: g.character_table.as_ref().map(|t| CharacterTableDoc {
            conductor: t.conductor,
            class_sizes: t.class_sizes.clone(),
            class_orders: t.class_orders.clone(),
            values: t.values.iter().map(|r| r.iter().map(cyc_doc).collect()).collect(),
        }),
        tables: g
            .tables
            .iter()
            .map(|t| TableDoc {
                hyperplane: t.hyperplane.as_ref().map(|h| h.normal().to_vec()),
                blocks: partition_doc(g, &t.blocks),
                primes: t.primes.clone(),
                per_prime: t
                    .per_prime
                    .iter()
                    .map(|(p, b)| PerPrimeDoc { prime: *p, blocks: partition_doc(g, b) })
                    .collect(),
            })
            .collect(),
        links: g
            .links
            .iter()
            .map(|l| LinkDoc {
                child: l.child.clone(),
                cyclic_order: l.cyclic_order,
                parameter_spec: l
                    .parameter_spec
                    .iter()
                    .map(|p| match p {
                        ParamImage::Child(t) => ParamDoc::Child(*t),
                        ParamImage::Fixed(r) => ParamDoc::Fixed(root_doc(*r)),
                    })
                    .collect(),
                induction: l
                    .induction
                    .iter()
                    .map(|r| InductionDoc {
                        child: r.child.to_string(),
                        parent: r.parent.iter().map(ToString::to_string).collect(),
                    })
                    .collect(),
            })
            .collect(),
    }
}
