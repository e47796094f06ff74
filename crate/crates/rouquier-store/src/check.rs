//! Semantic validation of decoded groups, alone and across Clifford links.

use std::collections::{BTreeMap, BTreeSet};

use rouquier::clifford::{descend_hyperplanes, validate_schur_scaling, CliffordLink, ParamImage};
use rouquier::cyclo::is_prime;
use rouquier::datum::GroupDatum;
use rouquier::schur;

/// Everything wrong with one group on its own.
pub fn check_group(g: &GroupDatum) -> Vec<String> {
    let mut out = Vec::new();
    for e in g.schur.iter().flatten() {
        out.extend(schur::validate(g, &e.v));
    }
    if let Some(t) = &g.character_table {
        let degrees: Vec<u32> = g.characters.iter().map(|c| c.degree).collect();
        out.extend(t.validate(g.group_order, &degrees).into_iter().map(|m| format!("character table: {m}")));
    }
    out.extend(check_tables(g));
    for l in &g.links {
        out.extend(check_link_shape(g, l));
    }
    out
}

fn check_tables(g: &GroupDatum) -> Vec<String> {
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for (k, t) in g.tables.iter().enumerate() {
        let what = match &t.hyperplane {
            None => "no essential hyperplane".to_string(),
            Some(h) => g.render_hyperplane(h),
        };
        if t.hyperplane.is_none() && k != 0 {
            out.push(format!("table {what} must come first"));
        }
        if !seen.insert(t.hyperplane.clone()) {
            out.push(format!("table {what} appears twice"));
        }
        for &p in t.primes.iter().chain(t.per_prime.iter().map(|(p, _)| p)) {
            if !is_prime(p) || !g.group_order.is_multiple_of(p) {
                out.push(format!("table {what}: {p} is not a prime divisor of {}", g.group_order));
            }
        }
        if let Some(base) = g.baseline() {
            if !base.blocks.refines(&t.blocks) {
                out.push(format!("table {what} does not coarsen the table without hyperplane"));
            }
        }
    }
    out
}

/// Link checks that only need the parent.
fn check_link_shape(g: &GroupDatum, l: &CliffordLink) -> Vec<String> {
    let mut out = Vec::new();
    let name = format!("link {} -> {}", g.name, l.child);
    if l.parameter_spec.len() != g.slot_count() {
        out.push(format!("{name}: {} parameter images for {} slots", l.parameter_spec.len(), g.slot_count()));
    }
    let mut targets: Vec<usize> = l
        .parameter_spec
        .iter()
        .filter_map(|p| match p {
            ParamImage::Child(t) => Some(*t),
            ParamImage::Fixed(_) => None,
        })
        .collect();
    targets.sort_unstable();
    if targets.iter().enumerate().any(|(i, &t)| i != t) {
        out.push(format!("{name}: child slots {targets:?} are not a permutation"));
    }
    for p in &l.parameter_spec {
        if let ParamImage::Fixed(r) = p {
            if !l.cyclic_order.is_multiple_of(r.order()) {
                out.push(format!(
                    "{name}: fixed root of order {} for a cyclic group of order {}",
                    r.order(),
                    l.cyclic_order
                ));
            }
        }
    }
    let mut owner: BTreeMap<String, String> = BTreeMap::new();
    for row in &l.induction {
        if row.parent.is_empty() || !l.cyclic_order.is_multiple_of(row.parent.len() as u64) {
            out.push(format!("{name}: row {} has {} constituents", row.child, row.parent.len()));
        }
        for p in &row.parent {
            if g.char_index(p).is_none() {
                out.push(format!("{name}: row {} names unknown character {p}", row.child));
            }
            if let Some(prev) = owner.insert(p.to_string(), row.child.to_string()) {
                out.push(format!("{name}: {p} lies in the rows of {prev} and {}", row.child));
            }
        }
    }
    out
}

/// Checks a link against its child: structure, Schur scaling and block transport.
pub fn check_link(parent: &GroupDatum, child: &GroupDatum, l: &CliffordLink) -> Vec<String> {
    let mut out = l.validate(parent, child);
    if !out.is_empty() || l.induction.is_empty() {
        return out;
    }
    for e in parent.schur.iter().flatten() {
        let Some(x) = &e.x else { continue };
        let Some(row) = l.induction.iter().find(|r| r.parent.contains(&e.v.char)) else { continue };
        let child_v =
            child.char_index(&row.child).and_then(|i| child.schur.get(i)).and_then(|s| s.as_ref()).map(|s| &s.v);
        out.extend(validate_schur_scaling(l, parent, child, e.v.char, x, child_v));
    }
    if parent.tables.is_empty() || child.tables.is_empty() {
        return out;
    }
    let name = format!("link {} -> {}", parent.name, child.name);
    let descended = match descend_hyperplanes(l, parent, child, &parent.tables) {
        Ok(d) => d,
        Err(e) => {
            out.push(format!("{name}: {e}"));
            return out;
        }
    };
    for t in &descended {
        let Some(stored) = child.tables.iter().find(|s| s.hyperplane == t.hyperplane) else {
            if let Some(h) = &t.hyperplane {
                out.push(format!(
                    "{name}: descended hyperplane {} is not stored for {}",
                    child.render_hyperplane(h),
                    child.name
                ));
            }
            continue;
        };
        if stored.blocks != t.blocks {
            let what = t.hyperplane.as_ref().map_or("no essential hyperplane".into(), |h| child.render_hyperplane(h));
            out.push(format!(
                "{name}: blocks at {what} transport to {} but {} stores {}",
                child.render_partition_names(&t.blocks),
                child.name,
                child.render_partition_names(&stored.blocks)
            ));
        }
    }
    if !parent.partial {
        for s in child.hyperplane_tables() {
            if !descended.iter().any(|t| t.hyperplane == s.hyperplane) {
                let h = s.hyperplane.as_ref().expect("hyperplane table");
                out.push(format!("{name}: {} has no parent hyperplane", child.render_hyperplane(h)));
            }
        }
    }
    out
}
