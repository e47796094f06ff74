//! Loading and writing group files.

use std::fs;
use std::path::{Path, PathBuf};

use rouquier_store::db::{collect_files, load, read_doc, serialize};
use rouquier_store::StoreError;
use serde_json::Value;

fn data() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data")
}

fn shipped() -> Vec<PathBuf> {
    collect_files(&[data()]).unwrap()
}

#[test]
fn every_shipped_file_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let files = shipped();
    assert_eq!(files.len(), 8);
    for f in files {
        let g = load(&f).unwrap_or_else(|e| panic!("{e}"));
        let text = serialize(&g);
        assert_eq!(serialize(&g), text, "serialization is deterministic");
        let out = dir.path().join(f.file_name().unwrap());
        fs::write(&out, &text).unwrap();
        let again = load(&out).unwrap();
        assert_eq!(serialize(&again), text, "{}", f.display());
    }
}

#[test]
fn serialized_form_matches_source_document() {
    // serialization drops nothing the source file states
    for f in shipped() {
        let g = load(&f).unwrap();
        let ours: Value = serde_json::from_str(&serialize(&g)).unwrap();
        let theirs: Value = serde_json::to_value(read_doc(&f).unwrap()).unwrap();
        for key in
            ["name", "field_conductor", "mu_order", "group_order", "orbits", "characters", "partial", "tables", "links"]
        {
            assert_eq!(ours[key], theirs[key], "{} {key}", f.display());
        }
        assert_eq!(ours["schur"].as_array().map(Vec::len), theirs["schur"].as_array().map(Vec::len));
    }
}

fn edited(name: &str, edit: impl FnOnce(&mut Value)) -> Result<rouquier::datum::GroupDatum, StoreError> {
    let mut doc: Value = serde_json::from_str(&fs::read_to_string(data().join(name)).unwrap()).unwrap();
    edit(&mut doc);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join(name);
    fs::write(&path, serde_json::to_string(&doc).unwrap()).unwrap();
    load(&path)
}

#[test]
fn overlapping_parts_are_rejected() {
    let err = edited("G4.json", |d| {
        d["tables"][1]["blocks"] = serde_json::json!([["phi{1,4}", "phi{1,8}"], ["phi{1,8}", "phi{2,5}"]]);
    })
    .unwrap_err();
    let msg = err.to_string();
    assert!(msg.contains("overlap in phi{1,8}"), "{msg}");
}

#[test]
fn malformed_documents_are_rejected() {
    assert!(matches!(edited("G4.json", |d| d["characters"][1] = "phi{1,0}".into()), Err(StoreError::Field { .. })));
    assert!(matches!(edited("G4.json", |d| d["colour"] = "red".into()), Err(StoreError::Parse { .. })));
    // a hyperplane that does not sum to zero on the orbit
    assert!(matches!(
        edited("G4.json", |d| d["tables"][1]["hyperplane"] = serde_json::json!([1, 1, -1])),
        Err(StoreError::Field { .. })
    ));
    // a prime that does not divide the group order
    assert!(matches!(
        edited("G4.json", |d| d["tables"][1]["primes"] = serde_json::json!([5])),
        Err(StoreError::Invalid { .. })
    ));
    // the table without hyperplane must refine the others
    assert!(matches!(
        edited("G4.json", |d| d["tables"][0]["blocks"] = serde_json::json!([["phi{1,0}", "phi{3,2}"]])),
        Err(StoreError::Invalid { .. })
    ));
    // first column of the character table must be the degrees
    assert!(matches!(
        edited("G4.json", |d| d["character_table"]["values"][6][0]["coeffs"] = serde_json::json!([2, 0])),
        Err(StoreError::Invalid { .. })
    ));
}

#[test]
fn unknown_group_is_reported_as_such() {
    let err = rouquier_store::db::load_group(&data(), "G37").unwrap_err();
    assert!(matches!(err, StoreError::UnknownGroup { .. }));
}
