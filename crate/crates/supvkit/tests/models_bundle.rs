//! The bundled model documents regenerate bit-identically from the
//! in-code builders. Set SUPVKIT_WRITE_MODELS=1 to rewrite the files
//! after changing a model.

use std::path::PathBuf;

use supvkit::format::{parse, serialize, AutomatonDocument};
use supvkit::{des_isomorphic, models, supcon};

fn models_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../models")
}

fn bundle() -> Vec<(&'static str, AutomatonDocument)> {
    let tl = models::transfer_line();
    let gw = models::guideway();
    let c1 = supcon(&tl.plant, &tl.spec).unwrap();
    let c3 = supcon(&gw.plant, &gw.spec).unwrap();
    vec![
        ("m1", AutomatonDocument::from_automaton("m1", &tl.m1)),
        ("m2", AutomatonDocument::from_automaton("m2", &tl.m2)),
        ("tu", AutomatonDocument::from_automaton("tu", &tl.tu)),
        ("b1", AutomatonDocument::from_automaton("b1", &tl.b1)),
        ("b2", AutomatonDocument::from_automaton("b2", &tl.b2)),
        (
            "transfer_g",
            AutomatonDocument::from_automaton("transfer_g", &tl.plant),
        ),
        (
            "transfer_e",
            AutomatonDocument::from_automaton("transfer_e", &tl.spec),
        ),
        (
            "transfer_c1",
            AutomatonDocument::from_automaton("transfer_c1", c1.automaton()),
        ),
        (
            "guideway_v1",
            AutomatonDocument::from_automaton("guideway_v1", &gw.v1),
        ),
        (
            "guideway_v2",
            AutomatonDocument::from_automaton("guideway_v2", &gw.v2),
        ),
        (
            "guideway_g",
            AutomatonDocument::from_automaton("guideway_g", &gw.plant),
        ),
        (
            "guideway_e",
            AutomatonDocument::from_automaton("guideway_e", &gw.spec),
        ),
        (
            "guideway_c3",
            AutomatonDocument::from_automaton("guideway_c3", c3.automaton()),
        ),
    ]
}

#[test]
fn bundled_documents_regenerate_bit_identically() {
    let dir = models_dir();
    let write = std::env::var("SUPVKIT_WRITE_MODELS").is_ok();
    for (name, doc) in bundle() {
        let path = dir.join(format!("{name}.json"));
        let text = serialize(&doc);
        if write {
            std::fs::write(&path, &text).unwrap();
            continue;
        }
        let on_disk = std::fs::read_to_string(&path)
            .unwrap_or_else(|e| panic!("missing bundled model {}: {e}", path.display()));
        assert_eq!(on_disk, text, "bundled model {name} drifted");
        // and the document round-trips onto the same machine
        let parsed = parse(&on_disk).unwrap();
        let rebuilt = parsed.to_automaton().unwrap();
        assert!(des_isomorphic(&rebuilt, &doc.to_automaton().unwrap()).holds());
    }
}
