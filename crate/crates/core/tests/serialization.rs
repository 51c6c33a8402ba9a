//! JSON shapes of the public report types, pinned so downstream parsers
//! can rely on them.

use serde_json::{json, Value};

use defdatum::algebra::{Field, Polynomial, RationalFunction};
use defdatum::dessins::build_tree;
use defdatum::forms::{goodness, DifferentialForm, EquivariantContext};
use defdatum::search::{search_good_deformation, SearchOptions};
use defdatum::types::{decide_lifting, LiftedType, ResidueType};

#[test]
fn tree_schema() {
    let tree = build_tree(&LiftedType::new(vec![3, -1, -1, -1]).unwrap()).unwrap();
    let value = serde_json::to_value(&tree).unwrap();
    assert_eq!(
        value,
        json!({
            "vertices": [
                {"id": 0, "color": "black"},
                {"id": 1, "color": "white"},
                {"id": 2, "color": "white"},
                {"id": 3, "color": "white"},
            ],
            "edges": [
                {"black": 0, "white": 1, "weight": 1},
                {"black": 0, "white": 2, "weight": 1},
                {"black": 0, "white": 3, "weight": 1},
            ],
            "rotation": {"0": [0, 1, 2], "1": [0], "2": [1], "3": [2]},
        })
    );
}

#[test]
fn goodness_report_is_flat() {
    let f5 = Field::prime(5).unwrap();
    let w = DifferentialForm::new(RationalFunction::new(
        Polynomial::from_residues(&f5, &[4]),
        Polynomial::from_residues(&f5, &[0, -1, 0, 0, 0, 1]),
    ))
    .unwrap();
    let ctx = EquivariantContext::new(&f5, 4).unwrap();
    let report = goodness(&w, &ctx).unwrap();
    let value = serde_json::to_value(&report).unwrap();
    assert_eq!(value["is_good"], true);
    assert_eq!(value["zero_location"], "inf");
    assert_eq!(value["conductor_h"], 4);
    assert_eq!(value["primitive"], false);
    assert_eq!(value["exponent"], 0);
    assert_eq!(value["residue_type"]["entries"], json!([1, 1]));
    assert!(value.get("failure").is_none());
}

#[test]
fn elements_serialize_per_wire_format() {
    // Prime-field elements are bare numbers; extension elements are
    // coefficient arrays.
    let f7 = Field::prime(7).unwrap();
    assert_eq!(serde_json::to_value(f7.from_residue(3)).unwrap(), json!(3));
    let f49 = Field::extension(7, 2).unwrap();
    let u = f49.from_coeffs(&[2, 5]).unwrap();
    assert_eq!(serde_json::to_value(&u).unwrap(), json!([2, 5]));
}

#[test]
fn search_report_schema() {
    let a = ResidueType::new(7, 1, &[1, 1, 5]).unwrap();
    let report = search_good_deformation(&a, 1, &SearchOptions::default()).unwrap();
    let value = serde_json::to_value(&report).unwrap();
    assert_eq!(value["p"], 7);
    assert_eq!(value["m"], 1);
    assert_eq!(value["residue_type"], json!([1, 1, 5]));
    assert_eq!(value["exhaustive"], true);
    assert!(value["solutions"].is_array());
    for solution in value["solutions"].as_array().unwrap() {
        assert!(solution["poles"].is_array());
    }
    assert!(value["orbit_count"].as_u64().unwrap() >= 1);
}

#[test]
fn lifting_verdict_schema() {
    let verdict = decide_lifting(7, 3, 6).unwrap();
    let value = serde_json::to_value(&verdict).unwrap();
    assert_eq!(
        value,
        json!({"lifts": true, "reason": "cyclic_case", "p": 7, "m": 3, "h": 6})
    );
}

#[test]
fn report_rendering_is_deterministic() {
    let a = ResidueType::new(5, 1, &[1, 1, 4, 4]).unwrap();
    let render = || {
        let report = search_good_deformation(&a, 2, &SearchOptions::default()).unwrap();
        serde_json::to_string(&report).unwrap()
    };
    assert_eq!(render(), render());
}

#[test]
fn field_reports_its_modulus() {
    let f81: Value = serde_json::to_value(Field::extension(3, 4).unwrap()).unwrap();
    assert_eq!(f81["p"], 3);
    assert_eq!(f81["d"], 4);
    let modulus = f81["modulus"].as_array().unwrap();
    assert_eq!(modulus.len(), 5);
    assert_eq!(modulus[4], 1);
}
