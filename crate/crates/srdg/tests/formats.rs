use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use srdg::io::{parse_geo, parse_instance, parse_schedule, write_instance, write_schedule, IoError};
use srdg::sources::{parse_cnf, parse_graph, parse_intervals, write_cnf, write_graph, write_intervals, SourceError};
use srdg_core::generators::{assign_zones, random_small_instance, SmallParams, SmallShape, Zone};
use srdg_core::reductions::{random_formula223, SimpleGraph};
use srdg_core::Temporalization;

fn shape(i: u8) -> SmallShape {
    match i % 3 {
        0 => SmallShape::Path,
        1 => SmallShape::Star,
        _ => SmallShape::Tree,
    }
}

proptest! {
    #[test]
    fn instances_round_trip(seed in any::<u64>(), s in any::<u8>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let inst = random_small_instance(&mut rng, &SmallParams::new(shape(s)));
        let text = write_instance(&inst);
        let back = parse_instance(&text).unwrap();
        prop_assert_eq!(&back, &inst);
        prop_assert_eq!(write_instance(&back), text);
    }

    #[test]
    fn schedules_round_trip(horizon in 1i64..50, deps in prop::collection::vec(prop::collection::vec(1i64..50, 1..4), 0..5)) {
        let s = Temporalization::new(horizon, deps);
        prop_assert_eq!(parse_schedule(&write_schedule(&s)).unwrap(), s);
    }

    #[test]
    fn formulas_round_trip(seed in any::<u64>(), groups in 1usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_formula223(&mut rng, 3 * groups).unwrap();
        prop_assert_eq!(parse_cnf(&write_cnf(&f)).unwrap(), f);
    }
}

#[test]
fn unlimited_capacity_means_route_load() {
    let text = r#"{
      "tau": 5,
      "vertices": [{"id": "a", "capacity": "inf"}, {"id": "b", "capacity": 1}],
      "connections": [{"tail": "a", "head": "b", "kind": "arc", "theta": 1, "deadline": 5}],
      "paths": [["a", "b"], ["a", "b"], ["a", "b"]]
    }"#;
    let inst = parse_instance(text).unwrap();
    assert_eq!(inst.graph().vertices()[0].capacity, 3);
    assert!(matches!(
        parse_instance(&text.replace("\"inf\"", "\"lots\"")),
        Err(IoError::Capacity(_))
    ));
}

#[test]
fn malformed_documents_are_rejected() {
    let good = r#"{
      "tau": 5,
      "vertices": [{"id": "a", "capacity": 1}, {"id": "b", "capacity": 1}],
      "connections": [{"tail": "a", "head": "b", "kind": "edge", "theta": 1, "deadline": 5}],
      "paths": [["a", "b"]]
    }"#;
    assert!(parse_instance(good).is_ok());
    for bad in [
        good.replace("\"tau\": 5,", "\"tau\": 5, \"extra\": 1,"),
        good.replace("\"kind\": \"edge\"", "\"kind\": \"road\""),
        good.replace("[[\"a\", \"b\"]]", "[[\"a\", \"c\"]]"),
        good.replace("\"deadline\": 5", "\"deadline\": 9"),
        good.replace("\"theta\": 1", "\"theta\": 5"),
    ] {
        assert!(parse_instance(&bad).is_err(), "{bad}");
    }
    assert!(parse_schedule("{\"horizon\": 3}").is_err());
}

#[test]
fn source_formats_round_trip() {
    let g = SimpleGraph::cube();
    assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
    let src = parse_intervals("# two classes\n1 1 2\n1 4 5\n2 2 3\n").unwrap();
    assert_eq!(src.classes().len(), 2);
    assert_eq!(parse_intervals(&write_intervals(&src)).unwrap(), src);
}

#[test]
fn source_errors_carry_line_numbers() {
    match parse_graph("p edge 2 1\ne 1 x\n") {
        Err(SourceError::Syntax { line, .. }) => assert_eq!(line, 2),
        other => panic!("{other:?}"),
    }
    assert!(matches!(parse_graph("e 1 2\n"), Err(SourceError::Header(_))));
    assert!(matches!(parse_graph("p edge 2 2\ne 1 2\n"), Err(SourceError::Count { .. })));
    assert!(matches!(parse_graph("p edge 2 1\ne 1 1\n"), Err(SourceError::Reduction(_))));
    assert!(parse_cnf("p cnf 3 1\n1 2 0\n").is_err());
    assert!(parse_intervals("0 1 2\n").is_err());
}

#[test]
fn geo_documents_feed_zone_assignment() {
    let text = r#"{
      "vertices": [{"id": "near", "x": 0, "y": 100}, {"id": "far", "x": 0, "y": 1500}],
      "connections": [{"tail": "near", "head": "far", "length_m": 1400, "oneway": false}],
      "rivers": [[{"x": -1000, "y": 0}, {"x": 1000, "y": 0}]]
    }"#;
    let geo = parse_geo(text).unwrap();
    assert_eq!(assign_zones(&geo), vec![Zone::Zero, Zone::C]);
    assert!(parse_geo(&text.replace("\"tail\": \"near\"", "\"tail\": \"nowhere\"")).is_err());
}
