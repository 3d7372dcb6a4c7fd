//! Golden values for the shipped fixtures and id-for-id round trips.

use std::fs;
use std::path::{Path, PathBuf};

use ticketry::fares::Price;
use ticketry::instance::{Instance, InstanceDocument, McsipDocument};
use ticketry::routing::{cheapest_path, mcsip_to_mzp, mzp_exact, RouteOptions};

fn dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn load(name: &str) -> Instance {
    InstanceDocument::read(&dir().join(name)).unwrap().build().unwrap()
}

fn query_price(inst: &Instance) -> Option<Price> {
    let ids = inst.query.as_ref()?.walk.clone()?;
    let refs: Vec<&str> = ids.iter().map(String::as_str).collect();
    let w = inst.network.resolve_walk(&refs).unwrap();
    Some(inst.fare().unwrap().price(&inst.network, &w).unwrap())
}

fn route_price(inst: &Instance) -> Price {
    let q = inst.query.as_ref().unwrap();
    let ptn = &inst.network.ptn;
    let x = ptn.index_of(q.from.as_deref().unwrap()).unwrap();
    let y = ptn.index_of(q.to.as_deref().unwrap()).unwrap();
    cheapest_path(inst.fare().unwrap(), &inst.network, x, y, &RouteOptions::default())
        .unwrap()
        .price
}

const INF: f64 = f64::INFINITY;

// (file, price of the query walk, cheapest path price)
const GOLDEN: &[(&str, f64, f64)] = &[
    ("beeline_elongation.toml", 5.0, 5.0),
    ("bounded_distance.toml", 5.0, 5.0),
    ("combined_zone_distance.toml", 4.0, 4.0),
    ("flat.toml", 3.0, 3.0),
    ("metropolitan_chain.toml", 4.0, 4.0),
    ("metropolitan_compound_saving.toml", 6.0, 6.0),
    ("metropolitan_dmax.toml", f64::NAN, 2.0),
    ("no_double_detour.toml", f64::NAN, 2.0),
    ("overlap_assignment.toml", 2.0, 2.0),
    ("overlap_split_gadget.toml", 5.0, 5.0),
    ("overlaps_resolved.toml", f64::NAN, 2.0),
    ("short_distance.toml", INF, 1.5),
    ("ticket_kinds.toml", 8.0, 7.0),
    ("zone_chain_one_two_five.toml", 5.0, 5.0),
    ("zone_count_empty_zone.toml", 3.0, 2.0),
    ("zone_count_same_zone_ends.toml", 3.0, 3.0),
    ("zone_count_three_zones.toml", 3.0, 3.0),
    ("zone_short_distance.toml", 6.0, 6.0),
];

#[test]
fn golden_prices() {
    for &(name, walk, route) in GOLDEN {
        let inst = load(name);
        match query_price(&inst) {
            Some(p) => assert_eq!(p, Price::from_f64(walk), "{name}: query walk"),
            None => assert!(walk.is_nan(), "{name}: missing query walk"),
        }
        assert_eq!(route_price(&inst), Price::from_f64(route), "{name}: cheapest path");
    }
}

#[test]
fn every_fixture_has_a_golden_entry() {
    let mut files: Vec<String> = fs::read_dir(dir())
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .filter(|f| f.ends_with(".toml") && !f.ends_with(".mcsip.toml"))
        .collect();
    files.sort();
    let golden: Vec<&str> = GOLDEN.iter().map(|g| g.0).collect();
    assert_eq!(files, golden);
}

#[test]
fn fixtures_round_trip_id_for_id() {
    for &(name, ..) in GOLDEN {
        let doc = InstanceDocument::read(&dir().join(name)).unwrap();
        let again = InstanceDocument::parse(&doc.to_toml().unwrap()).unwrap();
        assert_eq!(doc, again, "{name}");
        let (a, b) = (doc.build().unwrap(), again.build().unwrap());
        assert_eq!(a.network.ptn.nodes(), b.network.ptn.nodes(), "{name}");
        assert_eq!(a.network.ptn.edges(), b.network.ptn.edges(), "{name}");
        assert_eq!(a.network.zones, b.network.zones, "{name}");
        assert_eq!(a.fare, b.fare, "{name}");
        // serializing the built network reproduces the expanded network exactly
        let expanded = InstanceDocument::from_network(&a.network, a.fare.as_ref(), a.query.clone());
        let c = expanded.build().unwrap();
        assert_eq!(a.network.ptn.nodes(), c.network.ptn.nodes(), "{name}");
        assert_eq!(a.network.zones, c.network.zones, "{name}");
    }
}

#[test]
fn colored_graph_reduction() {
    let text = fs::read_to_string(dir().join("colored_graph.mcsip.toml")).unwrap();
    let doc = McsipDocument::parse(&text).unwrap();
    assert_eq!(McsipDocument::parse(&doc.to_toml().unwrap()).unwrap(), doc);
    let inst = doc.build().unwrap();
    let red = mcsip_to_mzp(&inst).unwrap();
    assert_eq!(red.zone_budget, 3);
    assert_eq!(red.network.ptn.node_count(), 4 + 5);
    assert_eq!(red.network.ptn.edge_count(), 2 * 5);
    // s-b-t uses green only
    let sol = mzp_exact(&red.network, red.source, red.target, 10_000).unwrap();
    assert_eq!(sol.zone_count, 2);
}
