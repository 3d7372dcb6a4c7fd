//! Acceptance criteria 1 to 6, one PASS/FAIL line each. Every comparison is exact:
//! prices are sums of half-integers and integer lengths, so floating point equality is
//! the pinned tolerance (zero).

use std::collections::{HashMap, HashSet};
use std::path::Path;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::Rng;
use ticketry::fares::{
    zone_count_basic, zone_count_no_double, zone_count_zoa, FareSystem, Price, PriceFunction, ShortDistance,
};
use ticketry::instance::{Instance, InstanceDocument};
use ticketry::network::{Network, NodeIx, Ptn, TicketRules, Walk};
use ticketry::routing::{
    cheapest_path, cheapest_path_no_double_connected, cheapest_path_one_disconnected, compute_d_max,
    mcsip_to_mzp, mzp_exact, short_distance_path, McsipInstance, RouteOptions,
};
use ticketry::verify::random::{random_network, random_prices, rng, NetworkParams, PriceFamily, TestRng};
use ticketry::verify::{
    brute_force_cheapest_ticket, check_no_elongation, check_no_stopover, check_no_stopover_filtered,
    condition_eq2, condition_metropolitan, condition_zoa, condition_zsd, for_each_walk, gadget_from_violation,
    metropolitan_within, zsd_horizon, EnumBudget, Violation,
};

type Check = std::result::Result<String, String>;

fn main() -> ExitCode {
    let criteria: [(u8, &str, Option<u64>, fn() -> Check); 6] = [
        (1, "worked examples", Some(1), worked_examples),
        (2, "oracle equivalence", Some(60), oracle_equivalence),
        (3, "condition consistency", Some(120), condition_consistency),
        (4, "zone-count cross-validation", Some(60), zone_count_cross_validation),
        (5, "hop-bounded short-distance paths", Some(10), hop_bounded_paths),
        (6, "property transfer", None, property_transfer),
    ];
    // optional arguments pick criteria by number
    let picked: Vec<u8> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for (n, name, limit, run) in criteria {
        if !picked.is_empty() && !picked.contains(&n) {
            continue;
        }
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(_), Some(s)) if took > Duration::from_secs(s) => Err(format!("took {took:.2?}, limit {s} s")),
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => println!("criterion {n} {name}: PASS ({detail}; {took:.2?})"),
            Err(why) => {
                failed += 1;
                println!("criterion {n} {name}: FAIL ({why}; {took:.2?})");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn fixture(name: &str) -> Instance {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name);
    InstanceDocument::read(&path)
        .and_then(|d| d.build())
        .unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn walk(net: &Network, ids: &[&str]) -> Walk {
    net.resolve_walk(ids).expect("fixture walk")
}

fn price(fs: &FareSystem, net: &Network, ids: &[&str]) -> Price {
    fs.price(net, &walk(net, ids)).expect("priceable")
}

fn fin(v: f64) -> Price {
    Price::Finite(v)
}

fn half(r: &mut TestRng, hi: u32) -> f64 {
    f64::from(r.gen_range(0..=hi)) / 2.0
}

// ---------------------------------------------------------------- criterion 1

fn worked_examples() -> Check {
    for name in [
        "zone_count_three_zones.toml",
        "zone_count_empty_zone.toml",
        "zone_count_same_zone_ends.toml",
    ] {
        let inst = fixture(name);
        let net = &inst.network;
        let ids = inst.query.as_ref().and_then(|q| q.walk.clone()).expect("query walk");
        let refs: Vec<&str> = ids.iter().map(String::as_str).collect();
        let z = zone_count_basic(net.zones().unwrap(), &walk(net, &refs));
        ensure(z == 3, || format!("{name}: z = {z}, expected 3"))?;
    }

    let inst = fixture("beeline_elongation.toml");
    let (fs, net) = (inst.fare().unwrap(), &inst.network);
    let standard = price(fs, net, &["x1", "x2"]);
    let elongated = price(fs, net, &["x1", "x2", "x3"]);
    ensure(standard == fin(5.0) && elongated == fin(4.0), || {
        format!("beeline: standard {standard}, elongated {elongated}, expected 5 and 4")
    })?;
    let report = check_no_elongation(fs, net, EnumBudget::default()).unwrap();
    ensure(!report.holds, || "beeline: no-elongation reported as holding".into())?;

    let inst = fixture("metropolitan_compound_saving.toml");
    let (fs, net) = (inst.fare().unwrap(), &inst.network);
    let all = ["x1", "x2", "x3", "x4", "x5", "x6"];
    let standard = price(fs, net, &all);
    let compound = price(fs, net, &all[..2]) + price(fs, net, &all[1..]);
    ensure(standard == fin(6.0) && compound == fin(4.0), || {
        format!("metropolitan: standard {standard}, compound {compound}, expected 6 and 4")
    })?;
    let (x1, x6) = (net.ptn.index_of("x1").unwrap(), net.ptn.index_of("x6").unwrap());
    let best = brute_force_cheapest_ticket(fs, net, x1, x6, EnumBudget::default()).unwrap();
    ensure(best.price == fin(4.0), || format!("metropolitan: oracle price {}", best.price))?;

    let inst = fixture("metropolitan_dmax.toml");
    let d = compute_d_max(&inst.network).unwrap();
    ensure(d == 4, || format!("D_max = {d}, expected 4"))?;

    let inst = fixture("overlap_assignment.toml");
    let net = &inst.network;
    let walks: [&[&str]; 4] = [
        &["x1", "x2", "x3"],
        &["x4", "x2", "x5"],
        &["x1", "x2", "x5"],
        &["x1", "x2", "x3", "x4", "x2", "x5"],
    ];
    let counts: Vec<usize> = walks
        .iter()
        .map(|ids| zone_count_zoa(net.zones().unwrap(), &walk(net, ids)))
        .collect();
    ensure(counts == [1, 1, 2, 2], || format!("overlap counts {counts:?}, expected [1, 1, 2, 2]"))?;

    let inst = fixture("combined_zone_distance.toml");
    let (fs, net) = (inst.fare().unwrap(), &inst.network);
    let FareSystem::Combined(p1, p2) = fs else {
        return Err("combined fixture is not a combination".into());
    };
    let parts: [&[&str]; 3] = [&["x1", "x2"], &["x2", "x3"], &["x1", "x2", "x3"]];
    let row = |f: &FareSystem| parts.iter().map(|w| price(f, net, w)).collect::<Vec<_>>();
    let table = [row(p1), row(p2), row(fs)];
    let expected = [[1.0, 4.0, 4.0], [2.0, 2.0, 4.0], [1.0, 2.0, 4.0]].map(|r| r.map(fin).to_vec());
    ensure(table == expected, || format!("combined table {table:?}"))?;
    let split = table[2][0] + table[2][1];
    ensure(split == fin(3.0) && split < table[2][2], || format!("combined split {split}"))?;
    let report = check_no_stopover(fs, net, EnumBudget::default()).unwrap();
    ensure(!report.holds, || "combined: no-stopover reported as holding".into())?;

    Ok("6 examples reproduced".into())
}

// ---------------------------------------------------------------- criterion 2

struct Case {
    fare: FareSystem,
    net: Network,
}

fn params() -> NetworkParams {
    NetworkParams {
        stations: 4..=7,
        extra_edges: 0..=2,
        zones: 2..=4,
        empty_zones: 0..=1,
        ..NetworkParams::default()
    }
}

fn short_distance(r: &mut TestRng) -> ShortDistance {
    let stations = r.gen_bool(0.7).then(|| r.gen_range(1..=3));
    let length = (stations.is_none() || r.gen_bool(0.5)).then(|| f64::from(r.gen_range(2..=8)));
    ShortDistance::new(half(r, 8), stations, length).expect("valid short-distance bounds")
}

fn increasing(r: &mut TestRng) -> PriceFunction {
    let family = [PriceFamily::Affine, PriceFamily::Concave, PriceFamily::Increasing][r.gen_range(0..3)];
    random_prices(r, family)
}

/// One instance per fare variant, each on a network shaped for it.
fn variant_cases(r: &mut TestRng) -> Vec<(&'static str, Case)> {
    let base = params();
    let forbid = TicketRules {
        forbid_virtual_endpoints: true,
    };
    let net = |p: &NetworkParams, r: &mut TestRng| random_network(r, p);
    let mut cases = Vec::new();
    let n = net(&base, r);
    cases.push(("distance", Case { fare: FareSystem::Distance { fixed: half(r, 4), per_km: half(r, 4) }, net: n }));
    let coords = NetworkParams { coordinates: true, empty_zones: 0..=0, ..params() };
    let n = net(&coords, r);
    cases.push(("beeline", Case { fare: FareSystem::Beeline { fixed: half(r, 4), per_km: half(r, 4) }, net: n }));
    let n = net(&base, r);
    cases.push(("flat", Case { fare: FareSystem::Flat { price: half(r, 6) }, net: n }));
    let n = net(&base, r);
    cases.push(("basic-zone", Case { fare: FareSystem::BasicZone { prices: increasing(r) }, net: n }));
    let metro = NetworkParams { metropolitan: true, ..params() };
    let n = net(&metro, r);
    let prices = increasing(r);
    cases.push(("metropolitan", Case { fare: FareSystem::Metropolitan { prices, metro_price: half(r, 8) }, net: n }));
    let cover = NetworkParams { overlap: 0.3, empty_zones: 0..=0, ..params() };
    let n = net(&cover, r);
    cases.push(("overlap", Case { fare: FareSystem::Overlap { prices: increasing(r) }, net: n }));
    let n = net(&base, r);
    cases.push(("no-double-counting", Case { fare: FareSystem::NoDoubleCounting { prices: increasing(r) }, net: n }));
    let n = net(&base, r);
    cases.push(("short-distance", Case { fare: FareSystem::ShortDistance(short_distance(r)), net: n }));
    let n = net(&base, r);
    let fare = FareSystem::bounded_distance(half(r, 4), half(r, 4), half(r, 16));
    cases.push(("bounded-distance", Case { fare, net: n }));
    let n = net(&base, r).with_rules(forbid);
    let fare = FareSystem::zsd(increasing(r), short_distance(r));
    cases.push(("zone-short-distance", Case { fare, net: n }));
    cases
}

fn two_stations(r: &mut TestRng, ptn: &Ptn) -> (NodeIx, NodeIx) {
    let stations: Vec<NodeIx> = ptn.stations().collect();
    let x = stations[r.gen_range(0..stations.len())];
    let rest: Vec<NodeIx> = stations.iter().copied().filter(|&v| v != x).collect();
    (x, rest[r.gen_range(0..rest.len())])
}

fn oracle_equivalence() -> Check {
    let instances = 200;
    let mut compared: HashMap<&str, usize> = HashMap::new();
    for seed in 0..instances {
        let mut r = rng(seed);
        for (name, case) in variant_cases(&mut r) {
            let (fs, net) = (&case.fare, &case.net);
            let n = net.ptn.node_count();
            // checks cover every segment the oracle can form from simple walks
            let check_budget = EnumBudget::new(n + 1, 2, 1).unwrap();
            let oracle_budget = EnumBudget::new(n - 1, 2, 1).unwrap();
            let (x, y) = two_stations(&mut r, &net.ptn);
            let holds = check_no_stopover(fs, net, check_budget).map_err(|e| e.to_string())?.holds
                && check_no_elongation(fs, net, check_budget).map_err(|e| e.to_string())?.holds;
            if !holds {
                continue;
            }
            let route = cheapest_path(fs, net, x, y, &RouteOptions::default())
                .map_err(|e| format!("seed {seed} {name}: routing failed: {e}"))?;
            let oracle = brute_force_cheapest_ticket(fs, net, x, y, oracle_budget)
                .map_err(|e| format!("seed {seed} {name}: oracle failed: {e}"))?;
            ensure(route.price == oracle.price, || {
                format!(
                    "seed {seed} {name}: route {} ({}) vs oracle {}",
                    route.price,
                    route.walk.display(&net.ptn),
                    oracle.price
                )
            })?;
            *compared.entry(name).or_default() += 1;
        }
    }
    let mut counts: Vec<_> = compared.into_iter().collect();
    counts.sort();
    let total: usize = counts.iter().map(|c| c.1).sum();
    let listed: Vec<String> = counts.iter().map(|(k, v)| format!("{k} {v}")).collect();
    Ok(format!("{instances} instances, {total} agreeing comparisons: {}", listed.join(", ")))
}

// ---------------------------------------------------------------- criterion 3

struct Tally {
    holds: usize,
    fails: usize,
}

impl Tally {
    fn new() -> Self {
        Tally { holds: 0, fails: 0 }
    }

    fn show(&self, name: &str) -> String {
        format!("{name} {}+{}", self.holds, self.fails)
    }
}

const SAMPLES: u64 = 100;

fn budget7() -> EnumBudget {
    EnumBudget::new(7, 2, 1).unwrap()
}

/// Runs the checker on the gadget with a budget that just covers its walk.
fn gadget_violates(v: &Violation, fare: impl Fn(&Network) -> FareSystem) -> Result<bool, String> {
    let g = gadget_from_violation(v).map_err(|e| e.to_string())?;
    let fs = fare(&g.network);
    let budget = EnumBudget::new(g.walk.edge_count(), 2, 1).unwrap();
    let report = check_no_stopover(&fs, &g.network, budget).map_err(|e| e.to_string())?;
    Ok(!report.holds)
}

fn condition_consistency() -> Check {
    let mut summary = Vec::new();

    // basic zone: any price function
    let mut t = Tally::new();
    for seed in 0..SAMPLES {
        let mut r = rng(1_000 + seed);
        let family = PriceFamily::ALL[r.gen_range(0..4)];
        let prices = random_prices(&mut r, family);
        let c = condition_eq2(&prices, prices.default_horizon());
        let fs = FareSystem::BasicZone { prices };
        match c.witness {
            None => {
                t.holds += 1;
                let net = random_network(&mut r, &params());
                let report = check_no_stopover(&fs, &net, budget7()).map_err(|e| e.to_string())?;
                ensure(report.holds, || format!("basic zone seed {seed}: condition holds, checker disagrees"))?;
            }
            Some(w) => {
                t.fails += 1;
                let found = gadget_violates(&Violation::Eq2(w), |_| fs.clone())?;
                ensure(found, || format!("basic zone seed {seed}: gadget shows no violation"))?;
            }
        }
    }
    summary.push(t.show("basic-zone"));

    // metropolitan zone: increasing P meeting the zone-split condition
    let mut t = Tally::new();
    let mut seed = 0;
    while t.holds + t.fails < SAMPLES as usize {
        seed += 1;
        let mut r = rng(2_000 + seed);
        let prices = increasing(&mut r);
        if !condition_eq2(&prices, prices.default_horizon()).holds() {
            continue;
        }
        let pm = half(&mut r, 8);
        let net = random_network(&mut r, &NetworkParams { metropolitan: true, ..params() });
        let d = compute_d_max(&net).map_err(|e| e.to_string())?;
        let c = condition_metropolitan(&prices, pm, d, prices.default_horizon() + d);
        let fs = FareSystem::Metropolitan { prices, metro_price: pm };
        match c.witness {
            None => {
                t.holds += 1;
                let report = check_no_stopover_filtered(&fs, &net, budget7(), metropolitan_within(&net, d))
                    .map_err(|e| e.to_string())?;
                ensure(report.holds, || format!("metropolitan seed {seed}: condition holds, checker disagrees"))?;
            }
            Some(w) => {
                t.fails += 1;
                let found = gadget_violates(&Violation::Metropolitan(w), |_| fs.clone())?;
                ensure(found, || format!("metropolitan seed {seed}: gadget shows no violation"))?;
            }
        }
    }
    summary.push(t.show("metropolitan"));

    // overlap areas: increasing P, condition is subadditivity
    let mut t = Tally::new();
    for seed in 0..SAMPLES {
        let mut r = rng(3_000 + seed);
        let family = [PriceFamily::Concave, PriceFamily::Increasing][r.gen_range(0..2)];
        let prices = random_prices(&mut r, family);
        let c = condition_zoa(&prices, prices.default_horizon());
        let fs = FareSystem::Overlap { prices };
        match c.witness {
            None => {
                t.holds += 1;
                let cover = NetworkParams { overlap: 0.4, empty_zones: 0..=0, ..params() };
                let net = random_network(&mut r, &cover);
                let report = check_no_stopover(&fs, &net, budget7()).map_err(|e| e.to_string())?;
                ensure(report.holds, || format!("overlap seed {seed}: condition holds, checker disagrees"))?;
            }
            Some(w) => {
                t.fails += 1;
                let found = gadget_violates(&Violation::ZoaSubadditivity(w), |_| fs.clone())?;
                ensure(found, || format!("overlap seed {seed}: gadget shows no violation"))?;
            }
        }
    }
    summary.push(t.show("overlap"));

    // no double counting: increasing P, condition is the zone-split inequality
    let mut t = Tally::new();
    for seed in 0..SAMPLES {
        let mut r = rng(4_000 + seed);
        let prices = increasing(&mut r);
        let c = condition_eq2(&prices, prices.default_horizon());
        let fs = FareSystem::NoDoubleCounting { prices };
        match c.witness {
            None => {
                t.holds += 1;
                let net = random_network(&mut r, &params());
                let report = check_no_stopover(&fs, &net, budget7()).map_err(|e| e.to_string())?;
                ensure(report.holds, || format!("no-double seed {seed}: condition holds, checker disagrees"))?;
            }
            Some(w) => {
                t.fails += 1;
                let found = gadget_violates(&Violation::Eq2(w), |_| fs.clone())?;
                ensure(found, || format!("no-double seed {seed}: gadget shows no violation"))?;
            }
        }
    }
    summary.push(t.show("no-double-counting"));

    // zone tariff with short-distance option, virtual nodes never endpoints
    let mut t = Tally::new();
    for seed in 0..SAMPLES {
        let mut r = rng(5_000 + seed);
        let prices = increasing(&mut r);
        let sd = short_distance(&mut r);
        let c = condition_zsd(&prices, sd.price, sd.max_stations, zsd_horizon(&prices, sd.price));
        let fs = FareSystem::zsd(prices, sd.clone());
        match c.first_violation() {
            None => {
                t.holds += 1;
                let net = random_network(&mut r, &params()).with_rules(TicketRules {
                    forbid_virtual_endpoints: true,
                });
                let report = check_no_stopover(&fs, &net, budget7()).map_err(|e| e.to_string())?;
                ensure(report.holds, || format!("zone/short seed {seed}: condition holds, checker disagrees"))?;
            }
            Some(witness) => {
                t.fails += 1;
                let v = Violation::Zsd { witness, short: sd };
                let found = gadget_violates(&v, |_| fs.clone())?;
                ensure(found, || format!("zone/short seed {seed}: gadget for {witness:?} shows no violation"))?;
            }
        }
    }
    summary.push(t.show("zone-short-distance"));

    Ok(format!("holds+fails per family: {}", summary.join(", ")))
}

// ---------------------------------------------------------------- criterion 4

fn zone_count_cross_validation() -> Check {
    let partition = NetworkParams { stations: 5..=8, zones: 2..=4, ..params() };
    let mut connected = 0;
    let mut one_disconnected = 0;
    let mut seed = 0u64;
    while connected < 100 || one_disconnected < 100 {
        seed += 1;
        ensure(seed < 100_000, || "could not generate enough instances".into())?;
        let mut r = rng(6_000_000 + seed);
        let net = random_network(&mut r, &partition);
        let zones = net.zones().unwrap();
        let split = zones.zone_components(&net.ptn).iter().filter(|&&c| c > 1).count();
        if split > 1 || (split == 0 && connected >= 100) || (split == 1 && one_disconnected >= 100) {
            continue;
        }
        let (x, y) = two_stations(&mut r, &net.ptn);
        let exact = mzp_exact(&net, x, y, 1_000_000).map_err(|e| e.to_string())?;
        let fast = if split == 0 {
            connected += 1;
            cheapest_path_no_double_connected(&net, x, y)
        } else {
            one_disconnected += 1;
            cheapest_path_one_disconnected(&net, x, y)
        }
        .map_err(|e| e.to_string())?;
        let recount = zone_count_no_double(zones, &fast.walk);
        ensure(fast.zone_count == exact.zone_count && recount == fast.zone_count, || {
            format!(
                "seed {seed}: fast {} (recount {recount}) vs exact {}",
                fast.zone_count, exact.zone_count
            )
        })?;
    }

    let mut colored = 0usize;
    let mut queries = 0usize;
    for (n, edges) in connected_graphs(6) {
        for coloring in set_partitions(edges.len()) {
            colored += 1;
            let names: Vec<String> = (0..n).map(|v| format!("v{v}")).collect();
            let colored_edges: Vec<(usize, usize, String)> = edges
                .iter()
                .zip(&coloring)
                .map(|(&(a, b), &c)| (a, b, format!("c{c}")))
                .collect();
            for s in 0..n {
                for t in s + 1..n {
                    queries += 1;
                    let inst = McsipInstance {
                        nodes: names.clone(),
                        edges: colored_edges.clone(),
                        source: s,
                        target: t,
                        budget: 1,
                    };
                    let fewest = fewest_colors(n, &edges, &coloring, s, t);
                    let red = mcsip_to_mzp(&inst).map_err(|e| e.to_string())?;
                    let sol = mzp_exact(&red.network, red.source, red.target, 1_000_000).map_err(|e| e.to_string())?;
                    ensure(sol.zone_count == fewest + 1, || {
                        format!("graph {edges:?} colors {coloring:?} {s}-{t}: zones {} vs colors {fewest}", sol.zone_count)
                    })?;
                }
            }
        }
    }
    Ok(format!(
        "{connected} connected, {one_disconnected} one-disconnected, {colored} colored graphs / {queries} queries"
    ))
}

/// Connected simple graphs with 1 to `max_edges` edges, one per isomorphism class.
fn connected_graphs(max_edges: usize) -> Vec<(usize, Vec<(usize, usize)>)> {
    let mut seen: HashSet<(usize, Vec<(usize, usize)>)> = HashSet::new();
    let mut layer = vec![(2, vec![(0, 1)])];
    seen.insert(layer[0].clone());
    let mut all = layer.clone();
    for _ in 1..max_edges {
        let mut next = Vec::new();
        for (n, edges) in &layer {
            let mut grown = Vec::new();
            for a in 0..*n {
                for b in a + 1..*n {
                    if !edges.contains(&(a, b)) {
                        let mut e = edges.clone();
                        e.push((a, b));
                        grown.push((*n, e));
                    }
                }
                let mut e = edges.clone();
                e.push((a, *n));
                grown.push((n + 1, e));
            }
            for (m, e) in grown {
                let key = (m, canonical(m, &e));
                if seen.insert(key.clone()) {
                    next.push(key);
                }
            }
        }
        all.extend(next.iter().cloned());
        layer = next;
    }
    all
}

fn canonical(n: usize, edges: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let mut best: Option<Vec<(usize, usize)>> = None;
    let mut perm: Vec<usize> = (0..n).collect();
    permute(&mut perm, 0, &mut |p| {
        let mut e: Vec<(usize, usize)> = edges
            .iter()
            .map(|&(a, b)| (p[a].min(p[b]), p[a].max(p[b])))
            .collect();
        e.sort_unstable();
        if best.as_ref().is_none_or(|b| e < *b) {
            best = Some(e);
        }
    });
    best.expect("at least one permutation")
}

fn permute(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, f);
        p.swap(k, i);
    }
}

/// Restricted growth strings: every coloring of `m` edges up to renaming colors.
fn set_partitions(m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(m);
    fn go(m: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        let next = cur.iter().max().map_or(0, |&c| c + 1);
        for c in 0..=next {
            cur.push(c);
            go(m, cur, out);
            cur.pop();
        }
    }
    go(m, &mut cur, &mut out);
    out
}

/// Fewest distinct colors on a simple `s`-`t` path, by enumerating all of them.
fn fewest_colors(n: usize, edges: &[(usize, usize)], coloring: &[usize], s: usize, t: usize) -> usize {
    fn go(
        v: usize,
        t: usize,
        adj: &[Vec<(usize, usize)>],
        visited: &mut Vec<bool>,
        used: u32,
        best: &mut usize,
    ) {
        if v == t {
            *best = (*best).min(used.count_ones() as usize);
            return;
        }
        for &(w, c) in &adj[v] {
            if !visited[w] {
                visited[w] = true;
                go(w, t, adj, visited, used | 1 << c, best);
                visited[w] = false;
            }
        }
    }
    let mut adj = vec![Vec::new(); n];
    for (&(a, b), &c) in edges.iter().zip(coloring) {
        adj[a].push((b, c));
        adj[b].push((a, c));
    }
    let mut visited = vec![false; n];
    visited[s] = true;
    let mut best = usize::MAX;
    go(s, t, &adj, &mut visited, 0, &mut best);
    best
}

// ---------------------------------------------------------------- criterion 5

fn hop_bounded_paths() -> Check {
    let mut found = 0;
    let mut none = 0;
    for seed in 0..200u64 {
        let mut r = rng(7_000 + seed);
        let p = NetworkParams { stations: 4..=8, empty_zones: 0..=2, ..params() };
        let net = random_network(&mut r, &p);
        let ptn = &net.ptn;
        let sd = short_distance(&mut r);
        let (x, y) = two_stations(&mut r, ptn);
        let got = short_distance_path(ptn, sd.max_stations, sd.max_length, x, y);

        // a shortest admissible walk is simple, and a walk with s station hops has at
        // most s * (virtual nodes + 1) edges
        let n = ptn.node_count();
        let virtuals = n - ptn.stations().count();
        let edges = sd.max_stations.map_or(n - 1, |s| (s * (virtuals + 1)).min(n - 1));
        let mut best: Option<f64> = None;
        let _ = for_each_walk(ptn, edges, |v| v == x, |w| {
            if *w.last().unwrap() == y {
                let w = Walk::new(w.to_vec()).unwrap();
                if sd.admits(ptn, &w) {
                    let l = w.length(ptn);
                    best = Some(best.map_or(l, |b: f64| b.min(l)));
                }
            }
            std::ops::ControlFlow::Continue(())
        });
        match (&got, best) {
            (None, None) => none += 1,
            (Some(w), Some(l)) => {
                ensure(w.first() == x && w.last() == y && sd.admits(ptn, w) && w.length(ptn) == l, || {
                    format!("seed {seed}: got {} of length {}, enumeration {l}", w.display(ptn), w.length(ptn))
                })?;
                found += 1;
            }
            _ => {
                return Err(format!(
                    "seed {seed}: algorithm {:?} vs enumeration {best:?}",
                    got.map(|w| w.ids(ptn))
                ))
            }
        }
    }
    ensure(none > 0 && found > 0, || format!("{found} found, {none} none: both outcomes needed"))?;
    Ok(format!("{} instances, {found} paths, {none} none-exists", found + none))
}

// ---------------------------------------------------------------- criterion 6

/// A fare from a pool of families on a network with coordinates and a metropolitan zone.
fn random_fare(r: &mut TestRng) -> FareSystem {
    match r.gen_range(0..8) {
        0 => FareSystem::Distance { fixed: half(r, 4), per_km: half(r, 4) },
        1 => FareSystem::Beeline { fixed: half(r, 4), per_km: half(r, 4) },
        2 => FareSystem::Flat { price: half(r, 8) },
        3 => {
            let family = PriceFamily::ALL[r.gen_range(0..4)];
            FareSystem::BasicZone { prices: random_prices(r, family) }
        }
        4 => {
            let prices = increasing(r);
            FareSystem::Metropolitan { prices, metro_price: half(r, 8) }
        }
        5 => FareSystem::Overlap { prices: increasing(r) },
        6 => {
            let family = PriceFamily::ALL[r.gen_range(0..4)];
            FareSystem::NoDoubleCounting { prices: random_prices(r, family) }
        }
        _ => FareSystem::ShortDistance(short_distance(r)),
    }
}

fn property_transfer() -> Check {
    let p = NetworkParams {
        coordinates: true,
        metropolitan: true,
        empty_zones: 0..=0,
        ..params()
    };
    let mut pairs = 0;
    let mut seed = 0u64;
    while pairs < 100 {
        seed += 1;
        ensure(seed < 10_000, || format!("only {pairs} verified pairs"))?;
        let mut r = rng(8_000 + seed);
        let net = random_network(&mut r, &p);
        let (a, b) = (random_fare(&mut r), random_fare(&mut r));
        let ok = |f: &FareSystem| check_no_elongation(f, &net, budget7()).map(|rep| rep.holds);
        if !(ok(&a).map_err(|e| e.to_string())? && ok(&b).map_err(|e| e.to_string())?) {
            continue;
        }
        pairs += 1;
        let combined = FareSystem::combined(a, b);
        let report = check_no_elongation(&combined, &net, budget7()).map_err(|e| e.to_string())?;
        ensure(report.holds, || format!("seed {seed}: combination loses no-elongation: {:?}", report.counterexample))?;
    }

    let bounded = 100;
    for seed in 0..bounded {
        let mut r = rng(9_000 + seed);
        let net = random_network(&mut r, &params());
        let fs = FareSystem::bounded_distance(half(&mut r, 4), half(&mut r, 4), half(&mut r, 16));
        let s = check_no_stopover(&fs, &net, budget7()).map_err(|e| e.to_string())?;
        let e = check_no_elongation(&fs, &net, budget7()).map_err(|e| e.to_string())?;
        ensure(s.holds && e.holds, || format!("bounded distance seed {seed} fails a property"))?;
    }
    Ok(format!("{pairs} combined pairs, {bounded} bounded-distance instances"))
}

