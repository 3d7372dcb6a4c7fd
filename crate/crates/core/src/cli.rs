//! The `ticketry` command line: `price`, `route`, `audit` and `reduce`.
//!
//! Exit codes: 0 success, 2 unreadable or unparsable input, 3 invalid query or
//! configuration, 4 resource limit.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fares::{FareSystem, Price};
use crate::instance::{Instance, InstanceDocument, McsipDocument, QueryDoc};
use crate::network::{Network, NodeIx, Ptn, Ticket, TicketRules, Walk};
use crate::routing::{cheapest_path, compute_d_max, mcsip_to_mzp, RouteOptions, RouteResult};
use crate::verify::random::{random_network, random_prices, rng, NetworkParams, PriceFamily};
use crate::verify::{
    brute_force_cheapest_ticket, check_no_elongation, check_no_stopover, condition_eq2,
    condition_metropolitan, condition_zoa, condition_zsd, gadget_from_violation, zsd_horizon,
    Counterexample, EnumBudget, PropertyReport, Violation, Witness,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_QUERY: i32 = 3;
pub const EXIT_RESOURCE: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "ticketry", version, about = "Price walks, find cheapest paths and tickets, audit fare systems")]
struct Cli {
    /// Print structured JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Price a walk given as node ids (or the instance's query walk).
    Price {
        file: PathBuf,
        walk: Vec<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Cheapest path between two nodes, optionally a cheapest ticket.
    Route {
        file: PathBuf,
        #[arg(long)]
        from: Option<String>,
        #[arg(long)]
        to: Option<String>,
        /// Also return a cheapest ticket.
        #[arg(long)]
        ticket: bool,
        /// Compact the overlaps-resolved graph.
        #[arg(long)]
        compact: bool,
        /// State budget of the exact zone search.
        #[arg(long, default_value_t = 1_000_000)]
        max_states: usize,
        #[command(flatten)]
        budget: BudgetArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Check no-stopover and no-elongation within budget and evaluate tariff conditions.
    Audit {
        /// Instance file; omit it to audit a generated instance (needs --seed).
        file: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        budget: BudgetArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Turn a colored-graph instance into a zone instance.
    Reduce {
        file: PathBuf,
        /// Where to write the zone instance; stdout when omitted.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
struct Common {
    /// Disallow virtual nodes as endpoints and stopovers.
    #[arg(long)]
    forbid_virtual_endpoints: bool,
}

#[derive(Debug, Args)]
struct BudgetArgs {
    #[arg(long, default_value_t = 7)]
    budget_edges: usize,
    #[arg(long, default_value_t = 2)]
    budget_segments: usize,
    #[arg(long, default_value_t = 1)]
    budget_elongation: usize,
}

impl BudgetArgs {
    fn budget(&self) -> Result<EnumBudget> {
        EnumBudget::new(self.budget_edges, self.budget_segments, self.budget_elongation)
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::Io(_) => EXIT_PARSE,
        Error::ResourceLimit { .. } => EXIT_RESOURCE,
        _ => EXIT_QUERY,
    }
}

/// Runs the command line, writing results to `out` and errors to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
        }
    };
    let json = cli.json;
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let best = match &e {
                Error::ResourceLimit { incumbent: Some(best), .. } => Some(best),
                _ => None,
            };
            if let Some(best) = best {
                let _ = writeln!(err, "best found: price {} over {} nodes", best.price, best.walk.nodes().len());
            }
            if json {
                let mut v = json!({ "error": e.to_string(), "exit_code": exit_code(&e) });
                if let Some(best) = best {
                    v["incumbent_price"] = price_json(best.price);
                }
                let _ = writeln!(out, "{v}");
            }
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn load(file: &PathBuf, common: &Common) -> Result<Instance> {
    let mut inst = InstanceDocument::read(file)?.build()?;
    if common.forbid_virtual_endpoints {
        inst.network.rules = TicketRules {
            forbid_virtual_endpoints: true,
        };
    }
    Ok(inst)
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<i32> {
    let json = cli.json;
    match cli.command {
        Command::Price { file, walk, common } => {
            let inst = load(&file, &common)?;
            let ids = if walk.is_empty() {
                inst.query
                    .as_ref()
                    .and_then(|q| q.walk.clone())
                    .ok_or_else(|| Error::InvalidWalk("no walk given".into()))?
            } else {
                walk
            };
            let refs: Vec<&str> = ids.iter().map(String::as_str).collect();
            let net = &inst.network;
            let w = net.resolve_walk(&refs)?;
            let priced = inst.fare()?.priced(net, &w)?;
            if json {
                let v = json!({
                    "walk": w.ids(&net.ptn),
                    "price": price_json(priced.price),
                    "tariff": priced.tariff,
                });
                writeln!(out, "{v}")?;
            } else {
                writeln!(out, "{}  ({})", priced.price, priced.tariff)?;
            }
        }
        Command::Route {
            file,
            from,
            to,
            ticket,
            compact,
            max_states,
            budget,
            common,
        } => {
            let inst = load(&file, &common)?;
            let net = &inst.network;
            let fs = inst.fare()?;
            let (x, y) = endpoints(&net.ptn, inst.query.as_ref(), from, to)?;
            let opts = RouteOptions { compact, max_states };
            let route = cheapest_path(fs, net, x, y, &opts)?;
            let tk = if ticket {
                Some(cheapest_ticket(fs, net, x, y, &route, budget.budget()?)?)
            } else {
                None
            };
            print_route(out, json, net, &route, tk.as_ref())?;
        }
        Command::Audit {
            file,
            seed,
            budget,
            common,
        } => {
            let (inst, seed) = match (file, seed) {
                (Some(f), seed) => (load(&f, &common)?, seed),
                (None, Some(seed)) => (generated(seed, &common), Some(seed)),
                (None, None) => {
                    return Err(Error::Config("audit needs an instance file or --seed".into()));
                }
            };
            let report = audit(&inst, budget.budget()?, seed)?;
            if json {
                writeln!(out, "{report}")?;
            } else {
                write!(out, "{}", audit_text(&report))?;
            }
        }
        Command::Reduce { file, output } => {
            let text = std::fs::read_to_string(&file)?;
            let inst = McsipDocument::parse(&text)?.build()?;
            let red = mcsip_to_mzp(&inst)?;
            let ptn = &red.network.ptn;
            let fare = FareSystem::NoDoubleCounting {
                prices: crate::fares::PriceFunction::linear(),
            };
            let query = QueryDoc {
                walk: None,
                from: Some(ptn.id(red.source).to_string()),
                to: Some(ptn.id(red.target).to_string()),
            };
            let doc = InstanceDocument::from_network(&red.network, Some(&fare), Some(query));
            let toml = doc.to_toml()?;
            match &output {
                Some(path) => std::fs::write(path, &toml)?,
                None if !json => write!(out, "{toml}")?,
                None => {}
            }
            if json {
                let v = json!({
                    "zone_budget": red.zone_budget,
                    "nodes": ptn.node_count(),
                    "edges": ptn.edge_count(),
                    "instance": if output.is_none() { Value::String(toml) } else { Value::Null },
                });
                writeln!(out, "{v}")?;
            } else if output.is_some() {
                writeln!(out, "K = {}", red.zone_budget)?;
            } else {
                writeln!(out, "# K = {}", red.zone_budget)?;
            }
        }
    }
    Ok(EXIT_OK)
}

fn endpoints(ptn: &Ptn, query: Option<&QueryDoc>, from: Option<String>, to: Option<String>) -> Result<(NodeIx, NodeIx)> {
    let from = from
        .or_else(|| query.and_then(|q| q.from.clone()))
        .ok_or_else(|| Error::InvalidWalk("no start node given".into()))?;
    let to = to
        .or_else(|| query.and_then(|q| q.to.clone()))
        .ok_or_else(|| Error::InvalidWalk("no end node given".into()))?;
    Ok((ptn.index_of(&from)?, ptn.index_of(&to)?))
}

struct TicketAnswer {
    source: &'static str,
    traveled: Walk,
    ticket: Ticket,
    price: Price,
}

/// The standard ticket when both properties hold within budget, else the oracle's.
fn cheapest_ticket(
    fs: &FareSystem,
    net: &Network,
    x: NodeIx,
    y: NodeIx,
    route: &RouteResult,
    budget: EnumBudget,
) -> Result<TicketAnswer> {
    let stopover = check_no_stopover(fs, net, budget)?;
    let elongation = check_no_elongation(fs, net, budget)?;
    if stopover.holds && elongation.holds {
        return Ok(TicketAnswer {
            source: "standard",
            traveled: route.walk.clone(),
            ticket: Ticket::standard(&route.walk),
            price: route.price,
        });
    }
    let t = brute_force_cheapest_ticket(fs, net, x, y, budget)?;
    Ok(TicketAnswer {
        source: "oracle (budget-bounded)",
        traveled: t.traveled,
        ticket: t.ticket,
        price: t.price,
    })
}

fn price_json(p: Price) -> Value {
    match p {
        Price::Finite(v) => json!(v),
        Price::Infinite => json!("inf"),
    }
}

fn print_route(out: &mut dyn Write, json: bool, net: &Network, r: &RouteResult, t: Option<&TicketAnswer>) -> Result<()> {
    let ptn = &net.ptn;
    let assignment = match (&r.assignment, &net.zones) {
        (Some(a), Some(zs)) => Some(a.iter().map(|&z| zs.name(z).to_string()).collect::<Vec<_>>()),
        _ => None,
    };
    if json {
        let mut v = json!({
            "walk": r.walk.ids(ptn),
            "price": price_json(r.price),
            "tariff": r.tariff,
        });
        if let Some(z) = r.zone_count {
            v["zone_count"] = json!(z);
        }
        if let Some(a) = &assignment {
            v["assignment"] = json!(a);
        }
        if let Some(t) = t {
            v["ticket"] = json!({
                "source": t.source,
                "traveled": t.traveled.ids(ptn),
                "segments": t.ticket.segments.iter().map(|h| h.ids(ptn)).collect::<Vec<_>>(),
                "decomposition": t.ticket.decomposition,
                "price": price_json(t.price),
            });
        }
        writeln!(out, "{v}")?;
        return Ok(());
    }
    writeln!(out, "path    {}", r.walk.display(ptn))?;
    writeln!(out, "price   {}  ({})", r.price, r.tariff)?;
    if let Some(z) = r.zone_count {
        writeln!(out, "zones   {z}")?;
    }
    if let Some(a) = assignment {
        writeln!(out, "assign  {}", a.join(" "))?;
    }
    if let Some(t) = t {
        writeln!(out, "ticket  {}  [{}]", t.price, t.source)?;
        writeln!(out, "travel  {}", t.traveled.display(ptn))?;
        for h in &t.ticket.segments {
            writeln!(out, "  segment {}", h.display(ptn))?;
        }
    }
    Ok(())
}

/// A generated instance with a basic zone tariff; reproducible from `seed`.
fn generated(seed: u64, common: &Common) -> Instance {
    let mut r = rng(seed);
    let params = NetworkParams {
        empty_zones: 0..=1,
        ..NetworkParams::default()
    };
    let network = random_network(&mut r, &params).with_rules(TicketRules {
        forbid_virtual_endpoints: common.forbid_virtual_endpoints,
    });
    let prices = random_prices(&mut r, PriceFamily::Increasing);
    Instance {
        network,
        fare: Some(FareSystem::BasicZone { prices }),
        query: None,
    }
}

fn counterexample_json(ptn: &Ptn, c: &Counterexample) -> Value {
    let witness = match &c.witness {
        Witness::Split { at } => json!({ "kind": "split", "at": at, "node": ptn.id(c.walk.nodes()[*at]) }),
        Witness::Prefix { part } => json!({ "kind": "prefix", "part": part.ids(ptn) }),
        Witness::Suffix { part } => json!({ "kind": "suffix", "part": part.ids(ptn) }),
        Witness::Ticket(t) => json!({
            "kind": "ticket",
            "segments": t.segments.iter().map(|h| h.ids(ptn)).collect::<Vec<_>>(),
        }),
    };
    json!({
        "walk": c.walk.ids(ptn),
        "witness": witness,
        "price": price_json(c.price),
        "alternative": price_json(c.alternative),
    })
}

/// Structured form of a property report.
pub fn report_json(ptn: &Ptn, r: &PropertyReport) -> Value {
    let mut v = json!({
        "property": r.property.name(),
        "holds": r.holds,
        "walks_checked": r.walks_checked,
        "budget": {
            "max_edges": r.budget.max_edges,
            "max_segments": r.budget.max_segments,
            "max_elongation_edges": r.budget.max_elongation_edges,
        },
    });
    if let Some(seed) = r.seed {
        v["seed"] = json!(seed);
    }
    if let Some(c) = &r.counterexample {
        v["counterexample"] = counterexample_json(ptn, c);
    }
    v
}

/// Property verdicts, closed-form conditions and diagnostics for an instance.
pub fn audit(inst: &Instance, budget: EnumBudget, seed: Option<u64>) -> Result<Value> {
    let net = &inst.network;
    let fs = inst.fare()?;
    let mut properties = Vec::new();
    for check in [check_no_stopover, check_no_elongation] {
        let mut r = check(fs, net, budget)?;
        r.seed = seed;
        properties.push(report_json(&net.ptn, &r));
    }
    let mut conditions = Vec::new();
    let mut diagnostics = json!({});
    fare_conditions(fs, net, &mut conditions, &mut diagnostics)?;
    if let Some(zs) = &net.zones {
        let disconnected: Vec<&str> = zs
            .zone_components(&net.ptn)
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 1)
            .map(|(z, _)| zs.name(z))
            .collect();
        diagnostics["disconnected_zones"] = json!(disconnected);
    }
    let mut v = json!({
        "fare": fs.name(),
        "properties": properties,
        "conditions": conditions,
        "diagnostics": diagnostics,
    });
    if let Some(seed) = seed {
        v["seed"] = json!(seed);
        v["instance"] = json!(InstanceDocument::from_network(net, Some(fs), None).to_toml()?);
    }
    Ok(v)
}

fn fare_conditions(fs: &FareSystem, net: &Network, out: &mut Vec<Value>, diag: &mut Value) -> Result<()> {
    let verdict = |name: &str, horizon: usize, witness: Option<Value>| {
        json!({ "condition": name, "holds": witness.is_none(), "horizon": horizon, "witness": witness })
    };
    match fs {
        FareSystem::BasicZone { prices } | FareSystem::NoDoubleCounting { prices } => {
            let c = condition_eq2(prices, prices.default_horizon());
            let w = c.witness.map(|w| json!({ "k": w.k, "i": w.i }));
            out.push(verdict("zone-split", c.horizon, w));
            out.push(json!({ "condition": "increasing", "holds": prices.is_increasing() }));
        }
        FareSystem::Metropolitan { prices, metro_price } => {
            let h = prices.default_horizon();
            let c = condition_eq2(prices, h);
            out.push(verdict("zone-split", h, c.witness.map(|w| json!({ "k": w.k, "i": w.i }))));
            let d = compute_d_max(net)?;
            diag["d_max"] = json!(d);
            let m = condition_metropolitan(prices, *metro_price, d, h);
            out.push(verdict("metropolitan", h, m.witness.map(|w| json!({ "d": w.d, "k": w.k }))));
            out.push(json!({ "condition": "metro-price-at-most-p2", "holds": *metro_price <= prices.at(2) }));
        }
        FareSystem::Overlap { prices } => {
            let c = condition_zoa(prices, prices.default_horizon());
            out.push(verdict("subadditive", c.horizon, c.witness.map(|w| json!({ "k1": w.k1, "k2": w.k2 }))));
        }
        FareSystem::Combined(l, r) => {
            if let Some((prices, sd)) = fs.as_zsd() {
                let h = zsd_horizon(prices, sd.price);
                let c = condition_zsd(prices, sd.price, sd.max_stations, h);
                diag["threshold"] = json!(c.threshold);
                let mut v = json!({
                    "condition": "zone-short-distance",
                    "holds": c.holds(),
                    "horizon": h,
                    "threshold": c.threshold,
                });
                if let Some(w) = c.first_violation() {
                    v["witness"] = json!({ "condition": w.condition, "k": w.k, "i": w.i });
                    let g = gadget_from_violation(&Violation::Zsd {
                        witness: w,
                        short: sd.clone(),
                    })?;
                    v["gadget_walk"] = json!(g.walk.ids(&g.network.ptn));
                    v["gadget_split"] = json!(g.split);
                }
                out.push(v);
            } else {
                fare_conditions(l, net, out, diag)?;
                fare_conditions(r, net, out, diag)?;
            }
        }
        _ => {}
    }
    Ok(())
}

fn audit_text(v: &Value) -> String {
    let mut s = String::new();
    s.push_str(&format!("fare {}\n", v["fare"].as_str().unwrap_or("?")));
    if let Some(seed) = v.get("seed") {
        s.push_str(&format!("seed {seed}\n"));
    }
    for p in v["properties"].as_array().into_iter().flatten() {
        let verdict = if p["holds"].as_bool() == Some(true) { "PASS" } else { "FAIL" };
        s.push_str(&format!(
            "{:<14} {verdict}  ({} walks, max {} edges)\n",
            p["property"].as_str().unwrap_or("?"),
            p["walks_checked"],
            p["budget"]["max_edges"],
        ));
        if let Some(c) = p.get("counterexample") {
            s.push_str(&format!(
                "  walk {}  {}  price {} > {}\n",
                c["walk"], c["witness"], c["price"], c["alternative"]
            ));
        }
    }
    for c in v["conditions"].as_array().into_iter().flatten() {
        let verdict = if c["holds"].as_bool() == Some(true) { "PASS" } else { "FAIL" };
        s.push_str(&format!("condition {:<22} {verdict}", c["condition"].as_str().unwrap_or("?")));
        if let Some(w) = c.get("witness").filter(|w| !w.is_null()) {
            s.push_str(&format!("  witness {w}"));
        }
        s.push('\n');
        if let Some(g) = c.get("gadget_walk") {
            s.push_str(&format!("  gadget walk {g}\n"));
        }
    }
    if let Some(d) = v["diagnostics"].as_object() {
        for (k, val) in d {
            s.push_str(&format!("{k} {val}\n"));
        }
    }
    s
}
