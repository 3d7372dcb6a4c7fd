//! Bounded property checks, closed-form conditions, the brute-force ticket oracle and
//! the counterexample gadgets.
//!
//! Every "for all walks" statement here ranges over walks with at most
//! [`EnumBudget::max_edges`] edges. A report that holds means it holds within that budget.

mod checks;
mod conditions;
mod enumerate;
mod gadgets;
mod oracle;
pub mod random;

pub use checks::{
    check_no_elongation, check_no_stopover, check_no_stopover_filtered,
    check_standard_ticket_optimality, metropolitan_within,
};
pub use conditions::{
    condition_eq2, condition_metropolitan, condition_zoa, condition_zsd, zsd_horizon, Condition,
    MetroWitness, SplitWitness, SumWitness, ZsdConditions, ZsdWitness,
};
pub use enumerate::{for_each_walk, walks_from};
pub use gadgets::{gadget_from_violation, Gadget, Violation, ViolationKind};
pub use oracle::{brute_force_cheapest_ticket, TicketOracle};

use std::fmt;

use crate::error::{Error, Result};
use crate::fares::{FareSystem, Price};
use crate::network::{Network, Ticket, Walk};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumBudget {
    pub max_edges: usize,
    /// Most parts a ticket may have.
    pub max_segments: usize,
    /// Extra edges a segment may have on each side of the part it covers.
    pub max_elongation_edges: usize,
    /// Cap on the number of enumerated walks.
    pub max_walks: usize,
}

impl Default for EnumBudget {
    fn default() -> Self {
        Self {
            max_edges: 7,
            max_segments: 2,
            max_elongation_edges: 1,
            max_walks: 5_000_000,
        }
    }
}

impl EnumBudget {
    pub fn new(max_edges: usize, max_segments: usize, max_elongation_edges: usize) -> Result<Self> {
        let b = Self {
            max_edges,
            max_segments,
            max_elongation_edges,
            ..Self::default()
        };
        b.validate()?;
        Ok(b)
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_edges == 0 || self.max_segments == 0 || self.max_elongation_edges == 0 || self.max_walks == 0 {
            return Err(Error::Config("enumeration budget entries must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Property {
    NoStopover,
    NoElongation,
    StandardTicketOptimality,
}

impl Property {
    pub fn name(self) -> &'static str {
        match self {
            Property::NoStopover => "no-stopover",
            Property::NoElongation => "no-elongation",
            Property::StandardTicketOptimality => "standard-ticket-optimality",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// What makes a walk a counterexample.
#[derive(Clone, Debug, PartialEq)]
pub enum Witness {
    /// Splitting at node position `at` is cheaper.
    Split { at: usize },
    /// A proper prefix costs more than the whole walk.
    Prefix { part: Walk },
    /// A proper suffix costs more than the whole walk.
    Suffix { part: Walk },
    /// A ticket for the walk that beats its standard ticket.
    Ticket(Ticket),
}

/// `price` should not exceed `alternative`, but does.
#[derive(Clone, Debug, PartialEq)]
pub struct Counterexample {
    pub walk: Walk,
    pub witness: Witness,
    pub price: Price,
    pub alternative: Price,
}

impl Counterexample {
    /// Prices the witness again from scratch and confirms the violation.
    pub fn recheck(&self, fs: &FareSystem, net: &Network) -> Result<bool> {
        let whole = fs.price(net, &self.walk)?;
        let n = self.walk.len();
        Ok(match &self.witness {
            Witness::Split { at } => {
                if *at == 0 || *at + 1 >= n {
                    return Ok(false);
                }
                let parts = fs.price(net, &self.walk.subwalk(0, *at)?)?
                    + fs.price(net, &self.walk.subwalk(*at, n - 1)?)?;
                whole == self.price && parts == self.alternative && whole > parts
            }
            Witness::Prefix { part } | Witness::Suffix { part } => {
                let fits = match &self.witness {
                    Witness::Prefix { .. } => self.walk.nodes().starts_with(part.nodes()),
                    _ => self.walk.nodes().ends_with(part.nodes()),
                };
                let p = fs.price(net, part)?;
                fits && part.len() < n && p == self.price && whole == self.alternative && p > whole
            }
            Witness::Ticket(t) => {
                let forbid = net.rules.forbid_virtual_endpoints;
                let mut total = Price::ZERO;
                for h in &t.segments {
                    total = total + fs.price(net, h)?;
                }
                t.is_valid_for(&net.ptn, &self.walk, forbid)?
                    && total == self.alternative
                    && whole == self.price
                    && total < whole
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PropertyReport {
    pub property: Property,
    pub holds: bool,
    pub counterexample: Option<Counterexample>,
    pub budget: EnumBudget,
    pub walks_checked: usize,
    /// Seed of the generator that produced the instance, if any.
    pub seed: Option<u64>,
}

impl PropertyReport {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }
}
