use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// How a price function continues past its table.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Tail {
    /// Repeat the last table entry.
    Constant,
    /// Grow by `slope` per additional zone.
    Affine { slope: f64 },
}

/// A zone price function `P(1), P(2), ...` given by a finite table and a tail rule.
#[derive(Clone, Debug, PartialEq)]
pub struct PriceFunction {
    table: Vec<f64>,
    tail: Tail,
}

impl PriceFunction {
    pub fn new(table: Vec<f64>, tail: Tail) -> Result<Self> {
        if table.is_empty() {
            return Err(Error::Config("price table is empty".into()));
        }
        if let Some(v) = table.iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
            return Err(Error::Config(format!("invalid zone price {v}")));
        }
        if let Tail::Affine { slope } = tail {
            if !(slope.is_finite() && slope >= 0.0) {
                return Err(Error::Config(format!("invalid tail slope {slope}")));
            }
        }
        Ok(Self { table, tail })
    }

    /// `P(k) = base + slope * k`, stored as a one-entry table with an affine tail.
    pub fn affine(base: f64, slope: f64) -> Result<Self> {
        Self::new(vec![base + slope], Tail::Affine { slope })
    }

    /// `P(k) = k`.
    pub fn linear() -> Self {
        Self::affine(0.0, 1.0).expect("valid")
    }

    pub fn table(&self) -> &[f64] {
        &self.table
    }

    pub fn tail(&self) -> Tail {
        self.tail
    }

    /// `P(k)`; `P(0)` is defined as 0.
    pub fn at(&self, k: usize) -> f64 {
        let m = self.table.len();
        if k == 0 {
            0.0
        } else if k <= m {
            self.table[k - 1]
        } else {
            match self.tail {
                Tail::Constant => self.table[m - 1],
                Tail::Affine { slope } => self.table[m - 1] + (k - m) as f64 * slope,
            }
        }
    }

    /// A horizon on which the zone border subadditivity check is exact for any tail:
    /// beyond `2m + 1` every comparison repeats one already made.
    pub fn default_horizon(&self) -> usize {
        (2 * self.table.len() + 1).max(self.table.len() + 3)
    }

    pub fn is_increasing(&self) -> bool {
        self.table.windows(2).all(|w| w[0] <= w[1])
    }

    pub fn is_strictly_increasing(&self) -> bool {
        self.table.windows(2).all(|w| w[0] < w[1])
            && matches!(self.tail, Tail::Affine { slope } if slope > 0.0)
    }

    /// `P(a + b) <= P(a) + P(b)` for all `a + b <= horizon`.
    pub fn is_subadditive(&self, horizon: usize) -> bool {
        (2..=horizon).all(|k| (1..k).all(|a| self.at(k) <= self.at(a) + self.at(k - a)))
    }

    /// The zone border price function `k -> P(k + 1)`.
    pub fn zone_border(&self) -> PriceFunction {
        let table = if self.table.len() > 1 {
            self.table[1..].to_vec()
        } else {
            vec![self.at(2)]
        };
        PriceFunction {
            table,
            tail: self.tail,
        }
    }

    /// Largest `K >= 0` with `P(K) <= ps`, or `None` when `P` never exceeds `ps`.
    /// Assumes `P` increasing.
    pub fn threshold(&self, ps: f64) -> Option<usize> {
        let m = self.table.len();
        if let Some(k) = (1..=m).find(|&k| self.at(k) > ps) {
            return Some(k - 1);
        }
        match self.tail {
            Tail::Constant => None,
            Tail::Affine { slope } if slope == 0.0 => None,
            Tail::Affine { slope } => {
                // first k > m with P(m) + (k - m) * slope > ps
                let mut k = m + ((ps - self.table[m - 1]) / slope).floor().max(0.0) as usize;
                while self.at(k) <= ps {
                    k += 1;
                }
                while k > m + 1 && self.at(k - 1) > ps {
                    k -= 1;
                }
                Some(k - 1)
            }
        }
    }
}
