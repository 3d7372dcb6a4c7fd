use crate::fares::{PriceFunction, Tail};

/// A closed-form condition evaluated for all zone counts up to `horizon`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Condition<W> {
    pub horizon: usize,
    /// First violation, smallest `k` first.
    pub witness: Option<W>,
}

impl<W> Condition<W> {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

/// `P(k) > P(i) + P(k - i + 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SplitWitness {
    pub k: usize,
    pub i: usize,
}

/// `P(d + k) > P_M + P(k + 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MetroWitness {
    pub d: usize,
    pub k: usize,
}

/// `P(k1 + k2) > P(k1) + P(k2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SumWitness {
    pub k1: usize,
    pub k2: usize,
}

/// `P(k) <= P(i) + P(k - i + 1)` for `3 <= k <= k_max`. Only `2 <= i <= (k + 1) / 2` is
/// tested: `i = 1` is trivial and `i` mirrors `k - i + 1`.
pub fn condition_eq2(p: &PriceFunction, k_max: usize) -> Condition<SplitWitness> {
    let witness = (3..=k_max).find_map(|k| {
        (2..=(k + 1) / 2)
            .find(|&i| p.at(k) > p.at(i) + p.at(k - i + 1))
            .map(|i| SplitWitness { k, i })
    });
    Condition {
        horizon: k_max,
        witness,
    }
}

/// `P(d + k) <= P_M + P(k + 1)` for `1 <= k <= k_max`.
pub fn condition_metropolitan(p: &PriceFunction, pm: f64, d: usize, k_max: usize) -> Condition<MetroWitness> {
    let witness = (1..=k_max)
        .find(|&k| p.at(d + k) > pm + p.at(k + 1))
        .map(|k| MetroWitness { d, k });
    Condition {
        horizon: k_max,
        witness,
    }
}

/// Subadditivity, `P(k1 + k2) <= P(k1) + P(k2)` for `k1 <= k2`, `k1 + k2 <= k_max`.
pub fn condition_zoa(p: &PriceFunction, k_max: usize) -> Condition<SumWitness> {
    let witness = (2..=k_max).find_map(|k| {
        (1..=k / 2)
            .find(|&k1| p.at(k) > p.at(k1) + p.at(k - k1))
            .map(|k1| SumWitness { k1, k2: k - k1 })
    });
    Condition {
        horizon: k_max,
        witness,
    }
}

/// A violated zone / short-distance condition (numbered 1 to 4).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ZsdWitness {
    pub condition: u8,
    pub k: usize,
    pub i: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ZsdConditions {
    /// Largest `K` with `P(K) <= P_S`; `None` when no zone count exceeds `P_S`.
    pub threshold: Option<usize>,
    pub horizon: usize,
    pub cond1: Option<SplitWitness>,
    /// Smallest violating `k`.
    pub cond2: Option<usize>,
    pub cond3: Option<SplitWitness>,
    pub cond4: Option<SplitWitness>,
}

impl ZsdConditions {
    pub fn holds(&self) -> bool {
        self.first_violation().is_none()
    }

    pub fn first_violation(&self) -> Option<ZsdWitness> {
        let w = |condition, s: SplitWitness| ZsdWitness { condition, k: s.k, i: s.i };
        self.cond1
            .map(|s| w(1, s))
            .or_else(|| {
                let big_k = self.threshold?;
                self.cond2.map(|k| ZsdWitness {
                    condition: 2,
                    k,
                    i: big_k + 1,
                })
            })
            .or_else(|| self.cond3.map(|s| w(3, s)))
            .or_else(|| self.cond4.map(|s| w(4, s)))
    }
}

/// The four conditions for a zone tariff combined with a short-distance price `ps`:
///
/// 1. `P(k) <= P(i) + P(k - i + 1)` for all `k`, `i`;
/// 2. `P(k) <= 2 P_S` for `k >= 2K + 1`;
/// 3. `P(k) <= P(i) + P_S` for `k >= K + 1`, `i <= k - K`;
/// 4. `P_S <= P(i) + P(k - i + 1)` for `K + 1 <= k <= 2K - 1`, `k - K + 1 <= i <= K`,
///    only when short walks may span more than one station hop.
pub fn condition_zsd(p: &PriceFunction, ps: f64, max_stations: Option<usize>, k_max: usize) -> ZsdConditions {
    let threshold = p.threshold(ps);
    let cond1 = (2..=k_max).find_map(|k| {
        (1..=k)
            .find(|&i| p.at(k) > p.at(i) + p.at(k - i + 1))
            .map(|i| SplitWitness { k, i })
    });
    let (mut cond2, mut cond3, mut cond4) = (None, None, None);
    if let Some(big_k) = threshold {
        cond2 = (2 * big_k + 1..=k_max).find(|&k| p.at(k) > 2.0 * ps);
        cond3 = (big_k + 1..=k_max).find_map(|k| {
            (1..=k - big_k)
                .find(|&i| p.at(k) > p.at(i) + ps)
                .map(|i| SplitWitness { k, i })
        });
        if max_stations.is_none_or(|s| s > 1) && big_k >= 2 {
            cond4 = (big_k + 1..=(2 * big_k - 1).min(k_max)).find_map(|k| {
                (k - big_k + 1..=big_k)
                    .find(|&i| ps > p.at(i) + p.at(k - i + 1))
                    .map(|i| SplitWitness { k, i })
            });
        }
    }
    ZsdConditions {
        threshold,
        horizon: k_max,
        cond1,
        cond2,
        cond3,
        cond4,
    }
}

/// A horizon on which [`condition_zsd`] decides all four conditions for increasing `P`:
/// past it every comparison repeats an earlier one or is implied by condition 2 failing.
pub fn zsd_horizon(p: &PriceFunction, ps: f64) -> usize {
    let m = p.table().len();
    let base = p.default_horizon();
    let Some(big_k) = p.threshold(ps) else {
        return base;
    };
    let mut h = base.max(2 * big_k + 2).max(m + big_k + 1);
    if let Tail::Affine { slope } = p.tail() {
        if slope > 0.0 {
            let mut k = (2 * big_k + 1).max(m);
            while p.at(k) <= 2.0 * ps {
                k += 1;
            }
            h = h.max(k);
        }
    }
    h
}
