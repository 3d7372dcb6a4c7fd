use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::Add;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A nonnegative price on the extended reals.
#[derive(Clone, Copy, Debug)]
pub enum Price {
    Finite(f64),
    /// Only produced by formal fare systems such as the short-distance tariff.
    Infinite,
}

impl Price {
    pub const ZERO: Price = Price::Finite(0.0);

    pub fn is_finite(self) -> bool {
        matches!(self, Price::Finite(_))
    }

    pub fn value(self) -> Option<f64> {
        match self {
            Price::Finite(v) => Some(v),
            Price::Infinite => None,
        }
    }

    /// `f64::INFINITY` for the infinite price.
    pub fn as_f64(self) -> f64 {
        self.value().unwrap_or(f64::INFINITY)
    }

    pub fn from_f64(v: f64) -> Price {
        if v == f64::INFINITY {
            Price::Infinite
        } else {
            Price::Finite(v)
        }
    }

    pub fn min(self, other: Price) -> Price {
        if other < self {
            other
        } else {
            self
        }
    }
}

impl PartialEq for Price {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Price {}

impl PartialOrd for Price {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Price {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Price::Infinite, Price::Infinite) => Ordering::Equal,
            (Price::Infinite, _) => Ordering::Greater,
            (_, Price::Infinite) => Ordering::Less,
            (Price::Finite(a), Price::Finite(b)) => a.partial_cmp(b).expect("prices are never NaN"),
        }
    }
}

impl Add for Price {
    type Output = Price;

    fn add(self, rhs: Price) -> Price {
        match (self, rhs) {
            (Price::Finite(a), Price::Finite(b)) => Price::Finite(a + b),
            _ => Price::Infinite,
        }
    }
}

impl Sum for Price {
    fn sum<I: Iterator<Item = Price>>(iter: I) -> Price {
        iter.fold(Price::ZERO, Add::add)
    }
}

impl fmt::Display for Price {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Price::Finite(v) => write!(f, "{v}"),
            Price::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Price {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Price::Finite(v) => s.serialize_f64(*v),
            Price::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Price {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(v) if v.is_finite() && v >= 0.0 => Ok(Price::Finite(v)),
            Raw::Text(t) if t == "inf" => Ok(Price::Infinite),
            _ => Err(serde::de::Error::custom(
                "price must be a nonnegative number or `inf`",
            )),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn infinity_absorbs_and_loses_min() {
        let two = Price::Finite(2.0);
        assert_eq!(two + Price::Infinite, Price::Infinite);
        assert_eq!(Price::Infinite.min(two), two);
        assert_eq!(two.min(Price::Infinite), two);
        assert!(two < Price::Infinite);
        assert_eq!([two, two].into_iter().sum::<Price>(), Price::Finite(4.0));
    }

    #[test]
    fn renders_inf_token() {
        assert_eq!(Price::Infinite.to_string(), "inf");
        assert_eq!(Price::Finite(4.0).to_string(), "4");
        assert_eq!(serde_json::to_string(&Price::Infinite).unwrap(), "\"inf\"");
        let p: Price = serde_json::from_str("\"inf\"").unwrap();
        assert_eq!(p, Price::Infinite);
    }
}
