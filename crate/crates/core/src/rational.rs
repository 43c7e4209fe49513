use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Exact non-negative rational, rendered as `p/q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(pub Ratio<u64>);

impl Rational {
    pub fn new(numer: u64, denom: u64) -> Self {
        Rational(Ratio::new(numer, denom))
    }

    pub fn recip_of(denom: u64) -> Self {
        Rational::new(1, denom)
    }

    pub fn numer(&self) -> u64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> u64 {
        *self.0.denom()
    }

    pub fn to_f64(&self) -> f64 {
        self.numer() as f64 / self.denom() as f64
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        let (n, m) = s.split_once('/').ok_or_else(|| serde::de::Error::custom("expected p/q"))?;
        let n: u64 = n.trim().parse().map_err(serde::de::Error::custom)?;
        let m: u64 = m.trim().parse().map_err(serde::de::Error::custom)?;
        if m == 0 {
            return Err(serde::de::Error::custom("zero denominator"));
        }
        Ok(Rational::new(n, m))
    }
}
