use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A graph distance that may be infinite. Serialized as a number, or the
/// string `"inf"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Dist {
    Finite(usize),
    Infinite,
}

impl Dist {
    pub fn plus(self, k: usize) -> Dist {
        match self {
            Dist::Finite(d) => Dist::Finite(d + k),
            Dist::Infinite => Dist::Infinite,
        }
    }

    pub fn finite(self) -> Option<usize> {
        match self {
            Dist::Finite(d) => Some(d),
            Dist::Infinite => None,
        }
    }

    pub fn at_most(self, bound: usize) -> bool {
        self <= Dist::Finite(bound)
    }
}

impl From<Option<usize>> for Dist {
    fn from(d: Option<usize>) -> Self {
        d.map_or(Dist::Infinite, Dist::Finite)
    }
}

impl fmt::Display for Dist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dist::Finite(d) => write!(f, "{d}"),
            Dist::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Dist {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Dist::Finite(d) => s.serialize_u64(*d as u64),
            Dist::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Dist {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Num(usize),
            Text(String),
        }
        match Repr::deserialize(d)? {
            Repr::Num(n) => Ok(Dist::Finite(n)),
            Repr::Text(t) if t == "inf" => Ok(Dist::Infinite),
            Repr::Text(t) => Err(serde::de::Error::custom(format!("bad distance {t:?}"))),
        }
    }
}
