use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exact::{int, ExactScalar};

/// A choice of `+1` or `-1` (the `delta`, `epsilon`, `kappa` labels).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];

    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn scalar(self) -> ExactScalar {
        int(self.value())
    }

    pub fn from_i64(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    /// All four `(delta, epsilon)` pairs in the order `++, +-, -+, --`.
    pub fn pairs() -> [(Sign, Sign); 4] {
        [
            (Sign::Plus, Sign::Plus),
            (Sign::Plus, Sign::Minus),
            (Sign::Minus, Sign::Plus),
            (Sign::Minus, Sign::Minus),
        ]
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

impl std::str::FromStr for Sign {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "+" | "+1" | "1" | "plus" => Ok(Sign::Plus),
            "-" | "-1" | "minus" => Ok(Sign::Minus),
            other => Err(format!("not a sign: {other:?}")),
        }
    }
}
