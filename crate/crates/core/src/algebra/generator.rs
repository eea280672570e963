use std::fmt;

use serde::{Deserialize, Serialize};

/// One of the nine hybrid generators.
///
/// The derived ordering is the canonical normal-ordering sequence:
/// `q < p < s1 < s2 < s3 < a < b < at < bt`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum GeneratorId {
    QHat,
    PHat,
    S1,
    S2,
    S3,
    A,
    B,
    ATilde,
    BTilde,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sector {
    Oscillator,
    Spin,
    Classical,
}

impl GeneratorId {
    pub const ALL: [GeneratorId; 9] = [
        GeneratorId::QHat,
        GeneratorId::PHat,
        GeneratorId::S1,
        GeneratorId::S2,
        GeneratorId::S3,
        GeneratorId::A,
        GeneratorId::B,
        GeneratorId::ATilde,
        GeneratorId::BTilde,
    ];

    pub const CLASSICAL: [GeneratorId; 4] =
        [GeneratorId::A, GeneratorId::B, GeneratorId::ATilde, GeneratorId::BTilde];

    pub fn symbol(self) -> &'static str {
        match self {
            GeneratorId::QHat => "q",
            GeneratorId::PHat => "p",
            GeneratorId::S1 => "s1",
            GeneratorId::S2 => "s2",
            GeneratorId::S3 => "s3",
            GeneratorId::A => "a",
            GeneratorId::B => "b",
            GeneratorId::ATilde => "at",
            GeneratorId::BTilde => "bt",
        }
    }

    pub fn from_symbol(symbol: &str) -> Option<Self> {
        GeneratorId::ALL.into_iter().find(|g| g.symbol() == symbol)
    }

    pub fn sector(self) -> Sector {
        match self {
            GeneratorId::QHat | GeneratorId::PHat => Sector::Oscillator,
            GeneratorId::S1 | GeneratorId::S2 | GeneratorId::S3 => Sector::Spin,
            _ => Sector::Classical,
        }
    }

    pub fn is_quantum(self) -> bool {
        self.sector() != Sector::Classical
    }

    pub fn is_tilde(self) -> bool {
        matches!(self, GeneratorId::ATilde | GeneratorId::BTilde)
    }
}

impl fmt::Display for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}
