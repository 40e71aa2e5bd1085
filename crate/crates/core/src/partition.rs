//! Partitions, the modulus, and the two type vectors attached to a partition.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weakly decreasing list of positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition {
    parts: Vec<u32>,
    weight: u32,
}

impl Partition {
    /// Builds a partition from parts that are already weakly decreasing and positive.
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::Domain(format!("zero part in {parts:?}")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Domain(format!("parts {parts:?} are not weakly decreasing")));
        }
        let weight = parts
            .iter()
            .try_fold(0u32, |acc, &p| acc.checked_add(p))
            .ok_or(Error::Overflow("partition weight"))?;
        Ok(Self { parts, weight })
    }

    /// Sorts the given positive parts into a partition.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Result<Self> {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self::new(parts)
    }

    /// Caller guarantees the parts are weakly decreasing and positive.
    pub(crate) fn from_parts_unchecked(parts: Vec<u32>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        debug_assert!(parts.iter().all(|&p| p > 0));
        let weight = parts.iter().sum();
        Self { parts, weight }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// The number being partitioned, |λ|.
    pub fn weight(&self) -> u32 {
        self.weight
    }

    /// Number of (nonzero) parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Largest part, or 0 for the empty partition.
    pub fn largest(&self) -> u32 {
        self.parts.first().copied().unwrap_or(0)
    }

    /// Largest number of times any single part value occurs.
    pub fn max_multiplicity(&self) -> usize {
        self.parts
            .chunk_by(|a, b| a == b)
            .map(<[u32]>::len)
            .max()
            .unwrap_or(0)
    }

    /// How many parts equal `value`.
    pub fn multiplicity(&self, value: u32) -> usize {
        self.parts.iter().filter(|&&p| p == value).count()
    }

    /// Transpose of the Young diagram.
    pub fn conjugate(&self) -> Partition {
        let mut conj = Vec::with_capacity(self.largest() as usize);
        for column in 1..=self.largest() {
            // parts are decreasing, so the parts >= column form a prefix
            let height = self.parts.partition_point(|&p| p >= column);
            conj.push(height as u32);
        }
        Partition::from_parts_unchecked(conj)
    }

    /// The parts padded with zeros to the smallest multiple of `m` at least the length.
    pub fn padded(&self, m: Modulus) -> Vec<u32> {
        let m = m.get() as usize;
        let mut padded = self.parts.clone();
        let target = padded.len().div_ceil(m) * m;
        padded.resize(target, 0);
        padded
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<u32>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl fmt::Display for Partition {
    /// Writes `5+4+2`; the empty partition is written `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("0");
        }
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses `5+4+2` (zeros are dropped, so padded forms like `3+0+0` are accepted).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let mut parts = Vec::new();
        for tok in s.split('+') {
            let v: u32 = tok
                .trim()
                .parse()
                .map_err(|_| Error::Parameter(format!("bad part {tok:?} in {s:?}")))?;
            if v > 0 {
                parts.push(v);
            }
        }
        Partition::new(parts)
    }
}

/// The grouping modulus, at least 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Modulus(u32);

impl Modulus {
    pub(crate) const THREE: Modulus = Modulus(3);

    pub fn new(m: u32) -> Result<Self> {
        if m < 2 {
            return Err(Error::Parameter(format!("modulus must be at least 2, got {m}")));
        }
        Ok(Self(m))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// Length of the type vectors, m − 1.
    pub fn type_len(self) -> usize {
        (self.0 - 1) as usize
    }
}

impl TryFrom<u32> for Modulus {
    type Error = Error;

    fn try_from(m: u32) -> Result<Self> {
        Modulus::new(m)
    }
}

impl From<Modulus> for u32 {
    fn from(m: Modulus) -> u32 {
        m.0
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

fn write_vector(f: &mut fmt::Formatter<'_>, v: &[u32]) -> fmt::Result {
    f.write_str("(")?;
    for (i, x) in v.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    f.write_str(")")
}

/// Number of nonzero entries of a type vector.
pub fn support_size(v: &[u32]) -> usize {
    v.iter().filter(|&&x| x != 0).count()
}

/// Exactly one nonzero entry.
pub fn is_pure(v: &[u32]) -> bool {
    support_size(v) == 1
}

/// More than one nonzero entry.
pub fn is_mixed(v: &[u32]) -> bool {
    support_size(v) > 1
}

/// The alternating sum type (Σ₁, …, Σ_{m−1}).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AltSumType(pub Vec<u32>);

/// The length type (l₁, …, l_{m−1}): parts counted by nonzero residue mod m.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LengthType(pub Vec<u32>);

macro_rules! type_vector_impls {
    ($t:ident) => {
        impl $t {
            pub fn as_slice(&self) -> &[u32] {
                &self.0
            }

            pub fn into_vec(self) -> Vec<u32> {
                self.0
            }

            pub fn is_zero(&self) -> bool {
                self.0.iter().all(|&x| x == 0)
            }

            pub fn is_pure(&self) -> bool {
                is_pure(&self.0)
            }

            pub fn is_mixed(&self) -> bool {
                is_mixed(&self.0)
            }

            pub fn total(&self) -> u32 {
                self.0.iter().sum()
            }
        }

        impl fmt::Display for $t {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write_vector(f, &self.0)
            }
        }
    };
}

type_vector_impls!(AltSumType);
type_vector_impls!(LengthType);
