//! Bitset subsets of a ground set of at most 64 elements.
//!
//! `Subset` is the universal currency of every operation in this crate.
//! The canonical order on subsets is the numeric order of the underlying
//! bit pattern; every enumeration emits subsets in that order so outputs
//! are deterministic.

use std::fmt;

use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

/// Ground sets are capped at one machine word.
pub const MAX_GROUND_SIZE: usize = 64;

/// A subset of `{0, ..., n-1}` stored as a 64-bit mask.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Subset(u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn from_bits(bits: u64) -> Subset {
        Subset(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// The full ground set `{0, ..., n-1}`.
    pub fn full(n: usize) -> Subset {
        assert!(n <= MAX_GROUND_SIZE, "ground set larger than {MAX_GROUND_SIZE}");
        if n == 64 {
            Subset(u64::MAX)
        } else {
            Subset((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Subset {
        assert!(i < MAX_GROUND_SIZE);
        Subset(1u64 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(iter: I) -> Subset {
        let mut s = Subset::EMPTY;
        for i in iter {
            s = s.with(i);
        }
        s
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_GROUND_SIZE && self.0 & (1u64 << i) != 0
    }

    #[must_use]
    pub fn with(self, i: usize) -> Subset {
        assert!(i < MAX_GROUND_SIZE);
        Subset(self.0 | (1u64 << i))
    }

    #[must_use]
    pub fn without(self, i: usize) -> Subset {
        assert!(i < MAX_GROUND_SIZE);
        Subset(self.0 & !(1u64 << i))
    }

    #[must_use]
    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    #[must_use]
    pub fn intersect(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    #[must_use]
    pub fn minus(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Subset) -> bool {
        self.0 & other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Lowest-index member, if any.
    pub fn first(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    pub fn iter(self) -> SubsetIter {
        SubsetIter(self.0)
    }

    pub fn indices(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Parses a comma-separated list of 0-based indices; the empty string is the empty set.
    pub fn parse(text: &str) -> Result<Subset, String> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Subset::EMPTY);
        }
        let mut s = Subset::EMPTY;
        for tok in text.split(',') {
            let i: usize = tok
                .trim()
                .parse()
                .map_err(|_| format!("invalid index `{}`", tok.trim()))?;
            if i >= MAX_GROUND_SIZE {
                return Err(format!("index {i} exceeds the ground-set cap of {MAX_GROUND_SIZE}"));
            }
            s = s.with(i);
        }
        Ok(s)
    }
}

pub struct SubsetIter(u64);

impl Iterator for SubsetIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let i = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(i)
        }
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self)
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for i in self.iter() {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
            first = false;
        }
        Ok(())
    }
}

impl Serialize for Subset {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.len()))?;
        for i in self.iter() {
            seq.serialize_element(&i)?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Subset {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Subset, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = Subset;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "a list of 0-based indices")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Subset, A::Error> {
                let mut s = Subset::EMPTY;
                while let Some(i) = seq.next_element::<usize>()? {
                    if i >= MAX_GROUND_SIZE {
                        return Err(de::Error::custom(format!("index {i} out of range")));
                    }
                    s = s.with(i);
                }
                Ok(s)
            }
        }
        deserializer.deserialize_seq(V)
    }
}
