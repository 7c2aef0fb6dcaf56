//! Integer partitions in ascending lexicographic order.
//!
//! A partition is stored as its weakly decreasing positive parts with no
//! trailing zeros. Comparison pads both sides with zeros to length `n`, so
//! `(1,1,1) < (2,1) < (3)`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::groups::PGroupType;

/// Largest `n` accepted by [`partitions_of`]. `p(64) = 1_741_630`.
pub const PARTITION_CAP: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
    n: u32,
}

impl Partition {
    /// Builds a partition from weakly decreasing positive parts.
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::Domain("partition parts must be positive".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Domain(format!(
                "partition parts must be weakly decreasing: {parts:?}"
            )));
        }
        let n = parts.iter().try_fold(0u32, |acc, &x| acc.checked_add(x));
        let n = n.ok_or_else(|| Error::size("partition sum", "overflow", u32::MAX))?;
        Ok(Partition { parts, n })
    }

    /// Sorts arbitrary positive parts into a partition.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Result<Self> {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self::new(parts)
    }

    pub fn empty() -> Self {
        Partition {
            parts: Vec::new(),
            n: 0,
        }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The zero-padded tuple `(x_1, ..., x_n)`.
    pub fn padded(&self) -> Vec<u32> {
        let mut v = self.parts.clone();
        v.resize(self.n as usize, 0);
        v
    }
}

/// Compares two partitions of the same integer lexicographically on their
/// zero-padded forms.
pub fn lex_compare(a: &Partition, b: &Partition) -> Result<Ordering> {
    if a.n != b.n {
        return Err(Error::Domain(format!(
            "cannot compare a partition of {} with a partition of {}",
            a.n, b.n
        )));
    }
    let pad = |p: &Partition| {
        p.parts
            .iter()
            .copied()
            .chain(std::iter::repeat(0))
            .take(p.n as usize)
            .collect::<Vec<_>>()
    };
    Ok(pad(a).cmp(&pad(b)))
}

/// Iterator over the partitions of `n` in strictly ascending lex order,
/// starting at `(1,...,1)` and ending at `(n)`.
#[derive(Debug, Clone)]
pub struct Partitions {
    next: Option<Vec<u32>>,
}

impl Partitions {
    pub fn new(n: u32) -> Self {
        Partitions {
            next: Some(vec![1; n as usize]),
        }
    }
}

/// Immediate lex successor: bump the rightmost part that can grow by one
/// while staying below its left neighbour and leaving something to its right,
/// then refill the tail with ones.
fn successor(parts: &[u32]) -> Option<Vec<u32>> {
    let mut tail: u32 = parts.last().copied().unwrap_or(0);
    for i in (0..parts.len().saturating_sub(1)).rev() {
        if i == 0 || parts[i] < parts[i - 1] {
            let mut out = parts[..i].to_vec();
            out.push(parts[i] + 1);
            out.extend(std::iter::repeat_n(1, (tail - 1) as usize));
            return Some(out);
        }
        tail += parts[i];
    }
    None
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let current = self.next.take()?;
        self.next = successor(&current);
        let n = current.iter().sum();
        Some(Partition { parts: current, n })
    }
}

/// All partitions of `n`, ascending under [`lex_compare`].
pub fn partitions_of(n: u32) -> Result<Vec<Partition>> {
    if n > PARTITION_CAP {
        return Err(Error::size("partition size n", n, PARTITION_CAP));
    }
    Ok(Partitions::new(n).collect())
}

/// Maps a partition to the abelian `p`-group type with ascending exponents.
pub fn partition_to_group_type(q: &Partition, p: u64) -> Result<PGroupType> {
    let mut alphas = q.parts.clone();
    alphas.reverse();
    PGroupType::new(p, alphas)
}

/// Inverse of [`partition_to_group_type`].
pub fn group_type_to_partition(g: &PGroupType) -> Partition {
    let mut parts = g.alphas().to_vec();
    parts.reverse();
    Partition { n: g.n(), parts }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, x) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("]")
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses the exact form emitted by `Display`, e.g. `[3,1,1]` or `[]`.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .strip_prefix('[')
            .ok_or_else(|| Error::parse(0, "expected '['"))?
            .strip_suffix(']')
            .ok_or_else(|| Error::parse(s.len(), "expected ']'"))?;
        if inner.is_empty() {
            return Ok(Partition::empty());
        }
        let mut parts = Vec::new();
        let mut pos = 1;
        for tok in inner.split(',') {
            if tok.is_empty() || !tok.bytes().all(|b| b.is_ascii_digit()) {
                return Err(Error::parse(pos, format!("expected a positive integer, found {tok:?}")));
            }
            let x: u32 = tok
                .parse()
                .map_err(|_| Error::parse(pos, format!("part {tok} out of range")))?;
            parts.push(x);
            pos += tok.len() + 1;
        }
        Partition::new(parts).map_err(|e| Error::parse(1, e.to_string()))
    }
}

impl serde::Serialize for Partition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(s)
    }
}

impl<'de> serde::Deserialize<'de> for Partition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<u32>::deserialize(d)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}
