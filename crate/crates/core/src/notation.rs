//! Textual and JSON forms of groups and spectra.
//!
//! A group can be written three ways, all canonicalized on parse:
//!
//! ```text
//! Z4xZ3^2            multiplicative
//! [4,3,3]            list of cyclic factor orders
//! {"2":[2],"3":[1,1]} canonical: prime -> exponent partition
//! ```
//!
//! The trivial group is `1`, `[]` or `{}`.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::ser::SerializeMap;

use crate::error::{Error, Result};
use crate::groups::{canonicalize, AbelianGroup, OrderSpectrum};
use crate::partitions::Partition;

/// Most cyclic factors a single expression may expand to.
const MAX_FACTORS: u64 = 4096;

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("'{c}'")))
        }
    }

    fn unexpected(&self, wanted: &str) -> Error {
        match self.peek() {
            Some(c) => Error::parse(self.pos, format!("expected {wanted}, found '{c}'")),
            None => Error::parse(self.pos, format!("expected {wanted}, found end of input")),
        }
    }

    fn number(&mut self) -> Result<u64> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.unexpected("a number"));
        }
        self.src[start..self.pos]
            .parse()
            .map_err(|_| Error::parse(start, "number out of range"))
    }

    fn at_end(&self) -> bool {
        self.pos == self.src.len()
    }
}

fn cyclic_factor(cur: &mut Cursor<'_>, orders: &mut Vec<u64>) -> Result<()> {
    let start = cur.pos;
    let q = cur.number()?;
    if q < 2 {
        return Err(Error::parse(start, format!("cyclic order must be at least 2, got {q}")));
    }
    orders.push(q);
    Ok(())
}

fn parse_multiplicative(cur: &mut Cursor<'_>) -> Result<Vec<u64>> {
    let mut orders = Vec::new();
    loop {
        cur.expect('Z')?;
        cyclic_factor(cur, &mut orders)?;
        if cur.eat('^') {
            let at = cur.pos;
            let k = cur.number()?;
            if k == 0 {
                return Err(Error::parse(at, "power must be at least 1"));
            }
            if orders.len() as u64 + k > MAX_FACTORS {
                return Err(Error::parse(at, format!("more than {MAX_FACTORS} cyclic factors")));
            }
            let q = *orders.last().expect("pushed above");
            orders.extend(std::iter::repeat_n(q, k as usize - 1));
        }
        if cur.at_end() {
            return Ok(orders);
        }
        if !(cur.eat('x') || cur.eat('×')) {
            return Err(cur.unexpected("'x' or end of input"));
        }
    }
}

fn parse_list(cur: &mut Cursor<'_>) -> Result<Vec<u64>> {
    cur.expect('[')?;
    let mut orders = Vec::new();
    if cur.eat(']') {
        return Ok(orders);
    }
    loop {
        cyclic_factor(cur, &mut orders)?;
        if orders.len() as u64 > MAX_FACTORS {
            return Err(Error::parse(cur.pos, format!("more than {MAX_FACTORS} cyclic factors")));
        }
        if cur.eat(']') {
            return Ok(orders);
        }
        cur.expect(',')?;
    }
}

/// Parses any of the three group notations.
pub fn parse_group(src: &str) -> Result<AbelianGroup> {
    let trimmed = src.trim();
    let offset = src.len() - src.trim_start().len();
    let shift = |e: Error| match e {
        Error::Parse { position, message } => Error::parse(position + offset, message),
        other => other,
    };
    let mut cur = Cursor { src: trimmed, pos: 0 };
    let orders = match cur.peek() {
        None => return Err(Error::parse(offset, "empty group expression")),
        Some('{') => {
            let g: AbelianGroup = serde_json::from_str(trimmed).map_err(|e| {
                Error::parse(offset + e.column().saturating_sub(1), e.to_string())
            })?;
            return Ok(g);
        }
        Some('[') => {
            let orders = parse_list(&mut cur).map_err(shift)?;
            if !cur.at_end() {
                return Err(shift(cur.unexpected("end of input")));
            }
            orders
        }
        Some('1') if trimmed == "1" => Vec::new(),
        Some(_) => parse_multiplicative(&mut cur).map_err(shift)?,
    };
    canonicalize(&orders).map_err(|e| match e {
        Error::Domain(m) => Error::parse(offset, m),
        other => other,
    })
}

impl FromStr for AbelianGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_group(s)
    }
}

impl serde::Serialize for AbelianGroup {
    /// `{"2":[2],"3":[1,1]}`, primes in numeric order.
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.components().len()))?;
        for (p, q) in self.components() {
            map.serialize_entry(&p.to_string(), q)?;
        }
        map.end()
    }
}

impl<'de> serde::Deserialize<'de> for AbelianGroup {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = BTreeMap::<String, Partition>::deserialize(d)?;
        let mut components = raw
            .into_iter()
            .map(|(p, q)| {
                let p: u64 = p
                    .parse()
                    .map_err(|_| D::Error::custom(format!("invalid prime key {p:?}")))?;
                Ok((p, q))
            })
            .collect::<std::result::Result<Vec<_>, D::Error>>()?;
        components.sort_by_key(|c| c.0);
        AbelianGroup::from_components(components).map_err(D::Error::custom)
    }
}

struct DecimalPairs<'a>(&'a BTreeMap<BigUint, BigUint>);

impl serde::Serialize for DecimalPairs<'_> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (d, m) in self.0 {
            map.serialize_entry(&d.to_string(), &m.to_string())?;
        }
        map.end()
    }
}

impl serde::Serialize for OrderSpectrum {
    /// `{"order":"36","spectrum":{"1":"1","2":"1",...}}`.
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(2))?;
        map.serialize_entry("order", &self.group_order().to_string())?;
        map.serialize_entry("spectrum", &DecimalPairs(self.entries()))?;
        map.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::order_spectrum;

    #[test]
    fn three_spellings_agree() {
        let a = parse_group("Z4xZ3^2").unwrap();
        let b = parse_group("[4,3,3]").unwrap();
        let c = parse_group(r#"{"2":[2],"3":[1,1]}"#).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
        assert_eq!(serde_json::to_string(&a).unwrap(), r#"{"2":[2],"3":[1,1]}"#);
        assert_eq!(parse_group("Z2^4xZ3").unwrap(), parse_group("[2,6,2,2]").unwrap());
        assert_eq!(parse_group(" Z6 ").unwrap(), canonicalize(&[2, 3]).unwrap());
        assert_eq!(parse_group("Z2×Z2").unwrap(), canonicalize(&[2, 2]).unwrap());
    }

    #[test]
    fn trivial_spellings() {
        for s in ["1", "[]", "{}"] {
            assert!(parse_group(s).unwrap().is_trivial(), "{s}");
        }
    }

    #[test]
    fn numeric_key_order() {
        let g = parse_group("Z11xZ2").unwrap();
        assert_eq!(serde_json::to_string(&g).unwrap(), r#"{"2":[1],"11":[1]}"#);
        let back: AbelianGroup = serde_json::from_str(r#"{"11":[1],"2":[1]}"#).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn error_positions() {
        let pos = |s: &str| match parse_group(s) {
            Err(Error::Parse { position, .. }) => position,
            other => panic!("{s}: expected parse error, got {other:?}"),
        };
        assert_eq!(pos("Z4xY3"), 3);
        assert_eq!(pos("Z4x"), 3);
        assert_eq!(pos("Z1"), 1);
        assert_eq!(pos("Z4^0"), 3);
        assert_eq!(pos("[4,,3]"), 3);
        assert_eq!(pos("[4,3"), 4);
        assert_eq!(pos("  Z4xQ"), 5);
        assert_eq!(pos(""), 0);
        assert!(parse_group(r#"{"4":[1]}"#).is_err());
        assert!(parse_group(r#"{"2":[1,2]}"#).is_err());
        assert!(parse_group(r#"{"2":[]}"#).is_err());
    }

    #[test]
    fn spectrum_json() {
        let s = order_spectrum(&parse_group("Z4xZ9").unwrap());
        assert_eq!(
            serde_json::to_string(&s).unwrap(),
            r#"{"order":"36","spectrum":{"1":"1","2":"1","3":"2","4":"2","6":"2","9":"6","12":"4","18":"6","36":"12"}}"#
        );
    }
}
