//! Exact positive integers kept as prime factorizations.
//!
//! Products of element orders have `Theta(n * p^n)` digits, so they are never
//! expanded unless a caller asks for it with a digit budget.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeMap;

use crate::error::{Error, Result};
use crate::primes::require_prime;

/// `prod p^e` over a finite set of primes with positive exponents. The empty
/// map is 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct FactoredInteger {
    factors: BTreeMap<u64, BigUint>,
}

impl FactoredInteger {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn prime_power(p: u64, e: BigUint) -> Result<Self> {
        require_prime(p)?;
        let mut factors = BTreeMap::new();
        if !e.is_zero() {
            factors.insert(p, e);
        }
        Ok(FactoredInteger { factors })
    }

    /// Builds from `(prime, exponent)` pairs, merging repeated primes and
    /// dropping zero exponents.
    pub fn from_factors<I>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u64, BigUint)>,
    {
        let mut out = Self::one();
        for (p, e) in pairs {
            require_prime(p)?;
            out.add_exponent(p, &e);
        }
        Ok(out)
    }

    pub(crate) fn add_exponent(&mut self, p: u64, e: &BigUint) {
        if e.is_zero() {
            return;
        }
        *self.factors.entry(p).or_insert_with(BigUint::zero) += e;
    }

    pub fn factors(&self) -> &BTreeMap<u64, BigUint> {
        &self.factors
    }

    /// Exponent of `p`, zero when absent.
    pub fn exponent(&self, p: u64) -> BigUint {
        self.factors.get(&p).cloned().unwrap_or_default()
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn mul(&self, other: &FactoredInteger) -> FactoredInteger {
        let mut out = self.clone();
        for (p, e) in &other.factors {
            out.add_exponent(*p, e);
        }
        out
    }

    pub fn pow(&self, k: &BigUint) -> FactoredInteger {
        if k.is_zero() {
            return Self::one();
        }
        FactoredInteger {
            factors: self.factors.iter().map(|(p, e)| (*p, e * k)).collect(),
        }
    }

    /// Approximate `log10` of the value; `inf` when an exponent does not fit
    /// in an `f64`.
    pub fn log10_estimate(&self) -> f64 {
        self.factors
            .iter()
            .map(|(p, e)| e.to_f64().unwrap_or(f64::INFINITY) * (*p as f64).log10())
            .sum()
    }

    /// Expands to a plain integer, refusing anything with more than
    /// `digit_limit` decimal digits.
    pub fn materialize(&self, digit_limit: u64) -> Result<BigUint> {
        let estimate = self.log10_estimate();
        if !estimate.is_finite() || estimate > digit_limit as f64 + 1.0 {
            return Err(Error::size(
                "decimal digits of materialized value",
                format!("~{:.0}", estimate.floor() + 1.0),
                digit_limit,
            ));
        }
        let value = self.to_biguint();
        let digits = value.to_string().len() as u64;
        if digits > digit_limit {
            return Err(Error::size("decimal digits of materialized value", digits, digit_limit));
        }
        Ok(value)
    }

    /// Unbounded expansion. Only call this when the size is known to be small.
    pub(crate) fn to_biguint(&self) -> BigUint {
        self.factors
            .iter()
            .map(|(p, e)| {
                let e = e.to_u32().expect("exponent too large to materialize");
                BigUint::from(*p).pow(e)
            })
            .product()
    }
}

/// Exact total order on factored integers.
///
/// Identical maps are equal. Otherwise common factors cancel; if what is left
/// sits on one side only, that side is larger. Small remainders are expanded
/// and compared directly; large ones compare `sum d_p ln p` against zero with
/// fixed-point logarithms whose precision doubles until the error bound
/// separates the sum from zero. Distinct values always separate because the
/// logarithms of primes are linearly independent over the rationals.
pub fn factored_compare(a: &FactoredInteger, b: &FactoredInteger) -> Ordering {
    if a == b {
        return Ordering::Equal;
    }
    let mut diff: BTreeMap<u64, BigInt> = BTreeMap::new();
    for (p, e) in &a.factors {
        diff.insert(*p, BigInt::from(e.clone()));
    }
    for (p, e) in &b.factors {
        *diff.entry(*p).or_insert_with(BigInt::zero) -= BigInt::from(e.clone());
    }
    diff.retain(|_, d| !d.is_zero());

    if diff.values().all(|d| d.is_positive()) {
        return Ordering::Greater;
    }
    if diff.values().all(|d| d.is_negative()) {
        return Ordering::Less;
    }

    let mut num = FactoredInteger::one();
    let mut den = FactoredInteger::one();
    for (p, d) in &diff {
        let side = if d.is_positive() { &mut num } else { &mut den };
        side.add_exponent(*p, d.magnitude());
    }
    const EXPAND_DIGITS: f64 = 4096.0;
    if num.log10_estimate() < EXPAND_DIGITS && den.log10_estimate() < EXPAND_DIGITS {
        return num.to_biguint().cmp(&den.to_biguint());
    }

    let mut precision = 64u64;
    loop {
        let mut sum = BigInt::zero();
        let mut error = BigUint::zero();
        for (p, d) in &diff {
            let (ln, err) = fixed_point_ln(*p, precision);
            sum += d * ln;
            error += d.magnitude() * err;
        }
        if sum.magnitude() > &error {
            return if sum.sign() == Sign::Plus {
                Ordering::Greater
            } else {
                Ordering::Less
            };
        }
        precision *= 2;
    }
}

/// `atanh(num/den) * 2^bits` rounded down, for `0 <= num/den <= 1/3`, with an
/// error bound in units of `2^-bits`.
fn fixed_point_atanh(num: &BigUint, den: &BigUint, bits: u64) -> (BigUint, u64) {
    let mut sum = BigUint::zero();
    let mut terms = 0u64;
    let num_sq = num * num;
    let den_sq = den * den;
    let mut pn = num.clone();
    let mut pd = den.clone();
    let mut j = 1u64;
    loop {
        let term = (&pn << bits) / (&pd * j);
        if term.is_zero() {
            break;
        }
        sum += term;
        terms += 1;
        pn *= &num_sq;
        pd *= &den_sq;
        j += 2;
    }
    // one ulp of floor error per term, and the geometric tail after the first
    // vanishing term is below 9/8 ulp
    (sum, terms + 2)
}

/// `ln(p) * 2^bits` with an absolute error bound in ulps.
fn fixed_point_ln(p: u64, bits: u64) -> (BigInt, BigUint) {
    let k = 63 - p.leading_zeros() as u64;
    let (ln2_half, e2) = fixed_point_atanh(&BigUint::one(), &BigUint::from(3u32), bits);
    let base = 1u64 << k;
    let (rest_half, er) =
        fixed_point_atanh(&BigUint::from(p - base), &BigUint::from(p + base), bits);
    let value = (ln2_half * (2 * k)) + (rest_half * 2u32);
    let err = BigUint::from(2 * k * e2 + 2 * er);
    (BigInt::from(value), err)
}

impl PartialOrd for FactoredInteger {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FactoredInteger {
    fn cmp(&self, other: &Self) -> Ordering {
        factored_compare(self, other)
    }
}

impl fmt::Display for FactoredInteger {
    /// `2^45 * 3^32`, or `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        for (i, (p, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(" * ")?;
            }
            if e.is_one() {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Map with decimal-string keys in numeric order and decimal-string values.
pub(crate) struct DecimalMap<'a>(pub &'a BTreeMap<u64, BigUint>);

impl serde::Serialize for DecimalMap<'_> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (p, e) in self.0 {
            map.serialize_entry(&p.to_string(), &e.to_string())?;
        }
        map.end()
    }
}

impl serde::Serialize for FactoredInteger {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(1))?;
        map.serialize_entry("factors", &DecimalMap(&self.factors))?;
        map.end()
    }
}

impl<'de> serde::Deserialize<'de> for FactoredInteger {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;

        #[derive(serde::Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            factors: BTreeMap<String, String>,
        }
        let raw = Raw::deserialize(d)?;
        let pairs = raw
            .factors
            .iter()
            .map(|(p, e)| {
                let p: u64 = p.parse().map_err(D::Error::custom)?;
                let e: BigUint = e.parse().map_err(D::Error::custom)?;
                Ok((p, e))
            })
            .collect::<std::result::Result<Vec<_>, D::Error>>()?;
        FactoredInteger::from_factors(pairs).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fi(pairs: &[(u64, u64)]) -> FactoredInteger {
        FactoredInteger::from_factors(pairs.iter().map(|&(p, e)| (p, BigUint::from(e)))).unwrap()
    }

    #[test]
    fn compare_examples() {
        assert_eq!(factored_compare(&fi(&[(2, 5)]), &fi(&[(2, 3)])), Ordering::Greater);
        assert_eq!(
            factored_compare(&fi(&[(2, 45), (3, 32)]), &fi(&[(2, 45), (3, 32)])),
            Ordering::Equal
        );
        assert_eq!(factored_compare(&fi(&[(3, 2)]), &fi(&[(2, 3)])), Ordering::Greater);
        assert_eq!(factored_compare(&FactoredInteger::one(), &fi(&[(2, 1)])), Ordering::Less);
    }

    #[test]
    fn compare_large_exponents() {
        // 3^(10^6) vs 2^(1584962 or 1584963): log2(3) = 1.5849625007...
        let three = fi(&[(3, 1_000_000)]);
        assert_eq!(factored_compare(&three, &fi(&[(2, 1_584_962)])), Ordering::Greater);
        assert_eq!(factored_compare(&three, &fi(&[(2, 1_584_963)])), Ordering::Less);
        // 2^a 5^b vs 3^c 7^d with huge exponents
        let big = BigUint::from(10u32).pow(40);
        let x = FactoredInteger::from_factors([(2, big.clone()), (5, big.clone())]).unwrap();
        let y = FactoredInteger::from_factors([(3, big.clone()), (7, big.clone())]).unwrap();
        assert_eq!(factored_compare(&x, &y), Ordering::Less);
        assert_eq!(factored_compare(&y, &x), Ordering::Greater);
    }

    #[test]
    fn compare_needs_precision() {
        // 2^m vs 3^n with m/n a convergent of log2(3): the logs differ by ~1e-7
        // relative, far below f64 noise at these sizes.
        let big = BigUint::from(10u32).pow(30);
        let m = &big * 1_584_962_500_721_156u64 / 1_000_000_000_000_000u64;
        let a = FactoredInteger::from_factors([(2, m.clone())]).unwrap();
        let b = FactoredInteger::from_factors([(3, big.clone())]).unwrap();
        // log2(3) * 10^30 = 1584962500721156181453738943947.8..., so 2^m < 3^(10^30)
        // for m = floor of that value, and 2^(m+1) > 3^(10^30).
        let m_exact: BigUint = "1584962500721156181453738943947".parse().unwrap();
        let a2 = FactoredInteger::from_factors([(2, m_exact.clone())]).unwrap();
        let a3 = FactoredInteger::from_factors([(2, m_exact + 1u32)]).unwrap();
        assert_eq!(factored_compare(&a, &b), Ordering::Less);
        assert_eq!(factored_compare(&a2, &b), Ordering::Less);
        assert_eq!(factored_compare(&a3, &b), Ordering::Greater);
    }

    #[test]
    fn fixed_point_ln_matches_f64() {
        for p in [2u64, 3, 5, 7, 11, 101, 65_537, 1_000_000_007] {
            let (v, err) = fixed_point_ln(p, 80);
            let approx = v.to_f64().unwrap() / 2f64.powi(80);
            assert!((approx - (p as f64).ln()).abs() < 1e-12, "p = {p}");
            assert!(err < BigUint::from(10_000u32));
        }
    }

    #[test]
    fn materialize_budget() {
        let v = fi(&[(2, 3), (3, 4)]);
        assert_eq!(v.materialize(3).unwrap(), BigUint::from(648u32));
        assert!(matches!(v.materialize(2), Err(Error::Size { .. })));
        let huge = FactoredInteger::from_factors([(2, BigUint::from(10u32).pow(30))]).unwrap();
        assert!(matches!(huge.materialize(1_000_000), Err(Error::Size { .. })));
        assert_eq!(FactoredInteger::one().materialize(1).unwrap(), BigUint::one());
    }

    #[test]
    fn json_form() {
        let v = fi(&[(3, 32), (2, 45), (11, 1)]);
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, r#"{"factors":{"2":"45","3":"32","11":"1"}}"#);
        assert_eq!(serde_json::from_str::<FactoredInteger>(&s).unwrap(), v);
        assert_eq!(
            serde_json::to_string(&FactoredInteger::one()).unwrap(),
            r#"{"factors":{}}"#
        );
        assert!(serde_json::from_str::<FactoredInteger>(r#"{"factors":{"4":"1"}}"#).is_err());
        assert!(serde_json::from_str::<FactoredInteger>(r#"{"factors":{"2":"-1"}}"#).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(fi(&[(2, 45), (3, 32)]).to_string(), "2^45 * 3^32");
        assert_eq!(fi(&[(7, 1)]).to_string(), "7");
        assert_eq!(FactoredInteger::one().to_string(), "1");
    }

    fn arb_small() -> impl Strategy<Value = FactoredInteger> {
        proptest::collection::btree_map(
            prop::sample::select(vec![2u64, 3, 5, 7, 11, 13]),
            0u64..40,
            0..4,
        )
        .prop_map(|m| {
            FactoredInteger::from_factors(m.into_iter().map(|(p, e)| (p, BigUint::from(e)))).unwrap()
        })
    }

    proptest! {
        #[test]
        fn compare_matches_materialized(a in arb_small(), b in arb_small()) {
            prop_assert_eq!(factored_compare(&a, &b), a.to_biguint().cmp(&b.to_biguint()));
        }

        #[test]
        fn compare_scaled_matches(a in arb_small(), b in arb_small(), k in 1u64..1_000_000_000) {
            // scaling both exponents by k preserves the order and pushes the
            // comparison onto the logarithm path
            let k = BigUint::from(k) * BigUint::from(10u32).pow(6);
            prop_assert_eq!(
                factored_compare(&a.pow(&k), &b.pow(&k)),
                a.to_biguint().cmp(&b.to_biguint())
            );
        }

        #[test]
        fn json_round_trip(a in arb_small()) {
            let s = serde_json::to_string(&a).unwrap();
            prop_assert_eq!(serde_json::from_str::<FactoredInteger>(&s).unwrap(), a);
        }
    }
}
