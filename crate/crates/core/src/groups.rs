//! Finite abelian groups in primary decomposition, their enumeration, and
//! two independent ways of computing the multiset of element orders.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::partitions::{group_type_to_partition, partition_to_group_type, Partition, Partitions};
use crate::primes::{factorize, require_prime, FACTOR_CAP};

/// Largest group order the literal-enumeration oracle will walk.
pub const BRUTE_FORCE_CAP: u64 = 100_000;

/// Abelian `p`-group `Z_{p^a1} x ... x Z_{p^ak}` with `a1 <= ... <= ak`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PGroupType {
    p: u64,
    alphas: Vec<u32>,
}

impl PGroupType {
    pub fn new(p: u64, alphas: Vec<u32>) -> Result<Self> {
        require_prime(p)?;
        if alphas.contains(&0) {
            return Err(Error::Domain("cyclic exponents must be at least 1".into()));
        }
        if alphas.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Domain(format!(
                "exponents must be ascending: {alphas:?}"
            )));
        }
        Ok(PGroupType { p, alphas })
    }

    pub fn cyclic(p: u64, alpha: u32) -> Result<Self> {
        Self::new(p, vec![alpha])
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn alphas(&self) -> &[u32] {
        &self.alphas
    }

    pub fn rank(&self) -> usize {
        self.alphas.len()
    }

    /// `n = a1 + ... + ak`, so the order is `p^n`.
    pub fn n(&self) -> u32 {
        self.alphas.iter().sum()
    }

    pub fn order(&self) -> BigUint {
        BigUint::from(self.p).pow(self.n())
    }

    pub fn is_trivial(&self) -> bool {
        self.alphas.is_empty()
    }
}

/// A finite abelian group as a sorted list of `(prime, exponent partition)`
/// pairs. The trivial group has no components.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AbelianGroup {
    components: Vec<(u64, Partition)>,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        AbelianGroup {
            components: Vec::new(),
        }
    }

    pub fn from_components(components: Vec<(u64, Partition)>) -> Result<Self> {
        for (p, q) in &components {
            require_prime(*p)?;
            if q.is_empty() {
                return Err(Error::Domain(format!("empty partition for prime {p}")));
            }
        }
        if components.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(Error::Domain(
                "primes must be distinct and ascending".into(),
            ));
        }
        Ok(AbelianGroup { components })
    }

    pub fn from_p_group(g: &PGroupType) -> Self {
        if g.is_trivial() {
            return Self::trivial();
        }
        AbelianGroup {
            components: vec![(g.p(), group_type_to_partition(g))],
        }
    }

    pub fn components(&self) -> &[(u64, Partition)] {
        &self.components
    }

    /// The Sylow subgroups as `p`-group types.
    pub fn sylow_subgroups(&self) -> Vec<PGroupType> {
        self.components
            .iter()
            .map(|(p, q)| partition_to_group_type(q, *p).expect("primes validated on construction"))
            .collect()
    }

    pub fn order(&self) -> BigUint {
        self.components
            .iter()
            .map(|(p, q)| BigUint::from(*p).pow(q.n()))
            .product()
    }

    pub fn is_trivial(&self) -> bool {
        self.components.is_empty()
    }

    /// Orders of the cyclic prime-power factors, prime by prime, largest first.
    pub fn prime_power_factors(&self) -> Vec<BigUint> {
        self.components
            .iter()
            .flat_map(|(p, q)| q.parts().iter().map(move |&a| BigUint::from(*p).pow(a)))
            .collect()
    }
}

/// Canonical form of `Z_{c1} x Z_{c2} x ...`.
pub fn canonicalize(cyclic_orders: &[u64]) -> Result<AbelianGroup> {
    let mut per_prime: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
    for &c in cyclic_orders {
        if c < 2 {
            return Err(Error::Domain(format!(
                "cyclic factor orders must be at least 2, got {c}"
            )));
        }
        for (p, e) in factorize(c)? {
            per_prime.entry(p).or_default().push(e);
        }
    }
    let components = per_prime
        .into_iter()
        .map(|(p, parts)| Ok((p, Partition::from_unsorted(parts)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(AbelianGroup { components })
}

/// Every abelian group of order `m` up to isomorphism. Per-prime partitions
/// run in ascending lex order and the smallest prime varies slowest.
pub fn enumerate_abelian_groups(m: u64) -> Result<Vec<AbelianGroup>> {
    if m == 0 {
        return Err(Error::Domain("group order must be at least 1".into()));
    }
    if m > FACTOR_CAP {
        return Err(Error::size("group order", m, FACTOR_CAP));
    }
    let mut groups = vec![Vec::new()];
    for (p, e) in factorize(m)? {
        let choices: Vec<Partition> = Partitions::new(e).collect();
        groups = groups
            .into_iter()
            .flat_map(|prefix: Vec<(u64, Partition)>| {
                choices.iter().map(move |q| {
                    let mut next = prefix.clone();
                    next.push((p, q.clone()));
                    next
                })
            })
            .collect();
    }
    Ok(groups
        .into_iter()
        .map(|components| AbelianGroup { components })
        .collect())
}

/// Multiset of element orders: order `d` maps to the number of elements of
/// order exactly `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderSpectrum {
    entries: BTreeMap<BigUint, BigUint>,
}

impl OrderSpectrum {
    /// Validates the identity count and divisibility.
    pub fn new(entries: BTreeMap<BigUint, BigUint>) -> Result<Self> {
        let entries: BTreeMap<_, _> = entries.into_iter().filter(|(_, m)| !m.is_zero()).collect();
        if entries.get(&BigUint::one()) != Some(&BigUint::one()) {
            return Err(Error::Domain("spectrum must contain exactly one element of order 1".into()));
        }
        let order: BigUint = entries.values().sum();
        if let Some((d, _)) = entries.iter().find(|(d, _)| d.is_zero() || !order.is_multiple_of(d)) {
            return Err(Error::Domain(format!(
                "element order {d} does not divide group order {order}"
            )));
        }
        Ok(OrderSpectrum { entries })
    }

    pub fn entries(&self) -> &BTreeMap<BigUint, BigUint> {
        &self.entries
    }

    pub fn multiplicity(&self, d: &BigUint) -> BigUint {
        self.entries.get(d).cloned().unwrap_or_default()
    }

    /// `sum_d m_d`.
    pub fn group_order(&self) -> BigUint {
        self.entries.values().sum()
    }

    /// Spectrum of a direct product of groups with coprime orders.
    pub fn coprime_product(&self, other: &OrderSpectrum) -> OrderSpectrum {
        let mut entries = BTreeMap::new();
        for (d1, m1) in &self.entries {
            for (d2, m2) in &other.entries {
                *entries.entry(d1 * d2).or_insert_with(BigUint::zero) += m1 * m2;
            }
        }
        OrderSpectrum { entries }
    }

    fn identity() -> Self {
        OrderSpectrum {
            entries: BTreeMap::from([(BigUint::one(), BigUint::one())]),
        }
    }
}

/// Order spectrum of a `p`-group by counting: exactly `p^{sum_j min(a_j, i)}`
/// elements have order dividing `p^i`.
pub fn p_group_spectrum(g: &PGroupType) -> OrderSpectrum {
    let p = BigUint::from(g.p());
    let top = g.alphas().last().copied().unwrap_or(0);
    let mut entries = BTreeMap::new();
    let mut below = BigUint::zero();
    for i in 0..=top {
        let exp: u32 = g.alphas().iter().map(|&a| a.min(i)).sum();
        let upto = p.pow(exp);
        entries.insert(p.pow(i), &upto - &below);
        below = upto;
    }
    OrderSpectrum { entries }
}

/// Order spectrum by counting per Sylow subgroup and convolving.
pub fn order_spectrum(g: &AbelianGroup) -> OrderSpectrum {
    g.sylow_subgroups()
        .iter()
        .map(p_group_spectrum)
        .fold(OrderSpectrum::identity(), |acc, s| acc.coprime_product(&s))
}

/// Order spectrum by walking every element of `Z_{q1} x ... x Z_{qr}`
/// (prime-power `q`s) and taking the lcm of `q / gcd(x, q)`.
pub fn brute_force_spectrum(g: &AbelianGroup) -> Result<OrderSpectrum> {
    let order = g.order();
    if order > BigUint::from(BRUTE_FORCE_CAP) {
        return Err(Error::size("group order for literal enumeration", order, BRUTE_FORCE_CAP));
    }
    let moduli: Vec<u64> = g
        .prime_power_factors()
        .iter()
        .map(|q| q.to_u64().expect("bounded by the cap"))
        .collect();
    let mut tally: HashMap<u64, u64> = HashMap::new();
    let mut digits = vec![0u64; moduli.len()];
    loop {
        let o = digits
            .iter()
            .zip(&moduli)
            .fold(1u64, |acc, (&x, &q)| acc.lcm(&(q / x.gcd(&q))));
        *tally.entry(o).or_default() += 1;
        // mixed-radix increment
        let mut pos = 0;
        loop {
            if pos == digits.len() {
                let entries = tally
                    .into_iter()
                    .map(|(d, m)| (BigUint::from(d), BigUint::from(m)))
                    .collect();
                return OrderSpectrum::new(entries);
            }
            digits[pos] += 1;
            if digits[pos] < moduli[pos] {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
    }
}

impl fmt::Display for AbelianGroup {
    /// Multiplicative notation, e.g. `Z4xZ3^2`; the trivial group is `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("1");
        }
        let mut first = true;
        for (p, q) in &self.components {
            let parts = q.parts();
            let mut i = 0;
            while i < parts.len() {
                let run = parts[i..].iter().take_while(|&&a| a == parts[i]).count();
                if !first {
                    f.write_str("x")?;
                }
                first = false;
                write!(f, "Z{}", BigUint::from(*p).pow(parts[i]))?;
                if run > 1 {
                    write!(f, "^{run}")?;
                }
                i += run;
            }
        }
        Ok(())
    }
}

impl fmt::Display for PGroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&AbelianGroup::from_p_group(self), f)
    }
}
