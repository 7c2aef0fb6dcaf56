//! Sweeps that check the monotonicity and injectivity results for the
//! product of element orders, search for coincidences across different group
//! orders, and test whether each `psi_k` separates groups of equal order.
//!
//! Reports are plain data. A non-empty violation list in a monotonicity or
//! injectivity report means the implementation is wrong; a non-empty
//! coincidence list in a [`ConjectureFReport`] is a finding.

use std::cmp::Ordering;
use std::collections::HashMap;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::factored::FactoredInteger;
use crate::groups::{enumerate_abelian_groups, AbelianGroup};
use crate::partitions::{lex_compare, partition_to_group_type, partitions_of, Partition};
use crate::primes::require_prime;
use crate::psi::{psi_prime, psi_prime_exponent};
use crate::symmetric::{psi_all, PSI_ALL_CAP};

/// Largest order scanned by the injectivity and collision sweeps.
pub const SWEEP_CAP: u64 = 1_000_000;

fn decimal<S: serde::Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonotonicityRow {
    pub partition: Partition,
    /// `E` in `psi'(G) = p^E`.
    #[serde(serialize_with = "decimal")]
    pub exponent: BigUint,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonotonicityReport {
    pub p: u64,
    pub n: u32,
    /// One row per partition of `n`, ascending lex order.
    pub rows: Vec<MonotonicityRow>,
    /// Adjacent `(i, i + 1)` where the exponent failed to increase strictly.
    pub violations: Vec<(usize, usize)>,
}

impl MonotonicityReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }

    /// Every pair `(i, j)`, `i < j`, where comparing exponents disagrees with
    /// comparing partitions. Empty exactly when the full biconditional holds.
    pub fn pair_mismatches(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, a) in self.rows.iter().enumerate() {
            for (j, b) in self.rows.iter().enumerate().skip(i + 1) {
                let lex = lex_compare(&a.partition, &b.partition).expect("same n");
                if lex != a.exponent.cmp(&b.exponent) {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

/// Walks the partitions of `n` in ascending lex order and checks that the
/// exponent of `psi'` of the matching `p`-group strictly increases.
pub fn check_theorem_c(p: u64, n: u32) -> Result<MonotonicityReport> {
    require_prime(p)?;
    if n == 0 {
        return Err(Error::Domain("n must be at least 1".into()));
    }
    let partitions = partitions_of(n)?;
    let rows: Vec<MonotonicityRow> = partitions
        .into_par_iter()
        .map(|q| {
            let g = partition_to_group_type(&q, p).expect("prime checked");
            MonotonicityRow {
                exponent: psi_prime_exponent(&g),
                partition: q,
            }
        })
        .collect();
    let violations = adjacent_violations(&rows);
    Ok(MonotonicityReport {
        p,
        n,
        rows,
        violations,
    })
}

fn adjacent_violations(rows: &[MonotonicityRow]) -> Vec<(usize, usize)> {
    rows.windows(2)
        .enumerate()
        .filter(|(_, w)| w[0].exponent.cmp(&w[1].exponent) != Ordering::Less)
        .map(|(i, _)| (i, i + 1))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupValue {
    pub group: AbelianGroup,
    pub psi_prime: FactoredInteger,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InjectivityReport {
    pub m: u64,
    pub groups: Vec<GroupValue>,
    /// Index sets of groups sharing one value. Must be empty.
    pub duplicates: Vec<Vec<usize>>,
}

impl InjectivityReport {
    pub fn holds(&self) -> bool {
        self.duplicates.is_empty()
    }
}

fn duplicate_sets<K: std::hash::Hash + Eq>(keys: impl Iterator<Item = K>) -> Vec<Vec<usize>> {
    let mut buckets: HashMap<K, Vec<usize>> = HashMap::new();
    for (i, k) in keys.enumerate() {
        buckets.entry(k).or_default().push(i);
    }
    let mut sets: Vec<Vec<usize>> = buckets.into_values().filter(|v| v.len() > 1).collect();
    sets.sort();
    sets
}

/// `psi'` of every abelian group of order `m`, with any repeated values.
pub fn check_injectivity(m: u64) -> Result<InjectivityReport> {
    if m > SWEEP_CAP {
        return Err(Error::size("group order", m, SWEEP_CAP));
    }
    let groups: Vec<GroupValue> = enumerate_abelian_groups(m)?
        .into_iter()
        .map(|group| GroupValue {
            psi_prime: psi_prime(&group),
            group,
        })
        .collect();
    let duplicates = duplicate_sets(groups.iter().map(|g| &g.psi_prime));
    Ok(InjectivityReport {
        m,
        groups,
        duplicates,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InjectivitySweep {
    pub max_order: u64,
    pub orders_checked: u64,
    pub groups_checked: u64,
    /// Reports with duplicates, ascending `m`.
    pub violations: Vec<InjectivityReport>,
}

impl InjectivitySweep {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// [`check_injectivity`] for every `m` in `1..=max_order`, in parallel.
pub fn check_injectivity_up_to(max_order: u64) -> Result<InjectivitySweep> {
    if max_order > SWEEP_CAP {
        return Err(Error::size("max order", max_order, SWEEP_CAP));
    }
    let reports = (1..=max_order)
        .into_par_iter()
        .map(check_injectivity)
        .collect::<Result<Vec<_>>>()?;
    let groups_checked = reports.iter().map(|r| r.groups.len() as u64).sum();
    Ok(InjectivitySweep {
        max_order,
        orders_checked: max_order,
        groups_checked,
        violations: reports.into_iter().filter(|r| !r.holds()).collect(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Collision {
    pub a: AbelianGroup,
    #[serde(serialize_with = "decimal")]
    pub order_a: BigUint,
    pub b: AbelianGroup,
    #[serde(serialize_with = "decimal")]
    pub order_b: BigUint,
    pub psi_prime: FactoredInteger,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CollisionReport {
    /// Largest order scanned.
    pub scope: u64,
    pub groups_scanned: u64,
    pub pairs: Vec<Collision>,
}

impl CollisionReport {
    pub fn contains(&self, a: &AbelianGroup, b: &AbelianGroup) -> bool {
        self.pairs
            .iter()
            .any(|c| (&c.a == a && &c.b == b) || (&c.a == b && &c.b == a))
    }
}

/// All pairs of non-isomorphic abelian groups of order at most `max_order`
/// whose products of element orders coincide. Pairs are listed with `a`
/// before `b` in enumeration order (ascending order, then enumeration index).
pub fn find_cross_order_collisions(max_order: u64) -> Result<CollisionReport> {
    if max_order > SWEEP_CAP {
        return Err(Error::size("max order", max_order, SWEEP_CAP));
    }
    let per_order = (1..=max_order)
        .into_par_iter()
        .map(|m| {
            enumerate_abelian_groups(m).map(|gs| {
                gs.into_iter()
                    .map(|g| {
                        let v = psi_prime(&g);
                        (g, v)
                    })
                    .collect::<Vec<_>>()
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let all: Vec<(AbelianGroup, FactoredInteger)> = per_order.into_iter().flatten().collect();
    let mut pairs = Vec::new();
    for set in duplicate_sets(all.iter().map(|(_, v)| v)) {
        for (x, &i) in set.iter().enumerate() {
            for &j in &set[x + 1..] {
                let (a, v) = &all[i];
                let (b, _) = &all[j];
                pairs.push((
                    (i, j),
                    Collision {
                        order_a: a.order(),
                        a: a.clone(),
                        order_b: b.order(),
                        b: b.clone(),
                        psi_prime: v.clone(),
                    },
                ));
            }
        }
    }
    pairs.sort_by_key(|(ij, _)| *ij);
    Ok(CollisionReport {
        scope: max_order,
        groups_scanned: all.len() as u64,
        pairs: pairs.into_iter().map(|(_, c)| c).collect(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Coincidence {
    pub a: AbelianGroup,
    pub b: AbelianGroup,
    pub k: usize,
    #[serde(serialize_with = "decimal")]
    pub value: BigUint,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjectureFReport {
    pub m: u64,
    pub group_count: usize,
    /// Unordered pairs of distinct groups of order `m`.
    pub pair_count: usize,
    pub coincidences: Vec<Coincidence>,
}

impl ConjectureFReport {
    pub fn holds(&self) -> bool {
        self.coincidences.is_empty()
    }
}

/// For every pair of non-isomorphic groups of order `m` and every
/// `k in 1..=m`, records each `k` where `psi_k` coincides.
pub fn check_conjecture_f(m: u64) -> Result<ConjectureFReport> {
    if m > PSI_ALL_CAP {
        return Err(Error::size("group order", m, PSI_ALL_CAP));
    }
    let groups = enumerate_abelian_groups(m)?;
    let values = groups.iter().map(psi_all).collect::<Result<Vec<_>>>()?;
    let mut coincidences = Vec::new();
    let mut pair_count = 0;
    for i in 0..groups.len() {
        for j in i + 1..groups.len() {
            pair_count += 1;
            for (k, (x, y)) in values[i].iter().zip(&values[j]).enumerate() {
                if x == y {
                    coincidences.push(Coincidence {
                        a: groups[i].clone(),
                        b: groups[j].clone(),
                        k: k + 1,
                        value: x.clone(),
                    });
                }
            }
        }
    }
    Ok(ConjectureFReport {
        m,
        group_count: groups.len(),
        pair_count,
        coincidences,
    })
}

/// [`check_conjecture_f`] for every `m` in `1..=max_order`, ascending.
pub fn check_conjecture_f_up_to(max_order: u64) -> Result<Vec<ConjectureFReport>> {
    if max_order > PSI_ALL_CAP {
        return Err(Error::size("max order", max_order, PSI_ALL_CAP));
    }
    (1..=max_order)
        .into_par_iter()
        .map(check_conjecture_f)
        .collect()
}
