//! Sum and product of element orders.
//!
//! For an abelian `p`-group `Z_{p^a1} x ... x Z_{p^ak}` (ascending `a`s, order
//! `p^n`) the product of element orders is `p^E` with
//!
//! ```text
//! E = a_k * p^n - sum_{i=0}^{a_k - 1} p^i * f(i)
//! ```
//!
//! where `f` is the piecewise power of `p` computed by [`f_eval`]. Groups with
//! several Sylow subgroups combine through [`combine_coprime`].

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::factored::FactoredInteger;
use crate::groups::{order_spectrum, AbelianGroup, OrderSpectrum, PGroupType};
use crate::primes::{factorize_big, require_prime};

/// The piecewise function `f_(a1..ak)(i)`.
///
/// With `j` the number of exponents `<= i`, capped at `k - 1`, the value is
/// `p^{(k-j-1) i + a1 + ... + aj}`. Adjacent branches agree at every
/// breakpoint `i = a_j`. For `k = 1` this is the constant 1.
pub fn f_eval(alphas: &[u32], p: u64, i: u32) -> Result<BigUint> {
    if alphas.is_empty() {
        return Err(Error::Domain("f needs at least one exponent".into()));
    }
    if alphas.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::Domain(format!("exponents must be ascending: {alphas:?}")));
    }
    let k = alphas.len();
    let j = alphas.iter().take_while(|&&a| a <= i).count().min(k - 1);
    let exp = (k - j - 1) as u64 * u64::from(i) + alphas[..j].iter().map(|&a| u64::from(a)).sum::<u64>();
    Ok(num_traits::Pow::pow(BigUint::from(p), exp))
}

/// Exponent `E` of the product of element orders of a `p`-group.
pub fn psi_prime_exponent(g: &PGroupType) -> BigUint {
    let Some(&top) = g.alphas().last() else {
        return BigUint::zero();
    };
    let p = BigUint::from(g.p());
    let mut subtrahend = BigUint::zero();
    let mut p_i = BigUint::one();
    for i in 0..top {
        subtrahend += &p_i * f_eval(g.alphas(), g.p(), i).expect("validated group type");
        p_i *= &p;
    }
    BigUint::from(top) * g.order() - subtrahend
}

/// Product of element orders of an abelian `p`-group, as `{p: E}`.
pub fn psi_prime_pgroup(g: &PGroupType) -> FactoredInteger {
    FactoredInteger::prime_power(g.p(), psi_prime_exponent(g)).expect("validated prime")
}

fn checked_exact_div(num: BigInt, den: BigInt, what: &str) -> Result<BigUint> {
    let (q, r) = num.div_rem(&den);
    if !r.is_zero() {
        return Err(Error::Consistency(format!(
            "{what}: numerator {num} leaves remainder {r} modulo {den}"
        )));
    }
    q.to_biguint()
        .ok_or_else(|| Error::Consistency(format!("{what}: negative exponent {q}")))
}

/// Closed form for the cyclic group `Z_{p^alpha}`:
/// exponent `(alpha p^{alpha+1} - (alpha+1) p^alpha + 1) / (p - 1)`.
pub fn psi_prime_cyclic_closed_form(p: u64, alpha: u32) -> Result<FactoredInteger> {
    require_prime(p)?;
    if alpha == 0 {
        return Err(Error::Domain("alpha must be at least 1".into()));
    }
    let pb = BigInt::from(p);
    let a = BigInt::from(alpha);
    let num = &a * pb.pow(alpha + 1) - (&a + 1) * pb.pow(alpha) + 1;
    let e = checked_exact_div(num, &pb - 1, "cyclic closed form")?;
    FactoredInteger::prime_power(p, e)
}

/// Closed form for `Z_{p^alpha} x Z_{p^beta}`, `1 <= alpha <= beta`: exponent
/// `(beta p^{a+b+2} - p^{a+b+1} - (beta+1) p^{a+b} + p^{2a+1} + 1) / (p^2 - 1)`.
pub fn psi_prime_rank2_closed_form(p: u64, alpha: u32, beta: u32) -> Result<FactoredInteger> {
    require_prime(p)?;
    if alpha == 0 || beta < alpha {
        return Err(Error::Domain(format!(
            "need 1 <= alpha <= beta, got alpha = {alpha}, beta = {beta}"
        )));
    }
    let pb = BigInt::from(p);
    let b = BigInt::from(beta);
    let s = alpha + beta;
    let num = &b * pb.pow(s + 2) - pb.pow(s + 1) - (&b + 1) * pb.pow(s) + pb.pow(2 * alpha + 1) + 1;
    let e = checked_exact_div(num, pb.pow(2) - 1, "rank-two closed form")?;
    FactoredInteger::prime_power(p, e)
}

/// Product of element orders of a direct product of groups with pairwise
/// coprime orders, given each factor's value and order: each value is raised
/// to the product of the other orders.
pub fn combine_coprime(parts: &[(FactoredInteger, BigUint)]) -> Result<FactoredInteger> {
    for (i, (_, a)) in parts.iter().enumerate() {
        if a.is_zero() {
            return Err(Error::Domain("group orders must be at least 1".into()));
        }
        for (_, b) in &parts[i + 1..] {
            if !a.gcd(b).is_one() {
                return Err(Error::Domain(format!("orders {a} and {b} are not coprime")));
            }
        }
    }
    let total: BigUint = parts.iter().map(|(_, o)| o).product();
    Ok(parts.iter().fold(FactoredInteger::one(), |acc, (v, o)| {
        acc.mul(&v.pow(&(&total / o)))
    }))
}

/// Product of element orders of any finite abelian group, via its Sylow
/// subgroups.
pub fn psi_prime(g: &AbelianGroup) -> FactoredInteger {
    let parts: Vec<_> = g
        .sylow_subgroups()
        .iter()
        .map(|s| (psi_prime_pgroup(s), s.order()))
        .collect();
    combine_coprime(&parts).expect("Sylow orders are coprime")
}

/// Sum of element orders.
pub fn psi_sum(g: &AbelianGroup) -> BigUint {
    order_spectrum(g)
        .entries()
        .iter()
        .map(|(d, m)| d * m)
        .sum()
}

/// `prod_d d^{m_d}`, factoring each order directly.
pub fn psi_prime_from_spectrum(s: &OrderSpectrum) -> Result<FactoredInteger> {
    let mut out = FactoredInteger::one();
    for (d, m) in s.entries() {
        for (p, e) in factorize_big(d)? {
            out.add_exponent(p, &(e * m));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{brute_force_spectrum, canonicalize, enumerate_abelian_groups};
    use crate::partitions::{partition_to_group_type, partitions_of};
    use proptest::prelude::*;

    fn fi(pairs: &[(u64, u64)]) -> FactoredInteger {
        FactoredInteger::from_factors(pairs.iter().map(|&(p, e)| (p, BigUint::from(e)))).unwrap()
    }

    fn pg(p: u64, alphas: &[u32]) -> PGroupType {
        PGroupType::new(p, alphas.to_vec()).unwrap()
    }

    /// Product of `q / gcd(x, q)` lcms over a literal element walk, as a
    /// plain integer. Independent of every formula in this module.
    fn literal_product(cyclic: &[u64]) -> BigUint {
        let mut out = BigUint::one();
        let total: u64 = cyclic.iter().product();
        for mut idx in 0..total {
            let mut o = 1u64;
            for &q in cyclic {
                let x = idx % q;
                idx /= q;
                o = o.lcm(&(q / x.gcd(&q)));
            }
            out *= o;
        }
        out
    }

    #[test]
    fn literal_products_frozen() {
        assert_eq!(literal_product(&[4]), BigUint::from(32u32)); // 2^5
        assert_eq!(literal_product(&[2, 2]), BigUint::from(8u32)); // 2^3
        assert_eq!(literal_product(&[8]), BigUint::from(1u32 << 17));
        assert_eq!(literal_product(&[2, 4]), BigUint::from(1u32 << 11));
        assert_eq!(literal_product(&[6]), BigUint::from(648u32));
        assert_eq!(literal_product(&[3]), BigUint::from(9u32));
    }

    #[test]
    fn f_examples() {
        let f = |a: &[u32], p, i| f_eval(a, p, i).unwrap();
        assert_eq!(f(&[1, 2], 2, 0), BigUint::from(1u32));
        assert_eq!(f(&[1, 2], 2, 1), BigUint::from(2u32));
        assert_eq!(f(&[1, 2], 2, 2), BigUint::from(2u32));
        assert_eq!(f(&[2, 2], 3, 0), BigUint::from(1u32));
        assert_eq!(f(&[2, 2], 3, 1), BigUint::from(3u32));
        for i in 0..10 {
            assert_eq!(f(&[4], 7, i), BigUint::one());
        }
        assert!(f_eval(&[], 2, 0).is_err());
        assert!(f_eval(&[2, 1], 2, 0).is_err());
    }

    #[test]
    fn f_sum_identity_against_literal_products() {
        // sum_{i < a_k} p^i f(i) = a_k p^n - log_p(product of orders)
        for (p, alphas, cyclic) in [
            (2u64, vec![1u32, 2], vec![2u64, 4]),
            (3, vec![2, 2], vec![9, 9]),
            (2, vec![1, 1, 3], vec![2, 2, 8]),
        ] {
            let g = pg(p, &alphas);
            let top = *alphas.last().unwrap();
            let lhs: BigUint = (0..top)
                .map(|i| BigUint::from(p).pow(i) * f_eval(&alphas, p, i).unwrap())
                .sum();
            let product = literal_product(&cyclic);
            let exp = factorize_big(&product).unwrap()[0].1.clone();
            assert_eq!(BigUint::from(top) * g.order() - exp, lhs);
        }
    }

    #[test]
    fn pgroup_examples() {
        assert_eq!(psi_prime_pgroup(&pg(2, &[2])), fi(&[(2, 5)]));
        assert_eq!(psi_prime_pgroup(&pg(2, &[1, 1])), fi(&[(2, 3)]));
        assert_eq!(psi_prime_pgroup(&pg(2, &[3])), fi(&[(2, 17)]));
        assert_eq!(psi_prime_pgroup(&pg(2, &[1, 2])), fi(&[(2, 11)]));
        assert_eq!(psi_prime_pgroup(&pg(3, &[1])), fi(&[(3, 2)]));
        assert_eq!(psi_prime_pgroup(&pg(3, &[1, 1])), fi(&[(3, 8)]));
        assert!(psi_prime_pgroup(&pg(5, &[])).is_one());
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(psi_prime_cyclic_closed_form(2, 2).unwrap(), fi(&[(2, 5)]));
        assert_eq!(psi_prime_cyclic_closed_form(2, 3).unwrap(), fi(&[(2, 17)]));
        assert_eq!(psi_prime_cyclic_closed_form(3, 1).unwrap(), fi(&[(3, 2)]));
        assert_eq!(psi_prime_rank2_closed_form(2, 1, 2).unwrap(), fi(&[(2, 11)]));
        assert_eq!(psi_prime_rank2_closed_form(2, 1, 1).unwrap(), fi(&[(2, 3)]));
        assert_eq!(psi_prime_rank2_closed_form(3, 1, 1).unwrap(), fi(&[(3, 8)]));
        assert!(psi_prime_cyclic_closed_form(4, 1).is_err());
        assert!(psi_prime_cyclic_closed_form(2, 0).is_err());
        assert!(psi_prime_rank2_closed_form(2, 3, 2).is_err());
    }

    #[test]
    fn closed_forms_match_theorem_exponent() {
        for p in [2u64, 3, 5] {
            for a in 1..=8 {
                assert_eq!(
                    psi_prime_cyclic_closed_form(p, a).unwrap(),
                    psi_prime_pgroup(&pg(p, &[a]))
                );
            }
            for a in 1..=6 {
                for b in a..=6 {
                    assert_eq!(
                        psi_prime_rank2_closed_form(p, a, b).unwrap(),
                        psi_prime_pgroup(&pg(p, &[a, b]))
                    );
                }
            }
        }
    }

    #[test]
    fn remainder_check_fires() {
        let err = checked_exact_div(BigInt::from(7), BigInt::from(2), "probe").unwrap_err();
        assert!(matches!(err, Error::Consistency(_)));
    }

    #[test]
    fn combine_examples() {
        let z6 = combine_coprime(&[
            (fi(&[(2, 1)]), BigUint::from(2u32)),
            (fi(&[(3, 2)]), BigUint::from(3u32)),
        ])
        .unwrap();
        assert_eq!(z6, fi(&[(2, 3), (3, 4)]));
        assert_eq!(
            combine_coprime(&[(fi(&[(2, 5)]), BigUint::from(4u32))]).unwrap(),
            fi(&[(2, 5)])
        );
        let remark = combine_coprime(&[
            (psi_prime_pgroup(&pg(2, &[2])), BigUint::from(4u32)),
            (psi_prime_pgroup(&pg(3, &[1, 1])), BigUint::from(9u32)),
        ])
        .unwrap();
        assert_eq!(remark, fi(&[(2, 45), (3, 32)]));
        assert!(matches!(
            combine_coprime(&[
                (fi(&[(2, 1)]), BigUint::from(2u32)),
                (fi(&[(2, 3)]), BigUint::from(4u32)),
            ]),
            Err(Error::Domain(_))
        ));
        assert!(combine_coprime(&[]).unwrap().is_one());
    }

    #[test]
    fn combine_merges_shared_primes() {
        // caller-supplied values need not have disjoint supports
        let v = combine_coprime(&[
            (fi(&[(2, 1), (3, 1)]), BigUint::from(5u32)),
            (fi(&[(2, 2)]), BigUint::from(7u32)),
        ])
        .unwrap();
        assert_eq!(v, fi(&[(2, 7 + 10), (3, 7)]));
    }

    #[test]
    fn psi_prime_examples() {
        let a = canonicalize(&[4, 3, 3]).unwrap();
        let b = canonicalize(&[2, 2, 2, 2, 3]).unwrap();
        assert_eq!(psi_prime(&a), fi(&[(2, 45), (3, 32)]));
        assert_eq!(psi_prime(&b), fi(&[(2, 45), (3, 32)]));
        assert_eq!(
            psi_prime_from_spectrum(&order_spectrum(&a)).unwrap(),
            fi(&[(2, 45), (3, 32)])
        );
        assert_eq!(
            psi_prime_from_spectrum(&brute_force_spectrum(&b).unwrap()).unwrap(),
            fi(&[(2, 45), (3, 32)])
        );
        assert!(psi_prime(&AbelianGroup::trivial()).is_one());
    }

    #[test]
    fn psi_sum_examples() {
        assert_eq!(psi_sum(&canonicalize(&[4]).unwrap()), BigUint::from(11u32));
        assert_eq!(psi_sum(&AbelianGroup::trivial()), BigUint::one());
        assert_eq!(psi_sum(&canonicalize(&[2, 2]).unwrap()), BigUint::from(7u32));
    }

    #[test]
    fn spectrum_oracle_examples() {
        let s = order_spectrum(&canonicalize(&[4]).unwrap());
        assert_eq!(psi_prime_from_spectrum(&s).unwrap(), fi(&[(2, 5)]));
        let s = order_spectrum(&AbelianGroup::trivial());
        assert!(psi_prime_from_spectrum(&s).unwrap().is_one());
        let g = canonicalize(&[4, 9]).unwrap();
        assert_eq!(
            psi_prime_from_spectrum(&order_spectrum(&g)).unwrap(),
            psi_prime(&g)
        );
    }

    #[test]
    fn formula_matches_spectrum_oracle_for_p_groups() {
        for p in [2u64, 3, 5, 7] {
            let mut n = 0;
            while BigUint::from(p).pow(n) <= BigUint::from(4096u32) {
                for q in partitions_of(n).unwrap() {
                    let g = partition_to_group_type(&q, p).unwrap();
                    let s = crate::groups::p_group_spectrum(&g);
                    assert_eq!(psi_prime_pgroup(&g), psi_prime_from_spectrum(&s).unwrap(), "{g}");
                }
                n += 1;
            }
        }
    }

    #[test]
    fn formula_matches_oracles_small_orders() {
        for m in 1..=300u64 {
            for g in enumerate_abelian_groups(m).unwrap() {
                let brute = brute_force_spectrum(&g).unwrap();
                assert_eq!(psi_prime(&g), psi_prime_from_spectrum(&brute).unwrap(), "{g}");
                let sum: BigUint = brute.entries().iter().map(|(d, m)| d * m).sum();
                assert_eq!(psi_sum(&g), sum);
            }
        }
    }

    #[test]
    fn large_exponents_stay_exact() {
        // overflows 64 bits many times over
        let g = pg(2, &[100]);
        let e = psi_prime_exponent(&g);
        let closed = psi_prime_cyclic_closed_form(2, 100).unwrap();
        assert_eq!(closed.exponent(2), e);
        assert!(e.bits() > 100);
    }

    proptest! {
        #[test]
        fn f_branches_agree_at_breakpoints(
            mut alphas in proptest::collection::vec(1u32..8, 2..6),
            p in prop::sample::select(vec![2u64, 3, 5, 7]),
        ) {
            alphas.sort_unstable();
            let k = alphas.len();
            // branch j: p^{(k-j-1) i + a_1 + ... + a_j}, valid on [a_j, a_{j+1}]
            let branch = |j: usize, i: u32| {
                let e = (k - j - 1) as u64 * i as u64 + alphas[..j].iter().map(|&a| a as u64).sum::<u64>();
                num_traits::Pow::pow(BigUint::from(p), e)
            };
            for j in 1..k {
                let i = alphas[j - 1];
                prop_assert_eq!(branch(j - 1, i), branch(j, i));
                prop_assert_eq!(f_eval(&alphas, p, i).unwrap(), branch(j, i));
            }
        }
    }
}
