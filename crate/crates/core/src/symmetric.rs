//! Elementary symmetric functions of the element orders and the order
//! polynomial `prod_x (X - o(x))`.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use serde::ser::SerializeMap;

use crate::error::{Error, Result};
use crate::groups::{order_spectrum, AbelianGroup};

/// Default largest group order for [`psi_all`] and [`order_polynomial`].
pub const PSI_ALL_CAP: u64 = 512;

fn group_size(g: &AbelianGroup, cap: u64) -> Result<usize> {
    let order = g.order();
    match order.to_u64() {
        Some(n) if n <= cap => Ok(n as usize),
        _ => Err(Error::size("group order for symmetric functions", order, cap)),
    }
}

/// Coefficients of `prod_d (1 + d X)^{m_d}`, ascending powers. Coefficient
/// `k` is the `k`-th elementary symmetric function of the orders.
fn generating_product(g: &AbelianGroup, cap: u64) -> Result<Vec<BigUint>> {
    let n = group_size(g, cap)?;
    let mut coeffs = Vec::with_capacity(n + 1);
    coeffs.push(BigUint::one());
    for (d, m) in order_spectrum(g).entries() {
        let m = m.to_usize().expect("bounded by the group order");
        // (1 + dX)^m = sum_j C(m, j) d^j X^j
        let mut factor = Vec::with_capacity(m + 1);
        let mut term = BigUint::one();
        factor.push(term.clone());
        for j in 0..m {
            term = term * (m - j) * d / (j + 1);
            factor.push(term.clone());
        }
        let mut next = vec![BigUint::zero(); coeffs.len() + m];
        for (i, a) in coeffs.iter().enumerate() {
            for (j, b) in factor.iter().enumerate() {
                next[i + j] += a * b;
            }
        }
        coeffs = next;
    }
    debug_assert_eq!(coeffs.len(), n + 1);
    Ok(coeffs)
}

/// `[psi_1, ..., psi_n]` for a group of order `n <= PSI_ALL_CAP`.
pub fn psi_all(g: &AbelianGroup) -> Result<Vec<BigUint>> {
    psi_all_with_cap(g, PSI_ALL_CAP)
}

pub fn psi_all_with_cap(g: &AbelianGroup, cap: u64) -> Result<Vec<BigUint>> {
    let mut coeffs = generating_product(g, cap)?;
    coeffs.remove(0);
    Ok(coeffs)
}

/// Monic integer polynomial, coefficients in ascending powers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderPolynomial {
    coeffs: Vec<BigInt>,
}

impl OrderPolynomial {
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }
}

/// `P_G = prod_{x in G} (X - o(x))`.
pub fn order_polynomial(g: &AbelianGroup) -> Result<OrderPolynomial> {
    order_polynomial_with_cap(g, PSI_ALL_CAP)
}

pub fn order_polynomial_with_cap(g: &AbelianGroup, cap: u64) -> Result<OrderPolynomial> {
    let e = generating_product(g, cap)?;
    let n = e.len() - 1;
    // coefficient of X^{n-k} is (-1)^k e_k
    let coeffs = (0..=n)
        .map(|j| {
            let k = n - j;
            let v = BigInt::from(e[k].clone());
            if k % 2 == 1 {
                -v
            } else {
                v
            }
        })
        .collect();
    Ok(OrderPolynomial { coeffs })
}

impl serde::Serialize for OrderPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let coeffs: Vec<String> = self.coeffs.iter().map(ToString::to_string).collect();
        let mut map = s.serialize_map(Some(1))?;
        map.serialize_entry("coeffs", &coeffs)?;
        map.end()
    }
}

/// JSON form `{"psi_k": ["7","15","9"]}`, index `k - 1`.
pub fn psi_k_json(values: &[BigUint]) -> serde_json::Value {
    let values: Vec<String> = values.iter().map(ToString::to_string).collect();
    serde_json::json!({ "psi_k": values })
}
