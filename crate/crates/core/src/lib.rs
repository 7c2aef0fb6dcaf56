//! Exact arithmetic on the element orders of finite abelian groups.
//!
//! The crate computes, for any finite abelian group given in primary
//! decomposition:
//!
//! - the order spectrum (how many elements have each order), by counting and
//!   by a literal element walk,
//! - the sum `psi` and product `psi'` of element orders, the latter kept as a
//!   prime factorization because it is astronomically large,
//! - every elementary symmetric function `psi_k` of the element orders and the
//!   order polynomial,
//!
//! and runs sweeps that check monotonicity of `psi'` along the lexicographic
//! order of partitions, injectivity of `psi'` at fixed group order, and
//! whether each `psi_k` separates groups of the same order.

pub mod error;
pub mod factored;
pub mod groups;
pub mod notation;
pub mod partitions;
pub mod primes;
pub mod psi;
pub mod symmetric;
pub mod verify;

pub use error::{Error, Result};
pub use factored::{factored_compare, FactoredInteger};
pub use groups::{
    brute_force_spectrum, canonicalize, enumerate_abelian_groups, order_spectrum, AbelianGroup,
    OrderSpectrum, PGroupType,
};
pub use partitions::{
    group_type_to_partition, lex_compare, partition_to_group_type, partitions_of, Partition,
};
pub use psi::{
    combine_coprime, f_eval, psi_prime, psi_prime_cyclic_closed_form, psi_prime_from_spectrum,
    psi_prime_pgroup, psi_prime_rank2_closed_form, psi_sum,
};
pub use symmetric::{order_polynomial, psi_all, OrderPolynomial};
pub use verify::{
    check_conjecture_f, check_injectivity, check_theorem_c, find_cross_order_collisions,
    CollisionReport, ConjectureFReport, InjectivityReport, MonotonicityReport,
};
