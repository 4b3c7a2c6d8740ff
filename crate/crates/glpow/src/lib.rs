//! Exact arithmetic for the power maps g ↦ g^M on the finite general linear
//! groups GL(n, q): deciding which conjugacy classes and elements are M-th
//! powers, counting them, and producing the associated generating series
//! with exact rational coefficients.
//!
//! Modules, bottom up:
//! - [`ff`]: small finite fields F_q, q = p^k
//! - [`polyarith`]: univariate polynomials over F_q, factorization, root orders
//! - [`mpower`]: irreducible polynomials sorted by power-map behaviour
//! - [`partitions`]: integer partitions and the Jordan-block power map
//! - [`series`]: truncated power series over exact rationals
//! - [`genfun`]: the catalogue of counting series
//! - [`classdata`]: conjugacy-class data for GL(n, q) and power-map decisions
//! - [`oracle`]: brute-force matrix cross-checks for everything above
//! - [`cli`]: implementation of the command-line interface

pub mod error;
pub(crate) mod arith;
pub mod ff;
pub mod polyarith;
pub mod mpower;
pub mod partitions;
pub mod series;
pub mod genfun;
pub mod classdata;
pub mod oracle;
pub mod cli;

pub use error::{Error, Result};
pub use ff::{mult_order_mod, FqElem, FqField};
pub use polyarith::{Factorization, PolyFq};
pub use partitions::Partition;
pub use series::Series;
pub use classdata::{CombData, MacdonaldData};
