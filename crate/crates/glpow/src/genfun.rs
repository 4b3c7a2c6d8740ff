//! The catalogue of counting series for GL(n, q) and its power maps.
//!
//! Every entry is a named constructor returning the truncated series for
//! concrete parameters: class-count series have nonnegative integer
//! coefficients, element series carry the coefficient |count|/|GL(n,q)| as
//! an exact rational. A universal cycle-index engine builds any element
//! series from a predicate on (polynomial bucket, partition) pairs; the
//! named element entries are spelled out directly from their formulas so
//! the engine can be tested against them.

use std::fmt;
use std::str::FromStr;

use num::bigint::BigInt;
use num::{BigRational, Zero};

use crate::arith;
use crate::classdata;
use crate::error::{Error, Result};
use crate::mpower;
use crate::partitions::{self, Partition};
use crate::polyarith;
use crate::series::{self, Series};

/// The names of the catalogue entries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GfName {
    /// All conjugacy classes: ∏_i (1−u^i)/(1−qu^i).
    ClassesAll,
    /// Regular classes, closed form (1−u)/(1−qu).
    ClassesRg,
    /// Semisimple classes; coincides with the regular count.
    ClassesSs,
    /// Regular semisimple classes: (1−qu²)/((1+u)(1−qu)).
    ClassesRs,
    /// Proportion of regular elements.
    ElemRg,
    /// Proportion of semisimple elements.
    ElemSs,
    /// Proportion of regular semisimple elements.
    ElemRs,
    /// Proportion of regular elements, the alternate two-product form.
    ElemRgWall,
    /// Regular classes that are M-th powers, gcd(q, M) = 1.
    MpowClassesRg,
    /// Regular semisimple classes that are M-th powers, gcd(q, M) = 1.
    MpowClassesRs,
    /// Proportion of regular M-th power elements, gcd(q, M) = 1.
    MpowElemRg,
    /// Proportion of regular semisimple M-th power elements, gcd(q, M) = 1.
    MpowElemRs,
    /// Semisimple M-th power classes, M a prime power coprime to q.
    MpowClassesSs,
    /// Proportion of semisimple M-th power elements, M a prime power
    /// coprime to q.
    MpowElemSs,
    /// Semisimple M-th power classes for prime M, the closed-form variant.
    MpowClassesSsPrime,
    /// All M-th power classes, M a prime power coprime to q.
    MpowClassesAll,
    /// All M-th power classes for prime M, the scaled closed-form variant.
    MpowClassesAllPrime,
    /// M-th power classes when M is prime and q a power of M.
    ModularClasses,
    /// The previous entry at M = 2 in product closed form.
    ModularClassesM2,
    /// Proportion of M-th power elements, M prime, q a power of M.
    ModularElements,
    /// Number of partitions of n lying in the image of Θ_M.
    ThetaImage,
}

impl GfName {
    /// Every catalogue entry, in display order.
    pub const ALL: [GfName; 21] = [
        GfName::ClassesAll,
        GfName::ClassesRg,
        GfName::ClassesSs,
        GfName::ClassesRs,
        GfName::ElemRg,
        GfName::ElemSs,
        GfName::ElemRs,
        GfName::ElemRgWall,
        GfName::MpowClassesRg,
        GfName::MpowClassesRs,
        GfName::MpowElemRg,
        GfName::MpowElemRs,
        GfName::MpowClassesSs,
        GfName::MpowElemSs,
        GfName::MpowClassesSsPrime,
        GfName::MpowClassesAll,
        GfName::MpowClassesAllPrime,
        GfName::ModularClasses,
        GfName::ModularClassesM2,
        GfName::ModularElements,
        GfName::ThetaImage,
    ];

    /// The identifier used on the command line and in JSON output.
    pub fn as_str(self) -> &'static str {
        match self {
            GfName::ClassesAll => "classes_all",
            GfName::ClassesRg => "classes_rg",
            GfName::ClassesSs => "classes_ss",
            GfName::ClassesRs => "classes_rs",
            GfName::ElemRg => "elem_rg",
            GfName::ElemSs => "elem_ss",
            GfName::ElemRs => "elem_rs",
            GfName::ElemRgWall => "elem_rg_wall",
            GfName::MpowClassesRg => "mpow_classes_rg",
            GfName::MpowClassesRs => "mpow_classes_rs",
            GfName::MpowElemRg => "mpow_elem_rg",
            GfName::MpowElemRs => "mpow_elem_rs",
            GfName::MpowClassesSs => "mpow_classes_ss",
            GfName::MpowElemSs => "mpow_elem_ss",
            GfName::MpowClassesSsPrime => "mpow_classes_ss_prime",
            GfName::MpowClassesAll => "mpow_classes_all",
            GfName::MpowClassesAllPrime => "mpow_classes_all_prime",
            GfName::ModularClasses => "modular_classes",
            GfName::ModularClassesM2 => "modular_classes_m2",
            GfName::ModularElements => "modular_elements",
            GfName::ThetaImage => "theta_image",
        }
    }
}

impl fmt::Display for GfName {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        out.write_str(self.as_str())
    }
}

impl FromStr for GfName {
    type Err = Error;
    fn from_str(s: &str) -> Result<GfName> {
        GfName::ALL
            .into_iter()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| Error::Parse(format!("unknown series name: {s}")))
    }
}

fn hypothesis(name: GfName, reason: impl Into<String>) -> Error {
    Error::HypothesisViolated { name: name.as_str().to_string(), reason: reason.into() }
}

/// Validates that the entry received an M when and only when it uses one.
fn take_m(name: GfName, m: Option<u64>, needed: bool) -> Result<u64> {
    match (m, needed) {
        (Some(m), true) if m >= 2 => Ok(m),
        (Some(_), true) => Err(hypothesis(name, "the power M must be at least 2")),
        (None, true) => Err(hypothesis(name, "this entry needs a power M")),
        (None, false) => Ok(1),
        (Some(_), false) => Err(hypothesis(name, "this entry takes no power M")),
    }
}

fn require_coprime(name: GfName, q: u64, m: u64) -> Result<()> {
    if num::integer::gcd(q, m) == 1 {
        Ok(())
    } else {
        Err(hypothesis(name, format!("gcd(q, M) must be 1, got q={q}, M={m}")))
    }
}

fn require_prime_power(name: GfName, m: u64) -> Result<(u64, u32)> {
    arith::prime_power_split(m)
        .ok_or_else(|| hypothesis(name, format!("M must be a prime power, got M={m}")))
}

fn require_prime(name: GfName, m: u64) -> Result<()> {
    if arith::is_prime_u64(m) {
        Ok(())
    } else {
        Err(hypothesis(name, format!("M must be prime, got M={m}")))
    }
}

fn require_modular(name: GfName, q: u64, m: u64) -> Result<()> {
    require_prime(name, m)?;
    match arith::prime_power_split(q) {
        Some((p, _)) if p == m => Ok(()),
        _ => Err(hypothesis(name, format!("q must be a power of the prime M, got q={q}, M={m}"))),
    }
}

fn big(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

fn n_irr(q: u64, d: usize) -> BigInt {
    BigInt::from(polyarith::count_irreducibles(q, d as u32))
}

fn n_m(q: u64, m: u64, d: usize) -> BigInt {
    BigInt::from(mpower::count_nm(q, m, d as u32))
}

fn n_m_i(q: u64, m: u64, d: usize, i: u32) -> BigInt {
    BigInt::from(
        mpower::count_nmi(q, m, d as u32, i).expect("stratum counts exist for validated inputs"),
    )
}

/// 1 − c·u^t at the given order.
fn one_minus(c: impl Into<BigInt>, t: usize, order: usize) -> Series {
    &Series::one(order) - &Series::monomial(big(c.into()), t, order)
}

/// The reciprocal of one block centralizer order, as a rational.
fn recip_block(q: u64, d: usize, lam: &Partition) -> BigRational {
    big(1) / big(BigInt::from(classdata::block_centralizer_order(q, d as u64, lam)))
}

/// 1 + Σ_{j≥1} u^{jd}/(q^{(j−1)d}(q^d−1)): one degree-d factor of the
/// regular-element series, summed while jd fits the order.
fn regular_factor(q: u64, d: usize, order: usize) -> Series {
    let mut f = Series::one(order);
    for j in 1..=order / d {
        f = &f + &Series::monomial(recip_block(q, d, &Partition::new(&[j as u64])), j * d, order);
    }
    f
}

/// 1 + Σ_{j≥1} u^{sjd}/|GL(sj, q^d)|: one factor of the semisimple-element
/// series where admissible multiplicities are the multiples of s.
fn semisimple_factor(q: u64, d: usize, s: usize, order: usize) -> Series {
    let mut f = Series::one(order);
    let mut j = 1usize;
    while s * j * d <= order {
        let lam = Partition::new(&vec![1; s * j]);
        f = &f + &Series::monomial(recip_block(q, d, &lam), s * j * d, order);
        j += 1;
    }
    f
}

/// The series Σ_n |Θ_M(Λ(n))| u^n, the partition count in the Θ_M image.
fn theta_image_series(m: u64, order: usize) -> Series {
    let coeffs =
        (0..=order).map(|n| big(BigInt::from(partitions::count_theta_image(n as u64, m)))).collect();
    Series::new(coeffs)
}

/// ∏_{i=0}^{a} ∏_d (1 − u^{r^i d})^{−N_M^i(q,d)}: semisimple M-th power
/// classes for M = r^a coprime to q.
fn mpow_classes_ss_series(q: u64, m: u64, r: u64, a: u32, order: usize) -> Series {
    let mut acc = Series::one(order);
    for i in 0..=a {
        let scale = r.pow(i) as usize;
        acc = &acc
            * &series::product_over_degrees(
                order,
                |d| one_minus(1, d * scale, order),
                |d| if d * scale <= order { -n_m_i(q, m, d, i) } else { BigInt::zero() },
            );
    }
    acc
}

/// ((1−u^M)/(1−qu^M)) ∏_d (1 + u^d + ⋯ + u^{d(M−1)})^{N_M(q,d)}: the
/// prime-M closed form of the previous entry.
fn mpow_classes_ss_prime_series(q: u64, m: u64, order: usize) -> Result<Series> {
    let mm = m as usize;
    let head = &one_minus(1, mm, order) * &one_minus(q, mm, order).inverse()?;
    let tail = series::product_over_degrees(
        order,
        |d| {
            let terms: Vec<(usize, i64)> = (0..mm).map(|j| (j * d, 1)).collect();
            Series::polynomial(&terms, order)
        },
        |d| n_m(q, m, d),
    );
    Ok(&head * &tail)
}

/// A stratum bucket the element engine sums over: all irreducible monic
/// polynomials of one degree with one power-map stratum (stratum 0 when no
/// power is in play).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PolyBucket {
    /// The common degree of the polynomials in the bucket.
    pub degree: usize,
    /// The common stratum; 0 means the M-power polynomials (or all of them
    /// when the engine runs without a power).
    pub stratum: u32,
}

/// The cycle-index engine for element proportions. The coefficient of u^n
/// is Σ 1/|centralizer| over all class data of weight n whose every
/// (f, λ_f) pair is admitted, so with the all-pass predicate every
/// coefficient is 1. With a power M = r^a (coprime to q) the polynomials
/// are bucketed by (degree, stratum) so the predicate can read the stratum;
/// without one, every polynomial of degree d sits in the single bucket
/// (d, 0).
pub fn gf_element_general(
    q: u64,
    m: Option<u64>,
    order: usize,
    admit: impl Fn(PolyBucket, &Partition) -> bool,
) -> Result<Series> {
    arith::prime_power_split(q).ok_or(Error::NotPrimePower(q))?;
    let mut buckets: Vec<(PolyBucket, BigInt)> = Vec::new();
    match m {
        None => {
            for d in 1..=order {
                buckets.push((PolyBucket { degree: d, stratum: 0 }, n_irr(q, d)));
            }
        }
        Some(m) => {
            if num::integer::gcd(q, m) != 1 {
                return Err(Error::HypothesisViolated {
                    name: "gf_element_general".into(),
                    reason: format!("gcd(q, M) must be 1, got q={q}, M={m}"),
                });
            }
            let (_, a) = arith::prime_power_split(m).ok_or_else(|| Error::HypothesisViolated {
                name: "gf_element_general".into(),
                reason: format!("M must be a prime power, got M={m}"),
            })?;
            for d in 1..=order {
                for i in 0..=a {
                    buckets.push((PolyBucket { degree: d, stratum: i }, n_m_i(q, m, d, i)));
                }
            }
        }
    }
    let partitions_by_weight: Vec<Vec<Partition>> =
        (0..=order as u64).map(partitions::enumerate_partitions).collect();
    let mut acc = Series::one(order);
    for (bucket, count) in buckets {
        if count.is_zero() {
            continue;
        }
        let d = bucket.degree;
        let mut factor = Series::one(order);
        for j in 1..=order / d {
            for lam in &partitions_by_weight[j] {
                if admit(bucket, lam) {
                    factor = &factor + &Series::monomial(recip_block(q, d, lam), j * d, order);
                }
            }
        }
        acc = &acc * &factor.big_pow(&count)?;
    }
    Ok(acc)
}

/// Evaluates a catalogue entry at concrete parameters: q a prime power,
/// M present exactly for the entries that use one, truncation order N.
pub fn gf(name: GfName, q: u64, m: Option<u64>, order: usize) -> Result<Series> {
    arith::prime_power_split(q).ok_or(Error::NotPrimePower(q))?;
    match name {
        GfName::ClassesAll => {
            take_m(name, m, false)?;
            let mut acc = Series::one(order);
            for i in 1..=order {
                acc = &acc * &(&one_minus(1, i, order) * &one_minus(q, i, order).inverse()?);
            }
            Ok(acc)
        }
        GfName::ClassesRg | GfName::ClassesSs => {
            take_m(name, m, false)?;
            Ok(&one_minus(1, 1, order) * &one_minus(q, 1, order).inverse()?)
        }
        GfName::ClassesRs => {
            take_m(name, m, false)?;
            let numer = one_minus(q, 2, order);
            let denom = &Series::polynomial(&[(0, 1), (1, 1)], order) * &one_minus(q, 1, order);
            Ok(&numer * &denom.inverse()?)
        }
        GfName::ElemRg => {
            take_m(name, m, false)?;
            Ok(series::product_over_degrees(order, |d| regular_factor(q, d, order), |d| {
                n_irr(q, d)
            }))
        }
        GfName::ElemSs => {
            take_m(name, m, false)?;
            Ok(series::product_over_degrees(order, |d| semisimple_factor(q, d, 1, order), |d| {
                n_irr(q, d)
            }))
        }
        GfName::ElemRs => {
            take_m(name, m, false)?;
            Ok(series::product_over_degrees(
                order,
                |d| &Series::one(order) + &Series::monomial(recip_block(q, d, &Partition::new(&[1])), d, order),
                |d| n_irr(q, d),
            ))
        }
        GfName::ElemRgWall => {
            take_m(name, m, false)?;
            let first = series::product_over_degrees(
                order,
                |d| {
                    let c = big(1) / big(BigInt::from(q).pow(d as u32));
                    &Series::one(order) - &Series::monomial(c, d, order)
                },
                |d| -n_irr(q, d),
            );
            let second = series::product_over_degrees(
                order,
                |d| {
                    let c = big(1)
                        / big(BigInt::from(q).pow(d as u32) * (BigInt::from(q).pow(d as u32) - 1));
                    &Series::one(order) + &Series::monomial(c, d, order)
                },
                |d| n_irr(q, d),
            );
            Ok(&first * &second)
        }
        GfName::MpowClassesRg => {
            let m = take_m(name, m, true)?;
            require_coprime(name, q, m)?;
            Ok(series::product_over_degrees(order, |d| one_minus(1, d, order), |d| {
                -n_m(q, m, d)
            }))
        }
        GfName::MpowClassesRs => {
            let m = take_m(name, m, true)?;
            require_coprime(name, q, m)?;
            Ok(series::product_over_degrees(
                order,
                |d| Series::polynomial(&[(0, 1), (d, 1)], order),
                |d| n_m(q, m, d),
            ))
        }
        GfName::MpowElemRg => {
            let m = take_m(name, m, true)?;
            require_coprime(name, q, m)?;
            Ok(series::product_over_degrees(order, |d| regular_factor(q, d, order), |d| {
                n_m(q, m, d)
            }))
        }
        GfName::MpowElemRs => {
            let m = take_m(name, m, true)?;
            require_coprime(name, q, m)?;
            Ok(series::product_over_degrees(
                order,
                |d| &Series::one(order) + &Series::monomial(recip_block(q, d, &Partition::new(&[1])), d, order),
                |d| n_m(q, m, d),
            ))
        }
        GfName::MpowClassesSs => {
            let m = take_m(name, m, true)?;
            require_coprime(name, q, m)?;
            let (r, a) = require_prime_power(name, m)?;
            Ok(mpow_classes_ss_series(q, m, r, a, order))
        }
        GfName::MpowElemSs => {
            let m = take_m(name, m, true)?;
            require_coprime(name, q, m)?;
            let (r, a) = require_prime_power(name, m)?;
            let mut acc = Series::one(order);
            for i in 0..=a {
                let scale = r.pow(i) as usize;
                acc = &acc
                    * &series::product_over_degrees(
                        order,
                        |d| semisimple_factor(q, d, scale, order),
                        |d| if d * scale <= order { n_m_i(q, m, d, i) } else { BigInt::zero() },
                    );
            }
            Ok(acc)
        }
        GfName::MpowClassesSsPrime => {
            let m = take_m(name, m, true)?;
            require_coprime(name, q, m)?;
            require_prime(name, m)?;
            mpow_classes_ss_prime_series(q, m, order)
        }
        GfName::MpowClassesAll => {
            let m = take_m(name, m, true)?;
            require_coprime(name, q, m)?;
            let (r, a) = require_prime_power(name, m)?;
            let mut acc = Series::one(order);
            for j in 1..=order {
                for i in 0..=a {
                    let scale = j * r.pow(i) as usize;
                    if scale > order {
                        break;
                    }
                    acc = &acc
                        * &series::product_over_degrees(
                            order,
                            |d| one_minus(1, d * scale, order),
                            |d| {
                                if d * scale <= order {
                                    -n_m_i(q, m, d, i)
                                } else {
                                    BigInt::zero()
                                }
                            },
                        );
                }
            }
            Ok(acc)
        }
        GfName::MpowClassesAllPrime => {
            let m = take_m(name, m, true)?;
            require_coprime(name, q, m)?;
            require_prime(name, m)?;
            series::product_over_scales(&mpow_classes_ss_prime_series(q, m, order)?, order)
        }
        GfName::ModularClasses => {
            let m = take_m(name, m, true)?;
            require_modular(name, q, m)?;
            Ok(series::product_over_degrees(
                order,
                |d| theta_image_series(m, order / d).scale_to(d, order),
                |d| n_irr(q, d),
            ))
        }
        GfName::ModularClassesM2 => {
            let m = take_m(name, m, true)?;
            if m != 2 {
                return Err(hypothesis(name, format!("this closed form is for M = 2, got M={m}")));
            }
            require_modular(name, q, m)?;
            let mut acc = Series::one(order);
            for n in 1..=order {
                acc = &acc * &one_minus(1, 2 * n, order);
                acc = &acc * &one_minus(q, 2 * n, order);
                acc = &acc
                    * &Series::polynomial(&[(0, 1), (2 * n - 1, 1)], order).inverse()?;
                acc = &acc * &one_minus(q, n, order).inverse()?;
                acc = &acc * &one_minus(q, 4 * n, order).inverse()?;
            }
            Ok(acc)
        }
        GfName::ModularElements => {
            let m = take_m(name, m, true)?;
            require_modular(name, q, m)?;
            gf_element_general(q, None, order, |_, lam| partitions::in_theta_image(lam, m))
        }
        GfName::ThetaImage => {
            let m = take_m(name, m, true)?;
            Ok(theta_image_series(m, order))
        }
    }
}
