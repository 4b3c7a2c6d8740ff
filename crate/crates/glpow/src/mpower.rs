//! Classification of irreducibles by their behaviour under x ↦ x^M.
//!
//! An irreducible f ≠ x is an M-power polynomial when f(x^M) has an
//! irreducible factor of the same degree as f; equivalently the roots of f
//! are M-th powers in their field. For M = r^a coprime to q every
//! irreducible of degree d falls into exactly one stratum i ∈ {0, …, a}:
//! stratum 0 holds exactly the M-power polynomials, while for i ≥ 1 the
//! polynomial f(x^M) splits into r^(a−i) irreducibles, all of degree
//! d·r^i. (In stratum 0 the factor degrees of f(x^M) may vary.) This module
//! computes the stratum both ways (factorization, and via root orders), and
//! evaluates the stratum counting functions N_M(q,d) and N_M^i(q,d) in
//! exact integer arithmetic.

use num::bigint::BigUint;
use num::{BigInt, Integer, Signed, Zero};

use crate::arith;
use crate::error::{Error, Result};
use crate::ff::mult_order_mod;
use crate::polyarith::{self, PolyFq};

/// Whether f(x^M) keeps a factor of deg(f) for every irreducible factor of
/// the monic, non-constant f. Defined for any M ≥ 2, coprime to q or not.
/// Coprime factors are settled from root orders via [`butler_profile`];
/// the rest fall back to factoring the composition, as
/// [`is_m_power_poly_direct`] does throughout.
pub fn is_m_power_poly(f: &PolyFq, m: u64) -> Result<bool> {
    assert!(m >= 2, "power must be >= 2");
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.degree() == 0 {
        return Err(Error::ConstantPolynomial);
    }
    let coprime = num::integer::gcd(f.field().q(), m) == 1;
    let fac = polyarith::factorize(f)?;
    for (g, _) in &fac.factors {
        if g.is_x() {
            // x^M has the factor x of degree deg(x); x is its own M-th power.
            continue;
        }
        let keeps_degree = if coprime {
            let d = g.degree() as u64;
            butler_profile(g, m)?.iter().any(|&(deg, _)| deg == d)
        } else {
            let composed = polyarith::factorize(&g.compose_power(m))?;
            composed.factors.iter().any(|(h, _)| h.degree() == g.degree())
        };
        if !keeps_degree {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The same predicate by factoring g(x^M) for every irreducible factor g,
/// with no shortcut through root orders; kept as the cross-check for
/// [`is_m_power_poly`].
pub fn is_m_power_poly_direct(f: &PolyFq, m: u64) -> Result<bool> {
    assert!(m >= 2, "power must be >= 2");
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.degree() == 0 {
        return Err(Error::ConstantPolynomial);
    }
    let fac = polyarith::factorize(f)?;
    for (g, _) in &fac.factors {
        if g.is_x() {
            continue;
        }
        let composed = polyarith::factorize(&g.compose_power(m))?;
        if !composed.factors.iter().any(|(h, _)| h.degree() == g.degree()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The stratum index i of an irreducible f ≠ x for M = r^a coprime to q.
/// Stratum 0 means f is an M-power polynomial; for i ≥ 1, f(x^M) is a
/// product of r^(a−i) irreducibles of degree deg(f)·r^i. Computed from
/// root orders; [`stratum_via_factorization`] reads the same index off an
/// actual factorization of f(x^M).
pub fn stratum(f: &PolyFq, m: u64) -> Result<u32> {
    let (r, a) = validate_stratum_input(f, m)?;
    stratum_via_exponent(f, r, a)
}

/// The stratum index read off the factor degrees of f(x^M); kept as the
/// cross-check for [`stratum`], and as the proof that the factorization
/// really has the shape the stratum promises.
pub fn stratum_via_factorization(f: &PolyFq, m: u64) -> Result<u32> {
    let (r, a) = validate_stratum_input(f, m)?;
    let d = f.degree() as u64;
    let fac = polyarith::factorize(&f.compose_power(m))?;
    assert!(fac.is_squarefree(), "f(x^M) is squarefree when gcd(q, M) = 1");
    for (h, _) in &fac.factors {
        assert_eq!(h.degree() as u64 % d, 0, "factor degrees are multiples of deg f");
    }
    if fac.factors.iter().any(|(h, _)| h.degree() as u64 == d) {
        // A factor of degree deg f makes f an M-power polynomial.
        return Ok(0);
    }
    let deg0 = fac.factors[0].0.degree() as u64;
    assert!(
        fac.factors.iter().all(|(h, _)| h.degree() as u64 == deg0),
        "outside stratum 0 the factors of f(x^M) share one degree"
    );
    let mut ratio = deg0 / d;
    let mut i = 0u32;
    while ratio > 1 {
        assert_eq!(ratio % r, 0, "factor degree must be d times a power of r");
        ratio /= r;
        i += 1;
    }
    assert!(i >= 1 && i <= a);
    let count: u64 = fac.factors.len() as u64;
    assert_eq!(count, r.pow(a - i), "stratum i leaves r^(a-i) factors");
    Ok(i)
}

fn validate_stratum_input(f: &PolyFq, m: u64) -> Result<(u64, u32)> {
    let (r, a) = arith::prime_power_split(m).ok_or(Error::NotPrimePower(m))?;
    let q = f.field().q();
    if num::integer::gcd(q, m) != 1 {
        return Err(Error::NotCoprime { a: q, b: m });
    }
    if f.is_zero() || !f.is_monic() {
        return Err(Error::NotMonic);
    }
    if f.is_x() {
        return Err(Error::PolynomialIsX);
    }
    if f.degree() == 0 || !polyarith::is_irreducible(f)? {
        return Err(Error::NotIrreducible);
    }
    Ok((r, a))
}

/// Same index from root orders alone: with t the order of a root, r ∤ t
/// puts f in stratum 0; otherwise the factors of f(x^M) have degree
/// 𝔐(M·t; q), which equals d·r^i.
fn stratum_via_exponent(f: &PolyFq, r: u64, a: u32) -> Result<u32> {
    let t = polyarith::exponent(f)?;
    if t % r != 0 {
        return Ok(0);
    }
    let q = f.field().q();
    let d = f.degree() as u64;
    let deg = mult_order_mod(r.pow(a) * t, q)?;
    assert_eq!(deg % d, 0);
    let mut ratio = deg / d;
    let mut i = 0u32;
    while ratio > 1 {
        assert_eq!(ratio % r, 0, "factor degree must be d times a power of r");
        ratio /= r;
        i += 1;
    }
    assert!(i <= a, "stratum index stays within the exponent of M");
    Ok(i)
}

/// N_M(q, d): the number of M-power irreducibles of degree d over F_q, by
/// closed formula. For d = 1 this is (q−1)/(M, q−1); for d > 1 it is
/// (1/d) Σ_{r|d} μ(r) · (M(q^{d/r}−1), q^d−1) / (M, q^d−1).
pub fn count_nm(q: u64, m: u64, d: u32) -> BigUint {
    assert!(d >= 1 && m >= 1 && q >= 2);
    if d == 1 {
        return BigUint::from((q - 1) / num::integer::gcd(m, q - 1));
    }
    let qd1 = BigUint::from(q).pow(d) - 1u32;
    let denom = BigUint::from(m).gcd(&qd1);
    let mut sum = BigInt::zero();
    for r in arith::divisors(d as u64) {
        let mu = arith::moebius(r);
        if mu == 0 {
            continue;
        }
        let qe1 = BigUint::from(q).pow(d / r as u32) - 1u32;
        let num = (BigUint::from(m) * qe1).gcd(&qd1);
        let (term, rem) = num.div_rem(&denom);
        assert!(rem.is_zero(), "(M, q^d−1) divides each gcd term");
        sum += BigInt::from(term) * mu;
    }
    let (quot, rem) = sum.div_rem(&BigInt::from(d));
    assert!(rem.is_zero() && !quot.is_negative(), "N_M(q,d) is a nonnegative integer");
    quot.to_biguint().unwrap()
}

/// |T̃(D, e)|: field elements of F_{q^e} that generate F_{q^e} over F_q and
/// are M-th powers inside F_{q^D}. Summed with Möbius over divisors of e.
fn t_tilde(q: u64, m: u64, dd: u32, e: u32) -> BigInt {
    let qd1 = BigUint::from(q).pow(dd) - 1u32;
    let denom = BigUint::from(m).gcd(&qd1);
    let mut sum = BigInt::zero();
    for r in arith::divisors(e as u64) {
        let mu = arith::moebius(r);
        if mu == 0 {
            continue;
        }
        let qe1 = BigUint::from(q).pow(e / r as u32) - 1u32;
        let num = (BigUint::from(m) * qe1).gcd(&qd1);
        let (term, rem) = num.div_rem(&denom);
        assert!(rem.is_zero());
        sum += BigInt::from(term) * mu;
    }
    sum
}

/// N_M^i(q, d): the number of degree-d irreducibles in stratum i of
/// M = r^a, gcd(q, M) = 1. Stratum 0 is [`count_nm`]; for i ≥ 1 it is
/// (1/d)(|T̃(d·r^i, d)| − |T̃(d·r^(i−1), d)|).
pub fn count_nmi(q: u64, m: u64, d: u32, i: u32) -> Result<BigUint> {
    assert!(d >= 1 && q >= 2);
    let (r, a) = arith::prime_power_split(m).ok_or(Error::NotPrimePower(m))?;
    if num::integer::gcd(q, m) != 1 {
        return Err(Error::NotCoprime { a: q, b: m });
    }
    if i > a {
        return Err(Error::IndexOutOfRange { i, max: a });
    }
    if i == 0 {
        return Ok(count_nm(q, m, d));
    }
    let ri = u32::try_from(r.pow(i)).expect("stratum scale fits u32");
    let upper = t_tilde(q, m, d * ri, d);
    let lower = t_tilde(q, m, d * ri / r as u32, d);
    let (quot, rem) = (upper - lower).div_rem(&BigInt::from(d));
    assert!(rem.is_zero() && !quot.is_negative(), "N_M^i(q,d) is a nonnegative integer");
    Ok(quot.to_biguint().unwrap())
}

/// Predicted factor profile of f(x^M) for irreducible f ≠ x with
/// gcd(q, M) = 1, as sorted (degree, count) pairs. Derived from the root
/// order t alone: write M = M₁M₂ where M₂ collects the prime powers of M
/// whose primes divide t; then for each b | M₁ there are
/// M₂·d·φ(b)/𝔐(M₂tb; q) factors of degree 𝔐(M₂tb; q).
pub fn butler_profile(f: &PolyFq, m: u64) -> Result<Vec<(u64, u64)>> {
    assert!(m >= 2, "power must be >= 2");
    let q = f.field().q();
    if num::integer::gcd(q, m) != 1 {
        return Err(Error::NotCoprime { a: q, b: m });
    }
    let t = polyarith::exponent(f)?;
    let d = f.degree() as u64;
    let mut m1 = m;
    let mut m2 = 1u64;
    for (r, e) in arith::factor_u64(m) {
        if t % r == 0 {
            let pe = r.pow(e);
            m2 *= pe;
            m1 /= pe;
        }
    }
    let mut profile = std::collections::BTreeMap::new();
    for b in arith::divisors(m1) {
        let deg = mult_order_mod(m2 * t * b, q)?;
        let num = m2 * d * arith::euler_phi(b);
        assert_eq!(num % deg, 0, "factor count must be integral");
        *profile.entry(deg).or_insert(0u64) += num / deg;
    }
    let out: Vec<(u64, u64)> = profile.into_iter().collect();
    let total: u64 = out.iter().map(|&(deg, c)| deg * c).sum();
    assert_eq!(total, m * d, "profile must account for deg f(x^M)");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::FqField;

    fn fq(p: u64, k: u32) -> FqField {
        FqField::new(p, k, None).unwrap()
    }

    fn poly(field: &FqField, idx: &[u64]) -> PolyFq {
        PolyFq::from_indices(field, idx)
    }

    #[test]
    fn m_power_examples() {
        let f3 = fq(3, 1);
        assert!(is_m_power_poly(&poly(&f3, &[2, 1]), 2).unwrap()); // x − 1
        assert!(!is_m_power_poly(&poly(&f3, &[1, 1]), 2).unwrap()); // x − 2
        assert!(is_m_power_poly(&poly(&f3, &[1, 0, 1]), 2).unwrap()); // x² + 1
        // Reducible input: every factor must pass.
        assert!(!is_m_power_poly(&poly(&f3, &[2, 0, 1]), 2).unwrap()); // (x−1)(x+1)
        assert!(matches!(
            is_m_power_poly(&PolyFq::one(&f3), 2),
            Err(Error::ConstantPolynomial)
        ));
    }

    #[test]
    fn m_power_matches_residues_for_linear_polys() {
        for q in [3u64, 5, 7] {
            let f = fq(q, 1);
            for m in 2..=6u64 {
                for lam in 1..q {
                    // x − λ
                    let p = poly(&f, &[(q - lam) % q, 1]);
                    let expect = f.scalar(lam).is_mth_power(m);
                    assert_eq!(is_m_power_poly(&p, m).unwrap(), expect, "q={q} m={m} λ={lam}");
                }
            }
        }
    }

    #[test]
    fn stratum_examples() {
        let f3 = fq(3, 1);
        assert_eq!(stratum(&poly(&f3, &[2, 1]), 2).unwrap(), 0);
        assert_eq!(stratum(&poly(&f3, &[1, 1]), 2).unwrap(), 1);
        let f5 = fq(5, 1);
        assert_eq!(stratum(&poly(&f5, &[3, 1]), 4).unwrap(), 2); // x − 2
        assert!(matches!(stratum(&poly(&f3, &[1, 1]), 6), Err(Error::NotPrimePower(6))));
        let f2 = fq(2, 1);
        assert!(matches!(
            stratum(&poly(&f2, &[1, 1]), 2),
            Err(Error::NotCoprime { a: 2, b: 2 })
        ));
    }

    #[test]
    fn stratum_zero_iff_m_power() {
        for (q, m) in [(3u64, 2u64), (5, 2), (5, 4), (2, 3), (4, 3), (3, 4), (7, 3)] {
            let field = fq_from_q(q);
            for d in 1..=2usize {
                for f in polyarith::enumerate_irreducibles(&field, d) {
                    let s = stratum(&f, m).unwrap();
                    assert_eq!(s == 0, is_m_power_poly(&f, m).unwrap(), "f={f} q={q} m={m}");
                }
            }
        }
    }

    fn fq_from_q(q: u64) -> FqField {
        let (p, k) = arith::prime_power_split(q).unwrap();
        fq(p, k)
    }

    #[test]
    fn count_nm_pinned_values() {
        assert_eq!(count_nm(3, 2, 2), BigUint::from(1u32));
        assert_eq!(count_nm(4, 2, 2), BigUint::from(6u32));
        assert_eq!(count_nm(4, 3, 2), BigUint::from(2u32));
        assert_eq!(count_nm(7, 3, 2), BigUint::from(7u32));
        assert_eq!(count_nm(5, 2, 2), BigUint::from(4u32));
    }

    #[test]
    fn count_nm_closed_form_tables() {
        // M = 2, split by parity of q.
        for q in [3u64, 5, 7, 9] {
            assert_eq!(count_nm(q, 2, 2), BigUint::from((q - 1) * (q - 1) / 4));
            assert_eq!(count_nm(q, 2, 3), BigUint::from((q * q * q - q) / 6));
            let s = (q * q - 1) * (q * q - 1) / 8;
            assert_eq!(count_nm(q, 2, 4), BigUint::from(s));
        }
        for q in [2u64, 4, 8] {
            assert_eq!(count_nm(q, 2, 2), BigUint::from((q * q - q) / 2));
            assert_eq!(count_nm(q, 2, 3), BigUint::from((q * q * q - q) / 3));
            assert_eq!(count_nm(q, 2, 4), BigUint::from((q * q * q * q - q * q) / 4));
        }
        // M = 3, split by q mod 3.
        for q in [2u64, 5, 8] {
            if q % 3 == 2 {
                assert_eq!(count_nm(q, 3, 2), BigUint::from((q - 1) * (q - 2) / 6));
                assert_eq!(count_nm(q, 3, 3), BigUint::from((q * q * q - q) / 3));
                assert_eq!(count_nm(q, 3, 4), BigUint::from((q * q * q * q - q * q) / 12));
            }
        }
        for q in [4u64, 7] {
            assert_eq!(count_nm(q, 3, 2), BigUint::from((q * q - q) / 6));
            assert_eq!(count_nm(q, 3, 3), BigUint::from((q * q * q - 3 * q + 2) / 9));
            assert_eq!(count_nm(q, 3, 4), BigUint::from((q * q * q * q - q * q) / 12));
        }
        // q a power of 3: the formula still evaluates and matches row "0".
        for q in [3u64, 9] {
            assert_eq!(count_nm(q, 3, 2), BigUint::from((q * q - q) / 2));
            assert_eq!(count_nm(q, 3, 3), BigUint::from((q * q * q - q) / 3));
            assert_eq!(count_nm(q, 3, 4), BigUint::from((q * q * q * q - q * q) / 4));
        }
    }

    #[test]
    fn count_nmi_examples() {
        assert_eq!(count_nmi(5, 4, 1, 0).unwrap(), BigUint::from(1u32));
        assert_eq!(count_nmi(5, 4, 1, 1).unwrap(), BigUint::from(1u32));
        assert_eq!(count_nmi(5, 4, 1, 2).unwrap(), BigUint::from(2u32));
        assert_eq!(count_nmi(3, 2, 1, 1).unwrap(), BigUint::from(1u32));
        assert!(matches!(
            count_nmi(5, 4, 1, 3),
            Err(Error::IndexOutOfRange { i: 3, max: 2 })
        ));
        assert!(matches!(count_nmi(5, 6, 1, 0), Err(Error::NotPrimePower(6))));
        assert!(matches!(count_nmi(3, 9, 1, 0), Err(Error::NotCoprime { .. })));
    }

    #[test]
    fn strata_counts_sum_to_total() {
        for (q, m) in [(3u64, 2u64), (3, 4), (5, 2), (5, 4), (5, 9), (2, 3), (4, 3), (7, 8), (9, 2)] {
            let (_, a) = arith::prime_power_split(m).unwrap();
            for d in 1..=4u32 {
                let mut sum = BigUint::zero();
                for i in 0..=a {
                    sum += count_nmi(q, m, d, i).unwrap();
                }
                assert_eq!(sum, polyarith::count_irreducibles(q, d), "q={q} m={m} d={d}");
            }
        }
    }

    #[test]
    fn counts_match_enumeration_small() {
        for (q, m) in [(3u64, 2u64), (5, 2), (5, 4), (2, 3), (4, 3)] {
            let field = fq_from_q(q);
            let (_, a) = arith::prime_power_split(m).unwrap();
            for d in 1..=2usize {
                let polys = polyarith::enumerate_irreducibles(&field, d);
                let mut by_stratum = vec![0u64; a as usize + 1];
                for f in &polys {
                    by_stratum[stratum(&f, m).unwrap() as usize] += 1;
                }
                assert_eq!(BigUint::from(by_stratum[0]), count_nm(q, m, d as u32), "q={q} m={m} d={d}");
                for i in 0..=a {
                    assert_eq!(
                        BigUint::from(by_stratum[i as usize]),
                        count_nmi(q, m, d as u32, i).unwrap(),
                        "q={q} m={m} d={d} i={i}"
                    );
                }
            }
        }
    }

    #[test]
    fn butler_examples() {
        let f3 = fq(3, 1);
        assert_eq!(butler_profile(&poly(&f3, &[2, 1]), 2).unwrap(), vec![(1, 2)]);
        assert_eq!(butler_profile(&poly(&f3, &[1, 1]), 2).unwrap(), vec![(2, 1)]);
        let f2 = fq(2, 1);
        assert!(matches!(
            butler_profile(&poly(&f2, &[1, 1, 1]), 2),
            Err(Error::NotCoprime { .. })
        ));
    }

    #[test]
    fn butler_matches_factorization_small() {
        for (q, ms) in [(2u64, vec![3u64, 5, 9]), (3, vec![2, 4, 5]), (5, vec![2, 3, 6])] {
            let field = fq_from_q(q);
            for d in 1..=2usize {
                for f in polyarith::enumerate_irreducibles(&field, d) {
                    for &m in &ms {
                        let predicted = butler_profile(&f, m).unwrap();
                        let fac = polyarith::factorize(&f.compose_power(m)).unwrap();
                        assert!(fac.is_squarefree());
                        let got: Vec<(u64, u64)> = fac
                            .degree_profile()
                            .into_iter()
                            .map(|(deg, c)| (deg as u64, c as u64))
                            .collect();
                        assert_eq!(predicted, got, "f={f} q={q} m={m}");
                    }
                }
            }
        }
    }

    #[test]
    fn order_coprime_to_scale_forces_stratum_zero() {
        // If 𝔐(r; q) does not divide d, every degree-d irreducible is M-power.
        for (q, m) in [(3u64, 2u64), (5, 2), (5, 4), (2, 3), (7, 9)] {
            let field = fq_from_q(q);
            let (r, _) = arith::prime_power_split(m).unwrap();
            for d in 1..=3usize {
                let s = mult_order_mod(r, q).unwrap();
                if d as u64 % s == 0 {
                    continue;
                }
                for f in polyarith::enumerate_irreducibles(&field, d) {
                    assert_eq!(stratum(&f, m).unwrap(), 0, "f={f} q={q} m={m}");
                }
            }
        }
    }

    #[test]
    fn stratum_paths_agree() {
        for (q, m) in [(3u64, 2u64), (5, 2), (5, 4), (2, 3), (4, 3), (3, 4), (7, 9), (2, 9)] {
            let field = fq_from_q(q);
            for d in 1..=3usize {
                for f in polyarith::enumerate_irreducibles(&field, d) {
                    assert_eq!(
                        stratum(&f, m).unwrap(),
                        stratum_via_factorization(&f, m).unwrap(),
                        "f={f} q={q} m={m}"
                    );
                }
            }
        }
    }

    #[test]
    fn m_power_paths_agree() {
        // Includes composite coprime M and M sharing a factor with q.
        for (q, ms) in [
            (2u64, vec![3u64, 5, 6, 9, 15]),
            (3, vec![2, 3, 4, 6]),
            (4, vec![3, 5, 6]),
            (5, vec![2, 4, 6, 10]),
        ] {
            let field = fq_from_q(q);
            for d in 1..=3usize {
                for f in polyarith::enumerate_irreducibles(&field, d) {
                    for &m in &ms {
                        assert_eq!(
                            is_m_power_poly(&f, m).unwrap(),
                            is_m_power_poly_direct(&f, m).unwrap(),
                            "f={f} q={q} m={m}"
                        );
                    }
                }
            }
        }
    }
}
