//! Arithmetic in small finite fields F_q, q = p^k.
//!
//! A field is built either over a caller-supplied monic irreducible modulus
//! or over a deterministic default: the lexicographically smallest monic
//! irreducible of degree k over Z_p, comparing coefficients low-degree
//! first. Elements are immutable coefficient vectors in Z_p[x]/(modulus),
//! constant term first. Two independently constructed fields with the same
//! (p, k, modulus) are interchangeable.

use std::fmt;
use std::sync::Arc;

use crate::arith;
use crate::error::{Error, Result};

#[derive(Debug, PartialEq, Eq, Hash)]
struct FieldRepr {
    p: u64,
    k: u32,
    q: u64,
    /// Monic, length k+1, constant term first, coefficients in [0, p).
    modulus: Vec<u64>,
}

/// The field F_q with q = p^k, cheap to clone and share.
#[derive(Debug, Clone)]
pub struct FqField {
    repr: Arc<FieldRepr>,
}

/// An element of an [`FqField`]: k residues mod p, constant term first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FqElem {
    field: FqField,
    coeffs: Vec<u64>,
}

impl PartialEq for FqField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.repr, &other.repr) || self.repr == other.repr
    }
}
impl Eq for FqField {}
impl std::hash::Hash for FqField {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.repr.hash(state);
    }
}

impl FqField {
    /// Builds F_{p^k}. With `modulus = None` the default modulus is chosen
    /// deterministically as described in the module docs.
    pub fn new(p: u64, k: u32, modulus: Option<&[u64]>) -> Result<FqField> {
        if !arith::is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::Parse("extension degree k must be >= 1".into()));
        }
        let q = (0..k)
            .try_fold(1u64, |acc, _| acc.checked_mul(p))
            .ok_or_else(|| Error::SizeLimitExceeded(format!("{p}^{k} overflows u64")))?;
        let modulus = match modulus {
            Some(m) => {
                let mut m: Vec<u64> = m.iter().map(|&c| c % p).collect();
                while m.last() == Some(&0) {
                    m.pop();
                }
                if m.len() != k as usize + 1 {
                    return Err(Error::ModulusDegreeMismatch {
                        got: m.len().saturating_sub(1),
                        expected: k as usize,
                    });
                }
                if *m.last().unwrap() != 1 || !zpx_is_irreducible(&m, p) {
                    return Err(Error::ReducibleModulus { p });
                }
                m
            }
            None => default_modulus(p, k),
        };
        Ok(FqField {
            repr: Arc::new(FieldRepr { p, k, q, modulus }),
        })
    }

    /// The prime field F_p.
    pub fn prime_field(p: u64) -> Result<FqField> {
        FqField::new(p, 1, None)
    }

    /// Parses "p", "p^k", or "p^k/c0,c1,...,ck" (constant-first modulus).
    pub fn from_descriptor(s: &str) -> Result<FqField> {
        let (head, modulus) = match s.split_once('/') {
            Some((h, m)) => (h, Some(m)),
            None => (s, None),
        };
        let (p_str, k_str) = match head.split_once('^') {
            Some((p, k)) => (p, k),
            None => (head, "1"),
        };
        let bad = |what: &str| Error::Parse(format!("bad field descriptor {s:?}: {what}"));
        let p: u64 = p_str.trim().parse().map_err(|_| bad("characteristic"))?;
        let k: u32 = k_str.trim().parse().map_err(|_| bad("extension degree"))?;
        let coeffs = match modulus {
            None => None,
            Some(m) => Some(
                m.split(',')
                    .map(|c| c.trim().parse::<u64>().map_err(|_| bad("modulus coefficient")))
                    .collect::<Result<Vec<u64>>>()?,
            ),
        };
        FqField::new(p, k, coeffs.as_deref())
    }

    /// Canonical descriptor "p^k/c0,c1,...,ck", inverse of [`Self::from_descriptor`].
    pub fn descriptor(&self) -> String {
        let coeffs: Vec<String> = self.repr.modulus.iter().map(u64::to_string).collect();
        format!("{}^{}/{}", self.repr.p, self.repr.k, coeffs.join(","))
    }

    pub fn p(&self) -> u64 {
        self.repr.p
    }

    pub fn k(&self) -> u32 {
        self.repr.k
    }

    /// The field order q = p^k.
    pub fn q(&self) -> u64 {
        self.repr.q
    }

    /// Monic modulus, constant term first, length k+1.
    pub fn modulus(&self) -> &[u64] {
        &self.repr.modulus
    }

    pub fn zero(&self) -> FqElem {
        self.elem(&[])
    }

    pub fn one(&self) -> FqElem {
        self.elem(&[1])
    }

    /// Embeds the residue c mod p as a field element.
    pub fn scalar(&self, c: u64) -> FqElem {
        self.elem(&[c % self.repr.p])
    }

    /// Element with the given coefficients (at most k, reduced mod p and
    /// zero-padded to length k).
    pub fn elem(&self, coeffs: &[u64]) -> FqElem {
        assert!(
            coeffs.len() <= self.repr.k as usize,
            "coefficient vector longer than extension degree"
        );
        let mut c: Vec<u64> = coeffs.iter().map(|&x| x % self.repr.p).collect();
        c.resize(self.repr.k as usize, 0);
        FqElem {
            field: self.clone(),
            coeffs: c,
        }
    }

    /// Element number i in the enumeration order: base-p digits of i,
    /// least significant digit as the constant coefficient.
    pub fn elem_from_index(&self, mut i: u64) -> FqElem {
        assert!(i < self.repr.q, "index out of range");
        let mut c = Vec::with_capacity(self.repr.k as usize);
        for _ in 0..self.repr.k {
            c.push(i % self.repr.p);
            i /= self.repr.p;
        }
        FqElem {
            field: self.clone(),
            coeffs: c,
        }
    }

    /// Position of a in the enumeration order.
    pub fn index_of(&self, a: &FqElem) -> u64 {
        assert_eq!(self, a.field(), "element of a different field");
        a.coeffs
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * self.repr.p + c)
    }

    /// All q elements, in index order.
    pub fn elements(&self) -> impl Iterator<Item = FqElem> + '_ {
        (0..self.repr.q).map(move |i| self.elem_from_index(i))
    }
}

impl fmt::Display for FqField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.descriptor())
    }
}

impl FqElem {
    pub fn field(&self) -> &FqField {
        &self.field
    }

    /// Residues mod p, constant term first, length k.
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    fn check_same_field(&self, other: &FqElem) {
        assert!(
            self.field == other.field,
            "elements of different fields are not operable"
        );
    }

    /// Multiplicative inverse.
    pub fn inv(&self) -> Result<FqElem> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        let p = self.field.p();
        let inv = zpx_invmod(&zpx_trim(&self.coeffs), &self.field.repr.modulus, p);
        Ok(self.field.elem(&inv))
    }

    pub fn div(&self, other: &FqElem) -> Result<FqElem> {
        self.check_same_field(other);
        Ok(self * &other.inv()?)
    }

    /// a^e with the convention 0^0 = 1.
    pub fn pow(&self, mut e: u128) -> FqElem {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// The Frobenius automorphism a ↦ a^p.
    pub fn frobenius(&self) -> FqElem {
        self.pow(self.field.p() as u128)
    }

    /// Smallest t ≥ 1 with a^t = 1; divides q − 1.
    pub fn mult_order(&self) -> Result<u64> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        let mut t = self.field.q() - 1;
        for (r, _) in arith::factor_u64(t) {
            while t % r == 0 && self.pow((t / r) as u128).is_one() {
                t /= r;
            }
        }
        Ok(t)
    }

    /// Whether a = b^M for some b in the field. Nonzero a is an M-th power
    /// exactly when a^((q−1)/gcd(M, q−1)) = 1; zero is 0^M.
    pub fn is_mth_power(&self, m: u64) -> bool {
        assert!(m >= 1, "power exponent must be >= 1");
        if self.is_zero() {
            return true;
        }
        let qm1 = self.field.q() - 1;
        let g = num::integer::gcd(m, qm1);
        self.pow((qm1 / g) as u128).is_one()
    }
}

impl fmt::Display for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.k() == 1 {
            write!(f, "{}", self.coeffs[0])
        } else {
            let parts: Vec<String> = self.coeffs.iter().map(u64::to_string).collect();
            write!(f, "[{}]", parts.join(","))
        }
    }
}

macro_rules! elem_binop {
    ($trait:ident, $method:ident, $imp:expr) => {
        impl std::ops::$trait for &FqElem {
            type Output = FqElem;
            fn $method(self, rhs: &FqElem) -> FqElem {
                self.check_same_field(rhs);
                let p = self.field.p();
                #[allow(clippy::redundant_closure_call)]
                let coeffs = ($imp)(self, rhs, p);
                FqElem {
                    field: self.field.clone(),
                    coeffs,
                }
            }
        }
        impl std::ops::$trait for FqElem {
            type Output = FqElem;
            fn $method(self, rhs: FqElem) -> FqElem {
                std::ops::$trait::$method(&self, &rhs)
            }
        }
    };
}

elem_binop!(Add, add, |a: &FqElem, b: &FqElem, p: u64| {
    a.coeffs
        .iter()
        .zip(&b.coeffs)
        .map(|(&x, &y)| (x + y) % p)
        .collect()
});
elem_binop!(Sub, sub, |a: &FqElem, b: &FqElem, p: u64| {
    a.coeffs
        .iter()
        .zip(&b.coeffs)
        .map(|(&x, &y)| (x + p - y) % p)
        .collect()
});
elem_binop!(Mul, mul, |a: &FqElem, b: &FqElem, p: u64| {
    let prod = zpx_mul(&zpx_trim(&a.coeffs), &zpx_trim(&b.coeffs), p);
    let mut r = zpx_rem(&prod, &a.field.repr.modulus, p);
    r.resize(a.field.k() as usize, 0);
    r
});

impl std::ops::Neg for &FqElem {
    type Output = FqElem;
    fn neg(self) -> FqElem {
        let p = self.field.p();
        FqElem {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|&c| (p - c) % p).collect(),
        }
    }
}
impl std::ops::Neg for FqElem {
    type Output = FqElem;
    fn neg(self) -> FqElem {
        -&self
    }
}

/// 𝔐(s; q): the order of q in (Z/sZ)^×. Requires gcd(s, q) = 1.
pub fn mult_order_mod(s: u64, q: u64) -> Result<u64> {
    if s == 0 || num::integer::gcd(s, q) != 1 {
        return Err(Error::NotCoprime { a: s, b: q });
    }
    if s == 1 {
        return Ok(1);
    }
    let mut t = arith::euler_phi(s);
    for (r, _) in arith::factor_u64(t) {
        while t % r == 0 && arith::powmod(q % s, t / r, s) == 1 {
            t /= r;
        }
    }
    Ok(t)
}

// ---- Z_p[x] plumbing on raw residue vectors (constant term first) ----

fn zpx_trim(a: &[u64]) -> Vec<u64> {
    let mut v = a.to_vec();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn zpx_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    zpx_trim(&out)
}

/// Remainder of a by monic m.
fn zpx_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = zpx_trim(a);
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        for (i, &mc) in m.iter().enumerate() {
            let idx = i + shift;
            r[idx] = (r[idx] + p - (lead * mc) % p) % p;
        }
        r = zpx_trim(&r);
    }
    r
}

fn zpx_powmod(base: &[u64], mut e: u128, m: &[u64], p: u64) -> Vec<u64> {
    let mut b = zpx_rem(base, m, p);
    let mut acc = vec![1u64];
    while e > 0 {
        if e & 1 == 1 {
            acc = zpx_rem(&zpx_mul(&acc, &b, p), m, p);
        }
        b = zpx_rem(&zpx_mul(&b, &b, p), m, p);
        e >>= 1;
    }
    acc
}

fn zpx_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut a, mut b) = (zpx_trim(a), zpx_trim(b));
    while !b.is_empty() {
        let monic = zpx_make_monic(&b, p);
        let r = zpx_rem(&a, &monic, p);
        a = monic;
        b = r;
    }
    a
}

fn zpx_make_monic(a: &[u64], p: u64) -> Vec<u64> {
    let lead = *a.last().unwrap();
    if lead == 1 {
        return a.to_vec();
    }
    let inv = arith::powmod(lead, p - 2, p);
    a.iter().map(|&c| (c * inv) % p).collect()
}

/// Inverse of a modulo monic m, via extended Euclid over Z_p.
fn zpx_invmod(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    // Invariants: r0 = t0*a (mod m), r1 = t1*a (mod m).
    let (mut r0, mut r1) = (m.to_vec(), zpx_rem(a, m, p));
    let (mut t0, mut t1): (Vec<u64>, Vec<u64>) = (vec![], vec![1]);
    while !r1.is_empty() {
        // Euclid step with explicit quotient.
        let (q, r) = zpx_divrem_raw(&r0, &r1, p);
        let qt1 = zpx_mul(&q, &t1, p);
        let tnew = zpx_sub(&t0, &qt1, p);
        r0 = r1;
        r1 = r;
        t0 = t1;
        t1 = tnew;
    }
    assert_eq!(r0.len(), 1, "input not invertible modulo m");
    let scale = arith::powmod(r0[0], p - 2, p);
    zpx_rem(&t0.iter().map(|&c| (c * scale) % p).collect::<Vec<_>>(), m, p)
}

fn zpx_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len().max(b.len())];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = (x + p - y) % p;
    }
    zpx_trim(&out)
}

/// Division with remainder by a not-necessarily-monic divisor.
fn zpx_divrem_raw(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let b = zpx_trim(b);
    let lead_inv = arith::powmod(*b.last().unwrap(), p - 2, p);
    let db = b.len() - 1;
    let mut r = zpx_trim(a);
    let mut q = vec![0u64; r.len().saturating_sub(db)];
    while r.len() > db || (r.len() == db + 1 && db == 0 && !r.is_empty()) {
        if r.len() < b.len() {
            break;
        }
        let c = (*r.last().unwrap() * lead_inv) % p;
        let shift = r.len() - b.len();
        q[shift] = c;
        for (i, &bc) in b.iter().enumerate() {
            r[i + shift] = (r[i + shift] + p - (c * bc) % p) % p;
        }
        r = zpx_trim(&r);
        if r.len() <= db {
            break;
        }
    }
    (zpx_trim(&q), r)
}

/// Rabin irreducibility test for monic f of degree ≥ 1 over Z_p.
fn zpx_is_irreducible(f: &[u64], p: u64) -> bool {
    let k = (f.len() - 1) as u32;
    if k == 0 {
        return false;
    }
    let x = vec![0u64, 1];
    let pk = (p as u128).pow(k);
    // x^(p^k) must reduce to x modulo f.
    let frob = zpx_powmod(&x, pk, f, p);
    if zpx_trim(&frob) != zpx_rem(&x, f, p) {
        return false;
    }
    for (r, _) in arith::factor_u64(k as u64) {
        let e = (p as u128).pow(k / r as u32);
        let xr = zpx_powmod(&x, e, f, p);
        let diff = zpx_sub(&xr, &zpx_rem(&x, f, p), p);
        let g = zpx_gcd(&diff, f, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

/// Lexicographically smallest monic irreducible of degree k over Z_p,
/// comparing coefficient vectors constant term first.
fn default_modulus(p: u64, k: u32) -> Vec<u64> {
    let total = (p as u128).pow(k);
    for idx in 0..total {
        let mut f = Vec::with_capacity(k as usize + 1);
        let mut i = idx;
        for _ in 0..k {
            f.push((i % p as u128) as u64);
            i /= p as u128;
        }
        f.push(1);
        if zpx_is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("an irreducible of every degree exists over Z_p")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_moduli_are_the_expected_ones() {
        let f2 = FqField::new(2, 1, None).unwrap();
        assert_eq!(f2.modulus(), &[0, 1]);
        let f4 = FqField::new(2, 2, None).unwrap();
        assert_eq!(f4.modulus(), &[1, 1, 1]);
        let f9 = FqField::new(3, 2, None).unwrap();
        assert_eq!(f9.modulus(), &[1, 0, 1]);
        let f8 = FqField::new(2, 3, None).unwrap();
        assert_eq!(f8.modulus(), &[1, 1, 0, 1]);
    }

    #[test]
    fn construction_validates_inputs() {
        assert!(matches!(FqField::new(4, 1, None), Err(Error::NotPrime(4))));
        assert!(matches!(
            FqField::new(3, 1, Some(&[1, 0, 1])),
            Err(Error::ModulusDegreeMismatch { got: 2, expected: 1 })
        ));
        assert!(FqField::new(3, 2, Some(&[1, 0, 1])).is_ok());
        assert!(matches!(
            FqField::new(2, 2, Some(&[1, 0, 1])),
            Err(Error::ReducibleModulus { p: 2 })
        ));
    }

    #[test]
    fn descriptor_round_trip() {
        for d in ["2", "3^2", "2^2/1,1,1", "5^1/0,1"] {
            let f = FqField::from_descriptor(d).unwrap();
            let g = FqField::from_descriptor(&f.descriptor()).unwrap();
            assert_eq!(f, g, "descriptor {d}");
        }
        assert!(matches!(FqField::from_descriptor("9"), Err(Error::NotPrime(9))));
    }

    #[test]
    fn arithmetic_in_f9() {
        let f9 = FqField::new(3, 2, None).unwrap();
        // With modulus x^2+1 the class of x is a square root of -1.
        let i = f9.elem(&[0, 1]);
        assert_eq!(&i * &i, -f9.one());
        let a = f9.elem(&[2, 1]);
        let inv = a.inv().unwrap();
        assert!((&a * &inv).is_one());
        assert_eq!(a.div(&a).unwrap(), f9.one());
    }

    #[test]
    fn inverses_exhaustive_small_fields() {
        for (p, k) in [(2, 1), (3, 1), (5, 1), (2, 2), (3, 2), (2, 3), (7, 1)] {
            let f = FqField::new(p, k, None).unwrap();
            for a in f.elements() {
                if a.is_zero() {
                    assert_eq!(a.inv(), Err(Error::ZeroElement));
                } else {
                    assert!((&a * &a.inv().unwrap()).is_one(), "a = {a} in {f}");
                }
            }
        }
    }

    #[test]
    fn fermat_and_frobenius() {
        for (p, k) in [(2, 2), (3, 2), (2, 3), (5, 1), (7, 1), (3, 4)] {
            let f = FqField::new(p, k, None).unwrap();
            let q = f.q();
            for a in f.elements() {
                if !a.is_zero() {
                    assert!(a.pow((q - 1) as u128).is_one());
                    assert_eq!((q - 1) % a.mult_order().unwrap(), 0);
                }
                for b in f.elements() {
                    let lhs = (&a + &b).frobenius();
                    let rhs = &a.frobenius() + &b.frobenius();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn enumeration_is_complete_and_indexed() {
        let f = FqField::new(3, 2, None).unwrap();
        let all: Vec<FqElem> = f.elements().collect();
        assert_eq!(all.len(), 9);
        for (i, a) in all.iter().enumerate() {
            assert_eq!(f.index_of(a), i as u64);
        }
        let distinct: std::collections::HashSet<&FqElem> = all.iter().collect();
        assert_eq!(distinct.len(), 9);
    }

    #[test]
    fn mult_order_examples() {
        let f3 = FqField::prime_field(3).unwrap();
        assert_eq!(f3.one().mult_order().unwrap(), 1);
        assert_eq!(f3.scalar(2).mult_order().unwrap(), 2);
        let f4 = FqField::new(2, 2, None).unwrap();
        // The class of x generates F_4^*.
        assert_eq!(f4.elem(&[0, 1]).mult_order().unwrap(), 3);
    }

    #[test]
    fn order_of_q_mod_s() {
        assert_eq!(mult_order_mod(1, 7).unwrap(), 1);
        assert_eq!(mult_order_mod(3, 2).unwrap(), 2);
        assert_eq!(mult_order_mod(7, 2).unwrap(), 3);
        assert_eq!(mult_order_mod(8, 3).unwrap(), 2);
        assert!(mult_order_mod(6, 2).is_err());
    }

    #[test]
    fn power_residues_match_exhaustive_search() {
        for (p, k) in [(3, 1), (5, 1), (7, 1), (3, 2), (2, 2)] {
            let f = FqField::new(p, k, None).unwrap();
            for m in 1..=6u64 {
                let mut powers = std::collections::HashSet::new();
                for b in f.elements() {
                    powers.insert(b.pow(m as u128));
                }
                for a in f.elements() {
                    assert_eq!(a.is_mth_power(m), powers.contains(&a), "a={a} m={m} in {f}");
                }
            }
        }
    }

    #[test]
    fn structural_field_identity() {
        let a = FqField::new(3, 2, Some(&[1, 0, 1])).unwrap();
        let b = FqField::new(3, 2, None).unwrap();
        assert_eq!(a, b);
        let x = a.elem(&[1, 2]);
        let y = b.elem(&[1, 1]);
        assert_eq!(&x + &y, a.elem(&[2, 0]));
    }
}
