//! Monic univariate polynomial arithmetic over F_q.
//!
//! Provides complete factorization (squarefree split, distinct-degree,
//! then seeded equal-degree splitting so output is reproducible),
//! irreducibility testing, enumeration and Möbius counting of monic
//! irreducibles, the composed polynomial f(x^M), the exponent of an
//! irreducible (multiplicative order of its roots), and the minimal
//! polynomial of the M-th power of a root.
//!
//! Polynomials are coefficient vectors with the constant term first and no
//! trailing zeros; the zero polynomial is the empty vector. Human-readable
//! output prints highest degree first; serialized output is constant-first.

use std::cmp::Ordering;
use std::fmt;

use num::bigint::BigUint;
use num::{BigInt, One, Signed, Zero};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith;
use crate::error::{Error, Result};
use crate::ff::{FqElem, FqField};

/// Seed for the equal-degree splitting randomness; fixed so that repeated
/// runs factor identically.
pub const DEFAULT_FACTOR_SEED: u64 = 0x5eed_0001;

/// A univariate polynomial over an [`FqField`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyFq {
    field: FqField,
    coeffs: Vec<FqElem>,
}

/// A complete factorization: unit · ∏ factorᵉ, factors distinct monic
/// irreducibles in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub unit: FqElem,
    pub factors: Vec<(PolyFq, u32)>,
}

impl PolyFq {
    /// Builds a polynomial from coefficients, constant term first.
    pub fn new(field: &FqField, mut coeffs: Vec<FqElem>) -> PolyFq {
        for c in &coeffs {
            assert!(c.field() == field, "coefficient from a different field");
        }
        while coeffs.last().map(FqElem::is_zero) == Some(true) {
            coeffs.pop();
        }
        PolyFq {
            field: field.clone(),
            coeffs,
        }
    }

    /// Coefficients given as element indices in the field enumeration order
    /// (for prime fields these are just the residues).
    pub fn from_indices(field: &FqField, indices: &[u64]) -> PolyFq {
        let coeffs = indices.iter().map(|&i| field.elem_from_index(i)).collect();
        PolyFq::new(field, coeffs)
    }

    /// Parses the CLI text form: comma-separated constant-first indices,
    /// e.g. "1,1,1" for x²+x+1.
    pub fn parse(field: &FqField, s: &str) -> Result<PolyFq> {
        let mut indices = Vec::new();
        for part in s.split(',') {
            let i: u64 = part
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad coefficient {part:?}")))?;
            if i >= field.q() {
                return Err(Error::Parse(format!(
                    "coefficient index {i} out of range for {field}"
                )));
            }
            indices.push(i);
        }
        Ok(PolyFq::from_indices(field, &indices))
    }

    /// Serialized text form, inverse of [`Self::parse`] for nonzero input.
    pub fn to_index_string(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|c| self.field.index_of(c).to_string())
            .collect();
        parts.join(",")
    }

    pub fn zero(field: &FqField) -> PolyFq {
        PolyFq::new(field, vec![])
    }

    pub fn one(field: &FqField) -> PolyFq {
        PolyFq::new(field, vec![field.one()])
    }

    /// The monomial x^e.
    pub fn monomial(field: &FqField, e: usize) -> PolyFq {
        let mut coeffs = vec![field.zero(); e + 1];
        coeffs[e] = field.one();
        PolyFq::new(field, coeffs)
    }

    /// The polynomial x.
    pub fn x(field: &FqField) -> PolyFq {
        PolyFq::monomial(field, 1)
    }

    pub fn field(&self) -> &FqField {
        &self.field
    }

    pub fn coeffs(&self) -> &[FqElem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of a nonzero polynomial.
    pub fn degree(&self) -> usize {
        assert!(!self.is_zero(), "degree of the zero polynomial");
        self.coeffs.len() - 1
    }

    /// Coefficient of x^i (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> FqElem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn leading_coeff(&self) -> FqElem {
        assert!(!self.is_zero(), "leading coefficient of zero");
        self.coeffs.last().unwrap().clone()
    }

    pub fn is_monic(&self) -> bool {
        !self.is_zero() && self.coeffs.last().unwrap().is_one()
    }

    pub fn is_x(&self) -> bool {
        self.coeffs.len() == 2 && self.coeffs[0].is_zero() && self.coeffs[1].is_one()
    }

    /// Splits f as (leading coefficient, monic polynomial).
    pub fn make_monic(&self) -> (FqElem, PolyFq) {
        assert!(!self.is_zero(), "cannot normalize zero");
        let lead = self.leading_coeff();
        if lead.is_one() {
            return (lead, self.clone());
        }
        let inv = lead.inv().expect("leading coefficient is nonzero");
        (lead, self.mul_scalar(&inv))
    }

    pub fn mul_scalar(&self, c: &FqElem) -> PolyFq {
        PolyFq::new(&self.field, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn eval(&self, at: &FqElem) -> FqElem {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * at) + c;
        }
        acc
    }

    pub fn derivative(&self) -> PolyFq {
        if self.coeffs.len() <= 1 {
            return PolyFq::zero(&self.field);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * &self.field.scalar(i as u64))
            .collect();
        PolyFq::new(&self.field, coeffs)
    }

    /// f(x^M); M = 1 returns f itself.
    pub fn compose_power(&self, m: u64) -> PolyFq {
        assert!(m >= 1, "composition power must be >= 1");
        if self.is_zero() {
            return self.clone();
        }
        let m = m as usize;
        let mut coeffs = vec![self.field.zero(); (self.coeffs.len() - 1) * m + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * m] = c.clone();
        }
        PolyFq::new(&self.field, coeffs)
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn divrem(&self, divisor: &PolyFq) -> (PolyFq, PolyFq) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        assert!(self.field == divisor.field, "mixed fields");
        if self.is_zero() || self.coeffs.len() < divisor.coeffs.len() {
            return (PolyFq::zero(&self.field), self.clone());
        }
        let lead_inv = divisor.leading_coeff().inv().unwrap();
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![self.field.zero(); rem.len() - dd];
        for top in (dd..rem.len()).rev() {
            let c = &rem[top] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            quot[top - dd] = c.clone();
            for (i, b) in divisor.coeffs.iter().enumerate() {
                let t = &rem[top - dd + i] - &(b * &c);
                rem[top - dd + i] = t;
            }
        }
        (PolyFq::new(&self.field, quot), PolyFq::new(&self.field, rem))
    }

    pub fn rem(&self, modulus: &PolyFq) -> PolyFq {
        self.divrem(modulus).1
    }

    /// Monic greatest common divisor; gcd(0, 0) is zero.
    pub fn gcd(&self, other: &PolyFq) -> PolyFq {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.make_monic().1
        }
    }

    /// Plain power (no modulus).
    pub fn pow(&self, e: u32) -> PolyFq {
        let mut acc = PolyFq::one(&self.field);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// self^e mod m by binary exponentiation.
    pub fn pow_mod(&self, e: u128, m: &PolyFq) -> PolyFq {
        let mut base = self.rem(m);
        let mut acc = PolyFq::one(&self.field).rem(m);
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = (&acc * &base).rem(m);
            }
            base = (&base * &base).rem(m);
            e >>= 1;
        }
        acc
    }

    /// self^e mod m for arbitrarily large exponents.
    pub fn pow_mod_big(&self, e: &BigUint, m: &PolyFq) -> PolyFq {
        let mut acc = PolyFq::one(&self.field).rem(m);
        let mut base = self.rem(m);
        for i in 0..e.bits() {
            if e.bit(i) {
                acc = (&acc * &base).rem(m);
            }
            if i + 1 < e.bits() {
                base = (&base * &base).rem(m);
            }
        }
        acc
    }

    /// Total order: by field, then degree, then coefficient indices from the
    /// constant term up. Gives factorizations and enumerations a canonical
    /// output order.
    fn order_key(&self) -> (u64, u32, Vec<u64>, usize, Vec<u64>) {
        let f = &self.field;
        (
            f.p(),
            f.k(),
            f.modulus().to_vec(),
            self.coeffs.len(),
            self.coeffs.iter().map(|c| f.index_of(c)).collect(),
        )
    }
}

impl PartialOrd for PolyFq {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PolyFq {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order_key().cmp(&other.order_key())
    }
}

impl std::ops::Add for &PolyFq {
    type Output = PolyFq;
    fn add(self, rhs: &PolyFq) -> PolyFq {
        assert!(self.field == rhs.field, "mixed fields");
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect();
        PolyFq::new(&self.field, coeffs)
    }
}

impl std::ops::Sub for &PolyFq {
    type Output = PolyFq;
    fn sub(self, rhs: &PolyFq) -> PolyFq {
        assert!(self.field == rhs.field, "mixed fields");
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeff(i) - &rhs.coeff(i)).collect();
        PolyFq::new(&self.field, coeffs)
    }
}

impl std::ops::Mul for &PolyFq {
    type Output = PolyFq;
    fn mul(self, rhs: &PolyFq) -> PolyFq {
        assert!(self.field == rhs.field, "mixed fields");
        if self.is_zero() || rhs.is_zero() {
            return PolyFq::zero(&self.field);
        }
        let mut coeffs = vec![self.field.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        PolyFq::new(&self.field, coeffs)
    }
}

impl std::ops::Neg for &PolyFq {
    type Output = PolyFq;
    fn neg(self) -> PolyFq {
        PolyFq::new(&self.field, self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for PolyFq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c.is_one()) {
                (0, _) => write!(f, "{c}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{c}x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{c}x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Factorization {
    /// Multiplies the factorization back out.
    pub fn product(&self) -> PolyFq {
        let field = self.unit.field().clone();
        let mut acc = PolyFq::new(&field, vec![self.unit.clone()]);
        for (f, e) in &self.factors {
            acc = &acc * &f.pow(*e);
        }
        acc
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    /// Sorted list of (degree, how many distinct irreducible factors of that
    /// degree), ignoring multiplicities.
    pub fn degree_profile(&self) -> Vec<(usize, usize)> {
        let mut map = std::collections::BTreeMap::new();
        for (f, _) in &self.factors {
            *map.entry(f.degree()).or_insert(0usize) += 1;
        }
        map.into_iter().collect()
    }
}

/// Complete factorization into monic irreducibles, deterministic across runs.
pub fn factorize(f: &PolyFq) -> Result<Factorization> {
    factorize_with_seed(f, DEFAULT_FACTOR_SEED)
}

/// As [`factorize`], with an explicit seed for the equal-degree splitter.
pub fn factorize_with_seed(f: &PolyFq, seed: u64) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let field = f.field().clone();
    let (unit, monic) = f.make_monic();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut found: std::collections::BTreeMap<PolyFq, u32> = std::collections::BTreeMap::new();
    let mut stack: Vec<(PolyFq, u32)> = vec![(monic, 1)];
    while let Some((g, mult)) = stack.pop() {
        if g.degree() == 0 {
            continue;
        }
        let d = g.derivative();
        if d.is_zero() {
            // g = h(x^p) is the p-th power of the coefficientwise-root poly.
            stack.push((pth_root(&g), mult * field.p() as u32));
            continue;
        }
        let c = g.gcd(&d);
        if c.degree() > 0 {
            let (q, r) = g.divrem(&c);
            debug_assert!(r.is_zero());
            stack.push((c, mult));
            stack.push((q, mult));
            continue;
        }
        for h in factor_squarefree(&g, &mut rng) {
            *found.entry(h).or_insert(0) += mult;
        }
    }
    Ok(Factorization {
        unit,
        factors: found.into_iter().collect(),
    })
}

/// g = h(x^p) ⇒ g = w^p where w's coefficients are p-th roots of h's.
fn pth_root(g: &PolyFq) -> PolyFq {
    let field = g.field();
    let p = field.p() as usize;
    let root_exp = (field.p() as u128).pow(field.k() - 1);
    let mut coeffs = Vec::with_capacity(g.degree() / p + 1);
    for i in (0..=g.degree()).step_by(p) {
        coeffs.push(g.coeff(i).pow(root_exp));
    }
    PolyFq::new(field, coeffs)
}

/// Distinct-degree then equal-degree factorization of a monic squarefree g.
fn factor_squarefree(g: &PolyFq, rng: &mut ChaCha8Rng) -> Vec<PolyFq> {
    let field = g.field().clone();
    let q = field.q();
    let x = PolyFq::x(&field);
    let mut out = Vec::new();
    let mut r = g.clone();
    let mut h = x.rem(&r);
    let mut e = 0usize;
    while !r.is_zero() && r.degree() >= 1 {
        e += 1;
        if r.degree() < 2 * e {
            out.push(r);
            break;
        }
        h = h.pow_mod(q as u128, &r);
        let same_degree = (&h - &x).gcd(&r);
        if !same_degree.is_zero() && same_degree.degree() > 0 {
            out.extend(equal_degree_split(&same_degree, e, rng));
            let (quot, rem) = r.divrem(&same_degree);
            debug_assert!(rem.is_zero());
            r = quot;
            if r.degree() == 0 {
                break;
            }
            h = h.rem(&r);
        }
    }
    out
}

/// Cantor-Zassenhaus splitting of a product of distinct irreducibles that
/// all have degree e.
fn equal_degree_split(g: &PolyFq, e: usize, rng: &mut ChaCha8Rng) -> Vec<PolyFq> {
    if g.degree() == e {
        return vec![g.clone()];
    }
    let field = g.field().clone();
    let q = field.q();
    loop {
        let t = random_poly_below(&field, g.degree(), rng);
        if t.is_zero() || t.degree() == 0 {
            continue;
        }
        let s = if field.p() == 2 {
            // Trace over F_2 of the factor field F_{2^{k·e}}.
            let bits = field.k() as usize * e;
            let mut acc = t.rem(g);
            let mut term = t.rem(g);
            for _ in 1..bits {
                term = (&term * &term).rem(g);
                acc = &acc + &term;
            }
            acc
        } else {
            let exp = (BigUint::from(q).pow(e as u32) - BigUint::one()) / BigUint::from(2u32);
            let pw = t.pow_mod_big(&exp, g);
            &pw - &PolyFq::one(&field)
        };
        if s.is_zero() {
            continue;
        }
        let d = s.gcd(g);
        if !d.is_zero() && d.degree() > 0 && d.degree() < g.degree() {
            let (quot, rem) = g.divrem(&d);
            debug_assert!(rem.is_zero());
            let mut out = equal_degree_split(&d, e, rng);
            out.extend(equal_degree_split(&quot, e, rng));
            return out;
        }
    }
}

fn random_poly_below(field: &FqField, degree_bound: usize, rng: &mut ChaCha8Rng) -> PolyFq {
    let q = field.q();
    let coeffs = (0..degree_bound)
        .map(|_| field.elem_from_index(rng.random_range(0..q)))
        .collect();
    PolyFq::new(field, coeffs)
}

/// Rabin's irreducibility test. Requires monic input of degree ≥ 1.
pub fn is_irreducible(f: &PolyFq) -> Result<bool> {
    if f.is_zero() || !f.is_monic() {
        return Err(Error::NotMonic);
    }
    if f.degree() == 0 {
        return Err(Error::ConstantPolynomial);
    }
    let d = f.degree();
    let q = f.field().q() as u128;
    let x = PolyFq::x(f.field()).rem(f);
    // chain[i] = x^(q^(i+1)) mod f
    let mut chain = Vec::with_capacity(d);
    let mut h = x.clone();
    for _ in 0..d {
        h = h.pow_mod(q, f);
        chain.push(h.clone());
    }
    if chain[d - 1] != x {
        return Ok(false);
    }
    for (r, _) in arith::factor_u64(d as u64) {
        let diff = &chain[d / r as usize - 1] - &x;
        let g = diff.gcd(f);
        if g.is_zero() || g.degree() != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All monic irreducibles of degree d except x, in canonical order; the
/// degree-d slice of the index set Φ.
pub fn enumerate_irreducibles(field: &FqField, d: usize) -> Vec<PolyFq> {
    assert!(d >= 1, "degree must be >= 1");
    let q = field.q() as u128;
    let total = q.pow(d as u32);
    let mut out = Vec::new();
    for idx in 0..total {
        let mut indices = Vec::with_capacity(d + 1);
        let mut i = idx;
        for _ in 0..d {
            indices.push((i % q) as u64);
            i /= q;
        }
        indices.push(1);
        let f = PolyFq::from_indices(field, &indices);
        if f.is_x() {
            continue;
        }
        if is_irreducible(&f).unwrap() {
            out.push(f);
        }
    }
    out
}

/// N(q, d): monic irreducibles of degree d over F_q other than x, by the
/// Möbius count (1/d) Σ_{r|d} μ(r) q^{d/r}, minus one when d = 1.
pub fn count_irreducibles(q: u64, d: u32) -> BigUint {
    assert!(d >= 1, "degree must be >= 1");
    let mut sum = BigInt::zero();
    for r in arith::divisors(d as u64) {
        let mu = arith::moebius(r);
        if mu == 0 {
            continue;
        }
        let term = BigInt::from(q).pow(d / r as u32);
        sum += term * mu;
    }
    let (quot, rem) = num::Integer::div_rem(&sum, &BigInt::from(d));
    debug_assert!(rem.is_zero(), "Möbius sum must be divisible by d");
    let n = if d == 1 { quot - 1 } else { quot };
    debug_assert!(!n.is_negative());
    n.to_biguint().expect("count is nonnegative")
}

/// Multiplicative order of any root of the irreducible f ≠ x, computed in
/// F_q[x]/(f). Divides q^d − 1.
pub fn exponent(f: &PolyFq) -> Result<u64> {
    check_irreducible_not_x(f)?;
    let d = f.degree() as u32;
    let q = f.field().q();
    let qd = (0..d)
        .try_fold(1u64, |acc, _| acc.checked_mul(q))
        .ok_or_else(|| Error::SizeLimitExceeded(format!("q^{d} overflows u64")))?;
    let x = PolyFq::x(f.field());
    order_mod(&x, f, qd - 1)
}

/// Order of g modulo the irreducible f, given the group order qd1 = q^d − 1.
fn order_mod(g: &PolyFq, f: &PolyFq, qd1: u64) -> Result<u64> {
    let one = PolyFq::one(f.field()).rem(f);
    let mut t = qd1;
    for (r, _) in arith::factor_u64(qd1) {
        while t % r == 0 && g.pow_mod((t / r) as u128, f) == one {
            t /= r;
        }
    }
    Ok(t)
}

pub(crate) fn check_irreducible_not_x(f: &PolyFq) -> Result<()> {
    if f.is_zero() || !f.is_monic() {
        return Err(Error::NotMonic);
    }
    if f.is_x() {
        return Err(Error::PolynomialIsX);
    }
    if f.degree() == 0 || !is_irreducible(f)? {
        return Err(Error::NotIrreducible);
    }
    Ok(())
}

/// Minimal polynomial over F_q of η^M, where η is any root of the
/// irreducible f ≠ x. Its degree divides deg f, and f divides the composed
/// polynomial f_M(x^M).
pub fn minimal_poly_of_power(f: &PolyFq, m: u64) -> Result<PolyFq> {
    check_irreducible_not_x(f)?;
    assert!(m >= 1, "power must be >= 1");
    let field = f.field().clone();
    let d = f.degree();
    let beta = PolyFq::x(&field).pow_mod(m as u128, f);

    // Find the first linear dependence among 1, β, β², … in F_q[x]/(f).
    // rows: (reduced vector, its expression in powers of β)
    let mut rows: Vec<(Vec<FqElem>, Vec<FqElem>)> = Vec::new();
    let mut beta_pow = PolyFq::one(&field);
    for j in 0..=d {
        let mut v: Vec<FqElem> = (0..d).map(|i| beta_pow.coeff(i)).collect();
        let mut combo = vec![field.zero(); j + 1];
        combo[j] = field.one();
        for (row_v, row_c) in &rows {
            let pivot = row_v.iter().position(|c| !c.is_zero()).unwrap();
            let factor = v[pivot].clone();
            if factor.is_zero() {
                continue;
            }
            for (i, rc) in row_v.iter().enumerate() {
                v[i] = &v[i] - &(rc * &factor);
            }
            for (i, rc) in row_c.iter().enumerate() {
                combo[i] = &combo[i] - &(rc * &factor);
            }
        }
        if v.iter().all(FqElem::is_zero) {
            // Σ combo_i β^i = 0 with combo_j = 1: the minimal polynomial.
            let min_poly = PolyFq::new(&field, combo);
            assert_eq!(d % min_poly.degree(), 0, "degree of f_M must divide deg f");
            let composed = min_poly.compose_power(m);
            assert!(composed.divrem(f).1.is_zero(), "f must divide f_M(x^M)");
            return Ok(min_poly);
        }
        let pivot = v.iter().position(|c| !c.is_zero()).unwrap();
        let scale = v[pivot].inv().unwrap();
        let v: Vec<FqElem> = v.iter().map(|c| c * &scale).collect();
        let combo: Vec<FqElem> = combo.iter().map(|c| c * &scale).collect();
        rows.push((v, combo));
        beta_pow = (&beta_pow * &beta).rem(f);
    }
    unreachable!("β satisfies a relation of degree at most deg f")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fq(p: u64, k: u32) -> FqField {
        FqField::new(p, k, None).unwrap()
    }

    fn poly(field: &FqField, idx: &[u64]) -> PolyFq {
        PolyFq::from_indices(field, idx)
    }

    #[test]
    fn display_orders_terms_high_first() {
        let f2 = fq(2, 1);
        assert_eq!(poly(&f2, &[1, 1, 1]).to_string(), "x^2 + x + 1");
        assert_eq!(poly(&f2, &[0, 1]).to_string(), "x");
        assert_eq!(PolyFq::zero(&f2).to_string(), "0");
    }

    #[test]
    fn factorize_small_cases() {
        let f2 = fq(2, 1);
        // x² + 1 = (x+1)² in characteristic 2.
        let fac = factorize(&poly(&f2, &[1, 0, 1])).unwrap();
        assert_eq!(fac.factors, vec![(poly(&f2, &[1, 1]), 2)]);
        let fac = factorize(&poly(&f2, &[1, 1, 1])).unwrap();
        assert_eq!(fac.factors, vec![(poly(&f2, &[1, 1, 1]), 1)]);
        let f3 = fq(3, 1);
        // x² − 1 = (x+1)(x+2) over F_3, sorted by constant coefficient.
        let fac = factorize(&poly(&f3, &[2, 0, 1])).unwrap();
        assert_eq!(
            fac.factors,
            vec![(poly(&f3, &[1, 1]), 1), (poly(&f3, &[2, 1]), 1)]
        );
    }

    #[test]
    fn factorize_round_trip_exhaustive_small() {
        for (p, k, maxdeg) in [(2u64, 1u32, 5usize), (3, 1, 5), (2, 2, 5)] {
            let field = fq(p, k);
            let q = field.q();
            for deg in 0..=maxdeg {
                let total = (q as u128).pow(deg as u32 + 1);
                for idx in 0..total {
                    let mut indices = Vec::with_capacity(deg + 1);
                    let mut i = idx;
                    for _ in 0..=deg {
                        indices.push((i % q as u128) as u64);
                        i /= q as u128;
                    }
                    if indices[deg] == 0 {
                        continue;
                    }
                    let f = poly(&field, &indices);
                    let fac = factorize(&f).unwrap();
                    assert_eq!(fac.product(), f, "round trip for {f} over {field}");
                }
            }
        }
    }

    #[test]
    fn factorize_is_deterministic() {
        let f5 = fq(5, 1);
        // (x²+2)(x²+3)(x+1)² has two quadratic factors to split.
        let f = &(&poly(&f5, &[2, 0, 1]) * &poly(&f5, &[3, 0, 1])) * &poly(&f5, &[1, 1]).pow(2);
        let a = factorize(&f).unwrap();
        let b = factorize(&f).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.product(), f);
        assert_eq!(a.factors.len(), 3);
    }

    #[test]
    fn irreducibility_examples() {
        let f2 = fq(2, 1);
        assert!(is_irreducible(&PolyFq::x(&f2)).unwrap());
        assert!(is_irreducible(&poly(&f2, &[1, 1, 1])).unwrap());
        assert!(!is_irreducible(&poly(&f2, &[1, 0, 1])).unwrap());
        let f5 = fq(5, 1);
        // x⁴ − 2 = x⁴ + 3 over F_5.
        assert!(is_irreducible(&poly(&f5, &[3, 0, 0, 0, 1])).unwrap());
        let fac = factorize(&poly(&f5, &[3, 0, 0, 0, 1])).unwrap();
        assert_eq!(fac.factors.len(), 1);
        assert_eq!(fac.factors[0].0.degree(), 4);
        assert!(matches!(is_irreducible(&PolyFq::one(&f2)), Err(Error::ConstantPolynomial)));
        assert!(matches!(is_irreducible(&PolyFq::zero(&f2)), Err(Error::NotMonic)));
    }

    #[test]
    fn enumerate_matches_count() {
        let cases = [(2u64, 1u32), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (7, 1)];
        for (p, k) in cases {
            let field = fq(p, k);
            for d in 1..=4usize {
                if field.q().pow(d as u32) > 10_000 {
                    continue;
                }
                let list = enumerate_irreducibles(&field, d);
                let n = count_irreducibles(field.q(), d as u32);
                assert_eq!(
                    BigUint::from(list.len()),
                    n,
                    "q={} d={d}",
                    field.q()
                );
                for f in &list {
                    assert!(!f.is_x());
                    assert!(is_irreducible(f).unwrap());
                }
            }
        }
    }

    #[test]
    fn count_examples() {
        assert_eq!(count_irreducibles(2, 1), BigUint::from(1u32));
        assert_eq!(count_irreducibles(2, 2), BigUint::from(1u32));
        assert_eq!(count_irreducibles(2, 4), BigUint::from(3u32));
        assert_eq!(count_irreducibles(3, 2), BigUint::from(3u32));
        assert_eq!(count_irreducibles(5, 1), BigUint::from(4u32));
    }

    #[test]
    fn compose_power_examples() {
        let f3 = fq(3, 1);
        assert_eq!(poly(&f3, &[2, 1]).compose_power(2), poly(&f3, &[2, 0, 1]));
        // (x − 2)(x²) = x² − 2 = x² + 1 over F_3.
        assert_eq!(poly(&f3, &[1, 1]).compose_power(2), poly(&f3, &[1, 0, 1]));
        let f2 = fq(2, 1);
        let composed = poly(&f2, &[1, 1, 1]).compose_power(2);
        assert_eq!(composed, poly(&f2, &[1, 0, 1, 0, 1]));
        let fac = factorize(&composed).unwrap();
        assert_eq!(fac.factors, vec![(poly(&f2, &[1, 1, 1]), 2)]);
    }

    #[test]
    fn exponent_examples() {
        let f3 = fq(3, 1);
        assert_eq!(exponent(&poly(&f3, &[2, 1])).unwrap(), 1); // x − 1
        assert_eq!(exponent(&poly(&f3, &[1, 1])).unwrap(), 2); // x + 1
        let f2 = fq(2, 1);
        assert_eq!(exponent(&poly(&f2, &[1, 1, 1])).unwrap(), 3);
        assert!(matches!(exponent(&PolyFq::x(&f2)), Err(Error::PolynomialIsX)));
        assert!(matches!(
            exponent(&poly(&f2, &[1, 0, 1])),
            Err(Error::NotIrreducible)
        ));
    }

    #[test]
    fn exponent_divides_group_order_and_is_frobenius_invariant() {
        for (p, k) in [(2u64, 1u32), (3, 1), (2, 2), (5, 1)] {
            let field = fq(p, k);
            for d in 1..=3usize {
                for f in enumerate_irreducibles(&field, d) {
                    let t = exponent(&f).unwrap();
                    let qd = field.q().pow(d as u32);
                    assert_eq!((qd - 1) % t, 0, "f={f}");
                    // The Frobenius conjugate x^q has the same order.
                    let conj = PolyFq::x(&field).pow_mod(field.q() as u128, &f);
                    assert_eq!(order_mod(&conj, &f, qd - 1).unwrap(), t, "f={f}");
                }
            }
        }
    }

    #[test]
    fn minimal_poly_of_power_examples() {
        let f3 = fq(3, 1);
        // Scalar case: x − a maps to x − a^M.
        for a in 1..3u64 {
            for m in 2..5u64 {
                let f = poly(&f3, &[(3 - a) % 3, 1]);
                let apow = f3.scalar(a).pow(m as u128);
                let expect = PolyFq::new(&f3, vec![-&apow, f3.one()]);
                assert_eq!(minimal_poly_of_power(&f, m).unwrap(), expect);
            }
        }
        // Roots ±i of x²+1 over F_3 square to −1.
        let f = poly(&f3, &[1, 0, 1]);
        assert_eq!(minimal_poly_of_power(&f, 2).unwrap(), poly(&f3, &[1, 1]));
        // A cube root of unity cubes to 1.
        let f2 = fq(2, 1);
        let f = poly(&f2, &[1, 1, 1]);
        assert_eq!(minimal_poly_of_power(&f, 3).unwrap(), poly(&f2, &[1, 1]));
    }

    #[test]
    fn minimal_poly_divides_composition_everywhere() {
        for (p, k) in [(2u64, 1u32), (3, 1), (2, 2)] {
            let field = fq(p, k);
            for d in 1..=3usize {
                for f in enumerate_irreducibles(&field, d) {
                    for m in 2..=6u64 {
                        let fm = minimal_poly_of_power(&f, m).unwrap();
                        assert_eq!(d % fm.degree(), 0);
                        let composed = fm.compose_power(m);
                        assert!(composed.divrem(&f).1.is_zero(), "f={f} m={m}");
                    }
                }
            }
        }
    }

    #[test]
    fn composed_poly_squarefree_when_coprime() {
        for (p, k) in [(2u64, 1u32), (3, 1), (5, 1)] {
            let field = fq(p, k);
            for d in 1..=2usize {
                for f in enumerate_irreducibles(&field, d) {
                    for m in 2..=6u64 {
                        if num::integer::gcd(field.q(), m) != 1 {
                            continue;
                        }
                        let fac = factorize(&f.compose_power(m)).unwrap();
                        assert!(fac.is_squarefree(), "f={f} m={m} q={}", field.q());
                    }
                }
            }
        }
    }
}
