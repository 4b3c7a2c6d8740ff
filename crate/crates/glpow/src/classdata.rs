//! Combinatorial data of conjugacy classes and the M-th power decision.
//!
//! A conjugacy class of the invertible n-by-n matrices over F_q is a finite
//! map from irreducible monic polynomials f ≠ x to non-empty partitions,
//! with Σ |λ_f|·deg f = n. This module carries that data: the regular and
//! semisimple predicates, exact centralizer orders, the induced map on class
//! data under x ↦ x^M, the decision procedures for membership in the image
//! of the power map, conversion to and from the polynomial-sequence form,
//! and exhaustive enumeration for small parameters.

use std::collections::BTreeMap;

use num::bigint::BigUint;
use num::{Integer, One, Zero};

use crate::arith;
use crate::error::{Error, Result};
use crate::ff::{mult_order_mod, FqField};
use crate::mpower;
use crate::partitions::{self, Partition};
use crate::polyarith::{self, PolyFq};

/// |GL(n,q)| = q^{n(n−1)/2} ∏_{i=1}^{n} (q^i − 1).
pub fn gl_order(q: u64, n: u64) -> BigUint {
    let n32 = u32::try_from(n).expect("dimension fits u32");
    let mut out = BigUint::from(q).pow(n32 * (n32.saturating_sub(1)) / 2);
    for i in 1..=n32 {
        out *= BigUint::from(q).pow(i) - 1u32;
    }
    out
}

/// The centralizer order contributed by one pair (f, λ) with d = deg f:
/// q^{d·Σ(λ′_i)²} ∏_t (1/q^d)_{m_t(λ)}, expanded to the integer
/// q^{d·(Σ(λ′_i)² − Σ_t m_t(m_t+1)/2)} ∏_t ∏_{j=1}^{m_t} (q^{jd} − 1).
pub fn block_centralizer_order(q: u64, d: u64, lam: &Partition) -> BigUint {
    let sum_sq: u64 = lam.transpose().parts().iter().map(|&c| c * c).sum();
    let mut exp = sum_sq;
    let mut out = BigUint::one();
    for (_, mult) in lam.multiplicities() {
        exp -= mult * (mult + 1) / 2;
        for j in 1..=mult {
            out *= BigUint::from(q).pow(u32::try_from(j * d).expect("exponent fits u32")) - 1u32;
        }
    }
    out * BigUint::from(q).pow(u32::try_from(exp * d).expect("exponent fits u32"))
}

/// Whether (q, M) is the modular regime: M prime and q a power of M.
fn modular_regime(q: u64, m: u64) -> bool {
    match arith::prime_power_split(q) {
        Some((p, _)) => p == m && arith::is_prime_u64(m),
        None => false,
    }
}

/// The combinatorial data of a conjugacy class: each irreducible monic
/// f ≠ x that occurs, with its non-empty partition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CombData {
    field: FqField,
    entries: BTreeMap<PolyFq, Partition>,
    n: u64,
}

impl CombData {
    /// Builds class data from (polynomial, partition) pairs, validating
    /// that every polynomial is irreducible, monic, ≠ x, and distinct, and
    /// every partition non-empty.
    pub fn new(
        field: &FqField,
        entries: impl IntoIterator<Item = (PolyFq, Partition)>,
    ) -> Result<CombData> {
        let mut map = BTreeMap::new();
        let mut n = 0u64;
        for (f, lam) in entries {
            assert!(f.field() == field, "entry polynomial from a different field");
            polyarith::check_irreducible_not_x(&f)?;
            if lam.is_empty() {
                return Err(Error::Parse("class data partitions must be non-empty".into()));
            }
            n += lam.size() * f.degree() as u64;
            if map.insert(f, lam).is_some() {
                return Err(Error::Parse("duplicate polynomial in class data".into()));
            }
        }
        Ok(CombData { field: field.clone(), entries: map, n })
    }

    /// The data of the empty class (n = 0, the unique class of GL(0,q)).
    pub fn empty(field: &FqField) -> CombData {
        CombData { field: field.clone(), entries: BTreeMap::new(), n: 0 }
    }

    /// The coefficient field.
    pub fn field(&self) -> &FqField {
        &self.field
    }

    /// The matrix size n = Σ |λ_f|·deg f.
    pub fn n(&self) -> u64 {
        self.n
    }

    /// The (polynomial, partition) pairs in canonical polynomial order.
    pub fn entries(&self) -> impl Iterator<Item = (&PolyFq, &Partition)> {
        self.entries.iter()
    }

    /// How many distinct polynomials occur.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// Whether this is the empty class data.
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Regular: every partition has a single part.
    pub fn is_regular(&self) -> bool {
        self.entries.values().all(|lam| lam.len() == 1)
    }

    /// Semisimple: every part of every partition equals 1.
    pub fn is_semisimple(&self) -> bool {
        self.entries.values().all(|lam| lam.parts().iter().all(|&p| p == 1))
    }

    /// Regular semisimple: every partition is exactly (1).
    pub fn is_regular_semisimple(&self) -> bool {
        self.is_regular() && self.is_semisimple()
    }

    /// The order of the centralizer of any element in this class.
    pub fn centralizer_order(&self) -> BigUint {
        let q = self.field.q();
        let mut out = BigUint::one();
        for (f, lam) in &self.entries {
            out *= block_centralizer_order(q, f.degree() as u64, lam);
        }
        out
    }

    /// The number of elements in this class: |GL(n,q)| over the
    /// centralizer order.
    pub fn class_size(&self) -> BigUint {
        let (size, rem) = gl_order(self.field.q(), self.n).div_rem(&self.centralizer_order());
        assert!(rem.is_zero(), "the centralizer order divides the group order");
        size
    }

    /// The class data of α^M given the class data of α. Supported when
    /// gcd(q, M) = 1 (each (f, λ) maps to the minimal polynomial of an
    /// M-th power of a root of f, with parts repeated deg f/deg f_M times
    /// and collisions merged), and when M is a prime with q a power of M
    /// (each (f, λ) maps to the root-power polynomial of the same degree
    /// with the partition split part-wise into M nearly-equal parts).
    pub fn power_class(&self, m: u64) -> Result<CombData> {
        assert!(m >= 1, "the power must be positive");
        if m == 1 {
            return Ok(self.clone());
        }
        let q = self.field.q();
        let coprime = num::integer::gcd(q, m) == 1;
        if !coprime && !modular_regime(q, m) {
            return Err(Error::UnsupportedModulus {
                m,
                q,
                reason: "the power map on class data needs gcd(q, M) = 1, or M prime with q a power of M"
                    .into(),
            });
        }
        let mut merged: BTreeMap<PolyFq, Vec<u64>> = BTreeMap::new();
        for (f, lam) in &self.entries {
            let fm = polyarith::minimal_poly_of_power(f, m)?;
            let parts = merged.entry(fm.clone()).or_default();
            if coprime {
                let s = f.degree() / fm.degree();
                for &p in lam.parts() {
                    for _ in 0..s {
                        parts.push(p);
                    }
                }
            } else {
                assert_eq!(fm.degree(), f.degree(), "root powering is degree-preserving here");
                parts.extend_from_slice(partitions::theta(lam, m).parts());
            }
        }
        let out = CombData::new(
            &self.field,
            merged.into_iter().map(|(f, parts)| (f, Partition::new(&parts))),
        )?;
        debug_assert_eq!(out.n, self.n);
        Ok(out)
    }

    /// Whether X^M = α has a solution for α in this class. Dispatches over
    /// the covered regimes; every applicable criterion is evaluated and the
    /// verdicts are asserted to agree:
    /// - M prime, q a power of M: every partition lies in the image of Θ_M;
    /// - gcd(q, M) = 1, all parts distinct in every partition: every
    ///   polynomial is an M-power polynomial;
    /// - gcd(q, M) = 1, M = r^a: each polynomial in stratum b is either in
    ///   stratum 0 or has all multiplicities divisible by r^b;
    /// - gcd(q, M) = 1, M prime: the order-of-q test joins in;
    /// - semisimple data under prime-power M: r^b must divide |λ|.
    pub fn is_mth_power_class(&self, m: u64) -> Result<bool> {
        assert!(m >= 2, "the power must be at least 2");
        let q = self.field.q();
        if modular_regime(q, m) {
            return Ok(self.entries.values().all(|lam| partitions::in_theta_image(lam, m)));
        }
        if num::integer::gcd(q, m) != 1 {
            return Err(Error::UnsupportedCase(format!(
                "no decision procedure at q={q}, M={m}: need gcd(q, M) = 1, or M prime with q a power of M"
            )));
        }
        let mut verdicts: Vec<(&'static str, bool)> = Vec::new();
        let distinct_parts = self
            .entries
            .values()
            .all(|lam| lam.multiplicities().iter().all(|&(_, mult)| mult == 1));
        if distinct_parts {
            let mut v = true;
            for f in self.entries.keys() {
                if !mpower::is_m_power_poly(f, m)? {
                    v = false;
                    break;
                }
            }
            verdicts.push(("distinct-parts", v));
        }
        if let Some((r, _)) = arith::prime_power_split(m) {
            let mut v = true;
            for (f, lam) in &self.entries {
                let b = mpower::stratum(f, m)?;
                if b == 0 {
                    continue;
                }
                let rb = r.pow(b);
                if !lam.multiplicities().iter().all(|&(_, mult)| mult % rb == 0) {
                    v = false;
                    break;
                }
            }
            verdicts.push(("prime-power", v));
            if arith::is_prime_u64(m) {
                let t = mult_order_mod(m, q)?;
                let mut v = true;
                for (f, lam) in &self.entries {
                    let d = f.degree() as u64;
                    let pass = d % t != 0
                        || mpower::stratum(f, m)? == 0
                        || lam.multiplicities().iter().all(|&(_, mult)| mult % m == 0);
                    if !pass {
                        v = false;
                        break;
                    }
                }
                verdicts.push(("prime", v));
            }
            if self.is_semisimple() {
                let mut v = true;
                for (f, lam) in &self.entries {
                    let b = mpower::stratum(f, m)?;
                    if b != 0 && lam.size() % r.pow(b) != 0 {
                        v = false;
                        break;
                    }
                }
                verdicts.push(("semisimple", v));
            }
        }
        match verdicts.split_first() {
            None => Err(Error::UnsupportedCase(format!(
                "no decision procedure for M={m} with repeated parts: M is not a prime power"
            ))),
            Some((first, rest)) => {
                for other in rest {
                    assert_eq!(
                        first.1, other.1,
                        "criteria {} and {} disagree on {self:?}",
                        first.0, other.0
                    );
                }
                Ok(first.1)
            }
        }
    }

    /// JSON form: {"field": descriptor, "entries": [{"poly": [indices],
    /// "partition": [parts]}]}.
    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<serde_json::Value> = self
            .entries
            .iter()
            .map(|(f, lam)| {
                let poly: Vec<u64> =
                    f.coeffs().iter().map(|c| f.field().index_of(c)).collect();
                serde_json::json!({ "poly": poly, "partition": lam.parts() })
            })
            .collect();
        serde_json::json!({ "field": self.field.descriptor(), "entries": entries })
    }

    /// Parses the JSON form produced by [`CombData::to_json`].
    pub fn from_json(v: &serde_json::Value) -> Result<CombData> {
        let desc = v
            .get("field")
            .and_then(|f| f.as_str())
            .ok_or_else(|| Error::Parse("class data needs a \"field\" descriptor".into()))?;
        let field = FqField::from_descriptor(desc)?;
        let list = v
            .get("entries")
            .and_then(|e| e.as_array())
            .ok_or_else(|| Error::Parse("class data needs an \"entries\" array".into()))?;
        let mut entries = Vec::new();
        for e in list {
            let poly = read_u64_array(e.get("poly"), "poly")?;
            if poly.iter().any(|&c| c >= field.q()) {
                return Err(Error::Parse(format!(
                    "\"poly\" indices must be below the field order {}",
                    field.q()
                )));
            }
            let parts = read_u64_array(e.get("partition"), "partition")?;
            if parts.contains(&0) {
                return Err(Error::Parse("\"partition\" parts must be positive".into()));
            }
            entries.push((PolyFq::from_indices(&field, &poly), Partition::new(&parts)));
        }
        CombData::new(&field, entries)
    }
}

fn read_u64_array(v: Option<&serde_json::Value>, what: &str) -> Result<Vec<u64>> {
    let arr = v
        .and_then(|v| v.as_array())
        .ok_or_else(|| Error::Parse(format!("each entry needs a \"{what}\" array")))?;
    arr.iter()
        .map(|x| x.as_u64().ok_or_else(|| Error::Parse(format!("\"{what}\" holds integers"))))
        .collect()
}

impl std::fmt::Display for CombData {
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(out, "{{")?;
        for (i, (f, lam)) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(out, ", ")?;
            }
            write!(out, "{f} -> {lam}")?;
        }
        write!(out, "}}")
    }
}

/// A class in polynomial-sequence form: u_1, u_2, … with u_i(0) = 1 and
/// Σ i·deg u_i = n; part multiplicities of the partitions become exponents
/// inside the u_i.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MacdonaldData {
    field: FqField,
    polys: Vec<PolyFq>,
}

impl MacdonaldData {
    /// Builds the sequence, validating every u_i(0) = 1. Trailing constant
    /// entries are trimmed so equal data compare equal.
    pub fn new(field: &FqField, polys: Vec<PolyFq>) -> Result<MacdonaldData> {
        for u in &polys {
            assert!(u.field() == field, "sequence polynomial from a different field");
            if u.is_zero() || !u.coeff(0).is_one() {
                return Err(Error::InvalidMacdonald(
                    "every sequence polynomial needs constant term 1".into(),
                ));
            }
        }
        let mut polys = polys;
        while polys.last().is_some_and(|u| u.degree() == 0) {
            polys.pop();
        }
        Ok(MacdonaldData { field: field.clone(), polys })
    }

    /// The coefficient field.
    pub fn field(&self) -> &FqField {
        &self.field
    }

    /// The sequence u_1, u_2, … (implicitly 1 beyond the end).
    pub fn polys(&self) -> &[PolyFq] {
        &self.polys
    }

    /// n = Σ i·deg u_i.
    pub fn n(&self) -> u64 {
        self.polys
            .iter()
            .enumerate()
            .map(|(i, u)| (i as u64 + 1) * u.degree() as u64)
            .sum()
    }

    /// The type ν = 1^{deg u_1} 2^{deg u_2} ⋯ as a partition of n.
    pub fn type_partition(&self) -> Partition {
        let mut parts = Vec::new();
        for (i, u) in self.polys.iter().enumerate() {
            for _ in 0..u.degree() {
                parts.push(i as u64 + 1);
            }
        }
        if parts.is_empty() {
            Partition::empty()
        } else {
            Partition::new(&parts)
        }
    }
}

/// The sequence form of class data: u_i = δ_i ∏_f f^{m_i(λ_f)} with δ_i
/// scaling the constant term to 1.
pub fn to_macdonald(data: &CombData) -> MacdonaldData {
    let field = data.field();
    let max_part =
        data.entries().map(|(_, lam)| lam.parts().first().copied().unwrap_or(0)).max().unwrap_or(0);
    let mut polys = Vec::new();
    for i in 1..=max_part {
        let mut u = PolyFq::one(field);
        for (f, lam) in data.entries() {
            let mult = lam.multiplicity(i);
            if mult > 0 {
                u = &u * &f.pow(u32::try_from(mult).expect("multiplicity fits u32"));
            }
        }
        let delta = u.coeff(0).inv().expect("no factor is x, so u_i(0) is a unit");
        polys.push(u.mul_scalar(&delta));
    }
    MacdonaldData::new(field, polys).expect("constant terms were normalized to 1")
}

/// Recovers class data from the sequence form by factorizing each u_i; the
/// exponent of f in u_i becomes the multiplicity of part i in λ_f.
pub fn from_macdonald(data: &MacdonaldData) -> Result<CombData> {
    let mut merged: BTreeMap<PolyFq, Vec<u64>> = BTreeMap::new();
    for (idx, u) in data.polys().iter().enumerate() {
        let part = idx as u64 + 1;
        if u.degree() == 0 {
            continue;
        }
        let fac = polyarith::factorize(u)?;
        for (g, e) in &fac.factors {
            debug_assert!(!g.is_x(), "u_i(0) = 1 rules out the factor x");
            let parts = merged.entry(g.clone()).or_default();
            for _ in 0..*e {
                parts.push(part);
            }
        }
    }
    CombData::new(
        data.field(),
        merged.into_iter().map(|(f, parts)| (f, Partition::new(&parts))),
    )
}

/// Every class data of weight n over the given field, in a deterministic
/// order; the count is the number of conjugacy classes of GL(n,q).
pub fn enumerate_class_data(field: &FqField, n: u64) -> Result<Vec<CombData>> {
    let q = field.q();
    let mut classes_bound = 1u128;
    for _ in 0..n {
        classes_bound = classes_bound.saturating_mul(q as u128);
    }
    if classes_bound > 20_000_000 {
        return Err(Error::SizeLimitExceeded(format!(
            "roughly q^n = {classes_bound} classes at q={q}, n={n}"
        )));
    }
    let mut polys = Vec::new();
    for d in 1..=n {
        polys.extend(polyarith::enumerate_irreducibles(field, d as usize));
    }
    let mut out = Vec::new();
    let mut cur: Vec<(PolyFq, Partition)> = Vec::new();
    assign(field, &polys, 0, n, &mut cur, &mut out);
    Ok(out)
}

fn assign(
    field: &FqField,
    polys: &[PolyFq],
    idx: usize,
    remaining: u64,
    cur: &mut Vec<(PolyFq, Partition)>,
    out: &mut Vec<CombData>,
) {
    if remaining == 0 {
        out.push(
            CombData::new(field, cur.iter().cloned())
                .expect("enumerated entries are valid by construction"),
        );
        return;
    }
    if idx == polys.len() {
        return;
    }
    let d = polys[idx].degree() as u64;
    assign(field, polys, idx + 1, remaining, cur, out);
    for j in 1..=remaining / d {
        for lam in partitions::enumerate_partitions(j) {
            cur.push((polys[idx].clone(), lam));
            assign(field, polys, idx + 1, remaining - j * d, cur, out);
            cur.pop();
        }
    }
}
