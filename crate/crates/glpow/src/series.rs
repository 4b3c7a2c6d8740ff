//! Truncated formal power series in one variable over exact rationals.
//!
//! A series holds coefficients c_0 … c_N of the truncation order N it was
//! built with; every operation is exact, and combining series of different
//! orders truncates to the smaller one, so a coefficient is never invented.
//! Beyond ring arithmetic the module provides the two product combinators
//! the generating-function catalog is assembled from: a product over degrees
//! with per-degree integer exponents, and a product over scales u ↦ u^t.

use num::bigint::BigInt;
use num::{BigRational, One, Signed, Zero};

use crate::error::{Error, Result};

/// A power series truncated at a fixed order, with exact rational
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<BigRational>,
}

impl Series {
    /// Builds a series from its coefficients c_0 … c_N; the order is N.
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        assert!(!coeffs.is_empty(), "a series carries at least its constant term");
        Series { coeffs }
    }

    /// The zero series at the given order.
    pub fn zero(order: usize) -> Self {
        Series { coeffs: vec![BigRational::zero(); order + 1] }
    }

    /// The constant series 1 at the given order.
    pub fn one(order: usize) -> Self {
        let mut s = Series::zero(order);
        s.coeffs[0] = BigRational::one();
        s
    }

    /// c·u^deg at the given order. A monomial beyond the order is zero.
    pub fn monomial(c: BigRational, deg: usize, order: usize) -> Self {
        let mut s = Series::zero(order);
        if deg <= order {
            s.coeffs[deg] = c;
        }
        s
    }

    /// Σ c·u^d for integer terms (d, c), truncated at the given order.
    pub fn polynomial(terms: &[(usize, i64)], order: usize) -> Self {
        let mut s = Series::zero(order);
        for &(d, c) in terms {
            if d <= order {
                s.coeffs[d] += BigRational::from_integer(BigInt::from(c));
            }
        }
        s
    }

    /// A series with the given integer coefficients, zero-padded to order.
    pub fn from_ints(values: &[i64], order: usize) -> Self {
        assert!(values.len() <= order + 1, "more coefficients than the order admits");
        let mut s = Series::zero(order);
        for (i, &v) in values.iter().enumerate() {
            s.coeffs[i] = BigRational::from_integer(BigInt::from(v));
        }
        s
    }

    /// The truncation order N.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// All coefficients c_0 … c_N.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// The coefficient of u^i. Panics beyond the order: that coefficient
    /// was never computed.
    pub fn coeff(&self, i: usize) -> &BigRational {
        &self.coeffs[i]
    }

    /// The same series cut down to the given order; orders beyond the
    /// current one are clamped rather than padded with fabricated zeros.
    pub fn truncate(&self, order: usize) -> Series {
        let keep = order.min(self.order());
        Series { coeffs: self.coeffs[..=keep].to_vec() }
    }

    /// The multiplicative inverse; the constant term must be nonzero.
    pub fn inverse(&self) -> Result<Series> {
        if self.coeffs[0].is_zero() {
            return Err(Error::NonInvertibleConstantTerm);
        }
        let n = self.order();
        let lead = self.coeffs[0].recip();
        let mut inv = vec![BigRational::zero(); n + 1];
        inv[0] = lead.clone();
        for k in 1..=n {
            let mut acc = BigRational::zero();
            for i in 1..=k {
                acc += &self.coeffs[i] * &inv[k - i];
            }
            inv[k] = -acc * &lead;
        }
        Ok(Series { coeffs: inv })
    }

    /// self^e for a machine-sized exponent; negative e needs a nonzero
    /// constant term.
    pub fn int_pow(&self, e: i64) -> Result<Series> {
        self.big_pow(&BigInt::from(e))
    }

    /// self^e for an arbitrary-precision exponent, by squaring.
    pub fn big_pow(&self, e: &BigInt) -> Result<Series> {
        let base = if e.is_negative() { self.inverse()? } else { self.clone() };
        let mut acc = Series::one(self.order());
        let mut sq = base;
        let mut bits = e.abs().to_biguint().expect("absolute value is nonnegative");
        while !bits.is_zero() {
            if bits.bit(0) {
                acc = &acc * &sq;
            }
            bits >>= 1;
            if !bits.is_zero() {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// The substitution u ↦ u^t, truncated at this series' order.
    pub fn scale(&self, t: usize) -> Series {
        assert!(t >= 1, "the scale must be positive");
        self.scale_to(t, self.order())
    }

    /// The substitution u ↦ u^t, truncated at the given order. The input
    /// must be known at least to order/t so no coefficient is fabricated.
    pub fn scale_to(&self, t: usize, order: usize) -> Series {
        assert!(t >= 1, "the scale must be positive");
        assert!(self.order() >= order / t, "input order too small for the requested truncation");
        let mut out = Series::zero(order);
        let mut i = 0usize;
        while i * t <= order {
            out.coeffs[i * t] = self.coeffs[i].clone();
            i += 1;
        }
        out
    }
}

/// ∏_{d=1}^{N} factor(d)^{exponent(d)} at truncation order N. Each
/// factor must have constant term 1 (so any integer exponent applies);
/// degrees beyond N contribute nothing and are never evaluated.
pub fn product_over_degrees(
    order: usize,
    factor: impl Fn(usize) -> Series,
    exponent: impl Fn(usize) -> BigInt,
) -> Series {
    let mut acc = Series::one(order);
    for d in 1..=order {
        let e = exponent(d);
        if e.is_zero() {
            continue;
        }
        let f = factor(d).truncate(order);
        assert!(f.coeff(0).is_one(), "degree factors must have constant term 1");
        acc = &acc * &f.big_pow(&e).expect("a constant term of 1 is invertible");
    }
    acc
}

/// ∏_{t≥1} f(u^t), truncated at min(order, f.order()). Requires constant
/// term 1; scales beyond the order contribute nothing.
pub fn product_over_scales(f: &Series, order: usize) -> Result<Series> {
    if !f.coeff(0).is_one() {
        return Err(Error::ConstantTermNotOne);
    }
    let n = order.min(f.order());
    let f = f.truncate(n);
    let mut acc = Series::one(n);
    for t in 1..=n {
        acc = &acc * &f.scale(t);
    }
    Ok(acc)
}

macro_rules! series_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl std::ops::$trait<&Series> for &Series {
            type Output = Series;
            fn $method(self, rhs: &Series) -> Series {
                let apply: fn(&Series, &Series) -> Series = $body;
                apply(self, rhs)
            }
        }
        impl std::ops::$trait<Series> for Series {
            type Output = Series;
            fn $method(self, rhs: Series) -> Series {
                std::ops::$trait::$method(&self, &rhs)
            }
        }
    };
}

series_binop!(Add, add, |a, b| {
    let n = a.order().min(b.order());
    let coeffs = (0..=n).map(|i| &a.coeffs[i] + &b.coeffs[i]).collect();
    Series { coeffs }
});

series_binop!(Sub, sub, |a, b| {
    let n = a.order().min(b.order());
    let coeffs = (0..=n).map(|i| &a.coeffs[i] - &b.coeffs[i]).collect();
    Series { coeffs }
});

series_binop!(Mul, mul, |a, b| {
    let n = a.order().min(b.order());
    let mut coeffs = vec![BigRational::zero(); n + 1];
    for i in 0..=n {
        if a.coeffs[i].is_zero() {
            continue;
        }
        for j in 0..=(n - i) {
            if !b.coeffs[j].is_zero() {
                coeffs[i + j] += &a.coeffs[i] * &b.coeffs[j];
            }
        }
    }
    Series { coeffs }
});

impl std::ops::Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        Series { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl std::ops::Neg for Series {
    type Output = Series;
    fn neg(self) -> Series {
        -&self
    }
}

impl std::fmt::Display for Series {
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut wrote = false;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if wrote {
                out.write_str(if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                out.write_str("-")?;
            }
            let unit = mag.is_one();
            if i == 0 || !unit {
                if mag.is_integer() {
                    write!(out, "{}", mag.numer())?;
                } else {
                    write!(out, "({mag})")?;
                }
            }
            match i {
                0 => {}
                1 => write!(out, "u")?,
                _ => write!(out, "u^{i}")?,
            }
            wrote = true;
        }
        if !wrote {
            write!(out, "0")?;
        }
        write!(out, " + O(u^{})", self.order() + 1)
    }
}

/// JSON form {"order": N, "coeffs": ["num/den", …]} used by the command
/// line and the foreign interface.
pub fn series_to_json(s: &Series) -> serde_json::Value {
    let coeffs: Vec<String> =
        s.coeffs().iter().map(|c| format!("{}/{}", c.numer(), c.denom())).collect();
    serde_json::json!({ "order": s.order(), "coeffs": coeffs })
}

/// CSV form with one `index,numerator,denominator` row per coefficient.
pub fn series_to_csv(s: &Series) -> String {
    let mut out = String::from("index,numerator,denominator\n");
    for (i, c) in s.coeffs().iter().enumerate() {
        out.push_str(&format!("{},{},{}\n", i, c.numer(), c.denom()));
    }
    out
}
