//! Brute-force ground truth for tiny GL(n, q).
//!
//! Everything upstream is cross-checked here against literal matrices:
//! conjugacy data is recovered from kernel dimensions of f(A)^j, the power
//! map is evaluated by actually powering matrices, and image censuses count
//! which classes and elements are hit by x ↦ x^M. Censuses iterate one
//! block-diagonal representative per class by default; a full-element mode
//! exists solely to validate that shortcut on groups of at most 10^5
//! elements.

use std::collections::BTreeSet;

use num::bigint::{BigInt, BigUint};
use num::BigRational;
use rand::RngExt;
use rand_chacha::ChaCha8Rng;

use crate::classdata::{self, CombData};
use crate::error::{Error, Result};
use crate::ff::{FqElem, FqField};
use crate::genfun::{self, GfName};
use crate::partitions::{self, Partition};
use crate::polyarith::{self, PolyFq};

/// Element-count ceiling for the default census mode.
pub const DEFAULT_BUDGET: u64 = 200_000_000;

/// Element-count ceiling for the full-element census mode.
pub const FULL_ELEMENT_CAP: u64 = 100_000;

/// A dense n-by-n matrix over F_q, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatFq {
    field: FqField,
    n: usize,
    entries: Vec<FqElem>,
}

impl MatFq {
    /// The zero matrix.
    pub fn zero(field: &FqField, n: usize) -> MatFq {
        assert!(n >= 1, "matrices here have positive dimension");
        MatFq { field: field.clone(), n, entries: vec![field.zero(); n * n] }
    }

    /// The identity matrix.
    pub fn identity(field: &FqField, n: usize) -> MatFq {
        let mut m = MatFq::zero(field, n);
        for i in 0..n {
            m.entries[i * n + i] = field.one();
        }
        m
    }

    /// Builds a matrix from row-major entries.
    pub fn from_entries(field: &FqField, n: usize, entries: Vec<FqElem>) -> MatFq {
        assert_eq!(entries.len(), n * n, "entry count must be n²");
        MatFq { field: field.clone(), n, entries }
    }

    /// The coefficient field.
    pub fn field(&self) -> &FqField {
        &self.field
    }

    /// The dimension n.
    pub fn n(&self) -> usize {
        self.n
    }

    /// The entry at row i, column j.
    pub fn get(&self, i: usize, j: usize) -> &FqElem {
        &self.entries[i * self.n + j]
    }

    /// Sets the entry at row i, column j.
    pub fn set(&mut self, i: usize, j: usize, v: FqElem) {
        self.entries[i * self.n + j] = v;
    }

    /// The companion matrix of a monic polynomial of positive degree:
    /// ones on the subdiagonal, negated coefficients in the last column.
    pub fn companion(f: &PolyFq) -> MatFq {
        assert!(f.is_monic() && f.degree() >= 1, "companion matrices need a monic nonconstant");
        let k = f.degree();
        let field = f.field();
        let mut m = MatFq::zero(field, k);
        for j in 0..k - 1 {
            m.set(j + 1, j, field.one());
        }
        for i in 0..k {
            m.set(i, k - 1, -&f.coeff(i));
        }
        m
    }

    /// Copies a square block into the diagonal starting at offset.
    fn paste(&mut self, block: &MatFq, offset: usize) {
        for i in 0..block.n {
            for j in 0..block.n {
                self.set(offset + i, offset + j, block.get(i, j).clone());
            }
        }
    }

    /// Adds c to every diagonal entry.
    fn add_scalar_diag(&mut self, c: &FqElem) {
        for i in 0..self.n {
            let v = &self.entries[i * self.n + i] + c;
            self.entries[i * self.n + i] = v;
        }
    }

    /// f(A), evaluated by Horner's rule.
    pub fn eval_poly(&self, f: &PolyFq) -> MatFq {
        assert!(!f.is_zero(), "evaluating the zero polynomial is not meaningful here");
        let mut b = MatFq::zero(&self.field, self.n);
        for i in (0..=f.degree()).rev() {
            b = &b * self;
            b.add_scalar_diag(&f.coeff(i));
        }
        b
    }

    /// A^e by repeated squaring; A^0 is the identity.
    pub fn pow(&self, e: u64) -> MatFq {
        let mut acc = MatFq::identity(&self.field, self.n);
        let mut sq = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        acc
    }

    /// The rank, by Gaussian elimination.
    pub fn rank(&self) -> usize {
        let n = self.n;
        let mut rows: Vec<FqElem> = self.entries.clone();
        let mut rank = 0usize;
        for col in 0..n {
            let Some(pivot) = (rank..n).find(|&r| !rows[r * n + col].is_zero()) else {
                continue;
            };
            for c in 0..n {
                rows.swap(rank * n + c, pivot * n + c);
            }
            let inv = rows[rank * n + col].inv().expect("pivot entries are nonzero");
            for c in col..n {
                rows[rank * n + c] = &rows[rank * n + c] * &inv;
            }
            for r in rank + 1..n {
                if rows[r * n + col].is_zero() {
                    continue;
                }
                let factor = rows[r * n + col].clone();
                for c in col..n {
                    let v = &rows[r * n + c] - &(&factor * &rows[rank * n + c]);
                    rows[r * n + c] = v;
                }
            }
            rank += 1;
        }
        rank
    }

    /// dim ker A = n − rank A.
    pub fn kernel_dim(&self) -> usize {
        self.n - self.rank()
    }

    /// Whether the matrix lies in GL(n, q).
    pub fn is_invertible(&self) -> bool {
        self.rank() == self.n
    }

    /// The inverse, by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<MatFq> {
        let n = self.n;
        let mut left = self.entries.clone();
        let mut right = MatFq::identity(&self.field, n).entries;
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !left[r * n + col].is_zero()) else {
                return Err(Error::SingularMatrix);
            };
            for c in 0..n {
                left.swap(col * n + c, pivot * n + c);
                right.swap(col * n + c, pivot * n + c);
            }
            let inv = left[col * n + col].inv().expect("pivot entries are nonzero");
            for c in 0..n {
                left[col * n + c] = &left[col * n + c] * &inv;
                right[col * n + c] = &right[col * n + c] * &inv;
            }
            for r in 0..n {
                if r == col || left[r * n + col].is_zero() {
                    continue;
                }
                let factor = left[r * n + col].clone();
                for c in 0..n {
                    let lv = &left[r * n + c] - &(&factor * &left[col * n + c]);
                    left[r * n + c] = lv;
                    let rv = &right[r * n + c] - &(&factor * &right[col * n + c]);
                    right[r * n + c] = rv;
                }
            }
        }
        Ok(MatFq { field: self.field.clone(), n, entries: right })
    }

    /// A canonical integer key: the base-q expansion of the entry indices.
    pub fn key(&self) -> u128 {
        let q = self.field.q() as u128;
        let mut acc = 0u128;
        for e in self.entries.iter().rev() {
            acc = acc * q + self.field.index_of(e) as u128;
        }
        acc
    }

    /// Rebuilds a matrix from its canonical key.
    pub fn from_key(field: &FqField, n: usize, mut key: u128) -> MatFq {
        let q = field.q() as u128;
        let mut entries = Vec::with_capacity(n * n);
        for _ in 0..n * n {
            entries.push(field.elem_from_index((key % q) as u64));
            key /= q;
        }
        assert!(key == 0, "key out of range for this dimension");
        MatFq { field: field.clone(), n, entries }
    }

    /// A uniformly random invertible matrix, by rejection sampling.
    pub fn random_invertible(field: &FqField, n: usize, rng: &mut ChaCha8Rng) -> MatFq {
        loop {
            let entries =
                (0..n * n).map(|_| field.elem_from_index(rng.random_range(0..field.q()))).collect();
            let m = MatFq { field: field.clone(), n, entries };
            if m.is_invertible() {
                return m;
            }
        }
    }
}

impl std::ops::Mul<&MatFq> for &MatFq {
    type Output = MatFq;
    fn mul(self, rhs: &MatFq) -> MatFq {
        assert!(self.field == rhs.field && self.n == rhs.n, "dimension or field mismatch");
        let n = self.n;
        let mut out = MatFq::zero(&self.field, n);
        for i in 0..n {
            for k in 0..n {
                let a = &self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &rhs.entries[k * n + j];
                    if !b.is_zero() {
                        let v = &out.entries[i * n + j] + &(a * b);
                        out.entries[i * n + j] = v;
                    }
                }
            }
        }
        out
    }
}

/// The block-diagonal representative of a class: one companion block of
/// f^p per part p of λ_f, so the module is ⊕ F_q[x]/(f^p).
pub fn representative(data: &CombData) -> MatFq {
    let n = data.n() as usize;
    assert!(n >= 1, "the empty class has no matrix representative");
    let mut m = MatFq::zero(data.field(), n);
    let mut offset = 0usize;
    for (f, lam) in data.entries() {
        for &p in lam.parts() {
            let block = MatFq::companion(&f.pow(u32::try_from(p).expect("part fits u32")));
            let size = block.n;
            m.paste(&block, offset);
            offset += size;
        }
    }
    debug_assert_eq!(offset, n);
    m
}

/// The conjugacy data of an invertible matrix, recovered from kernel
/// dimensions: λ′_{f,j} = (dim ker f(A)^j − dim ker f(A)^{j−1})/deg f.
pub fn class_of(a: &MatFq) -> Result<CombData> {
    if !a.is_invertible() {
        return Err(Error::SingularMatrix);
    }
    let field = a.field().clone();
    let n = a.n();
    let mut entries: Vec<(PolyFq, Partition)> = Vec::new();
    let mut accounted = 0usize;
    'degrees: for d in 1..=n {
        if accounted == n {
            break;
        }
        for f in polyarith::enumerate_irreducibles(&field, d) {
            let fa = a.eval_poly(&f);
            let mut conj: Vec<u64> = Vec::new();
            let mut prev = 0usize;
            let mut pw = fa.clone();
            loop {
                let ker = pw.kernel_dim();
                if ker == prev {
                    break;
                }
                let inc = ker - prev;
                assert_eq!(inc % d, 0, "kernel growth comes in deg f steps");
                assert!(conj.last().is_none_or(|&last| last >= (inc / d) as u64));
                conj.push((inc / d) as u64);
                prev = ker;
                if ker == n {
                    break;
                }
                pw = &pw * &fa;
            }
            if conj.is_empty() {
                continue;
            }
            accounted += conj.iter().sum::<u64>() as usize * d;
            entries.push((f, Partition::new(&conj).transpose()));
            if accounted == n {
                break 'degrees;
            }
        }
    }
    assert_eq!(accounted, n, "every primary component is reached by some irreducible");
    CombData::new(&field, entries)
}

/// Class counts of a census, split by regularity.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClassCounts {
    pub total: u64,
    pub regular: u64,
    pub regular_semisimple: u64,
    pub semisimple: u64,
}

/// Element counts of a census, split the same way.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ElementCounts {
    pub total: BigUint,
    pub regular: BigUint,
    pub regular_semisimple: BigUint,
    pub semisimple: BigUint,
}

/// Census configuration: the element-count budget and whether to run the
/// slow full-element mode.
#[derive(Clone, Debug)]
pub struct CensusOptions {
    pub budget: u64,
    pub full_elements: bool,
}

impl Default for CensusOptions {
    fn default() -> CensusOptions {
        CensusOptions { budget: DEFAULT_BUDGET, full_elements: false }
    }
}

/// The outcome of an image census: which classes of GL(n, q) are M-th
/// powers, and the resulting class and element counts.
#[derive(Clone, Debug)]
pub struct ImageCensus {
    pub n: u64,
    pub q: u64,
    pub m: u64,
    verdicts: Vec<(CombData, bool)>,
    pub classes: ClassCounts,
    pub elements: ElementCounts,
}

impl ImageCensus {
    /// Per-class verdicts in enumeration order.
    pub fn verdicts(&self) -> &[(CombData, bool)] {
        &self.verdicts
    }

    /// The verdict for one class, if it belongs to this (n, q).
    pub fn verdict(&self, data: &CombData) -> Option<bool> {
        self.verdicts.iter().find(|(d, _)| d == data).map(|&(_, v)| v)
    }
}

fn class_key(data: &CombData) -> String {
    data.to_json().to_string()
}

/// Counts which classes and elements of GL(n, q) are M-th powers. The
/// default mode powers one representative per class; with `full_elements`
/// the whole group is enumerated instead and the per-element counts are
/// cross-checked against the class-size sums.
pub fn image_census(
    field: &FqField,
    n: u64,
    m: u64,
    options: &CensusOptions,
) -> Result<ImageCensus> {
    assert!(m >= 1, "the power must be positive");
    assert!(n >= 1, "the census needs a positive dimension");
    let q = field.q();
    let gl = classdata::gl_order(q, n);
    if gl > BigUint::from(options.budget) {
        return Err(Error::BudgetExceeded(format!(
            "|GL({n},{q})| = {gl} exceeds the census budget {}",
            options.budget
        )));
    }
    let classes = classdata::enumerate_class_data(field, n)?;
    let in_image: BTreeSet<String> = if options.full_elements {
        full_element_image(field, n, m, &classes)?
    } else {
        let mut set = BTreeSet::new();
        for data in &classes {
            let powered = representative(data).pow(m);
            set.insert(class_key(&class_of(&powered)?));
        }
        set
    };
    let mut census = ImageCensus {
        n,
        q,
        m,
        verdicts: Vec::with_capacity(classes.len()),
        classes: ClassCounts::default(),
        elements: ElementCounts::default(),
    };
    for data in classes {
        let hit = in_image.contains(&class_key(&data));
        if hit {
            let size = data.class_size();
            census.classes.total += 1;
            census.elements.total += &size;
            if data.is_regular() {
                census.classes.regular += 1;
                census.elements.regular += &size;
            }
            if data.is_regular_semisimple() {
                census.classes.regular_semisimple += 1;
                census.elements.regular_semisimple += &size;
            }
            if data.is_semisimple() {
                census.classes.semisimple += 1;
                census.elements.semisimple += &size;
            }
        }
        census.verdicts.push((data, hit));
    }
    Ok(census)
}

/// The image classes computed the slow way: power every group element and
/// classify every distinct result. Also recounts elements directly and
/// asserts the counts match the class-size sums.
fn full_element_image(
    field: &FqField,
    n: u64,
    m: u64,
    classes: &[CombData],
) -> Result<BTreeSet<String>> {
    let q = field.q();
    let gl = classdata::gl_order(q, n);
    if gl > BigUint::from(FULL_ELEMENT_CAP) {
        return Err(Error::BudgetExceeded(format!(
            "|GL({n},{q})| = {gl} exceeds the full-element cap {FULL_ELEMENT_CAP}"
        )));
    }
    let n = n as usize;
    let total = (q as u128).pow((n * n) as u32);
    let mut image_keys: BTreeSet<u128> = BTreeSet::new();
    let mut group_size = 0u64;
    for key in 0..total {
        let a = MatFq::from_key(field, n, key);
        if !a.is_invertible() {
            continue;
        }
        group_size += 1;
        image_keys.insert(a.pow(m).key());
    }
    assert_eq!(BigUint::from(group_size), gl, "group enumeration matches the order formula");
    let mut in_image = BTreeSet::new();
    let mut direct = ElementCounts::default();
    for &key in &image_keys {
        let data = class_of(&MatFq::from_key(field, n, key))?;
        direct.total += 1u32;
        if data.is_regular() {
            direct.regular += 1u32;
        }
        if data.is_regular_semisimple() {
            direct.regular_semisimple += 1u32;
        }
        if data.is_semisimple() {
            direct.semisimple += 1u32;
        }
        in_image.insert(class_key(&data));
    }
    // Cross-check: summing class sizes over in-image classes reproduces
    // the direct element counts, which validates representative powering.
    let mut derived = ElementCounts::default();
    for data in classes {
        if !in_image.contains(&class_key(data)) {
            continue;
        }
        let size = data.class_size();
        derived.total += &size;
        if data.is_regular() {
            derived.regular += &size;
        }
        if data.is_regular_semisimple() {
            derived.regular_semisimple += &size;
        }
        if data.is_semisimple() {
            derived.semisimple += &size;
        }
    }
    assert_eq!(direct, derived, "class-size sums match direct element counts");
    Ok(in_image)
}

/// One row of a verification report: the series coefficient and the census
/// value at one n.
#[derive(Clone, Debug)]
pub struct VerifyRow {
    pub n: u64,
    pub series: BigRational,
    pub census: Option<BigRational>,
    pub skipped: bool,
}

impl VerifyRow {
    /// Whether this row was checked and found equal.
    pub fn equal(&self) -> bool {
        self.census.as_ref() == Some(&self.series)
    }
}

/// The outcome of checking one catalogue entry against censuses.
#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub name: GfName,
    pub q: u64,
    pub m: Option<u64>,
    pub n_max: u64,
    pub full_elements: bool,
    pub rows: Vec<VerifyRow>,
}

impl VerifyReport {
    /// Whether every checked row agreed (skipped rows do not count
    /// against, but at least one row must have been checked).
    pub fn ok(&self) -> bool {
        self.rows.iter().any(|r| !r.skipped) && self.rows.iter().all(|r| r.skipped || r.equal())
    }

    /// The JSON form used by the command-line interface.
    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|r| {
                serde_json::json!({
                    "n": r.n,
                    "series": rational_string(&r.series),
                    "census": r.census.as_ref().map(rational_string),
                    "skipped": r.skipped,
                    "equal": r.equal(),
                })
            })
            .collect();
        serde_json::json!({
            "name": self.name.as_str(),
            "q": self.q,
            "m": self.m,
            "n_max": self.n_max,
            "full_elements": self.full_elements,
            "rows": rows,
            "ok": self.ok(),
        })
    }
}

fn rational_string(v: &BigRational) -> String {
    format!("{}/{}", v.numer(), v.denom())
}

/// The census quantity a catalogue entry predicts, as an exact rational:
/// a class count, or an element count divided by the group order.
fn census_quantity(name: GfName, census: &ImageCensus) -> BigRational {
    let gl = classdata::gl_order(census.q, census.n);
    let classes = |c: u64| BigRational::from_integer(c.into());
    let elems =
        |e: &BigUint| BigRational::new(BigInt::from(e.clone()), BigInt::from(gl.clone()));
    match name {
        GfName::ClassesAll
        | GfName::MpowClassesAll
        | GfName::MpowClassesAllPrime
        | GfName::ModularClasses
        | GfName::ModularClassesM2 => classes(census.classes.total),
        GfName::ClassesRg | GfName::MpowClassesRg => classes(census.classes.regular),
        GfName::ClassesSs | GfName::MpowClassesSs | GfName::MpowClassesSsPrime => {
            classes(census.classes.semisimple)
        }
        GfName::ClassesRs | GfName::MpowClassesRs => classes(census.classes.regular_semisimple),
        GfName::ElemRg | GfName::ElemRgWall | GfName::MpowElemRg => elems(&census.elements.regular),
        GfName::ElemSs | GfName::MpowElemSs => elems(&census.elements.semisimple),
        GfName::ElemRs | GfName::MpowElemRs => elems(&census.elements.regular_semisimple),
        GfName::ModularElements => elems(&census.elements.total),
        GfName::ThetaImage => unreachable!("theta_image is checked without a census"),
    }
}

/// Checks a catalogue entry against censuses for every n up to n_max;
/// dimensions beyond the budget are reported as skipped.
pub fn verify_series(
    name: GfName,
    field: &FqField,
    m: Option<u64>,
    n_max: u64,
    options: &CensusOptions,
) -> Result<VerifyReport> {
    let q = field.q();
    let order = usize::try_from(n_max).expect("truncation order fits usize");
    let series = genfun::gf(name, q, m, order)?;
    let mut rows = Vec::new();
    for n in 1..=n_max {
        let coeff = series.coeff(n as usize).clone();
        if name == GfName::ThetaImage {
            let count = partitions::enumerate_partitions(n)
                .iter()
                .filter(|lam| partitions::in_theta_image(lam, m.expect("theta_image needs M")))
                .count();
            rows.push(VerifyRow {
                n,
                series: coeff,
                census: Some(BigRational::from_integer(count.into())),
                skipped: false,
            });
            continue;
        }
        match image_census(field, n, m.unwrap_or(1), options) {
            Ok(census) => rows.push(VerifyRow {
                n,
                series: coeff,
                census: Some(census_quantity(name, &census)),
                skipped: false,
            }),
            Err(Error::BudgetExceeded(_)) => {
                rows.push(VerifyRow { n, series: coeff, census: None, skipped: true });
            }
            Err(e) => return Err(e),
        }
    }
    Ok(VerifyReport { name, q, m, n_max, full_elements: options.full_elements, rows })
}
