//! End-to-end acceptance checks: every layer of the library is validated
//! against an independent computation. Closed-form counts run against
//! direct enumeration, series coefficients against brute-force matrix
//! censuses, and the class decision procedure against exhaustive preimage
//! search.
//!
//! Each check prints one PASS line with its runtime; a failure panics with
//! the offending configuration.

use std::collections::HashSet;
use std::time::Instant;

use num::{BigInt, BigRational, BigUint, One};

use glpow::classdata::{self, CombData};
use glpow::ff::FqField;
use glpow::genfun::{self, GfName};
use glpow::mpower;
use glpow::oracle::{self, CensusOptions};
use glpow::partitions::{self, Partition};
use glpow::polyarith::{self, PolyFq};
use glpow::series::{self, Series};

fn fq(q: u64) -> FqField {
    let mut p = 2;
    while q % p != 0 {
        p += 1;
    }
    let mut k = 0u32;
    let mut t = q;
    while t > 1 {
        assert_eq!(t % p, 0, "{q} is not a prime power");
        t /= p;
        k += 1;
    }
    FqField::new(p, k, None).unwrap()
}

fn prime_power(m: u64) -> (u64, u32) {
    let mut p = 2;
    while m % p != 0 {
        p += 1;
    }
    let mut a = 0u32;
    let mut t = m;
    while t > 1 {
        assert_eq!(t % p, 0, "{m} is not a prime power");
        t /= p;
        a += 1;
    }
    (p, a)
}

fn ints(s: &Series) -> Vec<BigInt> {
    s.coeffs()
        .iter()
        .map(|c| {
            assert!(c.is_integer(), "expected integer coefficient, got {c}");
            c.to_integer()
        })
        .collect()
}

/// The (q, M) pairs of the coprime matrix-census harness, with the largest
/// dimension the class-representative census covers for each.
fn coprime_census_pairs() -> Vec<(u64, u64, u64)> {
    let budget = BigUint::from(oracle::DEFAULT_BUDGET);
    [(3u64, 2u64), (5, 2), (2, 3), (4, 3), (5, 3), (3, 4), (5, 4)]
        .into_iter()
        .map(|(q, m)| {
            let n_max = if classdata::gl_order(q, 4) <= budget { 4 } else { 3 };
            (q, m, n_max)
        })
        .collect()
}

#[test]
fn counting_formulas_match_enumeration() {
    let t = Instant::now();
    for q in [2u64, 3, 4, 5, 7, 8, 9] {
        let field = fq(q);
        let coprime: Vec<u64> =
            [2u64, 3, 4, 5, 8, 9].into_iter().filter(|m| num::integer::gcd(q, *m) == 1).collect();
        for d in 1..=4u32 {
            let irreducibles = polyarith::enumerate_irreducibles(&field, d as usize);
            for &m in &coprime {
                let (_, a) = prime_power(m);
                let mut tally = vec![0u64; a as usize + 1];
                for f in &irreducibles {
                    tally[mpower::stratum(f, m).unwrap() as usize] += 1;
                }
                // Stratum 0 is exactly the M-power condition.
                assert_eq!(
                    mpower::count_nm(q, m, d),
                    BigUint::from(tally[0]),
                    "N_M(q={q}, d={d}) at M={m}"
                );
                for i in 0..=a {
                    assert_eq!(
                        mpower::count_nmi(q, m, d, i).unwrap(),
                        BigUint::from(tally[i as usize]),
                        "N_M^i(q={q}, d={d}) at M={m}, i={i}"
                    );
                }
                if d <= 2 {
                    // The membership predicate must reach the same count.
                    let direct = irreducibles
                        .iter()
                        .filter(|f| mpower::is_m_power_poly(f, m).unwrap())
                        .count();
                    assert_eq!(
                        mpower::count_nm(q, m, d),
                        BigUint::from(direct as u64),
                        "membership count N_M(q={q}, d={d}) at M={m}"
                    );
                }
            }
        }
    }
    assert_eq!(mpower::count_nm(3, 2, 2), BigUint::from(1u64));
    assert_eq!(mpower::count_nm(5, 2, 2), BigUint::from(4u64));
    assert_eq!(mpower::count_nm(4, 3, 2), BigUint::from(2u64));
    assert_eq!(mpower::count_nm(7, 3, 2), BigUint::from(7u64));
    assert_eq!(mpower::count_nmi(5, 4, 1, 1).unwrap(), BigUint::from(1u64));
    println!("PASS counting formulas match direct enumeration ({:.2?})", t.elapsed());
}

#[test]
fn strata_counts_sum_to_all_irreducibles() {
    let t = Instant::now();
    for q in [2u64, 3, 4, 5, 7, 8, 9] {
        for m in [2u64, 3, 4, 5, 8, 9] {
            if num::integer::gcd(q, m) != 1 {
                continue;
            }
            let (_, a) = prime_power(m);
            for d in 1..=4u32 {
                let total: BigUint =
                    (0..=a).map(|i| mpower::count_nmi(q, m, d, i).unwrap()).sum();
                assert_eq!(
                    total,
                    polyarith::count_irreducibles(q, d),
                    "strata must partition the irreducibles at q={q}, M={m}, d={d}"
                );
            }
        }
    }
    println!("PASS stratum counts sum to the irreducible count ({:.2?})", t.elapsed());
}

#[test]
fn butler_profiles_match_factorization() {
    let t = Instant::now();
    for q in [2u64, 3, 4, 5, 7, 8, 9] {
        let field = fq(q);
        for d in 1..=3usize {
            for f in polyarith::enumerate_irreducibles(&field, d) {
                for m in 2..=9u64 {
                    if num::integer::gcd(q, m) != 1 {
                        continue;
                    }
                    let predicted = mpower::butler_profile(&f, m).unwrap();
                    let composed = f.compose_power(m);
                    let factors = polyarith::factorize(&composed).unwrap();
                    let mut actual = std::collections::BTreeMap::new();
                    for (g, e) in &factors.factors {
                        assert_eq!(*e, 1, "f(x^M) must be squarefree for coprime M");
                        *actual.entry(g.degree() as u64).or_insert(0u64) += 1;
                    }
                    let actual: Vec<(u64, u64)> = actual.into_iter().collect();
                    assert_eq!(predicted, actual, "profile of {f} at q={q}, M={m}");
                }
            }
        }
    }
    println!("PASS factor profiles match actual factorizations ({:.2?})", t.elapsed());
}

#[test]
fn theta_image_counts_match_enumeration() {
    let t = Instant::now();
    let theta2 = [1u64, 1, 2, 3, 4, 5, 7, 10, 13, 16, 21, 28, 35, 43, 55];
    let theta3 = [1u64, 1, 1, 2, 3, 4, 5, 6, 7, 9, 12, 16, 20, 24, 28];
    let theta5 = [1u64, 1, 1, 1, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11];
    for (m, table) in [(2u64, theta2), (3, theta3), (5, theta5)] {
        for (idx, want) in table.iter().enumerate() {
            let n = idx as u64 + 1;
            let counted = partitions::count_theta_image(n, m);
            assert_eq!(counted, BigUint::from(*want), "image size at n={n}, M={m}");
            let image: HashSet<Partition> = partitions::enumerate_partitions(n)
                .iter()
                .map(|lam| partitions::theta(lam, m))
                .collect();
            assert_eq!(
                BigUint::from(image.len() as u64),
                counted,
                "exhaustive image at n={n}, M={m}"
            );
        }
    }
    println!("PASS block power map image counts match enumeration ({:.2?})", t.elapsed());
}

#[test]
fn coprime_series_match_matrix_census() {
    let t = Instant::now();
    let entries = [
        GfName::MpowClassesRg,
        GfName::MpowClassesRs,
        GfName::MpowClassesSs,
        GfName::MpowClassesAll,
        GfName::MpowElemRg,
        GfName::MpowElemRs,
        GfName::MpowElemSs,
    ];
    for (q, m, n_max) in coprime_census_pairs() {
        let field = fq(q);
        for name in entries {
            let report = oracle::verify_series(name, &field, Some(m), n_max, &CensusOptions::default())
                .unwrap();
            assert!(
                report.rows.iter().all(|r| !r.skipped),
                "{name:?} at q={q}, M={m}: a census was skipped"
            );
            assert!(report.ok(), "{name:?} at q={q}, M={m}: {}", report.to_json());
        }
    }
    println!("PASS coprime-regime series match the matrix census ({:.2?})", t.elapsed());
}

#[test]
fn modular_series_match_matrix_census() {
    let t = Instant::now();
    for (q, m, n_max) in [(2u64, 2u64, 4u64), (4, 2, 3), (3, 3, 3)] {
        let field = fq(q);
        let mut entries = vec![GfName::ModularClasses, GfName::ModularElements];
        if m == 2 {
            entries.push(GfName::ModularClassesM2);
        }
        for name in entries {
            let report = oracle::verify_series(name, &field, Some(m), n_max, &CensusOptions::default())
                .unwrap();
            assert!(
                report.rows.iter().all(|r| !r.skipped),
                "{name:?} at q={q}, M={m}: a census was skipped"
            );
            assert!(report.ok(), "{name:?} at q={q}, M={m}: {}", report.to_json());
        }
    }
    let squares = genfun::gf(GfName::ModularClasses, 2, Some(2), 2).unwrap();
    assert_eq!(squares.coeff(2), &BigRational::from(BigInt::from(2)), "c(2, 2) = 2");
    println!("PASS modular-regime series match the matrix census ({:.2?})", t.elapsed());
}

#[test]
fn series_identities_hold() {
    let t = Instant::now();
    let order = 12usize;
    for q in [2u64, 3, 4, 5] {
        // Every element lies in exactly one class: the unrestricted
        // element series is constant 1.
        let all = genfun::gf_element_general(q, None, order, |_, _| true).unwrap();
        for i in 0..=order {
            assert!(all.coeff(i).is_one(), "total probability at q={q}, n={i}");
        }
        // The two forms of the regular-element series agree.
        let rg = genfun::gf(GfName::ElemRg, q, None, order).unwrap();
        let wall = genfun::gf(GfName::ElemRgWall, q, None, order).unwrap();
        assert_eq!(rg, wall, "regular-element forms at q={q}");
        // Product forms against the closed forms for classes.
        let n_irr = |d: usize| BigInt::from(polyarith::count_irreducibles(q, d as u32));
        let rg_product = series::product_over_degrees(
            order,
            |d| Series::polynomial(&[(0, 1), (d, -1)], order),
            |d| -n_irr(d),
        );
        assert_eq!(rg_product, genfun::gf(GfName::ClassesRg, q, None, order).unwrap());
        let rs_product = series::product_over_degrees(
            order,
            |d| Series::polynomial(&[(0, 1), (d, 1)], order),
            n_irr,
        );
        assert_eq!(rs_product, genfun::gf(GfName::ClassesRs, q, None, order).unwrap());
        for m in [2u64, 3, 4, 5, 8, 9] {
            if num::integer::gcd(q, m) != 1 {
                continue;
            }
            let ss = genfun::gf(GfName::MpowClassesSs, q, Some(m), order).unwrap();
            let (_, a) = prime_power(m);
            if a == 1 {
                // For prime M the dedicated prime form and the general
                // prime-power form must coincide.
                let prime_form = genfun::gf(GfName::MpowClassesSsPrime, q, Some(m), order).unwrap();
                assert_eq!(ss, prime_form, "semisimple forms at q={q}, M={m}");
            }
            // All power classes arise by rescaling the semisimple series.
            let all_classes = genfun::gf(GfName::MpowClassesAll, q, Some(m), order).unwrap();
            let scaled = series::product_over_scales(&ss, order).unwrap();
            assert_eq!(all_classes, scaled, "scale product at q={q}, M={m}");
            let _ = ints(&all_classes);
        }
    }
    println!("PASS series identities hold at truncation order 12 ({:.2?})", t.elapsed());
}

#[test]
fn decisions_match_preimage_search() {
    let t = Instant::now();
    let mut pairs: Vec<(u64, u64)> =
        coprime_census_pairs().into_iter().map(|(q, m, _)| (q, m)).collect();
    pairs.extend([(2, 2), (4, 2), (3, 3)]);
    for (q, m) in pairs {
        let field = fq(q);
        for n in 1..=3u64 {
            let classes = classdata::enumerate_class_data(&field, n).unwrap();
            let image: HashSet<String> = classes
                .iter()
                .map(|e| e.power_class(m).unwrap().to_json().to_string())
                .collect();
            for data in &classes {
                let expected = image.contains(&data.to_json().to_string());
                assert_eq!(
                    data.is_mth_power_class(m).unwrap(),
                    expected,
                    "decision for {data} at q={q}, M={m}"
                );
            }
        }
    }
    println!("PASS decisions match exhaustive preimage search ({:.2?})", t.elapsed());
}

#[test]
fn negative_control_distinguishes_class_from_semisimplification() {
    let t = Instant::now();
    let field = fq(3);
    // 2 is the non-residue mod 3; x - 2 has coefficient indices [1, 1] and
    // x - 1 has [2, 1].
    let non_residue_root = PolyFq::from_indices(&field, &[1, 1]);
    let residue_root = PolyFq::from_indices(&field, &[2, 1]);
    let class = CombData::new(
        &field,
        vec![
            (non_residue_root.clone(), Partition::new(&[2])),
            (residue_root.clone(), Partition::new(&[1])),
        ],
    )
    .unwrap();
    let semisimplification = CombData::new(
        &field,
        vec![
            (non_residue_root, Partition::new(&[1, 1])),
            (residue_root, Partition::new(&[1])),
        ],
    )
    .unwrap();
    assert!(!class.is_mth_power_class(2).unwrap());
    assert!(semisimplification.is_mth_power_class(2).unwrap());

    // Confirm both verdicts by squaring one matrix representative of every
    // class of the ambient group.
    let image: HashSet<String> = classdata::enumerate_class_data(&field, 3)
        .unwrap()
        .iter()
        .map(|e| oracle::class_of(&oracle::representative(e).pow(2)).unwrap().to_json().to_string())
        .collect();
    assert!(!image.contains(&class.to_json().to_string()));
    assert!(image.contains(&semisimplification.to_json().to_string()));
    println!(
        "PASS a non-power class with a power semisimplification is separated ({:.2?})",
        t.elapsed()
    );
}
