//! Integer partitions, transposes, and the part-splitting map Θ_M.
//!
//! A partition is stored as its non-increasing list of positive parts; the
//! power notation (multiplicities of each part) and the transpose are
//! computed on demand. The map Θ_M replaces each part by M nearly-equal
//! parts and characterizes which unipotent classes are M-th powers when the
//! field characteristic is M; this module provides the map itself, the
//! membership test for its image, and the size of the image by degree.

use num::bigint::BigUint;
use num::{One, Zero};

/// A partition of a nonnegative integer: non-increasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    parts: Vec<u64>,
    n: u64,
}

impl Partition {
    /// Builds a partition from parts in any order. Panics on zero parts.
    pub fn new(parts: &[u64]) -> Self {
        assert!(parts.iter().all(|&p| p >= 1), "parts must be positive");
        let mut parts = parts.to_vec();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let n = parts.iter().sum();
        Partition { parts, n }
    }

    /// The empty partition of 0.
    pub fn empty() -> Self {
        Partition { parts: Vec::new(), n: 0 }
    }

    /// The parts, largest first.
    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    /// |λ|, the sum of the parts.
    pub fn size(&self) -> u64 {
        self.n
    }

    /// The number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    /// Whether this is the empty partition.
    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// m_i(λ): how many parts equal i.
    pub fn multiplicity(&self, i: u64) -> u64 {
        self.parts.iter().filter(|&&p| p == i).count() as u64
    }

    /// Power notation as (part, multiplicity) pairs, largest part first.
    pub fn multiplicities(&self) -> Vec<(u64, u64)> {
        let mut out: Vec<(u64, u64)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((part, mult)) if *part == p => *mult += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// The transpose λ′, with λ′_i = #{j : λ_j ≥ i}.
    pub fn transpose(&self) -> Partition {
        let max = self.parts.first().copied().unwrap_or(0);
        let mut parts = Vec::with_capacity(usize::try_from(max).expect("part fits usize"));
        for i in 1..=max {
            parts.push(self.parts.iter().filter(|&&p| p >= i).count() as u64);
        }
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        Partition { parts, n: self.n }
    }
}

impl std::fmt::Display for Partition {
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(out, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(out, ",")?;
            }
            write!(out, "{p}")?;
        }
        write!(out, ")")
    }
}

/// All partitions of n in reverse-lexicographic order, (n) first and
/// (1, …, 1) last. For n = 0 the single entry is the empty partition.
pub fn enumerate_partitions(n: u64) -> Vec<Partition> {
    fn rec(n: u64, max: u64, cur: &mut Vec<u64>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition { parts: cur.clone(), n: cur.iter().sum() });
            return;
        }
        for part in (1..=max.min(n)).rev() {
            cur.push(part);
            rec(n - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n.max(1), &mut Vec::new(), &mut out);
    out
}

/// Θ_M(λ): each part p becomes p mod M copies of ⌈p/M⌉ followed by enough
/// copies of ⌊p/M⌋ to make M parts, zeros dropped. The result has the same
/// size as λ.
pub fn theta(lam: &Partition, m: u64) -> Partition {
    assert!(m >= 2, "the splitting order must be at least 2");
    let mut parts = Vec::new();
    for &p in lam.parts() {
        let bar = p % m;
        let floor = p / m;
        for _ in 0..bar {
            parts.push(floor + 1);
        }
        if floor > 0 {
            for _ in 0..(m - bar) {
                parts.push(floor);
            }
        }
    }
    let out = if parts.is_empty() { Partition::empty() } else { Partition::new(&parts) };
    debug_assert_eq!(out.size(), lam.size());
    #[cfg(debug_assertions)]
    {
        // The same map through multiplicities:
        // m_i(Θ) = M·m_{iM} + Σ_{j=1}^{M−1} (M−j)(m_{iM−j} + m_{iM+j}).
        let hi = out
            .parts()
            .first()
            .copied()
            .unwrap_or(0)
            .max(lam.parts().first().copied().unwrap_or(0) / m + 1);
        for i in 1..=hi {
            let mut expect = m * lam.multiplicity(i * m);
            for j in 1..m {
                expect += (m - j) * (lam.multiplicity(i * m - j) + lam.multiplicity(i * m + j));
            }
            debug_assert_eq!(out.multiplicity(i), expect, "multiplicity identity at {i}");
        }
    }
    out
}

/// Whether μ lies in the image of Θ_M on partitions of |μ|: true exactly
/// when Σ_{j=1}^{M−1} m_{iM−j}(μ′) ≤ 1 for every i ≥ 1.
pub fn in_theta_image(mu: &Partition, m: u64) -> bool {
    assert!(m >= 2, "the splitting order must be at least 2");
    let t = mu.transpose();
    let hi = t.parts().first().copied().unwrap_or(0);
    let mut i = 1u64;
    while i * m + 1 - m <= hi {
        let mut near_miss = 0u64;
        for j in 1..m {
            near_miss += t.multiplicity(i * m - j);
        }
        if near_miss > 1 {
            return false;
        }
        i += 1;
    }
    true
}

/// |Θ_M(Λ(n))|: the number of partitions of n in the image of Θ_M, read off
/// as the u^n coefficient of ∏_k (1 + u^{kM−1} + … + u^{kM−(M−1)})/(1 − u^{kM}).
pub fn count_theta_image(n: u64, m: u64) -> BigUint {
    assert!(m >= 2, "the splitting order must be at least 2");
    let nn = usize::try_from(n).expect("degree fits usize");
    let mm = usize::try_from(m).expect("splitting order fits usize");
    let mut coeffs = vec![BigUint::zero(); nn + 1];
    coeffs[0] = BigUint::one();
    let mut k = 1usize;
    while k * mm + 1 - mm <= nn {
        let base = k * mm;
        let mut next = coeffs.clone();
        for j in 1..mm {
            let off = base - j;
            if off > nn {
                continue;
            }
            for i in off..=nn {
                let add = coeffs[i - off].clone();
                next[i] += add;
            }
        }
        coeffs = next;
        if base <= nn {
            for i in base..=nn {
                let add = coeffs[i - base].clone();
                coeffs[i] += add;
            }
        }
        k += 1;
    }
    coeffs.pop().expect("coefficient buffer is non-empty")
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn p(parts: &[u64]) -> Partition {
        Partition::new(parts)
    }

    #[test]
    fn construction_and_accessors() {
        let lam = p(&[1, 3, 1]);
        assert_eq!(lam.parts(), &[3, 1, 1]);
        assert_eq!(lam.size(), 5);
        assert_eq!(lam.len(), 3);
        assert_eq!(lam.multiplicity(1), 2);
        assert_eq!(lam.multiplicity(2), 0);
        assert_eq!(lam.multiplicities(), vec![(3, 1), (1, 2)]);
        assert_eq!(lam.to_string(), "(3,1,1)");
        assert!(Partition::empty().is_empty());
        assert_eq!(Partition::empty().to_string(), "()");
    }

    #[test]
    #[should_panic(expected = "positive")]
    fn zero_parts_rejected() {
        p(&[2, 0]);
    }

    #[test]
    fn enumeration_counts_and_order() {
        assert_eq!(enumerate_partitions(0), vec![Partition::empty()]);
        let four = enumerate_partitions(4);
        let expect: Vec<Partition> =
            [&[4][..], &[3, 1], &[2, 2], &[2, 1, 1], &[1, 1, 1, 1]].iter().map(|s| p(s)).collect();
        assert_eq!(four, expect);
        let sizes = [1usize, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77, 101, 135, 176];
        for (n, want) in sizes.iter().enumerate() {
            assert_eq!(enumerate_partitions(n as u64).len(), *want, "n={n}");
        }
    }

    #[test]
    fn transpose_involution_and_multiplicity_identity() {
        for n in 0..=10u64 {
            for lam in enumerate_partitions(n) {
                let t = lam.transpose();
                assert_eq!(t.size(), n);
                assert_eq!(t.transpose(), lam);
                // m_i(λ) = λ′_i − λ′_{i+1}
                let tp = t.parts();
                for i in 1..=lam.parts().first().copied().unwrap_or(0) {
                    let at = |k: u64| tp.get(k as usize - 1).copied().unwrap_or(0);
                    assert_eq!(lam.multiplicity(i), at(i) - at(i + 1));
                }
            }
        }
    }

    #[test]
    fn theta_examples() {
        assert_eq!(theta(&p(&[3, 1]), 2), p(&[2, 1, 1]));
        assert_eq!(theta(&p(&[2, 2]), 2), p(&[1, 1, 1, 1]));
        assert_eq!(theta(&p(&[4]), 2), p(&[2, 2]));
        assert_eq!(theta(&p(&[1, 1, 1, 1]), 2), p(&[1, 1, 1, 1]));
        assert_eq!(theta(&p(&[2, 1, 1]), 2), p(&[1, 1, 1, 1]));
        assert_eq!(theta(&Partition::empty(), 3), Partition::empty());
        // The full image on partitions of 5 under Θ_3.
        let image: HashSet<Partition> =
            enumerate_partitions(5).iter().map(|lam| theta(lam, 3)).collect();
        let expect: HashSet<Partition> =
            [&[1, 1, 1, 1, 1][..], &[2, 1, 1, 1], &[2, 2, 1]].iter().map(|s| p(s)).collect();
        assert_eq!(image, expect);
    }

    #[test]
    fn theta_preserves_size() {
        for n in 0..=15u64 {
            for m in 2..=5u64 {
                for lam in enumerate_partitions(n) {
                    assert_eq!(theta(&lam, m).size(), n, "λ={lam} M={m}");
                }
            }
        }
    }

    #[test]
    fn image_membership_examples() {
        assert!(in_theta_image(&p(&[1, 1, 1, 1]), 2));
        assert!(!in_theta_image(&p(&[3, 1]), 2));
        for n in 2..=9u64 {
            for m in 2..=5u64 {
                assert!(!in_theta_image(&p(&[n]), m), "({n}) M={m}");
            }
        }
        assert!(in_theta_image(&Partition::empty(), 2));
    }

    #[test]
    fn image_membership_matches_preimage_search() {
        for n in 0..=12u64 {
            for m in 2..=5u64 {
                let image: HashSet<Partition> =
                    enumerate_partitions(n).iter().map(|lam| theta(lam, m)).collect();
                for mu in enumerate_partitions(n) {
                    assert_eq!(in_theta_image(&mu, m), image.contains(&mu), "μ={mu} M={m}");
                }
            }
        }
    }

    #[test]
    fn image_counts_match_table() {
        let theta2 = [1u64, 1, 2, 3, 4, 5, 7, 10, 13, 16, 21, 28, 35, 43, 55];
        let theta3 = [1u64, 1, 1, 2, 3, 4, 5, 6, 7, 9, 12, 16, 20, 24, 28];
        let theta5 = [1u64, 1, 1, 1, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11];
        for (m, table) in [(2u64, theta2), (3, theta3), (5, theta5)] {
            for (idx, want) in table.iter().enumerate() {
                let n = idx as u64 + 1;
                assert_eq!(count_theta_image(n, m), BigUint::from(*want), "n={n} M={m}");
            }
        }
        assert_eq!(count_theta_image(0, 2), BigUint::one());
    }

    #[test]
    fn image_counts_match_enumeration() {
        for n in 0..=15u64 {
            for m in [2u64, 3, 5] {
                let all = enumerate_partitions(n);
                let by_test = all.iter().filter(|mu| in_theta_image(mu, m)).count();
                let distinct: HashSet<Partition> = all.iter().map(|lam| theta(lam, m)).collect();
                let counted = count_theta_image(n, m);
                assert_eq!(counted, BigUint::from(by_test as u64), "n={n} M={m}");
                assert_eq!(by_test, distinct.len(), "n={n} M={m}");
            }
        }
    }
}
