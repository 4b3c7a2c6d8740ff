//! Small deterministic integer helpers: primality, factorization, Möbius.
//!
//! Everything here works on `u64` inputs with `u128` intermediates, which is
//! ample for the desk-scale orders this crate handles (q^d up to 2^48 or so).

/// (a * b) mod m without overflow.
pub(crate) fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// (a ^ e) mod m by binary exponentiation.
pub(crate) fn powmod(mut a: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut r = 1u64;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, m);
        }
        a = mulmod(a, a, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin, valid for all u64 inputs.
pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d & 1 == 0 {
        d >>= 1;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// One Pollard-rho round (Brent). Returns a nontrivial factor of composite n.
fn pollard_rho(n: u64, c: u64) -> u64 {
    let f = |x: u64| (mulmod(x, x, n) + c) % n;
    let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
    let mut count = 0u64;
    while d == 1 {
        x = f(x);
        y = f(f(y));
        d = num::integer::gcd(x.abs_diff(y), n);
        count += 1;
        if count > 1 << 24 {
            return 1;
        }
    }
    d
}

/// Prime factorization of n as sorted (prime, multiplicity) pairs.
pub(crate) fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out: Vec<(u64, u32)> = Vec::new();
    let push = |p: u64, out: &mut Vec<(u64, u32)>| match out.iter_mut().find(|e| e.0 == p) {
        Some(e) => e.1 += 1,
        None => out.push((p, 1)),
    };
    for p in [2u64, 3, 5] {
        while n % p == 0 {
            push(p, &mut out);
            n /= p;
        }
    }
    let mut d = 7u64;
    let inc = [4u64, 2, 4, 2, 4, 6, 2, 6];
    let mut i = 0;
    while d <= 100_000 && d * d <= n {
        while n % d == 0 {
            push(d, &mut out);
            n /= d;
        }
        d += inc[i];
        i = (i + 1) % 8;
    }
    // Recurse on what trial division left behind.
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime_u64(m) {
            push(m, &mut out);
            continue;
        }
        let mut c = 1;
        let mut d = pollard_rho(m, c);
        while d == 1 || d == m {
            c += 1;
            d = pollard_rho(m, c);
        }
        stack.push(d);
        stack.push(m / d);
    }
    out.sort_unstable();
    out
}

/// All divisors of n, ascending.
pub(crate) fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for (p, e) in factor_u64(n) {
        let prev = out.clone();
        let mut pw = 1u64;
        for _ in 0..e {
            pw *= p;
            out.extend(prev.iter().map(|d| d * pw));
        }
    }
    out.sort_unstable();
    out
}

/// Möbius function.
pub(crate) fn moebius(n: u64) -> i64 {
    let f = factor_u64(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Euler totient.
pub(crate) fn euler_phi(n: u64) -> u64 {
    let mut out = n;
    for (p, _) in factor_u64(n) {
        out = out / p * (p - 1);
    }
    out
}

/// Writes n as (p, k) with p prime and k ≥ 1, if possible.
pub(crate) fn prime_power_split(n: u64) -> Option<(u64, u32)> {
    let f = factor_u64(n);
    if n >= 2 && f.len() == 1 {
        Some(f[0])
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_small_and_carmichael() {
        assert!(is_prime_u64(2));
        assert!(is_prime_u64(65537));
        assert!(!is_prime_u64(1));
        assert!(!is_prime_u64(561));
        assert!(!is_prime_u64(3215031751));
    }

    #[test]
    fn factor_roundtrip() {
        for n in [1u64, 2, 12, 97, 1 << 20, 3u64.pow(12), 600851475143] {
            let f = factor_u64(n);
            let back: u64 = f.iter().map(|&(p, e)| p.pow(e)).product();
            assert_eq!(back, n, "factoring {n}");
            assert!(f.iter().all(|&(p, _)| is_prime_u64(p)));
        }
    }

    #[test]
    fn divisor_lists() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), vec![1]);
    }

    #[test]
    fn moebius_values() {
        let want = [1i64, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0];
        for (i, &w) in want.iter().enumerate() {
            assert_eq!(moebius(i as u64 + 1), w, "mu({})", i + 1);
        }
    }

    #[test]
    fn phi_and_prime_powers() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(9), 6);
        assert_eq!(euler_phi(360), 96);
        assert_eq!(prime_power_split(8), Some((2, 3)));
        assert_eq!(prime_power_split(9), Some((3, 2)));
        assert_eq!(prime_power_split(12), None);
        assert_eq!(prime_power_split(1), None);
    }
}
