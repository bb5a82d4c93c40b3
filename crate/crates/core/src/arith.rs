//! Small-integer number theory helpers.

use num_integer::Integer;

/// Positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = vec![];
    let mut large = vec![];
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Prime factorization as `(p, e)` pairs with ascending `p`.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = vec![];
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == [(n, 1)]
}

/// Euler's totient.
pub fn phi(n: u64) -> u64 {
    factorize(n).iter().fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// `p`-adic valuation of a nonzero integer.
pub fn valuation(mut n: u64, p: u64) -> u32 {
    assert!(n != 0 && p >= 2);
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basics() {
        assert_eq!(divisors(40), vec![1, 2, 4, 5, 8, 10, 20, 40]);
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(factorize(2048000), vec![(2, 14), (5, 3)]);
        assert_eq!(phi(1), 1);
        assert_eq!(phi(20), 8);
        assert!(is_prime(5) && !is_prime(1) && !is_prime(25));
        assert_eq!(valuation(100, 5), 2);
    }
}
