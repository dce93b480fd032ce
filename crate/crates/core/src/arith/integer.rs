//! Small integer helpers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Prime factorization of `|n|` by trial division, ascending. Empty for
/// `0` and `±1`.
pub fn factorize(n: &BigInt) -> Vec<(BigInt, u32)> {
    let mut m = n.abs();
    let mut out = Vec::new();
    if m.is_zero() {
        return out;
    }
    let mut p = BigInt::from(2);
    while &p * &p <= m {
        let mut e = 0;
        while (&m % &p).is_zero() {
            m /= &p;
            e += 1;
        }
        if e > 0 {
            out.push((p.clone(), e));
        }
        p += if p == BigInt::from(2) { 1 } else { 2 };
    }
    if !m.is_one() {
        out.push((m, 1));
    }
    out
}

pub fn prime_divisors(n: &BigInt) -> Vec<BigInt> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    (2..=n).filter(|&k| is_prime(k)).collect()
}

pub fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_small() {
        let f = factorize(&BigInt::from(-360));
        let v: Vec<(i64, u32)> = f.iter().map(|(p, e)| (p.try_into().unwrap(), *e)).collect();
        assert_eq!(v, vec![(2, 3), (3, 2), (5, 1)]);
        assert!(factorize(&BigInt::one()).is_empty());
        assert_eq!(prime_divisors(&BigInt::from(11)), vec![BigInt::from(11)]);
        assert_eq!(primes_up_to(30).len(), 10);
    }
}
