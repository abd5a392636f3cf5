//! Small integer helpers.

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime divisors in increasing order.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Largest power of `p` dividing `n`.
pub fn p_part(mut n: usize, p: usize) -> usize {
    let mut r = 1;
    while n.is_multiple_of(p) {
        n /= p;
        r *= p;
    }
    r
}

/// `Some((p, k))` when `n = p^k` with `k >= 1`.
pub fn prime_power(n: usize) -> Option<(usize, u32)> {
    let ps = prime_divisors(n as u64);
    if ps.len() != 1 {
        return None;
    }
    let p = ps[0] as usize;
    let mut k = 0;
    let mut m = n;
    while m > 1 {
        m /= p;
        k += 1;
    }
    Some((p, k))
}

pub fn is_power_of(n: usize, p: usize) -> bool {
    p_part(n, p) == n
}

pub fn euler_phi(n: usize) -> usize {
    let mut r = n;
    for q in prime_divisors(n as u64) {
        let q = q as usize;
        r = r / q * (q - 1);
    }
    r
}

pub fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn pow_mod(base: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    let mut b = base % m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basics() {
        assert!(is_prime(2) && is_prime(13) && !is_prime(1) && !is_prime(15));
        assert_eq!(prime_divisors(5616), vec![2, 3, 13]);
        assert_eq!(p_part(24, 2), 8);
        assert_eq!(prime_power(81), Some((3, 4)));
        assert_eq!(prime_power(1), None);
        assert_eq!(prime_power(12), None);
        assert_eq!(euler_phi(9), 6);
        assert_eq!(pow_mod(2, 10, 1000), 24);
    }
}
