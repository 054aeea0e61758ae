//! Binomial and Gaussian (q-ary) binomial coefficients over big integers.
//!
//! Both are zero outside `0 <= b <= a`, which makes the combinatorial sums
//! in the rest of the crate total without changing any value.

use num::{BigInt, One, Zero};

pub fn binomial(a: i64, b: i64) -> BigInt {
    if b < 0 || b > a || a < 0 {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..b {
        acc = acc * BigInt::from(a - i) / BigInt::from(i + 1);
    }
    acc
}

/// Gaussian binomial `[a, b]_q`: the number of b-dimensional subspaces of
/// `F_q^a`.
pub fn q_binomial(a: i64, b: i64, q: u64) -> BigInt {
    if b < 0 || b > a || a < 0 {
        return BigInt::zero();
    }
    let q = BigInt::from(q);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..b {
        num *= q.pow((a - i) as u32) - BigInt::one();
        den *= q.pow((i + 1) as u32) - BigInt::one();
    }
    num / den
}

/// `q^C(x,2)` with `C(x,2) = x(x-1)/2`; only evaluated for x >= 0 in the
/// sums that use it (terms with negative x carry a vanishing bracket).
pub fn q_pow_choose2(q: u64, x: i64) -> BigInt {
    debug_assert!(x >= 0);
    BigInt::from(q).pow((x * (x - 1) / 2) as u32)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_basics() {
        assert_eq!(binomial(4, 2), BigInt::from(6));
        assert_eq!(binomial(4, 0), BigInt::from(1));
        assert_eq!(binomial(2, 3), BigInt::zero());
        assert_eq!(binomial(-1, 0), BigInt::zero());
    }

    #[test]
    fn q_binomial_basics() {
        assert_eq!(q_binomial(2, 1, 2), BigInt::from(3));
        assert_eq!(q_binomial(5, 0, 3), BigInt::from(1));
        assert_eq!(q_binomial(4, 2, 2), BigInt::from(35));
        assert_eq!(q_binomial(1, 2, 2), BigInt::zero());
    }

    #[test]
    fn q_binomial_symmetry() {
        for a in 0..6 {
            for b in 0..=a {
                assert_eq!(q_binomial(a, b, 3), q_binomial(a, a - b, 3));
            }
        }
    }
}
