use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Binomial coefficient `C(a, b)`, zero when `a < b`.
pub fn binom(a: u64, b: u64) -> BigInt {
    if b > a {
        return BigInt::zero();
    }
    let k = b.min(a - b);
    let mut acc = BigInt::one();
    for i in 0..k {
        // acc * (a - i) is divisible by (i + 1) at every step
        acc *= a - i;
        acc /= i + 1;
    }
    acc
}

/// `base^exp` as a big integer, with `0^0 = 1`.
pub fn int_pow(base: i64, exp: u32) -> BigInt {
    num_traits::pow(BigInt::from(base), exp as usize)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_values() {
        assert_eq!(binom(6, 5), BigInt::from(6));
        assert_eq!(binom(4, 2), BigInt::from(6));
        assert_eq!(binom(1, 2), BigInt::zero());
        assert_eq!(binom(0, 0), BigInt::one());
        assert_eq!(binom(7, 0), BigInt::one());
        assert_eq!(binom(7, 7), BigInt::one());
    }

    #[test]
    fn large_value_does_not_overflow() {
        // C(100, 50)
        let expected: BigInt = "100891344545564193334812497256".parse().unwrap();
        assert_eq!(binom(100, 50), expected);
    }

    #[test]
    fn zero_power_conventions() {
        assert_eq!(int_pow(0, 0), BigInt::one());
        assert_eq!(int_pow(0, 3), BigInt::zero());
        assert_eq!(int_pow(-2, 3), BigInt::from(-8));
    }

    proptest! {
        #[test]
        fn pascal_rule(a in 1u64..60, b in 1u64..60) {
            prop_assert_eq!(binom(a, b), binom(a - 1, b - 1) + binom(a - 1, b));
        }

        #[test]
        fn symmetric(a in 0u64..60, b in 0u64..60) {
            prop_assume!(b <= a);
            prop_assert_eq!(binom(a, b), binom(a, a - b));
        }
    }
}
