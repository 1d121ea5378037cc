use num::BigInt;

/// Exact binomial coefficient C(a, b) under the convention that out-of-range
/// `b` (negative or greater than `a`) yields 0.
pub fn binom_exact(a: u64, b: i64) -> BigInt {
    if b < 0 || b as u64 > a {
        return BigInt::from(0u32);
    }
    let b = (b as u64).min(a - b as u64);
    // C(67, 33) still fits in u64; the multiplicative recurrence stays exact
    // because each prefix C(a-b+1..a-b+i)/i! is itself a binomial coefficient.
    if a <= 67 {
        let mut c: u128 = 1;
        for i in 1..=b {
            c = c * (a - b + i) as u128 / i as u128;
        }
        BigInt::from(c as u64)
    } else {
        let mut c = BigInt::from(1u32);
        for i in 1..=b {
            c = c * (a - b + i) / i;
        }
        c
    }
}
