use num::bigint::Sign;
use num::{BigInt, BigRational, One, Signed, Zero};

/// Exact rational scalar: always in lowest terms with a positive denominator
/// (both normalizations are maintained by `num::BigRational` itself).
pub type ExactRational = BigRational;

/// Builds the exact rational `numer/denom`. Panics if `denom == 0`.
pub fn ratio(numer: i64, denom: i64) -> ExactRational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Converts a finite double to the exact rational it denotes.
pub fn ratio_from_f64(x: f64) -> ExactRational {
    BigRational::from_float(x).expect("finite float")
}

/// Rounds an exact rational to the nearest double, good to a few ulps even
/// when numerator and denominator are far outside the double range.
pub fn to_f64_lossy(r: &ExactRational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    if r.is_negative() {
        return -to_f64_lossy(&-r.clone());
    }
    // Scale so the integer quotient carries ~80 significant bits, then divide.
    let shift = 96i64 + r.denom().bits() as i64 - r.numer().bits() as i64;
    let (scaled, exp) = if shift > 0 {
        ((r.numer() << shift as u64) / r.denom(), -shift)
    } else {
        (r.numer() / (r.denom() << (-shift) as u64), -shift)
    };
    big_to_f64(&scaled) * (exp as f64).exp2()
}

/// Natural log of a positive exact rational, accurate to a few ulps.
pub fn ln_rational(r: &ExactRational) -> f64 {
    assert!(r.is_positive(), "ln of non-positive rational");
    ln_big(r.numer()) - ln_big(r.denom())
}

fn big_to_f64(v: &BigInt) -> f64 {
    // Top 64 bits as mantissa, remainder as a power-of-two exponent.
    let bits = v.bits();
    if bits <= 63 {
        return i64::try_from(v.clone()).expect("fits") as f64;
    }
    let excess = bits - 63;
    let top: BigInt = v >> excess;
    let m = i64::try_from(top).expect("63 bits") as f64;
    m * (excess as f64).exp2()
}

fn ln_big(v: &BigInt) -> f64 {
    assert_eq!(v.sign(), Sign::Plus);
    if v.is_one() {
        return 0.0;
    }
    let bits = v.bits();
    if bits <= 63 {
        return (i64::try_from(v.clone()).expect("fits") as f64).ln();
    }
    let excess = bits - 63;
    let top: BigInt = v >> excess;
    let m = i64::try_from(top).expect("63 bits") as f64;
    m.ln() + excess as f64 * std::f64::consts::LN_2
}
