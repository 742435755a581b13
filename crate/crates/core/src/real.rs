//! Fixed-point reals with a caller-chosen number of fractional bits.
//!
//! Only what the rate and exponent metrics need: base-2 logarithms of exact
//! integers and rationals, the four basic operations, and conversion to `f64`
//! for display.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;

/// Extra working bits carried through logarithm evaluation.
const GUARD_BITS: u32 = 32;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fixed {
    /// value = mantissa / 2^frac_bits
    mantissa: BigInt,
    frac_bits: u32,
}

impl Fixed {
    pub fn zero(frac_bits: u32) -> Self {
        Fixed {
            mantissa: BigInt::zero(),
            frac_bits,
        }
    }

    pub fn from_int(v: impl Into<BigInt>, frac_bits: u32) -> Self {
        Fixed {
            mantissa: v.into() << frac_bits,
            frac_bits,
        }
    }

    /// Nearest representable value to `num / den`.
    pub fn from_ratio(num: &BigInt, den: &BigInt, frac_bits: u32) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let scaled = num << (frac_bits + 1);
        let q = scaled.div_floor(den);
        Fixed {
            mantissa: (q + 1) >> 1,
            frac_bits,
        }
    }

    pub fn frac_bits(&self) -> u32 {
        self.frac_bits
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.mantissa.is_positive()
    }

    pub fn add(&self, other: &Fixed) -> Fixed {
        debug_assert_eq!(self.frac_bits, other.frac_bits);
        Fixed {
            mantissa: &self.mantissa + &other.mantissa,
            frac_bits: self.frac_bits,
        }
    }

    pub fn sub(&self, other: &Fixed) -> Fixed {
        debug_assert_eq!(self.frac_bits, other.frac_bits);
        Fixed {
            mantissa: &self.mantissa - &other.mantissa,
            frac_bits: self.frac_bits,
        }
    }

    pub fn mul_int(&self, k: i64) -> Fixed {
        Fixed {
            mantissa: &self.mantissa * k,
            frac_bits: self.frac_bits,
        }
    }

    pub fn mul(&self, other: &Fixed) -> Fixed {
        Fixed {
            mantissa: (&self.mantissa * &other.mantissa) >> self.frac_bits,
            frac_bits: self.frac_bits,
        }
    }

    pub fn div(&self, other: &Fixed) -> Fixed {
        assert!(!other.mantissa.is_zero(), "division by zero");
        Fixed::from_ratio(&self.mantissa, &other.mantissa, self.frac_bits)
    }

    /// log2 of a positive value; `None` otherwise.
    pub fn log2(&self) -> Option<Fixed> {
        if !self.is_positive() {
            return None;
        }
        let m = self.mantissa.magnitude();
        let l = log2_biguint(m, self.frac_bits);
        Some(l.sub(&Fixed::from_int(self.frac_bits, self.frac_bits)))
    }

    pub fn to_f64(&self) -> f64 {
        // keep 64 significant bits before handing to f64
        let bits = self.mantissa.bits() as i64;
        let drop = (bits - 64).max(0);
        let top = (&self.mantissa >> drop as usize)
            .to_f64()
            .unwrap_or(f64::NAN);
        top * 2f64.powi((drop - self.frac_bits as i64) as i32)
    }

    pub fn cmp_value(&self, other: &Fixed) -> Ordering {
        debug_assert_eq!(self.frac_bits, other.frac_bits);
        self.mantissa.cmp(&other.mantissa)
    }

    /// Absolute difference, in units of 2^-frac_bits.
    pub fn ulps_from(&self, other: &Fixed) -> BigUint {
        (&self.mantissa - &other.mantissa).magnitude().clone()
    }
}

/// log2 of a positive integer with `frac_bits` fractional bits.
///
/// Integer part from the bit length; fractional bits by repeated squaring of
/// the normalised mantissa in [1, 2).
pub fn log2_biguint(x: &BigUint, frac_bits: u32) -> Fixed {
    assert!(!x.is_zero(), "log2 of zero");
    let int_part = x.bits() - 1;
    let work = frac_bits + GUARD_BITS;
    // y = x / 2^int_part as fixed point with `work` fractional bits
    let mut y: BigUint = if int_part as u32 >= work {
        x >> (int_part as u32 - work)
    } else {
        x << (work - int_part as u32)
    };
    let one: BigUint = BigUint::one() << work;
    let two: BigUint = BigUint::one() << (work + 1);
    let mut frac = BigUint::zero();
    for _ in 0..work {
        y = (&y * &y) >> work;
        frac <<= 1;
        if y >= two {
            y >>= 1;
            frac += 1u32;
        }
        debug_assert!(y >= one);
    }
    let total = (BigUint::from(int_part) << work) + frac;
    let rounded = (total + (BigUint::one() << (GUARD_BITS - 1))) >> GUARD_BITS;
    Fixed {
        mantissa: BigInt::from_biguint(Sign::Plus, rounded),
        frac_bits,
    }
}

/// log2(num / den) for positive integers.
pub fn log2_ratio(num: &BigUint, den: &BigUint, frac_bits: u32) -> Fixed {
    log2_biguint(num, frac_bits).sub(&log2_biguint(den, frac_bits))
}

/// Formats with 12 significant digits, the CLI's convention for reals.
pub fn sig12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log2_of_powers_of_two_is_exact() {
        for k in [0u32, 1, 5, 64, 200] {
            let v = log2_biguint(&(BigUint::one() << k), 96);
            assert_eq!(v, Fixed::from_int(k, 96));
        }
    }

    #[test]
    fn log2_matches_f64_within_rounding() {
        for n in [3u64, 5, 7, 10, 625, 1920, 1_000_003] {
            let v = log2_biguint(&BigUint::from(n), 96).to_f64();
            assert!((v - (n as f64).log2()).abs() < 1e-14, "{n}: {v}");
        }
    }

    #[test]
    fn log2_high_precision_consistent() {
        // log2(3^40) = 40 log2(3) to well beyond f64 accuracy
        let a = log2_biguint(&BigUint::from(3u32).pow(40), 96);
        let b = log2_biguint(&BigUint::from(3u32), 96).mul_int(40);
        assert!(a.ulps_from(&b) < BigUint::from(1u32 << 10));
    }

    #[test]
    fn fixed_of_fraction_log() {
        let r = Fixed::from_ratio(&BigInt::from(1), &BigInt::from(4), 64);
        assert_eq!(r.log2().unwrap().to_f64(), -2.0);
        assert!(Fixed::zero(64).log2().is_none());
    }

    #[test]
    fn twelve_digits() {
        assert_eq!(sig12(0.123456789012345), 0.123456789012);
        assert_eq!(sig12(10.906890595608518), 10.9068905956);
    }
}
