//! High-precision real scalar used by every analytic routine.
//!
//! Values carry their own binary precision. New values are created at the
//! process-wide working precision, which is configured in decimal digits
//! (default 38) and converted to bits with a guard margin. Binary operations
//! produce a result at the larger precision of the two operands, so a
//! computation seeded at doubled precision stays there.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::atomic::{AtomicUsize, Ordering as AtomicOrdering};

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};
use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};

/// Default working precision in significant decimal digits.
pub const DEFAULT_DIGITS: usize = 38;
/// Smallest accepted working precision.
pub const MIN_DIGITS: usize = 30;
/// Largest accepted working precision.
pub const MAX_DIGITS: usize = 1000;

/// Extra bits carried beyond the requested decimal precision.
const GUARD_BITS: usize = 64;
const RM: RoundingMode = RoundingMode::ToEven;

static DIGITS: AtomicUsize = AtomicUsize::new(DEFAULT_DIGITS);

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constants cache"));
}

fn with_consts<R>(f: impl FnOnce(&mut Consts) -> R) -> R {
    CONSTS.with(|cc| f(&mut cc.borrow_mut()))
}

/// Sets the process-wide working precision. Must be called before values are
/// shared across threads.
pub fn set_precision_digits(digits: usize) -> Result<()> {
    if !(MIN_DIGITS..=MAX_DIGITS).contains(&digits) {
        return Err(Error::Precision { digits });
    }
    DIGITS.store(digits, AtomicOrdering::SeqCst);
    Ok(())
}

pub fn precision_digits() -> usize {
    DIGITS.load(AtomicOrdering::SeqCst)
}

/// Binary precision used for freshly created values.
pub fn working_bits() -> usize {
    digits_to_bits(precision_digits())
}

pub fn digits_to_bits(digits: usize) -> usize {
    let bits = (digits as f64 * std::f64::consts::LOG2_10).ceil() as usize + GUARD_BITS;
    bits.div_ceil(64) * 64
}

/// A finite high-precision real together with its binary precision.
#[derive(Clone)]
pub struct RealHP {
    value: BigFloat,
    bits: usize,
}

impl RealHP {
    fn wrap(value: BigFloat, bits: usize) -> Self {
        RealHP { value, bits }
    }

    pub fn zero() -> Self {
        Self::from_i64(0)
    }

    pub fn one() -> Self {
        Self::from_i64(1)
    }

    pub fn from_f64(x: f64) -> Self {
        Self::from_f64_prec(x, working_bits())
    }

    pub fn from_f64_prec(x: f64, bits: usize) -> Self {
        Self::wrap(BigFloat::from_f64(x, bits), bits)
    }

    pub fn from_i64(x: i64) -> Self {
        Self::from_i64_prec(x, working_bits())
    }

    pub fn from_i64_prec(x: i64, bits: usize) -> Self {
        Self::wrap(BigFloat::from_i64(x, bits), bits)
    }

    /// `num / den` rounded to working precision.
    pub fn ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num) / Self::from_i64(den)
    }

    pub fn from_bigint_prec(x: &BigInt, bits: usize) -> Self {
        let v = with_consts(|cc| BigFloat::parse(&x.to_string(), Radix::Dec, bits, RM, cc));
        Self::wrap(v, bits)
    }

    pub fn from_bigint(x: &BigInt) -> Self {
        Self::from_bigint_prec(x, working_bits())
    }

    pub fn from_rational_prec(x: &BigRational, bits: usize) -> Self {
        Self::from_bigint_prec(x.numer(), bits) / Self::from_bigint_prec(x.denom(), bits)
    }

    pub fn from_rational(x: &BigRational) -> Self {
        Self::from_rational_prec(x, working_bits())
    }

    /// Parses a decimal literal such as `-1.25e-3`.
    pub fn parse(s: &str) -> Option<Self> {
        Self::parse_prec(s, working_bits())
    }

    pub fn parse_prec(s: &str, bits: usize) -> Option<Self> {
        let t = s.trim();
        if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit() || b"+-.eE".contains(&b)) {
            return None;
        }
        let v = with_consts(|cc| BigFloat::parse(t, Radix::Dec, bits, RM, cc));
        if v.is_nan() || v.is_inf() {
            None
        } else {
            Some(Self::wrap(v, bits))
        }
    }

    pub fn pi() -> Self {
        Self::pi_prec(working_bits())
    }

    pub fn pi_prec(bits: usize) -> Self {
        Self::wrap(with_consts(|cc| cc.pi(bits, RM)), bits)
    }

    pub fn precision_bits(&self) -> usize {
        self.bits
    }

    /// Copy of `self` re-rounded to `bits`.
    pub fn with_bits(&self, bits: usize) -> Self {
        let mut v = self.value.clone();
        v.set_precision(bits, RM).expect("valid precision");
        Self::wrap(v, bits)
    }

    pub fn is_finite(&self) -> bool {
        !(self.value.is_nan() || self.value.is_inf())
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        !self.is_zero() && self.value.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        !self.is_zero() && self.value.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.value.is_int()
    }

    pub fn abs(&self) -> Self {
        Self::wrap(self.value.abs(), self.bits)
    }

    pub fn recip(&self) -> Self {
        Self::wrap(self.value.reciprocal(self.bits, RM), self.bits)
    }

    pub fn sqrt(&self) -> Self {
        Self::wrap(self.value.sqrt(self.bits, RM), self.bits)
    }

    pub fn ln(&self) -> Self {
        let v = with_consts(|cc| self.value.ln(self.bits, RM, cc));
        Self::wrap(v, self.bits)
    }

    pub fn exp(&self) -> Self {
        let v = with_consts(|cc| self.value.exp(self.bits, RM, cc));
        Self::wrap(v, self.bits)
    }

    pub fn sin(&self) -> Self {
        let v = with_consts(|cc| self.value.sin(self.bits, RM, cc));
        Self::wrap(v, self.bits)
    }

    /// `self^k` for a signed integer exponent.
    pub fn powi(&self, k: i64) -> Self {
        let p = Self::wrap(self.value.powi(k.unsigned_abs() as usize, self.bits, RM), self.bits);
        if k < 0 {
            p.recip()
        } else {
            p
        }
    }

    /// `self^y` for `self > 0`. Integer exponents take the exact
    /// repeated-squaring path.
    pub fn powf(&self, y: &RealHP) -> Self {
        if y.is_integer() {
            if let Some(k) = y.to_i64() {
                if k.unsigned_abs() <= 1 << 20 {
                    return self.powi(k);
                }
            }
        }
        let bits = self.bits.max(y.bits);
        let v = with_consts(|cc| self.value.pow(&y.value, bits, RM, cc));
        Self::wrap(v, bits)
    }

    pub fn max(&self, other: &Self) -> Self {
        if self >= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    pub fn min(&self, other: &Self) -> Self {
        if self <= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    pub fn floor(&self) -> Self {
        Self::wrap(self.value.floor(), self.bits)
    }

    /// Integer value when `self` is an integer that fits in `i64`.
    pub fn to_i64(&self) -> Option<i64> {
        if !self.is_integer() {
            return None;
        }
        let f = self.to_f64();
        if f.abs() < 9.0e15 {
            Some(f as i64)
        } else {
            None
        }
    }

    /// Nearest `f64` (correct to within one ulp).
    pub fn to_f64(&self) -> f64 {
        if self.value.is_nan() {
            return f64::NAN;
        }
        if self.value.is_inf() {
            return if self.value.is_inf_pos() { f64::INFINITY } else { f64::NEG_INFINITY };
        }
        if self.value.is_zero() {
            return 0.0;
        }
        let (words, _, sign, exp, _) = self.value.as_raw_parts().expect("finite value");
        let top = words.len() - 1;
        let mut m = words[top] as f64;
        if top > 0 {
            m += words[top - 1] as f64 / 18446744073709551616.0;
        }
        // value = 0.mantissa * 2^exp with a 64-bit top word
        let e = exp - 64;
        let f = if e < -1000 {
            m * 2f64.powi(-1000) * 2f64.powi(e + 1000)
        } else if e > 960 {
            m * 2f64.powi(960) * 2f64.powi(e - 960)
        } else {
            m * 2f64.powi(e)
        };
        match sign {
            Sign::Neg => -f,
            Sign::Pos => f,
        }
    }

    /// Scientific notation with `digits` significant decimal digits.
    pub fn to_sci_string(&self, digits: usize) -> String {
        let digits = digits.max(1);
        if self.is_zero() {
            return format!("{:.*}e0", digits - 1, 0.0);
        }
        let bits = self.bits.max(digits_to_bits(digits));
        let x = self.with_bits(bits);
        let ten = RealHP::from_i64_prec(10, bits);
        let mag = x.abs();
        let mut e10 = (mag.ln() / ten.ln()).floor().to_f64() as i64;
        let mut scaled = &mag / &ten.powi(e10);
        if scaled >= ten {
            scaled = &scaled / &ten;
            e10 += 1;
        } else if scaled < RealHP::from_i64_prec(1, bits) {
            scaled = &scaled * &ten;
            e10 -= 1;
        }
        // integer mantissa with `digits` digits, rounded half-even by BigFloat
        let shifted = (&scaled * &ten.powi(digits as i64 - 1)).value.round(0, RM);
        let mut int_digits = with_consts(|cc| shifted.format(Radix::Dec, RM, cc))
            .map(|s| decimal_integer(&s))
            .unwrap_or_default();
        if int_digits.len() > digits {
            int_digits.truncate(digits);
            e10 += 1;
        }
        let sign = if self.is_negative() { "-" } else { "" };
        let (head, tail) = int_digits.split_at(1);
        if tail.is_empty() {
            format!("{sign}{head}e{e10}")
        } else {
            format!("{sign}{head}.{tail}e{e10}")
        }
    }
}

/// Expands astro-float's `d.ddd…e+k` formatting of an integer into its digits.
fn decimal_integer(s: &str) -> String {
    let (mant, exp) = match s.split_once('e') {
        Some((m, e)) => (m, e.parse::<i64>().unwrap_or(0)),
        None => (s, 0),
    };
    let mant = mant.trim_start_matches('-');
    let (int_part, frac_part) = mant.split_once('.').unwrap_or((mant, ""));
    let mut digits = format!("{int_part}{frac_part}");
    let want = int_part.len() as i64 + exp;
    if want > digits.len() as i64 {
        digits.extend(std::iter::repeat_n('0', (want - digits.len() as i64) as usize));
    } else if want >= 0 {
        digits.truncate(want as usize);
    }
    let trimmed = digits.trim_start_matches('0');
    if trimmed.is_empty() {
        "0".to_string()
    } else {
        trimmed.to_string()
    }
}

impl fmt::Debug for RealHP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_sci_string(precision_digits()))
    }
}

impl fmt::Display for RealHP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(precision_digits());
        f.write_str(&self.to_sci_string(digits))
    }
}

impl From<f64> for RealHP {
    fn from(x: f64) -> Self {
        RealHP::from_f64(x)
    }
}

impl From<i64> for RealHP {
    fn from(x: i64) -> Self {
        RealHP::from_i64(x)
    }
}

impl From<&RealHP> for RealHP {
    fn from(x: &RealHP) -> Self {
        x.clone()
    }
}

impl PartialEq for RealHP {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value
    }
}

impl PartialOrd for RealHP {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.value.partial_cmp(&other.value)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $op:ident) => {
        impl $trait<&RealHP> for &RealHP {
            type Output = RealHP;
            fn $method(self, rhs: &RealHP) -> RealHP {
                let bits = self.bits.max(rhs.bits);
                RealHP::wrap(self.value.$op(&rhs.value, bits, RM), bits)
            }
        }
        impl $trait<RealHP> for RealHP {
            type Output = RealHP;
            fn $method(self, rhs: RealHP) -> RealHP {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&RealHP> for RealHP {
            type Output = RealHP;
            fn $method(self, rhs: &RealHP) -> RealHP {
                (&self).$method(rhs)
            }
        }
        impl $trait<RealHP> for &RealHP {
            type Output = RealHP;
            fn $method(self, rhs: RealHP) -> RealHP {
                self.$method(&rhs)
            }
        }
        impl $trait<f64> for &RealHP {
            type Output = RealHP;
            fn $method(self, rhs: f64) -> RealHP {
                self.$method(&RealHP::from_f64_prec(rhs, self.bits))
            }
        }
        impl $trait<f64> for RealHP {
            type Output = RealHP;
            fn $method(self, rhs: f64) -> RealHP {
                (&self).$method(rhs)
            }
        }
    };
}

binop!(Add, add, add);
binop!(Sub, sub, sub);
binop!(Mul, mul, mul);
binop!(Div, div, div);

impl Neg for RealHP {
    type Output = RealHP;
    fn neg(self) -> RealHP {
        RealHP::wrap(BigFloat::neg(&self.value), self.bits)
    }
}

impl Neg for &RealHP {
    type Output = RealHP;
    fn neg(self) -> RealHP {
        RealHP::wrap(BigFloat::neg(&self.value), self.bits)
    }
}

impl Sum for RealHP {
    fn sum<I: Iterator<Item = RealHP>>(iter: I) -> RealHP {
        iter.fold(RealHP::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a RealHP> for RealHP {
    fn sum<I: Iterator<Item = &'a RealHP>>(iter: I) -> RealHP {
        iter.fold(RealHP::zero(), |acc, x| acc + x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f64_round_trip() {
        for x in [1.0, -1234.5, 3.0 / 7.0, 1e-300, 6.02e23, -2.5e-12] {
            assert_eq!(RealHP::from_f64(x).to_f64(), x);
        }
        let third = RealHP::ratio(1, 3);
        assert!((third.to_f64() - 1.0 / 3.0).abs() < 1e-17);
    }

    #[test]
    fn working_precision_exceeds_request() {
        assert!(digits_to_bits(DEFAULT_DIGITS) >= 127 + GUARD_BITS);
        assert!(set_precision_digits(5).is_err());
    }

    #[test]
    fn scientific_formatting() {
        assert_eq!(RealHP::from_i64(190569292).to_sci_string(12), "1.90569292000e8");
        assert_eq!(RealHP::ratio(-1, 3).to_sci_string(5), "-3.3333e-1");
        assert_eq!(RealHP::ratio(2, 3).to_sci_string(3), "6.67e-1");
        assert_eq!(RealHP::from_f64(9.9999).to_sci_string(3), "1.00e1");
        assert_eq!(RealHP::zero().to_sci_string(3), "0.00e0");
        assert_eq!(RealHP::pi().to_sci_string(30), "3.14159265358979323846264338328e0");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(RealHP::parse("abc").is_none());
        assert!(RealHP::parse("").is_none());
        let x = RealHP::parse("-1.25e-3").unwrap();
        assert_eq!(x.to_f64(), -1.25e-3);
    }

    #[test]
    fn transcendental_identities() {
        let two = RealHP::from_i64(2);
        let err = (two.ln().exp() - &two).abs().to_f64();
        assert!(err < 1e-35);
        let half = RealHP::ratio(1, 2);
        let root = two.powf(&half);
        assert!((&root * &root - &two).abs().to_f64() < 1e-35);
        assert_eq!(two.powi(-2).to_f64(), 0.25);
    }
}
