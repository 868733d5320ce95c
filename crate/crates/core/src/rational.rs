//! Exact rational scalars, outward-rounded intervals, and decimal rendering.
//!
//! Every lattice decision and certificate bound in this crate is computed
//! over [`Rational`]; floating point appears only in the numeric min-norm
//! solver. Decimal strings produced here are renderings of exact values,
//! never the values themselves.

use std::fmt;
use std::str::FromStr;

use num::bigint::{BigInt, Sign};
use num::{BigRational, One, Signed, Zero};

/// Exact arbitrary-precision rational scalar.
pub type Rational = BigRational;

/// Shorthand for a rational from an integer pair. Panics on zero denominator.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Rational from an integer.
pub fn rat_int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// 2^(-exp) as an exact rational, for exp >= 0.
pub fn pow2_neg(exp: u64) -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << usize::try_from(exp).expect("exponent fits"))
}

/// Error from parsing a rational token.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseRationalError {
    token: String,
}

impl fmt::Display for ParseRationalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid rational `{}`: expected `p`, `p/q`, or a plain decimal", self.token)
    }
}

impl std::error::Error for ParseRationalError {}

/// Parses `p`, `p/q`, or a plain decimal such as `1.25` into an exact rational.
pub fn parse_rational(token: &str) -> Result<Rational, ParseRationalError> {
    let err = || ParseRationalError { token: token.to_owned() };
    let s = token.trim();
    if s.is_empty() {
        return Err(err());
    }
    if let Some((num, den)) = s.split_once('/') {
        let n = BigInt::from_str(num.trim()).map_err(|_| err())?;
        let d = BigInt::from_str(den.trim()).map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let int = if int.is_empty() || int == "-" { format!("{int}0") } else { int.to_owned() };
        let negative = int.starts_with('-');
        let i = BigInt::from_str(&int).map_err(|_| err())?;
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        let f = BigInt::from_str(frac).map_err(|_| err())?;
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let mag = i.magnitude() * scale.magnitude() + f.magnitude();
        let sign = if negative { Sign::Minus } else { Sign::Plus };
        return Ok(Rational::new(BigInt::from_biguint(sign, mag), scale));
    }
    let n = BigInt::from_str(s).map_err(|_| err())?;
    Ok(Rational::from_integer(n))
}

/// Canonical `p/q` string (plain integer when the denominator is 1).
pub fn format_rational(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Decimal rendering at 12 significant digits, round half to even.
///
/// The output is annotated downstream as a rendering; exact values are always
/// carried alongside it in reports and certificates.
pub fn decimal_rendering(value: &Rational) -> String {
    decimal_digits(value, 12)
}

fn decimal_digits(value: &Rational, digits: u32) -> String {
    if value.is_zero() {
        return "0".to_owned();
    }
    let negative = value.is_negative();
    let p = value.numer().magnitude().clone();
    let q = value.denom().magnitude().clone();

    // Decimal exponent e with 10^e <= |v| < 10^(e+1).
    let mut e: i64 = p.to_string().len() as i64 - q.to_string().len() as i64;
    let ten = num::BigUint::from(10u32);
    let scaled = |e: i64| -> (num::BigUint, num::BigUint) {
        // |v| / 10^e as a fraction
        if e >= 0 {
            (p.clone(), q.clone() * ten.pow(e as u32))
        } else {
            (p.clone() * ten.pow((-e) as u32), q.clone())
        }
    };
    {
        let (n, d) = scaled(e);
        if n < d {
            e -= 1;
        } else if n >= &d * &ten {
            e += 1;
        }
    }

    // Mantissa m = round(|v| * 10^(digits-1-e)), half to even.
    let shift = digits as i64 - 1 - e;
    let (num_s, den_s) = {
        if shift >= 0 {
            (p * ten.pow(shift as u32), q)
        } else {
            (p, q * ten.pow((-shift) as u32))
        }
    };
    let quot = &num_s / &den_s;
    let rem = &num_s % &den_s;
    let twice = &rem * 2u32;
    let mut mantissa = if twice > den_s || (twice == den_s && (&quot % 2u32) == num::BigUint::one())
    {
        quot + 1u32
    } else {
        quot
    };
    // Rounding can carry into an extra digit (e.g. 999... -> 1000...).
    if mantissa.to_string().len() as u32 > digits {
        mantissa /= &ten;
        e += 1;
    }

    let digits_str = mantissa.to_string();
    debug_assert_eq!(digits_str.len() as u32, digits);
    let sign = if negative { "-" } else { "" };
    if (-4..15).contains(&e) {
        if e >= 0 {
            let point = (e + 1) as usize;
            if point >= digits_str.len() {
                let zeros = "0".repeat(point - digits_str.len());
                format!("{sign}{digits_str}{zeros}")
            } else {
                format!("{sign}{}.{}", &digits_str[..point], &digits_str[point..])
            }
        } else {
            let zeros = "0".repeat((-e - 1) as usize);
            format!("{sign}0.{zeros}{digits_str}")
        }
    } else {
        format!("{sign}{}.{}e{}", &digits_str[..1], &digits_str[1..], e)
    }
}

/// Closed interval of exact rationals, `lo <= hi`.
///
/// Arithmetic here needs no outward rounding (values are exact); the interval
/// expresses incomplete knowledge of a series tail, not roundoff.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalInterval {
    lo: Rational,
    hi: Rational,
}

impl RationalInterval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "interval bounds out of order");
        Self { lo, hi }
    }

    pub fn point(value: Rational) -> Self {
        Self { lo: value.clone(), hi: value }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn contains(&self, value: &Rational) -> bool {
        &self.lo <= value && value <= &self.hi
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(&self.lo + &other.lo, &self.hi + &other.hi)
    }

    /// Scales by a nonnegative rational.
    pub fn scale(&self, factor: &Rational) -> Self {
        assert!(!factor.is_negative(), "scale expects a nonnegative factor");
        Self::new(&self.lo * factor, &self.hi * factor)
    }

    /// Widens the upper endpoint by a nonnegative slack.
    pub fn widen_hi(&self, slack: &Rational) -> Self {
        assert!(!slack.is_negative(), "widen_hi expects nonnegative slack");
        Self::new(self.lo.clone(), &self.hi + slack)
    }
}

impl fmt::Display for RationalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", format_rational(&self.lo), format_rational(&self.hi))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("3").unwrap(), rat_int(3));
        assert_eq!(parse_rational("-7/4").unwrap(), rat(-7, 4));
        assert_eq!(parse_rational(" 1/2 ").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("1.25").unwrap(), rat(5, 4));
        assert_eq!(parse_rational("-0.5").unwrap(), rat(-1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn format_canonical() {
        assert_eq!(format_rational(&rat(4, 2)), "2");
        assert_eq!(format_rational(&rat(-3, 9)), "-1/3");
    }

    #[test]
    fn pow2() {
        assert_eq!(pow2_neg(0), rat_int(1));
        assert_eq!(pow2_neg(5), rat(1, 32));
    }

    #[test]
    fn decimal_basic() {
        assert_eq!(decimal_rendering(&rat(1, 3)), "0.333333333333");
        assert_eq!(decimal_rendering(&rat(2, 3)), "0.666666666667");
        assert_eq!(decimal_rendering(&rat_int(1)), "1.00000000000");
        assert_eq!(decimal_rendering(&rat(145, 1024)), "0.141601562500");
        assert_eq!(decimal_rendering(&rat_int(0)), "0");
        assert_eq!(decimal_rendering(&rat(-1, 8)), "-0.125000000000");
    }

    #[test]
    fn decimal_half_even_ties() {
        // Tie at the 12th significant digit: ...0.5 rounds to even.
        let even = rat(200000000001i64, 2); // 100000000000.5
        assert_eq!(decimal_rendering(&even), "100000000000");
        let odd = rat(200000000003i64, 2); // 100000000001.5
        assert_eq!(decimal_rendering(&odd), "100000000002");
    }

    #[test]
    fn decimal_carry_and_exponent() {
        // 0.99999999999995 rounds up and carries into a new digit.
        let v = parse_rational("0.999999999999995").unwrap();
        assert_eq!(decimal_rendering(&v), "1.00000000000");
        let big = Rational::from_integer(BigInt::from(10u32).pow(20));
        assert_eq!(decimal_rendering(&big), "1.00000000000e20");
        let tiny = Rational::new(BigInt::one(), BigInt::from(10u32).pow(7));
        assert_eq!(decimal_rendering(&tiny), "1.00000000000e-7");
    }

    #[test]
    fn interval_ops() {
        let a = RationalInterval::new(rat(1, 4), rat(1, 2));
        let b = RationalInterval::point(rat(1, 4));
        let sum = a.add(&b);
        assert_eq!(sum, RationalInterval::new(rat(1, 2), rat(3, 4)));
        assert!(sum.contains(&rat(5, 8)));
        assert!(!sum.contains(&rat(1, 4)));
        let widened = b.widen_hi(&rat(1, 8));
        assert_eq!(widened, RationalInterval::new(rat(1, 4), rat(3, 8)));
    }
}
