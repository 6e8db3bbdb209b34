use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::AlgebraError;

/// A real number that stays exact as long as every operand is exact.
#[derive(Debug, Clone)]
pub enum Real {
    Exact(BigRational),
    Approx(f64),
}

impl Real {
    pub fn from_int(n: i64) -> Self {
        Real::Exact(BigRational::from_integer(n.into()))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Real::Exact(BigRational::new(n.into(), d.into()))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Real::Exact(q) => rational_to_f64(q),
            Real::Approx(x) => *x,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Real::Exact(_))
    }

    pub fn as_exact(&self) -> Option<&BigRational> {
        match self {
            Real::Exact(q) => Some(q),
            Real::Approx(_) => None,
        }
    }

    /// Zero test: exact for rationals, `|x| ≤ tol` otherwise.
    pub fn is_zero_within(&self, tol: f64) -> bool {
        match self {
            Real::Exact(q) => q.is_zero(),
            Real::Approx(x) => x.abs() <= tol,
        }
    }

    /// `self ≥ 0`, allowing `-tol` slack for approximate values.
    pub fn is_nonnegative_within(&self, tol: f64) -> bool {
        match self {
            Real::Exact(q) => !q.is_negative(),
            Real::Approx(x) => *x >= -tol,
        }
    }

    pub fn is_negative_exact(&self) -> bool {
        match self {
            Real::Exact(q) => q.is_negative(),
            Real::Approx(x) => *x < 0.0,
        }
    }

    pub fn approx_eq(&self, other: &Real, tol: f64) -> bool {
        match (self, other) {
            (Real::Exact(a), Real::Exact(b)) => a == b,
            _ => (self.to_f64() - other.to_f64()).abs() <= tol,
        }
    }

    pub fn pow(&self, k: usize) -> Real {
        match self {
            Real::Exact(q) => Real::Exact(num_traits::pow(q.clone(), k)),
            Real::Approx(x) => Real::Approx(x.powi(k as i32)),
        }
    }
}

pub(crate) fn rational_to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        // Fall back through a scaled quotient for huge numerators/denominators.
        let n = q.numer().to_f64().unwrap_or(f64::NAN);
        let d = q.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Parses `"3"`, `"-1/3"`, `"0.25"`, `"1e-3"` and `"2.5E2"` exactly.
pub fn parse_rational(s: &str) -> Result<BigRational, AlgebraError> {
    let bad = || AlgebraError::BadNumber(s.to_string());
    let t = s.trim();
    if let Some((n, d)) = t.split_once('/') {
        let n = parse_rational(n)?;
        let d = parse_rational(d)?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(n / d);
    }
    let (mantissa, exp) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (t, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if int.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all = format!("{int}{frac}");
    let n: BigInt = if all.is_empty() {
        BigInt::zero()
    } else {
        all.parse().map_err(|_| bad())?
    };
    let scale = exp - frac.len() as i32;
    let ten = BigInt::from(10);
    let mut q = BigRational::from_integer(n);
    if scale >= 0 {
        q *= num_traits::pow(ten, scale as usize);
    } else {
        q /= num_traits::pow(ten, (-scale) as usize);
    }
    Ok(if neg { -q } else { q })
}

/// Renders `p` or `p/q`.
pub fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// 17 significant digits, the round-trip precision of `f64`.
pub fn format_f64(x: f64) -> String {
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x.is_nan() {
        return "nan".into();
    }
    format_sig(x, 17)
}

fn format_sig(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".into();
    }
    let mag = x.abs().log10().floor() as i32;
    let decimals = (digits as i32 - 1 - mag).max(0) as usize;
    if (-5..17).contains(&mag) {
        let s = format!("{:.*}", decimals, x);
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        format!("{:.*e}", digits - 1, x)
    }
}

impl FromStr for Real {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_rational(s).map(Real::Exact)
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Real::Exact(q) => write!(f, "{}", format_rational(q)),
            Real::Approx(x) => write!(f, "{}", format_f64(*x)),
        }
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Real::Exact(a), Real::Exact(b)) => a == b,
            _ => self.to_f64() == other.to_f64(),
        }
    }
}

impl From<BigRational> for Real {
    fn from(q: BigRational) -> Self {
        Real::Exact(q)
    }
}

impl From<f64> for Real {
    fn from(x: f64) -> Self {
        Real::Approx(x)
    }
}

macro_rules! real_binop {
    ($tr:ident, $m:ident, $op:tt) => {
        impl $tr for Real {
            type Output = Real;
            fn $m(self, rhs: Real) -> Real {
                (&self).$m(&rhs)
            }
        }

        impl<'a> $tr<&'a Real> for &'a Real {
            type Output = Real;
            fn $m(self, rhs: &'a Real) -> Real {
                match (self, rhs) {
                    (Real::Exact(a), Real::Exact(b)) => Real::Exact(a $op b),
                    _ => Real::Approx(self.to_f64() $op rhs.to_f64()),
                }
            }
        }
    };
}

real_binop!(Add, add, +);
real_binop!(Sub, sub, -);
real_binop!(Mul, mul, *);
real_binop!(Div, div, /);

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        match self {
            Real::Exact(q) => Real::Exact(-q),
            Real::Approx(x) => Real::Approx(-x),
        }
    }
}

impl Zero for Real {
    fn zero() -> Self {
        Real::Exact(BigRational::zero())
    }

    fn is_zero(&self) -> bool {
        match self {
            Real::Exact(q) => q.is_zero(),
            Real::Approx(x) => *x == 0.0,
        }
    }
}

impl One for Real {
    fn one() -> Self {
        Real::Exact(BigRational::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_exactly() {
        assert_eq!(
            parse_rational("0.3").unwrap(),
            BigRational::new(3.into(), 10.into())
        );
        assert_eq!(
            parse_rational("-1/3").unwrap(),
            BigRational::new((-1).into(), 3.into())
        );
        assert_eq!(
            parse_rational("2.5E2").unwrap(),
            BigRational::from_integer(250.into())
        );
        assert_eq!(
            parse_rational("1e-3").unwrap(),
            BigRational::new(1.into(), 1000.into())
        );
        assert_eq!(
            parse_rational(".5").unwrap(),
            BigRational::new(1.into(), 2.into())
        );
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn exactness_propagates() {
        let a = Real::ratio(1, 3);
        let b = Real::ratio(1, 6);
        assert_eq!(&a + &b, Real::ratio(1, 2));
        assert!((&a + &b).is_exact());
        let c = Real::Approx(0.5);
        assert!(!(&a * &c).is_exact());
        assert!(((&a * &c).to_f64() - 1.0 / 6.0).abs() < 1e-15);
    }

    #[test]
    fn formatting() {
        assert_eq!(Real::ratio(1, 2).to_string(), "1/2");
        assert_eq!(Real::from_int(-4).to_string(), "-4");
        assert_eq!(format_f64(0.25), "0.25");
        assert_eq!(format_f64(1.0 / 3.0), "0.33333333333333331");
        assert_eq!(format_f64(f64::INFINITY), "inf");
    }
}
