//! Exact complex-rational coefficients.

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

pub type Rational = BigRational;

/// Exact complex scalar `re + i·im` with rational parts.
pub type Scalar = Complex<BigRational>;

pub fn rational(numer: i64, denom: i64) -> Rational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn scalar(re: Rational, im: Rational) -> Scalar {
    Complex::new(re, im)
}

pub fn real(re: Rational) -> Scalar {
    Complex::new(re, Rational::zero())
}

pub fn imag_unit() -> Scalar {
    Complex::new(Rational::zero(), Rational::one())
}

pub fn scalar_one() -> Scalar {
    Complex::new(Rational::one(), Rational::zero())
}

pub fn to_c64(s: &Scalar) -> Complex64 {
    Complex64::new(rational_to_f64(&s.re), rational_to_f64(&s.im))
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Converts a finite double to the rational with the same shortest
/// round-trip decimal expansion, so `0.2` becomes `1/5` rather than the
/// nearest dyadic fraction.
pub fn rational_from_f64(x: f64) -> Option<Rational> {
    if !x.is_finite() {
        return None;
    }
    parse_decimal(&format!("{x}"))
}

/// Parses `[-]digits[.digits]` or `n/d` into an exact rational.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    if let Some((n, d)) = text.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    parse_decimal(text)
}

fn parse_decimal(text: &str) -> Option<Rational> {
    let (negative, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    let (whole, frac) = body.split_once('.').unwrap_or((body, ""));
    if whole.is_empty() && frac.is_empty() {
        return None;
    }
    if !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{whole}{frac}");
    let numer: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().ok()? };
    let denom = num_traits::pow(BigInt::from(10), frac.len());
    let value = BigRational::new(numer, denom);
    Some(if negative { -value } else { value })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shortest_decimal_conversion() {
        assert_eq!(rational_from_f64(0.2), Some(rational(1, 5)));
        assert_eq!(rational_from_f64(-1.5), Some(rational(-3, 2)));
        assert_eq!(rational_from_f64(3.0), Some(int(3)));
        assert_eq!(rational_from_f64(1e-7), Some(rational(1, 10_000_000)));
        assert_eq!(rational_from_f64(f64::NAN), None);
    }

    #[test]
    fn parses_fractions() {
        assert_eq!(parse_rational("-7/21"), Some(rational(-1, 3)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }
}
