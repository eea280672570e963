//! Canonical text form of operator polynomials.
//!
//! Terms are written `(re,im)*g1*g2^k`, joined by ` + `, in word order.
//! The zero polynomial prints as `0`. Parsing accepts factors in any order
//! and normal-orders them, so `print(parse(s))` is canonical.

use std::fmt;
use std::str::FromStr;

use super::error::AlgebraError;
use super::generator::GeneratorId;
use super::poly::OperatorPoly;
use super::scalar::{parse_rational, scalar, Scalar};
use super::structure::Algebra;

impl fmt::Display for OperatorPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (n, (word, c)) in self.terms().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({},{})", c.re, c.im)?;
            for &(g, pow) in word.runs() {
                if pow == 1 {
                    write!(f, "*{g}")?;
                } else {
                    write!(f, "*{g}^{pow}")?;
                }
            }
        }
        Ok(())
    }
}

impl FromStr for OperatorPoly {
    type Err = AlgebraError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact == "0" {
            return Ok(OperatorPoly::zero());
        }
        if compact.is_empty() {
            return Err(AlgebraError::Parse("empty input".into()));
        }
        let mut out = OperatorPoly::zero();
        for term in split_terms(&compact)? {
            out = &out + &parse_term(term)?;
        }
        Ok(out)
    }
}

fn split_terms(text: &str) -> Result<Vec<&str>, AlgebraError> {
    let mut terms = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in text.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(AlgebraError::Parse("unbalanced ')'".into()));
                }
            }
            '+' if depth == 0 => {
                terms.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(AlgebraError::Parse("unbalanced '('".into()));
    }
    terms.push(&text[start..]);
    if terms.iter().any(|t| t.is_empty()) {
        return Err(AlgebraError::Parse("empty term".into()));
    }
    Ok(terms)
}

fn parse_term(term: &str) -> Result<OperatorPoly, AlgebraError> {
    let bad = |msg: &str| AlgebraError::Parse(format!("{msg} in term `{term}`"));
    let rest = term.strip_prefix('(').ok_or_else(|| bad("expected '('"))?;
    let close = rest.find(')').ok_or_else(|| bad("expected ')'"))?;
    let (re, im) = rest[..close].split_once(',').ok_or_else(|| bad("expected (re,im)"))?;
    let coeff: Scalar = scalar(
        parse_rational(re).ok_or_else(|| bad("bad real part"))?,
        parse_rational(im).ok_or_else(|| bad("bad imaginary part"))?,
    );
    let mut word = Vec::new();
    let tail = &rest[close + 1..];
    if !tail.is_empty() {
        let tail = tail.strip_prefix('*').ok_or_else(|| bad("expected '*'"))?;
        for factor in tail.split('*') {
            let (name, pow) = match factor.split_once('^') {
                Some((n, p)) => (n, p.parse::<u32>().map_err(|_| bad("bad exponent"))?),
                None => (factor, 1),
            };
            let g = GeneratorId::from_symbol(name)
                .ok_or_else(|| bad(&format!("unknown generator `{name}`")))?;
            word.extend(std::iter::repeat_n(g, pow as usize));
        }
    }
    Ok(Algebra::standard().normal_order(&word).scale(&coeff))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::{imag_unit, rational, real};
    use crate::algebra::structure::normal_order;
    use GeneratorId::*;

    #[test]
    fn prints_canonical_form() {
        let x = &normal_order(&[QHat, QHat, PHat]).scale(&real(rational(1, 2)))
            + &normal_order(&[A, ATilde]).scale(&imag_unit());
        assert_eq!(x.to_string(), "(0,1)*a*at + (1/2,0)*q^2*p");
        assert_eq!(OperatorPoly::zero().to_string(), "0");
        assert_eq!(OperatorPoly::one().to_string(), "(1,0)");
    }

    #[test]
    fn parse_reorders_and_round_trips() {
        let x: OperatorPoly = "(1,0)*bt*a".parse().unwrap();
        assert_eq!(x.to_string(), "(0,1) + (1,0)*a*bt");
        let back: OperatorPoly = x.to_string().parse().unwrap();
        assert_eq!(back, x);
        let y: OperatorPoly = "(-3/4, 2) * s1^2 + (1,0)".parse().unwrap();
        assert_eq!(y.to_string(), "(1,0) + (-3/4,2)*s1^2");
    }

    #[test]
    fn parse_errors() {
        for bad in ["", "(1,0)*z", "(1 0)", "(1,0)q", "(1,0)*a^x", "(1,0) + ", "((1,0)"] {
            assert!(bad.parse::<OperatorPoly>().is_err(), "accepted `{bad}`");
        }
    }
}
