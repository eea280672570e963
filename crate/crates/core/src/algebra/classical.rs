use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, ToPrimitive, Zero};

use super::error::AlgebraError;
use super::generator::GeneratorId;
use super::poly::{OperatorPoly, Word};
use super::scalar::{int, real, Rational};

/// Commutative polynomial in the classical pair `(a, b)` with rational
/// coefficients. Keys are `(power of a, power of b)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClassicalPoly {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl ClassicalPoly {
    pub fn zero() -> Self {
        ClassicalPoly::default()
    }

    pub fn constant(c: Rational) -> Self {
        ClassicalPoly::monomial(c, 0, 0)
    }

    pub fn a() -> Self {
        ClassicalPoly::monomial(Rational::one(), 1, 0)
    }

    pub fn b() -> Self {
        ClassicalPoly::monomial(Rational::one(), 0, 1)
    }

    pub fn monomial(c: Rational, a_pow: u32, b_pow: u32) -> Self {
        let mut p = ClassicalPoly::zero();
        p.add_term(a_pow, b_pow, c);
        p
    }

    fn add_term(&mut self, a_pow: u32, b_pow: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((a_pow, b_pow)).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(a_pow, b_pow));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|(i, j)| i + j).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = ClassicalPoly::zero();
        for (&(i, j), k) in &self.terms {
            out.add_term(i, j, k * c);
        }
        out
    }

    pub fn d_da(&self) -> Self {
        let mut out = ClassicalPoly::zero();
        for (&(i, j), c) in &self.terms {
            if i > 0 {
                out.add_term(i - 1, j, c * int(i as i64));
            }
        }
        out
    }

    pub fn d_db(&self) -> Self {
        let mut out = ClassicalPoly::zero();
        for (&(i, j), c) in &self.terms {
            if j > 0 {
                out.add_term(i, j - 1, c * int(j as i64));
            }
        }
        out
    }

    pub fn evaluate(&self, a: f64, b: f64) -> f64 {
        self.terms
            .iter()
            .map(|(&(i, j), c)| c.to_f64().unwrap_or(f64::NAN) * a.powi(i as i32) * b.powi(j as i32))
            .sum()
    }

    /// Embeds as a multiplication operator `Σ c a^i b^j`.
    pub fn to_operator(&self) -> OperatorPoly {
        let mut out = OperatorPoly::zero();
        for (&(i, j), c) in &self.terms {
            let word = classical_word(i, j, &[]);
            out.add_term(word, real(c.clone()));
        }
        out
    }

    /// Inverse of [`ClassicalPoly::to_operator`]. Fails on tilde or quantum
    /// generators and on non-real coefficients.
    pub fn from_operator(x: &OperatorPoly) -> Result<Self, AlgebraError> {
        let mut out = ClassicalPoly::zero();
        for (w, c) in x.terms() {
            if let Some(&(g, _)) = w.runs().iter().find(|(g, _)| !matches!(g, GeneratorId::A | GeneratorId::B)) {
                return Err(AlgebraError::NonClassical(g));
            }
            if !c.im.is_zero() {
                return Err(AlgebraError::ComplexClassicalCoefficient);
            }
            out.add_term(w.power_of(GeneratorId::A), w.power_of(GeneratorId::B), c.re.clone());
        }
        Ok(out)
    }
}

fn classical_word(a_pow: u32, b_pow: u32, tail: &[GeneratorId]) -> Word {
    let mut gens = Vec::new();
    gens.extend(std::iter::repeat_n(GeneratorId::A, a_pow as usize));
    gens.extend(std::iter::repeat_n(GeneratorId::B, b_pow as usize));
    gens.extend_from_slice(tail);
    Word::from_sorted(&gens).expect("a^i b^j tail is canonical")
}

impl Add for &ClassicalPoly {
    type Output = ClassicalPoly;
    fn add(self, rhs: &ClassicalPoly) -> ClassicalPoly {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }
}

impl Sub for &ClassicalPoly {
    type Output = ClassicalPoly;
    fn sub(self, rhs: &ClassicalPoly) -> ClassicalPoly {
        self + &(-rhs)
    }
}

impl Neg for &ClassicalPoly {
    type Output = ClassicalPoly;
    fn neg(self) -> ClassicalPoly {
        self.scale(&-Rational::one())
    }
}

impl Mul for &ClassicalPoly {
    type Output = ClassicalPoly;
    fn mul(self, rhs: &ClassicalPoly) -> ClassicalPoly {
        let mut out = ClassicalPoly::zero();
        for (&(i, j), c) in &self.terms {
            for (&(k, l), d) in &rhs.terms {
                out.add_term(i + k, j + l, c * d);
            }
        }
        out
    }
}

/// `[f, g]_PB = ∂f/∂b ∂g/∂a - ∂f/∂a ∂g/∂b`, so that `[b, a]_PB = 1`.
pub fn poisson_bracket(f: &ClassicalPoly, g: &ClassicalPoly) -> ClassicalPoly {
    &(&f.d_db() * &g.d_da()) - &(&f.d_da() * &g.d_db())
}

/// Lifts a classical observable to its Liouvillian `f~ = i[f, .]_PB`,
/// written as `(∂f/∂b)·bt + (∂f/∂a)·at` with multiplication factors on the
/// left.
pub fn tilde_lift(f: &ClassicalPoly) -> OperatorPoly {
    let mut out = OperatorPoly::zero();
    for (&(i, j), c) in f.d_db().terms() {
        out.add_term(classical_word(i, j, &[GeneratorId::BTilde]), real(c.clone()));
    }
    for (&(i, j), c) in f.d_da().terms() {
        out.add_term(classical_word(i, j, &[GeneratorId::ATilde]), real(c.clone()));
    }
    out
}

/// [`tilde_lift`] for an operator polynomial that must be purely classical.
pub fn tilde_lift_operator(f: &OperatorPoly) -> Result<OperatorPoly, AlgebraError> {
    Ok(tilde_lift(&ClassicalPoly::from_operator(f)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::rational;
    use crate::algebra::structure::normal_order;
    use GeneratorId::*;

    #[test]
    fn bracket_examples() {
        let (a, b) = (ClassicalPoly::a(), ClassicalPoly::b());
        assert_eq!(poisson_bracket(&b, &a), ClassicalPoly::constant(int(1)));
        assert!(poisson_bracket(&a, &a).is_zero());
        let half_a2 = ClassicalPoly::monomial(rational(1, 2), 2, 0);
        assert_eq!(poisson_bracket(&half_a2, &b), a.scale(&int(-1)));
    }

    #[test]
    fn bracket_matches_finite_differences() {
        // f = a^2 b / 2 - b^3, g = a b^2 + 3 a
        let f = &ClassicalPoly::monomial(rational(1, 2), 2, 1) - &ClassicalPoly::monomial(int(1), 0, 3);
        let g = &ClassicalPoly::monomial(int(1), 1, 2) + &ClassicalPoly::monomial(int(3), 1, 0);
        let pb = poisson_bracket(&f, &g);
        let h = 1e-5;
        for &(a, b) in &[(0.3, -1.2), (1.7, 0.4), (-2.0, 2.5)] {
            let d = |p: &ClassicalPoly, da: f64, db: f64| {
                (p.evaluate(a + da, b + db) - p.evaluate(a - da, b - db)) / (2.0 * h)
            };
            let fd = d(&f, 0.0, h) * d(&g, h, 0.0) - d(&f, h, 0.0) * d(&g, 0.0, h);
            assert!((fd - pb.evaluate(a, b)).abs() < 1e-6, "{fd} vs {}", pb.evaluate(a, b));
        }
    }

    #[test]
    fn lift_examples() {
        assert_eq!(tilde_lift(&ClassicalPoly::a()), OperatorPoly::generator(ATilde));
        assert!(tilde_lift(&ClassicalPoly::constant(rational(7, 3))).is_zero());
        // a^2/(2m) with m = 3 lifts to a·at/3
        let h = ClassicalPoly::monomial(rational(1, 6), 2, 0);
        assert_eq!(tilde_lift(&h), normal_order(&[A, ATilde]).scale(&real(rational(1, 3))));
        // b^2 lifts to 2 b·bt
        let b2 = ClassicalPoly::monomial(int(1), 0, 2);
        assert_eq!(tilde_lift(&b2), normal_order(&[B, BTilde]).scale(&real(int(2))));
    }

    #[test]
    fn lift_rejects_non_classical() {
        let x = OperatorPoly::generator(QHat);
        assert_eq!(tilde_lift_operator(&x), Err(AlgebraError::NonClassical(QHat)));
        let y = OperatorPoly::generator(ATilde);
        assert_eq!(tilde_lift_operator(&y), Err(AlgebraError::NonClassical(ATilde)));
        assert!(tilde_lift_operator(&ClassicalPoly::b().to_operator()).is_ok());
    }
}
