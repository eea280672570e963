use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use super::generator::GeneratorId;
use super::scalar::{scalar_one, Scalar};
use super::structure::Algebra;

/// A normal-ordered product of generators, stored as `(generator, power)`
/// runs in canonical order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<(GeneratorId, u32)>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn single(g: GeneratorId) -> Self {
        Word(vec![(g, 1)])
    }

    /// Builds a word from generators that are already in canonical order.
    /// Returns `None` if the sequence is not sorted.
    pub fn from_sorted(gens: &[GeneratorId]) -> Option<Self> {
        if gens.windows(2).any(|w| w[0] > w[1]) {
            return None;
        }
        let mut runs: Vec<(GeneratorId, u32)> = Vec::new();
        for &g in gens {
            match runs.last_mut() {
                Some((last, pow)) if *last == g => *pow += 1,
                _ => runs.push((g, 1)),
            }
        }
        Some(Word(runs))
    }

    pub fn from_runs(runs: Vec<(GeneratorId, u32)>) -> Option<Self> {
        let expanded: Vec<GeneratorId> =
            runs.iter().flat_map(|&(g, p)| std::iter::repeat_n(g, p as usize)).collect();
        Word::from_sorted(&expanded)
    }

    pub fn runs(&self) -> &[(GeneratorId, u32)] {
        &self.0
    }

    pub fn expand(&self) -> Vec<GeneratorId> {
        self.0
            .iter()
            .flat_map(|&(g, p)| std::iter::repeat_n(g, p as usize))
            .collect()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, p)| p).sum()
    }

    pub fn power_of(&self, g: GeneratorId) -> u32 {
        self.0.iter().find(|&&(h, _)| h == g).map_or(0, |&(_, p)| p)
    }

    pub fn contains(&self, g: GeneratorId) -> bool {
        self.power_of(g) > 0
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    /// Splits into the quantum-generator prefix and the classical suffix.
    pub fn split_sectors(&self) -> (Word, Word) {
        let (quantum, classical): (Vec<_>, Vec<_>) =
            self.0.iter().copied().partition(|&(g, _)| g.is_quantum());
        (Word(quantum), Word(classical))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A single term `coeff · word`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomial {
    pub coeff: Scalar,
    pub word: Word,
}

/// Exact-coefficient polynomial in the hybrid generators, kept in normal
/// form: one term per distinct word, no zero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OperatorPoly {
    terms: BTreeMap<Word, Scalar>,
}

impl OperatorPoly {
    pub fn zero() -> Self {
        OperatorPoly::default()
    }

    pub fn one() -> Self {
        OperatorPoly::constant(scalar_one())
    }

    pub fn constant(c: Scalar) -> Self {
        OperatorPoly::monomial(c, Word::identity())
    }

    pub fn generator(g: GeneratorId) -> Self {
        OperatorPoly::monomial(scalar_one(), Word::single(g))
    }

    pub fn monomial(coeff: Scalar, word: Word) -> Self {
        let mut p = OperatorPoly::zero();
        p.add_term(word, coeff);
        p
    }

    pub fn add_term(&mut self, word: Word, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(word) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn monomials(&self) -> Vec<Monomial> {
        self.terms
            .iter()
            .map(|(w, c)| Monomial { coeff: c.clone(), word: w.clone() })
            .collect()
    }

    pub fn coefficient(&self, word: &Word) -> Scalar {
        self.terms.get(word).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = OperatorPoly::zero();
        for (w, k) in &self.terms {
            out.add_term(w.clone(), k * c);
        }
        out
    }

    pub fn generators(&self) -> BTreeSet<GeneratorId> {
        self.terms
            .keys()
            .flat_map(|w| w.runs().iter().map(|&(g, _)| g))
            .collect()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Word::degree).max().unwrap_or(0)
    }

    /// Keeps only the terms for which `keep` returns true.
    pub fn filter(&self, mut keep: impl FnMut(&Word) -> bool) -> Self {
        OperatorPoly {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| keep(w))
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn is_observable(&self) -> bool {
        is_observable(self)
    }
}

/// True iff no term contains a tilde generator.
pub fn is_observable(x: &OperatorPoly) -> bool {
    x.terms
        .keys()
        .all(|w| !w.contains(GeneratorId::ATilde) && !w.contains(GeneratorId::BTilde))
}

impl Add for &OperatorPoly {
    type Output = OperatorPoly;
    fn add(self, rhs: &OperatorPoly) -> OperatorPoly {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl Add for OperatorPoly {
    type Output = OperatorPoly;
    fn add(self, rhs: OperatorPoly) -> OperatorPoly {
        &self + &rhs
    }
}

impl Sub for &OperatorPoly {
    type Output = OperatorPoly;
    fn sub(self, rhs: &OperatorPoly) -> OperatorPoly {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), -c.clone());
        }
        out
    }
}

impl Sub for OperatorPoly {
    type Output = OperatorPoly;
    fn sub(self, rhs: OperatorPoly) -> OperatorPoly {
        &self - &rhs
    }
}

impl Neg for &OperatorPoly {
    type Output = OperatorPoly;
    fn neg(self) -> OperatorPoly {
        OperatorPoly { terms: self.terms.iter().map(|(w, c)| (w.clone(), -c.clone())).collect() }
    }
}

impl Neg for OperatorPoly {
    type Output = OperatorPoly;
    fn neg(self) -> OperatorPoly {
        -&self
    }
}

/// Product under the standard structure table.
impl Mul for &OperatorPoly {
    type Output = OperatorPoly;
    fn mul(self, rhs: &OperatorPoly) -> OperatorPoly {
        Algebra::standard().mul(self, rhs)
    }
}

impl Mul for OperatorPoly {
    type Output = OperatorPoly;
    fn mul(self, rhs: OperatorPoly) -> OperatorPoly {
        &self * &rhs
    }
}

impl Mul<&Scalar> for &OperatorPoly {
    type Output = OperatorPoly;
    fn mul(self, rhs: &Scalar) -> OperatorPoly {
        self.scale(rhs)
    }
}

impl Mul<Scalar> for OperatorPoly {
    type Output = OperatorPoly;
    fn mul(self, rhs: Scalar) -> OperatorPoly {
        self.scale(&rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use GeneratorId::*;

    #[test]
    fn words_order_by_degree_first() {
        let lin = Word::single(BTilde);
        let quad = Word::from_sorted(&[QHat, QHat]).unwrap();
        assert!(Word::identity() < lin);
        assert!(lin < quad);
        assert!(Word::from_sorted(&[A, QHat]).is_none());
    }

    #[test]
    fn cancelling_terms_are_dropped() {
        let x = OperatorPoly::generator(A);
        assert!((&x - &x).is_zero());
        assert_eq!((&x + &x).len(), 1);
    }

    #[test]
    fn sector_split() {
        let w = Word::from_sorted(&[PHat, PHat, A, ATilde]).unwrap();
        let (q, c) = w.split_sectors();
        assert_eq!(q.expand(), vec![PHat, PHat]);
        assert_eq!(c.expand(), vec![A, ATilde]);
    }
}
