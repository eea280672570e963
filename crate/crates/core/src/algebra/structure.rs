use std::collections::BTreeMap;
use std::sync::LazyLock;



use super::classical::{poisson_bracket, tilde_lift, ClassicalPoly};
use super::generator::GeneratorId;
use super::poly::{OperatorPoly, Word};
use super::scalar::{imag_unit, int, Scalar};
#[cfg(test)]
use super::scalar::real;

/// Commutator table `[x, y] = xy - yx` over the nine generators.
///
/// Only non-zero entries are stored; both orientations are kept so lookup
/// never has to negate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureTable {
    entries: BTreeMap<(GeneratorId, GeneratorId), OperatorPoly>,
}

impl StructureTable {
    pub fn empty() -> Self {
        StructureTable { entries: BTreeMap::new() }
    }

    pub fn standard() -> Self {
        use GeneratorId::*;
        let i = imag_unit();
        let mut t = StructureTable::empty();
        t.set(QHat, PHat, OperatorPoly::constant(i.clone()));
        t.set(S1, S2, OperatorPoly::generator(S3).scale(&i));
        t.set(S2, S3, OperatorPoly::generator(S1).scale(&i));
        t.set(S3, S1, OperatorPoly::generator(S2).scale(&i));
        // bt = i[b, .]_PB and at = i[a, .]_PB acting on the commuting pair (a, b).
        t.set(BTilde, A, OperatorPoly::constant(i.clone()));
        t.set(ATilde, B, OperatorPoly::constant(-i.clone()));
        // [bt, at] is the lift of the constant [b, a]_PB, which vanishes.
        let lifted = tilde_lift(&poisson_bracket(&ClassicalPoly::b(), &ClassicalPoly::a()));
        t.set(BTilde, ATilde, lifted.scale(&i));
        t
    }

    /// Sets `[x, y] = value` and `[y, x] = -value`.
    pub fn set(&mut self, x: GeneratorId, y: GeneratorId, value: OperatorPoly) {
        self.entries.remove(&(x, y));
        self.entries.remove(&(y, x));
        if value.is_zero() {
            return;
        }
        if x == y {
            return;
        }
        self.entries.insert((y, x), -&value);
        self.entries.insert((x, y), value);
    }

    pub fn with_entry(mut self, x: GeneratorId, y: GeneratorId, value: OperatorPoly) -> Self {
        self.set(x, y, value);
        self
    }

    pub fn entry(&self, x: GeneratorId, y: GeneratorId) -> OperatorPoly {
        self.entries.get(&(x, y)).cloned().unwrap_or_default()
    }

    pub fn is_antisymmetric(&self) -> bool {
        GeneratorId::ALL.iter().all(|&x| {
            GeneratorId::ALL
                .iter()
                .all(|&y| self.entry(x, y) == -self.entry(y, x))
        })
    }

    /// One line per ordered pair with a non-zero entry, e.g. `[bt,a] = (0,1)`.
    pub fn canonical_text(&self) -> String {
        let mut out = String::new();
        for ((x, y), v) in &self.entries {
            if x > y {
                out.push_str(&format!("[{x},{y}] = {v}\n"));
            }
        }
        out
    }
}

static STANDARD: LazyLock<Algebra> = LazyLock::new(|| Algebra::new(StructureTable::standard()));

/// Normal-ordering engine over a structure table.
#[derive(Clone, Debug)]
pub struct Algebra {
    table: StructureTable,
}

impl Algebra {
    pub fn new(table: StructureTable) -> Self {
        Algebra { table }
    }

    pub fn standard() -> &'static Algebra {
        &STANDARD
    }

    pub fn table(&self) -> &StructureTable {
        &self.table
    }

    /// Rewrites a raw product of generators into canonical form by repeated
    /// adjacent swaps `xy = yx + [x, y]`.
    pub fn normal_order(&self, word: &[GeneratorId]) -> OperatorPoly {
        let mut out = OperatorPoly::zero();
        self.order_into(word.to_vec(), Scalar::new(int(1), int(0)), &mut out);
        out
    }

    fn order_into(&self, word: Vec<GeneratorId>, coeff: Scalar, out: &mut OperatorPoly) {
        let descent = word.windows(2).position(|w| w[0] > w[1]);
        let Some(i) = descent else {
            let w = Word::from_sorted(&word).expect("sorted by construction");
            out.add_term(w, coeff);
            return;
        };
        let (x, y) = (word[i], word[i + 1]);
        let correction = self.table.entry(x, y);
        let mut swapped = word.clone();
        swapped.swap(i, i + 1);
        self.order_into(swapped, coeff.clone(), out);
        for (w, k) in correction.terms() {
            let mut next = Vec::with_capacity(word.len());
            next.extend_from_slice(&word[..i]);
            next.extend(w.expand());
            next.extend_from_slice(&word[i + 2..]);
            self.order_into(next, &coeff * k, out);
        }
    }

    pub fn mul(&self, x: &OperatorPoly, y: &OperatorPoly) -> OperatorPoly {
        let mut out = OperatorPoly::zero();
        for (wx, cx) in x.terms() {
            for (wy, cy) in y.terms() {
                let mut raw = wx.expand();
                raw.extend(wy.expand());
                self.order_into(raw, cx * cy, &mut out);
            }
        }
        out
    }

    pub fn pow(&self, x: &OperatorPoly, n: u32) -> OperatorPoly {
        (0..n).fold(OperatorPoly::one(), |acc, _| self.mul(&acc, x))
    }

    pub fn commutator(&self, x: &OperatorPoly, y: &OperatorPoly) -> OperatorPoly {
        &self.mul(x, y) - &self.mul(y, x)
    }

    /// `dX/dt = -i [X, H]`.
    pub fn heisenberg_rhs(&self, x: &OperatorPoly, h: &OperatorPoly) -> OperatorPoly {
        self.commutator(x, h).scale(&-imag_unit())
    }

    /// Hermitian conjugate; every generator is self-adjoint.
    pub fn adjoint(&self, x: &OperatorPoly) -> OperatorPoly {
        let mut out = OperatorPoly::zero();
        for (w, c) in x.terms() {
            let mut raw = w.expand();
            raw.reverse();
            self.order_into(raw, c.conj(), &mut out);
        }
        out
    }

    pub fn check_jacobi(&self, x: GeneratorId, y: GeneratorId, z: GeneratorId) -> OperatorPoly {
        let (gx, gy, gz) =
            (OperatorPoly::generator(x), OperatorPoly::generator(y), OperatorPoly::generator(z));
        let first = self.commutator(&self.commutator(&gx, &gy), &gz);
        let second = self.commutator(&self.commutator(&gy, &gz), &gx);
        let third = self.commutator(&self.commutator(&gz, &gx), &gy);
        &(&first + &second) + &third
    }

    pub fn is_self_adjoint(&self, x: &OperatorPoly) -> bool {
        &self.adjoint(x) == x
    }
}

pub fn normal_order(word: &[GeneratorId]) -> OperatorPoly {
    Algebra::standard().normal_order(word)
}

pub fn commutator(x: &OperatorPoly, y: &OperatorPoly) -> OperatorPoly {
    Algebra::standard().commutator(x, y)
}

pub fn heisenberg_rhs(x: &OperatorPoly, h: &OperatorPoly) -> OperatorPoly {
    Algebra::standard().heisenberg_rhs(x, h)
}

pub fn adjoint(x: &OperatorPoly) -> OperatorPoly {
    Algebra::standard().adjoint(x)
}

pub fn check_jacobi(x: GeneratorId, y: GeneratorId, z: GeneratorId) -> OperatorPoly {
    Algebra::standard().check_jacobi(x, y, z)
}

/// A reference commutation relation: `lhs` is the commutator on the left,
/// `expected` its right-hand side.
#[derive(Clone, Debug)]
pub struct PrintedRelation {
    pub label: &'static str,
    pub lhs: (GeneratorId, GeneratorId),
    pub expected: OperatorPoly,
}

/// Defining commutation relations of the hybrid algebra, plus the spin
/// relations of the quantum sector.
pub fn printed_relations() -> Vec<PrintedRelation> {
    use GeneratorId::*;
    let i = imag_unit();
    let pb_ba = poisson_bracket(&ClassicalPoly::b(), &ClassicalPoly::a());
    let pb_ab = poisson_bracket(&ClassicalPoly::a(), &ClassicalPoly::b());
    let c = |s: Scalar| OperatorPoly::constant(s);
    vec![
        PrintedRelation {
            label: "bt*at - at*bt = i lift([b,a]_PB)",
            lhs: (BTilde, ATilde),
            expected: tilde_lift(&pb_ba).scale(&i),
        },
        PrintedRelation {
            label: "bt*a - a*bt = i[b,a]_PB",
            lhs: (BTilde, A),
            expected: pb_ba.to_operator().scale(&i),
        },
        PrintedRelation {
            label: "at*b - b*at = i[a,b]_PB",
            lhs: (ATilde, B),
            expected: pb_ab.to_operator().scale(&i),
        },
        PrintedRelation { label: "at*a - a*at = 0", lhs: (ATilde, A), expected: OperatorPoly::zero() },
        PrintedRelation { label: "bt*b - b*bt = 0", lhs: (BTilde, B), expected: OperatorPoly::zero() },
        PrintedRelation { label: "a*b - b*a = 0", lhs: (A, B), expected: OperatorPoly::zero() },
        PrintedRelation { label: "q*p - p*q = i", lhs: (QHat, PHat), expected: c(i.clone()) },
        PrintedRelation {
            label: "s1*s2 - s2*s1 = i s3",
            lhs: (S1, S2),
            expected: OperatorPoly::generator(S3).scale(&i),
        },
        PrintedRelation {
            label: "s2*s3 - s3*s2 = i s1",
            lhs: (S2, S3),
            expected: OperatorPoly::generator(S1).scale(&i),
        },
        PrintedRelation {
            label: "s3*s1 - s1*s3 = i s2",
            lhs: (S3, S1),
            expected: OperatorPoly::generator(S2).scale(&i),
        },
    ]
}

/// Checks the printed relations, cross-sector commutativity and
/// antisymmetry against a table. Returns the labels of failed checks.
pub fn relation_failures(algebra: &Algebra) -> Vec<String> {
    let mut failures = Vec::new();
    for rel in printed_relations() {
        let got = algebra.commutator(
            &OperatorPoly::generator(rel.lhs.0),
            &OperatorPoly::generator(rel.lhs.1),
        );
        if got != rel.expected {
            failures.push(format!("{}: engine gives {}", rel.label, got));
        }
    }
    for &x in GeneratorId::ALL.iter().filter(|g| g.is_quantum()) {
        for &y in &GeneratorId::CLASSICAL {
            if !algebra.table().entry(x, y).is_zero() {
                failures.push(format!("[{x},{y}] = 0 (cross-sector)"));
            }
        }
    }
    let q = [GeneratorId::QHat, GeneratorId::PHat];
    let s = [GeneratorId::S1, GeneratorId::S2, GeneratorId::S3];
    for &x in &q {
        for &y in &s {
            if !algebra.table().entry(x, y).is_zero() {
                failures.push(format!("[{x},{y}] = 0 (oscillator/spin)"));
            }
        }
    }
    if !algebra.table().is_antisymmetric() {
        failures.push("antisymmetry".to_string());
    }
    failures
}

/// All unordered generator triples, 84 in total.
pub fn generator_triples() -> Vec<(GeneratorId, GeneratorId, GeneratorId)> {
    let g = GeneratorId::ALL;
    let mut out = Vec::new();
    for i in 0..g.len() {
        for j in i + 1..g.len() {
            for k in j + 1..g.len() {
                out.push((g[i], g[j], g[k]));
            }
        }
    }
    out
}
