//! Prints the defining commutators of the hybrid algebra as computed by the
//! engine, then a couple of derived facts.
//!
//! cargo run --example algebra_relations

use kvn_core::algebra::{gen, generator_triples, printed_relations, Algebra, GeneratorId};

fn main() {
    let alg = Algebra::standard();
    for rel in printed_relations() {
        let got = alg.commutator(&gen(rel.lhs.0), &gen(rel.lhs.1));
        let mark = if got == rel.expected { "ok " } else { "BAD" };
        println!("{mark} [{}, {}] = {:<12} {}", rel.lhs.0, rel.lhs.1, got.to_string(), rel.label);
    }

    let nonzero = generator_triples().into_iter().filter(|&(x, y, z)| !alg.check_jacobi(x, y, z).is_zero()).count();
    println!("\njacobi: {nonzero} nonzero of {} triples", generator_triples().len());

    // a polynomial commutator, reduced to normal order
    let x = gen(GeneratorId::A) * gen(GeneratorId::A) * gen(GeneratorId::ATilde);
    let y = gen(GeneratorId::B) * gen(GeneratorId::BTilde);
    println!("[a^2 at, b bt] = {}", alg.commutator(&x, &y));
}
