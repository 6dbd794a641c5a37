//! Shared fixtures for unit tests.

use rand::Rng;

use crate::structure::{StructureFormula, StructureFunction};

/// The 9-edge two-terminal benchmark network.
/// Nodes: 0=A, 1=C, 2=F, 3=E, 4=D, 5=G, 6=B; edges indexed 1..=9.
pub fn gab() -> StructureFunction {
    StructureFunction::from_two_terminal_graph(
        7,
        &[
            (0, 1), // 1: A -> C
            (0, 2), // 2: A -> F
            (1, 4), // 3: C -> D
            (1, 3), // 4: C -> E
            (2, 3), // 5: F -> E
            (2, 5), // 6: F -> G
            (3, 4), // 7: E -> D
            (4, 6), // 8: D -> B
            (5, 6), // 9: G -> B
        ],
        0,
        6,
    )
    .unwrap()
}

/// Random coherent structure over exactly `n` components (rejection-sampled).
pub fn random_coherent(rng: &mut impl Rng, n: usize) -> StructureFunction {
    loop {
        let formula = random_formula(rng, n, 0);
        if let Ok(phi) = StructureFunction::from_formula(n, formula) {
            if phi.is_coherent().unwrap() {
                return phi;
            }
        }
    }
}

fn random_formula(rng: &mut impl Rng, n: usize, depth: usize) -> StructureFormula {
    if depth >= 3 || (depth > 0 && rng.gen_bool(0.4)) {
        return StructureFormula::atom(rng.gen_range(1..=n));
    }
    let arity = rng.gen_range(2..=3.min(n).max(2));
    let children: Vec<_> = (0..arity)
        .map(|_| random_formula(rng, n, depth + 1))
        .collect();
    match rng.gen_range(0..3) {
        0 => StructureFormula::and(children),
        1 => StructureFormula::or(children),
        _ => {
            let k = rng.gen_range(1..=children.len());
            StructureFormula::k_out_of_n(k, children).unwrap()
        }
    }
}
