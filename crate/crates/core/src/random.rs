//! Seeded generation of valid minimal models and homogeneous elements.

use std::collections::BTreeMap;

use rand::Rng;

use crate::cohomology::{differential_matrix, CochainBasis};
use crate::gca::{basis, decomposable_basis, Generator, Poly, Rational, Universe};
use crate::model::SullivanAlgebra;

#[derive(Debug, Clone, Copy)]
pub struct ModelShape {
    pub max_generators: usize,
    pub max_codegree: u32,
    /// Coefficients are drawn from `-coefficient_bound..=coefficient_bound`.
    pub coefficient_bound: i64,
}

impl Default for ModelShape {
    fn default() -> Self {
        ModelShape {
            max_generators: 6,
            max_codegree: 8,
            coefficient_bound: 2,
        }
    }
}

fn coefficient(rng: &mut impl Rng, bound: i64) -> Rational {
    Rational::from_integer(rng.gen_range(-bound..=bound).into())
}

/// A random element of codegree `n`, each basis monomial present with
/// probability one half.
pub fn random_homogeneous(rng: &mut impl Rng, u: &std::sync::Arc<Universe>, n: u32, bound: i64) -> Poly {
    let mut terms = Vec::new();
    for m in basis(n, u) {
        if rng.gen_bool(0.5) {
            terms.push((m, coefficient(rng, bound)));
        }
    }
    Poly::from_terms(u, terms)
}

/// A random valid minimal model. Generators are processed in increasing
/// codegree and each differential is a random cocycle among decomposables,
/// so `d² = 0` and minimality hold by construction.
pub fn random_model(rng: &mut impl Rng, shape: ModelShape) -> SullivanAlgebra {
    let count = rng.gen_range(1..=shape.max_generators.max(1));
    let mut gens: Vec<Generator> = (0..count)
        .map(|i| Generator::new(format!("g{i}"), rng.gen_range(2..=shape.max_codegree.max(2))).expect("codegree ≥ 2"))
        .collect();
    gens.sort();
    let mut diffs: BTreeMap<String, Poly> = BTreeMap::new();
    for g in gens.clone() {
        let a = SullivanAlgebra::new(gens.clone(), diffs.clone()).expect("degrees are consistent");
        let u = a.universe();
        let n = g.codegree() + 1;
        let domain = decomposable_basis(n, u);
        let target = CochainBasis::of_codegree(n + 1, u);
        let kernel = differential_matrix(&a, &domain, &target).kernel();
        let mut dg = Poly::zero(u);
        for k in kernel {
            let c = coefficient(rng, shape.coefficient_bound);
            let z = Poly::from_terms(u, k.iter().map(|(&j, x)| (domain[j].clone(), x * &c)).collect::<Vec<_>>());
            dg = &dg + &z;
        }
        diffs.insert(g.name().to_string(), dg);
    }
    SullivanAlgebra::new_validated(gens, diffs).expect("random model is valid by construction")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_models_validate_and_are_reproducible() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut nonzero = 0;
        for _ in 0..40 {
            let a = random_model(&mut rng, ModelShape::default());
            assert!(a.validate().is_valid());
            if a.generators().iter().any(|g| !a.d(g.name()).unwrap().is_zero()) {
                nonzero += 1;
            }
        }
        assert!(nonzero > 5, "too few nontrivial differentials: {nonzero}");
        let x = random_model(&mut ChaCha8Rng::seed_from_u64(3), ModelShape::default());
        let y = random_model(&mut ChaCha8Rng::seed_from_u64(3), ModelShape::default());
        assert_eq!(x, y);
    }
}
