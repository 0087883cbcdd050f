//! Cohomology dimensions against a dense fraction-free (Bareiss) oracle.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sullivan_core::cohomology::cohomology_dims;
use sullivan_core::gca::basis;
use sullivan_core::random::{random_model, ModelShape};
use sullivan_core::SullivanAlgebra;

/// Rank of a dense integer matrix by Bareiss elimination with row pivoting.
fn bareiss_rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = &m[r][c] * &m[i][j] - &m[i][c] * &m[r][j];
                let (q, rem) = v.div_rem(&prev);
                assert!(rem.is_zero(), "inexact Bareiss step");
                m[i][j] = q;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Dense integer matrix of d: C^n -> C^{n+1}, one row per domain monomial.
fn dense_differential(a: &SullivanAlgebra, n: u32) -> Vec<Vec<BigInt>> {
    let u = a.universe();
    let domain = basis(n, u);
    let target = basis(n + 1, u);
    domain
        .iter()
        .map(|m| {
            let image = a.d_monomial(m);
            let lcm = image
                .terms()
                .values()
                .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
            target
                .iter()
                .map(|t| {
                    image
                        .terms()
                        .get(t)
                        .map_or_else(BigInt::zero, |c| c.numer() * (&lcm / c.denom()))
                })
                .collect()
        })
        .collect()
}

fn oracle_dims(a: &SullivanAlgebra, max: u32) -> Vec<usize> {
    let ranks: Vec<usize> = (0..=max).map(|n| bareiss_rank(dense_differential(a, n))).collect();
    (0..=max as usize)
        .map(|n| {
            let cochains = basis(n as u32, a.universe()).len();
            let incoming = if n == 0 { 0 } else { ranks[n - 1] };
            cochains - ranks[n] - incoming
        })
        .collect()
}

#[test]
fn bareiss_small_cases() {
    let m = |rows: &[&[i64]]| -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    };
    assert_eq!(bareiss_rank(m(&[&[2, 4], &[1, 2]])), 1);
    assert_eq!(bareiss_rank(m(&[&[0, 1], &[1, 0]])), 2);
    assert_eq!(bareiss_rank(m(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]])), 2);
    assert_eq!(bareiss_rank(m(&[])), 0);
}

#[test]
fn sparse_dims_match_dense_oracle_on_seeded_models() {
    let shape = ModelShape {
        max_generators: 6,
        max_codegree: 8,
        coefficient_bound: 3,
    };
    for seed in 0..50u64 {
        let a = random_model(&mut ChaCha8Rng::seed_from_u64(seed), shape);
        assert_eq!(cohomology_dims(&a, 20), oracle_dims(&a, 20), "seed {seed}: {a}");
    }
}
