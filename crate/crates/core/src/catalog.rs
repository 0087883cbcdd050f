//! Named example models used by tests, the acceptance suite and the CLI.

use crate::model::{build_algebra, SullivanAlgebra};

/// `Λ(u₂, v₂, y₃, z₃)`, `dy = u²`, `dz = uv`: fibre of the map
/// `CP∞ × CP∞ → K(Q,4)²` classifying `u², uv`.
pub fn squares_fibration() -> SullivanAlgebra {
    build_algebra(
        &[("u", 2), ("v", 2), ("y", 3), ("z", 3)],
        &[("y", &|g| g("u").pow(2)), ("z", &|g| &g("u") * &g("v"))],
    )
    .expect("valid model")
}

/// `Λ(v₂, x₃, w₄)`, `dw = vx`: finite homotopy, non-Noetherian cohomology.
pub fn non_noetherian() -> SullivanAlgebra {
    build_algebra(&[("v", 2), ("x", 3), ("w", 4)], &[("w", &|g| &g("v") * &g("x"))])
        .expect("valid model")
}

/// `Λ(x₃, y₃, z₃, a₈)`, `da = xyz`.
pub fn triple_product() -> SullivanAlgebra {
    build_algebra(
        &[("x", 3), ("y", 3), ("z", 3), ("a", 8)],
        &[("a", &|g| &(&g("x") * &g("y")) * &g("z"))],
    )
    .expect("valid model")
}

/// `Λ(x₅, y₃, z₃, y'₃, z'₃, a₁₀)`, `dx = yz + y'z'`, `da = xyy'`.
pub fn twisted_triple_product() -> SullivanAlgebra {
    build_algebra(
        &[("x", 5), ("y", 3), ("z", 3), ("y'", 3), ("z'", 3), ("a", 10)],
        &[
            ("x", &|g| &(&g("y") * &g("z")) + &(&g("y'") * &g("z'"))),
            ("a", &|g| &(&g("x") * &g("y")) * &g("y'")),
        ],
    )
    .expect("valid model")
}

/// `Λ(x₂, y₃)`, `dy = x²`: the model of `CP¹ = S²`.
pub fn two_sphere() -> SullivanAlgebra {
    build_algebra(&[("x", 2), ("y", 3)], &[("y", &|g| g("x").pow(2))]).expect("valid model")
}

/// Free algebra on the given `(name, codegree)` generators with d = 0.
pub fn free(gens: &[(&str, u32)]) -> SullivanAlgebra {
    build_algebra(gens, &[]).expect("valid model")
}
