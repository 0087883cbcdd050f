//! Sullivan algebras and the rewriting moves used by the classifier and the
//! unraveller.
//!
//! Differentials are stored on generators only; `extend_differential`
//! applies the Leibniz rule at use time. Every move returns a new algebra.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::One;
use thiserror::Error;

use crate::gca::{GcaError, Generator, Monomial, Poly, Rational, Universe};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error(transparent)]
    Gca(#[from] GcaError),
    #[error("d({generator}) must have codegree {expected}, found {found}")]
    DifferentialDegree {
        generator: String,
        expected: u32,
        found: u32,
    },
    #[error("d({0}) is not homogeneous")]
    InhomogeneousDifferential(String),
    #[error("invalid algebra: {0}")]
    Invalid(String),
    #[error("{0} is not an even generator")]
    NotEven(String),
    #[error("{0} is not an odd generator")]
    NotOdd(String),
    #[error("{0} is not a cocycle")]
    NotCocycle(String),
    #[error("{generator} occurs in d({witness})")]
    OccursInDifferential { generator: String, witness: String },
    #[error("{0}")]
    Shape(String),
}

/// Structural check results with the offending generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub d_squared_zero: bool,
    pub minimal: bool,
    pub simply_connected: bool,
    pub pure: bool,
    pub even_cocycle_only: bool,
    pub violations: Vec<Violation>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub generator: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationKind {
    DSquaredNonzero,
    LinearTerm,
    ConstantTerm,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ViolationKind::DSquaredNonzero => write!(f, "d(d({})) != 0", self.generator),
            ViolationKind::LinearTerm => {
                write!(f, "d({}) has a linear term (not minimal)", self.generator)
            }
            ViolationKind::ConstantTerm => write!(f, "d({}) has a constant term", self.generator),
        }
    }
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.d_squared_zero && self.minimal && self.simply_connected
    }

    pub fn summary(&self) -> String {
        self.violations
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join("; ")
    }
}

/// Record of a change of variables: the new generator equals `old + shift`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoRecord {
    pub generator: String,
    pub shift: Poly,
}

/// A free graded-commutative algebra with a differential given on generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SullivanAlgebra {
    universe: Arc<Universe>,
    differentials: Vec<Poly>,
}

impl SullivanAlgebra {
    /// Builds an algebra, checking that each differential raises codegree by
    /// one. Absent entries mean zero. Use [`validate`](Self::validate) for
    /// d² = 0 and minimality.
    pub fn new(generators: Vec<Generator>, differentials: BTreeMap<String, Poly>) -> Result<Self, ModelError> {
        let universe = Universe::new(generators)?;
        let mut diffs = vec![Poly::zero(&universe); universe.len()];
        for (name, p) in differentials {
            let i = universe
                .index_of(&name)
                .ok_or_else(|| GcaError::UnknownGenerator(name.clone()))?;
            diffs[i] = p.transport(&universe)?;
        }
        Self::from_parts(universe, diffs)
    }

    pub(crate) fn from_parts(universe: Arc<Universe>, differentials: Vec<Poly>) -> Result<Self, ModelError> {
        debug_assert_eq!(universe.len(), differentials.len());
        for (g, d) in universe.generators().iter().zip(&differentials) {
            match d.homogeneous_codegree() {
                Err(_) => return Err(ModelError::InhomogeneousDifferential(g.name().to_string())),
                Ok(Some(found)) if found != g.codegree() + 1 => {
                    return Err(ModelError::DifferentialDegree {
                        generator: g.name().to_string(),
                        expected: g.codegree() + 1,
                        found,
                    })
                }
                _ => {}
            }
        }
        Ok(SullivanAlgebra {
            universe,
            differentials,
        })
    }

    /// Like [`new`](Self::new) but also rejects algebras that fail validation.
    pub fn new_validated(generators: Vec<Generator>, differentials: BTreeMap<String, Poly>) -> Result<Self, ModelError> {
        Self::new(generators, differentials)?.checked()
    }

    fn checked(self) -> Result<Self, ModelError> {
        let report = self.validate();
        if report.is_valid() {
            Ok(self)
        } else {
            Err(ModelError::Invalid(report.summary()))
        }
    }

    pub fn trivial() -> Self {
        SullivanAlgebra {
            universe: Universe::empty(),
            differentials: Vec::new(),
        }
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn generators(&self) -> &[Generator] {
        self.universe.generators()
    }

    pub fn generator_names(&self) -> Vec<String> {
        self.generators().iter().map(|g| g.name().to_string()).collect()
    }

    pub fn index_of(&self, name: &str) -> Result<usize, ModelError> {
        self.universe
            .index_of(name)
            .ok_or_else(|| GcaError::UnknownGenerator(name.to_string()).into())
    }

    pub fn generator(&self, name: &str) -> Result<&Generator, ModelError> {
        Ok(self.universe.generator(self.index_of(name)?))
    }

    /// d of a generator.
    pub fn d(&self, name: &str) -> Result<&Poly, ModelError> {
        Ok(&self.differentials[self.index_of(name)?])
    }

    pub fn d_at(&self, i: usize) -> &Poly {
        &self.differentials[i]
    }

    pub fn gen_poly(&self, name: &str) -> Result<Poly, ModelError> {
        Ok(Poly::generator(&self.universe, name)?)
    }

    pub fn even_generators(&self) -> impl Iterator<Item = &Generator> {
        self.generators().iter().filter(|g| !g.is_odd())
    }

    pub fn odd_generators(&self) -> impl Iterator<Item = &Generator> {
        self.generators().iter().filter(|g| g.is_odd())
    }

    pub fn odd_count(&self) -> usize {
        self.odd_generators().count()
    }

    pub fn top_codegree(&self) -> u32 {
        self.universe.max_codegree()
    }

    /// A generator name not yet used, `stem` itself when free.
    pub fn fresh_name(&self, stem: &str) -> String {
        if self.universe.index_of(stem).is_none() {
            return stem.to_string();
        }
        (2..)
            .map(|k| format!("{stem}{k}"))
            .find(|n| self.universe.index_of(n).is_none())
            .expect("unbounded name supply")
    }

    /// d of a monomial via the Leibniz rule.
    pub fn d_monomial(&self, m: &Monomial) -> Poly {
        let u = &self.universe;
        let mut out = Poly::zero(u);
        let support: Vec<usize> = m.support().collect();
        let mut prefix = Monomial::one(u.len());
        let mut prefix_odd = false;
        for (pos, &i) in support.iter().enumerate() {
            let g = u.generator(i);
            let e = m.exponent(i);
            let dg = &self.differentials[i];
            if !dg.is_zero() {
                let mut lower = Monomial::one(u.len());
                let mut exps = lower.exponents().to_vec();
                exps[i] = e - 1;
                lower = Monomial::from_exponents(exps);
                let mut suffix = vec![0u32; u.len()];
                for &j in &support[pos + 1..] {
                    suffix[j] = m.exponent(j);
                }
                let coeff = Rational::from_integer(e.into());
                let coeff = if prefix_odd { -coeff } else { coeff };
                let left = Poly::monomial(u, prefix.clone(), coeff);
                let middle = &Poly::monomial(u, lower, Rational::one()) * dg;
                let right = Poly::monomial(u, Monomial::from_exponents(suffix), Rational::one());
                out = &out + &(&(&left * &middle) * &right);
            }
            let mut exps = prefix.exponents().to_vec();
            exps[i] = e;
            prefix = Monomial::from_exponents(exps);
            if g.is_odd() && e % 2 == 1 {
                prefix_odd = !prefix_odd;
            }
        }
        out
    }

    /// Leibniz extension of d to an arbitrary polynomial.
    pub fn extend_differential(&self, p: &Poly) -> Result<Poly, ModelError> {
        if !Universe::same(&self.universe, p.universe()) {
            return Err(GcaError::MismatchedUniverse.into());
        }
        let mut out = Poly::zero(&self.universe);
        for (m, c) in p.terms() {
            out = &out + &self.d_monomial(m).scale(c);
        }
        Ok(out)
    }

    pub fn is_cocycle(&self, p: &Poly) -> Result<bool, ModelError> {
        Ok(self.extend_differential(p)?.is_zero())
    }

    pub fn is_minimal(&self) -> bool {
        self.differentials
            .iter()
            .all(|d| d.min_word_length().map_or(true, |l| l >= 2))
    }

    /// d vanishes on even generators and sends odd ones into Λ(V^even).
    pub fn is_pure(&self) -> bool {
        let u = &self.universe;
        self.generators().iter().zip(&self.differentials).all(|(g, d)| {
            if g.is_odd() {
                d.terms()
                    .keys()
                    .all(|m| m.support().all(|i| !u.generator(i).is_odd()))
            } else {
                d.is_zero()
            }
        })
    }

    pub fn even_cocycle_only(&self) -> bool {
        self.generators()
            .iter()
            .zip(&self.differentials)
            .all(|(g, d)| g.is_odd() || d.is_zero())
    }

    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        for (g, d) in self.generators().iter().zip(&self.differentials) {
            match d.min_word_length() {
                Some(0) => violations.push(Violation {
                    kind: ViolationKind::ConstantTerm,
                    generator: g.name().to_string(),
                }),
                Some(1) => violations.push(Violation {
                    kind: ViolationKind::LinearTerm,
                    generator: g.name().to_string(),
                }),
                _ => {}
            }
        }
        let minimal = violations.is_empty();
        let mut d_squared_zero = true;
        for (g, d) in self.generators().iter().zip(&self.differentials) {
            if !self.extend_differential(d).map_or(false, |dd| dd.is_zero()) {
                d_squared_zero = false;
                violations.push(Violation {
                    kind: ViolationKind::DSquaredNonzero,
                    generator: g.name().to_string(),
                });
            }
        }
        ValidationReport {
            d_squared_zero,
            minimal,
            simply_connected: self.generators().iter().all(|g| g.codegree() >= 2),
            pure: self.is_pure(),
            even_cocycle_only: self.even_cocycle_only(),
            violations,
        }
    }

    /// Subalgebra on the generators accepted by `keep`; fails if a kept
    /// differential mentions a dropped generator.
    pub fn subalgebra(&self, keep: impl Fn(&Generator) -> bool) -> Result<SullivanAlgebra, ModelError> {
        let kept: Vec<Generator> = self.generators().iter().filter(|g| keep(g)).cloned().collect();
        let universe = Universe::new(kept)?;
        let mut diffs = Vec::with_capacity(universe.len());
        for g in universe.generators() {
            let i = self.index_of(g.name())?;
            diffs.push(self.differentials[i].transport(&universe)?);
        }
        Self::from_parts(universe, diffs)
    }

    fn without_generator(&self, name: &str) -> Result<SullivanAlgebra, ModelError> {
        self.subalgebra(|g| g.name() != name)
    }

    /// Kills an even cocycle generator: drops it and sets it to zero in every
    /// other differential.
    pub fn quotient_even_cocycle(&self, name: &str) -> Result<SullivanAlgebra, ModelError> {
        let i = self.index_of(name)?;
        if self.universe.generator(i).is_odd() {
            return Err(ModelError::NotEven(name.to_string()));
        }
        if !self.differentials[i].is_zero() {
            return Err(ModelError::NotCocycle(name.to_string()));
        }
        let zero = Poly::zero(&self.universe);
        let rewritten = self
            .differentials
            .iter()
            .map(|d| d.substitute(name, &zero))
            .collect::<Result<Vec<_>, _>>()?;
        let tmp = SullivanAlgebra {
            universe: Arc::clone(&self.universe),
            differentials: rewritten,
        };
        tmp.without_generator(name)?.checked()
    }

    /// Adjoins a new odd generator `name` of codegree `codegree` with
    /// differential `f`, which must be a cocycle of codegree `codegree + 1`.
    pub fn adjoin_odd(&self, name: &str, codegree: u32, f: &Poly) -> Result<SullivanAlgebra, ModelError> {
        if codegree % 2 == 0 {
            return Err(ModelError::Shape(format!(
                "adjoined generator must be odd, got codegree {codegree}"
            )));
        }
        f.expect_codegree(codegree + 1)?;
        let f = f.transport(&self.universe)?;
        if !self.extend_differential(&f)?.is_zero() {
            return Err(ModelError::NotCocycle(f.to_string()));
        }
        let mut gens = self.generators().to_vec();
        gens.push(Generator::new(name, codegree)?);
        let universe = Universe::new(gens)?;
        let mut diffs = Vec::with_capacity(universe.len());
        for g in universe.generators() {
            if g.name() == name {
                diffs.push(f.transport(&universe)?);
            } else {
                diffs.push(self.d(g.name())?.transport(&universe)?);
            }
        }
        Self::from_parts(universe, diffs)?.checked()
    }

    /// Removes an odd generator that appears in no other differential.
    pub fn drop_odd(&self, name: &str) -> Result<SullivanAlgebra, ModelError> {
        let i = self.index_of(name)?;
        if !self.universe.generator(i).is_odd() {
            return Err(ModelError::NotOdd(name.to_string()));
        }
        self.ensure_absent(i)?;
        self.without_generator(name)?.checked()
    }

    fn ensure_absent(&self, i: usize) -> Result<(), ModelError> {
        for (j, d) in self.differentials.iter().enumerate() {
            if j != i && d.mentions(i) {
                return Err(ModelError::OccursInDifferential {
                    generator: self.universe.generator(i).name().to_string(),
                    witness: self.universe.generator(j).name().to_string(),
                });
            }
        }
        Ok(())
    }

    /// Replaces generator `x` by `x' = x + g` where `g` is decomposable of
    /// codegree `|x|` and `d(x + g) = 0`. Other differentials are rewritten
    /// through `x = x' - g`; the new generator keeps the name `x`.
    pub fn change_of_variables(&self, name: &str, g: &Poly) -> Result<(SullivanAlgebra, IsoRecord), ModelError> {
        let g = g.transport(&self.universe)?;
        if g.min_word_length().map_or(false, |l| l < 2) {
            return Err(ModelError::Shape(format!(
                "shift {g} for {name} is not decomposable"
            )));
        }
        self.shift_generator(name, &g)
    }

    fn shift_generator(&self, name: &str, g: &Poly) -> Result<(SullivanAlgebra, IsoRecord), ModelError> {
        let i = self.index_of(name)?;
        let x = self.universe.generator(i).clone();
        g.expect_codegree(x.codegree())?;
        if g.mentions(i) {
            return Err(ModelError::Shape(format!("shift {g} mentions {name}")));
        }
        let new_x = &self.gen_poly(name)? + g;
        if !self.extend_differential(&new_x)?.is_zero() {
            return Err(ModelError::NotCocycle(new_x.to_string()));
        }
        let back = &self.gen_poly(name)? - g;
        let mut diffs = Vec::with_capacity(self.differentials.len());
        for (j, d) in self.differentials.iter().enumerate() {
            if j == i {
                diffs.push(Poly::zero(&self.universe));
            } else {
                diffs.push(d.substitute(name, &back)?);
            }
        }
        let out = Self::from_parts(Arc::clone(&self.universe), diffs)?.checked()?;
        Ok((
            out,
            IsoRecord {
                generator: name.to_string(),
                shift: g.clone(),
            },
        ))
    }

    /// Completes the square in `d(y) = x^2 + a x + b`: the new basis element
    /// `x' = x + a/2` is a cocycle and `d(y) = x'^2 + (b - a^2/4)`.
    pub fn odd_sphere_rewrite(&self, x: &str, y: &str) -> Result<SullivanAlgebra, ModelError> {
        let xi = self.index_of(x)?;
        let yi = self.index_of(y)?;
        let xg = self.universe.generator(xi);
        let yg = self.universe.generator(yi);
        if xg.is_odd() {
            return Err(ModelError::NotEven(x.to_string()));
        }
        if yg.codegree() != 2 * xg.codegree() - 1 {
            return Err(ModelError::Shape(format!(
                "{y} must have codegree {}, found {}",
                2 * xg.codegree() - 1,
                yg.codegree()
            )));
        }
        let dy = &self.differentials[yi];
        let mut by_power: BTreeMap<u32, Poly> = BTreeMap::new();
        for (m, c) in dy.terms() {
            if m.exponent(yi) > 0 {
                return Err(ModelError::Shape(format!("d({y}) mentions {y}")));
            }
            let k = m.exponent(xi);
            let mut exps = m.exponents().to_vec();
            exps[xi] = 0;
            let entry = by_power
                .entry(k)
                .or_insert_with(|| Poly::zero(&self.universe));
            *entry = &*entry + &Poly::monomial(&self.universe, Monomial::from_exponents(exps), c.clone());
        }
        let quadratic = by_power.remove(&2).unwrap_or_else(|| Poly::zero(&self.universe));
        if quadratic != Poly::one(&self.universe) || by_power.keys().any(|&k| k > 2) {
            return Err(ModelError::Shape(format!(
                "d({y}) = {dy} is not of the form {x}^2 + a*{x} + b"
            )));
        }
        let a = by_power
            .remove(&1)
            .unwrap_or_else(|| Poly::zero(&self.universe));
        let half = Rational::new(1.into(), 2.into());
        let (out, _) = self.shift_generator(x, &a.scale(&half))?;
        Ok(out)
    }

    /// Plain-text rendering, e.g. `Λ(v_2, x_3, w_4), dw = v*x`.
    pub fn describe(&self) -> String {
        let gens: Vec<String> = self
            .generators()
            .iter()
            .map(|g| format!("{}_{}", g.name(), g.codegree()))
            .collect();
        let mut parts = vec![format!("Λ({})", gens.join(", "))];
        for (g, d) in self.generators().iter().zip(&self.differentials) {
            if !d.is_zero() {
                parts.push(format!("d{} = {}", g.name(), d));
            }
        }
        if parts.len() == 1 {
            parts.push("d = 0".to_string());
        }
        parts.join(", ")
    }
}

impl fmt::Display for SullivanAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

/// Convenience constructor used heavily in tests: generators as
/// `(name, codegree)` and differentials as `(name, builder)` pairs.
pub fn build_algebra(
    gens: &[(&str, u32)],
    diffs: &[(&str, &dyn Fn(&dyn Fn(&str) -> Poly) -> Poly)],
) -> Result<SullivanAlgebra, ModelError> {
    let generators = gens
        .iter()
        .map(|(n, d)| Generator::new(*n, *d))
        .collect::<Result<Vec<_>, _>>()?;
    let universe = Universe::new(generators.clone())?;
    let var = |n: &str| Poly::generator(&universe, n).expect("unknown generator in builder");
    let mut map = BTreeMap::new();
    for (name, f) in diffs {
        map.insert(name.to_string(), f(&var));
    }
    SullivanAlgebra::new(generators, map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gca::{rat, ratio};

    pub(crate) fn non_noetherian_model() -> SullivanAlgebra {
        build_algebra(&[("v", 2), ("x", 3), ("w", 4)], &[("w", &|g| &g("v") * &g("x"))]).unwrap()
    }

    fn squares_model() -> SullivanAlgebra {
        build_algebra(
            &[("u", 2), ("v", 2), ("y", 3), ("z", 3)],
            &[("y", &|g| g("u").pow(2)), ("z", &|g| &g("u") * &g("v"))],
        )
        .unwrap()
    }

    #[test]
    fn d_of_unit_is_zero() {
        let a = non_noetherian_model();
        let one = Poly::one(a.universe());
        assert!(a.extend_differential(&one).unwrap().is_zero());
    }

    #[test]
    fn leibniz_on_square() {
        let a = non_noetherian_model();
        let w = a.gen_poly("w").unwrap();
        let got = a.extend_differential(&w.pow(2)).unwrap();
        let want = (&(&a.gen_poly("v").unwrap() * &a.gen_poly("x").unwrap()) * &w).scale(&rat(2));
        assert_eq!(got, want);
        assert_eq!(got.to_string(), "2*v*x*w");
    }

    #[test]
    fn cocycle_of_squares_model() {
        let a = squares_model();
        let g = |n: &str| a.gen_poly(n).unwrap();
        let p = &(&g("v") * &g("y")) - &(&g("u") * &g("z"));
        assert!(a.is_cocycle(&p).unwrap());
    }

    #[test]
    fn validate_examples() {
        let r = non_noetherian_model().validate();
        assert!(r.is_valid() && r.minimal && !r.pure && !r.even_cocycle_only);

        let free = build_algebra(&[("u", 2)], &[]).unwrap().validate();
        assert!(free.is_valid() && free.pure && free.even_cocycle_only);
    }

    #[test]
    fn linear_differential_is_not_minimal() {
        let b = build_algebra(&[("v", 4), ("w", 3)], &[("w", &|g| g("v"))]).unwrap();
        let r = b.validate();
        assert!(!r.minimal);
        assert_eq!(r.violations[0].generator, "w");
        assert_eq!(r.violations[0].kind, ViolationKind::LinearTerm);
    }

    #[test]
    fn wrong_differential_degree() {
        let err = build_algebra(&[("v", 2), ("w", 4)], &[("w", &|g| g("v"))]).unwrap_err();
        assert!(matches!(err, ModelError::DifferentialDegree { expected: 5, found: 2, .. }));
    }

    #[test]
    fn quotient_examples() {
        let free = build_algebra(&[("u", 2)], &[]).unwrap();
        assert_eq!(free.quotient_even_cocycle("u").unwrap(), SullivanAlgebra::trivial());

        let a6 = squares_model();
        let q = a6.quotient_even_cocycle("u").unwrap();
        assert!(q.d("y").unwrap().is_zero());
        assert!(q.d("z").unwrap().is_zero());
        assert!(q.validate().is_valid());

        assert!(matches!(a6.quotient_even_cocycle("y"), Err(ModelError::NotEven(_))));
        assert!(matches!(
            non_noetherian_model().quotient_even_cocycle("w"),
            Err(ModelError::NotCocycle(_))
        ));
    }

    #[test]
    fn adjoin_and_drop() {
        let r = build_algebra(
            &[("x", 3), ("y", 3), ("z", 3), ("a", 8)],
            &[("a", &|g| &(&g("x") * &g("y")) * &g("z"))],
        )
        .unwrap();
        let xy = &r.gen_poly("x").unwrap() * &r.gen_poly("y").unwrap();
        let r1 = r.adjoin_odd("w", 5, &xy).unwrap();
        assert_eq!(r1.d("w").unwrap().to_string(), "x*y");
        assert_eq!(r1.d("a").unwrap().to_string(), "x*y*z");

        let sphere = r.adjoin_odd("s", 7, &Poly::zero(r.universe())).unwrap();
        assert!(sphere.d("s").unwrap().is_zero());

        assert!(matches!(
            r.adjoin_odd("bad", 5, &r.gen_poly("x").unwrap()),
            Err(ModelError::Gca(GcaError::DegreeMismatch { .. }))
        ));

        let x3 = build_algebra(&[("x", 3)], &[]).unwrap();
        assert_eq!(x3.drop_odd("x").unwrap(), SullivanAlgebra::trivial());

        match non_noetherian_model().drop_odd("x") {
            Err(ModelError::OccursInDifferential { generator, witness }) => {
                assert_eq!((generator.as_str(), witness.as_str()), ("x", "w"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn change_of_variables_on_triple_product() {
        let r = build_algebra(
            &[("x", 3), ("y", 3), ("z", 3), ("a", 8), ("w", 5)],
            &[
                ("a", &|g| &(&g("x") * &g("y")) * &g("z")),
                ("w", &|g| &g("x") * &g("y")),
            ],
        )
        .unwrap();
        let wz = &r.gen_poly("w").unwrap() * &r.gen_poly("z").unwrap();
        let (r2, iso) = r.change_of_variables("a", &(-&wz)).unwrap();
        assert!(r2.d("a").unwrap().is_zero());
        assert_eq!(iso.shift, -&wz);
        // identity move
        let (same, _) = r2.change_of_variables("a", &Poly::zero(r2.universe())).unwrap();
        assert_eq!(same, r2);
        // a non-cocycle shift is refused
        assert!(matches!(
            r.change_of_variables("a", &wz),
            Err(ModelError::NotCocycle(_))
        ));
    }

    #[test]
    fn odd_sphere_rewrite_completes_square() {
        // dy = x^2 + a x + 3 a^2
        let m = build_algebra(
            &[("a", 2), ("x", 2), ("y", 3)],
            &[("y", &|g| &(&g("x").pow(2) + &(&g("a") * &g("x"))) + &g("a").pow(2).scale(&rat(3)))],
        )
        .unwrap();
        let out = m.odd_sphere_rewrite("x", "y").unwrap();
        let g = |n: &str| out.gen_poly(n).unwrap();
        let want = &g("x").pow(2) + &g("a").pow(2).scale(&(rat(3) - ratio(1, 4)));
        assert_eq!(out.d("y").unwrap(), &want);
        assert!(out.d("x").unwrap().is_zero());

        let bad = build_algebra(&[("x", 2), ("y", 3)], &[("y", &|g| g("x").pow(2).scale(&rat(2)))]).unwrap();
        assert!(matches!(bad.odd_sphere_rewrite("x", "y"), Err(ModelError::Shape(_))));
    }
}
