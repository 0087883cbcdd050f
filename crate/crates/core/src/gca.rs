//! Free graded-commutative algebras over the rationals.
//!
//! A [`Universe`] fixes an ordered generator set. Monomials are exponent
//! vectors over that set and always denote the product of their factors
//! taken in canonical generator order, so the sign of a product comes from
//! sorting the odd factors back into that order.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exact coefficients used everywhere in the crate.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GcaError {
    #[error("operands live over different generator sets")]
    MismatchedUniverse,
    #[error("generator {name} has codegree {codegree}; codegrees must be at least 2")]
    InvalidCodegree { name: String, codegree: u32 },
    #[error("invalid generator name {0:?}")]
    InvalidName(String),
    #[error("duplicate generator {0}")]
    DuplicateGenerator(String),
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
    #[error("polynomial is not homogeneous")]
    Inhomogeneous,
    #[error("expected codegree {expected}, found {found}")]
    DegreeMismatch { expected: u32, found: u32 },
}

/// A basis element of the generating space, graded by codegree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Generator {
    name: String,
    codegree: u32,
}

impl Generator {
    pub fn new(name: impl Into<String>, codegree: u32) -> Result<Self, GcaError> {
        let name = name.into();
        if !is_identifier(&name) {
            return Err(GcaError::InvalidName(name));
        }
        if codegree < 2 {
            return Err(GcaError::InvalidCodegree { name, codegree });
        }
        Ok(Generator { name, codegree })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn codegree(&self) -> u32 {
        self.codegree
    }

    pub fn is_odd(&self) -> bool {
        self.codegree % 2 == 1
    }
}

impl Ord for Generator {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.codegree, &self.name).cmp(&(other.codegree, &other.name))
    }
}

impl PartialOrd for Generator {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

/// An ordered generator set in canonical `(codegree, name)` order.
#[derive(Debug, Clone)]
pub struct Universe {
    gens: Vec<Generator>,
    index: HashMap<String, usize>,
}

impl PartialEq for Universe {
    fn eq(&self, other: &Self) -> bool {
        self.gens == other.gens
    }
}

impl Eq for Universe {}

impl Universe {
    pub fn new(mut gens: Vec<Generator>) -> Result<Arc<Self>, GcaError> {
        gens.sort();
        let mut index = HashMap::with_capacity(gens.len());
        for (i, g) in gens.iter().enumerate() {
            if index.insert(g.name.clone(), i).is_some() {
                return Err(GcaError::DuplicateGenerator(g.name.clone()));
            }
        }
        Ok(Arc::new(Universe { gens, index }))
    }

    pub fn empty() -> Arc<Self> {
        Arc::new(Universe {
            gens: Vec::new(),
            index: HashMap::new(),
        })
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn get(&self, name: &str) -> Option<&Generator> {
        self.index_of(name).map(|i| &self.gens[i])
    }

    pub fn generator(&self, i: usize) -> &Generator {
        &self.gens[i]
    }

    pub fn max_codegree(&self) -> u32 {
        self.gens.iter().map(|g| g.codegree).max().unwrap_or(0)
    }

    pub(crate) fn same(a: &Arc<Universe>, b: &Arc<Universe>) -> bool {
        Arc::ptr_eq(a, b) || **a == **b
    }
}

/// Canonical monomial: exponents indexed by generator position.
///
/// The order compares exponents starting from the largest generator, so a
/// monomial involving a later generator is larger.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        for (a, b) in self.exps.iter().rev().zip(other.exps.iter().rev()) {
            match a.cmp(b) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Monomial {
    pub fn one(len: usize) -> Self {
        Monomial { exps: vec![0; len] }
    }

    pub fn generator(len: usize, i: usize) -> Self {
        let mut m = Monomial::one(len);
        m.exps[i] = 1;
        m
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Number of generator factors counted with multiplicity.
    pub fn word_length(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn codegree(&self, u: &Universe) -> u32 {
        self.exps
            .iter()
            .zip(&u.gens)
            .map(|(&e, g)| e * g.codegree)
            .sum()
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
    }

    /// Product of two canonical monomials as `(sign, monomial)`, or `None`
    /// when an odd generator would be squared.
    pub fn multiply(&self, other: &Monomial, u: &Universe) -> Option<(bool, Monomial)> {
        let mut negative = false;
        // odd factors of `self` that sit after each odd factor of `other`
        let mut odd_after = 0u32;
        for i in (0..self.exps.len()).rev() {
            if !u.gens[i].is_odd() {
                continue;
            }
            if other.exps[i] > 0 {
                if self.exps[i] > 0 {
                    return None;
                }
                if odd_after % 2 == 1 {
                    negative = !negative;
                }
            }
            if self.exps[i] > 0 {
                odd_after += 1;
            }
        }
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a + b)
            .collect();
        Some((negative, Monomial { exps }))
    }

    pub fn display(&self, u: &Universe) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        for i in self.support() {
            let name = &u.gens[i].name;
            match self.exps[i] {
                1 => parts.push(name.clone()),
                e => parts.push(format!("{name}^{e}")),
            }
        }
        parts.join("*")
    }
}

/// All canonical monomials of codegree exactly `n`, in ascending monomial order.
pub fn basis(n: u32, u: &Universe) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = vec![0u32; u.len()];
    enumerate(u, u.len(), n, &mut exps, &mut out);
    out.sort();
    out
}

fn enumerate(u: &Universe, upto: usize, remaining: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
    if remaining == 0 {
        out.push(Monomial { exps: exps.clone() });
        return;
    }
    if upto == 0 {
        return;
    }
    let i = upto - 1;
    let g = &u.gens[i];
    let max_e = if g.is_odd() { 1 } else { remaining / g.codegree };
    for e in 0..=max_e.min(remaining / g.codegree) {
        exps[i] = e;
        enumerate(u, i, remaining - e * g.codegree, exps, out);
    }
    exps[i] = 0;
}

/// Monomials of codegree `n` with at least two factors, i.e. a basis of the
/// decomposables in that codegree.
pub fn decomposable_basis(n: u32, u: &Universe) -> Vec<Monomial> {
    basis(n, u)
        .into_iter()
        .filter(|m| m.word_length() >= 2)
        .collect()
}

/// Sparse exact-rational element of the free graded-commutative algebra.
#[derive(Debug, Clone)]
pub struct Poly {
    universe: Arc<Universe>,
    terms: BTreeMap<Monomial, Rational>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        Universe::same(&self.universe, &other.universe) && self.terms == other.terms
    }
}

impl Eq for Poly {}

impl Poly {
    pub fn zero(u: &Arc<Universe>) -> Self {
        Poly {
            universe: Arc::clone(u),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(u: &Arc<Universe>) -> Self {
        Poly::constant(u, Rational::one())
    }

    pub fn constant(u: &Arc<Universe>, c: Rational) -> Self {
        Poly::monomial(u, Monomial::one(u.len()), c)
    }

    pub fn monomial(u: &Arc<Universe>, m: Monomial, c: Rational) -> Self {
        let mut p = Poly::zero(u);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn generator(u: &Arc<Universe>, name: &str) -> Result<Self, GcaError> {
        let i = u
            .index_of(name)
            .ok_or_else(|| GcaError::UnknownGenerator(name.to_string()))?;
        Ok(Poly::monomial(u, Monomial::generator(u.len(), i), Rational::one()))
    }

    pub fn from_terms(u: &Arc<Universe>, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Poly::zero(u);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Rational> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, Rational> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Codegree shared by all terms; `Ok(None)` for the zero polynomial.
    pub fn homogeneous_codegree(&self) -> Result<Option<u32>, GcaError> {
        let mut deg = None;
        for m in self.terms.keys() {
            let d = m.codegree(&self.universe);
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => return Err(GcaError::Inhomogeneous),
                _ => {}
            }
        }
        Ok(deg)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous_codegree().is_ok()
    }

    /// Checks that the polynomial is homogeneous of codegree `n` (zero passes).
    pub fn expect_codegree(&self, n: u32) -> Result<(), GcaError> {
        match self.homogeneous_codegree()? {
            Some(d) if d != n => Err(GcaError::DegreeMismatch { expected: n, found: d }),
            _ => Ok(()),
        }
    }

    /// Smallest word length over the terms (`None` for zero).
    pub fn min_word_length(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::word_length).min()
    }

    pub fn mentions(&self, generator: usize) -> bool {
        self.terms.keys().any(|m| m.exps[generator] > 0)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.universe);
        }
        Poly {
            universe: Arc::clone(&self.universe),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// Graded-commutative product.
    pub fn multiply(&self, other: &Poly) -> Result<Poly, GcaError> {
        if !Universe::same(&self.universe, &other.universe) {
            return Err(GcaError::MismatchedUniverse);
        }
        let mut out = Poly::zero(&self.universe);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some((neg, m)) = ma.multiply(mb, &self.universe) {
                    let c = ca * cb;
                    out.add_term(m, if neg { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one(&self.universe);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Replaces every occurrence of generator `name` by `replacement`.
    ///
    /// The replacement must be homogeneous of the generator's codegree (zero
    /// is always accepted). Substitution is simultaneous, so the replacement
    /// may itself mention the generator.
    pub fn substitute(&self, name: &str, replacement: &Poly) -> Result<Poly, GcaError> {
        if !Universe::same(&self.universe, &replacement.universe) {
            return Err(GcaError::MismatchedUniverse);
        }
        let u = &self.universe;
        let i = u
            .index_of(name)
            .ok_or_else(|| GcaError::UnknownGenerator(name.to_string()))?;
        replacement.expect_codegree(u.gens[i].codegree)?;
        let mut out = Poly::zero(u);
        let mut powers: Vec<Poly> = vec![Poly::one(u)];
        for (m, c) in &self.terms {
            let k = m.exps[i];
            if k == 0 {
                out.add_term(m.clone(), c.clone());
                continue;
            }
            // m = sign * g^k * rest
            let mut rest = m.clone();
            rest.exps[i] = 0;
            let negative = u.gens[i].is_odd()
                && m.exps[..i]
                    .iter()
                    .zip(&u.gens[..i])
                    .filter(|(&e, g)| e > 0 && g.is_odd())
                    .count()
                    % 2
                    == 1;
            while powers.len() <= k as usize {
                let next = &powers[powers.len() - 1] * replacement;
                powers.push(next);
            }
            let coeff = if negative { -c.clone() } else { c.clone() };
            let term = &powers[k as usize] * &Poly::monomial(u, rest, coeff);
            out = &out + &term;
        }
        Ok(out)
    }

    /// Re-expresses the polynomial over another generator set, matching
    /// generators by name.
    pub fn transport(&self, target: &Arc<Universe>) -> Result<Poly, GcaError> {
        if Universe::same(&self.universe, target) {
            return Ok(Poly {
                universe: Arc::clone(target),
                terms: self.terms.clone(),
            });
        }
        let map: Vec<Option<usize>> = self
            .universe
            .gens
            .iter()
            .map(|g| match target.get(&g.name) {
                Some(h) if h.codegree == g.codegree => target.index_of(&g.name),
                _ => None,
            })
            .collect();
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            // assemble the product factor by factor so signs follow the new order
            let mut acc = Poly::one(target);
            for i in m.support() {
                let j = map[i].ok_or_else(|| {
                    GcaError::UnknownGenerator(self.universe.gens[i].name.clone())
                })?;
                let mut e = Monomial::one(target.len());
                e.exps[j] = m.exps[i];
                acc = &acc * &Poly::monomial(target, e, Rational::one());
            }
            out = &out + &acc.scale(c);
        }
        Ok(out)
    }

    /// Parity of the homogeneous polynomial's codegree; zero counts as even.
    pub fn is_odd(&self) -> bool {
        matches!(self.homogeneous_codegree(), Ok(Some(d)) if d % 2 == 1)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        assert!(
            Universe::same(&self.universe, &rhs.universe),
            "adding polynomials over different generator sets"
        );
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            universe: Arc::clone(&self.universe),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.multiply(rhs)
            .expect("multiplying polynomials over different generator sets")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let negative = c.is_negative();
            let abs = c.abs();
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { "-" } else { "+" })?;
            }
            first = false;
            let mono = m.display(&self.universe);
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn universe(spec: &[(&str, u32)]) -> Arc<Universe> {
        Universe::new(
            spec.iter()
                .map(|(n, d)| Generator::new(*n, *d).unwrap())
                .collect(),
        )
        .unwrap()
    }

    fn g(u: &Arc<Universe>, n: &str) -> Poly {
        Poly::generator(u, n).unwrap()
    }

    #[test]
    fn odd_square_vanishes() {
        let u = universe(&[("x", 3), ("y", 3)]);
        let x = g(&u, "x");
        assert!((&x * &x).is_zero());
    }

    #[test]
    fn odd_transposition_sign() {
        let u = universe(&[("x", 3), ("y", 3)]);
        let (x, y) = (g(&u, "x"), g(&u, "y"));
        assert_eq!(&y * &x, -&(&x * &y));
    }

    #[test]
    fn even_factors_commute() {
        let u = universe(&[("v", 2), ("x", 3)]);
        let (v, x) = (g(&u, "v"), g(&u, "x"));
        let lhs = &v.pow(2) * &(&v * &x);
        assert_eq!(lhs, &v.pow(3) * &x);
        assert_eq!(lhs.to_string(), "v^3*x");
    }

    #[test]
    fn mismatched_universe_is_rejected() {
        let u = universe(&[("x", 3)]);
        let w = universe(&[("y", 3)]);
        assert_eq!(
            g(&u, "x").multiply(&g(&w, "y")),
            Err(GcaError::MismatchedUniverse)
        );
    }

    #[test]
    fn codegree_one_rejected() {
        assert!(matches!(
            Generator::new("e", 1),
            Err(GcaError::InvalidCodegree { .. })
        ));
        assert!(matches!(
            Universe::new(vec![
                Generator::new("a", 2).unwrap(),
                Generator::new("a", 4).unwrap()
            ]),
            Err(GcaError::DuplicateGenerator(_))
        ));
    }

    #[test]
    fn substitute_zero() {
        let u = universe(&[("v", 2), ("x", 3)]);
        let vx = &g(&u, "v") * &g(&u, "x");
        assert!(vx.substitute("x", &Poly::zero(&u)).unwrap().is_zero());
    }

    #[test]
    fn substitute_completes_the_square() {
        // x^2 + a x + b with x' = x - a/2 gives x^2 + (b - a^2/4)
        let u = universe(&[("a", 2), ("x", 2), ("b", 4)]);
        let (a, x, b) = (g(&u, "a"), g(&u, "x"), g(&u, "b"));
        let p = &(&x.pow(2) + &(&a * &x)) + &b;
        let shifted = &x - &a.scale(&ratio(1, 2));
        let got = p.substitute("x", &shifted).unwrap();
        let want = &x.pow(2) + &(&b - &a.pow(2).scale(&ratio(1, 4)));
        assert_eq!(got, want);
    }

    #[test]
    fn substitute_checks_degree() {
        let u = universe(&[("v", 2), ("x", 3)]);
        let v = g(&u, "v");
        assert!(matches!(
            v.substitute("x", &v),
            Err(GcaError::DegreeMismatch { expected: 3, found: 2 })
        ));
        let inhom = &v + &g(&u, "x");
        assert_eq!(v.substitute("v", &inhom), Err(GcaError::Inhomogeneous));
    }

    #[test]
    fn basis_examples() {
        let u = universe(&[("v", 2), ("x", 3), ("w", 4)]);
        assert_eq!(basis(0, &u), vec![Monomial::one(3)]);
        let show = |n| -> Vec<String> { basis(n, &u).iter().map(|m| m.display(&u)).collect() };
        assert_eq!(show(5), vec!["v*x"]);
        assert_eq!(show(7), vec!["v^2*x", "x*w"]);
        assert!(show(1).is_empty());
    }

    #[test]
    fn basis_of_two_even_two_odd_in_codegree_four() {
        let u = universe(&[("u", 2), ("v", 2), ("y", 3), ("z", 3)]);
        assert_eq!(basis(4, &u).len(), 3);
        assert_eq!(basis(6, &u).len(), 5); // u^3, u^2v, uv^2, v^3, yz
    }

    #[test]
    fn transport_reorders_with_signs() {
        let u = universe(&[("a", 3), ("b", 3)]);
        // same names, different codegree order after renaming is impossible,
        // so exercise a genuine reorder via an extra generator
        let w = universe(&[("a", 3), ("b", 3), ("c", 5)]);
        let ab = &g(&u, "a") * &g(&u, "b");
        let moved = ab.transport(&w).unwrap();
        assert_eq!(moved, &g(&w, "a") * &g(&w, "b"));
        let back = moved.transport(&u).unwrap();
        assert_eq!(back, ab);
        let c = g(&w, "c");
        assert!(matches!(c.transport(&u), Err(GcaError::UnknownGenerator(_))));
    }

    #[test]
    fn display_forms() {
        let u = universe(&[("v", 2), ("x", 3)]);
        let p = &g(&u, "v").scale(&ratio(-1, 2)) + &Poly::constant(&u, rat(3));
        assert_eq!(p.to_string(), "-1/2*v + 3");
    }
}
