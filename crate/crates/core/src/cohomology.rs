//! Degree-truncated cochain complexes of Sullivan algebras and everything
//! computed from them: cohomology tables, cup products, coboundary solving,
//! the dual Hurewicz image and truncated ring presentations.

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::gca::{basis, decomposable_basis, GcaError, Generator, Monomial, Poly, Rational, Universe};
use crate::linalg::{axpy, normalize_sign, Echelon, SparseMatrix, SparseVec};
use crate::model::{ModelError, SullivanAlgebra};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CohomologyError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("codegree {codegree} is outside the computed range 0..={max}")]
    OutOfRange { codegree: u32, max: u32 },
    #[error("{0} is not a cocycle")]
    NotCocycle(String),
}

impl From<GcaError> for CohomologyError {
    fn from(e: GcaError) -> Self {
        CohomologyError::Model(e.into())
    }
}

/// Monomial bases of the cochain groups with index lookup.
#[derive(Debug, Clone)]
pub struct CochainBasis {
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl CochainBasis {
    pub fn new(monomials: Vec<Monomial>) -> Self {
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        CochainBasis { monomials, index }
    }

    pub fn of_codegree(n: u32, u: &Universe) -> Self {
        CochainBasis::new(basis(n, u))
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn to_vec(&self, p: &Poly) -> SparseVec {
        p.terms()
            .iter()
            .map(|(m, c)| {
                let i = *self
                    .index
                    .get(m)
                    .expect("monomial outside the cochain basis");
                (i, c.clone())
            })
            .collect()
    }

    pub fn to_poly(&self, u: &Arc<Universe>, v: &SparseVec) -> Poly {
        Poly::from_terms(u, v.iter().map(|(&i, c)| (self.monomials[i].clone(), c.clone())))
    }
}

/// The map d: C^n → C^{n+1} restricted to the span of `domain`.
pub fn differential_matrix(a: &SullivanAlgebra, domain: &[Monomial], target: &CochainBasis) -> SparseMatrix {
    let columns = domain
        .iter()
        .map(|m| target.to_vec(&a.d_monomial(m)))
        .collect();
    SparseMatrix::from_columns(target.len(), columns)
}

/// Ranks of d_n for n = 0..=max, computed independently per codegree.
pub fn differential_ranks(a: &SullivanAlgebra, max: u32) -> Vec<usize> {
    (0..=max)
        .into_par_iter()
        .map(|n| {
            let src = basis(n, a.universe());
            let dst = CochainBasis::of_codegree(n + 1, a.universe());
            differential_matrix(a, &src, &dst).rank()
        })
        .collect()
}

/// dim H^n for n = 0..=max via fraction-free ranks.
pub fn cohomology_dims(a: &SullivanAlgebra, max: u32) -> Vec<usize> {
    let ranks = differential_ranks(a, max);
    (0..=max)
        .map(|n| {
            let c = basis(n, a.universe()).len();
            let below = if n == 0 { 0 } else { ranks[n as usize - 1] };
            c - ranks[n as usize] - below
        })
        .collect()
}

/// Cohomology in one codegree: boundaries in reduced echelon form and
/// representatives reduced against them.
#[derive(Debug, Clone)]
pub struct DegreeData {
    pub codegree: u32,
    pub cochain_dim: usize,
    /// Rank of d: C^n → C^{n+1}.
    pub rank_d: usize,
    basis: CochainBasis,
    boundaries: Echelon,
    reps: Vec<(usize, SparseVec)>,
    rep_polys: Vec<Poly>,
}

impl DegreeData {
    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn representatives(&self) -> &[Poly] {
        &self.rep_polys
    }

    pub fn cochain_basis(&self) -> &CochainBasis {
        &self.basis
    }
}

/// Dimensions and representatives of H^n for n ≤ `max_codegree`.
#[derive(Debug, Clone)]
pub struct CohomologyTable {
    algebra: SullivanAlgebra,
    max_codegree: u32,
    degrees: Vec<DegreeData>,
}

/// Coordinates of a class in the representative basis of its codegree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassExpr {
    pub codegree: u32,
    pub coords: Vec<Rational>,
}

impl ClassExpr {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }
}

impl CohomologyTable {
    pub fn max_codegree(&self) -> u32 {
        self.max_codegree
    }

    pub fn algebra(&self) -> &SullivanAlgebra {
        &self.algebra
    }

    pub fn degree(&self, n: u32) -> Result<&DegreeData, CohomologyError> {
        self.degrees
            .get(n as usize)
            .ok_or(CohomologyError::OutOfRange {
                codegree: n,
                max: self.max_codegree,
            })
    }

    pub fn dims(&self) -> Vec<usize> {
        self.degrees.iter().map(DegreeData::dim).collect()
    }

    pub fn dim(&self, n: u32) -> usize {
        self.degrees.get(n as usize).map_or(0, DegreeData::dim)
    }

    pub fn representatives(&self, n: u32) -> &[Poly] {
        self.degrees
            .get(n as usize)
            .map_or(&[][..], |d| d.representatives())
    }

    /// Expresses a cocycle in the representative basis.
    pub fn class_of(&self, z: &Poly) -> Result<ClassExpr, CohomologyError> {
        let z = z.transport(self.algebra.universe())?;
        let n = match z.homogeneous_codegree()? {
            Some(n) => n,
            None => {
                return Ok(ClassExpr {
                    codegree: 0,
                    coords: vec![Rational::zero(); self.dim(0)],
                })
            }
        };
        let data = self.degree(n)?;
        let v = data.basis.to_vec(&z);
        let reduced = data.boundaries.reduce(&v);
        let coords: Vec<Rational> = data
            .reps
            .iter()
            .map(|(p, _)| reduced.get(p).cloned().unwrap_or_else(Rational::zero))
            .collect();
        let mut rest = reduced;
        for ((_, r), c) in data.reps.iter().zip(&coords) {
            axpy(&mut rest, &-c.clone(), r);
        }
        if !rest.is_empty() {
            return Err(CohomologyError::NotCocycle(z.to_string()));
        }
        Ok(ClassExpr { codegree: n, coords })
    }

    /// The cocycle `Σ coords_i · rep_i`.
    pub fn class_representative(&self, c: &ClassExpr) -> Result<Poly, CohomologyError> {
        let data = self.degree(c.codegree)?;
        let mut out = Poly::zero(self.algebra.universe());
        for (x, r) in c.coords.iter().zip(&data.rep_polys) {
            out = &out + &r.scale(x);
        }
        Ok(out)
    }
}

/// Computes H^n with deterministic representatives for n ≤ `max`.
pub fn cohomology(a: &SullivanAlgebra, max: u32) -> CohomologyTable {
    let u = a.universe();
    let bases: Vec<CochainBasis> = (0..=max + 1)
        .map(|n| CochainBasis::of_codegree(n, u))
        .collect();
    let degrees: Vec<DegreeData> = (0..=max)
        .into_par_iter()
        .map(|n| degree_data(a, n, &bases))
        .collect();
    CohomologyTable {
        algebra: a.clone(),
        max_codegree: max,
        degrees,
    }
}

fn degree_data(a: &SullivanAlgebra, n: u32, bases: &[CochainBasis]) -> DegreeData {
    let u = a.universe();
    let here = &bases[n as usize];
    let next = &bases[n as usize + 1];
    let out_map = differential_matrix(a, here.monomials(), next);
    let mut boundaries = Echelon::new();
    if n > 0 {
        let prev = &bases[n as usize - 1];
        for m in prev.monomials() {
            boundaries.insert(&here.to_vec(&a.d_monomial(m)), None);
        }
    }
    let cycles = out_map.kernel();
    let rank_d = here.len() - cycles.len();
    let mut rep_echelon = Echelon::new();
    for z in &cycles {
        rep_echelon.insert(&boundaries.reduce(z), None);
    }
    let reps: Vec<(usize, SparseVec)> = rep_echelon
        .rows()
        .map(|(p, v)| (p, v.clone()))
        .collect();
    let rep_polys = reps.iter().map(|(_, v)| here.to_poly(u, v)).collect();
    DegreeData {
        codegree: n,
        cochain_dim: here.len(),
        rank_d,
        basis: here.clone(),
        boundaries,
        reps,
        rep_polys,
    }
}

/// Product of two classes, reduced into the representative basis.
pub fn cup_product(table: &CohomologyTable, alpha: &Poly, beta: &Poly) -> Result<ClassExpr, CohomologyError> {
    let a = table.algebra();
    let (alpha, beta) = (alpha.transport(a.universe())?, beta.transport(a.universe())?);
    for p in [&alpha, &beta] {
        if !a.is_cocycle(p)? {
            return Err(CohomologyError::NotCocycle(p.to_string()));
        }
    }
    let da = alpha.homogeneous_codegree()?.unwrap_or(0);
    let db = beta.homogeneous_codegree()?.unwrap_or(0);
    if da + db > table.max_codegree() {
        return Err(CohomologyError::OutOfRange {
            codegree: da + db,
            max: table.max_codegree(),
        });
    }
    let product = &alpha * &beta;
    if product.is_zero() {
        return Ok(ClassExpr {
            codegree: da + db,
            coords: vec![Rational::zero(); table.dim(da + db)],
        });
    }
    table.class_of(&product)
}

/// A linear functional on C^n given by its values on monomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Functional {
    pub codegree: u32,
    pub weights: Poly,
}

impl Functional {
    pub fn evaluate(&self, p: &Poly) -> Rational {
        p.terms()
            .iter()
            .map(|(m, c)| c * self.weights.coefficient(m))
            .fold(Rational::zero(), |acc, x| acc + x)
    }
}

/// Result of solving `d(g) = f` over a chosen domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    Witness(Poly),
    /// `f` is not in the image; the functional kills the image but not `f`.
    Refusal(Functional),
}

impl SolveOutcome {
    pub fn witness(&self) -> Option<&Poly> {
        match self {
            SolveOutcome::Witness(g) => Some(g),
            SolveOutcome::Refusal(_) => None,
        }
    }
}

/// Solves `d(g) = f` with `g` in the span of `domain`.
pub fn solve_in_span(a: &SullivanAlgebra, domain: &[Monomial], f: &Poly) -> Result<SolveOutcome, CohomologyError> {
    let u = a.universe();
    let f = f.transport(u)?;
    let n = match f.homogeneous_codegree()? {
        None => return Ok(SolveOutcome::Witness(Poly::zero(u))),
        Some(n) => n,
    };
    let target = CochainBasis::of_codegree(n, u);
    let matrix = differential_matrix(a, domain, &target);
    match matrix.solve(&target.to_vec(&f)) {
        crate::linalg::Solution::Solved(x) => {
            let g = Poly::from_terms(u, x.iter().map(|(&j, c)| (domain[j].clone(), c.clone())));
            debug_assert_eq!(a.extend_differential(&g).ok(), Some(f.clone()));
            Ok(SolveOutcome::Witness(g))
        }
        crate::linalg::Solution::Refused(phi) => Ok(SolveOutcome::Refusal(Functional {
            codegree: n,
            weights: target.to_poly(u, &phi),
        })),
    }
}

/// Finds `g` with `d(g) = f`, or a certified refusal. `f` must be a
/// homogeneous cocycle.
pub fn is_coboundary(a: &SullivanAlgebra, f: &Poly) -> Result<SolveOutcome, CohomologyError> {
    let f = f.transport(a.universe())?;
    if !a.is_cocycle(&f)? {
        return Err(CohomologyError::NotCocycle(f.to_string()));
    }
    match f.homogeneous_codegree()? {
        None | Some(0) => {
            if f.is_zero() {
                Ok(SolveOutcome::Witness(Poly::zero(a.universe())))
            } else {
                let one = Poly::one(a.universe());
                Ok(SolveOutcome::Refusal(Functional {
                    codegree: 0,
                    weights: one,
                }))
            }
        }
        Some(n) => solve_in_span(a, &basis(n - 1, a.universe()), &f),
    }
}

/// Checks a refusal: φ vanishes on d(m) for every `m` in `domain` and φ(f) ≠ 0.
pub fn verify_refusal(a: &SullivanAlgebra, domain: &[Monomial], f: &Poly, phi: &Functional) -> bool {
    let images_vanish = domain
        .iter()
        .all(|m| phi.evaluate(&a.d_monomial(m)).is_zero());
    images_vanish && !phi.evaluate(f).is_zero()
}

/// One basis vector of the dual Hurewicz image in a codegree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HurewiczClass {
    /// A combination of generators of the codegree.
    pub element: Poly,
    /// Decomposable `g` with `d(element + g) = 0`.
    pub witness: Poly,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HurewiczImage {
    pub codegree: u32,
    pub basis: Vec<HurewiczClass>,
}

/// Decides whether generator `x` is in the dual Hurewicz image: a
/// decomposable `g` with `d(x + g) = 0`, or a functional certifying that
/// `dx ∉ d((Λ^{≥2}V)^{|x|})`.
pub fn hurewicz_solve(a: &SullivanAlgebra, x: &str) -> Result<SolveOutcome, CohomologyError> {
    let g = a.generator(x)?;
    let domain = decomposable_basis(g.codegree(), a.universe());
    let dx = a.d(x)?.clone();
    // a refusal for -dx separates dx equally well
    solve_in_span(a, &domain, &-&dx)
}

/// The subspace of V^n in the image of the dual Hurewicz map, with witnesses.
pub fn hurewicz_image(a: &SullivanAlgebra, n: u32) -> Result<HurewiczImage, CohomologyError> {
    let u = a.universe();
    let gens: Vec<&Generator> = a.generators().iter().filter(|g| g.codegree() == n).collect();
    if gens.is_empty() {
        return Ok(HurewiczImage {
            codegree: n,
            basis: Vec::new(),
        });
    }
    let domain = decomposable_basis(n, u);
    let target = CochainBasis::of_codegree(n + 1, u);
    let images = differential_matrix(a, &domain, &target).column_echelon(false);
    let residues: Vec<SparseVec> = gens
        .iter()
        .map(|g| images.reduce(&target.to_vec(a.d(g.name()).expect("known generator"))))
        .collect();
    let kernel = SparseMatrix::from_columns(target.len(), residues).kernel();
    let mut basis_out = Vec::new();
    for c in kernel {
        let mut element = Poly::zero(u);
        for (&j, coeff) in &c {
            element = &element + &Poly::generator(u, gens[j].name())?.scale(coeff);
        }
        let d_element = a.extend_differential(&element)?;
        let witness = match solve_in_span(a, &domain, &-&d_element)? {
            SolveOutcome::Witness(w) => w,
            SolveOutcome::Refusal(_) => unreachable!("kernel element must be solvable"),
        };
        basis_out.push(HurewiczClass { element, witness });
    }
    Ok(HurewiczImage {
        codegree: n,
        basis: basis_out,
    })
}

/// A generator of the truncated cohomology ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingGenerator {
    pub name: String,
    pub codegree: u32,
    pub representative: Poly,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub codegree: u32,
    /// Polynomial in the ring generators.
    pub poly: Poly,
    /// Squares of odd generators vanish in the free graded-commutative
    /// algebra already; they are listed for completeness.
    pub implicit: bool,
}

#[derive(Debug, Clone)]
pub struct TruncatedPresentation {
    pub max_codegree: u32,
    pub generators: Vec<RingGenerator>,
    pub relations: Vec<Relation>,
    /// No new generators or explicit relations in the top window.
    pub stable: bool,
    pub window: u32,
    pub ring: Arc<Universe>,
}

impl TruncatedPresentation {
    pub fn explicit_relations(&self) -> impl Iterator<Item = &Relation> {
        self.relations.iter().filter(|r| !r.implicit)
    }
}

fn ring_generator_name(a: &SullivanAlgebra, rep: &Poly, n: u32, taken: &[RingGenerator]) -> String {
    if rep.len() == 1 {
        let (m, _) = rep.terms().iter().next().expect("one term");
        if m.word_length() == 1 {
            let i = m.support().next().expect("one factor");
            return a.universe().generator(i).name().to_string();
        }
    }
    let stem = format!("h{n}");
    let used = |s: &str| taken.iter().any(|g| g.name == s) || a.universe().index_of(s).is_some();
    if !used(&stem) {
        return stem;
    }
    (2..)
        .map(|k| format!("{stem}_{k}"))
        .find(|s| !used(s))
        .expect("unbounded name supply")
}

fn evaluate_in_algebra(
    a: &SullivanAlgebra,
    ring: &Universe,
    gens: &[RingGenerator],
    m: &Monomial,
) -> Poly {
    let mut acc = Poly::one(a.universe());
    for i in m.support() {
        let name = ring.generator(i).name();
        let g = gens.iter().find(|g| g.name == name).expect("ring generator");
        acc = &acc * &g.representative.pow(m.exponent(i));
    }
    acc
}

/// Truncated presentation of H^* by generators and relations up to `max`.
pub fn presentation(table: &CohomologyTable, max: u32) -> Result<TruncatedPresentation, CohomologyError> {
    let max = max.min(table.max_codegree());
    let a = table.algebra();
    let mut gens: Vec<RingGenerator> = Vec::new();
    let mut relations: Vec<Relation> = Vec::new();
    let mut ring = Universe::empty();
    let mut last_event = 0u32;
    for n in 1..=max {
        let dim = table.dim(n);
        let free = basis(n, &ring);
        // images of decomposable free monomials
        let image_vecs: Vec<SparseVec> = free
            .iter()
            .map(|m| {
                let p = evaluate_in_algebra(a, &ring, &gens, m);
                coords_vec(&table.class_of(&p).expect("product of cocycles"))
            })
            .collect();
        let mut span = Echelon::new();
        for v in &image_vecs {
            span.insert(v, None);
        }
        let mut new_here = Vec::new();
        for i in 0..dim {
            let mut e = SparseVec::new();
            e.insert(i, Rational::one());
            if span.insert(&e, None).is_some() {
                let rep = table.representatives(n)[i].clone();
                let taken: Vec<RingGenerator> = gens.iter().chain(&new_here).cloned().collect();
                let name = ring_generator_name(a, &rep, n, &taken);
                new_here.push(RingGenerator {
                    name,
                    codegree: n,
                    representative: rep,
                });
            }
        }
        if !new_here.is_empty() {
            last_event = n;
            gens.extend(new_here);
            let ring_gens = gens
                .iter()
                .map(|g| Generator::new(g.name.clone(), g.codegree))
                .collect::<Result<Vec<_>, _>>()?;
            ring = Universe::new(ring_gens)?;
        }
        // relations: kernel of the free algebra map modulo the ideal of older relations
        let free = basis(n, &ring);
        let target_dim = dim;
        let columns: Vec<SparseVec> = free
            .iter()
            .map(|m| {
                let p = evaluate_in_algebra(a, &ring, &gens, m);
                coords_vec(&table.class_of(&p).expect("product of cocycles"))
            })
            .collect();
        let kernel = SparseMatrix::from_columns(target_dim, columns).kernel();
        if kernel.is_empty() {
            continue;
        }
        let free_basis = CochainBasis::new(free.clone());
        let mut ideal = Echelon::new();
        for r in relations.iter().filter(|r| !r.implicit) {
            let rel = r.poly.transport(&ring)?;
            for m in basis(n - r.codegree, &ring) {
                let prod = &Poly::monomial(&ring, m, Rational::one()) * &rel;
                ideal.insert(&free_basis.to_vec(&prod), None);
            }
        }
        let mut fresh = Echelon::new();
        for k in &kernel {
            let rem = ideal.reduce(k);
            fresh.insert(&rem, None);
        }
        for (_, v) in fresh.rows() {
            let mut v = v.clone();
            normalize_sign(&mut v);
            let v = clear_denominators(&v);
            relations.push(Relation {
                codegree: n,
                poly: free_basis.to_poly(&ring, &v),
                implicit: false,
            });
            last_event = n;
        }
    }
    for g in gens.iter().filter(|g| g.codegree % 2 == 1) {
        if 2 * g.codegree <= max {
            let ring_index = ring.index_of(&g.name).expect("ring generator");
            let mut exps = vec![0; ring.len()];
            exps[ring_index] = 2;
            relations.push(Relation {
                codegree: 2 * g.codegree,
                poly: Poly::monomial(&ring, Monomial::from_exponents(exps), Rational::one()),
                implicit: true,
            });
        }
    }
    relations.sort_by_key(|r| r.codegree);
    let window = a.top_codegree().max(1);
    let stable = max >= window && last_event + window <= max;
    Ok(TruncatedPresentation {
        max_codegree: max,
        generators: gens,
        relations,
        stable,
        window,
        ring,
    })
}

fn coords_vec(c: &ClassExpr) -> SparseVec {
    c.coords
        .iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

fn clear_denominators(v: &SparseVec) -> SparseVec {
    let row = crate::linalg::integer_row(v);
    let sign_flip = v
        .iter()
        .next_back()
        .map_or(false, |(_, x)| x.is_negative());
    row.into_iter()
        .map(|(k, x)| {
            let r = Rational::from_integer(x);
            (k, if sign_flip { -r } else { r })
        })
        .collect()
}

/// Whether a pairing matrix H^k × H^{n-k} → H^n (with dim H^n = 1) is
/// nondegenerate.
pub(crate) fn pairing_rank(table: &CohomologyTable, k: u32, n: u32) -> Result<usize, CohomologyError> {
    let left = table.representatives(k).to_vec();
    let right = table.representatives(n - k).to_vec();
    let columns: Vec<SparseVec> = left
        .iter()
        .map(|l| {
            let mut col = SparseVec::new();
            for (j, r) in right.iter().enumerate() {
                let c = cup_product(table, l, r).map(|c| c.coords.first().cloned().unwrap_or_else(Rational::zero))?;
                if !c.is_zero() {
                    col.insert(j, c);
                }
            }
            Ok(col)
        })
        .collect::<Result<_, CohomologyError>>()?;
    Ok(SparseMatrix::from_columns(right.len(), columns).rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn dims(a: &SullivanAlgebra, max: u32) -> Vec<usize> {
        let table = cohomology(a, max);
        let fast = cohomology_dims(a, max);
        assert_eq!(table.dims(), fast);
        fast
    }

    #[test]
    fn squares_fibration_dims() {
        assert_eq!(dims(&catalog::squares_fibration(), 8), vec![1, 0, 2, 0, 1, 1, 1, 1, 1]);
    }

    #[test]
    fn non_noetherian_dims() {
        assert_eq!(
            dims(&catalog::non_noetherian(), 11),
            vec![1, 0, 1, 1, 1, 0, 1, 1, 1, 0, 1, 1]
        );
    }

    #[test]
    fn two_sphere_dims() {
        assert_eq!(dims(&catalog::two_sphere(), 8), vec![1, 0, 1, 0, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn coboundary_examples() {
        let a = catalog::non_noetherian();
        let g = |n: &str| a.gen_poly(n).unwrap();
        let zero = Poly::zero(a.universe());
        assert_eq!(is_coboundary(&a, &zero).unwrap(), SolveOutcome::Witness(zero.clone()));
        assert_eq!(
            is_coboundary(&a, &(&g("v") * &g("x"))).unwrap(),
            SolveOutcome::Witness(g("w"))
        );
        assert!(matches!(is_coboundary(&a, &g("w")), Err(CohomologyError::NotCocycle(_))));

        let odd = catalog::free(&[("x", 3), ("y", 3), ("z", 3)]);
        let xy = &odd.gen_poly("x").unwrap() * &odd.gen_poly("y").unwrap();
        match is_coboundary(&odd, &xy).unwrap() {
            SolveOutcome::Refusal(phi) => {
                assert!(verify_refusal(&odd, &basis(5, odd.universe()), &xy, &phi));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn cup_products() {
        let a = catalog::squares_fibration();
        let t = cohomology(&a, 12);
        let g = |n: &str| a.gen_poly(n).unwrap();
        let p = &(&g("v") * &g("y")) - &(&g("u") * &g("z"));
        assert!(cup_product(&t, &g("u"), &p).unwrap().is_zero());
        assert!(!cup_product(&t, &g("v"), &p).unwrap().is_zero());
        let one = Poly::one(a.universe());
        assert_eq!(cup_product(&t, &one, &p).unwrap(), t.class_of(&p).unwrap());
        assert!(matches!(
            cup_product(&t, &p, &g("v").pow(4)),
            Err(CohomologyError::OutOfRange { codegree: 13, max: 12 })
        ));

        let b = catalog::non_noetherian();
        let tb = cohomology(&b, 8);
        let h = |n: &str| b.gen_poly(n).unwrap();
        assert!(cup_product(&tb, &h("v"), &h("x")).unwrap().is_zero());
    }

    #[test]
    fn hurewicz_examples() {
        let a = catalog::non_noetherian();
        assert!(hurewicz_image(&a, 4).unwrap().basis.is_empty());
        assert!(matches!(hurewicz_solve(&a, "w").unwrap(), SolveOutcome::Refusal(_)));
        let v = hurewicz_image(&a, 2).unwrap();
        assert_eq!(v.basis.len(), 1);
        assert!(v.basis[0].witness.is_zero());

        let r = catalog::triple_product();
        assert!(decomposable_basis(8, r.universe()).is_empty());
        assert!(hurewicz_image(&r, 8).unwrap().basis.is_empty());

        let s = catalog::squares_fibration();
        assert_eq!(hurewicz_image(&s, 2).unwrap().basis.len(), 2);
    }

    #[test]
    fn presentation_of_squares_fibration() {
        let a = catalog::squares_fibration();
        let t = cohomology(&a, 12);
        let p = presentation(&t, 12).unwrap();
        let gens: Vec<(String, u32)> = p.generators.iter().map(|g| (g.name.clone(), g.codegree)).collect();
        assert_eq!(
            gens,
            vec![("u".into(), 2), ("v".into(), 2), ("h5".into(), 5)]
        );
        let rels: Vec<String> = p.relations.iter().map(|r| r.poly.to_string()).collect();
        assert_eq!(rels, vec!["u^2", "u*v", "u*h5", "h5^2"]);
        assert!(p.stable);
    }

    #[test]
    fn presentation_of_two_sphere() {
        let a = catalog::two_sphere();
        let p = presentation(&cohomology(&a, 12), 12).unwrap();
        assert_eq!(p.generators.len(), 1);
        let rels: Vec<String> = p.relations.iter().map(|r| r.poly.to_string()).collect();
        assert_eq!(rels, vec!["x^2"]);
        assert!(p.stable);
    }

    #[test]
    fn same_codegree_ring_generators_get_distinct_names() {
        let a = catalog::free(&[("x", 3), ("y", 3), ("z", 3)]);
        let p = presentation(&cohomology(&a, 10), 10).unwrap();
        let names: Vec<&str> = p.generators.iter().map(|g| g.name.as_str()).collect();
        assert_eq!(names, vec!["x", "y", "z"]);
        let b = crate::model::build_algebra(
            &[("x", 3), ("y", 3), ("u", 2), ("a", 4), ("b", 4)],
            &[("a", &|g| &g("x") * &g("u")), ("b", &|g| &g("y") * &g("u"))],
        )
        .unwrap();
        let p = presentation(&cohomology(&b, 12), 12).unwrap();
        let mut names: Vec<&str> = p.generators.iter().map(|g| g.name.as_str()).collect();
        let count = names.len();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), count, "{names:?}");
    }

    #[test]
    fn presentation_of_non_noetherian_is_unstable() {
        let a = catalog::non_noetherian();
        let p = presentation(&cohomology(&a, 12), 12).unwrap();
        let degs: Vec<u32> = p.generators.iter().map(|g| g.codegree).collect();
        assert_eq!(degs, vec![2, 3, 7, 11]);
        assert!(!p.stable);
    }
}
