//! Exact sparse linear algebra over the rationals.
//!
//! Rank uses fraction-free integer elimination; subspace work (kernels,
//! solving, normal forms) uses a fully reduced row echelon form whose pivot
//! is always the largest nonzero column.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::gca::Rational;

pub type SparseVec = BTreeMap<usize, Rational>;

pub(crate) fn axpy(target: &mut SparseVec, scale: &Rational, x: &SparseVec) {
    if scale.is_zero() {
        return;
    }
    for (&k, v) in x {
        let entry = target.entry(k).or_insert_with(Rational::zero);
        *entry += scale * v;
        if entry.is_zero() {
            target.remove(&k);
        }
    }
}

pub fn dot(a: &SparseVec, b: &SparseVec) -> Rational {
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    small
        .iter()
        .filter_map(|(k, v)| large.get(k).map(|w| v * w))
        .fold(Rational::zero(), |acc, x| acc + x)
}

#[derive(Debug, Clone)]
struct Row {
    vec: SparseVec,
    combo: SparseVec,
}

/// Fully reduced row echelon basis of a subspace.
///
/// Every stored row has coefficient 1 at its pivot and 0 at every other
/// pivot. When tracking is enabled each row also remembers how it was built
/// from the labelled input vectors.
#[derive(Debug, Clone, Default)]
pub struct Echelon {
    rows: BTreeMap<usize, Row>,
    track: bool,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon::default()
    }

    pub fn tracked() -> Self {
        Echelon {
            rows: BTreeMap::new(),
            track: true,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn row(&self, pivot: usize) -> Option<&SparseVec> {
        self.rows.get(&pivot).map(|r| &r.vec)
    }

    pub fn rows(&self) -> impl Iterator<Item = (usize, &SparseVec)> {
        self.rows.iter().map(|(&p, r)| (p, &r.vec))
    }

    /// Remainder of `v` modulo the span.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        self.reduce_tracked(v).0
    }

    /// Returns `(remainder, combo)` with `v = Σ combo[label]·input[label] + remainder`.
    pub fn reduce_tracked(&self, v: &SparseVec) -> (SparseVec, SparseVec) {
        let mut out = v.clone();
        let mut combo = SparseVec::new();
        let hits: Vec<(usize, Rational)> = v
            .iter()
            .filter(|(k, _)| self.rows.contains_key(k))
            .map(|(&k, c)| (k, c.clone()))
            .collect();
        for (p, c) in hits {
            let row = &self.rows[&p];
            axpy(&mut out, &-c.clone(), &row.vec);
            if self.track {
                axpy(&mut combo, &c, &row.combo);
            }
        }
        (out, combo)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` (with an optional label for tracking). Returns the new pivot,
    /// or `None` when `v` was already in the span.
    pub fn insert(&mut self, v: &SparseVec, label: Option<usize>) -> Option<usize> {
        let (mut rem, combo) = self.reduce_tracked(v);
        if rem.is_empty() {
            return None;
        }
        let mut combo = if self.track {
            let mut c = SparseVec::new();
            if let Some(l) = label {
                c.insert(l, Rational::one());
            }
            axpy(&mut c, &-Rational::one(), &combo);
            c
        } else {
            SparseVec::new()
        };
        let (&pivot, lead) = rem.iter().next_back().expect("nonempty");
        let inv = lead.recip();
        for x in rem.values_mut() {
            *x *= &inv;
        }
        for x in combo.values_mut() {
            *x *= &inv;
        }
        for row in self.rows.values_mut() {
            if let Some(c) = row.vec.get(&pivot).cloned() {
                axpy(&mut row.vec, &-c.clone(), &rem);
                if self.track {
                    axpy(&mut row.combo, &-c, &combo);
                }
            }
        }
        self.rows.insert(pivot, Row { vec: rem, combo });
        Some(pivot)
    }

    /// A functional vanishing on the span but not on `v`, when `v` lies
    /// outside the span.
    pub fn separating_functional(&self, v: &SparseVec) -> Option<SparseVec> {
        let rem = self.reduce(v);
        let (&c, _) = rem.iter().next_back()?;
        let mut phi = SparseVec::new();
        phi.insert(c, Rational::one());
        for (&p, row) in &self.rows {
            if let Some(x) = row.vec.get(&c) {
                phi.insert(p, -x.clone());
            }
        }
        Some(phi)
    }
}

/// A linear map given by the images of the domain basis vectors.
#[derive(Debug, Clone)]
pub struct SparseMatrix {
    codomain_dim: usize,
    columns: Vec<SparseVec>,
}

/// Outcome of solving `M g = f`.
#[derive(Debug, Clone, PartialEq)]
pub enum Solution {
    /// Coefficients over the domain basis.
    Solved(SparseVec),
    /// A functional on the codomain that kills every column but not `f`.
    Refused(SparseVec),
}

impl SparseMatrix {
    pub fn from_columns(codomain_dim: usize, columns: Vec<SparseVec>) -> Self {
        SparseMatrix {
            codomain_dim,
            columns,
        }
    }

    pub fn domain_dim(&self) -> usize {
        self.columns.len()
    }

    pub fn codomain_dim(&self) -> usize {
        self.codomain_dim
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.columns
    }

    pub fn apply(&self, x: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&j, c) in x {
            axpy(&mut out, c, &self.columns[j]);
        }
        out
    }

    pub fn column_echelon(&self, track: bool) -> Echelon {
        let mut e = if track { Echelon::tracked() } else { Echelon::new() };
        for (j, c) in self.columns.iter().enumerate() {
            e.insert(c, Some(j));
        }
        e
    }

    /// Rank by fraction-free integer elimination.
    pub fn rank(&self) -> usize {
        fraction_free_rank(self.columns.iter().map(integer_row).collect())
    }

    /// Kernel basis; asserts rank + nullity = domain dimension.
    pub fn kernel(&self) -> Vec<SparseVec> {
        let mut e = Echelon::tracked();
        let mut kernel = Vec::new();
        for (j, c) in self.columns.iter().enumerate() {
            let (rem, combo) = e.reduce_tracked(c);
            if rem.is_empty() {
                let mut k = SparseVec::new();
                k.insert(j, Rational::one());
                axpy(&mut k, &-Rational::one(), &combo);
                kernel.push(k);
            } else {
                e.insert(c, Some(j));
            }
        }
        assert_eq!(e.rank() + kernel.len(), self.domain_dim(), "rank-nullity");
        kernel
    }

    pub fn solve(&self, target: &SparseVec) -> Solution {
        let e = self.column_echelon(true);
        let (rem, combo) = e.reduce_tracked(target);
        if rem.is_empty() {
            Solution::Solved(combo)
        } else {
            Solution::Refused(e.separating_functional(target).expect("nonzero remainder"))
        }
    }
}

/// Clears denominators and content, producing a primitive integer row.
pub fn integer_row(v: &SparseVec) -> BTreeMap<usize, BigInt> {
    let lcm = v
        .values()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut row: BTreeMap<usize, BigInt> = v
        .iter()
        .map(|(&k, x)| (k, x.numer() * (&lcm / x.denom())))
        .collect();
    make_primitive(&mut row);
    row
}

fn make_primitive(row: &mut BTreeMap<usize, BigInt>) {
    let g = row.values().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in row.values_mut() {
            *x /= &g;
        }
    }
}

/// Rank of a set of integer rows by fraction-free elimination on leading
/// (largest) columns. Rows with small support are used as pivots first.
pub fn fraction_free_rank(mut rows: Vec<BTreeMap<usize, BigInt>>) -> usize {
    rows.retain(|r| !r.is_empty());
    rows.sort_by_key(|r| r.len());
    let mut pivots: HashMap<usize, BTreeMap<usize, BigInt>> = HashMap::new();
    for mut r in rows {
        while let Some((&lead, _)) = r.iter().next_back() {
            match pivots.get(&lead) {
                None => {
                    pivots.insert(lead, r);
                    break;
                }
                Some(p) => {
                    let a = p[&lead].clone();
                    let b = r[&lead].clone();
                    let g = a.gcd(&b);
                    let (a, b) = (&a / &g, &b / &g);
                    for x in r.values_mut() {
                        *x *= &a;
                    }
                    for (&k, x) in p {
                        let entry = r.entry(k).or_insert_with(BigInt::zero);
                        *entry -= &b * x;
                        if entry.is_zero() {
                            r.remove(&k);
                        }
                    }
                    make_primitive(&mut r);
                }
            }
        }
    }
    pivots.len()
}

/// Sign-normalizes a vector so that its leading (largest) entry is positive.
pub fn normalize_sign(v: &mut SparseVec) {
    if let Some((_, lead)) = v.iter().next_back() {
        if lead.is_negative() {
            for x in v.values_mut() {
                *x = -x.clone();
            }
        }
    }
}
