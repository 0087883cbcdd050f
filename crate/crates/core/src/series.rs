//! Truncated Laurent series, fitted closed forms, growth and duality checks.
//!
//! A `LaurentSeries` is known exactly on a window `[lo, hi]`; coefficients
//! below `lo` are zero and coefficients above `hi` are unknown.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::cohomology::CohomologyTable;
use crate::gca::{basis, Rational, Universe};
use crate::model::SullivanAlgebra;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("refused: {0}")]
    Refused(String),
}

fn sign(k: i64) -> Rational {
    if k.rem_euclid(2) == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// A Laurent polynomial in `t` over the rationals.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(Rational::one(), 0)
    }

    pub fn monomial(c: Rational, e: i64) -> Self {
        let mut p = LaurentPoly::zero();
        p.add_term(e, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, Rational)>) -> Self {
        let mut p = LaurentPoly::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn from_ints(terms: &[(i64, i64)]) -> Self {
        LaurentPoly::from_terms(terms.iter().map(|&(e, c)| (e, Rational::from_integer(c.into()))))
    }

    /// `1 - t^d`.
    pub fn one_minus_t_pow(d: u32) -> Self {
        LaurentPoly::from_ints(&[(0, 1), (d as i64, -1)])
    }

    fn add_term(&mut self, e: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn terms(&self) -> &BTreeMap<i64, Rational> {
        &self.terms
    }

    pub fn coefficient(&self, e: i64) -> Rational {
        self.terms.get(&e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn low(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn high(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        LaurentPoly::from_terms(self.terms.iter().map(|(&e, x)| (e, x * c)))
    }

    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// `p(1/t)`.
    pub fn reflect(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn eval_one(&self) -> Rational {
        self.terms.values().fold(Rational::zero(), |acc, c| acc + c)
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(LaurentPoly::one(), |acc, _| &acc * self)
    }

    fn to_dense(&self) -> (i64, Vec<Rational>) {
        let Some(lo) = self.low() else {
            return (0, Vec::new());
        };
        let hi = self.high().unwrap();
        let mut v = vec![Rational::zero(); (hi - lo + 1) as usize];
        for (&e, c) in &self.terms {
            v[(e - lo) as usize] = c.clone();
        }
        (lo, v)
    }

    fn from_dense(shift: i64, v: &[Rational]) -> Self {
        LaurentPoly::from_terms(v.iter().enumerate().map(|(i, c)| (shift + i as i64, c.clone())))
    }

    /// Exact quotient in the Laurent polynomial ring, if it exists.
    pub fn div_exact(&self, other: &LaurentPoly) -> Option<LaurentPoly> {
        assert!(!other.is_zero(), "division by zero");
        if self.is_zero() {
            return Some(LaurentPoly::zero());
        }
        let (sa, va) = self.to_dense();
        let (sb, vb) = other.to_dense();
        let (q, r) = dense_divrem(&va, &vb);
        r.is_empty().then(|| LaurentPoly::from_dense(sa - sb, &q))
    }

    /// Multiplicity of `t = 1` as a root; `None` for the zero polynomial.
    pub fn order_at_one(&self) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        let f = LaurentPoly::one_minus_t_pow(1);
        let mut p = self.clone();
        let mut k = 0;
        while let Some(q) = p.div_exact(&f) {
            p = q;
            k += 1;
        }
        Some(k)
    }
}

fn dense_trim(v: &mut Vec<Rational>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn dense_divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut b = b.to_vec();
    dense_trim(&mut b);
    assert!(!b.is_empty(), "division by zero");
    let mut r = a.to_vec();
    dense_trim(&mut r);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lead = b.last().unwrap().clone();
    let mut q = vec![Rational::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let k = r.len() - b.len();
        let c = r.last().unwrap() / &lead;
        for (i, bi) in b.iter().enumerate() {
            r[k + i] -= &c * bi;
        }
        q[k] = c;
        r.pop();
        dense_trim(&mut r);
    }
    dense_trim(&mut q);
    (q, r)
}

fn dense_gcd(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    dense_trim(&mut x);
    dense_trim(&mut y);
    while !y.is_empty() {
        let (_, r) = dense_divrem(&x, &y);
        x = y;
        y = r;
    }
    if let Some(lead) = x.last().cloned() {
        for c in &mut x {
            *c /= &lead;
        }
    }
    x
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (e, -c.clone())).collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&e, c) in &self.terms {
            for (&f, x) in &rhs.terms {
                out.add_term(e + f, c * x);
            }
        }
        out
    }
}

fn write_term(f: &mut fmt::Formatter<'_>, first: bool, c: &Rational, e: i64) -> fmt::Result {
    let mag = c.abs();
    if first {
        if c.is_negative() {
            write!(f, "-")?;
        }
    } else if c.is_negative() {
        write!(f, " - ")?;
    } else {
        write!(f, " + ")?;
    }
    let power = match e {
        0 => String::new(),
        1 => "t".to_string(),
        _ => format!("t^{e}"),
    };
    if power.is_empty() {
        write!(f, "{mag}")
    } else if mag.is_one() {
        write!(f, "{power}")
    } else {
        write!(f, "{mag}*{power}")
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (&e, c)) in self.terms.iter().enumerate() {
            write_term(f, i == 0, c, e)?;
        }
        Ok(())
    }
}

/// A reduced quotient of Laurent polynomials.
///
/// The denominator is an ordinary polynomial with constant term 1 and no
/// common factor with the numerator, so equal functions compare equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFunction {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RationalFunction {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RationalFunction {
                num,
                den: LaurentPoly::one(),
            };
        }
        let (sn, mut vn) = num.to_dense();
        let (sd, mut vd) = den.to_dense();
        let g = dense_gcd(&vn, &vd);
        vn = dense_divrem(&vn, &g).0;
        vd = dense_divrem(&vd, &g).0;
        let c = vd[0].clone();
        for x in vn.iter_mut().chain(vd.iter_mut()) {
            *x /= &c;
        }
        RationalFunction {
            num: LaurentPoly::from_dense(sn - sd, &vn),
            den: LaurentPoly::from_dense(0, &vd),
        }
    }

    pub fn polynomial(p: LaurentPoly) -> Self {
        RationalFunction::new(p, LaurentPoly::one())
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// `f(1/t)`.
    pub fn reflect(&self) -> Self {
        RationalFunction::new(self.num.reflect(), self.den.reflect())
    }

    pub fn mul_poly(&self, p: &LaurentPoly) -> Self {
        RationalFunction::new(&self.num * p, self.den.clone())
    }

    pub fn mul(&self, other: &RationalFunction) -> Self {
        RationalFunction::new(&self.num * &other.num, &self.den * &other.den)
    }

    /// Quotient; panics when `other` is zero.
    pub fn div(&self, other: &RationalFunction) -> Self {
        RationalFunction::new(&self.num * &other.den, &self.den * &other.num)
    }

    pub fn sub(&self, other: &RationalFunction) -> Self {
        RationalFunction::new(
            &(&self.num * &other.den) - &(&other.num * &self.den),
            &self.den * &other.den,
        )
    }

    /// Order of the pole at `t = 1` (negative for a zero).
    pub fn pole_order_at_one(&self) -> i64 {
        match self.num.order_at_one() {
            None => 0,
            Some(z) => self.den.order_at_one().unwrap() as i64 - z as i64,
        }
    }

    /// A single term `c·t^e`, if the function is one.
    pub fn as_monomial(&self) -> Option<(Rational, i64)> {
        if self.den != LaurentPoly::one() || self.num.terms.len() != 1 {
            return None;
        }
        let (&e, c) = self.num.terms.iter().next().unwrap();
        Some((c.clone(), e))
    }

    /// Power series expansion around `t = 0` up to exponent `hi`.
    pub fn expand(&self, hi: i64) -> LaurentSeries {
        let lo = self.num.low().unwrap_or(0).min(hi + 1);
        let (_, vd) = self.den.to_dense();
        let len = (hi - lo + 1).max(0) as usize;
        let mut out: Vec<Rational> = Vec::with_capacity(len);
        for i in 0..len {
            let mut c = self.num.coefficient(lo + i as i64);
            for (j, dj) in vd.iter().enumerate().skip(1).take(i) {
                c -= dj * &out[i - j];
            }
            out.push(c);
        }
        LaurentSeries { lo, coeffs: out }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == LaurentPoly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

/// Coefficients known exactly on `[lo, hi]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentSeries {
    lo: i64,
    coeffs: Vec<Rational>,
}

impl LaurentSeries {
    pub fn new(lo: i64, coeffs: Vec<Rational>) -> Self {
        LaurentSeries { lo, coeffs }
    }

    pub fn from_ints(lo: i64, coeffs: &[i64]) -> Self {
        LaurentSeries::new(lo, coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn zeros(lo: i64, hi: i64) -> Self {
        LaurentSeries::new(lo, vec![Rational::zero(); (hi - lo + 1).max(0) as usize])
    }

    /// `p` read on the window `[lo, hi]`.
    pub fn from_poly(p: &LaurentPoly, lo: i64, hi: i64) -> Self {
        LaurentSeries::new(lo, (lo..=hi).map(|e| p.coefficient(e)).collect())
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.coeffs.len() as i64 - 1
    }

    pub fn window_len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &Rational)> {
        let lo = self.lo;
        self.coeffs.iter().enumerate().map(move |(i, c)| (lo + i as i64, c))
    }

    /// Zero below the window, `None` above it.
    pub fn coefficient(&self, n: i64) -> Option<Rational> {
        if n < self.lo {
            Some(Rational::zero())
        } else {
            self.coeffs.get((n - self.lo) as usize).cloned()
        }
    }

    fn known(&self, n: i64) -> Rational {
        self.coefficient(n).expect("coefficient outside the window")
    }

    pub fn truncate(&self, hi: i64) -> Self {
        let len = (hi - self.lo + 1).clamp(0, self.coeffs.len() as i64) as usize;
        LaurentSeries::new(self.lo, self.coeffs[..len].to_vec())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn last_nonzero(&self) -> Option<i64> {
        self.iter().filter(|(_, c)| !c.is_zero()).map(|(n, _)| n).last()
    }

    pub fn to_poly(&self) -> LaurentPoly {
        LaurentPoly::from_terms(self.iter().map(|(n, c)| (n, c.clone())))
    }

    pub fn mul_poly(&self, p: &LaurentPoly) -> Self {
        let Some(pl) = p.low() else {
            return LaurentSeries::zeros(self.lo, self.hi());
        };
        let lo = self.lo + pl;
        let coeffs = (lo..=self.hi() + pl)
            .map(|n| {
                p.terms
                    .iter()
                    .fold(Rational::zero(), |acc, (&e, c)| acc + c * self.known(n - e))
            })
            .collect();
        LaurentSeries::new(lo, coeffs)
    }

    pub fn mul(&self, other: &LaurentSeries) -> Self {
        let lo = self.lo + other.lo;
        let hi = (self.hi() + other.lo).min(other.hi() + self.lo);
        let coeffs = (lo..=hi)
            .map(|n| {
                (self.lo..=n - other.lo).fold(Rational::zero(), |acc, i| {
                    acc + self.known(i) * other.known(n - i)
                })
            })
            .collect();
        LaurentSeries::new(lo, coeffs)
    }

    fn combine(&self, other: &LaurentSeries, f: impl Fn(Rational, Rational) -> Rational) -> Self {
        let lo = self.lo.min(other.lo);
        let hi = self.hi().min(other.hi());
        LaurentSeries::new(lo, (lo..=hi).map(|n| f(self.known(n), other.known(n))).collect())
    }

    pub fn add(&self, other: &LaurentSeries) -> Self {
        self.combine(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &LaurentSeries) -> Self {
        self.combine(other, |a, b| a - b)
    }

    /// Multiplies by `1/(1 - t^d)`.
    pub fn div_one_minus_t_pow(&self, d: u32) -> Self {
        assert!(d >= 1);
        let d = d as usize;
        let mut out = self.coeffs.clone();
        for i in d..out.len() {
            let prev = out[i - d].clone();
            out[i] += prev;
        }
        LaurentSeries::new(self.lo, out)
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let head = self.to_poly();
        if !head.is_zero() {
            write!(f, "{head} + ")?;
        }
        write!(f, "O(t^{})", self.hi() + 1)
    }
}

/// `numerator / ∏ (1 - t^d)` over a multiset of degrees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalSeriesForm {
    numerator: LaurentPoly,
    denominator: Vec<u32>,
}

impl RationalSeriesForm {
    pub fn new(numerator: LaurentPoly, mut denominator: Vec<u32>) -> Result<Self, SeriesError> {
        if denominator.contains(&0) {
            return Err(SeriesError::Precondition("denominator degree 0".into()));
        }
        denominator.sort_unstable();
        Ok(RationalSeriesForm {
            numerator,
            denominator,
        })
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.numerator
    }

    pub fn denominator(&self) -> &[u32] {
        &self.denominator
    }

    pub fn denominator_poly(&self) -> LaurentPoly {
        self.denominator
            .iter()
            .fold(LaurentPoly::one(), |acc, &d| &acc * &LaurentPoly::one_minus_t_pow(d))
    }

    pub fn to_rational_function(&self) -> RationalFunction {
        RationalFunction::new(self.numerator.clone(), self.denominator_poly())
    }

    pub fn pole_order_at_one(&self) -> i64 {
        self.to_rational_function().pole_order_at_one()
    }

    pub fn expand(&self, hi: i64) -> LaurentSeries {
        let lo = self.numerator.low().unwrap_or(0).min(hi + 1);
        let mut s = LaurentSeries::from_poly(&self.numerator, lo, hi);
        for &d in &self.denominator {
            s = s.div_one_minus_t_pow(d);
        }
        s
    }

    /// Cancels every factor `1 - t^d` that divides the numerator.
    pub fn simplify(&self) -> Self {
        let mut num = self.numerator.clone();
        let mut kept = Vec::new();
        for &d in self.denominator.iter().rev() {
            match num.div_exact(&LaurentPoly::one_minus_t_pow(d)) {
                Some(q) => num = q,
                None => kept.push(d),
            }
        }
        kept.sort_unstable();
        RationalSeriesForm {
            numerator: num,
            denominator: kept,
        }
    }

    pub fn same_function(&self, other: &RationalSeriesForm) -> bool {
        self.to_rational_function() == other.to_rational_function()
    }
}

impl fmt::Display for RationalSeriesForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator.is_empty() {
            return write!(f, "{}", self.numerator);
        }
        write!(f, "({})/", self.numerator)?;
        let mut runs: Vec<(u32, usize)> = Vec::new();
        for &d in &self.denominator {
            match runs.last_mut() {
                Some((e, k)) if *e == d => *k += 1,
                _ => runs.push((d, 1)),
            }
        }
        for (d, k) in runs {
            let base = if d == 1 { "(1 - t)".to_string() } else { format!("(1 - t^{d})") };
            if k == 1 {
                write!(f, "{base}")?;
            } else {
                write!(f, "{base}^{k}")?;
            }
        }
        Ok(())
    }
}

pub fn hilbert_series(table: &CohomologyTable) -> LaurentSeries {
    LaurentSeries::new(
        0,
        table
            .dims()
            .into_iter()
            .map(|d| Rational::from_integer((d as i64).into()))
            .collect(),
    )
}

/// Cochain dimensions `|basis(n)|` for `0 ≤ n ≤ max`.
pub fn truncated_dimension_series(universe: &Universe, max_codegree: u32) -> LaurentSeries {
    LaurentSeries::new(
        0,
        (0..=max_codegree)
            .map(|n| Rational::from_integer((basis(n, universe).len() as i64).into()))
            .collect(),
    )
}

/// `series · ∏(1 - t^d)` as a closed form, when the product terminates.
pub fn rational_fit(series: &LaurentSeries, degrees: &[u32]) -> Result<RationalSeriesForm, SeriesError> {
    if degrees.contains(&0) {
        return Err(SeriesError::Precondition("denominator degree 0".into()));
    }
    let need = degrees.iter().copied().max().unwrap_or(0).max(1) as i64;
    if (series.window_len() as i64) < 2 * need {
        return Err(SeriesError::Inconclusive(format!(
            "window of length {} is shorter than {}",
            series.window_len(),
            2 * need
        )));
    }
    let mut q = series.clone();
    for &d in degrees {
        q = q.mul_poly(&LaurentPoly::one_minus_t_pow(d));
    }
    if let Some(last) = q.last_nonzero() {
        if series.hi() - last < need {
            return Err(SeriesError::Refused(format!(
                "product has a nonzero coefficient at t^{last} with the window ending at t^{}",
                series.hi()
            )));
        }
    }
    let form = RationalSeriesForm::new(q.to_poly(), degrees.to_vec())?;
    let back = form.expand(series.hi());
    assert!(
        (series.lo()..=series.hi()).all(|n| back.coefficient(n) == series.coefficient(n)),
        "re-expansion mismatch"
    );
    Ok(form)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DualityVerdict {
    /// `p(1/t) = (-t)^r t^a p(t)`.
    Gorenstein { r: i64, a: i64 },
    /// `p(1/t) - (-t)^r t^a p(t) = (-1)^(r-1) (1+t) δ(t)` together with
    /// `δ(1/t) = (-t)^(r-1) t^(-a) δ(t)`. `printed_form_holds` records whether
    /// `δ(1/t) = (-t)^(r-1) t^a δ(t)` also holds.
    DefectOne {
        r: i64,
        a: i64,
        delta: RationalFunction,
        printed_form_holds: bool,
    },
    NoDuality { r: i64, scanned: (i64, i64) },
}

impl DualityVerdict {
    pub fn defect(&self) -> Option<u8> {
        match self {
            DualityVerdict::Gorenstein { .. } => Some(0),
            DualityVerdict::DefectOne { .. } => Some(1),
            DualityVerdict::NoDuality { .. } => None,
        }
    }

    pub fn r(&self) -> i64 {
        match self {
            DualityVerdict::Gorenstein { r, .. }
            | DualityVerdict::DefectOne { r, .. }
            | DualityVerdict::NoDuality { r, .. } => *r,
        }
    }

    pub fn shift(&self) -> Option<i64> {
        match self {
            DualityVerdict::Gorenstein { a, .. } | DualityVerdict::DefectOne { a, .. } => Some(*a),
            DualityVerdict::NoDuality { .. } => None,
        }
    }
}

/// Default scan bound for the shift `a`.
pub fn default_shift_bound(form: &RationalSeriesForm) -> i64 {
    let n = &form.numerator;
    let span = n.low().unwrap_or(0).abs().max(n.high().unwrap_or(0).abs());
    let total: i64 = form.denominator.iter().map(|&d| d as i64).sum();
    2 * span.max(total).max(1)
}

pub fn functional_check(form: &RationalSeriesForm) -> DualityVerdict {
    functional_check_within(form, default_shift_bound(form))
}

/// As [`functional_check`], scanning `a` over `[-bound, bound]` for defect one.
pub fn functional_check_within(form: &RationalSeriesForm, bound: i64) -> DualityVerdict {
    let p = form.to_rational_function();
    let r = p.pole_order_at_one();
    let scanned = (-bound, bound);
    if p.is_zero() {
        return DualityVerdict::NoDuality { r, scanned };
    }
    let reflected = p.reflect();
    if let Some((c, e)) = reflected.div(&p).as_monomial() {
        if c == sign(r) {
            return DualityVerdict::Gorenstein { r, a: e - r };
        }
    }
    let one_plus_t = LaurentPoly::from_ints(&[(0, 1), (1, 1)]).scale(&sign(r - 1));
    let factor = RationalFunction::polynomial(one_plus_t);
    for a in -bound..=bound {
        let rhs = p.mul_poly(&LaurentPoly::monomial(sign(r), r + a));
        let delta = reflected.sub(&rhs).div(&factor);
        if delta.is_zero() || !admissible_defect(&delta, r, bound) {
            continue;
        }
        let delta_reflected = delta.reflect();
        let holds = delta_reflected == delta.mul_poly(&LaurentPoly::monomial(sign(r - 1), r - 1 - a));
        if !holds {
            continue;
        }
        let printed_form_holds =
            delta_reflected == delta.mul_poly(&LaurentPoly::monomial(sign(r - 1), r - 1 + a));
        return DualityVerdict::DefectOne {
            r,
            a,
            delta,
            printed_form_holds,
        };
    }
    DualityVerdict::NoDuality { r, scanned }
}

// δ must look like the Hilbert series of a module of smaller dimension:
// pole order at most r-1 and non-negative integer coefficients.
fn admissible_defect(delta: &RationalFunction, r: i64, bound: i64) -> bool {
    if delta.pole_order_at_one() > r - 1 {
        return false;
    }
    let lo = delta.numerator().low().unwrap_or(0);
    delta
        .expand(lo + 4 * bound.max(1))
        .coefficients()
        .iter()
        .all(|c| !c.is_negative() && c.is_integer())
}

/// Loop space homology series from the generator counts, in homological degree.
pub fn loop_homology_series(algebra: &SullivanAlgebra, max_degree: u32) -> LaurentSeries {
    let mut s = LaurentSeries::zeros(0, max_degree as i64);
    s.coeffs[0] = Rational::one();
    for g in algebra.generators() {
        let n = g.codegree() - 1;
        if n % 2 == 0 {
            s = s.div_one_minus_t_pow(n);
        } else {
            s = s.mul_poly(&LaurentPoly::from_ints(&[(0, 1), (n as i64, 1)]));
        }
    }
    s
}

/// Witness: `series · (1 - t^period)^power` terminates in the window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthReport {
    pub growth_degree: i64,
    pub period: u32,
    pub power: u32,
    pub numerator: LaurentPoly,
}

/// Least polynomial growth degree visible in the window.
///
/// The series must be eventually zero in the last third of the window after
/// multiplying by `(1 - t^P)^k`; the growth degree is `k - 1`.
pub fn growth_degree(series: &LaurentSeries) -> Result<GrowthReport, SeriesError> {
    let len = series.window_len();
    if len < 3 {
        return Err(SeriesError::Inconclusive("window shorter than 3".into()));
    }
    let third = (len / 3) as i64;
    let hi = series.hi();
    let terminated = |s: &LaurentSeries, margin: i64| s.last_nonzero().is_none_or(|n| n <= hi - margin);
    if terminated(series, third) {
        return Ok(GrowthReport {
            growth_degree: -1,
            period: 1,
            power: 0,
            numerator: series.to_poly(),
        });
    }
    let mut best: Option<GrowthReport> = None;
    for period in 1..=third as u32 {
        let factor = LaurentPoly::one_minus_t_pow(period);
        let mut q = series.clone();
        // (1 - t^P)^k with kP beyond two thirds of the window leaves no room to terminate.
        let reach = ((2 * third) as u32 / period).max(1);
        let cap = best.as_ref().map_or(reach, |b| (b.power - 1).min(reach));
        for k in 1..=cap {
            q = q.mul_poly(&factor);
            if terminated(&q, third) {
                best = Some(GrowthReport {
                    growth_degree: k as i64 - 1,
                    period,
                    power: k,
                    numerator: q.to_poly(),
                });
                break;
            }
        }
    }
    best.ok_or_else(|| SeriesError::Inconclusive("no polynomial bound detected in the window".into()))
}

/// Whether `h_M ≤ h_N / (1 - t^n)` coefficientwise on the shared window.
pub fn growth_bound_check(hm: &LaurentSeries, hn: &LaurentSeries, n: i64) -> Result<bool, SeriesError> {
    if n == 0 {
        return Err(SeriesError::Precondition("n must be nonzero".into()));
    }
    if n < 0 {
        return Err(SeriesError::Precondition("negative n is not supported".into()));
    }
    let bound = hn.div_one_minus_t_pow(n as u32);
    let lo = hm.lo().min(bound.lo());
    let hi = hm.hi().min(bound.hi());
    Ok((lo..=hi).all(|k| hm.known(k) <= bound.known(k)))
}

/// `p_X · ∏ 1/(1 - t^(n_i - 1))` over odd sphere codegrees `n_i`.
pub fn hochschild_series_prediction(
    px: &RationalSeriesForm,
    sphere_codegrees: &[u32],
) -> Result<RationalSeriesForm, SeriesError> {
    let mut denominator = px.denominator.clone();
    for &n in sphere_codegrees {
        if n % 2 == 0 || n < 3 {
            return Err(SeriesError::Precondition(format!(
                "sphere codegree {n} is not an odd integer at least 3"
            )));
        }
        denominator.push(n - 1);
    }
    RationalSeriesForm::new(px.numerator.clone(), denominator)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::cohomology::cohomology;
    use crate::gca::{rat, Generator};

    fn lp(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_ints(terms)
    }

    fn ints(s: &LaurentSeries) -> Vec<i64> {
        s.coefficients()
            .iter()
            .map(|c| c.to_integer().try_into().unwrap())
            .collect()
    }

    #[test]
    fn poly_division_and_roots() {
        let p = lp(&[(0, 1), (4, -1)]);
        assert_eq!(p.div_exact(&lp(&[(0, 1), (2, -1)])), Some(lp(&[(0, 1), (2, 1)])));
        assert_eq!(p.div_exact(&lp(&[(0, 1), (3, -1)])), None);
        assert_eq!(p.order_at_one(), Some(1));
        assert_eq!(lp(&[(0, 1), (1, -2), (2, 1)]).order_at_one(), Some(2));
        assert_eq!(lp(&[(-2, 1)]).div_exact(&lp(&[(1, 1)])), Some(lp(&[(-3, 1)])));
    }

    #[test]
    fn rational_function_normal_form() {
        let f = RationalFunction::new(lp(&[(0, 1), (2, -1)]), lp(&[(0, 1), (1, -1)]));
        assert_eq!(f, RationalFunction::polynomial(lp(&[(0, 1), (1, 1)])));
        let g = RationalFunction::new(lp(&[(0, 2)]), lp(&[(1, 2), (3, -2)]));
        assert_eq!(g.numerator(), &lp(&[(-1, 1)]));
        assert_eq!(g.denominator(), &lp(&[(0, 1), (2, -1)]));
        assert_eq!(g.pole_order_at_one(), 1);
        assert_eq!(ints(&g.expand(4)), vec![1, 0, 1, 0, 1, 0]);
    }

    #[test]
    fn dimension_series_of_single_generators() {
        let even = Universe::new(vec![Generator::new("x", 2).unwrap()]).unwrap();
        assert_eq!(ints(&truncated_dimension_series(&even, 6)), vec![1, 0, 1, 0, 1, 0, 1]);
        let odd = Universe::new(vec![Generator::new("y", 3).unwrap()]).unwrap();
        assert_eq!(ints(&truncated_dimension_series(&odd, 6)), vec![1, 0, 0, 1, 0, 0, 0]);
        let four = catalog::squares_fibration();
        assert_eq!(ints(&truncated_dimension_series(four.universe(), 4))[4], 3);
    }

    fn squares_form() -> RationalSeriesForm {
        let s = hilbert_series(&cohomology(&catalog::squares_fibration(), 14));
        rational_fit(&s, &[2]).unwrap()
    }

    #[test]
    fn fit_recovers_closed_form() {
        let form = squares_form();
        assert_eq!(form.numerator(), &lp(&[(0, 1), (2, 1), (4, -1), (5, 1)]));
        let closed = RationalFunction::new(lp(&[(0, 1), (5, 1)]), lp(&[(0, 1), (2, -1)]));
        let closed = RationalFunction::new(
            closed.numerator() + &(&lp(&[(2, 1)]) * closed.denominator()),
            closed.denominator().clone(),
        );
        assert_eq!(form.to_rational_function(), closed);
        assert_eq!(form.to_string(), "(1 + t^2 - t^4 + t^5)/(1 - t^2)");

        let free = LaurentSeries::from_ints(0, &[1, 0, 1, 0, 1, 0, 1, 0, 1]);
        let f = rational_fit(&free, &[2]).unwrap();
        assert_eq!(f.numerator(), &LaurentPoly::one());
    }

    #[test]
    fn fit_refuses_and_is_inconclusive() {
        let s = hilbert_series(&cohomology(&catalog::non_noetherian(), 16));
        assert!(matches!(rational_fit(&s, &[2]), Err(SeriesError::Refused(_))));
        assert!(rational_fit(&s, &[2, 4]).is_ok());
        let short = LaurentSeries::from_ints(0, &[1, 0, 1]);
        assert!(matches!(rational_fit(&short, &[2]), Err(SeriesError::Inconclusive(_))));
    }

    #[test]
    fn defect_one_duality() {
        let v = functional_check(&squares_form());
        match &v {
            DualityVerdict::DefectOne {
                r,
                a,
                delta,
                printed_form_holds,
            } => {
                assert_eq!((*r, *a), (1, -4));
                assert_eq!(delta, &RationalFunction::polynomial(lp(&[(-2, 1)])));
                assert_eq!(delta.reflect(), delta.mul_poly(&lp(&[(4, 1)])));
                assert!(!printed_form_holds);
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(v.defect(), Some(1));
    }

    #[test]
    fn defect_zero_duality() {
        let sphere = RationalSeriesForm::new(lp(&[(0, 1), (2, 1)]), vec![]).unwrap();
        assert_eq!(functional_check(&sphere), DualityVerdict::Gorenstein { r: 0, a: -2 });
        let free = RationalSeriesForm::new(LaurentPoly::one(), vec![2]).unwrap();
        assert_eq!(functional_check(&free), DualityVerdict::Gorenstein { r: 1, a: 1 });
    }

    #[test]
    fn no_duality_for_asymmetric_polynomial() {
        let f = RationalSeriesForm::new(lp(&[(0, 1), (2, 3)]), vec![]).unwrap();
        assert!(matches!(functional_check(&f), DualityVerdict::NoDuality { r: 0, .. }));
    }

    #[test]
    fn simplify_cancels_factors() {
        let f = RationalSeriesForm::new(lp(&[(0, 1), (4, -1)]), vec![2, 3]).unwrap();
        let s = f.simplify();
        assert_eq!(s.denominator(), &[3]);
        assert!(s.same_function(&f));
    }

    #[test]
    fn loop_series_examples() {
        let sphere = catalog::free(&[("x", 3)]);
        assert_eq!(ints(&loop_homology_series(&sphere, 6)), vec![1, 0, 1, 0, 1, 0, 1]);
        let plane = catalog::free(&[("u", 2), ("v", 2)]);
        assert_eq!(ints(&loop_homology_series(&plane, 5)), vec![1, 2, 1, 0, 0, 0]);
        assert_eq!(growth_degree(&loop_homology_series(&plane, 12)).unwrap().growth_degree, -1);

        let a = catalog::squares_fibration();
        let s = loop_homology_series(&a, 20);
        let expected = RationalFunction::new(lp(&[(0, 1), (1, 2), (2, 1)]), lp(&[(0, 1), (2, -2), (4, 1)]));
        assert_eq!(s, expected.expand(20));
        let g = growth_degree(&s).unwrap();
        assert_eq!(g.growth_degree, 1);
    }

    #[test]
    fn growth_of_quasi_polynomial() {
        let s = RationalFunction::new(LaurentPoly::one(), lp(&[(0, 1), (2, -1)])).expand(30);
        let g = growth_degree(&s).unwrap();
        assert_eq!((g.growth_degree, g.period, g.power), (0, 2, 1));
        assert!(matches!(growth_degree(&LaurentSeries::from_ints(0, &[1, 1])), Err(SeriesError::Inconclusive(_))));
    }

    #[test]
    fn growth_bounds() {
        let geo = LaurentSeries::from_ints(0, &[1, 0, 1, 0, 1, 0, 1]);
        let one = LaurentSeries::from_ints(0, &[1, 0, 0, 0, 0, 0, 0]);
        assert!(growth_bound_check(&geo, &geo, 1).unwrap());
        assert!(growth_bound_check(&geo, &one, 2).unwrap());
        let twice = LaurentSeries::from_ints(0, &[2, 0, 2, 0, 2, 0, 2]);
        assert!(!growth_bound_check(&twice, &one, 2).unwrap());
        assert!(matches!(growth_bound_check(&geo, &one, 0), Err(SeriesError::Precondition(_))));
    }

    #[test]
    fn hochschild_prediction() {
        let px = squares_form();
        let h = hochschild_series_prediction(&px, &[3, 3]).unwrap();
        assert_eq!(h.denominator(), &[2, 2, 2]);
        assert!(h.to_rational_function() == px.to_rational_function().mul(&RationalFunction::new(
            LaurentPoly::one(),
            lp(&[(0, 1), (2, -2), (4, 1)])
        )));
        assert_eq!(hochschild_series_prediction(&px, &[]).unwrap(), px);
        let point = RationalSeriesForm::new(LaurentPoly::one(), vec![]).unwrap();
        assert_eq!(hochschild_series_prediction(&point, &[3]).unwrap().denominator(), &[2]);
        assert!(hochschild_series_prediction(&point, &[4]).is_err());
    }

    #[test]
    fn series_arithmetic_windows() {
        let a = LaurentSeries::from_ints(0, &[1, 1, 1, 1]);
        let b = LaurentSeries::from_ints(-1, &[1, 0, 2]);
        let p = a.mul(&b);
        assert_eq!((p.lo(), p.hi()), (-1, 1));
        assert_eq!(ints(&p), vec![1, 1, 3]);
        assert_eq!(a.coefficient(-5), Some(rat(0)));
        assert_eq!(a.coefficient(4), None);
        assert_eq!(ints(&a.sub(&b)), vec![-1, 1, -1]);
    }
}
