//! Unravelling moves: making even generators cocycles by adjoining odd
//! generators, quotienting even cocycles, and certificates for the result.

use std::collections::BTreeMap;

use rayon::prelude::*;
use thiserror::Error;

use crate::classify::{sci_standard_form, ClassifyError, SciOutcome};
use crate::cohomology::{cohomology, cohomology_dims, differential_matrix, is_coboundary, CochainBasis, CohomologyError, SolveOutcome};
use crate::gca::{basis, GcaError, Monomial, Poly};
use crate::model::{ModelError, SullivanAlgebra};

#[derive(Debug, Error)]
pub enum UnravelError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(transparent)]
    Gca(#[from] GcaError),
    #[error("no even generator to eliminate")]
    NoEvenGenerator,
    #[error("elimination of {0} did not terminate within {1} adjoined generators")]
    Stuck(String, usize),
}

#[derive(Debug, Clone, PartialEq)]
pub enum NciMove {
    AdjoinOdd { name: String, codegree: u32, differential: Poly },
    QuotientEven { name: String, codegree: u32 },
    DropOdd { name: String, codegree: u32 },
    /// `name` becomes `name + shift`.
    ChangeOfVariables { name: String, codegree: u32, shift: Poly },
}

impl NciMove {
    pub fn apply(&self, a: &SullivanAlgebra) -> Result<SullivanAlgebra, ModelError> {
        match self {
            NciMove::AdjoinOdd {
                name,
                codegree,
                differential,
            } => a.adjoin_odd(name, *codegree, differential),
            NciMove::QuotientEven { name, codegree } => {
                check_codegree(a, name, *codegree)?;
                a.quotient_even_cocycle(name)
            }
            NciMove::DropOdd { name, codegree } => {
                check_codegree(a, name, *codegree)?;
                a.drop_odd(name)
            }
            NciMove::ChangeOfVariables { name, codegree, shift } => {
                check_codegree(a, name, *codegree)?;
                Ok(a.change_of_variables(name, shift)?.0)
            }
        }
    }

    /// Contribution to the length bound.
    pub fn weight(&self) -> usize {
        match self {
            NciMove::AdjoinOdd { .. } | NciMove::QuotientEven { .. } => 1,
            NciMove::DropOdd { .. } | NciMove::ChangeOfVariables { .. } => 0,
        }
    }
}

fn check_codegree(a: &SullivanAlgebra, name: &str, codegree: u32) -> Result<(), ModelError> {
    let g = a.generator(name)?;
    if g.codegree() != codegree {
        return Err(ModelError::Shape(format!(
            "{name} has codegree {}, move records {codegree}",
            g.codegree()
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct Elimination {
    pub generator: String,
    pub moves: Vec<NciMove>,
    pub algebra: SullivanAlgebra,
    /// Whether the exhaustive bottom-up kill was needed.
    pub used_fallback: bool,
}

/// The minimal-codegree even generator, preferring one that is a cocycle.
pub fn minimal_even_generator(a: &SullivanAlgebra) -> Option<String> {
    let n = a.even_generators().map(|g| g.codegree()).min()?;
    let mut candidates = a.even_generators().filter(|g| g.codegree() == n);
    let first = candidates.next()?.name().to_string();
    let cocycle = std::iter::once(first.as_str())
        .chain(candidates.map(|g| g.name()))
        .find(|x| a.d(x).is_ok_and(|d| d.is_zero()))
        .map(str::to_string);
    Some(cocycle.unwrap_or(first))
}

// Normal form of `f` modulo d(T) where monomials whose newest generator is
// oldest are eliminated first, canonical order breaking ties.
fn residual(t: &SullivanAlgebra, ages: &BTreeMap<String, usize>, f: &Poly) -> Result<Poly, UnravelError> {
    let u = t.universe();
    let f = f.transport(u)?;
    let Some(n) = f.homogeneous_codegree()? else {
        return Ok(f);
    };
    let age = |m: &Monomial| {
        m.support()
            .map(|i| ages.get(u.generator(i).name()).copied().unwrap_or(0))
            .max()
            .unwrap_or(0)
    };
    let mut target = basis(n, u);
    target.sort_by(|p, q| age(q).cmp(&age(p)).then_with(|| p.cmp(q)));
    let cb = CochainBasis::new(target);
    let domain = if n == 0 { Vec::new() } else { basis(n - 1, u) };
    let echelon = differential_matrix(t, &domain, &cb).column_echelon(false);
    Ok(cb.to_poly(u, &echelon.reduce(&cb.to_vec(&f))))
}

// Monomials obtained by deleting one odd generator from a term of `r`,
// kept when they are cocycles of `t` that are not coboundaries.
fn kill_candidates(t: &SullivanAlgebra, r: &Poly) -> Result<Vec<Poly>, UnravelError> {
    let u = t.universe();
    let mut seen: Vec<Monomial> = Vec::new();
    for m in r.terms().keys() {
        for i in m.support().collect::<Vec<_>>() {
            if !u.generator(i).is_odd() {
                continue;
            }
            let mut exps = m.exponents().to_vec();
            exps[i] -= 1;
            let c = Monomial::from_exponents(exps);
            if c.is_one() || seen.contains(&c) {
                continue;
            }
            seen.push(c);
        }
    }
    seen.sort();
    let mut out = Vec::new();
    for c in seen {
        let p = Poly::monomial(u, c, crate::gca::rat(1));
        if !t.is_cocycle(&p)? {
            continue;
        }
        if let SolveOutcome::Refusal(_) = is_coboundary(t, &p)? {
            out.push(p);
        }
    }
    Ok(out)
}

fn even_classes_up_to(t: &SullivanAlgebra, n: u32) -> usize {
    cohomology_dims(t, n)
        .iter()
        .enumerate()
        .filter(|(k, _)| *k >= 2 && k % 2 == 0)
        .map(|(_, d)| d)
        .sum()
}

struct State {
    full: SullivanAlgebra,
    sub: SullivanAlgebra,
    ages: BTreeMap<String, usize>,
    moves: Vec<NciMove>,
}

impl State {
    fn adjoin(&mut self, f: &Poly) -> Result<(), UnravelError> {
        let codegree = f.homogeneous_codegree()?.expect("nonzero class") - 1;
        let name = self.full.fresh_name("w");
        self.full = self.full.adjoin_odd(&name, codegree, f)?;
        self.sub = self.sub.adjoin_odd(&name, codegree, f)?;
        self.ages.insert(name.clone(), self.ages.len() + 1);
        self.moves.push(NciMove::AdjoinOdd {
            name,
            codegree,
            differential: f.transport(self.full.universe())?,
        });
        Ok(())
    }
}

/// Makes a minimal even generator a cocycle by adjoining odd generators that
/// kill even classes of the odd subalgebra below it, then changing variables.
pub fn eliminate_minimal_even(a: &SullivanAlgebra) -> Result<Elimination, UnravelError> {
    let x = minimal_even_generator(a).ok_or(UnravelError::NoEvenGenerator)?;
    let n = a.generator(&x)?.codegree();
    let dx = a.d(&x)?.clone();
    if dx.is_zero() {
        return Ok(Elimination {
            generator: x,
            moves: Vec::new(),
            algebra: a.clone(),
            used_fallback: false,
        });
    }
    let sub = a.subalgebra(|g| g.codegree() < n)?;
    let ages = sub.generator_names().into_iter().map(|s| (s, 0)).collect();
    let mut st = State {
        full: a.clone(),
        sub,
        ages,
        moves: Vec::new(),
    };

    let budget = even_classes_up_to(&st.sub, n);
    let mut r = residual(&st.sub, &st.ages, &dx)?;
    let mut steps = 0;
    while !r.is_zero() && steps < budget {
        let candidates = kill_candidates(&st.sub, &r)?;
        if candidates.is_empty() {
            break;
        }
        let scored: Vec<(usize, usize)> = candidates
            .par_iter()
            .enumerate()
            .map(|(i, c)| {
                let codegree = c.homogeneous_codegree().ok().flatten().unwrap_or(1) - 1;
                let name = st.full.fresh_name("w");
                let trial = st.sub.adjoin_odd(&name, codegree, c).ok()?;
                let mut ages = st.ages.clone();
                ages.insert(name, ages.len() + 1);
                let left = residual(&trial, &ages, &dx).ok()?;
                Some((left.len(), i))
            })
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| UnravelError::Stuck(x.clone(), st.moves.len()))?;
        // candidates are in canonical order, so the index breaks ties
        let (_, best) = scored.into_iter().min().expect("nonempty");
        st.adjoin(&candidates[best])?;
        r = residual(&st.sub, &st.ages, &dx)?;
        steps += 1;
    }

    let mut used_fallback = false;
    if !r.is_zero() {
        used_fallback = true;
        const LIMIT: usize = 256;
        loop {
            let dims = cohomology_dims(&st.sub, n);
            let Some(k) = (2..=n).filter(|k| k % 2 == 0).find(|&k| dims[k as usize] > 0) else {
                break;
            };
            if st.moves.len() >= LIMIT {
                return Err(UnravelError::Stuck(x, LIMIT));
            }
            let table = cohomology(&st.sub, k);
            let rep = table.representatives(k)[0].clone();
            st.adjoin(&rep)?;
        }
    }

    let u = match is_coboundary(&st.sub, &dx)? {
        SolveOutcome::Witness(u) => u,
        SolveOutcome::Refusal(_) => return Err(UnravelError::Stuck(x, st.moves.len())),
    };
    let shift = (-&u).transport(st.full.universe())?;
    let (algebra, _) = st.full.change_of_variables(&x, &shift)?;
    st.moves.push(NciMove::ChangeOfVariables {
        name: x.clone(),
        codegree: n,
        shift,
    });
    Ok(Elimination {
        generator: x,
        moves: st.moves,
        algebra,
        used_fallback,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct NciCertificate {
    pub moves: Vec<NciMove>,
    pub final_algebra: SullivanAlgebra,
    pub final_codimension: usize,
    /// Adjoin and quotient moves plus the final codimension.
    pub length_bound: usize,
}

/// Unravels until the standard-form walk succeeds.
pub fn nci_unravel(a: &SullivanAlgebra) -> Result<NciCertificate, UnravelError> {
    let mut current = a.clone();
    let mut moves = Vec::new();
    loop {
        if let SciOutcome::Certificate(cert) = sci_standard_form(&current)? {
            let length_bound = moves.iter().map(NciMove::weight).sum::<usize>() + cert.codimension;
            return Ok(NciCertificate {
                moves,
                final_algebra: current,
                final_codimension: cert.codimension,
                length_bound,
            });
        }
        let x = minimal_even_generator(&current).ok_or(UnravelError::NoEvenGenerator)?;
        if current.d(&x)?.is_zero() {
            let codegree = current.generator(&x)?.codegree();
            current = current.quotient_even_cocycle(&x)?;
            moves.push(NciMove::QuotientEven { name: x, codegree });
        } else {
            let e = eliminate_minimal_even(&current)?;
            current = e.algebra;
            moves.extend(e.moves);
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertificateCheck {
    Valid,
    /// Move `step` (0-based) could not be replayed.
    MoveFailed { step: usize, reason: String },
    FinalMismatch(String),
}

impl CertificateCheck {
    pub fn is_valid(&self) -> bool {
        *self == CertificateCheck::Valid
    }
}

/// Replays every move from `a`, re-checking preconditions, then checks the
/// final snapshot and the length accounting.
pub fn verify_certificate(a: &SullivanAlgebra, cert: &NciCertificate) -> CertificateCheck {
    let mut current = a.clone();
    for (step, m) in cert.moves.iter().enumerate() {
        match m.apply(&current) {
            Ok(next) if next.validate().is_valid() => current = next,
            Ok(next) => {
                return CertificateCheck::MoveFailed {
                    step,
                    reason: next.validate().summary(),
                }
            }
            Err(e) => {
                return CertificateCheck::MoveFailed {
                    step,
                    reason: e.to_string(),
                }
            }
        }
    }
    if current != cert.final_algebra {
        return CertificateCheck::FinalMismatch(format!(
            "replay reached {} but the certificate records {}",
            current.describe(),
            cert.final_algebra.describe()
        ));
    }
    let codim = match sci_standard_form(&current) {
        Ok(SciOutcome::Certificate(c)) => c.codimension,
        Ok(SciOutcome::Obstruction(o)) => {
            return CertificateCheck::FinalMismatch(format!("final algebra is obstructed at {}", o.generator))
        }
        Err(e) => return CertificateCheck::FinalMismatch(e.to_string()),
    };
    if codim != cert.final_codimension {
        return CertificateCheck::FinalMismatch(format!(
            "final codimension is {codim}, certificate records {}",
            cert.final_codimension
        ));
    }
    let length = cert.moves.iter().map(NciMove::weight).sum::<usize>() + codim;
    if length != cert.length_bound {
        return CertificateCheck::FinalMismatch(format!(
            "length is {length}, certificate records {}",
            cert.length_bound
        ));
    }
    CertificateCheck::Valid
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::gca::rat;
    use crate::model::build_algebra;

    fn adjoined(moves: &[NciMove]) -> Vec<(u32, String)> {
        moves
            .iter()
            .filter_map(|m| match m {
                NciMove::AdjoinOdd {
                    codegree,
                    differential,
                    ..
                } => Some((*codegree, differential.to_string())),
                _ => None,
            })
            .collect()
    }

    #[test]
    fn triple_product_elimination() {
        let a = catalog::triple_product();
        let e = eliminate_minimal_even(&a).unwrap();
        assert_eq!(e.generator, "a");
        assert!(!e.used_fallback);
        assert_eq!(adjoined(&e.moves), vec![(5, "x*y".to_string())]);
        match e.moves.last().unwrap() {
            NciMove::ChangeOfVariables { name, shift, .. } => {
                assert_eq!(name, "a");
                let wz = &e.algebra.gen_poly("w").unwrap() * &e.algebra.gen_poly("z").unwrap();
                assert_eq!(shift, &-&wz);
            }
            other => panic!("{other:?}"),
        }
        assert!(e.algebra.d("a").unwrap().is_zero());
    }

    #[test]
    fn triple_product_certificate() {
        let a = catalog::triple_product();
        let cert = nci_unravel(&a).unwrap();
        assert_eq!(cert.final_codimension, 4);
        assert_eq!(cert.length_bound, 5);
        assert!(verify_certificate(&a, &cert).is_valid());
    }

    #[test]
    fn twisted_triple_product_certificate() {
        let a = catalog::twisted_triple_product();
        let cert = nci_unravel(&a).unwrap();
        let mut diffs: Vec<String> = adjoined(&cert.moves).into_iter().map(|(_, d)| d).collect();
        diffs.sort();
        assert_eq!(diffs, vec!["y'*w", "y*w", "y*y'"]);
        assert_eq!(cert.final_codimension, 8);
        assert_eq!(cert.length_bound, 11);
        assert!(verify_certificate(&a, &cert).is_valid());
    }

    #[test]
    fn cocycle_needs_no_moves() {
        let a = catalog::squares_fibration();
        let e = eliminate_minimal_even(&a).unwrap();
        assert!(e.moves.is_empty());
        let plane = catalog::free(&[("u", 2), ("v", 2)]);
        let cert = nci_unravel(&plane).unwrap();
        assert!(cert.moves.is_empty());
        assert_eq!(cert.length_bound, 0);
    }

    #[test]
    fn non_noetherian_unravels_by_quotient() {
        let a = catalog::non_noetherian();
        let cert = nci_unravel(&a).unwrap();
        assert!(verify_certificate(&a, &cert).is_valid());
        assert!(matches!(cert.moves[0], NciMove::QuotientEven { .. }));
        assert!(cert.length_bound >= cert.final_algebra.odd_count());
    }

    #[test]
    fn transcribed_certificate_verifies() {
        let a = catalog::triple_product();
        let r = build_algebra(
            &[("x", 3), ("y", 3), ("z", 3), ("w", 5), ("a", 8)],
            &[
                ("a", &|g: &dyn Fn(&str) -> Poly| &(&g("x") * &g("y")) * &g("z")),
                ("w", &|g: &dyn Fn(&str) -> Poly| &g("x") * &g("y")),
            ],
        )
        .unwrap();
        let g = |n: &str| r.gen_poly(n).unwrap();
        let final_algebra = r.change_of_variables("a", &-&(&g("w") * &g("z"))).unwrap().0;
        let cert = NciCertificate {
            moves: vec![
                NciMove::AdjoinOdd {
                    name: "w".into(),
                    codegree: 5,
                    differential: &g("x") * &g("y"),
                },
                NciMove::ChangeOfVariables {
                    name: "a".into(),
                    codegree: 8,
                    shift: (&g("w") * &g("z")).scale(&rat(-1)),
                },
            ],
            final_algebra,
            final_codimension: 4,
            length_bound: 5,
        };
        assert_eq!(verify_certificate(&a, &cert), CertificateCheck::Valid);
    }

    #[test]
    fn forged_drop_is_rejected() {
        let a = catalog::triple_product();
        let mut cert = nci_unravel(&a).unwrap();
        cert.moves.insert(
            0,
            NciMove::DropOdd {
                name: "x".into(),
                codegree: 3,
            },
        );
        match verify_certificate(&a, &cert) {
            CertificateCheck::MoveFailed { step: 0, reason } => assert_eq!(reason, "x occurs in d(a)"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn deterministic() {
        let a = catalog::twisted_triple_product();
        assert_eq!(nci_unravel(&a).unwrap(), nci_unravel(&a).unwrap());
    }
}
