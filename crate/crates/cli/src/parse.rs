//! The model-description language.
//!
//! ```text
//! algebra R
//! gen x 3
//! gen y 3
//! gen z 3
//! gen a 8
//! d a = x*y*z
//! ```
//!
//! Each term's coefficient multiplies the canonical monomial of its factors,
//! so `y*x` and `x*y` denote the same element. A repeated odd factor makes the
//! term vanish. A leading sign is accepted before the first term.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use sullivan_core::gca::Monomial;
use sullivan_core::{Generator, ModelError, Poly, Rational, SullivanAlgebra, Universe};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{line}:{column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{line}:{column}: {message}")]
    Semantic { line: usize, column: usize, message: String },
    #[error("invalid model: {0}")]
    Model(String),
}

impl ParseError {
    fn syntax(pos: Pos, message: impl Into<String>) -> Self {
        ParseError::Syntax { line: pos.line, column: pos.column, message: message.into() }
    }

    fn semantic(pos: Pos, message: impl Into<String>) -> Self {
        ParseError::Semantic { line: pos.line, column: pos.column, message: message.into() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Pos {
    line: usize,
    column: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Sym(char),
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "{s:?}"),
            Tok::Int(n) => write!(f, "{n}"),
            Tok::Sym(c) => write!(f, "'{c}'"),
        }
    }
}

fn lex_line(text: &str, line: usize) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let text = text.split('#').next().unwrap_or("");
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, column: i + 1 };
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), pos));
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            out.push((Tok::Int(digits.parse().expect("ascii digits")), pos));
        } else if "=+-*/^".contains(c) {
            out.push((Tok::Sym(c), pos));
            i += 1;
        } else {
            return Err(ParseError::syntax(pos, format!("unexpected character {c:?}")));
        }
    }
    Ok(out)
}

struct Cursor {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    end: Pos,
}

impl Cursor {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(t, _)| t)
    }

    fn next(&mut self, what: &str) -> Result<(Tok, Pos), ParseError> {
        let found = self.toks.get(self.at).cloned();
        self.at += 1;
        found.ok_or_else(|| ParseError::syntax(self.end, format!("expected {what}, found end of line")))
    }

    fn ident(&mut self, what: &str) -> Result<(String, Pos), ParseError> {
        match self.next(what)? {
            (Tok::Ident(s), p) => Ok((s, p)),
            (t, p) => Err(ParseError::syntax(p, format!("expected {what}, found {t}"))),
        }
    }

    fn int(&mut self, what: &str) -> Result<(BigInt, Pos), ParseError> {
        match self.next(what)? {
            (Tok::Int(n), p) => Ok((n, p)),
            (t, p) => Err(ParseError::syntax(p, format!("expected {what}, found {t}"))),
        }
    }

    fn sym(&mut self, c: char) -> Result<Pos, ParseError> {
        match self.next(&format!("'{c}'"))? {
            (Tok::Sym(s), p) if s == c => Ok(p),
            (t, p) => Err(ParseError::syntax(p, format!("expected '{c}', found {t}"))),
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        match self.toks.get(self.at) {
            None => Ok(()),
            Some((t, p)) => Err(ParseError::syntax(*p, format!("unexpected {t}"))),
        }
    }
}

/// `(coefficient, [(name, exponent, position)])`
type RawTerm = (Rational, Vec<(String, u32, Pos)>);

fn parse_poly(c: &mut Cursor) -> Result<Vec<RawTerm>, ParseError> {
    let mut terms = Vec::new();
    let mut negative = c.eat('-');
    loop {
        let mut coefficient = Rational::one();
        if let Some(Tok::Int(_)) = c.peek() {
            let (num, _) = c.int("coefficient")?;
            let mut den = BigInt::one();
            if c.eat('/') {
                let (d, p) = c.int("denominator")?;
                if d.is_zero() {
                    return Err(ParseError::syntax(p, "zero denominator"));
                }
                den = d;
            }
            coefficient = Rational::new(num, den);
            c.sym('*')?;
        }
        let mut factors = Vec::new();
        loop {
            let (name, p) = c.ident("generator name")?;
            let mut exponent = 1u32;
            if c.eat('^') {
                let (e, ep) = c.int("exponent")?;
                exponent = u32::try_from(e).map_err(|_| ParseError::syntax(ep, "exponent too large"))?;
            }
            factors.push((name, exponent, p));
            if !c.eat('*') {
                break;
            }
        }
        if negative {
            coefficient = -coefficient;
        }
        terms.push((coefficient, factors));
        if c.eat('+') {
            negative = false;
        } else if c.eat('-') {
            negative = true;
        } else {
            break;
        }
    }
    c.finish()?;
    Ok(terms)
}

/// A parsed model file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelFile {
    pub name: String,
    pub algebra: SullivanAlgebra,
}

fn resolve(u: &Arc<Universe>, terms: &[RawTerm]) -> Result<Poly, ParseError> {
    let mut out = Vec::new();
    for (c, factors) in terms {
        let mut exps = vec![0u32; u.len()];
        let mut vanishes = false;
        for (name, e, p) in factors {
            let i = u
                .index_of(name)
                .ok_or_else(|| ParseError::semantic(*p, format!("unknown generator {name}")))?;
            exps[i] += e;
            if u.generator(i).is_odd() && exps[i] > 1 {
                vanishes = true;
            }
        }
        if !vanishes {
            out.push((Monomial::from_exponents(exps), c.clone()));
        }
    }
    Ok(Poly::from_terms(u, out))
}

pub fn parse_model(text: &str) -> Result<ModelFile, ParseError> {
    let mut name: Option<String> = None;
    let mut gens: Vec<(Generator, Pos)> = Vec::new();
    let mut diffs: Vec<(String, Pos, Vec<RawTerm>)> = Vec::new();
    let mut last = Pos { line: 1, column: 1 };
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let toks = lex_line(raw, line)?;
        last = Pos { line, column: raw.chars().count() + 1 };
        if toks.is_empty() {
            continue;
        }
        let mut c = Cursor { toks, at: 0, end: last };
        let (keyword, kp) = c.ident("keyword")?;
        match (keyword.as_str(), &name) {
            ("algebra", None) => {
                name = Some(c.ident("algebra name")?.0);
                c.finish()?;
            }
            ("algebra", Some(_)) => return Err(ParseError::syntax(kp, "repeated algebra header")),
            (_, None) => return Err(ParseError::syntax(kp, "expected \"algebra\" header")),
            ("gen", Some(_)) => {
                let (g, gp) = c.ident("generator name")?;
                let (n, np) = c.int("codegree")?;
                c.finish()?;
                let codegree = u32::try_from(&n)
                    .ok()
                    .filter(|&n| n >= 2)
                    .ok_or_else(|| ParseError::semantic(np, format!("generator {g} has codegree {n}; codegrees must be at least 2")))?;
                if gens.iter().any(|(h, _)| h.name() == g) {
                    return Err(ParseError::semantic(gp, format!("duplicate generator {g}")));
                }
                gens.push((Generator::new(g, codegree).expect("lexed identifier"), gp));
            }
            ("d", Some(_)) => {
                let (g, gp) = c.ident("generator name")?;
                c.sym('=')?;
                let terms = parse_poly(&mut c)?;
                if diffs.iter().any(|(h, _, _)| *h == g) {
                    return Err(ParseError::semantic(gp, format!("d({g}) assigned twice")));
                }
                diffs.push((g, gp, terms));
            }
            (other, Some(_)) => {
                return Err(ParseError::syntax(kp, format!("expected \"gen\" or \"d\", found {other:?}")));
            }
        }
    }
    let name = name.ok_or_else(|| ParseError::syntax(last, "missing \"algebra\" header"))?;
    let generators: Vec<Generator> = gens.iter().map(|(g, _)| g.clone()).collect();
    let u = Universe::new(generators.clone()).map_err(|e| ParseError::Model(e.to_string()))?;
    let mut map = BTreeMap::new();
    for (g, gp, terms) in &diffs {
        let Some(generator) = u.get(g) else {
            return Err(ParseError::semantic(*gp, format!("d of unknown generator {g}")));
        };
        let p = resolve(&u, terms)?;
        match p.homogeneous_codegree() {
            Err(_) => return Err(ParseError::semantic(*gp, format!("d({g}) is not homogeneous"))),
            Ok(Some(found)) if found != generator.codegree() + 1 => {
                return Err(ParseError::semantic(
                    *gp,
                    format!("d({g}) must have codegree {}, found {found}", generator.codegree() + 1),
                ));
            }
            _ => {}
        }
        map.insert(g.clone(), p);
    }
    let algebra = SullivanAlgebra::new(generators, map).map_err(|e| ParseError::Model(e.to_string()))?;
    let report = algebra.validate();
    if !report.is_valid() {
        let v = &report.violations[0];
        let pos = diffs
            .iter()
            .find(|(g, _, _)| *g == v.generator)
            .map_or(last, |(_, p, _)| *p);
        return Err(ParseError::semantic(pos, report.summary()));
    }
    Ok(ModelFile { name, algebra })
}

/// Canonical text: generators in canonical order, differentials as printed
/// polynomials. Reparses to an identical algebra.
pub fn emit_canonical_model(name: &str, a: &SullivanAlgebra) -> String {
    let mut out = format!("algebra {name}\n");
    for g in a.generators() {
        out.push_str(&format!("gen {} {}\n", g.name(), g.codegree()));
    }
    for g in a.generators() {
        let d = a.d(g.name()).expect("own generator");
        if !d.is_zero() {
            out.push_str(&format!("d {} = {}\n", g.name(), d));
        }
    }
    out
}

impl From<ModelError> for ParseError {
    fn from(e: ModelError) -> Self {
        ParseError::Model(e.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use sullivan_core::catalog;

    #[test]
    fn parses_the_non_noetherian_model() {
        let m = parse_model("algebra X\ngen v 2\ngen x 3\ngen w 4\nd w = v*x\n").unwrap();
        assert_eq!(m.name, "X");
        assert_eq!(m.algebra, catalog::non_noetherian());
    }

    #[test]
    fn parses_the_triple_product() {
        let m = parse_model("algebra R\ngen x 3\ngen y 3\ngen z 3\ngen a 8\nd a = x*y*z\n").unwrap();
        assert_eq!(m.algebra, catalog::triple_product());
    }

    #[test]
    fn comments_blank_lines_and_primes() {
        let text = "# header\n\nalgebra T  # trailing\ngen y 3\ngen y' 3\ngen a 5\nd a = y*y'\n";
        let m = parse_model(text).unwrap();
        assert_eq!(m.algebra.d("a").unwrap().to_string(), "y*y'");
    }

    #[test]
    fn coefficients_attach_to_the_canonical_monomial() {
        let base = "algebra T\ngen x 3\ngen y 3\ngen a 5\n";
        let xy = parse_model(&format!("{base}d a = x*y\n")).unwrap();
        let yx = parse_model(&format!("{base}d a = y*x\n")).unwrap();
        assert_eq!(xy, yx);
        let gone = parse_model(&format!("{base}d a = x*y + x*x*y - y*y\n")).unwrap();
        assert_eq!(gone.algebra, xy.algebra);
    }

    #[test]
    fn rational_coefficients_and_leading_sign() {
        let m = parse_model("algebra S\ngen x 2\ngen y 3\nd y = -1/2*x^2\n").unwrap();
        assert_eq!(m.algebra.d("y").unwrap().to_string(), "-1/2*x^2");
    }

    #[test]
    fn minimality_violation_names_the_generator() {
        let err = parse_model("algebra X\ngen v 2\ngen w 1\nd w = v\n").unwrap_err();
        assert!(matches!(err, ParseError::Semantic { line: 3, .. }), "{err}");
        let err = parse_model("algebra X\ngen v 2\ngen x 3\nd x = v\n").unwrap_err();
        assert!(matches!(err, ParseError::Semantic { .. }));
        assert!(err.to_string().contains("d(x) must have codegree 4"), "{err}");
        let err = parse_model("algebra X\ngen w 3\ngen v 4\nd w = v\n").unwrap_err();
        assert_eq!(err.to_string(), "4:3: d(w) has a linear term (not minimal)");
    }

    #[test]
    fn semantic_errors_are_located() {
        let err = parse_model("algebra X\ngen v 2\ngen w 4\nd w = v*q\n").unwrap_err();
        assert_eq!(err.to_string(), "4:9: unknown generator q");
        let err = parse_model("algebra X\ngen x 2\ngen y 3\ngen z 4\nd y = x^2\nd z = x*y\n").unwrap_err();
        assert_eq!(err.to_string(), "6:3: d(d(z)) != 0");
        let err = parse_model("algebra X\ngen v 2\ngen v 4\n").unwrap_err();
        assert_eq!(err.to_string(), "3:5: duplicate generator v");
    }

    #[test]
    fn syntax_errors_are_located() {
        let err = parse_model("algebra X\ngen v 2\nd v = 3 v\n").unwrap_err();
        assert_eq!(err.to_string(), "3:9: expected '*', found \"v\"");
        let err = parse_model("gen v 2\n").unwrap_err();
        assert_eq!(err.to_string(), "1:1: expected \"algebra\" header");
        let err = parse_model("algebra X\ngen v 2 $\n").unwrap_err();
        assert_eq!(err.to_string(), "2:9: unexpected character '$'");
        let err = parse_model("algebra X\ngen v\n").unwrap_err();
        assert_eq!(err.to_string(), "2:6: expected codegree, found end of line");
        let err = parse_model("").unwrap_err();
        assert!(err.to_string().contains("missing \"algebra\" header"));
    }

    #[test]
    fn canonical_emission_reparses() {
        for a in [
            catalog::squares_fibration(),
            catalog::non_noetherian(),
            catalog::triple_product(),
            catalog::twisted_triple_product(),
            catalog::two_sphere(),
        ] {
            let text = emit_canonical_model("M", &a);
            let back = parse_model(&text).unwrap();
            assert_eq!(back.algebra, a, "{text}");
            assert_eq!(emit_canonical_model("M", &back.algebra), text);
        }
    }
}
