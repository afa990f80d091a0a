//! The truncated graded tensor algebra on a finite set of generators.
//!
//! Words are the canonical basis; Lie elements are whatever is spanned by
//! signed commutator brackets. Signs use the dimension grading only.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_rational::BigRational;
use num_traits::Signed;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coeffs::{CoeffError, Field, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TensorError {
    #[error("operand is not homogeneous in dimension")]
    InhomogeneousOperand,
    #[error("dimension {dim} exceeds the cutoff {cutoff}")]
    CutoffExceeded { dim: u32, cutoff: u32 },
    #[error("unbound identifier `{0}`")]
    UnboundIdentifier(String),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GradedGenerator {
    pub name: String,
    pub dim: u32,
    pub degree: u8,
}

impl GradedGenerator {
    pub fn new(name: impl Into<String>, dim: u32, degree: u8) -> Self {
        GradedGenerator { name: name.into(), dim, degree }
    }
}

/// A word in the generators, stored as generator indices.
///
/// Ordered length-lexicographically over the generator order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<u16>);

impl Word {
    pub fn unit() -> Self {
        Word(Vec::new())
    }

    pub fn letter(g: usize) -> Self {
        Word(vec![g as u16])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().map(|&l| l as usize)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn prepend(&self, g: usize) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(g as u16);
        v.extend_from_slice(&self.0);
        Word(v)
    }

    pub fn append(&self, g: usize) -> Word {
        let mut v = self.0.clone();
        v.push(g as u16);
        Word(v)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A finite linear combination of words with nonzero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TensorElement {
    terms: BTreeMap<Word, Scalar>,
}

impl TensorElement {
    pub fn zero() -> Self {
        TensorElement::default()
    }

    pub fn from_word(w: Word, c: Scalar) -> Self {
        let mut e = Self::zero();
        e.add_term(w, c);
        e
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Word, Scalar)>) -> Self {
        let mut e = Self::zero();
        for (w, c) in terms {
            e.add_term(w, c);
        }
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Word) -> Option<&Scalar> {
        self.terms.get(w)
    }

    pub fn leading_word(&self) -> Option<&Word> {
        self.terms.keys().next()
    }

    pub fn add_term(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(existing) => {
                let sum = &*existing + &c;
                if sum.is_zero() {
                    self.terms.remove(&w);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    /// `self += c * other`
    pub fn axpy(&mut self, c: &Scalar, other: &TensorElement) {
        if c.is_zero() {
            return;
        }
        for (w, a) in &other.terms {
            self.add_term(w.clone(), c * a);
        }
    }

    pub fn scale(&self, c: &Scalar) -> TensorElement {
        if c.is_zero() {
            return Self::zero();
        }
        TensorElement { terms: self.terms.iter().map(|(w, a)| (w.clone(), a * c)).collect() }
    }

    pub fn add(&self, other: &TensorElement) -> TensorElement {
        let mut out = self.clone();
        for (w, a) in &other.terms {
            out.add_term(w.clone(), a.clone());
        }
        out
    }

    pub fn sub(&self, other: &TensorElement) -> TensorElement {
        let mut out = self.clone();
        for (w, a) in &other.terms {
            out.add_term(w.clone(), -a);
        }
        out
    }

    /// Concatenation product.
    pub fn mul(&self, other: &TensorElement) -> TensorElement {
        let mut out = Self::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.concat(v), a * b);
            }
        }
        out
    }

    pub fn map_words(&self, f: impl Fn(&Word) -> Word) -> TensorElement {
        Self::from_terms(self.terms.iter().map(|(w, c)| (f(w), c.clone())))
    }
}

/// Which degree component a word enumeration should keep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegreeFilter {
    Any,
    Exactly(u8),
}

/// The graded tensor algebra `T(V)` on a generator table, over a field,
/// truncated at a dimension cutoff.
#[derive(Debug, Clone)]
pub struct TensorAlgebra {
    field: Field,
    cutoff: u32,
    generators: Vec<GradedGenerator>,
    index: HashMap<String, usize>,
}

impl TensorAlgebra {
    pub fn new(field: Field, cutoff: u32, generators: Vec<GradedGenerator>) -> Self {
        let index = generators.iter().enumerate().map(|(i, g)| (g.name.clone(), i)).collect();
        TensorAlgebra { field, cutoff, generators, index }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    pub fn generators(&self) -> &[GradedGenerator] {
        &self.generators
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn word_dim(&self, w: &Word) -> u32 {
        w.letters().map(|g| self.generators[g].dim).sum()
    }

    pub fn word_degree(&self, w: &Word) -> u32 {
        w.letters().map(|g| self.generators[g].degree as u32).sum()
    }

    pub fn generator(&self, g: usize) -> TensorElement {
        TensorElement::from_word(Word::letter(g), self.field.one())
    }

    pub fn unit(&self) -> TensorElement {
        TensorElement::from_word(Word::unit(), self.field.one())
    }

    /// The common dimension of all terms; `Ok(None)` for zero.
    pub fn homogeneous_dim(&self, e: &TensorElement) -> Result<Option<u32>, TensorError> {
        let mut dims = e.terms().map(|(w, _)| self.word_dim(w));
        match dims.next() {
            None => Ok(None),
            Some(d) => {
                if dims.all(|x| x == d) {
                    Ok(Some(d))
                } else {
                    Err(TensorError::InhomogeneousOperand)
                }
            }
        }
    }

    pub fn homogeneous_degree(&self, e: &TensorElement) -> Option<Option<u32>> {
        let mut degs = e.terms().map(|(w, _)| self.word_degree(w));
        match degs.next() {
            None => Some(None),
            Some(d) => degs.all(|x| x == d).then_some(Some(d)),
        }
    }

    /// Signed commutator `[a,b] = ab − (−1)^{|a||b|} ba`.
    pub fn commutator(&self, a: &TensorElement, b: &TensorElement) -> Result<TensorElement, TensorError> {
        let (da, db) = match (self.homogeneous_dim(a)?, self.homogeneous_dim(b)?) {
            (Some(x), Some(y)) => (x, y),
            _ => return Ok(TensorElement::zero()),
        };
        if da + db > self.cutoff {
            return Err(TensorError::CutoffExceeded { dim: da + db, cutoff: self.cutoff });
        }
        Ok(commutator_with_dims(a, da, b, db))
    }

    /// All words of dimension `n` (and matching degree), length-lex ordered.
    pub fn word_basis(&self, n: u32, filter: DegreeFilter) -> Vec<Word> {
        // reach[m][j]: some word has dimension m and degree j. Pruning on it
        // keeps enumeration proportional to the output.
        let top = match filter {
            DegreeFilter::Any => n as usize,
            DegreeFilter::Exactly(k) => k as usize,
        };
        let reach = self.reach_table(n as usize, top);
        let mut out = Vec::new();
        let mut cur = Vec::new();
        self.enumerate(n as usize, filter, &reach, &mut cur, 0, &mut out);
        out.sort();
        out
    }

    fn reach_table(&self, n: usize, k: usize) -> Vec<Vec<bool>> {
        let mut reach = vec![vec![false; k + 1]; n + 1];
        reach[0][0] = true;
        for m in 1..=n {
            for j in 0..=k {
                reach[m][j] = self.generators.iter().any(|g| {
                    let (d, e) = (g.dim as usize, g.degree as usize);
                    d <= m && e <= j && reach[m - d][j - e]
                });
            }
        }
        reach
    }

    fn enumerate(
        &self,
        remaining: usize,
        filter: DegreeFilter,
        reach: &[Vec<bool>],
        cur: &mut Vec<u16>,
        degree: usize,
        out: &mut Vec<Word>,
    ) {
        if remaining == 0 {
            out.push(Word(cur.clone()));
            return;
        }
        for (i, g) in self.generators.iter().enumerate() {
            let (d, e) = (g.dim as usize, g.degree as usize);
            if d > remaining {
                continue;
            }
            let deg = degree + e;
            let viable = match filter {
                DegreeFilter::Any => reach[remaining - d].iter().any(|&r| r),
                DegreeFilter::Exactly(k) => deg <= k as usize && reach[remaining - d][k as usize - deg],
            };
            if !viable {
                continue;
            }
            cur.push(i as u16);
            self.enumerate(remaining - d, filter, reach, cur, deg, out);
            cur.pop();
        }
    }

    /// Number of words of dimension `n` and degree `k`, without enumerating.
    pub fn count_words(&self, n: u32, k: u32) -> u128 {
        let n = n as usize;
        let k = k as usize;
        let mut table = vec![vec![0u128; k + 1]; n + 1];
        table[0][0] = 1;
        for m in 1..=n {
            for j in 0..=k {
                let mut total = 0u128;
                for g in &self.generators {
                    let d = g.dim as usize;
                    let e = g.degree as usize;
                    if d <= m && e <= j {
                        total = total.saturating_add(table[m - d][j - e]);
                    }
                }
                table[m][j] = total;
            }
        }
        table[n][k]
    }

    /// Scalar embedding of a rational coefficient.
    pub fn scalar(&self, q: &BigRational) -> Result<Scalar, TensorError> {
        Ok(self.field.from_rational(q)?)
    }

    /// Interprets a Lie expression; n-ary brackets are left-normed.
    pub fn eval_expr(&self, e: &LieExpr) -> Result<TensorElement, TensorError> {
        match e {
            LieExpr::Gen(name) => {
                let g = self.generator_index(name).ok_or_else(|| TensorError::UnboundIdentifier(name.clone()))?;
                let dim = self.generators[g].dim;
                if dim > self.cutoff {
                    return Err(TensorError::CutoffExceeded { dim, cutoff: self.cutoff });
                }
                Ok(self.generator(g))
            }
            LieExpr::Scale(q, inner) => {
                let c = self.scalar(q)?;
                Ok(self.eval_expr(inner)?.scale(&c))
            }
            LieExpr::Sum(parts) => {
                let mut acc = TensorElement::zero();
                for p in parts {
                    acc = acc.add(&self.eval_expr(p)?);
                }
                Ok(acc)
            }
            LieExpr::Bracket(parts) => {
                let mut it = parts.iter();
                let first = it.next().expect("bracket arity is at least 2");
                let mut acc = self.eval_expr(first)?;
                for p in it {
                    let rhs = self.eval_expr(p)?;
                    acc = self.commutator(&acc, &rhs)?;
                }
                Ok(acc)
            }
        }
    }

    /// Generator dims and degrees of a Lie expression, checked for
    /// homogeneity of sums. Returns `(dim, max degree, min degree)`.
    pub fn expr_grading(&self, e: &LieExpr) -> Result<(u32, u32, u32), TensorError> {
        match e {
            LieExpr::Gen(name) => {
                let g = self.generator_index(name).ok_or_else(|| TensorError::UnboundIdentifier(name.clone()))?;
                let gen = &self.generators[g];
                Ok((gen.dim, gen.degree as u32, gen.degree as u32))
            }
            LieExpr::Scale(_, inner) => self.expr_grading(inner),
            LieExpr::Sum(parts) => {
                let mut out: Option<(u32, u32, u32)> = None;
                for p in parts {
                    let (d, hi, lo) = self.expr_grading(p)?;
                    out = match out {
                        None => Some((d, hi, lo)),
                        Some((d0, hi0, lo0)) => {
                            if d0 != d {
                                return Err(TensorError::InhomogeneousOperand);
                            }
                            Some((d, hi0.max(hi), lo0.min(lo)))
                        }
                    };
                }
                Ok(out.unwrap_or((0, 0, 0)))
            }
            LieExpr::Bracket(parts) => {
                let mut acc = (0, 0, 0);
                for p in parts {
                    let (d, hi, lo) = self.expr_grading(p)?;
                    acc = (acc.0 + d, acc.1 + hi, acc.2 + lo);
                }
                Ok(acc)
            }
        }
    }

    /// Renders an element as a signed sum of `*`-joined generator names.
    pub fn display(&self, e: &TensorElement) -> String {
        if e.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (w, c)) in e.terms().enumerate() {
            let neg = c.is_negative_display();
            let mag = c.abs_display();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let word = if w.is_empty() {
                "1".to_string()
            } else {
                w.letters().map(|g| self.generators[g].name.as_str()).collect::<Vec<_>>().join("*")
            };
            if mag.is_one() {
                out.push_str(&word);
            } else {
                out.push_str(&format!("{mag}*{word}"));
            }
        }
        out
    }
}

/// `[a,b]` for elements of known dimensions.
pub(crate) fn commutator_with_dims(a: &TensorElement, da: u32, b: &TensorElement, db: u32) -> TensorElement {
    let ab = a.mul(b);
    let ba = b.mul(a);
    let field = match a.terms().next() {
        Some((_, c)) => c.field(),
        None => return TensorElement::zero(),
    };
    let sign = Scalar::sign(field, (da * db).is_multiple_of(2));
    let mut out = ab;
    out.axpy(&sign, &ba);
    out
}

/// Abstract syntax of Lie expressions as written in presentation files.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LieExpr {
    Gen(String),
    Scale(BigRational, Box<LieExpr>),
    Sum(Vec<LieExpr>),
    /// Left-normed: `[a1,...,an] = [[...[a1,a2],...],an]`, arity ≥ 2.
    Bracket(Vec<LieExpr>),
}

impl LieExpr {
    pub fn gen(name: &str) -> Self {
        LieExpr::Gen(name.to_string())
    }

    pub fn bracket(parts: Vec<LieExpr>) -> Self {
        assert!(parts.len() >= 2, "bracket arity must be at least 2");
        LieExpr::Bracket(parts)
    }

    /// Left-normed bracket of generator names.
    pub fn bracket_of(names: &[&str]) -> Self {
        Self::bracket(names.iter().map(|n| Self::gen(n)).collect())
    }

    pub fn scaled(q: BigRational, e: LieExpr) -> Self {
        LieExpr::Scale(q, Box::new(e))
    }

    pub fn identifiers(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_ids(&mut out);
        out
    }

    fn collect_ids<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            LieExpr::Gen(n) => out.push(n),
            LieExpr::Scale(_, e) => e.collect_ids(out),
            LieExpr::Sum(ps) | LieExpr::Bracket(ps) => ps.iter().for_each(|p| p.collect_ids(out)),
        }
    }

    /// Renames identifiers.
    pub fn rename(&self, f: &impl Fn(&str) -> String) -> LieExpr {
        match self {
            LieExpr::Gen(n) => LieExpr::Gen(f(n)),
            LieExpr::Scale(q, e) => LieExpr::Scale(q.clone(), Box::new(e.rename(f))),
            LieExpr::Sum(ps) => LieExpr::Sum(ps.iter().map(|p| p.rename(f)).collect()),
            LieExpr::Bracket(ps) => LieExpr::Bracket(ps.iter().map(|p| p.rename(f)).collect()),
        }
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for LieExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LieExpr::Gen(n) => write!(f, "{n}"),
            LieExpr::Scale(q, e) => {
                let inner = match **e {
                    LieExpr::Sum(_) => format!("({e})"),
                    _ => e.to_string(),
                };
                if q.is_negative() {
                    write!(f, "-{}*{}", fmt_rational(&q.abs()), inner)
                } else {
                    write!(f, "{}*{}", fmt_rational(q), inner)
                }
            }
            LieExpr::Sum(ps) => {
                if ps.is_empty() {
                    return write!(f, "0*0");
                }
                for (i, p) in ps.iter().enumerate() {
                    let s = p.to_string();
                    if i == 0 {
                        write!(f, "{s}")?;
                    } else if let Some(rest) = s.strip_prefix('-') {
                        write!(f, " - {rest}")?;
                    } else {
                        write!(f, " + {s}")?;
                    }
                }
                Ok(())
            }
            LieExpr::Bracket(ps) => {
                write!(f, "[")?;
                for (i, p) in ps.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{p}")?;
                }
                write!(f, "]")
            }
        }
    }
}

/// Small helper for tests and examples: the rational `n/d`.
pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(gens: &[(&str, u32, u8)], cutoff: u32) -> TensorAlgebra {
        TensorAlgebra::new(
            Field::Rationals,
            cutoff,
            gens.iter().map(|&(n, d, k)| GradedGenerator::new(n, d, k)).collect(),
        )
    }

    fn words(t: &TensorAlgebra, spec: &[(&str, i64)]) -> TensorElement {
        TensorElement::from_terms(spec.iter().map(|&(w, c)| {
            let letters = w.split('*').map(|n| t.generator_index(n).unwrap() as u16).collect();
            (Word(letters), t.field().from_i64(c))
        }))
    }

    #[test]
    fn commutator_signs() {
        let t = alg(&[("x", 2, 0), ("y", 2, 0)], 20);
        let (x, y) = (t.generator(0), t.generator(1));
        assert_eq!(t.commutator(&x, &y).unwrap(), words(&t, &[("x*y", 1), ("y*x", -1)]));
        let xy = t.commutator(&x, &y).unwrap();
        assert!(t.commutator(&xy, &xy).unwrap().is_zero());

        let t = alg(&[("x", 1, 0)], 10);
        let x = t.generator(0);
        assert_eq!(t.commutator(&x, &x).unwrap(), words(&t, &[("x*x", 2)]));
    }

    #[test]
    fn commutator_errors() {
        let t = alg(&[("x", 2, 0), ("y", 3, 0)], 4);
        let (x, y) = (t.generator(0), t.generator(1));
        assert_eq!(t.commutator(&x.add(&y), &x), Err(TensorError::InhomogeneousOperand));
        assert_eq!(t.commutator(&x, &y), Err(TensorError::CutoffExceeded { dim: 5, cutoff: 4 }));
    }

    #[test]
    fn eval_examples() {
        let t = alg(&[("x", 2, 0), ("y", 2, 0), ("a", 7, 1), ("b", 7, 1)], 20);
        let e = t.eval_expr(&LieExpr::bracket_of(&["x", "y", "y"])).unwrap();
        assert_eq!(e, words(&t, &[("x*y*y", 1), ("y*x*y", -2), ("y*y*x", 1)]));

        let zero = LieExpr::Sum(vec![LieExpr::gen("x"), LieExpr::scaled(rational(-1, 1), LieExpr::gen("x"))]);
        assert!(t.eval_expr(&zero).unwrap().is_zero());

        let w = LieExpr::Sum(vec![
            LieExpr::bracket_of(&["a", "y"]),
            LieExpr::scaled(rational(-1, 1), LieExpr::bracket_of(&["b", "x"])),
        ]);
        assert_eq!(t.eval_expr(&w).unwrap(), words(&t, &[("a*y", 1), ("y*a", -1), ("b*x", -1), ("x*b", 1)]));
        assert_eq!(t.eval_expr(&LieExpr::gen("q")), Err(TensorError::UnboundIdentifier("q".into())));
    }

    #[test]
    fn word_basis_examples() {
        let t = alg(&[("x", 2, 0), ("y", 2, 0)], 10);
        let b = t.word_basis(4, DegreeFilter::Any);
        let shown: Vec<String> =
            b.iter().map(|w| t.display(&TensorElement::from_word(w.clone(), t.field().one()))).collect();
        assert_eq!(shown, ["x*x", "x*y", "y*x", "y*y"]);

        let t = alg(&[("x", 2, 0), ("a", 7, 1)], 10);
        let b = t.word_basis(9, DegreeFilter::Any);
        assert_eq!(b, vec![Word(vec![0, 1]), Word(vec![1, 0])]);
        assert_eq!(t.count_words(9, 1), 2);

        let t = alg(&[("x", 1, 0), ("y", 1, 0)], 10);
        assert_eq!(t.word_basis(3, DegreeFilter::Any).len(), 8);
        assert_eq!(t.count_words(3, 0), 8);
    }

    #[test]
    fn display_and_print() {
        let t = alg(&[("x", 2, 0), ("y", 2, 0)], 10);
        let e = words(&t, &[("x*y", 1), ("y*x", -1)]);
        assert_eq!(t.display(&e), "x*y - y*x");
        let half = e.scale(&t.field().from_rational(&rational(1, 2)).unwrap());
        assert_eq!(t.display(&half), "1/2*x*y - 1/2*y*x");
        let expr = LieExpr::Sum(vec![
            LieExpr::bracket_of(&["a", "y"]),
            LieExpr::scaled(rational(-1, 4), LieExpr::bracket_of(&["b", "x"])),
        ]);
        assert_eq!(expr.to_string(), "[a,y] - 1/4*[b,x]");
    }
}
