//! Line-oriented presentation files.
//!
//! ```text
//! ring Q                      # or: ring Fp 5 | ring Zloc 2,3
//! cutoff 14
//! factor F targets            # optional blocks; gens inside belong to F
//! gen x dim=2 deg=0
//! end
//! gen a dim=7 deg=1
//! rel [x,y,x]
//! d a = [x,y,x] - 1/2*[y,x,x]
//! ```

use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::coeffs::RingSpec;
use crate::present::{Factor, PresentError, Presentation, RelationDegrees};
use crate::tensor::{GradedGenerator, LieExpr};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{line}:{column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{line}:{column}: {source}")]
    Semantic { line: usize, column: usize, source: PresentError },
}

impl ParseError {
    pub fn line(&self) -> usize {
        match self {
            ParseError::Syntax { line, .. } | ParseError::Semantic { line, .. } => *line,
        }
    }

    pub fn column(&self) -> usize {
        match self {
            ParseError::Syntax { column, .. } | ParseError::Semantic { column, .. } => *column,
        }
    }
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax { line, column, message: message.into() }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Sym(char),
}

/// Tokens with 1-based columns.
fn lex(text: &str, line: usize, offset: usize) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = offset + i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), col));
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((Tok::Int(s.parse().expect("digits")), col));
        } else if "[](),+-*/".contains(c) {
            out.push((Tok::Sym(c), col));
            i += 1;
        } else {
            return Err(syntax(line, col, format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

struct ExprParser<'a> {
    toks: &'a [(Tok, usize)],
    pos: usize,
    line: usize,
    end_col: usize,
    ring: &'a RingSpec,
}

impl<'a> ExprParser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.1).unwrap_or(self.end_col)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(syntax(self.line, self.col(), format!("expected `{c}`")))
        }
    }

    fn expr(&mut self) -> Result<LieExpr, ParseError> {
        let mut terms = Vec::new();
        let mut negative = self.eat('-');
        if !negative {
            self.eat('+');
        }
        loop {
            terms.push(self.term(negative)?);
            if self.eat('+') {
                negative = false;
            } else if self.eat('-') {
                negative = true;
            } else {
                break;
            }
        }
        Ok(if terms.len() == 1 { terms.pop().unwrap() } else { LieExpr::Sum(terms) })
    }

    fn term(&mut self, negative: bool) -> Result<LieExpr, ParseError> {
        let coeff_col = self.col();
        let coeff = match self.peek() {
            Some(Tok::Int(_)) => Some(self.rational()?),
            _ => None,
        };
        if coeff.is_some() && !self.eat('*') && !matches!(self.peek(), Some(Tok::Ident(_)) | Some(Tok::Sym('[' | '(')))
        {
            return Err(syntax(self.line, self.col(), "a coefficient must multiply a generator or bracket"));
        }
        let atom = self.atom()?;
        let q = match (coeff, negative) {
            (None, false) => return Ok(atom),
            (None, true) => BigRational::from_integer((-1).into()),
            (Some(q), false) => q,
            (Some(q), true) => -q,
        };
        if let Err(e) = self.ring.check_coefficient(&q) {
            return Err(syntax(self.line, coeff_col, e.to_string()));
        }
        Ok(LieExpr::Scale(q, Box::new(atom)))
    }

    fn rational(&mut self) -> Result<BigRational, ParseError> {
        let Some((Tok::Int(n), _)) = self.toks.get(self.pos).cloned() else { unreachable!() };
        self.pos += 1;
        if self.eat('/') {
            let col = self.col();
            match self.toks.get(self.pos).cloned() {
                Some((Tok::Int(d), _)) if d != BigInt::from(0) => {
                    self.pos += 1;
                    Ok(BigRational::new(n, d))
                }
                _ => Err(syntax(self.line, col, "expected a nonzero denominator")),
            }
        } else {
            Ok(BigRational::from_integer(n))
        }
    }

    fn atom(&mut self) -> Result<LieExpr, ParseError> {
        let col = self.col();
        match self.toks.get(self.pos).cloned() {
            Some((Tok::Ident(name), _)) => {
                self.pos += 1;
                Ok(LieExpr::Gen(name))
            }
            Some((Tok::Sym('['), _)) => {
                self.pos += 1;
                let mut parts = vec![self.expr()?];
                while self.eat(',') {
                    parts.push(self.expr()?);
                }
                if parts.len() < 2 {
                    return Err(syntax(self.line, col, "a bracket needs at least two entries"));
                }
                self.expect(']')?;
                Ok(LieExpr::Bracket(parts))
            }
            Some((Tok::Sym('('), _)) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            _ => Err(syntax(self.line, col, "expected a generator, `[` or `(`")),
        }
    }
}

/// Parses a Lie expression on its own (column offsets start at 1).
pub fn parse_expr(text: &str, ring: &RingSpec) -> Result<LieExpr, ParseError> {
    parse_expr_at(text, ring, 1, 0)
}

fn parse_expr_at(text: &str, ring: &RingSpec, line: usize, offset: usize) -> Result<LieExpr, ParseError> {
    let toks = lex(text, line, offset)?;
    let end_col = offset + text.chars().count() + 1;
    if toks.is_empty() {
        return Err(syntax(line, end_col, "expected an expression"));
    }
    let mut p = ExprParser { toks: &toks, pos: 0, line, end_col, ring };
    let e = p.expr()?;
    if p.pos < toks.len() {
        return Err(syntax(line, p.col(), "unexpected input after expression"));
    }
    Ok(e)
}

struct Line<'a> {
    text: &'a str,
}

impl<'a> Line<'a> {
    /// Whitespace-separated words with 1-based columns.
    fn words(&self) -> Vec<(&'a str, usize)> {
        let mut out = Vec::new();
        let mut start = None;
        for (i, c) in self.text.char_indices() {
            match (c.is_whitespace(), start) {
                (false, None) => start = Some(i),
                (true, Some(s)) => {
                    out.push((&self.text[s..i], self.text[..s].chars().count() + 1));
                    start = None;
                }
                _ => {}
            }
        }
        if let Some(s) = start {
            out.push((&self.text[s..], self.text[..s].chars().count() + 1));
        }
        out
    }
}

fn parse_u32(word: &str, line: usize, col: usize, what: &str) -> Result<u32, ParseError> {
    word.parse().map_err(|_| syntax(line, col, format!("expected {what}, found `{word}`")))
}

fn is_ident(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && cs.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

struct Located {
    line: usize,
    column: usize,
    text: String,
}

/// Parses and validates a presentation file.
pub fn parse_presentation(text: &str) -> Result<Presentation, ParseError> {
    parse_presentation_with(text, RelationDegrees::ZeroOnly)
}

/// As [`parse_presentation`], with a choice of admissible relation degrees.
/// Subalgebra ambients may carry homogeneous relations of any degree.
pub fn parse_presentation_with(text: &str, mode: RelationDegrees) -> Result<Presentation, ParseError> {
    let mut ring: Option<RingSpec> = None;
    let mut cutoff: Option<u32> = None;
    let mut generators: Vec<(GradedGenerator, usize)> = Vec::new();
    let mut relations: Vec<(String, Located)> = Vec::new();
    let mut diffs: Vec<(String, String, Located)> = Vec::new();
    let mut factors: Vec<(Factor, usize)> = Vec::new();
    let mut open_factor: Option<usize> = None;
    let last_line = text.lines().count() + 1;

    for (i, raw) in text.lines().enumerate() {
        let number = i + 1;
        let body = raw.split('#').next().unwrap_or("");
        let line = Line { text: body };
        let words = line.words();
        let Some(&(kw, kw_col)) = words.first() else { continue };
        let rest_offset = |w: usize| -> usize {
            // byte offset where the text after word w starts
            let (word, col) = words[w];
            let prefix: usize = body.chars().take(col - 1).map(char::len_utf8).sum();
            prefix + word.len()
        };
        match kw {
            "ring" => {
                if ring.is_some() {
                    return Err(syntax(number, kw_col, "duplicate `ring`"));
                }
                let Some(&(kind, kcol)) = words.get(1) else {
                    return Err(syntax(number, kw_col + 4, "expected Q, Fp or Zloc"));
                };
                let args: String = words[2..].iter().map(|w| w.0).collect::<Vec<_>>().join("");
                let acol = words.get(2).map(|w| w.1).unwrap_or(kcol + kind.len() + 1);
                ring = Some(match kind {
                    "Q" if words.len() == 2 => RingSpec::Rationals,
                    "Fp" => {
                        let p: u64 = args.parse().map_err(|_| syntax(number, acol, "expected a prime"))?;
                        RingSpec::prime_field(p).map_err(|e| syntax(number, acol, e.to_string()))?
                    }
                    "Zloc" => {
                        let ps: Vec<u64> = args
                            .split(',')
                            .filter(|s| !s.is_empty())
                            .map(|s| s.parse())
                            .collect::<Result<_, _>>()
                            .map_err(|_| syntax(number, acol, "expected a comma-separated prime list"))?;
                        RingSpec::localization(&ps).map_err(|e| syntax(number, acol, e.to_string()))?
                    }
                    _ => {
                        return Err(syntax(
                            number,
                            kcol,
                            format!("unknown ring `{}`", words[1..].iter().map(|w| w.0).collect::<Vec<_>>().join(" ")),
                        ))
                    }
                });
            }
            "cutoff" => {
                if cutoff.is_some() {
                    return Err(syntax(number, kw_col, "duplicate `cutoff`"));
                }
                let Some(&(w, c)) = words.get(1) else {
                    return Err(syntax(number, kw_col + 6, "expected a dimension"));
                };
                if words.len() > 2 {
                    return Err(syntax(number, words[2].1, "unexpected input after cutoff"));
                }
                cutoff = Some(parse_u32(w, number, c, "a dimension")?);
            }
            "factor" => {
                if open_factor.is_some() {
                    return Err(syntax(number, kw_col, "factor blocks do not nest"));
                }
                let Some(&(name, ncol)) = words.get(1) else {
                    return Err(syntax(number, kw_col + 6, "expected a factor name"));
                };
                if !is_ident(name) {
                    return Err(syntax(number, ncol, format!("invalid factor name `{name}`")));
                }
                let targets = match words.get(2) {
                    None => false,
                    Some(&("targets", _)) if words.len() == 3 => true,
                    Some(&(w, c)) => return Err(syntax(number, c, format!("unexpected `{w}`"))),
                };
                factors.push((Factor { name: name.to_string(), generators: Vec::new(), targets }, number));
                open_factor = Some(factors.len() - 1);
            }
            "end" => {
                if open_factor.take().is_none() {
                    return Err(syntax(number, kw_col, "`end` without `factor`"));
                }
                if words.len() > 1 {
                    return Err(syntax(number, words[1].1, "unexpected input after `end`"));
                }
            }
            "gen" => {
                let Some(&(name, ncol)) = words.get(1) else {
                    return Err(syntax(number, kw_col + 3, "expected a generator name"));
                };
                if !is_ident(name) {
                    return Err(syntax(number, ncol, format!("invalid generator name `{name}`")));
                }
                let (mut dim, mut deg) = (None, None);
                for &(w, c) in &words[2..] {
                    let (key, val) = w
                        .split_once('=')
                        .ok_or_else(|| syntax(number, c, format!("expected key=value, found `{w}`")))?;
                    let vcol = c + key.len() + 1;
                    match key {
                        "dim" if dim.is_none() => dim = Some(parse_u32(val, number, vcol, "a dimension")?),
                        "deg" if deg.is_none() => {
                            let d = parse_u32(val, number, vcol, "a degree")?;
                            if d > 1 {
                                return Err(syntax(number, vcol, "degree must be 0 or 1"));
                            }
                            deg = Some(d as u8);
                        }
                        _ => return Err(syntax(number, c, format!("unexpected `{w}`"))),
                    }
                }
                let dim = dim.ok_or_else(|| syntax(number, ncol, format!("generator `{name}` needs dim=")))?;
                let deg = deg.unwrap_or(0);
                if generators.iter().any(|(g, _)| g.name == name) {
                    return Err(ParseError::Semantic {
                        line: number,
                        column: ncol,
                        source: PresentError::DuplicateGenerator(name.to_string()),
                    });
                }
                if dim == 0 {
                    return Err(ParseError::Semantic {
                        line: number,
                        column: ncol,
                        source: PresentError::ZeroDimension(name.to_string()),
                    });
                }
                generators.push((GradedGenerator::new(name, dim, deg), number));
                if let Some(f) = open_factor {
                    factors[f].0.generators.push(name.to_string());
                }
            }
            "rel" => {
                let off = rest_offset(0);
                let rest = &body[off..];
                if rest.trim().is_empty() {
                    return Err(syntax(number, kw_col + 3, "expected an expression"));
                }
                let column = body[..off].chars().count() + rest.len() - rest.trim_start().len() + 1;
                relations.push((rest.to_string(), Located { line: number, column, text: body.to_string() }));
            }
            "d" => {
                let Some(&(name, ncol)) = words.get(1) else {
                    return Err(syntax(number, kw_col + 1, "expected a generator name"));
                };
                let name = name.split('=').next().unwrap_or(name);
                if !is_ident(name) {
                    return Err(syntax(number, ncol, format!("invalid generator name `{name}`")));
                }
                let eq = body.find('=').ok_or_else(|| syntax(number, ncol + name.len() + 1, "expected `=`"))?;
                let rest = &body[eq + 1..];
                if rest.trim().is_empty() {
                    return Err(syntax(number, body[..eq].chars().count() + 2, "expected an expression"));
                }
                diffs.push((
                    name.to_string(),
                    rest.to_string(),
                    Located { line: number, column: ncol, text: body.to_string() },
                ));
            }
            other => return Err(syntax(number, kw_col, format!("unknown statement `{other}`"))),
        }
    }
    if let Some(f) = open_factor {
        return Err(syntax(factors[f].1, 1, format!("factor `{}` is missing `end`", factors[f].0.name)));
    }
    let ring = ring.unwrap_or(RingSpec::Rationals);
    let cutoff = cutoff.ok_or_else(|| syntax(last_line, 1, "missing `cutoff`"))?;

    let mut p = Presentation::new(ring.clone(), cutoff);
    p.generators = generators.iter().map(|(g, _)| g.clone()).collect();
    let known: HashSet<&str> = p.generators.iter().map(|g| g.name.as_str()).collect();

    let mut rel_exprs = Vec::new();
    for (src, loc) in &relations {
        let offset = loc.column - 1;
        let e = parse_expr_at(src.trim_start(), &ring, loc.line, offset)?;
        check_single(&p, mode, &loc_of(&e, loc, &known), |q| q.relations.push(e.clone()))?;
        rel_exprs.push(e);
    }
    let mut d_exprs = Vec::new();
    for (name, src, loc) in &diffs {
        let eq = loc.text.find('=').expect("checked");
        let offset = loc.text[..eq + 1].chars().count() + src.len() - src.trim_start().len();
        let e = parse_expr_at(src.trim_start(), &ring, loc.line, offset)?;
        let located = Located { line: loc.line, column: offset + 1, text: loc.text.clone() };
        if !known.contains(name.as_str()) {
            return Err(ParseError::Semantic {
                line: loc.line,
                column: loc.column,
                source: PresentError::UnknownIdentifier(name.clone()),
            });
        }
        if d_exprs.iter().any(|(n, _): &(String, LieExpr)| n == name) {
            return Err(ParseError::Semantic {
                line: loc.line,
                column: loc.column,
                source: PresentError::DuplicateDifferential(name.clone()),
            });
        }
        check_single(&p, mode, &loc_of(&e, &located, &known), |q| q.differentials.push((name.clone(), e.clone())))?;
        d_exprs.push((name.clone(), e));
    }
    p.relations = rel_exprs;
    p.differentials = d_exprs;
    p.factors = factors.iter().map(|(f, _)| f.clone()).collect();
    if let Err(e) = p.validate_with(mode) {
        let line = factors.first().map(|f| f.1).unwrap_or(1);
        return Err(ParseError::Semantic { line, column: 1, source: e });
    }
    Ok(p)
}

/// Position to blame inside a statement: the first unknown identifier, else
/// the start of the expression.
fn loc_of(e: &LieExpr, loc: &Located, known: &HashSet<&str>) -> Located {
    let mut column = loc.column;
    if let Some(bad) = e.identifiers().into_iter().find(|id| !known.contains(id)) {
        let chars: Vec<char> = loc.text.chars().collect();
        let target: Vec<char> = bad.chars().collect();
        let is_id = |c: char| c.is_ascii_alphanumeric() || c == '_' || c == '\'';
        for start in (loc.column - 1)..chars.len() {
            if chars[start..].starts_with(&target)
                && (start == 0 || !is_id(chars[start - 1]))
                && chars.get(start + target.len()).map(|&c| !is_id(c)).unwrap_or(true)
            {
                column = start + 1;
                break;
            }
        }
    }
    Located { line: loc.line, column, text: String::new() }
}

fn check_single(
    base: &Presentation,
    mode: RelationDegrees,
    loc: &Located,
    add: impl FnOnce(&mut Presentation),
) -> Result<(), ParseError> {
    let mut q = base.clone();
    add(&mut q);
    q.validate_with(mode).map_err(|source| ParseError::Semantic { line: loc.line, column: loc.column, source })
}

#[cfg(test)]
mod tests {
    use super::*;

    const SEMI: &str = "ring Q\ncutoff 14\ngen x dim=2 deg=0\ngen y dim=2 deg=0\ngen a dim=7 deg=1\ngen b dim=7 deg=1\nd a = [x,y,x]\nd b = [x,y,y]\n";

    #[test]
    fn parses_semi_inert_file() {
        let p = parse_presentation(SEMI).unwrap();
        assert_eq!(p.generators.len(), 4);
        assert_eq!(p.differentials[0].1, LieExpr::bracket_of(&["x", "y", "x"]));
        assert_eq!(parse_presentation(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn dimension_mismatch_located() {
        let text = "cutoff 8\ngen x dim=2\ngen y dim=2\ngen a dim=6 deg=1\nd a = [x,y]\n";
        let err = parse_presentation(text).unwrap_err();
        assert_eq!((err.line(), err.column()), (5, 7));
        assert!(matches!(err, ParseError::Semantic { source: PresentError::DimensionMismatch { .. }, .. }));
    }

    #[test]
    fn degree_violation_in_rel() {
        let text = "cutoff 8\ngen x dim=2\ngen a dim=3 deg=1\nrel [x,a]\n";
        let err = parse_presentation(text).unwrap_err();
        assert_eq!(err.line(), 4);
        assert!(matches!(err, ParseError::Semantic { source: PresentError::DegreeViolation { .. }, .. }));
    }

    #[test]
    fn unknown_identifier_column() {
        let text = "cutoff 8\ngen x dim=2\nrel [x, q]\n";
        let err = parse_presentation(text).unwrap_err();
        assert_eq!((err.line(), err.column()), (3, 9));
    }

    #[test]
    fn syntax_errors_located() {
        let err = parse_presentation("cutoff 8\ngen x dim=2\nrel [x,x\n").unwrap_err();
        assert_eq!((err.line(), err.column()), (3, 9));
        let err = parse_presentation("cutoff 8\nbogus\n").unwrap_err();
        assert_eq!((err.line(), err.column()), (2, 1));
        let err = parse_presentation("gen x dim=2\n").unwrap_err();
        assert!(err.to_string().contains("missing `cutoff`"));
    }

    #[test]
    fn rational_coefficients_and_rings() {
        let e = parse_expr("[a,y] - 1/4*[b,x]", &RingSpec::Rationals).unwrap();
        assert_eq!(e.to_string(), "[a,y] - 1/4*[b,x]");
        assert!(parse_expr("1/5*x", &RingSpec::prime_field(5).unwrap()).is_err());
        assert!(parse_expr("1/6*x", &RingSpec::localization(&[]).unwrap()).is_ok());
        assert!(parse_expr("1/5*x", &RingSpec::localization(&[]).unwrap()).is_err());
        let e = parse_expr("-x + 2 y", &RingSpec::Rationals).unwrap();
        assert_eq!(parse_expr(&e.to_string(), &RingSpec::Rationals).unwrap(), e);
    }

    #[test]
    fn factors_and_comments() {
        let text = "ring Zloc 2,3\ncutoff 10 # top\nfactor C\ngen x dim=2\nend\nfactor F targets\ngen w dim=3\nend\ngen e dim=7 deg=1\nd e = [w,w]\n";
        let p = parse_presentation(text).unwrap();
        assert_eq!(p.factors.len(), 2);
        assert!(p.factors[1].targets);
        assert_eq!(parse_presentation(&p.to_string()).unwrap(), p);
        let bad = "cutoff 10\nfactor C\ngen x dim=2\nend\nfactor F targets\ngen w dim=3\nend\ngen e dim=5 deg=1\nd e = [x,x]\n";
        assert!(matches!(
            parse_presentation(bad),
            Err(ParseError::Semantic { source: PresentError::FactorViolation(_), .. })
        ));
    }
}
