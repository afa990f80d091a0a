//! Finitely presented graded algebras `UẼL = T(V₀ ⊕ V₁)/(relations)`.
//!
//! A [`Presentation`] is the user-facing description. A [`PresentedAlgebra`]
//! realizes it over one field: for every dimension and degree it holds the
//! word basis, an echelon basis of the two-sided relation ideal, and an
//! echelon basis of the Lie part. Vectors inside a block are sparse maps
//! from word index to scalar and are always kept in normal form (no entry
//! in an ideal pivot column), so the non-pivot words are the quotient basis.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use thiserror::Error;

use crate::coeffs::{CoeffError, Field, HilbertSeries, RingSpec, Scalar};
use crate::linalg::{axpy, Echelon, SparseVec};
use crate::tensor::{GradedGenerator, LieExpr, TensorAlgebra, TensorElement, TensorError, Word};

pub const DEFAULT_MAX_WORDS: u128 = 200_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentError {
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("generator `{0}` must have positive dimension")]
    ZeroDimension(String),
    #[error("generator `{name}` has degree {degree}; only 0 and 1 are allowed")]
    BadDegree { name: String, degree: u8 },
    #[error("unknown identifier `{0}`")]
    UnknownIdentifier(String),
    #[error("d {name}: image has dimension {found}, expected {expected}")]
    DimensionMismatch { name: String, expected: u32, found: u32 },
    #[error("{context}: degree violation ({detail})")]
    DegreeViolation { context: String, detail: String },
    #[error("{0}: expression is not homogeneous")]
    Inhomogeneous(String),
    #[error("differential for `{0}` given twice")]
    DuplicateDifferential(String),
    #[error("factor violation: {0}")]
    FactorViolation(String),
    #[error("dimension {dim}, degree {degree}: {words} words exceed the limit {limit} (raise --max-words)")]
    BlowUp { dim: u32, degree: u32, words: u128, limit: u128 },
    #[error("element {0} is not a Lie element")]
    NotLieElement(String),
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
}

/// A coproduct factor: a block of generators whose relations stay inside it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factor {
    pub name: String,
    pub generators: Vec<String>,
    /// Marks the factor containing every differential target.
    pub targets: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub ring: RingSpec,
    pub cutoff: u32,
    pub generators: Vec<GradedGenerator>,
    pub relations: Vec<LieExpr>,
    /// `d name = image`, in declaration order.
    pub differentials: Vec<(String, LieExpr)>,
    pub factors: Vec<Factor>,
}

/// How strict relation degrees are checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RelationDegrees {
    /// Relations involve degree-0 generators only (user files).
    ZeroOnly,
    /// Relations need only be homogeneous in degree.
    Homogeneous,
}

impl Presentation {
    pub fn new(ring: RingSpec, cutoff: u32) -> Self {
        Presentation {
            ring,
            cutoff,
            generators: Vec::new(),
            relations: Vec::new(),
            differentials: Vec::new(),
            factors: Vec::new(),
        }
    }

    pub fn with_generator(mut self, name: &str, dim: u32, degree: u8) -> Self {
        self.generators.push(GradedGenerator::new(name, dim, degree));
        self
    }

    pub fn with_relation(mut self, rel: LieExpr) -> Self {
        self.relations.push(rel);
        self
    }

    pub fn with_differential(mut self, name: &str, image: LieExpr) -> Self {
        self.differentials.push((name.to_string(), image));
        self
    }

    pub fn generator(&self, name: &str) -> Option<&GradedGenerator> {
        self.generators.iter().find(|g| g.name == name)
    }

    pub fn degree_zero(&self) -> impl Iterator<Item = &GradedGenerator> {
        self.generators.iter().filter(|g| g.degree == 0)
    }

    pub fn degree_one(&self) -> impl Iterator<Item = &GradedGenerator> {
        self.generators.iter().filter(|g| g.degree == 1)
    }

    /// `V₁(z)`: dimensions of the degree-1 generators.
    pub fn v1_series(&self) -> HilbertSeries {
        let n = self.cutoff as usize;
        let mut s = HilbertSeries::zero(n);
        for g in self.degree_one() {
            let d = g.dim as usize;
            s.set(d, s.coeff(d) + 1);
        }
        s
    }

    /// Differentials on degree-0 generators (a nonzero base differential).
    pub fn base_differentials(&self) -> impl Iterator<Item = &(String, LieExpr)> {
        self.differentials.iter().filter(move |(n, _)| self.generator(n).map(|g| g.degree == 0).unwrap_or(false))
    }

    fn grading_table(&self) -> TensorAlgebra {
        TensorAlgebra::new(Field::Rationals, u32::MAX, self.generators.clone())
    }

    pub fn validate(&self) -> Result<(), PresentError> {
        self.validate_with(RelationDegrees::ZeroOnly)
    }

    pub fn validate_with(&self, rel_degrees: RelationDegrees) -> Result<(), PresentError> {
        let mut seen = HashSet::new();
        for g in &self.generators {
            if !seen.insert(g.name.as_str()) {
                return Err(PresentError::DuplicateGenerator(g.name.clone()));
            }
            if g.dim == 0 {
                return Err(PresentError::ZeroDimension(g.name.clone()));
            }
            if g.degree > 1 {
                return Err(PresentError::BadDegree { name: g.name.clone(), degree: g.degree });
            }
        }
        let table = self.grading_table();
        let grading = |e: &LieExpr, ctx: &str| -> Result<(u32, u32, u32), PresentError> {
            for id in e.identifiers() {
                if table.generator_index(id).is_none() {
                    return Err(PresentError::UnknownIdentifier(id.to_string()));
                }
            }
            table.expr_grading(e).map_err(|err| match err {
                TensorError::InhomogeneousOperand => PresentError::Inhomogeneous(ctx.to_string()),
                other => other.into(),
            })
        };
        for r in &self.relations {
            let ctx = format!("rel {r}");
            let (_, hi, lo) = grading(r, &ctx)?;
            match rel_degrees {
                RelationDegrees::ZeroOnly if hi > 0 => {
                    let offenders: Vec<&str> = r
                        .identifiers()
                        .into_iter()
                        .filter(|id| self.generator(id).map(|g| g.degree > 0).unwrap_or(false))
                        .collect();
                    return Err(PresentError::DegreeViolation {
                        context: ctx,
                        detail: format!("degree-1 identifier {}", offenders.join(", ")),
                    });
                }
                RelationDegrees::Homogeneous if hi != lo => {
                    return Err(PresentError::DegreeViolation { context: ctx, detail: "mixed degrees".to_string() });
                }
                _ => {}
            }
        }
        let mut with_d = HashSet::new();
        for (name, image) in &self.differentials {
            let gen = self.generator(name).ok_or_else(|| PresentError::UnknownIdentifier(name.clone()))?;
            if !with_d.insert(name.as_str()) {
                return Err(PresentError::DuplicateDifferential(name.clone()));
            }
            let ctx = format!("d {name}");
            let (dim, hi, _) = grading(image, &ctx)?;
            if hi > 0 {
                return Err(PresentError::DegreeViolation {
                    context: ctx,
                    detail: "image must involve degree-0 generators only".to_string(),
                });
            }
            if gen.dim == 0 || dim != gen.dim - 1 {
                return Err(PresentError::DimensionMismatch {
                    name: name.clone(),
                    expected: gen.dim.saturating_sub(1),
                    found: dim,
                });
            }
        }
        self.validate_factors()
    }

    fn validate_factors(&self) -> Result<(), PresentError> {
        if self.factors.is_empty() {
            return Ok(());
        }
        let mut owner: HashMap<&str, usize> = HashMap::new();
        for (i, f) in self.factors.iter().enumerate() {
            for g in &f.generators {
                if self.generator(g).is_none() {
                    return Err(PresentError::UnknownIdentifier(g.clone()));
                }
                if owner.insert(g.as_str(), i).is_some() {
                    return Err(PresentError::FactorViolation(format!("generator {g} lies in two factors")));
                }
            }
        }
        let marked: Vec<usize> = (0..self.factors.len()).filter(|&i| self.factors[i].targets).collect();
        if marked.len() != 1 {
            return Err(PresentError::FactorViolation(format!(
                "exactly one factor must be flagged `targets`, found {}",
                marked.len()
            )));
        }
        let marked = marked[0];
        for g in self.degree_zero() {
            if !owner.contains_key(g.name.as_str()) {
                return Err(PresentError::FactorViolation(format!(
                    "degree-0 generator {} belongs to no factor",
                    g.name
                )));
            }
        }
        for r in &self.relations {
            let fs: HashSet<usize> = r.identifiers().iter().filter_map(|id| owner.get(id).copied()).collect();
            if fs.len() > 1 {
                return Err(PresentError::FactorViolation(format!("rel {r} crosses factors")));
            }
        }
        for (name, image) in &self.differentials {
            if let Some(i) = image.identifiers().iter().filter_map(|id| owner.get(id)).find(|&&i| i != marked) {
                return Err(PresentError::FactorViolation(format!(
                    "d {name} targets factor {} which is not flagged `targets`",
                    self.factors[*i].name
                )));
            }
        }
        Ok(())
    }

    /// Splits a factored presentation into the marked factor (with every
    /// degree-1 generator and differential) and the remaining factors.
    pub fn split_factors(&self) -> Result<Option<FactorSplit>, PresentError> {
        if self.factors.is_empty() {
            return Ok(None);
        }
        self.validate_factors()?;
        let mut marked = None;
        let mut others = Vec::new();
        for f in &self.factors {
            let names: HashSet<&str> = f.generators.iter().map(String::as_str).collect();
            let mut sub = Presentation::new(self.ring.clone(), self.cutoff);
            sub.generators = self
                .generators
                .iter()
                .filter(|g| names.contains(g.name.as_str()) || (f.targets && g.degree == 1))
                .cloned()
                .collect();
            sub.relations = self
                .relations
                .iter()
                .filter(|r| r.identifiers().iter().all(|id| names.contains(id)))
                .cloned()
                .collect();
            if f.targets {
                sub.differentials = self.differentials.clone();
                marked = Some((f.name.clone(), sub));
            } else {
                others.push((f.name.clone(), sub));
            }
        }
        let (marked_name, marked) = marked.expect("validated");
        Ok(Some(FactorSplit { marked_name, marked, others }))
    }
}

#[derive(Debug, Clone)]
pub struct FactorSplit {
    pub marked_name: String,
    pub marked: Presentation,
    pub others: Vec<(String, Presentation)>,
}

impl fmt::Display for Presentation {
    /// Prints in the presentation file grammar.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ring {}", self.ring)?;
        writeln!(f, "cutoff {}", self.cutoff)?;
        let in_factor: HashSet<&str> =
            self.factors.iter().flat_map(|fa| fa.generators.iter().map(String::as_str)).collect();
        let gen_line = |f: &mut fmt::Formatter<'_>, g: &GradedGenerator| {
            writeln!(f, "gen {} dim={} deg={}", g.name, g.dim, g.degree)
        };
        for fa in &self.factors {
            writeln!(f, "factor {}{}", fa.name, if fa.targets { " targets" } else { "" })?;
            for name in &fa.generators {
                if let Some(g) = self.generator(name) {
                    gen_line(f, g)?;
                }
            }
            writeln!(f, "end")?;
        }
        for g in &self.generators {
            if !in_factor.contains(g.name.as_str()) {
                gen_line(f, g)?;
            }
        }
        for r in &self.relations {
            writeln!(f, "rel {r}")?;
        }
        for (name, image) in &self.differentials {
            writeln!(f, "d {name} = {image}")?;
        }
        Ok(())
    }
}

/// Evaluation options for [`PresentedAlgebra`].
#[derive(Debug, Clone, Copy)]
pub struct BuildOptions {
    pub max_words: u128,
    /// Highest degree materialized; `None` keeps every degree.
    pub max_degree: Option<u32>,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions { max_words: DEFAULT_MAX_WORDS, max_degree: Some(2) }
    }
}

/// Words of one (dimension, degree) with the relation ideal in echelon form.
#[derive(Debug, Clone)]
pub struct Block {
    pub dim: u32,
    pub degree: u32,
    words: Vec<Word>,
    index: HashMap<Word, usize>,
    ideal: Echelon,
    standard: Vec<usize>,
}

impl Block {
    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn word(&self, i: usize) -> &Word {
        &self.words[i]
    }

    pub fn index_of(&self, w: &Word) -> Option<usize> {
        self.index.get(w).copied()
    }

    /// Indices of the words outside the ideal's pivots: a quotient basis.
    pub fn standard(&self) -> &[usize] {
        &self.standard
    }

    pub fn ideal(&self) -> &Echelon {
        &self.ideal
    }

    pub fn normal_form(&self, v: &SparseVec) -> SparseVec {
        self.ideal.reduce(v)
    }
}

/// A per-(dimension, degree) echelon basis of some subspace, in block
/// coordinates.
#[derive(Debug, Clone)]
pub struct BasisComponent {
    pub dim: u32,
    pub degree: u32,
    pub echelon: Echelon,
}

impl BasisComponent {
    pub fn rank(&self) -> usize {
        self.echelon.rank()
    }

    pub fn basis(&self) -> Vec<SparseVec> {
        self.echelon.rows().cloned().collect()
    }
}

/// A presentation realized over a field, truncated at `cutoff + 1` so that
/// boundaries into the top dimension are available.
#[derive(Debug, Clone)]
pub struct PresentedAlgebra {
    tensor: TensorAlgebra,
    cutoff: u32,
    options: BuildOptions,
    relations: Vec<(u32, u32, TensorElement)>,
    top: u32,
    blocks: HashMap<(u32, u32), Block>,
    lie: HashMap<(u32, u32), BasisComponent>,
}

impl PresentedAlgebra {
    /// Builds every block through dimension `cutoff + 1`.
    pub fn new(p: &Presentation, field: Field, options: BuildOptions) -> Result<Self, PresentError> {
        let mut alg = Self::empty(p, field, options)?;
        alg.extend_to(p.cutoff + 1)?;
        Ok(alg)
    }

    /// Builds nothing yet; call [`PresentedAlgebra::extend_to`].
    pub fn empty(p: &Presentation, field: Field, options: BuildOptions) -> Result<Self, PresentError> {
        p.validate_with(RelationDegrees::Homogeneous)?;
        let tensor = TensorAlgebra::new(field, p.cutoff + 1, p.generators.clone());
        let mut relations = Vec::new();
        for r in &p.relations {
            let e = tensor.eval_expr(r)?;
            if e.is_zero() {
                continue;
            }
            let dim = tensor.homogeneous_dim(&e)?.expect("nonzero");
            let degree = tensor
                .homogeneous_degree(&e)
                .flatten()
                .ok_or_else(|| PresentError::Inhomogeneous(format!("rel {r}")))?;
            relations.push((dim, degree, e));
        }
        let mut alg = PresentedAlgebra {
            tensor,
            cutoff: p.cutoff,
            options,
            relations,
            top: 0,
            blocks: HashMap::new(),
            lie: HashMap::new(),
        };
        alg.build_block(0, 0)?;
        Ok(alg)
    }

    pub fn tensor(&self) -> &TensorAlgebra {
        &self.tensor
    }

    pub fn field(&self) -> Field {
        self.tensor.field()
    }

    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    pub fn top(&self) -> u32 {
        self.top
    }

    pub fn generators(&self) -> &[GradedGenerator] {
        self.tensor.generators()
    }

    pub fn max_degree_at(&self, n: u32) -> u32 {
        let by_words =
            self.generators().iter().filter(|g| g.degree > 0).map(|g| g.dim).min().map(|d| n / d).unwrap_or(0);
        match self.options.max_degree {
            Some(k) => k.min(by_words),
            None => by_words,
        }
    }

    /// Materializes all blocks of dimension ≤ `n`. At the very top dimension
    /// `cutoff + 1` only positive degrees are built.
    pub fn extend_to(&mut self, n: u32) -> Result<(), PresentError> {
        let n = n.min(self.cutoff + 1);
        while self.top < n {
            let m = self.top + 1;
            let lowest = if m == self.cutoff + 1 { 1 } else { 0 };
            for k in lowest..=self.max_degree_at(m) {
                self.build_block(m, k)?;
            }
            for k in lowest..=self.max_degree_at(m).min(2) {
                self.build_lie(m, k)?;
            }
            self.top = m;
        }
        Ok(())
    }

    pub fn block(&self, n: u32, k: u32) -> Option<&Block> {
        self.blocks.get(&(n, k))
    }

    /// Builds block `(n, k)` and, recursively, every nonempty block it
    /// depends on. Lets sparse callers avoid materializing whole dimensions.
    pub fn ensure_block(&mut self, n: u32, k: u32) -> Result<(), PresentError> {
        if self.blocks.contains_key(&(n, k)) {
            return Ok(());
        }
        if n > self.cutoff + 1 {
            return Err(TensorError::CutoffExceeded { dim: n, cutoff: self.cutoff + 1 }.into());
        }
        let lower: Vec<(u32, u32)> = self
            .generators()
            .iter()
            .filter(|g| g.dim <= n && g.degree as u32 <= k)
            .map(|g| (n - g.dim, k - g.degree as u32))
            .collect();
        for (m, j) in lower {
            if self.tensor.count_words(m, j) > 0 {
                self.ensure_block(m, j)?;
            }
        }
        self.build_block(n, k)
    }

    /// Builds the Lie part in `(n, k)` and everything it depends on.
    pub fn ensure_lie(&mut self, n: u32, k: u32) -> Result<(), PresentError> {
        if self.lie.contains_key(&(n, k)) {
            return Ok(());
        }
        self.ensure_block(n, k)?;
        let lower: Vec<(u32, u32)> = self
            .generators()
            .iter()
            .filter(|g| g.dim < n && g.degree as u32 <= k)
            .map(|g| (n - g.dim, k - g.degree as u32))
            .collect();
        for (m, j) in lower {
            if self.tensor.count_words(m, j) > 0 {
                self.ensure_lie(m, j)?;
            }
        }
        self.build_lie(n, k)
    }

    fn build_block(&mut self, n: u32, k: u32) -> Result<(), PresentError> {
        let count = self.tensor.count_words(n, k);
        if count > self.options.max_words {
            return Err(PresentError::BlowUp { dim: n, degree: k, words: count, limit: self.options.max_words });
        }
        let words = self.tensor.word_basis_bigraded(n, k);
        let index: HashMap<Word, usize> = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let mut ideal = Echelon::new(self.field());
        for (i, g) in self.generators().iter().enumerate() {
            let (d, e) = (g.dim, g.degree as u32);
            if d > n || e > k {
                continue;
            }
            let Some(lower) = self.blocks.get(&(n - d, k - e)) else { continue };
            for row in lower.ideal.rows() {
                let left = remap(row, |j| index[&lower.words[j].prepend(i)]);
                ideal.insert(&left);
                let right = remap(row, |j| index[&lower.words[j].append(i)]);
                ideal.insert(&right);
            }
        }
        for (dim, deg, r) in &self.relations {
            if *dim == n && *deg == k {
                let v: SparseVec = r.terms().map(|(w, c)| (index[w], c.clone())).collect();
                ideal.insert(&v);
            }
        }
        let standard = (0..words.len()).filter(|&i| !ideal.is_pivot(i)).collect();
        self.blocks.insert((n, k), Block { dim: n, degree: k, words, index, ideal, standard });
        Ok(())
    }

    fn build_lie(&mut self, n: u32, k: u32) -> Result<(), PresentError> {
        let mut ech = Echelon::new(self.field());
        let gens: Vec<(usize, u32, u32)> =
            self.generators().iter().enumerate().map(|(i, g)| (i, g.dim, g.degree as u32)).collect();
        for &(i, d, e) in &gens {
            if d == n && e == k {
                let v = self.normal_form_word(n, k, &Word::letter(i));
                ech.insert(&v);
            }
        }
        for &(i, d, e) in &gens {
            if d >= n || e > k {
                continue;
            }
            let Some(lower) = self.lie.get(&(n - d, k - e)) else { continue };
            let lower_rows: Vec<SparseVec> = lower.echelon.rows().cloned().collect();
            for b in lower_rows {
                let v = self.bracket_with_generator(n - d, k - e, &b, i);
                ech.insert(&v);
            }
        }
        self.lie.insert((n, k), BasisComponent { dim: n, degree: k, echelon: ech });
        Ok(())
    }

    fn normal_form_word(&self, n: u32, k: u32, w: &Word) -> SparseVec {
        let block = &self.blocks[&(n, k)];
        let mut v = SparseVec::new();
        v.insert(block.index[w], self.field().one());
        block.normal_form(&v)
    }

    /// Normal form of a vector given in block coordinates.
    pub fn normal_form(&self, n: u32, k: u32, v: &SparseVec) -> SparseVec {
        self.blocks[&(n, k)].normal_form(v)
    }

    /// `[b, g]` for `b` in block `(n, k)` and a generator index `g`.
    pub fn bracket_with_generator(&self, n: u32, k: u32, b: &SparseVec, g: usize) -> SparseVec {
        let gen = &self.generators()[g];
        let (tn, tk) = (n + gen.dim, k + gen.degree as u32);
        let src = &self.blocks[&(n, k)];
        let dst = &self.blocks[&(tn, tk)];
        let sign = Scalar::sign(self.field(), (n * gen.dim).is_multiple_of(2));
        let mut out = remap(b, |j| dst.index[&src.words[j].append(g)]);
        let left = remap(b, |j| dst.index[&src.words[j].prepend(g)]);
        axpy(&mut out, &sign, &left);
        dst.normal_form(&out)
    }

    /// Product of normal-form vectors from two blocks, in normal form.
    pub fn multiply(&self, a: (u32, u32, &SparseVec), b: (u32, u32, &SparseVec)) -> Option<SparseVec> {
        let (tn, tk) = (a.0 + b.0, a.1 + b.1);
        let dst = self.blocks.get(&(tn, tk))?;
        let ba = &self.blocks[&(a.0, a.1)];
        let bb = &self.blocks[&(b.0, b.1)];
        let mut out = SparseVec::new();
        for (&i, x) in a.2 {
            for (&j, y) in b.2 {
                let w = ba.words[i].concat(&bb.words[j]);
                let mut t = SparseVec::new();
                t.insert(dst.index[&w], x * y);
                axpy(&mut out, &self.field().one(), &t);
            }
        }
        Some(dst.normal_form(&out))
    }

    /// Signed commutator of normal-form vectors; `None` past the top block.
    pub fn bracket(&self, a: (u32, u32, &SparseVec), b: (u32, u32, &SparseVec)) -> Option<SparseVec> {
        let mut ab = self.multiply(a, b)?;
        let ba = self.multiply(b, a)?;
        let sign = Scalar::sign(self.field(), (a.0 * b.0).is_multiple_of(2));
        axpy(&mut ab, &sign, &ba);
        Some(ab)
    }

    /// Block coordinates of a homogeneous element (not yet normalized).
    pub fn to_vec(&self, e: &TensorElement) -> Result<Option<(u32, u32, SparseVec)>, PresentError> {
        let Some(n) = self.tensor.homogeneous_dim(e)? else { return Ok(None) };
        let k = self
            .tensor
            .homogeneous_degree(e)
            .flatten()
            .ok_or_else(|| PresentError::Inhomogeneous(self.tensor.display(e)))?;
        let block = self.blocks.get(&(n, k)).ok_or(TensorError::CutoffExceeded { dim: n, cutoff: self.top })?;
        Ok(Some((n, k, e.terms().map(|(w, c)| (block.index[w], c.clone())).collect())))
    }

    pub fn to_element(&self, n: u32, k: u32, v: &SparseVec) -> TensorElement {
        let block = &self.blocks[&(n, k)];
        TensorElement::from_terms(v.iter().map(|(&i, c)| (block.words[i].clone(), c.clone())))
    }

    /// Normal form of an arbitrary element, block by block.
    pub fn reduce_element(&self, e: &TensorElement) -> TensorElement {
        let mut parts: BTreeMap<(u32, u32), TensorElement> = BTreeMap::new();
        for (w, c) in e.terms() {
            let key = (self.tensor.word_dim(w), self.tensor.word_degree(w));
            parts.entry(key).or_default().add_term(w.clone(), c.clone());
        }
        let mut out = TensorElement::zero();
        for ((n, k), part) in parts {
            match self.blocks.get(&(n, k)) {
                Some(block) => {
                    let v: SparseVec = part.terms().map(|(w, c)| (block.index[w], c.clone())).collect();
                    out = out.add(&self.to_element(n, k, &block.normal_form(&v)));
                }
                None => out = out.add(&part),
            }
        }
        out
    }

    pub fn display_vec(&self, n: u32, k: u32, v: &SparseVec) -> String {
        self.tensor.display(&self.to_element(n, k, v))
    }

    /// Echelon basis of the relation ideal in dimension `n`, all degrees.
    pub fn ideal_basis(&self, n: u32) -> Vec<TensorElement> {
        self.blocks_at(n)
            .flat_map(|b| b.ideal.rows().map(|r| self.to_element(b.dim, b.degree, r)).collect::<Vec<_>>())
            .collect()
    }

    /// Words representing a basis of the quotient in dimension `n`.
    pub fn quotient_basis(&self, n: u32) -> Vec<Word> {
        self.blocks_at(n).flat_map(|b| b.standard.iter().map(|&i| b.words[i].clone()).collect::<Vec<_>>()).collect()
    }

    fn blocks_at(&self, n: u32) -> impl Iterator<Item = &Block> {
        (0..=self.max_degree_at(n)).filter_map(move |k| self.blocks.get(&(n, k)))
    }

    pub fn quotient_dim(&self, n: u32, k: u32) -> usize {
        self.blocks.get(&(n, k)).map(|b| b.standard.len()).unwrap_or(0)
    }

    /// Series of quotient dimensions in degree `k` through the cutoff.
    pub fn quotient_series(&self, k: u32) -> HilbertSeries {
        let n = self.cutoff as usize;
        HilbertSeries::new((0..=n).map(|d| self.quotient_dim(d as u32, k) as i64).collect(), n)
    }

    /// Lie part in dimension `n` and degree `k ≤ 2`.
    pub fn lie_component(&self, n: u32, k: u32) -> Option<&BasisComponent> {
        self.lie.get(&(n, k))
    }

    pub fn lie_dim(&self, n: u32, k: u32) -> usize {
        self.lie.get(&(n, k)).map(|c| c.rank()).unwrap_or(0)
    }

    pub fn lie_series(&self, k: u32) -> HilbertSeries {
        let n = self.cutoff as usize;
        HilbertSeries::new((0..=n).map(|d| self.lie_dim(d as u32, k) as i64).collect(), n)
    }

    /// Whether a normal-form vector lies in the Lie part.
    pub fn is_lie(&self, n: u32, k: u32, v: &SparseVec) -> bool {
        v.is_empty() || self.lie.get(&(n, k)).map(|c| c.echelon.contains(v)).unwrap_or(false)
    }

    /// The Lie ideal generated by degree-0 seeds, saturated dimension by
    /// dimension under brackets with the degree-0 generators.
    pub fn lie_ideal_basis(&self, seeds: &[TensorElement]) -> Result<LieIdeal, PresentError> {
        let mut by_dim: BTreeMap<u32, Vec<SparseVec>> = BTreeMap::new();
        for s in seeds {
            let Some((n, k, v)) = self.to_vec(s)? else { continue };
            let v = self.normal_form(n, k, &v);
            if k != 0 || !self.is_lie(n, k, &v) {
                return Err(PresentError::NotLieElement(self.tensor.display(s)));
            }
            by_dim.entry(n).or_default().push(v);
        }
        let cutoff = self.cutoff.min(self.top);
        let mut comps: Vec<Echelon> = Vec::with_capacity(cutoff as usize + 1);
        for n in 0..=cutoff {
            let mut ech = Echelon::new(self.field());
            for v in by_dim.get(&n).into_iter().flatten() {
                ech.insert(v);
            }
            for (g, gen) in self.generators().iter().enumerate() {
                if gen.degree != 0 || gen.dim > n {
                    continue;
                }
                let lower: Vec<SparseVec> = comps[(n - gen.dim) as usize].rows().cloned().collect();
                for b in lower {
                    ech.insert(&self.bracket_with_generator(n - gen.dim, 0, &b, g));
                }
            }
            comps.push(ech);
        }
        Ok(LieIdeal { components: comps })
    }
}

/// Per-dimension echelon bases of a Lie ideal inside `L₀`.
#[derive(Debug, Clone)]
pub struct LieIdeal {
    components: Vec<Echelon>,
}

impl LieIdeal {
    pub fn component(&self, n: u32) -> &Echelon {
        &self.components[n as usize]
    }

    pub fn dims(&self) -> HilbertSeries {
        let n = self.components.len() - 1;
        HilbertSeries::new(self.components.iter().map(|e| e.rank() as i64).collect(), n)
    }
}

fn remap(v: &SparseVec, f: impl Fn(usize) -> usize) -> SparseVec {
    v.iter().map(|(&j, c)| (f(j), c.clone())).collect()
}

impl TensorAlgebra {
    /// Words of dimension `n` and degree `k`, length-lex ordered.
    pub fn word_basis_bigraded(&self, n: u32, k: u32) -> Vec<Word> {
        self.word_basis(n, crate::tensor::DegreeFilter::Exactly(k as u8))
    }
}

/// `UL(z)` of a presentation without differentials, computed from the Lie
/// dimensions and the PBW product. Stops early once the Lie algebra is
/// visibly nilpotent: if `L_n` vanishes on a window as wide as the largest
/// generator dimension, it vanishes from there on.
pub fn enveloping_series(p: &Presentation, field: Field, max_words: u128) -> Result<HilbertSeries, PresentError> {
    let n = p.cutoff as usize;
    let options = BuildOptions { max_words, max_degree: Some(0) };
    let mut q = p.clone();
    q.differentials.clear();
    let mut alg = PresentedAlgebra::empty(&q, field, options)?;
    let window = q.generators.iter().map(|g| g.dim).max().unwrap_or(1) as usize;
    let mut lie = HilbertSeries::zero(n);
    let mut zero_run = 0usize;
    for d in 1..=n {
        alg.extend_to(d as u32)?;
        let l = alg.lie_dim(d as u32, 0);
        lie.set(d, l as i64);
        zero_run = if l == 0 { zero_run + 1 } else { 0 };
        if zero_run >= window {
            break;
        }
    }
    Ok(HilbertSeries::pbw_series(&lie)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::rational;

    fn free(gens: &[(&str, u32)], cutoff: u32) -> Presentation {
        let mut p = Presentation::new(RingSpec::Rationals, cutoff);
        for &(n, d) in gens {
            p = p.with_generator(n, d, 0);
        }
        p
    }

    fn build(p: &Presentation) -> PresentedAlgebra {
        PresentedAlgebra::new(p, Field::Rationals, BuildOptions::default()).unwrap()
    }

    #[test]
    fn ideal_of_odd_commutator() {
        let p = free(&[("x", 1), ("y", 1)], 4).with_relation(LieExpr::bracket_of(&["x", "y"]));
        let a = build(&p);
        let ideal = a.ideal_basis(2);
        assert_eq!(ideal.len(), 1);
        assert_eq!(a.tensor().display(&ideal[0]), "x*y + y*x");
    }

    #[test]
    fn no_relations_means_word_basis() {
        let p = free(&[("x", 2), ("y", 3)], 8);
        let a = build(&p);
        for n in 0..=8 {
            assert!(a.ideal_basis(n).is_empty());
            assert_eq!(a.quotient_basis(n), a.tensor().word_basis(n, crate::tensor::DegreeFilter::Any));
        }
    }

    #[test]
    fn length_three_relations_fill_dim_six() {
        let p = free(&[("x", 2), ("y", 2)], 8)
            .with_relation(LieExpr::bracket_of(&["x", "y", "x"]))
            .with_relation(LieExpr::bracket_of(&["x", "y", "y"]));
        let a = build(&p);
        // the two relations are independent at dim 6 and their span is Lie
        assert_eq!(a.ideal_basis(6).len(), 2);
        assert_eq!(a.lie_dim(6, 0), 0);
        // abelianization check: quotient dims follow (1-z^2)^-2 (1-z^4)^-1
        let expect = HilbertSeries::pbw_series(&HilbertSeries::new(vec![0, 0, 2, 0, 1], 8)).unwrap();
        assert_eq!(a.quotient_series(0), expect);
    }

    #[test]
    fn abelian_quotient_dims() {
        let p = free(&[("x", 2), ("y", 2)], 4).with_relation(LieExpr::bracket_of(&["x", "y"]));
        let a = build(&p);
        assert_eq!(a.quotient_dim(4, 0), 3);
        assert_eq!(a.quotient_basis(4).len(), 3);
    }

    #[test]
    fn free_lie_dims_two_odd_generators() {
        let p = free(&[("x", 1), ("y", 1)], 5);
        let a = build(&p);
        assert_eq!([a.lie_dim(1, 0), a.lie_dim(2, 0), a.lie_dim(3, 0)], [2, 3, 2]);
    }

    #[test]
    fn fat_wedge_lie_part_is_abelian() {
        let p = free(&[("x", 2), ("y", 2), ("z", 2)], 6)
            .with_relation(LieExpr::bracket_of(&["y", "z"]))
            .with_relation(LieExpr::bracket_of(&["z", "x"]))
            .with_relation(LieExpr::bracket_of(&["x", "y"]));
        let a = build(&p);
        assert_eq!(a.lie_dim(2, 0), 3);
        assert_eq!(a.lie_dim(4, 0), 0);
        assert_eq!(a.lie_dim(6, 0), 0);
    }

    #[test]
    fn degree_one_component() {
        let p = free(&[("x", 2), ("y", 2)], 10)
            .with_generator("a", 7, 1)
            .with_generator("b", 7, 1)
            .with_differential("a", LieExpr::bracket_of(&["x", "y", "x"]));
        let a = build(&p);
        assert_eq!(a.lie_dim(7, 1), 2);
        assert_eq!(a.lie_dim(9, 1), 4);
    }

    #[test]
    fn lie_ideal_examples() {
        let p = free(&[("x", 2), ("y", 2)], 8);
        let a = build(&p);
        let t = a.tensor();
        let seeds: Vec<TensorElement> =
            [["x", "y", "x"], ["x", "y", "y"]].iter().map(|s| t.eval_expr(&LieExpr::bracket_of(s)).unwrap()).collect();
        let j = a.lie_ideal_basis(&seeds).unwrap();
        assert_eq!(j.dims().coeff(6), 2);
        assert_eq!(j.dims().coeff(8), 3);
        assert!(a.lie_ideal_basis(&[]).unwrap().dims().is_zero());

        let p = free(&[("x", 3)], 12);
        let a = build(&p);
        let xx = a.tensor().eval_expr(&LieExpr::bracket_of(&["x", "x"])).unwrap();
        let j = a.lie_ideal_basis(&[xx]).unwrap();
        assert_eq!(j.dims().coeff(6), 1);
        assert_eq!(j.dims().coeff(9), 0);

        // x*x is Lie for odd x (it is half of [x,x]) but not for even x
        let a = build(&free(&[("x", 2)], 6));
        let x2 = a.tensor().eval_expr(&LieExpr::gen("x")).unwrap();
        let sq = x2.mul(&x2).scale(&Field::Rationals.from_rational(&rational(3, 1)).unwrap());
        assert!(matches!(a.lie_ideal_basis(&[sq]), Err(PresentError::NotLieElement(_))));
    }

    #[test]
    fn validation_errors() {
        let p = free(&[("x", 2), ("y", 2)], 8)
            .with_generator("a", 6, 1)
            .with_differential("a", LieExpr::bracket_of(&["x", "y"]));
        assert!(matches!(p.validate(), Err(PresentError::DimensionMismatch { expected: 5, found: 4, .. })));
        let p = free(&[("x", 2)], 8).with_generator("a", 3, 1).with_relation(LieExpr::bracket_of(&["x", "a"]));
        assert!(matches!(p.validate(), Err(PresentError::DegreeViolation { .. })));
        let p = free(&[("x", 2)], 8).with_relation(LieExpr::bracket_of(&["x", "q"]));
        assert!(matches!(p.validate(), Err(PresentError::UnknownIdentifier(_))));
    }

    #[test]
    fn blow_up_guard() {
        let p = free(&[("x", 1), ("y", 1)], 20);
        let err = PresentedAlgebra::new(&p, Field::Rationals, BuildOptions { max_words: 1000, max_degree: Some(2) });
        assert!(matches!(err, Err(PresentError::BlowUp { dim: 10, .. })));
    }

    #[test]
    fn nilpotent_factor_series_stops_early() {
        let p = free(&[("x", 2), ("y", 2)], 40)
            .with_relation(LieExpr::bracket_of(&["x", "y", "x"]))
            .with_relation(LieExpr::bracket_of(&["x", "y", "y"]));
        // full enumeration at dim 40 would need 2^20 words
        let s = enveloping_series(&p, Field::Rationals, 1000).unwrap();
        let expect = HilbertSeries::pbw_series(&HilbertSeries::new(vec![0, 0, 2, 0, 1], 40)).unwrap();
        assert_eq!(s, expect);
    }
}
