//! Reduced generating sets of filtered Lie subalgebras and the free
//! subalgebra certificate `J ∩ F₀ = 0`.
//!
//! The ambient is `L₀ ⨿ 𝕃V₁` filtered by degree: `F₀ = L₀`, and each
//! degree-1 letter raises the filtration by one. Vectors of one dimension
//! are indexed by `(−degree, word)`, so an echelon row's pivot sits in its
//! top filtration part.

use std::collections::BTreeMap;

use crate::analyze::{Status, Verdict};
use crate::coeffs::Field;
use crate::linalg::{Echelon, SparseVec};
use crate::present::{BuildOptions, PresentError, Presentation, PresentedAlgebra, RelationDegrees};
use crate::tensor::{LieExpr, TensorElement};

const SHIFT: u32 = 40;
const MAX_DEGREE: usize = 255;

fn col(k: u32, idx: usize) -> usize {
    ((MAX_DEGREE - k as usize) << SHIFT) | idx
}

fn degree_of(col: usize) -> u32 {
    (MAX_DEGREE - (col >> SHIFT)) as u32
}

fn index_of(col: usize) -> usize {
    col & ((1usize << SHIFT) - 1)
}

#[derive(Debug, Clone)]
pub struct SubalgebraSpec {
    pub ambient: Presentation,
    pub generators: Vec<LieExpr>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedGenerator {
    pub dim: u32,
    /// Top filtration degree.
    pub filtration: u32,
    pub element: TensorElement,
    pub display: String,
}

/// A subalgebra saturated dimension by dimension through the cutoff.
pub struct Subalgebra {
    alg: PresentedAlgebra,
    cutoff: u32,
    /// Echelon basis of `J_n`, combined coordinates.
    spans: Vec<Echelon>,
    /// Echelon basis of `Σ [J_i, J_{n−i}]`.
    decomposables: Vec<Echelon>,
}

impl Subalgebra {
    pub fn generate(spec: &SubalgebraSpec, field: Field, max_words: u128) -> Result<Self, PresentError> {
        spec.ambient.validate_with(RelationDegrees::Homogeneous)?;
        let mut alg = PresentedAlgebra::empty(&spec.ambient, field, BuildOptions { max_words, max_degree: None })?;
        let mut seeds: BTreeMap<u32, Vec<SparseVec>> = BTreeMap::new();
        for g in &spec.generators {
            let e = alg.tensor().eval_expr(g)?;
            if let Some((n, v)) = lie_vector(&mut alg, &e)? {
                seeds.entry(n).or_default().push(v);
            }
        }
        let cutoff = spec.ambient.cutoff;
        let mut spans: Vec<Echelon> = Vec::with_capacity(cutoff as usize + 1);
        let mut decomposables = Vec::with_capacity(cutoff as usize + 1);
        for n in 0..=cutoff {
            let mut dec = Echelon::new(field);
            for i in 1..=n / 2 {
                let j = n - i;
                let left: Vec<SparseVec> = spans[i as usize].rows().cloned().collect();
                let right: Vec<SparseVec> = spans[j as usize].rows().cloned().collect();
                for (s, a) in left.iter().enumerate() {
                    let start = if i == j { s } else { 0 };
                    for b in &right[start..] {
                        let c = bracket(&mut alg, i, a, j, b)?;
                        dec.insert(&c);
                    }
                }
            }
            let mut span = dec.clone();
            for v in seeds.get(&n).into_iter().flatten() {
                span.insert(v);
            }
            spans.push(span);
            decomposables.push(dec);
        }
        Ok(Subalgebra { alg, cutoff, spans, decomposables })
    }

    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    pub fn algebra(&self) -> &PresentedAlgebra {
        &self.alg
    }

    pub fn dim(&self, n: u32) -> usize {
        self.spans[n as usize].rank()
    }

    pub fn span(&self, n: u32) -> &Echelon {
        &self.spans[n as usize]
    }

    pub fn dims(&self) -> crate::coeffs::HilbertSeries {
        crate::coeffs::HilbertSeries::new(self.spans.iter().map(|e| e.rank() as i64).collect(), self.cutoff as usize)
    }

    pub fn element(&self, n: u32, v: &SparseVec) -> TensorElement {
        let mut parts: BTreeMap<u32, SparseVec> = BTreeMap::new();
        for (&c, x) in v {
            parts.entry(degree_of(c)).or_default().insert(index_of(c), x.clone());
        }
        let mut out = TensorElement::zero();
        for (k, part) in parts {
            out = out.add(&self.alg.to_element(n, k, &part));
        }
        out
    }

    /// Generators walked by dimension, then filtration, then echelon order:
    /// a row is kept when it is not in the span of the decomposables and of
    /// the rows kept before it.
    pub fn reduced_generators(&self) -> Vec<ReducedGenerator> {
        let mut out = Vec::new();
        for n in 0..=self.cutoff {
            let mut rows: Vec<&SparseVec> = self.spans[n as usize].rows().collect();
            rows.sort_by_key(|r| {
                let pivot = *r.keys().next().expect("nonzero row");
                (degree_of(pivot), pivot)
            });
            let mut acc = self.decomposables[n as usize].clone();
            for r in rows {
                if acc.insert(r) {
                    let element = self.element(n, r);
                    out.push(ReducedGenerator {
                        dim: n,
                        filtration: degree_of(*r.keys().next().expect("nonzero row")),
                        display: self.alg.tensor().display(&element),
                        element,
                    });
                }
            }
        }
        out
    }

    /// First nonzero element of `J ∩ F₀`, if any.
    pub fn f0_intersection(&self) -> Option<(u32, TensorElement)> {
        for n in 0..=self.cutoff {
            for r in self.spans[n as usize].rows() {
                if degree_of(*r.keys().next().expect("nonzero row")) == 0 {
                    return Some((n, self.element(n, r)));
                }
            }
        }
        None
    }
}

/// Combined coordinates of a dimension-homogeneous Lie element.
fn lie_vector(alg: &mut PresentedAlgebra, e: &TensorElement) -> Result<Option<(u32, SparseVec)>, PresentError> {
    let Some(n) = alg.tensor().homogeneous_dim(e)? else { return Ok(None) };
    let mut parts: BTreeMap<u32, TensorElement> = BTreeMap::new();
    for (w, c) in e.terms() {
        parts.entry(alg.tensor().word_degree(w)).or_default().add_term(w.clone(), c.clone());
    }
    let mut out = SparseVec::new();
    for (k, part) in parts {
        alg.ensure_lie(n, k)?;
        let (_, _, v) = alg.to_vec(&part)?.expect("nonzero part");
        let v = alg.normal_form(n, k, &v);
        if !alg.is_lie(n, k, &v) {
            return Err(PresentError::NotLieElement(alg.tensor().display(e)));
        }
        out.extend(v.into_iter().map(|(i, c)| (col(k, i), c)));
    }
    Ok(Some((n, out)))
}

fn split(v: &SparseVec) -> BTreeMap<u32, SparseVec> {
    let mut parts: BTreeMap<u32, SparseVec> = BTreeMap::new();
    for (&c, x) in v {
        parts.entry(degree_of(c)).or_default().insert(index_of(c), x.clone());
    }
    parts
}

fn bracket(
    alg: &mut PresentedAlgebra,
    i: u32,
    a: &SparseVec,
    j: u32,
    b: &SparseVec,
) -> Result<SparseVec, PresentError> {
    let pa = split(a);
    let pb = split(b);
    let mut acc: BTreeMap<u32, SparseVec> = BTreeMap::new();
    for (&ka, va) in &pa {
        for (&kb, vb) in &pb {
            alg.ensure_block(i + j, ka + kb)?;
            let c = alg.bracket((i, ka, va), (j, kb, vb)).expect("target block exists");
            crate::linalg::axpy(acc.entry(ka + kb).or_default(), &alg.field().one(), &c);
        }
    }
    Ok(acc.into_iter().flat_map(|(k, v)| v.into_iter().map(move |(i, c)| (col(k, i), c))).collect())
}

/// Reduced generators of the subalgebra spanned by `spec` through the cutoff.
pub fn reduce_generators(
    spec: &SubalgebraSpec,
    field: Field,
    max_words: u128,
) -> Result<Vec<ReducedGenerator>, PresentError> {
    Ok(Subalgebra::generate(spec, field, max_words)?.reduced_generators())
}

/// Certified up to the cutoff iff `J ∩ F₀ = 0` in every dimension.
pub fn certify_free_subalgebra(spec: &SubalgebraSpec, field: Field, max_words: u128) -> Result<Verdict, PresentError> {
    let sub = Subalgebra::generate(spec, field, max_words)?;
    Ok(certify(&sub))
}

pub fn certify(sub: &Subalgebra) -> Verdict {
    match sub.f0_intersection() {
        Some((dim, e)) => Verdict::new(Status::Inapplicable {
            dim,
            witness: format!("{} lies in J ∩ F₀", sub.algebra().tensor().display(&e)),
        }),
        None => Verdict::new(Status::certified()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::RingSpec;
    use crate::present::DEFAULT_MAX_WORDS;

    fn spec(ambient: Presentation, gens: Vec<LieExpr>) -> SubalgebraSpec {
        SubalgebraSpec { ambient, generators: gens }
    }

    fn reduce(s: &SubalgebraSpec) -> Vec<ReducedGenerator> {
        reduce_generators(s, Field::Rationals, DEFAULT_MAX_WORDS).unwrap()
    }

    #[test]
    fn redundant_bracket_dropped() {
        let amb = Presentation::new(RingSpec::Rationals, 6).with_generator("u", 1, 0).with_generator("v", 2, 0);
        let s = spec(amb, vec![LieExpr::gen("u"), LieExpr::gen("v"), LieExpr::bracket_of(&["u", "v"])]);
        let r = reduce(&s);
        let shown: Vec<&str> = r.iter().map(|g| g.display.as_str()).collect();
        assert_eq!(shown, vec!["u", "v"]);
    }

    #[test]
    fn reduced_pair_unchanged() {
        let amb = Presentation::new(RingSpec::Rationals, 10).with_generator("x", 2, 0).with_generator("y", 2, 0);
        let s = spec(amb, vec![LieExpr::bracket_of(&["x", "y", "x"]), LieExpr::bracket_of(&["x", "y", "y"])]);
        let r = reduce(&s);
        assert_eq!(r.len(), 2);
        assert!(r.iter().all(|g| g.dim == 6));
    }

    #[test]
    fn mixed_filtration_splits_off_f0_part() {
        let amb = Presentation::new(RingSpec::Rationals, 4).with_generator("c", 3, 0).with_generator("u", 3, 1);
        let s = spec(amb, vec![LieExpr::Sum(vec![LieExpr::gen("u"), LieExpr::gen("c")]), LieExpr::gen("u")]);
        let r = reduce(&s);
        let by: Vec<(u32, &str)> = r.iter().map(|g| (g.filtration, g.display.as_str())).collect();
        assert_eq!(by, vec![(0, "c"), (1, "u")]);
        let v = certify_free_subalgebra(&s, Field::Rationals, DEFAULT_MAX_WORDS).unwrap();
        assert!(matches!(v.status, Status::Inapplicable { dim: 3, .. }));
    }

    #[test]
    fn degree_one_generators_certify() {
        let amb = Presentation::new(RingSpec::Rationals, 12)
            .with_generator("x", 2, 0)
            .with_generator("a", 3, 1)
            .with_generator("b", 3, 1);
        let s = spec(amb, vec![LieExpr::gen("a"), LieExpr::bracket_of(&["a", "x"]), LieExpr::gen("b")]);
        let v = certify_free_subalgebra(&s, Field::Rationals, DEFAULT_MAX_WORDS).unwrap();
        assert!(v.status.is_certified());
    }
}
