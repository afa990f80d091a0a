//! Differentials on presented algebras and their truncated homology.
//!
//! The differential is the unique derivation extending its values on
//! generators: `d(g₁⋯gₘ) = Σ (−1)^{|g₁|+⋯+|gᵢ₋₁|} g₁⋯d(gᵢ)⋯gₘ`, with the
//! Koszul sign taken from dimensions only.

use std::cell::RefCell;
use std::collections::HashMap;

use thiserror::Error;

use crate::coeffs::{HilbertSeries, Scalar};
use crate::linalg::{axpy, unit, Echelon, Insertion, SparseVec};
use crate::present::{PresentError, Presentation, PresentedAlgebra};
use crate::tensor::{TensorElement, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DgError {
    #[error("d² ≠ 0 on generator `{generator}`: d(d {generator}) = {value}")]
    DSquaredNonzero { generator: String, value: String },
    #[error("d does not preserve the relation ideal: d({relation}) = {value}")]
    IdealNotPreserved { relation: String, value: String },
    #[error("generator `{0}` of degree 0 has nonzero differential; analysis needs d = 0 on degree 0")]
    NonzeroBaseDifferential(String),
    #[error(transparent)]
    Present(#[from] PresentError),
}

/// Outcome of [`DifferentialTable::check_d_squared`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DSquared {
    Ok,
    /// First generator (declaration order) with `d(d g) ≠ 0` modulo relations.
    Nonzero {
        generator: String,
        dim: u32,
        value: String,
    },
    /// A relation whose differential leaves the ideal.
    RelationNotClosed {
        relation: String,
        value: String,
    },
}

pub struct DifferentialTable<'a> {
    alg: &'a PresentedAlgebra,
    images: Vec<TensorElement>,
    /// Images in block coordinates when `d` has bidegree (−1,−1) on them.
    vecs: Vec<Option<(u32, u32, SparseVec)>>,
    bigraded: bool,
    cache: RefCell<HashMap<(u32, u32, usize), SparseVec>>,
}

impl<'a> DifferentialTable<'a> {
    /// Evaluates every `d` line of `p` inside `alg`; generators without a
    /// line map to zero.
    pub fn extend_derivation(alg: &'a PresentedAlgebra, p: &Presentation) -> Result<Self, DgError> {
        let t = alg.tensor();
        let mut images = vec![TensorElement::zero(); t.generators().len()];
        for (name, image) in &p.differentials {
            let g = t.generator_index(name).ok_or_else(|| PresentError::UnknownIdentifier(name.clone()))?;
            images[g] = t.eval_expr(image).map_err(PresentError::from)?;
        }
        let mut bigraded = true;
        let mut vecs = Vec::with_capacity(images.len());
        for (g, img) in images.iter().enumerate() {
            let gen = &t.generators()[g];
            if img.is_zero() {
                vecs.push(None);
                continue;
            }
            if gen.degree == 0 {
                bigraded = false;
                vecs.push(None);
                continue;
            }
            vecs.push(alg.to_vec(img)?.map(|(n, k, v)| (n, k, alg.normal_form(n, k, &v))));
        }
        Ok(DifferentialTable { alg, images, vecs, bigraded, cache: RefCell::new(HashMap::new()) })
    }

    pub fn algebra(&self) -> &PresentedAlgebra {
        self.alg
    }

    pub fn image(&self, g: usize) -> &TensorElement {
        &self.images[g]
    }

    /// True when every differential has bidegree (−1,−1).
    pub fn is_bigraded(&self) -> bool {
        self.bigraded
    }

    /// `d` of an arbitrary element by the Leibniz rule, not reduced.
    pub fn apply_element(&self, e: &TensorElement) -> TensorElement {
        let t = self.alg.tensor();
        let field = t.field();
        let mut out = TensorElement::zero();
        for (w, c) in e.terms() {
            let mut dim_before = 0u32;
            for (i, g) in w.letters().enumerate() {
                let img = &self.images[g];
                if !img.is_zero() {
                    let prefix = Word(w.0[..i].to_vec());
                    let suffix = Word(w.0[i + 1..].to_vec());
                    let sign = Scalar::sign(field, dim_before % 2 == 1);
                    let term = img.map_words(|m| prefix.concat(m).concat(&suffix));
                    out.axpy(&(&sign * c), &term);
                }
                dim_before += t.generators()[g].dim;
            }
        }
        out
    }

    /// Checks `d² = 0` on generators and `d(relations) ⊆ ideal`.
    pub fn check_d_squared(&self, p: &Presentation) -> DSquared {
        let t = self.alg.tensor();
        for (g, gen) in t.generators().iter().enumerate() {
            let dd = self.alg.reduce_element(&self.apply_element(&self.images[g]));
            if !dd.is_zero() {
                return DSquared::Nonzero { generator: gen.name.clone(), dim: gen.dim, value: t.display(&dd) };
            }
        }
        for r in &p.relations {
            let Ok(e) = t.eval_expr(r) else { continue };
            let dr = self.alg.reduce_element(&self.apply_element(&e));
            if !dr.is_zero() {
                return DSquared::RelationNotClosed { relation: r.to_string(), value: t.display(&dr) };
            }
        }
        DSquared::Ok
    }

    /// Checks `d² = 0` and that degree-0 generators have zero differential.
    pub fn require_extension(&self, p: &Presentation) -> Result<(), DgError> {
        match self.check_d_squared(p) {
            DSquared::Ok => {}
            DSquared::Nonzero { generator, value, .. } => return Err(DgError::DSquaredNonzero { generator, value }),
            DSquared::RelationNotClosed { relation, value } => {
                return Err(DgError::IdealNotPreserved { relation, value })
            }
        }
        for (g, gen) in self.alg.generators().iter().enumerate() {
            if gen.degree == 0 && !self.images[g].is_zero() {
                return Err(DgError::NonzeroBaseDifferential(gen.name.clone()));
            }
        }
        Ok(())
    }

    /// `d` of basis word `idx` of block `(n, k)`, in normal form in block
    /// `(n − 1, k − 1)`.
    fn d_word(&self, n: u32, k: u32, idx: usize) -> SparseVec {
        if let Some(v) = self.cache.borrow().get(&(n, k, idx)) {
            return v.clone();
        }
        let alg = self.alg;
        let field = alg.field();
        let mut out = SparseVec::new();
        if n > 0 && k > 0 {
            let src = alg.block(n, k).expect("source block");
            if let Some(dst) = alg.block(n - 1, k - 1) {
                let w = src.word(idx);
                let mut dim_before = 0u32;
                for (i, g) in w.letters().enumerate() {
                    if let Some((dn, dk, img)) = &self.vecs[g] {
                        let mid = alg.block(*dn, *dk).expect("image block");
                        let sign = Scalar::sign(field, dim_before % 2 == 1);
                        let mut term = SparseVec::new();
                        for (&j, c) in img {
                            let mut letters = w.0[..i].to_vec();
                            letters.extend_from_slice(&mid.word(j).0);
                            letters.extend_from_slice(&w.0[i + 1..]);
                            let at = dst.index_of(&Word(letters)).expect("word in target block");
                            term.insert(at, c.clone());
                        }
                        axpy(&mut out, &sign, &term);
                    }
                    dim_before += alg.generators()[g].dim;
                }
                out = dst.normal_form(&out);
            }
        }
        self.cache.borrow_mut().insert((n, k, idx), out.clone());
        out
    }

    /// `d` of a normal-form vector of block `(n, k)`.
    pub fn apply(&self, n: u32, k: u32, v: &SparseVec) -> SparseVec {
        assert!(self.bigraded, "block differential needs bidegree (-1,-1)");
        let mut out = SparseVec::new();
        for (&i, c) in v {
            axpy(&mut out, c, &self.d_word(n, k, i));
        }
        out
    }

    /// Lie homology `(HẼL)_k` in every dimension through the cutoff; `k ≤ 1`.
    pub fn lie_homology(&self, k: u32) -> Vec<HomologyComponent> {
        (0..=self.alg.cutoff()).map(|n| self.lie_homology_at(n, k)).collect()
    }

    pub fn lie_homology_at(&self, n: u32, k: u32) -> HomologyComponent {
        let alg = self.alg;
        let field = alg.field();
        let chains: Vec<SparseVec> = alg.lie_component(n, k).map(|c| c.basis()).unwrap_or_default();
        let mut cycles = Vec::new();
        if k == 0 || n == 0 {
            cycles = chains.clone();
        } else {
            let mut images = Echelon::new(field);
            for (i, b) in chains.iter().enumerate() {
                if let Insertion::Dependent(tag) = images.insert_tagged(&self.apply(n, k, b), unit(field, i)) {
                    let mut z = SparseVec::new();
                    for (&j, c) in &tag {
                        axpy(&mut z, c, &chains[j]);
                    }
                    cycles.push(z);
                }
            }
        }
        let mut classes = Echelon::new(field);
        let mut boundaries = 0;
        if let Some(above) = alg.lie_component(n + 1, k + 1) {
            for b in above.basis() {
                if classes.insert(&self.apply(n + 1, k + 1, &b)) {
                    boundaries += 1;
                }
            }
        }
        let mut representatives = Vec::new();
        for z in &cycles {
            if let Insertion::Added(_) = classes.insert_tagged(z, unit(field, representatives.len())) {
                representatives.push(z.clone());
            }
        }
        HomologyComponent {
            dim: n,
            degree: k,
            chains: chains.len(),
            cycles: cycles.len(),
            boundaries,
            representatives,
            classes,
        }
    }

    /// Bigraded homology of `ẼL` in degrees 0 and 1.
    pub fn bigraded_homology(&self) -> BigradedHomology {
        BigradedHomology { cutoff: self.alg.cutoff(), deg0: self.lie_homology(0), deg1: self.lie_homology(1) }
    }

    /// Homology of the whole algebra: per dimension, `(degree, chains, homology)`.
    /// Requires an algebra built with every degree.
    pub fn full_homology(&self) -> FullHomology {
        let alg = self.alg;
        let rank = |n: u32, k: u32| -> usize {
            let Some(block) = alg.block(n, k) else { return 0 };
            if k == 0 {
                return 0;
            }
            let mut ech = Echelon::new(alg.field());
            for &i in block.standard() {
                ech.insert(&self.d_word(n, k, i));
            }
            ech.rank()
        };
        let mut dims = Vec::new();
        for n in 0..=alg.cutoff() {
            let mut row = Vec::new();
            for k in 0..=alg.max_degree_at(n) {
                let chains = alg.quotient_dim(n, k);
                let h = chains - rank(n, k) - rank(n + 1, k + 1);
                row.push((k, chains, h));
            }
            dims.push(row);
        }
        FullHomology { dims }
    }
}

/// Homology of one (dimension, degree) slot of the Lie complex.
#[derive(Debug, Clone)]
pub struct HomologyComponent {
    pub dim: u32,
    pub degree: u32,
    pub chains: usize,
    pub cycles: usize,
    pub boundaries: usize,
    /// Cycles whose classes form a basis, in block coordinates.
    pub representatives: Vec<SparseVec>,
    classes: Echelon,
}

impl HomologyComponent {
    pub fn rank(&self) -> usize {
        self.representatives.len()
    }

    /// Coordinates of a cycle's class on the representatives; `None` if
    /// `v` is not in the span of cycles.
    pub fn class_of(&self, v: &SparseVec) -> Option<SparseVec> {
        let (res, tag) = self.classes.reduce_tagged(v);
        res.is_empty().then_some(tag)
    }

    pub fn is_boundary(&self, v: &SparseVec) -> bool {
        self.class_of(v).map(|c| c.is_empty()).unwrap_or(false)
    }
}

#[derive(Debug, Clone)]
pub struct BigradedHomology {
    pub cutoff: u32,
    pub deg0: Vec<HomologyComponent>,
    pub deg1: Vec<HomologyComponent>,
}

impl BigradedHomology {
    pub fn component(&self, n: u32, k: u32) -> &HomologyComponent {
        match k {
            0 => &self.deg0[n as usize],
            1 => &self.deg1[n as usize],
            _ => panic!("degree {k} homology not materialized"),
        }
    }

    pub fn series(&self, k: u32) -> HilbertSeries {
        let comps = if k == 0 { &self.deg0 } else { &self.deg1 };
        HilbertSeries::new(comps.iter().map(|c| c.rank() as i64).collect(), self.cutoff as usize)
    }
}

#[derive(Debug, Clone)]
pub struct FullHomology {
    /// `dims[n]` lists `(degree, chain rank, homology rank)`.
    pub dims: Vec<Vec<(u32, usize, usize)>>,
}

impl FullHomology {
    pub fn series(&self) -> HilbertSeries {
        let n = self.dims.len() - 1;
        HilbertSeries::new(self.dims.iter().map(|r| r.iter().map(|t| t.2 as i64).sum()).collect(), n)
    }

    pub fn euler(&self, n: usize) -> (i64, i64) {
        let sign = |k: u32| if k.is_multiple_of(2) { 1 } else { -1 };
        let chains = self.dims[n].iter().map(|&(k, c, _)| sign(k) * c as i64).sum();
        let homology = self.dims[n].iter().map(|&(k, _, h)| sign(k) * h as i64).sum();
        (chains, homology)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::{Field, RingSpec};
    use crate::present::BuildOptions;
    use crate::tensor::LieExpr;

    fn semi_inert(cutoff: u32) -> Presentation {
        Presentation::new(RingSpec::Rationals, cutoff)
            .with_generator("x", 2, 0)
            .with_generator("y", 2, 0)
            .with_generator("a", 7, 1)
            .with_generator("b", 7, 1)
            .with_differential("a", LieExpr::bracket_of(&["x", "y", "x"]))
            .with_differential("b", LieExpr::bracket_of(&["x", "y", "y"]))
    }

    #[test]
    fn leibniz_signs() {
        let p = Presentation::new(RingSpec::Rationals, 16)
            .with_generator("x", 2, 0)
            .with_generator("y", 2, 0)
            .with_generator("a", 5, 1)
            .with_generator("b", 7, 1)
            .with_generator("c", 7, 1)
            .with_differential("a", LieExpr::bracket_of(&["x", "y"]))
            .with_differential("b", LieExpr::bracket_of(&["x", "y", "x"]))
            .with_differential("c", LieExpr::bracket_of(&["x", "y", "y"]));
        let alg = PresentedAlgebra::new(&p, Field::Rationals, BuildOptions::default()).unwrap();
        let d = DifferentialTable::extend_derivation(&alg, &p).unwrap();
        let t = alg.tensor();
        let g = |s: &str| t.eval_expr(&LieExpr::gen(s)).unwrap();
        let br = |s: &[&str]| t.eval_expr(&LieExpr::bracket_of(s)).unwrap();
        assert_eq!(t.display(&d.apply_element(&g("x").mul(&g("a")))), "x*x*y - x*y*x");
        // |b| = 7 is odd, so the second term picks up a sign
        let expect = br(&["x", "y", "x"]).mul(&g("c")).sub(&g("b").mul(&br(&["x", "y", "y"])));
        assert_eq!(d.apply_element(&g("b").mul(&g("c"))), expect);
        assert!(d.apply_element(&g("x").mul(&g("y"))).is_zero());
    }

    #[test]
    fn semi_inert_homology() {
        let p = semi_inert(13);
        let alg = PresentedAlgebra::new(&p, Field::Rationals, BuildOptions::default()).unwrap();
        let d = DifferentialTable::extend_derivation(&alg, &p).unwrap();
        assert_eq!(d.check_d_squared(&p), DSquared::Ok);
        let h = d.bigraded_homology();
        let h0: Vec<i64> = h.series(0).coeffs().to_vec();
        assert_eq!(&h0[..7], &[0, 0, 2, 0, 1, 0, 0]);
        let h1 = h.series(1);
        assert_eq!(h1.lowest_nonzero(), Some(9));
        assert_eq!(h1.coeff(9), 1);
        for comp in h.deg1.iter() {
            assert_eq!(comp.chains, comp.cycles + (comp.chains - comp.cycles));
            for z in &comp.representatives {
                assert!(d.apply(comp.dim, 1, z).is_empty());
            }
        }
    }

    #[test]
    fn d_squared_failure_names_generator() {
        let p = Presentation::new(RingSpec::Rationals, 6)
            .with_generator("y", 1, 0)
            .with_generator("x", 2, 0)
            .with_generator("a", 3, 1)
            .with_differential("a", LieExpr::gen("x"))
            .with_differential("x", LieExpr::gen("y"));
        let alg = PresentedAlgebra::new(&p, Field::Rationals, BuildOptions::default()).unwrap();
        let d = DifferentialTable::extend_derivation(&alg, &p).unwrap();
        assert_eq!(d.check_d_squared(&p), DSquared::Nonzero { generator: "a".into(), dim: 3, value: "y".into() });
    }

    #[test]
    fn zero_differential_homology_is_everything() {
        let p = Presentation::new(RingSpec::Rationals, 8).with_generator("x", 2, 0).with_generator("a", 3, 1);
        let alg = PresentedAlgebra::new(&p, Field::Rationals, BuildOptions { max_degree: None, ..Default::default() })
            .unwrap();
        let d = DifferentialTable::extend_derivation(&alg, &p).unwrap();
        let full = d.full_homology();
        for n in 0..=8 {
            let (c, h) = full.euler(n);
            assert_eq!(c, h);
            for &(_, chains, hom) in &full.dims[n] {
                assert_eq!(chains, hom);
            }
        }
    }
}
