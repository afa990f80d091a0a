//! The algebraic Ganea construction: kill a generating set `S` of a Lie
//! ideal `J ⊂ L₀` with degree-1 generators, read off
//! `L′ = (HL)₀ ⋉ 𝕃(HL)₁` from the homology, and repeat with `L′` and the
//! kernel of `L′ → L₀/J`.

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::analyze::{
    analyze, analyze_field, AnalysisOptions, AnalysisReport, AnalyzeError, FieldAnalysis, Reason, Status, Verdict,
};
use crate::coeffs::{CoeffError, Field, HilbertSeries};
use crate::dg::DifferentialTable;
use crate::linalg::SparseVec;
use crate::present::{BuildOptions, PresentError, Presentation, PresentedAlgebra};
use crate::schreier::{certify_free_subalgebra, SubalgebraSpec};
use crate::tensor::{GradedGenerator, LieExpr};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GaneaError {
    #[error("the base must have no degree-1 generators and no differential")]
    NotABase,
    #[error("[S] is not free: {0}")]
    FreenessRefuted(String),
    #[error("d {0} does not lie in the ideal J")]
    MembershipFailure(String),
    #[error(transparent)]
    Analyze(#[from] AnalyzeError),
    #[error(transparent)]
    Present(#[from] PresentError),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
}

/// Lowest dimension where two Lie algebras differ; `Infinite` when they
/// agree through the cutoff.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum AgreementDim {
    Finite(u32),
    Infinite,
}

impl Serialize for AgreementDim {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            AgreementDim::Finite(n) => s.serialize_u32(*n),
            AgreementDim::Infinite => s.serialize_str("inf"),
        }
    }
}

impl std::fmt::Display for AgreementDim {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AgreementDim::Finite(n) => write!(f, "{n}"),
            AgreementDim::Infinite => write!(f, "∞"),
        }
    }
}

/// One step of the construction.
#[derive(Debug, Clone)]
pub struct GaneaStep {
    /// `L₀` with the killing generators added.
    pub extension: Presentation,
    pub analysis: FieldAnalysis,
    /// `L′`, every generator in degree 0.
    pub next: Presentation,
    /// Generators of `L′` spanning the kernel of `L′ → L₀/J`.
    pub kernel_generators: Vec<String>,
    /// `U(L₀/J)(z)`.
    pub target: HilbertSeries,
    /// `UL′(z)`, computed from the presentation of `L′`.
    pub next_series: HilbertSeries,
    /// `T((HL)₁)(z)·U(L₀/J)(z)`.
    pub split_series: HilbertSeries,
    pub agreement_dim: AgreementDim,
}

impl GaneaStep {
    pub fn split_ses_holds(&self) -> bool {
        self.next_series == self.split_series
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GaneaState {
    pub step: u32,
    pub presentation: String,
    pub target: HilbertSeries,
    pub series: HilbertSeries,
    pub hel1: HilbertSeries,
    pub agreement_dim: AgreementDim,
    pub free: Verdict,
    pub semi_inert: bool,
    pub split_ses: bool,
    pub notes: Vec<String>,
}

fn fresh<'a>(prefix: &str, taken: &'a [GradedGenerator], start: usize) -> impl Iterator<Item = String> + 'a {
    let prefix = prefix.to_string();
    (start..).map(move |i| format!("{prefix}{i}")).filter(move |n| taken.iter().all(|g| &g.name != n))
}

/// Adds one degree-1 generator `v` with `d v = s` for each `s ∈ S`.
pub fn killing_extension(l0: &Presentation, s: &[LieExpr]) -> Result<Presentation, GaneaError> {
    if l0.degree_one().next().is_some() || !l0.differentials.is_empty() {
        return Err(GaneaError::NotABase);
    }
    l0.validate()?;
    let table = crate::tensor::TensorAlgebra::new(Field::Rationals, u32::MAX, l0.generators.clone());
    let mut ext = l0.clone();
    let names: Vec<String> = fresh("v", &l0.generators, 1).take(s.len()).collect();
    for (name, e) in names.iter().zip(s) {
        for id in e.identifiers() {
            if table.generator_index(id).is_none() {
                return Err(PresentError::UnknownIdentifier(id.to_string()).into());
            }
        }
        let (dim, _, _) = table.expr_grading(e).map_err(PresentError::from)?;
        ext.generators.push(GradedGenerator::new(name.clone(), dim + 1, 1));
        ext.differentials.push((name.clone(), e.clone()));
    }
    Ok(ext)
}

fn scaled_gen(c: &crate::coeffs::Scalar, name: &str) -> LieExpr {
    let q = c.to_rational();
    if q == num_rational::BigRational::from_integer(1.into()) {
        LieExpr::gen(name)
    } else {
        LieExpr::scaled(q, LieExpr::gen(name))
    }
}

/// One Ganea step over `field`.
pub fn ganea_step(
    l0: &Presentation,
    s: &[LieExpr],
    field: Field,
    opts: &AnalysisOptions,
) -> Result<GaneaStep, GaneaError> {
    let ext = killing_extension(l0, s)?;
    let analysis = analyze_field(&ext, field, opts)?;
    if let Status::RefutedAtDim { witness, .. } = &analysis.free.status {
        return Err(GaneaError::FreenessRefuted(witness.clone()));
    }
    let cutoff = l0.cutoff;
    let alg = PresentedAlgebra::new(&ext, field, BuildOptions { max_words: opts.max_words, max_degree: Some(2) })?;
    let table = DifferentialTable::extend_derivation(&alg, &ext).map_err(AnalyzeError::from)?;
    let h = table.bigraded_homology();

    let mut next = l0.clone();
    next.relations.extend(s.iter().cloned());
    let mut kernel_generators = Vec::new();
    let semi = analysis.semi_inert.holds();
    let mut names = fresh("h", &l0.generators, 1);
    if semi {
        for w in &analysis.k_witnesses {
            let name = names.next().expect("infinite");
            next.generators.push(GradedGenerator::new(name.clone(), w.dim, 0));
            kernel_generators.push(name);
        }
    } else {
        // One generator per class, then the action of each degree-0 generator.
        let mut class_names: Vec<Vec<String>> = Vec::new();
        for c in &h.deg1 {
            let here: Vec<String> = c.representatives.iter().map(|_| names.next().expect("infinite")).collect();
            for n in &here {
                next.generators.push(GradedGenerator::new(n.clone(), c.dim, 0));
            }
            kernel_generators.extend(here.iter().cloned());
            class_names.push(here);
        }
        for c in &h.deg1 {
            for (i, z) in c.representatives.iter().enumerate() {
                for (g, gen) in alg.generators().iter().enumerate() {
                    let m = c.dim + gen.dim;
                    if gen.degree != 0 || m > cutoff {
                        continue;
                    }
                    let w = alg.bracket_with_generator(c.dim, 1, z, g);
                    let coords: SparseVec = h.component(m, 1).class_of(&w).expect("bracket of cycles is a cycle");
                    let mut parts = vec![LieExpr::bracket(vec![
                        LieExpr::gen(&class_names[c.dim as usize][i]),
                        LieExpr::gen(&gen.name),
                    ])];
                    for (&j, coef) in &coords {
                        let neg = -coef;
                        parts.push(scaled_gen(&neg, &class_names[m as usize][j]));
                    }
                    next.relations.push(if parts.len() == 1 { parts.pop().unwrap() } else { LieExpr::Sum(parts) });
                }
            }
        }
    }

    let target = HilbertSeries::pbw_series(&analysis.hel0)?;
    let next_alg =
        PresentedAlgebra::new(&next, field, BuildOptions { max_words: opts.max_words, max_degree: Some(0) })?;
    let next_series = next_alg.quotient_series(0);
    let split_series = HilbertSeries::tensor_algebra(&h.series(1)).mul(&target);
    let next_lie = next_alg.lie_series(0);
    let agreement_dim = (0..=cutoff as usize)
        .find(|&d| next_lie.coeff(d) != analysis.hel0.coeff(d))
        .map(|d| AgreementDim::Finite(d as u32))
        .unwrap_or(AgreementDim::Infinite);
    Ok(GaneaStep {
        extension: ext,
        analysis,
        next,
        kernel_generators,
        target,
        next_series,
        split_series,
        agreement_dim,
    })
}

/// Certifies that the kernel generators of `L′` span a free ideal: they sit
/// in filtration 1 once raised to degree 1, so the ideal meets `F₀` trivially.
fn certify_kernel(step: &GaneaStep, field: Field, max_words: u128) -> Result<Verdict, GaneaError> {
    if step.kernel_generators.is_empty() {
        return Ok(Verdict::new(Status::certified()));
    }
    let mut ambient = step.next.clone();
    for g in ambient.generators.iter_mut() {
        if step.kernel_generators.contains(&g.name) {
            g.degree = 1;
        }
    }
    let spec = SubalgebraSpec { ambient, generators: step.kernel_generators.iter().map(|n| LieExpr::gen(n)).collect() };
    let mut v = certify_free_subalgebra(&spec, field, max_words)?;
    if v.status.is_certified() {
        v.status = Status::CertifiedUpToCutoff { reason: Some(Reason::SchreierSemidirect) };
    }
    Ok(v)
}

/// Runs `steps` Ganea steps starting from `(L₀, S)`.
pub fn ganea_iterate(
    l0: &Presentation,
    s: &[LieExpr],
    steps: u32,
    field: Field,
    opts: &AnalysisOptions,
) -> Result<Vec<GaneaState>, GaneaError> {
    let mut states = Vec::new();
    let mut base = l0.clone();
    let mut gens = s.to_vec();
    let mut target: Option<HilbertSeries> = None;
    // Step 1 uses the analysis verdict; later kernels carry a certificate.
    let mut kernel_free: Option<Verdict> = None;
    for n in 1..=steps {
        let step = ganea_step(&base, &gens, field, opts)?;
        let mut notes = Vec::new();
        let free = kernel_free.take().unwrap_or_else(|| step.analysis.free.clone());
        match &target {
            None => target = Some(step.target.clone()),
            Some(t) if *t != step.target => notes.push("(HL)₀ drifted from L₀/J".to_string()),
            _ => {}
        }
        if !step.split_ses_holds() {
            notes.push(format!("UL′(z) = {} but T((HL)₁)·U(L₀/J) = {}", step.next_series, step.split_series));
        }
        if let Some(prev) = states.last().map(|s: &GaneaState| s.agreement_dim) {
            if step.agreement_dim < prev {
                notes.push("agreement dimension decreased".to_string());
            }
        }
        let semi_inert = step.analysis.semi_inert.holds();
        states.push(GaneaState {
            step: n,
            presentation: step.next.to_string(),
            target: step.target.clone(),
            series: step.next_series.clone(),
            hel1: step.analysis.hel1.clone(),
            agreement_dim: step.agreement_dim,
            free,
            semi_inert,
            split_ses: step.split_ses_holds(),
            notes,
        });
        kernel_free = Some(certify_kernel(&step, field, opts.max_words)?);
        gens = step.kernel_generators.iter().map(|g| LieExpr::gen(g)).collect();
        base = step.next;
    }
    Ok(states)
}

/// Analysis of `L₀` extended by generators whose differentials lie in the
/// ideal `J = [S]`.
pub fn ganea_general(
    l0: &Presentation,
    s: &[LieExpr],
    cells: &[(String, u32, LieExpr)],
    opts: &AnalysisOptions,
) -> Result<AnalysisReport, GaneaError> {
    if l0.degree_one().next().is_some() || !l0.differentials.is_empty() {
        return Err(GaneaError::NotABase);
    }
    let field = l0.ring.fields(&[])[0];
    let alg = PresentedAlgebra::new(l0, field, BuildOptions { max_words: opts.max_words, max_degree: Some(0) })?;
    let t = alg.tensor();
    let seeds = s.iter().map(|e| t.eval_expr(e)).collect::<Result<Vec<_>, _>>().map_err(PresentError::from)?;
    let ideal = alg.lie_ideal_basis(&seeds)?;
    let mut ext = l0.clone();
    for (name, dim, image) in cells {
        let e = t.eval_expr(image).map_err(PresentError::from)?;
        if let Some((n, k, v)) = alg.to_vec(&e)? {
            let v = alg.normal_form(n, k, &v);
            if k != 0 || n > l0.cutoff || !ideal.component(n).contains(&v) {
                return Err(GaneaError::MembershipFailure(name.clone()));
            }
        }
        ext.generators.push(GradedGenerator::new(name.clone(), *dim, 1));
        ext.differentials.push((name.clone(), image.clone()));
    }
    Ok(analyze(&ext, opts)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::RingSpec;

    fn fat_wedge(cutoff: u32) -> (Presentation, Vec<LieExpr>) {
        let l0 = Presentation::new(RingSpec::Rationals, cutoff)
            .with_generator("x", 2, 0)
            .with_generator("y", 2, 0)
            .with_generator("z", 2, 0);
        let s =
            vec![LieExpr::bracket_of(&["y", "z"]), LieExpr::bracket_of(&["z", "x"]), LieExpr::bracket_of(&["x", "y"])];
        (l0, s)
    }

    #[test]
    fn empty_s_is_stationary() {
        let (l0, _) = fat_wedge(8);
        let states = ganea_iterate(&l0, &[], 3, Field::Rationals, &AnalysisOptions::default()).unwrap();
        assert_eq!(states.len(), 3);
        for st in &states {
            assert_eq!(st.agreement_dim, AgreementDim::Infinite);
            assert!(st.hel1.is_zero());
            assert_eq!(st.series, states[0].series);
        }
    }

    #[test]
    fn fat_wedge_two_steps() {
        let (l0, s) = fat_wedge(12);
        let states = ganea_iterate(&l0, &s, 2, Field::Rationals, &AnalysisOptions::default()).unwrap();
        assert_eq!(states[0].agreement_dim, AgreementDim::Finite(7));
        assert_eq!(states[1].agreement_dim, AgreementDim::Infinite);
        assert!(states.iter().all(|s| s.split_ses));
        assert!(states[0].semi_inert);
    }

    #[test]
    fn general_step_with_one_cell_is_inert() {
        let l0 = Presentation::new(RingSpec::Rationals, 12).with_generator("x", 2, 0).with_generator("y", 2, 0);
        let s = vec![LieExpr::bracket_of(&["x", "y", "y"])];
        let cells = vec![("a".to_string(), 7, LieExpr::bracket_of(&["x", "y", "y"]))];
        let r = ganea_general(&l0, &s, &cells, &AnalysisOptions::default()).unwrap();
        assert!(r.verdicts.inert.status.is_certified());
        let bad = vec![("a".to_string(), 7, LieExpr::bracket_of(&["x", "y", "x"]))];
        assert!(matches!(
            ganea_general(&l0, &s, &bad, &AnalysisOptions::default()),
            Err(GaneaError::MembershipFailure(_))
        ));
    }
}
