//! Free, inert and semi-inert verdicts for dga extensions, with Anick's
//! series formula, `K′(z)` and structure summaries.
//!
//! Everything is decided up to the cutoff. Over a localization the work is
//! repeated over `Q` and each tested prime field.

use serde::Serialize;
use thiserror::Error;

use crate::coeffs::{CoeffError, Field, HilbertSeries, RingSpec};
use crate::dg::{BigradedHomology, DgError, DifferentialTable};
use crate::linalg::{unit, Echelon, SparseVec};
use crate::present::{
    enveloping_series, BuildOptions, PresentError, Presentation, PresentedAlgebra, DEFAULT_MAX_WORDS,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalyzeError {
    #[error(transparent)]
    Present(#[from] PresentError),
    #[error(transparent)]
    Dg(#[from] DgError),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Reason {
    SchreierFreeAmbient,
    SchreierSemidirect,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status")]
pub enum Status {
    CertifiedUpToCutoff {
        #[serde(skip_serializing_if = "Option::is_none")]
        reason: Option<Reason>,
    },
    ConsistentUpToCutoff,
    RefutedAtDim {
        dim: u32,
        witness: String,
    },
    ConditionalOnPrimes {
        primes: Vec<u64>,
        #[serde(skip_serializing_if = "Option::is_none")]
        reason: Option<Reason>,
    },
    Inapplicable {
        dim: u32,
        witness: String,
    },
}

impl Status {
    pub fn certified() -> Self {
        Status::CertifiedUpToCutoff { reason: None }
    }

    /// Not refuted and not inapplicable.
    pub fn holds(&self) -> bool {
        matches!(
            self,
            Status::CertifiedUpToCutoff { .. } | Status::ConsistentUpToCutoff | Status::ConditionalOnPrimes { .. }
        )
    }

    pub fn is_certified(&self) -> bool {
        matches!(self, Status::CertifiedUpToCutoff { .. })
    }

    pub fn refuted_dim(&self) -> Option<u32> {
        match self {
            Status::RefutedAtDim { dim, .. } => Some(*dim),
            _ => None,
        }
    }

    pub fn reason(&self) -> Option<Reason> {
        match self {
            Status::CertifiedUpToCutoff { reason } | Status::ConditionalOnPrimes { reason, .. } => *reason,
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub dim: u32,
    pub element: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    #[serde(flatten)]
    pub status: Status,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub basis_witnesses: Vec<Witness>,
}

impl Verdict {
    pub fn new(status: Status) -> Self {
        Verdict { status, basis_witnesses: Vec::new() }
    }

    pub fn holds(&self) -> bool {
        self.status.holds()
    }
}

/// Report wording: algebraic names or the loop-space dictionary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Vocabulary {
    #[default]
    Algebraic,
    Topological,
}

#[derive(Debug, Clone)]
pub struct AnalysisOptions {
    /// Primes tested over a localization; `None` picks the default three.
    pub primes: Option<Vec<u64>>,
    pub max_words: u128,
    pub vocabulary: Vocabulary,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions { primes: None, max_words: DEFAULT_MAX_WORDS, vocabulary: Vocabulary::Algebraic }
    }
}

/// Everything computed over one field.
#[derive(Debug, Clone)]
pub struct FieldAnalysis {
    pub field: Field,
    /// `UL₀(z)` of the whole presentation.
    pub ul0: HilbertSeries,
    /// `U(HẼL)₀(z)` of the whole presentation.
    pub uhel0: HilbertSeries,
    /// `(HẼL)₀` dimensions of the factor carrying the differentials.
    pub hel0: HilbertSeries,
    /// `(HẼL)₁(z)` of the whole presentation.
    pub hel1: HilbertSeries,
    pub ha_inv: HilbertSeries,
    pub kprime: HilbertSeries,
    /// Dimensions of `J = [d′V₁]`.
    pub ideal_dims: HilbertSeries,
    /// Dimensions of `J/[J,J]`.
    pub indecomposables: HilbertSeries,
    pub free: Verdict,
    pub inert: Verdict,
    pub semi_inert: Verdict,
    pub k_series: HilbertSeries,
    pub k_witnesses: Vec<Witness>,
    /// Generators spanning `(HẼL)₀` when it is abelian.
    pub abelian_generators: Option<Vec<String>>,
    pub action_trivial: bool,
    pub hel1_dims: Vec<u32>,
    pub notes: Vec<String>,
}

/// `H A(z)⁻¹ = (1+z)·U(HẼL)₀(z)⁻¹ − z·UL₀(z)⁻¹ − V₁(z)`.
pub fn anick_series(
    ul0: &HilbertSeries,
    uhel0: &HilbertSeries,
    v1: &HilbertSeries,
) -> Result<HilbertSeries, CoeffError> {
    let n = ul0.cutoff().min(uhel0.cutoff()).min(v1.cutoff());
    let one_z = &HilbertSeries::one(n) + &HilbertSeries::z(n);
    let a = one_z.mul(&uhel0.inverse()?);
    let b = ul0.inverse()?.shift(1);
    Ok(&(&a - &b) - v1)
}

/// `K′(z) = V₁(z) + z·[UL₀(z)⁻¹ − U(HẼL)₀(z)⁻¹]`.
pub fn kprime_series(
    ul0: &HilbertSeries,
    uhel0: &HilbertSeries,
    v1: &HilbertSeries,
) -> Result<HilbertSeries, CoeffError> {
    let diff = &ul0.inverse()? - &uhel0.inverse()?;
    Ok(v1 + &diff.shift(1))
}

/// Series of a coproduct of connected algebras.
pub fn coproduct_series(parts: &[HilbertSeries]) -> Result<HilbertSeries, CoeffError> {
    let n = parts.iter().map(|s| s.cutoff()).min().expect("at least one factor");
    let mut sum = HilbertSeries::one(n);
    for s in parts {
        sum = &(&sum + &s.inverse()?) - &HilbertSeries::one(n);
    }
    sum.inverse()
}

/// Freeness of `J` from its dimensions and those of `J/[J,J]`: `J` is free
/// up to the cutoff iff `U(J)(z) = 1/(1 − (J/[J,J])(z))`.
pub fn freeness_verdict(
    ideal_dims: &HilbertSeries,
    indecomposables: &HilbertSeries,
    certificate: Option<Reason>,
) -> Result<Verdict, CoeffError> {
    let uj = HilbertSeries::pbw_series(ideal_dims)?;
    let expected = HilbertSeries::tensor_algebra(indecomposables);
    let implied = &HilbertSeries::one(uj.cutoff()) - &uj.inverse()?;
    let mismatch = (0..=uj.cutoff()).find(|&n| uj.coeff(n) != expected.coeff(n));
    let status = match (mismatch, certificate) {
        (None, Some(reason)) => Status::CertifiedUpToCutoff { reason: Some(reason) },
        (None, None) => Status::ConsistentUpToCutoff,
        (Some(n), _) => {
            let witness = match implied.first_negative() {
                Some(m) if m <= n => format!(
                    "1 - U(J)(z)^-1 has coefficient {} at z^{m}, impossible for a free Lie algebra",
                    implied.coeff(m)
                ),
                _ => format!(
                    "J/[J,J] has dim {} in dim {n}, a free J needs {}",
                    indecomposables.coeff(n),
                    implied.coeff(n)
                ),
            };
            assert!(certificate.is_none(), "certified ideal failed the free-series check at dim {n}");
            Status::RefutedAtDim { dim: n as u32, witness }
        }
    };
    Ok(Verdict::new(status))
}

/// Inert iff `(HẼL)₁` vanishes through the cutoff.
pub fn inert_verdict(alg: &PresentedAlgebra, h: &BigradedHomology) -> Verdict {
    for c in &h.deg1 {
        if let Some(z) = c.representatives.first() {
            return Verdict::new(Status::RefutedAtDim {
                dim: c.dim,
                witness: format!("0 != [{}] in (HẼL)₁", alg.display_vec(c.dim, 1, z)),
            });
        }
    }
    Verdict::new(Status::certified())
}

/// Greedy minimal module generators of `(HẼL)₁` over `U(HẼL)₀`.
#[derive(Debug, Clone)]
pub struct ModuleGenerators {
    pub generators: Vec<(u32, SparseVec)>,
    pub series: HilbertSeries,
    /// First dimension where the free module on the generators is larger
    /// than `(HẼL)₁`, with a description of the relation.
    pub deficit: Option<(u32, String)>,
}

pub fn module_generators(alg: &PresentedAlgebra, h: &BigradedHomology, uhel0: &HilbertSeries) -> ModuleGenerators {
    let field = alg.field();
    let n = h.cutoff;
    let gens: Vec<(usize, u32, String)> = alg
        .generators()
        .iter()
        .enumerate()
        .filter(|(_, g)| g.degree == 0)
        .map(|(i, g)| (i, g.dim, g.name.clone()))
        .collect();
    // Spanning cycles of the submodule in each dimension, with labels.
    let mut span: Vec<Vec<(SparseVec, String)>> = Vec::with_capacity(n as usize + 1);
    let mut generators = Vec::new();
    let mut zero_labels: Vec<Vec<String>> = vec![Vec::new(); n as usize + 1];
    for m in 0..=n {
        let comp = h.component(m, 1);
        let mut ech = Echelon::new(field);
        let mut here = Vec::new();
        for (g, d, name) in &gens {
            if *d > m {
                continue;
            }
            let acts = !h.component(*d, 0).is_boundary(&alg.normal_form(*d, 0, &letter_vec(alg, *d, *g)));
            for (v, label) in &span[(m - d) as usize] {
                let w = alg.bracket_with_generator(m - d, 1, v, *g);
                let class = comp.class_of(&w).expect("bracket of cycles is a cycle");
                let label = format!("[{label},{name}]");
                if class.is_empty() && acts {
                    zero_labels[m as usize].push(label.clone());
                }
                if ech.insert(&class) {
                    here.push((w, label));
                }
            }
        }
        for (i, z) in comp.representatives.iter().enumerate() {
            if ech.insert(&unit(field, i)) {
                let label = format!("k{}", generators.len() + 1);
                generators.push((m, z.clone()));
                here.push((z.clone(), label));
            }
        }
        span.push(here);
    }
    let mut series = HilbertSeries::zero(n as usize);
    for (d, _) in &generators {
        series.set(*d as usize, series.coeff(*d as usize) + 1);
    }
    let predicted = series.mul(uhel0);
    let deficit = (0..=n).find(|&m| predicted.coeff(m as usize) != h.component(m, 1).rank() as i64).map(|m| {
        let mut msg = format!(
            "free module on K predicts {} classes in dim {m}, (HẼL)₁ has {}",
            predicted.coeff(m as usize),
            h.component(m, 1).rank()
        );
        if !zero_labels[m as usize].is_empty() {
            msg.push_str(&format!("; module relation {} = 0", zero_labels[m as usize].join(", ")));
        }
        (m, msg)
    });
    ModuleGenerators { generators, series, deficit }
}

fn letter_vec(alg: &PresentedAlgebra, dim: u32, g: usize) -> SparseVec {
    let block = alg.block(dim, 0).expect("generator block");
    let mut v = SparseVec::new();
    v.insert(block.index_of(&crate::tensor::Word::letter(g)).expect("letter"), alg.field().one());
    v
}

/// Bracket-closure dimensions of `[J,J]` from a Lie ideal's echelon bases.
fn decomposables(alg: &PresentedAlgebra, ideal: &crate::present::LieIdeal, cutoff: u32) -> HilbertSeries {
    let mut out = HilbertSeries::zero(cutoff as usize);
    let bases: Vec<Vec<SparseVec>> = (0..=cutoff).map(|n| ideal.component(n).rows().cloned().collect()).collect();
    for n in 1..=cutoff {
        let mut ech = Echelon::new(alg.field());
        for i in 1..=n / 2 {
            let j = n - i;
            for (s, a) in bases[i as usize].iter().enumerate() {
                let start = if i == j { s } else { 0 };
                for b in &bases[j as usize][start..] {
                    if let Some(c) = alg.bracket((i, 0, a), (j, 0, b)) {
                        ech.insert(&c);
                    }
                }
            }
        }
        out.set(n as usize, ech.rank() as i64);
    }
    out
}

/// Runs the full pipeline over one field.
pub fn analyze_field(p: &Presentation, field: Field, opts: &AnalysisOptions) -> Result<FieldAnalysis, AnalyzeError> {
    let cutoff = p.cutoff;
    let split = p.split_factors()?;
    let (working, others) = match &split {
        Some(s) => (&s.marked, s.others.iter().map(|(_, q)| q).collect::<Vec<_>>()),
        None => (p, Vec::new()),
    };
    let mut notes = Vec::new();
    let alg = PresentedAlgebra::new(working, field, BuildOptions { max_words: opts.max_words, max_degree: Some(2) })?;
    let table = DifferentialTable::extend_derivation(&alg, working)?;
    table.require_extension(working)?;
    let h = table.bigraded_homology();

    let seeds: Vec<_> = working
        .degree_one()
        .filter_map(|g| alg.tensor().generator_index(&g.name))
        .map(|g| table.image(g).clone())
        .filter(|e| !e.is_zero())
        .collect();
    let ideal = alg.lie_ideal_basis(&seeds)?;
    let ideal_dims = ideal.dims();
    let hel0 = h.series(0);
    let lie0 = alg.lie_series(0);
    assert_eq!(&lie0 - &ideal_dims, hel0, "(HẼL)₀ must equal L₀/[d′V₁]");

    let ul0_w = alg.quotient_series(0);
    let uhel0_w = HilbertSeries::pbw_series(&hel0)?;
    let hel1_w = h.series(1);
    let uj = HilbertSeries::pbw_series(&ideal_dims)?;
    if uj.mul(&uhel0_w) != ul0_w {
        notes.push(
            "Hopf factorization UL₀ = U(J)·U(L₀/J) fails; relations may not present an enveloping algebra".into(),
        );
    }

    let mut ul_parts = Vec::new();
    for q in &others {
        ul_parts.push(enveloping_series(q, field, opts.max_words)?);
    }
    let (ul0, uhel0) = if ul_parts.is_empty() {
        (ul0_w.clone(), uhel0_w.clone())
    } else {
        let mut a = ul_parts.clone();
        a.push(ul0_w.clone());
        let mut b = ul_parts.clone();
        b.push(uhel0_w.clone());
        (coproduct_series(&a)?, coproduct_series(&b)?)
    };
    // Degree 1 of C ⨿ N is induced from N₁ along U N₀ → U(C ⨿ N₀).
    let hel1 = if ul_parts.is_empty() { hel1_w.clone() } else { uhel0.mul(&uhel0_w.inverse()?).mul(&hel1_w) };
    let v1 = p.v1_series();
    let ha_inv = anick_series(&ul0, &uhel0, &v1)?;
    let kprime = kprime_series(&ul0, &uhel0, &v1)?;

    let certificate = if !working.relations.is_empty() {
        None
    } else if others.is_empty() {
        Some(Reason::SchreierFreeAmbient)
    } else {
        Some(Reason::SchreierSemidirect)
    };
    let indecomposables = &ideal_dims - &decomposables(&alg, &ideal, cutoff);
    let free = freeness_verdict(&ideal_dims, &indecomposables, certificate)?;

    let inert = inert_verdict(&alg, &h);
    let module = module_generators(&alg, &h, &uhel0_w);
    let k_witnesses: Vec<Witness> = module
        .generators
        .iter()
        .map(|(d, z)| Witness { dim: *d, element: format!("[{}]", alg.display_vec(*d, 1, z)) })
        .collect();
    let semi_status = match (&free.status, &module.deficit) {
        (Status::RefutedAtDim { dim, .. }, _) => {
            Status::RefutedAtDim { dim: *dim, witness: "the extension is not free".into() }
        }
        (_, Some((dim, witness))) => Status::RefutedAtDim { dim: *dim, witness: witness.clone() },
        (Status::ConsistentUpToCutoff, None) => Status::ConsistentUpToCutoff,
        (_, None) => Status::certified(),
    };
    let mut semi_inert = Verdict::new(semi_status);
    semi_inert.basis_witnesses = k_witnesses.clone();
    if inert.holds() {
        assert!(semi_inert.holds() || !free.holds(), "inert must imply semi-inert");
    }
    if semi_inert.holds() && module.series != kprime {
        notes.push(format!("K(z) = {} differs from K′(z) = {}", module.series, kprime));
    }
    if let Some(m) = kprime.first_negative() {
        notes.push(format!("K′(z) has a negative coefficient at z^{m}: not semi-inert"));
    }

    let abelian_generators = if others.is_empty() { abelian_generators(&alg, &h) } else { None };
    // Other factors act freely on the induced module.
    let action_trivial = others.is_empty() && action_is_trivial(&alg, &h);
    let hel1_dims = h.deg1.iter().flat_map(|c| std::iter::repeat_n(c.dim, c.rank())).collect();
    Ok(FieldAnalysis {
        field,
        ul0,
        uhel0,
        hel0,
        hel1,
        ha_inv,
        kprime,
        ideal_dims,
        indecomposables,
        free,
        inert,
        semi_inert,
        k_series: module.series,
        k_witnesses,
        abelian_generators,
        action_trivial,
        hel1_dims,
        notes,
    })
}

/// Names of degree-0 generators with nonzero class when `(HẼL)₀` is
/// abelian; `None` otherwise.
fn abelian_generators(alg: &PresentedAlgebra, h: &BigradedHomology) -> Option<Vec<String>> {
    let gens: Vec<(usize, u32)> =
        alg.generators().iter().enumerate().filter(|(_, g)| g.degree == 0).map(|(i, g)| (i, g.dim)).collect();
    for &(a, da) in &gens {
        for &(b, db) in &gens {
            let n = da + db;
            if n > h.cutoff || b < a {
                continue;
            }
            let v = alg.bracket_with_generator(da, 0, &letter_vec(alg, da, a), b);
            if !h.component(n, 0).is_boundary(&v) {
                return None;
            }
        }
    }
    Some(
        gens.iter()
            .filter(|(g, d)| !h.component(*d, 0).is_boundary(&alg.normal_form(*d, 0, &letter_vec(alg, *d, *g))))
            .map(|(g, _)| alg.generators()[*g].name.clone())
            .collect(),
    )
}

/// Whether every degree-0 generator brackets every `(HẼL)₁` class to zero.
fn action_is_trivial(alg: &PresentedAlgebra, h: &BigradedHomology) -> bool {
    for c in &h.deg1 {
        for z in &c.representatives {
            for (g, gen) in alg.generators().iter().enumerate() {
                let n = c.dim + gen.dim;
                if gen.degree != 0 || n > h.cutoff {
                    continue;
                }
                let w = alg.bracket_with_generator(c.dim, 1, z, g);
                if !h.component(n, 1).is_boundary(&w) {
                    return false;
                }
            }
        }
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdicts {
    pub free: Verdict,
    pub inert: Verdict,
    pub semi_inert: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReportSeries {
    #[serde(rename = "UL0")]
    pub ul0: HilbertSeries,
    #[serde(rename = "UHeL0")]
    pub uhel0: HilbertSeries,
    #[serde(rename = "HeL1")]
    pub hel1: HilbertSeries,
    #[serde(rename = "HA_inv")]
    pub ha_inv: HilbertSeries,
    #[serde(rename = "Kprime")]
    pub kprime: HilbertSeries,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub ring: String,
    pub cutoff: u32,
    pub primes: Vec<u64>,
    pub verdicts: Verdicts,
    pub series: ReportSeries,
    pub witnesses: Vec<Witness>,
    pub structure: Vec<String>,
    pub notes: Vec<String>,
}

impl AnalysisReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Combines per-field verdicts; the first refutation wins.
fn combine(ring: &RingSpec, primes: &[u64], per_field: &[(Field, &Verdict)]) -> Verdict {
    if let Some((f, v)) = per_field.iter().find(|(_, v)| !v.holds()) {
        let mut v = (*v).clone();
        if per_field.len() > 1 {
            if let Status::RefutedAtDim { witness, .. } = &mut v.status {
                *witness = format!("over {}: {witness}", field_name(*f));
            }
        }
        return v;
    }
    let mut v = per_field[0].1.clone();
    // A Schreier certificate holds over every field at once.
    let structural = per_field.iter().all(|(_, v)| v.status.is_certified() && v.status.reason().is_some());
    if let (RingSpec::Localization { .. }, false) = (ring, structural) {
        v.status = Status::ConditionalOnPrimes { primes: primes.to_vec(), reason: v.status.reason() };
    }
    v
}

fn field_name(f: Field) -> String {
    match f {
        Field::Rationals => "Q".into(),
        Field::Prime(p) => format!("F{p}"),
    }
}

/// Analyzes a presentation over its ring.
pub fn analyze(p: &Presentation, opts: &AnalysisOptions) -> Result<AnalysisReport, AnalyzeError> {
    p.validate()?;
    let primes = match (&p.ring, &opts.primes) {
        (RingSpec::Localization { .. }, Some(list)) => list.clone(),
        (RingSpec::Localization { .. }, None) => p.ring.default_test_primes(),
        (RingSpec::PrimeField { p }, _) => vec![*p],
        (RingSpec::Rationals, _) => Vec::new(),
    };
    let fields = p.ring.fields(&primes);
    let runs: Vec<FieldAnalysis> = fields.iter().map(|&f| analyze_field(p, f, opts)).collect::<Result<_, _>>()?;
    let base = &runs[0];
    let mut notes = base.notes.clone();
    for r in &runs[1..] {
        if r.hel0 != base.hel0 {
            let d = (0..=p.cutoff as usize).find(|&d| r.hel0.coeff(d) != base.hel0.coeff(d)).unwrap_or(0);
            notes.push(format!(
                "L₀/[d′V₁] has torsion: dim {d} is {} over Q but {} over {}",
                base.hel0.coeff(d),
                r.hel0.coeff(d),
                field_name(r.field)
            ));
        }
        if r.hel1 != base.hel1 {
            notes.push(format!("(HẼL)₁ depends on the field ({} vs Q)", field_name(r.field)));
        }
    }
    let pick = |f: fn(&FieldAnalysis) -> &Verdict| {
        let list: Vec<(Field, &Verdict)> = runs.iter().map(|r| (r.field, f(r))).collect();
        combine(&p.ring, &primes, &list)
    };
    let verdicts = Verdicts { free: pick(|r| &r.free), inert: pick(|r| &r.inert), semi_inert: pick(|r| &r.semi_inert) };
    let structure = structure_report(p, base, &verdicts, opts.vocabulary);
    if !verdicts.semi_inert.holds() && p.degree_one().next().is_some() {
        notes.push("gr(H A) fixes H A additively only; its products may differ".into());
    }
    if !verdicts.free.holds() {
        notes.push("the extension is not free, so Anick's formula and K′ need not describe H A".into());
    }
    Ok(AnalysisReport {
        ring: p.ring.to_string(),
        cutoff: p.cutoff,
        primes,
        verdicts,
        series: ReportSeries {
            ul0: base.ul0.clone(),
            uhel0: base.uhel0.clone(),
            hel1: base.hel1.clone(),
            ha_inv: base.ha_inv.clone(),
            kprime: base.kprime.clone(),
        },
        witnesses: base.k_witnesses.clone(),
        structure,
        notes,
    })
}

struct Words {
    ha: &'static str,
    h0: &'static str,
    l0: &'static str,
    inert_quotient: &'static str,
}

const ALGEBRAIC: Words = Words { ha: "H A", h0: "(HẼL)₀", l0: "L₀", inert_quotient: "L₀/[d′V₁]" };
const TOPOLOGICAL: Words = Words { ha: "H_*(ΩY)", h0: "L_X/L^W_X", l0: "L_X", inert_quotient: "L_X/L^W_X" };

fn dims_list(dims: &[u32]) -> String {
    let items: Vec<String> = dims.iter().map(|d| format!("·:{d}")).collect();
    if items.len() > 6 {
        format!("{}, …", items[..6].join(", "))
    } else {
        items.join(", ")
    }
}

/// Human-readable structure lines for the report.
pub fn structure_report(p: &Presentation, base: &FieldAnalysis, v: &Verdicts, vocab: Vocabulary) -> Vec<String> {
    let w = match vocab {
        Vocabulary::Algebraic => &ALGEBRAIC,
        Vocabulary::Topological => &TOPOLOGICAL,
    };
    let mut out = Vec::new();
    if p.degree_one().next().is_none() {
        out.push(format!("{} ≅ U{}", w.ha, w.l0));
        return out;
    }
    if let Status::RefutedAtDim { dim, .. } = v.free.status {
        out.push(format!("not free: [d′V₁] fails to be a free Lie algebra in dim {dim}"));
        return out;
    }
    let prefix = if v.free.status.is_certified() { "" } else { "conditional: " };
    let h0_render = match &base.abelian_generators {
        Some(gens) if !gens.is_empty() => format!("𝕃_ab⟨{}⟩", gens.join(", ")),
        _ => w.h0.to_string(),
    };
    let gr = if v.inert.holds() {
        format!("gr({}) ≅ U({})", w.ha, w.h0)
    } else if base.action_trivial {
        format!("gr({}) ≅ U({h0_render} × 𝕃⟨{}⟩)", w.ha, dims_list(&base.hel1_dims))
    } else {
        format!("gr({}) ≅ U({} ⋉ 𝕃(HẼL)₁)", w.ha, w.h0)
    };
    out.push(format!("{prefix}{gr}"));
    if v.inert.holds() {
        out.push(format!("{prefix}{} ≅ U({})", w.ha, w.inert_quotient));
    } else if v.semi_inert.holds() {
        let dims: Vec<u32> = base.k_witnesses.iter().map(|k| k.dim).collect();
        out.push(format!("{prefix}{} ≅ U({} ⨿ 𝕃⟨{}⟩)", w.ha, w.h0, dims_list(&dims)));
    }
    if let Some(gens) = &base.abelian_generators {
        if !gens.is_empty() {
            out.push(format!("{} ≅ 𝕃_ab⟨{}⟩", w.h0, gens.join(", ")));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
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
    fn kprime_hand_expansions() {
        let n = 16;
        let s = |c: &[(usize, i64)]| {
            let mut h = HilbertSeries::zero(n);
            for &(d, v) in c {
                h.set(d, v);
            }
            h
        };
        // semi-inert example: UL₀⁻¹ = 1 − 2z², U(HẼL)₀⁻¹ = (1−z²)²(1−z⁴)
        let ul0 = s(&[(0, 1), (2, -2)]).inverse().unwrap();
        let u0 = s(&[(0, 1), (2, -2), (4, 1)]).mul(&s(&[(0, 1), (4, -1)])).inverse().unwrap();
        assert_eq!(kprime_series(&ul0, &u0, &s(&[(7, 2)])).unwrap(), s(&[(9, 1)]));
        // fat wedge
        let ul0 = s(&[(0, 1), (2, -3)]).inverse().unwrap();
        let u0 = s(&[(0, 1), (2, -1)]).mul(&s(&[(0, 1), (2, -1)])).mul(&s(&[(0, 1), (2, -1)])).inverse().unwrap();
        assert_eq!(kprime_series(&ul0, &u0, &s(&[(5, 3)])).unwrap(), s(&[(7, 1)]));
    }

    #[test]
    fn semi_inert_example_pipeline() {
        let r = analyze_field(&semi_inert(14), Field::Rationals, &AnalysisOptions::default()).unwrap();
        assert_eq!(r.free.status, Status::CertifiedUpToCutoff { reason: Some(Reason::SchreierFreeAmbient) });
        assert_eq!(r.inert.status.refuted_dim(), Some(9));
        assert!(r.semi_inert.status.is_certified());
        assert_eq!(r.k_witnesses.len(), 1);
        assert_eq!(r.k_witnesses[0].dim, 9);
        assert_eq!(r.kprime, HilbertSeries::monomial(9, 1, 14));
        assert_eq!(r.k_series, r.kprime);
    }

    #[test]
    fn no_extension_has_trivial_verdicts() {
        let p = Presentation::new(RingSpec::Rationals, 8).with_generator("x", 2, 0).with_generator("y", 3, 0);
        let rep = analyze(&p, &AnalysisOptions::default()).unwrap();
        assert!(rep.verdicts.inert.holds() && rep.verdicts.free.holds());
        assert_eq!(rep.series.ha_inv, rep.series.ul0.inverse().unwrap());
        assert_eq!(rep.structure, vec!["H A ≅ UL₀".to_string()]);
    }

    #[test]
    fn coproduct_of_free_factors() {
        let n = 10;
        let tx = HilbertSeries::tensor_algebra(&HilbertSeries::monomial(2, 1, n));
        let ty = HilbertSeries::tensor_algebra(&HilbertSeries::monomial(3, 1, n));
        let mut v = HilbertSeries::monomial(2, 1, n);
        v.set(3, 1);
        assert_eq!(coproduct_series(&[tx, ty]).unwrap(), HilbertSeries::tensor_algebra(&v));
    }
}
