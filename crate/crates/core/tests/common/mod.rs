//! Seeded random presentations shared by the property and acceptance suites.
#![allow(dead_code)]

use lieloop::coeffs::{Field, RingSpec};
use lieloop::linalg::SparseVec;
use lieloop::present::{Presentation, DEFAULT_MAX_WORDS};
use lieloop::schreier::{ReducedGenerator, Subalgebra, SubalgebraSpec};
use lieloop::tensor::{rational, GradedGenerator, LieExpr};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn dim_of(gens: &[GradedGenerator], e: &LieExpr) -> u32 {
    match e {
        LieExpr::Gen(n) => gens.iter().find(|g| &g.name == n).expect("known").dim,
        LieExpr::Scale(_, e) => dim_of(gens, e),
        LieExpr::Sum(ps) => dim_of(gens, &ps[0]),
        LieExpr::Bracket(ps) => ps.iter().map(|p| dim_of(gens, p)).sum(),
    }
}

/// A left-normed bracket of `len ≥ 2` letters drawn from `pool`.
pub fn random_bracket(r: &mut ChaCha8Rng, pool: &[&GradedGenerator], len: usize) -> LieExpr {
    LieExpr::Bracket((0..len).map(|_| LieExpr::gen(&pool.choose(r).unwrap().name)).collect())
}

/// A combination of brackets of one dimension, or `None` when the first
/// draw has dimension above `max_dim`.
pub fn random_lie(
    r: &mut ChaCha8Rng,
    gens: &[GradedGenerator],
    pool: &[&GradedGenerator],
    max_dim: u32,
) -> Option<LieExpr> {
    let len = r.gen_range(2..=3);
    let first = random_bracket(r, pool, len);
    let dim = dim_of(gens, &first);
    if dim > max_dim {
        return None;
    }
    let mut terms = vec![first];
    for _ in 0..8 {
        if terms.len() >= 3 {
            break;
        }
        let len = r.gen_range(2..=3);
        let b = random_bracket(r, pool, len);
        if dim_of(gens, &b) == dim && b != terms[0] {
            let q = rational(r.gen_range(1..=3) * if r.gen_bool(0.5) { 1 } else { -1 }, r.gen_range(1..=2));
            terms.push(LieExpr::scaled(q, b));
        }
    }
    Some(if terms.len() == 1 { terms.pop().unwrap() } else { LieExpr::Sum(terms) })
}

/// A presented `L₀`: two or three degree-0 generators, up to two relations.
pub fn random_presented(seed: u64, cutoff: u32) -> Presentation {
    let mut r = rng(seed);
    let n = r.gen_range(2..=3);
    let mut p = Presentation::new(RingSpec::Rationals, cutoff);
    for i in 0..n {
        p = p.with_generator(&format!("x{i}"), r.gen_range(1..=3), 0);
    }
    let gens = p.generators.clone();
    let pool: Vec<&GradedGenerator> = gens.iter().collect();
    for _ in 0..r.gen_range(0..=2) {
        if let Some(e) = random_lie(&mut r, &gens, &pool, cutoff) {
            p = p.with_relation(e);
        }
    }
    p
}

/// A free extension of a free `L₀`: at most three generators of dimension
/// at most 4 (one or two in degree 1).
pub fn random_free_extension(seed: u64, cutoff: u32) -> Presentation {
    let mut r = rng(seed);
    let n0 = r.gen_range(1..=2);
    let mut p = Presentation::new(RingSpec::Rationals, cutoff);
    for i in 0..n0 {
        p = p.with_generator(&format!("x{i}"), r.gen_range(1..=2), 0);
    }
    let gens = p.generators.clone();
    let pool: Vec<&GradedGenerator> = gens.iter().collect();
    for j in 0..(3 - n0).min(r.gen_range(1..=2)) {
        let name = format!("a{j}");
        let image = if r.gen_bool(0.8) { random_lie(&mut r, &gens, &pool, 3) } else { None };
        match image {
            Some(e) => {
                let d = dim_of(&gens, &e) + 1;
                p = p.with_generator(&name, d, 1).with_differential(&name, e);
            }
            None => p = p.with_generator(&name, r.gen_range(2..=4), 1),
        }
    }
    p
}

/// A subalgebra of `𝕃(x, y) ⨿ 𝕃(u, …)` spanned by a few random elements.
pub fn random_subalgebra(seed: u64) -> SubalgebraSpec {
    let mut r = rng(seed);
    let cutoff = 8;
    let mut ambient = Presentation::new(RingSpec::Rationals, cutoff)
        .with_generator("x", r.gen_range(1..=2), 0)
        .with_generator("y", 2, 0)
        .with_generator("u", r.gen_range(2..=3), 1);
    if r.gen_bool(0.5) {
        ambient = ambient.with_generator("v", 3, 1);
    }
    let gens = ambient.generators.clone();
    let pool: Vec<&GradedGenerator> = gens.iter().collect();
    let mut generators = Vec::new();
    while generators.len() < r.gen_range(2..=4) {
        if r.gen_bool(0.4) {
            generators.push(LieExpr::gen(&pool.choose(&mut r).unwrap().name));
        } else if let Some(e) = random_lie(&mut r, &gens, &pool, cutoff) {
            generators.push(e);
        }
    }
    // A sum mixing filtrations whenever dimensions allow it.
    let x = gens[0].dim;
    if gens[2].dim == 2 * x && r.gen_bool(0.5) {
        generators.push(LieExpr::Sum(vec![LieExpr::gen("u"), LieExpr::bracket_of(&["x", "x"])]));
    }
    SubalgebraSpec { ambient, generators }
}

/// Reduced generators, the reduction of those, and whether the two spans agree.
pub fn reduce_twice(spec: &SubalgebraSpec) -> (Vec<String>, Vec<String>, bool) {
    let sub = Subalgebra::generate(spec, Field::Rationals, DEFAULT_MAX_WORDS).unwrap();
    let reduced = sub.reduced_generators();
    let exprs = reduced.iter().map(|g| element_expr(&sub, &g.element)).collect();
    let spec2 = SubalgebraSpec { ambient: spec.ambient.clone(), generators: exprs };
    let sub2 = Subalgebra::generate(&spec2, Field::Rationals, DEFAULT_MAX_WORDS).unwrap();
    let again = sub2.reduced_generators();
    let same = (0..=sub.cutoff()).all(|n| {
        let rows = |s: &Subalgebra| s.span(n).rows().cloned().collect::<Vec<SparseVec>>();
        sub.dim(n) == sub2.dim(n) && rows(&sub).iter().all(|r| sub2.span(n).contains(r))
    });
    let show = |v: &[ReducedGenerator]| v.iter().map(|g| g.display.clone()).collect();
    (show(&reduced), show(&again), same)
}

/// A Lie element of the free algebra as an expression: each length-k part
/// equals its Dynkin projection `(1/k) Σ c_w [w]`.
fn element_expr(sub: &Subalgebra, e: &lieloop::tensor::TensorElement) -> LieExpr {
    let t = sub.algebra().tensor();
    let mut terms = Vec::new();
    for (w, c) in e.terms() {
        let letters: Vec<LieExpr> = w.letters().map(|g| LieExpr::gen(&t.generators()[g].name)).collect();
        let k = letters.len() as i64;
        let atom = if letters.len() == 1 { letters.into_iter().next().unwrap() } else { LieExpr::Bracket(letters) };
        let q = c.to_rational() / num_rational::BigRational::from_integer(k.into());
        terms.push(LieExpr::scaled(q, atom));
    }
    LieExpr::Sum(terms)
}
