//! Reduced generating sets and the `J ∩ F₀ = 0` certificate.

use lieloop::coeffs::{Field, RingSpec};
use lieloop::frontend::parse_expr;
use lieloop::present::{Presentation, DEFAULT_MAX_WORDS};
use lieloop::schreier::{certify, Subalgebra, SubalgebraSpec};

fn show(label: &str, spec: &SubalgebraSpec) {
    let sub = Subalgebra::generate(spec, Field::Rationals, DEFAULT_MAX_WORDS).unwrap();
    println!("{label}");
    for g in sub.reduced_generators() {
        println!("  dim {} filtration {}: {}", g.dim, g.filtration, g.display);
    }
    println!("  free: {:?}", certify(&sub).status);
}

fn main() {
    // L₀ = 𝕃⟨w1,w2⟩ in filtration 0, the cells e, g in filtration 1.
    let ambient = Presentation::new(RingSpec::Rationals, 40)
        .with_generator("w1", 9, 0)
        .with_generator("w2", 9, 0)
        .with_generator("e", 28, 1)
        .with_generator("g", 28, 1);
    let ring = ambient.ring.clone();
    let gens = |src: &[&str]| src.iter().map(|s| parse_expr(s, &ring).unwrap()).collect();
    show(
        "cells and a redundant bracket",
        &SubalgebraSpec { ambient: ambient.clone(), generators: gens(&["e", "g", "[e,w1]", "[e,w1] + [g,w2]"]) },
    );
    let ambient = ambient.with_generator("u", 18, 1);
    show("a filtration-0 element sneaks in", &SubalgebraSpec { ambient, generators: gens(&["u + [w1,w2]", "u"]) });
}
