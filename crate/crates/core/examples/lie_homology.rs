//! Homology of the bigraded complex ẼL and of its enveloping algebra.
//!
//! The degree-1 classes of a semi-inert extension, then the full homology
//! of UẼL compared against Anick's formula.

use lieloop::analyze::anick_series;
use lieloop::coeffs::{Field, HilbertSeries};
use lieloop::dg::DifferentialTable;
use lieloop::frontend::parse_presentation;
use lieloop::present::{BuildOptions, PresentedAlgebra, DEFAULT_MAX_WORDS};

fn main() {
    let p = parse_presentation(include_str!("../inputs/semi_inert.lie")).unwrap();
    let alg = PresentedAlgebra::new(&p, Field::Rationals, BuildOptions::default()).unwrap();
    let table = DifferentialTable::extend_derivation(&alg, &p).unwrap();
    table.require_extension(&p).unwrap();
    let h = table.bigraded_homology();
    println!("(HẼL)₀(z) = {}", h.series(0));
    println!("(HẼL)₁(z) = {}", h.series(1));
    for n in 0..=h.cutoff {
        for r in &h.component(n, 1).representatives {
            println!("  class in dim {n}: {}", alg.display_vec(n, 1, r));
        }
    }

    // Full homology of UẼL needs every degree.
    let mut small = p.clone();
    small.cutoff = 10;
    let full_alg = PresentedAlgebra::new(
        &small,
        Field::Rationals,
        BuildOptions { max_words: DEFAULT_MAX_WORDS, max_degree: None },
    )
    .unwrap();
    let small_table = DifferentialTable::extend_derivation(&full_alg, &small).unwrap();
    let direct = small_table.full_homology().series();
    let uhel0 = HilbertSeries::pbw_series(&small_table.bigraded_homology().series(0)).unwrap();
    let ul0 = full_alg.quotient_series(0);
    let predicted = anick_series(&ul0, &uhel0, &small.v1_series()).unwrap().inverse().unwrap();
    println!("H(UẼL)(z)        = {direct}");
    println!("Anick prediction = {predicted}");
    assert_eq!(direct, predicted);
}
