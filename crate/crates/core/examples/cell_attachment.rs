//! A cell attachment read with loop-space wording, and the implicit-prime
//! bound for a complex of a given dimension.

use lieloop::analyze::{analyze, AnalysisOptions, Vocabulary};
use lieloop::frontend::{compile_attachment, primes_bound, render};

fn main() {
    let p = compile_attachment(include_str!("../inputs/fat_wedge_cells.lie")).unwrap();
    let opts = AnalysisOptions { vocabulary: Vocabulary::Topological, ..AnalysisOptions::default() };
    let report = analyze(&p, &opts).unwrap();
    print!("{}", render::analysis_text(&report));
    for n in [6, 8, 38] {
        println!("primes_bound({n}) = {}", primes_bound(n).unwrap());
    }
}
