//! The coproduct example: two nilpotent factors and a free factor carrying
//! the attached cells, over ℤ[1/6].

use lieloop::analyze::{analyze, AnalysisOptions};
use lieloop::frontend::{parse_presentation, render};

fn main() {
    let p = parse_presentation(include_str!("../inputs/three_cone.lie")).unwrap();
    let report = analyze(&p, &AnalysisOptions::default()).unwrap();
    print!("{}", render::analysis_text(&report));
}
