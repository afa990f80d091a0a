//! Iterates the killing construction on the fat wedge and prints one JSON
//! state per step.

use lieloop::analyze::AnalysisOptions;
use lieloop::coeffs::Field;
use lieloop::frontend::{attaching_data, parse_presentation, render};
use lieloop::ganea::ganea_iterate;

fn main() {
    let steps = std::env::args().nth(1).map(|s| s.parse().expect("step count")).unwrap_or(2);
    let p = parse_presentation(include_str!("../inputs/fat_wedge.lie")).unwrap();
    let (l0, s) = attaching_data(&p);
    let states = ganea_iterate(&l0, &s, steps, Field::Rationals, &AnalysisOptions::default()).unwrap();
    print!("{}", render::ganea_text(&states));
    print!("{}", render::ganea_json_lines(&states));
}
