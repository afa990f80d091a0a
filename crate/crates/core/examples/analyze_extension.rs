//! Freeness, inertness and semi-inertness of one extension, with the
//! structure report. Run with `--release` for the larger inputs.
//!
//!     cargo run --example analyze_extension [path.lie]

use lieloop::analyze::{analyze, AnalysisOptions};
use lieloop::frontend::{parse_presentation, render};

fn main() {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(&path).expect("readable input"),
        None => include_str!("../inputs/semi_inert.lie").to_string(),
    };
    let p = parse_presentation(&text).unwrap_or_else(|e| panic!("{e}"));
    let report = analyze(&p, &AnalysisOptions::default()).expect("analysis");
    print!("{}", render::analysis_text(&report));
}
