//! Normal forms, quotient bases and Lie dimensions of a presented algebra.

use lieloop::coeffs::{Field, RingSpec};
use lieloop::present::{BuildOptions, Presentation, PresentedAlgebra};
use lieloop::tensor::LieExpr;

fn main() {
    // U(𝕃⟨x,y⟩/([x,y,x],[x,y,y])) in dimensions up to 10.
    let p = Presentation::new(RingSpec::Rationals, 10)
        .with_generator("x", 2, 0)
        .with_generator("y", 2, 0)
        .with_relation(LieExpr::bracket_of(&["x", "y", "x"]))
        .with_relation(LieExpr::bracket_of(&["x", "y", "y"]));
    let alg = PresentedAlgebra::new(&p, Field::Rationals, BuildOptions::default()).expect("build");
    for n in 0..=p.cutoff {
        let basis = alg.quotient_basis(n);
        if basis.is_empty() {
            continue;
        }
        println!("dim {n:>2}: {} standard words, Lie dim {}", basis.len(), alg.lie_dim(n, 0));
    }
    println!("UL(z) = {}", alg.quotient_series(0));
    println!("L(z)  = {}", alg.lie_series(0));

    let t = alg.tensor();
    let e = t.eval_expr(&LieExpr::bracket_of(&["y", "x", "y"])).unwrap();
    println!("[y,x,y] reduces to {}", t.display(&alg.reduce_element(&e)));
}
