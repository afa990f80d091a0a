//! Series arithmetic: PBW, its inverse, coproducts and Anick's formula.

use lieloop::analyze::{anick_series, coproduct_series, kprime_series};
use lieloop::coeffs::HilbertSeries;

fn main() {
    let cutoff = 12;
    // Free Lie algebra on two generators of dimension 2.
    let v = HilbertSeries::new(vec![0, 0, 2], cutoff);
    let tv = HilbertSeries::tensor_algebra(&v);
    let lie = HilbertSeries::witt_solve(&tv).expect("witt");
    println!("T(V)(z)      = {tv}");
    println!("𝕃(V) dims    = {lie}");
    assert_eq!(HilbertSeries::pbw_series(&lie).unwrap(), tv);

    // A coproduct of 𝕃⟨x⟩ (x odd) with itself.
    let ux = HilbertSeries::pbw_series(&HilbertSeries::new(vec![0, 0, 0, 1], cutoff)).unwrap();
    println!("U𝕃⟨x:3⟩      = {ux}");
    println!("U(𝕃 ⨿ 𝕃)     = {}", coproduct_series(&[ux.clone(), ux]).unwrap());

    // The fat wedge: UL₀ = T(V), U(HẼL)₀ polynomial on three classes.
    let ul0 = HilbertSeries::tensor_algebra(&HilbertSeries::new(vec![0, 0, 3], cutoff));
    let uhel0 = HilbertSeries::pbw_series(&HilbertSeries::new(vec![0, 0, 3], cutoff)).unwrap();
    let v1 = HilbertSeries::new(vec![0, 0, 0, 0, 0, 3], cutoff);
    println!("H A(z)⁻¹     = {}", anick_series(&ul0, &uhel0, &v1).unwrap());
    println!("K′(z)        = {}", kprime_series(&ul0, &uhel0, &v1).unwrap());
}
