// Run with: cargo run --example drinfeld_action
//
// The running example everywhere in this crate: the rank-2 module over
// L = F_4 with gamma(T) = w and phi_T = w + t + t^2. The map f -> phi_f
// is a ring homomorphism A -> L{t}, verified here on a few products.

use taucover::drinfeld::{AFieldStructure, DrinfeldModule2};
use taucover::error::Result;
use taucover::field::FieldTower;
use taucover::text::parse_apoly;

fn main() -> Result<()> {
    let f4 = FieldTower::new(2, 1)?.extend(2)?;
    let w = f4.generator(1).expect("generator of F_4");
    let one = f4.one(1);

    let base = AFieldStructure::new(&w)?;
    println!("characteristic ideal: ({})", base.characteristic());

    let phi = DrinfeldModule2::new(&base, &one, &one)?;
    println!("phi_T = {}", phi.phi_t());
    println!("j-invariant: {}", phi.j_invariant());

    // A = F_2[T] here, so operator polynomials have F_2 coefficients
    for s in ["T^2", "T^2+T", "T^3+T+1"] {
        let f = parse_apoly(&f4, s)?;
        let op = phi.phi_of(&f)?;
        println!("phi_({f}) = {op}");
        // the constant term is always gamma(f) = f(w)
        assert_eq!(op.constant_term(), f.eval(&w)?);
    }

    // phi_{fg} = phi_f phi_g: multiplicativity on a sample pair
    let f = parse_apoly(&f4, "T^2+T")?;
    let g = parse_apoly(&f4, "T+1")?;
    let lhs = phi.phi_of(&f.checked_mul(&g)?)?;
    let rhs = phi.phi_of(&f)?.checked_mul(&phi.phi_of(&g)?)?;
    assert_eq!(lhs, rhs);
    println!("phi_(fg) == phi_f * phi_g checked for f = {f}, g = {g}");

    Ok(())
}
