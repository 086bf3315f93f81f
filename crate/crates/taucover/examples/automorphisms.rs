// Run with: cargo run --example automorphisms
//
// The automorphism dichotomy for rank-2 modules: scaling by u sends
// (g, delta) to (u^(q-1) g, u^(q^2-1) delta), so Aut(phi) is F_q^* when
// j != 0 and all of F_{q^2}^* when j = 0. Checked here by brute force
// over every module with coefficients in F_4.

use taucover::drinfeld::{AFieldStructure, DrinfeldModule2};
use taucover::error::{Caps, Result};
use taucover::field::FieldTower;

fn main() -> Result<()> {
    let caps = Caps::default();
    let f4 = FieldTower::new(2, 1)?.extend(2)?;
    let w = f4.generator(1).expect("generator of F_4");
    let base = AFieldStructure::new(&w)?;
    let q = 2u64;

    let mut seen = [0usize; 2];
    for g in f4.elements(1) {
        for delta in f4.elements(1) {
            if delta.is_zero() {
                continue;
            }
            let phi = DrinfeldModule2::new(&base, &g, &delta)?;
            let auts = phi.aut_group(2, &caps)?;
            let j = phi.j_invariant();
            let expected = if j.is_zero() { q * q - 1 } else { q - 1 };
            assert_eq!(auts.len() as u64, expected);
            seen[usize::from(!j.is_zero())] += 1;
            if g.is_zero() || g.is_one() {
                let us: Vec<String> = auts.iter().map(|u| u.to_string()).collect();
                println!("g = {g}, delta = {delta}: j = {j}, Aut = {{{}}}", us.join(", "));
            }
        }
    }
    println!("{} modules with j = 0, {} with j != 0", seen[0], seen[1]);

    // twisting by a unit u gives an isomorphic module, and the witness
    // returned is exactly such a u
    let one = f4.one(1);
    let phi = DrinfeldModule2::new(&base, &one, &one)?;
    let other = DrinfeldModule2::new(&base, &w, &one)?;
    match phi.are_isomorphic(&other, 2, &caps)? {
        Some(u) => println!("phi ~ phi' via u = {u}"),
        None => println!("no isomorphism found in the quadratic extension"),
    }

    Ok(())
}
