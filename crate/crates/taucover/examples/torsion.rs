// Run with: cargo run --example torsion
//
// Torsion kernels of the running module. Away from the characteristic the
// kernel of phi_f is a free A/(f)-module of rank 2, but seeing all of it
// takes a field extension: the points are roots of an additive polynomial
// of degree q^(2 deg f), which rarely split over L itself.

use taucover::drinfeld::{AFieldStructure, DrinfeldModule2};
use taucover::error::{Caps, Result};
use taucover::field::FieldTower;
use taucover::text::parse_apoly;

fn main() -> Result<()> {
    let caps = Caps::default();
    let f4 = FieldTower::new(2, 1)?.extend(2)?;
    let w = f4.generator(1).expect("generator of F_4");
    let one = f4.one(1);
    let base = AFieldStructure::new(&w)?;
    let phi = DrinfeldModule2::new(&base, &one, &one)?;

    let t = parse_apoly(&f4, "T")?;
    for k in 1..=2 {
        let kernel = phi.torsion_kernel(&t, Some(k), &caps)?;
        let shape: Vec<String> = kernel.structure.iter().map(|d| d.to_string()).collect();
        println!(
            "ker phi_T in the degree-{k} extension: {} point(s), shape [{}]",
            kernel.points.len(),
            shape.join(", ")
        );
        for x in &kernel.points {
            println!("  {x}");
        }
    }

    // the full T^2-torsion needs a degree-4 extension and is free of rank 2
    let t2 = parse_apoly(&f4, "T^2")?;
    let full = phi.torsion_kernel(&t2, Some(4), &caps)?;
    let shape: Vec<String> = full.structure.iter().map(|d| d.to_string()).collect();
    println!(
        "ker phi_(T^2): {} points, shape [{}]",
        full.points.len(),
        shape.join(", ")
    );

    // at the characteristic the module structure degenerates
    let char_ideal = base.characteristic().clone();
    let degenerate = phi.torsion_kernel(&char_ideal, Some(4), &caps)?;
    let shape: Vec<String> = degenerate.structure.iter().map(|d| d.to_string()).collect();
    println!(
        "at the characteristic ({}): {} point(s), shape [{}]",
        char_ideal,
        degenerate.points.len(),
        shape.join(", ")
    );

    Ok(())
}
