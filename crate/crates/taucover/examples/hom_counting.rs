// Run with: cargo run --example hom_counting
//
// Counting homomorphisms to Z/n through the abelianization. The count
// decides whether a Kummer pullback of degree n stays irreducible: one
// hom (the trivial one) means no obstruction. The contrast between
// even and odd q is the crate's whole story in miniature.

use taucover::error::{Caps, Result};
use taucover::field::FieldTower;
use taucover::groups::{abelianization, build_group, det_mod_squares, hom_report, GroupKind};
use taucover::residue::ResidueRing;
use taucover::text::parse_apoly;

fn group_over(q: (u32, u32)) -> Result<(ResidueRing, taucover::GroupTable)> {
    let tower = FieldTower::new(q.0, q.1)?;
    let t = parse_apoly(&tower, "T")?;
    let ring = ResidueRing::new(&tower, &t)?;
    let table = build_group(&ring, GroupKind::G, &Caps::default())?;
    Ok((ring, table))
}

fn main() -> Result<()> {
    // q = 4: G(F_4) = SL2(F_4) is perfect, so only the trivial hom exists
    let (_, g4) = group_over((2, 2))?;
    let ab4 = abelianization(&g4)?;
    println!(
        "G(F_4): order {}, invariant factors {:?}",
        g4.order(),
        ab4.invariant_factors
    );
    let rep = hom_report(&g4, &ab4, 5, None)?;
    println!("homs G(F_4) -> Z/5: {}", rep.count);

    // q = 5: the determinant-mod-squares character gives a Z/2 quotient,
    // and every nontrivial hom to Z/6 factors through it
    let (_, g5) = group_over((5, 1))?;
    let ab5 = abelianization(&g5)?;
    println!(
        "G(F_5): order {}, invariant factors {:?}",
        g5.order(),
        ab5.invariant_factors
    );
    let dms = det_mod_squares(&g5)?;
    let kernel = dms.iter().filter(|v| **v == 0).count();
    println!("det-mod-squares kernel has {kernel} elements");
    let rep = hom_report(&g5, &ab5, 6, Some(&dms))?;
    println!(
        "homs G(F_5) -> Z/6: {}, kernels {:?}, all factor through Z/2: {:?}",
        rep.count, rep.kernel_orders, rep.all_factor_through_z2
    );

    Ok(())
}
