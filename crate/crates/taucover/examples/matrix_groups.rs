// Run with: cargo run --example matrix_groups
//
// Exhaustive matrix groups over quotients A/(f). Five kinds are
// supported: GL2, SL2, the determinant-in-F_q^* group G1, its quotient G
// by F_q-scalars, and SL2 modulo {±1}. Orders are enumerated and then
// cross-checked against the closed-form count.

use taucover::error::{Caps, Result};
use taucover::field::FieldTower;
use taucover::groups::{build_group, predicted_order, reduction_map, GroupKind};
use taucover::residue::ResidueRing;
use taucover::text::parse_apoly;

fn main() -> Result<()> {
    let caps = Caps::default();
    let f4 = FieldTower::new(2, 2)?;
    let t2 = parse_apoly(&f4, "T^2")?;
    let ring = ResidueRing::new(&f4, &t2)?;

    for kind in [GroupKind::Gl2, GroupKind::G1, GroupKind::G, GroupKind::Sl2] {
        let predicted = predicted_order(&ring, kind)?;
        let table = build_group(&ring, kind, &caps)?;
        println!(
            "{kind}(A/(T^2)) over F_4: enumerated {} = predicted {predicted}",
            table.order()
        );
    }

    // reduction mod T: surjective with uniform fibers
    let t = parse_apoly(&f4, "T")?;
    let small_ring = ResidueRing::new(&f4, &t)?;
    let big = build_group(&ring, GroupKind::G, &caps)?;
    let small = build_group(&small_ring, GroupKind::G, &caps)?;
    let red = reduction_map(&big, &small)?;
    println!(
        "G(A/(T^2)) -> G(A/(T)): surjective = {}, kernel {}, fibers of size {:?}",
        red.surjective,
        red.kernel.len(),
        red.fiber_size
    );

    // a composite modulus splits the group by the Chinese remainder theorem
    let tt1 = parse_apoly(&f4, "T^2+T")?;
    let crt_ring = ResidueRing::new(&f4, &tt1)?;
    let g = build_group(&crt_ring, GroupKind::G, &caps)?;
    println!(
        "G(A/(T^2+T)) has order {} = 60 * 60 (one SL2 factor per prime)",
        g.order()
    );

    Ok(())
}
