// Run with: cargo run --example sl2_identification
//
// What the quotient group G(A/(f)) actually is. For even q the scalar
// classes are represented exactly by SL2; for odd q one squares off a
// canonical Z/2 quotient first and lands on SL2/{±1}. Both comparisons
// are literal set equalities between canonicalized element tables.

use taucover::error::{Caps, Result};
use taucover::field::FieldTower;
use taucover::groups::{build_group, identify_sl2, GroupKind};
use taucover::residue::ResidueRing;
use taucover::text::parse_apoly;

fn identify(p: u32, m: u32, modulus: &str) -> Result<()> {
    let tower = FieldTower::new(p, m)?;
    let f = parse_apoly(&tower, modulus)?;
    let ring = ResidueRing::new(&tower, &f)?;
    let caps = Caps::default();
    let g = build_group(&ring, GroupKind::G, &caps)?;
    let sl2 = build_group(&ring, GroupKind::Sl2, &caps)?;
    let v = identify_sl2(&g, &sl2)?;
    println!(
        "q = {}^{}, modulus {}: verdict {}, orders {:?}{}",
        p,
        m,
        modulus,
        v.verdict,
        v.orders,
        if v.hypothesis_ok { "" } else { "  (outside hypothesis)" }
    );
    if let Some(note) = v.note {
        println!("  note: {note}");
    }
    Ok(())
}

fn main() -> Result<()> {
    identify(2, 2, "T")?;
    identify(2, 2, "T^2")?;
    identify(5, 1, "T")?;
    identify(3, 1, "T")?; // q = 3 falls outside the supported range
    Ok(())
}
