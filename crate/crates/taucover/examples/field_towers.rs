// Run with: cargo run --example field_towers
//
// Builds F_4 as an extension of F_2, then F_16 on top of F_4, and walks
// through the arithmetic that the rest of the crate leans on.

use taucover::error::Result;
use taucover::field::FieldTower;
use taucover::text::parse_element;

fn main() -> Result<()> {
    let f4 = FieldTower::new(2, 1)?.extend(2)?;
    println!("tower moduli: {:?}", f4.extension_moduli());

    let w = f4.generator(1).expect("F_4 has a generator");
    println!("w = {w}, w^2 = {}, w^3 = {}", w.pow(2), w.pow(3));

    // the twist a -> a^q with q = 2 swaps the two non-rational elements
    for a in f4.elements(1) {
        println!("{a} -> frobenius -> {}", a.frobenius(1));
    }

    // a second storey: F_16 = F_4[w1]/(modulus found by search)
    let f16 = f4.extend(2)?;
    println!("F_16 moduli: {:?}", f16.extension_moduli());
    let top = f16.generator(2).expect("F_16 has a generator");
    let order = (1..=15)
        .find(|k| top.pow(*k).is_one())
        .expect("nonzero element of F_16 has order dividing 15");
    println!("generator {top} has multiplicative order {order}");

    // elements written in the text grammar round-trip through parsing
    let x = parse_element(&f16, 2, "w2+w")?;
    println!("parsed back: {x}");
    match f16.project(&x, 1) {
        Ok(down) => println!("{x} projects to F_4 as {down}"),
        Err(e) => println!("{x} does not live in F_4 ({e})"),
    }

    // embedding is coefficient-constant inclusion, and project undoes it
    let w16 = f16.generator(1).expect("level 1 is F_4");
    let up = f16.embed(&w16, 2)?;
    println!("{w16} embedded into F_16 is {up}, back down: {}", f16.project(&up, 1)?);

    Ok(())
}
