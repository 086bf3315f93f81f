// Run with: cargo run --example ore_arithmetic
//
// The twisted polynomial ring L{t} with commutation rule t a = a^q t.
// Multiplication is noncommutative, but a right Euclidean division still
// exists and underpins everything the crate does with isogenies.

use taucover::error::Result;
use taucover::field::FieldTower;
use taucover::text::parse_ore;

fn main() -> Result<()> {
    let f4 = FieldTower::new(2, 1)?.extend(2)?;

    let a = parse_ore(&f4, 1, "t^2+w*t+1")?;
    let b = parse_ore(&f4, 1, "w*t+w+1")?;

    let ab = a.checked_mul(&b)?;
    let ba = b.checked_mul(&a)?;
    println!("a*b = {ab}");
    println!("b*a = {ba}");
    println!("commutative? {}", ab == ba);

    // the defining relation, exhaustively over F_4
    let t = parse_ore(&f4, 1, "t")?;
    for c in f4.elements(1) {
        let left = t.checked_mul(&parse_ore(&f4, 1, &c.to_string())?)?;
        println!("t * {c} = {left}");
    }

    // right division: f = quotient * g + remainder, deg r < deg g
    let (quot, rem) = ab.right_divmod(&b)?;
    println!("dividing back: quotient {quot}, remainder {rem}");
    assert_eq!(quot.checked_mul(&b)?.checked_add(&rem)?, ab);

    // every twisted polynomial is an additive polynomial in disguise
    let add = a.to_additive()?;
    println!("additive form of a: {add}");
    for x in f4.elements(1) {
        assert_eq!(a.eval(&x)?, add.eval(&x)?);
    }
    println!("operator and additive evaluations agree on all of F_4");

    Ok(())
}
