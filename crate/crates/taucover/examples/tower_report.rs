// Run with: cargo run --example tower_report
//
// The full pipeline: a prime power ladder of congruence quotients, the
// surjective chain between levels, the Kummer pullback check at
// ramification index q + 1, and the name of the group each level ends
// up being. The reports serialize to the same JSON the CLI prints.

use taucover::error::{Caps, Result};
use taucover::field::FieldTower;
use taucover::text::parse_apoly;
use taucover::tower::{ramification_index, tower_report, tower_report_ideal, verify_lemma};

fn main() -> Result<()> {
    let caps = Caps::default();

    let f4 = FieldTower::new(2, 2)?;
    println!(
        "q = 4: covers ramify with index {} (tame, since gcd(2, 5) = 1)",
        ramification_index(&f4)
    );

    let t = parse_apoly(&f4, "T")?;
    let report = tower_report(&f4, &t, 2, &caps)?;
    println!("{}", serde_json::to_string_pretty(&report).expect("serializes"));

    // odd q: the same ladder passes through the quadratic obstruction
    let f5 = FieldTower::new(5, 1)?;
    let t5 = parse_apoly(&f5, "T")?;
    let report = tower_report(&f5, &t5, 1, &caps)?;
    println!("{}", serde_json::to_string_pretty(&report).expect("serializes"));

    // composite ideals work too, one level per ideal
    let tt1 = parse_apoly(&f4, "T^2+T")?;
    let report = tower_report_ideal(&f4, &tt1, &caps)?;
    let level = &report.levels[0];
    println!(
        "composite (T^2+T) over F_4: order {}, final group {}",
        level.order, level.final_group_name
    );

    // individual lemma checks power the per-level verdicts
    for id in ["mohan", "5", "9"] {
        let r = verify_lemma(id, &f4, &t, 2, &caps)?;
        println!(
            "lemma {} at q = 4, n = 2: verdict {}, orders {:?}",
            r.id, r.verdict, r.orders
        );
    }

    Ok(())
}
