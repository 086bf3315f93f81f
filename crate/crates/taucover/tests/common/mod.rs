#![allow(dead_code)]

use taucover::error::{Caps, Result};
use taucover::field::{FieldElement, FieldTower};
use taucover::groups::{build_group, GroupKind, GroupTable};
use taucover::residue::ResidueRing;
use taucover::text::parse_apoly;

pub fn tower(p: u32, m: u32) -> FieldTower {
    FieldTower::new(p, m).expect("prime power")
}

/// L one storey above F_p^m, e.g. F_4 over F_2 with q = 2.
pub fn tower_ext(p: u32, m: u32, k: usize) -> FieldTower {
    tower(p, m).extend(k).expect("extension")
}

pub fn group(p: u32, m: u32, modulus: &str, kind: GroupKind, caps: &Caps) -> Result<GroupTable> {
    let tower = tower(p, m);
    let f = parse_apoly(&tower, modulus)?;
    let ring = ResidueRing::new(&tower, &f)?;
    build_group(&ring, kind, caps)
}

pub fn random_element(
    tower: &FieldTower,
    level: usize,
    rng: &mut impl rand::Rng,
) -> FieldElement {
    tower.from_index(level, rng.gen_range(0..tower.size(level)))
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Counts homomorphisms G -> Z/n by brute force, independently of the
/// abelianization machinery: pick a generating set from scratch, try
/// every assignment of generator images, extend each candidate to a
/// total map by closure, and accept only if the homomorphism law holds
/// on every single pair. Only sane for small groups.
pub fn brute_force_hom_count(g: &GroupTable, n: u64) -> u64 {
    let order = u32::try_from(g.order()).expect("small group");
    let mut gens: Vec<u32> = Vec::new();
    let mut reached = reachable(g, &gens);
    for e in 0..order {
        if !reached[e as usize] {
            gens.push(e);
            reached = reachable(g, &gens);
        }
    }
    debug_assert!(reached.iter().all(|r| *r));

    let k = gens.len();
    let mut images = vec![0u64; k];
    let mut count = 0u64;
    loop {
        if extends_to_hom(g, &gens, &images, n) {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == k {
                return count;
            }
            images[i] += 1;
            if images[i] < n {
                break;
            }
            images[i] = 0;
            i += 1;
        }
    }
}

fn reachable(g: &GroupTable, gens: &[u32]) -> Vec<bool> {
    let mut seen = vec![false; g.order() as usize];
    let id = g.identity();
    seen[id as usize] = true;
    let mut stack = vec![id];
    while let Some(x) = stack.pop() {
        for &s in gens {
            let y = g.mul(x, s);
            if !seen[y as usize] {
                seen[y as usize] = true;
                stack.push(y);
            }
        }
    }
    seen
}

fn extends_to_hom(g: &GroupTable, gens: &[u32], images: &[u64], n: u64) -> bool {
    const UNSET: u64 = u64::MAX;
    let order = g.order() as usize;
    let mut f = vec![UNSET; order];
    let id = g.identity();
    f[id as usize] = 0;
    let mut stack = vec![id];
    while let Some(x) = stack.pop() {
        for (i, &s) in gens.iter().enumerate() {
            let y = g.mul(x, s);
            let v = (f[x as usize] + images[i]) % n;
            if f[y as usize] == UNSET {
                f[y as usize] = v;
                stack.push(y);
            } else if f[y as usize] != v {
                return false;
            }
        }
    }
    // the candidate is total; now the law itself, on all pairs
    for a in 0..order as u32 {
        for b in 0..order as u32 {
            if (f[a as usize] + f[b as usize]) % n != f[g.mul(a, b) as usize] {
                return false;
            }
        }
    }
    true
}
