//! Finite quotient rings A/(f) with dense lookup tables.
//!
//! Elements are indexed by the base-q encoding of their canonical
//! representative (the remainder of degree < deg f), so index arithmetic
//! is just table lookups. The tables are built once, eagerly, and the
//! construction fails rather than degrade when the ring is too large.

use crate::apoly::APoly;
use crate::error::{Error, Result};
use crate::field::FieldTower;

/// Hard bound on |A/(f)| for the dense u16 tables.
const MAX_RING_SIZE: u64 = 2048;

const NO_INV: u16 = u16::MAX;

/// The quotient ring A/(f) for a monic modulus f of degree >= 1.
///
/// Residues are indexed 0..size by base-q encoding; the constants of F_q
/// occupy indices 0..q with 0 and 1 at their usual places.
#[derive(Clone)]
pub struct ResidueRing {
    tower: FieldTower,
    modulus: APoly,
    size: u64,
    residues: Vec<APoly>,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
}

impl ResidueRing {
    /// Builds the full addition and multiplication tables for A/(f).
    pub fn new(tower: &FieldTower, modulus: &APoly) -> Result<ResidueRing> {
        if !modulus.is_monic() {
            return Err(Error::Invalid("residue modulus must be monic".into()));
        }
        let deg = modulus.degree().unwrap_or(0);
        if deg == 0 {
            return Err(Error::Invalid(
                "residue modulus must have degree at least 1".into(),
            ));
        }
        let q = tower.q();
        let size = (q as u64)
            .checked_pow(deg as u32)
            .filter(|s| *s <= MAX_RING_SIZE)
            .ok_or_else(|| {
                Error::CapExceeded(format!(
                    "residue ring of size q^{deg} exceeds the table bound {MAX_RING_SIZE}"
                ))
            })?;
        let n = size as usize;
        let residues: Vec<APoly> = (0..size)
            .map(|i| APoly::from_encoding(tower, i))
            .collect();
        // invariant: encode is the inverse of from_encoding on remainders
        debug_assert!(residues
            .iter()
            .enumerate()
            .all(|(i, r)| r.encode() == i as u64));

        let mut add = vec![0u16; n * n];
        let mut mul = vec![0u16; n * n];
        let mut neg = vec![0u16; n];
        let mut inv = vec![NO_INV; n];
        for i in 0..n {
            let ri = &residues[i];
            neg[i] = encode_rem(&ri.neg());
            for j in 0..n {
                let rj = &residues[j];
                let s = ri.checked_add(rj)?;
                add[i * n + j] = encode_rem(&s);
                let p = ri.checked_mul(rj)?;
                let (_, r) = p.divmod(modulus)?;
                let pk = encode_rem(&r);
                mul[i * n + j] = pk;
                if pk == 1 {
                    inv[i] = j as u16;
                }
            }
        }
        Ok(ResidueRing {
            tower: tower.clone(),
            modulus: modulus.clone(),
            size,
            residues,
            add,
            mul,
            neg,
            inv,
        })
    }

    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    pub fn modulus(&self) -> &APoly {
        &self.modulus
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    /// The canonical representative of index i.
    pub fn residue(&self, i: u16) -> &APoly {
        &self.residues[i as usize]
    }

    /// Index of a polynomial's class, reducing mod f first.
    pub fn index_of(&self, a: &APoly) -> Result<u16> {
        let (_, r) = a.divmod(&self.modulus)?;
        Ok(encode_rem(&r))
    }

    pub fn zero_idx(&self) -> u16 {
        0
    }

    pub fn one_idx(&self) -> u16 {
        1
    }

    #[inline]
    pub fn add_t(&self, a: u16, b: u16) -> u16 {
        self.add[a as usize * self.size as usize + b as usize]
    }

    #[inline]
    pub fn mul_t(&self, a: u16, b: u16) -> u16 {
        self.mul[a as usize * self.size as usize + b as usize]
    }

    #[inline]
    pub fn sub_t(&self, a: u16, b: u16) -> u16 {
        self.add_t(a, self.neg[b as usize])
    }

    #[inline]
    pub fn neg_t(&self, a: u16) -> u16 {
        self.neg[a as usize]
    }

    /// Multiplicative inverse, None for non-units.
    #[inline]
    pub fn inv_t(&self, a: u16) -> Option<u16> {
        match self.inv[a as usize] {
            NO_INV => None,
            j => Some(j),
        }
    }

    pub fn is_unit(&self, a: u16) -> bool {
        self.inv[a as usize] != NO_INV
    }

    pub fn unit_count(&self) -> u64 {
        self.inv.iter().filter(|&&j| j != NO_INV).count() as u64
    }

    /// Indices of the constants of F_q inside the ring, in field order.
    /// These are exactly 0..q because constants encode to their own index.
    pub fn base_field_indices(&self) -> std::ops::Range<u16> {
        0..self.tower.q() as u16
    }
}

fn encode_rem(r: &APoly) -> u16 {
    let code = r.encode();
    debug_assert!(code < MAX_RING_SIZE);
    code as u16
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_apoly;

    fn ring(p: u32, m: u32, modulus: &str) -> ResidueRing {
        let tower = FieldTower::new(p, m).unwrap();
        let f = parse_apoly(&tower, modulus).unwrap();
        ResidueRing::new(&tower, &f).unwrap()
    }

    #[test]
    fn f2_mod_t_squared() {
        let r = ring(2, 1, "T^2");
        assert_eq!(r.size(), 4);
        let strings: Vec<String> = (0..4).map(|i| r.residue(i).to_string()).collect();
        assert_eq!(strings, vec!["0", "1", "T", "T+1"]);
        // units are exactly the residues with nonzero constant term
        assert!(!r.is_unit(0));
        assert!(r.is_unit(1));
        assert!(!r.is_unit(2));
        assert!(r.is_unit(3));
        assert_eq!(r.unit_count(), 2);
        // (T+1)^2 = T^2 + 1 = 1, so T+1 is its own inverse
        assert_eq!(r.inv_t(3), Some(3));
        assert_eq!(r.mul_t(3, 3), 1);
        assert_eq!(r.add_t(2, 3), 1);
    }

    #[test]
    fn ring_axioms_exhaustive_f4_composite() {
        // A/(T^2+T) over F_4 is a product of two copies of F_4.
        let r = ring(2, 2, "T^2+T");
        let n = r.size() as u16;
        assert_eq!(n, 16);
        for a in 0..n {
            assert_eq!(r.add_t(a, 0), a);
            assert_eq!(r.mul_t(a, 1), a);
            assert_eq!(r.mul_t(a, 0), 0);
            assert_eq!(r.add_t(a, r.neg_t(a)), 0);
            if let Some(ai) = r.inv_t(a) {
                assert_eq!(r.mul_t(a, ai), 1);
            }
            for b in 0..n {
                assert_eq!(r.add_t(a, b), r.add_t(b, a));
                assert_eq!(r.mul_t(a, b), r.mul_t(b, a));
                for c in 0..n {
                    assert_eq!(r.add_t(r.add_t(a, b), c), r.add_t(a, r.add_t(b, c)));
                    assert_eq!(r.mul_t(r.mul_t(a, b), c), r.mul_t(a, r.mul_t(b, c)));
                    assert_eq!(
                        r.mul_t(a, r.add_t(b, c)),
                        r.add_t(r.mul_t(a, b), r.mul_t(a, c))
                    );
                }
            }
        }
        // units are pairs of nonzero coordinates: (4-1)^2 of them
        assert_eq!(r.unit_count(), 9);
    }

    #[test]
    fn field_quotient_is_a_field() {
        // T^2+T+1 is irreducible over F_2, so the quotient is F_4.
        let r = ring(2, 1, "T^2+T+1");
        assert_eq!(r.size(), 4);
        assert_eq!(r.unit_count(), 3);
        // T * (T+1) = T^2+T = 1 mod f
        assert_eq!(r.mul_t(2, 3), 1);
        assert_eq!(r.inv_t(2), Some(3));
    }

    #[test]
    fn constants_sit_at_field_indices() {
        let r = ring(5, 1, "T^2+2");
        assert_eq!(r.base_field_indices(), 0..5);
        for c in 0..5u16 {
            let rep = r.residue(c);
            assert!(rep.degree().is_none() || rep.degree() == Some(0));
            // constants multiply as in F_5
            for d in 0..5u16 {
                let prod = r.mul_t(c, d);
                assert_eq!(u32::from(prod), (u32::from(c) * u32::from(d)) % 5);
            }
        }
        assert_eq!(r.index_of(&parse_apoly(r.tower(), "T^2+T+2").unwrap()).unwrap(), 5);
    }

    #[test]
    fn modulus_validation() {
        let tower = FieldTower::new(2, 2).unwrap();
        let nonmonic = parse_apoly(&tower, "w*T^2+1").unwrap();
        assert!(ResidueRing::new(&tower, &nonmonic).is_err());
        let constant = parse_apoly(&tower, "1").unwrap();
        assert!(ResidueRing::new(&tower, &constant).is_err());
        let huge = parse_apoly(&tower, "T^8").unwrap();
        assert!(ResidueRing::new(&tower, &huge).is_err());
    }
}
