//! Twisted polynomials L{t} with the commutation rule t*a = a^q * t.
//!
//! The twist always uses the tower's base field size q = p^m, even when the
//! coefficients live at a higher level; that distinction carries the whole
//! theory, so it is never inferred from the coefficient field. A twisted
//! polynomial acts on any extension as the additive polynomial obtained by
//! substituting t^i -> X^(q^i).

use crate::apoly::LPoly;
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldTower, Val};
use std::fmt;

/// Hard bound on the dense length of a materialized additive polynomial.
/// Actions on points should use [`OrePoly::eval`], which never densifies.
const ADDITIVE_LEN_CAP: u64 = 1 << 20;

#[derive(Clone, PartialEq, Eq)]
pub struct OrePoly {
    pub(crate) tower: FieldTower,
    pub(crate) level: usize,
    /// coeffs[i] multiplies t^i; trailing zeros stripped.
    pub(crate) coeffs: Vec<Val>,
}

impl OrePoly {
    pub fn zero(tower: &FieldTower, level: usize) -> OrePoly {
        OrePoly {
            tower: tower.clone(),
            level,
            coeffs: Vec::new(),
        }
    }

    pub fn one(tower: &FieldTower, level: usize) -> OrePoly {
        OrePoly {
            tower: tower.clone(),
            level,
            coeffs: vec![tower.0.one_val(level + 1)],
        }
    }

    pub fn tau(tower: &FieldTower, level: usize) -> OrePoly {
        OrePoly {
            tower: tower.clone(),
            level,
            coeffs: vec![tower.0.zero_val(level + 1), tower.0.one_val(level + 1)],
        }
    }

    pub fn constant(c: &FieldElement) -> OrePoly {
        let tower = c.tower().clone();
        let coeffs = if c.is_zero() {
            Vec::new()
        } else {
            vec![c.val.clone()]
        };
        OrePoly {
            tower,
            level: c.level(),
            coeffs,
        }
    }

    pub fn from_coeffs(coeffs: &[FieldElement]) -> Result<OrePoly> {
        let first = coeffs
            .first()
            .ok_or_else(|| Error::Invalid("empty coefficient list; use zero()".into()))?;
        let tower = first.tower().clone();
        let level = first.level();
        let mut vals = Vec::with_capacity(coeffs.len());
        for c in coeffs {
            if c.level() != level || !tower.compatible_with(c.tower(), level) {
                return Err(Error::FieldMismatch(
                    "coefficients must share one tower level".into(),
                ));
            }
            vals.push(c.val.clone());
        }
        let mut p = OrePoly {
            tower,
            level,
            coeffs: vals,
        };
        p.normalize();
        Ok(p)
    }

    fn normalize(&mut self) {
        while self
            .coeffs
            .last()
            .is_some_and(|c| self.tower.0.is_zero_val(c))
        {
            self.coeffs.pop();
        }
    }

    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        let val = self
            .coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.tower.0.zero_val(self.level + 1));
        self.tower.element(self.level, val)
    }

    /// The t^0 coefficient; for a module action this is the derivative.
    pub fn constant_term(&self) -> FieldElement {
        self.coeff(0)
    }

    pub fn leading(&self) -> Option<FieldElement> {
        self.coeffs
            .last()
            .map(|v| self.tower.element(self.level, v.clone()))
    }

    fn check_match(&self, other: &OrePoly) -> Result<()> {
        if self.level != other.level || !self.tower.compatible_with(&other.tower, self.level) {
            return Err(Error::FieldMismatch(
                "twisted polynomials live at different levels".into(),
            ));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &OrePoly) -> Result<OrePoly> {
        self.check_match(other)?;
        Ok(OrePoly {
            tower: self.tower.clone(),
            level: self.level,
            coeffs: self.tower.0.padd(self.level + 1, &self.coeffs, &other.coeffs),
        })
    }

    pub fn checked_sub(&self, other: &OrePoly) -> Result<OrePoly> {
        self.check_match(other)?;
        Ok(OrePoly {
            tower: self.tower.clone(),
            level: self.level,
            coeffs: self.tower.0.psub(self.level + 1, &self.coeffs, &other.coeffs),
        })
    }

    pub fn neg(&self) -> OrePoly {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| self.tower.0.neg_val(self.level + 1, c))
            .collect();
        OrePoly {
            tower: self.tower.clone(),
            level: self.level,
            coeffs,
        }
    }

    /// Twisted product: (a t^i)(b t^j) = a b^(q^i) t^(i+j).
    pub fn checked_mul(&self, other: &OrePoly) -> Result<OrePoly> {
        self.check_match(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(OrePoly::zero(&self.tower, self.level));
        }
        let inner = &self.tower.0;
        let depth = self.level + 1;
        let q = self.tower.q();
        let mut out = vec![inner.zero_val(depth); self.coeffs.len() + other.coeffs.len() - 1];
        // twisted[j] = sigma^i(b_j), advanced one Frobenius per row.
        let mut twisted: Vec<Val> = other.coeffs.clone();
        for (i, a) in self.coeffs.iter().enumerate() {
            if i > 0 {
                for tcoeff in twisted.iter_mut() {
                    *tcoeff = inner.pow_val(depth, tcoeff, q);
                }
            }
            if inner.is_zero_val(a) {
                continue;
            }
            for (j, b) in twisted.iter().enumerate() {
                let t = inner.mul_val(depth, a, b);
                out[i + j] = inner.add_val(depth, &out[i + j], &t);
            }
        }
        let mut p = OrePoly {
            tower: self.tower.clone(),
            level: self.level,
            coeffs: out,
        };
        p.normalize();
        Ok(p)
    }

    /// Right division: self = quot * den + rem with deg rem < deg den.
    pub fn right_divmod(&self, den: &OrePoly) -> Result<(OrePoly, OrePoly)> {
        self.check_match(den)?;
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let inner = &self.tower.0;
        let depth = self.level + 1;
        let q = self.tower.q();
        let dn = den.coeffs.len() - 1;
        let dlead = den.coeffs.last().unwrap();
        let mut rem = self.clone();
        let mut quot = OrePoly::zero(&self.tower, self.level);
        while rem.coeffs.len() >= den.coeffs.len() && !rem.is_zero() {
            let s = rem.coeffs.len() - 1 - dn;
            // Leading term of (c t^s) * den is c * sigma^s(dlead) t^(s+dn).
            let mut twisted_lead = dlead.clone();
            for _ in 0..s {
                twisted_lead = inner.pow_val(depth, &twisted_lead, q);
            }
            let inv = inner
                .inv_val(depth, &twisted_lead)
                .expect("leading coefficient is a unit");
            let c = inner.mul_val(depth, rem.coeffs.last().unwrap(), &inv);
            let mut mono_coeffs = vec![inner.zero_val(depth); s + 1];
            mono_coeffs[s] = c;
            let mono = OrePoly {
                tower: self.tower.clone(),
                level: self.level,
                coeffs: mono_coeffs,
            };
            quot = quot.checked_add(&mono)?;
            let sub = mono.checked_mul(den)?;
            rem = rem.checked_sub(&sub)?;
        }
        Ok((quot, rem))
    }

    /// The additive polynomial: t^i becomes X^(q^i). Dense, so the result
    /// length q^deg + 1 is capped; actions on points should use eval.
    pub fn to_additive(&self) -> Result<LPoly> {
        let inner = &self.tower.0;
        let depth = self.level + 1;
        if self.is_zero() {
            return Ok(LPoly::zero(&self.tower, self.level));
        }
        let q = self.tower.q();
        let deg = self.coeffs.len() - 1;
        let top = q
            .checked_pow(deg as u32)
            .filter(|&t| t < ADDITIVE_LEN_CAP)
            .ok_or_else(|| {
                Error::CapExceeded(format!(
                    "additive form has degree q^{deg}, beyond the dense cap {ADDITIVE_LEN_CAP}"
                ))
            })?;
        let mut coeffs = vec![inner.zero_val(depth); top as usize + 1];
        let mut pos = 1u64;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                pos *= q;
            }
            coeffs[pos as usize] = c.clone();
        }
        Ok(LPoly::from_vals(self.tower.clone(), self.level, coeffs))
    }

    /// Applies the additive action to a point at the same level:
    /// sum of a_i * x^(q^i). Equal to evaluating the additive polynomial,
    /// without materializing it.
    pub fn eval(&self, x: &FieldElement) -> Result<FieldElement> {
        if x.level() != self.level || !x.tower().compatible_with(&self.tower, self.level) {
            return Err(Error::FieldMismatch(
                "evaluation point must live at the twisted polynomial's level".into(),
            ));
        }
        let inner = &x.tower().0;
        let depth = self.level + 1;
        let q = self.tower.q();
        let mut acc = inner.zero_val(depth);
        let mut frob = x.val.clone();
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                frob = inner.pow_val(depth, &frob, q);
            }
            if inner.is_zero_val(c) {
                continue;
            }
            let t = inner.mul_val(depth, c, &frob);
            acc = inner.add_val(depth, &acc, &t);
        }
        Ok(x.tower().element(self.level, acc))
    }

    /// Coefficient-constant embedding into a higher level of a compatible
    /// tower. The twist exponent q is unchanged.
    pub fn embed(&self, tower: &FieldTower, level: usize) -> Result<OrePoly> {
        if level < self.level || !tower.compatible_with(&self.tower, self.level) {
            return Err(Error::FieldMismatch(
                "embedding target must extend the source".into(),
            ));
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| tower.0.embed_val(self.level + 1, level + 1, c))
            .collect();
        Ok(OrePoly {
            tower: tower.clone(),
            level,
            coeffs,
        })
    }
}

impl fmt::Display for OrePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::text::format_ore(self))
    }
}

impl fmt::Debug for OrePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OrePoly(level={}, {self})", self.level)
    }
}

macro_rules! ore_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl std::ops::$trait for &OrePoly {
            type Output = OrePoly;
            fn $method(self, rhs: &OrePoly) -> OrePoly {
                self.$checked(rhs).expect("twisted polynomial operands must match")
            }
        }
        impl std::ops::$trait for OrePoly {
            type Output = OrePoly;
            fn $method(self, rhs: OrePoly) -> OrePoly {
                (&self).$method(&rhs)
            }
        }
    };
}

ore_binop!(Add, add, checked_add);
ore_binop!(Sub, sub, checked_sub);
ore_binop!(Mul, mul, checked_mul);

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    /// q = 2 with coefficients in F_4 one level up.
    fn f4_over_f2() -> FieldTower {
        FieldTower::new(2, 1).unwrap().extend(2).unwrap()
    }

    fn random_ore(tower: &FieldTower, level: usize, rng: &mut impl Rng, max_deg: usize) -> OrePoly {
        let deg = rng.gen_range(0..=max_deg);
        let coeffs: Vec<FieldElement> = (0..=deg)
            .map(|_| tower.from_index(level, rng.gen_range(0..tower.size(level))))
            .collect();
        OrePoly::from_coeffs(&coeffs).unwrap()
    }

    #[test]
    fn twist_moves_frobenius_past_t() {
        // Over L = F_4 with q = 2: t*a = a^2*t for every a.
        let tower = f4_over_f2();
        let t = OrePoly::tau(&tower, 1);
        for i in 0..4 {
            let a = tower.from_index(1, i);
            let left = &t * &OrePoly::constant(&a);
            let right = &OrePoly::constant(&a.pow(2)) * &t;
            assert_eq!(left, right);
        }
    }

    #[test]
    fn noncommutative_witness() {
        let tower = f4_over_f2();
        let w = tower.generator(1).unwrap();
        let t = OrePoly::tau(&tower, 1);
        let cw = OrePoly::constant(&w);
        assert_ne!(&t * &cw, &cw * &t);
    }

    #[test]
    fn square_of_phi_t_hand_value() {
        // (w + t + t^2)^2 = w^2 + t + t^2 + t^4 over F_4 with q = 2.
        let tower = f4_over_f2();
        let w = tower.generator(1).unwrap();
        let one = tower.one(1);
        let phi = OrePoly::from_coeffs(&[w.clone(), one.clone(), one.clone()]).unwrap();
        let sq = &phi * &phi;
        let zero = tower.zero(1);
        let expect = OrePoly::from_coeffs(&[
            w.pow(2),
            one.clone(),
            one.clone(),
            zero,
            one,
        ])
        .unwrap();
        assert_eq!(sq, expect);
    }

    #[test]
    fn degree_adds_under_multiplication() {
        let tower = f4_over_f2();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
        for _ in 0..100 {
            let a = random_ore(&tower, 1, &mut rng, 4);
            let b = random_ore(&tower, 1, &mut rng, 4);
            let p = &a * &b;
            match (a.degree(), b.degree()) {
                (Some(da), Some(db)) => assert_eq!(p.degree(), Some(da + db)),
                _ => assert!(p.is_zero()),
            }
        }
    }

    #[test]
    fn associative_and_distributive() {
        let tower = f4_over_f2();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(32);
        for _ in 0..150 {
            let a = random_ore(&tower, 1, &mut rng, 3);
            let b = random_ore(&tower, 1, &mut rng, 3);
            let c = random_ore(&tower, 1, &mut rng, 3);
            assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        }
    }

    #[test]
    fn right_divmod_recomposes() {
        let f9 = FieldTower::new(3, 1).unwrap().extend(2).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(33);
        for _ in 0..300 {
            let a = random_ore(&f9, 1, &mut rng, 5);
            let mut b = random_ore(&f9, 1, &mut rng, 3);
            if b.is_zero() {
                b = OrePoly::one(&f9, 1);
            }
            let (q, r) = a.right_divmod(&b).unwrap();
            assert_eq!(&(&q * &b) + &r, a);
            if !r.is_zero() {
                assert!(r.degree().unwrap() < b.degree().unwrap());
            }
        }
        let a = OrePoly::tau(&f9, 1);
        assert!(a.right_divmod(&OrePoly::zero(&f9, 1)).is_err());
    }

    #[test]
    fn eval_is_composition_homomorphism() {
        // eval(f*g, x) = eval(f, eval(g, x)): the action is by composition.
        let tower = f4_over_f2();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(34);
        for _ in 0..200 {
            let f = random_ore(&tower, 1, &mut rng, 3);
            let g = random_ore(&tower, 1, &mut rng, 3);
            let x = tower.from_index(1, rng.gen_range(0..4));
            let lhs = (&f * &g).eval(&x).unwrap();
            let rhs = f.eval(&g.eval(&x).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn eval_is_fq_linear() {
        let tower = f4_over_f2();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(35);
        let base: Vec<FieldElement> = tower
            .elements(0)
            .iter()
            .map(|c| tower.embed(c, 1).unwrap())
            .collect();
        for _ in 0..100 {
            let f = random_ore(&tower, 1, &mut rng, 3);
            let x = tower.from_index(1, rng.gen_range(0..4));
            let y = tower.from_index(1, rng.gen_range(0..4));
            assert_eq!(
                f.eval(&(&x + &y)).unwrap(),
                &f.eval(&x).unwrap() + &f.eval(&y).unwrap()
            );
            for c in &base {
                assert_eq!(
                    f.eval(&(c * &x)).unwrap(),
                    c * &f.eval(&x).unwrap()
                );
            }
        }
    }

    #[test]
    fn additive_form_matches_eval() {
        let tower = f4_over_f2();
        let w = tower.generator(1).unwrap();
        let one = tower.one(1);
        let f = OrePoly::from_coeffs(&[w.clone(), one.clone(), one]).unwrap();
        let additive = f.to_additive().unwrap();
        assert_eq!(additive.degree(), Some(4));
        assert_eq!(additive.to_string(), "X^4+X^2+w*X");
        for i in 0..4 {
            let x = tower.from_index(1, i);
            assert_eq!(additive.eval(&x).unwrap(), f.eval(&x).unwrap());
        }
        assert!(OrePoly::zero(&tower, 1).to_additive().unwrap().is_zero());
    }

    #[test]
    fn embed_preserves_action() {
        let tower = FieldTower::new(2, 1)
            .unwrap()
            .extend(2)
            .unwrap()
            .extend(2)
            .unwrap();
        let w = tower.generator(1).unwrap();
        let one = tower.one(1);
        let f = OrePoly::from_coeffs(&[w, one.clone(), one]).unwrap();
        let up = f.embed(&tower, 2).unwrap();
        for i in 0..tower.size(1) {
            let x = tower.from_index(1, i);
            let ex = tower.embed(&x, 2).unwrap();
            let low = tower.embed(&f.eval(&x).unwrap(), 2).unwrap();
            assert_eq!(up.eval(&ex).unwrap(), low);
        }
    }

    #[test]
    fn mixed_level_rejected() {
        let tower = f4_over_f2();
        let a = OrePoly::one(&tower, 0);
        let b = OrePoly::one(&tower, 1);
        assert!(a.checked_add(&b).is_err());
        assert!(a.checked_mul(&b).is_err());
        let x = tower.one(1);
        assert!(a.eval(&x).is_err());
    }
}
