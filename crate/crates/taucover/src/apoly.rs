//! Polynomials over the base field F_q (the ring A = F_q[T]) and dense
//! univariate polynomials over an arbitrary tower level.
//!
//! `APoly` is the coefficient ring for residue rings, torsion ideals, and
//! characteristic polynomials; `LPoly` carries additive polynomials and
//! extension moduli. Both keep trailing zeros stripped, so structural
//! equality is ring equality.

use crate::error::{Caps, Error, Result};
use crate::field::{FieldElement, FieldTower, Val};
use std::fmt;

/// Element of A = F_q[T]: dense coefficients over level 0, low degree first.
#[derive(Clone, PartialEq, Eq)]
pub struct APoly {
    pub(crate) tower: FieldTower,
    pub(crate) coeffs: Vec<Val>,
}

impl std::hash::Hash for APoly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.tower.p().hash(state);
        self.tower.m().hash(state);
        self.coeffs.hash(state);
    }
}

impl APoly {
    pub fn zero(tower: &FieldTower) -> APoly {
        APoly {
            tower: tower.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(tower: &FieldTower) -> APoly {
        APoly {
            tower: tower.clone(),
            coeffs: vec![tower.0.one_val(1)],
        }
    }

    /// The variable T.
    pub fn t(tower: &FieldTower) -> APoly {
        APoly {
            tower: tower.clone(),
            coeffs: vec![tower.0.zero_val(1), tower.0.one_val(1)],
        }
    }

    pub fn constant(c: &FieldElement) -> Result<APoly> {
        if c.level() != 0 {
            return Err(Error::FieldMismatch(
                "A-polynomial coefficients live at level 0".into(),
            ));
        }
        let mut coeffs = vec![c.val.clone()];
        let tower = c.tower().clone();
        if tower.0.is_zero_val(&coeffs[0]) {
            coeffs.clear();
        }
        Ok(APoly { tower, coeffs })
    }

    pub fn monomial(c: &FieldElement, k: usize) -> Result<APoly> {
        if c.level() != 0 {
            return Err(Error::FieldMismatch(
                "A-polynomial coefficients live at level 0".into(),
            ));
        }
        let tower = c.tower().clone();
        if c.is_zero() {
            return Ok(APoly::zero(&tower));
        }
        let mut coeffs = vec![tower.0.zero_val(1); k + 1];
        coeffs[k] = c.val.clone();
        Ok(APoly { tower, coeffs })
    }

    pub fn from_coeffs(coeffs: &[FieldElement]) -> Result<APoly> {
        let tower = coeffs
            .first()
            .map(|c| c.tower().clone())
            .ok_or_else(|| Error::Invalid("empty coefficient list; use zero()".into()))?;
        let mut vals = Vec::with_capacity(coeffs.len());
        for c in coeffs {
            if c.level() != 0 || !tower.compatible_with(c.tower(), 0) {
                return Err(Error::FieldMismatch(
                    "A-polynomial coefficients live at level 0 of one tower".into(),
                ));
            }
            vals.push(c.val.clone());
        }
        let mut p = APoly {
            tower,
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

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; None for the zero polynomial.
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
            .unwrap_or_else(|| self.tower.0.zero_val(1));
        self.tower.element(0, val)
    }

    pub fn leading(&self) -> Option<FieldElement> {
        self.coeffs
            .last()
            .map(|v| self.tower.element(0, v.clone()))
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs
            .last()
            .is_some_and(|v| *v == self.tower.0.one_val(1))
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == self.tower.0.one_val(1)
    }

    fn check_match(&self, other: &APoly) -> Result<()> {
        if !self.tower.compatible_with(&other.tower, 0) {
            return Err(Error::FieldMismatch("different towers".into()));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &APoly) -> Result<APoly> {
        self.check_match(other)?;
        Ok(APoly {
            tower: self.tower.clone(),
            coeffs: self.tower.0.padd(1, &self.coeffs, &other.coeffs),
        })
    }

    pub fn checked_sub(&self, other: &APoly) -> Result<APoly> {
        self.check_match(other)?;
        Ok(APoly {
            tower: self.tower.clone(),
            coeffs: self.tower.0.psub(1, &self.coeffs, &other.coeffs),
        })
    }

    pub fn checked_mul(&self, other: &APoly) -> Result<APoly> {
        self.check_match(other)?;
        Ok(APoly {
            tower: self.tower.clone(),
            coeffs: self.tower.0.pmul(1, &self.coeffs, &other.coeffs),
        })
    }

    pub fn pow(&self, e: u32) -> APoly {
        let mut acc = APoly::one(&self.tower);
        for _ in 0..e {
            acc = acc.checked_mul(self).expect("same tower");
        }
        acc
    }

    pub fn neg(&self) -> APoly {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| self.tower.0.neg_val(1, c))
            .collect();
        APoly {
            tower: self.tower.clone(),
            coeffs,
        }
    }

    /// Euclidean division. Errors on a zero divisor.
    pub fn divmod(&self, den: &APoly) -> Result<(APoly, APoly)> {
        self.check_match(den)?;
        let (q, r) = self.tower.0.pdivmod(1, &self.coeffs, &den.coeffs)?;
        Ok((
            APoly {
                tower: self.tower.clone(),
                coeffs: q,
            },
            APoly {
                tower: self.tower.clone(),
                coeffs: r,
            },
        ))
    }

    /// Monic greatest common divisor; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &APoly) -> Result<APoly> {
        self.check_match(other)?;
        Ok(APoly {
            tower: self.tower.clone(),
            coeffs: self.tower.0.pgcd(1, &self.coeffs, &other.coeffs),
        })
    }

    /// Scales to a monic polynomial. Errors on zero.
    pub fn monic(&self) -> Result<APoly> {
        let lead = self.leading().ok_or(Error::DivisionByZero)?;
        let inv = lead.inv()?;
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| self.tower.0.mul_val(1, c, &inv.val))
            .collect();
        Ok(APoly {
            tower: self.tower.clone(),
            coeffs,
        })
    }

    /// Evaluates at an element of any level of a compatible tower;
    /// coefficients are embedded first.
    pub fn eval(&self, x: &FieldElement) -> Result<FieldElement> {
        if !x.tower().compatible_with(&self.tower, 0) {
            return Err(Error::FieldMismatch("different towers".into()));
        }
        let tw = x.tower();
        let depth = x.level() + 1;
        let mut acc = tw.0.zero_val(depth);
        for c in self.coeffs.iter().rev() {
            acc = tw.0.mul_val(depth, &acc, &x.val);
            let emb = tw.0.embed_val(1, depth, c);
            acc = tw.0.add_val(depth, &acc, &emb);
        }
        Ok(tw.element(x.level(), acc))
    }

    /// True when irreducible over F_q. Errors on constants.
    pub fn is_irreducible(&self) -> Result<bool> {
        match self.degree() {
            None | Some(0) => Err(Error::Invalid("constants have no factorization".into())),
            Some(_) => Ok(self.tower.0.is_irreducible_at(1, &self.coeffs)),
        }
    }

    /// The smallest monic irreducible of the given degree over F_q, in the
    /// base-q encoding order with the low-degree digit least significant.
    pub fn smallest_irreducible(tower: &FieldTower, deg: usize) -> Result<APoly> {
        if deg == 0 {
            return Err(Error::Invalid("degree must be at least 1".into()));
        }
        Ok(APoly {
            tower: tower.clone(),
            coeffs: tower.0.smallest_irreducible_at(1, deg),
        })
    }

    /// Factorization of a monic non-constant polynomial into monic
    /// irreducibles with multiplicities, sorted by encoding.
    pub fn factor(&self, caps: &Caps) -> Result<Vec<(APoly, u32)>> {
        let deg = self
            .degree()
            .filter(|&d| d >= 1)
            .ok_or_else(|| Error::Invalid("factorization needs degree >= 1".into()))?;
        if !self.is_monic() {
            return Err(Error::Invalid(
                "factorization needs a monic input; normalize first".into(),
            ));
        }
        if deg > caps.max_poly_degree {
            return Err(Error::CapExceeded(format!(
                "degree {} exceeds the factorization cap {}",
                deg, caps.max_poly_degree
            )));
        }
        let inner = &self.tower.0;
        let mut rest = self.coeffs.clone();
        let mut out: Vec<(APoly, u32)> = Vec::new();
        let mut d = 1usize;
        while rest.len() - 1 >= 2 * d {
            let count = inner.fsize(1).pow(d as u32);
            for idx in 0..count {
                if rest.len() - 1 < 2 * d {
                    break;
                }
                let mut cand_coeffs = Vec::with_capacity(d + 1);
                let mut v = idx;
                let radix = inner.fsize(1);
                for _ in 0..d {
                    cand_coeffs.push(inner.decode_val(1, v % radix));
                    v /= radix;
                }
                cand_coeffs.push(inner.one_val(1));
                if !inner.is_irreducible_at(1, &cand_coeffs) {
                    continue;
                }
                let mut mult = 0u32;
                loop {
                    let (q, r) = inner.pdivmod(1, &rest, &cand_coeffs)?;
                    if r.is_empty() {
                        mult += 1;
                        rest = q;
                    } else {
                        break;
                    }
                }
                if mult > 0 {
                    out.push((
                        APoly {
                            tower: self.tower.clone(),
                            coeffs: cand_coeffs,
                        },
                        mult,
                    ));
                }
            }
            d += 1;
        }
        if rest.len() > 1 {
            out.push((
                APoly {
                    tower: self.tower.clone(),
                    coeffs: rest,
                },
                1,
            ));
        }
        Ok(out)
    }

    /// All monic divisors, sorted by encoding. Input must be monic.
    pub fn divisors(&self, caps: &Caps) -> Result<Vec<APoly>> {
        if self.is_one() {
            return Ok(vec![APoly::one(&self.tower)]);
        }
        let factors = self.factor(caps)?;
        let mut divs = vec![APoly::one(&self.tower)];
        for (p, mult) in &factors {
            let mut next = Vec::with_capacity(divs.len() * (*mult as usize + 1));
            for d in &divs {
                let mut cur = d.clone();
                next.push(cur.clone());
                for _ in 0..*mult {
                    cur = cur.checked_mul(p)?;
                    next.push(cur.clone());
                }
            }
            divs = next;
        }
        divs.sort_by_key(|d| d.encode());
        Ok(divs)
    }

    /// Base-q integer encoding; the canonical total order on A.
    pub fn encode(&self) -> u64 {
        let inner = &self.tower.0;
        let radix = inner.fsize(1);
        let mut acc = 0u64;
        for c in self.coeffs.iter().rev() {
            acc = acc * radix + inner.encode_val(1, c);
        }
        acc
    }

    /// Inverse of [`APoly::encode`] restricted to a degree bound.
    pub fn from_encoding(tower: &FieldTower, mut code: u64) -> APoly {
        let inner = &tower.0;
        let radix = inner.fsize(1);
        let mut coeffs = Vec::new();
        while code > 0 {
            coeffs.push(inner.decode_val(1, code % radix));
            code /= radix;
        }
        APoly {
            tower: tower.clone(),
            coeffs,
        }
    }
}

impl fmt::Display for APoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::text::format_apoly(self))
    }
}

impl fmt::Debug for APoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "APoly({self})")
    }
}

macro_rules! apoly_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl std::ops::$trait for &APoly {
            type Output = APoly;
            fn $method(self, rhs: &APoly) -> APoly {
                self.$checked(rhs).expect("A-polynomial operands must match")
            }
        }
        impl std::ops::$trait for APoly {
            type Output = APoly;
            fn $method(self, rhs: APoly) -> APoly {
                (&self).$method(&rhs)
            }
        }
    };
}

apoly_binop!(Add, add, checked_add);
apoly_binop!(Sub, sub, checked_sub);
apoly_binop!(Mul, mul, checked_mul);

/// Dense univariate polynomial over one tower level, variable X.
#[derive(Clone, PartialEq, Eq)]
pub struct LPoly {
    pub(crate) tower: FieldTower,
    pub(crate) level: usize,
    pub(crate) coeffs: Vec<Val>,
}

impl LPoly {
    pub(crate) fn from_vals(tower: FieldTower, level: usize, mut coeffs: Vec<Val>) -> LPoly {
        while coeffs.last().is_some_and(|c| tower.0.is_zero_val(c)) {
            coeffs.pop();
        }
        LPoly {
            tower,
            level,
            coeffs,
        }
    }

    pub fn zero(tower: &FieldTower, level: usize) -> LPoly {
        LPoly {
            tower: tower.clone(),
            level,
            coeffs: Vec::new(),
        }
    }

    pub fn from_coeffs(coeffs: &[FieldElement]) -> Result<LPoly> {
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
        Ok(LPoly::from_vals(tower, level, vals))
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

    fn check_match(&self, other: &LPoly) -> Result<()> {
        if self.level != other.level || !self.tower.compatible_with(&other.tower, self.level) {
            return Err(Error::FieldMismatch("different levels or towers".into()));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &LPoly) -> Result<LPoly> {
        self.check_match(other)?;
        Ok(LPoly::from_vals(
            self.tower.clone(),
            self.level,
            self.tower.0.padd(self.level + 1, &self.coeffs, &other.coeffs),
        ))
    }

    pub fn checked_sub(&self, other: &LPoly) -> Result<LPoly> {
        self.check_match(other)?;
        Ok(LPoly::from_vals(
            self.tower.clone(),
            self.level,
            self.tower.0.psub(self.level + 1, &self.coeffs, &other.coeffs),
        ))
    }

    pub fn checked_mul(&self, other: &LPoly) -> Result<LPoly> {
        self.check_match(other)?;
        Ok(LPoly::from_vals(
            self.tower.clone(),
            self.level,
            self.tower.0.pmul(self.level + 1, &self.coeffs, &other.coeffs),
        ))
    }

    pub fn neg(&self) -> LPoly {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| self.tower.0.neg_val(self.level + 1, c))
            .collect();
        LPoly {
            tower: self.tower.clone(),
            level: self.level,
            coeffs,
        }
    }

    pub fn eval(&self, x: &FieldElement) -> Result<FieldElement> {
        if x.level() != self.level || !x.tower().compatible_with(&self.tower, self.level) {
            return Err(Error::FieldMismatch(
                "evaluation point must live at the polynomial's level".into(),
            ));
        }
        let depth = self.level + 1;
        let inner = &x.tower().0;
        let mut acc = inner.zero_val(depth);
        for c in self.coeffs.iter().rev() {
            acc = inner.mul_val(depth, &acc, &x.val);
            acc = inner.add_val(depth, &acc, c);
        }
        Ok(x.tower().element(self.level, acc))
    }

    /// Coefficient-constant embedding into a higher level of a compatible
    /// tower (the target tower may extend this one).
    pub fn embed(&self, tower: &FieldTower, level: usize) -> Result<LPoly> {
        if level < self.level || !tower.compatible_with(&self.tower, self.level) {
            return Err(Error::FieldMismatch("embedding target must extend the source".into()));
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| tower.0.embed_val(self.level + 1, level + 1, c))
            .collect();
        Ok(LPoly {
            tower: tower.clone(),
            level,
            coeffs,
        })
    }

    /// All roots in the degree-k extension of the polynomial's level, by
    /// exhaustive evaluation. Returns the search tower and the roots in
    /// canonical order. The extension is created with the deterministic
    /// modulus rule when the tower does not already carry one of degree k.
    pub fn roots_in_extension(&self, k: usize, caps: &Caps) -> Result<(FieldTower, Vec<FieldElement>)> {
        if self.is_zero() {
            return Err(Error::Invalid("zero polynomial has every element as a root".into()));
        }
        if k == 0 {
            return Err(Error::Invalid("extension degree must be at least 1".into()));
        }
        let base_size = self.tower.size(self.level);
        let target = base_size
            .checked_pow(k as u32)
            .ok_or_else(|| Error::CapExceeded("extension size overflows".into()))?;
        if target > caps.max_field_size {
            return Err(Error::CapExceeded(format!(
                "root search over {target} elements exceeds the field cap {}",
                caps.max_field_size
            )));
        }
        // Degree-1 extensions are the field itself.
        let (ext, level) = if k == 1 {
            (self.tower.clone(), self.level)
        } else {
            extension_of(&self.tower, self.level, k)?
        };
        let poly = self.embed(&ext, level)?;
        let mut roots = Vec::new();
        for i in 0..ext.size(level) {
            let x = ext.from_index(level, i);
            if poly.eval(&x)?.is_zero() {
                roots.push(x);
            }
        }
        Ok((ext, roots))
    }
}

/// A tower holding a degree-k extension one level above `level`, reusing the
/// given tower when its next stage already has degree k, truncating and
/// re-extending otherwise.
pub(crate) fn extension_of(
    tower: &FieldTower,
    level: usize,
    k: usize,
) -> Result<(FieldTower, usize)> {
    if level + 1 < tower.levels() {
        if tower.0.stages[level + 1].degree() == k {
            return Ok((tower.clone(), level + 1));
        }
        // Rebuild from a truncated copy so the extension is deterministic.
        let truncated = truncate(tower, level);
        let ext = truncated.extend(k)?;
        return Ok((ext, level + 1));
    }
    Ok((tower.extend(k)?, level + 1))
}

fn truncate(tower: &FieldTower, level: usize) -> FieldTower {
    use crate::field::{Stage, TowerInner};
    use std::sync::Arc;
    let inner = &tower.0;
    let stages = inner.stages[..=level]
        .iter()
        .map(|s| Stage {
            modulus: s.modulus.clone(),
        })
        .collect();
    let fsizes = inner.fsizes[..=level + 1].to_vec();
    FieldTower(Arc::new(TowerInner {
        p: inner.p,
        m: inner.m,
        stages,
        fsizes,
    }))
}

impl fmt::Display for LPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::text::format_lpoly(self))
    }
}

impl fmt::Debug for LPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LPoly(level={}, {self})", self.level)
    }
}
