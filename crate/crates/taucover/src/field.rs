//! Finite field towers over F_p.
//!
//! A tower starts at F_q = F_p[x]/(m_0) with m_0 the smallest irreducible of
//! degree m under the base-q encoding order, and grows by explicit extension
//! steps, each defined by the smallest irreducible of the requested degree
//! over the level below. Level 0 is F_q itself; level k is the k-th
//! extension. Elements are nested coefficient vectors with trailing zeros
//! stripped at every depth, so structural equality is field equality.
//!
//! All moduli are chosen deterministically: candidates are compared as
//! base-q integer encodings with the low-degree digit least significant,
//! and the first irreducible wins. Two towers built with the same
//! parameters are therefore identical.

use crate::error::{Error, Result};
use std::fmt;
use std::sync::Arc;

/// Nested coefficient representation. `Leaf` holds an element of F_p;
/// a `Node` at depth d holds coefficients of depth d-1, low degree first,
/// trailing zeros stripped.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub(crate) enum Val {
    Leaf(u32),
    Node(Vec<Val>),
}

pub(crate) struct Stage {
    /// Monic modulus including its leading 1; coefficient depth equals the
    /// stage index.
    pub(crate) modulus: Vec<Val>,
}

impl Stage {
    pub(crate) fn degree(&self) -> usize {
        self.modulus.len() - 1
    }
}

pub(crate) struct TowerInner {
    pub(crate) p: u32,
    pub(crate) m: u32,
    pub(crate) stages: Vec<Stage>,
    /// fsizes[d] = number of elements of the depth-d field; fsizes[0] = p.
    pub(crate) fsizes: Vec<u64>,
}

/// A tower of finite fields, cheap to clone and immutable once built.
#[derive(Clone)]
pub struct FieldTower(pub(crate) Arc<TowerInner>);

/// An element of one level of a [`FieldTower`].
#[derive(Clone)]
pub struct FieldElement {
    pub(crate) tower: FieldTower,
    pub(crate) level: usize,
    pub(crate) val: Val,
}

const MAX_TOWER_SIZE: u64 = 1 << 32;

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl TowerInner {
    pub(crate) fn fsize(&self, depth: usize) -> u64 {
        self.fsizes[depth]
    }

    pub(crate) fn zero_val(&self, depth: usize) -> Val {
        if depth == 0 {
            Val::Leaf(0)
        } else {
            Val::Node(Vec::new())
        }
    }

    pub(crate) fn one_val(&self, depth: usize) -> Val {
        if depth == 0 {
            Val::Leaf(1)
        } else {
            Val::Node(vec![self.one_val(depth - 1)])
        }
    }

    pub(crate) fn is_zero_val(&self, v: &Val) -> bool {
        match v {
            Val::Leaf(c) => *c == 0,
            Val::Node(cs) => cs.is_empty(),
        }
    }

    fn norm(&self, depth: usize, mut coeffs: Vec<Val>) -> Val {
        debug_assert!(depth >= 1);
        while coeffs.last().is_some_and(|c| self.is_zero_val(c)) {
            coeffs.pop();
        }
        Val::Node(coeffs)
    }

    pub(crate) fn add_val(&self, depth: usize, a: &Val, b: &Val) -> Val {
        match (a, b) {
            (Val::Leaf(x), Val::Leaf(y)) => Val::Leaf((x + y) % self.p),
            (Val::Node(xs), Val::Node(ys)) => {
                let n = xs.len().max(ys.len());
                let zero = self.zero_val(depth - 1);
                let mut out = Vec::with_capacity(n);
                for i in 0..n {
                    let x = xs.get(i).unwrap_or(&zero);
                    let y = ys.get(i).unwrap_or(&zero);
                    out.push(self.add_val(depth - 1, x, y));
                }
                self.norm(depth, out)
            }
            _ => unreachable!("depth mismatch"),
        }
    }

    pub(crate) fn neg_val(&self, depth: usize, a: &Val) -> Val {
        match a {
            Val::Leaf(x) => Val::Leaf((self.p - x) % self.p),
            Val::Node(xs) => Val::Node(xs.iter().map(|c| self.neg_val(depth - 1, c)).collect()),
        }
    }

    pub(crate) fn sub_val(&self, depth: usize, a: &Val, b: &Val) -> Val {
        let nb = self.neg_val(depth, b);
        self.add_val(depth, a, &nb)
    }

    pub(crate) fn mul_val(&self, depth: usize, a: &Val, b: &Val) -> Val {
        match (a, b) {
            (Val::Leaf(x), Val::Leaf(y)) => {
                Val::Leaf(((*x as u64 * *y as u64) % self.p as u64) as u32)
            }
            (Val::Node(xs), Val::Node(ys)) => {
                if xs.is_empty() || ys.is_empty() {
                    return self.zero_val(depth);
                }
                let mut conv = vec![self.zero_val(depth - 1); xs.len() + ys.len() - 1];
                for (i, x) in xs.iter().enumerate() {
                    for (j, y) in ys.iter().enumerate() {
                        let t = self.mul_val(depth - 1, x, y);
                        conv[i + j] = self.add_val(depth - 1, &conv[i + j], &t);
                    }
                }
                let red = self.reduce_by_stage(depth, conv);
                self.norm(depth, red)
            }
            _ => unreachable!("depth mismatch"),
        }
    }

    /// Reduce a coefficient vector of depth-(d-1) entries by the stage d-1
    /// modulus (monic, so no inversions are needed).
    fn reduce_by_stage(&self, depth: usize, mut coeffs: Vec<Val>) -> Vec<Val> {
        let modulus = &self.stages[depth - 1].modulus;
        let deg = modulus.len() - 1;
        while coeffs.len() > deg {
            let lead = coeffs.pop().unwrap();
            if self.is_zero_val(&lead) {
                continue;
            }
            let base = coeffs.len() - deg;
            for i in 0..deg {
                let t = self.mul_val(depth - 1, &lead, &modulus[i]);
                coeffs[base + i] = self.sub_val(depth - 1, &coeffs[base + i], &t);
            }
        }
        coeffs
    }

    pub(crate) fn pow_val(&self, depth: usize, a: &Val, mut e: u64) -> Val {
        let mut base = a.clone();
        let mut acc = self.one_val(depth);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_val(depth, &acc, &base);
            }
            base = self.mul_val(depth, &base, &base);
            e >>= 1;
        }
        acc
    }

    pub(crate) fn inv_val(&self, depth: usize, a: &Val) -> Option<Val> {
        if self.is_zero_val(a) {
            return None;
        }
        match a {
            Val::Leaf(x) => {
                // Fermat inverse in F_p.
                let inv = self.pow_val(0, &Val::Leaf(*x), self.p as u64 - 2);
                Some(inv)
            }
            Val::Node(coeffs) => {
                // Extended Euclid against the stage modulus.
                let cd = depth - 1;
                let mut r0 = self.stages[cd].modulus.clone();
                let mut r1 = coeffs.clone();
                let mut t0: Vec<Val> = Vec::new();
                let mut t1 = vec![self.one_val(cd)];
                while !r1.is_empty() {
                    let (q, r) = self.pdivmod(cd, &r0, &r1).expect("divisor nonzero");
                    let qt1 = self.pmul(cd, &q, &t1);
                    let t2 = self.psub(cd, &t0, &qt1);
                    r0 = r1;
                    r1 = r;
                    t0 = t1;
                    t1 = t2;
                }
                // r0 = gcd; modulus irreducible and a nonzero, so deg r0 = 0.
                debug_assert_eq!(r0.len(), 1);
                let scale = self.inv_val(cd, &r0[0])?;
                let inv = t0.iter().map(|c| self.mul_val(cd, c, &scale)).collect();
                Some(self.norm(depth, inv))
            }
        }
    }

    // --- dense polynomial helpers over a coefficient depth ---

    pub(crate) fn pnorm(&self, cd: usize, coeffs: &mut Vec<Val>) {
        let _ = cd;
        while coeffs.last().is_some_and(|c| self.is_zero_val(c)) {
            coeffs.pop();
        }
    }

    pub(crate) fn padd(&self, cd: usize, a: &[Val], b: &[Val]) -> Vec<Val> {
        let n = a.len().max(b.len());
        let zero = self.zero_val(cd);
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let x = a.get(i).unwrap_or(&zero);
            let y = b.get(i).unwrap_or(&zero);
            out.push(self.add_val(cd, x, y));
        }
        self.pnorm(cd, &mut out);
        out
    }

    pub(crate) fn psub(&self, cd: usize, a: &[Val], b: &[Val]) -> Vec<Val> {
        let neg: Vec<Val> = b.iter().map(|c| self.neg_val(cd, c)).collect();
        self.padd(cd, a, &neg)
    }

    pub(crate) fn pmul(&self, cd: usize, a: &[Val], b: &[Val]) -> Vec<Val> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![self.zero_val(cd); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                let t = self.mul_val(cd, x, y);
                out[i + j] = self.add_val(cd, &out[i + j], &t);
            }
        }
        self.pnorm(cd, &mut out);
        out
    }

    /// Long division over the depth-cd field; the divisor need not be monic.
    pub(crate) fn pdivmod(&self, cd: usize, num: &[Val], den: &[Val]) -> Result<(Vec<Val>, Vec<Val>)> {
        if den.is_empty() {
            return Err(Error::DivisionByZero);
        }
        let lead_inv = self
            .inv_val(cd, den.last().unwrap())
            .ok_or(Error::DivisionByZero)?;
        let mut rem: Vec<Val> = num.to_vec();
        self.pnorm(cd, &mut rem);
        if rem.len() < den.len() {
            return Ok((Vec::new(), rem));
        }
        let mut quot = vec![self.zero_val(cd); rem.len() - den.len() + 1];
        while rem.len() >= den.len() {
            let lead = rem.last().unwrap().clone();
            if self.is_zero_val(&lead) {
                rem.pop();
                continue;
            }
            let c = self.mul_val(cd, &lead, &lead_inv);
            let shift = rem.len() - den.len();
            quot[shift] = c.clone();
            for i in 0..den.len() {
                let t = self.mul_val(cd, &c, &den[i]);
                rem[shift + i] = self.sub_val(cd, &rem[shift + i], &t);
            }
            self.pnorm(cd, &mut rem);
            if rem.is_empty() {
                break;
            }
        }
        self.pnorm(cd, &mut quot);
        Ok((quot, rem))
    }

    /// Monic gcd over the depth-cd field.
    pub(crate) fn pgcd(&self, cd: usize, a: &[Val], b: &[Val]) -> Vec<Val> {
        let mut r0: Vec<Val> = a.to_vec();
        let mut r1: Vec<Val> = b.to_vec();
        self.pnorm(cd, &mut r0);
        self.pnorm(cd, &mut r1);
        while !r1.is_empty() {
            let (_, r) = self.pdivmod(cd, &r0, &r1).expect("divisor nonzero");
            r0 = r1;
            r1 = r;
        }
        if let Some(lead) = r0.last() {
            let inv = self.inv_val(cd, lead).expect("lead nonzero");
            r0 = r0.iter().map(|c| self.mul_val(cd, c, &inv)).collect();
        }
        r0
    }

    pub(crate) fn peval(&self, cd: usize, poly: &[Val], x: &Val) -> Val {
        let mut acc = self.zero_val(cd);
        for c in poly.iter().rev() {
            acc = self.mul_val(cd, &acc, x);
            acc = self.add_val(cd, &acc, c);
        }
        acc
    }

    // --- encodings ---

    pub(crate) fn encode_val(&self, depth: usize, v: &Val) -> u64 {
        match v {
            Val::Leaf(c) => *c as u64,
            Val::Node(cs) => {
                let radix = self.fsize(depth - 1);
                let mut acc = 0u64;
                for c in cs.iter().rev() {
                    acc = acc * radix + self.encode_val(depth - 1, c);
                }
                acc
            }
        }
    }

    pub(crate) fn decode_val(&self, depth: usize, mut idx: u64) -> Val {
        if depth == 0 {
            debug_assert!(idx < self.p as u64);
            return Val::Leaf(idx as u32);
        }
        let radix = self.fsize(depth - 1);
        let deg = self.stages[depth - 1].degree();
        let mut coeffs = Vec::with_capacity(deg);
        for _ in 0..deg {
            coeffs.push(self.decode_val(depth - 1, idx % radix));
            idx /= radix;
        }
        debug_assert_eq!(idx, 0);
        self.norm(depth, coeffs)
    }

    pub(crate) fn embed_val(&self, from_depth: usize, to_depth: usize, v: &Val) -> Val {
        debug_assert!(to_depth >= from_depth);
        if self.is_zero_val(v) {
            return self.zero_val(to_depth);
        }
        let mut cur = v.clone();
        for _ in from_depth..to_depth {
            cur = Val::Node(vec![cur]);
        }
        cur
    }

    // --- irreducibility and deterministic modulus selection ---

    /// Candidate polys of a fixed degree over the depth-cd field, iterated in
    /// base-q encoding order (low-degree digit least significant).
    fn nth_monic(&self, cd: usize, deg: usize, mut idx: u64) -> Vec<Val> {
        let radix = self.fsize(cd);
        let mut coeffs = Vec::with_capacity(deg + 1);
        for _ in 0..deg {
            coeffs.push(self.decode_val(cd, idx % radix));
            idx /= radix;
        }
        coeffs.push(self.one_val(cd));
        coeffs
    }

    pub(crate) fn is_irreducible_at(&self, cd: usize, poly: &[Val]) -> bool {
        let deg = poly.len() - 1;
        debug_assert!(deg >= 1);
        if deg == 1 {
            return true;
        }
        // Root scan rules out linear factors.
        let n = self.fsize(cd);
        for i in 0..n {
            let x = self.decode_val(cd, i);
            if self.is_zero_val(&self.peval(cd, poly, &x)) {
                return false;
            }
        }
        if deg <= 3 {
            return true;
        }
        // Trial division by every monic of degree 2..=deg/2. A reducible
        // polynomial with no roots has a factor in that range.
        for d in 2..=deg / 2 {
            let count = self.fsize(cd).pow(d as u32);
            for idx in 0..count {
                let cand = self.nth_monic(cd, d, idx);
                let (_, r) = self.pdivmod(cd, poly, &cand).expect("monic divisor");
                if r.is_empty() {
                    return false;
                }
            }
        }
        true
    }

    pub(crate) fn smallest_irreducible_at(&self, cd: usize, deg: usize) -> Vec<Val> {
        let count = self.fsize(cd).pow(deg as u32);
        for idx in 0..count {
            let cand = self.nth_monic(cd, deg, idx);
            if self.is_irreducible_at(cd, &cand) {
                return cand;
            }
        }
        unreachable!("an irreducible of every degree exists over a finite field")
    }

    /// Index of the first stage of degree >= 2, which owns the symbol "w".
    fn first_nontrivial_stage(&self) -> Option<usize> {
        self.stages.iter().position(|s| s.degree() >= 2)
    }

    pub(crate) fn stage_symbol(&self, stage: usize) -> Option<String> {
        if self.stages[stage].degree() < 2 {
            return None;
        }
        match self.first_nontrivial_stage() {
            Some(first) if first == stage => Some("w".to_string()),
            _ => Some(format!("w{stage}")),
        }
    }

    pub(crate) fn compatible_prefix(&self, other: &TowerInner, level: usize) -> bool {
        if self.p != other.p || self.m != other.m {
            return false;
        }
        if level >= self.stages.len() || level >= other.stages.len() {
            return false;
        }
        (0..=level).all(|s| self.stages[s].modulus == other.stages[s].modulus)
    }
}

impl FieldTower {
    /// Builds F_q = F_p[x]/(m_0) with m_0 the smallest irreducible of
    /// degree m. The result has a single level, level 0 = F_q.
    pub fn new(p: u32, m: u32) -> Result<FieldTower> {
        if !is_prime(p) {
            return Err(Error::Invalid(format!("p = {p} is not prime")));
        }
        if m == 0 {
            return Err(Error::Invalid("m must be at least 1".into()));
        }
        let q = (p as u64)
            .checked_pow(m)
            .filter(|&q| q <= MAX_TOWER_SIZE)
            .ok_or_else(|| Error::CapExceeded(format!("q = {p}^{m} too large")))?;
        let mut inner = TowerInner {
            p,
            m,
            stages: Vec::new(),
            fsizes: vec![p as u64],
        };
        let modulus = inner.smallest_irreducible_at(0, m as usize);
        inner.stages.push(Stage { modulus });
        inner.fsizes.push(q);
        Ok(FieldTower(Arc::new(inner)))
    }

    /// Appends one extension of degree k over the current top level, with
    /// the smallest irreducible of degree k as modulus. Returns a new tower;
    /// elements of the old one remain valid in it.
    pub fn extend(&self, k: usize) -> Result<FieldTower> {
        if k == 0 {
            return Err(Error::Invalid("extension degree must be at least 1".into()));
        }
        let inner = &self.0;
        let top = inner.fsizes.last().copied().unwrap();
        let new_size = top
            .checked_pow(k as u32)
            .filter(|&s| s <= MAX_TOWER_SIZE)
            .ok_or_else(|| {
                Error::CapExceeded(format!("extension of degree {k} exceeds the tower size limit"))
            })?;
        let cd = inner.stages.len();
        let modulus = inner.smallest_irreducible_at(cd, k);
        let mut stages: Vec<Stage> = inner
            .stages
            .iter()
            .map(|s| Stage {
                modulus: s.modulus.clone(),
            })
            .collect();
        stages.push(Stage { modulus });
        let mut fsizes = inner.fsizes.clone();
        fsizes.push(new_size);
        Ok(FieldTower(Arc::new(TowerInner {
            p: inner.p,
            m: inner.m,
            stages,
            fsizes,
        })))
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn m(&self) -> u32 {
        self.0.m
    }

    /// The base field size q = p^m. Twists and j-invariants use this q even
    /// when elements live higher up the tower.
    pub fn q(&self) -> u64 {
        self.0.fsizes[1]
    }

    /// Number of levels; level indices run 0..levels().
    pub fn levels(&self) -> usize {
        self.0.stages.len()
    }

    pub fn top_level(&self) -> usize {
        self.levels() - 1
    }

    /// Number of elements at the given level.
    pub fn size(&self, level: usize) -> u64 {
        self.0.fsizes[level + 1]
    }

    /// Extension degree of the level over F_q.
    pub fn degree_over_q(&self, level: usize) -> u64 {
        (1..=level)
            .map(|s| self.0.stages[s].degree() as u64)
            .product()
    }

    pub fn zero(&self, level: usize) -> FieldElement {
        self.element(level, self.0.zero_val(level + 1))
    }

    pub fn one(&self, level: usize) -> FieldElement {
        self.element(level, self.0.one_val(level + 1))
    }

    /// Constant from the prime field.
    pub fn from_prime(&self, level: usize, c: u32) -> FieldElement {
        let leaf = Val::Leaf(c % self.0.p);
        let val = self.0.embed_val(0, level + 1, &leaf);
        self.element(level, val)
    }

    /// Class of the stage variable at the given level, if the stage is a
    /// proper extension (degree >= 2).
    pub fn generator(&self, level: usize) -> Option<FieldElement> {
        if self.0.stages[level].degree() < 2 {
            return None;
        }
        let below = level; // depth of the coefficients
        let val = Val::Node(vec![self.0.zero_val(below), self.0.one_val(below)]);
        Some(self.element(level, val))
    }

    pub fn from_index(&self, level: usize, idx: u64) -> FieldElement {
        assert!(idx < self.size(level), "index out of range");
        self.element(level, self.0.decode_val(level + 1, idx))
    }

    /// All elements of the level in canonical (encoding) order.
    pub fn elements(&self, level: usize) -> Vec<FieldElement> {
        (0..self.size(level))
            .map(|i| self.from_index(level, i))
            .collect()
    }

    /// Inverse of [`FieldTower::embed`]: projects an element down to a lower
    /// level, erroring when it does not lie in the embedded image.
    pub fn project(&self, x: &FieldElement, level: usize) -> Result<FieldElement> {
        if !self.compatible_with(&x.tower, level) {
            return Err(Error::FieldMismatch("element from a different tower".into()));
        }
        if level > x.level {
            return Err(Error::FieldMismatch(format!(
                "cannot project level {} up to level {}",
                x.level, level
            )));
        }
        let mut val = x.val.clone();
        for _ in level..x.level {
            if self.0.is_zero_val(&val) {
                return Ok(self.zero(level));
            }
            val = match val {
                Val::Node(mut cs) if cs.len() == 1 => cs.pop().unwrap(),
                _ => {
                    return Err(Error::FieldMismatch(
                        "element does not lie in the embedded subfield".into(),
                    ))
                }
            };
        }
        Ok(self.element(level, val))
    }

    /// Coefficient-constant inclusion into a higher level of the same tower.
    pub fn embed(&self, x: &FieldElement, level: usize) -> Result<FieldElement> {
        if !self.compatible_with(&x.tower, x.level) {
            return Err(Error::FieldMismatch("element from a different tower".into()));
        }
        if level < x.level {
            return Err(Error::FieldMismatch(format!(
                "cannot embed level {} into lower level {}",
                x.level, level
            )));
        }
        let val = self.0.embed_val(x.level + 1, level + 1, &x.val);
        Ok(self.element(level, val))
    }

    /// The smallest irreducible of the given degree over a level, as a dense
    /// monic coefficient vector wrapped in an [`crate::apoly::LPoly`].
    pub fn smallest_irreducible(&self, level: usize, deg: usize) -> Result<crate::apoly::LPoly> {
        if deg == 0 {
            return Err(Error::Invalid("degree must be at least 1".into()));
        }
        let coeffs = self.0.smallest_irreducible_at(level + 1, deg);
        Ok(crate::apoly::LPoly::from_vals(self.clone(), level, coeffs))
    }

    pub(crate) fn element(&self, level: usize, val: Val) -> FieldElement {
        assert!(level < self.levels(), "level out of range");
        FieldElement {
            tower: self.clone(),
            level,
            val,
        }
    }

    pub(crate) fn compatible_with(&self, other: &FieldTower, level: usize) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.compatible_prefix(&other.0, level)
    }

    /// Stage moduli above F_q, printed in the element grammar of the level
    /// below each stage. Used for serialization of tower descriptions.
    pub fn extension_moduli(&self) -> Vec<String> {
        (1..self.levels())
            .map(|s| {
                let lp = crate::apoly::LPoly::from_vals(
                    self.clone(),
                    s - 1,
                    self.0.stages[s].modulus.clone(),
                );
                lp.to_string()
            })
            .collect()
    }
}

impl fmt::Debug for FieldTower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FieldTower(p={}, m={}, degrees={:?})",
            self.0.p,
            self.0.m,
            self.0.stages.iter().map(|s| s.degree()).collect::<Vec<_>>()
        )
    }
}

impl PartialEq for FieldTower {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p
                && self.0.m == other.0.m
                && self.0.stages.len() == other.0.stages.len()
                && self
                    .0
                    .stages
                    .iter()
                    .zip(other.0.stages.iter())
                    .all(|(a, b)| a.modulus == b.modulus))
    }
}

impl Eq for FieldTower {}

impl FieldElement {
    pub fn level(&self) -> usize {
        self.level
    }

    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    pub fn is_zero(&self) -> bool {
        self.tower.0.is_zero_val(&self.val)
    }

    pub fn is_one(&self) -> bool {
        self.val == self.tower.0.one_val(self.level + 1)
    }

    /// Base-q integer encoding; the canonical total order on the level.
    pub fn encode(&self) -> u64 {
        self.tower.0.encode_val(self.level + 1, &self.val)
    }

    fn check_match(&self, other: &FieldElement) -> Result<()> {
        if self.level != other.level {
            return Err(Error::FieldMismatch(format!(
                "levels {} and {} (embed first)",
                self.level, other.level
            )));
        }
        if !self.tower.compatible_with(&other.tower, self.level) {
            return Err(Error::FieldMismatch("different towers".into()));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check_match(other)?;
        Ok(self
            .tower
            .element(self.level, self.tower.0.add_val(self.level + 1, &self.val, &other.val)))
    }

    pub fn checked_sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check_match(other)?;
        Ok(self
            .tower
            .element(self.level, self.tower.0.sub_val(self.level + 1, &self.val, &other.val)))
    }

    pub fn checked_mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check_match(other)?;
        Ok(self
            .tower
            .element(self.level, self.tower.0.mul_val(self.level + 1, &self.val, &other.val)))
    }

    pub fn checked_div(&self, other: &FieldElement) -> Result<FieldElement> {
        let inv = other.inv()?;
        self.checked_mul(&inv)
    }

    pub fn inv(&self) -> Result<FieldElement> {
        self.tower
            .0
            .inv_val(self.level + 1, &self.val)
            .map(|v| self.tower.element(self.level, v))
            .ok_or(Error::DivisionByZero)
    }

    pub fn neg(&self) -> FieldElement {
        self.tower
            .element(self.level, self.tower.0.neg_val(self.level + 1, &self.val))
    }

    pub fn pow(&self, e: u64) -> FieldElement {
        self.tower
            .element(self.level, self.tower.0.pow_val(self.level + 1, &self.val, e))
    }

    /// x^(q^i) with q the tower's base field size.
    pub fn frobenius(&self, i: usize) -> FieldElement {
        let q = self.tower.q();
        let mut cur = self.clone();
        for _ in 0..i {
            cur = cur.pow(q);
        }
        cur
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.level == other.level
            && self.val == other.val
            && self.tower.compatible_with(&other.tower, self.level)
    }
}

impl Eq for FieldElement {}

impl std::hash::Hash for FieldElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.tower.0.p.hash(state);
        self.tower.0.m.hash(state);
        self.level.hash(state);
        self.val.hash(state);
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElement(level={}, {})", self.level, self)
    }
}

macro_rules! element_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl std::ops::$trait for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.$checked(rhs).expect("field element operands must match")
            }
        }
        impl std::ops::$trait for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
    };
}

element_binop!(Add, add, checked_add);
element_binop!(Sub, sub, checked_sub);
element_binop!(Mul, mul, checked_mul);
element_binop!(Div, div, checked_div);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tower_sizes() {
        let f4 = FieldTower::new(2, 2).unwrap();
        assert_eq!(f4.q(), 4);
        assert_eq!(f4.size(0), 4);
        let f16 = f4.extend(2).unwrap();
        assert_eq!(f16.size(1), 16);
        assert_eq!(f16.degree_over_q(1), 2);

        let f2 = FieldTower::new(2, 1).unwrap();
        assert_eq!(f2.q(), 2);
        assert_eq!(f2.size(0), 2);
        let f4_over_f2 = f2.extend(2).unwrap();
        assert_eq!(f4_over_f2.size(1), 4);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(FieldTower::new(4, 1).is_err());
        assert!(FieldTower::new(2, 0).is_err());
        let f2 = FieldTower::new(2, 1).unwrap();
        assert!(f2.extend(0).is_err());
    }

    #[test]
    fn degree_one_extension_is_isomorphic_copy() {
        let f4 = FieldTower::new(2, 2).unwrap();
        let ext = f4.extend(1).unwrap();
        assert_eq!(ext.size(1), 4);
        // Arithmetic agrees with the base through the embedding.
        for i in 0..4 {
            for j in 0..4 {
                let a = f4.from_index(0, i);
                let b = f4.from_index(0, j);
                let ea = ext.embed(&a, 1).unwrap();
                let eb = ext.embed(&b, 1).unwrap();
                let prod = ext.embed(&(&a * &b), 1).unwrap();
                assert_eq!(&ea * &eb, prod);
            }
        }
    }

    #[test]
    fn field_axioms_on_f16() {
        let tower = FieldTower::new(2, 2).unwrap().extend(2).unwrap();
        let elems = tower.elements(1);
        assert_eq!(elems.len(), 16);
        // Exhaustive associativity and distributivity on the 16-element level.
        for a in &elems {
            for b in &elems {
                for c in &elems {
                    let ab_c = &(a * b) * c;
                    let a_bc = a * &(b * c);
                    assert_eq!(ab_c, a_bc);
                    let left = a * &(b + c);
                    let right = &(a * b) + &(a * c);
                    assert_eq!(left, right);
                }
            }
        }
        // Inverses.
        for a in &elems {
            if a.is_zero() {
                assert!(a.inv().is_err());
            } else {
                assert!((&a.inv().unwrap() * a).is_one());
            }
        }
    }

    #[test]
    fn frobenius_is_q_power_homomorphism() {
        let tower = FieldTower::new(2, 2).unwrap().extend(2).unwrap();
        let elems = tower.elements(1);
        for a in &elems {
            for b in &elems {
                let s = a + b;
                assert_eq!(s.frobenius(1), &a.frobenius(1) + &b.frobenius(1));
                let p = a * b;
                assert_eq!(p.frobenius(1), &a.frobenius(1) * &b.frobenius(1));
            }
            assert_eq!(a.frobenius(1), a.pow(4));
            assert_eq!(a.frobenius(2), a.pow(16));
        }
    }

    #[test]
    fn frobenius_fixed_set_is_embedded_base() {
        // Fixed points of x -> x^q at level 1 are exactly the embedded F_q.
        let tower = FieldTower::new(2, 2).unwrap().extend(2).unwrap();
        let base: Vec<FieldElement> = tower
            .elements(0)
            .iter()
            .map(|x| tower.embed(x, 1).unwrap())
            .collect();
        let fixed: Vec<FieldElement> = tower
            .elements(1)
            .into_iter()
            .filter(|x| x.frobenius(1) == *x)
            .collect();
        assert_eq!(fixed.len(), 4);
        for x in &fixed {
            assert!(base.contains(x));
        }
    }

    #[test]
    fn embedding_respects_operations() {
        let tower = FieldTower::new(3, 2).unwrap().extend(2).unwrap();
        let elems = tower.elements(0);
        for a in &elems {
            for b in &elems {
                let ea = tower.embed(a, 1).unwrap();
                let eb = tower.embed(b, 1).unwrap();
                assert_eq!(&ea + &eb, tower.embed(&(a + b), 1).unwrap());
                assert_eq!(&ea * &eb, tower.embed(&(a * b), 1).unwrap());
            }
        }
    }

    #[test]
    fn mixed_level_arithmetic_rejected() {
        let tower = FieldTower::new(2, 2).unwrap().extend(2).unwrap();
        let a = tower.one(0);
        let b = tower.one(1);
        assert!(a.checked_add(&b).is_err());
    }

    #[test]
    fn encoding_round_trip() {
        let tower = FieldTower::new(5, 1).unwrap().extend(2).unwrap();
        for i in 0..tower.size(1) {
            let x = tower.from_index(1, i);
            assert_eq!(x.encode(), i);
        }
    }

    #[test]
    fn generator_satisfies_stage_modulus() {
        // F_9 = F_3[w]/(w^2+1): generator squares to -1.
        let f9 = FieldTower::new(3, 2).unwrap();
        let w = f9.generator(0).unwrap();
        let minus_one = f9.from_prime(0, 2);
        assert_eq!(w.pow(2), minus_one);
    }
}
