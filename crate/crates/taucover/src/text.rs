//! The textual grammar shared by the CLI and the Display impls.
//!
//! Field elements print as polynomials in the stage generators: the first
//! proper extension stage owns the symbol `w`, every later stage s of degree
//! at least 2 owns `w{s}`, and degree-1 stages are silent. Terms run from
//! high to low power, zero terms are dropped, a coefficient 1 is dropped,
//! and a multi-term coefficient next to a power is parenthesized, so
//! `(w+1)*w1+w+1` is an element of F_16 over F_4. Polynomials in T (the ring
//! A), X (level polynomials), and t (twisted polynomials) reuse the same
//! term conventions around their own variable.
//!
//! Parsing accepts the canonical form plus harmless freedom: whitespace,
//! `-`, reordered terms, parenthesized subexpressions. Everything is
//! evaluated directly in the target structure, so parse(format(x)) == x is
//! an identity the tests pin down.

use crate::apoly::{APoly, LPoly};
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldTower, TowerInner, Val};
use crate::ore::OrePoly;
use std::fmt;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(u64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let mut toks = Vec::new();
    let bytes = s.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                toks.push(Tok::Plus);
                i += 1;
            }
            '-' => {
                toks.push(Tok::Minus);
                i += 1;
            }
            '*' => {
                toks.push(Tok::Star);
                i += 1;
            }
            '^' => {
                toks.push(Tok::Caret);
                i += 1;
            }
            '(' => {
                toks.push(Tok::LParen);
                i += 1;
            }
            ')' => {
                toks.push(Tok::RParen);
                i += 1;
            }
            '[' => {
                toks.push(Tok::LBracket);
                i += 1;
            }
            ']' => {
                toks.push(Tok::RBracket);
                i += 1;
            }
            ',' => {
                toks.push(Tok::Comma);
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: u64 = s[start..i]
                    .parse()
                    .map_err(|_| Error::Parse(format!("integer too large in {s:?}")))?;
                toks.push(Tok::Int(n));
            }
            'a'..='z' | 'A'..='Z' => {
                let start = i;
                i += 1;
                while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                toks.push(Tok::Ident(s[start..i].to_string()));
            }
            _ => return Err(Error::Parse(format!("unexpected character {c:?} in {s:?}"))),
        }
    }
    Ok(toks)
}

/// Value domain for the expression parser: a commutative-enough ring with
/// named generators. Multiplication is evaluated left to right, which keeps
/// twisted polynomials honest.
trait ExprCtx {
    type V: Clone;
    fn int(&self, n: u64) -> Result<Self::V>;
    fn sym(&self, name: &str) -> Result<Self::V>;
    fn one(&self) -> Self::V;
    fn add(&self, a: &Self::V, b: &Self::V) -> Result<Self::V>;
    fn sub(&self, a: &Self::V, b: &Self::V) -> Result<Self::V>;
    fn mul(&self, a: &Self::V, b: &Self::V) -> Result<Self::V>;
}

struct Parser<'a, C: ExprCtx> {
    toks: &'a [Tok],
    pos: usize,
    ctx: &'a C,
}

impl<'a, C: ExprCtx> Parser<'a, C> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, t: Tok) -> Result<()> {
        match self.bump() {
            Some(got) if got == t => Ok(()),
            got => Err(Error::Parse(format!("expected {t:?}, found {got:?}"))),
        }
    }

    fn expr(&mut self) -> Result<C::V> {
        let negate = matches!(self.peek(), Some(Tok::Minus));
        if negate {
            self.bump();
        }
        let mut acc = self.term()?;
        if negate {
            let zero = self.ctx.sub(&acc, &acc)?;
            acc = self.ctx.sub(&zero, &acc)?;
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    let t = self.term()?;
                    acc = self.ctx.add(&acc, &t)?;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    let t = self.term()?;
                    acc = self.ctx.sub(&acc, &t)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<C::V> {
        let mut acc = self.factor()?;
        while matches!(self.peek(), Some(Tok::Star)) {
            self.bump();
            let f = self.factor()?;
            acc = self.ctx.mul(&acc, &f)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<C::V> {
        let base = self.atom()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.bump();
            let e = match self.bump() {
                Some(Tok::Int(n)) => n,
                got => return Err(Error::Parse(format!("expected exponent, found {got:?}"))),
            };
            if e > 4096 {
                return Err(Error::Parse(format!("exponent {e} is unreasonably large")));
            }
            let mut acc = self.ctx.one();
            for _ in 0..e {
                acc = self.ctx.mul(&acc, &base)?;
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<C::V> {
        match self.bump() {
            Some(Tok::Int(n)) => self.ctx.int(n),
            Some(Tok::Ident(name)) => self.ctx.sym(&name),
            Some(Tok::LParen) => {
                let v = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(v)
            }
            got => Err(Error::Parse(format!("expected a value, found {got:?}"))),
        }
    }
}

fn parse_with<C: ExprCtx>(ctx: &C, s: &str) -> Result<C::V> {
    let toks = tokenize(s)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty input".into()));
    }
    let mut p = Parser {
        toks: &toks,
        pos: 0,
        ctx,
    };
    let v = p.expr()?;
    if p.pos != toks.len() {
        return Err(Error::Parse(format!(
            "trailing input after position {} in {s:?}",
            p.pos
        )));
    }
    Ok(v)
}

/// Looks up a stage generator symbol at or below `level`, embedded to
/// `level`. Accepts "w" for the first proper extension stage and "w{s}"
/// for stage s.
fn resolve_symbol(tower: &FieldTower, level: usize, name: &str) -> Result<FieldElement> {
    let inner = &tower.0;
    for stage in 0..=level {
        if let Some(sym) = inner.stage_symbol(stage) {
            if sym == name {
                let gen = tower
                    .generator(stage)
                    .expect("stage with a symbol has degree >= 2");
                return tower.embed(&gen, level);
            }
        }
    }
    Err(Error::Parse(format!(
        "unknown symbol {name:?} at level {level}"
    )))
}

struct ElemCtx<'t> {
    tower: &'t FieldTower,
    level: usize,
}

impl ExprCtx for ElemCtx<'_> {
    type V = FieldElement;

    fn int(&self, n: u64) -> Result<FieldElement> {
        Ok(self
            .tower
            .from_prime(self.level, (n % self.tower.p() as u64) as u32))
    }

    fn sym(&self, name: &str) -> Result<FieldElement> {
        resolve_symbol(self.tower, self.level, name)
    }

    fn one(&self) -> FieldElement {
        self.tower.one(self.level)
    }

    fn add(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        a.checked_add(b)
    }

    fn sub(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        a.checked_sub(b)
    }

    fn mul(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        a.checked_mul(b)
    }
}

struct APolyCtx<'t> {
    tower: &'t FieldTower,
}

impl ExprCtx for APolyCtx<'_> {
    type V = APoly;

    fn int(&self, n: u64) -> Result<APoly> {
        let c = self
            .tower
            .from_prime(0, (n % self.tower.p() as u64) as u32);
        APoly::constant(&c)
    }

    fn sym(&self, name: &str) -> Result<APoly> {
        if name == "T" {
            return Ok(APoly::t(self.tower));
        }
        let c = resolve_symbol(self.tower, 0, name)?;
        APoly::constant(&c)
    }

    fn one(&self) -> APoly {
        APoly::one(self.tower)
    }

    fn add(&self, a: &APoly, b: &APoly) -> Result<APoly> {
        a.checked_add(b)
    }

    fn sub(&self, a: &APoly, b: &APoly) -> Result<APoly> {
        a.checked_sub(b)
    }

    fn mul(&self, a: &APoly, b: &APoly) -> Result<APoly> {
        a.checked_mul(b)
    }
}

struct LPolyCtx<'t> {
    tower: &'t FieldTower,
    level: usize,
}

impl ExprCtx for LPolyCtx<'_> {
    type V = LPoly;

    fn int(&self, n: u64) -> Result<LPoly> {
        let c = self
            .tower
            .from_prime(self.level, (n % self.tower.p() as u64) as u32);
        LPoly::from_coeffs(&[c])
    }

    fn sym(&self, name: &str) -> Result<LPoly> {
        if name == "X" {
            let zero = self.tower.zero(self.level);
            let one = self.tower.one(self.level);
            return LPoly::from_coeffs(&[zero, one]);
        }
        let c = resolve_symbol(self.tower, self.level, name)?;
        LPoly::from_coeffs(&[c])
    }

    fn one(&self) -> LPoly {
        LPoly::from_coeffs(&[self.tower.one(self.level)]).expect("nonempty")
    }

    fn add(&self, a: &LPoly, b: &LPoly) -> Result<LPoly> {
        a.checked_add(b)
    }

    fn sub(&self, a: &LPoly, b: &LPoly) -> Result<LPoly> {
        a.checked_sub(b)
    }

    fn mul(&self, a: &LPoly, b: &LPoly) -> Result<LPoly> {
        a.checked_mul(b)
    }
}

struct OreCtx<'t> {
    tower: &'t FieldTower,
    level: usize,
}

impl ExprCtx for OreCtx<'_> {
    type V = OrePoly;

    fn int(&self, n: u64) -> Result<OrePoly> {
        let c = self
            .tower
            .from_prime(self.level, (n % self.tower.p() as u64) as u32);
        Ok(OrePoly::constant(&c))
    }

    fn sym(&self, name: &str) -> Result<OrePoly> {
        if name == "t" {
            return Ok(OrePoly::tau(self.tower, self.level));
        }
        let c = resolve_symbol(self.tower, self.level, name)?;
        Ok(OrePoly::constant(&c))
    }

    fn one(&self) -> OrePoly {
        OrePoly::one(self.tower, self.level)
    }

    fn add(&self, a: &OrePoly, b: &OrePoly) -> Result<OrePoly> {
        a.checked_add(b)
    }

    fn sub(&self, a: &OrePoly, b: &OrePoly) -> Result<OrePoly> {
        a.checked_sub(b)
    }

    fn mul(&self, a: &OrePoly, b: &OrePoly) -> Result<OrePoly> {
        a.checked_mul(b)
    }
}

/// Parses a field element at a level of the tower.
pub fn parse_element(tower: &FieldTower, level: usize, s: &str) -> Result<FieldElement> {
    if level >= tower.levels() {
        return Err(Error::Invalid(format!(
            "level {level} out of range; the tower has {} levels",
            tower.levels()
        )));
    }
    parse_with(&ElemCtx { tower, level }, s)
}

/// Parses an element of A = F_q[T].
pub fn parse_apoly(tower: &FieldTower, s: &str) -> Result<APoly> {
    parse_with(&APolyCtx { tower }, s)
}

/// Parses a polynomial in X over a tower level.
pub fn parse_lpoly(tower: &FieldTower, level: usize, s: &str) -> Result<LPoly> {
    if level >= tower.levels() {
        return Err(Error::Invalid(format!(
            "level {level} out of range; the tower has {} levels",
            tower.levels()
        )));
    }
    parse_with(&LPolyCtx { tower, level }, s)
}

/// Parses a twisted polynomial in t over a tower level.
pub fn parse_ore(tower: &FieldTower, level: usize, s: &str) -> Result<OrePoly> {
    if level >= tower.levels() {
        return Err(Error::Invalid(format!(
            "level {level} out of range; the tower has {} levels",
            tower.levels()
        )));
    }
    parse_with(&OreCtx { tower, level }, s)
}

/// Parses a 2x2 matrix [[a,b],[c,d]] with entries in A = F_q[T].
pub fn parse_mat2(tower: &FieldTower, s: &str) -> Result<[APoly; 4]> {
    let toks = tokenize(s)?;
    let mut pos = 0;
    let expect = |pos: &mut usize, want: Tok| -> Result<()> {
        match toks.get(*pos) {
            Some(got) if *got == want => {
                *pos += 1;
                Ok(())
            }
            got => Err(Error::Parse(format!("expected {want:?}, found {got:?}"))),
        }
    };
    // Scans one entry expression up to the next comma or close bracket at
    // depth 0, then parses it with the A-polynomial grammar.
    let entry = |pos: &mut usize| -> Result<APoly> {
        let start = *pos;
        let mut depth = 0usize;
        while let Some(t) = toks.get(*pos) {
            match t {
                Tok::LParen | Tok::LBracket => depth += 1,
                Tok::RParen => {
                    if depth == 0 {
                        return Err(Error::Parse("unbalanced parenthesis".into()));
                    }
                    depth -= 1;
                }
                Tok::RBracket if depth == 0 => break,
                Tok::RBracket => depth -= 1,
                Tok::Comma if depth == 0 => break,
                _ => {}
            }
            *pos += 1;
        }
        if *pos == start {
            return Err(Error::Parse("empty matrix entry".into()));
        }
        let ctx = APolyCtx { tower };
        let mut p = Parser {
            toks: &toks[start..*pos],
            pos: 0,
            ctx: &ctx,
        };
        let v = p.expr()?;
        if p.pos != *pos - start {
            return Err(Error::Parse("trailing input in matrix entry".into()));
        }
        Ok(v)
    };
    expect(&mut pos, Tok::LBracket)?;
    expect(&mut pos, Tok::LBracket)?;
    let a = entry(&mut pos)?;
    expect(&mut pos, Tok::Comma)?;
    let b = entry(&mut pos)?;
    expect(&mut pos, Tok::RBracket)?;
    expect(&mut pos, Tok::Comma)?;
    expect(&mut pos, Tok::LBracket)?;
    let c = entry(&mut pos)?;
    expect(&mut pos, Tok::Comma)?;
    let d = entry(&mut pos)?;
    expect(&mut pos, Tok::RBracket)?;
    expect(&mut pos, Tok::RBracket)?;
    if pos != toks.len() {
        return Err(Error::Parse("trailing input after matrix".into()));
    }
    Ok([a, b, c, d])
}

pub fn format_mat2(entries: &[String; 4]) -> String {
    format!(
        "[[{},{}],[{},{}]]",
        entries[0], entries[1], entries[2], entries[3]
    )
}

// --- formatting ---

fn format_val(inner: &TowerInner, depth: usize, v: &Val) -> String {
    match v {
        Val::Leaf(c) => c.to_string(),
        Val::Node(cs) => {
            let stage = depth - 1;
            match inner.stage_symbol(stage) {
                None => match cs.first() {
                    Some(c) => format_val(inner, depth - 1, c),
                    None => "0".to_string(),
                },
                Some(sym) => {
                    let mut terms = Vec::new();
                    for i in (0..cs.len()).rev() {
                        let c = &cs[i];
                        if inner.is_zero_val(c) {
                            continue;
                        }
                        if i == 0 {
                            terms.push(format_val(inner, depth - 1, c));
                            continue;
                        }
                        let pow = if i == 1 {
                            sym.clone()
                        } else {
                            format!("{sym}^{i}")
                        };
                        if *c == inner.one_val(depth - 1) {
                            terms.push(pow);
                        } else {
                            let cs_str = format_val(inner, depth - 1, c);
                            if cs_str.contains('+') {
                                terms.push(format!("({cs_str})*{pow}"));
                            } else {
                                terms.push(format!("{cs_str}*{pow}"));
                            }
                        }
                    }
                    if terms.is_empty() {
                        "0".to_string()
                    } else {
                        terms.join("+")
                    }
                }
            }
        }
    }
}

pub(crate) fn format_element(e: &FieldElement) -> String {
    format_val(&e.tower.0, e.level + 1, &e.val)
}

/// Canonical term list around a variable: high power first, zero terms
/// dropped, unit coefficients dropped, multi-term coefficients wrapped.
fn format_terms(inner: &TowerInner, cd: usize, coeffs: &[Val], var: &str) -> String {
    let mut terms = Vec::new();
    for i in (0..coeffs.len()).rev() {
        let c = &coeffs[i];
        if inner.is_zero_val(c) {
            continue;
        }
        if i == 0 {
            terms.push(format_val(inner, cd, c));
            continue;
        }
        let pow = if i == 1 {
            var.to_string()
        } else {
            format!("{var}^{i}")
        };
        if *c == inner.one_val(cd) {
            terms.push(pow);
        } else {
            let cs = format_val(inner, cd, c);
            if cs.contains('+') {
                terms.push(format!("({cs})*{pow}"));
            } else {
                terms.push(format!("{cs}*{pow}"));
            }
        }
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join("+")
    }
}

pub(crate) fn format_apoly(p: &APoly) -> String {
    format_terms(&p.tower.0, 1, &p.coeffs, "T")
}

pub(crate) fn format_lpoly(p: &LPoly) -> String {
    format_terms(&p.tower.0, p.level + 1, &p.coeffs, "X")
}

pub(crate) fn format_ore(p: &OrePoly) -> String {
    format_terms(&p.tower.0, p.level + 1, &p.coeffs, "t")
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_element(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn element_strings_on_prime_field() {
        let f5 = FieldTower::new(5, 1).unwrap();
        for i in 0..5 {
            let x = f5.from_index(0, i);
            assert_eq!(x.to_string(), i.to_string());
            assert_eq!(parse_element(&f5, 0, &x.to_string()).unwrap(), x);
        }
        assert_eq!(parse_element(&f5, 0, "7").unwrap(), f5.from_prime(0, 2));
        assert_eq!(parse_element(&f5, 0, "-1").unwrap(), f5.from_prime(0, 4));
    }

    #[test]
    fn element_strings_on_f4() {
        let f4 = FieldTower::new(2, 2).unwrap();
        let names: Vec<String> = (0..4).map(|i| f4.from_index(0, i).to_string()).collect();
        assert_eq!(names, vec!["0", "1", "w", "w+1"]);
        for (i, n) in names.iter().enumerate() {
            assert_eq!(parse_element(&f4, 0, n).unwrap().encode(), i as u64);
        }
    }

    #[test]
    fn element_round_trip_f16_tower() {
        let tower = FieldTower::new(2, 2).unwrap().extend(2).unwrap();
        for i in 0..16 {
            let x = tower.from_index(1, i);
            let s = x.to_string();
            assert_eq!(parse_element(&tower, 1, &s).unwrap(), x, "string {s}");
        }
        // Spot checks against the frozen grammar.
        assert_eq!(tower.from_index(1, 12).to_string(), "(w+1)*w1");
        assert_eq!(tower.from_index(1, 15).to_string(), "(w+1)*w1+w+1");
        assert_eq!(tower.from_index(1, 4).to_string(), "w1");
    }

    #[test]
    fn element_round_trip_f8_and_f9_towers() {
        let f8 = FieldTower::new(2, 3).unwrap().extend(2).unwrap();
        for level in 0..2 {
            for i in 0..f8.size(level) {
                let x = f8.from_index(level, i);
                assert_eq!(parse_element(&f8, level, &x.to_string()).unwrap(), x);
            }
        }
        let f9 = FieldTower::new(3, 2).unwrap().extend(2).unwrap();
        for level in 0..2 {
            for i in 0..f9.size(level) {
                let x = f9.from_index(level, i);
                assert_eq!(parse_element(&f9, level, &x.to_string()).unwrap(), x);
            }
        }
    }

    #[test]
    fn degree_one_stages_are_silent() {
        let tower = FieldTower::new(2, 2).unwrap().extend(1).unwrap();
        for i in 0..4 {
            let x = tower.from_index(1, i);
            let base = tower.from_index(0, i);
            assert_eq!(x.to_string(), base.to_string());
            assert_eq!(parse_element(&tower, 1, &x.to_string()).unwrap(), x);
        }
    }

    #[test]
    fn apoly_exact_string() {
        let f4 = FieldTower::new(2, 2).unwrap();
        let w = f4.generator(0).unwrap();
        let one = f4.one(0);
        let wp1 = &w + &one;
        let p = APoly::from_coeffs(&[one.clone(), w.clone(), wp1]).unwrap();
        assert_eq!(p.to_string(), "(w+1)*T^2+w*T+1");
        assert_eq!(parse_apoly(&f4, "(w+1)*T^2+w*T+1").unwrap(), p);
        assert!(parse_apoly(&f4, "(w+1)T").is_err());
        assert_eq!(APoly::zero(&f4).to_string(), "0");
        assert_eq!(APoly::t(&f4).to_string(), "T");
        assert_eq!(APoly::t(&f4).pow(3).to_string(), "T^3");
    }

    #[test]
    fn apoly_round_trip_random() {
        use rand::{Rng, SeedableRng};
        let f9 = FieldTower::new(3, 2).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(21);
        for _ in 0..200 {
            let deg = rng.gen_range(0..6);
            let coeffs: Vec<FieldElement> = (0..=deg)
                .map(|_| f9.from_index(0, rng.gen_range(0..9)))
                .collect();
            let p = APoly::from_coeffs(&coeffs).unwrap();
            assert_eq!(parse_apoly(&f9, &p.to_string()).unwrap(), p);
        }
    }

    #[test]
    fn ore_round_trip() {
        let f4 = FieldTower::new(2, 2).unwrap();
        let w = f4.generator(0).unwrap();
        let phi = OrePoly::from_coeffs(&[w.clone(), f4.one(0), f4.one(0)]).unwrap();
        assert_eq!(phi.to_string(), "t^2+t+w");
        assert_eq!(parse_ore(&f4, 0, "t^2+t+w").unwrap(), phi);
        let zero = OrePoly::zero(&f4, 0);
        assert_eq!(zero.to_string(), "0");
        assert_eq!(parse_ore(&f4, 0, "0").unwrap(), zero);
    }

    #[test]
    fn lpoly_round_trip() {
        let f4 = FieldTower::new(2, 2).unwrap();
        let w = f4.generator(0).unwrap();
        let p = LPoly::from_coeffs(&[w.clone(), w.pow(2), f4.one(0)]).unwrap();
        assert_eq!(p.to_string(), "X^2+(w+1)*X+w");
        assert_eq!(parse_lpoly(&f4, 0, &p.to_string()).unwrap(), p);
    }

    #[test]
    fn matrix_round_trip() {
        let f2 = FieldTower::new(2, 1).unwrap();
        let m = parse_mat2(&f2, "[[T+1,1],[T^2,0]]").unwrap();
        assert_eq!(m[0].to_string(), "T+1");
        assert_eq!(m[1].to_string(), "1");
        assert_eq!(m[2].to_string(), "T^2");
        assert_eq!(m[3].to_string(), "0");
        let s = format_mat2(&[
            m[0].to_string(),
            m[1].to_string(),
            m[2].to_string(),
            m[3].to_string(),
        ]);
        assert_eq!(s, "[[T+1,1],[T^2,0]]");
        assert!(parse_mat2(&f2, "[[1,2],[3]]").is_err());
        assert!(parse_mat2(&f2, "[[1,2],[3,4]] junk").is_err());
    }

    #[test]
    fn parse_rejects_garbage() {
        let f4 = FieldTower::new(2, 2).unwrap();
        assert!(parse_element(&f4, 0, "").is_err());
        assert!(parse_element(&f4, 0, "w1").is_err());
        assert!(parse_element(&f4, 0, "w +").is_err());
        assert!(parse_element(&f4, 0, "u").is_err());
        assert!(parse_apoly(&f4, "T^").is_err());
        assert!(parse_apoly(&f4, "X").is_err());
    }

    #[test]
    fn parse_accepts_whitespace_and_reordering() {
        let f4 = FieldTower::new(2, 2).unwrap();
        let a = parse_apoly(&f4, "1 + w*T + (w+1)*T^2").unwrap();
        let b = parse_apoly(&f4, "(w+1)*T^2+w*T+1").unwrap();
        assert_eq!(a, b);
    }
}
