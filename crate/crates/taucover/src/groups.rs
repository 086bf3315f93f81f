//! Exhaustive matrix groups over residue rings A/(f).
//!
//! Five kinds are supported: GL2, the unit-determinant-in-F_q subgroup G1,
//! its quotient G by the scalar constants Z(F_q), SL2, and SL2/{±1}.
//! Quotients are realized as sets of canonical representatives (minimal
//! key in the scalar orbit), so every group is a concrete, ordered list
//! of matrices. Construction enumerates the ring raw, then verifies the
//! group axioms pair by pair; closed-form order formulas are advisory
//! cross-checks against the enumeration, never a substitute for it.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Caps, Error, Result};
use crate::residue::ResidueRing;

pub type Mat2 = [u16; 4];

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GroupKind {
    Gl2,
    G1,
    G,
    Sl2,
    Sl2ModPm1,
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GroupKind::Gl2 => "GL2",
            GroupKind::G1 => "G1",
            GroupKind::G => "G",
            GroupKind::Sl2 => "SL2",
            GroupKind::Sl2ModPm1 => "SL2modPM1",
        };
        f.write_str(s)
    }
}

impl FromStr for GroupKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<GroupKind> {
        match s.to_ascii_lowercase().as_str() {
            "gl2" => Ok(GroupKind::Gl2),
            "g1" => Ok(GroupKind::G1),
            "g" => Ok(GroupKind::G),
            "sl2" => Ok(GroupKind::Sl2),
            "sl2modpm1" | "sl2mod" | "psl-like" => Ok(GroupKind::Sl2ModPm1),
            _ => Err(Error::Parse(format!(
                "unknown group kind {s:?} (expected GL2, G1, G, SL2, or SL2modPM1)"
            ))),
        }
    }
}

/// Advisory order formula, multiplicative over the prime-power factors of
/// the modulus. Enumeration remains the ground truth; a mismatch is a bug.
pub fn predicted_order(ring: &ResidueRing, kind: GroupKind) -> Result<u64> {
    let caps = Caps {
        max_poly_degree: ring.modulus().degree().unwrap_or(1),
        ..Caps::default()
    };
    let factors = ring.modulus().factor(&caps)?;
    let q = ring.tower().q() as u128;
    let p = u128::from(ring.tower().p());
    let mut gl2: u128 = 1;
    let mut sl2: u128 = 1;
    for (prime, e) in &factors {
        let d = prime.degree().unwrap_or(0) as u32;
        let big_q = q.pow(d);
        let e = *e;
        gl2 = gl2
            .checked_mul((big_q * big_q - 1) * (big_q * big_q - big_q))
            .and_then(|v| v.checked_mul(big_q.pow(4 * (e - 1))))
            .ok_or_else(|| Error::CapExceeded("order formula overflows".into()))?;
        sl2 = sl2
            .checked_mul(big_q * big_q * big_q - big_q)
            .and_then(|v| v.checked_mul(big_q.pow(3 * (e - 1))))
            .ok_or_else(|| Error::CapExceeded("order formula overflows".into()))?;
    }
    let out = match kind {
        GroupKind::Gl2 => gl2,
        GroupKind::G1 => (q - 1) * sl2,
        GroupKind::G => sl2,
        GroupKind::Sl2 => sl2,
        GroupKind::Sl2ModPm1 => {
            if p == 2 {
                sl2
            } else {
                sl2 / 2
            }
        }
    };
    u64::try_from(out).map_err(|_| Error::CapExceeded("order formula overflows".into()))
}

/// One fully enumerated matrix group with verified axioms.
pub struct GroupTable {
    ring: ResidueRing,
    kind: GroupKind,
    elements: Vec<Mat2>,
    index: HashMap<u64, u32>,
    dets: Vec<u16>,
    invs: Vec<u32>,
    identity: u32,
    predicted: u64,
    /// det(ab) = det(a)det(b) verified on every pair during closure.
    det_multiplicative: bool,
}

struct BitSet(Vec<u64>);

impl BitSet {
    fn new(bits: u64) -> BitSet {
        BitSet(vec![0u64; ((bits + 63) / 64) as usize])
    }

    #[inline]
    fn insert(&mut self, i: u64) {
        self.0[(i >> 6) as usize] |= 1 << (i & 63);
    }

    #[inline]
    fn contains(&self, i: u64) -> bool {
        self.0[(i >> 6) as usize] & (1 << (i & 63)) != 0
    }
}

impl GroupTable {
    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn ring(&self) -> &ResidueRing {
        &self.ring
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    /// Advisory closed-form order; equals `order()` by construction.
    pub fn predicted_order(&self) -> u64 {
        self.predicted
    }

    pub fn element(&self, i: u32) -> Mat2 {
        self.elements[i as usize]
    }

    pub fn elements(&self) -> &[Mat2] {
        &self.elements
    }

    pub fn identity(&self) -> u32 {
        self.identity
    }

    pub fn det(&self, i: u32) -> u16 {
        self.dets[i as usize]
    }

    pub fn inv(&self, i: u32) -> u32 {
        self.invs[i as usize]
    }

    #[inline]
    pub fn key(&self, m: Mat2) -> u64 {
        let s = self.ring.size();
        ((u64::from(m[0]) * s + u64::from(m[1])) * s + u64::from(m[2])) * s + u64::from(m[3])
    }

    #[inline]
    fn mul_raw(&self, a: Mat2, b: Mat2) -> Mat2 {
        let r = &self.ring;
        [
            r.add_t(r.mul_t(a[0], b[0]), r.mul_t(a[1], b[2])),
            r.add_t(r.mul_t(a[0], b[1]), r.mul_t(a[1], b[3])),
            r.add_t(r.mul_t(a[2], b[0]), r.mul_t(a[3], b[2])),
            r.add_t(r.mul_t(a[2], b[1]), r.mul_t(a[3], b[3])),
        ]
    }

    fn det_raw(&self, m: Mat2) -> u16 {
        self.ring
            .sub_t(self.ring.mul_t(m[0], m[3]), self.ring.mul_t(m[1], m[2]))
    }

    fn scale(&self, z: u16, m: Mat2) -> Mat2 {
        [
            self.ring.mul_t(z, m[0]),
            self.ring.mul_t(z, m[1]),
            self.ring.mul_t(z, m[2]),
            self.ring.mul_t(z, m[3]),
        ]
    }

    /// The canonical representative of m for this kind: minimal key over
    /// the scalar orbit for G, over {m, −m} for SL2/{±1}, m itself else.
    pub fn canon(&self, m: Mat2) -> Mat2 {
        match self.kind {
            GroupKind::G => {
                let q = self.ring.tower().q() as u16;
                let mut best = m;
                let mut best_key = self.key(m);
                for z in 2..q {
                    let cand = self.scale(z, m);
                    let k = self.key(cand);
                    if k < best_key {
                        best_key = k;
                        best = cand;
                    }
                }
                best
            }
            GroupKind::Sl2ModPm1 => {
                let neg = [
                    self.ring.neg_t(m[0]),
                    self.ring.neg_t(m[1]),
                    self.ring.neg_t(m[2]),
                    self.ring.neg_t(m[3]),
                ];
                if self.key(neg) < self.key(m) {
                    neg
                } else {
                    m
                }
            }
            _ => m,
        }
    }

    pub fn index_of(&self, m: Mat2) -> Option<u32> {
        self.index.get(&self.key(self.canon(m))).copied()
    }

    /// Group multiplication on indices (matrix product, canonicalized).
    pub fn mul(&self, i: u32, j: u32) -> u32 {
        let m = self.mul_raw(self.elements[i as usize], self.elements[j as usize]);
        self.index[&self.key(self.canon(m))]
    }

    pub fn det_multiplicative(&self) -> bool {
        self.det_multiplicative
    }
}

/// Enumerates and verifies one matrix group over the given ring.
pub fn build_group(ring: &ResidueRing, kind: GroupKind, caps: &Caps) -> Result<GroupTable> {
    let predicted = predicted_order(ring, kind)?;
    if predicted > caps.max_group_order {
        return Err(Error::CapExceeded(format!(
            "expected |{kind}| = {predicted} exceeds the group cap {}",
            caps.max_group_order
        )));
    }
    let s = ring.size();
    let raw = s
        .checked_pow(4)
        .ok_or_else(|| Error::CapExceeded("matrix space overflows".into()))?;
    if raw > caps.max_scan {
        return Err(Error::CapExceeded(format!(
            "raw scan of {raw} matrices exceeds the scan cap {}",
            caps.max_scan
        )));
    }
    let q = ring.tower().q() as u16;
    let p = ring.tower().p();

    let mut table = GroupTable {
        ring: ring.clone(),
        kind,
        elements: Vec::new(),
        index: HashMap::new(),
        dets: Vec::new(),
        invs: Vec::new(),
        identity: 0,
        predicted,
        det_multiplicative: false,
    };

    // Raw enumeration in key order; membership is a pure predicate on the
    // matrix, so the result is exhaustive by construction.
    let n = s as u16;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let bc = table.ring.mul_t(b, c);
                for d in 0..n {
                    let det = table.ring.sub_t(table.ring.mul_t(a, d), bc);
                    let m = [a, b, c, d];
                    let keep = match kind {
                        GroupKind::Gl2 => table.ring.is_unit(det),
                        GroupKind::G1 => (1..q).contains(&det),
                        GroupKind::Sl2 => det == 1,
                        GroupKind::G => {
                            (1..q).contains(&det) && table.canon(m) == m
                        }
                        GroupKind::Sl2ModPm1 => det == 1 && table.canon(m) == m,
                    };
                    if keep {
                        table.dets.push(det);
                        table.elements.push(m);
                    }
                }
            }
        }
    }
    let order = table.elements.len() as u64;
    if order != predicted {
        return Err(Error::Invalid(format!(
            "enumerated |{kind}| = {order} disagrees with the cross-check {predicted}"
        )));
    }
    table.index = table
        .elements
        .iter()
        .enumerate()
        .map(|(i, m)| (table.key(*m), i as u32))
        .collect();

    // Identity and inverses (adjugate over det).
    table.identity = *table
        .index
        .get(&table.key([1, 0, 0, 1]))
        .ok_or_else(|| Error::Invalid("identity missing from enumeration".into()))?;
    let mut invs = Vec::with_capacity(table.elements.len());
    for (i, m) in table.elements.iter().enumerate() {
        let di = table
            .ring
            .inv_t(table.dets[i])
            .ok_or_else(|| Error::Invalid("non-unit determinant slipped through".into()))?;
        let adj = [
            table.ring.mul_t(di, m[3]),
            table.ring.mul_t(di, table.ring.neg_t(m[1])),
            table.ring.mul_t(di, table.ring.neg_t(m[2])),
            table.ring.mul_t(di, m[0]),
        ];
        let j = table
            .index
            .get(&table.key(table.canon(adj)))
            .copied()
            .ok_or_else(|| Error::Invalid("inverse missing from enumeration".into()))?;
        invs.push(j);
    }
    table.invs = invs;
    for (i, &j) in table.invs.iter().enumerate() {
        if table.mul(i as u32, j) != table.identity {
            return Err(Error::Invalid("inverse verification failed".into()));
        }
    }

    // Orbit soundness for the quotient kinds: every representative's
    // scalar orbit has full size and canonicalizes back to itself.
    match kind {
        GroupKind::G => {
            for m in &table.elements {
                let mut keys = Vec::with_capacity(q as usize - 1);
                for z in 1..q {
                    let zm = table.scale(z, *m);
                    if table.canon(zm) != *m {
                        return Err(Error::Invalid("scalar orbit canonicalization failed".into()));
                    }
                    keys.push(table.key(zm));
                }
                keys.sort_unstable();
                keys.dedup();
                if keys.len() != q as usize - 1 {
                    return Err(Error::Invalid("degenerate scalar orbit".into()));
                }
            }
        }
        GroupKind::Sl2ModPm1 => {
            let expect = if p == 2 { 1 } else { 2 };
            for m in &table.elements {
                let neg = [
                    table.ring.neg_t(m[0]),
                    table.ring.neg_t(m[1]),
                    table.ring.neg_t(m[2]),
                    table.ring.neg_t(m[3]),
                ];
                if table.canon(neg) != *m {
                    return Err(Error::Invalid("sign orbit canonicalization failed".into()));
                }
                let distinct = if neg == *m { 1 } else { 2 };
                if distinct != expect {
                    return Err(Error::Invalid("degenerate sign orbit".into()));
                }
            }
        }
        _ => {}
    }

    // Exhaustive closure over all pairs. For the quotient kinds the raw
    // product of two representatives lies in the full preimage set (all
    // scalar multiples of all representatives), which is equivalent to
    // canon(product) being a representative and avoids canonicalizing
    // inside the hot loop. det multiplicativity rides along for kind G;
    // det_mod_squares relies on it.
    let mut member = BitSet::new(raw);
    match kind {
        GroupKind::G => {
            for m in &table.elements {
                for z in 1..q {
                    member.insert(table.key(table.scale(z, *m)));
                }
            }
        }
        GroupKind::Sl2ModPm1 => {
            for m in &table.elements {
                member.insert(table.key(*m));
                let neg = [
                    table.ring.neg_t(m[0]),
                    table.ring.neg_t(m[1]),
                    table.ring.neg_t(m[2]),
                    table.ring.neg_t(m[3]),
                ];
                member.insert(table.key(neg));
            }
        }
        _ => {
            for m in &table.elements {
                member.insert(table.key(*m));
            }
        }
    }
    let check_dets = kind == GroupKind::G;
    let n_el = table.elements.len();
    let threads = std::thread::available_parallelism()
        .map(|v| v.get())
        .unwrap_or(1)
        .min(n_el.max(1));
    let chunk = n_el.div_ceil(threads);
    let ok = std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for t in 0..threads {
            let lo = t * chunk;
            let hi = ((t + 1) * chunk).min(n_el);
            let table = &table;
            let member = &member;
            handles.push(scope.spawn(move || {
                for i in lo..hi {
                    let a = table.elements[i];
                    let da = table.dets[i];
                    for j in 0..n_el {
                        let prod = table.mul_raw(a, table.elements[j]);
                        if !member.contains(table.key(prod)) {
                            return false;
                        }
                        if check_dets
                            && table.det_raw(prod) != table.ring.mul_t(da, table.dets[j])
                        {
                            return false;
                        }
                    }
                }
                true
            }));
        }
        handles.into_iter().all(|h| h.join().unwrap_or(false))
    });
    if !ok {
        return Err(Error::Invalid("closure verification failed".into()));
    }
    table.det_multiplicative = check_dets;
    Ok(table)
}

/// Entrywise reduction of one group onto another over a divisor modulus.
pub struct ReductionReport {
    /// dst index for each src element.
    pub map: Vec<u32>,
    pub surjective: bool,
    /// src indices of the kernel (preimage of the dst identity).
    pub kernel: Vec<u32>,
    /// Some(s) when every fiber has exactly s elements.
    pub fiber_size: Option<u64>,
}

pub fn reduction_map(src: &GroupTable, dst: &GroupTable) -> Result<ReductionReport> {
    if src.kind != dst.kind {
        return Err(Error::Invalid(format!(
            "cannot reduce {} onto {}",
            src.kind, dst.kind
        )));
    }
    if src.ring.tower() != dst.ring.tower() {
        return Err(Error::FieldMismatch("groups over different towers".into()));
    }
    let (_, rem) = src.ring.modulus().divmod(dst.ring.modulus())?;
    if !rem.is_zero() {
        return Err(Error::Invalid(
            "destination modulus does not divide the source modulus".into(),
        ));
    }
    let mut map = Vec::with_capacity(src.elements.len());
    let mut fibers = vec![0u64; dst.elements.len()];
    let mut kernel = Vec::new();
    for (i, m) in src.elements.iter().enumerate() {
        let mut reduced: Mat2 = [0; 4];
        for (slot, &entry) in reduced.iter_mut().zip(m.iter()) {
            *slot = dst.ring.index_of(src.ring.residue(entry))?;
        }
        let j = dst.index_of(reduced).ok_or_else(|| {
            Error::Invalid("reduction left the destination group".into())
        })?;
        map.push(j);
        fibers[j as usize] += 1;
        if j == dst.identity {
            kernel.push(i as u32);
        }
    }
    let surjective = fibers.iter().all(|&c| c > 0);
    let fiber_size = if fibers.windows(2).all(|w| w[0] == w[1]) {
        fibers.first().copied()
    } else {
        None
    };
    Ok(ReductionReport {
        map,
        surjective,
        kernel,
        fiber_size,
    })
}

/// The abelianization: invariant factors d₁ | d₂ | ... and, for every
/// group element, its coordinate tuple in ⊕ Z/dᵢ. An empty factor list
/// means the group is perfect.
pub struct Abelianization {
    pub invariant_factors: Vec<u64>,
    pub coords: Vec<Vec<u64>>,
    pub commutator_order: u64,
}

impl Abelianization {
    /// χ(g) = Σ tᵢ·coordᵢ(g) mod n for a hom given by factor images t.
    pub fn eval_hom(&self, shifts: &[u64], n: u64, g: u32) -> u64 {
        let cs = &self.coords[g as usize];
        let mut acc = 0u64;
        for (t, c) in shifts.iter().zip(cs.iter()) {
            acc = (acc + t * c) % n;
        }
        acc
    }
}

/// Greedy generating set: repeatedly adjoin the first element outside the
/// subgroup generated so far.
fn generating_set(g: &GroupTable) -> Vec<u32> {
    let n = g.order() as usize;
    let mut gens: Vec<u32> = Vec::new();
    let mut reached = vec![false; n];
    reached[g.identity() as usize] = true;
    let mut count = 1usize;
    while count < n {
        let next = (0..n as u32).find(|&i| !reached[i as usize]).unwrap();
        gens.push(next);
        // regenerate the closure from scratch with the enlarged set
        reached.iter_mut().for_each(|r| *r = false);
        reached[g.identity() as usize] = true;
        let mut list = vec![g.identity()];
        let mut i = 0;
        while i < list.len() {
            let x = list[i];
            i += 1;
            for &h in &gens {
                let y = g.mul(x, h);
                if !reached[y as usize] {
                    reached[y as usize] = true;
                    list.push(y);
                }
            }
        }
        count = list.len();
    }
    gens
}

/// The commutator subgroup as a sorted index list: normal closure of the
/// commutators of a generating set.
fn commutator_subgroup(g: &GroupTable, gens: &[u32]) -> Vec<u32> {
    let n = g.order() as usize;
    let mut seeds: Vec<u32> = Vec::new();
    for &a in gens {
        for &b in gens {
            let c = g.mul(g.mul(a, b), g.mul(g.inv(a), g.inv(b)));
            if c != g.identity() && !seeds.contains(&c) {
                seeds.push(c);
            }
        }
    }
    let mut member = vec![false; n];
    member[g.identity() as usize] = true;
    let mut list = vec![g.identity()];
    loop {
        // close under right multiplication by the current seeds
        let mut i = 0;
        while i < list.len() {
            let x = list[i];
            i += 1;
            for &h in &seeds {
                let y = g.mul(x, h);
                if !member[y as usize] {
                    member[y as usize] = true;
                    list.push(y);
                }
            }
        }
        // normality: conjugates of members by the group generators
        let mut grew = false;
        for &x in &list {
            for &a in gens {
                let c = g.mul(g.mul(a, x), g.inv(a));
                if !member[c as usize] {
                    seeds.push(c);
                    grew = true;
                }
            }
            if grew {
                break;
            }
        }
        if !grew {
            break;
        }
    }
    list.sort_unstable();
    list
}

pub fn abelianization(g: &GroupTable) -> Result<Abelianization> {
    let n = g.order() as usize;
    if n == 1 {
        return Ok(Abelianization {
            invariant_factors: Vec::new(),
            coords: vec![Vec::new()],
            commutator_order: 1,
        });
    }
    let gens = generating_set(g);
    let comm = commutator_subgroup(g, &gens);
    let comm_order = comm.len() as u64;

    // Cosets of the commutator subgroup, reps in ascending index order.
    let mut coset = vec![u32::MAX; n];
    let mut reps: Vec<u32> = Vec::new();
    for i in 0..n as u32 {
        if coset[i as usize] != u32::MAX {
            continue;
        }
        let qi = reps.len() as u32;
        reps.push(i);
        for &s in &comm {
            let t = g.mul(i, s);
            if coset[t as usize] != u32::MAX && coset[t as usize] != qi {
                return Err(Error::Invalid("commutator cosets overlap".into()));
            }
            coset[t as usize] = qi;
        }
    }
    let m = reps.len();
    let mut qmul = vec![0u32; m * m];
    for a in 0..m {
        for b in 0..m {
            qmul[a * m + b] = coset[g.mul(reps[a], reps[b]) as usize];
        }
    }
    let qid = coset[g.identity() as usize];
    // the quotient by the commutator subgroup must commute
    for a in 0..m {
        for b in 0..a {
            if qmul[a * m + b] != qmul[b * m + a] {
                return Err(Error::Invalid("abelian quotient fails to commute".into()));
            }
        }
    }

    let (factors, qcoords) = abelian_invariants(&qmul, m, qid)?;
    let coords = (0..n)
        .map(|i| qcoords[coset[i] as usize].clone())
        .collect();
    Ok(Abelianization {
        invariant_factors: factors,
        coords,
        commutator_order: comm_order,
    })
}

/// Invariant factors of a finite abelian group given by a multiplication
/// table, plus the coordinate tuple of every element. Factors ascend:
/// d₁ | d₂ | ... with the exponent last.
fn abelian_invariants(mul: &[u32], m: usize, id: u32) -> Result<(Vec<u64>, Vec<Vec<u64>>)> {
    if m == 1 {
        return Ok((Vec::new(), vec![Vec::new()]));
    }
    let at = |a: u32, b: u32| mul[a as usize * m + b as usize];
    let order_of = |x: u32| -> u64 {
        let mut cur = x;
        let mut k = 1u64;
        while cur != id {
            cur = at(cur, x);
            k += 1;
        }
        k
    };

    // Basis by descending factor: peel a maximal-order element, then keep
    // adjoining elements of the next factor's order that are independent
    // of the span so far. The final coordinate map is verified to be a
    // bijection, so a bad greedy choice cannot go unnoticed.
    let orders: Vec<u64> = (0..m as u32).map(order_of).collect();

    // factor list by repeated quotient peeling
    let mut factors_desc: Vec<u64> = Vec::new();
    {
        let mut cur_mul = mul.to_vec();
        let mut cur_m = m;
        let mut cur_id = id;
        while cur_m > 1 {
            let cat = |tab: &[u32], mm: usize, a: u32, b: u32| tab[a as usize * mm + b as usize];
            let ord = |tab: &[u32], mm: usize, iid: u32, x: u32| -> u64 {
                let mut cur = x;
                let mut k = 1u64;
                let _ = mm;
                while cur != iid {
                    cur = cat(tab, mm, cur, x);
                    k += 1;
                }
                k
            };
            let (best, d) = (0..cur_m as u32)
                .map(|x| (x, ord(&cur_mul, cur_m, cur_id, x)))
                .max_by_key(|&(x, o)| (o, std::cmp::Reverse(x)))
                .unwrap();
            factors_desc.push(d);
            // cosets of <best>
            let mut powers = vec![cur_id];
            let mut cur = best;
            while cur != cur_id {
                powers.push(cur);
                cur = cat(&cur_mul, cur_m, cur, best);
            }
            let mut coset = vec![u32::MAX; cur_m];
            let mut reps: Vec<u32> = Vec::new();
            for i in 0..cur_m as u32 {
                if coset[i as usize] != u32::MAX {
                    continue;
                }
                let qi = reps.len() as u32;
                reps.push(i);
                for &s in &powers {
                    let t = cat(&cur_mul, cur_m, i, s);
                    if coset[t as usize] != u32::MAX && coset[t as usize] != qi {
                        return Err(Error::Invalid("cyclic cosets overlap".into()));
                    }
                    coset[t as usize] = qi;
                }
            }
            let mm = reps.len();
            let mut nmul = vec![0u32; mm * mm];
            for a in 0..mm {
                for b in 0..mm {
                    nmul[a * mm + b] =
                        coset[cat(&cur_mul, cur_m, reps[a], reps[b]) as usize];
                }
            }
            let nid = coset[cur_id as usize];
            cur_mul = nmul;
            cur_m = mm;
            cur_id = nid;
        }
    }

    // greedy basis matching the factors, largest first
    let mut basis: Vec<u32> = Vec::new();
    let mut span = vec![false; m];
    span[id as usize] = true;
    let mut span_list = vec![id];
    for &d in &factors_desc {
        let mut found = None;
        'cand: for x in 0..m as u32 {
            if orders[x as usize] != d {
                continue;
            }
            // independence: no nontrivial power of x lies in the span
            let mut cur = x;
            while cur != id {
                if span[cur as usize] {
                    continue 'cand;
                }
                cur = at(cur, x);
            }
            found = Some(x);
            break;
        }
        let x = found.ok_or_else(|| {
            Error::Invalid("abelian basis extraction failed".into())
        })?;
        basis.push(x);
        // extend the span with the new cyclic factor
        let snapshot = span_list.clone();
        let mut pow = x;
        while pow != id {
            for &s in &snapshot {
                let t = at(s, pow);
                if !span[t as usize] {
                    span[t as usize] = true;
                    span_list.push(t);
                }
            }
            pow = at(pow, x);
        }
    }
    if span_list.len() != m {
        return Err(Error::Invalid("abelian basis does not span".into()));
    }

    // ascending factor order, basis aligned
    factors_desc.reverse();
    basis.reverse();
    let factors = factors_desc;

    // coordinates of every element under the verified bijection
    let mut coords = vec![Vec::new(); m];
    let mut assigned = vec![false; m];
    let k = factors.len();
    let mut tuple = vec![0u64; k];
    loop {
        let mut el = id;
        for (i, &t) in tuple.iter().enumerate() {
            let mut pow = id;
            for _ in 0..t {
                pow = at(pow, basis[i]);
            }
            el = at(el, pow);
        }
        if assigned[el as usize] {
            return Err(Error::Invalid("abelian coordinates collide".into()));
        }
        assigned[el as usize] = true;
        coords[el as usize] = tuple.clone();
        // odometer
        let mut i = 0;
        loop {
            if i == k {
                break;
            }
            tuple[i] += 1;
            if tuple[i] < factors[i] {
                break;
            }
            tuple[i] = 0;
            i += 1;
        }
        if i == k {
            break;
        }
    }
    if !assigned.iter().all(|&a| a) {
        return Err(Error::Invalid("abelian coordinates incomplete".into()));
    }
    Ok((factors, coords))
}

/// Homomorphism count into Z/n, with the kernel order of every
/// nontrivial hom and whether all of them factor through the canonical
/// Z/2 class map (when one is defined).
pub struct HomReport {
    pub n: u64,
    pub count: u64,
    pub kernel_orders: Vec<u64>,
    pub all_factor_through_z2: Option<bool>,
}

/// Shift tuples (images of the invariant-factor generators in Z/n) of
/// every nontrivial hom to Z/n, in lexicographic order.
pub fn nontrivial_hom_shifts(ab: &Abelianization, n: u64) -> Vec<Vec<u64>> {
    let choices: Vec<Vec<u64>> = ab
        .invariant_factors
        .iter()
        .map(|&d| {
            let gcd = gcd_u64(d, n);
            let step = n / gcd;
            (0..gcd).map(|i| i * step).collect()
        })
        .collect();
    let mut out = Vec::new();
    let k = choices.len();
    let mut idx = vec![0usize; k];
    loop {
        let shifts: Vec<u64> = idx.iter().zip(&choices).map(|(&i, c)| c[i]).collect();
        if shifts.iter().any(|&t| t != 0) {
            out.push(shifts);
        }
        let mut i = 0;
        loop {
            if i == k {
                break;
            }
            idx[i] += 1;
            if idx[i] < choices[i].len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
        if i == k {
            break;
        }
    }
    out
}

pub fn hom_report(
    g: &GroupTable,
    ab: &Abelianization,
    n: u64,
    dms: Option<&[u8]>,
) -> Result<HomReport> {
    if n == 0 {
        return Err(Error::Invalid("the target modulus must be positive".into()));
    }
    let shifts = nontrivial_hom_shifts(ab, n);
    let count = shifts.len() as u64 + 1;

    let order = g.order();
    let mut kernel_orders = Vec::new();
    let mut all_factor = true;
    for shift in &shifts {
        let mut kernel = 0u64;
        let mut factors = n % 2 == 0;
        for gidx in 0..order as u32 {
            let v = ab.eval_hom(shift, n, gidx);
            if v == 0 {
                kernel += 1;
            }
            if factors {
                if let Some(map) = dms {
                    if v != (n / 2) * u64::from(map[gidx as usize]) {
                        factors = false;
                    }
                }
            }
        }
        kernel_orders.push(kernel);
        if dms.is_some() && !factors {
            all_factor = false;
        }
    }
    Ok(HomReport {
        n,
        count,
        kernel_orders,
        all_factor_through_z2: dms.map(|_| all_factor),
    })
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}

/// The class of det(representative) in F_q^*/F_q^{*2}, as 0/1 per group
/// element. Defined for kind G over odd q; the squaring map is bijective
/// in characteristic 2, so the quotient is trivial there and the request
/// is rejected with that explanation.
///
/// Soundness chain: representatives of G carry determinants in F_q^*
/// (scalars shift det by a square, so the class is orbit-invariant, which
/// the construction verified), and det multiplicativity was checked on
/// every raw product during closure, so the class map is a homomorphism.
pub fn det_mod_squares(g: &GroupTable) -> Result<Vec<u8>> {
    if g.kind() != GroupKind::G {
        return Err(Error::Invalid(
            "the canonical class map is defined on kind G only".into(),
        ));
    }
    let q = g.ring().tower().q() as u16;
    if g.ring().tower().p() == 2 {
        return Err(Error::Invalid(
            "q is even: squaring is a bijection on F_q^*, the square-class quotient is trivial"
                .into(),
        ));
    }
    if !g.det_multiplicative() {
        return Err(Error::Invalid(
            "determinant multiplicativity was not verified for this table".into(),
        ));
    }
    let mut is_square = vec![false; q as usize];
    for c in 1..q {
        is_square[g.ring().mul_t(c, c) as usize] = true;
    }
    let mut out = Vec::with_capacity(g.order() as usize);
    for i in 0..g.order() as u32 {
        let d = g.det(i);
        if d == 0 || d >= q {
            return Err(Error::Invalid(
                "representative determinant escaped F_q^*".into(),
            ));
        }
        out.push(u8::from(!is_square[d as usize]));
    }
    // homomorphism property, exhaustive on small groups
    let order = g.order();
    if order * order <= 4_000_000 {
        for a in 0..order as u32 {
            for b in 0..order as u32 {
                let c = g.mul(a, b);
                if out[c as usize] != out[a as usize] ^ out[b as usize] {
                    return Err(Error::Invalid("class map is not a homomorphism".into()));
                }
            }
        }
    }
    Ok(out)
}

/// Comparison of G against SL2 over the same ring: set equality of the
/// canonicalized SL2 image with G itself for even q, and with the kernel
/// of the canonical Z/2 class map for odd q.
pub struct Sl2Verdict {
    pub verdict: bool,
    /// [lhs, rhs]: G (or its Z/2 kernel) and the canonicalized SL2 image.
    pub orders: [u64; 2],
    pub hypothesis_ok: bool,
    pub note: Option<String>,
}

pub fn identify_sl2(g: &GroupTable, sl2: &GroupTable) -> Result<Sl2Verdict> {
    if g.kind() != GroupKind::G || sl2.kind() != GroupKind::Sl2 {
        return Err(Error::Invalid("expected tables of kind G and SL2".into()));
    }
    if g.ring().tower() != sl2.ring().tower()
        || g.ring().modulus() != sl2.ring().modulus()
    {
        return Err(Error::Invalid("tables must share one ring".into()));
    }
    let p = g.ring().tower().p();
    let m = g.ring().tower().m();
    let hypothesis_ok = !((p == 2 || p == 3) && m == 1);
    let note = (!hypothesis_ok).then(|| {
        format!(
            "q = {}^{} is below the supported range for this identification (needs m ≥ 2 \
             when p is 2 or 3); computed anyway",
            p, m
        )
    });

    // canonicalized image of SL2 inside G's representative set
    let mut image: Vec<u64> = sl2
        .elements()
        .iter()
        .map(|&s| g.key(g.canon(s)))
        .collect();
    image.sort_unstable();
    image.dedup();
    let in_g = |keys: &[u64]| keys.iter().all(|k| g.index.contains_key(k));

    if p == 2 {
        let equal = image.len() as u64 == g.order() && in_g(&image);
        Ok(Sl2Verdict {
            verdict: equal,
            orders: [g.order(), image.len() as u64],
            hypothesis_ok,
            note,
        })
    } else {
        let dms = det_mod_squares(g)?;
        let mut kernel: Vec<u64> = (0..g.order() as u32)
            .filter(|&i| dms[i as usize] == 0)
            .map(|i| g.key(g.element(i)))
            .collect();
        kernel.sort_unstable();
        let equal = kernel == image && in_g(&image);
        Ok(Sl2Verdict {
            verdict: equal,
            orders: [kernel.len() as u64, image.len() as u64],
            hypothesis_ok,
            note,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::apoly::APoly;
    use crate::field::FieldTower;
    use crate::text::parse_apoly;

    fn ring(p: u32, m: u32, modulus: &str) -> ResidueRing {
        let tower = FieldTower::new(p, m).unwrap();
        let f = parse_apoly(&tower, modulus).unwrap();
        ResidueRing::new(&tower, &f).unwrap()
    }

    fn group(p: u32, m: u32, modulus: &str, kind: GroupKind) -> GroupTable {
        build_group(&ring(p, m, modulus), kind, &Caps::default()).unwrap()
    }

    #[test]
    fn orders_over_f4() {
        let gl2 = group(2, 2, "T", GroupKind::Gl2);
        assert_eq!(gl2.order(), 180);
        assert_eq!(gl2.order(), gl2.predicted_order());
        let g1 = group(2, 2, "T", GroupKind::G1);
        assert_eq!(g1.order(), 180);
        let g = group(2, 2, "T", GroupKind::G);
        assert_eq!(g.order(), 60);
        let sl2 = group(2, 2, "T", GroupKind::Sl2);
        assert_eq!(sl2.order(), 60);
    }

    #[test]
    fn gl2_f2_mod_t_squared() {
        let src = group(2, 1, "T^2", GroupKind::Gl2);
        assert_eq!(src.order(), 96);
        let dst = group(2, 1, "T", GroupKind::Gl2);
        assert_eq!(dst.order(), 6);
        let red = reduction_map(&src, &dst).unwrap();
        assert!(red.surjective);
        assert_eq!(red.fiber_size, Some(16));
        assert_eq!(red.kernel.len(), 16);
    }

    #[test]
    fn g_tower_step_q4() {
        let src = group(2, 2, "T^2", GroupKind::G);
        assert_eq!(src.order(), 3840);
        let dst = group(2, 2, "T", GroupKind::G);
        assert_eq!(dst.order(), 60);
        let red = reduction_map(&src, &dst).unwrap();
        assert!(red.surjective);
        assert_eq!(red.kernel.len(), 64);
        assert_eq!(red.fiber_size, Some(64));
        // kernel is closed under multiplication
        for &a in &red.kernel[..8.min(red.kernel.len())] {
            for &b in &red.kernel {
                let c = src.mul(a, b);
                assert_eq!(red.map[c as usize], dst.identity());
            }
        }
    }

    #[test]
    fn identity_reduction_is_bijective() {
        let g = group(5, 1, "T", GroupKind::G);
        let h = group(5, 1, "T", GroupKind::G);
        let red = reduction_map(&g, &h).unwrap();
        assert!(red.surjective);
        assert_eq!(red.fiber_size, Some(1));
        assert_eq!(red.kernel.len(), 1);
    }

    #[test]
    fn composite_modulus_group() {
        // A/(T^2+T) over F_4 splits into two prime factors.
        let g = group(2, 2, "T^2+T", GroupKind::G);
        assert_eq!(g.order(), 3600);
        let gl2 = group(2, 2, "T^2+T", GroupKind::Gl2);
        assert_eq!(gl2.order(), 180 * 180);
    }

    #[test]
    fn mismatched_reduction_is_rejected() {
        let g = group(2, 2, "T^2", GroupKind::G);
        let other_kind = group(2, 2, "T", GroupKind::G1);
        assert!(reduction_map(&g, &other_kind).is_err());
        let wrong_modulus = group(2, 2, "T+1", GroupKind::G);
        assert!(reduction_map(&g, &wrong_modulus).is_err());
    }

    #[test]
    fn caps_reject_oversized_builds() {
        let r = ring(2, 2, "T^3");
        let tight = Caps {
            max_group_order: 1000,
            ..Caps::default()
        };
        assert!(matches!(
            build_group(&r, GroupKind::Gl2, &tight),
            Err(Error::CapExceeded(_))
        ));
        let scan_bound = Caps {
            max_scan: 1000,
            ..Caps::default()
        };
        assert!(matches!(
            build_group(&ring(2, 1, "T^3"), GroupKind::Gl2, &scan_bound),
            Err(Error::CapExceeded(_))
        ));
    }

    #[test]
    fn g_f4_is_perfect() {
        let g = group(2, 2, "T", GroupKind::G);
        let ab = abelianization(&g).unwrap();
        assert!(ab.invariant_factors.is_empty());
        assert_eq!(ab.commutator_order, 60);
        let report = hom_report(&g, &ab, 5, None).unwrap();
        assert_eq!(report.count, 1);
        assert!(report.kernel_orders.is_empty());
    }

    #[test]
    fn g_f5_has_a_z2_quotient() {
        let g = group(5, 1, "T", GroupKind::G);
        assert_eq!(g.order(), 120);
        let ab = abelianization(&g).unwrap();
        assert_eq!(ab.invariant_factors, vec![2]);
        assert_eq!(ab.commutator_order, 60);

        let dms = det_mod_squares(&g).unwrap();
        let report = hom_report(&g, &ab, 6, Some(&dms)).unwrap();
        assert_eq!(report.count, 2);
        assert_eq!(report.kernel_orders, vec![60]);
        assert_eq!(report.all_factor_through_z2, Some(true));

        let coprime = hom_report(&g, &ab, 5, Some(&dms)).unwrap();
        assert_eq!(coprime.count, 1);
        assert_eq!(coprime.all_factor_through_z2, Some(true));
    }

    #[test]
    fn det_mod_squares_examples() {
        let g = group(5, 1, "T", GroupKind::G);
        let dms = det_mod_squares(&g).unwrap();
        assert_eq!(dms[g.identity() as usize], 0);
        // diag(1,2) has determinant 2, a nonsquare mod 5
        let idx = g.index_of([1, 0, 0, 2]).unwrap();
        assert_eq!(dms[idx as usize], 1);
        // scalars have square determinant
        let idx = g.index_of([3, 0, 0, 3]).unwrap();
        assert_eq!(dms[idx as usize], 0);

        // rejected in characteristic 2 and on other kinds
        let even = group(2, 2, "T", GroupKind::G);
        assert!(det_mod_squares(&even).is_err());
        let wrong = group(5, 1, "T", GroupKind::Sl2);
        assert!(det_mod_squares(&wrong).is_err());
    }

    #[test]
    fn canonicalization_is_orbit_invariant() {
        let g = group(5, 1, "T", GroupKind::G);
        let q = 5u16;
        for i in (0..g.order() as u32).step_by(7) {
            let m = g.element(i);
            for z in 1..q {
                let zm = g.scale(z, m);
                assert_eq!(g.canon(zm), m);
                assert_eq!(g.index_of(zm), Some(i));
            }
        }
    }

    #[test]
    fn sl2_mod_pm1_orders() {
        let h = group(5, 1, "T", GroupKind::Sl2ModPm1);
        assert_eq!(h.order(), 60);
        // characteristic 2 collapses the sign quotient
        let h2 = group(2, 3, "T", GroupKind::Sl2ModPm1);
        assert_eq!(h2.order(), 504);
        let sl2 = group(2, 3, "T", GroupKind::Sl2);
        assert_eq!(sl2.order(), 504);
    }

    #[test]
    fn identify_sl2_even_and_odd() {
        let g4 = group(2, 2, "T", GroupKind::G);
        let sl4 = group(2, 2, "T", GroupKind::Sl2);
        let v = identify_sl2(&g4, &sl4).unwrap();
        assert!(v.verdict);
        assert_eq!(v.orders, [60, 60]);
        assert!(v.hypothesis_ok);
        assert!(v.note.is_none());

        let g5 = group(5, 1, "T", GroupKind::G);
        let sl5 = group(5, 1, "T", GroupKind::Sl2);
        let v5 = identify_sl2(&g5, &sl5).unwrap();
        assert!(v5.verdict);
        assert_eq!(v5.orders, [60, 60]);
        assert!(v5.hypothesis_ok);
    }

    #[test]
    fn identify_sl2_outside_hypothesis_is_annotated() {
        let g2 = group(2, 1, "T", GroupKind::G);
        let sl2 = group(2, 1, "T", GroupKind::Sl2);
        let v = identify_sl2(&g2, &sl2).unwrap();
        assert!(!v.hypothesis_ok);
        assert!(v.note.is_some());
        // F_2^* is trivial, so G collapses onto SL2 and the check passes
        assert!(v.verdict);

        let g3 = group(3, 1, "T", GroupKind::G);
        let sl3 = group(3, 1, "T", GroupKind::Sl2);
        let v3 = identify_sl2(&g3, &sl3).unwrap();
        assert!(!v3.hypothesis_ok);
        assert_eq!(v3.orders, [12, 12]);
    }

    #[test]
    fn group_table_consistency() {
        let g = group(2, 2, "T", GroupKind::G);
        let id = g.identity();
        for i in (0..g.order() as u32).step_by(3) {
            assert_eq!(g.mul(i, id), i);
            assert_eq!(g.mul(id, i), i);
            assert_eq!(g.mul(i, g.inv(i)), id);
            assert_eq!(g.mul(g.inv(i), i), id);
            assert_eq!(g.index_of(g.element(i)), Some(i));
        }
        // associativity spot check
        for a in (0..g.order() as u32).step_by(11) {
            for b in (0..g.order() as u32).step_by(13) {
                for c in (0..g.order() as u32).step_by(17) {
                    assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
                }
            }
        }
    }

    #[test]
    fn abelian_invariants_direct() {
        // trivial group
        let (f, c) = abelian_invariants(&[0], 1, 0).unwrap();
        assert!(f.is_empty());
        assert_eq!(c, vec![Vec::<u64>::new()]);

        // Z/6 as a bare table
        let m = 6u32;
        let mul: Vec<u32> = (0..m)
            .flat_map(|a| (0..m).map(move |b| (a + b) % m))
            .collect();
        let (f, coords) = abelian_invariants(&mul, 6, 0).unwrap();
        assert_eq!(f, vec![6]);
        assert_eq!(coords[0], vec![0]);
        let one = coords[1][0];
        assert_eq!((one * 2) % 6, coords[2][0]);

        // Klein four-group
        let mul: Vec<u32> = (0..4u32)
            .flat_map(|a| (0..4).map(move |b| a ^ b))
            .collect();
        let (f, _) = abelian_invariants(&mul, 4, 0).unwrap();
        assert_eq!(f, vec![2, 2]);
    }

    #[test]
    fn gl2_abelianizes_onto_the_units() {
        // |GL2(F_4)^{ab}| = |F_4^*| = 3 via the determinant
        let gl2 = group(2, 2, "T", GroupKind::Gl2);
        let ab = abelianization(&gl2).unwrap();
        assert_eq!(ab.invariant_factors, vec![3]);
        assert_eq!(ab.commutator_order, 60);
        // scaling the count: gcd(3, n) homs to Z/n
        let r = hom_report(&gl2, &ab, 15, None).unwrap();
        assert_eq!(r.count, 3);
        assert_eq!(r.kernel_orders, vec![60, 60]);
    }

    #[test]
    fn residue_constants_are_group_scalars() {
        let g = group(2, 2, "T^2", GroupKind::G);
        // the identity is its own canonical scalar representative
        assert_eq!(g.element(g.identity()), [1, 0, 0, 1]);
        let _ = APoly::t(g.ring().tower());
    }
}
