//! Exact arithmetic in groups of exponent 4 with central squares.
//!
//! Every element of the free such group on n generators has a unique
//! normal form ∏ gᵢ^{eᵢ} · ∏_{i<j} [gᵢ,gⱼ]^{cᵢⱼ} with eᵢ mod 4 and cᵢⱼ
//! mod 2, packed here as 2-bit exponent lanes in a `u32` (n ≤ 16) and an
//! upper-triangular bit matrix in a `u128`. The free group has order
//! 4ⁿ·2^{n(n−1)/2}.
//!
//! Relation subgroups are held in two layers: an echelon basis for the
//! central part (coordinates = squares followed by commutator bits) plus
//! one coset representative per generator-parity pattern. Closure runs at
//! presentation construction; everything afterwards is a pure query.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::f2::{F2Subspace, F2Vector};
use crate::space::{Character, Space, SpaceError};

/// Generator-count limit imposed by the packed element representation.
pub const MAX_GENERATORS: usize = 16;

/// Parity-pattern budget for subgroup closure; presentations whose
/// relation subgroup projects onto more patterns are rejected rather than
/// silently truncated.
const MAX_PATTERNS: usize = 4096;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("generator count {0} out of range (1..={MAX_GENERATORS})")]
    BadGeneratorCount(usize),
    #[error("relator references generator {0} outside the presentation")]
    BadGeneratorIndex(usize),
    #[error("relator exponent {0} out of range (1..=3)")]
    BadExponent(u32),
    #[error("relation subgroup closure exceeded {0} parity patterns")]
    ClosureTooLarge(usize),
    #[error("enumeration larger than the configured cap of 2^{0}")]
    EnumerationTooLarge(u32),
    #[error("presentation has no involution classes outside the Frattini subgroup")]
    NoInvolutionClasses,
    #[error("involution classes admit no consistent -1 element")]
    NoConsistentMinusOne,
    #[error("involution classes do not pin -1 uniquely")]
    AmbiguousMinusOne,
    #[error(transparent)]
    Space(#[from] SpaceError),
}

/// A word over the generators: pairs of (generator index, exponent 1..=3).
pub type Word = Vec<(usize, u32)>;

#[inline]
fn lo_mask(n: usize) -> u32 {
    let mut m = 0u32;
    for i in 0..n {
        m |= 1 << (2 * i);
    }
    m
}

#[inline]
fn pair_offset(n: usize, i: usize) -> usize {
    i * (2 * n - i - 1) / 2
}

/// Index of the commutator coordinate [gᵢ,gⱼ], i < j.
pub fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    pair_offset(n, i) + (j - i - 1)
}

/// Bits (i,j) with i ∈ p, j ∈ q, i < j — the collection cost of moving
/// q-generators past p-generators.
#[inline]
fn pair_bits(n: usize, p: u32, q: u32) -> u128 {
    let mut out = 0u128;
    let mut s = p;
    while s != 0 {
        let i = s.trailing_zeros() as usize;
        s &= s - 1;
        out ^= ((q as u128) >> (i + 1)) << pair_offset(n, i);
    }
    out
}

/// An element of the free exponent-4, central-squares group on n
/// generators, in normal form.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Element {
    n: u8,
    exps: u32,
    comms: u128,
}

impl Element {
    pub fn identity(n: usize) -> Element {
        assert!((1..=MAX_GENERATORS).contains(&n));
        Element {
            n: n as u8,
            exps: 0,
            comms: 0,
        }
    }

    pub fn generator(n: usize, i: usize) -> Element {
        assert!(i < n, "generator index out of range");
        let mut e = Element::identity(n);
        e.exps = 1 << (2 * i);
        e
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn exponent(&self, i: usize) -> u32 {
        (self.exps >> (2 * i)) & 3
    }

    pub fn commutator_bit(&self, i: usize, j: usize) -> bool {
        (self.comms >> pair_index(self.n(), i, j)) & 1 == 1
    }

    pub fn is_identity(&self) -> bool {
        self.exps == 0 && self.comms == 0
    }

    /// Generator parities, bit i = eᵢ mod 2.
    pub fn parity(&self) -> u32 {
        let mut p = 0u32;
        for i in 0..self.n() {
            p |= ((self.exps >> (2 * i)) & 1) << i;
        }
        p
    }

    pub fn mul(&self, rhs: &Element) -> Element {
        assert_eq!(self.n, rhs.n, "mixed generator counts");
        let n = self.n();
        let lo = lo_mask(n);
        let hi = lo << 1;
        let exps =
            (((self.exps & lo) + (rhs.exps & lo)) ^ (self.exps & hi) ^ (rhs.exps & hi)) & (lo | hi);
        let comms = self.comms ^ rhs.comms ^ pair_bits(n, rhs.parity(), self.parity());
        Element {
            n: self.n,
            exps,
            comms,
        }
    }

    pub fn square(&self) -> Element {
        let n = self.n();
        let lo = lo_mask(n);
        let p = self.parity();
        Element {
            n: self.n,
            exps: (self.exps & lo) << 1,
            comms: pair_bits(n, p, p),
        }
    }

    pub fn inverse(&self) -> Element {
        // Exponent 4: x⁻¹ = x³.
        self.square().mul(self)
    }

    pub fn pow(&self, k: i64) -> Element {
        let mut out = Element::identity(self.n());
        for _ in 0..k.rem_euclid(4) {
            out = out.mul(self);
        }
        out
    }

    /// Order in the free group: 1, 2 or 4.
    pub fn order(&self) -> u32 {
        if self.is_identity() {
            1
        } else if self.square().is_identity() {
            2
        } else {
            4
        }
    }

    pub fn commutator(&self, rhs: &Element) -> Element {
        let n = self.n();
        let (p, q) = (self.parity(), rhs.parity());
        Element {
            n: self.n,
            exps: 0,
            comms: pair_bits(n, p, q) ^ pair_bits(n, q, p),
        }
    }

    /// Element with the given generator parities and no corrections.
    pub fn from_parity(n: usize, pattern: u32) -> Element {
        let mut e = Element::identity(n);
        for i in 0..n {
            if (pattern >> i) & 1 == 1 {
                e.exps |= 1 << (2 * i);
            }
        }
        e
    }

    pub fn evaluate_word(n: usize, word: &[(usize, u32)]) -> Element {
        let mut out = Element::identity(n);
        for &(g, e) in word {
            out = out.mul(&Element::generator(n, g).pow(e as i64));
        }
        out
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "1");
        }
        let mut parts = Vec::new();
        for i in 0..self.n() {
            match self.exponent(i) {
                0 => {}
                1 => parts.push(format!("s{}", i + 1)),
                e => parts.push(format!("s{}^{}", i + 1, e)),
            }
        }
        for i in 0..self.n() {
            for j in (i + 1)..self.n() {
                if self.commutator_bit(i, j) {
                    parts.push(format!("[s{},s{}]", i + 1, j + 1));
                }
            }
        }
        write!(f, "{}", parts.join(" "))
    }
}

/// A vector in the central subgroup: square coordinates (bit i = gᵢ²)
/// followed by commutator coordinates.
#[derive(Clone, Copy, PartialEq, Eq)]
struct CentralVec {
    sq: u32,
    comms: u128,
}

impl CentralVec {
    fn is_zero(&self) -> bool {
        self.sq == 0 && self.comms == 0
    }

    fn xor(&self, other: &CentralVec) -> CentralVec {
        CentralVec {
            sq: self.sq ^ other.sq,
            comms: self.comms ^ other.comms,
        }
    }

    /// Lowest set coordinate, squares first.
    fn leading(&self, n: usize) -> Option<usize> {
        if self.sq != 0 {
            Some(self.sq.trailing_zeros() as usize)
        } else if self.comms != 0 {
            Some(n + self.comms.trailing_zeros() as usize)
        } else {
            None
        }
    }

    fn bit(&self, n: usize, idx: usize) -> bool {
        if idx < n {
            (self.sq >> idx) & 1 == 1
        } else {
            (self.comms >> (idx - n)) & 1 == 1
        }
    }
}

/// Echelon basis of a subspace of the center.
#[derive(Clone)]
struct CentralBasis {
    n: usize,
    rows: Vec<CentralVec>,
}

impl CentralBasis {
    fn new(n: usize) -> Self {
        CentralBasis {
            n,
            rows: Vec::new(),
        }
    }

    fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &CentralVec) -> CentralVec {
        let mut v = *v;
        for r in &self.rows {
            let p = r.leading(self.n).unwrap();
            if v.bit(self.n, p) {
                v = v.xor(r);
            }
        }
        v
    }

    fn contains(&self, v: &CentralVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Inserts a vector, returning true when the span grew.
    fn insert(&mut self, v: &CentralVec) -> bool {
        let v = self.reduce(v);
        if v.is_zero() {
            return false;
        }
        self.rows.push(v);
        self.rows.sort_by_key(|r| r.leading(self.n).unwrap());
        // Back-reduce for a unique echelon form.
        for i in 0..self.rows.len() {
            for j in 0..self.rows.len() {
                if i != j {
                    let p = self.rows[i].leading(self.n).unwrap();
                    if self.rows[j].bit(self.n, p) {
                        let ri = self.rows[i];
                        self.rows[j] = self.rows[j].xor(&ri);
                    }
                }
            }
        }
        true
    }

    /// Dimension of the commutator-only part {v : squares = 0}.
    fn comm_only_dim(&self) -> usize {
        self.rows
            .iter()
            .filter(|r| r.leading(self.n).unwrap() >= self.n)
            .count()
    }
}

/// A subgroup of the free group, normal under generator conjugation,
/// stored as central part + parity-pattern coset representatives.
pub struct Subgroup {
    n: usize,
    central: CentralBasis,
    reps: BTreeMap<u32, Element>,
}

impl Subgroup {
    /// Normal closure of the given elements under products and generator
    /// conjugation.
    fn closure(n: usize, seeds: Vec<Element>) -> Result<Subgroup, GroupError> {
        let mut sub = Subgroup {
            n,
            central: CentralBasis::new(n),
            reps: BTreeMap::from([(0u32, Element::identity(n))]),
        };
        let mut pending = seeds;
        while let Some(x) = pending.pop() {
            let p = x.parity();
            if let Some(r) = sub.reps.get(&p) {
                let d = x.mul(&r.inverse());
                sub.central.insert(&central_vec_of(&d));
                continue;
            }
            if sub.reps.len() >= MAX_PATTERNS {
                return Err(GroupError::ClosureTooLarge(MAX_PATTERNS));
            }
            sub.reps.insert(p, x);
            for r in sub.reps.values() {
                pending.push(x.mul(r));
                pending.push(r.mul(&x));
            }
            for j in 0..n {
                pending.push(x.commutator(&Element::generator(n, j)));
            }
        }
        Ok(sub)
    }

    pub fn log2_order(&self) -> u32 {
        debug_assert!(self.reps.len().is_power_of_two());
        self.central.dim() as u32 + self.reps.len().trailing_zeros()
    }

    pub fn contains(&self, x: &Element) -> bool {
        match self.reps.get(&x.parity()) {
            None => false,
            Some(r) => {
                let d = x.mul(&r.inverse());
                self.central.contains(&central_vec_of(&d))
            }
        }
    }

    /// Parity patterns the subgroup projects onto.
    pub fn parity_patterns(&self) -> Vec<u32> {
        self.reps.keys().copied().collect()
    }

    /// Explicit element list, capped at 2^`cap_log2` entries.
    pub fn elements(&self, cap_log2: u32) -> Result<Vec<Element>, GroupError> {
        if self.log2_order() > cap_log2 {
            return Err(GroupError::EnumerationTooLarge(cap_log2));
        }
        let mut out = Vec::with_capacity(1 << self.log2_order());
        for rep in self.reps.values() {
            let mut stack = vec![(*rep, 0usize)];
            while let Some((e, i)) = stack.pop() {
                if i == self.central.rows.len() {
                    out.push(e);
                } else {
                    stack.push((e, i + 1));
                    let row = element_of_central(self.n, &self.central.rows[i]);
                    stack.push((e.mul(&row), i + 1));
                }
            }
        }
        out.sort();
        out.dedup();
        debug_assert_eq!(out.len(), 1usize << self.log2_order());
        Ok(out)
    }
}

// The commutator words already live on pair-index coordinates, so only
// the exponent lanes need repacking.

fn central_vec_of(d: &Element) -> CentralVec {
    let n = d.n();
    let mut sq = 0u32;
    for i in 0..n {
        let e = d.exponent(i);
        debug_assert!(e % 2 == 0, "central residue with odd exponent");
        if e == 2 {
            sq |= 1 << i;
        }
    }
    CentralVec { sq, comms: d.comms }
}

fn element_of_central(n: usize, v: &CentralVec) -> Element {
    let mut e = Element::identity(n);
    for i in 0..n {
        if (v.sq >> i) & 1 == 1 {
            e.exps |= 2 << (2 * i);
        }
    }
    e.comms = v.comms;
    e
}

/// Frattini data of a presented group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrattiniReport {
    /// log₂ of the Frattini subgroup (image of all squares and
    /// commutators).
    pub log2_order: u32,
    /// log₂ of the image of the commutator subgroup alone.
    pub log2_commutator_image: u32,
    /// Whether every generator squares into the relation subgroup.
    pub generators_involutive: bool,
    /// For involution-generated presentations: does the commutator image
    /// already give the whole Frattini subgroup?
    pub frattini_equals_commutators: Option<bool>,
}

/// Center report for the subgroup generated by the products of generator
/// pairs (the even subgroup).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CenterReport {
    /// log₂ of the even subgroup in the quotient.
    pub log2_even_subgroup: u32,
    /// log₂ of its center in the quotient.
    pub log2_center: u32,
    /// Parity patterns of center classes mod Frattini that consist of
    /// order-4 elements.
    pub order4_class_patterns: Vec<F2Vector>,
    /// Number of independent such classes.
    pub independent_order4: u32,
}

/// A finitely presented group in the exponent-4 central-squares variety,
/// with its relation subgroup closed at construction.
pub struct Presentation {
    n: usize,
    relators: Vec<Word>,
    sub: Subgroup,
}

impl Presentation {
    pub fn new(n: usize, relators: Vec<Word>) -> Result<Presentation, GroupError> {
        if n == 0 || n > MAX_GENERATORS {
            return Err(GroupError::BadGeneratorCount(n));
        }
        for w in &relators {
            for &(g, e) in w {
                if g >= n {
                    return Err(GroupError::BadGeneratorIndex(g));
                }
                if e == 0 || e > 3 {
                    return Err(GroupError::BadExponent(e));
                }
            }
        }
        let seeds = relators
            .iter()
            .map(|w| Element::evaluate_word(n, w))
            .collect();
        let sub = Subgroup::closure(n, seeds)?;
        Ok(Presentation { n, relators, sub })
    }

    pub fn generator_count(&self) -> usize {
        self.n
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn relation_subgroup(&self) -> &Subgroup {
        &self.sub
    }

    /// log₂ |free group on n generators| = 2n + n(n−1)/2.
    pub fn log2_free_order(n: usize) -> u32 {
        (2 * n + n * (n - 1) / 2) as u32
    }

    /// log₂ of the presented quotient's order.
    pub fn quotient_log2_order(&self) -> u32 {
        Self::log2_free_order(self.n) - self.sub.log2_order()
    }

    /// Order of an element in the quotient: 1, 2 or 4.
    pub fn order_in_quotient(&self, x: &Element) -> u32 {
        if self.sub.contains(x) {
            1
        } else if self.sub.contains(&x.square()) {
            2
        } else {
            4
        }
    }

    pub fn frattini(&self) -> FrattiniReport {
        let n = self.n;
        let central_dim = (n + n * (n - 1) / 2) as u32;
        let log2_order = central_dim - self.sub.central.dim() as u32;
        let log2_commutator_image =
            (n * (n - 1) / 2) as u32 - self.sub.central.comm_only_dim() as u32;
        let generators_involutive =
            (0..n).all(|i| self.sub.contains(&Element::generator(n, i).square()));
        FrattiniReport {
            log2_order,
            log2_commutator_image,
            generators_involutive,
            frattini_equals_commutators: generators_involutive
                .then_some(log2_order == log2_commutator_image),
        }
    }

    /// Nonidentity cosets of the Frattini subgroup containing an
    /// involution, one parity pattern per coset, in ascending pattern
    /// order. The square of an element depends only on its coset, so the
    /// test is one membership check per pattern.
    pub fn involution_classes(&self) -> Vec<F2Vector> {
        let n = self.n;
        let u_patterns = self.sub.parity_patterns();
        let mut out = Vec::new();
        for pattern in 1u32..(1 << n) {
            if u_patterns.contains(&pattern) {
                continue; // identity coset
            }
            if u_patterns
                .iter()
                .any(|&u| u != 0 && (pattern ^ u) < pattern)
            {
                continue; // not the canonical coset representative
            }
            let x = Element::from_parity(n, pattern);
            if self.sub.contains(&x.square()) {
                out.push(F2Vector::from_bits(n, pattern));
            }
        }
        out
    }

    /// Builds the candidate space of orderings dual to the involution
    /// classes, in the raw generator-pattern coordinates.
    pub fn extract_candidate_space_raw(&self) -> Result<Space, GroupError> {
        let classes = self.involution_classes();
        if classes.is_empty() {
            return Err(GroupError::NoInvolutionClasses);
        }
        let n = self.n;
        // Solve ⟨ε, a⟩ = 1 for all involution classes ε.
        let mut solved: Vec<(usize, u32, bool)> = Vec::new();
        for c in &classes {
            let mut bits = c.bits();
            let mut rhs = true;
            for &(p, rbits, rrhs) in &solved {
                if (bits >> p) & 1 == 1 {
                    bits ^= rbits;
                    rhs ^= rrhs;
                }
            }
            if bits == 0 {
                if rhs {
                    return Err(GroupError::NoConsistentMinusOne);
                }
                continue;
            }
            solved.push((bits.trailing_zeros() as usize, bits, rhs));
        }
        if solved.len() < n {
            return Err(GroupError::AmbiguousMinusOne);
        }
        // All n coordinates are pivots; substitute them in descending
        // pivot order.
        solved.sort_by_key(|&(p, _, _)| std::cmp::Reverse(p));
        let mut a = 0u32;
        for &(p, bits, rhs) in &solved {
            let mut v = rhs;
            let mut rest = bits & !(1 << p);
            while rest != 0 {
                let j = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if (a >> j) & 1 == 1 {
                    v = !v;
                }
            }
            if v {
                a |= 1 << p;
            }
        }
        let minus_one = F2Vector::from_bits(n, a);
        let chars = classes.into_iter().map(Character).collect();
        Ok(Space::new(n, minus_one, chars)?)
    }

    /// The candidate space rebased so −1 is the first basis vector.
    pub fn extract_candidate_space(&self) -> Result<Space, GroupError> {
        let raw = self.extract_candidate_space_raw()?;
        Ok(raw.normalize().0)
    }

    /// Center of the even subgroup H = ⟨gᵢgⱼ⟩ in the quotient, with the
    /// order-4 classes outside the Frattini subgroup.
    pub fn center_of_even_subgroup(&self) -> Result<CenterReport, GroupError> {
        let n = self.n;
        let mut seeds: Vec<Element> = self
            .relators
            .iter()
            .map(|w| Element::evaluate_word(n, w))
            .collect();
        for i in 0..n {
            for j in (i + 1)..n {
                seeds.push(Element::generator(n, i).mul(&Element::generator(n, j)));
            }
        }
        let h = Subgroup::closure(n, seeds)?;

        let h_patterns = h.parity_patterns();
        let pattern_vecs: Vec<F2Vector> = h_patterns
            .iter()
            .map(|&p| F2Vector::from_bits(n.max(1), p))
            .collect();
        let u_h_basis = F2Subspace::span(n.max(1), &pattern_vecs);
        // Centrality in the quotient is a linear condition on the parity
        // pattern: all commutators against a basis of H must fall in the
        // relation subgroup.
        let central_patterns: Vec<u32> = h_patterns
            .iter()
            .copied()
            .filter(|&x| {
                u_h_basis.basis().iter().all(|b| {
                    let c = CentralVec {
                        sq: 0,
                        comms: pair_bits(n, x, b.bits()) ^ pair_bits(n, b.bits(), x),
                    };
                    self.sub.central.contains(&c)
                })
            })
            .collect();
        debug_assert!(central_patterns.len().is_power_of_two());

        let n_patterns = self.sub.parity_patterns();
        let dim_u_n = n_patterns.len().trailing_zeros();
        let dim_u_h = h_patterns.len().trailing_zeros();
        let log2_even_subgroup = (h.central.dim() as u32 + dim_u_h) - self.sub.log2_order();
        let log2_center = (h.central.dim() as u32 - self.sub.central.dim() as u32)
            + (central_patterns.len().trailing_zeros() - dim_u_n);

        let mut order4 = Vec::new();
        for &p in &central_patterns {
            if n_patterns.contains(&p) {
                continue;
            }
            if n_patterns.iter().any(|&u| u != 0 && (p ^ u) < p) {
                continue;
            }
            if !self.sub.contains(&Element::from_parity(n, p).square()) {
                order4.push(F2Vector::from_bits(n, p));
            }
        }
        let n_pattern_vecs: Vec<F2Vector> = n_patterns
            .iter()
            .map(|&p| F2Vector::from_bits(n.max(1), p))
            .collect();
        let mut with_un = n_pattern_vecs.clone();
        with_un.extend(order4.iter().copied());
        let independent_order4 = (F2Subspace::span(n.max(1), &with_un).dim()
            - F2Subspace::span(n.max(1), &n_pattern_vecs).dim())
            as u32;
        Ok(CenterReport {
            log2_even_subgroup,
            log2_center,
            order4_class_patterns: order4,
            independent_order4,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn squares(n: usize) -> Vec<Word> {
        (0..n).map(|i| vec![(i, 2)]).collect()
    }

    fn product_square(gens: &[usize]) -> Word {
        let mut w: Word = gens.iter().map(|&g| (g, 1)).collect();
        w.extend(gens.iter().map(|&g| (g, 1)));
        w
    }

    /// Relators of the smallest connected group: three involutions whose
    /// product of all three is again an involution.
    pub(crate) fn three_generator_presentation() -> Presentation {
        let mut rels = squares(3);
        rels.push(product_square(&[0, 1, 2]));
        Presentation::new(3, rels).unwrap()
    }

    /// Two blocks of three involutions each.
    pub(crate) fn six_generator_presentation() -> Presentation {
        let mut rels = squares(6);
        rels.push(product_square(&[0, 1, 2]));
        rels.push(product_square(&[3, 4, 5]));
        Presentation::new(6, rels).unwrap()
    }

    /// Five involutions whose full product is an involution.
    pub(crate) fn five_generator_presentation() -> Presentation {
        let mut rels = squares(5);
        rels.push(product_square(&[0, 1, 2, 3, 4]));
        Presentation::new(5, rels).unwrap()
    }

    #[test]
    fn generator_squares_have_clean_normal_form() {
        let g1 = Element::generator(4, 0);
        let sq = g1.mul(&g1);
        assert_eq!(sq.exponent(0), 2);
        assert_eq!(sq.comms, 0);
    }

    #[test]
    fn product_of_two_generators_has_order_four() {
        let x = Element::generator(4, 0).mul(&Element::generator(4, 1));
        let sq = x.mul(&x);
        assert_eq!(sq.exponent(0), 2);
        assert_eq!(sq.exponent(1), 2);
        assert!(sq.commutator_bit(0, 1));
        assert_eq!(x.order(), 4);
        assert_eq!(Element::identity(4).order(), 1);
    }

    fn random_element(rng: &mut StdRng, n: usize) -> Element {
        let mut e = Element::identity(n);
        e.exps = rng.gen::<u32>() & (lo_mask(n) | (lo_mask(n) << 1));
        let pairs = n * (n - 1) / 2;
        e.comms = rng.gen::<u128>() & ((1u128 << pairs) - 1);
        e
    }

    #[test]
    fn inverses_fourth_powers_and_associativity() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..1000 {
            let n = rng.gen_range(1..=6);
            let x = random_element(&mut rng, n);
            assert!(x.mul(&x.inverse()).is_identity());
            assert!(x.pow(4).is_identity());
            let y = random_element(&mut rng, n);
            let z = random_element(&mut rng, n);
            assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
            // Squares are central.
            let s = x.square();
            assert_eq!(s.mul(&y), y.mul(&s));
        }
    }

    #[test]
    fn empty_presentation_has_trivial_relation_subgroup() {
        let p = Presentation::new(3, Vec::new()).unwrap();
        assert_eq!(p.relation_subgroup().log2_order(), 0);
        assert_eq!(p.quotient_log2_order(), 9);
    }

    #[test]
    fn free_group_orders() {
        assert_eq!(Presentation::log2_free_order(2), 5);
        assert_eq!(Presentation::log2_free_order(3), 9);
        assert_eq!(Presentation::log2_free_order(6), 27);
    }

    #[test]
    fn three_generator_quotient_has_order_32() {
        let p = three_generator_presentation();
        assert_eq!(p.relation_subgroup().log2_order(), 4);
        assert_eq!(p.quotient_log2_order(), 5);
    }

    #[test]
    fn six_generator_quotient_has_order_2_pow_19() {
        let p = six_generator_presentation();
        assert_eq!(p.relation_subgroup().log2_order(), 8);
        assert_eq!(p.quotient_log2_order(), 19);
    }

    #[test]
    fn five_generator_quotient_has_order_2_pow_14() {
        let p = five_generator_presentation();
        assert_eq!(p.relation_subgroup().log2_order(), 6);
        assert_eq!(p.quotient_log2_order(), 14);
    }

    #[test]
    fn order_in_quotient_respects_relators() {
        let p = three_generator_presentation();
        let g1 = Element::generator(3, 0);
        assert_eq!(g1.order(), 4);
        assert_eq!(p.order_in_quotient(&g1), 2);
        let free = Presentation::new(2, Vec::new()).unwrap();
        let g1g2 = Element::generator(2, 0).mul(&Element::generator(2, 1));
        assert_eq!(free.order_in_quotient(&g1g2), 4);
    }

    #[test]
    fn frattini_logs() {
        assert_eq!(six_generator_presentation().frattini().log2_order, 13);
        let free2 = Presentation::new(2, Vec::new()).unwrap();
        assert_eq!(free2.frattini().log2_order, 3);
        let f = three_generator_presentation().frattini();
        assert_eq!(f.log2_order, 2);
        assert_eq!(f.frattini_equals_commutators, Some(true));
    }

    #[test]
    fn involution_class_counts() {
        assert_eq!(six_generator_presentation().involution_classes().len(), 8);
        assert_eq!(five_generator_presentation().involution_classes().len(), 6);
        let w1 = Presentation::new(1, vec![vec![(0, 2)]]).unwrap();
        assert_eq!(w1.involution_classes().len(), 1);
    }

    #[test]
    fn six_generator_classes_are_the_expected_cosets() {
        let classes = six_generator_presentation().involution_classes();
        let patterns: Vec<u32> = classes.iter().map(|c| c.bits()).collect();
        let mut expect = vec![
            0b000001, 0b000010, 0b000100, 0b000111, 0b001000, 0b010000, 0b100000, 0b111000,
        ];
        expect.sort();
        let mut got = patterns.clone();
        got.sort();
        assert_eq!(got, expect);
    }

    #[test]
    fn extraction_finds_minus_one() {
        let p = three_generator_presentation();
        let raw = p.extract_candidate_space_raw().unwrap();
        assert_eq!(raw.minus_one().bits(), 0b111);
        assert_eq!(raw.chars().len(), 4);
        let canonical = p.extract_candidate_space().unwrap();
        assert!(canonical.is_canonical());

        let basic = five_generator_presentation();
        let raw = basic.extract_candidate_space_raw().unwrap();
        assert_eq!(raw.minus_one().bits(), 0b11111);
        assert_eq!(raw.chars().len(), 6);
        assert_eq!(raw.dim(), 5);
    }

    #[test]
    fn center_of_even_subgroup_examples() {
        // Three involutions, one fan: two independent order-4 classes.
        let report = three_generator_presentation()
            .center_of_even_subgroup()
            .unwrap();
        assert_eq!(report.independent_order4, 2);
        let patterns: Vec<u32> = report
            .order4_class_patterns
            .iter()
            .map(|p| p.bits())
            .collect();
        assert_eq!(patterns.len(), 3);
        for p in patterns {
            assert_eq!(p.count_ones() % 2, 0);
        }

        // Free on two involutions: the even subgroup is cyclic of order 4
        // and is its own center.
        let p = Presentation::new(2, vec![vec![(0, 2)], vec![(1, 2)]]).unwrap();
        let report = p.center_of_even_subgroup().unwrap();
        assert_eq!(report.log2_even_subgroup, 2);
        assert_eq!(report.log2_center, 2);
        assert_eq!(report.independent_order4, 1);

        // Two components: no order-4 classes survive in the center,
        // matching the trivial translation group of the space.
        let report = six_generator_presentation()
            .center_of_even_subgroup()
            .unwrap();
        assert_eq!(report.independent_order4, 0);
        assert!(report.order4_class_patterns.is_empty());
    }

    #[test]
    fn subgroup_enumeration_matches_log_order() {
        let p = three_generator_presentation();
        let elems = p.relation_subgroup().elements(16).unwrap();
        assert_eq!(elems.len(), 16);
        for e in &elems {
            assert!(p.relation_subgroup().contains(e));
        }
    }
}
