//! Finite spaces of orderings.
//!
//! A space is a finite set of sign characters on an F₂ square-class space
//! `G` with a distinguished element −1. Characters are stored as packed
//! sign vectors: bit `i` set means the character sends basis element `bᵢ`
//! to −1. In the canonical presentation −1 is the first basis vector, so
//! every character's first bit is set.
//!
//! Everything here is immutable after construction and safe to share
//! across threads. Tie-breaking (component order, canonical files,
//! equivalence search) follows the canonical vector order of [`crate::f2`].

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::f2::{F2Subspace, F2Vector, MAX_DIM};

/// Largest ambient dimension accepted by the reference value-set
/// computation. The scan is exponential in the dimension.
pub const MAX_VALUE_SET_DIM: usize = 8;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SpaceError {
    #[error("ambient dimension {0} out of range (1..={MAX_DIM})")]
    BadDimension(usize),
    #[error("distinguished element -1 must be nonzero")]
    ZeroMinusOne,
    #[error("character set must be nonempty")]
    NoCharacters,
    #[error("duplicate character {0}")]
    DuplicateCharacter(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("character {0} is not in the space")]
    CharacterNotInSpace(String),
    #[error("generated set violates the duality condition: not a subspace")]
    NotASubspace,
    #[error("operation requires a connected space of rank > 1")]
    QuotientPrecondition,
    #[error("space structure is inconsistent: {0}")]
    Inconsistent(String),
    #[error("ambient dimension {0} too large for this scan (max {1})")]
    ScanTooLarge(usize, usize),
}

/// A sign character σ ∈ Hom(G, {±1}), packed as its sign vector.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Character(pub F2Vector);

impl Character {
    /// σ(a) as +1 or −1.
    pub fn evaluate(&self, a: &F2Vector) -> i32 {
        if self.0.dot(a) {
            -1
        } else {
            1
        }
    }

    /// Sum of σ over the entries of a diagonal form.
    pub fn signature(&self, f: &Form) -> i32 {
        f.entries().iter().map(|a| self.evaluate(a)).sum()
    }

    pub fn vec(&self) -> F2Vector {
        self.0
    }
}

impl std::ops::BitXor for Character {
    type Output = Character;
    fn bitxor(self, rhs: Character) -> Character {
        Character(self.0 ^ rhs.0)
    }
}

impl fmt::Debug for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Character({})", self.0.sign_string())
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.sign_string())
    }
}

/// A diagonal quadratic form ⟨a₁,…,a_k⟩ over the square-class space.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Form(Vec<F2Vector>);

impl Form {
    pub fn new(entries: Vec<F2Vector>) -> Self {
        assert!(!entries.is_empty(), "forms must be nonempty");
        let d = entries[0].dim();
        assert!(
            entries.iter().all(|e| e.dim() == d),
            "dimension mismatch among form entries"
        );
        Form(entries)
    }

    pub fn entries(&self) -> &[F2Vector] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Forms are nonempty by construction.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// The scaled form c·f.
    pub fn scale(&self, c: &F2Vector) -> Form {
        Form(self.0.iter().map(|a| *a ^ *c).collect())
    }

    /// Orthogonal sum f ⊕ g, i.e. concatenation of entries.
    pub fn orthogonal_sum(&self, g: &Form) -> Form {
        let mut entries = self.0.clone();
        entries.extend_from_slice(&g.0);
        Form(entries)
    }
}

/// Represented-value set of a form: a subset of G.
pub type ValueSet = BTreeSet<F2Vector>;

/// Maximal subset X_α of a space fixed setwise by multiplication with α.
pub enum XAlpha {
    /// No character of X stays in X after multiplication by α.
    Empty,
    Subspace {
        /// The members of X_α, in canonical order.
        members: Vec<Character>,
        /// X_α presented as a space of orderings in its own right.
        space: Space,
    },
}

impl XAlpha {
    pub fn members(&self) -> &[Character] {
        match self {
            XAlpha::Empty => &[],
            XAlpha::Subspace { members, .. } => members,
        }
    }

    /// Rank of X_α as a subspace (0 when empty).
    pub fn rank(&self) -> usize {
        match self {
            XAlpha::Empty => 0,
            XAlpha::Subspace { members, .. } => {
                let dim = members[0].0.dim();
                let vecs: Vec<F2Vector> = members.iter().map(|c| c.0).collect();
                F2Subspace::span(dim, &vecs).dim()
            }
        }
    }
}

/// An invertible linear map between two square-class spaces, stored by the
/// images of the standard basis vectors.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearMap {
    cols: Vec<F2Vector>,
}

impl LinearMap {
    pub fn identity(n: usize) -> Self {
        LinearMap {
            cols: (0..n).map(|i| F2Vector::unit(n, i)).collect(),
        }
    }

    pub fn from_columns(cols: Vec<F2Vector>) -> Self {
        assert!(!cols.is_empty());
        LinearMap { cols }
    }

    pub fn n(&self) -> usize {
        self.cols.len()
    }

    pub fn columns(&self) -> &[F2Vector] {
        &self.cols
    }

    pub fn apply(&self, v: &F2Vector) -> F2Vector {
        assert_eq!(v.dim(), self.cols.len(), "dimension mismatch");
        let mut out = F2Vector::zero(self.cols[0].dim());
        for i in 0..self.cols.len() {
            if v.bit(i) {
                out ^= self.cols[i];
            }
        }
        out
    }

    /// self ∘ other.
    pub fn compose(&self, other: &LinearMap) -> LinearMap {
        let cols = other.cols.iter().map(|c| self.apply(c)).collect();
        LinearMap { cols }
    }

    /// Pullback of a character along this map: (σ∘φ)(eᵢ) = σ(φ(eᵢ)).
    pub fn pullback(&self, sigma: &Character) -> Character {
        let mut v = F2Vector::zero(self.cols.len());
        for (i, col) in self.cols.iter().enumerate() {
            v.set_bit(i, sigma.0.dot(col));
        }
        Character(v)
    }

    pub fn inverse(&self) -> Option<LinearMap> {
        let n = self.cols.len();
        assert_eq!(self.cols[0].dim(), n, "only square maps can be inverted");
        // Row representation of (M | I), eliminated in place.
        let mut m: Vec<u32> = (0..n)
            .map(|r| {
                let mut bits = 0u32;
                for (c, col) in self.cols.iter().enumerate() {
                    if col.bit(r) {
                        bits |= 1 << c;
                    }
                }
                bits
            })
            .collect();
        let mut inv: Vec<u32> = (0..n).map(|r| 1u32 << r).collect();
        for c in 0..n {
            let pivot = (c..n).find(|&r| (m[r] >> c) & 1 == 1)?;
            m.swap(c, pivot);
            inv.swap(c, pivot);
            for r in 0..n {
                if r != c && (m[r] >> c) & 1 == 1 {
                    m[r] ^= m[c];
                    inv[r] ^= inv[c];
                }
            }
        }
        // Back to column representation.
        let cols = (0..n)
            .map(|c| {
                let mut v = F2Vector::zero(n);
                for (r, bits) in inv.iter().enumerate() {
                    v.set_bit(r, (bits >> c) & 1 == 1);
                }
                v
            })
            .collect();
        Some(LinearMap { cols })
    }
}

/// A finite space of orderings (X, G).
#[derive(Clone, PartialEq, Eq)]
pub struct Space {
    dim: usize,
    minus_one: F2Vector,
    chars: Vec<Character>,
}

impl Space {
    /// Builds a candidate space. Structural constraints (dimensions,
    /// distinctness, nonzero −1) are enforced here; the ordering-space
    /// axioms themselves are the business of `verify_axioms`, so that
    /// defective candidates can be represented and rejected.
    pub fn new(
        dim: usize,
        minus_one: F2Vector,
        mut chars: Vec<Character>,
    ) -> Result<Space, SpaceError> {
        if dim == 0 || dim > MAX_DIM {
            return Err(SpaceError::BadDimension(dim));
        }
        if minus_one.dim() != dim {
            return Err(SpaceError::DimensionMismatch {
                expected: dim,
                got: minus_one.dim(),
            });
        }
        if minus_one.is_zero() {
            return Err(SpaceError::ZeroMinusOne);
        }
        if chars.is_empty() {
            return Err(SpaceError::NoCharacters);
        }
        for c in &chars {
            if c.0.dim() != dim {
                return Err(SpaceError::DimensionMismatch {
                    expected: dim,
                    got: c.0.dim(),
                });
            }
        }
        chars.sort();
        for w in chars.windows(2) {
            if w[0] == w[1] {
                return Err(SpaceError::DuplicateCharacter(w[0].0.sign_string()));
            }
        }
        Ok(Space {
            dim,
            minus_one,
            chars,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn minus_one(&self) -> F2Vector {
        self.minus_one
    }

    pub fn chars(&self) -> &[Character] {
        &self.chars
    }

    pub fn contains_char(&self, c: &Character) -> bool {
        self.chars.binary_search(c).is_ok()
    }

    /// Span of the characters inside χ(G).
    pub fn char_span(&self) -> F2Subspace {
        let vecs: Vec<F2Vector> = self.chars.iter().map(|c| c.0).collect();
        F2Subspace::span(self.dim, &vecs)
    }

    /// Number of independent orderings.
    pub fn rank(&self) -> usize {
        self.char_span().dim()
    }

    /// True when −1 is the first basis vector, the canonical presentation.
    pub fn is_canonical(&self) -> bool {
        self.minus_one == F2Vector::unit(self.dim, 0)
    }

    /// Rewrites the space on a basis starting at −1, making it canonical.
    /// Returns the space together with the chosen basis (new basis vectors
    /// expressed in the old coordinates).
    pub fn normalize(&self) -> (Space, Vec<F2Vector>) {
        let n = self.dim;
        let mut basis: Vec<F2Vector> = vec![self.minus_one];
        for i in 0..n {
            if basis.len() == n {
                break;
            }
            let cand = F2Vector::unit(n, i);
            if !F2Subspace::span(n, &basis).contains(&cand) {
                basis.push(cand);
            }
        }
        debug_assert_eq!(basis.len(), n);
        let chars = self
            .chars
            .iter()
            .map(|c| {
                let mut v = F2Vector::zero(n);
                for (j, b) in basis.iter().enumerate() {
                    v.set_bit(j, c.0.dot(b));
                }
                Character(v)
            })
            .collect();
        let space = Space::new(n, F2Vector::unit(n, 0), chars)
            .expect("rebasing preserves structural invariants");
        (space, basis)
    }

    /// Value set of a diagonal form.
    ///
    /// Unary sets are `{a}` and binary sets are defined pointwise by
    /// signs; longer forms are reduced by left-nested induction
    /// `D⟨a₁,…⟩ = ⋃_{b∈D⟨a₂,…⟩} D⟨a₁,b⟩` over a canonical entry order, so
    /// the result depends only on the entry multiset and commutes with
    /// scaling.
    pub fn value_set(&self, f: &Form) -> Result<ValueSet, SpaceError> {
        if self.dim > MAX_VALUE_SET_DIM {
            return Err(SpaceError::ScanTooLarge(self.dim, MAX_VALUE_SET_DIM));
        }
        for e in f.entries() {
            if e.dim() != self.dim {
                return Err(SpaceError::DimensionMismatch {
                    expected: self.dim,
                    got: e.dim(),
                });
            }
        }
        let shift = canonical_shift(f.entries());
        let mut translated: Vec<F2Vector> = f.entries().iter().map(|a| *a ^ shift).collect();
        translated.sort();
        let folded = self.fold_value_set(&translated);
        Ok(folded.into_iter().map(|x| x ^ shift).collect())
    }

    fn fold_value_set(&self, sorted_entries: &[F2Vector]) -> BTreeSet<F2Vector> {
        let mut d: BTreeSet<F2Vector> = BTreeSet::new();
        d.insert(*sorted_entries.last().unwrap());
        for a in sorted_entries.iter().rev().skip(1) {
            let mut next = BTreeSet::new();
            for b in &d {
                next.extend(self.binary_value_set(a, b));
            }
            d = next;
        }
        d
    }

    /// D⟨a,b⟩ = {c : every σ ∈ X has σ(c) = σ(a) or σ(c) = σ(b)}.
    fn binary_value_set(&self, a: &F2Vector, b: &F2Vector) -> Vec<F2Vector> {
        let n = self.dim;
        let mut out = Vec::new();
        for bits in 0u32..(1 << n) {
            let c = F2Vector::from_bits(n, bits);
            let ok = self.chars.iter().all(|s| {
                let sc = s.evaluate(&c);
                sc == s.evaluate(a) || sc == s.evaluate(b)
            });
            if ok {
                out.push(c);
            }
        }
        out
    }

    /// Isometry of forms: equal dimension and equal signature at every
    /// ordering.
    pub fn isometric(&self, f: &Form, g: &Form) -> bool {
        f.len() == g.len() && self.chars.iter().all(|s| s.signature(f) == s.signature(g))
    }

    /// Two orderings are simply connected when some other pair of X has
    /// the same product.
    pub fn simply_connected(&self, a: &Character, b: &Character) -> Result<bool, SpaceError> {
        for c in [a, b] {
            if !self.contains_char(c) {
                return Err(SpaceError::CharacterNotInSpace(c.0.sign_string()));
            }
        }
        if a == b {
            return Ok(false);
        }
        let d = a.0 ^ b.0;
        for t in &self.chars {
            let t2 = Character(t.0 ^ d);
            if self.contains_char(&t2) {
                let same = (t.0 == a.0 && t2.0 == b.0) || (t.0 == b.0 && t2.0 == a.0);
                if !same {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }

    /// Partition of X into connected components, ordered by smallest
    /// member; members of each class are in canonical order.
    pub fn component_partition(&self) -> Vec<Vec<Character>> {
        let k = self.chars.len();
        let mut class = vec![usize::MAX; k];
        let mut next = 0usize;
        for start in 0..k {
            if class[start] != usize::MAX {
                continue;
            }
            class[start] = next;
            let mut queue = vec![start];
            while let Some(i) = queue.pop() {
                for j in 0..k {
                    if class[j] == usize::MAX
                        && self
                            .simply_connected(&self.chars[i], &self.chars[j])
                            .expect("characters come from the space")
                    {
                        class[j] = next;
                        queue.push(j);
                    }
                }
            }
            next += 1;
        }
        let mut parts: Vec<Vec<Character>> = vec![Vec::new(); next];
        for (i, &c) in class.iter().enumerate() {
            parts[c].push(self.chars[i]);
        }
        for p in &mut parts {
            p.sort();
        }
        parts.sort_by_key(|p| p[0]);
        parts
    }

    pub fn is_connected(&self) -> bool {
        self.component_partition().len() == 1
    }

    /// The connected components, each presented as a space in its own
    /// right via the subspace construction.
    pub fn components(&self) -> Result<Vec<Space>, SpaceError> {
        self.component_partition()
            .into_iter()
            .map(|part| self.subspace_from_set(&part))
            .collect()
    }

    /// Subspace generated by a set of orderings: the products of odd
    /// numbers of generators that lie in X, presented on G modulo the
    /// annihilator of that set.
    pub fn subspace(&self, generators: &[Character]) -> Result<Space, SpaceError> {
        if generators.is_empty() {
            return Err(SpaceError::NoCharacters);
        }
        for g in generators {
            if !self.contains_char(g) {
                return Err(SpaceError::CharacterNotInSpace(g.0.sign_string()));
            }
        }
        // Odd products of generators form the coset g₀ + span{g₀+gᵢ}.
        let base = generators[0].0;
        let diffs: Vec<F2Vector> = generators.iter().map(|g| g.0 ^ base).collect();
        let affine = F2Subspace::span(self.dim, &diffs);
        let members: Vec<Character> = self
            .chars
            .iter()
            .copied()
            .filter(|s| affine.contains(&(s.0 ^ base)))
            .collect();
        self.subspace_from_set(&members)
    }

    /// Presents a subset Y ⊆ X satisfying the duality condition as a space
    /// (Y, G/Δ) with Δ = Y^⊥, rebased so that −1 is the first basis
    /// vector.
    pub fn subspace_from_set(&self, members: &[Character]) -> Result<Space, SpaceError> {
        if members.is_empty() {
            return Err(SpaceError::NoCharacters);
        }
        let vecs: Vec<F2Vector> = members.iter().map(|c| c.0).collect();
        let span = F2Subspace::span(self.dim, &vecs);
        // Duality: Δ^⊥ ∩ X must not exceed Y.
        for s in &self.chars {
            if span.contains(&s.0) && members.binary_search(s).is_err() {
                return Err(SpaceError::NotASubspace);
            }
        }
        let delta = span.annihilator();
        let pivots: Vec<usize> = delta.basis().iter().map(|r| r.leading().unwrap()).collect();
        let free: Vec<usize> = (0..self.dim).filter(|j| !pivots.contains(j)).collect();
        let new_dim = free.len();
        if new_dim == 0 {
            return Err(SpaceError::Inconsistent(
                "quotient space is zero-dimensional".into(),
            ));
        }
        let reduced_minus_one = delta.reduce(&self.minus_one);
        let mut m = F2Vector::zero(new_dim);
        for (j, &coord) in free.iter().enumerate() {
            m.set_bit(j, reduced_minus_one.bit(coord));
        }
        if m.is_zero() {
            return Err(SpaceError::Inconsistent(
                "-1 vanishes in the quotient".into(),
            ));
        }
        let chars: Vec<Character> = members
            .iter()
            .map(|s| {
                let mut v = F2Vector::zero(new_dim);
                for (j, &coord) in free.iter().enumerate() {
                    v.set_bit(j, s.0.bit(coord));
                }
                Character(v)
            })
            .collect();
        let (canonical, _) = Space::new(new_dim, m, chars)?.normalize();
        Ok(canonical)
    }

    /// X_α = {σ ∈ X : σα ∈ X}, the maximal subset with αX_α = X_α.
    pub fn x_alpha(&self, alpha: &F2Vector) -> Result<XAlpha, SpaceError> {
        if alpha.dim() != self.dim {
            return Err(SpaceError::DimensionMismatch {
                expected: self.dim,
                got: alpha.dim(),
            });
        }
        let members: Vec<Character> = self
            .chars
            .iter()
            .copied()
            .filter(|s| self.contains_char(&Character(s.0 ^ *alpha)))
            .collect();
        if members.is_empty() {
            return Ok(XAlpha::Empty);
        }
        debug_assert!(members
            .iter()
            .all(|s| members.binary_search(&Character(s.0 ^ *alpha)).is_ok()));
        let space = self.subspace_from_set(&members)?;
        Ok(XAlpha::Subspace { members, space })
    }

    /// The translation group T = {α ∈ χ(G) : αX = X}, as a subspace of
    /// χ(G). Computed by intersecting the translates σ·X and checking the
    /// result is closed under products.
    pub fn translation_group(&self) -> F2Subspace {
        let first = self.chars[0].0;
        let mut candidates: Vec<F2Vector> = self.chars.iter().map(|s| s.0 ^ first).collect();
        candidates.retain(|alpha| {
            self.chars
                .iter()
                .all(|s| self.contains_char(&Character(s.0 ^ *alpha)))
        });
        let set: BTreeSet<F2Vector> = candidates.iter().copied().collect();
        for a in &set {
            for b in &set {
                debug_assert!(set.contains(&(*a ^ *b)), "translation set not a group");
            }
        }
        let span = F2Subspace::span(self.dim, &candidates);
        assert_eq!(
            1usize << span.dim(),
            set.len(),
            "translation set not a group"
        );
        span
    }

    /// Quotient of a connected space by its translation group: restricts
    /// every ordering to G' = T^⊥ and deduplicates.
    pub fn quotient_by_translations(&self) -> Result<Space, SpaceError> {
        if self.rank() <= 1 || !self.is_connected() {
            return Err(SpaceError::QuotientPrecondition);
        }
        let t = self.translation_group();
        let g_prime = t.annihilator();
        let new_dim = g_prime.dim();
        let mut restricted: BTreeSet<F2Vector> = BTreeSet::new();
        for s in &self.chars {
            let mut v = F2Vector::zero(new_dim);
            for (j, b) in g_prime.basis().iter().enumerate() {
                v.set_bit(j, s.0.dot(b));
            }
            restricted.insert(v);
        }
        if restricted.len() << t.dim() != self.chars.len() {
            return Err(SpaceError::Inconsistent(
                "|X| is not |T| times the number of restricted orderings".into(),
            ));
        }
        let m_coords = g_prime
            .coordinates_of(&self.minus_one)
            .ok_or_else(|| SpaceError::Inconsistent("-1 is not fixed by T".into()))?;
        let m = F2Vector::from_bits(new_dim, m_coords);
        let chars = restricted.into_iter().map(Character).collect();
        let (canonical, _) = Space::new(new_dim, m, chars)?.normalize();
        Ok(canonical)
    }

    /// Searches for a linear isomorphism φ: G_self → G_other carrying −1
    /// to −1 whose dual maps the other character set onto this one.
    /// Returns the map in the original coordinates of both spaces.
    pub fn equivalent(&self, other: &Space) -> Option<LinearMap> {
        if self.dim != other.dim
            || self.chars.len() != other.chars.len()
            || self.rank() != other.rank()
        {
            return None;
        }
        let n = self.dim;
        let (a, basis_a) = self.normalize();
        let (b, basis_b) = other.normalize();

        // Prefix multisets of the target side, one per level.
        let a_bits: Vec<u32> = a.chars.iter().map(|c| c.0.bits()).collect();
        let prefix_target: Vec<Vec<u32>> = (0..n)
            .map(|k| {
                let mask = (1u32 << (k + 1)) - 1;
                let mut v: Vec<u32> = a_bits.iter().map(|bits| bits & mask).collect();
                v.sort_unstable();
                v
            })
            .collect();

        let b_chars: Vec<F2Vector> = b.chars.iter().map(|c| c.0).collect();
        let mut cols: Vec<F2Vector> = vec![F2Vector::unit(n, 0)];
        let mut pulled: Vec<u32> = b_chars
            .iter()
            .map(|s| if s.bit(0) { 1u32 } else { 0u32 })
            .collect();
        {
            let mut check: Vec<u32> = pulled.clone();
            check.sort_unstable();
            if check != prefix_target[0] {
                return None;
            }
        }
        let found = search_columns(n, &b_chars, &prefix_target, &mut cols, &mut pulled);
        let canon_map = LinearMap::from_columns(found?);

        // Compose back into the original coordinates:
        // φ = basis_b ∘ canon ∘ basis_a⁻¹.
        let map_a = LinearMap::from_columns(basis_a);
        let map_b = LinearMap::from_columns(basis_b);
        let inv_a = map_a.inverse().expect("normalization bases are invertible");
        Some(map_b.compose(&canon_map).compose(&inv_a))
    }
}

/// Backtracking column search for the equivalence test. `cols` holds the
/// images of the first k canonical basis vectors; `pulled` holds, per
/// character of the source side, the low k bits of its pullback.
fn search_columns(
    n: usize,
    b_chars: &[F2Vector],
    prefix_target: &[Vec<u32>],
    cols: &mut Vec<F2Vector>,
    pulled: &mut Vec<u32>,
) -> Option<Vec<F2Vector>> {
    let k = cols.len();
    if k == n {
        return Some(cols.clone());
    }
    let chosen_span = F2Subspace::span(n, cols);
    for bits in 0u32..(1 << n) {
        let w = F2Vector::from_bits(n, bits);
        if chosen_span.contains(&w) {
            continue;
        }
        let next_pulled: Vec<u32> = b_chars
            .iter()
            .zip(pulled.iter())
            .map(|(s, &p)| p | ((s.dot(&w) as u32) << k))
            .collect();
        let mut check = next_pulled.clone();
        check.sort_unstable();
        if check != prefix_target[k] {
            continue;
        }
        cols.push(w);
        let mut saved = std::mem::replace(pulled, next_pulled);
        if let Some(res) = search_columns(n, b_chars, prefix_target, cols, pulled) {
            return Some(res);
        }
        std::mem::swap(pulled, &mut saved);
        cols.pop();
    }
    None
}

/// Scaling-equivariant representative entry for the canonical value-set
/// fold: the entry whose translate of the multiset has the least sorted
/// key sequence. Any tie produces the same translated multiset, so the
/// fold result does not depend on the tie choice.
pub(crate) fn canonical_shift(entries: &[F2Vector]) -> F2Vector {
    let mut best: Option<(Vec<u32>, F2Vector)> = None;
    for e in entries {
        let mut keys: Vec<u32> = entries.iter().map(|a| (*a ^ *e).lex_key()).collect();
        keys.sort_unstable();
        match &best {
            Some((bk, _)) if *bk <= keys => {}
            _ => best = Some((keys, *e)),
        }
    }
    best.expect("forms are nonempty").1
}

impl fmt::Debug for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Space(dim {}, -1 = {}, X = {{{}}})",
            self.dim,
            self.minus_one.bit_string(),
            self.chars
                .iter()
                .map(|c| c.0.sign_string())
                .collect::<Vec<_>>()
                .join(", ")
        )
    }
}
