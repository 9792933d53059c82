//! Bit-packed linear algebra over F₂.
//!
//! Vectors are packed into a `u32` with coordinate `i` stored at bit `i`;
//! the ambient dimension is carried alongside and capped at [`MAX_DIM`].
//! Subspaces are kept in reduced row echelon form with pivots at the
//! lowest-index coordinate of each row, so two subspaces are equal exactly
//! when their basis vectors are equal.
//!
//! The canonical vector order used everywhere for tie-breaking sorts by the
//! sign-string rendering (`-` before `+`, i.e. a set bit sorts before a
//! clear bit, coordinate 0 compared first).

use std::fmt;

/// Largest supported ambient dimension.
pub const MAX_DIM: usize = 24;

/// A vector in F₂ⁿ, packed into a word.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct F2Vector {
    bits: u32,
    dim: u8,
}

impl F2Vector {
    /// The zero vector of dimension `dim`.
    pub fn zero(dim: usize) -> Self {
        assert!((1..=MAX_DIM).contains(&dim), "dimension {dim} out of range");
        F2Vector {
            bits: 0,
            dim: dim as u8,
        }
    }

    /// The standard basis vector eᵢ.
    pub fn unit(dim: usize, i: usize) -> Self {
        assert!(i < dim, "coordinate {i} out of range for dimension {dim}");
        let mut v = Self::zero(dim);
        v.bits = 1 << i;
        v
    }

    /// Builds a vector from a packed word, masking off bits above `dim`.
    pub fn from_bits(dim: usize, bits: u32) -> Self {
        let mut v = Self::zero(dim);
        v.bits = bits & v.mask();
        v
    }

    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    fn mask(&self) -> u32 {
        (1u32 << self.dim) - 1
    }

    pub fn bit(&self, i: usize) -> bool {
        assert!(i < self.dim as usize);
        (self.bits >> i) & 1 == 1
    }

    pub fn set_bit(&mut self, i: usize, value: bool) {
        assert!(i < self.dim as usize);
        if value {
            self.bits |= 1 << i;
        } else {
            self.bits &= !(1 << i);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    /// Standard dot product mod 2.
    pub fn dot(&self, other: &F2Vector) -> bool {
        assert_eq!(self.dim, other.dim, "dimension mismatch in dot product");
        (self.bits & other.bits).count_ones() & 1 == 1
    }

    /// Index of the lowest set coordinate, if any.
    pub fn leading(&self) -> Option<usize> {
        if self.bits == 0 {
            None
        } else {
            Some(self.bits.trailing_zeros() as usize)
        }
    }

    /// Key realizing the canonical order: ascending key = the sign-string
    /// order with `-` < `+`.
    pub fn lex_key(&self) -> u32 {
        let rev = self.bits.reverse_bits() >> (32 - self.dim as u32);
        !rev & self.mask()
    }

    /// Renders as a sign string, `-` for a set bit and `+` for a clear bit.
    pub fn sign_string(&self) -> String {
        (0..self.dim as usize)
            .map(|i| if self.bit(i) { '-' } else { '+' })
            .collect()
    }

    /// Renders as a 0/1 string, coordinate 0 first.
    pub fn bit_string(&self) -> String {
        (0..self.dim as usize)
            .map(|i| if self.bit(i) { '1' } else { '0' })
            .collect()
    }
}

impl std::ops::BitXor for F2Vector {
    type Output = F2Vector;
    fn bitxor(self, rhs: F2Vector) -> F2Vector {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in vector sum");
        F2Vector {
            bits: self.bits ^ rhs.bits,
            dim: self.dim,
        }
    }
}

impl std::ops::BitXorAssign for F2Vector {
    fn bitxor_assign(&mut self, rhs: F2Vector) {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in vector sum");
        self.bits ^= rhs.bits;
    }
}

impl PartialOrd for F2Vector {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for F2Vector {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.dim
            .cmp(&other.dim)
            .then(self.lex_key().cmp(&other.lex_key()))
    }
}

impl fmt::Debug for F2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F2Vector({})", self.bit_string())
    }
}

impl fmt::Display for F2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.bit_string())
    }
}

/// A subspace of F₂ⁿ held as a reduced row echelon basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct F2Subspace {
    ambient: u8,
    basis: Vec<F2Vector>,
}

impl F2Subspace {
    /// The zero subspace in dimension `ambient`.
    pub fn trivial(ambient: usize) -> Self {
        assert!((1..=MAX_DIM).contains(&ambient));
        F2Subspace {
            ambient: ambient as u8,
            basis: Vec::new(),
        }
    }

    /// The full space F₂ⁿ.
    pub fn full(ambient: usize) -> Self {
        let basis = (0..ambient).map(|i| F2Vector::unit(ambient, i)).collect();
        F2Subspace {
            ambient: ambient as u8,
            basis,
        }
    }

    /// Canonical span of a list of vectors.
    pub fn span(ambient: usize, vectors: &[F2Vector]) -> Self {
        assert!((1..=MAX_DIM).contains(&ambient));
        for v in vectors {
            assert_eq!(v.dim(), ambient, "dimension mismatch in span");
        }
        let mut rows: Vec<F2Vector> = Vec::new();
        for &v in vectors {
            let mut v = v;
            for r in &rows {
                let p = r.leading().unwrap();
                if v.bit(p) {
                    v ^= *r;
                }
            }
            if !v.is_zero() {
                rows.push(v);
                rows.sort_by_key(|r| r.leading().unwrap());
            }
        }
        // Back-substitution makes the echelon form reduced, hence unique.
        for i in 0..rows.len() {
            for j in 0..rows.len() {
                if i != j {
                    let p = rows[i].leading().unwrap();
                    if rows[j].bit(p) {
                        let ri = rows[i];
                        rows[j] ^= ri;
                    }
                }
            }
        }
        F2Subspace {
            ambient: ambient as u8,
            basis: rows,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient as usize
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[F2Vector] {
        &self.basis
    }

    /// Residue of `v` after elimination against the basis.
    pub fn reduce(&self, v: &F2Vector) -> F2Vector {
        assert_eq!(v.dim(), self.ambient_dim(), "dimension mismatch");
        let mut v = *v;
        for r in &self.basis {
            if v.bit(r.leading().unwrap()) {
                v ^= *r;
            }
        }
        v
    }

    pub fn contains(&self, v: &F2Vector) -> bool {
        self.reduce(v).is_zero()
    }

    /// The annihilator {v : ⟨v,s⟩ = 0 for all s in the subspace}.
    pub fn annihilator(&self) -> F2Subspace {
        let n = self.ambient_dim();
        let pivots: Vec<usize> = self.basis.iter().map(|r| r.leading().unwrap()).collect();
        let mut gens = Vec::new();
        for j in 0..n {
            if pivots.contains(&j) {
                continue;
            }
            // Free coordinate j: fix it to 1 and solve the pivot coordinates.
            let mut v = F2Vector::unit(n, j);
            for (r, &p) in self.basis.iter().zip(&pivots) {
                if r.bit(j) {
                    v.set_bit(p, true);
                }
            }
            gens.push(v);
        }
        F2Subspace::span(n, &gens)
    }

    /// Intersection of two subspaces of the same ambient space.
    pub fn intersect(&self, other: &F2Subspace) -> F2Subspace {
        assert_eq!(self.ambient, other.ambient);
        let mut gens = self.annihilator().basis;
        gens.extend_from_slice(other.annihilator().basis());
        F2Subspace::span(self.ambient_dim(), &gens).annihilator()
    }

    /// Expresses `v` over the basis rows; bit `j` of the result multiplies
    /// basis row `j`. Returns `None` when `v` is outside the subspace.
    pub fn coordinates_of(&self, v: &F2Vector) -> Option<u32> {
        assert_eq!(v.dim(), self.ambient_dim());
        let mut v = *v;
        let mut coords = 0u32;
        for (j, r) in self.basis.iter().enumerate() {
            if v.bit(r.leading().unwrap()) {
                coords |= 1 << j;
                v ^= *r;
            }
        }
        if v.is_zero() {
            Some(coords)
        } else {
            None
        }
    }

    /// All 2^dim members, in canonical order.
    pub fn members(&self) -> Vec<F2Vector> {
        let n = self.ambient_dim();
        let mut out = Vec::with_capacity(1 << self.dim());
        for sel in 0u32..(1 << self.dim()) {
            let mut v = F2Vector::zero(n);
            for (j, r) in self.basis.iter().enumerate() {
                if (sel >> j) & 1 == 1 {
                    v ^= *r;
                }
            }
            out.push(v);
        }
        out.sort();
        out
    }
}

impl fmt::Debug for F2Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "F2Subspace(dim {} in {}: [{}])",
            self.dim(),
            self.ambient_dim(),
            self.basis
                .iter()
                .map(|b| b.bit_string())
                .collect::<Vec<_>>()
                .join(", ")
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(dim: usize, s: &str) -> F2Vector {
        let mut out = F2Vector::zero(dim);
        for (i, c) in s.chars().enumerate() {
            out.set_bit(i, c == '1');
        }
        out
    }

    #[test]
    fn empty_span_has_dimension_zero() {
        let s = F2Subspace::span(3, &[]);
        assert_eq!(s.dim(), 0);
        assert!(s.contains(&F2Vector::zero(3)));
    }

    #[test]
    fn dependent_vector_does_not_raise_dimension() {
        let s = F2Subspace::span(3, &[v(3, "100"), v(3, "010"), v(3, "110")]);
        assert_eq!(s.dim(), 2);
    }

    #[test]
    fn contains_sum_of_basis_vectors() {
        let s = F2Subspace::span(3, &[v(3, "110"), v(3, "011")]);
        assert!(s.contains(&v(3, "101")));
        assert!(!F2Subspace::span(3, &[v(3, "100")]).contains(&v(3, "010")));
        assert!(F2Subspace::trivial(3).contains(&F2Vector::zero(3)));
    }

    #[test]
    fn annihilator_of_trivial_and_full() {
        assert_eq!(F2Subspace::trivial(4).annihilator(), F2Subspace::full(4));
        assert_eq!(F2Subspace::full(4).annihilator(), F2Subspace::trivial(4));
    }

    #[test]
    fn annihilator_dims_and_involution_in_dim_5() {
        // Exhaustive oracle over all 32 vectors of F₂⁵.
        let s = F2Subspace::span(5, &[v(5, "11000"), v(5, "00110")]);
        assert_eq!(s.dim(), 2);
        let ann = s.annihilator();
        assert_eq!(ann.dim(), 3);
        let mut count = 0;
        for bits in 0u32..32 {
            let w = F2Vector::from_bits(5, bits);
            let kills = s.basis().iter().all(|b| !b.dot(&w));
            assert_eq!(kills, ann.contains(&w));
            if kills {
                count += 1;
            }
        }
        assert_eq!(count, 8);
        assert_eq!(ann.annihilator(), s);
    }

    #[test]
    fn canonical_order_puts_minus_before_plus() {
        let mut vs = vec![v(3, "011"), v(3, "111"), v(3, "000"), v(3, "100")];
        vs.sort();
        let strings: Vec<String> = vs.iter().map(|x| x.sign_string()).collect();
        // `-` sorts before `+` at every position (note: the reverse of
        // ASCII order).
        assert_eq!(strings, vec!["---", "-++", "+--", "+++"]);
    }

    proptest! {
        #[test]
        fn span_contains_all_inputs(bits in proptest::collection::vec(0u32..64, 0..8)) {
            let vs: Vec<F2Vector> = bits.iter().map(|&b| F2Vector::from_bits(6, b)).collect();
            let s = F2Subspace::span(6, &vs);
            for w in &vs {
                prop_assert!(s.contains(w));
            }
        }

        #[test]
        fn span_is_idempotent_and_order_independent(bits in proptest::collection::vec(0u32..64, 1..8)) {
            let vs: Vec<F2Vector> = bits.iter().map(|&b| F2Vector::from_bits(6, b)).collect();
            let s = F2Subspace::span(6, &vs);
            prop_assert_eq!(&F2Subspace::span(6, s.basis()), &s);
            let mut rev = vs.clone();
            rev.reverse();
            prop_assert_eq!(&F2Subspace::span(6, &rev), &s);
        }

        #[test]
        fn annihilator_dimension_identity(bits in proptest::collection::vec(0u32..64, 0..8)) {
            let vs: Vec<F2Vector> = bits.iter().map(|&b| F2Vector::from_bits(6, b)).collect();
            let s = F2Subspace::span(6, &vs);
            let ann = s.annihilator();
            prop_assert_eq!(s.dim() + ann.dim(), 6);
            prop_assert_eq!(&ann.annihilator(), &s);
        }
    }
}
