//! Recursive structure classification of finite spaces of orderings.
//!
//! Every space decomposes into a tree: a single ordering is a `Leaf`;
//! a connected space of rank > 1 is an `Ext` node carrying the dimension
//! of its translation group over the quotient space; a disconnected space
//! is a `Free` node over its components. The tree determines the group:
//! `order_log2` and `frattini_log2` give the sizes of the associated
//! 2-group and its Frattini subgroup, `realize` produces a concrete
//! presentation, and `build` reconstructs a space from a tree.

use std::fmt;

use thiserror::Error;

use crate::axioms::AxiomReport;
use crate::f2::{F2Vector, MAX_DIM};
use crate::group::{GroupError, Presentation, Word, MAX_GENERATORS};
use crate::space::{Character, Space, SpaceError};

#[derive(Debug, Error)]
pub enum ClassifyError {
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("tree rank {0} exceeds the supported limit {1}")]
    RankTooLarge(usize, usize),
}

/// Structure tree of a space of orderings.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Tree {
    /// A single ordering; the group is C₂.
    Leaf,
    /// Connected space: an m-dimensional translation group over a
    /// disconnected (or single-ordering) quotient.
    Ext { m: u32, child: Box<Tree> },
    /// Disconnected space: coproduct of the component groups.
    Free { children: Vec<Tree> },
}

impl Tree {
    pub fn ext(m: u32, child: Tree) -> Tree {
        assert!(m >= 1, "extension dimension must be positive");
        assert!(
            !matches!(child, Tree::Ext { .. }),
            "quotients of connected spaces are never connected of rank > 1"
        );
        Tree::Ext {
            m,
            child: Box::new(child),
        }
    }

    pub fn free(mut children: Vec<Tree>) -> Tree {
        assert!(
            children.len() >= 2,
            "free nodes need at least two components"
        );
        assert!(
            children.iter().all(|c| !matches!(c, Tree::Free { .. })),
            "free nodes are flattened"
        );
        children.sort_by_key(|c| c.encode());
        Tree::Free { children }
    }

    /// Canonical text encoding: `L`, `E<m>(t)`, `F(t₁,…,t_k)` with free
    /// children sorted by their encodings.
    pub fn encode(&self) -> String {
        match self {
            Tree::Leaf => "L".to_string(),
            Tree::Ext { m, child } => format!("E{}({})", m, child.encode()),
            Tree::Free { children } => {
                let inner: Vec<String> = children.iter().map(|c| c.encode()).collect();
                format!("F({})", inner.join(","))
            }
        }
    }

    /// Number of independent orderings of the space the tree describes.
    pub fn rank(&self) -> usize {
        match self {
            Tree::Leaf => 1,
            Tree::Ext { m, child } => *m as usize + child.rank(),
            Tree::Free { children } => children.iter().map(|c| c.rank()).sum(),
        }
    }

    /// log₂ of the order of the associated group.
    pub fn order_log2(&self) -> u32 {
        match self {
            Tree::Leaf => 1,
            Tree::Ext { m, child } => 2 * m + child.order_log2(),
            Tree::Free { children } => {
                let own: u32 = children.iter().map(|c| c.order_log2()).sum();
                let ranks: Vec<u32> = children.iter().map(|c| c.rank() as u32).collect();
                let mut cross = 0;
                for i in 0..ranks.len() {
                    for j in (i + 1)..ranks.len() {
                        cross += ranks[i] * ranks[j];
                    }
                }
                own + cross
            }
        }
    }

    /// log₂ of the Frattini subgroup: the group modulo its Frattini
    /// subgroup is elementary abelian of rank `rank`.
    pub fn frattini_log2(&self) -> u32 {
        self.order_log2() - self.rank() as u32
    }

    /// Number of orderings of the built space.
    pub fn ordering_count(&self) -> usize {
        match self {
            Tree::Leaf => 1,
            Tree::Ext { m, child } => (1usize << m) * child.ordering_count(),
            Tree::Free { children } => children.iter().map(|c| c.ordering_count()).sum(),
        }
    }
}

impl fmt::Debug for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.encode())
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.encode())
    }
}

/// Classifies a space into its structure tree. Expects a space that
/// satisfies the axioms; on inconsistent candidates the classification is
/// still attempted and errors only when the structure degenerates (for
/// example a connected space of rank > 1 with no translations).
pub fn classify(space: &Space) -> Result<Tree, ClassifyError> {
    if space.chars().len() == 1 {
        return Ok(Tree::Leaf);
    }
    let parts = space.component_partition();
    if parts.len() > 1 {
        let mut children = Vec::with_capacity(parts.len());
        for part in &parts {
            let component = space.subspace_from_set(part)?;
            children.push(classify(&component)?);
        }
        return Ok(Tree::free(children));
    }
    let t = space.translation_group();
    if t.dim() == 0 {
        return Err(ClassifyError::Space(SpaceError::Inconsistent(
            "connected space of rank > 1 with trivial translation group".into(),
        )));
    }
    let quotient = space.quotient_by_translations()?;
    let child = classify(&quotient)?;
    Ok(Tree::ext(t.dim() as u32, child))
}

/// Builds the canonical space described by a tree.
pub fn build(tree: &Tree) -> Result<Space, ClassifyError> {
    let rank = tree.rank();
    if rank > MAX_DIM {
        return Err(ClassifyError::RankTooLarge(rank, MAX_DIM));
    }
    Ok(build_unchecked(tree))
}

fn build_unchecked(tree: &Tree) -> Space {
    match tree {
        Tree::Leaf => Space::new(
            1,
            F2Vector::unit(1, 0),
            vec![Character(F2Vector::unit(1, 0))],
        )
        .expect("the one-ordering space is well-formed"),
        Tree::Ext { m, child } => {
            let base = build_unchecked(child);
            let d = base.dim();
            let n = d + *m as usize;
            let mut chars = Vec::with_capacity(base.chars().len() << m);
            for w in 0u32..(1 << m) {
                for c in base.chars() {
                    chars.push(Character(F2Vector::from_bits(n, c.vec().bits() | (w << d))));
                }
            }
            let minus_one = F2Vector::from_bits(n, base.minus_one().bits());
            Space::new(n, minus_one, chars).expect("extensions preserve well-formedness")
        }
        Tree::Free { children } => {
            let spaces: Vec<Space> = children.iter().map(build_unchecked).collect();
            let n: usize = spaces.iter().map(|s| s.dim()).sum();
            let mut chars = Vec::new();
            let mut minus_one = F2Vector::zero(n);
            let mut offset = 0;
            for s in &spaces {
                minus_one ^= F2Vector::from_bits(n, s.minus_one().bits() << offset);
                for c in s.chars() {
                    chars.push(Character(F2Vector::from_bits(n, c.vec().bits() << offset)));
                }
                offset += s.dim();
            }
            let raw = Space::new(n, minus_one, chars).expect("block sums are well-formed");
            raw.normalize().0
        }
    }
}

/// A maximal independent set of orderings, chosen greedily in canonical
/// order. For a space satisfying the separation axiom this is a basis of
/// the full character space.
pub fn greedy_char_basis(space: &Space) -> Vec<Character> {
    let n = space.dim();
    let mut basis: Vec<Character> = Vec::new();
    for c in space.chars() {
        let vecs: Vec<F2Vector> = basis.iter().map(|b| b.vec()).collect();
        if !crate::f2::F2Subspace::span(n, &vecs).contains(&c.vec()) {
            basis.push(*c);
        }
        if basis.len() == n {
            break;
        }
    }
    basis
}

/// Coordinates of a character over a chosen character basis, as a
/// generator-pattern vector of length `basis.len()`. `None` when the
/// character is outside the span.
pub fn char_pattern(basis: &[Character], c: &Character) -> Option<F2Vector> {
    if basis.is_empty() {
        return None;
    }
    let k = basis.len();
    // Eliminate, tracking which combination of basis vectors produced
    // each echelon row.
    let mut solved: Vec<(usize, u32, F2Vector)> = Vec::new();
    for (j, b) in basis.iter().enumerate() {
        let mut r = b.vec();
        let mut combo = 1u32 << j;
        for &(p, cb, rv) in &solved {
            if r.bit(p) {
                r ^= rv;
                combo ^= cb;
            }
        }
        if let Some(p) = r.leading() {
            solved.push((p, combo, r));
        }
    }
    let mut r = c.vec();
    let mut combo = 0u32;
    for &(p, cb, rv) in &solved {
        if r.bit(p) {
            r ^= rv;
            combo ^= cb;
        }
    }
    if r.is_zero() {
        Some(F2Vector::from_bits(k, combo))
    } else {
        None
    }
}

/// Produces a presentation for the group of the space a tree describes:
/// one involution generator per basis ordering and one square relator per
/// ordering, written over that basis.
pub fn realize(tree: &Tree) -> Result<Presentation, ClassifyError> {
    let rank = tree.rank();
    if rank > MAX_GENERATORS {
        return Err(ClassifyError::RankTooLarge(rank, MAX_GENERATORS));
    }
    let space = build(tree)?;
    presentation_of_space(&space).map_err(Into::into)
}

/// The square-relator presentation of an arbitrary space over its greedy
/// character basis.
pub fn presentation_of_space(space: &Space) -> Result<Presentation, GroupError> {
    let n = space.rank();
    let basis = greedy_char_basis(space);
    debug_assert_eq!(basis.len(), n);
    let mut relators: Vec<Word> = Vec::with_capacity(space.chars().len());
    for c in space.chars() {
        let pattern = char_pattern(&basis, c).expect("basis spans the character space");
        let support: Vec<usize> = (0..n).filter(|&j| pattern.bit(j)).collect();
        let word: Word = if support.len() == 1 {
            vec![(support[0], 2)]
        } else {
            let mut w: Word = support.iter().map(|&j| (j, 1)).collect();
            w.extend(support.iter().map(|&j| (j, 1)));
            w
        };
        relators.push(word);
    }
    Presentation::new(n, relators)
}

/// Outcome of the realizability check for a presentation.
#[derive(Debug)]
pub struct RealizabilityReport {
    /// True when every performed check is consistent with the
    /// presentation being the group of a space of orderings. Never an
    /// unconditional yes: the axiom scan is bounded.
    pub consistent: bool,
    /// Why not, when not.
    pub obstructions: Vec<Obstruction>,
    pub axiom_report: Option<AxiomReport>,
    pub candidate: Option<Space>,
    pub candidate_tree: Option<Tree>,
    pub presented_log2: u32,
    pub required_log2: Option<u32>,
    pub max_total_form_length: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Obstruction {
    /// Candidate extraction failed (no or ambiguous −1, or no involution
    /// classes).
    Extraction(String),
    /// The candidate space violates an axiom.
    AxiomFailure,
    /// The presented order differs from the order the candidate's
    /// structure requires.
    OrderMismatch { presented: u32, required: u32 },
    /// The candidate could not be classified.
    StructureFailure(String),
}

/// Necessary-condition check: extracts the candidate space, verifies the
/// axioms at the given bound, classifies the candidate and compares the
/// presented order with the order its structure demands.
pub fn realizable(
    p: &Presentation,
    max_total_form_length: u32,
) -> Result<RealizabilityReport, ClassifyError> {
    let presented = p.quotient_log2_order();
    let mut report = RealizabilityReport {
        consistent: false,
        obstructions: Vec::new(),
        axiom_report: None,
        candidate: None,
        candidate_tree: None,
        presented_log2: presented,
        required_log2: None,
        max_total_form_length,
    };
    let candidate = match p.extract_candidate_space() {
        Ok(c) => c,
        Err(e) => {
            report
                .obstructions
                .push(Obstruction::Extraction(e.to_string()));
            return Ok(report);
        }
    };
    let axioms = candidate.verify_axioms(max_total_form_length)?;
    if !axioms.all_ok() {
        report.obstructions.push(Obstruction::AxiomFailure);
    }
    report.axiom_report = Some(axioms);
    match classify(&candidate) {
        Ok(tree) => {
            let required = tree.order_log2();
            report.required_log2 = Some(required);
            if required != presented {
                report.obstructions.push(Obstruction::OrderMismatch {
                    presented,
                    required,
                });
            }
            report.candidate_tree = Some(tree);
        }
        Err(e) => {
            report
                .obstructions
                .push(Obstruction::StructureFailure(e.to_string()));
        }
    }
    report.candidate = Some(candidate);
    report.consistent = report.obstructions.is_empty();
    Ok(report)
}

/// Enumerates every tree that the classifier can produce, up to the given
/// rank. `Ext(1, Leaf)` and `Ext(m, F(L,L))` describe the same spaces as
/// pure fans and never come out of the classifier, so they are excluded.
pub fn canonical_trees(max_rank: usize) -> Vec<Tree> {
    let mut all = Vec::new();
    for r in 1..=max_rank {
        all.extend(connected_trees(r));
        all.extend(free_trees(r));
    }
    all
}

fn connected_trees(rank: usize) -> Vec<Tree> {
    let mut out = Vec::new();
    if rank == 1 {
        out.push(Tree::Leaf);
        return out;
    }
    for m in 1..rank {
        let child_rank = rank - m;
        if child_rank == 1 {
            // A fan E(m, Leaf) is connected only from 4 orderings up.
            if m >= 2 {
                out.push(Tree::ext(m as u32, Tree::Leaf));
            }
            continue;
        }
        for child in free_trees(child_rank) {
            // The two-ordering space carries its own translation, so an
            // extension over it collapses into a larger fan.
            if child.encode() == "F(L,L)" {
                continue;
            }
            out.push(Tree::ext(m as u32, child));
        }
    }
    out
}

fn free_trees(rank: usize) -> Vec<Tree> {
    // Multisets of at least two connected trees with ranks summing to
    // `rank`, enumerated with non-decreasing (rank, encoding).
    let pool: Vec<(usize, Tree)> = (1..rank)
        .flat_map(|r| {
            let mut ts = connected_trees(r);
            ts.sort_by_key(|t| t.encode());
            ts.into_iter().map(move |t| (r, t)).collect::<Vec<_>>()
        })
        .collect();
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    pick_parts(&pool, 0, rank, &mut chosen, &mut out);
    out
}

fn pick_parts(
    pool: &[(usize, Tree)],
    start: usize,
    remaining: usize,
    chosen: &mut Vec<Tree>,
    out: &mut Vec<Tree>,
) {
    if remaining == 0 {
        if chosen.len() >= 2 {
            out.push(Tree::free(chosen.clone()));
        }
        return;
    }
    for idx in start..pool.len() {
        let (r, t) = &pool[idx];
        if *r > remaining {
            continue;
        }
        chosen.push(t.clone());
        pick_parts(pool, idx, remaining - r, chosen, out);
        chosen.pop();
    }
}
