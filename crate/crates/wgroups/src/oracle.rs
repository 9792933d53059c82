//! Independent brute-force verifiers.
//!
//! These recompute the headline quantities of the group and space engines
//! by explicit enumeration, sharing only the element arithmetic and the
//! F₂ primitives with the fast paths: quotient orders by breadth-first
//! coset enumeration, Frattini subgroups by subgroup closure over an
//! explicit element table, and the representation axiom by a full
//! unmemoized scan over unnormalized form pairs. They are reference
//! implementations; speed is not a goal.

use std::collections::{HashSet, VecDeque};

use crate::axioms::{Axiom4Witness, AxiomReport};
use crate::f2::F2Vector;
use crate::group::{Element, GroupError, Presentation};
use crate::space::{Space, SpaceError};

/// Hard cap on the relation-subgroup element listing used for coset
/// canonicalization.
const N_CAP_LOG2: u32 = 16;

/// Lists one canonical representative per coset of the relation subgroup:
/// the least element of the coset in normal-form order, discovered
/// breadth-first from the generators.
pub fn enumerate_quotient(p: &Presentation, cap_log2: u32) -> Result<Vec<Element>, GroupError> {
    if p.quotient_log2_order() > cap_log2 {
        return Err(GroupError::EnumerationTooLarge(cap_log2));
    }
    let n = p.generator_count();
    let relation_elements = p.relation_subgroup().elements(N_CAP_LOG2)?;
    let canon = |x: &Element| -> Element {
        relation_elements
            .iter()
            .map(|r| x.mul(r))
            .min()
            .expect("relation subgroup is nonempty")
    };
    let start = canon(&Element::identity(n));
    let mut seen: HashSet<Element> = HashSet::from([start]);
    let mut queue: VecDeque<Element> = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        for j in 0..n {
            let y = canon(&x.mul(&Element::generator(n, j)));
            if seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    let mut table: Vec<Element> = seen.into_iter().collect();
    table.sort();
    Ok(table)
}

/// log₂ of the subgroup of the quotient generated by all squares and
/// commutators of table elements, computed by explicit closure. Squares
/// and commutators in this variety depend only on generator parities, so
/// the generating set is collected per parity pattern; commutators
/// against the group generators suffice because commutation is bilinear.
pub fn frattini_log2_by_enumeration(
    p: &Presentation,
    table: &[Element],
) -> Result<u32, GroupError> {
    let n = p.generator_count();
    let relation_elements = p.relation_subgroup().elements(N_CAP_LOG2)?;
    let canon = |x: &Element| -> Element {
        relation_elements
            .iter()
            .map(|r| x.mul(r))
            .min()
            .expect("relation subgroup is nonempty")
    };
    let mut parities: HashSet<u32> = HashSet::new();
    for x in table {
        parities.insert(x.parity());
    }
    let mut gens: Vec<Element> = Vec::new();
    for &pat in &parities {
        let x = Element::from_parity(n, pat);
        gens.push(canon(&x.square()));
        for j in 0..n {
            gens.push(canon(&x.commutator(&Element::generator(n, j))));
        }
    }
    // All generators are central of order ≤ 2; the subgroup is an
    // F₂-span and doubles at each independent generator.
    let identity = canon(&Element::identity(n));
    let mut set: HashSet<Element> = HashSet::from([identity]);
    for g in gens {
        if !set.contains(&g) {
            let extension: Vec<Element> = set.iter().map(|s| canon(&s.mul(&g))).collect();
            set.extend(extension);
        }
    }
    assert!(
        set.len().is_power_of_two(),
        "closure of central involutions"
    );
    Ok(set.len().trailing_zeros())
}

/// Ceilings for the exhaustive axiom scan, |G| ≤ 64.
pub const ORACLE_MAX_DIM: usize = 6;
pub const ORACLE_MAX_LEN: u32 = 6;

/// Re-derives the axiom report by literal enumeration: axioms 2 and 3 by
/// scanning G, axiom 4 by scanning every form pair (no scaling
/// normalization, no cross-pair caching) in the canonical witness order.
/// Agrees with `Space::verify_axioms` on the verdicts and on the minimal
/// witness.
pub fn axiom4_exhaustive(space: &Space, max_len: u32) -> Result<AxiomReport, SpaceError> {
    assert!(
        (2..=ORACLE_MAX_LEN).contains(&max_len),
        "oracle scan bound must be 2..=6"
    );
    if space.dim() > ORACLE_MAX_DIM {
        return Err(SpaceError::ScanTooLarge(space.dim(), ORACLE_MAX_DIM));
    }
    let n = space.dim();
    let g = 1usize << n;

    let axiom2_ok = space
        .chars()
        .iter()
        .all(|s| s.evaluate(&space.minus_one()) == -1);

    let mut positive_everywhere: Vec<F2Vector> = Vec::new();
    for bits in 1..g as u32 {
        let a = F2Vector::from_bits(n, bits);
        if space.chars().iter().all(|s| s.evaluate(&a) == 1) {
            positive_everywhere.push(a);
        }
    }
    let axiom3_ok = positive_everywhere.is_empty();
    let axiom3_witness = positive_everywhere.into_iter().min();

    let scan = OracleScan::new(space);
    let axiom4_witness = scan.scan(max_len as usize);

    Ok(AxiomReport {
        finite: true,
        axiom2_ok,
        axiom3_ok,
        axiom4_ok: axiom4_witness.is_none(),
        axiom3_witness,
        axiom4_witness,
        max_total_form_length: max_len,
    })
}

const MAX_FORM: usize = 8;

struct OracleScan {
    n: usize,
    g: usize,
    key: Vec<u32>,
    words_desc: Vec<u32>,
    /// Binary value sets from the literal sign definition.
    bin: Vec<u64>,
}

#[derive(PartialEq, Eq, PartialOrd, Ord)]
struct Key {
    total: u32,
    f_len: u32,
    f_keys: Vec<u32>,
    g_keys: Vec<u32>,
    x_key: u32,
}

struct PairSide {
    entries: [u32; MAX_FORM],
    len: usize,
    d: u64,
}

impl OracleScan {
    fn new(space: &Space) -> OracleScan {
        let n = space.dim();
        let g = 1usize << n;
        let key: Vec<u32> = (0..g)
            .map(|w| F2Vector::from_bits(n, w as u32).lex_key())
            .collect();
        let mut words_desc: Vec<u32> = (0..g as u32).collect();
        words_desc.sort_by(|a, b| key[*b as usize].cmp(&key[*a as usize]));
        let mut bin = vec![0u64; g * g];
        for a in 0..g {
            let va = F2Vector::from_bits(n, a as u32);
            for b in a..g {
                let vb = F2Vector::from_bits(n, b as u32);
                let mut set = 0u64;
                for c in 0..g {
                    let vc = F2Vector::from_bits(n, c as u32);
                    let ok = space.chars().iter().all(|s| {
                        let sc = s.evaluate(&vc);
                        sc == s.evaluate(&va) || sc == s.evaluate(&vb)
                    });
                    if ok {
                        set |= 1 << c;
                    }
                }
                bin[a * g + b] = set;
                bin[b * g + a] = set;
            }
        }
        OracleScan {
            n,
            g,
            key,
            words_desc,
            bin,
        }
    }

    fn value_set(&self, entries: &[u32]) -> u64 {
        if entries.len() == 1 {
            return 1u64 << entries[0];
        }
        // Anchor the fold order at the entry whose translate of the
        // multiset is least; this makes the result a function of the
        // multiset that commutes with scaling.
        let mut shift = entries[0];
        let mut best: Option<Vec<u32>> = None;
        for &e in entries {
            let mut keys: Vec<u32> = entries
                .iter()
                .map(|&a| self.key[(a ^ e) as usize])
                .collect();
            keys.sort_unstable();
            if best.as_ref().is_none_or(|b| keys < *b) {
                best = Some(keys);
                shift = e;
            }
        }
        let mut t: Vec<u32> = entries.iter().map(|&e| e ^ shift).collect();
        t.sort_by(|a, b| self.key[*b as usize].cmp(&self.key[*a as usize]));
        let mut d = 1u64 << t[0];
        for &w in &t[1..] {
            let mut next = 0u64;
            let mut s = d;
            while s != 0 {
                let b = s.trailing_zeros() as usize;
                next |= self.bin[w as usize * self.g + b];
                s &= s - 1;
            }
            d = next;
        }
        let mut out = 0u64;
        let mut s = d;
        while s != 0 {
            let w = s.trailing_zeros();
            out |= 1 << (w ^ shift);
            s &= s - 1;
        }
        out
    }

    /// Full scan in ascending total length; within a length every ordered
    /// pair with |f| ≤ |g| is checked (the check is symmetric in the two
    /// sides, so the minimal witness always has |f| ≤ |g|).
    fn scan(&self, max_len: usize) -> Option<Axiom4Witness> {
        for total in 2..=max_len {
            let mut best: Option<(Key, Axiom4Witness)> = None;
            for f_len in 1..=total / 2 {
                let g_len = total - f_len;
                let mut f_list: Vec<PairSide> = Vec::new();
                let mut buf = [0u32; MAX_FORM];
                self.enumerate(f_len, 0, 0, &mut buf, &mut |entries, me| {
                    f_list.push(PairSide {
                        entries: *entries,
                        len: f_len,
                        d: me.value_set(&entries[..f_len]),
                    });
                });
                let mut gbuf = [0u32; MAX_FORM];
                self.enumerate(g_len, 0, 0, &mut gbuf, &mut |entries, me| {
                    let gd = me.value_set(&entries[..g_len]);
                    for f in &f_list {
                        me.check_pair(&f.entries[..f.len], f.d, &entries[..g_len], gd, &mut best);
                    }
                });
            }
            if let Some((_, w)) = best {
                return Some(w);
            }
        }
        None
    }

    fn enumerate(
        &self,
        size: usize,
        depth: usize,
        start: usize,
        buf: &mut [u32; MAX_FORM],
        emit: &mut impl FnMut(&[u32; MAX_FORM], &OracleScan),
    ) {
        if depth == size {
            emit(buf, self);
            return;
        }
        for idx in start..self.g {
            buf[depth] = self.words_desc[idx];
            self.enumerate(size, depth + 1, idx, buf, emit);
        }
    }

    fn check_pair(
        &self,
        f: &[u32],
        fd: u64,
        g: &[u32],
        gd: u64,
        best: &mut Option<(Key, Axiom4Witness)>,
    ) {
        let mut merged: Vec<u32> = f.iter().chain(g.iter()).copied().collect();
        merged.sort_by(|a, b| self.key[*b as usize].cmp(&self.key[*a as usize]));
        let du = self.value_set(&merged);
        let mut rest = du & !(fd | gd);
        while rest != 0 {
            let x = rest.trailing_zeros();
            rest &= rest - 1;
            let mut found = false;
            let mut ys = fd;
            'outer: while ys != 0 {
                let y = ys.trailing_zeros();
                ys &= ys - 1;
                let mut zs = gd;
                while zs != 0 {
                    let z = zs.trailing_zeros();
                    zs &= zs - 1;
                    if (self.bin[y as usize * self.g + z as usize] >> x) & 1 == 1 {
                        found = true;
                        break 'outer;
                    }
                }
            }
            if !found {
                let mut fk: Vec<u32> = f.iter().map(|&w| self.key[w as usize]).collect();
                fk.sort_unstable();
                let mut gk: Vec<u32> = g.iter().map(|&w| self.key[w as usize]).collect();
                gk.sort_unstable();
                let key = Key {
                    total: (f.len() + g.len()) as u32,
                    f_len: f.len() as u32,
                    f_keys: fk,
                    g_keys: gk,
                    x_key: self.key[x as usize],
                };
                let better = match best {
                    Some((b, _)) => key < *b,
                    None => true,
                };
                if better {
                    let to_vecs = |ws: &[u32]| {
                        let mut v: Vec<F2Vector> =
                            ws.iter().map(|&w| F2Vector::from_bits(self.n, w)).collect();
                        v.sort();
                        v
                    };
                    let w = Axiom4Witness {
                        f: to_vecs(f),
                        g: to_vecs(g),
                        x: F2Vector::from_bits(self.n, x),
                    };
                    *best = Some((key, w));
                }
            }
        }
    }
}
