//! Ordinary matroids given by their bases, with eager rank tables.
//!
//! Ground sets are `0..groundsize`; nothing here knows about stars.  All
//! operations are exact and exhaustive, sized for ground sets of up to 20
//! elements (the rank table has `2^groundsize` entries).

use crate::ground::ESet;
use crate::order::AdmOrder;
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum MatroidError {
    #[error("basis family is empty")]
    EmptyFamily,
    #[error("basis {0:?} uses an element outside the ground set")]
    ElementOutOfRange(ESet),
    #[error("bases {0:?} and {1:?} have different sizes")]
    UnequalCardinality(ESet, ESet),
    #[error("exchange fails: no replacement for {a} in basis {b1:?} against {b2:?}")]
    ExchangeViolation { b1: ESet, b2: ESet, a: usize },
    #[error("ground set with {0} elements is larger than supported")]
    TooLarge(usize),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matroid {
    pub groundsize: usize,
    /// Sorted and deduplicated.
    pub bases: Vec<ESet>,
    pub rank: usize,
    rank_table: Vec<u8>,
}

impl Matroid {
    /// Validates the basis exchange axiom and builds the rank table.
    pub fn from_bases(groundsize: usize, bases: &[ESet]) -> Result<Matroid, MatroidError> {
        if groundsize > 20 {
            return Err(MatroidError::TooLarge(groundsize));
        }
        let mut bases: Vec<ESet> = bases.to_vec();
        bases.sort();
        bases.dedup();
        let first = *bases.first().ok_or(MatroidError::EmptyFamily)?;
        let full = if groundsize == 0 { ESet::EMPTY } else { ESet((1u32 << groundsize) - 1) };
        for &b in &bases {
            if !b.is_subset(full) {
                return Err(MatroidError::ElementOutOfRange(b));
            }
            if b.len() != first.len() {
                return Err(MatroidError::UnequalCardinality(first, b));
            }
        }
        let rank = first.len();
        for &b1 in &bases {
            for &b2 in &bases {
                for a in b1.diff(b2).iter() {
                    let stem = b1.remove(a);
                    let ok = b2
                        .diff(b1)
                        .iter()
                        .any(|b| bases.binary_search(&stem.insert(b)).is_ok());
                    if !ok {
                        return Err(MatroidError::ExchangeViolation { b1, b2, a });
                    }
                }
            }
        }
        let mut rank_table = vec![0u8; 1 << groundsize];
        for (mask, slot) in rank_table.iter_mut().enumerate() {
            let s = ESet(mask as u32);
            *slot = bases.iter().map(|b| b.intersect(s).len()).max().unwrap() as u8;
        }
        Ok(Matroid { groundsize, bases, rank, rank_table })
    }

    /// `U_{k,m}`: every `k`-subset of `0..m` is a basis.
    pub fn uniform(k: usize, m: usize) -> Matroid {
        let full = if m == 0 { ESet::EMPTY } else { ESet((1u32 << m) - 1) };
        Matroid::from_bases(m, &full.subsets_of_size(k)).unwrap()
    }

    pub fn full_set(&self) -> ESet {
        if self.groundsize == 0 {
            ESet::EMPTY
        } else {
            ESet((1u32 << self.groundsize) - 1)
        }
    }

    pub fn rank_of(&self, s: ESet) -> usize {
        self.rank_table[s.0 as usize] as usize
    }

    pub fn is_independent(&self, s: ESet) -> bool {
        self.rank_of(s) == s.len()
    }

    pub fn is_basis(&self, s: ESet) -> bool {
        self.bases.binary_search(&s).is_ok()
    }

    pub fn closure(&self, s: ESet) -> ESet {
        let r = self.rank_of(s);
        let mut c = s;
        for e in 0..self.groundsize {
            if self.rank_of(s.insert(e)) == r {
                c = c.insert(e);
            }
        }
        c
    }

    pub fn is_flat(&self, s: ESet) -> bool {
        self.closure(s) == s
    }

    /// All flats, ascending by mask.
    pub fn flats(&self) -> Vec<ESet> {
        self.full_set().subsets().filter(|&s| self.is_flat(s)).collect::<std::collections::BTreeSet<_>>().into_iter().collect()
    }

    pub fn flats_of_rank(&self, k: usize) -> Vec<ESet> {
        self.flats().into_iter().filter(|&f| self.rank_of(f) == k).collect()
    }

    pub fn loops(&self) -> ESet {
        self.closure(ESet::EMPTY)
    }

    pub fn is_loopless(&self) -> bool {
        self.loops().is_empty()
    }

    pub fn independent_sets_of_size(&self, k: usize) -> Vec<ESet> {
        self.full_set()
            .subsets_of_size(k)
            .into_iter()
            .filter(|&s| self.is_independent(s))
            .collect()
    }

    /// Minimal dependent sets.
    pub fn circuits(&self) -> Vec<ESet> {
        let mut out = Vec::new();
        for s in self.full_set().subsets() {
            if !self.is_independent(s) && s.iter().all(|e| self.is_independent(s.remove(e))) {
                out.push(s);
            }
        }
        out.sort();
        out
    }

    /// Connected components: classes of "share a circuit", with elements in
    /// no circuit (coloops) and loops as singletons.
    pub fn components(&self) -> Vec<ESet> {
        let mut parent: Vec<usize> = (0..self.groundsize).collect();
        fn find(parent: &mut Vec<usize>, x: usize) -> usize {
            if parent[x] != x {
                let r = find(parent, parent[x]);
                parent[x] = r;
            }
            parent[x]
        }
        for c in self.circuits() {
            let elems = c.elems();
            for w in elems.windows(2) {
                let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
                parent[a] = b;
            }
        }
        let mut groups: std::collections::BTreeMap<usize, ESet> = Default::default();
        for e in 0..self.groundsize {
            let r = find(&mut parent, e);
            let slot = groups.entry(r).or_insert(ESet::EMPTY);
            *slot = slot.insert(e);
        }
        groups.into_values().collect()
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Deletion of `x`, reindexed to a fresh ground set.  Returns the minor
    /// and the map from new indices to old ones.
    pub fn delete(&self, x: ESet) -> (Matroid, Vec<usize>) {
        let keep: Vec<usize> = (0..self.groundsize).filter(|&e| !x.contains(e)).collect();
        let rest = self.full_set().diff(x);
        let r = self.rank_of(rest);
        let bases: Vec<ESet> = rest
            .subsets_of_size(r)
            .into_iter()
            .filter(|&s| self.is_independent(s))
            .map(|s| reindex(s, &keep))
            .collect();
        (Matroid::from_bases(keep.len(), &bases).unwrap(), keep)
    }

    /// Contraction of `x`, reindexed.  `A` is independent in `M/x` iff
    /// `r(A ∪ x) = |A| + r(x)`.
    pub fn contract(&self, x: ESet) -> (Matroid, Vec<usize>) {
        let keep: Vec<usize> = (0..self.groundsize).filter(|&e| !x.contains(e)).collect();
        let rest = self.full_set().diff(x);
        let rx = self.rank_of(x);
        let r = self.rank - rx;
        let bases: Vec<ESet> = rest
            .subsets_of_size(r)
            .into_iter()
            .filter(|&s| self.rank_of(s.union(x)) == s.len() + rx)
            .map(|s| reindex(s, &keep))
            .collect();
        (Matroid::from_bases(keep.len(), &bases).unwrap(), keep)
    }

    /// Greedy basis for a total admissible order: scan descending, keep what
    /// stays independent.  Produces the Gale-maximal basis.
    pub fn greedy_basis(&self, ord: &AdmOrder) -> ESet {
        assert_eq!(ord.g.size(), self.groundsize);
        let mut cur = ESet::EMPTY;
        for e in ord.descending() {
            if self.rank_of(cur.insert(e)) > self.rank_of(cur) {
                cur = cur.insert(e);
            }
        }
        cur
    }
}

fn reindex(s: ESet, keep: &[usize]) -> ESet {
    let mut out = ESet::EMPTY;
    for (new, &old) in keep.iter().enumerate() {
        if s.contains(old) {
            out = out.insert(new);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ground::GroundSet;

    #[test]
    fn uniform_basics() {
        let m = Matroid::uniform(2, 4);
        assert_eq!(m.bases.len(), 6);
        assert_eq!(m.rank, 2);
        assert_eq!(m.rank_of(ESet::from_elems(&[0, 1, 2])), 2);
        assert_eq!(m.rank_of(ESet::from_elems(&[3])), 1);
        assert!(m.is_loopless());
        assert_eq!(m.flats().len(), 6); // empty, 4 singletons, full
        assert_eq!(m.circuits().len(), 4);
        assert!(m.is_connected());
    }

    #[test]
    fn exchange_violation_detected() {
        // {1,1*},{1,2*},{2,1*},{1*,2*} on n=2: removing 2 from {2,1*} has no
        // replacement against {1,2*}
        let fam = [
            ESet::from_elems(&[0, 2]),
            ESet::from_elems(&[0, 3]),
            ESet::from_elems(&[1, 2]),
            ESet::from_elems(&[2, 3]),
        ];
        match Matroid::from_bases(4, &fam) {
            Err(MatroidError::ExchangeViolation { .. }) => {}
            other => panic!("expected exchange violation, got {other:?}"),
        }
    }

    #[test]
    fn empty_and_degenerate() {
        assert_eq!(Matroid::from_bases(4, &[]), Err(MatroidError::EmptyFamily));
        let m = Matroid::from_bases(0, &[ESet::EMPTY]).unwrap();
        assert_eq!(m.rank, 0);
        assert_eq!(m.flats(), vec![ESet::EMPTY]);
        let m = Matroid::uniform(0, 3); // three loops
        assert_eq!(m.loops(), ESet::from_elems(&[0, 1, 2]));
        assert_eq!(m.components().len(), 3);
    }

    #[test]
    fn closure_and_flats() {
        // rank-2 matroid on 4 elements with 0,1 parallel
        let bases = [
            ESet::from_elems(&[0, 2]),
            ESet::from_elems(&[0, 3]),
            ESet::from_elems(&[1, 2]),
            ESet::from_elems(&[1, 3]),
            ESet::from_elems(&[2, 3]),
        ];
        let m = Matroid::from_bases(4, &bases).unwrap();
        assert_eq!(m.closure(ESet::from_elems(&[0])), ESet::from_elems(&[0, 1]));
        assert_eq!(m.flats().len(), 5); // {}, {0,1}, {2}, {3}, full
    }

    #[test]
    fn minors() {
        let m = Matroid::uniform(2, 4);
        let (d, map) = m.delete(ESet::from_elems(&[3]));
        assert_eq!(d, Matroid::uniform(2, 3));
        assert_eq!(map, vec![0, 1, 2]);
        let (c, _) = m.contract(ESet::from_elems(&[3]));
        assert_eq!(c, Matroid::uniform(1, 3));
        // contracting a spanning set leaves the rank-0 matroid
        let (z, _) = m.contract(ESet::from_elems(&[0, 1]));
        assert_eq!(z.rank, 0);
        assert_eq!(z.bases, vec![ESet::EMPTY]);
    }

    #[test]
    fn greedy_is_gale_max() {
        let g = GroundSet::new(2);
        let m = Matroid::uniform(2, 4);
        for ord in crate::order::enumerate_c_orders(g) {
            let b = m.greedy_basis(&ord);
            assert!(m.is_basis(b));
            for &b2 in &m.bases {
                assert!(ord.gale_le(b2, b));
            }
        }
    }

    #[test]
    fn components_split() {
        // direct sum of U_{1,2} and U_{1,2}
        let bases = [
            ESet::from_elems(&[0, 2]),
            ESet::from_elems(&[0, 3]),
            ESet::from_elems(&[1, 2]),
            ESet::from_elems(&[1, 3]),
        ];
        let m = Matroid::from_bases(4, &bases).unwrap();
        assert_eq!(m.components(), vec![ESet::from_elems(&[0, 1]), ESet::from_elems(&[2, 3])]);
    }
}
