//! Signed ground sets `J = {1, .., n, 1*, .., n*}` and small subsets of them.
//!
//! Element `i` lives at bit `i - 1`, its star `i*` at bit `n + i - 1`, so a
//! subset of `J` fits in a `u32` for every size this crate supports.

use serde::{Deserialize, Serialize};
use std::fmt;

/// A subset of a ground set with at most 32 elements, stored as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct ESet(pub u32);

impl ESet {
    pub const EMPTY: ESet = ESet(0);

    pub fn singleton(e: usize) -> ESet {
        ESet(1 << e)
    }

    pub fn from_elems(elems: &[usize]) -> ESet {
        elems.iter().fold(ESet::EMPTY, |s, &e| s.insert(e))
    }

    pub fn contains(self, e: usize) -> bool {
        self.0 >> e & 1 == 1
    }

    pub fn insert(self, e: usize) -> ESet {
        ESet(self.0 | 1 << e)
    }

    pub fn remove(self, e: usize) -> ESet {
        ESet(self.0 & !(1 << e))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: ESet) -> ESet {
        ESet(self.0 | other.0)
    }

    pub fn intersect(self, other: ESet) -> ESet {
        ESet(self.0 & other.0)
    }

    pub fn diff(self, other: ESet) -> ESet {
        ESet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: ESet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: ESet) -> bool {
        self.0 & other.0 == 0
    }

    /// Elements in ascending bit order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let e = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(e)
            }
        })
    }

    pub fn elems(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// All subsets of `self`, largest mask first ends at the empty set.
    pub fn subsets(self) -> impl Iterator<Item = ESet> {
        let mask = self.0;
        let mut cur = mask;
        let mut done = false;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let out = ESet(cur);
            if cur == 0 {
                done = true;
            } else {
                cur = (cur - 1) & mask;
            }
            Some(out)
        })
    }

    /// Subsets of `self` with exactly `k` elements.
    pub fn subsets_of_size(self, k: usize) -> Vec<ESet> {
        let elems = self.elems();
        if k > elems.len() {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut pick = vec![0usize; k];
        fn rec(elems: &[usize], k: usize, start: usize, pick: &mut Vec<usize>, depth: usize, out: &mut Vec<ESet>) {
            if depth == k {
                out.push(ESet::from_elems(&pick[..k]));
                return;
            }
            for i in start..elems.len() {
                pick[depth] = elems[i];
                rec(elems, k, i + 1, pick, depth + 1, out);
            }
        }
        rec(&elems, k, 0, &mut pick, 0, &mut out);
        out
    }
}

impl fmt::Debug for ESet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

/// The signed ground set `J = {1, .., n} U {1*, .., n*}`, `2n` elements total.
///
/// `n = 0` is allowed: deletions can empty a ground set and the rank-0 objects
/// on it still make sense.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct GroundSet {
    pub n: usize,
}

impl GroundSet {
    pub fn new(n: usize) -> GroundSet {
        assert!(n <= 16, "ground set too large for a u32 mask");
        GroundSet { n }
    }

    pub fn size(self) -> usize {
        2 * self.n
    }

    /// `i ↦ i*` and `i* ↦ i`.
    pub fn star(self, e: usize) -> usize {
        (e + self.n) % (2 * self.n)
    }

    pub fn star_set(self, a: ESet) -> ESet {
        a.iter().fold(ESet::EMPTY, |s, e| s.insert(self.star(e)))
    }

    pub fn full(self) -> ESet {
        if self.n == 0 {
            ESet::EMPTY
        } else {
            ESet((1u32 << (2 * self.n)) - 1)
        }
    }

    /// No element together with its star.
    pub fn is_admissible(self, a: ESet) -> bool {
        a.is_disjoint(self.star_set(a))
    }

    /// `A = A*`: every element appears with its star.
    pub fn is_totally_inadmissible(self, a: ESet) -> bool {
        a == self.star_set(a)
    }

    /// Admissible and `A ∪ A*` covers `scope`.
    pub fn is_transversal(self, a: ESet, scope: ESet) -> bool {
        self.is_admissible(a) && scope.is_subset(a.union(self.star_set(a)))
    }

    /// All admissible subsets of size `k`: pick `k` of the `n` pairs, then a
    /// sign for each.
    pub fn admissible_sets(self, k: usize) -> Vec<ESet> {
        let pairs: Vec<usize> = (0..self.n).collect();
        let mut out = Vec::new();
        if k > self.n {
            return out;
        }
        let picks = ESet(((1u64 << self.n) - 1) as u32).subsets_of_size(k);
        for p in picks {
            let chosen: Vec<usize> = p.iter().collect();
            for signs in 0..1u32 << k {
                let mut s = ESet::EMPTY;
                for (j, &i) in chosen.iter().enumerate() {
                    let e = if signs >> j & 1 == 1 { self.star(pairs[i]) } else { pairs[i] };
                    s = s.insert(e);
                }
                out.push(s);
            }
        }
        out.sort();
        out
    }

    /// Signed-integer name of an element: `i ↦ i`, `i* ↦ -i` (1-indexed).
    pub fn signed(self, e: usize) -> i64 {
        if e < self.n {
            (e + 1) as i64
        } else {
            -((e - self.n + 1) as i64)
        }
    }

    /// Inverse of [`GroundSet::signed`].
    pub fn from_signed(self, v: i64) -> Option<usize> {
        let a = v.unsigned_abs() as usize;
        if a == 0 || a > self.n {
            return None;
        }
        Some(if v > 0 { a - 1 } else { self.n + a - 1 })
    }

    /// Set from signed-integer names, failing on out-of-range or repeated
    /// elements.
    pub fn set_from_signed(self, vals: &[i64]) -> Option<ESet> {
        let mut s = ESet::EMPTY;
        for &v in vals {
            let e = self.from_signed(v)?;
            if s.contains(e) {
                return None;
            }
            s = s.insert(e);
        }
        Some(s)
    }

    /// Signed-integer names, ascending numerically (so `-2 < 1`).
    pub fn set_to_signed(self, a: ESet) -> Vec<i64> {
        let mut v: Vec<i64> = a.iter().map(|e| self.signed(e)).collect();
        v.sort_unstable();
        v
    }

    /// Human name of an element: `3` or `3*`.
    pub fn elem_name(self, e: usize) -> String {
        if e < self.n {
            format!("{}", e + 1)
        } else {
            format!("{}*", e - self.n + 1)
        }
    }

    pub fn set_name(self, a: ESet) -> String {
        let mut names: Vec<(i64, String)> = a
            .iter()
            .map(|e| (self.signed(e).abs() * 2 + if e >= self.n { 1 } else { 0 }, self.elem_name(e)))
            .collect();
        names.sort();
        let inner: Vec<String> = names.into_iter().map(|(_, s)| s).collect();
        format!("{{{}}}", inner.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn star_is_involution() {
        let g = GroundSet::new(3);
        for e in 0..6 {
            assert_eq!(g.star(g.star(e)), e);
        }
        assert_eq!(g.star(0), 3);
        assert_eq!(g.star(5), 2);
    }

    #[test]
    fn admissibility() {
        let g = GroundSet::new(2);
        assert!(g.is_admissible(ESet::from_elems(&[0, 1])));
        assert!(g.is_admissible(ESet::from_elems(&[0, 3])));
        assert!(!g.is_admissible(ESet::from_elems(&[0, 2])));
        assert!(g.is_admissible(ESet::EMPTY));
        assert!(g.is_totally_inadmissible(ESet::from_elems(&[0, 2])));
        assert!(g.is_totally_inadmissible(ESet::EMPTY));
        assert!(!g.is_totally_inadmissible(ESet::from_elems(&[0, 1, 2])));
    }

    #[test]
    fn transversal() {
        let g = GroundSet::new(2);
        let full = g.full();
        assert!(g.is_transversal(ESet::from_elems(&[0, 1]), full));
        assert!(g.is_transversal(ESet::from_elems(&[0, 3]), full));
        assert!(!g.is_transversal(ESet::from_elems(&[0]), full));
        assert!(g.is_transversal(ESet::from_elems(&[0]), ESet::from_elems(&[0, 2])));
    }

    #[test]
    fn admissible_set_count() {
        // sum_k C(n,k) 2^k = 3^n
        for n in 0..=4 {
            let g = GroundSet::new(n);
            let total: usize = (0..=n).map(|k| g.admissible_sets(k).len()).sum();
            assert_eq!(total, 3usize.pow(n as u32));
        }
    }

    #[test]
    fn signed_roundtrip() {
        let g = GroundSet::new(3);
        for e in 0..6 {
            assert_eq!(g.from_signed(g.signed(e)), Some(e));
        }
        assert_eq!(g.set_from_signed(&[1, -2]), Some(ESet::from_elems(&[0, 4])));
        assert_eq!(g.set_from_signed(&[1, 1]), None);
        assert_eq!(g.set_from_signed(&[4]), None);
        assert_eq!(g.set_from_signed(&[0]), None);
        assert_eq!(g.set_to_signed(ESet::from_elems(&[0, 4])), vec![-2, 1]);
    }

    #[test]
    fn subset_iteration() {
        let s = ESet::from_elems(&[0, 2, 5]);
        let subs: Vec<ESet> = s.subsets().collect();
        assert_eq!(subs.len(), 8);
        assert!(subs.contains(&ESet::EMPTY));
        assert!(subs.contains(&s));
        assert_eq!(s.subsets_of_size(2).len(), 3);
        assert_eq!(ESet::EMPTY.subsets().count(), 1);
    }

    #[test]
    fn names() {
        let g = GroundSet::new(2);
        assert_eq!(g.set_name(ESet::from_elems(&[0, 3])), "{1,2*}");
        assert_eq!(g.elem_name(2), "1*");
    }

    #[test]
    fn empty_ground() {
        let g = GroundSet::new(0);
        assert_eq!(g.full(), ESet::EMPTY);
        assert!(g.is_admissible(ESet::EMPTY));
        assert_eq!(g.admissible_sets(0), vec![ESet::EMPTY]);
    }
}
