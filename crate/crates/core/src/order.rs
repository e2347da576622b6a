//! Admissible orders on a signed ground set and the Gale order they induce
//! on admissible subsets.
//!
//! A type C order is a total order on `J` with `i < j  iff  j* < i*`; it is
//! determined by the signed permutation in its top half.  A type D order
//! instead leaves one pair `{m, m*}` incomparable in the middle and orders
//! everything else linearly, still respecting the mirror rule.

use crate::ground::{ESet, GroundSet};
use itertools::Itertools;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OrderKind {
    C,
    D,
}

/// An admissible order, encoded by element heights.  Larger height means
/// larger element; `e <= f` iff `e == f` or `height[e] < height[f]`.  Heights
/// satisfy `height[e] + height[e*] = 2n - 2` for D orders and `2n - 1` for C
/// orders, and the only repeated height (D only) belongs to the middle pair.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AdmOrder {
    pub g: GroundSet,
    pub kind: OrderKind,
    height: Vec<usize>,
}

impl AdmOrder {
    /// Type C order from its top half: the elements that come largest first.
    /// `top` must be admissible and list `n` distinct elements.
    pub fn c_from_top(g: GroundSet, top: &[usize]) -> AdmOrder {
        assert_eq!(top.len(), g.n);
        assert!(g.is_admissible(ESet::from_elems(top)));
        let mut height = vec![usize::MAX; g.size()];
        for (t, &e) in top.iter().enumerate() {
            height[e] = 2 * g.n - 1 - t;
            height[g.star(e)] = t;
        }
        AdmOrder { g, kind: OrderKind::C, height }
    }

    /// Type D order from the chain above the middle (largest first) and the
    /// middle pair index `m` in `0..n`.
    pub fn d_from_chain(g: GroundSet, chain: &[usize], m: usize) -> AdmOrder {
        assert_eq!(chain.len() + 1, g.n);
        let cset = ESet::from_elems(chain);
        assert!(g.is_admissible(cset));
        assert!(!cset.contains(m) && !cset.contains(g.star(m)));
        let mut height = vec![usize::MAX; g.size()];
        for (t, &e) in chain.iter().enumerate() {
            height[e] = 2 * g.n - 2 - t;
            height[g.star(e)] = t;
        }
        height[m] = g.n - 1;
        height[g.star(m)] = g.n - 1;
        AdmOrder { g, kind: OrderKind::D, height }
    }

    pub fn le(&self, e: usize, f: usize) -> bool {
        e == f || self.height[e] < self.height[f]
    }

    /// Elements sorted descending, ties (the D middle pair) in bit order.
    pub fn descending(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.g.size()).collect();
        v.sort_by_key(|&e| (std::cmp::Reverse(self.height[e]), e));
        v
    }

    /// Gale order: `A <= B` iff some bijection sends each `a` to a `b >= a`.
    /// Works for both kinds; for total orders it agrees with the sorted
    /// componentwise comparison.
    pub fn gale_le(&self, a: ESet, b: ESet) -> bool {
        if a.len() != b.len() {
            return false;
        }
        let av = a.elems();
        let bv = b.elems();
        // small bipartite matching by backtracking
        let k = av.len();
        let mut matched = vec![usize::MAX; k]; // b index -> a index
        fn try_assign(
            ai: usize,
            av: &[usize],
            bv: &[usize],
            ord: &AdmOrder,
            matched: &mut [usize],
            seen: &mut [bool],
        ) -> bool {
            for bi in 0..bv.len() {
                if !seen[bi] && ord.le(av[ai], bv[bi]) {
                    seen[bi] = true;
                    if matched[bi] == usize::MAX
                        || try_assign(matched[bi], av, bv, ord, matched, seen)
                    {
                        matched[bi] = ai;
                        return true;
                    }
                }
            }
            false
        }
        for ai in 0..k {
            let mut seen = vec![false; k];
            if !try_assign(ai, &av, &bv, self, &mut matched, &mut seen) {
                return false;
            }
        }
        true
    }

    /// Componentwise comparison of descending sorts; only valid for C orders.
    pub fn gale_le_sorted(&self, a: ESet, b: ESet) -> bool {
        assert_eq!(self.kind, OrderKind::C);
        if a.len() != b.len() {
            return false;
        }
        let key = |s: ESet| {
            let mut v: Vec<usize> = s.iter().map(|e| self.height[e]).collect();
            v.sort_unstable_by(|x, y| y.cmp(x));
            v
        };
        key(a).iter().zip(key(b)).all(|(&ha, hb)| ha <= hb)
    }

    /// The member of `sets` that Gale-dominates all of them, if one exists.
    /// Dominance is antisymmetric, so the dominant member is unique.
    pub fn gale_dominant(&self, sets: &[ESet]) -> Option<ESet> {
        sets.iter()
            .copied()
            .find(|&d| sets.iter().all(|&s| self.gale_le(s, d)))
    }
}

/// All type C admissible orders: `2^n n!` of them.
pub fn enumerate_c_orders(g: GroundSet) -> Vec<AdmOrder> {
    let mut out = Vec::new();
    for perm in (0..g.n).permutations(g.n) {
        for signs in 0..1u32 << g.n {
            let top: Vec<usize> = perm
                .iter()
                .enumerate()
                .map(|(j, &p)| if signs >> j & 1 == 1 { g.star(p) } else { p })
                .collect();
            out.push(AdmOrder::c_from_top(g, &top));
        }
    }
    out
}

/// All type D admissible orders: `2^(n-1) n!` of them (`n >= 1`).
pub fn enumerate_d_orders(g: GroundSet) -> Vec<AdmOrder> {
    let mut out = Vec::new();
    for m in 0..g.n {
        let rest: Vec<usize> = (0..g.n).filter(|&p| p != m).collect();
        for perm in rest.iter().copied().permutations(g.n - 1) {
            for signs in 0..1u32 << (g.n - 1) {
                let chain: Vec<usize> = perm
                    .iter()
                    .enumerate()
                    .map(|(j, &p)| if signs >> j & 1 == 1 { g.star(p) } else { p })
                    .collect();
                out.push(AdmOrder::d_from_chain(g, &chain, m));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c_order_counts() {
        assert_eq!(enumerate_c_orders(GroundSet::new(2)).len(), 8);
        assert_eq!(enumerate_c_orders(GroundSet::new(3)).len(), 48);
    }

    #[test]
    fn d_order_counts() {
        assert_eq!(enumerate_d_orders(GroundSet::new(1)).len(), 1);
        assert_eq!(enumerate_d_orders(GroundSet::new(2)).len(), 4);
        assert_eq!(enumerate_d_orders(GroundSet::new(3)).len(), 24);
    }

    #[test]
    fn c_order_mirror_rule() {
        let g = GroundSet::new(3);
        for ord in enumerate_c_orders(g) {
            for e in 0..6 {
                for f in 0..6 {
                    if e != f {
                        assert_eq!(ord.le(e, f), ord.le(g.star(f), g.star(e)));
                    }
                }
            }
        }
    }

    #[test]
    fn d_order_structure() {
        let g = GroundSet::new(2);
        // chain = [1], middle pair {2,2*}: 1 > 2,2* > 1*, with 2 and 2* incomparable
        let ord = AdmOrder::d_from_chain(g, &[0], 1);
        assert!(ord.le(1, 0) && ord.le(3, 0));
        assert!(ord.le(2, 1) && ord.le(2, 3));
        assert!(!ord.le(1, 3) && !ord.le(3, 1));
    }

    #[test]
    fn gale_matching_agrees_with_sorted_on_c() {
        let g = GroundSet::new(3);
        let orders = enumerate_c_orders(g);
        let sets2 = g.admissible_sets(2);
        for ord in orders.iter().take(12) {
            for &a in &sets2 {
                for &b in &sets2 {
                    assert_eq!(ord.gale_le(a, b), ord.gale_le_sorted(a, b));
                }
            }
        }
    }

    #[test]
    fn gale_dominant_basic() {
        let g = GroundSet::new(2);
        // natural order: 1 > 2 > 2* > 1*
        let ord = AdmOrder::c_from_top(g, &[0, 1]);
        let sets = vec![
            ESet::from_elems(&[0, 1]),
            ESet::from_elems(&[0, 3]),
            ESet::from_elems(&[2, 3]),
        ];
        assert_eq!(ord.gale_dominant(&sets), Some(ESet::from_elems(&[0, 1])));
        // flip sign of pair 1: 1* > 2 > 2* > 1
        let ord2 = AdmOrder::c_from_top(g, &[2, 1]);
        assert_eq!(ord2.gale_dominant(&sets), Some(ESet::from_elems(&[2, 3])));
    }

    #[test]
    fn gale_incomparable_under_d() {
        let g = GroundSet::new(2);
        let ord = AdmOrder::d_from_chain(g, &[0], 1);
        let a = ESet::from_elems(&[0, 1]);
        let b = ESet::from_elems(&[0, 3]);
        assert!(!ord.gale_le(a, b) && !ord.gale_le(b, a));
        assert!(ord.gale_le(ESet::from_elems(&[2, 1]), a));
    }
}
