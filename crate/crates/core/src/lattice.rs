//! Finite lattices of sets ordered by inclusion, with Mobius machinery.
//!
//! Members are stored sorted by (size, mask), which is a linear extension of
//! inclusion, so dynamic programming over indices respects the order.

use crate::ground::ESet;

#[derive(Clone, Debug)]
pub struct SetLattice {
    pub sets: Vec<ESet>,
    /// Rank label per member (matroid rank for flat lattices).
    pub ranks: Vec<usize>,
    pub bottom: usize,
    pub top: usize,
    mob: Vec<Vec<i64>>,
}

impl SetLattice {
    /// Builds from a family of distinct sets.  Requires a global minimum and
    /// a global maximum under inclusion (every lattice has them).
    pub fn new(sets: &[ESet], rank_of: impl Fn(ESet) -> usize) -> SetLattice {
        let mut sets: Vec<ESet> = sets.to_vec();
        sets.sort_by_key(|s| (s.len(), s.0));
        sets.dedup();
        assert!(!sets.is_empty());
        let bottom = 0;
        let top = sets.len() - 1;
        for &s in &sets {
            assert!(sets[bottom].is_subset(s) && s.is_subset(sets[top]), "no global bounds");
        }
        let ranks: Vec<usize> = sets.iter().map(|&s| rank_of(s)).collect();
        let m = sets.len();
        // mu(i, j) = -sum over i <= k < j of mu(i, k); index order extends inclusion
        let mut mob = vec![vec![0i64; m]; m];
        for i in 0..m {
            mob[i][i] = 1;
            for j in i + 1..m {
                if !sets[i].is_subset(sets[j]) {
                    continue;
                }
                let mut acc = 0i64;
                for k in i..j {
                    if sets[i].is_subset(sets[k]) && sets[k].is_subset(sets[j]) {
                        acc += mob[i][k];
                    }
                }
                mob[i][j] = -acc;
            }
        }
        SetLattice { sets, ranks, bottom, top, mob }
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn le(&self, i: usize, j: usize) -> bool {
        self.sets[i].is_subset(self.sets[j])
    }

    pub fn index_of(&self, s: ESet) -> Option<usize> {
        self.sets.binary_search_by_key(&(s.len(), s.0), |t| (t.len(), t.0)).ok()
    }

    pub fn mobius(&self, i: usize, j: usize) -> i64 {
        self.mob[i][j]
    }

    pub fn mobius_top(&self) -> i64 {
        self.mob[self.bottom][self.top]
    }

    /// Indices covering `i`: minimal strict supersets within the lattice.
    pub fn covers_of(&self, i: usize) -> Vec<usize> {
        let mut out = Vec::new();
        'next: for j in 0..self.len() {
            if j == i || !self.le(i, j) {
                continue;
            }
            for k in 0..self.len() {
                if k != i && k != j && self.le(i, k) && self.le(k, j) {
                    continue 'next;
                }
            }
            out.push(j);
        }
        out
    }

    pub fn atoms(&self) -> Vec<usize> {
        self.covers_of(self.bottom)
    }

    /// Least upper bound, if unique.
    pub fn join(&self, i: usize, j: usize) -> Option<usize> {
        let ubs: Vec<usize> =
            (0..self.len()).filter(|&k| self.le(i, k) && self.le(j, k)).collect();
        let minimal: Vec<usize> = ubs
            .iter()
            .copied()
            .filter(|&k| ubs.iter().all(|&l| l == k || !self.le(l, k)))
            .collect();
        (minimal.len() == 1).then(|| minimal[0])
    }

    pub fn meet(&self, i: usize, j: usize) -> Option<usize> {
        let lbs: Vec<usize> =
            (0..self.len()).filter(|&k| self.le(k, i) && self.le(k, j)).collect();
        let maximal: Vec<usize> = lbs
            .iter()
            .copied()
            .filter(|&k| lbs.iter().all(|&l| l == k || !self.le(k, l)))
            .collect();
        (maximal.len() == 1).then(|| maximal[0])
    }

    pub fn is_lattice(&self) -> bool {
        (0..self.len()).all(|i| {
            (i..self.len()).all(|j| self.join(i, j).is_some() && self.meet(i, j).is_some())
        })
    }

    /// Join of a set of members, if it exists (empty join = bottom).
    pub fn join_all(&self, idxs: &[usize]) -> Option<usize> {
        idxs.iter().try_fold(self.bottom, |acc, &i| self.join(acc, i))
    }

    /// Weisner: for every a > bottom, the mobius values of members joining
    /// with a to the top sum to zero.
    pub fn weisner_check(&self) -> bool {
        if self.bottom == self.top {
            return true;
        }
        (0..self.len()).filter(|&a| a != self.bottom).all(|a| {
            let total: i64 = (0..self.len())
                .filter(|&f| self.join(f, a) == Some(self.top))
                .map(|f| self.mob[self.bottom][f])
                .sum();
            total == 0
        })
    }

    /// Sum of (-1)^|B| over atom subsets B whose join is the top; equals
    /// mobius_top in any finite lattice.
    pub fn boolean_expansion(&self) -> i64 {
        let atoms = self.atoms();
        assert!(atoms.len() <= 20);
        let mut total = 0i64;
        for mask in 0u32..1 << atoms.len() {
            let chosen: Vec<usize> = atoms
                .iter()
                .enumerate()
                .filter(|(b, _)| mask >> b & 1 == 1)
                .map(|(_, &a)| a)
                .collect();
            if self.join_all(&chosen) == Some(self.top) {
                total += if chosen.len() % 2 == 0 { 1 } else { -1 };
            }
        }
        total
    }

    /// All maximal chains bottom..top as index lists.
    pub fn maximal_chains(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut stack = vec![vec![self.bottom]];
        while let Some(chain) = stack.pop() {
            let last = *chain.last().unwrap();
            if last == self.top {
                out.push(chain);
                continue;
            }
            for c in self.covers_of(last) {
                let mut next = chain.clone();
                next.push(c);
                stack.push(next);
            }
        }
        out
    }

    /// Every maximal chain has the same length.
    pub fn is_graded(&self) -> bool {
        let chains = self.maximal_chains();
        chains.windows(2).all(|w| w[0].len() == w[1].len())
    }

    /// Every member is a join of atoms.
    pub fn is_atomistic(&self) -> bool {
        let atoms = self.atoms();
        (0..self.len()).all(|i| {
            let below: Vec<usize> = atoms.iter().copied().filter(|&a| self.le(a, i)).collect();
            self.join_all(&below) == Some(i)
        })
    }

    /// Rank labels satisfy r(x) + r(y) >= r(x v y) + r(x ^ y).
    pub fn is_semimodular(&self) -> bool {
        (0..self.len()).all(|i| {
            (0..self.len()).all(|j| {
                match (self.join(i, j), self.meet(i, j)) {
                    (Some(v), Some(m)) => {
                        self.ranks[i] + self.ranks[j] >= self.ranks[v] + self.ranks[m]
                    }
                    _ => false,
                }
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::Matroid;

    fn flat_lattice(m: &Matroid) -> SetLattice {
        SetLattice::new(&m.flats(), |s| m.rank_of(s))
    }

    #[test]
    fn mobius_u24() {
        let l = flat_lattice(&Matroid::uniform(2, 4));
        assert_eq!(l.len(), 6);
        assert_eq!(l.mobius_top(), 3);
        assert!(l.weisner_check());
        assert_eq!(l.boolean_expansion(), 3);
        assert!(l.is_lattice() && l.is_graded() && l.is_atomistic() && l.is_semimodular());
    }

    #[test]
    fn mobius_uniform_lattices() {
        assert_eq!(flat_lattice(&Matroid::uniform(3, 6)).mobius_top(), -10);
        assert_eq!(flat_lattice(&Matroid::uniform(1, 3)).mobius_top(), -1);
        assert_eq!(flat_lattice(&Matroid::uniform(2, 3)).mobius_top(), 2);
        assert_eq!(flat_lattice(&Matroid::uniform(3, 6)).len(), 23);
    }

    #[test]
    fn boolean_expansion_matches_everywhere() {
        for m in [Matroid::uniform(2, 4), Matroid::uniform(3, 6), Matroid::uniform(2, 5)] {
            let l = flat_lattice(&m);
            assert_eq!(l.boolean_expansion(), l.mobius_top());
            assert!(l.weisner_check());
        }
    }

    #[test]
    fn chain_lattice() {
        // chain of 3: mobius of the interval of length 2 is 0
        let sets = [ESet::EMPTY, ESet::from_elems(&[0]), ESet::from_elems(&[0, 1])];
        let l = SetLattice::new(&sets, |s| s.len());
        assert_eq!(l.mobius_top(), 0);
        assert_eq!(l.boolean_expansion(), 0);
        assert_eq!(l.atoms().len(), 1);
        assert!(!l.is_atomistic());
    }

    #[test]
    fn trivial_lattice() {
        let l = SetLattice::new(&[ESet::EMPTY], |_| 0);
        assert_eq!(l.mobius_top(), 1);
        assert_eq!(l.maximal_chains(), vec![vec![0]]);
        assert!(l.weisner_check());
    }

    #[test]
    fn maximal_chain_count() {
        // boolean lattice on 2 atoms: two maximal chains
        let sets = [
            ESet::EMPTY,
            ESet::from_elems(&[0]),
            ESet::from_elems(&[1]),
            ESet::from_elems(&[0, 1]),
        ];
        let l = SetLattice::new(&sets, |s| s.len());
        assert_eq!(l.maximal_chains().len(), 2);
        assert_eq!(l.boolean_expansion(), 1);
        assert_eq!(l.mobius_top(), 1);
    }
}
