//! Independent-set counting for a ranked symplectic matroid, its envelope,
//! and the matroid of non-maximal strongly admissible sets, with the
//! subtraction identity, equivalence-class sizes, and exact log-concavity
//! verdicts including the rank-3 theorem.

use crate::exact::{rat, rat_frac};
use crate::ground::ESet;
use crate::symp::{strongly_admissible_sets, SympMatroid};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MasonError {
    #[error("(k-1)*J_(k-1) is odd at k = {0}")]
    ParityViolation(usize),
    #[error("{0}")]
    Failed(String),
}

/// Size-k subsets of the ground set lying inside some admissible basis.
pub fn count_s(s: &SympMatroid, k: usize) -> i64 {
    s.g.full()
        .subsets_of_size(k)
        .into_iter()
        .filter(|&a| s.bases.iter().any(|&b| a.is_subset(b)))
        .count() as i64
}

/// Independent k-sets of the envelope.
pub fn count_i(s: &SympMatroid, k: usize) -> i64 {
    s.env.independent_sets_of_size(k).len() as i64
}

/// Strongly admissible k-sets: independent with admissible closure.
pub fn count_j(s: &SympMatroid, k: usize) -> i64 {
    strongly_admissible_sets(s.g, &s.env, k).len() as i64
}

/// S_k = I_k - (k-1)/2 * J_(k-1) for every k up to the rank, with the
/// evenness of (k-1)*J_(k-1) asserted along the way.
pub fn counting_identity_check(s: &SympMatroid) -> Result<(), MasonError> {
    for k in 0..=s.rank() {
        let sk = count_s(s, k);
        let ik = count_i(s, k);
        let correction = if k == 0 {
            0
        } else {
            let j = count_j(s, k - 1);
            let prod = (k as i64 - 1) * j;
            if prod % 2 != 0 {
                return Err(MasonError::ParityViolation(k));
            }
            prod / 2
        };
        if sk != ik - correction {
            return Err(MasonError::Failed(format!("k = {}: {} != {} - {}", k, sk, ik, correction)));
        }
    }
    Ok(())
}

fn pair_support(s: &SympMatroid, a: ESet) -> ESet {
    a.union(s.g.star_set(a))
}

fn index_support(s: &SympMatroid, a: ESet) -> ESet {
    let n = s.g.n;
    a.iter().fold(ESet::EMPTY, |acc, e| acc.insert(if e < n { e } else { e - n }))
}

/// Classes of inadmissible independent k-sets of the envelope and of
/// strongly admissible (k-1)-sets under "same set after adding stars":
/// sizes 2^(k-2)*(k-1) and 2^(k-1), matched up by their index supports.
pub fn class_size_check(s: &SympMatroid) -> Result<(), MasonError> {
    let g = s.g;
    for k in 2..=s.rank() {
        let mut env_classes: BTreeMap<u32, Vec<ESet>> = BTreeMap::new();
        for a in s.env.independent_sets_of_size(k) {
            if !g.is_admissible(a) {
                env_classes.entry(pair_support(s, a).0).or_default().push(a);
            }
        }
        let expected_env = (1usize << (k - 2)) * (k - 1);
        for (key, class) in &env_classes {
            if class.len() != expected_env {
                return Err(MasonError::Failed(format!(
                    "envelope class {} at k = {} has {} members, expected {}",
                    g.set_name(ESet(*key)),
                    k,
                    class.len(),
                    expected_env
                )));
            }
        }
        let mut carrier_classes: BTreeMap<u32, Vec<ESet>> = BTreeMap::new();
        for a in strongly_admissible_sets(g, &s.env, k - 1) {
            carrier_classes.entry(pair_support(s, a).0).or_default().push(a);
        }
        let expected_carrier = 1usize << (k - 1);
        for (key, class) in &carrier_classes {
            if class.len() != expected_carrier {
                return Err(MasonError::Failed(format!(
                    "carrier class {} at k = {} has {} members, expected {}",
                    g.set_name(ESet(*key)),
                    k,
                    class.len(),
                    expected_carrier
                )));
            }
        }
        let env_supports: BTreeSet<u32> =
            env_classes.values().map(|c| index_support(s, c[0]).0).collect();
        let carrier_supports: BTreeSet<u32> =
            carrier_classes.values().map(|c| index_support(s, c[0]).0).collect();
        if env_supports != carrier_supports {
            return Err(MasonError::Failed(format!("class supports disagree at k = {}", k)));
        }
    }
    Ok(())
}

/// Per-k verdicts of seq[k]^2 >= factor * seq[k-1] * seq[k+1] in exact
/// rationals.  Variant 1 uses factor 1, variant 2 multiplies by 1 + 1/k,
/// variant 3 additionally by 1 + 1/(n-k) for a matroid on n elements.
pub fn log_concavity_report(seq: &[i64], variant: u8, n: usize) -> Vec<bool> {
    (1..seq.len().saturating_sub(1))
        .map(|k| {
            let factor = match variant {
                1 => rat(1),
                2 => rat(1) + rat_frac(1, k as i64),
                3 => (rat(1) + rat_frac(1, k as i64)) * (rat(1) + rat_frac(1, (n - k) as i64)),
                _ => panic!("variant must be 1, 2 or 3"),
            };
            rat(seq[k] * seq[k]) >= factor * rat(seq[k - 1] * seq[k + 1])
        })
        .collect()
}

/// Rank-3 log-concavity: variant-1 on the S sequence, the two auxiliary
/// inequalities 2n*I_3 <= (2/3)*I_2^2 and J_2 >= n, and the closing chain
/// (I_2-n)^2 >= (2/3)*I_2^2 - 2n^2 >= 2n*(I_3-J_2), all scaled to integers.
pub fn rank3_check(s: &SympMatroid) -> Result<(), MasonError> {
    assert_eq!(s.rank(), 3, "rank-3 theorem");
    let n = s.g.n as i64;
    let seq: Vec<i64> = (0..=3).map(|k| count_s(s, k)).collect();
    if log_concavity_report(&seq, 1, 2 * s.g.n).iter().any(|&ok| !ok) {
        return Err(MasonError::Failed(format!("S sequence {:?} is not log-concave", seq)));
    }
    let i2 = count_i(s, 2);
    let i3 = count_i(s, 3);
    let j2 = count_j(s, 2);
    if 3 * (2 * n * i3) > 2 * i2 * i2 {
        return Err(MasonError::Failed(format!("6n*I3 = {} exceeds 2*I2^2 = {}", 6 * n * i3, 2 * i2 * i2)));
    }
    if j2 < n {
        return Err(MasonError::Failed(format!("J2 = {} is below n = {}", j2, n)));
    }
    let lhs = 3 * (i2 - n) * (i2 - n);
    let mid = 2 * i2 * i2 - 6 * n * n;
    let rhs = 6 * n * (i3 - j2);
    if !(lhs >= mid && mid >= rhs) {
        return Err(MasonError::Failed(format!("chain fails: {} >= {} >= {}", lhs, mid, rhs)));
    }
    Ok(())
}

/// Counts plus verdicts for one ranked symplectic matroid.
pub struct CountReport {
    pub s_counts: Vec<i64>,
    pub i_counts: Vec<i64>,
    pub j_counts: Vec<i64>,
    pub identity_ok: bool,
    pub class_sizes_ok: bool,
    pub s_variant1: Vec<bool>,
    pub i_variant1: Vec<bool>,
    pub i_variant2: Vec<bool>,
    pub i_variant3: Vec<bool>,
    pub rank3_ok: Option<bool>,
}

pub fn count_report(s: &SympMatroid) -> CountReport {
    let r = s.rank();
    let s_counts: Vec<i64> = (0..=r).map(|k| count_s(s, k)).collect();
    let i_counts: Vec<i64> = (0..=r).map(|k| count_i(s, k)).collect();
    let j_counts: Vec<i64> = (0..r).map(|k| count_j(s, k)).collect();
    let elements = 2 * s.g.n;
    CountReport {
        s_variant1: log_concavity_report(&s_counts, 1, elements),
        i_variant1: log_concavity_report(&i_counts, 1, elements),
        i_variant2: log_concavity_report(&i_counts, 2, elements),
        i_variant3: log_concavity_report(&i_counts, 3, elements),
        identity_ok: counting_identity_check(s).is_ok(),
        class_sizes_ok: class_size_check(s).is_ok(),
        rank3_ok: (r == 3).then(|| rank3_check(s).is_ok()),
        s_counts,
        i_counts,
        j_counts,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ground::GroundSet;
    use crate::matroid::Matroid;
    use crate::symp::{ranked_symp, uniform_symp};

    fn s1() -> SympMatroid {
        let bases = [[0usize, 3], [2, 1], [2, 3], [0, 2], [1, 3]];
        let sets: Vec<ESet> = bases.iter().map(|b| ESet::from_elems(b)).collect();
        ranked_symp(GroundSet::new(2), Matroid::from_bases(4, &sets).unwrap()).unwrap()
    }

    fn exc() -> SympMatroid {
        let sets: Vec<ESet> =
            [[0usize, 1], [2, 3], [0, 2], [1, 3]].iter().map(|b| ESet::from_elems(b)).collect();
        ranked_symp(GroundSet::new(2), Matroid::from_bases(4, &sets).unwrap()).unwrap()
    }

    fn e2() -> SympMatroid {
        let g = GroundSet::new(3);
        let c1 = ESet::from_elems(&[0, 1]);
        let c2 = ESet::from_elems(&[3, 4]);
        let bases: Vec<ESet> =
            g.full().subsets_of_size(2).into_iter().filter(|&b| b != c1 && b != c2).collect();
        ranked_symp(g, Matroid::from_bases(6, &bases).unwrap()).unwrap()
    }

    #[test]
    fn frozen_sequences() {
        let u = uniform_symp(3, 3);
        assert_eq!((0..=3).map(|k| count_s(&u, k)).collect::<Vec<_>>(), vec![1, 6, 12, 8]);
        assert_eq!((0..=3).map(|k| count_i(&u, k)).collect::<Vec<_>>(), vec![1, 6, 15, 20]);
        assert_eq!((0..3).map(|k| count_j(&u, k)).collect::<Vec<_>>(), vec![1, 6, 12]);
        let t = s1();
        assert_eq!((0..=2).map(|k| count_s(&t, k)).collect::<Vec<_>>(), vec![1, 4, 3]);
        assert_eq!((0..=2).map(|k| count_i(&t, k)).collect::<Vec<_>>(), vec![1, 4, 5]);
        assert_eq!((0..2).map(|k| count_j(&t, k)).collect::<Vec<_>>(), vec![1, 4]);
    }

    #[test]
    fn subtraction_identity() {
        for s in [uniform_symp(2, 2), uniform_symp(3, 3), uniform_symp(2, 3), s1(), exc(), e2()] {
            assert_eq!(counting_identity_check(&s), Ok(()));
        }
        // the U*_{2,2} anchor: 4 = 6 - 4/2
        let u = uniform_symp(2, 2);
        assert_eq!(count_s(&u, 2), 4);
        assert_eq!(count_i(&u, 2), 6);
        assert_eq!(count_j(&u, 1), 4);
    }

    #[test]
    fn class_sizes() {
        for s in [uniform_symp(2, 2), uniform_symp(3, 3), uniform_symp(2, 3), s1(), exc(), e2()] {
            assert_eq!(class_size_check(&s), Ok(()));
        }
        assert_eq!(class_size_check(&uniform_symp(4, 4)), Ok(()));
    }

    #[test]
    fn concavity_variants() {
        assert_eq!(log_concavity_report(&[1, 6, 15, 20], 3, 6), vec![true, true]);
        // variant 3 is an exact equality for the uniform middle entry
        let i2 = rat(15 * 15);
        let factor = (rat(1) + rat_frac(1, 2)) * (rat(1) + rat_frac(1, 4));
        assert_eq!(i2, factor * rat(6 * 20));
        assert_eq!(log_concavity_report(&[1, 6, 12, 8], 1, 6), vec![true, true]);
        assert_eq!(log_concavity_report(&[1, 1, 1], 1, 4), vec![true]);
    }

    #[test]
    fn rank3_theorem() {
        assert_eq!(rank3_check(&uniform_symp(3, 3)), Ok(()));
        let r = count_report(&uniform_symp(3, 3));
        assert_eq!(r.rank3_ok, Some(true));
        assert!(r.identity_ok && r.class_sizes_ok);
        assert!(r.i_variant3.iter().all(|&b| b));
        assert!(r.s_variant1.iter().all(|&b| b));
    }

    #[test]
    fn reports_for_small_instances() {
        for s in [uniform_symp(2, 2), s1(), exc(), e2(), uniform_symp(2, 3)] {
            let r = count_report(&s);
            assert!(r.identity_ok, "identity");
            assert!(r.class_sizes_ok, "classes");
            assert!(r.i_variant1.iter().all(|&b| b), "variant 1 on envelope counts");
            assert!(r.i_variant3.iter().all(|&b| b), "variant 3 on envelope counts");
            assert_eq!(r.rank3_ok, None);
        }
    }
}
