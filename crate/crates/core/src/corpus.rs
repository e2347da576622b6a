//! A deterministic catalog of small ranked symplectic matroids: uniform
//! families, hand-built envelopes, surviving minors of catalog members,
//! and seeded random search hits.  Every entry passes the whole axiom
//! battery, so downstream theorem checks can run over the catalog blind.

use crate::ground::{ESet, GroundSet};
use crate::matroid::Matroid;
use crate::symp::{
    check_cn_lattice, contract_elem, delete_pair, flats_lattice, is_admissible_matroid,
    is_symplectic, maximal_basis_admissible_check, ranked_symp, uniform_symp, SympMatroid,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

pub struct CorpusEntry {
    pub label: String,
    pub symp: SympMatroid,
}

/// Rank-2 envelope on two pairs: all 2-sets except {1,2}.
pub fn s1_env() -> (GroundSet, Matroid) {
    let g = GroundSet::new(2);
    let missing = ESet::from_elems(&[0, 1]);
    let bases: Vec<ESet> = g.full().subsets_of_size(2).into_iter().filter(|&b| b != missing).collect();
    (g, Matroid::from_bases(4, &bases).unwrap())
}

/// Envelope of the two-basis segment family {{1,2},{1*,2*}}.
pub fn exc_env() -> (GroundSet, Matroid) {
    let g = GroundSet::new(2);
    let sets: Vec<ESet> =
        [[0usize, 1], [2, 3], [0, 2], [1, 3]].iter().map(|b| ESet::from_elems(b)).collect();
    (g, Matroid::from_bases(4, &sets).unwrap())
}

/// Rank-2 envelope on three pairs: all 2-sets except {1,2} and {1*,2*}.
pub fn e2_env() -> (GroundSet, Matroid) {
    let g = GroundSet::new(3);
    let c1 = ESet::from_elems(&[0, 1]);
    let c2 = ESet::from_elems(&[3, 4]);
    let bases: Vec<ESet> =
        g.full().subsets_of_size(2).into_iter().filter(|&b| b != c1 && b != c2).collect();
    (g, Matroid::from_bases(6, &bases).unwrap())
}

/// Rank-k truncation of the partition matroid with the given classes:
/// bases are the k-sets meeting every class at most once.  The classes
/// must partition the ground set.
pub fn truncated_partition_env(g: GroundSet, classes: &[ESet], k: usize) -> Option<Matroid> {
    let mut seen = ESet::EMPTY;
    for &c in classes {
        if !seen.is_disjoint(c) {
            return None;
        }
        seen = seen.union(c);
    }
    if seen != g.full() {
        return None;
    }
    let bases: Vec<ESet> = g
        .full()
        .subsets_of_size(k)
        .into_iter()
        .filter(|&b| classes.iter().all(|&c| b.intersect(c).len() <= 1))
        .collect();
    if bases.is_empty() {
        return None;
    }
    Matroid::from_bases(g.size(), &bases).ok()
}

/// Basis family of the direct sum of two families on disjoint pair sets:
/// unions of one member from each, reindexed so the first family keeps
/// pairs 1..n1 and the second becomes pairs n1+1..n1+n2.
pub fn direct_sum_family(
    g1: GroundSet,
    f1: &[ESet],
    g2: GroundSet,
    f2: &[ESet],
) -> (GroundSet, Vec<ESet>) {
    let (n1, n2) = (g1.n, g2.n);
    let g = GroundSet::new(n1 + n2);
    let map1 = |e: usize| if e < n1 { e } else { n1 + n2 + (e - n1) };
    let map2 = |e: usize| if e < n2 { n1 + e } else { n1 + n2 + n1 + (e - n2) };
    let mut out = Vec::new();
    for &a in f1 {
        for &b in f2 {
            let mut s = ESet::EMPTY;
            for e in a.iter() {
                s = s.insert(map1(e));
            }
            for e in b.iter() {
                s = s.insert(map2(e));
            }
            out.push(s);
        }
    }
    (g, out)
}

/// Runs every axiom check in sequence and hands back the ranked matroid:
/// admissibility of the envelope, the lattice shape of its flats, the
/// Gale-order criterion on the admissible bases, and admissibility of the
/// Gale-maximal basis under every order.
pub fn full_axiom_battery(g: GroundSet, env: Matroid) -> Result<SympMatroid, String> {
    is_admissible_matroid(g, &env).map_err(|e| format!("envelope: {e}"))?;
    let lat = flats_lattice(g, &env);
    check_cn_lattice(g, &lat).map_err(|e| format!("lattice: {e}"))?;
    let s = ranked_symp(g, env).map_err(|e| format!("bases: {e}"))?;
    is_symplectic(g, &s.bases).map_err(|ord| {
        let names: Vec<String> = ord.descending().iter().map(|&e| g.elem_name(e)).collect();
        format!("not symplectic under {}", names.join(" > "))
    })?;
    maximal_basis_admissible_check(&s).map_err(|e| format!("maximal basis: {e}"))?;
    Ok(s)
}

fn basis_signature(s: &SympMatroid) -> (usize, Vec<u32>) {
    let mut b: Vec<u32> = s.env.bases.iter().map(|x| x.0).collect();
    b.sort_unstable();
    (s.g.n, b)
}

/// Random signed partitions of the pairs, truncated at a random rank.
fn random_partition_env(g: GroundSet, rng: &mut ChaCha8Rng) -> Option<Matroid> {
    let n = g.n;
    // group indices, then give every element a side; a class and its
    // mirror partition the 2n elements
    let mut group_of = vec![0usize; n];
    let groups = rng.gen_range(1..=n);
    for go in group_of.iter_mut() {
        *go = rng.gen_range(0..groups);
    }
    let mut classes: Vec<ESet> = Vec::new();
    for grp in 0..groups {
        let mut c = ESet::EMPTY;
        for i in 0..n {
            if group_of[i] == grp {
                c = c.insert(if rng.gen_bool(0.5) { i } else { i + n });
            }
        }
        if !c.is_empty() {
            classes.push(c);
            classes.push(g.star_set(c));
        }
    }
    let k = rng.gen_range(2..=n.max(2));
    truncated_partition_env(g, &classes, k)
}

/// A uniform envelope with a few random bases removed.
fn random_punctured_uniform(g: GroundSet, rng: &mut ChaCha8Rng) -> Option<Matroid> {
    let k = rng.gen_range(2..=g.n);
    let all = g.full().subsets_of_size(k);
    let removals = rng.gen_range(1..=2usize);
    let mut keep = all.clone();
    for _ in 0..removals {
        let idx = rng.gen_range(0..keep.len());
        keep.remove(idx);
    }
    Matroid::from_bases(g.size(), &keep).ok()
}

/// Deterministic catalog for pair counts 2..=max_n.
pub fn generate_corpus(max_n: usize, seed: u64) -> Vec<CorpusEntry> {
    assert!((2..=4).contains(&max_n), "catalog covers 2 to 4 pairs");
    let mut out: Vec<CorpusEntry> = Vec::new();
    let mut seen: BTreeSet<(usize, Vec<u32>)> = BTreeSet::new();
    let push = |out: &mut Vec<CorpusEntry>, seen: &mut BTreeSet<(usize, Vec<u32>)>, label: String, s: SympMatroid| {
        if seen.insert(basis_signature(&s)) {
            out.push(CorpusEntry { label, symp: s });
        }
    };
    for n in 2..=max_n {
        for k in 2..=n {
            let s = uniform_symp(k, n);
            push(&mut out, &mut seen, format!("uniform {}-{}", k, n), s);
        }
    }
    let (g, m) = s1_env();
    push(&mut out, &mut seen, "deleted uniform 2-2".into(), full_axiom_battery(g, m).unwrap());
    let (g, m) = exc_env();
    push(&mut out, &mut seen, "segment pair".into(), full_axiom_battery(g, m).unwrap());
    if max_n >= 3 {
        let (g, m) = e2_env();
        push(&mut out, &mut seen, "double deletion 2-3".into(), full_axiom_battery(g, m).unwrap());
    }
    // surviving minors of everything so far
    let mut minors: Vec<(String, SympMatroid)> = Vec::new();
    for entry in &out {
        let s = &entry.symp;
        for pair in 0..s.g.n {
            if let Ok(d) = delete_pair(s, pair) {
                if d.g.n >= 2 && d.rank() >= 2 {
                    minors.push((format!("{} minus pair {}", entry.label, pair + 1), d));
                }
            }
        }
        for e in 0..s.g.size() {
            if let Ok(c) = contract_elem(s, e) {
                if c.g.n >= 2 && c.rank() >= 2 {
                    minors.push((format!("{} over {}", entry.label, s.g.elem_name(e)), c));
                }
            }
        }
    }
    for (label, m) in minors {
        if full_axiom_battery(m.g, m.env.clone()).is_ok() {
            push(&mut out, &mut seen, label, m);
        }
    }
    // seeded search: random partition truncations and punctured uniforms
    for n in 2..=max_n {
        let g = GroundSet::new(n);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (n as u64) << 8);
        let mut hits = 0;
        for t in 0..80 {
            if hits >= 4 {
                break;
            }
            let candidate = if t % 2 == 0 {
                random_partition_env(g, &mut rng)
            } else {
                random_punctured_uniform(g, &mut rng)
            };
            let Some(m) = candidate else { continue };
            if let Ok(s) = full_axiom_battery(g, m) {
                let fresh = !seen.contains(&basis_signature(&s));
                push(&mut out, &mut seen, format!("search {}-{}", n, t), s);
                if fresh {
                    hits += 1;
                }
            }
        }
    }
    out
}
