//! Admissible envelopes and the ranked symplectic matroids they carry.
//!
//! A ranked symplectic matroid is given here by an ordinary matroid on the
//! signed ground set, its envelope, whose rank function is forced by its
//! admissible independent sets.  The admissible bases of the envelope form
//! the symplectic matroid; flats, minors, and the basis pairing between the
//! two contractions of a pair all live on the envelope side.

use crate::ground::{ESet, GroundSet};
use crate::lattice::SetLattice;
use crate::matroid::{Matroid, MatroidError};
use crate::order::{enumerate_c_orders, AdmOrder};
use itertools::Itertools;
use std::fmt;
use thiserror::Error;

/// Why a matroid fails the admissibility test, with the first witness found
/// in a deterministic scan order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AdmissibilityFailure {
    /// The matroid has loops.
    Looped(ESet),
    /// The rank of `subset` disagrees with the value forced by the
    /// admissible independent sets.
    RankFormula { subset: ESet, matroid_rank: usize, formula_rank: usize },
    /// A rank-1 flat that is not admissible.
    InadmissibleAtom(ESet),
    /// Below top rank, the recursive and the closure descriptions of strong
    /// admissibility disagree; `recursive_only` tells which side holds the
    /// witness.
    StronglyAdmissibleMismatch { size: usize, witness: ESet, recursive_only: bool },
}

impl fmt::Display for AdmissibilityFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AdmissibilityFailure::Looped(l) => write!(f, "loops at {l:?}"),
            AdmissibilityFailure::RankFormula { subset, matroid_rank, formula_rank } => write!(
                f,
                "subset {subset:?} has rank {matroid_rank} but the formula gives {formula_rank}"
            ),
            AdmissibilityFailure::InadmissibleAtom(a) => {
                write!(f, "rank-1 flat {a:?} is not admissible")
            }
            AdmissibilityFailure::StronglyAdmissibleMismatch { size, witness, recursive_only } => {
                write!(
                    f,
                    "size-{size} strongly admissible sets differ at {witness:?} ({} side only)",
                    if *recursive_only { "recursive" } else { "closure" }
                )
            }
        }
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum SympError {
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error("envelope is not admissible: {0}")]
    NotAdmissible(AdmissibilityFailure),
    #[error("envelope has no admissible basis")]
    NoAdmissibleBasis,
    #[error("degenerate minor: {0}")]
    DegenerateMinor(String),
}

/// Membership table over masks: independent sets whose closure is admissible.
fn adm_closure_table(g: GroundSet, m: &Matroid) -> Vec<bool> {
    let mut t = vec![false; 1 << g.size()];
    for s in g.full().subsets() {
        if m.is_independent(s) && g.is_admissible(m.closure(s)) {
            t[s.0 as usize] = true;
        }
    }
    t
}

fn admissible_independents(g: GroundSet, m: &Matroid) -> Vec<ESet> {
    g.full().subsets().filter(|&s| g.is_admissible(s) && m.is_independent(s)).collect()
}

fn formula_value(g: GroundSet, adm_indep: &[ESet], adm_cl: &[bool], a: ESet) -> usize {
    let mut best = 0;
    for &i in adm_indep {
        if !i.is_subset(a) {
            continue;
        }
        let mut v = i.len();
        for p in 0..g.n {
            if a.contains(p)
                && a.contains(p + g.n)
                && adm_cl[i.insert(p).0 as usize]
                && adm_cl[i.insert(p + g.n).0 as usize]
            {
                v = i.len() + 2;
                break;
            }
        }
        best = best.max(v);
    }
    best
}

/// The rank a subset must have when the matroid is admissible: the largest
/// admissible independent subset, plus two when some pair `{a, a*} ⊆ A`
/// extends it to independent sets with admissible closure on both sides.
pub fn rank_formula(g: GroundSet, m: &Matroid, a: ESet) -> usize {
    formula_value(g, &admissible_independents(g, m), &adm_closure_table(g, m), a)
}

/// Size-`k` independent sets whose closure is admissible, sorted.
pub fn strongly_admissible_sets(g: GroundSet, m: &Matroid, k: usize) -> Vec<ESet> {
    let mut out: Vec<ESet> = m
        .independent_sets_of_size(k)
        .into_iter()
        .filter(|&s| g.is_admissible(m.closure(s)))
        .collect();
    out.sort();
    out
}

/// Levels of the recursive construction: level `k` holds the size-`k` sets
/// reachable from the empty set by adding elements whose pair misses the
/// closure so far.  Such sets are automatically independent.
pub fn recursive_strongly_admissible(g: GroundSet, m: &Matroid) -> Vec<Vec<ESet>> {
    let mut levels = vec![vec![ESet::EMPTY]];
    for k in 0..m.rank {
        let mut next = std::collections::BTreeSet::new();
        for &b in &levels[k] {
            let cl = m.closure(b);
            for e in 0..g.size() {
                if !cl.contains(e) && !cl.contains(g.star(e)) {
                    next.insert(b.insert(e));
                }
            }
        }
        levels.push(next.into_iter().collect());
    }
    levels
}

/// The four-clause admissibility test, reporting the first failure: loops,
/// then the rank formula over subsets in ascending mask order, then rank-1
/// flats, then the strong-admissibility comparison level by level below the
/// top rank (at top rank the two descriptions genuinely diverge).
pub fn is_admissible_matroid(g: GroundSet, m: &Matroid) -> Result<(), AdmissibilityFailure> {
    assert_eq!(m.groundsize, g.size(), "matroid must live on the signed ground set");
    if !m.is_loopless() {
        return Err(AdmissibilityFailure::Looped(m.loops()));
    }
    let adm_indep = admissible_independents(g, m);
    let adm_cl = adm_closure_table(g, m);
    for mask in 0..1u32 << g.size() {
        let a = ESet(mask);
        let fr = formula_value(g, &adm_indep, &adm_cl, a);
        let mr = m.rank_of(a);
        if fr != mr {
            return Err(AdmissibilityFailure::RankFormula {
                subset: a,
                matroid_rank: mr,
                formula_rank: fr,
            });
        }
    }
    for f in m.flats_of_rank(1) {
        if !g.is_admissible(f) {
            return Err(AdmissibilityFailure::InadmissibleAtom(f));
        }
    }
    let rec = recursive_strongly_admissible(g, m);
    for k in 0..m.rank {
        let cls = strongly_admissible_sets(g, m, k);
        if rec[k] != cls {
            let witness = *rec[k]
                .iter()
                .filter(|s| !cls.contains(s))
                .chain(cls.iter().filter(|s| !rec[k].contains(s)))
                .min()
                .unwrap();
            return Err(AdmissibilityFailure::StronglyAdmissibleMismatch {
                size: k,
                witness,
                recursive_only: rec[k].contains(&witness),
            });
        }
    }
    Ok(())
}

/// A ranked symplectic matroid, carried by its admissible envelope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SympMatroid {
    pub g: GroundSet,
    pub env: Matroid,
    /// Admissible bases of the envelope, sorted.
    pub bases: Vec<ESet>,
}

impl SympMatroid {
    pub fn rank(&self) -> usize {
        self.env.rank
    }

    /// Subset rank, inherited from the envelope.
    pub fn rank_of(&self, a: ESet) -> usize {
        self.env.rank_of(a)
    }
}

/// Checks that `env` is admissible and wraps its admissible bases.
pub fn ranked_symp(g: GroundSet, env: Matroid) -> Result<SympMatroid, SympError> {
    is_admissible_matroid(g, &env).map_err(SympError::NotAdmissible)?;
    let bases: Vec<ESet> = env.bases.iter().copied().filter(|&b| g.is_admissible(b)).collect();
    if bases.is_empty() {
        return Err(SympError::NoAdmissibleBasis);
    }
    Ok(SympMatroid { g, env, bases })
}

/// `U*_{k,n}`: every admissible `k`-set is a basis.  The envelope consists of
/// the `k`-subsets of `J` containing at most one pair; up to `k = 3` that is
/// just the uniform matroid `U_{k,2n}`.
pub fn uniform_symp(k: usize, n: usize) -> SympMatroid {
    assert!((k == 0 && n == 0) || (2 <= k && k <= n), "rank must be 0 on n = 0, or between 2 and n");
    let g = GroundSet::new(n);
    let bases: Vec<ESet> = g
        .full()
        .subsets_of_size(k)
        .into_iter()
        .filter(|&s| (0..n).filter(|&p| s.contains(p) && s.contains(p + n)).count() <= 1)
        .collect();
    let env = Matroid::from_bases(g.size(), &bases).unwrap();
    ranked_symp(g, env).unwrap()
}

/// The lattice of admissible flats of the envelope together with `J`.
pub fn flats_lattice(g: GroundSet, env: &Matroid) -> SetLattice {
    let mut sets: Vec<ESet> =
        env.flats().into_iter().filter(|&f| g.is_admissible(f)).collect();
    if !sets.contains(&g.full()) {
        sets.push(g.full());
    }
    SetLattice::new(&sets, |s| env.rank_of(s))
}

/// Verifies the lattice axioms for a family of subsets of `J`: it contains
/// the empty set and `J`, every proper member is admissible, it is closed
/// under intersection, and the covers of each member pairwise intersect back
/// to it while jointly covering `J \ A*`.
pub fn check_cn_lattice(g: GroundSet, lat: &SetLattice) -> Result<(), String> {
    if lat.sets[lat.bottom] != ESet::EMPTY {
        return Err("bottom member is not the empty set".into());
    }
    if lat.sets[lat.top] != g.full() {
        return Err("top member is not the whole ground set".into());
    }
    for (i, &s) in lat.sets.iter().enumerate() {
        if !s.is_subset(g.full()) {
            return Err(format!("member {s:?} is not a subset of the ground set"));
        }
        if i != lat.top && !g.is_admissible(s) {
            return Err(format!("proper member {} is not admissible", g.set_name(s)));
        }
    }
    for i in 0..lat.len() {
        for j in i + 1..lat.len() {
            let t = lat.sets[i].intersect(lat.sets[j]);
            if lat.index_of(t).is_none() {
                return Err(format!(
                    "intersection {} of {} and {} is missing",
                    g.set_name(t),
                    g.set_name(lat.sets[i]),
                    g.set_name(lat.sets[j])
                ));
            }
        }
    }
    for i in 0..lat.len() {
        let covers = lat.covers_of(i);
        for (x, &ci) in covers.iter().enumerate() {
            for &cj in &covers[x + 1..] {
                if lat.sets[ci].intersect(lat.sets[cj]) != lat.sets[i] {
                    return Err(format!(
                        "covers {} and {} of {} do not intersect back to it",
                        g.set_name(lat.sets[ci]),
                        g.set_name(lat.sets[cj]),
                        g.set_name(lat.sets[i])
                    ));
                }
            }
        }
        let union = covers.iter().fold(ESet::EMPTY, |u, &c| u.union(lat.sets[c]));
        let need = g.full().diff(g.star_set(lat.sets[i]));
        if !need.is_subset(union) {
            return Err(format!(
                "covers of {} only reach {}, short of {}",
                g.set_name(lat.sets[i]),
                g.set_name(union),
                g.set_name(need)
            ));
        }
    }
    Ok(())
}

/// A family of equal-size admissible sets is a symplectic matroid when every
/// type C admissible order has a Gale-greatest member.  Returns the first
/// order without one.
pub fn is_symplectic(g: GroundSet, family: &[ESet]) -> Result<(), AdmOrder> {
    debug_assert!(family.iter().all(|&b| g.is_admissible(b)));
    for ord in enumerate_c_orders(g) {
        if ord.gale_dominant(family).is_none() {
            return Err(ord);
        }
    }
    Ok(())
}

fn order_desc(ord: &AdmOrder) -> String {
    ord.descending().iter().map(|&e| ord.g.elem_name(e)).join(" > ")
}

/// For every type C order, the greedy basis of the envelope must be
/// admissible and must equal the Gale-greatest admissible basis.
pub fn maximal_basis_admissible_check(s: &SympMatroid) -> Result<(), String> {
    for ord in enumerate_c_orders(s.g) {
        let b = s.env.greedy_basis(&ord);
        if !s.g.is_admissible(b) {
            return Err(format!(
                "greedy basis {} under {} is not admissible",
                s.g.set_name(b),
                order_desc(&ord)
            ));
        }
        if ord.gale_dominant(&s.bases) != Some(b) {
            return Err(format!(
                "greedy basis {} under {} is not the Gale-greatest admissible basis",
                s.g.set_name(b),
                order_desc(&ord)
            ));
        }
    }
    Ok(())
}

/// Deletes a star-closed subset from the envelope's ground set, reindexing
/// the surviving pairs.  Returns the smaller ground set, the minor, and the
/// surviving old indices in new-index order.
pub fn delete_env(g: GroundSet, env: &Matroid, gone: ESet) -> (GroundSet, Matroid, Vec<usize>) {
    assert_eq!(gone, g.star_set(gone), "deleted set must be star-closed");
    let (m2, keep) = env.delete(gone);
    (GroundSet::new(g.n - gone.len() / 2), m2, keep)
}

/// Contracts the pair class of `e`: the whole closure `cl({e, e*})` leaves
/// the ground set and independence is measured relative to `e` alone, so
/// `A` is independent in the minor iff `rank(A ∪ {e}) = |A| + 1`.
pub fn contract_class_env(
    g: GroundSet,
    env: &Matroid,
    e: usize,
) -> Result<(GroundSet, Matroid, Vec<usize>), SympError> {
    assert!(e < g.size());
    assert!(!env.loops().contains(e), "cannot contract a loop");
    let f = env.closure(ESet::from_elems(&[e, g.star(e)]));
    if f != g.star_set(f) {
        return Err(SympError::DegenerateMinor(format!(
            "closure {} of the pair of {} is not star-closed",
            g.set_name(f),
            g.elem_name(e)
        )));
    }
    let keep_mask = g.full().diff(f);
    let keep = keep_mask.elems();
    let rp = env.rank_of(keep_mask.insert(e)) - 1;
    let bases: Vec<ESet> = keep_mask
        .subsets_of_size(rp)
        .into_iter()
        .filter(|&a| env.rank_of(a.insert(e)) == rp + 1)
        .map(|a| reindex(a, &keep))
        .collect();
    let m2 = Matroid::from_bases(keep.len(), &bases)?;
    Ok((GroundSet::new(g.n - f.len() / 2), m2, keep))
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

fn as_degenerate(op: String, err: SympError) -> SympError {
    match err {
        SympError::NotAdmissible(f) => {
            SympError::DegenerateMinor(format!("{op} leaves a non-admissible envelope: {f}"))
        }
        SympError::NoAdmissibleBasis => {
            SympError::DegenerateMinor(format!("{op} leaves no admissible basis"))
        }
        e => e,
    }
}

/// `S \ a`: delete the pair `{a, a*}` from the envelope and rerun the whole
/// admissibility pipeline on the minor.
pub fn delete_pair(s: &SympMatroid, pair: usize) -> Result<SympMatroid, SympError> {
    assert!(pair < s.g.n);
    let gone = ESet::from_elems(&[pair, s.g.star(pair)]);
    let (g2, m2, _) = delete_env(s.g, &s.env, gone);
    ranked_symp(g2, m2)
        .map_err(|e| as_degenerate(format!("deleting the pair of {}", s.g.elem_name(pair)), e))
}

/// `S / a`: contract the pair class of `a` in the envelope and rerun the
/// admissibility pipeline on the minor.
pub fn contract_elem(s: &SympMatroid, e: usize) -> Result<SympMatroid, SympError> {
    let (g2, m2, _) = contract_class_env(s.g, &s.env, e)?;
    ranked_symp(g2, m2)
        .map_err(|err| as_degenerate(format!("contracting {}", s.g.elem_name(e)), err))
}

/// Every flat of an admissible envelope is admissible or totally inadmissible.
pub fn flat_dichotomy_check(g: GroundSet, env: &Matroid) -> Result<(), String> {
    for f in env.flats() {
        if !g.is_admissible(f) && !g.is_totally_inadmissible(f) {
            return Err(format!("flat {} is neither admissible nor totally inadmissible", g.set_name(f)));
        }
    }
    Ok(())
}

/// Deleting any inadmissible flat from an admissible envelope leaves an
/// admissible envelope.
pub fn inadmissible_flat_deletion_check(g: GroundSet, env: &Matroid) -> Result<(), String> {
    for f in env.flats() {
        if g.is_admissible(f) || f == g.full() {
            continue;
        }
        let (g2, m2, _) = delete_env(g, env, f);
        if let Err(e) = is_admissible_matroid(g2, &m2) {
            return Err(format!("deleting flat {} breaks admissibility: {e}", g.set_name(f)));
        }
    }
    Ok(())
}

/// The matroid whose bases are the strongly admissible sets one below the
/// envelope rank.  Its nonempty flats are exactly the inadmissible flats.
pub fn inadmissible_flat_matroid(g: GroundSet, env: &Matroid) -> Result<Matroid, MatroidError> {
    assert!(env.rank >= 1);
    Matroid::from_bases(g.size(), &strongly_admissible_sets(g, env, env.rank - 1))
}

/// Cross-checks the carrier matroid of the inadmissible flats: its
/// independent sets must be the strongly admissible sets, its nonempty flats
/// the inadmissible flats of the envelope, and its flat lattice geometric.
pub fn inadmissible_flat_check(g: GroundSet, env: &Matroid) -> Result<(), String> {
    if env.rank == 0 {
        return Ok(());
    }
    let m = inadmissible_flat_matroid(g, env)
        .map_err(|e| format!("strongly admissible sets are not a basis family: {e}"))?;
    for k in 0..env.rank {
        let mut indep = m.independent_sets_of_size(k);
        indep.sort();
        if indep != strongly_admissible_sets(g, env, k) {
            return Err(format!("size-{k} independent sets are not the strongly admissible sets"));
        }
    }
    if !m.is_loopless() {
        return Err("carrier matroid has loops".into());
    }
    let nonempty: Vec<ESet> = m.flats().into_iter().filter(|f| !f.is_empty()).collect();
    let inadm: Vec<ESet> =
        env.flats().into_iter().filter(|&f| !g.is_admissible(f)).collect();
    if nonempty != inadm {
        return Err("nonempty flats differ from the inadmissible flats of the envelope".into());
    }
    let lat = SetLattice::new(&m.flats(), |s| m.rank_of(s));
    if !lat.is_graded() || !lat.is_atomistic() || !lat.is_semimodular() {
        return Err("flat lattice of the carrier matroid is not geometric".into());
    }
    Ok(())
}

/// Admissible bases of the contraction by `e`, kept in the original indexing
/// as subsets of `J \ cl({e, e*})`.
fn contraction_bases_in_place(
    g: GroundSet,
    env: &Matroid,
    e: usize,
) -> Result<(ESet, Vec<ESet>), String> {
    let f = env.closure(ESet::from_elems(&[e, g.star(e)]));
    if f != g.star_set(f) {
        return Err(format!("closure of the pair of {} is not star-closed", g.elem_name(e)));
    }
    let keep = g.full().diff(f);
    let rp = env.rank_of(keep.insert(e)) - 1;
    let bases = keep
        .subsets_of_size(rp)
        .into_iter()
        .filter(|&a| g.is_admissible(a) && env.rank_of(a.insert(e)) == rp + 1)
        .collect();
    Ok((keep, bases))
}

/// The basis pairing between the contractions by `a` and by `a*`: identity on
/// bases whose envelope closure is admissible, otherwise swap the unique
/// element whose removal leaves an admissible closure.  Fails when the
/// decomposition is not unique or the pairing is not a bijection.
pub fn psi_bijection(s: &SympMatroid, a: usize) -> Result<Vec<(ESet, ESet)>, String> {
    let g = s.g;
    let (_, t_a) = contraction_bases_in_place(g, &s.env, a)?;
    let (_, t_b) = contraction_bases_in_place(g, &s.env, g.star(a))?;
    let mut pairs = Vec::new();
    for &b in &t_a {
        let img = if g.is_admissible(s.env.closure(b)) {
            b
        } else {
            let cands: Vec<usize> =
                b.iter().filter(|&x| g.is_admissible(s.env.closure(b.remove(x)))).collect();
            if cands.len() != 1 {
                return Err(format!(
                    "basis {} of the contraction by {} has {} decompositions, expected one",
                    g.set_name(b),
                    g.elem_name(a),
                    cands.len()
                ));
            }
            b.remove(cands[0]).insert(g.star(cands[0]))
        };
        pairs.push((b, img));
    }
    let mut images: Vec<ESet> = pairs.iter().map(|p| p.1).collect();
    images.sort();
    images.dedup();
    let mut want = t_b;
    want.sort();
    if images != want {
        return Err(format!(
            "pairing by {} is not a bijection onto the bases of the contraction by {}",
            g.elem_name(a),
            g.elem_name(g.star(a))
        ));
    }
    Ok(pairs)
}

/// For every inadmissible flat `F'` other than `J` and every admissible flat
/// `F` it covers: `F'` is the disjoint union of `F` and `F*`, and for each
/// `a ∈ F` sending a flat to its unique inadmissible cover is an order
/// isomorphism from `[cl{a}, F]` onto `[cl{a,a*}, F']`.
pub fn covered_flats_check(g: GroundSet, env: &Matroid) -> Result<(), String> {
    let all = SetLattice::new(&env.flats(), |s| env.rank_of(s));
    let covers: Vec<Vec<usize>> = (0..all.len()).map(|i| all.covers_of(i)).collect();
    for fi in 0..all.len() {
        let fp = all.sets[fi];
        if g.is_admissible(fp) || fp == g.full() {
            continue;
        }
        for gi in 0..all.len() {
            if !covers[gi].contains(&fi) || !g.is_admissible(all.sets[gi]) {
                continue;
            }
            let f = all.sets[gi];
            if f.union(g.star_set(f)) != fp {
                return Err(format!(
                    "{} covers {} but is not its union with stars",
                    g.set_name(fp),
                    g.set_name(f)
                ));
            }
            for a in f.iter() {
                let bot1 = env.closure(ESet::singleton(a));
                let bot2 = env.closure(ESet::from_elems(&[a, g.star(a)]));
                let i1: Vec<usize> = (0..all.len())
                    .filter(|&i| bot1.is_subset(all.sets[i]) && all.sets[i].is_subset(f))
                    .collect();
                let i2: Vec<usize> = (0..all.len())
                    .filter(|&i| bot2.is_subset(all.sets[i]) && all.sets[i].is_subset(fp))
                    .collect();
                let mut phi = Vec::new();
                for &gidx in &i1 {
                    let up: Vec<usize> = covers[gidx]
                        .iter()
                        .copied()
                        .filter(|&h| !g.is_admissible(all.sets[h]))
                        .collect();
                    if up.len() != 1 {
                        return Err(format!(
                            "flat {} has {} inadmissible covers, expected one",
                            g.set_name(all.sets[gidx]),
                            up.len()
                        ));
                    }
                    if !i2.contains(&up[0]) {
                        return Err(format!(
                            "inadmissible cover of {} leaves the target interval",
                            g.set_name(all.sets[gidx])
                        ));
                    }
                    phi.push((gidx, up[0]));
                }
                let mut images: Vec<usize> = phi.iter().map(|p| p.1).collect();
                images.sort();
                images.dedup();
                if images != i2 {
                    return Err(format!(
                        "cover map on [{}, {}] is not onto [{}, {}]",
                        g.set_name(bot1),
                        g.set_name(f),
                        g.set_name(bot2),
                        g.set_name(fp)
                    ));
                }
                for &(g1, h1) in &phi {
                    for &(g2, h2) in &phi {
                        if all.le(g1, g2) != all.le(h1, h2) {
                            return Err(format!(
                                "cover map on [{}, {}] does not preserve order both ways",
                                g.set_name(bot1),
                                g.set_name(f)
                            ));
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// The envelope of a ranked symplectic matroid is connected unless its rank
/// is 2.
pub fn connectivity_check(s: &SympMatroid) -> Result<(), String> {
    if s.env.is_connected() || s.env.rank == 2 {
        Ok(())
    } else {
        Err(format!(
            "rank-{} envelope splits into {} components",
            s.env.rank,
            s.env.components().len()
        ))
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum EnvelopeError {
    #[error("input family is invalid: {0}")]
    BadInput(String),
    #[error("no admissible envelope exists for this family")]
    NotFound,
    #[error("smallest admissible envelope is not unique: {0:?} and {1:?}")]
    MultipleMinima(Vec<ESet>, Vec<ESet>),
    #[error("{0} inadmissible candidate sets is too many for exhaustive search")]
    TooLarge(usize),
}

/// Finds the admissible envelope with the fewest bases whose admissible
/// bases are exactly `family`, trying every way of adding inadmissible sets
/// of the same size, smallest extensions first.
pub fn minimal_enveloping(g: GroundSet, family: &[ESet]) -> Result<Matroid, EnvelopeError> {
    let mut fam = family.to_vec();
    fam.sort();
    fam.dedup();
    if fam.is_empty() {
        return Err(EnvelopeError::BadInput("family is empty".into()));
    }
    let k = fam[0].len();
    for &b in &fam {
        if !b.is_subset(g.full()) {
            return Err(EnvelopeError::BadInput(format!("{b:?} is outside the ground set")));
        }
        if b.len() != k {
            return Err(EnvelopeError::BadInput("members have different sizes".into()));
        }
        if !g.is_admissible(b) {
            return Err(EnvelopeError::BadInput(format!("{} is not admissible", g.set_name(b))));
        }
    }
    let cands: Vec<ESet> =
        g.full().subsets_of_size(k).into_iter().filter(|&s| !g.is_admissible(s)).collect();
    if cands.len() > 13 {
        return Err(EnvelopeError::TooLarge(cands.len()));
    }
    for extra in 0..=cands.len() {
        let mut winners: Vec<Matroid> = Vec::new();
        for pick in (0..cands.len()).combinations(extra) {
            let mut bases = fam.clone();
            bases.extend(pick.into_iter().map(|i| cands[i]));
            let Ok(m) = Matroid::from_bases(g.size(), &bases) else { continue };
            if is_admissible_matroid(g, &m).is_ok() {
                winners.push(m);
            }
        }
        match winners.len() {
            0 => {}
            1 => return Ok(winners.pop().unwrap()),
            _ => {
                return Err(EnvelopeError::MultipleMinima(
                    winners[0].bases.clone(),
                    winners[1].bases.clone(),
                ))
            }
        }
    }
    Err(EnvelopeError::NotFound)
}
