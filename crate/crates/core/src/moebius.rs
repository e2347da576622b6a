//! Mobius functions of the two flat lattices attached to an envelope: the
//! ordinary lattice of all flats and the lattice of admissible flats with
//! the full ground set on top.
//!
//! Everything here takes the envelope rather than a basis family, so objects
//! without admissible bases still have their lattice invariants.

use crate::ground::{ESet, GroundSet};
use crate::lattice::SetLattice;
use crate::matroid::Matroid;
use crate::symp::{contract_class_env, delete_env, flats_lattice, SympMatroid};
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum MoebiusError {
    #[error("element is a coloop, the recursion does not apply")]
    CoLoopInput,
    #[error("{0}")]
    Failed(String),
}

/// Mobius value of the admissible-flat lattice, bottom to top.
pub fn mobius_symp(g: GroundSet, env: &Matroid) -> i64 {
    flats_lattice(g, env).mobius_top()
}

/// Mobius value of the ordinary flat lattice of a matroid.
pub fn mobius_ordinary(m: &Matroid) -> i64 {
    SetLattice::new(&m.flats(), |s| m.rank_of(s)).mobius_top()
}

/// Correction connecting the two lattices: subsets of the atoms of the
/// ordinary flat lattice whose union is inadmissible and whose join is not
/// the top each contribute `(-1)^|B|`.
pub fn x_correction(g: GroundSet, env: &Matroid) -> i64 {
    let lat = SetLattice::new(&env.flats(), |s| env.rank_of(s));
    let atoms = lat.atoms();
    let mut total = 0i64;
    for pick in 0..1u32 << atoms.len() {
        let chosen: Vec<usize> = (0..atoms.len()).filter(|&i| pick >> i & 1 == 1).collect();
        let union = chosen.iter().fold(ESet::EMPTY, |u, &i| u.union(lat.sets[atoms[i]]));
        if g.is_admissible(union) {
            continue;
        }
        if env.closure(union) == g.full() {
            continue;
        }
        total += if chosen.len() % 2 == 0 { 1 } else { -1 };
    }
    total
}

/// The admissible-side Mobius value equals the ordinary one plus the atom
/// correction.
pub fn mobius_identity_check(g: GroundSet, env: &Matroid) -> Result<(), String> {
    let symp = mobius_symp(g, env);
    let ord = mobius_ordinary(env);
    let x = x_correction(g, env);
    if symp == ord + x {
        Ok(())
    } else {
        Err(format!("admissible side gives {symp}, ordinary side {ord} with correction {x}"))
    }
}

/// For every element and every rank level, the flats through `a` and the
/// flats through `a*` carry the same total Mobius weight.
pub fn flat_sum_identity(g: GroundSet, env: &Matroid) -> Result<(), String> {
    let lat = flats_lattice(g, env);
    let level_sum = |e: usize, k: usize| -> i64 {
        (0..lat.len())
            .filter(|&i| lat.sets[i].contains(e) && lat.ranks[i] == k)
            .map(|i| lat.mobius(lat.bottom, i))
            .sum()
    };
    for p in 0..g.n {
        for k in 0..=env.rank {
            let plain = level_sum(p, k);
            let starred = level_sum(g.star(p), k);
            if plain != starred {
                return Err(format!(
                    "rank-{k} flats through {} weigh {plain}, through {} weigh {starred}",
                    g.elem_name(p),
                    g.elem_name(g.star(p))
                ));
            }
        }
    }
    Ok(())
}

/// A pair is a coloop when deleting the closure of `{a, a*}` leaves the full
/// uniform object on the surviving pairs: envelope rank equal to the number
/// of pairs and every admissible set of that size a basis.
pub fn is_coloop_pair(s: &SympMatroid, pair: usize) -> bool {
    let f = s.env.closure(ESet::from_elems(&[pair, s.g.star(pair)]));
    let (g2, m2, _) = delete_env(s.g, &s.env, f);
    if m2.rank != g2.n {
        return false;
    }
    let adm: Vec<ESet> =
        m2.bases.iter().copied().filter(|&b| g2.is_admissible(b)).collect();
    adm == g2.admissible_sets(g2.n)
}

/// Three-term recursion at a pair: deleting the pair closure and subtracting
/// both contractions reproduces the Mobius value.  Applies at rank at least
/// 3 to non-coloop pairs; other inputs pass vacuously.
pub fn deletion_contraction_check(s: &SympMatroid, pair: usize) -> Result<(), String> {
    if s.rank() < 3 || is_coloop_pair(s, pair) {
        return Ok(());
    }
    let g = s.g;
    let f = s.env.closure(ESet::from_elems(&[pair, g.star(pair)]));
    let (gd, md, _) = delete_env(g, &s.env, f);
    let deleted = mobius_symp(gd, &md);
    let (gc, mc, _) = contract_class_env(g, &s.env, pair).map_err(|e| e.to_string())?;
    let plain = mobius_symp(gc, &mc);
    let (gs, ms, _) = contract_class_env(g, &s.env, g.star(pair)).map_err(|e| e.to_string())?;
    let starred = mobius_symp(gs, &ms);
    let lhs = mobius_symp(g, &s.env);
    if lhs == deleted - plain - starred {
        Ok(())
    } else {
        Err(format!(
            "{lhs} != {deleted} - ({plain}) - ({starred}) at the pair of {}",
            g.elem_name(pair)
        ))
    }
}

/// Mobius values alternate strictly on every interval of the admissible-flat
/// lattice: `(-1)^(rank difference) * mu` is positive.
pub fn sign_alternation_check(g: GroundSet, env: &Matroid) -> Result<(), String> {
    let lat = flats_lattice(g, env);
    for i in 0..lat.len() {
        for j in 0..lat.len() {
            if !lat.le(i, j) {
                continue;
            }
            let mu = lat.mobius(i, j);
            let sign = if (lat.ranks[j] - lat.ranks[i]) % 2 == 0 { 1 } else { -1 };
            if sign * mu <= 0 {
                return Err(format!(
                    "interval [{}, {}] has mu = {mu} at rank gap {}",
                    g.set_name(lat.sets[i]),
                    g.set_name(lat.sets[j]),
                    lat.ranks[j] - lat.ranks[i]
                ));
            }
        }
    }
    Ok(())
}

fn binom(a: usize, b: usize) -> i64 {
    if b > a {
        return 0;
    }
    let mut v = 1i64;
    for i in 0..b {
        v = v * (a - i) as i64 / (i + 1) as i64;
    }
    v
}

/// Closed form and recursive sum for the top-interval contribution of a
/// coloop pair, returned side by side with their agreement.  The two
/// expressions disagree from `n = 2` on; the caller decides what to make of
/// that.
pub fn coloop_correction_term(n: usize) -> (i64, i64, bool) {
    assert!(n >= 2);
    let c = binom(2 * n - 4, n - 2);
    let closed_twice = (n as i64) * c * if n % 2 == 0 { 1 } else { -1 };
    assert_eq!(closed_twice % 2, 0);
    let closed = closed_twice / 2;
    let mut sum = 0i64;
    for k in 0..=n.saturating_sub(4) {
        if n < 4 {
            break;
        }
        let sign = if k % 2 == 0 { 1 } else { -1 };
        sum -= sign * (n as i64) * binom(2 * n - 4, k);
    }
    (closed, sum, closed == sum)
}

/// Ordinary one-element recursion `mu(M) = mu(M \ e) - mu(M / e)` for an
/// element that is neither a loop nor a coloop.  A contraction that creates
/// loops contributes zero, matching the subset expansion of the
/// characteristic polynomial.
pub fn ordinary_deletion_contraction(m: &Matroid, e: usize) -> Result<(), MoebiusError> {
    assert!(!m.loops().contains(e), "loops are outside the recursion");
    if m.rank_of(m.full_set().remove(e)) < m.rank {
        return Err(MoebiusError::CoLoopInput);
    }
    let char_mu = |m: &Matroid| if m.is_loopless() { mobius_ordinary(m) } else { 0 };
    let (del, _) = m.delete(ESet::singleton(e));
    let (con, _) = m.contract(ESet::singleton(e));
    let (lhs, d, c) = (char_mu(m), char_mu(&del), char_mu(&con));
    if lhs == d - c {
        Ok(())
    } else {
        Err(MoebiusError::Failed(format!("{lhs} != {d} - ({c}) at element {e}")))
    }
}

/// Ordinary hyperplane expansion: for every element `a`, minus the total
/// Mobius weight of the hyperplanes avoiding `a` equals `mu(M)`.
pub fn hyperplane_sum_check(m: &Matroid) -> Result<(), String> {
    if m.rank == 0 {
        return Ok(());
    }
    let lat = SetLattice::new(&m.flats(), |s| m.rank_of(s));
    let mu = lat.mobius_top();
    for a in 0..m.groundsize {
        let total: i64 = (0..lat.len())
            .filter(|&i| lat.ranks[i] == m.rank - 1 && !lat.sets[i].contains(a))
            .map(|i| lat.mobius(lat.bottom, i))
            .sum();
        if mu != -total {
            return Err(format!("element {a}: mu is {mu} but the hyperplane sum gives {}", -total));
        }
    }
    Ok(())
}
