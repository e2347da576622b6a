//! Orthogonal matroids: equicardinal admissible families with a unique
//! Gale maximum under every D-type order, the starred-count parity
//! invariant, the symplectic inclusion, and the search for an admissible
//! envelope of a Lagrangian family.

use crate::geometry::gelfand_serganova_check;
use crate::ground::{ESet, GroundSet};
use crate::order::enumerate_d_orders;
use crate::symp::{is_symplectic, minimal_enveloping, EnvelopeError};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A nonempty family of equicardinal admissible sets with a Gale-dominant
/// member under every D-type admissible order.
pub fn is_orthogonal(g: GroundSet, family: &[ESet]) -> bool {
    if family.is_empty() {
        return false;
    }
    let k = family[0].len();
    if family.iter().any(|&a| a.len() != k || !g.is_admissible(a)) {
        return false;
    }
    enumerate_d_orders(g).iter().all(|ord| ord.gale_dominant(family).is_some())
}

/// Orthogonal of full size n.
pub fn is_lagrangian(g: GroundSet, family: &[ESet]) -> bool {
    !family.is_empty() && family[0].len() == g.n && is_orthogonal(g, family)
}

fn starred_count(g: GroundSet, a: ESet) -> usize {
    a.iter().filter(|&e| e >= g.n).count()
}

/// The number of starred elements has the same parity in every member.
pub fn parity_check(g: GroundSet, family: &[ESet]) -> bool {
    let mut parities = family.iter().map(|&a| starred_count(g, a) % 2);
    match parities.next() {
        None => true,
        Some(p) => parities.all(|q| q == p),
    }
}

/// An orthogonal family is symplectic: both the Gale-order criterion over
/// C-type orders and the edge-direction criterion must agree and hold.
pub fn symplectic_inclusion_check(g: GroundSet, family: &[ESet]) -> Result<(), String> {
    let by_orders = is_symplectic(g, family).is_ok();
    let by_edges = gelfand_serganova_check(g, family);
    match (by_orders, by_edges) {
        (true, true) => Ok(()),
        (false, false) => Err("family is not symplectic by either criterion".into()),
        _ => Err(format!(
            "criteria disagree: orders say {}, edges say {}",
            by_orders, by_edges
        )),
    }
}

/// Outcome of hunting for an admissible envelope of a Lagrangian family.
#[derive(Debug, PartialEq, Eq)]
pub enum EnvVerdict {
    /// Some admissible envelope exists (unique smallest or not).
    Envelope,
    /// Exhaustive search proved no admissible envelope exists.
    Falsified(String),
    /// The candidate space is too large to settle by search.
    Skipped(String),
}

/// Does the family arise as the admissible bases of an admissible matroid?
pub fn envelope_theorem_check(g: GroundSet, family: &[ESet]) -> EnvVerdict {
    match minimal_enveloping(g, family) {
        Ok(_) | Err(EnvelopeError::MultipleMinima(_, _)) => EnvVerdict::Envelope,
        Err(EnvelopeError::NotFound) => {
            let names: Vec<String> = family.iter().map(|&a| g.set_name(a)).collect();
            EnvVerdict::Falsified(format!("no admissible envelope for {{{}}}", names.join(", ")))
        }
        Err(EnvelopeError::TooLarge(c)) => {
            EnvVerdict::Skipped(format!("{} inadmissible candidates exceed the search cap", c))
        }
        Err(EnvelopeError::BadInput(msg)) => EnvVerdict::Skipped(format!("invalid family: {}", msg)),
    }
}

/// Every Lagrangian orthogonal family on ground pairs 1..n, by exhaustive
/// search over subsets of the admissible n-sets.  Feasible for n <= 3.
pub fn enumerate_lagrangian(n: usize) -> Vec<Vec<ESet>> {
    let g = GroundSet::new(n);
    let sets = g.admissible_sets(n);
    assert!(sets.len() <= 20, "family space too large to enumerate");
    let mut out = Vec::new();
    for mask in 1u64..1 << sets.len() {
        let mut family: Vec<ESet> = sets
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &s)| s)
            .collect();
        family.sort();
        if is_lagrangian(g, &family) {
            out.push(family);
        }
    }
    out
}

/// Random subfamilies of the admissible n-sets that happen to be
/// Lagrangian orthogonal, deduplicated, for grounds too big to enumerate.
pub fn sample_lagrangian(g: GroundSet, seed: u64, tries: usize) -> Vec<Vec<ESet>> {
    let sets = g.admissible_sets(g.n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<Vec<ESet>> = Vec::new();
    for _ in 0..tries {
        let target = rng.gen_range(1..=4usize);
        let mut family: Vec<ESet> = Vec::new();
        while family.len() < target {
            let s = sets[rng.gen_range(0..sets.len())];
            if !family.contains(&s) {
                family.push(s);
            }
        }
        family.sort();
        if is_lagrangian(g, &family) && !out.contains(&family) {
            out.push(family);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_lagrangian_counts() {
        assert_eq!(enumerate_lagrangian(1).len(), 2);
        let two = enumerate_lagrangian(2);
        assert_eq!(two.len(), 6);
        let segment = vec![ESet::from_elems(&[0, 1]), ESet::from_elems(&[2, 3])];
        assert!(two.contains(&segment));
        let mirror = vec![ESet::from_elems(&[1, 2]), ESet::from_elems(&[0, 3])];
        assert!(two.contains(&mirror));
        // a family mixing starred-count parities is not orthogonal
        let g = GroundSet::new(2);
        let mixed = vec![ESet::from_elems(&[0, 1]), ESet::from_elems(&[0, 3])];
        assert!(!is_orthogonal(g, &mixed));
        assert!(!parity_check(g, &mixed));
    }

    #[test]
    fn parity_and_inclusion_hold_where_orthogonal() {
        for n in 1..=3usize {
            let g = GroundSet::new(n);
            for family in enumerate_lagrangian(n) {
                assert!(parity_check(g, &family), "{:?}", family);
                assert_eq!(symplectic_inclusion_check(g, &family), Ok(()));
            }
        }
    }

    #[test]
    fn envelope_search_verdicts() {
        let g = GroundSet::new(2);
        let segment = vec![ESet::from_elems(&[0, 1]), ESet::from_elems(&[2, 3])];
        assert_eq!(envelope_theorem_check(g, &segment), EnvVerdict::Envelope);
        // singleton families admit no loopless admissible envelope
        let lone = vec![ESet::from_elems(&[0, 1])];
        assert!(matches!(envelope_theorem_check(g, &lone), EnvVerdict::Falsified(_)));
        let g1 = GroundSet::new(1);
        assert!(matches!(
            envelope_theorem_check(g1, &[ESet::from_elems(&[0])]),
            EnvVerdict::Falsified(_)
        ));
    }

    #[test]
    fn lagrangian_members_are_orthogonal_samples() {
        let g = GroundSet::new(3);
        let found = sample_lagrangian(g, 5, 60);
        for family in &found {
            assert!(is_lagrangian(g, family));
        }
    }
}
