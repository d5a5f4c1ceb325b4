//! Act-regularity: per-point certificates, regular cores, von Neumann
//! regularity, decomposition of regular acts into glued cyclic pieces, and
//! the linear-order lift check.
//!
//! A point `a` is act-regular when some idempotent `e` has the same
//! annihilator partition of `S`, which forces the pointed isomorphism
//! `S*a ≅ S*e` via `s*a ↦ s*e`. Everything here reduces to comparing those
//! partitions.

use std::sync::Arc;

use thiserror::Error;

use crate::act::{coproduct, pointed_iso, ActCongruence, ActHom, FiniteAct};
use crate::monoid::{Elem, ElementSet, FiniteMonoid};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RegularityError {
    #[error("point {0} is not act-regular")]
    NotRegular(usize),
    #[error("precondition failed: {reason}")]
    PreconditionFailed { reason: String },
}

/// The partition of `S` induced by equal action on one point, packaged with
/// a proof obligation: it is left-compatible on the regular representation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Annihilator {
    pub point: usize,
    /// Partition over the monoid's regular representation.
    pub partition: ActCongruence,
}

/// Exact relation `{(s,t) : s*a = t*a}`, verified left-compatible.
pub fn annihilator(act: &FiniteAct, a: usize) -> Annihilator {
    let reg = FiniteAct::regular_representation(act.monoid().clone());
    let block_of = act.point_annihilator(a);
    let partition = ActCongruence::new(&reg, &block_of)
        .expect("equal-action partitions are always left-compatible");
    Annihilator { point: a, partition }
}

/// Why one idempotent fails to witness regularity of a point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Refutation {
    pub idempotent: Elem,
    /// Pair `(s,t)` on which the point's annihilator and the idempotent's
    /// disagree.
    pub distinguishing: (Elem, Elem),
}

/// Outcome of the act-regularity test for one point.
#[derive(Debug, Clone)]
pub enum PointOutcome {
    Regular {
        /// Least idempotent with matching annihilator.
        idempotent: Elem,
        /// The forced isomorphism from `S*a` onto `S*e` sending `a` to `e`.
        iso: ActHom,
    },
    NotRegular {
        /// One distinguishing pair per idempotent, sorted by idempotent.
        refutations: Vec<Refutation>,
    },
}

#[derive(Debug, Clone)]
pub struct PointRegularity {
    pub point: usize,
    pub outcome: PointOutcome,
}

impl PointRegularity {
    pub fn is_regular(&self) -> bool {
        matches!(self.outcome, PointOutcome::Regular { .. })
    }

    pub fn witness_idempotent(&self) -> Option<Elem> {
        match &self.outcome {
            PointOutcome::Regular { idempotent, .. } => Some(*idempotent),
            PointOutcome::NotRegular { .. } => None,
        }
    }
}

/// Decides act-regularity of `a` by scanning idempotents for an annihilator
/// match, smallest first.
pub fn is_act_regular(act: &FiniteAct, a: usize) -> PointRegularity {
    let reg = FiniteAct::regular_representation(act.monoid().clone());
    let ann_a = act.point_annihilator(a);
    let mut refutations = Vec::new();
    for e in act.monoid().idempotents().iter() {
        let ann_e = reg.point_annihilator(e);
        if ann_e == ann_a {
            let iso = pointed_iso(act, a, &reg, e)
                .expect("equal annihilators force the pointed isomorphism");
            return PointRegularity { point: a, outcome: PointOutcome::Regular { idempotent: e, iso } };
        }
        let distinguishing = first_disagreement(&ann_a, &ann_e)
            .expect("different partitions disagree on some pair");
        refutations.push(Refutation { idempotent: e, distinguishing });
    }
    PointRegularity { point: a, outcome: PointOutcome::NotRegular { refutations } }
}

fn first_disagreement(p: &[usize], q: &[usize]) -> Option<(Elem, Elem)> {
    for s in 0..p.len() {
        for t in s + 1..p.len() {
            if (p[s] == p[t]) != (q[s] == q[t]) {
                return Some((s, t));
            }
        }
    }
    None
}

/// Largest subact whose points all have act-regular orbits:
/// `{x : every y in S*x is act-regular}`.
pub fn regular_core(act: &FiniteAct) -> ElementSet {
    let marked: Vec<bool> = act.points().map(|a| is_act_regular(act, a).is_regular()).collect();
    act.points().filter(|&x| act.orbit(x).iter().all(|y| marked[y])).collect()
}

/// Regular core of the monoid acting on itself.
pub fn monoid_regular_core(m: &Arc<FiniteMonoid>) -> ElementSet {
    regular_core(&FiniteAct::regular_representation(m.clone()))
}

/// Smallest set of idempotents `e` inside the regular core `R` whose
/// translates `e*R` jointly cover `R`, ties broken by the lexicographically
/// least tuple. A cover always exists: each `x` in `R` satisfies `e*x = x`
/// for its witness idempotent `e`, and the pointed isomorphism `S*x ≅ S*e`
/// keeps `e` inside `R`. `R` is downward closed, so every `e*R` stays in it.
pub fn idempotent_cover(m: &Arc<FiniteMonoid>) -> Vec<Elem> {
    let core = monoid_regular_core(m);
    if core.is_empty() {
        return Vec::new();
    }
    let candidates: Vec<Elem> = m.idempotents().iter().filter(|&e| core.contains(e)).collect();
    let covered: Vec<ElementSet> = candidates
        .iter()
        .map(|&e| ElementSet::new(core.iter().map(|x| m.mul(e, x)).collect()))
        .collect();
    for k in 1..=candidates.len() {
        if let Some(pick) = cover_search(&covered, &core, &mut Vec::new(), 0, k) {
            return pick.into_iter().map(|i| candidates[i]).collect();
        }
    }
    unreachable!("the witness idempotents of the regular core always cover it")
}

pub(crate) fn cover_search(
    covered: &[ElementSet],
    target: &ElementSet,
    chosen: &mut Vec<usize>,
    from: usize,
    k: usize,
) -> Option<Vec<usize>> {
    if chosen.len() == k {
        let mut union = ElementSet::empty();
        for &i in chosen.iter() {
            union = union.union(&covered[i]);
        }
        return (union == *target).then(|| chosen.clone());
    }
    // Not enough candidates left to reach k.
    if covered.len() - from < k - chosen.len() {
        return None;
    }
    for i in from..covered.len() {
        chosen.push(i);
        if let Some(hit) = cover_search(covered, target, chosen, i + 1, k) {
            return Some(hit);
        }
        chosen.pop();
    }
    None
}

/// Per-element multiplicative inverses in the `a = a*b*a` sense.
#[derive(Debug, Clone)]
pub struct VnRegularity {
    pub regular: bool,
    /// Least `b` with `a*b*a = a`, per element; `None` where none exists.
    pub inner_inverse: Vec<Option<Elem>>,
    /// First element with no inner inverse, if any.
    pub failing: Option<Elem>,
}

/// Checks `∀a ∃b: a*b*a = a` exhaustively.
pub fn is_vn_regular(m: &FiniteMonoid) -> VnRegularity {
    let mut inner_inverse = Vec::with_capacity(m.order());
    let mut failing = None;
    for a in m.elements() {
        let b = m.elements().find(|&b| m.mul(m.mul(a, b), a) == a);
        if b.is_none() && failing.is_none() {
            failing = Some(a);
        }
        inner_inverse.push(b);
    }
    VnRegularity { regular: failing.is_none(), inner_inverse, failing }
}

/// A regular act rebuilt as a quotient of a coproduct of idempotent-generated
/// cyclic acts, glued only across connected components.
#[derive(Debug, Clone)]
pub struct RegularDecomposition {
    /// Orbit representatives, largest orbit first then smallest index.
    pub generators: Vec<usize>,
    /// Witness idempotent per generator.
    pub idempotents: Vec<Elem>,
    /// The cyclic acts `S*e` over the regular representation, one per generator.
    pub summands: Vec<FiniteAct>,
    pub coproduct: FiniteAct,
    /// Kernel of the evaluation map; merges points across summands only.
    pub theta: ActCongruence,
    /// Verified isomorphism from the quotient onto the original act.
    pub iso: ActHom,
}

/// Exhibits a regular act as `(⊔ S*e_a)/θ` with `θ` an amalgam congruence,
/// verifying the round trip. Fails on the first non-regular point.
pub fn decompose_regular(act: &FiniteAct) -> Result<RegularDecomposition, RegularityError> {
    let certificates: Vec<PointRegularity> =
        act.points().map(|a| is_act_regular(act, a)).collect();
    if let Some(bad) = certificates.iter().find(|c| !c.is_regular()) {
        return Err(RegularityError::NotRegular(bad.point));
    }
    // Greedy orbit cover: big orbits first so the summand list is short.
    let mut order: Vec<usize> = act.points().collect();
    order.sort_by_key(|&x| (usize::MAX - act.orbit(x).len(), x));
    let mut covered = vec![false; act.size()];
    let mut generators = Vec::new();
    for x in order {
        if !covered[x] {
            generators.push(x);
            for y in act.orbit(x).iter() {
                covered[y] = true;
            }
        }
    }
    let reg = FiniteAct::regular_representation(act.monoid().clone());
    let mut idempotents = Vec::new();
    let mut summands = Vec::new();
    let mut eval_maps: Vec<Vec<usize>> = Vec::new();
    for &g in &generators {
        let e = certificates[g].witness_idempotent().unwrap();
        idempotents.push(e);
        let (summand, emb) = reg.cyclic_subact(e);
        // Evaluation sends s*e to s*g; equal annihilators make it total and
        // well-defined.
        let iso = pointed_iso(&reg, e, act, g)
            .expect("witness idempotent has matching annihilator");
        let (_, target_emb) = act.cyclic_subact(g);
        let map: Vec<usize> = iso.map.iter().map(|&i| target_emb[i]).collect();
        debug_assert_eq!(map.len(), emb.len());
        summands.push(summand);
        eval_maps.push(map);
    }
    let (sum, injections) = coproduct(act.monoid(), &summands)
        .expect("summands share the act's monoid");
    let mut image = vec![0usize; sum.size()];
    for (k, inj) in injections.iter().enumerate() {
        for (local, &global) in inj.iter().enumerate() {
            image[global] = eval_maps[k][local];
        }
    }
    let theta = ActCongruence::new(&sum, &image)
        .expect("kernel of an action-preserving map is left-compatible");
    let (quotient, projection) = sum.quotient(&theta);
    let mut block_image = vec![usize::MAX; quotient.size()];
    for p in 0..sum.size() {
        block_image[projection[p]] = image[p];
    }
    let iso = ActHom { source: quotient, target: act.clone(), map: block_image };
    assert!(iso.verify() && iso.is_bijective(), "evaluation must be an isomorphism");
    assert!(sum.is_amalgam(&theta), "kernel merges within a component");
    Ok(RegularDecomposition {
        generators,
        idempotents,
        summands,
        coproduct: sum,
        theta,
        iso,
    })
}

/// Result of checking chain order inside every cyclic subact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearLiftCheck {
    pub holds: bool,
    /// `(anchor, b, c)` with the orbits of `b` and `c` incomparable inside
    /// the anchor's orbit.
    pub violation: Option<(usize, usize, usize)>,
}

/// For a monoid whose regular elements see only chains of ideals below
/// them, checks the transferred property inside every cyclic subact of a
/// regular act: orbits within one orbit are totally ordered by inclusion.
pub fn regular_linear_order_lift_check(
    m: &Arc<FiniteMonoid>,
    act: &FiniteAct,
) -> Result<LinearLiftCheck, RegularityError> {
    let r = monoid_regular_core(m);
    if let Some((a, b, c)) = m.regular_order_violation(&r) {
        return Err(RegularityError::PreconditionFailed {
            reason: format!(
                "monoid ideals below S*{a} are not a chain: S*{b} and S*{c} incomparable"
            ),
        });
    }
    if let Some(bad) = act.points().find(|&p| !is_act_regular(act, p).is_regular()) {
        return Err(RegularityError::PreconditionFailed {
            reason: format!("act point {bad} is not act-regular"),
        });
    }
    for anchor in act.points() {
        let inside = act.orbit(anchor);
        for b in inside.iter() {
            let ob = act.orbit(b);
            for c in inside.iter().filter(|&c| c > b) {
                let oc = act.orbit(c);
                if !ob.is_subset(&oc) && !oc.is_subset(&ob) {
                    return Ok(LinearLiftCheck { holds: false, violation: Some((anchor, b, c)) });
                }
            }
        }
    }
    Ok(LinearLiftCheck { holds: true, violation: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::FiniteMonoid;

    fn right_zero_pair() -> Arc<FiniteMonoid> {
        FiniteMonoid::validate(3, vec![0, 1, 2, 1, 1, 2, 2, 1, 2], None).unwrap().into_arc()
    }

    /// {1, a, 0} with a*a = 0: the squared element has no inner inverse.
    fn nilpotent3() -> Arc<FiniteMonoid> {
        FiniteMonoid::validate(3, vec![0, 1, 2, 1, 2, 2, 2, 2, 2], None).unwrap().into_arc()
    }

    fn z2() -> Arc<FiniteMonoid> {
        FiniteMonoid::validate(2, vec![0, 1, 1, 0], None).unwrap().into_arc()
    }

    #[test]
    fn identity_point_is_regular_via_identity_element() {
        let m = right_zero_pair();
        let reg = FiniteAct::regular_representation(m);
        let cert = is_act_regular(&reg, 0);
        assert_eq!(cert.witness_idempotent(), Some(0));
    }

    #[test]
    fn right_zero_core_is_everything() {
        let m = right_zero_pair();
        assert_eq!(monoid_regular_core(&m), ElementSet::full(3));
        assert!(is_vn_regular(&m).regular);
    }

    #[test]
    fn cover_of_a_full_core_is_the_identity_alone() {
        let m = right_zero_pair();
        assert_eq!(monoid_regular_core(&m), ElementSet::full(3));
        assert_eq!(idempotent_cover(&m), vec![0]);
    }

    #[test]
    fn cover_of_a_singleton_core_is_its_zero() {
        let m = nilpotent3();
        assert_eq!(idempotent_cover(&m), vec![2]);
    }

    #[test]
    fn orthogonal_idempotents_force_a_two_element_cover() {
        // {1, n, z, e, f}: n*n = z, z absorbing, e and f orthogonal
        // idempotents. The core is {z, e, f}; no single translate reaches
        // all of it, but e*R and f*R together do.
        let m = FiniteMonoid::validate(
            5,
            vec![
                0, 1, 2, 3, 4, //
                1, 2, 2, 2, 2, //
                2, 2, 2, 2, 2, //
                3, 2, 2, 3, 2, //
                4, 2, 2, 2, 4,
            ],
            None,
        )
        .unwrap()
        .into_arc();
        assert_eq!(monoid_regular_core(&m), ElementSet::new(vec![2, 3, 4]));
        assert_eq!(idempotent_cover(&m), vec![3, 4]);
    }

    #[test]
    fn nilpotent_core_is_the_zero() {
        let m = nilpotent3();
        let vn = is_vn_regular(&m);
        assert!(!vn.regular);
        assert_eq!(vn.failing, Some(1));
        assert_eq!(monoid_regular_core(&m), ElementSet::singleton(2));
        let reg = FiniteAct::regular_representation(m);
        let cert = is_act_regular(&reg, 1);
        match cert.outcome {
            PointOutcome::NotRegular { refutations } => {
                // Both idempotents (1 and 0) refuted.
                assert_eq!(refutations.len(), 2);
            }
            PointOutcome::Regular { .. } => panic!("squared element cannot be regular"),
        }
    }

    #[test]
    fn core_is_a_subact_with_an_idempotent() {
        for m in [right_zero_pair(), nilpotent3(), z2()] {
            let r = monoid_regular_core(&m);
            if r.is_empty() {
                continue;
            }
            for x in r.iter() {
                for s in m.elements() {
                    assert!(r.contains(m.mul(s, x)), "core not closed under action");
                }
                for y in r.iter() {
                    assert!(r.contains(m.mul(x, y)), "core not closed under product");
                }
            }
            assert!(r.iter().any(|e| m.mul(e, e) == e), "nonempty core without idempotent");
        }
    }

    #[test]
    fn annihilator_matches_search_oracle() {
        use crate::act::pointed_iso_bruteforce;
        for m in [right_zero_pair(), nilpotent3(), z2()] {
            let reg = FiniteAct::regular_representation(m.clone());
            for a in reg.points() {
                let by_annihilator = is_act_regular(&reg, a).is_regular();
                let by_search = m
                    .idempotents()
                    .iter()
                    .any(|e| pointed_iso_bruteforce(&reg, a, &reg, e));
                assert_eq!(by_annihilator, by_search, "disagreement at point {a}");
            }
        }
    }

    #[test]
    fn decompose_rebuilds_the_regular_representation() {
        let m = right_zero_pair();
        let reg = FiniteAct::regular_representation(m);
        let d = decompose_regular(&reg).unwrap();
        assert_eq!(d.generators, vec![0]);
        assert!(d.theta.is_identity());
        assert!(d.iso.verify() && d.iso.is_bijective());
    }

    #[test]
    fn decompose_coproduct_gets_one_summand_per_part() {
        let m = right_zero_pair();
        let reg = FiniteAct::regular_representation(m.clone());
        let (x, _) = reg.cyclic_subact(1);
        let (y, _) = reg.cyclic_subact(2);
        let (sum, _) = coproduct(&m, &[x, y]).unwrap();
        let d = decompose_regular(&sum).unwrap();
        assert_eq!(d.summands.len(), 2);
        assert!(d.theta.is_identity());
    }

    #[test]
    fn decompose_rejects_non_regular_acts() {
        let m = nilpotent3();
        let reg = FiniteAct::regular_representation(m);
        assert_eq!(decompose_regular(&reg).unwrap_err(), RegularityError::NotRegular(1));
    }

    #[test]
    fn lift_check_needs_chained_ideals() {
        let m = right_zero_pair();
        let reg = FiniteAct::regular_representation(m.clone());
        assert!(matches!(
            regular_linear_order_lift_check(&m, &reg),
            Err(RegularityError::PreconditionFailed { .. })
        ));
        let g = z2();
        let greg = FiniteAct::regular_representation(g.clone());
        let check = regular_linear_order_lift_check(&g, &greg).unwrap();
        assert!(check.holds);
    }

    #[test]
    fn annihilator_partition_is_left_compatible() {
        let m = nilpotent3();
        let reg = FiniteAct::regular_representation(m);
        for a in reg.points() {
            // Construction validates; reaching here is the assertion.
            let ann = annihilator(&reg, a);
            assert_eq!(ann.point, a);
        }
    }
}
