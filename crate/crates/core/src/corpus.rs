//! The shipped corpus and the invariant battery run over it.
//!
//! A corpus entry is a named monoid: the hand-picked fixtures, plus every
//! monoid of a small order generated on demand. The battery re-checks, from
//! first principles, the structural laws the rest of the crate leans on:
//! how principal ideals track idempotent action, the grid laws of the
//! kernel, transfer of right ideals into the regular core, and the
//! agreement between the annihilator regularity criterion and a brute
//! isomorphism search. Every check recomputes its own evidence instead of
//! trusting a cached decomposition, so a battery pass is an independent
//! confirmation, not a tautology.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::act::{pointed_iso_bruteforce, random_quotient_act, FiniteAct};
use crate::classify::{stability_report, Verdict};
use crate::families::finite::{
    fixture_band_2x2_z2, fixture_chain_z2, fixture_counting_probe, fixture_layered_z2,
    fixture_nilsquare, fixture_right_zero_pair, fixture_trivial,
};
use crate::monoid::{rect_band_decompose, Elem, ElementSet, FiniteMonoid};
use crate::regular::{is_act_regular, monoid_regular_core};
use crate::smallgen::small_monoids;

/// A named monoid in the corpus.
#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: String,
    pub monoid: Arc<FiniteMonoid>,
}

/// The hand-picked fixtures, sorted by name.
pub fn fixture_corpus() -> Vec<CorpusEntry> {
    let mut entries: Vec<CorpusEntry> = vec![
        ("band-2x2-z2", fixture_band_2x2_z2()),
        ("chain-z2", fixture_chain_z2()),
        ("counting-probe", fixture_counting_probe()),
        ("layered-z2", fixture_layered_z2()),
        ("nilsquare", fixture_nilsquare()),
        ("right-zero-pair", fixture_right_zero_pair()),
        ("trivial", fixture_trivial()),
    ]
    .into_iter()
    .map(|(name, m)| CorpusEntry { name: name.to_string(), monoid: m.into_arc() })
    .collect();
    entries.sort_by(|a, b| a.name.cmp(&b.name));
    entries
}

/// Every monoid table of order `1..=max_order`, named so the names sort in
/// generation order within each order.
pub fn generated_corpus(max_order: usize) -> Vec<CorpusEntry> {
    let mut entries = Vec::new();
    for n in 1..=max_order {
        for (idx, m) in small_monoids(n).into_iter().enumerate() {
            entries.push(CorpusEntry {
                name: format!("gen/order{n}/{idx:05}"),
                monoid: m.into_arc(),
            });
        }
    }
    entries
}

/// Deterministic batch of small random acts over `m`, for oracle suites.
pub fn random_acts(
    m: &Arc<FiniteMonoid>,
    count: usize,
    max_size: usize,
    seed: u64,
) -> Vec<FiniteAct> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_quotient_act(m, &mut rng, max_size)).collect()
}

/// Result of one battery item on one monoid.
#[derive(Debug, Clone)]
pub struct InvariantOutcome {
    pub name: &'static str,
    pub passed: bool,
    /// What broke, when it did.
    pub detail: Option<String>,
}

/// Battery item names, in execution order.
pub const INVARIANT_NAMES: [&str; 12] = [
    "ideal-inclusion-vs-idempotent-action",
    "opposed-ideal-inclusions-collapse",
    "idempotent-minimal-left-iff-right",
    "minimal-idempotent-fixed-set-is-group",
    "kernel-grid-laws",
    "regularity-criterion-vs-iso-search",
    "vn-regular-implies-regular-representation",
    "core-right-ideal-transfer",
    "core-kernel-is-band-of-groups",
    "kernel-equals-core-kernel",
    "depth-two-forces-full-core",
    "order-refutation-carries-grid",
];

/// Runs every invariant against one monoid. Outcomes follow
/// [`INVARIANT_NAMES`] order.
pub fn invariant_battery(m: &Arc<FiniteMonoid>) -> Vec<InvariantOutcome> {
    let checks: [(&'static str, fn(&Arc<FiniteMonoid>) -> Result<(), String>); 12] = [
        (INVARIANT_NAMES[0], check_ideal_inclusion_vs_idempotent_action),
        (INVARIANT_NAMES[1], check_opposed_ideal_inclusions_collapse),
        (INVARIANT_NAMES[2], check_idempotent_minimal_left_iff_right),
        (INVARIANT_NAMES[3], check_minimal_idempotent_fixed_set_is_group),
        (INVARIANT_NAMES[4], check_kernel_grid_laws),
        (INVARIANT_NAMES[5], check_regularity_criterion_vs_iso_search),
        (INVARIANT_NAMES[6], check_vn_regular_implies_regular_representation),
        (INVARIANT_NAMES[7], check_core_right_ideal_transfer),
        (INVARIANT_NAMES[8], check_core_kernel_is_band_of_groups),
        (INVARIANT_NAMES[9], check_kernel_equals_core_kernel),
        (INVARIANT_NAMES[10], check_depth_two_forces_full_core),
        (INVARIANT_NAMES[11], check_order_refutation_carries_grid),
    ];
    checks
        .iter()
        .map(|&(name, run)| match run(m) {
            Ok(()) => InvariantOutcome { name, passed: true, detail: None },
            Err(detail) => InvariantOutcome { name, passed: false, detail: Some(detail) },
        })
        .collect()
}

/// `a*S ⊆ e*S ⟺ e*a = a` and `S*a ⊆ S*e ⟺ a*e = a` for idempotent `e`.
fn check_ideal_inclusion_vs_idempotent_action(m: &Arc<FiniteMonoid>) -> Result<(), String> {
    for e in m.idempotents().iter() {
        let re = m.right_ideal(e);
        let le = m.left_ideal(e);
        for a in m.elements() {
            let right_incl = m.right_ideal(a).is_subset(&re);
            if right_incl != (m.mul(e, a) == a) {
                return Err(format!(
                    "right inclusion and left action disagree at a={a}, e={e}"
                ));
            }
            let left_incl = m.left_ideal(a).is_subset(&le);
            if left_incl != (m.mul(a, e) == a) {
                return Err(format!(
                    "left inclusion and right action disagree at a={a}, e={e}"
                ));
            }
        }
    }
    Ok(())
}

/// Idempotents with `S*e ⊆ S*f` and `f*S ⊆ e*S` coincide.
fn check_opposed_ideal_inclusions_collapse(m: &Arc<FiniteMonoid>) -> Result<(), String> {
    let idems = m.idempotents();
    for e in idems.iter() {
        for f in idems.iter() {
            if m.left_ideal(e).is_subset(&m.left_ideal(f))
                && m.right_ideal(f).is_subset(&m.right_ideal(e))
                && e != f
            {
                return Err(format!("distinct idempotents {e}, {f} with opposed inclusions"));
            }
        }
    }
    Ok(())
}

/// Within `t`, `T*e` is minimal among idempotent-generated left ideals
/// exactly when `e*T` is minimal among idempotent-generated right ideals.
fn minimality_mirror(m: &FiniteMonoid, t: &ElementSet, label: &str) -> Result<(), String> {
    let idems: Vec<Elem> = t.iter().filter(|&e| m.mul(e, e) == e).collect();
    for &e in &idems {
        let min_left = !idems
            .iter()
            .any(|&g| m.left_ideal_in(t, g).is_strict_subset(&m.left_ideal_in(t, e)));
        let min_right = !idems
            .iter()
            .any(|&g| m.right_ideal_in(t, g).is_strict_subset(&m.right_ideal_in(t, e)));
        if min_left != min_right {
            return Err(format!(
                "idempotent {e} in {label}: left minimality {min_left} but right minimality {min_right}"
            ));
        }
    }
    Ok(())
}

fn check_idempotent_minimal_left_iff_right(m: &Arc<FiniteMonoid>) -> Result<(), String> {
    minimality_mirror(m, &ElementSet::full(m.order()), "the monoid")?;
    let core = monoid_regular_core(m);
    if !core.is_empty() {
        minimality_mirror(m, &core, "the regular core")?;
    }
    Ok(())
}

/// When `T*e` is a minimal left ideal of `t`, the set `{a ∈ T : ea = ae = a}`
/// is a group with unit `e`.
fn fixed_set_group(m: &FiniteMonoid, t: &ElementSet, label: &str) -> Result<(), String> {
    for e in t.iter().filter(|&e| m.mul(e, e) == e) {
        let ideal = m.left_ideal_in(t, e);
        let minimal = ideal.iter().all(|b| m.left_ideal_in(t, b) == ideal);
        if !minimal {
            continue;
        }
        let fixed: Vec<Elem> =
            t.iter().filter(|&a| m.mul(e, a) == a && m.mul(a, e) == a).collect();
        for &a in &fixed {
            for &b in &fixed {
                let p = m.mul(a, b);
                if !(m.mul(e, p) == p && m.mul(p, e) == p && t.contains(p)) {
                    return Err(format!(
                        "fixed set of {e} in {label} is not closed: {a}*{b} = {p}"
                    ));
                }
            }
            let has_inverse = fixed.iter().any(|&b| m.mul(a, b) == e && m.mul(b, a) == e);
            if !has_inverse {
                return Err(format!("no inverse for {a} in the fixed set of {e} in {label}"));
            }
        }
    }
    Ok(())
}

fn check_minimal_idempotent_fixed_set_is_group(m: &Arc<FiniteMonoid>) -> Result<(), String> {
    fixed_set_group(m, &ElementSet::full(m.order()), "the monoid")?;
    let core = monoid_regular_core(m);
    if !core.is_empty() {
        fixed_set_group(m, &core, "the regular core")?;
    }
    Ok(())
}

fn product_set(m: &FiniteMonoid, xs: &ElementSet, ys: &ElementSet) -> ElementSet {
    let mut out = Vec::with_capacity(xs.len() * ys.len());
    for x in xs.iter() {
        for y in ys.iter() {
            out.push(m.mul(x, y));
        }
    }
    ElementSet::new(out)
}

/// The grid laws of a rectangular band of groups, checked on the subset `t`.
///
/// Units absorb along their row and column; a cell times a cell is exactly
/// the target cell; principal ideals of `t` are full columns (left) and full
/// rows (right); ideal equality reads off the coordinate; and every
/// principal ideal of `t` is minimal.
fn grid_laws(m: &FiniteMonoid, t: &ElementSet) -> Result<(), String> {
    let d = rect_band_decompose(m, t).map_err(|e| format!("subset does not split: {e}"))?;
    for i in 0..d.rows {
        for j in 0..d.cols {
            let e_ij = d.idempotent[i][j];
            for k in 0..d.rows {
                let e_kj = d.idempotent[k][j];
                if m.mul(e_ij, e_kj) != e_ij {
                    return Err(format!("unit law fails: {e_ij}*{e_kj} in column {j}"));
                }
            }
            for l in 0..d.cols {
                let e_il = d.idempotent[i][l];
                if m.mul(e_ij, e_il) != e_il {
                    return Err(format!("unit law fails: {e_ij}*{e_il} in row {i}"));
                }
            }
            for k in 0..d.rows {
                for l in 0..d.cols {
                    let target = d.cell_members(i, l);
                    let cell_cell = product_set(m, d.cell_members(i, j), d.cell_members(k, l));
                    let unit_cell = product_set(
                        m,
                        &ElementSet::singleton(e_ij),
                        d.cell_members(k, l),
                    );
                    let cell_unit = product_set(
                        m,
                        d.cell_members(i, j),
                        &ElementSet::singleton(d.idempotent[k][l]),
                    );
                    if &cell_cell != target || &unit_cell != target || &cell_unit != target {
                        return Err(format!(
                            "cell product ({i},{j})*({k},{l}) misses cell ({i},{l})"
                        ));
                    }
                }
            }
            let col_union = (0..d.rows)
                .fold(ElementSet::empty(), |acc, p| acc.union(d.cell_members(p, j)));
            if m.left_ideal_in(t, e_ij) != col_union {
                return Err(format!("T*{e_ij} is not the full column {j}"));
            }
            let row_union = (0..d.cols)
                .fold(ElementSet::empty(), |acc, p| acc.union(d.cell_members(i, p)));
            if m.right_ideal_in(t, e_ij) != row_union {
                return Err(format!("{e_ij}*T is not the full row {i}"));
            }
        }
    }
    for a in t.iter() {
        let (r, c) = d.cell_of[&a];
        let la = m.left_ideal_in(t, a);
        let ra = m.right_ideal_in(t, a);
        for i in 0..d.rows {
            for j in 0..d.cols {
                let e = d.idempotent[i][j];
                if (la == m.left_ideal_in(t, e)) != (c == j) {
                    return Err(format!("left ideal of {a} vs unit ({i},{j}) breaks the column rule"));
                }
                if (ra == m.right_ideal_in(t, e)) != (r == i) {
                    return Err(format!("right ideal of {a} vs unit ({i},{j}) breaks the row rule"));
                }
            }
        }
        if !la.iter().all(|b| m.left_ideal_in(t, b) == la) {
            return Err(format!("T*{a} is not a minimal left ideal of the subset"));
        }
        if !ra.iter().all(|b| m.right_ideal_in(t, b) == ra) {
            return Err(format!("{a}*T is not a minimal right ideal of the subset"));
        }
    }
    Ok(())
}

fn check_kernel_grid_laws(m: &Arc<FiniteMonoid>) -> Result<(), String> {
    grid_laws(m, &m.kernel())
}

/// The annihilator regularity criterion agrees with a brute pointed
/// isomorphism search onto idempotent orbits, on the regular representation
/// and on a seeded batch of small random acts.
fn check_regularity_criterion_vs_iso_search(m: &Arc<FiniteMonoid>) -> Result<(), String> {
    let reg = FiniteAct::regular_representation(m.clone());
    let idems = m.idempotents();
    let probe = |act: &FiniteAct, label: &str| -> Result<(), String> {
        for p in act.points() {
            let fast = is_act_regular(act, p).is_regular();
            let brute = idems.iter().any(|e| pointed_iso_bruteforce(act, p, &reg, e));
            if fast != brute {
                return Err(format!(
                    "criterion {fast} but search {brute} at point {p} of {label}"
                ));
            }
        }
        Ok(())
    };
    probe(&reg, "the regular representation")?;
    for (k, act) in random_acts(m, 3, 6, 0xAC7).iter().enumerate() {
        probe(act, &format!("random act {k}"))?;
    }
    Ok(())
}

/// If every element factors as `a = a*b*a`, the regular representation is a
/// regular act.
fn check_vn_regular_implies_regular_representation(
    m: &Arc<FiniteMonoid>,
) -> Result<(), String> {
    let vn = m.elements().all(|a| m.elements().any(|b| m.mul(m.mul(a, b), a) == a));
    if !vn {
        return Ok(());
    }
    let core = monoid_regular_core(m);
    if core.len() != m.order() {
        return Err(format!(
            "von Neumann regular but only {} of {} points are act-regular",
            core.len(),
            m.order()
        ));
    }
    Ok(())
}

/// Right ideal equalities transfer between the monoid and its regular core:
/// a global match `r*S = e*S` pulls the idempotent into the core with
/// `r*R = e*R`, and for core idempotents the global and core-relative
/// equalities coincide.
fn check_core_right_ideal_transfer(m: &Arc<FiniteMonoid>) -> Result<(), String> {
    let core = monoid_regular_core(m);
    if core.is_empty() {
        return Ok(());
    }
    let idems = m.idempotents();
    for r in core.iter() {
        for e in idems.iter() {
            if m.right_ideal(r) != m.right_ideal(e) {
                continue;
            }
            if !core.contains(e) {
                return Err(format!("idempotent {e} shares {r}*S but is outside the core"));
            }
            if m.right_ideal_in(&core, r) != m.right_ideal_in(&core, e) {
                return Err(format!("{r}*R and {e}*R differ despite {r}*S = {e}*S"));
            }
        }
    }
    let core_idems: Vec<Elem> = idems.iter().filter(|&e| core.contains(e)).collect();
    for &e in &core_idems {
        for &f in &core_idems {
            let global = m.right_ideal(e) == m.right_ideal(f);
            let relative = m.right_ideal_in(&core, e) == m.right_ideal_in(&core, f);
            if global != relative {
                return Err(format!(
                    "core idempotents {e}, {f}: global equality {global}, core equality {relative}"
                ));
            }
        }
    }
    Ok(())
}

/// The kernel of the regular core splits into a rectangular band of groups.
fn check_core_kernel_is_band_of_groups(m: &Arc<FiniteMonoid>) -> Result<(), String> {
    let core = monoid_regular_core(m);
    if core.is_empty() {
        return Ok(());
    }
    rect_band_decompose(m, &m.kernel_in(&core))
        .map(|_| ())
        .map_err(|e| format!("core kernel does not split: {e}"))
}

/// The kernel of the monoid and the kernel of its regular core coincide.
fn check_kernel_equals_core_kernel(m: &Arc<FiniteMonoid>) -> Result<(), String> {
    let core = monoid_regular_core(m);
    if core.is_empty() {
        return Ok(());
    }
    let global = m.kernel();
    let relative = m.kernel_in(&core);
    if global != relative {
        return Err(format!(
            "kernel {:?} but core kernel {:?}",
            global.as_slice(),
            relative.as_slice()
        ));
    }
    Ok(())
}

/// Depth exactly 2 forces the regular core to be the whole monoid.
fn check_depth_two_forces_full_core(m: &Arc<FiniteMonoid>) -> Result<(), String> {
    if m.depth() != 2 {
        return Ok(());
    }
    let core = monoid_regular_core(m);
    if core.len() != m.order() {
        return Err(format!("depth 2 but core has {} of {}", core.len(), m.order()));
    }
    Ok(())
}

/// A core-relative order refutation must come with a grid whose order
/// pattern verified, so the classifier and the witness builder agree.
fn check_order_refutation_carries_grid(m: &Arc<FiniteMonoid>) -> Result<(), String> {
    let (_, core_section) = stability_report(m, Some(2));
    if core_section.verdict != Verdict::Fails {
        return Ok(());
    }
    let witness = core_section
        .witness
        .as_ref()
        .ok_or_else(|| "refutation without a witness".to_string())?;
    let obj = witness.as_object().ok_or_else(|| "witness is not an object".to_string())?;
    if let Some(err) = obj.get("grid_error") {
        return Err(format!("grid attachment failed: {err}"));
    }
    if !obj.contains_key("grid") {
        return Err("refutation carries no grid".to_string());
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn battery_passes_on_every_fixture() {
        for entry in fixture_corpus() {
            for outcome in invariant_battery(&entry.monoid) {
                assert!(
                    outcome.passed,
                    "{} fails {}: {:?}",
                    entry.name, outcome.name, outcome.detail
                );
            }
        }
    }

    #[test]
    fn battery_passes_on_all_generated_monoids_up_to_order_three() {
        let entries = generated_corpus(3);
        assert_eq!(entries.len(), 1 + 2 + 11);
        for entry in &entries {
            for outcome in invariant_battery(&entry.monoid) {
                assert!(
                    outcome.passed,
                    "{} fails {}: {:?}",
                    entry.name, outcome.name, outcome.detail
                );
            }
        }
    }

    #[test]
    fn generated_names_sort_in_generation_order() {
        let entries = generated_corpus(3);
        let names: Vec<&str> = entries.iter().map(|e| e.name.as_str()).collect();
        let mut sorted = names.clone();
        sorted.sort();
        assert_eq!(names, sorted);
        assert_eq!(names[0], "gen/order1/00000");
        assert_eq!(names[3], "gen/order3/00000");
    }

    #[test]
    fn grid_laws_reject_a_subset_with_no_band_structure() {
        // The full monoid contains the identity strictly above the kernel,
        // so it cannot split into a grid of groups.
        let m = fixture_band_2x2_z2().into_arc();
        let err = grid_laws(&m, &ElementSet::full(m.order())).unwrap_err();
        assert!(err.contains("does not split"), "unexpected detail: {err}");
    }

    #[test]
    fn battery_reports_follow_the_published_name_order() {
        let m = fixture_trivial().into_arc();
        let outcomes = invariant_battery(&m);
        let names: Vec<&str> = outcomes.iter().map(|o| o.name).collect();
        assert_eq!(names, INVARIANT_NAMES.to_vec());
    }

    #[test]
    fn random_act_batches_are_deterministic_per_seed() {
        let m = fixture_chain_z2().into_arc();
        let first = random_acts(&m, 5, 6, 99);
        let second = random_acts(&m, 5, 6, 99);
        let prints: Vec<String> = first.iter().map(|a| a.fingerprint()).collect();
        let reprints: Vec<String> = second.iter().map(|a| a.fingerprint()).collect();
        assert_eq!(prints, reprints);
        assert!(first.iter().all(|a| a.size() <= 6));
    }
}
