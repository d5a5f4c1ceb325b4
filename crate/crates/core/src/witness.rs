//! Act constructions with verified first-order behavior: grid quotients
//! whose definable relation reproduces a chosen triangular pattern, tree
//! coproducts whose translated leaves separate exactly along shared
//! prefixes, the triple calculus describing how a cyclic piece attaches to
//! an act, and counting acts whose quantifier profile encodes an index set.
//!
//! Every builder validates its preconditions, assembles the act, and then
//! re-checks the advertised logical pattern by evaluation; a violation is
//! reported as an error rather than silently returned.

use std::collections::BTreeMap;
use std::sync::Arc;

use thiserror::Error;

use crate::act::{coproduct, ActCongruence, ActError, FiniteAct};
use crate::fo::{eval, FoError, Formula, Term, Valuation};
use crate::monoid::{Elem, ElementSet, FiniteMonoid};
use crate::regular::{idempotent_cover, monoid_regular_core, regular_core};

#[derive(Debug, Error)]
pub enum WitnessError {
    #[error("element {0} is outside the monoid")]
    ElementOutOfRange(Elem),
    #[error("point {0} is not in the regular core")]
    NotRegularPoint(usize),
    #[error("principal left ideals of {0} and {1} are comparable")]
    IdealsComparable(Elem, Elem),
    #[error("definable order between row {i} and column {j} should be {expected}")]
    OrderPatternViolated { i: usize, j: usize, expected: bool },
    #[error("ideal chain fails to ascend strictly at position {at}")]
    ChainNotStrict { at: usize },
    #[error("branch separation failed: {detail}")]
    SeparationViolated { detail: String },
    #[error("counting profile at index {index} should be {expected}")]
    CountingPatternViolated { index: usize, expected: bool },
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("no covering idempotent admits a consistent extraction: {0}")]
    NoCoverIdempotentApplies(String),
    #[error(transparent)]
    Act(#[from] ActError),
    #[error(transparent)]
    Fo(#[from] FoError),
}

/// A quotient of grid-indexed copies of `S*a` on which the relation
/// `∃z (x = t*z ∧ y = s*z)` holds between the glued row point `i` and the
/// glued column point `j` exactly when `i >= j`.
#[derive(Debug, Clone)]
pub struct GridWitness {
    pub a: Elem,
    pub t: Elem,
    pub s: Elem,
    /// Highest row/column index; cells `(i, j)` exist for `j <= i <= n`.
    pub n: usize,
    /// `b = t*a`, the element glued along rows.
    pub b: Elem,
    /// `c = s*a`, the element glued along columns.
    pub c: Elem,
    pub act: FiniteAct,
    /// Quotient class of the shared `b` point, per row.
    pub b_points: Vec<usize>,
    /// Quotient class of the shared `c` point, per column.
    pub c_points: Vec<usize>,
    /// Per cell, the quotient class of every point of that copy of `S*a`,
    /// indexed like the cyclic subact carrier.
    pub cells: BTreeMap<(usize, usize), Vec<usize>>,
    /// `∃z (x = t*z ∧ y = s*z)` with `x`, `y` free.
    pub formula: Formula,
}

/// Builds the triangular grid act over `S*a`: one copy per cell `(i, j)`
/// with `j <= i <= n`, the `t*a` points glued along each row and the `s*a`
/// points glued along each column. Requires `a` in the regular core and
/// the principal ideals of `t*a` and `s*a` incomparable; this keeps every
/// copy embedded and makes the definable relation exactly lower-triangular,
/// which is re-verified before returning.
pub fn build_grid(
    m: &Arc<FiniteMonoid>,
    a: Elem,
    t: Elem,
    s: Elem,
    n: usize,
) -> Result<GridWitness, WitnessError> {
    for x in [a, t, s] {
        if x >= m.order() {
            return Err(WitnessError::ElementOutOfRange(x));
        }
    }
    if !monoid_regular_core(m).contains(a) {
        return Err(WitnessError::NotRegularPoint(a));
    }
    let b = m.mul(t, a);
    let c = m.mul(s, a);
    let ib = m.left_ideal(b);
    let ic = m.left_ideal(c);
    if ib.is_subset(&ic) || ic.is_subset(&ib) {
        return Err(WitnessError::IdealsComparable(b, c));
    }

    let reg = FiniteAct::regular_representation(m.clone());
    let (cyc, emb) = reg.cyclic_subact(a);
    let b_in = emb.binary_search(&b).expect("t*a lies in S*a");
    let c_in = emb.binary_search(&c).expect("s*a lies in S*a");

    let mut cell_ids = Vec::new();
    for i in 0..=n {
        for j in 0..=i {
            cell_ids.push((i, j));
        }
    }
    let parts = vec![cyc; cell_ids.len()];
    let (big, inj) = coproduct(m, &parts)?;
    let part_of =
        |cell: (usize, usize)| cell_ids.binary_search(&cell).expect("cell exists in the grid");

    let mut pairs = Vec::new();
    for i in 0..=n {
        for j in 1..=i {
            pairs.push((inj[part_of((i, 0))][b_in], inj[part_of((i, j))][b_in]));
        }
    }
    for j in 0..=n {
        for i in j + 1..=n {
            pairs.push((inj[part_of((j, j))][c_in], inj[part_of((i, j))][c_in]));
        }
    }
    let theta = big.congruence_generated(&pairs);
    let (act, proj) = big.quotient(&theta);

    // Incomparability keeps the gluing from collapsing inside any one copy,
    // and the quotient from losing regularity; check both anyway.
    let mut cells = BTreeMap::new();
    for (idx, &cell) in cell_ids.iter().enumerate() {
        let classes: Vec<usize> = inj[idx].iter().map(|&p| proj[p]).collect();
        let distinct = ElementSet::new(classes.clone());
        if distinct.len() != classes.len() {
            return Err(WitnessError::SeparationViolated {
                detail: format!("copy at cell {:?} lost points in the quotient", cell),
            });
        }
        cells.insert(cell, classes);
    }
    if regular_core(&act).len() != act.size() {
        return Err(WitnessError::SeparationViolated {
            detail: "grid quotient is not a regular act".into(),
        });
    }

    let b_points: Vec<usize> = (0..=n).map(|i| cells[&(i, 0)][b_in]).collect();
    let c_points: Vec<usize> = (0..=n).map(|j| cells[&(j, j)][c_in]).collect();
    let formula = Formula::exists(
        "z",
        Formula::and(
            Formula::eq(Term::var("x"), Term::act_var(t, "z")),
            Formula::eq(Term::var("y"), Term::act_var(s, "z")),
        ),
    );
    let witness = GridWitness { a, t, s, n, b, c, act, b_points, c_points, cells, formula };
    witness.verify_order_pattern()?;
    Ok(witness)
}

impl GridWitness {
    /// Evaluates the definable relation on every (row, column) pair and
    /// checks that it coincides with `i >= j`; returns the full matrix.
    pub fn verify_order_pattern(&self) -> Result<Vec<Vec<bool>>, WitnessError> {
        let mut matrix = Vec::with_capacity(self.n + 1);
        for i in 0..=self.n {
            let mut row = Vec::with_capacity(self.n + 1);
            for j in 0..=self.n {
                let val =
                    Valuation::new().bind("x", self.b_points[i]).bind("y", self.c_points[j]);
                let holds = eval(&self.act, &self.formula, &val)?;
                if holds != (i >= j) {
                    return Err(WitnessError::OrderPatternViolated { i, j, expected: i >= j });
                }
                row.push(holds);
            }
            matrix.push(row);
        }
        Ok(matrix)
    }
}

/// A quotient of branch-indexed copies of `S*a` in which applying the shift
/// for chain level `k` to two leaves gives the same point exactly when the
/// branches agree on their first `k` coordinates.
#[derive(Debug, Clone)]
pub struct TreeWitness {
    pub a: Elem,
    /// The user chain, ascending strictly below `S*a`.
    pub chain: Vec<Elem>,
    pub kappa: usize,
    pub depth: usize,
    /// `shift_witnesses[k] * a` is chain element `k`; the last entry moves
    /// `a` to itself and addresses the leaves.
    pub shift_witnesses: Vec<Elem>,
    pub act: FiniteAct,
    /// All branch vectors, sorted by (length after stripping trailing
    /// zeros, then lexicographically).
    pub sequences: Vec<Vec<usize>>,
    /// Quotient class of each branch's generator point.
    pub leaf_points: Vec<usize>,
    /// `prefix_points[q][k]`: the class representing branch `q`'s ancestor
    /// at level `k`; equal entries encode shared prefixes.
    pub prefix_points: Vec<Vec<usize>>,
}

fn stripped_len(seq: &[usize]) -> usize {
    let mut r = seq.len();
    while r > 0 && seq[r - 1] == 0 {
        r -= 1;
    }
    r
}

/// Builds the branching act over `S*a`: one copy of `S*a` per vector in
/// `{0..kappa}^d` where `d = chain.len()`, each copy glued to the copy of
/// its zero-padded proper prefix at the deepest shared chain point. The
/// chain must ascend strictly, `S*chain[0] ⊂ ... ⊂ S*chain[d-1] ⊂ S*a`,
/// and `a` must be in the regular core. The construction is re-verified:
/// shifting any two leaves down to level `k` identifies them exactly when
/// the branch vectors share their first `k` coordinates.
pub fn build_tree(
    m: &Arc<FiniteMonoid>,
    a: Elem,
    chain: &[Elem],
    kappa: usize,
) -> Result<TreeWitness, WitnessError> {
    if a >= m.order() {
        return Err(WitnessError::ElementOutOfRange(a));
    }
    if let Some(&x) = chain.iter().find(|&&x| x >= m.order()) {
        return Err(WitnessError::ElementOutOfRange(x));
    }
    if kappa == 0 {
        return Err(WitnessError::PreconditionFailed(
            "branching degree must be at least 1".into(),
        ));
    }
    if !monoid_regular_core(m).contains(a) {
        return Err(WitnessError::NotRegularPoint(a));
    }
    let d = chain.len();
    // Working chain: the user's levels, then `a` itself so the deepest
    // prefix points are the leaves.
    let mut full_chain = chain.to_vec();
    full_chain.push(a);
    for k in 0..d {
        let lower = m.left_ideal(full_chain[k]);
        let upper = m.left_ideal(full_chain[k + 1]);
        if !lower.is_strict_subset(&upper) {
            return Err(WitnessError::ChainNotStrict { at: k });
        }
    }

    let reg = FiniteAct::regular_representation(m.clone());
    let (cyc, emb) = reg.cyclic_subact(a);
    let mut shift_witnesses = Vec::with_capacity(d + 1);
    let mut chain_in = Vec::with_capacity(d + 1);
    for &x in &full_chain {
        let s = m
            .elements()
            .find(|&s| m.mul(s, a) == x)
            .expect("strict chain keeps every level inside S*a");
        shift_witnesses.push(s);
        chain_in.push(emb.binary_search(&x).expect("chain level lies in S*a"));
    }

    let total = kappa.checked_pow(d as u32).ok_or_else(|| {
        WitnessError::PreconditionFailed("branch count overflows".into())
    })?;
    let mut sequences: Vec<Vec<usize>> = (0..total)
        .map(|mut idx| {
            let mut seq = vec![0; d];
            for slot in seq.iter_mut() {
                *slot = idx % kappa;
                idx /= kappa;
            }
            seq
        })
        .collect();
    sequences.sort_by_key(|q| (stripped_len(q), q.clone()));
    let seq_index: BTreeMap<&[usize], usize> =
        sequences.iter().enumerate().map(|(i, q)| (q.as_slice(), i)).collect();
    let pad = |seq: &[usize], k: usize| -> Vec<usize> {
        let mut padded = vec![0; d];
        padded[..k].copy_from_slice(&seq[..k]);
        padded
    };

    let parts = vec![cyc; total];
    let (big, inj) = coproduct(m, &parts)?;
    let mut pairs = Vec::new();
    for (q, seq) in sequences.iter().enumerate() {
        let r = stripped_len(seq);
        if r >= 1 {
            let parent = seq_index[pad(seq, r - 1).as_slice()];
            pairs.push((inj[q][chain_in[r - 1]], inj[parent][chain_in[r - 1]]));
        }
    }
    let theta = big.congruence_generated(&pairs);
    let (act, proj) = big.quotient(&theta);

    let leaf_points: Vec<usize> = (0..total).map(|q| proj[inj[q][chain_in[d]]]).collect();
    let prefix_points: Vec<Vec<usize>> = sequences
        .iter()
        .map(|seq| {
            (0..=d)
                .map(|k| proj[inj[seq_index[pad(seq, k).as_slice()]][chain_in[k]]])
                .collect()
        })
        .collect();

    // Shifting a leaf must land on its recorded ancestor, and two ancestors
    // coincide exactly on a shared prefix.
    for q in 0..total {
        for k in 0..=d {
            let moved = act.apply(shift_witnesses[k], leaf_points[q]);
            if moved != prefix_points[q][k] {
                return Err(WitnessError::SeparationViolated {
                    detail: format!(
                        "branch {:?} shifted to level {} misses its ancestor",
                        sequences[q], k
                    ),
                });
            }
        }
    }
    for qi in 0..total {
        for qj in 0..total {
            for k in 0..=d {
                let same_prefix = sequences[qi][..k] == sequences[qj][..k];
                let same_point = prefix_points[qi][k] == prefix_points[qj][k];
                if same_prefix != same_point {
                    return Err(WitnessError::SeparationViolated {
                        detail: format!(
                            "branches {:?} and {:?} disagree at level {}",
                            sequences[qi], sequences[qj], k
                        ),
                    });
                }
            }
        }
    }

    Ok(TreeWitness {
        a,
        chain: chain.to_vec(),
        kappa,
        depth: d,
        shift_witnesses,
        act,
        sequences,
        leaf_points,
        prefix_points,
    })
}

/// How one cyclic translate attaches to an act: a congruence on `S*e`
/// with regular quotient, a saturated subact of identified points, and an
/// injective-on-classes hom into the target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triple {
    pub idempotent: Elem,
    /// Congruence of the cyclic subact `S*e`.
    pub theta: ActCongruence,
    /// Points of the distinguished subact, ascending.
    pub subact: Vec<usize>,
    /// Hom into the target act: (subact point, image), ascending by point.
    pub alpha: Vec<(usize, usize)>,
}

/// All triples found over one covering idempotent's translate.
#[derive(Debug, Clone)]
pub struct TriplesForIdempotent {
    pub idempotent: Elem,
    /// The cyclic subact `S*e` the triples live on.
    pub base: FiniteAct,
    /// Base point index → monoid element.
    pub carrier: Vec<usize>,
    pub triples: Vec<Triple>,
    pub overflow: bool,
}

/// Triples grouped by the idempotent cover of the regular core.
#[derive(Debug, Clone)]
pub struct TripleFamily {
    pub cover: Vec<Elem>,
    pub groups: Vec<TriplesForIdempotent>,
    pub total: usize,
    pub overflow: bool,
}

/// Subset exploration bails out above this many congruence blocks.
const SUBSET_LIMIT_BITS: usize = 20;

/// Enumerates every triple over every covering idempotent, up to `cap`
/// triples overall. Order is deterministic: cover order, then congruence
/// enumeration order, then subacts by ascending block mask, then homs in
/// lexicographic assignment order. Oversized searches set `overflow`
/// rather than running unbounded.
pub fn enumerate_triples(
    m: &Arc<FiniteMonoid>,
    target: &FiniteAct,
    cap: usize,
) -> Result<TripleFamily, WitnessError> {
    if target.monoid().fingerprint() != m.fingerprint() {
        return Err(WitnessError::Act(ActError::MonoidMismatch {
            left: m.fingerprint(),
            right: target.monoid().fingerprint(),
        }));
    }
    if cap == 0 {
        return Err(WitnessError::PreconditionFailed("cap must be at least 1".into()));
    }
    let cover = idempotent_cover(m);
    let reg = FiniteAct::regular_representation(m.clone());
    let mut groups = Vec::new();
    let mut total = 0usize;
    let mut overflow = false;
    for &e in &cover {
        let (base, carrier) = reg.cyclic_subact(e);
        let mut triples = Vec::new();
        let mut group_overflow = false;
        let enumeration = base.enumerate_congruences(cap);
        group_overflow |= enumeration.overflow;
        'congruences: for theta in &enumeration.congruences {
            let (quot, _) = base.quotient(theta);
            if regular_core(&quot).len() != quot.size() {
                continue;
            }
            let blocks = theta.blocks();
            if blocks.len() > SUBSET_LIMIT_BITS {
                group_overflow = true;
                continue;
            }
            for mask in 0u64..(1u64 << blocks.len()) {
                let mut in_subact = vec![false; base.size()];
                for (bi, block) in blocks.iter().enumerate() {
                    if mask >> bi & 1 == 1 {
                        for p in block.iter() {
                            in_subact[p] = true;
                        }
                    }
                }
                let closed = (0..base.size()).filter(|&p| in_subact[p]).all(|p| {
                    m.elements().all(|s| in_subact[base.apply(s, p)])
                });
                if !closed {
                    continue;
                }
                let subact: Vec<usize> =
                    (0..base.size()).filter(|&p| in_subact[p]).collect();
                let keep_going = for_each_hom(&base, theta, &blocks, mask, target, &mut |alpha| {
                    if total == cap {
                        overflow = true;
                        group_overflow = true;
                        return false;
                    }
                    triples.push(Triple {
                        idempotent: e,
                        theta: theta.clone(),
                        subact: subact.clone(),
                        alpha,
                    });
                    total += 1;
                    true
                });
                if !keep_going {
                    break 'congruences;
                }
            }
        }
        groups.push(TriplesForIdempotent { idempotent: e, base, carrier, triples, overflow: group_overflow });
    }
    Ok(TripleFamily { cover, groups, total, overflow })
}

/// Backtracks over homs from the masked blocks into the target, injective
/// on blocks and action-equivariant. Emits each complete hom as sorted
/// (point, image) pairs; the callback returns false to stop. Returns false
/// if stopped early.
fn for_each_hom(
    base: &FiniteAct,
    theta: &ActCongruence,
    blocks: &[ElementSet],
    mask: u64,
    target: &FiniteAct,
    emit: &mut dyn FnMut(Vec<(usize, usize)>) -> bool,
) -> bool {
    let chosen: Vec<usize> =
        (0..blocks.len()).filter(|&bi| mask >> bi & 1 == 1).collect();
    let mut assigned: Vec<Option<usize>> = vec![None; blocks.len()];
    let mut used = vec![false; target.size()];
    go(base, theta, blocks, &chosen, target, &mut assigned, &mut used, emit)
}

#[allow(clippy::too_many_arguments)]
fn go(
    base: &FiniteAct,
    theta: &ActCongruence,
    blocks: &[ElementSet],
    chosen: &[usize],
    target: &FiniteAct,
    assigned: &mut Vec<Option<usize>>,
    used: &mut Vec<bool>,
    emit: &mut dyn FnMut(Vec<(usize, usize)>) -> bool,
) -> bool {
    let next = chosen.iter().copied().find(|&bi| assigned[bi].is_none());
    let Some(start) = next else {
        let mut pairs = Vec::new();
        for &bi in chosen {
            let image = assigned[bi].expect("all chosen blocks are assigned");
            for p in blocks[bi].iter() {
                pairs.push((p, image));
            }
        }
        pairs.sort_unstable();
        return emit(pairs);
    };
    let monoid = base.monoid().clone();
    for v in 0..target.size() {
        if used[v] {
            continue;
        }
        // Propagate equivariance from one representative per block; the
        // congruence property makes that enough.
        let mut trail = Vec::new();
        let mut queue = vec![(start, v)];
        let mut ok = true;
        while let Some((bi, w)) = queue.pop() {
            match assigned[bi] {
                Some(prev) if prev == w => continue,
                Some(_) => {
                    ok = false;
                    break;
                }
                None => {
                    if used[w] {
                        ok = false;
                        break;
                    }
                    assigned[bi] = Some(w);
                    used[w] = true;
                    trail.push(bi);
                    let rep = blocks[bi].iter().next().expect("blocks are nonempty");
                    for s in monoid.elements() {
                        let image_block = theta.block_of[base.apply(s, rep)];
                        queue.push((image_block, target.apply(s, w)));
                    }
                }
            }
        }
        let keep_going = if ok {
            go(base, theta, blocks, chosen, target, assigned, used, emit)
        } else {
            true
        };
        for bi in trail {
            used[assigned[bi].expect("trail entries were assigned")] = false;
            assigned[bi] = None;
        }
        if !keep_going {
            return false;
        }
    }
    true
}

/// Re-checks every defining condition of a triple against the monoid and
/// target act, reporting the first failure in prose.
pub fn verify_triple(
    m: &Arc<FiniteMonoid>,
    target: &FiniteAct,
    t: &Triple,
) -> Result<(), String> {
    let e = t.idempotent;
    if e >= m.order() {
        return Err(format!("idempotent {e} is outside the monoid"));
    }
    if m.mul(e, e) != e {
        return Err(format!("element {e} is not idempotent"));
    }
    let reg = FiniteAct::regular_representation(m.clone());
    let (base, _carrier) = reg.cyclic_subact(e);
    if t.theta.act_fingerprint != base.fingerprint() {
        return Err("congruence belongs to a different act".into());
    }
    let theta = ActCongruence::new(&base, &t.theta.block_of).map_err(|err| err.to_string())?;

    let subact = ElementSet::new(t.subact.clone());
    if subact.len() != t.subact.len() || subact.iter().collect::<Vec<_>>() != t.subact {
        return Err("subact points are not ascending and duplicate-free".into());
    }
    if let Some(p) = subact.iter().find(|&p| p >= base.size()) {
        return Err(format!("subact point {p} is outside the translate"));
    }
    for p in subact.iter() {
        for s in m.elements() {
            if !subact.contains(base.apply(s, p)) {
                return Err(format!("subact is not closed: {s}*{p} escapes it"));
            }
        }
    }
    for p in subact.iter() {
        for q in 0..base.size() {
            if theta.same(p, q) && !subact.contains(q) {
                return Err(format!("subact is not saturated: {p} ~ {q} but {q} is missing"));
            }
        }
    }

    let domain: Vec<usize> = t.alpha.iter().map(|&(p, _)| p).collect();
    if domain != t.subact {
        return Err("hom domain differs from the subact".into());
    }
    let image: BTreeMap<usize, usize> = t.alpha.iter().copied().collect();
    if let Some(&(_, v)) = t.alpha.iter().find(|&&(_, v)| v >= target.size()) {
        return Err(format!("hom image {v} is outside the target act"));
    }
    for (&p, &v) in &image {
        for s in m.elements() {
            if image[&base.apply(s, p)] != target.apply(s, v) {
                return Err(format!("hom is not equivariant at {s}*{p}"));
            }
        }
    }
    for p in subact.iter() {
        for q in subact.iter() {
            if (image[&p] == image[&q]) != theta.same(p, q) {
                return Err(format!(
                    "hom kernel and congruence disagree on ({p}, {q})"
                ));
            }
        }
    }

    let (quot, _) = base.quotient(&theta);
    if regular_core(&quot).len() != quot.size() {
        return Err("quotient of the translate is not a regular act".into());
    }
    Ok(())
}

/// A triple recovered from an act together with the subact it maps into.
#[derive(Debug, Clone)]
pub struct ExtractedTriple {
    /// Idempotent whose annihilator equals the distinguished point's.
    pub anchor: Elem,
    pub triple: Triple,
    /// The subact the triple maps into, rebuilt as its own act.
    pub target: FiniteAct,
    /// Target point index → ambient point.
    pub target_embedding: Vec<usize>,
}

/// Reads a triple off an ambient act: the distinguished point `b0` must be
/// in the regular core, and `subact_points` must be action-closed. The
/// extraction picks an idempotent `f` with the same annihilator as `b0`,
/// a covering idempotent `e` fixing `f`, and transports `r*e ↦ r*b0`; the
/// resulting triple always verifies.
pub fn extract_triple(
    m: &Arc<FiniteMonoid>,
    ambient: &FiniteAct,
    subact_points: &[usize],
    b0: usize,
) -> Result<ExtractedTriple, WitnessError> {
    if ambient.monoid().fingerprint() != m.fingerprint() {
        return Err(WitnessError::Act(ActError::MonoidMismatch {
            left: m.fingerprint(),
            right: ambient.monoid().fingerprint(),
        }));
    }
    if b0 >= ambient.size() {
        return Err(WitnessError::Act(ActError::PointOutOfRange {
            a: b0,
            size: ambient.size(),
        }));
    }
    let (target, target_embedding) = ambient.restricted(subact_points)?;
    if !regular_core(ambient).contains(b0) {
        return Err(WitnessError::NotRegularPoint(b0));
    }
    let target_index: BTreeMap<usize, usize> =
        target_embedding.iter().enumerate().map(|(i, &p)| (p, i)).collect();

    let reg = FiniteAct::regular_representation(m.clone());
    let ann_b0 = ambient.point_annihilator(b0);
    let cover = idempotent_cover(m);
    let mut attempts = Vec::new();
    for f in m.idempotents().iter() {
        if reg.point_annihilator(f) != ann_b0 {
            continue;
        }
        for &e in &cover {
            if m.mul(e, f) != f {
                attempts.push(format!("cover idempotent {e} does not fix {f}"));
                continue;
            }
            let (base, carrier) = reg.cyclic_subact(e);
            // Transport r*e ↦ r*b0; matching annihilators make this
            // single-valued, but check rather than assume.
            let mut value: Vec<Option<usize>> = vec![None; base.size()];
            let mut consistent = true;
            for r in m.elements() {
                let x = carrier
                    .binary_search(&m.mul(r, e))
                    .expect("r*e lies in the translate");
                let v = ambient.apply(r, b0);
                match value[x] {
                    None => value[x] = Some(v),
                    Some(w) if w == v => {}
                    Some(w) => {
                        attempts.push(format!(
                            "pair (f = {f}, e = {e}) is inconsistent: point {x} maps to both {w} and {v}"
                        ));
                        consistent = false;
                        break;
                    }
                }
            }
            if !consistent {
                continue;
            }
            let value: Vec<usize> = value
                .into_iter()
                .map(|v| v.expect("every point of the translate is some r*e"))
                .collect();
            let theta = ActCongruence::new(&base, &value)
                .expect("equal transported values always form a congruence");
            let subact: Vec<usize> = (0..base.size())
                .filter(|&x| target_index.contains_key(&value[x]))
                .collect();
            let alpha: Vec<(usize, usize)> =
                subact.iter().map(|&x| (x, target_index[&value[x]])).collect();
            let triple = Triple { idempotent: e, theta, subact, alpha };
            verify_triple(m, &target, &triple)
                .expect("extracted triples satisfy every condition by construction");
            return Ok(ExtractedTriple { anchor: f, triple, target, target_embedding });
        }
    }
    if attempts.is_empty() {
        attempts.push(format!(
            "no idempotent shares the annihilator of point {b0}"
        ));
    }
    Err(WitnessError::NoCoverIdempotentApplies(attempts.join("; ")))
}

/// A coproduct of grid-indexed copies of `S*a`, glued so that the number of
/// two-step preimages over the shared bottom point is `n*(i+1)` exactly for
/// the indices `i` in the chosen set.
#[derive(Debug, Clone)]
pub struct CountingWitness {
    pub a: Elem,
    pub alpha: Elem,
    pub beta: Elem,
    /// `b = alpha*a`.
    pub b: Elem,
    /// `c = beta*b`.
    pub c: Elem,
    /// Multiplicity of the relation per step.
    pub n: usize,
    /// The encoded index set, ascending.
    pub k_set: Vec<usize>,
    /// Indices are checked for membership up to this bound.
    pub n_max: usize,
    /// The three-variable relation tying preimages together.
    pub phi: Formula,
    pub act: FiniteAct,
    /// Class of the globally glued bottom point; absent when the index set
    /// is empty.
    pub c_point: Option<usize>,
    /// Whether the counting pattern holds at each index `0..=n_max`;
    /// verified to match membership in the index set.
    pub satisfied: Vec<bool>,
}

fn formula_has_constants(f: &Formula) -> bool {
    fn term_is_constant(t: &Term) -> bool {
        matches!(t.base, crate::fo::Base::Const(_))
    }
    match f {
        Formula::Eq(l, r) => term_is_constant(l) || term_is_constant(r),
        Formula::Not(inner) => formula_has_constants(inner),
        Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
            formula_has_constants(l) || formula_has_constants(r)
        }
        Formula::Exists(_, inner)
        | Formula::Forall(_, inner)
        | Formula::ExistsCount(_, _, inner)
        | Formula::ExistsAtLeast(_, _, inner) => formula_has_constants(inner),
    }
}

/// Builds the counting act for the index set `k_set` over the descending
/// ideal chain `S*c ⊂ S*b ⊂ S*a` with `b = alpha*a` and `c = beta*b`:
/// one copy of `S*a` per cell `(i, j)` with `i` in the set and `j <= i`,
/// the `b` points glued within each index group and every `c` point glued
/// globally. `phi` is a relation in variables `x`, `y`, `z` (no point
/// constants); it must hold at `(a, b, c)`, admit solutions only in the
/// prescribed ideal layers, and pin each admissible middle point to exactly
/// `n` preimages. The profile "some `y` over the bottom point has exactly
/// `n*(i+1)` related preimages" is then re-verified to hold exactly on the
/// index set, for every index up to `n_max`.
#[allow(clippy::too_many_arguments)]
pub fn build_counting(
    m: &Arc<FiniteMonoid>,
    a: Elem,
    alpha: Elem,
    beta: Elem,
    phi: &Formula,
    n: usize,
    k_set: &[usize],
    n_max: usize,
) -> Result<CountingWitness, WitnessError> {
    for x in [a, alpha, beta] {
        if x >= m.order() {
            return Err(WitnessError::ElementOutOfRange(x));
        }
    }
    if n == 0 {
        return Err(WitnessError::PreconditionFailed(
            "multiplicity must be at least 1".into(),
        ));
    }
    let k_set = ElementSet::new(k_set.to_vec());
    if let Some(i) = k_set.iter().find(|&i| i > n_max) {
        return Err(WitnessError::PreconditionFailed(format!(
            "index {i} exceeds the bound {n_max}"
        )));
    }
    if formula_has_constants(phi) {
        return Err(WitnessError::PreconditionFailed(
            "relation formula must not name specific points".into(),
        ));
    }
    if let Some(v) = phi.free_vars().into_iter().find(|v| v != "x" && v != "y" && v != "z") {
        return Err(WitnessError::PreconditionFailed(format!(
            "relation formula uses unexpected variable {v}"
        )));
    }

    let b = m.mul(alpha, a);
    let c = m.mul(beta, b);
    let core = monoid_regular_core(m);
    for x in [a, b, c] {
        if !core.contains(x) {
            return Err(WitnessError::NotRegularPoint(x));
        }
    }
    let ia = m.left_ideal(a);
    let ib = m.left_ideal(b);
    let ic = m.left_ideal(c);
    if !ic.is_strict_subset(&ib) || !ib.is_strict_subset(&ia) {
        return Err(WitnessError::PreconditionFailed(format!(
            "principal ideals of {c}, {b}, {a} do not descend strictly"
        )));
    }

    // Solutions may only pair the top layer with the middle layer.
    let reg = FiniteAct::regular_representation(m.clone());
    for u in m.elements() {
        for v in m.elements() {
            let val = Valuation::new().bind("x", u).bind("y", v).bind("z", c);
            if eval(&reg, phi, &val)? {
                let layered = ia.contains(u)
                    && !ib.contains(u)
                    && ib.contains(v)
                    && !ic.contains(v);
                if !layered {
                    return Err(WitnessError::PreconditionFailed(format!(
                        "relation admits solution ({u}, {v}) outside the prescribed layers"
                    )));
                }
            }
        }
    }

    let (cyc, emb) = reg.cyclic_subact(a);
    let pa = emb.binary_search(&a).expect("a generates its own translate");
    let pb = emb.binary_search(&b).expect("alpha*a lies in S*a");
    let pc = emb.binary_search(&c).expect("beta*alpha*a lies in S*a");
    let anchor = Valuation::new().bind("x", pa).bind("y", pb).bind("z", pc);
    if !eval(&cyc, phi, &anchor)? {
        return Err(WitnessError::PreconditionFailed(
            "relation does not hold at the anchor triple".into(),
        ));
    }
    let guarded = Formula::and(
        phi.clone(),
        Formula::eq(Term::act_var(alpha, "x"), Term::var("y")),
    );
    let premise = Formula::forall(
        "y",
        Formula::implies(
            Formula::and(
                Formula::eq(Term::act_var(beta, "y"), Term::constant(pc)),
                Formula::exists("x", guarded.clone()),
            ),
            Formula::exists_count("x", n, guarded),
        ),
    );
    if !eval(&cyc, &premise, &Valuation::new().bind("z", pc))? {
        return Err(WitnessError::PreconditionFailed(
            "multiplicity premise fails over the generated subact".into(),
        ));
    }

    if k_set.is_empty() {
        return Ok(CountingWitness {
            a,
            alpha,
            beta,
            b,
            c,
            n,
            k_set: Vec::new(),
            n_max,
            phi: phi.clone(),
            act: FiniteAct::empty(m.clone()),
            c_point: None,
            satisfied: vec![false; n_max + 1],
        });
    }

    let cells: Vec<(usize, usize)> =
        k_set.iter().flat_map(|i| (0..=i).map(move |j| (i, j))).collect();
    let parts = vec![cyc; cells.len()];
    let (big, inj) = coproduct(m, &parts)?;
    let mut pairs = Vec::new();
    for i in k_set.iter() {
        let lead = cells.binary_search(&(i, 0)).expect("lead cell exists");
        for j in 1..=i {
            let cell = cells.binary_search(&(i, j)).expect("cell exists");
            pairs.push((inj[lead][pb], inj[cell][pb]));
        }
    }
    for idx in 1..cells.len() {
        pairs.push((inj[0][pc], inj[idx][pc]));
    }
    let theta = big.congruence_generated(&pairs);
    let (act, proj) = big.quotient(&theta);
    let c_point = proj[inj[0][pc]];

    let mut satisfied = Vec::with_capacity(n_max + 1);
    for i in 0..=n_max {
        let holds = counting_profile_holds(&act, alpha, beta, phi, n, i, c_point)?;
        let expected = k_set.contains(i);
        if holds != expected {
            return Err(WitnessError::CountingPatternViolated { index: i, expected });
        }
        satisfied.push(holds);
    }

    Ok(CountingWitness {
        a,
        alpha,
        beta,
        b,
        c,
        n,
        k_set: k_set.iter().collect(),
        n_max,
        phi: phi.clone(),
        act,
        c_point: Some(c_point),
        satisfied,
    })
}

/// Whether some `y` over `bottom` has exactly `n*(i+1)` related preimages:
/// the relation's variables bind as (preimage, middle, bottom).
fn counting_profile_holds(
    act: &FiniteAct,
    alpha: Elem,
    beta: Elem,
    phi: &Formula,
    n: usize,
    i: usize,
    bottom: usize,
) -> Result<bool, WitnessError> {
    let want = n * (i + 1);
    for y in 0..act.size() {
        if act.apply(beta, y) != bottom {
            continue;
        }
        let mut count = 0usize;
        for z in 0..act.size() {
            if act.apply(alpha, z) != y {
                continue;
            }
            let val = Valuation::new().bind("x", z).bind("y", y).bind("z", bottom);
            if eval(act, phi, &val)? {
                count += 1;
                if count > want {
                    break;
                }
            }
        }
        if count == want {
            return Ok(true);
        }
    }
    Ok(false)
}
