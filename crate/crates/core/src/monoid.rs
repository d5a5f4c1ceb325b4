//! Finite monoids as validated multiplication tables.
//!
//! Elements are dense indices `0..order`. The table is stored row-major:
//! `table[s * order + t]` is the product `s * t`. Everything downstream
//! (ideals, kernels, band decompositions) works on these indices, so a
//! monoid can be relabeled freely without changing any verdict.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

/// Index of a monoid element.
pub type Elem = usize;

/// A sorted, duplicate-free set of element (or act point) indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Default)]
#[serde(transparent)]
pub struct ElementSet(Vec<Elem>);

impl ElementSet {
    pub fn new(mut items: Vec<Elem>) -> Self {
        items.sort_unstable();
        items.dedup();
        ElementSet(items)
    }

    pub fn empty() -> Self {
        ElementSet(Vec::new())
    }

    pub fn singleton(x: Elem) -> Self {
        ElementSet(vec![x])
    }

    pub fn full(n: usize) -> Self {
        ElementSet((0..n).collect())
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = Elem> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[Elem] {
        &self.0
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.0.iter().all(|&x| other.contains(x))
    }

    pub fn is_strict_subset(&self, other: &ElementSet) -> bool {
        self.len() < other.len() && self.is_subset(other)
    }

    pub fn union(&self, other: &ElementSet) -> ElementSet {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        ElementSet::new(v)
    }

    pub fn intersect(&self, other: &ElementSet) -> ElementSet {
        ElementSet(self.0.iter().copied().filter(|&x| other.contains(x)).collect())
    }

    pub fn difference(&self, other: &ElementSet) -> ElementSet {
        ElementSet(self.0.iter().copied().filter(|&x| !other.contains(x)).collect())
    }
}

impl FromIterator<Elem> for ElementSet {
    fn from_iter<T: IntoIterator<Item = Elem>>(iter: T) -> Self {
        ElementSet::new(iter.into_iter().collect())
    }
}

impl fmt::Display for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

/// Validation failures for multiplication tables.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum MonoidError {
    #[error("table entry at row {row}, col {col} is {value}, outside 0..{order}")]
    OutOfRange { row: Elem, col: Elem, value: usize, order: usize },
    #[error("table has {got} entries, expected {expected}")]
    BadTableSize { got: usize, expected: usize },
    #[error("not associative: ({s}*{t})*{u} = {left} but {s}*({t}*{u}) = {right}")]
    NonAssociative { s: Elem, t: Elem, u: Elem, left: Elem, right: Elem },
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("element {hint} is not an identity: {hint}*{witness} != {witness}")]
    BadIdentityHint { hint: Elem, witness: Elem },
}

/// A finite monoid: a validated multiplication table with its identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteMonoid {
    order: usize,
    table: Vec<Elem>,
    identity: Elem,
}

impl FiniteMonoid {
    /// Validates a table exhaustively: bounds, associativity, identity.
    ///
    /// `identity_hint` is checked rather than trusted.
    pub fn validate(
        order: usize,
        table: Vec<Elem>,
        identity_hint: Option<Elem>,
    ) -> Result<Self, MonoidError> {
        if table.len() != order * order {
            return Err(MonoidError::BadTableSize { got: table.len(), expected: order * order });
        }
        for s in 0..order {
            for t in 0..order {
                let v = table[s * order + t];
                if v >= order {
                    return Err(MonoidError::OutOfRange { row: s, col: t, value: v, order });
                }
            }
        }
        let mul = |s: Elem, t: Elem| table[s * order + t];
        for s in 0..order {
            for t in 0..order {
                let st = mul(s, t);
                for u in 0..order {
                    let left = mul(st, u);
                    let right = mul(s, mul(t, u));
                    if left != right {
                        return Err(MonoidError::NonAssociative { s, t, u, left, right });
                    }
                }
            }
        }
        let identity = match identity_hint {
            Some(e) => {
                for x in 0..order {
                    if mul(e, x) != x || mul(x, e) != x {
                        return Err(MonoidError::BadIdentityHint { hint: e, witness: x });
                    }
                }
                e
            }
            None => (0..order)
                .find(|&e| (0..order).all(|x| mul(e, x) == x && mul(x, e) == x))
                .ok_or(MonoidError::NoIdentity)?,
        };
        Ok(FiniteMonoid { order, table, identity })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Elem {
        self.identity
    }

    pub fn mul(&self, s: Elem, t: Elem) -> Elem {
        self.table[s * self.order + t]
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.order
    }

    pub fn table(&self) -> &[Elem] {
        &self.table
    }

    /// Stable content digest: order, identity, and the full table.
    pub fn fingerprint(&self) -> String {
        let mut hasher = Sha256::new();
        hasher.update(self.order.to_le_bytes());
        hasher.update(self.identity.to_le_bytes());
        for &v in &self.table {
            hasher.update(v.to_le_bytes());
        }
        hex_string(&hasher.finalize()[..16])
    }

    pub fn idempotents(&self) -> ElementSet {
        self.elements().filter(|&e| self.mul(e, e) == e).collect()
    }

    /// Principal left ideal `S*a` (contains `a` because of the identity).
    pub fn left_ideal(&self, a: Elem) -> ElementSet {
        self.elements().map(|s| self.mul(s, a)).collect()
    }

    /// Principal right ideal `a*S`.
    pub fn right_ideal(&self, a: Elem) -> ElementSet {
        self.elements().map(|s| self.mul(a, s)).collect()
    }

    /// Principal left ideal of `a` within the subsemigroup `t`: `T*a ∪ {a}`.
    pub fn left_ideal_in(&self, t: &ElementSet, a: Elem) -> ElementSet {
        let mut v: Vec<Elem> = t.iter().map(|s| self.mul(s, a)).collect();
        v.push(a);
        ElementSet::new(v)
    }

    /// Principal right ideal of `a` within the subsemigroup `t`: `a*T ∪ {a}`.
    pub fn right_ideal_in(&self, t: &ElementSet, a: Elem) -> ElementSet {
        let mut v: Vec<Elem> = t.iter().map(|s| self.mul(a, s)).collect();
        v.push(a);
        ElementSet::new(v)
    }

    /// True iff `ideal` is a minimal principal left ideal, i.e. every member
    /// generates the same ideal back.
    pub fn is_minimal_left_ideal(&self, ideal: &ElementSet) -> bool {
        !ideal.is_empty() && ideal.iter().all(|b| &self.left_ideal(b) == ideal)
    }

    /// Union of all minimal principal left ideals.
    pub fn kernel(&self) -> ElementSet {
        let mut out = Vec::new();
        for a in self.elements() {
            let ideal = self.left_ideal(a);
            if self.is_minimal_left_ideal(&ideal) {
                out.extend(ideal.iter());
            }
        }
        ElementSet::new(out)
    }

    /// Kernel of the subsemigroup `t`, using ideals `T*a ∪ {a}`.
    pub fn kernel_in(&self, t: &ElementSet) -> ElementSet {
        let mut out = Vec::new();
        for a in t.iter() {
            let ideal = self.left_ideal_in(t, a);
            let minimal = ideal.iter().all(|b| self.left_ideal_in(t, b) == ideal);
            if minimal {
                out.extend(ideal.iter());
            }
        }
        ElementSet::new(out)
    }

    /// The poset of distinct principal left ideals under inclusion.
    pub fn ideal_poset(&self) -> IdealPoset {
        let mut ideals: Vec<ElementSet> = Vec::new();
        let mut ideal_of = vec![0usize; self.order];
        for a in self.elements() {
            let ideal = self.left_ideal(a);
            let idx = match ideals.iter().position(|i| *i == ideal) {
                Some(i) => i,
                None => {
                    ideals.push(ideal);
                    ideals.len() - 1
                }
            };
            ideal_of[a] = idx;
        }
        // Canonical node order: by size, then by membership, so reports and
        // fingerprints do not depend on generator discovery order.
        let mut perm: Vec<usize> = (0..ideals.len()).collect();
        perm.sort_by(|&i, &j| {
            (ideals[i].len(), ideals[i].as_slice()).cmp(&(ideals[j].len(), ideals[j].as_slice()))
        });
        let mut rank = vec![0usize; perm.len()];
        for (new_idx, &old_idx) in perm.iter().enumerate() {
            rank[old_idx] = new_idx;
        }
        let ideals: Vec<ElementSet> = perm.iter().map(|&i| ideals[i].clone()).collect();
        for slot in ideal_of.iter_mut() {
            *slot = rank[*slot];
        }
        let mut strictly_below = Vec::new();
        for i in 0..ideals.len() {
            for j in 0..ideals.len() {
                if i != j && ideals[i].is_strict_subset(&ideals[j]) {
                    strictly_below.push((i, j));
                }
            }
        }
        IdealPoset { ideals, strictly_below, ideal_of }
    }

    /// Longest chain of principal left ideals, counted by number of ideals.
    ///
    /// The trivial monoid has depth 1: its single ideal is the whole chain.
    pub fn depth(&self) -> usize {
        self.ideal_poset().depth()
    }

    /// Depth of the subsemigroup `t` over its own principal left ideals.
    pub fn depth_in(&self, t: &ElementSet) -> usize {
        let mut ideals: Vec<ElementSet> = Vec::new();
        for a in t.iter() {
            let ideal = self.left_ideal_in(t, a);
            if !ideals.contains(&ideal) {
                ideals.push(ideal);
            }
        }
        longest_chain(&ideals)
    }

    /// All elements `a` with `e*a = a*e = a`, verified to form a group.
    ///
    /// Requires `e` idempotent and `S*e` minimal; those are exactly the
    /// elements whose component is a group rather than just a submonoid.
    pub fn group_component(&self, e: Elem) -> Result<GroupComponent, GroupComponentError> {
        if self.mul(e, e) != e {
            return Err(GroupComponentError::NotIdempotent { element: e });
        }
        if !self.is_minimal_left_ideal(&self.left_ideal(e)) {
            return Err(GroupComponentError::IdealNotMinimal { element: e });
        }
        let members: ElementSet = self
            .elements()
            .filter(|&a| self.mul(e, a) == a && self.mul(a, e) == a)
            .collect();
        let mut inverse = BTreeMap::new();
        for a in members.iter() {
            let inv = members
                .iter()
                .find(|&b| self.mul(a, b) == e && self.mul(b, a) == e)
                .ok_or(GroupComponentError::NotAGroup { unit: e, member: a })?;
            inverse.insert(a, inv);
        }
        for a in members.iter() {
            for b in members.iter() {
                // Closure holds by definition of the component; keep the
                // check so a bad table cannot smuggle in a non-group.
                if !members.contains(self.mul(a, b)) {
                    return Err(GroupComponentError::NotAGroup { unit: e, member: a });
                }
            }
        }
        Ok(GroupComponent { unit: e, members, inverse })
    }

    /// Incomparable pair of principal left ideals, if any.
    pub fn incomparable_ideals(&self) -> Option<(Elem, Elem)> {
        for a in self.elements() {
            let ia = self.left_ideal(a);
            for b in self.elements().skip(a + 1) {
                let ib = self.left_ideal(b);
                if !ia.is_subset(&ib) && !ib.is_subset(&ia) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    /// True iff the principal left ideals form a chain.
    pub fn is_linearly_ordered(&self) -> bool {
        self.incomparable_ideals().is_none()
    }

    /// For each anchor `a` in `r`, the ideals below `S*a` must form a chain.
    /// Returns the first violation `(a, b, c)` with `S*b`, `S*c` incomparable
    /// inside `S*a`.
    pub fn regular_order_violation(&self, r: &ElementSet) -> Option<(Elem, Elem, Elem)> {
        for a in r.iter() {
            let ia = self.left_ideal(a);
            let below: Vec<Elem> =
                self.elements().filter(|&b| self.left_ideal(b).is_subset(&ia)).collect();
            for (i, &b) in below.iter().enumerate() {
                let ib = self.left_ideal(b);
                for &c in &below[i + 1..] {
                    let ic = self.left_ideal(c);
                    if !ib.is_subset(&ic) && !ic.is_subset(&ib) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    /// Applies a relabeling permutation; the result is the same monoid up to
    /// renaming, used to check that verdicts are label-independent.
    pub fn relabeled(&self, perm: &[Elem]) -> FiniteMonoid {
        assert_eq!(perm.len(), self.order);
        let mut table = vec![0; self.order * self.order];
        for s in 0..self.order {
            for t in 0..self.order {
                table[perm[s] * self.order + perm[t]] = perm[self.mul(s, t)];
            }
        }
        FiniteMonoid { order: self.order, table, identity: perm[self.identity] }
    }

    /// Shared handle used by acts.
    pub fn into_arc(self) -> Arc<FiniteMonoid> {
        Arc::new(self)
    }
}

pub(crate) fn hex_string(bytes: &[u8]) -> String {
    let mut s = String::with_capacity(bytes.len() * 2);
    for b in bytes {
        s.push_str(&format!("{b:02x}"));
    }
    s
}

/// Distinct principal left ideals with their strict-inclusion relation.
#[derive(Debug, Clone)]
pub struct IdealPoset {
    /// Canonically ordered: by size, then membership.
    pub ideals: Vec<ElementSet>,
    /// Pairs `(i, j)` with `ideals[i]` strictly contained in `ideals[j]`.
    pub strictly_below: Vec<(usize, usize)>,
    /// For each element, the index of its principal left ideal.
    pub ideal_of: Vec<usize>,
}

impl IdealPoset {
    pub fn depth(&self) -> usize {
        longest_chain(&self.ideals)
    }

    pub fn is_chain(&self) -> bool {
        let n = self.ideals.len();
        // A poset of n nodes is a chain iff it has n*(n-1)/2 strict pairs.
        self.strictly_below.len() == n * (n - 1) / 2
    }
}

fn longest_chain(ideals: &[ElementSet]) -> usize {
    let n = ideals.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| ideals[i].len());
    let mut best = vec![1usize; n];
    let mut overall = 0usize;
    for (pos, &i) in order.iter().enumerate() {
        for &j in &order[..pos] {
            if ideals[j].is_strict_subset(&ideals[i]) {
                best[i] = best[i].max(best[j] + 1);
            }
        }
        overall = overall.max(best[i]);
    }
    overall
}

/// Failures of [`FiniteMonoid::group_component`].
#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupComponentError {
    #[error("element {element} is not idempotent")]
    NotIdempotent { element: Elem },
    #[error("left ideal of {element} is not minimal")]
    IdealNotMinimal { element: Elem },
    #[error("component of {unit} is not a group: {member} has no inverse")]
    NotAGroup { unit: Elem, member: Elem },
}

/// A maximal subgroup: its unit, its members, and the inverse map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupComponent {
    pub unit: Elem,
    pub members: ElementSet,
    pub inverse: BTreeMap<Elem, Elem>,
}

/// Failures of [`rect_band_decompose`].
#[derive(Debug, Error, PartialEq, Eq)]
pub enum BandError {
    #[error("subset is not a subsemigroup: {x}*{y} = {product} is outside it")]
    NotSubsemigroup { x: Elem, y: Elem, product: Elem },
    #[error("no idempotent in the component of {member}")]
    CellWithoutIdempotent { member: Elem },
    #[error("component of idempotent {unit} is not a group: witness {member}")]
    CellNotGroup { unit: Elem, member: Elem },
    #[error("product {x}*{y} = {product} lands outside component ({row},{col})")]
    ProductLeavesCell { x: Elem, y: Elem, product: Elem, row: usize, col: usize },
    #[error("grid position ({row},{col}) has no elements")]
    MissingCell { row: usize, col: usize },
    #[error("decomposition has {cols} columns, expected exactly 1")]
    JNotSingleton { cols: usize },
}

/// A subsemigroup split into a grid of groups: rows share a principal right
/// ideal, columns share a principal left ideal, and products stay in the
/// row of the left factor and the column of the right factor.
#[derive(Debug, Clone)]
pub struct RectBandDecomposition {
    pub rows: usize,
    pub cols: usize,
    /// Component of each member.
    pub cell_of: BTreeMap<Elem, (usize, usize)>,
    /// Unit of each component.
    pub idempotent: Vec<Vec<Elem>>,
    /// Group structure of each component.
    pub groups: Vec<Vec<GroupComponent>>,
}

impl RectBandDecomposition {
    pub fn cell_members(&self, row: usize, col: usize) -> &ElementSet {
        &self.groups[row][col].members
    }

    pub fn members(&self) -> ElementSet {
        self.cell_of.keys().copied().collect()
    }
}

/// Splits `t` into a rectangular band of groups, or reports why it is not one.
pub fn rect_band_decompose(
    m: &FiniteMonoid,
    t: &ElementSet,
) -> Result<RectBandDecomposition, BandError> {
    for x in t.iter() {
        for y in t.iter() {
            let p = m.mul(x, y);
            if !t.contains(p) {
                return Err(BandError::NotSubsemigroup { x, y, product: p });
            }
        }
    }
    // Row = shared principal right ideal, column = shared principal left
    // ideal; both keyed canonically so indices are deterministic.
    let mut row_keys: Vec<ElementSet> = Vec::new();
    let mut col_keys: Vec<ElementSet> = Vec::new();
    for a in t.iter() {
        let rk = m.right_ideal_in(t, a);
        if !row_keys.contains(&rk) {
            row_keys.push(rk);
        }
        let ck = m.left_ideal_in(t, a);
        if !col_keys.contains(&ck) {
            col_keys.push(ck);
        }
    }
    row_keys.sort();
    col_keys.sort();
    let rows = row_keys.len();
    let cols = col_keys.len();
    let mut cell_of = BTreeMap::new();
    for a in t.iter() {
        let r = row_keys.iter().position(|k| *k == m.right_ideal_in(t, a)).unwrap();
        let c = col_keys.iter().position(|k| *k == m.left_ideal_in(t, a)).unwrap();
        cell_of.insert(a, (r, c));
    }
    let mut cell_members = vec![vec![Vec::new(); cols]; rows];
    for (&a, &(r, c)) in &cell_of {
        cell_members[r][c].push(a);
    }
    let mut idempotent = vec![vec![0; cols]; rows];
    let mut groups: Vec<Vec<GroupComponent>> = Vec::new();
    for r in 0..rows {
        let mut row_groups = Vec::new();
        for c in 0..cols {
            let members = ElementSet::new(cell_members[r][c].clone());
            if members.is_empty() {
                return Err(BandError::MissingCell { row: r, col: c });
            }
            let unit = members
                .iter()
                .find(|&e| m.mul(e, e) == e)
                .ok_or(BandError::CellWithoutIdempotent { member: members.as_slice()[0] })?;
            let mut inverse = BTreeMap::new();
            for a in members.iter() {
                if m.mul(unit, a) != a || m.mul(a, unit) != a {
                    return Err(BandError::CellNotGroup { unit, member: a });
                }
                let inv = members
                    .iter()
                    .find(|&b| m.mul(a, b) == unit && m.mul(b, a) == unit)
                    .ok_or(BandError::CellNotGroup { unit, member: a })?;
                inverse.insert(a, inv);
            }
            idempotent[r][c] = unit;
            row_groups.push(GroupComponent { unit, members, inverse });
        }
        groups.push(row_groups);
    }
    for x in t.iter() {
        let (r, _) = cell_of[&x];
        for y in t.iter() {
            let (_, c) = cell_of[&y];
            let p = m.mul(x, y);
            if cell_of[&p] != (r, c) {
                return Err(BandError::ProductLeavesCell { x, y, product: p, row: r, col: c });
            }
        }
    }
    Ok(RectBandDecomposition { rows, cols, cell_of, idempotent, groups })
}

/// Single-column band rewritten as pairs `(group element, row)` with the
/// left-index-wins law `(c,j)*(d,k) = (c*d, j)`.
#[derive(Debug, Clone)]
pub struct NormalFormJ1 {
    /// The base group: the component in row 0.
    pub group: GroupComponent,
    pub rows: usize,
    /// `iso[g][row]` is the monoid element `e_row * g`.
    pub iso: Vec<Vec<Elem>>,
}

/// Rewrites a single-column band of groups in pair normal form and verifies
/// the isomorphism on every product.
pub fn band_normal_form_j1(
    m: &FiniteMonoid,
    t: &ElementSet,
) -> Result<NormalFormJ1, BandError> {
    let decomp = rect_band_decompose(m, t)?;
    if decomp.cols != 1 {
        return Err(BandError::JNotSingleton { cols: decomp.cols });
    }
    let group = decomp.groups[0][0].clone();
    let rows = decomp.rows;
    let base: Vec<Elem> = group.members.iter().collect();
    let index_of = |g: Elem| base.iter().position(|&x| x == g).unwrap();
    let mut iso = vec![vec![0; rows]; base.len()];
    for (gi, &g) in base.iter().enumerate() {
        for (row, iso_row) in iso[gi].iter_mut().enumerate() {
            *iso_row = m.mul(decomp.idempotent[row][0], g);
        }
    }
    // Bijectivity: every band member is hit exactly once.
    let mut hit: Vec<Elem> = iso.iter().flatten().copied().collect();
    hit.sort_unstable();
    hit.dedup();
    if hit.len() != t.len() || !ElementSet(hit).is_subset(t) {
        return Err(BandError::CellNotGroup { unit: group.unit, member: base[0] });
    }
    // The pair law must transport to the original product for all pairs.
    for (gi, &g) in base.iter().enumerate() {
        for j in 0..rows {
            for (hi, &h) in base.iter().enumerate() {
                for k in 0..rows {
                    let lhs = m.mul(iso[gi][j], iso[hi][k]);
                    let prod = index_of(m.mul(g, h));
                    if lhs != iso[prod][j] {
                        return Err(BandError::ProductLeavesCell {
                            x: iso[gi][j],
                            y: iso[hi][k],
                            product: lhs,
                            row: j,
                            col: 0,
                        });
                    }
                }
            }
        }
    }
    Ok(NormalFormJ1 { group, rows, iso })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trivial() -> FiniteMonoid {
        FiniteMonoid::validate(1, vec![0], None).unwrap()
    }

    /// Two right zeros plus an identity: s*t = t on {x, y}.
    fn right_zero_pair() -> FiniteMonoid {
        // elements: 0 = identity, 1 = x, 2 = y
        FiniteMonoid::validate(3, vec![0, 1, 2, 1, 1, 2, 2, 1, 2], None).unwrap()
    }

    #[test]
    fn validate_rejects_non_associative_table() {
        // 0 identity; 1*1 = 0 and 1*2 = 1 clash: (1*1)*2 = 2, 1*(1*2) = 0.
        let err = FiniteMonoid::validate(3, vec![0, 1, 2, 1, 0, 1, 2, 1, 0], None).unwrap_err();
        assert!(matches!(err, MonoidError::NonAssociative { .. }));
    }

    #[test]
    fn validate_finds_identity_without_hint() {
        let m = right_zero_pair();
        assert_eq!(m.identity(), 0);
    }

    #[test]
    fn validate_rejects_bad_identity_hint() {
        let err = FiniteMonoid::validate(3, vec![0, 1, 2, 1, 1, 2, 2, 1, 2], Some(1)).unwrap_err();
        assert!(matches!(err, MonoidError::BadIdentityHint { hint: 1, .. }));
    }

    #[test]
    fn right_zero_pair_ideals_and_kernel() {
        let m = right_zero_pair();
        assert_eq!(m.left_ideal(1), ElementSet::new(vec![1]));
        assert_eq!(m.left_ideal(2), ElementSet::new(vec![2]));
        assert_eq!(m.left_ideal(0), ElementSet::full(3));
        assert_eq!(m.kernel(), ElementSet::new(vec![1, 2]));
        assert_eq!(m.idempotents(), ElementSet::full(3));
        assert_eq!(m.depth(), 2);
        assert!(!m.is_linearly_ordered());
    }

    #[test]
    fn trivial_monoid_depth_is_one() {
        let m = trivial();
        assert_eq!(m.depth(), 1);
        assert_eq!(m.kernel(), ElementSet::singleton(0));
        assert!(m.is_linearly_ordered());
    }

    #[test]
    fn group_component_of_right_zero() {
        let m = right_zero_pair();
        let g = m.group_component(1).unwrap();
        assert_eq!(g.members, ElementSet::singleton(1));
        assert_eq!(
            m.group_component(0).unwrap_err(),
            GroupComponentError::IdealNotMinimal { element: 0 }
        );
    }

    #[test]
    fn depth_is_relabeling_invariant() {
        let m = right_zero_pair();
        let n = m.relabeled(&[2, 0, 1]);
        assert_eq!(m.depth(), n.depth());
        assert_eq!(m.kernel().len(), n.kernel().len());
    }

    #[test]
    fn kernel_of_right_zero_pair_is_a_band() {
        let m = right_zero_pair();
        let d = rect_band_decompose(&m, &m.kernel()).unwrap();
        assert_eq!((d.rows, d.cols), (1, 2));
        assert_eq!(d.groups[0][0].members.len(), 1);
    }

    #[test]
    fn whole_monoid_is_not_a_band() {
        let m = right_zero_pair();
        let err = rect_band_decompose(&m, &ElementSet::full(3));
        assert!(err.is_err());
    }
}
