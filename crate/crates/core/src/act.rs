//! Finite acts over a finite monoid: carriers with a validated action,
//! cyclic subacts, coproducts, congruences, quotients, and pointed
//! isomorphisms between cyclic subacts.
//!
//! Acts hold an `Arc` to their monoid plus its fingerprint; operations that
//! combine acts check the fingerprints rather than deep-comparing tables.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::Rng;
use thiserror::Error;

use crate::monoid::{hex_string, Elem, ElementSet, FiniteMonoid};

/// Validation and composition failures for acts.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ActError {
    #[error("action entry for element {s}, point {a} is {value}, outside 0..{size}")]
    OutOfRange { s: Elem, a: usize, value: usize, size: usize },
    #[error("action table has {got} entries, expected {expected}")]
    BadTableSize { got: usize, expected: usize },
    #[error("action law broken: ({s}*{t})*{a} != {s}*({t}*{a})")]
    ActionLawViolated { s: Elem, t: Elem, a: usize },
    #[error("identity law broken: 1*{a} != {a}")]
    IdentityLawViolated { a: usize },
    #[error("acts are over different monoids ({left} vs {right})")]
    MonoidMismatch { left: String, right: String },
    #[error("point {a} outside carrier 0..{size}")]
    PointOutOfRange { a: usize, size: usize },
    #[error("partition is not left-compatible: {a} ~ {b} but {s}*{a} !~ {s}*{b}")]
    NotLeftCompatible { s: Elem, a: usize, b: usize },
    #[error("partition vector has {got} entries, expected {expected}")]
    BadPartitionSize { got: usize, expected: usize },
    #[error("point set is not closed: {s}*{a} = {image} is outside it")]
    NotClosed { s: Elem, a: usize, image: usize },
}

/// A finite act: points `0..size` with `action[s * size + a]` giving `s*a`.
#[derive(Debug, Clone)]
pub struct FiniteAct {
    monoid: Arc<FiniteMonoid>,
    size: usize,
    action: Vec<usize>,
    /// Optional display names for points; not part of act identity.
    pub labels: BTreeMap<usize, String>,
}

impl PartialEq for FiniteAct {
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size
            && self.action == other.action
            && self.monoid.fingerprint() == other.monoid.fingerprint()
    }
}
impl Eq for FiniteAct {}

impl FiniteAct {
    /// Validates bounds, the identity law, and the associativity law.
    pub fn validate(
        monoid: Arc<FiniteMonoid>,
        size: usize,
        action: Vec<usize>,
    ) -> Result<Self, ActError> {
        let n = monoid.order();
        if action.len() != n * size {
            return Err(ActError::BadTableSize { got: action.len(), expected: n * size });
        }
        for s in 0..n {
            for a in 0..size {
                let v = action[s * size + a];
                if v >= size {
                    return Err(ActError::OutOfRange { s, a, value: v, size });
                }
            }
        }
        let apply = |s: Elem, a: usize| action[s * size + a];
        for a in 0..size {
            if apply(monoid.identity(), a) != a {
                return Err(ActError::IdentityLawViolated { a });
            }
        }
        for s in 0..n {
            for t in 0..n {
                let st = monoid.mul(s, t);
                for a in 0..size {
                    if apply(st, a) != apply(s, apply(t, a)) {
                        return Err(ActError::ActionLawViolated { s, t, a });
                    }
                }
            }
        }
        Ok(FiniteAct { monoid, size, action, labels: BTreeMap::new() })
    }

    /// The empty act (no points) over `monoid`.
    pub fn empty(monoid: Arc<FiniteMonoid>) -> Self {
        FiniteAct { monoid, size: 0, action: Vec::new(), labels: BTreeMap::new() }
    }

    /// The monoid acting on itself by left multiplication.
    pub fn regular_representation(monoid: Arc<FiniteMonoid>) -> Self {
        let n = monoid.order();
        let mut action = vec![0; n * n];
        for s in 0..n {
            for a in 0..n {
                action[s * n + a] = monoid.mul(s, a);
            }
        }
        FiniteAct { monoid, size: n, action, labels: BTreeMap::new() }
    }

    pub fn monoid(&self) -> &Arc<FiniteMonoid> {
        &self.monoid
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn apply(&self, s: Elem, a: usize) -> usize {
        self.action[s * self.size + a]
    }

    pub fn points(&self) -> impl Iterator<Item = usize> {
        0..self.size
    }

    /// Stable content digest over the monoid fingerprint and the action.
    pub fn fingerprint(&self) -> String {
        use sha2::{Digest, Sha256};
        let mut hasher = Sha256::new();
        hasher.update(self.monoid.fingerprint().as_bytes());
        hasher.update(self.size.to_le_bytes());
        for &v in &self.action {
            hasher.update(v.to_le_bytes());
        }
        hex_string(&hasher.finalize()[..16])
    }

    /// Orbit `S*a` as a set of points.
    pub fn orbit(&self, a: usize) -> ElementSet {
        self.monoid.elements().map(|s| self.apply(s, a)).collect()
    }

    /// The subact on `S*a`: carrier sorted ascending, plus the embedding
    /// (new index → original point).
    pub fn cyclic_subact(&self, a: usize) -> (FiniteAct, Vec<usize>) {
        let carrier = self.orbit(a);
        let embedding: Vec<usize> = carrier.iter().collect();
        let index_of: BTreeMap<usize, usize> =
            embedding.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let size = embedding.len();
        let n = self.monoid.order();
        let mut action = vec![0; n * size];
        for s in 0..n {
            for (i, &p) in embedding.iter().enumerate() {
                action[s * size + i] = index_of[&self.apply(s, p)];
            }
        }
        let act =
            FiniteAct { monoid: self.monoid.clone(), size, action, labels: BTreeMap::new() };
        (act, embedding)
    }

    /// The subact on a closed point set: carrier sorted ascending, plus the
    /// embedding (new index → original point). Errors on the first pair
    /// `(s, p)` whose image escapes the set.
    pub fn restricted(&self, points: &[usize]) -> Result<(FiniteAct, Vec<usize>), ActError> {
        let embedding: Vec<usize> = ElementSet::new(points.to_vec()).iter().collect();
        if let Some(&a) = embedding.iter().find(|&&a| a >= self.size) {
            return Err(ActError::PointOutOfRange { a, size: self.size });
        }
        let index_of: BTreeMap<usize, usize> =
            embedding.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let size = embedding.len();
        let n = self.monoid.order();
        let mut action = vec![0; n * size];
        for s in 0..n {
            for (i, &p) in embedding.iter().enumerate() {
                let image = self.apply(s, p);
                match index_of.get(&image) {
                    Some(&j) => action[s * size + i] = j,
                    None => return Err(ActError::NotClosed { s, a: p, image }),
                }
            }
        }
        let act =
            FiniteAct { monoid: self.monoid.clone(), size, action, labels: BTreeMap::new() };
        Ok((act, embedding))
    }

    /// Partition of `S` by equal action on `a`, in first-occurrence normal
    /// form: `block[s] == block[t]` iff `s*a == t*a`.
    pub fn point_annihilator(&self, a: usize) -> Vec<usize> {
        let mut first_seen: BTreeMap<usize, usize> = BTreeMap::new();
        let mut block = Vec::with_capacity(self.monoid.order());
        for s in self.monoid.elements() {
            let image = self.apply(s, a);
            let next = first_seen.len();
            block.push(*first_seen.entry(image).or_insert(next));
        }
        block
    }

    /// Least left-compatible equivalence containing `pairs`.
    pub fn congruence_generated(&self, pairs: &[(usize, usize)]) -> ActCongruence {
        let mut uf = UnionFind::new(self.size);
        let mut work: Vec<(usize, usize)> = pairs.to_vec();
        while let Some((x, y)) = work.pop() {
            if uf.unite(x, y) {
                for s in self.monoid.elements() {
                    work.push((self.apply(s, x), self.apply(s, y)));
                }
            }
        }
        let block_of: Vec<usize> = (0..self.size).map(|x| uf.find(x)).collect();
        ActCongruence::from_raw_blocks(self, &block_of)
    }

    /// Quotient act on the congruence blocks, with the projection map.
    /// The result is re-validated: left-compatibility guarantees the action
    /// is well-defined, and the laws transfer.
    pub fn quotient(&self, theta: &ActCongruence) -> (FiniteAct, Vec<usize>) {
        assert_eq!(theta.block_of.len(), self.size, "congruence is for a different carrier");
        let size = theta.num_blocks();
        let n = self.monoid.order();
        let mut action = vec![usize::MAX; n * size];
        for s in 0..n {
            for a in 0..self.size {
                action[s * size + theta.block_of[a]] = theta.block_of[self.apply(s, a)];
            }
        }
        let act = FiniteAct::validate(self.monoid.clone(), size, action)
            .expect("quotient of a left-compatible partition is a valid act");
        (act, theta.block_of.clone())
    }

    /// Connected components: symmetric-reachability closure of `a ↦ s*a`.
    /// The result is itself left-compatible.
    pub fn connectivity(&self) -> ActCongruence {
        let mut uf = UnionFind::new(self.size);
        for a in 0..self.size {
            for s in self.monoid.elements() {
                uf.unite(a, self.apply(s, a));
            }
        }
        let block_of: Vec<usize> = (0..self.size).map(|x| uf.find(x)).collect();
        ActCongruence::from_raw_blocks(self, &block_of)
    }

    /// True iff `theta` never merges two distinct points of one connected
    /// component.
    pub fn is_amalgam(&self, theta: &ActCongruence) -> bool {
        let comp = self.connectivity();
        for a in 0..self.size {
            for b in a + 1..self.size {
                if theta.same(a, b) && comp.same(a, b) {
                    return false;
                }
            }
        }
        true
    }

    /// Carrier permuted by `perm` (old point `a` becomes `perm[a]`); the
    /// result is isomorphic to `self`, used for label-invariance tests.
    pub fn relabeled(&self, perm: &[usize]) -> FiniteAct {
        assert_eq!(perm.len(), self.size);
        let n = self.monoid.order();
        let mut action = vec![0; n * self.size];
        for s in 0..n {
            for a in 0..self.size {
                action[s * self.size + perm[a]] = perm[self.apply(s, a)];
            }
        }
        FiniteAct {
            monoid: self.monoid.clone(),
            size: self.size,
            action,
            labels: BTreeMap::new(),
        }
    }

    /// All left-compatible partitions of the carrier, finest first, then by
    /// the first-occurrence block vector. Exploration stops once `cap`
    /// distinct congruences have been found; `overflow` marks truncation.
    pub fn enumerate_congruences(&self, cap: usize) -> CongruenceEnumeration {
        assert!(cap >= 1);
        let identity: Vec<usize> = (0..self.size).collect();
        let mut seen = std::collections::BTreeSet::new();
        seen.insert(identity.clone());
        let mut queue = std::collections::VecDeque::new();
        queue.push_back(identity);
        let mut overflow = false;
        // Every left congruence is a join of single-pair congruences, so
        // breadth-first joining reaches the whole lattice.
        'bfs: while let Some(cur) = queue.pop_front() {
            for a in 0..self.size {
                for b in a + 1..self.size {
                    if cur[a] == cur[b] {
                        continue;
                    }
                    let mut pairs: Vec<(usize, usize)> = vec![(a, b)];
                    let mut rep: BTreeMap<usize, usize> = BTreeMap::new();
                    for (x, &blk) in cur.iter().enumerate() {
                        if let Some(&r) = rep.get(&blk) {
                            pairs.push((r, x));
                        } else {
                            rep.insert(blk, x);
                        }
                    }
                    let joined = self.congruence_generated(&pairs).block_of;
                    if !seen.contains(&joined) {
                        if seen.len() == cap {
                            overflow = true;
                            break 'bfs;
                        }
                        seen.insert(joined.clone());
                        queue.push_back(joined);
                    }
                }
            }
        }
        let mut vectors: Vec<Vec<usize>> = seen.into_iter().collect();
        vectors.sort_by(|p, q| {
            let bp = p.iter().max().map_or(0, |m| m + 1);
            let bq = q.iter().max().map_or(0, |m| m + 1);
            bq.cmp(&bp).then_with(|| p.cmp(q))
        });
        let congruences =
            vectors.into_iter().map(|v| ActCongruence::from_normal_form(self, v)).collect();
        CongruenceEnumeration { congruences, overflow }
    }
}

/// Disjoint union of acts over one monoid, with one injection per part.
pub fn coproduct(
    monoid: &Arc<FiniteMonoid>,
    parts: &[FiniteAct],
) -> Result<(FiniteAct, Vec<Vec<usize>>), ActError> {
    let fp = monoid.fingerprint();
    for p in parts {
        let pf = p.monoid.fingerprint();
        if pf != fp {
            return Err(ActError::MonoidMismatch { left: fp, right: pf });
        }
    }
    let size: usize = parts.iter().map(|p| p.size).sum();
    let n = monoid.order();
    let mut action = vec![0; n * size];
    let mut injections = Vec::with_capacity(parts.len());
    let mut offset = 0;
    for p in parts {
        injections.push((offset..offset + p.size).collect::<Vec<usize>>());
        for s in 0..n {
            for a in 0..p.size {
                action[s * size + offset + a] = offset + p.apply(s, a);
            }
        }
        offset += p.size;
    }
    Ok((
        FiniteAct { monoid: monoid.clone(), size, action, labels: BTreeMap::new() },
        injections,
    ))
}

/// A left-compatible partition of an act carrier.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ActCongruence {
    /// Which act this partitions.
    pub act_fingerprint: String,
    /// Block index per point, in first-occurrence normal form.
    pub block_of: Vec<usize>,
}

impl ActCongruence {
    /// Builds from an arbitrary block-id vector, normalizing ids.
    fn from_raw_blocks(act: &FiniteAct, raw: &[usize]) -> Self {
        let mut first_seen: BTreeMap<usize, usize> = BTreeMap::new();
        let block_of = raw
            .iter()
            .map(|&b| {
                let next = first_seen.len();
                *first_seen.entry(b).or_insert(next)
            })
            .collect();
        ActCongruence { act_fingerprint: act.fingerprint(), block_of }
    }

    fn from_normal_form(act: &FiniteAct, block_of: Vec<usize>) -> Self {
        ActCongruence { act_fingerprint: act.fingerprint(), block_of }
    }

    /// Validates a user-supplied partition vector against the act.
    pub fn new(act: &FiniteAct, block_of: &[usize]) -> Result<Self, ActError> {
        if block_of.len() != act.size() {
            return Err(ActError::BadPartitionSize {
                got: block_of.len(),
                expected: act.size(),
            });
        }
        let theta = ActCongruence::from_raw_blocks(act, block_of);
        for a in 0..act.size() {
            for b in a + 1..act.size() {
                if !theta.same(a, b) {
                    continue;
                }
                for s in act.monoid().elements() {
                    if !theta.same(act.apply(s, a), act.apply(s, b)) {
                        return Err(ActError::NotLeftCompatible { s, a, b });
                    }
                }
            }
        }
        Ok(theta)
    }

    pub fn same(&self, a: usize, b: usize) -> bool {
        self.block_of[a] == self.block_of[b]
    }

    pub fn num_blocks(&self) -> usize {
        self.block_of.iter().max().map_or(0, |m| m + 1)
    }

    pub fn is_identity(&self) -> bool {
        self.num_blocks() == self.block_of.len()
    }

    /// Blocks as sorted point sets, indexed by block id.
    pub fn blocks(&self) -> Vec<ElementSet> {
        let mut blocks = vec![Vec::new(); self.num_blocks()];
        for (p, &b) in self.block_of.iter().enumerate() {
            blocks[b].push(p);
        }
        blocks.into_iter().map(ElementSet::new).collect()
    }

    /// All pairs `(a, b)` with `a < b` in the same block.
    pub fn merged_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.block_of.len() {
            for b in a + 1..self.block_of.len() {
                if self.same(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }
}

/// Result of congruence enumeration; `overflow` means the count hit the cap.
#[derive(Debug, Clone)]
pub struct CongruenceEnumeration {
    pub congruences: Vec<ActCongruence>,
    pub overflow: bool,
}

/// An action-preserving point map between acts over the same monoid.
#[derive(Debug, Clone)]
pub struct ActHom {
    pub source: FiniteAct,
    pub target: FiniteAct,
    /// `map[a]` is the image of source point `a`.
    pub map: Vec<usize>,
}

impl ActHom {
    /// Checks totality, range, and `f(s*a) = s*f(a)` for all `s, a`.
    pub fn verify(&self) -> bool {
        if self.map.len() != self.source.size() {
            return false;
        }
        if self.source.monoid().fingerprint() != self.target.monoid().fingerprint() {
            return false;
        }
        for a in 0..self.source.size() {
            if self.map[a] >= self.target.size() {
                return false;
            }
            for s in self.source.monoid().elements() {
                if self.map[self.source.apply(s, a)] != self.target.apply(s, self.map[a]) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_bijective(&self) -> bool {
        if self.source.size() != self.target.size() {
            return false;
        }
        let mut hit = vec![false; self.target.size()];
        for &v in &self.map {
            if hit[v] {
                return false;
            }
            hit[v] = true;
        }
        true
    }
}

/// Isomorphism between `S*a` in `A` and `S*b` in `B` sending `a` to `b`,
/// if one exists.
///
/// The only candidate map is `s*a ↦ s*b`; it is well-defined and bijective
/// exactly when the two points have equal annihilator partitions of `S`.
pub fn pointed_iso(a_act: &FiniteAct, a: usize, b_act: &FiniteAct, b: usize) -> Option<ActHom> {
    if a_act.monoid().fingerprint() != b_act.monoid().fingerprint() {
        return None;
    }
    if a_act.point_annihilator(a) != b_act.point_annihilator(b) {
        return None;
    }
    let (ca, emb_a) = a_act.cyclic_subact(a);
    let (cb, emb_b) = b_act.cyclic_subact(b);
    let index_a: BTreeMap<usize, usize> =
        emb_a.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let index_b: BTreeMap<usize, usize> =
        emb_b.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let mut map = vec![usize::MAX; ca.size()];
    for s in a_act.monoid().elements() {
        map[index_a[&a_act.apply(s, a)]] = index_b[&b_act.apply(s, b)];
    }
    let hom = ActHom { source: ca, target: cb, map };
    debug_assert!(hom.verify() && hom.is_bijective());
    Some(hom)
}

/// Exhaustive pointed-isomorphism search, for cross-checking `pointed_iso`.
/// Tries every bijection between the two cyclic carriers that sends `a` to
/// `b`, so it is exponential; test oracle only.
pub fn pointed_iso_bruteforce(
    a_act: &FiniteAct,
    a: usize,
    b_act: &FiniteAct,
    b: usize,
) -> bool {
    if a_act.monoid().fingerprint() != b_act.monoid().fingerprint() {
        return false;
    }
    let (ca, emb_a) = a_act.cyclic_subact(a);
    let (cb, emb_b) = b_act.cyclic_subact(b);
    if ca.size() != cb.size() {
        return false;
    }
    let ai = emb_a.iter().position(|&p| p == a).unwrap();
    let bi = emb_b.iter().position(|&p| p == b).unwrap();
    let n = ca.size();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    map[ai] = bi;
    used[bi] = true;
    fn extend(
        ca: &FiniteAct,
        cb: &FiniteAct,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        pos: usize,
    ) -> bool {
        let n = ca.size();
        if pos == n {
            let hom =
                ActHom { source: ca.clone(), target: cb.clone(), map: map.clone() };
            return hom.verify();
        }
        if map[pos] != usize::MAX {
            return extend(ca, cb, map, used, pos + 1);
        }
        for cand in 0..n {
            if used[cand] {
                continue;
            }
            map[pos] = cand;
            used[cand] = true;
            // Early pruning on the action constraint keeps this usable.
            let consistent = ca.monoid().elements().all(|s| {
                let img = map[ca.apply(s, pos)];
                img == usize::MAX || img == cb.apply(s, cand)
            });
            if consistent && extend(ca, cb, map, used, pos + 1) {
                return true;
            }
            used[cand] = false;
            map[pos] = usize::MAX;
        }
        false
    }
    extend(&ca, &cb, &mut map, &mut used, 0)
}

/// Random small act for property tests: a quotient of a coproduct of random
/// cyclic subacts of the regular representation by a random generated
/// congruence. Rejection-sampled down to `max_size` points.
pub fn random_quotient_act<R: Rng>(
    monoid: &Arc<FiniteMonoid>,
    rng: &mut R,
    max_size: usize,
) -> FiniteAct {
    assert!(max_size >= 1);
    let reg = FiniteAct::regular_representation(monoid.clone());
    for _ in 0..64 {
        let k = rng.gen_range(1..=3);
        let parts: Vec<FiniteAct> = (0..k)
            .map(|_| reg.cyclic_subact(rng.gen_range(0..monoid.order())).0)
            .collect();
        let (sum, _) = coproduct(monoid, &parts).expect("same monoid by construction");
        let num_pairs = rng.gen_range(0..=2);
        let pairs: Vec<(usize, usize)> = (0..num_pairs)
            .map(|_| (rng.gen_range(0..sum.size()), rng.gen_range(0..sum.size())))
            .collect();
        let theta = sum.congruence_generated(&pairs);
        let (q, _) = sum.quotient(&theta);
        if q.size() <= max_size {
            return q;
        }
    }
    // Guaranteed small fallback: collapse one cyclic subact to a point.
    let (c, _) = reg.cyclic_subact(rng.gen_range(0..monoid.order()));
    let all: Vec<(usize, usize)> = (1..c.size()).map(|i| (0, i)).collect();
    let theta = c.congruence_generated(&all);
    c.quotient(&theta).0
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    /// Returns true iff the two were in different classes.
    fn unite(&mut self, x: usize, y: usize) -> bool {
        let rx = self.find(x);
        let ry = self.find(y);
        if rx == ry {
            return false;
        }
        // Smaller root wins: keeps block ids stable under relabeling.
        let (lo, hi) = if rx < ry { (rx, ry) } else { (ry, rx) };
        self.parent[hi] = lo;
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn right_zero_pair() -> Arc<FiniteMonoid> {
        FiniteMonoid::validate(3, vec![0, 1, 2, 1, 1, 2, 2, 1, 2], None).unwrap().into_arc()
    }

    fn z2() -> Arc<FiniteMonoid> {
        FiniteMonoid::validate(2, vec![0, 1, 1, 0], None).unwrap().into_arc()
    }

    #[test]
    fn regular_representation_validates() {
        let m = right_zero_pair();
        let a = FiniteAct::regular_representation(m.clone());
        assert_eq!(a.size(), 3);
        assert!(FiniteAct::validate(m, 3, a.action.clone()).is_ok());
    }

    #[test]
    fn identity_law_violation_detected() {
        let m = right_zero_pair();
        // One point, but the identity moves it nowhere to go: use 2 points
        // with 1 swapping them.
        let err = FiniteAct::validate(m, 2, vec![1, 0, 0, 1, 0, 1]).unwrap_err();
        assert_eq!(err, ActError::IdentityLawViolated { a: 0 });
    }

    #[test]
    fn restricted_rejects_open_sets_and_rebuilds_closed_ones() {
        let m = right_zero_pair();
        let reg = FiniteAct::regular_representation(m);
        // {1, 2} absorbs everything; {0, 1} leaks via 2*0 = 2.
        let (sub, emb) = reg.restricted(&[2, 1]).unwrap();
        assert_eq!(emb, vec![1, 2]);
        assert_eq!(sub.size(), 2);
        for s in 0..3 {
            for (i, &p) in emb.iter().enumerate() {
                assert_eq!(emb[sub.apply(s, i)], reg.apply(s, p));
            }
        }
        assert_eq!(
            reg.restricted(&[0, 1]).unwrap_err(),
            ActError::NotClosed { s: 2, a: 0, image: 2 }
        );
    }

    #[test]
    fn cyclic_subact_of_right_zero() {
        let m = right_zero_pair();
        let reg = FiniteAct::regular_representation(m);
        let (c, emb) = reg.cyclic_subact(1);
        assert_eq!(c.size(), 1);
        assert_eq!(emb, vec![1]);
        let (whole, emb1) = reg.cyclic_subact(0);
        assert_eq!(whole.size(), 3);
        assert_eq!(emb1, vec![0, 1, 2]);
    }

    #[test]
    fn coproduct_sizes_and_injections() {
        let m = right_zero_pair();
        let reg = FiniteAct::regular_representation(m.clone());
        let (x, _) = reg.cyclic_subact(1);
        let (sum, inj) = coproduct(&m, &[x.clone(), x.clone()]).unwrap();
        assert_eq!(sum.size(), 2);
        assert_eq!(inj, vec![vec![0], vec![1]]);
        let (same, _) = coproduct(&m, &[x.clone()]).unwrap();
        assert_eq!(same, x);
        // Every element fixes both points: the two sides never interact.
        assert_eq!(sum.connectivity().num_blocks(), 2);
    }

    #[test]
    fn congruence_generated_closes_under_action() {
        let m = z2();
        let reg = FiniteAct::regular_representation(m.clone());
        let (sum, _) = coproduct(&m, &[reg.clone(), reg]).unwrap();
        // Gluing 0 with 2 must also glue their images under the nonidentity
        // element: 1 with 3.
        let theta = sum.congruence_generated(&[(0, 2)]);
        assert!(theta.same(1, 3));
        assert_eq!(theta.num_blocks(), 2);
    }

    #[test]
    fn quotient_revalidates_and_projects() {
        let m = z2();
        let reg = FiniteAct::regular_representation(m.clone());
        let full = reg.congruence_generated(&[(0, 1)]);
        let (q, proj) = reg.quotient(&full);
        assert_eq!(q.size(), 1);
        assert_eq!(proj, vec![0, 0]);
    }

    #[test]
    fn amalgam_rejects_same_component_gluing() {
        let m = right_zero_pair();
        let reg = FiniteAct::regular_representation(m.clone());
        let (x, _) = reg.cyclic_subact(1);
        let (sum, _) = coproduct(&m, &[x.clone(), x]).unwrap();
        let across = ActCongruence::new(&sum, &[0, 0]).unwrap();
        assert!(sum.is_amalgam(&across));
        let inside = reg.congruence_generated(&[(1, 2)]);
        assert!(!reg.is_amalgam(&inside));
    }

    #[test]
    fn pointed_iso_matches_annihilators() {
        let m = right_zero_pair();
        let reg = FiniteAct::regular_representation(m);
        let iso = pointed_iso(&reg, 1, &reg, 2).unwrap();
        assert!(iso.verify() && iso.is_bijective());
        assert!(pointed_iso(&reg, 0, &reg, 1).is_none());
        assert!(pointed_iso_bruteforce(&reg, 1, &reg, 2));
        assert!(!pointed_iso_bruteforce(&reg, 0, &reg, 1));
    }

    #[test]
    fn pointed_iso_symmetric() {
        let m = right_zero_pair();
        let reg = FiniteAct::regular_representation(m);
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(
                    pointed_iso(&reg, a, &reg, b).is_some(),
                    pointed_iso(&reg, b, &reg, a).is_some()
                );
            }
        }
    }

    #[test]
    fn congruence_counts_on_small_acts() {
        let m = z2();
        let reg = FiniteAct::regular_representation(m.clone());
        let result = reg.enumerate_congruences(64);
        assert!(!result.overflow);
        assert_eq!(result.congruences.len(), 2);
        assert!(result.congruences[0].is_identity());

        // Trivial action on two points: all partitions qualify.
        let triv = FiniteAct::validate(m, 2, vec![0, 1, 0, 1]).unwrap();
        assert_eq!(triv.enumerate_congruences(64).congruences.len(), 2);
    }

    #[test]
    fn congruence_cap_sets_overflow() {
        let m = z2();
        let reg = FiniteAct::regular_representation(m);
        let result = reg.enumerate_congruences(1);
        assert!(result.overflow);
        assert_eq!(result.congruences.len(), 1);
    }

    #[test]
    fn random_acts_stay_small_and_valid() {
        let m = right_zero_pair();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..32 {
            let act = random_quotient_act(&m, &mut rng, 6);
            assert!(act.size() <= 6 && act.size() >= 1);
            assert!(FiniteAct::validate(m.clone(), act.size(), act.action.clone()).is_ok());
        }
    }
}
