//! Finite example monoids: band-of-groups constructions, chains of groups,
//! a three-layer union of groups, and the small fixtures used across tests
//! and the corpus.

use thiserror::Error;

use crate::monoid::{FiniteMonoid, MonoidError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FamilyError {
    #[error("group table rejected: {reason}")]
    GNotGroup { reason: String },
    #[error("group is not abelian: {a}*{b} != {b}*{a}")]
    GNotAbelian { a: usize, b: usize },
    #[error("construction produced an inconsistent table: {source}")]
    TableInconsistent { source: MonoidError },
    #[error("bad parameters: {reason}")]
    BadParams { reason: String },
}

/// Addition table of the cyclic group of order `n`.
pub fn cyclic_group_table(n: usize) -> Vec<usize> {
    let mut t = vec![0; n * n];
    for i in 0..n {
        for j in 0..n {
            t[i * n + j] = (i + j) % n;
        }
    }
    t
}

/// Validates `table` as an abelian group; returns it as a monoid plus the
/// identity index.
fn validate_abelian_group(order: usize, table: Vec<usize>) -> Result<FiniteMonoid, FamilyError> {
    let g = FiniteMonoid::validate(order, table, None)
        .map_err(|e| FamilyError::GNotGroup { reason: e.to_string() })?;
    for a in g.elements() {
        for b in g.elements().skip(a + 1) {
            if g.mul(a, b) != g.mul(b, a) {
                return Err(FamilyError::GNotAbelian { a, b });
            }
        }
    }
    for a in g.elements() {
        if !g.elements().any(|b| g.mul(a, b) == g.identity()) {
            return Err(FamilyError::GNotGroup { reason: format!("{a} has no inverse") });
        }
    }
    Ok(g)
}

/// Grid of copies of an abelian group `G` with a twisted product
/// `⟨a,i,j⟩*⟨b,k,l⟩ = ⟨a+b+phi(k,j), i, l⟩`, plus a fresh identity.
///
/// `phi` is row-major over `(k, j)` with `k < rows` and `j < cols`.
/// Element 0 is the adjoined identity; `⟨a,i,j⟩` maps to
/// `1 + (a*rows + i)*cols + j`.
pub fn rect_band_monoid(
    group_order: usize,
    group_table: Vec<usize>,
    rows: usize,
    cols: usize,
    phi: &[usize],
) -> Result<FiniteMonoid, FamilyError> {
    if rows == 0 || cols == 0 {
        return Err(FamilyError::BadParams { reason: "rows and cols must be positive".into() });
    }
    if phi.len() != rows * cols {
        return Err(FamilyError::BadParams {
            reason: format!("phi has {} entries, expected {}", phi.len(), rows * cols),
        });
    }
    if phi.iter().any(|&v| v >= group_order) {
        return Err(FamilyError::BadParams { reason: "phi value outside the group".into() });
    }
    let g = validate_abelian_group(group_order, group_table)?;
    let order = 1 + group_order * rows * cols;
    let encode = |a: usize, i: usize, j: usize| 1 + (a * rows + i) * cols + j;
    let decode = |x: usize| {
        let x = x - 1;
        let j = x % cols;
        let rest = x / cols;
        (rest / rows, rest % rows, j)
    };
    let mut table = vec![0; order * order];
    for x in 0..order {
        for y in 0..order {
            let product = match (x, y) {
                (0, _) => y,
                (_, 0) => x,
                _ => {
                    let (a, i, j) = decode(x);
                    let (b, k, l) = decode(y);
                    let sum = g.mul(g.mul(a, b), phi[k * cols + j]);
                    encode(sum, i, l)
                }
            };
            table[x * order + y] = product;
        }
    }
    FiniteMonoid::validate(order, table, Some(0))
        .map_err(|source| FamilyError::TableInconsistent { source })
}

/// Levels `0..=top_level` of copies of `Z_modulus` with the collapsing
/// product `n_i * m_j = (n+m)_{min(i,j)}`, plus the identity.
///
/// Element 0 is the identity; `n_i` maps to `1 + i*modulus + n`. With
/// `with_shifts`, a `modulus²`-element group of shift classes `α^p β^q`
/// (exponents mod `modulus`, `α` adding 3 and `β` adding 2 to group parts)
/// is adjoined, its own identity class merged with 1.
pub fn chain_of_groups(modulus: usize, top_level: usize, with_shifts: bool) -> FiniteMonoid {
    assert!(modulus >= 1, "group modulus must be positive");
    let m = modulus;
    let k = top_level;
    let core = 1 + (k + 1) * m;
    let shifts = if with_shifts { m * m - 1 } else { 0 };
    let order = core + shifts;
    let level = |x: usize| ((x - 1) / m, (x - 1) % m);
    let enc = |i: usize, n: usize| 1 + i * m + n;
    // Shift classes (p,q) != (0,0) in lex order; each adds 3p+2q (mod m).
    let shift_amount = |s: usize| {
        let (p, q) = ((s + 1) / m, (s + 1) % m);
        (3 * p + 2 * q) % m
    };
    let enc_shift = |p: usize, q: usize| {
        debug_assert!((p, q) != (0, 0));
        core + p * m + q - 1
    };
    let is_shift = |x: usize| x >= core;
    let mut table = vec![0; order * order];
    for x in 0..order {
        for y in 0..order {
            let product = if x == 0 {
                y
            } else if y == 0 {
                x
            } else if is_shift(x) && is_shift(y) {
                let (px, qx) = ((x - core + 1) / m, (x - core + 1) % m);
                let (py, qy) = ((y - core + 1) / m, (y - core + 1) % m);
                let (p, q) = ((px + py) % m, (qx + qy) % m);
                if (p, q) == (0, 0) {
                    0
                } else {
                    enc_shift(p, q)
                }
            } else if is_shift(x) {
                let (j, n) = level(y);
                enc(j, (n + shift_amount(x - core)) % m)
            } else if is_shift(y) {
                let (i, n) = level(x);
                enc(i, (n + shift_amount(y - core)) % m)
            } else {
                let (i, n) = level(x);
                let (j, p) = level(y);
                enc(i.min(j), (n + p) % m)
            };
            table[x * order + y] = product;
        }
    }
    FiniteMonoid::validate(order, table, Some(0))
        .expect("collapsing-chain product is associative")
}

/// Three-layer union of groups over an abelian group `H`, with `copies`
/// parallel groups in each of the three bottom families.
///
/// Families 1..3 absorb on the left; the depth-2 family sends the third
/// bottom family into the second (the one irregular cell of the product
/// table, kept verbatim); the top family acts neutrally on tags. Any
/// associativity failure is surfaced as `TableInconsistent`, never patched.
///
/// Index layout: `[f,i,a]` for bottom families `f ∈ {1,2,3}` maps to
/// `((f-1)*copies + i)*|H| + a`; the depth-2 family starts at
/// `3*copies*|H|`; the top family follows; the identity is the top
/// family's `H`-identity element.
pub fn layered_monoid(
    group_order: usize,
    group_table: Vec<usize>,
    copies: usize,
) -> Result<FiniteMonoid, FamilyError> {
    if copies == 0 {
        return Err(FamilyError::BadParams { reason: "copies must be positive".into() });
    }
    let h = validate_abelian_group(group_order, group_table)?;
    let nh = group_order;
    let n = copies;
    let order = (3 * n + 2) * nh;
    let base4 = 3 * n * nh;
    let base5 = base4 + nh;

    #[derive(Clone, Copy)]
    enum Layer {
        Bottom { family: usize, index: usize, g: usize },
        Middle { g: usize },
        Top { g: usize },
    }
    let decode = |x: usize| {
        if x >= base5 {
            Layer::Top { g: x - base5 }
        } else if x >= base4 {
            Layer::Middle { g: x - base4 }
        } else {
            let (slot, g) = (x / nh, x % nh);
            Layer::Bottom { family: slot / n + 1, index: slot % n, g }
        }
    };
    let encode_bottom =
        |family: usize, index: usize, g: usize| ((family - 1) * n + index) * nh + g;
    let group_part = |l: Layer| match l {
        Layer::Bottom { g, .. } | Layer::Middle { g } | Layer::Top { g } => g,
    };
    let mut table = vec![0; order * order];
    for x in 0..order {
        for y in 0..order {
            let lx = decode(x);
            let ly = decode(y);
            let g = h.mul(group_part(lx), group_part(ly));
            let product = match (lx, ly) {
                (Layer::Bottom { family, index, .. }, _) => encode_bottom(family, index, g),
                (Layer::Middle { .. }, Layer::Bottom { family, index, .. }) => {
                    // Family 3 collapses into family 2 here; taken as given.
                    let family = if family == 3 { 2 } else { family };
                    encode_bottom(family, index, g)
                }
                (Layer::Middle { .. }, _) => base4 + g,
                (Layer::Top { .. }, Layer::Bottom { family, index, .. }) => {
                    encode_bottom(family, index, g)
                }
                (Layer::Top { .. }, Layer::Middle { .. }) => base4 + g,
                (Layer::Top { .. }, Layer::Top { .. }) => base5 + g,
            };
            table[x * order + y] = product;
        }
    }
    let identity = base5 + h.identity();
    FiniteMonoid::validate(order, table, Some(identity))
        .map_err(|source| FamilyError::TableInconsistent { source })
}

/// `count` right zeros (`x*z = z` on the zeros) with an adjoined identity.
pub fn right_zeros_adjoined(count: usize) -> FiniteMonoid {
    let order = count + 1;
    let mut table = vec![0; order * order];
    for x in 0..order {
        for y in 0..order {
            table[x * order + y] = if y == 0 { x } else { y };
        }
    }
    FiniteMonoid::validate(order, table, Some(0)).expect("right zeros are associative")
}

/// The one-element monoid.
pub fn fixture_trivial() -> FiniteMonoid {
    FiniteMonoid::validate(1, vec![0], Some(0)).unwrap()
}

/// Two right zeros plus identity: the smallest monoid with incomparable
/// principal left ideals.
pub fn fixture_right_zero_pair() -> FiniteMonoid {
    right_zeros_adjoined(2)
}

/// Two levels of `Z_2` groups collapsing downward: ideal chain of length 3.
pub fn fixture_chain_z2() -> FiniteMonoid {
    chain_of_groups(2, 1, false)
}

/// 2×2 grid of `Z_2` groups (untwisted) plus identity, order 9.
pub fn fixture_band_2x2_z2() -> FiniteMonoid {
    rect_band_monoid(2, cyclic_group_table(2), 2, 2, &[0, 0, 0, 0]).unwrap()
}

/// `{1, a, 0}` with `a*a = 0`: the orbit of `a` matches no idempotent
/// orbit, and every other orbit reaches `a`, so the regular core is the
/// zero alone.
pub fn fixture_nilsquare() -> FiniteMonoid {
    FiniteMonoid::validate(3, vec![0, 1, 2, 1, 2, 2, 2, 2, 2], Some(0)).unwrap()
}

/// `{1, b, c}` with `b` and `c` left zeros on the tail: `b*b = b`,
/// `b*c = c`, `c*x = c`. Ideal chain `S*c ⊂ S*b ⊂ S`, and
/// `b*x = y ∧ x ≠ y` has exactly one solution pair; powers the counting
/// witness construction.
pub fn fixture_counting_probe() -> FiniteMonoid {
    FiniteMonoid::validate(3, vec![0, 1, 2, 1, 1, 2, 2, 2, 2], Some(0)).unwrap()
}

/// Three-layer union of `Z_2` groups, order 10, depth 3.
pub fn fixture_layered_z2() -> FiniteMonoid {
    layered_monoid(2, cyclic_group_table(2), 1).unwrap()
}
