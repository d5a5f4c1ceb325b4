//! Exhaustive generation of small monoid tables. Element 0 is always the
//! identity, so only the products of non-identity elements vary; generation
//! backtracks over those cells in row-major order, pruning with every
//! associativity triple the filled cells already decide.

use crate::monoid::FiniteMonoid;

/// All monoid tables of the given order with identity 0, in lexicographic
/// table order. Distinct tables, not isomorphism classes: relabelings of the
/// non-identity elements appear separately.
pub fn small_monoids(order: usize) -> Vec<FiniteMonoid> {
    assert!(order >= 1, "a monoid has at least its identity");
    let n = order;
    let unfilled = n;
    let mut table = vec![unfilled; n * n];
    for k in 0..n {
        table[k] = k;
        table[k * n] = k;
    }
    let cells: Vec<(usize, usize)> =
        (1..n).flat_map(|i| (1..n).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    fill(&mut table, n, &cells, 0, &mut out);
    out
}

/// True while no fully decided associativity triple disagrees. Triples with
/// an identity factor hold by construction, so only 1..n matters.
fn consistent(table: &[usize], n: usize) -> bool {
    let unfilled = n;
    for a in 1..n {
        for b in 1..n {
            let ab = table[a * n + b];
            if ab == unfilled {
                continue;
            }
            for c in 1..n {
                let bc = table[b * n + c];
                if bc == unfilled {
                    continue;
                }
                let left = table[ab * n + c];
                let right = table[a * n + bc];
                if left == unfilled || right == unfilled {
                    continue;
                }
                if left != right {
                    return false;
                }
            }
        }
    }
    true
}

fn fill(
    table: &mut Vec<usize>,
    n: usize,
    cells: &[(usize, usize)],
    at: usize,
    out: &mut Vec<FiniteMonoid>,
) {
    if at == cells.len() {
        let m = FiniteMonoid::validate(n, table.clone(), Some(0))
            .expect("the backtracking only completes associative tables");
        out.push(m);
        return;
    }
    let (i, j) = cells[at];
    for v in 0..n {
        table[i * n + j] = v;
        if consistent(table, n) {
            fill(table, n, cells, at + 1, out);
        }
    }
    table[i * n + j] = n;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table_of(m: &FiniteMonoid) -> Vec<usize> {
        let n = m.order();
        (0..n).flat_map(|a| (0..n).map(move |b| m.mul(a, b))).collect()
    }

    /// Every identity-0 table, by trying all of them.
    fn brute(n: usize) -> Vec<Vec<usize>> {
        let cells = (n - 1) * (n - 1);
        let mut out = Vec::new();
        'next: for code in 0..n.pow(cells as u32) {
            let mut table = vec![0; n * n];
            let mut rest = code;
            for k in 0..n {
                table[k] = k;
                table[k * n] = k;
            }
            // Row-major over the variable block, most significant first, so
            // the output shares the generator's lexicographic order.
            for slot in (0..cells).rev() {
                let (i, j) = (1 + slot / (n - 1), 1 + slot % (n - 1));
                table[i * n + j] = rest % n;
                rest /= n;
            }
            for a in 1..n {
                for b in 1..n {
                    for c in 1..n {
                        if table[table[a * n + b] * n + c] != table[a * n + table[b * n + c]] {
                            continue 'next;
                        }
                    }
                }
            }
            out.push(table);
        }
        out
    }

    #[test]
    fn generation_matches_brute_force_up_to_order_four() {
        let expected_counts = [1usize, 2, 11, 156];
        for n in 1..=4 {
            let generated: Vec<Vec<usize>> =
                small_monoids(n).iter().map(table_of).collect();
            let mut brute_tables = brute(n);
            brute_tables.sort();
            let mut sorted = generated.clone();
            sorted.sort();
            assert_eq!(sorted, brute_tables, "table sets differ at order {n}");
            assert_eq!(generated, sorted, "generator is not in lexicographic order");
            assert_eq!(
                generated.len(),
                expected_counts[n - 1],
                "count changed at order {n}"
            );
        }
    }

    #[test]
    fn known_tables_are_generated() {
        let z4: Vec<usize> =
            (0..4).flat_map(|a| (0..4).map(move |b| (a + b) % 4)).collect();
        assert!(small_monoids(4).iter().any(|m| table_of(m) == z4));
        let right_zeros_adjoined = vec![0, 1, 2, 1, 1, 2, 2, 1, 2];
        assert!(small_monoids(3)
            .iter()
            .any(|m| table_of(m) == right_zeros_adjoined));
    }
}
