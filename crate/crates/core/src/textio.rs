//! Text formats for monoids and acts, with line/column diagnostics.
//!
//! Monoid files: the order on the first line, then one table row per line
//! (`row s` lists `s*t` for `t = 0..n-1`), then an optional `identity=<k>`
//! trailer. Act files: a `monoid <file>` reference, the carrier size, one
//! action row per monoid element, then optional `label <idx> <name>`
//! trailers. Parsing is pure string work; the path in an act file is
//! resolved by the caller.

use std::sync::Arc;

use thiserror::Error;

use crate::act::{ActError, FiniteAct};
use crate::monoid::{FiniteMonoid, MonoidError};

/// Parse and validation failures, with 1-based line/column positions for
/// syntax problems.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum TextError {
    #[error("line {line}, col {col}: {message}")]
    Syntax { line: usize, col: usize, message: String },
    #[error("table rejected: {0}")]
    BadMonoid(#[from] MonoidError),
    #[error("action rejected: {0}")]
    BadAct(#[from] ActError),
}

fn syntax(line: usize, col: usize, message: impl Into<String>) -> TextError {
    TextError::Syntax { line, col, message: message.into() }
}

/// A line split into tokens that remember where they started.
struct Tokens<'a> {
    line: usize,
    items: Vec<(usize, &'a str)>,
}

fn tokenize(text: &str) -> Vec<Tokens<'_>> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let mut items = Vec::new();
        let mut col = 1;
        for piece in raw.split_inclusive(char::is_whitespace) {
            let token = piece.trim_end_matches(char::is_whitespace);
            if !token.is_empty() {
                items.push((col, token));
            }
            col += piece.chars().count();
        }
        // `split_inclusive` keeps a token without trailing whitespace intact.
        if !items.is_empty() {
            out.push(Tokens { line: idx + 1, items });
        }
    }
    out
}

fn parse_index(line: usize, col: usize, token: &str, bound: usize) -> Result<usize, TextError> {
    let value: usize = token
        .parse()
        .map_err(|_| syntax(line, col, format!("expected an index, found `{token}`")))?;
    if value >= bound {
        return Err(syntax(line, col, format!("index {value} out of range 0..{bound}")));
    }
    Ok(value)
}

fn parse_row(tokens: &Tokens<'_>, expected: usize, bound: usize) -> Result<Vec<usize>, TextError> {
    if tokens.items.len() != expected {
        return Err(syntax(
            tokens.line,
            tokens.items.last().map_or(1, |&(c, _)| c),
            format!("expected {expected} entries, found {}", tokens.items.len()),
        ));
    }
    tokens
        .items
        .iter()
        .map(|&(col, token)| parse_index(tokens.line, col, token, bound))
        .collect()
}

/// Parses the monoid text format and validates the table.
pub fn parse_monoid(text: &str) -> Result<FiniteMonoid, TextError> {
    let lines = tokenize(text);
    let mut cursor = lines.iter();
    let head = cursor.next().ok_or_else(|| syntax(1, 1, "empty input, expected an order"))?;
    if head.items.len() != 1 {
        return Err(syntax(head.line, head.items[1].0, "expected only the order here"));
    }
    let (col, token) = head.items[0];
    let order: usize = token
        .parse()
        .map_err(|_| syntax(head.line, col, format!("expected an order, found `{token}`")))?;
    if order == 0 {
        return Err(syntax(head.line, col, "order must be positive"));
    }
    let mut table = Vec::with_capacity(order * order);
    for _ in 0..order {
        let row = cursor.next().ok_or_else(|| {
            syntax(head.line, col, format!("expected {order} table rows"))
        })?;
        table.extend(parse_row(row, order, order)?);
    }
    let mut identity_hint = None;
    if let Some(trailer) = cursor.next() {
        let (tcol, ttoken) = trailer.items[0];
        let key = ttoken
            .strip_prefix("identity=")
            .ok_or_else(|| syntax(trailer.line, tcol, format!("unexpected line `{ttoken}`")))?;
        if trailer.items.len() != 1 {
            return Err(syntax(trailer.line, trailer.items[1].0, "unexpected trailing token"));
        }
        identity_hint = Some(parse_index(trailer.line, tcol, key, order)?);
    }
    if let Some(extra) = cursor.next() {
        return Err(syntax(extra.line, extra.items[0].0, "unexpected line after the table"));
    }
    Ok(FiniteMonoid::validate(order, table, identity_hint)?)
}

/// Renders a monoid in the text format, identity trailer included.
pub fn monoid_to_text(m: &FiniteMonoid) -> String {
    let n = m.order();
    let mut out = format!("{n}\n");
    for s in 0..n {
        let row: Vec<String> = (0..n).map(|t| m.mul(s, t).to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out.push_str(&format!("identity={}\n", m.identity()));
    out
}

/// An act file before its monoid reference is resolved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActSource {
    /// Verbatim path from the `monoid <file>` line.
    pub monoid_ref: String,
    pub size: usize,
    /// One row per monoid element, in element order.
    pub rows: Vec<Vec<usize>>,
    pub labels: Vec<(usize, String)>,
}

/// Parses the act text format. Row count against the monoid order and the
/// action laws are checked in [`act_from_source`], once the monoid is known.
pub fn parse_act(text: &str) -> Result<ActSource, TextError> {
    let lines = tokenize(text);
    let mut cursor = lines.iter().peekable();
    let head = cursor
        .next()
        .ok_or_else(|| syntax(1, 1, "empty input, expected a `monoid <file>` line"))?;
    if head.items[0].1 != "monoid" || head.items.len() != 2 {
        return Err(syntax(head.line, head.items[0].0, "expected `monoid <file>`"));
    }
    let monoid_ref = head.items[1].1.to_string();
    let size_line = cursor
        .next()
        .ok_or_else(|| syntax(head.line, 1, "expected a carrier size line"))?;
    let (scol, stoken) = size_line.items[0];
    let size: usize = stoken.parse().map_err(|_| {
        syntax(size_line.line, scol, format!("expected a carrier size, found `{stoken}`"))
    })?;
    if size == 0 {
        return Err(syntax(size_line.line, scol, "carrier size must be positive"));
    }
    if size_line.items.len() != 1 {
        return Err(syntax(size_line.line, size_line.items[1].0, "unexpected trailing token"));
    }
    let mut rows = Vec::new();
    while let Some(tokens) = cursor.peek() {
        if tokens.items[0].1 == "label" {
            break;
        }
        rows.push(parse_row(cursor.next().unwrap(), size, size)?);
    }
    let mut labels = Vec::new();
    for tokens in cursor {
        let (col, token) = tokens.items[0];
        if token != "label" || tokens.items.len() != 3 {
            return Err(syntax(tokens.line, col, "expected `label <idx> <name>`"));
        }
        let idx = parse_index(tokens.line, tokens.items[1].0, tokens.items[1].1, size)?;
        labels.push((idx, tokens.items[2].1.to_string()));
    }
    Ok(ActSource { monoid_ref, size, rows, labels })
}

/// Combines a parsed act with its resolved monoid and validates the action.
pub fn act_from_source(
    monoid: Arc<FiniteMonoid>,
    source: &ActSource,
) -> Result<FiniteAct, TextError> {
    let expected = monoid.order();
    if source.rows.len() != expected {
        return Err(TextError::BadAct(ActError::BadTableSize {
            got: source.rows.len() * source.size,
            expected: expected * source.size,
        }));
    }
    let action: Vec<usize> = source.rows.iter().flatten().copied().collect();
    let mut act = FiniteAct::validate(monoid, source.size, action)?;
    for (idx, name) in &source.labels {
        act.labels.insert(*idx, name.clone());
    }
    Ok(act)
}

/// Renders an act in the text format, labels included.
pub fn act_to_text(act: &FiniteAct, monoid_ref: &str) -> String {
    let mut out = format!("monoid {monoid_ref}\n{}\n", act.size());
    for s in act.monoid().elements() {
        let row: Vec<String> =
            act.points().map(|a| act.apply(s, a).to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    for (idx, name) in &act.labels {
        out.push_str(&format!("label {idx} {name}\n"));
    }
    out
}

/// Names a point: its label when one is set, otherwise `a<idx>`.
fn point_name(act: &FiniteAct, a: usize) -> String {
    act.labels.get(&a).cloned().unwrap_or_else(|| format!("a{a}"))
}

/// DOT rendering of the action graph: one edge `a -> s*a` per non-identity
/// element `s` and point `a`, labeled by `s`. Deterministic output order.
pub fn act_to_dot(act: &FiniteAct) -> String {
    let mut out = String::from("digraph act {\n  rankdir=LR;\n  node [shape=circle];\n");
    for a in act.points() {
        out.push_str(&format!("  \"{}\";\n", point_name(act, a)));
    }
    for s in act.monoid().elements() {
        if s == act.monoid().identity() {
            continue;
        }
        for a in act.points() {
            out.push_str(&format!(
                "  \"{}\" -> \"{}\" [label=\"{s}\"];\n",
                point_name(act, a),
                point_name(act, act.apply(s, a))
            ));
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::finite::{fixture_right_zero_pair, fixture_trivial};
    use crate::corpus::fixture_corpus;

    #[test]
    fn monoid_text_round_trips_every_fixture() {
        for entry in fixture_corpus() {
            let text = monoid_to_text(&entry.monoid);
            let back = parse_monoid(&text).unwrap_or_else(|e| {
                panic!("{} does not round-trip: {e}", entry.name)
            });
            assert_eq!(back.table(), entry.monoid.table(), "{}", entry.name);
            assert_eq!(back.identity(), entry.monoid.identity(), "{}", entry.name);
        }
    }

    #[test]
    fn parse_reports_positions_for_bad_entries() {
        let err = parse_monoid("2\n0 1\n1 2\n").unwrap_err();
        assert_eq!(
            err,
            TextError::Syntax {
                line: 3,
                col: 3,
                message: "index 2 out of range 0..2".into()
            }
        );
        let err = parse_monoid("2\n0 1\n1 x\n").unwrap_err();
        assert_eq!(
            err,
            TextError::Syntax {
                line: 3,
                col: 3,
                message: "expected an index, found `x`".into()
            }
        );
        let err = parse_monoid("2\n0 1\n1\n").unwrap_err();
        assert!(matches!(err, TextError::Syntax { line: 3, .. }));
        let err = parse_monoid("2\n0 1\n1 0\n1 0\n").unwrap_err();
        assert!(matches!(err, TextError::Syntax { line: 4, col: 1, .. }));
    }

    #[test]
    fn parse_rejects_broken_tables_after_syntax_passes() {
        // (1*1)*2 = 2 but 1*(1*2) = 0 in this table.
        let err = parse_monoid("3\n0 1 2\n1 0 1\n2 1 0\n").unwrap_err();
        assert!(matches!(err, TextError::BadMonoid(MonoidError::NonAssociative { .. })));
        let err = parse_monoid("2\n0 1\n1 0\nidentity=1\n").unwrap_err();
        assert!(matches!(err, TextError::BadMonoid(_)));
    }

    #[test]
    fn identity_trailer_is_honored_and_bounded() {
        let m = parse_monoid("2\n0 1\n1 0\nidentity=0\n").unwrap();
        assert_eq!(m.identity(), 0);
        let err = parse_monoid("2\n0 1\n1 0\nidentity=5\n").unwrap_err();
        assert!(matches!(err, TextError::Syntax { line: 4, .. }));
    }

    #[test]
    fn act_text_round_trips_with_labels() {
        let m = fixture_right_zero_pair().into_arc();
        let text = "monoid rz.mon\n3\n0 1 2\n1 1 2\n2 1 2\nlabel 0 origin\nlabel 2 sink\n";
        let source = parse_act(text).unwrap();
        assert_eq!(source.monoid_ref, "rz.mon");
        let act = act_from_source(m, &source).unwrap();
        assert_eq!(act.size(), 3);
        assert_eq!(act.labels.get(&0).map(String::as_str), Some("origin"));
        assert_eq!(act_to_text(&act, "rz.mon"), text);
    }

    #[test]
    fn act_parse_rejects_bad_shapes() {
        let err = parse_act("act rz.mon\n2\n").unwrap_err();
        assert!(matches!(err, TextError::Syntax { line: 1, .. }));
        let err = parse_act("monoid rz.mon\n0\n").unwrap_err();
        assert!(matches!(err, TextError::Syntax { line: 2, .. }));
        let err = parse_act("monoid rz.mon\n2\n0 1\nlabel 5 far\n").unwrap_err();
        assert!(matches!(err, TextError::Syntax { line: 4, .. }));
        let m = fixture_right_zero_pair().into_arc();
        let short = parse_act("monoid rz.mon\n3\n0 1 2\n").unwrap();
        assert!(matches!(
            act_from_source(m.clone(), &short),
            Err(TextError::BadAct(ActError::BadTableSize { .. }))
        ));
        // Identity row must fix every point.
        let broken = parse_act("monoid rz.mon\n2\n1 0\n0 1\n0 1\n").unwrap();
        assert!(matches!(
            act_from_source(m, &broken),
            Err(TextError::BadAct(ActError::IdentityLawViolated { .. }))
        ));
    }

    #[test]
    fn dot_export_lists_nodes_then_labeled_edges() {
        let m = fixture_trivial().into_arc();
        let act = FiniteAct::regular_representation(m);
        let dot = act_to_dot(&act);
        assert!(dot.starts_with("digraph act {"));
        assert!(dot.contains("\"a0\";"));
        // The trivial monoid has no non-identity generators, hence no edges.
        assert!(!dot.contains("->"));

        let rz = fixture_right_zero_pair().into_arc();
        let reg = FiniteAct::regular_representation(rz);
        let dot = act_to_dot(&reg);
        assert!(dot.contains("\"a0\" -> \"a1\" [label=\"1\"];"));
        assert!(dot.contains("\"a2\" -> \"a2\" [label=\"2\"];"));
        assert_eq!(act_to_dot(&reg), dot);
    }
}
