//! First-order formulas over finite acts, with counting quantifiers.
//!
//! Atoms compare terms of the shape `[s]x` or `[s]@c`: an optional monoid
//! element acting on a variable or an act constant. Quantifiers range over
//! the whole carrier; `E{=n}` and `E{>=n}` count witnesses exactly, so
//! diagnostics can report counts instead of mere truth.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::act::FiniteAct;
use crate::monoid::Elem;

/// Either a bound variable or a fixed carrier point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Base {
    Var(String),
    Const(usize),
}

/// `[action]base`; no action means the bare base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub action: Option<Elem>,
    pub base: Base,
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term { action: None, base: Base::Var(name.to_string()) }
    }

    pub fn act_var(s: Elem, name: &str) -> Term {
        Term { action: Some(s), base: Base::Var(name.to_string()) }
    }

    pub fn constant(c: usize) -> Term {
        Term { action: None, base: Base::Const(c) }
    }

    pub fn act_const(s: Elem, c: usize) -> Term {
        Term { action: Some(s), base: Base::Const(c) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Formula {
    Eq(Term, Term),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Exists(String, Box<Formula>),
    Forall(String, Box<Formula>),
    /// Exactly `n` witnesses.
    ExistsCount(String, usize, Box<Formula>),
    /// At least `n` witnesses.
    ExistsAtLeast(String, usize, Box<Formula>),
}

impl Formula {
    pub fn eq(l: Term, r: Term) -> Formula {
        Formula::Eq(l, r)
    }

    pub fn and(l: Formula, r: Formula) -> Formula {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Formula {
        Formula::Or(Box::new(l), Box::new(r))
    }

    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn implies(l: Formula, r: Formula) -> Formula {
        Formula::Implies(Box::new(l), Box::new(r))
    }

    pub fn exists(v: &str, f: Formula) -> Formula {
        Formula::Exists(v.to_string(), Box::new(f))
    }

    pub fn forall(v: &str, f: Formula) -> Formula {
        Formula::Forall(v.to_string(), Box::new(f))
    }

    pub fn exists_count(v: &str, n: usize, f: Formula) -> Formula {
        Formula::ExistsCount(v.to_string(), n, Box::new(f))
    }

    pub fn exists_at_least(v: &str, n: usize, f: Formula) -> Formula {
        Formula::ExistsAtLeast(v.to_string(), n, Box::new(f))
    }

    /// Free variables in first-appearance order.
    pub fn free_vars(&self) -> Vec<String> {
        let mut out = Vec::new();
        let mut bound = BTreeSet::new();
        self.collect_free(&mut bound, &mut out);
        out
    }

    fn collect_free(&self, bound: &mut BTreeSet<String>, out: &mut Vec<String>) {
        match self {
            Formula::Eq(l, r) => {
                for t in [l, r] {
                    if let Base::Var(v) = &t.base {
                        if !bound.contains(v) && !out.contains(v) {
                            out.push(v.clone());
                        }
                    }
                }
            }
            Formula::Not(f) => f.collect_free(bound, out),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
                l.collect_free(bound, out);
                r.collect_free(bound, out);
            }
            Formula::Exists(v, f)
            | Formula::Forall(v, f)
            | Formula::ExistsCount(v, _, f)
            | Formula::ExistsAtLeast(v, _, f) => {
                let fresh = bound.insert(v.clone());
                f.collect_free(bound, out);
                if fresh {
                    bound.remove(v);
                }
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(s) = self.action {
            write!(f, "[{s}]")?;
        }
        match &self.base {
            Base::Var(v) => write!(f, "{v}"),
            Base::Const(c) => write!(f, "@{c}"),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Eq(l, r) => write!(f, "{l} = {r}"),
            Formula::Not(inner) => write!(f, "!({inner})"),
            Formula::And(l, r) => write!(f, "({l} & {r})"),
            Formula::Or(l, r) => write!(f, "({l} | {r})"),
            Formula::Implies(l, r) => write!(f, "({l} -> {r})"),
            Formula::Exists(v, inner) => write!(f, "E {v} ({inner})"),
            Formula::Forall(v, inner) => write!(f, "A {v} ({inner})"),
            Formula::ExistsCount(v, n, inner) => write!(f, "E{{={n}}} {v} ({inner})"),
            Formula::ExistsAtLeast(v, n, inner) => write!(f, "E{{>={n}}} {v} ({inner})"),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FoError {
    #[error("unbound variable {name}")]
    UnboundVariable { name: String },
    #[error("expected exactly the free variable {expected}, found {found:?}")]
    ArityMismatch { expected: String, found: Vec<String> },
    #[error("constant @{index} outside carrier 0..{size}")]
    ConstOutOfRange { index: usize, size: usize },
    #[error("monoid element [{element}] outside 0..{order}")]
    ElementOutOfRange { element: Elem, order: usize },
}

/// A variable assignment; later bindings shadow earlier ones.
#[derive(Debug, Clone, Default)]
pub struct Valuation(Vec<(String, usize)>);

impl Valuation {
    pub fn new() -> Self {
        Valuation(Vec::new())
    }

    pub fn bind(mut self, name: &str, point: usize) -> Self {
        self.0.push((name.to_string(), point));
        self
    }

    fn push(&mut self, name: &str, point: usize) {
        self.0.push((name.to_string(), point));
    }

    fn pop(&mut self) {
        self.0.pop();
    }

    fn get(&self, name: &str) -> Option<usize> {
        self.0.iter().rev().find(|(n, _)| n == name).map(|&(_, p)| p)
    }
}

fn eval_term(act: &FiniteAct, t: &Term, env: &Valuation) -> Result<usize, FoError> {
    let base = match &t.base {
        Base::Var(v) => {
            env.get(v).ok_or_else(|| FoError::UnboundVariable { name: v.clone() })?
        }
        Base::Const(c) => {
            if *c >= act.size() {
                return Err(FoError::ConstOutOfRange { index: *c, size: act.size() });
            }
            *c
        }
    };
    match t.action {
        Some(s) => {
            if s >= act.monoid().order() {
                return Err(FoError::ElementOutOfRange { element: s, order: act.monoid().order() });
            }
            Ok(act.apply(s, base))
        }
        None => Ok(base),
    }
}

/// Truth of `formula` in `act` under `valuation`, by exhaustive expansion.
pub fn eval(act: &FiniteAct, formula: &Formula, valuation: &Valuation) -> Result<bool, FoError> {
    let mut env = valuation.clone();
    eval_inner(act, formula, &mut env)
}

fn eval_inner(act: &FiniteAct, formula: &Formula, env: &mut Valuation) -> Result<bool, FoError> {
    match formula {
        Formula::Eq(l, r) => Ok(eval_term(act, l, env)? == eval_term(act, r, env)?),
        Formula::Not(f) => Ok(!eval_inner(act, f, env)?),
        Formula::And(l, r) => Ok(eval_inner(act, l, env)? && eval_inner(act, r, env)?),
        Formula::Or(l, r) => Ok(eval_inner(act, l, env)? || eval_inner(act, r, env)?),
        Formula::Implies(l, r) => Ok(!eval_inner(act, l, env)? || eval_inner(act, r, env)?),
        Formula::Exists(v, f) => {
            for p in act.points() {
                env.push(v, p);
                let hit = eval_inner(act, f, env)?;
                env.pop();
                if hit {
                    return Ok(true);
                }
            }
            Ok(false)
        }
        Formula::Forall(v, f) => {
            for p in act.points() {
                env.push(v, p);
                let hit = eval_inner(act, f, env)?;
                env.pop();
                if !hit {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        Formula::ExistsCount(v, n, f) => Ok(count_bound(act, v, f, env)? == *n),
        Formula::ExistsAtLeast(v, n, f) => Ok(count_bound(act, v, f, env)? >= *n),
    }
}

fn count_bound(
    act: &FiniteAct,
    var: &str,
    f: &Formula,
    env: &mut Valuation,
) -> Result<usize, FoError> {
    let mut count = 0;
    for p in act.points() {
        env.push(var, p);
        let hit = eval_inner(act, f, env)?;
        env.pop();
        if hit {
            count += 1;
        }
    }
    Ok(count)
}

/// Number of carrier points satisfying a one-free-variable formula.
pub fn count_witnesses(act: &FiniteAct, formula: &Formula, var: &str) -> Result<usize, FoError> {
    let free = formula.free_vars();
    if free.len() != 1 || free[0] != var {
        return Err(FoError::ArityMismatch { expected: var.to_string(), found: free });
    }
    let mut env = Valuation::new();
    count_bound(act, var, formula, &mut env)
}

/// Parse failure with a 1-based source position.
#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}, col {col}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Number(usize),
    At,
    LBracket,
    RBracket,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Amp,
    Pipe,
    Arrow,
    Bang,
    Eq,
    GtEq,
}

struct Lexer {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
    end: (usize, usize),
}

fn lex(input: &str) -> Result<Lexer, ParseError> {
    let mut toks = Vec::new();
    let mut line = 1;
    let mut col = 1;
    let mut chars = input.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (tl, tc) = (line, col);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next().unwrap();
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            c
        };
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                bump(&mut chars);
            }
            '(' => {
                bump(&mut chars);
                toks.push((Tok::LParen, tl, tc));
            }
            ')' => {
                bump(&mut chars);
                toks.push((Tok::RParen, tl, tc));
            }
            '[' => {
                bump(&mut chars);
                toks.push((Tok::LBracket, tl, tc));
            }
            ']' => {
                bump(&mut chars);
                toks.push((Tok::RBracket, tl, tc));
            }
            '{' => {
                bump(&mut chars);
                toks.push((Tok::LBrace, tl, tc));
            }
            '}' => {
                bump(&mut chars);
                toks.push((Tok::RBrace, tl, tc));
            }
            '@' => {
                bump(&mut chars);
                toks.push((Tok::At, tl, tc));
            }
            '&' => {
                bump(&mut chars);
                toks.push((Tok::Amp, tl, tc));
            }
            '|' => {
                bump(&mut chars);
                toks.push((Tok::Pipe, tl, tc));
            }
            '!' => {
                bump(&mut chars);
                toks.push((Tok::Bang, tl, tc));
            }
            '=' => {
                bump(&mut chars);
                toks.push((Tok::Eq, tl, tc));
            }
            '-' => {
                bump(&mut chars);
                if chars.peek() == Some(&'>') {
                    bump(&mut chars);
                    toks.push((Tok::Arrow, tl, tc));
                } else {
                    return Err(ParseError { line: tl, col: tc, msg: "expected '->'".into() });
                }
            }
            '>' => {
                bump(&mut chars);
                if chars.peek() == Some(&'=') {
                    bump(&mut chars);
                    toks.push((Tok::GtEq, tl, tc));
                } else {
                    return Err(ParseError { line: tl, col: tc, msg: "expected '>='".into() });
                }
            }
            '0'..='9' => {
                let mut n = 0usize;
                while let Some(&d) = chars.peek() {
                    if let Some(v) = d.to_digit(10) {
                        bump(&mut chars);
                        n = n * 10 + v as usize;
                    } else {
                        break;
                    }
                }
                toks.push((Tok::Number(n), tl, tc));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        s.push(bump(&mut chars));
                    } else {
                        break;
                    }
                }
                toks.push((Tok::Ident(s), tl, tc));
            }
            other => {
                return Err(ParseError {
                    line: tl,
                    col: tc,
                    msg: format!("unexpected character '{other}'"),
                });
            }
        }
    }
    Ok(Lexer { toks, pos: 0, end: (line, col) })
}

impl Lexer {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _, _)| t)
    }

    fn here(&self) -> (usize, usize) {
        self.toks.get(self.pos).map_or(self.end, |&(_, l, c)| (l, c))
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), ParseError> {
        let (line, col) = self.here();
        match self.next() {
            Some(t) if t == want => Ok(()),
            _ => Err(ParseError { line, col, msg: format!("expected {what}") }),
        }
    }

    fn err(&self, msg: &str) -> ParseError {
        let (line, col) = self.here();
        ParseError { line, col, msg: msg.to_string() }
    }
}

/// Parses the concrete syntax:
///
/// ```text
/// formula  := disj ('->' formula)?
/// disj     := conj ('|' conj)*
/// conj     := unary ('&' unary)*
/// unary    := '!' unary | 'E' count? var unary | 'A' var unary
///           | '(' formula ')' | term '=' term
/// count    := '{' ('=' | '>=') number '}'
/// term     := ('[' number ']')? (ident | '@' number)
/// ```
///
/// `E` and `A` are reserved; a quantifier's body is the next unary item, so
/// `E z (x = [1]z & y = [2]z)` scopes the conjunction under `z`.
pub fn parse(input: &str) -> Result<Formula, ParseError> {
    let mut lx = lex(input)?;
    let f = parse_formula(&mut lx)?;
    if lx.peek().is_some() {
        return Err(lx.err("trailing input after formula"));
    }
    Ok(f)
}

fn parse_formula(lx: &mut Lexer) -> Result<Formula, ParseError> {
    let lhs = parse_disj(lx)?;
    if lx.peek() == Some(&Tok::Arrow) {
        lx.next();
        let rhs = parse_formula(lx)?;
        return Ok(Formula::implies(lhs, rhs));
    }
    Ok(lhs)
}

fn parse_disj(lx: &mut Lexer) -> Result<Formula, ParseError> {
    let mut f = parse_conj(lx)?;
    while lx.peek() == Some(&Tok::Pipe) {
        lx.next();
        let rhs = parse_conj(lx)?;
        f = Formula::or(f, rhs);
    }
    Ok(f)
}

fn parse_conj(lx: &mut Lexer) -> Result<Formula, ParseError> {
    let mut f = parse_unary(lx)?;
    while lx.peek() == Some(&Tok::Amp) {
        lx.next();
        let rhs = parse_unary(lx)?;
        f = Formula::and(f, rhs);
    }
    Ok(f)
}

fn parse_unary(lx: &mut Lexer) -> Result<Formula, ParseError> {
    match lx.peek() {
        Some(Tok::Bang) => {
            lx.next();
            Ok(Formula::not(parse_unary(lx)?))
        }
        Some(Tok::LParen) => {
            lx.next();
            let f = parse_formula(lx)?;
            lx.expect(Tok::RParen, "')'")?;
            Ok(f)
        }
        Some(Tok::Ident(name)) if name == "E" || name == "A" => {
            let universal = name == "A";
            lx.next();
            let mut count = None;
            if !universal && lx.peek() == Some(&Tok::LBrace) {
                lx.next();
                let at_least = match lx.next() {
                    Some(Tok::GtEq) => true,
                    Some(Tok::Eq) => false,
                    _ => return Err(lx.err("expected '=' or '>=' in counting quantifier")),
                };
                let n = match lx.next() {
                    Some(Tok::Number(n)) => n,
                    _ => return Err(lx.err("expected a count")),
                };
                lx.expect(Tok::RBrace, "'}'")?;
                count = Some((at_least, n));
            }
            let var = match lx.next() {
                Some(Tok::Ident(v)) if v != "E" && v != "A" => v,
                _ => return Err(lx.err("expected a variable name")),
            };
            let body = parse_unary(lx)?;
            Ok(match (universal, count) {
                (true, _) => Formula::forall(&var, body),
                (false, None) => Formula::exists(&var, body),
                (false, Some((true, n))) => Formula::exists_at_least(&var, n, body),
                (false, Some((false, n))) => Formula::exists_count(&var, n, body),
            })
        }
        Some(_) => {
            let l = parse_term(lx)?;
            lx.expect(Tok::Eq, "'='")?;
            let r = parse_term(lx)?;
            Ok(Formula::Eq(l, r))
        }
        None => Err(lx.err("unexpected end of formula")),
    }
}

fn parse_term(lx: &mut Lexer) -> Result<Term, ParseError> {
    let action = if lx.peek() == Some(&Tok::LBracket) {
        lx.next();
        let s = match lx.next() {
            Some(Tok::Number(n)) => n,
            _ => return Err(lx.err("expected a monoid element index")),
        };
        lx.expect(Tok::RBracket, "']'")?;
        Some(s)
    } else {
        None
    };
    match lx.next() {
        Some(Tok::Ident(v)) => {
            if v == "E" || v == "A" {
                return Err(lx.err("'E' and 'A' are reserved quantifier names"));
            }
            Ok(Term { action, base: Base::Var(v) })
        }
        Some(Tok::At) => match lx.next() {
            Some(Tok::Number(c)) => Ok(Term { action, base: Base::Const(c) }),
            _ => Err(lx.err("expected a constant index after '@'")),
        },
        _ => Err(lx.err("expected a variable or '@' constant")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::FiniteMonoid;
    use std::sync::Arc;

    fn right_zero_pair() -> Arc<FiniteMonoid> {
        FiniteMonoid::validate(3, vec![0, 1, 2, 1, 1, 2, 2, 1, 2], None).unwrap().into_arc()
    }

    fn reg() -> FiniteAct {
        FiniteAct::regular_representation(right_zero_pair())
    }

    #[test]
    fn reflexivity_holds_everywhere() {
        let a = reg();
        let f = Formula::eq(Term::var("x"), Term::var("x"));
        for p in a.points() {
            assert!(eval(&a, &f, &Valuation::new().bind("x", p)).unwrap());
        }
    }

    #[test]
    fn quantifiers_expand_over_carrier() {
        let a = reg();
        // Every point is hit by acting on the identity point.
        let f = parse("A y E x ([0]x = y)").unwrap();
        assert!(eval(&a, &f, &Valuation::new()).unwrap());
        // No point equals both right zeros at once.
        let g = parse("E x (x = @1 & x = @2)").unwrap();
        assert!(!eval(&a, &g, &Valuation::new()).unwrap());
    }

    #[test]
    fn counting_matches_count_witnesses() {
        let a = reg();
        // s*x = x for s the first right zero: fixed points are {x, y}.
        let f = parse("[1]x = x").unwrap();
        assert_eq!(count_witnesses(&a, &f, "x").unwrap(), 2);
        let exactly = parse("E{=2} x ([1]x = x)").unwrap();
        assert!(eval(&a, &exactly, &Valuation::new()).unwrap());
        let at_least = parse("E{>=3} x ([1]x = x)").unwrap();
        assert!(!eval(&a, &at_least, &Valuation::new()).unwrap());
    }

    #[test]
    fn negation_and_forall_laws() {
        let a = reg();
        let f = parse("E z (x = [1]z & y = [2]z)").unwrap();
        let not_f = Formula::not(f.clone());
        for x in a.points() {
            for y in a.points() {
                let env = Valuation::new().bind("x", x).bind("y", y);
                assert_ne!(eval(&a, &f, &env).unwrap(), eval(&a, &not_f, &env).unwrap());
            }
        }
        let all = parse("A x ([1]x = x)").unwrap();
        let via_exists = parse("!E x !([1]x = x)").unwrap();
        assert_eq!(
            eval(&a, &all, &Valuation::new()).unwrap(),
            eval(&a, &via_exists, &Valuation::new()).unwrap()
        );
    }

    #[test]
    fn unbound_variable_is_reported() {
        let a = reg();
        let f = parse("x = y").unwrap();
        let err = eval(&a, &f, &Valuation::new().bind("x", 0)).unwrap_err();
        assert_eq!(err, FoError::UnboundVariable { name: "y".to_string() });
    }

    #[test]
    fn arity_mismatch_on_two_free_vars() {
        let a = reg();
        let f = parse("x = y").unwrap();
        assert!(matches!(
            count_witnesses(&a, &f, "x"),
            Err(FoError::ArityMismatch { .. })
        ));
    }

    #[test]
    fn parse_errors_carry_positions() {
        let err = parse("E z (x = [1]z &").unwrap_err();
        assert_eq!((err.line, err.col), (1, 16));
        let err2 = parse("x =\n  #").unwrap_err();
        assert_eq!((err2.line, err2.col), (2, 3));
    }

    #[test]
    fn closed_formulas_survive_relabeling() {
        let a = reg();
        let perm = [2, 0, 1];
        let b = a.relabeled(&perm);
        // Constants translate through the permutation.
        let fa = parse("E x ([1]x = @1)").unwrap();
        let fb = parse(&format!("E x ([1]x = @{})", perm[1])).unwrap();
        assert_eq!(
            eval(&a, &fa, &Valuation::new()).unwrap(),
            eval(&b, &fb, &Valuation::new()).unwrap()
        );
    }

    #[test]
    fn display_round_trips_through_parse() {
        let samples = [
            "E z (x = [1]z & y = [2]z)",
            "E{=2} x ([1]x = x)",
            "E{>=1} x (x = @0 | x = @1)",
            "A x (x = x -> E y ([2]y = x))",
        ];
        for s in samples {
            let f = parse(s).unwrap();
            let again = parse(&f.to_string()).unwrap();
            assert_eq!(f, again);
        }
    }
}
