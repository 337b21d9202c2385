//! Propositional syntax: atoms, formulas, the text grammar, substitution,
//! constant simplification and normal forms.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::kb::Signature;
use crate::sat::Assignment;

/// Prefix reserved for atoms introduced internally (renamed copies).
pub(crate) const RESERVED_PREFIX: &str = "__";

/// Default clause budget for [`to_cnf`].
pub const DEFAULT_CNF_CAP: usize = 4096;

/// An atom identifier. Cheap to clone; ordered lexicographically.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom(Arc<str>);

impl Atom {
    /// Creates an atom, validating it against the external grammar.
    pub fn new(name: &str) -> Result<Atom> {
        if name == "true" || name == "false" || name.starts_with(RESERVED_PREFIX) {
            return Err(Error::ReservedWord(name.to_string()));
        }
        let mut chars = name.chars();
        let valid = match chars.next() {
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
            }
            _ => false,
        };
        if !valid {
            return Err(Error::Syntax {
                line: 1,
                column: 1,
                message: format!("`{name}` is not a valid atom identifier"),
            });
        }
        Ok(Atom(Arc::from(name)))
    }

    /// Internal atoms carry the reserved prefix, so they can never collide
    /// with anything the parser or [`Atom::new`] produces.
    pub(crate) fn fresh(name: String) -> Atom {
        debug_assert!(name.starts_with(RESERVED_PREFIX));
        Atom(Arc::from(name))
    }

    pub fn name(&self) -> &str {
        &self.0
    }

    pub fn is_internal(&self) -> bool {
        self.0.starts_with(RESERVED_PREFIX)
    }
}

impl fmt::Debug for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Immutable propositional syntax tree.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Top,
    Bottom,
    Atom(Atom),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(a: &Atom) -> Formula {
        Formula::Atom(a.clone())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(l: Formula, r: Formula) -> Formula {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Formula {
        Formula::Or(Box::new(l), Box::new(r))
    }

    pub fn implies(l: Formula, r: Formula) -> Formula {
        Formula::Implies(Box::new(l), Box::new(r))
    }

    /// Left-nested conjunction; `Top` for an empty iterator.
    pub fn conjunction<I: IntoIterator<Item = Formula>>(items: I) -> Formula {
        items
            .into_iter()
            .reduce(Formula::and)
            .unwrap_or(Formula::Top)
    }

    /// Left-nested disjunction; `Bottom` for an empty iterator.
    pub fn disjunction<I: IntoIterator<Item = Formula>>(items: I) -> Formula {
        items
            .into_iter()
            .reduce(Formula::or)
            .unwrap_or(Formula::Bottom)
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        match self {
            Formula::Top | Formula::Bottom | Formula::Atom(_) => 1,
            Formula::Not(c) => 1 + c.size(),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
                1 + l.size() + r.size()
            }
        }
    }

    pub fn is_constant(&self) -> bool {
        matches!(self, Formula::Top | Formula::Bottom)
    }

    pub fn atoms(&self) -> Signature {
        atoms_of(self)
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Implies(..) => 1,
            Formula::Or(..) => 2,
            Formula::And(..) => 3,
            Formula::Not(_) => 4,
            _ => 5,
        }
    }

    /// Visits atom leaves left to right (pre-order).
    pub(crate) fn for_each_atom<'a>(&'a self, visit: &mut impl FnMut(&'a Atom)) {
        match self {
            Formula::Top | Formula::Bottom => {}
            Formula::Atom(a) => visit(a),
            Formula::Not(c) => c.for_each_atom(visit),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
                l.for_each_atom(visit);
                r.for_each_atom(visit);
            }
        }
    }

    /// Rebuilds the tree, replacing each atom leaf by `replace(atom)`.
    pub(crate) fn map_atoms(&self, replace: &mut impl FnMut(&Atom) -> Formula) -> Formula {
        match self {
            Formula::Top => Formula::Top,
            Formula::Bottom => Formula::Bottom,
            Formula::Atom(a) => replace(a),
            Formula::Not(c) => Formula::not(c.map_atoms(replace)),
            Formula::And(l, r) => Formula::and(l.map_atoms(replace), r.map_atoms(replace)),
            Formula::Or(l, r) => Formula::or(l.map_atoms(replace), r.map_atoms(replace)),
            Formula::Implies(l, r) => {
                Formula::implies(l.map_atoms(replace), r.map_atoms(replace))
            }
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn child(f: &mut fmt::Formatter<'_>, c: &Formula, parens: bool) -> fmt::Result {
            if parens {
                write!(f, "({c})")
            } else {
                write!(f, "{c}")
            }
        }
        match self {
            Formula::Top => f.write_str("true"),
            Formula::Bottom => f.write_str("false"),
            Formula::Atom(a) => write!(f, "{a}"),
            Formula::Not(c) => {
                f.write_str("!")?;
                child(f, c, c.precedence() < 4)
            }
            // `&` and `|` associate to the left, `->` to the right.
            Formula::And(l, r) => {
                child(f, l, l.precedence() < 3)?;
                f.write_str(" & ")?;
                child(f, r, r.precedence() <= 3)
            }
            Formula::Or(l, r) => {
                child(f, l, l.precedence() < 2)?;
                f.write_str(" | ")?;
                child(f, r, r.precedence() <= 2)
            }
            Formula::Implies(l, r) => {
                child(f, l, l.precedence() <= 1)?;
                f.write_str(" -> ")?;
                child(f, r, false)
            }
        }
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl std::str::FromStr for Formula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Formula> {
        parse_formula(s)
    }
}

// ---------------------------------------------------------------------------
// Parsing

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Ident(String),
    True,
    False,
    Not,
    And,
    Or,
    Arrow,
    LParen,
    RParen,
}

struct Lexed {
    tok: Token,
    column: usize,
}

fn tokenize(text: &str, line: usize) -> Result<Vec<Lexed>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = i + 1;
        let simple = match c {
            ' ' | '\t' | '\r' | '\n' => {
                i += 1;
                continue;
            }
            '!' => Some(Token::Not),
            '&' => Some(Token::And),
            '|' => Some(Token::Or),
            '(' => Some(Token::LParen),
            ')' => Some(Token::RParen),
            _ => None,
        };
        if let Some(tok) = simple {
            out.push(Lexed { tok, column });
            i += 1;
        } else if c == '-' && chars.get(i + 1) == Some(&'>') {
            out.push(Lexed {
                tok: Token::Arrow,
                column,
            });
            i += 2;
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            let tok = match word.as_str() {
                "true" => Token::True,
                "false" => Token::False,
                w if w.starts_with(RESERVED_PREFIX) => {
                    return Err(Error::ReservedWord(word));
                }
                _ => Token::Ident(word),
            };
            out.push(Lexed { tok, column });
        } else {
            return Err(Error::Syntax {
                line,
                column,
                message: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Lexed>,
    pos: usize,
    line: usize,
    end_column: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|l| &l.tok)
    }

    fn error(&self, message: impl Into<String>) -> Error {
        let column = self
            .tokens
            .get(self.pos)
            .map(|l| l.column)
            .unwrap_or(self.end_column);
        Error::Syntax {
            line: self.line,
            column,
            message: message.into(),
        }
    }

    fn implication(&mut self) -> Result<Formula> {
        let left = self.disjunction()?;
        if self.peek() == Some(&Token::Arrow) {
            self.pos += 1;
            let right = self.implication()?;
            return Ok(Formula::implies(left, right));
        }
        Ok(left)
    }

    fn disjunction(&mut self) -> Result<Formula> {
        let mut left = self.conjunction()?;
        while self.peek() == Some(&Token::Or) {
            self.pos += 1;
            left = Formula::or(left, self.conjunction()?);
        }
        Ok(left)
    }

    fn conjunction(&mut self) -> Result<Formula> {
        let mut left = self.unary()?;
        while self.peek() == Some(&Token::And) {
            self.pos += 1;
            left = Formula::and(left, self.unary()?);
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<Formula> {
        let tok = match self.peek() {
            Some(t) => t.clone(),
            None => return Err(self.error("unexpected end of input")),
        };
        self.pos += 1;
        match tok {
            Token::Not => Ok(Formula::not(self.unary()?)),
            Token::True => Ok(Formula::Top),
            Token::False => Ok(Formula::Bottom),
            Token::Ident(name) => Ok(Formula::Atom(Atom(Arc::from(name.as_str())))),
            Token::LParen => {
                let inner = self.implication()?;
                if self.peek() != Some(&Token::RParen) {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            other => {
                self.pos -= 1;
                Err(self.error(format!("unexpected token {other:?}")))
            }
        }
    }
}

/// Parses a formula in the text grammar. Errors report line 1.
pub fn parse_formula(text: &str) -> Result<Formula> {
    parse_formula_at(text, 1)
}

/// Parses a formula, attributing errors to the given line number.
pub(crate) fn parse_formula_at(text: &str, line: usize) -> Result<Formula> {
    let tokens = tokenize(text, line)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        line,
        end_column: text.chars().count() + 1,
    };
    let f = parser.implication()?;
    if parser.pos != parser.tokens.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(f)
}

// ---------------------------------------------------------------------------
// Syntactic operations

pub fn atoms_of(f: &Formula) -> Signature {
    let mut sig = Signature::empty();
    f.for_each_atom(&mut |a| {
        sig.insert(a.clone());
    });
    sig
}

pub fn count_occurrences(f: &Formula, atom: &Atom) -> usize {
    let mut n = 0;
    f.for_each_atom(&mut |a| {
        if a == atom {
            n += 1;
        }
    });
    n
}

/// Replaces every occurrence of `atom` by `replacement`.
pub fn substitute_uniform(f: &Formula, atom: &Atom, replacement: &Formula) -> Formula {
    f.map_atoms(&mut |a| {
        if a == atom {
            replacement.clone()
        } else {
            Formula::Atom(a.clone())
        }
    })
}

/// Replaces the i-th occurrence of `atom` (left-to-right pre-order) by
/// `replacements[i]`.
pub fn substitute_per_occurrence(
    f: &Formula,
    atom: &Atom,
    replacements: &[Formula],
) -> Result<Formula> {
    let found = count_occurrences(f, atom);
    if found != replacements.len() {
        return Err(Error::OccurrenceMismatch {
            atom: atom.to_string(),
            found,
            given: replacements.len(),
        });
    }
    let mut next = replacements.iter();
    Ok(f.map_atoms(&mut |a| {
        if a == atom {
            next.next().cloned().expect("occurrence count checked")
        } else {
            Formula::Atom(a.clone())
        }
    }))
}

/// Propagates `true`/`false` bottom-up until no constant is left inside a
/// non-constant formula.
pub fn simplify_constants(f: &Formula) -> Formula {
    use Formula::*;
    match f {
        Top | Bottom | Atom(_) => f.clone(),
        Not(c) => match simplify_constants(c) {
            Top => Bottom,
            Bottom => Top,
            c => Formula::not(c),
        },
        And(l, r) => match (simplify_constants(l), simplify_constants(r)) {
            (Bottom, _) | (_, Bottom) => Bottom,
            (Top, x) | (x, Top) => x,
            (l, r) => Formula::and(l, r),
        },
        Or(l, r) => match (simplify_constants(l), simplify_constants(r)) {
            (Top, _) | (_, Top) => Top,
            (Bottom, x) | (x, Bottom) => x,
            (l, r) => Formula::or(l, r),
        },
        Implies(l, r) => match (simplify_constants(l), simplify_constants(r)) {
            (Bottom, _) | (_, Top) => Top,
            (Top, x) => x,
            (x, Bottom) => Formula::not(x),
            (l, r) => Formula::implies(l, r),
        },
    }
}

/// Negation normal form: implications expanded as `!l | r`, negations pushed
/// to atoms and constants.
pub fn to_nnf(f: &Formula) -> Formula {
    nnf(f, true)
}

fn nnf(f: &Formula, positive: bool) -> Formula {
    use Formula::*;
    match (f, positive) {
        (Top, true) | (Bottom, false) => Top,
        (Top, false) | (Bottom, true) => Bottom,
        (Atom(a), true) => Atom(a.clone()),
        (Atom(a), false) => Formula::not(Atom(a.clone())),
        (Not(c), p) => nnf(c, !p),
        (And(l, r), true) => Formula::and(nnf(l, true), nnf(r, true)),
        (And(l, r), false) => Formula::or(nnf(l, false), nnf(r, false)),
        (Or(l, r), true) => Formula::or(nnf(l, true), nnf(r, true)),
        (Or(l, r), false) => Formula::and(nnf(l, false), nnf(r, false)),
        (Implies(l, r), true) => Formula::or(nnf(l, false), nnf(r, true)),
        (Implies(l, r), false) => Formula::and(nnf(l, true), nnf(r, false)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub atom: Atom,
    pub positive: bool,
}

impl Literal {
    pub fn to_formula(&self) -> Formula {
        let a = Formula::Atom(self.atom.clone());
        if self.positive {
            a
        } else {
            Formula::not(a)
        }
    }
}

/// A clause: disjunction of literals, duplicates removed, order of first
/// appearance kept.
pub type Clause = Vec<Literal>;

/// Clause set produced by distributive conversion. No clauses means `true`;
/// an empty clause means `false`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cnf {
    pub clauses: Vec<Clause>,
}

impl Cnf {
    pub fn to_formula(&self) -> Formula {
        if self.clauses.iter().any(|c| c.is_empty()) {
            return Formula::Bottom;
        }
        Formula::conjunction(
            self.clauses
                .iter()
                .map(|c| Formula::disjunction(c.iter().map(Literal::to_formula))),
        )
    }
}

/// Distributive CNF (no auxiliary atoms) as a clause set.
pub fn cnf_clauses(f: &Formula, cap: usize) -> Result<Cnf> {
    let simplified = simplify_constants(&to_nnf(f));
    let clauses = match simplified {
        Formula::Top => Vec::new(),
        Formula::Bottom => vec![Vec::new()],
        g => distribute(&g, cap)?,
    };
    Ok(Cnf { clauses })
}

fn push_unique<T: PartialEq>(v: &mut Vec<T>, item: T) {
    if !v.contains(&item) {
        v.push(item);
    }
}

// Input is constant-free NNF.
fn distribute(f: &Formula, cap: usize) -> Result<Vec<Clause>> {
    match f {
        Formula::Atom(a) => Ok(vec![vec![Literal {
            atom: a.clone(),
            positive: true,
        }]]),
        Formula::Not(c) => match c.as_ref() {
            Formula::Atom(a) => Ok(vec![vec![Literal {
                atom: a.clone(),
                positive: false,
            }]]),
            _ => unreachable!("input is in negation normal form"),
        },
        Formula::And(l, r) => {
            let mut out = distribute(l, cap)?;
            for c in distribute(r, cap)? {
                push_unique(&mut out, c);
            }
            if out.len() > cap {
                return Err(Error::CnfBlowup { limit: cap });
            }
            Ok(out)
        }
        Formula::Or(l, r) => {
            let left = distribute(l, cap)?;
            let right = distribute(r, cap)?;
            if left.len().saturating_mul(right.len()) > cap {
                return Err(Error::CnfBlowup { limit: cap });
            }
            let mut out = Vec::with_capacity(left.len() * right.len());
            for cl in &left {
                for cr in &right {
                    let mut clause = cl.clone();
                    for lit in cr {
                        push_unique(&mut clause, lit.clone());
                    }
                    push_unique(&mut out, clause);
                }
            }
            Ok(out)
        }
        _ => unreachable!("input is constant-free negation normal form"),
    }
}

/// Distributive CNF with the default clause cap.
pub fn to_cnf(f: &Formula) -> Result<Formula> {
    to_cnf_with_cap(f, DEFAULT_CNF_CAP)
}

pub fn to_cnf_with_cap(f: &Formula, cap: usize) -> Result<Formula> {
    Ok(cnf_clauses(f, cap)?.to_formula())
}

/// Classical evaluation. Every atom of `f` must be assigned.
pub fn evaluate2(w: &Assignment, f: &Formula) -> Result<bool> {
    Ok(match f {
        Formula::Top => true,
        Formula::Bottom => false,
        Formula::Atom(a) => w
            .get(a)
            .ok_or_else(|| Error::UnassignedAtom(a.to_string()))?,
        Formula::Not(c) => !evaluate2(w, c)?,
        Formula::And(l, r) => evaluate2(w, l)? & evaluate2(w, r)?,
        Formula::Or(l, r) => evaluate2(w, l)? | evaluate2(w, r)?,
        Formula::Implies(l, r) => !evaluate2(w, l)? | evaluate2(w, r)?,
    })
}

// ---------------------------------------------------------------------------
// Index-compiled form used by the brute-force scans.

#[derive(Clone, Debug)]
pub(crate) enum Compiled {
    Const(bool),
    Var(usize),
    Not(Box<Compiled>),
    And(Box<Compiled>, Box<Compiled>),
    Or(Box<Compiled>, Box<Compiled>),
    Implies(Box<Compiled>, Box<Compiled>),
}

impl Compiled {
    /// Panics if an atom of `f` is missing from `index`.
    pub(crate) fn new(f: &Formula, index: &BTreeMap<Atom, usize>) -> Compiled {
        let c = |g: &Formula| Box::new(Compiled::new(g, index));
        match f {
            Formula::Top => Compiled::Const(true),
            Formula::Bottom => Compiled::Const(false),
            Formula::Atom(a) => Compiled::Var(index[a]),
            Formula::Not(x) => Compiled::Not(c(x)),
            Formula::And(l, r) => Compiled::And(c(l), c(r)),
            Formula::Or(l, r) => Compiled::Or(c(l), c(r)),
            Formula::Implies(l, r) => Compiled::Implies(c(l), c(r)),
        }
    }

    pub(crate) fn eval(&self, values: &[bool]) -> bool {
        match self {
            Compiled::Const(b) => *b,
            Compiled::Var(i) => values[*i],
            Compiled::Not(c) => !c.eval(values),
            Compiled::And(l, r) => l.eval(values) && r.eval(values),
            Compiled::Or(l, r) => l.eval(values) || r.eval(values),
            Compiled::Implies(l, r) => !l.eval(values) || r.eval(values),
        }
    }

    /// Three-valued evaluation with values `0 = F`, `1 = B`, `2 = T`.
    pub(crate) fn eval3(&self, values: &[u8]) -> u8 {
        match self {
            Compiled::Const(b) => 2 * u8::from(*b),
            Compiled::Var(i) => values[*i],
            Compiled::Not(c) => 2 - c.eval3(values),
            Compiled::And(l, r) => l.eval3(values).min(r.eval3(values)),
            Compiled::Or(l, r) => l.eval3(values).max(r.eval3(values)),
            Compiled::Implies(l, r) => (2 - l.eval3(values)).max(r.eval3(values)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn atom(s: &str) -> Formula {
        Formula::Atom(Atom::new(s).unwrap())
    }

    #[test]
    fn parses_examples() {
        assert_eq!(p("a & !a"), Formula::and(atom("a"), Formula::not(atom("a"))));
        assert_eq!(
            p("a -> b -> c"),
            Formula::implies(atom("a"), Formula::implies(atom("b"), atom("c")))
        );
        assert_eq!(
            p("(c | !b) & d"),
            Formula::and(Formula::or(atom("c"), Formula::not(atom("b"))), atom("d"))
        );
        assert_eq!(p("a | b & c"), Formula::or(atom("a"), Formula::and(atom("b"), atom("c"))));
        assert_eq!(p("!true"), Formula::not(Formula::Top));
    }

    #[test]
    fn syntax_errors_carry_position() {
        match parse_formula("a & ") {
            Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (1, 5)),
            other => panic!("unexpected {other:?}"),
        }
        match parse_formula("a $ b") {
            Err(Error::Syntax { column, .. }) => assert_eq!(column, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_formula("(a"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_formula("a b"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_formula("__x"), Err(Error::ReservedWord(_))));
        assert!(matches!(Atom::new("true"), Err(Error::ReservedWord(_))));
        assert!(Atom::new("9a").is_err());
    }

    #[test]
    fn display_round_trips() {
        for s in [
            "a -> b -> c",
            "(a -> b) -> c",
            "a & (b & c)",
            "(a | b) & !(c -> d)",
            "!!a | false",
            "a | (b | c) | d",
        ] {
            let f = p(s);
            assert_eq!(p(&f.to_string()), f, "{s} printed as {f}");
        }
        assert_eq!(p("(a & b) & c").to_string(), "a & b & c");
    }

    #[test]
    fn atoms_and_occurrences() {
        assert!(atoms_of(&Formula::Top).is_empty());
        let names: Vec<_> = atoms_of(&p("!a & c")).iter().map(|a| a.to_string()).collect();
        assert_eq!(names, ["a", "c"]);
        let a = Atom::new("a").unwrap();
        assert_eq!(count_occurrences(&p("a & (b | a) & !a"), &a), 3);
        assert_eq!(count_occurrences(&p("b"), &a), 0);
        assert_eq!(count_occurrences(&p("a & !a"), &a), 2);
    }

    #[test]
    fn substitution() {
        let a = Atom::new("a").unwrap();
        assert_eq!(
            substitute_uniform(&p("!a & c"), &a, &Formula::Top),
            p("!true & c")
        );
        let f = p("x | a -> a");
        assert_eq!(substitute_uniform(&f, &a, &atom("a")), f);
        assert_eq!(substitute_uniform(&p("b"), &a, &Formula::Bottom), p("b"));

        let g = substitute_per_occurrence(
            &p("a & (b | a) & !a"),
            &a,
            &[Formula::Top, Formula::Top, Formula::Bottom],
        )
        .unwrap();
        assert_eq!(g, p("true & (b | true) & !false"));
        assert_eq!(
            substitute_per_occurrence(&p("a & !a"), &a, &[Formula::Top, Formula::Bottom]).unwrap(),
            p("true & !false")
        );
        assert_eq!(substitute_per_occurrence(&p("b"), &a, &[]).unwrap(), p("b"));
        assert!(matches!(
            substitute_per_occurrence(&p("a"), &a, &[]),
            Err(Error::OccurrenceMismatch { found: 1, given: 0, .. })
        ));
    }

    #[test]
    fn constant_simplification() {
        assert_eq!(simplify_constants(&p("(true & !true) | (false & !false)")), Formula::Bottom);
        assert_eq!(simplify_constants(&p("(!true & c) | (!false & c)")), atom("c"));
        assert_eq!(simplify_constants(&p("a | b")), p("a | b"));
        assert_eq!(simplify_constants(&p("a -> false")), p("!a"));
        assert_eq!(simplify_constants(&p("false -> a")), Formula::Top);
        assert_eq!(simplify_constants(&p("true -> a & true")), atom("a"));
    }

    #[test]
    fn normal_forms() {
        assert_eq!(to_nnf(&p("!(a | b)")), p("!a & !b"));
        assert_eq!(to_nnf(&p("!(a -> b)")), p("a & !b"));
        assert_eq!(to_cnf(&p("!(a | b)")).unwrap(), p("!a & !b"));
        assert_eq!(to_cnf(&p("a | (b & c)")).unwrap(), p("(a | b) & (a | c)"));
        let f = p("(c | !b) & d");
        assert_eq!(to_cnf(&f).unwrap(), f);
        assert_eq!(to_cnf(&p("a | a")).unwrap(), p("a"));
        assert_eq!(to_cnf(&p("a & false")).unwrap(), Formula::Bottom);
        assert_eq!(to_cnf(&p("a | true")).unwrap(), Formula::Top);
    }

    #[test]
    fn cnf_cap_is_enforced() {
        let f = p("(a & b) | (c & d) | (e & f) | (g & h)");
        assert!(to_cnf_with_cap(&f, 16).is_ok());
        assert!(matches!(to_cnf_with_cap(&f, 15), Err(Error::CnfBlowup { limit: 15 })));
    }

    #[test]
    fn classical_evaluation() {
        let a = Atom::new("a").unwrap();
        let c = Atom::new("c").unwrap();
        let w: Assignment = [(a.clone(), true)].into_iter().collect();
        assert!(!evaluate2(&w, &p("a & !a")).unwrap());
        assert!(evaluate2(&Assignment::default(), &Formula::Top).unwrap());
        let w: Assignment = [(a, false), (c, true)].into_iter().collect();
        assert!(evaluate2(&w, &p("!a & c")).unwrap());
        assert!(matches!(
            evaluate2(&w, &p("b")),
            Err(Error::UnassignedAtom(name)) if name == "b"
        ));
    }
}
