//! Front end for `.qrbs` rule programs.
//!
//! ```text
//! program   := { fact_decl | rule_decl | goal_decl }
//! fact_decl := "fact" IDENT [ "disbelief" NUMBER ]
//! rule_decl := "rule" IDENT ":" "if" expr "then" IDENT
//! goal_decl := "goal" IDENT
//! expr      := term { "or" term }
//! term      := factor { "and" factor }
//! factor    := "not" factor | "(" expr ")" | IDENT
//! ```
//!
//! Keywords are case-insensitive and reserved, identifiers match
//! `[A-Za-z][A-Za-z0-9_]*`, and `#` starts a comment that runs to the end of
//! the line.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use indexmap::IndexMap;
use thiserror::Error;

use crate::uncertainty::Disbelief;

/// 1-based source position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct Span {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Fact(String),
    Not(Box<Expr>),
    And(Box<Expr>, Box<Expr>),
    Or(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn fact(name: impl Into<String>) -> Expr {
        Expr::Fact(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(e: Expr) -> Expr {
        Expr::Not(Box::new(e))
    }

    pub fn and(a: Expr, b: Expr) -> Expr {
        Expr::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Expr, b: Expr) -> Expr {
        Expr::Or(Box::new(a), Box::new(b))
    }

    /// Every fact name referenced, in left-to-right order, with repeats.
    pub fn fact_refs(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_refs(&mut out);
        out
    }

    fn collect_refs<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            Expr::Fact(name) => out.push(name),
            Expr::Not(e) => e.collect_refs(out),
            Expr::And(a, b) | Expr::Or(a, b) => {
                a.collect_refs(out);
                b.collect_refs(out);
            }
        }
    }

    /// Classical truth value under the given fact valuation.
    pub fn eval(&self, value: &impl Fn(&str) -> bool) -> bool {
        match self {
            Expr::Fact(name) => value(name),
            Expr::Not(e) => !e.eval(value),
            Expr::And(a, b) => a.eval(value) && b.eval(value),
            Expr::Or(a, b) => a.eval(value) || b.eval(value),
        }
    }

    /// Number of AND/OR/NOT nodes.
    pub fn operator_count(&self) -> usize {
        match self {
            Expr::Fact(_) => 0,
            Expr::Not(e) => 1 + e.operator_count(),
            Expr::And(a, b) | Expr::Or(a, b) => 1 + a.operator_count() + b.operator_count(),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Or(..) => 1,
            Expr::And(..) => 2,
            Expr::Not(_) | Expr::Fact(_) => 3,
        }
    }

    fn fmt_child(&self, f: &mut fmt::Formatter<'_>, parent: u8, right: bool) -> fmt::Result {
        let p = self.precedence();
        if p < parent || (right && p == parent && p < 3) {
            write!(f, "({self})")
        } else {
            write!(f, "{self}")
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Fact(name) => f.write_str(name),
            Expr::Not(e) => {
                f.write_str("not ")?;
                e.fmt_child(f, 3, false)
            }
            Expr::And(a, b) | Expr::Or(a, b) => {
                let p = self.precedence();
                a.fmt_child(f, p, false)?;
                f.write_str(if p == 1 { " or " } else { " and " })?;
                b.fmt_child(f, p, true)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Rule {
    pub name: String,
    pub premise: Expr,
    pub conclusion: String,
}

impl Rule {
    pub fn new(name: impl Into<String>, premise: Expr, conclusion: impl Into<String>) -> Self {
        Rule { name: name.into(), premise, conclusion: conclusion.into() }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rule {}: if {} then {}", self.name, self.premise, self.conclusion)
    }
}

/// A parsed program: base facts in declaration order, rules, and the goal.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RuleSet {
    pub base_facts: IndexMap<String, Disbelief>,
    pub rules: Vec<Rule>,
    pub goal: String,
}

impl RuleSet {
    pub fn is_concluded(&self, fact: &str) -> bool {
        self.rules.iter().any(|r| r.conclusion == fact)
    }

    /// Replaces the disbelief of an existing base fact.
    pub fn set_disbelief(&mut self, fact: &str, d: Disbelief) -> bool {
        match self.base_facts.get_mut(fact) {
            Some(slot) => {
                *slot = d;
                true
            }
            None => false,
        }
    }

    /// Copy with base-fact disbeliefs replaced in declaration order.
    pub fn with_disbeliefs(&self, values: &[Disbelief]) -> RuleSet {
        let mut rs = self.clone();
        for (slot, &d) in rs.base_facts.values_mut().zip(values) {
            *slot = d;
        }
        rs
    }
}

impl fmt::Display for RuleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, d) in &self.base_facts {
            writeln!(f, "fact {name} disbelief {d}")?;
        }
        for rule in &self.rules {
            writeln!(f, "{rule}")?;
        }
        writeln!(f, "goal {}", self.goal)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Lexical,
    Syntax,
    DisbeliefRange,
    DuplicateFact,
    DuplicateRule,
    DuplicateGoal,
    MissingGoal,
    UndeclaredFact,
    UnreachableGoal,
    MultipleConclusions,
    ConcludedBaseFact,
    Cycle,
}

/// What a diagnostic is about, so a parser can point back into the source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Subject {
    Fact(String),
    Rule(usize),
    Goal,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Diagnostic {
    pub kind: ErrorKind,
    pub subject: Subject,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("{span}: {message}")]
pub struct ParseError {
    pub kind: ErrorKind,
    pub span: Span,
    pub message: String,
}

/// All problems found in one source text.
#[derive(Debug, Clone, PartialEq, Error)]
pub struct ParseErrors(pub Vec<ParseError>);

impl ParseErrors {
    pub fn iter(&self) -> impl Iterator<Item = &ParseError> {
        self.0.iter()
    }

    pub fn has(&self, kind: ErrorKind) -> bool {
        self.0.iter().any(|e| e.kind == kind)
    }
}

impl fmt::Display for ParseErrors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("rule dependency cycle: {}", .0.join(" -> "))]
pub struct CycleError(pub Vec<String>);

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Number(String),
    Colon,
    LParen,
    RParen,
    Kw(Keyword),
    Eof,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Keyword {
    Fact,
    Disbelief,
    Rule,
    If,
    Then,
    Goal,
    And,
    Or,
    Not,
}

impl Keyword {
    fn lookup(word: &str) -> Option<Keyword> {
        let kw = match word.to_ascii_lowercase().as_str() {
            "fact" => Keyword::Fact,
            "disbelief" => Keyword::Disbelief,
            "rule" => Keyword::Rule,
            "if" => Keyword::If,
            "then" => Keyword::Then,
            "goal" => Keyword::Goal,
            "and" => Keyword::And,
            "or" => Keyword::Or,
            "not" => Keyword::Not,
            _ => return None,
        };
        Some(kw)
    }
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "identifier '{s}'"),
            Tok::Number(s) => write!(f, "number {s}"),
            Tok::Colon => f.write_str("':'"),
            Tok::LParen => f.write_str("'('"),
            Tok::RParen => f.write_str("')'"),
            Tok::Kw(k) => write!(f, "keyword '{}'", format!("{k:?}").to_lowercase()),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

fn lex(source: &str) -> Result<Vec<(Tok, Span)>, ParseError> {
    let mut out = Vec::new();
    let mut chars = source.chars().peekable();
    let (mut line, mut col) = (1usize, 1usize);

    while let Some(&ch) = chars.peek() {
        let span = Span { line, col };
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            c
        };
        match ch {
            '\n' | ' ' | '\t' | '\r' => {
                bump(&mut chars);
            }
            '#' => {
                while chars.peek().is_some_and(|&c| c != '\n') {
                    bump(&mut chars);
                }
            }
            ':' | '(' | ')' => {
                bump(&mut chars);
                let tok = match ch {
                    ':' => Tok::Colon,
                    '(' => Tok::LParen,
                    _ => Tok::RParen,
                };
                out.push((tok, span));
            }
            c if c.is_ascii_alphabetic() => {
                let mut word = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        word.push(c);
                        bump(&mut chars);
                    } else {
                        break;
                    }
                }
                let tok = Keyword::lookup(&word).map_or(Tok::Ident(word), Tok::Kw);
                out.push((tok, span));
            }
            c if c.is_ascii_digit() || c == '-' || c == '.' => {
                let mut text = String::new();
                if c == '-' {
                    text.push(c);
                    bump(&mut chars);
                }
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_digit() || c == '.' {
                        text.push(c);
                        bump(&mut chars);
                    } else {
                        break;
                    }
                }
                let digits = text.trim_start_matches('-');
                let well_formed = digits.split('.').count() <= 2
                    && digits.split('.').all(|p| !p.is_empty() && p.bytes().all(|b| b.is_ascii_digit()));
                if !well_formed {
                    return Err(ParseError {
                        kind: ErrorKind::Lexical,
                        span,
                        message: format!("malformed number '{text}'"),
                    });
                }
                out.push((Tok::Number(text), span));
            }
            other => {
                return Err(ParseError {
                    kind: ErrorKind::Lexical,
                    span,
                    message: format!("unexpected character '{other}'"),
                });
            }
        }
    }
    out.push((Tok::Eof, Span { line, col }));
    Ok(out)
}

/// Where each named element of a program was declared.
#[derive(Debug, Default)]
struct SourceMap {
    facts: HashMap<String, Span>,
    rules: Vec<Span>,
    goal: Span,
    eof: Span,
}

impl SourceMap {
    fn locate(&self, subject: &Subject) -> Span {
        match subject {
            Subject::Fact(name) => self.facts.get(name).copied().unwrap_or(self.eof),
            Subject::Rule(i) => self.rules.get(*i).copied().unwrap_or(self.eof),
            Subject::Goal => self.goal,
        }
    }
}

struct Parser {
    tokens: Vec<(Tok, Span)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].0
    }

    fn span(&self) -> Span {
        self.tokens[self.pos].1
    }

    fn advance(&mut self) -> (Tok, Span) {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &str) -> ParseError {
        ParseError {
            kind: ErrorKind::Syntax,
            span: self.span(),
            message: format!("expected {expected}, found {}", self.peek()),
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<Span, ParseError> {
        if *self.peek() == tok {
            Ok(self.advance().1)
        } else {
            Err(self.error(what))
        }
    }

    fn ident(&mut self, what: &str) -> Result<(String, Span), ParseError> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                let span = self.advance().1;
                Ok((name, span))
            }
            _ => Err(self.error(what)),
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        while *self.peek() == Tok::Kw(Keyword::Or) {
            self.advance();
            lhs = Expr::or(lhs, self.term()?);
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        while *self.peek() == Tok::Kw(Keyword::And) {
            self.advance();
            lhs = Expr::and(lhs, self.factor()?);
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Tok::Kw(Keyword::Not) => {
                self.advance();
                Ok(Expr::not(self.factor()?))
            }
            Tok::LParen => {
                self.advance();
                let e = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            Tok::Ident(_) => Ok(Expr::Fact(self.ident("fact name")?.0)),
            _ => Err(self.error("fact name, 'not' or '('")),
        }
    }
}

/// Parses and validates a program.
///
/// Facts declared without a `disbelief` clause are taken as certainly true.
pub fn parse(source: &str) -> Result<RuleSet, ParseErrors> {
    let tokens = lex(source).map_err(|e| ParseErrors(vec![e]))?;
    let mut p = Parser { tokens, pos: 0 };
    let mut rs = RuleSet::default();
    let mut map = SourceMap::default();
    let mut errors = Vec::new();
    let mut rule_names: HashMap<String, Span> = HashMap::new();
    let mut goal: Option<(String, Span)> = None;

    let fail = |e: ParseError| ParseErrors(vec![e]);
    loop {
        let (tok, span) = p.advance();
        match tok {
            Tok::Eof => {
                map.eof = span;
                break;
            }
            Tok::Kw(Keyword::Fact) => {
                let (name, name_span) = p.ident("fact name").map_err(fail)?;
                let mut delta = Disbelief::CERTAIN;
                if *p.peek() == Tok::Kw(Keyword::Disbelief) {
                    p.advance();
                    let Tok::Number(text) = p.peek().clone() else {
                        return Err(fail(p.error("disbelief value")));
                    };
                    let num_span = p.advance().1;
                    let value: f64 = text.parse().map_err(|_| {
                        fail(ParseError {
                            kind: ErrorKind::Lexical,
                            span: num_span,
                            message: format!("malformed number '{text}'"),
                        })
                    })?;
                    match Disbelief::new(value) {
                        Ok(d) => delta = d,
                        Err(e) => errors.push(ParseError {
                            kind: ErrorKind::DisbeliefRange,
                            span: num_span,
                            message: format!("fact '{name}': {e}"),
                        }),
                    }
                }
                if map.facts.contains_key(&name) {
                    errors.push(ParseError {
                        kind: ErrorKind::DuplicateFact,
                        span: name_span,
                        message: format!("fact '{name}' declared more than once"),
                    });
                } else {
                    map.facts.insert(name.clone(), name_span);
                    rs.base_facts.insert(name, delta);
                }
            }
            Tok::Kw(Keyword::Rule) => {
                let (name, name_span) = p.ident("rule name").map_err(fail)?;
                p.expect(Tok::Colon, "':'").map_err(fail)?;
                p.expect(Tok::Kw(Keyword::If), "'if'").map_err(fail)?;
                let premise = p.expr().map_err(fail)?;
                p.expect(Tok::Kw(Keyword::Then), "'then'").map_err(fail)?;
                let (conclusion, _) = p.ident("conclusion fact name").map_err(fail)?;
                if rule_names.contains_key(&name) {
                    errors.push(ParseError {
                        kind: ErrorKind::DuplicateRule,
                        span: name_span,
                        message: format!("rule '{name}' declared more than once"),
                    });
                    continue;
                }
                rule_names.insert(name.clone(), name_span);
                map.rules.push(name_span);
                rs.rules.push(Rule { name, premise, conclusion });
            }
            Tok::Kw(Keyword::Goal) => {
                let (name, name_span) = p.ident("goal fact name").map_err(fail)?;
                if goal.is_some() {
                    errors.push(ParseError {
                        kind: ErrorKind::DuplicateGoal,
                        span,
                        message: "only one goal may be declared".to_string(),
                    });
                } else {
                    goal = Some((name, name_span));
                }
            }
            other => {
                return Err(fail(ParseError {
                    kind: ErrorKind::Syntax,
                    span,
                    message: format!("expected 'fact', 'rule' or 'goal', found {other}"),
                }));
            }
        }
    }

    match goal {
        Some((name, span)) => {
            rs.goal = name;
            map.goal = span;
        }
        None => errors.push(ParseError {
            kind: ErrorKind::MissingGoal,
            span: map.eof,
            message: "program declares no goal".to_string(),
        }),
    }

    if !rs.goal.is_empty() {
        errors.extend(validate(&rs).into_iter().map(|d| ParseError {
            kind: d.kind,
            span: map.locate(&d.subject),
            message: d.message,
        }));
    }
    if errors.is_empty() {
        Ok(rs)
    } else {
        errors.sort_by_key(|e| e.span);
        Err(ParseErrors(errors))
    }
}

/// Checks the structural invariants of a rule set; empty means valid.
pub fn validate(rs: &RuleSet) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let mut seen_names: HashSet<&str> = HashSet::new();
    let mut concluded_by: HashMap<&str, usize> = HashMap::new();

    for (i, rule) in rs.rules.iter().enumerate() {
        if !seen_names.insert(&rule.name) {
            out.push(Diagnostic {
                kind: ErrorKind::DuplicateRule,
                subject: Subject::Rule(i),
                message: format!("rule '{}' declared more than once", rule.name),
            });
        }
        if rs.base_facts.contains_key(&rule.conclusion) {
            out.push(Diagnostic {
                kind: ErrorKind::ConcludedBaseFact,
                subject: Subject::Rule(i),
                message: format!("base fact '{}' is concluded by {}", rule.conclusion, rule.name),
            });
        }
        match concluded_by.get(rule.conclusion.as_str()) {
            Some(&first) => out.push(Diagnostic {
                kind: ErrorKind::MultipleConclusions,
                subject: Subject::Rule(i),
                message: format!("fact '{}' concluded by {} and {}", rule.conclusion, rs.rules[first].name, rule.name),
            }),
            None => {
                concluded_by.insert(&rule.conclusion, i);
            }
        }
    }

    for (i, rule) in rs.rules.iter().enumerate() {
        let mut reported = HashSet::new();
        for fact in rule.premise.fact_refs() {
            let known = rs.base_facts.contains_key(fact) || concluded_by.contains_key(fact);
            if !known && reported.insert(fact) {
                out.push(Diagnostic {
                    kind: ErrorKind::UndeclaredFact,
                    subject: Subject::Rule(i),
                    message: format!("rule '{}' references undeclared fact '{fact}'", rule.name),
                });
            }
        }
    }

    if !rs.base_facts.contains_key(&rs.goal) && !concluded_by.contains_key(rs.goal.as_str()) {
        out.push(Diagnostic {
            kind: ErrorKind::UnreachableGoal,
            subject: Subject::Goal,
            message: format!("goal '{}' is neither a base fact nor concluded", rs.goal),
        });
    }

    if let Some(cycle) = find_cycle(rs, &concluded_by) {
        out.push(Diagnostic {
            kind: ErrorKind::Cycle,
            subject: Subject::Rule(cycle[0]),
            message: format!(
                "cycle detected through rules {}",
                cycle.iter().map(|&i| rs.rules[i].name.as_str()).collect::<Vec<_>>().join(" -> ")
            ),
        });
    }
    out
}

/// Indices of the rules whose conclusions `rule` reads, deduplicated.
fn dependencies(rule: &Rule, concluded_by: &HashMap<&str, usize>) -> Vec<usize> {
    let mut deps: Vec<usize> =
        rule.premise.fact_refs().into_iter().filter_map(|f| concluded_by.get(f).copied()).collect();
    deps.sort_unstable();
    deps.dedup();
    deps
}

/// First rule cycle found by depth-first search, closed (first == last).
fn find_cycle(rs: &RuleSet, concluded_by: &HashMap<&str, usize>) -> Option<Vec<usize>> {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        New,
        Active,
        Done,
    }
    fn visit(i: usize, deps: &[Vec<usize>], marks: &mut [Mark], stack: &mut Vec<usize>) -> Option<Vec<usize>> {
        marks[i] = Mark::Active;
        stack.push(i);
        for &j in &deps[i] {
            match marks[j] {
                Mark::Active => {
                    let start = stack.iter().position(|&k| k == j).unwrap();
                    let mut cycle = stack[start..].to_vec();
                    cycle.push(j);
                    return Some(cycle);
                }
                Mark::New => {
                    if let Some(c) = visit(j, deps, marks, stack) {
                        return Some(c);
                    }
                }
                Mark::Done => {}
            }
        }
        stack.pop();
        marks[i] = Mark::Done;
        None
    }

    let deps: Vec<Vec<usize>> = rs.rules.iter().map(|r| dependencies(r, concluded_by)).collect();
    let mut marks = vec![Mark::New; rs.rules.len()];
    for i in 0..rs.rules.len() {
        if marks[i] == Mark::New {
            if let Some(mut c) = visit(i, &deps, &mut marks, &mut Vec::new()) {
                // report the cycle starting at its earliest-declared rule
                c.pop();
                let k = (0..c.len()).min_by_key(|&k| c[k]).unwrap();
                c.rotate_left(k);
                c.push(c[0]);
                return Some(c);
            }
        }
    }
    None
}

/// Rules ordered so that each follows every rule it depends on; among rules
/// that are ready at the same time, declaration order wins.
pub fn topo_order(rs: &RuleSet) -> Result<Vec<&Rule>, CycleError> {
    let mut concluded_by: HashMap<&str, usize> = HashMap::new();
    for (i, r) in rs.rules.iter().enumerate() {
        concluded_by.entry(&r.conclusion).or_insert(i);
    }
    let deps: Vec<Vec<usize>> = rs.rules.iter().map(|r| dependencies(r, &concluded_by)).collect();
    let mut pending: Vec<usize> = deps.iter().map(Vec::len).collect();
    let mut dependents = vec![Vec::new(); rs.rules.len()];
    for (i, ds) in deps.iter().enumerate() {
        for &d in ds {
            dependents[d].push(i);
        }
    }
    let mut ready: BTreeSet<usize> = (0..rs.rules.len()).filter(|&i| pending[i] == 0).collect();
    let mut order = Vec::with_capacity(rs.rules.len());
    while let Some(i) = ready.pop_first() {
        order.push(&rs.rules[i]);
        for &j in &dependents[i] {
            pending[j] -= 1;
            if pending[j] == 0 {
                ready.insert(j);
            }
        }
    }
    if order.len() < rs.rules.len() {
        let cycle = find_cycle(rs, &concluded_by).unwrap_or_default();
        return Err(CycleError(cycle.iter().map(|&i| rs.rules[i].name.clone()).collect()));
    }
    Ok(order)
}
