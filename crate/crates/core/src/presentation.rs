//! The presentation file format: a small sectioned text format declaring
//! parameters, assumptions, constraints, generators, relations, and
//! optional twist data, plus the infix expression grammar used throughout
//! the CLI.
//!
//! Grammar notes: `+ - * ^` with integer exponents and parenthesization;
//! juxtaposition is not multiplication (an explicit `*` is required).
//! Relations are written `lhs = rhs` or as a single expression meaning
//! `expr = 0`.

use crate::algebras::{AlgebraError, GradedMap, Presentation};
use crate::ncpoly::{GenSet, NcPoly};
use crate::scalars::{Assumption, ParamRing, ParamScalar, ScalarError};
use crate::twistnak::TwistConvention;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("syntax error at {line}:{col}: expected {expected}")]
    Syntax {
        line: usize,
        col: usize,
        expected: String,
    },
    #[error("unknown symbol `{name}` at {line}:{col}")]
    UnknownSymbol {
        line: usize,
        col: usize,
        name: String,
    },
    #[error("relation {index} is not homogeneous")]
    NonHomogeneousRelation { index: usize },
    #[error("generators may not be raised to negative powers (at {line}:{col})")]
    NegativeGeneratorPower { line: usize, col: usize },
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("{0}")]
    Structure(String),
}

// ---------------------------------------------------------------- lexer

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(i64),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    Eq,
}

#[derive(Debug, Clone)]
struct Lexed {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str, line: usize) -> Result<Vec<Lexed>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0usize;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            ' ' | '\t' => {
                i += 1;
            }
            '+' => {
                out.push(Lexed { tok: Tok::Plus, line, col });
                i += 1;
            }
            '-' => {
                out.push(Lexed { tok: Tok::Minus, line, col });
                i += 1;
            }
            '*' => {
                out.push(Lexed { tok: Tok::Star, line, col });
                i += 1;
            }
            '^' => {
                out.push(Lexed { tok: Tok::Caret, line, col });
                i += 1;
            }
            '(' => {
                out.push(Lexed { tok: Tok::LParen, line, col });
                i += 1;
            }
            ')' => {
                out.push(Lexed { tok: Tok::RParen, line, col });
                i += 1;
            }
            '=' => {
                out.push(Lexed { tok: Tok::Eq, line, col });
                i += 1;
            }
            c if c.is_ascii_digit() => {
                let mut j = i;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                let s: String = chars[i..j].iter().collect();
                let v = s.parse::<i64>().map_err(|_| ParseError::Syntax {
                    line,
                    col,
                    expected: "integer".into(),
                })?;
                out.push(Lexed { tok: Tok::Int(v), line, col });
                i = j;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut j = i;
                while j < chars.len()
                    && (chars[j].is_ascii_alphanumeric() || chars[j] == '_')
                {
                    j += 1;
                }
                let s: String = chars[i..j].iter().collect();
                out.push(Lexed { tok: Tok::Ident(s), line, col });
                i = j;
            }
            other => {
                return Err(ParseError::Syntax {
                    line,
                    col,
                    expected: format!("token (found `{}`)", other),
                })
            }
        }
    }
    Ok(out)
}

// --------------------------------------------------------------- parser

/// Evaluation context: parameters resolve to scalars, generator names to
/// generator polynomials. Generators may be absent (scalar-only context).
pub struct ExprContext<'a> {
    pub ring: &'a Arc<ParamRing>,
    pub gens: Option<&'a Arc<GenSet>>,
}

struct Parser<'a> {
    toks: Vec<Lexed>,
    pos: usize,
    ctx: &'a ExprContext<'a>,
    line: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|l| &l.tok)
    }

    fn loc(&self) -> (usize, usize) {
        self.toks
            .get(self.pos.min(self.toks.len().saturating_sub(1)))
            .map(|l| (l.line, l.col))
            .unwrap_or((self.line, 1))
    }

    fn bump(&mut self) -> Option<Lexed> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<(), ParseError> {
        match self.bump() {
            Some(l) if l.tok == t => Ok(()),
            Some(l) => Err(ParseError::Syntax {
                line: l.line,
                col: l.col,
                expected: what.into(),
            }),
            None => Err(ParseError::Syntax {
                line: self.line,
                col: 1,
                expected: what.into(),
            }),
        }
    }

    fn one(&self) -> NcPoly {
        match self.ctx.gens {
            Some(g) => NcPoly::one(g, self.ctx.ring),
            None => {
                // scalar-only context: empty word over a one-generator dummy
                // is avoided by storing constants on the empty word anyway
                let g = GenSet::new(&[("__dummy", vec![1])], &["__dummy"]);
                NcPoly::one(&g, self.ctx.ring)
            }
        }
    }

    fn expr(&mut self) -> Result<NcPoly, ParseError> {
        let mut acc = if matches!(self.peek(), Some(Tok::Minus)) {
            self.bump();
            self.term()?.neg()
        } else {
            self.term()?
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    let t = self.term()?;
                    acc = acc.add(&t);
                }
                Some(Tok::Minus) => {
                    self.bump();
                    let t = self.term()?;
                    acc = acc.sub(&t);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<NcPoly, ParseError> {
        let mut acc = self.factor()?;
        while matches!(self.peek(), Some(Tok::Star)) {
            self.bump();
            let f = self.factor()?;
            acc = acc.mul(&f);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<NcPoly, ParseError> {
        let base = self.base()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.bump();
            let neg = if matches!(self.peek(), Some(Tok::Minus)) {
                self.bump();
                true
            } else {
                false
            };
            let (line, col) = self.loc();
            let e = match self.bump() {
                Some(Lexed {
                    tok: Tok::Int(v), ..
                }) => v,
                _ => {
                    return Err(ParseError::Syntax {
                        line,
                        col,
                        expected: "integer exponent".into(),
                    })
                }
            };
            let e = if neg { -e } else { e };
            return self.power(base, e, line, col);
        }
        Ok(base)
    }

    fn power(
        &self,
        base: NcPoly,
        e: i64,
        line: usize,
        col: usize,
    ) -> Result<NcPoly, ParseError> {
        // scalar (coefficient on the empty word only) admits negative powers
        let scalar_only = base.terms.keys().all(|w| w.is_empty());
        if scalar_only {
            let c = base
                .terms
                .values()
                .next()
                .cloned()
                .unwrap_or_else(|| ParamScalar::zero(self.ctx.ring));
            let p = c.pow(e)?;
            return Ok(self.one().scale(&p));
        }
        if e < 0 {
            return Err(ParseError::NegativeGeneratorPower { line, col });
        }
        let mut acc = self.one();
        for _ in 0..e {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    fn base(&mut self) -> Result<NcPoly, ParseError> {
        let (line, col) = self.loc();
        match self.bump() {
            Some(Lexed {
                tok: Tok::Int(v), ..
            }) => Ok(self.one().scale(&ParamScalar::int(self.ctx.ring, v))),
            Some(Lexed {
                tok: Tok::Ident(name),
                line,
                col,
            }) => {
                if let Some(gens) = self.ctx.gens {
                    if let Some(i) = gens.index_of(&name) {
                        return Ok(NcPoly::gen(gens, self.ctx.ring, i));
                    }
                }
                if self.ctx.ring.param_index(&name).is_some() {
                    let s = ParamScalar::param(self.ctx.ring, &name)?;
                    return Ok(self.one().scale(&s));
                }
                Err(ParseError::UnknownSymbol { line, col, name })
            }
            Some(Lexed {
                tok: Tok::LParen, ..
            }) => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "closing `)`")?;
                Ok(e)
            }
            Some(Lexed {
                tok: Tok::Minus, ..
            }) => Ok(self.factor()?.neg()),
            Some(l) => Err(ParseError::Syntax {
                line: l.line,
                col: l.col,
                expected: "expression".into(),
            }),
            None => Err(ParseError::Syntax {
                line,
                col,
                expected: "expression".into(),
            }),
        }
    }
}

/// Parse one expression (optionally `lhs = rhs`, folded to `lhs - rhs`).
pub fn parse_expr(
    ctx: &ExprContext<'_>,
    text: &str,
    line: usize,
) -> Result<NcPoly, ParseError> {
    let toks = lex(text, line)?;
    let eq_pos = toks.iter().position(|l| l.tok == Tok::Eq);
    match eq_pos {
        None => {
            let mut p = Parser {
                toks,
                pos: 0,
                ctx,
                line,
            };
            let e = p.expr()?;
            if p.pos != p.toks.len() {
                let (line, col) = p.loc();
                return Err(ParseError::Syntax {
                    line,
                    col,
                    expected: "end of expression".into(),
                });
            }
            Ok(e)
        }
        Some(i) => {
            let lhs = Lexed_slice(&toks[..i]);
            let rhs = Lexed_slice(&toks[i + 1..]);
            let mut pl = Parser {
                toks: lhs,
                pos: 0,
                ctx,
                line,
            };
            let l = pl.expr()?;
            let mut pr = Parser {
                toks: rhs,
                pos: 0,
                ctx,
                line,
            };
            let r = pr.expr()?;
            Ok(l.sub(&r))
        }
    }
}

#[allow(non_snake_case)]
fn Lexed_slice(s: &[Lexed]) -> Vec<Lexed> {
    s.to_vec()
}

/// Parse a scalar-valued expression (no generators in scope).
pub fn parse_scalar(
    ring: &Arc<ParamRing>,
    text: &str,
) -> Result<ParamScalar, ParseError> {
    let ctx = ExprContext { ring, gens: None };
    let p = parse_expr(&ctx, text, 1)?;
    let mut out = ParamScalar::zero(ring);
    for (w, c) in &p.terms {
        if !w.is_empty() {
            return Err(ParseError::Structure(
                "expected a scalar expression".into(),
            ));
        }
        out = out.add(c);
    }
    Ok(out)
}

// ----------------------------------------------------- document structure

/// Abstract form of a presentation file.
#[derive(Debug, Clone)]
pub struct PresentationDoc {
    pub label: String,
    pub params: Vec<(String, u32)>,
    pub display: Option<Vec<String>>,
    pub assume_lines: Vec<String>,
    pub constraint_lines: Vec<String>,
    pub rank: usize,
    pub generators: Vec<(String, Vec<i32>)>,
    pub precedence: Option<Vec<String>>,
    pub relation_lines: Vec<String>,
    pub twist_convention: Option<TwistConvention>,
    pub twist_lines: Vec<String>,
    pub budget: Option<u32>,
}

impl Default for PresentationDoc {
    fn default() -> Self {
        PresentationDoc {
            label: "custom".into(),
            params: Vec::new(),
            display: None,
            assume_lines: Vec::new(),
            constraint_lines: Vec::new(),
            rank: 1,
            generators: Vec::new(),
            precedence: None,
            relation_lines: Vec::new(),
            twist_convention: None,
            twist_lines: Vec::new(),
            budget: None,
        }
    }
}

/// Everything a presentation file can define.
pub struct ParsedFile {
    pub doc: PresentationDoc,
    pub presentation: Arc<Presentation>,
    pub twists: Vec<GradedMap>,
    pub convention: Option<TwistConvention>,
}

/// Parse the sectioned document into its abstract form.
pub fn parse_document(text: &str) -> Result<PresentationDoc, ParseError> {
    let mut doc = PresentationDoc::default();
    let mut section = String::new();
    for (lineno0, raw) in text.lines().enumerate() {
        let lineno = lineno0 + 1;
        let line = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        };
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if line.starts_with('[') {
            if !line.ends_with(']') {
                return Err(ParseError::Syntax {
                    line: lineno,
                    col: line.len(),
                    expected: "closing `]` on section header".into(),
                });
            }
            section = line[1..line.len() - 1].trim().to_lowercase();
            continue;
        }
        match section.as_str() {
            "label" => doc.label = line.to_string(),
            "params" => {
                if let Some(rest) = line.strip_prefix("display ") {
                    doc.display =
                        Some(rest.split_whitespace().map(String::from).collect());
                } else {
                    for part in line.split_whitespace() {
                        let (name, w) = match part.split_once(':') {
                            Some((n, w)) => {
                                let weight =
                                    w.parse::<u32>().map_err(|_| ParseError::Syntax {
                                        line: lineno,
                                        col: 1,
                                        expected: "integer weight".into(),
                                    })?;
                                (n.to_string(), weight)
                            }
                            None => (part.to_string(), 1),
                        };
                        doc.params.push((name, w));
                    }
                }
            }
            "assume" => doc.assume_lines.push(line.to_string()),
            "constraints" => doc.constraint_lines.push(line.to_string()),
            "grading" => {
                let rest = line.strip_prefix("rank").ok_or(ParseError::Syntax {
                    line: lineno,
                    col: 1,
                    expected: "`rank <n>`".into(),
                })?;
                doc.rank = rest.trim().parse().map_err(|_| ParseError::Syntax {
                    line: lineno,
                    col: 1,
                    expected: "integer rank".into(),
                })?;
            }
            "generators" => {
                let (name, deg) = line.split_once(':').ok_or(ParseError::Syntax {
                    line: lineno,
                    col: 1,
                    expected: "`name : degree`".into(),
                })?;
                let name = name.trim().to_string();
                let deg = deg.trim();
                let multi: Vec<i32> = if deg.starts_with('(') {
                    deg.trim_matches(|c| c == '(' || c == ')')
                        .split(',')
                        .map(|s| s.trim().parse::<i32>())
                        .collect::<Result<_, _>>()
                        .map_err(|_| ParseError::Syntax {
                            line: lineno,
                            col: 1,
                            expected: "integer multidegree".into(),
                        })?
                } else {
                    vec![deg.parse::<i32>().map_err(|_| ParseError::Syntax {
                        line: lineno,
                        col: 1,
                        expected: "integer degree".into(),
                    })?]
                };
                doc.generators.push((name, multi));
            }
            "precedence" => {
                doc.precedence = Some(
                    line.split('>')
                        .map(|s| s.trim().to_string())
                        .filter(|s| !s.is_empty())
                        .collect(),
                );
            }
            "relations" => doc.relation_lines.push(line.to_string()),
            "twist" => {
                if let Some(rest) = line.strip_prefix("convention") {
                    doc.twist_convention = Some(match rest.trim() {
                        "left" => TwistConvention::Left,
                        "right" => TwistConvention::Right,
                        other => {
                            return Err(ParseError::Syntax {
                                line: lineno,
                                col: 1,
                                expected: format!(
                                    "`left` or `right` (found `{}`)",
                                    other
                                ),
                            })
                        }
                    });
                } else {
                    doc.twist_lines.push(line.to_string());
                }
            }
            "budget" => {
                doc.budget = Some(line.parse().map_err(|_| ParseError::Syntax {
                    line: lineno,
                    col: 1,
                    expected: "integer budget".into(),
                })?);
            }
            "" => {
                return Err(ParseError::Syntax {
                    line: lineno,
                    col: 1,
                    expected: "section header before content".into(),
                })
            }
            other => {
                return Err(ParseError::Syntax {
                    line: lineno,
                    col: 1,
                    expected: format!("known section (found `[{}]`)", other),
                })
            }
        }
    }
    Ok(doc)
}

fn parse_assumption(
    ring: &Arc<ParamRing>,
    line: &str,
) -> Result<Assumption, ParseError> {
    if let Some(head) = line.strip_suffix("multiplicatively-independent") {
        let head = head.trim();
        let inner = head
            .strip_prefix('{')
            .and_then(|s| s.strip_suffix('}'))
            .ok_or_else(|| ParseError::Structure(format!(
                "expected `{{p, q, ...}} multiplicatively-independent`: {}",
                line
            )))?;
        let names: Vec<String> = inner
            .split(',')
            .map(|s| s.trim().to_string())
            .filter(|s| !s.is_empty())
            .collect();
        for n in &names {
            if ring.param_index(n).is_none() {
                return Err(ParseError::UnknownSymbol {
                    line: 0,
                    col: 0,
                    name: n.clone(),
                });
            }
        }
        return Ok(Assumption::MultiplicativelyIndependent(names));
    }
    for (suffix, make) in [
        (
            "not-root-of-unity",
            Assumption::NotRootOfUnity as fn(ParamScalar) -> Assumption,
        ),
        ("not-equal-one", Assumption::NotEqualOne as fn(_) -> _),
        ("nonzero", Assumption::Nonzero as fn(_) -> _),
    ] {
        if let Some(head) = line.strip_suffix(suffix) {
            let s = parse_scalar(ring, head.trim())?;
            let a = make(s);
            a.validate()?;
            return Ok(a);
        }
    }
    Err(ParseError::Structure(format!(
        "unrecognized assumption: {}",
        line
    )))
}

/// Build the algebra (and twist data) described by a document.
pub fn build_document(
    doc: &PresentationDoc,
    default_budget: u32,
) -> Result<ParsedFile, ParseError> {
    let weighted: Vec<(&str, u32)> =
        doc.params.iter().map(|(n, w)| (n.as_str(), *w)).collect();
    // constraints are parsed over an unconstrained copy of the ring
    let plain = ParamRing::weighted(&weighted);
    let mut constraint_polys = Vec::new();
    for line in &doc.constraint_lines {
        let s = parse_scalar(&plain, line)?;
        let f = s.numerator().clone();
        constraint_polys.push(f);
    }
    let ring = if constraint_polys.is_empty() {
        plain
    } else {
        ParamRing::constrained(&weighted, constraint_polys)?
    };
    let ring = match &doc.display {
        Some(order) => {
            let refs: Vec<&str> = order.iter().map(String::as_str).collect();
            ring.with_display_order(&refs)
        }
        None => ring,
    };
    let mut assumptions = Vec::new();
    for line in &doc.assume_lines {
        assumptions.push(parse_assumption(&ring, line)?);
    }
    if doc.generators.is_empty() {
        return Err(ParseError::Structure(
            "a presentation needs at least one generator".into(),
        ));
    }
    for (_, d) in &doc.generators {
        if d.len() != doc.rank {
            return Err(ParseError::Structure(format!(
                "generator degree rank {} does not match grading rank {}",
                d.len(),
                doc.rank
            )));
        }
    }
    let gen_pairs: Vec<(&str, Vec<i32>)> = doc
        .generators
        .iter()
        .map(|(n, d)| (n.as_str(), d.clone()))
        .collect();
    let gens = match &doc.precedence {
        Some(p) => {
            let refs: Vec<&str> = p.iter().map(String::as_str).collect();
            GenSet::new(&gen_pairs, &refs)
        }
        None => {
            let refs: Vec<&str> = gen_pairs.iter().map(|(n, _)| *n).collect();
            GenSet::new(&gen_pairs, &refs)
        }
    };
    let ctx = ExprContext {
        ring: &ring,
        gens: Some(&gens),
    };
    let mut relations = Vec::new();
    for (index, line) in doc.relation_lines.iter().enumerate() {
        let p = parse_expr(&ctx, line, index + 1)?;
        if p.multidegree(&gens).is_none() && !p.is_zero() {
            return Err(ParseError::NonHomogeneousRelation { index });
        }
        relations.push(p);
    }
    let budget = doc.budget.unwrap_or(default_budget);
    let presentation = Presentation::new(
        &doc.label,
        &ring,
        &gens,
        relations,
        assumptions,
        budget,
    )?;
    // twist maps: `name: g -> expr; g -> expr; ...`
    let mut twists = Vec::new();
    for line in &doc.twist_lines {
        let body = match line.split_once(':') {
            Some((_, b)) => b,
            None => line.as_str(),
        };
        let mut images: Vec<Option<NcPoly>> = vec![None; gens.len()];
        for clause in body.split(';') {
            let clause = clause.trim();
            if clause.is_empty() {
                continue;
            }
            let (lhs, rhs) = clause.split_once("->").ok_or_else(|| {
                ParseError::Structure(format!("expected `gen -> expr`: {}", clause))
            })?;
            let gname = lhs.trim();
            let gi = gens.index_of(gname).ok_or(ParseError::UnknownSymbol {
                line: 0,
                col: 0,
                name: gname.to_string(),
            })?;
            images[gi] = Some(parse_expr(&ctx, rhs.trim(), 1)?);
        }
        let images: Vec<NcPoly> = images
            .into_iter()
            .enumerate()
            .map(|(i, im)| im.unwrap_or_else(|| presentation.gen_poly(i)))
            .collect();
        twists.push(GradedMap::new(&presentation, &presentation, images)?);
    }
    Ok(ParsedFile {
        doc: doc.clone(),
        convention: doc.twist_convention,
        presentation,
        twists,
    })
}

/// One-step convenience: text to algebra.
pub fn parse_presentation(
    text: &str,
    default_budget: u32,
) -> Result<ParsedFile, ParseError> {
    let doc = parse_document(text)?;
    build_document(&doc, default_budget)
}

/// Canonical text: parsing it again reproduces the same document.
pub fn print_document(doc: &PresentationDoc) -> String {
    let mut out = String::new();
    let mut push = |s: String| {
        out.push_str(&s);
        out.push('\n');
    };
    push("[label]".into());
    push(doc.label.clone());
    if !doc.params.is_empty() {
        push("[params]".into());
        let line: Vec<String> = doc
            .params
            .iter()
            .map(|(n, w)| {
                if *w == 1 {
                    n.clone()
                } else {
                    format!("{}:{}", n, w)
                }
            })
            .collect();
        push(line.join(" "));
        if let Some(d) = &doc.display {
            push(format!("display {}", d.join(" ")));
        }
    }
    if !doc.assume_lines.is_empty() {
        push("[assume]".into());
        for l in &doc.assume_lines {
            push(l.clone());
        }
    }
    if !doc.constraint_lines.is_empty() {
        push("[constraints]".into());
        for l in &doc.constraint_lines {
            push(l.clone());
        }
    }
    if doc.rank != 1 {
        push("[grading]".into());
        push(format!("rank {}", doc.rank));
    }
    push("[generators]".into());
    for (n, d) in &doc.generators {
        if d.len() == 1 {
            push(format!("{} : {}", n, d[0]));
        } else {
            let parts: Vec<String> = d.iter().map(|x| x.to_string()).collect();
            push(format!("{} : ({})", n, parts.join(",")));
        }
    }
    if let Some(p) = &doc.precedence {
        push("[precedence]".into());
        push(p.join(" > "));
    }
    if !doc.relation_lines.is_empty() {
        push("[relations]".into());
        for l in &doc.relation_lines {
            push(l.clone());
        }
    }
    if doc.twist_convention.is_some() || !doc.twist_lines.is_empty() {
        push("[twist]".into());
        if let Some(c) = doc.twist_convention {
            push(format!(
                "convention {}",
                match c {
                    TwistConvention::Left => "left",
                    TwistConvention::Right => "right",
                }
            ));
        }
        for l in &doc.twist_lines {
            push(l.clone());
        }
    }
    if let Some(b) = doc.budget {
        push("[budget]".into());
        push(format!("{}", b));
    }
    out
}

impl fmt::Display for PresentationDoc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", print_document(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const A2_FILE: &str = r#"
[label]
a2
[params]
p
[assume]
p not-root-of-unity
[generators]
t1 : 1
t2 : 1
t3 : 1
[precedence]
t3 > t2 > t1
[relations]
t1*t2 - t2*t1 = 0
t1*t3 - t3*t1 = 0
t3*t2 - p*t2*t3 - t1^2 = 0
[budget]
6
"#;

    #[test]
    fn parses_a2_relation() {
        let f = parse_presentation(A2_FILE, 8).unwrap();
        assert_eq!(f.presentation.label(), "a2");
        assert_eq!(f.presentation.relations().len(), 3);
        assert_eq!(f.presentation.budget(), 6);
        // t3*t2 rewrites to p*t2*t3 + t1^2
        let g = f.presentation.gens().clone();
        let nf = f
            .presentation
            .nf(&NcPoly::term(
                g.word(&[2, 1]),
                ParamScalar::one(f.presentation.ring()),
            ))
            .unwrap();
        assert_eq!(nf.format(&g), "p*t2*t3 + t1^2");
    }

    #[test]
    fn down_up_relation_parses() {
        let text = r#"
[params]
p
[generators]
x : 1
y : 1
[relations]
x^2*y - p*y*x^2
x*y^2 + p*y^2*x
"#;
        let f = parse_presentation(text, 8).unwrap();
        assert_eq!(f.presentation.relations().len(), 2);
        let g = f.presentation.gens().clone();
        // leading word of relation 1 is x^2*y with precedence x > y
        let nf = f
            .presentation
            .nf(&NcPoly::term(
                g.word(&[0, 0, 1]),
                ParamScalar::one(f.presentation.ring()),
            ))
            .unwrap();
        assert_eq!(nf.format(&g), "p*y*x^2");
    }

    #[test]
    fn empty_relations_is_free_algebra() {
        let text = "[generators]\nx : 1\ny : 1\n";
        let f = parse_presentation(text, 4).unwrap();
        assert!(f.presentation.relations().is_empty());
        let h = f.presentation.rewrite().hilbert_coeffs(3).unwrap();
        assert_eq!(h, vec![1, 2, 4, 8]);
    }

    #[test]
    fn syntax_error_carries_position() {
        let text = "[generators]\nx : 1\n[relations]\nx * * x\n";
        match parse_presentation(text, 4) {
            Err(ParseError::Syntax { line, col, .. }) => {
                assert_eq!(line, 1); // relation lines are numbered per section
                assert!(col > 0);
            }
            other => panic!("expected syntax error, got {:?}", other.err()),
        }
    }

    #[test]
    fn unknown_symbol_rejected() {
        let text = "[generators]\nx : 1\n[relations]\nx*z\n";
        assert!(matches!(
            parse_presentation(text, 4),
            Err(ParseError::UnknownSymbol { .. })
        ));
    }

    #[test]
    fn juxtaposition_is_rejected() {
        let text = "[generators]\nx : 1\ny : 1\n[relations]\nx y\n";
        assert!(parse_presentation(text, 4).is_err());
    }

    #[test]
    fn round_trip_is_stable() {
        let doc = parse_document(A2_FILE).unwrap();
        let printed = print_document(&doc);
        let doc2 = parse_document(&printed).unwrap();
        assert_eq!(print_document(&doc2), printed);
    }

    #[test]
    fn twist_section_parses() {
        let text = r#"
[params]
q
[generators]
t1 : 1
t2 : 1
t3 : 1
[precedence]
t3 > t2 > t1
[relations]
t2*t1 - t1*t2
t3*t1 - t1*t3
t3*t2 - t2*t3
[twist]
convention left
sigma: t1 -> t1; t2 -> t2 - t1; t3 -> q*t3
"#;
        let f = parse_presentation(text, 6).unwrap();
        assert_eq!(f.twists.len(), 1);
        assert_eq!(f.convention, Some(TwistConvention::Left));
        let sigma = &f.twists[0];
        assert!(sigma.is_graded());
    }
}
