//! Parser for the plain-text foliation file format.
//!
//! Line-oriented grammar, `#` comments:
//!
//! ```text
//! vars: <name> <name> ...
//! params: <name> ...                              (optional)
//! field <NAME> : <polyexpr> d/d<var> ( + <polyexpr> d/d<var> )*
//! point <NAME> : ( <scalarexpr> , ... )
//! candidate <NAME> : <polyexpr>
//! ```
//!
//! Polynomial expressions use integers, rationals `a/b`, declared names,
//! `+ - * / ^ ( )`; `^` takes a non-negative integer literal, and a divisor
//! must be a non-zero constant in the parameters.

use crate::context::VariableContext;
use crate::error::{FoliaError, Result};
use crate::foliation::Derivation;
use crate::invariant::EvalPoint;
use crate::poly::Polynomial;
use crate::scalar::Scalar;
use num::BigInt;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    /// Contiguous `d/d<var>` marker.
    DDVar(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    Colon,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "identifier `{s}`"),
            Tok::Int(n) => write!(f, "integer `{n}`"),
            Tok::DDVar(v) => write!(f, "`d/d{v}`"),
            Tok::Plus => write!(f, "`+`"),
            Tok::Minus => write!(f, "`-`"),
            Tok::Star => write!(f, "`*`"),
            Tok::Slash => write!(f, "`/`"),
            Tok::Caret => write!(f, "`^`"),
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
            Tok::Comma => write!(f, "`,`"),
            Tok::Colon => write!(f, "`:`"),
        }
    }
}

fn err(line: usize, col: usize, message: impl Into<String>) -> FoliaError {
    FoliaError::Parse {
        line,
        col,
        message: message.into(),
    }
}

fn lex_line(line_no: usize, text: &str) -> Result<Vec<(Tok, usize)>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            '#' => break,
            c if c.is_whitespace() => {
                i += 1;
            }
            '+' => {
                out.push((Tok::Plus, col));
                i += 1;
            }
            '-' => {
                out.push((Tok::Minus, col));
                i += 1;
            }
            '*' => {
                out.push((Tok::Star, col));
                i += 1;
            }
            '/' => {
                out.push((Tok::Slash, col));
                i += 1;
            }
            '^' => {
                out.push((Tok::Caret, col));
                i += 1;
            }
            '(' => {
                out.push((Tok::LParen, col));
                i += 1;
            }
            ')' => {
                out.push((Tok::RParen, col));
                i += 1;
            }
            ',' => {
                out.push((Tok::Comma, col));
                i += 1;
            }
            ':' => {
                out.push((Tok::Colon, col));
                i += 1;
            }
            c if c.is_ascii_digit() => {
                let mut j = i;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                let s: String = chars[i..j].iter().collect();
                out.push((Tok::Int(BigInt::from_str(&s).unwrap()), col));
                i = j;
            }
            c if c.is_alphabetic() || c == '_' => {
                // contiguous `d/d<var>` lexes as one token
                if c == 'd'
                    && i + 2 < chars.len()
                    && chars[i + 1] == '/'
                    && chars[i + 2] == 'd'
                    && i + 3 < chars.len()
                    && (chars[i + 3].is_alphanumeric() || chars[i + 3] == '_')
                {
                    let mut j = i + 3;
                    while j < chars.len() && (chars[j].is_alphanumeric() || chars[j] == '_') {
                        j += 1;
                    }
                    let v: String = chars[i + 3..j].iter().collect();
                    out.push((Tok::DDVar(v), col));
                    i = j;
                } else {
                    let mut j = i;
                    while j < chars.len() && (chars[j].is_alphanumeric() || chars[j] == '_') {
                        j += 1;
                    }
                    let s: String = chars[i..j].iter().collect();
                    out.push((Tok::Ident(s), col));
                    i = j;
                }
            }
            other => {
                return Err(err(line_no, col, format!("unexpected character `{other}`")));
            }
        }
    }
    Ok(out)
}

/// Token cursor over one line.
struct Cursor<'a> {
    line: usize,
    toks: &'a [(Tok, usize)],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(line: usize, toks: &'a [(Tok, usize)]) -> Self {
        Self { line, toks, pos: 0 }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks
            .get(self.pos)
            .map(|(_, c)| *c)
            .unwrap_or_else(|| self.toks.last().map(|(_, c)| c + 1).unwrap_or(1))
    }

    fn next(&mut self) -> Option<&Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t);
        self.pos += 1;
        t
    }

    fn expect(&mut self, tok: &Tok) -> Result<()> {
        let (line, col) = (self.line, self.col());
        match self.next() {
            Some(t) if t == tok => Ok(()),
            Some(t) => Err(err(line, col, format!("expected {tok}, found {t}"))),
            None => Err(err(line, col, format!("expected {tok}, found end of line"))),
        }
    }

    fn done(&self) -> bool {
        self.pos >= self.toks.len()
    }
}

/// Recursive-descent expression parser producing polynomials over the
/// context; names resolve to variables or parameters.
struct ExprParser<'a> {
    ctx: &'a Arc<VariableContext>,
}

impl<'a> ExprParser<'a> {
    fn expr(&self, c: &mut Cursor) -> Result<Polynomial> {
        let mut acc = self.term(c)?;
        loop {
            match c.peek() {
                Some(Tok::Plus) => {
                    c.next();
                    acc = acc.try_add(&self.term(c)?)?;
                }
                Some(Tok::Minus) => {
                    c.next();
                    acc = acc.try_sub(&self.term(c)?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&self, c: &mut Cursor) -> Result<Polynomial> {
        let mut acc = self.factor(c)?;
        loop {
            match c.peek() {
                Some(Tok::Star) => {
                    c.next();
                    acc = acc.try_mul(&self.factor(c)?)?;
                }
                Some(Tok::Slash) => {
                    let (line, col) = (c.line, c.col());
                    c.next();
                    let divisor = self.factor(c)?;
                    let Some(s) = divisor.as_constant() else {
                        return Err(err(
                            line,
                            col,
                            "divisor must be a rational or parameter constant",
                        ));
                    };
                    if s.is_zero() {
                        return Err(err(line, col, "division by zero"));
                    }
                    acc = acc.scale(&s.inv()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&self, c: &mut Cursor) -> Result<Polynomial> {
        let base = self.atom(c)?;
        if let Some(Tok::Caret) = c.peek() {
            c.next();
            let (line, col) = (c.line, c.col());
            match c.next() {
                Some(Tok::Int(n)) => {
                    let e = u32::try_from(n.clone()).map_err(|_| {
                        err(line, col, "exponent out of range")
                    })?;
                    return Ok(base.pow(e));
                }
                Some(t) => {
                    return Err(err(
                        line,
                        col,
                        format!("expected a non-negative integer exponent, found {t}"),
                    ))
                }
                None => {
                    return Err(err(
                        line,
                        col,
                        "expected a non-negative integer exponent, found end of line",
                    ))
                }
            }
        }
        Ok(base)
    }

    fn atom(&self, c: &mut Cursor) -> Result<Polynomial> {
        let (line, col) = (c.line, c.col());
        match c.next() {
            Some(Tok::Int(n)) => Ok(Polynomial::constant(
                self.ctx,
                Scalar::from_rational(num::BigRational::from_integer(n.clone())),
            )),
            Some(Tok::Ident(name)) => {
                if let Some(i) = self.ctx.var_index(name) {
                    Polynomial::var(self.ctx, i)
                } else if let Some(i) = self.ctx.param_index(name) {
                    Ok(Polynomial::constant(
                        self.ctx,
                        Scalar::parameter(self.ctx.nparams(), i),
                    ))
                } else {
                    Err(err(line, col, format!("undeclared identifier `{name}`")))
                }
            }
            Some(Tok::Minus) => Ok(self.factor(c)?.neg()),
            Some(Tok::LParen) => {
                let inner = self.expr(c)?;
                c.expect(&Tok::RParen)?;
                Ok(inner)
            }
            Some(t) => Err(err(
                line,
                col,
                format!("expected an integer, identifier, `(` or `-`, found {t}"),
            )),
            None => Err(err(
                line,
                col,
                "expected an integer, identifier, `(` or `-`, found end of line",
            )),
        }
    }
}

/// Analysis options carried by a file; grammar-level defaults, overridable
/// by CLI flags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FileOptions {
    pub max_degree: u32,
    pub word_cap: usize,
    pub span_cap: usize,
    pub dim_cap: usize,
    pub closure_degree_cap: u32,
    pub closure_size_cap: usize,
}

impl Default for FileOptions {
    fn default() -> Self {
        Self {
            max_degree: 4,
            word_cap: crate::foliation::DEFAULT_WORD_CAP,
            span_cap: crate::foliation::DEFAULT_SPAN_CAP,
            dim_cap: crate::foliation::DEFAULT_DIM_CAP,
            closure_degree_cap: 4,
            closure_size_cap: 16,
        }
    }
}

/// Parsed foliation file: context, named fields, points and candidates.
#[derive(Debug, Clone)]
pub struct FoliationFile {
    pub ctx: Arc<VariableContext>,
    pub fields: Vec<(String, Derivation)>,
    pub points: Vec<(String, EvalPoint)>,
    pub candidates: Vec<(String, Polynomial)>,
    pub options: FileOptions,
}

impl PartialEq for FoliationFile {
    fn eq(&self, other: &Self) -> bool {
        *self.ctx == *other.ctx
            && self.fields == other.fields
            && self.points == other.points
            && self.candidates == other.candidates
            && self.options == other.options
    }
}

impl FoliationFile {
    pub fn field(&self, name: &str) -> Option<&Derivation> {
        self.fields.iter().find(|(n, _)| n == name).map(|(_, d)| d)
    }

    pub fn point(&self, name: &str) -> Option<&EvalPoint> {
        self.points.iter().find(|(n, _)| n == name).map(|(_, p)| p)
    }

    pub fn candidate(&self, name: &str) -> Option<&Polynomial> {
        self.candidates
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, p)| p)
    }

    /// Canonical text form; parses back to an equal file.
    pub fn format(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("vars: {}\n", self.ctx.vars().join(" ")));
        if self.ctx.nparams() > 0 {
            out.push_str(&format!("params: {}\n", self.ctx.params().join(" ")));
        }
        for (name, d) in &self.fields {
            out.push_str(&format!("field {name} : {}\n", d.render()));
        }
        for (name, p) in &self.points {
            out.push_str(&format!("point {name} : {}\n", p.render()));
        }
        for (name, p) in &self.candidates {
            out.push_str(&format!("candidate {name} : {}\n", p.render()));
        }
        out
    }
}

fn parse_name(c: &mut Cursor) -> Result<String> {
    let (line, col) = (c.line, c.col());
    match c.next() {
        Some(Tok::Ident(s)) => Ok(s.clone()),
        Some(t) => Err(err(line, col, format!("expected a name, found {t}"))),
        None => Err(err(line, col, "expected a name, found end of line")),
    }
}

fn name_list(c: &mut Cursor) -> Result<Vec<String>> {
    let mut names = Vec::new();
    while !c.done() {
        names.push(parse_name(c)?);
    }
    Ok(names)
}

/// Parse the full file; the first error is reported with line and column.
pub fn parse_foliation_file(text: &str) -> Result<FoliationFile> {
    let mut vars: Option<Vec<String>> = None;
    let mut params: Vec<String> = Vec::new();
    let mut raw_fields: Vec<(String, usize, Vec<(Tok, usize)>)> = Vec::new();
    let mut raw_points: Vec<(String, usize, Vec<(Tok, usize)>)> = Vec::new();
    let mut raw_candidates: Vec<(String, usize, Vec<(Tok, usize)>)> = Vec::new();
    let mut names_seen: Vec<String> = Vec::new();

    for (idx, line_text) in text.lines().enumerate() {
        let line = idx + 1;
        let toks = lex_line(line, line_text)?;
        if toks.is_empty() {
            continue;
        }
        let mut c = Cursor::new(line, &toks);
        let head = parse_name(&mut c)?;
        match head.as_str() {
            "vars" => {
                c.expect(&Tok::Colon)?;
                if vars.is_some() {
                    return Err(err(line, 1, "duplicate vars declaration"));
                }
                let list = name_list(&mut c)?;
                if list.is_empty() {
                    return Err(err(line, c.col(), "vars declaration lists no names"));
                }
                vars = Some(list);
            }
            "params" => {
                c.expect(&Tok::Colon)?;
                if !params.is_empty() {
                    return Err(err(line, 1, "duplicate params declaration"));
                }
                params = name_list(&mut c)?;
            }
            "field" | "point" | "candidate" => {
                let name = parse_name(&mut c)?;
                c.expect(&Tok::Colon)?;
                if names_seen.contains(&name) {
                    return Err(err(line, 1, format!("duplicate name `{name}`")));
                }
                names_seen.push(name.clone());
                let rest = toks[c.pos..].to_vec();
                match head.as_str() {
                    "field" => raw_fields.push((name, line, rest)),
                    "point" => raw_points.push((name, line, rest)),
                    _ => raw_candidates.push((name, line, rest)),
                }
            }
            other => {
                return Err(err(
                    line,
                    1,
                    format!("expected `vars`, `params`, `field`, `point` or `candidate`, found `{other}`"),
                ));
            }
        }
    }

    let Some(vars) = vars else {
        return Err(err(1, 1, "no vars declaration"));
    };
    let ctx = VariableContext::new(vars, params)?;
    let parser = ExprParser { ctx: &ctx };

    let mut fields = Vec::new();
    for (name, line, toks) in &raw_fields {
        let mut c = Cursor::new(*line, toks);
        let mut components = vec![Polynomial::zero(&ctx); ctx.nvars()];
        loop {
            let coeff = parser.expr(&mut c)?;
            let (eline, ecol) = (c.line, c.col());
            match c.next() {
                Some(Tok::DDVar(v)) => {
                    let Some(i) = ctx.var_index(v) else {
                        return Err(err(eline, ecol, format!("undeclared identifier `{v}`")));
                    };
                    components[i] = components[i].try_add(&coeff)?;
                }
                Some(t) => return Err(err(eline, ecol, format!("expected `d/d<var>`, found {t}"))),
                None => return Err(err(eline, ecol, "expected `d/d<var>`, found end of line")),
            }
            match c.peek() {
                Some(Tok::Plus) => {
                    c.next();
                }
                Some(Tok::Minus) => {
                    // allow `a d/dx - b d/dy` as sugar for `+ (-b)`
                }
                None => break,
                Some(t) => {
                    return Err(err(c.line, c.col(), format!("expected `+` or end of line, found {t}")))
                }
            }
        }
        fields.push((name.clone(), Derivation::new(&ctx, components)?));
    }

    let mut points = Vec::new();
    for (name, line, toks) in &raw_points {
        let mut c = Cursor::new(*line, toks);
        c.expect(&Tok::LParen)?;
        let mut coords = Vec::new();
        loop {
            let (eline, ecol) = (c.line, c.col());
            let p = parser.expr(&mut c)?;
            let Some(s) = p.as_constant() else {
                return Err(err(eline, ecol, "point coordinates cannot involve variables"));
            };
            coords.push(s);
            let (tline, tcol) = (c.line, c.col());
            match c.next() {
                Some(Tok::Comma) => continue,
                Some(Tok::RParen) => break,
                Some(t) => {
                    let t = t.clone();
                    return Err(err(tline, tcol, format!("expected `,` or `)`, found {t}")));
                }
                None => return Err(err(tline, tcol, "expected `,` or `)`, found end of line")),
            }
        }
        if !c.done() {
            return Err(err(c.line, c.col(), "unexpected tokens after point"));
        }
        if coords.len() != ctx.nvars() {
            return Err(err(
                *line,
                1,
                format!(
                    "point `{name}` has {} coordinates, expected {}",
                    coords.len(),
                    ctx.nvars()
                ),
            ));
        }
        points.push((name.clone(), EvalPoint::new(&ctx, coords)?));
    }

    let mut candidates = Vec::new();
    for (name, line, toks) in &raw_candidates {
        let mut c = Cursor::new(*line, toks);
        let p = parser.expr(&mut c)?;
        if !c.done() {
            return Err(err(c.line, c.col(), "unexpected tokens after polynomial"));
        }
        candidates.push((name.clone(), p));
    }

    Ok(FoliationFile {
        ctx,
        fields,
        points,
        candidates,
        options: FileOptions::default(),
    })
}

/// Parse a single polynomial expression against an existing context.
pub fn parse_polynomial(ctx: &Arc<VariableContext>, text: &str) -> Result<Polynomial> {
    let toks = lex_line(1, text)?;
    let mut c = Cursor::new(1, &toks);
    let p = ExprParser { ctx }.expr(&mut c)?;
    if !c.done() {
        return Err(err(1, c.col(), "unexpected tokens after polynomial"));
    }
    Ok(p)
}
