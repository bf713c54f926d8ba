//! Expression language for O(SU_q(2)).
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor (['*'] factor)*
//! factor := atom ('^' ['-'] digits)?
//! atom   := 'a' | 'A' | 'b' | 'B' | 'q' | digits ('/' digits)? | '(' expr ')'
//! ```
//!
//! `a, A, b, B` stand for `α, α*, β, β*`. Products are written by
//! juxtaposition; an explicit `*` is accepted and not recorded in the tree.

use std::fmt;

use qinstanton_core::{Error as CoreError, Generator, HElement, QLaurent, Rational};

/// Half-open byte range into the source.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

#[derive(Clone, Debug)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

/// Trees compare structurally; spans are ignored.
impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ExprKind {
    Gen(Generator),
    Q,
    Num(Rational),
    /// Leading minus of a sum.
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    /// Two or more juxtaposed factors.
    Mul(Vec<Expr>),
    Pow(Box<Expr>, i32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub found: String,
    pub expected: Vec<&'static str>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "syntax error at {}:{}: found {}, expected one of: {}",
            self.line,
            self.column,
            self.found,
            self.expected.join(", ")
        )
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq)]
pub enum EvalError {
    /// Negative power of something other than a nonzero `c·q^k`.
    NotInvertible { span: Span },
    Core(CoreError),
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::NotInvertible { span } => write!(
                f,
                "negative power of a non-invertible factor at bytes {}..{}",
                span.start, span.end
            ),
            EvalError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for EvalError {}

impl From<CoreError> for EvalError {
    fn from(e: CoreError) -> Self {
        EvalError::Core(e)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Gen(Generator),
    Q,
    Int(String),
    Slash,
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    Eof,
    Bad(char),
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Gen(g) => format!("`{}`", g.token()),
            Tok::Q => "`q`".into(),
            Tok::Int(s) => format!("number `{s}`"),
            Tok::Slash => "`/`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Eof => "end of input".into(),
            Tok::Bad(c) => format!("`{c}`"),
        }
    }
}

fn lex(src: &str) -> Vec<(Tok, Span)> {
    let mut out = Vec::new();
    let mut chars = src.char_indices().peekable();
    while let Some((i, c)) = chars.next() {
        let single = |t| (t, Span { start: i, end: i + c.len_utf8() });
        match c {
            c if c.is_whitespace() => {}
            'a' => out.push(single(Tok::Gen(Generator::Alpha))),
            'A' => out.push(single(Tok::Gen(Generator::AlphaStar))),
            'b' => out.push(single(Tok::Gen(Generator::Beta))),
            'B' => out.push(single(Tok::Gen(Generator::BetaStar))),
            'q' => out.push(single(Tok::Q)),
            '/' => out.push(single(Tok::Slash)),
            '+' => out.push(single(Tok::Plus)),
            '-' => out.push(single(Tok::Minus)),
            '*' => out.push(single(Tok::Star)),
            '^' => out.push(single(Tok::Caret)),
            '(' => out.push(single(Tok::LParen)),
            ')' => out.push(single(Tok::RParen)),
            d if d.is_ascii_digit() => {
                let mut end = i + 1;
                while let Some((j, d)) = chars.peek().copied() {
                    if !d.is_ascii_digit() {
                        break;
                    }
                    end = j + 1;
                    chars.next();
                }
                out.push((Tok::Int(src[i..end].to_string()), Span { start: i, end }));
            }
            other => out.push(single(Tok::Bad(other))),
        }
    }
    out.push((
        Tok::Eof,
        Span {
            start: src.len(),
            end: src.len(),
        },
    ));
    out
}

const ATOM_START: [&str; 7] = ["a", "A", "b", "B", "q", "number", "("];

struct Parser<'s> {
    src: &'s str,
    toks: Vec<(Tok, Span)>,
    pos: usize,
}

impl<'s> Parser<'s> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn span(&self) -> Span {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, Span) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&'static str]) -> ParseError {
        let start = self.span().start;
        let before = &self.src[..start];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().unwrap_or("").chars().count() + 1;
        ParseError {
            line,
            column,
            found: self.peek().describe(),
            expected: expected.to_vec(),
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(
            self.peek(),
            Tok::Gen(_) | Tok::Q | Tok::Int(_) | Tok::LParen
        )
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let start = self.span().start;
        let mut lhs = if *self.peek() == Tok::Minus {
            self.bump();
            let t = self.term()?;
            Expr {
                span: Span { start, end: t.span.end },
                kind: ExprKind::Neg(Box::new(t)),
            }
        } else {
            self.term()?
        };
        loop {
            let op = match self.peek() {
                Tok::Plus => ExprKind::Add as fn(Box<Expr>, Box<Expr>) -> ExprKind,
                Tok::Minus => ExprKind::Sub,
                _ => break,
            };
            self.bump();
            let rhs = self.term()?;
            lhs = Expr {
                span: Span { start, end: rhs.span.end },
                kind: op(Box::new(lhs), Box::new(rhs)),
            };
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let first = self.factor()?;
        let start = first.span.start;
        let mut factors = vec![first];
        loop {
            if *self.peek() == Tok::Star {
                self.bump();
                if !self.starts_atom() {
                    return Err(self.error(&ATOM_START));
                }
            } else if !self.starts_atom() {
                break;
            }
            factors.push(self.factor()?);
        }
        if factors.len() == 1 {
            return Ok(factors.pop().unwrap());
        }
        let end = factors.last().unwrap().span.end;
        Ok(Expr {
            kind: ExprKind::Mul(factors),
            span: Span { start, end },
        })
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let negative = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let (tok, span) = (self.peek().clone(), self.span());
        let Tok::Int(digits) = tok else {
            return Err(self.error(if negative {
                &["number"]
            } else {
                &["-", "number"]
            }));
        };
        let value: i32 = digits.parse().map_err(|_| self.error(&["exponent below 2^31"]))?;
        self.bump();
        Ok(Expr {
            span: Span {
                start: base.span.start,
                end: span.end,
            },
            kind: ExprKind::Pow(Box::new(base), if negative { -value } else { value }),
        })
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let (tok, span) = (self.peek().clone(), self.span());
        let kind = match tok {
            Tok::Gen(g) => {
                self.bump();
                ExprKind::Gen(g)
            }
            Tok::Q => {
                self.bump();
                ExprKind::Q
            }
            Tok::Int(num) => {
                self.bump();
                let mut text = num;
                let mut end = span.end;
                if *self.peek() == Tok::Slash {
                    self.bump();
                    let (den_tok, den_span) = (self.peek().clone(), self.span());
                    let Tok::Int(den) = den_tok else {
                        return Err(self.error(&["number"]));
                    };
                    if den.bytes().all(|b| b == b'0') {
                        return Err(self.error(&["nonzero denominator"]));
                    }
                    self.bump();
                    text = format!("{text}/{den}");
                    end = den_span.end;
                }
                let value: Rational = text.parse().expect("lexed digits");
                return Ok(Expr {
                    kind: ExprKind::Num(value),
                    span: Span { start: span.start, end },
                });
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.error(&[")", "+", "-"]));
                }
                let close = self.bump().1;
                return Ok(Expr {
                    kind: inner.kind,
                    span: Span {
                        start: span.start,
                        end: close.end,
                    },
                });
            }
            _ => return Err(self.error(&ATOM_START)),
        };
        Ok(Expr { kind, span })
    }
}

pub fn parse(src: &str) -> Result<Expr, ParseError> {
    let mut p = Parser {
        src,
        toks: lex(src),
        pos: 0,
    };
    let e = p.expr()?;
    if *p.peek() != Tok::Eof {
        let mut expected = vec!["+", "-", "*"];
        expected.extend(ATOM_START);
        return Err(p.error(&expected));
    }
    Ok(e)
}

/// Binding strength of the printed form of a node.
fn level(kind: &ExprKind) -> u8 {
    match kind {
        ExprKind::Neg(_) | ExprKind::Add(..) | ExprKind::Sub(..) => 0,
        ExprKind::Mul(_) => 1,
        ExprKind::Pow(..) => 2,
        ExprKind::Gen(_) | ExprKind::Q | ExprKind::Num(_) => 3,
    }
}

fn write_at(f: &mut fmt::Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
    // a fraction under an exponent would print as `1/2^3`
    let needs_parens = level(&e.kind) < min
        || (min == 3 && matches!(&e.kind, ExprKind::Num(r) if !r.is_integer()));
    if needs_parens {
        write!(f, "(")?;
    }
    match &e.kind {
        ExprKind::Gen(g) => write!(f, "{}", g.token())?,
        ExprKind::Q => write!(f, "q")?,
        ExprKind::Num(r) => write!(f, "{r}")?,
        ExprKind::Neg(x) => {
            write!(f, "-")?;
            write_at(f, x, 1)?;
        }
        ExprKind::Add(l, r) | ExprKind::Sub(l, r) => {
            write_at(f, l, 0)?;
            let op = if matches!(e.kind, ExprKind::Add(..)) { '+' } else { '-' };
            write!(f, " {op} ")?;
            write_at(f, r, 1)?;
        }
        ExprKind::Mul(fs) => {
            for (i, x) in fs.iter().enumerate() {
                if i > 0 {
                    // adjacent integers need an explicit product sign
                    let glue = matches!(fs[i - 1].kind, ExprKind::Num(_))
                        && matches!(x.kind, ExprKind::Num(_) | ExprKind::Pow(..));
                    write!(f, "{}", if glue { " * " } else { " " })?;
                }
                write_at(f, x, 2)?;
            }
        }
        ExprKind::Pow(b, n) => {
            write_at(f, b, 3)?;
            write!(f, "^{n}")?;
        }
    }
    if needs_parens {
        write!(f, ")")?;
    }
    Ok(())
}

/// Minimal parenthesisation that reparses to the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_at(f, self, 0)
    }
}

fn as_scalar_monomial(x: &HElement) -> Option<(Rational, i32)> {
    let c = x.is_scalar()?;
    match c.terms() {
        [(e, r)] => Some((r.clone(), *e)),
        _ => None,
    }
}

/// Normal form of the expression under a term budget.
pub fn evaluate(e: &Expr, budget: usize) -> Result<HElement, EvalError> {
    Ok(match &e.kind {
        ExprKind::Gen(g) => HElement::generator(*g),
        ExprKind::Q => HElement::scalar(QLaurent::q_pow(1)),
        ExprKind::Num(r) => HElement::scalar(QLaurent::constant(r.clone())),
        ExprKind::Neg(x) => evaluate(x, budget)?.neg(),
        ExprKind::Add(l, r) => evaluate(l, budget)?.add(&evaluate(r, budget)?),
        ExprKind::Sub(l, r) => evaluate(l, budget)?.sub(&evaluate(r, budget)?),
        ExprKind::Mul(fs) => {
            let mut acc = HElement::one();
            for x in fs {
                acc = acc.try_mul(&evaluate(x, budget)?, budget)?;
            }
            acc
        }
        ExprKind::Pow(b, n) => {
            let base = evaluate(b, budget)?;
            if *n >= 0 {
                let mut acc = HElement::one();
                for _ in 0..*n {
                    acc = acc.try_mul(&base, budget)?;
                }
                acc
            } else {
                let (c, k) = as_scalar_monomial(&base)
                    .ok_or(EvalError::NotInvertible { span: b.span })?;
                let c = c.pow(*n).expect("monomial coefficients are nonzero");
                HElement::scalar(QLaurent::monomial(c, k * n))
            }
        }
    })
}

fn superscript(c: char) -> char {
    match c {
        '0' => '⁰',
        '1' => '¹',
        '2' => '²',
        '3' => '³',
        '4' => '⁴',
        '5' => '⁵',
        '6' => '⁶',
        '7' => '⁷',
        '8' => '⁸',
        '9' => '⁹',
        '-' => '⁻',
        other => other,
    }
}

/// Unicode rendering of canonical ASCII text: generators become `α, α*, β,
/// β*`, exponents become superscripts and the product sign becomes `·`.
pub fn to_unicode(ascii: &str) -> String {
    let mut out = String::with_capacity(ascii.len());
    let mut chars = ascii.chars().peekable();
    while let Some(c) = chars.next() {
        match c {
            'a' => out.push('α'),
            'A' => out.push_str("α*"),
            'b' => out.push('β'),
            'B' => out.push_str("β*"),
            '*' => out.push('·'),
            '^' => {
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() || d == '-' {
                        out.push(superscript(d));
                        chars.next();
                    } else {
                        break;
                    }
                }
            }
            other => out.push(other),
        }
    }
    out
}
