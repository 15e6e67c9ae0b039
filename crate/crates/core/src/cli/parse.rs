//! Parser for polynomial and rational-function expressions.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := unary (("*" | "/") unary)*
//! unary  := ("+" | "-") unary | power
//! power  := atom ("^" exponent)?
//! exponent := "-"? integer | "(" "-"? integer ")"
//! atom   := integer | variable | "(" expr ")"
//! ```

use crate::exactmath::{BigInt, BigRational};
use crate::polyalg::{BiPoly, LaurentPoly, RationalFunction, UniPoly};
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at offset {offset}: {message}")]
    SyntaxError { offset: usize, message: String },
    #[error("unknown variable '{name}' at offset {offset}")]
    UnknownVariable { name: String, offset: usize },
    #[error("expression is not a polynomial (offset {offset})")]
    NotPolynomial { offset: usize },
    #[error("division by zero at offset {offset}")]
    DivisionByZero { offset: usize },
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (off, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().map(|(_, c)| c).collect();
            out.push((Tok::Int(s.parse().expect("digits")), off));
        } else if c.is_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].1.is_alphanumeric() {
                i += 1;
            }
            let s: String = chars[start..i].iter().map(|(_, c)| c).collect();
            out.push((Tok::Ident(s), off));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Sym(c), off));
            i += 1;
        } else {
            return Err(ParseError::SyntaxError {
                offset: off,
                message: format!("unexpected character '{c}'"),
            });
        }
    }
    Ok(out)
}

#[derive(Debug, Clone)]
enum Node {
    Num(BigInt),
    Var(String, usize),
    Neg(Box<Node>),
    Add(Box<Node>, Box<Node>),
    Sub(Box<Node>, Box<Node>),
    Mul(Box<Node>, Box<Node>),
    Div(Box<Node>, Box<Node>, usize),
    Pow(Box<Node>, i64, usize),
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    /// Offset of the current token; at end of input, that of the last token.
    fn offset(&self) -> usize {
        self.toks
            .get(self.pos)
            .or(self.toks.last())
            .map_or(0, |(_, o)| *o)
    }

    fn error<T>(&self, message: &str) -> Result<T, ParseError> {
        Err(ParseError::SyntaxError {
            offset: self.offset(),
            message: message.to_string(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Node, ParseError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Node::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Node::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Node, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Node::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.peek() == Some(&Tok::Sym('/')) {
                let off = self.offset();
                self.pos += 1;
                lhs = Node::Div(Box::new(lhs), Box::new(self.unary()?), off);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Node, ParseError> {
        if self.eat('-') {
            Ok(Node::Neg(Box::new(self.unary()?)))
        } else if self.eat('+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Node, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Sym('^')) {
            return Ok(base);
        }
        let off = self.offset();
        self.pos += 1;
        let paren = self.eat('(');
        let negative = self.eat('-');
        let e = match self.peek() {
            Some(Tok::Int(n)) => {
                let n = n.clone();
                self.pos += 1;
                n
            }
            _ => return self.error("expected an integer exponent"),
        };
        if paren && !self.eat(')') {
            return self.error("expected ')'");
        }
        let e: i64 = match i64::try_from(&e) {
            Ok(v) if v <= 10_000 => v,
            _ => return self.error("exponent too large"),
        };
        Ok(Node::Pow(Box::new(base), if negative { -e } else { e }, off))
    }

    fn atom(&mut self) -> Result<Node, ParseError> {
        let off = self.offset();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(Node::Num(n))
            }
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                Ok(Node::Var(s, off))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return self.error("expected ')'");
                }
                Ok(inner)
            }
            Some(_) => self.error("expected a number, variable or '('"),
            None => self.error("unexpected end of input"),
        }
    }
}

fn parse_tree(text: &str) -> Result<Node, ParseError> {
    let toks = tokenize(text)?;
    if toks.is_empty() {
        return Err(ParseError::SyntaxError {
            offset: 0,
            message: "empty expression".into(),
        });
    }
    let mut p = Parser { toks, pos: 0 };
    let node = p.expr()?;
    if p.pos < p.toks.len() {
        return p.error("unexpected trailing input");
    }
    Ok(node)
}

/// Evaluation target for expression trees.
trait Algebra: Sized + Clone {
    fn number(n: BigInt) -> Self;
    fn variable(name: &str, offset: usize) -> Result<Self, ParseError>;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn div(&self, o: &Self, offset: usize) -> Result<Self, ParseError>;
    fn pow(&self, e: i64, offset: usize) -> Result<Self, ParseError>;
}

fn eval<A: Algebra>(node: &Node) -> Result<A, ParseError> {
    Ok(match node {
        Node::Num(n) => A::number(n.clone()),
        Node::Var(s, off) => A::variable(s, *off)?,
        Node::Neg(a) => eval::<A>(a)?.neg(),
        Node::Add(a, b) => eval::<A>(a)?.add(&eval(b)?),
        Node::Sub(a, b) => eval::<A>(a)?.sub(&eval(b)?),
        Node::Mul(a, b) => eval::<A>(a)?.mul(&eval(b)?),
        Node::Div(a, b, off) => eval::<A>(a)?.div(&eval(b)?, *off)?,
        Node::Pow(a, e, off) => eval::<A>(a)?.pow(*e, *off)?,
    })
}

impl Algebra for BiPoly {
    fn number(n: BigInt) -> Self {
        BiPoly::constant(BigRational::from_integer(n))
    }
    fn variable(name: &str, offset: usize) -> Result<Self, ParseError> {
        match name {
            "x" => Ok(BiPoly::x()),
            "y" => Ok(BiPoly::y()),
            _ => Err(ParseError::UnknownVariable {
                name: name.into(),
                offset,
            }),
        }
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div(&self, o: &Self, offset: usize) -> Result<Self, ParseError> {
        if !o.is_constant() {
            return Err(ParseError::NotPolynomial { offset });
        }
        let c = o.constant_term();
        if c.is_zero() {
            return Err(ParseError::DivisionByZero { offset });
        }
        Ok(self.scale(&c.recip()))
    }
    fn pow(&self, e: i64, offset: usize) -> Result<Self, ParseError> {
        if e >= 0 {
            return Ok(BiPoly::pow(self, e as u32));
        }
        let one = BiPoly::constant(BigRational::one());
        one.div(&BiPoly::pow(self, e.unsigned_abs() as u32), offset)
    }
}

/// Rational functions in a single variable; `names` lists accepted spellings.
#[derive(Clone)]
struct Uni<const V: char>(RationalFunction);

fn uni_names(v: char) -> &'static [&'static str] {
    match v {
        'x' => &["x"],
        'y' => &["y"],
        _ => &["t", "T"],
    }
}

impl<const V: char> Algebra for Uni<V> {
    fn number(n: BigInt) -> Self {
        Uni(RationalFunction::constant(BigRational::from_integer(n)))
    }
    fn variable(name: &str, offset: usize) -> Result<Self, ParseError> {
        if uni_names(V).contains(&name) {
            Ok(Uni(RationalFunction::var()))
        } else {
            Err(ParseError::UnknownVariable {
                name: name.into(),
                offset,
            })
        }
    }
    fn add(&self, o: &Self) -> Self {
        Uni(self.0.add(&o.0))
    }
    fn sub(&self, o: &Self) -> Self {
        Uni(self.0.sub(&o.0))
    }
    fn mul(&self, o: &Self) -> Self {
        Uni(self.0.mul(&o.0))
    }
    fn neg(&self) -> Self {
        Uni(self.0.neg())
    }
    fn div(&self, o: &Self, offset: usize) -> Result<Self, ParseError> {
        self.0
            .div(&o.0)
            .map(Uni)
            .map_err(|_| ParseError::DivisionByZero { offset })
    }
    fn pow(&self, e: i64, offset: usize) -> Result<Self, ParseError> {
        self.0
            .pow(e)
            .map(Uni)
            .map_err(|_| ParseError::DivisionByZero { offset })
    }
}

/// Parses a polynomial in `x` and `y`.
pub fn parse_poly(text: &str) -> Result<BiPoly, ParseError> {
    eval::<BiPoly>(&parse_tree(text)?)
}

/// Parses a rational function in `t` (or `T`).
pub fn parse_rational_function(text: &str) -> Result<RationalFunction, ParseError> {
    Ok(eval::<Uni<'t'>>(&parse_tree(text)?)?.0)
}

fn require_poly(r: RationalFunction) -> Result<UniPoly, ParseError> {
    if r.is_polynomial() {
        let c = r.denominator().leading_coeff().expect("nonzero").recip();
        Ok(r.numerator().scale(&c))
    } else {
        Err(ParseError::NotPolynomial { offset: 0 })
    }
}

/// Parses a univariate polynomial in `t` (or `T`).
pub fn parse_uni(text: &str) -> Result<UniPoly, ParseError> {
    require_poly(parse_rational_function(text)?)
}

/// Parses a univariate polynomial written in the variable `var`
/// (`'x'`, `'y'` or `'t'`).
pub fn parse_uni_in(text: &str, var: char) -> Result<UniPoly, ParseError> {
    let tree = parse_tree(text)?;
    let r = match var {
        'x' => eval::<Uni<'x'>>(&tree)?.0,
        'y' => eval::<Uni<'y'>>(&tree)?.0,
        _ => eval::<Uni<'t'>>(&tree)?.0,
    };
    require_poly(r)
}

/// Parses a Laurent polynomial in `t`: a rational function whose
/// denominator is a power of `t`.
pub fn parse_laurent(text: &str) -> Result<LaurentPoly, ParseError> {
    let r = parse_rational_function(text)?;
    let den = r.denominator();
    let k = den.degree().unwrap_or(0);
    if den != &UniPoly::monomial(BigRational::one(), k) {
        return Err(ParseError::NotPolynomial { offset: 0 });
    }
    let num = LaurentPoly::from_uni(r.numerator());
    Ok(&num * &LaurentPoly::monomial(BigRational::one(), -(k as i64)))
}

/// Parses a rational number `p` or `p/q` (optionally signed).
pub fn parse_rational(text: &str) -> Result<BigRational, ParseError> {
    let r = parse_rational_function(text)?;
    if r.is_constant() {
        Ok(r.numerator().constant_term())
    } else {
        Err(ParseError::SyntaxError {
            offset: 0,
            message: "expected a rational number".into(),
        })
    }
}
