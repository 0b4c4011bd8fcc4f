//! Radial symbols as symmetric functions of the squared radial coordinates.
//!
//! A radial symbol `ψ` on the domain is determined by its values on
//! `Σ t_j e_j`, `t ∈ [0,1)^r`. Symbols here are written in the variables
//! `x_j = t_j²`, so the symbol `x1*x2` is the function whose value at
//! `Σ t_j e_j` is `t₁² t₂²`. Polynomials in `x` are integrated exactly by the
//! quadrature layouts.
//!
//! Expression grammar:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := ('-' | '+') factor | base ('^' integer)?
//! base   := number | xK | func '(' expr (',' expr)* ')' | '(' expr ')'
//! func   := exp | sqrt | abs | min | max | pow
//! ```
//!
//! `K` ranges over `1..=9` and may not exceed the rank. `log` is not offered:
//! symbols have to be bounded.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::special::powi;

/// Seed of the generator behind [`check_symmetric`] and the finiteness probe.
pub const SYMMETRY_SEED: u64 = 0x5EED_CA27_A115;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Func {
    Exp,
    Sqrt,
    Abs,
    Min,
    Max,
    Pow,
}

impl Func {
    fn from_name(name: &str) -> Option<Self> {
        Some(match name {
            "exp" => Func::Exp,
            "sqrt" => Func::Sqrt,
            "abs" => Func::Abs,
            "min" => Func::Min,
            "max" => Func::Max,
            "pow" => Func::Pow,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Expr {
    Num(f64),
    Var(usize),
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    PowInt(Box<Expr>, u32),
    Call(Func, Vec<Expr>),
}

impl Expr {
    fn eval(&self, x: &[f64]) -> f64 {
        match self {
            Expr::Num(v) => *v,
            Expr::Var(i) => x[*i],
            Expr::Neg(e) => -e.eval(x),
            Expr::Bin(op, l, r) => {
                let (l, r) = (l.eval(x), r.eval(x));
                match op {
                    BinOp::Add => l + r,
                    BinOp::Sub => l - r,
                    BinOp::Mul => l * r,
                    BinOp::Div => l / r,
                }
            }
            Expr::PowInt(e, k) => powi(e.eval(x), *k),
            Expr::Call(f, args) => match f {
                Func::Exp => libm::exp(args[0].eval(x)),
                Func::Sqrt => libm::sqrt(args[0].eval(x)),
                Func::Abs => args[0].eval(x).abs(),
                Func::Min => args.iter().map(|a| a.eval(x)).fold(f64::INFINITY, f64::min),
                Func::Max => args.iter().map(|a| a.eval(x)).fold(f64::NEG_INFINITY, f64::max),
                Func::Pow => libm::pow(args[0].eval(x), args[1].eval(x)),
            },
        }
    }

    /// Total degree when the tree is a polynomial in `x`.
    fn degree(&self) -> Option<u32> {
        match self {
            Expr::Num(_) => Some(0),
            Expr::Var(_) => Some(1),
            Expr::Neg(e) => e.degree(),
            Expr::Bin(op, l, r) => {
                let (dl, dr) = (l.degree()?, r.degree()?);
                match op {
                    BinOp::Add | BinOp::Sub => Some(dl.max(dr)),
                    BinOp::Mul => Some(dl + dr),
                    BinOp::Div => (dr == 0).then_some(dl),
                }
            }
            Expr::PowInt(e, k) => e.degree().map(|d| d * k),
            Expr::Call(Func::Pow, args) => match (&args[0], &args[1]) {
                (base, Expr::Num(k)) if *k >= 0.0 && libm::trunc(*k) == *k && *k <= f64::from(u32::MAX) => {
                    base.degree().map(|d| d * (*k as u32))
                }
                _ => args.iter().all(|a| a.degree() == Some(0)).then_some(0),
            },
            Expr::Call(_, args) => args.iter().all(|a| a.degree() == Some(0)).then_some(0),
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    rank: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, position: usize, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { position, message: message.into() })
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            let found = self.peek().map_or("end of input".to_string(), |f| format!("`{f}`"));
            self.err(self.pos, format!("expected `{c}`, found {found}"))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            let op = if self.eat('+') {
                BinOp::Add
            } else if self.eat('-') {
                BinOp::Sub
            } else {
                return Ok(lhs);
            };
            let rhs = self.term()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        loop {
            let op = if self.eat('*') {
                BinOp::Mul
            } else if self.eat('/') {
                BinOp::Div
            } else {
                return Ok(lhs);
            };
            let rhs = self.factor()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        if self.eat('+') {
            return self.factor();
        }
        let base = self.base()?;
        if self.eat('^') {
            self.skip_ws();
            let start = self.pos;
            let digits = self.src[start..].bytes().take_while(u8::is_ascii_digit).count();
            if digits == 0 {
                return self.err(start, "`^` needs a nonnegative integer literal exponent");
            }
            self.pos += digits;
            let k: u32 = match self.src[start..self.pos].parse() {
                Ok(k) => k,
                Err(_) => return self.err(start, "exponent too large"),
            };
            if matches!(self.src[self.pos..].chars().next(), Some('.' | 'e' | 'E')) {
                return self.err(start, "`^` needs a nonnegative integer literal exponent");
            }
            return Ok(Expr::PowInt(Box::new(base), k));
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Expr> {
        let start = match self.peek() {
            None => return self.err(self.pos, "unexpected end of input"),
            Some(_) => self.pos,
        };
        let c = self.src[start..].chars().next().unwrap_or(' ');
        if c == '(' {
            self.pos += 1;
            let e = self.expr()?;
            self.expect(')')?;
            return Ok(e);
        }
        if c.is_ascii_digit() || c == '.' {
            return self.number(start);
        }
        if c.is_ascii_alphabetic() {
            let len = self.src[start..].bytes().take_while(|b| b.is_ascii_alphanumeric() || *b == b'_').count();
            let ident = &self.src[start..start + len];
            self.pos += len;
            if let Some(rest) = ident.strip_prefix('x') {
                if rest.len() == 1 && rest.as_bytes()[0].is_ascii_digit() && rest != "0" {
                    let index = (rest.as_bytes()[0] - b'0') as usize;
                    if index > self.rank {
                        return Err(Error::VariableOutOfRange { index, rank: self.rank });
                    }
                    return Ok(Expr::Var(index - 1));
                }
            }
            let Some(func) = Func::from_name(ident) else {
                if ident == "log" || ident == "ln" {
                    return self.err(start, "`log` is not available: symbols must be bounded");
                }
                if self.peek() == Some('(') {
                    return Err(Error::UnknownFunction(ident.to_string()));
                }
                return self.err(start, format!("unknown identifier `{ident}`"));
            };
            self.expect('(')?;
            let mut args = vec![self.expr()?];
            while self.eat(',') {
                args.push(self.expr()?);
            }
            self.expect(')')?;
            let ok = match func {
                Func::Exp | Func::Sqrt | Func::Abs => args.len() == 1,
                Func::Pow => args.len() == 2,
                Func::Min | Func::Max => !args.is_empty(),
            };
            if !ok {
                return self.err(start, format!("wrong number of arguments to `{ident}` ({})", args.len()));
            }
            return Ok(Expr::Call(func, args));
        }
        self.err(start, format!("unexpected character `{c}`"))
    }

    fn number(&mut self, start: usize) -> Result<Expr> {
        let bytes = self.src.as_bytes();
        let mut end = start;
        while end < bytes.len() && (bytes[end].is_ascii_digit() || bytes[end] == b'.') {
            end += 1;
        }
        if end < bytes.len() && (bytes[end] == b'e' || bytes[end] == b'E') {
            let mut k = end + 1;
            if k < bytes.len() && (bytes[k] == b'+' || bytes[k] == b'-') {
                k += 1;
            }
            if k < bytes.len() && bytes[k].is_ascii_digit() {
                while k < bytes.len() && bytes[k].is_ascii_digit() {
                    k += 1;
                }
                end = k;
            }
        }
        let text = &self.src[start..end];
        match text.parse::<f64>() {
            Ok(v) if v.is_finite() => {
                self.pos = end;
                Ok(Expr::Num(v))
            }
            _ => self.err(start, format!("malformed number `{text}`")),
        }
    }
}

/// Built-in symbol families.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Builtin {
    /// `c`
    Const(f64),
    /// `Σ x_j^m`
    PowerSum(u32),
    /// Elementary symmetric polynomial `e_k(x)`.
    Elementary(usize),
    /// `∏ x_j^s`, the diagonal value of `Δ^s`.
    DetPower(f64),
    /// 1 when `max_j x_j ≤ c`, else 0.
    BallIndicator(f64),
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Builtin::Const(c) => write!(f, "const:{c}"),
            Builtin::PowerSum(m) => write!(f, "power_sum:{m}"),
            Builtin::Elementary(k) => write!(f, "elementary:{k}"),
            Builtin::DetPower(s) => write!(f, "det_power:{s}"),
            Builtin::BallIndicator(c) => write!(f, "ball_indicator:{c}"),
        }
    }
}

/// `name:param`, e.g. `const:1`, `power_sum:2`, `elementary:1`,
/// `det_power:0.5`, `ball_indicator:0.25`.
impl FromStr for Builtin {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, param) = s
            .split_once(':')
            .ok_or_else(|| Error::InvalidArgument(format!("builtin `{s}` must look like name:param")))?;
        let real = || {
            param
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| Error::InvalidArgument(format!("`{param}` is not a number in `{s}`")))
        };
        let int = || {
            param
                .parse::<u32>()
                .map_err(|_| Error::InvalidArgument(format!("`{param}` is not a nonnegative integer in `{s}`")))
        };
        Ok(match name.to_ascii_lowercase().as_str() {
            "const" => Builtin::Const(real()?),
            "power_sum" => Builtin::PowerSum(int()?),
            "elementary" => Builtin::Elementary(int()? as usize),
            "det_power" => Builtin::DetPower(real()?),
            "ball_indicator" => Builtin::BallIndicator(real()?),
            other => return Err(Error::InvalidArgument(format!("unknown builtin symbol `{other}`"))),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Body {
    Expr(Expr),
    Builtin(Builtin),
}

/// A bounded symmetric function on `[0,1)^r`.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialSymbol {
    arity: usize,
    body: Body,
    name: String,
    degree: Option<u32>,
    breakpoints: Vec<f64>,
}

impl RadialSymbol {
    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Total polynomial degree, `None` when the symbol is not a polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.degree
    }

    /// Coordinate values where the symbol jumps along every axis. Quadrature
    /// splits each axis there.
    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    /// Evaluates `ψ` at `x`; `x.len()` must equal the arity.
    pub fn eval(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.arity);
        match &self.body {
            Body::Expr(e) => e.eval(x),
            Body::Builtin(b) => match *b {
                Builtin::Const(c) => c,
                Builtin::PowerSum(m) => x.iter().map(|&v| powi(v, m)).sum(),
                Builtin::Elementary(k) => elementary(x, k),
                Builtin::DetPower(s) => {
                    let prod: f64 = x.iter().product();
                    if libm::trunc(s) == s && s >= 0.0 && s <= f64::from(u32::MAX) {
                        powi(prod, s as u32)
                    } else {
                        libm::pow(prod, s)
                    }
                }
                Builtin::BallIndicator(c) => {
                    if x.iter().all(|&v| v <= c) {
                        1.0
                    } else {
                        0.0
                    }
                }
            },
        }
    }
}

fn elementary(x: &[f64], k: usize) -> f64 {
    // e_0..e_k by the usual one-variable-at-a-time update
    let mut e = vec![0.0; k + 1];
    e[0] = 1.0;
    for &v in x {
        for j in (1..=k).rev() {
            e[j] += v * e[j - 1];
        }
    }
    e[k]
}

/// Parses a symbol over `x1..xr`.
///
/// The result is probed on the corners of the cube and on pseudo-random
/// interior points; non-finite values there reject the expression.
pub fn parse_symbol(text: &str, r: usize) -> Result<RadialSymbol> {
    if r == 0 {
        return Err(Error::InvalidArgument("symbol arity must be at least 1".into()));
    }
    let mut parser = Parser { src: text, pos: 0, rank: r };
    let expr = parser.expr()?;
    if let Some(c) = parser.peek() {
        return parser.err(parser.pos, format!("unexpected `{c}` after expression"));
    }
    let symbol = RadialSymbol {
        arity: r,
        degree: expr.degree(),
        body: Body::Expr(expr),
        name: text.trim().to_string(),
        breakpoints: Vec::new(),
    };
    if !finite_on_probe(&symbol) {
        return Err(Error::NonFiniteSymbol(symbol.name));
    }
    Ok(symbol)
}

fn finite_on_probe(s: &RadialSymbol) -> bool {
    let r = s.arity;
    let edge = 1.0 - 1e-12;
    let mut x = vec![0.0; r];
    let corners = if r <= 12 { 1usize << r } else { 2 };
    for mask in 0..corners {
        for (j, v) in x.iter_mut().enumerate() {
            *v = if mask >> j & 1 == 1 { edge } else { 0.0 };
        }
        if !s.eval(&x).is_finite() {
            return false;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SYMMETRY_SEED ^ 0xF1);
    for _ in 0..256 {
        for v in x.iter_mut() {
            *v = rng.random::<f64>();
        }
        if !s.eval(&x).is_finite() {
            return false;
        }
    }
    true
}

/// Constructs a built-in symbol of arity `r`.
pub fn builtin_symbol(kind: Builtin, r: usize) -> Result<RadialSymbol> {
    if r == 0 {
        return Err(Error::InvalidArgument("symbol arity must be at least 1".into()));
    }
    let bad = |msg: String| Err(Error::InvalidArgument(msg));
    let (degree, breakpoints) = match kind {
        Builtin::Const(c) => {
            if !c.is_finite() {
                return bad(format!("const({c}) is not finite"));
            }
            (Some(0), Vec::new())
        }
        Builtin::PowerSum(m) => (Some(m), Vec::new()),
        Builtin::Elementary(k) => {
            if k > r {
                return bad(format!("elementary({k}) needs k ≤ r = {r}"));
            }
            (Some(k as u32), Vec::new())
        }
        Builtin::DetPower(s) => {
            if !(s >= 0.0) || !s.is_finite() {
                return bad(format!("det_power({s}) needs s ≥ 0"));
            }
            let degree = (libm::trunc(s) == s && s * r as f64 <= f64::from(u32::MAX)).then(|| s as u32 * r as u32);
            (degree, Vec::new())
        }
        Builtin::BallIndicator(c) => {
            if !(0.0..=1.0).contains(&c) {
                return bad(format!("ball_indicator({c}) needs 0 ≤ c ≤ 1"));
            }
            (None, vec![c])
        }
    };
    Ok(RadialSymbol { arity: r, body: Body::Builtin(kind), name: kind.to_string(), degree, breakpoints })
}

/// Tests `|ψ(x) - ψ(σx)| ≤ tol·(1 + |ψ(x)|)` on `samples` pseudo-random points
/// of `[0,1)^r` (seeded with [`SYMMETRY_SEED`]) for every adjacent
/// transposition `σ` and the cyclic shift. Adjacent transpositions generate
/// the symmetric group, so passing them on a point means full symmetry there.
pub fn check_symmetric(s: &RadialSymbol, samples: usize, tol: f64) -> bool {
    let r = s.arity;
    if r == 1 {
        return true;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SYMMETRY_SEED);
    let mut x = vec![0.0; r];
    let mut y = vec![0.0; r];
    for _ in 0..samples.max(1) {
        for v in x.iter_mut() {
            *v = rng.random::<f64>();
        }
        let fx = s.eval(&x);
        let close = |fy: f64| (fx - fy).abs() <= tol * (1.0 + fx.abs());
        for j in 0..r - 1 {
            y.copy_from_slice(&x);
            y.swap(j, j + 1);
            if !close(s.eval(&y)) {
                return false;
            }
        }
        y.copy_from_slice(&x);
        y.rotate_left(1);
        if !close(s.eval(&y)) {
            return false;
        }
    }
    true
}
