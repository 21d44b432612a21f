//! Expression syntax: lexer, recursive-descent parser and printer.
//!
//! Precedence from tightest to loosest: `^`, `*`, unary `-`, binary `+`/`-`.
//! `*` is the (noncommutative) wedge product and associates to the left.

use std::fmt;

use num_rational::BigRational;
use num_traits::One;
use podles::scalar::parse_rational;
use podles::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Atom {
    A,
    B,
    C,
    D,
    BMinus,
    BZero,
    BPlus,
    EPlus,
    EMinus,
    Tau,
    Vol,
    Q,
    S,
    I,
}

impl Atom {
    pub const ALL: [Atom; 14] = [
        Atom::A,
        Atom::B,
        Atom::C,
        Atom::D,
        Atom::BMinus,
        Atom::BZero,
        Atom::BPlus,
        Atom::EPlus,
        Atom::EMinus,
        Atom::Tau,
        Atom::Vol,
        Atom::Q,
        Atom::S,
        Atom::I,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Atom::A => "a",
            Atom::B => "b",
            Atom::C => "c",
            Atom::D => "d",
            Atom::BMinus => "bm",
            Atom::BZero => "b0",
            Atom::BPlus => "bp",
            Atom::EPlus => "e+",
            Atom::EMinus => "e-",
            Atom::Tau => "tau",
            Atom::Vol => "vol",
            Atom::Q => "q",
            Atom::S => "s",
            Atom::I => "i",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Func {
    D,
    Del,
    Dbar,
    Star,
    Hodge,
    L,
    Lam,
    Cnt,
    G,
    Inner,
    Integral,
    Metric,
}

impl Func {
    pub const ALL: [Func; 12] = [
        Func::D,
        Func::Del,
        Func::Dbar,
        Func::Star,
        Func::Hodge,
        Func::L,
        Func::Lam,
        Func::Cnt,
        Func::G,
        Func::Inner,
        Func::Integral,
        Func::Metric,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Func::D => "d",
            Func::Del => "del",
            Func::Dbar => "dbar",
            Func::Star => "star",
            Func::Hodge => "hodge",
            Func::L => "L",
            Func::Lam => "Lam",
            Func::Cnt => "cnt",
            Func::G => "g",
            Func::Inner => "inner",
            Func::Integral => "integral",
            Func::Metric => "metric",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            Func::G | Func::Inner | Func::Metric => 2,
            _ => 1,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Expr {
    /// Nonnegative rational literal such as `3` or `1/2`.
    Num(BigRational),
    Atom(Atom),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
    Call(Func, Vec<Expr>),
}

#[derive(Clone, PartialEq, Eq, Debug)]
enum Tok {
    Num(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    Comma,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(n) => format!("number `{n}`"),
            Tok::Ident(n) => format!("`{n}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse { message: message.into(), line, column }
}

fn lex(text: &str) -> Result<Vec<Spanned>> {
    let chars: Vec<char> = text.chars().collect();
    let (mut k, mut line, mut col) = (0, 1, 1);
    let mut out = Vec::new();
    while k < chars.len() {
        let ch = chars[k];
        let (l0, c0) = (line, col);
        let mut advance = |n: usize, k: &mut usize| {
            *k += n;
            col += n;
        };
        if ch == '\n' {
            k += 1;
            line += 1;
            col = 1;
            continue;
        }
        if ch.is_whitespace() {
            advance(1, &mut k);
            continue;
        }
        let tok = if ch.is_ascii_digit() {
            let start = k;
            while k < chars.len() && chars[k].is_ascii_digit() {
                advance(1, &mut k);
            }
            if k + 1 < chars.len() && chars[k] == '/' && chars[k + 1].is_ascii_digit() {
                advance(1, &mut k);
                while k < chars.len() && chars[k].is_ascii_digit() {
                    advance(1, &mut k);
                }
            }
            Tok::Num(chars[start..k].iter().collect())
        } else if ch.is_ascii_alphabetic() {
            let start = k;
            while k < chars.len() && chars[k].is_ascii_alphanumeric() {
                advance(1, &mut k);
            }
            let mut name: String = chars[start..k].iter().collect();
            // the frames `e+` and `e-` are single identifiers
            if name == "e" && k < chars.len() && (chars[k] == '+' || chars[k] == '-') {
                name.push(chars[k]);
                advance(1, &mut k);
            }
            Tok::Ident(name)
        } else {
            let t = match ch {
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                ',' => Tok::Comma,
                _ => return Err(error(l0, c0, format!("unexpected character `{ch}`"))),
            };
            advance(1, &mut k);
            t
        };
        out.push(Spanned { tok, line: l0, column: c0 });
    }
    out.push(Spanned { tok: Tok::End, line, column: col });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, expected: &[&str]) -> Error {
        let t = &self.toks[self.pos];
        error(t.line, t.column, format!("expected one of {}, found {}", expected.join(", "), t.tok.describe()))
    }

    fn expect(&mut self, tok: Tok, name: &str) -> Result<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(&[name]))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.signed()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.signed()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.signed()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn signed(&mut self) -> Result<Expr> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.signed()?)));
        }
        self.product()
    }

    fn product(&mut self) -> Result<Expr> {
        let mut lhs = self.power()?;
        while *self.peek() == Tok::Star {
            self.bump();
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.power()?));
        }
        Ok(lhs)
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let negative = *self.peek() == Tok::Minus;
        if negative {
            self.bump();
        }
        let at = self.toks[self.pos].clone();
        match &at.tok {
            Tok::Num(n) if !n.contains('/') => {
                self.bump();
                let e: i64 = n.parse().map_err(|_| error(at.line, at.column, "exponent out of range"))?;
                Ok(Expr::Pow(Box::new(base), if negative { -e } else { e }))
            }
            _ => Err(self.unexpected(&["integer exponent"])),
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        let t = self.toks[self.pos].clone();
        match &t.tok {
            Tok::Num(n) => {
                self.bump();
                let r = parse_rational(n).map_err(|_| error(t.line, t.column, format!("bad number `{n}`")))?;
                Ok(Expr::Num(r))
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Tok::Ident(name) => {
                self.bump();
                if let Some(f) = Func::ALL.into_iter().find(|f| f.name() == name) {
                    // `d` alone is the generator, `d(` the differential
                    if *self.peek() == Tok::LParen {
                        return self.call(f, &t);
                    }
                }
                match Atom::ALL.into_iter().find(|a| a.name() == name) {
                    Some(a) => Ok(Expr::Atom(a)),
                    None => Err(error(t.line, t.column, format!("unknown identifier `{name}`"))),
                }
            }
            _ => Err(self.unexpected(&["number", "identifier", "`(`", "`-`"])),
        }
    }

    fn call(&mut self, f: Func, at: &Spanned) -> Result<Expr> {
        self.expect(Tok::LParen, "`(`")?;
        let mut args = vec![self.expr()?];
        while *self.peek() == Tok::Comma {
            self.bump();
            args.push(self.expr()?);
        }
        self.expect(Tok::RParen, "`)` or `,`")?;
        if args.len() != f.arity() {
            return Err(error(
                at.line,
                at.column,
                format!("`{}` takes {} argument(s), got {}", f.name(), f.arity(), args.len()),
            ));
        }
        Ok(Expr::Call(f, args))
    }
}

pub fn parse(text: &str) -> Result<Expr> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.unexpected(&["`+`", "`-`", "`*`", "`^`", "end of input"]));
    }
    Ok(e)
}

// Binding strength used by the printer.
fn level(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) => 1,
        Expr::Neg(_) => 2,
        Expr::Mul(..) => 3,
        Expr::Pow(..) => 4,
        Expr::Num(_) | Expr::Atom(_) | Expr::Call(..) => 5,
    }
}

fn write_at(f: &mut fmt::Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
    if level(e) < min {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(r) if r.denom().is_one() => write!(f, "{}", r.numer()),
            Expr::Num(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Expr::Atom(a) => f.write_str(a.name()),
            Expr::Neg(x) => {
                f.write_str("-")?;
                write_at(f, x, 2)
            }
            Expr::Add(a, b) => {
                write_at(f, a, 1)?;
                f.write_str("+")?;
                write_at(f, b, 2)
            }
            Expr::Sub(a, b) => {
                write_at(f, a, 1)?;
                f.write_str("-")?;
                write_at(f, b, 2)
            }
            Expr::Mul(a, b) => {
                write_at(f, a, 3)?;
                f.write_str("*")?;
                write_at(f, b, 4)
            }
            Expr::Pow(x, n) => {
                match &**x {
                    Expr::Num(r) if !r.denom().is_one() => write!(f, "({x})")?,
                    _ => write_at(f, x, 5)?,
                }
                write!(f, "^{n}")
            }
            Expr::Call(func, args) => {
                write!(f, "{}(", func.name())?;
                for (k, a) in args.iter().enumerate() {
                    if k > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Expr {
        parse(s).unwrap()
    }

    #[test]
    fn precedence() {
        assert_eq!(p("-a*b"), Expr::Neg(Box::new(p("a*b"))));
        assert_eq!(p("-a^2"), Expr::Neg(Box::new(p("a^2"))));
        assert_eq!(p("a*b*c"), Expr::Mul(Box::new(p("a*b")), Box::new(p("c"))));
        assert_eq!(p("a-b+c"), Expr::Add(Box::new(p("a-b")), Box::new(p("c"))));
        assert_eq!(p("q^-1"), Expr::Pow(Box::new(Expr::Atom(Atom::Q)), -1));
    }

    #[test]
    fn frames_and_calls() {
        assert_eq!(p("e+ - e-"), Expr::Sub(Box::new(Expr::Atom(Atom::EPlus)), Box::new(Expr::Atom(Atom::EMinus))));
        assert_eq!(p("d(d)"), Expr::Call(Func::D, vec![Expr::Atom(Atom::D)]));
        assert_eq!(p("g(e+, e+)").to_string(), "g(e+,e+)");
        assert_eq!(p("1/2*q").to_string(), "1/2*q");
    }

    #[test]
    fn errors_carry_positions() {
        match parse("a +\n  * b") {
            Err(Error::Parse { line, column, message }) => {
                assert_eq!((line, column), (2, 3));
                assert!(message.contains("expected one of"), "{message}");
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse("inner(a)"), Err(Error::Parse { column: 1, .. })));
        assert!(matches!(parse("x"), Err(Error::Parse { .. })));
        assert!(matches!(parse("a^b"), Err(Error::Parse { .. })));
        assert!(matches!(parse("(a"), Err(Error::Parse { .. })));
        assert!(matches!(parse("a $"), Err(Error::Parse { column: 3, .. })));
    }

    #[test]
    fn printer_parenthesizes_minimally() {
        for s in ["(a+b)*c", "a*(b*c)", "(-a)*b", "-(a+b)", "a-(b-c)", "(a*b)^2", "--a", "a+-b", "(1/2)^2"] {
            assert_eq!(p(s).to_string(), s);
            assert_eq!(p(&p(s).to_string()), p(s));
        }
    }
}
