//! Polynomial and differential-form expressions.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := factor ('*' factor)*
//! factor  := '-' factor | primary ('^' nat)*
//! primary := int ('/' nat)? | 'i' | var | 'd' var | '(' expr ')'
//! ```
//!
//! `*` is the wedge product once both sides carry differentials. Grading is
//! checked while parsing, so `dx0 + x1` and `dx0^2` are rejected with a position.

use folforge::extalg::PolyForm;
use folforge::{MultiPoly, Scalar};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    /// Non-negative rational literal.
    Num(Scalar),
    I,
    Var(String),
    Diff(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    SyntaxError,
    UnknownIdentifier,
    GradingError,
}

impl ParseErrorKind {
    pub fn name(self) -> &'static str {
        match self {
            ParseErrorKind::SyntaxError => "SyntaxError",
            ParseErrorKind::UnknownIdentifier => "UnknownIdentifier",
            ParseErrorKind::GradingError => "GradingError",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{}: {message} at line {line}, column {column}", kind.name())]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub message: String,
    pub line: usize,
    pub column: usize,
}

/// Every name the grammar knows about.
pub fn known_variable(name: &str) -> bool {
    let indexed = |p: char| {
        let mut c = name.chars();
        c.next() == Some(p) && matches!(c.next(), Some('0'..='9')) && c.next().is_none()
    };
    indexed('x') || indexed('y') || name == "s" || name == "t"
}

/// Declared variables: the differential coordinates, in order, plus the
/// optional ring parameter `eps`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vars {
    names: Vec<String>,
    eps: bool,
}

impl Vars {
    pub fn new(names: Vec<String>, eps: bool) -> Result<Self, String> {
        for (k, n) in names.iter().enumerate() {
            if !known_variable(n) {
                return Err(format!("'{n}' is not a variable name"));
            }
            if names[..k].contains(n) {
                return Err(format!("'{n}' declared twice"));
            }
        }
        Ok(Vars { names, eps })
    }

    /// All twenty-two names plus `eps`; used when no ambient is given.
    pub fn all() -> Self {
        let mut names: Vec<String> = (0..10).map(|i| format!("x{i}")).collect();
        names.extend((0..10).map(|i| format!("y{i}")));
        names.extend(["s".to_string(), "t".to_string()]);
        Vars { names, eps: true }
    }

    /// `x0..xn` for an ambient label `Pn` or `Q3`.
    pub fn for_ambient(label: &str) -> Result<Self, String> {
        let n = match label {
            "Q3" => 4,
            _ => match label.strip_prefix('P').and_then(|d| d.parse::<usize>().ok()) {
                Some(n) if (1..=9).contains(&n) => n,
                _ => return Err(format!("unknown ambient '{label}' (expected P1..P9 or Q3)")),
            },
        };
        Ok(Vars { names: (0..=n).map(|i| format!("x{i}")).collect(), eps: true })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn ndiff(&self) -> usize {
        self.names.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(String),
    Ident(String),
    Sym(char),
    End,
}

#[derive(Clone, Copy, Debug)]
struct Pos {
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut line, mut col) = (1, 1);
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        let pos = Pos { line, column: col };
        if c == '\n' {
            line += 1;
            col = 1;
            k += 1;
            continue;
        }
        if c.is_whitespace() {
            col += 1;
            k += 1;
            continue;
        }
        let start = k;
        if c.is_ascii_digit() {
            while k < chars.len() && chars[k].is_ascii_digit() {
                k += 1;
            }
            out.push((Tok::Int(chars[start..k].iter().collect()), pos));
        } else if c.is_alphabetic() || c == '_' {
            while k < chars.len() && (chars[k].is_alphanumeric() || chars[k] == '_') {
                k += 1;
            }
            out.push((Tok::Ident(chars[start..k].iter().collect()), pos));
        } else if "+-*/^()".contains(c) {
            k += 1;
            out.push((Tok::Sym(c), pos));
        } else {
            return Err(ParseError { kind: ParseErrorKind::SyntaxError, message: format!("unexpected character '{c}'"), line, column: col });
        }
        col += k - start;
    }
    out.push((Tok::End, Pos { line, column: col }));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    vars: &'a Vars,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn err(&self, kind: ParseErrorKind, pos: Pos, message: impl Into<String>) -> ParseError {
        ParseError { kind, message: message.into(), line: pos.line, column: pos.column }
    }

    fn expr(&mut self) -> Result<(Expr, usize), ParseError> {
        let (mut e, g) = self.term()?;
        while let Tok::Sym(op @ ('+' | '-')) = *self.peek() {
            let pos = self.pos();
            self.bump();
            let (r, h) = self.term()?;
            if g != h {
                return Err(self.err(ParseErrorKind::GradingError, pos, format!("cannot add a {g}-form and a {h}-form")));
            }
            e = if op == '+' { Expr::Add(Box::new(e), Box::new(r)) } else { Expr::Sub(Box::new(e), Box::new(r)) };
        }
        Ok((e, g))
    }

    fn term(&mut self) -> Result<(Expr, usize), ParseError> {
        let (mut e, mut g) = self.factor()?;
        while *self.peek() == Tok::Sym('*') {
            self.bump();
            let (r, h) = self.factor()?;
            g += h;
            e = Expr::Mul(Box::new(e), Box::new(r));
        }
        Ok((e, g))
    }

    fn factor(&mut self) -> Result<(Expr, usize), ParseError> {
        if *self.peek() == Tok::Sym('-') {
            self.bump();
            let (e, g) = self.factor()?;
            return Ok((Expr::Neg(Box::new(e)), g));
        }
        let (mut e, mut g) = self.primary()?;
        while *self.peek() == Tok::Sym('^') {
            let pos = self.pos();
            self.bump();
            let n = self.nat("exponent")?;
            if g > 0 && n >= 2 {
                return Err(self.err(ParseErrorKind::GradingError, pos, "powers of a form of positive degree vanish or are undefined"));
            }
            if n == 0 {
                g = 0;
            }
            e = Expr::Pow(Box::new(e), n);
        }
        Ok((e, g))
    }

    fn nat(&mut self, what: &str) -> Result<u32, ParseError> {
        match self.bump() {
            (Tok::Int(s), p) => s.parse().map_err(|_| self.err(ParseErrorKind::SyntaxError, p, format!("{what} too large"))),
            (t, p) => Err(self.err(ParseErrorKind::SyntaxError, p, format!("expected {what}, found {}", describe(&t)))),
        }
    }

    fn variable(&self, name: &str, pos: Pos) -> Result<Expr, ParseError> {
        if name == "eps" && self.vars.eps {
            return Ok(Expr::Var(name.into()));
        }
        if self.vars.index(name).is_some() {
            return Ok(Expr::Var(name.into()));
        }
        let msg = if known_variable(name) || name == "eps" {
            format!("'{name}' is not declared for this ambient")
        } else {
            format!("unknown identifier '{name}'")
        };
        Err(self.err(ParseErrorKind::UnknownIdentifier, pos, msg))
    }

    fn differential(&self, name: &str, pos: Pos) -> Result<Expr, ParseError> {
        if self.vars.index(name).is_some() {
            Ok(Expr::Diff(name.into()))
        } else {
            Err(self.err(ParseErrorKind::UnknownIdentifier, pos, format!("'d{name}' is not the differential of a declared variable")))
        }
    }

    fn primary(&mut self) -> Result<(Expr, usize), ParseError> {
        let (tok, pos) = self.bump();
        match tok {
            Tok::Int(n) => {
                let mut text = n;
                if *self.peek() == Tok::Sym('/') {
                    self.bump();
                    let dpos = self.pos();
                    let d = match self.bump() {
                        (Tok::Int(d), _) => d,
                        (t, p) => return Err(self.err(ParseErrorKind::SyntaxError, p, format!("expected denominator, found {}", describe(&t)))),
                    };
                    if d.chars().all(|c| c == '0') {
                        return Err(self.err(ParseErrorKind::SyntaxError, dpos, "zero denominator"));
                    }
                    text = format!("{text}/{d}");
                }
                let v: Scalar = text.parse().map_err(|_| self.err(ParseErrorKind::SyntaxError, pos, "bad number"))?;
                Ok((Expr::Num(v), 0))
            }
            Tok::Ident(name) if name == "i" => Ok((Expr::I, 0)),
            Tok::Ident(name) if name == "d" => match self.bump() {
                (Tok::Ident(v), p) => Ok((self.differential(&v, p)?, 1)),
                (t, p) => Err(self.err(ParseErrorKind::SyntaxError, p, format!("'d' must be followed by a variable, found {}", describe(&t)))),
            },
            Tok::Ident(name) => {
                if let Some(rest) = name.strip_prefix('d') {
                    if known_variable(rest) || rest == "eps" {
                        return Ok((self.differential(rest, pos)?, 1));
                    }
                }
                Ok((self.variable(&name, pos)?, 0))
            }
            Tok::Sym('(') => {
                let inner = self.expr()?;
                match self.bump() {
                    (Tok::Sym(')'), _) => Ok(inner),
                    (t, p) => Err(self.err(ParseErrorKind::SyntaxError, p, format!("expected ')', found {}", describe(&t)))),
                }
            }
            t => Err(self.err(ParseErrorKind::SyntaxError, pos, format!("unexpected {}", describe(&t)))),
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(s) => format!("number {s}"),
        Tok::Ident(s) => format!("identifier '{s}'"),
        Tok::Sym(c) => format!("'{c}'"),
        Tok::End => "end of input".into(),
    }
}

/// Parse against an explicit set of declared variables.
pub fn parse_with(text: &str, vars: &Vars) -> Result<Expr, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, at: 0, vars };
    let (e, _) = p.expr()?;
    match p.peek() {
        Tok::End => Ok(e),
        t => Err(p.err(ParseErrorKind::SyntaxError, p.pos(), format!("unexpected {}", describe(&t.clone())))),
    }
}

/// Parse with every variable name declared.
pub fn parse_expression(text: &str) -> Result<Expr, ParseError> {
    parse_with(text, &Vars::all())
}

impl Expr {
    /// Degree as a differential form (0 for functions).
    pub fn grade(&self) -> usize {
        match self {
            Expr::Num(_) | Expr::I | Expr::Var(_) => 0,
            Expr::Diff(_) => 1,
            Expr::Neg(a) => a.grade(),
            Expr::Add(a, _) | Expr::Sub(a, _) => a.grade(),
            Expr::Mul(a, b) => a.grade() + b.grade(),
            Expr::Pow(a, n) => {
                if *n == 0 {
                    0
                } else {
                    a.grade()
                }
            }
        }
    }

    pub fn uses_eps(&self) -> bool {
        match self {
            Expr::Var(v) => v == "eps",
            Expr::Num(_) | Expr::I | Expr::Diff(_) => false,
            Expr::Neg(a) | Expr::Pow(a, _) => a.uses_eps(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => a.uses_eps() || b.uses_eps(),
        }
    }

    /// Evaluate to a form on ℂ^{ndiff}; `eps`, when used, is an extra
    /// polynomial variable without a differential.
    pub fn eval(&self, vars: &Vars) -> Result<PolyForm, String> {
        let nd = vars.ndiff();
        let nv = if self.uses_eps() { nd + 1 } else { nd };
        self.eval_in(vars, nv)
    }

    fn eval_in(&self, vars: &Vars, nv: usize) -> Result<PolyForm, String> {
        let nd = vars.ndiff();
        let func = |p: MultiPoly| PolyForm::function(p, nd);
        Ok(match self {
            Expr::Num(c) => func(MultiPoly::constant(nv, c.clone())),
            Expr::I => func(MultiPoly::constant(nv, Scalar::i())),
            Expr::Var(v) => {
                let k = if v == "eps" { nd } else { vars.index(v).ok_or_else(|| format!("undeclared variable '{v}'"))? };
                func(MultiPoly::var(nv, k))
            }
            Expr::Diff(v) => PolyForm::dx(nv, nd, vars.index(v).ok_or_else(|| format!("undeclared variable '{v}'"))?),
            Expr::Neg(a) => a.eval_in(vars, nv)?.scale(&-Scalar::one()),
            Expr::Add(a, b) => a.eval_in(vars, nv)?.try_add(&b.eval_in(vars, nv)?).map_err(|e| e.to_string())?,
            Expr::Sub(a, b) => {
                let r = b.eval_in(vars, nv)?.scale(&-Scalar::one());
                a.eval_in(vars, nv)?.try_add(&r).map_err(|e| e.to_string())?
            }
            Expr::Mul(a, b) => a.eval_in(vars, nv)?.wedge(&b.eval_in(vars, nv)?).map_err(|e| e.to_string())?,
            Expr::Pow(a, n) => {
                let base = a.eval_in(vars, nv)?;
                match (base.degree(), n) {
                    (_, 0) => func(MultiPoly::one(nv)),
                    (_, 1) => base,
                    (0, _) => func(base.as_function().pow(*n)),
                    _ => return Err("power of a form of positive degree".into()),
                }
            }
        })
    }

    fn level(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 0,
            Expr::Mul(..) => 1,
            Expr::Neg(_) => 2,
            Expr::Pow(..) => 3,
            _ => 4,
        }
    }

    fn write(&self, out: &mut String, ctx: u8) {
        let paren = self.level() < ctx;
        if paren {
            out.push('(');
        }
        match self {
            Expr::Num(c) => out.push_str(&c.to_short()),
            Expr::I => out.push('i'),
            Expr::Var(v) => out.push_str(v),
            Expr::Diff(v) => {
                out.push('d');
                out.push_str(v);
            }
            Expr::Neg(a) => {
                out.push('-');
                a.write(out, 2);
            }
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                a.write(out, 0);
                out.push_str(if matches!(self, Expr::Add(..)) { " + " } else { " - " });
                b.write(out, 1);
            }
            Expr::Mul(a, b) => {
                a.write(out, 1);
                out.push('*');
                b.write(out, 2);
            }
            Expr::Pow(a, n) => {
                a.write(out, 3);
                out.push('^');
                out.push_str(&n.to_string());
            }
        }
        if paren {
            out.push(')');
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        self.write(&mut s, 0);
        f.write_str(&s)
    }
}

/// Names used when printing results: the declared names, then `eps`.
pub fn print_names(vars: &Vars, nvars: usize) -> Vec<String> {
    let mut names = vars.names().to_vec();
    if nvars > names.len() {
        names.push("eps".into());
    }
    names
}
