//! The line-oriented job format.
//!
//! ```text
//! curve p=7 a=1 b=3
//! ext k=2
//! mark inf
//! summand 1*(4,1) - 1*inf
//! twist 1*inf + 1*(4,1) + 1*(5,0)
//! ```

use std::fmt;

use ellbundle_core::elliptic::{Curve, Divisor, Place, Point};
use ellbundle_core::funcspace::CurveFunction;
use ellbundle_core::galois::{Fe, Field};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: expected {expected}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub expected: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Presentation {
    None,
    DirectSum { summands: Vec<Divisor> },
    Kernel { ambient: Vec<Divisor>, target: Divisor, g: Vec<CurveFunction> },
    Monad { ambient: Vec<Divisor>, target: Divisor, g: Vec<CurveFunction>, f: Vec<Vec<CurveFunction>> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Job {
    pub curve: Curve,
    pub mark: Point,
    pub presentation: Presentation,
    /// `None` means the default `1*(mark)`.
    pub twist: Option<Divisor>,
    /// Divisor for the `rr` command.
    pub divisor: Option<Divisor>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(String),
    Ident(String),
    Slot(String),
    Sym(char),
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(s) | Tok::Ident(s) => write!(f, "'{s}'"),
            Tok::Slot(s) => write!(f, "'${s}'"),
            Tok::Sym(c) => write!(f, "'{c}'"),
        }
    }
}

fn lex(line: usize, text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c == '#' {
            break;
        }
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let s: String = chars[i..].iter().take_while(|c| c.is_ascii_digit()).collect();
            i += s.len();
            out.push((Tok::Int(s), col));
        } else if c.is_ascii_alphabetic() || c == '_' || c == '$' {
            let start = if c == '$' { i + 1 } else { i };
            let s: String = chars[start..].iter().take_while(|c| c.is_ascii_alphanumeric() || **c == '_').collect();
            i = start + s.len();
            if c == '$' {
                if s.is_empty() {
                    return Err(ParseError { line, column: col, expected: "slot name after '$'".into() });
                }
                out.push((Tok::Slot(s), col));
            } else {
                out.push((Tok::Ident(s), col));
            }
        } else if "+-*/^(),;=".contains(c) {
            out.push((Tok::Sym(c), col));
            i += 1;
        } else {
            return Err(ParseError { line, column: col, expected: format!("a token, found '{c}'") });
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
enum Expr {
    Int(String),
    Var(char),
    Neg(Box<Expr>),
    Bin(char, Box<Expr>, Box<Expr>, usize),
    Pow(Box<Expr>, i64),
}

struct Cursor<'a> {
    toks: &'a [(Tok, usize)],
    pos: usize,
    line: usize,
    end_col: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k).map(|t| &t.0)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |t| t.1)
    }

    fn err(&self, expected: impl Into<String>) -> ParseError {
        let mut expected = expected.into();
        match self.peek() {
            Some(Tok::Slot(s)) => expected = format!("{expected} (unbound slot ${s})"),
            Some(t) => expected = format!("{expected}, found {t}"),
            None => expected = format!("{expected}, found end of line"),
        }
        ParseError { line: self.line, column: self.col(), expected }
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.peek().cloned();
        self.pos += 1;
        t
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(format!("'{c}'")))
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn finish(&self) -> Result<(), ParseError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.err("end of line"))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut e = self.term()?;
        loop {
            let op = match self.peek() {
                Some(Tok::Sym(c @ ('+' | '-'))) => *c,
                _ => return Ok(e),
            };
            let col = self.col();
            self.pos += 1;
            let rhs = self.term()?;
            e = Expr::Bin(op, Box::new(e), Box::new(rhs), col);
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut e = self.unary()?;
        loop {
            let op = match self.peek() {
                Some(Tok::Sym(c @ ('*' | '/'))) => *c,
                _ => return Ok(e),
            };
            let col = self.col();
            self.pos += 1;
            let rhs = self.unary()?;
            e = Expr::Bin(op, Box::new(e), Box::new(rhs), col);
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let neg = self.eat('-');
        match self.next() {
            Some(Tok::Int(s)) => {
                let e: i64 = match s.parse() {
                    Ok(e) if e <= 256 => e,
                    _ => {
                        self.pos -= 1;
                        return Err(self.err("an exponent of at most 256"));
                    }
                };
                Ok(Expr::Pow(Box::new(base), if neg { -e } else { e }))
            }
            _ => {
                self.pos -= 1;
                Err(self.err("an integer exponent"))
            }
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Int(s)) => {
                self.pos += 1;
                Ok(Expr::Int(s))
            }
            Some(Tok::Ident(s)) if matches!(s.as_str(), "x" | "y" | "t") => {
                self.pos += 1;
                Ok(Expr::Var(s.chars().next().unwrap()))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            _ => Err(self.err("a number, x, y, t or '('")),
        }
    }
}

fn reduce(field: &Field, digits: &str) -> Fe {
    let p = field.characteristic() as u128;
    let n = digits.bytes().fold(0u128, |acc, d| (acc * 10 + (d - b'0') as u128) % p);
    field.from_u64(n as u64)
}

/// Evaluation targets for expressions: field elements or curve functions.
trait Ring: Sized {
    fn int(&self, digits: &str) -> Self;
    fn var(&self, v: char) -> Option<Self>;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;
}

#[derive(Clone)]
struct Elem<'f>(&'f Field, Fe);

impl Ring for Elem<'_> {
    fn int(&self, digits: &str) -> Self {
        Elem(self.0, reduce(self.0, digits))
    }
    fn var(&self, v: char) -> Option<Self> {
        (v == 't' && self.0.degree() > 1).then(|| Elem(self.0, self.0.generator()))
    }
    fn add(&self, o: &Self) -> Self {
        Elem(self.0, self.0.add(&self.1, &o.1))
    }
    fn sub(&self, o: &Self) -> Self {
        Elem(self.0, self.0.sub(&self.1, &o.1))
    }
    fn mul(&self, o: &Self) -> Self {
        Elem(self.0, self.0.mul(&self.1, &o.1))
    }
    fn neg(&self) -> Self {
        Elem(self.0, self.0.neg(&self.1))
    }
    fn inv(&self) -> Option<Self> {
        self.0.inv(&self.1).map(|v| Elem(self.0, v))
    }
}

impl Ring for CurveFunction {
    fn int(&self, digits: &str) -> Self {
        CurveFunction::constant(self.curve(), reduce(self.curve().field(), digits))
    }
    fn var(&self, v: char) -> Option<Self> {
        let e = self.curve();
        match v {
            'x' => Some(CurveFunction::x(e)),
            'y' => Some(CurveFunction::y(e)),
            't' if e.field().degree() > 1 => Some(CurveFunction::constant(e, e.field().generator())),
            _ => None,
        }
    }
    fn add(&self, o: &Self) -> Self {
        CurveFunction::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        CurveFunction::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        CurveFunction::mul(self, o)
    }
    fn neg(&self) -> Self {
        CurveFunction::neg(self)
    }
    fn inv(&self) -> Option<Self> {
        CurveFunction::inv(self).ok()
    }
}

fn eval<R: Ring + Clone>(e: &Expr, unit: &R, line: usize, col: usize, what: &str) -> Result<R, ParseError> {
    let err = |c: usize, msg: String| ParseError { line, column: c, expected: msg };
    Ok(match e {
        Expr::Int(s) => unit.int(s),
        Expr::Var(v) => unit.var(*v).ok_or_else(|| err(col, format!("{what}; '{v}' is not allowed here")))?,
        Expr::Neg(a) => eval(a, unit, line, col, what)?.neg(),
        Expr::Bin(op, a, b, c) => {
            let x = eval(a, unit, line, col, what)?;
            let y = eval(b, unit, line, col, what)?;
            match op {
                '+' => x.add(&y),
                '-' => x.sub(&y),
                '*' => x.mul(&y),
                _ => x.mul(&y.inv().ok_or_else(|| err(*c, "a nonzero divisor".into()))?),
            }
        }
        Expr::Pow(a, k) => {
            let mut x = eval(a, unit, line, col, what)?;
            if *k < 0 {
                x = x.inv().ok_or_else(|| err(col, "a nonzero base for a negative power".into()))?;
            }
            let mut acc = unit.int("1");
            for _ in 0..k.unsigned_abs() {
                acc = acc.mul(&x);
            }
            acc
        }
    })
}

fn elem(c: &mut Cursor, field: &Field) -> Result<Fe, ParseError> {
    let col = c.col();
    let e = c.expr()?;
    Ok(eval(&e, &Elem(field, field.zero()), c.line, col, "a field element")?.1)
}

fn function(c: &mut Cursor, curve: &Curve) -> Result<CurveFunction, ParseError> {
    let col = c.col();
    let e = c.expr()?;
    eval(&e, &CurveFunction::zero(curve), c.line, col, "a function")
}

fn point(c: &mut Cursor, curve: &Curve) -> Result<Point, ParseError> {
    let col = c.col();
    if c.peek() == Some(&Tok::Ident("inf".into())) {
        c.pos += 1;
        return Ok(Point::Infinity);
    }
    c.expect('(')?;
    let x = elem(c, curve.field())?;
    c.expect(',')?;
    let y = elem(c, curve.field())?;
    c.expect(')')?;
    curve.point(x, y).map_err(|_| ParseError { line: c.line, column: col, expected: "a point on the curve".into() })
}

fn divisor(c: &mut Cursor, curve: &Curve) -> Result<Divisor, ParseError> {
    if c.peek() == Some(&Tok::Int("0".into())) && c.peek_at(1).is_none() {
        c.pos += 1;
        return Ok(Divisor::zero());
    }
    let mut d = Divisor::zero();
    let mut sign = if c.eat('-') { -1 } else { 1 };
    loop {
        let mut n = 1i64;
        if let Some(Tok::Int(s)) = c.peek().cloned() {
            n = s.parse().map_err(|_| c.err("a small multiplicity"))?;
            c.pos += 1;
            c.expect('*')?;
        }
        let q = point(c, curve)?;
        d.add_term(Place::from_point(curve, &q), sign * n);
        sign = match c.peek() {
            Some(Tok::Sym('+')) => 1,
            Some(Tok::Sym('-')) => -1,
            None => return Ok(d),
            _ => return Err(c.err("'+', '-' or end of line")),
        };
        c.pos += 1;
    }
}

fn fn_list(c: &mut Cursor, curve: &Curve) -> Result<Vec<CurveFunction>, ParseError> {
    let mut out = vec![function(c, curve)?];
    while c.eat(',') {
        out.push(function(c, curve)?);
    }
    Ok(out)
}

fn key_int(c: &mut Cursor, key: &str) -> Result<u64, ParseError> {
    if c.peek() != Some(&Tok::Ident(key.into())) {
        return Err(c.err(format!("'{key}='")));
    }
    c.pos += 1;
    c.expect('=')?;
    match c.peek().cloned() {
        Some(Tok::Int(s)) => {
            let v = s.parse().map_err(|_| c.err("an integer that fits in 64 bits"))?;
            c.pos += 1;
            Ok(v)
        }
        _ => Err(c.err("an integer")),
    }
}

fn key_elem(c: &mut Cursor, key: &str, field: &Field) -> Result<Fe, ParseError> {
    if c.peek() != Some(&Tok::Ident(key.into())) {
        return Err(c.err(format!("'{key}='")));
    }
    c.pos += 1;
    c.expect('=')?;
    elem(c, field)
}

/// Line number, tokens, and the column just past the end.
type Line = (usize, Vec<(Tok, usize)>, usize);

fn cursor(l: &Line) -> Cursor<'_> {
    Cursor { toks: &l.1[1..], pos: 0, line: l.0, end_col: l.2 }
}

fn keyword(toks: &[(Tok, usize)]) -> Option<&str> {
    match toks.first() {
        Some((Tok::Ident(s), _)) => Some(s),
        _ => None,
    }
}

/// Parses a job file. Semantic checks of the presentation (degrees,
/// `g f = 0`, surjectivity) happen later, in [`crate::build`].
pub fn parse_job(text: &str) -> Result<Job, ParseError> {
    let mut lines: Vec<Line> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let toks = lex(i + 1, raw)?;
        if !toks.is_empty() {
            lines.push((i + 1, toks, raw.chars().count() + 1));
        }
    }
    let Some((first, rest)) = lines.split_first() else {
        return Err(ParseError { line: 1, column: 1, expected: "a 'curve' line".into() });
    };
    if keyword(&first.1) != Some("curve") {
        return Err(ParseError { line: first.0, column: first.1[0].1, expected: "a 'curve' line".into() });
    }
    let mut c = cursor(first);
    let p = key_int(&mut c, "p")?;
    let prime = Field::prime(p).map_err(|e| ParseError { line: first.0, column: first.1[1].1, expected: format!("a prime p > 3 ({e})") })?;
    let a_col = c.col();
    let a = c.clone_at();
    let mut rest = rest;
    let mut k = 1;
    if let Some(l) = rest.first() {
        if keyword(&l.1) == Some("ext") {
            let mut ce = cursor(l);
            k = key_int(&mut ce, "k")? as usize;
            ce.finish()?;
            if k == 0 || k > 32 {
                return Err(ParseError { line: l.0, column: l.1[1].1, expected: "an extension degree in 1..=32".into() });
            }
            rest = &rest[1..];
        }
    }
    let field = if k == 1 { prime } else { Field::with_degree(p, k).expect("prime checked") };
    let mut c = a;
    let ca = key_elem(&mut c, "a", &field)?;
    let cb = key_elem(&mut c, "b", &field)?;
    c.finish()?;
    let curve = Curve::new(&field, ca, cb)
        .map_err(|e| ParseError { line: first.0, column: a_col, expected: format!("a nonsingular curve ({e})") })?;

    let mut mark = None;
    let mut summands = Vec::new();
    let mut ambient = Vec::new();
    let mut target = None;
    let mut g = None;
    let mut f: Vec<Vec<CurveFunction>> = Vec::new();
    let mut twist = None;
    let mut div = None;
    for l in rest {
        let kw = keyword(&l.1).unwrap_or("");
        let mut c = cursor(l);
        let dup = |what: &str| ParseError { line: l.0, column: 1, expected: format!("at most one '{what}' line") };
        match kw {
            "mark" => {
                if mark.is_some() {
                    return Err(dup("mark"));
                }
                mark = Some(point(&mut c, &curve)?);
            }
            "summand" => summands.push(divisor(&mut c, &curve)?),
            "ambient" => ambient.push(divisor(&mut c, &curve)?),
            "target" => {
                if target.is_some() {
                    return Err(dup("target"));
                }
                target = Some(divisor(&mut c, &curve)?);
            }
            "g" => {
                if g.is_some() {
                    return Err(dup("g"));
                }
                g = Some(fn_list(&mut c, &curve)?);
            }
            "f" => loop {
                f.push(fn_list(&mut c, &curve)?);
                if !c.eat(';') {
                    break;
                }
            },
            "twist" => {
                if twist.is_some() {
                    return Err(dup("twist"));
                }
                twist = Some(divisor(&mut c, &curve)?);
            }
            "divisor" => {
                if div.is_some() {
                    return Err(dup("divisor"));
                }
                div = Some(divisor(&mut c, &curve)?);
            }
            _ => {
                return Err(ParseError {
                    line: l.0,
                    column: l.1[0].1,
                    expected: "one of mark, summand, ambient, target, g, f, twist, divisor".into(),
                })
            }
        }
        c.finish()?;
    }
    let line0 = lines.last().map_or(1, |l| l.0);
    let mark = mark.ok_or(ParseError { line: line0, column: 1, expected: "a 'mark' line".into() })?;
    let kernel_part = !ambient.is_empty() || target.is_some() || g.is_some() || !f.is_empty();
    let presentation = match (summands.is_empty(), kernel_part) {
        (true, false) => Presentation::None,
        (false, false) => Presentation::DirectSum { summands },
        (true, true) => {
            let missing = |w: &str| ParseError { line: line0, column: 1, expected: format!("a '{w}' line") };
            let target = target.ok_or_else(|| missing("target"))?;
            let g = g.ok_or_else(|| missing("g"))?;
            if ambient.is_empty() {
                return Err(missing("ambient"));
            }
            if f.is_empty() {
                Presentation::Kernel { ambient, target, g }
            } else {
                Presentation::Monad { ambient, target, g, f }
            }
        }
        (false, true) => {
            return Err(ParseError {
                line: line0,
                column: 1,
                expected: "either summand lines or an ambient/target/g block, not both".into(),
            })
        }
    };
    Ok(Job { curve, mark, presentation, twist, divisor: div })
}

impl Cursor<'_> {
    fn clone_at(&self) -> Self {
        Cursor { toks: self.toks, pos: self.pos, line: self.line, end_col: self.end_col }
    }
}

/// Renders a job in the file format; `parse_job(&print_job(j)) == j`.
pub fn print_job(job: &Job) -> String {
    let e = &job.curve;
    let fld = e.field();
    let mut out = format!("curve p={} a={} b={}\n", fld.characteristic(), fld.fmt_elem(e.a()), fld.fmt_elem(e.b()));
    if fld.degree() > 1 {
        out.push_str(&format!("ext k={}\n", fld.degree()));
    }
    out.push_str(&format!("mark {}\n", e.fmt_point(&job.mark)));
    let fns = |v: &[CurveFunction]| v.iter().map(|f| f.to_string()).collect::<Vec<_>>().join(", ");
    match &job.presentation {
        Presentation::None => {}
        Presentation::DirectSum { summands } => {
            for d in summands {
                out.push_str(&format!("summand {}\n", d.fmt(e)));
            }
        }
        Presentation::Kernel { ambient, target, g } | Presentation::Monad { ambient, target, g, .. } => {
            for d in ambient {
                out.push_str(&format!("ambient {}\n", d.fmt(e)));
            }
            out.push_str(&format!("target {}\n", target.fmt(e)));
            out.push_str(&format!("g {}\n", fns(g)));
            if let Presentation::Monad { f, .. } = &job.presentation {
                for row in f {
                    out.push_str(&format!("f {}\n", fns(row)));
                }
            }
        }
    }
    if let Some(t) = &job.twist {
        out.push_str(&format!("twist {}\n", t.fmt(e)));
    }
    if let Some(d) = &job.divisor {
        out.push_str(&format!("divisor {}\n", d.fmt(e)));
    }
    out
}

/// Parses a divisor given on the command line.
pub fn parse_divisor(curve: &Curve, text: &str) -> Result<Divisor, ParseError> {
    let toks = lex(1, text)?;
    let mut c = Cursor { toks: &toks, pos: 0, line: 1, end_col: text.chars().count() + 1 };
    let d = divisor(&mut c, curve)?;
    c.finish()?;
    Ok(d)
}
