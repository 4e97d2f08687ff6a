//! Plain-text formats for algebras, witnesses, cocycles and fact lists.
//!
//! All formats share the same lexical rules: statements end at a newline or
//! `;`, `#` starts a comment, and right-hand sides are linear combinations
//! such as `2*e1 - 1/3*e4` whose coefficients may involve `t` where allowed.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::algebra::{LieAlgebra, SparseVector};
use crate::bstable::SetId;
use crate::catalog::CatalogEntry;
use crate::degeneration::{DegenerationWitness, Orientation, Provenance};
use crate::extensions::Cocycle;
use crate::linalg::Matrix;
use crate::obstructions::{ExternalFact, ObstructionKind};
use crate::ratfunc::{Poly, RatFunc};
use crate::scalar::{Field, Rational};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

type PResult<T> = core::result::Result<T, ParseError>;

/// One statement with the position of its first character (1-based).
#[derive(Clone, Debug)]
struct Stmt<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

impl Stmt<'_> {
    fn error(&self, offset: usize, message: impl Into<String>) -> ParseError {
        ParseError { line: self.line, column: self.column + offset, message: message.into() }
    }

    /// Splits off the first word: `(keyword, rest, offset of rest)`.
    fn keyword(&self) -> (&str, &str, usize) {
        let end = self.text.find(char::is_whitespace).unwrap_or(self.text.len());
        let rest = &self.text[end..];
        let trimmed = rest.trim_start();
        (&self.text[..end], trimmed.trim_end(), end + (rest.len() - trimmed.len()))
    }
}

fn statements(text: &str) -> Vec<Stmt<'_>> {
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        };
        let mut start = 0;
        for piece in line.split(';') {
            let lead = piece.len() - piece.trim_start().len();
            let body = piece.trim();
            if !body.is_empty() {
                out.push(Stmt { text: body, line: lineno + 1, column: line[..start].chars().count() + lead + 1 });
            }
            start += piece.len() + 1;
        }
    }
    out
}

#[derive(Clone, Debug)]
enum Value {
    Scalar(RatFunc),
    Vector(BTreeMap<usize, RatFunc>),
}

/// Recursive-descent parser for linear combinations of basis symbols with
/// coefficients in `ℚ(t)`.
struct Expr<'a> {
    stmt: &'a Stmt<'a>,
    chars: Vec<(usize, char)>,
    pos: usize,
    base: usize,
    symbol: Option<char>,
    dim: usize,
    allow_t: bool,
}

impl<'a> Expr<'a> {
    fn new(stmt: &'a Stmt<'a>, text: &str, base: usize, symbol: Option<char>, dim: usize, allow_t: bool) -> Self {
        Expr { stmt, chars: text.char_indices().collect(), pos: 0, base, symbol, dim, allow_t }
    }

    fn offset(&self) -> usize {
        self.base + self.chars.get(self.pos).map_or_else(|| self.chars.len(), |_| self.pos)
    }

    fn err<T>(&self, message: impl Into<String>) -> PResult<T> {
        Err(self.stmt.error(self.offset(), message))
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|(_, c)| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn parse_all(mut self) -> PResult<Value> {
        if self.peek().is_none() {
            return self.err("expected an expression");
        }
        let v = self.sum()?;
        if let Some(c) = self.peek() {
            return self.err(format!("unexpected `{c}`"));
        }
        Ok(v)
    }

    fn sum(&mut self) -> PResult<Value> {
        let mut acc = self.product()?;
        while let Some(op @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            let at = self.offset();
            let rhs = self.product()?;
            acc = self.combine(acc, rhs, op == '-', at)?;
        }
        Ok(acc)
    }

    fn combine(&self, a: Value, b: Value, subtract: bool, at: usize) -> PResult<Value> {
        let b = if subtract { negate(b) } else { b };
        match (a, b) {
            (Value::Scalar(x), Value::Scalar(y)) => Ok(Value::Scalar(x + y)),
            (Value::Vector(mut x), Value::Vector(y)) => {
                for (k, c) in y {
                    let s = x.remove(&k).unwrap_or_else(RatFunc::zero) + c;
                    if !s.is_zero() {
                        x.insert(k, s);
                    }
                }
                Ok(Value::Vector(x))
            }
            _ => Err(self.stmt.error(at, "cannot add a scalar and a vector")),
        }
    }

    fn product(&mut self) -> PResult<Value> {
        let mut acc = self.unary()?;
        while let Some(op @ ('*' | '/')) = self.peek() {
            self.pos += 1;
            let at = self.offset();
            let rhs = self.unary()?;
            acc = match (op, acc, rhs) {
                ('*', Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(x * y),
                ('*', Value::Scalar(x), Value::Vector(v)) | ('*', Value::Vector(v), Value::Scalar(x)) => Value::Vector(scale(v, &x)),
                ('*', _, _) => return Err(self.stmt.error(at, "product of two vectors")),
                (_, _, Value::Vector(_)) => return Err(self.stmt.error(at, "division by a vector")),
                (_, _, Value::Scalar(y)) if y.is_zero() => return Err(self.stmt.error(at, "division by zero")),
                (_, Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(x / y),
                (_, Value::Vector(v), Value::Scalar(y)) => Value::Vector(scale(v, &y.inv())),
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> PResult<Value> {
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                Ok(negate(self.unary()?))
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> PResult<Value> {
        let base = self.atom()?;
        if self.peek() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        let paren = self.peek() == Some('(');
        if paren {
            self.pos += 1;
        }
        let neg = self.peek() == Some('-');
        if neg {
            self.pos += 1;
        }
        self.skip_ws();
        let Some(e) = self.digits() else {
            return self.err("expected an integer exponent");
        };
        if paren {
            if self.peek() != Some(')') {
                return self.err("expected `)`");
            }
            self.pos += 1;
        }
        let Value::Scalar(b) = base else {
            return self.err("cannot raise a vector to a power");
        };
        if neg && b.is_zero() {
            return self.err("division by zero");
        }
        let mut out = RatFunc::one();
        for _ in 0..e {
            out = out * b.clone();
        }
        Ok(Value::Scalar(if neg { out.inv() } else { out }))
    }

    fn digits(&mut self) -> Option<u64> {
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|(_, c)| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        let s: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
        s.parse().ok()
    }

    fn atom(&mut self) -> PResult<Value> {
        let Some(c) = self.peek() else {
            return self.err("unexpected end of expression");
        };
        if c == '(' {
            self.pos += 1;
            let v = self.sum()?;
            if self.peek() != Some(')') {
                return self.err("expected `)`");
            }
            self.pos += 1;
            return Ok(v);
        }
        if c.is_ascii_digit() {
            let start = self.pos;
            while self.chars.get(self.pos).is_some_and(|(_, c)| c.is_ascii_digit()) {
                self.pos += 1;
            }
            let s: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
            let n: num_bigint::BigInt = s.parse().expect("digits");
            return Ok(Value::Scalar(RatFunc::constant(Rational::from_integer(n))));
        }
        if c == 't' && !self.chars.get(self.pos + 1).is_some_and(|(_, c)| c.is_ascii_alphanumeric()) {
            if !self.allow_t {
                return self.err("the parameter t is not allowed here");
            }
            self.pos += 1;
            return Ok(Value::Scalar(RatFunc::t()));
        }
        if Some(c) == self.symbol {
            let at = self.offset();
            self.pos += 1;
            let Some(k) = self.digits() else {
                return self.err(format!("expected an index after `{c}`"));
            };
            let k = k as usize;
            if k == 0 || k > self.dim {
                return Err(self.stmt.error(at, format!("index {c}{k} out of range 1..={}", self.dim)));
            }
            let mut v = BTreeMap::new();
            v.insert(k - 1, RatFunc::one());
            return Ok(Value::Vector(v));
        }
        self.err(format!("unexpected `{c}`"))
    }
}

fn negate(v: Value) -> Value {
    match v {
        Value::Scalar(x) => Value::Scalar(-x),
        Value::Vector(v) => Value::Vector(v.into_iter().map(|(k, c)| (k, -c)).collect()),
    }
}

fn scale(v: BTreeMap<usize, RatFunc>, x: &RatFunc) -> BTreeMap<usize, RatFunc> {
    if x.is_zero() {
        return BTreeMap::new();
    }
    v.into_iter().map(|(k, c)| (k, c * x.clone())).collect()
}

fn expect_vector(stmt: &Stmt<'_>, at: usize, v: Value) -> PResult<BTreeMap<usize, RatFunc>> {
    match v {
        Value::Vector(v) => Ok(v),
        Value::Scalar(x) if x.is_zero() => Ok(BTreeMap::new()),
        Value::Scalar(_) => Err(stmt.error(at, "expected a combination of basis vectors")),
    }
}

fn constant_vector(stmt: &Stmt<'_>, at: usize, v: BTreeMap<usize, RatFunc>) -> PResult<SparseVector> {
    v.into_iter()
        .map(|(k, c)| c.as_constant().map(|q| (k, q)).ok_or_else(|| stmt.error(at, "coefficient must be a constant")))
        .collect()
}

/// Parses a rational function of `t`, e.g. `(t^2+1)/(t+1)`.
pub fn parse_ratfunc(text: &str) -> PResult<RatFunc> {
    let stmt = Stmt { text, line: 1, column: 1 };
    match Expr::new(&stmt, text, 0, None, 0, true).parse_all()? {
        Value::Scalar(x) => Ok(x),
        Value::Vector(_) => unreachable!("no vector symbol in scope"),
    }
}

/// Parses a rational number such as `-3/4`.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let stmt = Stmt { text, line: 1, column: 1 };
    match Expr::new(&stmt, text, 0, None, 0, false).parse_all().ok()? {
        Value::Scalar(x) => x.as_constant(),
        Value::Vector(_) => None,
    }
}

fn parse_usize(stmt: &Stmt<'_>, text: &str, at: usize, what: &str) -> PResult<usize> {
    text.parse().map_err(|_| stmt.error(at, format!("expected {what}, found `{text}`")))
}

/// `[i,j]` or `b[i,j]` at the start of `text`: returns 1-based `(i, j)` and the
/// offset just past `=`.
fn bracket_lhs(stmt: &Stmt<'_>, prefix: &str) -> PResult<(usize, usize, usize)> {
    let text = stmt.text;
    let open = prefix.len();
    let close = text.find(']').ok_or_else(|| stmt.error(0, "expected `]`"))?;
    let inner = &text[open + 1..close];
    let mut parts = inner.split(',');
    let (Some(a), Some(b), None) = (parts.next(), parts.next(), parts.next()) else {
        return Err(stmt.error(open, "expected `[i,j]`"));
    };
    let i = parse_usize(stmt, a.trim(), open + 1, "an index")?;
    let j = parse_usize(stmt, b.trim(), open + 2 + a.len(), "an index")?;
    let after = &text[close + 1..];
    let eq = after.find('=').ok_or_else(|| stmt.error(close + 1, "expected `=`"))?;
    if !after[..eq].trim().is_empty() {
        return Err(stmt.error(close + 1, "expected `=`"));
    }
    Ok((i, j, close + 1 + eq + 1))
}

/// An algebra file together with the optional catalog metadata.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraFile {
    pub algebra: LieAlgebra,
    pub orbit_dim: Option<usize>,
    pub label: Option<String>,
}

impl AlgebraFile {
    pub fn into_catalog_entry(self) -> crate::error::Result<CatalogEntry> {
        let orbit_dim = self.orbit_dim.ok_or_else(|| crate::error::Error::UnknownAlgebra(format!("{} has no orbit line", self.algebra.name())))?;
        Ok(CatalogEntry { label: self.label.unwrap_or_else(|| self.algebra.name().into()), algebra: self.algebra, orbit_dim })
    }
}

/// Parses `name`, `label`, `dim`, `orbit` and `[i,j] = ...` statements.
pub fn parse_algebra_file(text: &str) -> PResult<AlgebraFile> {
    let mut name = String::new();
    let mut dim: Option<usize> = None;
    let mut orbit = None;
    let mut label = None;
    let mut seen: BTreeMap<(usize, usize), ()> = BTreeMap::new();
    let mut brackets: Vec<(usize, usize, SparseVector)> = Vec::new();
    for stmt in statements(text) {
        if stmt.text.starts_with('[') {
            let n = dim.ok_or_else(|| stmt.error(0, "`dim` must come before brackets"))?;
            let (i, j, rhs) = bracket_lhs(&stmt, "")?;
            for idx in [i, j] {
                if idx == 0 || idx > n {
                    return Err(stmt.error(1, format!("index {idx} out of range 1..={n}")));
                }
            }
            if i == j {
                return Err(stmt.error(0, format!("bracket of e{i} with itself")));
            }
            let key = (i.min(j), i.max(j));
            if seen.insert(key, ()).is_some() {
                return Err(stmt.error(0, format!("bracket [{},{}] given twice", key.0, key.1)));
            }
            let v = Expr::new(&stmt, &stmt.text[rhs..], rhs, Some('e'), n, false).parse_all()?;
            let v = expect_vector(&stmt, rhs, v)?;
            brackets.push((i - 1, j - 1, constant_vector(&stmt, rhs, v)?));
            continue;
        }
        let (kw, rest, at) = stmt.keyword();
        match kw {
            "name" => name = rest.into(),
            "label" => label = Some(rest.into()),
            "dim" => {
                let n = parse_usize(&stmt, rest, at, "a dimension")?;
                if n == 0 {
                    return Err(stmt.error(at, "dimension must be positive"));
                }
                dim = Some(n);
            }
            "orbit" => orbit = Some(parse_usize(&stmt, rest, at, "an orbit dimension")?),
            _ => return Err(stmt.error(0, format!("unknown statement `{kw}`"))),
        }
    }
    let dim = dim.ok_or(ParseError { line: 1, column: 1, message: "missing `dim`".into() })?;
    let mut algebra = LieAlgebra::new(name, dim);
    for (i, j, v) in brackets {
        algebra.insert_bracket(i, j, v).expect("indices checked while parsing");
    }
    Ok(AlgebraFile { algebra, orbit_dim: orbit, label })
}

pub fn parse_algebra(text: &str) -> PResult<LieAlgebra> {
    parse_algebra_file(text).map(|f| f.algebra)
}

fn write_term(out: &mut String, first: bool, c: &Rational, sym: &str) {
    let neg = c.is_negative();
    let abs = c.abs();
    match (first, neg) {
        (true, true) => out.push('-'),
        (true, false) => {}
        (false, true) => out.push_str(" - "),
        (false, false) => out.push_str(" + "),
    }
    if !abs.is_one() {
        out.push_str(&abs.to_string());
        out.push('*');
    }
    out.push_str(sym);
}

fn render_vector(v: &SparseVector, symbol: char) -> String {
    let mut s = String::new();
    for (n, (k, c)) in v.iter().enumerate() {
        write_term(&mut s, n == 0, c, &format!("{symbol}{}", k + 1));
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

pub fn render_algebra(a: &LieAlgebra, orbit_dim: Option<usize>, label: Option<&str>) -> String {
    let mut s = String::new();
    if !a.name().is_empty() {
        s.push_str(&format!("name {}\n", a.name()));
    }
    if let Some(l) = label {
        s.push_str(&format!("label {l}\n"));
    }
    s.push_str(&format!("dim {}\n", a.dim()));
    if let Some(o) = orbit_dim {
        s.push_str(&format!("orbit {o}\n"));
    }
    for (&(i, j), v) in a.brackets() {
        s.push_str(&format!("[{},{}] = {}\n", i + 1, j + 1, render_vector(v, 'e')));
    }
    s
}

pub fn render_entry(e: &CatalogEntry) -> String {
    render_algebra(&e.algebra, Some(e.orbit_dim), Some(&e.label))
}

/// Structure constants depending on `t`: an algebra file whose coefficients
/// may be rational functions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Family {
    pub name: String,
    pub dim: usize,
    /// 0-based `(i, j)` with `i < j`, mapped to sparse coefficients.
    pub brackets: BTreeMap<(usize, usize), BTreeMap<usize, RatFunc>>,
}

pub fn parse_family(text: &str) -> PResult<Family> {
    let mut name = String::new();
    let mut dim = None;
    let mut brackets = BTreeMap::new();
    for stmt in statements(text) {
        if stmt.text.starts_with('[') {
            let n = dim.ok_or_else(|| stmt.error(0, "`dim` must come before brackets"))?;
            let (i, j, rhs) = bracket_lhs(&stmt, "")?;
            for idx in [i, j] {
                if idx == 0 || idx > n {
                    return Err(stmt.error(1, format!("index {idx} out of range 1..={n}")));
                }
            }
            if i == j {
                return Err(stmt.error(0, format!("bracket of e{i} with itself")));
            }
            let v = Expr::new(&stmt, &stmt.text[rhs..], rhs, Some('e'), n, true).parse_all()?;
            let mut v = expect_vector(&stmt, rhs, v)?;
            if i > j {
                v = v.into_iter().map(|(k, c)| (k, -c)).collect();
            }
            let key = (i.min(j) - 1, i.max(j) - 1);
            if brackets.insert(key, v).is_some() {
                return Err(stmt.error(0, format!("bracket [{},{}] given twice", key.0 + 1, key.1 + 1)));
            }
            continue;
        }
        let (kw, rest, at) = stmt.keyword();
        match kw {
            "name" => name = rest.into(),
            "dim" => dim = Some(parse_usize(&stmt, rest, at, "a dimension")?),
            _ => return Err(stmt.error(0, format!("unknown statement `{kw}`"))),
        }
    }
    brackets.retain(|_, v: &mut BTreeMap<usize, RatFunc>| !v.is_empty());
    Ok(Family { name, dim: required(dim, "dim")?, brackets })
}

/// Brackets `(i, j)` where `family` and the dense constants `consts` differ.
pub fn family_mismatches(family: &Family, consts: &BTreeMap<(usize, usize), Vec<RatFunc>>) -> Vec<(usize, usize)> {
    let mut keys: Vec<(usize, usize)> = family.brackets.keys().chain(consts.keys()).copied().collect();
    keys.sort();
    keys.dedup();
    keys.into_iter()
        .filter(|key| {
            let expected = family.brackets.get(key);
            let got = consts.get(key);
            (0..family.dim).any(|k| {
                let e = expected.and_then(|v| v.get(&k)).cloned().unwrap_or_else(RatFunc::zero);
                let g = got.and_then(|v| v.get(k)).cloned().unwrap_or_else(RatFunc::zero);
                e != g
            })
        })
        .collect()
}

/// Parses `rows` statements of whitespace-separated rationals.
fn matrix_rows(stmts: &[Stmt<'_>], n: usize) -> PResult<Matrix<Rational>> {
    let mut rows = Vec::new();
    for stmt in stmts {
        let mut row = Vec::new();
        let mut offset = 0;
        for tok in stmt.text.split_whitespace() {
            let at = stmt.text[offset..].find(tok).map_or(offset, |p| p + offset);
            offset = at + tok.len();
            row.push(parse_rational(tok).ok_or_else(|| stmt.error(at, format!("expected a rational, found `{tok}`")))?);
        }
        if row.len() != n {
            return Err(stmt.error(0, format!("expected {n} entries, found {}", row.len())));
        }
        rows.push(row);
    }
    Ok(Matrix::from_rows(rows).unwrap_or_else(|| Matrix::zeros(0, n)))
}

/// Columns `y<i> = ...` of a basis change; unlisted columns are `e_i`.
fn basis_columns(stmts: &[Stmt<'_>], n: usize, allow_t: bool) -> PResult<Matrix<RatFunc>> {
    let mut m = Matrix::from_fn(n, n, |r, c| if r == c { RatFunc::one() } else { RatFunc::zero() });
    let mut seen = BTreeMap::new();
    for stmt in stmts {
        let eq = stmt.text.find('=').ok_or_else(|| stmt.error(0, "expected `y<i> = ...`"))?;
        let lhs = stmt.text[..eq].trim();
        let idx = lhs.strip_prefix('y').ok_or_else(|| stmt.error(0, "expected `y<i> = ...`"))?;
        let i = parse_usize(stmt, idx, 1, "an index")?;
        if i == 0 || i > n {
            return Err(stmt.error(1, format!("index y{i} out of range 1..={n}")));
        }
        if seen.insert(i, ()).is_some() {
            return Err(stmt.error(0, format!("y{i} given twice")));
        }
        let v = Expr::new(stmt, &stmt.text[eq + 1..], eq + 1, Some('e'), n, allow_t).parse_all()?;
        let v = expect_vector(stmt, eq + 1, v)?;
        for r in 0..n {
            m[(r, i - 1)] = v.get(&r).cloned().unwrap_or_else(RatFunc::zero);
        }
    }
    Ok(m)
}

/// Header fields shared by witness and isomorphism files.
#[derive(Default)]
struct Header {
    source: Option<String>,
    target: Option<String>,
    dim: Option<usize>,
    orientation: Option<Orientation>,
    provenance: Option<Provenance>,
}

/// Splits statements into header fields, `y` columns and an optional trailing
/// `postiso` block.
fn split_sections<'a>(text: &'a str, allow_witness_fields: bool) -> PResult<(Header, Vec<Stmt<'a>>, Option<(Stmt<'a>, Vec<Stmt<'a>>)>)> {
    let mut h = Header::default();
    let mut cols = Vec::new();
    let mut post: Option<(Stmt<'a>, Vec<Stmt<'a>>)> = None;
    for stmt in statements(text) {
        if let Some((_, rows)) = post.as_mut() {
            rows.push(stmt);
            continue;
        }
        if stmt.text.starts_with('y') && stmt.text.contains('=') {
            cols.push(stmt);
            continue;
        }
        let (kw, rest, at) = stmt.keyword();
        match kw {
            "source" => h.source = Some(rest.into()),
            "target" => h.target = Some(rest.into()),
            "dim" => h.dim = Some(parse_usize(&stmt, rest, at, "a dimension")?),
            "orientation" if allow_witness_fields => {
                h.orientation = Some(match rest {
                    "substitution" => Orientation::Substitution,
                    "operator" => Orientation::Operator,
                    _ => return Err(stmt.error(at, "orientation must be `substitution` or `operator`")),
                })
            }
            "provenance" if allow_witness_fields => {
                h.provenance = Some(match rest {
                    "published" => Provenance::Published,
                    "derived" => Provenance::Derived,
                    _ => return Err(stmt.error(at, "provenance must be `published` or `derived`")),
                })
            }
            "postiso" if allow_witness_fields && rest.is_empty() => post = Some((stmt.clone(), Vec::new())),
            _ => return Err(stmt.error(0, format!("unknown statement `{kw}`"))),
        }
    }
    Ok((h, cols, post))
}

fn required<T>(v: Option<T>, what: &str) -> PResult<T> {
    v.ok_or_else(|| ParseError { line: 1, column: 1, message: format!("missing `{what}`") })
}

/// Witness file: `source`, `target`, `orientation`, `provenance`, optional
/// `dim` (default 8), `y<i> = ...` columns and an optional `postiso` block of
/// matrix rows.
pub fn parse_witness(text: &str) -> PResult<DegenerationWitness> {
    let (h, cols, post) = split_sections(text, true)?;
    let n = h.dim.unwrap_or(8);
    let m = basis_columns(&cols, n, true)?;
    let source = required(h.source, "source")?;
    let target = required(h.target, "target")?;
    let orientation = required(h.orientation, "orientation")?;
    let provenance = h.provenance.unwrap_or(Provenance::Derived);
    let at = cols.first().map_or((1, 1), |s| (s.line, s.column));
    let singular = || ParseError { line: at.0, column: at.1, message: "witness matrix is singular".into() };
    let mut w = DegenerationWitness::new(source, target, orientation, provenance, m).map_err(|_| singular())?;
    if let Some((head, rows)) = post {
        let p = matrix_rows(&rows, n)?;
        if p.rows() != n {
            return Err(head.error(0, format!("postiso needs {n} rows, found {}", p.rows())));
        }
        w = w.with_postiso(p).map_err(|_| head.error(0, "postiso matrix is singular"))?;
    }
    Ok(w)
}

fn render_ratfunc_coeff(out: &mut String, first: bool, c: &RatFunc, sym: &str) {
    if let Some(q) = c.as_constant() {
        write_term(out, first, &q, sym);
        return;
    }
    if !first {
        out.push_str(" + ");
    }
    out.push_str(&format!("({c})*{sym}"));
}

pub fn render_witness(w: &DegenerationWitness) -> String {
    let n = w.dim();
    let mut s = format!("source {}\ntarget {}\n", w.source, w.target);
    s.push_str(match w.orientation {
        Orientation::Substitution => "orientation substitution\n",
        Orientation::Operator => "orientation operator\n",
    });
    s.push_str(match w.provenance {
        Provenance::Published => "provenance published\n",
        Provenance::Derived => "provenance derived\n",
    });
    if n != 8 {
        s.push_str(&format!("dim {n}\n"));
    }
    let m = w.matrix();
    for c in 0..n {
        let is_unit = (0..n).all(|r| if r == c { m[(r, c)].is_one() } else { m[(r, c)].is_zero() });
        if is_unit {
            continue;
        }
        let mut line = String::new();
        let mut first = true;
        for r in 0..n {
            if m[(r, c)].is_zero() {
                continue;
            }
            render_ratfunc_coeff(&mut line, first, &m[(r, c)], &format!("e{}", r + 1));
            first = false;
        }
        s.push_str(&format!("y{} = {line}\n", c + 1));
    }
    if let Some(p) = w.postiso() {
        s.push_str("postiso\n");
        for r in 0..n {
            let row: Vec<String> = (0..n).map(|c| p[(r, c)].to_string()).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
    }
    s
}

/// An explicit isomorphism: the source algebra rewritten in the basis given by
/// the columns of `matrix` has exactly the target's constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoWitness {
    pub source: String,
    pub target: String,
    pub matrix: Matrix<Rational>,
}

impl IsoWitness {
    pub fn check(&self, source: &LieAlgebra, target: &LieAlgebra) -> crate::error::Result<bool> {
        let g = crate::algebra::BasisChange::new(self.matrix.clone())?.inverted();
        source.is_isomorphic_via(target, &g)
    }
}

/// Isomorphism file: `source`, `target`, optional `dim`, and `y<i> = ...`
/// columns with constant coefficients.
pub fn parse_iso(text: &str) -> PResult<IsoWitness> {
    let (h, cols, _) = split_sections(text, false)?;
    let n = h.dim.unwrap_or(8);
    let m = basis_columns(&cols, n, false)?;
    let matrix = m.map(|c| c.as_constant().expect("t is rejected while parsing"));
    if matrix.inverse().is_none() {
        return Err(ParseError { line: 1, column: 1, message: "isomorphism matrix is singular".into() });
    }
    Ok(IsoWitness { source: required(h.source, "source")?, target: required(h.target, "target")?, matrix })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleFile {
    pub name: String,
    /// Name of the algebra the cocycle lives on, if given.
    pub base: Option<String>,
    pub cocycle: Cocycle,
}

/// Cocycle file: `name`, optional `base`, `dim`, `rank` and
/// `b[i,j] = c*z<s> + ...` statements.
pub fn parse_cocycle(text: &str) -> PResult<CocycleFile> {
    let mut name = String::new();
    let mut base = None;
    let mut dim = None;
    let mut rank = None;
    let mut b: Option<Cocycle> = None;
    let mut seen = BTreeMap::new();
    for stmt in statements(text) {
        if stmt.text.starts_with("b[") {
            let (Some(n), Some(r)) = (dim, rank) else {
                return Err(stmt.error(0, "`dim` and `rank` must come before values"));
            };
            let b = b.get_or_insert_with(|| Cocycle::zero(n, r));
            let (i, j, rhs) = bracket_lhs(&stmt, "b")?;
            for idx in [i, j] {
                if idx == 0 || idx > n {
                    return Err(stmt.error(2, format!("index {idx} out of range 1..={n}")));
                }
            }
            if i == j {
                return Err(stmt.error(0, format!("b(e{i}, e{i}) is zero by skew-symmetry")));
            }
            if seen.insert((i.min(j), i.max(j)), ()).is_some() {
                return Err(stmt.error(0, format!("b[{},{}] given twice", i.min(j), i.max(j))));
            }
            let v = Expr::new(&stmt, &stmt.text[rhs..], rhs, Some('z'), r, false).parse_all()?;
            let v = constant_vector(&stmt, rhs, expect_vector(&stmt, rhs, v)?)?;
            for (s, c) in v {
                b.add(i - 1, j - 1, s, c).expect("indices checked while parsing");
            }
            continue;
        }
        let (kw, rest, at) = stmt.keyword();
        match kw {
            "name" => name = rest.into(),
            "base" => base = Some(rest.into()),
            "dim" => dim = Some(parse_usize(&stmt, rest, at, "a dimension")?),
            "rank" => rank = Some(parse_usize(&stmt, rest, at, "a rank")?),
            _ => return Err(stmt.error(0, format!("unknown statement `{kw}`"))),
        }
    }
    let n = required(dim, "dim")?;
    let r = required(rank, "rank")?;
    Ok(CocycleFile { name, base, cocycle: b.unwrap_or_else(|| Cocycle::zero(n, r)) })
}

pub fn render_cocycle(name: &str, b: &Cocycle) -> String {
    let mut s = format!("name {name}\ndim {}\nrank {}\n", b.dim(), b.rank());
    for (&(i, j), v) in b.entries() {
        s.push_str(&format!("b[{},{}] = {}\n", i + 1, j + 1, render_vector(v, 'z')));
    }
    s
}

/// Lines `nondeg <g> <h> "<citation>"`.
pub fn parse_external_facts(text: &str) -> PResult<Vec<ExternalFact>> {
    let mut out = Vec::new();
    for stmt in statements(text) {
        let (kw, rest, at) = stmt.keyword();
        if kw != "nondeg" {
            return Err(stmt.error(0, format!("unknown statement `{kw}`")));
        }
        let quote = rest.find('"').ok_or_else(|| stmt.error(at, "expected a quoted citation"))?;
        let names: Vec<&str> = rest[..quote].split_whitespace().collect();
        if names.len() != 2 {
            return Err(stmt.error(at, "expected `nondeg <g> <h> \"citation\"`"));
        }
        let cited = &rest[quote + 1..];
        let end = cited.rfind('"').ok_or_else(|| stmt.error(at + quote, "unterminated citation"))?;
        if !cited[end + 1..].trim().is_empty() {
            return Err(stmt.error(at + quote + end + 2, "trailing text after citation"));
        }
        out.push(ExternalFact { source: names[0].into(), target: names[1].into(), citation: cited[..end].into() });
    }
    Ok(out)
}

pub fn render_external_facts(facts: &[ExternalFact]) -> String {
    facts.iter().map(|f| format!("nondeg {} {} \"{}\"\n", f.source, f.target, f.citation)).collect()
}

/// How a listed non-degeneration is justified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ListedReason {
    Invariant(ObstructionKind),
    Set(SetId),
    Other(String),
}

impl fmt::Display for ListedReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ListedReason::Invariant(k) => write!(f, "{}", k.code()),
            ListedReason::Set(s) => write!(f, "{s}"),
            ListedReason::Other(s) => write!(f, "{s}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ListedPair {
    pub source: String,
    pub target: String,
    pub reason: ListedReason,
}

/// Lines `<g> <h> <reason>` where the reason is an invariant code (`b`, `c`,
/// `d2`, …, `e`), a set name (`S1`–`S4`) or any other word.
pub fn parse_listed_pairs(text: &str) -> PResult<Vec<ListedPair>> {
    let mut out = Vec::new();
    for stmt in statements(text) {
        let words: Vec<&str> = stmt.text.split_whitespace().collect();
        let [g, h, r] = words[..] else {
            return Err(stmt.error(0, "expected `<source> <target> <reason>`"));
        };
        let reason = match (ObstructionKind::from_code(r), SetId::parse(r)) {
            (Some(k), _) => ListedReason::Invariant(k),
            (None, Some(s)) => ListedReason::Set(s),
            _ => ListedReason::Other(r.into()),
        };
        out.push(ListedPair { source: g.into(), target: h.into(), reason });
    }
    Ok(out)
}

/// Builds a polynomial coefficient list, mainly for callers assembling
/// witnesses programmatically.
pub fn poly(coeffs: &[i64]) -> Poly {
    Poly::new(coeffs.iter().map(|&c| Rational::from_i64(c)).collect())
}
