//! A line-oriented catalog of reference maps, expected invariants, dessin
//! counts, and differential-equation solutions, with a driver that replays
//! every expectation against the library.
//!
//! # Format
//!
//! A catalog is plain text. `#` starts a full-line comment; blank lines
//! separate entries. An entry is a list of `key : value` lines, starting with
//! `id`. Keys:
//!
//! - `id`, `kind`, `label`, `ref`: free-form strings (`ref` is a source
//!   locator, `kind` one of `genus0-map`, `q-correspondence-expectation`,
//!   `dessin-count`, `painleve-solution`, `negative-case`);
//! - `field <g> : <monic polynomial in g>`: the coefficient field, a number
//!   field with generator `g` (entries without it work over the rationals);
//! - `map : <P> / <Q>`: a rational map; the split is at the first ` / ` that
//!   is outside parentheses (written with spaces, unlike tight coefficient
//!   fractions such as `11/49`);
//! - `passport : [a / b / c]`, `genus1-passport`, `count : <n>`;
//! - `expect : verify | fail <ErrorName> | flagged-inconsistent`;
//! - `expect-j : <rational expression>`: exact j-invariant of the curve cut
//!   out by the correspondence;
//! - `expect-d : <polynomial>`: the monic squarefree radicand;
//! - `expect-curve : <polynomial>`: a curve the radicand must agree with up
//!   to isomorphism (j-invariants are compared);
//! - `expect-phi1`, `claimed-phi1 : <rational expression>`: the degenerate
//!   rational correspondence, respectively a published-but-wrong version of
//!   it (the flag is reproduced when the claim matches neither branch);
//! - `curve : <polynomial>`, `q`, `t : <expressions in the variable and w>`,
//!   `inner-q`, `inner-t : <rational expressions>`, `params : <4 rationals>`:
//!   a solution on `w^2 = curve`; when `q` is omitted it is reconstructed
//!   from `inner-q` (positive branch);
//! - `dual-curve`, `dual-t`, `dual-inner-t`, `dual-j`: the same solution's
//!   time variable through the dual parametrization, on its own curve.
//!
//! Expressions use integer literals, `+ - * / ^ ( )`, juxtaposition for
//! multiplication, and `^` with a nonnegative integer exponent binding
//! tighter than unary minus. Exactly one free variable is allowed besides
//! the field generator and `w`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::belyi::{verify_belyi, BelyiError};
use crate::curve::{j_invariant, same_j};
use crate::dessin::enumerate_dessins;
use crate::field::{AlgebraicNumber, Field, Rat};
use crate::painleve::{
    pvi_residual, qform_on_curve, verify_qform, AlgebraicSolution, PviParams,
};
use crate::passport::Passport;
use crate::poly::UniPoly;
use crate::qcorr::{q_correspond, QcorrError};
use crate::quadext::QuadExtElement;
use crate::ratfun::RationalFunction;

/// The catalog shipped with the crate.
pub const BUILTIN_CATALOG: &str = include_str!("../corpus/catalog.qbc");

#[derive(Debug, thiserror::Error)]
pub enum CorpusError {
    #[error("line {line}, column {col}: {msg}")]
    ParseError { line: usize, col: usize, msg: String },
    #[error("unknown generator `{name}`")]
    UnknownGenerator { name: String },
    #[error("generator power {power} is not reduced modulo the field degree {degree}")]
    DegreeMismatch { power: usize, degree: usize },
}

const KNOWN_KEYS: &[&str] = &[
    "id",
    "kind",
    "label",
    "ref",
    "map",
    "passport",
    "genus1-passport",
    "count",
    "expect",
    "expect-j",
    "expect-d",
    "expect-curve",
    "expect-phi1",
    "claimed-phi1",
    "curve",
    "q",
    "t",
    "inner-q",
    "inner-t",
    "params",
    "dual-curve",
    "dual-t",
    "dual-inner-t",
    "dual-j",
];

/// One catalog entry: ordered `(source line, key, value)` triples. Equality
/// ignores the source line numbers.
#[derive(Debug, Clone)]
pub struct CorpusEntry {
    lines: Vec<(usize, String, String)>,
}

impl PartialEq for CorpusEntry {
    fn eq(&self, other: &Self) -> bool {
        self.lines.len() == other.lines.len()
            && self
                .lines
                .iter()
                .zip(&other.lines)
                .all(|((_, k, v), (_, k2, v2))| k == k2 && v == v2)
    }
}

impl Eq for CorpusEntry {}

impl CorpusEntry {
    pub fn id(&self) -> &str {
        self.get("id").unwrap_or("")
    }

    pub fn kind(&self) -> &str {
        self.get("kind").unwrap_or("")
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.lines
            .iter()
            .find(|(_, k, _)| k == key)
            .map(|(_, _, v)| v.as_str())
    }

    /// The `field <g>` declaration, as `(generator, min poly source)`.
    fn field_decl(&self) -> Option<(&str, &str)> {
        self.lines.iter().find_map(|(_, k, v)| {
            k.strip_prefix("field ").map(|g| (g.trim(), v.as_str()))
        })
    }

    fn print_into(&self, out: &mut String) {
        for (_, k, v) in &self.lines {
            out.push_str(k);
            out.push_str(" : ");
            out.push_str(v);
            out.push('\n');
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Catalog {
    entries: Vec<CorpusEntry>,
}

fn parse_entries(text: &str) -> Result<Vec<CorpusEntry>, CorpusError> {
    let mut entries = Vec::new();
    let mut current: Vec<(usize, String, String)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim();
        if line.starts_with('#') {
            continue;
        }
        if line.is_empty() {
            if !current.is_empty() {
                entries.push(CorpusEntry { lines: std::mem::take(&mut current) });
            }
            continue;
        }
        let colon = line.find(':').ok_or(CorpusError::ParseError {
            line: lineno,
            col: line.len(),
            msg: "expected `key : value`".into(),
        })?;
        let key = line[..colon].trim().to_string();
        let value = line[colon + 1..].trim().to_string();
        let known =
            KNOWN_KEYS.contains(&key.as_str()) || (key.starts_with("field ") && key.len() > 6);
        if !known {
            return Err(CorpusError::ParseError {
                line: lineno,
                col: 1,
                msg: format!("unknown key `{key}`"),
            });
        }
        current.push((lineno, key, value));
    }
    if !current.is_empty() {
        entries.push(CorpusEntry { lines: current });
    }
    Ok(entries)
}

/// Parse a standalone map file: the catalog line grammar with one entry.
/// `id`, `kind` and `expect` may be omitted here and default to the file
/// stem-ish `map-file`, `genus0-map` and `verify`; a `map` line is required.
pub fn parse_map_file(text: &str) -> Result<CorpusEntry, CorpusError> {
    let mut entries = parse_entries(text)?;
    if entries.len() != 1 {
        return Err(CorpusError::ParseError {
            line: 1,
            col: 1,
            msg: format!("a map file holds exactly one entry, found {}", entries.len()),
        });
    }
    let mut e = entries.pop().unwrap();
    if e.get("map").is_none() {
        let (line, _, _) = e.lines[0];
        return Err(CorpusError::ParseError {
            line,
            col: 1,
            msg: "a map file needs a `map` line".into(),
        });
    }
    for (key, default) in [("expect", "verify"), ("kind", "genus0-map"), ("id", "map-file")] {
        if e.get(key).is_none() {
            e.lines.insert(0, (0, key.into(), default.into()));
        }
    }
    Ok(e)
}

/// The rational function an entry's `map` line denotes, over the entry's field.
pub fn entry_phi(e: &CorpusEntry) -> Result<RationalFunction, String> {
    let field = entry_field(e)?;
    let (p_src, q_src) = split_map(e.get("map").ok_or("missing `map` line")?)?;
    let p = eval_ratfun(p_src, &field).map_err(|m| format!("map numerator: {m}"))?;
    let q = eval_ratfun(q_src, &field).map_err(|m| format!("map denominator: {m}"))?;
    p.div(&q).map_err(|err| err.to_string())
}

/// Execute one entry's expectation, as [`Catalog::run`] does per entry.
pub fn run_entry(e: &CorpusEntry) -> EntryResult {
    EntryResult {
        id: e.id().to_string(),
        kind: e.kind().to_string(),
        status: match execute(e) {
            Ok(status) => status,
            Err(msg) => EntryStatus::Failed(msg),
        },
    }
}

impl Catalog {
    pub fn parse(text: &str) -> Result<Catalog, CorpusError> {
        let entries = parse_entries(text)?;
        for e in &entries {
            let (line, key, _) = &e.lines[0];
            if key != "id" {
                return Err(CorpusError::ParseError {
                    line: *line,
                    col: 1,
                    msg: "an entry must start with `id`".into(),
                });
            }
            if e.get("kind").is_none() || e.get("expect").is_none() {
                return Err(CorpusError::ParseError {
                    line: *line,
                    col: 1,
                    msg: format!("entry `{}` needs both `kind` and `expect`", e.id()),
                });
            }
        }
        Ok(Catalog { entries })
    }

    /// The canonical text; `parse(print(parse(t)))` equals `parse(t)` and
    /// printing is idempotent after one round trip.
    pub fn print(&self) -> String {
        let mut out = String::new();
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            e.print_into(&mut out);
        }
        out
    }

    pub fn builtin() -> Catalog {
        Catalog::parse(BUILTIN_CATALOG).expect("the built-in catalog parses")
    }

    pub fn entries(&self) -> &[CorpusEntry] {
        &self.entries
    }

    /// Replay every entry whose id contains `filter` (all of them for None),
    /// in catalog order.
    pub fn run(&self, filter: Option<&str>) -> CatalogReport {
        let results = self
            .entries
            .iter()
            .filter(|e| filter.is_none_or(|f| e.id().contains(f)))
            .map(run_entry)
            .collect();
        CatalogReport { results }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EntryStatus {
    Passed,
    /// The entry records a known-inconsistent published value and the
    /// inconsistency is still observed. Distinct from `Passed` so that a
    /// regression (the flag silently turning into agreement) is visible.
    FlagReproduced,
    Failed(String),
}

#[derive(Debug, Clone)]
pub struct EntryResult {
    pub id: String,
    pub kind: String,
    pub status: EntryStatus,
}

#[derive(Debug, Clone)]
pub struct CatalogReport {
    pub results: Vec<EntryResult>,
}

impl CatalogReport {
    pub fn all_good(&self) -> bool {
        self.results
            .iter()
            .all(|r| !matches!(r.status, EntryStatus::Failed(_)))
    }

    pub fn counts(&self) -> (usize, usize, usize) {
        let mut passed = 0;
        let mut flagged = 0;
        let mut failed = 0;
        for r in &self.results {
            match r.status {
                EntryStatus::Passed => passed += 1,
                EntryStatus::FlagReproduced => flagged += 1,
                EntryStatus::Failed(_) => failed += 1,
            }
        }
        (passed, flagged, failed)
    }
}

impl fmt::Display for CatalogReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.results {
            match &r.status {
                EntryStatus::Passed => writeln!(f, "ok      {} [{}]", r.id, r.kind)?,
                EntryStatus::FlagReproduced => {
                    writeln!(f, "flagged {} [{}] inconsistency reproduced", r.id, r.kind)?
                }
                EntryStatus::Failed(msg) => writeln!(f, "FAIL    {} [{}]: {}", r.id, r.kind, msg)?,
            }
        }
        let (p, fl, fa) = self.counts();
        write!(f, "{p} passed, {fl} flagged, {fa} failed")
    }
}

// ---------------------------------------------------------------------------
// expressions

#[derive(Debug, Clone)]
enum Expr {
    Int(BigInt),
    Sym(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, usize),
}

struct ExprParser<'a> {
    src: &'a [u8],
    pos: usize,
}

type ExprError = (usize, String);

impl<'a> ExprParser<'a> {
    fn new(src: &'a str) -> Self {
        ExprParser { src: src.as_bytes(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err<T>(&self, msg: &str) -> Result<T, ExprError> {
        Err((self.pos + 1, msg.to_string()))
    }

    fn parse(mut self) -> Result<Expr, ExprError> {
        let e = self.expr()?;
        if self.peek().is_some() {
            return self.err("trailing input");
        }
        Ok(e)
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
                }
                b'-' => {
                    self.pos += 1;
                    acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut acc = self.unary()?;
        while let Some(c) = self.peek() {
            match c {
                b'*' => {
                    self.pos += 1;
                    acc = Expr::Mul(Box::new(acc), Box::new(self.unary()?));
                }
                b'/' => {
                    self.pos += 1;
                    acc = Expr::Div(Box::new(acc), Box::new(self.unary()?));
                }
                // juxtaposition
                b'(' => acc = Expr::Mul(Box::new(acc), Box::new(self.unary()?)),
                c if c.is_ascii_alphanumeric() => {
                    acc = Expr::Mul(Box::new(acc), Box::new(self.unary()?))
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Expr, ExprError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ExprError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            match self.atom()? {
                Expr::Int(n) if !n.is_negative() => {
                    let e = usize::try_from(&n).map_err(|_| {
                        (self.pos, "exponent out of range".to_string())
                    })?;
                    return Ok(Expr::Pow(Box::new(base), e));
                }
                _ => return self.err("exponent must be a nonnegative integer"),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ExprError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected `)`");
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                Ok(Expr::Int(text.parse().unwrap()))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                Ok(Expr::Sym(text.to_string()))
            }
            _ => self.err("expected a number, a symbol, or `(`"),
        }
    }
}

/// Evaluation environment: the field, its generator name, and the single
/// free variable (discovered on first use).
struct EvalCtx<'f> {
    field: &'f Field,
    var: Option<String>,
    allow_w: Option<UniPoly>,
}

impl<'f> EvalCtx<'f> {
    fn new(field: &'f Field) -> Self {
        EvalCtx { field, var: None, allow_w: None }
    }

    fn with_w(field: &'f Field, modulus: UniPoly) -> Self {
        EvalCtx { field, var: None, allow_w: Some(modulus) }
    }

    fn generator_power(&self, name: &str, power: usize) -> Result<bool, String> {
        if Some(name) != self.field.generator_name() {
            return Ok(false);
        }
        if power >= self.field.degree() {
            return Err(CorpusError::DegreeMismatch {
                power,
                degree: self.field.degree(),
            }
            .to_string());
        }
        Ok(true)
    }

    fn sym(&mut self, name: &str) -> Result<RationalFunction, String> {
        if name == "w" {
            return Err("`w` is reserved for the curve square root".into());
        }
        if Some(name) == self.field.generator_name() {
            let g = self.field.generator().expect("extension fields have a generator");
            return Ok(RationalFunction::constant(g));
        }
        match &self.var {
            Some(v) if v == name => Ok(RationalFunction::x(self.field)),
            Some(_) => Err(CorpusError::UnknownGenerator { name: name.into() }.to_string()),
            None => {
                self.var = Some(name.to_string());
                Ok(RationalFunction::x(self.field))
            }
        }
    }

    fn eval(&mut self, e: &Expr) -> Result<RationalFunction, String> {
        let rf = |r: Result<RationalFunction, crate::poly::PolyError>| r.map_err(|e| e.to_string());
        match e {
            Expr::Int(n) => Ok(RationalFunction::constant(
                self.field.from_rat(Rat::from(n.clone())),
            )),
            Expr::Sym(s) => self.sym(s),
            Expr::Neg(a) => Ok(self.eval(a)?.neg()),
            Expr::Add(a, b) => rf(self.eval(a)?.add(&self.eval(b)?)),
            Expr::Sub(a, b) => rf(self.eval(a)?.sub(&self.eval(b)?)),
            Expr::Mul(a, b) => rf(self.eval(a)?.mul(&self.eval(b)?)),
            Expr::Div(a, b) => rf(self.eval(a)?.div(&self.eval(b)?)),
            Expr::Pow(a, k) => {
                if let Expr::Sym(s) = a.as_ref() {
                    self.generator_power(s, *k)?;
                }
                rf(self.eval(a)?.pow(*k as i64))
            }
        }
    }

    /// Like `eval`, but in the quadratic extension by `w` over the modulus.
    fn eval_w(&mut self, e: &Expr) -> Result<QuadExtElement, String> {
        let modulus = self.allow_w.clone().expect("eval_w needs a modulus");
        let lift = |r: RationalFunction| {
            QuadExtElement::from_ratfun(r, modulus.clone()).map_err(|e| e.to_string())
        };
        let qe = |r: Result<QuadExtElement, crate::quadext::QuadExtError>| {
            r.map_err(|e| e.to_string())
        };
        match e {
            Expr::Sym(s) if s == "w" => qe(QuadExtElement::w(modulus.clone())),
            Expr::Neg(a) => Ok(self.eval_w(a)?.neg()),
            Expr::Add(a, b) => qe(self.eval_w(a)?.add(&self.eval_w(b)?)),
            Expr::Sub(a, b) => qe(self.eval_w(a)?.sub(&self.eval_w(b)?)),
            Expr::Mul(a, b) => qe(self.eval_w(a)?.mul(&self.eval_w(b)?)),
            Expr::Div(a, b) => qe(self.eval_w(a)?.div(&self.eval_w(b)?)),
            Expr::Pow(a, k) => {
                if let Expr::Sym(s) = a.as_ref() {
                    self.generator_power(s, *k)?;
                }
                qe(self.eval_w(a)?.pow(*k as i64))
            }
            Expr::Int(_) | Expr::Sym(_) => lift(self.eval(e)?),
        }
    }
}

fn parse_expr(src: &str) -> Result<Expr, String> {
    ExprParser::new(src)
        .parse()
        .map_err(|(col, msg)| format!("column {col}: {msg}"))
}

fn eval_ratfun(src: &str, field: &Field) -> Result<RationalFunction, String> {
    let expr = parse_expr(src)?;
    EvalCtx::new(field).eval(&expr)
}

fn eval_poly(src: &str, field: &Field) -> Result<UniPoly, String> {
    let r = eval_ratfun(src, field)?;
    ratfun_to_poly(&r)
}

fn ratfun_to_poly(r: &RationalFunction) -> Result<UniPoly, String> {
    if !r.den().is_constant() {
        return Err("expected a polynomial, found a proper rational function".into());
    }
    let inv = r.den().coeff(0).inv().map_err(|e| e.to_string())?;
    Ok(r.num().scale(&inv))
}

fn eval_quad(src: &str, field: &Field, modulus: &UniPoly) -> Result<QuadExtElement, String> {
    let expr = parse_expr(src)?;
    EvalCtx::with_w(field, modulus.clone()).eval_w(&expr)
}

/// Evaluate a constant expression to an exact field element.
fn eval_value(src: &str, field: &Field) -> Result<AlgebraicNumber, String> {
    let r = eval_ratfun(src, field)?;
    r.as_constant().ok_or_else(|| "expected a constant".to_string())
}

/// Split a `map` value at the single top-level ` / `.
fn split_map(src: &str) -> Result<(&str, &str), String> {
    let bytes = src.as_bytes();
    let mut depth = 0usize;
    for i in 0..bytes.len() {
        match bytes[i] {
            b'(' => depth += 1,
            b')' => depth = depth.saturating_sub(1),
            b'/' if depth == 0
                && i > 0
                && bytes[i - 1].is_ascii_whitespace()
                && bytes.get(i + 1).is_some_and(|c| c.is_ascii_whitespace()) =>
            {
                return Ok((&src[..i - 1], &src[i + 2..]));
            }
            _ => {}
        }
    }
    Err("expected `P / Q` with a top-level ` / `".into())
}

// ---------------------------------------------------------------------------
// execution

fn entry_field(e: &CorpusEntry) -> Result<Field, String> {
    let Some((gen, min_src)) = e.field_decl() else {
        return Ok(Field::rationals());
    };
    let min = eval_poly(min_src, &Field::rationals())?;
    if !min.is_monic() {
        return Err(format!("field `{gen}`: the minimal polynomial must be monic"));
    }
    let coeffs: Vec<Rat> = (0..=min.deg0())
        .map(|i| {
            min.coeff(i)
                .as_rat()
                .cloned()
                .ok_or_else(|| "minimal polynomial must have rational coefficients".to_string())
        })
        .collect::<Result<_, _>>()?;
    Field::extension(gen, coeffs).map_err(|err| err.to_string())
}

fn parse_passport(src: &str) -> Result<Passport, String> {
    src.parse::<Passport>().map_err(|e| e.to_string())
}

fn expect_of(e: &CorpusEntry) -> Result<Expectation, String> {
    let src = e.get("expect").ok_or("missing `expect`")?;
    if src == "verify" {
        Ok(Expectation::Verify)
    } else if src == "flagged-inconsistent" {
        Ok(Expectation::Flagged)
    } else if let Some(name) = src.strip_prefix("fail ") {
        Ok(Expectation::Fail(name.trim().to_string()))
    } else {
        Err(format!("unrecognized expectation `{src}`"))
    }
}

enum Expectation {
    Verify,
    Fail(String),
    Flagged,
}

fn execute(e: &CorpusEntry) -> Result<EntryStatus, String> {
    let expect = expect_of(e)?;
    if e.get("map").is_some() {
        run_map_entry(e, expect)
    } else if e.get("count").is_some() {
        run_count_entry(e, expect)
    } else if e.get("t").is_some() {
        run_painleve_entry(e, expect)
    } else {
        Err("entry carries no `map`, `count`, or `t` payload".into())
    }
}

fn run_count_entry(e: &CorpusEntry, expect: Expectation) -> Result<EntryStatus, String> {
    if !matches!(expect, Expectation::Verify) {
        return Err("count entries only support `expect : verify`".into());
    }
    let passport = parse_passport(e.get("passport").ok_or("missing `passport`")?)?;
    let want: usize = e
        .get("count")
        .unwrap()
        .parse()
        .map_err(|_| "count must be a nonnegative integer".to_string())?;
    let found = enumerate_dessins(&passport).map_err(|err| err.to_string())?.len();
    if found != want {
        return Err(format!("expected {want} dessins, enumerated {found}"));
    }
    Ok(EntryStatus::Passed)
}

fn run_map_entry(e: &CorpusEntry, expect: Expectation) -> Result<EntryStatus, String> {
    let field = entry_field(e)?;
    let phi = entry_phi(e)?;

    let map = match verify_belyi(&phi) {
        Ok(map) => map,
        Err(err) => {
            return match expect {
                Expectation::Fail(name) if error_name_belyi(&err) == name => {
                    Ok(EntryStatus::Passed)
                }
                _ => Err(format!("not a Belyi map: {err}")),
            };
        }
    };
    if let Some(src) = e.get("passport") {
        let want = parse_passport(src)?;
        if map.passport() != &want {
            return Err(format!("passport is {}, expected {want}", map.passport()));
        }
    }

    let wants_correspondence = matches!(expect, Expectation::Fail(_) | Expectation::Flagged)
        || ["expect-d", "expect-j", "expect-curve", "expect-phi1", "genus1-passport"]
            .iter()
            .any(|k| e.get(k).is_some());
    if !wants_correspondence {
        return Ok(EntryStatus::Passed);
    }

    match (q_correspond(&map), expect) {
        (Ok(c), expect @ (Expectation::Verify | Expectation::Flagged)) => {
            if let Some(src) = e.get("expect-d") {
                let want = eval_poly(src, &field)?;
                if c.d() != &want {
                    return Err(format!(
                        "radicand is {}, expected {}",
                        c.d().display("x"),
                        want.display("x")
                    ));
                }
            }
            if let Some(src) = e.get("genus1-passport") {
                let want = parse_passport(src)?;
                if c.genus1_passport() != &want {
                    return Err(format!(
                        "lifted passport is {}, expected {want}",
                        c.genus1_passport()
                    ));
                }
            }
            if !c.identity_holds() {
                return Err("correspondence identity does not hold".into());
            }
            if let Some(src) = e.get("expect-j") {
                let want = eval_value(src, &field)?;
                let j = j_invariant(c.d()).map_err(|err| err.to_string())?;
                if j != want {
                    return Err("j-invariant differs from the recorded value".into());
                }
            }
            let recorded = e.get("expect-curve");
            if matches!(expect, Expectation::Flagged) {
                let src = recorded.ok_or("flagged entries need a recorded value to contradict")?;
                let other = eval_poly(src, &field)?;
                return if same_j(c.d(), &other).map_err(|err| err.to_string())? {
                    Err("recorded model now matches the curve; the flag is stale".into())
                } else {
                    Ok(EntryStatus::FlagReproduced)
                };
            }
            if let Some(src) = recorded {
                let other = eval_poly(src, &field)?;
                if !same_j(c.d(), &other).map_err(|err| err.to_string())? {
                    return Err("curve is not isomorphic to the recorded model".into());
                }
            }
            Ok(EntryStatus::Passed)
        }
        (Err(err), Expectation::Fail(name)) => {
            if error_name_qcorr(&err) != name {
                return Err(format!("expected failure `{name}`, got `{err}`"));
            }
            if let (QcorrError::NotRegularOnCurve { d, .. }, Some(src)) =
                (&err, e.get("expect-d"))
            {
                let want = eval_poly(src, &field)?;
                if d != &want {
                    return Err(format!(
                        "obstructing radicand is {}, expected {}",
                        d.display("x"),
                        want.display("x")
                    ));
                }
            }
            if let (QcorrError::DegenerateRational { phi1 }, Some(src)) =
                (&err, e.get("expect-phi1"))
            {
                let want = eval_ratfun(src, &field)?;
                if phi1 != &want {
                    return Err("degenerate correspondence differs from the recorded one".into());
                }
            }
            Ok(EntryStatus::Passed)
        }
        (Err(QcorrError::DegenerateRational { phi1 }), Expectation::Flagged) => {
            let claimed = eval_ratfun(
                e.get("claimed-phi1")
                    .ok_or("flagged entries need `claimed-phi1`")?,
                &field,
            )?;
            let other = RationalFunction::one(&field)
                .sub(&phi1)
                .map_err(|err| err.to_string())?;
            if claimed == phi1 || claimed == other {
                Err("recorded claim now matches a branch; the flag is stale".into())
            } else {
                Ok(EntryStatus::FlagReproduced)
            }
        }
        (Ok(_), Expectation::Fail(name)) => {
            Err(format!("expected failure `{name}`, but the correspondence succeeded"))
        }
        (Err(_), Expectation::Flagged) => {
            Err("flagged entry did not reach a degenerate correspondence".into())
        }
        (Err(err), Expectation::Verify) => Err(format!("correspondence failed: {err}")),
    }
}

/// The Painleve VI solution a `painleve-solution` entry records: `q` and `t`
/// on the entry's curve with the entry's parameter quadruple. `q` may be given
/// directly or reconstructed from `inner-q`.
pub fn entry_solution(e: &CorpusEntry) -> Result<AlgebraicSolution, String> {
    let field = entry_field(e)?;
    let modulus = eval_poly(e.get("curve").ok_or("missing `curve`")?, &field)?;

    let t = eval_quad(e.get("t").ok_or("missing `t`")?, &field, &modulus)?;
    let q = match e.get("q") {
        Some(src) => eval_quad(src, &field, &modulus)?,
        None => {
            let src = e.get("inner-q").ok_or("need `q` or `inner-q`")?;
            let inner = eval_ratfun(src, &field)?;
            qform_on_curve(&inner, &modulus, true)
                .ok_or("the square root demanded by `inner-q` does not exist on the curve")?
        }
    };

    let params: Vec<Rat> = e
        .get("params")
        .ok_or("missing `params`")?
        .split_whitespace()
        .map(|t| t.parse::<Rat>().map_err(|_| format!("bad rational `{t}`")))
        .collect::<Result<_, _>>()?;
    let [alpha, beta, gamma, delta]: [Rat; 4] = params
        .try_into()
        .map_err(|_| "params must list exactly four rationals".to_string())?;

    let label = e.get("label").unwrap_or_else(|| e.id()).to_string();
    AlgebraicSolution::new(label, q, t, PviParams::new(alpha, beta, gamma, delta))
        .map_err(|err| err.to_string())
}

fn run_painleve_entry(e: &CorpusEntry, expect: Expectation) -> Result<EntryStatus, String> {
    if !matches!(expect, Expectation::Verify) {
        return Err("solution entries only support `expect : verify`".into());
    }
    let field = entry_field(e)?;
    let sol = entry_solution(e)?;
    let residual = pvi_residual(&sol).map_err(|err| err.to_string())?;
    if !residual.is_zero() {
        return Err("the equation residual is not zero".into());
    }

    if let Some(src) = e.get("inner-q") {
        let inner = eval_ratfun(src, &field)?;
        if !verify_qform(sol.q(), &inner).map_err(|err| err.to_string())? {
            return Err("q is not the correspondence of `inner-q`".into());
        }
    }
    if let Some(src) = e.get("inner-t") {
        let inner = eval_ratfun(src, &field)?;
        if !verify_qform(sol.t(), &inner).map_err(|err| err.to_string())? {
            return Err("t is not the correspondence of `inner-t`".into());
        }
    }
    if let Some(src) = e.get("expect-j") {
        let want = eval_value(src, &field)?;
        let j = sol.curve_j().map_err(|err| err.to_string())?;
        if j != want {
            return Err("curve j-invariant differs from the recorded value".into());
        }
    }

    if let Some(src) = e.get("dual-curve") {
        let dual_modulus = eval_poly(src, &field)?;
        let dual_t = eval_quad(
            e.get("dual-t").ok_or("`dual-curve` needs `dual-t`")?,
            &field,
            &dual_modulus,
        )?;
        let inner = eval_ratfun(
            e.get("dual-inner-t").ok_or("`dual-curve` needs `dual-inner-t`")?,
            &field,
        )?;
        if !verify_qform(&dual_t, &inner).map_err(|err| err.to_string())? {
            return Err("dual t is not the correspondence of `dual-inner-t`".into());
        }
        if let Some(j_src) = e.get("dual-j") {
            let want = eval_value(j_src, &field)?;
            let j = j_invariant(&dual_modulus).map_err(|err| err.to_string())?;
            if j != want {
                return Err("dual curve j-invariant differs from the recorded value".into());
            }
        }
    }
    Ok(EntryStatus::Passed)
}

pub(crate) fn error_name_belyi(e: &BelyiError) -> &'static str {
    match e {
        BelyiError::ConstantMap => "ConstantMap",
        BelyiError::NotBelyi { .. } => "NotBelyi",
        BelyiError::Algebra(_) => "Algebra",
    }
}

pub(crate) fn error_name_qcorr(e: &QcorrError) -> &'static str {
    match e {
        QcorrError::NotRegularOnCurve { .. } => "NotRegularOnCurve",
        QcorrError::DegenerateRational { .. } => "DegenerateRational",
        QcorrError::Algebra(_) => "Algebra",
        QcorrError::Extension(_) => "Extension",
    }
}
