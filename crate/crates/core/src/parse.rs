//! Text front ends: polynomial expressions, knot expressions and
//! polynomial-set lists.
//!
//! Polynomials: integers, `t`, `+ - *`, `^` with integer exponents,
//! parentheses and implicit multiplication, e.g. `t^2-t+1`, `t + t^-1 - 1`,
//! `(t-1)^2 + t`. Negative exponents are accepted only on monomials with
//! coefficient `±1`.
//!
//! Knots: `unknot`, `trefoil`, `figure-eight` (and a few aliases),
//! `T(a,b)`, `rev(K)`, `mirror(K)`, `K1 # K2`, parentheses, or a whole
//! JSON Seifert matrix (`{"matrix": ...}` or a bare array of rows).

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::polyalg::laurent::{AlexanderPoly, LaurentPoly, PolySet, MAX_SPAN};
use crate::polyalg::torus_knot_alexander;
use crate::seifert::SeifertMatrix;

/// Longest accepted expression, in bytes.
pub const MAX_INPUT: usize = 10_000;
/// Largest absolute exponent in a polynomial expression.
pub const MAX_EXPONENT: i64 = 10_000;

fn perr(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse { pos, msg: msg.into() }
}

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Result<Self> {
        if s.len() > MAX_INPUT {
            return Err(perr(MAX_INPUT, format!("input longer than {MAX_INPUT} bytes")));
        }
        Ok(Cursor { src: s.as_bytes(), pos: 0 })
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

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(perr(self.pos, format!("expected '{}'", c as char)))
        }
    }

    fn integer(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(perr(start, "expected an integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| perr(start, "integer too large"))
    }

    fn ident(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || matches!(self.src[self.pos], b'_' | b'-'))
        {
            // a '-' only continues names like figure-eight
            if self.src[self.pos] == b'-' && self.pos == start {
                break;
            }
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }
}

fn add(a: &LaurentPoly, b: &LaurentPoly) -> Result<LaurentPoly> {
    let mut terms: BTreeMap<i64, i64> = a.terms().collect();
    for (e, c) in b.terms() {
        let slot = terms.entry(e).or_insert(0);
        *slot = slot.checked_add(c).ok_or(Error::Overflow("polynomial coefficient"))?;
    }
    LaurentPoly::from_terms(terms)
}

fn mul(a: &LaurentPoly, b: &LaurentPoly, pos: usize) -> Result<LaurentPoly> {
    if a.span() + b.span() > MAX_SPAN as usize {
        return Err(perr(pos, "polynomial degree too large"));
    }
    a.checked_mul(b)
}

/// Parses a polynomial expression into a Laurent polynomial.
pub fn parse_poly(s: &str) -> Result<LaurentPoly> {
    let mut c = Cursor::new(s)?;
    if c.at_end() {
        return Err(perr(0, "empty expression"));
    }
    let p = poly_sum(&mut c, 0)?;
    if !c.at_end() {
        return Err(perr(c.pos, "unexpected trailing input"));
    }
    Ok(p)
}

const MAX_NESTING: usize = 64;

fn poly_sum(c: &mut Cursor, depth: usize) -> Result<LaurentPoly> {
    if depth > MAX_NESTING {
        return Err(perr(c.pos, "parentheses nested too deeply"));
    }
    let mut neg = false;
    if c.eat(b'-') {
        neg = true;
    } else {
        c.eat(b'+');
    }
    let mut acc = poly_product(c, depth)?;
    if neg {
        acc = acc.neg();
    }
    loop {
        if c.eat(b'+') {
            acc = add(&acc, &poly_product(c, depth)?)?;
        } else if c.eat(b'-') {
            acc = add(&acc, &poly_product(c, depth)?.neg())?;
        } else {
            return Ok(acc);
        }
    }
}

fn poly_product(c: &mut Cursor, depth: usize) -> Result<LaurentPoly> {
    let mut acc = poly_power(c, depth)?;
    loop {
        let pos = c.pos;
        if c.eat(b'*') {
            acc = mul(&acc, &poly_power(c, depth)?, pos)?;
            continue;
        }
        match c.peek() {
            Some(b'0'..=b'9' | b't' | b'(') => acc = mul(&acc, &poly_power(c, depth)?, pos)?,
            _ => return Ok(acc),
        }
    }
}

fn poly_power(c: &mut Cursor, depth: usize) -> Result<LaurentPoly> {
    let base = poly_atom(c, depth)?;
    if !c.eat(b'^') {
        return Ok(base);
    }
    let pos = c.pos;
    let negative = c.eat(b'-');
    if !negative {
        c.eat(b'+');
    }
    let e = c.integer()?;
    if e as i64 > MAX_EXPONENT || e > MAX_EXPONENT as u64 {
        return Err(perr(pos, format!("exponent exceeds {MAX_EXPONENT}")));
    }
    let e = e as i64;
    let terms: Vec<(i64, i64)> = base.terms().collect();
    if let [(k, coef)] = terms[..] {
        if negative && coef.abs() != 1 {
            return Err(perr(pos, "negative power of a non-unit coefficient"));
        }
        let exp = k.checked_mul(if negative { -e } else { e }).filter(|x| x.abs() <= MAX_EXPONENT);
        let exp = exp.ok_or_else(|| perr(pos, format!("exponent exceeds {MAX_EXPONENT}")))?;
        let c2 = if coef == -1 && e % 2 == 1 {
            -1
        } else if coef.abs() == 1 {
            1
        } else {
            coef.checked_pow(e as u32).ok_or(Error::Overflow("polynomial coefficient"))?
        };
        return Ok(LaurentPoly::monomial(c2, exp));
    }
    if negative {
        return Err(perr(pos, "negative powers are allowed only on monomials"));
    }
    if base.is_zero() {
        return Ok(if e == 0 { LaurentPoly::one() } else { base });
    }
    let mut acc = LaurentPoly::one();
    for _ in 0..e {
        acc = mul(&acc, &base, pos)?;
    }
    Ok(acc)
}

fn poly_atom(c: &mut Cursor, depth: usize) -> Result<LaurentPoly> {
    match c.peek() {
        Some(b'0'..=b'9') => {
            let pos = c.pos;
            let n = c.integer()?;
            let n = i64::try_from(n).map_err(|_| perr(pos, "integer too large"))?;
            Ok(LaurentPoly::monomial(n, 0))
        }
        Some(b't') => {
            c.pos += 1;
            Ok(LaurentPoly::monomial(1, 1))
        }
        Some(b'(') => {
            c.pos += 1;
            let p = poly_sum(c, depth + 1)?;
            c.expect(b')')?;
            Ok(p)
        }
        Some(ch) => Err(perr(c.pos, format!("unexpected '{}'", ch as char))),
        None => Err(perr(c.pos, "unexpected end of input")),
    }
}

/// A polynomial given as an expression, a coefficient-pair JSON object
/// `{"coeffs": [[exp, coeff], ...]}` or a plain coefficient array
/// `[a_0, a_1, ...]`.
pub fn parse_poly_any(s: &str) -> Result<LaurentPoly> {
    let t = s.trim_start();
    if t.starts_with('{') {
        return crate::io::from_json_str::<LaurentPoly>(t);
    }
    if t.starts_with('[') {
        let raw: Vec<i64> = crate::io::from_json_str(t)?;
        if raw.is_empty() {
            return Err(Error::EmptyPolynomial);
        }
        if raw.len() > MAX_SPAN as usize + 1 {
            return Err(Error::InvalidArgument("coefficient list too long".into()));
        }
        return Ok(LaurentPoly::new(0, raw));
    }
    parse_poly(s)
}

/// Parses and validates an Alexander polynomial; `T(a,b)` is accepted too.
pub fn parse_alexander(s: &str) -> Result<AlexanderPoly> {
    let t = s.trim();
    if let Some(name) = named_alexander(t)? {
        return Ok(name);
    }
    AlexanderPoly::new(parse_poly_any(t)?.centered())
}

fn named_alexander(s: &str) -> Result<Option<AlexanderPoly>> {
    if let Some((a, b)) = torus_params(s)? {
        return torus_knot_alexander(a, b).map(Some);
    }
    let lower = s.to_ascii_lowercase();
    Ok(match canonical_name(&lower) {
        Some("unknot") => Some(AlexanderPoly::unknot()),
        Some("trefoil") => Some(AlexanderPoly::new(LaurentPoly::new(-1, vec![1, -1, 1]))?),
        Some("figure-eight") => Some(AlexanderPoly::new(LaurentPoly::new(-1, vec![-1, 3, -1]))?),
        _ => None,
    })
}

fn canonical_name(s: &str) -> Option<&'static str> {
    match s {
        "unknot" | "0_1" | "u" | "1" => Some("unknot"),
        "trefoil" | "3_1" => Some("trefoil"),
        "figure-eight" | "figure8" | "figure_eight" | "4_1" => Some("figure-eight"),
        _ => None,
    }
}

fn torus_params(s: &str) -> Result<Option<(u64, u64)>> {
    let Some(rest) = s.strip_prefix("T(").or_else(|| s.strip_prefix("t(")) else {
        return Ok(None);
    };
    let mut c = Cursor::new(rest)?;
    let a = c.integer()?;
    c.expect(b',')?;
    let b = c.integer()?;
    c.expect(b')')?;
    if !c.at_end() {
        return Ok(None);
    }
    Ok(Some((a, b)))
}

/// A set `D` of Alexander polynomials: `unit`, a `;`-separated list of
/// polynomials or names, a JSON list of those, or JSON `{"polys": [...]}`.
/// A JSON list of plain integers is one polynomial in coefficient form.
pub fn parse_poly_set(s: &str) -> Result<PolySet> {
    let t = s.trim();
    if t.starts_with('{') {
        return crate::io::from_json_str(t);
    }
    if t.starts_with('[') {
        let items: Vec<serde_json::Value> = crate::io::from_json_str(t)?;
        if !items.iter().all(serde_json::Value::is_number) {
            let polys = items
                .iter()
                .enumerate()
                .map(|(i, v)| {
                    match v {
                        serde_json::Value::String(e) => parse_alexander(e),
                        other => parse_alexander(&other.to_string()),
                    }
                    .map_err(|e| Error::schema(format!("$[{i}]"), e.to_string()))
                })
                .collect::<Result<Vec<_>>>()?;
            return PolySet::new(polys);
        }
    }
    if t.eq_ignore_ascii_case("unit") {
        return Ok(PolySet::unit());
    }
    let polys = t
        .split(';')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(parse_alexander)
        .collect::<Result<Vec<_>>>()?;
    PolySet::new(polys)
}

/// Parses a knot expression into a Seifert matrix.
pub fn parse_knot(s: &str) -> Result<SeifertMatrix> {
    let t = s.trim_start();
    if t.starts_with('{') {
        return crate::io::from_json_str(t);
    }
    if t.starts_with('[') {
        let rows: Vec<Vec<serde_json::Value>> = crate::io::from_json_str(t)?;
        let wrapped = serde_json::json!({ "matrix": rows });
        return crate::io::from_json_str(&wrapped.to_string());
    }
    let mut c = Cursor::new(s)?;
    let k = knot_sum(&mut c, 0)?;
    if !c.at_end() {
        return Err(perr(c.pos, "unexpected trailing input"));
    }
    Ok(k)
}

fn knot_sum(c: &mut Cursor, depth: usize) -> Result<SeifertMatrix> {
    if depth > MAX_NESTING {
        return Err(perr(c.pos, "expression nested too deeply"));
    }
    let mut acc = knot_atom(c, depth)?;
    while c.eat(b'#') {
        let pos = c.pos;
        let next = knot_atom(c, depth)?;
        if acc.dim() + next.dim() > crate::seifert::MAX_DIM {
            return Err(perr(pos, "connected sum too large"));
        }
        acc = acc.connected_sum(&next);
    }
    Ok(acc)
}

fn knot_atom(c: &mut Cursor, depth: usize) -> Result<SeifertMatrix> {
    if c.eat(b'(') {
        let k = knot_sum(c, depth + 1)?;
        c.expect(b')')?;
        return Ok(k);
    }
    let pos = c.pos;
    let name = c.ident();
    match name.as_str() {
        "" => Err(perr(pos, "expected a knot")),
        "T" => {
            c.expect(b'(')?;
            let a = c.integer()?;
            c.expect(b',')?;
            let b = c.integer()?;
            c.expect(b')')?;
            SeifertMatrix::torus(a, b).map_err(|e| perr(pos, e.to_string()))
        }
        "rev" | "reverse" => {
            c.expect(b'(')?;
            let k = knot_sum(c, depth + 1)?;
            c.expect(b')')?;
            Ok(k.reverse())
        }
        "mirror" => {
            c.expect(b'(')?;
            let k = knot_sum(c, depth + 1)?;
            c.expect(b')')?;
            Ok(k.mirror())
        }
        other => match canonical_name(&other.to_ascii_lowercase()) {
            Some("unknot") => Ok(SeifertMatrix::unknot()),
            Some("trefoil") => Ok(SeifertMatrix::trefoil()),
            Some("figure-eight") => Ok(SeifertMatrix::figure_eight()),
            _ => Err(perr(pos, format!("unknown knot '{other}'"))),
        },
    }
}
