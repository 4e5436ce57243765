use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::qpoly::QPoly;
use crate::error::{Error, Result};

/// Integer Laurent polynomial `sum_k c_k t^k`, stored densely from the lowest
/// exponent with no zero coefficients at either end.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    low: i64,
    coeffs: Vec<i64>,
}

impl LaurentPoly {
    /// Coefficients starting at exponent `offset`; trims zeros at both ends.
    pub fn new(offset: i64, coeffs: Vec<i64>) -> Self {
        let start = coeffs.iter().position(|&c| c != 0);
        match start {
            None => Self::zero(),
            Some(s) => {
                let end = coeffs.iter().rposition(|&c| c != 0).unwrap();
                LaurentPoly {
                    low: offset + s as i64,
                    coeffs: coeffs[s..=end].to_vec(),
                }
            }
        }
    }

    pub fn zero() -> Self {
        LaurentPoly {
            low: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn one() -> Self {
        LaurentPoly {
            low: 0,
            coeffs: vec![1],
        }
    }

    pub fn monomial(coeff: i64, exp: i64) -> Self {
        Self::new(exp, vec![coeff])
    }

    /// From `(exponent, coefficient)` pairs; repeated exponents are summed.
    pub fn from_terms<I: IntoIterator<Item = (i64, i64)>>(terms: I) -> Result<Self> {
        let mut map: BTreeMap<i64, i64> = BTreeMap::new();
        for (e, c) in terms {
            let slot = map.entry(e).or_insert(0);
            *slot = slot.checked_add(c).ok_or(Error::Overflow("polynomial term"))?;
        }
        map.retain(|_, c| *c != 0);
        let (Some((&lo, _)), Some((&hi, _))) = (map.first_key_value(), map.last_key_value()) else {
            return Ok(Self::zero());
        };
        let span = hi.checked_sub(lo).filter(|s| *s <= MAX_SPAN).ok_or_else(|| {
            Error::InvalidArgument(format!("exponent span exceeds {MAX_SPAN}"))
        })?;
        let mut coeffs = vec![0; span as usize + 1];
        for (e, c) in map {
            coeffs[(e - lo) as usize] = c;
        }
        Ok(Self::new(lo, coeffs))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn low_exp(&self) -> i64 {
        self.low
    }

    pub fn high_exp(&self) -> i64 {
        self.low + self.coeffs.len() as i64 - 1
    }

    /// Difference between the highest and lowest exponent.
    pub fn span(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, exp: i64) -> i64 {
        let i = exp - self.low;
        if i < 0 || i as usize >= self.coeffs.len() {
            0
        } else {
            self.coeffs[i as usize]
        }
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(move |(i, &c)| (self.low + i as i64, c))
    }

    /// Dense coefficients from the lowest exponent up.
    pub fn dense(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly {
            low: if self.is_zero() { 0 } else { self.low + k },
            coeffs: self.coeffs.clone(),
        }
    }

    /// Shifted so the exponents run from `-(span/2)` (rounded down) upward.
    pub fn centered(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        LaurentPoly {
            low: -((self.span() / 2) as i64),
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn eval_at_one(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    pub fn eval_at_minus_one(&self) -> i64 {
        self.terms()
            .map(|(e, c)| if e.rem_euclid(2) == 0 { c } else { -c })
            .sum()
    }

    /// `a_k = a_{-k}` after centering.
    pub fn is_symmetric(&self) -> bool {
        let n = self.coeffs.len();
        n % 2 == 1 && (0..n).all(|i| self.coeffs[i] == self.coeffs[n - 1 - i])
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero());
        }
        let mut out = vec![0i64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                let p = a.checked_mul(b).ok_or(Error::Overflow("polynomial product"))?;
                out[i + j] = out[i + j]
                    .checked_add(p)
                    .ok_or(Error::Overflow("polynomial product"))?;
            }
        }
        Ok(Self::new(self.low + other.low, out))
    }

    /// Ordinary polynomial `t^{-low} f(t)` with nonzero constant term.
    pub fn to_qpoly(&self) -> QPoly {
        QPoly::from_ints(&self.coeffs)
    }

    pub fn to_bigints(&self) -> Vec<BigInt> {
        self.coeffs.iter().map(|&c| BigInt::from(c)).collect()
    }

    /// From an ordinary polynomial with integer coefficients.
    pub fn from_qpoly(p: &QPoly) -> Result<Self> {
        use num_traits::ToPrimitive;
        let mut v = Vec::with_capacity(p.coeffs().len());
        for c in p.coeffs() {
            if !c.is_integer() {
                return Err(Error::InvalidArgument(format!(
                    "non-integral coefficient {c}"
                )));
            }
            v.push(c.to_integer().to_i64().ok_or(Error::Overflow("coefficient"))?);
        }
        Ok(Self::new(0, v))
    }
}

/// Upper bound on exponent spans accepted from external input.
pub const MAX_SPAN: i64 = 100_000;

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms().collect::<Vec<_>>().into_iter().rev() {
            let (sgn, mag) = if c < 0 { ("-", -(c as i128)) } else { ("+", c as i128) };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sgn} ")?;
            }
            first = false;
            match (e, mag) {
                (0, m) => write!(f, "{m}")?,
                (1, 1) => write!(f, "t")?,
                (1, m) => write!(f, "{m}t")?,
                (e, 1) => write!(f, "t^{e}")?,
                (e, m) => write!(f, "{m}t^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

#[derive(Serialize, Deserialize)]
struct LaurentWire {
    coeffs: Vec<(i64, i64)>,
}

impl Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        LaurentWire {
            coeffs: self.terms().collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = LaurentWire::deserialize(d)?;
        LaurentPoly::from_terms(w.coeffs).map_err(serde::de::Error::custom)
    }
}

/// A Laurent polynomial satisfying `f(1) = ±1` and the centered symmetry
/// `a_k = a_{-k}`. Always stored centered.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AlexanderPoly(LaurentPoly);

impl AlexanderPoly {
    pub fn new(p: LaurentPoly) -> Result<Self> {
        let f1 = p.eval_at_one();
        if f1 != 1 && f1 != -1 {
            return Err(Error::NotAlexander(format!("{p} has f(1) = {f1}")));
        }
        if !p.is_symmetric() {
            return Err(Error::NotAlexander(format!("{p} is not symmetric")));
        }
        Ok(AlexanderPoly(p.centered()))
    }

    pub fn unknot() -> Self {
        AlexanderPoly(LaurentPoly::one())
    }

    pub fn poly(&self) -> &LaurentPoly {
        &self.0
    }

    pub fn into_poly(self) -> LaurentPoly {
        self.0
    }

    /// `+1` or `-1`: the value at `t = 1`.
    pub fn unit_sign(&self) -> i64 {
        self.0.eval_at_one()
    }

    /// Genus bound: half the span.
    pub fn half_span(&self) -> usize {
        self.0.span() / 2
    }

    /// Equality up to the units `±t^k`.
    pub fn same_up_to_units(&self, other: &Self) -> bool {
        self.0 == other.0 || self.0 == other.0.neg()
    }

    /// Centered coefficient `a_k`.
    pub fn coeff(&self, k: i64) -> i64 {
        self.0.coeff(k)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        AlexanderPoly::new(self.0.checked_mul(&other.0)?)
    }
}

impl fmt::Display for AlexanderPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Debug for AlexanderPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlexanderPoly({})", self.0)
    }
}

impl Serialize for AlexanderPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for AlexanderPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let p = LaurentPoly::deserialize(d)?;
        AlexanderPoly::new(p).map_err(serde::de::Error::custom)
    }
}

/// Result of validating a raw coefficient list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalized {
    pub poly: LaurentPoly,
    pub alexander: bool,
}

impl Normalized {
    pub fn into_alexander(self) -> Result<AlexanderPoly> {
        AlexanderPoly::new(self.poly)
    }
}

/// Centers and trims a coefficient list starting at exponent `offset`, and
/// reports whether it is an Alexander polynomial.
pub fn normalize_alexander(raw: &[i64], offset: i64) -> Result<Normalized> {
    if raw.is_empty() {
        return Err(Error::EmptyPolynomial);
    }
    if raw.len() as i64 > MAX_SPAN + 1 {
        return Err(Error::InvalidArgument("coefficient list too long".into()));
    }
    let poly = LaurentPoly::new(offset, raw.to_vec()).centered();
    let alexander = AlexanderPoly::new(poly.clone()).is_ok();
    Ok(Normalized { poly, alexander })
}

/// A nonempty finite collection of Alexander polynomials.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PolySetWire", into = "PolySetWire")]
pub struct PolySet {
    polys: Vec<AlexanderPoly>,
}

#[derive(Serialize, Deserialize)]
struct PolySetWire {
    polys: Vec<AlexanderPoly>,
}

impl TryFrom<PolySetWire> for PolySet {
    type Error = Error;
    fn try_from(w: PolySetWire) -> Result<Self> {
        PolySet::new(w.polys)
    }
}

impl From<PolySet> for PolySetWire {
    fn from(p: PolySet) -> Self {
        PolySetWire { polys: p.polys }
    }
}

impl PolySet {
    pub fn new(polys: Vec<AlexanderPoly>) -> Result<Self> {
        if polys.is_empty() {
            return Err(Error::InvalidArgument("polynomial set must be nonempty".into()));
        }
        Ok(PolySet { polys })
    }

    /// `D = {1}`.
    pub fn unit() -> Self {
        PolySet {
            polys: vec![AlexanderPoly::unknot()],
        }
    }

    pub fn polys(&self) -> &[AlexanderPoly] {
        &self.polys
    }

    pub fn contains_up_to_units(&self, f: &AlexanderPoly) -> bool {
        self.polys.iter().any(|g| g.same_up_to_units(f))
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut polys = self.polys.clone();
        for p in &other.polys {
            if !polys.contains(p) {
                polys.push(p.clone());
            }
        }
        PolySet { polys }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalize_examples() {
        let n = normalize_alexander(&[1], 0).unwrap();
        assert_eq!(n.poly, LaurentPoly::one());
        assert!(n.alexander);

        let n = normalize_alexander(&[1, -1, 1], 0).unwrap();
        assert!(n.alexander);
        assert_eq!(n.poly, LaurentPoly::new(-1, vec![1, -1, 1]));
        assert_eq!(n.poly.to_string(), "t - 1 + t^-1");

        let n = normalize_alexander(&[1, -2], 0).unwrap();
        assert!(!n.alexander);
        assert_eq!(n.poly.eval_at_one(), -1);
        assert!(n.into_alexander().is_err());

        assert_eq!(normalize_alexander(&[], 0), Err(Error::EmptyPolynomial));
    }

    #[test]
    fn trims_and_centers() {
        let p = LaurentPoly::new(3, vec![0, 0, 1, -3, 1, 0]);
        assert_eq!(p.low_exp(), 5);
        assert_eq!(p.centered(), LaurentPoly::new(-1, vec![1, -3, 1]));
        assert!(LaurentPoly::new(0, vec![0, 0]).is_zero());
    }

    #[test]
    fn json_shape() {
        let p = LaurentPoly::new(-1, vec![1, -1, 1]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"coeffs":[[-1,1],[0,-1],[1,1]]}"#);
        let back: LaurentPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        let bad: std::result::Result<AlexanderPoly, _> =
            serde_json::from_str(r#"{"coeffs":[[0,1],[1,-2]]}"#);
        assert!(bad.is_err());
        let set: std::result::Result<PolySet, _> = serde_json::from_str(r#"{"polys":[]}"#);
        assert!(set.is_err());
    }

    #[test]
    fn units_and_membership() {
        let f8 = AlexanderPoly::new(LaurentPoly::new(-1, vec![-1, 3, -1])).unwrap();
        let g = AlexanderPoly::new(LaurentPoly::new(0, vec![1, -3, 1])).unwrap();
        assert!(f8.same_up_to_units(&g));
        assert!(PolySet::new(vec![g]).unwrap().contains_up_to_units(&f8));
        assert!(!PolySet::unit().contains_up_to_units(&f8));
    }
}
