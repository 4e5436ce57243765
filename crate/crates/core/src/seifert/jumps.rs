//! Signature jump functions `delta(theta)` with an ambient period, and
//! minimal-period detection.

use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::circle::{position_of, CircleAnalysis};
use super::trig::two_cos_2pi;
use super::{SeifertMatrix, DEFAULT_PRECISION};
use crate::error::{Error, Result};
use crate::polyalg::qpoly::QPoly;
use crate::polyalg::realroot::AlgebraicReal;
use crate::rational::{fmt_rational, parse_rational, q, qr, to_f64, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    /// `theta / P = acos(x/2) / 2pi`, in `(0, 1/2)`.
    Upper,
    /// `theta / P = 1 - acos(x/2) / 2pi`, in `(1/2, 1)`.
    Lower,
}

/// A point of the circle given by its real part `x = 2cos(2 pi s)` and the
/// half it lies in.
#[derive(Clone, Debug)]
pub struct CirclePoint {
    pub x: AlgebraicReal,
    pub branch: Branch,
}

impl PartialEq for CirclePoint {
    fn eq(&self, other: &Self) -> bool {
        self.branch == other.branch && self.x.equals(&other.x)
    }
}

impl CirclePoint {
    /// `theta / P` as an f64 interval, padded to cover rounding in `acos`.
    fn unit_enclosure(&self, bits: u32) -> (f64, f64) {
        let mut x = self.x.clone();
        x.refine_bits(bits.min(64));
        let phi = |v: f64| (v / 2.0).clamp(-1.0, 1.0).acos() / std::f64::consts::TAU;
        let (a, b) = (phi(to_f64(x.hi())), phi(to_f64(x.lo())));
        let pad = 1e-13;
        match self.branch {
            Branch::Upper => (a - pad, b + pad),
            Branch::Lower => (1.0 - b - pad, 1.0 - a + pad),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Position {
    Exact(Q),
    /// `theta = P * s` where `s` is determined by the circle point and `P` is
    /// the ambient period of the owning jump function.
    Algebraic(CirclePoint),
}

impl Position {
    pub fn as_exact(&self) -> Option<&Q> {
        match self {
            Position::Exact(r) => Some(r),
            Position::Algebraic(_) => None,
        }
    }

    fn enclosure(&self, period: &Q, bits: u32) -> (f64, f64) {
        match self {
            Position::Exact(r) => {
                let v = to_f64(r);
                let pad = v.abs() * 1e-15 + 1e-300;
                (v - pad, v + pad)
            }
            Position::Algebraic(cp) => {
                let p = to_f64(period);
                let (a, b) = cp.unit_enclosure(bits);
                (a * p - 1e-13 * p, b * p + 1e-13 * p)
            }
        }
    }

    pub fn approx(&self, period: &Q) -> f64 {
        let (a, b) = self.enclosure(period, 64);
        (a + b) / 2.0
    }
}

/// Compares `P * s` against a rational position `r`, exactly.
fn cmp_point_rational(cp: &CirclePoint, period: &Q, r: &Q) -> Ordering {
    let s = r / period;
    let half = qr(1, 2);
    let (target, flip) = match cp.branch {
        Branch::Upper => {
            if s <= Q::zero() {
                return Ordering::Greater;
            }
            if s >= half {
                return Ordering::Less;
            }
            (s, false)
        }
        Branch::Lower => {
            if s <= half {
                return Ordering::Greater;
            }
            if s >= Q::one() {
                return Ordering::Less;
            }
            (Q::one() - s, true)
        }
    };
    // phi(x) vs target  <=>  x vs 2cos(2 pi target), reversed
    let mut x = cp.x.clone();
    let mut bits = 32u32;
    let ord = loop {
        let (lo, hi) = two_cos_2pi(&target, bits);
        x.refine_bits(bits);
        if x.hi() < &lo || (x.hi() == &lo && !x.is_rational()) {
            break Ordering::Greater; // x < c  => phi(x) > target
        }
        if x.lo() > &hi || (x.lo() == &hi && !x.is_rational()) {
            break Ordering::Less;
        }
        bits *= 2;
        if bits > 1 << 13 {
            break Ordering::Equal;
        }
    };
    if flip {
        ord.reverse()
    } else {
        ord
    }
}

fn cmp_positions(a: &Position, b: &Position, period: &Q) -> Ordering {
    match (a, b) {
        (Position::Exact(x), Position::Exact(y)) => x.cmp(y),
        (Position::Algebraic(p), Position::Exact(r)) => cmp_point_rational(p, period, r),
        (Position::Exact(r), Position::Algebraic(p)) => cmp_point_rational(p, period, r).reverse(),
        (Position::Algebraic(p), Position::Algebraic(s)) => {
            if p.branch != s.branch {
                return p.branch.cmp(&s.branch);
            }
            let ord = p.x.clone().cmp_exact(&mut s.x.clone());
            match p.branch {
                Branch::Upper => ord.reverse(),
                Branch::Lower => ord,
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Jump {
    pub position: Position,
    pub value: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Exactness {
    ExactRational,
    Numeric { epsilon: f64 },
}

/// `delta(theta)`: finitely many nonzero jumps in `[0, P)`, extended
/// periodically with period `P`.
#[derive(Clone, Debug, PartialEq)]
pub struct JumpFunction {
    ambient_period: Q,
    jumps: Vec<Jump>,
    precision: u32,
}

impl JumpFunction {
    /// Sorts the jumps, merges repeated positions and drops zero values.
    pub fn new(ambient_period: Q, jumps: Vec<Jump>) -> Result<Self> {
        if !ambient_period.is_positive() {
            return Err(Error::InvalidArgument("ambient period must be positive".into()));
        }
        let mut out = JumpFunction {
            ambient_period,
            jumps: Vec::new(),
            precision: DEFAULT_PRECISION,
        };
        out.absorb(jumps);
        Ok(out)
    }

    pub fn zero(ambient_period: Q) -> Result<Self> {
        Self::new(ambient_period, Vec::new())
    }

    pub fn with_precision(mut self, bits: u32) -> Self {
        self.precision = bits;
        self
    }

    fn absorb(&mut self, jumps: Vec<Jump>) {
        for j in jumps {
            match self.jumps.iter_mut().find(|k| k.position == j.position) {
                Some(k) => k.value += j.value,
                None => self.jumps.push(j),
            }
        }
        self.jumps.retain(|j| j.value != 0);
        let p = self.ambient_period.clone();
        self.jumps.sort_by(|a, b| cmp_positions(&a.position, &b.position, &p));
    }

    pub fn ambient_period(&self) -> &Q {
        &self.ambient_period
    }

    pub fn jumps(&self) -> &[Jump] {
        &self.jumps
    }

    pub fn is_zero(&self) -> bool {
        self.jumps.is_empty()
    }

    pub fn exactness(&self) -> Exactness {
        let mut eps: f64 = 0.0;
        for j in &self.jumps {
            if let Position::Algebraic(_) = j.position {
                let (a, b) = j.position.enclosure(&self.ambient_period, self.precision);
                eps = eps.max(b - a);
            }
        }
        if eps == 0.0 {
            Exactness::ExactRational
        } else {
            Exactness::Numeric { epsilon: eps }
        }
    }

    /// Pointwise sum; both functions must share the ambient period.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.ambient_period != other.ambient_period {
            return Err(Error::InvalidArgument(format!(
                "ambient periods differ: {} vs {}",
                self.ambient_period, other.ambient_period
            )));
        }
        let mut out = self.clone();
        out.absorb(other.jumps.clone());
        Ok(out)
    }

    /// Pointwise multiple `k * delta`.
    pub fn times(&self, k: i64) -> Self {
        let mut out = self.clone();
        for j in &mut out.jumps {
            j.value *= k;
        }
        out.jumps.retain(|j| j.value != 0);
        out
    }

    /// Structural invariants that do not hold are reported, not repaired.
    pub fn violations(&self) -> Vec<String> {
        let mut v = Vec::new();
        let p = &self.ambient_period;
        for j in &self.jumps {
            if let Position::Exact(r) = &j.position {
                if r.is_negative() || r >= p {
                    v.push(format!("position {r} outside [0, {p})"));
                }
            }
            if j.value % 2 != 0 {
                v.push(format!("odd jump value {}", j.value));
            }
            if j.value == 0 {
                v.push("zero jump value".into());
            }
        }
        for w in self.jumps.windows(2) {
            if cmp_positions(&w[0].position, &w[1].position, p) != Ordering::Less {
                v.push("positions not strictly increasing".into());
            }
        }
        let total: i64 = self.jumps.iter().map(|j| j.value).sum();
        if total != 0 {
            v.push(format!("jumps sum to {total} over one period"));
        }
        v
    }
}

/// `delta` for the Seifert matrix `a` with parameter `c`: the jump at
/// `theta = c * t0` is `sigma(t0+) - sigma(t0-)`, with ambient period `c`.
pub fn jump_function(a: &SeifertMatrix, c: u64) -> Result<JumpFunction> {
    jump_function_with_precision(a, c, DEFAULT_PRECISION)
}

pub fn jump_function_with_precision(a: &SeifertMatrix, c: u64, precision: u32) -> Result<JumpFunction> {
    if c == 0 {
        return Err(Error::InvalidArgument("c must be positive".into()));
    }
    let period = Q::from_integer(c.into());
    if a.dim() == 0 {
        return Ok(JumpFunction::zero(period)?.with_precision(precision));
    }
    let circle = CircleAnalysis::new(a)?;
    let sigs = circle.gap_signatures()?;
    let mut jumps = Vec::new();
    // root i sits between gap i (below, larger theta) and gap i + 1 (above)
    for (i, r) in circle.roots.iter().enumerate() {
        let value = sigs[i] - sigs[i + 1];
        if value == 0 {
            continue;
        }
        jumps.push(Jump {
            position: position_of(r, super::Branch::Upper, &period),
            value,
        });
        jumps.push(Jump {
            position: position_of(r, super::Branch::Lower, &period),
            value: -value,
        });
    }
    Ok(JumpFunction::new(period, jumps)?.with_precision(precision))
}

/// Precomposition with `theta -> theta / q`.
pub fn scale_jump_function(delta: &JumpFunction, q_factor: u64) -> Result<JumpFunction> {
    if q_factor == 0 {
        return Err(Error::InvalidArgument("scale factor must be positive".into()));
    }
    let k = Q::from_integer(q_factor.into());
    let jumps = delta
        .jumps
        .iter()
        .map(|j| Jump {
            position: match &j.position {
                Position::Exact(r) => Position::Exact(r * &k),
                alg => alg.clone(),
            },
            value: j.value,
        })
        .collect();
    Ok(JumpFunction {
        ambient_period: &delta.ambient_period * &k,
        jumps,
        precision: delta.precision,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub enum MinimalPeriod {
    Period(Q),
    /// `delta` vanishes identically; every positive number is a period.
    ZeroFunction,
    /// Some translation could not be confirmed or refuted from enclosures;
    /// `candidate` is the smallest period not ruled out.
    NumericUnknown { candidate: Q },
}

fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// The positive generator `c0` of the period group, as `P / k` for the
/// largest `k` such that translation by `P / k` preserves the jumps.
pub fn minimal_period(delta: &JumpFunction) -> MinimalPeriod {
    if delta.jumps.is_empty() {
        return MinimalPeriod::ZeroFunction;
    }
    let p = &delta.ambient_period;
    let n = delta.jumps.len();
    let exact: Option<Vec<(Q, i64)>> = delta
        .jumps
        .iter()
        .map(|j| j.position.as_exact().map(|r| (r.clone(), j.value)))
        .collect();
    if let Some(pts) = exact {
        for k in divisors(n).into_iter().rev() {
            let shift = p / Q::from_integer(k.into());
            let mut moved: Vec<(Q, i64)> = pts
                .iter()
                .map(|(r, v)| {
                    let mut s = r + &shift;
                    if &s >= p {
                        s -= p;
                    }
                    (s, *v)
                })
                .collect();
            moved.sort();
            if moved == pts {
                return MinimalPeriod::Period(shift);
            }
        }
        unreachable!("k = 1 always preserves the jumps");
    }

    let pf = to_f64(p);
    let encl: Vec<(f64, f64, i64)> = delta
        .jumps
        .iter()
        .map(|j| {
            let (a, b) = j.position.enclosure(p, delta.precision);
            (a, b, j.value)
        })
        .collect();
    let overlaps = |a: (f64, f64), b: (f64, f64)| a.0 <= b.1 && b.0 <= a.1;
    for k in divisors(n).into_iter().rev().filter(|&k| k > 1) {
        let sh = pf / k as f64;
        let refuted = encl.iter().any(|&(a, b, v)| {
            let moved = (a + sh, b + sh);
            !encl.iter().filter(|e| e.2 == v).any(|&(c, d, _)| {
                [-pf, 0.0, pf]
                    .iter()
                    .any(|off| overlaps(moved, (c + off, d + off)))
            })
        });
        if !refuted {
            return MinimalPeriod::NumericUnknown {
                candidate: p / Q::from_integer(k.into()),
            };
        }
    }
    MinimalPeriod::Period(p.clone())
}

// ---- JSON ----

#[derive(Serialize, Deserialize)]
struct AlgebraicWire {
    #[serde(with = "crate::rational::serde_q::vec")]
    trace_poly: Vec<Q>,
    #[serde(with = "crate::rational::serde_q")]
    lo: Q,
    #[serde(with = "crate::rational::serde_q")]
    hi: Q,
    branch: Branch,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum PositionWire {
    Exact(String),
    Algebraic(AlgebraicWire),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JumpWire {
    position: PositionWire,
    value: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    approx: Option<f64>,
}

#[derive(Serialize, Deserialize)]
struct JumpFunctionWire {
    #[serde(with = "crate::rational::serde_q")]
    ambient_period: Q,
    jumps: Vec<JumpWire>,
    #[serde(default)]
    exactness: Option<Exactness>,
}

impl Serialize for JumpFunction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let jumps = self
            .jumps
            .iter()
            .map(|j| match &j.position {
                Position::Exact(r) => JumpWire {
                    position: PositionWire::Exact(fmt_rational(r)),
                    value: j.value,
                    approx: None,
                },
                Position::Algebraic(cp) => JumpWire {
                    position: PositionWire::Algebraic(AlgebraicWire {
                        trace_poly: cp.x.poly().coeffs().to_vec(),
                        lo: cp.x.lo().clone(),
                        hi: cp.x.hi().clone(),
                        branch: cp.branch,
                    }),
                    value: j.value,
                    approx: Some(j.position.approx(&self.ambient_period)),
                },
            })
            .collect();
        JumpFunctionWire {
            ambient_period: self.ambient_period.clone(),
            jumps,
            exactness: Some(self.exactness()),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for JumpFunction {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let w = JumpFunctionWire::deserialize(d)?;
        if w.jumps.len() > 10_000 {
            return Err(D::Error::custom("too many jumps"));
        }
        let mut jumps = Vec::with_capacity(w.jumps.len());
        for j in w.jumps {
            let position = match j.position {
                PositionWire::Exact(s) => Position::Exact(parse_rational(&s).map_err(D::Error::custom)?),
                PositionWire::Algebraic(a) => {
                    if a.trace_poly.len() > 64 {
                        return Err(D::Error::custom("trace polynomial degree too large"));
                    }
                    let poly = QPoly::new(a.trace_poly);
                    if a.lo < q(-2) || a.hi > q(2) {
                        return Err(D::Error::custom("circle point outside [-2, 2]"));
                    }
                    let x = AlgebraicReal::try_from_parts(poly, a.lo, a.hi)
                        .ok_or_else(|| D::Error::custom("interval does not isolate a root"))?;
                    Position::Algebraic(CirclePoint { x, branch: a.branch })
                }
            };
            if j.value == 0 {
                return Err(D::Error::custom("zero jump value"));
            }
            jumps.push(Jump {
                position,
                value: j.value,
            });
        }
        if !w.ambient_period.is_positive() {
            return Err(D::Error::custom("ambient period must be positive"));
        }
        let n = jumps.len();
        let f = JumpFunction::new(w.ambient_period, jumps).map_err(D::Error::custom)?;
        if f.jumps.len() != n {
            return Err(D::Error::custom("repeated jump positions"));
        }
        let v = f.violations();
        if !v.is_empty() {
            return Err(D::Error::custom(v.join("; ")));
        }
        Ok(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exact(pairs: &[((i64, i64), i64)], period: i64) -> JumpFunction {
        JumpFunction::new(
            q(period),
            pairs
                .iter()
                .map(|&((a, b), v)| Jump {
                    position: Position::Exact(qr(a, b)),
                    value: v,
                })
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn trefoil_jump_function() {
        let t = SeifertMatrix::trefoil();
        assert_eq!(jump_function(&t, 1).unwrap(), exact(&[((1, 6), -2), ((5, 6), 2)], 1));
        assert_eq!(jump_function(&t, 3).unwrap(), exact(&[((1, 2), -2), ((5, 2), 2)], 3));
        assert!(jump_function(&SeifertMatrix::unknot(), 4).unwrap().is_zero());
        let m = jump_function(&t.mirror(), 1).unwrap();
        assert_eq!(m, exact(&[((1, 6), 2), ((5, 6), -2)], 1));
    }

    #[test]
    fn connected_sum_doubles() {
        let t = SeifertMatrix::trefoil();
        let s = jump_function(&t.connected_sum(&t.reverse()), 1).unwrap();
        assert_eq!(s, exact(&[((1, 6), -4), ((5, 6), 4)], 1));
        let with_unknot = jump_function(&t.connected_sum(&SeifertMatrix::unknot()), 1).unwrap();
        assert_eq!(with_unknot, jump_function(&t, 1).unwrap());
    }

    #[test]
    fn scaling() {
        let d = jump_function(&SeifertMatrix::trefoil(), 1).unwrap();
        assert_eq!(scale_jump_function(&d, 3).unwrap(), exact(&[((1, 2), -2), ((5, 2), 2)], 3));
        assert_eq!(scale_jump_function(&d, 1).unwrap(), d);
        let d2 = scale_jump_function(&d.times(2), 5).unwrap();
        assert_eq!(d2, exact(&[((5, 6), -4), ((25, 6), 4)], 5));
    }

    #[test]
    fn minimal_periods() {
        let d = jump_function(&SeifertMatrix::trefoil(), 1).unwrap();
        assert_eq!(minimal_period(&d), MinimalPeriod::Period(q(1)));
        let d3 = scale_jump_function(&d, 3).unwrap();
        assert_eq!(minimal_period(&d3), MinimalPeriod::Period(q(3)));
        assert_eq!(minimal_period(&JumpFunction::zero(q(1)).unwrap()), MinimalPeriod::ZeroFunction);
        // translation-invariant pattern: period 4 ambient, c0 = 2
        let p = exact(&[((1, 2), 2), ((3, 2), -2), ((5, 2), 2), ((7, 2), -2)], 4);
        assert_eq!(minimal_period(&p), MinimalPeriod::Period(q(2)));
    }

    #[test]
    fn algebraic_positions_order_and_period() {
        let a = SeifertMatrix::from_ints(&[vec![-2, 1], vec![0, -1]]).unwrap();
        let d = jump_function(&a, 1).unwrap();
        assert_eq!(d.jumps().len(), 2);
        assert!(matches!(d.exactness(), Exactness::Numeric { .. }));
        let approx: Vec<f64> = d.jumps().iter().map(|j| j.position.approx(&q(1))).collect();
        let expect = (0.75f64).acos() / std::f64::consts::TAU;
        assert!((approx[0] - expect).abs() < 1e-12 && (approx[1] - (1.0 - expect)).abs() < 1e-12);
        assert_eq!(minimal_period(&d), MinimalPeriod::Period(q(1)));
        // mixing with the trefoil interleaves exact and algebraic positions
        let t = jump_function(&SeifertMatrix::trefoil(), 1).unwrap();
        let s = d.add(&t).unwrap();
        let approx: Vec<f64> = s.jumps().iter().map(|j| j.position.approx(&q(1))).collect();
        assert!(approx.windows(2).all(|w| w[0] < w[1]), "{approx:?}");
        assert!(s.violations().is_empty());
    }

    #[test]
    fn json_round_trip_and_validation() {
        let d = jump_function(&SeifertMatrix::trefoil(), 1).unwrap();
        let s = serde_json::to_string(&d).unwrap();
        assert_eq!(
            s,
            r#"{"ambient_period":"1","jumps":[{"position":"1/6","value":-2},{"position":"5/6","value":2}],"exactness":"exact_rational"}"#
        );
        let back: JumpFunction = serde_json::from_str(&s).unwrap();
        assert_eq!(back, d);
        let a = SeifertMatrix::from_ints(&[vec![-2, 1], vec![0, -1]]).unwrap();
        let alg = jump_function(&a, 2).unwrap();
        let back: JumpFunction = serde_json::from_str(&serde_json::to_string(&alg).unwrap()).unwrap();
        assert_eq!(back, alg);
        for bad in [
            r#"{"ambient_period":"1","jumps":[{"position":"1/6","value":-2}]}"#,
            r#"{"ambient_period":"1","jumps":[{"position":"1/6","value":-3},{"position":"1/3","value":3}]}"#,
            r#"{"ambient_period":"1","jumps":[{"position":"7/6","value":-2},{"position":"1/3","value":2}]}"#,
            r#"{"ambient_period":"0","jumps":[]}"#,
        ] {
            assert!(serde_json::from_str::<JumpFunction>(bad).is_err(), "{bad}");
        }
    }
}
