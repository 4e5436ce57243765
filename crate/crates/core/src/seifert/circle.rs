//! Roots of the Alexander polynomial on the unit circle and exact signature
//! evaluation.
//!
//! For `w = e^{2 pi i t}` with `0 < t < 1/2`, dividing the Hermitian matrix
//! `(1-w)A + (1-conj w)A^T` by `1 - cos(2 pi t) > 0` gives `S + i u N` with
//! `S = A + A^T`, `N = A^T - A` and `u = cot(pi t)`. The signature only
//! depends on where `x = 2cos(2 pi t)` sits among the roots of the trace form
//! of `det(A - tA^T)`, so it is evaluated at a rational `u` in the same gap.

use std::collections::BTreeSet;

use num_integer::Integer;
use num_traits::{One, Zero};

use super::trig::two_cos_2pi;
use super::jumps::{Branch, CirclePoint, Position};
use super::{SeifertMatrix, DEFAULT_PRECISION};
use crate::error::{Error, Result};
use crate::linalg::{self, QMatrix};
use crate::polyalg::cyclotomic::{cyclotomic, orders_up_to_degree, real_cyclotomic};
use crate::polyalg::qpoly::QPoly;
use crate::polyalg::realroot::{AlgebraicReal, Sturm};
use crate::rational::{q, qr, Q};

#[derive(Clone, Debug)]
pub(crate) struct CircleRoot {
    pub x: AlgebraicReal,
    /// `Some((j, k))` when `x = 2cos(2 pi j/k)` with `gcd(j, k) = 1`, `j < k/2`.
    pub label: Option<(u64, u64)>,
}

pub(crate) struct CircleAnalysis {
    sym: QMatrix,
    skew: QMatrix,
    trace: Option<Sturm>,
    /// Ascending in `x`, pairwise separated, all inside `(-2, 2)`.
    pub roots: Vec<CircleRoot>,
    /// Orders `k >= 3` of cyclotomic factors.
    cyclotomic_orders: BTreeSet<u64>,
    pub minus_one_root: bool,
}

impl CircleAnalysis {
    pub fn new(a: &SeifertMatrix) -> Result<Self> {
        let sym = linalg::add(a.entries(), &linalg::transpose(a.entries()));
        let skew = linalg::sub(&linalg::transpose(a.entries()), a.entries());
        let delta = a.alexander_qpoly();
        if delta.is_zero() {
            return Err(Error::DegenerateForm);
        }
        let (delta, _) = delta.strip_x_power();
        let (delta, _) = delta.remove_factor(&cyclotomic(1));
        let (reduced, minus_one) = delta.remove_factor(&cyclotomic(2));
        let deg = reduced.degree().unwrap_or(0);
        let trace = if deg == 0 {
            QPoly::one()
        } else {
            reduced
                .palindromic_to_trace()
                .or_else(|| reduced.neg().palindromic_to_trace())
                .ok_or_else(|| {
                    Error::InvalidArgument("det(A - tA^T) is not palindromic".into())
                })?
        };
        let mut cyclotomic_orders = BTreeSet::new();
        for k in orders_up_to_degree(deg).into_iter().filter(|&k| k >= 3) {
            if reduced.exact_div(&cyclotomic(k)).is_some() {
                cyclotomic_orders.insert(k);
            }
        }

        let mut roots = Vec::new();
        let mut sturm = None;
        if trace.degree().unwrap_or(0) > 0 {
            let sq = trace.squarefree_part();
            let s = Sturm::new(&sq);
            roots = s
                .isolate(&q(-2), &q(2))
                .into_iter()
                .map(|x| CircleRoot { x, label: None })
                .collect();
            sturm = Some(s);
        }
        for &k in &cyclotomic_orders {
            let psi = real_cyclotomic(k);
            let psi_roots = Sturm::new(&psi).isolate(&q(-2), &q(2));
            // ascending x <-> descending j
            let mut js: Vec<u64> = (1..k).filter(|&j| 2 * j < k && j.gcd(&k) == 1).collect();
            js.reverse();
            debug_assert_eq!(js.len(), psi_roots.len());
            for root in roots.iter_mut() {
                if let Some(idx) = psi_roots.iter().position(|r| r.equals(&root.x)) {
                    root.label = Some((js[idx], k));
                }
            }
        }
        separate(&mut roots);
        Ok(CircleAnalysis {
            sym,
            skew,
            trace: sturm,
            roots,
            cyclotomic_orders,
            minus_one_root: minus_one > 0,
        })
    }

    fn dim(&self) -> usize {
        self.sym.len()
    }

    /// Signature of `S + i u N`.
    pub fn signature_u(&self, u: &Q) -> Result<i64> {
        let n = self.dim();
        let mut m = vec![vec![Q::zero(); 2 * n]; 2 * n];
        for i in 0..n {
            for j in 0..n {
                let s = &self.sym[i][j];
                let y = u * &self.skew[i][j];
                m[i][j] = s.clone();
                m[n + i][n + j] = s.clone();
                m[i][n + j] = -y.clone();
                m[n + i][j] = y;
            }
        }
        let inertia = linalg::inertia(&m);
        if inertia.zero != 0 {
            return Err(Error::JumpPoint(format!("u = {u}")));
        }
        Ok(inertia.signature() / 2)
    }

    /// Signature at any `x` strictly inside the gap `(a, b)` of the root set.
    pub fn signature_in_gap(&self, a: &Q, b: &Q) -> Result<i64> {
        self.signature_u(&sample_u(a, b))
    }

    /// Signatures of the gaps, ascending in `x`: `roots.len() + 1` values.
    pub fn gap_signatures(&self) -> Result<Vec<i64>> {
        let mut bounds = vec![q(-2)];
        for r in &self.roots {
            bounds.push(r.x.lo().clone());
            bounds.push(r.x.hi().clone());
        }
        bounds.push(q(2));
        bounds
            .chunks(2)
            .map(|ab| self.signature_in_gap(&ab[0], &ab[1]))
            .collect()
    }

    /// Whether `e^{2 pi i t}` is a root of `det(A - tA^T)`.
    pub fn is_jump_point(&self, t: &Q) -> bool {
        let k = t.denom();
        if k == &num_bigint::BigInt::from(2) {
            return self.minus_one_root;
        }
        use num_traits::ToPrimitive;
        k.to_u64()
            .is_some_and(|k| self.cyclotomic_orders.contains(&k))
    }

    pub fn signature_at(&self, t: &Q, precision: u32) -> Result<i64> {
        if t <= &Q::zero() || t >= &Q::one() {
            return Err(Error::InvalidArgument(format!("t = {t} must lie in (0, 1)")));
        }
        if self.is_jump_point(t) {
            return Err(Error::JumpPoint(t.to_string()));
        }
        if t == &qr(1, 2) {
            return self.signature_u(&Q::zero());
        }
        let Some(trace) = &self.trace else {
            return self.signature_u(&Q::one());
        };
        let mut bits = precision.max(32);
        loop {
            let (lo, hi) = two_cos_2pi(t, bits);
            let p = trace.poly();
            if !p.eval(&lo).is_zero() && !p.eval(&hi).is_zero() && trace.count_open(&lo, &hi) == 0 {
                // the enclosure lies in the gap above the first i roots
                let i = if lo > q(-2) { trace.count_open(&q(-2), &lo) } else { 0 };
                let a = if i == 0 { q(-2) } else { self.roots[i - 1].x.hi().clone() };
                let b = match self.roots.get(i) {
                    Some(r) => r.x.lo().clone(),
                    None => q(2),
                };
                return self.signature_in_gap(&a, &b);
            }
            bits *= 2;
            if bits > 1 << 16 {
                return Err(Error::PrecisionExhausted);
            }
        }
    }

    pub fn positions(&self) -> Vec<Position> {
        let mut out = Vec::new();
        for r in self.roots.iter().rev() {
            out.push(position_of(r, Branch::Upper, &Q::one()));
        }
        if self.minus_one_root {
            out.push(Position::Exact(qr(1, 2)));
        }
        for r in &self.roots {
            out.push(position_of(r, Branch::Lower, &Q::one()));
        }
        out
    }
}

pub(crate) fn position_of(r: &CircleRoot, branch: Branch, period: &Q) -> Position {
    match (r.label, branch) {
        (Some((j, k)), Branch::Upper) => Position::Exact(period * Q::new(j.into(), k.into())),
        (Some((j, k)), Branch::Lower) => Position::Exact(period * Q::new((k - j).into(), k.into())),
        (None, b) => Position::Algebraic(CirclePoint {
            x: r.x.clone(),
            branch: b,
        }),
    }
}

/// Refine isolating intervals until they are pairwise disjoint and clear of
/// the endpoints `x = -2, 2`.
fn separate(roots: &mut [CircleRoot]) {
    if let Some(first) = roots.first_mut() {
        while first.x.lo() <= &q(-2) {
            first.x.bisect();
        }
    }
    if let Some(last) = roots.last_mut() {
        while last.x.hi() >= &q(2) {
            last.x.bisect();
        }
    }
    for i in 1..roots.len() {
        let (left, right) = roots.split_at_mut(i);
        let a = &mut left[i - 1].x;
        let b = &mut right[0].x;
        while a.hi() >= b.lo() {
            a.bisect();
            b.bisect();
        }
    }
}

/// Rational `u > 0` with `x(u) = 2(u^2 - 1)/(u^2 + 1)` in `(a, b)`, where
/// `-2 <= a < b <= 2`.
fn sample_u(a: &Q, b: &Q) -> Q {
    let w = |x: &Q| (q(2) + x) / (q(2) - x);
    let wl = if a <= &q(-2) { Q::zero() } else { w(a) };
    if b >= &q(2) {
        return wl.floor() + Q::one();
    }
    let wh = w(b);
    let (mut lo, mut hi) = (Q::zero(), wh.clone().max(Q::one()));
    loop {
        let mid = (&lo + &hi) / q(2);
        let m2 = &mid * &mid;
        if m2 <= wl {
            lo = mid;
        } else if m2 >= wh {
            hi = mid;
        } else {
            return mid;
        }
    }
}

/// `sign((1 - w)A + (1 - conj w)A^T)` at `w = e^{2 pi i t}`, exactly.
pub fn signature_at(a: &SeifertMatrix, t: &Q) -> Result<i64> {
    signature_at_with_precision(a, t, DEFAULT_PRECISION)
}

pub fn signature_at_with_precision(a: &SeifertMatrix, t: &Q, precision: u32) -> Result<i64> {
    if a.dim() == 0 {
        if t <= &Q::zero() || t >= &Q::one() {
            return Err(Error::InvalidArgument(format!("t = {t} must lie in (0, 1)")));
        }
        return Ok(0);
    }
    CircleAnalysis::new(a)?.signature_at(t, precision)
}

/// Positions `t in (0, 1)` where `det(A - tA^T)` vanishes at `e^{2 pi i t}`.
/// Rational when the root lies on a cyclotomic factor.
pub fn jump_locations(a: &SeifertMatrix) -> Result<Vec<Position>> {
    Ok(CircleAnalysis::new(a)?.positions())
}
