//! Real root isolation by Sturm sequences, and real algebraic numbers given
//! by a squarefree polynomial and an isolating interval.

use std::cmp::Ordering;

use num_traits::{One, Zero};

use super::qpoly::QPoly;
use crate::rational::{q, qr, Q};

pub struct Sturm {
    chain: Vec<QPoly>,
}

impl Sturm {
    /// `p` must be squarefree and nonzero.
    pub fn new(p: &QPoly) -> Self {
        Sturm {
            chain: p.sturm_chain(),
        }
    }

    pub fn poly(&self) -> &QPoly {
        &self.chain[0]
    }

    fn variations<I: Iterator<Item = i32>>(signs: I) -> usize {
        let mut last = 0;
        let mut v = 0;
        for s in signs.filter(|&s| s != 0) {
            if last != 0 && s != last {
                v += 1;
            }
            last = s;
        }
        v
    }

    fn var_at(&self, x: &Q) -> usize {
        Self::variations(self.chain.iter().map(|p| p.sign_at(x)))
    }

    /// Number of distinct real roots in the open interval `(a, b)`.
    pub fn count_open(&self, a: &Q, b: &Q) -> usize {
        if a >= b {
            return 0;
        }
        // V(a) - V(b) counts roots in (a, b]
        let n = self.var_at(a) - self.var_at(b);
        if self.poly().eval(b).is_zero() {
            n - 1
        } else {
            n
        }
    }

    pub fn count_all(&self) -> usize {
        let lo = Self::variations(self.chain.iter().map(|p| p.sign_at_neg_inf()));
        let hi = Self::variations(self.chain.iter().map(|p| p.sign_at_pos_inf()));
        lo - hi
    }

    /// Isolating intervals for all roots in the open interval `(a, b)`,
    /// sorted ascending. Each returned value is either an exact rational root
    /// or an open interval with non-root endpoints containing exactly one root.
    pub fn isolate(&self, a: &Q, b: &Q) -> Vec<AlgebraicReal> {
        let p = self.poly();
        let mut out = Vec::new();
        let mut stack = vec![(a.clone(), b.clone())];
        while let Some((lo, hi)) = stack.pop() {
            let n = self.count_open(&lo, &hi);
            if n == 0 {
                continue;
            }
            if n == 1 && !p.eval(&lo).is_zero() && !p.eval(&hi).is_zero() {
                out.push(AlgebraicReal::from_interval(p.clone(), lo, hi));
                continue;
            }
            if n == 1 {
                out.push(self.shrink_to_clean(lo, hi));
                continue;
            }
            let mid = (&lo + &hi) / q(2);
            if p.eval(&mid).is_zero() {
                out.push(AlgebraicReal::rational(mid.clone()));
            }
            stack.push((lo, mid.clone()));
            stack.push((mid, hi));
        }
        out.sort_by(|x, y| x.lo.cmp(&y.lo));
        out
    }

    /// Interval with one root whose endpoints are roots: pull the endpoints
    /// inward until they are not.
    fn shrink_to_clean(&self, mut lo: Q, mut hi: Q) -> AlgebraicReal {
        let p = self.poly();
        let mut k = 1u32;
        while p.eval(&lo).is_zero() {
            let cand = &lo + (&hi - &lo) / Q::from_integer(num_bigint::BigInt::one() << k);
            if !p.eval(&cand).is_zero() && self.count_open(&cand, &hi) == 1 {
                lo = cand;
            } else {
                k += 1;
            }
        }
        k = 1;
        while p.eval(&hi).is_zero() {
            let cand = &hi - (&hi - &lo) / Q::from_integer(num_bigint::BigInt::one() << k);
            if !p.eval(&cand).is_zero() && self.count_open(&lo, &cand) == 1 {
                hi = cand;
            } else {
                k += 1;
            }
        }
        AlgebraicReal::from_interval(p.clone(), lo, hi)
    }
}

/// A real algebraic number: either an exact rational, or the unique root of a
/// squarefree polynomial in an open interval whose endpoints are not roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraicReal {
    poly: QPoly,
    lo: Q,
    hi: Q,
    exact: bool,
}

impl AlgebraicReal {
    pub fn rational(r: Q) -> Self {
        AlgebraicReal {
            poly: QPoly::linear_root(r.clone()),
            lo: r.clone(),
            hi: r,
            exact: true,
        }
    }

    pub(crate) fn from_interval(poly: QPoly, lo: Q, hi: Q) -> Self {
        debug_assert!(lo < hi);
        AlgebraicReal {
            poly,
            lo,
            hi,
            exact: false,
        }
    }

    /// Builds from external data, validating the isolation claims.
    pub fn try_from_parts(poly: QPoly, lo: Q, hi: Q) -> Option<Self> {
        if poly.degree().unwrap_or(0) == 0 {
            return None;
        }
        if lo == hi {
            return poly.eval(&lo).is_zero().then(|| Self::rational(lo));
        }
        if lo > hi {
            return None;
        }
        let sq = poly.squarefree_part();
        if sq.eval(&lo).is_zero() || sq.eval(&hi).is_zero() {
            return None;
        }
        (Sturm::new(&sq).count_open(&lo, &hi) == 1).then(|| Self::from_interval(sq, lo, hi))
    }

    pub fn is_rational(&self) -> bool {
        self.exact
    }

    pub fn poly(&self) -> &QPoly {
        &self.poly
    }

    pub fn lo(&self) -> &Q {
        &self.lo
    }

    pub fn hi(&self) -> &Q {
        &self.hi
    }

    pub fn width(&self) -> Q {
        &self.hi - &self.lo
    }

    /// One bisection step.
    pub fn bisect(&mut self) {
        if self.exact {
            return;
        }
        let mid = (&self.lo + &self.hi) / q(2);
        let sm = self.poly.sign_at(&mid);
        if sm == 0 {
            *self = Self::rational(mid);
            return;
        }
        if self.poly.sign_at(&self.lo) != sm {
            self.hi = mid;
        } else {
            self.lo = mid;
        }
    }

    pub fn refine_to(&mut self, width: &Q) {
        while !self.exact && &self.width() > width {
            self.bisect();
        }
    }

    pub fn refine_bits(&mut self, bits: u32) {
        let w = Q::new(One::one(), num_bigint::BigInt::one() << bits);
        self.refine_to(&w);
    }

    /// Exact equality test via the gcd of the defining polynomials.
    pub fn equals(&self, other: &Self) -> bool {
        match (self.exact, other.exact) {
            (true, true) => self.lo == other.lo,
            (true, false) => other.contains_root_at(&self.lo),
            (false, true) => self.contains_root_at(&other.lo),
            (false, false) => {
                let lo = (&self.lo).max(&other.lo).clone();
                let hi = (&self.hi).min(&other.hi).clone();
                if lo >= hi {
                    return false;
                }
                let g = self.poly.gcd(&other.poly);
                if g.degree().unwrap_or(0) == 0 {
                    return false;
                }
                Sturm::new(&g).count_open(&lo, &hi) > 0
            }
        }
    }

    fn contains_root_at(&self, r: &Q) -> bool {
        &self.lo < r && r < &self.hi && self.poly.eval(r).is_zero()
    }

    /// Exact comparison; refines both operands as needed.
    pub fn cmp_exact(&mut self, other: &mut Self) -> Ordering {
        if self.equals(other) {
            return Ordering::Equal;
        }
        loop {
            if self.hi < other.lo || (self.hi == other.lo && !(self.exact && other.exact)) {
                return Ordering::Less;
            }
            if other.hi < self.lo || (other.hi == self.lo && !(self.exact && other.exact)) {
                return Ordering::Greater;
            }
            if self.exact && other.exact {
                return self.lo.cmp(&other.lo);
            }
            if self.width() >= other.width() {
                self.bisect();
            } else {
                other.bisect();
            }
        }
    }

    /// Compares against a rational, refining as needed.
    pub fn cmp_rational(&mut self, r: &Q) -> Ordering {
        let mut other = Self::rational(r.clone());
        self.cmp_exact(&mut other)
    }

    pub fn approx(&self) -> f64 {
        crate::rational::to_f64(&((&self.lo + &self.hi) / q(2)))
    }
}

/// Rational strictly between `a` and `b` with a small denominator.
pub fn simple_between(a: &Q, b: &Q) -> Q {
    debug_assert!(a < b);
    // Stern-Brocot descent on the integer part offset.
    let base = a.floor();
    let lo = a - &base;
    let hi = b - &base;
    if hi > Q::one() {
        let c = lo.floor() + Q::one();
        if c < hi {
            return c + base;
        }
    }
    let (mut ln, mut ld) = (num_bigint::BigInt::zero(), num_bigint::BigInt::one());
    let (mut rn, mut rd) = (num_bigint::BigInt::one(), num_bigint::BigInt::zero());
    loop {
        let mn = &ln + &rn;
        let md = &ld + &rd;
        let m = Q::new(mn.clone(), md.clone());
        if m <= lo {
            ln = mn;
            ld = md;
        } else if m >= hi {
            rn = mn;
            rd = md;
        } else {
            return m + base;
        }
    }
}

pub fn midpoint(a: &Q, b: &Q) -> Q {
    (a + b) * qr(1, 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn isolates_roots_of_x2_minus_2() {
        let p = QPoly::from_ints(&[-2, 0, 1]);
        let s = Sturm::new(&p);
        assert_eq!(s.count_all(), 2);
        let roots = s.isolate(&q(-2), &q(2));
        assert_eq!(roots.len(), 2);
        let mut r = roots[1].clone();
        r.refine_bits(30);
        assert!((r.approx() - 2f64.sqrt()).abs() < 1e-8);
    }

    #[test]
    fn exact_rational_roots_and_boundaries() {
        // (x - 1)(x + 1) x on the open interval (-1, 2): only 0 and 1
        let p = QPoly::from_ints(&[0, -1, 0, 1]);
        let s = Sturm::new(&p);
        let roots = s.isolate(&q(-1), &q(2));
        assert_eq!(roots.len(), 2);
        assert!(roots[0].equals(&AlgebraicReal::rational(q(0))));
        assert!(roots[1].equals(&AlgebraicReal::rational(q(1))));
    }

    #[test]
    fn equality_and_ordering() {
        let p = QPoly::from_ints(&[-2, 0, 1]);
        let p2 = p.mul(&QPoly::from_ints(&[-3, 1]));
        let a = Sturm::new(&p).isolate(&q(0), &q(2)).remove(0);
        let b = Sturm::new(&p2).isolate(&q(0), &q(2)).remove(0);
        assert!(a.equals(&b));
        let mut c = a.clone();
        assert_eq!(c.cmp_rational(&qr(141, 100)), Ordering::Greater);
        assert_eq!(c.cmp_rational(&qr(142, 100)), Ordering::Less);
    }

    #[test]
    fn simple_between_is_strict() {
        let cases = [(qr(1, 3), qr(1, 2)), (q(-5), q(7)), (qr(-7, 3), qr(-2, 1)), (qr(99, 100), qr(101, 100))];
        for (a, b) in cases {
            let m = simple_between(&a, &b);
            assert!(a < m && m < b, "{a} {m} {b}");
        }
    }
}
