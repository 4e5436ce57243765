//! Integer Laurent polynomials, resultants, branched-cover homology orders
//! `R_d`, the prime sets `P_d(D)`, torus-knot Alexander polynomials and
//! torsion coefficients.

pub mod cyclotomic;
pub mod laurent;
pub mod primes;
pub mod qpoly;
pub mod realroot;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

pub use laurent::{normalize_alexander, AlexanderPoly, LaurentPoly, Normalized, PolySet};

use crate::error::{Error, Result};
use crate::linalg::det_bareiss;

/// Resultant of the integer polynomials `t^{-low} f` and `t^{-low} g`
/// (both shifted to have nonzero constant term), via the Sylvester matrix.
pub fn resultant(f: &LaurentPoly, g: &LaurentPoly) -> Result<BigInt> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(resultant_dense(&f.to_bigints(), &g.to_bigints()))
}

/// Resultant of two ordinary polynomials given low-to-high.
pub fn resultant_dense(a: &[BigInt], b: &[BigInt]) -> BigInt {
    let m = a.len() - 1;
    let n = b.len() - 1;
    if m == 0 {
        return num_traits::pow(a[0].clone(), n);
    }
    if n == 0 {
        return num_traits::pow(b[0].clone(), m);
    }
    let size = m + n;
    let mut syl = vec![vec![BigInt::zero(); size]; size];
    for row in 0..n {
        for (k, c) in a.iter().rev().enumerate() {
            syl[row][row + k] = c.clone();
        }
    }
    for row in 0..m {
        for (k, c) in b.iter().rev().enumerate() {
            syl[n + row][row + k] = c.clone();
        }
    }
    det_bareiss(&syl)
}

/// `R_d(f) = |prod f(w)|` over the `d`-th roots of unity, computed as
/// `|Res(f, t^d - 1)|`.
pub fn r_d(f: &LaurentPoly, d: u64) -> Result<BigInt> {
    if d == 0 {
        return Err(Error::ZeroDegree);
    }
    if d > 1 << 16 {
        return Err(Error::InvalidArgument(format!("covering degree {d} too large")));
    }
    let mut cyc = vec![BigInt::zero(); d as usize + 1];
    cyc[0] = BigInt::from(-1);
    cyc[d as usize] = BigInt::one();
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(resultant_dense(&f.to_bigints(), &cyc).abs())
}

/// `P_d(D)` stored by its finite complement: the primes dividing some
/// `R_d(f)` with `f` in `D`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeSetComplement {
    pub d: u64,
    pub excluded: BTreeSet<u64>,
}

impl PrimeSetComplement {
    /// Membership of `q` in `P_d(D)`.
    pub fn contains(&self, q: u64) -> bool {
        primes::is_prime(q) && !self.excluded.contains(&q)
    }
}

pub fn excluded_primes(set: &PolySet, d: u64) -> Result<PrimeSetComplement> {
    if primes::prime_power(d).is_none() {
        return Err(Error::NotPrimePower(d));
    }
    let mut excluded = BTreeSet::new();
    for f in set.polys() {
        let r = r_d(f.poly(), d)?;
        // positive for prime-power d and f(1) = ±1
        if r.is_zero() {
            return Err(Error::NotAlexander(format!("R_{d}({f}) = 0")));
        }
        excluded.extend(primes::factor(&r)?.into_keys());
    }
    Ok(PrimeSetComplement { d, excluded })
}

/// `(t^{ab} - 1)(t - 1) / ((t^a - 1)(t^b - 1))`, centered.
pub fn torus_knot_alexander(a: u64, b: u64) -> Result<AlexanderPoly> {
    if a < 2 || b < 2 {
        return Err(Error::InvalidArgument("torus knot parameters must be >= 2".into()));
    }
    if crate::rational::gcd_u64(a, b) != 1 {
        return Err(Error::NotCoprime(a as i64, b as i64));
    }
    let ab = a.checked_mul(b).filter(|&n| n <= 1 << 16).ok_or_else(|| {
        Error::InvalidArgument("torus knot too large".into())
    })?;
    let minus_one = |k: u64| qpoly::QPoly::monomial(crate::rational::q(1), k as usize).sub(&qpoly::QPoly::one());
    let num = minus_one(ab).mul(&minus_one(1));
    let den = minus_one(a).mul(&minus_one(b));
    let quot = num.exact_div(&den).expect("torus knot quotient is exact");
    AlexanderPoly::new(LaurentPoly::from_qpoly(&quot)?)
}

/// `t_i = sum_{j >= 1} j * a_{i+j}` for `i >= 0`, trailing zeros trimmed.
pub fn torsion_coefficients(f: &AlexanderPoly) -> Vec<i64> {
    let g = f.half_span() as i64;
    let mut t: Vec<i64> = (0..g)
        .map(|i| (1..=g - i).map(|j| j * f.coeff(i + j)).sum())
        .collect();
    while t.last() == Some(&0) {
        t.pop();
    }
    t
}
