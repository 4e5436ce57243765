//! Rigorous rational enclosures of pi and of `2cos(2*pi*t)` for rational `t`.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::rational::{ceil_dyadic, floor_dyadic, q, qr, Q};

/// `atan(1/k)` bracketed by consecutive partial sums of its alternating series.
fn atan_inv(k: i64, bits: u32) -> (Q, Q) {
    let kk = q(k * k);
    let eps = Q::new(BigInt::one(), BigInt::one() << (bits + 8));
    let mut pow = qr(1, k); // 1/k^{2n+1}
    let mut sum = Q::zero();
    let mut n = 0i64;
    loop {
        let term = &pow / q(2 * n + 1);
        let next = if n % 2 == 0 { &sum + &term } else { &sum - &term };
        if term < eps {
            return if sum < next { (sum, next) } else { (next, sum) };
        }
        sum = next;
        pow /= &kk;
        n += 1;
    }
}

fn pi_enclosure_uncached(bits: u32) -> (Q, Q) {
    // Machin: pi = 16 atan(1/5) - 4 atan(1/239)
    let (a_lo, a_hi) = atan_inv(5, bits);
    let (b_lo, b_hi) = atan_inv(239, bits);
    let lo = q(16) * a_lo - q(4) * b_hi;
    let hi = q(16) * a_hi - q(4) * b_lo;
    (floor_dyadic(&lo, bits + 4), ceil_dyadic(&hi, bits + 4))
}

const CACHED_BITS: u32 = 1024;

pub fn pi_enclosure(bits: u32) -> (Q, Q) {
    static CACHE: OnceLock<(Q, Q)> = OnceLock::new();
    if bits <= CACHED_BITS {
        CACHE.get_or_init(|| pi_enclosure_uncached(CACHED_BITS)).clone()
    } else {
        pi_enclosure_uncached(bits)
    }
}

fn div_floor(a: &BigInt, d: &BigInt) -> BigInt {
    a.div_floor(d)
}

fn div_ceil(a: &BigInt, d: &BigInt) -> BigInt {
    -(-a).div_floor(d)
}

/// Bracket of `cos(y)` for dyadic `0 <= y <= 3.2` with denominator dividing
/// `2^(bits + 8)`. Fixed-point interval arithmetic at `bits + 40` bits: each
/// Taylor term `y^2k / (2k)!` is carried as an integer interval, and the
/// alternating tail is bounded by the last term.
fn cos_bracket(y: &Q, bits: u32) -> (Q, Q) {
    let w = bits + 40;
    let one = BigInt::one() << w;
    let yy = y * Q::from_integer(one.clone());
    debug_assert!(yy.is_integer());
    let yi = yy.to_integer();
    let y2 = &yi * &yi;
    let (y2_lo, y2_hi) = (div_floor(&y2, &one), div_ceil(&y2, &one));
    let eps = BigInt::one() << 32; // 2^-(bits + 8) in units of 2^-w
    let (mut a_lo, mut a_hi) = (one.clone(), one.clone());
    let (mut lo, mut hi) = (one.clone(), one.clone());
    let mut k = 0i64;
    loop {
        k += 1;
        let den = &one * BigInt::from((2 * k - 1) * (2 * k));
        a_lo = div_floor(&(&a_lo * &y2_lo), &den);
        a_hi = div_ceil(&(&a_hi * &y2_hi), &den);
        if k % 2 == 1 {
            lo -= &a_hi;
            hi -= &a_lo;
        } else {
            lo += &a_lo;
            hi += &a_hi;
        }
        // terms decrease from k = 1 on since y^2 < 12
        if k >= 2 && a_hi < eps {
            lo -= &a_hi;
            hi += &a_hi;
            return (Q::new(lo, one.clone()), Q::new(hi, one));
        }
        assert!(k < 10_000, "cosine series failed to converge");
    }
}

/// Enclosure `[lo, hi]` of `2cos(2*pi*t)` with width about `2^-bits`.
pub fn two_cos_2pi(t: &Q, bits: u32) -> (Q, Q) {
    let mut r = t - t.floor();
    if r > qr(1, 2) {
        r = Q::one() - r;
    }
    if r.is_zero() {
        return (q(2), q(2));
    }
    if r == qr(1, 2) {
        return (q(-2), q(-2));
    }
    let (pi_lo, pi_hi) = pi_enclosure(bits + 8);
    let y_lo = floor_dyadic(&(q(2) * &r * pi_lo), bits + 8);
    let y_hi = ceil_dyadic(&(q(2) * &r * pi_hi), bits + 8);
    // cos is decreasing on [0, pi]
    let (c_lo, _) = cos_bracket(&y_hi, bits + 2);
    let (_, c_hi) = cos_bracket(&y_lo, bits + 2);
    let lo = (q(2) * c_lo).max(q(-2));
    let hi = (q(2) * c_hi).min(q(2));
    (lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::to_f64;

    #[test]
    fn pi_digits() {
        let (lo, hi) = pi_enclosure(200);
        // 50 decimals of pi, truncated
        let p = crate::rational::parse_rational(
            "314159265358979323846264338327950288419716939937510/100000000000000000000000000000000000000000000000000",
        )
        .unwrap();
        let tol = crate::rational::parse_rational(&format!("1/1{}", "0".repeat(49))).unwrap();
        assert!(p <= hi && &lo - &p < tol);
        assert!(lo < hi);
    }

    #[test]
    fn cos_enclosures_contain_known_values() {
        for (t, expect) in [(qr(1, 6), 1.0), (qr(1, 4), 0.0), (qr(1, 3), -1.0), (qr(5, 6), 1.0)] {
            let (lo, hi) = two_cos_2pi(&t, 100);
            let e = crate::rational::parse_rational(&format!("{}", expect as i64)).unwrap();
            assert!(lo <= e && e <= hi, "t = {t}");
            assert!(&hi - &lo < qr(1, 1 << 40));
        }
        let (lo, hi) = two_cos_2pi(&qr(1, 7), 64);
        let v = 2.0 * (2.0 * std::f64::consts::PI / 7.0).cos();
        assert!((to_f64(&lo) - v).abs() < 1e-12 && (to_f64(&hi) - v).abs() < 1e-12);
    }
}
