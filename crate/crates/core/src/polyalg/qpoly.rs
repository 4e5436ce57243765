//! Dense univariate polynomials over Q.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::rational::{fmt_rational, sign, Q};

/// Coefficients little-endian, no trailing zeros. The zero polynomial is the
/// empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QPoly {
    coeffs: Vec<Q>,
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(fmt_rational).collect();
        write!(f, "QPoly[{}]", parts.join(", "))
    }
}

impl QPoly {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Q::from_integer(c.into())).collect())
    }

    pub fn from_bigints(coeffs: &[BigInt]) -> Self {
        Self::new(coeffs.iter().map(|c| Q::from_integer(c.clone())).collect())
    }

    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        Self::new(vec![c])
    }

    /// `x - r`
    pub fn linear_root(r: Q) -> Self {
        Self::new(vec![-r, Q::one()])
    }

    pub fn monomial(c: Q, deg: usize) -> Self {
        let mut v = vec![Q::zero(); deg + 1];
        v[deg] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> Option<&Q> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> Q {
        self.coeffs.get(i).cloned().unwrap_or_else(Q::zero)
    }

    pub fn eval(&self, x: &Q) -> Q {
        let mut acc = Q::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn sign_at(&self, x: &Q) -> i32 {
        sign(&self.eval(x))
    }

    /// Sign as x -> +infinity.
    pub fn sign_at_pos_inf(&self) -> i32 {
        self.lc().map_or(0, sign)
    }

    pub fn sign_at_neg_inf(&self) -> i32 {
        match self.degree() {
            None => 0,
            Some(d) if d % 2 == 0 => self.sign_at_pos_inf(),
            Some(_) => -self.sign_at_pos_inf(),
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|a| -a).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Q::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lc = d.lc().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Q::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &lc;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * dc;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// Quotient if `d` divides `self` exactly.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    pub fn monic(&self) -> Self {
        match self.lc() {
            None => Self::zero(),
            Some(lc) => self.scale(&(Q::one() / lc)),
        }
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Q::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    /// `self / gcd(self, self')`, monic.
    pub fn squarefree_part(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.exact_div(&g).expect("gcd divides").monic()
    }

    /// Strips factors of x; returns the power removed.
    pub fn strip_x_power(&self) -> (Self, usize) {
        let k = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        (Self::new(self.coeffs[k..].to_vec()), k)
    }

    /// Divides out every factor of `f`, returning the quotient and multiplicity.
    pub fn remove_factor(&self, f: &Self) -> (Self, u32) {
        let mut cur = self.clone();
        let mut mult = 0;
        while let Some(q) = cur.exact_div(f) {
            cur = q;
            mult += 1;
        }
        (cur, mult)
    }

    /// Whether the coefficient list reads the same reversed, up to a sign.
    pub fn palindromic_sign(&self) -> Option<i32> {
        let n = self.coeffs.len();
        let rev_eq = |s: i32| {
            (0..n).all(|i| {
                let a = &self.coeffs[i];
                let b = &self.coeffs[n - 1 - i];
                if s > 0 {
                    a == b
                } else {
                    a == &-b
                }
            })
        };
        if rev_eq(1) {
            Some(1)
        } else if rev_eq(-1) {
            Some(-1)
        } else {
            None
        }
    }

    /// For a palindromic `P(t)` of even degree `2m`, the polynomial `g` with
    /// `t^{-m} P(t) = g(t + 1/t)`.
    pub fn palindromic_to_trace(&self) -> Option<Self> {
        let deg = self.degree()?;
        if deg % 2 != 0 || self.palindromic_sign() != Some(1) {
            return None;
        }
        let m = deg / 2;
        // s_k(x) = t^k + t^{-k} in terms of x = t + 1/t
        let x = Self::from_ints(&[0, 1]);
        let mut s_prev = Self::from_ints(&[2]);
        let mut s_cur = x.clone();
        let mut g = Self::constant(self.coeffs[m].clone());
        for k in 1..=m {
            g = g.add(&s_cur.scale(&self.coeffs[m + k]));
            let next = x.mul(&s_cur).sub(&s_prev);
            s_prev = s_cur;
            s_cur = next;
        }
        Some(g)
    }

    /// Sturm chain of a squarefree polynomial.
    pub fn sturm_chain(&self) -> Vec<Self> {
        let mut chain = vec![self.clone(), self.derivative()];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() {
                chain.pop();
                break;
            }
            let r = chain[n - 2].div_rem(&chain[n - 1]).1;
            if r.is_zero() {
                break;
            }
            chain.push(r.neg());
        }
        chain
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn abs_coeff_max(&self) -> Q {
        self.coeffs
            .iter()
            .map(|c| c.abs())
            .fold(Q::zero(), |a, b| if b > a { b } else { a })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn division_and_gcd() {
        let a = QPoly::from_ints(&[-1, 0, 1]); // x^2 - 1
        let b = QPoly::from_ints(&[1, 1]);
        let (quot, rem) = a.div_rem(&b);
        assert_eq!(quot, QPoly::from_ints(&[-1, 1]));
        assert!(rem.is_zero());
        let c = QPoly::from_ints(&[1, 2, 1]);
        assert_eq!(a.gcd(&c), QPoly::from_ints(&[1, 1]));
        assert_eq!(c.squarefree_part(), QPoly::from_ints(&[1, 1]));
    }

    #[test]
    fn trace_form_of_trefoil_and_figure_eight() {
        // t^2 - t + 1 -> x - 1 ; -t^2 + 3t - 1 -> 3 - x
        let tref = QPoly::from_ints(&[1, -1, 1]);
        assert_eq!(tref.palindromic_to_trace().unwrap(), QPoly::from_ints(&[-1, 1]));
        let fig8 = QPoly::from_ints(&[-1, 3, -1]);
        assert_eq!(fig8.palindromic_to_trace().unwrap(), QPoly::from_ints(&[3, -1]));
        // t^4 + 1 -> x^2 - 2
        let p = QPoly::from_ints(&[1, 0, 0, 0, 1]);
        assert_eq!(p.palindromic_to_trace().unwrap(), QPoly::from_ints(&[-2, 0, 1]));
    }

    #[test]
    fn eval_and_signs() {
        let p = QPoly::from_ints(&[2, -3, 1]);
        assert_eq!(p.eval(&q(3)), q(2));
        assert_eq!(p.sign_at_neg_inf(), 1);
        assert_eq!(QPoly::from_ints(&[0, -1]).sign_at_neg_inf(), 1);
    }
}
