use super::primes::euler_phi;
use super::qpoly::QPoly;

fn mobius(n: u64) -> i32 {
    let f = super::primes::factor_u64(n);
    if f.values().any(|&e| e > 1) {
        0
    } else if f.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// The `k`-th cyclotomic polynomial, as `prod_{d | k} (t^d - 1)^{mu(k/d)}`.
pub fn cyclotomic(k: u64) -> QPoly {
    assert!(k >= 1);
    let mut num = QPoly::one();
    let mut den = QPoly::one();
    for d in (1..=k).filter(|d| k.is_multiple_of(*d)) {
        let f = QPoly::monomial(crate::rational::q(1), d as usize).sub(&QPoly::one());
        match mobius(k / d) {
            1 => num = num.mul(&f),
            -1 => den = den.mul(&f),
            _ => {}
        }
    }
    num.exact_div(&den).expect("cyclotomic divisibility")
}

/// All `k` with `phi(k) <= deg`, ascending.
pub fn orders_up_to_degree(deg: usize) -> Vec<u64> {
    // phi(k) >= sqrt(k / 2)
    let bound = 2 * (deg as u64 + 1).pow(2) + 2;
    (1..=bound).filter(|&k| euler_phi(k) as usize <= deg).collect()
}

/// Minimal polynomial of `2cos(2*pi/k)` for `k >= 3`: the trace form of `Phi_k`.
pub fn real_cyclotomic(k: u64) -> QPoly {
    assert!(k >= 3);
    cyclotomic(k)
        .palindromic_to_trace()
        .expect("cyclotomic polynomials of order >= 3 are palindromic of even degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic(1), QPoly::from_ints(&[-1, 1]));
        assert_eq!(cyclotomic(2), QPoly::from_ints(&[1, 1]));
        assert_eq!(cyclotomic(6), QPoly::from_ints(&[1, -1, 1]));
        assert_eq!(cyclotomic(12), QPoly::from_ints(&[1, 0, -1, 0, 1]));
        assert_eq!(real_cyclotomic(6), QPoly::from_ints(&[-1, 1]));
        assert_eq!(real_cyclotomic(5), QPoly::from_ints(&[-1, 1, 1]));
    }

    #[test]
    fn orders_cover_degree() {
        assert_eq!(orders_up_to_degree(2), vec![1, 2, 3, 4, 6]);
    }
}
