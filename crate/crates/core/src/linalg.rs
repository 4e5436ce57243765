//! Exact dense linear algebra over Q and Z.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::polyalg::qpoly::QPoly;
use crate::rational::{q, Q};

pub type QMatrix = Vec<Vec<Q>>;

pub fn is_square<T>(m: &[Vec<T>]) -> bool {
    m.iter().all(|row| row.len() == m.len())
}

pub fn transpose(m: &QMatrix) -> QMatrix {
    let n = m.len();
    (0..n).map(|i| (0..n).map(|j| m[j][i].clone()).collect()).collect()
}

pub fn add(a: &QMatrix, b: &QMatrix) -> QMatrix {
    a.iter()
        .zip(b)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect())
        .collect()
}

pub fn sub(a: &QMatrix, b: &QMatrix) -> QMatrix {
    a.iter()
        .zip(b)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x - y).collect())
        .collect()
}

pub fn scale(a: &QMatrix, c: &Q) -> QMatrix {
    a.iter().map(|r| r.iter().map(|x| x * c).collect()).collect()
}

/// Determinant by Gaussian elimination over Q.
pub fn det(m: &QMatrix) -> Q {
    let n = m.len();
    let mut a = m.clone();
    let mut d = Q::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Q::zero();
        };
        if piv != col {
            a.swap(piv, col);
            d = -d;
        }
        let p = a[col][col].clone();
        d *= &p;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &p;
            for c in col..n {
                let t = &f * &a[col][c];
                a[r][c] -= t;
            }
        }
    }
    d
}

/// Fraction-free (Bareiss) determinant of an integer matrix.
pub fn det_bareiss(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.to_vec();
    let mut sign = 1;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(piv) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(piv, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

/// `det(a - x b)` as a polynomial in `x`, by interpolation at `x = 0..=n`.
pub fn det_pencil(a: &QMatrix, b: &QMatrix) -> QPoly {
    let n = a.len();
    let points: Vec<Q> = (0..=n as i64).map(q).collect();
    let values: Vec<Q> = points.iter().map(|x| det(&sub(a, &scale(b, x)))).collect();
    interpolate(&points, &values)
}

/// Lagrange interpolation through distinct points.
pub fn interpolate(xs: &[Q], ys: &[Q]) -> QPoly {
    let mut acc = QPoly::zero();
    for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
        if yi.is_zero() {
            continue;
        }
        let mut basis = QPoly::one();
        let mut denom = Q::one();
        for (j, xj) in xs.iter().enumerate() {
            if i != j {
                basis = basis.mul(&QPoly::linear_root(xj.clone()));
                denom *= xi - xj;
            }
        }
        acc = acc.add(&basis.scale(&(yi / denom)));
    }
    acc
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Inertia {
    pub fn signature(&self) -> i64 {
        self.positive as i64 - self.negative as i64
    }
}

/// Sylvester inertia of a symmetric rational matrix by congruence
/// diagonalization. When every remaining diagonal entry is zero but an
/// off-diagonal one is not, row/column `j` is added to `i` to create a pivot.
pub fn inertia(m: &QMatrix) -> Inertia {
    let mut a = m.clone();
    let mut res = Inertia {
        positive: 0,
        negative: 0,
        zero: 0,
    };
    let mut n = a.len();
    while n > 0 {
        let piv = (0..n).find(|&i| !a[i][i].is_zero());
        let piv = match piv {
            Some(p) => p,
            None => {
                let off = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).find(|&(i, j)| !a[i][j].is_zero());
                let Some((i, j)) = off else {
                    res.zero += n;
                    break;
                };
                // row_i += row_j; col_i += col_j
                for c in 0..n {
                    let t = a[j][c].clone();
                    a[i][c] += t;
                }
                for r in 0..n {
                    let t = a[r][j].clone();
                    a[r][i] += t;
                }
                i
            }
        };
        let p = a[piv][piv].clone();
        if p > Q::zero() {
            res.positive += 1;
        } else {
            res.negative += 1;
        }
        // Schur complement on the remaining indices
        let rest: Vec<usize> = (0..n).filter(|&i| i != piv).collect();
        let next: QMatrix = rest
            .iter()
            .map(|&r| {
                rest.iter()
                    .map(|&c| &a[r][c] - &a[r][piv] * &a[piv][c] / &p)
                    .collect()
            })
            .collect();
        a = next;
        n -= 1;
    }
    res
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn qm(rows: &[&[i64]]) -> QMatrix {
        rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
    }

    #[test]
    fn determinants_agree() {
        let m = [[2i64, -1, 0], [-1, 2, -1], [0, -1, 2]];
        let qmat = qm(&[&m[0], &m[1], &m[2]]);
        let zmat: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        assert_eq!(det(&qmat), q(4));
        assert_eq!(det_bareiss(&zmat), BigInt::from(4));
        let swap = vec![vec![BigInt::from(0), BigInt::from(1)], vec![BigInt::from(1), BigInt::from(0)]];
        assert_eq!(det_bareiss(&swap), BigInt::from(-1));
    }

    #[test]
    fn pencil_of_trefoil() {
        let a = qm(&[&[-1, 1], &[0, -1]]);
        let p = det_pencil(&a, &transpose(&a));
        assert_eq!(p, QPoly::from_ints(&[1, -1, 1]));
    }

    #[test]
    fn inertia_with_zero_diagonal() {
        let hyperbolic = qm(&[&[0, 1], &[1, 0]]);
        assert_eq!(inertia(&hyperbolic), Inertia { positive: 1, negative: 1, zero: 0 });
        let m = qm(&[&[0, 0, 0], &[0, -3, 0], &[0, 0, 0]]);
        assert_eq!(inertia(&m), Inertia { positive: 0, negative: 1, zero: 2 });
        let t = qm(&[&[-2, 1], &[1, -2]]);
        assert_eq!(inertia(&t).signature(), -2);
    }
}
