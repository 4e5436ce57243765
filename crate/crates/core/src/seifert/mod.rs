//! Seifert matrices and the signature function on the unit circle: exact
//! evaluation, jump locations, jump functions and their minimal periods.

mod circle;
mod jumps;
pub mod trig;

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

pub use circle::{jump_locations, signature_at, signature_at_with_precision};
pub use jumps::{
    jump_function, jump_function_with_precision, minimal_period, scale_jump_function, Branch,
    CirclePoint, Exactness, Jump, JumpFunction, MinimalPeriod, Position,
};

use crate::error::{Error, Result};
use crate::linalg::{self, QMatrix};
use crate::polyalg::qpoly::QPoly;
use crate::polyalg::LaurentPoly;
use crate::rational::{q, Q};

/// Default bit precision for certified numeric enclosures.
pub const DEFAULT_PRECISION: u32 = 128;

/// A square rational matrix presenting a (possibly generalized) Seifert form.
#[derive(Clone, PartialEq, Eq)]
pub struct SeifertMatrix {
    entries: QMatrix,
    label: Option<String>,
}

impl fmt::Debug for SeifertMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = self
            .entries
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect())
            .collect();
        write!(f, "SeifertMatrix({:?}, {:?})", self.label, rows)
    }
}

/// Matrices larger than this are refused when read from external input.
pub const MAX_DIM: usize = 64;

impl SeifertMatrix {
    pub fn new(entries: QMatrix, label: Option<String>) -> Result<Self> {
        if !linalg::is_square(&entries) {
            return Err(Error::NotSquare);
        }
        Ok(SeifertMatrix { entries, label })
    }

    pub fn from_ints(rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(
            rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect(),
            None,
        )
    }

    pub fn unknot() -> Self {
        SeifertMatrix {
            entries: Vec::new(),
            label: Some("unknot".into()),
        }
    }

    pub fn trefoil() -> Self {
        Self::from_ints(&[vec![-1, 1], vec![0, -1]])
            .unwrap()
            .with_label("trefoil")
    }

    pub fn figure_eight() -> Self {
        Self::from_ints(&[vec![-1, 1], vec![0, 1]])
            .unwrap()
            .with_label("figure-eight")
    }

    /// `T(a, b)` for coprime `a, b >= 1` through the tensor product of the
    /// `A_{a-1}` and `A_{b-1}` forms, negated so that `T(2, 3)` is the
    /// trefoil above.
    pub fn torus(a: u64, b: u64) -> Result<Self> {
        if a == 0 || b == 0 || num_integer::gcd(a, b) != 1 {
            return Err(Error::InvalidArgument(format!("T({a},{b}) needs coprime positive parameters")));
        }
        let (n, m) = ((a - 1) as usize, (b - 1) as usize);
        if n * m > MAX_DIM {
            return Err(Error::InvalidArgument(format!("T({a},{b}) exceeds the {MAX_DIM}x{MAX_DIM} bound")));
        }
        let lam = |k: usize, i: usize, j: usize| -> i64 {
            if i == j {
                1
            } else if j == i + 1 && j < k {
                -1
            } else {
                0
            }
        };
        let mut entries = vec![vec![Q::zero(); n * m]; n * m];
        for (r, row) in entries.iter_mut().enumerate() {
            for (c, x) in row.iter_mut().enumerate() {
                *x = q(-lam(n, r / m, c / m) * lam(m, r % m, c % m));
            }
        }
        Ok(SeifertMatrix {
            entries,
            label: Some(format!("T({a},{b})")),
        })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn entries(&self) -> &QMatrix {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn is_integral(&self) -> bool {
        self.entries.iter().flatten().all(|x| x.is_integer())
    }

    /// Integral with `det(A - A^T) = ±1`.
    pub fn is_genuine_knot(&self) -> bool {
        if !self.is_integral() {
            return false;
        }
        let d = linalg::det(&linalg::sub(&self.entries, &linalg::transpose(&self.entries)));
        d == Q::one() || d == -Q::one()
    }

    pub fn transpose(&self) -> Self {
        SeifertMatrix {
            entries: linalg::transpose(&self.entries),
            label: self.label.as_ref().map(|l| format!("rev({l})")),
        }
    }

    /// The reverse `J^r` is presented by the transpose.
    pub fn reverse(&self) -> Self {
        self.transpose()
    }

    pub fn mirror(&self) -> Self {
        SeifertMatrix {
            entries: linalg::scale(&self.entries, &q(-1)),
            label: self.label.as_ref().map(|l| format!("mirror({l})")),
        }
    }

    /// Block sum, presenting the connected sum.
    pub fn connected_sum(&self, other: &Self) -> Self {
        let (n, m) = (self.dim(), other.dim());
        let mut entries = vec![vec![Q::zero(); n + m]; n + m];
        for i in 0..n {
            entries[i][..n].clone_from_slice(&self.entries[i]);
        }
        for i in 0..m {
            entries[n + i][n..].clone_from_slice(&other.entries[i]);
        }
        let label = match (&self.label, &other.label) {
            (Some(a), Some(b)) => Some(format!("{a}#{b}")),
            _ => None,
        };
        SeifertMatrix { entries, label }
    }

    /// `det(A - t A^T)` as an ordinary polynomial in `t`.
    pub fn alexander_qpoly(&self) -> QPoly {
        if self.dim() == 0 {
            return QPoly::one();
        }
        linalg::det_pencil(&self.entries, &linalg::transpose(&self.entries))
    }
}

/// `det(A - tA^T)`, centered. Requires the result to have integer
/// coefficients (always true for integral matrices).
pub fn alexander_from_seifert(a: &SeifertMatrix) -> Result<LaurentPoly> {
    let p = a.alexander_qpoly();
    Ok(LaurentPoly::from_qpoly(&p)?.centered())
}

#[derive(Serialize, Deserialize)]
struct SeifertWire {
    #[serde(with = "matrix_serde")]
    matrix: QMatrix,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
}

mod matrix_serde {
    use super::*;
    use serde::{Deserializer, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Row(#[serde(with = "crate::rational::serde_q::vec")] Vec<Q>);

    pub fn serialize<S: Serializer>(m: &QMatrix, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Row> = m.iter().map(|r| Row(r.clone())).collect();
        rows.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<QMatrix, D::Error> {
        let rows: Vec<Row> = Vec::deserialize(d)?;
        Ok(rows.into_iter().map(|r| r.0).collect())
    }
}

impl Serialize for SeifertMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SeifertWire {
            matrix: self.entries.clone(),
            label: self.label.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SeifertMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = SeifertWire::deserialize(d)?;
        if w.matrix.len() > MAX_DIM {
            return Err(serde::de::Error::custom(format!("matrix larger than {MAX_DIM}x{MAX_DIM}")));
        }
        SeifertMatrix::new(w.matrix, w.label).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alexander_examples() {
        let t = alexander_from_seifert(&SeifertMatrix::trefoil()).unwrap();
        assert_eq!(t, LaurentPoly::new(-1, vec![1, -1, 1]));
        assert_eq!(alexander_from_seifert(&SeifertMatrix::unknot()).unwrap(), LaurentPoly::one());
        let f = alexander_from_seifert(&SeifertMatrix::figure_eight()).unwrap();
        assert_eq!(f, LaurentPoly::new(-1, vec![-1, 3, -1]));
    }

    #[test]
    fn torus_knots() {
        use crate::polyalg::torus_knot_alexander;
        assert_eq!(SeifertMatrix::torus(2, 3).unwrap().entries(), SeifertMatrix::trefoil().entries());
        assert_eq!(SeifertMatrix::torus(1, 7).unwrap().dim(), 0);
        for (a, b, sig) in [(2, 3, -2), (2, 5, -4), (3, 4, -6), (3, 5, -8), (2, 7, -6), (4, 5, -8)] {
            let k = SeifertMatrix::torus(a, b).unwrap();
            assert!(k.is_genuine_knot());
            let d = alexander_from_seifert(&k).unwrap();
            let expect = torus_knot_alexander(a, b).unwrap();
            assert!(d == *expect.poly() || d == expect.poly().neg(), "T({a},{b})");
            assert_eq!(signature_at(&k, &crate::rational::qr(1, 2)).unwrap(), sig, "T({a},{b})");
        }
        assert!(SeifertMatrix::torus(2, 4).is_err());
    }

    #[test]
    fn operations() {
        let t = SeifertMatrix::trefoil();
        assert!(t.is_genuine_knot());
        let s = t.connected_sum(&t.reverse());
        assert_eq!(s.dim(), 4);
        assert_eq!(s.label(), Some("trefoil#rev(trefoil)"));
        assert_eq!(t.connected_sum(&SeifertMatrix::unknot()).entries(), t.entries());
        assert_eq!(t.mirror().entries()[0][0], q(1));
        assert!(SeifertMatrix::from_ints(&[vec![1, 2]]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let s = r#"{"matrix": [["-1", 1], [0, "-1/1"]], "label": "trefoil"}"#;
        let m: SeifertMatrix = serde_json::from_str(s).unwrap();
        assert_eq!(m, SeifertMatrix::trefoil());
        let out = serde_json::to_string(&m).unwrap();
        assert_eq!(out, r#"{"matrix":[["-1","1"],["0","-1"]],"label":"trefoil"}"#);
        assert!(serde_json::from_str::<SeifertMatrix>(r#"{"matrix": [[1, 2]]}"#).is_err());
    }
}
