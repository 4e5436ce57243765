//! Correction terms: lens spaces, large surgeries on L-space knots, `d-bar`
//! tables and the metabolizer vanishing test.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::abgroup::{square_root_subgroups, Element, FiniteAbelianGroup, MetabolizerSearch, Subgroup};
use crate::error::{Error, Result};
use crate::polyalg::laurent::AlexanderPoly;
use crate::polyalg::torsion_coefficients;
use crate::rational::{fmt_rational, parse_rational, q, Q};

/// Lens spaces with `p` above this are refused; the tables are dense.
pub const MAX_LENS_ORDER: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    #[default]
    Standard,
    /// The orientation-reversed manifold; every value is negated.
    Reversed,
}

fn rem(a: i64, m: u64) -> u64 {
    a.rem_euclid(m as i64) as u64
}

/// `d(L(p, q), i)` by the Euclidean recursion, with `d(L(1, 0)) = 0`.
pub fn d_lens(p: u64, qq: i64, i: u64) -> Result<Q> {
    if p == 0 {
        return Err(Error::InvalidArgument("p must be positive".into()));
    }
    if p > MAX_LENS_ORDER {
        return Err(Error::InvalidArgument(format!("p = {p} exceeds {MAX_LENS_ORDER}")));
    }
    if num_integer::gcd(qq.unsigned_abs(), p) != 1 {
        return Err(Error::NotCoprime(p as i64, qq));
    }
    if i >= p {
        return Err(Error::InvalidArgument(format!("label {i} outside 0..{p}")));
    }
    let (mut p, mut qv, mut i) = (p as i128, rem(qq, p) as i128, i as i128);
    let mut acc = Q::zero();
    let mut sign = 1i64;
    while p > 1 {
        let num = (2 * i + 1 - p - qv).pow(2) - p * qv;
        let term = Q::new(num.into(), (4 * p * qv).into());
        if sign > 0 {
            acc += term;
        } else {
            acc -= term;
        }
        sign = -sign;
        (p, qv, i) = (qv, p % qv, i % qv);
    }
    Ok(acc)
}

pub fn d_lens_oriented(p: u64, qq: i64, i: u64, orientation: Orientation) -> Result<Q> {
    let d = d_lens(p, qq, i)?;
    Ok(match orientation {
        Orientation::Standard => d,
        Orientation::Reversed => -d,
    })
}

/// `d(L(p, q), .)` on `H_1 = Z_p`. Label `i` of the recursion sits at the
/// element `i - s` where `2s = q - 1 (mod p)`, so that conjugation is `x -> -x`
/// and the element 0 is self-conjugate.
pub fn d_lens_table(p: u64, qq: i64, orientation: Orientation) -> Result<DTable> {
    if p == 0 || p > MAX_LENS_ORDER {
        return Err(Error::InvalidArgument(format!("p = {p} out of range")));
    }
    let qr = rem(qq, p);
    let s = if p % 2 == 1 {
        // 2^{-1} = (p + 1) / 2
        ((qr + p - 1) % p) as u128 * p.div_ceil(2) as u128 % p as u128
    } else {
        ((qr + p - 1) % p / 2) as u128
    } as u64;
    let group = FiniteAbelianGroup::cyclic(p)?;
    let mut values = BTreeMap::new();
    for x in 0..p {
        let label = (x + s) % p;
        values.insert(cyclic_element(p, x), d_lens_oriented(p, qq, label, orientation)?);
    }
    Ok(DTable {
        group,
        values,
        provenance: format!("computed: d(L({p},{qq})) by recursion"),
    })
}

fn cyclic_element(n: u64, x: u64) -> Element {
    if n == 1 {
        Vec::new()
    } else {
        vec![x]
    }
}

/// `V_0 >= V_1 >= ... >= 0` with unit steps, stored up to and including the
/// first zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VSequence {
    values: Vec<u64>,
}

impl VSequence {
    pub fn new(mut values: Vec<u64>) -> Result<Self> {
        while values.len() > 1 && values[values.len() - 1] == 0 && values[values.len() - 2] == 0 {
            values.pop();
        }
        if values.last() != Some(&0) {
            values.push(0);
        }
        for w in values.windows(2) {
            if w[0] < w[1] || w[0] - w[1] > 1 {
                return Err(Error::InvalidArgument(format!(
                    "V-sequence step {} -> {} is not 0 or 1",
                    w[0], w[1]
                )));
            }
        }
        Ok(VSequence { values })
    }

    pub fn zero() -> Self {
        VSequence { values: vec![0] }
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn get(&self, i: u64) -> u64 {
        self.values.get(i as usize).copied().unwrap_or(0)
    }

    /// Smallest `g` with `V_g = 0`.
    pub fn genus_bound(&self) -> u64 {
        (self.values.len() - 1) as u64
    }
}

impl<'de> Deserialize<'de> for VSequence {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Wire {
            values: Vec<u64>,
        }
        VSequence::new(Wire::deserialize(d)?.values).map_err(serde::de::Error::custom)
    }
}

/// Nonzero coefficients, read from the top, are `+1, -1, +1, ...`.
pub fn is_lspace_polynomial(f: &AlexanderPoly) -> bool {
    let nonzero: Vec<i64> = f.poly().dense().iter().rev().copied().filter(|&c| c != 0).collect();
    nonzero
        .iter()
        .enumerate()
        .all(|(k, &c)| c == if k % 2 == 0 { 1 } else { -1 })
}

/// `V_i = t_i(f)` for an L-space knot polynomial `f`.
pub fn v_sequence_lspace(f: &AlexanderPoly) -> Result<VSequence> {
    if !is_lspace_polynomial(f) {
        return Err(Error::NotLSpaceKnot(format!(
            "nonzero coefficients of {f} do not alternate +1, -1 from the top"
        )));
    }
    let t = torsion_coefficients(f);
    let values = t
        .iter()
        .map(|&v| u64::try_from(v))
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|_| Error::NotLSpaceKnot(format!("negative torsion coefficient for {f}")))?;
    VSequence::new(values).map_err(|e| Error::NotLSpaceKnot(e.to_string()))
}

fn check_large(n: u64, v: &VSequence) -> Result<()> {
    let min = (2 * v.genus_bound()).saturating_sub(1).max(1);
    if n < min {
        return Err(Error::SurgeryTooSmall { n, min });
    }
    if n > MAX_LENS_ORDER {
        return Err(Error::InvalidArgument(format!("n = {n} exceeds {MAX_LENS_ORDER}")));
    }
    Ok(())
}

/// `d(S^3_n(K), i) = d(L(n, 1), i) - 2 V_{min(i, n - i)}` for `n >= 2g - 1`.
pub fn d_large_surgery(n: u64, v: &VSequence, i: u64) -> Result<Q> {
    check_large(n, v)?;
    if i >= n {
        return Err(Error::InvalidArgument(format!("label {i} outside 0..{n}")));
    }
    let lens = d_lens(n, 1, i)?;
    Ok(lens - q(2 * v.get(i.min(n - i)) as i64))
}

/// The whole table on `Z_n`; label 0 is the spin structure.
pub fn d_large_surgery_table(n: u64, v: &VSequence) -> Result<DTable> {
    check_large(n, v)?;
    let mut values = BTreeMap::new();
    for i in 0..n {
        values.insert(cyclic_element(n, i), d_large_surgery(n, v, i)?);
    }
    Ok(DTable {
        group: FiniteAbelianGroup::cyclic(n)?,
        values,
        provenance: format!("computed: {n}-surgery on an L-space knot with V = {:?}", v.values()),
    })
}

/// Correction terms (or their `d-bar` normalization) on the elements of a
/// group, possibly partial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DTable {
    pub group: FiniteAbelianGroup,
    pub values: BTreeMap<Element, Q>,
    pub provenance: String,
}

impl DTable {
    pub fn new(group: FiniteAbelianGroup, values: BTreeMap<Element, Q>, provenance: String) -> Result<Self> {
        for x in values.keys() {
            if !group.contains(x) {
                return Err(Error::InvalidGroup(format!("{} is not an element of {group}", element_key(x))));
            }
        }
        Ok(DTable {
            group,
            values,
            provenance,
        })
    }

    pub fn get(&self, x: &[u64]) -> Option<&Q> {
        self.values.get(x)
    }

    pub fn is_total(&self) -> bool {
        self.values.len() as u64 == self.group.order()
    }

    /// Elements `x` with both `d(x)` and `d(-x)` known and different.
    pub fn conjugation_defects(&self) -> Vec<Element> {
        self.values
            .iter()
            .filter(|(x, v)| self.values.get(&self.group.neg(x)).is_some_and(|w| w != *v))
            .map(|(x, _)| x.clone())
            .collect()
    }

    pub fn negated(&self) -> Self {
        DTable {
            group: self.group.clone(),
            values: self.values.iter().map(|(k, v)| (k.clone(), -v)).collect(),
            provenance: format!("{} (orientation reversed)", self.provenance),
        }
    }
}

pub fn element_key(x: &[u64]) -> String {
    x.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

pub fn parse_element_key(g: &FiniteAbelianGroup, s: &str) -> Result<Element> {
    let coords: Vec<i64> = if s.trim().is_empty() {
        Vec::new()
    } else {
        s.split(',')
            .map(|c| {
                c.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::InvalidArgument(format!("bad element coordinate {c:?}")))
            })
            .collect::<Result<_>>()?
    };
    g.reduce(&coords)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DTableWire {
    group: FiniteAbelianGroup,
    values: BTreeMap<String, String>,
    #[serde(default)]
    provenance: String,
}

impl Serialize for DTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DTableWire {
            group: self.group.clone(),
            values: self
                .values
                .iter()
                .map(|(k, v)| (element_key(k), fmt_rational(v)))
                .collect(),
            provenance: self.provenance.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for DTable {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let w = DTableWire::deserialize(d)?;
        let mut values = BTreeMap::new();
        for (k, v) in w.values {
            let x = parse_element_key(&w.group, &k).map_err(|e| D::Error::custom(format!("values.{k}: {e}")))?;
            if !w.group.contains(&x) || element_key(&x) != k.replace(' ', "") {
                return Err(D::Error::custom(format!("values.{k}: coordinates must be reduced")));
            }
            let r = parse_rational(&v).map_err(|e| D::Error::custom(format!("values.{k}: {e}")))?;
            if values.insert(x, r).is_some() {
                return Err(D::Error::custom(format!("values.{k}: duplicate element")));
            }
        }
        DTable::new(w.group, values, w.provenance).map_err(D::Error::custom)
    }
}

/// `d-bar(s) = d(s) - d(0)`.
pub fn dbar(t: &DTable) -> Result<DTable> {
    let zero = t.group.zero();
    let base = t
        .get(&zero)
        .cloned()
        .ok_or_else(|| Error::InvalidArgument("d at the basepoint 0 is missing".into()))?;
    Ok(DTable {
        group: t.group.clone(),
        values: t.values.iter().map(|(k, v)| (k.clone(), v - &base)).collect(),
        provenance: format!("dbar of [{}]", t.provenance),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum MetabolizerOutcome {
    Passes,
    Obstructed,
    Inconclusive,
}

/// A candidate ruled out by a known nonzero value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Refutation {
    pub subgroup: Subgroup,
    pub element: Element,
    #[serde(with = "crate::rational::serde_q")]
    pub value: Q,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MetabolizerReport {
    pub outcome: MetabolizerOutcome,
    pub search: MetabolizerSearch,
    pub witness: Option<Subgroup>,
    pub refutations: Vec<Refutation>,
    /// Elements whose values would decide the still-open candidates.
    pub missing: Vec<Element>,
}

/// Whether some `H <= G_q` with `|H|^2 = |G_q|` has `d-bar = 0` on all of `H`.
///
/// `d-bar(0) = 0` is implied. A candidate is refuted by any known nonzero
/// value on it and confirmed only when every value on it is known.
pub fn dbar_vanishing_obstruction(
    g: &FiniteAbelianGroup,
    qp: u64,
    dbar: &BTreeMap<Element, Q>,
) -> Result<MetabolizerReport> {
    let zero = g.zero();
    if let Some(v) = dbar.get(&zero) {
        if !v.is_zero() {
            return Err(Error::InvalidArgument(format!(
                "d-bar at 0 must vanish, got {}",
                fmt_rational(v)
            )));
        }
    }
    for x in dbar.keys() {
        if !g.contains(x) {
            return Err(Error::InvalidGroup(format!("{} is not an element of {g}", element_key(x))));
        }
    }
    let search = square_root_subgroups(g, qp)?;
    let mut witness = None;
    let mut refutations = Vec::new();
    let mut missing = std::collections::BTreeSet::new();
    for h in &search.candidates {
        let elems = h.elements(g)?;
        if let Some((x, v)) = elems
            .iter()
            .find_map(|x| dbar.get(x).filter(|v| !v.is_zero()).map(|v| (x, v)))
        {
            refutations.push(Refutation {
                subgroup: h.clone(),
                element: x.clone(),
                value: v.clone(),
            });
            continue;
        }
        let unknown: Vec<&Element> = elems.iter().filter(|x| **x != zero && !dbar.contains_key(*x)).collect();
        if unknown.is_empty() {
            if witness.is_none() {
                witness = Some(h.clone());
            }
        } else {
            missing.extend(unknown.into_iter().cloned());
        }
    }
    let outcome = if witness.is_some() {
        missing.clear();
        MetabolizerOutcome::Passes
    } else if missing.is_empty() {
        MetabolizerOutcome::Obstructed
    } else {
        MetabolizerOutcome::Inconclusive
    };
    Ok(MetabolizerReport {
        outcome,
        search,
        witness,
        refutations,
        missing: missing.into_iter().collect(),
    })
}
