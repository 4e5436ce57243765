//! Verdict pipelines for the two-component family `L(m, J)`: the period
//! obstruction in the double branched cover and the `d-bar` obstruction.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::abgroup::{Element, FiniteAbelianGroup};
use crate::dinv::{
    d_large_surgery_table, dbar, dbar_vanishing_obstruction, v_sequence_lspace, DTable, MetabolizerOutcome,
    MetabolizerReport, VSequence,
};
use crate::error::{Error, Result};
use crate::polyalg::laurent::{AlexanderPoly, PolySet};
use crate::polyalg::primes::{factor, is_prime};
use crate::polyalg::{excluded_primes, r_d, torus_knot_alexander, PrimeSetComplement};
use crate::rational::{fmt_rational, Q};
use crate::seifert::{
    jump_function_with_precision, minimal_period, scale_jump_function, JumpFunction, MinimalPeriod, SeifertMatrix,
    DEFAULT_PRECISION,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Obstructed,
    NotObstructed,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Obstructed => "OBSTRUCTED",
            Verdict::NotObstructed => "NOT_OBSTRUCTED",
            Verdict::Inconclusive => "INCONCLUSIVE",
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `L(m, J)`: first component concordant to a knot with Alexander polynomial
/// `J0`, second component tied through `J`; `q = 2m + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinkFamilySpec {
    pub m: u64,
    #[serde(rename = "J")]
    pub j: SeifertMatrix,
    #[serde(rename = "J0_alexander")]
    pub j0_alexander: AlexanderPoly,
}

impl LinkFamilySpec {
    pub fn new(m: u64, j: SeifertMatrix, j0_alexander: AlexanderPoly) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidArgument("m must be positive".into()));
        }
        if m > 1 << 20 {
            return Err(Error::InvalidArgument(format!("m = {m} is too large")));
        }
        Ok(LinkFamilySpec { m, j, j0_alexander })
    }

    pub fn q(&self) -> u64 {
        2 * self.m + 1
    }
}

/// Jump function of the covering knot: `J # J^r` reparametrized by `theta / q`.
pub fn covering_jump_function(spec: &LinkFamilySpec) -> Result<JumpFunction> {
    covering_jump_function_with_precision(spec, DEFAULT_PRECISION)
}

pub fn covering_jump_function_with_precision(spec: &LinkFamilySpec, precision: u32) -> Result<JumpFunction> {
    let doubled = spec.j.connected_sum(&spec.j.reverse());
    let delta = jump_function_with_precision(&doubled, 1, precision)?;
    scale_jump_function(&delta, spec.q())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeriodCheck {
    pub verdict: Verdict,
    #[serde(with = "crate::rational::serde_q")]
    pub minimal_period: Q,
    /// Numerator of the minimal period: the least integer period.
    pub least_integer_period: String,
    pub prime_factors: Vec<u64>,
    /// A prime factor outside the excluded set, when there is one.
    pub offending_prime: Option<u64>,
    pub witness: Option<String>,
}

/// Integer periods are the multiples of `a`, where `c0 = a / b` in lowest
/// terms. Every one of them has a prime factor outside `excluded` exactly
/// when `a` does.
pub fn period_coprimality_check(c0: &Q, excluded: &PrimeSetComplement) -> Result<PeriodCheck> {
    if c0 <= &Q::from_integer(0.into()) {
        return Err(Error::InvalidArgument("minimal period must be positive".into()));
    }
    let a = c0.numer().clone();
    let primes: Vec<u64> = factor(&a)?.into_keys().collect();
    let offending = primes.iter().copied().find(|p| !excluded.excluded.contains(p));
    Ok(PeriodCheck {
        verdict: if offending.is_some() {
            Verdict::Obstructed
        } else {
            Verdict::NotObstructed
        },
        minimal_period: c0.clone(),
        least_integer_period: a.to_string(),
        prime_factors: primes,
        offending_prime: offending,
        witness: offending.is_none().then(|| a.to_string()),
    })
}

fn check_degree(d: u64) -> Result<()> {
    if d != 2 {
        return Err(Error::UnsupportedDegree(d));
    }
    Ok(())
}

/// `J0` must be in `D` and every prime factor of `q` in `P_2(D)`.
fn check_family_against(spec: &LinkFamilySpec, set: &PolySet, excluded: &PrimeSetComplement) -> Result<()> {
    if !set.contains_up_to_units(&spec.j0_alexander) {
        return Err(Error::J0NotInSet);
    }
    for p in factor(&BigInt::from(spec.q()))?.into_keys() {
        if excluded.excluded.contains(&p) {
            return Err(Error::NotInPrimeSet(p));
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TopologicalReport {
    pub verdict: Verdict,
    pub m: u64,
    pub q: u64,
    pub d: u64,
    pub jump_function: JumpFunction,
    pub minimal_period: PeriodSummary,
    pub excluded_primes: PrimeSetComplement,
    pub period_check: Option<PeriodCheck>,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PeriodSummary {
    Period {
        #[serde(with = "crate::rational::serde_q")]
        value: Q,
    },
    ZeroFunction,
    NumericUnknown {
        #[serde(with = "crate::rational::serde_q")]
        candidate: Q,
    },
}

impl From<&MinimalPeriod> for PeriodSummary {
    fn from(p: &MinimalPeriod) -> Self {
        match p {
            MinimalPeriod::Period(v) => PeriodSummary::Period { value: v.clone() },
            MinimalPeriod::ZeroFunction => PeriodSummary::ZeroFunction,
            MinimalPeriod::NumericUnknown { candidate } => PeriodSummary::NumericUnknown {
                candidate: candidate.clone(),
            },
        }
    }
}

pub fn obstruct_topological(spec: &LinkFamilySpec, d: u64, set: &PolySet) -> Result<TopologicalReport> {
    obstruct_topological_with_precision(spec, d, set, DEFAULT_PRECISION)
}

pub fn obstruct_topological_with_precision(
    spec: &LinkFamilySpec,
    d: u64,
    set: &PolySet,
    precision: u32,
) -> Result<TopologicalReport> {
    check_degree(d)?;
    let excluded = excluded_primes(set, d)?;
    check_family_against(spec, set, &excluded)?;
    let delta = covering_jump_function_with_precision(spec, precision)?;
    let period = minimal_period(&delta);
    let (verdict, check, reason) = match &period {
        MinimalPeriod::ZeroFunction => (
            Verdict::NotObstructed,
            None,
            "the jump function vanishes, so every positive integer is a period".to_string(),
        ),
        MinimalPeriod::NumericUnknown { candidate } => (
            Verdict::Inconclusive,
            None,
            format!(
                "translation by {} could not be decided from numeric enclosures",
                fmt_rational(candidate)
            ),
        ),
        MinimalPeriod::Period(c0) => {
            let check = period_coprimality_check(c0, &excluded)?;
            let reason = match check.offending_prime {
                Some(p) => format!(
                    "every integer period is a multiple of {} and so divisible by {p}, which lies in P_{d}(D)",
                    check.least_integer_period
                ),
                None => format!(
                    "the integer period {} has all prime factors outside P_{d}(D)",
                    check.least_integer_period
                ),
            };
            (check.verdict, Some(check), reason)
        }
    };
    Ok(TopologicalReport {
        verdict,
        m: spec.m,
        q: spec.q(),
        d,
        jump_function: delta,
        minimal_period: (&period).into(),
        excluded_primes: excluded,
        period_check: check,
        reason,
    })
}

/// The `q^2`-surgery on `T(q, q - 1) # J # J^r` together with the double
/// branched cover of `J0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurgeryModel {
    pub q: u64,
    pub n: u64,
    pub core_polynomial: AlexanderPoly,
    pub h1_m: FiniteAbelianGroup,
    /// `|H_1(M_0)| = R_2(J0)`.
    pub h1_m0_order: String,
    pub coprime: bool,
}

pub fn build_surgery_model(spec: &LinkFamilySpec) -> Result<SurgeryModel> {
    let q = spec.q();
    if !is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    let n = q * q;
    let r = r_d(spec.j0_alexander.poly(), 2)?;
    if !r.gcd(&BigInt::from(q)).is_one() {
        return Err(Error::CoprimalityViolation {
            order: r.to_string(),
            q,
        });
    }
    Ok(SurgeryModel {
        q,
        n,
        core_polynomial: torus_knot_alexander(q, q - 1)?,
        h1_m: FiniteAbelianGroup::cyclic(n)?,
        h1_m0_order: r.to_string(),
        coprime: true,
    })
}

/// Where `d-bar` on `H_1(M)` comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DbarSource {
    /// Computed exactly; only possible when `J` is empty and the core knot
    /// is the torus knot alone.
    Computed,
    /// A supplied table of `d-bar` values, possibly partial.
    External(DTable),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmoothReport {
    pub verdict: Verdict,
    pub m: u64,
    pub q: u64,
    pub model: SurgeryModel,
    pub excluded_primes: PrimeSetComplement,
    pub v_sequence: Option<VSequence>,
    pub dbar: Option<DTable>,
    pub metabolizers: MetabolizerReport,
    pub reason: String,
}

pub fn obstruct_smooth(spec: &LinkFamilySpec, set: &PolySet, source: &DbarSource) -> Result<SmoothReport> {
    let q = spec.q();
    if !is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    let excluded = excluded_primes(set, 2)?;
    check_family_against(spec, set, &excluded)?;
    let model = build_surgery_model(spec)?;
    let g = model.h1_m.clone();

    let (table, v) = match source {
        DbarSource::External(t) => {
            if t.group != g {
                return Err(Error::InvalidGroup(format!(
                    "d-bar table is on {}, expected {g}",
                    t.group
                )));
            }
            (Some(t.clone()), None)
        }
        DbarSource::Computed if spec.j.dim() == 0 => {
            let v = v_sequence_lspace(&model.core_polynomial)?;
            let d = d_large_surgery_table(model.n, &v)?;
            (Some(dbar(&d)?), Some(v))
        }
        DbarSource::Computed => (None, None),
    };
    let values: BTreeMap<Element, Q> = table.as_ref().map(|t| t.values.clone()).unwrap_or_default();
    let report = dbar_vanishing_obstruction(&g, q, &values)?;
    let (verdict, reason) = match report.outcome {
        MetabolizerOutcome::Obstructed => (
            Verdict::Obstructed,
            "every square-root subgroup of H_1(Y)_q carries a nonzero d-bar value".to_string(),
        ),
        MetabolizerOutcome::Passes => (
            Verdict::NotObstructed,
            "d-bar vanishes on a square-root subgroup".to_string(),
        ),
        MetabolizerOutcome::Inconclusive => (
            Verdict::Inconclusive,
            if table.is_none() {
                "d-bar is not computable for nonempty J; supply an external table".to_string()
            } else {
                "the d-bar table lacks values needed to decide".to_string()
            },
        ),
    };
    Ok(SmoothReport {
        verdict,
        m: spec.m,
        q,
        model,
        excluded_primes: excluded,
        v_sequence: v,
        dbar: table,
        metabolizers: report,
        reason,
    })
}

/// Whether `n` has a prime factor outside `excluded`, by direct factoring.
pub fn has_prime_outside(n: u64, excluded: &PrimeSetComplement) -> bool {
    crate::polyalg::primes::factor_u64(n)
        .keys()
        .any(|p| !excluded.excluded.contains(p))
}

/// The external `d-bar` table for `q = 3` shipped with the crate: the lower
/// bound `d-bar(M, q) >= 2` entered as the value 2 at `q` and `-q`.
pub fn external_dbar_q3() -> DTable {
    serde_json::from_str(include_str!("../data/dbar_q3_external.json")).expect("bundled table is valid")
}

/// `c0` as a `u64` pair, for callers that need machine integers.
pub fn period_parts(c0: &Q) -> Option<(u64, u64)> {
    Some((c0.numer().to_u64()?, c0.denom().to_u64()?))
}
