//! Generators and property checks shared by the property tests and the
//! acceptance runner. Each check runs a deterministic proptest runner and
//! returns the first failure.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Signed;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

use conclab_core::abgroup::{subgroups_of_order, Element, FiniteAbelianGroup};
use conclab_core::dinv::{d_large_surgery, d_lens, dbar_vanishing_obstruction, v_sequence_lspace, MetabolizerOutcome, VSequence};
use conclab_core::linalg;
use conclab_core::obstruct::period_coprimality_check;
use conclab_core::polyalg::primes::factor_u64;
use conclab_core::polyalg::{r_d, torus_knot_alexander, LaurentPoly, PrimeSetComplement};
use conclab_core::rational::{q, qr, Q};
use conclab_core::seifert::{
    alexander_from_seifert, jump_function, minimal_period, signature_at, Jump, JumpFunction, MinimalPeriod, Position,
    SeifertMatrix,
};
use conclab_core::Error;

pub fn runner(cases: u32) -> TestRunner {
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn run<S: Strategy>(cases: u32, strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String>
where
    S::Value: std::fmt::Debug,
{
    runner(cases).run(&strategy, test).map_err(|e| e.to_string())
}

/// `B + J` with `B` symmetric and `J` the standard upper symplectic block
/// form, conjugated by a product of elementary unimodular matrices. Always
/// `det(A - A^T) = 1`.
pub fn knot_matrix(max_genus: usize) -> impl Strategy<Value = SeifertMatrix> {
    (
        1..=max_genus,
        prop::collection::vec(-2i64..=2, 36),
        prop::collection::vec((0usize..6, 0usize..6, -1i64..=1), 0..5),
    )
        .prop_map(|(g, entries, ops)| {
            let n = 2 * g;
            let mut a = vec![vec![0i64; n]; n];
            for i in 0..n {
                for j in i..n {
                    let v = entries[i * 6 + j];
                    a[i][j] = v;
                    a[j][i] = v;
                }
            }
            for k in 0..g {
                a[2 * k][2 * k + 1] += 1;
            }
            for (i, j, c) in ops {
                let (i, j) = (i % n, j % n);
                if i == j || c == 0 {
                    continue;
                }
                // A -> P^T A P with P = I + c E_ij: column j += c col i, row j += c row i
                for row in a.iter_mut() {
                    row[j] += c * row[i];
                }
                for col in 0..n {
                    a[j][col] += c * a[i][col];
                }
            }
            SeifertMatrix::from_ints(&a).unwrap()
        })
}

fn fail(msg: String) -> TestCaseError {
    TestCaseError::fail(msg)
}

pub fn signature_symmetry(cases: u32) -> Result<(), String> {
    run(cases, (knot_matrix(3), 2i64..60, 1i64..60), |(a, b, num)| {
        let t = qr(num % b, b);
        if t == q(0) {
            return Ok(());
        }
        let s1 = signature_at(&a, &t);
        let s2 = signature_at(&a, &(q(1) - &t));
        match (s1, s2) {
            (Err(Error::JumpPoint(_)), Err(Error::JumpPoint(_))) => Ok(()),
            (Ok(x), Ok(y)) if x == y => Ok(()),
            (x, y) => Err(fail(format!("sigma({t}) = {x:?}, sigma(1 - t) = {y:?}"))),
        }
    })
}

pub fn jump_additivity(cases: u32) -> Result<(), String> {
    run(cases, (knot_matrix(2), knot_matrix(1)), |(a, b)| {
        let sum = jump_function(&a.connected_sum(&b), 1).map_err(|e| fail(e.to_string()))?;
        let parts = jump_function(&a, 1)
            .and_then(|x| x.add(&jump_function(&b, 1)?))
            .map_err(|e| fail(e.to_string()))?;
        if sum == parts {
            Ok(())
        } else {
            Err(fail(format!("{sum:?} != {parts:?}")))
        }
    })
}

pub fn transpose_invariance(cases: u32) -> Result<(), String> {
    run(cases, knot_matrix(3), |a| {
        let x = jump_function(&a, 1).map_err(|e| fail(e.to_string()))?;
        let y = jump_function(&a.transpose(), 1).map_err(|e| fail(e.to_string()))?;
        if x == y {
            Ok(())
        } else {
            Err(fail(format!("{x:?} != {y:?}")))
        }
    })
}

pub fn jumps_even_and_balanced(cases: u32) -> Result<(), String> {
    run(cases, (knot_matrix(3), 1u64..5), |(a, c)| {
        let d = jump_function(&a, c).map_err(|e| fail(e.to_string()))?;
        let v = d.violations();
        if v.is_empty() {
            Ok(())
        } else {
            Err(fail(v.join("; ")))
        }
    })
}

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    (-3i64..3, prop::collection::vec(-4i64..=4, 1..6))
        .prop_filter_map("nonzero", |(low, c)| {
            let p = LaurentPoly::new(low, c);
            (!p.is_zero()).then_some(p)
        })
}

pub fn rd_multiplicativity(cases: u32) -> Result<(), String> {
    run(cases, (laurent(), laurent(), 1u64..10), |(f, g, d)| {
        let fg = f.checked_mul(&g).map_err(|e| fail(e.to_string()))?;
        let lhs = r_d(&fg, d).map_err(|e| fail(e.to_string()))?;
        let rhs = r_d(&f, d).unwrap() * r_d(&g, d).unwrap();
        if lhs == rhs {
            Ok(())
        } else {
            Err(fail(format!("R_{d}({fg}) = {lhs}, product {rhs}")))
        }
    })
}

/// Subgroups of a group of rank at most 2 by spans of all element pairs.
fn brute_subgroups(g: &FiniteAbelianGroup, n: u64) -> BTreeSet<BTreeSet<Element>> {
    let all: Vec<Element> = g.elements().unwrap().collect();
    let mut out = BTreeSet::new();
    for (i, x) in all.iter().enumerate() {
        for y in &all[i..] {
            let h = g.span(&[x.clone(), y.clone()]).unwrap();
            if h.order == n {
                out.insert(h.elements(g).unwrap().into_iter().collect());
            }
        }
    }
    out
}

pub fn subgroup_counts(cases: u32) -> Result<(), String> {
    for p in [2u64, 3, 5] {
        let cyc = subgroups_of_order(&FiniteAbelianGroup::cyclic(p * p).unwrap(), p).unwrap();
        if cyc.len() != 1 {
            return Err(format!("Z_{{{p}^2}} has {} subgroups of order {p}", cyc.len()));
        }
        let sq = subgroups_of_order(&FiniteAbelianGroup::new(vec![p, p]).unwrap(), p).unwrap();
        if sq.len() as u64 != p + 1 {
            return Err(format!("(Z_{p})^2 has {} subgroups of order {p}", sq.len()));
        }
    }
    // orders up to 32 for p = 2 and 81 for p = 3 keep the pairwise oracle cheap
    let groups = prop_oneof![(Just(2u64), 0u32..=2, 1u32..=3), (Just(3u64), 0u32..=2, 1u32..=2)].prop_flat_map(|(p, a, b)| {
        Just((p, a, b)).prop_map(|(p, a, b)| {
            let mut f = Vec::new();
            if a > 0 {
                f.push(p.pow(a.min(b)));
            }
            f.push(p.pow(b.max(a)));
            (p, FiniteAbelianGroup::new(f).unwrap())
        })
    });
    run(cases, (groups, 0u32..=4), |((p, g), k)| {
        let n = p.pow(k);
        if g.order() % n != 0 {
            return Ok(());
        }
        let found = subgroups_of_order(&g, n).map_err(|e| fail(e.to_string()))?;
        let sets: BTreeSet<BTreeSet<Element>> = found
            .iter()
            .map(|h| h.elements(&g).unwrap().into_iter().collect::<BTreeSet<_>>())
            .collect();
        if sets.len() != found.len() {
            return Err(fail(format!("duplicates among subgroups of {g}")));
        }
        for h in &sets {
            if h.len() as u64 != n || !h.iter().all(|x| h.iter().all(|y| h.contains(&g.add(x, y)))) {
                return Err(fail(format!("non-closed or wrong-order subgroup in {g}")));
            }
        }
        if sets != brute_subgroups(&g, n) {
            return Err(fail(format!("{g}, order {n}: enumeration differs from brute force")));
        }
        Ok(())
    })
}

pub fn vsequence_steps(cases: u32) -> Result<(), String> {
    run(cases, (2u64..14, 2u64..14), |(a, b)| {
        if num_integer::gcd(a, b) != 1 {
            return Ok(());
        }
        let v = v_sequence_lspace(&torus_knot_alexander(a, b).unwrap()).map_err(|e| fail(e.to_string()))?;
        let vals = v.values();
        let g = (a - 1) * (b - 1) / 2;
        if v.genus_bound() != g || vals.windows(2).any(|w| w[0] < w[1] || w[0] - w[1] > 1) {
            return Err(fail(format!("T({a},{b}): {vals:?}")));
        }
        Ok(())
    })
}

pub fn zero_v_surgery_is_lens(max_n: u64) -> Result<(), String> {
    let z = VSequence::zero();
    for n in 1..=max_n {
        for i in 0..n {
            let a = d_large_surgery(n, &z, i).map_err(|e| e.to_string())?;
            let b = d_lens(n, 1, i).map_err(|e| e.to_string())?;
            if a != b {
                return Err(format!("n={n} i={i}: {a} != {b}"));
            }
        }
    }
    Ok(())
}

pub fn lens_closed_form(max_p: u64) -> Result<(), String> {
    for p in 1..=max_p {
        for i in 0..p {
            let (pi, ii) = (p as i64, i as i64);
            let expect = Q::new(((2 * ii - pi).pow(2) - pi).into(), (4 * pi).into());
            let got = d_lens(p, 1, i).map_err(|e| e.to_string())?;
            if got != expect {
                return Err(format!("d(L({p},1), {i}) = {got}, closed form {expect}"));
            }
        }
    }
    Ok(())
}

fn small_group() -> impl Strategy<Value = (u64, FiniteAbelianGroup)> {
    prop_oneof![Just(2u64), Just(3), Just(5)].prop_flat_map(|p| {
        prop_oneof![
            Just(FiniteAbelianGroup::cyclic(p * p).unwrap()),
            Just(FiniteAbelianGroup::new(vec![p, p]).unwrap()),
        ]
        .prop_map(move |g| (p, g))
    })
}

pub fn dbar_monotone(cases: u32) -> Result<(), String> {
    let s = small_group().prop_flat_map(|(p, g)| {
        let n = g.order() as usize;
        (
            Just((p, g)),
            prop::collection::vec(prop::option::of(0i64..3), n),
            prop::collection::vec(1i64..4, n),
        )
    });
    run(cases, s, |((p, g), first, extra)| {
        let zero = g.zero();
        let mut data: BTreeMap<Element, Q> = BTreeMap::new();
        for (i, v) in first.iter().enumerate() {
            let x = g.element_at(i as u64);
            if let Some(v) = v {
                if x != zero {
                    data.insert(x, q(*v));
                }
            }
        }
        let before = dbar_vanishing_obstruction(&g, p, &data).unwrap().outcome;
        for (i, v) in extra.iter().enumerate() {
            let x = g.element_at(i as u64);
            if x != zero {
                data.entry(x).or_insert_with(|| q(*v));
            }
        }
        let after = dbar_vanishing_obstruction(&g, p, &data).unwrap().outcome;
        if before == MetabolizerOutcome::Obstructed && after != MetabolizerOutcome::Obstructed {
            return Err(fail(format!("{g}: OBSTRUCTED became {after:?}")));
        }
        if after == MetabolizerOutcome::Inconclusive {
            return Err(fail(format!("{g}: total data left the test inconclusive")));
        }
        Ok(())
    })
}

pub fn fox_oracle(cases: u32) -> Result<(), String> {
    run(cases, knot_matrix(3), |a| {
        let delta = alexander_from_seifert(&a).map_err(|e| fail(e.to_string()))?;
        let r = r_d(&delta, 2).unwrap();
        let sym = linalg::add(a.entries(), &linalg::transpose(a.entries()));
        let det = linalg::det(&sym);
        let expect = det.numer().abs();
        if det.is_integer() && r == expect {
            Ok(())
        } else {
            Err(fail(format!("R_2 = {r}, |det(A + A^T)| = {det}")))
        }
    })
}

fn brute_coprimality(a: i64, b: i64, excluded: &BTreeSet<u64>) -> Option<u64> {
    let c0 = qr(a, b);
    (1..=10_000i64)
        .map(|k| &c0 * q(k))
        .filter(|x| x.is_integer())
        .map(|x| x.to_integer().try_into().unwrap())
        .take_while(|&x: &u64| x <= 10_000)
        .find(|&x| factor_u64(x).keys().all(|p| excluded.contains(p)))
}

pub fn coprimality_oracle(cases: u32) -> Result<(), String> {
    let primes = [2u64, 3, 5, 7, 11, 13];
    run(
        cases,
        (1i64..300, 1i64..30, prop::collection::vec(any::<bool>(), 6)),
        |(a, b, mask)| {
            let excluded: BTreeSet<u64> = primes.iter().zip(&mask).filter(|(_, m)| **m).map(|(p, _)| *p).collect();
            let set = PrimeSetComplement {
                d: 2,
                excluded: excluded.clone(),
            };
            let c = period_coprimality_check(&qr(a, b), &set).unwrap();
            let brute = brute_coprimality(a, b, &excluded);
            let agree = match (c.witness.as_deref(), brute) {
                (Some(w), Some(x)) => w == x.to_string(),
                (None, None) => true,
                _ => false,
            };
            if agree {
                Ok(())
            } else {
                Err(fail(format!("{a}/{b}, {excluded:?}: {c:?} vs brute {brute:?}")))
            }
        },
    )
}

/// Repeats a pattern of jumps `k` times around the circle of length `p`.
pub fn minimal_period_oracle(cases: u32) -> Result<(), String> {
    let s = (
        1i64..6,
        1i64..4,
        prop::collection::btree_map(0i64..24, prop_oneof![Just(-2i64), Just(2), Just(4), Just(-4)], 1..5),
    );
    run(cases, s, |(p, k, pattern)| {
        let period = q(p);
        let block = &period / q(k);
        let mut jumps = Vec::new();
        for r in 0..k {
            for (pos, v) in &pattern {
                let x = &block * qr(*pos, 24) + &block * q(r);
                jumps.push(Jump {
                    position: Position::Exact(x),
                    value: *v,
                });
            }
        }
        let Ok(d) = JumpFunction::new(period.clone(), jumps) else {
            return Ok(());
        };
        let pts: Vec<(Q, i64)> = d
            .jumps()
            .iter()
            .map(|j| (j.position.as_exact().unwrap().clone(), j.value))
            .collect();
        // smallest positive shift among the differences mapping the set to itself
        let mut best = period.clone();
        for (x, _) in &pts {
            let mut s = x - &pts[0].0;
            if s <= q(0) {
                s += &period;
            }
            let mut moved: Vec<(Q, i64)> = pts
                .iter()
                .map(|(y, v)| {
                    let mut z = y + &s;
                    if z >= period {
                        z -= &period;
                    }
                    (z, *v)
                })
                .collect();
            moved.sort();
            if moved == pts && s < best {
                best = s;
            }
        }
        match minimal_period(&d) {
            MinimalPeriod::Period(c) if c == best => Ok(()),
            other => Err(fail(format!("{other:?}, brute force {best}"))),
        }
    })
}
