//! Finite abelian groups in invariant-factor form, their primary parts and
//! subgroup enumeration at desk scale.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polyalg::primes::{factor_u64, is_prime, prime_power};

/// Largest group order for which subgroups are enumerated.
pub const ENUMERATION_BOUND: u64 = 1_000_000;

/// Group elements are coordinate vectors reduced modulo the invariant factors.
pub type Element = Vec<u64>;

/// `Z_{n_1} + ... + Z_{n_k}` with `n_1 | n_2 | ... | n_k` and every `n_i >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FiniteAbelianGroup {
    invariant_factors: Vec<u64>,
}

impl FiniteAbelianGroup {
    pub fn new(invariant_factors: Vec<u64>) -> Result<Self> {
        for (i, &n) in invariant_factors.iter().enumerate() {
            if n < 2 {
                return Err(Error::InvalidGroup(format!("invariant factor {n} < 2")));
            }
            if i > 0 && n % invariant_factors[i - 1] != 0 {
                return Err(Error::InvalidGroup(format!(
                    "{} does not divide {n}",
                    invariant_factors[i - 1]
                )));
            }
        }
        let g = FiniteAbelianGroup { invariant_factors };
        g.checked_order()?;
        Ok(g)
    }

    pub fn trivial() -> Self {
        FiniteAbelianGroup {
            invariant_factors: Vec::new(),
        }
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        match n {
            0 => Err(Error::InvalidGroup("Z_0 is infinite".into())),
            1 => Ok(Self::trivial()),
            _ => Self::new(vec![n]),
        }
    }

    /// The direct sum of cyclic groups of the given orders, brought to
    /// invariant-factor form through its primary decomposition.
    pub fn from_orders(orders: &[u64]) -> Result<Self> {
        let mut by_prime: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
        for &n in orders {
            if n == 0 {
                return Err(Error::InvalidGroup("Z_0 is infinite".into()));
            }
            for (p, e) in factor_u64(n) {
                by_prime.entry(p).or_default().push(p.pow(e));
            }
        }
        let rank = by_prime.values().map(Vec::len).max().unwrap_or(0);
        let mut factors = vec![1u64; rank];
        for mut powers in by_prime.into_values() {
            powers.sort_unstable();
            let off = rank - powers.len();
            for (i, pp) in powers.into_iter().enumerate() {
                factors[off + i] = factors[off + i]
                    .checked_mul(pp)
                    .ok_or(Error::Overflow("group order"))?;
            }
        }
        Self::new(factors)
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.invariant_factors
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    fn checked_order(&self) -> Result<u64> {
        self.invariant_factors
            .iter()
            .try_fold(1u64, |acc, &n| acc.checked_mul(n))
            .ok_or(Error::Overflow("group order"))
    }

    pub fn order(&self) -> u64 {
        self.checked_order().expect("order checked at construction")
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    /// The prime `p` if this is a nontrivial `p`-group.
    pub fn p_group_prime(&self) -> Option<u64> {
        prime_power(self.order()).map(|(p, _)| p)
    }

    pub fn zero(&self) -> Element {
        vec![0; self.rank()]
    }

    pub fn contains(&self, x: &[u64]) -> bool {
        x.len() == self.rank() && x.iter().zip(&self.invariant_factors).all(|(a, n)| a < n)
    }

    pub fn reduce(&self, x: &[i64]) -> Result<Element> {
        if x.len() != self.rank() {
            return Err(Error::InvalidGroup(format!(
                "element has {} coordinates, group has rank {}",
                x.len(),
                self.rank()
            )));
        }
        Ok(x.iter()
            .zip(&self.invariant_factors)
            .map(|(&a, &n)| a.rem_euclid(n as i64) as u64)
            .collect())
    }

    pub fn add(&self, x: &[u64], y: &[u64]) -> Element {
        x.iter()
            .zip(y)
            .zip(&self.invariant_factors)
            .map(|((a, b), n)| ((*a as u128 + *b as u128) % *n as u128) as u64)
            .collect()
    }

    pub fn neg(&self, x: &[u64]) -> Element {
        x.iter()
            .zip(&self.invariant_factors)
            .map(|(a, n)| (n - a) % n)
            .collect()
    }

    pub fn scale(&self, k: u64, x: &[u64]) -> Element {
        x.iter()
            .zip(&self.invariant_factors)
            .map(|(a, n)| ((*a as u128 * k as u128) % *n as u128) as u64)
            .collect()
    }

    pub fn element_order(&self, x: &[u64]) -> u64 {
        x.iter()
            .zip(&self.invariant_factors)
            .map(|(&a, &n)| n / num_integer::gcd(a, n))
            .fold(1, num_integer::lcm)
    }

    /// Mixed-radix index of an element, `0 <= index < order`.
    pub fn index_of(&self, x: &[u64]) -> u64 {
        let mut idx = 0u64;
        for (a, n) in x.iter().zip(&self.invariant_factors).rev() {
            idx = idx * n + a;
        }
        idx
    }

    pub fn element_at(&self, mut idx: u64) -> Element {
        self.invariant_factors
            .iter()
            .map(|n| {
                let a = idx % n;
                idx /= n;
                a
            })
            .collect()
    }

    /// All elements in index order.
    pub fn elements(&self) -> Result<impl Iterator<Item = Element> + '_> {
        let n = self.order();
        if n > ENUMERATION_BOUND {
            return Err(Error::GroupTooLarge(n));
        }
        Ok((0..n).map(move |i| self.element_at(i)))
    }

    /// The subgroup generated by `generators`.
    pub fn span(&self, generators: &[Element]) -> Result<Subgroup> {
        for g in generators {
            if !self.contains(g) {
                return Err(Error::InvalidGroup(format!("{g:?} is not an element of {self}")));
            }
        }
        let set = self.closure(generators)?;
        Ok(Subgroup::from_index_set(self, &set))
    }

    fn closure(&self, generators: &[Element]) -> Result<BTreeSet<u64>> {
        let mut seen = BTreeSet::from([self.index_of(&self.zero())]);
        let mut queue = VecDeque::from([self.zero()]);
        while let Some(x) = queue.pop_front() {
            for g in generators {
                let y = self.add(&x, g);
                if seen.insert(self.index_of(&y)) {
                    if seen.len() as u64 > ENUMERATION_BOUND {
                        return Err(Error::GroupTooLarge(seen.len() as u64));
                    }
                    queue.push_back(y);
                }
            }
        }
        Ok(seen)
    }
}

impl std::fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.invariant_factors.iter().map(|n| format!("Z_{n}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<'de> Deserialize<'de> for FiniteAbelianGroup {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Wire {
            invariant_factors: Vec<u64>,
        }
        let w = Wire::deserialize(d)?;
        FiniteAbelianGroup::new(w.invariant_factors).map_err(serde::de::Error::custom)
    }
}

/// A subgroup given by generators in the coordinates of its ambient group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subgroup {
    pub generators: Vec<Element>,
    #[serde(default)]
    pub order: u64,
}

impl Subgroup {
    /// Canonical generators: walk the elements in index order and keep those
    /// not already generated.
    fn from_index_set(g: &FiniteAbelianGroup, set: &BTreeSet<u64>) -> Self {
        let mut gens: Vec<Element> = Vec::new();
        let mut span: BTreeSet<u64> = BTreeSet::from([0]);
        for &i in set {
            if span.contains(&i) {
                continue;
            }
            gens.push(g.element_at(i));
            span = g.closure(&gens).expect("inside a bounded subgroup");
            if span.len() == set.len() {
                break;
            }
        }
        Subgroup {
            generators: gens,
            order: set.len() as u64,
        }
    }

    /// All elements in index order.
    pub fn elements(&self, g: &FiniteAbelianGroup) -> Result<Vec<Element>> {
        Ok(g.closure(&self.generators)?
            .into_iter()
            .map(|i| g.element_at(i))
            .collect())
    }

    pub fn contains(&self, g: &FiniteAbelianGroup, x: &[u64]) -> Result<bool> {
        Ok(g.closure(&self.generators)?.contains(&g.index_of(x)))
    }
}

/// The inclusion `G_p -> G`: generator `i` of the source maps to `images[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Embedding {
    pub source: FiniteAbelianGroup,
    pub target: FiniteAbelianGroup,
    pub images: Vec<Element>,
}

impl Embedding {
    pub fn apply(&self, x: &[u64]) -> Element {
        let mut y = self.target.zero();
        for (a, img) in x.iter().zip(&self.images) {
            y = self.target.add(&y, &self.target.scale(*a, img));
        }
        y
    }

    pub fn apply_subgroup(&self, h: &Subgroup) -> Result<Subgroup> {
        let gens: Vec<Element> = h.generators.iter().map(|x| self.apply(x)).collect();
        self.target.span(&gens)
    }
}

/// `G_p`, the elements of `p`-power order, with its inclusion into `G`.
pub fn primary_part(g: &FiniteAbelianGroup, p: u64) -> Result<(FiniteAbelianGroup, Embedding)> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let mut factors = Vec::new();
    let mut images = Vec::new();
    for (i, &n) in g.invariant_factors.iter().enumerate() {
        let mut pp = 1;
        while n % (pp * p) == 0 {
            pp *= p;
        }
        if pp > 1 {
            factors.push(pp);
            let mut e = g.zero();
            e[i] = n / pp;
            images.push(e);
        }
    }
    let gp = FiniteAbelianGroup::new(factors)?;
    Ok((
        gp.clone(),
        Embedding {
            source: gp,
            target: g.clone(),
            images,
        },
    ))
}

/// Every subgroup of order `n` of the `p`-group `gp`, sorted by element set.
pub fn subgroups_of_order(gp: &FiniteAbelianGroup, n: u64) -> Result<Vec<Subgroup>> {
    let order = gp.order();
    if order > ENUMERATION_BOUND {
        return Err(Error::GroupTooLarge(order));
    }
    if n == 0 || !order.is_multiple_of(n) {
        return Ok(Vec::new());
    }
    if n == 1 {
        return Ok(vec![Subgroup {
            generators: Vec::new(),
            order: 1,
        }]);
    }
    let p = gp
        .p_group_prime()
        .ok_or_else(|| Error::InvalidGroup(format!("{gp} is not a p-group")))?;
    let (_, levels) = prime_power(n)
        .filter(|(q, _)| *q == p)
        .ok_or_else(|| Error::InvalidArgument(format!("{n} is not a power of {p}")))?;

    // each subgroup of order p^(k+1) contains one of order p^k with index p,
    // so adjoining g with pg in H from level k reaches all of level k + 1
    let all: Vec<Element> = gp.elements()?.collect();
    let mut level: Vec<Vec<u64>> = vec![vec![0]];
    for _ in 0..levels {
        let mut next: HashSet<Vec<u64>> = HashSet::new();
        for h in &level {
            let hset: HashSet<u64> = h.iter().copied().collect();
            for g in &all {
                let gi = gp.index_of(g);
                if hset.contains(&gi) || !hset.contains(&gp.index_of(&gp.scale(p, g))) {
                    continue;
                }
                let mut elems = Vec::with_capacity(h.len() * p as usize);
                for &x in h {
                    let mut y = gp.element_at(x);
                    for _ in 0..p {
                        elems.push(gp.index_of(&y));
                        y = gp.add(&y, g);
                    }
                }
                elems.sort_unstable();
                next.insert(elems);
            }
        }
        level = next.into_iter().collect();
        level.sort();
    }
    Ok(level
        .iter()
        .map(|s| Subgroup::from_index_set(gp, &s.iter().copied().collect()))
        .collect())
}

/// Candidates `H <= G_q` with `|H|^2 = |G_q|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MetabolizerSearch {
    pub q: u64,
    pub primary_order: u64,
    pub is_square: bool,
    /// Subgroups of `G`, in the coordinates of `G`.
    pub candidates: Vec<Subgroup>,
}

pub fn square_root_subgroups(g: &FiniteAbelianGroup, q: u64) -> Result<MetabolizerSearch> {
    let (gq, emb) = primary_part(g, q)?;
    let order = gq.order();
    let root = (order as f64).sqrt().round() as u64;
    let is_square = root * root == order;
    let candidates = if is_square {
        subgroups_of_order(&gq, root)?
            .iter()
            .map(|h| emb.apply_subgroup(h))
            .collect::<Result<_>>()?
    } else {
        Vec::new()
    };
    Ok(MetabolizerSearch {
        q,
        primary_order: order,
        is_square,
        candidates,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(fs: &[u64]) -> FiniteAbelianGroup {
        FiniteAbelianGroup::new(fs.to_vec()).unwrap()
    }

    #[test]
    fn construction() {
        assert!(FiniteAbelianGroup::new(vec![2, 3]).is_err());
        assert!(FiniteAbelianGroup::new(vec![1]).is_err());
        assert_eq!(FiniteAbelianGroup::from_orders(&[4, 6]).unwrap(), z(&[2, 12]));
        assert_eq!(FiniteAbelianGroup::from_orders(&[3, 5]).unwrap(), z(&[15]));
        assert_eq!(FiniteAbelianGroup::from_orders(&[1, 1]).unwrap(), FiniteAbelianGroup::trivial());
        assert_eq!(z(&[3, 9]).order(), 27);
        assert_eq!(z(&[2, 12]).to_string(), "Z_2 + Z_12");
        let g: FiniteAbelianGroup = serde_json::from_str(r#"{"invariant_factors":[3,9]}"#).unwrap();
        assert_eq!(g, z(&[3, 9]));
        assert!(serde_json::from_str::<FiniteAbelianGroup>(r#"{"invariant_factors":[4,6]}"#).is_err());
    }

    #[test]
    fn primary_parts() {
        let (g2, emb) = primary_part(&z(&[12]), 2).unwrap();
        assert_eq!(g2, z(&[4]));
        assert_eq!(emb.apply(&[1]), vec![3]);
        assert_eq!(primary_part(&z(&[9]), 3).unwrap().0, z(&[9]));
        assert!(primary_part(&z(&[9]), 2).unwrap().0.is_trivial());
        assert_eq!(primary_part(&z(&[9]), 4), Err(Error::NotPrime(4)));
        let g = z(&[6, 36]);
        let prod: u64 = [2, 3].iter().map(|&p| primary_part(&g, p).unwrap().0.order()).product();
        assert_eq!(prod, g.order());
    }

    #[test]
    fn subgroup_counts() {
        let s = subgroups_of_order(&z(&[9]), 3).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].elements(&z(&[9])).unwrap(), vec![vec![0], vec![3], vec![6]]);
        assert_eq!(subgroups_of_order(&z(&[3, 3]), 3).unwrap().len(), 4);
        assert_eq!(subgroups_of_order(&FiniteAbelianGroup::trivial(), 1).unwrap().len(), 1);
        // Z_2 + Z_4: three of order 2, three of order 4
        assert_eq!(subgroups_of_order(&z(&[2, 4]), 2).unwrap().len(), 3);
        assert_eq!(subgroups_of_order(&z(&[2, 4]), 4).unwrap().len(), 3);
        // (Z_2)^3: 7 lines and 7 planes
        assert_eq!(subgroups_of_order(&z(&[2, 2, 2]), 2).unwrap().len(), 7);
        assert_eq!(subgroups_of_order(&z(&[2, 2, 2]), 4).unwrap().len(), 7);
        assert!(subgroups_of_order(&z(&[6]), 2).is_err());
        assert!(matches!(
            subgroups_of_order(&z(&[2, 1 << 20]), 2),
            Err(Error::GroupTooLarge(_))
        ));
    }

    #[test]
    fn metabolizers() {
        let m = square_root_subgroups(&z(&[9]), 3).unwrap();
        assert!(m.is_square);
        assert_eq!(m.candidates, vec![Subgroup { generators: vec![vec![3]], order: 3 }]);
        assert_eq!(square_root_subgroups(&z(&[3, 3]), 3).unwrap().candidates.len(), 4);
        let odd = square_root_subgroups(&z(&[3]), 3).unwrap();
        assert!(!odd.is_square && odd.candidates.is_empty());
        // Z_2 + Z_18: candidates live in the 3-part, reported in G coordinates
        let m = square_root_subgroups(&z(&[2, 18]), 3).unwrap();
        assert_eq!(m.candidates[0].elements(&z(&[2, 18])).unwrap(), vec![vec![0, 0], vec![0, 6], vec![0, 12]]);
    }
}
