//! Integer partitions and the statistics attached to them.
//!
//! A [`Partition`] is stored largest part first. Every constructor sorts its
//! input, so `Partition::new(vec![1, 3, 2])` and `"2,1,3".parse()` both give
//! `(3,2,1)`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::rational::factorial;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Builds a partition from parts in any order. Zero parts are rejected.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!(
                "parts must be positive, got {parts:?}"
            )));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// The one-part partition `(d)`.
    pub fn single(d: u32) -> Self {
        assert!(d > 0, "single-part partition needs a positive part");
        Partition { parts: vec![d] }
    }

    /// `(1^d)`, the cycle type of the identity.
    pub fn ones(d: u32) -> Self {
        Partition {
            parts: vec![1; d as usize],
        }
    }

    /// The hook `(d-k, 1^k)`.
    pub fn hook(d: u32, k: u32) -> Result<Self> {
        if d == 0 || k >= d {
            return Err(Error::OutOfRange {
                what: "hook leg k",
                value: k as i64,
                allowed: format!("0..={}", d.saturating_sub(1)),
            });
        }
        let mut parts = vec![d - k];
        parts.extend(std::iter::repeat_n(1, k as usize));
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn largest(&self) -> Option<u32> {
        self.parts.first().copied()
    }

    pub fn smallest(&self) -> Option<u32> {
        self.parts.last().copied()
    }

    /// Multiplicity view `i -> n_i`, only for parts that occur.
    pub fn multiplicities(&self) -> BTreeMap<u32, u32> {
        let mut m = BTreeMap::new();
        for &p in &self.parts {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }

    pub fn multiplicity(&self, i: u32) -> u32 {
        self.parts.iter().filter(|&&p| p == i).count() as u32
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.largest().unwrap_or(0);
        let parts = (1..=width)
            .map(|j| self.parts.iter().filter(|&&p| p >= j).count() as u32)
            .collect();
        Partition { parts }
    }

    /// Hook lengths row by row.
    pub fn hook_lengths(&self) -> Vec<Vec<u32>> {
        let conj = self.conjugate();
        self.parts
            .iter()
            .enumerate()
            .map(|(i, &row)| {
                (0..row as usize)
                    .map(|j| (row - j as u32 - 1) + (conj.parts[j] - i as u32 - 1) + 1)
                    .collect()
            })
            .collect()
    }

    pub fn product_of_parts(&self) -> BigUint {
        self.parts
            .iter()
            .fold(BigUint::one(), |acc, &p| acc * BigUint::from(p))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        f.write_str(&text.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Comma-separated positive integers; whitespace is ignored and an empty
    /// string is the empty partition.
    fn from_str(s: &str) -> Result<Self> {
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = cleaned
            .split(',')
            .map(|tok| {
                tok.parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad partition part `{tok}` in `{s}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// `c_1 = n_1 - 1`, `c_i = n_i` for `i >= 2`. Zero entries are not stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CVector {
    entries: BTreeMap<u32, i64>,
}

impl CVector {
    pub fn from_entries<I: IntoIterator<Item = (u32, i64)>>(entries: I) -> Self {
        CVector {
            entries: entries.into_iter().filter(|&(_, c)| c != 0).collect(),
        }
    }

    pub fn get(&self, i: u32) -> i64 {
        self.entries.get(&i).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, i64)> + '_ {
        self.entries.iter().map(|(&i, &c)| (i, c))
    }

    /// `sum c_i`, equal to `l(beta) - 1`.
    pub fn total(&self) -> i64 {
        self.entries.values().sum()
    }

    /// `sum i * c_i`, equal to `|beta| - 1`.
    pub fn weighted_total(&self) -> i64 {
        self.entries.iter().map(|(&i, &c)| i as i64 * c).sum()
    }
}

/// Every partition of `d` exactly once, in reverse-lexicographic order.
pub fn partitions_of(d: u32) -> Vec<Partition> {
    fn rec(rest: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition {
                parts: prefix.clone(),
            });
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            prefix.push(p);
            rec(rest - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(d, d, &mut Vec::new(), &mut out);
    out
}

/// `|Aut mu| = prod_i n_i!`.
pub fn aut_size(mu: &Partition) -> BigUint {
    mu.multiplicities()
        .values()
        .fold(BigUint::one(), |acc, &m| acc * factorial(m))
}

/// Number of permutations of cycle type `mu`: `d! / (|Aut mu| prod mu_i)`.
pub fn perm_class_size(mu: &Partition) -> BigUint {
    factorial(mu.size()) / (aut_size(mu) * mu.product_of_parts())
}

/// Dimension of the irreducible representation `lambda`, by the hook-length formula.
pub fn dimension(lambda: &Partition) -> Result<BigUint> {
    if lambda.is_empty() {
        return Err(Error::InvalidPartition(
            "dimension is undefined for the empty partition".into(),
        ));
    }
    let hooks = lambda
        .hook_lengths()
        .into_iter()
        .flatten()
        .fold(BigUint::one(), |acc, h| acc * BigUint::from(h));
    Ok(factorial(lambda.size()) / hooks)
}

pub fn c_vector(beta: &Partition) -> Result<CVector> {
    if beta.is_empty() {
        return Err(Error::InvalidPartition(
            "the c-vector needs a nonempty partition".into(),
        ));
    }
    let mut entries: BTreeMap<u32, i64> = beta
        .multiplicities()
        .into_iter()
        .map(|(i, n)| (i, n as i64))
        .collect();
    *entries.entry(1).or_insert(0) -= 1;
    let c = CVector::from_entries(entries);
    debug_assert_eq!(c.total(), beta.len() as i64 - 1);
    debug_assert_eq!(c.weighted_total(), beta.size() as i64 - 1);
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    /// Euler's pentagonal recurrence, independent of the enumerator.
    fn euler_count(n: usize) -> Vec<u64> {
        let mut table = vec![0i64; n + 1];
        table[0] = 1;
        for m in 1..=n {
            let mut k: i64 = 1;
            let mut acc = 0i64;
            loop {
                let g1 = (k * (3 * k - 1) / 2) as usize;
                if g1 > m {
                    break;
                }
                let sign = if k % 2 == 1 { 1 } else { -1 };
                acc += sign * table[m - g1];
                let g2 = (k * (3 * k + 1) / 2) as usize;
                if g2 <= m {
                    acc += sign * table[m - g2];
                }
                k += 1;
            }
            table[m] = acc;
        }
        table.into_iter().map(|v| v as u64).collect()
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(partitions_of(0), vec![Partition::empty()]);
        assert_eq!(partitions_of(4).len(), 5);
        assert_eq!(partitions_of(8).len(), 22);
        let euler = euler_count(20);
        for d in 0..=20u32 {
            assert_eq!(partitions_of(d).len() as u64, euler[d as usize], "d = {d}");
        }
    }

    #[test]
    fn enumeration_order_is_reverse_lex() {
        let names: Vec<String> = partitions_of(4).iter().map(|q| q.to_string()).collect();
        assert_eq!(names, ["4", "3,1", "2,2", "2,1,1", "1,1,1,1"]);
        for d in 1..=10 {
            let all = partitions_of(d);
            assert!(all.windows(2).all(|w| w[0].parts() > w[1].parts()));
        }
    }

    #[test]
    fn aut_and_class_sizes() {
        assert_eq!(aut_size(&p("2,2,1")), 2u32.into());
        assert_eq!(aut_size(&p("1,1,1")), 6u32.into());
        assert_eq!(aut_size(&p("3")), 1u32.into());
        assert_eq!(aut_size(&Partition::empty()), 1u32.into());
        assert_eq!(perm_class_size(&p("2,1")), 3u32.into());
        assert_eq!(perm_class_size(&p("4")), 6u32.into());
        assert_eq!(perm_class_size(&p("1,1,1")), 1u32.into());
        for d in 1..=8 {
            let total: BigUint = partitions_of(d).iter().map(perm_class_size).sum();
            assert_eq!(total, factorial(d));
        }
    }

    #[test]
    fn dimensions() {
        for d in 1..=9 {
            assert_eq!(dimension(&Partition::single(d)).unwrap(), 1u32.into());
        }
        assert_eq!(dimension(&p("2,1")).unwrap(), 2u32.into());
        assert_eq!(dimension(&p("2,2")).unwrap(), 2u32.into());
        assert!(dimension(&Partition::empty()).is_err());
        for d in 1..=8 {
            let sum: BigUint = partitions_of(d)
                .iter()
                .map(|l| {
                    let dim = dimension(l).unwrap();
                    &dim * &dim
                })
                .sum();
            assert_eq!(sum, factorial(d));
        }
    }

    #[test]
    fn hook_lengths_of_small_shapes() {
        assert_eq!(p("2,1").hook_lengths(), vec![vec![3, 1], vec![1]]);
        assert_eq!(p("2,2").hook_lengths(), vec![vec![3, 2], vec![2, 1]]);
        assert_eq!(p("3,1,1").conjugate(), p("3,1,1"));
        assert_eq!(p("4,2").conjugate(), p("2,2,1,1"));
    }

    #[test]
    fn c_vectors() {
        assert_eq!(
            c_vector(&p("1,1,1")).unwrap(),
            CVector::from_entries([(1, 2)])
        );
        assert_eq!(
            c_vector(&p("2")).unwrap(),
            CVector::from_entries([(1, -1), (2, 1)])
        );
        assert_eq!(
            c_vector(&p("3,2,2,1,1")).unwrap(),
            CVector::from_entries([(1, 1), (2, 2), (3, 1)])
        );
        assert_eq!(c_vector(&p("1")).unwrap(), CVector::default());
        assert!(c_vector(&Partition::empty()).is_err());
    }

    #[test]
    fn parsing() {
        assert_eq!(p(" 1, 3 ,2,2 ").parts(), &[3, 2, 2, 1]);
        assert_eq!(p("3,2,2,1").to_string(), "3,2,2,1");
        assert!("1,0".parse::<Partition>().is_err());
        assert!("1,a".parse::<Partition>().is_err());
        assert!("".parse::<Partition>().unwrap().is_empty());
        assert!(Partition::hook(3, 3).is_err());
        assert_eq!(Partition::hook(4, 2).unwrap(), p("2,1,1"));
    }

    proptest! {
        #[test]
        fn c_vector_invariants(d in 1u32..=12, pick in 0usize..1000) {
            let all = partitions_of(d);
            let beta = &all[pick % all.len()];
            let c = c_vector(beta).unwrap();
            prop_assert_eq!(c.total(), beta.len() as i64 - 1);
            prop_assert_eq!(c.weighted_total(), d as i64 - 1);
            let mult = beta.multiplicities();
            prop_assert_eq!(mult.iter().map(|(&i, &n)| i * n).sum::<u32>(), d);
            prop_assert_eq!(mult.values().sum::<u32>() as usize, beta.len());
        }

        #[test]
        fn parse_display_round_trip(parts in proptest::collection::vec(1u32..20, 0..8)) {
            let q = Partition::new(parts).unwrap();
            prop_assert_eq!(q.to_string().parse::<Partition>().unwrap(), q);
        }
    }
}
