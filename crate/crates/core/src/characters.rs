//! Irreducible characters of the symmetric group and the shifted symmetric
//! functions built from them.
//!
//! Characters come from the Murnaghan-Nakayama rule, run on beta-sets
//! (first-column hook lengths): removing a border strip of length `r` is
//! moving a bead from position `b` to a free position `b - r`, with sign
//! `(-1)^(beads jumped over)`. Results are memoised in a process-wide table
//! keyed by `(lambda, mu)`; the table is write-once per key, so concurrent
//! callers always observe the same values.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::sync::{OnceLock, RwLock};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::partitions::{c_vector, dimension, partitions_of, perm_class_size, Partition};
use crate::rational::{factorial_q, from_biguint, int, pow, ratio, Rational};
use crate::series::PowerSeries;

type MemoKey = (Vec<u32>, Vec<u32>);

fn memo() -> &'static RwLock<HashMap<MemoKey, i64>> {
    static MEMO: OnceLock<RwLock<HashMap<MemoKey, i64>>> = OnceLock::new();
    MEMO.get_or_init(|| RwLock::new(HashMap::new()))
}

fn check_sizes(lambda: &Partition, mu: &Partition) -> Result<()> {
    if lambda.size() != mu.size() {
        return Err(Error::SizeMismatch {
            left_name: "lambda",
            left: lambda.size(),
            right_name: "mu",
            right: mu.size(),
        });
    }
    Ok(())
}

/// `chi^lambda_mu`.
pub fn character(lambda: &Partition, mu: &Partition) -> Result<i64> {
    check_sizes(lambda, mu)?;
    Ok(mn_rule(lambda.parts(), mu.parts()))
}

fn mn_rule(lambda: &[u32], mu: &[u32]) -> i64 {
    let Some((&strip, rest)) = mu.split_first() else {
        return 1;
    };
    if lambda.len() == 1 {
        return 1;
    }
    let key = (lambda.to_vec(), mu.to_vec());
    if let Some(&v) = memo().read().expect("character memo poisoned").get(&key) {
        return v;
    }

    let l = lambda.len();
    let beads: Vec<u32> = lambda
        .iter()
        .enumerate()
        .map(|(i, &p)| p + (l - 1 - i) as u32)
        .collect();
    let mut total: i64 = 0;
    for (idx, &b) in beads.iter().enumerate() {
        if b < strip {
            continue;
        }
        let target = b - strip;
        if beads.contains(&target) {
            continue;
        }
        // beads are strictly decreasing, so the jumped beads sit right after idx
        let jumped = beads[idx + 1..].iter().filter(|&&x| x > target).count();
        let mut moved: Vec<u32> = beads.clone();
        moved[idx] = target;
        moved.sort_unstable_by(|a, b| b.cmp(a));
        let reduced: Vec<u32> = moved
            .iter()
            .enumerate()
            .map(|(i, &x)| x - (l - 1 - i) as u32)
            .filter(|&p| p > 0)
            .collect();
        let term = mn_rule(&reduced, rest);
        let signed = if jumped % 2 == 0 { term } else { -term };
        total = total.checked_add(signed).expect("character value overflow");
    }

    memo()
        .write()
        .expect("character memo poisoned")
        .entry(key)
        .or_insert(total);
    total
}

/// `chi^{(d-k, 1^k)}_beta = (-1)^k [z^k] prod_i (1 - z^i)^{c_i}`.
pub fn hook_character(d: u32, k: u32, beta: &Partition) -> Result<i64> {
    if beta.size() != d {
        return Err(Error::SizeMismatch {
            left_name: "hook",
            left: d,
            right_name: "beta",
            right: beta.size(),
        });
    }
    if d == 0 || k >= d {
        return Err(Error::OutOfRange {
            what: "hook leg k",
            value: k as i64,
            allowed: format!("0..={}", d.saturating_sub(1)),
        });
    }
    let order = k as usize;
    let mut acc = PowerSeries::one(order);
    for (i, ci) in c_vector(beta)?.iter() {
        let mut factor = vec![int(1)];
        factor.resize(i as usize + 1, int(0));
        factor[i as usize] = int(-1);
        acc = &acc * &PowerSeries::new(factor, order).int_pow(ci)?;
    }
    let coeff = acc.coeff(order)?;
    debug_assert!(coeff.is_integer());
    let value = i64::try_from(coeff.to_integer()).expect("hook character fits in i64");
    Ok(if k.is_multiple_of(2) { value } else { -value })
}

/// `p_k(lambda) = sum_i ((lambda_i - i + 1/2)^k - (-i + 1/2)^k)`.
///
/// Only rows `i <= l(lambda)` contribute; the remaining terms of the infinite
/// sum cancel exactly.
pub fn shifted_power_sum_p(k: u32, lambda: &Partition) -> Rational {
    lambda
        .parts()
        .iter()
        .enumerate()
        .fold(Rational::zero(), |acc, (i, &part)| {
            let row = i as i64 + 1;
            let shifted = ratio(2 * (part as i64 - row) + 1, 2);
            let base = ratio(-2 * row + 1, 2);
            acc + pow(&shifted, k as i64) - pow(&base, k as i64)
        })
}

/// `p_3((d-k, 1^k)) = 3d ((k - (d-1)/2)^2 + d^2/12)`.
pub fn p3_hook(d: u32, k: u32) -> Result<Rational> {
    if d == 0 || k >= d {
        return Err(Error::OutOfRange {
            what: "hook leg k",
            value: k as i64,
            allowed: format!("0..={}", d.saturating_sub(1)),
        });
    }
    let d_q = int(d as i64);
    let centred = int(k as i64) - ratio(d as i64 - 1, 2);
    Ok(int(3) * &d_q * (&centred * &centred + &d_q * &d_q / int(12)))
}

/// `f_mu(lambda) = |Per(mu)| chi^lambda_mu / dim(lambda)`.
pub fn f_value(mu: &Partition, lambda: &Partition) -> Result<Rational> {
    check_sizes(lambda, mu)?;
    let chi = character(lambda, mu)?;
    Ok(from_biguint(perm_class_size(mu)) * int(chi) / from_biguint(dimension(lambda)?))
}

/// An element of the centre of `Q[S_d]` in the class-sum basis `C_mu`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassVector {
    d: u32,
    coeffs: BTreeMap<Partition, Rational>,
}

impl ClassVector {
    pub fn zero(d: u32) -> Self {
        ClassVector {
            d,
            coeffs: BTreeMap::new(),
        }
    }

    /// The single class sum `C_mu`.
    pub fn class(mu: Partition) -> Self {
        let d = mu.size();
        let mut v = ClassVector::zero(d);
        v.coeffs.insert(mu, Rational::one());
        v
    }

    pub fn identity(d: u32) -> Self {
        ClassVector::class(Partition::ones(d))
    }

    pub fn from_terms<I: IntoIterator<Item = (Partition, Rational)>>(
        d: u32,
        terms: I,
    ) -> Result<Self> {
        let mut v = ClassVector::zero(d);
        for (mu, c) in terms {
            if mu.size() != d {
                return Err(Error::SizeMismatch {
                    left_name: "class",
                    left: mu.size(),
                    right_name: "degree",
                    right: d,
                });
            }
            v.add_term(mu, c);
        }
        Ok(v)
    }

    pub(crate) fn add_term(&mut self, mu: Partition, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(mu) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn coeff(&self, mu: &Partition) -> Rational {
        self.coeffs.get(mu).cloned().unwrap_or_else(Rational::zero)
    }

    /// Nonzero terms, classes in reverse-lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &Rational)> {
        self.coeffs.iter().rev()
    }

    pub fn scale(&self, k: &Rational) -> Self {
        ClassVector::from_terms(self.d, self.coeffs.iter().map(|(m, c)| (m.clone(), c * k)))
            .expect("same degree")
    }

    /// Central character `sum_nu a_nu f_nu(lambda)`: the scalar by which this
    /// element acts on the irreducible module `lambda`.
    pub fn eigenvalue(&self, lambda: &Partition) -> Result<Rational> {
        self.coeffs
            .iter()
            .try_fold(Rational::zero(), |acc, (nu, a)| {
                Ok(acc + a * f_value(nu, lambda)?)
            })
    }
}

/// The completed cycle `phi^{-1}(p_{r+1}) / (r+1)!` realised in `Z Q[S_d]`.
///
/// Solved from `p_{r+1}(lambda)/(r+1)! = sum_nu a_nu f_nu(lambda)` over all
/// `lambda |- d` by exact Gaussian elimination.
pub fn completed_cycle_class(r_plus_1: u32, d: u32) -> Result<ClassVector> {
    if r_plus_1 == 0 || d == 0 {
        return Err(Error::OutOfRange {
            what: if d == 0 {
                "degree d"
            } else {
                "cycle length r+1"
            },
            value: 0,
            allowed: ">= 1".into(),
        });
    }
    let parts = partitions_of(d);
    let norm = factorial_q(r_plus_1);
    let mut rows: Vec<Vec<Rational>> = parts
        .iter()
        .map(|lambda| {
            let mut row = parts
                .iter()
                .map(|nu| f_value(nu, lambda))
                .collect::<Result<Vec<_>>>()?;
            row.push(shifted_power_sum_p(r_plus_1, lambda) / &norm);
            Ok(row)
        })
        .collect::<Result<_>>()?;
    let solution = solve_augmented(&mut rows);
    ClassVector::from_terms(d, parts.into_iter().zip(solution))
}

/// Solves a square system given as augmented rows. Panics if singular.
fn solve_augmented(rows: &mut [Vec<Rational>]) -> Vec<Rational> {
    let n = rows.len();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !rows[r][col].is_zero())
            .expect("value matrix of the f-basis is invertible");
        rows.swap(col, pivot);
        let inv = rows[col][col].recip();
        for x in rows[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r == col || rows[r][col].is_zero() {
                continue;
            }
            let factor = rows[r][col].clone();
            let pivot_row = rows[col].clone();
            for (x, p) in rows[r].iter_mut().zip(&pivot_row).skip(col) {
                *x -= &factor * p;
            }
        }
    }
    rows.iter().map(|row| row[n].clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    /// Frobenius' formula: chi^lambda_mu = [x^{lambda + delta}] a_delta p_mu in
    /// l(lambda) variables. Independent of the bead-moving recursion.
    fn frobenius_character(lambda: &Partition, mu: &Partition) -> i64 {
        let n = lambda.len();
        let mut poly: HashMap<Vec<u32>, i64> = HashMap::from([(vec![0; n], 1)]);
        for &part in mu.parts() {
            let mut next = HashMap::new();
            for (exp, c) in &poly {
                for v in 0..n {
                    let mut e = exp.clone();
                    e[v] += part;
                    *next.entry(e).or_insert(0) += c;
                }
            }
            poly = next;
        }
        let target: Vec<i64> = lambda
            .parts()
            .iter()
            .enumerate()
            .map(|(i, &x)| (x + (n - 1 - i) as u32) as i64)
            .collect();
        let mut total = 0;
        for (perm, sign) in permutations_with_sign(n) {
            let exp: Option<Vec<u32>> = (0..n)
                .map(|i| {
                    let e = target[i] - (n - 1 - perm[i]) as i64;
                    (e >= 0).then_some(e as u32)
                })
                .collect();
            if let Some(exp) = exp {
                total += sign * poly.get(&exp).copied().unwrap_or(0);
            }
        }
        total
    }

    fn permutations_with_sign(n: usize) -> Vec<(Vec<usize>, i64)> {
        if n == 0 {
            return vec![(vec![], 1)];
        }
        let mut out = Vec::new();
        for (perm, sign) in permutations_with_sign(n - 1) {
            for pos in 0..=perm.len() {
                let mut q = perm.clone();
                q.insert(pos, n - 1);
                let moves = (perm.len() - pos) as i64;
                out.push((q, if moves % 2 == 0 { sign } else { -sign }));
            }
        }
        out
    }

    #[test]
    fn small_character_values() {
        assert_eq!(character(&p("2,1"), &p("3")).unwrap(), -1);
        assert_eq!(character(&p("1,1,1"), &p("2,1")).unwrap(), -1);
        for d in 1..=6 {
            for mu in partitions_of(d) {
                assert_eq!(character(&Partition::single(d), &mu).unwrap(), 1);
            }
        }
        assert!(character(&p("2,1"), &p("2")).is_err());
        assert_eq!(
            character(&Partition::empty(), &Partition::empty()).unwrap(),
            1
        );
    }

    #[test]
    fn matches_frobenius_formula() {
        for d in 1..=6 {
            for lambda in partitions_of(d) {
                for mu in partitions_of(d) {
                    assert_eq!(
                        character(&lambda, &mu).unwrap(),
                        frobenius_character(&lambda, &mu),
                        "lambda = {lambda}, mu = {mu}"
                    );
                }
            }
        }
    }

    #[test]
    fn identity_column_is_dimension() {
        for d in 1..=8 {
            for lambda in partitions_of(d) {
                let chi = character(&lambda, &Partition::ones(d)).unwrap();
                assert_eq!(BigUint::from(chi as u64), dimension(&lambda).unwrap());
            }
        }
    }

    #[test]
    fn column_orthogonality() {
        for d in 1..=7 {
            let all = partitions_of(d);
            for mu in &all {
                for nu in &all {
                    let sum: i64 = all
                        .iter()
                        .map(|l| character(l, mu).unwrap() * character(l, nu).unwrap())
                        .sum();
                    let expected = if mu == nu {
                        crate::rational::factorial(d) / perm_class_size(mu)
                    } else {
                        BigUint::zero()
                    };
                    assert_eq!(BigUint::from(sum as u64), expected, "mu = {mu}, nu = {nu}");
                }
            }
        }
    }

    #[test]
    fn hook_characters() {
        let ones = Partition::ones(3);
        let vals: Vec<i64> = (0..3)
            .map(|k| hook_character(3, k, &ones).unwrap())
            .collect();
        assert_eq!(vals, [1, 2, 1]);
        assert_eq!(hook_character(2, 1, &p("2")).unwrap(), -1);
        assert_eq!(hook_character(2, 0, &p("2")).unwrap(), 1);
        assert!(hook_character(3, 3, &ones).is_err());
        assert!(hook_character(4, 0, &ones).is_err());
        for d in 1..=8 {
            for beta in partitions_of(d) {
                assert_eq!(hook_character(d, 0, &beta).unwrap(), 1);
                for k in 0..d {
                    assert_eq!(
                        hook_character(d, k, &beta).unwrap(),
                        character(&Partition::hook(d, k).unwrap(), &beta).unwrap(),
                        "d = {d}, k = {k}, beta = {beta}"
                    );
                }
            }
        }
    }

    #[test]
    fn shifted_power_sums() {
        assert_eq!(shifted_power_sum_p(3, &p("3")), ratio(63, 4));
        assert_eq!(shifted_power_sum_p(3, &p("1,1")), ratio(7, 2));
        assert_eq!(shifted_power_sum_p(5, &Partition::empty()), int(0));
        for d in 1..=6 {
            for lambda in partitions_of(d) {
                assert_eq!(shifted_power_sum_p(1, &lambda), int(d as i64));
            }
        }
    }

    #[test]
    fn p3_on_hooks() {
        assert_eq!(p3_hook(3, 0).unwrap(), ratio(63, 4));
        assert_eq!(p3_hook(2, 1).unwrap(), ratio(7, 2));
        assert_eq!(p3_hook(3, 1).unwrap(), ratio(27, 4));
        assert!(p3_hook(3, 3).is_err());
        for d in 1..=12 {
            for k in 0..d {
                assert_eq!(
                    p3_hook(d, k).unwrap(),
                    shifted_power_sum_p(3, &Partition::hook(d, k).unwrap())
                );
            }
        }
    }

    #[test]
    fn f_values() {
        assert_eq!(f_value(&p("3"), &p("2,1")).unwrap(), int(-1));
        assert_eq!(f_value(&p("2,1"), &p("3")).unwrap(), int(3));
        for lambda in partitions_of(3) {
            assert_eq!(f_value(&p("1,1,1"), &lambda).unwrap(), int(1));
        }
        assert!(f_value(&p("2"), &p("2,1")).is_err());
    }

    #[test]
    fn completed_cycles_small() {
        assert_eq!(
            completed_cycle_class(2, 2).unwrap(),
            ClassVector::class(p("2"))
        );
        let c3 = completed_cycle_class(3, 3).unwrap();
        assert_eq!(c3.coeff(&p("3")), ratio(1, 2));
        assert_eq!(c3.coeff(&p("1,1,1")), ratio(13, 8));
        assert_eq!(c3.coeff(&p("2,1")), int(0));
        assert_eq!(
            completed_cycle_class(1, 3).unwrap(),
            ClassVector::class(Partition::ones(3)).scale(&int(3))
        );
        for d in 2..=7 {
            let mut transposition = vec![2];
            transposition.extend(std::iter::repeat_n(1, d as usize - 2));
            assert_eq!(
                completed_cycle_class(2, d).unwrap(),
                ClassVector::class(Partition::new(transposition).unwrap())
            );
        }
    }

    /// Embedding a class of `S_m` into `S_d` as a partial permutation
    /// multiplies it by `binom(d - m + n_1, n_1)`. Under that reading, the
    /// published small expansions
    ///   2! (3) = (3) + (1,1) + 1/12 (1)
    ///   3! (4) = (4) + 2 (2,1) + 5/4 (2)
    /// land exactly on the solved class vectors.
    #[test]
    fn binomial_completion_of_small_classes() {
        let c = completed_cycle_class(3, 4).unwrap().scale(&int(2));
        assert_eq!(c.coeff(&p("3,1")), int(1));
        assert_eq!(c.coeff(&p("1,1,1,1")), int(6) + ratio(4, 12));
        let c = completed_cycle_class(4, 4).unwrap().scale(&int(6));
        assert_eq!(c.coeff(&p("4")), int(1));
        assert_eq!(c.coeff(&p("2,1,1")), int(2 * 2) + ratio(5, 4));
        assert_eq!(c.coeff(&p("3,1")), int(0));
        let c = completed_cycle_class(4, 5).unwrap().scale(&int(6));
        assert_eq!(c.coeff(&p("4,1")), int(1));
        assert_eq!(c.coeff(&p("2,1,1,1")), int(2 * 3) + ratio(5, 4));
    }

    #[test]
    fn completed_cycle_reconstruction() {
        for r1 in 1..=4 {
            for d in 1..=6 {
                let class = completed_cycle_class(r1, d).unwrap();
                for lambda in partitions_of(d) {
                    assert_eq!(
                        class.eigenvalue(&lambda).unwrap(),
                        shifted_power_sum_p(r1, &lambda) / factorial_q(r1)
                    );
                }
            }
        }
    }
}
