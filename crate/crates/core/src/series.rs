//! Truncated formal power series over exact rationals, plus the scalar
//! sequences built from them (Bernoulli numbers, the coefficients of
//! `log(sinh x / x)`, shifted power sums of partition parts).

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::partitions::{aut_size, partitions_of, CVector, Partition};
use crate::rational::{binomial, factorial_q, from_biguint, int, pow, Rational};

/// A power series known exactly up to and including `z^order`.
///
/// Binary operations truncate to the smaller of the two orders. Asking for a
/// coefficient beyond the order is an error rather than a silent zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<Rational>,
}

impl PowerSeries {
    /// Takes the given coefficients, padding with zeros or truncating to `order`.
    pub fn new(mut coeffs: Vec<Rational>, order: usize) -> Self {
        coeffs.resize(order + 1, Rational::zero());
        PowerSeries { coeffs }
    }

    pub fn from_ints(coeffs: &[i64], order: usize) -> Self {
        PowerSeries::new(coeffs.iter().map(|&c| int(c)).collect(), order)
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        PowerSeries::new(vec![c], order)
    }

    pub fn one(order: usize) -> Self {
        PowerSeries::constant(Rational::one(), order)
    }

    /// `e^{a z}`.
    pub fn exp_linear(a: &Rational, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut term = Rational::one();
        for n in 0..=order {
            if n > 0 {
                term = term * a / int(n as i64);
            }
            coeffs.push(term.clone());
        }
        PowerSeries { coeffs }
    }

    /// `sinh(a z) / (a z) = sum_m (a z)^{2m} / (2m+1)!`.
    pub fn sinh_ratio(a: &Rational, order: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); order + 1];
        let a2 = a * a;
        let mut m = 0u32;
        while 2 * m as usize <= order {
            coeffs[2 * m as usize] = pow(&a2, m as i64) / factorial_q(2 * m + 1);
            m += 1;
        }
        PowerSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `[z^i] f`.
    pub fn coeff(&self, i: usize) -> Result<&Rational> {
        self.coeffs.get(i).ok_or(Error::TruncationExceeded {
            index: i,
            order: self.order(),
        })
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        PowerSeries::new(
            self.coeffs[..=order.min(self.order())].to_vec(),
            order.min(self.order()),
        )
    }

    pub fn scale(&self, k: &Rational) -> Self {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    pub fn inverse(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::SeriesDomain {
                op: "inverse",
                requirement: "a nonzero constant term",
            });
        }
        let inv0 = c0.recip();
        let n = self.order();
        let mut out: Vec<Rational> = Vec::with_capacity(n + 1);
        out.push(inv0.clone());
        for m in 1..=n {
            let mut acc = Rational::zero();
            for k in 1..=m {
                if !self.coeffs[k].is_zero() {
                    acc += &self.coeffs[k] * &out[m - k];
                }
            }
            out.push(-acc * &inv0);
        }
        Ok(PowerSeries { coeffs: out })
    }

    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::SeriesDomain {
                op: "exp",
                requirement: "a zero constant term",
            });
        }
        // g' = f' g, so n g_n = sum_{k=1}^n k f_k g_{n-k}
        let n = self.order();
        let mut out: Vec<Rational> = Vec::with_capacity(n + 1);
        out.push(Rational::one());
        for m in 1..=n {
            let mut acc = Rational::zero();
            for k in 1..=m {
                if !self.coeffs[k].is_zero() {
                    acc += &self.coeffs[k] * &out[m - k] * int(k as i64);
                }
            }
            out.push(acc / int(m as i64));
        }
        Ok(PowerSeries { coeffs: out })
    }

    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::SeriesDomain {
                op: "log",
                requirement: "constant term 1",
            });
        }
        // f g' = f', so n g_n = n f_n - sum_{k=1}^{n-1} k g_k f_{n-k}
        let n = self.order();
        let mut out: Vec<Rational> = vec![Rational::zero(); n + 1];
        for m in 1..=n {
            let mut acc = &self.coeffs[m] * int(m as i64);
            for (k, gk) in out.iter().enumerate().take(m).skip(1) {
                if !gk.is_zero() {
                    acc -= gk * &self.coeffs[m - k] * int(k as i64);
                }
            }
            out[m] = acc / int(m as i64);
        }
        Ok(PowerSeries { coeffs: out })
    }

    /// `f^e`; negative exponents need a nonzero constant term.
    pub fn int_pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = PowerSeries::one(self.order());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }
}

impl Add for &PowerSeries {
    type Output = PowerSeries;
    fn add(self, rhs: &PowerSeries) -> PowerSeries {
        let n = self.order().min(rhs.order());
        PowerSeries {
            coeffs: (0..=n).map(|i| &self.coeffs[i] + &rhs.coeffs[i]).collect(),
        }
    }
}

impl Sub for &PowerSeries {
    type Output = PowerSeries;
    fn sub(self, rhs: &PowerSeries) -> PowerSeries {
        let n = self.order().min(rhs.order());
        PowerSeries {
            coeffs: (0..=n).map(|i| &self.coeffs[i] - &rhs.coeffs[i]).collect(),
        }
    }
}

impl Neg for &PowerSeries {
    type Output = PowerSeries;
    fn neg(self) -> PowerSeries {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &PowerSeries {
    type Output = PowerSeries;
    fn mul(self, rhs: &PowerSeries) -> PowerSeries {
        let n = self.order().min(rhs.order());
        let mut coeffs = vec![Rational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(n + 1 - i) {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        PowerSeries { coeffs }
    }
}

/// `prod_i (sinh(i z/2) / (i z/2))^{c_i}` up to `z^order`; `order` must be even.
pub fn sinh_ratio_product(c: &CVector, order: usize) -> Result<PowerSeries> {
    if !order.is_multiple_of(2) {
        return Err(Error::OutOfRange {
            what: "sinh-ratio truncation order",
            value: order as i64,
            allowed: "even non-negative integers".into(),
        });
    }
    let mut acc = PowerSeries::one(order);
    for (i, ci) in c.iter() {
        let factor = PowerSeries::sinh_ratio(&Rational::new(i.into(), 2.into()), order);
        acc = &acc * &factor.int_pow(ci)?;
    }
    Ok(acc)
}

/// `[x^{2j}] log(sinh x / x)` for `j = 1..=max_j`; entry `0` is unused and zero.
pub fn xi_table(max_j: u32) -> Vec<Rational> {
    let order = 2 * max_j as usize;
    let log = PowerSeries::sinh_ratio(&Rational::one(), order)
        .log()
        .expect("sinh x / x has constant term 1");
    (0..=max_j as usize)
        .map(|j| log.coeffs[2 * j].clone())
        .collect()
}

/// `xi_{2j} = [x^{2j}] log(sinh x / x)`.
pub fn xi(j: u32) -> Result<Rational> {
    if j == 0 {
        return Err(Error::OutOfRange {
            what: "xi index j",
            value: 0,
            allowed: "j >= 1".into(),
        });
    }
    Ok(xi_table(j).swap_remove(j as usize))
}

/// Bernoulli numbers with `B_1 = -1/2`, from `sum_{k<=m} C(m+1, k) B_k = 0`.
/// Only even indices are used downstream, so the sign of `B_1` never matters.
pub fn bernoulli(k: u32) -> Rational {
    let mut b: Vec<Rational> = Vec::with_capacity(k as usize + 1);
    b.push(Rational::one());
    for m in 1..=k {
        let mut acc = Rational::zero();
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                acc += from_biguint(binomial(m + 1, j as u32)) * bj;
            }
        }
        b.push(-acc / int(m as i64 + 1));
    }
    b.swap_remove(k as usize)
}

/// `S_{2j} = -1 + sum_k beta_k^{2j}`.
pub fn shifted_power_sum_s(beta: &Partition, j: u32) -> Rational {
    let direct = beta
        .parts()
        .iter()
        .fold(int(-1), |acc, &b| acc + pow(&int(b as i64), 2 * j as i64));
    if cfg!(debug_assertions) && !beta.is_empty() {
        let c = crate::partitions::c_vector(beta).expect("nonempty");
        debug_assert_eq!(direct, s_from_c_vector(&c, j));
    }
    direct
}

/// `S_{2j} = sum_k k^{2j} c_k`, the same quantity read off the c-vector.
pub fn s_from_c_vector(c: &CVector, j: u32) -> Rational {
    c.iter().fold(Rational::zero(), |acc, (k, ck)| {
        acc + pow(&int(k as i64), 2 * j as i64) * int(ck)
    })
}

/// `sum_{lambda |- k} xi_{2 lambda} S_{2 lambda} / |Aut lambda|`, without the `2^{-2k}`.
pub(crate) fn xi_s_partition_sum(
    s_values: &[Rational],
    xi_values: &[Rational],
    k: u32,
) -> Rational {
    partitions_of(k)
        .iter()
        .map(|lambda| {
            let prod = lambda.parts().iter().fold(Rational::one(), |acc, &part| {
                acc * &xi_values[part as usize] * &s_values[part as usize]
            });
            prod / from_biguint(aut_size(lambda))
        })
        .fold(Rational::zero(), |acc, t| acc + t)
}

/// `2^{-2k} sum_{lambda |- k} xi_{2 lambda} S_{2 lambda} / |Aut lambda|`,
/// with `S` taken from the c-vector.
pub fn partition_sum_rhs(c: &CVector, k: u32) -> Rational {
    let xis = xi_table(k.max(1));
    let s: Vec<Rational> = (0..=k.max(1)).map(|j| s_from_c_vector(c, j)).collect();
    xi_s_partition_sum(&s, &xis, k) / pow(&int(2), 2 * k as i64)
}

/// `S_p(k, x) = sum_{h=0}^{k-1} (h + x)^p`, by direct summation.
///
/// Debug builds also evaluate the generating-function route and check that
/// both agree.
pub fn sum_of_powers(p: u32, k: u32, x: &Rational) -> Rational {
    let direct = sum_of_powers_direct(p, k, x);
    debug_assert_eq!(direct, sum_of_powers_egf(p, k, x));
    direct
}

pub fn sum_of_powers_direct(p: u32, k: u32, x: &Rational) -> Rational {
    (0..k).fold(Rational::zero(), |acc, h| {
        acc + pow(&(int(h as i64) + x), p as i64)
    })
}

/// `p! [z^p] e^{x z} (1 + e^z + ... + e^{(k-1) z})`.
pub fn sum_of_powers_egf(p: u32, k: u32, x: &Rational) -> Rational {
    let order = p as usize;
    let mut geometric = PowerSeries::constant(Rational::zero(), order);
    for h in 0..k {
        geometric = &geometric + &PowerSeries::exp_linear(&int(h as i64), order);
    }
    let egf = &PowerSeries::exp_linear(x, order) * &geometric;
    egf.coeff(order).expect("order p is in range") * factorial_q(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::c_vector;
    use crate::rational::ratio;

    fn q(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn mercator_and_geometric() {
        let one_plus_x = PowerSeries::from_ints(&[1, 1], 3);
        let log = one_plus_x.log().unwrap();
        assert_eq!(log.coeffs(), &[int(0), int(1), ratio(-1, 2), ratio(1, 3)]);
        let f = PowerSeries::new(vec![int(1), int(0), ratio(1, 24)], 2);
        assert_eq!(
            f.inverse().unwrap().coeffs(),
            &[int(1), int(0), ratio(-1, 24)]
        );
    }

    #[test]
    fn exp_log_round_trip() {
        let f = PowerSeries::from_ints(&[1, 3, 5], 2);
        assert_eq!(f.log().unwrap().exp().unwrap(), f);
        let g = PowerSeries::new(
            vec![int(1), ratio(2, 3), ratio(-1, 7), int(4), ratio(5, 2)],
            4,
        );
        assert_eq!(g.log().unwrap().exp().unwrap(), g);
    }

    #[test]
    fn domain_errors_are_distinct() {
        let zero_const = PowerSeries::from_ints(&[0, 1], 3);
        assert!(matches!(
            zero_const.inverse(),
            Err(Error::SeriesDomain { op: "inverse", .. })
        ));
        assert!(matches!(
            zero_const.log(),
            Err(Error::SeriesDomain { op: "log", .. })
        ));
        assert!(matches!(
            zero_const.int_pow(-1),
            Err(Error::SeriesDomain { op: "inverse", .. })
        ));
        let unit = PowerSeries::from_ints(&[1, 1], 3);
        assert!(matches!(
            unit.exp(),
            Err(Error::SeriesDomain { op: "exp", .. })
        ));
        assert_eq!(
            unit.coeff(4),
            Err(Error::TruncationExceeded { index: 4, order: 3 })
        );
    }

    #[test]
    fn mixed_orders_truncate_to_minimum() {
        let a = PowerSeries::from_ints(&[1, 1, 1, 1], 3);
        let b = PowerSeries::from_ints(&[1, 1], 1);
        assert_eq!((&a * &b).order(), 1);
        assert_eq!((&a + &b).order(), 1);
        assert!((&a * &b).coeff(2).is_err());
    }

    #[test]
    fn int_pow_matches_repeated_product() {
        let f = PowerSeries::new(vec![int(2), ratio(1, 3), int(-1)], 5);
        let cube = &(&f * &f) * &f;
        assert_eq!(f.int_pow(3).unwrap(), cube);
        let inv3 = f.int_pow(-3).unwrap();
        assert_eq!(&inv3 * &cube, PowerSeries::one(5));
        assert_eq!(f.int_pow(0).unwrap(), PowerSeries::one(5));
    }

    #[test]
    fn sinh_ratio_products() {
        let c = c_vector(&q("1,1,1")).unwrap();
        assert_eq!(
            sinh_ratio_product(&c, 2).unwrap().coeff(2).unwrap(),
            &ratio(1, 12)
        );
        let c = c_vector(&q("2")).unwrap();
        assert_eq!(
            sinh_ratio_product(&c, 2).unwrap().coeff(2).unwrap(),
            &ratio(1, 8)
        );
        let c = c_vector(&q("1")).unwrap();
        assert_eq!(sinh_ratio_product(&c, 6).unwrap(), PowerSeries::one(6));
        assert!(sinh_ratio_product(&c, 3).is_err());
    }

    #[test]
    fn odd_coefficients_vanish() {
        for d in 1..=8 {
            for beta in partitions_of(d) {
                let s = sinh_ratio_product(&c_vector(&beta).unwrap(), 8).unwrap();
                for i in (1..=7).step_by(2) {
                    assert!(s.coeff(i).unwrap().is_zero(), "beta = {beta}, i = {i}");
                }
            }
        }
    }

    #[test]
    fn xi_values() {
        assert_eq!(xi(1).unwrap(), ratio(1, 6));
        assert_eq!(xi(2).unwrap(), ratio(-1, 180));
        assert!(xi(0).is_err());
    }

    #[test]
    fn xi_agrees_with_bernoulli() {
        for j in 1..=6u32 {
            let expected = pow(&int(2), 2 * j as i64 - 1) * bernoulli(2 * j)
                / (int(j as i64) * factorial_q(2 * j));
            assert_eq!(xi(j).unwrap(), expected, "j = {j}");
        }
    }

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli(0), int(1));
        assert_eq!(bernoulli(1), ratio(-1, 2));
        assert_eq!(bernoulli(2), ratio(1, 6));
        assert_eq!(bernoulli(4), ratio(-1, 30));
        assert_eq!(bernoulli(6), ratio(1, 42));
        assert_eq!(bernoulli(12), ratio(-691, 2730));
        for k in (3..15).step_by(2) {
            assert!(bernoulli(k).is_zero());
        }
        for m in 1..=12u32 {
            let sum = (0..=m).fold(Rational::zero(), |acc, k| {
                acc + from_biguint(binomial(m + 1, k)) * bernoulli(k)
            });
            assert!(sum.is_zero());
        }
    }

    #[test]
    fn shifted_power_sums() {
        assert_eq!(shifted_power_sum_s(&q("1,1,1"), 1), int(2));
        assert_eq!(shifted_power_sum_s(&q("2"), 1), int(3));
        assert_eq!(shifted_power_sum_s(&q("3,2,2,1,1"), 2), int(114));
        let c = c_vector(&q("3,2,2,1,1")).unwrap();
        assert_eq!(s_from_c_vector(&c, 2), int(114));
    }

    #[test]
    fn partition_sum_examples() {
        let c = c_vector(&q("1,1,1")).unwrap();
        assert_eq!(partition_sum_rhs(&c, 1), ratio(1, 12));
        assert_eq!(partition_sum_rhs(&c, 0), int(1));
        let c = c_vector(&q("2")).unwrap();
        assert_eq!(partition_sum_rhs(&c, 1), ratio(1, 8));
        assert_eq!(partition_sum_rhs(&c, 0), int(1));
    }

    #[test]
    fn sinh_product_equals_xi_s_sum() {
        for d in 1..=10 {
            for beta in partitions_of(d) {
                let c = c_vector(&beta).unwrap();
                let series = sinh_ratio_product(&c, 8).unwrap();
                for k in 0..=4u32 {
                    assert_eq!(
                        series.coeff(2 * k as usize).unwrap(),
                        &partition_sum_rhs(&c, k),
                        "beta = {beta}, k = {k}"
                    );
                }
            }
        }
    }

    #[test]
    fn sums_of_powers() {
        assert_eq!(sum_of_powers(2, 2, &int(0)), int(1));
        assert_eq!(sum_of_powers(0, 5, &ratio(7, 2)), int(5));
        assert_eq!(sum_of_powers(3, 3, &ratio(1, 2)), ratio(153, 8));
        for x in [int(0), ratio(1, 2), ratio(-3, 2), int(5)] {
            for p in 0..=8 {
                for k in 1..=6 {
                    assert_eq!(
                        sum_of_powers_direct(p, k, &x),
                        sum_of_powers_egf(p, k, &x),
                        "p = {p}, k = {k}, x = {x}"
                    );
                }
            }
        }
    }
}
