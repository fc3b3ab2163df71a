//! One-part numbers with completed 3-cycles as polynomials in the parts of
//! `beta`, and the combinatorial Hodge integrals read off from them.
//!
//! The stored polynomial is `P_{g,n}(beta) = d H^{g,(2)}_{(d),beta} / s!` with
//! `s = g + (n-1)/2`. Its degrees run over `[g + (n-1)/2, 3g + (n-1)/2]`,
//! one more than the range `[g + (n-3)/2, 3g + (n-3)/2]` of `H`.
//!
//! The combinatorial Hodge integral is
//! `<<tau_{b_1} ... tau_{b_n} Lambda_{2k}>>_g = (-1)^k [beta^b] P_{g,n}`,
//! which vanishes unless `sum b + 2k = 3g + (n-1)/2`.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::multipoly::MultiPoly;
use crate::partitions::{aut_size, partitions_of, Partition};
use crate::rational::{
    factorial, factorial_q, from_biguint, int, multinomial, pow, ratio, Rational,
};
use crate::series::{bernoulli, xi_table};

fn require_odd(n: usize) -> Result<()> {
    if n.is_multiple_of(2) {
        return Err(Error::Parity(format!(
            "the number of parts n = {n} must be odd"
        )));
    }
    Ok(())
}

type PolyCache = RwLock<HashMap<(u32, usize), Arc<MultiPoly>>>;

fn poly_cache() -> &'static PolyCache {
    static CACHE: OnceLock<PolyCache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// `P_{g,n}(beta_1, ..., beta_n) = d H^{g,(2)}_{(d),beta} / s!`, expanded from
/// the xi/S closed form with `d = sum beta_i` and `S_{2j} = -1 + sum beta_i^{2j}`.
pub fn hurwitz_poly(g: u32, n: usize) -> Result<Arc<MultiPoly>> {
    require_odd(n)?;
    if let Some(p) = poly_cache()
        .read()
        .expect("poly cache poisoned")
        .get(&(g, n))
    {
        return Ok(Arc::clone(p));
    }
    let built = Arc::new(build_hurwitz_poly(g, n));
    let mut cache = poly_cache().write().expect("poly cache poisoned");
    Ok(Arc::clone(cache.entry((g, n)).or_insert(built)))
}

fn build_hurwitz_poly(g: u32, n: usize) -> MultiPoly {
    let s = g + (n as u32 - 1) / 2;
    let d = MultiPoly::power_sum(n, 1);
    let minus_one = MultiPoly::constant(n, int(-1));
    let xis = xi_table(g.max(1));
    let s_polys: Vec<MultiPoly> = (0..=g.max(1))
        .map(|j| &MultiPoly::power_sum(n, 2 * j) + &minus_one)
        .collect();

    let mut total = MultiPoly::zero(n);
    let mut d_power = d.pow(s);
    for h in 0..=g {
        let weight = from_biguint(factorial(2 * s - 2 * h))
            / (from_biguint(factorial(h) * factorial(s - h)) * pow(&int(3), h as i64));
        let mut inner = MultiPoly::zero(n);
        for lambda in partitions_of(g - h) {
            let mut term = MultiPoly::constant(n, from_biguint(aut_size(&lambda)).recip());
            for &j in lambda.parts() {
                term = &term.scale(&xis[j as usize]) * &s_polys[j as usize];
            }
            inner = &inner + &term;
        }
        total = &total + &(&d_power * &inner).scale(&weight);
        d_power = &(&d_power * &d) * &d;
    }
    total.scale(&pow(&int(2), -((s + 2 * g) as i64)))
}

/// Lowest and highest total degree of `P_{g,n}`, checked against
/// `g + (n-1)/2` and `3g + (n-1)/2`.
pub fn degree_bounds(g: u32, n: usize) -> Result<(u32, u32)> {
    let poly = hurwitz_poly(g, n)?;
    let lo = g + (n as u32 - 1) / 2;
    let hi = 3 * g + (n as u32 - 1) / 2;
    for (exp, c) in poly.terms_grevlex() {
        let deg: u32 = exp.iter().sum();
        if deg < lo || deg > hi {
            return Err(Error::IdentityFailed(format!(
                "P_{{{g},{n}}} has monomial {exp:?} (coefficient {c}) of degree {deg} outside [{lo}, {hi}]"
            )));
        }
    }
    let (min, max) = (poly.min_degree(), poly.total_degree());
    if min != Some(lo) || max != Some(hi) {
        return Err(Error::IdentityFailed(format!(
            "P_{{{g},{n}}} has degree range {min:?}..{max:?}, expected {lo}..{hi}"
        )));
    }
    Ok((lo, hi))
}

/// Index of a combinatorial Hodge integral `<<tau_b Lambda_{2k}>>_g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HodgeIndex {
    pub g: u32,
    pub b: Vec<u32>,
    pub k: u32,
}

impl HodgeIndex {
    pub fn new(g: u32, b: Vec<u32>, k: u32) -> Result<Self> {
        require_odd(b.len())?;
        if k > g {
            return Err(Error::OutOfRange {
                what: "Lambda index k",
                value: k as i64,
                allowed: format!("0..={g}"),
            });
        }
        Ok(HodgeIndex { g, b, k })
    }

    pub fn n(&self) -> usize {
        self.b.len()
    }

    pub fn order(&self) -> u32 {
        self.b.iter().sum()
    }

    /// `sum b + 2k = 3g + (n-1)/2`; the integral is zero otherwise.
    pub fn is_admissible(&self) -> bool {
        self.order() + 2 * self.k == 3 * self.g + (self.n() as u32 - 1) / 2
    }
}

pub fn hodge_integral(idx: &HodgeIndex) -> Result<Rational> {
    if !idx.is_admissible() {
        return Ok(Rational::zero());
    }
    let c = hurwitz_poly(idx.g, idx.n())?.coeff(&idx.b);
    Ok(if idx.k.is_multiple_of(2) { c } else { -c })
}

/// Convenience wrapper; negative entries of `b` give zero.
pub fn hodge(g: u32, b: &[i64], k: u32) -> Result<Rational> {
    if b.iter().any(|&x| x < 0) {
        require_odd(b.len())?;
        return Ok(Rational::zero());
    }
    hodge_integral(&HodgeIndex::new(
        g,
        b.iter().map(|&x| x as u32).collect(),
        k,
    )?)
}

/// `C_{g,n} = (2g+n-1)! (2^{2g-1} - 1) |B_{2g}| / ((2g)! (g + (n-1)/2)! 2^{3g + (n-3)/2})`.
///
/// Restricted to `g >= 1`; at `g = 0` the factor `2^{2g-1} - 1` vanishes and
/// the relation with the lowest Hodge integrals is vacuous.
pub fn lambda_g_constant(g: u32, n: usize) -> Result<Rational> {
    require_odd(n)?;
    if g == 0 {
        return Err(Error::OutOfRange {
            what: "genus g",
            value: 0,
            allowed: "g >= 1".into(),
        });
    }
    let n = n as u32;
    let numerator = factorial_q(2 * g + n - 1)
        * (pow(&int(2), 2 * g as i64 - 1) - Rational::one())
        * num_traits::abs(bernoulli(2 * g));
    let denominator = factorial_q(2 * g)
        * factorial_q(g + (n - 1) / 2)
        * pow(&int(2), 3 * g as i64 + (n as i64 - 3) / 2);
    Ok(numerator / denominator)
}

/// `c_g = (2^{2g-1} - 1) |B_{2g}| / (2^{2g-1} (2g)!)`.
pub fn faber_pandharipande_constant(g: u32) -> Result<Rational> {
    if g == 0 {
        return Err(Error::OutOfRange {
            what: "genus g",
            value: 0,
            allowed: "g >= 1".into(),
        });
    }
    let two_pow = pow(&int(2), 2 * g as i64 - 1);
    Ok(
        (&two_pow - Rational::one()) * num_traits::abs(bernoulli(2 * g))
            / (two_pow * factorial_q(2 * g)),
    )
}

/// Outcome of checking an identity between two exactly computed sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub holds: bool,
    pub lhs: Rational,
    pub rhs: Rational,
}

impl IdentityCheck {
    fn new(lhs: Rational, rhs: Rational) -> Self {
        IdentityCheck {
            holds: lhs == rhs,
            lhs,
            rhs,
        }
    }
}

/// String equation for the lowest integrals (`k = g`):
/// `<<tau_0^2 tau_b Lambda_{2g}>>_g = (2g+n) sum_i <<tau_{b - e_i} Lambda_{2g}>>_g`
/// for `sum b = g + (n+1)/2`.
pub fn verify_string(g: u32, b: &[u32]) -> Result<IdentityCheck> {
    require_odd(b.len())?;
    let n = b.len() as u32;
    let want = g + n.div_ceil(2);
    let have: u32 = b.iter().sum();
    if have != want {
        return Err(Error::IndexConstraint(format!(
            "string equation needs sum b = g + (n+1)/2 = {want}, got {have}"
        )));
    }
    let mut extended = vec![0i64, 0];
    extended.extend(b.iter().map(|&x| x as i64));
    let lhs = hodge(g, &extended, g)?;
    let mut rhs = Rational::zero();
    for i in 0..b.len() {
        let mut lowered: Vec<i64> = b.iter().map(|&x| x as i64).collect();
        lowered[i] -= 1;
        rhs += hodge(g, &lowered, g)?;
    }
    Ok(IdentityCheck::new(lhs, rhs * int((2 * g + n) as i64)))
}

/// Dilaton equation for the lowest integrals:
/// `<<tau_0 tau_1 tau_b Lambda_{2g}>>_g = (2g+n)(g + (n+1)/2) <<tau_b Lambda_{2g}>>_g`
/// for `sum b = g + (n-1)/2`.
pub fn verify_dilaton(g: u32, b: &[u32]) -> Result<IdentityCheck> {
    require_odd(b.len())?;
    let n = b.len() as u32;
    let want = g + (n - 1) / 2;
    let have: u32 = b.iter().sum();
    if have != want {
        return Err(Error::IndexConstraint(format!(
            "dilaton equation needs sum b = g + (n-1)/2 = {want}, got {have}"
        )));
    }
    let mut extended = vec![0i64, 1];
    extended.extend(b.iter().map(|&x| x as i64));
    let lhs = hodge(g, &extended, g)?;
    let base: Vec<i64> = b.iter().map(|&x| x as i64).collect();
    let rhs = hodge(g, &base, g)? * int((2 * g + n) as i64) * ratio(2 * g as i64 + n as i64 + 1, 2);
    Ok(IdentityCheck::new(lhs, rhs))
}

/// `R_{lambda mu}`: ordered set partitions `(A_1, ..., A_{l(mu)})` of the
/// index set of `lambda` with `sum_{i in A_j} lambda_i = mu_j`.
pub fn count_r(lambda: &Partition, mu: &Partition) -> Result<u64> {
    if lambda.size() != mu.size() {
        return Err(Error::SizeMismatch {
            left_name: "lambda",
            left: lambda.size(),
            right_name: "mu",
            right: mu.size(),
        });
    }
    fn assign(lambda: &[u32], remaining: &mut [u32]) -> u64 {
        let Some((&part, rest)) = lambda.split_first() else {
            return remaining.iter().all(|&r| r == 0) as u64;
        };
        let mut count = 0;
        for j in 0..remaining.len() {
            if remaining[j] >= part {
                remaining[j] -= part;
                count += assign(rest, remaining);
                remaining[j] += part;
            }
        }
        count
    }
    let mut remaining = mu.parts().to_vec();
    Ok(assign(lambda.parts(), &mut remaining))
}

/// `m_mu(x_1, ..., x_n)`: sum of `x^gamma` over the distinct rearrangements
/// `gamma` of `mu` padded with zeros.
pub fn monomial_symmetric(mu: &Partition, n: usize) -> MultiPoly {
    if mu.len() > n {
        return MultiPoly::zero(n);
    }
    let mut padded = mu.parts().to_vec();
    padded.resize(n, 0);
    padded.sort_unstable();
    let mut out = MultiPoly::zero(n);
    // walk the distinct permutations in lexicographic order
    loop {
        out = &out + &MultiPoly::monomial(padded.clone(), Rational::one());
        let Some(i) = (0..n.saturating_sub(1))
            .rev()
            .find(|&i| padded[i] < padded[i + 1])
        else {
            break;
        };
        let j = (i + 1..n)
            .rev()
            .find(|&j| padded[j] > padded[i])
            .expect("exists");
        padded.swap(i, j);
        padded[i + 1..].reverse();
    }
    out
}

/// `P_lambda = P_{lambda_1} P_{lambda_2} ...` in `n` variables.
pub fn power_sum_product(lambda: &Partition, n: usize) -> MultiPoly {
    lambda.parts().iter().fold(MultiPoly::one(n), |acc, &k| {
        &acc * &MultiPoly::power_sum(n, k)
    })
}

/// `D_{2j}(b)`: vectors of even entries `a_i <= b_i` summing to `2j`.
pub fn even_dominated_vectors(b: &[u32], total: u32) -> Vec<Vec<u32>> {
    fn rec(b: &[u32], left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        let Some((&cap, rest)) = b.split_first() else {
            if left == 0 {
                out.push(prefix.clone());
            }
            return;
        };
        let mut a = 0;
        while a <= cap && a <= left {
            prefix.push(a);
            rec(rest, left - a, prefix, out);
            prefix.pop();
            a += 2;
        }
    }
    let mut out = Vec::new();
    if total.is_multiple_of(2) {
        rec(b, total, &mut Vec::new(), &mut out);
    }
    out
}

fn check_top_degree(g: u32, b: &[u32]) -> Result<()> {
    require_odd(b.len())?;
    let want = 3 * g + (b.len() as u32 - 1) / 2;
    let have: u32 = b.iter().sum();
    if have != want {
        return Err(Error::IndexConstraint(format!(
            "top-degree term needs sum b = 3g + (n-1)/2 = {want}, got {have}"
        )));
    }
    Ok(())
}

/// `<<tau_b>>_g` (the `Lambda_0` integral) by the combinatorial expansion over
/// `h`, `lambda |- g-h` and `a in D_{2g-2h}(b)` using `R_{2 lambda, P_a}`.
pub fn top_degree_term(g: u32, b: &[u32]) -> Result<Rational> {
    check_top_degree(g, b)?;
    let n = b.len() as u32;
    let s = g + (n - 1) / 2;
    let xis = xi_table(g.max(1));
    let mut total = Rational::zero();
    for h in 0..=g {
        let weight = from_biguint(factorial(2 * s - 2 * h))
            / (from_biguint(factorial(h) * factorial(s - h)) * pow(&int(3), h as i64));
        let vectors = even_dominated_vectors(b, 2 * (g - h));
        let mut inner = Rational::zero();
        for lambda in partitions_of(g - h) {
            let doubled = Partition::new(lambda.parts().iter().map(|&p| 2 * p).collect())?;
            let xi_prod = lambda
                .parts()
                .iter()
                .fold(Rational::one(), |acc, &j| acc * &xis[j as usize]);
            let aut = from_biguint(aut_size(&lambda));
            for a in &vectors {
                let pa = Partition::new(a.iter().copied().filter(|&x| x > 0).collect())?;
                let r = count_r(&doubled, &pa)?;
                if r == 0 {
                    continue;
                }
                let rest: Vec<i64> = b
                    .iter()
                    .zip(a)
                    .map(|(&bi, &ai)| bi as i64 - ai as i64)
                    .collect();
                let multi = multinomial((s + 2 * h) as i64, &rest);
                inner += &xi_prod * int(r as i64) * from_biguint(multi) / &aut;
            }
        }
        total += weight * inner;
    }
    let value = total / pow(&int(2), (3 * g + (n - 1) / 2) as i64);
    debug_assert_eq!(value, hodge_integral(&HodgeIndex::new(g, b.to_vec(), 0)?)?);
    Ok(value)
}

/// Closed genus-one top term, for `sum b = (n+5)/2`:
/// `(n+1)! / (3 * 2^{(n+7)/2} ((n+1)/2)!) [ (1/n) binom((n+5)/2; b) + sum_i binom((n+1)/2; b - 2 e_i) ]`.
///
/// Without the `((n+1)/2)!` in the denominator this is the coefficient of
/// `d H` rather than of `d H / s!`.
pub fn genus1_top(b: &[u32]) -> Result<Rational> {
    check_top_degree(1, b)?;
    let n = b.len() as i64;
    let bs: Vec<i64> = b.iter().map(|&x| x as i64).collect();
    let mut bracket = from_biguint(multinomial((n + 5) / 2, &bs)) / int(n);
    for i in 0..bs.len() {
        let mut lowered = bs.clone();
        lowered[i] -= 2;
        bracket += from_biguint(multinomial((n + 1) / 2, &lowered));
    }
    let s = (n as u32).div_ceil(2);
    Ok(factorial_q(n as u32 + 1) * bracket / (int(3) * pow(&int(2), (n + 7) / 2) * factorial_q(s)))
}

/// All `b` of length `n` with entries summing to `total`.
pub fn compositions(n: usize, total: u32) -> Vec<Vec<u32>> {
    fn rec(n: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() + 1 == n {
            prefix.push(left);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for x in (0..=left).rev() {
            prefix.push(x);
            rec(n, left - x, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(n, total, &mut Vec::new(), &mut out);
    out
}
