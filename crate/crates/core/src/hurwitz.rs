//! Double Hurwitz numbers with completed `(r+1)`-cycles.
//!
//! Three independent routes are provided:
//!
//! * [`hurwitz_definition`]: the character sum over all `lambda |- d`;
//! * closed forms for one-part numbers, [`one_part_completed3`] (`r = 2`) and
//!   [`one_part_ordinary`] (`r = 1`), each evaluated in a sinh-series form and
//!   in a xi/S form;
//! * [`factorization_count`]: a character-free count obtained by multiplying
//!   class sums in the centre of `Q[S_d]`.
//!
//! The number `s` of completed cycles is never supplied by the caller; it is
//! derived from `r s = 2g - 2 + l(alpha) + l(beta)`.

use num_traits::{One, Zero};

use crate::characters::{character, completed_cycle_class, shifted_power_sum_p, ClassVector};
use crate::class_algebra::ClassAlgebra;
use crate::error::{Error, Result};
use crate::par::{self, Execution};
use crate::partitions::{aut_size, c_vector, partitions_of, Partition};
use crate::rational::{factorial, factorial_q, from_biguint, int, pow, Rational};
use crate::series::{s_from_c_vector, sinh_ratio_product, xi_s_partition_sum, xi_table};

/// Largest degree accepted by [`factorization_count`].
pub const FACTORIZATION_MAX_DEGREE: u32 = 5;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HurwitzQuery {
    r: u32,
    g: u32,
    alpha: Partition,
    beta: Partition,
    s: u32,
}

impl HurwitzQuery {
    pub fn new(r: u32, g: u32, alpha: Partition, beta: Partition) -> Result<Self> {
        if r == 0 {
            return Err(Error::OutOfRange {
                what: "r",
                value: 0,
                allowed: "r >= 1".into(),
            });
        }
        if alpha.is_empty() || beta.is_empty() {
            return Err(Error::InvalidPartition(
                "alpha and beta must be nonempty partitions".into(),
            ));
        }
        if alpha.size() != beta.size() {
            return Err(Error::SizeMismatch {
                left_name: "alpha",
                left: alpha.size(),
                right_name: "beta",
                right: beta.size(),
            });
        }
        let euler = 2 * g as i64 - 2 + alpha.len() as i64 + beta.len() as i64;
        if euler < 0 {
            return Err(Error::Ramification(format!(
                "2g - 2 + l(alpha) + l(beta) = {euler} is negative"
            )));
        }
        if euler % r as i64 != 0 {
            return Err(Error::Ramification(format!(
                "r * s = 2g - 2 + l(alpha) + l(beta) = {euler} is not divisible by r = {r}"
            )));
        }
        Ok(HurwitzQuery {
            r,
            g,
            alpha,
            beta,
            s: (euler / r as i64) as u32,
        })
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn g(&self) -> u32 {
        self.g
    }

    pub fn alpha(&self) -> &Partition {
        &self.alpha
    }

    pub fn beta(&self) -> &Partition {
        &self.beta
    }

    /// Number of completed-cycle insertions.
    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn d(&self) -> u32 {
        self.alpha.size()
    }

    pub fn is_one_part(&self) -> bool {
        self.alpha.len() == 1 || self.beta.len() == 1
    }
}

/// `H = 1/(prod alpha_i prod beta_j) sum_lambda chi^lambda_alpha (p_{r+1}(lambda)/(r+1)!)^s chi^lambda_beta`.
pub fn hurwitz_definition(q: &HurwitzQuery) -> Result<Rational> {
    hurwitz_definition_with(q, Execution::default())
}

pub fn hurwitz_definition_with(q: &HurwitzQuery, exec: Execution) -> Result<Rational> {
    let d = q.d();
    // chi^lambda_{(d)} vanishes off hooks
    let lambdas: Vec<Partition> = if q.is_one_part() {
        (0..d)
            .map(|k| Partition::hook(d, k))
            .collect::<Result<_>>()?
    } else {
        partitions_of(d)
    };
    let norm = factorial_q(q.r + 1);
    let terms = par::try_map(exec, &lambdas, |lambda| -> Result<Rational> {
        let ca = character(lambda, &q.alpha)?;
        let cb = character(lambda, &q.beta)?;
        if ca == 0 || cb == 0 {
            return Ok(Rational::zero());
        }
        let eigen = shifted_power_sum_p(q.r + 1, lambda) / &norm;
        Ok(int(ca * cb) * pow(&eigen, q.s as i64))
    })?;
    let sum = terms.into_iter().fold(Rational::zero(), |acc, t| acc + t);
    Ok(sum / from_biguint(q.alpha.product_of_parts() * q.beta.product_of_parts()))
}

/// Precondition of the completed 3-cycle closed form; returns `l(beta)`.
pub fn odd_length_beta(beta: &Partition) -> Result<u32> {
    if beta.is_empty() {
        return Err(Error::InvalidPartition("beta must be nonempty".into()));
    }
    let n = beta.len() as u32;
    if n.is_multiple_of(2) {
        return Err(Error::Parity(format!(
            "beta = ({beta}) has even length {n}; the completed 3-cycle closed form needs a \
             partition of odd length, since 2s = 2g - 1 + n requires n odd"
        )));
    }
    Ok(n)
}

/// Common prefactor data of the two `r = 2` closed forms.
struct Completed3 {
    s: u32,
    d: Rational,
    prefactor: Rational,
}

impl Completed3 {
    fn new(g: u32, beta: &Partition) -> Result<Self> {
        let n = odd_length_beta(beta)?;
        let s = g + (n - 1) / 2;
        let d = int(beta.size() as i64);
        let prefactor = factorial_q(s) * pow(&d, s as i64 - 1);
        Ok(Completed3 { s, d, prefactor })
    }

    /// `(2s-2h)! / (h! (s-h)! base^h) d^{2h}`.
    fn weight(&self, h: u32, base: i64) -> Rational {
        from_biguint(factorial(2 * self.s - 2 * h))
            / (from_biguint(factorial(h) * factorial(self.s - h)) * pow(&int(base), h as i64))
            * pow(&self.d, 2 * h as i64)
    }
}

/// One-part number `H^{g,(2)}_{(d),beta}` from the sinh-series closed form:
/// `s! d^{s-1} / 2^s sum_h (2s-2h)!/(h!(s-h)! 12^h) d^{2h} [z^{2(g-h)}] prod (sinh(iz/2)/(iz/2))^{c_i}`.
pub fn one_part_completed3_series(g: u32, beta: &Partition) -> Result<Rational> {
    let setup = Completed3::new(g, beta)?;
    let series = sinh_ratio_product(&c_vector(beta)?, 2 * g as usize + 2)?;
    let mut sum = Rational::zero();
    for h in 0..=g {
        sum += setup.weight(h, 12) * series.coeff(2 * (g - h) as usize)?;
    }
    Ok(setup.prefactor * sum / pow(&int(2), setup.s as i64))
}

/// Same number from the xi/S form:
/// `s! d^{s-1} / 2^{s+2g} sum_h (2s-2h)!/(h!(s-h)! 3^h) d^{2h} sum_{lambda |- g-h} xi_{2 lambda} S_{2 lambda} / |Aut lambda|`.
pub fn one_part_completed3_xi(g: u32, beta: &Partition) -> Result<Rational> {
    let setup = Completed3::new(g, beta)?;
    let c = c_vector(beta)?;
    let xis = xi_table(g.max(1));
    let s_vals: Vec<Rational> = (0..=g.max(1)).map(|j| s_from_c_vector(&c, j)).collect();
    let mut sum = Rational::zero();
    for h in 0..=g {
        sum += setup.weight(h, 3) * xi_s_partition_sum(&s_vals, &xis, g - h);
    }
    Ok(setup.prefactor * sum / pow(&int(2), (setup.s + 2 * g) as i64))
}

/// `H^{g,(2)}_{(d),beta}` for `l(beta)` odd.
///
/// Uses the xi/S form; debug builds also evaluate the series form and assert
/// that they agree.
pub fn one_part_completed3(g: u32, beta: &Partition) -> Result<Rational> {
    let value = one_part_completed3_xi(g, beta)?;
    debug_assert_eq!(value, one_part_completed3_series(g, beta)?);
    Ok(value)
}

/// Ordinary one-part number `H^g_{(d),beta} = k! d^{k-1} [z^{2g}] prod (sinh(jz/2)/(jz/2))^{c_j}`
/// with `k = 2g - 1 + l(beta)`.
pub fn one_part_ordinary(g: u32, beta: &Partition) -> Result<Rational> {
    let value = one_part_ordinary_series(g, beta)?;
    debug_assert_eq!(value, one_part_ordinary_xi(g, beta)?);
    Ok(value)
}

fn ordinary_prefactor(g: u32, beta: &Partition) -> Result<Rational> {
    if beta.is_empty() {
        return Err(Error::InvalidPartition("beta must be nonempty".into()));
    }
    let k = 2 * g + beta.len() as u32 - 1;
    Ok(factorial_q(k) * pow(&int(beta.size() as i64), k as i64 - 1))
}

pub fn one_part_ordinary_series(g: u32, beta: &Partition) -> Result<Rational> {
    let prefactor = ordinary_prefactor(g, beta)?;
    let series = sinh_ratio_product(&c_vector(beta)?, 2 * g as usize + 2)?;
    Ok(prefactor * series.coeff(2 * g as usize)?)
}

pub fn one_part_ordinary_xi(g: u32, beta: &Partition) -> Result<Rational> {
    let prefactor = ordinary_prefactor(g, beta)?;
    let c = c_vector(beta)?;
    let xis = xi_table(g.max(1));
    let s_vals: Vec<Rational> = (0..=g.max(1)).map(|j| s_from_c_vector(&c, j)).collect();
    Ok(prefactor * xi_s_partition_sum(&s_vals, &xis, g) / pow(&int(2), 2 * g as i64))
}

/// Weighted count of factorizations `h_1 ... h_s g_1 g_2 = 1`, read off as the
/// identity coefficient of `(completed cycle)^s C_alpha C_beta`.
///
/// Equals `d! / (|Aut alpha| |Aut beta|) H`. Limited to
/// `d <= FACTORIZATION_MAX_DEGREE`.
pub fn factorization_count(q: &HurwitzQuery) -> Result<Rational> {
    factorization_count_bounded(q, FACTORIZATION_MAX_DEGREE)
}

/// [`factorization_count`] with a caller-chosen degree limit.
pub fn factorization_count_bounded(q: &HurwitzQuery, max_d: u32) -> Result<Rational> {
    let d = q.d();
    if d > max_d {
        return Err(Error::ResourceGuard {
            d,
            limit: max_d,
            method: "factorization",
        });
    }
    let algebra = ClassAlgebra::new(d);
    let cycle = completed_cycle_class(q.r + 1, d)?;
    let base = algebra.multiply(
        &ClassVector::class(q.alpha.clone()),
        &ClassVector::class(q.beta.clone()),
    )?;
    let product = algebra.multiply(&algebra.power(&cycle, q.s)?, &base)?;
    Ok(algebra.identity_coefficient(&product))
}

/// The normalising factor `d! / (|Aut alpha| |Aut beta|)` relating
/// [`factorization_count`] to the Hurwitz number.
pub fn factorization_normaliser(q: &HurwitzQuery) -> Rational {
    factorial_q(q.d()) / from_biguint(aut_size(&q.alpha) * aut_size(&q.beta))
}

/// `(2 d^2 - 1) / 24`, the value of `H^{1,(2)}_{(d),(d)}`.
pub fn genus_one_single_part(d: u32) -> Rational {
    let d = int(d as i64);
    (int(2) * &d * &d - Rational::one()) / int(24)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::class_algebra::{compose, cycle_type, permutations};
    use crate::rational::ratio;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn query(r: u32, g: u32, a: &str, b: &str) -> HurwitzQuery {
        HurwitzQuery::new(r, g, p(a), p(b)).unwrap()
    }

    #[test]
    fn derived_s() {
        assert_eq!(query(2, 1, "2", "2").s(), 1);
        assert_eq!(query(2, 0, "3", "1,1,1").s(), 1);
        assert_eq!(query(1, 0, "2", "2").s(), 0);
        assert!(matches!(
            HurwitzQuery::new(2, 0, p("3"), p("2,1")),
            Err(Error::Ramification(_))
        ));
        assert!(matches!(
            HurwitzQuery::new(2, 0, p("3"), p("2")),
            Err(Error::SizeMismatch { .. })
        ));
        assert!(HurwitzQuery::new(0, 0, p("1"), p("1")).is_err());
    }

    #[test]
    fn definition_examples() {
        assert_eq!(
            hurwitz_definition(&query(2, 0, "3", "1,1,1")).unwrap(),
            int(1)
        );
        assert_eq!(
            hurwitz_definition(&query(2, 1, "2", "2")).unwrap(),
            ratio(7, 24)
        );
        assert_eq!(
            hurwitz_definition(&query(1, 0, "2", "2")).unwrap(),
            ratio(1, 2)
        );
    }

    #[test]
    fn sequential_and_parallel_agree() {
        for (r, g, a, b) in [
            (2, 1, "4,2", "2,2,1,1"),
            (1, 1, "3,3", "2,2,1,1"),
            (2, 2, "6", "4,1,1"),
        ] {
            let q = query(r, g, a, b);
            assert_eq!(
                hurwitz_definition_with(&q, Execution::Sequential).unwrap(),
                hurwitz_definition_with(&q, Execution::Parallel).unwrap()
            );
        }
    }

    #[test]
    fn completed3_examples() {
        assert_eq!(one_part_completed3(0, &p("1,1,1")).unwrap(), int(1));
        assert_eq!(one_part_completed3(1, &p("2")).unwrap(), ratio(7, 24));
        assert_eq!(one_part_completed3(1, &p("3")).unwrap(), ratio(17, 24));
        assert_eq!(
            one_part_completed3_series(1, &p("2")).unwrap(),
            ratio(7, 24)
        );
        assert!(matches!(
            one_part_completed3(0, &p("2,1")),
            Err(Error::Parity(_))
        ));
    }

    #[test]
    fn completed3_against_definition() {
        for d in 1..=7 {
            for beta in partitions_of(d).into_iter().filter(|b| b.len() % 2 == 1) {
                for g in 0..=2 {
                    let def = hurwitz_definition(
                        &HurwitzQuery::new(2, g, Partition::single(d), beta.clone()).unwrap(),
                    )
                    .unwrap();
                    assert_eq!(
                        one_part_completed3_xi(g, &beta).unwrap(),
                        def,
                        "g={g} beta={beta}"
                    );
                    assert_eq!(
                        one_part_completed3_series(g, &beta).unwrap(),
                        def,
                        "g={g} beta={beta}"
                    );
                }
            }
        }
    }

    #[test]
    fn single_part_specialisation() {
        for d in 1..=10 {
            assert_eq!(
                one_part_completed3(1, &Partition::single(d)).unwrap(),
                genus_one_single_part(d)
            );
        }
    }

    #[test]
    fn ordinary_examples() {
        assert_eq!(one_part_ordinary(0, &p("1,1")).unwrap(), int(1));
        assert_eq!(one_part_ordinary(1, &p("1")).unwrap(), int(0));
        // k = 2g - 1 + l(beta) = 1 here
        assert_eq!(one_part_ordinary(0, &p("2,1")).unwrap(), int(1));
        assert_eq!(one_part_ordinary(0, &p("3")).unwrap(), ratio(1, 3));
        for d in 1..=6 {
            for beta in partitions_of(d) {
                for g in 0..=2 {
                    let def = hurwitz_definition(
                        &HurwitzQuery::new(1, g, Partition::single(d), beta.clone()).unwrap(),
                    )
                    .unwrap();
                    assert_eq!(one_part_ordinary_series(g, &beta).unwrap(), def);
                    assert_eq!(one_part_ordinary_xi(g, &beta).unwrap(), def);
                }
            }
        }
    }

    #[test]
    fn factorization_examples() {
        assert_eq!(
            factorization_count(&query(2, 1, "2", "2")).unwrap(),
            ratio(7, 12)
        );
        assert_eq!(
            factorization_count(&query(2, 0, "3", "1,1,1")).unwrap(),
            int(1)
        );
        for r in 1..=3 {
            assert_eq!(factorization_count(&query(r, 0, "1", "1")).unwrap(), int(1));
        }
        let big = query(1, 0, "6", "6");
        assert!(matches!(
            factorization_count(&big),
            Err(Error::ResourceGuard { d: 6, limit: 5, .. })
        ));
        assert!(factorization_count_bounded(&big, 6).is_ok());
    }

    /// Enumerates s-tuples of permutations directly, weighting each h_i by its
    /// coefficient in the completed cycle.
    fn brute_force_factorizations(q: &HurwitzQuery) -> Rational {
        let d = q.d();
        let cycle = completed_cycle_class(q.r() + 1, d).unwrap();
        let perms = permutations(d);
        let weighted: Vec<(Vec<u8>, Rational)> = perms
            .iter()
            .map(|h| (h.clone(), cycle.coeff(&cycle_type(h))))
            .filter(|(_, w)| !w.is_zero())
            .collect();
        let g1s: Vec<&Vec<u8>> = perms
            .iter()
            .filter(|x| cycle_type(x) == *q.alpha())
            .collect();
        let g2s: Vec<&Vec<u8>> = perms
            .iter()
            .filter(|x| cycle_type(x) == *q.beta())
            .collect();
        let identity: Vec<u8> = (0..d as u8).collect();
        let mut partial: Vec<(Vec<u8>, Rational)> = vec![(identity.clone(), Rational::one())];
        for _ in 0..q.s() {
            let mut next = Vec::new();
            for (acc, w) in &partial {
                for (h, hw) in &weighted {
                    next.push((compose(acc, h), w * hw));
                }
            }
            partial = next;
        }
        let mut total = Rational::zero();
        for (prefix, w) in &partial {
            for g1 in &g1s {
                for g2 in &g2s {
                    if compose(&compose(prefix, g1), g2) == identity {
                        total += w;
                    }
                }
            }
        }
        total
    }

    #[test]
    fn factorization_matches_brute_force() {
        for (r, g, a, b) in [
            (2, 1, "2", "2"),
            (2, 0, "3", "1,1,1"),
            (1, 0, "3", "2,1"),
            (1, 1, "3", "3"),
            (2, 0, "2,1", "2,1"),
            (1, 0, "2,2", "3,1"),
        ] {
            let q = query(r, g, a, b);
            assert_eq!(
                factorization_count(&q).unwrap(),
                brute_force_factorizations(&q),
                "{q:?}"
            );
        }
    }

    #[test]
    fn factorization_matches_definition() {
        for d in 1..=4 {
            let all = partitions_of(d);
            for a in &all {
                for b in &all {
                    for r in 1..=2 {
                        for g in 0..=2 {
                            let Ok(q) = HurwitzQuery::new(r, g, a.clone(), b.clone()) else {
                                continue;
                            };
                            assert_eq!(
                                factorization_count(&q).unwrap(),
                                factorization_normaliser(&q) * hurwitz_definition(&q).unwrap(),
                                "{q:?}"
                            );
                        }
                    }
                }
            }
        }
    }
}
