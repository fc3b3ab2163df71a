//! Sweeps that check the exact identities relating the different computation
//! routes. Each check evaluates both sides on every case in its range and
//! reports the first case (in a fixed order) where they differ.

use std::fmt;
use std::str::FromStr;

use crate::characters::{
    character, completed_cycle_class, hook_character, p3_hook, shifted_power_sum_p, ClassVector,
};
use crate::error::{Error, Result};
use crate::hurwitz::{
    factorization_count_bounded, factorization_normaliser, genus_one_single_part,
    hurwitz_definition_with, one_part_completed3, one_part_completed3_series,
    one_part_completed3_xi, one_part_ordinary, HurwitzQuery, FACTORIZATION_MAX_DEGREE,
};
use crate::multipoly::MultiPoly;
use crate::par::{self, Execution};
use crate::partitions::{c_vector, partitions_of, Partition};
use crate::polynomiality::{
    compositions, count_r, degree_bounds, genus1_top, hodge_integral, hurwitz_poly,
    lambda_g_constant, monomial_symmetric, power_sum_product, top_degree_term, verify_dilaton,
    verify_string, HodgeIndex,
};
use crate::rational::{factorial_q, from_biguint, int, multinomial, ratio, Rational};
use crate::series::{
    partition_sum_rhs, sinh_ratio_product, sum_of_powers_direct, sum_of_powers_egf,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Lemmas,
    Oracles,
    Hodge,
    StringDilaton,
    Degrees,
    All,
}

impl Suite {
    pub const CONCRETE: [Suite; 5] = [
        Suite::Lemmas,
        Suite::Oracles,
        Suite::Hodge,
        Suite::StringDilaton,
        Suite::Degrees,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Lemmas => "lemmas",
            Suite::Oracles => "oracles",
            Suite::Hodge => "hodge",
            Suite::StringDilaton => "string-dilaton",
            Suite::Degrees => "degrees",
            Suite::All => "all",
        }
    }

    fn expand(self) -> Vec<Suite> {
        match self {
            Suite::All => Suite::CONCRETE.to_vec(),
            s => vec![s],
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::CONCRETE
            .iter()
            .chain([Suite::All].iter())
            .copied()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| {
                Error::Parse(format!(
                    "unknown suite {s:?}; expected one of lemmas, oracles, hodge, string-dilaton, degrees, all"
                ))
            })
    }
}

/// Ranges for a sweep.
///
/// `max_d` bounds every sweep over Hurwitz numbers. The cheap lemma checks
/// run up to `max(max_d, their default)` so a small `max_d` never weakens
/// them. The factorization oracle is additionally capped at
/// [`FACTORIZATION_MAX_DEGREE`].
#[derive(Clone, Copy, Debug)]
pub struct VerifyConfig {
    pub max_d: u32,
    pub max_g: u32,
    pub exec: Execution,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            max_d: 8,
            max_g: 2,
            exec: Execution::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub input: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub suite: Suite,
    pub name: &'static str,
    pub statement: &'static str,
    pub cases: usize,
    pub counterexample: Option<Counterexample>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }

    pub fn first_failure(&self) -> Option<&CheckResult> {
        self.checks.iter().find(|c| !c.passed())
    }

    pub fn total_cases(&self) -> usize {
        self.checks.iter().map(|c| c.cases).sum()
    }
}

struct Check<'a> {
    suite: Suite,
    name: &'static str,
    statement: &'static str,
    exec: Execution,
    out: &'a mut Vec<CheckResult>,
}

impl Check<'_> {
    fn run<T, L, F>(self, cases: Vec<T>, label: L, eval: F) -> Result<()>
    where
        T: Sync,
        L: Fn(&T) -> String,
        F: Fn(&T) -> Result<(Rational, Rational)> + Sync + Send,
    {
        let values = par::try_map(self.exec, &cases, eval)?;
        let counterexample =
            cases
                .iter()
                .zip(values)
                .find(|(_, (l, r))| l != r)
                .map(|(case, (l, r))| Counterexample {
                    input: label(case),
                    lhs: l.to_string(),
                    rhs: r.to_string(),
                });
        self.out.push(CheckResult {
            suite: self.suite,
            name: self.name,
            statement: self.statement,
            cases: cases.len(),
            counterexample,
        });
        Ok(())
    }
}

pub fn run(suite: Suite, cfg: &VerifyConfig) -> Result<Report> {
    let mut checks = Vec::new();
    for s in suite.expand() {
        match s {
            Suite::Lemmas => lemmas(cfg, &mut checks)?,
            Suite::Oracles => oracles(cfg, &mut checks)?,
            Suite::Hodge => hodge(cfg, &mut checks)?,
            Suite::StringDilaton => string_dilaton(cfg, &mut checks)?,
            Suite::Degrees => degrees(cfg, &mut checks)?,
            Suite::All => unreachable!("expanded above"),
        }
    }
    Ok(Report { checks })
}

fn check<'a>(
    suite: Suite,
    name: &'static str,
    statement: &'static str,
    cfg: &VerifyConfig,
    out: &'a mut Vec<CheckResult>,
) -> Check<'a> {
    Check {
        suite,
        name,
        statement,
        exec: cfg.exec,
        out,
    }
}

fn all_partitions(lo: u32, hi: u32) -> Vec<Partition> {
    (lo..=hi).flat_map(partitions_of).collect()
}

fn odd_length(p: &Partition) -> bool {
    p.len() % 2 == 1
}

fn lemmas(cfg: &VerifyConfig, out: &mut Vec<CheckResult>) -> Result<()> {
    let s = Suite::Lemmas;

    let cases: Vec<(u32, u32, Partition)> = all_partitions(1, cfg.max_d.max(8))
        .into_iter()
        .flat_map(|beta| (0..beta.size()).map(move |k| (beta.size(), k, beta.clone())))
        .collect();
    check(
        s,
        "hook-characters",
        "hook character series = Murnaghan-Nakayama value",
        cfg,
        out,
    )
    .run(
        cases,
        |(d, k, beta)| format!("d={d} k={k} beta=({beta})"),
        |(d, k, beta)| {
            let hook = Partition::hook(*d, *k)?;
            Ok((
                int(hook_character(*d, *k, beta)?),
                int(character(&hook, beta)?),
            ))
        },
    )?;

    let cases: Vec<(Partition, u32)> = all_partitions(1, cfg.max_d.max(10))
        .into_iter()
        .flat_map(|beta| (0..=4).map(move |k| (beta.clone(), k)))
        .collect();
    check(
        s,
        "sinh-product-vs-xi-sum",
        "[z^2k] prod (sinh(iz/2)/(iz/2))^c_i = 2^-2k sum xi_2lambda S_2lambda / |Aut lambda|",
        cfg,
        out,
    )
    .run(
        cases,
        |(beta, k)| format!("beta=({beta}) k={k}"),
        |(beta, k)| {
            let c = c_vector(beta)?;
            let series = sinh_ratio_product(&c, 2 * *k as usize)?;
            Ok((
                series.coeff(2 * *k as usize)?.clone(),
                partition_sum_rhs(&c, *k),
            ))
        },
    )?;

    let xs = [int(0), int(1), ratio(1, 2), ratio(-3, 2), ratio(2, 3)];
    let cases: Vec<(u32, u32, Rational)> = (0..=8)
        .flat_map(|p| (1..=8).flat_map(move |k| (0..5).map(move |i| (p, k, i))))
        .map(|(p, k, i)| (p, k, xs[i].clone()))
        .collect();
    check(
        s,
        "power-sums-egf",
        "sum_{h<k} (h+x)^p = p! [z^p] e^{xz} sum_{h<k} e^{hz}",
        cfg,
        out,
    )
    .run(
        cases,
        |(p, k, x)| format!("p={p} k={k} x={x}"),
        |(p, k, x)| {
            Ok((
                sum_of_powers_direct(*p, *k, x),
                sum_of_powers_egf(*p, *k, x),
            ))
        },
    )?;

    let cases: Vec<(u32, u32)> = (1..=cfg.max_d.max(12))
        .flat_map(|d| (0..d).map(move |k| (d, k)))
        .collect();
    check(
        s,
        "p3-on-hooks",
        "closed form of p_3 on hooks = shifted power sum",
        cfg,
        out,
    )
    .run(
        cases,
        |(d, k)| format!("d={d} k={k}"),
        |(d, k)| {
            Ok((
                p3_hook(*d, *k)?,
                shifted_power_sum_p(3, &Partition::hook(*d, *k)?),
            ))
        },
    )?;

    let cases: Vec<(u32, Partition)> = (1..=4)
        .flat_map(|r1| {
            all_partitions(1, cfg.max_d.min(8))
                .into_iter()
                .map(move |l| (r1, l))
        })
        .collect();
    check(
        s,
        "completed-cycle-reconstruction",
        "sum_nu a_nu f_nu(lambda) = p_{r+1}(lambda)/(r+1)! for the solved completed cycle",
        cfg,
        out,
    )
    .run(
        cases,
        |(r1, lambda)| format!("r+1={r1} lambda=({lambda})"),
        |(r1, lambda)| {
            let class = completed_cycle_class(*r1, lambda.size())?;
            Ok((
                class.eigenvalue(lambda)?,
                shifted_power_sum_p(*r1, lambda) / factorial_q(*r1),
            ))
        },
    )?;

    let cases: Vec<u32> = (2..=cfg.max_d.max(2)).collect();
    check(
        s,
        "completed-transposition",
        "completed 2-cycle = class of transpositions",
        cfg,
        out,
    )
    .run(
        cases,
        |d| format!("d={d}"),
        |d| {
            let class = completed_cycle_class(2, *d)?;
            let mut parts = vec![2];
            parts.resize(*d as usize - 1, 1);
            let pure = ClassVector::class(Partition::new(parts)?);
            let agree = class == pure;
            Ok((int(agree as i64), int(1)))
        },
    )
}

fn one_part_cases(cfg: &VerifyConfig, odd_only: bool) -> Vec<(u32, Partition)> {
    (0..=cfg.max_g)
        .flat_map(|g| {
            all_partitions(1, cfg.max_d)
                .into_iter()
                .filter(move |b| !odd_only || odd_length(b))
                .map(move |b| (g, b))
        })
        .collect()
}

fn oracles(cfg: &VerifyConfig, out: &mut Vec<CheckResult>) -> Result<()> {
    let s = Suite::Oracles;
    let definition = |r: u32, g: u32, beta: &Partition| -> Result<Rational> {
        let q = HurwitzQuery::new(r, g, Partition::single(beta.size()), beta.clone())?;
        hurwitz_definition_with(&q, Execution::Sequential)
    };

    check(
        s,
        "completed-3-closed-form-vs-definition",
        "one-part closed form (r=2) = character sum",
        cfg,
        out,
    )
    .run(
        one_part_cases(cfg, true),
        |(g, b)| format!("r=2 g={g} beta=({b})"),
        |(g, b)| Ok((one_part_completed3(*g, b)?, definition(2, *g, b)?)),
    )?;

    check(
        s,
        "completed-3-sinh-vs-xi",
        "sinh-series form = xi/S form",
        cfg,
        out,
    )
    .run(
        one_part_cases(cfg, true),
        |(g, b)| format!("g={g} beta=({b})"),
        |(g, b)| {
            Ok((
                one_part_completed3_series(*g, b)?,
                one_part_completed3_xi(*g, b)?,
            ))
        },
    )?;

    check(
        s,
        "ordinary-closed-form-vs-definition",
        "one-part closed form (r=1) = character sum",
        cfg,
        out,
    )
    .run(
        one_part_cases(cfg, false),
        |(g, b)| format!("r=1 g={g} beta=({b})"),
        |(g, b)| Ok((one_part_ordinary(*g, b)?, definition(1, *g, b)?)),
    )?;

    let max_fd = cfg.max_d.min(FACTORIZATION_MAX_DEGREE);
    let mut cases = Vec::new();
    for r in 1..=2u32 {
        for g in 0..=cfg.max_g {
            for d in 1..=max_fd {
                for alpha in partitions_of(d) {
                    for beta in partitions_of(d) {
                        if let Ok(q) = HurwitzQuery::new(r, g, alpha.clone(), beta) {
                            cases.push(q);
                        }
                    }
                }
            }
        }
    }
    check(
        s,
        "factorization-vs-definition",
        "identity coefficient of C^s C_alpha C_beta = d!/(|Aut alpha||Aut beta|) H",
        cfg,
        out,
    )
    .run(
        cases,
        |q| {
            format!(
                "r={} g={} alpha=({}) beta=({})",
                q.r(),
                q.g(),
                q.alpha(),
                q.beta()
            )
        },
        |q| {
            let count = factorization_count_bounded(q, max_fd)?;
            let h = hurwitz_definition_with(q, Execution::Sequential)?;
            Ok((count, factorization_normaliser(q) * h))
        },
    )?;

    let mut pinned: Vec<(u32, Partition, Rational)> = vec![
        (1, Partition::single(2), ratio(7, 24)),
        (0, Partition::ones(3), int(1)),
    ];
    pinned.extend(
        (1..=cfg.max_d.max(10)).map(|d| (1, Partition::single(d), genus_one_single_part(d))),
    );
    check(
        s,
        "pinned-values",
        "character sum at r=2 = known value",
        cfg,
        out,
    )
    .run(
        pinned,
        |(g, b, _)| format!("r=2 g={g} alpha=({}) beta=({b})", b.size()),
        |(g, b, v)| Ok((definition(2, *g, b)?, v.clone())),
    )
}

fn hodge(cfg: &VerifyConfig, out: &mut Vec<CheckResult>) -> Result<()> {
    let s = Suite::Hodge;
    let ns = [1usize, 3, 5];

    let cases: Vec<(u32, Vec<u32>)> = (1..=cfg.max_g)
        .flat_map(|g| {
            ns.iter().flat_map(move |&n| {
                compositions(n, g + (n as u32 - 1) / 2)
                    .into_iter()
                    .map(move |b| (g, b))
            })
        })
        .collect();
    check(
        s,
        "lowest-integrals-multinomial",
        "<<tau_b Lambda_2g>>_g = multinomial(g+(n-1)/2; b) C_{g,n}",
        cfg,
        out,
    )
    .run(
        cases,
        |(g, b)| format!("g={g} b={b:?}"),
        |(g, b)| {
            let bs: Vec<i64> = b.iter().map(|&x| x as i64).collect();
            let order = bs.iter().sum();
            let expected = from_biguint(multinomial(order, &bs)) * lambda_g_constant(*g, b.len())?;
            Ok((
                hodge_integral(&HodgeIndex::new(*g, b.clone(), *g)?)?,
                expected,
            ))
        },
    )?;

    let cases: Vec<(u32, Vec<u32>)> = (0..=cfg.max_g)
        .flat_map(|g| {
            [1usize, 3].into_iter().flat_map(move |n| {
                compositions(n, 3 * g + (n as u32 - 1) / 2)
                    .into_iter()
                    .map(move |b| (g, b))
            })
        })
        .collect();
    check(
        s,
        "top-degree-expansion",
        "combinatorial top-degree sum = <<tau_b Lambda_0>>_g",
        cfg,
        out,
    )
    .run(
        cases,
        |(g, b)| format!("g={g} b={b:?}"),
        |(g, b)| {
            Ok((
                top_degree_term(*g, b)?,
                hodge_integral(&HodgeIndex::new(*g, b.clone(), 0)?)?,
            ))
        },
    )?;

    let cases: Vec<Vec<u32>> = [1usize, 3]
        .into_iter()
        .flat_map(|n| compositions(n, (n as u32 + 5) / 2))
        .collect();
    check(
        s,
        "genus-one-top-closed-form",
        "genus-one closed form = top-degree sum",
        cfg,
        out,
    )
    .run(
        cases,
        |b| format!("g=1 b={b:?}"),
        |b| Ok((genus1_top(b)?, top_degree_term(1, b)?)),
    )?;

    let cases: Vec<Partition> = all_partitions(1, 5);
    check(
        s,
        "power-sum-monomial-expansion",
        "P_lambda = sum_mu R_{lambda mu} m_mu",
        cfg,
        out,
    )
    .run(
        cases,
        |l| format!("lambda=({l})"),
        |lambda| {
            let n = lambda.len() + 1;
            let mut expansion = MultiPoly::zero(n);
            for mu in partitions_of(lambda.size()) {
                let r = count_r(lambda, &mu)?;
                expansion = &expansion + &monomial_symmetric(&mu, n).scale(&int(r as i64));
            }
            let agree = expansion == power_sum_product(lambda, n);
            Ok((int(agree as i64), int(1)))
        },
    )
}

fn string_dilaton(cfg: &VerifyConfig, out: &mut Vec<CheckResult>) -> Result<()> {
    let s = Suite::StringDilaton;
    let cases = |shift: u32| -> Vec<(u32, Vec<u32>)> {
        (0..=cfg.max_g)
            .flat_map(|g| {
                [1usize, 3].into_iter().flat_map(move |n| {
                    compositions(n, g + (n as u32 - 1) / 2 + shift)
                        .into_iter()
                        .map(move |b| (g, b))
                })
            })
            .collect()
    };
    check(
        s,
        "string-equation",
        "<<tau_0^2 tau_b Lambda_2g>>_g = (2g+n) sum_i <<tau_{b-e_i} Lambda_2g>>_g",
        cfg,
        out,
    )
    .run(
        cases(1),
        |(g, b)| format!("g={g} b={b:?}"),
        |(g, b)| {
            let w = verify_string(*g, b)?;
            Ok((w.lhs, w.rhs))
        },
    )?;
    check(
        s,
        "dilaton-equation",
        "<<tau_0 tau_1 tau_b Lambda_2g>>_g = (2g+n)(g+(n+1)/2) <<tau_b Lambda_2g>>_g",
        cfg,
        out,
    )
    .run(
        cases(0),
        |(g, b)| format!("g={g} b={b:?}"),
        |(g, b)| {
            let w = verify_dilaton(*g, b)?;
            Ok((w.lhs, w.rhs))
        },
    )
}

/// At least `min` evaluation points for `n` parts: every partition with `n`
/// parts of `d = n, n+1, ...` until enough are collected.
pub fn evaluation_points(n: usize, min: usize) -> Vec<Partition> {
    let mut points = Vec::new();
    let mut d = n as u32;
    while points.len() < min {
        points.extend(partitions_of(d).into_iter().filter(|b| b.len() == n));
        d += 1;
    }
    points
}

fn degrees(cfg: &VerifyConfig, out: &mut Vec<CheckResult>) -> Result<()> {
    let s = Suite::Degrees;
    let ns = [1usize, 3, 5];
    let pairs: Vec<(u32, usize)> = (0..=cfg.max_g)
        .flat_map(|g| ns.into_iter().map(move |n| (g, n)))
        .collect();

    let cases: Vec<(u32, Partition)> = pairs
        .iter()
        .flat_map(|&(g, n)| evaluation_points(n, 20).into_iter().map(move |b| (g, b)))
        .collect();
    check(
        s,
        "polynomial-evaluation",
        "P_{g,n}(beta) = d H / s! from the closed form",
        cfg,
        out,
    )
    .run(
        cases,
        |(g, b)| format!("g={g} beta=({b})"),
        |(g, b)| {
            let point: Vec<Rational> = b.parts().iter().map(|&x| int(x as i64)).collect();
            let s = g + (b.len() as u32 - 1) / 2;
            let expected = one_part_completed3(*g, b)? * int(b.size() as i64) / factorial_q(s);
            Ok((hurwitz_poly(*g, b.len())?.eval(&point)?, expected))
        },
    )?;

    check(
        s,
        "polynomial-symmetry",
        "P_{g,n} is invariant under permuting variables",
        cfg,
        out,
    )
    .run(
        pairs.clone(),
        |(g, n)| format!("g={g} n={n}"),
        |(g, n)| Ok((int(hurwitz_poly(*g, *n)?.is_symmetric() as i64), int(1))),
    )?;

    check(
        s,
        "degree-range",
        "lowest and highest degrees of P_{g,n} are g+(n-1)/2 and 3g+(n-1)/2",
        cfg,
        out,
    )
    .run(
        pairs,
        |(g, n)| format!("g={g} n={n}"),
        |(g, n)| {
            let poly = hurwitz_poly(*g, *n)?;
            let lo = g + (*n as u32 - 1) / 2;
            // degree_bounds errors on any monomial outside the range
            let holds = degree_bounds(*g, *n).is_ok()
                && poly.min_degree() == Some(lo)
                && poly.total_degree() == Some(lo + 2 * g);
            Ok((int(holds as i64), int(1)))
        },
    )
}
