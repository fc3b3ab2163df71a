//! Multiplication in the centre of `Q[S_d]` from explicit permutations.
//!
//! Structure constants `C_mu C_nu = sum_lambda c^lambda_{mu nu} C_lambda` are
//! obtained by fixing one permutation `z` of each cycle type `lambda` and
//! counting the `x` with `x` of type `mu` and `x^{-1} z` of type `nu`. No
//! characters are involved anywhere in this module.

use std::collections::HashMap;

use num_traits::Zero;

use crate::characters::ClassVector;
use crate::error::{Error, Result};
use crate::partitions::{partitions_of, Partition};
use crate::rational::{int, Rational};

pub type Permutation = Vec<u8>;

/// All permutations of `0..d` (one-line notation).
pub fn permutations(d: u32) -> Vec<Permutation> {
    let mut out = vec![Vec::new()];
    for n in 0..d as u8 {
        let mut next = Vec::with_capacity(out.len() * (n as usize + 1));
        for perm in &out {
            for pos in 0..=perm.len() {
                let mut p = perm.clone();
                p.insert(pos, n);
                next.push(p);
            }
        }
        out = next;
    }
    out
}

pub fn cycle_type(perm: &[u8]) -> Partition {
    let mut seen = vec![false; perm.len()];
    let mut lengths = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i] as usize;
            len += 1;
        }
        lengths.push(len);
    }
    Partition::new(lengths).expect("cycle lengths are positive")
}

/// `(a * b)(i) = a(b(i))`.
pub fn compose(a: &[u8], b: &[u8]) -> Permutation {
    b.iter().map(|&i| a[i as usize]).collect()
}

pub fn inverse(a: &[u8]) -> Permutation {
    let mut inv = vec![0u8; a.len()];
    for (i, &ai) in a.iter().enumerate() {
        inv[ai as usize] = i as u8;
    }
    inv
}

/// A permutation with the given cycle type.
pub fn representative(mu: &Partition) -> Permutation {
    let mut perm = Vec::with_capacity(mu.size() as usize);
    let mut start = 0u8;
    for &len in mu.parts() {
        let len = len as u8;
        for j in 0..len {
            perm.push(start + (j + 1) % len);
        }
        start += len;
    }
    perm
}

/// Structure constants of the class algebra of `S_d`.
#[derive(Debug, Clone)]
pub struct ClassAlgebra {
    d: u32,
    constants: HashMap<(Partition, Partition), Vec<(Partition, u64)>>,
}

impl ClassAlgebra {
    pub fn new(d: u32) -> Self {
        let all = permutations(d);
        let typed: Vec<(Permutation, Partition)> = all
            .into_iter()
            .map(|p| {
                let t = cycle_type(&p);
                (p, t)
            })
            .collect();
        let mut constants: HashMap<(Partition, Partition), Vec<(Partition, u64)>> = HashMap::new();
        for lambda in partitions_of(d) {
            let z = representative(&lambda);
            let mut counts: HashMap<(Partition, Partition), u64> = HashMap::new();
            for (x, x_type) in &typed {
                let y = compose(&inverse(x), &z);
                *counts.entry((x_type.clone(), cycle_type(&y))).or_insert(0) += 1;
            }
            for (key, count) in counts {
                constants
                    .entry(key)
                    .or_default()
                    .push((lambda.clone(), count));
            }
        }
        ClassAlgebra { d, constants }
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    /// `c^lambda_{mu nu}`.
    pub fn structure_constant(&self, mu: &Partition, nu: &Partition, lambda: &Partition) -> u64 {
        self.constants
            .get(&(mu.clone(), nu.clone()))
            .and_then(|v| v.iter().find(|(l, _)| l == lambda).map(|&(_, c)| c))
            .unwrap_or(0)
    }

    pub fn multiply(&self, a: &ClassVector, b: &ClassVector) -> Result<ClassVector> {
        for v in [a, b] {
            if v.degree() != self.d {
                return Err(Error::SizeMismatch {
                    left_name: "class vector",
                    left: v.degree(),
                    right_name: "algebra degree",
                    right: self.d,
                });
            }
        }
        let mut out = ClassVector::zero(self.d);
        for (mu, ca) in a.terms() {
            for (nu, cb) in b.terms() {
                let weight = ca * cb;
                if weight.is_zero() {
                    continue;
                }
                if let Some(targets) = self.constants.get(&(mu.clone(), nu.clone())) {
                    for (lambda, count) in targets {
                        out.add_term(lambda.clone(), &weight * int(*count as i64));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn power(&self, a: &ClassVector, e: u32) -> Result<ClassVector> {
        let mut acc = ClassVector::identity(self.d);
        for _ in 0..e {
            acc = self.multiply(&acc, a)?;
        }
        Ok(acc)
    }

    /// Coefficient of the identity class.
    pub fn identity_coefficient(&self, v: &ClassVector) -> Rational {
        v.coeff(&Partition::ones(self.d))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::perm_class_size;
    use num_bigint::BigUint;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn permutation_basics() {
        assert_eq!(permutations(4).len(), 24);
        for d in 1..=5 {
            let mut counts: HashMap<Partition, u64> = HashMap::new();
            for perm in permutations(d) {
                *counts.entry(cycle_type(&perm)).or_insert(0) += 1;
            }
            for mu in partitions_of(d) {
                assert_eq!(BigUint::from(counts[&mu]), perm_class_size(&mu));
                assert_eq!(cycle_type(&representative(&mu)), mu);
            }
        }
        let a = vec![1, 2, 0];
        assert_eq!(compose(&a, &inverse(&a)), vec![0, 1, 2]);
    }

    #[test]
    fn transposition_squared_in_s3() {
        // C_(2,1)^2 = 3 C_(1,1,1) + 3 C_(3)
        let alg = ClassAlgebra::new(3);
        let t = ClassVector::class(p("2,1"));
        let sq = alg.multiply(&t, &t).unwrap();
        assert_eq!(sq.coeff(&p("1,1,1")), int(3));
        assert_eq!(sq.coeff(&p("3")), int(3));
        assert_eq!(sq.coeff(&p("2,1")), int(0));
        assert_eq!(alg.structure_constant(&p("2,1"), &p("2,1"), &p("3")), 3);
    }

    #[test]
    fn multiplication_is_commutative() {
        let alg = ClassAlgebra::new(4);
        let all = partitions_of(4);
        for mu in &all {
            for nu in &all {
                let a = ClassVector::class(mu.clone());
                let b = ClassVector::class(nu.clone());
                assert_eq!(alg.multiply(&a, &b).unwrap(), alg.multiply(&b, &a).unwrap());
            }
        }
    }
}
