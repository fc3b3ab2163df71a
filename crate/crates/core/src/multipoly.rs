//! Sparse multivariate polynomials with exact rational coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{pow, Rational};

/// Polynomial in `n` variables. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    n: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

/// Graded reverse-lexicographic comparison of exponent vectors.
pub fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                // smaller exponent in the last differing variable ranks higher
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

impl MultiPoly {
    pub fn zero(n: usize) -> Self {
        MultiPoly {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        let mut p = MultiPoly::zero(n);
        p.add_term(vec![0; n], c);
        p
    }

    pub fn one(n: usize) -> Self {
        MultiPoly::constant(n, Rational::one())
    }

    /// The variable `x_i` (zero-based).
    pub fn var(n: usize, i: usize) -> Self {
        assert!(i < n, "variable index {i} out of range for {n} variables");
        let mut e = vec![0; n];
        e[i] = 1;
        MultiPoly::monomial(e, Rational::one())
    }

    pub fn monomial(exp: Vec<u32>, c: Rational) -> Self {
        let mut p = MultiPoly::zero(exp.len());
        p.add_term(exp, c);
        p
    }

    /// `P_k = x_1^k + ... + x_n^k`.
    pub fn power_sum(n: usize, k: u32) -> Self {
        let mut p = MultiPoly::zero(n);
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = k;
            p.add_term(e, Rational::one());
        }
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Vec<u32>, Rational)>>(
        n: usize,
        terms: I,
    ) -> Result<Self> {
        let mut p = MultiPoly::zero(n);
        for (e, c) in terms {
            if e.len() != n {
                return Err(Error::InvalidPartition(format!(
                    "exponent vector of length {} in a polynomial of {n} variables",
                    e.len()
                )));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, exp: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exp) {
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

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `[x^exp] self`; zero when absent.
    pub fn coeff(&self, exp: &[u32]) -> Rational {
        self.terms.get(exp).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).min()
    }

    /// Terms in descending graded reverse-lexicographic order.
    pub fn terms_grevlex(&self) -> Vec<(&Vec<u32>, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| grevlex(b.0, a.0));
        v
    }

    pub fn scale(&self, k: &Rational) -> Self {
        let mut p = MultiPoly::zero(self.n);
        for (e, c) in &self.terms {
            p.add_term(e.clone(), c * k);
        }
        p
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = MultiPoly::one(self.n);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.n {
            return Err(Error::SizeMismatch {
                left_name: "point",
                left: point.len() as u32,
                right_name: "variables",
                right: self.n as u32,
            });
        }
        Ok(self.terms.iter().fold(Rational::zero(), |acc, (e, c)| {
            let mono = e
                .iter()
                .zip(point)
                .fold(Rational::one(), |m, (&k, x)| m * pow(x, k as i64));
            acc + c * mono
        }))
    }

    /// Renames variable `i` to `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        let mut p = MultiPoly::zero(self.n);
        for (e, c) in &self.terms {
            let mut moved = vec![0; self.n];
            for (i, &k) in e.iter().enumerate() {
                moved[perm[i]] = k;
            }
            p.add_term(moved, c.clone());
        }
        p
    }

    /// Invariance under every transposition of adjacent variables.
    pub fn is_symmetric(&self) -> bool {
        (0..self.n.saturating_sub(1)).all(|i| {
            let mut perm: Vec<usize> = (0..self.n).collect();
            perm.swap(i, i + 1);
            self.permute(&perm) == *self
        })
    }

    /// Drops every term whose total degree differs from `degree`.
    pub fn homogeneous_part(&self, degree: u32) -> Self {
        let mut p = MultiPoly::zero(self.n);
        for (e, c) in &self.terms {
            if e.iter().sum::<u32>() == degree {
                p.add_term(e.clone(), c.clone());
            }
        }
        p
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.n, rhs.n, "variable count mismatch");
        let mut p = self.clone();
        for (e, c) in &rhs.terms {
            p.add_term(e.clone(), c.clone());
        }
        p
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.n, rhs.n, "variable count mismatch");
        let mut p = self.clone();
        for (e, c) in &rhs.terms {
            p.add_term(e.clone(), -c.clone());
        }
        p
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.n, rhs.n, "variable count mismatch");
        let mut p = MultiPoly::zero(self.n);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                p.add_term(e, ca * cb);
            }
        }
        p
    }
}

impl fmt::Display for MultiPoly {
    /// Human-readable form such as `1/12*b1^3 - 1/24*b1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (e, c)) in self.terms_grevlex().into_iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if idx == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let abs = c.abs();
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    if k == 1 {
                        format!("b{}", i + 1)
                    } else {
                        format!("b{}^{}", i + 1, k)
                    }
                })
                .collect();
            match (vars.is_empty(), abs.is_one()) {
                (true, _) => write!(f, "{abs}")?,
                (false, true) => write!(f, "{}", vars.join("*"))?,
                (false, false) => write!(f, "{abs}*{}", vars.join("*"))?,
            }
        }
        Ok(())
    }
}
