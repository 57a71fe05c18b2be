//! Polynomial carriers over `Z/p`.
//!
//! [`BiHomogPoly`] stores a polynomial in `(l1, l2, u1, u2)` that is
//! homogeneous of degree `n` in the `l`-pair and `m` in the `u`-pair as a
//! dense `(n+1) x (m+1)` grid: entry `(a, b)` is the coefficient of
//! `l1^a l2^(n-a) u1^b u2^(m-b)`. [`SparseMultiPoly`] is a general sparse
//! polynomial in a fixed number of variables.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::modp::Fp;

/// Row `n` of Pascal's triangle mod `p`.
pub fn binomial_row(n: u32, fp: Fp) -> Vec<u64> {
    let mut row = vec![1u64];
    for _ in 0..n {
        let mut next = vec![1u64; row.len() + 1];
        for k in 1..row.len() {
            next[k] = fp.add(row[k - 1], row[k]);
        }
        row = next;
    }
    row
}

/// Which variable of a pair carries the leading power in [`PairShape::Binomial`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lead {
    First,
    Second,
}

/// A product in one variable pair `(x1, x2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairShape {
    /// `x1^first * x2^second`
    Monomial { first: u32, second: u32 },
    /// `x_lead^lead_exp * (x1 + x2)^sum_exp`
    Binomial {
        lead: Lead,
        lead_exp: u32,
        sum_exp: u32,
    },
}

impl PairShape {
    pub fn degree(self) -> u32 {
        match self {
            PairShape::Monomial { first, second } => first + second,
            PairShape::Binomial {
                lead_exp, sum_exp, ..
            } => lead_exp + sum_exp,
        }
    }

    /// Coefficients indexed by the exponent of `x1`.
    fn expand(self, fp: Fp) -> Vec<u64> {
        let mut out = vec![0u64; self.degree() as usize + 1];
        match self {
            PairShape::Monomial { first, .. } => out[first as usize] = 1,
            PairShape::Binomial {
                lead,
                lead_exp,
                sum_exp,
            } => {
                let offset = match lead {
                    Lead::First => lead_exp as usize,
                    Lead::Second => 0,
                };
                for (i, c) in binomial_row(sum_exp, fp).into_iter().enumerate() {
                    out[offset + i] = fp.add(out[offset + i], c);
                }
            }
        }
        out
    }
}

/// Bihomogeneous polynomial of bidegree `(n, m)` in `(l1, l2; u1, u2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiHomogPoly {
    fp: Fp,
    n: u32,
    m: u32,
    coeffs: Vec<u64>,
}

impl BiHomogPoly {
    pub fn zero(fp: Fp, n: u32, m: u32) -> Self {
        BiHomogPoly {
            fp,
            n,
            m,
            coeffs: vec![0; (n as usize + 1) * (m as usize + 1)],
        }
    }

    pub fn prime(&self) -> u64 {
        self.fp.modulus()
    }

    pub fn bidegree(&self) -> (u32, u32) {
        (self.n, self.m)
    }

    /// Coefficient of `l1^a l2^(n-a) u1^b u2^(m-b)`.
    pub fn coeff(&self, a: u32, b: u32) -> u64 {
        self.coeffs[a as usize * (self.m as usize + 1) + b as usize]
    }

    fn coeff_mut(&mut self, a: usize, b: usize) -> &mut u64 {
        &mut self.coeffs[a * (self.m as usize + 1) + b]
    }

    /// Adds `scalar * lambda_part(l1, l2) * mu_part(u1, u2)`.
    pub fn accumulate_term(&mut self, scalar: u64, lambda: PairShape, mu: PairShape) -> Result<()> {
        if lambda.degree() != self.n {
            return Err(Error::DegreeMismatch {
                expected: self.n,
                got: lambda.degree(),
            });
        }
        if mu.degree() != self.m {
            return Err(Error::DegreeMismatch {
                expected: self.m,
                got: mu.degree(),
            });
        }
        let scalar = scalar % self.prime();
        if scalar == 0 {
            return Ok(());
        }
        let fp = self.fp;
        let lam = lambda.expand(fp);
        let mu = mu.expand(fp);
        for (a, &la) in lam.iter().enumerate() {
            if la == 0 {
                continue;
            }
            let la = fp.mul(la, scalar);
            for (b, &mb) in mu.iter().enumerate() {
                let c = self.coeff_mut(a, b);
                *c = fp.add(*c, fp.mul(la, mb));
            }
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Number of nonzero coefficients.
    pub fn support_size(&self) -> usize {
        self.coeffs.iter().filter(|&&c| c != 0).count()
    }

    /// Evaluates at `(l1, l2, u1, u2)`.
    pub fn eval(&self, point: [u64; 4]) -> u64 {
        let fp = self.fp;
        let [l1, l2, u1, u2] = point.map(|x| x % fp.modulus());
        let powers = |x: u64, d: u32| {
            let mut v = vec![1u64; d as usize + 1];
            for i in 1..v.len() {
                v[i] = fp.mul(v[i - 1], x);
            }
            v
        };
        let (pl1, pl2, pu1, pu2) = (
            powers(l1, self.n),
            powers(l2, self.n),
            powers(u1, self.m),
            powers(u2, self.m),
        );
        let (n, m) = (self.n as usize, self.m as usize);
        let mut total = 0;
        for a in 0..=n {
            let la = fp.mul(pl1[a], pl2[n - a]);
            for b in 0..=m {
                let term = fp.mul(self.coeffs[a * (m + 1) + b], fp.mul(pu1[b], pu2[m - b]));
                total = fp.add(total, fp.mul(la, term));
            }
        }
        total
    }

    /// The same polynomial in variables ordered `(l1, l2, u1, u2)`.
    pub fn to_sparse(&self) -> SparseMultiPoly {
        let mut out = SparseMultiPoly::zero(self.fp, 4);
        for a in 0..=self.n {
            for b in 0..=self.m {
                out.add_term(vec![a, self.n - a, b, self.m - b], self.coeff(a, b));
            }
        }
        out
    }
}

/// Sparse polynomial over `Z/p` in `nvars` variables; zero coefficients are
/// never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMultiPoly {
    fp: Fp,
    nvars: usize,
    terms: BTreeMap<Vec<u32>, u64>,
}

impl SparseMultiPoly {
    pub fn zero(fp: Fp, nvars: usize) -> Self {
        SparseMultiPoly {
            fp,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(fp: Fp, nvars: usize, c: u64) -> Self {
        let mut p = Self::zero(fp, nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    /// `x_{vars[0]} + x_{vars[1]} + ...`
    pub fn linear_sum(fp: Fp, nvars: usize, vars: &[usize]) -> Self {
        let mut p = Self::zero(fp, nvars);
        for &v in vars {
            let mut e = vec![0; nvars];
            e[v] = 1;
            p.add_term(e, 1);
        }
        p
    }

    pub fn monomial(fp: Fp, exps: Vec<u32>, c: u64) -> Self {
        let mut p = Self::zero(fp, exps.len());
        p.add_term(exps, c);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn prime(&self) -> u64 {
        self.fp.modulus()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], u64)> {
        self.terms.iter().map(|(e, &c)| (e.as_slice(), c))
    }

    /// Number of nonzero terms.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[u32]) -> u64 {
        self.terms.get(exps).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: u64) {
        assert_eq!(exps.len(), self.nvars, "exponent vector length");
        let c = c % self.fp.modulus();
        if c == 0 {
            return;
        }
        let fp = self.fp;
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = fp.add(*o.get(), c);
                if sum == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add_assign_scaled(&mut self, other: &Self, scalar: u64) {
        assert_eq!(self.nvars, other.nvars);
        for (e, &c) in &other.terms {
            self.add_term(e.clone(), self.fp.mul(c, scalar % self.fp.modulus()));
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign_scaled(other, 1);
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign_scaled(other, self.fp.modulus() - 1);
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::zero(self.fp, self.nvars);
        out.add_assign_scaled(self, self.fp.modulus() - 1);
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Self::zero(self.fp, self.nvars);
        for (ea, &ca) in &self.terms {
            for (eb, &cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, self.fp.mul(ca, cb));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::constant(self.fp, self.nvars, 1);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    pub fn eval(&self, point: &[u64]) -> u64 {
        assert_eq!(point.len(), self.nvars);
        let fp = self.fp;
        self.terms.iter().fold(0, |acc, (e, &c)| {
            let mono = e
                .iter()
                .zip(point)
                .fold(c, |m, (&k, &x)| fp.mul(m, fp.pow(x, k as u64)));
            fp.add(acc, mono)
        })
    }

    /// Renames variables: variable `i` of `self` becomes variable `map[i]` of
    /// the result.
    pub fn rename(&self, map: &[usize], nvars: usize) -> Self {
        assert_eq!(map.len(), self.nvars);
        let mut out = Self::zero(self.fp, nvars);
        for (e, &c) in &self.terms {
            let mut ne = vec![0; nvars];
            for (i, &k) in e.iter().enumerate() {
                ne[map[i]] += k;
            }
            out.add_term(ne, c);
        }
        out
    }
}

impl fmt::Display for SparseMultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => write!(f, "*x{i}")?,
                    _ => write!(f, "*x{i}^{k}")?,
                }
            }
        }
        Ok(())
    }
}
