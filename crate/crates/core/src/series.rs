//! Power series truncated below `z^p` with coefficients in `Z/p`.
//!
//! Every coefficient of a polylogarithm series in degree `n < p` has a
//! denominator built from integers `<= n`, so the reduction mod `p` is exact in
//! every stored degree, and so is the truncated Cauchy product of two such
//! series.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::indices::{indices_up_to_weight, SignedIndex};
use crate::modp::Fp;
use crate::report::{ReportBuilder, ReportRow, VerificationReport};
use crate::zeta::ZetaEngine;

/// Coefficients `a_0, ..., a_{p-1}` modulo `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncSeries {
    fp: Fp,
    coeffs: Vec<u64>,
}

impl TruncSeries {
    pub fn zero(p: u64) -> Result<Self> {
        let fp = Fp::new(p)?;
        Ok(TruncSeries {
            fp,
            coeffs: vec![0; p as usize],
        })
    }

    /// The constant series `1`.
    pub fn one(p: u64) -> Result<Self> {
        let mut s = Self::zero(p)?;
        s.coeffs[0] = 1;
        Ok(s)
    }

    /// Takes the first `p` coefficients of `coeffs` (padding with zeros),
    /// reducing each mod `p`.
    pub fn from_coeffs(p: u64, coeffs: &[i64]) -> Result<Self> {
        let mut s = Self::zero(p)?;
        for (slot, &c) in s.coeffs.iter_mut().zip(coeffs) {
            *slot = s.fp.reduce(c);
        }
        Ok(s)
    }

    pub fn prime(&self) -> u64 {
        self.fp.modulus()
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    fn check_same_prime(&self, other: &Self) -> Result<()> {
        if self.prime() != other.prime() {
            return Err(Error::PrimeMismatch {
                left: self.prime(),
                right: other.prime(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_prime(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| self.fp.add(a, b))
            .collect();
        Ok(TruncSeries {
            fp: self.fp,
            coeffs,
        })
    }

    /// Cauchy product truncated at degree `p - 1`.
    pub fn product(&self, other: &Self) -> Result<Self> {
        self.check_same_prime(other)?;
        let fp = self.fp;
        let n = self.coeffs.len();
        let mut coeffs = vec![0u64; n];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs[..n - i].iter().enumerate() {
                coeffs[i + j] = fp.add(coeffs[i + j], fp.mul(a, b));
            }
        }
        Ok(TruncSeries { fp, coeffs })
    }

    /// The functional sending `sum a_n z^n` to `a_0 + ... + a_{p-1}`.
    pub fn lp(&self) -> u64 {
        self.coeffs.iter().fold(0, |acc, &c| self.fp.add(acc, c))
    }

    /// `lp(self * other)` in `O(p)`: `sum_i a_i (b_0 + ... + b_{p-1-i})`.
    pub fn lp_of_product(&self, other: &Self) -> Result<u64> {
        self.check_same_prime(other)?;
        let fp = self.fp;
        let mut prefix = Vec::with_capacity(other.coeffs.len());
        let mut acc = 0;
        for &b in &other.coeffs {
            acc = fp.add(acc, b);
            prefix.push(acc);
        }
        let n = self.coeffs.len();
        Ok(self.coeffs.iter().enumerate().fold(0, |total, (i, &a)| {
            fp.add(total, fp.mul(a, prefix[n - 1 - i]))
        }))
    }
}

/// The polylogarithm of `index` as a series truncated below `z^p`.
pub fn li_series(index: &SignedIndex, p: u64) -> Result<TruncSeries> {
    let engine = ZetaEngine::new(p)?;
    Ok(li_series_with(&engine, index))
}

pub fn li_series_with(engine: &ZetaEngine, index: &SignedIndex) -> TruncSeries {
    TruncSeries {
        fp: engine.field(),
        coeffs: engine.li_coefficients(index),
    }
}

/// Sign `sgn(beta) (-1)^{wt beta}` of the product congruence.
pub fn product_sign(beta: &SignedIndex) -> i8 {
    let parity = if beta.weight().is_multiple_of(2) {
        1
    } else {
        -1
    };
    parity * beta.sign()
}

/// Both sides of `lp(Li(alpha) Li(beta)) = sgn(beta)(-1)^{wt beta} zeta(alpha, rev beta)`.
pub fn lemma2_sides(engine: &ZetaEngine, alpha: &SignedIndex, beta: &SignedIndex) -> (u64, u64) {
    let f = li_series_with(engine, alpha);
    let g = li_series_with(engine, beta);
    let lhs = f.lp_of_product(&g).expect("same engine");
    let rhs = engine.field().signed(
        engine.famzv(&alpha.concat(&beta.reversed())),
        product_sign(beta),
    );
    (lhs, rhs)
}

/// Checks the product congruence for one pair over `primes`. Primes with
/// `p <= dep(alpha) + dep(beta)` are evaluated but not judged.
pub fn verify_lemma2(
    alpha: &SignedIndex,
    beta: &SignedIndex,
    primes: &[u64],
) -> Result<VerificationReport> {
    let bound = (alpha.depth() + beta.depth()) as u64;
    let mut builder = ReportBuilder::new("lemma2")
        .param("alpha", alpha.to_string())
        .param("beta", beta.to_string());
    let rows = primes
        .par_iter()
        .map(|&p| {
            let engine = ZetaEngine::new(p)?;
            let (lhs, rhs) = lemma2_sides(&engine, alpha, beta);
            Ok(ReportRow::prime(p, p > bound, lhs == rhs)
                .with_detail(format!("lhs={lhs} rhs={rhs}")))
        })
        .collect::<Result<Vec<_>>>()?;
    builder.add_zeta_evals(rows.len(), 0);
    Ok(builder.finish(rows))
}

/// Checks the product congruence for every pair of signed indices with
/// `wt alpha + wt beta <= weight_bound`.
pub fn verify_lemma2_all(weight_bound: u32, primes: &[u64]) -> Result<VerificationReport> {
    if weight_bound < 2 {
        return Err(Error::param("lemma2 sweep needs weight bound >= 2"));
    }
    let all = indices_up_to_weight(weight_bound - 1, true);
    let pairs: Vec<(&SignedIndex, &SignedIndex)> = all
        .iter()
        .flat_map(|a| all.iter().map(move |b| (a, b)))
        .filter(|(a, b)| a.weight() + b.weight() <= weight_bound)
        .collect();
    let mut builder = ReportBuilder::new("lemma2-sweep").param("weight_bound", weight_bound);
    let results = primes
        .par_iter()
        .map(|&p| {
            let engine = ZetaEngine::new(p)?;
            let series: std::collections::HashMap<&SignedIndex, TruncSeries> = all
                .iter()
                .map(|a| (a, li_series_with(&engine, a)))
                .collect();
            let mut judged_checks = 0u64;
            let mut judged_bad = Vec::new();
            let mut info_bad = 0u64;
            for (a, b) in &pairs {
                let lhs = series[a].lp_of_product(&series[b]).expect("same prime");
                let rhs = engine
                    .field()
                    .signed(engine.famzv(&a.concat(&b.reversed())), product_sign(b));
                let judged = p > (a.depth() + b.depth()) as u64;
                if judged {
                    judged_checks += 1;
                    if lhs != rhs {
                        judged_bad.push(format!("({a};{b})"));
                    }
                } else if lhs != rhs {
                    info_bad += 1;
                }
            }
            let evals = all.len() + pairs.len();
            let mut row = ReportRow::prime(p, judged_checks > 0, judged_bad.is_empty())
                .with_checks(pairs.len() as u64);
            if !judged_bad.is_empty() {
                row = row.with_detail(format!("failing pairs: {}", judged_bad.join(" ")));
            } else if info_bad > 0 {
                row = row.with_detail(format!("{info_bad} pairs differ below their depth bound"));
            }
            Ok((row, evals))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut rows = Vec::new();
    for (row, evals) in results {
        builder.add_zeta_evals(evals, 0);
        rows.push(row);
    }
    Ok(builder.finish(rows))
}
