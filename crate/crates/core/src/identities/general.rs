//! The sum formula for two chains of lengths `s` and `t`.
//!
//! With `N = s + t`, compositions `r` of `n` and `k` of `m` into `N`
//! nonnegative parts, and `alpha_l` running over `S_{r_l, k_l}`:
//!
//! ```text
//! sum_{r,k} (-1)^q prod_l l_l^{r_l} u_l^{k_l}
//!     * sum prod_{l>s} sgn(alpha_l) zeta(alpha_1..alpha_s, alpha_N..alpha_{s+1})
//!   = sum_{sigma} sum_{r,k} prod_l P_l^sigma(l)^{r_l} P_l^sigma(u)^{k_l}
//!     * sum zeta(alpha_1, .., alpha_N)
//! ```
//!
//! Polynomials use `2N` variables: `l_1..l_N` at `0..N` and `u_1..u_N` at
//! `N..2N`.

use crate::error::{Error, Result};
use crate::indices::{enumerate_compositions, enumerate_s, enumerate_shuffles, SignedIndex};
use crate::modp::Fp;
use crate::poly::SparseMultiPoly;
use crate::report::{ReportRow, VerificationReport};
use crate::zeta::{ZetaEngine, ZetaTable};

use super::shuffle::compute_p_sigma;
use super::{for_each_tuple, probe_points, run_per_prime, CheckMode, RunOptions};

/// Largest `s + t` accepted by the verifier.
pub const MAX_CHAIN_TOTAL: usize = 6;

/// Exponent of the sign on the left side.
///
/// `Corrected`: `q = sum_{l > s} (r_l + k_l) + t`.
/// `Printed`: the same sum started at `l = s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SignConvention {
    #[default]
    Corrected,
    Printed,
}

impl SignConvention {
    pub fn name(self) -> &'static str {
        match self {
            SignConvention::Corrected => "corrected",
            SignConvention::Printed => "printed",
        }
    }

    fn exponent(self, s: usize, t: usize, r: &[u32], k: &[u32]) -> u32 {
        let from = match self {
            SignConvention::Corrected => s,
            SignConvention::Printed => s - 1,
        };
        r[from..].iter().chain(&k[from..]).sum::<u32>() + t as u32
    }
}

struct Block {
    r: Vec<u32>,
    k: Vec<u32>,
    reversed_sum: u64,
    straight_sum: u64,
}

fn check_shape(s: usize, t: usize) -> Result<()> {
    if s == 0 || t == 0 {
        return Err(Error::param("general formula needs s, t >= 1"));
    }
    if s + t > MAX_CHAIN_TOTAL {
        return Err(Error::param(format!(
            "s + t must be at most {MAX_CHAIN_TOTAL}"
        )));
    }
    Ok(())
}

/// Visits every `(r, k)` pair and every tuple `(alpha_1, .., alpha_N)`.
fn visit_tuples(
    s: usize,
    t: usize,
    n: u32,
    m: u32,
    mut visit: impl FnMut(usize, &[u32], &[u32], &[&SignedIndex]),
) {
    let big_n = s + t;
    let rs = enumerate_compositions(big_n, n);
    let ks = enumerate_compositions(big_n, m);
    let mut block = 0;
    for r in &rs {
        for k in &ks {
            let families: Vec<Vec<SignedIndex>> = r
                .parts()
                .iter()
                .zip(k.parts())
                .map(|(&ri, &ki)| enumerate_s(ri, ki, true))
                .collect();
            for_each_tuple(&families, |tuple| visit(block, r.parts(), k.parts(), tuple));
            block += 1;
        }
    }
}

fn reversed_concat(s: usize, tuple: &[&SignedIndex]) -> SignedIndex {
    SignedIndex::concat_all(
        tuple[..s]
            .iter()
            .copied()
            .chain(tuple[s..].iter().rev().copied()),
    )
}

fn gather(s: usize, t: usize, n: u32, m: u32) -> Vec<SignedIndex> {
    let mut out = Vec::new();
    visit_tuples(s, t, n, m, |_, _, _, tuple| {
        out.push(reversed_concat(s, tuple));
        out.push(SignedIndex::concat_all(tuple.iter().copied()));
    });
    out
}

fn blocks(s: usize, t: usize, n: u32, m: u32, fp: Fp, table: &ZetaTable) -> Vec<Block> {
    let mut out: Vec<Block> = Vec::new();
    visit_tuples(s, t, n, m, |b, r, k, tuple| {
        if out.len() == b {
            out.push(Block {
                r: r.to_vec(),
                k: k.to_vec(),
                reversed_sum: 0,
                straight_sum: 0,
            });
        }
        let sign = tuple[s..].iter().map(|a| a.sign()).product::<i8>();
        let blk = &mut out[b];
        blk.reversed_sum = fp.add(
            blk.reversed_sum,
            fp.signed(table.get(&reversed_concat(s, tuple)), sign),
        );
        let straight = SignedIndex::concat_all(tuple.iter().copied());
        blk.straight_sum = fp.add(blk.straight_sum, table.get(&straight));
    });
    out
}

fn parity(e: u32) -> i8 {
    if e.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `P^sigma` for every shuffle, as lists of 0-based variable offsets.
fn p_sigma_sets(s: usize, t: usize) -> Result<Vec<Vec<Vec<usize>>>> {
    Ok(enumerate_shuffles(s, t)?
        .iter()
        .map(|sigma| {
            compute_p_sigma(sigma)
                .incidence
                .into_iter()
                .map(|labels| labels.into_iter().map(|j| j - 1).collect())
                .collect()
        })
        .collect())
}

fn sides_poly(
    s: usize,
    t: usize,
    conv: SignConvention,
    fp: Fp,
    blocks: &[Block],
    sets: &[Vec<Vec<usize>>],
) -> (SparseMultiPoly, SparseMultiPoly) {
    let big_n = s + t;
    let nvars = 2 * big_n;
    let mut lhs = SparseMultiPoly::zero(fp, nvars);
    let mut rhs = SparseMultiPoly::zero(fp, nvars);
    let linear: Vec<Vec<(SparseMultiPoly, SparseMultiPoly)>> = sets
        .iter()
        .map(|p| {
            p.iter()
                .map(|set| {
                    let shifted: Vec<usize> = set.iter().map(|&j| j + big_n).collect();
                    (
                        SparseMultiPoly::linear_sum(fp, nvars, set),
                        SparseMultiPoly::linear_sum(fp, nvars, &shifted),
                    )
                })
                .collect()
        })
        .collect();
    for b in blocks {
        let exps: Vec<u32> = b.r.iter().chain(&b.k).copied().collect();
        let sign = parity(conv.exponent(s, t, &b.r, &b.k));
        lhs.add_term(exps, fp.signed(b.reversed_sum, sign));
        if b.straight_sum == 0 {
            continue;
        }
        for lin in &linear {
            let mut prod = SparseMultiPoly::constant(fp, nvars, 1);
            for (l, (pl, pu)) in lin.iter().enumerate() {
                prod = prod.mul(&pl.pow(b.r[l])).mul(&pu.pow(b.k[l]));
            }
            rhs.add_assign_scaled(&prod, b.straight_sum);
        }
    }
    (lhs, rhs)
}

fn sides_at(
    s: usize,
    t: usize,
    conv: SignConvention,
    fp: Fp,
    blocks: &[Block],
    sets: &[Vec<Vec<usize>>],
    x: &[u64],
) -> (u64, u64) {
    let big_n = s + t;
    let sums: Vec<Vec<(u64, u64)>> = sets
        .iter()
        .map(|p| {
            p.iter()
                .map(|set| {
                    let sl = set.iter().fold(0, |a, &j| fp.add(a, x[j]));
                    let su = set.iter().fold(0, |a, &j| fp.add(a, x[j + big_n]));
                    (sl, su)
                })
                .collect()
        })
        .collect();
    let (mut lhs, mut rhs) = (0, 0);
    for b in blocks {
        let mut mono = 1;
        for l in 0..big_n {
            mono = fp.mul(mono, fp.pow(x[l], b.r[l] as u64));
            mono = fp.mul(mono, fp.pow(x[l + big_n], b.k[l] as u64));
        }
        let sign = parity(conv.exponent(s, t, &b.r, &b.k));
        lhs = fp.add(lhs, fp.signed(fp.mul(mono, b.reversed_sum), sign));
        for sig in &sums {
            let mut prod = b.straight_sum;
            for (l, &(sl, su)) in sig.iter().enumerate() {
                prod = fp.mul(prod, fp.pow(sl, b.r[l] as u64));
                prod = fp.mul(prod, fp.pow(su, b.k[l] as u64));
            }
            rhs = fp.add(rhs, prod);
        }
    }
    (lhs, rhs)
}

/// Both sides of the two-chain formula at prime `p`.
pub fn build_general_sides(
    s: usize,
    t: usize,
    n: u32,
    m: u32,
    p: u64,
    conv: SignConvention,
) -> Result<(SparseMultiPoly, SparseMultiPoly)> {
    check_shape(s, t)?;
    let engine = ZetaEngine::new(p)?;
    let needed = gather(s, t, n, m);
    let table = ZetaTable::compute(&engine, &needed, None);
    let fp = engine.field();
    Ok(sides_poly(
        s,
        t,
        conv,
        fp,
        &blocks(s, t, n, m, fp, &table),
        &p_sigma_sets(s, t)?,
    ))
}

/// Checks the two-chain formula at every prime. Primes `p <= n + m + s + t`
/// are informational.
pub fn verify_general(
    s: usize,
    t: usize,
    n: u32,
    m: u32,
    primes: &[u64],
    conv: SignConvention,
    opts: &RunOptions<'_>,
) -> Result<VerificationReport> {
    check_shape(s, t)?;
    let sets = p_sigma_sets(s, t)?;
    let builder = opts
        .builder("general")
        .param("s", s as u64)
        .param("t", t as u64)
        .param("n", n)
        .param("m", m)
        .convention(conv.name());
    let threshold = n as u64 + m as u64 + (s + t) as u64;
    let check = opts.check;
    run_per_prime(
        builder,
        primes,
        opts,
        || gather(s, t, n, m),
        |engine, table| {
            let fp = engine.field();
            let p = engine.prime();
            let blk = blocks(s, t, n, m, fp, table);
            Ok(match check {
                CheckMode::Symbolic => {
                    let (lhs, rhs) = sides_poly(s, t, conv, fp, &blk, &sets);
                    let diff = lhs.sub(&rhs);
                    ReportRow::prime(p, p > threshold, diff.is_zero())
                        .with_checks(blk.len() as u64)
                        .with_detail(format!("nonzero coefficients: {}", diff.len()))
                }
                CheckMode::Evaluate { seed } => {
                    let count = ((n + 1) * (m + 1) + 1) as usize;
                    let bad = probe_points(seed, p, 2 * (s + t), count)
                        .iter()
                        .filter(|x| {
                            let (l, r) = sides_at(s, t, conv, fp, &blk, &sets, x);
                            l != r
                        })
                        .count();
                    ReportRow::prime(p, p > threshold, bad == 0)
                        .with_checks(count as u64)
                        .with_detail(format!("nonzero probes: {bad}"))
                }
            })
        },
    )
}

/// True when both sign conventions give the same formula term by term, which
/// happens exactly when every composition pair has `r_s + k_s` even.
pub fn conventions_coincide(s: usize, t: usize, n: u32, m: u32) -> bool {
    if s == 0 || t == 0 {
        return true;
    }
    let rs = enumerate_compositions(s + t, n);
    let ks = enumerate_compositions(s + t, m);
    rs.iter().all(|r| {
        ks.iter()
            .all(|k| (r.parts()[s - 1] + k.parts()[s - 1]) % 2 == 0)
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConventionVerdict {
    Corrected,
    Printed,
    /// Both pass.
    Ambiguous,
    /// Neither passes.
    Neither,
}

#[derive(Debug, Clone)]
pub struct ConventionResolution {
    pub verdict: ConventionVerdict,
    /// Corrected report first, then printed.
    pub reports: Vec<VerificationReport>,
    /// The two conventions coincide on this instance, so nothing can be
    /// decided from it.
    pub degenerate: bool,
}

/// Runs both sign conventions over `primes` and reports which one holds.
pub fn resolve_sign_convention(
    s: usize,
    t: usize,
    n: u32,
    m: u32,
    primes: &[u64],
    opts: &RunOptions<'_>,
) -> Result<ConventionResolution> {
    let corrected = verify_general(s, t, n, m, primes, SignConvention::Corrected, opts)?;
    let printed = verify_general(s, t, n, m, primes, SignConvention::Printed, opts)?;
    let verdict = match (corrected.passed(), printed.passed()) {
        (true, true) => ConventionVerdict::Ambiguous,
        (true, false) => ConventionVerdict::Corrected,
        (false, true) => ConventionVerdict::Printed,
        (false, false) => ConventionVerdict::Neither,
    };
    Ok(ConventionResolution {
        verdict,
        reports: vec![corrected, printed],
        degenerate: conventions_coincide(s, t, n, m),
    })
}

#[cfg(test)]
mod tests {
    use super::super::sum_formula::{concatenations, main_lhs_at};
    use super::super::MainMode;
    use super::*;
    use crate::modp::odd_primes_in_range;

    #[test]
    fn one_by_one_is_the_main_formula() {
        for (n, m) in [(0, 0), (1, 0), (1, 1), (2, 1)] {
            let p = 13;
            let (lhs, rhs) = build_general_sides(1, 1, n, m, p, SignConvention::Corrected).unwrap();
            let diff = lhs.sub(&rhs);
            let engine = ZetaEngine::new(p).unwrap();
            let needed = concatenations(n, m, MainMode::Alternating);
            let table = ZetaTable::compute(&engine, &needed, None);
            for x in probe_points(5, p, 4, 6) {
                let main = main_lhs_at(
                    n,
                    m,
                    MainMode::Alternating,
                    &engine,
                    &table,
                    [x[0], x[1], x[2], x[3]],
                );
                assert_eq!(diff.eval(&x), engine.field().neg(main), "{n} {m}");
            }
        }
    }

    #[test]
    fn corrected_holds() {
        let opts = RunOptions::default();
        for (s, t) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
            for (n, m) in [(0, 0), (1, 0), (0, 1), (1, 1)] {
                let r = verify_general(
                    s,
                    t,
                    n,
                    m,
                    &odd_primes_in_range(3, 40).unwrap(),
                    SignConvention::Corrected,
                    &opts,
                )
                .unwrap();
                assert!(r.passed(), "{s} {t} {n} {m}");
            }
        }
    }

    #[test]
    fn evaluate_mode_matches_symbolic() {
        let primes = odd_primes_in_range(7, 40).unwrap();
        for conv in [SignConvention::Corrected, SignConvention::Printed] {
            let a = verify_general(2, 1, 1, 1, &primes, conv, &RunOptions::default()).unwrap();
            let b = verify_general(2, 1, 1, 1, &primes, conv, &RunOptions::evaluate(7)).unwrap();
            assert_eq!(a.passed(), b.passed());
        }
    }

    #[test]
    fn resolver() {
        let primes = odd_primes_in_range(3, 40).unwrap();
        let opts = RunOptions::default();
        let r = resolve_sign_convention(1, 2, 1, 0, &primes, &opts).unwrap();
        assert_eq!(r.verdict, ConventionVerdict::Corrected);
        assert!(!r.degenerate);
        let r = resolve_sign_convention(2, 1, 0, 0, &primes, &opts).unwrap();
        assert_eq!(r.verdict, ConventionVerdict::Ambiguous);
        assert!(r.degenerate);
    }

    #[test]
    fn shape_errors() {
        assert!(build_general_sides(0, 1, 0, 0, 7, SignConvention::Corrected).is_err());
        assert!(build_general_sides(4, 3, 0, 0, 7, SignConvention::Corrected).is_err());
    }
}
