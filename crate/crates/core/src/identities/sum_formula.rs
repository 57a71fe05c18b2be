//! The four-parameter sum formula and its non-alternating ancestor.
//!
//! For `n, m >= 0` the alternating identity states that
//!
//! ```text
//!   sum_{r1+r2=n, k1+k2=m} (-1)^{r2+k2} l1^r1 l2^r2 u1^k1 u2^k2
//!         * sum_{a in S_{r1,k1}, b in S_{r2,k2}} sgn(b) zeta(a, b)
//! + sum_{r1+r2=n, k1+k2=m} (l1^r1 u1^k1 + l2^r1 u2^k1) (l1+l2)^r2 (u1+u2)^k2
//!         * sum_{a in S_{r1,k1}, b in S_{r2,k2}} zeta(a, b)
//! ```
//!
//! vanishes in every prime component. The classic mode is the same
//! construction over positive indices only.

use crate::error::Result;
use crate::indices::{enumerate_s, SignedIndex};
use crate::modp::Fp;
use crate::poly::{BiHomogPoly, Lead, PairShape, SparseMultiPoly};
use crate::report::{ReportRow, VerificationReport};
use crate::zeta::{ZetaEngine, ZetaTable};

use super::{probe_points, run_per_prime, CheckMode, RunOptions};

/// Alternating (signed indices) or classic (positive indices).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MainMode {
    Alternating,
    Classic,
}

impl MainMode {
    fn signed(self) -> bool {
        self == MainMode::Alternating
    }

    pub fn name(self) -> &'static str {
        match self {
            MainMode::Alternating => "alternating",
            MainMode::Classic => "classic",
        }
    }
}

/// One `(r1, r2, k1, k2)` split with its two zeta sums.
struct Split {
    r1: u32,
    r2: u32,
    k1: u32,
    k2: u32,
    signed_sum: u64,
    plain_sum: u64,
}

pub(crate) fn concatenations(n: u32, m: u32, mode: MainMode) -> Vec<SignedIndex> {
    let mut out = Vec::new();
    for r1 in 0..=n {
        for k1 in 0..=m {
            let left = enumerate_s(r1, k1, mode.signed());
            let right = enumerate_s(n - r1, m - k1, mode.signed());
            for a in &left {
                for b in &right {
                    out.push(a.concat(b));
                }
            }
        }
    }
    out
}

fn splits(n: u32, m: u32, mode: MainMode, fp: Fp, table: &ZetaTable) -> Vec<Split> {
    let mut out = Vec::new();
    for r1 in 0..=n {
        for k1 in 0..=m {
            let (r2, k2) = (n - r1, m - k1);
            let left = enumerate_s(r1, k1, mode.signed());
            let right = enumerate_s(r2, k2, mode.signed());
            let mut signed_sum = 0;
            let mut plain_sum = 0;
            for a in &left {
                for b in &right {
                    let z = table.get(&a.concat(b));
                    plain_sum = fp.add(plain_sum, z);
                    signed_sum = fp.add(signed_sum, fp.signed(z, b.sign()));
                }
            }
            out.push(Split {
                r1,
                r2,
                k1,
                k2,
                signed_sum,
                plain_sum,
            });
        }
    }
    out
}

fn parity_sign(e: u32) -> i8 {
    if e.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn lhs_from_splits(n: u32, m: u32, fp: Fp, splits: &[Split]) -> BiHomogPoly {
    let mut poly = BiHomogPoly::zero(fp, n, m);
    for sp in splits {
        let pure = fp.signed(sp.signed_sum, parity_sign(sp.r2 + sp.k2));
        poly.accumulate_term(
            pure,
            PairShape::Monomial {
                first: sp.r1,
                second: sp.r2,
            },
            PairShape::Monomial {
                first: sp.k1,
                second: sp.k2,
            },
        )
        .expect("split degrees sum to (n, m)");
        for lead in [Lead::First, Lead::Second] {
            poly.accumulate_term(
                sp.plain_sum,
                PairShape::Binomial {
                    lead,
                    lead_exp: sp.r1,
                    sum_exp: sp.r2,
                },
                PairShape::Binomial {
                    lead,
                    lead_exp: sp.k1,
                    sum_exp: sp.k2,
                },
            )
            .expect("split degrees sum to (n, m)");
        }
    }
    poly
}

/// Left side of the sum formula at prime `p` as a bihomogeneous polynomial.
pub fn build_main_lhs(n: u32, m: u32, p: u64, mode: MainMode) -> Result<BiHomogPoly> {
    let engine = ZetaEngine::new(p)?;
    let needed = concatenations(n, m, mode);
    let table = ZetaTable::compute(&engine, &needed, None);
    Ok(build_main_lhs_with(n, m, mode, &engine, &table))
}

pub(crate) fn build_main_lhs_with(
    n: u32,
    m: u32,
    mode: MainMode,
    engine: &ZetaEngine,
    table: &ZetaTable,
) -> BiHomogPoly {
    let fp = engine.field();
    lhs_from_splits(n, m, fp, &splits(n, m, mode, fp, table))
}

/// Value of the left side at `(l1, l2, u1, u2)`, computed term by term
/// without building the polynomial.
pub fn main_lhs_at(
    n: u32,
    m: u32,
    mode: MainMode,
    engine: &ZetaEngine,
    table: &ZetaTable,
    point: [u64; 4],
) -> u64 {
    let fp = engine.field();
    let [l1, l2, u1, u2] = point.map(|x| x % fp.modulus());
    let pw = |x: u64, e: u32| fp.pow(x, e as u64);
    let mut total = 0;
    for sp in splits(n, m, mode, fp, table) {
        let mono = fp.mul(
            fp.mul(pw(l1, sp.r1), pw(l2, sp.r2)),
            fp.mul(pw(u1, sp.k1), pw(u2, sp.k2)),
        );
        let pure = fp.signed(fp.mul(mono, sp.signed_sum), parity_sign(sp.r2 + sp.k2));
        let heads = fp.add(
            fp.mul(pw(l1, sp.r1), pw(u1, sp.k1)),
            fp.mul(pw(l2, sp.r1), pw(u2, sp.k1)),
        );
        let tails = fp.mul(pw(fp.add(l1, l2), sp.r2), pw(fp.add(u1, u2), sp.k2));
        let binom = fp.mul(fp.mul(heads, tails), sp.plain_sum);
        total = fp.add(total, fp.add(pure, binom));
    }
    total
}

/// Checks the sum formula at every prime; primes `p <= n + m + 2` are
/// informational.
pub fn verify_main(
    n: u32,
    m: u32,
    primes: &[u64],
    mode: MainMode,
    opts: &RunOptions<'_>,
) -> Result<VerificationReport> {
    let name = match mode {
        MainMode::Alternating => "main",
        MainMode::Classic => "classic",
    };
    let builder = opts
        .builder(name)
        .param("n", n)
        .param("m", m)
        .param("variant", mode.name());
    let threshold = (n + m + 2) as u64;
    let check = opts.check;
    run_per_prime(
        builder,
        primes,
        opts,
        || concatenations(n, m, mode),
        |engine, table| {
            let p = engine.prime();
            let judged = p > threshold;
            Ok(match check {
                CheckMode::Symbolic => {
                    let poly = build_main_lhs_with(n, m, mode, engine, table);
                    ReportRow::prime(p, judged, poly.is_zero())
                        .with_checks(((n + 1) * (m + 1)) as u64)
                        .with_detail(format!("nonzero coefficients: {}", poly.support_size()))
                }
                CheckMode::Evaluate { seed } => {
                    let count = ((n + 1) * (m + 1) + 1) as usize;
                    let bad = probe_points(seed, p, 4, count)
                        .into_iter()
                        .filter(|pt| {
                            main_lhs_at(n, m, mode, engine, table, [pt[0], pt[1], pt[2], pt[3]])
                                != 0
                        })
                        .count();
                    ReportRow::prime(p, judged, bad == 0)
                        .with_checks(count as u64)
                        .with_detail(format!("nonzero probes: {bad}"))
                }
            })
        },
    )
}

/// The non-alternating formula with head factor `l1^i1 u1^j1 + l2^i2 u2^j2`
/// in place of `l1^i1 u1^j1 + l2^i1 u2^j1`. Not bihomogeneous, hence sparse.
/// It does not vanish.
pub fn build_classic_printed(n: u32, m: u32, p: u64) -> Result<SparseMultiPoly> {
    let engine = ZetaEngine::new(p)?;
    let fp = engine.field();
    let needed = concatenations(n, m, MainMode::Classic);
    let table = ZetaTable::compute(&engine, &needed, None);
    Ok(classic_printed_with(n, m, fp, &table))
}

fn classic_printed_with(n: u32, m: u32, fp: Fp, table: &ZetaTable) -> SparseMultiPoly {
    let var = |i: usize| SparseMultiPoly::linear_sum(fp, 4, &[i]);
    let (l1, l2, u1, u2) = (var(0), var(1), var(2), var(3));
    let mut out = SparseMultiPoly::zero(fp, 4);
    for sp in splits(n, m, MainMode::Classic, fp, table) {
        let pure = SparseMultiPoly::monomial(
            fp,
            vec![sp.r1, sp.r2, sp.k1, sp.k2],
            fp.signed(sp.plain_sum, parity_sign(sp.r2 + sp.k2)),
        );
        let heads = l1
            .pow(sp.r1)
            .mul(&u1.pow(sp.k1))
            .add(&l2.pow(sp.r2).mul(&u2.pow(sp.k2)));
        let tails = l1.add(&l2).pow(sp.r2).mul(&u1.add(&u2).pow(sp.k2));
        out = out.add(&pure);
        out.add_assign_scaled(&heads.mul(&tails), sp.plain_sum);
    }
    out
}

/// Checks the variant built by [`build_classic_printed`].
pub fn verify_classic_printed(
    n: u32,
    m: u32,
    primes: &[u64],
    opts: &RunOptions<'_>,
) -> Result<VerificationReport> {
    let builder = opts
        .builder("classic")
        .param("n", n)
        .param("m", m)
        .param("variant", "classic")
        .convention("printed");
    let threshold = (n + m + 2) as u64;
    run_per_prime(
        builder,
        primes,
        opts,
        || concatenations(n, m, MainMode::Classic),
        |engine, table| {
            let poly = classic_printed_with(n, m, engine.field(), table);
            let p = engine.prime();
            Ok(ReportRow::prime(p, p > threshold, poly.is_zero())
                .with_detail(format!("nonzero coefficients: {}", poly.len())))
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modp::odd_primes_in_range;
    use crate::zeta::famzv_naive;

    /// Independent transcription: sparse polynomials, zeta values from the
    /// naive oracle, no bihomogeneous grid.
    fn transcription(n: u32, m: u32, p: u64, mode: MainMode) -> SparseMultiPoly {
        let fp = Fp::new(p).unwrap();
        let var = |i: usize| SparseMultiPoly::linear_sum(fp, 4, &[i]);
        let (l1, l2, u1, u2) = (var(0), var(1), var(2), var(3));
        let mut total = SparseMultiPoly::zero(fp, 4);
        for i1 in 0..=n {
            for j1 in 0..=m {
                let (i2, j2) = (n - i1, m - j1);
                for a in enumerate_s(i1, j1, mode.signed()) {
                    for b in enumerate_s(i2, j2, mode.signed()) {
                        let z = famzv_naive(&a.concat(&b), p).unwrap().value();
                        let sign = (if (i2 + j2) % 2 == 0 { 1 } else { -1 }) * b.sign() as i64;
                        let first = l1
                            .pow(i1)
                            .mul(&l2.pow(i2))
                            .mul(&u1.pow(j1))
                            .mul(&u2.pow(j2));
                        total.add_assign_scaled(&first, fp.reduce(sign * z as i64));
                        let heads = l1
                            .pow(i1)
                            .mul(&u1.pow(j1))
                            .add(&l2.pow(i1).mul(&u2.pow(j1)));
                        let second = heads.mul(&l1.add(&l2).pow(i2)).mul(&u1.add(&u2).pow(j2));
                        total.add_assign_scaled(&second, z);
                    }
                }
            }
        }
        total
    }

    #[test]
    fn degenerate_case_is_the_scalar_combination() {
        for p in [5, 7] {
            let poly = build_main_lhs(0, 0, p, MainMode::Alternating).unwrap();
            let z = |v: &[i32]| {
                famzv_naive(&SignedIndex::new(v.to_vec()).unwrap(), p)
                    .unwrap()
                    .value()
            };
            let scalar = (3 * z(&[1, 1]) + 3 * z(&[-1, 1]) + z(&[1, -1]) + z(&[-1, -1])) % p;
            assert_eq!(poly.coeff(0, 0), scalar);
            assert_eq!(scalar, 0);
        }
    }

    #[test]
    fn matches_independent_transcription() {
        for mode in [MainMode::Alternating, MainMode::Classic] {
            for (n, m) in [(1, 1), (2, 0), (0, 2)] {
                let built = build_main_lhs(n, m, 11, mode).unwrap();
                assert_eq!(
                    built.to_sparse(),
                    transcription(n, m, 11, mode),
                    "{mode:?} {n} {m}"
                );
            }
        }
    }

    #[test]
    fn transcription_of_nonzero_partial_sum_is_nonzero() {
        // Guard against a vacuous comparison: the pure-monomial part alone
        // does not vanish.
        let engine = ZetaEngine::new(11).unwrap();
        let needed = concatenations(1, 1, MainMode::Alternating);
        let table = ZetaTable::compute(&engine, &needed, None);
        let fp = engine.field();
        let sp = splits(1, 1, MainMode::Alternating, fp, &table);
        assert!(sp.iter().any(|s| s.signed_sum != 0 || s.plain_sum != 0));
    }

    #[test]
    fn bidegree_is_structural() {
        for (n, m) in [(0, 0), (3, 1), (2, 2)] {
            assert_eq!(
                build_main_lhs(n, m, 13, MainMode::Alternating)
                    .unwrap()
                    .bidegree(),
                (n, m)
            );
        }
    }

    #[test]
    fn verify_small_sweeps() {
        let opts = RunOptions::default();
        let r = verify_main(
            0,
            0,
            &odd_primes_in_range(5, 100).unwrap(),
            MainMode::Alternating,
            &opts,
        )
        .unwrap();
        assert!(r.passed());
        let r = verify_main(
            1,
            1,
            &odd_primes_in_range(7, 200).unwrap(),
            MainMode::Alternating,
            &opts,
        )
        .unwrap();
        assert!(r.passed());
        let r = verify_main(
            2,
            1,
            &odd_primes_in_range(7, 200).unwrap(),
            MainMode::Classic,
            &opts,
        )
        .unwrap();
        assert!(r.passed());
        assert!(r.zeta_evals > 0);
    }

    #[test]
    fn evaluate_mode_agrees() {
        let opts = RunOptions::evaluate(42);
        let r = verify_main(
            2,
            2,
            &odd_primes_in_range(7, 60).unwrap(),
            MainMode::Alternating,
            &opts,
        )
        .unwrap();
        assert!(r.passed());
        assert_eq!(r.mode, "evaluate");
        assert_eq!(r.seed, Some(42));
    }

    #[test]
    fn pointwise_evaluation_matches_polynomial() {
        let engine = ZetaEngine::new(23).unwrap();
        let needed = concatenations(2, 1, MainMode::Alternating);
        let table = ZetaTable::compute(&engine, &needed, None);
        let poly = build_main_lhs_with(2, 1, MainMode::Alternating, &engine, &table);
        for pt in probe_points(3, 23, 4, 10) {
            let pt = [pt[0], pt[1], pt[2], pt[3]];
            assert_eq!(
                poly.eval(pt),
                main_lhs_at(2, 1, MainMode::Alternating, &engine, &table, pt)
            );
        }
    }

    #[test]
    fn small_primes_are_informational() {
        let r = verify_main(
            1,
            1,
            &[3, 5, 7],
            MainMode::Alternating,
            &RunOptions::default(),
        )
        .unwrap();
        assert!(!r.row_for(3).unwrap().judged);
        assert!(r.row_for(5).unwrap().judged);
    }

    #[test]
    fn alternative_head_factor_fails() {
        let r = verify_classic_printed(
            0,
            1,
            &odd_primes_in_range(5, 30).unwrap(),
            &RunOptions::default(),
        )
        .unwrap();
        assert!(!r.passed());
        assert!(build_classic_printed(0, 0, 7).unwrap().is_zero());
    }
}
