//! The two scalar consequences of the sum formula, obtained by substituting
//! `(1, 0, 0, 1)` and `(1, 1, -1, 1)` for `(l1, l2, u1, u2)`.

use crate::error::{Error, Result};
use crate::indices::{enumerate_s, SignedIndex};
use crate::modp::Fp;
use crate::report::{ReportRow, VerificationReport};
use crate::zeta::{ZetaEngine, ZetaTable};

use super::sum_formula::{concatenations, main_lhs_at};
use super::{run_per_prime, MainMode, RunOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Corollary {
    /// `sum w(a) zeta(a)` over `S_{n-1,m}`, for `n >= 2`.
    First,
    /// `sum J(a) zeta(a)` over `S_{n+1,m}`, for even `m > 0`.
    Second,
}

impl Corollary {
    pub fn name(self) -> &'static str {
        match self {
            Corollary::First => "cor1",
            Corollary::Second => "cor2",
        }
    }
}

/// Which statement is checked.
///
/// `Printed` gives weight 0 to an index made only of `±1`, and states the
/// second identity without its normalising factor.
/// `Derived` is what the substitution actually yields.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CorollaryForm {
    #[default]
    Derived,
    Printed,
}

impl CorollaryForm {
    pub fn name(self) -> &'static str {
        match self {
            CorollaryForm::Derived => "derived",
            CorollaryForm::Printed => "printed",
        }
    }
}

/// Both sides at one prime plus the substitution cross-check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CorollarySides {
    pub lhs: u64,
    pub rhs: u64,
    /// Whether the stated relation between `lhs` and `rhs` holds.
    pub holds: bool,
    /// The four-parameter left side at the substitution point.
    pub substituted: u64,
    /// Whether `substituted` equals the combination of `lhs` and `rhs` it
    /// should reduce to.
    pub consistent: bool,
}

fn leading_unit_run(index: &SignedIndex) -> u32 {
    index.entries().iter().take_while(|a| a.abs() == 1).count() as u32
}

/// Length of the leading run of `±1` entries. An index made entirely of
/// `±1` gets `depth - 1`, the value the substitution produces.
pub fn weight_w_sgn(index: &SignedIndex) -> u32 {
    let run = leading_unit_run(index);
    if run as usize == index.depth() {
        run.saturating_sub(1)
    } else {
        run
    }
}

fn weight_w_printed(index: &SignedIndex) -> u32 {
    let run = leading_unit_run(index);
    if run as usize == index.depth() {
        0
    } else {
        run
    }
}

/// `(2^w - 1) sgn(a)` as an integer.
pub fn weight_j_sgn(index: &SignedIndex) -> i64 {
    let w = weight_w_sgn(index);
    ((1i64 << w) - 1) * index.sign() as i64
}

fn check_params(which: Corollary, n: u32, m: u32) -> Result<()> {
    match which {
        Corollary::First if n < 2 => Err(Error::param("cor1 needs n >= 2")),
        Corollary::Second if m == 0 || m % 2 == 1 => {
            Err(Error::param("cor2 needs a positive even m"))
        }
        _ => Ok(()),
    }
}

fn idx(entries: Vec<i32>) -> SignedIndex {
    SignedIndex::new(entries).expect("nonzero entries")
}

fn unit_prefixes(n: u32) -> Vec<SignedIndex> {
    enumerate_s(n, 0, true)
}

fn gather(which: Corollary, n: u32, m: u32) -> Vec<SignedIndex> {
    match which {
        Corollary::First => {
            let mut out = enumerate_s(n - 1, m, true);
            let top = (m + 1) as i32;
            for e in unit_prefixes(n - 2) {
                out.push(e.concat(&idx(vec![top])));
                out.push(e.concat(&idx(vec![-top])));
            }
            for k1 in 0..=m {
                let head = (k1 + 1) as i32;
                for b in enumerate_s(n - 2, m - k1, true) {
                    out.push(idx(vec![head]).concat(&b));
                    out.push(idx(vec![-head]).concat(&b));
                }
            }
            out.extend(concatenations(n - 2, m, MainMode::Alternating));
            out
        }
        Corollary::Second => {
            let mut out = enumerate_s(n + 1, m, true);
            out.extend(concatenations(n, m, MainMode::Alternating));
            out
        }
    }
}

fn parity(e: u32) -> i8 {
    if e.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn weighted_sum(
    fp: Fp,
    table: &ZetaTable,
    family: &[SignedIndex],
    w: impl Fn(&SignedIndex) -> i64,
) -> u64 {
    family.iter().fold(0, |acc, a| {
        fp.add(acc, fp.mul(fp.reduce(w(a)), table.get(a)))
    })
}

fn sides_with(
    which: Corollary,
    n: u32,
    m: u32,
    form: CorollaryForm,
    engine: &ZetaEngine,
    table: &ZetaTable,
) -> CorollarySides {
    let fp = engine.field();
    match which {
        Corollary::First => {
            let family = enumerate_s(n - 1, m, true);
            let lhs = match form {
                CorollaryForm::Derived => {
                    weighted_sum(fp, table, &family, |a| weight_w_sgn(a) as i64)
                }
                CorollaryForm::Printed => {
                    weighted_sum(fp, table, &family, |a| weight_w_printed(a) as i64)
                }
            };
            let top = (m + 1) as i32;
            let mut rhs = 0;
            for e in unit_prefixes(n - 2) {
                let plus = table.get(&e.concat(&idx(vec![top])));
                let minus = table.get(&e.concat(&idx(vec![-top])));
                rhs = fp.add(rhs, fp.signed(plus, -parity(m)));
                rhs = fp.add(rhs, fp.signed(minus, parity(m)));
            }
            for k1 in 0..=m {
                let head = (k1 + 1) as i32;
                for b in enumerate_s(n - 2, m - k1, true) {
                    rhs = fp.sub(rhs, table.get(&idx(vec![head]).concat(&b)));
                    rhs = fp.sub(rhs, table.get(&idx(vec![-head]).concat(&b)));
                }
            }
            let substituted =
                main_lhs_at(n - 2, m, MainMode::Alternating, engine, table, [1, 0, 0, 1]);
            CorollarySides {
                lhs,
                rhs,
                holds: lhs == rhs,
                substituted,
                consistent: substituted == fp.sub(lhs, rhs),
            }
        }
        Corollary::Second => {
            let family = enumerate_s(n + 1, m, true);
            let lhs = weighted_sum(fp, table, &family, weight_j_sgn);
            let mut rhs = 0;
            for r1 in 0..=n {
                for k1 in 0..=m {
                    let (r2, k2) = (n - r1, m - k1);
                    let sign = -parity(r2);
                    for a in enumerate_s(r1, k1, true) {
                        for b in enumerate_s(r2, k2, true) {
                            let z = table.get(&a.concat(&b));
                            rhs = fp.add(rhs, fp.signed(z, sign * b.sign()));
                        }
                    }
                }
            }
            let normalised = fp.signed(fp.add(lhs, lhs), parity(n));
            let holds = match form {
                CorollaryForm::Derived => normalised == rhs,
                CorollaryForm::Printed => lhs == rhs,
            };
            let point = [1, 1, fp.neg(1), 1];
            let substituted = main_lhs_at(n, m, MainMode::Alternating, engine, table, point);
            CorollarySides {
                lhs,
                rhs,
                holds,
                substituted,
                consistent: substituted == fp.sub(normalised, rhs),
            }
        }
    }
}

/// Both sides of a corollary at prime `p`.
pub fn corollary_sides(
    which: Corollary,
    n: u32,
    m: u32,
    p: u64,
    form: CorollaryForm,
) -> Result<CorollarySides> {
    check_params(which, n, m)?;
    let engine = ZetaEngine::new(p)?;
    let needed = gather(which, n, m);
    let table = ZetaTable::compute(&engine, &needed, None);
    Ok(sides_with(which, n, m, form, &engine, &table))
}

/// Checks a corollary and its substitution cross-check at every prime.
/// Primes `p <= n + m + 2` are informational.
pub fn verify_corollary(
    which: Corollary,
    n: u32,
    m: u32,
    primes: &[u64],
    form: CorollaryForm,
    opts: &RunOptions<'_>,
) -> Result<VerificationReport> {
    check_params(which, n, m)?;
    let builder = opts
        .builder(which.name())
        .mode("exact")
        .seed(None)
        .param("n", n)
        .param("m", m)
        .convention(form.name());
    let threshold = (n + m + 2) as u64;
    run_per_prime(
        builder,
        primes,
        opts,
        || gather(which, n, m),
        |engine, table| {
            let s = sides_with(which, n, m, form, engine, table);
            let p = engine.prime();
            Ok(ReportRow::prime(p, p > threshold, s.holds && s.consistent)
                .with_checks(2)
                .with_detail(format!(
                    "lhs={} rhs={} substituted={} consistent={}",
                    s.lhs, s.rhs, s.substituted, s.consistent
                )))
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modp::odd_primes_in_range;

    fn i(v: &[i32]) -> SignedIndex {
        idx(v.to_vec())
    }

    #[test]
    fn weights() {
        assert_eq!(weight_w_sgn(&i(&[2, 1])), 0);
        assert_eq!(weight_w_sgn(&i(&[1, -1, 3])), 2);
        assert_eq!(weight_w_sgn(&i(&[-1, 1, 1])), 2);
        assert_eq!(weight_w_printed(&i(&[-1, 1, 1])), 0);
        assert_eq!(weight_j_sgn(&i(&[-1, 1, 2])), -3);
        assert_eq!(weight_j_sgn(&i(&[3, -1])), 0);
    }

    #[test]
    fn parameter_errors() {
        assert!(corollary_sides(Corollary::First, 1, 0, 7, CorollaryForm::Derived).is_err());
        assert!(corollary_sides(Corollary::Second, 1, 1, 7, CorollaryForm::Derived).is_err());
        assert!(corollary_sides(Corollary::Second, 1, 0, 7, CorollaryForm::Derived).is_err());
    }

    #[test]
    fn derived_forms_hold() {
        let primes = odd_primes_in_range(3, 60).unwrap();
        let opts = RunOptions::default();
        for (n, m) in [(2, 0), (2, 1), (3, 2)] {
            let r = verify_corollary(
                Corollary::First,
                n,
                m,
                &primes,
                CorollaryForm::Derived,
                &opts,
            )
            .unwrap();
            assert!(r.passed(), "cor1 {n} {m}");
        }
        for n in [1, 2] {
            let r = verify_corollary(
                Corollary::Second,
                n,
                2,
                &primes,
                CorollaryForm::Derived,
                &opts,
            )
            .unwrap();
            assert!(r.passed(), "cor2 {n}");
        }
    }

    #[test]
    fn printed_forms_fail() {
        let primes = odd_primes_in_range(11, 40).unwrap();
        let opts = RunOptions::default();
        let r = verify_corollary(
            Corollary::First,
            2,
            0,
            &primes,
            CorollaryForm::Printed,
            &opts,
        )
        .unwrap();
        assert!(!r.passed());
        let r = verify_corollary(
            Corollary::Second,
            1,
            2,
            &primes,
            CorollaryForm::Printed,
            &opts,
        )
        .unwrap();
        assert!(!r.passed());
    }

    #[test]
    fn substitution_is_consistent_everywhere() {
        for p in [3, 5, 7, 13] {
            assert!(
                corollary_sides(Corollary::First, 3, 1, p, CorollaryForm::Derived)
                    .unwrap()
                    .consistent
            );
            assert!(
                corollary_sides(Corollary::Second, 1, 2, p, CorollaryForm::Derived)
                    .unwrap()
                    .consistent
            );
        }
    }
}
