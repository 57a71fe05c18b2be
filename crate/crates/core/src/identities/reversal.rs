//! `zeta(a_r, ..., a_1) = (-1)^{wt a} sgn(a) zeta(a_1, ..., a_r)`.

use crate::error::{Error, Result};
use crate::indices::{indices_up_to_weight, SignedIndex};
use crate::report::{ReportRow, VerificationReport};

use super::{run_per_prime, RunOptions};

/// Largest weight accepted by the reversal sweep.
pub const MAX_REVERSAL_WEIGHT: u32 = 6;

/// The factor `(-1)^{wt a} sgn(a)`.
pub fn reversal_sign(index: &SignedIndex) -> i8 {
    let parity = if index.weight().is_multiple_of(2) {
        1
    } else {
        -1
    };
    parity * index.sign()
}

/// Checks the reversal formula for every signed index of weight up to
/// `weight_bound`. Primes below 5 are informational.
pub fn verify_reversal(
    weight_bound: u32,
    primes: &[u64],
    opts: &RunOptions<'_>,
) -> Result<VerificationReport> {
    if weight_bound == 0 || weight_bound > MAX_REVERSAL_WEIGHT {
        return Err(Error::param(format!(
            "reversal weight must be in 1..={MAX_REVERSAL_WEIGHT}"
        )));
    }
    let indices = indices_up_to_weight(weight_bound, true);
    let builder = opts
        .builder("reversal")
        .mode("exact")
        .seed(None)
        .param("weight", weight_bound);
    run_per_prime(
        builder,
        primes,
        opts,
        || {
            let mut all = indices.clone();
            all.extend(indices.iter().map(SignedIndex::reversed));
            all
        },
        |engine, table| {
            let fp = engine.field();
            let bad: Vec<String> = indices
                .iter()
                .filter(|a| table.get(&a.reversed()) != fp.signed(table.get(a), reversal_sign(a)))
                .map(|a| format!("({a})"))
                .collect();
            let p = engine.prime();
            let mut row =
                ReportRow::prime(p, p >= 5, bad.is_empty()).with_checks(indices.len() as u64);
            if !bad.is_empty() {
                row = row.with_detail(format!("failing: {}", bad.join(" ")));
            }
            Ok(row)
        },
    )
}
