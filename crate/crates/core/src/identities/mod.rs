//! Builders and verifiers for the sum formulas.
//!
//! Every verifier evaluates its identity independently at each prime of the
//! requested range and returns a [`VerificationReport`](crate::VerificationReport).
//! Primes at or below an identity's threshold are evaluated and recorded but
//! do not count toward the verdict.

mod corollary;
mod general;
mod reversal;
mod shuffle;
mod sum_formula;

pub use corollary::{
    corollary_sides, verify_corollary, weight_j_sgn, weight_w_sgn, Corollary, CorollaryForm,
    CorollarySides,
};
pub use general::{
    build_general_sides, conventions_coincide, resolve_sign_convention, verify_general,
    ConventionResolution, ConventionVerdict, SignConvention,
};
pub use reversal::{reversal_sign, verify_reversal};
pub use shuffle::{chain_rule_solution, compute_p_sigma, ChainRuleSolution, PSigmaTable};
pub use sum_formula::{
    build_classic_printed, build_main_lhs, main_lhs_at, verify_classic_printed, verify_main,
    MainMode,
};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::Result;
use crate::indices::SignedIndex;
use crate::report::{ReportBuilder, ReportRow};
use crate::zeta::{ZetaCache, ZetaEngine, ZetaTable};

/// How polynomial identities are judged.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CheckMode {
    /// Exact vanishing of every coefficient.
    #[default]
    Symbolic,
    /// Evaluation at seeded random points without building the polynomial.
    Evaluate { seed: u64 },
}

impl CheckMode {
    pub fn name(self) -> &'static str {
        match self {
            CheckMode::Symbolic => "symbolic",
            CheckMode::Evaluate { .. } => "evaluate",
        }
    }

    pub fn seed(self) -> Option<u64> {
        match self {
            CheckMode::Symbolic => None,
            CheckMode::Evaluate { seed } => Some(seed),
        }
    }
}

/// Options shared by the verifiers.
#[derive(Debug, Clone, Copy, Default)]
pub struct RunOptions<'a> {
    pub check: CheckMode,
    pub cache: Option<&'a ZetaCache>,
}

impl<'a> RunOptions<'a> {
    pub fn with_cache(mut self, cache: &'a ZetaCache) -> Self {
        self.cache = Some(cache);
        self
    }

    pub fn evaluate(seed: u64) -> Self {
        RunOptions {
            check: CheckMode::Evaluate { seed },
            cache: None,
        }
    }

    fn builder(&self, name: &str) -> ReportBuilder {
        ReportBuilder::new(name)
            .mode(self.check.name())
            .seed(self.check.seed())
            .cache_invalid_lines(self.cache.map_or(0, |c| c.invalid_lines()))
    }
}

/// Random points for evaluation mode, reproducible from `(seed, p)`.
pub(crate) fn probe_points(seed: u64, p: u64, dim: usize, count: usize) -> Vec<Vec<u64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ p.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    (0..count)
        .map(|_| (0..dim).map(|_| rng.gen_range(0..p)).collect())
        .collect()
}

/// Runs `check` once per prime (in parallel) with a zeta table holding every
/// index produced by `gather`, and seals the rows into a report.
pub(crate) fn run_per_prime<G, C>(
    mut builder: ReportBuilder,
    primes: &[u64],
    opts: &RunOptions<'_>,
    gather: G,
    check: C,
) -> Result<crate::report::VerificationReport>
where
    G: Fn() -> Vec<SignedIndex> + Sync,
    C: Fn(&ZetaEngine, &ZetaTable) -> Result<ReportRow> + Sync,
{
    let needed = gather();
    let results = primes
        .par_iter()
        .map(|&p| {
            let engine = ZetaEngine::new(p)?;
            let table = ZetaTable::compute(&engine, &needed, opts.cache);
            let row = check(&engine, &table)?;
            Ok((row, table.computed(), table.cache_hits()))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut rows = Vec::with_capacity(results.len());
    for (row, computed, hits) in results {
        builder.add_zeta_evals(computed, hits);
        rows.push(row);
    }
    Ok(builder.finish(rows))
}

/// Cartesian product of index families, visiting tuples in lexicographic order.
pub(crate) fn for_each_tuple<'a>(
    families: &'a [Vec<SignedIndex>],
    mut visit: impl FnMut(&[&'a SignedIndex]),
) {
    if families.iter().any(|f| f.is_empty()) {
        return;
    }
    let mut pos = vec![0usize; families.len()];
    let mut tuple: Vec<&SignedIndex> = families.iter().map(|f| &f[0]).collect();
    loop {
        visit(&tuple);
        let mut k = families.len();
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            pos[k] += 1;
            if pos[k] < families[k].len() {
                tuple[k] = &families[k][pos[k]];
                break;
            }
            pos[k] = 0;
            tuple[k] = &families[k][0];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::indices::enumerate_s;

    #[test]
    fn tuples_cover_product() {
        let fams = vec![
            enumerate_s(0, 0, true),
            enumerate_s(1, 0, true),
            enumerate_s(0, 1, true),
        ];
        let mut count = 0;
        let mut seen = std::collections::HashSet::new();
        for_each_tuple(&fams, |t| {
            count += 1;
            seen.insert(t.iter().map(|x| x.to_string()).collect::<Vec<_>>());
        });
        assert_eq!(count, 2 * 4 * 2);
        assert_eq!(seen.len(), 16);
    }

    #[test]
    fn probe_points_reproducible() {
        assert_eq!(probe_points(9, 101, 4, 3), probe_points(9, 101, 4, 3));
        assert_ne!(probe_points(9, 101, 4, 3), probe_points(10, 101, 4, 3));
        assert!(probe_points(1, 7, 4, 5).iter().flatten().all(|&x| x < 7));
    }
}
