//! Finite alternating multiple zeta values modulo primes, and machine checks
//! of the sum formulas they satisfy.
//!
//! ```
//! use famzv::{famzv, SignedIndex};
//!
//! let idx: SignedIndex = "1,-2".parse().unwrap();
//! let z = famzv(&idx, 7).unwrap();
//! assert!(z.value() < 7);
//! ```

pub mod error;
pub mod identities;
pub mod indices;
pub mod modp;
pub mod poly;
pub mod quad;
pub mod report;
pub mod series;
pub mod zeta;

pub use error::{Error, Result};
pub use identities::{
    build_classic_printed, build_general_sides, build_main_lhs, chain_rule_solution,
    compute_p_sigma, conventions_coincide, corollary_sides, main_lhs_at, resolve_sign_convention,
    reversal_sign, verify_classic_printed, verify_corollary, verify_general, verify_main,
    verify_reversal, weight_j_sgn, weight_w_sgn, ChainRuleSolution, CheckMode,
    ConventionResolution, ConventionVerdict, Corollary, CorollaryForm, CorollarySides, MainMode,
    PSigmaTable, RunOptions, SignConvention,
};
pub use indices::{
    enumerate_compositions, enumerate_s, enumerate_shuffles, indices_of_weight,
    indices_up_to_weight, Composition, Form, Shuffle, SignedIndex,
};
pub use modp::{odd_primes_in_range, primes_in_range, Fp, Residue};
pub use poly::{BiHomogPoly, SparseMultiPoly};
pub use quad::{iterint_numeric, l_form, li_numeric, verify_quadrature, RealInterval};
pub use report::{ReportRow, Verdict, VerificationReport};
pub use series::{li_series, verify_lemma2, verify_lemma2_all, TruncSeries};
pub use zeta::{famzv, famzv_adele, famzv_naive, AdeleVector, ZetaCache, ZetaEngine, ZetaTable};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/zeta-values.md")]
    mod zeta_values {}
    #[doc = include_str!("../../../book/src/series.md")]
    mod series {}
    #[doc = include_str!("../../../book/src/sum-formulas.md")]
    mod sum_formulas {}
    #[doc = include_str!("../../../book/src/two-chains.md")]
    mod two_chains {}
    #[doc = include_str!("../../../book/src/numerics.md")]
    mod numerics {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
