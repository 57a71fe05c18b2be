//! Floating-point checks of the analytic side: the interval functions
//! `L_1, L_{-1}, L_0`, the polylogarithm series on `(0, 0.75]` and nested
//! Gauss-Legendre quadrature of its iterated-integral form.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::indices::{indices_up_to_weight, Form, SignedIndex};
use crate::report::{ReportBuilder, ReportRow, VerificationReport};

/// Smallest distance allowed between an endpoint and `0` or `1`.
pub const MIN_MARGIN: f64 = 1e-12;
/// Largest argument accepted by [`li_numeric`] and [`iterint_numeric`].
pub const MAX_Z: f64 = 0.75;
/// Largest weight accepted by [`iterint_numeric`].
pub const MAX_QUAD_WEIGHT: u32 = 3;
/// Default number of Gauss-Legendre nodes per level.
pub const DEFAULT_NODES: usize = 64;
const MAX_TERMS: usize = 1_000_000;

/// `t1 < t2` inside `[MIN_MARGIN, 1 - MIN_MARGIN]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealInterval {
    lower: f64,
    upper: f64,
}

impl RealInterval {
    pub fn new(lower: f64, upper: f64) -> Result<Self> {
        let inside = |x: f64| (MIN_MARGIN..=1.0 - MIN_MARGIN).contains(&x);
        if !(inside(lower) && inside(upper) && lower < upper) {
            return Err(Error::param(format!(
                "interval ({lower}, {upper}) must satisfy {MIN_MARGIN} <= t1 < t2 <= 1 - {MIN_MARGIN}"
            )));
        }
        Ok(RealInterval { lower, upper })
    }

    pub fn lower(self) -> f64 {
        self.lower
    }

    pub fn upper(self) -> f64 {
        self.upper
    }
}

/// `L_1 = ln((1-t1)/(1-t2))`, `L_{-1} = ln((1+t1)/(1+t2))`,
/// `L_0 = ln(t2/t1)`, selected by `j` in `{1, -1, 0}`.
pub fn l_form(j: i8, iv: RealInterval) -> Result<f64> {
    let (a, b) = (iv.lower, iv.upper);
    match j {
        1 => Ok((-a).ln_1p() - (-b).ln_1p()),
        -1 => Ok(a.ln_1p() - b.ln_1p()),
        0 => Ok(b.ln() - a.ln()),
        _ => Err(Error::param(format!(
            "form selector must be 1, -1 or 0, got {j}"
        ))),
    }
}

fn check_z(z: f64) -> Result<()> {
    if !(z > 0.0 && z <= MAX_Z) {
        return Err(Error::param(format!("z = {z} must lie in (0, {MAX_Z}]")));
    }
    Ok(())
}

/// Upper bound for the tail `sum_{M > len}` of the series of a depth-`depth`
/// index at `z`, using `|c_M| <= M^(depth-1)`. Infinite while the ratio
/// bound is not yet below one.
pub fn li_tail_bound(depth: usize, z: f64, len: usize) -> f64 {
    let next = (len + 1) as f64;
    let e = (depth - 1) as i32;
    let ratio = ((next + 1.0) / next).powi(e) * z;
    if ratio >= 1.0 {
        return f64::INFINITY;
    }
    next.powi(e) * z.powf(next) / (1.0 - ratio)
}

/// Runs the series, calling `step(len, partial_sum)` after every term;
/// stops when `step` returns false or after `cap` terms.
fn li_series_f64(
    index: &SignedIndex,
    z: f64,
    cap: usize,
    mut step: impl FnMut(usize, f64) -> bool,
) {
    let entries = index.entries();
    let r = entries.len();
    let mut t = vec![0.0f64; r + 1];
    t[0] = 1.0;
    let mut total = 0.0;
    let mut zpow = 1.0;
    for big_m in 1..=cap {
        let mf = big_m as f64;
        zpow *= z;
        for j in (1..=r).rev() {
            let a = entries[j - 1];
            let sign = if a < 0 && big_m % 2 == 1 { -1.0 } else { 1.0 };
            let add = t[j - 1] * sign / mf.powi(a.abs());
            if j == r {
                total += add * zpow;
            }
            t[j] += add;
        }
        if !step(big_m, total) {
            return;
        }
    }
}

/// The first `len` partial sums of the series of `Li(index; z)`.
pub fn li_partial_sums(index: &SignedIndex, z: f64, len: usize) -> Result<Vec<f64>> {
    check_z(z)?;
    let mut out = Vec::with_capacity(len);
    li_series_f64(index, z, len, |_, s| {
        out.push(s);
        true
    });
    Ok(out)
}

/// `Li(index; z)` summed until the tail bound drops below `tol`.
pub fn li_numeric(index: &SignedIndex, z: f64, tol: f64) -> Result<f64> {
    check_z(z)?;
    if tol.is_nan() || tol < 1e-12 {
        return Err(Error::param(format!(
            "tolerance {tol} must be at least 1e-12"
        )));
    }
    let depth = index.depth();
    let mut result = None;
    li_series_f64(index, z, MAX_TERMS, |len, s| {
        if li_tail_bound(depth, z, len) < tol {
            result = Some(s);
            false
        } else {
            true
        }
    });
    result.ok_or(Error::Convergence {
        tol,
        iterations: MAX_TERMS,
    })
}

/// Nodes and weights of the `n`-point Gauss-Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // Legendre recurrence for P_n(x) and its derivative.
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 0 {
                1.0
            } else if n == 1 {
                x
            } else {
                p1
            };
            let pm = if n == 1 { 1.0 } else { p0 };
            dp = nf * (x * pn - pm) / (x * x - 1.0);
            let dx = pn / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn form_value(f: Form, t: f64) -> f64 {
    match f {
        Form::One => 1.0 / (1.0 - t),
        Form::MinusOne => 1.0 / (-1.0 - t),
        Form::Zero => 1.0 / t,
    }
}

fn nested(word: &[Form], x: f64, rule: &(Vec<f64>, Vec<f64>)) -> f64 {
    let Some((&outer, inner)) = word.split_last() else {
        return 1.0;
    };
    let half = x / 2.0;
    rule.0
        .iter()
        .zip(&rule.1)
        .map(|(&u, &w)| {
            let t = half * (u + 1.0);
            w * form_value(outer, t) * nested(inner, t, rule)
        })
        .sum::<f64>()
        * half
}

/// The iterated integral of `index` from `0` to `z`, by nested quadrature.
pub fn iterint_numeric(index: &SignedIndex, z: f64, nodes_per_level: usize) -> Result<f64> {
    check_z(z)?;
    if index.weight() > MAX_QUAD_WEIGHT {
        return Err(Error::param(format!(
            "quadrature supports weight <= {MAX_QUAD_WEIGHT}, got {}",
            index.weight()
        )));
    }
    if nodes_per_level == 0 {
        return Err(Error::param("need at least one quadrature node"));
    }
    let rule = gauss_legendre(nodes_per_level);
    Ok(nested(&index.integral_word(), z, &rule))
}

/// Worst `|L_j(t1,t2) - L_j(t1,u) - L_j(u,t2)|` over `count` random triples
/// and all three `j`.
pub fn chain_rule_residual(seed: u64, count: usize) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    let mut done = 0;
    while done < count {
        let mut v = [
            rng.gen_range(1e-6..1.0 - 1e-6),
            rng.gen_range(1e-6..1.0 - 1e-6),
            rng.gen_range(1e-6..1.0 - 1e-6),
        ];
        v.sort_by(f64::total_cmp);
        let [a, u, b] = v;
        let (Ok(whole), Ok(left), Ok(right)) = (
            RealInterval::new(a, b),
            RealInterval::new(a, u),
            RealInterval::new(u, b),
        ) else {
            continue;
        };
        for j in [1, -1, 0] {
            let r =
                l_form(j, whole).unwrap() - l_form(j, left).unwrap() - l_form(j, right).unwrap();
            worst = worst.max(r.abs());
        }
        done += 1;
    }
    worst
}

/// `pi^2/12 - (ln 2)^2 / 2`.
pub fn dilog_half() -> f64 {
    std::f64::consts::PI.powi(2) / 12.0 - std::f64::consts::LN_2.powi(2) / 2.0
}

/// Compares quadrature with the series for every signed index of weight up
/// to `weight` at `z`, plus the dilogarithm closed form and the chain rule.
pub fn verify_quadrature(weight: u32, z: f64, nodes: usize) -> Result<VerificationReport> {
    if weight == 0 || weight > MAX_QUAD_WEIGHT {
        return Err(Error::param(format!(
            "quadcheck weight must be in 1..={MAX_QUAD_WEIGHT}"
        )));
    }
    let builder = ReportBuilder::new("quadcheck")
        .param("weight", weight)
        .param("z", z)
        .param("nodes", nodes as u64)
        .mode("numeric");
    let mut rows = Vec::new();
    for idx in indices_up_to_weight(weight, true) {
        let series = li_numeric(&idx, z, 1e-10)?;
        let quad = iterint_numeric(&idx, z, nodes)?;
        let diff = (series - quad).abs();
        rows.push(
            ReportRow::case(format!("({idx})"), diff < 1e-6)
                .with_checks(1)
                .with_detail(format!(
                    "series={series:.12} quadrature={quad:.12} diff={diff:.3e}"
                )),
        );
    }
    let two = SignedIndex::new(vec![2]).expect("nonzero");
    let d = (li_numeric(&two, 0.5, 1e-12)? - dilog_half()).abs();
    rows.push(
        ReportRow::case("dilog-half", d < 1e-8)
            .with_checks(1)
            .with_detail(format!("diff={d:.3e}")),
    );
    let c = chain_rule_residual(0, 1000);
    rows.push(
        ReportRow::case("chain-rule", c < 1e-12)
            .with_checks(3000)
            .with_detail(format!("max residual={c:.3e}")),
    );
    Ok(builder.finish(rows))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn i(v: &[i32]) -> SignedIndex {
        SignedIndex::new(v.to_vec()).unwrap()
    }

    #[test]
    fn l_form_examples() {
        let iv = RealInterval::new(0.1, 0.4).unwrap();
        assert!((l_form(0, iv).unwrap() - 4f64.ln()).abs() < 1e-15);
        let tiny = RealInterval::new(0.3, 0.3 + 1e-10).unwrap();
        for j in [1, -1, 0] {
            assert!(l_form(j, tiny).unwrap().abs() < 1e-9);
        }
        let from_zero = RealInterval::new(1e-12, 0.5).unwrap();
        assert!((l_form(-1, from_zero).unwrap() + 1.5f64.ln()).abs() < 1e-11);
        assert!(l_form(2, iv).is_err());
    }

    #[test]
    fn interval_validation() {
        assert!(RealInterval::new(0.0, 0.5).is_err());
        assert!(RealInterval::new(0.5, 0.5).is_err());
        assert!(RealInterval::new(0.6, 0.5).is_err());
        assert!(RealInterval::new(0.5, 1.0).is_err());
    }

    #[test]
    fn series_examples() {
        assert!((li_numeric(&i(&[2]), 0.5, 1e-12).unwrap() - 0.5822405264650125).abs() < 1e-10);
        assert!((li_numeric(&i(&[-1]), 0.5, 1e-12).unwrap() + 1.5f64.ln()).abs() < 1e-10);
        assert!((li_numeric(&i(&[1]), 0.5, 1e-12).unwrap() - std::f64::consts::LN_2).abs() < 1e-10);
        assert!((li_numeric(&i(&[2]), 0.5, 1e-12).unwrap() - dilog_half()).abs() < 1e-10);
    }

    #[test]
    fn series_domain() {
        assert!(li_numeric(&i(&[1]), 0.8, 1e-10).is_err());
        assert!(li_numeric(&i(&[1]), 0.0, 1e-10).is_err());
        assert!(li_numeric(&i(&[1]), 0.5, 1e-13).is_err());
    }

    #[test]
    fn partial_sums_settle_within_tail_bound() {
        let idx = i(&[1, -2]);
        let sums = li_partial_sums(&idx, 0.6, 300).unwrap();
        for len in 20..299 {
            let bound = li_tail_bound(2, 0.6, len);
            assert!((sums[len] - sums[len - 1]).abs() <= bound, "{len}");
        }
    }

    #[test]
    fn quadrature_examples() {
        assert!(
            (iterint_numeric(&i(&[1]), 0.5, 64).unwrap() - std::f64::consts::LN_2).abs() < 1e-8
        );
        assert!((iterint_numeric(&i(&[-1]), 0.5, 64).unwrap() + 1.5f64.ln()).abs() < 1e-8);
        let s = li_numeric(&i(&[1, 1]), 0.5, 1e-10).unwrap();
        assert!((iterint_numeric(&i(&[1, 1]), 0.5, 64).unwrap() - s).abs() < 1e-6);
        assert!(iterint_numeric(&i(&[2, 2]), 0.5, 16).is_err());
    }

    #[test]
    fn legendre_rule_integrates_polynomials() {
        let (x, w) = gauss_legendre(5);
        let total: f64 = w.iter().sum();
        assert!((total - 2.0).abs() < 1e-14);
        let x8: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(8)).sum();
        assert!((x8 - 2.0 / 9.0).abs() < 1e-14);
        let (x1, w1) = gauss_legendre(1);
        assert_eq!((x1[0], w1[0]), (0.0, 2.0));
    }

    #[test]
    fn chain_rule() {
        assert!(chain_rule_residual(1, 1000) < 1e-12);
    }

    #[test]
    fn full_quadcheck_passes() {
        assert!(verify_quadrature(2, 0.5, 64).unwrap().passed());
    }
}
