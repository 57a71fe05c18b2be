//! Coefficients `P_i^sigma` rewriting the two chains of `L_1` forms along a
//! shuffle.
//!
//! Variables `t_1 .. t_s` and `t_{s+1} .. t_{s+t}` each form a chain ending at
//! `z`. A shuffle `sigma` merges both chains into one; every original step
//! `L_1(t_j, next)` is then a sum of consecutive merged steps, and `P_i` is
//! the set of original labels `j` whose step covers merged step `i`.

use num_rational::Rational64;

use crate::error::Result;
use crate::indices::Shuffle;

/// `incidence[i - 1]` lists (ascending, 1-based) the labels `j` with
/// `lambda_j` in `P_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PSigmaTable {
    pub shuffle: Shuffle,
    pub incidence: Vec<Vec<usize>>,
}

impl PSigmaTable {
    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.incidence[i - 1].contains(&j)
    }

    /// 0/1 matrix indexed `[j - 1][i - 1]`.
    pub fn matrix(&self) -> Vec<Vec<u8>> {
        let n = self.incidence.len();
        let mut out = vec![vec![0; n]; n];
        for (i, labels) in self.incidence.iter().enumerate() {
            for &j in labels {
                out[j - 1][i] = 1;
            }
        }
        out
    }
}

/// Merged steps `[start, end)` covered by original step `j` (1-based); the
/// merged point `N + 1` stands for `z`.
fn original_span(sigma: &Shuffle, j: usize) -> (usize, usize) {
    let n = sigma.s() + sigma.t();
    let start = sigma.apply(j);
    let end = if j == sigma.s() || j == n {
        n + 1
    } else {
        sigma.apply(j + 1)
    };
    (start, end)
}

pub fn compute_p_sigma(sigma: &Shuffle) -> PSigmaTable {
    let n = sigma.s() + sigma.t();
    let mut incidence = vec![Vec::new(); n];
    for j in 1..=n {
        let (start, end) = original_span(sigma, j);
        for cell in &mut incidence[start - 1..end - 1] {
            cell.push(j);
        }
    }
    PSigmaTable {
        shuffle: sigma.clone(),
        incidence,
    }
}

/// Result of solving for the coefficients directly from the potential
/// description `L_1(a, b) = phi(a) - phi(b)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainRuleSolution {
    pub rank: usize,
    pub unknowns: usize,
    pub consistent: bool,
    /// `solution[j - 1][i - 1]` is the coefficient of merged step `i` in
    /// original step `j`; present when the system is consistent.
    pub solution: Option<Vec<Vec<Rational64>>>,
}

impl ChainRuleSolution {
    pub fn is_unique(&self) -> bool {
        self.consistent && self.rank == self.unknowns
    }

    /// True when the solution is unique and equals `table`.
    pub fn agrees_with(&self, table: &PSigmaTable) -> bool {
        let Some(sol) = &self.solution else {
            return false;
        };
        self.is_unique()
            && table.matrix().iter().zip(sol).all(|(want, got)| {
                want.iter()
                    .zip(got)
                    .all(|(&w, g)| *g == Rational64::from_integer(w as i64))
            })
    }
}

fn step_vector(dim: usize, from: usize, to: usize) -> Vec<Rational64> {
    let mut v = vec![Rational64::from_integer(0); dim];
    v[from - 1] += 1;
    v[to - 1] -= 1;
    v
}

/// Solves `M X = B`, where the columns of `M` are merged steps and the
/// columns of `B` the original steps, all written in the basis of point
/// potentials `phi(x_1), ..., phi(x_N), phi(z)`.
pub fn chain_rule_solution(sigma: &Shuffle) -> Result<ChainRuleSolution> {
    let n = sigma.s() + sigma.t();
    let dim = n + 1;
    // Augmented rows: n coefficient columns followed by n right-hand sides.
    let mut rows: Vec<Vec<Rational64>> = vec![Vec::with_capacity(2 * n); dim];
    for i in 1..=n {
        for (r, x) in rows.iter_mut().zip(step_vector(dim, i, i + 1)) {
            r.push(x);
        }
    }
    for j in 1..=n {
        let (start, end) = original_span(sigma, j);
        for (r, x) in rows.iter_mut().zip(step_vector(dim, start, end)) {
            r.push(x);
        }
    }

    let zero = Rational64::from_integer(0);
    let mut rank = 0;
    let mut pivots = Vec::new();
    for col in 0..n {
        let Some(pr) = (rank..dim).find(|&r| rows[r][col] != zero) else {
            continue;
        };
        rows.swap(rank, pr);
        let lead = rows[rank][col];
        for x in rows[rank].iter_mut() {
            *x /= lead;
        }
        for r in 0..dim {
            if r != rank && rows[r][col] != zero {
                let f = rows[r][col];
                let pivot_row = rows[rank].clone();
                for (x, y) in rows[r].iter_mut().zip(pivot_row) {
                    *x -= f * y;
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    let consistent = rows[rank..]
        .iter()
        .all(|r| r[n..].iter().all(|x| *x == zero));
    let solution = consistent.then(|| {
        (0..n)
            .map(|j| {
                let mut coeffs = vec![zero; n];
                for (r, &col) in pivots.iter().enumerate() {
                    coeffs[col] = rows[r][n + j];
                }
                coeffs
            })
            .collect()
    });
    Ok(ChainRuleSolution {
        rank,
        unknowns: n,
        consistent,
        solution,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::indices::enumerate_shuffles;

    #[test]
    fn smallest_tables() {
        let id = Shuffle::new(1, 1, vec![1, 2]).unwrap();
        assert_eq!(compute_p_sigma(&id).incidence, vec![vec![1], vec![1, 2]]);
        let swap = Shuffle::new(1, 1, vec![2, 1]).unwrap();
        assert_eq!(compute_p_sigma(&swap).incidence, vec![vec![2], vec![1, 2]]);
    }

    #[test]
    fn last_step_carries_both_chain_ends() {
        for (s, t) in [(1, 2), (2, 2), (3, 1)] {
            for sigma in enumerate_shuffles(s, t).unwrap() {
                let table = compute_p_sigma(&sigma);
                assert_eq!(table.incidence[s + t - 1], vec![s, s + t]);
            }
        }
    }

    #[test]
    fn solver_reproduces_tables() {
        for n in 2..=6 {
            for s in 1..n {
                for sigma in enumerate_shuffles(s, n - s).unwrap() {
                    let sol = chain_rule_solution(&sigma).unwrap();
                    assert_eq!(sol.rank, n);
                    assert!(
                        sol.agrees_with(&compute_p_sigma(&sigma)),
                        "{:?}",
                        sigma.image()
                    );
                }
            }
        }
    }

    #[test]
    fn wrong_table_is_rejected() {
        let sigma = Shuffle::new(2, 1, vec![1, 3, 2]).unwrap();
        let sol = chain_rule_solution(&sigma).unwrap();
        let mut table = compute_p_sigma(&sigma);
        table.incidence[0].push(3);
        assert!(!sol.agrees_with(&table));
    }
}
