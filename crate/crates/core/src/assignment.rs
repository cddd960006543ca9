//! Exact minimum-cost assignment on square cost matrices (Hungarian method,
//! shortest augmenting path with potentials, O(n^3)).

use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// Returns `assign` with `assign[row] = col` minimizing the summed cost, and
/// that total.
pub fn min_cost_assignment(cost: &Matrix) -> Result<(Vec<usize>, f64)> {
    if !cost.is_square() {
        return Err(Error::InvalidInput(format!(
            "assignment needs a square cost matrix, got {}x{}",
            cost.rows(),
            cost.cols()
        )));
    }
    let n = cost.rows();
    if n == 0 {
        return Ok((Vec::new(), 0.0));
    }

    // 1-based arrays; index 0 is the virtual root of each augmenting tree.
    let mut u = vec![0.0; n + 1];
    let mut v = vec![0.0; n + 1];
    let mut col_owner = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];

    for row in 1..=n {
        col_owner[0] = row;
        let mut j0 = 0;
        let mut min_v = vec![f64::INFINITY; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = col_owner[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = 0;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = cost[(i0 - 1, j - 1)] - u[i0] - v[j];
                if cur < min_v[j] {
                    min_v[j] = cur;
                    way[j] = j0;
                }
                if min_v[j] < delta {
                    delta = min_v[j];
                    j1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[col_owner[j]] += delta;
                    v[j] -= delta;
                } else {
                    min_v[j] -= delta;
                }
            }
            j0 = j1;
            if col_owner[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            col_owner[j0] = col_owner[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }

    let mut assign = vec![0; n];
    for j in 1..=n {
        assign[col_owner[j] - 1] = j - 1;
    }
    let total = assign.iter().enumerate().map(|(i, &j)| cost[(i, j)]).sum();
    Ok((assign, total))
}

/// Maximum-weight variant.
pub fn max_weight_assignment(weight: &Matrix) -> Result<(Vec<usize>, f64)> {
    let (assign, _) = min_cost_assignment(&weight.scaled(-1.0))?;
    let total = assign.iter().enumerate().map(|(i, &j)| weight[(i, j)]).sum();
    Ok((assign, total))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seeded_rng;
    use proptest::prelude::*;
    use rand::Rng;

    fn brute_force(cost: &Matrix) -> f64 {
        fn go(cost: &Matrix, row: usize, used: &mut Vec<bool>, acc: f64, best: &mut f64) {
            let n = cost.rows();
            if row == n {
                *best = best.min(acc);
                return;
            }
            for j in 0..n {
                if !used[j] {
                    used[j] = true;
                    go(cost, row + 1, used, acc + cost[(row, j)], best);
                    used[j] = false;
                }
            }
        }
        let mut best = f64::INFINITY;
        go(cost, 0, &mut vec![false; cost.rows()], 0.0, &mut best);
        best
    }

    #[test]
    fn textbook_example() {
        let cost = Matrix::from_rows(&[[4.0, 1.0, 3.0], [2.0, 0.0, 5.0], [3.0, 2.0, 2.0]]).unwrap();
        let (assign, total) = min_cost_assignment(&cost).unwrap();
        assert_eq!(assign, vec![1, 0, 2]);
        assert_eq!(total, 5.0);
    }

    #[test]
    fn empty_and_non_square() {
        assert_eq!(min_cost_assignment(&Matrix::zeros(0, 0)).unwrap().0, Vec::<usize>::new());
        assert!(min_cost_assignment(&Matrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn maximize_diagonal() {
        let w = Matrix::from_rows(&[[0.0, 9.0], [9.0, 1.0]]).unwrap();
        let (assign, total) = max_weight_assignment(&w).unwrap();
        assert_eq!(assign, vec![1, 0]);
        assert_eq!(total, 18.0);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn matches_brute_force(n in 1usize..=7, seed in any::<u64>()) {
            let mut rng = seeded_rng(seed);
            let cost = Matrix::from_fn(n, n, |_, _| rng.random_range(-5.0..5.0));
            let (assign, total) = min_cost_assignment(&cost).unwrap();
            let mut seen = assign.clone();
            seen.sort_unstable();
            prop_assert_eq!(seen, (0..n).collect::<Vec<_>>());
            prop_assert!((total - brute_force(&cost)).abs() < 1e-9);
        }
    }
}
