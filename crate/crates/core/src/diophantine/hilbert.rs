//! Minimal nonnegative solutions of homogeneous linear Diophantine systems
//! `A y = 0`, by the Contejean–Devie breadth-first completion.
//!
//! A vector `p` with defect `A p != 0` is extended by `e_j` only when the
//! defect moves toward zero (`<A p, A e_j> < 0`), and never once it dominates
//! a solution already found. Per-variable upper bounds restrict the search to
//! solutions below them; the search stays complete for those.

use std::collections::HashSet;

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn dominates(p: &[u64], m: &[u64]) -> bool {
    p.iter().zip(m).all(|(x, y)| x >= y)
}

/// `matrix` has one row per equation and one column per variable.
/// Returns the nonzero minimal solutions satisfying `y_j <= bounds[j]`.
pub fn minimal_solutions(matrix: &[Vec<i64>], vars: usize, bounds: &[Option<u64>]) -> Vec<Vec<u64>> {
    assert_eq!(bounds.len(), vars);
    let columns: Vec<Vec<i64>> = (0..vars)
        .map(|j| matrix.iter().map(|row| row[j]).collect())
        .collect();
    let defect = |p: &[u64]| -> Vec<i64> {
        let mut d = vec![0i64; matrix.len()];
        for (j, &x) in p.iter().enumerate() {
            if x != 0 {
                for (di, cj) in d.iter_mut().zip(&columns[j]) {
                    *di += cj * x as i64;
                }
            }
        }
        d
    };

    let mut solutions: Vec<Vec<u64>> = Vec::new();
    let mut frontier: Vec<Vec<u64>> = (0..vars)
        .filter(|&j| bounds[j] != Some(0))
        .map(|j| {
            let mut e = vec![0u64; vars];
            e[j] = 1;
            e
        })
        .collect();

    while !frontier.is_empty() {
        let mut pending = Vec::new();
        for p in frontier {
            let d = defect(&p);
            if d.iter().all(|&x| x == 0) {
                solutions.push(p);
            } else {
                pending.push((p, d));
            }
        }
        let mut next: HashSet<Vec<u64>> = HashSet::new();
        for (p, d) in pending {
            for j in 0..vars {
                if bounds[j].is_some_and(|b| p[j] >= b) || dot(&d, &columns[j]) >= 0 {
                    continue;
                }
                let mut q = p.clone();
                q[j] += 1;
                if !solutions.iter().any(|m| dominates(&q, m)) {
                    next.insert(q);
                }
            }
        }
        let mut next: Vec<Vec<u64>> = next.into_iter().collect();
        next.sort();
        frontier = next;
    }
    solutions.sort();
    solutions.dedup();
    solutions
}
