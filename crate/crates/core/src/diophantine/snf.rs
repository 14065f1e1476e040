//! Smith normal form over the integers with unimodular transforms.

use super::IntMatrix;

/// `U · M · V = D` with `D` diagonal, `d_1 | d_2 | ...`, all `d_i >= 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Smith {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl Smith {
    /// Nonzero diagonal entries.
    pub fn invariant_factors(&self) -> Vec<i64> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d[(i, i)])
            .take_while(|&x| x != 0)
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

struct Work {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            self.a.swap_rows(i, j);
            self.u.swap_rows(i, j);
            self.u_inv.swap_cols(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i != j {
            self.a.swap_cols(i, j);
            self.v.swap_cols(i, j);
        }
    }

    // row_i += f * row_j
    fn add_row(&mut self, i: usize, j: usize, f: i64) {
        self.a.add_row_multiple(i, j, f);
        self.u.add_row_multiple(i, j, f);
        // inverse of the elementary operation acts on columns: col_j -= f * col_i
        self.u_inv.add_col_multiple(j, i, -f);
    }

    // col_i += f * col_j
    fn add_col(&mut self, i: usize, j: usize, f: i64) {
        self.a.add_col_multiple(i, j, f);
        self.v.add_col_multiple(i, j, f);
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> Smith {
    let (rows, cols) = (m.rows(), m.cols());
    let mut w = Work {
        a: m.clone(),
        u: IntMatrix::identity(rows),
        u_inv: IntMatrix::identity(rows),
        v: IntMatrix::identity(cols),
    };
    for t in 0..rows.min(cols) {
        // smallest nonzero entry of the trailing block becomes the pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let x = w.a[(i, j)];
                if x != 0 && best.is_none_or(|(bi, bj)| x.abs() < w.a[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                let x = w.a[(i, t)];
                if x != 0 {
                    let q = x.div_euclid(w.a[(t, t)]);
                    w.add_row(i, t, -q);
                    if w.a[(i, t)] != 0 {
                        dirty = true;
                    }
                }
            }
            for j in t + 1..cols {
                let x = w.a[(t, j)];
                if x != 0 {
                    let q = x.div_euclid(w.a[(t, t)]);
                    w.add_col(j, t, -q);
                    if w.a[(t, j)] != 0 {
                        dirty = true;
                    }
                }
            }
            if dirty {
                // move the smallest remaining entry of row/column t to the pivot
                let mut best = (t, t);
                for i in t + 1..rows {
                    if w.a[(i, t)] != 0 && w.a[(i, t)].abs() < w.a[best].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..cols {
                    if w.a[(t, j)] != 0 && w.a[(t, j)].abs() < w.a[best].abs() {
                        best = (t, j);
                    }
                }
                w.swap_rows(t, best.0);
                w.swap_cols(t, best.1);
                continue;
            }
            // pivot must divide the whole trailing block
            let p = w.a[(t, t)];
            let offender = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| w.a[(i, j)] % p != 0);
            match offender {
                Some((i, _)) => w.add_row(t, i, 1),
                None => break,
            }
        }
        if w.a[(t, t)] < 0 {
            w.negate_row(t);
        }
    }
    Smith {
        u: w.u,
        u_inv: w.u_inv,
        d: w.a,
        v: w.v,
    }
}
