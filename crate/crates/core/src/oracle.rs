//! Naive reference implementations. They share no code with the optimized
//! enumerators beyond the point and complex types.

use crate::complexes::LabeledComplex;
use crate::error::{Error, Result};
use crate::geometry::{join, Point};
use crate::periodic::PeriodicSet;

pub const FINITE_GUARD: usize = 16;

/// Tests every subset of `points` against every point.
pub fn oracle_finite_nb(points: &[Point]) -> Result<LabeledComplex> {
    if points.len() > FINITE_GUARD {
        return Err(Error::OracleGuard {
            size: points.len(),
            limit: FINITE_GUARD,
        });
    }
    let mut faces: Vec<Vec<Point>> = Vec::new();
    for mask in 0u32..(1 << points.len()) {
        let subset: Vec<Point> = (0..points.len())
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| points[i].clone())
            .collect();
        if subset.is_empty() {
            faces.push(subset);
            continue;
        }
        let top = join(&subset)?;
        if !points.iter().any(|a| a.strictly_below(&top)) {
            faces.push(subset);
        }
    }
    LabeledComplex::build(&faces)
}

fn det(m: &[Vec<i128>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

/// Membership in `c + L` by Cramer's rule on one invertible square block of
/// the basis, followed by a full check of the remaining rows.
struct Membership {
    basis: Vec<Vec<i64>>,
    rows: Vec<usize>,
    adjugate: Vec<Vec<i128>>,
    det: i128,
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

impl Membership {
    fn new(n: usize, basis: Vec<Vec<i64>>) -> Self {
        let k = basis.len();
        for rows in subsets(n, k) {
            let block: Vec<Vec<i128>> = rows
                .iter()
                .map(|&r| basis.iter().map(|col| col[r] as i128).collect())
                .collect();
            let d = det(&block);
            if d == 0 {
                continue;
            }
            let mut adjugate = vec![vec![0i128; k]; k];
            for (i, row) in adjugate.iter_mut().enumerate() {
                for (j, cell) in row.iter_mut().enumerate() {
                    // adj[i][j] = (-1)^(i+j) det(block without row j, column i)
                    let minor: Vec<Vec<i128>> = block
                        .iter()
                        .enumerate()
                        .filter(|&(r, _)| r != j)
                        .map(|(_, row)| row.iter().enumerate().filter(|&(c, _)| c != i).map(|(_, &x)| x).collect())
                        .collect();
                    let s = if (i + j) % 2 == 0 { 1 } else { -1 };
                    *cell = s * det(&minor);
                }
            }
            return Membership {
                basis,
                rows,
                adjugate,
                det: d,
            };
        }
        panic!("basis with no invertible square block");
    }

    fn contains(&self, y: &[i64]) -> bool {
        let rhs: Vec<i128> = self.rows.iter().map(|&r| y[r] as i128).collect();
        let mut z = Vec::with_capacity(self.basis.len());
        for row in &self.adjugate {
            let num: i128 = row.iter().zip(&rhs).map(|(a, b)| a * b).sum();
            if num % self.det != 0 {
                return false;
            }
            z.push(num / self.det);
        }
        (0..y.len()).all(|i| {
            let v: i128 = self.basis.iter().zip(&z).map(|(col, zj)| col[i] as i128 * zj).sum();
            v == y[i] as i128
        })
    }
}

fn cube(n: usize, r: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p| {
                (-r..=r).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}

/// Neighbors of 0 with `|b|∞ <= r_candidate`, found by scanning the cube of
/// radius `r_witness` for strict dominators. Fails when the strict region of
/// some candidate leaves the witness cube.
pub fn oracle_lattice_neighbors(a: &PeriodicSet, r_candidate: i64, r_witness: i64) -> Result<Vec<Vec<i64>>> {
    if r_witness <= r_candidate {
        return Err(Error::Malformed(format!(
            "witness radius {} must exceed candidate radius {}",
            r_witness, r_candidate
        )));
    }
    let n = a.dim();
    let member = Membership::new(n, a.lattice().columns());
    let in_a = |x: &[i64]| {
        a.reps().iter().any(|c| {
            let y: Vec<i64> = x.iter().zip(c).map(|(p, q)| p - q).collect();
            member.contains(&y)
        })
    };
    let zero = vec![0i64; n];
    if !in_a(&zero) {
        return Err(Error::NotAMember(Point::zero(n)));
    }
    let box_points: Vec<Vec<i64>> = cube(n, r_witness).into_iter().filter(|x| in_a(x)).collect();
    let mut out = Vec::new();
    for b in box_points.iter().filter(|b| b.iter().all(|x| x.abs() <= r_candidate)) {
        if b == &zero {
            continue;
        }
        let v: Vec<i64> = b.iter().map(|&x| x.max(0)).collect();
        let strict = a.points_below(&v, true)?;
        if let Some(p) = strict.iter().find(|p| p.iter().any(|x| x.abs() > r_witness)) {
            return Err(Error::WitnessRadiusInsufficient {
                radius: r_witness,
                candidate: Point::from_ints(b),
                point: Point::from_ints(p),
            });
        }
        let dominated = box_points.iter().any(|p| p.iter().zip(&v).all(|(x, y)| x < y));
        if !dominated {
            out.push(b.clone());
        }
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diophantine::Lattice;

    fn p(c: &[i64]) -> Point {
        Point::from_ints(c)
    }

    #[test]
    fn finite_examples() {
        let c = oracle_finite_nb(&[p(&[0, 0]), p(&[1, 0]), p(&[2, 0])]).unwrap();
        assert_eq!(c.dimension(), 2);
        assert_eq!(c.len(), 8);

        let c = oracle_finite_nb(&[p(&[0, 0]), p(&[1, 1])]).unwrap();
        assert_eq!(c.len(), 2);
        assert!(c.contains_face(&[p(&[0, 0])]));

        let many: Vec<Point> = (0..17).map(|i| p(&[i, -i])).collect();
        assert_eq!(
            oracle_finite_nb(&many).unwrap_err(),
            Error::OracleGuard { size: 17, limit: 16 }
        );
    }

    #[test]
    fn lattice_examples() {
        let l = Lattice::new(3, &[vec![1, -1, 0], vec![0, 1, -1]]).unwrap();
        let a = PeriodicSet::new(l, vec![vec![0, 0, 0]]).unwrap();
        let nb = oracle_lattice_neighbors(&a, 6, 12).unwrap();
        for q in [[1, -1, 0], [2, -1, -1], [2, -2, 0], [-1, 0, 1], [0, 1, -1]] {
            assert!(nb.contains(&q.to_vec()), "{:?}", q);
        }
        assert!(!nb.contains(&vec![3, -2, -1]));
        assert!(oracle_lattice_neighbors(&a, 6, 6).is_err());

        let l = Lattice::new(3, &[vec![2, -1, 0], vec![3, 0, -1]]).unwrap();
        let b = PeriodicSet::new(l, vec![vec![0, 0, 0]]).unwrap();
        assert!(matches!(
            oracle_lattice_neighbors(&b, 6, 7),
            Err(Error::WitnessRadiusInsufficient { .. })
        ));
    }

    #[test]
    fn membership_by_cramer() {
        let m = Membership::new(2, vec![vec![2, 0]]);
        assert!(m.contains(&[4, 0]));
        assert!(!m.contains(&[3, 0]));
        assert!(!m.contains(&[2, 1]));
    }
}
