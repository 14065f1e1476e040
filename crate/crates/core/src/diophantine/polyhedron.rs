//! Fourier–Motzkin elimination for systems `A z <= b` with a fixed integer
//! matrix `A` and varying right-hand sides.
//!
//! Every derived inequality is stored together with the nonnegative
//! multipliers that produced it from the original rows, so one elimination
//! serves every right-hand side. Level `k` holds the projection of the
//! system onto the first `k` variables.

use std::collections::HashSet;
use std::ops::ControlFlow;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct Derived {
    coeffs: Vec<i64>,
    // rhs of this row is `mult · b`
    mult: Vec<i64>,
}

fn normalize(row: &mut Derived) {
    let g = row
        .coeffs
        .iter()
        .chain(&row.mult)
        .fold(0i64, |g, &x| g.gcd(&x));
    if g > 1 {
        row.coeffs.iter_mut().for_each(|x| *x /= g);
        row.mult.iter_mut().for_each(|x| *x /= g);
    }
}

#[derive(Debug, Clone)]
pub struct EliminationPlan {
    vars: usize,
    rows: usize,
    levels: Vec<Vec<Derived>>,
}

fn floor_div(a: i64, b: i64) -> i64 {
    Integer::div_floor(&a, &b)
}

fn ceil_div(a: i64, b: i64) -> i64 {
    -Integer::div_floor(&-a, &b)
}

impl EliminationPlan {
    /// `a` lists the rows of the constraint matrix, each of length `vars`.
    pub fn new(a: &[Vec<i64>], vars: usize) -> Self {
        let rows = a.len();
        let mut current: Vec<Derived> = a
            .iter()
            .enumerate()
            .map(|(i, r)| {
                assert_eq!(r.len(), vars, "row length");
                let mut mult = vec![0; rows];
                mult[i] = 1;
                Derived {
                    coeffs: r.clone(),
                    mult,
                }
            })
            .collect();
        let mut levels = vec![Vec::new(); vars + 1];
        for k in (0..vars).rev() {
            let (mut pos, mut neg, mut keep) = (Vec::new(), Vec::new(), Vec::new());
            for r in &current {
                match r.coeffs[k].signum() {
                    1 => pos.push(r),
                    -1 => neg.push(r),
                    _ => keep.push(r.clone()),
                }
            }
            let mut seen: HashSet<Derived> = keep.iter().cloned().collect();
            for p in &pos {
                for q in &neg {
                    let (fp, fq) = (-q.coeffs[k], p.coeffs[k]);
                    let mut row = Derived {
                        coeffs: p.coeffs.iter().zip(&q.coeffs).map(|(x, y)| fp * x + fq * y).collect(),
                        mult: p.mult.iter().zip(&q.mult).map(|(x, y)| fp * x + fq * y).collect(),
                    };
                    debug_assert_eq!(row.coeffs[k], 0);
                    normalize(&mut row);
                    if seen.insert(row.clone()) {
                        keep.push(row);
                    }
                }
            }
            levels[k + 1] = current;
            current = keep
                .into_iter()
                .map(|mut r| {
                    r.coeffs.truncate(k);
                    r
                })
                .collect();
        }
        levels[0] = current;
        EliminationPlan { vars, rows, levels }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    fn level_rhs(&self, b: &[i64]) -> Vec<Vec<i64>> {
        assert_eq!(b.len(), self.rows, "rhs length");
        self.levels
            .iter()
            .map(|lvl| {
                lvl.iter()
                    .map(|r| r.mult.iter().zip(b).map(|(m, x)| m * x).sum())
                    .collect()
            })
            .collect()
    }

    /// Visits every integer `z` with `A z <= b`, in lexicographic order.
    /// Fails if some variable is unbounded on the region.
    pub fn for_each_integer_point<F>(&self, b: &[i64], mut visit: F) -> Result<ControlFlow<()>>
    where
        F: FnMut(&[i64]) -> ControlFlow<()>,
    {
        let rhs = self.level_rhs(b);
        if rhs[0].iter().any(|&r| r < 0) {
            return Ok(ControlFlow::Continue(()));
        }
        let mut z = vec![0i64; self.vars];
        self.descend(0, &rhs, &mut z, &mut visit)
    }

    fn descend<F>(
        &self,
        k: usize,
        rhs: &[Vec<i64>],
        z: &mut Vec<i64>,
        visit: &mut F,
    ) -> Result<ControlFlow<()>>
    where
        F: FnMut(&[i64]) -> ControlFlow<()>,
    {
        if k == self.vars {
            return Ok(visit(z));
        }
        let (mut lo, mut hi): (Option<i64>, Option<i64>) = (None, None);
        for (row, &r) in self.levels[k + 1].iter().zip(&rhs[k + 1]) {
            let a = row.coeffs[k];
            if a == 0 {
                continue;
            }
            let slack = r - row.coeffs[..k].iter().zip(&z[..k]).map(|(c, x)| c * x).sum::<i64>();
            if a > 0 {
                let u = floor_div(slack, a);
                hi = Some(hi.map_or(u, |h| h.min(u)));
            } else {
                let l = ceil_div(slack, a);
                lo = Some(lo.map_or(l, |h| h.max(l)));
            }
        }
        let (Some(lo), Some(hi)) = (lo, hi) else {
            return Err(Error::UnboundedRegion(k));
        };
        for value in lo..=hi {
            z[k] = value;
            if let ControlFlow::Break(()) = self.descend(k + 1, rhs, z, visit)? {
                return Ok(ControlFlow::Break(()));
            }
        }
        Ok(ControlFlow::Continue(()))
    }

    pub fn integer_points(&self, b: &[i64]) -> Result<Vec<Vec<i64>>> {
        let mut out = Vec::new();
        let _ = self.for_each_integer_point(b, |z| {
            out.push(z.to_vec());
            ControlFlow::Continue(())
        })?;
        Ok(out)
    }

    /// Some rational point of `{z : A z <= b}`, or `None` when it is empty.
    /// Integer coordinates are preferred where the fiber allows them.
    pub fn rational_point(&self, b: &[i64]) -> Option<Vec<BigRational>> {
        let rhs = self.level_rhs(b);
        if rhs[0].iter().any(|&r| r < 0) {
            return None;
        }
        let mut z: Vec<BigRational> = Vec::with_capacity(self.vars);
        for k in 0..self.vars {
            let (mut lo, mut hi): (Option<BigRational>, Option<BigRational>) = (None, None);
            for (row, &r) in self.levels[k + 1].iter().zip(&rhs[k + 1]) {
                let a = row.coeffs[k];
                if a == 0 {
                    continue;
                }
                let mut slack = BigRational::from_integer(r.into());
                for (c, x) in row.coeffs[..k].iter().zip(&z) {
                    slack -= x * BigRational::from_integer((*c).into());
                }
                let bound = slack / BigRational::from_integer(a.into());
                if a > 0 {
                    hi = Some(match hi {
                        Some(h) if h < bound => h,
                        _ => bound,
                    });
                } else {
                    lo = Some(match lo {
                        Some(l) if l > bound => l,
                        _ => bound,
                    });
                }
            }
            let value = match (lo, hi) {
                (Some(l), Some(h)) => {
                    debug_assert!(l <= h, "projection is exact");
                    let c = l.ceil();
                    if c <= h {
                        c
                    } else {
                        l
                    }
                }
                (Some(l), None) => l.ceil(),
                (None, Some(h)) => h.floor(),
                (None, None) => BigRational::zero(),
            };
            z.push(value);
        }
        Some(z)
    }
}

/// Scales a nonzero rational vector to a primitive integer vector with the
/// same direction.
pub fn primitive_integer_direction(v: &[BigRational]) -> Vec<num_bigint::BigInt> {
    let lcm = v
        .iter()
        .fold(num_bigint::BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<num_bigint::BigInt> = v.iter().map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints
        .iter()
        .fold(num_bigint::BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / g.abs()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_box() {
        // -2 <= z0 <= 1, 0 <= z1 <= 2
        let a = vec![vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1]];
        let plan = EliminationPlan::new(&a, 2);
        let pts = plan.integer_points(&[1, 2, 2, 0]).unwrap();
        assert_eq!(pts.len(), 12);
        assert_eq!(pts[0], vec![-2, 0]);
    }

    #[test]
    fn triangle_and_empty() {
        // z0 >= 0, z1 >= 0, z0 + z1 <= 3
        let a = vec![vec![-1, 0], vec![0, -1], vec![1, 1]];
        let plan = EliminationPlan::new(&a, 2);
        assert_eq!(plan.integer_points(&[0, 0, 3]).unwrap().len(), 10);
        assert!(plan.integer_points(&[0, 0, -1]).unwrap().is_empty());
        assert!(plan.rational_point(&[0, 0, -1]).is_none());
    }

    #[test]
    fn rational_but_not_integral() {
        // 1 <= 3 z0 <= 2
        let a = vec![vec![3], vec![-3]];
        let plan = EliminationPlan::new(&a, 1);
        assert!(plan.integer_points(&[2, -1]).unwrap().is_empty());
        let z = plan.rational_point(&[2, -1]).unwrap();
        assert_eq!(z[0], BigRational::new(1.into(), 3.into()));
    }

    #[test]
    fn unbounded_is_reported() {
        let plan = EliminationPlan::new(&[vec![1, 1]], 2);
        assert!(matches!(plan.integer_points(&[0]), Err(Error::UnboundedRegion(_))));
    }

    #[test]
    fn brute_force_agreement() {
        // a skewed polygon: brute force over a generous square
        let a = vec![vec![2, -3], vec![-1, 4], vec![-3, -1], vec![1, 1]];
        let b = [7, 9, 5, 6];
        let plan = EliminationPlan::new(&a, 2);
        let got = plan.integer_points(&b).unwrap();
        let mut want = Vec::new();
        for x in -30..=30 {
            for y in -30..=30 {
                if a.iter().zip(&b).all(|(r, &bi)| r[0] * x + r[1] * y <= bi) {
                    want.push(vec![x, y]);
                }
            }
        }
        assert_eq!(got, want);
    }

    #[test]
    fn direction_scaling() {
        let v = vec![BigRational::new(1.into(), 2.into()), BigRational::new(3.into(), 4.into())];
        let d = primitive_integer_direction(&v);
        assert_eq!(d, vec![2.into(), 3.into()]);
    }
}
