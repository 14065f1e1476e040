use std::ops::ControlFlow;
use std::sync::OnceLock;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::hilbert::minimal_solutions;
use super::polyhedron::{primitive_integer_direction, EliminationPlan};
use super::snf::{smith_normal_form, Smith};
use super::IntMatrix;
use crate::error::{Error, Result};
use crate::geometry::{Orthant, Point};

pub type IntVec = Vec<i64>;

/// A full-column-rank sublattice of `Z^n`, given by basis columns.
#[derive(Debug)]
pub struct Lattice {
    ambient: usize,
    basis: IntMatrix,
    smith: Smith,
    box_plan: OnceLock<EliminationPlan>,
    below_plan: OnceLock<EliminationPlan>,
}

impl Clone for Lattice {
    fn clone(&self) -> Self {
        Lattice {
            ambient: self.ambient,
            basis: self.basis.clone(),
            smith: self.smith.clone(),
            box_plan: self.box_plan.clone(),
            below_plan: self.below_plan.clone(),
        }
    }
}

impl PartialEq for Lattice {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.basis == other.basis
    }
}

/// `r · x ≡ residue (mod modulus)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Congruence {
    pub row: IntVec,
    pub modulus: i64,
    pub residue: i64,
}

/// `row · x = rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Equality {
    pub row: IntVec,
    pub rhs: i64,
}

/// Linear description of a coset `c + L`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetSystem {
    pub equalities: Vec<Equality>,
    pub congruences: Vec<Congruence>,
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl CosetSystem {
    pub fn contains(&self, x: &[i64]) -> bool {
        self.equalities.iter().all(|e| dot(&e.row, x) == e.rhs)
            && self
                .congruences
                .iter()
                .all(|c| (dot(&c.row, x) - c.residue).rem_euclid(c.modulus) == 0)
    }

    pub fn is_trivial(&self) -> bool {
        self.equalities.is_empty() && self.congruences.is_empty()
    }
}

impl Lattice {
    pub fn new(ambient: usize, columns: &[IntVec]) -> Result<Self> {
        for c in columns {
            if c.len() != ambient {
                return Err(Error::DimensionMismatch {
                    expected: ambient,
                    found: c.len(),
                });
            }
        }
        if columns.len() > ambient {
            return Err(Error::TooManyColumns {
                columns: columns.len(),
                ambient,
            });
        }
        let basis = IntMatrix::from_columns(ambient, columns);
        let smith = smith_normal_form(&basis);
        if smith.rank() < columns.len() {
            return Err(Error::DependentBasis {
                rank: smith.rank(),
                columns: columns.len(),
            });
        }
        Ok(Lattice {
            ambient,
            basis,
            smith,
            box_plan: OnceLock::new(),
            below_plan: OnceLock::new(),
        })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn columns(&self) -> Vec<IntVec> {
        (0..self.rank()).map(|j| self.basis.column(j)).collect()
    }

    pub fn smith(&self) -> &Smith {
        &self.smith
    }

    /// `B z` for coefficient vector `z`.
    pub fn combine(&self, z: &[i64]) -> IntVec {
        self.basis.mul_vec(z)
    }

    fn check(&self, x: &[i64]) -> Result<()> {
        if x.len() == self.ambient {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: x.len(),
            })
        }
    }

    /// Equalities and congruences cutting out `c + L`, read off the Smith
    /// form `U B V = D`: `x - c ∈ L` iff `(U (x - c))_i ≡ 0 mod d_i` for
    /// `i < rank` and `(U (x - c))_i = 0` beyond.
    pub fn coset_constraints(&self, c: &[i64]) -> Result<CosetSystem> {
        self.check(c)?;
        let factors = self.smith.invariant_factors();
        let u = &self.smith.u;
        let mut equalities = Vec::new();
        let mut congruences = Vec::new();
        for i in 0..self.ambient {
            let mut row = u.row(i).to_vec();
            if i < self.rank() {
                let d = factors[i];
                if d == 1 {
                    continue;
                }
                row.iter_mut().for_each(|x| *x = x.rem_euclid(d));
                let residue = dot(&row, c).rem_euclid(d);
                congruences.push(Congruence {
                    row,
                    modulus: d,
                    residue,
                });
            } else {
                if row.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
                    row.iter_mut().for_each(|x| *x = -*x);
                }
                let rhs = dot(&row, c);
                equalities.push(Equality { row, rhs });
            }
        }
        Ok(CosetSystem {
            equalities,
            congruences,
        })
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        let y = self.smith.u.mul_vec(x);
        let factors = self.smith.invariant_factors();
        y.iter().enumerate().all(|(i, &yi)| {
            if i < self.rank() {
                yi.rem_euclid(factors[i]) == 0
            } else {
                yi == 0
            }
        })
    }

    /// Canonical representative of `c + L`: equal for congruent inputs.
    pub fn reduce(&self, c: &[i64]) -> Result<IntVec> {
        self.check(c)?;
        let factors = self.smith.invariant_factors();
        let mut y = self.smith.u.mul_vec(c);
        for (yi, &d) in y.iter_mut().zip(&factors) {
            *yi = yi.rem_euclid(d);
        }
        Ok(self.smith.u_inv.mul_vec(&y))
    }

    fn box_plan(&self) -> &EliminationPlan {
        self.box_plan.get_or_init(|| {
            let b = &self.basis;
            let mut rows: Vec<Vec<i64>> = (0..b.rows()).map(|i| b.row(i).to_vec()).collect();
            rows.extend((0..b.rows()).map(|i| b.row(i).iter().map(|x| -x).collect::<Vec<_>>()));
            EliminationPlan::new(&rows, self.rank())
        })
    }

    fn below_plan(&self) -> &EliminationPlan {
        self.below_plan.get_or_init(|| {
            let b = &self.basis;
            let rows: Vec<Vec<i64>> = (0..b.rows()).map(|i| b.row(i).to_vec()).collect();
            EliminationPlan::new(&rows, self.rank())
        })
    }

    /// Visits `(c + L) ∩ [lo, hi]`.
    pub fn for_each_in_box<F>(&self, c: &[i64], lo: &[i64], hi: &[i64], mut visit: F) -> Result<ControlFlow<()>>
    where
        F: FnMut(IntVec) -> ControlFlow<()>,
    {
        self.check(c)?;
        self.check(lo)?;
        self.check(hi)?;
        if lo.iter().zip(hi).any(|(l, h)| l > h) {
            return Ok(ControlFlow::Continue(()));
        }
        let mut rhs: Vec<i64> = hi.iter().zip(c).map(|(h, c)| h - c).collect();
        rhs.extend(lo.iter().zip(c).map(|(l, c)| c - l));
        self.box_plan().for_each_integer_point(&rhs, |z| {
            let x: IntVec = self.combine(z).iter().zip(c).map(|(a, b)| a + b).collect();
            visit(x)
        })
    }

    pub fn points_in_box(&self, c: &[i64], lo: &[i64], hi: &[i64]) -> Result<Vec<IntVec>> {
        let mut out = Vec::new();
        let _ = self.for_each_in_box(c, lo, hi, |x| {
            out.push(x);
            ControlFlow::Continue(())
        })?;
        out.sort();
        Ok(out)
    }

    /// `Ok(None)` iff `L ∩ N^n = {0}`; otherwise a primitive nonzero
    /// witness in `L ∩ N^n`.
    pub fn positivity_witness(&self) -> Option<IntVec> {
        let n = self.ambient;
        let m = self.rank();
        if m == 0 {
            return None;
        }
        let b = &self.basis;
        // -B z <= 0 and -(1ᵀB) z <= -1
        let mut rows: Vec<Vec<i64>> = (0..n).map(|i| b.row(i).iter().map(|x| -x).collect()).collect();
        let total: Vec<i64> = (0..m).map(|j| -(0..n).map(|i| b[(i, j)]).sum::<i64>()).collect();
        rows.push(total);
        let plan = EliminationPlan::new(&rows, m);
        let mut rhs = vec![0i64; n];
        rhs.push(-1);
        let z = plan.rational_point(&rhs)?;
        let z: IntVec = primitive_integer_direction(&z)
            .into_iter()
            .map(|x| x.to_i64().expect("witness coefficient fits in i64"))
            .collect();
        let x = self.combine(&z);
        debug_assert!(x.iter().all(|&c| c >= 0) && x.iter().any(|&c| c > 0));
        Some(x)
    }

    pub fn positivity_check(&self) -> Result<()> {
        match self.positivity_witness() {
            None => Ok(()),
            Some(w) => Err(Error::PositivityViolated {
                witness: Point::from_ints(&w),
            }),
        }
    }

    /// Visits `{a ∈ c + L : a <= bound}`. Requires positivity, under which
    /// the region is bounded.
    pub(crate) fn for_each_below<F>(&self, c: &[i64], bound: &[i64], mut visit: F) -> Result<ControlFlow<()>>
    where
        F: FnMut(IntVec) -> ControlFlow<()>,
    {
        self.check(c)?;
        self.check(bound)?;
        let rhs: Vec<i64> = bound.iter().zip(c).map(|(v, c)| v - c).collect();
        self.below_plan().for_each_integer_point(&rhs, |z| {
            let x: IntVec = self.combine(z).iter().zip(c).map(|(a, b)| a + b).collect();
            visit(x)
        })
    }
}


pub fn coset_constraints(l: &Lattice, c: &[i64]) -> Result<CosetSystem> {
    l.coset_constraints(c)
}

pub fn points_in_box(l: &Lattice, c: &[i64], lo: &[i64], hi: &[i64]) -> Result<Vec<IntVec>> {
    l.points_in_box(c, lo, hi)
}

pub fn positivity_check(l: &Lattice) -> Result<()> {
    l.positivity_check()
}

fn strict_bound(v: &[i64], strict: bool) -> IntVec {
    v.iter().map(|&x| if strict { x - 1 } else { x }).collect()
}

/// All points of `∪ (c_i + L)` weakly (or strictly) below `v`.
pub fn points_below(l: &Lattice, offsets: &[IntVec], v: &[i64], strict: bool) -> Result<Vec<IntVec>> {
    l.positivity_check()?;
    let bound = strict_bound(v, strict);
    let mut out = Vec::new();
    for c in offsets {
        let _ = l.for_each_below(c, &bound, |x| {
            out.push(x);
            ControlFlow::Continue(())
        })?;
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// First point found strictly below `v`, if any. Positivity is the
/// caller's responsibility.
pub(crate) fn find_strictly_below(l: &Lattice, offsets: &[IntVec], v: &[i64]) -> Result<Option<IntVec>> {
    let bound = strict_bound(v, true);
    let mut found = None;
    for c in offsets {
        let flow = l.for_each_below(c, &bound, |x| {
            found = Some(x);
            ControlFlow::Break(())
        })?;
        if flow.is_break() {
            break;
        }
    }
    Ok(found)
}

/// Members of `∪ (c_i + L)` in the box between 0 and `x` (the cuboid).
pub(crate) fn union_in_cuboid<F>(l: &Lattice, offsets: &[IntVec], x: &[i64], mut visit: F) -> Result<ControlFlow<()>>
where
    F: FnMut(IntVec) -> ControlFlow<()>,
{
    let lo: IntVec = x.iter().map(|&c| c.min(0)).collect();
    let hi: IntVec = x.iter().map(|&c| c.max(0)).collect();
    for c in offsets {
        if l.for_each_in_box(c, &lo, &hi, &mut visit)?.is_break() {
            return Ok(ControlFlow::Break(()));
        }
    }
    Ok(ControlFlow::Continue(()))
}

/// Whether `x` is `<=_P`-minimal in `(∪ cosets) ∩ P`, ignoring 0 when
/// `exclude_zero`. The `<=_P`-downset of `x ∈ P` is its cuboid with 0.
fn is_box_minimal(l: &Lattice, offsets: &[IntVec], x: &[i64], exclude_zero: bool) -> Result<bool> {
    let flow = union_in_cuboid(l, offsets, x, |y| {
        let zero = y.iter().all(|&c| c == 0);
        if y.as_slice() == x || (exclude_zero && zero) {
            ControlFlow::Continue(())
        } else {
            ControlFlow::Break(())
        }
    })?;
    Ok(flow.is_continue())
}

/// The `<=_P`-minimal elements of `(∪ (c_i + L)) ∩ P`, optionally without 0.
///
/// Each coset is reflected into `N^n` and encoded as a homogeneous system
/// over `(y, t⁺, t⁻, y₀)`: equalities `E' y - e y₀ = 0` and, per congruence,
/// `r' y - d t⁺ + d t⁻ - s y₀ = 0`. Minimal solutions with `y₀ = 1` (or the
/// nonzero ones with `y₀ = 0` for the coset through 0) project onto a
/// superset of the minimal points, which an exact box test then filters.
pub fn minimal_orthant_points(
    l: &Lattice,
    offsets: &[IntVec],
    orthant: &Orthant,
    exclude_zero: bool,
) -> Result<Vec<IntVec>> {
    l.positivity_check()?;
    let n = l.ambient();
    if orthant.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: orthant.dim(),
        });
    }
    let mut candidates: Vec<IntVec> = Vec::new();
    for c in offsets {
        let system = l.coset_constraints(c)?;
        let through_zero = system.contains(&vec![0; n]);
        if through_zero && !exclude_zero {
            candidates.push(vec![0; n]);
            continue;
        }
        let aux = system.congruences.len();
        let vars = n + 2 * aux + 1;
        let y0 = vars - 1;
        let mut matrix: Vec<Vec<i64>> = Vec::new();
        for e in &system.equalities {
            let mut row = vec![0i64; vars];
            row[..n].copy_from_slice(&orthant.reflect_ints(&e.row));
            row[y0] = -e.rhs;
            matrix.push(row);
        }
        for (k, g) in system.congruences.iter().enumerate() {
            let mut row = vec![0i64; vars];
            let reflected = orthant.reflect_ints(&g.row);
            for (dst, r) in row[..n].iter_mut().zip(reflected) {
                *dst = r.rem_euclid(g.modulus);
            }
            row[n + 2 * k] = -g.modulus;
            row[n + 2 * k + 1] = g.modulus;
            row[y0] = -g.residue;
            matrix.push(row);
        }
        let mut bounds = vec![None; vars];
        bounds[y0] = Some(if through_zero { 0 } else { 1 });
        for sol in minimal_solutions(&matrix, vars, &bounds) {
            if sol[y0] == u64::from(!through_zero) {
                let y: IntVec = sol[..n].iter().map(|&v| v as i64).collect();
                if through_zero && y.iter().all(|&v| v == 0) {
                    continue;
                }
                candidates.push(orthant.reflect_ints(&y));
            }
        }
    }
    candidates.sort();
    candidates.dedup();
    let mut out = Vec::new();
    for x in candidates {
        debug_assert!(orthant.contains_ints(&x));
        if is_box_minimal(l, offsets, &x, exclude_zero)? {
            out.push(x);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ker111() -> Lattice {
        Lattice::new(3, &[vec![1, -1, 0], vec![0, 1, -1]]).unwrap()
    }

    // Box scan with a membership test independent of the Smith form: solve
    // for the coefficients using two coordinates of the ker(1,1,1) basis.
    fn in_ker111(x: &[i64]) -> bool {
        x.iter().sum::<i64>() == 0
    }

    #[test]
    fn coset_constraint_examples() {
        let l = ker111();
        let s = l.coset_constraints(&[0, 0, 0]).unwrap();
        assert_eq!(s.equalities, vec![Equality { row: vec![1, 1, 1], rhs: 0 }]);
        assert!(s.congruences.is_empty());

        let l2 = Lattice::new(2, &[vec![2, 0]]).unwrap();
        let s = l2.coset_constraints(&[1, 5]).unwrap();
        assert_eq!(s.equalities, vec![Equality { row: vec![0, 1], rhs: 5 }]);
        assert_eq!(
            s.congruences,
            vec![Congruence {
                row: vec![1, 0],
                modulus: 2,
                residue: 1
            }]
        );

        let full = Lattice::new(2, &[vec![1, 0], vec![0, 1]]).unwrap();
        assert!(full.coset_constraints(&[7, -3]).unwrap().is_trivial());
    }

    #[test]
    fn box_examples() {
        let l = ker111();
        let pts = l.points_in_box(&[0, 0, 0], &[-1, -1, -1], &[1, 1, 1]).unwrap();
        let mut want = Vec::new();
        for x in -1..=1 {
            for y in -1..=1 {
                for z in -1..=1 {
                    if in_ker111(&[x, y, z]) {
                        want.push(vec![x, y, z]);
                    }
                }
            }
        }
        assert_eq!(pts, want);
        assert_eq!(pts.len(), 7);

        let pts = l.points_in_box(&[1, 0, 0], &[0, 0, 0], &[1, 1, 1]).unwrap();
        assert_eq!(pts, vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]);

        let v = [2, -1, -1];
        assert_eq!(l.points_in_box(&[0, 0, 0], &v, &v).unwrap(), vec![v.to_vec()]);
        let w = [2, -1, 0];
        assert!(l.points_in_box(&[0, 0, 0], &w, &w).unwrap().is_empty());
    }

    #[test]
    fn positivity_examples() {
        assert!(ker111().positivity_check().is_ok());
        let bad = Lattice::new(2, &[vec![1, 0]]).unwrap();
        assert_eq!(bad.positivity_witness(), Some(vec![1, 0]));
        let good = Lattice::new(2, &[vec![1, -1]]).unwrap();
        assert!(good.positivity_check().is_ok());
        let tilted = Lattice::new(2, &[vec![3, -1], vec![-1, 1]]).unwrap();
        let w = tilted.positivity_witness().unwrap();
        assert!(w.iter().all(|&c| c >= 0) && tilted.contains(&w) && w != vec![0, 0]);
    }

    #[test]
    fn dependent_basis_rejected() {
        assert!(matches!(
            Lattice::new(2, &[vec![1, -1], vec![2, -2]]),
            Err(Error::DependentBasis { .. })
        ));
    }

    #[test]
    fn below_examples() {
        let l = ker111();
        let z = vec![vec![0, 0, 0]];
        let weak = points_below(&l, &z, &[1, 1, 1], false).unwrap();
        let mut want = Vec::new();
        for x in -10..=1 {
            for y in -10..=1 {
                for w in -10..=1 {
                    if in_ker111(&[x, y, w]) {
                        want.push(vec![x, y, w]);
                    }
                }
            }
        }
        assert_eq!(weak, want);
        assert_eq!(weak.len(), 10);
        assert_eq!(points_below(&l, &z, &[1, 1, 1], true).unwrap(), vec![vec![0, 0, 0]]);
        assert!(points_below(&l, &z, &[0, 0, 0], true).unwrap().is_empty());

        let bad = Lattice::new(2, &[vec![1, 0]]).unwrap();
        assert!(matches!(
            points_below(&bad, &[vec![0, 0]], &[0, 0], false),
            Err(Error::PositivityViolated { .. })
        ));
    }

    #[test]
    fn minimal_orthant_examples() {
        let l = ker111();
        let z = vec![vec![0, 0, 0]];
        let o: Orthant = "++-".parse().unwrap();
        assert_eq!(
            minimal_orthant_points(&l, &z, &o, true).unwrap(),
            vec![vec![0, 1, -1], vec![1, 0, -1]]
        );
        let pos = Orthant::positive(3);
        assert!(minimal_orthant_points(&l, &z, &pos, true).unwrap().is_empty());
        assert_eq!(
            minimal_orthant_points(&l, &[vec![1, 0, 0]], &pos, false).unwrap(),
            vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]
        );
        assert_eq!(minimal_orthant_points(&l, &z, &pos, false).unwrap(), z);
    }

    #[test]
    fn congruence_encoding() {
        // L = span{(2,-2)}: x1 + x2 = 0 and x1 even.
        let l = Lattice::new(2, &[vec![2, -2]]).unwrap();
        let o: Orthant = "+-".parse().unwrap();
        assert_eq!(
            minimal_orthant_points(&l, &[vec![0, 0]], &o, true).unwrap(),
            vec![vec![2, -2]]
        );
        assert_eq!(
            minimal_orthant_points(&l, &[vec![1, -1]], &o, false).unwrap(),
            vec![vec![1, -1]]
        );
        assert!(l.contains(&[4, -4]) && !l.contains(&[1, -1]));
        let r = l.reduce(&[5, -5]).unwrap();
        assert_eq!(r, l.reduce(&[1, -1]).unwrap());
        assert!(l.contains(&[r[0] - 1, r[1] + 1]));
    }
}
