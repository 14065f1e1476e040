//! Neighbors, stars and quotient complexes of periodic subsets of `Z^n`.
//!
//! A periodic set is a finite union of cosets of one lattice `L` with
//! `L ∩ N^n = {0}`. Neighbors of a vertex are found by translating it to 0
//! and working orthant by orthant: every neighbor `b` of 0 in an orthant `P`
//! has at most `d + 1` points of `A` in `cuboid(0, b)` when every face has at
//! most `d + 1` vertices, so it suffices to enumerate
//! `A^P_[d] = {a ∈ A ∩ P : card ↓(a, A ∩ P) <= d + 1}`.
//!
//! `A^P_[d]` is generated from 0 by cover moves: if `y` is a maximal
//! element of `A ∩ P` strictly below `a`, then `a - y` is a minimal nonzero
//! element of `(A - y) ∩ P`, and `↓y` is strictly smaller than `↓a`. The
//! moves depend only on the coset of `y`, so they are computed once per
//! coset and orthant.
//!
//! The true dimension of `Nb(A)` is not known up front. The search is run
//! for a user bound `dmax`; if it misses a neighbor, the found part of that
//! neighbor's downset already forms a face of dimension at least `dmax`
//! through 0, so a star of dimension below `dmax` certifies completeness.

use std::collections::hash_map::Entry;
use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::complexes::Face;
use crate::diophantine::lattice::{find_strictly_below, union_in_cuboid};
use crate::diophantine::{minimal_orthant_points, IntVec, Lattice};
use crate::error::{Error, Result};
use crate::geometry::{Orthant, Point};

/// A finite union of cosets of a lattice satisfying positivity.
#[derive(Debug, Clone)]
pub struct PeriodicSet {
    lattice: Lattice,
    reps: Vec<IntVec>,
}

fn sub(a: &[i64], b: &[i64]) -> IntVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn add(a: &[i64], b: &[i64]) -> IntVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn join_with_zero(points: &[&IntVec], n: usize) -> IntVec {
    let mut j = vec![0i64; n];
    for p in points {
        for (x, &y) in j.iter_mut().zip(p.iter()) {
            *x = (*x).max(y);
        }
    }
    j
}

fn to_point(v: &[i64]) -> Point {
    Point::from_ints(v)
}

impl PeriodicSet {
    /// Checks positivity, reduces the representatives modulo the lattice and
    /// drops repeated cosets.
    pub fn new(lattice: Lattice, reps: Vec<IntVec>) -> Result<Self> {
        lattice.positivity_check()?;
        if reps.is_empty() {
            return Err(Error::Malformed("at least one coset representative is required".into()));
        }
        let mut canonical: Vec<IntVec> = Vec::new();
        for r in reps {
            let c = lattice.reduce(&r)?;
            if !canonical.contains(&c) {
                canonical.push(c);
            }
        }
        Ok(PeriodicSet {
            lattice,
            reps: canonical,
        })
    }

    pub fn dim(&self) -> usize {
        self.lattice.ambient()
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn reps(&self) -> &[IntVec] {
        &self.reps
    }

    pub fn coset_of(&self, x: &[i64]) -> Option<usize> {
        self.reps.iter().position(|r| self.lattice.contains(&sub(x, r)))
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        x.len() == self.dim() && self.coset_of(x).is_some()
    }

    /// The set `A + t`.
    pub fn translate(&self, t: &[i64]) -> Result<Self> {
        if t.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: t.len(),
            });
        }
        let reps = self.reps.iter().map(|r| add(r, t)).collect();
        PeriodicSet::new(self.lattice.clone(), reps)
    }

    pub fn points_in_box(&self, lo: &[i64], hi: &[i64]) -> Result<Vec<IntVec>> {
        let mut out = Vec::new();
        for r in &self.reps {
            out.extend(self.lattice.points_in_box(r, lo, hi)?);
        }
        out.sort();
        Ok(out)
    }

    pub fn points_below(&self, v: &[i64], strict: bool) -> Result<Vec<IntVec>> {
        crate::diophantine::points_below(&self.lattice, &self.reps, v, strict)
    }

    /// A point of `A` strictly below `v`, if one exists.
    pub fn exists_strictly_below(&self, v: &[i64]) -> Result<Option<IntVec>> {
        find_strictly_below(&self.lattice, &self.reps, v)
    }

    /// `card (A ∩ cuboid(0, x))`, counting no further than `cap`.
    pub fn cuboid_count(&self, x: &[i64], cap: usize) -> Result<usize> {
        let mut count = 0usize;
        let _ = union_in_cuboid(&self.lattice, &self.reps, x, |_| {
            count += 1;
            if count >= cap {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        })?;
        Ok(count)
    }
}

/// Reads raw exact data as a periodic set; coordinates must be integers.
pub fn validate_periodic_set(basis: &[Point], cosets: &[Point]) -> Result<PeriodicSet> {
    let n = match (basis.first(), cosets.first()) {
        (Some(b), _) => b.dim(),
        (None, Some(c)) => c.dim(),
        (None, None) => return Err(Error::Malformed("empty basis and no cosets".into())),
    };
    let columns = basis.iter().map(|b| {
        b.check_dim(n)?;
        b.try_to_ints()
    });
    let columns = columns.collect::<Result<Vec<_>>>()?;
    let reps = if cosets.is_empty() {
        vec![vec![0; n]]
    } else {
        cosets
            .iter()
            .map(|c| {
                c.check_dim(n)?;
                c.try_to_ints()
            })
            .collect::<Result<Vec<_>>>()?
    };
    PeriodicSet::new(Lattice::new(n, &columns)?, reps)
}

pub fn exists_strictly_below(a: &PeriodicSet, v: &[i64]) -> Result<Option<IntVec>> {
    a.exists_strictly_below(v)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrthantCount {
    pub orthant: String,
    /// `card A^P_[dmax]`, including 0.
    pub candidates: usize,
    pub neighbors: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompletenessReport {
    pub dmax_used: usize,
    pub observed_star_dimension: usize,
    pub certified: bool,
    pub orthants: Vec<OrthantCount>,
}

/// Result of one search around 0.
#[derive(Debug, Clone)]
pub struct Exploration {
    pub neighbors: Vec<IntVec>,
    /// Faces through 0, as lists of the other vertices (indices into
    /// `neighbors`, increasing).
    face_indices: Vec<Vec<usize>>,
    /// `A^P_[dmax]` per orthant, in the order of [`Orthant::all`].
    pub candidates: Vec<Vec<IntVec>>,
    pub report: CompletenessReport,
}

impl Exploration {
    /// Faces containing 0, each with 0 among its vertices.
    pub fn star_faces(&self) -> Vec<Vec<IntVec>> {
        let n = self.neighbors.first().map_or(0, Vec::len);
        self.face_indices
            .iter()
            .map(|f| {
                let mut verts: Vec<IntVec> = f.iter().map(|&i| self.neighbors[i].clone()).collect();
                verts.push(vec![0; n]);
                verts.sort();
                verts
            })
            .collect()
    }
}

struct FaceOracle<'a> {
    set: &'a PeriodicSet,
    memo: HashMap<IntVec, bool>,
}

impl FaceOracle<'_> {
    fn is_face_join(&mut self, join: &IntVec) -> Result<bool> {
        if let Some(&ok) = self.memo.get(join) {
            return Ok(ok);
        }
        let ok = self.set.exists_strictly_below(join)?.is_none();
        self.memo.insert(join.clone(), ok);
        Ok(ok)
    }
}

fn check_zero_vertex(a: &PeriodicSet) -> Result<()> {
    let zero = vec![0; a.dim()];
    if !a.contains(&zero) {
        return Err(Error::NotAMember(to_point(&zero)));
    }
    if let Some(w) = a.exists_strictly_below(&zero)? {
        return Err(Error::StrictlyDominated {
            point: to_point(&zero),
            witness: to_point(&w),
        });
    }
    Ok(())
}

/// `A^P_[dmax]`, grown from 0 by cover moves and filtered by exact cuboid
/// counts.
fn orthant_candidates(a: &PeriodicSet, orthant: &Orthant, dmax: usize) -> Result<Vec<IntVec>> {
    let n = a.dim();
    let mut moves: HashMap<usize, Vec<IntVec>> = HashMap::new();
    let zero = vec![0; n];
    let mut accepted = vec![zero.clone()];
    let mut seen: HashSet<IntVec> = HashSet::from([zero.clone()]);
    let mut frontier = vec![zero];
    while let Some(y) = frontier.pop() {
        let coset = a.coset_of(&y).expect("frontier points lie in A");
        if let Entry::Vacant(slot) = moves.entry(coset) {
            let offsets: Vec<IntVec> = a.reps.iter().map(|r| sub(r, &a.reps[coset])).collect();
            slot.insert(minimal_orthant_points(&a.lattice, &offsets, orthant, true)?);
        }
        for h in &moves[&coset] {
            let x = add(&y, h);
            if !seen.insert(x.clone()) {
                continue;
            }
            if a.cuboid_count(&x, dmax + 2)? <= dmax + 1 {
                accepted.push(x.clone());
                frontier.push(x);
            }
        }
    }
    accepted.sort();
    Ok(accepted)
}

/// Searches the neighbors and the star of 0 with bound `dmax`.
pub fn explore(a: &PeriodicSet, dmax: usize) -> Result<Exploration> {
    check_zero_vertex(a)?;
    let n = a.dim();
    let mut oracle = FaceOracle {
        set: a,
        memo: HashMap::new(),
    };
    let mut all_neighbors: BTreeSet<IntVec> = BTreeSet::new();
    let mut counts = Vec::new();
    let mut candidates = Vec::new();
    for orthant in Orthant::all(n) {
        let cands = orthant_candidates(a, &orthant, dmax)?;
        let mut found = 0;
        for b in cands.iter().filter(|b| b.iter().any(|&x| x != 0)) {
            if oracle.is_face_join(&join_with_zero(&[b], n))? {
                found += 1;
                all_neighbors.insert(b.clone());
            }
        }
        counts.push(OrthantCount {
            orthant: orthant.to_string(),
            candidates: cands.len(),
            neighbors: found,
        });
        candidates.push(cands);
    }
    let neighbors: Vec<IntVec> = all_neighbors.into_iter().collect();

    let mut faces: Vec<Vec<usize>> = Vec::new();
    let mut frontier: Vec<Vec<usize>> = vec![Vec::new()];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for f in &frontier {
            let start = f.last().map_or(0, |&i| i + 1);
            for j in start..neighbors.len() {
                let mut g = f.clone();
                g.push(j);
                let verts: Vec<&IntVec> = g.iter().map(|&i| &neighbors[i]).collect();
                if oracle.is_face_join(&join_with_zero(&verts, n))? {
                    next.push(g);
                }
            }
        }
        faces.append(&mut frontier);
        frontier = next;
    }
    let observed = faces.iter().map(Vec::len).max().unwrap_or(0);
    Ok(Exploration {
        neighbors,
        face_indices: faces,
        candidates,
        report: CompletenessReport {
            dmax_used: dmax,
            observed_star_dimension: observed,
            certified: observed < dmax,
            orthants: counts,
        },
    })
}

/// Doubles `dmax` from `start` until the report is certified or `limit`
/// is exceeded; returns the last search.
pub fn explore_auto(a: &PeriodicSet, start: usize, limit: usize) -> Result<Exploration> {
    let mut dmax = start.max(1);
    loop {
        let e = explore(a, dmax)?;
        if e.report.certified || dmax * 2 > limit {
            return Ok(e);
        }
        dmax *= 2;
    }
}

/// Default ceiling for [`explore_auto`].
pub const AUTO_DMAX_LIMIT: usize = 256;

/// How the search bound is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DmaxChoice {
    Fixed(usize),
    Auto,
}

fn run(a: &PeriodicSet, dmax: DmaxChoice) -> Result<Exploration> {
    match dmax {
        DmaxChoice::Fixed(d) => explore(a, d),
        DmaxChoice::Auto => explore_auto(a, 1, AUTO_DMAX_LIMIT),
    }
}

pub fn neighbors_of_zero(a: &PeriodicSet, dmax: usize) -> Result<(Vec<IntVec>, CompletenessReport)> {
    let e = explore(a, dmax)?;
    Ok((e.neighbors, e.report))
}

/// Neighbors of an arbitrary vertex, via the translate `A - vertex`.
pub fn neighbors_of_vertex(
    a: &PeriodicSet,
    vertex: &[i64],
    dmax: DmaxChoice,
) -> Result<(Vec<IntVec>, CompletenessReport)> {
    let shifted = shifted_to_zero(a, vertex)?;
    let e = run(&shifted, dmax)?;
    let mut out: Vec<IntVec> = e.neighbors.iter().map(|b| add(b, vertex)).collect();
    out.sort();
    Ok((out, e.report))
}

fn shifted_to_zero(a: &PeriodicSet, vertex: &[i64]) -> Result<PeriodicSet> {
    if !a.contains(vertex) {
        return Err(Error::NotAMember(to_point(vertex)));
    }
    let minus: IntVec = vertex.iter().map(|x| -x).collect();
    a.translate(&minus)
}

/// Faces of `Nb(A)` through `center`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarFaces {
    pub center: Point,
    pub dimension: usize,
    pub faces: Vec<Face>,
}

pub fn star_faces(a: &PeriodicSet, dmax: usize) -> Result<(StarFaces, CompletenessReport)> {
    star_of_vertex(a, &vec![0; a.dim()], DmaxChoice::Fixed(dmax))
}

pub fn star_of_vertex(
    a: &PeriodicSet,
    vertex: &[i64],
    dmax: DmaxChoice,
) -> Result<(StarFaces, CompletenessReport)> {
    let shifted = shifted_to_zero(a, vertex)?;
    let e = run(&shifted, dmax)?;
    let mut faces: Vec<Face> = e
        .star_faces()
        .into_iter()
        .map(|f| Face::new(f.iter().map(|v| to_point(&add(v, vertex))).collect()))
        .collect();
    faces.sort_by(|x, y| x.vertices.len().cmp(&y.vertices.len()).then_with(|| x.vertices.cmp(&y.vertices)));
    Ok((
        StarFaces {
            center: to_point(vertex),
            dimension: e.report.observed_star_dimension,
            faces,
        },
        e.report,
    ))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientFace {
    /// The translate whose least vertex is a canonical coset representative.
    pub representative: Face,
    pub dimension: usize,
    /// Number of faces in this orbit that pass through some coset
    /// representative.
    pub orbit_size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepresentativeStar {
    pub representative: Point,
    pub vertex: bool,
    pub report: Option<CompletenessReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientComplex {
    pub faces: Vec<QuotientFace>,
    /// Orbit counts by dimension.
    pub f_vector: Vec<usize>,
    pub stars: Vec<RepresentativeStar>,
}

/// Orbits of faces of `Nb(A)` under translation by the lattice.
pub fn quotient_complex(a: &PeriodicSet, dmax: DmaxChoice) -> Result<QuotientComplex> {
    let mut orbits: BTreeMap<(usize, Vec<IntVec>), usize> = BTreeMap::new();
    let mut stars = Vec::new();
    for rep in &a.reps {
        let shifted = a.translate(&rep.iter().map(|x| -x).collect::<Vec<_>>())?;
        if shifted.exists_strictly_below(&vec![0; a.dim()])?.is_some() {
            stars.push(RepresentativeStar {
                representative: to_point(rep),
                vertex: false,
                report: None,
            });
            continue;
        }
        let e = run(&shifted, dmax)?;
        for face in e.star_faces() {
            let face: Vec<IntVec> = face.iter().map(|v| add(v, rep)).collect();
            let least = face.iter().min().expect("faces through a vertex are nonempty");
            let coset = a.coset_of(least).expect("vertices lie in A");
            let shift = sub(&a.reps[coset], least);
            let mut canon: Vec<IntVec> = face.iter().map(|v| add(v, &shift)).collect();
            canon.sort();
            *orbits.entry((canon.len(), canon)).or_insert(0) += 1;
        }
        stars.push(RepresentativeStar {
            representative: to_point(rep),
            vertex: true,
            report: Some(e.report),
        });
    }
    let faces: Vec<QuotientFace> = orbits
        .into_iter()
        .map(|((len, verts), count)| QuotientFace {
            representative: Face::new(verts.iter().map(|v| to_point(v)).collect()),
            dimension: len - 1,
            orbit_size: count,
        })
        .collect();
    let top = faces.iter().map(|f| f.dimension + 1).max().unwrap_or(0);
    let mut f_vector = vec![0usize; top];
    for f in &faces {
        f_vector[f.dimension] += 1;
    }
    Ok(QuotientComplex {
        faces,
        f_vector,
        stars,
    })
}
