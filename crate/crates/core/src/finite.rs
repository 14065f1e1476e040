//! Neighbor complexes of finite point sets.
//!
//! `B ⊆ A` is a face of `Nb(A)` when no point of `A` (members of `B`
//! included) lies strictly below the join of `B`. Comparisons are carried
//! out on per-coordinate ranks, which is exact because every query only
//! involves joins of points of `A` and strict or weak componentwise order.

use serde::{Deserialize, Serialize};

use crate::complexes::{Face, LabeledComplex};
use crate::error::{Error, Result};
use crate::geometry::{coordinate_ranks, Point};

/// A nonempty finite set of distinct points of `Q^n`, kept in input order.
#[derive(Debug, Clone)]
pub struct FinitePointSet {
    points: Vec<Point>,
    keys: Vec<Vec<u32>>,
    // Indices of `points` in lexicographic order of the points.
    lex: Vec<usize>,
    dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceTest {
    pub is_face: bool,
    pub witness: Option<Point>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GenericMode {
    Definition,
    Remark,
    Both,
}

impl std::str::FromStr for GenericMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "definition" => Ok(GenericMode::Definition),
            "remark" => Ok(GenericMode::Remark),
            "both" => Ok(GenericMode::Both),
            _ => Err(Error::Malformed(format!("unknown genericity mode {:?}", s))),
        }
    }
}

/// Why a set fails to be generic. Coordinates are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GenericityWitness {
    /// Two neighbors sharing a coordinate value.
    Pair {
        first: Point,
        second: Point,
        coordinate: usize,
    },
    /// A face whose lower orthant carries two points of `A` on one facet.
    Face {
        face: Vec<Point>,
        coordinate: usize,
        points: (Point, Point),
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub generic: bool,
    pub witness: Option<GenericityWitness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenericityReport {
    pub generic: bool,
    pub definition: Option<Verdict>,
    pub remark: Option<Verdict>,
}

impl GenericityReport {
    /// Whether both modes ran and reached the same answer.
    pub fn modes_agree(&self) -> Option<bool> {
        match (&self.definition, &self.remark) {
            (Some(d), Some(r)) => Some(d.generic == r.generic),
            _ => None,
        }
    }
}

fn all_strictly_below(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x < y)
}

fn all_leq(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

impl FinitePointSet {
    /// Builds the set; repeated points are dropped, keeping first occurrences.
    pub fn new(points: Vec<Point>) -> Result<Self> {
        let dim = points.first().ok_or(Error::EmptyPointSet)?.dim();
        let mut unique: Vec<Point> = Vec::with_capacity(points.len());
        for p in points {
            p.check_dim(dim)?;
            if !unique.contains(&p) {
                unique.push(p);
            }
        }
        let keys = coordinate_ranks(&unique);
        let mut lex: Vec<usize> = (0..unique.len()).collect();
        lex.sort_by(|&i, &j| unique[i].cmp(&unique[j]));
        Ok(FinitePointSet {
            points: unique,
            keys,
            lex,
            dim,
        })
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn index_of(&self, p: &Point) -> Option<usize> {
        self.points.iter().position(|q| q == p)
    }

    fn join_key(&self, idx: &[usize]) -> Vec<u32> {
        let mut key = vec![0u32; self.dim];
        for &i in idx {
            for (k, &r) in key.iter_mut().zip(&self.keys[i]) {
                *k = (*k).max(r);
            }
        }
        key
    }

    /// Index of a point strictly below the join of `idx`, if any.
    pub(crate) fn face_witness(&self, idx: &[usize]) -> Option<usize> {
        if idx.is_empty() {
            return None;
        }
        let j = self.join_key(idx);
        (0..self.len()).find(|&a| all_strictly_below(&self.keys[a], &j))
    }

    fn indices_of(&self, b: &[Point]) -> Result<Vec<usize>> {
        b.iter()
            .map(|p| {
                p.check_dim(self.dim)?;
                self.index_of(p).ok_or_else(|| Error::NotAMember(p.clone()))
            })
            .collect()
    }

    pub fn is_face(&self, b: &[Point]) -> Result<FaceTest> {
        let idx = self.indices_of(b)?;
        let witness = self.face_witness(&idx).map(|w| self.points[w].clone());
        Ok(FaceTest {
            is_face: witness.is_none(),
            witness,
        })
    }

    pub fn is_vertex(&self, a: &Point) -> Result<bool> {
        Ok(self.is_face(std::slice::from_ref(a))?.is_face)
    }

    pub fn neighbors(&self, a: &Point) -> Result<Vec<Point>> {
        let i = self.indices_of(std::slice::from_ref(a))?[0];
        let mut out: Vec<Point> = (0..self.len())
            .filter(|&j| j != i && self.face_witness(&[i, j]).is_none())
            .map(|j| self.points[j].clone())
            .collect();
        out.sort();
        Ok(out)
    }

    /// Nonempty faces as index lists, in lexicographic vertex order,
    /// grown one vertex at a time from faces already found.
    pub(crate) fn face_indices(&self, max_dim: Option<usize>) -> Vec<Vec<usize>> {
        let max_card = max_dim.map_or(self.len(), |d| (d + 1).min(self.len()));
        let mut found = Vec::new();
        // Positions refer to `self.lex`, so index lists come out sorted lexicographically.
        let mut frontier: Vec<Vec<usize>> = (0..self.len())
            .filter(|&pos| self.face_witness(&[self.lex[pos]]).is_none())
            .map(|pos| vec![pos])
            .collect();
        while !frontier.is_empty() && frontier[0].len() <= max_card {
            let mut next = Vec::new();
            for face in &frontier {
                if face.len() == max_card {
                    continue;
                }
                let last = *face.last().unwrap();
                for pos in last + 1..self.len() {
                    let mut cand = face.clone();
                    cand.push(pos);
                    let idx: Vec<usize> = cand.iter().map(|&p| self.lex[p]).collect();
                    if self.face_witness(&idx).is_none() {
                        next.push(cand);
                    }
                }
            }
            found.append(&mut frontier);
            frontier = next;
        }
        found
            .into_iter()
            .map(|f| f.into_iter().map(|p| self.lex[p]).collect())
            .collect()
    }

    pub fn enumerate_complex(&self, max_dim: Option<usize>) -> LabeledComplex {
        let faces = self
            .face_indices(max_dim)
            .into_iter()
            .map(|f| Face::new(f.into_iter().map(|i| self.points[i].clone()).collect()))
            .collect();
        LabeledComplex::from_closed(faces)
    }

    fn definition_verdict(&self) -> Verdict {
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                let shared = (0..self.dim).find(|&k| self.keys[i][k] == self.keys[j][k]);
                if let Some(k) = shared {
                    if self.face_witness(&[i, j]).is_none() {
                        return Verdict {
                            generic: false,
                            witness: Some(GenericityWitness::Pair {
                                first: self.points[i].clone(),
                                second: self.points[j].clone(),
                                coordinate: k + 1,
                            }),
                        };
                    }
                }
            }
        }
        Verdict {
            generic: true,
            witness: None,
        }
    }

    fn remark_verdict(&self) -> Verdict {
        for face in self.face_indices(None) {
            let j = self.join_key(&face);
            for k in 0..self.dim {
                let on_facet: Vec<usize> = (0..self.len())
                    .filter(|&a| all_leq(&self.keys[a], &j) && self.keys[a][k] == j[k])
                    .take(2)
                    .collect();
                if on_facet.len() == 2 {
                    let mut verts: Vec<Point> = face.iter().map(|&i| self.points[i].clone()).collect();
                    verts.sort();
                    return Verdict {
                        generic: false,
                        witness: Some(GenericityWitness::Face {
                            face: verts,
                            coordinate: k + 1,
                            points: (self.points[on_facet[0]].clone(), self.points[on_facet[1]].clone()),
                        }),
                    };
                }
            }
        }
        Verdict {
            generic: true,
            witness: None,
        }
    }

    pub fn is_generic(&self, mode: GenericMode) -> GenericityReport {
        let definition = matches!(mode, GenericMode::Definition | GenericMode::Both)
            .then(|| self.definition_verdict());
        let remark =
            matches!(mode, GenericMode::Remark | GenericMode::Both).then(|| self.remark_verdict());
        let generic = match (&definition, &remark) {
            (Some(d), _) => d.generic,
            (None, Some(r)) => r.generic,
            (None, None) => unreachable!(),
        };
        GenericityReport {
            generic,
            definition,
            remark,
        }
    }
}

pub fn is_face(a: &FinitePointSet, b: &[Point]) -> Result<FaceTest> {
    a.is_face(b)
}

pub fn neighbors(a: &FinitePointSet, v: &Point) -> Result<Vec<Point>> {
    a.neighbors(v)
}

pub fn enumerate_complex(a: &FinitePointSet, max_dim: Option<usize>) -> LabeledComplex {
    a.enumerate_complex(max_dim)
}

pub fn is_generic(a: &FinitePointSet, mode: GenericMode) -> GenericityReport {
    a.is_generic(mode)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{parse_rational, Rational};

    fn p(c: &[i64]) -> Point {
        Point::from_ints(c)
    }

    pub(crate) fn example2(m: i64) -> Vec<Point> {
        let mut v = vec![p(&[0, 0, 1])];
        for i in 1..=m {
            v.push(Point::new(vec![
                Rational::from_integer(i.into()),
                Rational::new(1.into(), i.into()),
                Rational::new((i - 1).into(), i.into()),
            ]));
        }
        v
    }

    #[test]
    fn face_examples() {
        let a = FinitePointSet::new(example2(4)).unwrap();
        let pts = a.points().to_vec();
        let t = a.is_face(&pts[0..3]).unwrap();
        assert!(t.is_face);
        let t = a.is_face(&pts[1..4]).unwrap();
        assert!(!t.is_face);
        assert_eq!(t.witness, Some(pts[2].clone()));
        assert!(a.is_face(&[]).unwrap().is_face);

        let b = FinitePointSet::new(vec![p(&[0, 0]), p(&[1, 1])]).unwrap();
        let t = b.is_face(&[p(&[1, 1])]).unwrap();
        assert_eq!(t.witness, Some(p(&[0, 0])));
        assert!(matches!(b.is_face(&[p(&[5, 5])]), Err(Error::NotAMember(_))));
    }

    #[test]
    fn neighbor_examples() {
        let a = FinitePointSet::new(vec![p(&[0, 0]), p(&[1, 0]), p(&[2, 0])]).unwrap();
        assert_eq!(a.neighbors(&p(&[0, 0])).unwrap(), vec![p(&[1, 0]), p(&[2, 0])]);

        let e = FinitePointSet::new(example2(4)).unwrap();
        let mut expected = e.points()[1..].to_vec();
        expected.sort();
        assert_eq!(e.neighbors(&e.points()[0]).unwrap(), expected);

        let one = FinitePointSet::new(vec![p(&[3, 1])]).unwrap();
        assert!(one.neighbors(&p(&[3, 1])).unwrap().is_empty());
        assert!(one.neighbors(&p(&[0, 0])).is_err());
    }

    #[test]
    fn enumerate_examples() {
        let a = FinitePointSet::new(vec![p(&[0, 0]), p(&[1, 0]), p(&[2, 0])]).unwrap();
        let c = a.enumerate_complex(None);
        assert_eq!(c.len(), 8);
        assert_eq!(c.dimension(), 2);

        let e = FinitePointSet::new(example2(3)).unwrap();
        let pts = e.points().to_vec();
        let c = e.enumerate_complex(None);
        let facets: Vec<Vec<Point>> = c.facets().into_iter().map(|f| f.vertices).collect();
        let mut f1 = vec![pts[0].clone(), pts[1].clone(), pts[2].clone()];
        let mut f2 = vec![pts[0].clone(), pts[2].clone(), pts[3].clone()];
        f1.sort();
        f2.sort();
        assert_eq!(facets.len(), 2);
        assert!(facets.contains(&f1) && facets.contains(&f2));
        assert!(!c.contains_face(&[pts[1].clone(), pts[3].clone()]));

        let d = FinitePointSet::new(vec![p(&[0, 0]), p(&[1, 1])]).unwrap();
        let c = d.enumerate_complex(None);
        assert_eq!(c.len(), 2);
        assert!(c.contains_face(&[p(&[0, 0])]));

        let trunc = a.enumerate_complex(Some(1));
        assert_eq!(trunc.dimension(), 1);
        assert_eq!(trunc.len(), 7);
    }

    #[test]
    fn example2_star_of_a0() {
        let e = FinitePointSet::new(example2(3)).unwrap();
        let pts = e.points().to_vec();
        let c = e.enumerate_complex(None);
        let star = c.star(&pts[0]).unwrap();
        let idx = |f: &Face| -> Vec<usize> {
            let mut v: Vec<usize> = f.vertices.iter().map(|x| e.index_of(x).unwrap()).collect();
            v.sort();
            v
        };
        let mut got: Vec<Vec<usize>> = star.iter().map(idx).collect();
        got.sort();
        let mut want = vec![vec![0], vec![0, 1], vec![0, 2], vec![0, 3], vec![0, 1, 2], vec![0, 2, 3]];
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn genericity_examples() {
        let a = FinitePointSet::new(vec![p(&[2, 0]), p(&[1, 1]), p(&[0, 2])]).unwrap();
        let r = a.is_generic(GenericMode::Both);
        assert!(r.generic);
        assert_eq!(r.modes_agree(), Some(true));

        let b = FinitePointSet::new(vec![p(&[2, 1]), p(&[1, 2]), p(&[2, 2])]).unwrap();
        let r = b.is_generic(GenericMode::Both);
        assert!(!r.generic);
        assert_eq!(r.modes_agree(), Some(true));
        assert_eq!(
            r.definition.unwrap().witness,
            Some(GenericityWitness::Pair {
                first: p(&[2, 1]),
                second: p(&[2, 2]),
                coordinate: 1
            })
        );

        let c = FinitePointSet::new(vec![p(&[1, 0]), p(&[0, 1])]).unwrap();
        assert!(c.is_generic(GenericMode::Definition).generic);
    }

    #[test]
    fn rational_coordinates_are_exact() {
        let q = |s: &str| parse_rational(s).unwrap();
        let a = FinitePointSet::new(vec![
            Point::new(vec![q("1/3"), q("0")]),
            Point::new(vec![q("0"), q("1/3")]),
            Point::new(vec![q("1/3"), q("1/3")]),
        ])
        .unwrap();
        // (1/3,1/3) equals the join of the other two, so nothing is strictly below it.
        assert_eq!(a.enumerate_complex(None).dimension(), 2);
    }
}
