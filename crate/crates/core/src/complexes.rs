//! Finite abstract simplicial complexes whose faces carry the join of their
//! vertices as a multidegree.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{join, Point};

/// A face with its vertices in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Face {
    pub vertices: Vec<Point>,
    /// `None` exactly for the empty face.
    pub multidegree: Option<Point>,
}

impl Face {
    pub fn new(mut vertices: Vec<Point>) -> Self {
        vertices.sort();
        vertices.dedup();
        let multidegree = if vertices.is_empty() {
            None
        } else {
            Some(join(&vertices).expect("vertices of a face share a dimension"))
        };
        Face {
            vertices,
            multidegree,
        }
    }

    pub fn empty() -> Self {
        Face {
            vertices: Vec::new(),
            multidegree: None,
        }
    }

    /// `card B - 1`; the empty face has dimension -1.
    pub fn dim(&self) -> isize {
        self.vertices.len() as isize - 1
    }

    pub fn contains(&self, v: &Point) -> bool {
        self.vertices.binary_search(v).is_ok()
    }
}

/// Face counts by dimension, with the empty face kept apart.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FVector {
    pub empty: usize,
    pub counts: Vec<usize>,
}

/// A downward-closed family of faces, always containing the empty face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledComplex {
    faces: Vec<Face>,
    dimension: isize,
}

fn sort_faces(faces: &mut [Face]) {
    faces.sort_by(|a, b| {
        a.vertices
            .len()
            .cmp(&b.vertices.len())
            .then_with(|| a.vertices.cmp(&b.vertices))
    });
}

fn check_vertex_dims<'a>(sets: impl IntoIterator<Item = &'a Vec<Point>>) -> Result<()> {
    let mut n = None;
    for v in sets.into_iter().flatten() {
        match n {
            None => n = Some(v.dim()),
            Some(d) => v.check_dim(d)?,
        }
    }
    Ok(())
}

impl LabeledComplex {
    /// Closes `faces` downward and attaches multidegrees.
    pub fn build(faces: &[Vec<Point>]) -> Result<Self> {
        check_vertex_dims(faces)?;
        let mut closed: BTreeSet<Vec<Point>> = BTreeSet::new();
        closed.insert(Vec::new());
        for f in faces {
            let mut verts = f.clone();
            verts.sort();
            verts.dedup();
            if closed.contains(&verts) {
                continue;
            }
            let k = verts.len();
            assert!(k < 64, "face with {} vertices is too large to close", k);
            for mask in 1u64..(1u64 << k) {
                let sub: Vec<Point> = (0..k)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| verts[i].clone())
                    .collect();
                closed.insert(sub);
            }
        }
        Ok(Self::from_closed(closed.into_iter().map(Face::new).collect()))
    }

    /// Wraps a family the caller guarantees is downward closed.
    pub(crate) fn from_closed(mut faces: Vec<Face>) -> Self {
        if !faces.iter().any(|f| f.vertices.is_empty()) {
            faces.push(Face::empty());
        }
        sort_faces(&mut faces);
        faces.dedup();
        let dimension = faces.iter().map(Face::dim).max().unwrap_or(-1);
        LabeledComplex { faces, dimension }
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn dimension(&self) -> isize {
        self.dimension
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dimension < 0
    }

    pub fn vertices(&self) -> Vec<Point> {
        self.faces
            .iter()
            .filter(|f| f.vertices.len() == 1)
            .map(|f| f.vertices[0].clone())
            .collect()
    }

    pub fn faces_of_dim(&self, d: isize) -> impl Iterator<Item = &Face> {
        self.faces.iter().filter(move |f| f.dim() == d)
    }

    pub fn contains_face(&self, vertices: &[Point]) -> bool {
        let mut key = vertices.to_vec();
        key.sort();
        key.dedup();
        self.faces
            .binary_search_by(|f| {
                f.vertices
                    .len()
                    .cmp(&key.len())
                    .then_with(|| f.vertices.cmp(&key))
            })
            .is_ok()
    }

    /// Inclusion-maximal faces.
    pub fn facets(&self) -> Vec<Face> {
        self.faces
            .iter()
            .filter(|f| {
                !self.faces.iter().any(|g| {
                    g.vertices.len() > f.vertices.len()
                        && f.vertices.iter().all(|v| g.contains(v))
                })
            })
            .cloned()
            .collect()
    }

    pub fn f_vector(&self) -> FVector {
        let mut counts = vec![0usize; (self.dimension + 1).max(0) as usize];
        let mut empty = 0;
        for f in &self.faces {
            if f.vertices.is_empty() {
                empty += 1;
            } else {
                counts[f.vertices.len() - 1] += 1;
            }
        }
        FVector { empty, counts }
    }

    /// All faces containing the vertex `v`.
    pub fn star(&self, v: &Point) -> Result<Vec<Face>> {
        if !self.faces.iter().any(|f| f.vertices.len() == 1 && &f.vertices[0] == v) {
            return Err(Error::NotAVertex(v.clone()));
        }
        Ok(self.faces.iter().filter(|f| f.contains(v)).cloned().collect())
    }
}

pub fn build_complex(faces: &[Vec<Point>]) -> Result<LabeledComplex> {
    LabeledComplex::build(faces)
}

pub fn f_vector(c: &LabeledComplex) -> FVector {
    c.f_vector()
}

pub fn star(c: &LabeledComplex, v: &Point) -> Result<Vec<Face>> {
    c.star(v)
}
