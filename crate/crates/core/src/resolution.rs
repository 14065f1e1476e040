//! The Scarf complex of a generic monomial ideal and the free resolution it
//! supports.
//!
//! Generators are exponent vectors. Homological degree `i` is spanned by the
//! `i`-dimensional faces of `Nb(A)`, each in multidegree `∨B`. The column of
//! face `B` in `∂_i` has entry `(-1)^k x^(∨B - ∨(B \ {a}))` in row `B \ {a}`,
//! where `a` is the `k`-th vertex of `B` in lexicographic order.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::complexes::Face;
use crate::error::{Error, Result};
use crate::finite::{FinitePointSet, GenericMode, GenericityWitness};
use crate::geometry::Point;

pub type Exponent = Vec<u64>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub row: usize,
    pub column: usize,
    pub sign: i8,
    pub exponent: Exponent,
}

/// `∂_degree`, mapping homological degree `degree` to `degree - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Differential {
    pub degree: usize,
    pub rows: usize,
    pub columns: usize,
    pub entries: Vec<Entry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedBetti {
    pub degree: usize,
    pub multidegree: Exponent,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Resolution {
    pub generators: Vec<Exponent>,
    /// Nonempty faces of the Scarf complex grouped by dimension, each group
    /// in lexicographic order of vertex lists.
    pub faces: Vec<Vec<Face>>,
    pub betti: Vec<usize>,
    pub multigraded_betti: Vec<GradedBetti>,
    pub differentials: Vec<Differential>,
}

fn exponent_of(p: &Point) -> Result<Exponent> {
    let ints = p.try_to_ints()?;
    if ints.iter().any(|&x| x < 0) {
        return Err(Error::NegativeExponent(p.clone()));
    }
    Ok(ints.into_iter().map(|x| x as u64).collect())
}

fn join(vs: &[&Exponent], n: usize) -> Exponent {
    let mut j = vec![0u64; n];
    for v in vs {
        for (x, &y) in j.iter_mut().zip(v.iter()) {
            *x = (*x).max(y);
        }
    }
    j
}

pub fn build_resolution(a: &FinitePointSet) -> Result<Resolution> {
    let exps: Vec<Exponent> = a.points().iter().map(exponent_of).collect::<Result<_>>()?;
    if let Some(GenericityWitness::Pair {
        first,
        second,
        coordinate,
    }) = a
        .is_generic(GenericMode::Definition)
        .definition
        .and_then(|v| v.witness)
    {
        return Err(Error::NotGeneric {
            first,
            second,
            coordinate,
        });
    }
    for (i, x) in exps.iter().enumerate() {
        if let Some(j) = (0..exps.len()).find(|&j| j != i && exps[j].iter().zip(x).all(|(p, q)| p <= q)) {
            return Err(Error::NotMinimalGenerator {
                redundant: a.points()[i].clone(),
                dominating: a.points()[j].clone(),
            });
        }
    }
    let n = a.dim();
    let complex = a.enumerate_complex(None);
    let top = complex.dimension().max(0) as usize;
    let mut faces: Vec<Vec<Face>> = vec![Vec::new(); top + 1];
    for f in complex.faces().iter().filter(|f| !f.vertices.is_empty()) {
        faces[f.vertices.len() - 1].push(f.clone());
    }
    for group in &mut faces {
        group.sort_by(|x, y| x.vertices.cmp(&y.vertices));
    }
    let mut generators: Vec<Exponent> = exps;
    generators.sort();

    let face_exps: Vec<Vec<Vec<&Exponent>>> = faces
        .iter()
        .map(|g| {
            g.iter()
                .map(|f| {
                    f.vertices
                        .iter()
                        .map(|v| {
                            let e = exponent_of(v).expect("checked above");
                            let k = generators.binary_search(&e).expect("vertex is a generator");
                            &generators[k]
                        })
                        .collect()
                })
                .collect()
        })
        .collect();

    let mut differentials = Vec::new();
    for d in 1..faces.len() {
        let index: BTreeMap<&[Point], usize> = faces[d - 1]
            .iter()
            .enumerate()
            .map(|(i, f)| (f.vertices.as_slice(), i))
            .collect();
        let mut entries = Vec::new();
        for (col, f) in faces[d].iter().enumerate() {
            let whole = join(&face_exps[d][col], n);
            for k in 0..f.vertices.len() {
                let mut rest = f.vertices.clone();
                rest.remove(k);
                let row = index[rest.as_slice()];
                let sub = join(&face_exps[d - 1][row], n);
                entries.push(Entry {
                    row,
                    column: col,
                    sign: if k % 2 == 0 { 1 } else { -1 },
                    exponent: whole.iter().zip(&sub).map(|(x, y)| x - y).collect(),
                });
            }
        }
        entries.sort_by_key(|e| (e.column, e.row));
        differentials.push(Differential {
            degree: d,
            rows: faces[d - 1].len(),
            columns: faces[d].len(),
            entries,
        });
    }

    let betti: Vec<usize> = faces.iter().map(Vec::len).collect();
    let mut graded: BTreeMap<(usize, Exponent), usize> = BTreeMap::new();
    for (d, group) in face_exps.iter().enumerate() {
        for verts in group {
            *graded.entry((d, join(verts, n))).or_insert(0) += 1;
        }
    }
    let multigraded_betti = graded
        .into_iter()
        .map(|((degree, multidegree), count)| GradedBetti {
            degree,
            multidegree,
            count,
        })
        .collect();
    Ok(Resolution {
        generators,
        faces,
        betti,
        multigraded_betti,
        differentials,
    })
}

pub fn differentials(r: &Resolution) -> &[Differential] {
    &r.differentials
}

/// The first problem found by [`verify_chain`]. Face ids index
/// `faces[degree]`; `degree` is the homological degree of the column.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainFailure {
    pub degree: usize,
    pub column: usize,
    /// Row in degree `degree - 2`, or the generator index for the
    /// augmentation, or the row of a zero entry.
    pub row: usize,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainCheck {
    pub ok: bool,
    pub failure: Option<ChainFailure>,
}

fn columns_of(d: &Differential) -> Vec<Vec<&Entry>> {
    let mut cols: Vec<Vec<&Entry>> = vec![Vec::new(); d.columns];
    for e in &d.entries {
        cols[e.column].push(e);
    }
    cols
}

fn add_exp(a: &[u64], b: &[u64]) -> Exponent {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Checks `∂_{i-1} ∘ ∂_i = 0`, that the augmentation `e_a ↦ x^a` kills the
/// image of `∂_1`, and that no entry is a unit.
pub fn verify_chain(r: &Resolution) -> ChainCheck {
    let fail = |degree, column, row, reason: &str| ChainCheck {
        ok: false,
        failure: Some(ChainFailure {
            degree,
            column,
            row,
            reason: reason.to_string(),
        }),
    };
    for d in &r.differentials {
        if let Some(e) = d.entries.iter().find(|e| e.exponent.iter().all(|&x| x == 0)) {
            return fail(d.degree, e.column, e.row, "unit entry: resolution is not minimal");
        }
    }
    if let Some(d1) = r.differentials.first() {
        for (col, entries) in columns_of(d1).into_iter().enumerate() {
            let mut sum: BTreeMap<Exponent, i64> = BTreeMap::new();
            for e in entries {
                *sum.entry(add_exp(&e.exponent, &r.generators[e.row])).or_insert(0) += i64::from(e.sign);
            }
            if sum.values().any(|&c| c != 0) {
                return fail(1, col, 0, "augmentation does not vanish on the image");
            }
        }
    }
    for pair in r.differentials.windows(2) {
        let (lower, upper) = (&pair[0], &pair[1]);
        let lower_cols = columns_of(lower);
        for (col, entries) in columns_of(upper).into_iter().enumerate() {
            let mut sum: BTreeMap<(usize, Exponent), i64> = BTreeMap::new();
            for e in entries {
                for f in &lower_cols[e.row] {
                    *sum.entry((f.row, add_exp(&e.exponent, &f.exponent))).or_insert(0) +=
                        i64::from(e.sign * f.sign);
                }
            }
            if let Some(((row, _), _)) = sum.iter().find(|(_, &c)| c != 0) {
                return fail(upper.degree, col, *row, "composition of consecutive differentials is nonzero");
            }
        }
    }
    ChainCheck {
        ok: true,
        failure: None,
    }
}

/// `Σ (-1)^i β_i`.
pub fn euler_characteristic(r: &Resolution) -> i64 {
    r.betti
        .iter()
        .enumerate()
        .map(|(i, &b)| if i % 2 == 0 { b as i64 } else { -(b as i64) })
        .sum()
}

pub fn monomial(exponent: &[u64]) -> String {
    let factors: Vec<String> = exponent
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| if e == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, e) })
        .collect();
    if factors.is_empty() {
        "1".into()
    } else {
        factors.join("")
    }
}

/// Plain-text rendering: the Betti numbers, then each differential as a
/// dense matrix of signed monomials.
pub fn render_text(r: &Resolution) -> String {
    let mut out = String::new();
    let betti: Vec<String> = r.betti.iter().map(ToString::to_string).collect();
    let _ = writeln!(out, "betti: {}", betti.join(" "));
    for d in &r.differentials {
        let _ = writeln!(out, "d{}: {} x {}", d.degree, d.rows, d.columns);
        let mut cells = vec![vec!["0".to_string(); d.columns]; d.rows];
        for e in &d.entries {
            let sign = if e.sign < 0 { "-" } else { "" };
            cells[e.row][e.column] = format!("{}{}", sign, monomial(&e.exponent));
        }
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        for row in cells {
            let padded: Vec<String> = row.iter().map(|c| format!("{:>w$}", c, w = width)).collect();
            let _ = writeln!(out, "  [ {} ]", padded.join("  "));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(points: &[&[i64]]) -> FinitePointSet {
        FinitePointSet::new(points.iter().map(|c| Point::from_ints(c)).collect()).unwrap()
    }

    #[test]
    fn three_generators() {
        let r = build_resolution(&set(&[&[2, 0], &[1, 1], &[0, 2]])).unwrap();
        assert_eq!(r.betti, vec![3, 2]);
        let edges: Vec<Vec<Point>> = r.faces[1].iter().map(|f| f.vertices.clone()).collect();
        assert_eq!(
            edges,
            vec![
                vec![Point::from_ints(&[0, 2]), Point::from_ints(&[1, 1])],
                vec![Point::from_ints(&[1, 1]), Point::from_ints(&[2, 0])],
            ]
        );
        // column of {(1,1),(2,0)}: join (2,1)
        let d1 = &r.differentials[0];
        let col: Vec<&Entry> = d1.entries.iter().filter(|e| e.column == 1).collect();
        assert_eq!(col.len(), 2);
        let to_11 = col.iter().find(|e| e.row == 2).unwrap();
        let to_20 = col.iter().find(|e| e.row == 1).unwrap();
        assert_eq!(to_11.exponent, vec![0, 1]);
        assert_eq!(to_20.exponent, vec![1, 0]);
        assert_eq!(to_11.sign, -to_20.sign);
        assert!(verify_chain(&r).ok);
        assert_eq!(euler_characteristic(&r), 1);
    }

    #[test]
    fn single_generator() {
        let r = build_resolution(&set(&[&[5, 7]])).unwrap();
        assert_eq!(r.betti, vec![1]);
        assert!(r.differentials.is_empty());
        assert!(verify_chain(&r).ok);
    }

    #[test]
    fn non_generic_rejected_before_minimality() {
        let err = build_resolution(&set(&[&[2, 1], &[1, 2], &[2, 2]])).unwrap_err();
        assert_eq!(
            err,
            Error::NotGeneric {
                first: Point::from_ints(&[2, 1]),
                second: Point::from_ints(&[2, 2]),
                coordinate: 1
            }
        );
    }

    #[test]
    fn redundant_generator_rejected() {
        let err = build_resolution(&set(&[&[1, 2, 3], &[2, 3, 4]])).unwrap_err();
        assert_eq!(
            err,
            Error::NotMinimalGenerator {
                redundant: Point::from_ints(&[2, 3, 4]),
                dominating: Point::from_ints(&[1, 2, 3])
            }
        );
        assert!(matches!(build_resolution(&set(&[&[-1, 2]])), Err(Error::NegativeExponent(_))));
    }

    #[test]
    fn flipped_sign_detected() {
        let mut r = build_resolution(&set(&[&[2, 0], &[1, 1], &[0, 2]])).unwrap();
        r.differentials[0].entries[0].sign *= -1;
        let check = verify_chain(&r);
        assert!(!check.ok);
        assert_eq!(check.failure.unwrap().degree, 1);

        // a generic set in three variables with a two-step resolution
        let mut r = build_resolution(&set(&[&[0, 2, 4], &[1, 4, 0], &[4, 0, 1], &[2, 1, 2]])).unwrap();
        assert!(r.differentials.len() >= 2);
        assert!(verify_chain(&r).ok);
        r.differentials[1].entries[0].sign *= -1;
        assert!(!verify_chain(&r).ok);
    }

    #[test]
    fn text_rendering() {
        let r = build_resolution(&set(&[&[2, 0], &[1, 1], &[0, 2]])).unwrap();
        let text = render_text(&r);
        assert!(text.starts_with("betti: 3 2"));
        assert!(text.contains("x1"));
        assert_eq!(monomial(&[2, 0, 1]), "x1^2x3");
        assert_eq!(monomial(&[0, 0]), "1");
    }
}
