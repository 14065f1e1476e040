//! Exact coordinatewise order structure on `Q^n`.
//!
//! Points carry arbitrary-precision rationals. The order relations used
//! throughout the crate are the componentwise order `a <= b`, strict
//! domination `a << b` (smaller in every coordinate), and the orthant orders
//! `a <=_P b` iff `b - a` lies in the closed orthant `P`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// An exact point of `Q^n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point(Vec<Rational>);

impl Point {
    pub fn new(coords: Vec<Rational>) -> Self {
        Point(coords)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Point(coords.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn zero(n: usize) -> Self {
        Point(vec![Rational::zero(); n])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|c| c.is_integer())
    }

    /// The coordinates as machine integers, if every coordinate is an
    /// integer that fits.
    pub fn to_ints(&self) -> Option<Vec<i64>> {
        self.0
            .iter()
            .map(|c| if c.is_integer() { c.to_integer().to_i64() } else { None })
            .collect()
    }

    /// Like [`Point::to_ints`], but reports the offending coordinate.
    pub fn try_to_ints(&self) -> Result<Vec<i64>> {
        self.0
            .iter()
            .map(|c| {
                if c.is_integer() {
                    c.to_integer()
                        .to_i64()
                        .ok_or_else(|| Error::NonInteger(format!("{} (out of range)", c)))
                } else {
                    Err(Error::NonInteger(c.to_string()))
                }
            })
            .collect()
    }

    pub fn check_dim(&self, n: usize) -> Result<()> {
        if self.dim() == n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: n,
                found: self.dim(),
            })
        }
    }

    /// `self <= other` in every coordinate. Dimensions must agree.
    pub fn leq(&self, other: &Point) -> bool {
        debug_assert_eq!(self.dim(), other.dim());
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `self << other`: strictly smaller in every coordinate.
    pub fn strictly_below(&self, other: &Point) -> bool {
        debug_assert_eq!(self.dim(), other.dim());
        self.0.iter().zip(&other.0).all(|(a, b)| a < b)
    }

    pub fn add(&self, other: &Point) -> Point {
        Point(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Point) -> Point {
        Point(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn max_with(&self, other: &Point) -> Point {
        Point(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| if a >= b { a.clone() } else { b.clone() })
                .collect(),
        )
    }

    pub fn min_with(&self, other: &Point) -> Point {
        Point(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| if a <= b { a.clone() } else { b.clone() })
                .collect(),
        )
    }
}

impl From<&[i64]> for Point {
    fn from(v: &[i64]) -> Self {
        Point::from_ints(v)
    }
}

impl From<Vec<i64>> for Point {
    fn from(v: Vec<i64>) -> Self {
        Point::from_ints(&v)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", c)?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses `"p"`, `"-p"` or `"p/q"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Malformed(format!("not a rational number: {:?}", s));
    match s.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
    }
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let strings: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        strings.serialize(serializer)
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawScalar {
    Int(i64),
    Text(String),
}

impl<'de> Deserialize<'de> for Point {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<RawScalar>::deserialize(deserializer)?;
        raw.into_iter()
            .map(|r| match r {
                RawScalar::Int(i) => Ok(Rational::from_integer(i.into())),
                RawScalar::Text(s) => parse_rational(&s).map_err(serde::de::Error::custom),
            })
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(Point)
    }
}

fn common_dim(points: &[Point]) -> Result<usize> {
    let n = points.first().ok_or(Error::EmptyJoin)?.dim();
    for p in points {
        p.check_dim(n)?;
    }
    Ok(n)
}

/// Coordinatewise maximum of a nonempty set of points.
pub fn join(points: &[Point]) -> Result<Point> {
    common_dim(points)?;
    let mut acc = points[0].clone();
    for p in &points[1..] {
        acc = acc.max_with(p);
    }
    Ok(acc)
}

/// Coordinatewise minimum of a nonempty set of points.
pub fn meet(points: &[Point]) -> Result<Point> {
    common_dim(points)?;
    let mut acc = points[0].clone();
    for p in &points[1..] {
        acc = acc.min_with(p);
    }
    Ok(acc)
}

/// Strongest componentwise relation between two points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Equal,
    StrictlyBelow,
    Leq,
    StrictlyAbove,
    Geq,
    Incomparable,
}

impl Relation {
    pub fn is_leq(self) -> bool {
        matches!(self, Relation::Equal | Relation::StrictlyBelow | Relation::Leq)
    }

    pub fn is_geq(self) -> bool {
        matches!(self, Relation::Equal | Relation::StrictlyAbove | Relation::Geq)
    }

    pub fn reversed(self) -> Relation {
        match self {
            Relation::StrictlyBelow => Relation::StrictlyAbove,
            Relation::Leq => Relation::Geq,
            Relation::StrictlyAbove => Relation::StrictlyBelow,
            Relation::Geq => Relation::Leq,
            r => r,
        }
    }
}

pub fn compare(a: &Point, b: &Point) -> Result<Relation> {
    b.check_dim(a.dim())?;
    let (mut lt, mut eq, mut gt) = (0usize, 0usize, 0usize);
    for (x, y) in a.0.iter().zip(&b.0) {
        match x.cmp(y) {
            std::cmp::Ordering::Less => lt += 1,
            std::cmp::Ordering::Equal => eq += 1,
            std::cmp::Ordering::Greater => gt += 1,
        }
    }
    let n = a.dim();
    Ok(match (lt, eq, gt) {
        (_, e, _) if e == n => Relation::Equal,
        (l, _, 0) if l == n => Relation::StrictlyBelow,
        (_, _, 0) => Relation::Leq,
        (0, _, g) if g == n => Relation::StrictlyAbove,
        (0, _, _) => Relation::Geq,
        _ => Relation::Incomparable,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

/// A closed orthant of `R^n`, given by a sign per coordinate.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Orthant {
    signs: Vec<Sign>,
}

impl Orthant {
    pub fn new(signs: Vec<Sign>) -> Self {
        Orthant { signs }
    }

    /// The nonnegative orthant, whose order is the componentwise order.
    pub fn positive(n: usize) -> Self {
        Orthant {
            signs: vec![Sign::Plus; n],
        }
    }

    /// All `2^n` orthants, the positive one first.
    pub fn all(n: usize) -> impl Iterator<Item = Orthant> {
        (0u64..(1u64 << n)).map(move |mask| Orthant {
            signs: (0..n)
                .map(|i| if mask >> i & 1 == 1 { Sign::Minus } else { Sign::Plus })
                .collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.signs.len()
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn is_negated(&self, i: usize) -> bool {
        self.signs[i] == Sign::Minus
    }

    /// Negates coordinate `i` iff sign `i` is minus. An involution.
    pub fn reflect(&self, a: &Point) -> Result<Point> {
        a.check_dim(self.dim())?;
        Ok(Point(
            a.0.iter()
                .zip(&self.signs)
                .map(|(c, s)| if *s == Sign::Minus { -c } else { c.clone() })
                .collect(),
        ))
    }

    pub fn reflect_ints(&self, a: &[i64]) -> Vec<i64> {
        a.iter()
            .zip(&self.signs)
            .map(|(&c, s)| if *s == Sign::Minus { -c } else { c })
            .collect()
    }

    pub fn contains(&self, a: &Point) -> Result<bool> {
        a.check_dim(self.dim())?;
        Ok(a.0.iter().zip(&self.signs).all(|(c, s)| match s {
            Sign::Plus => !c.is_negative(),
            Sign::Minus => !c.is_positive(),
        }))
    }

    pub fn contains_ints(&self, a: &[i64]) -> bool {
        a.iter().zip(&self.signs).all(|(&c, s)| match s {
            Sign::Plus => c >= 0,
            Sign::Minus => c <= 0,
        })
    }

    /// `a <=_P b`, i.e. `b - a` lies in this orthant.
    pub fn leq(&self, a: &Point, b: &Point) -> Result<bool> {
        a.check_dim(self.dim())?;
        b.check_dim(self.dim())?;
        self.contains(&b.sub(a))
    }

    pub fn leq_ints(&self, a: &[i64], b: &[i64]) -> bool {
        a.iter().zip(b).zip(&self.signs).all(|((&x, &y), s)| match s {
            Sign::Plus => x <= y,
            Sign::Minus => x >= y,
        })
    }
}

impl fmt::Display for Orthant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.signs {
            f.write_str(if *s == Sign::Plus { "+" } else { "-" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Orthant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Orthant({})", self)
    }
}

impl FromStr for Orthant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '+' => Ok(Sign::Plus),
                '-' => Ok(Sign::Minus),
                _ => Err(Error::Malformed(format!("bad orthant sign {:?} in {:?}", c, s))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Orthant::new)
    }
}

/// Axis-parallel box `[lo, hi]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Box {
    lo: Point,
    hi: Point,
}

impl Box {
    pub fn new(lo: Point, hi: Point) -> Result<Self> {
        hi.check_dim(lo.dim())?;
        if !lo.leq(&hi) {
            return Err(Error::InvalidBox { lo, hi });
        }
        Ok(Box { lo, hi })
    }

    /// `cuboid(a, b) = [a ∧ b, a ∨ b]`.
    pub fn cuboid(a: &Point, b: &Point) -> Result<Self> {
        b.check_dim(a.dim())?;
        Ok(Box {
            lo: a.min_with(b),
            hi: a.max_with(b),
        })
    }

    pub fn lo(&self) -> &Point {
        &self.lo
    }

    pub fn hi(&self) -> &Point {
        &self.hi
    }

    pub fn contains(&self, x: &Point) -> Result<bool> {
        x.check_dim(self.lo.dim())?;
        Ok(self.lo.leq(x) && x.leq(&self.hi))
    }

    /// Integer corners, when both are integral.
    pub fn to_int_corners(&self) -> Result<(Vec<i64>, Vec<i64>)> {
        Ok((self.lo.try_to_ints()?, self.hi.try_to_ints()?))
    }
}

pub fn cuboid_contains(a: &Point, b: &Point, x: &Point) -> Result<bool> {
    Box::cuboid(a, b)?.contains(x)
}

/// Replaces every coordinate value by its rank among the values taken in
/// that coordinate. The map is strictly increasing per coordinate, so joins,
/// `<=` and `<<` are preserved and reflected exactly; comparisons afterwards
/// are on small integers.
pub fn coordinate_ranks(points: &[Point]) -> Vec<Vec<u32>> {
    let Some(first) = points.first() else {
        return Vec::new();
    };
    let n = first.dim();
    let mut ranks = vec![vec![0u32; n]; points.len()];
    for i in 0..n {
        let mut values: Vec<&Rational> = points.iter().map(|p| &p.0[i]).collect();
        values.sort();
        values.dedup();
        for (k, p) in points.iter().enumerate() {
            ranks[k][i] = values.binary_search(&&p.0[i]).expect("value present") as u32;
        }
    }
    ranks
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    fn pt(cs: &[&str]) -> Point {
        Point::new(cs.iter().map(|c| q(c)).collect())
    }

    #[test]
    fn join_examples() {
        let j = join(&[Point::from_ints(&[1, 2]), Point::from_ints(&[3, 0])]).unwrap();
        assert_eq!(j, Point::from_ints(&[3, 2]));
        let single = Point::from_ints(&[5, -1, 7]);
        assert_eq!(join(std::slice::from_ref(&single)).unwrap(), single);
        let ex2 = [pt(&["0", "0", "1"]), pt(&["1", "1", "0"]), pt(&["2", "1/2", "1/2"])];
        assert_eq!(join(&ex2).unwrap(), Point::from_ints(&[2, 1, 1]));
        assert_eq!(join(&[]), Err(Error::EmptyJoin));
        assert!(matches!(
            join(&[Point::from_ints(&[1]), Point::from_ints(&[1, 2])]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn compare_examples() {
        let p = Point::from_ints;
        assert_eq!(compare(&p(&[0, 0]), &p(&[1, 1])).unwrap(), Relation::StrictlyBelow);
        assert_eq!(compare(&p(&[1, 0]), &p(&[1, 2])).unwrap(), Relation::Leq);
        assert_eq!(compare(&p(&[1, -1]), &p(&[0, 0])).unwrap(), Relation::Incomparable);
        assert_eq!(compare(&p(&[2, 2]), &p(&[2, 2])).unwrap(), Relation::Equal);
        assert_eq!(compare(&p(&[3, 2]), &p(&[2, 2])).unwrap(), Relation::Geq);
        assert!(compare(&p(&[1]), &p(&[1, 2])).is_err());
    }

    #[test]
    fn reflect_examples() {
        let o: Orthant = "+-".parse().unwrap();
        assert_eq!(o.reflect(&Point::from_ints(&[2, -3])).unwrap(), Point::from_ints(&[2, 3]));
        let id = Orthant::positive(2);
        let a = Point::from_ints(&[4, -9]);
        assert_eq!(id.reflect(&a).unwrap(), a);
        let neg: Orthant = "--".parse().unwrap();
        let r = neg.reflect(&Point::from_ints(&[1, 1])).unwrap();
        assert_eq!(r, Point::from_ints(&[-1, -1]));
        assert!(neg.contains(&r).unwrap());
        assert!(Point::zero(2).leq(&neg.reflect(&r).unwrap()));
        assert!("+x".parse::<Orthant>().is_err());
    }

    #[test]
    fn cuboid_examples() {
        let p = Point::from_ints;
        assert!(cuboid_contains(&p(&[0, 0]), &p(&[2, -2]), &p(&[1, -1])).unwrap());
        assert!(cuboid_contains(&p(&[1, 1]), &p(&[1, 1]), &p(&[1, 1])).unwrap());
        assert!(!cuboid_contains(&p(&[0, 0]), &p(&[2, -2]), &p(&[3, 0])).unwrap());
        assert!(Box::new(p(&[1, 0]), p(&[0, 0])).is_err());
    }

    #[test]
    fn ranks_preserve_order() {
        let pts = [pt(&["1/2", "3"]), pt(&["-7", "3"]), pt(&["1/3", "10"])];
        let r = coordinate_ranks(&pts);
        assert_eq!(r, vec![vec![2, 0], vec![0, 0], vec![1, 1]]);
    }

    #[test]
    fn serde_strings() {
        let p = pt(&["1/2", "-3", "0"]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"["1/2","-3","0"]"#);
        let back: Point = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        let mixed: Point = serde_json::from_str(r#"[1, "2/4"]"#).unwrap();
        assert_eq!(mixed, pt(&["1", "1/2"]));
        assert!(serde_json::from_str::<Point>(r#"["1/0"]"#).is_err());
    }

    mod props {
        use super::super::*;
        use proptest::prelude::*;

        fn point(n: usize) -> impl Strategy<Value = Point> {
            prop::collection::vec((-6i64..6, 1i64..4), n).prop_map(|v| {
                Point::new(v.into_iter().map(|(p, q)| Rational::new(p.into(), q.into())).collect())
            })
        }

        fn orthant(n: usize) -> impl Strategy<Value = Orthant> {
            prop::collection::vec(prop::bool::ANY, n).prop_map(|v| {
                Orthant::new(v.into_iter().map(|b| if b { Sign::Minus } else { Sign::Plus }).collect())
            })
        }

        proptest! {
            #[test]
            fn join_lattice_laws(a in point(3), b in point(3), c in point(3)) {
                prop_assert_eq!(join(&[a.clone(), a.clone()]).unwrap(), a.clone());
                prop_assert_eq!(join(&[a.clone(), b.clone()]).unwrap(), join(&[b.clone(), a.clone()]).unwrap());
                let left = join(&[join(&[a.clone(), b.clone()]).unwrap(), c.clone()]).unwrap();
                let right = join(&[a.clone(), join(&[b.clone(), c.clone()]).unwrap()]).unwrap();
                prop_assert_eq!(&left, &right);
                prop_assert!(join(&[a.clone(), b.clone()]).unwrap().leq(&left));
            }

            #[test]
            fn compare_is_antisymmetric(a in point(3), b in point(3)) {
                let ab = compare(&a, &b).unwrap();
                prop_assert_eq!(ab.reversed(), compare(&b, &a).unwrap());
                prop_assert_eq!(ab == Relation::StrictlyBelow, a.strictly_below(&b));
                prop_assert_eq!(ab.is_leq(), a.leq(&b));
            }

            #[test]
            fn reflect_is_order_isomorphism(o in orthant(3), a in point(3), b in point(3)) {
                let ra = o.reflect(&a).unwrap();
                prop_assert_eq!(o.reflect(&ra).unwrap(), a.clone());
                prop_assert_eq!(o.leq(&a, &b).unwrap(), ra.leq(&o.reflect(&b).unwrap()));
                prop_assert_eq!(o.contains(&a).unwrap(), Point::zero(3).leq(&ra));
            }

            #[test]
            fn cuboid_symmetric(a in point(2), b in point(2), x in point(2)) {
                prop_assert_eq!(cuboid_contains(&a, &b, &x).unwrap(), cuboid_contains(&b, &a, &x).unwrap());
            }
        }
    }
}
