//! 2D kernel: points, vectors, lines and the predicates built on them.

use std::ops::{Add, Mul, Neg, Sub};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("points coincide; no unique line passes through them")]
    CoincidentPoints,
    #[error("lines are parallel (or coincident)")]
    ParallelLines,
    #[error("segment endpoints coincide")]
    DegenerateSegment,
    #[error("a polygon needs at least 3 points, got {0}")]
    TooFewPoints(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Point<T> {
    pub x: T,
    pub y: T,
}

/// A displacement between two points.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Vec2<T> {
    pub dx: T,
    pub dy: T,
}

/// Infinite line `base + t * dir`; `dir` is never zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Line<T> {
    base: Point<T>,
    dir: Vec2<T>,
}

impl<T: Scalar> Point<T> {
    pub fn new(x: T, y: T) -> Self {
        Point { x, y }
    }

    pub fn origin() -> Self {
        Point::new(T::zero(), T::zero())
    }

    /// Position vector of the point.
    pub fn to_vec(&self) -> Vec2<T> {
        Vec2::new(self.x.clone(), self.y.clone())
    }

    pub fn midpoint(&self, other: &Point<T>) -> Point<T> {
        Point::new(
            (self.x.clone() + other.x.clone()) * T::half(),
            (self.y.clone() + other.y.clone()) * T::half(),
        )
    }

    /// Squared Euclidean distance; exact for rational scalars.
    pub fn distance_sq(&self, other: &Point<T>) -> T {
        (other - self).norm_sq()
    }

    /// Converts each coordinate through `f64`.
    pub fn to_f64(&self) -> Point<f64> {
        Point::new(self.x.approx_f64(), self.y.approx_f64())
    }

    pub fn to_text(&self) -> [String; 2] {
        [self.x.to_text(), self.y.to_text()]
    }
}

impl<T: Scalar> Vec2<T> {
    pub fn new(dx: T, dy: T) -> Self {
        Vec2 { dx, dy }
    }

    pub fn is_zero(&self) -> bool {
        self.dx.is_zero() && self.dy.is_zero()
    }

    pub fn norm_sq(&self) -> T {
        dot(self, self)
    }

    pub fn scale(&self, factor: &T) -> Vec2<T> {
        Vec2::new(
            self.dx.clone() * factor.clone(),
            self.dy.clone() * factor.clone(),
        )
    }
}

impl<T: Scalar> Line<T> {
    /// Builds a line from a base point and a direction; `None` if `dir` is zero.
    pub fn new(base: Point<T>, dir: Vec2<T>) -> Option<Self> {
        if dir.is_zero() {
            None
        } else {
            Some(Line { base, dir })
        }
    }

    pub fn base(&self) -> &Point<T> {
        &self.base
    }

    pub fn dir(&self) -> &Vec2<T> {
        &self.dir
    }

    pub fn contains(&self, p: &Point<T>) -> bool {
        cross(&self.dir, &(p - &self.base)).is_zero()
    }

    pub fn point_at(&self, t: &T) -> Point<T> {
        &self.base + &self.dir.scale(t)
    }
}

/// `u.dx * v.dy - u.dy * v.dx`; zero iff the vectors are parallel or one is zero.
pub fn cross<T: Scalar>(u: &Vec2<T>, v: &Vec2<T>) -> T {
    u.dx.clone() * v.dy.clone() - u.dy.clone() * v.dx.clone()
}

pub fn dot<T: Scalar>(u: &Vec2<T>, v: &Vec2<T>) -> T {
    u.dx.clone() * v.dx.clone() + u.dy.clone() * v.dy.clone()
}

pub fn line_through<T: Scalar>(p: &Point<T>, q: &Point<T>) -> Result<Line<T>, GeomError> {
    Line::new(p.clone(), q - p).ok_or(GeomError::CoincidentPoints)
}

/// Unique common point of two lines, solved by Cramer's rule.
///
/// Coincident lines are reported as [`GeomError::ParallelLines`].
pub fn intersect_lines<T: Scalar>(l1: &Line<T>, l2: &Line<T>) -> Result<Point<T>, GeomError> {
    let denom = cross(&l1.dir, &l2.dir);
    if denom.is_zero() {
        return Err(GeomError::ParallelLines);
    }
    let t = cross(&(&l2.base - &l1.base), &l2.dir) / denom;
    Ok(l1.point_at(&t))
}

/// True iff `p`, `q`, `r` lie on one line; coincident points count as collinear.
pub fn collinear<T: Scalar>(p: &Point<T>, q: &Point<T>, r: &Point<T>) -> bool {
    cross(&(q - p), &(r - p)).is_zero()
}

/// True iff `p` lies strictly between `a` and `b` on segment `ab`.
pub fn point_in_open_segment<T: Scalar>(
    p: &Point<T>,
    a: &Point<T>,
    b: &Point<T>,
) -> Result<bool, GeomError> {
    if a == b {
        return Err(GeomError::DegenerateSegment);
    }
    if !collinear(a, b, p) {
        return Ok(false);
    }
    // p = a + t (b - a); t is the projection ratio.
    let ab = b - a;
    let t = dot(&(p - a), &ab) / ab.norm_sq();
    Ok(t > T::zero() && t < T::one())
}

/// Signed shoelace area; positive for counter-clockwise order.
pub fn shoelace_signed_area<T: Scalar>(points: &[Point<T>]) -> Result<T, GeomError> {
    if points.len() < 3 {
        return Err(GeomError::TooFewPoints(points.len()));
    }
    let twice = points
        .iter()
        .zip(points.iter().cycle().skip(1))
        .fold(T::zero(), |acc, (p, q)| {
            acc + p.x.clone() * q.y.clone() - q.x.clone() * p.y.clone()
        });
    Ok(twice * T::half())
}

/// Signed area of triangle `pqr`.
pub fn triangle_signed_area<T: Scalar>(p: &Point<T>, q: &Point<T>, r: &Point<T>) -> T {
    cross(&(q - p), &(r - p)) * T::half()
}

impl<'a, T: Scalar> Sub<&'a Point<T>> for &'a Point<T> {
    type Output = Vec2<T>;

    fn sub(self, rhs: &'a Point<T>) -> Vec2<T> {
        Vec2::new(
            self.x.clone() - rhs.x.clone(),
            self.y.clone() - rhs.y.clone(),
        )
    }
}

impl<T: Scalar> Sub for Point<T> {
    type Output = Vec2<T>;

    fn sub(self, rhs: Point<T>) -> Vec2<T> {
        &self - &rhs
    }
}

impl<'a, T: Scalar> Add<&'a Vec2<T>> for &'a Point<T> {
    type Output = Point<T>;

    fn add(self, rhs: &'a Vec2<T>) -> Point<T> {
        Point::new(
            self.x.clone() + rhs.dx.clone(),
            self.y.clone() + rhs.dy.clone(),
        )
    }
}

impl<T: Scalar> Add<Vec2<T>> for Point<T> {
    type Output = Point<T>;

    fn add(self, rhs: Vec2<T>) -> Point<T> {
        &self + &rhs
    }
}

impl<T: Scalar> Add for Vec2<T> {
    type Output = Vec2<T>;

    fn add(self, rhs: Vec2<T>) -> Vec2<T> {
        Vec2::new(self.dx + rhs.dx, self.dy + rhs.dy)
    }
}

impl<T: Scalar> Sub for Vec2<T> {
    type Output = Vec2<T>;

    fn sub(self, rhs: Vec2<T>) -> Vec2<T> {
        Vec2::new(self.dx - rhs.dx, self.dy - rhs.dy)
    }
}

impl<T: Scalar> Neg for Vec2<T> {
    type Output = Vec2<T>;

    fn neg(self) -> Vec2<T> {
        Vec2::new(-self.dx, -self.dy)
    }
}

impl<T: Scalar> Mul<T> for Vec2<T> {
    type Output = Vec2<T>;

    fn mul(self, rhs: T) -> Vec2<T> {
        self.scale(&rhs)
    }
}

impl<T: Scalar> Serialize for Point<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_text().serialize(serializer)
    }
}

impl<'de, T: Scalar> Deserialize<'de> for Point<T> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let [x, y] = <[String; 2]>::deserialize(deserializer)?;
        let x = T::parse_text(&x).map_err(D::Error::custom)?;
        let y = T::parse_text(&y).map_err(D::Error::custom)?;
        Ok(Point::new(x, y))
    }
}
