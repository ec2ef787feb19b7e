//! The input quadrangle `ABCD`: validation, diagonal intersection and
//! classification into convex, re-entrant and crossed shapes.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{
    cross, intersect_lines, line_through, point_in_open_segment, shoelace_signed_area, Point,
};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuadError {
    #[error("vertices {0} and {1} coincide")]
    DuplicateVertex(char, char),
    #[error("diagonals AC and BD are parallel")]
    ParallelDiagonals,
    #[error("opposite sides overlap along a segment")]
    UnclassifiableDegenerate,
}

/// Ordered vertices `A, B, C, D`: sides `AB, BC, CD, DA`, diagonals `AC, BD`.
///
/// Only constructible through [`Quadrangle::new`], so every value has
/// distinct vertices and non-parallel diagonals.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(
    try_from = "QuadrangleDoc<T>",
    into = "QuadrangleDoc<T>",
    bound = "T: Scalar"
)]
pub struct Quadrangle<T> {
    a: Point<T>,
    b: Point<T>,
    c: Point<T>,
    d: Point<T>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum QuadClass {
    Convex,
    ReEntrant,
    Crossed,
}

impl<T: Scalar> Quadrangle<T> {
    /// Validates four vertices as a quadrangle with non-parallel diagonals.
    pub fn new(a: Point<T>, b: Point<T>, c: Point<T>, d: Point<T>) -> Result<Self, QuadError> {
        let named = [('A', &a), ('B', &b), ('C', &c), ('D', &d)];
        for (i, (ni, pi)) in named.iter().enumerate() {
            for (nj, pj) in &named[i + 1..] {
                if pi == pj {
                    return Err(QuadError::DuplicateVertex(*ni, *nj));
                }
            }
        }
        if cross(&(&c - &a), &(&d - &b)).is_zero() {
            return Err(QuadError::ParallelDiagonals);
        }
        Ok(Quadrangle { a, b, c, d })
    }

    pub fn a(&self) -> &Point<T> {
        &self.a
    }

    pub fn b(&self) -> &Point<T> {
        &self.b
    }

    pub fn c(&self) -> &Point<T> {
        &self.c
    }

    pub fn d(&self) -> &Point<T> {
        &self.d
    }

    pub fn vertices(&self) -> [&Point<T>; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    /// `(B, C, D, A)`: the same quadrangle with labels shifted by one.
    pub fn rotated(&self) -> Self {
        Quadrangle {
            a: self.b.clone(),
            b: self.c.clone(),
            c: self.d.clone(),
            d: self.a.clone(),
        }
    }

    /// `(A, D, C, B)`: the same outline traversed the other way.
    pub fn reversed(&self) -> Self {
        Quadrangle {
            a: self.a.clone(),
            b: self.d.clone(),
            c: self.c.clone(),
            d: self.b.clone(),
        }
    }

    /// The point `O` where lines `AC` and `BD` meet. It need not lie on
    /// either diagonal segment.
    pub fn diagonal_intersection(&self) -> Point<T> {
        let ac = line_through(&self.a, &self.c).expect("validated: A != C");
        let bd = line_through(&self.b, &self.d).expect("validated: B != D");
        intersect_lines(&ac, &bd).expect("validated: diagonals not parallel")
    }

    /// Crossed when a pair of opposite sides meet at a point interior to
    /// both; convex when `O` is interior to both diagonals; re-entrant
    /// otherwise.
    pub fn classify(&self) -> Result<QuadClass, QuadError> {
        let (a, b, c, d) = (&self.a, &self.b, &self.c, &self.d);
        if segments_cross_properly(a, b, c, d)? || segments_cross_properly(b, c, d, a)? {
            return Ok(QuadClass::Crossed);
        }
        let o = self.diagonal_intersection();
        let inside_ac = point_in_open_segment(&o, a, c).expect("validated: A != C");
        let inside_bd = point_in_open_segment(&o, b, d).expect("validated: B != D");
        Ok(if inside_ac && inside_bd {
            QuadClass::Convex
        } else {
            QuadClass::ReEntrant
        })
    }

    /// Shoelace value of `ABCD`. Its magnitude is the area for simple
    /// quadrangles and the difference of the two lobe areas for crossed ones.
    pub fn signed_area(&self) -> T {
        shoelace_signed_area(&[
            self.a.clone(),
            self.b.clone(),
            self.c.clone(),
            self.d.clone(),
        ])
        .expect("four points")
    }
}

/// Whether segments `pq` and `rs` share a point interior to both.
fn segments_cross_properly<T: Scalar>(
    p: &Point<T>,
    q: &Point<T>,
    r: &Point<T>,
    s: &Point<T>,
) -> Result<bool, QuadError> {
    let pq = q - p;
    let rs = s - r;
    let denom = cross(&pq, &rs);
    if denom.is_zero() {
        if !cross(&pq, &(r - p)).is_zero() {
            return Ok(false);
        }
        // Collinear: overlap in more than a point is unclassifiable.
        let len = pq.norm_sq();
        let t_r = crate::geom::dot(&(r - p), &pq) / len.clone();
        let t_s = crate::geom::dot(&(s - p), &pq) / len;
        let (lo, hi) = if t_r < t_s { (t_r, t_s) } else { (t_s, t_r) };
        let overlap_lo = if lo > T::zero() { lo } else { T::zero() };
        let overlap_hi = if hi < T::one() { hi } else { T::one() };
        return if overlap_lo < overlap_hi {
            Err(QuadError::UnclassifiableDegenerate)
        } else {
            Ok(false)
        };
    }
    let rp = r - p;
    let t = cross(&rp, &rs) / denom.clone();
    let u = cross(&rp, &pq) / denom;
    let open = |v: &T| *v > T::zero() && *v < T::one();
    Ok(open(&t) && open(&u))
}

impl fmt::Display for QuadClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            QuadClass::Convex => "convex",
            QuadClass::ReEntrant => "re-entrant",
            QuadClass::Crossed => "crossed",
        })
    }
}

impl FromStr for QuadClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "convex" => Ok(QuadClass::Convex),
            "re-entrant" => Ok(QuadClass::ReEntrant),
            "crossed" => Ok(QuadClass::Crossed),
            other => Err(format!(
                "unknown class {other:?} (expected convex, re-entrant or crossed)"
            )),
        }
    }
}

/// JSON shape `{"A":["x","y"],"B":…,"C":…,"D":…}`.
#[derive(Serialize, Deserialize)]
#[serde(bound = "T: Scalar", deny_unknown_fields)]
pub struct QuadrangleDoc<T> {
    #[serde(rename = "A")]
    pub a: Point<T>,
    #[serde(rename = "B")]
    pub b: Point<T>,
    #[serde(rename = "C")]
    pub c: Point<T>,
    #[serde(rename = "D")]
    pub d: Point<T>,
}

impl<T: Scalar> TryFrom<QuadrangleDoc<T>> for Quadrangle<T> {
    type Error = QuadError;

    fn try_from(doc: QuadrangleDoc<T>) -> Result<Self, QuadError> {
        Quadrangle::new(doc.a, doc.b, doc.c, doc.d)
    }
}

impl<T: Scalar> From<Quadrangle<T>> for QuadrangleDoc<T> {
    fn from(q: Quadrangle<T>) -> Self {
        QuadrangleDoc {
            a: q.a,
            b: q.b,
            c: q.c,
            d: q.d,
        }
    }
}
