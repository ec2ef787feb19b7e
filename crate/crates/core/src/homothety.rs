//! Homothety and the homothetic parallelogram of a quadrangle.
//!
//! For a ratio `λ`, each vertex `X` of `ABCD` is the center of a homothety
//! applied to its two neighbours, giving the dividing points `X_Y^λ`. The line
//! through the two dividing points around `A` (and likewise around `B`, `C`,
//! `D`) is parallel to a diagonal, and the four lines bound a parallelogram
//! `K L M N`:
//!
//! ```text
//! K = lineA ∩ lineB    L = lineB ∩ lineC    M = lineC ∩ lineD    N = lineD ∩ lineA
//! ```
//!
//! At `λ = 1` all four lines pass through the diagonal intersection `O` and
//! the parallelogram collapses to that point.

use serde::{Deserialize, Serialize};

use crate::geom::{intersect_lines, line_through, Line, Point};
use crate::quadrangle::Quadrangle;
use crate::scalar::Scalar;

/// `center + ratio * (target - center)`.
pub fn homothety<T: Scalar>(center: &Point<T>, target: &Point<T>, ratio: &T) -> Point<T> {
    center + &(target - center).scale(ratio)
}

/// The eight dividing points; `a_b` is `A_B^λ`, the image of `B` under the
/// homothety centered at `A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DividingPoints<T> {
    pub a_b: Point<T>,
    pub a_d: Point<T>,
    pub b_a: Point<T>,
    pub b_c: Point<T>,
    pub c_b: Point<T>,
    pub c_d: Point<T>,
    pub d_c: Point<T>,
    pub d_a: Point<T>,
}

impl<T: Scalar> DividingPoints<T> {
    pub fn new(q: &Quadrangle<T>, ratio: &T) -> Self {
        let (a, b, c, d) = (q.a(), q.b(), q.c(), q.d());
        DividingPoints {
            a_b: homothety(a, b, ratio),
            a_d: homothety(a, d, ratio),
            b_a: homothety(b, a, ratio),
            b_c: homothety(b, c, ratio),
            c_b: homothety(c, b, ratio),
            c_d: homothety(c, d, ratio),
            d_c: homothety(d, c, ratio),
            d_a: homothety(d, a, ratio),
        }
    }

    /// `(label, point)` pairs in `A_B, A_D, B_A, B_C, C_B, C_D, D_C, D_A` order.
    pub fn labeled(&self) -> [(&'static str, &Point<T>); 8] {
        [
            ("A_B", &self.a_b),
            ("A_D", &self.a_d),
            ("B_A", &self.b_a),
            ("B_C", &self.b_c),
            ("C_B", &self.c_b),
            ("C_D", &self.c_d),
            ("D_C", &self.d_c),
            ("D_A", &self.d_a),
        ]
    }
}

/// The parallelogram `K L M N`, or the point `O` when `λ = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", bound = "T: Scalar")]
pub enum HomotheticResult<T> {
    #[serde(rename = "parallelogram")]
    Parallelogram {
        #[serde(rename = "K")]
        k: Point<T>,
        #[serde(rename = "L")]
        l: Point<T>,
        #[serde(rename = "M")]
        m: Point<T>,
        #[serde(rename = "N")]
        n: Point<T>,
    },
    #[serde(rename = "point")]
    DegeneratePoint {
        #[serde(rename = "O")]
        o: Point<T>,
    },
}

impl<T: Scalar> HomotheticResult<T> {
    /// `[K, L, M, N]`; all four equal `O` for the degenerate case.
    pub fn vertices(&self) -> [Point<T>; 4] {
        match self {
            HomotheticResult::Parallelogram { k, l, m, n } => {
                [k.clone(), l.clone(), m.clone(), n.clone()]
            }
            HomotheticResult::DegeneratePoint { o } => [o.clone(), o.clone(), o.clone(), o.clone()],
        }
    }

    pub fn is_degenerate(&self) -> bool {
        matches!(self, HomotheticResult::DegeneratePoint { .. })
    }
}

/// The four construction lines `[lineA, lineB, lineC, lineD]`.
///
/// `lineA` and `lineC` run parallel to `BD`, `lineB` and `lineD` to `AC`. At
/// `λ = 0` the two dividing points of a vertex coincide with it, and the line
/// is the limiting one: through the vertex, parallel to its diagonal.
pub fn construction_lines<T: Scalar>(q: &Quadrangle<T>, ratio: &T) -> [Line<T>; 4] {
    let pts = DividingPoints::new(q, ratio);
    let bd = q.d() - q.b();
    let ac = q.c() - q.a();
    let through = |p: &Point<T>, r: &Point<T>, limit: &crate::geom::Vec2<T>| {
        line_through(p, r).unwrap_or_else(|_| {
            Line::new(p.clone(), limit.clone()).expect("validated: diagonal has nonzero length")
        })
    };
    [
        through(&pts.a_d, &pts.a_b, &bd),
        through(&pts.b_a, &pts.b_c, &ac),
        through(&pts.c_b, &pts.c_d, &bd),
        through(&pts.d_c, &pts.d_a, &ac),
    ]
}

/// Builds the homothetic parallelogram of `q` for `ratio` by intersecting
/// the construction lines.
pub fn construct<T: Scalar>(q: &Quadrangle<T>, ratio: &T) -> HomotheticResult<T> {
    if ratio.is_one() {
        return HomotheticResult::DegeneratePoint {
            o: q.diagonal_intersection(),
        };
    }
    let [la, lb, lc, ld] = construction_lines(q, ratio);
    // Consecutive lines are parallel to different diagonals.
    let meet = |l1: &Line<T>, l2: &Line<T>| {
        intersect_lines(l1, l2).expect("validated: diagonals not parallel")
    };
    HomotheticResult::Parallelogram {
        k: meet(&la, &lb),
        l: meet(&lb, &lc),
        m: meet(&lc, &ld),
        n: meet(&ld, &la),
    }
}

/// Vertices from the closed form `V = (1 - λ)(X + Y) + (2λ - 1) O`, where
/// `XY` is the side the vertex sits on (`AB` for `K`, `BC` for `L`, ...).
pub fn closed_form_vertices<T: Scalar>(q: &Quadrangle<T>, ratio: &T) -> [Point<T>; 4] {
    let o = q.diagonal_intersection().to_vec();
    let side_weight = T::one() - ratio.clone();
    let center_weight = ratio.clone() + ratio.clone() - T::one();
    let vertex = |x: &Point<T>, y: &Point<T>| {
        let v = (x.to_vec() + y.to_vec()).scale(&side_weight) + o.scale(&center_weight);
        Point::new(v.dx, v.dy)
    };
    let (a, b, c, d) = (q.a(), q.b(), q.c(), q.d());
    [vertex(a, b), vertex(b, c), vertex(c, d), vertex(d, a)]
}

/// Checks `X_Y^λ = Y_X^{1-λ}` on all four sides.
pub fn homothety_identity_check<T: Scalar>(q: &Quadrangle<T>, ratio: &T) -> bool {
    let complement = T::one() - ratio.clone();
    let [a, b, c, d] = q.vertices();
    [(a, b), (b, c), (c, d), (d, a)]
        .iter()
        .all(|(x, y)| homothety(x, y, ratio) == homothety(y, x, &complement))
}
