//! Homothetic parallelograms of a quadrangle.
//!
//! Given a quadrangle `ABCD` with non-parallel diagonals and a ratio `λ`, the
//! lines through the homothetic images of each vertex's neighbours bound a
//! parallelogram (the Varignon parallelogram at `λ = 1/2`, Wittenbauer's at
//! `λ = 1/3`). This crate constructs it in exact rational arithmetic, checks
//! its area, perimeter, shape and perspectivity identities instance by
//! instance, and renders SVG figures.
//!
//! All geometry is generic over [`Scalar`]; the aliases below fix it to
//! [`Rational`] for exact work or `f64` for drawing.

pub mod cli;
pub mod generator;
pub mod geom;
pub mod homothety;
pub mod quadrangle;
pub mod render;
pub mod scalar;
pub mod theorems;

pub use geom::{GeomError, Line, Point, Vec2};
pub use homothety::{construct, HomotheticResult};
pub use quadrangle::{QuadClass, QuadError, Quadrangle};
pub use scalar::{ratio, ParseScalarError, Rational, Scalar};

pub type RatPoint = Point<Rational>;
pub type RatVec = Vec2<Rational>;
pub type RatLine = Line<Rational>;
pub type RatQuadrangle = Quadrangle<Rational>;
pub type RatHomothetic = HomotheticResult<Rational>;

pub type F64Point = Point<f64>;
pub type F64Quadrangle = Quadrangle<f64>;
pub type F64Homothetic = HomotheticResult<f64>;
