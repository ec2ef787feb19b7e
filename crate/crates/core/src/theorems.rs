//! Instance-level verification of the homothetic parallelogram identities.
//!
//! Every verifier evaluates both sides of an identity exactly and records
//! them as canonical text in a [`VerificationReport`]. Ratio statements are
//! checked in squared, cross-multiplied form so no square roots are needed:
//! `|a| / |b| = c / d` becomes `a² d² = b² c²`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{collinear, cross, dot, shoelace_signed_area, triangle_signed_area, Point};
use crate::homothety::{construct, homothety, homothety_identity_check, HomotheticResult};
use crate::quadrangle::{QuadClass, Quadrangle};
use crate::scalar::{ratio, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ClaimId {
    AreaFormula,
    SidesParallelToDiagonals,
    SimilarAcrossLambda,
    RectangleIffPerpendicular,
    RhombusIffEqualDiagonals,
    PerimeterRatio,
    PerspectiveCollinear,
    PerspectiveRatio,
    HomothetyIdentity,
    MidpointSymmetry,
    VarignonArea,
    WittenbauerArea,
    AreaDecomposition,
}

impl ClaimId {
    pub const ALL: [ClaimId; 13] = [
        ClaimId::AreaFormula,
        ClaimId::SidesParallelToDiagonals,
        ClaimId::SimilarAcrossLambda,
        ClaimId::RectangleIffPerpendicular,
        ClaimId::RhombusIffEqualDiagonals,
        ClaimId::PerimeterRatio,
        ClaimId::PerspectiveCollinear,
        ClaimId::PerspectiveRatio,
        ClaimId::HomothetyIdentity,
        ClaimId::MidpointSymmetry,
        ClaimId::VarignonArea,
        ClaimId::WittenbauerArea,
        ClaimId::AreaDecomposition,
    ];
}

impl fmt::Display for ClaimId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for ClaimId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ClaimId::ALL
            .into_iter()
            .find(|c| c.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown claim {s:?}"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("the homothetic parallelogram degenerates to a point at ratio 1")]
    DegenerateParallelogram,
}

/// One exact comparison: `lhs` and `rhs` are canonical text forms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub label: String,
    pub lhs: String,
    pub rhs: String,
}

impl Check {
    fn new(label: impl Into<String>, lhs: impl Into<String>, rhs: impl Into<String>) -> Self {
        Check {
            label: label.into(),
            lhs: lhs.into(),
            rhs: rhs.into(),
        }
    }

    fn scalars<T: Scalar>(label: impl Into<String>, lhs: &T, rhs: &T) -> Self {
        Check::new(label, lhs.to_text(), rhs.to_text())
    }

    fn points<T: Scalar>(label: impl Into<String>, lhs: &Point<T>, rhs: &Point<T>) -> Self {
        Check::new(label, point_text(lhs), point_text(rhs))
    }

    fn iff(label: impl Into<String>, lhs: bool, rhs: bool) -> Self {
        Check::new(label, lhs.to_string(), rhs.to_string())
    }

    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub checks: Vec<Check>,
    /// Supporting values (quadrangle class, `S`, ...), not compared.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub values: BTreeMap<String, String>,
}

/// Quadrangle in its JSON text form, embedded in every report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadText {
    #[serde(rename = "A")]
    pub a: [String; 2],
    #[serde(rename = "B")]
    pub b: [String; 2],
    #[serde(rename = "C")]
    pub c: [String; 2],
    #[serde(rename = "D")]
    pub d: [String; 2],
}

impl<T: Scalar> From<&Quadrangle<T>> for QuadText {
    fn from(q: &Quadrangle<T>) -> Self {
        QuadText {
            a: q.a().to_text(),
            b: q.b().to_text(),
            c: q.c().to_text(),
            d: q.d().to_text(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub claim: ClaimId,
    pub passed: bool,
    pub quad: QuadText,
    pub lambdas: Vec<String>,
    pub witness: Witness,
}

impl VerificationReport {
    fn new<T: Scalar>(claim: ClaimId, q: &Quadrangle<T>, lambdas: &[&T], witness: Witness) -> Self {
        VerificationReport {
            claim,
            passed: witness.checks.iter().all(Check::holds),
            quad: q.into(),
            lambdas: lambdas.iter().map(|l| l.to_text()).collect(),
            witness,
        }
    }

    fn with_checks<T: Scalar>(
        claim: ClaimId,
        q: &Quadrangle<T>,
        lambdas: &[&T],
        checks: Vec<Check>,
    ) -> Self {
        Self::new(
            claim,
            q,
            lambdas,
            Witness {
                checks,
                values: BTreeMap::new(),
            },
        )
    }

    fn with_value(mut self, key: &str, value: impl Into<String>) -> Self {
        self.witness.values.insert(key.to_string(), value.into());
        self
    }

    /// Re-evaluates the recorded witness; agrees with `passed` for every
    /// report produced by this module.
    pub fn recheck(&self) -> bool {
        self.witness.checks.iter().all(Check::holds)
    }
}

fn point_text<T: Scalar>(p: &Point<T>) -> String {
    format!("({}, {})", p.x.to_text(), p.y.to_text())
}

fn two<T: Scalar>() -> T {
    T::one() + T::one()
}

fn square<T: Scalar>(v: T) -> T {
    v.clone() * v
}

/// `|shoelace(K, L, M, N)|`, zero for the degenerate point.
pub fn parallelogram_area<T: Scalar>(result: &HomotheticResult<T>) -> T {
    match result {
        HomotheticResult::DegeneratePoint { .. } => T::zero(),
        HomotheticResult::Parallelogram { .. } => shoelace_signed_area(&result.vertices())
            .expect("four points")
            .abs(),
    }
}

/// Squared lengths of `KL, LM, MN, NK`.
pub fn squared_sides<T: Scalar>(result: &HomotheticResult<T>) -> [T; 4] {
    let [k, l, m, n] = result.vertices();
    [
        k.distance_sq(&l),
        l.distance_sq(&m),
        m.distance_sq(&n),
        n.distance_sq(&k),
    ]
}

/// `|KLMN| = 2 (λ - 1)² |S|` for every quadrangle class, where `S` is the
/// signed shoelace value of `ABCD`.
pub fn verify_area_formula<T: Scalar>(q: &Quadrangle<T>, lambda: &T) -> VerificationReport {
    let area = parallelogram_area(&construct(q, lambda));
    let s = q.signed_area().abs();
    let expected = two::<T>() * square(lambda.clone() - T::one()) * s.clone();
    let mut report = VerificationReport::with_checks(
        ClaimId::AreaFormula,
        q,
        &[lambda],
        vec![Check::scalars("|KLMN| = 2(λ-1)²·|S|", &area, &expected)],
    )
    .with_value("S", s.to_text());
    if let Ok(class) = q.classify() {
        report = report.with_value("class", class.to_string());
    }
    report
}

fn verify_named_area<T: Scalar>(
    q: &Quadrangle<T>,
    claim: ClaimId,
    lambda: T,
    coefficient: T,
) -> VerificationReport {
    let area = parallelogram_area(&construct(q, &lambda));
    let s = q.signed_area().abs();
    let expected = coefficient.clone() * s.clone();
    VerificationReport::with_checks(
        claim,
        q,
        &[&lambda],
        vec![Check::scalars(
            format!("|KLMN| = {}·|S|", coefficient.to_text()),
            &area,
            &expected,
        )],
    )
    .with_value("S", s.to_text())
}

/// The midpoint parallelogram covers half of `|S|`.
pub fn verify_varignon_area<T: Scalar>(q: &Quadrangle<T>) -> VerificationReport {
    verify_named_area(q, ClaimId::VarignonArea, T::half(), T::half())
}

/// The trisection parallelogram covers `8/9` of `|S|`.
pub fn verify_wittenbauer_area<T: Scalar>(q: &Quadrangle<T>) -> VerificationReport {
    verify_named_area(
        q,
        ClaimId::WittenbauerArea,
        T::from_rational(&ratio(1, 3)),
        T::from_rational(&ratio(8, 9)),
    )
}

/// Area of a convex quadrangle's parallelogram for `λ < 0`, assembled from
/// triangles in two stages:
///
/// 1. `S + ΣK-corner triangles - Σvertex-corner triangles`, using the actual
///    triangles `K A_B B_A`, ..., `A A_D A_B`, ...
/// 2. `S + (1-2λ)²(S_OBA + S_OCB + S_ODC + S_OAD) - λ²(S_ADB + S_BAC + S_CBD + S_DCA)`
///
/// Both stages and the parallelogram area must agree with `2(λ-1)² S`.
pub fn verify_area_decomposition<T: Scalar>(
    q: &Quadrangle<T>,
    lambda: &T,
) -> Result<VerificationReport, VerifyError> {
    let class = q
        .classify()
        .map_err(|e| VerifyError::PreconditionViolated(e.to_string()))?;
    if class != QuadClass::Convex {
        return Err(VerifyError::PreconditionViolated(format!(
            "decomposition needs a convex quadrangle, got {class}"
        )));
    }
    if *lambda >= T::zero() {
        return Err(VerifyError::PreconditionViolated(format!(
            "decomposition needs a negative ratio, got {}",
            lambda.to_text()
        )));
    }
    let tri = |p: &Point<T>, r: &Point<T>, s: &Point<T>| triangle_signed_area(p, r, s).abs();
    let (a, b, c, d) = (q.a(), q.b(), q.c(), q.d());
    let o = q.diagonal_intersection();
    let result = construct(q, lambda);
    let [k, l, m, n] = result.vertices();
    let h = |center: &Point<T>, target: &Point<T>| homothety(center, target, lambda);
    let s = q.signed_area().abs();

    let outer = tri(&k, &h(a, b), &h(b, a))
        + tri(&l, &h(b, c), &h(c, b))
        + tri(&m, &h(c, d), &h(d, c))
        + tri(&n, &h(d, a), &h(a, d));
    let corners = tri(a, &h(a, d), &h(a, b))
        + tri(b, &h(b, a), &h(b, c))
        + tri(c, &h(c, b), &h(c, d))
        + tri(d, &h(d, c), &h(d, a));
    let stage_one = s.clone() + outer - corners;

    let around_o = tri(&o, b, a) + tri(&o, c, b) + tri(&o, d, c) + tri(&o, a, d);
    let diagonal_halves = tri(a, d, b) + tri(b, a, c) + tri(c, b, d) + tri(d, c, a);
    let stretch = T::one() - two::<T>() * lambda.clone();
    let stage_two =
        s.clone() + square(stretch) * around_o - square(lambda.clone()) * diagonal_halves;

    let area = parallelogram_area(&result);
    let closed = two::<T>() * square(lambda.clone() - T::one()) * s.clone();
    Ok(VerificationReport::with_checks(
        ClaimId::AreaDecomposition,
        q,
        &[lambda],
        vec![
            Check::scalars("|KLMN| = triangle sum", &area, &stage_one),
            Check::scalars("triangle sum = scaled sum", &stage_one, &stage_two),
            Check::scalars("scaled sum = 2(λ-1)²·S", &stage_two, &closed),
        ],
    )
    .with_value("S", s.to_text()))
}

/// `KL, MN ∥ AC` and `LM, NK ∥ BD`.
pub fn verify_sides_parallel<T: Scalar>(q: &Quadrangle<T>, lambda: &T) -> VerificationReport {
    let [k, l, m, n] = construct(q, lambda).vertices();
    let ac = q.c() - q.a();
    let bd = q.d() - q.b();
    let zero = T::zero();
    VerificationReport::with_checks(
        ClaimId::SidesParallelToDiagonals,
        q,
        &[lambda],
        vec![
            Check::scalars("KL × AC", &cross(&(&l - &k), &ac), &zero),
            Check::scalars("LM × BD", &cross(&(&m - &l), &bd), &zero),
            Check::scalars("MN × AC", &cross(&(&n - &m), &ac), &zero),
            Check::scalars("NK × BD", &cross(&(&k - &n), &bd), &zero),
        ],
    )
}

/// Rectangle iff `AC ⊥ BD`; rhombus iff `|AC| = |BD|`. Returns the
/// `[RectangleIffPerpendicular, RhombusIffEqualDiagonals]` reports.
pub fn verify_shape_criteria<T: Scalar>(
    q: &Quadrangle<T>,
    lambda: &T,
) -> Result<[VerificationReport; 2], VerifyError> {
    if lambda.is_one() {
        return Err(VerifyError::DegenerateParallelogram);
    }
    let [k, l, m, _] = construct(q, lambda).vertices();
    let ac = q.c() - q.a();
    let bd = q.d() - q.b();
    let kl = &l - &k;
    let lm = &m - &l;
    let perpendicular = dot(&ac, &bd).is_zero();
    let right_angle = dot(&kl, &lm).is_zero();
    let equal_diagonals = ac.norm_sq() == bd.norm_sq();
    let equal_sides = kl.norm_sq() == lm.norm_sq();
    Ok([
        VerificationReport::with_checks(
            ClaimId::RectangleIffPerpendicular,
            q,
            &[lambda],
            vec![Check::iff("AC ⊥ BD ⟺ KL ⊥ LM", perpendicular, right_angle)],
        ),
        VerificationReport::with_checks(
            ClaimId::RhombusIffEqualDiagonals,
            q,
            &[lambda],
            vec![Check::iff(
                "|AC| = |BD| ⟺ |KL| = |LM|",
                equal_diagonals,
                equal_sides,
            )],
        ),
    ])
}

/// Corresponding sides scale by `|λ₁ - 1| / |λ₂ - 1|`, hence so do the
/// perimeters. `λ₂ = 1` is allowed: every side of the point is zero.
pub fn verify_perimeter_ratio<T: Scalar>(
    q: &Quadrangle<T>,
    lambda1: &T,
    lambda2: &T,
) -> VerificationReport {
    let s1 = squared_sides(&construct(q, lambda1));
    let s2 = squared_sides(&construct(q, lambda2));
    let f1 = square(lambda1.clone() - T::one());
    let f2 = square(lambda2.clone() - T::one());
    let checks = ["KL", "LM", "MN", "NK"]
        .iter()
        .zip(s1.iter().zip(s2.iter()))
        .map(|(name, (a, b))| {
            Check::scalars(
                format!("|{name}₁|²(λ₂-1)² = |{name}₂|²(λ₁-1)²"),
                &(a.clone() * f2.clone()),
                &(b.clone() * f1.clone()),
            )
        })
        .collect();
    VerificationReport::with_checks(ClaimId::PerimeterRatio, q, &[lambda1, lambda2], checks)
}

/// `O, V^λ₁, V^λ₂` are collinear and `|OV^λ₁|²(λ₂-1)² = |OV^λ₂|²(λ₁-1)²`
/// for each vertex family `V ∈ {K, L, M, N}`. Returns the
/// `[PerspectiveCollinear, PerspectiveRatio]` reports.
pub fn verify_perspective<T: Scalar>(
    q: &Quadrangle<T>,
    lambda1: &T,
    lambda2: &T,
) -> [VerificationReport; 2] {
    let o = q.diagonal_intersection();
    let v1 = construct(q, lambda1).vertices();
    let v2 = construct(q, lambda2).vertices();
    let f1 = square(lambda1.clone() - T::one());
    let f2 = square(lambda2.clone() - T::one());
    let names = ["K", "L", "M", "N"];
    let mut collinear_checks = Vec::with_capacity(4);
    let mut ratio_checks = Vec::with_capacity(4);
    for (name, (p1, p2)) in names.iter().zip(v1.iter().zip(v2.iter())) {
        collinear_checks.push(Check::iff(
            format!("O, {name}₁, {name}₂ collinear"),
            collinear(&o, p1, p2),
            true,
        ));
        ratio_checks.push(Check::scalars(
            format!("|O{name}₁|²(λ₂-1)² = |O{name}₂|²(λ₁-1)²"),
            &(o.distance_sq(p1) * f2.clone()),
            &(o.distance_sq(p2) * f1.clone()),
        ));
    }
    [
        VerificationReport::with_checks(
            ClaimId::PerspectiveCollinear,
            q,
            &[lambda1, lambda2],
            collinear_checks,
        ),
        VerificationReport::with_checks(
            ClaimId::PerspectiveRatio,
            q,
            &[lambda1, lambda2],
            ratio_checks,
        ),
    ]
}

/// Corresponding sides are parallel and the adjacent-side ratio
/// `|KL| : |LM|` is the same for both ratios.
pub fn verify_similarity<T: Scalar>(
    q: &Quadrangle<T>,
    lambda1: &T,
    lambda2: &T,
) -> Result<VerificationReport, VerifyError> {
    if lambda1.is_one() || lambda2.is_one() {
        return Err(VerifyError::DegenerateParallelogram);
    }
    let [k1, l1, m1, _] = construct(q, lambda1).vertices();
    let [k2, l2, m2, _] = construct(q, lambda2).vertices();
    let (kl1, lm1) = (&l1 - &k1, &m1 - &l1);
    let (kl2, lm2) = (&l2 - &k2, &m2 - &l2);
    let zero = T::zero();
    Ok(VerificationReport::with_checks(
        ClaimId::SimilarAcrossLambda,
        q,
        &[lambda1, lambda2],
        vec![
            Check::scalars("KL₁ × KL₂", &cross(&kl1, &kl2), &zero),
            Check::scalars("LM₁ × LM₂", &cross(&lm1, &lm2), &zero),
            Check::scalars(
                "|KL₁|²|LM₂|² = |KL₂|²|LM₁|²",
                &(kl1.norm_sq() * lm2.norm_sq()),
                &(kl2.norm_sq() * lm1.norm_sq()),
            ),
        ],
    ))
}

/// `X_Y^λ = Y_X^{1-λ}` on every side.
pub fn verify_homothety_identity<T: Scalar>(q: &Quadrangle<T>, lambda: &T) -> VerificationReport {
    let complement = T::one() - lambda.clone();
    let [a, b, c, d] = q.vertices();
    let checks = [
        ("A", a, "B", b),
        ("B", b, "C", c),
        ("C", c, "D", d),
        ("D", d, "A", a),
    ]
    .iter()
    .map(|(xn, x, yn, y)| {
        Check::points(
            format!("{xn}_{yn}^λ = {yn}_{xn}^(1-λ)"),
            &homothety(x, y, lambda),
            &homothety(y, x, &complement),
        )
    })
    .collect();
    let report = VerificationReport::with_checks(ClaimId::HomothetyIdentity, q, &[lambda], checks);
    debug_assert_eq!(report.passed, homothety_identity_check(q, lambda));
    report
}

/// `V^λ + V^{1-λ} = 2 V^{1/2}` for each vertex family.
pub fn verify_midpoint_symmetry<T: Scalar>(q: &Quadrangle<T>, lambda: &T) -> VerificationReport {
    let complement = T::one() - lambda.clone();
    let v = construct(q, lambda).vertices();
    let w = construct(q, &complement).vertices();
    let mid = construct(q, &T::half()).vertices();
    let checks = ["K", "L", "M", "N"]
        .iter()
        .enumerate()
        .map(|(i, name)| {
            let sum = &v[i] + &w[i].to_vec();
            let doubled = Point::new(two::<T>() * mid[i].x.clone(), two::<T>() * mid[i].y.clone());
            Check::points(
                format!("{name}^λ + {name}^(1-λ) = 2{name}^(1/2)"),
                &sum,
                &doubled,
            )
        })
        .collect();
    VerificationReport::with_checks(ClaimId::MidpointSymmetry, q, &[lambda], checks)
}

/// Ratio pairs for the two-ratio claims: consecutive pairs (cyclic) plus
/// `(λ, 1)` for every `λ`, deduplicated in first-seen order.
pub fn ratio_pairs<T: Scalar>(lambdas: &[T]) -> Vec<(T, T)> {
    let mut pairs: Vec<(T, T)> = Vec::new();
    let mut push = |p: (T, T)| {
        if !pairs.contains(&p) {
            pairs.push(p);
        }
    };
    if lambdas.len() >= 2 {
        for i in 0..lambdas.len() {
            push((lambdas[i].clone(), lambdas[(i + 1) % lambdas.len()].clone()));
        }
    }
    for l in lambdas {
        push((l.clone(), T::one()));
    }
    pairs
}

/// Runs every verifier that applies to `q` and the given ratios.
pub fn verify_all<T: Scalar>(q: &Quadrangle<T>, lambdas: &[T]) -> Vec<VerificationReport> {
    let class = q.classify().ok();
    let half = T::half();
    let third = T::from_rational(&ratio(1, 3));
    let mut reports = Vec::new();
    for lambda in lambdas {
        reports.push(verify_area_formula(q, lambda));
        reports.push(verify_homothety_identity(q, lambda));
        reports.push(verify_midpoint_symmetry(q, lambda));
        if !lambda.is_one() {
            reports.push(verify_sides_parallel(q, lambda));
            reports.extend(verify_shape_criteria(q, lambda).expect("ratio is not one"));
        }
        if class == Some(QuadClass::Convex) && *lambda < T::zero() {
            reports.push(verify_area_decomposition(q, lambda).expect("preconditions checked"));
        }
        if *lambda == half {
            reports.push(verify_varignon_area(q));
        }
        if *lambda == third {
            reports.push(verify_wittenbauer_area(q));
        }
    }
    for (l1, l2) in ratio_pairs(lambdas) {
        reports.push(verify_perimeter_ratio(q, &l1, &l2));
        reports.extend(verify_perspective(q, &l1, &l2));
        if let Ok(r) = verify_similarity(q, &l1, &l2) {
            reports.push(r);
        }
    }
    reports.sort_by_key(|r| r.claim);
    reports
}
